//! DIMACS CNF input restricted to three literals per clause.

use thiserror::Error;

use crate::reduction::{Clause, Cnf3Formula, Literal};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}: {message}")]
pub struct DimacsError {
    pub line: usize,
    pub message: String,
}

fn err<T>(line: usize, message: impl Into<String>) -> Result<T, DimacsError> {
    Err(DimacsError {
        line,
        message: message.into(),
    })
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct DimacsOptions {
    /// Widen 1- and 2-literal clauses by repeating their last literal.
    pub pad: bool,
}

/// Parses `p cnf <vars> <clauses>` followed by zero-terminated clauses.
/// Clauses may span lines; `c` lines are comments and a lone `%` ends the
/// clause section.
pub fn parse_dimacs(text: &str, opts: DimacsOptions) -> Result<Cnf3Formula, DimacsError> {
    let mut header: Option<(u32, usize)> = None;
    let mut clauses: Vec<Clause> = Vec::new();
    let mut current: Vec<Literal> = Vec::new();
    let mut clause_line = 0;
    let mut last_line = 0;

    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        last_line = line;
        let trimmed = raw.trim();
        if trimmed.is_empty() || trimmed.starts_with('c') {
            continue;
        }
        if trimmed == "%" {
            break;
        }
        if trimmed.starts_with('p') {
            if header.is_some() {
                return err(line, "duplicate problem line");
            }
            let fields: Vec<&str> = trimmed.split_whitespace().collect();
            if fields.len() != 4 || fields[0] != "p" || fields[1] != "cnf" {
                return err(
                    line,
                    format!("malformed header `{trimmed}`, expected `p cnf <vars> <clauses>`"),
                );
            }
            let vars = fields[2].parse::<u32>();
            let count = fields[3].parse::<usize>();
            match (vars, count) {
                (Ok(v), Ok(c)) => header = Some((v, c)),
                _ => return err(line, format!("malformed header `{trimmed}`")),
            }
            continue;
        }
        let Some((vars, _)) = header else {
            return err(line, "clause before `p cnf` header");
        };
        for tok in trimmed.split_whitespace() {
            let Ok(value) = tok.parse::<i64>() else {
                return err(line, format!("malformed literal `{tok}`"));
            };
            if value == 0 {
                clauses.push(finish_clause(&current, clause_line, opts)?);
                current.clear();
                continue;
            }
            if current.is_empty() {
                clause_line = line;
            }
            match Literal::from_dimacs(value) {
                Some(lit) if lit.var <= vars => current.push(lit),
                _ => {
                    return err(
                        line,
                        format!("literal {value} outside variables 1..={vars}"),
                    )
                }
            }
        }
    }

    let Some((vars, count)) = header else {
        return err(last_line.max(1), "missing `p cnf` header");
    };
    if !current.is_empty() {
        return err(clause_line, "last clause is not terminated by 0");
    }
    if clauses.len() != count {
        return err(
            last_line,
            format!("header declares {count} clauses, found {}", clauses.len()),
        );
    }
    Ok(Cnf3Formula::new(vars, clauses).expect("literals were range-checked"))
}

fn finish_clause(
    lits: &[Literal],
    line: usize,
    opts: DimacsOptions,
) -> Result<Clause, DimacsError> {
    match lits.len() {
        3 => Ok([lits[0], lits[1], lits[2]]),
        0 => err(line, "empty clause"),
        1 | 2 if opts.pad => {
            let last = *lits.last().unwrap();
            Ok([lits[0], *lits.get(1).unwrap_or(&last), last])
        }
        w => err(
            line,
            format!("clause has {w} literals, expected 3 (use --pad for shorter clauses)"),
        ),
    }
}

pub fn write_dimacs(f: &Cnf3Formula) -> String {
    let mut out = format!("p cnf {} {}\n", f.variable_count(), f.clause_count());
    for c in f.clauses() {
        out.push_str(&format!(
            "{} {} {} 0\n",
            c[0].to_dimacs(),
            c[1].to_dimacs(),
            c[2].to_dimacs()
        ));
    }
    out
}
