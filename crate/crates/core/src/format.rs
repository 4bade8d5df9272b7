//! Line-oriented text formats for instances and plans.
//!
//! Instance documents:
//!
//! ```text
//! dimapf 1
//! vertex 0 v1
//! vertex 1 v2
//! arc v1 v2
//! agent C start v1 goal v2
//! ```
//!
//! Plan documents hold one `move <agent> <from> <to>` per line, applied top
//! to bottom. Both formats accept `#` comments and blank lines.

use std::collections::HashMap;

use thiserror::Error;

use crate::graph::{Digraph, VertexId};
use crate::mapf::{MapfInstance, Move, Plan};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}: {message}")]
pub struct FormatError {
    pub line: usize,
    pub message: String,
}

/// A plan line that could not be read; `index` is the 0-based move index.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("move {index} (line {line}): {message}")]
pub struct PlanParseError {
    pub index: usize,
    pub line: usize,
    pub message: String,
}

fn content_lines(text: &str) -> impl Iterator<Item = (usize, Vec<&str>)> {
    text.lines().enumerate().filter_map(|(i, raw)| {
        let body = raw.split('#').next().unwrap_or("");
        let fields: Vec<&str> = body.split_whitespace().collect();
        (!fields.is_empty()).then_some((i + 1, fields))
    })
}

pub fn write_instance(inst: &MapfInstance) -> String {
    let d = inst.digraph();
    let mut out = String::from("dimapf 1\n");
    for v in d.vertices() {
        out.push_str(&format!("vertex {} {}\n", v.0, d.name(v)));
    }
    for (u, v) in d.arcs() {
        out.push_str(&format!("arc {} {}\n", d.name(u), d.name(v)));
    }
    for a in inst.agents() {
        out.push_str(&format!(
            "agent {} start {} goal {}\n",
            inst.agent_name(a),
            d.name(inst.start(a)),
            d.name(inst.goal(a))
        ));
    }
    out
}

/// Parses an instance document. Only the structure is checked here; agent
/// placement rules are left to [`validate_instance`](crate::mapf::validate_instance).
pub fn parse_instance(text: &str) -> Result<MapfInstance, FormatError> {
    let fail = |line, message: String| Err(FormatError { line, message });
    let mut lines = content_lines(text);
    match lines.next() {
        Some((_, f)) if f == ["dimapf", "1"] => {}
        Some((line, f)) => {
            return fail(
                line,
                format!("expected header `dimapf 1`, found `{}`", f.join(" ")),
            )
        }
        None => return fail(1, "empty document, expected header `dimapf 1`".into()),
    }

    let mut vertices: Vec<(usize, u32, &str)> = Vec::new();
    let mut arcs: Vec<(usize, &str, &str)> = Vec::new();
    let mut agents: Vec<(usize, &str, &str, &str)> = Vec::new();
    for (line, f) in lines {
        match f.as_slice() {
            ["vertex", id, name] => match id.parse::<u32>() {
                Ok(id) => vertices.push((line, id, name)),
                Err(_) => return fail(line, format!("bad vertex id `{id}`")),
            },
            ["arc", u, v] => arcs.push((line, u, v)),
            ["agent", name, "start", s, "goal", t] => agents.push((line, name, s, t)),
            [kw, ..] if ["vertex", "arc", "agent"].contains(kw) => {
                return fail(line, format!("malformed `{kw}` line: `{}`", f.join(" ")))
            }
            _ => return fail(line, format!("unknown directive `{}`", f[0])),
        }
    }

    let n = vertices.len();
    let mut names: Vec<Option<String>> = vec![None; n];
    let mut by_name: HashMap<&str, VertexId> = HashMap::new();
    for &(line, id, name) in &vertices {
        let slot = match names.get_mut(id as usize) {
            Some(slot) => slot,
            None => return fail(line, format!("vertex id {id} out of range 0..{n}")),
        };
        if slot.is_some() {
            return fail(line, format!("vertex id {id} declared twice"));
        }
        if by_name.insert(name, VertexId(id)).is_some() {
            return fail(line, format!("vertex name `{name}` declared twice"));
        }
        *slot = Some(name.to_string());
    }
    let names: Vec<String> = names
        .into_iter()
        .map(|n| n.expect("ids are dense"))
        .collect();
    let mut d = Digraph::with_names(names).expect("names checked unique");

    let lookup = |line: usize, name: &str| {
        by_name.get(name).copied().ok_or_else(|| FormatError {
            line,
            message: format!("unknown vertex `{name}`"),
        })
    };
    for &(line, u, v) in &arcs {
        let (u, v) = (lookup(line, u)?, lookup(line, v)?);
        d.add_arc(u, v).map_err(|e| FormatError {
            line,
            message: e.to_string(),
        })?;
    }
    let mut agents_out = Vec::with_capacity(agents.len());
    for &(line, name, s, t) in &agents {
        if agents_out.iter().any(|(n, _, _)| n == name) {
            return fail(line, format!("agent `{name}` declared twice"));
        }
        agents_out.push((name.to_string(), lookup(line, s)?, lookup(line, t)?));
    }
    Ok(MapfInstance::new(d, agents_out))
}

pub fn write_plan(inst: &MapfInstance, plan: &Plan) -> String {
    let d = inst.digraph();
    plan.moves
        .iter()
        .map(|m| {
            format!(
                "move {} {} {}\n",
                inst.agent_name(m.agent),
                d.name(m.from),
                d.name(m.to)
            )
        })
        .collect()
}

/// Resolves a plan document against the names declared by `inst`.
pub fn parse_plan(inst: &MapfInstance, text: &str) -> Result<Plan, PlanParseError> {
    let d = inst.digraph();
    let mut moves = Vec::new();
    for (index, (line, f)) in content_lines(text).enumerate() {
        let fail = |message: String| PlanParseError {
            index,
            line,
            message,
        };
        let ["move", agent, from, to] = f.as_slice() else {
            return Err(fail(format!(
                "expected `move <agent> <from> <to>`, found `{}`",
                f.join(" ")
            )));
        };
        let agent = inst
            .agent_by_name(agent)
            .ok_or_else(|| fail(format!("unknown agent `{agent}`")))?;
        let from = d
            .vertex_by_name(from)
            .ok_or_else(|| fail(format!("unknown vertex `{from}`")))?;
        let to = d
            .vertex_by_name(to)
            .ok_or_else(|| fail(format!("unknown vertex `{to}`")))?;
        moves.push(Move::new(agent, from, to));
    }
    Ok(Plan::new(moves))
}
