//! Cross-checks the reduction against the truth-table oracle.
//!
//! Small formulas (by default `n <= 2`, `k <= 2`) are checked in both
//! directions with exhaustive search on the generated instance. Larger ones
//! are checked constructively: a satisfying witness must turn into a valid
//! plan that maps back to the same assignment. The unsatisfiable direction at
//! that scale is covered by a fixed set of small unsatisfiable formulas.

use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::fixtures;
use crate::mapf::validate_plan;
use crate::reduction::{
    assignment_from_plan, build_reduction_mutated, plan_from_assignment, sat_bruteforce, Clause,
    Cnf3Formula, Literal, Mutation,
};
use crate::solver::{decompose_plan_events, solve_bfs_with, Outcome, SearchLimits, SolveOptions};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EquivConfig {
    pub max_n: usize,
    pub max_k: usize,
    /// `0` enumerates every formula; otherwise this many random formulas.
    pub samples: usize,
    pub seed: u64,
    /// Formulas within these sizes are also decided by exhaustive search.
    pub search_max_n: usize,
    pub search_max_k: usize,
    pub max_states: Option<usize>,
    pub mutation: Mutation,
}

impl Default for EquivConfig {
    fn default() -> Self {
        EquivConfig {
            max_n: 2,
            max_k: 2,
            samples: 0,
            seed: 0,
            search_max_n: 2,
            search_max_k: 2,
            max_states: Some(20_000_000),
            mutation: Mutation::None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Counterexample {
    pub formula: Cnf3Formula,
    pub reason: String,
}

impl fmt::Display for Counterexample {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.formula, self.reason)
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct EquivReport {
    pub formulas: usize,
    pub satisfiable: usize,
    pub searched: usize,
    pub constructed: usize,
    pub counterexample: Option<Counterexample>,
}

impl EquivReport {
    pub fn passed(&self) -> bool {
        self.counterexample.is_none()
    }
}

/// Every 3-literal clause over `n` variables, as a sorted multiset.
pub fn canonical_clauses(n: usize) -> Vec<Clause> {
    let lits: Vec<Literal> = (1..=n as u32)
        .flat_map(|v| [Literal::pos(v), Literal::neg(v)])
        .collect();
    let mut out = Vec::new();
    for a in 0..lits.len() {
        for b in a..lits.len() {
            for c in b..lits.len() {
                out.push([lits[a], lits[b], lits[c]]);
            }
        }
    }
    out
}

/// All formulas with `1..=max_n` variables and `0..=max_k` clauses, clauses
/// drawn from [`canonical_clauses`] in order, repetition allowed.
pub fn enumerate_formulas(max_n: usize, max_k: usize) -> Vec<Cnf3Formula> {
    let mut out = Vec::new();
    for n in 1..=max_n {
        let pool = canonical_clauses(n);
        for k in 0..=max_k {
            let mut idx = vec![0usize; k];
            loop {
                let clauses = idx.iter().map(|&i| pool[i]).collect();
                out.push(Cnf3Formula::new(n as u32, clauses).expect("in range"));
                // odometer over pool^k
                let mut pos = k;
                loop {
                    if pos == 0 {
                        break;
                    }
                    pos -= 1;
                    idx[pos] += 1;
                    if idx[pos] < pool.len() {
                        break;
                    }
                    idx[pos] = 0;
                }
                if idx.iter().all(|&i| i == 0) {
                    break;
                }
            }
        }
    }
    out
}

pub fn random_formula(rng: &mut impl Rng, max_n: usize, max_k: usize) -> Cnf3Formula {
    let n = rng.gen_range(1..=max_n.max(1)) as u32;
    let k = rng.gen_range(0..=max_k);
    let mut lit = || Literal {
        var: rng.gen_range(1..=n),
        positive: rng.gen(),
    };
    let clauses = (0..k).map(|_| [lit(), lit(), lit()]).collect();
    Cnf3Formula::new(n, clauses).expect("in range")
}

/// Small unsatisfiable formulas for the unsatisfiable direction.
pub fn unsat_fixtures() -> Vec<Cnf3Formula> {
    let (p, q) = (Literal::pos, Literal::neg);
    vec![
        fixtures::contradiction(),
        Cnf3Formula::new(2, vec![[q(1); 3], [p(1), p(2), p(2)], [p(1), q(2), q(2)]]).unwrap(),
    ]
}

/// Runs the constructive checks on `f` and, when `search` is set, the
/// exhaustive-search comparison; returns the first failure.
pub fn check_formula(
    f: &Cnf3Formula,
    cfg: &EquivConfig,
    search: bool,
    report: &mut EquivReport,
) -> Result<(), String> {
    report.formulas += 1;
    let witness = sat_bruteforce(f).map_err(|e| e.to_string())?;
    let art = build_reduction_mutated(f, cfg.mutation);

    if let Some(a) = &witness {
        report.satisfiable += 1;
        report.constructed += 1;
        let plan = plan_from_assignment(&art, a).map_err(|e| format!("plan construction: {e}"))?;
        validate_plan(&art.instance, &plan)
            .map_err(|e| format!("constructed plan rejected: {e}"))?;
        let back = assignment_from_plan(&art, &plan).map_err(|e| format!("extraction: {e}"))?;
        if &back != a {
            return Err(format!("round trip changed assignment {a:?} into {back:?}"));
        }
        let trace = decompose_plan_events(&art.instance, &plan).map_err(|e| e.to_string())?;
        if !trace.within_bound() {
            return Err("constructed plan breaks the per-component event bound".into());
        }
    }

    if search {
        report.searched += 1;
        let opts = SolveOptions {
            depth_bound: None,
            limits: SearchLimits {
                max_states: cfg.max_states,
                time_limit: None,
            },
        };
        let res = solve_bfs_with(&art.instance, &opts).map_err(|e| format!("search: {e}"))?;
        match (&witness, &res.outcome) {
            (Some(_), Outcome::Solvable(plan)) => {
                validate_plan(&art.instance, plan)
                    .map_err(|e| format!("search plan rejected: {e}"))?;
                let a =
                    assignment_from_plan(&art, plan).map_err(|e| format!("search plan: {e}"))?;
                if !f.satisfied_by(&a) {
                    return Err("search plan encodes a falsifying assignment".into());
                }
            }
            (None, Outcome::Unsolvable) => {}
            (Some(_), _) => return Err("satisfiable but the instance is unsolvable".into()),
            (None, _) => return Err("unsatisfiable but the instance is solvable".into()),
        }
    }
    Ok(())
}

pub fn run_equivcheck(cfg: &EquivConfig) -> EquivReport {
    let mut report = EquivReport::default();
    let formulas = if cfg.samples == 0 {
        enumerate_formulas(cfg.max_n, cfg.max_k)
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
        (0..cfg.samples)
            .map(|_| random_formula(&mut rng, cfg.max_n, cfg.max_k))
            .collect()
    };
    let mut jobs: Vec<(Cnf3Formula, bool)> = formulas
        .into_iter()
        .map(|f| {
            let small =
                f.variable_count() <= cfg.search_max_n && f.clause_count() <= cfg.search_max_k;
            (f, small)
        })
        .collect();
    if cfg.max_n > cfg.search_max_n || cfg.max_k > cfg.search_max_k {
        jobs.extend(unsat_fixtures().into_iter().map(|f| (f, true)));
    }
    for (f, search) in jobs {
        if let Err(reason) = check_formula(&f, cfg, search, &mut report) {
            report.counterexample = Some(Counterexample { formula: f, reason });
            break;
        }
    }
    report
}
