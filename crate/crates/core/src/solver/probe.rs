//! Empirical probe of shortest-plan lengths on strongly connected digraphs.
//!
//! Enumerates (or samples, when the family is too large) strongly connected
//! digraphs and agent placements, solves every instance optimally with
//! [`solve_bfs_with`] and compares the longest shortest plan against a
//! polynomial envelope `coefficient * |V|^degree`.

use std::collections::BTreeMap;
use std::io::{self, Write};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use thiserror::Error;

use super::{solve_bfs_with, Outcome, SearchLimits, SolveError, SolveOptions};
use crate::graph::{is_strongly_connected, Digraph, VertexId};
use crate::mapf::MapfInstance;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Envelope {
    pub degree: u32,
    pub coefficient: f64,
}

impl Default for Envelope {
    fn default() -> Self {
        Envelope {
            degree: 3,
            coefficient: 1.0,
        }
    }
}

impl Envelope {
    pub fn at(&self, vertices: usize) -> f64 {
        self.coefficient * (vertices as f64).powi(self.degree as i32)
    }

    pub fn exceeded_by(&self, vertices: usize, plan_len: usize) -> bool {
        plan_len as f64 > self.at(vertices)
    }

    /// `2|V|² · p(|V|)`: the whole-plan length that follows from a per-component
    /// bound `p` and at most `2|V|` boundary events in each of `|V|` components.
    pub fn composite_bound(&self, vertices: usize) -> f64 {
        2.0 * (vertices * vertices) as f64 * self.at(vertices)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ProbeConfig {
    pub min_vertices: usize,
    pub max_vertices: usize,
    /// Fixed agent count; `None` probes every count from 1 to `|V| - 1`.
    pub agents: Option<usize>,
    /// Enumerate every arc subset when `|V|(|V|-1)` is at most this.
    pub exhaustive_arc_limit: usize,
    /// Random strongly connected digraphs drawn per vertex count otherwise.
    pub digraph_samples: usize,
    /// Enumerate all start/goal pairs when there are at most this many.
    pub placement_limit: usize,
    pub placement_samples: usize,
    pub seed: u64,
    pub envelope: Envelope,
    pub max_states_per_instance: Option<usize>,
    /// Refuse to start when the family holds more instances than this.
    pub max_instances: Option<usize>,
}

impl Default for ProbeConfig {
    fn default() -> Self {
        ProbeConfig {
            min_vertices: 1,
            max_vertices: 5,
            agents: None,
            exhaustive_arc_limit: 12,
            digraph_samples: 200,
            placement_limit: 20_000,
            placement_samples: 100,
            seed: 0,
            envelope: Envelope::default(),
            max_states_per_instance: Some(1_000_000),
            max_instances: Some(50_000_000),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProbeRecord {
    pub vertices: usize,
    pub arcs: Vec<(VertexId, VertexId)>,
    pub start: Vec<VertexId>,
    pub goal: Vec<VertexId>,
    /// Exact shortest plan length; `None` when unsolvable.
    pub shortest: Option<usize>,
}

impl ProbeRecord {
    pub fn agents(&self) -> usize {
        self.start.len()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProbeGroup {
    pub vertices: usize,
    pub arcs: usize,
    pub agents: usize,
    pub instances: usize,
    pub solvable: usize,
    pub max_shortest: usize,
    pub exceeding: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ProbeReport {
    pub family: String,
    pub envelope: Envelope,
    pub records: Vec<ProbeRecord>,
}

impl ProbeReport {
    pub fn max_shortest(&self) -> usize {
        self.records
            .iter()
            .filter_map(|r| r.shortest)
            .max()
            .unwrap_or(0)
    }

    pub fn exceeding(&self) -> impl Iterator<Item = &ProbeRecord> {
        self.records.iter().filter(|r| {
            r.shortest
                .is_some_and(|len| self.envelope.exceeded_by(r.vertices, len))
        })
    }

    pub fn exceeds_envelope(&self) -> bool {
        self.exceeding().next().is_some()
    }

    /// Maxima per `(|V|, |A|, |R|)`.
    pub fn groups(&self) -> Vec<ProbeGroup> {
        let mut groups: BTreeMap<(usize, usize, usize), ProbeGroup> = BTreeMap::new();
        for r in &self.records {
            let key = (r.vertices, r.arcs.len(), r.agents());
            let g = groups.entry(key).or_insert(ProbeGroup {
                vertices: key.0,
                arcs: key.1,
                agents: key.2,
                instances: 0,
                solvable: 0,
                max_shortest: 0,
                exceeding: 0,
            });
            g.instances += 1;
            if let Some(len) = r.shortest {
                g.solvable += 1;
                g.max_shortest = g.max_shortest.max(len);
                if self.envelope.exceeded_by(r.vertices, len) {
                    g.exceeding += 1;
                }
            }
        }
        groups.into_values().collect()
    }

    pub fn write_tsv<W: Write>(&self, mut w: W) -> io::Result<()> {
        writeln!(w, "# family: {}", self.family)?;
        writeln!(
            w,
            "# envelope: {} * |V|^{}",
            self.envelope.coefficient, self.envelope.degree
        )?;
        writeln!(w, "# instances: {}", self.records.len())?;
        writeln!(w, "# max_shortest: {}", self.max_shortest())?;
        writeln!(w, "# exceeding: {}", self.exceeding().count())?;
        writeln!(
            w,
            "vertices\tarcs\tagents\tinstances\tsolvable\tmax_shortest\tenvelope\tcomposite_bound\texceeding"
        )?;
        for g in self.groups() {
            writeln!(
                w,
                "{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}",
                g.vertices,
                g.arcs,
                g.agents,
                g.instances,
                g.solvable,
                g.max_shortest,
                self.envelope.at(g.vertices),
                self.envelope.composite_bound(g.vertices),
                g.exceeding
            )?;
        }
        Ok(())
    }

    /// One line per instance: arcs as `u>v` pairs, placements as vertex lists.
    pub fn write_records_tsv<W: Write>(&self, mut w: W) -> io::Result<()> {
        writeln!(w, "vertices\tarcs\tstart\tgoal\tshortest")?;
        let list = |vs: &[VertexId]| {
            vs.iter()
                .map(|v| v.to_string())
                .collect::<Vec<_>>()
                .join(",")
        };
        for r in &self.records {
            let arcs: Vec<String> = r.arcs.iter().map(|(u, v)| format!("{u}>{v}")).collect();
            let shortest = r
                .shortest
                .map_or("unsolvable".to_string(), |l| l.to_string());
            writeln!(
                w,
                "{}\t{}\t{}\t{}\t{}",
                r.vertices,
                arcs.join(","),
                list(&r.start),
                list(&r.goal),
                shortest
            )?;
        }
        Ok(())
    }
}

#[derive(Debug, Error)]
pub enum ProbeError {
    #[error("probe stopped: {reason}")]
    Resource {
        reason: String,
        partial: ProbeReport,
    },
}

fn all_arcs(n: usize) -> Vec<(usize, usize)> {
    (0..n)
        .flat_map(|u| (0..n).filter(move |&v| v != u).map(move |v| (u, v)))
        .collect()
}

fn digraph_from_mask(n: usize, arcs: &[(usize, usize)], mask: u64) -> Digraph {
    let chosen = arcs
        .iter()
        .enumerate()
        .filter(|(i, _)| mask >> i & 1 == 1)
        .map(|(_, &a)| a);
    Digraph::from_arcs(n, chosen).expect("arc list is simple")
}

fn strongly_connected_family(n: usize, cfg: &ProbeConfig, rng: &mut ChaCha8Rng) -> Vec<Digraph> {
    let arcs = all_arcs(n);
    if arcs.len() <= cfg.exhaustive_arc_limit {
        return (0..1u64 << arcs.len())
            .map(|mask| digraph_from_mask(n, &arcs, mask))
            .filter(is_strongly_connected)
            .collect();
    }
    let mut out = Vec::with_capacity(cfg.digraph_samples);
    let mut attempts = 0usize;
    while out.len() < cfg.digraph_samples && attempts < cfg.digraph_samples * 1000 {
        attempts += 1;
        let mask = rng.gen::<u64>() & ((1u64 << arcs.len()) - 1);
        let d = digraph_from_mask(n, &arcs, mask);
        if is_strongly_connected(&d) {
            out.push(d);
        }
    }
    out
}

/// All injective placements of `k` agents on `n` vertices, lexicographic.
fn placements(n: usize, k: usize) -> Vec<Vec<VertexId>> {
    fn extend(
        n: usize,
        k: usize,
        cur: &mut Vec<VertexId>,
        used: &mut [bool],
        out: &mut Vec<Vec<VertexId>>,
    ) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for v in 0..n {
            if !used[v] {
                used[v] = true;
                cur.push(VertexId::from(v));
                extend(n, k, cur, used, out);
                cur.pop();
                used[v] = false;
            }
        }
    }
    let mut out = Vec::new();
    extend(n, k, &mut Vec::new(), &mut vec![false; n], &mut out);
    out
}

type Pairs = Vec<(Vec<VertexId>, Vec<VertexId>)>;

fn placement_pairs(n: usize, k: usize, cfg: &ProbeConfig, rng: &mut ChaCha8Rng) -> Pairs {
    let all = placements(n, k);
    if all.len() * all.len() <= cfg.placement_limit {
        return all
            .iter()
            .flat_map(|s| all.iter().map(move |t| (s.clone(), t.clone())))
            .collect();
    }
    (0..cfg.placement_samples)
        .map(|_| {
            (
                all.choose(rng).unwrap().clone(),
                all.choose(rng).unwrap().clone(),
            )
        })
        .collect()
}

fn agent_counts(n: usize, cfg: &ProbeConfig) -> Vec<usize> {
    match cfg.agents {
        Some(k) if k <= n => vec![k],
        Some(_) => vec![],
        None => (1..n).collect(),
    }
}

fn describe(cfg: &ProbeConfig) -> String {
    let agents = cfg.agents.map_or("1..|V|-1".to_string(), |k| k.to_string());
    format!(
        "strongly connected digraphs, |V| in {}..={}, agents {}, seed {}",
        cfg.min_vertices, cfg.max_vertices, agents, cfg.seed
    )
}

struct Job {
    digraph: Digraph,
    pairs: Pairs,
}

pub fn hypothesis_probe(cfg: &ProbeConfig) -> Result<ProbeReport, ProbeError> {
    let mut report = ProbeReport {
        family: describe(cfg),
        envelope: cfg.envelope,
        records: Vec::new(),
    };

    let mut jobs = Vec::new();
    let mut total = 0usize;
    for n in cfg.min_vertices.max(1)..=cfg.max_vertices {
        let mut rng =
            ChaCha8Rng::seed_from_u64(cfg.seed ^ (n as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15));
        let counts = agent_counts(n, cfg);
        if counts.is_empty() {
            continue;
        }
        for digraph in strongly_connected_family(n, cfg, &mut rng) {
            for &k in &counts {
                let pairs = placement_pairs(n, k, cfg, &mut rng);
                total += pairs.len();
                if let Some(max) = cfg.max_instances {
                    if total > max {
                        return Err(ProbeError::Resource {
                            reason: format!("family exceeds {max} instances"),
                            partial: report,
                        });
                    }
                }
                jobs.push(Job {
                    digraph: digraph.clone(),
                    pairs,
                });
            }
        }
    }

    let opts = SolveOptions {
        depth_bound: None,
        limits: SearchLimits {
            max_states: cfg.max_states_per_instance,
            time_limit: None,
        },
    };
    let results: Vec<(Vec<ProbeRecord>, Option<SolveError>)> = jobs
        .par_iter()
        .map(|job| {
            let arcs: Vec<_> = job.digraph.arcs().collect();
            let mut records = Vec::with_capacity(job.pairs.len());
            for (start, goal) in &job.pairs {
                let inst =
                    MapfInstance::from_placements(job.digraph.clone(), start.clone(), goal.clone());
                let shortest = match solve_bfs_with(&inst, &opts) {
                    Ok(res) => match res.outcome {
                        Outcome::Solvable(plan) => Some(plan.len()),
                        Outcome::Unsolvable => None,
                        Outcome::BoundExhausted { .. } => unreachable!("no depth bound"),
                    },
                    Err(e) => return (records, Some(e)),
                };
                records.push(ProbeRecord {
                    vertices: job.digraph.vertex_count(),
                    arcs: arcs.clone(),
                    start: start.clone(),
                    goal: goal.clone(),
                    shortest,
                });
            }
            (records, None)
        })
        .collect();

    let mut failure = None;
    for (records, err) in results {
        report.records.extend(records);
        if failure.is_none() {
            failure = err;
        }
    }
    match failure {
        Some(e) => Err(ProbeError::Resource {
            reason: e.to_string(),
            partial: report,
        }),
        None => Ok(report),
    }
}
