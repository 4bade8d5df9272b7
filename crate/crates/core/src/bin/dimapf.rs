use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Duration;

use clap::{Args, Parser, Subcommand};

use dimapf::dimacs::{parse_dimacs, DimacsOptions};
use dimapf::equivcheck::{run_equivcheck, EquivConfig};
use dimapf::format::{parse_instance, parse_plan, write_instance, write_plan};
use dimapf::graph::{is_dag, is_strongly_biconnected, strongly_connected_components};
use dimapf::mapf::{validate_instance, validate_plan, MapfInstance};
use dimapf::reduction::{build_reduction, Mutation};
use dimapf::solver::{
    dag_move_bound, hypothesis_probe, Envelope, Outcome, ProbeConfig, ProbeError, SearchLimits,
    SolveError, SolveOptions,
};

const EXIT_OK: u8 = 0;
const EXIT_NEGATIVE: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_IO: u8 = 3;
const EXIT_BOUND: u8 = 4;
const EXIT_RESOURCE: u8 = 5;
const EXIT_FINDING: u8 = 6;

#[derive(Parser)]
#[command(
    name = "dimapf",
    version,
    about = "Multi-agent pathfinding on directed graphs"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Reduce a 3-CNF DIMACS file to a diMAPF instance
    Reduce {
        cnf: PathBuf,
        output: PathBuf,
        /// Widen 1- and 2-literal clauses by repeating the last literal
        #[arg(long)]
        pad: bool,
    },
    /// Decide solvability by breadth-first search and print a shortest plan
    Solve(SolveArgs),
    /// Check a plan against an instance
    Verify { instance: PathBuf, plan: PathBuf },
    /// Print structural facts about an instance
    Analyze { instance: PathBuf },
    /// Check the reduction against a truth-table oracle
    Equivcheck {
        #[arg(long, default_value_t = 2)]
        max_n: usize,
        #[arg(long, default_value_t = 2)]
        max_k: usize,
        /// Random formulas to draw; 0 enumerates all of them
        #[arg(long, default_value_t = 0)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, hide = true)]
        inject_mutation: bool,
    },
    /// Record exact shortest plan lengths on strongly connected digraphs
    Probe(ProbeArgs),
}

#[derive(Args)]
struct SolveArgs {
    instance: PathBuf,
    #[arg(long, conflicts_with = "dag_bound")]
    depth_bound: Option<usize>,
    /// Bound the depth by |V|^2; the digraph must be acyclic
    #[arg(long)]
    dag_bound: bool,
    #[arg(long)]
    limit_states: Option<usize>,
    /// Wall-clock limit in seconds
    #[arg(long)]
    time_limit: Option<f64>,
}

#[derive(Args)]
struct ProbeArgs {
    #[arg(long, default_value_t = 1)]
    min_vertices: usize,
    #[arg(long, default_value_t = 5)]
    max_vertices: usize,
    /// Agent count; defaults to every count from 1 to |V|-1
    #[arg(long)]
    agents: Option<usize>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 3)]
    poly_degree: u32,
    #[arg(long, default_value_t = 1.0)]
    poly_coeff: f64,
    /// Random digraphs per vertex count when the family is too large to enumerate
    #[arg(long, default_value_t = 200)]
    samples: usize,
    /// Summary TSV destination (stdout when omitted)
    #[arg(long)]
    output: Option<PathBuf>,
    /// Per-instance TSV destination
    #[arg(long)]
    records: Option<PathBuf>,
}

struct Failure {
    code: u8,
    message: String,
}

type CmdResult = Result<u8, Failure>;

fn fail(code: u8, message: impl Into<String>) -> Failure {
    Failure {
        code,
        message: message.into(),
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| fail(EXIT_IO, format!("{}: {e}", path.display())))
}

fn write(path: &Path, contents: &str) -> Result<(), Failure> {
    fs::write(path, contents).map_err(|e| fail(EXIT_IO, format!("{}: {e}", path.display())))
}

fn load_instance(path: &Path) -> Result<MapfInstance, Failure> {
    let text = read(path)?;
    let inst =
        parse_instance(&text).map_err(|e| fail(EXIT_USAGE, format!("{}: {e}", path.display())))?;
    if let Err(violations) = validate_instance(&inst) {
        let list: Vec<String> = violations.iter().map(|v| v.to_string()).collect();
        return Err(fail(
            EXIT_USAGE,
            format!("{}: {}", path.display(), list.join("; ")),
        ));
    }
    Ok(inst)
}

fn cmd_reduce(cnf: &Path, output: &Path, pad: bool) -> CmdResult {
    let text = read(cnf)?;
    let formula = parse_dimacs(&text, DimacsOptions { pad })
        .map_err(|e| fail(EXIT_USAGE, format!("{}: {e}", cnf.display())))?;
    let art = build_reduction(&formula);
    write(output, &write_instance(&art.instance))?;
    let mut map_path = output.as_os_str().to_owned();
    map_path.push(".map");
    write(Path::new(&map_path), &art.describe())?;
    println!(
        "wrote {} ({} vertices, {} arcs, {} agents)",
        output.display(),
        art.instance.digraph().vertex_count(),
        art.instance.digraph().arc_count(),
        art.instance.agent_count()
    );
    Ok(EXIT_OK)
}

fn cmd_solve(args: &SolveArgs) -> CmdResult {
    let inst = load_instance(&args.instance)?;
    let depth_bound = if args.dag_bound {
        Some(dag_move_bound(&inst).map_err(|e| fail(EXIT_USAGE, e.to_string()))?)
    } else {
        args.depth_bound
    };
    let opts = SolveOptions {
        depth_bound,
        limits: SearchLimits {
            max_states: args.limit_states,
            time_limit: args.time_limit.map(Duration::from_secs_f64),
        },
    };
    match dimapf::solver::solve_bfs_with(&inst, &opts) {
        Ok(res) => {
            let s = &res.stats;
            let stats = format!(
                "# expanded {} generated {} stored {} peak-frontier {} elapsed {:.3}s",
                s.states_expanded,
                s.states_generated,
                s.states_stored,
                s.peak_frontier,
                s.elapsed.as_secs_f64()
            );
            match res.outcome {
                Outcome::Solvable(plan) => {
                    println!("SOLVABLE {}", plan.len());
                    print!("{}", write_plan(&inst, &plan));
                    println!("{stats}");
                    Ok(EXIT_OK)
                }
                Outcome::Unsolvable => {
                    println!("UNSOLVABLE");
                    println!("{stats}");
                    Ok(EXIT_NEGATIVE)
                }
                Outcome::BoundExhausted { depth } => {
                    println!("BOUND-EXHAUSTED {depth}");
                    println!("{stats}");
                    Ok(EXIT_BOUND)
                }
            }
        }
        Err(e @ SolveError::ResourceLimit { .. }) => {
            println!("RESOURCE-LIMIT");
            eprintln!("{e}");
            Ok(EXIT_RESOURCE)
        }
        Err(e) => Err(fail(EXIT_USAGE, e.to_string())),
    }
}

fn cmd_verify(instance: &Path, plan: &Path) -> CmdResult {
    let inst = load_instance(instance)?;
    let text = read(plan)?;
    let plan = match parse_plan(&inst, &text) {
        Ok(p) => p,
        Err(e) => {
            println!("INVALID {e}");
            return Ok(EXIT_NEGATIVE);
        }
    };
    match validate_plan(&inst, &plan) {
        Ok(()) => {
            println!("VALID {} moves", plan.len());
            Ok(EXIT_OK)
        }
        Err(e) => {
            println!("INVALID {e}");
            Ok(EXIT_NEGATIVE)
        }
    }
}

fn cmd_analyze(instance: &Path) -> CmdResult {
    let inst = load_instance(instance)?;
    let d = inst.digraph();
    let scc = strongly_connected_components(d);
    let mut sizes: Vec<usize> = scc.components().iter().map(|c| c.len()).collect();
    sizes.sort_unstable_by(|a, b| b.cmp(a));
    let sizes: Vec<String> = sizes.iter().map(|s| s.to_string()).collect();
    let empty = inst.empty_vertex_count();
    println!("vertices: {}", d.vertex_count());
    println!("arcs: {}", d.arc_count());
    println!("agents: {}", inst.agent_count());
    println!("empty-vertices: {empty}");
    println!("scc-count: {}", scc.len());
    println!("scc-sizes: {}", sizes.join(" "));
    println!("is-dag: {}", is_dag(d));
    println!("strongly-biconnected: {}", is_strongly_biconnected(d));
    println!("two-or-more-empty: {}", empty >= 2);
    Ok(EXIT_OK)
}

fn cmd_equivcheck(
    max_n: usize,
    max_k: usize,
    samples: usize,
    seed: u64,
    mutate: bool,
) -> CmdResult {
    let cfg = EquivConfig {
        max_n,
        max_k,
        samples,
        seed,
        mutation: if mutate {
            Mutation::FlipFirstClause
        } else {
            Mutation::None
        },
        ..Default::default()
    };
    let report = run_equivcheck(&cfg);
    println!(
        "formulas {} satisfiable {} searched {} constructed {}",
        report.formulas, report.satisfiable, report.searched, report.constructed
    );
    match report.counterexample {
        None => {
            println!("PASS");
            Ok(EXIT_OK)
        }
        Some(c) => {
            println!("FAIL counterexample {c}");
            Ok(EXIT_NEGATIVE)
        }
    }
}

fn cmd_probe(args: &ProbeArgs) -> CmdResult {
    let cfg = ProbeConfig {
        min_vertices: args.min_vertices,
        max_vertices: args.max_vertices,
        agents: args.agents,
        digraph_samples: args.samples,
        seed: args.seed,
        envelope: Envelope {
            degree: args.poly_degree,
            coefficient: args.poly_coeff,
        },
        ..Default::default()
    };
    let (report, failure) = match hypothesis_probe(&cfg) {
        Ok(r) => (r, None),
        Err(ProbeError::Resource { reason, partial }) => (partial, Some(reason)),
    };
    let mut summary = Vec::new();
    report
        .write_tsv(&mut summary)
        .map_err(|e| fail(EXIT_IO, e.to_string()))?;
    let summary = String::from_utf8(summary).expect("tsv is utf-8");
    match &args.output {
        Some(path) => write(path, &summary)?,
        None => print!("{summary}"),
    }
    if let Some(path) = &args.records {
        let mut buf = Vec::new();
        report
            .write_records_tsv(&mut buf)
            .map_err(|e| fail(EXIT_IO, e.to_string()))?;
        write(path, &String::from_utf8(buf).expect("tsv is utf-8"))?;
    }
    if let Some(reason) = failure {
        return Err(fail(EXIT_RESOURCE, reason));
    }
    let exceeding = report.exceeding().count();
    eprintln!(
        "instances {} max-shortest {} exceeding-envelope {}",
        report.records.len(),
        report.max_shortest(),
        exceeding
    );
    Ok(if exceeding > 0 { EXIT_FINDING } else { EXIT_OK })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Reduce { cnf, output, pad } => cmd_reduce(cnf, output, *pad),
        Command::Solve(args) => cmd_solve(args),
        Command::Verify { instance, plan } => cmd_verify(instance, plan),
        Command::Analyze { instance } => cmd_analyze(instance),
        Command::Equivcheck {
            max_n,
            max_k,
            samples,
            seed,
            inject_mutation,
        } => cmd_equivcheck(*max_n, *max_k, *samples, *seed, *inject_mutation),
        Command::Probe(args) => cmd_probe(args),
    };
    let _ = io::stdout().flush();
    match result {
        Ok(code) => ExitCode::from(code),
        Err(Failure { code, message }) => {
            eprintln!("error: {message}");
            ExitCode::from(code)
        }
    }
}
