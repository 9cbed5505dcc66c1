use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use fuzzygraph::io::{self, GraphDocument};
use fuzzygraph::properties::hereditary::{verify_hereditary, ClosureOp, HereditaryReport};
use fuzzygraph::properties::{check_property, check_property_via_3cc};
use fuzzygraph::random::{random_crisp_graph, random_fuzzy_graph_quantized};
use fuzzygraph::reductions::{
    embed_crisp, equivalence_corpus, generate_planar_instances, verify_equivalence,
    EquivalenceReport,
};
use fuzzygraph::solvers::{solve, solve_min_membership, Operation, Semantics, SolveInstance};
use fuzzygraph::suite::{verify_theorems, SuiteConfig, SuiteReport};
use fuzzygraph::{
    contract_set, EdgeKey, Error, FuzzyGraph, Membership, MembershipLevel, PropertySpec, TNorm,
};
use serde::Serialize;

const EXIT_NO: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_REFUSED: u8 = 3;

#[derive(Parser)]
#[command(
    name = "fuzzygraph",
    version,
    about = "Fuzzy graph contraction, α-cuts and exact edge-modification solvers"
)]
struct Cli {
    /// Worker threads for parallel searches (default: all processors).
    #[arg(long, global = true, env = "FUZZYGRAPH_JOBS")]
    jobs: Option<usize>,

    /// Write the machine-readable result to this file.
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Crisp α-cut of a fuzzy graph.
    Cut {
        file: PathBuf,
        #[arg(long)]
        alpha: MembershipLevel,
    },
    /// Contract edges in order, each named by its original endpoints.
    Contract {
        file: PathBuf,
        #[arg(long = "edge", num_args = 2, value_names = ["U", "V"], required = true)]
        edges: Vec<String>,
        #[arg(long, default_value = "min")]
        tnorm: TNorm,
    },
    /// Delete edges (membership set to 0).
    Delete {
        file: PathBuf,
        #[arg(long = "edge", num_args = 2, value_names = ["U", "V"], required = true)]
        edges: Vec<String>,
    },
    /// Check a property on a crisp graph or on the α-cut of a fuzzy graph.
    Check {
        file: PathBuf,
        #[arg(long)]
        property: PropertySpec,
        /// Required for fuzzy input.
        #[arg(long)]
        alpha: Option<MembershipLevel>,
        /// Decide on the triconnected components instead.
        #[arg(long)]
        via_components: bool,
    },
    /// Exact edge-deletion / edge-contraction search.
    Solve(SolveArgs),
    /// Membership-1 embedding of classical instances.
    Reduce {
        #[command(subcommand)]
        command: ReduceCommand,
    },
    /// Seeded random graph.
    Gen {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        p: f64,
        #[arg(long)]
        seed: u64,
        /// Memberships are multiples of 1/steps.
        #[arg(long, default_value_t = 1_000_000)]
        steps: u64,
        /// Emit a crisp graph instead.
        #[arg(long)]
        crisp: bool,
    },
    /// Distinct membership levels, ascending.
    Levels { file: PathBuf },
    /// Run the contraction and α-cut property suites over a seeded corpus.
    VerifyTheorems(SuiteArgs),
    /// Brute-force check that a property survives every edge contraction.
    VerifyHereditary {
        #[arg(long)]
        property: PropertySpec,
        #[arg(long = "nmax")]
        n_max: usize,
        #[arg(long, value_enum, default_value_t = ClosureArg::Contraction)]
        op: ClosureArg,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum ClosureArg {
    Contraction,
    Deletion,
}

#[derive(Args)]
struct SolveArgs {
    file: PathBuf,
    #[arg(long)]
    op: Operation,
    #[arg(long)]
    property: PropertySpec,
    #[arg(long, default_value_t = 0)]
    k: usize,
    /// `threshold:A` or `all`.
    #[arg(long)]
    semantics: Semantics,
    #[arg(long, default_value = "min")]
    tnorm: TNorm,
    /// Minimize total removed membership instead (delete, threshold only).
    #[arg(long)]
    minimize_membership: bool,
}

#[derive(Subcommand)]
enum ReduceCommand {
    /// Embed a crisp graph as a fuzzy instance.
    Embed {
        file: PathBuf,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        property: PropertySpec,
        #[arg(long)]
        op: Operation,
        #[arg(long)]
        alpha: MembershipLevel,
    },
    /// Compare classical and embedded verdicts on a seeded corpus.
    Verify {
        #[arg(long)]
        corpus_seed: u64,
        #[arg(long)]
        count: usize,
        #[arg(long)]
        property: PropertySpec,
        #[arg(long)]
        op: Operation,
        #[arg(long)]
        alpha: MembershipLevel,
        #[arg(long, default_value_t = 7)]
        n_max: usize,
        /// Use generated planar instances instead of random connected graphs.
        #[arg(long)]
        planar: bool,
    },
}

#[derive(Args)]
struct SuiteArgs {
    #[arg(long, default_value_t = 3)]
    n_min: usize,
    #[arg(long, default_value_t = 8)]
    n_max: usize,
    #[arg(long, value_delimiter = ',', default_values_t = [0.3, 0.5, 0.8])]
    densities: Vec<f64>,
    #[arg(long, default_value_t = 40)]
    seeds: u64,
    #[arg(long, default_value_t = 0)]
    base_seed: u64,
    #[arg(long, default_value_t = 20)]
    steps: u64,
    #[arg(long)]
    full_membership: bool,
}

enum Failure {
    Lib(Error),
    Usage(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

type Outcome = Result<u8, Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(jobs) = cli.jobs {
        if jobs == 0 {
            eprintln!("error: --jobs must be positive");
            return ExitCode::from(EXIT_USAGE);
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build_global()
            .expect("thread pool is configured once");
    }
    match run(cli.command, cli.out.as_deref()) {
        Ok(code) => ExitCode::from(code),
        Err(Failure::Lib(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(if e.is_bound_refusal() {
                EXIT_REFUSED
            } else {
                EXIT_USAGE
            })
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_USAGE)
        }
    }
}

fn run(command: Command, out: Option<&Path>) -> Outcome {
    match command {
        Command::Cut { file, alpha } => {
            let g = read_fuzzy(&file)?;
            emit(out, &io::crisp_to_string(&g.alpha_cut(&alpha)?))
        }
        Command::Contract { file, edges, tnorm } => {
            let g = read_fuzzy(&file)?;
            let h = contract_set(&g, &edge_list(&edges)?, tnorm)?;
            emit(out, &io::fuzzy_to_string(&h))
        }
        Command::Delete { file, edges } => {
            let mut g = read_fuzzy(&file)?;
            g.ensure_valid()?;
            for e in edge_list(&edges)? {
                g = fuzzygraph::delete_edge(&g, &e)?;
            }
            emit(out, &io::fuzzy_to_string(&g))
        }
        Command::Check {
            file,
            property,
            alpha,
            via_components,
        } => {
            let g = match (read_any(&file)?, alpha) {
                (GraphDocument::Crisp(g), None) => g,
                (GraphDocument::Crisp(_), Some(_)) => {
                    return Err(Failure::Usage(
                        "--alpha applies to fuzzy graphs only".into(),
                    ))
                }
                (GraphDocument::Fuzzy(g), Some(a)) => g.alpha_cut(&a)?,
                (GraphDocument::Fuzzy(_), None) => {
                    return Err(Failure::Usage("fuzzy input needs --alpha".into()))
                }
            };
            let holds = if via_components {
                check_property_via_3cc(&property, &g)?
            } else {
                check_property(&property, &g)?
            };
            println!("{property}: {}", if holds { "YES" } else { "NO" });
            #[derive(Serialize)]
            struct CheckReport<'a> {
                property: &'a PropertySpec,
                via_components: bool,
                holds: bool,
            }
            write_report(
                out,
                &CheckReport {
                    property: &property,
                    via_components,
                    holds,
                },
            )?;
            Ok(verdict(holds))
        }
        Command::Solve(args) => run_solve(args, out),
        Command::Reduce { command } => run_reduce(command, out),
        Command::Gen {
            n,
            p,
            seed,
            steps,
            crisp,
        } => {
            if !(0.0..=1.0).contains(&p) || steps == 0 {
                return Err(Failure::Usage("need 0 ≤ p ≤ 1 and steps > 0".into()));
            }
            let text = if crisp {
                io::crisp_to_string(&random_crisp_graph(n, p, seed))
            } else {
                if Membership::from_ratio(1, steps).is_err() {
                    return Err(Failure::Usage("steps must divide a power of ten".into()));
                }
                io::fuzzy_to_string(&random_fuzzy_graph_quantized(n, p, seed, steps))
            };
            emit(out, &text)
        }
        Command::Levels { file } => {
            let levels = read_fuzzy(&file)?.distinct_levels()?;
            for l in &levels {
                println!("{l}");
            }
            #[derive(Serialize)]
            struct LevelsReport<'a> {
                levels: &'a [MembershipLevel],
            }
            write_report(out, &LevelsReport { levels: &levels })?;
            Ok(0)
        }
        Command::VerifyTheorems(args) => {
            let config = SuiteConfig {
                n_min: args.n_min,
                n_max: args.n_max,
                densities: args.densities,
                seeds_per_cell: args.seeds,
                base_seed: args.base_seed,
                steps: args.steps,
                full_membership: args.full_membership,
            };
            let report = verify_theorems(&config)?;
            print_suite(&report);
            write_report(out, &report)?;
            Ok(verdict(report.passed))
        }
        Command::VerifyHereditary {
            property,
            n_max,
            op,
        } => {
            let op = match op {
                ClosureArg::Contraction => ClosureOp::Contraction,
                ClosureArg::Deletion => ClosureOp::Deletion,
            };
            let report = verify_hereditary(&property, n_max, op)?;
            print_hereditary(&report);
            write_report(out, &report)?;
            Ok(verdict(report.passed()))
        }
    }
}

fn run_solve(args: SolveArgs, out: Option<&Path>) -> Outcome {
    let graph = read_fuzzy(&args.file)?;
    if args.minimize_membership {
        let (Operation::Delete, Semantics::Threshold(alpha)) = (args.op, &args.semantics) else {
            return Err(Failure::Usage(
                "--minimize-membership needs --op delete and threshold semantics".into(),
            ));
        };
        let best = solve_min_membership(&graph, &args.property, alpha)?;
        match &best {
            Some(r) => println!(
                "YES: delete {} edge(s) {}, membership removed {}",
                r.edges.len(),
                show_edges(&r.edges),
                r.removed_total
            ),
            None => println!("NO: no deletion set works"),
        }
        #[derive(Serialize)]
        struct MinReport<'a> {
            verdict: &'static str,
            result: &'a Option<fuzzygraph::solvers::MinMembershipResult>,
        }
        let verdict_name = if best.is_some() { "yes" } else { "no" };
        write_report(
            out,
            &MinReport {
                verdict: verdict_name,
                result: &best,
            },
        )?;
        return Ok(verdict(best.is_some()));
    }
    let instance = SolveInstance {
        graph,
        property: args.property,
        budget_k: args.k,
        semantics: args.semantics,
        operation: args.op,
        tnorm: args.tnorm,
    };
    let result = solve(&instance)?;
    match result.outcome.edges() {
        Some(f) => {
            print!("YES: {} {} edge(s) {}", args.op, f.len(), show_edges(f));
            if let Some(total) = &result.membership_removed {
                print!(", membership removed {total}");
            }
            println!();
        }
        None => println!("NO: no set of at most {} edges works", instance.budget_k),
    }
    println!("subsets examined: {}", result.subsets_examined);
    #[derive(Serialize)]
    struct SolveReport<'a> {
        property: &'a PropertySpec,
        operation: Operation,
        semantics: &'a Semantics,
        tnorm: TNorm,
        budget_k: usize,
        #[serde(flatten)]
        result: &'a fuzzygraph::solvers::SolveResult,
    }
    write_report(
        out,
        &SolveReport {
            property: &instance.property,
            operation: instance.operation,
            semantics: &instance.semantics,
            tnorm: instance.tnorm,
            budget_k: instance.budget_k,
            result: &result,
        },
    )?;
    Ok(verdict(result.outcome.is_yes()))
}

fn run_reduce(command: ReduceCommand, out: Option<&Path>) -> Outcome {
    match command {
        ReduceCommand::Embed {
            file,
            k,
            property,
            op,
            alpha,
        } => {
            let g = match read_any(&file)? {
                GraphDocument::Crisp(g) => g,
                GraphDocument::Fuzzy(_) => {
                    return Err(Failure::Usage("embed expects a crisp graph".into()))
                }
            };
            let artifact = embed_crisp(&g, k, &property, op, &alpha);
            emit(out, &io::report_to_string(&artifact))
        }
        ReduceCommand::Verify {
            corpus_seed,
            count,
            property,
            op,
            alpha,
            n_max,
            planar,
        } => {
            let corpus = if planar {
                generate_planar_instances(count, n_max, corpus_seed)?
            } else {
                equivalence_corpus(count, n_max, corpus_seed)
            };
            let report = verify_equivalence(&corpus, &property, op, &alpha)?;
            print_equivalence(&report);
            write_report(out, &report)?;
            Ok(verdict(report.all_agree()))
        }
    }
}

fn verdict(yes: bool) -> u8 {
    if yes {
        0
    } else {
        EXIT_NO
    }
}

fn read_text(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

fn read_any(path: &Path) -> Result<GraphDocument, Failure> {
    Ok(io::parse_any(&read_text(path)?)?)
}

fn read_fuzzy(path: &Path) -> Result<FuzzyGraph, Failure> {
    match read_any(path)? {
        GraphDocument::Fuzzy(g) => Ok(g),
        GraphDocument::Crisp(_) => Err(Failure::Usage(format!(
            "{}: expected a fuzzy graph",
            path.display()
        ))),
    }
}

fn edge_list(flat: &[String]) -> Result<Vec<EdgeKey>, Failure> {
    flat.chunks(2)
        .map(|p| EdgeKey::parse(&p[0], &p[1]).map_err(Failure::from))
        .collect()
}

fn write_file(path: &Path, text: &str) -> Result<(), Failure> {
    fs::write(path, text).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

/// Documents go to `--out` when given, otherwise to standard output.
fn emit(out: Option<&Path>, text: &str) -> Outcome {
    match out {
        Some(path) => write_file(path, text)?,
        None => print!("{text}"),
    }
    Ok(0)
}

fn write_report<T: Serialize>(out: Option<&Path>, report: &T) -> Result<(), Failure> {
    match out {
        Some(path) => write_file(path, &io::report_to_string(report)),
        None => Ok(()),
    }
}

fn show_edges(edges: &[EdgeKey]) -> String {
    let parts: Vec<String> = edges.iter().map(ToString::to_string).collect();
    format!("[{}]", parts.join(", "))
}

fn print_suite(report: &SuiteReport) {
    println!("corpus graphs: {}", report.corpus_graphs);
    println!(
        "{:<34} {:<9} {:>9} {:>9}  result",
        "check", "kind", "cases", "failures"
    );
    for c in &report.checks {
        let kind = if c.asserted { "asserted" } else { "measured" };
        let result = match (c.asserted, c.passed()) {
            (_, true) => "pass",
            (true, false) => "FAIL",
            (false, false) => "mismatch",
        };
        println!(
            "{:<34} {:<9} {:>9} {:>9}  {result}",
            c.id.name(),
            kind,
            c.cases,
            c.failures
        );
    }
    for c in report.checks.iter().filter(|c| !c.passed()) {
        if let Some(cx) = &c.first_counterexample {
            let alpha = cx
                .alpha
                .as_ref()
                .map(ToString::to_string)
                .unwrap_or_else(|| "-".into());
            let tnorm = cx.tnorm.map(|t| t.name()).unwrap_or("-");
            let seed = cx.seed.map(|s| s.to_string()).unwrap_or_else(|| "-".into());
            println!(
                "first {}: {} seed {seed} n {} α {alpha} t-norm {tnorm} edges {}: {}",
                c.id.name(),
                cx.source,
                cx.n,
                show_edges(&cx.edges),
                cx.detail
            );
        }
    }
    println!("suite: {}", if report.passed { "PASS" } else { "FAIL" });
}

fn print_hereditary(report: &HereditaryReport) {
    println!(
        "{} under {:?}, up to {} vertices{}: {} graphs, {} operations",
        report.property,
        report.operation,
        report.n_max,
        if report.sampled { " (sampled)" } else { "" },
        report.graphs_examined,
        report.operations_checked
    );
    match &report.counterexample {
        None => println!("pass"),
        Some(cx) => {
            println!("counterexample: edge {} of", cx.edge);
            print!("{}", io::crisp_to_string(&cx.graph));
            println!("gives");
            print!("{}", io::crisp_to_string(&cx.result));
        }
    }
}

fn print_equivalence(report: &EquivalenceReport) {
    println!(
        "{} / {} at α₀ = {}: {} instances, {} agree, {} disagree, {} skipped, {} classical yes",
        report.property,
        report.operation,
        report.alpha,
        report.instances,
        report.agreements,
        report.disagreements,
        report.skipped,
        report.yes_instances
    );
    if let Some(d) = &report.first_disagreement {
        println!(
            "first disagreement: instance {} (n={}, m={}, k={}): classical {:?}, fuzzy {:?}",
            d.index, d.vertices, d.edges, d.k, d.classical, d.fuzzy
        );
    }
}
