//! Command line front end: solving, recognition, reduction, gadget tooling
//! and the self-verification suite.
//!
//! Exit codes: 0 = yes/success, 1 = no/violation, 2 = usage, parse or
//! capacity errors. Stdout carries machine-readable results; diagnostics
//! go to stderr.

use std::fs;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use polaritylab::oracle::{
    brute_monopolar_with_bound, brute_polar_with_bound, brute_unipolar_with_bound,
    enumerate_monopolar_with_bound,
};
use polaritylab::selftest::{run_all, SuiteConfig};
use polaritylab::{
    build_reduction, default_clause_gadget, find_transitive_orientation, is_3col_comparability,
    parse_formula, read_dimacs_graph, read_gadget_bundle, solve_monopolar, solve_polar,
    synthesize_clause_gadget, verify_clause_gadget, write_dimacs_graph, write_gadget_bundle,
    write_mapping, GadgetError, Graph, Partition, DEFAULT_BRUTE_BOUND, DEFAULT_UNIPOLAR_BOUND,
};

#[derive(Parser)]
#[command(
    name = "polaritylab",
    version,
    about = "polar / monopolar partition toolkit"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Decide a partition problem for a DIMACS edge graph
    Solve(SolveArgs),
    /// Test a structural property of a DIMACS edge graph
    Recognize(RecognizeArgs),
    /// Build the graph of a positive 3-CNF formula
    Reduce(ReduceArgs),
    /// Synthesize, verify or display clause-gadget bundles
    Gadget(GadgetArgs),
    /// Run the self-verification suites
    Selftest(SelftestArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum Problem {
    Monopolar,
    Polar,
    Unipolar,
}

#[derive(Args)]
struct SolveArgs {
    #[arg(value_enum)]
    problem: Problem,
    /// DIMACS edge file
    input: String,
    /// Use the exhaustive oracle instead of the backtracking solver
    #[arg(long)]
    brute: bool,
    /// List every monopolar partition and the count
    #[arg(long)]
    enumerate: bool,
    /// Suppress stdout; the exit code carries the answer
    #[arg(long)]
    quiet: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum Check {
    Comparability,
    K4free,
    #[value(name = "3cc")]
    ThreeCC,
}

#[derive(Args)]
struct RecognizeArgs {
    #[arg(value_enum)]
    check: Check,
    input: String,
}

#[derive(Args)]
struct ReduceArgs {
    /// Restricted DIMACS CNF file (three distinct positive literals per clause)
    cnf: String,
    /// Output path for the graph (DIMACS edge format)
    out_graph: String,
    /// Output path for the mapping sidecar
    out_map: String,
    /// Emit two disjoint copies of the built graph
    #[arg(long)]
    double: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum GadgetAction {
    Synth,
    Verify,
    Show,
}

#[derive(Args)]
struct GadgetArgs {
    #[arg(value_enum)]
    action: GadgetAction,
    /// Bundle path: written by synth, read by verify and show
    bundle: String,
    #[arg(long, default_value_t = 18)]
    max_n: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Args)]
struct SelftestArgs {
    /// Exhaustive sweeps cover all graphs up to this vertex count
    #[arg(long, default_value_t = 6)]
    max_n: usize,
    /// Number of random formulas in the reduction corpus
    #[arg(long, default_value_t = 200)]
    formulas: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

const EXIT_NO: u8 = 1;
const EXIT_ERR: u8 = 2;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let code = match cli.command {
        Command::Solve(args) => cmd_solve(args),
        Command::Recognize(args) => cmd_recognize(args),
        Command::Reduce(args) => cmd_reduce(args),
        Command::Gadget(args) => cmd_gadget(args),
        Command::Selftest(args) => cmd_selftest(args),
    };
    ExitCode::from(code)
}

fn env_cap(default: usize) -> usize {
    std::env::var("POLARITYLAB_MAX_BRUTE")
        .ok()
        .and_then(|v| v.parse().ok())
        .unwrap_or(default)
}

fn fail(msg: impl std::fmt::Display) -> u8 {
    eprintln!("error: {msg}");
    EXIT_ERR
}

fn load_graph(path: &str) -> Result<Graph, u8> {
    let text = fs::read_to_string(path).map_err(|e| fail(format!("{path}: {e}")))?;
    read_dimacs_graph(&text).map_err(|e| fail(format!("{path}: {e}")))
}

fn cmd_solve(args: SolveArgs) -> u8 {
    let g = match load_graph(&args.input) {
        Ok(g) => g,
        Err(code) => return code,
    };
    let cap = env_cap(DEFAULT_BRUTE_BOUND);
    if args.enumerate {
        if !matches!(args.problem, Problem::Monopolar) {
            return fail("--enumerate is only available for the monopolar problem");
        }
        let parts = match enumerate_monopolar_with_bound(&g, cap) {
            Ok(p) => p,
            Err(e) => return fail(e),
        };
        if !args.quiet {
            for p in &parts {
                print!("{}", p.to_text());
            }
            println!("count: {}", parts.len());
        }
        return if parts.is_empty() { EXIT_NO } else { 0 };
    }
    let outcome: Result<Option<Partition>, String> = if args.brute {
        match args.problem {
            Problem::Monopolar => brute_monopolar_with_bound(&g, cap).map_err(|e| e.to_string()),
            Problem::Polar => brute_polar_with_bound(&g, cap).map_err(|e| e.to_string()),
            Problem::Unipolar => brute_unipolar_with_bound(&g, cap).map_err(|e| e.to_string()),
        }
    } else {
        match args.problem {
            Problem::Monopolar => Ok(solve_monopolar(&g)),
            Problem::Polar => Ok(solve_polar(&g)),
            Problem::Unipolar => {
                polaritylab::solver::solve_unipolar_with_bound(&g, env_cap(DEFAULT_UNIPOLAR_BOUND))
                    .map_err(|e| e.to_string())
            }
        }
    };
    match outcome {
        Err(e) => fail(e),
        Ok(Some(p)) => {
            if !args.quiet {
                print!("{}", p.to_text());
            }
            0
        }
        Ok(None) => {
            if !args.quiet {
                println!("NONE");
            }
            EXIT_NO
        }
    }
}

fn cmd_recognize(args: RecognizeArgs) -> u8 {
    let g = match load_graph(&args.input) {
        Ok(g) => g,
        Err(code) => return code,
    };
    match args.check {
        Check::Comparability => match find_transitive_orientation(&g) {
            Some(o) => {
                print!("{}", o.to_text());
                0
            }
            None => {
                println!("NO");
                EXIT_NO
            }
        },
        Check::K4free => {
            if g.has_k4() {
                println!("NO");
                EXIT_NO
            } else {
                println!("YES");
                0
            }
        }
        Check::ThreeCC => {
            if is_3col_comparability(&g) {
                println!("YES");
                0
            } else {
                println!("NO");
                EXIT_NO
            }
        }
    }
}

fn cmd_reduce(args: ReduceArgs) -> u8 {
    let text = match fs::read_to_string(&args.cnf) {
        Ok(t) => t,
        Err(e) => return fail(format!("{}: {e}", args.cnf)),
    };
    let formula = match parse_formula(&text) {
        Ok(f) => f,
        Err(e) => return fail(format!("{}: {e}", args.cnf)),
    };
    let gadget = default_clause_gadget();
    let reduction = match build_reduction(&formula, &gadget) {
        Ok(r) => r,
        Err(e) => return fail(e),
    };
    let graph = if args.double {
        reduction.graph.double()
    } else {
        reduction.graph.clone()
    };
    if let Err(e) = fs::write(&args.out_graph, write_dimacs_graph(&graph)) {
        return fail(format!("{}: {e}", args.out_graph));
    }
    if let Err(e) = fs::write(&args.out_map, write_mapping(&reduction)) {
        return fail(format!("{}: {e}", args.out_map));
    }
    0
}

fn cmd_gadget(args: GadgetArgs) -> u8 {
    match args.action {
        GadgetAction::Synth => match synthesize_clause_gadget(args.max_n, args.seed) {
            Ok(g) => {
                if let Err(e) = fs::write(&args.bundle, write_gadget_bundle(&g)) {
                    return fail(format!("{}: {e}", args.bundle));
                }
                0
            }
            Err(e @ GadgetError::SearchExhausted(_)) => {
                eprintln!("error: {e}");
                EXIT_NO
            }
            Err(e) => fail(e),
        },
        GadgetAction::Verify | GadgetAction::Show => {
            let text = match fs::read_to_string(&args.bundle) {
                Ok(t) => t,
                Err(e) => return fail(format!("{}: {e}", args.bundle)),
            };
            let gadget = match read_gadget_bundle(&text) {
                Ok(g) => g,
                Err(e @ GadgetError::ContractViolation { .. }) => {
                    eprintln!("error: {e}");
                    return EXIT_NO;
                }
                Err(e) => return fail(e),
            };
            match args.action {
                GadgetAction::Verify => {
                    let cert = verify_clause_gadget(&gadget)
                        .expect("bundle reader already certified the gadget");
                    for p in &cert.partitions {
                        print!("{}", p.to_text());
                    }
                    0
                }
                GadgetAction::Show => {
                    for (i, &t) in gadget.terminals.iter().enumerate() {
                        println!("t{} {}", i + 1, t + 1);
                    }
                    println!("hub {}", gadget.hub + 1);
                    print!("{}", gadget.orientation.to_text());
                    0
                }
                GadgetAction::Synth => unreachable!(),
            }
        }
    }
}

fn cmd_selftest(args: SelftestArgs) -> u8 {
    if args.max_n > 7 {
        return fail("--max-n is capped at 7: the exhaustive sweeps grow as 2^(n choose 2)");
    }
    let cfg = SuiteConfig {
        exhaustive_n: args.max_n,
        random_formulas: args.formulas,
        seed: args.seed,
        ..SuiteConfig::default()
    };
    let results = run_all(&cfg);
    let mut failed = vec![];
    for (i, r) in results.iter().enumerate() {
        println!(
            "{} {} ({}): {} checks, {} ms{}",
            i + 1,
            if r.passed { "PASS" } else { "FAIL" },
            r.name,
            r.checked,
            r.millis,
            if r.detail.is_empty() {
                String::new()
            } else {
                format!(" - {}", r.detail)
            }
        );
        if !r.passed {
            failed.push(r.name);
        }
    }
    if failed.is_empty() {
        println!("all suites passed");
        0
    } else {
        println!("failed suites: {}", failed.join(", "));
        EXIT_NO
    }
}
