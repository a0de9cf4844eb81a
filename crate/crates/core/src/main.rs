//! Command-line front end: adjudicates the relaxation-based decision
//! procedures against brute-force oracles and emits one JSON report per
//! run. Disagreement between the two sides is a reported finding and exits
//! 0; only operational failures exit nonzero.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use interdiction_lab::decision::SettlementMode;
use interdiction_lab::harness::{
    run_experiment, search_counterexamples, ExperimentConfig, HarnessError, InstanceSource,
    Problem,
};
use interdiction_lab::reductions::PairingMode;

#[derive(Parser)]
#[command(
    name = "interdiction-lab",
    version,
    about = "Adjudicates relaxation-based clique/SAT/vertex-cover procedures against brute-force oracles"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Does the graph contain a clique of size K?
    Clique(CommonArgs),
    /// Find the maximum clique size the procedure accepts.
    Maxclique(CommonArgs),
    /// Is the 3-CNF formula satisfiable?
    Sat(CommonArgs),
    /// Does the graph have a vertex cover of size K?
    Vc(CommonArgs),
    /// Does interdicting the two-layer network within budget R leave max flow K?
    Pcmfnip(CommonArgs),
    /// Minimum max flow of a general network under interdiction budget R.
    Mfnip(CommonArgs),
    /// Scan a graph space for clique-procedure/oracle disagreements.
    Search(SearchArgs),
}

#[derive(Args)]
struct CommonArgs {
    /// Instance file: DIMACS graph (.col), DIMACS CNF, or network dump.
    #[arg(long, value_name = "FILE", conflicts_with_all = ["exhaustive", "random"])]
    input: Option<PathBuf>,

    /// Enumerate all instances up to this size (graph vertices; for sat,
    /// clause count over four variables).
    #[arg(long, value_name = "N", conflicts_with = "random")]
    exhaustive: Option<u32>,

    /// Seeded random instance "n,p,seed" (for sat: "variables,clauses,seed";
    /// p also accepts fractions like 1/2).
    #[arg(long, value_name = "n,p,seed", value_parser = parse_random_triple)]
    random: Option<RandomTriple>,

    /// Decision target K (omit with --exhaustive to sweep the valid range).
    #[arg(long, value_name = "K")]
    k: Option<u32>,

    /// Interdiction budget R.
    #[arg(long, value_name = "R")]
    r: Option<u64>,

    /// How the satisfiability translation couples clauses.
    #[arg(long, value_enum, default_value_t = PairingArg::All)]
    pairing: PairingArg,

    /// Require the edge-node variable group to settle to an integer too.
    #[arg(long = "beta-settlement", value_enum, default_value_t = SwitchArg::Off)]
    beta_settlement: SwitchArg,

    /// Write the JSON report here (a summary goes to stdout); otherwise the
    /// report itself is printed to stdout.
    #[arg(long, value_name = "PATH")]
    report: Option<PathBuf>,
}

#[derive(Args)]
struct SearchArgs {
    #[command(flatten)]
    common: CommonArgs,

    /// Maximum number of graphs to scan (required for --random; defaults to
    /// the whole space for --exhaustive and --input).
    #[arg(long, value_name = "COUNT")]
    budget: Option<u64>,
}

#[derive(Clone, Copy, ValueEnum)]
enum PairingArg {
    All,
    Succeeding,
}

#[derive(Clone, Copy, ValueEnum)]
enum SwitchArg {
    On,
    Off,
}

#[derive(Clone, Debug)]
struct RandomTriple {
    n: u32,
    p: f64,
    seed: u64,
}

fn parse_random_triple(text: &str) -> Result<RandomTriple, String> {
    let parts: Vec<&str> = text.split(',').collect();
    if parts.len() != 3 {
        return Err("expected three comma-separated fields: n,p,seed".into());
    }
    let n: u32 = parts[0]
        .trim()
        .parse()
        .map_err(|_| format!("bad instance size {:?}", parts[0]))?;
    let p_text = parts[1].trim();
    let p: f64 = match p_text.split_once('/') {
        Some((num, den)) => {
            let num: f64 = num.trim().parse().map_err(|_| format!("bad fraction {p_text:?}"))?;
            let den: f64 = den.trim().parse().map_err(|_| format!("bad fraction {p_text:?}"))?;
            if den == 0.0 {
                return Err(format!("zero denominator in {p_text:?}"));
            }
            num / den
        }
        None => p_text
            .parse()
            .map_err(|_| format!("bad probability {p_text:?}"))?,
    };
    let seed: u64 = parts[2]
        .trim()
        .parse()
        .map_err(|_| format!("bad seed {:?}", parts[2]))?;
    Ok(RandomTriple { n, p, seed })
}

fn build_source(args: &CommonArgs) -> Result<InstanceSource, HarnessError> {
    match (&args.input, args.exhaustive, &args.random) {
        (Some(path), None, None) => Ok(InstanceSource::File(path.clone())),
        (None, Some(max_size), None) => Ok(InstanceSource::Exhaustive { max_size }),
        (None, None, Some(triple)) => Ok(InstanceSource::Random {
            n: triple.n,
            p: triple.p,
            seed: triple.seed,
        }),
        _ => Err(HarnessError::MissingParameter(
            "input, --exhaustive, or --random (exactly one)",
        )),
    }
}

fn build_config(problem: Problem, args: &CommonArgs) -> Result<ExperimentConfig, HarnessError> {
    Ok(ExperimentConfig {
        problem,
        source: build_source(args)?,
        k: args.k,
        r: args.r,
        pairing: match args.pairing {
            PairingArg::All => PairingMode::AllPairs,
            PairingArg::Succeeding => PairingMode::Succeeding,
        },
        settlement: match args.beta_settlement {
            SwitchArg::On => SettlementMode::GammaAndBeta,
            SwitchArg::Off => SettlementMode::GammaOnly,
        },
    })
}

fn run() -> Result<(), HarnessError> {
    let cli = Cli::parse();
    let (config, budget, report_path) = match &cli.command {
        Command::Clique(args) => (build_config(Problem::Clique, args)?, None, args.report.clone()),
        Command::Maxclique(args) => {
            (build_config(Problem::MaxClique, args)?, None, args.report.clone())
        }
        Command::Sat(args) => (build_config(Problem::Sat, args)?, None, args.report.clone()),
        Command::Vc(args) => {
            (build_config(Problem::VertexCover, args)?, None, args.report.clone())
        }
        Command::Pcmfnip(args) => {
            (build_config(Problem::Pcmfnip, args)?, None, args.report.clone())
        }
        Command::Mfnip(args) => (build_config(Problem::Mfnip, args)?, None, args.report.clone()),
        Command::Search(args) => {
            let budget = match (&args.common.random, args.budget) {
                (Some(_), None) => {
                    return Err(HarnessError::MissingParameter(
                        "budget (random searches need an instance count)",
                    ))
                }
                (_, budget) => budget.unwrap_or(u64::MAX),
            };
            (
                build_config(Problem::Clique, &args.common)?,
                Some(budget),
                args.common.report.clone(),
            )
        }
    };

    let report = match budget {
        Some(budget) => search_counterexamples(&config, budget)?,
        None => run_experiment(&config)?,
    };

    match report_path {
        Some(path) => {
            report.write_to(&path).map_err(|e| HarnessError::Parse {
                what: "report output",
                message: e.to_string(),
            })?;
            let s = &report.summary;
            println!(
                "problem={} source={} instances={} agreements={} disagreements={} errors={}",
                report.experiment.problem,
                report.experiment.source,
                s.instances,
                s.agreements,
                s.disagreements,
                s.errors,
            );
            if let Some(digest) = &s.first_disagreement {
                println!("first_disagreement={digest}");
            }
            println!("report={}", path.display());
        }
        None => print!("{}", report.to_json_string()),
    }
    Ok(())
}

fn main() -> ExitCode {
    env_logger::init();
    match run() {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}
