//! `simiscalc`: powers, decompositions and Simis checks for monomial ideals,
//! with support-2 classification and fuzz campaigns.

mod commands;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{Context, Result};
use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand};
use simiscalc::fuzz::Family;
use simiscalc::ideal::set_generator_limit;

use crate::report::{Report, Timings};

const GEN_LIMIT_VAR: &str = "SIMISCALC_GEN_LIMIT";

#[derive(Parser)]
#[command(name = "simiscalc", version, about = "Symbolic powers and Simis checks for monomial ideals")]
struct Cli {
    /// Print a human-readable rendering instead of JSON.
    #[arg(long, global = true)]
    pretty: bool,
    /// Include wall-clock timings in the report.
    #[arg(long, global = true)]
    timings: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Input {
    /// Ideal file in text or JSON format; `-` reads standard input.
    file: PathBuf,
}

#[derive(Subcommand)]
enum Command {
    /// Irreducible and primary decompositions with associated primes.
    Decompose(Input),
    /// Generators of I^s, or of I^(s) with --symbolic.
    Power {
        #[command(flatten)]
        input: Input,
        #[arg(short = 's', long = "degree")]
        degree: u32,
        #[arg(long)]
        symbolic: bool,
    },
    /// The symbolic power I^(s) and its primary pieces.
    Symbolic {
        #[command(flatten)]
        input: Input,
        #[arg(short = 's', long = "degree")]
        degree: u32,
    },
    /// Membership of a monomial; exits 3 when it is not a member.
    Member {
        #[command(flatten)]
        input: Input,
        /// Monomial such as `x2^4*x3^4`.
        monomial: String,
        #[arg(short = 's', long = "degree", default_value_t = 1)]
        degree: u32,
        #[arg(long)]
        symbolic: bool,
    },
    /// Compares I^(s) with I^s for s = 1..N; exits 2 on the first failure.
    Simis {
        #[command(flatten)]
        input: Input,
        #[arg(long, default_value_t = 4)]
        max_degree: u32,
    },
    /// Support-2 profile, graph facts and every classification predicate.
    Classify {
        #[command(flatten)]
        input: Input,
        /// Degree bound for cross-checking Simis predictions.
        #[arg(long, default_value_t = 4)]
        s_max: u32,
    },
    /// Polarization and its variable map.
    Polarize(Input),
    /// Seeded campaign cross-checking predicates against direct computation;
    /// exits 2 on any discrepancy.
    Fuzz(FuzzArgs),
}

#[derive(Args)]
pub struct FuzzArgs {
    /// random-support2, cycle, whisker or c3.
    #[arg(long)]
    pub family: Family,
    #[arg(long, default_value_t = 100)]
    pub trials: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Number of vertices.
    #[arg(long, conflicts_with = "m")]
    pub n: Option<usize>,
    /// Core size of the whiskered graph.
    #[arg(long)]
    pub m: Option<usize>,
    #[arg(long, default_value_t = 3)]
    pub max_exponent: u16,
    #[arg(long, default_value_t = 1)]
    pub max_alpha: usize,
    #[arg(long, default_value_t = 3)]
    pub s_max: u32,
    /// Resample each trial until this predicate applies.
    #[arg(long)]
    pub require: Option<String>,
    /// Directory receiving one JSON file per discrepant trial.
    #[arg(long, default_value = "fuzz-repro")]
    pub dump_dir: PathBuf,
}

fn apply_generator_limit() -> Result<()> {
    if let Ok(raw) = std::env::var(GEN_LIMIT_VAR) {
        let limit: usize = raw
            .trim()
            .parse()
            .with_context(|| format!("{GEN_LIMIT_VAR} must be a positive integer, got '{raw}'"))?;
        anyhow::ensure!(limit > 0, "{GEN_LIMIT_VAR} must be positive");
        set_generator_limit(limit);
    }
    Ok(())
}

fn run(cli: Cli) -> Result<u8> {
    apply_generator_limit()?;
    let start = Instant::now();
    let (name, digest, out) = match cli.command {
        Command::Decompose(i) => {
            let doc = commands::load(&i.file)?;
            ("decompose", doc.digest.clone(), commands::decompose(&doc)?)
        }
        Command::Power {
            input,
            degree,
            symbolic,
        } => {
            let doc = commands::load(&input.file)?;
            ("power", doc.digest.clone(), commands::power(&doc, degree, symbolic)?)
        }
        Command::Symbolic { input, degree } => {
            let doc = commands::load(&input.file)?;
            ("symbolic", doc.digest.clone(), commands::symbolic(&doc, degree)?)
        }
        Command::Member {
            input,
            monomial,
            degree,
            symbolic,
        } => {
            let doc = commands::load(&input.file)?;
            ("member", doc.digest.clone(), commands::member(&doc, &monomial, degree, symbolic)?)
        }
        Command::Simis { input, max_degree } => {
            let doc = commands::load(&input.file)?;
            ("simis", doc.digest.clone(), commands::simis(&doc, max_degree)?)
        }
        Command::Classify { input, s_max } => {
            let doc = commands::load(&input.file)?;
            ("classify", doc.digest.clone(), commands::classify(&doc, s_max)?)
        }
        Command::Polarize(i) => {
            let doc = commands::load(&i.file)?;
            ("polarize", doc.digest.clone(), commands::polarize(&doc)?)
        }
        Command::Fuzz(args) => {
            let (digest, out) = commands::fuzz(&args)?;
            ("fuzz", digest, out)
        }
    };
    let timings = cli.timings.then(|| Timings {
        total_ms: start.elapsed().as_secs_f64() * 1e3,
    });
    if cli.pretty {
        print!("{}", out.pretty);
        if let Some(t) = &timings {
            println!("time: {:.3} ms", t.total_ms);
        }
    } else {
        let report = Report {
            command: name.to_string(),
            input_digest: digest,
            result: out.result,
            certificates: out.certificates,
            timings,
        };
        println!("{}", serde_json::to_string(&report)?);
    }
    Ok(out.exit)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => ExitCode::SUCCESS,
                _ => ExitCode::from(1),
            };
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}
