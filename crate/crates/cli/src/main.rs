//! `ncworlds`: run the symbolic verification suites and the discrete
//! time-series simulations.
//!
//! Exit status is 0 when every check passes, 1 when a check fails and 2 on
//! usage or input errors. Reports go to stdout (or `--output`); wall times go
//! to stderr so reports stay byte-identical between runs.

mod identities;
mod output;
mod simulate;
mod verify;
mod walk;

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use ncworlds::discrete::parse_rational;
use num_rational::BigRational;

use output::{emit, Format};

#[derive(Parser)]
#[command(name = "ncworlds", version, about = "Commutator calculus verification and discrete time-series simulation")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Common {
    /// Report format.
    #[arg(long, value_enum, default_value_t = Format::Human)]
    format: Format,
    /// Write the report here instead of stdout.
    #[arg(long)]
    output: Option<PathBuf>,
    /// Seed for every pseudo-random choice.
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Subcommand)]
enum Command {
    /// Run the symbolic identity checks.
    Verify {
        /// Run only these checks (repeatable or comma separated).
        #[arg(long, value_name = "CHECK")]
        only: Vec<String>,
        /// Structure constants: `so3` or a JSON file.
        #[arg(long, value_name = "PATH|so3", default_value = "so3")]
        f_tensor: String,
        #[command(flatten)]
        common: Common,
    },
    /// Evaluate the field equations numerically on a three-dimensional series.
    Simulate {
        /// Read the series from a JSON file.
        #[arg(long, conflicts_with = "walk")]
        input: Option<PathBuf>,
        /// Generate a random walk instead of uniform random samples.
        #[arg(long)]
        walk: bool,
        #[arg(long, default_value_t = 64)]
        length: usize,
        /// Diffusion constant of generated walks.
        #[arg(long, default_value = "1")]
        k: String,
        /// Sample period.
        #[arg(long, default_value = "1")]
        tau: String,
        /// Extra output.
        #[arg(long, value_enum)]
        emit: Option<simulate::Emit>,
        #[command(flatten)]
        common: Common,
    },
    /// Generate a walk with steps ±√(kτ) and verify [X, Ẋ] = J k exactly.
    Walk {
        /// Check a series from a JSON file instead.
        #[arg(long)]
        input: Option<PathBuf>,
        #[arg(long, default_value_t = 1000)]
        length: usize,
        #[arg(long, default_value = "1")]
        k: String,
        #[arg(long, default_value = "1")]
        tau: String,
        #[arg(long, default_value_t = 1)]
        dim: usize,
        #[command(flatten)]
        common: Common,
    },
    /// Print the derived field expressions and correction terms.
    Identities {
        #[arg(long, value_name = "PATH|so3", default_value = "so3")]
        f_tensor: String,
        #[command(flatten)]
        common: Common,
    },
}

fn rational(name: &str, s: &str) -> Result<BigRational, String> {
    parse_rational(s).ok_or_else(|| format!("--{name}: not a rational number: {s}"))
}

fn configure_threads() -> Result<(), String> {
    let Ok(v) = std::env::var("NCWORLDS_THREADS") else { return Ok(()) };
    let n: usize = v.trim().parse().map_err(|_| format!("NCWORLDS_THREADS must be a positive integer, got '{v}'"))?;
    if n == 0 {
        return Err("NCWORLDS_THREADS must be a positive integer, got '0'".into());
    }
    rayon::ThreadPoolBuilder::new().num_threads(n).build_global().map_err(|e| e.to_string())
}

/// `Ok(true)` when every check passed.
fn execute(cli: Cli) -> Result<bool, String> {
    configure_threads()?;
    let start = Instant::now();
    let (text, passed, common) = match cli.command {
        Command::Verify { only, f_tensor, common } => {
            let names = verify::select(&only)?;
            let f = verify::load_tensor(&f_tensor)?;
            let run = verify::run(&names, f, common.seed)?;
            for (name, t) in &run.timings {
                eprintln!("{name}: {:.3} s", t.as_secs_f64());
            }
            (verify::render(&run, common.format, &f_tensor, common.seed), run.passed(), common)
        }
        Command::Simulate { input, walk, length, k, tau, emit, common } => {
            let tau = rational("tau", &tau)?;
            let source = match input {
                Some(p) => simulate::Source::File(p.display().to_string()),
                None if walk => simulate::Source::Walk { seed: common.seed, length, k: rational("k", &k)?, tau },
                None => simulate::Source::Uniform { seed: common.seed, length, tau },
            };
            let sim = simulate::run(&source, emit)?;
            (simulate::render(&sim, common.format), sim.passed(), common)
        }
        Command::Walk { input, length, k, tau, dim, common } => {
            let source = match input {
                Some(p) => walk::WalkSource::File(p.display().to_string()),
                None => walk::WalkSource::Generated {
                    seed: common.seed,
                    length,
                    k: rational("k", &k)?,
                    tau: rational("tau", &tau)?,
                    dim,
                },
            };
            let report = walk::run(&source)?;
            (walk::render(&report, common.format), report.passed(), common)
        }
        Command::Identities { f_tensor, common } => {
            let f = verify::load_tensor(&f_tensor)?;
            let id = identities::run(f, &f_tensor);
            (identities::render(&id, common.format), id.passed(), common)
        }
    };
    emit(&text, common.output.as_deref()).map_err(|e| format!("cannot write report: {e}"))?;
    eprintln!("wall time: {:.3} s", start.elapsed().as_secs_f64());
    Ok(passed)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match execute(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
