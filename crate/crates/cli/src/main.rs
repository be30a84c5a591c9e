use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use sigsurf::{
    files, job, run_suite, Approach, CliError, JobInput, JobSpec, SignatureResult, SuiteFile,
    VerifyReport,
};
use sigsurf_core::{parse_polynomial, BrieskornExponents};

/// Signature of the suspension surface singularity z^N + g(x, y) = 0,
/// computed from Puiseux pairs, a resolution graph, spectral pairs, or
/// Brieskorn exponents.
#[derive(Parser)]
#[command(name = "sigsurf", version, about, max_term_width = 100)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Signature via reduction of Puiseux pairs to Brieskorn sums
    Puiseux {
        /// Puiseux pairs file: {"pairs": [[3,2],[7,2]]}
        #[arg(long, value_name = "FILE")]
        pairs: PathBuf,
        /// Suspension exponent N >= 2
        #[arg(short = 'N', long = "suspension", value_name = "INT")]
        n: u64,
        /// Emit the result as JSON
        #[arg(long)]
        json: bool,
    },
    /// Signature via the eta invariant of a resolution graph
    Resolution {
        /// Resolution graph file with exceptional vertices, arrowheads, edges
        #[arg(long, value_name = "FILE")]
        graph: PathBuf,
        /// Suspension exponent N >= 2
        #[arg(short = 'N', long = "suspension", value_name = "INT")]
        n: u64,
        /// Emit the result as JSON
        #[arg(long)]
        json: bool,
    },
    /// Signature via the eta invariant of spectral pairs
    Spectral {
        /// Spectral pairs file: {"entries": [{"alpha":"-1/6","w":1,"h":1}, ...]}
        #[arg(long, value_name = "FILE")]
        sppairs: PathBuf,
        /// Suspension exponent N >= 2
        #[arg(short = 'N', long = "suspension", value_name = "INT")]
        n: u64,
        /// Emit the result as JSON
        #[arg(long)]
        json: bool,
    },
    /// Signature of x^C1 + y^C2 + z^C3 by lattice point counting
    Brieskorn {
        /// Exponent of x
        c1: u64,
        /// Exponent of y
        c2: u64,
        /// Exponent of z
        c3: u64,
        /// Emit the result as JSON
        #[arg(long)]
        json: bool,
    },
    /// Race every applicable engine; the first success wins
    Race {
        #[command(flatten)]
        input: InputArgs,
        /// Suspension exponent N >= 2 (defaults to C3 for --brieskorn)
        #[arg(short = 'N', long = "suspension", value_name = "INT")]
        n: Option<u64>,
        /// Emit the result as JSON
        #[arg(long)]
        json: bool,
    },
    /// Run every applicable engine to completion and require agreement
    Verify {
        #[command(flatten)]
        input: InputArgs,
        /// Suspension exponent N >= 2 (defaults to C3 for --brieskorn)
        #[arg(short = 'N', long = "suspension", value_name = "INT")]
        n: Option<u64>,
        /// Emit the result as JSON
        #[arg(long)]
        json: bool,
    },
    /// Time every engine on a fixture suite
    Bench {
        /// Suite file: {"fixtures": [{"name":..., "n":..., "pairs": ...}, ...]}
        #[arg(long, value_name = "FILE")]
        suite: PathBuf,
        /// Write the report as JSON to this file
        #[arg(long, value_name = "FILE")]
        out: Option<PathBuf>,
    },
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct InputArgs {
    /// Puiseux pairs file
    #[arg(long, value_name = "FILE")]
    pairs: Option<PathBuf>,
    /// Resolution graph file
    #[arg(long, value_name = "FILE")]
    graph: Option<PathBuf>,
    /// Spectral pairs file
    #[arg(long, value_name = "FILE")]
    sppairs: Option<PathBuf>,
    /// Curve polynomial in x and y, e.g. "y^2 - x^3"
    #[arg(long, value_name = "EXPR")]
    poly: Option<String>,
    /// Brieskorn exponents C1 C2 C3
    #[arg(long, num_args = 3, value_names = ["C1", "C2", "C3"])]
    brieskorn: Option<Vec<u64>>,
}

impl InputArgs {
    fn into_input(self) -> Result<JobInput, CliError> {
        if let Some(path) = &self.pairs {
            Ok(JobInput::Pairs(files::load_pairs(path)?))
        } else if let Some(path) = &self.graph {
            Ok(JobInput::Graph(files::load_graph(path)?))
        } else if let Some(path) = &self.sppairs {
            Ok(JobInput::Spectral(files::load_spectral(path)?))
        } else if let Some(expr) = &self.poly {
            Ok(JobInput::Poly(parse_polynomial(expr)?))
        } else if let Some(c) = &self.brieskorn {
            Ok(JobInput::Brieskorn(BrieskornExponents::new(
                c[0], c[1], c[2],
            )?))
        } else {
            unreachable!("clap enforces exactly one input")
        }
    }
}

fn fmt_seconds(seconds: f64) -> String {
    if seconds < 1e-3 {
        format!("{:.1} us", seconds * 1e6)
    } else if seconds < 1.0 {
        format!("{:.2} ms", seconds * 1e3)
    } else {
        format!("{seconds:.2} s")
    }
}

fn print_result(result: &SignatureResult, json: bool) -> Result<(), CliError> {
    if json {
        println!("{}", to_json(result)?);
        return Ok(());
    }
    println!("signature = {}", result.value);
    println!("approach  = {}", result.approach);
    println!("n         = {}", result.n);
    if let (Some(eta_n), Some(eta_1)) = (&result.eta_n, &result.eta_1) {
        println!("eta({})    = {}", result.n, eta_n);
        println!("eta(1)    = {}", eta_1);
    }
    println!("wall time = {}", fmt_seconds(result.wall_time_seconds));
    for note in &result.notes {
        println!("note: {note}");
    }
    Ok(())
}

fn print_verify(report: &VerifyReport, json: bool) -> Result<(), CliError> {
    if json {
        println!("{}", to_json(report)?);
        return Ok(());
    }
    println!("signature = {}", report.value);
    println!(
        "consensus = true ({} engine{})",
        report.engines.len(),
        if report.engines.len() == 1 { "" } else { "s" }
    );
    for engine in &report.engines {
        println!(
            "  {:<11} {:>8}   {}",
            engine.approach.to_string(),
            engine.value,
            fmt_seconds(engine.seconds)
        );
    }
    for note in &report.notes {
        println!("note: {note}");
    }
    Ok(())
}

fn to_json<T: serde::Serialize>(value: &T) -> Result<String, CliError> {
    serde_json::to_string_pretty(value).map_err(|source| CliError::Json {
        path: PathBuf::from("<stdout>"),
        source,
    })
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Puiseux { pairs, n, json } => {
            let spec = JobSpec::new(JobInput::Pairs(files::load_pairs(&pairs)?), Some(n))?;
            print_result(&job::single_signature(&spec, Approach::Puiseux)?, json)
        }
        Command::Resolution { graph, n, json } => {
            let spec = JobSpec::new(JobInput::Graph(files::load_graph(&graph)?), Some(n))?;
            print_result(&job::single_signature(&spec, Approach::Resolution)?, json)
        }
        Command::Spectral { sppairs, n, json } => {
            let spec = JobSpec::new(JobInput::Spectral(files::load_spectral(&sppairs)?), Some(n))?;
            print_result(&job::single_signature(&spec, Approach::Spectral)?, json)
        }
        Command::Brieskorn { c1, c2, c3, json } => {
            let input = JobInput::Brieskorn(BrieskornExponents::new(c1, c2, c3)?);
            let spec = JobSpec::new(input, None)?;
            print_result(&job::single_signature(&spec, Approach::Brieskorn)?, json)
        }
        Command::Race { input, n, json } => {
            let spec = JobSpec::new(input.into_input()?, n)?;
            print_result(&job::race_signature(&spec)?, json)
        }
        Command::Verify { input, n, json } => {
            let spec = JobSpec::new(input.into_input()?, n)?;
            print_verify(&job::verify_signature(&spec)?, json)
        }
        Command::Bench { suite, out } => {
            let report = run_suite(&SuiteFile::read(&suite)?)?;
            println!(
                "{:<14} {:>3} {:<11} {:>10}   time",
                "fixture", "n", "engine", "signature"
            );
            for row in &report.rows {
                for engine in &row.engines {
                    println!(
                        "{:<14} {:>3} {:<11} {:>10}   {}",
                        row.name,
                        row.n,
                        engine.approach.to_string(),
                        engine.value,
                        fmt_seconds(engine.seconds)
                    );
                }
            }
            if let Some(path) = out {
                let mut text = serde_json::to_string_pretty(&report).map_err(|source| {
                    CliError::Json {
                        path: path.clone(),
                        source,
                    }
                })?;
                text.push('\n');
                std::fs::write(&path, text).map_err(|source| CliError::Io { path, source })?;
            }
            Ok(())
        }
    }
}

/// Restore the default SIGPIPE disposition so `sigsurf ... | head` exits
/// quietly instead of panicking on a closed pipe.
#[cfg(unix)]
fn reset_sigpipe() {
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }
}

#[cfg(not(unix))]
fn reset_sigpipe() {}

fn main() -> ExitCode {
    reset_sigpipe();
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(error) => {
            eprintln!("error: {error}");
            ExitCode::from(u8::try_from(error.exit_code()).unwrap_or(1))
        }
    }
}
