use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

mod commands;

#[derive(Parser)]
#[command(name = "canform", version, about = "Exact canonical forms of convex polytopes")]
struct Cli {
    #[command(subcommand)]
    verb: Verb,

    #[arg(long, global = true, value_enum, default_value_t = Format::Pretty)]
    format: Format,

    /// Worker threads for the library (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,

    /// Seed for sampled checks.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Pretty,
    Json,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum MethodArg {
    Triangulation,
    Dualvol,
    Laplace,
    All,
}

#[derive(Subcommand)]
enum Verb {
    /// Canonical form of a polytope.
    Canon {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, value_enum, default_value_t = MethodArg::Triangulation)]
        method: MethodArg,
    },
    /// Residue of the canonical form along a facet.
    Residue {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        facet: usize,
    },
    /// Adjoint numerator, homogenized.
    Adjoint {
        #[arg(long)]
        input: PathBuf,
    },
    /// Residual arrangement of the facet hyperplanes.
    Residual {
        #[arg(long)]
        input: PathBuf,
    },
    /// Polar polytope at an interior point (default: the vertex centroid).
    Polar {
        #[arg(long)]
        input: PathBuf,
        /// Comma-separated rational coordinates.
        #[arg(long)]
        at: Option<String>,
    },
    /// Dual-volume terms, one per simplicial normal cone.
    Dualvol {
        #[arg(long)]
        input: PathBuf,
    },
    /// Laplace terms of the dual cone.
    Laplace {
        #[arg(long)]
        input: PathBuf,
    },
    /// Dual mixed volume of Minkowski summands given as point sets.
    Mixedvol {
        #[arg(long, num_args = 1.., required = true)]
        inputs: Vec<PathBuf>,
    },
    CheckRecursion {
        #[arg(long)]
        input: PathBuf,
    },
    CheckSubdivision {
        #[arg(long)]
        parent: PathBuf,
        #[arg(long, num_args = 1.., required = true)]
        parts: Vec<PathBuf>,
    },
    CheckFilliman {
        #[arg(long)]
        input: PathBuf,
    },
    CheckConvexity {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, default_value_t = 100)]
        samples: usize,
    },
    CheckPushforward {
        #[arg(long)]
        input: PathBuf,
        /// Overrides `samples` in the input file.
        #[arg(long)]
        samples: Option<usize>,
        /// Overrides `tol` in the input file.
        #[arg(long)]
        tol: Option<f64>,
    },
}

/// What a verb produced: both renderings and whether every check passed.
pub struct Output {
    pub pretty: String,
    pub json: serde_json::Value,
    pub passed: bool,
}

#[derive(Debug)]
pub struct Failure(String);

impl<E: std::fmt::Display> From<E> for Failure {
    fn from(e: E) -> Self {
        Failure(e.to_string())
    }
}

pub fn read(path: &Path) -> Result<String, Failure> {
    let meta = std::fs::metadata(path).map_err(|e| Failure(format!("{}: {e}", path.display())))?;
    if meta.len() > canform::io::MAX_INPUT_BYTES as u64 {
        return Err(Failure(format!(
            "{}: file exceeds {} bytes",
            path.display(),
            canform::io::MAX_INPUT_BYTES
        )));
    }
    std::fs::read_to_string(path).map_err(|e| Failure(format!("{}: {e}", path.display())))
}

fn dispatch(verb: &Verb, seed: u64) -> Result<Output, Failure> {
    use commands::*;
    match verb {
        Verb::Canon { input, method } => canon(input, *method),
        Verb::Residue { input, facet } => residue(input, *facet),
        Verb::Adjoint { input } => adjoint(input),
        Verb::Residual { input } => residual(input),
        Verb::Polar { input, at } => polar(input, at.as_deref()),
        Verb::Dualvol { input } => dualvol(input),
        Verb::Laplace { input } => laplace(input),
        Verb::Mixedvol { inputs } => mixedvol(inputs),
        Verb::CheckRecursion { input } => check_recursion(input),
        Verb::CheckSubdivision { parent, parts } => check_subdivision(parent, parts),
        Verb::CheckFilliman { input } => check_filliman(input),
        Verb::CheckConvexity { input, samples } => check_convexity(input, *samples, seed),
        Verb::CheckPushforward { input, samples, tol } => check_pushforward(input, *samples, *tol, seed),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = cli.threads {
        if n == 0 {
            eprintln!("error: --threads: must be at least 1");
            return ExitCode::from(2);
        }
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
            eprintln!("error: --threads: {e}");
            return ExitCode::from(2);
        }
    }
    match dispatch(&cli.verb, cli.seed) {
        Ok(out) => {
            let text = match cli.format {
                Format::Pretty => out.pretty,
                Format::Json => {
                    serde_json::to_string_pretty(&out.json).expect("json values serialize") + "\n"
                }
            };
            // a closed pipe downstream is not our failure
            let _ = std::io::stdout().lock().write_all(text.as_bytes());
            if out.passed {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(Failure(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
