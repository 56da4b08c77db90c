use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use ghilb_cli::commands::{self, CommandError};
use ghilb_cli::report::Report;

/// Exact-arithmetic toolkit for generalized punctual Hilbert schemes of the
/// classical Lie algebras: slices, pair classification, idealic/Chow/Haiman
/// maps, Poisson identities and split real forms.
#[derive(Parser)]
#[command(name = "ghilb", version)]
struct Cli {
    /// Report rendering.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Write the report to a file instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Subcommand)]
enum Command {
    /// Build the principal slice of an algebra from t-parameters.
    Construct {
        /// Algebra label: A2, B3, C2, D4, ...
        #[arg(long)]
        spec: String,
        /// Comma list of parameters, e.g. t2=1,t4=2 (type D also takes tau=...).
        #[arg(long, default_value = "")]
        slice: String,
    },
    /// Classify a commuting pair: centralizer dimension, regularity,
    /// nilpotency and cyclicity.
    Classify {
        #[arg(long)]
        spec: String,
        /// JSON file with fields {field, a, b}.
        #[arg(long)]
        pair: PathBuf,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Random cyclicity trials before reporting "probably not cyclic".
        #[arg(long, default_value_t = 12)]
        trials: usize,
    },
    /// Extract the linear coefficient of B along the principal nilpotent.
    Mu2 {
        #[arg(long)]
        spec: String,
        #[arg(long)]
        pair: PathBuf,
    },
    /// Canonical Cartan coordinates of a semisimple-spectrum pair.
    Chow {
        #[arg(long)]
        spec: String,
        #[arg(long)]
        pair: PathBuf,
    },
    /// Border presentation of the annihilator ideal of a commuting pair.
    Ideal {
        /// Needed only for the type D extension of non-cyclic pairs.
        #[arg(long)]
        spec: Option<String>,
        #[arg(long)]
        pair: PathBuf,
        /// Cyclic vector JSON; searched for when omitted.
        #[arg(long)]
        vector: Option<PathBuf>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 12)]
        trials: usize,
    },
    /// Haiman chart coordinates of the vanishing ideal of given points.
    Haiman {
        /// Rectangle KxL or a comma list of row lengths, e.g. 3,1.
        #[arg(long)]
        diagram: String,
        /// JSON matrix with one (x, y) row per point.
        #[arg(long)]
        points: PathBuf,
    },
    /// Move an ideal between the [m-1,1] chart and the single-row chart.
    ChartChange {
        #[arg(long)]
        spec: Option<String>,
        #[arg(long)]
        pair: PathBuf,
        #[arg(long)]
        vector: Option<PathBuf>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 12)]
        trials: usize,
    },
    /// Exact pullback check of the canonical symplectic form on a rectangle
    /// chart.
    SymplecticCheck {
        /// Rectangle KxL.
        #[arg(long)]
        rect: String,
        /// Optional point configuration (JSON matrix of (x, y) rows).
        #[arg(long)]
        points: Option<PathBuf>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Fiberwise Poisson calculus checks.
    Gcx {
        #[command(subcommand)]
        command: GcxCommand,
    },
    /// Order-1 Lagrangian property of the deformed spectral pair.
    Spectral {
        #[arg(long)]
        spec: String,
        #[arg(long, default_value_t = 2)]
        degree: u32,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Number of derived seeds to run.
        #[arg(long, default_value_t = 3)]
        trials: u64,
    },
    /// Split real form checks.
    Real {
        #[command(subcommand)]
        command: RealCommand,
    },
    /// Run the complete verification suite.
    VerifyAll {
        #[arg(long, default_value_t = 42)]
        seed: u64,
    },
}

#[derive(Subcommand)]
enum GcxCommand {
    /// Verify the Poisson identities for one algebra.
    Verify {
        #[arg(long, visible_alias = "shape")]
        spec: String,
        #[arg(long, default_value_t = 2)]
        degree: u32,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Number of derived seeds to run.
        #[arg(long, visible_alias = "seeds", default_value_t = 3)]
        trials: u64,
    },
}

#[derive(Subcommand)]
enum RealCommand {
    /// Nilpotent families and rotation scalars in sl2(R).
    Sl2rCheck,
    /// Classify a commuting pair of symmetric traceless matrices.
    Classify {
        #[arg(long)]
        spec: Option<String>,
        #[arg(long)]
        pair: PathBuf,
    },
    /// Sample-level real/complex correspondence on the split form.
    SplitCheck {
        #[arg(long)]
        spec: String,
        #[arg(long, default_value_t = 10)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

fn dispatch(command: Command) -> Result<Report, CommandError> {
    match command {
        Command::Construct { spec, slice } => commands::construct(&spec, &slice),
        Command::Classify {
            spec,
            pair,
            seed,
            trials,
        } => commands::classify(&spec, &pair, seed, trials),
        Command::Mu2 { spec, pair } => commands::mu2(&spec, &pair),
        Command::Chow { spec, pair } => commands::chow(&spec, &pair),
        Command::Ideal {
            spec,
            pair,
            vector,
            seed,
            trials,
        } => commands::ideal(spec.as_deref(), &pair, vector.as_deref(), seed, trials),
        Command::Haiman { diagram, points } => commands::haiman(&diagram, &points),
        Command::ChartChange {
            spec,
            pair,
            vector,
            seed,
            trials,
        } => commands::chart_change(spec.as_deref(), &pair, vector.as_deref(), seed, trials),
        Command::SymplecticCheck { rect, points, seed } => {
            commands::symplectic_check(&rect, points.as_deref(), seed)
        }
        Command::Gcx { command } => match command {
            GcxCommand::Verify {
                spec,
                degree,
                seed,
                trials,
            } => commands::gcx_verify(&spec, degree, seed, trials),
        },
        Command::Spectral {
            spec,
            degree,
            seed,
            trials,
        } => commands::spectral(&spec, degree, seed, trials),
        Command::Real { command } => match command {
            RealCommand::Sl2rCheck => commands::real_sl2r_check(),
            RealCommand::Classify { spec, pair } => {
                commands::real_classify(spec.as_deref(), &pair)
            }
            RealCommand::SplitCheck {
                spec,
                samples,
                seed,
            } => commands::real_split_check(&spec, samples, seed),
        },
        Command::VerifyAll { seed } => commands::verify_all(seed),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let start = Instant::now();
    match dispatch(cli.command) {
        Ok(mut report) => {
            report.elapsed_ms = start.elapsed().as_millis();
            let rendered = match cli.format {
                Format::Json => report.to_json(),
                Format::Text => report.to_text(),
            };
            if let Some(path) = &cli.out {
                if let Err(e) = std::fs::write(path, rendered) {
                    eprintln!("error: --out {}: {e}", path.display());
                    return ExitCode::from(2);
                }
            } else {
                println!("{rendered}");
            }
            ExitCode::from(report.exit_code())
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
