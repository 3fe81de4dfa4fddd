mod commands;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use output::Format;

#[derive(Parser)]
#[command(name = "spintqft", version, about = "Spin-refined quantum invariants of 3-manifolds")]
struct Cli {
    /// Level: A = exp(2πi/4r), r ≡ 0 (mod 4)
    #[arg(long, global = true, default_value_t = 8)]
    r: usize,

    /// Working precision in bits
    #[arg(long, global = true, default_value_t = spintqft::arith::DEFAULT_PRECISION)]
    precision: u32,

    #[arg(long, global = true, default_value_t = spintqft::arith::DEFAULT_TOLERANCE)]
    tolerance: f64,

    /// Worker threads for coloring sums (default: all cores)
    #[arg(long, global = true)]
    threads: Option<usize>,

    #[arg(long, global = true, value_enum, default_value_t = Format::Table)]
    format: Format,

    /// Seed for randomized checks
    #[arg(long, global = true, default_value_t = spintqft::verify::DEFAULT_SEED)]
    seed: u64,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Constants ω_i², q_i², ω, Δ, Δ̄ and their identities
    Constants,
    /// τ(M) of a surgery presentation, optionally refined by spin structures
    Rt {
        file: PathBuf,
        /// `all`, or a characteristic sublink as a bit string
        #[arg(long, num_args = 0..=1, default_missing_value = "all")]
        spin: Option<String>,
    },
    /// Same as `rt --spin`
    RtSpin {
        file: PathBuf,
        #[arg(long, default_value = "all")]
        spin: String,
    },
    /// Turaev–Viro state sum of a triangulation
    Tv {
        file: PathBuf,
        /// `all`, or the index of a cohomology class
        #[arg(long = "h", num_args = 0..=1, default_missing_value = "all")]
        h: Option<String>,
    },
    /// Same as `tv --h`
    TvRefined {
        file: PathBuf,
        #[arg(long = "h", default_value = "all")]
        h: String,
    },
    /// Verlinde and spin dimensions
    Dims {
        /// A genus or an inclusive range `a..b`
        #[arg(long, default_value = "1..3")]
        genus: String,
    },
    /// Spin projectors on the cylinder over a genus-g surface
    Projector {
        #[arg(long, default_value_t = 1)]
        genus: usize,
        /// q(a_i) values as a bit string; with --qb selects one structure
        #[arg(long, requires = "qb")]
        qa: Option<String>,
        #[arg(long, requires = "qa")]
        qb: Option<String>,
        /// Include the nonzero matrix entries
        #[arg(long)]
        entries: bool,
    },
    /// Run the identity suite
    Verify,
}

pub struct Failure {
    pub code: u8,
    pub error: anyhow::Error,
}

impl Failure {
    pub fn new(code: u8, error: impl Into<anyhow::Error>) -> Self {
        Self {
            code,
            error: error.into(),
        }
    }
}

/// Exit code of a library error.
pub fn code_of(e: &spintqft::Error) -> u8 {
    use spintqft::Error::*;
    match e {
        NotCharacteristic(_) => 3,
        InvalidLink(_) | InvalidTriangulation(_) | InvalidDiagram(_) | ColorOutOfRange { .. }
        | OutOfRange { .. } | InvalidGenus | ForeignClass | NotCocycle => 4,
        InvalidParams(_) => 2,
        _ => 1,
    }
}

impl From<spintqft::Error> for Failure {
    fn from(e: spintqft::Error) -> Self {
        Self::new(code_of(&e), e)
    }
}

fn run(cli: Cli) -> Result<String, Failure> {
    if let Some(n) = cli.threads {
        if n == 0 {
            return Err(Failure::new(2, anyhow::anyhow!("--threads must be positive")));
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(|e| Failure::new(2, e))?;
    }
    let params = spintqft::TheoryParams::new(cli.r, cli.precision, cli.tolerance)
        .map_err(|e| Failure::new(2, e))?;
    let report = match &cli.command {
        Command::Constants => commands::constants(&params)?,
        Command::Rt { file, spin } => commands::rt(&params, file, spin.as_deref())?,
        Command::RtSpin { file, spin } => commands::rt(&params, file, Some(spin))?,
        Command::Tv { file, h } => commands::tv(&params, file, h.as_deref())?,
        Command::TvRefined { file, h } => commands::tv(&params, file, Some(h))?,
        Command::Dims { genus } => commands::dims(&params, genus)?,
        Command::Projector {
            genus,
            qa,
            qb,
            entries,
        } => commands::projector(&params, *genus, qa.as_deref().zip(qb.as_deref()), *entries)?,
        Command::Verify => commands::verify(&params, cli.seed)?,
    };
    let text = report.render(cli.format);
    if !report.passed {
        print!("{text}");
        return Err(Failure::new(5, anyhow::anyhow!("some checks failed")));
    }
    Ok(text)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(text) => {
            print!("{text}");
            ExitCode::SUCCESS
        }
        Err(f) => {
            eprintln!("error: {:#}", f.error);
            ExitCode::from(f.code)
        }
    }
}
