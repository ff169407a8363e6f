//! Command-line surface for the spheroidal basis constructions:
//! basis generation, verification suites, decomposition, numeric
//! evaluation, Monte-Carlo estimates, and dimension tables.

mod commands;

use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

/// Exact orthogonal bases of harmonic, monogenic, ambigenic and
/// contragenic polynomials on spheroids.
#[derive(Parser)]
#[command(name = "spheroidal", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum OutputFormat {
    Json,
    Csv,
    Pretty,
}

#[derive(Subcommand)]
enum Command {
    /// Generate all basis elements of a family up to a degree.
    GenBasis {
        /// Basis family: U, V, X or Z.
        #[arg(long)]
        family: String,
        /// Maximum degree.
        #[arg(long)]
        nmax: u32,
        /// Shape parameter tau as an exact rational ("1/4", "-1",
        /// "sphere"), or "sym" for τ-symbolic output (U, V, X).
        #[arg(long, default_value = "sym", allow_hyphen_values = true)]
        shape: String,
        /// Output format.
        #[arg(long, value_enum, default_value_t = OutputFormat::Json)]
        format: OutputFormat,
        /// Output file (stdout when omitted).
        #[arg(long)]
        out: Option<std::path::PathBuf>,
    },
    /// Run a verification suite; exit code 0 iff every check passes.
    Verify {
        /// Suite name (harmonicity, monogenicity, orthogonality, norms,
        /// recurrence, dims, tables, dualpath, mc, decompose, shapes, all).
        suite: String,
        #[arg(long, default_value_t = 4)]
        nmax: u32,
        /// Comma-separated list of shape parameters.
        #[arg(long, default_value = "0,1/4,-1", allow_hyphen_values = true)]
        shapes: String,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long, default_value_t = 200_000)]
        samples: u64,
        #[arg(long, value_enum, default_value_t = OutputFormat::Pretty)]
        format: OutputFormat,
    },
    /// Decompose a harmonic ℝ³-valued polynomial (QPoly JSON file) into
    /// monogenic + antimonogenic + contragenic parts.
    Decompose {
        /// Input file holding the polynomial in QPoly JSON form.
        #[arg(long)]
        input: std::path::PathBuf,
        #[arg(long)]
        nmax: u32,
        #[arg(long, allow_hyphen_values = true)]
        shape: String,
        /// Output file for the decomposition JSON (stdout when omitted).
        #[arg(long)]
        out: Option<std::path::PathBuf>,
    },
    /// Evaluate a basis element at random interior points; emits CSV.
    Eval {
        /// Element selector like "X:2,1,-", "V:3,0,+" or "Z:3,0".
        #[arg(long)]
        element: String,
        #[arg(long, allow_hyphen_values = true)]
        shape: String,
        /// Number of random interior points.
        #[arg(long, default_value_t = 20)]
        points: u64,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long)]
        out: Option<std::path::PathBuf>,
    },
    /// Monte-Carlo estimate of an inner product of two basis elements;
    /// emits JSON {estimate, stderr, n, seed}.
    Mc {
        /// First element selector, e.g. "X:1,0,+".
        #[arg(long)]
        f: String,
        /// Second element selector.
        #[arg(long)]
        g: String,
        #[arg(long, allow_hyphen_values = true)]
        shape: String,
        #[arg(long, default_value_t = 1_000_000)]
        samples: u64,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long)]
        out: Option<std::path::PathBuf>,
    },
    /// Print the dimension table (computed Gram ranks vs. closed forms).
    Dims {
        #[arg(long, default_value_t = 4)]
        nmax: u32,
        #[arg(long, default_value = "1/4", allow_hyphen_values = true)]
        shape: String,
        #[arg(long, value_enum, default_value_t = OutputFormat::Pretty)]
        format: OutputFormat,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::GenBasis { family, nmax, shape, format, out } => {
            commands::gen_basis(&family, nmax, &shape, format, out.as_deref())
        }
        Command::Verify { suite, nmax, shapes, seed, samples, format } => {
            commands::verify(&suite, nmax, &shapes, seed, samples, format)
        }
        Command::Decompose { input, nmax, shape, out } => {
            commands::decompose(&input, nmax, &shape, out.as_deref())
        }
        Command::Eval { element, shape, points, seed, out } => {
            commands::eval(&element, &shape, points, seed, out.as_deref())
        }
        Command::Mc { f, g, shape, samples, seed, out } => {
            commands::mc(&f, &g, &shape, samples, seed, out.as_deref())
        }
        Command::Dims { nmax, shape, format } => commands::dims(nmax, &shape, format),
    };
    match outcome {
        Ok(all_passed) => {
            if all_passed {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(2)
        }
    }
}
