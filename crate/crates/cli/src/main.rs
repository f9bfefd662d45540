use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

mod commands;

/// Integral Cayley graphs over finite abelian groups.
///
/// Groups are written as moduli joined by `x` (`6`, `2x4x3`). Subsets are
/// comma-separated canonical element indices (`1,5`), `;`-separated tuples
/// (`(1,2);(0,1)`), or the empty string for the empty set. The group can be
/// given either as the first positional argument or with `--group`.
#[derive(Debug, Parser)]
#[command(name = "cayley", version)]
pub struct Cli {
    /// Group spec, instead of the first positional argument.
    #[arg(long, global = true)]
    pub group: Option<String>,

    /// Tolerance for integrality and eigenvalue comparisons.
    #[arg(long, global = true, default_value_t = 1e-6)]
    pub tol: f64,

    #[arg(long, global = true, value_enum, default_value_t = Output::Json)]
    pub output: Output,

    /// Seed for sampled checks.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Output {
    Json,
    Table,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// List the atoms of B(G): generator sets of the cyclic subgroups.
    Atoms {
        #[arg(value_name = "GROUP")]
        args: Vec<String>,
    },
    /// Spectrum of Cay(G, S) from character sums.
    Spectrum {
        #[arg(value_name = "GROUP SUBSET")]
        args: Vec<String>,
        /// Weights k_0,...,k_r: print the generalized distance matrix spectrum instead.
        #[arg(long, allow_hyphen_values = true)]
        dm: Option<String>,
        /// Cross-check against a numeric eigensolver; exit 1 on mismatch.
        #[arg(long)]
        check: bool,
    },
    /// Decide integrality both structurally and spectrally.
    IsIntegral {
        #[arg(value_name = "GROUP SUBSET")]
        args: Vec<String>,
    },
    /// Shift set S^(D) of the distance power G^D.
    DistancePower {
        /// GROUP SUBSET D, with D comma-separated and `inf` allowed.
        #[arg(value_name = "GROUP SUBSET D")]
        args: Vec<String>,
    },
    /// Spectrum of the generalized distance matrix DM(k, G).
    DmSpectrum {
        /// GROUP SUBSET K, one weight per attained distance. Put `--` before
        /// the positionals when K starts with a negative weight.
        #[arg(value_name = "GROUP SUBSET K")]
        args: Vec<String>,
        #[arg(long)]
        check: bool,
    },
    /// Stream every integral Cayley graph over G as JSON lines.
    EnumerateIntegral {
        #[arg(value_name = "GROUP")]
        args: Vec<String>,
        /// Only unions of elementary gcd-sets.
        #[arg(long)]
        gcd_only: bool,
    },
    /// List the elementary gcd-sets S_G(d).
    GcdSets {
        #[arg(value_name = "GROUP")]
        args: Vec<String>,
    },
    /// Run every property check against the brute-force oracles.
    Verify {
        #[arg(value_name = "GROUP")]
        args: Vec<String>,
        /// Random subsets sampled when exhaustive enumeration is too large.
        #[arg(long, default_value_t = 200)]
        budget: usize,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::run(&cli) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(2)
        }
    }
}
