//! `riccati`: command-line front end. JSON on stdout, diagnostics on stderr.
//!
//! Exit codes: 0 success, 1 a requested verification did not pass (or a run failed),
//! 2 usage error, 3 inadmissible instantiation, 4 out of scope.

mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use riccati_core::verify::{DEFAULT_SEED, DEFAULT_TOLERANCE};

#[derive(Parser, Debug)]
#[command(name = "riccati", version, about = "Projective Riccati expansions for the fifth-order KdV family")]
pub struct Cli {
    #[command(flatten)]
    pub global: Global,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct Global {
    /// Emit JSON (the default).
    #[arg(long, global = true, conflicts_with = "latex")]
    pub json: bool,
    /// Emit LaTeX instead of JSON (reduce, gensys, catalog).
    #[arg(long, global = true)]
    pub latex: bool,
    /// Seed for random sampling.
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    pub seed: u64,
    /// Relative residual tolerance.
    #[arg(long, global = true, default_value_t = DEFAULT_TOLERANCE)]
    pub tol: f64,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Traveling-wave ODE of u_t + ω u_xxxxx + α u u_xxx + β u_x u_xx + γ u² u_x = 0.
    Reduce {
        /// ω (integer, fraction like 3/2, or decimal)
        #[arg(allow_hyphen_values = true)]
        omega: String,
        #[arg(allow_hyphen_values = true)]
        alpha: String,
        #[arg(allow_hyphen_values = true)]
        beta: String,
        #[arg(allow_hyphen_values = true)]
        gamma: String,
    },
    /// Degree balancing for the expansion order m.
    Balance(Equation),
    /// Coefficient system of the order-m ansatz.
    Gensys {
        #[command(flatten)]
        equation: Equation,
        #[arg(long, default_value_t = 1)]
        m: usize,
        /// Compare against the shipped thirteen-equation reference transcription (CDG, m = 1).
        #[arg(long, alias = "check-paper")]
        check_reference: bool,
        /// Random rational points per comparison.
        #[arg(long, default_value_t = 24)]
        points: usize,
    },
    /// Solution branches of the m = 1 system for fixed signs e and ρ.
    Solve {
        #[command(flatten)]
        equation: Equation,
        #[arg(long, allow_hyphen_values = true)]
        e: i64,
        #[arg(long, allow_hyphen_values = true)]
        rho: i64,
        #[arg(long, default_value_t = 1)]
        m: usize,
    },
    /// The tabulated solution families.
    Catalog {
        #[command(subcommand)]
        action: CatalogAction,
    },
    /// PDE residuals of catalog families under the jet and finite-difference oracles.
    Verify(VerifyArgs),
    /// Pseudospectral integration of the CDG equation from a catalog profile.
    Simulate {
        /// Config file: `key = value` lines or a JSON object.
        #[arg(long)]
        config: PathBuf,
        /// Write snapshots as TSV files into this directory.
        #[arg(long)]
        snapshots: Option<PathBuf>,
        /// Also measure the temporal order (dt vs dt/2 against a dt/10 reference).
        #[arg(long)]
        order: bool,
    },
}

#[derive(Args, Debug, Clone)]
pub struct Equation {
    /// Use the CDG coefficients (1, 30, 30, 180); the default when --coeffs is absent.
    #[arg(long, conflicts_with = "coeffs")]
    pub cdg: bool,
    /// Coefficients ω α β γ.
    #[arg(long, num_args = 4, value_names = ["OMEGA", "ALPHA", "BETA", "GAMMA"], allow_hyphen_values = true)]
    pub coeffs: Option<Vec<String>>,
}

#[derive(Subcommand, Debug)]
pub enum CatalogAction {
    /// All 21 families.
    List,
    /// One family by id, e.g. T3R6.
    Show { id: String },
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    /// Family id; repeatable.
    #[arg(long = "family", required_unless_present = "all")]
    pub families: Vec<String>,
    /// Every family.
    #[arg(long, conflicts_with = "families")]
    pub all: bool,
    /// Verify at this λ instead of the two seeded samples.
    #[arg(long, allow_hyphen_values = true)]
    pub lambda: Option<f64>,
    /// Free parameter r (required for the surd families when --lambda is given).
    #[arg(long, allow_hyphen_values = true, requires = "lambda")]
    pub r: Option<f64>,
    /// Write x, t, u and residual columns as TSV.
    #[arg(long)]
    pub plot_data: Option<PathBuf>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::run(&cli) {
        Ok(out) => {
            print!("{}", out.stdout);
            ExitCode::from(out.code)
        }
        Err(e) => {
            eprintln!("error: {}", e.message);
            ExitCode::from(e.code)
        }
    }
}
