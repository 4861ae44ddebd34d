//! `shufflerep`: command-line access to the chain, shuffle and RSK
//! computations. Every command writes CSV with a `#` metadata header.

mod args;
mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use shufflerep_core::Error;

#[derive(Parser, Debug)]
#[command(
    name = "shufflerep",
    version,
    about = "Representation chains, descent-algebra shuffles and RSK"
)]
struct Cli {
    /// Write output here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

/// Subgroup of `S_n`, or an arbitrary group given by files.
#[derive(Args, Debug)]
struct SubgroupArgs {
    #[arg(long, required_unless_present = "group")]
    n: Option<usize>,
    /// `top`, `topk:K`, `riffle:K` or a composition like `2,1,3`.
    #[arg(long, required_unless_present = "group")]
    mu: Option<String>,
    /// Character data file; use with `--ratios` instead of `--n/--mu`.
    #[arg(long, requires = "ratios", conflicts_with_all = ["n", "mu"])]
    group: Option<PathBuf>,
    /// Class ratio file for the subgroup.
    #[arg(long, requires = "group")]
    ratios: Option<PathBuf>,
    /// Largest `n` for which character tables are built.
    #[arg(long, default_value_t = 12)]
    max_n: usize,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Eigenvalues of the chain per class, with the classes attaining β.
    Spectrum(SubgroupArgs),
    /// Distribution after r steps from the trivial representation.
    Evolve {
        #[command(flatten)]
        sub: SubgroupArgs,
        #[arg(long)]
        r: u32,
        /// Rational arithmetic instead of f64.
        #[arg(long)]
        exact: bool,
    },
    /// Compare the chain's r-step distribution with the RSK shape law of the shuffle.
    VerifyThm2 {
        #[arg(long)]
        n: usize,
        /// `top`, `topk:K`, `riffle:K` or `file:PATH`.
        #[arg(long)]
        shuffle: String,
        #[arg(long)]
        r: u32,
        /// Largest `n` for which measures on all of `S_n` are built.
        #[arg(long, default_value_t = 8)]
        max_n: usize,
    },
    /// Compare the eigenvalue sets of the chain and of the shuffle element.
    VerifyIsospectral {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        shuffle: String,
        #[arg(long, default_value_t = 8)]
        max_n: usize,
    },
    /// Shape-level (and, when exact, permutation-level) TV against r.
    TvCurve {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        shuffle: String,
        #[arg(long)]
        rmax: u32,
        /// Estimate by sampling instead of exact convolution.
        #[arg(long)]
        mc: bool,
        #[arg(long, default_value_t = 100_000, requires = "mc")]
        samples: usize,
        #[arg(long, default_value_t = 1, requires = "mc")]
        seed: u64,
        /// Spacing of the Monte Carlo grid; defaults to rmax/10.
        #[arg(long, requires = "mc")]
        step: Option<u32>,
        #[arg(long, default_value_t = 200, requires = "mc")]
        bootstrap: usize,
        #[arg(long, default_value_t = 8)]
        max_n: usize,
    },
    /// β for GL(n−1,q) ≤ GL(n,q).
    GlBeta {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        q: u64,
        #[arg(long)]
        brute_force: bool,
        /// Enumerate GL(2,q) directly (n = 2, q ∈ {2,3}).
        #[arg(long)]
        direct: bool,
    },
    /// Run the acceptance grid.
    Selftest {
        /// Run only these criteria (1-based); repeatable.
        #[arg(long)]
        criterion: Vec<usize>,
    },
}

/// Command output and whether its verification (if any) succeeded.
pub struct Outcome {
    pub mode: &'static str,
    pub seed: Option<u64>,
    pub body: String,
    pub ok: bool,
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Capacity { .. } => 3,
        Error::Consistency(_) => 1,
        _ => 2,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Spectrum(sub) => commands::spectrum(&sub),
        Command::Evolve { sub, r, exact } => commands::evolve(&sub, r, exact),
        Command::VerifyThm2 {
            n,
            shuffle,
            r,
            max_n,
        } => commands::verify_thm2(n, &shuffle, r, max_n),
        Command::VerifyIsospectral { n, shuffle, max_n } => {
            commands::verify_isospectral(n, &shuffle, max_n)
        }
        Command::TvCurve {
            n,
            shuffle,
            rmax,
            mc,
            samples,
            seed,
            step,
            bootstrap,
            max_n,
        } => {
            let mc = mc.then_some(commands::McArgs {
                samples,
                seed,
                step,
                bootstrap,
            });
            commands::tv_curve(n, &shuffle, rmax, mc, max_n)
        }
        Command::GlBeta {
            n,
            q,
            brute_force,
            direct,
        } => commands::gl_beta(n, q, brute_force, direct),
        Command::Selftest { criterion } => commands::selftest(&criterion),
    };
    let outcome = match result {
        Ok(o) => o,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(exit_code(&e));
        }
    };
    let text = commands::with_header(&outcome);
    match &cli.out {
        Some(path) => {
            if let Err(e) = std::fs::write(path, text) {
                eprintln!("error: {}: {e}", path.display());
                return ExitCode::from(2);
            }
        }
        None => print!("{text}"),
    }
    if outcome.ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}
