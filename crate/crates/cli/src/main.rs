//! `canheight`: canonical heights, preperiodic points, Julia samples and
//! Dirichlet-property obstructions from the command line.

mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

#[derive(Parser, Debug)]
#[command(name = "canheight", version, about = "Canonical heights and Green functions of self-maps of P^1")]
pub struct Cli {
    /// Tolerance (certified error for heights, violation margin for obstructions).
    #[arg(long, global = true)]
    pub tol: Option<f64>,
    /// Seed for every random choice.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Print the JSON report on stdout even when --out is given.
    #[arg(long, global = true)]
    pub json: bool,
    /// Path of the primary artifact (JSON report, or CSV for point clouds).
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct MapArg {
    /// Map specification (JSON).
    #[arg(long)]
    pub map: PathBuf,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Global canonical height of a point.
    Height {
        #[command(flatten)]
        map: MapArg,
        /// "p/q", "inf", "a:b", "[a,b]" (a + b e over Q(sqrt 29)) or "quad:c2,c1,c0[,-]".
        #[arg(long, allow_hyphen_values = true)]
        point: String,
        /// Fixed series depth instead of a tolerance-driven one.
        #[arg(long)]
        depth: Option<usize>,
    },
    /// Local canonical heights of a point, place by place.
    LocalHeights {
        #[command(flatten)]
        map: MapArg,
        #[arg(long, allow_hyphen_values = true)]
        point: String,
        #[arg(long)]
        depth: Option<usize>,
    },
    /// Certified preperiodic points of bounded naive height.
    Preperiodic {
        #[command(flatten)]
        map: MapArg,
        #[arg(long, default_value_t = 5)]
        bound: u64,
        #[arg(long, default_value_t = 1e-6)]
        eps: f64,
    },
    /// Backward-orbit sample of the Julia set.
    Julia {
        #[command(flatten)]
        map: MapArg,
        #[arg(long, default_value_t = 10)]
        depth: usize,
        #[arg(long, default_value_t = 2)]
        per_node: usize,
        /// Start point: "inf", "x", or "x+yi".
        #[arg(long, default_value = "2", allow_hyphen_values = true)]
        start: String,
        /// Optional binary PPM raster.
        #[arg(long)]
        ppm: Option<PathBuf>,
        #[arg(long, default_value_t = 800)]
        res: usize,
    },
    /// Bin statistics of a cloud against a uniform reference measure.
    Equidist {
        #[arg(long)]
        cloud: PathBuf,
        /// "circle" or "sphere".
        #[arg(long, default_value = "circle")]
        reference: String,
        #[arg(long, default_value_t = 64)]
        bins: usize,
    },
    /// Look for points where a section has norm below 1.
    CheckObstruction {
        #[command(flatten)]
        map: MapArg,
        #[arg(long)]
        section: PathBuf,
        #[arg(long)]
        cloud: PathBuf,
    },
    /// Run the violation check over a family of sections.
    Sweep {
        #[command(flatten)]
        map: MapArg,
        /// Family specification (JSON); the default family when omitted.
        #[arg(long)]
        family: Option<PathBuf>,
        #[arg(long)]
        cloud: PathBuf,
    },
    /// Exact resultant, unit test and bad primes.
    Resultant {
        #[command(flatten)]
        map: MapArg,
    },
    /// Divisors on Spec Q.
    Speck {
        #[command(subcommand)]
        op: SpeckOp,
    },
    /// Torsion x-coordinates of y^2 = x^3 + a x + b.
    Torsion {
        #[arg(long, default_value = "0", allow_hyphen_values = true)]
        a: String,
        #[arg(long, default_value = "1", allow_hyphen_values = true)]
        b: String,
        #[arg(long, default_value_t = 8)]
        n: usize,
    },
}

#[derive(Subcommand, Debug)]
pub enum SpeckOp {
    /// Arakelov degree (1/2) sum of the entries.
    Degree {
        #[arg(long)]
        input: PathBuf,
    },
    /// Decide principality and give the exponents.
    Principalize {
        #[arg(long)]
        input: PathBuf,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("canheight: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
