//! Command-line front end and JSON formats for `tcoh-core`.
//!
//! Exit codes: 0 on success, 1 for computational errors, 2 for usage and
//! parse errors.

pub mod commands;
pub mod error;
pub mod fmt;
pub mod schema;

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use tcoh_core::Tolerances;

pub use error::{CliError, CliResult};

#[derive(Debug, Parser)]
#[command(name = "tcoh", version, about = "Coherent noise under teleportation")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct Common {
    /// Input file, `-` for stdin, or inline JSON starting with `{`.
    #[arg(long, short)]
    pub input: Option<String>,
    /// Output file; stdout if omitted.
    #[arg(long, short)]
    pub output: Option<PathBuf>,
    /// Seed for sampling.
    #[arg(long)]
    pub seed: Option<u64>,
    /// Tolerance override `name=value` (equality, completeness, imaginary, purity, eigenstate).
    #[arg(long = "tol", value_name = "NAME=VALUE")]
    pub tol: Vec<String>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Exact, free, randomized-compiling and sampled infidelity of a chain.
    Chain {
        #[command(flatten)]
        common: Common,
        /// Monte Carlo samples; needs --seed.
        #[arg(long)]
        samples: Option<u64>,
    },
    /// Exact infidelity with second- and third-order bands and estimates.
    Bounds {
        #[command(flatten)]
        common: Common,
    },
    /// Pauli replacement of pure Z-coherent noise on a foliated code.
    Foliate {
        #[command(flatten)]
        common: Common,
        /// Also write the flat (gamma, t, w, axis, p) table here.
        #[arg(long)]
        csv: Option<PathBuf>,
    },
    /// Dense simulation of the coherent and replaced models, group by group.
    Verify {
        #[command(flatten)]
        common: Common,
    },
    /// Threshold lower bound and the matching rotation angle.
    Threshold {
        #[command(flatten)]
        common: Common,
        /// Maximum neighbour count in the decoding graph.
        #[arg(long = "B", value_name = "B")]
        b: u32,
        /// Pauli threshold to convert instead of the lower bound.
        #[arg(long = "p-th")]
        p_th: Option<f64>,
        /// Locations whose rotations combine into one Pauli error.
        #[arg(long = "n-locations", default_value_t = 5)]
        n_locations: u32,
    },
}

impl Common {
    pub fn tolerances(&self) -> CliResult<Tolerances> {
        let mut tol = Tolerances::default();
        for item in &self.tol {
            let (name, value) =
                item.split_once('=').ok_or_else(|| CliError::usage(format!("--tol `{item}`: expected NAME=VALUE")))?;
            let v: f64 = value.parse().map_err(|_| CliError::usage(format!("--tol `{item}`: bad number")))?;
            if !(v >= 0.0) {
                return Err(CliError::usage(format!("--tol `{item}`: must be nonnegative")));
            }
            if !tol.set(name, v) {
                return Err(CliError::usage(format!("--tol: unknown tolerance `{name}`")));
            }
        }
        Ok(tol)
    }

    pub fn read_input(&self) -> CliResult<String> {
        let src = self.input.as_deref().ok_or_else(|| CliError::usage("missing --input"))?;
        if src.trim_start().starts_with('{') {
            return Ok(src.to_string());
        }
        if src == "-" {
            let mut s = String::new();
            std::io::Read::read_to_string(&mut std::io::stdin(), &mut s)
                .map_err(|e| CliError::usage(format!("stdin: {e}")))?;
            return Ok(s);
        }
        std::fs::read_to_string(src).map_err(|e| CliError::usage(format!("{src}: {e}")))
    }

    pub fn write_output(&self, text: &str) -> CliResult<()> {
        match &self.output {
            Some(p) => write_file(p, text),
            None => {
                use std::io::Write;
                std::io::stdout()
                    .write_all(text.as_bytes())
                    .map_err(|e| CliError::Io { path: "stdout".into(), source: e })
            }
        }
    }
}

fn write_file(p: &std::path::Path, text: &str) -> CliResult<()> {
    std::fs::write(p, text).map_err(|e| CliError::Io { path: p.display().to_string(), source: e })
}

pub fn run(cli: &Cli) -> CliResult<()> {
    match &cli.command {
        Command::Chain { common, samples } => {
            let cfg = schema::parse(&common.read_input()?)?;
            common.write_output(&commands::chain(&cfg, &common.tolerances()?, *samples, common.seed)?)
        }
        Command::Bounds { common } => {
            let cfg = schema::parse(&common.read_input()?)?;
            common.write_output(&commands::bounds(&cfg, &common.tolerances()?)?)
        }
        Command::Foliate { common, csv } => {
            let cfg = schema::parse(&common.read_input()?)?;
            let (json, table) = commands::foliate(&cfg, &common.tolerances()?)?;
            if let Some(p) = csv {
                write_file(p, &table)?;
            }
            common.write_output(&json)
        }
        Command::Verify { common } => {
            let cfg = schema::parse(&common.read_input()?)?;
            common.write_output(&commands::verify(&cfg, &common.tolerances()?)?)
        }
        Command::Threshold { common, b, p_th, n_locations } => {
            common.tolerances()?;
            common.write_output(&commands::threshold(*b, *p_th, *n_locations)?)
        }
    }
}
