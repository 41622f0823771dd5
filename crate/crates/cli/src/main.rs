use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use lme_core::{EnumerationBounds, WitnessConfig};

mod commands;

use commands::{CliError, Format};

#[derive(Parser, Debug)]
#[command(
    name = "lme",
    version,
    about = "Existence and dimension of locally maximally entangled states"
)]
struct Cli {
    /// One JSON object per line.
    #[arg(long, global = true, conflicts_with = "csv")]
    json: bool,
    /// CSV with a header row (enumerate only).
    #[arg(long, global = true)]
    csv: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Closed-form classification of a dimension vector.
    Classify(DimsArg),
    /// Castling path to the terminal vector.
    Trace(DimsArg),
    /// Numerical search for a state with maximally mixed marginals.
    Witness {
        #[command(flatten)]
        dims: DimsArg,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        #[arg(long, default_value_t = 100)]
        restarts: u32,
        /// Success threshold on the residual.
        #[arg(long, default_value_t = 1e-10)]
        tol: f64,
        #[arg(long, default_value_t = 5000)]
        max_iters: u32,
        /// Run every restart instead of stopping at the first success.
        #[arg(long)]
        all_restarts: bool,
        /// Also write the best state as JSON to this file.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Table of every dimension vector inside the bounds.
    Enumerate(BoundsArgs),
    /// Compare closed form and recursion on every vector inside the bounds.
    Check(BoundsArgs),
}

#[derive(Args, Debug)]
struct DimsArg {
    #[arg(required = true, num_args = 1.., allow_negative_numbers = true)]
    dims: Vec<i64>,
}

#[derive(Args, Debug)]
struct BoundsArgs {
    #[arg(long, default_value_t = 2)]
    n_min: usize,
    #[arg(long)]
    n_max: Option<usize>,
    #[arg(long)]
    max_product: Option<u64>,
    #[arg(long)]
    max_entry: Option<u64>,
}

impl BoundsArgs {
    fn bounds(&self, n_max: usize, max_product: u64) -> EnumerationBounds {
        let b = EnumerationBounds::new(
            self.n_min,
            self.n_max.unwrap_or(n_max),
            self.max_product.unwrap_or(max_product),
        );
        match self.max_entry {
            Some(e) => b.with_max_entry(e),
            None => b,
        }
    }
}

fn run(cli: &Cli, out: &mut dyn Write, err: &mut dyn Write) -> Result<(), CliError> {
    let format = if cli.json {
        Format::Json
    } else if cli.csv {
        Format::Csv
    } else {
        Format::Human
    };
    match &cli.command {
        Command::Classify(d) => commands::cmd_classify(&d.dims, format, out),
        Command::Trace(d) => commands::cmd_trace(&d.dims, format, out),
        Command::Witness {
            dims,
            seed,
            restarts,
            tol,
            max_iters,
            all_restarts,
            out: save_to,
        } => {
            let cfg = WitnessConfig {
                seed: *seed,
                restarts: *restarts,
                success_tolerance: *tol,
                max_iters: *max_iters,
                early_exit: !all_restarts,
                ..WitnessConfig::default()
            };
            commands::cmd_witness(&dims.dims, &cfg, format, save_to.as_deref(), out)
        }
        Command::Enumerate(b) => commands::cmd_enumerate(b.bounds(3, 64), format, out, err),
        Command::Check(b) => commands::cmd_check(b.bounds(6, 4096), format, out),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let stdout = io::stdout();
    let mut out = io::BufWriter::new(stdout.lock());
    let mut err = io::stderr();
    let result = run(&cli, &mut out, &mut err);
    let _ = out.flush();
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            if cli.json {
                let _ = writeln!(out, "{}", e.to_json());
                let _ = out.flush();
            } else {
                let _ = writeln!(err, "error: {}", e.message());
            }
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
