//! `phasewave`: saturation curves, wave curves, slope-margin sweeps, local fits
//! and Riemann problems as CSV or JSON.
//!
//! Exit codes: 0 success, 1 a strictness check failed, 2 usage or
//! configuration error, 3 physical-domain error (including vacuum).

mod commands;
mod config;

use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use config::{Output, TableArg, Window};

#[derive(Parser, Debug)]
#[command(
    name = "phasewave",
    version,
    about = "Stiffened-gas water/vapor wave analysis"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Saturation curve p_sat(T) of a phase pair
    Satcurve {
        /// Phase pair: `table1` or a JSON file
        #[arg(long, default_value = "table1")]
        params: String,
        #[command(flatten)]
        window: Window,
        #[command(flatten)]
        output: Output,
    },
    /// Vapor Hugoniot or liquid isentrope from an anchor, checked against
    /// the saturation line
    Wavecurve {
        #[arg(long, default_value = "table1")]
        params: String,
        #[arg(long, value_enum)]
        kind: Kind,
        /// Anchor pressure, Pa
        #[arg(long)]
        p_hat: f64,
        /// Anchor temperature, K
        #[arg(long)]
        t_hat: f64,
        /// End pressure, Pa (above p_hat for shock, below for rarefaction)
        #[arg(long)]
        p_end: f64,
        /// Number of exported samples
        #[arg(long, default_value_t = 200)]
        n: usize,
        #[command(flatten)]
        output: Output,
    },
    /// Check that wave-curve slopes exceed saturation slopes
    Verify {
        #[arg(long, value_enum, default_value_t = Mode::All)]
        mode: Mode,
        /// Phase pair for the fixed-constant sweep
        #[arg(long, default_value = "table1")]
        params: String,
        #[command(flatten)]
        table: TableArg,
        #[command(flatten)]
        window: Window,
        #[command(flatten)]
        output: Output,
    },
    /// Stiffened-gas constants fitted to saturation table rows
    Fit {
        #[command(flatten)]
        table: TableArg,
        /// Without a window every table row is fitted
        #[command(flatten)]
        window: Window,
        #[command(flatten)]
        output: Output,
    },
    /// Exact single-phase Riemann problem
    Riemann {
        /// Single phase: a preset or a JSON file
        #[arg(long, default_value = "ideal-gas")]
        params: String,
        /// Left state `rho,u,p`
        #[arg(long, value_parser = commands::parse_state, allow_hyphen_values = true)]
        left: [f64; 3],
        /// Right state `rho,u,p`
        #[arg(long, value_parser = commands::parse_state, allow_hyphen_values = true)]
        right: [f64; 3],
        /// Profile samples
        #[arg(long, default_value_t = 201)]
        n: usize,
        /// Profile range in x/t (default: all waves plus margin)
        #[arg(long, allow_hyphen_values = true)]
        xi_min: Option<f64>,
        #[arg(long, allow_hyphen_values = true)]
        xi_max: Option<f64>,
        #[command(flatten)]
        output: Output,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Kind {
    Shock,
    Rarefaction,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    /// Fixed constants from --params
    Table1,
    /// Constants re-fitted at every table anchor
    Fitted,
    All,
}

/// Error carrying its exit code.
#[derive(Debug)]
pub struct Failure {
    pub code: u8,
    pub message: String,
}

impl Failure {
    pub fn usage(message: impl Into<String>) -> Self {
        Self {
            code: 2,
            message: message.into(),
        }
    }

    pub fn strictness(message: impl Into<String>) -> Self {
        Self {
            code: 1,
            message: message.into(),
        }
    }
}

impl From<phasewave::Error> for Failure {
    fn from(e: phasewave::Error) -> Self {
        let code = if e.is_physical() { 3 } else { 2 };
        Self {
            code,
            message: e.to_string(),
        }
    }
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Satcurve {
            params,
            window,
            output,
        } => commands::satcurve(&params, &window, &output),
        Command::Wavecurve {
            params,
            kind,
            p_hat,
            t_hat,
            p_end,
            n,
            output,
        } => commands::wavecurve(&params, kind, (p_hat, t_hat), p_end, n, &output),
        Command::Verify {
            mode,
            params,
            table,
            window,
            output,
        } => commands::verify(mode, &params, &table, &window, &output),
        Command::Fit {
            table,
            window,
            output,
        } => commands::fit(&table, &window, &output),
        Command::Riemann {
            params,
            left,
            right,
            n,
            xi_min,
            xi_max,
            output,
        } => commands::riemann(&params, left, right, n, (xi_min, xi_max), &output),
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("phasewave: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
