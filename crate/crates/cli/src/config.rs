use std::fs;
use std::path::{Path, PathBuf};

use clap::{Args, ValueEnum};
use phasewave::eos::StiffenedGasParams;
use phasewave::saturation::PhasePair;
use phasewave::steamtable::SteamTable;

use crate::Failure;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Args, Debug)]
pub struct Output {
    /// Output format
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    /// Write to this file instead of stdout
    #[arg(long)]
    pub out: Option<PathBuf>,
}

impl Output {
    pub fn emit(
        &self,
        csv: impl FnOnce() -> String,
        json: impl FnOnce() -> String,
    ) -> Result<(), Failure> {
        let mut text = match self.format {
            Format::Csv => csv(),
            Format::Json => json(),
        };
        if !text.ends_with('\n') {
            text.push('\n');
        }
        match &self.out {
            Some(path) => fs::write(path, text)
                .map_err(|e| Failure::usage(format!("cannot write {}: {e}", path.display()))),
            None => {
                print!("{text}");
                Ok(())
            }
        }
    }
}

#[derive(Args, Debug, Default)]
pub struct Window {
    /// Lower temperature, K
    #[arg(long)]
    pub tmin: Option<f64>,
    /// Upper temperature, K
    #[arg(long)]
    pub tmax: Option<f64>,
    /// Number of samples
    #[arg(long)]
    pub n: Option<usize>,
}

impl Window {
    pub fn is_default(&self) -> bool {
        self.tmin.is_none() && self.tmax.is_none() && self.n.is_none()
    }

    /// Fills unset values and checks the result against `[lo, hi]`.
    pub fn resolve(
        &self,
        defaults: (f64, f64, usize),
        lo: f64,
        hi: f64,
    ) -> Result<(f64, f64, usize), Failure> {
        let t_min = self.tmin.unwrap_or(defaults.0);
        let t_max = self.tmax.unwrap_or(defaults.1);
        let n = self.n.unwrap_or(defaults.2);
        if !(t_min >= lo && t_max <= hi) {
            return Err(Failure::usage(format!(
                "window [{t_min}, {t_max}] K outside supported range [{lo}, {hi}] K"
            )));
        }
        if n == 0 || t_min > t_max || (n > 1 && t_min == t_max) {
            return Err(Failure::usage(format!(
                "empty window [{t_min}, {t_max}] K with n = {n}"
            )));
        }
        Ok((t_min, t_max, n))
    }
}

#[derive(Args, Debug)]
pub struct TableArg {
    /// Saturation table CSV (bundled table if unset)
    #[arg(long, env = "PHASEWAVE_TABLE")]
    pub table: Option<PathBuf>,
}

impl TableArg {
    pub fn load(&self) -> Result<SteamTable, Failure> {
        match &self.table {
            None => Ok(SteamTable::bundled()),
            Some(path) => SteamTable::from_path(path)
                .map_err(|e| Failure::usage(format!("table {}: {e}", path.display()))),
        }
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path)
        .map_err(|e| Failure::usage(format!("cannot read {}: {e}", path.display())))
}

/// `table1` or a JSON file with `vapor` and `liquid` objects.
pub fn phase_pair(source: &str) -> Result<PhasePair, Failure> {
    if source == "table1" {
        return Ok(PhasePair::table1());
    }
    let path = Path::new(source);
    if !path.is_file() {
        return Err(Failure::usage(format!(
            "unknown phase-pair preset '{source}' (expected 'table1' or a JSON file)"
        )));
    }
    PhasePair::from_json(&read(path)?).map_err(|e| Failure::usage(format!("{source}: {e}")))
}

/// A single-phase preset name or a JSON file.
pub fn single_phase(source: &str) -> Result<StiffenedGasParams, Failure> {
    if let Some(p) = StiffenedGasParams::preset(source) {
        return Ok(p);
    }
    let path = Path::new(source);
    if !path.is_file() {
        return Err(Failure::usage(format!(
            "unknown preset '{source}' (expected one of {} or a JSON file)",
            StiffenedGasParams::PRESETS.join(", ")
        )));
    }
    StiffenedGasParams::from_json(&read(path)?)
        .map_err(|e| Failure::usage(format!("{source}: {e}")))
}
