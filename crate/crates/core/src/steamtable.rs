//! Tabulated real-fluid saturation properties and local stiffened-gas fits.
//!
//! A [`LocalFit`] chooses the five constants of each phase so that the
//! stiffened-gas relations reproduce the table exactly at one saturation
//! anchor `(p_sat(T), T)`: density, internal energy, entropy and sound speed,
//! plus the isobaric heat capacity for the liquid.

use std::io::Read;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::eos::StiffenedGasParams;
use crate::saturation::PhasePair;
use crate::{format, Error, Result, T_CRIT};

/// Exact header of the table CSV format.
pub const TABLE_CSV_HEADER: &str = "T_K,p_sat_Pa,rho_V,rho_L,a_V,a_L,s_V,s_L,e_V,e_L,cp_L";

/// Header of the fit-curve export.
pub const FIT_CSV_HEADER: &str = "T_K,phase,gamma,pi_Pa,C,q,q_prime";

/// IAPWS-IF97 saturation properties, triple point to 647 K, see
/// `scripts/gen_steam_table.py`.
pub const BUNDLED_TABLE_CSV: &str = include_str!("../data/steam_saturation_if97.csv");

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SteamTableRow {
    #[serde(rename = "T_K")]
    pub t: f64,
    #[serde(rename = "p_sat_Pa")]
    pub p_sat: f64,
    #[serde(rename = "rho_V")]
    pub rho_v: f64,
    #[serde(rename = "rho_L")]
    pub rho_l: f64,
    #[serde(rename = "a_V")]
    pub a_v: f64,
    #[serde(rename = "a_L")]
    pub a_l: f64,
    #[serde(rename = "s_V")]
    pub s_v: f64,
    #[serde(rename = "s_L")]
    pub s_l: f64,
    #[serde(rename = "e_V")]
    pub e_v: f64,
    #[serde(rename = "e_L")]
    pub e_l: f64,
    #[serde(rename = "cp_L")]
    pub cp_l: f64,
}

impl SteamTableRow {
    fn columns(&self) -> [f64; 11] {
        [
            self.t, self.p_sat, self.rho_v, self.rho_l, self.a_v, self.a_l, self.s_v, self.s_l,
            self.e_v, self.e_l, self.cp_l,
        ]
    }

    fn from_columns(c: [f64; 11]) -> Self {
        Self {
            t: c[0],
            p_sat: c[1],
            rho_v: c[2],
            rho_l: c[3],
            a_v: c[4],
            a_l: c[5],
            s_v: c[6],
            s_l: c[7],
            e_v: c[8],
            e_l: c[9],
            cp_l: c[10],
        }
    }
}

/// Validated rows, strictly increasing in T.
#[derive(Clone, Debug, PartialEq)]
pub struct SteamTable {
    rows: Vec<SteamTableRow>,
}

impl SteamTable {
    /// Parses and validates CSV with exactly [`TABLE_CSV_HEADER`].
    pub fn load_csv<R: Read>(source: R) -> Result<Self> {
        let mut reader = csv::ReaderBuilder::new()
            .has_headers(true)
            .trim(csv::Trim::None)
            .from_reader(source);
        let header = reader.headers().map_err(|e| Error::Parse {
            line: 1,
            message: e.to_string(),
        })?;
        let header_line = header.iter().collect::<Vec<_>>().join(",");
        if header_line.is_empty() {
            return Err(Error::Parse {
                line: 1,
                message: "empty table".into(),
            });
        }
        if header_line != TABLE_CSV_HEADER {
            return Err(Error::Parse {
                line: 1,
                message: format!("expected header `{TABLE_CSV_HEADER}`, found `{header_line}`"),
            });
        }
        let mut rows: Vec<SteamTableRow> = Vec::new();
        for record in reader.deserialize::<SteamTableRow>() {
            let row = record.map_err(|e| Error::Parse {
                line: e.position().map_or(0, |p| p.line()),
                message: e.to_string(),
            })?;
            let line = rows.len() as u64 + 2;
            validate_row(&row, line)?;
            if let Some(prev) = rows.last() {
                if !(row.t > prev.t) {
                    return Err(Error::Monotonicity { line });
                }
            }
            rows.push(row);
        }
        if rows.len() < 2 {
            return Err(Error::Parse {
                line: rows.len() as u64 + 1,
                message: format!("need at least 2 rows, found {}", rows.len()),
            });
        }
        Ok(Self { rows })
    }

    pub fn from_path(path: impl AsRef<Path>) -> Result<Self> {
        Self::load_csv(std::fs::File::open(path)?)
    }

    /// The table shipped with the crate.
    pub fn bundled() -> Self {
        Self::load_csv(BUNDLED_TABLE_CSV.as_bytes()).expect("bundled table is valid")
    }

    pub fn rows(&self) -> &[SteamTableRow] {
        &self.rows
    }

    pub fn t_range(&self) -> (f64, f64) {
        (self.rows[0].t, self.rows[self.rows.len() - 1].t)
    }

    /// Row at `t`, linearly interpolated per column; exact at grid points.
    pub fn query(&self, t: f64) -> Result<SteamTableRow> {
        let (min, max) = self.t_range();
        if !(t >= min && t <= max) {
            return Err(Error::OutOfRange {
                what: "table temperature",
                value: t,
                min,
                max,
            });
        }
        let idx = self.rows.partition_point(|r| r.t < t);
        let hi = &self.rows[idx];
        if hi.t == t || idx == 0 {
            return Ok(*hi);
        }
        let lo = &self.rows[idx - 1];
        let w = (t - lo.t) / (hi.t - lo.t);
        let (a, b) = (lo.columns(), hi.columns());
        let mut c = [0.0; 11];
        for i in 0..11 {
            c[i] = a[i] + w * (b[i] - a[i]);
        }
        c[0] = t;
        Ok(SteamTableRow::from_columns(c))
    }
}

fn validate_row(row: &SteamTableRow, line: u64) -> Result<()> {
    if row.columns().iter().any(|v| !v.is_finite()) {
        return Err(Error::Parse {
            line,
            message: "non-finite value".into(),
        });
    }
    let positive = [
        ("T_K", row.t),
        ("p_sat_Pa", row.p_sat),
        ("rho_V", row.rho_v),
        ("rho_L", row.rho_l),
        ("a_V", row.a_v),
        ("a_L", row.a_l),
        ("cp_L", row.cp_l),
    ];
    for (name, v) in positive {
        if !(v > 0.0) {
            return Err(Error::UnitSanity {
                line,
                message: format!("{name} = {v} must be positive"),
            });
        }
    }
    if row.t < T_CRIT && !(row.rho_l > row.rho_v) {
        return Err(Error::UnitSanity {
            line,
            message: format!("rho_L = {} not above rho_V = {}", row.rho_l, row.rho_v),
        });
    }
    Ok(())
}

/// Vapor constants with `π_V = 0`.
///
/// Sound speed gives `γ = a²ρ/p`, then energy gives `q`, temperature gives
/// `C` and entropy gives `q'`.
pub fn fit_vapor_params(row: &SteamTableRow) -> Result<StiffenedGasParams> {
    let (p, rho, t) = (row.p_sat, row.rho_v, row.t);
    let gamma = row.a_v * row.a_v * rho / p;
    if !(gamma > 1.0) || !gamma.is_finite() {
        return Err(Error::Degenerate(format!(
            "vapor fit at T = {t} K gives gamma = {gamma}"
        )));
    }
    let q = row.e_v - p / (rho * (gamma - 1.0));
    let c = p / (rho * t * (gamma - 1.0));
    let q_prime = row.s_v - c * (gamma * t.ln() - (gamma - 1.0) * p.ln());
    Ok(StiffenedGasParams {
        gamma,
        pi: 0.0,
        c,
        q,
        q_prime,
    })
}

/// Liquid constants, all five free, using the isobaric heat capacity as the
/// fifth condition.
///
/// `e = c_p T − p/ρ + q` fixes `q`. Writing `ε = e − q = c_p T − p/ρ`,
/// the energy relation `ε ρ (γ−1) = p + γπ` and the sound-speed relation
/// `γ(p + π) = a²ρ` eliminate `π`:
///
/// ```text
/// p + γπ = a²ρ − (γ−1)p   ⇒   (γ−1)(ερ + p) = a²ρ   ⇒   γ − 1 = a² / (c_p T)
/// ```
///
/// since `ερ + p = ρ c_p T`. Then `π = a²ρ/γ − p`, the temperature relation
/// gives `C = c_p/γ`, and entropy gives `q'`. A non-positive `π` is
/// returned as is; [`LocalFit`] flags it.
pub fn fit_liquid_params(row: &SteamTableRow) -> Result<StiffenedGasParams> {
    let (p, rho, t, a, cp) = (row.p_sat, row.rho_l, row.t, row.a_l, row.cp_l);
    let q = row.e_l - cp * t + p / rho;
    let gamma = 1.0 + a * a / (cp * t);
    if !(gamma > 1.0) || !gamma.is_finite() {
        return Err(Error::Degenerate(format!(
            "liquid fit at T = {t} K gives gamma = {gamma}"
        )));
    }
    let pi = a * a * rho / gamma - p;
    if !(p + pi > 0.0) {
        return Err(Error::Degenerate(format!(
            "liquid fit at T = {t} K gives p + pi = {}",
            p + pi
        )));
    }
    let c = (p + pi) / (rho * t * (gamma - 1.0));
    let q_prime = row.s_l - c * (gamma * t.ln() - (gamma - 1.0) * (p + pi).ln());
    Ok(StiffenedGasParams {
        gamma,
        pi,
        c,
        q,
        q_prime,
    })
}

/// Stiffened-gas constants of both phases reproducing the table at one
/// saturation temperature.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct LocalFit {
    #[serde(rename = "T_anchor")]
    pub t_anchor: f64,
    pub p_anchor: f64,
    pub vapor: StiffenedGasParams,
    pub liquid: StiffenedGasParams,
    /// Set when the fitted `π_L ≤ 0`.
    pub liquid_pi_flagged: bool,
}

impl LocalFit {
    pub fn from_row(row: &SteamTableRow) -> Result<Self> {
        let vapor = fit_vapor_params(row).map_err(|e| e.at_temperature(row.t))?;
        let liquid = fit_liquid_params(row).map_err(|e| e.at_temperature(row.t))?;
        Ok(Self {
            t_anchor: row.t,
            p_anchor: row.p_sat,
            vapor,
            liquid,
            liquid_pi_flagged: liquid.pi <= 0.0,
        })
    }

    pub fn pair(&self) -> PhasePair {
        PhasePair::new(self.vapor, self.liquid)
    }
}

/// One fit per table row.
pub fn fit_rows(table: &SteamTable) -> Result<Vec<LocalFit>> {
    table
        .rows()
        .iter()
        .map(|row| LocalFit::from_row(row).map_err(|e| e.at_temperature(row.t)))
        .collect()
}

/// `n` fits at temperatures evenly spaced over `[t_min, t_max]`
/// (`n = 1` fits at `t_min` only).
pub fn fit_curve(table: &SteamTable, t_min: f64, t_max: f64, n: usize) -> Result<Vec<LocalFit>> {
    if n == 0 {
        return Err(Error::domain("fit curve needs n >= 1"));
    }
    if !(t_min <= t_max) || (n > 1 && t_min == t_max) {
        return Err(Error::domain(format!(
            "empty fit window [{t_min}, {t_max}]"
        )));
    }
    (0..n)
        .map(|i| {
            let t = match (n, i) {
                (1, _) => t_min,
                _ if i == n - 1 => t_max,
                _ => t_min + (t_max - t_min) * i as f64 / (n - 1) as f64,
            };
            LocalFit::from_row(&table.query(t)?)
        })
        .collect()
}

pub fn fit_curve_to_csv(fits: &[LocalFit]) -> String {
    let mut out = String::from(FIT_CSV_HEADER);
    out.push('\n');
    for fit in fits {
        for (phase, p) in [("vapor", &fit.vapor), ("liquid", &fit.liquid)] {
            let mut fields = vec![format::num(fit.t_anchor), phase.to_string()];
            fields.extend([p.gamma, p.pi, p.c, p.q, p.q_prime].map(format::num));
            out.push_str(&format::row(&fields));
            out.push('\n');
        }
    }
    out
}
