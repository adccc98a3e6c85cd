//! Saturation line of a vapor/liquid stiffened-gas pair.
//!
//! Equilibrium means equal specific Gibbs energies, `f(p, T) = g_V − g_L = 0`.
//! On the physical window `∂f/∂p = 1/ρ_V − 1/ρ_L > 0` and
//! `∂f/∂T = s_L − s_V < 0`, so both `p_sat(T)` and `T_sat(p)` are found by
//! bracketing bisection with a short Newton polish.

use serde::{Deserialize, Serialize};

use crate::eos::{PhaseState, StiffenedGasParams};
use crate::roots::bisect;
use crate::{format, Error, Result, T_CRIT, T_TRIPLE};

/// Points closer than this to the critical temperature are flagged.
pub const NEAR_CRITICAL_BAND: f64 = 0.5;

/// Vapor and liquid constants.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct PhasePair {
    pub vapor: StiffenedGasParams,
    pub liquid: StiffenedGasParams,
}

impl PhasePair {
    pub fn new(vapor: StiffenedGasParams, liquid: StiffenedGasParams) -> Self {
        Self { vapor, liquid }
    }

    pub fn table1() -> Self {
        Self::new(
            StiffenedGasParams::TABLE1_VAPOR,
            StiffenedGasParams::TABLE1_LIQUID,
        )
    }

    /// `g_V(p, T) − g_L(p, T)`.
    pub fn gibbs_difference(&self, p: f64, t: f64) -> Result<f64> {
        Ok(self.vapor.gibbs(p, t)? - self.liquid.gibbs(p, t)?)
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let pair: Self = serde_json::from_str(s)?;
        pair.vapor.validate()?;
        pair.liquid.validate()?;
        Ok(pair)
    }
}

/// Closed-form slope `dT_sat/dp` from the implicit function theorem applied
/// to `g_V = g_L`; only meaningful at a saturation point `(p, T)`.
///
/// ```text
///            C_V(γ_V−1)/(p+π_V) − C_L(γ_L−1)/(p+π_L)
/// T'  =  T · ──────────────────────────────────────────
///            C_Vγ_V − C_Lγ_L + (q_V − q_L)/T
/// ```
pub fn saturation_slope(pair: &PhasePair, p: f64, t: f64) -> Result<f64> {
    let (v, l) = (&pair.vapor, &pair.liquid);
    if !(t > 0.0) {
        return Err(Error::domain(format!("temperature {t} must be positive")));
    }
    let pv = p + v.pi;
    let pl = p + l.pi;
    if !(pv > 0.0 && pl > 0.0) {
        return Err(Error::domain(format!(
            "p = {p} outside both phases' domain"
        )));
    }
    let numerator = v.c * (v.gamma - 1.0) / pv - l.c * (l.gamma - 1.0) / pl;
    let denominator = v.cp() - l.cp() + (v.q - l.q) / t;
    if denominator.abs() <= 1e-12 * (v.cp() + l.cp()) {
        return Err(Error::Degenerate(format!(
            "saturation slope denominator vanishes at T = {t} K"
        )));
    }
    Ok(t * numerator / denominator)
}

/// Equilibrium pair `(T, p_sat)` with both phase states.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SaturationPoint {
    #[serde(rename = "T")]
    pub t: f64,
    pub p_sat: f64,
    #[serde(rename = "slope_dT_dp")]
    pub slope_dt_dp: f64,
    pub vapor: PhaseState,
    pub liquid: PhaseState,
    pub near_critical: bool,
}

/// Saturation points ordered by strictly increasing T.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct SaturationCurve {
    pub points: Vec<SaturationPoint>,
}

pub const CURVE_CSV_HEADER: &str = "T_K,p_sat_Pa,dTsat_dp_K_per_Pa,rho_V,rho_L,s_V,s_L";

impl SaturationCurve {
    pub fn to_csv(&self) -> String {
        let mut out = String::from(CURVE_CSV_HEADER);
        out.push('\n');
        for pt in &self.points {
            let fields = [
                pt.t,
                pt.p_sat,
                pt.slope_dt_dp,
                pt.vapor.rho,
                pt.liquid.rho,
                pt.vapor.s,
                pt.liquid.s,
            ]
            .map(format::num);
            out.push_str(&format::row(&fields));
            out.push('\n');
        }
        out
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("curve serializes")
    }

    /// Pressure span covered by the sampled points.
    pub fn pressure_range(&self) -> Option<(f64, f64)> {
        Some((self.points.first()?.p_sat, self.points.last()?.p_sat))
    }

    /// `T_sat(p)` by interpolation linear in `ln p` between sampled points.
    pub fn interpolate_temperature(&self, p: f64) -> Result<f64> {
        let (lo, hi) = self
            .pressure_range()
            .ok_or_else(|| Error::Degenerate("empty saturation curve".into()))?;
        if !(p >= lo && p <= hi) {
            return Err(Error::OutOfRange {
                what: "pressure",
                value: p,
                min: lo,
                max: hi,
            });
        }
        let idx = self.points.partition_point(|pt| pt.p_sat < p);
        if idx == 0 {
            return Ok(self.points[0].t);
        }
        let (a, b) = (&self.points[idx - 1], &self.points[idx]);
        let w = (p.ln() - a.p_sat.ln()) / (b.p_sat.ln() - a.p_sat.ln());
        Ok(a.t + w * (b.t - a.t))
    }
}

/// Saturation-line solver for one [`PhasePair`].
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SaturationSolver {
    pub pair: PhasePair,
    /// Residual tolerance on `|g_V − g_L|` relative to `|g_V|`.
    pub tol_g: f64,
    pub max_iter: usize,
    /// Temperature window, K.
    pub t_min: f64,
    pub t_max: f64,
    /// Upper end of the pressure scan, Pa.
    pub p_scan_max: f64,
}

impl SaturationSolver {
    pub fn new(pair: PhasePair) -> Self {
        Self {
            pair,
            tol_g: 1e-6,
            max_iter: 400,
            t_min: T_TRIPLE,
            t_max: T_CRIT,
            p_scan_max: 1e9,
        }
    }

    pub fn with_window(mut self, t_min: f64, t_max: f64) -> Self {
        self.t_min = t_min;
        self.t_max = t_max;
        self
    }

    fn check_temperature(&self, t: f64) -> Result<()> {
        if !(t >= self.t_min && t <= self.t_max) {
            return Err(Error::OutOfRange {
                what: "temperature",
                value: t,
                min: self.t_min,
                max: self.t_max,
            });
        }
        Ok(())
    }

    fn check_residual(&self, p: f64, t: f64) -> Result<()> {
        let gv = self.pair.vapor.gibbs(p, t)?;
        let f = gv - self.pair.liquid.gibbs(p, t)?;
        if f.abs() > self.tol_g * gv.abs().max(1.0) {
            return Err(Error::NonConvergence {
                what: "saturation residual",
                iterations: self.max_iter,
            });
        }
        Ok(())
    }

    /// Saturation pressure at `t`.
    ///
    /// The bracket is found by doubling from 1 Pa up to `p_scan_max`; the
    /// first sign change of `g_V − g_L` is the root. Some parameter sets
    /// have a second, unphysical crossing at pressures of order `π_L`, which
    /// the scan never reaches.
    pub fn p_sat(&self, t: f64) -> Result<f64> {
        self.check_temperature(t)?;
        let f = |p: f64| self.pair.gibbs_difference(p, t);
        let mut lo = 1.0;
        if f(lo)? >= 0.0 {
            return Err(Error::BracketFailure {
                what: "g_V - g_L in p",
                lo,
                hi: lo,
            });
        }
        let mut hi = 2.0 * lo;
        while f(hi)? < 0.0 {
            lo = hi;
            hi *= 2.0;
            if hi > self.p_scan_max {
                return Err(Error::BracketFailure {
                    what: "g_V - g_L in p",
                    lo: 1.0,
                    hi: self.p_scan_max,
                });
            }
        }
        let mut p = bisect(f, lo, hi, 1e-12, self.max_iter, "p_sat bisection")?;
        // Newton polish with ∂f/∂p = 1/ρ_V − 1/ρ_L; kept only if it helps.
        for _ in 0..3 {
            let fp = f(p)?;
            let dfdp = 1.0 / self.pair.vapor.density_from_pt(p, t)?
                - 1.0 / self.pair.liquid.density_from_pt(p, t)?;
            let next = p - fp / dfdp;
            if !(next > lo && next < hi) || f(next)?.abs() >= fp.abs() {
                break;
            }
            p = next;
        }
        self.check_residual(p, t)?;
        Ok(p)
    }

    /// Saturation temperature at `p`, searched inside the solver's window.
    pub fn t_sat(&self, p: f64) -> Result<f64> {
        let f = |t: f64| self.pair.gibbs_difference(p, t);
        let (f_lo, f_hi) = (f(self.t_min)?, f(self.t_max)?);
        if f_lo.signum() == f_hi.signum() && f_lo != 0.0 && f_hi != 0.0 {
            let (min, max) = self.pressure_range().unwrap_or((f64::NAN, f64::NAN));
            return Err(Error::OutOfRange {
                what: "pressure",
                value: p,
                min,
                max,
            });
        }
        let mut t = bisect(
            f,
            self.t_min,
            self.t_max,
            1e-13,
            self.max_iter,
            "T_sat bisection",
        )?;
        // ∂f/∂T = s_L − s_V
        for _ in 0..3 {
            let ft = f(t)?;
            let dfdt = self.pair.liquid.entropy(p, t)? - self.pair.vapor.entropy(p, t)?;
            let next = t - ft / dfdt;
            if !(next >= self.t_min && next <= self.t_max) || f(next)?.abs() >= ft.abs() {
                break;
            }
            t = next;
        }
        self.check_residual(p, t)?;
        Ok(t)
    }

    /// `[p_sat(t_min), p_sat(t_max)]`.
    pub fn pressure_range(&self) -> Result<(f64, f64)> {
        Ok((self.p_sat(self.t_min)?, self.p_sat(self.t_max)?))
    }

    /// Saturation point at `t`, including both phase states and the slope.
    pub fn point(&self, t: f64) -> Result<SaturationPoint> {
        let p = self.p_sat(t)?;
        Ok(SaturationPoint {
            t,
            p_sat: p,
            slope_dt_dp: saturation_slope(&self.pair, p, t)?,
            vapor: self.pair.vapor.state_from_pt(p, t)?,
            liquid: self.pair.liquid.state_from_pt(p, t)?,
            near_critical: (T_CRIT - t).abs() < NEAR_CRITICAL_BAND,
        })
    }

    /// Closed-form `dT_sat/dp` at an already solved point.
    pub fn slope(&self, point: &SaturationPoint) -> Result<f64> {
        saturation_slope(&self.pair, point.p_sat, point.t)
    }

    /// `n` points evenly spaced in T over `[t_min, t_max]`.
    pub fn curve(&self, t_min: f64, t_max: f64, n: usize) -> Result<SaturationCurve> {
        if n < 2 {
            return Err(Error::domain(format!("need n >= 2 curve points, got {n}")));
        }
        if !(t_min < t_max) {
            return Err(Error::domain(format!("empty window [{t_min}, {t_max}]")));
        }
        self.check_temperature(t_min)?;
        self.check_temperature(t_max)?;
        let temps: Vec<f64> = (0..n)
            .map(|i| {
                if i == n - 1 {
                    t_max
                } else {
                    t_min + (t_max - t_min) * i as f64 / (n - 1) as f64
                }
            })
            .collect();
        let solve = |&t: &f64| self.point(t).map_err(|e| e.at_temperature(t));
        #[cfg(feature = "parallel")]
        let points: Result<Vec<_>> = {
            use rayon::prelude::*;
            temps.par_iter().map(solve).collect()
        };
        #[cfg(not(feature = "parallel"))]
        let points: Result<Vec<_>> = temps.iter().map(solve).collect();
        Ok(SaturationCurve { points: points? })
    }
}
