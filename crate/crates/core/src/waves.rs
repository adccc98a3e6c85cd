//! Shock (Hugoniot) and rarefaction (isentrope) wave curves in the `(p, T)`
//! and `(p, ρ)` planes, and their intersection with a saturation line.

use serde::{Deserialize, Serialize};

use crate::eos::StiffenedGasParams;
use crate::roots::bisect;
use crate::saturation::{SaturationCurve, SaturationSolver};
use crate::{format, Error, Result};

/// Number of geometric pressure samples used by [`intersect_saturation`].
pub const INTERSECTION_SAMPLES: usize = 2048;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum WaveKind {
    Shock,
    Rarefaction,
}

impl WaveKind {
    pub fn as_str(&self) -> &'static str {
        match self {
            WaveKind::Shock => "shock",
            WaveKind::Rarefaction => "rarefaction",
        }
    }
}

fn check_positive(what: &str, v: f64) -> Result<()> {
    if !(v > 0.0) || !v.is_finite() {
        return Err(Error::domain(format!("{what} = {v} must be positive")));
    }
    Ok(())
}

/// Density jump `ρ_*/ρ̂` across a shock from `p̂` to `p_*`, any branch.
///
/// Only the compressive branch `p_* ≥ p̂` is admissible; this variant also
/// evaluates expansive shocks for analysis plots.
pub fn hugoniot_density_ratio_any_branch(
    params: &StiffenedGasParams,
    p_hat: f64,
    p_star: f64,
) -> Result<f64> {
    let (g, pi) = (params.gamma, params.pi);
    check_positive("p_hat + pi", p_hat + pi)?;
    check_positive("p_star + pi", p_star + pi)?;
    if p_hat == 0.0 {
        return Err(Error::domain("p_hat must be nonzero"));
    }
    let ratio = p_star / p_hat;
    let beta = (g - 1.0) / (g + 1.0);
    let offset = 2.0 * g * pi / (p_hat * (g + 1.0));
    let num = ratio + beta + offset;
    let den = beta * ratio + 1.0 + offset;
    if !(num > 0.0 && den > 0.0) {
        return Err(Error::domain("nonpositive Hugoniot density ratio terms"));
    }
    Ok(num / den)
}

/// Density jump `ρ_*/ρ̂` across a compressive shock (`p_* ≥ p̂`).
pub fn hugoniot_density_ratio(params: &StiffenedGasParams, p_hat: f64, p_star: f64) -> Result<f64> {
    if p_star < p_hat {
        return Err(Error::domain(format!(
            "p_star = {p_star} below p_hat = {p_hat}: not a compressive shock"
        )));
    }
    hugoniot_density_ratio_any_branch(params, p_hat, p_star)
}

/// Post-shock temperature `T_*` on the Hugoniot through `(p̂, T̂)`.
///
/// ```text
/// T̂     p̂ + π     p_*(γ+1) + p̂(γ−1) + 2γπ
/// ── = ─────── · ─────────────────────────
/// T_*   p_* + π   p̂(γ+1) + p_*(γ−1) + 2γπ
/// ```
pub fn hugoniot_temperature(
    params: &StiffenedGasParams,
    p_hat: f64,
    t_hat: f64,
    p_star: f64,
) -> Result<f64> {
    check_positive("T_hat", t_hat)?;
    if p_star < p_hat {
        return Err(Error::domain(format!(
            "p_star = {p_star} below p_hat = {p_hat}: not a compressive shock"
        )));
    }
    let (g, pi) = (params.gamma, params.pi);
    let (ph, ps) = (p_hat + pi, p_star + pi);
    check_positive("p_hat + pi", ph)?;
    check_positive("p_star + pi", ps)?;
    let num = p_star * (g + 1.0) + p_hat * (g - 1.0) + 2.0 * g * pi;
    let den = p_hat * (g + 1.0) + p_star * (g - 1.0) + 2.0 * g * pi;
    let t_ratio = ph / ps * num / den;
    Ok(t_hat / t_ratio)
}

/// All initial vapor states `(p̂, T̂)` (π = 0) that a shock connects to the
/// post-shock state `(p_*, T_*)`; returns `T̂(p̂)`.
pub fn admissible_initial_curve(gamma_v: f64, p_star: f64, t_star: f64, p_hat: f64) -> Result<f64> {
    check_positive("p_hat", p_hat)?;
    check_positive("p_star", p_star)?;
    check_positive("T_star", t_star)?;
    if gamma_v <= 1.0 {
        return Err(Error::domain(format!("gamma_V = {gamma_v} must exceed 1")));
    }
    if p_hat > p_star {
        return Err(Error::domain(format!(
            "p_hat = {p_hat} exceeds p_star = {p_star}"
        )));
    }
    let g = gamma_v;
    Ok(
        t_star * (p_hat / p_star) * (p_star * (g + 1.0) + p_hat * (g - 1.0))
            / (p_hat * (g + 1.0) + p_star * (g - 1.0)),
    )
}

/// `dT̂/dp̂` of [`admissible_initial_curve`] at `p̂ = p_*`:
/// `(T_*/p_*)(γ_V − 1)/γ_V`.
pub fn admissible_initial_slope(gamma_v: f64, p_star: f64, t_star: f64) -> Result<f64> {
    check_positive("p_star", p_star)?;
    check_positive("T_star", t_star)?;
    if gamma_v <= 1.0 {
        return Err(Error::domain(format!("gamma_V = {gamma_v} must exceed 1")));
    }
    Ok(t_star / p_star * (gamma_v - 1.0) / gamma_v)
}

/// Isentrope through `(p_*, T_*)` for a π = 0 phase:
/// `T(p) = T_*(p/p_*)^((γ_V−1)/γ_V)`.
pub fn isentrope_temperature(gamma_v: f64, p_star: f64, t_star: f64, p: f64) -> Result<f64> {
    check_positive("p", p)?;
    check_positive("p_star", p_star)?;
    check_positive("T_star", t_star)?;
    if gamma_v <= 1.0 {
        return Err(Error::domain(format!("gamma_V = {gamma_v} must exceed 1")));
    }
    Ok(t_star * (p / p_star).powf((gamma_v - 1.0) / gamma_v))
}

/// Derivative of [`isentrope_temperature`] with respect to `p`.
pub fn isentrope_slope(gamma_v: f64, p_star: f64, t_star: f64, p: f64) -> Result<f64> {
    let k = (gamma_v - 1.0) / gamma_v;
    Ok(isentrope_temperature(gamma_v, p_star, t_star, p)? * k / p)
}

/// Isentrope through `(p̂, T̂)` for a general stiffened-gas phase:
/// `T(p) = T̂((p+π)/(p̂+π))^((γ−1)/γ)`.
pub fn isentrope_temperature_stiffened(
    params: &StiffenedGasParams,
    p_hat: f64,
    t_hat: f64,
    p: f64,
) -> Result<f64> {
    check_positive("T_hat", t_hat)?;
    let (ph, pp) = (p_hat + params.pi, p + params.pi);
    check_positive("p_hat + pi", ph)?;
    check_positive("p + pi", pp)?;
    let k = (params.gamma - 1.0) / params.gamma;
    Ok(t_hat * (pp / ph).powf(k))
}

/// A curve `T(p)` on a pressure interval.
pub trait PtCurve {
    /// Closed pressure interval on which [`temperature`](Self::temperature)
    /// is defined.
    fn pressure_range(&self) -> Result<(f64, f64)>;
    fn temperature(&self, p: f64) -> Result<f64>;
}

impl PtCurve for SaturationSolver {
    fn pressure_range(&self) -> Result<(f64, f64)> {
        SaturationSolver::pressure_range(self)
    }

    fn temperature(&self, p: f64) -> Result<f64> {
        self.t_sat(p)
    }
}

impl PtCurve for SaturationCurve {
    fn pressure_range(&self) -> Result<(f64, f64)> {
        SaturationCurve::pressure_range(self)
            .ok_or_else(|| Error::Degenerate("empty saturation curve".into()))
    }

    fn temperature(&self, p: f64) -> Result<f64> {
        self.interpolate_temperature(p)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Anchor {
    pub p: f64,
    #[serde(rename = "T")]
    pub t: f64,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct WaveSample {
    pub p: f64,
    #[serde(rename = "T")]
    pub t: f64,
    pub rho: f64,
}

/// Shock or rarefaction curve through an anchor state.
///
/// Temperatures are evaluated on demand from the anchor and the constants;
/// `samples` is only a fixed grid for export.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct WaveCurve {
    pub kind: WaveKind,
    pub anchor: Anchor,
    pub params: StiffenedGasParams,
    /// Far end of the curve: above the anchor for shocks, below for
    /// rarefactions.
    pub p_end: f64,
    pub samples: Vec<WaveSample>,
}

pub const WAVE_CSV_HEADER: &str = "p_Pa,T_K,rho_kg_m3,kind";

impl WaveCurve {
    /// Compression branch `p ∈ [p̂, p_end]`.
    pub fn shock(params: StiffenedGasParams, anchor: Anchor, p_end: f64, n: usize) -> Result<Self> {
        if !(p_end >= anchor.p) {
            return Err(Error::domain(format!(
                "shock curve needs p_end >= p_hat ({p_end} < {})",
                anchor.p
            )));
        }
        Self::build(WaveKind::Shock, params, anchor, p_end, n)
    }

    /// Expansion branch `p ∈ [p_end, p̂]`.
    pub fn rarefaction(
        params: StiffenedGasParams,
        anchor: Anchor,
        p_end: f64,
        n: usize,
    ) -> Result<Self> {
        if !(p_end <= anchor.p) {
            return Err(Error::domain(format!(
                "rarefaction curve needs p_end <= p_hat ({p_end} > {})",
                anchor.p
            )));
        }
        Self::build(WaveKind::Rarefaction, params, anchor, p_end, n)
    }

    fn build(
        kind: WaveKind,
        params: StiffenedGasParams,
        anchor: Anchor,
        p_end: f64,
        n: usize,
    ) -> Result<Self> {
        params.validate()?;
        check_positive("T_hat", anchor.t)?;
        check_positive("p_hat + pi", anchor.p + params.pi)?;
        check_positive("p_end + pi", p_end + params.pi)?;
        if n < 2 {
            return Err(Error::domain(format!("need n >= 2 samples, got {n}")));
        }
        let mut curve = Self {
            kind,
            anchor,
            params,
            p_end,
            samples: Vec::with_capacity(n),
        };
        // geometric in p + π, ordered by increasing pressure
        let (lo, hi) = curve.range();
        let (a, b) = ((lo + params.pi).ln(), (hi + params.pi).ln());
        for i in 0..n {
            let p = match i {
                0 => lo,
                _ if i == n - 1 => hi,
                _ => (a + (b - a) * i as f64 / (n - 1) as f64).exp() - params.pi,
            };
            let t = curve.temperature_at(p)?;
            curve.samples.push(WaveSample {
                p,
                t,
                rho: params.density_from_pt(p, t)?,
            });
        }
        Ok(curve)
    }

    fn range(&self) -> (f64, f64) {
        (self.anchor.p.min(self.p_end), self.anchor.p.max(self.p_end))
    }

    /// Temperature on the curve at any pressure of its branch.
    pub fn temperature_at(&self, p: f64) -> Result<f64> {
        let (lo, hi) = self.range();
        if !(p >= lo && p <= hi) {
            return Err(Error::OutOfRange {
                what: "wave-curve pressure",
                value: p,
                min: lo,
                max: hi,
            });
        }
        match self.kind {
            WaveKind::Shock => hugoniot_temperature(&self.params, self.anchor.p, self.anchor.t, p),
            WaveKind::Rarefaction => {
                isentrope_temperature_stiffened(&self.params, self.anchor.p, self.anchor.t, p)
            }
        }
    }

    pub fn density_at(&self, p: f64) -> Result<f64> {
        self.params.density_from_pt(p, self.temperature_at(p)?)
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from(WAVE_CSV_HEADER);
        out.push('\n');
        for s in &self.samples {
            let mut fields = [s.p, s.t, s.rho].map(format::num).to_vec();
            fields.push(self.kind.as_str().to_string());
            out.push_str(&format::row(&fields));
            out.push('\n');
        }
        out
    }
}

impl PtCurve for WaveCurve {
    fn pressure_range(&self) -> Result<(f64, f64)> {
        Ok(self.range())
    }

    fn temperature(&self, p: f64) -> Result<f64> {
        self.temperature_at(p)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct IntersectionPoint {
    pub p: f64,
    #[serde(rename = "T")]
    pub t: f64,
}

/// Outcome of [`intersect_saturation`].
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct IntersectionReport {
    pub found: bool,
    /// First crossing by increasing pressure.
    pub point: Option<IntersectionPoint>,
    /// Number of sign changes of `T_curve − T_sat` seen on the sample grid.
    pub crossings: usize,
    /// `min_p (T_curve(p) − T_sat(p))` over the sweep, K.
    pub min_signed_distance: f64,
    /// Pressure at which the minimum distance occurs.
    pub p_at_min_distance: f64,
    /// Slopes at the intersection, or at `p_at_min_distance` when none.
    pub slope_curve: f64,
    pub slope_sat: f64,
    pub p_range: (f64, f64),
}

impl IntersectionReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

/// `T_curve(p) − T_sat(p)`.
pub fn signed_distance(curve: &impl PtCurve, sat: &impl PtCurve, p: f64) -> Result<f64> {
    Ok(curve.temperature(p)? - sat.temperature(p)?)
}

fn central_slope(c: &impl PtCurve, p: f64, lo: f64, hi: f64) -> Result<f64> {
    let dp = 1e-6 * p;
    let a = (p - dp).max(lo);
    let b = (p + dp).min(hi);
    Ok((c.temperature(b)? - c.temperature(a)?) / (b - a))
}

/// Searches for points where `curve` meets `sat` on their common pressure
/// interval: dense geometric sampling, then bisection on the first sign
/// change. The minimum signed distance is always reported, so absence of an
/// intersection is a quantitative statement.
pub fn intersect_saturation(
    curve: &impl PtCurve,
    sat: &impl PtCurve,
) -> Result<IntersectionReport> {
    let (c_lo, c_hi) = curve.pressure_range()?;
    let (s_lo, s_hi) = sat.pressure_range()?;
    let lo = c_lo.max(s_lo);
    let hi = c_hi.min(s_hi);
    if !(lo < hi) || !(lo > 0.0) {
        return Err(Error::OutOfRange {
            what: "common pressure range",
            value: lo,
            min: s_lo,
            max: s_hi,
        });
    }
    let n = INTERSECTION_SAMPLES;
    let (a, b) = (lo.ln(), hi.ln());
    let grid: Vec<f64> = (0..n)
        .map(|i| match i {
            0 => lo,
            _ if i == n - 1 => hi,
            _ => (a + (b - a) * i as f64 / (n - 1) as f64).exp(),
        })
        .collect();
    let dist = |p: f64| signed_distance(curve, sat, p);
    let values = grid.iter().map(|&p| dist(p)).collect::<Result<Vec<_>>>()?;

    let (mut min_d, mut p_min) = (f64::INFINITY, lo);
    for (&p, &d) in grid.iter().zip(&values) {
        if d < min_d {
            min_d = d;
            p_min = p;
        }
    }

    let mut first: Option<IntersectionPoint> = None;
    let mut crossings = 0;
    for i in 0..n {
        let d = values[i];
        let hit = if d == 0.0 {
            Some(grid[i])
        } else if i + 1 < n && values[i + 1] != 0.0 && d.signum() != values[i + 1].signum() {
            Some(bisect(
                dist,
                grid[i],
                grid[i + 1],
                1e-15,
                200,
                "intersection bisection",
            )?)
        } else {
            None
        };
        if let Some(p) = hit {
            crossings += 1;
            if first.is_none() {
                first = Some(IntersectionPoint {
                    p,
                    t: curve.temperature(p)?,
                });
            }
        }
    }

    let p_slope = first.map_or(p_min, |pt| pt.p);
    Ok(IntersectionReport {
        found: first.is_some(),
        point: first,
        crossings,
        min_signed_distance: min_d,
        p_at_min_distance: p_min,
        slope_curve: central_slope(curve, p_slope, lo, hi)?,
        slope_sat: central_slope(sat, p_slope, lo, hi)?,
        p_range: (lo, hi),
    })
}
