//! Sweeps that check, point by point, why compression of pure vapor never
//! reaches the saturation line and why a rarefaction in liquid can produce
//! only wet steam.
//!
//! At a saturation point `(p_*, T_*)` the curve of vapor states that a shock
//! (or an isentrope) connects to it has slope `(T_*/p_*)(γ_V − 1)/γ_V` in
//! the `(p, T)` plane. For a crossing from the vapor side this slope would
//! have to be at most `dT_sat/dp`. The sweeps below evaluate the margin
//! `slope_wave − slope_sat` and report whether it stays strictly positive.

use serde::{Deserialize, Serialize};

use crate::saturation::{saturation_slope, PhasePair, SaturationSolver};
use crate::steamtable::{LocalFit, SteamTable};
use crate::waves::{
    admissible_initial_slope, intersect_saturation, isentrope_slope, Anchor, IntersectionPoint,
    IntersectionReport, PtCurve, WaveCurve,
};
use crate::{format, Error, Result, T_CRIT, T_TRIPLE};

/// Samples above this temperature are reported but excluded from the
/// strictness verdict.
pub const NEAR_CRITICAL_EXCLUSION: f64 = 645.0;

/// Margins must exceed this fraction of `|slope_sat|`.
pub const STRICTNESS_RTOL: f64 = 1e-15;

/// Number of stored samples on traced wave curves.
const TRACE_SAMPLES: usize = 256;

/// The two sign facts used to bound the saturation slope.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SignConditions {
    /// `−C_L(γ_L − 1)/(p_* + π_L)`, must be negative.
    pub liquid_term: f64,
    /// `−C_Lγ_L + (q_V − q_L)/T_*`, must be positive.
    pub energy_term: f64,
}

impl SignConditions {
    pub fn evaluate(pair: &PhasePair, p: f64, t: f64) -> Self {
        let l = &pair.liquid;
        Self {
            liquid_term: -l.c * (l.gamma - 1.0) / (p + l.pi),
            energy_term: -l.cp() + (pair.vapor.q - l.q) / t,
        }
    }

    pub fn hold(&self) -> bool {
        self.liquid_term < 0.0 && self.energy_term > 0.0
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct MarginSample {
    pub p_star: f64,
    #[serde(rename = "T_star")]
    pub t_star: f64,
    pub slope_wave: f64,
    pub slope_sat: f64,
    pub margin: f64,
    /// Excluded from `all_strict` (near-critical).
    pub excluded: bool,
    pub sign_conditions: Option<SignConditions>,
    /// Finite-difference `dT/dp` of the source table, when one was used.
    pub table_slope: Option<f64>,
}

impl MarginSample {
    pub fn is_strict(&self) -> bool {
        self.margin > STRICTNESS_RTOL * self.slope_sat.abs()
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TheoremReport {
    pub sweep: Vec<MarginSample>,
    /// Every non-excluded margin is strictly positive.
    pub all_strict: bool,
    /// Smallest margin over non-excluded samples, K/Pa.
    pub min_margin: f64,
    /// Every non-excluded sample that carries sign conditions satisfies them.
    pub sign_conditions_hold: bool,
}

pub const THEOREM_CSV_HEADER: &str = "T_K,p_Pa,slope_wave,slope_sat,margin,excluded";

impl TheoremReport {
    fn from_sweep(sweep: Vec<MarginSample>) -> Self {
        let included = || sweep.iter().filter(|s| !s.excluded);
        let all_strict = included().all(MarginSample::is_strict);
        let min_margin = included().map(|s| s.margin).fold(f64::INFINITY, f64::min);
        let sign_conditions_hold = included()
            .filter_map(|s| s.sign_conditions)
            .all(|c| c.hold());
        Self {
            sweep,
            all_strict,
            min_margin,
            sign_conditions_hold,
        }
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from(THEOREM_CSV_HEADER);
        out.push('\n');
        for s in &self.sweep {
            let mut fields = [s.t_star, s.p_star, s.slope_wave, s.slope_sat, s.margin]
                .map(format::num)
                .to_vec();
            fields.push(s.excluded.to_string());
            out.push_str(&format::row(&fields));
            out.push('\n');
        }
        out
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

fn temperatures(t_min: f64, t_max: f64, n: usize) -> Result<Vec<f64>> {
    if n == 0 || !(t_min <= t_max) || (n > 1 && t_min == t_max) {
        return Err(Error::domain(format!(
            "bad sweep window [{t_min}, {t_max}] with n = {n}"
        )));
    }
    Ok((0..n)
        .map(|i| match (n, i) {
            (1, _) => t_min,
            _ if i == n - 1 => t_max,
            _ => t_min + (t_max - t_min) * i as f64 / (n - 1) as f64,
        })
        .collect())
}

fn margin_sample(
    pair: &PhasePair,
    p: f64,
    t: f64,
    table_slope: Option<f64>,
) -> Result<MarginSample> {
    let slope_wave = admissible_initial_slope(pair.vapor.gamma, p, t)?;
    let slope_sat = saturation_slope(pair, p, t)?;
    Ok(MarginSample {
        p_star: p,
        t_star: t,
        slope_wave,
        slope_sat,
        margin: slope_wave - slope_sat,
        excluded: t > NEAR_CRITICAL_EXCLUSION,
        sign_conditions: Some(SignConditions::evaluate(pair, p, t)),
        table_slope,
    })
}

/// Margin sweep along the saturation line of a fixed stiffened-gas pair.
pub fn verify_condensation(
    pair: &PhasePair,
    t_min: f64,
    t_max: f64,
    n: usize,
) -> Result<TheoremReport> {
    let solver = SaturationSolver::new(*pair);
    let sweep = temperatures(t_min, t_max, n)?
        .into_iter()
        .map(|t| {
            let p = solver.p_sat(t).map_err(|e| e.at_temperature(t))?;
            margin_sample(pair, p, t, None).map_err(|e| e.at_temperature(t))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(TheoremReport::from_sweep(sweep))
}

/// [`verify_condensation`] with the reference vapor/liquid constants.
pub fn verify_condensation_table1(t_min: f64, t_max: f64, n: usize) -> Result<TheoremReport> {
    verify_condensation(&PhasePair::table1(), t_min, t_max, n)
}

/// `dT/dp` of the table's own saturation column by central difference over
/// `±1 K` (one-sided at the ends).
fn table_slope(table: &SteamTable, t: f64) -> Result<f64> {
    let (lo, hi) = table.t_range();
    let a = table.query((t - 1.0).max(lo))?;
    let b = table.query((t + 1.0).min(hi))?;
    Ok((b.t - a.t) / (b.p_sat - a.p_sat))
}

/// Margin sweep with constants re-fitted to the table at every anchor.
pub fn verify_condensation_fitted(
    table: &SteamTable,
    t_min: f64,
    t_max: f64,
    n: usize,
) -> Result<TheoremReport> {
    let sweep = temperatures(t_min, t_max, n)?
        .into_iter()
        .map(|t| {
            let row = table.query(t)?;
            let fit = LocalFit::from_row(&row)?;
            let mut s = margin_sample(&fit.pair(), row.p_sat, t, Some(table_slope(table, t)?))?;
            // the sign conditions belong to the fixed-constant argument
            s.sign_conditions = None;
            Ok(s)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(TheoremReport::from_sweep(sweep))
}

/// [`verify_condensation_fitted`] at exactly the table's own rows.
pub fn verify_condensation_fitted_rows(table: &SteamTable) -> Result<TheoremReport> {
    let sweep = table
        .rows()
        .iter()
        .map(|row| {
            let fit = LocalFit::from_row(row)?;
            let mut s = margin_sample(
                &fit.pair(),
                row.p_sat,
                row.t,
                Some(table_slope(table, row.t)?),
            )?;
            s.sign_conditions = None;
            Ok(s)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(TheoremReport::from_sweep(sweep))
}

/// Slope of the vapor isentrope through a saturation point minus the
/// saturation slope there, using locally fitted constants. A pure-vapor
/// end state of a liquid rarefaction would need this to be `≤ 0`.
pub fn strong_cavitation_contradiction(fit: &LocalFit, p_star: f64, t_star: f64) -> Result<f64> {
    let slope_wave = isentrope_slope(fit.vapor.gamma, p_star, t_star, p_star)?;
    Ok(slope_wave - saturation_slope(&fit.pair(), p_star, t_star)?)
}

/// Hugoniot of the vapor from `anchor` up to `p_max`, checked against the
/// solver's saturation line.
pub fn trace_compression(
    solver: &SaturationSolver,
    anchor: Anchor,
    p_max: f64,
) -> Result<(WaveCurve, IntersectionReport)> {
    let t_sat = solver.t_sat(anchor.p)?;
    if anchor.t < t_sat * (1.0 - 1e-12) {
        return Err(Error::Region(format!(
            "anchor ({} Pa, {} K) lies below T_sat = {t_sat} K, not in the vapor region",
            anchor.p, anchor.t
        )));
    }
    let curve = WaveCurve::shock(solver.pair.vapor, anchor, p_max, TRACE_SAMPLES)?;
    let report = intersect_saturation(&curve, solver)?;
    Ok((curve, report))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CavitationKind {
    /// The rarefaction stays in the liquid.
    None,
    /// The rarefaction reaches the saturation line: wet steam.
    Weak,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CavitationReport {
    pub initial: Anchor,
    pub p_min: f64,
    pub kind: CavitationKind,
    pub saturation_hit: Option<IntersectionPoint>,
    /// Largest vapor mass fraction reachable isentropically down to `p_min`.
    pub mu_max: f64,
    /// `min (T_curve − T_sat)` over the common pressure range; absent when
    /// the whole expansion stays above the highest saturation pressure.
    pub min_signed_distance: Option<f64>,
}

pub const CAVITATION_CSV_HEADER: &str = "p_hat_Pa,T_hat_K,p_min_Pa,kind,p_hit_Pa,T_hit_K,mu_max";

impl CavitationReport {
    pub fn to_csv(&self) -> String {
        let kind = match self.kind {
            CavitationKind::None => "none",
            CavitationKind::Weak => "weak",
        };
        let (ph, th) = self
            .saturation_hit
            .map_or((String::new(), String::new()), |h| {
                (format::num(h.p), format::num(h.t))
            });
        let fields = vec![
            format::num(self.initial.p),
            format::num(self.initial.t),
            format::num(self.p_min),
            kind.to_string(),
            ph,
            th,
            format::num(self.mu_max),
        ];
        format!("{CAVITATION_CSV_HEADER}\n{}\n", format::row(&fields))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

/// Follows the liquid isentrope from `anchor` down to `p_min`.
///
/// There is no strong kind: a rarefaction conserves entropy, and every
/// pure-vapor state has more entropy than every liquid state.
pub fn classify_cavitation(
    solver: &SaturationSolver,
    anchor: Anchor,
    p_min: f64,
) -> Result<CavitationReport> {
    let p_sat = solver.p_sat(anchor.t)?;
    if !(anchor.p > p_sat) {
        return Err(Error::Region(format!(
            "anchor ({} Pa, {} K) is not above p_sat = {p_sat} Pa, not in the liquid region",
            anchor.p, anchor.t
        )));
    }
    if !(p_min < anchor.p) {
        return Err(Error::domain(format!(
            "p_min = {p_min} must lie below the anchor pressure {}",
            anchor.p
        )));
    }
    let liquid = solver.pair.liquid;
    let (p_lo, p_hi) = PtCurve::pressure_range(solver)?;
    if p_min >= p_hi {
        return Ok(CavitationReport {
            initial: anchor,
            p_min,
            kind: CavitationKind::None,
            saturation_hit: None,
            mu_max: 0.0,
            min_signed_distance: None,
        });
    }
    let curve = WaveCurve::rarefaction(liquid, anchor, p_min, TRACE_SAMPLES)?;
    let report = intersect_saturation(&curve, solver)?;

    let (kind, mu_max) = match report.point {
        None => (CavitationKind::None, 0.0),
        Some(hit) => {
            let s0 = liquid.entropy(anchor.p, anchor.t)?;
            let t_low = solver.t_sat(p_min.max(p_lo))?;
            let mut mu_max: f64 = 0.0;
            for t in temperatures(t_low, hit.t.max(t_low), 257)? {
                let p = solver.p_sat(t)?;
                let s_l = solver.pair.liquid.entropy(p, t)?;
                let s_v = solver.pair.vapor.entropy(p, t)?;
                let mu = (s0 - s_l) / (s_v - s_l);
                mu_max = mu_max.max(mu.clamp(0.0, 1.0));
            }
            (CavitationKind::Weak, mu_max)
        }
    };
    Ok(CavitationReport {
        initial: anchor,
        p_min,
        kind,
        saturation_hit: report.point,
        mu_max,
        min_signed_distance: Some(report.min_signed_distance),
    })
}

/// Per-row margin of [`strong_cavitation_contradiction`].
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct CavitationMargin {
    #[serde(rename = "T")]
    pub t: f64,
    pub p: f64,
    pub margin: f64,
    pub excluded: bool,
}

/// [`strong_cavitation_contradiction`] at every table row.
pub fn strong_cavitation_margins(table: &SteamTable) -> Result<Vec<CavitationMargin>> {
    table
        .rows()
        .iter()
        .map(|row| {
            let fit = LocalFit::from_row(row).map_err(|e| e.at_temperature(row.t))?;
            Ok(CavitationMargin {
                t: row.t,
                p: row.p_sat,
                margin: strong_cavitation_contradiction(&fit, row.p_sat, row.t)
                    .map_err(|e| e.at_temperature(row.t))?,
                excluded: row.t > NEAR_CRITICAL_EXCLUSION,
            })
        })
        .collect()
}

/// Vapor mass fraction `μ` of wet steam at saturation temperature `t` whose
/// entropy equals that of saturated liquid at `t0`, from
/// `s = μ s_V + (1 − μ) s_L`. Not clamped.
pub fn vapor_mass_fraction(table: &SteamTable, t0: f64, t: f64) -> Result<f64> {
    let start = table.query(t0)?;
    let end = table.query(t)?;
    Ok((start.s_l - end.s_l) / (end.s_v - end.s_l))
}

/// Expected supremum of the vapor mass fraction.
pub const MASS_FRACTION_CEILING: f64 = 0.5;
/// Allowance for the granularity of a 1 K table.
pub const MASS_FRACTION_TOLERANCE: f64 = 0.005;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct MassFractionBound {
    pub mu_max: f64,
    /// Saturated-liquid start temperature attaining the bound.
    #[serde(rename = "T_start")]
    pub t_start: f64,
    /// Wet-steam end temperature attaining the bound.
    #[serde(rename = "T_end")]
    pub t_end: f64,
}

impl MassFractionBound {
    pub fn within_ceiling(&self) -> bool {
        self.mu_max <= MASS_FRACTION_CEILING + MASS_FRACTION_TOLERANCE
    }
}

/// True if the table spans the triple point to the critical point to
/// within 1 K.
pub fn covers_saturation_range(table: &SteamTable) -> bool {
    check_coverage(table).is_ok()
}

fn check_coverage(table: &SteamTable) -> Result<()> {
    let (lo, hi) = table.t_range();
    if lo > T_TRIPLE + 1.0 || hi < T_CRIT - 1.0 {
        return Err(Error::OutOfRange {
            what: "table coverage",
            value: if lo > T_TRIPLE + 1.0 { lo } else { hi },
            min: T_TRIPLE,
            max: T_CRIT,
        });
    }
    Ok(())
}

/// Supremum of the vapor mass fraction over all pairs of table rows
/// (saturated-liquid start, wet-steam end) with `μ ∈ [0, 1]`.
pub fn vapor_mass_fraction_bound(table: &SteamTable) -> Result<MassFractionBound> {
    check_coverage(table)?;
    let rows = table.rows();
    let mut best = MassFractionBound {
        mu_max: 0.0,
        t_start: rows[0].t,
        t_end: rows[0].t,
    };
    for start in rows {
        for end in rows {
            let gap = end.s_v - end.s_l;
            if !(gap > 0.0) {
                continue;
            }
            let mu = (start.s_l - end.s_l) / gap;
            if (0.0..=1.0).contains(&mu) && mu > best.mu_max {
                best = MassFractionBound {
                    mu_max: mu,
                    t_start: start.t,
                    t_end: end.t,
                };
            }
        }
    }
    Ok(best)
}

/// Critical-point entropy against the liquid and vapor branches.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct EntropySeparation {
    pub s_crit: f64,
    pub max_s_liquid: f64,
    pub min_s_vapor: f64,
}

impl EntropySeparation {
    /// `s_L < s_crit < s_V` on every row.
    pub fn holds(&self) -> bool {
        self.max_s_liquid < self.s_crit && self.s_crit < self.min_s_vapor
    }
}

/// `s_crit` is the mean of `s_L` and `s_V` on the last row, which must lie
/// within 0.5 K of the critical temperature; the extrema exclude that row.
pub fn entropy_separation(table: &SteamTable) -> Result<EntropySeparation> {
    check_coverage(table)?;
    let rows = table.rows();
    let last = rows[rows.len() - 1];
    if (T_CRIT - last.t).abs() > 0.5 {
        return Err(Error::OutOfRange {
            what: "last table temperature",
            value: last.t,
            min: T_CRIT - 0.5,
            max: T_CRIT + 0.5,
        });
    }
    let s_crit = 0.5 * (last.s_l + last.s_v);
    let body = &rows[..rows.len() - 1];
    Ok(EntropySeparation {
        s_crit,
        max_s_liquid: body.iter().map(|r| r.s_l).fold(f64::NEG_INFINITY, f64::max),
        min_s_vapor: body.iter().map(|r| r.s_v).fold(f64::INFINITY, f64::min),
    })
}
