//! Browser demo: three operations returning JSON strings for the page in
//! `www/`. The plain functions are usable natively; the `#[wasm_bindgen]`
//! wrappers turn errors into JavaScript exceptions.

use phasewave::analysis::{
    trace_compression, vapor_mass_fraction_bound, verify_condensation_fitted_rows, MarginSample,
};
use phasewave::eos::StiffenedGasParams;
use phasewave::riemann::{solve, PrimitiveState, RiemannInput};
use phasewave::saturation::{PhasePair, SaturationSolver};
use phasewave::steamtable::SteamTable;
use phasewave::waves::{Anchor, IntersectionReport, PtCurve, WaveCurve};
use phasewave::{T_CRIT, T_TRIPLE};
use serde::Serialize;
use wasm_bindgen::prelude::*;

#[derive(Serialize)]
struct Point {
    p: f64,
    #[serde(rename = "T")]
    t: f64,
}

#[derive(Serialize)]
struct CompressionView {
    saturation: Vec<Point>,
    wave: Vec<Point>,
    intersection: IntersectionReport,
}

fn to_json<T: Serialize>(value: &T) -> String {
    serde_json::to_string(value).expect("demo output serializes")
}

/// Saturation line of the reference constants together with the vapor
/// Hugoniot from `(p_hat, t_hat)` up to `p_end`.
pub fn compression_curves(p_hat: f64, t_hat: f64, p_end: f64) -> Result<String, String> {
    let solver = SaturationSolver::new(PhasePair::table1());
    let anchor = Anchor { p: p_hat, t: t_hat };
    let (_, intersection) = trace_compression(&solver, anchor, p_end).map_err(|e| e.to_string())?;
    let wave =
        WaveCurve::shock(solver.pair.vapor, anchor, p_end, 200).map_err(|e| e.to_string())?;
    let saturation = solver
        .curve(T_TRIPLE, T_CRIT, 200)
        .map_err(|e| e.to_string())?;
    Ok(to_json(&CompressionView {
        saturation: saturation
            .points
            .iter()
            .map(|s| Point { p: s.p_sat, t: s.t })
            .collect(),
        wave: wave
            .samples
            .iter()
            .map(|s| Point { p: s.p, t: s.t })
            .collect(),
        intersection,
    }))
}

/// Exact Riemann solution for one of the presets, sampled at 401 points of
/// `x/t` over `[xi_min, xi_max]`.
pub fn riemann_profile(
    preset: &str,
    left: [f64; 3],
    right: [f64; 3],
    xi_min: f64,
    xi_max: f64,
) -> Result<String, String> {
    let params =
        StiffenedGasParams::preset(preset).ok_or_else(|| format!("unknown preset '{preset}'"))?;
    let state = |[rho, u, p]: [f64; 3]| PrimitiveState::new(rho, u, p);
    let input = RiemannInput::new(state(left), state(right), params);
    let solution = solve(&input).map_err(|e| e.to_string())?;
    let profile = solution
        .profile(&input, xi_min, xi_max, 401)
        .map_err(|e| e.to_string())?;
    #[derive(Serialize)]
    struct View<'a> {
        solution: &'a phasewave::riemann::RiemannSolution,
        profile: &'a [phasewave::riemann::ProfileSample],
    }
    Ok(to_json(&View {
        solution: &solution,
        profile: &profile,
    }))
}

/// Wave-curve and saturation slopes with constants fitted at every row of
/// the bundled steam table, plus the vapor mass fraction bound.
pub fn fitted_margins() -> Result<String, String> {
    let table = SteamTable::bundled();
    let report = verify_condensation_fitted_rows(&table).map_err(|e| e.to_string())?;
    let bound = vapor_mass_fraction_bound(&table).map_err(|e| e.to_string())?;
    #[derive(Serialize)]
    struct View<'a> {
        sweep: &'a [MarginSample],
        all_strict: bool,
        min_margin: f64,
        mu_max: f64,
    }
    Ok(to_json(&View {
        sweep: &report.sweep,
        all_strict: report.all_strict,
        min_margin: report.min_margin,
        mu_max: bound.mu_max,
    }))
}

/// Saturation pressure range of the reference constants, `[p_min, p_max]`.
pub fn saturation_pressure_range() -> Result<String, String> {
    let solver = SaturationSolver::new(PhasePair::table1());
    let range = PtCurve::pressure_range(&solver).map_err(|e| e.to_string())?;
    Ok(to_json(&range))
}

fn js(r: Result<String, String>) -> Result<String, JsValue> {
    r.map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen(js_name = compressionCurves)]
pub fn compression_curves_js(p_hat: f64, t_hat: f64, p_end: f64) -> Result<String, JsValue> {
    js(compression_curves(p_hat, t_hat, p_end))
}

#[wasm_bindgen(js_name = riemannProfile)]
#[allow(clippy::too_many_arguments)]
pub fn riemann_profile_js(
    preset: &str,
    rho_l: f64,
    u_l: f64,
    p_l: f64,
    rho_r: f64,
    u_r: f64,
    p_r: f64,
    xi_min: f64,
    xi_max: f64,
) -> Result<String, JsValue> {
    js(riemann_profile(
        preset,
        [rho_l, u_l, p_l],
        [rho_r, u_r, p_r],
        xi_min,
        xi_max,
    ))
}

#[wasm_bindgen(js_name = fittedMargins)]
pub fn fitted_margins_js() -> Result<String, JsValue> {
    js(fitted_margins())
}

#[wasm_bindgen(js_name = saturationPressureRange)]
pub fn saturation_pressure_range_js() -> Result<String, JsValue> {
    js(saturation_pressure_range())
}
