use phasewave::analysis::{
    classify_cavitation, covers_saturation_range, entropy_separation, strong_cavitation_margins,
    trace_compression, vapor_mass_fraction_bound, verify_condensation, verify_condensation_fitted,
    verify_condensation_fitted_rows, CavitationMargin, EntropySeparation, MassFractionBound,
    TheoremReport, THEOREM_CSV_HEADER,
};
use phasewave::riemann::{profile_to_csv, solve, PrimitiveState, RiemannInput, Wave};
use phasewave::saturation::SaturationSolver;
use phasewave::steamtable::{fit_curve, fit_curve_to_csv, fit_rows, LocalFit};
use phasewave::waves::{Anchor, WaveCurve};
use phasewave::{T_CRIT, T_TRIPLE};
use serde::Serialize;

use crate::config::{phase_pair, single_phase, Output, TableArg, Window};
use crate::{Failure, Kind, Mode};

fn json<T: Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("output serializes")
}

pub fn satcurve(params: &str, window: &Window, output: &Output) -> Result<(), Failure> {
    let pair = phase_pair(params)?;
    let (t_min, t_max, n) = window.resolve((T_TRIPLE, T_CRIT, 200), T_TRIPLE, T_CRIT)?;
    let curve = SaturationSolver::new(pair).curve(t_min, t_max, n)?;
    output.emit(|| curve.to_csv(), || curve.to_json())
}

pub fn wavecurve(
    params: &str,
    kind: Kind,
    (p_hat, t_hat): (f64, f64),
    p_end: f64,
    n: usize,
    output: &Output,
) -> Result<(), Failure> {
    let pair = phase_pair(params)?;
    let solver = SaturationSolver::new(pair);
    let anchor = Anchor { p: p_hat, t: t_hat };
    if n < 2 {
        return Err(Failure::usage("--n must be at least 2"));
    }
    match kind {
        Kind::Shock => {
            if !(p_end > p_hat) {
                return Err(Failure::usage("a shock curve needs --p-end above --p-hat"));
            }
            let (_, report) = trace_compression(&solver, anchor, p_end)?;
            let curve = WaveCurve::shock(pair.vapor, anchor, p_end, n)?;
            eprintln!(
                "vapor Hugoniot: {} intersection(s), min signed distance {} K",
                report.crossings, report.min_signed_distance
            );
            #[derive(Serialize)]
            struct Out<'a> {
                curve: &'a WaveCurve,
                intersection: &'a phasewave::waves::IntersectionReport,
            }
            output.emit(
                || curve.to_csv(),
                || {
                    json(&Out {
                        curve: &curve,
                        intersection: &report,
                    })
                },
            )
        }
        Kind::Rarefaction => {
            if !(p_end < p_hat) {
                return Err(Failure::usage(
                    "a rarefaction curve needs --p-end below --p-hat",
                ));
            }
            let report = classify_cavitation(&solver, anchor, p_end)?;
            let curve = WaveCurve::rarefaction(pair.liquid, anchor, p_end, n)?;
            eprintln!(
                "liquid isentrope: cavitation {:?}, max vapor mass fraction {}",
                report.kind, report.mu_max
            );
            #[derive(Serialize)]
            struct Out<'a> {
                curve: &'a WaveCurve,
                cavitation: &'a phasewave::analysis::CavitationReport,
            }
            output.emit(
                || curve.to_csv(),
                || {
                    json(&Out {
                        curve: &curve,
                        cavitation: &report,
                    })
                },
            )
        }
    }
}

#[derive(Serialize)]
struct FittedReport {
    condensation: TheoremReport,
    strong_cavitation: Vec<CavitationMargin>,
    /// Absent when the table does not span triple to critical point.
    entropy_separation: Option<EntropySeparation>,
    mass_fraction_bound: Option<MassFractionBound>,
}

#[derive(Serialize)]
struct VerifyReport {
    table1: Option<TheoremReport>,
    fitted: Option<FittedReport>,
    all_strict: bool,
    failures: Vec<String>,
}

fn with_mode(mode: &str, report: &TheoremReport) -> Vec<String> {
    report
        .to_csv()
        .lines()
        .skip(1)
        .map(|l| format!("{mode},{l}"))
        .collect()
}

pub fn verify(
    mode: Mode,
    params: &str,
    table: &TableArg,
    window: &Window,
    output: &Output,
) -> Result<(), Failure> {
    let mut failures = Vec::new();

    let table1 = match mode {
        Mode::Table1 | Mode::All => {
            let pair = phase_pair(params)?;
            let (t_min, t_max, n) = window.resolve((274.0, 645.0, 500), T_TRIPLE, T_CRIT)?;
            let r = verify_condensation(&pair, t_min, t_max, n)?;
            eprintln!(
                "fixed constants: {} points, all strict: {}, min margin {:e} K/Pa, sign conditions hold: {}",
                r.sweep.len(),
                r.all_strict,
                r.min_margin,
                r.sign_conditions_hold
            );
            if !r.all_strict {
                failures.push("fixed-constant margin not strictly positive".to_string());
            }
            if !r.sign_conditions_hold {
                failures.push("fixed-constant sign conditions violated".to_string());
            }
            Some(r)
        }
        Mode::Fitted => None,
    };

    let fitted = match mode {
        Mode::Fitted | Mode::All => {
            let table = table.load()?;
            let condensation = if window.is_default() {
                verify_condensation_fitted_rows(&table)?
            } else {
                let (lo, hi) = table.t_range();
                let (t_min, t_max, n) = window.resolve((lo, hi.min(645.0), 373), lo, hi)?;
                verify_condensation_fitted(&table, t_min, t_max, n)?
            };
            eprintln!(
                "fitted constants: {} anchors, all strict: {}, min margin {:e} K/Pa",
                condensation.sweep.len(),
                condensation.all_strict,
                condensation.min_margin
            );
            if !condensation.all_strict {
                failures.push("fitted margin not strictly positive".to_string());
            }
            let strong_cavitation = strong_cavitation_margins(&table)?;
            if strong_cavitation
                .iter()
                .any(|m| !m.excluded && !(m.margin > 0.0))
            {
                failures.push("strong-cavitation margin not positive".to_string());
            }
            let (separation, bound) = if covers_saturation_range(&table) {
                let sep = entropy_separation(&table)?;
                let bound = vapor_mass_fraction_bound(&table)?;
                eprintln!(
                    "entropy separation holds: {}; max vapor mass fraction {}",
                    sep.holds(),
                    bound.mu_max
                );
                if !sep.holds() {
                    failures.push("critical entropy does not separate the branches".to_string());
                }
                if !bound.within_ceiling() {
                    failures.push(format!(
                        "vapor mass fraction {} above ceiling",
                        bound.mu_max
                    ));
                }
                (Some(sep), Some(bound))
            } else {
                eprintln!("table does not span the saturation range; entropy checks skipped");
                (None, None)
            };
            Some(FittedReport {
                condensation,
                strong_cavitation,
                entropy_separation: separation,
                mass_fraction_bound: bound,
            })
        }
        Mode::Table1 => None,
    };

    let report = VerifyReport {
        all_strict: failures.is_empty(),
        failures,
        table1,
        fitted,
    };
    output.emit(
        || {
            let mut lines = vec![format!("mode,{THEOREM_CSV_HEADER}")];
            if let Some(r) = &report.table1 {
                lines.extend(with_mode("table1", r));
            }
            if let Some(f) = &report.fitted {
                lines.extend(with_mode("fitted", &f.condensation));
            }
            lines.join("\n")
        },
        || json(&report),
    )?;
    if report.all_strict {
        Ok(())
    } else {
        Err(Failure::strictness(report.failures.join("; ")))
    }
}

pub fn fit(table: &TableArg, window: &Window, output: &Output) -> Result<(), Failure> {
    let table = table.load()?;
    let fits: Vec<LocalFit> = if window.is_default() {
        fit_rows(&table)?
    } else {
        let (lo, hi) = table.t_range();
        let (t_min, t_max, n) = window.resolve((lo, hi, table.rows().len()), lo, hi)?;
        fit_curve(&table, t_min, t_max, n)?
    };
    for f in fits.iter().filter(|f| f.liquid_pi_flagged) {
        eprintln!(
            "warning: fitted liquid pi is not positive at T = {} K",
            f.t_anchor
        );
    }
    output.emit(|| fit_curve_to_csv(&fits), || json(&fits))
}

pub fn parse_state(s: &str) -> Result<[f64; 3], String> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    let [rho, u, p] = parts.as_slice() else {
        return Err(format!("expected rho,u,p but got '{s}'"));
    };
    let num = |x: &str| x.parse::<f64>().map_err(|e| format!("'{x}': {e}"));
    Ok([num(rho)?, num(u)?, num(p)?])
}

fn wave_span(w: &Wave) -> (f64, f64) {
    match *w {
        Wave::Shock { speed } => (speed, speed),
        Wave::Rarefaction { head, tail } => (head.min(tail), head.max(tail)),
    }
}

pub fn riemann(
    params: &str,
    left: [f64; 3],
    right: [f64; 3],
    n: usize,
    (xi_min, xi_max): (Option<f64>, Option<f64>),
    output: &Output,
) -> Result<(), Failure> {
    let params = single_phase(params)?;
    let state = |[rho, u, p]: [f64; 3]| PrimitiveState::new(rho, u, p);
    let input = RiemannInput::new(state(left), state(right), params);
    let solution = solve(&input)?;
    let rankine_hugoniot = solution.verify_rankine_hugoniot(&input)?;

    let (lo, _) = wave_span(&solution.left_wave);
    let (_, hi) = wave_span(&solution.right_wave);
    let margin = 0.25 * (hi - lo).max(f64::EPSILON * (lo.abs() + hi.abs()) + f64::MIN_POSITIVE);
    let xi_min = xi_min.unwrap_or(lo - margin);
    let xi_max = xi_max.unwrap_or(hi + margin);
    let profile = solution
        .profile(&input, xi_min, xi_max, n)
        .map_err(|e| Failure::usage(e.to_string()))?;

    eprintln!(
        "p* = {}, u* = {}, {} iterations, max jump residual {:e}",
        solution.p_star,
        solution.u_star,
        solution.iterations,
        rankine_hugoniot.max()
    );
    #[derive(Serialize)]
    struct Out<'a> {
        input: &'a RiemannInput,
        solution: &'a phasewave::riemann::RiemannSolution,
        rankine_hugoniot: &'a phasewave::riemann::RankineHugoniotReport,
        profile: &'a [phasewave::riemann::ProfileSample],
    }
    output.emit(
        || profile_to_csv(&profile),
        || {
            json(&Out {
                input: &input,
                solution: &solution,
                rankine_hugoniot: &rankine_hugoniot,
                profile: &profile,
            })
        },
    )
}
