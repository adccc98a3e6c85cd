//! Reference computations kept apart from the library so that agreement
//! means something.

#![allow(dead_code)]

use phasewave::eos::StiffenedGasParams;
use phasewave::riemann::PrimitiveState;

/// Sod shock tube star state, frozen from [`riemann_star`] (and confirmed
/// with 40-digit arithmetic).
pub const SOD_P_STAR: f64 = 0.3031301780506468;
pub const SOD_U_STAR: f64 = 0.9274526200489499;

/// Change in velocity across one wave connecting a side at shifted pressure
/// `big_k` to shifted pressure `big_p`, written from the jump conditions and
/// the isentrope without sharing code with the library.
fn wave_velocity_change(gamma: f64, rho: f64, big_k: f64, big_p: f64) -> f64 {
    if big_p > big_k {
        let mass_flux_sq = rho * ((gamma + 1.0) * big_p + (gamma - 1.0) * big_k) / 2.0;
        (big_p - big_k) / mass_flux_sq.sqrt()
    } else {
        let a = (gamma * big_k / rho).sqrt();
        2.0 * a / (gamma - 1.0) * ((big_p / big_k).powf((gamma - 1.0) / (2.0 * gamma)) - 1.0)
    }
}

/// Star pressure and velocity by 300 bisection steps on a doubling bracket.
pub fn riemann_star(
    params: &StiffenedGasParams,
    left: PrimitiveState,
    right: PrimitiveState,
) -> (f64, f64) {
    let g = params.gamma;
    let (kl, kr) = (left.p + params.pi, right.p + params.pi);
    let du = right.u - left.u;
    let f = |big_p: f64| {
        wave_velocity_change(g, left.rho, kl, big_p)
            + wave_velocity_change(g, right.rho, kr, big_p)
            + du
    };
    let mut lo = kl.min(kr);
    while f(lo) > 0.0 {
        lo *= 0.5;
    }
    let mut hi = kl.max(kr);
    while f(hi) < 0.0 {
        hi *= 2.0;
    }
    for _ in 0..300 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if f(mid) > 0.0 {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    let big_p = 0.5 * (lo + hi);
    let u = 0.5 * (left.u + right.u)
        + 0.5
            * (wave_velocity_change(g, right.rho, kr, big_p)
                - wave_velocity_change(g, left.rho, kl, big_p));
    (big_p - params.pi, u)
}

/// Root of `g_V − g_L` in pressure by plain bisection after a geometric
/// scan from 1 Pa.
pub fn saturation_pressure(vapor: &StiffenedGasParams, liquid: &StiffenedGasParams, t: f64) -> f64 {
    let gibbs = |s: &StiffenedGasParams, p: f64| {
        let pp = p + s.pi;
        let entropy_part = s.gamma * t.ln() - (s.gamma - 1.0) * pp.ln();
        s.c * t * s.gamma + s.q - s.c * t * entropy_part - t * s.q_prime
    };
    let f = |p: f64| gibbs(vapor, p) - gibbs(liquid, p);
    let mut lo = 1.0;
    let mut hi = 2.0;
    while f(lo).signum() == f(hi).signum() {
        lo = hi;
        hi *= 2.0;
        assert!(hi < 1e10, "no saturation bracket at T = {t}");
    }
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if f(mid).signum() == f(lo).signum() {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}
