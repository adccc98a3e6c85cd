//! Exact Riemann solver for the 1-D Euler equations closed by one
//! stiffened-gas equation of state on both sides.
//!
//! The stiffened gas behaves like an ideal gas in the shifted pressure
//! `P = p + π`, so the classical two-wave construction carries over with
//! `p` replaced by `P` in every wave relation. The star pressure solves
//! `f_L(P) + f_R(P) + (u_R − u_L) = 0` with safeguarded Newton iteration.

use serde::{Deserialize, Serialize};

use crate::eos::StiffenedGasParams;
use crate::{format, Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct PrimitiveState {
    pub rho: f64,
    pub u: f64,
    pub p: f64,
}

impl PrimitiveState {
    pub fn new(rho: f64, u: f64, p: f64) -> Self {
        Self { rho, u, p }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct RiemannInput {
    pub left: PrimitiveState,
    pub right: PrimitiveState,
    pub params: StiffenedGasParams,
}

impl RiemannInput {
    pub fn new(left: PrimitiveState, right: PrimitiveState, params: StiffenedGasParams) -> Self {
        Self {
            left,
            right,
            params,
        }
    }

    /// Swaps sides and flips velocities (reflection `x → −x`).
    pub fn mirrored(&self) -> Self {
        let flip = |s: PrimitiveState| PrimitiveState::new(s.rho, -s.u, s.p);
        Self::new(flip(self.right), flip(self.left), self.params)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Wave {
    Shock {
        speed: f64,
    },
    /// Fan bounded by the `head` (facing the unperturbed state) and `tail`
    /// characteristic speeds.
    Rarefaction {
        head: f64,
        tail: f64,
    },
}

impl Wave {
    pub fn is_shock(&self) -> bool {
        matches!(self, Wave::Shock { .. })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct RiemannSolution {
    pub p_star: f64,
    pub u_star: f64,
    pub rho_star_left: f64,
    pub rho_star_right: f64,
    pub left_wave: Wave,
    pub right_wave: Wave,
    pub contact_speed: f64,
    pub iterations: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ProfileSample {
    pub xi: f64,
    pub rho: f64,
    pub u: f64,
    pub p: f64,
    #[serde(rename = "T")]
    pub t: f64,
}

pub const PROFILE_CSV_HEADER: &str = "xi,rho,u,p,T";

/// Relative jump residuals of mass, momentum and energy across one shock.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ShockResiduals {
    pub speed: f64,
    pub mass: f64,
    pub momentum: f64,
    pub energy: f64,
    /// `s_post − s_pre`, J/(kg·K).
    pub entropy_jump: f64,
}

impl ShockResiduals {
    pub fn max(&self) -> f64 {
        self.mass.max(self.momentum).max(self.energy)
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct RankineHugoniotReport {
    pub left: Option<ShockResiduals>,
    pub right: Option<ShockResiduals>,
}

impl RankineHugoniotReport {
    /// Largest residual over all shocks; zero when there are none.
    pub fn max(&self) -> f64 {
        [self.left, self.right]
            .iter()
            .flatten()
            .map(ShockResiduals::max)
            .fold(0.0, f64::max)
    }
}

/// One side's constants in shifted-pressure form.
#[derive(Clone, Copy)]
struct Side {
    rho: f64,
    u: f64,
    big_p: f64,
    a: f64,
}

impl Side {
    fn new(s: &PrimitiveState, params: &StiffenedGasParams) -> Result<Self> {
        Ok(Self {
            rho: s.rho,
            u: s.u,
            big_p: s.p + params.pi,
            a: params.sound_speed(s.p, s.rho)?,
        })
    }

    /// Velocity change function and its derivative at shifted pressure `pp`.
    fn pressure_function(&self, pp: f64, gamma: f64) -> (f64, f64) {
        if pp > self.big_p {
            let a_coef = 2.0 / ((gamma + 1.0) * self.rho);
            let b_coef = (gamma - 1.0) / (gamma + 1.0) * self.big_p;
            let root = (a_coef / (pp + b_coef)).sqrt();
            let f = (pp - self.big_p) * root;
            let df = root * (1.0 - 0.5 * (pp - self.big_p) / (b_coef + pp));
            (f, df)
        } else {
            let z = (gamma - 1.0) / (2.0 * gamma);
            let ratio = pp / self.big_p;
            let f = 2.0 * self.a / (gamma - 1.0) * (ratio.powf(z) - 1.0);
            let df = ratio.powf(-(gamma + 1.0) / (2.0 * gamma)) / (self.rho * self.a);
            (f, df)
        }
    }

    fn star_density(&self, pp: f64, gamma: f64) -> f64 {
        let ratio = pp / self.big_p;
        if pp > self.big_p {
            let beta = (gamma - 1.0) / (gamma + 1.0);
            self.rho * (ratio + beta) / (beta * ratio + 1.0)
        } else {
            self.rho * ratio.powf(1.0 / gamma)
        }
    }

    fn shock_speed_factor(&self, pp: f64, gamma: f64) -> f64 {
        self.a
            * ((gamma + 1.0) / (2.0 * gamma) * pp / self.big_p + (gamma - 1.0) / (2.0 * gamma))
                .sqrt()
    }
}

const MAX_ITER: usize = 200;

/// Solves the Riemann problem.
///
/// Errors with [`Error::Vacuum`] if the initial data would open a cavity
/// (`2(a_L + a_R)/(γ − 1) ≤ u_R − u_L`), and with
/// [`Error::NonConvergence`] if the pressure iteration stalls.
pub fn solve(input: &RiemannInput) -> Result<RiemannSolution> {
    let params = &input.params;
    params.validate()?;
    let g = params.gamma;
    let left = Side::new(&input.left, params)?;
    let right = Side::new(&input.right, params)?;
    let du = right.u - left.u;

    let critical = 2.0 * (left.a + right.a) / (g - 1.0);
    if critical <= du {
        return Err(Error::Vacuum(format!(
            "u_R - u_L = {du} reaches the critical value {critical}"
        )));
    }

    let residual = |pp: f64| {
        let (fl, dfl) = left.pressure_function(pp, g);
        let (fr, dfr) = right.pressure_function(pp, g);
        (fl + fr + du, dfl + dfr)
    };

    // two-rarefaction estimate: exact when both waves are rarefactions
    let z = (g - 1.0) / (2.0 * g);
    let guess = ((left.a + right.a - 0.5 * (g - 1.0) * du)
        / (left.a / left.big_p.powf(z) + right.a / right.big_p.powf(z)))
    .powf(1.0 / z);

    let mut lo = 0.0;
    let mut hi = guess.max(left.big_p).max(right.big_p);
    while residual(hi).0 < 0.0 {
        lo = hi;
        hi *= 2.0;
        if !hi.is_finite() {
            return Err(Error::NonConvergence {
                what: "star-pressure bracket",
                iterations: MAX_ITER,
            });
        }
    }

    let mut pp = if guess > lo && guess < hi {
        guess
    } else {
        0.5 * (lo + hi)
    };
    let mut iterations = 0;
    loop {
        iterations += 1;
        let (f, df) = residual(pp);
        if f == 0.0 {
            break;
        }
        if f < 0.0 {
            lo = pp;
        } else {
            hi = pp;
        }
        let mut next = pp - f / df;
        if !(next > lo && next < hi) {
            next = 0.5 * (lo + hi);
        }
        let change = (next - pp).abs() / (0.5 * (next + pp));
        pp = next;
        if change < 1e-15 || hi - lo <= 1e-15 * hi {
            break;
        }
        if iterations >= MAX_ITER {
            return Err(Error::NonConvergence {
                what: "star pressure",
                iterations,
            });
        }
    }
    let scale = du.abs() + left.a + right.a;
    if residual(pp).0.abs() > 1e-10 * scale {
        return Err(Error::NonConvergence {
            what: "star pressure",
            iterations,
        });
    }

    let (fl, _) = left.pressure_function(pp, g);
    let (fr, _) = right.pressure_function(pp, g);
    let u_star = 0.5 * (left.u + right.u) + 0.5 * (fr - fl);

    let left_wave = if pp > left.big_p {
        Wave::Shock {
            speed: left.u - left.shock_speed_factor(pp, g),
        }
    } else {
        let a_star = left.a * (pp / left.big_p).powf(z);
        Wave::Rarefaction {
            head: left.u - left.a,
            tail: u_star - a_star,
        }
    };
    let right_wave = if pp > right.big_p {
        Wave::Shock {
            speed: right.u + right.shock_speed_factor(pp, g),
        }
    } else {
        let a_star = right.a * (pp / right.big_p).powf(z);
        Wave::Rarefaction {
            head: right.u + right.a,
            tail: u_star + a_star,
        }
    };

    Ok(RiemannSolution {
        p_star: pp - params.pi,
        u_star,
        rho_star_left: left.star_density(pp, g),
        rho_star_right: right.star_density(pp, g),
        left_wave,
        right_wave,
        contact_speed: u_star,
        iterations,
    })
}

impl RiemannSolution {
    fn star_left(&self) -> PrimitiveState {
        PrimitiveState::new(self.rho_star_left, self.u_star, self.p_star)
    }

    fn star_right(&self) -> PrimitiveState {
        PrimitiveState::new(self.rho_star_right, self.u_star, self.p_star)
    }

    /// State at `ξ = x/t`.
    pub fn sample(&self, input: &RiemannInput, xi: f64) -> PrimitiveState {
        let params = &input.params;
        let g = params.gamma;
        let pi = params.pi;
        if xi <= self.contact_speed {
            let w = input.left;
            match self.left_wave {
                Wave::Shock { speed } => {
                    if xi < speed {
                        w
                    } else {
                        self.star_left()
                    }
                }
                Wave::Rarefaction { head, tail } => {
                    if xi <= head {
                        w
                    } else if xi >= tail {
                        self.star_left()
                    } else {
                        let a = (g * (w.p + pi) / w.rho).sqrt();
                        let c = 2.0 / (g + 1.0) + (g - 1.0) / ((g + 1.0) * a) * (w.u - xi);
                        PrimitiveState {
                            rho: w.rho * c.powf(2.0 / (g - 1.0)),
                            u: 2.0 / (g + 1.0) * (a + 0.5 * (g - 1.0) * w.u + xi),
                            p: (w.p + pi) * c.powf(2.0 * g / (g - 1.0)) - pi,
                        }
                    }
                }
            }
        } else {
            let w = input.right;
            match self.right_wave {
                Wave::Shock { speed } => {
                    if xi > speed {
                        w
                    } else {
                        self.star_right()
                    }
                }
                Wave::Rarefaction { head, tail } => {
                    if xi >= head {
                        w
                    } else if xi <= tail {
                        self.star_right()
                    } else {
                        let a = (g * (w.p + pi) / w.rho).sqrt();
                        let c = 2.0 / (g + 1.0) - (g - 1.0) / ((g + 1.0) * a) * (w.u - xi);
                        PrimitiveState {
                            rho: w.rho * c.powf(2.0 / (g - 1.0)),
                            u: 2.0 / (g + 1.0) * (-a + 0.5 * (g - 1.0) * w.u + xi),
                            p: (w.p + pi) * c.powf(2.0 * g / (g - 1.0)) - pi,
                        }
                    }
                }
            }
        }
    }

    /// `n ≥ 2` evenly spaced samples of `ξ` over `[xi_min, xi_max]`,
    /// including temperature.
    pub fn profile(
        &self,
        input: &RiemannInput,
        xi_min: f64,
        xi_max: f64,
        n: usize,
    ) -> Result<Vec<ProfileSample>> {
        if n < 2 || !(xi_min < xi_max) {
            return Err(Error::domain("profile needs n >= 2 and xi_min < xi_max"));
        }
        (0..n)
            .map(|i| {
                let xi = xi_min + (xi_max - xi_min) * i as f64 / (n - 1) as f64;
                let w = self.sample(input, xi);
                Ok(ProfileSample {
                    xi,
                    rho: w.rho,
                    u: w.u,
                    p: w.p,
                    t: input.params.temperature(w.p, w.rho)?,
                })
            })
            .collect()
    }

    /// Mass, momentum and energy jump residuals at each shock.
    pub fn verify_rankine_hugoniot(&self, input: &RiemannInput) -> Result<RankineHugoniotReport> {
        let params = &input.params;
        let mut report = RankineHugoniotReport::default();
        if let Wave::Shock { speed } = self.left_wave {
            report.left = Some(jump_residuals(
                params,
                &input.left,
                &self.star_left(),
                speed,
            )?);
        }
        if let Wave::Shock { speed } = self.right_wave {
            report.right = Some(jump_residuals(
                params,
                &input.right,
                &self.star_right(),
                speed,
            )?);
        }
        Ok(report)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("solution serializes")
    }
}

fn conserved_and_flux(
    params: &StiffenedGasParams,
    w: &PrimitiveState,
) -> Result<([f64; 3], [f64; 3])> {
    let e = params.energy(w.p, w.rho)?;
    let total = w.rho * (e + 0.5 * w.u * w.u);
    let u = [w.rho, w.rho * w.u, total];
    let f = [w.rho * w.u, w.rho * w.u * w.u + w.p, w.u * (total + w.p)];
    Ok((u, f))
}

fn jump_residuals(
    params: &StiffenedGasParams,
    pre: &PrimitiveState,
    post: &PrimitiveState,
    speed: f64,
) -> Result<ShockResiduals> {
    let (u0, f0) = conserved_and_flux(params, pre)?;
    let (u1, f1) = conserved_and_flux(params, post)?;
    let mut r = [0.0; 3];
    for i in 0..3 {
        let scale = [f0[i], f1[i], speed * u0[i], speed * u1[i]]
            .iter()
            .fold(f64::MIN_POSITIVE, |m, v| m.max(v.abs()));
        r[i] = ((f1[i] - f0[i]) - speed * (u1[i] - u0[i])).abs() / scale;
    }
    let s_pre = params.entropy(pre.p, params.temperature(pre.p, pre.rho)?)?;
    let s_post = params.entropy(post.p, params.temperature(post.p, post.rho)?)?;
    Ok(ShockResiduals {
        speed,
        mass: r[0],
        momentum: r[1],
        energy: r[2],
        entropy_jump: s_post - s_pre,
    })
}

/// Writes a sampled profile as CSV.
pub fn profile_to_csv(samples: &[ProfileSample]) -> String {
    let mut out = String::from(PROFILE_CSV_HEADER);
    out.push('\n');
    for s in samples {
        out.push_str(&format::row(&[s.xi, s.rho, s.u, s.p, s.t].map(format::num)));
        out.push('\n');
    }
    out
}
