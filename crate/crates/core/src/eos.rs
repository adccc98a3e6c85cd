//! Stiffened-gas equation of state for a single phase.
//!
//! ```text
//! e(p, ρ) = (p + γπ) / (ρ(γ − 1)) + q
//! T(p, ρ) = (p + π) / (Cρ(γ − 1))
//! a(p, ρ) = sqrt(γ(p + π) / ρ)
//! s(p, T) = C ln(T^γ / (p + π)^(γ − 1)) + q'
//! ```
//!
//! With `π = 0` and `q = 0` this is the ideal-gas law.

use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// The five constants of one phase.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct StiffenedGasParams {
    /// Adiabatic exponent, > 1.
    pub gamma: f64,
    /// Pressure offset, Pa.
    pub pi: f64,
    /// Heat-capacity constant (the isochoric heat capacity), J/(kg·K).
    #[serde(rename = "C")]
    pub c: f64,
    /// Energy offset, J/kg.
    pub q: f64,
    /// Entropy offset, J/(kg·K).
    pub q_prime: f64,
}

impl StiffenedGasParams {
    /// Water vapor constants from Saurel, Petitpas and Abgrall (2008).
    pub const TABLE1_VAPOR: Self = Self {
        gamma: 1.43,
        pi: 0.0,
        c: 1040.0,
        q: 2_030_000.0,
        q_prime: -23_000.0,
    };

    /// Liquid water constants from Saurel, Petitpas and Abgrall (2008).
    pub const TABLE1_LIQUID: Self = Self {
        gamma: 2.35,
        pi: 1e9,
        c: 1816.0,
        q: -1_167_000.0,
        q_prime: 0.0,
    };

    /// Diatomic ideal gas (γ = 1.4, air-like `C`).
    pub const IDEAL_GAS: Self = Self {
        gamma: 1.4,
        pi: 0.0,
        c: 717.5,
        q: 0.0,
        q_prime: 0.0,
    };

    /// Names accepted by [`StiffenedGasParams::preset`].
    pub const PRESETS: [&'static str; 3] = ["table1-vapor", "table1-liquid", "ideal-gas"];

    pub fn new(gamma: f64, pi: f64, c: f64, q: f64, q_prime: f64) -> Result<Self> {
        let params = Self {
            gamma,
            pi,
            c,
            q,
            q_prime,
        };
        params.validate()?;
        Ok(params)
    }

    pub fn preset(name: &str) -> Option<Self> {
        match name {
            "table1-vapor" => Some(Self::TABLE1_VAPOR),
            "table1-liquid" => Some(Self::TABLE1_LIQUID),
            "ideal-gas" => Some(Self::IDEAL_GAS),
            _ => None,
        }
    }

    /// Checks `γ > 1`, `C > 0`, `π ≥ 0` and finiteness of all constants.
    pub fn validate(&self) -> Result<()> {
        let all = [self.gamma, self.pi, self.c, self.q, self.q_prime];
        if all.iter().any(|v| !v.is_finite()) {
            return Err(Error::domain("non-finite EOS constant"));
        }
        if self.gamma <= 1.0 {
            return Err(Error::domain(format!(
                "gamma = {} must exceed 1",
                self.gamma
            )));
        }
        if self.c <= 0.0 {
            return Err(Error::domain(format!("C = {} must be positive", self.c)));
        }
        if self.pi < 0.0 {
            return Err(Error::domain(format!(
                "pi = {} must be non-negative",
                self.pi
            )));
        }
        Ok(())
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let params: Self = serde_json::from_str(s)?;
        params.validate()?;
        Ok(params)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("plain struct serializes")
    }

    fn shifted_pressure(&self, p: f64) -> Result<f64> {
        let pp = p + self.pi;
        if !(pp > 0.0) || !pp.is_finite() {
            return Err(Error::domain(format!(
                "p + pi = {pp} must be positive (p = {p}, pi = {})",
                self.pi
            )));
        }
        Ok(pp)
    }

    fn check_density(rho: f64) -> Result<()> {
        if !(rho > 0.0) || !rho.is_finite() {
            return Err(Error::domain(format!("density {rho} must be positive")));
        }
        Ok(())
    }

    fn check_temperature(t: f64) -> Result<()> {
        if !(t > 0.0) || !t.is_finite() {
            return Err(Error::domain(format!("temperature {t} must be positive")));
        }
        Ok(())
    }

    /// Specific internal energy, J/kg.
    pub fn energy(&self, p: f64, rho: f64) -> Result<f64> {
        Self::check_density(rho)?;
        self.shifted_pressure(p)?;
        Ok((p + self.gamma * self.pi) / (rho * (self.gamma - 1.0)) + self.q)
    }

    /// Temperature, K.
    pub fn temperature(&self, p: f64, rho: f64) -> Result<f64> {
        Self::check_density(rho)?;
        let pp = self.shifted_pressure(p)?;
        Ok(pp / (self.c * rho * (self.gamma - 1.0)))
    }

    /// Inverse of [`temperature`](Self::temperature) in ρ.
    pub fn density_from_pt(&self, p: f64, t: f64) -> Result<f64> {
        Self::check_temperature(t)?;
        let pp = self.shifted_pressure(p)?;
        Ok(pp / (self.c * t * (self.gamma - 1.0)))
    }

    /// Sound speed, m/s.
    pub fn sound_speed(&self, p: f64, rho: f64) -> Result<f64> {
        Self::check_density(rho)?;
        let pp = self.shifted_pressure(p)?;
        Ok((self.gamma * pp / rho).sqrt())
    }

    /// `γ ln T − (γ − 1) ln(p + π)`, the log of `T^γ / (p + π)^(γ−1)` without
    /// forming the power.
    fn log_entropy_term(&self, p: f64, t: f64) -> Result<f64> {
        Self::check_temperature(t)?;
        let pp = self.shifted_pressure(p)?;
        Ok(self.gamma * t.ln() - (self.gamma - 1.0) * pp.ln())
    }

    /// Specific entropy, J/(kg·K).
    pub fn entropy(&self, p: f64, t: f64) -> Result<f64> {
        Ok(self.c * self.log_entropy_term(p, t)? + self.q_prime)
    }

    /// Specific Gibbs energy in closed form,
    /// `g = CTγ + q − CT ln(T^γ / (p + π)^(γ−1)) − T q'`.
    pub fn gibbs(&self, p: f64, t: f64) -> Result<f64> {
        let log_term = self.log_entropy_term(p, t)?;
        Ok(self.c * t * self.gamma + self.q - self.c * t * log_term - t * self.q_prime)
    }

    /// Isobaric heat capacity `Cγ`, J/(kg·K).
    pub fn cp(&self) -> f64 {
        self.c * self.gamma
    }

    /// Full state from pressure and density.
    pub fn state(&self, p: f64, rho: f64) -> Result<PhaseState> {
        let t = self.temperature(p, rho)?;
        Ok(PhaseState {
            p,
            rho,
            t,
            e: self.energy(p, rho)?,
            s: self.entropy(p, t)?,
            a: self.sound_speed(p, rho)?,
            g: self.gibbs(p, t)?,
        })
    }

    /// Full state from pressure and temperature.
    pub fn state_from_pt(&self, p: f64, t: f64) -> Result<PhaseState> {
        let rho = self.density_from_pt(p, t)?;
        Ok(PhaseState {
            p,
            rho,
            t,
            e: self.energy(p, rho)?,
            s: self.entropy(p, t)?,
            a: self.sound_speed(p, rho)?,
            g: self.gibbs(p, t)?,
        })
    }

    /// Central-difference check of `∂g/∂p = 1/ρ` and `∂g/∂T = −s`.
    ///
    /// `h` is a relative step: the pressure step is `h (p + π)` and the
    /// temperature step `h T`. Residuals are relative to `1/ρ` and to
    /// `max(|s|, C)`; both decay as `h²` until round-off takes over.
    pub fn check_consistency(&self, p: f64, t: f64, h: f64) -> Result<ConsistencyResiduals> {
        if !(h > 0.0 && h < 1e-3) {
            return Err(Error::domain(format!(
                "relative step h = {h} must lie in (0, 1e-3)"
            )));
        }
        let pp = self.shifted_pressure(p)?;
        Self::check_temperature(t)?;
        let dp = h * pp;
        let dt = h * t;
        let dg_dp = (self.gibbs(p + dp, t)? - self.gibbs(p - dp, t)?) / (2.0 * dp);
        let dg_dt = (self.gibbs(p, t + dt)? - self.gibbs(p, t - dt)?) / (2.0 * dt);
        let rho = self.density_from_pt(p, t)?;
        let s = self.entropy(p, t)?;
        Ok(ConsistencyResiduals {
            pressure: (dg_dp - 1.0 / rho).abs() * rho,
            temperature: (dg_dt + s).abs() / s.abs().max(self.c),
        })
    }
}

/// Relative residuals returned by [`StiffenedGasParams::check_consistency`].
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ConsistencyResiduals {
    /// `|∂g/∂p − 1/ρ| · ρ`
    pub pressure: f64,
    /// `|∂g/∂T + s| / max(|s|, C)`
    pub temperature: f64,
}

impl ConsistencyResiduals {
    pub fn max(&self) -> f64 {
        self.pressure.max(self.temperature)
    }
}

/// Thermodynamic state of one phase.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct PhaseState {
    pub p: f64,
    pub rho: f64,
    #[serde(rename = "T")]
    pub t: f64,
    pub e: f64,
    pub s: f64,
    pub a: f64,
    pub g: f64,
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    const VAPOR: StiffenedGasParams = StiffenedGasParams::TABLE1_VAPOR;
    const LIQUID: StiffenedGasParams = StiffenedGasParams::TABLE1_LIQUID;

    fn ideal(gamma: f64) -> StiffenedGasParams {
        StiffenedGasParams::new(gamma, 0.0, 1.0, 0.0, 0.0).unwrap()
    }

    #[test]
    fn energy_examples() {
        assert_relative_eq!(
            ideal(1.4).energy(1.0, 1.0).unwrap(),
            2.5,
            max_relative = 1e-15
        );
        assert_relative_eq!(
            VAPOR.energy(1e5, 0.5).unwrap(),
            2.495_116_279_069_767_5e6,
            max_relative = 1e-14
        );
        let expected = (1e5 + 2.35e9) / (1000.0 * 1.35) - 1.167e6;
        assert_relative_eq!(
            LIQUID.energy(1e5, 1000.0).unwrap(),
            expected,
            max_relative = 1e-14
        );
    }

    #[test]
    fn temperature_examples() {
        let unit = StiffenedGasParams::new(2.0, 0.0, 1.0, 0.0, 0.0).unwrap();
        assert_eq!(unit.temperature(1.0, 1.0).unwrap(), 1.0);
        assert_relative_eq!(
            VAPOR.temperature(1e5, 0.5).unwrap(),
            447.227_191_413_237_9,
            max_relative = 1e-13
        );
        // (1e5 + 1e9) / (1816 · 1000 · 1.35)
        assert_relative_eq!(
            LIQUID.temperature(1e5, 1000.0).unwrap(),
            407.937_673_356_175_6,
            max_relative = 1e-13
        );
    }

    #[test]
    fn density_inverts_temperature() {
        for (params, p, rho) in [
            (VAPOR, 1e5, 0.5),
            (LIQUID, 1e5, 1000.0),
            (LIQUID, 3e7, 870.0),
        ] {
            let t = params.temperature(p, rho).unwrap();
            assert_relative_eq!(
                params.density_from_pt(p, t).unwrap(),
                rho,
                max_relative = 1e-12
            );
        }
        assert_relative_eq!(
            VAPOR.density_from_pt(1e5, 447.23).unwrap(),
            0.5,
            max_relative = 1e-5
        );
        assert_relative_eq!(
            LIQUID.density_from_pt(1e5, 407.937_673_356_175_6).unwrap(),
            1000.0,
            max_relative = 1e-12
        );
    }

    #[test]
    fn sound_speed_examples() {
        let unit = StiffenedGasParams {
            gamma: 1.0,
            ..ideal(1.4)
        };
        assert_eq!(unit.sound_speed(1.0, 1.0).unwrap(), 1.0);
        assert_relative_eq!(
            VAPOR.sound_speed(1e5, 0.5).unwrap(),
            286_000f64.sqrt(),
            max_relative = 1e-15
        );
        assert_relative_eq!(
            VAPOR.sound_speed(1e5, 0.5).unwrap(),
            534.79,
            max_relative = 1e-5
        );
        assert_relative_eq!(
            LIQUID.sound_speed(1e5, 1000.0).unwrap(),
            1533.047,
            max_relative = 1e-6
        );
    }

    #[test]
    fn entropy_examples() {
        let degenerate = StiffenedGasParams {
            gamma: 1.0,
            pi: 0.0,
            c: 1.0,
            q: 0.0,
            q_prime: 0.0,
        };
        assert_eq!(degenerate.entropy(5.0, 1.0).unwrap(), 0.0);
        let t: f64 = 447.23;
        let expected = 1040.0 * (1.43 * t.ln() - 0.43 * 1e5f64.ln()) - 23000.0;
        assert_relative_eq!(
            VAPOR.entropy(1e5, t).unwrap(),
            expected,
            max_relative = 1e-14
        );
    }

    #[test]
    fn entropy_constant_on_ideal_isentrope() {
        let (p0, t0) = (1e5, 400.0);
        let s0 = VAPOR.entropy(p0, t0).unwrap();
        for k in 1..20 {
            let p = p0 * 0.37 * k as f64;
            let t = t0 * (p / p0).powf(0.43 / 1.43);
            assert_relative_eq!(VAPOR.entropy(p, t).unwrap(), s0, max_relative = 1e-12);
        }
    }

    #[test]
    fn gibbs_closed_form_matches_assembly() {
        for params in [VAPOR, LIQUID] {
            let (p, t) = (1e5, 400.0);
            let rho = params.density_from_pt(p, t).unwrap();
            let assembled =
                params.energy(p, rho).unwrap() + p / rho - t * params.entropy(p, t).unwrap();
            assert_relative_eq!(params.gibbs(p, t).unwrap(), assembled, max_relative = 1e-10);
        }
    }

    #[test]
    fn domain_errors() {
        assert!(matches!(VAPOR.energy(1e5, 0.0), Err(Error::Domain(_))));
        assert!(matches!(VAPOR.energy(-1.0, 1.0), Err(Error::Domain(_))));
        assert!(matches!(VAPOR.temperature(0.0, 1.0), Err(Error::Domain(_))));
        assert!(matches!(
            VAPOR.density_from_pt(1e5, 0.0),
            Err(Error::Domain(_))
        ));
        assert!(matches!(VAPOR.entropy(1e5, -3.0), Err(Error::Domain(_))));
        assert!(matches!(
            VAPOR.gibbs(f64::NAN, 300.0),
            Err(Error::Domain(_))
        ));
        // stiffened liquid tolerates tension down to -pi
        assert!(LIQUID.temperature(-1e8, 1000.0).is_ok());
        assert!(LIQUID.temperature(-1e9, 1000.0).is_err());
        assert!(VAPOR.check_consistency(1e5, 400.0, 1e-2).is_err());
    }

    #[test]
    fn params_validation_and_presets() {
        assert!(StiffenedGasParams::new(1.0, 0.0, 1.0, 0.0, 0.0).is_err());
        assert!(StiffenedGasParams::new(1.4, -1.0, 1.0, 0.0, 0.0).is_err());
        assert!(StiffenedGasParams::new(1.4, 0.0, 0.0, 0.0, 0.0).is_err());
        for name in StiffenedGasParams::PRESETS {
            StiffenedGasParams::preset(name)
                .unwrap()
                .validate()
                .unwrap();
        }
        assert!(StiffenedGasParams::preset("table2").is_none());
    }

    #[test]
    fn json_uses_spec_keys() {
        let json = VAPOR.to_json();
        assert_eq!(
            json,
            r#"{"gamma":1.43,"pi":0.0,"C":1040.0,"q":2030000.0,"q_prime":-23000.0}"#
        );
        assert_eq!(StiffenedGasParams::from_json(&json).unwrap(), VAPOR);
        assert!(
            StiffenedGasParams::from_json(r#"{"gamma":0.5,"pi":0,"C":1,"q":0,"q_prime":0}"#)
                .is_err()
        );
    }

    #[test]
    fn consistency_examples() {
        let r = VAPOR.check_consistency(1e5, 400.0, 1e-6).unwrap();
        assert!(r.max() < 1e-4, "{r:?}");
        let r = LIQUID.check_consistency(1e7, 450.0, 1e-6).unwrap();
        assert!(r.max() < 1e-4, "{r:?}");
    }

    #[test]
    fn consistency_is_second_order() {
        for (params, p, t) in [(VAPOR, 1e5, 400.0), (LIQUID, 1e7, 450.0)] {
            let coarse = params.check_consistency(p, t, 4e-4).unwrap();
            let fine = params.check_consistency(p, t, 2e-4).unwrap();
            for (c, f) in [
                (coarse.pressure, fine.pressure),
                (coarse.temperature, fine.temperature),
            ] {
                let ratio = c / f;
                assert!((3.5..4.5).contains(&ratio), "ratio {ratio}");
            }
        }
    }

    #[test]
    fn ideal_gas_reduction() {
        let gas = StiffenedGasParams::new(1.4, 0.0, 717.5, 0.0, 0.0).unwrap();
        let (p, rho) = (2.0e5, 1.7);
        assert_relative_eq!(
            gas.energy(p, rho).unwrap(),
            p / (rho * 0.4),
            max_relative = 1e-15
        );
        assert_relative_eq!(
            gas.temperature(p, rho).unwrap(),
            p / (717.5 * rho * 0.4),
            max_relative = 1e-15
        );
        assert_relative_eq!(
            gas.sound_speed(p, rho).unwrap(),
            (1.4 * p / rho).sqrt(),
            max_relative = 1e-15
        );
    }

    #[test]
    fn monotonicity() {
        for params in [VAPOR, LIQUID] {
            let mut prev_t = f64::INFINITY;
            for k in 1..50 {
                let rho = 0.1 * k as f64 * if params.pi > 0.0 { 100.0 } else { 1.0 };
                let t = params.temperature(1e5, rho).unwrap();
                assert!(t < prev_t);
                prev_t = t;
            }
            let mut prev_a = 0.0;
            for k in 1..50 {
                let a = params.sound_speed(1e4 * k as f64, 1.0).unwrap();
                assert!(a > prev_a);
                prev_a = a;
            }
        }
    }

    #[test]
    fn state_fields_are_consistent() {
        let st = LIQUID.state(2e6, 950.0).unwrap();
        let back = LIQUID.state_from_pt(st.p, st.t).unwrap();
        assert_relative_eq!(back.rho, st.rho, max_relative = 1e-12);
        assert_relative_eq!(back.e, st.e, max_relative = 1e-12);
        assert_relative_eq!(back.g, st.g, max_relative = 1e-12);
        assert_relative_eq!(LIQUID.cp(), 1816.0 * 2.35);
    }
}
