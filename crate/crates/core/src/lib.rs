//! Two-phase water/vapor thermodynamics on top of the stiffened-gas equation of
//! state.
//!
//! The crate covers single-phase property evaluation ([`eos`]), the Gibbs
//! equilibrium saturation line ([`saturation`]), shock and rarefaction wave
//! curves ([`waves`]), an exact Riemann solver for the 1-D Euler equations
//! ([`riemann`]), local parameter fitting against tabulated real-fluid data
//! ([`steamtable`]) and the sweeps that check, point by point, that a vapor
//! compression wave never reaches the saturation line and that a liquid
//! rarefaction can only ever produce wet steam ([`analysis`]).
//!
//! Everything is SI: Pa, K, kg/m³, J/kg, J/(kg·K).
//!
//! ```
//! use phasewave::eos::StiffenedGasParams;
//! use phasewave::saturation::{PhasePair, SaturationSolver};
//!
//! let solver = SaturationSolver::new(PhasePair::table1());
//! let p = solver.p_sat(373.15).unwrap();
//! assert!(p > 1e5 && p < 1e6);
//! let vapor = StiffenedGasParams::TABLE1_VAPOR;
//! assert!(vapor.temperature(1e5, 0.5).unwrap() > 447.0);
//! ```

pub mod analysis;
pub mod eos;
mod error;
pub mod format;
pub mod riemann;
mod roots;
pub mod saturation;
pub mod steamtable;
pub mod waves;

pub use error::{Error, Result};

/// Triple point temperature of water, K.
pub const T_TRIPLE: f64 = 273.16;
/// Critical temperature of water, K.
pub const T_CRIT: f64 = 647.096;
/// Critical pressure of water, Pa.
pub const P_CRIT: f64 = 22.064e6;
