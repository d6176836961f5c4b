//! Wigner d-matrix rotation probabilities, particle-in-a-box and harmonic
//! oscillator densities, local (coarse-grained) averaging, classical-limit
//! densities and a Stern–Gerlach deflection calculator.
//!
//! The numerical kernels are generic over [`Real`] (`f32` or `f64`); the
//! aliases below fix the scalar to `f64`, which is what the tolerances quoted
//! throughout the crate assume.

pub mod classical_limit;
pub mod cli;
pub mod coarse_grain;
pub mod error;
pub mod model_densities;
pub mod quantum_numbers;
pub mod scalar;
pub mod sge;
pub mod wigner_d;
pub mod wigner_prob;

use std::sync::OnceLock;

pub use error::{Error, Result};
pub use quantum_numbers::{halfint_from_string, m_range, HalfInt, JmState};
pub use scalar::Real;

pub type WignerEvaluator = wigner_d::WignerD<f64>;
pub type WignerEvaluatorF32 = wigner_d::WignerD<f32>;
pub type DMatrix = wigner_d::DMatrixTable<f64>;
pub type Distribution = wigner_prob::ProbabilityTable<f64>;
pub type Grid = model_densities::DensityGrid<f64>;
pub type Box1d = model_densities::BoxSpec<f64>;
pub type Oscillator = model_densities::OscillatorSpec<f64>;
pub type Report = classical_limit::ComparisonReport<f64>;
pub type AveragingWindow = coarse_grain::Window<f64>;

/// Shared `f64` evaluator with the default capacity (`2j <= 500`).
pub fn wigner() -> &'static WignerEvaluator {
    static EVALUATOR: OnceLock<WignerEvaluator> = OnceLock::new();
    EVALUATOR.get_or_init(WignerEvaluator::default)
}
