//! Classical densities over the projection `m'` and comparison against the
//! quantum rotation probabilities.
//!
//! The precessing-vector density is
//!
//! ```text
//! 1 / (pi sqrt(A)),   A = j^2 (1 - cos^2 beta) - (m^2 + m'^2 - 2 m m' cos beta)
//! ```
//!
//! where the bracket is the squared length of `m z - m' z'` with
//! `z . z' = cos beta`. Where `A <= 0` the projection is classically
//! unreachable or sits on a singularity, and the density is reported as 0.

use crate::coarse_grain::discrete_average;
use crate::error::{Error, Result};
use crate::quantum_numbers::{check_projection, HalfInt};
use crate::scalar::{lit, Real};
use crate::wigner_d::WignerD;
use crate::wigner_prob::distribution;

/// Fraction of `[-j, j]` treated as the interior when computing relative errors.
pub const INTERIOR_FRACTION: f64 = 0.8;

/// Radicand `A` of the precessing-vector density.
pub fn vector_model_radicand<T: Real>(j: HalfInt, m_prime: T, m: HalfInt, beta: T) -> T {
    let jf = j.value::<T>();
    let mf = m.value::<T>();
    let c = beta.cos();
    jf * jf * (T::one() - c * c) - (mf * mf + m_prime * m_prime - lit::<T>(2.0) * mf * m_prime * c)
}

/// Precessing-vector density over `m'`; 0 where the radicand is not positive.
pub fn vector_model_density<T: Real>(j: HalfInt, m_prime: T, m: HalfInt, beta: T) -> T {
    let a = vector_model_radicand(j, m_prime, m, beta);
    if a > T::zero() {
        T::one() / (T::PI() * a.sqrt())
    } else {
        T::zero()
    }
}

/// `1 / (pi sqrt(j^2 - m'^2))` for `|m'| < j`, else 0 (`m = 0`, `beta = pi/2`).
pub fn vector_model_m0<T: Real>(j: HalfInt, m_prime: T) -> T {
    let jf = j.value::<T>();
    if m_prime.abs() >= jf {
        return T::zero();
    }
    T::one() / (T::PI() * (jf * jf - m_prime * m_prime).sqrt())
}

/// Normal density with mean 0 and variance `j/2`.
pub fn gaussian_limit<T: Real>(j: HalfInt, m_prime: T) -> T {
    let var = j.value::<T>() / lit(2.0);
    (-(m_prime * m_prime) / (lit::<T>(2.0) * var)).exp() / (lit::<T>(2.0) * T::PI() * var).sqrt()
}

/// The Gaussian in the scaled variable `M = m'/j`: `sqrt(j/pi) exp(-j M^2)`.
pub fn scaled_gaussian<T: Real>(j: HalfInt, scaled: T) -> T {
    let jf = j.value::<T>();
    (jf / T::PI()).sqrt() * (-jf * scaled * scaled).exp()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ClassicalModel {
    /// Precessing-vector density (used for `m = 0`).
    VectorModel,
    /// Gaussian with variance `j/2` (used for `m = j`).
    Gaussian,
}

impl ClassicalModel {
    pub fn name(self) -> &'static str {
        match self {
            ClassicalModel::VectorModel => "vector_model",
            ClassicalModel::Gaussian => "gaussian",
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ComparisonPoint<T> {
    /// `m'`, or the midpoint `m' + 1/2` for coarse-grained comparisons.
    pub position: T,
    pub quantum: T,
    pub classical: T,
    pub abs_error: T,
    /// `abs_error / classical`; 0 where the classical density vanishes.
    pub rel_error: T,
    /// `|position| <= interior_fraction * j`.
    pub interior: bool,
    /// Classical density is zero here because the radicand vanished or went negative.
    pub singular: bool,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ComparisonReport<T> {
    pub j: HalfInt,
    pub m: HalfInt,
    pub beta: T,
    pub coarse: bool,
    pub model: ClassicalModel,
    pub points: Vec<ComparisonPoint<T>>,
    pub max_abs_error: T,
    /// Over interior, non-singular points; 0 if there are none.
    pub max_rel_error_interior: T,
    pub rms_rel_error_interior: T,
    pub interior_fraction: T,
}

impl<T: Real> ComparisonReport<T> {
    pub fn interior_points(&self) -> impl Iterator<Item = &ComparisonPoint<T>> {
        self.points.iter().filter(|p| p.interior && !p.singular)
    }
}

/// Compares quantum probabilities for `|j, m; beta>` against the classical limit.
///
/// * `m = 0` (integer `j`): precessing-vector density. With `coarse` the
///   quantum side is the two-point average at midpoints, otherwise the raw
///   distribution at integer `m'`.
/// * `m = j`: Gaussian with variance `j/2` against the raw distribution
///   (`coarse` is ignored; the distribution has no oscillations to remove).
///   Only defined at `beta = pi/2`.
pub fn compare_quantum_classical<T: Real>(
    w: &WignerD<T>,
    j: HalfInt,
    m: HalfInt,
    beta: T,
    coarse: bool,
) -> Result<ComparisonReport<T>> {
    check_projection(j, m)?;
    if j.twice() == 0 {
        return Err(Error::InvalidParameter(
            "classical comparison needs j > 0".into(),
        ));
    }
    let model = if m == HalfInt::ZERO {
        ClassicalModel::VectorModel
    } else if m == j {
        if (beta - T::FRAC_PI_2()).abs() > lit(1e-12) {
            return Err(Error::InvalidParameter(
                "the Gaussian limit for m = j is defined only at beta = pi/2".into(),
            ));
        }
        ClassicalModel::Gaussian
    } else {
        return Err(Error::UnsupportedM { j, m });
    };

    let table = distribution(w, j, m, beta)?;
    let use_midpoints = coarse && model == ClassicalModel::VectorModel;
    let samples: Vec<(T, T)> = if use_midpoints {
        discrete_average(&table)?
    } else {
        table.iter().map(|(mp, p)| (mp.value::<T>(), p)).collect()
    };

    let frac = lit::<T>(INTERIOR_FRACTION);
    let limit = frac * j.value::<T>();
    let points: Vec<ComparisonPoint<T>> = samples
        .into_iter()
        .map(|(x, q)| {
            let (classical, singular) = match model {
                ClassicalModel::VectorModel => {
                    let a = vector_model_radicand(j, x, m, beta);
                    (vector_model_density(j, x, m, beta), a <= T::zero())
                }
                ClassicalModel::Gaussian => (gaussian_limit(j, x), false),
            };
            let abs_error = (q - classical).abs();
            let rel_error = if classical > T::zero() {
                abs_error / classical
            } else {
                T::zero()
            };
            ComparisonPoint {
                position: x,
                quantum: q,
                classical,
                abs_error,
                rel_error,
                interior: x.abs() <= limit,
                singular,
            }
        })
        .collect();

    let max_abs_error = points.iter().fold(T::zero(), |a, p| a.max(p.abs_error));
    let interior: Vec<T> = points
        .iter()
        .filter(|p| p.interior && !p.singular)
        .map(|p| p.rel_error)
        .collect();
    let max_rel_error_interior = interior.iter().fold(T::zero(), |a, &r| a.max(r));
    let rms_rel_error_interior = if interior.is_empty() {
        T::zero()
    } else {
        let n = T::from_usize(interior.len()).expect("count fits scalar");
        (interior.iter().fold(T::zero(), |a, &r| a + r * r) / n).sqrt()
    };

    Ok(ComparisonReport {
        j,
        m,
        beta,
        coarse: use_midpoints,
        model,
        points,
        max_abs_error,
        max_rel_error_interior,
        rms_rel_error_interior,
        interior_fraction: frac,
    })
}
