//! Position densities of the particle in a box and the harmonic oscillator,
//! together with their classical counterparts.

use crate::error::{Error, Result};
use crate::scalar::{from_i64, lit, Real};

/// Largest oscillator level accepted by [`sho_density`].
pub const MAX_SHO_LEVEL: u32 = 300;

/// Box occupying `0 <= x <= length`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BoxSpec<T> {
    length: T,
}

impl<T: Real> BoxSpec<T> {
    pub fn new(length: T) -> Result<Self> {
        if !length.is_finite() || length <= T::zero() {
            return Err(Error::InvalidParameter(format!(
                "box length must be positive and finite, got {length}"
            )));
        }
        Ok(Self { length })
    }

    pub fn length(&self) -> T {
        self.length
    }
}

impl<T: Real> Default for BoxSpec<T> {
    fn default() -> Self {
        Self { length: T::one() }
    }
}

/// Harmonic oscillator parameters; all default to 1.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct OscillatorSpec<T> {
    mass: T,
    omega: T,
    hbar: T,
}

impl<T: Real> OscillatorSpec<T> {
    pub fn new(mass: T, omega: T, hbar: T) -> Result<Self> {
        for (name, v) in [("mass", mass), ("omega", omega), ("hbar", hbar)] {
            if !v.is_finite() || v <= T::zero() {
                return Err(Error::InvalidParameter(format!(
                    "oscillator {name} must be positive and finite, got {v}"
                )));
            }
        }
        Ok(Self { mass, omega, hbar })
    }

    pub fn mass(&self) -> T {
        self.mass
    }

    pub fn omega(&self) -> T {
        self.omega
    }

    pub fn hbar(&self) -> T {
        self.hbar
    }

    /// `sqrt(m omega / hbar)`, the inverse oscillator length.
    fn inverse_length(&self) -> T {
        (self.mass * self.omega / self.hbar).sqrt()
    }
}

impl<T: Real> Default for OscillatorSpec<T> {
    fn default() -> Self {
        Self {
            mass: T::one(),
            omega: T::one(),
            hbar: T::one(),
        }
    }
}

/// A density sampled on a strictly increasing grid.
#[derive(Clone, Debug, PartialEq)]
pub struct DensityGrid<T> {
    x: Vec<T>,
    rho: Vec<T>,
    label: String,
}

impl<T: Real> DensityGrid<T> {
    pub fn new(x: Vec<T>, rho: Vec<T>, label: impl Into<String>) -> Result<Self> {
        if x.len() != rho.len() {
            return Err(Error::InvalidParameter(format!(
                "grid has {} positions but {} density values",
                x.len(),
                rho.len()
            )));
        }
        if x.windows(2)
            .any(|w| w[0].partial_cmp(&w[1]) != Some(std::cmp::Ordering::Less))
        {
            return Err(Error::InvalidParameter(
                "grid positions must be strictly increasing".into(),
            ));
        }
        if rho.iter().any(|r| !r.is_finite() || *r < T::zero()) {
            return Err(Error::InvalidParameter(
                "densities must be finite and nonnegative".into(),
            ));
        }
        Ok(Self {
            x,
            rho,
            label: label.into(),
        })
    }

    pub fn x(&self) -> &[T] {
        &self.x
    }

    pub fn rho(&self) -> &[T] {
        &self.rho
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn len(&self) -> usize {
        self.x.len()
    }

    pub fn is_empty(&self) -> bool {
        self.x.is_empty()
    }

    /// Trapezoidal integral of the sampled density.
    pub fn trapezoid(&self) -> T {
        trapezoid(&self.x, &self.rho)
    }
}

pub(crate) fn trapezoid<T: Real>(x: &[T], y: &[T]) -> T {
    x.windows(2)
        .zip(y.windows(2))
        .fold(T::zero(), |acc, (xs, ys)| {
            acc + (xs[1] - xs[0]) * (ys[0] + ys[1]) / lit(2.0)
        })
}

/// `sqrt(2/L) sin(n pi x / L)` inside the box, 0 outside.
pub fn pib_wavefunction<T: Real>(n: u32, bx: &BoxSpec<T>, x: T) -> Result<T> {
    if n < 1 {
        return Err(Error::InvalidParameter(
            "box level n must be at least 1".into(),
        ));
    }
    let l = bx.length;
    if x < T::zero() || x > l {
        return Ok(T::zero());
    }
    let k = from_i64::<T>(n as i64) * T::PI() / l;
    Ok((lit::<T>(2.0) / l).sqrt() * (k * x).sin())
}

/// `(2/L) sin^2(n pi x / L)` inside the box, 0 outside.
pub fn pib_density<T: Real>(n: u32, bx: &BoxSpec<T>, x: T) -> Result<T> {
    let psi = pib_wavefunction(n, bx, x)?;
    Ok(psi * psi)
}

/// Uniform classical density `1/L`.
pub fn pib_classical<T: Real>(bx: &BoxSpec<T>) -> T {
    T::one() / bx.length
}

/// Normalized oscillator eigenfunction `psi_n(x)`.
///
/// Uses the recurrence for normalized Hermite functions,
/// `phi_k = sqrt(2/k) xi phi_{k-1} - sqrt((k-1)/k) phi_{k-2}`, started from 1
/// with the Gaussian factor and `pi^(-1/4)` kept separately as a logarithm.
/// Whenever the running pair exceeds `2^64` both are divided by `2^64` and the
/// logarithm is advanced, so neither `H_n` nor the Gaussian can overflow or
/// underflow before the final product.
pub fn sho_wavefunction<T: Real>(n: u32, osc: &OscillatorSpec<T>, x: T) -> Result<T> {
    if n > MAX_SHO_LEVEL {
        return Err(Error::InvalidParameter(format!(
            "oscillator level n = {n} exceeds {MAX_SHO_LEVEL}"
        )));
    }
    if !x.is_finite() {
        return Err(Error::NonFinite("x"));
    }
    let alpha = osc.inverse_length();
    let xi = alpha * x;
    let two = lit::<T>(2.0);
    let rescale = lit::<T>(18446744073709551616.0); // 2^64
    let rescale_ln = lit::<T>(64.0) * T::LN_2();

    let mut log_scale = -xi * xi / two - T::PI().ln() / lit(4.0) + alpha.ln() / two;
    let mut prev = T::zero();
    let mut cur = T::one();
    for k in 1..=n as i64 {
        let kf = from_i64::<T>(k);
        let next = (two / kf).sqrt() * xi * cur - ((kf - T::one()) / kf).sqrt() * prev;
        prev = cur;
        cur = next;
        if cur.abs().max(prev.abs()) > rescale {
            cur = cur / rescale;
            prev = prev / rescale;
            log_scale = log_scale + rescale_ln;
        }
    }
    if cur == T::zero() {
        return Ok(T::zero());
    }
    let magnitude = (log_scale + cur.abs().ln()).exp();
    Ok(if cur < T::zero() {
        -magnitude
    } else {
        magnitude
    })
}

/// `|psi_n(x)|^2` for the oscillator, `n <= 300`.
pub fn sho_density<T: Real>(n: u32, osc: &OscillatorSpec<T>, x: T) -> Result<T> {
    let psi = sho_wavefunction(n, osc, x)?;
    Ok(psi * psi)
}

/// `E_n = hbar omega (n + 1/2)`.
pub fn sho_energy<T: Real>(n: u32, osc: &OscillatorSpec<T>) -> T {
    osc.hbar * osc.omega * (from_i64::<T>(n as i64) + lit(0.5))
}

/// Classical turning point `sqrt(2 E_n / (m omega^2))`.
pub fn sho_turning_point<T: Real>(n: u32, osc: &OscillatorSpec<T>) -> T {
    (lit::<T>(2.0) * sho_energy(n, osc) / (osc.mass * osc.omega * osc.omega)).sqrt()
}

/// Arcsine density `1 / (pi sqrt(x_t^2 - x^2))` for `|x| < x_t`, else 0.
pub fn sho_classical<T: Real>(n: u32, osc: &OscillatorSpec<T>, x: T) -> T {
    let xt = sho_turning_point(n, osc);
    if x.abs() >= xt {
        return T::zero();
    }
    T::one() / (T::PI() * (xt * xt - x * x).sqrt())
}
