//! Local (boxcar) averaging of densities over a finite resolution window.
//!
//! For a continuous density the average at `x` is
//! `(1/delta) * integral_{x - delta/2}^{x + delta/2} rho`. For a discrete
//! distribution over `m'` at resolution 1 the average is the two-point mean
//! of neighbouring entries, reported at their midpoint.

use crate::error::{Error, Result};
use crate::model_densities::DensityGrid;
use crate::scalar::{from_i64, lit, Real};
use crate::wigner_prob::ProbabilityTable;

/// Default number of panels used by [`QuadratureSpec::default`].
pub const DEFAULT_PANELS: usize = 2048;

/// Smallest panel count accepted.
pub const MIN_PANELS: usize = 8;

/// Averaging window width `delta`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Window<T> {
    delta: T,
}

impl<T: Real> Window<T> {
    pub fn new(delta: T) -> Result<Self> {
        if !delta.is_finite() || delta <= T::zero() {
            return Err(Error::InvalidParameter(format!(
                "window width must be positive and finite, got {delta}"
            )));
        }
        Ok(Self { delta })
    }

    pub fn delta(&self) -> T {
        self.delta
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum QuadratureRule {
    Midpoint,
    Trapezoid,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct QuadratureSpec {
    rule: QuadratureRule,
    panels: usize,
}

impl QuadratureSpec {
    pub fn new(rule: QuadratureRule, panels: usize) -> Result<Self> {
        if panels < MIN_PANELS {
            return Err(Error::InvalidParameter(format!(
                "quadrature needs at least {MIN_PANELS} panels, got {panels}"
            )));
        }
        Ok(Self { rule, panels })
    }

    pub fn rule(&self) -> QuadratureRule {
        self.rule
    }

    pub fn panels(&self) -> usize {
        self.panels
    }

    /// Same rule with twice the panels.
    pub fn refined(&self) -> Self {
        Self {
            rule: self.rule,
            panels: self.panels * 2,
        }
    }
}

impl Default for QuadratureSpec {
    fn default() -> Self {
        Self {
            rule: QuadratureRule::Trapezoid,
            panels: DEFAULT_PANELS,
        }
    }
}

fn sample<T: Real, F: Fn(T) -> T>(density: &F, x: T) -> Result<T> {
    let v = density(x);
    if !v.is_finite() {
        return Err(Error::NonFinite("density inside averaging window"));
    }
    Ok(v)
}

/// Mean of `density` over `[x - delta/2, x + delta/2]`.
pub fn local_average<T, F>(density: F, x: T, window: &Window<T>, quad: &QuadratureSpec) -> Result<T>
where
    T: Real,
    F: Fn(T) -> T,
{
    if !x.is_finite() {
        return Err(Error::NonFinite("x"));
    }
    let delta = window.delta;
    let a = x - delta / lit(2.0);
    let n = quad.panels;
    let nf = from_i64::<T>(n as i64);
    let h = delta / nf;
    // Mean over the window = (integral) / delta = weighted sum / n.
    let sum = match quad.rule {
        QuadratureRule::Midpoint => {
            let mut acc = T::zero();
            for i in 0..n {
                acc = acc + sample(&density, a + (from_i64::<T>(i as i64) + lit(0.5)) * h)?;
            }
            acc
        }
        QuadratureRule::Trapezoid => {
            let b = x + delta / lit(2.0);
            let mut acc = (sample(&density, a)? + sample(&density, b)?) / lit(2.0);
            for i in 1..n {
                acc = acc + sample(&density, a + from_i64::<T>(i as i64) * h)?;
            }
            acc
        }
    };
    Ok(sum / nf)
}

/// [`local_average`] at every grid point.
pub fn local_average_grid<T, F>(
    density: F,
    grid: &[T],
    window: &Window<T>,
    quad: &QuadratureSpec,
    label: impl Into<String>,
) -> Result<DensityGrid<T>>
where
    T: Real,
    F: Fn(T) -> T,
{
    let rho = grid
        .iter()
        .map(|&x| local_average(&density, x, window, quad))
        .collect::<Result<Vec<_>>>()?;
    // Quadrature of a nonnegative density can round a hair below zero.
    let rho = rho.into_iter().map(|r| r.max(T::zero())).collect();
    DensityGrid::new(grid.to_vec(), rho, label)
}

/// Two-point averages `(p[m'] + p[m'+1]) / 2` at midpoints `m' + 1/2`.
pub fn discrete_average<T: Real>(table: &ProbabilityTable<T>) -> Result<Vec<(T, T)>> {
    if table.p.len() < 2 {
        return Err(Error::TooFewEntries(table.p.len()));
    }
    let half = lit::<T>(0.5);
    let entries: Vec<_> = table.iter().collect();
    Ok(entries
        .windows(2)
        .map(|w| (w[0].0.value::<T>() + half, (w[0].1 + w[1].1) * half))
        .collect())
}

/// `start, start + step, ...` up to and including `stop` (within rounding).
/// Points are generated as `start + i * step` so they do not drift.
pub fn uniform_grid<T: Real>(start: T, stop: T, step: T) -> Result<Vec<T>> {
    if !(start.is_finite() && stop.is_finite() && step.is_finite())
        || step <= T::zero()
        || stop < start
    {
        return Err(Error::InvalidParameter(format!(
            "bad grid start = {start}, stop = {stop}, step = {step}"
        )));
    }
    let count = ((stop - start) / step + lit(1e-9)).floor();
    let count = count
        .to_usize()
        .ok_or_else(|| Error::InvalidParameter("grid too large".into()))?;
    Ok((0..=count)
        .map(|i| start + from_i64::<T>(i as i64) * step)
        .collect())
}
