//! Reduced Wigner d-matrix elements `d^j_{m'm}(beta) = <j m'| exp(-i J_y beta) |j m>`.
//!
//! Two independent routes are provided: the alternating factorial sum and the
//! Jacobi-polynomial form. The sum is the reference; the Jacobi form is kept
//! separate so the two can check each other. Specialised sums for `m = 0` and
//! `m = j` (and their `beta = pi/2` reductions) are exposed as further oracles.
//!
//! Sums are accumulated as `sign * exp(log_magnitude)` with the largest
//! log-magnitude factored out, which keeps intermediate factorials finite
//! up to `2j = 500` and beyond.

use crate::error::{Error, Result};
use crate::quantum_numbers::{check_projection, m_range, HalfInt};
use crate::scalar::{from_i64, lit, Real};

/// Default number of `ln(k!)` entries.
pub const DEFAULT_FACTORIAL_CAPACITY: usize = 2000;

/// Default largest `2j` accepted by [`WignerD::matrix`].
pub const DEFAULT_MAX_TWICE_J: i32 = 500;

/// Environment variable overriding [`DEFAULT_MAX_TWICE_J`].
pub const MAX_TWICE_J_ENV: &str = "WIGCL_MAX_TWICE_J";

/// Table of `ln(k!)` for `k = 0..capacity`.
#[derive(Clone, Debug)]
pub struct LogFactorialTable<T> {
    values: Vec<T>,
}

impl<T: Real> LogFactorialTable<T> {
    /// Builds the table by compensated summation of `ln(k)`.
    pub fn new(capacity: usize) -> Self {
        let capacity = capacity.max(2);
        let mut values = Vec::with_capacity(capacity);
        values.push(T::zero());
        let mut sum = T::zero();
        let mut comp = T::zero();
        for k in 1..capacity {
            let term = T::from_usize(k).expect("table index fits scalar").ln();
            // Neumaier
            let t = sum + term;
            if sum.abs() >= term.abs() {
                comp = comp + ((sum - t) + term);
            } else {
                comp = comp + ((term - t) + sum);
            }
            sum = t;
            values.push(sum + comp);
        }
        Self { values }
    }

    pub fn capacity(&self) -> usize {
        self.values.len()
    }

    /// `ln(n!)`.
    pub fn ln_factorial(&self, n: usize) -> Result<T> {
        self.values.get(n).copied().ok_or(Error::FactorialCapacity {
            n,
            capacity: self.values.len(),
        })
    }

    #[inline]
    fn at(&self, n: i64) -> Result<T> {
        debug_assert!(n >= 0, "negative factorial argument {n}");
        self.ln_factorial(n as usize)
    }

    pub fn values(&self) -> &[T] {
        &self.values
    }
}

/// Full `(2j+1) x (2j+1)` table of `d^j_{m'm}(beta)`.
///
/// Rows are indexed by `m'` and columns by `m`, both in ascending order
/// `-j..=j`.
#[derive(Clone, Debug, PartialEq)]
pub struct DMatrixTable<T> {
    j: HalfInt,
    beta: T,
    elements: Vec<T>,
}

impl<T: Real> DMatrixTable<T> {
    pub fn j(&self) -> HalfInt {
        self.j
    }

    pub fn beta(&self) -> T {
        self.beta
    }

    pub fn dim(&self) -> usize {
        self.j.twice() as usize + 1
    }

    fn index(&self, q: HalfInt) -> Option<usize> {
        let tj = self.j.twice();
        let t = q.twice();
        if t.abs() > tj || (tj - t) % 2 != 0 {
            return None;
        }
        Some(((t + tj) / 2) as usize)
    }

    /// Element `d_{m'm}`; `None` if either label is out of range.
    pub fn get(&self, m_prime: HalfInt, m: HalfInt) -> Option<T> {
        let r = self.index(m_prime)?;
        let c = self.index(m)?;
        Some(self.elements[r * self.dim() + c])
    }

    /// Row-major elements.
    pub fn elements(&self) -> &[T] {
        &self.elements
    }

    /// Iterates `(m', m, d)` in row-major order.
    pub fn iter(&self) -> impl Iterator<Item = (HalfInt, HalfInt, T)> + '_ {
        let tj = self.j.twice();
        let n = self.dim();
        self.elements.iter().enumerate().map(move |(i, &d)| {
            let r = (i / n) as i32;
            let c = (i % n) as i32;
            (
                HalfInt::from_twice(2 * r - tj),
                HalfInt::from_twice(2 * c - tj),
                d,
            )
        })
    }
}

/// `base^exp` as `(ln|.|, negative)`; `None` when the power is exactly zero.
#[inline]
fn signed_log_pow<T: Real>(base: T, exp: i64) -> Option<(T, bool)> {
    if exp == 0 {
        return Some((T::zero(), false));
    }
    if base == T::zero() {
        return None;
    }
    Some((
        from_i64::<T>(exp) * base.abs().ln(),
        base < T::zero() && exp % 2 != 0,
    ))
}

/// `2 ln|tan(beta/2)|`, the per-step change of the half-angle powers, or
/// `None` when one of them is exactly zero.
fn tan_step<T: Real>(c: T, s: T) -> Option<T> {
    if c == T::zero() || s == T::zero() {
        None
    } else {
        Some(lit::<T>(2.0) * (s / c).abs().ln())
    }
}

/// Sum over `k` of the factorial-sum terms, where consecutive terms satisfy
///
/// ```text
/// t_k / t_{k-1} = -(a-k+1)(b-k+1) / (k (k-dm)) * tan^2(beta/2)
/// ```
///
/// Only the first term's log-magnitude comes from `term`; the rest are logs
/// relative to it built from the exact integer ratios, which keeps the
/// relative weights accurate to a few ulps instead of the absolute precision
/// of the large log-factorials. With a zero half-angle base every term is
/// taken from `term` directly.
fn alternating_sum<T, F>(
    term: F,
    k_min: i64,
    k_max: i64,
    a: i64,
    b: i64,
    dm: i64,
    step: Option<T>,
) -> Result<T>
where
    T: Real,
    F: Fn(i64) -> Result<Option<(T, bool)>>,
{
    if k_max < k_min {
        return Ok(T::zero());
    }
    let Some(step) = step else {
        let mut terms = Vec::new();
        for k in k_min..=k_max {
            if let Some(t) = term(k)? {
                terms.push(t);
            }
        }
        return Ok(sum_signed_logs(&terms, T::zero()));
    };
    let Some((base, neg)) = term(k_min)? else {
        return Ok(T::zero());
    };
    let mut rel = Vec::with_capacity((k_max - k_min + 1) as usize);
    rel.push((T::zero(), neg));
    let (mut r, mut sign) = (T::zero(), neg);
    for k in k_min + 1..=k_max {
        let num = ((a - k + 1) * (b - k + 1)) as f64;
        let den = (k * (k - dm)) as f64;
        r = r + lit::<T>(num / den).ln() + step;
        sign = !sign;
        rel.push((r, sign));
    }
    Ok(sum_signed_logs(&rel, base))
}

/// Sums `(-1)^neg * exp(log + offset)` with the largest log factored out.
fn sum_signed_logs<T: Real>(terms: &[(T, bool)], offset: T) -> T {
    let Some(peak) = terms
        .iter()
        .map(|&(l, _)| l)
        .fold(None, |acc: Option<T>, l| Some(acc.map_or(l, |a| a.max(l))))
    else {
        return T::zero();
    };
    let mut acc = T::zero();
    for &(l, neg) in terms {
        let v = (l - peak).exp();
        acc = if neg { acc - v } else { acc + v };
    }
    acc * (peak + offset).exp()
}

#[inline]
fn is_odd(n: i64) -> bool {
    n.rem_euclid(2) == 1
}

/// Evaluator owning the factorial table. Immutable after construction, so a
/// single instance can be shared across threads.
#[derive(Clone, Debug)]
pub struct WignerD<T> {
    table: LogFactorialTable<T>,
    max_twice_j: i32,
}

impl<T: Real> Default for WignerD<T> {
    fn default() -> Self {
        Self::new(DEFAULT_MAX_TWICE_J)
    }
}

impl<T: Real> WignerD<T> {
    /// Evaluator accepting `2j <= max_twice_j`. The factorial table is sized to
    /// the larger of [`DEFAULT_FACTORIAL_CAPACITY`] and `2j + 1`.
    pub fn new(max_twice_j: i32) -> Self {
        let max_twice_j = max_twice_j.max(0);
        let capacity = DEFAULT_FACTORIAL_CAPACITY.max(max_twice_j as usize + 1);
        Self {
            table: LogFactorialTable::new(capacity),
            max_twice_j,
        }
    }

    /// Like [`WignerD::default`] but honouring `WIGCL_MAX_TWICE_J`.
    pub fn from_env() -> Result<Self> {
        match std::env::var(MAX_TWICE_J_ENV) {
            Ok(raw) => {
                let v: i32 = raw.trim().parse().map_err(|_| {
                    Error::InvalidParameter(format!("{MAX_TWICE_J_ENV}={raw:?} is not an integer"))
                })?;
                if v < 0 {
                    return Err(Error::InvalidParameter(format!(
                        "{MAX_TWICE_J_ENV} must be nonnegative, got {v}"
                    )));
                }
                Ok(Self::new(v))
            }
            Err(_) => Ok(Self::default()),
        }
    }

    pub fn max_twice_j(&self) -> i32 {
        self.max_twice_j
    }

    pub fn log_factorials(&self) -> &LogFactorialTable<T> {
        &self.table
    }

    pub fn ln_factorial(&self, n: usize) -> Result<T> {
        self.table.ln_factorial(n)
    }

    fn check_args(j: HalfInt, m_prime: HalfInt, m: HalfInt, beta: T) -> Result<()> {
        check_projection(j, m)?;
        check_projection(j, m_prime)?;
        if !beta.is_finite() {
            return Err(Error::NonFinite("beta"));
        }
        Ok(())
    }

    /// `d^j_{m'm}(beta)` by the alternating factorial sum
    ///
    /// ```text
    /// sum_k (-1)^(k-m+m') sqrt((j+m)!(j-m)!(j+m')!(j-m')!)
    ///       / ((j+m-k)! k! (j-k-m')! (k-m+m')!)
    ///       * cos(beta/2)^(2j-2k+m-m') * sin(beta/2)^(2k-m+m')
    /// ```
    ///
    /// with `k` from `max(0, m-m')` to `min(j+m, j-m')`.
    pub fn sum(&self, j: HalfInt, m_prime: HalfInt, m: HalfInt, beta: T) -> Result<T> {
        Self::check_args(j, m_prime, m, beta)?;
        let (tj, tm, tmp) = (j.twice() as i64, m.twice() as i64, m_prime.twice() as i64);
        let j_plus_m = (tj + tm) / 2;
        let j_minus_m = (tj - tm) / 2;
        let j_plus_mp = (tj + tmp) / 2;
        let j_minus_mp = (tj - tmp) / 2;
        // m - m'
        let dm = (tm - tmp) / 2;
        let t = &self.table;

        let half = beta / lit(2.0);
        let (c, s) = (half.cos(), half.sin());
        let prefactor =
            (t.at(j_plus_m)? + t.at(j_minus_m)? + t.at(j_plus_mp)? + t.at(j_minus_mp)?) / lit(2.0);

        let k_min = dm.max(0);
        let k_max = j_plus_m.min(j_minus_mp);
        let term = |k: i64| -> Result<Option<(T, bool)>> {
            let Some((lc, nc)) = signed_log_pow(c, tj - 2 * k + dm) else {
                return Ok(None);
            };
            let Some((ls, ns)) = signed_log_pow(s, 2 * k - dm) else {
                return Ok(None);
            };
            let denom = t.at(j_plus_m - k)? + t.at(k)? + t.at(j_minus_mp - k)? + t.at(k - dm)?;
            Ok(Some((
                prefactor - denom + lc + ls,
                is_odd(k - dm) ^ nc ^ ns,
            )))
        };
        alternating_sum(term, k_min, k_max, j_plus_m, j_minus_mp, dm, tan_step(c, s))
    }

    /// `d^j_{m'm}(beta)` from the Jacobi-polynomial form
    ///
    /// ```text
    /// sqrt((j+m')!(j-m')! / ((j+m)!(j-m)!)) cos(beta/2)^(m'+m) sin(beta/2)^(m'-m)
    ///     * Phi_{j-m'}^{(m'-m, m'+m)}(cos beta)
    /// ```
    ///
    /// valid directly for `m' >= |m|`. `Phi` is the standard Jacobi polynomial
    /// times `(-1)^(m'-m)`; that sign brings the form onto the convention of
    /// [`WignerD::sum`]. Other index regions are reached through
    /// `d_{m'm} = (-1)^(m-m') d_{mm'} = (-1)^(m-m') d_{-m',-m} = d_{-m,-m'}`.
    pub fn jacobi(&self, j: HalfInt, m_prime: HalfInt, m: HalfInt, beta: T) -> Result<T> {
        Self::check_args(j, m_prime, m, beta)?;
        let (mp, mm, sign) = to_jacobi_region(m_prime, m);
        let v = self.jacobi_direct(j, mp, mm, beta)?;
        Ok(if sign { -v } else { v })
    }

    fn jacobi_direct(&self, j: HalfInt, m_prime: HalfInt, m: HalfInt, beta: T) -> Result<T> {
        debug_assert!(m_prime.twice() >= m.twice().abs());
        let (tj, tm, tmp) = (j.twice() as i64, m.twice() as i64, m_prime.twice() as i64);
        let t = &self.table;
        let n = (tj - tmp) / 2;
        let a = (tmp - tm) / 2;
        let b = (tmp + tm) / 2;
        let ratio = (t.at((tj + tmp) / 2)? + t.at((tj - tmp) / 2)?
            - t.at((tj + tm) / 2)?
            - t.at((tj - tm) / 2)?)
            / lit(2.0);
        let half = beta / lit(2.0);
        let poly = jacobi_poly(n as u32, a, b, beta.cos())?;
        let v = ratio.exp() * half.cos().powi(b as i32) * half.sin().powi(a as i32) * poly;
        Ok(if is_odd(a) { -v } else { v })
    }

    /// `d^j_{m',0}(beta)` by the sum specialised to `m = 0` (integer `j`).
    pub fn m0(&self, j: HalfInt, m_prime: HalfInt, beta: T) -> Result<T> {
        if !j.is_integer() {
            return Err(Error::NonIntegerJ(j));
        }
        Self::check_args(j, m_prime, HalfInt::ZERO, beta)?;
        let jj = (j.twice() / 2) as i64;
        let mp = (m_prime.twice() / 2) as i64;
        let t = &self.table;
        let half = beta / lit(2.0);
        let (c, s) = (half.cos(), half.sin());
        let prefactor = t.at(jj)? + (t.at(jj + mp)? + t.at(jj - mp)?) / lit(2.0);
        let term = |k: i64| -> Result<Option<(T, bool)>> {
            let Some((lc, nc)) = signed_log_pow(c, 2 * jj - 2 * k - mp) else {
                return Ok(None);
            };
            let Some((ls, ns)) = signed_log_pow(s, 2 * k + mp) else {
                return Ok(None);
            };
            let denom = t.at(jj - k)? + t.at(k)? + t.at(jj - k - mp)? + t.at(k + mp)?;
            Ok(Some((
                prefactor - denom + lc + ls,
                is_odd(k + mp) ^ nc ^ ns,
            )))
        };
        alternating_sum(
            term,
            (-mp).max(0),
            jj.min(jj - mp),
            jj,
            jj - mp,
            -mp,
            tan_step(c, s),
        )
    }

    /// `d^j_{m',j}(beta)` by the sum specialised to `m = j`. The sum has the
    /// single term `k = j - m'`, i.e. `sqrt(C(2j, j+m')) cos^(j+m') sin^(j-m')`.
    pub fn mj(&self, j: HalfInt, m_prime: HalfInt, beta: T) -> Result<T> {
        Self::check_args(j, m_prime, j, beta)?;
        let tj = j.twice() as i64;
        let j2 = tj;
        let jmp = (tj - m_prime.twice() as i64) / 2; // j - m'
        let jpp = (tj + m_prime.twice() as i64) / 2; // j + m'
        let t = &self.table;
        let half = beta / lit(2.0);
        let (c, s) = (half.cos(), half.sin());
        let prefactor = (t.at(j2)? + t.at(jpp)? + t.at(jmp)?) / lit(2.0);
        let mut terms = Vec::new();
        // k from max(0, j-m') to min(2j, j-m'), with j - k - m' >= 0 and k - j + m' >= 0.
        for k in jmp.max(0)..=j2.min(jmp) {
            let Some((lc, nc)) = signed_log_pow(c, (3 * tj - m_prime.twice() as i64) / 2 - 2 * k)
            else {
                continue;
            };
            let Some((ls, ns)) = signed_log_pow(s, 2 * k - jmp) else {
                continue;
            };
            let denom = t.at(j2 - k)? + t.at(k)? + t.at(jmp - k)? + t.at(k - jmp)?;
            terms.push((prefactor - denom + lc + ls, is_odd(k - jmp) ^ nc ^ ns));
        }
        Ok(sum_signed_logs(&terms, T::zero()))
    }

    /// `d^j_{m',j}(pi/2)`: the `m = j` sum with both half-angle powers replaced
    /// by the common factor `2^-j`.
    pub fn mj_half_pi(&self, j: HalfInt, m_prime: HalfInt) -> Result<T> {
        check_projection(j, m_prime)?;
        let tj = j.twice() as i64;
        let jmp = (tj - m_prime.twice() as i64) / 2;
        let jpp = (tj + m_prime.twice() as i64) / 2;
        let t = &self.table;
        let prefactor = (t.at(tj)? + t.at(jpp)? + t.at(jmp)?) / lit(2.0)
            - from_i64::<T>(tj) / lit(2.0) * T::LN_2();
        let mut terms = Vec::new();
        for k in jmp.max(0)..=tj.min(jmp) {
            let denom = t.at(tj - k)? + t.at(k)? + t.at(jmp - k)? + t.at(k - jmp)?;
            terms.push((prefactor - denom, is_odd(k - jmp)));
        }
        Ok(sum_signed_logs(&terms, T::zero()))
    }

    /// `d^j_{m',0}(pi/2)` for integer `j`, with the `2^-j` half-angle factor
    /// pulled out. The summation starts at `max(0, -m')`, the smallest `k` for
    /// which every factorial argument is nonnegative.
    pub fn m0_half_pi(&self, j: HalfInt, m_prime: HalfInt) -> Result<T> {
        if !j.is_integer() {
            return Err(Error::NonIntegerJ(j));
        }
        check_projection(j, m_prime)?;
        let jj = (j.twice() / 2) as i64;
        let mp = (m_prime.twice() / 2) as i64;
        let t = &self.table;
        let prefactor = t.at(jj)? + (t.at(jj + mp)? + t.at(jj - mp)?) / lit(2.0)
            - from_i64::<T>(jj) * T::LN_2();
        let term = |k: i64| -> Result<Option<(T, bool)>> {
            let denom = t.at(jj - k)? + t.at(k)? + t.at(jj - k - mp)? + t.at(k + mp)?;
            Ok(Some((prefactor - denom, is_odd(k + mp))))
        };
        alternating_sum(
            term,
            (-mp).max(0),
            jj.min(jj - mp),
            jj,
            jj - mp,
            -mp,
            Some(T::zero()),
        )
    }

    /// All `(2j+1)^2` elements by the factorial sum.
    pub fn matrix(&self, j: HalfInt, beta: T) -> Result<DMatrixTable<T>> {
        self.matrix_with(j, beta, |m_prime, m| self.sum(j, m_prime, m, beta))
    }

    /// All elements by the Jacobi form.
    pub fn matrix_jacobi(&self, j: HalfInt, beta: T) -> Result<DMatrixTable<T>> {
        self.matrix_with(j, beta, |m_prime, m| self.jacobi(j, m_prime, m, beta))
    }

    fn matrix_with<F>(&self, j: HalfInt, beta: T, mut element: F) -> Result<DMatrixTable<T>>
    where
        F: FnMut(HalfInt, HalfInt) -> Result<T>,
    {
        let ms = m_range(j)?;
        if j.twice() > self.max_twice_j {
            return Err(Error::CapacityExceeded {
                twice_j: j.twice(),
                max_twice_j: self.max_twice_j,
            });
        }
        if !beta.is_finite() {
            return Err(Error::NonFinite("beta"));
        }
        let mut elements = Vec::with_capacity(ms.len() * ms.len());
        for &m_prime in &ms {
            for &m in &ms {
                elements.push(element(m_prime, m)?);
            }
        }
        Ok(DMatrixTable { j, beta, elements })
    }
}

/// Maps `(m', m)` into the region `m' >= |m|`. Returns the mapped pair and
/// whether the element changes sign under the mapping.
pub(crate) fn to_jacobi_region(m_prime: HalfInt, m: HalfInt) -> (HalfInt, HalfInt, bool) {
    let (a, b) = (m_prime.twice(), m.twice());
    // (m - m') is an integer; its parity decides the transposition sign.
    let odd_diff = ((b - a) / 2).rem_euclid(2) == 1;
    if a >= b.abs() {
        (m_prime, m, false)
    } else if b >= a.abs() {
        // d_{m'm} = (-1)^(m-m') d_{m m'}
        (m, m_prime, odd_diff)
    } else if -a >= b.abs() {
        // d_{m'm} = (-1)^(m-m') d_{-m',-m}
        (-m_prime, -m, odd_diff)
    } else {
        // d_{m'm} = d_{-m,-m'}
        (-m, -m_prime, false)
    }
}

/// Jacobi polynomial `P_n^{(a,b)}(x)` by the three-term recurrence in `n`.
pub fn jacobi_poly<T: Real>(n: u32, a: i64, b: i64, x: T) -> Result<T> {
    if a <= -1 || b <= -1 {
        return Err(Error::InvalidParameter(format!(
            "Jacobi parameters must exceed -1, got a = {a}, b = {b}"
        )));
    }
    if !x.is_finite() || x.abs() > T::one() {
        return Err(Error::InvalidParameter(format!(
            "Jacobi argument must lie in [-1, 1], got {x}"
        )));
    }
    let af = from_i64::<T>(a);
    let bf = from_i64::<T>(b);
    let one = T::one();
    let two = lit::<T>(2.0);
    let p0 = one;
    if n == 0 {
        return Ok(p0);
    }
    let p1 = (af + one) + (af + bf + two) * (x - one) / two;
    let (mut prev, mut cur) = (p0, p1);
    for k in 2..=n as i64 {
        let kf = from_i64::<T>(k);
        let s = two * kf + af + bf; // 2k + a + b
        let c1 = two * kf * (kf + af + bf) * (s - two);
        let c2 = (s - one) * (s * (s - two) * x + af * af - bf * bf);
        let c3 = two * (kf + af - one) * (kf + bf - one) * s;
        let next = (c2 * cur - c3 * prev) / c1;
        prev = cur;
        cur = next;
    }
    Ok(cur)
}
