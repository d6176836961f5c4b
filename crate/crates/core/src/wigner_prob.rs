//! Rotation probabilities `P^j_{m'm}(beta) = d^j_{m'm}(beta)^2`.

use crate::error::{Error, Result};
use crate::quantum_numbers::{check_projection, m_range, HalfInt};
use crate::scalar::{from_i64, Real};
use crate::wigner_d::WignerD;

/// Distribution of `P_{m'm}(beta)` over `m' = -j..=j`.
///
/// `m` is `None` for the uniform mixture over initial projections.
#[derive(Clone, Debug, PartialEq)]
pub struct ProbabilityTable<T> {
    pub j: HalfInt,
    pub m: Option<HalfInt>,
    pub beta: T,
    pub p: Vec<T>,
}

impl<T: Real> ProbabilityTable<T> {
    pub fn get(&self, m_prime: HalfInt) -> Option<T> {
        let tj = self.j.twice();
        let t = m_prime.twice();
        if t.abs() > tj || (tj - t) % 2 != 0 {
            return None;
        }
        self.p.get(((t + tj) / 2) as usize).copied()
    }

    /// `(m', P)` pairs in ascending `m'`.
    pub fn iter(&self) -> impl Iterator<Item = (HalfInt, T)> + '_ {
        let tj = self.j.twice();
        self.p
            .iter()
            .enumerate()
            .map(move |(i, &p)| (HalfInt::from_twice(2 * i as i32 - tj), p))
    }

    pub fn total(&self) -> T {
        self.p.iter().fold(T::zero(), |a, &b| a + b)
    }
}

fn clamp_probability<T: Real>(p: T) -> T {
    p.max(T::zero()).min(T::one())
}

/// `d_{m'm}(beta)^2`, clamped to `[0, 1]`.
pub fn probability<T: Real>(
    w: &WignerD<T>,
    j: HalfInt,
    m_prime: HalfInt,
    m: HalfInt,
    beta: T,
) -> Result<T> {
    let d = w.sum(j, m_prime, m, beta)?;
    Ok(clamp_probability(d * d))
}

/// Probabilities for the rotated state `|j, m; beta>` over every `m'`.
pub fn distribution<T: Real>(
    w: &WignerD<T>,
    j: HalfInt,
    m: HalfInt,
    beta: T,
) -> Result<ProbabilityTable<T>> {
    check_projection(j, m)?;
    let p = m_range(j)?
        .into_iter()
        .map(|mp| probability(w, j, mp, m, beta))
        .collect::<Result<Vec<_>>>()?;
    Ok(ProbabilityTable {
        j,
        m: Some(m),
        beta,
        p,
    })
}

/// Distribution averaged uniformly over the initial projection `m`.
pub fn ensemble_distribution<T: Real>(
    w: &WignerD<T>,
    j: HalfInt,
    beta: T,
) -> Result<ProbabilityTable<T>> {
    let ms = m_range(j)?;
    let mut acc = vec![T::zero(); ms.len()];
    for &m in &ms {
        let d = distribution(w, j, m, beta)?;
        for (a, p) in acc.iter_mut().zip(d.p) {
            *a = *a + p;
        }
    }
    let n = from_i64::<T>(ms.len() as i64);
    Ok(ProbabilityTable {
        j,
        m: None,
        beta,
        p: acc.into_iter().map(|a| a / n).collect(),
    })
}

/// The four index pairs sharing the same probability:
/// `(m', m)`, `(m, m')`, `(-m', -m)`, `(-m, -m')`.
pub fn probability_orbit(m_prime: HalfInt, m: HalfInt) -> [(HalfInt, HalfInt); 4] {
    [(m_prime, m), (m, m_prime), (-m_prime, -m), (-m, -m_prime)]
}

/// Number of distinct probabilities for a given `j`: `(j+1)^2` for integer
/// `j`, `(j+1/2)(j+3/2)` for half-integer `j`.
pub fn unique_count(j: HalfInt) -> u64 {
    let tj = j.twice().max(0) as u64;
    if tj.is_multiple_of(2) {
        (tj / 2 + 1).pow(2)
    } else {
        tj.div_ceil(2) * (tj + 3).div_ceil(2)
    }
}

/// Listed representative `(2m', 2m)` pairs per `2j`, in the order the closed
/// forms are written.
const REPRESENTATIVES: &[(i32, &[(i32, i32)])] = &[
    (1, &[(-1, -1), (-1, 1)]),
    (2, &[(-2, -2), (-2, 0), (-2, 2), (0, 0)]),
    (
        3,
        &[(-3, -3), (-3, -1), (-3, 1), (-3, 3), (-1, -1), (-1, 1)],
    ),
    (
        4,
        &[
            (-4, -4),
            (-4, -2),
            (-4, 0),
            (-4, 2),
            (-4, 4),
            (-2, -2),
            (-2, 0),
            (-2, 2),
            (0, 0),
        ],
    ),
];

/// Representative pairs for which closed forms exist (`2j` in `1..=4`).
pub fn closed_form_representatives(j: HalfInt) -> Option<Vec<(HalfInt, HalfInt)>> {
    REPRESENTATIVES
        .iter()
        .find(|(tj, _)| *tj == j.twice())
        .map(|(_, reps)| {
            reps.iter()
                .map(|&(a, b)| (HalfInt::from_twice(a), HalfInt::from_twice(b)))
                .collect()
        })
}

/// Explicit trigonometric expressions for `2j <= 4`. Any `(m', m)` is first
/// mapped onto a listed representative through [`probability_orbit`].
pub fn closed_form_probability<T: Real>(
    j: HalfInt,
    m_prime: HalfInt,
    m: HalfInt,
    beta: T,
) -> Result<T> {
    let reps = closed_form_representatives(j).ok_or_else(|| {
        Error::InvalidParameter(format!("closed forms exist only for j <= 2, got j = {j}"))
    })?;
    check_projection(j, m)?;
    check_projection(j, m_prime)?;
    if !beta.is_finite() {
        return Err(Error::NonFinite("beta"));
    }
    let (rp, rm) = probability_orbit(m_prime, m)
        .into_iter()
        .find(|pair| reps.contains(pair))
        .expect("every orbit has a listed representative");

    let half = beta / crate::scalar::lit(2.0);
    let (c, s) = (half.cos(), half.sin());
    let n = |v: f64| crate::scalar::lit::<T>(v);
    let v = match (j.twice(), rp.twice(), rm.twice()) {
        (1, -1, -1) => c.powi(2),
        (1, -1, 1) => s.powi(2),

        (2, -2, -2) => c.powi(4),
        (2, -2, 0) => beta.sin().powi(2) / n(2.0),
        (2, -2, 2) => s.powi(4),
        (2, 0, 0) => beta.cos().powi(2),

        (3, -3, -3) => c.powi(6),
        (3, -3, -1) => n(3.0) * s.powi(2) * c.powi(4),
        (3, -3, 1) => n(3.0) * s.powi(4) * c.powi(2),
        (3, -3, 3) => s.powi(6),
        (3, -1, -1) => (n(2.0) * s.powi(2) * c - c.powi(3)).powi(2),
        (3, -1, 1) => (s.powi(3) - n(2.0) * s * c.powi(2)).powi(2),

        (4, -4, -4) => c.powi(8),
        (4, -4, -2) => n(4.0) * s.powi(2) * c.powi(6),
        (4, -4, 0) => n(6.0) * s.powi(4) * c.powi(4),
        (4, -4, 2) => n(4.0) * s.powi(6) * c.powi(2),
        (4, -4, 4) => s.powi(8),
        (4, -2, -2) => (n(3.0) * s.powi(2) * c.powi(2) - c.powi(4)).powi(2),
        (4, -2, 0) => n(6.0) * (s.powi(3) * c - c.powi(3) * s).powi(2),
        (4, -2, 2) => (s.powi(4) - n(3.0) * s.powi(2) * c.powi(2)).powi(2),
        (4, 0, 0) => (s.powi(4) - n(4.0) * s.powi(2) * c.powi(2) + c.powi(4)).powi(2),
        _ => unreachable!("representative table and closed forms out of sync"),
    };
    Ok(v)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;
    use std::f64::consts::{FRAC_PI_2, FRAC_PI_3, FRAC_PI_4, FRAC_PI_6, PI};

    fn h(s: &str) -> HalfInt {
        s.parse().unwrap()
    }

    fn w() -> &'static WignerD<f64> {
        crate::wigner()
    }

    fn binom(n: u64, k: u64) -> f64 {
        (0..k).fold(1.0, |r, i| r * (n - i) as f64 / (i + 1) as f64)
    }

    #[test]
    fn probability_examples() {
        for mp in ["-1/2", "1/2"] {
            for m in ["-1/2", "1/2"] {
                let p = probability(w(), h("1/2"), h(mp), h(m), FRAC_PI_2).unwrap();
                assert!((p - 0.5).abs() < 1e-15);
            }
        }
        let p = probability(w(), h("1"), h("0"), h("0"), FRAC_PI_2).unwrap();
        assert!(p.abs() < 1e-30);
        let p = probability(w(), h("20"), h("0"), h("20"), FRAC_PI_2).unwrap();
        assert!((p - binom(40, 20) / 2f64.powi(40)).abs() < 1e-15);
        assert!((p - 0.12537068761957926).abs() < 1e-15);
    }

    #[test]
    fn distribution_examples() {
        let d = distribution(w(), h("1/2"), h("1/2"), 0.0).unwrap();
        assert_eq!(d.p, vec![0.0, 1.0]);

        for beta in [0.3, 1.4, 2.9] {
            let d = distribution(w(), h("1"), h("-1"), beta).unwrap();
            let expect = [
                (beta / 2.0).cos().powi(4),
                beta.sin().powi(2) / 2.0,
                (beta / 2.0).sin().powi(4),
            ];
            for (got, want) in d.p.iter().zip(expect) {
                assert!((got - want).abs() < 1e-14);
            }
        }

        let d = distribution(w(), h("20"), h("0"), FRAC_PI_2).unwrap();
        for (mp, p) in d.iter() {
            assert!((p - d.get(-mp).unwrap()).abs() < 1e-12);
            if (mp.twice() / 2) % 2 != 0 {
                assert!(p < 1e-20, "m'={mp} p={p}");
            }
        }
        assert!((d.total() - 1.0).abs() < 1e-10);
    }

    #[test]
    fn closed_forms_match_sum_on_every_index_pair() {
        let betas = [
            0.0, FRAC_PI_6, FRAC_PI_4, FRAC_PI_3, 1.2, FRAC_PI_2, 2.0, 2.7, PI,
        ];
        for tj in 1..=4 {
            let j = HalfInt::from_twice(tj);
            for mp in m_range(j).unwrap() {
                for m in m_range(j).unwrap() {
                    for beta in betas {
                        let a = closed_form_probability(j, mp, m, beta).unwrap();
                        let b = probability(w(), j, mp, m, beta).unwrap();
                        assert!((a - b).abs() <= 1e-12, "j={j} ({mp},{m}) beta={beta}");
                    }
                }
            }
        }
    }

    #[test]
    fn closed_form_examples_and_range() {
        let beta = 0.77f64;
        let (c, s) = ((beta / 2.0).cos(), (beta / 2.0).sin());
        let p = closed_form_probability(h("3/2"), h("-3/2"), h("-3/2"), beta).unwrap();
        assert!((p - c.powi(6)).abs() < 1e-15);
        let p = closed_form_probability(h("2"), h("0"), h("0"), beta).unwrap();
        let expect = (s.powi(4) - 4.0 * s * s * c * c + c.powi(4)).powi(2);
        assert!((p - expect).abs() < 1e-15);
        assert_eq!(
            closed_form_probability(h("1"), h("-1"), h("0"), 0.0).unwrap(),
            0.0
        );
        assert!(closed_form_probability(h("5/2"), h("1/2"), h("1/2"), 0.1).is_err());
        assert!(closed_form_probability(h("0"), h("0"), h("0"), 0.1).is_err());
    }

    fn brute_force_orbits(j: HalfInt) -> usize {
        let ms = m_range(j).unwrap();
        let mut seen = HashSet::new();
        let mut orbits = 0;
        for &a in &ms {
            for &b in &ms {
                if seen.contains(&(a, b)) {
                    continue;
                }
                orbits += 1;
                seen.extend(probability_orbit(a, b));
            }
        }
        orbits
    }

    #[test]
    fn unique_count_matches_orbit_enumeration() {
        assert_eq!(unique_count(h("1")), 4);
        assert_eq!(unique_count(h("3/2")), 6);
        assert_eq!(unique_count(h("2")), 9);
        for tj in 0..=12 {
            let j = HalfInt::from_twice(tj);
            assert_eq!(unique_count(j) as usize, brute_force_orbits(j), "2j={tj}");
        }
    }

    #[test]
    fn representatives_cover_each_orbit_once() {
        for tj in 1..=4 {
            let j = HalfInt::from_twice(tj);
            let reps = closed_form_representatives(j).unwrap();
            assert_eq!(reps.len() as u64, unique_count(j));
            for mp in m_range(j).unwrap() {
                for m in m_range(j).unwrap() {
                    let hits = reps
                        .iter()
                        .filter(|r| probability_orbit(mp, m).contains(r))
                        .count();
                    assert_eq!(hits, 1, "({mp},{m})");
                }
            }
        }
    }

    #[test]
    fn ensemble_is_flat() {
        let e = ensemble_distribution(w(), h("1/2"), 0.8).unwrap();
        for p in &e.p {
            assert!((p - 0.5).abs() < 1e-14);
        }
        let e = ensemble_distribution(w(), h("1"), FRAC_PI_2).unwrap();
        for p in &e.p {
            assert!((p - 1.0 / 3.0).abs() < 1e-14);
        }
        let e = ensemble_distribution(w(), h("20"), FRAC_PI_2).unwrap();
        assert_eq!(e.p.len(), 41);
        for p in &e.p {
            assert!((p - 0.024390243902439).abs() < 1e-10);
        }
        assert!(e.m.is_none());
    }

    #[test]
    fn ensemble_flat_and_m0_mirrored_up_to_j25() {
        for tj in (0..=50).step_by(5) {
            let j = HalfInt::from_twice(tj);
            let height = 1.0 / (tj + 1) as f64;
            for beta in [0.0, 0.3, FRAC_PI_6, 1.0, FRAC_PI_2, 2.0, 2.8, PI] {
                let e = ensemble_distribution(w(), j, beta).unwrap();
                assert!(
                    e.p.iter().all(|p| (p - height).abs() <= 1e-10),
                    "j={j} beta={beta}"
                );
                if j.is_integer() {
                    let d = distribution(w(), j, h("0"), beta).unwrap();
                    for (mp, p) in d.iter() {
                        assert!((p - d.get(-mp).unwrap()).abs() <= 1e-12);
                    }
                }
            }
        }
    }

    #[test]
    fn invalid_projection_propagates() {
        assert!(distribution(w(), h("1"), h("3/2"), 0.1).is_err());
        assert!(probability(w(), h("1"), h("2"), h("0"), 0.1).is_err());
    }
}
