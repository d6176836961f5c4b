//! Stern–Gerlach beam deflection.
//!
//! The in-magnet deflection of a beam whose moment projection is `s_z` is
//!
//! ```text
//! w = g e / (4 M_atom m_e) * |dB/dz| * (L / v)^2 * s_z
//! ```
//!
//! The physical sign is negative (moment anti-parallel to the spin); this
//! module reports `w` with the sign of `s_z`, so magnitudes come out directly.
//!
//! Constants span roughly 1e-55..1e38, which is outside `f32`, so this module
//! is `f64` only.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::quantum_numbers::{m_range, HalfInt};

/// Sign of the physical deflection relative to [`deflection`].
pub const DEFLECTION_SIGN: f64 = -1.0;

/// Apparatus constants (SI units). Serialized as a flat JSON object with
/// exactly these field names; missing fields fall back to the silver-beam
/// defaults and unknown fields are rejected.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SgeConfig {
    /// g-factor (dimensionless).
    pub g: f64,
    /// Elementary charge, C.
    pub e: f64,
    /// Atomic mass, kg.
    #[serde(rename = "M_atom")]
    pub m_atom: f64,
    /// Electron mass, kg.
    pub m_e: f64,
    /// Field gradient magnitude, T/m.
    #[serde(rename = "dBdz")]
    pub db_dz: f64,
    /// Magnet length, m.
    #[serde(rename = "L_magnet")]
    pub l_magnet: f64,
    /// Beam speed, m/s.
    pub v: f64,
    /// Reduced Planck constant, J s.
    pub hbar: f64,
}

impl Default for SgeConfig {
    fn default() -> Self {
        Self {
            g: 2.0,
            e: 1.6e-19,
            m_atom: 1.8e-25,
            m_e: 9.1e-31,
            db_dz: 1400.0,
            l_magnet: 0.035,
            v: 750.0,
            hbar: 1.0545718e-34,
        }
    }
}

impl SgeConfig {
    /// Parses the JSON document form.
    pub fn from_json(text: &str) -> std::result::Result<Self, serde_json::Error> {
        serde_json::from_str(text)
    }

    /// Every constant must be finite and positive, except the gradient which
    /// may be zero (no splitting).
    pub fn validate(&self) -> Result<()> {
        let fields = [
            ("g", self.g),
            ("e", self.e),
            ("M_atom", self.m_atom),
            ("m_e", self.m_e),
            ("L_magnet", self.l_magnet),
            ("v", self.v),
            ("hbar", self.hbar),
        ];
        for (name, value) in fields {
            if !value.is_finite() || value <= 0.0 {
                return Err(Error::InvalidParameter(format!(
                    "{name} must be positive and finite, got {value}"
                )));
            }
        }
        if !self.db_dz.is_finite() || self.db_dz < 0.0 {
            return Err(Error::InvalidParameter(format!(
                "dBdz must be nonnegative and finite, got {}",
                self.db_dz
            )));
        }
        Ok(())
    }

    fn coefficient(&self) -> f64 {
        let t = self.l_magnet / self.v;
        self.g * self.e / (4.0 * self.m_atom * self.m_e) * self.db_dz * t * t
    }
}

/// Deflection for moment projection `s_z` (J s), signed like `s_z`.
pub fn deflection(config: &SgeConfig, s_z: f64) -> Result<f64> {
    config.validate()?;
    Ok(config.coefficient() * s_z)
}

#[derive(Clone, Debug, PartialEq)]
pub struct BeamPattern {
    pub j: HalfInt,
    /// `(m, z)` in ascending `m`, `z` in metres.
    pub positions: Vec<(HalfInt, f64)>,
    /// Distance between adjacent peaks, metres.
    pub separation: f64,
}

/// Peak positions `z(m) = deflection(m hbar)` for every `m`.
pub fn beam_pattern(config: &SgeConfig, j: HalfInt) -> Result<BeamPattern> {
    if j.twice() < 1 {
        return Err(Error::InvalidParameter(format!(
            "a beam pattern needs j >= 1/2, got {j}"
        )));
    }
    let positions = m_range(j)?
        .into_iter()
        .map(|m| Ok((m, deflection(config, m.to_f64() * config.hbar)?)))
        .collect::<Result<Vec<_>>>()?;
    Ok(BeamPattern {
        j,
        positions,
        separation: adjacent_separation(config)?,
    })
}

/// `|z(m+1) - z(m)|`, which does not depend on `j` or `m`.
pub fn adjacent_separation(config: &SgeConfig) -> Result<f64> {
    Ok(deflection(config, config.hbar)?.abs())
}

/// Adjacent separation after multiplying the atomic mass by `mass_factor`.
pub fn mass_scaled_separation(config: &SgeConfig, mass_factor: f64) -> Result<f64> {
    if !mass_factor.is_finite() || mass_factor <= 0.0 {
        return Err(Error::InvalidParameter(format!(
            "mass factor must be positive and finite, got {mass_factor}"
        )));
    }
    let scaled = SgeConfig {
        m_atom: config.m_atom * mass_factor,
        ..*config
    };
    adjacent_separation(&scaled)
}

/// Smallest mass multiplier that brings the adjacent separation down to
/// `resolution` metres.
pub fn min_mass_factor_for_resolution(config: &SgeConfig, resolution: f64) -> Result<f64> {
    if !resolution.is_finite() || resolution <= 0.0 {
        return Err(Error::InvalidParameter(format!(
            "resolution must be positive and finite, got {resolution}"
        )));
    }
    Ok(adjacent_separation(config)? / resolution)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rel(a: f64, b: f64) -> f64 {
        ((a - b) / b).abs()
    }

    #[test]
    fn silver_beam_values() {
        let c = SgeConfig::default();
        let w = deflection(&c, c.hbar / 2.0).unwrap();
        assert!((w - 7.85e-5).abs() < 0.01e-5, "w = {w}");
        assert!((1.55e-4..=1.60e-4).contains(&(2.0 * w)));
        assert_eq!(deflection(&c, 0.0).unwrap(), 0.0);
        assert!(deflection(&c, -c.hbar).unwrap() < 0.0);
    }

    #[test]
    fn scaling_laws() {
        let c = SgeConfig::default();
        let s = c.hbar / 2.0;
        let base = deflection(&c, s).unwrap();
        let f = 1.7;
        let cases = [
            (deflection(&c, s * f).unwrap(), base * f),
            (
                deflection(
                    &SgeConfig {
                        db_dz: c.db_dz * f,
                        ..c
                    },
                    s,
                )
                .unwrap(),
                base * f,
            ),
            (
                deflection(
                    &SgeConfig {
                        m_atom: c.m_atom * f,
                        ..c
                    },
                    s,
                )
                .unwrap(),
                base / f,
            ),
            (
                deflection(
                    &SgeConfig {
                        l_magnet: c.l_magnet * f,
                        ..c
                    },
                    s,
                )
                .unwrap(),
                base * f * f,
            ),
            (
                deflection(&SgeConfig { v: c.v * f, ..c }, s).unwrap(),
                base / (f * f),
            ),
            (
                deflection(&SgeConfig { v: c.v * 2.0, ..c }, s).unwrap(),
                base / 4.0,
            ),
        ];
        for (got, want) in cases {
            assert!(rel(got, want) < 1e-12);
        }
    }

    #[test]
    fn beam_pattern_separation_is_j_independent() {
        let c = SgeConfig::default();
        let reference = beam_pattern(&c, HalfInt::HALF).unwrap();
        assert_eq!(reference.positions.len(), 2);
        assert!((reference.separation - 1.57e-4).abs() < 0.01e-4);
        for tj in [1, 2, 10, 40] {
            let p = beam_pattern(&c, HalfInt::from_twice(tj)).unwrap();
            assert_eq!(p.positions.len(), tj as usize + 1);
            assert!(rel(p.separation, reference.separation) < 1e-12);
            for pair in p.positions.windows(2) {
                assert!(pair[0].0 < pair[1].0);
                assert!(rel(pair[1].1 - pair[0].1, p.separation) < 1e-12);
            }
        }
        let flat = beam_pattern(&SgeConfig { db_dz: 0.0, ..c }, HalfInt::from_int(3)).unwrap();
        assert!(flat.positions.iter().all(|&(_, z)| z == 0.0));
        assert!(beam_pattern(&c, HalfInt::ZERO).is_err());
    }

    #[test]
    fn mass_scaling() {
        let c = SgeConfig::default();
        let base = adjacent_separation(&c).unwrap();
        assert_eq!(mass_scaled_separation(&c, 1.0).unwrap(), base);
        assert!(rel(mass_scaled_separation(&c, 2.0).unwrap(), base / 2.0) < 1e-15);
        let s = mass_scaled_separation(&c, 1e6).unwrap();
        assert!((1.5e-10..=1.6e-10).contains(&s), "{s}");
        assert!(mass_scaled_separation(&c, 0.0).is_err());
    }

    #[test]
    fn resolution_factor() {
        let c = SgeConfig::default();
        let base = adjacent_separation(&c).unwrap();
        assert!(rel(min_mass_factor_for_resolution(&c, base).unwrap(), 1.0) < 1e-15);
        let f = min_mass_factor_for_resolution(&c, 5e-11).unwrap();
        assert!(rel(f, base / 5e-11) < 1e-15);
        assert!((3.1e6..3.2e6).contains(&f), "{f}");
        assert!(min_mass_factor_for_resolution(&c, 1.0).unwrap() < 1e-3);
        // the factor really does reach the requested resolution
        let reached = mass_scaled_separation(&c, f).unwrap();
        assert!(rel(reached, 5e-11) < 1e-12);
    }

    #[test]
    fn json_config() {
        let c = SgeConfig::from_json("{}").unwrap();
        assert_eq!(c, SgeConfig::default());
        let c = SgeConfig::from_json(r#"{"M_atom": 1.8e-19, "v": 500}"#).unwrap();
        assert_eq!(c.m_atom, 1.8e-19);
        assert_eq!(c.v, 500.0);
        assert_eq!(c.g, 2.0);
        let err = SgeConfig::from_json(r#"{"mass": 1.0}"#).unwrap_err();
        assert!(err.to_string().contains("unknown field `mass`"));
        let err = SgeConfig::from_json(r#"{"v": "fast"}"#).unwrap_err();
        assert!(err.to_string().contains("invalid type"));
        let text = serde_json::to_string(&SgeConfig::default()).unwrap();
        for key in [
            "\"g\"",
            "\"e\"",
            "\"M_atom\"",
            "\"m_e\"",
            "\"dBdz\"",
            "\"L_magnet\"",
            "\"v\"",
            "\"hbar\"",
        ] {
            assert!(text.contains(key), "{text}");
        }
        let bad = SgeConfig {
            v: -1.0,
            ..SgeConfig::default()
        };
        assert!(bad.validate().is_err());
    }
}
