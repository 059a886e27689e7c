//! Unified potential model for every oscillator treated by this crate.
//!
//! The Hamiltonian is
//!
//! ```text
//!     H = -a d^2/dx^2 + V(x),
//!     V(x) = c1 x + c2 x^2 + [quartic deformation]
//! ```
//!
//! where the deformation term is `sign * c4 * x^4` on the real axis
//! (delta = 0, the undeformed positive or negative quartic) and
//! `c4 * x^2 (ix)^delta` for delta > 0 (the PT deformation, which at
//! delta = 2 equals `-c4 x^4` continued onto complex contours). The sign
//! carried separately from delta keeps the negative real-axis quartic and
//! the PT phase distinct objects; they are different phases of the same
//! coupling and must not be conflated.

use crate::error::{Error, Result};
use crate::C64;
use serde::{Deserialize, Serialize};

/// Sign of the undeformed (delta = 0) quartic term.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum QuarticSign {
    Plus,
    Minus,
}

impl QuarticSign {
    pub fn as_f64(self) -> f64 {
        match self {
            QuarticSign::Plus => 1.0,
            QuarticSign::Minus => -1.0,
        }
    }
}

/// Coefficients of the generalized quartic-oscillator potential.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PotentialSpec {
    /// Kinetic coefficient, H = -a d^2/dx^2 + V. Must be positive.
    pub a: f64,
    /// Linear coefficient (the anomaly term uses a negative value).
    pub c1: f64,
    /// Quadratic coefficient; 0.5 m^2 for the massive oscillators.
    pub c2: f64,
    /// Magnitude of the quartic deformation, >= 0.
    pub c4: f64,
    /// Deformation exponent delta >= 0.
    pub delta: f64,
    /// Applied as sign * c4 * x^4 when delta = 0.
    pub c4_sign: QuarticSign,
}

impl PotentialSpec {
    pub fn new(
        a: f64,
        c1: f64,
        c2: f64,
        c4: f64,
        delta: f64,
        c4_sign: QuarticSign,
    ) -> Result<Self> {
        if !(a > 0.0) {
            return Err(Error::Config(format!("kinetic coefficient a must be > 0, got {a}")));
        }
        if !(c4 >= 0.0) {
            return Err(Error::Config(format!("c4 must be >= 0, got {c4}")));
        }
        if !(delta >= 0.0) {
            return Err(Error::Config(format!("delta must be >= 0, got {delta}")));
        }
        Ok(Self { a, c1, c2, c4, delta, c4_sign })
    }

    /// Parity-symmetric potentials on the real axis have both a vanishing
    /// linear term and no complex deformation.
    pub fn is_real_symmetric(&self) -> bool {
        self.delta == 0.0 && self.c1 == 0.0
    }

    /// Evaluate V at a complex point. Total on finite inputs.
    ///
    /// The branch of (ix)^delta is fixed by the principal logarithm,
    /// (ix)^delta = exp(delta Log(ix)), so delta = 2 gives exactly -x^4 and
    /// the family is continuous in delta on the shooting contours.
    pub fn eval(&self, x: C64) -> C64 {
        let x2 = x * x;
        let mut v = self.c2 * x2;
        if self.c1 != 0.0 {
            v += self.c1 * x;
        }
        if self.c4 != 0.0 {
            v += if self.delta == 0.0 {
                self.c4_sign.as_f64() * self.c4 * x2 * x2
            } else {
                self.c4 * x2 * ix_pow(x, self.delta)
            };
        }
        v
    }
}

/// (ix)^delta on the principal branch. Integer exponents take the exact
/// power-product path, which agrees with exp(delta Log(ix)) for integers.
fn ix_pow(x: C64, delta: f64) -> C64 {
    let ix = C64::new(-x.im, x.re);
    let n = delta.round();
    if (delta - n).abs() < 1e-12 && n.abs() <= 8.0 {
        ix.powi(n as i32)
    } else {
        (delta * ix.ln()).exp()
    }
}

/// Named Hamiltonians used by the spectra tables and the partition-function
/// suite. `V1..V6` fix the kinetic coefficient to a = 1; the inverted-quartic
/// and anomaly presets keep hbar and the kinetic mass explicit.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum HamiltonianPreset {
    /// V = m^2 x^2 / 2 + g x^4 / 4 on the real axis.
    V1 { m: f64, g: f64 },
    /// V = m^2 x^2 / 2 - g x^4 / 4 on the real axis (resonance phase).
    V2 { m: f64, g: f64 },
    /// V = g x^4 / 4 on the real axis.
    V3 { g: f64 },
    /// V = -g x^4 / 4 reached through the delta = 2 deformation.
    V4 { g: f64 },
    /// V = -m^2 x^2 / 2 + g x^4 / 4 on the real axis.
    V5 { m: f64, g: f64 },
    /// V = -m^2 x^2 / 2 - g x^4 / 4 through the delta = 2 deformation.
    V6 { m: f64, g: f64 },
    /// Massive oscillator in the PT phase:
    /// V = m^2 x^2 / 2 + (g/4) x^2 (ix)^2, kinetic -d^2/dx^2.
    MassiveAo { m: f64, g: f64 },
    /// H = -hbar^2 d^2/dx^2 + g x^4.
    MasslessQuartic { g: f64, hbar: f64 },
    /// H = -(hbar^2 / 2 m_kin) d^2/dx^2 + g x^2 (ix)^2.
    PtInverted { g: f64, hbar: f64, m_kin: f64 },
    /// Spectrally equivalent Hermitian partner of `PtInverted`:
    /// H = -(hbar^2 / 2 m_kin) d^2/dx^2 + 4 g x^4 - hbar sqrt(2 g / m_kin) x.
    Anomaly { g: f64, hbar: f64, m_kin: f64 },
}

impl HamiltonianPreset {
    /// Deterministic mapping onto potential coefficients.
    pub fn to_spec(self) -> Result<PotentialSpec> {
        use HamiltonianPreset::*;
        match self {
            V1 { m, g } => {
                check_positive("m", m)?;
                check_nonnegative("g", g)?;
                PotentialSpec::new(1.0, 0.0, 0.5 * m * m, 0.25 * g, 0.0, QuarticSign::Plus)
            }
            V2 { m, g } => {
                check_positive("m", m)?;
                check_nonnegative("g", g)?;
                PotentialSpec::new(1.0, 0.0, 0.5 * m * m, 0.25 * g, 0.0, QuarticSign::Minus)
            }
            V3 { g } => {
                check_positive("g", g)?;
                PotentialSpec::new(1.0, 0.0, 0.0, 0.25 * g, 0.0, QuarticSign::Plus)
            }
            V4 { g } => {
                check_positive("g", g)?;
                PotentialSpec::new(1.0, 0.0, 0.0, 0.25 * g, 2.0, QuarticSign::Plus)
            }
            V5 { m, g } => {
                check_positive("m", m)?;
                check_positive("g", g)?;
                PotentialSpec::new(1.0, 0.0, -0.5 * m * m, 0.25 * g, 0.0, QuarticSign::Plus)
            }
            V6 { m, g } => {
                check_positive("m", m)?;
                check_positive("g", g)?;
                PotentialSpec::new(1.0, 0.0, -0.5 * m * m, 0.25 * g, 2.0, QuarticSign::Plus)
            }
            MassiveAo { m, g } => {
                check_positive("m", m)?;
                check_positive("g", g)?;
                PotentialSpec::new(1.0, 0.0, 0.5 * m * m, 0.25 * g, 2.0, QuarticSign::Plus)
            }
            MasslessQuartic { g, hbar } => {
                check_positive("g", g)?;
                check_positive("hbar", hbar)?;
                PotentialSpec::new(hbar * hbar, 0.0, 0.0, g, 0.0, QuarticSign::Plus)
            }
            PtInverted { g, hbar, m_kin } => {
                check_positive("g", g)?;
                check_positive("hbar", hbar)?;
                check_positive("m_kin", m_kin)?;
                PotentialSpec::new(hbar * hbar / (2.0 * m_kin), 0.0, 0.0, g, 2.0, QuarticSign::Plus)
            }
            Anomaly { g, hbar, m_kin } => {
                check_positive("g", g)?;
                check_positive("hbar", hbar)?;
                check_positive("m_kin", m_kin)?;
                PotentialSpec::new(
                    hbar * hbar / (2.0 * m_kin),
                    -hbar * (2.0 * g / m_kin).sqrt(),
                    0.0,
                    4.0 * g,
                    0.0,
                    QuarticSign::Plus,
                )
            }
        }
    }

    /// Parse a preset name as used on the command line.
    pub fn parse(name: &str, m: Option<f64>, g: Option<f64>) -> Result<Self> {
        use HamiltonianPreset::*;
        let g_req = |what: &str| {
            g.ok_or_else(|| Error::Config(format!("preset {what} requires --g")))
        };
        let m_req = |what: &str| {
            m.ok_or_else(|| Error::Config(format!("preset {what} requires --m")))
        };
        Ok(match name {
            "v1" => V1 { m: m_req("v1")?, g: g_req("v1")? },
            "v2" => V2 { m: m_req("v2")?, g: g_req("v2")? },
            "v3" => V3 { g: g_req("v3")? },
            "v4" => V4 { g: g_req("v4")? },
            "v5" => V5 { m: m_req("v5")?, g: g_req("v5")? },
            "v6" => V6 { m: m_req("v6")?, g: g_req("v6")? },
            "massive-ao" => MassiveAo { m: m_req("massive-ao")?, g: g_req("massive-ao")? },
            "massless-quartic" => MasslessQuartic { g: g_req("massless-quartic")?, hbar: 1.0 },
            "pt-inverted" => PtInverted { g: g_req("pt-inverted")?, hbar: 1.0, m_kin: 0.5 },
            "anomaly" => Anomaly { g: g_req("anomaly")?, hbar: 1.0, m_kin: 0.5 },
            other => {
                return Err(Error::Config(format!(
                    "unknown preset '{other}' (expected v1..v6, massive-ao, massless-quartic, pt-inverted, anomaly)"
                )))
            }
        })
    }
}

fn check_positive(name: &str, v: f64) -> Result<()> {
    if v > 0.0 {
        Ok(())
    } else {
        Err(Error::Config(format!("{name} must be > 0, got {v}")))
    }
}

fn check_nonnegative(name: &str, v: f64) -> Result<()> {
    if v >= 0.0 {
        Ok(())
    } else {
        Err(Error::Config(format!("{name} must be >= 0, got {v}")))
    }
}

/// Parse a plain-text `key=value` potential description. Recognized keys:
/// `a`, `c1`, `c2`, `c4`, `delta`, `c4_sign` (+1 or -1). Blank lines and
/// `#` comments are ignored.
pub fn parse_key_value_spec(text: &str) -> Result<PotentialSpec> {
    let mut a = 1.0;
    let mut c1 = 0.0;
    let mut c2 = 0.0;
    let mut c4 = 0.0;
    let mut delta = 0.0;
    let mut sign = QuarticSign::Plus;
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (key, value) = line.split_once('=').ok_or_else(|| {
            Error::Config(format!("line {}: expected key=value, got '{line}'", lineno + 1))
        })?;
        let key = key.trim();
        let value = value.trim();
        let parse_num = || -> Result<f64> {
            value
                .parse::<f64>()
                .map_err(|_| Error::Config(format!("line {}: bad number '{value}'", lineno + 1)))
        };
        match key {
            "a" => a = parse_num()?,
            "c1" => c1 = parse_num()?,
            "c2" => c2 = parse_num()?,
            "c4" => c4 = parse_num()?,
            "delta" => delta = parse_num()?,
            "c4_sign" => {
                sign = match value {
                    "+1" | "1" | "+" => QuarticSign::Plus,
                    "-1" | "-" => QuarticSign::Minus,
                    other => {
                        return Err(Error::Config(format!(
                            "line {}: c4_sign must be +1 or -1, got '{other}'",
                            lineno + 1
                        )))
                    }
                }
            }
            other => return Err(Error::Config(format!("unknown key '{other}'"))),
        }
    }
    PotentialSpec::new(a, c1, c2, c4, delta, sign)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    #[test]
    fn delta_zero_is_the_real_quartic() {
        // On the real axis the undeformed potential is exactly
        // c1 x + c2 x^2 + sign c4 x^4.
        let p = PotentialSpec::new(1.0, 0.0, 0.0, 1.0, 0.0, QuarticSign::Plus).unwrap();
        assert_eq!(p.eval(c(2.0, 0.0)), c(16.0, 0.0));
        let p = PotentialSpec::new(1.0, 0.5, 2.0, 3.0, 0.0, QuarticSign::Minus).unwrap();
        let x = 1.7_f64;
        let want = 0.5 * x + 2.0 * x * x - 3.0 * x.powi(4);
        let got = p.eval(c(x, 0.0));
        assert_relative_eq!(got.re, want, max_relative = 1e-15);
        assert_eq!(got.im, 0.0);
    }

    #[test]
    fn delta_two_is_minus_x_fourth() {
        // x^2 (ix)^2 = -x^4; at x = 1 with c4 = 1 the value is -1 exactly.
        let p = PotentialSpec::new(1.0, 0.0, 0.0, 1.0, 2.0, QuarticSign::Plus).unwrap();
        let v = p.eval(c(1.0, 0.0));
        assert_eq!(v, c(-1.0, 0.0));
        // and on a complex ray it matches -c4 x^4
        let x = C64::from_polar(1.3, -0.7);
        let v = p.eval(x);
        let want = -x.powi(4);
        assert_relative_eq!(v.re, want.re, max_relative = 1e-14);
        assert_relative_eq!(v.im, want.im, max_relative = 1e-14);
    }

    #[test]
    fn mk_substitution_vanishes_at_one() {
        // h^2 -> sqrt(2) m, c^2 -> g/2 with m = sqrt(2), g = 4 gives
        // V(1) = h^4/4 - c^2/2 = 0 for the negative-coupling potential V2.
        let m = 2.0_f64.sqrt();
        let p = HamiltonianPreset::V2 { m, g: 4.0 }.to_spec().unwrap();
        let v = p.eval(c(1.0, 0.0));
        assert!(v.norm() < 1e-15, "V(1) = {v}");
    }

    #[test]
    fn presets_map_to_documented_coefficients() {
        let p = HamiltonianPreset::PtInverted { g: 1.0, hbar: 1.0, m_kin: 0.5 }
            .to_spec()
            .unwrap();
        assert_eq!((p.a, p.c2, p.c4, p.delta), (1.0, 0.0, 1.0, 2.0));
        // V = -x^4 on the real axis through the deformation
        assert_eq!(p.eval(c(1.0, 0.0)), c(-1.0, 0.0));

        let p = HamiltonianPreset::Anomaly { g: 1.0, hbar: 1.0, m_kin: 0.5 }
            .to_spec()
            .unwrap();
        assert_eq!((p.a, p.c1, p.c4, p.delta), (1.0, -2.0, 4.0, 0.0));

        let p = HamiltonianPreset::MasslessQuartic { g: 1.0, hbar: 1.0 }.to_spec().unwrap();
        assert_eq!((p.a, p.c2, p.c4, p.delta), (1.0, 0.0, 1.0, 0.0));
    }

    #[test]
    fn preset_mapping_injective_on_samples() {
        let specs: Vec<PotentialSpec> = [
            HamiltonianPreset::V1 { m: 1.0, g: 1.0 },
            HamiltonianPreset::V2 { m: 1.0, g: 1.0 },
            HamiltonianPreset::V3 { g: 1.0 },
            HamiltonianPreset::V4 { g: 1.0 },
            HamiltonianPreset::V5 { m: 1.0, g: 1.0 },
            HamiltonianPreset::V6 { m: 1.0, g: 1.0 },
            HamiltonianPreset::MassiveAo { m: 1.0, g: 1.0 },
            HamiltonianPreset::MasslessQuartic { g: 1.0, hbar: 1.0 },
            HamiltonianPreset::PtInverted { g: 1.0, hbar: 1.0, m_kin: 0.5 },
            HamiltonianPreset::Anomaly { g: 1.0, hbar: 1.0, m_kin: 0.5 },
        ]
        .iter()
        .map(|p| p.to_spec().unwrap())
        .collect();
        for i in 0..specs.len() {
            for j in (i + 1)..specs.len() {
                assert_ne!(specs[i], specs[j], "presets {i} and {j} collide");
            }
        }
    }

    #[test]
    fn unknown_preset_is_config_error() {
        assert!(HamiltonianPreset::parse("vortex", None, Some(1.0)).is_err());
        assert!(HamiltonianPreset::parse("v1", None, Some(1.0)).is_err());
    }

    #[test]
    fn pt_symmetry_of_eval() {
        // V(-conj(x)) = conj(V(x)) whenever c1 = 0.
        let p = PotentialSpec::new(1.0, 0.0, 0.7, 1.3, 1.4, QuarticSign::Plus).unwrap();
        for &x in &[c(0.8, -0.3), c(-1.1, -0.9), c(2.0, 0.5)] {
            let lhs = p.eval(-x.conj());
            let rhs = p.eval(x).conj();
            assert_relative_eq!(lhs.re, rhs.re, max_relative = 1e-13);
            assert_relative_eq!(lhs.im, rhs.im, max_relative = 1e-13);
        }
    }

    #[test]
    fn key_value_config_round_trip() {
        let text = "a = 1.0\nc2 = 0.5 # mass term\nc4 = 1\ndelta = 2\n";
        let p = parse_key_value_spec(text).unwrap();
        assert_eq!((p.a, p.c2, p.c4, p.delta), (1.0, 0.5, 1.0, 2.0));
        assert!(parse_key_value_spec("c9 = 1").is_err());
        assert!(parse_key_value_spec("a = -2").is_err());
    }
}
