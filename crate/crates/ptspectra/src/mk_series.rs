//! Perturbative energy series of the massive oscillator at negative quartic
//! coupling, in the inverse-mass form with q0 = 2k + 1:
//!
//! ```text
//!     E_k(m, g) = (2k+1) m / sqrt(2)
//!               - 3 g (2k^2 + 2k + 1) / (8 m^2)
//!               - g^2 (32k^3 + 48k^2 + 82k + 33) / (16 sqrt(2) m^5)
//!               + O(1/m^8),
//! ```
//!
//! together with the one-instanton imaginary part whose sign flips with the
//! branch of the coupling. The series is evaluated as this fixed three-term
//! truncation and never resummed; small-m rows go negative because of the
//! neglected higher orders, and that behaviour is part of the contract.
//!
//! The alternative parametrization h^2 = sqrt(2) m, c^2 = g/2 is exact.

use crate::error::{Error, Result};
use std::f64::consts::{PI, SQRT_2};

/// Level index and couplings for the series.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MkParams {
    pub k: usize,
    pub m: f64,
    pub g: f64,
}

impl MkParams {
    pub fn new(k: usize, m: f64, g: f64) -> Result<Self> {
        if !(m > 0.0) {
            return Err(Error::Domain(format!("series needs m > 0, got {m}")));
        }
        if !(g >= 0.0) {
            return Err(Error::Domain(format!("series needs g >= 0, got {g}")));
        }
        Ok(Self { k, m, g })
    }

    /// From the (h, c) parametrization: m = h^2/sqrt(2), g = 2 c^2.
    pub fn from_hc(k: usize, h: f64, c: f64) -> Result<Self> {
        Self::new(k, h * h / SQRT_2, 2.0 * c * c)
    }

    /// Odd quantum number q0 = 2k + 1.
    pub fn q0(&self) -> usize {
        2 * self.k + 1
    }

    pub fn energy_real(&self) -> f64 {
        let k = self.k as f64;
        let (m, g) = (self.m, self.g);
        (2.0 * k + 1.0) * m / SQRT_2
            - 3.0 * g * (2.0 * k * k + 2.0 * k + 1.0) / (8.0 * m * m)
            - g * g * (32.0 * k.powi(3) + 48.0 * k * k + 82.0 * k + 33.0)
                / (16.0 * SQRT_2 * m.powi(5))
    }

    /// Magnitude of the one-instanton imaginary part,
    /// 2^{q0} h^2 (h^6 / 2c^2)^{q0/2} e^{-h^6/6c^2} / (sqrt(2 pi) k!).
    /// The +- branch sign is the caller's.
    pub fn energy_imag_magnitude(&self) -> Result<f64> {
        if !(self.g > 0.0) {
            return Err(Error::Domain("instanton term needs g > 0".into()));
        }
        let h2 = SQRT_2 * self.m;
        let c2 = 0.5 * self.g;
        let h6 = h2.powi(3);
        let q0 = self.q0() as f64;
        let factorial: f64 = (1..=self.k).map(|i| i as f64).product();
        Ok(2f64.powf(q0) * h2 * (h6 / (2.0 * c2)).powf(0.5 * q0) * (-h6 / (6.0 * c2)).exp()
            / ((2.0 * PI).sqrt() * factorial))
    }
}

/// Real part of the truncated series.
pub fn mk_energy_real(k: usize, m: f64, g: f64) -> Result<f64> {
    Ok(MkParams::new(k, m, g)?.energy_real())
}

/// One-instanton imaginary magnitude.
pub fn mk_energy_imag(k: usize, m: f64, g: f64) -> Result<f64> {
    MkParams::new(k, m, g)?.energy_imag_magnitude()
}

/// Pure-quartic coupling scaling E(g) = g^{1/3} E(1).
pub fn symanzik_scale(e_ref: f64, g: f64) -> Result<f64> {
    if !(g > 0.0) {
        return Err(Error::Domain(format!(
            "symanzik_scale needs g > 0 (negative couplings go through the branch average), got {g}"
        )));
    }
    Ok(g.powf(1.0 / 3.0) * e_ref)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn series_reference_rows() {
        // g = 4 rows of the reference grid; the m = sqrt(2) cells are exact
        // rationals up to the f64 representation of sqrt(2).
        assert_relative_eq!(mk_energy_real(0, SQRT_2, 4.0).unwrap(), -3.875, max_relative = 1e-14);
        assert_relative_eq!(mk_energy_real(2, SQRT_2, 4.0).unwrap(), -85.375, max_relative = 1e-14);
        assert_relative_eq!(
            mk_energy_real(2, 10.0_f64.sqrt(), 4.0).unwrap(),
            7.78807604201158,
            max_relative = 1e-12
        );
        assert_relative_eq!(
            mk_energy_real(6, 2000.0_f64.sqrt(), 4.0).unwrap(),
            411.0323095940459,
            max_relative = 1e-12
        );
    }

    #[test]
    fn harmonic_limit() {
        assert_relative_eq!(mk_energy_real(0, 5.0, 0.0).unwrap(), 5.0 / SQRT_2);
        assert!(mk_energy_real(0, 0.0, 1.0).is_err());
    }

    #[test]
    fn hc_parametrization_is_exact() {
        // h^2 = sqrt(2) m, c^2 = g/2
        let m = 10.0_f64.sqrt();
        let g = 4.0_f64;
        let h = (SQRT_2 * m).sqrt();
        let c = (0.5 * g).sqrt();
        let a = MkParams::new(3, m, g).unwrap();
        let b = MkParams::from_hc(3, h, c).unwrap();
        assert_relative_eq!(a.energy_real(), b.energy_real(), max_relative = 1e-14);
        assert_eq!(a.q0(), 7);
    }

    #[test]
    fn instanton_magnitude_reference() {
        // k = 0, m = sqrt(2), g = 4: 4 sqrt(2) e^{-2/3} / sqrt(2 pi)
        let v = mk_energy_imag(0, SQRT_2, 4.0).unwrap();
        assert_relative_eq!(v, 1.15865836229314765, max_relative = 1e-13);
        let direct = 4.0 * SQRT_2 * (-2.0 / 3.0_f64).exp() / (2.0 * PI).sqrt();
        assert_relative_eq!(v, direct, max_relative = 1e-13);
    }

    #[test]
    fn instanton_positive_and_decreasing_in_mass() {
        // Monotone decay holds once the exponential dominates the prefactor
        // (m^3 >~ g); below that the magnitude still stays positive.
        let mut prev = f64::INFINITY;
        for &m in &[2.0, 3.0, 5.0, 7.0, 10.0] {
            let v = mk_energy_imag(1, m, 4.0).unwrap();
            assert!(v > 0.0);
            assert!(v < prev, "not decreasing at m = {m}");
            prev = v;
        }
        assert!(mk_energy_imag(0, 1.0, 4.0).unwrap() > 0.0);
        // exponential suppression as h^6/c^2 grows
        assert!(mk_energy_imag(0, 50.0, 4.0).unwrap() < 1e-100);
    }

    #[test]
    fn symanzik_scaling_basics() {
        assert_relative_eq!(symanzik_scale(1.06036, 1.0).unwrap(), 1.06036);
        assert_relative_eq!(
            symanzik_scale(1.060362090484183, 2.0).unwrap(),
            1.3359725183115545,
            max_relative = 1e-12
        );
        assert_relative_eq!(
            symanzik_scale(1.060362090484183, 10.0).unwrap(),
            2.284480871733851,
            max_relative = 1e-12
        );
        assert!(symanzik_scale(1.0, 0.0).is_err());
        assert!(symanzik_scale(1.0, -2.0).is_err());
    }

    #[test]
    fn symanzik_composition() {
        let e = 1.477;
        let (a, b) = (2.0, 5.0);
        let twice = symanzik_scale(symanzik_scale(e, a).unwrap(), b).unwrap();
        let once = symanzik_scale(e, a * b).unwrap();
        assert_relative_eq!(twice, once, max_relative = 1e-14);
    }
}
