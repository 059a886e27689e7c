//! Stokes-wedge geometry and shooting-contour construction.
//!
//! For large |x| the solutions behave like exp[+-(2/(4+delta)) i^{delta/2}
//! x^{2+delta/2}], which decays inside two wedges of opening 2 pi/(delta+4).
//! The shooting contour is a pair of rays from radius r0 into the origin,
//! one per wedge, run along the wedge centres where the decay is steepest:
//!
//! ```text
//!     theta_L = -pi + delta/(delta+4) * pi/2,
//!     theta_R =       -delta/(delta+4) * pi/2.
//! ```

use crate::error::{Error, Result};
use crate::potential::PotentialSpec;
use crate::C64;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

/// Two rays meeting at the origin, with truncation radius and step size.
///
/// `r0 / h` is rounded to the integer step count; the integrator divides the
/// radius evenly so the last step lands exactly on r = 0. Matching the two
/// rays anywhere other than the origin shifts eigenvalues at the 1e-3 level,
/// so the exact landing matters.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ContourSpec {
    pub theta_l: f64,
    pub theta_r: f64,
    pub r0: f64,
    pub h: f64,
}

impl ContourSpec {
    pub fn new(theta_l: f64, theta_r: f64, r0: f64, h: f64) -> Result<Self> {
        if !(r0 > 0.0) {
            return Err(Error::Config(format!("r0 must be > 0, got {r0}")));
        }
        if !(h > 0.0) {
            return Err(Error::Config(format!("step size h must be > 0, got {h}")));
        }
        if !(-1.5 * PI < theta_l && theta_l <= 0.0) {
            return Err(Error::Config(format!("theta_l out of range: {theta_l}")));
        }
        if !((-0.5 * PI..=0.5 * PI).contains(&theta_r)) {
            return Err(Error::Config(format!("theta_r out of range: {theta_r}")));
        }
        Ok(Self { theta_l, theta_r, r0, h })
    }

    /// Number of RK4 steps per ray.
    pub fn steps(&self) -> usize {
        (self.r0 / self.h).round().max(1.0) as usize
    }

    /// Sample both rays as polylines (outer end first), for external plotting.
    pub fn polylines(&self, points_per_ray: usize) -> (Vec<C64>, Vec<C64>) {
        let sample = |theta: f64| -> Vec<C64> {
            (0..points_per_ray)
                .map(|i| {
                    let r = self.r0 * (points_per_ray - 1 - i) as f64
                        / (points_per_ray - 1).max(1) as f64;
                    C64::from_polar(r, theta)
                })
                .collect()
        };
        (sample(self.theta_l), sample(self.theta_r))
    }
}

/// Wedge centre angles and opening angle for deformation exponent delta.
pub fn wedge_angles(delta: f64) -> Result<(f64, f64, f64)> {
    if !(delta >= 0.0) {
        return Err(Error::Domain(format!("delta must be >= 0, got {delta}")));
    }
    let frac = delta / (delta + 4.0);
    let theta_l = -PI + frac * 0.5 * PI;
    let theta_r = -frac * 0.5 * PI;
    let opening = 2.0 * PI / (delta + 4.0);
    Ok((theta_l, theta_r, opening))
}

/// Real part of the accumulated WKB decay exponent along the ray at `theta`,
/// from the origin out to radius `r`:
///
/// ```text
///     Re  int_0^r sqrt(V(s e^{i theta}) / a) e^{i theta} ds
/// ```
///
/// with the square-root branch of nonnegative real part. The energy term is
/// dropped (the sizing happens far outside any turning point). Used to choose
/// r0 so that the boundary-condition error is negligible.
pub fn wkb_decay_exponent(p: &PotentialSpec, r: f64, theta: f64) -> f64 {
    if r <= 0.0 {
        return 0.0;
    }
    // Composite Simpson; the integrand is smooth along the ray.
    let n = 256;
    let h = r / n as f64;
    let eith = C64::from_polar(1.0, theta);
    let f = |s: f64| -> C64 {
        let x = s * eith;
        let mut root = (p.eval(x) / p.a).sqrt();
        if root.re < 0.0 {
            root = -root;
        }
        root * eith
    };
    let mut acc = f(0.0) + f(r);
    for i in 1..n {
        let w = if i % 2 == 1 { 4.0 } else { 2.0 };
        acc += w * f(i as f64 * h);
    }
    (acc * h / 3.0).re
}

/// Decay exponent demanded of r0; e^{-2*25} puts the boundary error far
/// below every table tolerance.
const R0_TARGET_EXPONENT: f64 = 25.0;
const R0_MIN: f64 = 4.0;
const R0_MAX: f64 = 20.0;
const DEFAULT_STEP: f64 = 5e-4;

/// Build a shooting contour for the potential: wedge-centre angles from the
/// deformation exponent, r0 auto-sized from the WKB decay (clamped to
/// [4, 20]) unless a hint is given, and h defaulting to 5e-4.
pub fn build_contour(p: &PotentialSpec, r0_hint: Option<f64>, h: Option<f64>) -> Result<ContourSpec> {
    let (theta_l, theta_r, _) = wedge_angles(p.delta)?;
    let h = h.unwrap_or(DEFAULT_STEP);
    if !(h > 0.0) {
        return Err(Error::Config(format!("step size h must be > 0, got {h}")));
    }
    let r0 = match r0_hint {
        Some(r) if r > 0.0 => r,
        Some(r) => return Err(Error::Config(format!("r0 must be > 0, got {r}"))),
        None => {
            let mut r = 0.5;
            while r < R0_MAX && wkb_decay_exponent(p, r, theta_r) < R0_TARGET_EXPONENT {
                r += 0.25;
            }
            r.clamp(R0_MIN, R0_MAX)
        }
    };
    ContourSpec::new(theta_l, theta_r, r0, h)
}
