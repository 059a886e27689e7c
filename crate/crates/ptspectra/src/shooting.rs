//! Complex-contour shooting: fixed-step RK4 along the two wedge rays, a
//! phase-corrected mismatch of logarithmic derivatives at the origin, and a
//! secant iteration for the eigenvalues.
//!
//! On the ray x = r e^{i theta} the equation -a psi'' + V psi = E psi becomes
//!
//! ```text
//!     d^2 psi / dr^2 = e^{2 i theta} (V(r e^{i theta}) - E) / a * psi,
//! ```
//!
//! integrated inward from r0 with psi = psi' = 1 (any start works, the
//! mismatch is a ratio). An energy is an eigenvalue exactly when
//!
//! ```text
//!     A(E) = e^{-i theta_L} psi_L'(0)/psi_L(0)
//!          - e^{-i theta_R} psi_R'(0)/psi_R(0) = 0.
//! ```
//!
//! On genuinely complex contours A vanishes at every eigenvalue. On a
//! parity-symmetric real-axis contour the odd levels are instead poles of A
//! (both ray solutions obey the half-line Dirichlet condition there), so the
//! level scan polishes zeros of 1/A at the |A| peaks for those potentials.

use crate::error::{Error, Result};
use crate::potential::PotentialSpec;
use crate::stokes::ContourSpec;
use crate::C64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

/// Renormalization guard: rescale the state once it exceeds this magnitude.
const RESCALE_LIMIT: f64 = 1e100;
/// Below this magnitude psi(0) is treated as a Dirichlet pole of the ratio.
const POLE_FLOOR: f64 = 1e-290;
/// Energy perturbation applied once when a pole is hit mid-iteration.
const POLE_NUDGE: f64 = 1e-7;

/// End state of one ray integration at r = 0.
///
/// The raw amplitude is `psi * exp(scale_log)`; ratios of `psi` and `dpsi`
/// are unaffected by the rescalings.
#[derive(Debug, Clone, Copy)]
pub struct RayEnd {
    pub psi: C64,
    pub dpsi: C64,
    pub scale_log: f64,
}

/// Integrate one ray from r0 down to the origin with classical RK4.
///
/// The step count is round(r0/h) and the radius is divided evenly, so the
/// final step lands exactly on r = 0; matching the rays at any other point
/// biases the eigenvalues.
pub fn integrate_ray(p: &PotentialSpec, energy: f64, theta: f64, r0: f64, h: f64) -> Result<RayEnd> {
    integrate_ray_with_init(p, energy, theta, r0, h, C64::new(1.0, 0.0), C64::new(1.0, 0.0))
}

/// Same as [`integrate_ray`] with explicit initial conditions; the mismatch
/// must be invariant under rescaling them.
pub fn integrate_ray_with_init(
    p: &PotentialSpec,
    energy: f64,
    theta: f64,
    r0: f64,
    h: f64,
    psi0: C64,
    dpsi0: C64,
) -> Result<RayEnd> {
    if !(r0 > 0.0) || !(h > 0.0) {
        return Err(Error::Config(format!("need r0 > 0 and h > 0, got r0 = {r0}, h = {h}")));
    }
    if !energy.is_finite() {
        return Err(Error::Domain(format!("energy must be finite, got {energy}")));
    }
    let n = (r0 / h).round().max(1.0) as usize;
    let eith = C64::from_polar(1.0, theta);
    let phase = eith * eith / p.a;
    let e = C64::new(energy, 0.0);
    let q = |r: f64| phase * (p.eval(r * eith) - e);

    let mut psi = psi0;
    let mut dpsi = dpsi0;
    let mut scale_log = 0.0_f64;
    let nf = n as f64;
    for i in 0..n {
        let r_hi = r0 * (nf - i as f64) / nf;
        let r_lo = r0 * (nf - (i + 1) as f64) / nf;
        let r_mid = 0.5 * (r_hi + r_lo);
        let hh = r_lo - r_hi; // negative: inward

        let k1 = hh * dpsi;
        let l1 = hh * (q(r_hi) * psi);
        let q_mid = q(r_mid);
        let k2 = hh * (dpsi + 0.5 * l1);
        let l2 = hh * (q_mid * (psi + 0.5 * k1));
        let k3 = hh * (dpsi + 0.5 * l2);
        let l3 = hh * (q_mid * (psi + 0.5 * k2));
        let k4 = hh * (dpsi + l3);
        let l4 = hh * (q(r_lo) * (psi + k3));

        psi += (k1 + 2.0 * (k2 + k3) + k4) / 6.0;
        dpsi += (l1 + 2.0 * (l2 + l3) + l4) / 6.0;

        let m = psi.norm().max(dpsi.norm());
        if m > RESCALE_LIMIT {
            psi /= m;
            dpsi /= m;
            scale_log += m.ln();
        }
        if !m.is_finite() {
            return Err(Error::Integration { r: r_lo });
        }
    }
    if !(psi.is_finite() && dpsi.is_finite()) {
        return Err(Error::Integration { r: 0.0 });
    }
    Ok(RayEnd { psi, dpsi, scale_log })
}

/// Phase-corrected mismatch A(E) of the two ray solutions at the origin.
pub fn mismatch(p: &PotentialSpec, energy: f64, c: &ContourSpec) -> Result<C64> {
    let left = integrate_ray(p, energy, c.theta_l, c.r0, c.h)?;
    let right = integrate_ray(p, energy, c.theta_r, c.r0, c.h)?;
    ray_log_derivative(&left, c.theta_l, "left")
        .and_then(|l| Ok(l - ray_log_derivative(&right, c.theta_r, "right")?))
}

fn ray_log_derivative(end: &RayEnd, theta: f64, side: &'static str) -> Result<C64> {
    let mag = end.psi.norm();
    if mag < POLE_FLOOR {
        return Err(Error::PoleCondition { side, psi_abs: mag });
    }
    let ratio = end.dpsi / end.psi;
    if !ratio.is_finite() {
        return Err(Error::PoleCondition { side, psi_abs: mag });
    }
    Ok(C64::from_polar(1.0, -theta) * ratio)
}

/// Secant-iteration tolerances.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct SecantOptions {
    /// Stop once |A(E)| falls below this.
    pub tol_a: f64,
    /// Relative energy increment tolerance.
    pub tol_e: f64,
    pub max_iter: usize,
}

impl Default for SecantOptions {
    fn default() -> Self {
        Self { tol_a: 1e-9, tol_e: 1e-11, max_iter: 100 }
    }
}

/// A converged (or flagged) eigenvalue.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct EigenResult {
    pub energy: f64,
    /// |A(E)| at the final iterate (|1/A| for levels located at ratio poles).
    pub residual: f64,
    pub iterations: usize,
    pub converged: bool,
    pub level_hint: Option<usize>,
}

/// Secant solve on an injected complex-valued mismatch function.
///
/// The update E3 = (E1 A2 - E2 A1)/(A2 - A1) is evaluated in complex
/// arithmetic; the real part is the next iterate and the imaginary part must
/// shrink below the energy tolerance, otherwise the result is flagged
/// unconverged rather than silently projected.
pub fn find_eigenvalue_with<F>(f: F, e1: f64, e2: f64, opts: SecantOptions) -> Result<EigenResult>
where
    F: Fn(f64) -> Result<C64>,
{
    if e1 == e2 {
        return Err(Error::Config("secant seeds must differ".into()));
    }
    // One retry with a nudged energy when a ray lands on a Dirichlet zero.
    let eval = |e: f64| -> Result<(f64, C64)> {
        match f(e) {
            Ok(a) => Ok((e, a)),
            Err(Error::PoleCondition { .. }) => {
                let e2 = e + POLE_NUDGE;
                f(e2).map(|a| (e2, a))
            }
            Err(err) => Err(err),
        }
    };

    let (mut e1, mut a1) = eval(e1)?;
    let (mut e2, mut a2) = eval(e2)?;
    let mut best = if a1.norm() < a2.norm() { (e1, a1.norm()) } else { (e2, a2.norm()) };

    for it in 1..=opts.max_iter {
        if a2 == a1 {
            return Err(Error::StalledSecant { e1, e2 });
        }
        let update = (C64::new(e1, 0.0) * a2 - C64::new(e2, 0.0) * a1) / (a2 - a1);
        let e3 = update.re;
        if !e3.is_finite() {
            return Err(Error::NonConvergence { best: best.0, residual: best.1, iterations: it });
        }
        let scale = e3.abs().max(1.0);
        let im_ok = update.im.abs() <= opts.tol_e * scale;
        let step = (e3 - e2).abs();
        let (e3, a3) = eval(e3)?;
        let res = a3.norm();
        if res < best.1 {
            best = (e3, res);
        }
        let step_ok = step <= opts.tol_e * scale;
        if res <= opts.tol_a && im_ok && (step_ok || res == 0.0) {
            return Ok(EigenResult {
                energy: e3,
                residual: res,
                iterations: it,
                converged: true,
                level_hint: None,
            });
        }
        if step_ok {
            // Increment converged but residual or imaginary drift did not.
            return Ok(EigenResult {
                energy: e3,
                residual: res,
                iterations: it,
                converged: res <= opts.tol_a && im_ok,
                level_hint: None,
            });
        }
        e1 = e2;
        a1 = a2;
        e2 = e3;
        a2 = a3;
    }
    Err(Error::NonConvergence {
        best: best.0,
        residual: best.1,
        iterations: opts.max_iter,
    })
}

/// Secant solve on the shooting mismatch.
pub fn find_eigenvalue(
    p: &PotentialSpec,
    c: &ContourSpec,
    e1: f64,
    e2: f64,
    opts: SecantOptions,
) -> Result<EigenResult> {
    find_eigenvalue_with(|e| mismatch(p, e, c), e1, e2, opts)
}

/// Result of a level scan; `complete` is false when fewer than the requested
/// number of roots converged inside the window.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ScanOutcome {
    pub levels: Vec<EigenResult>,
    pub complete: bool,
}

/// Default |A| sampling density for [`scan_levels`].
pub const DEFAULT_SCAN_GRID: usize = 400;

/// Locate the lowest `n_levels` eigenvalues in `[e_lo, e_hi]`.
///
/// |A(E)| is sampled on a uniform grid (grid points run concurrently), every
/// local minimum seeds the secant solver, converged roots are deduplicated
/// within 1e-6 and sorted ascending. For parity-symmetric real-axis
/// potentials the odd levels appear as poles of A, so the |A| peaks seed a
/// secant on 1/A there as well.
pub fn scan_levels(
    p: &PotentialSpec,
    c: &ContourSpec,
    n_levels: usize,
    e_lo: f64,
    e_hi: f64,
    grid_points: usize,
    opts: SecantOptions,
) -> Result<ScanOutcome> {
    if !(e_lo < e_hi) {
        return Err(Error::Config(format!("need e_lo < e_hi, got [{e_lo}, {e_hi}]")));
    }
    if n_levels == 0 {
        return Err(Error::Config("n_levels must be >= 1".into()));
    }
    let grid = grid_points.max(16);
    let step = (e_hi - e_lo) / (grid - 1) as f64;
    let energies: Vec<f64> = (0..grid).map(|i| e_lo + step * i as f64).collect();

    // |A| over the grid; Dirichlet poles register as infinite magnitude.
    let mags: Vec<f64> = energies
        .par_iter()
        .map(|&e| match mismatch(p, e, c) {
            Ok(a) => Ok(a.norm()),
            Err(Error::PoleCondition { .. }) => Ok(f64::INFINITY),
            Err(err) => Err(err),
        })
        .collect::<Result<Vec<f64>>>()?;

    let mut candidates: Vec<EigenResult> = Vec::new();
    let mut polish = |e_seed: f64, invert: bool| {
        let result = if invert {
            find_eigenvalue_with(
                |e| {
                    mismatch(p, e, c).map(|a| {
                        if a.norm() == 0.0 {
                            C64::new(f64::INFINITY, 0.0)
                        } else {
                            a.inv()
                        }
                    })
                },
                e_seed,
                e_seed + 0.4 * step,
                opts,
            )
        } else {
            find_eigenvalue(p, c, e_seed, e_seed + 0.4 * step, opts)
        };
        if let Ok(r) = result {
            if r.converged && r.energy >= e_lo - step && r.energy <= e_hi + step {
                candidates.push(r);
            }
        }
    };

    for i in 1..grid - 1 {
        if mags[i].is_finite() && mags[i] <= mags[i - 1] && mags[i] <= mags[i + 1] {
            polish(energies[i], false);
        }
    }
    if p.is_real_symmetric() && c.theta_r.abs() < 1e-12 {
        // Every |A| peak of a symmetric real-axis problem is a Dirichlet
        // pole, i.e. an odd level; 1/A has a simple zero there.
        for i in 1..grid - 1 {
            if mags[i] >= mags[i - 1] && mags[i] >= mags[i + 1] {
                polish(energies[i], true);
            }
        }
    }

    candidates.sort_by(|a, b| a.energy.total_cmp(&b.energy));
    let mut levels: Vec<EigenResult> = Vec::new();
    for cand in candidates {
        match levels.last_mut() {
            Some(last) if (cand.energy - last.energy).abs() < 1e-6 => {
                if cand.residual < last.residual {
                    *last = cand;
                }
            }
            _ => levels.push(cand),
        }
    }
    levels.truncate(n_levels);
    for (i, level) in levels.iter_mut().enumerate() {
        level.level_hint = Some(i);
    }
    let complete = levels.len() == n_levels;
    Ok(ScanOutcome { levels, complete })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::potential::{HamiltonianPreset, QuarticSign};
    use crate::stokes::build_contour;
    use approx::assert_relative_eq;

    fn harmonic() -> PotentialSpec {
        // -d^2/dx^2 + x^2, eigenvalues 2n + 1
        PotentialSpec::new(1.0, 0.0, 1.0, 0.0, 0.0, QuarticSign::Plus).unwrap()
    }

    fn real_axis(r0: f64, h: f64) -> ContourSpec {
        ContourSpec::new(-std::f64::consts::PI, 0.0, r0, h).unwrap()
    }

    #[test]
    fn harmonic_ground_state_log_derivative_vanishes() {
        let p = harmonic();
        let end = integrate_ray(&p, 1.0, 0.0, 8.0, 1e-3).unwrap();
        let ratio = (end.dpsi / end.psi).norm();
        assert!(ratio < 1e-8, "psi'(0)/psi(0) = {ratio}");
    }

    #[test]
    fn initial_condition_scale_drops_out() {
        let p = harmonic();
        let a = integrate_ray(&p, 1.0, 0.0, 8.0, 1e-3).unwrap();
        let b = integrate_ray_with_init(
            &p,
            1.0,
            0.0,
            8.0,
            1e-3,
            C64::new(2.0, 0.0),
            C64::new(2.0, 0.0),
        )
        .unwrap();
        let ra = a.dpsi / a.psi;
        let rb = b.dpsi / b.psi;
        assert!((ra - rb).norm() <= 1e-14 * ra.norm().max(1.0));
    }

    #[test]
    fn renormalization_accumulates_scale_log() {
        // A deep harmonic well grows far past the rescale limit.
        let p = PotentialSpec::new(1.0, 0.0, 1000.0, 0.0, 0.0, QuarticSign::Plus).unwrap();
        let end = integrate_ray(&p, 31.0, 0.0, 12.0, 5e-4).unwrap();
        assert!(end.scale_log > 0.0, "expected at least one rescale");
        assert!(end.psi.is_finite() && end.dpsi.is_finite());
    }

    #[test]
    fn harmonic_mismatch_zero_at_even_eigenvalue() {
        let p = harmonic();
        let c = real_axis(8.0, 1e-3);
        let a1 = mismatch(&p, 1.0, &c).unwrap().norm();
        assert!(a1 < 1e-7, "|A(1)| = {a1}");
        let a2 = mismatch(&p, 2.0, &c).unwrap().norm();
        assert!(a2 > 0.1, "|A(2)| = {a2}");
    }

    #[test]
    fn secant_exact_on_affine_mismatch() {
        let r = find_eigenvalue_with(
            |e| Ok(C64::new(e - 5.0, 0.0)),
            0.0,
            1.0,
            SecantOptions::default(),
        )
        .unwrap();
        assert_eq!(r.energy, 5.0);
        assert_eq!(r.iterations, 1);
        assert!(r.converged);
    }

    #[test]
    fn secant_rejects_equal_seeds_and_stalls() {
        assert!(find_eigenvalue_with(|e| Ok(C64::new(e, 0.0)), 1.0, 1.0, SecantOptions::default())
            .is_err());
        let stalled = find_eigenvalue_with(
            |_| Ok(C64::new(1.0, 0.0)),
            0.0,
            1.0,
            SecantOptions::default(),
        );
        assert!(matches!(stalled, Err(Error::StalledSecant { .. })));
    }

    #[test]
    fn secant_retries_once_past_a_pole() {
        // First probe of E = 0.5 lands on a ratio pole; the solver nudges
        // the energy by 1e-7 and proceeds to the root at 2.
        let calls = std::cell::Cell::new(0usize);
        let f = |e: f64| -> crate::Result<C64> {
            calls.set(calls.get() + 1);
            if e == 0.5 {
                Err(Error::PoleCondition { side: "left", psi_abs: 0.0 })
            } else {
                Ok(C64::new(e - 2.0, 0.0))
            }
        };
        let r = find_eigenvalue_with(f, 0.5, 1.0, SecantOptions::default()).unwrap();
        assert!(r.converged);
        assert!((r.energy - 2.0).abs() < 1e-12);
    }

    #[test]
    fn secant_reports_nonconvergence_with_best_iterate() {
        // No real root: A(E) = i + (E-2)^2 keeps |A| >= 1.
        let r = find_eigenvalue_with(
            |e| Ok(C64::new((e - 2.0) * (e - 2.0), 1.0)),
            0.0,
            1.0,
            SecantOptions { max_iter: 8, ..Default::default() },
        );
        match r {
            Err(Error::NonConvergence { residual, .. }) => assert!(residual >= 1.0),
            Ok(res) => assert!(!res.converged),
            Err(other) => panic!("unexpected error {other}"),
        }
    }

    #[test]
    fn harmonic_eigenvalue_by_secant() {
        let p = harmonic();
        let c = real_axis(8.0, 1e-3);
        let r = find_eigenvalue(&p, &c, 0.9, 1.05, SecantOptions::default()).unwrap();
        assert!(r.converged);
        assert_relative_eq!(r.energy, 1.0, epsilon = 1e-9);
    }

    #[test]
    fn harmonic_scan_finds_odd_integer_ladder() {
        let p = harmonic();
        let c = real_axis(8.5, 1e-3);
        let out = scan_levels(&p, &c, 5, 0.0, 10.0, 200, SecantOptions::default()).unwrap();
        assert!(out.complete);
        for (n, level) in out.levels.iter().enumerate() {
            assert_relative_eq!(level.energy, (2 * n + 1) as f64, epsilon = 1e-7);
            assert_eq!(level.level_hint, Some(n));
        }
    }

    #[test]
    fn pt_inverted_ground_state() {
        let p = HamiltonianPreset::PtInverted { g: 1.0, hbar: 1.0, m_kin: 0.5 }
            .to_spec()
            .unwrap();
        let c = build_contour(&p, None, Some(1e-3)).unwrap();
        let r = find_eigenvalue(&p, &c, 1.4, 1.55, SecantOptions::default()).unwrap();
        assert!(r.converged);
        assert_relative_eq!(r.energy, 1.4771497535, epsilon = 1e-6);
        // the mismatch is already small at the tabulated 6-figure energy
        let a = mismatch(&p, 1.47714, &c).unwrap().norm();
        assert!(a < 1e-4, "|A(1.47714)| = {a}");
    }

    #[test]
    fn pt_inverted_g2_from_loose_seeds() {
        let p = HamiltonianPreset::PtInverted { g: 2.0, hbar: 1.0, m_kin: 0.5 }
            .to_spec()
            .unwrap();
        let c = build_contour(&p, None, Some(1e-3)).unwrap();
        let r = find_eigenvalue(&p, &c, 1.7, 2.0, SecantOptions::default()).unwrap();
        assert!(r.converged);
        assert!((r.energy - 1.86109).abs() < 1e-5, "E0(g=2) = {}", r.energy);
    }

    #[test]
    fn hermitian_quartic_mismatch_small_at_tabulated_energy() {
        let p = HamiltonianPreset::MasslessQuartic { g: 1.0, hbar: 1.0 }.to_spec().unwrap();
        let c = build_contour(&p, None, Some(1e-3)).unwrap();
        let a = mismatch(&p, 1.06036, &c).unwrap().norm();
        assert!(a < 1e-3, "|A(1.06036)| = {a}");
    }

    #[test]
    fn scan_flags_partial_results() {
        let p = harmonic();
        let c = real_axis(8.0, 1e-3);
        // only two eigenvalues (1, 3) live below 4
        let out = scan_levels(&p, &c, 5, 0.0, 4.0, 120, SecantOptions::default()).unwrap();
        assert!(!out.complete);
        assert!(out.levels.len() == 2);
    }
}
