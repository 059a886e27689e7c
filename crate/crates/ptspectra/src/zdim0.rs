//! Zero-dimensional partition functions of the quartic potential family, in
//! closed form and by direct contour quadrature.
//!
//! The massive cases are scaled to eps = g/m^4 with t = m sqrt(eps) x, which
//! pulls a 1/(m sqrt(eps)) prefactor out front:
//!
//! ```text
//!     Z1 = pref int_R       exp[-(t^4/4 + t^2/2)/eps] dt
//!     Z2 = pref int_{C_PT}  exp[ (t^4/4 - t^2/2)/eps] dt
//!     Z5 = pref int_R       exp[ (t^2/2 - t^4/4)/eps] dt
//!     Z6 = pref int_{C_PT}  exp[ (t^2/2 + t^4/4)/eps] dt
//! ```
//!
//! and the massless family keeps the coupling explicit:
//!
//! ```text
//!     Z3 = int_R      exp(-g x^4/4) dx          Z4 = int_{C_PT} exp(+g x^4/4) dx
//!     Z7 = int_R  x^2 exp(-g x^4/4) dx          Z8 = int_{C_PT} x^2 exp(+g x^4/4) dx
//!     Z_{2N+5} = int_R      x^{2N} exp(-m^2 x^2/2 - g x^4/4) dx
//!     Z_{2N+6} = int_{C_PT} x^{2N} exp(-m^2 x^2/2 + g x^4/4) dx
//! ```
//!
//! C_PT runs from infinity on the theta = -3pi/4 ray through the origin and
//! back out along theta = -pi/4; that orientation reproduces the positive Z4
//! and the negative Z8 simultaneously. Z1 and Z2 have no closed form here and
//! evaluate by quadrature only; each PT-case closed form is proved in the
//! test suite by comparing against its defining contour integral.

use crate::error::{Error, Result};
use crate::specfun::{self, BranchSide};
use crate::C64;
use serde::{Deserialize, Serialize};
use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI, SQRT_2};

/// One of the partition-function integrals.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum PartitionCase {
    Z1 { m: f64, eps: f64 },
    Z2 { m: f64, eps: f64 },
    Z3 { g: f64 },
    Z4 { g: f64 },
    Z5 { m: f64, eps: f64 },
    Z6 { m: f64, eps: f64 },
    Z7 { g: f64 },
    Z8 { g: f64 },
    /// x^{2N} moment of the Hermitian massive integrand (O(2N+1) models).
    Z2n5 { n: u32, m: f64, g: f64 },
    /// x^{2N} moment over the PT contour.
    Z2n6 { n: u32, m: f64, g: f64 },
}

impl PartitionCase {
    pub fn label(&self) -> String {
        use PartitionCase::*;
        match self {
            Z1 { .. } => "Z1".into(),
            Z2 { .. } => "Z2".into(),
            Z3 { .. } => "Z3".into(),
            Z4 { .. } => "Z4".into(),
            Z5 { .. } => "Z5".into(),
            Z6 { .. } => "Z6".into(),
            Z7 { .. } => "Z7".into(),
            Z8 { .. } => "Z8".into(),
            Z2n5 { n, .. } => format!("Z2N5[N={n}]"),
            Z2n6 { n, .. } => format!("Z2N6[N={n}]"),
        }
    }

    fn validate(&self) -> Result<()> {
        use PartitionCase::*;
        let (m, coupling) = match *self {
            Z1 { m, eps } | Z2 { m, eps } | Z5 { m, eps } | Z6 { m, eps } => (m, eps),
            Z3 { g } | Z4 { g } | Z7 { g } | Z8 { g } => (1.0, g),
            Z2n5 { m, g, .. } | Z2n6 { m, g, .. } => (m, g),
        };
        if !(m > 0.0) {
            return Err(Error::Domain(format!("{}: m must be > 0, got {m}", self.label())));
        }
        if !(coupling > 0.0) {
            return Err(Error::Domain(format!(
                "{}: coupling must be > 0, got {coupling}",
                self.label()
            )));
        }
        Ok(())
    }

    fn is_pt(&self) -> bool {
        use PartitionCase::*;
        matches!(self, Z2 { .. } | Z4 { .. } | Z6 { .. } | Z8 { .. } | Z2n6 { .. })
    }

    /// Integrand including the scaling prefactor.
    fn integrand(&self) -> impl Fn(C64) -> C64 + Sync + '_ {
        use PartitionCase::*;
        let case = *self;
        move |t: C64| -> C64 {
            let t2 = t * t;
            let t4 = t2 * t2;
            match case {
                Z1 { m, eps } => (-(t4 / 4.0 + t2 / 2.0) / eps).exp() / (m * eps.sqrt()),
                Z2 { m, eps } => ((t4 / 4.0 - t2 / 2.0) / eps).exp() / (m * eps.sqrt()),
                Z5 { m, eps } => ((t2 / 2.0 - t4 / 4.0) / eps).exp() / (m * eps.sqrt()),
                Z6 { m, eps } => ((t2 / 2.0 + t4 / 4.0) / eps).exp() / (m * eps.sqrt()),
                Z3 { g } => (-g * t4 / 4.0).exp(),
                Z4 { g } => (g * t4 / 4.0).exp(),
                Z7 { g } => t2 * (-g * t4 / 4.0).exp(),
                Z8 { g } => t2 * (g * t4 / 4.0).exp(),
                Z2n5 { n, m, g } => {
                    t2.powi(n as i32) * (-(m * m) * t2 / 2.0 - g * t4 / 4.0).exp()
                }
                Z2n6 { n, m, g } => {
                    t2.powi(n as i32) * (-(m * m) * t2 / 2.0 + g * t4 / 4.0).exp()
                }
            }
        }
    }
}

/// Printed closed forms, evaluated with the in-repo special functions.
pub fn z_closed(case: &PartitionCase) -> Result<C64> {
    use PartitionCase::*;
    case.validate()?;
    let real = |v: f64| C64::new(v, 0.0);
    match *case {
        Z1 { .. } | Z2 { .. } => Err(Error::UnsupportedClosedForm(case.label())),
        Z3 { g } => Ok(real(specfun::gamma(0.25)? / (SQRT_2 * g.powf(0.25)))),
        Z4 { g } => Ok(real(specfun::gamma(0.25)? / (2.0 * g.powf(0.25)))),
        Z5 { m, eps } => {
            let x = 1.0 / (8.0 * eps);
            let pair = specfun::bessel_i(-0.25, x)? + specfun::bessel_i(0.25, x)?;
            Ok(real(PI * x.exp() / (2.0 * m * eps.sqrt()) * pair))
        }
        Z6 { m, eps } => {
            let x = 1.0 / (8.0 * eps);
            Ok(real((-x).exp() * specfun::bessel_k(-0.25, x)? / (2.0 * m * eps.sqrt())))
        }
        Z7 { g } => Ok(real(SQRT_2 * specfun::gamma(0.75)? * g.powf(-0.75))),
        Z8 { g } => Ok(real(-specfun::gamma(0.75)? * g.powf(-0.75))),
        Z2n5 { n, m, g } => {
            let nf = n as f64;
            let w = m.powi(4) / (4.0 * g);
            let term1 = g.sqrt()
                * specfun::gamma(nf / 2.0 + 0.25)?
                * specfun::kummer_1f1(nf / 2.0 + 0.25, 0.5, w)?;
            let term2 = m
                * m
                * specfun::gamma(nf / 2.0 + 0.75)?
                * specfun::kummer_1f1(nf / 2.0 + 0.75, 1.5, w)?;
            Ok(real(
                2f64.powf(nf - 0.5) * g.powf(-nf / 2.0 - 0.75) * (term1 - term2),
            ))
        }
        Z2n6 { n, m, g } => {
            let nf = n as f64;
            let w = m.powi(4) / (4.0 * g);
            let c_plus = (FRAC_PI_2 * (nf + 0.5)).cos();
            let c_minus = (FRAC_PI_2 * (nf - 0.5)).cos();
            let term1 = g.sqrt()
                * specfun::gamma(nf / 2.0 + 0.25)?
                * specfun::kummer_1f1(nf / 2.0 + 0.25, 0.5, -w)?
                * c_plus;
            let term2 = m
                * m
                * specfun::gamma(nf / 2.0 + 0.75)?
                * specfun::kummer_1f1(nf / 2.0 + 0.75, 1.5, -w)?
                * c_minus;
            Ok(real(
                2f64.powf(nf - 0.5) * g.powf(-nf / 2.0 - 0.75) * (term1 + term2),
            ))
        }
    }
}

/// Branch continuation of the Z_{2N+5} closed form to -g +- i0: the powers
/// g^{-N/2-3/4} and sqrt(g) pick up their branch phases and the 1F1 argument
/// flips to -m^4/(4g), which the Kummer transformation handles without
/// cancellation.
pub fn z2n5_continued(n: u32, m: f64, g: f64, side: BranchSide) -> Result<C64> {
    if !(g > 0.0) || !(m > 0.0) {
        return Err(Error::Domain("z2n5_continued needs m > 0 and g > 0".into()));
    }
    let nf = n as f64;
    let prefactor = specfun::branch_power(g, -nf / 2.0 - 0.75, side)?;
    let sqrt_g = specfun::branch_power(g, 0.5, side)?;
    let term1 = sqrt_g
        * specfun::gamma(nf / 2.0 + 0.25)?
        * specfun::kummer_1f1(nf / 2.0 + 0.25, 0.5, -m.powi(4) / (4.0 * g))?;
    let term2 = m * m * specfun::gamma(nf / 2.0 + 0.75)?
        * specfun::kummer_1f1(nf / 2.0 + 0.75, 1.5, -m.powi(4) / (4.0 * g))?;
    Ok(2f64.powf(nf - 0.5) * prefactor * (term1 - term2))
}

/// Quadrature method selector.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum QuadMethod {
    CompositeSimpson,
    GaussAdaptive,
}

/// Contour quadrature configuration. An empty `ray_angles` derives the
/// contour from the case (real axis for the Hermitian integrals, the two PT
/// rays otherwise); one angle means a straight line through the origin, two
/// mean in along the first ray and out along the second.
#[derive(Debug, Clone)]
pub struct QuadratureSpec {
    pub ray_angles: Vec<f64>,
    pub r_max: Option<f64>,
    pub abs_tol: f64,
    pub method: QuadMethod,
}

impl Default for QuadratureSpec {
    fn default() -> Self {
        Self {
            ray_angles: Vec::new(),
            r_max: None,
            abs_tol: 1e-10,
            method: QuadMethod::CompositeSimpson,
        }
    }
}

/// Quadrature output with the Richardson (or bisection) error estimate.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct QuadratureValue {
    pub value: C64,
    pub est_error: f64,
    pub r_max: f64,
}

enum Contour {
    Line { angle: f64 },
    TwoRays { inbound: f64, outbound: f64 },
}

const PT_IN: f64 = -3.0 * FRAC_PI_4;
const PT_OUT: f64 = -FRAC_PI_4;
const R_MAX_SEARCH_LIMIT: f64 = 40.0;

/// Evaluate the defining integral of a case along its contour.
pub fn z_quadrature(case: &PartitionCase, spec: &QuadratureSpec) -> Result<QuadratureValue> {
    case.validate()?;
    let contour = match spec.ray_angles.len() {
        0 => {
            if case.is_pt() {
                Contour::TwoRays { inbound: PT_IN, outbound: PT_OUT }
            } else {
                Contour::Line { angle: 0.0 }
            }
        }
        1 => Contour::Line { angle: spec.ray_angles[0] },
        2 => Contour::TwoRays { inbound: spec.ray_angles[0], outbound: spec.ray_angles[1] },
        n => return Err(Error::Config(format!("expected 0, 1 or 2 ray angles, got {n}"))),
    };
    let f = case.integrand();
    integrate_contour(&f, &contour, spec)
}

fn integrate_contour<F>(f: &F, contour: &Contour, spec: &QuadratureSpec) -> Result<QuadratureValue>
where
    F: Fn(C64) -> C64,
{
    let angles: Vec<f64> = match contour {
        Contour::Line { angle } => vec![*angle, angle + PI],
        Contour::TwoRays { inbound, outbound } => vec![*inbound, *outbound],
    };
    let r_max = match spec.r_max {
        Some(r) if r > 0.0 => r,
        Some(r) => return Err(Error::Config(format!("r_max must be > 0, got {r}"))),
        None => auto_r_max(f, &angles, spec.abs_tol)?,
    };
    // Decay precondition on every ray end.
    let f0 = f(C64::new(0.0, 0.0)).norm();
    for &angle in &angles {
        let tail = f(C64::from_polar(r_max, angle)).norm();
        if !(tail <= 1e-3 * (f0 + 1.0)) {
            return Err(Error::ContourDivergence { r: r_max, magnitude: tail });
        }
    }

    let ray = |angle: f64| -> Result<(C64, f64)> {
        let phase = C64::from_polar(1.0, angle);
        let g = |s: f64| f(s * phase);
        let (v, e) = integrate_half_line(&g, r_max, spec)?;
        Ok((phase * v, e))
    };
    match contour {
        Contour::Line { angle } => {
            // int_{-r}^{r} along the line = outbound ray minus the mirrored ray
            let (v_out, e_out) = ray(*angle)?;
            let (v_in, e_in) = ray(angle + PI)?;
            Ok(QuadratureValue { value: v_out - v_in, est_error: e_out + e_in, r_max })
        }
        Contour::TwoRays { inbound, outbound } => {
            let (v_out, e_out) = ray(*outbound)?;
            let (v_in, e_in) = ray(*inbound)?;
            Ok(QuadratureValue { value: v_out - v_in, est_error: e_out + e_in, r_max })
        }
    }
}

fn auto_r_max<F>(f: &F, angles: &[f64], abs_tol: f64) -> Result<f64>
where
    F: Fn(C64) -> C64,
{
    let threshold = 1e-12_f64.min(0.01 * abs_tol);
    let mut r = 1.0;
    while r <= R_MAX_SEARCH_LIMIT {
        let worst = angles
            .iter()
            .map(|&a| f(C64::from_polar(r, a)).norm())
            .fold(0.0_f64, f64::max);
        if worst < threshold {
            return Ok(r);
        }
        r += 0.5;
    }
    let worst = angles
        .iter()
        .map(|&a| f(C64::from_polar(R_MAX_SEARCH_LIMIT, a)).norm())
        .fold(0.0_f64, f64::max);
    Err(Error::ContourDivergence { r: R_MAX_SEARCH_LIMIT, magnitude: worst })
}

fn integrate_half_line<G>(g: &G, r_max: f64, spec: &QuadratureSpec) -> Result<(C64, f64)>
where
    G: Fn(f64) -> C64,
{
    match spec.method {
        QuadMethod::CompositeSimpson => simpson_refined(g, 0.0, r_max, spec.abs_tol),
        QuadMethod::GaussAdaptive => {
            let mut est = 0.0;
            let v = gauss_adaptive(g, 0.0, r_max, spec.abs_tol, 0, &mut est)?;
            Ok((v, est))
        }
    }
}

fn simpson_sum<G>(g: &G, a: f64, b: f64, panels: usize) -> C64
where
    G: Fn(f64) -> C64,
{
    let h = (b - a) / panels as f64;
    let mut acc = g(a) + g(b);
    for i in 1..panels {
        let w = if i % 2 == 1 { 4.0 } else { 2.0 };
        acc += w * g(a + i as f64 * h);
    }
    acc * (h / 3.0)
}

/// Composite Simpson with Richardson refinement; the doubling difference is
/// the error estimate and the extrapolated value is returned.
fn simpson_refined<G>(g: &G, a: f64, b: f64, abs_tol: f64) -> Result<(C64, f64)>
where
    G: Fn(f64) -> C64,
{
    let mut panels = 64;
    let mut coarse = simpson_sum(g, a, b, panels);
    loop {
        panels *= 2;
        let fine = simpson_sum(g, a, b, panels);
        let est = (fine - coarse).norm() / 15.0;
        if est <= abs_tol {
            return Ok((fine + (fine - coarse) / 15.0, est));
        }
        if panels >= (1 << 20) {
            return Err(Error::AccuracyFailure { achieved: est, requested: abs_tol });
        }
        coarse = fine;
    }
}

// 10-point Gauss-Legendre nodes and weights on [-1, 1].
const GL_NODES: [f64; 5] = [
    0.1488743389816312,
    0.4333953941292472,
    0.6794095682990244,
    0.8650633666889845,
    0.9739065285171717,
];
const GL_WEIGHTS: [f64; 5] = [
    0.2955242247147529,
    0.2692667193099963,
    0.2190863625159820,
    0.1494513491505806,
    0.0666713443086881,
];

fn gauss10<G>(g: &G, a: f64, b: f64) -> C64
where
    G: Fn(f64) -> C64,
{
    let mid = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let mut acc = C64::new(0.0, 0.0);
    for i in 0..5 {
        acc += GL_WEIGHTS[i] * (g(mid + half * GL_NODES[i]) + g(mid - half * GL_NODES[i]));
    }
    acc * half
}

fn gauss_adaptive<G>(
    g: &G,
    a: f64,
    b: f64,
    tol: f64,
    depth: usize,
    est: &mut f64,
) -> Result<C64>
where
    G: Fn(f64) -> C64,
{
    let whole = gauss10(g, a, b);
    let mid = 0.5 * (a + b);
    let split = gauss10(g, a, mid) + gauss10(g, mid, b);
    let err = (split - whole).norm();
    if err <= tol || depth >= 30 {
        if depth >= 30 && err > tol {
            return Err(Error::AccuracyFailure { achieved: err, requested: tol });
        }
        *est += err;
        return Ok(split);
    }
    Ok(gauss_adaptive(g, a, mid, 0.5 * tol, depth + 1, est)?
        + gauss_adaptive(g, mid, b, 0.5 * tol, depth + 1, est)?)
}

/// Z1 continued to eps e^{+-i pi} by rotating the integration line by
/// +-pi/4 (the scaled variable carries half the coupling phase, so the
/// rotation sign is opposite to the bare -theta/4 rule).
pub fn z1_continued(m: f64, eps: f64, side: BranchSide) -> Result<C64> {
    continued_line(m, eps, side, |t2: C64, t4: C64, inv_eps: f64| {
        ((t4 / 4.0 + t2 / 2.0) * inv_eps).exp()
    })
}

/// Z5 continued to eps e^{+-i pi}; same rotation, double-well integrand.
pub fn z5_continued(m: f64, eps: f64, side: BranchSide) -> Result<C64> {
    continued_line(m, eps, side, |t2: C64, t4: C64, inv_eps: f64| {
        ((t4 / 4.0 - t2 / 2.0) * inv_eps).exp()
    })
}

fn continued_line<F>(m: f64, eps: f64, side: BranchSide, f: F) -> Result<C64>
where
    F: Fn(C64, C64, f64) -> C64,
{
    if !(m > 0.0) || !(eps > 0.0) {
        return Err(Error::Domain("continuation needs m > 0 and eps > 0".into()));
    }
    let s = side.sign();
    // 1 / sqrt(eps e^{+-i pi}) = e^{-+i pi/2} / sqrt(eps); the coupling phase
    // itself enters as 1/eps' = -1/eps exactly, the limit being analytic.
    let prefactor = C64::from_polar(1.0 / (m * eps.sqrt()), -s * FRAC_PI_2);
    let integrand = |t: C64| {
        let t2 = t * t;
        f(t2, t2 * t2, 1.0 / eps)
    };
    let spec = QuadratureSpec::default();
    let contour = Contour::Line { angle: s * FRAC_PI_4 };
    let q = integrate_contour(&integrand, &contour, &spec)?;
    Ok(prefactor * q.value)
}
