//! Brute-force oracle for real-axis spectra: the Hamiltonian is expanded in
//! the eigenbasis of a reference harmonic oscillator and diagonalized with
//! cyclic Jacobi rotations.
//!
//! With kinetic term -a d^2/dx^2 and basis frequency omega the position
//! operator is x = sqrt(a/omega)(A + A+), giving the band-4 matrix
//!
//! ```text
//!     kinetic:  diag omega(2n+1)/4,  (n, n+2): -omega/4 sqrt((n+1)(n+2))
//!     x^2:      (a/omega) [(2n+1) diag + sqrt((n+1)(n+2)) on (n, n+2)]
//!     x^4:      (a/omega)^2 [3(2n^2+2n+1) diag, (4n+6)sqrt((n+1)(n+2)),
//!                sqrt((n+1)(n+2)(n+3)(n+4)) on (n, n+4)]
//!     x:        sqrt(a/omega) sqrt(n+1) on (n, n+1)
//! ```
//!
//! Only delta = 0 potentials are representable; the PT-contour problems are
//! not real symmetric matrices and stay with the shooting solver.

use crate::error::{Error, Result};
use crate::potential::PotentialSpec;

/// Truncation size and reference frequency of the oscillator basis.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BasisConfig {
    pub size: usize,
    pub omega: f64,
}

impl BasisConfig {
    pub fn new(size: usize, omega: f64) -> Result<Self> {
        if size < 10 {
            return Err(Error::Config(format!("basis size must be >= 10, got {size}")));
        }
        if !(omega > 0.0) {
            return Err(Error::Config(format!("basis frequency must be > 0, got {omega}")));
        }
        Ok(Self { size, omega })
    }
}

/// Dense symmetric matrix in row-major storage.
#[derive(Debug, Clone)]
pub struct SymMatrix {
    pub n: usize,
    pub data: Vec<f64>,
}

impl SymMatrix {
    fn zeros(n: usize) -> Self {
        Self { n, data: vec![0.0; n * n] }
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.n + j]
    }

    #[inline]
    fn add_sym(&mut self, i: usize, j: usize, v: f64) {
        self.data[i * self.n + j] += v;
        if i != j {
            self.data[j * self.n + i] += v;
        }
    }

    pub fn trace(&self) -> f64 {
        (0..self.n).map(|i| self.get(i, i)).sum()
    }

    fn max_abs(&self) -> f64 {
        self.data.iter().fold(0.0_f64, |m, v| m.max(v.abs()))
    }

    fn symmetry_defect(&self) -> f64 {
        let mut worst = 0.0_f64;
        for i in 0..self.n {
            for j in (i + 1)..self.n {
                worst = worst.max((self.get(i, j) - self.get(j, i)).abs());
            }
        }
        worst
    }
}

/// Matrix of -a d^2/dx^2 + c1 x + c2 x^2 + sign c4 x^4 in the oscillator
/// basis. Exactly symmetric by construction.
pub fn hamiltonian_matrix(p: &PotentialSpec, b: &BasisConfig) -> Result<SymMatrix> {
    if p.delta != 0.0 {
        return Err(Error::Domain(
            "oscillator-basis oracle requires delta = 0 (real polynomial potential)".into(),
        ));
    }
    let n = b.size;
    let ratio = p.a / b.omega;
    let mut m = SymMatrix::zeros(n);
    for i in 0..n {
        let nf = i as f64;
        // kinetic + x^2 diagonal
        m.add_sym(i, i, b.omega * (2.0 * nf + 1.0) / 4.0 + p.c2 * ratio * (2.0 * nf + 1.0));
        if i + 2 < n {
            let s2 = ((nf + 1.0) * (nf + 2.0)).sqrt();
            m.add_sym(i, i + 2, (-b.omega / 4.0 + p.c2 * ratio) * s2);
        }
        if p.c1 != 0.0 && i + 1 < n {
            m.add_sym(i, i + 1, p.c1 * ratio.sqrt() * (nf + 1.0).sqrt());
        }
    }
    if p.c4 != 0.0 {
        let q = p.c4_sign.as_f64() * p.c4 * ratio * ratio;
        for i in 0..n {
            let nf = i as f64;
            m.add_sym(i, i, q * 3.0 * (2.0 * nf * nf + 2.0 * nf + 1.0));
            if i + 2 < n {
                let s2 = ((nf + 1.0) * (nf + 2.0)).sqrt();
                m.add_sym(i, i + 2, q * (4.0 * nf + 6.0) * s2);
            }
            if i + 4 < n {
                let s4 = ((nf + 1.0) * (nf + 2.0) * (nf + 3.0) * (nf + 4.0)).sqrt();
                m.add_sym(i, i + 4, q * s4);
            }
        }
    }
    Ok(m)
}

/// Full spectrum of a symmetric matrix by cyclic Jacobi rotations, ascending.
pub fn diagonalize(m: &SymMatrix) -> Result<Vec<f64>> {
    let scale = m.max_abs().max(1.0);
    if m.symmetry_defect() > 1e-12 * scale {
        return Err(Error::ContractViolation(format!(
            "matrix is not symmetric: defect {} at scale {}",
            m.symmetry_defect(),
            scale
        )));
    }
    let n = m.n;
    let mut a = m.data.clone();
    let idx = |i: usize, j: usize| i * n + j;
    let off = |a: &Vec<f64>| -> f64 {
        let mut s = 0.0;
        for i in 0..n {
            for j in (i + 1)..n {
                s += a[idx(i, j)] * a[idx(i, j)];
            }
        }
        (2.0 * s).sqrt()
    };
    let target = 1e-12 * scale * (n as f64);
    for _sweep in 0..50 {
        if off(&a) <= target {
            break;
        }
        for p_ in 0..n {
            for q_ in (p_ + 1)..n {
                let apq = a[idx(p_, q_)];
                if apq.abs() <= 1e-300 {
                    continue;
                }
                let app = a[idx(p_, p_)];
                let aqq = a[idx(q_, q_)];
                let tau = (aqq - app) / (2.0 * apq);
                let t = if tau >= 0.0 {
                    1.0 / (tau + (1.0 + tau * tau).sqrt())
                } else {
                    -1.0 / (-tau + (1.0 + tau * tau).sqrt())
                };
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = t * c;
                for k in 0..n {
                    let akp = a[idx(k, p_)];
                    let akq = a[idx(k, q_)];
                    a[idx(k, p_)] = c * akp - s * akq;
                    a[idx(k, q_)] = s * akp + c * akq;
                }
                for k in 0..n {
                    let apk = a[idx(p_, k)];
                    let aqk = a[idx(q_, k)];
                    a[idx(p_, k)] = c * apk - s * aqk;
                    a[idx(q_, k)] = s * apk + c * aqk;
                }
            }
        }
    }
    let mut evs: Vec<f64> = (0..n).map(|i| a[idx(i, i)]).collect();
    evs.sort_by(|x, y| x.total_cmp(y));
    Ok(evs)
}

/// Spectrum with flags; levels move by less than `shift_tol` when the basis
/// is doubled, otherwise the run is marked unconverged.
#[derive(Debug, Clone)]
pub struct OracleSpectrum {
    pub levels: Vec<f64>,
    pub max_shift: f64,
    pub converged: bool,
}

const ORACLE_SHIFT_TOL: f64 = 1e-8;

/// First `n_levels` eigenvalues with a doubling convergence check.
pub fn oracle_spectrum(p: &PotentialSpec, n_levels: usize, b: &BasisConfig) -> Result<OracleSpectrum> {
    let coarse = diagonalize(&hamiltonian_matrix(p, b)?)?;
    let fine_cfg = BasisConfig::new(2 * b.size, b.omega)?;
    let fine = diagonalize(&hamiltonian_matrix(p, &fine_cfg)?)?;
    if coarse.len() < n_levels {
        return Err(Error::Config(format!(
            "basis size {} too small for {} levels",
            b.size, n_levels
        )));
    }
    let mut max_shift = 0.0_f64;
    for i in 0..n_levels {
        max_shift = max_shift.max((coarse[i] - fine[i]).abs());
    }
    Ok(OracleSpectrum {
        levels: fine[..n_levels].to_vec(),
        max_shift,
        converged: max_shift < ORACLE_SHIFT_TOL,
    })
}

/// Variational basis-frequency choice: the omega in {1, 2, 3, 4} minimizing
/// the ground-state eigenvalue at size 100.
pub fn pick_omega(p: &PotentialSpec) -> Result<f64> {
    let mut best = (f64::INFINITY, 1.0);
    for omega in [1.0, 2.0, 3.0, 4.0] {
        let b = BasisConfig::new(100, omega)?;
        let e0 = diagonalize(&hamiltonian_matrix(p, &b)?)?[0];
        if e0 < best.0 {
            best = (e0, omega);
        }
    }
    Ok(best.1)
}
