//! Spectral toolkit for quartic oscillators in their Hermitian and
//! PT-symmetric phases.
//!
//! The library solves the eigenvalue problem of
//!
//! ```text
//!     H = -a d^2/dx^2 + c1 x + c2 x^2 + c4 x^2 (ix)^delta
//! ```
//!
//! by shooting along rays inside the Stokes wedges of the complex-x plane
//! ([`shooting`]), cross-checks real-axis spectra against a dense
//! oscillator-basis diagonalization ([`basis`]), evaluates the perturbative
//! energy series of the massive oscillator at negative quartic coupling
//! ([`mk_series`]), and computes the zero-dimensional partition functions of
//! the same potential family in closed form and by contour quadrature
//! ([`zdim0`]). The [`conjecture`] module assembles both sides of the
//! branch-average relation
//!
//! ```text
//!     Q_PT(g) =? [Q_Herm(-g + i0+) + Q_Herm(-g - i0+)] / 2
//! ```
//!
//! for partition functions and energy levels and reports where it holds.
//!
//! ```
//! use ptspectra::{shooting, stokes, HamiltonianPreset, SecantOptions};
//!
//! // Ground state of the PT inverted quartic, -d^2/dx^2 - x^4 on the
//! // delta = 2 contour.
//! let p = HamiltonianPreset::PtInverted { g: 1.0, hbar: 1.0, m_kin: 0.5 }
//!     .to_spec()
//!     .unwrap();
//! let contour = stokes::build_contour(&p, Some(5.0), Some(2e-3)).unwrap();
//! let e0 = shooting::find_eigenvalue(&p, &contour, 1.4, 1.55, SecantOptions::default())
//!     .unwrap();
//! assert!((e0.energy - 1.4771497).abs() < 1e-5);
//! ```

pub mod basis;
pub mod conjecture;
mod error;
pub mod mk_series;
pub mod potential;
pub mod reproduce;
pub mod shooting;
pub mod specfun;
pub mod stokes;
pub mod tables;
pub mod zdim0;

pub use error::{Error, Result};
pub use potential::{HamiltonianPreset, PotentialSpec, QuarticSign};
pub use shooting::{EigenResult, ScanOutcome, SecantOptions};
pub use stokes::ContourSpec;

/// Complex double used throughout.
pub type C64 = num_complex::Complex64;
