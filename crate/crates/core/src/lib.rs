//! One-lens para-axial optics as a calculator for Wigner's little groups.
//!
//! The crate builds ABCD matrices for a single thin lens between two
//! translations, extracts the dimensionless core matrix, classifies it as
//! elliptic, parabolic or hyperbolic, and converts between the traditional
//! little-group parameters and the `(lambda, theta)` pair that stays analytic
//! through the focal condition.
//!
//! ```
//! use lenslab::{contraction, sl2_optics::{self, LensSystem}};
//!
//! let sys = LensSystem::new(2.0, 2.0, 1.0).unwrap();
//! let core = sl2_optics::core_params(&sys).unwrap();
//! let w = contraction::wigner_from_lens(&core).unwrap();
//! let m = contraction::wigner_matrix(&w);
//! assert!((m.m12).abs() < 1e-12);
//! assert!((m.m21 - 2.0).abs() < 1e-12);
//! ```

// `!(a > b)` is used on purpose throughout: it also rejects NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod contraction;
pub mod error;
pub mod little_group;
pub mod mat2;
pub mod sl2_optics;
pub mod verify;

pub use error::{Error, Result};
pub use mat2::Mat2;

/// Default width of the parabolic band, applied to `x - 2 cosh(rho)` and to
/// the upper-right entry of the analytic matrix.
pub const DEFAULT_TOL: f64 = 1e-10;
