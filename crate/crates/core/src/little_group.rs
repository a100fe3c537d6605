//! Two-by-two representations of the little groups and their action on
//! `(t, z, x)` Minkowski vectors.
//!
//! Vectors act through the covering map `X = [[t+z, x], [x, t-z]]`,
//! `X -> M X M^T`. Under this convention `boost_z(eta)` adds rapidity `+eta`
//! along `z`, and `rotation(phi)` turns the `(z, x)` plane by `phi`. The
//! `y` coordinate never participates and is dropped.

use std::f64::consts::PI;

use crate::error::{require_finite, Error, Result};
use crate::mat2::Mat2;

/// Determinant slack accepted by [`vector_action`].
pub const UNIMODULAR_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Generator {
    Rotation,
    BoostZ,
    BoostX,
    ParabolicLower,
    ParabolicUpper,
}

/// Rotation by `phi` about the `y` axis (half-angle entries).
pub fn rotation(phi: f64) -> Mat2 {
    let (s, c) = (phi / 2.0).sin_cos();
    Mat2::new(c, -s, s, c)
}

pub fn boost_z(eta: f64) -> Mat2 {
    Mat2::diag((eta / 2.0).exp(), (-eta / 2.0).exp())
}

pub fn boost_x(chi: f64) -> Mat2 {
    let (c, s) = ((chi / 2.0).cosh(), (chi / 2.0).sinh());
    Mat2::new(c, s, s, c)
}

pub fn parabolic_lower(u: f64) -> Mat2 {
    Mat2::new(1.0, 0.0, u, 1.0)
}

pub fn parabolic_upper(u: f64) -> Mat2 {
    Mat2::new(1.0, u, 0.0, 1.0)
}

pub fn generator(kind: Generator, param: f64) -> Result<Mat2> {
    let p = require_finite("generator parameter", param)?;
    Ok(match kind {
        Generator::Rotation => rotation(p),
        Generator::BoostZ => boost_z(p),
        Generator::BoostX => boost_x(p),
        Generator::ParabolicLower => parabolic_lower(p),
        Generator::ParabolicUpper => parabolic_upper(p),
    })
}

/// Parameters of a little-group element in one of the three traditional forms.
///
/// `eta` is the rapidity of the frame the element is conjugated into; the
/// off-diagonal asymmetry factors are `e^{-eta}` (upper right) and `e^{eta}`
/// (lower left).
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum LittleGroupParams {
    /// O(3)-like: `phi` in `(0, pi)`.
    Elliptic { phi: f64, eta: f64 },
    /// E(2)-like, lower triangular, one real parameter.
    Parabolic { u: f64 },
    /// O(2,1)-like: `chi > 0`.
    Hyperbolic { chi: f64, eta: f64 },
}

impl LittleGroupParams {
    pub fn validate(&self) -> Result<()> {
        match *self {
            LittleGroupParams::Elliptic { phi, eta } => {
                require_finite("eta", eta)?;
                if !(phi > 0.0 && phi < PI) {
                    return Err(Error::InvalidInput(format!(
                        "elliptic phi must lie in (0, pi), got {phi}"
                    )));
                }
            }
            LittleGroupParams::Parabolic { u } => {
                require_finite("u", u)?;
            }
            LittleGroupParams::Hyperbolic { chi, eta } => {
                require_finite("eta", eta)?;
                if !(chi > 0.0 && chi.is_finite()) {
                    return Err(Error::InvalidInput(format!(
                        "hyperbolic chi must be positive and finite, got {chi}"
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn eta(&self) -> Option<f64> {
        match *self {
            LittleGroupParams::Elliptic { eta, .. } | LittleGroupParams::Hyperbolic { eta, .. } => {
                Some(eta)
            }
            LittleGroupParams::Parabolic { .. } => None,
        }
    }
}

/// Closed-form little-group element.
pub fn little_group_element(p: &LittleGroupParams) -> Result<Mat2> {
    p.validate()?;
    Ok(match *p {
        LittleGroupParams::Elliptic { phi, eta } => {
            let (s, c) = (phi / 2.0).sin_cos();
            Mat2::new(c, -(-eta).exp() * s, eta.exp() * s, c)
        }
        LittleGroupParams::Parabolic { u } => parabolic_lower(u),
        LittleGroupParams::Hyperbolic { chi, eta } => {
            let (c, s) = ((chi / 2.0).cosh(), (chi / 2.0).sinh());
            Mat2::new(c, (-eta).exp() * s, eta.exp() * s, c)
        }
    })
}

/// The same element built as the explicit chain `boost_z(-eta) * K * boost_z(eta)`.
pub fn sandwich_chain(p: &LittleGroupParams) -> Result<Mat2> {
    p.validate()?;
    Ok(match *p {
        LittleGroupParams::Elliptic { phi, eta } => boost_z(-eta) * rotation(phi) * boost_z(eta),
        LittleGroupParams::Parabolic { u } => parabolic_lower(u),
        LittleGroupParams::Hyperbolic { chi, eta } => boost_z(-eta) * boost_x(chi) * boost_z(eta),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Causality {
    TimeLike,
    LightLike,
    SpaceLike,
}

/// A `(t, z, x)` Minkowski vector.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct ThreeVector {
    pub t: f64,
    pub z: f64,
    pub x: f64,
}

impl ThreeVector {
    pub const fn new(t: f64, z: f64, x: f64) -> Self {
        Self { t, z, x }
    }

    /// `t^2 - z^2 - x^2`.
    pub fn norm(&self) -> f64 {
        self.t * self.t - self.z * self.z - self.x * self.x
    }

    pub fn causality(&self, tol: f64) -> Causality {
        let n = self.norm();
        if n > tol {
            Causality::TimeLike
        } else if n < -tol {
            Causality::SpaceLike
        } else {
            Causality::LightLike
        }
    }

    pub fn max_abs(&self) -> f64 {
        self.t.abs().max(self.z.abs()).max(self.x.abs())
    }

    pub fn max_abs_diff(&self, other: &ThreeVector) -> f64 {
        (self.t - other.t)
            .abs()
            .max((self.z - other.z).abs())
            .max((self.x - other.x).abs())
    }

    fn to_hermitian(self) -> Mat2 {
        Mat2::new(self.t + self.z, self.x, self.x, self.t - self.z)
    }

    fn from_hermitian(h: &Mat2) -> Self {
        Self::new(
            (h.m11 + h.m22) / 2.0,
            (h.m11 - h.m22) / 2.0,
            (h.m12 + h.m21) / 2.0,
        )
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MomentumKind {
    /// `m (1, 0, 0)`
    MassiveRest,
    /// `m (cosh eta, -sinh eta, 0)`, moving along `-z`.
    MassiveMoving,
    /// `w (1, 1, 0)`, stabilized by [`parabolic_upper`].
    LightlikeAlongZ,
    /// `w (1, -1, 0)`, stabilized by [`parabolic_lower`].
    LightlikeAgainstZ,
    /// `m (0, 1, 0)`
    Spacelike,
    /// `m (-sinh eta, cosh eta, 0)`: the space-like vector seen from the
    /// same moving frame as [`MomentumKind::MassiveMoving`].
    SpacelikeMoving,
}

/// Four-momentum (with `y` suppressed). `eta` is ignored for the kinds that
/// do not carry a rapidity.
pub fn four_momentum(kind: MomentumKind, scale: f64, eta: f64) -> Result<ThreeVector> {
    if !(scale > 0.0 && scale.is_finite()) {
        return Err(Error::InvalidInput(format!(
            "momentum scale must be positive and finite, got {scale}"
        )));
    }
    require_finite("eta", eta)?;
    let m = scale;
    Ok(match kind {
        MomentumKind::MassiveRest => ThreeVector::new(m, 0.0, 0.0),
        MomentumKind::MassiveMoving => ThreeVector::new(m * eta.cosh(), -m * eta.sinh(), 0.0),
        MomentumKind::LightlikeAlongZ => ThreeVector::new(m, m, 0.0),
        MomentumKind::LightlikeAgainstZ => ThreeVector::new(m, -m, 0.0),
        MomentumKind::Spacelike => ThreeVector::new(0.0, m, 0.0),
        MomentumKind::SpacelikeMoving => ThreeVector::new(-m * eta.sinh(), m * eta.cosh(), 0.0),
    })
}

/// The four-momentum left invariant by `little_group_element(p)`.
pub fn stabilized_momentum(p: &LittleGroupParams, scale: f64) -> Result<ThreeVector> {
    match *p {
        LittleGroupParams::Elliptic { eta, .. } => {
            four_momentum(MomentumKind::MassiveMoving, scale, eta)
        }
        LittleGroupParams::Parabolic { .. } => {
            four_momentum(MomentumKind::LightlikeAgainstZ, scale, 0.0)
        }
        LittleGroupParams::Hyperbolic { eta, .. } => {
            four_momentum(MomentumKind::SpacelikeMoving, scale, eta)
        }
    }
}

pub fn vector_action(m: &Mat2, v: &ThreeVector) -> Result<ThreeVector> {
    if !m.is_finite() || !m.is_unimodular(UNIMODULAR_TOL) {
        return Err(Error::InvalidInput(format!(
            "vector action needs a unimodular matrix, det = {}",
            m.det()
        )));
    }
    let h = *m * v.to_hermitian() * m.transpose();
    Ok(ThreeVector::from_hermitian(&h))
}

/// Max-norm of `M v - v`; zero when `M` belongs to the little group of `v`.
pub fn invariance_residual(m: &Mat2, v: &ThreeVector) -> Result<f64> {
    Ok(vector_action(m, v)?.max_abs_diff(v))
}
