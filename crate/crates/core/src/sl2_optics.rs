//! One-lens ABCD systems, their dimensionless core matrix and its regime.

use std::fmt;

use crate::error::{require_finite, Error, Result};
use crate::little_group::LittleGroupParams;
use crate::mat2::Mat2;

/// Inputs closer than this to the focal length are rejected by core extraction.
pub const CAMERA_MARGIN: f64 = 1e-12;

/// Determinant and diagonal slack accepted when reading parameters off a core matrix.
const CORE_SHAPE_TOL: f64 = 1e-8;

pub fn lens_matrix(f: f64) -> Result<Mat2> {
    if !(f > 0.0 && f.is_finite()) {
        return Err(Error::InvalidInput(format!(
            "focal length must be positive and finite, got {f}"
        )));
    }
    Ok(Mat2::new(1.0, 0.0, -1.0 / f, 1.0))
}

pub fn translation_matrix(d: f64) -> Result<Mat2> {
    let d = require_finite("translation distance", d)?;
    Ok(Mat2::new(1.0, d, 0.0, 1.0))
}

/// Object distance `d1`, image distance `d2` and focal length `f` of a
/// single thin lens, all in the same length unit.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LensSystem {
    pub d1: f64,
    pub d2: f64,
    pub f: f64,
}

impl LensSystem {
    pub fn new(d1: f64, d2: f64, f: f64) -> Result<Self> {
        let sys = Self { d1, d2, f };
        sys.validate()?;
        Ok(sys)
    }

    pub fn validate(&self) -> Result<()> {
        lens_matrix(self.f)?;
        for (name, d) in [("d1", self.d1), ("d2", self.d2)] {
            if !(d >= 0.0 && d.is_finite()) {
                return Err(Error::InvalidInput(format!(
                    "{name} must be non-negative and finite, got {d}"
                )));
            }
        }
        Ok(())
    }

    /// Both distances strictly beyond the focal length.
    pub fn is_camera(&self) -> bool {
        self.d1 / self.f - 1.0 > CAMERA_MARGIN && self.d2 / self.f - 1.0 > CAMERA_MARGIN
    }
}

/// System matrix `T(d2) L(f) T(d1)` in closed form.
pub fn one_lens(sys: &LensSystem) -> Result<Mat2> {
    sys.validate()?;
    let LensSystem { d1, d2, f } = *sys;
    Ok(Mat2::new(
        1.0 - d2 / f,
        d1 + d2 - d1 * d2 / f,
        -1.0 / f,
        1.0 - d1 / f,
    ))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FocalCheck {
    pub focused: bool,
    /// `1/x1 + 1/x2 - 1`, i.e. `f (1/d1 + 1/d2 - 1/f)`.
    pub residual: f64,
    /// Upper-right entry of the system matrix (length units).
    pub upper_right: f64,
}

pub fn focal_check(sys: &LensSystem, tol: f64) -> Result<FocalCheck> {
    let m = one_lens(sys)?;
    let residual = sys.f / sys.d1 + sys.f / sys.d2 - 1.0;
    Ok(FocalCheck {
        focused: residual.abs() <= tol,
        residual,
        upper_right: m.m12,
    })
}

/// Dimensionless quantities of a camera-configured one-lens system.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CoreParams {
    pub x1: f64,
    pub x2: f64,
    pub x: f64,
    pub cosh_rho: f64,
    pub z: f64,
    pub b: f64,
}

impl CoreParams {
    /// `rho >= 0`, from `e^rho = max(sqrt(x1/x2), sqrt(x2/x1))`.
    pub fn rho(&self) -> f64 {
        (self.x2 / self.x1).ln().abs() / 2.0
    }

    /// `z` from `x` and `cosh(rho)` instead of from `x1`, `x2`.
    pub fn z_from_rho(&self) -> f64 {
        1.0 + (self.x * self.x - 2.0 * self.x * self.cosh_rho + 1.0).sqrt()
    }

    pub fn z_residual(&self) -> f64 {
        (self.z - self.z_from_rho()).abs()
    }

    /// `x - 2 cosh(rho)`: negative elliptic, zero parabolic, positive hyperbolic.
    pub fn regime_residual(&self) -> f64 {
        self.x - 2.0 * self.cosh_rho
    }
}

pub fn core_params(sys: &LensSystem) -> Result<CoreParams> {
    sys.validate()?;
    if !sys.is_camera() {
        return Err(Error::Configuration(format!(
            "d1 = {} and d2 = {} must both exceed f = {}",
            sys.d1, sys.d2, sys.f
        )));
    }
    let x1 = sys.d1 / sys.f;
    let x2 = sys.d2 / sys.f;
    let x = (x1 * x2).sqrt();
    let ratio = (x1 / x2).sqrt();
    let cosh_rho = (ratio + 1.0 / ratio) / 2.0;
    let z = 1.0 + ((x1 - 1.0) * (x2 - 1.0)).sqrt();
    let b = ((x2 - 1.0) / (x1 - 1.0)).powf(0.25);
    Ok(CoreParams {
        x1,
        x2,
        x,
        cosh_rho,
        z,
        b,
    })
}

/// `[[z-1, x - 2 cosh(rho)], [x, z-1]]`.
pub fn core_matrix(p: &CoreParams) -> Mat2 {
    let d = p.z - 1.0;
    Mat2::new(d, p.regime_residual(), p.x, d)
}

/// Factors of the one-lens matrix.
///
/// `outer_scale * negated_core * inner_scale` is the system matrix, where
/// `negated_core = [[1-x2, 2cosh(rho)-x], [-x, 1-x1]]` is the core before the
/// camera sign flip. The flipped core `-negated_core` equals
/// `b_scale * core_matrix * b_scale` (the same diagonal on both sides).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Decomposition {
    pub outer_scale: Mat2,
    pub negated_core: Mat2,
    pub inner_scale: Mat2,
    pub b_scale: Mat2,
    pub core: Mat2,
}

impl Decomposition {
    pub fn system(&self) -> Mat2 {
        self.outer_scale * self.negated_core * self.inner_scale
    }

    pub fn camera_core(&self) -> Mat2 {
        -self.negated_core
    }

    pub fn renormalized(&self) -> Mat2 {
        self.b_scale * self.core * self.b_scale
    }
}

pub fn decompose(sys: &LensSystem) -> Result<Decomposition> {
    let p = core_params(sys)?;
    let s = (sys.d1 * sys.d2).powf(0.25);
    Ok(Decomposition {
        outer_scale: Mat2::diag(s, 1.0 / s),
        negated_core: Mat2::new(1.0 - p.x2, -p.regime_residual(), -p.x, 1.0 - p.x1),
        inner_scale: Mat2::diag(1.0 / s, s),
        b_scale: Mat2::diag(p.b, 1.0 / p.b),
        core: core_matrix(&p),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Regime {
    Elliptic,
    Parabolic,
    Hyperbolic,
}

impl Regime {
    pub fn as_str(&self) -> &'static str {
        match self {
            Regime::Elliptic => "elliptic",
            Regime::Parabolic => "parabolic",
            Regime::Hyperbolic => "hyperbolic",
        }
    }

    fn from_signed(value: f64, eps: f64) -> Self {
        if value < -eps {
            Regime::Elliptic
        } else if value > eps {
            Regime::Hyperbolic
        } else {
            Regime::Parabolic
        }
    }
}

impl fmt::Display for Regime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Classification {
    pub regime: Regime,
    /// `x - 2 cosh(rho)`.
    pub residual: f64,
}

/// Regime from `x` against `2 cosh(rho)` with an absolute band `eps`.
pub fn classify(p: &CoreParams, eps: f64) -> Classification {
    let residual = p.regime_residual();
    Classification {
        regime: Regime::from_signed(residual, eps),
        residual,
    }
}

/// Regime from the focal residual `1/x1 + 1/x2 - 1`.
///
/// `x - 2cosh(rho) = -x (1/x1 + 1/x2 - 1)`, so the band is rescaled by `x`
/// to match [`classify`].
pub fn classify_by_focal(p: &CoreParams, eps: f64) -> Regime {
    let focal = 1.0 / p.x1 + 1.0 / p.x2 - 1.0;
    Regime::from_signed(-focal, eps / p.x)
}

/// Reads the traditional little-group parameters off an equal-diagonal
/// unimodular matrix.
///
/// Angles come from `atan2`/`asinh` of the off-diagonal product rather than
/// from `acos`/`acosh` of the diagonal, which keeps full relative precision
/// close to the contraction point.
pub fn extract_params(core: &Mat2, regime: Regime) -> Result<LittleGroupParams> {
    let Mat2 { m11, m12, m21, m22 } = *core;
    if !core.is_finite() {
        return Err(Error::InvalidInput(format!("non-finite matrix {core}")));
    }
    let scale = core.max_abs().max(1.0);
    if (m11 - m22).abs() > CORE_SHAPE_TOL * scale
        || (core.det() - 1.0).abs() > CORE_SHAPE_TOL * scale * scale
    {
        return Err(Error::Inconsistent(format!(
            "{core} is not an equal-diagonal unimodular matrix"
        )));
    }
    let diag = (m11 + m22) / 2.0;
    match regime {
        Regime::Elliptic => {
            if !(m12 < 0.0 && m21 > 0.0 && diag.abs() < 1.0) {
                return Err(Error::Inconsistent(format!("{core} is not elliptic")));
            }
            let phi = 2.0 * (-m12 * m21).sqrt().atan2(diag);
            if !(phi > 0.0 && phi < std::f64::consts::PI) {
                // a half turn (vanishing diagonal) has no angle inside (0, pi)
                return Err(Error::Domain(format!(
                    "{core} gives phi = {phi}, outside (0, pi)"
                )));
            }
            Ok(LittleGroupParams::Elliptic {
                phi,
                eta: (-m21 / m12).ln() / 2.0,
            })
        }
        Regime::Hyperbolic => {
            if !(m12 > 0.0 && m21 > 0.0 && diag > 1.0) {
                return Err(Error::Inconsistent(format!("{core} is not hyperbolic")));
            }
            Ok(LittleGroupParams::Hyperbolic {
                chi: 2.0 * (m12 * m21).sqrt().asinh(),
                eta: (m21 / m12).ln() / 2.0,
            })
        }
        Regime::Parabolic => {
            if (diag - 1.0).abs() > CORE_SHAPE_TOL * scale || m12.abs() > CORE_SHAPE_TOL * scale {
                return Err(Error::Inconsistent(format!("{core} is not parabolic")));
            }
            Ok(LittleGroupParams::Parabolic { u: m21 })
        }
    }
}
