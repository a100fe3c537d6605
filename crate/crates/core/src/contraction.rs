//! The analytic `(lambda, theta)` parametrization.
//!
//! The element `R(theta) B(lambda) R(theta)`, with `R` the half-angle rotation
//! and `B` the boost along `x`, has the upper-right entry
//! `sinh(lambda) - cosh(lambda) sin(theta)`, which passes smoothly through
//! zero. That zero is the focal condition of the lens and the contraction
//! point of the little groups, where the traditional `(phi, eta)` and
//! `(chi, eta)` forms lose one parameter.

use std::f64::consts::FRAC_PI_2;

use crate::error::{require_finite, Error, Result};
use crate::little_group::{self, boost_x, rotation, LittleGroupParams};
use crate::mat2::Mat2;
use crate::sl2_optics::{self, core_matrix, core_params, CoreParams, LensSystem, Regime};

/// Below this `|sign_quantity|` the recovered `eta` is flagged as imprecise.
pub const NEAR_CONTRACTION: f64 = 1e-8;

/// Entrywise agreement required between the core matrix and the analytic form
/// inside a sweep record.
pub const RECORD_CONSISTENCY_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WignerParams {
    pub lambda: f64,
    /// In `[-pi/2, pi/2]`; lens-derived values always land in `(0, pi/2]`.
    pub theta: f64,
}

impl WignerParams {
    pub fn new(lambda: f64, theta: f64) -> Result<Self> {
        let w = Self { lambda, theta };
        w.validate()?;
        Ok(w)
    }

    pub fn validate(&self) -> Result<()> {
        require_finite("lambda", self.lambda)?;
        require_finite("theta", self.theta)?;
        if self.theta.abs() > FRAC_PI_2 {
            return Err(Error::InvalidInput(format!(
                "theta must lie in [-pi/2, pi/2], got {}",
                self.theta
            )));
        }
        Ok(())
    }

    /// Upper-right entry of the analytic matrix.
    pub fn regime_indicator(&self) -> f64 {
        self.lambda.sinh() - self.lambda.cosh() * self.theta.sin()
    }

    pub fn regime(&self, eps: f64) -> Regime {
        let v = self.regime_indicator();
        if v < -eps {
            Regime::Elliptic
        } else if v > eps {
            Regime::Hyperbolic
        } else {
            Regime::Parabolic
        }
    }
}

pub fn wigner_matrix(w: &WignerParams) -> Mat2 {
    let (ch, sh) = (w.lambda.cosh(), w.lambda.sinh());
    let (s, c) = w.theta.sin_cos();
    Mat2::new(ch * c, sh - ch * s, sh + ch * s, ch * c)
}

/// `R(theta) B(lambda) R(theta)` multiplied out numerically.
pub fn wigner_triple_product(w: &WignerParams) -> Mat2 {
    let r = rotation(w.theta);
    r * boost_x(2.0 * w.lambda) * r
}

/// `(cosh(l) sin(t) - sinh(l)) / (cosh(l) sin(t) + sinh(l))`.
///
/// Equals `e^{-2 eta}` on the elliptic side and `-e^{-2 eta}` on the
/// hyperbolic side; it crosses zero at the contraction point.
pub fn sign_quantity(w: &WignerParams) -> Result<f64> {
    let a = w.lambda.cosh() * w.theta.sin();
    let sh = w.lambda.sinh();
    let denom = a + sh;
    if !(denom > 0.0) {
        return Err(Error::Domain(format!(
            "cosh(lambda) sin(theta) + sinh(lambda) = {denom} must be positive"
        )));
    }
    Ok((a - sh) / denom)
}

/// `eta = -ln|q| / 2`; infinite at the contraction point itself.
pub fn eta_from_sign_quantity(q: f64) -> f64 {
    -q.abs().ln() / 2.0
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EtaQuality {
    Ok,
    /// Close enough to the contraction point that `eta` has lost precision.
    NearContraction,
}

impl EtaQuality {
    pub fn as_str(&self) -> &'static str {
        match self {
            EtaQuality::Ok => "ok",
            EtaQuality::NearContraction => "near_contraction",
        }
    }
}

pub fn eta_quality(w: &WignerParams) -> Result<EtaQuality> {
    Ok(if sign_quantity(w)?.abs() < NEAR_CONTRACTION {
        EtaQuality::NearContraction
    } else {
        EtaQuality::Ok
    })
}

/// Traditional little-group parameters of the analytic element.
///
/// `eps` is the parabolic band on the upper-right entry. The lower-left entry
/// must be positive, which holds for every lens-derived pair.
pub fn little_from_wigner(w: &WignerParams, eps: f64) -> Result<LittleGroupParams> {
    w.validate()?;
    let m = wigner_matrix(w);
    if !(m.m21 > 0.0) {
        return Err(Error::Domain(format!(
            "lower-left entry {} of the analytic element must be positive",
            m.m21
        )));
    }
    match w.regime(eps) {
        Regime::Parabolic => Ok(LittleGroupParams::Parabolic {
            u: 2.0 * w.lambda.sinh(),
        }),
        regime => sl2_optics::extract_params(&m, regime),
    }
}

/// Inverse of [`little_from_wigner`].
///
/// `sinh(lambda)` and `cosh(lambda) sin(theta)` are the half sum and half
/// difference of the off-diagonal entries, so `lambda` comes from `asinh` and
/// `theta` from `atan2` without passing through `acosh`/`acos`.
pub fn wigner_from_little(p: &LittleGroupParams) -> Result<WignerParams> {
    let m = little_group::little_group_element(p)?;
    let sinh_lambda = (m.m21 + m.m12) / 2.0;
    let cosh_sin = (m.m21 - m.m12) / 2.0;
    WignerParams::new(sinh_lambda.asinh(), cosh_sin.atan2(m.m11))
}

/// `(cosh(lambda), cos(theta))` from the closed-form inversion formulas.
///
/// Elliptic: `cosh(l) = cosh(eta) sqrt(1 - cos^2(phi/2) tanh^2(eta))`,
/// hyperbolic: `cosh(l) = cosh(eta) sqrt(cosh^2(chi/2) - tanh^2(eta))`, and in
/// both `cos(theta)` is the diagonal over `cosh(l)`.
pub fn closed_form_inverse(p: &LittleGroupParams) -> Result<(f64, f64)> {
    p.validate()?;
    let (cosh_lambda, diag) = match *p {
        LittleGroupParams::Elliptic { phi, eta } => {
            let c = (phi / 2.0).cos();
            let t = eta.tanh();
            (eta.cosh() * (1.0 - c * c * t * t).sqrt(), c)
        }
        LittleGroupParams::Hyperbolic { chi, eta } => {
            let c = (chi / 2.0).cosh();
            let t = eta.tanh();
            (eta.cosh() * (c * c - t * t).sqrt(), c)
        }
        LittleGroupParams::Parabolic { u } => ((1.0 + u * u / 4.0).sqrt(), 1.0),
    };
    Ok((cosh_lambda, diag / cosh_lambda))
}

/// Lens dictionary: `sinh(lambda) = x - cosh(rho)`,
/// `sin(theta) = cosh(rho) / sqrt(1 + (x - cosh(rho))^2)`.
pub fn wigner_from_lens(p: &CoreParams) -> Result<WignerParams> {
    let sinh_lambda = p.x - p.cosh_rho;
    let cosh_lambda = (1.0 + sinh_lambda * sinh_lambda).sqrt();
    let sin_theta = p.cosh_rho / cosh_lambda;
    let diag = p.z - 1.0;
    if !(sin_theta <= 1.0 + 1e-12) || !(diag >= 0.0) {
        return Err(Error::Configuration(format!(
            "sin(theta) = {sin_theta} exceeds 1; the lens is not in camera configuration"
        )));
    }
    // cosh(l) cos(t) = z - 1, so atan2 keeps theta accurate near pi/2
    WignerParams::new(sinh_lambda.asinh(), p.cosh_rho.atan2(diag))
}

/// Symmetric cavity `d1 = d2 = d`, `x = d / f`: `sinh(lambda) = x - 1` and
/// `cosh(lambda) sin(theta) = 1`.
pub fn cavity_wigner(x: f64) -> Result<WignerParams> {
    if !(x > 1.0 && x.is_finite()) {
        return Err(Error::Configuration(format!(
            "cavity needs x = d/f > 1, got {x}"
        )));
    }
    let s = x - 1.0;
    // sin(theta) = 1/cosh(lambda), cos(theta) = tanh(lambda)
    WignerParams::new(s.asinh(), 1f64.atan2(s))
}

/// `[[x-1, x-2], [x, x-1]]`.
pub fn cavity_matrix(x: f64) -> Mat2 {
    Mat2::new(x - 1.0, x - 2.0, x, x - 1.0)
}

/// One row of a parameter sweep.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepRecord {
    pub x: f64,
    pub x1: f64,
    pub x2: f64,
    pub cosh_rho: f64,
    pub z: f64,
    pub lambda: f64,
    pub theta: f64,
    pub regime: Regime,
    pub m11: f64,
    pub m12: f64,
    pub m21: f64,
    pub m22: f64,
}

impl SweepRecord {
    pub fn matrix(&self) -> Mat2 {
        Mat2::new(self.m11, self.m12, self.m21, self.m22)
    }

    pub fn wigner(&self) -> WignerParams {
        WignerParams {
            lambda: self.lambda,
            theta: self.theta,
        }
    }
}

pub fn sweep_record(sys: &LensSystem, eps: f64) -> Result<SweepRecord> {
    let p = core_params(sys)?;
    let core = core_matrix(&p);
    let w = wigner_from_lens(&p)?;
    let err = core.max_abs_diff(&wigner_matrix(&w));
    if !(err <= RECORD_CONSISTENCY_TOL) {
        return Err(Error::Inconsistent(format!(
            "core and analytic matrices differ by {err} at d1 = {}, d2 = {}",
            sys.d1, sys.d2
        )));
    }
    Ok(SweepRecord {
        x: p.x,
        x1: p.x1,
        x2: p.x2,
        cosh_rho: p.cosh_rho,
        z: p.z,
        lambda: w.lambda,
        theta: w.theta,
        regime: sl2_optics::classify(&p, eps).regime,
        m11: core.m11,
        m12: core.m12,
        m21: core.m21,
        m22: core.m22,
    })
}

/// Records for an arbitrary path of systems, in input order.
pub fn sweep_systems<I>(systems: I, eps: f64) -> Result<Vec<SweepRecord>>
where
    I: IntoIterator<Item = LensSystem>,
{
    let records = systems
        .into_iter()
        .map(|s| sweep_record(&s, eps))
        .collect::<Result<Vec<_>>>()?;
    for r in &records {
        if let Ok(q) = sign_quantity(&r.wigner()) {
            if q.abs() < 1e-4 {
                log::debug!(
                    "near contraction: x = {:.12}, sign quantity = {q:.3e}, eta = {:.6}",
                    r.x,
                    eta_from_sign_quantity(q)
                );
            }
        }
    }
    Ok(records)
}

/// `steps` uniformly spaced points from `lo` to `hi`, both ends exact.
pub fn linspace(lo: f64, hi: f64, steps: usize) -> Vec<f64> {
    let n = steps - 1;
    (0..steps)
        .map(|i| {
            if i == n {
                hi
            } else {
                lo + (hi - lo) * (i as f64) / (n as f64)
            }
        })
        .collect()
}

fn check_range(f: f64, lo: (&str, f64), hi: (&str, f64), steps: usize) -> Result<()> {
    if steps < 2 {
        return Err(Error::InvalidInput(format!(
            "steps must be at least 2, got {steps}"
        )));
    }
    for (name, v) in [lo, hi] {
        require_finite(name, v)?;
        if !(v / f - 1.0 > sl2_optics::CAMERA_MARGIN) {
            return Err(Error::Configuration(format!(
                "{name} = {v} is not beyond the focal length f = {f}"
            )));
        }
    }
    if !(hi.1 > lo.1) {
        return Err(Error::InvalidInput(format!(
            "{} = {} must be smaller than {} = {}",
            lo.0, lo.1, hi.0, hi.1
        )));
    }
    Ok(())
}

/// Sweep the image distance with `f` and `d1` fixed.
pub fn sweep(
    f: f64,
    d1: f64,
    d2_min: f64,
    d2_max: f64,
    steps: usize,
    eps: f64,
) -> Result<Vec<SweepRecord>> {
    sl2_optics::lens_matrix(f)?;
    require_finite("d1", d1)?;
    if !(d1 / f - 1.0 > sl2_optics::CAMERA_MARGIN) {
        return Err(Error::Configuration(format!(
            "d1 = {d1} is not beyond the focal length f = {f}"
        )));
    }
    check_range(f, ("d2_min", d2_min), ("d2_max", d2_max), steps)?;
    let systems = linspace(d2_min, d2_max, steps)
        .into_iter()
        .map(|d2| LensSystem::new(d1, d2, f))
        .collect::<Result<Vec<_>>>()?;
    sweep_systems(systems, eps)
}

/// Sweep the symmetric cavity path `d1 = d2 = d`.
pub fn cavity_sweep(
    f: f64,
    d_min: f64,
    d_max: f64,
    steps: usize,
    eps: f64,
) -> Result<Vec<SweepRecord>> {
    sl2_optics::lens_matrix(f)?;
    check_range(f, ("d_min", d_min), ("d_max", d_max), steps)?;
    let systems = linspace(d_min, d_max, steps)
        .into_iter()
        .map(|d| LensSystem::new(d, d, f))
        .collect::<Result<Vec<_>>>()?;
    sweep_systems(systems, eps)
}

/// Largest step in `lambda` or `theta` between neighbouring records.
pub fn max_adjacent_jump(records: &[SweepRecord]) -> f64 {
    records
        .windows(2)
        .map(|w| {
            (w[1].lambda - w[0].lambda)
                .abs()
                .max((w[1].theta - w[0].theta).abs())
        })
        .fold(0.0, f64::max)
}

/// Number of strict sign changes, skipping values within `tol` of zero.
pub fn count_sign_changes(values: impl IntoIterator<Item = f64>, tol: f64) -> usize {
    let mut last: Option<bool> = None;
    let mut changes = 0;
    for v in values {
        if v.abs() <= tol {
            continue;
        }
        let positive = v > 0.0;
        if let Some(prev) = last {
            if prev != positive {
                changes += 1;
            }
        }
        last = Some(positive);
    }
    changes
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::little_group::little_group_element;
    use approx::assert_abs_diff_eq;
    use proptest::prelude::*;
    use std::f64::consts::{FRAC_PI_4, PI};

    const EPS: f64 = crate::DEFAULT_TOL;

    fn w(lambda: f64, theta: f64) -> WignerParams {
        WignerParams::new(lambda, theta).unwrap()
    }

    fn lens(d1: f64, d2: f64, f: f64) -> CoreParams {
        core_params(&LensSystem::new(d1, d2, f).unwrap()).unwrap()
    }

    /// (lambda, theta) of the `d1 = d2 = 1.5 f` system: sinh = 1/2, sin = 2/sqrt5.
    fn elliptic_pair() -> WignerParams {
        w(0.5f64.asinh(), (2.0 / 5f64.sqrt()).asin())
    }

    #[test]
    fn wigner_matrix_special_cases() {
        let t = 0.7;
        let m = wigner_matrix(&w(0.0, t));
        assert!(m.max_abs_diff(&Mat2::new(t.cos(), -t.sin(), t.sin(), t.cos())) < 1e-15);
        let l = 1.3;
        let m = wigner_matrix(&w(l, 0.0));
        assert!(m.max_abs_diff(&Mat2::new(l.cosh(), l.sinh(), l.sinh(), l.cosh())) < 1e-15);
        let m = wigner_matrix(&w(1f64.asinh(), FRAC_PI_4));
        assert!(m.max_abs_diff(&Mat2::new(1.0, 0.0, 2.0, 1.0)) < 1e-15);
        assert_eq!(w(1f64.asinh(), FRAC_PI_4).regime(EPS), Regime::Parabolic);
    }

    #[test]
    fn params_validation() {
        assert!(WignerParams::new(f64::NAN, 0.1).is_err());
        assert!(WignerParams::new(0.1, 2.0).is_err());
        assert!(WignerParams::new(0.1, FRAC_PI_2).is_ok());
    }

    #[test]
    fn elliptic_conversion_examples() {
        let e = elliptic_pair();
        assert_abs_diff_eq!(e.lambda, 0.481212, epsilon = 1e-6);
        assert_abs_diff_eq!(e.theta, 1.107149, epsilon = 1e-6);
        match little_from_wigner(&e, EPS).unwrap() {
            LittleGroupParams::Elliptic { phi, eta } => {
                assert_abs_diff_eq!(phi, 2.0 * PI / 3.0, epsilon = 1e-12);
                assert_abs_diff_eq!(eta, 3f64.ln() / 2.0, epsilon = 1e-12);
            }
            other => panic!("{other:?}"),
        }
        let back = wigner_from_little(&LittleGroupParams::Elliptic {
            phi: 2.0 * PI / 3.0,
            eta: 3f64.ln() / 2.0,
        })
        .unwrap();
        assert_abs_diff_eq!(back.lambda, e.lambda, epsilon = 1e-12);
        assert_abs_diff_eq!(back.theta, e.theta, epsilon = 1e-12);
        assert_abs_diff_eq!(sign_quantity(&e).unwrap(), 1.0 / 3.0, epsilon = 1e-12);
    }

    #[test]
    fn pure_rotation_and_pure_boost_convert_trivially() {
        match little_from_wigner(&w(0.0, 0.6), EPS).unwrap() {
            LittleGroupParams::Elliptic { phi, eta } => {
                assert_abs_diff_eq!(phi, 1.2, epsilon = 1e-14);
                assert_abs_diff_eq!(eta, 0.0, epsilon = 1e-14);
            }
            other => panic!("{other:?}"),
        }
        match little_from_wigner(&w(0.9, 0.0), EPS).unwrap() {
            LittleGroupParams::Hyperbolic { chi, eta } => {
                assert_abs_diff_eq!(chi, 1.8, epsilon = 1e-14);
                assert_abs_diff_eq!(eta, 0.0, epsilon = 1e-14);
            }
            other => panic!("{other:?}"),
        }
        let r = wigner_from_little(&LittleGroupParams::Elliptic { phi: 1.2, eta: 0.0 }).unwrap();
        assert_abs_diff_eq!(r.lambda, 0.0, epsilon = 1e-15);
        assert_abs_diff_eq!(r.theta, 0.6, epsilon = 1e-15);
    }

    /// Solves `cosh(chi/2) = cosh(l) cos(t)`, `e^{-2 eta} = -q(l, t)` by nested
    /// bisection, independently of the closed-form route.
    fn bisect_hyperbolic(chi: f64, eta: f64) -> (f64, f64) {
        let target_diag = (chi / 2.0).cosh();
        let target_q = -(-2.0 * eta).exp();
        let q = |l: f64, t: f64| {
            let a = l.cosh() * t.sin();
            (a - l.sinh()) / (a + l.sinh())
        };
        // for a given lambda, theta is fixed by the diagonal
        let theta_of = |l: f64| (target_diag / l.cosh()).min(1.0).acos();
        let (mut lo, mut hi) = (target_diag.acosh(), 10.0);
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            // q climbs from -1 toward 0 with lambda along this curve
            if q(mid, theta_of(mid)) < target_q {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        let l = 0.5 * (lo + hi);
        (l, theta_of(l))
    }

    #[test]
    fn hyperbolic_conversion_matches_bisection() {
        let p = lens(2.0, 3.0, 1.0);
        let chi = 2.0 * 2f64.sqrt().acosh();
        let eta = 6f64.ln() / 2.0;
        let (l_ref, t_ref) = bisect_hyperbolic(chi, eta);
        let got = wigner_from_little(&LittleGroupParams::Hyperbolic { chi, eta }).unwrap();
        assert_abs_diff_eq!(got.lambda, l_ref, epsilon = 1e-9);
        assert_abs_diff_eq!(got.theta, t_ref, epsilon = 1e-7);
        assert_abs_diff_eq!(got.lambda, 1.428869f64.asinh(), epsilon = 1e-6);
        assert_abs_diff_eq!(got.theta, 0.585206f64.asin(), epsilon = 1e-6);
        assert_abs_diff_eq!(
            got.lambda.cosh() * got.theta.sin(),
            p.cosh_rho,
            epsilon = 1e-12
        );
        assert_abs_diff_eq!(sign_quantity(&got).unwrap(), -1.0 / 6.0, epsilon = 1e-12);
    }

    #[test]
    fn closed_forms_agree_with_stable_route() {
        let cases = [
            LittleGroupParams::Elliptic { phi: 2.0, eta: 0.7 },
            LittleGroupParams::Elliptic {
                phi: 0.4,
                eta: -1.1,
            },
            LittleGroupParams::Hyperbolic { chi: 1.5, eta: 0.3 },
            LittleGroupParams::Hyperbolic { chi: 0.2, eta: 2.0 },
            LittleGroupParams::Parabolic { u: 1.7 },
        ];
        for p in cases {
            let w = wigner_from_little(&p).unwrap();
            let (ch, ct) = closed_form_inverse(&p).unwrap();
            assert_abs_diff_eq!(w.lambda.cosh(), ch, epsilon = 1e-12);
            assert_abs_diff_eq!(w.theta.cos(), ct, epsilon = 1e-12);
            // the one-line forms that eliminate the diagonal
            match p {
                LittleGroupParams::Elliptic { eta, .. } => {
                    let alt =
                        eta.cosh() / (1.0 + eta.sinh().powi(2) * w.theta.cos().powi(2)).sqrt();
                    assert_abs_diff_eq!(alt, ch, epsilon = 1e-12);
                }
                LittleGroupParams::Hyperbolic { eta, .. } => {
                    let alt =
                        eta.sinh().abs() / ((eta.cosh() * w.theta.cos()).powi(2) - 1.0).sqrt();
                    assert_abs_diff_eq!(alt, ch, epsilon = 1e-9);
                }
                LittleGroupParams::Parabolic { .. } => {}
            }
        }
    }

    #[test]
    fn lens_dictionary_examples() {
        let e = wigner_from_lens(&lens(1.5, 1.5, 1.0)).unwrap();
        assert_abs_diff_eq!(e.lambda.sinh(), 0.5, epsilon = 1e-15);
        assert_abs_diff_eq!(e.theta.sin(), 1.0 / 1.25f64.sqrt(), epsilon = 1e-15);
        assert_abs_diff_eq!(e.theta, 1.107149, epsilon = 1e-6);
        assert!(wigner_matrix(&e).max_abs_diff(&Mat2::new(0.5, -0.5, 1.5, 0.5)) < 1e-12);

        let p = wigner_from_lens(&lens(2.0, 2.0, 1.0)).unwrap();
        assert_abs_diff_eq!(p.lambda.sinh(), 1.0, epsilon = 1e-15);
        assert_abs_diff_eq!(p.regime_indicator(), 0.0, epsilon = 1e-15);
        assert!(wigner_matrix(&p).max_abs_diff(&Mat2::new(1.0, 0.0, 2.0, 1.0)) < 1e-12);

        let c = lens(2.0, 3.0, 1.0);
        let h = wigner_from_lens(&c).unwrap();
        assert_abs_diff_eq!(h.lambda.sinh(), 1.428869, epsilon = 1e-6);
        assert_abs_diff_eq!(h.theta.sin(), 0.585206, epsilon = 1e-6);
        let x_back = h.lambda.sinh() + h.lambda.cosh() * h.theta.sin();
        assert_abs_diff_eq!(x_back, c.x, epsilon = 1e-12);
    }

    #[test]
    fn lens_dictionary_rejects_forged_non_camera_params() {
        let mut p = lens(2.0, 3.0, 1.0);
        p.z = 0.5;
        assert!(matches!(wigner_from_lens(&p), Err(Error::Configuration(_))));
    }

    #[test]
    fn cavity_examples() {
        let c = cavity_wigner(2.0).unwrap();
        assert_abs_diff_eq!(c.lambda, 1f64.asinh(), epsilon = 1e-15);
        assert_abs_diff_eq!(c.theta, FRAC_PI_4, epsilon = 1e-15);
        assert!(wigner_matrix(&c).max_abs_diff(&Mat2::new(1.0, 0.0, 2.0, 1.0)) < 1e-12);

        let c = cavity_wigner(1.5).unwrap();
        let l = wigner_from_lens(&lens(1.5, 1.5, 1.0)).unwrap();
        assert_abs_diff_eq!(c.lambda, l.lambda, epsilon = 1e-15);
        assert_abs_diff_eq!(c.theta, l.theta, epsilon = 1e-15);

        let near = cavity_wigner(1.0 + 1e-12).unwrap();
        assert!(near.lambda.abs() < 1e-11);
        assert_abs_diff_eq!(near.theta, FRAC_PI_2, epsilon = 1e-11);

        assert!(cavity_wigner(1.0).is_err());
        assert!(cavity_wigner(0.5).is_err());
        assert!(cavity_wigner(f64::NAN).is_err());
    }

    #[test]
    fn sign_quantity_examples() {
        assert_abs_diff_eq!(
            sign_quantity(&w(1f64.asinh(), FRAC_PI_4)).unwrap(),
            0.0,
            epsilon = 1e-15
        );
        assert!(sign_quantity(&w(-3.0, 0.1)).is_err());
        assert_eq!(
            eta_quality(&w(1f64.asinh(), FRAC_PI_4)).unwrap(),
            EtaQuality::NearContraction
        );
        assert_eq!(eta_quality(&elliptic_pair()).unwrap(), EtaQuality::Ok);
        assert_abs_diff_eq!(
            eta_from_sign_quantity(1.0 / 3.0),
            3f64.ln() / 2.0,
            epsilon = 1e-15
        );
        assert_abs_diff_eq!(
            eta_from_sign_quantity(-1.0 / 6.0),
            6f64.ln() / 2.0,
            epsilon = 1e-15
        );
    }

    #[test]
    fn little_from_wigner_domain() {
        assert!(matches!(
            little_from_wigner(&w(-3.0, 0.1), EPS),
            Err(Error::Domain(_))
        ));
        match little_from_wigner(&w(1f64.asinh(), FRAC_PI_4), EPS).unwrap() {
            LittleGroupParams::Parabolic { u } => assert_abs_diff_eq!(u, 2.0, epsilon = 1e-15),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn sweep_crosses_focal_point_once() {
        let recs = sweep(1.0, 2.0, 1.8, 2.3, 6, EPS).unwrap();
        assert_eq!(recs.len(), 6);
        let regimes: Vec<Regime> = recs.iter().map(|r| r.regime).collect();
        assert_eq!(
            regimes,
            vec![
                Regime::Elliptic,
                Regime::Elliptic,
                Regime::Parabolic,
                Regime::Hyperbolic,
                Regime::Hyperbolic,
                Regime::Hyperbolic
            ]
        );
        assert_eq!(count_sign_changes(recs.iter().map(|r| r.m12), EPS), 1);
    }

    #[test]
    fn cavity_sweep_is_monotone() {
        let recs = cavity_sweep(1.0, 1.9, 2.1, 21, EPS).unwrap();
        assert_abs_diff_eq!(recs[0].lambda, 0.9f64.asinh(), epsilon = 1e-12);
        assert_abs_diff_eq!(recs[20].lambda, 1.1f64.asinh(), epsilon = 1e-12);
        assert!(recs.windows(2).all(|p| p[1].lambda > p[0].lambda));
    }

    #[test]
    fn sweep_endpoints_and_errors() {
        let recs = sweep(1.0, 2.0, 1.5, 3.0, 2, EPS).unwrap();
        assert_eq!(recs.len(), 2);
        assert_eq!(recs[0].x2, 1.5);
        assert_eq!(recs[1].x2, 3.0);

        let err = sweep(1.0, 2.0, 0.9, 3.0, 5, EPS).unwrap_err();
        assert!(
            matches!(&err, Error::Configuration(m) if m.contains("d2_min")),
            "{err}"
        );
        let err = sweep(1.0, 0.5, 1.5, 3.0, 5, EPS).unwrap_err();
        assert!(
            matches!(&err, Error::Configuration(m) if m.contains("d1")),
            "{err}"
        );
        assert!(sweep(1.0, 2.0, 1.5, 3.0, 1, EPS).is_err());
        assert!(sweep(1.0, 2.0, 3.0, 1.5, 5, EPS).is_err());
    }

    #[test]
    fn sign_change_counter() {
        assert_eq!(count_sign_changes([1.0, 0.5, 0.0, -0.5, -1.0], 1e-12), 1);
        assert_eq!(count_sign_changes([1.0, -1.0, 1.0], 0.0), 2);
        assert_eq!(count_sign_changes([1.0, 1e-15, 1.0], 1e-12), 0);
    }

    proptest! {
        #[test]
        fn analytic_form_equals_triple_product(lambda in -3.0f64..3.0, theta in -1.57f64..1.57) {
            let p = w(lambda, theta);
            let m = wigner_matrix(&p);
            prop_assert!(m.rel_diff(&wigner_triple_product(&p)) < 1e-12);
            prop_assert!((m.det() - 1.0).abs() < 1e-12 * m.max_abs().powi(2).max(1.0));
        }

        #[test]
        fn representations_agree(lambda in 0.0f64..3.0, theta in 0.001f64..1.57) {
            let p = w(lambda, theta);
            let lg = little_from_wigner(&p, EPS).unwrap();
            let m = little_group_element(&lg).unwrap();
            prop_assert!(m.max_abs_diff(&wigner_matrix(&p)) < 1e-9, "{p:?} -> {lg:?}");
            let back = wigner_from_little(&lg).unwrap();
            prop_assert!(wigner_matrix(&back).max_abs_diff(&wigner_matrix(&p)) < 1e-9);
        }

        #[test]
        fn lens_dictionary_reproduces_core(ld1 in 0.01f64..2.3, ld2 in 0.01f64..2.3) {
            let p = lens(ld1.exp(), ld2.exp(), 1.0);
            let got = wigner_from_lens(&p).unwrap();
            prop_assert!(wigner_matrix(&got).max_abs_diff(&core_matrix(&p)) < 1e-9);
            prop_assert!(got.theta > 0.0 && got.theta <= FRAC_PI_2);
        }

        #[test]
        fn cavity_identity(x in 1.000001f64..10.0) {
            let c = cavity_wigner(x).unwrap();
            prop_assert!((c.lambda.cosh() * c.theta.sin() - 1.0).abs() < 1e-12);
            prop_assert!(wigner_matrix(&c).max_abs_diff(&cavity_matrix(x)) < 1e-9);
        }
    }
}
