//! Parameterization of compatible test pairs and gauge fixing.
//!
//! With the state along the Z axis, any rotation about that axis is
//! unobservable, so a compatible pair `(a, b)` is physically identified by
//! two angles only: `zeta_canon` places the first axis in the XZ plane,
//! `chi1 = (sin zeta, 0, cos zeta)`, and `theta` is the polar angle of the
//! second axis. Orthogonality then pins the remaining direction cosine,
//! `cos omega = -1 / (tan zeta tan theta)`, which has a solution exactly for
//! `theta` in `[pi/2, pi/2 + zeta]`. The leftover phase `rho` never enters
//! any probability.

use std::f64::consts::{FRAC_PI_2, PI};

use num_complex::Complex64;
use serde::Serialize;

use crate::Error;
use crate::qutrit::{ORTHO_TOL, Ray};

/// Tolerated overshoot of `cos omega` above 1 before the pair is declared
/// outside the compatible domain.
const COS_OMEGA_TOL: f64 = 1e-12;

/// Gauge-fixed coordinates of a compatible test pair.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CanonicalContextParams {
    /// Polar angle of the first test axis, in `[0, pi/2]`.
    pub zeta_canon: f64,
    /// Polar angle of the second test axis, in `[pi/2, pi/2 + zeta_canon]`.
    pub theta: f64,
    /// Free phase of the second axis; irrelevant to every probability and
    /// reported as 0 by [`gauge_fix`].
    pub rho: f64,
}

/// True iff `(zeta_canon, theta)` lies in the compatible-pair domain:
/// `zeta_canon` in `[0, pi/2]` and `theta` in `[pi/2, pi/2 + zeta_canon]`.
pub fn validate_domain(zeta_canon: f64, theta: f64) -> bool {
    zeta_canon.is_finite()
        && theta.is_finite()
        && (0.0..=FRAC_PI_2).contains(&zeta_canon)
        && theta >= FRAC_PI_2
        && theta <= FRAC_PI_2 + zeta_canon
}

pub(crate) fn domain_error(zeta_canon: f64, theta: f64) -> Error {
    Error::Domain(format!(
        "theta = {theta:.7} outside [pi/2, pi/2 + zeta_canon] = [{:.7}, {:.7}] for zeta_canon = {zeta_canon:.7}",
        FRAC_PI_2,
        FRAC_PI_2 + zeta_canon,
    ))
}

/// The first test axis, `(sin zeta, 0, cos zeta)`.
pub fn chi1_of(zeta_canon: f64) -> Result<Ray, Error> {
    if !(zeta_canon.is_finite() && (0.0..=FRAC_PI_2).contains(&zeta_canon)) {
        return Err(Error::Domain(format!(
            "zeta_canon = {zeta_canon:.7} outside [0, pi/2]"
        )));
    }
    let (sin, cos) = zeta_canon.sin_cos();
    Ray::from_reals(sin, 0.0, cos)
}

/// Solves the orthogonality constraint for the azimuthal opening of the
/// second axis: the unique `omega` in `[0, pi/2]` with
/// `cos omega = -1 / (tan zeta_canon tan theta)`.
///
/// At `theta = pi/2` the constraint degenerates (`cot theta = 0`) and the
/// continuous limit `omega = pi/2` is returned.
pub fn solve_omega(zeta_canon: f64, theta: f64) -> Result<f64, Error> {
    if !(zeta_canon.is_finite() && (0.0..=FRAC_PI_2).contains(&zeta_canon)) {
        return Err(Error::Domain(format!(
            "zeta_canon = {zeta_canon:.7} outside [0, pi/2]"
        )));
    }
    if !(FRAC_PI_2..PI).contains(&theta) {
        return Err(domain_error(zeta_canon, theta));
    }
    if theta == FRAC_PI_2 {
        return Ok(FRAC_PI_2);
    }
    if zeta_canon == 0.0 {
        // chi1 coincides with the state; only theta = pi/2 is compatible.
        return Err(domain_error(zeta_canon, theta));
    }
    // -cot(zeta) cot(theta), written without the tan singularity at pi/2.
    let cos_omega =
        -(zeta_canon.cos() * theta.cos()) / (zeta_canon.sin() * theta.sin());
    if cos_omega > 1.0 + COS_OMEGA_TOL {
        return Err(domain_error(zeta_canon, theta));
    }
    Ok(cos_omega.min(1.0).acos())
}

/// The second test axis for given `(zeta_canon, theta, rho)`:
/// `(sin theta cos omega, e^{i rho} sin theta sin omega, cos theta)` with
/// `omega` from [`solve_omega`], returned as the canonical phase
/// representative. It is orthogonal to [`chi1_of`] by construction and its
/// third component has modulus `|cos theta|`.
pub fn chi2_of(zeta_canon: f64, theta: f64, rho: f64) -> Result<Ray, Error> {
    if !rho.is_finite() {
        return Err(Error::NonFinite);
    }
    let omega = solve_omega(zeta_canon, theta)?;
    let (sin_th, cos_th) = theta.sin_cos();
    let (sin_om, cos_om) = omega.sin_cos();
    let phase = Complex64::from_polar(1.0, rho);
    Ray::new(
        Complex64::new(sin_th * cos_om, 0.0),
        phase * (sin_th * sin_om),
        Complex64::new(cos_th, 0.0),
    )
}

/// Reduces an ordered orthogonal pair `(a, b)` to canonical parameters,
/// stripping the rotation about the state axis.
///
/// `a` maps to the `chi1` slot and `b` to the `chi2` slot:
/// `zeta_canon = arccos |<a|state>|`, `theta = arccos(-|<b|state>|)`, and
/// `rho = 0` since no probability depends on it. The caller aligns the state
/// with `(0, 0, 1)` beforehand. The result always satisfies
/// [`validate_domain`]: orthogonality of the pair forces
/// `|<a|state>|^2 + |<b|state>|^2 <= 1`, i.e. `theta <= pi/2 + zeta_canon`.
pub fn gauge_fix(state: &Ray, a: &Ray, b: &Ray) -> Result<CanonicalContextParams, Error> {
    let overlap = a.inner(b).norm();
    if overlap > ORTHO_TOL {
        return Err(Error::NotAContext {
            overlap,
            tol: ORTHO_TOL,
        });
    }
    let align_a = a.inner(state).norm().min(1.0);
    let align_b = b.inner(state).norm().min(1.0);
    let zeta_canon = align_a.acos();
    // Rounding can push arccos past the closed boundary by an ulp; clamp so
    // the domain invariant holds exactly.
    let theta = (-align_b).acos().min(FRAC_PI_2 + zeta_canon);
    Ok(CanonicalContextParams {
        zeta_canon,
        theta,
        rho: 0.0,
    })
}
