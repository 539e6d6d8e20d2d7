//! Rays, binary tests, and the Born rule for a three-level system.
//!
//! A [`Ray`] is a unit vector in C^3 modulo global phase. Physical quantities
//! (inner-product moduli, Born probabilities) never depend on the phase
//! representative, but testable equality does, so [`Ray::new`] fixes a
//! canonical one: the first component whose modulus exceeds `1e-12` is made
//! real and nonnegative.

use num_complex::Complex64;

use crate::Error;

/// Default absolute tolerance on an inner-product modulus below which two
/// rays count as orthogonal. All constructions of interest are exactly
/// orthogonal; the tolerance only absorbs floating-point error.
pub const ORTHO_TOL: f64 = 1e-10;

/// A component below this modulus is treated as zero when picking the
/// phase-canonicalization pivot.
const PHASE_PIVOT_TOL: f64 = 1e-12;

/// Squared-norm threshold under which an input is rejected as a zero vector.
const MIN_NORM_SQR: f64 = 1e-24;

/// Renormalization is skipped when the norm is already this close to one, so
/// that canonicalization is exactly idempotent.
const NORM_GATE: f64 = 1e-14;

/// A unit-norm complex 3-vector; represents a test direction or the state.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Ray([Complex64; 3]);

impl Ray {
    /// Builds the canonical ray along `(c0, c1, c2)`.
    ///
    /// The input is scaled to unit norm and rotated by a global phase so that
    /// the first component with modulus above `1e-12` is real and
    /// nonnegative. Parallel inputs (equal up to a nonzero complex scalar)
    /// map to the identical representative, and the map is exactly
    /// idempotent.
    pub fn new(c0: Complex64, c1: Complex64, c2: Complex64) -> Result<Self, Error> {
        let components = [c0, c1, c2];
        if components.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::NonFinite);
        }
        let norm_sqr: f64 = components.iter().map(Complex64::norm_sqr).sum();
        if norm_sqr <= MIN_NORM_SQR {
            return Err(Error::ZeroVector { norm_sqr });
        }
        Ok(Ray(canonicalized(components)))
    }

    /// Canonical ray with real components.
    pub fn from_reals(c0: f64, c1: f64, c2: f64) -> Result<Self, Error> {
        Self::new(c0.into(), c1.into(), c2.into())
    }

    /// The preferred state direction `(0, 0, 1)`.
    pub fn z_axis() -> Self {
        Ray([
            Complex64::new(0.0, 0.0),
            Complex64::new(0.0, 0.0),
            Complex64::new(1.0, 0.0),
        ])
    }

    /// Normalizes real components but keeps their sign orientation, so that
    /// textbook vector lists survive verbatim. The result is unit-norm but
    /// not necessarily phase-canonical.
    pub(crate) fn from_reals_oriented(c0: f64, c1: f64, c2: f64) -> Result<Self, Error> {
        let components = [c0, c1, c2];
        if components.iter().any(|x| !x.is_finite()) {
            return Err(Error::NonFinite);
        }
        let norm_sqr: f64 = components.iter().map(|x| x * x).sum();
        if norm_sqr <= MIN_NORM_SQR {
            return Err(Error::ZeroVector { norm_sqr });
        }
        let mut c = components.map(|x| Complex64::new(x, 0.0));
        renormalize(&mut c, norm_sqr);
        Ok(Ray(c))
    }

    pub fn components(&self) -> [Complex64; 3] {
        self.0
    }

    pub fn norm(&self) -> f64 {
        self.0.iter().map(Complex64::norm_sqr).sum::<f64>().sqrt()
    }

    /// The Hermitian inner product `<self|other>`: conjugate-linear in
    /// `self`, linear in `other`.
    pub fn inner(&self, other: &Ray) -> Complex64 {
        self.0
            .iter()
            .zip(other.0.iter())
            .map(|(a, b)| a.conj() * b)
            .sum()
    }

    /// True iff `|<self|other>|` does not exceed `tol`.
    pub fn is_orthogonal(&self, other: &Ray, tol: f64) -> bool {
        debug_assert!(tol > 0.0);
        self.inner(other).norm() <= tol
    }

    /// Rotation about the state axis: the gauge transformation that leaves
    /// `(0, 0, 1)` fixed.
    ///
    /// Acts as the real SO(2) block `(c0, c1) -> (c0 cos a - c1 sin a,
    /// c0 sin a + c1 cos a)` and keeps `c2` untouched, so it preserves all
    /// inner products between co-rotated rays and the phase orientation of
    /// its input.
    pub fn rotate_z(&self, angle: f64) -> Ray {
        let (sin, cos) = angle.sin_cos();
        let [c0, c1, c2] = self.0;
        let mut rotated = [c0 * cos - c1 * sin, c0 * sin + c1 * cos, c2];
        let norm_sqr: f64 = rotated.iter().map(Complex64::norm_sqr).sum();
        renormalize(&mut rotated, norm_sqr);
        Ray(rotated)
    }

    /// The canonical phase representative of this ray.
    pub fn canonicalized(&self) -> Ray {
        Ray(canonicalized(self.0))
    }
}

fn renormalize(c: &mut [Complex64; 3], norm_sqr: f64) {
    let norm = norm_sqr.sqrt();
    if (norm - 1.0).abs() > NORM_GATE {
        for z in c.iter_mut() {
            *z /= norm;
        }
    }
}

fn canonicalized(mut c: [Complex64; 3]) -> [Complex64; 3] {
    let norm_sqr: f64 = c.iter().map(Complex64::norm_sqr).sum();
    renormalize(&mut c, norm_sqr);
    if let Some(pivot) = c.iter().position(|z| z.norm() > PHASE_PIVOT_TOL) {
        let modulus = c[pivot].norm();
        if c[pivot].im != 0.0 || c[pivot].re < 0.0 {
            let phase = (c[pivot] / modulus).conj();
            for z in c.iter_mut() {
                *z *= phase;
            }
            // The pivot is |c| * e^{-i arg c} exactly; write it that way.
            c[pivot] = Complex64::new(modulus, 0.0);
        }
    }
    c
}

/// The observable `T = 1 - 2|chi><chi|` with outcomes +-1; outcome -1 means
/// "projected onto the axis".
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BinaryTest {
    axis: Ray,
}

impl BinaryTest {
    pub fn new(axis: Ray) -> Self {
        BinaryTest { axis }
    }

    pub fn axis(&self) -> &Ray {
        &self.axis
    }

    /// Born probability of the -1 outcome, `|<chi|state>|^2`, clamped to
    /// `[0, 1]`.
    pub fn born_prob(&self, state: &Ray) -> f64 {
        self.axis.inner(state).norm_sqr().clamp(0.0, 1.0)
    }

    /// Expectation value `<T> = 1 - 2 |<chi|state>|^2`, in `[-1, 1]`.
    pub fn expectation(&self, state: &Ray) -> f64 {
        1.0 - 2.0 * self.born_prob(state)
    }
}
