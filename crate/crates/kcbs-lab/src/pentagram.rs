//! The five KCBS tests, their context structure, the quantum value of the
//! pentagram sum, and the classical bound obtained by brute force.
//!
//! Adjacent test axes are orthogonal exactly when `zeta_pent = pi/5`, which
//! is what makes the five pairs `(T_i, T_{i+1})` jointly measurable contexts.
//! For the state `(0, 0, 1)` the quantum sum of the five expectations is
//! `5 (1 - cos zeta) / (1 + cos zeta) = 0.52786...`, strictly below the
//! classical minimum of 1.

use std::f64::consts::FRAC_PI_2;

use serde::Serialize;

use crate::Error;
use crate::qutrit::{BinaryTest, ORTHO_TOL, Ray};

/// The five KCBS test directions at a common opening angle `zeta_pent`.
///
/// The vectors keep their textbook orientation: common normalization
/// `1 / sqrt(1 + cos zeta)`, shared third component `sqrt(cos zeta)`, and
/// first two components running through the angles `0, 4 zeta, -2 zeta,
/// 2 zeta, -4 zeta`. They are unit-norm but deliberately not reduced to the
/// canonical phase representative, so printed components match the usual
/// vector list sign for sign.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Pentagram {
    zeta_pent: f64,
    vectors: [Ray; 5],
}

impl Pentagram {
    /// Builds the pentagram at opening angle `zeta_pent` in `(0, pi/2)`.
    ///
    /// General angles are accepted so that [`Pentagram::verify`] can
    /// demonstrate that adjacency orthogonality singles out `pi/5`.
    pub fn new(zeta_pent: f64) -> Result<Self, Error> {
        if !(zeta_pent > 0.0 && zeta_pent < FRAC_PI_2) {
            return Err(Error::Domain(format!(
                "zeta_pent = {zeta_pent:.7} outside (0, pi/2); cos(zeta_pent) must be positive"
            )));
        }
        let root = zeta_pent.cos().sqrt();
        let (sin2, cos2) = (2.0 * zeta_pent).sin_cos();
        let (sin4, cos4) = (4.0 * zeta_pent).sin_cos();
        let vectors = [
            Ray::from_reals_oriented(1.0, 0.0, root)?,
            Ray::from_reals_oriented(cos4, sin4, root)?,
            Ray::from_reals_oriented(cos2, -sin2, root)?,
            Ray::from_reals_oriented(cos2, sin2, root)?,
            Ray::from_reals_oriented(cos4, -sin4, root)?,
        ];
        Ok(Pentagram { zeta_pent, vectors })
    }

    pub fn zeta_pent(&self) -> f64 {
        self.zeta_pent
    }

    pub fn vectors(&self) -> &[Ray; 5] {
        &self.vectors
    }

    pub fn tests(&self) -> [BinaryTest; 5] {
        self.vectors.map(BinaryTest::new)
    }

    /// Moduli of the five cyclic adjacency inner products
    /// `|<chi_i|chi_{i+1}>|`, `i = 1..5`.
    pub fn adjacency_moduli(&self) -> [f64; 5] {
        std::array::from_fn(|i| self.vectors[i].inner(&self.vectors[(i + 1) % 5]).norm())
    }

    /// Checks every adjacency inner product against `tol`.
    pub fn verify(&self, tol: f64) -> AdjacencyReport {
        AdjacencyReport {
            moduli: self.adjacency_moduli(),
            tol,
        }
    }

    /// The quantum pentagram sum `sum_i <T_i> = 5 - 2 sum_i |<chi_i|state>|^2`.
    pub fn kcbs_sum(&self, state: &Ray) -> f64 {
        self.tests().iter().map(|t| t.expectation(state)).sum()
    }
}

/// Outcome of an adjacency-orthogonality check.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct AdjacencyReport {
    /// `|<chi_i|chi_{i+1}>|` for the five cyclic pairs.
    pub moduli: [f64; 5],
    pub tol: f64,
}

impl AdjacencyReport {
    pub fn pass(&self) -> bool {
        self.moduli.iter().all(|m| *m <= self.tol)
    }

    pub fn worst(&self) -> f64 {
        self.moduli.iter().cloned().fold(0.0, f64::max)
    }
}

/// A deterministic outcome assignment to all five tests.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct AssignmentTuple(pub [i8; 5]);

impl AssignmentTuple {
    /// All 32 assignments, in mask order (bit i set means `t_i = -1`).
    pub fn all() -> impl Iterator<Item = AssignmentTuple> {
        (0u8..32).map(|mask| {
            AssignmentTuple(std::array::from_fn(|i| {
                if mask & (1 << i) != 0 { -1 } else { 1 }
            }))
        })
    }

    pub fn sum(&self) -> i32 {
        self.0.iter().map(|t| *t as i32).sum()
    }

    /// The exclusivity constraint: a -1 outcome forces +1 on both cyclic
    /// neighbours.
    pub fn satisfies_exclusivity(&self) -> bool {
        (0..5).all(|i| {
            self.0[i] != -1 || (self.0[(i + 1) % 5] == 1 && self.0[(i + 4) % 5] == 1)
        })
    }
}

/// The assignments that survive the exclusivity constraint. There are 11 of
/// them: the -1 positions form an independent set of the pentagon.
pub fn admissible_assignments() -> Vec<AssignmentTuple> {
    AssignmentTuple::all()
        .filter(AssignmentTuple::satisfies_exclusivity)
        .collect()
}

/// Minimum of `sum_i t_i` over all admissible assignments; brute force over
/// the 32 tuples gives 1 (at most two non-adjacent -1 entries fit on a
/// pentagon).
pub fn classical_min_sum() -> i32 {
    admissible_assignments()
        .iter()
        .map(AssignmentTuple::sum)
        .min()
        .expect("the all-plus assignment is always admissible")
}

/// Probabilities of the four outcome pairs of a two-test context, in the
/// order `(-1,-1), (-1,+1), (+1,-1), (+1,+1)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct JointOutcomeDistribution {
    pub p_mm: f64,
    pub p_mp: f64,
    pub p_pm: f64,
    pub p_pp: f64,
}

impl JointOutcomeDistribution {
    pub fn as_array(&self) -> [f64; 4] {
        [self.p_mm, self.p_mp, self.p_pm, self.p_pp]
    }

    pub fn sum(&self) -> f64 {
        self.p_mm + self.p_mp + self.p_pm + self.p_pp
    }

    pub fn max_abs_diff(&self, other: &JointOutcomeDistribution) -> f64 {
        self.as_array()
            .iter()
            .zip(other.as_array())
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max)
    }
}

/// Quantum joint distribution of two compatible tests on `state`.
///
/// Both tests cannot fire -1 at once (the projectors are orthogonal), which
/// pins the whole table: `p(-1,+1) = |<chi_a|state>|^2`,
/// `p(+1,-1) = |<chi_b|state>|^2`, and the remainder goes to `(+1,+1)`.
pub fn context_joint_qm(
    state: &Ray,
    a: &BinaryTest,
    b: &BinaryTest,
) -> Result<JointOutcomeDistribution, Error> {
    let overlap = a.axis().inner(b.axis()).norm();
    if overlap > ORTHO_TOL {
        return Err(Error::NotAContext {
            overlap,
            tol: ORTHO_TOL,
        });
    }
    let p_mp = a.born_prob(state);
    let p_pm = b.born_prob(state);
    let p_pp = (1.0 - p_mp - p_pm).max(0.0);
    Ok(JointOutcomeDistribution {
        p_mm: 0.0,
        p_mp,
        p_pm,
        p_pp,
    })
}
