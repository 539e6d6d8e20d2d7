//! A verification laboratory for qutrit contextuality.
//!
//! The crate builds the five KCBS test directions, computes Born-rule
//! statistics for the maximally symmetric qutrit state, gauge-fixes arbitrary
//! compatible test pairs to canonical parameters `(zeta, theta)`, and checks a
//! sphere-based non-contextual hidden-variable model against quantum mechanics
//! through three independent routes: closed form, numerical quadrature, and a
//! seeded Monte Carlo sampler.
//!
//! ```
//! use kcbs_lab::{Pentagram, Ray, classical_min_sum};
//!
//! let state = Ray::z_axis();
//! let pentagram = Pentagram::new(std::f64::consts::PI / 5.0).unwrap();
//! let quantum = pentagram.kcbs_sum(&state);
//! assert!(quantum < classical_min_sum() as f64);
//! ```

pub mod gauge;
pub mod hidden;
pub mod pentagram;
pub mod qutrit;

pub use gauge::{CanonicalContextParams, chi1_of, chi2_of, gauge_fix, solve_omega, validate_domain};
pub use hidden::{
    HiddenConfig, SimulationResult, density, integrate_oracle, joint_analytic, respond_t1,
    respond_t2, sample_config, simulate,
};
pub use pentagram::{
    AssignmentTuple, JointOutcomeDistribution, Pentagram, admissible_assignments,
    classical_min_sum, context_joint_qm,
};
pub use qutrit::{BinaryTest, ORTHO_TOL, Ray};

/// Errors shared by all modules of the crate.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    /// Input vector too short to define a direction.
    #[error("zero vector: squared norm {norm_sqr:.3e} is below the 1e-24 threshold")]
    ZeroVector { norm_sqr: f64 },
    /// A NaN or infinite component where a finite amplitude is required.
    #[error("non-finite component in input")]
    NonFinite,
    /// A parameter outside the range on which the operation is defined.
    #[error("domain error: {0}")]
    Domain(String),
    /// The two test axes are not orthogonal, so the tests are incompatible.
    #[error("not a context: |<a|b>| = {overlap:.3e} exceeds tolerance {tol:.1e}")]
    NotAContext { overlap: f64, tol: f64 },
}

// The guide chapters double as doc-tests so their code blocks cannot rot.
#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/pentagram.md")]
    mod pentagram {}
    #[doc = include_str!("../../../book/src/contexts.md")]
    mod contexts {}
    #[doc = include_str!("../../../book/src/hidden-model.md")]
    mod hidden_model {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}
