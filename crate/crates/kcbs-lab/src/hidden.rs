//! The non-contextual hidden-variable model on the unit sphere.
//!
//! A hidden configuration is a point `(Omega, chi_az)` drawn from the uniform
//! sphere density `g = sin(Omega) / 4pi`. Each gauge-fixed test answers from
//! the polar angle alone: the first test fires -1 on `Omega in (2 zeta, pi]`,
//! the second on `Omega in (0, 2 theta - pi]`. Within the compatible domain
//! `2 theta - pi <= 2 zeta`, so the two -1 bands never overlap and the joint
//! statistics integrate in closed form to exactly the quantum table.
//!
//! Three routes to the same distribution live here: [`joint_analytic`]
//! (closed form), [`integrate_oracle`] (midpoint quadrature of the density
//! over each response region), and [`simulate`] (seeded Monte Carlo).

use std::f64::consts::{PI, TAU};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::Error;
use crate::gauge::{CanonicalContextParams, domain_error, validate_domain};
use crate::pentagram::JointOutcomeDistribution;

/// Identifier of the sampling generator; part of the reproducibility
/// contract, so it is recorded in every [`SimulationResult`].
pub const RNG_ALGORITHM: &str = "chacha8";

/// Samples per Monte Carlo chunk. Each chunk owns an independent ChaCha
/// stream, so counts depend on `(seed, n_samples)` only, never on thread
/// scheduling.
pub const CHUNK_SIZE: u64 = 1 << 16;

/// One hidden configuration: a point on the unit sphere in polar coordinates
/// with respect to the state axis.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HiddenConfig {
    /// Polar angle, in `[0, pi]`.
    pub omega: f64,
    /// Azimuth, in `[0, 2pi)`. No response function reads it; it is carried
    /// only because the density is defined on the full sphere.
    pub chi_az: f64,
}

/// The normalized sphere density `g(Omega, chi) = sin(Omega) / 4pi`.
pub fn density(omega: f64) -> Result<f64, Error> {
    if !(omega.is_finite() && (0.0..=PI).contains(&omega)) {
        return Err(Error::Domain(format!(
            "omega = {omega:.7} outside [0, pi]"
        )));
    }
    Ok(omega.sin() / (4.0 * PI))
}

/// Deterministic response of the first gauge-fixed test: -1 iff
/// `omega > 2 zeta_canon`. Depends on the configuration and `zeta_canon`
/// only; `omega = 0` (measure zero) maps to +1.
pub fn respond_t1(cfg: &HiddenConfig, zeta_canon: f64) -> i8 {
    debug_assert!((0.0..=PI).contains(&cfg.omega));
    debug_assert!((0.0..=PI / 2.0).contains(&zeta_canon));
    if cfg.omega > 2.0 * zeta_canon { -1 } else { 1 }
}

/// Deterministic response of the second gauge-fixed test: -1 iff
/// `omega in (0, 2 theta - pi]`. Depends on the configuration and `theta`
/// only; `omega = 0` (measure zero) maps to +1.
pub fn respond_t2(cfg: &HiddenConfig, theta: f64) -> i8 {
    debug_assert!((0.0..=PI).contains(&cfg.omega));
    debug_assert!((PI / 2.0..=PI).contains(&theta));
    let threshold = 2.0 * theta - PI;
    if cfg.omega > 0.0 && cfg.omega <= threshold {
        -1
    } else {
        1
    }
}

fn require_domain(params: &CanonicalContextParams) -> Result<(), Error> {
    if validate_domain(params.zeta_canon, params.theta) {
        Ok(())
    } else {
        Err(domain_error(params.zeta_canon, params.theta))
    }
}

/// Closed-form joint distribution of the model:
/// `p(-1,+1) = (1 + cos 2 zeta) / 2`, `p(+1,-1) = (1 + cos 2 theta) / 2`,
/// `p(+1,+1) = -(cos 2 zeta + cos 2 theta) / 2`, `p(-1,-1) = 0`.
pub fn joint_analytic(
    params: &CanonicalContextParams,
) -> Result<JointOutcomeDistribution, Error> {
    require_domain(params)?;
    let cos_2z = (2.0 * params.zeta_canon).cos();
    let cos_2t = (2.0 * params.theta).cos();
    // The abs() straightens a possible -0.0 out of the negation.
    Ok(JointOutcomeDistribution {
        p_mm: 0.0,
        p_mp: (0.5 * (1.0 + cos_2z)).clamp(0.0, 1.0),
        p_pm: (0.5 * (1.0 + cos_2t)).clamp(0.0, 1.0),
        p_pp: (-0.5 * (cos_2z + cos_2t)).clamp(0.0, 1.0).abs(),
    })
}

/// Independent numerical route to the joint distribution: composite midpoint
/// quadrature of the density over each response region, with the azimuth
/// integrated out analytically (the integrands do not depend on it). Agrees
/// with [`joint_analytic`] to `O(n_panels^-2)`.
pub fn integrate_oracle(
    params: &CanonicalContextParams,
    n_panels: u32,
) -> Result<JointOutcomeDistribution, Error> {
    require_domain(params)?;
    if n_panels < 100 {
        return Err(Error::Domain(format!(
            "n_panels = {n_panels} below the minimum of 100"
        )));
    }
    let two_zeta = 2.0 * params.zeta_canon;
    let threshold = (2.0 * params.theta - PI).clamp(0.0, two_zeta);
    Ok(JointOutcomeDistribution {
        p_mm: 0.0,
        p_mp: half_sin_integral(two_zeta, PI, n_panels),
        p_pm: half_sin_integral(0.0, threshold, n_panels),
        p_pp: half_sin_integral(threshold, two_zeta, n_panels),
    })
}

/// Midpoint rule for `int_a^b sin(x)/2 dx`: the sphere density with the
/// `2 pi` azimuth factor already applied.
fn half_sin_integral(a: f64, b: f64, n_panels: u32) -> f64 {
    if b <= a {
        return 0.0;
    }
    let width = (b - a) / n_panels as f64;
    let sum: f64 = (0..n_panels)
        .map(|k| (a + (k as f64 + 0.5) * width).sin())
        .sum();
    0.5 * sum * width
}

/// Draws one configuration uniformly from the sphere: `cos Omega` uniform on
/// `[-1, 1]` (inverse CDF, exact and branch-free) and the azimuth uniform on
/// `[0, 2pi)`.
pub fn sample_config<R: Rng + ?Sized>(rng: &mut R) -> HiddenConfig {
    let cos_omega: f64 = rng.random_range(-1.0..=1.0);
    let chi_az: f64 = rng.random_range(0.0..TAU);
    HiddenConfig {
        omega: cos_omega.acos(),
        chi_az,
    }
}

/// Empirical estimate of the joint distribution from `n_samples` hidden
/// configurations.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SimulationResult {
    /// Outcome tallies in the order `(-1,-1), (-1,+1), (+1,-1), (+1,+1)`.
    pub counts: [u64; 4],
    pub n_samples: u64,
    pub estimate: JointOutcomeDistribution,
    /// Plug-in binomial standard errors `sqrt(p (1-p) / n)` per outcome.
    pub std_errors: [f64; 4],
    pub rng_algorithm: &'static str,
    pub chunk_count: u64,
}

impl SimulationResult {
    /// Per-outcome z-scores against a reference distribution, using the
    /// plug-in standard errors. An outcome with zero standard error scores 0
    /// when it matches the reference exactly and infinity otherwise.
    pub fn z_scores(&self, reference: &JointOutcomeDistribution) -> [f64; 4] {
        let estimate = self.estimate.as_array();
        let reference = reference.as_array();
        std::array::from_fn(|i| {
            let diff = estimate[i] - reference[i];
            if self.std_errors[i] > 0.0 {
                diff / self.std_errors[i]
            } else if diff == 0.0 {
                0.0
            } else {
                f64::INFINITY
            }
        })
    }
}

/// Runs the Monte Carlo experiment: draws `n_samples` configurations,
/// applies the two response functions, and tallies the four outcome pairs.
///
/// Sampling is split into fixed-size chunks, each with its own ChaCha8
/// stream derived from `seed`, and chunks may be processed in parallel;
/// `(seed, n_samples)` fully determine every count regardless of thread
/// count.
pub fn simulate(
    params: &CanonicalContextParams,
    n_samples: u64,
    seed: u64,
) -> Result<SimulationResult, Error> {
    require_domain(params)?;
    if n_samples == 0 {
        return Err(Error::Domain("n_samples must be at least 1".into()));
    }
    let chunk_count = n_samples.div_ceil(CHUNK_SIZE);
    let zeta_canon = params.zeta_canon;
    let theta = params.theta;
    let counts = (0..chunk_count)
        .into_par_iter()
        .map(|chunk| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(chunk);
            let remaining = n_samples - chunk * CHUNK_SIZE;
            let mut tally = [0u64; 4];
            for _ in 0..remaining.min(CHUNK_SIZE) {
                let cfg = sample_config(&mut rng);
                let outcome = match (respond_t1(&cfg, zeta_canon), respond_t2(&cfg, theta)) {
                    (-1, -1) => 0,
                    (-1, _) => 1,
                    (_, -1) => 2,
                    _ => 3,
                };
                tally[outcome] += 1;
            }
            tally
        })
        .reduce(
            || [0u64; 4],
            |a, b| std::array::from_fn(|i| a[i] + b[i]),
        );
    let n = n_samples as f64;
    let estimates: [f64; 4] = std::array::from_fn(|i| counts[i] as f64 / n);
    Ok(SimulationResult {
        counts,
        n_samples,
        estimate: JointOutcomeDistribution {
            p_mm: estimates[0],
            p_mp: estimates[1],
            p_pm: estimates[2],
            p_pp: estimates[3],
        },
        std_errors: std::array::from_fn(|i| (estimates[i] * (1.0 - estimates[i]) / n).sqrt()),
        rng_algorithm: RNG_ALGORITHM,
        chunk_count,
    })
}
