//! Acceptance gate: one test per exit criterion, each printing a pass line
//! with the measured numbers. Run with `--nocapture` to see them:
//!
//! ```text
//! cargo test -p kcbs-lab --test acceptance -- --nocapture
//! ```

use std::f64::consts::{FRAC_PI_2, PI, TAU};
use std::process::Command;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use kcbs_lab::{
    CanonicalContextParams, JointOutcomeDistribution, Pentagram, Ray, admissible_assignments,
    chi1_of, chi2_of, classical_min_sum, gauge_fix, integrate_oracle, joint_analytic, simulate,
};

fn run_cli(args: &[&str]) -> std::process::Output {
    Command::new(env!("CARGO_BIN_EXE_kcbs-lab"))
        .args(args)
        .env_remove("KCBS_LAB_THREADS")
        .output()
        .expect("binary runs")
}

fn cli_json(args: &[&str]) -> serde_json::Value {
    let out = run_cli(args);
    assert_eq!(out.status.code(), Some(0), "non-zero exit for {args:?}");
    serde_json::from_slice(&out.stdout).expect("valid json")
}

fn assert_runtime(elapsed: Duration, bound: Duration, criterion: &str) {
    assert!(
        elapsed < bound,
        "{criterion} took {elapsed:?}, bound {bound:?}"
    );
}

fn pentagram_params() -> CanonicalContextParams {
    let p = Pentagram::new(PI / 5.0).unwrap();
    gauge_fix(&Ray::z_axis(), &p.vectors()[0], &p.vectors()[1]).unwrap()
}

#[test]
fn acceptance_1_quantum_kcbs_sum() {
    let start = Instant::now();
    let report = cli_json(&["pentagram", "--format", "json"]);
    let sum = report["results"]["quantum_sum"].as_f64().unwrap();
    let delta = (sum - 0.52786).abs();
    assert!(delta <= 1e-5, "quantum sum {sum} misses 0.52786 by {delta}");
    let elapsed = start.elapsed();
    assert_runtime(elapsed, Duration::from_secs(1), "criterion 1");
    println!(
        "acceptance 1 (quantum KCBS sum): PASS (sum = {sum:.7}, |delta| = {delta:.1e} <= 1e-5, {elapsed:?})"
    );
}

#[test]
fn acceptance_2_classical_bound() {
    let start = Instant::now();
    let admissible = admissible_assignments();
    let minimum = classical_min_sum();
    assert_eq!(minimum, 1);
    assert_eq!(admissible.len(), 11);

    // Independent oracle: independent sets of the 5-cycle as bitmasks. A
    // subset is admissible iff no two set bits are cyclically adjacent, and
    // its assignment sum is 5 - 2 popcount.
    let rotate = |mask: u32| ((mask << 1) | (mask >> 4)) & 0b11111;
    let independent_sets: Vec<u32> = (0u32..32).filter(|m| m & rotate(*m) == 0).collect();
    assert_eq!(independent_sets.len(), 11);
    let oracle_min = independent_sets
        .iter()
        .map(|m| 5 - 2 * m.count_ones() as i32)
        .min()
        .unwrap();
    assert_eq!(oracle_min, minimum);
    let elapsed = start.elapsed();
    assert_runtime(elapsed, Duration::from_secs(1), "criterion 2");
    println!(
        "acceptance 2 (classical bound): PASS (min sum = {minimum}, admissible = {}, oracle agrees, {elapsed:?})",
        admissible.len()
    );
}

#[test]
fn acceptance_3_pentagram_structure() {
    let start = Instant::now();
    let aligned = Pentagram::new(PI / 5.0).unwrap();
    let worst_aligned = aligned.verify(1e-12).worst();
    assert!(
        worst_aligned < 1e-12,
        "adjacency modulus {worst_aligned} at pi/5"
    );
    for offset in [0.01, -0.01] {
        let skewed = Pentagram::new(PI / 5.0 + offset).unwrap();
        let worst = skewed.verify(1e-3).worst();
        assert!(worst > 1e-3, "moduli stay below 1e-3 at pi/5 {offset:+}");
    }
    let elapsed = start.elapsed();
    assert_runtime(elapsed, Duration::from_secs(1), "criterion 3");
    println!(
        "acceptance 3 (pentagram structure): PASS (max modulus at pi/5 = {worst_aligned:.1e}, off-angle breaks > 1e-3, {elapsed:?})"
    );
}

#[test]
fn acceptance_4_model_quantum_equivalence() {
    let start = Instant::now();
    let report = cli_json(&["sweep", "--grid", "50", "--format", "json"]);
    let max = report["results"]["max_abs_discrepancy"].as_f64().unwrap();
    assert_eq!(report["results"]["rows"].as_array().unwrap().len(), 2500);
    assert!(max < 1e-12, "max |QM - HV| = {max}");
    let elapsed = start.elapsed();
    assert_runtime(elapsed, Duration::from_secs(5), "criterion 4");
    println!(
        "acceptance 4 (model-quantum equivalence): PASS (50x50 grid, max |QM - HV| = {max:.1e} < 1e-12, {elapsed:?})"
    );
}

#[test]
fn acceptance_5_quadrature_oracle() {
    let start = Instant::now();
    let grid = 10;
    let mut worst: f64 = 0.0;
    for i in 0..grid {
        let zeta = (i as f64 + 0.5) / grid as f64 * FRAC_PI_2;
        for j in 0..grid {
            let theta = FRAC_PI_2 + (j as f64 + 0.5) / grid as f64 * zeta;
            let params = CanonicalContextParams {
                zeta_canon: zeta,
                theta,
                rho: 0.0,
            };
            let quad = integrate_oracle(&params, 10_000).unwrap();
            let closed = joint_analytic(&params).unwrap();
            worst = worst.max(quad.max_abs_diff(&closed));
        }
    }
    assert!(worst < 1e-7, "quadrature misses closed form by {worst}");
    let elapsed = start.elapsed();
    assert_runtime(elapsed, Duration::from_secs(10), "criterion 5");
    println!(
        "acceptance 5 (quadrature oracle): PASS (10x10 grid, 1e4 panels, max diff = {worst:.1e} < 1e-7, {elapsed:?})"
    );
}

#[test]
fn acceptance_6_monte_carlo_consistency() {
    let start = Instant::now();
    let params = pentagram_params();
    let result = simulate(&params, 1_000_000, 42).unwrap();
    let reference = JointOutcomeDistribution {
        p_mm: 0.0,
        p_mp: 0.4472136,
        p_pm: 0.4472136,
        p_pp: 0.1055728,
    };
    let z_scores = result.z_scores(&reference);
    let max_z = z_scores.iter().fold(0.0f64, |acc, z| acc.max(z.abs()));
    assert!(max_z <= 4.0, "z-scores {z_scores:?}");
    assert_eq!(result.counts[0], 0, "(-1,-1) must never occur");

    // Determinism at the interface: two runs, identical bytes.
    let args = ["simulate", "--samples", "1000000", "--seed", "42"];
    let first = run_cli(&args);
    let second = run_cli(&args);
    assert_eq!(first.status.code(), Some(0));
    assert_eq!(first.stdout, second.stdout, "reports differ between runs");
    let elapsed = start.elapsed();
    assert_runtime(elapsed, Duration::from_secs(10), "criterion 6");
    println!(
        "acceptance 6 (Monte Carlo consistency): PASS (n = 1e6, seed 42, max |z| = {max_z:.2} <= 4, (-1,-1) count = 0, byte-identical reruns, {elapsed:?})"
    );
}

#[test]
fn acceptance_7_gauge_round_trip() {
    let start = Instant::now();
    let state = Ray::z_axis();
    let mut rng = ChaCha8Rng::seed_from_u64(2026);
    let mut worst_zeta: f64 = 0.0;
    let mut worst_theta: f64 = 0.0;
    for _ in 0..10_000 {
        // Margins keep arccos conditioning comfortably inside the 1e-10
        // tolerance; the domain edges themselves are degenerate gauge orbits.
        let zeta = rng.random_range(1e-3..FRAC_PI_2 - 1e-3);
        let theta = FRAC_PI_2 + rng.random_range(0.0..1.0) * zeta;
        let rho = rng.random_range(0.0..TAU);
        let a = chi1_of(zeta).unwrap();
        let b = chi2_of(zeta, theta, rho).unwrap();
        let fixed = gauge_fix(&state, &a, &b).unwrap();
        worst_zeta = worst_zeta.max((fixed.zeta_canon - zeta).abs());
        worst_theta = worst_theta.max((fixed.theta - theta).abs());

        let angle = rng.random_range(-7.0..7.0);
        let rotated = gauge_fix(&state, &a.rotate_z(angle), &b.rotate_z(angle)).unwrap();
        assert!((rotated.zeta_canon - fixed.zeta_canon).abs() < 1e-12);
        assert!((rotated.theta - fixed.theta).abs() < 1e-12);
    }
    assert!(worst_zeta < 1e-10, "zeta recovery error {worst_zeta}");
    assert!(worst_theta < 1e-10, "theta recovery error {worst_theta}");
    let elapsed = start.elapsed();
    assert_runtime(elapsed, Duration::from_secs(5), "criterion 7");
    println!(
        "acceptance 7 (gauge round trip): PASS (10^4 samples, max errors zeta {worst_zeta:.1e} / theta {worst_theta:.1e} < 1e-10, rotation-invariant, {elapsed:?})"
    );
}

#[test]
fn acceptance_8_kcbs_sum_from_the_hidden_model() {
    let start = Instant::now();
    let p = Pentagram::new(PI / 5.0).unwrap();
    let state = Ray::z_axis();
    // One gauge-fixed context per adjacent pair; each test sits once in the
    // first slot, whose -1 probability is p_mp of the model's distribution.
    let mut model_sum = 0.0;
    for i in 0..5 {
        let params = gauge_fix(&state, &p.vectors()[i], &p.vectors()[(i + 1) % 5]).unwrap();
        let hv = joint_analytic(&params).unwrap();
        model_sum += 1.0 - 2.0 * hv.p_mp;
    }
    let delta = (model_sum - 0.52786).abs();
    assert!(delta <= 1e-5, "model sum {model_sum} misses 0.52786 by {delta}");
    let elapsed = start.elapsed();
    println!(
        "acceptance 8 (KCBS sum from the hidden model): PASS (sum = {model_sum:.7}, |delta| = {delta:.1e} <= 1e-5, {elapsed:?})"
    );
}
