//! Report assembly for the four subcommands. Everything here is a thin layer
//! over the library: build the inputs, call the three computation routes,
//! collect the numbers a report needs.

use std::f64::consts::{FRAC_PI_2, PI};

use serde::Serialize;

use kcbs_lab::qutrit::BinaryTest;
use kcbs_lab::{
    CanonicalContextParams, Error, JointOutcomeDistribution, ORTHO_TOL, Pentagram, Ray,
    SimulationResult, admissible_assignments, chi1_of, chi2_of, classical_min_sum,
    context_joint_qm, gauge_fix, integrate_oracle, joint_analytic, simulate, solve_omega,
};

/// Quadrature resolution used by the `context` command.
pub const ORACLE_PANELS: u32 = 10_000;

/// Canonical parameters of one adjacent pentagram context at the magic angle.
pub fn pentagram_context_params() -> CanonicalContextParams {
    let p = Pentagram::new(PI / 5.0).expect("pi/5 is inside (0, pi/2)");
    gauge_fix(&Ray::z_axis(), &p.vectors()[0], &p.vectors()[1])
        .expect("adjacent pentagram axes are orthogonal")
}

#[derive(Debug, Serialize)]
pub struct PentagramReport {
    pub zeta_pent: f64,
    pub tol: f64,
    /// The five axes as `[re, im]` component pairs, textbook orientation.
    pub vectors: [[[f64; 2]; 3]; 5],
    pub adjacency_moduli: [f64; 5],
    pub orthogonality_pass: bool,
    pub quantum_sum: f64,
    pub classical_bound: i32,
    pub admissible_count: usize,
    pub verdict: &'static str,
}

pub fn pentagram(zeta_pent: f64) -> Result<PentagramReport, Error> {
    let p = Pentagram::new(zeta_pent)?;
    let check = p.verify(ORTHO_TOL);
    let quantum_sum = p.kcbs_sum(&Ray::z_axis());
    let classical_bound = classical_min_sum();
    let vectors = p.vectors().map(|ray| {
        ray.components().map(|c| [c.re, c.im])
    });
    Ok(PentagramReport {
        zeta_pent,
        tol: ORTHO_TOL,
        vectors,
        adjacency_moduli: check.moduli,
        orthogonality_pass: check.pass(),
        quantum_sum,
        classical_bound,
        admissible_count: admissible_assignments().len(),
        verdict: if quantum_sum < classical_bound as f64 {
            "VIOLATED"
        } else {
            "SATISFIED"
        },
    })
}

#[derive(Debug, Serialize)]
pub struct ContextReport {
    pub zeta_canon: f64,
    pub theta: f64,
    pub rho: f64,
    pub omega: f64,
    pub panels: u32,
    pub qm: JointOutcomeDistribution,
    pub closed_form: JointOutcomeDistribution,
    pub quadrature: JointOutcomeDistribution,
    pub max_abs_discrepancy_closed_form: f64,
    pub max_abs_discrepancy_quadrature: f64,
}

pub fn context(zeta_canon: f64, theta: f64, rho: f64) -> Result<ContextReport, Error> {
    let params = CanonicalContextParams {
        zeta_canon,
        theta,
        rho,
    };
    // Checked first so the error message cites the theta <= pi/2 + zeta bound.
    let closed_form = joint_analytic(&params)?;
    let omega = solve_omega(zeta_canon, theta)?;
    let a = BinaryTest::new(chi1_of(zeta_canon)?);
    let b = BinaryTest::new(chi2_of(zeta_canon, theta, rho)?);
    let qm = context_joint_qm(&Ray::z_axis(), &a, &b)?;
    let quadrature = integrate_oracle(&params, ORACLE_PANELS)?;
    Ok(ContextReport {
        zeta_canon,
        theta,
        rho,
        omega,
        panels: ORACLE_PANELS,
        max_abs_discrepancy_closed_form: qm.max_abs_diff(&closed_form),
        max_abs_discrepancy_quadrature: qm.max_abs_diff(&quadrature),
        qm,
        closed_form,
        quadrature,
    })
}

#[derive(Debug, Serialize)]
pub struct SweepRow {
    pub zeta_canon: f64,
    pub theta: f64,
    pub qm: JointOutcomeDistribution,
    pub hv: JointOutcomeDistribution,
    pub max_abs_discrepancy: f64,
}

#[derive(Debug, Serialize)]
pub struct SweepReport {
    pub grid: u32,
    pub rows: Vec<SweepRow>,
    pub max_abs_discrepancy: f64,
}

/// Walks a `grid x grid` lattice over the open parameter domain, sampling at
/// half-step offsets so the tan singularity at `theta = pi/2` and the
/// degenerate `zeta -> 0` edge are never hit.
pub fn sweep(grid: u32) -> Result<SweepReport, Error> {
    if grid < 2 {
        return Err(Error::Domain(format!("grid = {grid} must be at least 2")));
    }
    let state = Ray::z_axis();
    let mut rows = Vec::with_capacity((grid as usize).pow(2));
    let mut global: f64 = 0.0;
    for i in 0..grid {
        let zeta_canon = (i as f64 + 0.5) / grid as f64 * FRAC_PI_2;
        let a = BinaryTest::new(chi1_of(zeta_canon)?);
        for j in 0..grid {
            let theta = FRAC_PI_2 + (j as f64 + 0.5) / grid as f64 * zeta_canon;
            let b = BinaryTest::new(chi2_of(zeta_canon, theta, 0.0)?);
            let qm = context_joint_qm(&state, &a, &b)?;
            let hv = joint_analytic(&CanonicalContextParams {
                zeta_canon,
                theta,
                rho: 0.0,
            })?;
            let max_abs_discrepancy = qm.max_abs_diff(&hv);
            global = global.max(max_abs_discrepancy);
            rows.push(SweepRow {
                zeta_canon,
                theta,
                qm,
                hv,
                max_abs_discrepancy,
            });
        }
    }
    Ok(SweepReport {
        grid,
        rows,
        max_abs_discrepancy: global,
    })
}

#[derive(Debug, Serialize)]
pub struct SimulateReport {
    pub zeta_canon: f64,
    pub theta: f64,
    pub rho: f64,
    pub seed: u64,
    /// Worker-thread cap from `KCBS_LAB_THREADS`, or "default".
    pub threads: String,
    pub simulation: SimulationResult,
    pub analytic: JointOutcomeDistribution,
    pub z_scores: [f64; 4],
}

pub fn simulate_cmd(
    zeta_canon: f64,
    theta: f64,
    rho: f64,
    samples: u64,
    seed: u64,
    threads: Option<usize>,
) -> Result<SimulateReport, Error> {
    let params = CanonicalContextParams {
        zeta_canon,
        theta,
        rho,
    };
    let analytic = joint_analytic(&params)?;
    let simulation = match threads {
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build()
            .map_err(|err| Error::Domain(format!("cannot build a {n}-thread pool: {err}")))?
            .install(|| simulate(&params, samples, seed)),
        None => simulate(&params, samples, seed),
    }?;
    let z_scores = simulation.z_scores(&analytic);
    Ok(SimulateReport {
        zeta_canon,
        theta,
        rho,
        seed,
        threads: threads.map_or_else(|| "default".to_owned(), |n| n.to_string()),
        simulation,
        analytic,
        z_scores,
    })
}
