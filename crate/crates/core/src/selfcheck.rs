//! Invariant suite behind the `check` subcommand: oracle equivalence of the
//! generic evaluators against the closed forms, inner-within-outer, output
//! coupling invariance, reduction of the generalized scheme and Markov chains.

use serde::Serialize;

use crate::channel::names::*;
use crate::channel::Gdmmac;
use crate::closed_form::{
    example1_capacity, example2_inner, example2_outer, example3_inner, example3_outer, example3_pregen,
    Example2Params, Example3Params,
};
use crate::design::{induce_joint, AuxDesign};
use crate::error::Result;
use crate::figures::FIG6_PARAM_SETS;
use crate::region::{degraded_capacity_corner, evaluate, pregen_atoms, pregen_region, RateTriple, Scheme};
use crate::sweep::{linspace_step, Grid};

pub const ORACLE_TOL: f64 = 1e-9;
pub const REDUCTION_TOL: f64 = 1e-12;
pub const INVARIANCE_TOL: f64 = 1e-12;
pub const MARKOV_TOL: f64 = 1e-9;

const EXAMPLE3_CHANNELS: [[f64; 3]; 3] = [[0.09, 0.1, 0.07], [0.01, 0.02, 0.01], [0.03, 0.05, 0.02]];

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckResult {
    pub name: String,
    /// Largest deviation seen (or violation, for one-sided checks).
    pub observed: f64,
    pub tolerance: f64,
    pub passed: bool,
    pub detail: String,
}

impl CheckResult {
    fn new(name: &str, observed: f64, tolerance: f64, detail: String) -> Self {
        Self {
            name: name.to_string(),
            observed,
            tolerance,
            passed: observed <= tolerance,
            detail,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckReport {
    pub results: Vec<CheckResult>,
}

impl CheckReport {
    pub fn passed(&self) -> bool {
        self.results.iter().all(|r| r.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckResult> {
        self.results.iter().filter(|r| !r.passed)
    }
}

/// Runs every check. `perturb` is added to each closed-form reference value;
/// it is zero in normal use and lets tests confirm that the suite catches a
/// corrupted formula.
pub fn run_checks(perturb: f64) -> Result<CheckReport> {
    let shift = |r: RateTriple| RateTriple::new(r.r12 + perturb, r.r13 + perturb, r.r23 + perturb);
    let results = vec![
        example1_corner(shift)?,
        example2_oracle(shift)?,
        example3_oracle(shift)?,
        example3_reduction(shift)?,
        inner_within_outer(shift)?,
        coupling_invariance()?,
        design_markov_chains()?,
    ];
    Ok(CheckReport { results })
}

fn example1_corner(shift: impl Fn(RateTriple) -> RateTriple) -> Result<CheckResult> {
    let (p12, p21, p13, p23) = (0.3, 0.3, 0.5, 0.1);
    let reference = shift(example1_capacity(p12, p13, p23)?);
    let channel = Gdmmac::erasure(p12, p21, p13, p23)?;
    let generic = evaluate(&induce_joint(&channel, &AuxDesign::example1())?)?.bounds();
    let corner = degraded_capacity_corner(&induce_joint(
        &Gdmmac::erasure_degraded(p12, p21, p13, p23)?,
        &AuxDesign::example1(),
    )?)?;
    let dev = generic.max_abs_diff(&reference).max(corner.max_abs_diff(&reference));
    Ok(CheckResult::new(
        "erasure example: generic bounds and degraded corner equal closed form",
        dev,
        ORACLE_TOL,
        format!("generic {generic:?}, closed form {reference:?}"),
    ))
}

fn example2_oracle(shift: impl Fn(RateTriple) -> RateTriple) -> Result<CheckResult> {
    let mut worst = 0.0f64;
    let grid = Grid::unit_half(2, 0.05)?;
    for [p1, p2, p3] in FIG6_PARAM_SETS {
        let channel = Gdmmac::binary_sum(p1, p2, p3)?;
        for q in grid.points() {
            let generic = pregen_region(&pregen_atoms(&induce_joint(&channel, &AuxDesign::example2(q[0], q[1])?)?)?);
            let closed = shift(example2_inner(&Example2Params::new(q[0], q[1], p1, p2, p3)?)?);
            worst = worst.max(generic.bounds().max_abs_diff(&closed));
        }
    }
    Ok(CheckResult::new(
        "binary-sum example: generic pre-generated region equals closed form",
        worst,
        ORACLE_TOL,
        format!("{} designs x {} channels", grid.len(), FIG6_PARAM_SETS.len()),
    ))
}

fn example3_oracle(shift: impl Fn(RateTriple) -> RateTriple) -> Result<CheckResult> {
    let axis = linspace_step(0.0, 0.5, 0.25)?;
    let grid = Grid::new(vec![axis; 5])?;
    let mut worst = 0.0f64;
    let mut flag_mismatch = 0usize;
    let [p1, p2, p3] = EXAMPLE3_CHANNELS[0];
    let channel = Gdmmac::correlated_noise(p1, p2, p3)?;
    for q in grid.points() {
        let design = AuxDesign::example3(q[0], q[1], q[2], q[3], q[4])?;
        let generic = evaluate(&induce_joint(&channel, &design)?)?;
        let closed = example3_inner(&Example3Params::new(q[0], q[1], q[2], q[3], q[4], p1, p2, p3)?)?;
        worst = worst.max(generic.bounds().max_abs_diff(&shift(closed.rates)));
        if generic.feasible != closed.feasible {
            flag_mismatch += 1;
        }
    }
    let observed = if flag_mismatch > 0 { f64::INFINITY } else { worst };
    Ok(CheckResult::new(
        "correlated-noise example: generic generalized region equals closed form",
        observed,
        ORACLE_TOL,
        format!("{} designs, {flag_mismatch} feasibility mismatches", grid.len()),
    ))
}

fn example3_reduction(shift: impl Fn(RateTriple) -> RateTriple) -> Result<CheckResult> {
    let grid = Grid::unit_half(2, 0.05)?;
    let mut worst = 0.0f64;
    let [p1, p2, p3] = EXAMPLE3_CHANNELS[0];
    let channel = Gdmmac::correlated_noise(p1, p2, p3)?;
    for q in grid.points() {
        let (alpha, beta) = (q[0], q[1]);
        let design = AuxDesign::example3(alpha, 0.0, 0.5, beta, 0.5)?;
        let generic = evaluate(&induce_joint(&channel, &design)?)?;
        let closed = shift(example3_pregen(alpha, 0.0, beta, p1, p2, p3)?);
        let mut dev = generic.bounds().max_abs_diff(&closed);
        if generic.scheme != Scheme::Generalized {
            dev = f64::INFINITY;
        }
        worst = worst.max(dev);
    }
    Ok(CheckResult::new(
        "generalized scheme with uninformative secondary keys reduces to pre-generated closed form",
        worst,
        REDUCTION_TOL,
        format!("{} (alpha, beta) points at alpha_p = 0, alpha_pp = beta_p = 0.5", grid.len()),
    ))
}

fn inner_within_outer(shift: impl Fn(RateTriple) -> RateTriple) -> Result<CheckResult> {
    let excess = |inner: &RateTriple, outer: &RateTriple| {
        (inner.r12 - outer.r12).max(inner.r13 - outer.r13).max(inner.r23 - outer.r23)
    };
    let mut worst = f64::NEG_INFINITY;
    let grid2 = Grid::unit_half(2, 0.05)?;
    for [p1, p2, p3] in FIG6_PARAM_SETS {
        let Ok(outer) = example2_outer(p1, p2, p3) else {
            continue;
        };
        for q in grid2.points() {
            let inner = shift(example2_inner(&Example2Params::new(q[0], q[1], p1, p2, p3)?)?);
            worst = worst.max(excess(&inner, &outer));
        }
    }
    let grid5 = Grid::new(vec![linspace_step(0.0, 0.5, 0.125)?; 5])?;
    for [p1, p2, p3] in EXAMPLE3_CHANNELS {
        let outer = example3_outer(p1, p2, p3)?;
        for q in grid5.points() {
            let r = example3_inner(&Example3Params::new(q[0], q[1], q[2], q[3], q[4], p1, p2, p3)?)?;
            if r.feasible {
                worst = worst.max(excess(&shift(r.rates), &outer));
            }
        }
    }
    Ok(CheckResult::new(
        "inner bounds lie within outer bounds",
        worst.max(0.0),
        ORACLE_TOL,
        format!("largest excess over the outer bound {worst:.3e}"),
    ))
}

fn coupling_invariance() -> Result<CheckResult> {
    let cases: Vec<(Gdmmac, Gdmmac, AuxDesign)> = vec![
        {
            let ch = Gdmmac::correlated_noise(0.09, 0.1, 0.07)?;
            let prod = ch.marginal_product();
            (ch, prod, AuxDesign::example3(0.1, 0.2, 0.5, 0.15, 0.5)?.primary_only())
        },
        (
            Gdmmac::binary_sum(0.3, 0.1, 0.2)?,
            Gdmmac::binary_sum_degraded(0.3, 0.1, 0.2)?,
            AuxDesign::example2(0.2, 0.1)?,
        ),
        (
            Gdmmac::erasure(0.3, 0.3, 0.5, 0.1)?,
            Gdmmac::erasure_degraded(0.3, 0.3, 0.5, 0.1)?,
            AuxDesign::example1(),
        ),
    ];
    let mut worst = 0.0f64;
    for (a, b, design) in &cases {
        let x = pregen_atoms(&induce_joint(a, design)?)?;
        let y = pregen_atoms(&induce_joint(b, design)?)?;
        let d = [
            x.r12 - y.r12,
            x.r21 - y.r21,
            x.i12 - y.i12,
            x.r13 - y.r13,
            x.r23 - y.r23,
            x.i3 - y.i3,
        ]
        .iter()
        .fold(0.0f64, |m, v| m.max(v.abs()));
        worst = worst.max(d);
    }
    Ok(CheckResult::new(
        "pre-generated atoms depend on single-output marginals only",
        worst,
        INVARIANCE_TOL,
        format!("{} same-marginal channel pairs", cases.len()),
    ))
}

fn design_markov_chains() -> Result<CheckResult> {
    let joints = [
        induce_joint(&Gdmmac::binary_sum(0.3, 0.1, 0.2)?, &AuxDesign::example2(0.2, 0.3)?)?,
        induce_joint(
            &Gdmmac::correlated_noise(0.09, 0.1, 0.07)?,
            &AuxDesign::example3(0.1, 0.2, 0.3, 0.15, 0.25)?,
        )?,
    ];
    let mut worst = 0.0f64;
    for j in &joints {
        let chain: [&[&str]; 3] = [&[S12, S13, S21, S23], &[X1, X2], &[Y1, Y2, Y3]];
        worst = worst.max(j.is_markov_chain(&chain, MARKOV_TOL)?.max_violation);
        // the two users' auxiliaries are independent
        worst = worst.max(j.mutual_information(&[S12, S13], &[S21, S23])?);
        if j.contains(T12) {
            let chain: [&[&str]; 3] = [&[T12], &[X1, Y1, S12], &[X2, Y2, Y3, S21, S23, S13]];
            worst = worst.max(j.is_markov_chain(&chain, MARKOV_TOL)?.max_violation);
        }
    }
    Ok(CheckResult::new(
        "induced joints respect the design factorization",
        worst,
        MARKOV_TOL,
        format!("{} joints", joints.len()),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pristine_suite_passes() {
        let r = run_checks(0.0).unwrap();
        for c in &r.results {
            assert!(c.passed, "{c:?}");
        }
    }

    #[test]
    fn perturbation_is_caught() {
        let r = run_checks(1e-3).unwrap();
        assert!(!r.passed());
        let failed: Vec<_> = r.failures().map(|c| c.name.as_str()).collect();
        assert!(failed.len() >= 4, "{failed:?}");
        for c in r.failures() {
            assert!(c.observed > c.tolerance);
        }
    }
}
