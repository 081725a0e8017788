//! Parameter sweeps over design families and 2-D projections of the results.

use std::io::Write;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::channel::Gdmmac;
use crate::design::{induce_joint, AuxDesign};
use crate::error::{Error, Result};
use crate::region::{evaluate, RateAxis, RateTriple, RegionEvaluation};

/// Default grid resolution per parameter.
pub const DEFAULT_STEP: f64 = 0.01;

/// Coordinates closer than this are treated as equal when pruning dominated points.
const DOMINANCE_TOL: f64 = 1e-12;

/// A design generator indexed by a fixed list of scalar parameters.
pub trait DesignFamily: Sync {
    fn parameter_names(&self) -> Vec<String>;
    fn design(&self, params: &[f64]) -> Result<AuxDesign>;
}

/// The built-in families of the binary examples.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum NamedFamily {
    /// No parameters; the erasure design.
    Example1,
    /// `(alpha, beta)`.
    Example2,
    /// `(alpha, alpha_p, alpha_pp, beta, beta_p)` with secondary keys.
    Example3,
    /// `(alpha, alpha_p, beta)`: the primary layer of [`NamedFamily::Example3`] only.
    Example3Pregen,
}

impl DesignFamily for NamedFamily {
    fn parameter_names(&self) -> Vec<String> {
        let names: &[&str] = match self {
            NamedFamily::Example1 => &[],
            NamedFamily::Example2 => &["alpha", "beta"],
            NamedFamily::Example3 => &["alpha", "alpha_p", "alpha_pp", "beta", "beta_p"],
            NamedFamily::Example3Pregen => &["alpha", "alpha_p", "beta"],
        };
        names.iter().map(|s| s.to_string()).collect()
    }

    fn design(&self, p: &[f64]) -> Result<AuxDesign> {
        let want = self.parameter_names().len();
        if p.len() != want {
            return Err(Error::DimensionMismatch(format!(
                "{self:?} takes {want} parameters, got {}",
                p.len()
            )));
        }
        match self {
            NamedFamily::Example1 => Ok(AuxDesign::example1()),
            NamedFamily::Example2 => AuxDesign::example2(p[0], p[1]),
            NamedFamily::Example3 => AuxDesign::example3(p[0], p[1], p[2], p[3], p[4]),
            NamedFamily::Example3Pregen => {
                Ok(AuxDesign::example3(p[0], p[1], 0.5, p[2], 0.5)?.primary_only())
            }
        }
    }
}

/// Cartesian grid; the first axis varies slowest.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Grid {
    axes: Vec<Vec<f64>>,
}

impl Grid {
    pub fn new(axes: Vec<Vec<f64>>) -> Result<Self> {
        if let Some(k) = axes.iter().position(|a| a.is_empty()) {
            return Err(Error::EmptyGrid(format!("axis {} has no values", k + 1)));
        }
        if let Some(v) = axes.iter().flatten().find(|v| !v.is_finite()) {
            return Err(Error::Config(format!("grid value {v} is not finite")));
        }
        Ok(Self { axes })
    }

    /// `dims` axes, each `lo, lo + step, ..., hi` (the endpoint included when
    /// it is within `step * 1e-9` of a grid value).
    pub fn uniform(dims: usize, lo: f64, hi: f64, step: f64) -> Result<Self> {
        Self::new(vec![linspace_step(lo, hi, step)?; dims])
    }

    /// The default `[0, 0.5]` grid at `step`.
    pub fn unit_half(dims: usize, step: f64) -> Result<Self> {
        Self::uniform(dims, 0.0, 0.5, step)
    }

    pub fn axes(&self) -> &[Vec<f64>] {
        &self.axes
    }

    pub fn dims(&self) -> usize {
        self.axes.len()
    }

    pub fn len(&self) -> usize {
        self.axes.iter().map(Vec::len).product()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// The `i`-th point in lexicographic order.
    pub fn point(&self, mut i: usize) -> Vec<f64> {
        let mut out = vec![0.0; self.axes.len()];
        for (k, axis) in self.axes.iter().enumerate().rev() {
            out[k] = axis[i % axis.len()];
            i /= axis.len();
        }
        out
    }

    pub fn points(&self) -> impl Iterator<Item = Vec<f64>> + '_ {
        (0..self.len()).map(|i| self.point(i))
    }
}

/// `lo, lo + step, ...` up to `hi`, computed as `lo + k * step` to avoid drift.
pub fn linspace_step(lo: f64, hi: f64, step: f64) -> Result<Vec<f64>> {
    if !(step > 0.0) || !step.is_finite() {
        return Err(Error::EmptyGrid(format!("step must be positive, got {step}")));
    }
    if !(lo <= hi) {
        return Err(Error::EmptyGrid(format!("range [{lo}, {hi}] is empty")));
    }
    let count = ((hi - lo) / step + 1e-9).floor() as usize + 1;
    Ok((0..count).map(|k| (lo + k as f64 * step).min(hi)).collect())
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepPoint {
    pub params: Vec<f64>,
    pub evaluation: RegionEvaluation,
}

/// Evaluates every grid point of `family` on `channel`, in parallel, returning
/// results in lexicographic grid order. Infeasible points are kept and flagged.
pub fn sweep(channel: &Gdmmac, family: &dyn DesignFamily, grid: &Grid) -> Result<Vec<SweepPoint>> {
    let names = family.parameter_names();
    if names.len() != grid.dims() {
        return Err(Error::DimensionMismatch(format!(
            "family has {} parameters, grid has {} axes",
            names.len(),
            grid.dims()
        )));
    }
    (0..grid.len())
        .into_par_iter()
        .map(|i| {
            let params = grid.point(i);
            let design = family.design(&params)?;
            let evaluation = evaluate(&induce_joint(channel, &design)?)?;
            Ok(SweepPoint { params, evaluation })
        })
        .collect()
}

/// Fixed-width scientific formatting used by every CSV writer (17 significant
/// digits, negative zero printed as zero).
pub fn fmt_num(x: f64) -> String {
    let x = if x == 0.0 { 0.0 } else { x };
    format!("{x:.16e}")
}

/// Writes sweep rows with columns `param_1..param_k, bound_r12, bound_r13,
/// bound_r23, bound_r13_plus_r23, feasible`.
pub fn write_sweep_csv<W: Write>(mut w: W, k: usize, points: &[SweepPoint]) -> Result<()> {
    let mut header: Vec<String> = (1..=k).map(|i| format!("param_{i}")).collect();
    header.extend(
        ["bound_r12", "bound_r13", "bound_r23", "bound_r13_plus_r23", "feasible"]
            .iter()
            .map(|s| s.to_string()),
    );
    writeln!(w, "{}", header.join(","))?;
    for p in points {
        let e = &p.evaluation;
        let mut row: Vec<String> = p.params.iter().map(|&v| fmt_num(v)).collect();
        row.extend([e.bound_r12, e.bound_r13, e.bound_r23, e.bound_r13_plus_r23].map(fmt_num));
        row.push(e.feasible.to_string());
        writeln!(w, "{}", row.join(","))?;
    }
    Ok(())
}

/// Maximal points of the 2-D projection of `points` onto `(x, y)`, sorted by
/// increasing `x` (hence decreasing `y`).
///
/// With `hull`, returns instead the vertices of the upper concave envelope of
/// the staircase together with the axis anchors `(0, ymax)` and `(xmax, 0)`,
/// i.e. the Pareto boundary of the convex hull of the projected region.
pub fn pareto_project(points: &[RateTriple], x: RateAxis, y: RateAxis, hull: bool) -> Result<Vec<(f64, f64)>> {
    if points.is_empty() {
        return Err(Error::EmptyInput("no points to project".into()));
    }
    let pairs: Vec<(f64, f64)> = points.iter().map(|p| (p.get(x), p.get(y))).collect();
    let stairs = staircase(&pairs);
    if !hull {
        return Ok(stairs);
    }
    let xmax = stairs.last().map(|p| p.0).unwrap_or(0.0);
    let ymax = stairs.first().map(|p| p.1).unwrap_or(0.0);
    let mut candidates = Vec::with_capacity(stairs.len() + 1);
    candidates.push((0.0, ymax));
    candidates.extend(stairs);
    let mut env = upper_envelope(candidates);
    if env.last().is_some_and(|p| p.1 > 0.0) {
        env.push((xmax, 0.0));
    }
    Ok(env)
}

fn staircase(pairs: &[(f64, f64)]) -> Vec<(f64, f64)> {
    let mut sorted = pairs.to_vec();
    // x descending, ties broken by y descending
    sorted.sort_by(|a, b| b.0.total_cmp(&a.0).then(b.1.total_cmp(&a.1)));
    let mut out: Vec<(f64, f64)> = Vec::new();
    let mut best_y = f64::NEG_INFINITY;
    for p in sorted {
        if p.1 > best_y + DOMINANCE_TOL {
            // a kept point with x within rounding of p is dominated by p
            if out.last().is_some_and(|q| q.0 - p.0 <= DOMINANCE_TOL) {
                out.pop();
            }
            out.push(p);
            best_y = p.1;
        }
    }
    out.reverse();
    out
}

/// Upper concave envelope (monotone-chain upper hull) of points sorted by x.
fn upper_envelope(mut pts: Vec<(f64, f64)>) -> Vec<(f64, f64)> {
    pts.sort_by(|a, b| a.0.total_cmp(&b.0).then(b.1.total_cmp(&a.1)));
    pts.dedup_by(|a, b| a.0 == b.0);
    let mut hull: Vec<(f64, f64)> = Vec::with_capacity(pts.len());
    for p in pts {
        while hull.len() >= 2 {
            let (o, a) = (hull[hull.len() - 2], hull[hull.len() - 1]);
            let cross = (a.0 - o.0) * (p.1 - o.1) - (a.1 - o.1) * (p.0 - o.0);
            if cross >= 0.0 {
                hull.pop();
            } else {
                break;
            }
        }
        hull.push(p);
    }
    hull
}
