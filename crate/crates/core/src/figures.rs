//! Data series behind the rate-region figures of the binary-sum and
//! correlated-noise examples. Figures are emitted as points, never rendered.

use std::fmt;
use std::io::Write;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::channel::Gdmmac;
use crate::closed_form::{example2_outer, example3_inner, example3_outer, example3_pregen, Example3Params};
use crate::error::{Error, Result};
use crate::prob::h2;
use crate::region::{RateAxis, RateTriple};
use crate::sweep::{fmt_num, pareto_project, sweep, Grid, NamedFamily, DEFAULT_STEP};

/// Default grid step of the five-parameter correlated-noise sweeps.
pub const FIG9_STEP: f64 = 0.05;

/// Crossover triples `(p1, p2, p3)` used for the binary-sum region plots.
pub const FIG6_PARAM_SETS: [[f64; 3]; 3] = [[0.09, 0.1, 0.07], [0.3, 0.1, 0.2], [0.4, 0.2, 0.3]];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FigureId {
    Fig6,
    Fig9a,
    Fig9b,
    Fig9c,
}

impl FigureId {
    pub const ALL: [FigureId; 4] = [FigureId::Fig6, FigureId::Fig9a, FigureId::Fig9b, FigureId::Fig9c];

    pub fn name(self) -> &'static str {
        match self {
            FigureId::Fig6 => "fig6",
            FigureId::Fig9a => "fig9a",
            FigureId::Fig9b => "fig9b",
            FigureId::Fig9c => "fig9c",
        }
    }

    /// `(p1, p2, p3)` used when none is given.
    pub fn default_params(self) -> [f64; 3] {
        match self {
            FigureId::Fig6 => FIG6_PARAM_SETS[1],
            FigureId::Fig9a => [0.09, 0.1, 0.07],
            FigureId::Fig9b => [0.01, 0.02, 0.01],
            FigureId::Fig9c => [0.03, 0.05, 0.02],
        }
    }

    pub fn default_step(self) -> f64 {
        match self {
            FigureId::Fig6 => DEFAULT_STEP,
            _ => FIG9_STEP,
        }
    }
}

impl fmt::Display for FigureId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for FigureId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        FigureId::ALL
            .into_iter()
            .find(|id| id.name() == s)
            .ok_or_else(|| Error::Config(format!("unknown figure id {s:?} (expected fig6, fig9a, fig9b or fig9c)")))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SeriesPoint {
    pub series: &'static str,
    pub axis_x: RateAxis,
    pub axis_y: RateAxis,
    pub x: f64,
    pub y: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Figure {
    pub id: FigureId,
    pub params: [f64; 3],
    pub step: f64,
    pub points: Vec<SeriesPoint>,
    /// Caveats about the emitted series.
    pub notes: Vec<String>,
}

impl Figure {
    pub fn series(&self, name: &str) -> impl Iterator<Item = &SeriesPoint> {
        let name = name.to_string();
        self.points.iter().filter(move |p| p.series == name)
    }

    pub fn series_names(&self) -> Vec<&'static str> {
        let mut names: Vec<&'static str> = Vec::new();
        for p in &self.points {
            if !names.contains(&p.series) {
                names.push(p.series);
            }
        }
        names
    }

    /// Rows `series, axis_x, axis_y, x, y`.
    pub fn write_csv<W: Write>(&self, mut w: W) -> Result<()> {
        writeln!(w, "series,axis_x,axis_y,x,y")?;
        for p in &self.points {
            writeln!(
                w,
                "{},{},{},{},{}",
                p.series,
                p.axis_x.label(),
                p.axis_y.label(),
                fmt_num(p.x),
                fmt_num(p.y)
            )?;
        }
        Ok(())
    }
}

fn push_curve(out: &mut Vec<SeriesPoint>, series: &'static str, x: RateAxis, y: RateAxis, pts: &[(f64, f64)]) {
    out.extend(pts.iter().map(|&(px, py)| SeriesPoint {
        series,
        axis_x: x,
        axis_y: y,
        x: px,
        y: py,
    }));
}

/// The two sides of an outer box projected onto `(x, y)`.
fn box_lines(outer: &RateTriple, x: RateAxis, y: RateAxis) -> [(f64, f64); 3] {
    let (ox, oy) = (outer.get(x).max(0.0), outer.get(y).max(0.0));
    [(0.0, oy), (ox, oy), (ox, 0.0)]
}

fn check_step(step: f64) -> Result<f64> {
    if !step.is_finite() || step <= 0.0 || step > 0.5 {
        return Err(Error::Config(format!("grid step {step} must lie in (0, 0.5]")));
    }
    Ok(step)
}

/// Computes the series of figure `id` for crossovers `params` (defaults per
/// figure) at grid `step` (defaults per figure).
pub fn figure(id: FigureId, params: Option<[f64; 3]>, step: Option<f64>) -> Result<Figure> {
    let params = params.unwrap_or_else(|| id.default_params());
    let step = check_step(step.unwrap_or_else(|| id.default_step()))?;
    match id {
        FigureId::Fig6 => fig6(params, step),
        _ => fig9(id, params, step),
    }
}

/// Binary-sum example in the `(R23, R12)` plane: the inner staircase over the
/// `(alpha, beta)` sweep, the outer-bound lines and the time-sharing segment
/// between the two single-key corners of the inner region.
fn fig6(params: [f64; 3], step: f64) -> Result<Figure> {
    let [p1, p2, p3] = params;
    let channel = Gdmmac::binary_sum(p1, p2, p3).map_err(as_config)?;
    let grid = Grid::unit_half(2, step)?;
    let points = sweep(&channel, &NamedFamily::Example2, &grid)?;
    let triples: Vec<RateTriple> = points.iter().flat_map(|p| p.evaluation.vertices()).collect();
    let (x, y) = (RateAxis::R23, RateAxis::R12);
    let inner = pareto_project(&triples, x, y, false)?;

    let mut out = Vec::new();
    let mut notes = Vec::new();
    push_curve(&mut out, "inner", x, y, &inner);
    let outer_name = match example2_outer(p1, p2, p3) {
        Ok(_) => "outer",
        Err(_) => {
            notes.push(format!(
                "(p1, p2, p3) = ({p1}, {p2}, {p3}) violates p2 <= p3 <= p1; the outer-bound formula \
                 is not a proven bound here and is emitted as series outer_formula"
            ));
            "outer_formula"
        }
    };
    let outer = RateTriple::new(1.0 - h2(p2), 0.0, h2(p1) - h2(p3));
    push_curve(&mut out, outer_name, x, y, &box_lines(&outer, x, y));

    let ymax = inner.iter().map(|p| p.1).fold(0.0, f64::max);
    let xmax = inner.iter().map(|p| p.0).fold(0.0, f64::max);
    push_curve(&mut out, "timeshare", x, y, &[(0.0, ymax), (xmax, 0.0)]);

    Ok(Figure {
        id: FigureId::Fig6,
        params,
        step,
        points: out,
        notes,
    })
}

/// The three 2-D projections used for the correlated-noise comparison.
pub const FIG9_AXES: [(RateAxis, RateAxis); 3] = [
    (RateAxis::R12, RateAxis::R13),
    (RateAxis::R12, RateAxis::R23),
    (RateAxis::R13, RateAxis::R23),
];

/// Correlated-noise example: pre-generated, generalized (feasible points only)
/// and outer series, each projected onto the three axis pairs.
fn fig9(id: FigureId, params: [f64; 3], step: f64) -> Result<Figure> {
    let [p1, p2, p3] = params;
    let outer = example3_outer(p1, p2, p3).map_err(as_config)?;
    let axis = crate::sweep::linspace_step(0.0, 0.5, step)?;

    let g3 = Grid::new(vec![axis.clone(); 3])?;
    let pregen: Vec<RateTriple> = (0..g3.len())
        .into_par_iter()
        .map(|i| {
            let q = g3.point(i);
            example3_pregen(q[0], q[1], q[2], p1, p2, p3)
        })
        .collect::<Result<_>>()?;

    let g5 = Grid::new(vec![axis; 5])?;
    let generalized: Vec<Option<RateTriple>> = (0..g5.len())
        .into_par_iter()
        .map(|i| {
            let q = g5.point(i);
            let r = example3_inner(&Example3Params::new(q[0], q[1], q[2], q[3], q[4], p1, p2, p3)?)?;
            Ok(r.feasible.then_some(r.rates))
        })
        .collect::<Result<_>>()?;
    let generalized: Vec<RateTriple> = generalized.into_iter().flatten().collect();

    let mut out = Vec::new();
    for (x, y) in FIG9_AXES {
        push_curve(&mut out, "pregen", x, y, &pareto_project(&pregen, x, y, false)?);
        if !generalized.is_empty() {
            push_curve(&mut out, "generalized", x, y, &pareto_project(&generalized, x, y, false)?);
        }
        push_curve(&mut out, "outer", x, y, &box_lines(&outer, x, y));
    }
    let notes = if generalized.is_empty() {
        vec!["no feasible generalized-scheme point on the grid".to_string()]
    } else {
        Vec::new()
    };
    Ok(Figure {
        id,
        params,
        step,
        points: out,
        notes,
    })
}

fn as_config(e: Error) -> Error {
    match e {
        Error::Domain { .. } | Error::Precondition(_) => Error::Config(e.to_string()),
        other => other,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::closed_form::{example2_inner, Example2Params};

    #[test]
    fn ids_parse() {
        assert_eq!("fig9b".parse::<FigureId>().unwrap(), FigureId::Fig9b);
        assert!(matches!("fig7".parse::<FigureId>(), Err(Error::Config(_))));
    }

    #[test]
    fn fig6_series_and_bounds() {
        let f = figure(FigureId::Fig6, None, Some(0.05)).unwrap();
        assert_eq!(f.series_names(), vec!["inner", "outer", "timeshare"]);
        let [p1, p2, p3] = f.params;
        let outer = example2_outer(p1, p2, p3).unwrap();
        for p in f.series("inner") {
            assert!(p.y <= outer.r12 + 1e-9 && p.x <= outer.r23 + 1e-9);
            // each staircase point is achieved by some closed-form design
            let hit = Grid::unit_half(2, 0.05).unwrap().points().any(|q| {
                let r = example2_inner(&Example2Params::new(q[0], q[1], p1, p2, p3).unwrap()).unwrap();
                (r.r23 - p.x).abs() < 1e-9 && (r.r12 - p.y).abs() < 1e-9
            });
            assert!(hit, "{p:?}");
        }
        // corners of the inner region meet the outer bound
        let ts: Vec<_> = f.series("timeshare").collect();
        assert!((ts[0].y - outer.r12).abs() < 1e-9);
        assert!((ts[1].x - outer.r23).abs() < 1e-9);
    }

    #[test]
    fn fig6_unordered_params_flagged() {
        let f = figure(FigureId::Fig6, Some([0.09, 0.1, 0.07]), Some(0.1)).unwrap();
        assert_eq!(f.series_names(), vec!["inner", "outer_formula", "timeshare"]);
        assert_eq!(f.notes.len(), 1);
    }

    #[test]
    fn fig9_shape() {
        let f = figure(FigureId::Fig9a, None, Some(0.25)).unwrap();
        for (x, y) in FIG9_AXES {
            for s in ["pregen", "generalized", "outer"] {
                assert!(f.points.iter().any(|p| p.series == s && p.axis_x == x && p.axis_y == y), "{s} {x:?} {y:?}");
            }
        }
        let outer = example3_outer(0.09, 0.1, 0.07).unwrap();
        for p in &f.points {
            assert!(p.x <= outer.get(p.axis_x) + 1e-9 && p.y <= outer.get(p.axis_y) + 1e-9, "{p:?}");
        }
        let mut csv = Vec::new();
        f.write_csv(&mut csv).unwrap();
        let text = String::from_utf8(csv).unwrap();
        assert!(text.starts_with("series,axis_x,axis_y,x,y\npregen,R12,R13,"));
    }

    #[test]
    fn bad_inputs_are_config_errors() {
        assert!(matches!(figure(FigureId::Fig9a, Some([0.0, 0.1, 0.1]), None), Err(Error::Config(_))));
        assert!(matches!(figure(FigureId::Fig6, Some([0.7, 0.1, 0.1]), None), Err(Error::Config(_))));
        assert!(matches!(figure(FigureId::Fig6, None, Some(0.0)), Err(Error::Config(_))));
    }
}
