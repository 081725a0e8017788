//! Parallel sweep of a design family and its Pareto and convex-hull projections.

use keyregion::{pareto_project, sweep, Gdmmac, Grid, NamedFamily, RateAxis, RateTriple};

fn main() -> keyregion::Result<()> {
    let channel = Gdmmac::binary_sum(0.3, 0.1, 0.2)?;
    let grid = Grid::unit_half(2, 0.05)?;
    let points = sweep(&channel, &NamedFamily::Example2, &grid)?;
    println!("{} designs evaluated", points.len());
    let triples: Vec<RateTriple> = points.iter().flat_map(|p| p.evaluation.vertices()).collect();
    let stairs = pareto_project(&triples, RateAxis::R23, RateAxis::R12, false)?;
    let hull = pareto_project(&triples, RateAxis::R23, RateAxis::R12, true)?;
    println!("staircase (R23, R12):");
    for (x, y) in &stairs {
        println!("  {x:.4} {y:.4}");
    }
    println!("hull boundary has {} vertices from ({:.4}, {:.4}) to ({:.4}, {:.4})", hull.len(), hull[0].0, hull[0].1, hull[hull.len() - 1].0, hull[hull.len() - 1].1);
    Ok(())
}
