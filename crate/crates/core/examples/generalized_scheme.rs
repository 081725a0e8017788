//! Two-layer scheme on the correlated-noise example: secondary keys extracted
//! from the transmitters' own outputs, with the transmissibility constraints.

use keyregion::closed_form::{example3_inner, example3_outer, example3_pregen, Example3Params};
use keyregion::{gen_atoms, gen_region, induce_joint, AuxDesign, Gdmmac};

fn main() -> keyregion::Result<()> {
    let (p1, p2, p3) = (0.09, 0.1, 0.07);
    let channel = Gdmmac::correlated_noise(p1, p2, p3)?;
    let outer = example3_outer(p1, p2, p3)?;
    println!("outer bound: {outer:?}");

    for (a, ap, app, b, bp) in [(0.0, 0.0, 0.0, 0.0, 0.0), (0.1, 0.0, 0.2, 0.0, 0.3), (0.5, 0.0, 0.5, 0.5, 0.5)] {
        let atoms = gen_atoms(&induce_joint(&channel, &AuxDesign::example3(a, ap, app, b, bp)?)?)?;
        let region = gen_region(&atoms);
        let closed = example3_inner(&Example3Params::new(a, ap, app, b, bp, p1, p2, p3)?)?;
        println!(
            "design ({a}, {ap}, {app}, {b}, {bp}): generic {:?} feasible={} | closed {:?} feasible={}",
            region.bounds(),
            region.feasible,
            closed.rates,
            closed.feasible
        );
        println!("    constraint slacks {:?}", atoms.constraint_slacks);
    }
    println!("pre-generated only at (0, 0, 0): {:?}", example3_pregen(0.0, 0.0, 0.0, p1, p2, p3)?);
    Ok(())
}
