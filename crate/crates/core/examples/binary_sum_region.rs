//! Pre-generated-keys region of the binary-sum example: generic evaluation of
//! the induced joint against the closed form, plus the outer bound.

use keyregion::closed_form::{example2_inner, example2_outer, Example2Params};
use keyregion::{induce_joint, pregen_atoms, pregen_region, AuxDesign, Gdmmac};

fn main() -> keyregion::Result<()> {
    let (p1, p2, p3) = (0.3, 0.1, 0.2);
    let channel = Gdmmac::binary_sum(p1, p2, p3)?;
    let outer = example2_outer(p1, p2, p3)?;
    println!("outer bound (R12, R13, R23) = ({:.4}, {:.4}, {:.4})", outer.r12, outer.r13, outer.r23);
    println!("alpha  beta   R12 generic  R12 closed  R23 generic  R23 closed");
    for (alpha, beta) in [(0.5, 0.5), (0.3, 0.2), (0.1, 0.05), (0.0, 0.0)] {
        let atoms = pregen_atoms(&induce_joint(&channel, &AuxDesign::example2(alpha, beta)?)?)?;
        let region = pregen_region(&atoms);
        let closed = example2_inner(&Example2Params::new(alpha, beta, p1, p2, p3)?)?;
        println!(
            "{alpha:<6} {beta:<6} {:<12.6} {:<11.6} {:<12.6} {:.6}",
            region.bound_r12, closed.r12, region.bound_r23, closed.r23
        );
    }
    Ok(())
}
