//! Single-letter outer bounds evaluated on a joint with a time-sharing variable.

use keyregion::{outer_bound_th2, outer_bound_th4, Alphabet, Gdmmac};

fn main() -> keyregion::Result<()> {
    let channel = Gdmmac::correlated_noise(0.09, 0.1, 0.07)?;
    // U uniform on two values; inputs uniform given U = 0 and biased given U = 1
    let p_u_inputs = [0.125, 0.125, 0.125, 0.125, 0.405, 0.045, 0.045, 0.005];
    let joint = channel.joint_with_auxiliary(Alphabet::binary(), &p_u_inputs)?;
    let th2 = outer_bound_th2(&joint)?;
    let th4 = outer_bound_th4(&joint)?;
    println!("pre-generated outer bound: {th2:?}");
    println!("generalized outer bound:   {th4:?}");
    println!("generalized bound is weaker in R13 and R23: {}", th4.r13 >= th2.r13 && th4.r23 >= th2.r23);
    Ok(())
}
