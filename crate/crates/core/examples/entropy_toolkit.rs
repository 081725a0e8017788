//! Entropies, mutual information and Markov-chain checks on a small joint PMF.

use keyregion::{binary_convolution, binary_entropy, Alphabet, JointPmf};

fn main() -> keyregion::Result<()> {
    // X ~ Bernoulli(0.3), Y = X through BSC(0.1), Z = Y through BSC(0.2)
    let (p, e1, e2) = (0.3, 0.1, 0.2);
    let flip = |a: usize, b: usize, e: f64| if a == b { 1.0 - e } else { e };
    let joint = JointPmf::from_fn(
        vec![("X", Alphabet::binary()), ("Y", Alphabet::binary()), ("Z", Alphabet::binary())],
        |i| [1.0 - p, p][i[0]] * flip(i[0], i[1], e1) * flip(i[1], i[2], e2),
    )?;

    println!("H(X)       = {:.6}", joint.entropy(&["X"])?);
    println!("H(X,Y,Z)   = {:.6}", joint.entropy(&["X", "Y", "Z"])?);
    println!("I(X;Y)     = {:.6}", joint.mutual_information(&["X"], &["Y"])?);
    println!("I(X;Z)     = {:.6}", joint.mutual_information(&["X"], &["Z"])?);
    println!("I(X;Z|Y)   = {:.2e}", joint.conditional_mutual_information(&["X"], &["Z"], &["Y"])?);

    // I(X;Z) through the cascade equals h(p∗e) - h(e) for the composed crossover
    let e = binary_convolution(e1, e2)?;
    let closed = binary_entropy(binary_convolution(p, e)?)? - binary_entropy(e)?;
    println!("closed form I(X;Z) = {closed:.6}");

    let chain = joint.is_markov_chain(&[&["X"], &["Y"], &["Z"]], 1e-12)?;
    println!("X - Y - Z holds: {} (violation {:.1e})", chain.holds, chain.max_violation);
    let reversed = joint.is_markov_chain(&[&["Y"], &["X"], &["Z"]], 1e-12)?;
    println!("Y - X - Z holds: {} (violation {:.3e})", reversed.holds, reversed.max_violation);
    Ok(())
}
