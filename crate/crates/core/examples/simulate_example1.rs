//! Finite-blocklength simulation on the erasure example: decoding error rates
//! below and above the capacity corner, and key leakage with and without
//! wiretap randomization.

use keyregion::sim::{simulate, PairRates, SimConfig};
use keyregion::{AuxDesign, Gdmmac};

fn main() -> keyregion::Result<()> {
    let channel = Gdmmac::erasure(0.3, 0.3, 0.5, 0.1)?;
    // capacity corner (p13 - p12, 0, p12 - p23) = (0.2, 0, 0.2)
    let corner = PairRates::new(0.2, 0.0, 0.0, 0.2);
    // eavesdropper thresholds: 1 - p13 for K12, 1 - p21 for K23
    let threshold = PairRates::new(0.5, 0.0, 0.0, 0.7);

    println!("scale  u1     u2     u3     leak12  leak23");
    for scale in [0.5, 1.0, 1.5] {
        let mut cfg = SimConfig::new(channel.clone(), AuxDesign::example1(), 8, corner.scaled(scale), 200, 7);
        cfg.randomization_rates = threshold.scaled(scale);
        let r = simulate(&cfg)?;
        println!(
            "{scale:<6} {:.3}  {:.3}  {:.3}  {:.3}   {:.3}",
            r.errors.u1,
            r.errors.u2,
            r.errors.u3,
            r.leakage_bits.k12.unwrap_or(0.0),
            r.leakage_bits.k23.unwrap_or(0.0)
        );
    }

    for r_rand in [0.0, 0.6] {
        let mut cfg = SimConfig::new(
            channel.clone(),
            AuxDesign::example1(),
            8,
            PairRates::new(0.125, 0.0, 0.0, 0.0),
            2000,
            7,
        );
        cfg.randomization_rates.r12 = r_rand;
        let r = simulate(&cfg)?;
        println!(
            "r'12 = {r_rand}: leakage of K12 {:.3} bits (independence bound {:.3})",
            r.leakage_bits.k12.unwrap_or(0.0),
            r.leakage_bias_bound.k12.unwrap_or(0.0)
        );
    }
    Ok(())
}
