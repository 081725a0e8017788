//! Plug-in mutual information with its independence bias bound.

use keyregion::sim::plug_in_leakage;
use keyregion::sim::rng::{stream, StreamKind};
use rand::Rng;

fn main() -> keyregion::Result<()> {
    let mut rng = stream(42, StreamKind::Test, 0);
    for flip in [0.0, 0.1, 0.3, 0.5] {
        let samples: Vec<(u64, u64)> = (0..2000)
            .map(|_| {
                let key = rng.random_range(0..2u64);
                let seen = if rng.random::<f64>() < flip { 1 - key } else { key };
                (key, seen)
            })
            .collect();
        let est = plug_in_leakage(&samples)?;
        println!(
            "observation flipped w.p. {flip}: {:.4} bits (bias bound {:.4}, exact {:.4})",
            est.bits,
            est.bias_bound,
            1.0 - keyregion::binary_entropy(flip)?
        );
    }
    Ok(())
}
