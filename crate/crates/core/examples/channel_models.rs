//! Building the example channels, reading them from JSON and checking that a
//! same-marginal coupling keeps every single-output marginal.

use keyregion::{ChannelSpec, Gdmmac};

fn main() -> keyregion::Result<()> {
    let erasure = Gdmmac::erasure(0.3, 0.3, 0.5, 0.1)?;
    println!("erasure channel shape [x1, x2, y1, y2, y3] = {:?}", erasure.shape());
    println!("P(y2 | x1=+1, x2=-1) = {:?}", &erasure.output_marginal(2)[6..9]);

    let spec: ChannelSpec =
        serde_json::from_str(r#"{"family": "binary_sum", "params": {"p1": 0.3, "p2": 0.1, "p3": 0.2}}"#)?;
    let sum = spec.build()?;
    let degraded = Gdmmac::binary_sum_degraded(0.3, 0.1, 0.2)?;
    for k in 1..=3 {
        let dev = sum
            .output_marginal(k)
            .iter()
            .zip(degraded.output_marginal(k))
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max);
        println!("output {k}: marginal difference between independent and degraded noise {dev:.1e}");
    }

    let correlated = Gdmmac::correlated_noise(0.09, 0.1, 0.07)?;
    let product = correlated.marginal_product();
    println!(
        "correlated-noise kernel differs from its marginal product: {}",
        correlated.kernel() != product.kernel()
    );
    Ok(())
}
