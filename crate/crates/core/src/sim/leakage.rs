//! Plug-in mutual-information estimate between keys and bucketed observations.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use statrs::distribution::{ChiSquared, ContinuousCDF};

use crate::error::{Error, Result};

/// Quantile of the chi-square null distribution used for the bias bound.
pub const BIAS_QUANTILE: f64 = 0.999;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LeakageEstimate {
    /// Plug-in estimate in bits, clamped at zero.
    pub bits: f64,
    /// Estimate level not exceeded with probability [`BIAS_QUANTILE`] when the
    /// key is independent of the bucket.
    pub bias_bound: f64,
    /// Fewer than two distinct keys were observed.
    pub degenerate: bool,
    pub samples: usize,
}

/// Empirical `I(key; bucket)` in bits from `(key, bucket)` samples.
///
/// Under independence, `2 m ln 2 · Î` is asymptotically chi-square with
/// `(|K| - 1)(|B| - 1)` degrees of freedom; the reported bias bound is the
/// [`BIAS_QUANTILE`] quantile of that law scaled back to bits, with `|K|`
/// and `|B|` the numbers of distinct values seen.
pub fn plug_in_leakage(samples: &[(u64, u64)]) -> Result<LeakageEstimate> {
    let m = samples.len();
    if m < 2 {
        return Err(Error::EmptyInput(format!("plug-in leakage needs at least 2 samples, got {m}")));
    }
    let mut joint: BTreeMap<(u64, u64), u64> = BTreeMap::new();
    let mut keys: BTreeMap<u64, u64> = BTreeMap::new();
    let mut buckets: BTreeMap<u64, u64> = BTreeMap::new();
    for &(k, b) in samples {
        *joint.entry((k, b)).or_default() += 1;
        *keys.entry(k).or_default() += 1;
        *buckets.entry(b).or_default() += 1;
    }
    if keys.len() < 2 {
        return Ok(LeakageEstimate {
            bits: 0.0,
            bias_bound: 0.0,
            degenerate: true,
            samples: m,
        });
    }
    let mf = m as f64;
    let bits: f64 = joint
        .iter()
        .map(|(&(k, b), &c)| {
            let c = c as f64;
            c / mf * (c * mf / (keys[&k] as f64 * buckets[&b] as f64)).log2()
        })
        .sum();
    let df = (keys.len() - 1) * (buckets.len() - 1);
    let bias_bound = if df == 0 {
        0.0
    } else {
        let chi = ChiSquared::new(df as f64).map_err(|e| Error::Distribution(e.to_string()))?;
        chi.inverse_cdf(BIAS_QUANTILE) / (2.0 * mf * std::f64::consts::LN_2)
    };
    Ok(LeakageEstimate {
        bits: bits.max(0.0),
        bias_bound,
        degenerate: false,
        samples: m,
    })
}

/// FNV-1a hash of a symbol sequence, used for the hashed bucketing mode.
pub fn hash_bucket(seqs: &[&[u32]], bits: u32) -> u64 {
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    for s in seqs {
        for &v in *s {
            for byte in v.to_le_bytes() {
                h ^= byte as u64;
                h = h.wrapping_mul(0x0000_0100_0000_01b3);
            }
        }
        h ^= 0xff;
        h = h.wrapping_mul(0x0000_0100_0000_01b3);
    }
    if bits >= 64 {
        h
    } else {
        h & ((1u64 << bits) - 1)
    }
}
