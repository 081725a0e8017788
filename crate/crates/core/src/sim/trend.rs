//! Mann-Kendall test for a monotone trend in a short series.

use serde::{Deserialize, Serialize};
use statrs::distribution::{ContinuousCDF, Normal};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MannKendall {
    /// Sum of pairwise signs `sgn(x_j - x_i)`, `i < j`.
    pub s: i64,
    /// Variance of `s` under no trend, with tie correction.
    pub variance: f64,
    /// Continuity-corrected standard score.
    pub z: f64,
    /// One-sided p-value against an increasing trend.
    pub p_increasing: f64,
}

pub fn mann_kendall(values: &[f64]) -> Result<MannKendall> {
    let n = values.len();
    if n < 3 {
        return Err(Error::EmptyInput(format!("trend test needs at least 3 values, got {n}")));
    }
    let mut s = 0i64;
    for i in 0..n {
        for j in i + 1..n {
            s += match values[j].partial_cmp(&values[i]) {
                Some(std::cmp::Ordering::Greater) => 1,
                Some(std::cmp::Ordering::Less) => -1,
                _ => 0,
            };
        }
    }
    let mut sorted = values.to_vec();
    sorted.sort_by(f64::total_cmp);
    let mut ties = 0.0;
    let mut k = 0;
    while k < n {
        let mut run = 1;
        while k + run < n && sorted[k + run] == sorted[k] {
            run += 1;
        }
        let t = run as f64;
        ties += t * (t - 1.0) * (2.0 * t + 5.0);
        k += run;
    }
    let nf = n as f64;
    let variance = (nf * (nf - 1.0) * (2.0 * nf + 5.0) - ties) / 18.0;
    let z = if variance <= 0.0 {
        0.0
    } else if s > 0 {
        (s as f64 - 1.0) / variance.sqrt()
    } else if s < 0 {
        (s as f64 + 1.0) / variance.sqrt()
    } else {
        0.0
    };
    let normal = Normal::new(0.0, 1.0).map_err(|e| Error::Distribution(e.to_string()))?;
    Ok(MannKendall {
        s,
        variance,
        z,
        p_increasing: normal.sf(z),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn increasing_series_is_significant() {
        let r = mann_kendall(&[0.0, 0.1, 0.3, 0.7, 1.0]).unwrap();
        assert_eq!(r.s, 10);
        assert!((r.variance - 50.0 / 3.0).abs() < 1e-12);
        assert!(r.p_increasing < 0.05);
    }

    #[test]
    fn flat_and_decreasing() {
        let flat = mann_kendall(&[0.2; 5]).unwrap();
        assert_eq!(flat.s, 0);
        assert!(flat.p_increasing >= 0.5);
        let down = mann_kendall(&[1.0, 0.8, 0.5, 0.2, 0.0]).unwrap();
        assert!(down.p_increasing > 0.95);
        assert!(mann_kendall(&[1.0, 2.0]).is_err());
    }

    #[test]
    fn ties_reduce_variance() {
        let r = mann_kendall(&[0.0, 0.0, 1.0, 1.0, 1.0]).unwrap();
        assert_eq!(r.s, 6);
        assert!(r.variance < 50.0 / 3.0);
    }
}
