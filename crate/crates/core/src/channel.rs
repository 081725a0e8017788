//! Memoryless generalized multiple-access channels.
//!
//! Two users drive the inputs `X1`, `X2`; all three users observe outputs
//! `Y1`, `Y2`, `Y3`. The kernel is stored densely, indexed
//! `[x1][x2][y1][y2][y3]`.

use serde::{Deserialize, Serialize};

use crate::error::{check_probability, Error, Result};
use crate::prob::{flat_index, symbol_label, tabulate, Alphabet, JointPmf, NORMALIZATION_TOL};

/// Canonical variable names used in every induced joint.
pub mod names {
    pub const S12: &str = "S12";
    pub const S13: &str = "S13";
    pub const S21: &str = "S21";
    pub const S23: &str = "S23";
    pub const X1: &str = "X1";
    pub const X2: &str = "X2";
    pub const Y1: &str = "Y1";
    pub const Y2: &str = "Y2";
    pub const Y3: &str = "Y3";
    pub const T12: &str = "T12";
    pub const T13: &str = "T13";
    pub const T21: &str = "T21";
    pub const T23: &str = "T23";
    pub const U: &str = "U";
}

/// Serializes as the explicit `custom` [`ChannelSpec`]; deserializes from any spec.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "ChannelSpec", into = "ChannelSpec")]
pub struct Gdmmac {
    x1: Alphabet,
    x2: Alphabet,
    y1: Alphabet,
    y2: Alphabet,
    y3: Alphabet,
    kernel: Vec<f64>,
}

impl Gdmmac {
    pub fn new(
        x1: Alphabet,
        x2: Alphabet,
        y1: Alphabet,
        y2: Alphabet,
        y3: Alphabet,
        kernel: Vec<f64>,
    ) -> Result<Self> {
        let slice = y1.size() * y2.size() * y3.size();
        let expected = x1.size() * x2.size() * slice;
        if kernel.len() != expected {
            return Err(Error::DimensionMismatch(format!(
                "kernel has {} entries, alphabets require {expected}",
                kernel.len()
            )));
        }
        if let Some(bad) = kernel.iter().find(|p| !p.is_finite() || **p < 0.0) {
            return Err(Error::Distribution(format!("invalid kernel entry {bad}")));
        }
        for (i, chunk) in kernel.chunks(slice).enumerate() {
            let total: f64 = chunk.iter().sum();
            if (total - 1.0).abs() > NORMALIZATION_TOL {
                let (a, b) = (i / x2.size(), i % x2.size());
                return Err(Error::Distribution(format!(
                    "kernel slice for (x1={}, x2={}) sums to {total}",
                    x1.symbols()[a],
                    x2.symbols()[b]
                )));
            }
        }
        Ok(Self {
            x1,
            x2,
            y1,
            y2,
            y3,
            kernel,
        })
    }

    /// Builds the kernel from `f(x1, x2, y1, y2, y3)`.
    pub fn from_fn(
        x1: Alphabet,
        x2: Alphabet,
        y1: Alphabet,
        y2: Alphabet,
        y3: Alphabet,
        f: impl Fn(usize, usize, usize, usize, usize) -> f64,
    ) -> Result<Self> {
        let shape = [x1.size(), x2.size(), y1.size(), y2.size(), y3.size()];
        let kernel = tabulate(&shape, |i| f(i[0], i[1], i[2], i[3], i[4]));
        Self::new(x1, x2, y1, y2, y3, kernel)
    }

    /// Erasure channel: `Y1 = X2·E21`, `Y2 = X1·E12`, `Y3 = (X1·E13, X2·E23)`
    /// with independent erasure indicators, `Pr(Eij = 0) = pij`.
    ///
    /// Inputs range over `{-1, +1}` and outputs over `{-1, 0, +1}`; `Y3` is a
    /// single composite variable over the nine pairs.
    pub fn erasure(p12: f64, p21: f64, p13: f64, p23: f64) -> Result<Self> {
        let p12 = check_probability("p12", p12, 0.0)?;
        let p21 = check_probability("p21", p21, 0.0)?;
        let p13 = check_probability("p13", p13, 0.0)?;
        let p23 = check_probability("p23", p23, 0.0)?;
        let input = Alphabet::new(["-1", "+1"])?;
        let output = Alphabet::new(["-1", "0", "+1"])?;
        let pairs = Alphabet::new(
            output
                .symbols()
                .iter()
                .flat_map(|a| output.symbols().iter().map(move |b| format!("({a},{b})"))),
        )?;
        // input index 0/1 -> output index 0/2; erased -> 1
        let erase = |x: usize, y: usize, p: f64| -> f64 {
            if y == 1 {
                p
            } else if y == 2 * x {
                1.0 - p
            } else {
                0.0
            }
        };
        Self::from_fn(
            input.clone(),
            input,
            output.clone(),
            output,
            pairs,
            |x1, x2, y1, y2, y3| {
                erase(x2, y1, p21) * erase(x1, y2, p12) * erase(x1, y3 / 3, p13) * erase(x2, y3 % 3, p23)
            },
        )
    }

    /// Degraded coupling of [`Gdmmac::erasure`] with identical conditional
    /// marginals: `Y2 = X1·E12`, `Y3 = (Y2·Ey, X2·E23)`, `Y1 = X2·E23·Ex`, with
    /// `Ey`, `Ex` chosen so that the first component of `Y3` is erased with
    /// probability `p13` and `Y1` with probability `p21`.
    ///
    /// Requires `p12 <= p13` and `p23 <= p21`.
    pub fn erasure_degraded(p12: f64, p21: f64, p13: f64, p23: f64) -> Result<Self> {
        let p12 = check_probability("p12", p12, 0.0)?;
        let p21 = check_probability("p21", p21, 0.0)?;
        let p13 = check_probability("p13", p13, 0.0)?;
        let p23 = check_probability("p23", p23, 0.0)?;
        if p12 > p13 || p23 > p21 {
            return Err(Error::Precondition(format!(
                "degraded coupling needs p12 <= p13 and p23 <= p21, got p12={p12}, p13={p13}, p23={p23}, p21={p21}"
            )));
        }
        let extra = |inner: f64, outer: f64| if inner >= 1.0 { 0.0 } else { 1.0 - (1.0 - outer) / (1.0 - inner) };
        let py = extra(p12, p13);
        let px = extra(p23, p21);
        let base = Self::erasure(p12, p21, p13, p23)?;
        // passes an already-noisy symbol through a further erasure
        let relay = |src: usize, dst: usize, p: f64| -> f64 {
            match (src, dst) {
                (1, 1) => 1.0,
                (1, _) => 0.0,
                (_, 1) => p,
                (s, d) if s == d => 1.0 - p,
                _ => 0.0,
            }
        };
        let erase = |x: usize, y: usize, p: f64| relay(2 * x, y, p);
        let y3 = base.y3.clone();
        Self::from_fn(
            base.x1.clone(),
            base.x2.clone(),
            base.y1.clone(),
            base.y2.clone(),
            y3,
            |x1, x2, y1, y2, y3| {
                let (a, b) = (y3 / 3, y3 % 3);
                erase(x1, y2, p12) * relay(y2, a, py) * erase(x2, b, p23) * relay(b, y1, px)
            },
        )
    }

    /// Binary-sum channel: `Yi = X1 ⊕ X2 ⊕ Zi` with independent `Zi ~ Bernoulli(pi)`.
    pub fn binary_sum(p1: f64, p2: f64, p3: f64) -> Result<Self> {
        let p = [
            crossover("p1", p1, true)?,
            crossover("p2", p2, true)?,
            crossover("p3", p3, true)?,
        ];
        let b = Alphabet::binary();
        Self::from_fn(b.clone(), b.clone(), b.clone(), b.clone(), b, |x1, x2, y1, y2, y3| {
            let s = x1 ^ x2;
            [y1, y2, y3]
                .iter()
                .zip(p)
                .map(|(&y, pi)| if y == s { 1.0 - pi } else { pi })
                .product()
        })
    }

    /// Degraded coupling of [`Gdmmac::binary_sum`] with identical conditional
    /// marginals: `Y2 = X1⊕X2⊕Z2`, `Y3 = Y2⊕W3`, `Y1 = Y3⊕W1`, where the
    /// crossovers of `W3`, `W1` make `Y3` and `Y1` see total crossovers `p3`, `p1`.
    ///
    /// Requires `p2 <= p3 <= p1`.
    pub fn binary_sum_degraded(p1: f64, p2: f64, p3: f64) -> Result<Self> {
        let p1 = crossover("p1", p1, true)?;
        let p2 = crossover("p2", p2, true)?;
        let p3 = crossover("p3", p3, true)?;
        if !(p2 <= p3 && p3 <= p1) {
            return Err(Error::Precondition(format!(
                "degraded coupling needs p2 <= p3 <= p1, got p1={p1}, p2={p2}, p3={p3}"
            )));
        }
        // solves inner ∗ w = outer
        let extra = |inner: f64, outer: f64| {
            if inner >= 0.5 {
                0.0
            } else {
                ((outer - inner) / (1.0 - 2.0 * inner)).clamp(0.0, 0.5)
            }
        };
        let w3 = extra(p2, p3);
        let w1 = extra(p3, p1);
        let flip = |a: usize, b: usize, p: f64| if a == b { 1.0 - p } else { p };
        let b = Alphabet::binary();
        Self::from_fn(b.clone(), b.clone(), b.clone(), b.clone(), b, |x1, x2, y1, y2, y3| {
            flip(x1 ^ x2, y2, p2) * flip(y2, y3, w3) * flip(y3, y1, w1)
        })
    }

    /// Channel with correlated output noise:
    /// `Y2 = X1⊕X2⊕Z2`, `Y3 = Y2⊕Z3`, `Y1 = Y3⊕Z1`, independent `Zi ~ Bernoulli(pi)`.
    pub fn correlated_noise(p1: f64, p2: f64, p3: f64) -> Result<Self> {
        let p1 = crossover("p1", p1, false)?;
        let p2 = crossover("p2", p2, false)?;
        let p3 = crossover("p3", p3, false)?;
        let flip = |a: usize, b: usize, p: f64| if a == b { 1.0 - p } else { p };
        let b = Alphabet::binary();
        Self::from_fn(b.clone(), b.clone(), b.clone(), b.clone(), b, |x1, x2, y1, y2, y3| {
            flip(x1 ^ x2, y2, p2) * flip(y2, y3, p3) * flip(y3, y1, p1)
        })
    }

    pub fn x1(&self) -> &Alphabet {
        &self.x1
    }
    pub fn x2(&self) -> &Alphabet {
        &self.x2
    }
    pub fn y1(&self) -> &Alphabet {
        &self.y1
    }
    pub fn y2(&self) -> &Alphabet {
        &self.y2
    }
    pub fn y3(&self) -> &Alphabet {
        &self.y3
    }

    /// `[|X1|, |X2|, |Y1|, |Y2|, |Y3|]`.
    pub fn shape(&self) -> [usize; 5] {
        [
            self.x1.size(),
            self.x2.size(),
            self.y1.size(),
            self.y2.size(),
            self.y3.size(),
        ]
    }

    pub fn kernel(&self) -> &[f64] {
        &self.kernel
    }

    pub fn prob(&self, x1: usize, x2: usize, y1: usize, y2: usize, y3: usize) -> f64 {
        self.kernel[flat_index(&self.shape(), &[x1, x2, y1, y2, y3])]
    }

    /// `P(y1, y2, y3 | x1, x2)` as a flat `[y1][y2][y3]` slice.
    pub fn slice(&self, x1: usize, x2: usize) -> &[f64] {
        let len = self.y1.size() * self.y2.size() * self.y3.size();
        let start = (x1 * self.x2.size() + x2) * len;
        &self.kernel[start..start + len]
    }

    /// Single-output marginal kernel `P(y_k | x1, x2)`, `k` in `1..=3`, indexed `[x1][x2][y]`.
    pub fn output_marginal(&self, k: usize) -> Vec<f64> {
        assert!((1..=3).contains(&k), "output index must be 1, 2 or 3");
        let [a1, a2, b1, b2, b3] = self.shape();
        let ysize = [b1, b2, b3][k - 1];
        let mut out = vec![0.0; a1 * a2 * ysize];
        for x1 in 0..a1 {
            for x2 in 0..a2 {
                let base = (x1 * a2 + x2) * ysize;
                for (j, &p) in self.slice(x1, x2).iter().enumerate() {
                    let y = [j / (b2 * b3), (j / b3) % b2, j % b3][k - 1];
                    out[base + y] += p;
                }
            }
        }
        out
    }

    /// The channel whose outputs are conditionally independent given the inputs
    /// but keep every single-output marginal of `self`.
    pub fn marginal_product(&self) -> Gdmmac {
        let [_, a2, b1, b2, b3] = self.shape();
        let m1 = self.output_marginal(1);
        let m2 = self.output_marginal(2);
        let m3 = self.output_marginal(3);
        let kernel = tabulate(&self.shape(), |i| {
            let x = i[0] * a2 + i[1];
            m1[x * b1 + i[2]] * m2[x * b2 + i[3]] * m3[x * b3 + i[4]]
        });
        Gdmmac {
            kernel,
            ..self.clone()
        }
    }

    /// Joint over `(X1, X2, Y1, Y2, Y3)` for an input distribution indexed `[x1][x2]`.
    pub fn joint_with_inputs(&self, p_inputs: &[f64]) -> Result<JointPmf> {
        let [a1, a2, ..] = self.shape();
        if p_inputs.len() != a1 * a2 {
            return Err(Error::DimensionMismatch(format!(
                "input distribution has {} entries, expected {}",
                p_inputs.len(),
                a1 * a2
            )));
        }
        JointPmf::from_fn(self.named_alphabets(), |i| {
            p_inputs[i[0] * a2 + i[1]] * self.prob(i[0], i[1], i[2], i[3], i[4])
        })
    }

    /// Joint over `(U, X1, X2, Y1, Y2, Y3)` for `P(u, x1, x2)` indexed `[u][x1][x2]`.
    ///
    /// The result satisfies `U - (X1, X2) - (Y1, Y2, Y3)` by construction.
    pub fn joint_with_auxiliary(&self, u: Alphabet, p_u_inputs: &[f64]) -> Result<JointPmf> {
        let [a1, a2, ..] = self.shape();
        if p_u_inputs.len() != u.size() * a1 * a2 {
            return Err(Error::DimensionMismatch(format!(
                "P(u, x1, x2) has {} entries, expected {}",
                p_u_inputs.len(),
                u.size() * a1 * a2
            )));
        }
        let mut vars = vec![(names::U.to_string(), u)];
        vars.extend(self.named_alphabets());
        JointPmf::from_fn(vars, |i| {
            p_u_inputs[(i[0] * a1 + i[1]) * a2 + i[2]] * self.prob(i[1], i[2], i[3], i[4], i[5])
        })
    }

    fn named_alphabets(&self) -> Vec<(String, Alphabet)> {
        vec![
            (names::X1.into(), self.x1.clone()),
            (names::X2.into(), self.x2.clone()),
            (names::Y1.into(), self.y1.clone()),
            (names::Y2.into(), self.y2.clone()),
            (names::Y3.into(), self.y3.clone()),
        ]
    }
}

fn crossover(what: &str, p: f64, allow_zero: bool) -> Result<f64> {
    let ok = p.is_finite() && p <= 0.5 && if allow_zero { p >= 0.0 } else { p > 0.0 };
    if ok {
        Ok(p)
    } else {
        Err(Error::Domain {
            what: format!(
                "crossover {what} (must lie in {}0, 0.5])",
                if allow_zero { "[" } else { "(" }
            ),
            value: p,
        })
    }
}

/// JSON description of a channel: `{"family": ..., "params": {...}}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family", content = "params", rename_all = "snake_case")]
pub enum ChannelSpec {
    Erasure {
        p12: f64,
        p21: f64,
        p13: f64,
        p23: f64,
    },
    ErasureDegraded {
        p12: f64,
        p21: f64,
        p13: f64,
        p23: f64,
    },
    BinarySum {
        p1: f64,
        p2: f64,
        p3: f64,
    },
    BinarySumDegraded {
        p1: f64,
        p2: f64,
        p3: f64,
    },
    CorrelatedNoise {
        p1: f64,
        p2: f64,
        p3: f64,
    },
    Custom {
        x1: Vec<serde_json::Value>,
        x2: Vec<serde_json::Value>,
        y1: Vec<serde_json::Value>,
        y2: Vec<serde_json::Value>,
        y3: Vec<serde_json::Value>,
        /// Flat row-major `[x1][x2][y1][y2][y3]` table.
        kernel: Vec<f64>,
    },
}

impl ChannelSpec {
    pub fn build(&self) -> Result<Gdmmac> {
        match *self {
            ChannelSpec::Erasure { p12, p21, p13, p23 } => Gdmmac::erasure(p12, p21, p13, p23),
            ChannelSpec::ErasureDegraded { p12, p21, p13, p23 } => {
                Gdmmac::erasure_degraded(p12, p21, p13, p23)
            }
            ChannelSpec::BinarySumDegraded { p1, p2, p3 } => Gdmmac::binary_sum_degraded(p1, p2, p3),
            ChannelSpec::BinarySum { p1, p2, p3 } => Gdmmac::binary_sum(p1, p2, p3),
            ChannelSpec::CorrelatedNoise { p1, p2, p3 } => Gdmmac::correlated_noise(p1, p2, p3),
            ChannelSpec::Custom {
                ref x1,
                ref x2,
                ref y1,
                ref y2,
                ref y3,
                ref kernel,
            } => {
                let alpha = |v: &[serde_json::Value]| Alphabet::new(v.iter().map(symbol_label));
                Gdmmac::new(
                    alpha(x1)?,
                    alpha(x2)?,
                    alpha(y1)?,
                    alpha(y2)?,
                    alpha(y3)?,
                    kernel.clone(),
                )
            }
        }
    }
}

impl TryFrom<ChannelSpec> for Gdmmac {
    type Error = Error;
    fn try_from(spec: ChannelSpec) -> Result<Self> {
        spec.build()
    }
}

impl From<Gdmmac> for ChannelSpec {
    fn from(ch: Gdmmac) -> Self {
        let sym = |a: &Alphabet| a.symbols().iter().map(|s| serde_json::Value::String(s.clone())).collect();
        ChannelSpec::Custom {
            x1: sym(&ch.x1),
            x2: sym(&ch.x2),
            y1: sym(&ch.y1),
            y2: sym(&ch.y2),
            y3: sym(&ch.y3),
            kernel: ch.kernel,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn assert_kernel_valid(ch: &Gdmmac) {
        let [a1, a2, ..] = ch.shape();
        for x1 in 0..a1 {
            for x2 in 0..a2 {
                let s: f64 = ch.slice(x1, x2).iter().sum();
                assert!((s - 1.0).abs() < 1e-12);
            }
        }
        assert!(ch.kernel().iter().all(|&p| p >= 0.0));
    }

    #[test]
    fn erasure_noiseless_copies() {
        let ch = Gdmmac::erasure(0.0, 0.0, 0.0, 0.0).unwrap();
        assert_kernel_valid(&ch);
        for x1 in 0..2 {
            for x2 in 0..2 {
                // y1 = x2, y2 = x1, y3 = (x1, x2), no erasure symbol
                assert_eq!(ch.prob(x1, x2, 2 * x2, 2 * x1, 3 * (2 * x1) + 2 * x2), 1.0);
            }
        }
    }

    #[test]
    fn erasure_full_erasure_to_user2() {
        let ch = Gdmmac::erasure(1.0, 0.2, 0.3, 0.4).unwrap();
        let m2 = ch.output_marginal(2);
        for x in 0..4 {
            assert!((m2[x * 3 + 1] - 1.0).abs() < 1e-15);
        }
    }

    #[test]
    fn erasure_y3_first_coordinate() {
        let ch = Gdmmac::erasure(0.3, 0.3, 0.5, 0.1).unwrap();
        assert_kernel_valid(&ch);
        let m3 = ch.output_marginal(3);
        for x in 0..4 {
            let erased: f64 = (0..3).map(|b| m3[x * 9 + 3 + b]).sum();
            assert!((erased - 0.5).abs() < 1e-15);
        }
        assert!(Gdmmac::erasure(1.2, 0.0, 0.0, 0.0).is_err());
    }

    #[test]
    fn binary_sum_cases() {
        let ch = Gdmmac::binary_sum(0.0, 0.0, 0.0).unwrap();
        for x1 in 0..2 {
            for x2 in 0..2 {
                let s = x1 ^ x2;
                assert_eq!(ch.prob(x1, x2, s, s, s), 1.0);
            }
        }
        let ch = Gdmmac::binary_sum(0.1, 0.5, 0.2).unwrap();
        let m2 = ch.output_marginal(2);
        assert!(m2.iter().all(|&p| (p - 0.5).abs() < 1e-15));

        let ch = Gdmmac::binary_sum(0.09, 0.1, 0.07).unwrap();
        assert_kernel_valid(&ch);
        let m1 = ch.output_marginal(1);
        for x1 in 0..2 {
            for x2 in 0..2 {
                let wrong = 1 - (x1 ^ x2);
                assert!((m1[(x1 * 2 + x2) * 2 + wrong] - 0.09).abs() < 1e-15);
            }
        }
        assert!(Gdmmac::binary_sum(0.6, 0.1, 0.1).is_err());
        assert!(Gdmmac::binary_sum(-0.1, 0.1, 0.1).is_err());
    }

    #[test]
    fn degraded_erasure_keeps_marginals() {
        let orig = Gdmmac::erasure(0.3, 0.3, 0.5, 0.1).unwrap();
        let coupled = Gdmmac::erasure_degraded(0.3, 0.3, 0.5, 0.1).unwrap();
        assert_kernel_valid(&coupled);
        assert_ne!(orig.kernel(), coupled.kernel());
        for k in 1..=3 {
            let (a, b) = (orig.output_marginal(k), coupled.output_marginal(k));
            assert!(a.iter().zip(&b).all(|(x, y)| (x - y).abs() < 1e-15));
        }
        assert!(Gdmmac::erasure_degraded(0.6, 0.3, 0.5, 0.1).is_err());
        assert!(Gdmmac::erasure_degraded(0.3, 0.05, 0.5, 0.1).is_err());
    }

    #[test]
    fn degraded_binary_sum_keeps_marginals() {
        let orig = Gdmmac::binary_sum(0.3, 0.1, 0.2).unwrap();
        let coupled = Gdmmac::binary_sum_degraded(0.3, 0.1, 0.2).unwrap();
        assert_kernel_valid(&coupled);
        for k in 1..=3 {
            let (a, b) = (orig.output_marginal(k), coupled.output_marginal(k));
            assert!(a.iter().zip(&b).all(|(x, y)| (x - y).abs() < 1e-15));
        }
        let joint = coupled.joint_with_inputs(&[0.25; 4]).unwrap();
        let check = joint.is_markov_chain(&[&["X1", "X2"], &["Y2"], &["Y3"], &["Y1"]], 1e-9).unwrap();
        assert!(check.holds);
        assert!(Gdmmac::binary_sum_degraded(0.09, 0.1, 0.07).is_err());
        assert!(Gdmmac::binary_sum_degraded(0.2, 0.2, 0.2).is_ok());
    }

    #[test]
    fn correlated_noise_cases() {
        assert!(Gdmmac::correlated_noise(0.0, 0.1, 0.1).is_err());
        assert!(Gdmmac::correlated_noise(0.1, 0.1, 0.51).is_err());
        let ch = Gdmmac::correlated_noise(0.09, 0.1, 0.07).unwrap();
        assert_kernel_valid(&ch);
        for x1 in 0..2 {
            for x2 in 0..2 {
                let mut differ = 0.0;
                for y1 in 0..2 {
                    for y2 in 0..2 {
                        differ += ch.prob(x1, x2, y1, y2, 1 - y2);
                    }
                }
                assert!((differ - 0.07).abs() < 1e-15);
            }
        }
        // the noiseless limit collapses every output onto x1 xor x2
        let ch = Gdmmac::correlated_noise(1e-15, 1e-15, 1e-15).unwrap();
        for x1 in 0..2 {
            for x2 in 0..2 {
                let s = x1 ^ x2;
                assert!((ch.prob(x1, x2, s, s, s) - 1.0).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn correlated_noise_is_degraded() {
        let ch = Gdmmac::correlated_noise(0.09, 0.1, 0.07).unwrap();
        let joint = ch.joint_with_inputs(&[0.25; 4]).unwrap();
        let check = joint
            .is_markov_chain(&[&["X1", "X2"], &["Y2"], &["Y3"], &["Y1"]], 1e-9)
            .unwrap();
        assert!(check.holds, "violation {}", check.max_violation);
    }

    #[test]
    fn marginal_product_keeps_marginals() {
        let ch = Gdmmac::correlated_noise(0.2, 0.1, 0.3).unwrap();
        let prod = ch.marginal_product();
        assert_kernel_valid(&prod);
        for k in 1..=3 {
            for (a, b) in ch.output_marginal(k).iter().zip(prod.output_marginal(k)) {
                assert!((a - b).abs() < 1e-15);
            }
        }
        assert_ne!(ch.kernel(), prod.kernel());
    }

    #[test]
    fn invalid_custom_kernel() {
        let b = Alphabet::binary();
        let err = Gdmmac::new(b.clone(), b.clone(), b.clone(), b.clone(), b, vec![0.1; 32]);
        assert!(matches!(err, Err(Error::Distribution(_))));
    }

    #[test]
    fn spec_json() {
        let spec: ChannelSpec =
            serde_json::from_str(r#"{"family":"binary_sum","params":{"p1":0.3,"p2":0.1,"p3":0.2}}"#)
                .unwrap();
        assert_eq!(spec.build().unwrap(), Gdmmac::binary_sum(0.3, 0.1, 0.2).unwrap());

        let mut kernel = Vec::new();
        for x1 in 0..2 {
            for x2 in 0..2 {
                for y in 0..8usize {
                    kernel.push(if y == 7 * ((x1 ^ x2) as usize) { 1.0 } else { 0.0 });
                }
            }
        }
        let custom = serde_json::json!({
            "family": "custom",
            "params": {"x1": [0, 1], "x2": [0, 1], "y1": [0, 1], "y2": [0, 1], "y3": [0, 1],
                       "kernel": kernel}
        });
        let spec: ChannelSpec = serde_json::from_value(custom).unwrap();
        assert_eq!(spec.build().unwrap(), Gdmmac::binary_sum(0.0, 0.0, 0.0).unwrap());

        let ch = Gdmmac::erasure(0.3, 0.3, 0.5, 0.1).unwrap();
        let text = serde_json::to_string(&ch).unwrap();
        assert_eq!(serde_json::from_str::<Gdmmac>(&text).unwrap(), ch);
        let from_family: Gdmmac =
            serde_json::from_str(r#"{"family":"erasure","params":{"p12":0.3,"p21":0.3,"p13":0.5,"p23":0.1}}"#)
                .unwrap();
        assert_eq!(from_family, ch);
    }
}
