//! Strong-typicality decoding by empirical joint type.

use serde::{Deserialize, Serialize};

use super::codebook::Codebook;
use crate::error::Result;
use crate::prob::JointPmf;

/// Target joint distribution of a tuple of sequences.
#[derive(Debug, Clone, PartialEq)]
pub struct TypeTarget {
    dims: Vec<usize>,
    probs: Vec<f64>,
}

impl TypeTarget {
    /// Marginal of `joint` on `vars`, with dimensions in the order given.
    pub fn from_joint(joint: &JointPmf, vars: &[&str]) -> Result<Self> {
        let m = joint.marginalize(vars)?;
        // marginalize keeps the joint's order; permute to the requested one
        let order: Vec<usize> = vars.iter().map(|v| m.position(v)).collect::<Result<_>>()?;
        let dims: Vec<usize> = order.iter().map(|&k| m.shape()[k]).collect();
        let total: usize = dims.iter().product();
        let mut probs = vec![0.0; total];
        let mut idx = vec![0usize; dims.len()];
        let mut src = vec![0usize; dims.len()];
        for p in probs.iter_mut() {
            for (j, &k) in order.iter().enumerate() {
                src[k] = idx[j];
            }
            *p = m.prob(&src);
            for k in (0..dims.len()).rev() {
                idx[k] += 1;
                if idx[k] < dims[k] {
                    break;
                }
                idx[k] = 0;
            }
        }
        Ok(Self { dims, probs })
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn probs(&self) -> &[f64] {
        &self.probs
    }

    /// L∞ distance between the empirical joint type of `seqs` and the target,
    /// or infinity when a cell of zero target mass is occupied.
    pub fn distance(&self, seqs: &[&[u32]], counts: &mut Vec<u32>) -> f64 {
        debug_assert_eq!(seqs.len(), self.dims.len());
        let n = seqs[0].len();
        counts.clear();
        counts.resize(self.probs.len(), 0);
        for i in 0..n {
            let mut cell = 0usize;
            for (s, &d) in seqs.iter().zip(&self.dims) {
                cell = cell * d + s[i] as usize;
            }
            counts[cell] += 1;
        }
        let inv = 1.0 / n as f64;
        let mut worst = 0.0f64;
        for (&c, &p) in counts.iter().zip(&self.probs) {
            if p == 0.0 && c > 0 {
                return f64::INFINITY;
            }
            worst = worst.max((c as f64 * inv - p).abs());
        }
        worst
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "outcome", rename_all = "snake_case")]
pub enum DecodeOutcome {
    Unique { index: usize },
    Ambiguous { matches: usize },
    NoMatch,
}

impl DecodeOutcome {
    fn from_matches(matches: usize, last: usize) -> Self {
        match matches {
            0 => DecodeOutcome::NoMatch,
            1 => DecodeOutcome::Unique { index: last },
            m => DecodeOutcome::Ambiguous { matches: m },
        }
    }
}

/// Finds the codewords `c` with `(c, obs...)` jointly typical. The target's
/// first dimension is the codeword alphabet.
pub fn decode_single(target: &TypeTarget, book: &Codebook, obs: &[&[u32]], epsilon: f64) -> DecodeOutcome {
    let mut counts = Vec::new();
    let mut seqs: Vec<&[u32]> = Vec::with_capacity(obs.len() + 1);
    let (mut matches, mut last) = (0, 0);
    for idx in 0..book.len() {
        seqs.clear();
        seqs.push(book.word(idx));
        seqs.extend_from_slice(obs);
        if target.distance(&seqs, &mut counts) <= epsilon {
            matches += 1;
            last = idx;
        }
    }
    DecodeOutcome::from_matches(matches, last)
}

/// Joint decoding of a codeword pair from two books; the returned index is
/// `ia * |b| + ib`. The target's first two dimensions are the codeword alphabets.
pub fn decode_pair(
    target: &TypeTarget,
    a: &Codebook,
    b: &Codebook,
    obs: &[&[u32]],
    epsilon: f64,
) -> DecodeOutcome {
    let mut counts = Vec::new();
    let mut seqs: Vec<&[u32]> = Vec::with_capacity(obs.len() + 2);
    let (mut matches, mut last) = (0, 0);
    for ia in 0..a.len() {
        for ib in 0..b.len() {
            seqs.clear();
            seqs.push(a.word(ia));
            seqs.push(b.word(ib));
            seqs.extend_from_slice(obs);
            if target.distance(&seqs, &mut counts) <= epsilon {
                matches += 1;
                last = ia * b.len() + ib;
            }
        }
    }
    DecodeOutcome::from_matches(matches, last)
}
