//! Random wiretap codebooks: `⌊2^(n r)⌋` key values times `⌊2^(n r')⌋`
//! randomization values, each codeword drawn i.i.d. from the auxiliary marginal.

use rand::distr::weighted::WeightedIndex;
use rand::distr::Distribution;
use serde::{Deserialize, Serialize};
use statrs::distribution::{ChiSquared, ContinuousCDF};

use super::rng::{stream, StreamKind};
use crate::design::Marginal;
use crate::error::{Error, Result};

/// Significance level below which a generated codebook is rejected.
pub const SANITY_P_VALUE: f64 = 1e-6;

/// Largest codebook dimension accepted before enumeration-cost checks.
const MAX_DIM_LOG2: f64 = 100.0;

/// The four directed key pairs, in report order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum KeyPair {
    P12,
    P21,
    P13,
    P23,
}

impl KeyPair {
    pub const ALL: [KeyPair; 4] = [KeyPair::P12, KeyPair::P21, KeyPair::P13, KeyPair::P23];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn label(self) -> &'static str {
        match self {
            KeyPair::P12 => "12",
            KeyPair::P21 => "21",
            KeyPair::P13 => "13",
            KeyPair::P23 => "23",
        }
    }
}

/// `⌊2^(n r)⌋`, at least 1, saturating for absurd exponents.
pub fn dimension(n: usize, rate: f64) -> u128 {
    let e = n as f64 * rate;
    if e >= MAX_DIM_LOG2 {
        return 1u128 << (MAX_DIM_LOG2 as u32);
    }
    // guard against 2^(n r) landing a hair under an integer
    (e.exp2() * (1.0 + 4.0 * f64::EPSILON)).floor().max(1.0) as u128
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Codebook {
    pair: KeyPair,
    n: usize,
    key_values: usize,
    rand_values: usize,
    alphabet_size: usize,
    words: Vec<u32>,
}

impl Codebook {
    /// Draws `key_values * rand_values` codewords of length `n` from `marginal`.
    pub fn generate(
        pair: KeyPair,
        n: usize,
        key_values: usize,
        rand_values: usize,
        marginal: &Marginal,
        seed: u64,
    ) -> Result<Self> {
        let count = key_values * rand_values;
        let mut rng = stream(seed, StreamKind::Codebook, pair.index() as u64);
        let dist = WeightedIndex::new(marginal.probs())
            .map_err(|e| Error::Distribution(format!("codebook marginal: {e}")))?;
        let words: Vec<u32> = (0..count * n).map(|_| dist.sample(&mut rng) as u32).collect();
        let book = Self {
            pair,
            n,
            key_values,
            rand_values,
            alphabet_size: marginal.size(),
            words,
        };
        book.sanity_check(marginal)?;
        Ok(book)
    }

    fn sanity_check(&self, marginal: &Marginal) -> Result<()> {
        let mut counts = vec![0u64; self.alphabet_size];
        for &s in &self.words {
            counts[s as usize] += 1;
        }
        let p = chi_square_p_value(&counts, marginal.probs())?;
        if p < SANITY_P_VALUE {
            return Err(Error::CodebookSanity(format!(
                "codebook {} symbol frequencies {:?} reject the marginal (p = {p:.3e})",
                self.pair.label(),
                counts
            )));
        }
        Ok(())
    }

    pub fn pair(&self) -> KeyPair {
        self.pair
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn key_values(&self) -> usize {
        self.key_values
    }

    pub fn rand_values(&self) -> usize {
        self.rand_values
    }

    pub fn len(&self) -> usize {
        self.key_values * self.rand_values
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn index(&self, key: usize, rand: usize) -> usize {
        key * self.rand_values + rand
    }

    pub fn key_of(&self, index: usize) -> usize {
        index / self.rand_values
    }

    pub fn word(&self, index: usize) -> &[u32] {
        &self.words[index * self.n..(index + 1) * self.n]
    }

    pub fn words(&self) -> &[u32] {
        &self.words
    }
}

/// Goodness-of-fit p-value of symbol `counts` against `probs`. A symbol drawn
/// where the marginal has zero mass yields `p = 0`.
pub fn chi_square_p_value(counts: &[u64], probs: &[f64]) -> Result<f64> {
    if counts.len() != probs.len() {
        return Err(Error::DimensionMismatch(format!(
            "{} counts for {} probabilities",
            counts.len(),
            probs.len()
        )));
    }
    let total: u64 = counts.iter().sum();
    let mut stat = 0.0;
    let mut cells = 0usize;
    for (&c, &p) in counts.iter().zip(probs) {
        if p <= 0.0 {
            if c > 0 {
                return Ok(0.0);
            }
            continue;
        }
        cells += 1;
        let e = total as f64 * p;
        stat += (c as f64 - e).powi(2) / e;
    }
    if cells < 2 || total == 0 {
        return Ok(1.0);
    }
    let chi = ChiSquared::new((cells - 1) as f64).map_err(|e| Error::Distribution(e.to_string()))?;
    Ok(chi.sf(stat))
}

/// Codebooks for the four key pairs.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Codebooks {
    books: [Codebook; 4],
}

impl Codebooks {
    pub fn new(books: [Codebook; 4]) -> Self {
        Self { books }
    }

    pub fn get(&self, pair: KeyPair) -> &Codebook {
        &self.books[pair.index()]
    }

    pub fn iter(&self) -> impl Iterator<Item = &Codebook> {
        self.books.iter()
    }
}
