//! Finite-blocklength Monte Carlo simulation of the pre-generated-keys scheme.
//!
//! One block: each pair `jl` picks a key and a randomization index uniformly,
//! sends the matching codeword of its wiretap codebook through the input
//! kernels and the channel, and each receiver decodes by strong typicality.
//! Leakage is estimated per trial by bucketing each eavesdropper's view.

pub mod codebook;
pub mod decode;
pub mod leakage;
pub mod rng;
pub mod trend;

use std::collections::BTreeMap;
use std::time::Instant;

use rand::distr::weighted::WeightedIndex;
use rand::distr::Distribution;
use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::channel::names::*;
use crate::channel::Gdmmac;
use crate::design::{induce_joint, AuxDesign, DesignSpec, Kernel};
use crate::error::{Error, Result};

pub use codebook::{chi_square_p_value, dimension, Codebook, Codebooks, KeyPair};
pub use decode::{decode_pair, decode_single, DecodeOutcome, TypeTarget};
pub use leakage::{hash_bucket, plug_in_leakage, LeakageEstimate};
pub use trend::{mann_kendall, MannKendall};

/// Default enumeration budget (symbol comparisons over the whole run).
pub const DEFAULT_BUDGET: u64 = 10_000_000_000;

/// Default typicality slack `1.2 / sqrt(n)`.
pub fn default_epsilon(n: usize) -> f64 {
    1.2 / (n.max(1) as f64).sqrt()
}

/// One rate per directed key pair, in bits per channel use.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct PairRates {
    #[serde(default)]
    pub r12: f64,
    #[serde(default)]
    pub r21: f64,
    #[serde(default)]
    pub r13: f64,
    #[serde(default)]
    pub r23: f64,
}

impl PairRates {
    pub fn new(r12: f64, r21: f64, r13: f64, r23: f64) -> Self {
        Self { r12, r21, r13, r23 }
    }

    pub fn get(&self, pair: KeyPair) -> f64 {
        match pair {
            KeyPair::P12 => self.r12,
            KeyPair::P21 => self.r21,
            KeyPair::P13 => self.r13,
            KeyPair::P23 => self.r23,
        }
    }

    pub fn scaled(&self, f: f64) -> Self {
        Self::new(self.r12 * f, self.r21 * f, self.r13 * f, self.r23 * f)
    }
}

/// How each eavesdropper observation is reduced to a finite bucket.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(tag = "mode", rename_all = "snake_case")]
pub enum LeakageMode {
    Off,
    /// Bucket = the eavesdropper's maximum a posteriori key given its view.
    #[default]
    MapKey,
    /// Bucket = a hash of the raw view into `2^buckets_log2` values.
    Hash { buckets_log2: u32 },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SimConfig {
    pub channel: Gdmmac,
    /// Primary-layer design; read from any design spec.
    #[serde(serialize_with = "ser_design", deserialize_with = "de_design")]
    pub design: AuxDesign,
    /// Blocklength.
    pub n: usize,
    pub key_rates: PairRates,
    #[serde(default)]
    pub randomization_rates: PairRates,
    /// Typicality slack; defaults to [`default_epsilon`].
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub epsilon_typ: Option<f64>,
    pub trials: usize,
    #[serde(default)]
    pub seed: u64,
    #[serde(default = "default_budget")]
    pub budget: u64,
    #[serde(default)]
    pub leakage: LeakageMode,
}

fn default_budget() -> u64 {
    DEFAULT_BUDGET
}

fn ser_design<S: Serializer>(d: &AuxDesign, s: S) -> std::result::Result<S::Ok, S::Error> {
    DesignSpec::Custom(Box::new(d.clone())).serialize(s)
}

fn de_design<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<AuxDesign, D::Error> {
    DesignSpec::deserialize(d)?.build().map_err(serde::de::Error::custom)
}

impl SimConfig {
    pub fn new(channel: Gdmmac, design: AuxDesign, n: usize, key_rates: PairRates, trials: usize, seed: u64) -> Self {
        Self {
            channel,
            design,
            n,
            key_rates,
            randomization_rates: PairRates::default(),
            epsilon_typ: None,
            trials,
            seed,
            budget: DEFAULT_BUDGET,
            leakage: LeakageMode::default(),
        }
    }

    pub fn epsilon(&self) -> f64 {
        self.epsilon_typ.unwrap_or_else(|| default_epsilon(self.n))
    }

    pub fn validate(&self) -> Result<()> {
        if self.n == 0 {
            return Err(Error::Config("blocklength n must be at least 1".into()));
        }
        if self.trials == 0 {
            return Err(Error::Config("trials must be positive".into()));
        }
        for pair in KeyPair::ALL {
            for (what, r) in [
                ("key rate", self.key_rates.get(pair)),
                ("randomization rate", self.randomization_rates.get(pair)),
            ] {
                if !r.is_finite() || r < 0.0 {
                    return Err(Error::Config(format!("{what} r{} = {r} must be finite and >= 0", pair.label())));
                }
            }
        }
        let eps = self.epsilon();
        if !eps.is_finite() || eps < 0.0 {
            return Err(Error::Config(format!("epsilon_typ = {eps} must be finite and >= 0")));
        }
        if self.design.has_secondary() {
            return Err(Error::Config(
                "the simulator covers the primary key layer only; drop the secondary layer".into(),
            ));
        }
        if let LeakageMode::Hash { buckets_log2 } = self.leakage {
            if buckets_log2 == 0 || buckets_log2 > 64 {
                return Err(Error::Config(format!("buckets_log2 = {buckets_log2} must lie in 1..=64")));
            }
        }
        self.design.validate_for(&self.channel)
    }

    /// `(key values, randomization values)` of one codebook.
    pub fn codebook_dims(&self, pair: KeyPair) -> (u128, u128) {
        (
            dimension(self.n, self.key_rates.get(pair)),
            dimension(self.n, self.randomization_rates.get(pair)),
        )
    }

    /// Symbol operations needed for generation, decoding and leakage estimation.
    pub fn enumeration_cost(&self) -> u128 {
        let size = |p: KeyPair| {
            let (k, r) = self.codebook_dims(p);
            k.saturating_mul(r)
        };
        let (c12, c21, c13, c23) = (size(KeyPair::P12), size(KeyPair::P21), size(KeyPair::P13), size(KeyPair::P23));
        let n = self.n as u128;
        let generation = c12.saturating_add(c21).saturating_add(c13).saturating_add(c23).saturating_mul(n);
        let mut per_trial = c21.saturating_add(c12).saturating_add(c13.saturating_mul(c23));
        if self.leakage != LeakageMode::Off {
            per_trial = per_trial
                .saturating_add(c12.saturating_mul(c21))
                .saturating_add(c13)
                .saturating_add(c23);
        }
        generation.saturating_add(per_trial.saturating_mul(n).saturating_mul(self.trials as u128))
    }

    fn check_budget(&self) -> Result<()> {
        let cost = self.enumeration_cost();
        if cost > self.budget as u128 {
            return Err(Error::BudgetExceeded {
                cost,
                budget: self.budget as u128,
            });
        }
        Ok(())
    }
}

/// Draws the four codebooks of `config`, deterministically in its seed.
pub fn generate_codebooks(config: &SimConfig) -> Result<Codebooks> {
    config.validate()?;
    config.check_budget()?;
    let marginals = [&config.design.s12, &config.design.s21, &config.design.s13, &config.design.s23];
    let books = KeyPair::ALL.map(|pair| {
        let (k, r) = config.codebook_dims(pair);
        Codebook::generate(pair, config.n, k as usize, r as usize, marginals[pair.index()], config.seed)
    });
    let [a, b, c, d] = books;
    Ok(Codebooks::new([a?, b?, c?, d?]))
}

/// `(key, randomization)` indices of the transmitted codeword of each pair.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct Sent {
    pub key: usize,
    pub rand: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Transcript {
    pub x1: Vec<u32>,
    pub x2: Vec<u32>,
    pub y1: Vec<u32>,
    pub y2: Vec<u32>,
    pub y3: Vec<u32>,
}

/// `(true key index, bucket)` for one eavesdropper view.
pub type LeakageSample = (u64, u64);

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrialOutcome {
    /// Indexed as [`KeyPair::ALL`].
    pub sent: [Sent; 4],
    /// User 1 decoding the `S21` codeword.
    pub u1: DecodeOutcome,
    /// User 2 decoding the `S12` codeword.
    pub u2: DecodeOutcome,
    /// User 3 decoding the `(S13, S23)` codeword pair.
    pub u3: DecodeOutcome,
    pub u1_error: bool,
    pub u2_error: bool,
    pub u3_error: bool,
    pub transcript: Transcript,
    /// For `(K12, K21)` against User 3, `K13` against User 2, `K23` against User 1.
    pub leakage: Option<[LeakageSample; 3]>,
    /// Entropy in bits of each eavesdropper's exact key posterior (MAP mode only).
    pub posterior_entropy: Option<[f64; 3]>,
}

/// Codebooks plus the precomputed samplers, decoding targets and
/// eavesdropper likelihood tables of one configuration.
pub struct Simulator {
    config: SimConfig,
    books: Codebooks,
    eps: f64,
    s: [usize; 4],
    shape: [usize; 5],
    x1_rows: Vec<WeightedIndex<f64>>,
    x2_rows: Vec<WeightedIndex<f64>>,
    out_rows: Vec<WeightedIndex<f64>>,
    t1: TypeTarget,
    t2: TypeTarget,
    t3: TypeTarget,
    /// ln P(y3 | s12, s13, s21, s23)
    ll3: Vec<f64>,
    /// ln P(y2 | s12, s13, x2)
    ll2: Vec<f64>,
    /// ln P(y1 | s21, s23, x1)
    ll1: Vec<f64>,
}

fn rows(kernel: &Kernel, conds: usize, cond_dims: &[usize]) -> Result<Vec<WeightedIndex<f64>>> {
    (0..conds)
        .map(|c| {
            let idx = [c / cond_dims[1], c % cond_dims[1]];
            WeightedIndex::new(kernel.row(&idx)).map_err(|e| Error::Distribution(format!("kernel row: {e}")))
        })
        .collect()
}

impl Simulator {
    pub fn new(config: SimConfig) -> Result<Self> {
        let books = generate_codebooks(&config)?;
        let ch = &config.channel;
        let d = &config.design;
        let s = [d.s12.size(), d.s13.size(), d.s21.size(), d.s23.size()];
        let shape = ch.shape();
        let [a1, a2, b1, b2, b3] = shape;
        let x1_rows = rows(&d.x1, s[0] * s[1], &[s[0], s[1]])?;
        let x2_rows = rows(&d.x2, s[2] * s[3], &[s[2], s[3]])?;
        let out_rows = (0..a1 * a2)
            .map(|x| {
                WeightedIndex::new(ch.slice(x / a2, x % a2))
                    .map_err(|e| Error::Distribution(format!("channel slice: {e}")))
            })
            .collect::<Result<Vec<_>>>()?;

        let joint = induce_joint(ch, d)?;
        let t1 = TypeTarget::from_joint(&joint, &[S21, X1, Y1])?;
        let t2 = TypeTarget::from_joint(&joint, &[S12, X2, Y2])?;
        let t3 = TypeTarget::from_joint(&joint, &[S13, S23, Y3])?;

        let (m1, m2, m3) = (ch.output_marginal(1), ch.output_marginal(2), ch.output_marginal(3));
        let mut ll3 = Vec::with_capacity(s.iter().product::<usize>() * b3);
        for s12 in 0..s[0] {
            for s13 in 0..s[1] {
                for s21 in 0..s[2] {
                    for s23 in 0..s[3] {
                        for y3 in 0..b3 {
                            let mut p = 0.0;
                            for x1 in 0..a1 {
                                for x2 in 0..a2 {
                                    p += d.x1.prob(&[s12, s13], x1)
                                        * d.x2.prob(&[s21, s23], x2)
                                        * m3[(x1 * a2 + x2) * b3 + y3];
                                }
                            }
                            ll3.push(p.ln());
                        }
                    }
                }
            }
        }
        let mut ll2 = Vec::with_capacity(s[0] * s[1] * a2 * b2);
        for s12 in 0..s[0] {
            for s13 in 0..s[1] {
                for x2 in 0..a2 {
                    for y2 in 0..b2 {
                        let p: f64 = (0..a1)
                            .map(|x1| d.x1.prob(&[s12, s13], x1) * m2[(x1 * a2 + x2) * b2 + y2])
                            .sum();
                        ll2.push(p.ln());
                    }
                }
            }
        }
        let mut ll1 = Vec::with_capacity(s[2] * s[3] * a1 * b1);
        for s21 in 0..s[2] {
            for s23 in 0..s[3] {
                for x1 in 0..a1 {
                    for y1 in 0..b1 {
                        let p: f64 = (0..a2)
                            .map(|x2| d.x2.prob(&[s21, s23], x2) * m1[(x1 * a2 + x2) * b1 + y1])
                            .sum();
                        ll1.push(p.ln());
                    }
                }
            }
        }

        Ok(Self {
            eps: config.epsilon(),
            config,
            books,
            s,
            shape,
            x1_rows,
            x2_rows,
            out_rows,
            t1,
            t2,
            t3,
            ll3,
            ll2,
            ll1,
        })
    }

    pub fn config(&self) -> &SimConfig {
        &self.config
    }

    pub fn codebooks(&self) -> &Codebooks {
        &self.books
    }

    /// Runs trial `trial` with keys and randomization drawn from its own stream.
    pub fn run_trial(&self, trial: u64) -> TrialOutcome {
        let mut rng = rng::stream(self.config.seed, rng::StreamKind::Keys, trial);
        let sent = KeyPair::ALL.map(|p| {
            let b = self.books.get(p);
            Sent {
                key: rng.random_range(0..b.key_values()),
                rand: rng.random_range(0..b.rand_values()),
            }
        });
        self.run_trial_with(trial, sent)
    }

    /// Runs trial `trial` with explicitly chosen codewords; the channel noise
    /// still comes from the trial's stream.
    pub fn run_trial_with(&self, trial: u64, sent: [Sent; 4]) -> TrialOutcome {
        let n = self.config.n;
        let word = |p: KeyPair| {
            let b = self.books.get(p);
            let s = sent[p.index()];
            b.word(b.index(s.key, s.rand))
        };
        let (w12, w21, w13, w23) = (word(KeyPair::P12), word(KeyPair::P21), word(KeyPair::P13), word(KeyPair::P23));

        let mut rng = rng::stream(self.config.seed, rng::StreamKind::Channel, trial);
        let [_, a2, _, b2, b3] = self.shape;
        let mut t = Transcript {
            x1: Vec::with_capacity(n),
            x2: Vec::with_capacity(n),
            y1: Vec::with_capacity(n),
            y2: Vec::with_capacity(n),
            y3: Vec::with_capacity(n),
        };
        for i in 0..n {
            let x1 = self.x1_rows[w12[i] as usize * self.s[1] + w13[i] as usize].sample(&mut rng);
            let x2 = self.x2_rows[w21[i] as usize * self.s[3] + w23[i] as usize].sample(&mut rng);
            let y = self.out_rows[x1 * a2 + x2].sample(&mut rng);
            t.x1.push(x1 as u32);
            t.x2.push(x2 as u32);
            t.y1.push((y / (b2 * b3)) as u32);
            t.y2.push(((y / b3) % b2) as u32);
            t.y3.push((y % b3) as u32);
        }

        let b12 = self.books.get(KeyPair::P12);
        let b21 = self.books.get(KeyPair::P21);
        let b13 = self.books.get(KeyPair::P13);
        let b23 = self.books.get(KeyPair::P23);
        let u1 = decode_single(&self.t1, b21, &[&t.x1, &t.y1], self.eps);
        let u2 = decode_single(&self.t2, b12, &[&t.x2, &t.y2], self.eps);
        let u3 = decode_pair(&self.t3, b13, b23, &[&t.y3], self.eps);
        let u1_error = !matches!(u1, DecodeOutcome::Unique { index } if b21.key_of(index) == sent[1].key);
        let u2_error = !matches!(u2, DecodeOutcome::Unique { index } if b12.key_of(index) == sent[0].key);
        let u3_error = !matches!(u3, DecodeOutcome::Unique { index }
            if b13.key_of(index / b23.len()) == sent[2].key && b23.key_of(index % b23.len()) == sent[3].key);

        let (leakage, posterior_entropy) = match self.config.leakage {
            LeakageMode::Off => (None, None),
            LeakageMode::MapKey => {
                let (samples, h) = self.map_buckets(&sent, &t, [w12, w21, w13, w23]);
                (Some(samples), Some(h))
            }
            LeakageMode::Hash { buckets_log2 } => (
                Some([
                    (
                        (sent[0].key * b21.key_values() + sent[1].key) as u64,
                        hash_bucket(&[&t.y3, w13, w23], buckets_log2),
                    ),
                    (sent[2].key as u64, hash_bucket(&[&t.x2, &t.y2, w12, w21, w23], buckets_log2)),
                    (sent[3].key as u64, hash_bucket(&[&t.x1, &t.y1, w21, w12, w13], buckets_log2)),
                ]),
                None,
            ),
        };

        TrialOutcome {
            sent,
            u1,
            u2,
            u3,
            u1_error,
            u2_error,
            u3_error,
            transcript: t,
            leakage,
            posterior_entropy,
        }
    }

    /// MAP key estimates of each eavesdropper, who also knows its own codewords,
    /// and the entropies of the corresponding key posteriors.
    fn map_buckets(&self, sent: &[Sent; 4], t: &Transcript, w: [&[u32]; 4]) -> ([LeakageSample; 3], [f64; 3]) {
        let [w12, w21, w13, w23] = w;
        let [_, s13n, s21n, s23n] = self.s;
        let [a1, a2, b1, b2, b3] = self.shape;
        let b12 = self.books.get(KeyPair::P12);
        let b21 = self.books.get(KeyPair::P21);
        let b13 = self.books.get(KeyPair::P13);
        let b23 = self.books.get(KeyPair::P23);

        // (K12, K21) from Y3 with S13, S23 known
        let mut scores = vec![f64::NEG_INFINITY; b12.key_values() * b21.key_values()];
        let mut terms: Vec<Vec<f64>> = vec![Vec::new(); scores.len()];
        for i12 in 0..b12.len() {
            let c12 = b12.word(i12);
            for i21 in 0..b21.len() {
                let c21 = b21.word(i21);
                let mut ll = 0.0;
                for i in 0..self.config.n {
                    let cell = ((((c12[i] as usize * s13n + w13[i] as usize) * s21n + c21[i] as usize) * s23n
                        + w23[i] as usize)
                        * b3)
                        + t.y3[i] as usize;
                    ll += self.ll3[cell];
                    if ll == f64::NEG_INFINITY {
                        break;
                    }
                }
                terms[b12.key_of(i12) * b21.key_values() + b21.key_of(i21)].push(ll);
            }
        }
        for (score, ts) in scores.iter_mut().zip(&terms) {
            *score = log_sum_exp(ts);
        }
        let k12 = ((sent[0].key * b21.key_values() + sent[1].key) as u64, argmax(&scores) as u64);
        let h12 = posterior_entropy(&scores);

        // K13 from (X2, Y2) with S12 known
        let mut terms: Vec<Vec<f64>> = vec![Vec::new(); b13.key_values()];
        for i13 in 0..b13.len() {
            let c13 = b13.word(i13);
            let mut ll = 0.0;
            for i in 0..self.config.n {
                let cell = ((w12[i] as usize * s13n + c13[i] as usize) * a2 + t.x2[i] as usize) * b2 + t.y2[i] as usize;
                ll += self.ll2[cell];
            }
            terms[b13.key_of(i13)].push(ll);
        }
        let scores: Vec<f64> = terms.iter().map(|ts| log_sum_exp(ts)).collect();
        let k13 = (sent[2].key as u64, argmax(&scores) as u64);
        let h13 = posterior_entropy(&scores);

        // K23 from (X1, Y1) with S21 known
        let mut terms: Vec<Vec<f64>> = vec![Vec::new(); b23.key_values()];
        for i23 in 0..b23.len() {
            let c23 = b23.word(i23);
            let mut ll = 0.0;
            for i in 0..self.config.n {
                let cell = ((w21[i] as usize * s23n + c23[i] as usize) * a1 + t.x1[i] as usize) * b1 + t.y1[i] as usize;
                ll += self.ll1[cell];
            }
            terms[b23.key_of(i23)].push(ll);
        }
        let scores: Vec<f64> = terms.iter().map(|ts| log_sum_exp(ts)).collect();
        let k23 = (sent[3].key as u64, argmax(&scores) as u64);

        ([k12, k13, k23], [h12, h13, posterior_entropy(&scores)])
    }

    /// Runs every trial (in parallel) and aggregates the report.
    pub fn run(&self) -> Result<SimulationReport> {
        let start = Instant::now();
        let outcomes: Vec<TrialOutcome> = (0..self.config.trials as u64)
            .into_par_iter()
            .map(|t| self.run_trial(t))
            .collect();
        let trials = outcomes.len();
        let rate = |f: fn(&TrialOutcome) -> bool| outcomes.iter().filter(|o| f(o)).count() as f64 / trials as f64;
        let errors = ErrorRates {
            u1: rate(|o| o.u1_error),
            u2: rate(|o| o.u2_error),
            u3: rate(|o| o.u3_error),
        };

        let mut leak = KeyLeakage::<Option<LeakageEstimate>>::default();
        if self.config.leakage != LeakageMode::Off && trials >= 2 {
            let column = |k: usize| -> Vec<LeakageSample> {
                outcomes.iter().filter_map(|o| o.leakage.map(|l| l[k])).collect()
            };
            leak.k12 = Some(plug_in_leakage(&column(0))?);
            leak.k13 = Some(plug_in_leakage(&column(1))?);
            leak.k23 = Some(plug_in_leakage(&column(2))?);
        }

        let mut posterior = KeyLeakage::<Option<f64>>::default();
        if self.config.leakage == LeakageMode::MapKey {
            let key_bits = [
                ((self.books.get(KeyPair::P12).key_values() * self.books.get(KeyPair::P21).key_values()) as f64).log2(),
                (self.books.get(KeyPair::P13).key_values() as f64).log2(),
                (self.books.get(KeyPair::P23).key_values() as f64).log2(),
            ];
            let est = |k: usize| {
                let mean = outcomes.iter().filter_map(|o| o.posterior_entropy.map(|h| h[k])).sum::<f64>() / trials as f64;
                Some((key_bits[k] - mean).max(0.0))
            };
            posterior = KeyLeakage {
                k12: est(0),
                k13: est(1),
                k23: est(2),
            };
        }

        let codebook_sizes = self
            .books
            .iter()
            .map(|b| (format!("c{}", b.pair().label()), [b.key_values(), b.rand_values()]))
            .collect();

        Ok(SimulationReport {
            config_echo: serde_json::to_value(&self.config)?,
            errors,
            leakage_bits: leak.map(|e| e.map(|e| e.bits)),
            leakage_bias_bound: leak.map(|e| e.map(|e| e.bias_bound)),
            leakage_degenerate: leak.map(|e| e.is_some_and(|e| e.degenerate)),
            leakage_posterior_bits: posterior,
            epsilon_typ: self.eps,
            codebook_sizes,
            trials,
            seed: self.config.seed,
            runtime_ms: start.elapsed().as_millis() as u64,
        })
    }
}

/// Entropy in bits of the distribution proportional to `exp(scores)`.
fn posterior_entropy(scores: &[f64]) -> f64 {
    let z = log_sum_exp(scores);
    if z == f64::NEG_INFINITY {
        return 0.0;
    }
    scores
        .iter()
        .map(|&s| {
            let p = (s - z).exp();
            if p > 0.0 {
                -p * p.log2()
            } else {
                0.0
            }
        })
        .sum()
}

fn log_sum_exp(xs: &[f64]) -> f64 {
    let m = xs.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    if m == f64::NEG_INFINITY {
        return m;
    }
    m + xs.iter().map(|x| (x - m).exp()).sum::<f64>().ln()
}

/// First index of the maximum; 0 when every score is -inf.
fn argmax(xs: &[f64]) -> usize {
    let mut best = 0;
    for (i, &x) in xs.iter().enumerate() {
        if x > xs[best] {
            best = i;
        }
    }
    best
}

/// Builds the simulator for `config` and runs trial `trial`.
pub fn run_trial(config: &SimConfig, trial: u64) -> Result<TrialOutcome> {
    Ok(Simulator::new(config.clone())?.run_trial(trial))
}

/// Runs the whole simulation of `config`.
pub fn simulate(config: &SimConfig) -> Result<SimulationReport> {
    Simulator::new(config.clone())?.run()
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ErrorRates {
    pub u1: f64,
    pub u2: f64,
    pub u3: f64,
}

/// One value per leakage target: `(K12, K21)`, `K13`, `K23`.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct KeyLeakage<T> {
    pub k12: T,
    pub k13: T,
    pub k23: T,
}

impl<T: Copy> KeyLeakage<T> {
    pub fn map<U>(self, f: impl Fn(T) -> U) -> KeyLeakage<U> {
        KeyLeakage {
            k12: f(self.k12),
            k13: f(self.k13),
            k23: f(self.k23),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SimulationReport {
    pub config_echo: serde_json::Value,
    pub errors: ErrorRates,
    /// `null` when leakage estimation is off or fewer than two trials ran.
    pub leakage_bits: KeyLeakage<Option<f64>>,
    pub leakage_bias_bound: KeyLeakage<Option<f64>>,
    pub leakage_degenerate: KeyLeakage<bool>,
    /// `log2 |K|` minus the mean entropy of the eavesdropper's exact key
    /// posterior; an unbiased estimate of the leakage for the drawn codebooks.
    /// Present in MAP mode only.
    pub leakage_posterior_bits: KeyLeakage<Option<f64>>,
    pub epsilon_typ: f64,
    /// `[key values, randomization values]` per codebook.
    pub codebook_sizes: BTreeMap<String, [usize; 2]>,
    pub trials: usize,
    pub seed: u64,
    pub runtime_ms: u64,
}

#[cfg(test)]
mod tests {
    use super::*;

    fn example1_config(f: f64, trials: usize) -> SimConfig {
        let ch = Gdmmac::erasure(0.3, 0.3, 0.5, 0.1).unwrap();
        let mut cfg = SimConfig::new(ch, AuxDesign::example1(), 8, PairRates::new(0.2, 0.0, 0.0, 0.2).scaled(f), trials, 11);
        cfg.randomization_rates = PairRates::new(0.5, 0.0, 0.0, 0.7).scaled(f);
        cfg
    }

    #[test]
    fn codebook_sizes_follow_rates() {
        let ch = Gdmmac::erasure(0.3, 0.3, 0.5, 0.1).unwrap();
        let mut cfg = SimConfig::new(ch, AuxDesign::example1(), 4, PairRates::new(0.25, 0.0, 0.0, 0.0), 1, 3);
        cfg.randomization_rates.r12 = 0.25;
        let books = generate_codebooks(&cfg).unwrap();
        let c12 = books.get(KeyPair::P12);
        assert_eq!((c12.key_values(), c12.rand_values(), c12.len()), (2, 2, 4));
        assert_eq!(c12.word(0).len(), 4);
        for pair in [KeyPair::P21, KeyPair::P13, KeyPair::P23] {
            assert_eq!(books.get(pair).len(), 1);
        }
        assert_eq!(books, generate_codebooks(&cfg).unwrap());
    }

    #[test]
    fn invalid_configs() {
        let mut cfg = example1_config(0.5, 0);
        assert!(matches!(simulate(&cfg), Err(Error::Config(_))));
        cfg.trials = 1;
        cfg.n = 0;
        assert!(matches!(simulate(&cfg), Err(Error::Config(_))));
        cfg.n = 8;
        cfg.key_rates.r12 = -0.1;
        assert!(matches!(simulate(&cfg), Err(Error::Config(_))));
        let mut cfg = example1_config(0.5, 10);
        cfg.budget = 100;
        assert!(matches!(simulate(&cfg), Err(Error::BudgetExceeded { .. })));
        let mut cfg = example1_config(0.5, 10);
        cfg.design = AuxDesign::example1().with_trivial_secondary(&cfg.channel).unwrap();
        assert!(matches!(simulate(&cfg), Err(Error::Config(_))));
    }

    #[test]
    fn report_is_deterministic() {
        let cfg = example1_config(0.5, 40);
        let mut a = simulate(&cfg).unwrap();
        let mut b = simulate(&cfg).unwrap();
        a.runtime_ms = 0;
        b.runtime_ms = 0;
        assert_eq!(a, b);
        let pool = rayon::ThreadPoolBuilder::new().num_threads(1).build().unwrap();
        let mut c = pool.install(|| simulate(&cfg)).unwrap();
        c.runtime_ms = 0;
        assert_eq!(a, c);
    }

    #[test]
    fn zero_slack_rejects_noisy_types() {
        let mut cfg = example1_config(0.5, 50);
        cfg.epsilon_typ = Some(0.0);
        let report = simulate(&cfg).unwrap();
        assert!(report.errors.u2 > 0.9 && report.errors.u3 > 0.9, "{:?}", report.errors);
    }

    #[test]
    fn noiseless_copy_decodes_exhaustively() {
        let ch = Gdmmac::erasure(0.0, 0.0, 0.0, 0.0).unwrap();
        let mut cfg = SimConfig::new(ch, AuxDesign::example1(), 4, PairRates::new(0.25, 0.0, 0.0, 0.25), 1, 0);
        cfg.randomization_rates = PairRates::new(0.25, 0.0, 0.0, 0.25);
        cfg.epsilon_typ = Some(1.0);
        // find a seed whose codebooks hold distinct codewords
        let sim = (0..64u64)
            .map(|seed| {
                cfg.seed = seed;
                Simulator::new(cfg.clone()).unwrap()
            })
            .find(|s| {
                [KeyPair::P12, KeyPair::P23].iter().all(|&p| {
                    let b = s.codebooks().get(p);
                    (0..b.len()).all(|i| (0..i).all(|j| b.word(i) != b.word(j)))
                })
            })
            .expect("some seed gives distinct codewords");
        for k12 in 0..2 {
            for r12 in 0..2 {
                for k23 in 0..2 {
                    for r23 in 0..2 {
                        let sent = [
                            Sent { key: k12, rand: r12 },
                            Sent::default(),
                            Sent::default(),
                            Sent { key: k23, rand: r23 },
                        ];
                        let o = sim.run_trial_with(0, sent);
                        assert!(!o.u1_error && !o.u2_error && !o.u3_error, "{o:?}");
                        let b12 = sim.codebooks().get(KeyPair::P12);
                        assert_eq!(o.u2, DecodeOutcome::Unique { index: b12.index(k12, r12) });
                    }
                }
            }
        }
    }

    #[test]
    fn minimal_config_report() {
        let mut cfg = example1_config(0.5, 1);
        cfg.n = 2;
        let r = simulate(&cfg).unwrap();
        assert_eq!(r.trials, 1);
        assert_eq!(r.leakage_bits.k12, None);
        for e in [r.errors.u1, r.errors.u2, r.errors.u3] {
            assert!((0.0..=1.0).contains(&e));
        }
    }

    #[test]
    fn config_json_round_trip() {
        let text = r#"{
            "channel": {"family": "erasure", "params": {"p12": 0.3, "p21": 0.3, "p13": 0.5, "p23": 0.1}},
            "design": {"family": "example1"},
            "n": 8,
            "key_rates": {"r12": 0.1, "r23": 0.1},
            "trials": 5,
            "seed": 4,
            "leakage": {"mode": "hash", "buckets_log2": 12}
        }"#;
        let cfg: SimConfig = serde_json::from_str(text).unwrap();
        assert_eq!(cfg.design, AuxDesign::example1());
        assert_eq!(cfg.budget, DEFAULT_BUDGET);
        let back: SimConfig = serde_json::from_str(&serde_json::to_string(&cfg).unwrap()).unwrap();
        assert_eq!(back, cfg);
        let err = serde_json::from_str::<SimConfig>(r#"{"design": {"family": "example1"}, "n": 2, "key_rates": {}, "trials": 1}"#)
            .unwrap_err();
        assert!(err.to_string().contains("channel"), "{err}");
        simulate(&cfg).unwrap();
    }
}
