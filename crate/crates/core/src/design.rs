//! Auxiliary-variable designs and the joint distributions they induce.
//!
//! The primary layer holds four mutually independent auxiliaries
//! `S12, S13, S21, S23` and the input kernels `P(x1|s12,s13)`, `P(x2|s21,s23)`.
//! The optional secondary layer adds `T12, T13, T21, T23`, each drawn from a
//! kernel of its user's input, output and matching primary auxiliary.

use serde::{Deserialize, Serialize};

use crate::channel::{names, Gdmmac};
use crate::error::{check_probability, Error, Result};
use crate::prob::{flat_index, tabulate, Alphabet, JointPmf, NORMALIZATION_TOL};

/// A standalone distribution over one finite alphabet.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "MarginalRaw")]
pub struct Marginal {
    alphabet: Alphabet,
    probs: Vec<f64>,
}

#[derive(Deserialize)]
struct MarginalRaw {
    alphabet: Alphabet,
    probs: Vec<f64>,
}

impl TryFrom<MarginalRaw> for Marginal {
    type Error = Error;
    fn try_from(r: MarginalRaw) -> Result<Self> {
        Marginal::new(r.alphabet, r.probs)
    }
}

impl Marginal {
    pub fn new(alphabet: Alphabet, probs: Vec<f64>) -> Result<Self> {
        if probs.len() != alphabet.size() {
            return Err(Error::DimensionMismatch(format!(
                "{} probabilities for an alphabet of size {}",
                probs.len(),
                alphabet.size()
            )));
        }
        check_slice(&probs, "marginal")?;
        Ok(Self { alphabet, probs })
    }

    /// The absent auxiliary: one symbol with probability one.
    pub fn singleton() -> Self {
        Self {
            alphabet: Alphabet::singleton(),
            probs: vec![1.0],
        }
    }

    pub fn uniform(alphabet: Alphabet) -> Self {
        let n = alphabet.size();
        Self {
            alphabet,
            probs: vec![1.0 / n as f64; n],
        }
    }

    /// Bernoulli(`p`) over `{0, 1}`.
    pub fn bernoulli(p: f64) -> Result<Self> {
        let p = check_probability("Bernoulli parameter", p, 0.0)?;
        Self::new(Alphabet::binary(), vec![1.0 - p, p])
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn probs(&self) -> &[f64] {
        &self.probs
    }

    pub fn size(&self) -> usize {
        self.probs.len()
    }
}

/// A conditional distribution `P(out | cond_0, ..., cond_k)`, stored `[cond...][out]`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "KernelRaw")]
pub struct Kernel {
    cond_sizes: Vec<usize>,
    output: Alphabet,
    table: Vec<f64>,
}

#[derive(Deserialize)]
struct KernelRaw {
    cond_sizes: Vec<usize>,
    output: Alphabet,
    table: Vec<f64>,
}

impl TryFrom<KernelRaw> for Kernel {
    type Error = Error;
    fn try_from(r: KernelRaw) -> Result<Self> {
        Kernel::new(r.cond_sizes, r.output, r.table)
    }
}

impl Kernel {
    pub fn new(cond_sizes: Vec<usize>, output: Alphabet, table: Vec<f64>) -> Result<Self> {
        let rows: usize = cond_sizes.iter().product();
        if table.len() != rows * output.size() {
            return Err(Error::DimensionMismatch(format!(
                "kernel table has {} entries, expected {}",
                table.len(),
                rows * output.size()
            )));
        }
        for row in table.chunks(output.size()) {
            check_slice(row, "kernel row")?;
        }
        Ok(Self {
            cond_sizes,
            output,
            table,
        })
    }

    /// Builds the table from `f(conditioning indices, output index)`.
    pub fn from_fn(
        cond_sizes: Vec<usize>,
        output: Alphabet,
        f: impl Fn(&[usize], usize) -> f64,
    ) -> Result<Self> {
        let mut shape = cond_sizes.clone();
        shape.push(output.size());
        let table = tabulate(&shape, |i| f(&i[..i.len() - 1], i[i.len() - 1]));
        Self::new(cond_sizes, output, table)
    }

    /// A deterministic map `out = f(cond)`.
    pub fn deterministic(
        cond_sizes: Vec<usize>,
        output: Alphabet,
        f: impl Fn(&[usize]) -> usize,
    ) -> Result<Self> {
        Self::from_fn(cond_sizes, output, |c, o| if f(c) == o { 1.0 } else { 0.0 })
    }

    /// A kernel whose output ignores its conditioning and follows `m`.
    pub fn constant(cond_sizes: Vec<usize>, m: &Marginal) -> Result<Self> {
        Self::from_fn(cond_sizes, m.alphabet.clone(), |_, o| m.probs[o])
    }

    pub fn cond_sizes(&self) -> &[usize] {
        &self.cond_sizes
    }

    pub fn output(&self) -> &Alphabet {
        &self.output
    }

    pub fn prob(&self, cond: &[usize], out: usize) -> f64 {
        let row = flat_index(&self.cond_sizes, cond);
        self.table[row * self.output.size() + out]
    }

    /// The output distribution for one conditioning tuple.
    pub fn row(&self, cond: &[usize]) -> &[f64] {
        let row = flat_index(&self.cond_sizes, cond);
        let k = self.output.size();
        &self.table[row * k..(row + 1) * k]
    }

    fn expect_shape(&self, what: &str, cond: &[usize], out: usize) -> Result<()> {
        if self.cond_sizes != cond || self.output.size() != out {
            return Err(Error::DimensionMismatch(format!(
                "{what}: kernel shape {:?} -> {} does not match expected {:?} -> {}",
                self.cond_sizes,
                self.output.size(),
                cond,
                out
            )));
        }
        Ok(())
    }
}

fn check_slice(p: &[f64], what: &str) -> Result<()> {
    if let Some(bad) = p.iter().find(|v| !v.is_finite() || **v < 0.0) {
        return Err(Error::Distribution(format!("{what} has invalid entry {bad}")));
    }
    let total: f64 = p.iter().sum();
    if (total - 1.0).abs() > NORMALIZATION_TOL {
        return Err(Error::Distribution(format!("{what} sums to {total}")));
    }
    Ok(())
}

/// Secondary-layer kernels: `P(t12|x1,y1,s12)`, `P(t13|x1,y1,s13)`,
/// `P(t21|x2,y2,s21)`, `P(t23|x2,y2,s23)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SecondaryLayer {
    pub t12: Kernel,
    pub t13: Kernel,
    pub t21: Kernel,
    pub t23: Kernel,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AuxDesign {
    pub s12: Marginal,
    pub s13: Marginal,
    pub s21: Marginal,
    pub s23: Marginal,
    /// `P(x1 | s12, s13)`.
    pub x1: Kernel,
    /// `P(x2 | s21, s23)`.
    pub x2: Kernel,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub secondary: Option<SecondaryLayer>,
}

impl AuxDesign {
    pub fn has_secondary(&self) -> bool {
        self.secondary.is_some()
    }

    /// Drops the secondary layer.
    pub fn primary_only(&self) -> AuxDesign {
        AuxDesign {
            secondary: None,
            ..self.clone()
        }
    }

    /// A secondary layer in which every `T` is a constant.
    pub fn with_trivial_secondary(&self, channel: &Gdmmac) -> Result<AuxDesign> {
        let [a1, a2, b1, b2, _] = channel.shape();
        let one = Marginal::singleton();
        Ok(AuxDesign {
            secondary: Some(SecondaryLayer {
                t12: Kernel::constant(vec![a1, b1, self.s12.size()], &one)?,
                t13: Kernel::constant(vec![a1, b1, self.s13.size()], &one)?,
                t21: Kernel::constant(vec![a2, b2, self.s21.size()], &one)?,
                t23: Kernel::constant(vec![a2, b2, self.s23.size()], &one)?,
            }),
            ..self.clone()
        })
    }

    /// Checks every kernel against the auxiliary and channel alphabets.
    pub fn validate_for(&self, channel: &Gdmmac) -> Result<()> {
        let [a1, a2, b1, b2, _] = channel.shape();
        self.x1
            .expect_shape("P(x1|s12,s13)", &[self.s12.size(), self.s13.size()], a1)?;
        self.x2
            .expect_shape("P(x2|s21,s23)", &[self.s21.size(), self.s23.size()], a2)?;
        if let Some(t) = &self.secondary {
            let out = |k: &Kernel| k.output.size();
            t.t12
                .expect_shape("P(t12|x1,y1,s12)", &[a1, b1, self.s12.size()], out(&t.t12))?;
            t.t13
                .expect_shape("P(t13|x1,y1,s13)", &[a1, b1, self.s13.size()], out(&t.t13))?;
            t.t21
                .expect_shape("P(t21|x2,y2,s21)", &[a2, b2, self.s21.size()], out(&t.t21))?;
            t.t23
                .expect_shape("P(t23|x2,y2,s23)", &[a2, b2, self.s23.size()], out(&t.t23))?;
        }
        Ok(())
    }

    /// Erasure-example design: `S12 = X1` and `S23 = X2`, both uniform over
    /// `{-1, +1}`, with `S13` and `S21` absent.
    pub fn example1() -> AuxDesign {
        let pm = Alphabet::new(["-1", "+1"]).expect("static alphabet");
        AuxDesign {
            s12: Marginal::uniform(pm.clone()),
            s13: Marginal::singleton(),
            s21: Marginal::singleton(),
            s23: Marginal::uniform(pm.clone()),
            x1: Kernel::deterministic(vec![2, 1], pm.clone(), |c| c[0]).expect("static kernel"),
            x2: Kernel::deterministic(vec![1, 2], pm, |c| c[1]).expect("static kernel"),
            secondary: None,
        }
    }

    /// Binary-sum design: `S12 = X1 ~ Bernoulli(alpha)`, `X2` uniform and
    /// `S23` its output through a BSC(`beta`); `S13`, `S21` absent.
    ///
    /// `S23 -> X2` is stored in the auxiliary-first direction: `S23` uniform and
    /// `P(x2|s23)` the same BSC, which yields the identical joint.
    pub fn example2(alpha: f64, beta: f64) -> Result<AuxDesign> {
        let beta = check_probability("beta", beta, 0.0)?;
        let bit = Alphabet::binary();
        Ok(AuxDesign {
            s12: Marginal::bernoulli(alpha)?,
            s13: Marginal::singleton(),
            s21: Marginal::singleton(),
            s23: Marginal::uniform(bit.clone()),
            x1: Kernel::deterministic(vec![2, 1], bit.clone(), |c| c[0])?,
            x2: Kernel::from_fn(vec![1, 2], bit, |c, x| bsc(c[1], x, beta))?,
            secondary: None,
        })
    }

    /// Correlated-noise design with secondary keys:
    /// `X1 = S12 ⊕ S13` with `S12 ~ Bernoulli(alpha)`, `S13 ~ Bernoulli(alpha_p)`;
    /// `S23`/`X2` as in [`AuxDesign::example2`]; `T13 = Y1 ⊕ Bernoulli(alpha_pp)`,
    /// `T23 = Y2 ⊕ Bernoulli(beta_p)`; `S21`, `T12`, `T21` absent.
    pub fn example3(alpha: f64, alpha_p: f64, alpha_pp: f64, beta: f64, beta_p: f64) -> Result<AuxDesign> {
        let beta = check_probability("beta", beta, 0.0)?;
        let alpha_pp = check_probability("alpha''", alpha_pp, 0.0)?;
        let beta_p = check_probability("beta'", beta_p, 0.0)?;
        let bit = Alphabet::binary();
        let one = Marginal::singleton();
        Ok(AuxDesign {
            s12: Marginal::bernoulli(alpha)?,
            s13: Marginal::bernoulli(alpha_p)?,
            s21: Marginal::singleton(),
            s23: Marginal::uniform(bit.clone()),
            x1: Kernel::deterministic(vec![2, 2], bit.clone(), |c| c[0] ^ c[1])?,
            x2: Kernel::from_fn(vec![1, 2], bit.clone(), |c, x| bsc(c[1], x, beta))?,
            secondary: Some(SecondaryLayer {
                t12: Kernel::constant(vec![2, 2, 2], &one)?,
                t13: Kernel::from_fn(vec![2, 2, 2], bit.clone(), |c, t| bsc(c[1], t, alpha_pp))?,
                t21: Kernel::constant(vec![2, 2, 1], &one)?,
                t23: Kernel::from_fn(vec![2, 2, 2], bit, |c, t| bsc(c[1], t, beta_p))?,
            }),
        })
    }
}

fn bsc(input: usize, output: usize, p: f64) -> f64 {
    if input == output {
        1.0 - p
    } else {
        p
    }
}

/// Builds the full joint over `S12, S13, S21, S23, X1, X2, Y1, Y2, Y3` (and
/// `T12, T13, T21, T23` when the design has a secondary layer) as the product
/// of the design's factors and the channel kernel.
pub fn induce_joint(channel: &Gdmmac, design: &AuxDesign) -> Result<JointPmf> {
    design.validate_for(channel)?;
    let mut vars = vec![
        (names::S12.to_string(), design.s12.alphabet.clone()),
        (names::S13.to_string(), design.s13.alphabet.clone()),
        (names::S21.to_string(), design.s21.alphabet.clone()),
        (names::S23.to_string(), design.s23.alphabet.clone()),
        (names::X1.to_string(), channel.x1().clone()),
        (names::X2.to_string(), channel.x2().clone()),
        (names::Y1.to_string(), channel.y1().clone()),
        (names::Y2.to_string(), channel.y2().clone()),
        (names::Y3.to_string(), channel.y3().clone()),
    ];
    if let Some(t) = &design.secondary {
        vars.push((names::T12.into(), t.t12.output.clone()));
        vars.push((names::T13.into(), t.t13.output.clone()));
        vars.push((names::T21.into(), t.t21.output.clone()));
        vars.push((names::T23.into(), t.t23.output.clone()));
    }
    JointPmf::from_fn(vars, |i| {
        let (s12, s13, s21, s23) = (i[0], i[1], i[2], i[3]);
        let (x1, x2, y1, y2, y3) = (i[4], i[5], i[6], i[7], i[8]);
        let mut p = design.s12.probs[s12]
            * design.s13.probs[s13]
            * design.s21.probs[s21]
            * design.s23.probs[s23];
        if p == 0.0 {
            return 0.0;
        }
        p *= design.x1.prob(&[s12, s13], x1) * design.x2.prob(&[s21, s23], x2);
        if p == 0.0 {
            return 0.0;
        }
        p *= channel.prob(x1, x2, y1, y2, y3);
        if let Some(t) = &design.secondary {
            if p == 0.0 {
                return 0.0;
            }
            p *= t.t12.prob(&[x1, y1, s12], i[9])
                * t.t13.prob(&[x1, y1, s13], i[10])
                * t.t21.prob(&[x2, y2, s21], i[11])
                * t.t23.prob(&[x2, y2, s23], i[12]);
        }
        p
    })
}

/// JSON description of a design: a named example family or an explicit design.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family", content = "params", rename_all = "snake_case")]
pub enum DesignSpec {
    Example1,
    Example2 {
        alpha: f64,
        beta: f64,
    },
    Example3 {
        alpha: f64,
        alpha_p: f64,
        alpha_pp: f64,
        beta: f64,
        beta_p: f64,
    },
    Custom(Box<AuxDesign>),
}

impl DesignSpec {
    pub fn build(&self) -> Result<AuxDesign> {
        match self {
            DesignSpec::Example1 => Ok(AuxDesign::example1()),
            DesignSpec::Example2 { alpha, beta } => AuxDesign::example2(*alpha, *beta),
            DesignSpec::Example3 {
                alpha,
                alpha_p,
                alpha_pp,
                beta,
                beta_p,
            } => AuxDesign::example3(*alpha, *alpha_p, *alpha_pp, *beta, *beta_p),
            DesignSpec::Custom(d) => Ok((**d).clone()),
        }
    }
}
