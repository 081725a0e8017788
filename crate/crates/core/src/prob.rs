//! Exact probability calculus over finite alphabets.
//!
//! A [`JointPmf`] is a dense, row-major table over an ordered list of named
//! variables (the last variable varies fastest). Every information quantity is
//! computed in bits from exact marginals of that table, with the usual
//! convention `0 log 0 = 0`.
//!
//! ```
//! use keyregion::prob::{Alphabet, JointPmf};
//!
//! let bit = Alphabet::binary();
//! // X uniform, Y = X through a binary symmetric channel with crossover 0.11
//! let p = 0.11;
//! let pmf = JointPmf::from_fn(vec![("X", bit.clone()), ("Y", bit)], |i| {
//!     0.5 * if i[0] == i[1] { 1.0 - p } else { p }
//! })
//! .unwrap();
//! let mi = pmf.mutual_information(&["X"], &["Y"]).unwrap();
//! assert!((mi - 0.50008).abs() < 1e-4);
//! ```

use std::cell::RefCell;
use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::error::{check_probability, Error, Result};

/// Tolerance on the total mass of a distribution or kernel slice.
pub const NORMALIZATION_TOL: f64 = 1e-9;

/// Negative mutual information above this magnitude indicates a numerical defect.
pub const MI_CLAMP_TOL: f64 = 1e-9;

const DOMAIN_TOL: f64 = 1e-12;

/// An ordered set of distinct symbol labels.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "Vec<String>", into = "Vec<String>")]
pub struct Alphabet {
    symbols: Vec<String>,
}

impl Alphabet {
    pub fn new<S: Into<String>>(symbols: impl IntoIterator<Item = S>) -> Result<Self> {
        let symbols: Vec<String> = symbols.into_iter().map(Into::into).collect();
        if symbols.is_empty() {
            return Err(Error::Alphabet("alphabet must contain at least one symbol".into()));
        }
        for (i, s) in symbols.iter().enumerate() {
            if symbols[..i].contains(s) {
                return Err(Error::Alphabet(format!("duplicate symbol `{s}`")));
            }
        }
        Ok(Self { symbols })
    }

    /// `{0, 1}`.
    pub fn binary() -> Self {
        Self::range(2)
    }

    /// `{0, 1, ..., size-1}`; `size` must be positive.
    pub fn range(size: usize) -> Self {
        assert!(size > 0, "alphabet size must be positive");
        Self {
            symbols: (0..size).map(|i| i.to_string()).collect(),
        }
    }

    /// A one-symbol alphabet, used for absent auxiliary variables.
    pub fn singleton() -> Self {
        Self::range(1)
    }

    pub fn size(&self) -> usize {
        self.symbols.len()
    }

    pub fn symbols(&self) -> &[String] {
        &self.symbols
    }

    pub fn index_of(&self, symbol: &str) -> Option<usize> {
        self.symbols.iter().position(|s| s == symbol)
    }
}

impl TryFrom<Vec<String>> for Alphabet {
    type Error = Error;
    fn try_from(v: Vec<String>) -> Result<Self> {
        Self::new(v)
    }
}

impl From<Alphabet> for Vec<String> {
    fn from(a: Alphabet) -> Self {
        a.symbols
    }
}

/// A named random variable.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Variable {
    pub name: String,
    pub alphabet: Alphabet,
}

/// Dense joint probability mass function over named finite variables.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "JointPmfJson", into = "JointPmfJson")]
pub struct JointPmf {
    vars: Vec<Variable>,
    shape: Vec<usize>,
    table: Vec<f64>,
}

impl JointPmf {
    /// Validates shape, nonnegativity and total mass (within 1e-9), then
    /// renormalizes the table exactly.
    pub fn new<S: Into<String>>(vars: Vec<(S, Alphabet)>, table: Vec<f64>) -> Result<Self> {
        let vars: Vec<Variable> = vars
            .into_iter()
            .map(|(n, a)| Variable {
                name: n.into(),
                alphabet: a,
            })
            .collect();
        if vars.len() > 64 {
            return Err(Error::Distribution("at most 64 variables are supported".into()));
        }
        for (i, v) in vars.iter().enumerate() {
            if vars[..i].iter().any(|w| w.name == v.name) {
                return Err(Error::Distribution(format!("duplicate variable `{}`", v.name)));
            }
        }
        let shape: Vec<usize> = vars.iter().map(|v| v.alphabet.size()).collect();
        let expected: usize = shape.iter().product();
        if table.len() != expected {
            return Err(Error::DimensionMismatch(format!(
                "table has {} entries, alphabets require {expected}",
                table.len()
            )));
        }
        let mut total = 0.0;
        for &p in &table {
            if !p.is_finite() || p < 0.0 {
                return Err(Error::Distribution(format!("invalid probability {p}")));
            }
            total += p;
        }
        if (total - 1.0).abs() > NORMALIZATION_TOL {
            return Err(Error::Distribution(format!("entries sum to {total}, not 1")));
        }
        let table = table.into_iter().map(|p| p / total).collect();
        Ok(Self { vars, shape, table })
    }

    /// Builds a PMF by evaluating `f` on every multi-index in row-major order.
    pub fn from_fn<S: Into<String>>(
        vars: Vec<(S, Alphabet)>,
        f: impl FnMut(&[usize]) -> f64,
    ) -> Result<Self> {
        let shape: Vec<usize> = vars.iter().map(|(_, a)| a.size()).collect();
        let table = tabulate(&shape, f);
        Self::new(vars, table)
    }

    pub fn variables(&self) -> &[Variable] {
        &self.vars
    }

    pub fn names(&self) -> impl Iterator<Item = &str> {
        self.vars.iter().map(|v| v.name.as_str())
    }

    pub fn shape(&self) -> &[usize] {
        &self.shape
    }

    pub fn table(&self) -> &[f64] {
        &self.table
    }

    pub fn contains(&self, name: &str) -> bool {
        self.vars.iter().any(|v| v.name == name)
    }

    pub fn position(&self, name: &str) -> Result<usize> {
        self.vars
            .iter()
            .position(|v| v.name == name)
            .ok_or_else(|| Error::UnknownVariable(name.to_string()))
    }

    /// Probability of a full multi-index.
    pub fn prob(&self, index: &[usize]) -> f64 {
        self.table[flat_index(&self.shape, index)]
    }

    pub(crate) fn mask_of(&self, names: &[&str]) -> Result<u64> {
        let mut mask = 0u64;
        for n in names {
            mask |= 1 << self.position(n)?;
        }
        Ok(mask)
    }

    /// Marginal table over the variables in `mask`, kept in their original order.
    pub(crate) fn marginal_table(&self, mask: u64) -> Vec<f64> {
        let n = self.shape.len();
        let mut out_stride = vec![0usize; n];
        let mut size = 1usize;
        for i in (0..n).rev() {
            if mask & (1 << i) != 0 {
                out_stride[i] = size;
                size *= self.shape[i];
            }
        }
        let mut out = vec![0.0; size];
        if mask == 0 {
            out[0] = self.table.iter().sum();
            return out;
        }
        let mut digits = vec![0usize; n];
        let mut oidx = 0usize;
        for &p in &self.table {
            out[oidx] += p;
            let mut k = n;
            while k > 0 {
                k -= 1;
                digits[k] += 1;
                oidx += out_stride[k];
                if digits[k] < self.shape[k] {
                    break;
                }
                oidx -= out_stride[k] * self.shape[k];
                digits[k] = 0;
            }
        }
        out
    }

    /// Sums out every variable not named in `keep`; kept variables retain their order.
    pub fn marginalize(&self, keep: &[&str]) -> Result<JointPmf> {
        let mask = self.mask_of(keep)?;
        if mask == 0 {
            return Err(Error::EmptyVariableSet);
        }
        let table = self.marginal_table(mask);
        let total: f64 = table.iter().sum();
        let vars: Vec<Variable> = self
            .vars
            .iter()
            .enumerate()
            .filter(|(i, _)| mask & (1 << i) != 0)
            .map(|(_, v)| v.clone())
            .collect();
        let shape = vars.iter().map(|v| v.alphabet.size()).collect();
        Ok(JointPmf {
            vars,
            shape,
            table: table.into_iter().map(|p| p / total).collect(),
        })
    }

    /// Conditions on `name = symbol index`, returning the PMF of the remaining variables.
    pub fn condition(&self, name: &str, value: usize) -> Result<JointPmf> {
        let pos = self.position(name)?;
        if value >= self.shape[pos] {
            return Err(Error::DimensionMismatch(format!(
                "value {value} out of range for `{name}`"
            )));
        }
        if self.vars.len() == 1 {
            return Err(Error::EmptyVariableSet);
        }
        let inner: usize = self.shape[pos + 1..].iter().product();
        let outer: usize = self.shape[..pos].iter().product();
        let mut table = Vec::with_capacity(outer * inner);
        for o in 0..outer {
            let base = (o * self.shape[pos] + value) * inner;
            table.extend_from_slice(&self.table[base..base + inner]);
        }
        let total: f64 = table.iter().sum();
        if total <= 0.0 {
            return Err(Error::Distribution(format!(
                "conditioning event `{name}` = {value} has zero probability"
            )));
        }
        let mut vars = self.vars.clone();
        vars.remove(pos);
        let mut shape = self.shape.clone();
        shape.remove(pos);
        Ok(JointPmf {
            vars,
            shape,
            table: table.into_iter().map(|p| p / total).collect(),
        })
    }

    /// H(vars) in bits.
    pub fn entropy(&self, vars: &[&str]) -> Result<f64> {
        if vars.is_empty() {
            return Err(Error::EmptyVariableSet);
        }
        Ok(EntropyCache::new(self).entropy_mask(self.mask_of(vars)?))
    }

    /// H(a | given) in bits.
    pub fn conditional_entropy(&self, a: &[&str], given: &[&str]) -> Result<f64> {
        EntropyCache::new(self).conditional_entropy(a, given)
    }

    /// I(a; b) in bits.
    pub fn mutual_information(&self, a: &[&str], b: &[&str]) -> Result<f64> {
        self.conditional_mutual_information(a, b, &[])
    }

    /// I(a; b | c) in bits, clamped at zero.
    pub fn conditional_mutual_information(&self, a: &[&str], b: &[&str], c: &[&str]) -> Result<f64> {
        EntropyCache::new(self).cmi(a, b, c)
    }

    /// Checks the Markov chain `chain[0] - chain[1] - ... - chain[k]`.
    ///
    /// For every interior link the past and the future must be conditionally
    /// independent given the link; the largest of these conditional mutual
    /// informations is reported as the violation.
    pub fn is_markov_chain(&self, chain: &[&[&str]], tol: f64) -> Result<MarkovCheck> {
        if chain.len() < 3 {
            return Err(Error::MalformedChain(format!(
                "chain needs at least 3 links, got {}",
                chain.len()
            )));
        }
        let mut masks = Vec::with_capacity(chain.len());
        let mut seen = 0u64;
        for (i, link) in chain.iter().enumerate() {
            if link.is_empty() {
                return Err(Error::MalformedChain(format!("link {i} is empty")));
            }
            let m = self.mask_of(link)?;
            if m & seen != 0 {
                return Err(Error::MalformedChain(format!("link {i} overlaps an earlier link")));
            }
            if m.count_ones() as usize != link.len() {
                return Err(Error::MalformedChain(format!("link {i} repeats a variable")));
            }
            seen |= m;
            masks.push(m);
        }
        let cache = EntropyCache::new(self);
        let mut max_violation: f64 = 0.0;
        for k in 1..chain.len() - 1 {
            let past = masks[..k].iter().fold(0, |acc, m| acc | m);
            let future = masks[k + 1..].iter().fold(0, |acc, m| acc | m);
            max_violation = max_violation.max(cache.cmi_mask(past, future, masks[k]));
        }
        Ok(MarkovCheck {
            holds: max_violation <= tol,
            max_violation,
        })
    }
}

/// Outcome of [`JointPmf::is_markov_chain`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MarkovCheck {
    pub holds: bool,
    pub max_violation: f64,
}

/// Memoizes marginal entropies of a single PMF, keyed by variable subset.
///
/// Rate evaluators query dozens of overlapping subsets of the same joint; the
/// cache makes each distinct subset cost one pass over the table.
pub struct EntropyCache<'a> {
    pmf: &'a JointPmf,
    memo: RefCell<HashMap<u64, f64>>,
}

impl<'a> EntropyCache<'a> {
    pub fn new(pmf: &'a JointPmf) -> Self {
        Self {
            pmf,
            memo: RefCell::new(HashMap::new()),
        }
    }

    pub fn pmf(&self) -> &JointPmf {
        self.pmf
    }

    pub(crate) fn entropy_mask(&self, mask: u64) -> f64 {
        if mask == 0 {
            return 0.0;
        }
        if let Some(&h) = self.memo.borrow().get(&mask) {
            return h;
        }
        let h = table_entropy(&self.pmf.marginal_table(mask));
        self.memo.borrow_mut().insert(mask, h);
        h
    }

    pub(crate) fn cmi_mask(&self, a: u64, b: u64, c: u64) -> f64 {
        let raw = self.entropy_mask(a | c) + self.entropy_mask(b | c)
            - self.entropy_mask(a | b | c)
            - self.entropy_mask(c);
        debug_assert!(raw > -1e-6, "negative conditional mutual information {raw}");
        raw.max(0.0)
    }

    pub fn entropy(&self, vars: &[&str]) -> Result<f64> {
        if vars.is_empty() {
            return Err(Error::EmptyVariableSet);
        }
        Ok(self.entropy_mask(self.pmf.mask_of(vars)?))
    }

    pub fn conditional_entropy(&self, a: &[&str], given: &[&str]) -> Result<f64> {
        let ma = self.pmf.mask_of(a)?;
        let mg = self.pmf.mask_of(given)?;
        Ok((self.entropy_mask(ma | mg) - self.entropy_mask(mg)).max(0.0))
    }

    /// I(a; b | c); the three sets must be pairwise disjoint.
    pub fn cmi(&self, a: &[&str], b: &[&str], c: &[&str]) -> Result<f64> {
        let ma = self.pmf.mask_of(a)?;
        let mb = self.pmf.mask_of(b)?;
        let mc = self.pmf.mask_of(c)?;
        for (x, y) in [(ma, mb), (ma, mc), (mb, mc)] {
            let overlap = x & y;
            if overlap != 0 {
                let idx = overlap.trailing_zeros() as usize;
                return Err(Error::OverlappingSets(self.pmf.vars[idx].name.clone()));
            }
        }
        Ok(self.cmi_mask(ma, mb, mc))
    }

    /// I(a; b | c) without the clamp at zero.
    pub fn cmi_raw(&self, a: &[&str], b: &[&str], c: &[&str]) -> Result<f64> {
        let ma = self.pmf.mask_of(a)?;
        let mb = self.pmf.mask_of(b)?;
        let mc = self.pmf.mask_of(c)?;
        Ok(self.entropy_mask(ma | mc) + self.entropy_mask(mb | mc)
            - self.entropy_mask(ma | mb | mc)
            - self.entropy_mask(mc))
    }
}

/// Shannon entropy in bits of a (possibly unnormalized-by-rounding) table.
pub fn table_entropy(table: &[f64]) -> f64 {
    -table
        .iter()
        .filter(|&&p| p > 0.0)
        .map(|&p| p * p.log2())
        .sum::<f64>()
}

/// h(p) = -p log2 p - (1-p) log2 (1-p).
pub fn binary_entropy(p: f64) -> Result<f64> {
    let p = check_probability("binary entropy argument", p, DOMAIN_TOL)?;
    Ok(table_entropy(&[p, 1.0 - p]))
}

/// a * b = a(1-b) + b(1-a): crossover of two cascaded binary symmetric channels.
pub fn binary_convolution(a: f64, b: f64) -> Result<f64> {
    let a = check_probability("binary convolution argument", a, DOMAIN_TOL)?;
    let b = check_probability("binary convolution argument", b, DOMAIN_TOL)?;
    Ok((a * (1.0 - b) + b * (1.0 - a)).clamp(0.0, 1.0))
}

pub(crate) fn h2(p: f64) -> f64 {
    table_entropy(&[p, 1.0 - p])
}

pub(crate) fn conv(a: f64, b: f64) -> f64 {
    a * (1.0 - b) + b * (1.0 - a)
}

pub(crate) fn flat_index(shape: &[usize], index: &[usize]) -> usize {
    debug_assert_eq!(shape.len(), index.len());
    index
        .iter()
        .zip(shape)
        .fold(0, |acc, (&i, &s)| {
            debug_assert!(i < s);
            acc * s + i
        })
}

/// Evaluates `f` over every multi-index of `shape` in row-major order.
pub(crate) fn tabulate(shape: &[usize], mut f: impl FnMut(&[usize]) -> f64) -> Vec<f64> {
    let total: usize = shape.iter().product();
    let mut out = Vec::with_capacity(total);
    let mut idx = vec![0usize; shape.len()];
    for _ in 0..total {
        out.push(f(&idx));
        for k in (0..shape.len()).rev() {
            idx[k] += 1;
            if idx[k] < shape[k] {
                break;
            }
            idx[k] = 0;
        }
    }
    out
}

#[derive(Serialize, Deserialize)]
struct VariableJson {
    name: String,
    symbols: Vec<serde_json::Value>,
}

#[derive(Serialize, Deserialize)]
struct JointPmfJson {
    variables: Vec<VariableJson>,
    table: Vec<f64>,
}

pub(crate) fn symbol_label(v: &serde_json::Value) -> String {
    match v {
        serde_json::Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

impl TryFrom<JointPmfJson> for JointPmf {
    type Error = Error;
    fn try_from(j: JointPmfJson) -> Result<Self> {
        let vars = j
            .variables
            .into_iter()
            .map(|v| Ok((v.name, Alphabet::new(v.symbols.iter().map(symbol_label))?)))
            .collect::<Result<Vec<_>>>()?;
        JointPmf::new(vars, j.table)
    }
}

impl From<JointPmf> for JointPmfJson {
    fn from(p: JointPmf) -> Self {
        JointPmfJson {
            variables: p
                .vars
                .into_iter()
                .map(|v| VariableJson {
                    name: v.name,
                    symbols: v
                        .alphabet
                        .symbols
                        .into_iter()
                        .map(serde_json::Value::String)
                        .collect(),
                })
                .collect(),
            table: p.table,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn uniform_pair() -> JointPmf {
        JointPmf::new(
            vec![("X", Alphabet::binary()), ("Y", Alphabet::binary())],
            vec![0.25; 4],
        )
        .unwrap()
    }

    fn bsc_pair(p: f64) -> JointPmf {
        JointPmf::from_fn(
            vec![("X", Alphabet::binary()), ("Y", Alphabet::binary())],
            |i| 0.5 * if i[0] == i[1] { 1.0 - p } else { p },
        )
        .unwrap()
    }

    #[test]
    fn binary_entropy_values() {
        assert_eq!(binary_entropy(0.5).unwrap(), 1.0);
        assert_eq!(binary_entropy(0.0).unwrap(), 0.0);
        assert_eq!(binary_entropy(1.0).unwrap(), 0.0);
        let direct = -0.11 * 0.11f64.log2() - 0.89 * 0.89f64.log2();
        assert!((binary_entropy(0.11).unwrap() - direct).abs() < 1e-15);
        assert!((binary_entropy(0.11).unwrap() - 0.49991).abs() < 1e-5);
    }

    #[test]
    fn binary_entropy_domain() {
        assert!(binary_entropy(-1e-3).is_err());
        assert!(binary_entropy(1.001).is_err());
        assert!(binary_entropy(f64::NAN).is_err());
        // within tolerance is clamped
        assert_eq!(binary_entropy(1.0 + 1e-13).unwrap(), 0.0);
    }

    #[test]
    fn binary_convolution_values() {
        for x in [0.0, 0.1, 0.37, 1.0] {
            assert!((binary_convolution(0.5, x).unwrap() - 0.5).abs() < 1e-15);
        }
        assert_eq!(binary_convolution(0.0, 0.3).unwrap(), 0.3);
        assert!((binary_convolution(0.1, 0.2).unwrap() - 0.26).abs() < 1e-15);
        assert!(binary_convolution(0.1, 1.5).is_err());
    }

    #[test]
    fn alphabet_validation() {
        assert!(Alphabet::new(Vec::<String>::new()).is_err());
        assert!(Alphabet::new(["a", "b", "a"]).is_err());
        let a = Alphabet::new(["-1", "+1"]).unwrap();
        assert_eq!(a.size(), 2);
        assert_eq!(a.index_of("+1"), Some(1));
    }

    #[test]
    fn pmf_validation() {
        let b = Alphabet::binary();
        assert!(JointPmf::new(vec![("X", b.clone())], vec![0.5, 0.6]).is_err());
        assert!(JointPmf::new(vec![("X", b.clone())], vec![1.5, -0.5]).is_err());
        assert!(JointPmf::new(vec![("X", b.clone())], vec![1.0]).is_err());
        assert!(JointPmf::new(vec![("X", b.clone()), ("X", b)], vec![0.25; 4]).is_err());
    }

    #[test]
    fn marginalize_uniform_and_product() {
        let m = uniform_pair().marginalize(&["X"]).unwrap();
        assert_eq!(m.table(), &[0.5, 0.5]);

        let product = JointPmf::from_fn(
            vec![("A", Alphabet::range(3)), ("B", Alphabet::binary())],
            |i| [0.2, 0.3, 0.5][i[0]] * [0.9, 0.1][i[1]],
        )
        .unwrap();
        let a = product.marginalize(&["A"]).unwrap();
        for (got, want) in a.table().iter().zip([0.2, 0.3, 0.5]) {
            assert!((got - want).abs() < 1e-15);
        }
        assert!(product.marginalize(&["C"]).is_err());
    }

    #[test]
    fn marginalize_correlated_matches_brute_force() {
        // perfectly correlated pair with a skewed marginal
        let pmf = JointPmf::from_fn(
            vec![("X", Alphabet::range(3)), ("Y", Alphabet::range(3))],
            |i| if i[0] == i[1] { [0.1, 0.6, 0.3][i[0]] } else { 0.0 },
        )
        .unwrap();
        let y = pmf.marginalize(&["Y"]).unwrap();
        for j in 0..3 {
            let brute: f64 = (0..3).map(|i| pmf.prob(&[i, j])).sum();
            assert!((y.table()[j] - brute).abs() < 1e-15);
        }
    }

    #[test]
    fn marginalize_keeps_original_order() {
        let pmf = JointPmf::from_fn(
            vec![
                ("A", Alphabet::binary()),
                ("B", Alphabet::range(3)),
                ("C", Alphabet::binary()),
            ],
            |i| (1 + i[0] + 2 * i[1] + 5 * i[2]) as f64 / 72.0,
        )
        .unwrap();
        let m = pmf.marginalize(&["C", "A"]).unwrap();
        let names: Vec<_> = m.names().collect();
        assert_eq!(names, ["A", "C"]);
        for a in 0..2 {
            for c in 0..2 {
                let brute: f64 = (0..3).map(|b| pmf.prob(&[a, b, c])).sum();
                assert!((m.prob(&[a, c]) - brute).abs() < 1e-15);
            }
        }
    }

    #[test]
    fn entropy_basics() {
        assert_eq!(uniform_pair().entropy(&["X"]).unwrap(), 1.0);
        assert_eq!(uniform_pair().entropy(&["X", "Y"]).unwrap(), 2.0);
        let det = JointPmf::new(vec![("X", Alphabet::range(4))], vec![0.0, 1.0, 0.0, 0.0]).unwrap();
        assert_eq!(det.entropy(&["X"]).unwrap(), 0.0);
        let bern = JointPmf::new(vec![("X", Alphabet::binary())], vec![0.89, 0.11]).unwrap();
        assert!((bern.entropy(&["X"]).unwrap() - binary_entropy(0.11).unwrap()).abs() < 1e-15);
        assert!(matches!(bern.entropy(&[]), Err(Error::EmptyVariableSet)));
    }

    #[test]
    fn mutual_information_cases() {
        assert_eq!(uniform_pair().mutual_information(&["X"], &["Y"]).unwrap(), 0.0);
        let copy = JointPmf::new(
            vec![("A", Alphabet::binary()), ("B", Alphabet::binary())],
            vec![0.5, 0.0, 0.0, 0.5],
        )
        .unwrap();
        assert!((copy.mutual_information(&["A"], &["B"]).unwrap() - 1.0).abs() < 1e-15);
        let mi = bsc_pair(0.11).mutual_information(&["X"], &["Y"]).unwrap();
        assert!((mi - (1.0 - binary_entropy(0.11).unwrap())).abs() < 1e-12);
        assert!((mi - 0.50009).abs() < 1e-5);
    }

    #[test]
    fn overlapping_sets_rejected() {
        let err = uniform_pair()
            .conditional_mutual_information(&["X"], &["X", "Y"], &[])
            .unwrap_err();
        assert!(matches!(err, Error::OverlappingSets(ref v) if v == "X"));
    }

    #[test]
    fn markov_chain_copies() {
        let pmf = JointPmf::from_fn(
            vec![
                ("X", Alphabet::binary()),
                ("X2", Alphabet::binary()),
                ("X3", Alphabet::binary()),
            ],
            |i| if i[0] == i[1] && i[1] == i[2] { 0.5 } else { 0.0 },
        )
        .unwrap();
        let check = pmf.is_markov_chain(&[&["X"], &["X2"], &["X3"]], 1e-12).unwrap();
        assert!(check.holds);
        assert_eq!(check.max_violation, 0.0);
    }

    #[test]
    fn markov_chain_violation_detected() {
        // X, Z independent uniform; Y = X xor Z: X - Y - Z does not hold
        let pmf = JointPmf::from_fn(
            vec![
                ("X", Alphabet::binary()),
                ("Y", Alphabet::binary()),
                ("Z", Alphabet::binary()),
            ],
            |i| if i[1] == i[0] ^ i[2] { 0.25 } else { 0.0 },
        )
        .unwrap();
        let check = pmf.is_markov_chain(&[&["X"], &["Y"], &["Z"]], 1e-9).unwrap();
        assert!(!check.holds);
        assert!((check.max_violation - 1.0).abs() < 1e-12);
    }

    #[test]
    fn malformed_chains() {
        let pmf = uniform_pair();
        assert!(matches!(
            pmf.is_markov_chain(&[&["X"], &["Y"]], 1e-9),
            Err(Error::MalformedChain(_))
        ));
        assert!(matches!(
            pmf.is_markov_chain(&[&["X"], &[], &["Y"]], 1e-9),
            Err(Error::MalformedChain(_))
        ));
        assert!(matches!(
            pmf.is_markov_chain(&[&["X"], &["Y"], &["X"]], 1e-9),
            Err(Error::MalformedChain(_))
        ));
    }

    #[test]
    fn condition_slices() {
        let pmf = bsc_pair(0.2);
        let given = pmf.condition("X", 1).unwrap();
        assert!((given.table()[1] - 0.8).abs() < 1e-15);
        assert!(pmf.condition("X", 2).is_err());
    }

    #[test]
    fn json_round_trip() {
        let text = r#"{"variables":[{"name":"X","symbols":[-1,1]},{"name":"Y","symbols":["a","b"]}],
                       "table":[0.1,0.2,0.3,0.4]}"#;
        let pmf: JointPmf = serde_json::from_str(text).unwrap();
        assert_eq!(pmf.variables()[0].alphabet.symbols(), ["-1", "1"]);
        assert_eq!(pmf.prob(&[1, 0]), 0.3);
        let back: JointPmf = serde_json::from_str(&serde_json::to_string(&pmf).unwrap()).unwrap();
        assert_eq!(back, pmf);
        let bad = r#"{"variables":[{"name":"X","symbols":[0,1]}],"table":[0.7,0.7]}"#;
        assert!(serde_json::from_str::<JointPmf>(bad).is_err());
    }
}
