//! Closed-form rate expressions for the erasure, binary-sum and
//! correlated-noise examples. These are scalar formulas in `h` and `∗` and are
//! used as independent references for the generic evaluators.

use serde::{Deserialize, Serialize};

use crate::error::{check_probability, Error, Result};
use crate::prob::{conv, h2, table_entropy};
use crate::region::RateTriple;

fn pos(x: f64) -> f64 {
    x.max(0.0)
}

fn half_range(what: &str, v: f64) -> Result<f64> {
    if !v.is_finite() || !(0.0..=0.5).contains(&v) {
        return Err(Error::Domain {
            what: format!("{what} (must lie in [0, 0.5])"),
            value: v,
        });
    }
    Ok(v)
}

fn open_half_range(what: &str, v: f64) -> Result<f64> {
    if !v.is_finite() || v <= 0.0 || v > 0.5 {
        return Err(Error::Domain {
            what: format!("{what} (must lie in (0, 0.5])"),
            value: v,
        });
    }
    Ok(v)
}

/// Secret-key capacity corner of the erasure example:
/// `(p13 - p12, 0, p12 - p23)`, valid when `p13 >= p12 >= p23`.
pub fn example1_capacity(p12: f64, p13: f64, p23: f64) -> Result<RateTriple> {
    let p12 = check_probability("p12", p12, 0.0)?;
    let p13 = check_probability("p13", p13, 0.0)?;
    let p23 = check_probability("p23", p23, 0.0)?;
    if !(p13 >= p12 && p12 >= p23) {
        return Err(Error::Precondition(format!(
            "erasure ordering p13 >= p12 >= p23 violated: p13={p13}, p12={p12}, p23={p23}"
        )));
    }
    Ok(RateTriple::new(p13 - p12, 0.0, p12 - p23))
}

/// Design and channel parameters of the binary-sum example.
///
/// Construction checks ranges only. The ordering `p2 <= p3 <= p1` is needed by
/// the outer bound, see [`Example2Params::check_ordering`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Example2Params {
    pub alpha: f64,
    pub beta: f64,
    pub p1: f64,
    pub p2: f64,
    pub p3: f64,
}

impl Example2Params {
    pub fn new(alpha: f64, beta: f64, p1: f64, p2: f64, p3: f64) -> Result<Self> {
        let out = Self {
            alpha,
            beta,
            p1,
            p2,
            p3,
        };
        out.validate()?;
        Ok(out)
    }

    pub fn validate(&self) -> Result<()> {
        half_range("alpha", self.alpha)?;
        half_range("beta", self.beta)?;
        half_range("p1", self.p1)?;
        half_range("p2", self.p2)?;
        half_range("p3", self.p3)?;
        Ok(())
    }

    pub fn is_ordered(&self) -> bool {
        self.p2 <= self.p3 && self.p3 <= self.p1
    }

    pub fn check_ordering(&self) -> Result<()> {
        check_example2_ordering(self.p1, self.p2, self.p3)
    }
}

fn check_example2_ordering(p1: f64, p2: f64, p3: f64) -> Result<()> {
    if p2 <= p3 && p3 <= p1 {
        Ok(())
    } else {
        Err(Error::Precondition(format!(
            "binary-sum ordering p2 <= p3 <= p1 violated: p1={p1}, p2={p2}, p3={p3}"
        )))
    }
}

/// Achievable corner of the binary-sum example:
///
/// ```text
/// R12 = [h(α∗p2) + h(β∗p3) - h(α∗β∗p3) - h(p2)]+
/// R23 = [h(β∗p1) - h(β∗α∗p3)]+
/// ```
pub fn example2_inner(params: &Example2Params) -> Result<RateTriple> {
    params.validate()?;
    let Example2Params {
        alpha: a,
        beta: b,
        p1,
        p2,
        p3,
    } = *params;
    let r12 = h2(conv(a, p2)) + h2(conv(b, p3)) - h2(conv(conv(a, b), p3)) - h2(p2);
    let r23 = h2(conv(b, p1)) - h2(conv(conv(b, a), p3));
    Ok(RateTriple::new(pos(r12), 0.0, pos(r23)))
}

/// Outer bound of the binary-sum example: `(1 - h(p2), 0, h(p1) - h(p3))`.
pub fn example2_outer(p1: f64, p2: f64, p3: f64) -> Result<RateTriple> {
    half_range("p1", p1)?;
    half_range("p2", p2)?;
    half_range("p3", p3)?;
    check_example2_ordering(p1, p2, p3)?;
    Ok(RateTriple::new(1.0 - h2(p2), 0.0, h2(p1) - h2(p3)))
}

/// `f(a, b, c) = H(A⊕B, A⊕C)` for independent `A ~ B(a)`, `B ~ B(b)`, `C ~ B(c)`,
/// written as the four-mass entropy.
pub fn example3_f(a: f64, b: f64, c: f64) -> Result<f64> {
    let a = check_probability("a", a, 0.0)?;
    let b = check_probability("b", b, 0.0)?;
    let c = check_probability("c", c, 0.0)?;
    Ok(f_unchecked(a, b, c))
}

fn f_unchecked(a: f64, b: f64, c: f64) -> f64 {
    let (na, nb, nc) = (1.0 - a, 1.0 - b, 1.0 - c);
    table_entropy(&[
        a * b * c + na * nb * nc,
        a * nb * c + na * b * nc,
        a * b * nc + na * nb * c,
        a * nb * nc + na * b * c,
    ])
}

/// Design and channel parameters of the correlated-noise example:
/// `(α, α′, α″, β, β′)` and crossovers `(p1, p2, p3)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Example3Params {
    pub alpha: f64,
    pub alpha_p: f64,
    pub alpha_pp: f64,
    pub beta: f64,
    pub beta_p: f64,
    pub p1: f64,
    pub p2: f64,
    pub p3: f64,
}

impl Example3Params {
    #[allow(clippy::too_many_arguments)]
    pub fn new(
        alpha: f64,
        alpha_p: f64,
        alpha_pp: f64,
        beta: f64,
        beta_p: f64,
        p1: f64,
        p2: f64,
        p3: f64,
    ) -> Result<Self> {
        let out = Self {
            alpha,
            alpha_p,
            alpha_pp,
            beta,
            beta_p,
            p1,
            p2,
            p3,
        };
        out.validate()?;
        Ok(out)
    }

    pub fn validate(&self) -> Result<()> {
        half_range("alpha", self.alpha)?;
        half_range("alpha'", self.alpha_p)?;
        half_range("alpha''", self.alpha_pp)?;
        half_range("beta", self.beta)?;
        half_range("beta'", self.beta_p)?;
        open_half_range("p1", self.p1)?;
        open_half_range("p2", self.p2)?;
        open_half_range("p3", self.p3)?;
        Ok(())
    }
}

/// Rates and feasibility of the correlated-noise example with secondary keys.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Example3Inner {
    pub rates: RateTriple,
    /// Right-hand side minus left-hand side of the two transmissibility constraints.
    pub constraint_slacks: [f64; 2],
    pub feasible: bool,
}

/// Achievable rates of the correlated-noise example with secondary keys.
///
/// ```text
/// hx = f(β∗p2, p3, β′)   hy = f(α∗β∗p2, p3, β′)   hz = f(β∗p2, p1∗p3, β′)
/// R12 = [hx - hy - h(α′∗p2) + h(α∗α′∗p2)]+
/// R13 = h(p1∗p3∗α″) - h(p1∗α″)
/// R23 = [h(β∗p1∗p2∗p3) - h(α∗β∗p2∗p3)]+ + [hz - hy + h(α∗β∗p2∗p3) - h(β∗p1∗p2∗p3)]+
/// ```
///
/// subject to `h(α″∗p1) - h(α″) <= h(α∗α′∗β∗p2∗p3) - h(α∗β∗p2∗p3)` and
/// `h(α″∗p1) - h(α″) + hy - h(β′) <= 1`.
pub fn example3_inner(params: &Example3Params) -> Result<Example3Inner> {
    params.validate()?;
    let Example3Params {
        alpha: a,
        alpha_p: ap,
        alpha_pp: app,
        beta: b,
        beta_p: bp,
        p1,
        p2,
        p3,
    } = *params;
    let bp2 = conv(b, p2);
    let abp2 = conv(a, bp2);
    let p13 = conv(p1, p3);
    let hx = f_unchecked(bp2, p3, bp);
    let hy = f_unchecked(abp2, p3, bp);
    let hz = f_unchecked(bp2, p13, bp);
    let h_bp123 = h2(conv(conv(b, p1), conv(p2, p3)));
    let h_abp23 = h2(conv(abp2, p3));

    let r12 = pos(hx - hy - h2(conv(ap, p2)) + h2(conv(conv(a, ap), p2)));
    let r13 = h2(conv(p13, app)) - h2(conv(p1, app));
    let r23 = pos(h_bp123 - h_abp23) + pos(hz - hy + h_abp23 - h_bp123);

    let lhs = h2(conv(app, p1)) - h2(app);
    let slack1 = h2(conv(conv(a, ap), conv(bp2, p3))) - h_abp23 - lhs;
    let slack2 = 1.0 - (lhs + hy - h2(bp));
    let constraint_slacks = [slack1, slack2];
    Ok(Example3Inner {
        rates: RateTriple::new(r12, r13, r23),
        constraint_slacks,
        feasible: constraint_slacks.iter().all(|&s| s >= -crate::region::FEASIBILITY_TOL),
    })
}

/// Pre-generated-keys rates of the correlated-noise example:
///
/// ```text
/// R12 = [h(β∗p2∗p3) - h(α∗β∗p2∗p3) - h(α′∗p2) + h(α∗α′∗p2)]+
/// R13 = 0
/// R23 = [h(β∗p1∗p2∗p3) - h(α∗β∗p2∗p3)]+
/// ```
pub fn example3_pregen(alpha: f64, alpha_p: f64, beta: f64, p1: f64, p2: f64, p3: f64) -> Result<RateTriple> {
    Example3Params::new(alpha, alpha_p, 0.5, beta, 0.5, p1, p2, p3)?;
    let (a, ap, b) = (alpha, alpha_p, beta);
    let bp23 = conv(conv(b, p2), p3);
    let h_abp23 = h2(conv(a, bp23));
    let r12 = h2(bp23) - h_abp23 - h2(conv(ap, p2)) + h2(conv(conv(a, ap), p2));
    let r23 = h2(conv(conv(b, p1), conv(p2, p3))) - h_abp23;
    Ok(RateTriple::new(pos(r12), 0.0, pos(r23)))
}

/// Outer bound of the correlated-noise example:
/// `(1 - h(p2), h(p1∗p3) - h(p1), h(p1∗p3) - h(p3))`.
pub fn example3_outer(p1: f64, p2: f64, p3: f64) -> Result<RateTriple> {
    open_half_range("p1", p1)?;
    open_half_range("p2", p2)?;
    open_half_range("p3", p3)?;
    let c = conv(p1, p3);
    Ok(RateTriple::new(1.0 - h2(p2), h2(c) - h2(p1), h2(c) - h2(p3)))
}
