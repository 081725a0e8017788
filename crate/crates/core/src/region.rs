//! Inner- and outer-bound evaluators for the pairwise secret-key rate regions.
//!
//! Inner bounds are built from *atoms*: clamped differences of conditional
//! mutual informations evaluated on the joint induced by an auxiliary design.
//! Outer bounds are evaluated on a joint over `(U, X1, X2, Y1, Y2, Y3)`
//! supplied by the caller.

use serde::{Deserialize, Serialize};

use crate::channel::names::*;
use crate::error::{Error, Result};
use crate::prob::{EntropyCache, JointPmf};

/// Slack tolerance for feasibility and inclusion tests.
pub const FEASIBILITY_TOL: f64 = 1e-9;

/// Tolerance on the `U - (X1, X2) - (Y1, Y2, Y3)` precondition of the outer bounds.
pub const MARKOV_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct RateTriple {
    pub r12: f64,
    pub r13: f64,
    pub r23: f64,
}

impl RateTriple {
    pub fn new(r12: f64, r13: f64, r23: f64) -> Self {
        Self { r12, r13, r23 }
    }

    pub fn get(&self, axis: RateAxis) -> f64 {
        match axis {
            RateAxis::R12 => self.r12,
            RateAxis::R13 => self.r13,
            RateAxis::R23 => self.r23,
        }
    }

    /// Largest componentwise absolute difference.
    pub fn max_abs_diff(&self, other: &RateTriple) -> f64 {
        (self.r12 - other.r12)
            .abs()
            .max((self.r13 - other.r13).abs())
            .max((self.r23 - other.r23).abs())
    }

    /// True when every component is at most the matching component of `cap` plus `tol`.
    pub fn within(&self, cap: &RateTriple, tol: f64) -> bool {
        self.r12 <= cap.r12 + tol && self.r13 <= cap.r13 + tol && self.r23 <= cap.r23 + tol
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum RateAxis {
    R12,
    R13,
    R23,
}

impl RateAxis {
    pub fn label(self) -> &'static str {
        match self {
            RateAxis::R12 => "R12",
            RateAxis::R13 => "R13",
            RateAxis::R23 => "R23",
        }
    }
}

/// The six pre-generated-keys quantities. `r*` atoms are clamped at zero.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct PreGenAtoms {
    pub r12: f64,
    pub r21: f64,
    pub i12: f64,
    pub r13: f64,
    pub r23: f64,
    pub i3: f64,
}

/// Primary (`p`) and secondary (`s`) atoms of the generalized scheme together
/// with the five transmissibility slacks (right-hand side minus left-hand side).
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct GenAtoms {
    pub primary: PreGenAtoms,
    pub secondary: PreGenAtoms,
    pub constraint_slacks: [f64; 5],
}

impl GenAtoms {
    pub fn feasible(&self) -> bool {
        self.constraint_slacks.iter().all(|&s| s >= -FEASIBILITY_TOL)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Scheme {
    Pregen,
    Generalized,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Atoms {
    Pregen(PreGenAtoms),
    Generalized(GenAtoms),
}

/// The inequality system `R12 <= b12, R13 <= b13, R23 <= b23, R13 + R23 <= b13_23`
/// produced by one auxiliary design.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RegionEvaluation {
    pub scheme: Scheme,
    pub atoms: Atoms,
    pub bound_r12: f64,
    pub bound_r13: f64,
    pub bound_r23: f64,
    pub bound_r13_plus_r23: f64,
    pub feasible: bool,
}

impl RegionEvaluation {
    /// The individual upper bounds as a triple.
    pub fn bounds(&self) -> RateTriple {
        RateTriple::new(self.bound_r12, self.bound_r13, self.bound_r23)
    }

    pub fn contains(&self, r: &RateTriple) -> bool {
        let tol = FEASIBILITY_TOL;
        r.r12 >= -tol
            && r.r13 >= -tol
            && r.r23 >= -tol
            && r.r12 <= self.bound_r12 + tol
            && r.r13 <= self.bound_r13 + tol
            && r.r23 <= self.bound_r23 + tol
            && r.r13 + r.r23 <= self.bound_r13_plus_r23 + tol
    }

    /// Maximal vertices of the region (at most two, differing in how the sum
    /// constraint on `R13 + R23` is split).
    pub fn vertices(&self) -> Vec<RateTriple> {
        let a = RateTriple::new(
            self.bound_r12,
            self.bound_r13,
            (self.bound_r13_plus_r23 - self.bound_r13).clamp(0.0, self.bound_r23),
        );
        let b = RateTriple::new(
            self.bound_r12,
            (self.bound_r13_plus_r23 - self.bound_r23).clamp(0.0, self.bound_r13),
            self.bound_r23,
        );
        if a == b {
            vec![a]
        } else {
            vec![a, b]
        }
    }
}

fn require(joint: &JointPmf, vars: &[&str]) -> Result<()> {
    let missing: Vec<&str> = vars.iter().copied().filter(|v| !joint.contains(v)).collect();
    if missing.is_empty() {
        Ok(())
    } else {
        Err(Error::UnknownVariable(missing.join(", ")))
    }
}

const PRIMARY_VARS: [&str; 9] = [S12, S13, S21, S23, X1, X2, Y1, Y2, Y3];
const SECONDARY_VARS: [&str; 4] = [T12, T13, T21, T23];

fn pos(x: f64) -> f64 {
    x.max(0.0)
}

/// Pre-generated-keys atoms of the joint:
///
/// ```text
/// r12 = [I(S12; X2,Y2) - I(S12; Y3,S13,S23)]+        i12 = I(S12; S21 | Y3,S13,S23)
/// r21 = [I(S21; X1,Y1) - I(S21; Y3,S13,S23)]+
/// r13 = [I(S13; Y3|S23) - I(S13; X2,Y2,S12|S23)]+     i3  = I(S13; S23 | Y3)
/// r23 = [I(S23; Y3|S13) - I(S23; X1,Y1,S21|S13)]+
/// ```
pub fn pregen_atoms(joint: &JointPmf) -> Result<PreGenAtoms> {
    require(joint, &PRIMARY_VARS)?;
    let c = EntropyCache::new(joint);
    Ok(PreGenAtoms {
        r12: pos(c.cmi(&[S12], &[X2, Y2], &[])? - c.cmi(&[S12], &[Y3, S13, S23], &[])?),
        r21: pos(c.cmi(&[S21], &[X1, Y1], &[])? - c.cmi(&[S21], &[Y3, S13, S23], &[])?),
        i12: c.cmi(&[S12], &[S21], &[Y3, S13, S23])?,
        r13: pos(c.cmi(&[S13], &[Y3], &[S23])? - c.cmi(&[S13], &[X2, Y2, S12], &[S23])?),
        r23: pos(c.cmi(&[S23], &[Y3], &[S13])? - c.cmi(&[S23], &[X1, Y1, S21], &[S13])?),
        i3: c.cmi(&[S13], &[S23], &[Y3])?,
    })
}

/// Region of the pre-generated-keys scheme for one set of atoms.
pub fn pregen_region(atoms: &PreGenAtoms) -> RegionEvaluation {
    RegionEvaluation {
        scheme: Scheme::Pregen,
        atoms: Atoms::Pregen(*atoms),
        bound_r12: pos(atoms.r12 + atoms.r21 - atoms.i12),
        bound_r13: atoms.r13,
        bound_r23: atoms.r23,
        bound_r13_plus_r23: pos(atoms.r13 + atoms.r23 - atoms.i3),
        feasible: true,
    }
}

/// Primary and secondary atoms of the generalized scheme plus its five
/// transmissibility slacks. The joint must contain the `T` layer.
pub fn gen_atoms(joint: &JointPmf) -> Result<GenAtoms> {
    require(joint, &PRIMARY_VARS)?;
    require(joint, &SECONDARY_VARS)?;
    let c = EntropyCache::new(joint);
    let at3 = [Y3, S13, S23, T13, T23];

    let primary = PreGenAtoms {
        r12: pos(c.cmi(&[S12], &[X2, Y2], &[])? - c.cmi(&[S12], &at3, &[])?),
        r21: pos(c.cmi(&[S21], &[X1, Y1], &[])? - c.cmi(&[S21], &at3, &[])?),
        i12: c.cmi(&[S12], &[S21], &at3)?,
        r13: pos(c.cmi(&[S13], &[Y3], &[S23])? - c.cmi(&[S13], &[X2, Y2, S12, T12], &[S23])?),
        r23: pos(c.cmi(&[S23], &[Y3], &[S13])? - c.cmi(&[S23], &[X1, Y1, S21, T21], &[S13])?),
        i3: c.cmi(&[S13], &[S23], &[Y3])?,
    };

    let ss = [S12, S21];
    let secondary = PreGenAtoms {
        r12: pos(c.cmi(&[T12], &[X2, Y2], &ss)? - c.cmi(&[T12], &at3, &ss)?),
        r21: pos(c.cmi(&[T21], &[X1, Y1], &ss)? - c.cmi(&[T21], &at3, &ss)?),
        i12: c.cmi(&[T12], &[T21], &[Y3, S13, S23, T13, T23, S12, S21])?,
        r13: pos(
            c.cmi(&[T13], &[Y3], &[S13, S23, T23])?
                - c.cmi(&[T13], &[X2, Y2, S12, T12], &[S13, S23, T23])?,
        ),
        r23: pos(
            c.cmi(&[T23], &[Y3], &[S13, S23, T13])?
                - c.cmi(&[T23], &[X1, Y1, S21, T21], &[S13, S23, T13])?,
        ),
        i3: c.cmi(&[T13], &[T23], &[Y3, S13, S23])?,
    };

    let constraint_slacks = [
        c.cmi(&[S12], &[X2, Y2], &[])? - c.cmi(&[T12], &[X1, Y1], &[X2, Y2, S12, S21])?,
        c.cmi(&[S13], &[Y3], &[S23])? - c.cmi(&[T13], &[X1, Y1], &[Y3, S13, S23, T23])?,
        c.cmi(&[S21], &[X1, Y1], &[])? - c.cmi(&[T21], &[X2, Y2], &[X1, Y1, S12, S21])?,
        c.cmi(&[S23], &[Y3], &[S13])? - c.cmi(&[T23], &[X2, Y2], &[Y3, S13, S23, T13])?,
        c.cmi(&[S13, S23], &[Y3], &[])? - c.cmi(&[T13, T23], &[X1, Y1, X2, Y2], &[Y3, S13, S23])?,
    ];

    Ok(GenAtoms {
        primary,
        secondary,
        constraint_slacks,
    })
}

/// Region of the generalized scheme; bounds are reported even when infeasible.
pub fn gen_region(atoms: &GenAtoms) -> RegionEvaluation {
    let p = &atoms.primary;
    let s = &atoms.secondary;
    RegionEvaluation {
        scheme: Scheme::Generalized,
        atoms: Atoms::Generalized(*atoms),
        bound_r12: pos(p.r12 + p.r21 - p.i12) + pos(s.r12 + s.r21 - s.i12),
        bound_r13: p.r13 + s.r13,
        bound_r23: p.r23 + s.r23,
        bound_r13_plus_r23: pos(p.r13 + p.r23 - p.i3) + pos(s.r13 + s.r23 - s.i3),
        feasible: atoms.feasible(),
    }
}

/// Evaluates the scheme matching the joint: generalized when the `T` layer is
/// present, pre-generated otherwise.
pub fn evaluate(joint: &JointPmf) -> Result<RegionEvaluation> {
    if SECONDARY_VARS.iter().all(|v| joint.contains(v)) {
        Ok(gen_region(&gen_atoms(joint)?))
    } else {
        Ok(pregen_region(&pregen_atoms(joint)?))
    }
}

fn check_outer_precondition(joint: &JointPmf) -> Result<()> {
    require(joint, &[U, X1, X2, Y1, Y2, Y3])?;
    let check = joint.is_markov_chain(&[&[U], &[X1, X2], &[Y1, Y2, Y3]], MARKOV_TOL)?;
    if !check.holds {
        return Err(Error::MarkovViolation {
            chain: "U - (X1,X2) - (Y1,Y2,Y3)".into(),
            violation: check.max_violation,
        });
    }
    Ok(())
}

fn outer_r12(c: &EntropyCache) -> Result<f64> {
    Ok(c.cmi(&[X1], &[Y2], &[X2, Y3])?
        + c.cmi(&[X2], &[Y1], &[X1, Y3])?
        + c.cmi(&[Y1], &[Y2], &[X1, X2, Y3])?
        + c.cmi(&[X1], &[Y3], &[X2, U])?
        - c.cmi(&[X1], &[Y3], &[U])?)
}

/// Pre-generated-keys outer bound evaluated on one joint over `(U, X1, X2, Y1, Y2, Y3)`.
pub fn outer_bound_th2(joint_with_u: &JointPmf) -> Result<RateTriple> {
    check_outer_precondition(joint_with_u)?;
    let c = EntropyCache::new(joint_with_u);
    Ok(RateTriple {
        r12: pos(outer_r12(&c)?),
        r13: c.cmi(&[X1], &[Y3], &[X2, Y2])?,
        r23: c.cmi(&[X2], &[Y3], &[X1, Y1])?,
    })
}

/// Generalized-scheme outer bound: same `R12` bound, with the transmitters'
/// own outputs added to the `R13` and `R23` bounds.
pub fn outer_bound_th4(joint_with_u: &JointPmf) -> Result<RateTriple> {
    check_outer_precondition(joint_with_u)?;
    let c = EntropyCache::new(joint_with_u);
    Ok(RateTriple {
        r12: pos(outer_r12(&c)?),
        r13: c.cmi(&[X1, Y1], &[Y3], &[X2, Y2])?,
        r23: c.cmi(&[X2, Y2], &[Y3], &[X1, Y1])?,
    })
}

/// Capacity region corner for channels satisfying `X1 - (X2,Y2) - Y3 - Y1`
/// and `X1 - Y3 - X2`: `(I(X1;Y2|X2,Y3), 0, I(X2;Y3|X1,Y1))`.
///
/// `joint` is a channel joint over `(X1, X2, Y1, Y2, Y3)` for a chosen input
/// distribution; both chains are verified first.
pub fn degraded_capacity_corner(joint: &JointPmf) -> Result<RateTriple> {
    require(joint, &[X1, X2, Y1, Y2, Y3])?;
    for (label, chain) in [
        ("X1 - (X2,Y2) - Y3 - Y1", vec![&[X1][..], &[X2, Y2][..], &[Y3][..], &[Y1][..]]),
        ("X1 - Y3 - X2", vec![&[X1][..], &[Y3][..], &[X2][..]]),
    ] {
        let check = joint.is_markov_chain(&chain, MARKOV_TOL)?;
        if !check.holds {
            return Err(Error::MarkovViolation {
                chain: label.into(),
                violation: check.max_violation,
            });
        }
    }
    Ok(RateTriple {
        r12: joint.conditional_mutual_information(&[X1], &[Y2], &[X2, Y3])?,
        r13: 0.0,
        r23: joint.conditional_mutual_information(&[X2], &[Y3], &[X1, Y1])?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::channel::Gdmmac;
    use crate::design::{induce_joint, AuxDesign, Kernel, Marginal};
    use crate::prob::{binary_entropy, Alphabet};

    fn h(p: f64) -> f64 {
        binary_entropy(p).unwrap()
    }

    fn singleton_design(channel: &Gdmmac) -> AuxDesign {
        let one = Marginal::singleton();
        AuxDesign {
            s12: one.clone(),
            s13: one.clone(),
            s21: one.clone(),
            s23: one,
            x1: Kernel::constant(vec![1, 1], &Marginal::uniform(channel.x1().clone())).unwrap(),
            x2: Kernel::constant(vec![1, 1], &Marginal::uniform(channel.x2().clone())).unwrap(),
            secondary: None,
        }
    }

    #[test]
    fn singleton_auxiliaries_give_zero_atoms() {
        let ch = Gdmmac::binary_sum(0.2, 0.1, 0.15).unwrap();
        let joint = induce_joint(&ch, &singleton_design(&ch)).unwrap();
        assert_eq!(pregen_atoms(&joint).unwrap(), PreGenAtoms::default());
        let region = pregen_region(&PreGenAtoms::default());
        assert_eq!(region.bounds(), RateTriple::default());
        assert_eq!(region.bound_r13_plus_r23, 0.0);
    }

    #[test]
    fn example1_atoms() {
        let ch = Gdmmac::erasure(0.3, 0.3, 0.5, 0.1).unwrap();
        let atoms = pregen_atoms(&induce_joint(&ch, &AuxDesign::example1()).unwrap()).unwrap();
        assert!((atoms.r12 - 0.2).abs() < 1e-12);
        assert!((atoms.r23 - 0.2).abs() < 1e-12);
        assert!(atoms.r21.abs() < 1e-12 && atoms.r13.abs() < 1e-12);
        assert!(atoms.i12.abs() < 1e-12 && atoms.i3.abs() < 1e-12);
        let region = pregen_region(&atoms);
        assert!(region.bounds().max_abs_diff(&RateTriple::new(0.2, 0.0, 0.2)) < 1e-12);
        assert!((region.bound_r13_plus_r23 - 0.2).abs() < 1e-12);
    }

    #[test]
    fn example2_full_randomization_corner() {
        let ch = Gdmmac::binary_sum(0.09, 0.1, 0.07).unwrap();
        let joint = induce_joint(&ch, &AuxDesign::example2(0.5, 0.5).unwrap()).unwrap();
        let region = pregen_region(&pregen_atoms(&joint).unwrap());
        assert!((region.bound_r12 - (1.0 - h(0.1))).abs() < 1e-12);
    }

    #[test]
    fn pregen_clamp() {
        let atoms = PreGenAtoms {
            r12: 0.1,
            r21: 0.2,
            i12: 0.5,
            r13: 0.3,
            r23: 0.1,
            i3: 0.05,
        };
        let region = pregen_region(&atoms);
        assert_eq!(region.bound_r12, 0.0);
        assert!((region.bound_r13_plus_r23 - 0.35).abs() < 1e-15);
        assert!(region.feasible);
    }

    #[test]
    fn gen_region_reduces_and_flags() {
        let p = PreGenAtoms {
            r12: 0.3,
            r21: 0.1,
            i12: 0.05,
            r13: 0.2,
            r23: 0.25,
            i3: 0.1,
        };
        let zero = GenAtoms {
            primary: p,
            secondary: PreGenAtoms::default(),
            constraint_slacks: [0.0; 5],
        };
        let g = gen_region(&zero);
        let q = pregen_region(&p);
        assert_eq!(g.bounds(), q.bounds());
        assert_eq!(g.bound_r13_plus_r23, q.bound_r13_plus_r23);
        assert!(g.feasible);

        let bad = GenAtoms {
            constraint_slacks: [0.1, -0.2, 0.0, 0.0, 0.0],
            ..zero
        };
        let g = gen_region(&bad);
        assert!(!g.feasible);
        assert_eq!(g.bounds(), q.bounds());
        assert!(g.bound_r13_plus_r23 <= g.bound_r13 + g.bound_r23 + 1e-9);
    }

    #[test]
    fn trivial_secondary_matches_pregen() {
        let ch = Gdmmac::correlated_noise(0.09, 0.1, 0.07).unwrap();
        let base = AuxDesign::example3(0.2, 0.1, 0.5, 0.3, 0.5).unwrap().primary_only();
        let p = pregen_atoms(&induce_joint(&ch, &base).unwrap()).unwrap();
        let g = gen_atoms(&induce_joint(&ch, &base.with_trivial_secondary(&ch).unwrap()).unwrap()).unwrap();
        assert!((g.primary.r12 - p.r12).abs() < 1e-12);
        assert!((g.primary.r23 - p.r23).abs() < 1e-12);
        assert!((g.primary.r13 - p.r13).abs() < 1e-12);
        assert_eq!(g.secondary, PreGenAtoms::default());
        assert!(g.feasible());
    }

    #[test]
    fn gen_atoms_requires_secondary_layer() {
        let ch = Gdmmac::binary_sum(0.3, 0.1, 0.2).unwrap();
        let joint = induce_joint(&ch, &AuxDesign::example2(0.2, 0.2).unwrap()).unwrap();
        assert!(matches!(gen_atoms(&joint), Err(Error::UnknownVariable(_))));
        let trimmed = joint.marginalize(&[S12, X1, X2]).unwrap();
        assert!(matches!(pregen_atoms(&trimmed), Err(Error::UnknownVariable(_))));
    }

    fn u_joint(channel: &Gdmmac, f: impl Fn(usize, usize, usize) -> f64) -> JointPmf {
        let table: Vec<f64> = (0..8).map(|i| f(i / 4, (i / 2) % 2, i % 2)).collect();
        let total: f64 = table.iter().sum();
        let table: Vec<f64> = table.iter().map(|p| p / total).collect();
        channel.joint_with_auxiliary(Alphabet::binary(), &table).unwrap()
    }

    #[test]
    fn outer_bounds_constant_u() {
        let ch = Gdmmac::binary_sum(0.3, 0.1, 0.2).unwrap();
        let joint = u_joint(&ch, |u, _, _| if u == 0 { 1.0 } else { 0.0 });
        let th2 = outer_bound_th2(&joint).unwrap();
        let direct = joint.conditional_mutual_information(&[X1], &[Y3], &[X2, Y2]).unwrap();
        assert_eq!(th2.r13, direct);
        let th4 = outer_bound_th4(&joint).unwrap();
        assert!(th4.r13 >= th2.r13 - 1e-9 && th4.r23 >= th2.r23 - 1e-9);
        assert_eq!(th4.r12, th2.r12);
    }

    #[test]
    fn outer_bound_matches_direct_terms() {
        let ch = Gdmmac::binary_sum(0.3, 0.1, 0.2).unwrap();
        let joint = u_joint(&ch, |u, x1, x2| [[0.3, 0.7], [0.6, 0.4]][u][x1] * [0.2, 0.8][x2] * [0.4, 0.6][u]);
        let th2 = outer_bound_th2(&joint).unwrap();
        let i = |a: &[&str], b: &[&str], c: &[&str]| joint.conditional_mutual_information(a, b, c).unwrap();
        let r12 = i(&[X1], &[Y2], &[X2, Y3]) + i(&[X2], &[Y1], &[X1, Y3]) + i(&[Y1], &[Y2], &[X1, X2, Y3])
            + i(&[X1], &[Y3], &[X2, U])
            - i(&[X1], &[Y3], &[U]);
        assert!((th2.r12 - r12.max(0.0)).abs() < 1e-12);
        assert!((th2.r23 - i(&[X2], &[Y3], &[X1, Y1])).abs() < 1e-12);
    }

    #[test]
    fn outer_bound_binary_sum_degraded_coupling() {
        let (p1, p2, p3) = (0.3, 0.1, 0.2);
        let ch = Gdmmac::binary_sum_degraded(p1, p2, p3).unwrap();
        for w in [[0.3, 0.7, 0.6, 0.4], [0.5, 0.5, 0.5, 0.5], [0.9, 0.2, 0.1, 0.8]] {
            let joint = u_joint(&ch, |u, x1, x2| [[w[0], w[1]], [w[2], w[3]]][u][x1] * [0.2, 0.8][x2 ^ u]);
            let th2 = outer_bound_th2(&joint).unwrap();
            assert!(th2.r12 <= 1.0 - h(p2) + 1e-9, "{th2:?}");
        }
        // uniform inputs, constant U attain the corner
        let joint = u_joint(&ch, |u, _, _| if u == 0 { 0.25 } else { 0.0 });
        let th2 = outer_bound_th2(&joint).unwrap();
        assert!((th2.r12 - (1.0 - h(p2))).abs() < 1e-12);
        assert!((th2.r23 - (h(p1) - h(p3))).abs() < 1e-12);
        // the independent-noise channel with the same marginals is not degraded,
        // so the same evaluation exceeds the corner there
        let orig = Gdmmac::binary_sum(p1, p2, p3).unwrap();
        let joint = u_joint(&orig, |u, _, _| if u == 0 { 0.25 } else { 0.0 });
        assert!(outer_bound_th2(&joint).unwrap().r12 > 1.0 - h(p2) + 0.1);
    }

    #[test]
    fn outer_bound_erasure_degraded_r13_zero() {
        let ch = Gdmmac::erasure_degraded(0.3, 0.3, 0.5, 0.1).unwrap();
        let joint = u_joint(&ch, |u, x1, x2| [0.3, 0.7][x1] * [0.6, 0.4][x2] * [0.5, 0.5][u]);
        assert!(outer_bound_th2(&joint).unwrap().r13.abs() < 1e-12);
    }

    #[test]
    fn outer_bound_correlated_noise_values() {
        let (p1, p2, p3) = (0.09, 0.1, 0.07);
        let ch = Gdmmac::correlated_noise(p1, p2, p3).unwrap();
        let joint = u_joint(&ch, |u, _, _| if u == 0 { 0.25 } else { 0.0 });
        let th4 = outer_bound_th4(&joint).unwrap();
        let c = p1 * (1.0 - p3) + p3 * (1.0 - p1);
        assert!((th4.r13 - (h(c) - h(p1))).abs() < 1e-12);
        assert!(th4.r23 <= h(c) - h(p3) + 1e-9);
    }

    #[test]
    fn outer_bound_rejects_non_markov_joint() {
        let ch = Gdmmac::binary_sum(0.3, 0.1, 0.2).unwrap();
        let base = ch.joint_with_inputs(&[0.25; 4]).unwrap();
        // U = Y1 breaks U - (X1,X2) - outputs
        let mut vars = vec![("U".to_string(), Alphabet::binary())];
        vars.extend(base.variables().iter().map(|v| (v.name.clone(), v.alphabet.clone())));
        let joint = JointPmf::from_fn(vars, |i| if i[0] == i[3] { base.prob(&i[1..]) } else { 0.0 }).unwrap();
        assert!(matches!(outer_bound_th2(&joint), Err(Error::MarkovViolation { .. })));
        assert!(matches!(outer_bound_th4(&joint), Err(Error::MarkovViolation { .. })));
    }

    #[test]
    fn degraded_erasure_corner() {
        let ch = Gdmmac::erasure_degraded(0.3, 0.3, 0.5, 0.1).unwrap();
        let joint = ch.joint_with_inputs(&[0.25; 4]).unwrap();
        let corner = degraded_capacity_corner(&joint).unwrap();
        assert!(corner.max_abs_diff(&RateTriple::new(0.2, 0.0, 0.2)) < 1e-12);
        // the original erasure channel does not satisfy the chains
        let orig = Gdmmac::erasure(0.3, 0.3, 0.5, 0.1).unwrap();
        let joint = orig.joint_with_inputs(&[0.25; 4]).unwrap();
        assert!(matches!(degraded_capacity_corner(&joint), Err(Error::MarkovViolation { .. })));
    }

    #[test]
    fn vertices_split_sum_constraint() {
        let region = RegionEvaluation {
            scheme: Scheme::Pregen,
            atoms: Atoms::Pregen(PreGenAtoms::default()),
            bound_r12: 0.1,
            bound_r13: 0.3,
            bound_r23: 0.4,
            bound_r13_plus_r23: 0.5,
            feasible: true,
        };
        let v = region.vertices();
        assert_eq!(v.len(), 2);
        assert!((v[0].r23 - 0.2).abs() < 1e-15);
        assert!((v[1].r13 - 0.1).abs() < 1e-15);
        assert!(v.iter().all(|t| region.contains(t)));
        assert!(!region.contains(&RateTriple::new(0.1, 0.3, 0.4)));
    }
}
