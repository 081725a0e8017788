//! Property tests over random distributions, designs and sweeps.

use keyregion::closed_form::{example2_inner, example2_outer, example3_inner, example3_outer, Example2Params, Example3Params};
use keyregion::sim::plug_in_leakage;
use keyregion::{
    induce_joint, pareto_project, pregen_atoms, pregen_region, Alphabet, AuxDesign, Gdmmac, JointPmf, RateAxis, RateTriple,
};
use proptest::prelude::*;

fn simplex(n: usize) -> impl Strategy<Value = Vec<f64>> {
    prop::collection::vec(0.0f64..1.0, n).prop_filter_map("positive mass", |w| {
        let s: f64 = w.iter().sum();
        (s > 1e-6).then(|| w.into_iter().map(|x| x / s).collect())
    })
}

fn joint3() -> impl Strategy<Value = JointPmf> {
    simplex(12).prop_map(|p| {
        JointPmf::new(
            vec![("A", Alphabet::binary()), ("B", Alphabet::range(3)), ("C", Alphabet::binary())],
            p,
        )
        .unwrap()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn information_identities(p in joint3()) {
        let h_ab = p.entropy(&["A", "B"]).unwrap();
        let chain = p.entropy(&["A"]).unwrap() + p.conditional_entropy(&["B"], &["A"]).unwrap();
        prop_assert!((h_ab - chain).abs() < 1e-12);
        let i = p.mutual_information(&["A"], &["B", "C"]).unwrap();
        prop_assert!(i >= -1e-12);
        prop_assert!((i - p.mutual_information(&["B", "C"], &["A"]).unwrap()).abs() < 1e-12);
        let cmi = p.conditional_mutual_information(&["A"], &["C"], &["B"]).unwrap();
        prop_assert!(cmi >= -1e-12);
        // I(A; B,C) = I(A;B) + I(A;C|B)
        let split = p.mutual_information(&["A"], &["B"]).unwrap() + cmi;
        prop_assert!((i - split).abs() < 1e-12);
        prop_assert!(p.entropy(&["A", "B", "C"]).unwrap() <= (12f64).log2() + 1e-12);
    }

    #[test]
    fn binary_sum_generic_matches_closed_form(
        alpha in 0.0f64..=0.5, beta in 0.0f64..=0.5,
        p1 in 0.0f64..=0.5, p2 in 0.0f64..=0.5, p3 in 0.0f64..=0.5,
    ) {
        let channel = Gdmmac::binary_sum(p1, p2, p3).unwrap();
        let joint = induce_joint(&channel, &AuxDesign::example2(alpha, beta).unwrap()).unwrap();
        let generic = pregen_region(&pregen_atoms(&joint).unwrap()).bounds();
        let closed = example2_inner(&Example2Params::new(alpha, beta, p1, p2, p3).unwrap()).unwrap();
        prop_assert!(generic.max_abs_diff(&closed) < 1e-9, "{generic:?} vs {closed:?}");
    }

    #[test]
    fn binary_sum_inner_within_outer(
        alpha in 0.0f64..=0.5, beta in 0.0f64..=0.5,
        p2 in 0.0f64..=0.5, a in 0.0f64..=1.0, b in 0.0f64..=1.0,
    ) {
        // p2 <= p3 <= p1 <= 0.5
        let p3 = p2 + a * (0.5 - p2);
        let p1 = p3 + b * (0.5 - p3);
        let inner = example2_inner(&Example2Params::new(alpha, beta, p1, p2, p3).unwrap()).unwrap();
        let outer = example2_outer(p1, p2, p3).unwrap();
        prop_assert!(inner.within(&outer, 1e-9), "{inner:?} vs {outer:?}");
    }

    #[test]
    fn correlated_noise_feasible_within_outer(
        d in prop::array::uniform5(0.0f64..=0.5),
        p in prop::array::uniform3(0.001f64..=0.5),
    ) {
        let r = example3_inner(&Example3Params::new(d[0], d[1], d[2], d[3], d[4], p[0], p[1], p[2]).unwrap()).unwrap();
        if r.feasible {
            prop_assert!(r.rates.within(&example3_outer(p[0], p[1], p[2]).unwrap(), 1e-9));
        }
    }

    #[test]
    fn pareto_staircase_is_monotone_and_undominated(
        pts in prop::collection::vec((0.0f64..1.0, 0.0f64..1.0, 0.0f64..1.0), 1..60),
    ) {
        let triples: Vec<RateTriple> = pts.iter().map(|&(a, b, c)| RateTriple::new(a, b, c)).collect();
        let stairs = pareto_project(&triples, RateAxis::R23, RateAxis::R12, false).unwrap();
        for w in stairs.windows(2) {
            prop_assert!(w[0].0 < w[1].0 && w[0].1 > w[1].1);
        }
        for t in &triples {
            prop_assert!(stairs.iter().any(|s| s.0 >= t.r23 - 1e-12 && s.1 >= t.r12 - 1e-12));
        }
        let hull = pareto_project(&triples, RateAxis::R23, RateAxis::R12, true).unwrap();
        for s in &stairs {
            // every staircase point lies under the hull boundary
            let below = hull.windows(2).any(|w| {
                let (a, b) = (w[0], w[1]);
                s.0 >= a.0 - 1e-12 && s.0 <= b.0 + 1e-12 && {
                    let y = if b.0 > a.0 { a.1 + (b.1 - a.1) * (s.0 - a.0) / (b.0 - a.0) } else { a.1.max(b.1) };
                    s.1 <= y + 1e-9
                }
            });
            prop_assert!(below || hull.len() == 1, "{s:?} above {hull:?}");
        }
    }

    #[test]
    fn leakage_bounded_by_key_entropy(samples in prop::collection::vec((0u64..4, 0u64..6), 2..300)) {
        let e = plug_in_leakage(&samples).unwrap();
        let keys: std::collections::BTreeSet<u64> = samples.iter().map(|s| s.0).collect();
        prop_assert!(e.bits >= 0.0);
        prop_assert!(e.bits <= (keys.len() as f64).log2() + 1e-12);
    }
}
