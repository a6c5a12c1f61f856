//! Randomized invariants of the exact engine.

use proptest::prelude::*;

use cms_core::coeff::CoeffFrac;
use cms_core::finite::{apply_cms_trig_a, phi_n, MPoly, Vars};
use cms_core::infinite::{apply_inf, Family, InfOperator};
use cms_core::symfun::{dominance_compare, m_to_p, p_to_m, partitions_of, Dominance};
use cms_core::{Partition, SymFun};

fn small_rational() -> impl Strategy<Value = CoeffFrac> {
    (-9i64..=9, 1i64..=6).prop_map(|(a, b)| CoeffFrac::ratio(a, b))
}

fn nonzero_rational() -> impl Strategy<Value = CoeffFrac> {
    (1i64..=9, 1i64..=6, any::<bool>()).prop_map(|(a, b, neg)| CoeffFrac::ratio(if neg { -a } else { a }, b))
}

/// Ratio of two affine forms in k and p, denominator nonzero.
fn frac() -> impl Strategy<Value = CoeffFrac> {
    (-5i64..=5, -5i64..=5, -5i64..=5, 1i64..=4, -4i64..=4, -4i64..=4).prop_map(|(a, b, c, d, e, f)| {
        let num: CoeffFrac = format!("{a}*k + {b}*p + {c}").parse().unwrap();
        let den: CoeffFrac = format!("{d}*k + {e}*p*k + {f}").parse().unwrap();
        num.div(&den).unwrap()
    })
}

fn partition(max_part: u32, max_len: usize) -> impl Strategy<Value = Partition> {
    prop::collection::vec(1..=max_part, 0..=max_len).prop_map(Partition::from_unsorted)
}

fn symfun(max_deg: u32) -> impl Strategy<Value = SymFun> {
    prop::collection::vec((partition(max_deg, max_deg as usize), -5i64..=5), 0..5).prop_map(move |terms| {
        SymFun::from_terms(
            terms
                .into_iter()
                .filter(|(l, _)| l.weight() <= max_deg)
                .map(|(l, c)| (l, CoeffFrac::from_int(c))),
        )
    })
}

fn operator(family: Family, k: CoeffFrac, x: CoeffFrac, y: CoeffFrac) -> InfOperator {
    match family {
        Family::TrigA => InfOperator::trig_a(k, x),
        Family::RatA => InfOperator::rat_a(k, x),
        Family::RatB => InfOperator::rat_b(k, y, x),
        Family::TrigBC => InfOperator::trig_bc(k, x.clone(), y.clone(), &x + &y, CoeffFrac::from_int(2)),
    }
}

fn family() -> impl Strategy<Value = Family> {
    prop::sample::select(Family::ALL.to_vec())
}

fn leq(a: &Partition, b: &Partition) -> bool {
    matches!(dominance_compare(a, b).unwrap(), Dominance::Less | Dominance::Equal)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn dominance_is_a_partial_order(n in 1u32..=9, i in any::<prop::sample::Index>(), j in any::<prop::sample::Index>(), l in any::<prop::sample::Index>()) {
        let ps = partitions_of(n);
        let (a, b, c) = (i.get(&ps), j.get(&ps), l.get(&ps));
        prop_assert!(leq(a, a));
        if leq(a, b) && leq(b, a) {
            prop_assert_eq!(a, b);
        }
        if leq(a, b) && leq(b, c) {
            prop_assert!(leq(a, c));
        }
        prop_assert_eq!(a.dominated_by(b), leq(a, b));
    }

    #[test]
    fn dominance_rejects_unequal_weights(a in partition(4, 4), b in partition(4, 4)) {
        prop_assume!(a.weight() != b.weight());
        prop_assert!(dominance_compare(&a, &b).is_err());
    }

    #[test]
    fn power_sum_monomial_round_trip(f in symfun(5)) {
        let m = p_to_m(&f, 5).unwrap();
        prop_assert_eq!(m_to_p(&m), f);
    }

    #[test]
    fn coeff_field_axioms(x in frac(), y in frac(), z in frac()) {
        prop_assert_eq!(&(&x + &y) - &y, x.clone());
        prop_assert_eq!(&x + &y, &y + &x);
        prop_assert_eq!(&(&x * &y) * &z, &x * &(&y * &z));
        prop_assert_eq!(&x * &(&y + &z), &(&x * &y) + &(&x * &z));
        if !y.is_zero() {
            prop_assert_eq!((&x * &y).div(&y).unwrap(), x.clone());
            prop_assert_eq!(&y * &y.inv().unwrap(), CoeffFrac::one());
        }
    }

    #[test]
    fn coeff_display_parse_round_trip(x in frac()) {
        let back: CoeffFrac = x.to_string().parse().unwrap();
        prop_assert_eq!(back, x);
    }

    #[test]
    fn coeff_fractions_are_reduced(x in frac()) {
        let g = cms_core::coeff::poly_gcd(x.numer(), x.denom());
        prop_assert!(g.is_one() || x.is_zero(), "gcd {}", g);
    }

    #[test]
    fn mpoly_display_parse_round_trip(
        terms in prop::collection::vec((0u16..=3, 0u16..=3, 0u16..=2, frac()), 0..5)
    ) {
        let vars = Vars::UV(2, 1);
        let f = MPoly::from_terms(vars, terms.into_iter().map(|(a, b, c, x)| (vec![a, b, c], x)));
        let back = MPoly::parse(vars, &f.to_string()).unwrap();
        prop_assert_eq!(back, f);
    }

    #[test]
    fn operators_are_linear(
        fam in family(),
        k in nonzero_rational(), x in small_rational(), y in small_rational(),
        f in symfun(4), g in symfun(4), a in small_rational(), b in small_rational(),
    ) {
        let op = operator(fam, k, x, y);
        let combo = f.scale(&a).add(&g.scale(&b));
        let lhs = apply_inf(&op, &combo, 4).unwrap();
        let rhs = apply_inf(&op, &f, 4).unwrap().scale(&a).add(&apply_inf(&op, &g, 4).unwrap().scale(&b));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn degree_contracts(fam in family(), k in nonzero_rational(), x in small_rational(), y in small_rational(), f in symfun(4)) {
        let op = operator(fam, k, x, y);
        let d = f.degree();
        let image = apply_inf(&op, &f, d).unwrap();
        prop_assert!(image.degree() <= d);
        if fam == Family::TrigA {
            for (lambda, _) in image.iter() {
                prop_assert!(f.iter().any(|(mu, _)| mu.weight() == lambda.weight()));
            }
        }
        if d > 0 {
            prop_assert!(apply_inf(&op, &f, d - 1).is_err());
        }
    }

    #[test]
    fn wrong_coupling_breaks_the_diagram(k in nonzero_rational(), lambda in partition(3, 2), n in 2usize..=4) {
        prop_assume!(!lambda.is_empty());
        let op = InfOperator::trig_a(k.clone(), CoeffFrac::from_int(n as i64));
        let f = SymFun::p(lambda.clone());
        let lhs = phi_n(&op.apply(&f, lambda.weight()).unwrap(), n).unwrap();
        let at = |k: &CoeffFrac| apply_cms_trig_a(&phi_n(&f, n).unwrap(), k).unwrap();
        prop_assert_eq!(&lhs, &at(&k));
        prop_assert_ne!(lhs, at(&(&k + &CoeffFrac::one())));
    }
}
