use hecke_core::algebra::{CoeffQ, GroupRingElem, RationalElem};
use hecke_core::hecke::action::{reflect_elem, t_act};
use hecke_core::hecke::operator::alternate;
use hecke_core::hecke::HeckeCharacter;
use hecke_core::root_system::{Coweight, RootDatum};
use hecke_core::spherical::{theorem_lhs, theorem_rhs};
use proptest::prelude::*;

fn coeff() -> impl Strategy<Value = CoeffQ> {
    prop::collection::vec((-2i32..=2, -3i64..=3), 1..3).prop_map(|terms| {
        terms.into_iter().fold(CoeffQ::zero(), |acc, (e, c)| acc + CoeffQ::constant(c) * CoeffQ::q_pow(e))
    })
}

fn elem(rank: usize) -> impl Strategy<Value = GroupRingElem> {
    prop::collection::vec((prop::collection::vec(-2i32..=2, rank), coeff()), 0..5)
        .prop_map(|terms| GroupRingElem::from_terms(terms.into_iter().map(|(mu, c)| (Coweight::new(mu), c))))
}

fn nonzero(rank: usize) -> impl Strategy<Value = GroupRingElem> {
    elem(rank).prop_filter("nonzero", |g| !g.is_zero())
}

fn b2() -> RootDatum {
    RootDatum::parse("B2").unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn exact_div_inverts_multiplication(f in elem(2), g in nonzero(2)) {
        let product = &f * &g;
        prop_assert_eq!(product.exact_div(&g).unwrap(), f);
    }

    #[test]
    fn json_round_trip(f in elem(3)) {
        prop_assert_eq!(GroupRingElem::from_json(&f.to_json()).unwrap(), f);
    }

    #[test]
    fn weyl_action_composes(f in elem(2), a in 0usize..8, b in 0usize..8) {
        let d = b2();
        let w = &d.weyl;
        let ab = w.mul(a, b);
        let lhs = f.weyl_act(w.element(ab));
        let rhs = f.weyl_act(w.element(b)).weyl_act(w.element(a));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn alternator_is_anti_invariant(f in elem(2), i in 0usize..2) {
        let d = b2();
        let af = alternate(&d, &f);
        prop_assert_eq!(alternate(&d, &reflect_elem(&d.roots, i, &f)), -af.clone());
        prop_assert_eq!(reflect_elem(&d.roots, i, &af), -af);
    }

    #[test]
    fn fractions_equal_after_common_factor(a in elem(2), b in nonzero(2), c in nonzero(2)) {
        let x = RationalElem::new(a.clone(), b.clone()).unwrap();
        let y = RationalElem::new(&a * &c, &b * &c).unwrap();
        prop_assert_eq!(x, y);
    }

    #[test]
    fn quadratic_relation_on_random_elements(f in elem(2), i in 0usize..2, k in 0usize..4) {
        let d = b2();
        let rs = &d.roots;
        let eps = &HeckeCharacter::all(rs)[k];
        let tf = t_act(rs, eps, i, &f);
        let ttf = t_act(rs, eps, i, &tf);
        let q = CoeffQ::q();
        let lhs = ttf - tf.scale(&(q.clone() - CoeffQ::one())) - f.scale(&q);
        prop_assert!(lhs.is_zero());
    }

    #[test]
    fn braid_relation_on_random_elements(f in elem(2), k in 0usize..4) {
        let d = b2();
        let rs = &d.roots;
        let eps = &HeckeCharacter::all(rs)[k];
        let word = |first: usize, g: &GroupRingElem| {
            (0..4).fold(g.clone(), |acc, step| t_act(rs, eps, (first + step) % 2, &acc))
        };
        prop_assert_eq!(word(0, &f), word(1, &f));
    }

    #[test]
    fn alternator_formula_on_random_a2_weights(x in -3i32..=3, y in -3i32..=3, k in 0usize..2) {
        let d = RootDatum::parse("A2").unwrap();
        let eps = &HeckeCharacter::all(&d.roots)[k];
        let lambda = Coweight::new([x, y]);
        prop_assert_eq!(theorem_lhs(&d, eps, &lambda).unwrap(), theorem_rhs(&d, eps, &lambda).unwrap());
    }
}
