//! Group law checks: exhaustive on small balls, property-based on random
//! words.

use ordercert_core::groups::{Element, Group, Homomorphism};
use proptest::prelude::*;

fn suite() -> Vec<Group> {
    vec![
        Group::free(2).unwrap(),
        Group::free_abelian(3).unwrap(),
        Group::finite_cyclic(5).unwrap(),
        Group::klein_bottle(),
        Group::heisenberg(),
        Group::laurent_semidirect(),
        Group::direct_product(vec![
            Group::finite_cyclic(2).unwrap(),
            Group::finite_cyclic(3).unwrap(),
        ])
        .unwrap(),
    ]
}

#[test]
fn radius_two_balls_satisfy_the_group_laws() {
    for group in suite() {
        let ball = group.ball(2).unwrap();
        let members: Vec<&Element> = ball.iter().collect();
        let id = group.identity();
        for g in &members {
            assert_eq!(&g.multiply(&id).unwrap(), *g);
            assert_eq!(&id.multiply(g).unwrap(), *g);
            assert!(g.multiply(&g.inverse()).unwrap().is_identity());
            assert!(g.inverse().multiply(g).unwrap().is_identity());
        }
        for g in &members {
            for h in &members {
                for k in &members {
                    let left = g.multiply(h).unwrap().multiply(k).unwrap();
                    let right = g.multiply(&h.multiply(k).unwrap()).unwrap();
                    assert_eq!(left, right, "associativity in {group}");
                }
            }
        }
    }
}

#[test]
fn balls_are_monotone_in_radius() {
    for group in suite() {
        let mut previous = group.ball(0).unwrap();
        for radius in 1..=3 {
            let ball = group.ball(radius).unwrap();
            assert!(previous.members().is_subset(ball.members()));
            previous = ball;
        }
    }
}

fn word_strategy(generators: usize) -> impl Strategy<Value = Vec<(usize, i64)>> {
    prop::collection::vec((0..generators, -3i64..=3), 0..6)
}

fn element_strategy(group: Group) -> impl Strategy<Value = Element> {
    let generators = group.generator_count();
    word_strategy(generators).prop_map(move |word| Element::from_generator_word(&group, &word))
}

macro_rules! group_law_props {
    ($modname:ident, $group:expr) => {
        mod $modname {
            use super::*;

            proptest! {
                #[test]
                fn inverse_roundtrip(g in element_strategy($group)) {
                    prop_assert!(g.multiply(&g.inverse()).unwrap().is_identity());
                    prop_assert_eq!(g.inverse().inverse(), g);
                }

                #[test]
                fn associativity(
                    g in element_strategy($group),
                    h in element_strategy($group),
                    k in element_strategy($group),
                ) {
                    let left = g.multiply(&h).unwrap().multiply(&k).unwrap();
                    let right = g.multiply(&h.multiply(&k).unwrap()).unwrap();
                    prop_assert_eq!(left, right);
                }

                #[test]
                fn power_matches_repeated_product(g in element_strategy($group), e in -6i64..=6) {
                    let mut acc = g.group().identity();
                    let step = if e >= 0 { g.clone() } else { g.inverse() };
                    for _ in 0..e.unsigned_abs() {
                        acc = acc.multiply(&step).unwrap();
                    }
                    prop_assert_eq!(g.pow(e), acc);
                }
            }
        }
    };
}

group_law_props!(free_two, Group::free(2).unwrap());
group_law_props!(klein, Group::klein_bottle());
group_law_props!(heisenberg, Group::heisenberg());
group_law_props!(laurent, Group::laurent_semidirect());
group_law_props!(cyclic_six, Group::finite_cyclic(6).unwrap());

proptest! {
    #[test]
    fn homomorphisms_are_multiplicative(
        wg in word_strategy(2),
        wh in word_strategy(2),
    ) {
        let homs = [
            Homomorphism::klein_b_exponent(),
            Homomorphism::laurent_z_exponent(),
        ];
        for hom in homs {
            let g = Element::from_generator_word(hom.source(), &wg);
            let h = Element::from_generator_word(hom.source(), &wh);
            let lhs = hom.apply(&g.multiply(&h).unwrap()).unwrap();
            let rhs = hom.apply(&g).unwrap().multiply(&hom.apply(&h).unwrap()).unwrap();
            prop_assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn heisenberg_abelianization_is_multiplicative(
        wg in word_strategy(3),
        wh in word_strategy(3),
    ) {
        let hom = Homomorphism::heisenberg_abelianization();
        let g = Element::from_generator_word(hom.source(), &wg);
        let h = Element::from_generator_word(hom.source(), &wh);
        let lhs = hom.apply(&g.multiply(&h).unwrap()).unwrap();
        let rhs = hom.apply(&g).unwrap().multiply(&hom.apply(&h).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }
}
