mod common;

use num_rational::Ratio;
use proptest::prelude::*;
use zerosum_core::*;

const SPECS: &[&str] = &[
    "Z2",
    "Z12",
    "Z45",
    "Z64",
    "Z97",
    "2*2",
    "2^3*2",
    "3*3*5",
    "2^2*3^2*5",
    "7^2",
    "2*2*2*3",
];

fn group_and_elements(max_len: usize) -> impl Strategy<Value = (GroupSpec, Vec<GroupElement>)> {
    prop::sample::select(SPECS).prop_flat_map(move |spec| {
        let g = parse_group_spec(spec).unwrap();
        let order = g.order();
        let g2 = g.clone();
        prop::collection::vec(0..order, 0..=max_len).prop_map(move |idx| {
            (
                g2.clone(),
                idx.into_iter().map(|i| g2.element_at(i)).collect(),
            )
        })
    })
}

proptest! {
    #[test]
    fn order_divides_exponent((g, elems) in group_and_elements(8)) {
        for e in &elems {
            let ord = g.element_order(e).unwrap();
            prop_assert_eq!(g.exponent() % ord, 0);
        }
    }

    #[test]
    fn order_matches_repeated_addition((g, elems) in group_and_elements(8)) {
        for e in &elems {
            prop_assert_eq!(g.element_order(e).unwrap(), common::order_by_addition(&g, e));
        }
    }

    #[test]
    fn cross_number_is_additive((g, elems) in group_and_elements(10), split in 0usize..=10) {
        let split = split.min(elems.len());
        let a = ZSequence::new(&g, elems[..split].to_vec()).unwrap();
        let b = ZSequence::new(&g, elems[split..].to_vec()).unwrap();
        let whole = cross_number(&g, &a.concat(&b)).unwrap();
        let parts = cross_number(&g, &a).unwrap().as_ratio() + cross_number(&g, &b).unwrap().as_ratio();
        prop_assert_eq!(whole.as_ratio(), parts);
        let direct: Ratio<u128> = elems
            .iter()
            .map(|e| Ratio::new(1, common::order_by_addition(&g, e) as u128))
            .sum();
        prop_assert_eq!(whole.as_ratio(), direct);
    }

    #[test]
    fn sequence_text_round_trips((g, elems) in group_and_elements(12)) {
        let s = ZSequence::new(&g, elems).unwrap();
        let text = format_sequence(&s);
        prop_assert_eq!(parse_sequence(&g, &text).unwrap(), s);
    }

    #[test]
    fn negation_cancels((g, elems) in group_and_elements(6)) {
        for e in &elems {
            prop_assert!(g.add(e, &g.neg(e)).is_zero());
        }
    }
}

#[test]
fn every_order_up_to_100_by_brute_force() {
    for n in 2..=100u64 {
        let g = GroupSpec::cyclic(n).unwrap();
        for e in g.elements() {
            assert_eq!(
                g.element_order(&e).unwrap(),
                common::order_by_addition(&g, &e)
            );
        }
    }
    for spec in common::groups_up_to(100) {
        let g = parse_group_spec(&spec).unwrap();
        assert_eq!(g.elements().count() as u64, g.order(), "{spec}");
        for e in g.elements() {
            assert_eq!(
                g.element_order(&e).unwrap(),
                common::order_by_addition(&g, &e),
                "{spec}"
            );
        }
    }
}

#[test]
fn subgroup_sizes_multiply_to_order() {
    for spec in SPECS {
        let g = parse_group_spec(spec).unwrap();
        for h in g.coordinate_subgroups() {
            assert_eq!(g.subgroup_order(&h) * g.subgroup_index(&h), g.order());
            let members = g.elements().filter(|e| g.contains(&h, e)).count() as u64;
            assert_eq!(members, g.subgroup_order(&h), "{spec} {:?}", h.levels);
        }
    }
}
