mod common;

use proptest::prelude::*;
use truthrel::ast::{parse_formula, print_formula, substitute};
use truthrel::harness::oracle;
use truthrel::prop_relevance::{is_t_relevant_prop, PropAnalysis, StuckMap};
use truthrel::Formula;

fn prop_formula() -> impl Strategy<Value = Formula> {
    let leaf = prop_oneof![Just("P"), Just("Q"), Just("R")].prop_map(Formula::prop);
    leaf.prop_recursive(4, 24, 2, |inner| {
        prop_oneof![
            inner.clone().prop_map(Formula::not),
            (inner.clone(), inner.clone()).prop_map(|(l, r)| Formula::and(l, r)),
            (inner.clone(), inner.clone()).prop_map(|(l, r)| Formula::or(l, r)),
            (inner.clone(), inner).prop_map(|(l, r)| Formula::implies(l, r)),
        ]
    })
}

proptest! {
    #[test]
    fn determining_sets_are_upward_closed(f in prop_formula(), mask in 0u8..8, extra in 0usize..3) {
        let a = PropAnalysis::new(&f, &StuckMap::new()).unwrap();
        let k = a.atoms().len();
        let set = (mask as usize) & ((1 << k) - 1);
        if k > 0 && a.determines(set) {
            prop_assert!(a.determines(set | (1 << (extra % k))));
        }
    }

    #[test]
    fn relevance_matches_oracle(f in prop_formula()) {
        let stuck = StuckMap::new();
        prop_assert_eq!(is_t_relevant_prop(&f, &stuck).unwrap(), oracle::prop_relevant(&f, &stuck).unwrap());
    }

    #[test]
    fn substitution_commutes(f in common::formula(4)) {
        let once = substitute(&substitute(&f, "x", "a"), "y", "b");
        let other = substitute(&substitute(&f, "y", "b"), "x", "a");
        prop_assert_eq!(once, other);
    }

    #[test]
    fn substitution_leaves_no_free_occurrence(f in common::formula(4)) {
        let g = substitute(&f, "x", "a");
        prop_assert!(!g.free_vars().contains("x"));
    }

    #[test]
    fn printing_is_stable(f in common::formula(5)) {
        let text = print_formula(&f);
        prop_assert_eq!(print_formula(&parse_formula(&text).unwrap()), text);
    }
}
