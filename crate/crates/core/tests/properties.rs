use std::collections::BTreeSet;

use proptest::prelude::*;

use nomvote_core::analysis::{find_obvious_manipulations, is_nom_veto, veto_sets, worst_case_suffices};
use nomvote_core::budget::Budget;
use nomvote_core::domain::{enumerate_preferences, AlternativeSpace, Preference, TopVector};
use nomvote_core::oracle::is_nom_brute;
use nomvote_core::rules::{gmv_from_median, is_onto_tops, Coalition, MedianScheme, RuleDescriptor};

fn scheme(n: usize, m: usize) -> impl Strategy<Value = Vec<usize>> {
    proptest::collection::vec(0..m, n - 1).prop_map(|mut a| {
        a.sort_unstable();
        a
    })
}

proptest! {
    #[test]
    fn top_and_bottom_are_placed((m, top, bottom) in (2usize..8).prop_flat_map(|m| (Just(m), 0..m, 0..m))) {
        let made = Preference::with_top_and_bottom(top, bottom, m);
        if top == bottom {
            prop_assert!(made.is_err());
        } else {
            let p = made.unwrap();
            prop_assert_eq!(p.top(), top);
            prop_assert_eq!(p.bottom(), bottom);
            prop_assert_eq!(p.ranking().iter().copied().collect::<BTreeSet<_>>(), (0..m).collect());
        }
    }

    #[test]
    fn top_vector_index_round_trips((n, m, idx) in (1usize..5, 2usize..5).prop_flat_map(|(n, m)| (Just(n), Just(m), 0..m.pow(n as u32)))) {
        let v = TopVector::from_index(idx, n, m);
        prop_assert_eq!(v.index(m), idx);
    }

    #[test]
    fn coalition_bitstring_round_trips(mask in 0u32..256) {
        let c = Coalition(mask);
        prop_assert_eq!(Coalition::from_bitstring(&c.to_bitstring(8)).unwrap(), c);
    }

    #[test]
    fn median_is_anonymous(alpha in scheme(4, 5), tops in proptest::collection::vec(0usize..5, 4), shift in 0usize..4) {
        let rule = RuleDescriptor::median(4, 5, alpha).unwrap();
        let mut rotated = tops.clone();
        rotated.rotate_left(shift);
        prop_assert_eq!(rule.eval(&TopVector(tops)).unwrap(), rule.eval(&TopVector(rotated)).unwrap());
    }

    #[test]
    fn median_equals_its_ballot_form(alpha in scheme(3, 4), tops in proptest::collection::vec(0usize..4, 3)) {
        let median = RuleDescriptor::median(3, 4, alpha.clone()).unwrap();
        let ballots = gmv_from_median(&MedianScheme::new(alpha), 3, 4);
        let gmv = RuleDescriptor::generalized_median(3, 4, ballots.ballots).unwrap();
        let tops = TopVector(tops);
        prop_assert_eq!(median.eval(&tops).unwrap(), gmv.eval(&tops).unwrap());
    }

    #[test]
    fn strong_vetoes_are_vetoes(table in proptest::collection::vec(0usize..3, 9)) {
        let rule = RuleDescriptor::table(2, AlternativeSpace::linear(3), table).unwrap();
        let report = veto_sets(&rule, &Budget::default()).unwrap();
        for agent in &report.agents {
            prop_assert!(agent.strongly_vetoed.is_subset(&agent.vetoed));
        }
    }

    #[test]
    fn veto_test_matches_brute_on_onto_tables(table in proptest::collection::vec(0usize..3, 9)) {
        let b = Budget::default();
        let rule = RuleDescriptor::table(2, AlternativeSpace::linear(3), table).unwrap();
        prop_assume!(is_onto_tops(&rule, &b).unwrap());
        prop_assert_eq!(is_nom_veto(&rule, &b).unwrap(), is_nom_brute(&rule, &b).unwrap().holds);
        prop_assert!(worst_case_suffices(&find_obvious_manipulations(&rule, &b).unwrap()));
    }
}

#[test]
fn preference_enumeration_is_every_permutation_once() {
    for m in 1..=6 {
        let prefs = enumerate_preferences(&AlternativeSpace::linear(m), &Budget::default()).unwrap();
        let distinct: BTreeSet<Vec<usize>> = prefs.iter().map(|p| p.ranking().to_vec()).collect();
        assert_eq!(distinct.len(), (1..=m).product::<usize>());
        assert_eq!(prefs.len(), distinct.len());
    }
}
