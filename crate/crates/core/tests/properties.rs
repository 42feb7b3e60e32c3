mod common;

use std::collections::BTreeSet;

use poctl::checker::{default_partition, po_until, po_until_with, sat, UntilPartition};
use poctl::logic::parse_poctl;
use poctl::oracle::{oracle_repeated, oracle_sat, OracleBudget, RepeatedMode};
use poctl::{parse_model, Possibility, StateSet};
use rand::Rng;

use common::{corpus, random_poctl, rng};

/// States that can reach `goal` through `hold`, by plain graph search.
fn can_reach(
    m: &poctl::PossibilisticKripkeStructure,
    hold: &StateSet,
    goal: &StateSet,
) -> StateSet {
    let mut reach = goal.clone();
    loop {
        let grown = StateSet::from_predicate(m.num_states(), |s| {
            reach.contains(s) || (hold.contains(s) && m.successors(s).any(|t| reach.contains(t)))
        });
        if grown == reach {
            return reach;
        }
        reach = grown;
    }
}

#[test]
fn enlarging_the_zero_part_changes_nothing() {
    let mut r = rng(11);
    for m in corpus(11, 300) {
        let n = m.num_states();
        let hold = StateSet::from_predicate(n, |_| r.gen_bool(0.5));
        let goal = StateSet::from_predicate(n, |_| r.gen_bool(0.25));
        let base = default_partition(&hold, &goal);
        let dead = can_reach(&m, &hold, &goal).complement();
        let enlarged = UntilPartition::from_determined(base.s_eq1.clone(), base.s_eq0.union(&dead));
        assert_eq!(
            po_until_with(&m, &goal, &enlarged),
            po_until(&m, &hold, &goal),
            "{}",
            poctl::write_model(&m)
        );
    }
}

#[test]
fn checker_values_come_from_the_model() {
    let mut r = rng(12);
    for m in corpus(12, 300) {
        let mut allowed: BTreeSet<Possibility> = m.transitions().entries().collect();
        allowed.extend(m.initial().iter());
        allowed.insert(Possibility::ZERO);
        allowed.insert(Possibility::ONE);
        for _ in 0..10 {
            let phi = random_poctl(&mut r, 3);
            for values in sat(&m, &phi).unwrap().po_values.values() {
                assert!(values.iter().all(|v| allowed.contains(&v)), "{phi}");
            }
        }
    }
}

#[test]
fn larger_budgets_do_not_change_oracle_values() {
    let mut r = rng(13);
    for m in corpus(13, 150) {
        let n = m.num_states();
        let doubled = OracleBudget {
            max_stem: 2 * n,
            max_cycle: 2 * n,
            max_prefix: 2 * n,
        };
        for _ in 0..5 {
            let phi = random_poctl(&mut r, 2);
            let exact = oracle_sat(&m, &phi, OracleBudget::exact_for(n)).unwrap();
            let more = oracle_sat(&m, &phi, doubled).unwrap();
            assert!(exact.exact());
            assert_eq!(exact, more, "{phi}");
        }
    }
}

#[test]
fn small_budgets_give_lower_bounds() {
    let mut r = rng(14);
    for m in corpus(14, 150) {
        let phi = random_poctl(&mut r, 1);
        let tight = OracleBudget {
            max_stem: 1,
            max_cycle: 1,
            max_prefix: 1,
        };
        let exact = oracle_sat(&m, &phi, OracleBudget::exact_for(m.num_states())).unwrap();
        let low = oracle_sat(&m, &phi, tight).unwrap();
        for (f, values) in &exact.po_values {
            let bounded = low.values_of(f).unwrap();
            for (e, b) in values.iter().zip(bounded) {
                assert!(b.value <= e.value);
                assert!(!b.exact || b.value == e.value);
            }
        }
    }
}

#[test]
fn repeated_oracle_trivial_targets() {
    for m in corpus(15, 100) {
        let n = m.num_states();
        let budget = OracleBudget::exact_for(n);
        for s in 0..n {
            for mode in [
                RepeatedMode::AlwaysEventually,
                RepeatedMode::EventuallyAlways,
            ] {
                let all = oracle_repeated(&m, s, &StateSet::full(n), mode, budget);
                assert!(all.value.is_one());
                let none = oracle_repeated(&m, s, &StateSet::empty(n), mode, budget);
                assert!(none.value.is_zero());
            }
        }
    }
}

/// A state that can loop forever where `a` stays reachable with possibility 1, yet
/// no path visits `a` more than once.
#[test]
fn staying_near_a_is_not_visiting_it_repeatedly() {
    let m = parse_model(
        "states: q a t\n\
         init: q=1\n\
         label: a = {a}\n\
         trans: q -> q = 1\n\
         trans: q -> a = 1\n\
         trans: a -> t = 1\n\
         trans: t -> t = 1\n",
    )
    .unwrap();
    let budget = OracleBudget::exact_for(3);
    let target = m.states_labelled("a");
    for text in ["Po=1 [ G Po=1 [ F a ] ]", "Po>0 [ G Po>0 [ F a ] ]"] {
        let phi = parse_poctl(text).unwrap();
        assert!(sat(&m, &phi).unwrap().sat.contains(0), "{text}");
    }
    let gf = oracle_repeated(&m, 0, &target, RepeatedMode::AlwaysEventually, budget);
    assert!(gf.value.is_zero());
    // persistence behaves: nothing stays in `a`
    let fg = oracle_repeated(&m, 0, &target, RepeatedMode::EventuallyAlways, budget);
    assert!(fg.value.is_zero());
    let phi = parse_poctl("Po>0 [ F Po>0 [ G a ] ]").unwrap();
    assert!(!sat(&m, &phi).unwrap().sat.contains(0));
}
