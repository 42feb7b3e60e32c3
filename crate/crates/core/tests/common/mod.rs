#![allow(dead_code)]

use std::collections::BTreeSet;

use poctl::algebra::{FuzzyMatrix, PossibilityVector};
use poctl::logic::{Interval, PathFormula, StateFormula};
use poctl::possibility::poss;
use poctl::{PossibilisticKripkeStructure, Possibility};
use rand::seq::SliceRandom;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub const VALUES: [&str; 5] = ["0", "0.2", "0.5", "0.7", "1"];
pub const ATOMS: [&str; 2] = ["a", "b"];

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn value(rng: &mut impl Rng) -> Possibility {
    poss(VALUES.choose(rng).unwrap())
}

/// A normal row: random values with one random entry raised to 1.
fn normal_row(rng: &mut impl Rng, n: usize) -> Vec<Possibility> {
    let mut row: Vec<Possibility> = (0..n).map(|_| value(rng)).collect();
    row[rng.gen_range(0..n)] = Possibility::ONE;
    row
}

/// A random valid structure with `n` states over the atoms `a` and `b`.
pub fn random_model_with(rng: &mut impl Rng, n: usize) -> PossibilisticKripkeStructure {
    let rows = (0..n).map(|_| normal_row(rng, n)).collect();
    let initial = PossibilityVector::new(normal_row(rng, n));
    let labels = (0..n)
        .map(|_| {
            ATOMS
                .iter()
                .filter(|_| rng.gen_bool(0.5))
                .map(|a| a.to_string())
                .collect::<BTreeSet<_>>()
        })
        .collect();
    PossibilisticKripkeStructure::new_validated(
        (0..n).map(|i| format!("s{i}")).collect(),
        FuzzyMatrix::from_rows(rows).unwrap(),
        initial,
        ATOMS.iter().map(|a| a.to_string()).collect(),
        labels,
    )
    .unwrap()
}

/// A random valid structure with 3 to 5 states.
pub fn random_model(rng: &mut impl Rng) -> PossibilisticKripkeStructure {
    let n = rng.gen_range(3..=5);
    random_model_with(rng, n)
}

/// The model corpus shared by the randomized criteria.
pub fn corpus(seed: u64, count: usize) -> Vec<PossibilisticKripkeStructure> {
    let mut r = rng(seed);
    (0..count).map(|_| random_model(&mut r)).collect()
}

pub fn bounds() -> Vec<Interval> {
    vec![
        Interval::positive(),
        Interval::exactly(Possibility::ONE),
        Interval::at_least(poss("0.5")),
        Interval::less_than(poss("0.7")),
        Interval::exactly(Possibility::ZERO),
    ]
}

fn atom(rng: &mut impl Rng) -> StateFormula {
    if rng.gen_ratio(1, 6) {
        StateFormula::True
    } else {
        StateFormula::atom(*ATOMS.choose(rng).unwrap())
    }
}

/// A random PoCTL state formula whose temporal nesting depth is at most `depth`.
/// Every formula with `depth ≥ 1` has a `Po` operator at its root or directly below
/// a Boolean connective.
pub fn random_poctl(rng: &mut impl Rng, depth: usize) -> StateFormula {
    if depth == 0 {
        return match rng.gen_range(0..4) {
            0 => atom(rng).not(),
            1 => atom(rng).and(atom(rng)),
            _ => atom(rng),
        };
    }
    match rng.gen_range(0..8) {
        0 => random_po(rng, depth).not(),
        1 => {
            let d = rng.gen_range(0..depth);
            random_po(rng, depth).and(random_poctl(rng, d))
        }
        _ => random_po(rng, depth),
    }
}

fn shallower_poctl(rng: &mut impl Rng, depth: usize) -> StateFormula {
    let d = rng.gen_range(0..depth);
    random_poctl(rng, d)
}

fn random_po(rng: &mut impl Rng, depth: usize) -> StateFormula {
    let bound = *bounds().choose(rng).unwrap();
    let path = match rng.gen_range(0..5) {
        0 => PathFormula::next(shallower_poctl(rng, depth)),
        1 => PathFormula::until(shallower_poctl(rng, depth), shallower_poctl(rng, depth)),
        2 => {
            let hold = shallower_poctl(rng, depth);
            let goal = shallower_poctl(rng, depth);
            PathFormula::bounded_until(hold, goal, rng.gen_range(0..=4))
        }
        3 => PathFormula::eventually(shallower_poctl(rng, depth)),
        _ => PathFormula::always(shallower_poctl(rng, depth)),
    };
    StateFormula::po(bound, path)
}

/// A random PoCTL path formula whose state operands have nesting depth below `depth`.
pub fn random_path(rng: &mut impl Rng, depth: usize) -> PathFormula {
    match random_po(rng, depth.max(1)) {
        StateFormula::Po(_, path) => *path,
        _ => unreachable!(),
    }
}

/// A random CTL state formula with temporal nesting depth at most `depth`.
pub fn random_ctl(rng: &mut impl Rng, depth: usize) -> StateFormula {
    if depth == 0 {
        return match rng.gen_range(0..4) {
            0 => atom(rng).not(),
            1 => atom(rng).or(atom(rng)),
            _ => atom(rng),
        };
    }
    match rng.gen_range(0..6) {
        0 => quantified(rng, depth).not(),
        1 => {
            let d = rng.gen_range(0..depth);
            quantified(rng, depth).and(random_ctl(rng, d))
        }
        2 => {
            let d = rng.gen_range(0..depth);
            quantified(rng, depth).or(random_ctl(rng, d))
        }
        _ => quantified(rng, depth),
    }
}

fn shallower_ctl(rng: &mut impl Rng, depth: usize) -> StateFormula {
    let d = rng.gen_range(0..depth);
    random_ctl(rng, d)
}

fn quantified(rng: &mut impl Rng, depth: usize) -> StateFormula {
    let path = match rng.gen_range(0..4) {
        0 => PathFormula::next(shallower_ctl(rng, depth)),
        1 => PathFormula::until(shallower_ctl(rng, depth), shallower_ctl(rng, depth)),
        2 => PathFormula::eventually(shallower_ctl(rng, depth)),
        _ => PathFormula::always(shallower_ctl(rng, depth)),
    };
    if rng.gen_bool(0.5) {
        StateFormula::exists(path)
    } else {
        StateFormula::forall(path)
    }
}
