//! PoCTL model checking by max-min matrix algebra.
//!
//! `Sat(Φ)` is computed bottom-up over the parse tree. Propositional nodes are
//! set operations; a node `Po_J(φ)` computes the vector `(Po(s ⊨ φ))_s` and keeps
//! the states whose value lies in `J`.

mod ctl;

use std::collections::HashMap;

use indexmap::IndexMap;
use thiserror::Error;

use crate::algebra::{
    apply, bounded_closure, reflexive_transitive_closure, FuzzyMatrix, PossibilityVector,
};
use crate::kripke::{PossibilisticKripkeStructure, Violation};
use crate::logic::{FormulaClass, Interval, PathFormula, StateFormula, WellFormednessError};
use crate::possibility::Possibility;
use crate::state_set::StateSet;

pub use ctl::ctl_sat;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CheckError {
    #[error("atomic proposition `{0}` is not declared by the model")]
    UnknownAtom(String),
    #[error(transparent)]
    WellFormedness(#[from] WellFormednessError),
    #[error("model is not a valid possibilistic Kripke structure: {}", .0.iter().map(|v| v.to_string()).collect::<Vec<_>>().join("; "))]
    InvalidModel(Vec<Violation>),
}

/// A partition `S₌₁ ∪ S₌₀ ∪ S?` of the states for an until computation with hold
/// set `C` and goal set `B`. Legal partitions satisfy `B ⊆ S₌₁`,
/// `S ∖ (C ∪ B) ⊆ S₌₀`, with `S₌₁` (resp. `S₌₀`) containing only states whose until
/// possibility is 1 (resp. 0).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UntilPartition {
    pub s_eq1: StateSet,
    pub s_eq0: StateSet,
    pub s_q: StateSet,
}

impl UntilPartition {
    /// Completes a partition from its two determined parts.
    pub fn from_determined(s_eq1: StateSet, s_eq0: StateSet) -> Self {
        let s_q = s_eq1.union(&s_eq0).complement();
        UntilPartition { s_eq1, s_eq0, s_q }
    }
}

/// `S₌₁ = B`, `S₌₀ = S ∖ (C ∪ B)`, `S? = C ∖ B`.
pub fn default_partition(hold: &StateSet, goal: &StateSet) -> UntilPartition {
    UntilPartition {
        s_eq1: goal.clone(),
        s_eq0: hold.union(goal).complement(),
        s_q: hold.difference(goal),
    }
}

/// `(Po(s ⊨ ○B))_s = P ∘ χ_B`.
pub fn po_next(m: &PossibilisticKripkeStructure, goal: &StateSet) -> PossibilityVector {
    apply(m.transitions(), &PossibilityVector::characteristic(goal))
        .expect("goal set over the model's states")
}

/// `Po(s ⊨ C U B)` for every state, using the default partition.
pub fn po_until(
    m: &PossibilisticKripkeStructure,
    hold: &StateSet,
    goal: &StateSet,
) -> PossibilityVector {
    po_until_with(m, goal, &default_partition(hold, goal))
}

/// `Po(s ⊨ C U≤n B)` for every state, using the default partition.
pub fn po_bounded_until(
    m: &PossibilisticKripkeStructure,
    hold: &StateSet,
    goal: &StateSet,
    n: usize,
) -> PossibilityVector {
    po_bounded_until_with(m, goal, &default_partition(hold, goal), n)
}

/// Unbounded until over a given legal partition: `χ? ∘ P?* ∘ P ∘ χ_B` on `S?`.
pub fn po_until_with(
    m: &PossibilisticKripkeStructure,
    goal: &StateSet,
    partition: &UntilPartition,
) -> PossibilityVector {
    until_vector(m, goal, partition, reflexive_transitive_closure)
}

/// Bounded until over a given legal partition.
///
/// A path from `s ∈ S?` satisfies `C U≤n B` iff it reaches `B` within `n` steps
/// while staying in `S?` before that, so on `S?` the value is
/// `χ? ∘ P?^{≤n-1} ∘ P ∘ χ_B` for `n ≥ 1` and 0 for `n = 0`.
pub fn po_bounded_until_with(
    m: &PossibilisticKripkeStructure,
    goal: &StateSet,
    partition: &UntilPartition,
    n: usize,
) -> PossibilityVector {
    match n.checked_sub(1) {
        Some(steps) => until_vector(m, goal, partition, |q| bounded_closure(q, steps)),
        None => {
            let mut x = PossibilityVector::characteristic(&partition.s_eq1);
            for s in partition.s_q.iter() {
                x.set(s, Possibility::ZERO);
            }
            x
        }
    }
}

/// Extracts the square submatrix on `keep` (in index order).
fn submatrix(p: &FuzzyMatrix, keep: &[usize]) -> FuzzyMatrix {
    let k = keep.len();
    let mut out = FuzzyMatrix::zeros(k);
    for (a, &i) in keep.iter().enumerate() {
        for (b, &j) in keep.iter().enumerate() {
            out.set(a, b, p.get(i, j));
        }
    }
    out
}

fn until_vector(
    m: &PossibilisticKripkeStructure,
    goal: &StateSet,
    partition: &UntilPartition,
    closure: impl Fn(&FuzzyMatrix) -> FuzzyMatrix,
) -> PossibilityVector {
    let one_step = po_next(m, goal);
    let mut x = PossibilityVector::characteristic(&partition.s_eq1);
    let q: Vec<usize> = partition.s_q.iter().collect();
    if q.is_empty() {
        return x;
    }
    // P? is zero outside S? × S?, so its closure only matters on that block.
    let star = closure(&submatrix(m.transitions(), &q));
    let restricted = PossibilityVector::new(q.iter().map(|&s| one_step[s]).collect());
    let values = apply(&star, &restricted).expect("square block");
    for (a, &s) in q.iter().enumerate() {
        x.set(s, values[a]);
    }
    x
}

/// `Po(s ⊨ □B)` for every state.
///
/// A path that stays in `B` forever has the value of some lasso inside `B`, and a
/// lasso's value is the minimum of its stem and its cycle. With `Q` the
/// restriction of `P` to `B`, the value at `s ∈ B` is therefore
/// `max_t min(Q*(s,t), Q⁺(t,t))`.
pub fn po_always(m: &PossibilisticKripkeStructure, inv: &StateSet) -> PossibilityVector {
    let mut x = PossibilityVector::zeros(m.num_states());
    let members: Vec<usize> = inv.iter().collect();
    if members.is_empty() {
        return x;
    }
    let q = submatrix(m.transitions(), &members);
    let star = reflexive_transitive_closure(&q);
    // Q⁺(t,t) = max_k min(Q(t,k), Q*(k,t))
    let k = members.len();
    let cycle_value = PossibilityVector::new(
        (0..k)
            .map(|t| {
                (0..k)
                    .map(|j| q.get(t, j).min(star.get(j, t)))
                    .max()
                    .unwrap_or(Possibility::ZERO)
            })
            .collect(),
    );
    let values = apply(&star, &cycle_value).expect("square block");
    for (a, &s) in members.iter().enumerate() {
        x.set(s, values[a]);
    }
    x
}

/// `{s | v[s] ∈ J}`.
pub fn check_bound(values: &PossibilityVector, bound: &Interval) -> StateSet {
    StateSet::from_predicate(values.dim(), |s| bound.contains(values[s]))
}

/// The outcome of checking a state formula.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckResult {
    /// `Sat(Φ)`.
    pub sat: StateSet,
    /// The possibility vector of every distinct `Po` subformula, in evaluation order.
    pub po_values: IndexMap<StateFormula, PossibilityVector>,
}

impl CheckResult {
    /// The possibility vector computed for a `Po` subformula.
    pub fn values_of(&self, po_formula: &StateFormula) -> Option<&PossibilityVector> {
        self.po_values.get(po_formula)
    }
}

/// Computes `Sat(Φ)` for a PoCTL formula.
pub fn sat(
    m: &PossibilisticKripkeStructure,
    formula: &StateFormula,
) -> Result<CheckResult, CheckError> {
    if formula.class()? == FormulaClass::Ctl {
        return Err(WellFormednessError::ExpectedPoctl.into());
    }
    let violations = m.validate();
    if !violations.is_empty() {
        return Err(CheckError::InvalidModel(violations));
    }
    for atom in formula.atoms() {
        if !m.propositions().contains(atom) {
            return Err(CheckError::UnknownAtom(atom.to_string()));
        }
    }
    let mut ctx = Context {
        model: m,
        memo: HashMap::new(),
        po_values: IndexMap::new(),
    };
    let sat = ctx.state(formula);
    Ok(CheckResult {
        sat,
        po_values: ctx.po_values,
    })
}

/// Computes `(Po(s ⊨ φ))_s` for a path formula whose state subformulae are PoCTL.
pub fn path_values(
    m: &PossibilisticKripkeStructure,
    path: &PathFormula,
) -> Result<PossibilityVector, CheckError> {
    let wrapper = StateFormula::po(Interval::at_least(Possibility::ZERO), path.clone());
    let result = sat(m, &wrapper)?;
    Ok(result.po_values[&wrapper].clone())
}

struct Context<'m> {
    model: &'m PossibilisticKripkeStructure,
    memo: HashMap<StateFormula, StateSet>,
    po_values: IndexMap<StateFormula, PossibilityVector>,
}

impl Context<'_> {
    fn state(&mut self, f: &StateFormula) -> StateSet {
        if let Some(hit) = self.memo.get(f) {
            return hit.clone();
        }
        let n = self.model.num_states();
        let result = match f {
            StateFormula::True => StateSet::full(n),
            StateFormula::Atom(a) => self.model.states_labelled(a),
            StateFormula::Not(x) => self.state(x).complement(),
            StateFormula::And(a, b) => {
                let left = self.state(a);
                left.intersection(&self.state(b))
            }
            StateFormula::Po(bound, path) => {
                let values = self.path(path);
                let sat = check_bound(&values, bound);
                self.po_values.insert(f.clone(), values);
                sat
            }
            StateFormula::Exists(_) | StateFormula::Forall(_) => {
                unreachable!("CTL quantifiers are rejected before evaluation")
            }
        };
        self.memo.insert(f.clone(), result.clone());
        result
    }

    fn path(&mut self, p: &PathFormula) -> PossibilityVector {
        match p {
            PathFormula::Next(x) => {
                let goal = self.state(x);
                po_next(self.model, &goal)
            }
            PathFormula::Until(a, b) => {
                let hold = self.state(a);
                let goal = self.state(b);
                po_until(self.model, &hold, &goal)
            }
            PathFormula::BoundedUntil(a, b, n) => {
                let hold = self.state(a);
                let goal = self.state(b);
                po_bounded_until(self.model, &hold, &goal, *n)
            }
            PathFormula::Always(x) => {
                let inv = self.state(x);
                po_always(self.model, &inv)
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kripke::tests::treatment;
    use crate::logic::parse_poctl;
    use crate::possibility::poss;

    fn set(idx: &[usize]) -> StateSet {
        StateSet::from_indices(3, idx.iter().copied())
    }

    fn vals(v: &[&str]) -> PossibilityVector {
        PossibilityVector::new(v.iter().map(|s| poss(s)).collect())
    }

    const POOR: usize = 0;
    const FAIR: usize = 1;
    const EXCELLENT: usize = 2;

    #[test]
    fn next_step_reads_goal_column() {
        let m = treatment();
        assert_eq!(po_next(&m, &set(&[EXCELLENT])), vals(&["1", "1", "0.5"]));
        assert_eq!(po_next(&m, &set(&[])), PossibilityVector::zeros(3));
        assert_eq!(po_next(&m, &StateSet::full(3)), PossibilityVector::ones(3));
    }

    #[test]
    fn default_partition_of_bounded_example() {
        let p = default_partition(&set(&[POOR]), &set(&[EXCELLENT]));
        assert_eq!(p.s_eq1, set(&[EXCELLENT]));
        assert_eq!(p.s_eq0, set(&[FAIR]));
        assert_eq!(p.s_q, set(&[POOR]));
        assert!(default_partition(&set(&[]), &set(&[FAIR])).s_q.is_empty());
        let all = default_partition(&set(&[POOR]), &StateSet::full(3));
        assert!(all.s_q.is_empty() && all.s_eq0.is_empty());
    }

    #[test]
    fn bounded_until_in_a_week() {
        let m = treatment();
        let v = po_bounded_until(&m, &set(&[POOR]), &set(&[EXCELLENT]), 7);
        assert_eq!(v[POOR], Possibility::ONE);
        assert_eq!(v, vals(&["1", "0", "1"]));
    }

    #[test]
    fn bounded_until_with_zero_steps_is_the_goal_indicator() {
        let m = treatment();
        let v = po_bounded_until(&m, &StateSet::full(3), &set(&[EXCELLENT]), 0);
        assert_eq!(v, vals(&["0", "0", "1"]));
        let v1 = po_bounded_until(&m, &StateSet::full(3), &set(&[EXCELLENT]), 1);
        assert_eq!(v1, vals(&["1", "1", "1"]));
    }

    #[test]
    fn eventually_excellent() {
        let m = treatment();
        let v = po_until(&m, &StateSet::full(3), &set(&[EXCELLENT]));
        assert_eq!(v, vals(&["1", "1", "1"]));
        assert_eq!(
            po_until(&m, &StateSet::full(3), &set(&[])),
            PossibilityVector::zeros(3)
        );
    }

    #[test]
    fn always_values() {
        let m = treatment();
        let v = po_always(&m, &set(&[POOR, FAIR]));
        assert_eq!(v[POOR], poss("0.5"));
        assert_eq!(v, vals(&["0.5", "0.5", "0"]));
        assert_eq!(po_always(&m, &set(&[POOR])), vals(&["0.2", "0", "0"]));
        assert_eq!(
            po_always(&m, &StateSet::full(3)),
            PossibilityVector::ones(3)
        );
        assert_eq!(
            po_always(&m, &set(&[FAIR, EXCELLENT]))[POOR],
            Possibility::ZERO
        );
    }

    #[test]
    fn bound_filtering() {
        let v = vals(&["1", "1", "0.5"]);
        assert_eq!(
            check_bound(&v, &Interval::exactly(Possibility::ONE)),
            set(&[0, 1])
        );
        assert_eq!(
            check_bound(&v, &Interval::at_least(Possibility::ZERO)),
            StateSet::full(3)
        );
        let w = vals(&["0.2", "0.5", "1"]);
        let j = Interval::new(poss("0.2"), false, poss("0.5"), true).unwrap();
        assert_eq!(check_bound(&w, &j), set(&[1]));
    }

    #[test]
    fn sat_on_treatment_model() {
        let m = treatment();
        let f = parse_poctl(r#"Po=1 [ F "excellent" ]"#).unwrap();
        assert_eq!(sat(&m, &f).unwrap().sat, StateSet::full(3));
        assert_eq!(sat(&m, &StateFormula::True).unwrap().sat, StateSet::full(3));
        let g = parse_poctl(r#"Po=0 [ G !"excellent" ]"#).unwrap();
        let r = sat(&m, &g).unwrap();
        assert!(!r.sat.contains(POOR));
        assert_eq!(r.values_of(&g).unwrap()[POOR], poss("0.5"));
    }

    #[test]
    fn nested_formulae_record_every_po_vector() {
        let m = treatment();
        let f = parse_poctl(r#"Po=1 [ G Po=1 [ F "excellent" ] ]"#).unwrap();
        let r = sat(&m, &f).unwrap();
        assert!(r.sat.contains(POOR));
        assert_eq!(r.po_values.len(), 2);
        // inner vectors come first
        assert_eq!(
            r.po_values.keys().next().unwrap(),
            &parse_poctl(r#"Po=1 [ F "excellent" ]"#).unwrap()
        );
    }

    #[test]
    fn sat_errors() {
        let m = treatment();
        assert_eq!(
            sat(&m, &parse_poctl("Po>0 [ X sick ]").unwrap()),
            Err(CheckError::UnknownAtom("sick".into()))
        );
        let ctl = StateFormula::exists(PathFormula::next(StateFormula::atom("poor")));
        assert!(matches!(sat(&m, &ctl), Err(CheckError::WellFormedness(_))));
    }

    #[test]
    fn path_values_wraps_any_path() {
        let m = treatment();
        let v = path_values(&m, &PathFormula::always(StateFormula::atom("poor").not())).unwrap();
        assert_eq!(v[POOR], Possibility::ZERO);
    }
}
