//! CTL over crisp transition systems, with path quantifiers ranging over infinite
//! paths only.

use std::collections::{HashMap, VecDeque};

use super::CheckError;
use crate::logic::{
    to_enf, FormulaClass, PathFormula, StateFormula, TransformError, WellFormednessError,
};
use crate::state_set::StateSet;
use crate::ts::TransitionSystem;

/// Computes `Sat(Φ)` of a CTL formula. The formula is brought into existential
/// normal form first.
pub fn ctl_sat(ts: &TransitionSystem, formula: &StateFormula) -> Result<StateSet, CheckError> {
    if formula.class()? == FormulaClass::Poctl {
        return Err(WellFormednessError::ExpectedCtl.into());
    }
    for atom in formula.atoms() {
        if !ts.propositions().contains(atom) {
            return Err(CheckError::UnknownAtom(atom.to_string()));
        }
    }
    let enf = to_enf(formula).map_err(|e| match e {
        TransformError::NotCtl(w) => CheckError::WellFormedness(w),
        TransformError::InvalidLevel(_) => unreachable!("no level involved"),
    })?;
    let infinite = exists_always(ts, &StateSet::full(ts.num_states()));
    let mut ctx = Ctl {
        ts,
        infinite,
        memo: HashMap::new(),
    };
    Ok(ctx.state(&enf))
}

struct Ctl<'t> {
    ts: &'t TransitionSystem,
    /// States with at least one infinite path.
    infinite: StateSet,
    memo: HashMap<StateFormula, StateSet>,
}

impl Ctl<'_> {
    fn state(&mut self, f: &StateFormula) -> StateSet {
        if let Some(hit) = self.memo.get(f) {
            return hit.clone();
        }
        let n = self.ts.num_states();
        let out = match f {
            StateFormula::True => StateSet::full(n),
            StateFormula::Atom(a) => self.ts.states_labelled(a),
            StateFormula::Not(x) => self.state(x).complement(),
            StateFormula::And(a, b) => {
                let left = self.state(a);
                left.intersection(&self.state(b))
            }
            StateFormula::Exists(path) => match &**path {
                PathFormula::Next(x) => {
                    let target = self.state(x).intersection(&self.infinite);
                    StateSet::from_predicate(n, |s| {
                        self.ts.successors(s).iter().any(|&t| target.contains(t))
                    })
                }
                PathFormula::Until(a, b) => {
                    let hold = self.state(a);
                    let goal = self.state(b).intersection(&self.infinite);
                    exists_until(self.ts, &hold, &goal)
                }
                PathFormula::Always(x) => {
                    let inv = self.state(x);
                    exists_always(self.ts, &inv)
                }
                PathFormula::BoundedUntil(..) => unreachable!("not in ENF"),
            },
            StateFormula::Forall(_) | StateFormula::Po(..) => unreachable!("not in ENF"),
        };
        self.memo.insert(f.clone(), out.clone());
        out
    }
}

/// Least fixpoint `B ∪ (C ∩ pre(X))`, by backward search from `B`.
fn exists_until(ts: &TransitionSystem, hold: &StateSet, goal: &StateSet) -> StateSet {
    let mut reached = goal.clone();
    let mut queue: VecDeque<usize> = goal.iter().collect();
    while let Some(t) = queue.pop_front() {
        for &s in ts.predecessors(t) {
            if hold.contains(s) && reached.insert(s) {
                queue.push_back(s);
            }
        }
    }
    reached
}

/// Greatest fixpoint `C ∩ pre(X)`: repeatedly drop states with no successor left.
fn exists_always(ts: &TransitionSystem, inv: &StateSet) -> StateSet {
    let mut alive = inv.clone();
    let mut out_degree: Vec<usize> = (0..ts.num_states())
        .map(|s| {
            ts.successors(s)
                .iter()
                .filter(|&&t| alive.contains(t))
                .count()
        })
        .collect();
    let mut queue: VecDeque<usize> = alive.iter().filter(|&s| out_degree[s] == 0).collect();
    for &s in &queue {
        alive.remove(s);
    }
    while let Some(t) = queue.pop_front() {
        for &s in ts.predecessors(t) {
            out_degree[s] -= 1;
            if out_degree[s] == 0 && alive.remove(s) {
                queue.push_back(s);
            }
        }
    }
    alive
}
