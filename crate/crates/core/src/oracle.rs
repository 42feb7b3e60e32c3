//! A brute-force reference for path possibilities.
//!
//! Values are computed straight from the path semantics: enumerate loop-free
//! prefixes and simple lassos of `M_s`, take each one's cylinder or lasso
//! possibility, and maximize. Nothing here touches the matrix closures, so the
//! oracle can be used to cross-check the checker.
//!
//! Restricting to loop-free prefixes and simple lassos loses nothing: cutting a
//! loop out of a witness path never lowers its minimum, and the path still
//! satisfies the formula.

use crate::algebra::PossibilityVector;
use crate::checker::{check_bound, CheckError};
use crate::kripke::{ModelError, PossibilisticKripkeStructure};
use crate::lasso::Lasso;
use crate::logic::{PathFormula, StateFormula, WellFormednessError};
use crate::possibility::Possibility;
use crate::state_set::StateSet;

/// Enumeration limits. A limit at or above the number of states is never reached.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OracleBudget {
    /// Longest lasso stem, in states.
    pub max_stem: usize,
    /// Longest lasso cycle, in states.
    pub max_cycle: usize,
    /// Longest finite prefix, in transitions.
    pub max_prefix: usize,
}

impl OracleBudget {
    /// The smallest budget that is exact for a model with `states` states.
    pub fn exact_for(states: usize) -> Self {
        OracleBudget {
            max_stem: states,
            max_cycle: states,
            max_prefix: states,
        }
    }
}

/// A possibility found by enumeration. When `exact` is false some candidate
/// paths were cut off by the budget and `value` is only a lower bound.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OracleValue {
    pub value: Possibility,
    pub exact: bool,
}

impl OracleValue {
    const NONE: OracleValue = OracleValue {
        value: Possibility::ZERO,
        exact: true,
    };

    fn offer(&mut self, candidate: Possibility) {
        self.value = self.value.max(candidate);
    }

    fn absorb(&mut self, other: OracleValue) {
        self.value = self.value.max(other.value);
        self.exact &= other.exact;
    }
}

/// Infinite-horizon properties outside PoCTL.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RepeatedMode {
    /// `□◇B`: visit `B` infinitely often.
    AlwaysEventually,
    /// `◇□B`: eventually stay in `B` forever.
    EventuallyAlways,
}

/// `Po(s ⊨ φ)` where the state subformulae of `φ` are already resolved to sets.
///
/// `resolve` maps each direct state operand of `φ` to its satisfaction set.
pub fn oracle_po(
    m: &PossibilisticKripkeStructure,
    s: usize,
    path: &PathFormula,
    resolve: &mut dyn FnMut(&StateFormula) -> StateSet,
    budget: OracleBudget,
) -> OracleValue {
    let n = m.num_states();
    let ms = m.rebase_initial_index(s);
    match path {
        PathFormula::Next(x) => {
            let goal = resolve(x);
            let mut best = OracleValue::NONE;
            for t in goal.iter() {
                best.offer(cylinder(&ms, &[s, t]));
            }
            best
        }
        PathFormula::Until(a, b) => {
            let hold = resolve(a);
            let goal = resolve(b);
            prefixes_to(&ms, s, &hold, &goal, budget.max_prefix, n)
        }
        PathFormula::BoundedUntil(a, b, k) => {
            let hold = resolve(a);
            let goal = resolve(b);
            let cap = (*k).min(budget.max_prefix);
            let mut v = prefixes_to(&ms, s, &hold, &goal, cap, n);
            if cap == *k {
                // cut off by the formula's own bound, not by the budget
                v.exact = true;
            }
            v
        }
        PathFormula::Always(x) => {
            let inv = resolve(x);
            lassos_within(&ms, s, &inv, budget)
        }
    }
}

/// `Po(s ⊨ □◇B)` or `Po(s ⊨ ◇□B)`.
pub fn oracle_repeated(
    m: &PossibilisticKripkeStructure,
    s: usize,
    target: &StateSet,
    mode: RepeatedMode,
    budget: OracleBudget,
) -> OracleValue {
    let ms = m.rebase_initial_index(s);
    let everything = StateSet::full(m.num_states());
    let mut best = OracleValue::NONE;
    for t in 0..m.num_states() {
        // the best prefix from s ending in t
        let reach = prefixes_to(
            &ms,
            s,
            &everything,
            &StateSet::from_indices(m.num_states(), [t]),
            budget.max_prefix,
            m.num_states(),
        );
        if reach.value.is_zero() && reach.exact {
            continue;
        }
        let tail = match mode {
            RepeatedMode::AlwaysEventually if target.contains(t) => {
                cycles_through(m, t, budget.max_cycle)
            }
            RepeatedMode::AlwaysEventually => continue,
            RepeatedMode::EventuallyAlways => {
                lassos_within(&m.rebase_initial_index(t), t, target, budget)
            }
        };
        best.absorb(OracleValue {
            value: reach.value.min(tail.value),
            exact: reach.exact && tail.exact,
        });
    }
    best
}

/// The oracle's satisfaction set of a PoCTL formula together with the possibility
/// vector of every `Po` subformula, in evaluation order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OracleResult {
    pub sat: StateSet,
    pub po_values: Vec<(StateFormula, Vec<OracleValue>)>,
}

impl OracleResult {
    pub fn values_of(&self, po_formula: &StateFormula) -> Option<&[OracleValue]> {
        self.po_values
            .iter()
            .find(|(f, _)| f == po_formula)
            .map(|(_, v)| v.as_slice())
    }

    /// Whether no value anywhere was cut off by the budget.
    pub fn exact(&self) -> bool {
        self.po_values
            .iter()
            .all(|(_, v)| v.iter().all(|x| x.exact))
    }

    /// The value vector of a `Po` subformula, dropping exactness flags.
    pub fn vector_of(&self, po_formula: &StateFormula) -> Option<PossibilityVector> {
        self.values_of(po_formula)
            .map(|v| PossibilityVector::new(v.iter().map(|x| x.value).collect()))
    }
}

/// Evaluates a PoCTL formula entirely by enumeration.
pub fn oracle_sat(
    m: &PossibilisticKripkeStructure,
    formula: &StateFormula,
    budget: OracleBudget,
) -> Result<OracleResult, CheckError> {
    if formula.class()? == crate::logic::FormulaClass::Ctl {
        return Err(WellFormednessError::ExpectedPoctl.into());
    }
    for atom in formula.atoms() {
        if !m.propositions().contains(atom) {
            return Err(CheckError::UnknownAtom(atom.to_string()));
        }
    }
    let mut po_values = Vec::new();
    let sat = eval(m, formula, budget, &mut po_values);
    Ok(OracleResult { sat, po_values })
}

fn eval(
    m: &PossibilisticKripkeStructure,
    f: &StateFormula,
    budget: OracleBudget,
    out: &mut Vec<(StateFormula, Vec<OracleValue>)>,
) -> StateSet {
    let n = m.num_states();
    match f {
        StateFormula::True => StateSet::full(n),
        StateFormula::Atom(a) => StateSet::from_predicate(n, |s| m.labels(s).contains(a)),
        StateFormula::Not(x) => eval(m, x, budget, out).complement(),
        StateFormula::And(a, b) => {
            let left = eval(m, a, budget, out);
            left.intersection(&eval(m, b, budget, out))
        }
        StateFormula::Po(bound, path) => {
            let operands: Vec<(StateFormula, StateSet)> = path
                .operands()
                .into_iter()
                .map(|x| (x.clone(), eval(m, x, budget, out)))
                .collect();
            let mut resolve = |x: &StateFormula| {
                operands
                    .iter()
                    .find(|(g, _)| g == x)
                    .map(|(_, set)| set.clone())
                    .expect("operand resolved above")
            };
            let values: Vec<OracleValue> = (0..n)
                .map(|s| oracle_po(m, s, path, &mut resolve, budget))
                .collect();
            let vector = PossibilityVector::new(values.iter().map(|v| v.value).collect());
            if !out.iter().any(|(g, _)| g == f) {
                out.push((f.clone(), values));
            }
            check_bound(&vector, bound)
        }
        StateFormula::Exists(_) | StateFormula::Forall(_) => {
            unreachable!("CTL quantifiers are rejected up front")
        }
    }
}

fn cylinder(ms: &PossibilisticKripkeStructure, path: &[usize]) -> Possibility {
    ms.cylinder_possibility(path)
        .expect("indices come from the model")
}

fn lasso_value(m: &PossibilisticKripkeStructure, stem: &[usize], cycle: &[usize]) -> Possibility {
    let lasso = Lasso::new(stem.to_vec(), cycle.to_vec()).expect("nonempty cycle");
    match m.lasso_possibility(&lasso) {
        Ok(v) => v,
        Err(ModelError::MalformedLasso(_)) => Possibility::ZERO,
        Err(e) => panic!("{e}"),
    }
}

/// Best loop-free prefix `s = s₀ … s_k` with `k ≤ max_len`, `s_k ∈ goal` and every
/// earlier state in `hold ∖ goal`.
fn prefixes_to(
    ms: &PossibilisticKripkeStructure,
    s: usize,
    hold: &StateSet,
    goal: &StateSet,
    max_len: usize,
    n: usize,
) -> OracleValue {
    let mut best = OracleValue::NONE;
    let mut path = vec![s];
    let mut on_path = vec![false; n];
    on_path[s] = true;
    dfs_prefix(ms, hold, goal, max_len, &mut path, &mut on_path, &mut best);
    best
}

fn dfs_prefix(
    ms: &PossibilisticKripkeStructure,
    hold: &StateSet,
    goal: &StateSet,
    max_len: usize,
    path: &mut Vec<usize>,
    on_path: &mut [bool],
    best: &mut OracleValue,
) {
    let last = *path.last().unwrap();
    let value = cylinder(ms, path);
    if value.is_zero() {
        return;
    }
    if goal.contains(last) {
        best.offer(value);
        return;
    }
    if !hold.contains(last) {
        return;
    }
    let len = path.len() - 1;
    for t in ms.successors(last) {
        if on_path[t] {
            continue;
        }
        if len == max_len {
            best.exact = false;
            return;
        }
        path.push(t);
        on_path[t] = true;
        dfs_prefix(ms, hold, goal, max_len, path, on_path, best);
        on_path[t] = false;
        path.pop();
    }
}

/// Best simple lasso from `s` whose states all lie in `inv`: a simple path
/// `s … v` inside `inv` followed by an edge back to some earlier state on it.
fn lassos_within(
    ms: &PossibilisticKripkeStructure,
    s: usize,
    inv: &StateSet,
    budget: OracleBudget,
) -> OracleValue {
    let mut best = OracleValue::NONE;
    if !inv.contains(s) {
        return best;
    }
    let mut path = vec![s];
    let mut on_path = vec![false; ms.num_states()];
    on_path[s] = true;
    dfs_lasso(ms, inv, budget, &mut path, &mut on_path, &mut best);
    best
}

fn dfs_lasso(
    ms: &PossibilisticKripkeStructure,
    inv: &StateSet,
    budget: OracleBudget,
    path: &mut Vec<usize>,
    on_path: &mut [bool],
    best: &mut OracleValue,
) {
    let last = *path.last().unwrap();
    for t in ms.successors(last) {
        if !inv.contains(t) {
            continue;
        }
        if on_path[t] {
            let split = path.iter().position(|&x| x == t).unwrap();
            let (stem, cycle) = path.split_at(split);
            if stem.len() <= budget.max_stem && cycle.len() <= budget.max_cycle {
                best.offer(lasso_value(ms, stem, cycle));
            } else {
                best.exact = false;
            }
            continue;
        }
        if path.len() >= budget.max_stem + budget.max_cycle {
            best.exact = false;
            continue;
        }
        path.push(t);
        on_path[t] = true;
        dfs_lasso(ms, inv, budget, path, on_path, best);
        on_path[t] = false;
        path.pop();
    }
}

/// Best simple cycle through `t`.
fn cycles_through(m: &PossibilisticKripkeStructure, t: usize, max_cycle: usize) -> OracleValue {
    let mt = m.rebase_initial_index(t);
    let mut best = OracleValue::NONE;
    let mut path = vec![t];
    let mut on_path = vec![false; m.num_states()];
    on_path[t] = true;
    dfs_cycle(&mt, t, max_cycle, &mut path, &mut on_path, &mut best);
    best
}

fn dfs_cycle(
    mt: &PossibilisticKripkeStructure,
    t: usize,
    max_cycle: usize,
    path: &mut Vec<usize>,
    on_path: &mut [bool],
    best: &mut OracleValue,
) {
    let last = *path.last().unwrap();
    for u in mt.successors(last) {
        if u == t {
            best.offer(lasso_value(mt, &[], path));
            continue;
        }
        if on_path[u] {
            continue;
        }
        if path.len() >= max_cycle {
            best.exact = false;
            continue;
        }
        path.push(u);
        on_path[u] = true;
        dfs_cycle(mt, t, max_cycle, path, on_path, best);
        on_path[u] = false;
        path.pop();
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kripke::tests::treatment;
    use crate::logic::parse_poctl;
    use crate::possibility::poss;

    fn exact(m: &PossibilisticKripkeStructure) -> OracleBudget {
        OracleBudget::exact_for(m.num_states())
    }

    fn values(m: &PossibilisticKripkeStructure, text: &str) -> Vec<Possibility> {
        let f = parse_poctl(&format!("Po>=0 [ {text} ]")).unwrap();
        let r = oracle_sat(m, &f, exact(m)).unwrap();
        assert!(r.exact());
        r.values_of(&f).unwrap().iter().map(|v| v.value).collect()
    }

    #[test]
    fn treatment_values() {
        let m = treatment();
        assert_eq!(
            values(&m, "X excellent"),
            vec![poss("1"), poss("1"), poss("0.5")]
        );
        assert_eq!(values(&m, "poor U<=7 excellent")[0], Possibility::ONE);
        assert_eq!(values(&m, "F excellent"), vec![Possibility::ONE; 3]);
        assert_eq!(values(&m, "G !excellent")[0], poss("0.5"));
        assert_eq!(values(&m, "G poor")[0], poss("0.2"));
        assert_eq!(
            values(&m, "true U<=0 excellent"),
            vec![poss("0"), poss("0"), poss("1")]
        );
    }

    #[test]
    fn repeated_visits() {
        let m = treatment();
        let b = m.states_labelled("poor");
        let ae = oracle_repeated(&m, 0, &b, RepeatedMode::AlwaysEventually, exact(&m));
        assert_eq!(
            ae,
            OracleValue {
                value: poss("0.5"),
                exact: true
            }
        );
        let ea = oracle_repeated(&m, 0, &b, RepeatedMode::EventuallyAlways, exact(&m));
        assert_eq!(ea.value, poss("0.2"));
    }

    #[test]
    fn tight_budget_is_reported() {
        let m = treatment();
        let f = parse_poctl("Po>=0 [ G !excellent ]").unwrap();
        let budget = OracleBudget {
            max_stem: 0,
            max_cycle: 1,
            max_prefix: 0,
        };
        let r = oracle_sat(&m, &f, budget).unwrap();
        assert!(!r.exact());
        assert_eq!(r.values_of(&f).unwrap()[0].value, poss("0.2"));
    }
}
