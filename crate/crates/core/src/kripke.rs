//! Finite possibilistic Kripke structures and the structures derived from them.

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use thiserror::Error;

use crate::algebra::{transitive_closure, FuzzyMatrix, PossibilityVector};
use crate::lasso::Lasso;
use crate::possibility::Possibility;
use crate::state_set::StateSet;
use crate::ts::TransitionSystem;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ModelError {
    #[error("a structure needs at least one state")]
    NoStates,
    #[error("duplicate state `{0}`")]
    DuplicateState(String),
    #[error("unknown state `{0}`")]
    UnknownState(String),
    #[error("state index {0} out of range")]
    StateIndexOutOfRange(usize),
    #[error("{what} has dimension {found}, expected {expected}")]
    Dimension {
        what: &'static str,
        found: usize,
        expected: usize,
    },
    #[error("cut level {0} is outside (0, 1]")]
    InvalidCut(Possibility),
    #[error("malformed path: {0}")]
    MalformedPath(String),
    #[error("malformed lasso: {0}")]
    MalformedLasso(String),
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("invalid structure: {}", join_violations(.0))]
    Invalid(Vec<Violation>),
}

fn join_violations(v: &[Violation]) -> String {
    v.iter()
        .map(|x| x.to_string())
        .collect::<Vec<_>>()
        .join("; ")
}

/// A reason a structure fails the normality or labelling conditions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    /// The outgoing possibilities of `state` do not reach 1.
    RowNormality { state: String, max: Possibility },
    /// No state has initial possibility 1.
    InitialNormality { max: Possibility },
    /// `state` carries a proposition outside the declared set.
    UnknownProposition { state: String, proposition: String },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::RowNormality { state, max } => {
                write!(f, "row normality at state {state} (max {max}, expected 1)")
            }
            Violation::InitialNormality { max } => {
                write!(f, "initial normality (max {max}, expected 1)")
            }
            Violation::UnknownProposition { state, proposition } => write!(
                f,
                "labelling at state {state}: `{proposition}` is not a declared proposition"
            ),
        }
    }
}

/// `M = (S, P, I, AP, L)`.
///
/// States are identified by name and indexed in declaration order; every
/// matrix and vector uses that order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PossibilisticKripkeStructure {
    states: Vec<String>,
    index: HashMap<String, usize>,
    transitions: FuzzyMatrix,
    initial: PossibilityVector,
    propositions: BTreeSet<String>,
    labels: Vec<BTreeSet<String>>,
}

impl PossibilisticKripkeStructure {
    /// Assembles a structure, checking only its shape. Use [`validate`](Self::validate)
    /// for the normality conditions.
    pub fn new(
        states: Vec<String>,
        transitions: FuzzyMatrix,
        initial: PossibilityVector,
        propositions: BTreeSet<String>,
        labels: Vec<BTreeSet<String>>,
    ) -> Result<Self, ModelError> {
        if states.is_empty() {
            return Err(ModelError::NoStates);
        }
        let n = states.len();
        let mut index = HashMap::with_capacity(n);
        for (i, s) in states.iter().enumerate() {
            if index.insert(s.clone(), i).is_some() {
                return Err(ModelError::DuplicateState(s.clone()));
            }
        }
        for (what, found) in [
            ("transition matrix", transitions.dim()),
            ("initial distribution", initial.dim()),
            ("labelling", labels.len()),
        ] {
            if found != n {
                return Err(ModelError::Dimension {
                    what,
                    found,
                    expected: n,
                });
            }
        }
        Ok(PossibilisticKripkeStructure {
            states,
            index,
            transitions,
            initial,
            propositions,
            labels,
        })
    }

    /// Like [`new`](Self::new) but rejects structures that fail validation.
    pub fn new_validated(
        states: Vec<String>,
        transitions: FuzzyMatrix,
        initial: PossibilityVector,
        propositions: BTreeSet<String>,
        labels: Vec<BTreeSet<String>>,
    ) -> Result<Self, ModelError> {
        let m = Self::new(states, transitions, initial, propositions, labels)?;
        let violations = m.validate();
        if violations.is_empty() {
            Ok(m)
        } else {
            Err(ModelError::Invalid(violations))
        }
    }

    pub fn num_states(&self) -> usize {
        self.states.len()
    }

    pub fn states(&self) -> &[String] {
        &self.states
    }

    pub fn state_name(&self, i: usize) -> &str {
        &self.states[i]
    }

    pub fn state_index(&self, name: &str) -> Result<usize, ModelError> {
        self.index
            .get(name)
            .copied()
            .ok_or_else(|| ModelError::UnknownState(name.to_string()))
    }

    pub fn transitions(&self) -> &FuzzyMatrix {
        &self.transitions
    }

    pub fn transition(&self, from: usize, to: usize) -> Possibility {
        self.transitions.get(from, to)
    }

    pub fn initial(&self) -> &PossibilityVector {
        &self.initial
    }

    pub fn propositions(&self) -> &BTreeSet<String> {
        &self.propositions
    }

    pub fn labels(&self, state: usize) -> &BTreeSet<String> {
        &self.labels[state]
    }

    /// `Sat(a)`: the states labelled with `a`.
    pub fn states_labelled(&self, proposition: &str) -> StateSet {
        StateSet::from_predicate(self.num_states(), |i| self.labels[i].contains(proposition))
    }

    /// States with positive initial possibility.
    pub fn initial_states(&self) -> StateSet {
        StateSet::from_predicate(self.num_states(), |i| self.initial[i].is_positive())
    }

    /// Successors with positive transition possibility, in index order.
    pub fn successors(&self, state: usize) -> impl Iterator<Item = usize> + '_ {
        self.transitions
            .row(state)
            .iter()
            .enumerate()
            .filter_map(|(j, p)| p.is_positive().then_some(j))
    }

    /// Checks row normality, initial normality and that labels use declared propositions.
    /// An empty result means the structure is valid.
    pub fn validate(&self) -> Vec<Violation> {
        let mut violations = Vec::new();
        for (i, name) in self.states.iter().enumerate() {
            let max = self
                .transitions
                .row(i)
                .iter()
                .copied()
                .max()
                .unwrap_or(Possibility::ZERO);
            if !max.is_one() {
                violations.push(Violation::RowNormality {
                    state: name.clone(),
                    max,
                });
            }
        }
        let max = self.initial.iter().max().unwrap_or(Possibility::ZERO);
        if !max.is_one() {
            violations.push(Violation::InitialNormality { max });
        }
        for (i, name) in self.states.iter().enumerate() {
            for a in &self.labels[i] {
                if !self.propositions.contains(a) {
                    violations.push(Violation::UnknownProposition {
                        state: name.clone(),
                        proposition: a.clone(),
                    });
                }
            }
        }
        violations
    }

    pub fn is_valid(&self) -> bool {
        self.validate().is_empty()
    }

    /// `M_s`: the same structure with `s` as its unique initial state.
    pub fn rebase_initial(&self, state: &str) -> Result<Self, ModelError> {
        let s = self.state_index(state)?;
        Ok(self.rebase_initial_index(s))
    }

    pub fn rebase_initial_index(&self, s: usize) -> Self {
        let mut m = self.clone();
        m.initial =
            PossibilityVector::characteristic(&StateSet::from_indices(self.num_states(), [s]));
        m
    }

    /// `M⁺`: the structure with `P` replaced by its transitive closure.
    pub fn plus_structure(&self) -> Self {
        let mut m = self.clone();
        m.transitions = transitive_closure(&self.transitions);
        m
    }

    /// `TS(M)`: keep every transition and initial state with positive possibility.
    pub fn underlying_ts(&self) -> TransitionSystem {
        self.threshold_ts(|p| p.is_positive())
    }

    /// `TS_α(M)`: keep the transitions and initial states with possibility at least `α`.
    ///
    /// The cut of an arbitrary matrix may contain terminal states; see
    /// [`TransitionSystem::terminal_states`].
    pub fn alpha_cut_ts(&self, alpha: Possibility) -> Result<TransitionSystem, ModelError> {
        if alpha.is_zero() {
            return Err(ModelError::InvalidCut(alpha));
        }
        Ok(self.threshold_ts(|p| p >= alpha))
    }

    fn threshold_ts(&self, keep: impl Fn(Possibility) -> bool) -> TransitionSystem {
        let n = self.num_states();
        let successors = (0..n)
            .map(|i| (0..n).filter(|&j| keep(self.transition(i, j))).collect())
            .collect();
        let initial = StateSet::from_predicate(n, |i| keep(self.initial[i]));
        TransitionSystem::new(
            self.states.clone(),
            successors,
            initial,
            self.propositions.clone(),
            self.labels.clone(),
        )
    }

    /// `Po(Cyl(s₀…sₙ)) = I(s₀) ∧ ⋀ P(sᵢ, sᵢ₊₁)`.
    pub fn cylinder_possibility(&self, path: &[usize]) -> Result<Possibility, ModelError> {
        let (&first, _) = path
            .split_first()
            .ok_or_else(|| ModelError::MalformedPath("empty path".into()))?;
        self.check_indices(path)?;
        Ok(path
            .windows(2)
            .map(|w| self.transition(w[0], w[1]))
            .fold(self.initial[first], Possibility::min))
    }

    /// [`cylinder_possibility`](Self::cylinder_possibility) for a path given by state names.
    pub fn cylinder_possibility_named(&self, path: &[&str]) -> Result<Possibility, ModelError> {
        let path = path
            .iter()
            .map(|s| self.state_index(s))
            .collect::<Result<Vec<_>, _>>()?;
        self.cylinder_possibility(&path)
    }

    /// The possibility of the ultimately periodic path `stem · cycle^ω`: the minimum of
    /// the initial possibility of its first state and every transition it takes.
    pub fn lasso_possibility(&self, lasso: &Lasso) -> Result<Possibility, ModelError> {
        self.check_indices(lasso.stem())?;
        self.check_indices(lasso.cycle())?;
        let mut value = self.initial[lasso.start()];
        for (from, to) in lasso.transitions() {
            let p = self.transition(from, to);
            if p.is_zero() {
                return Err(ModelError::MalformedLasso(format!(
                    "no transition {} -> {}",
                    self.states[from], self.states[to]
                )));
            }
            value = value.min(p);
        }
        Ok(value)
    }

    /// `Po(E)` for a finite set of ultimately periodic paths: the maximum of their values.
    pub fn lasso_set_possibility<'a>(
        &self,
        lassos: impl IntoIterator<Item = &'a Lasso>,
    ) -> Result<Possibility, ModelError> {
        let mut best = Possibility::ZERO;
        for l in lassos {
            best = best.max(self.lasso_possibility(l)?);
        }
        Ok(best)
    }

    /// A path of possibility 1, found by starting at the name-wise smallest state with
    /// initial possibility 1 and repeatedly taking the name-wise smallest successor
    /// reachable with possibility 1 until a state repeats.
    ///
    /// Returns `None` only for structures that violate normality.
    pub fn possibility_one_witness(&self) -> Option<Lasso> {
        let by_name = |candidates: &mut dyn Iterator<Item = usize>| {
            candidates.min_by(|&a, &b| self.states[a].cmp(&self.states[b]))
        };
        let mut current =
            by_name(&mut (0..self.num_states()).filter(|&i| self.initial[i].is_one()))?;
        let mut walk = vec![current];
        let mut seen = vec![false; self.num_states()];
        seen[current] = true;
        loop {
            let next = by_name(
                &mut self
                    .successors(current)
                    .filter(|&j| self.transition(current, j).is_one()),
            )?;
            if seen[next] {
                let pos = walk.iter().position(|&s| s == next).unwrap();
                let cycle = walk.split_off(pos);
                return Lasso::new(walk, cycle).ok();
            }
            seen[next] = true;
            walk.push(next);
            current = next;
        }
    }

    fn check_indices(&self, path: &[usize]) -> Result<(), ModelError> {
        match path.iter().find(|&&i| i >= self.num_states()) {
            Some(&i) => Err(ModelError::StateIndexOutOfRange(i)),
            None => Ok(()),
        }
    }
}
