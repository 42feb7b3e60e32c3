use std::collections::BTreeSet;

use crate::state_set::StateSet;

/// A crisp transition system `(S, →, I, AP, L)`, obtained from a possibilistic
/// structure by thresholding.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TransitionSystem {
    states: Vec<String>,
    successors: Vec<Vec<usize>>,
    predecessors: Vec<Vec<usize>>,
    initial: StateSet,
    propositions: BTreeSet<String>,
    labels: Vec<BTreeSet<String>>,
}

impl TransitionSystem {
    pub fn new(
        states: Vec<String>,
        successors: Vec<Vec<usize>>,
        initial: StateSet,
        propositions: BTreeSet<String>,
        labels: Vec<BTreeSet<String>>,
    ) -> Self {
        let n = states.len();
        let mut predecessors = vec![Vec::new(); n];
        for (i, succ) in successors.iter().enumerate() {
            for &j in succ {
                predecessors[j].push(i);
            }
        }
        TransitionSystem {
            states,
            successors,
            predecessors,
            initial,
            propositions,
            labels,
        }
    }

    pub fn num_states(&self) -> usize {
        self.states.len()
    }

    pub fn states(&self) -> &[String] {
        &self.states
    }

    pub fn initial(&self) -> &StateSet {
        &self.initial
    }

    pub fn propositions(&self) -> &BTreeSet<String> {
        &self.propositions
    }

    pub fn labels(&self, state: usize) -> &BTreeSet<String> {
        &self.labels[state]
    }

    pub fn successors(&self, state: usize) -> &[usize] {
        &self.successors[state]
    }

    pub fn predecessors(&self, state: usize) -> &[usize] {
        &self.predecessors[state]
    }

    pub fn has_edge(&self, from: usize, to: usize) -> bool {
        self.successors[from].contains(&to)
    }

    /// All edges in lexicographic order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut edges: Vec<_> = self
            .successors
            .iter()
            .enumerate()
            .flat_map(|(i, succ)| succ.iter().map(move |&j| (i, j)))
            .collect();
        edges.sort_unstable();
        edges
    }

    /// States without outgoing edges. Never present in the underlying system of a
    /// valid structure; a cut at a level above every transition out of some state
    /// can produce them.
    pub fn terminal_states(&self) -> StateSet {
        StateSet::from_predicate(self.num_states(), |i| self.successors[i].is_empty())
    }

    pub fn states_labelled(&self, proposition: &str) -> StateSet {
        StateSet::from_predicate(self.num_states(), |i| self.labels[i].contains(proposition))
    }
}
