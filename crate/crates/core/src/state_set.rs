use std::fmt;

/// A subset of the state indices `0..len`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct StateSet {
    members: Vec<bool>,
}

impl StateSet {
    pub fn empty(len: usize) -> Self {
        StateSet {
            members: vec![false; len],
        }
    }

    pub fn full(len: usize) -> Self {
        StateSet {
            members: vec![true; len],
        }
    }

    pub fn from_indices(len: usize, indices: impl IntoIterator<Item = usize>) -> Self {
        let mut set = StateSet::empty(len);
        for i in indices {
            set.insert(i);
        }
        set
    }

    pub fn from_predicate(len: usize, mut pred: impl FnMut(usize) -> bool) -> Self {
        StateSet {
            members: (0..len).map(&mut pred).collect(),
        }
    }

    /// Size of the universe, not the number of members.
    pub fn universe(&self) -> usize {
        self.members.len()
    }

    pub fn count(&self) -> usize {
        self.members.iter().filter(|&&b| b).count()
    }

    pub fn is_empty(&self) -> bool {
        !self.members.iter().any(|&b| b)
    }

    pub fn contains(&self, i: usize) -> bool {
        self.members.get(i).copied().unwrap_or(false)
    }

    pub fn insert(&mut self, i: usize) -> bool {
        let was = self.members[i];
        self.members[i] = true;
        !was
    }

    pub fn remove(&mut self, i: usize) -> bool {
        let was = self.members[i];
        self.members[i] = false;
        was
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.members
            .iter()
            .enumerate()
            .filter_map(|(i, &b)| b.then_some(i))
    }

    pub fn complement(&self) -> StateSet {
        StateSet {
            members: self.members.iter().map(|b| !b).collect(),
        }
    }

    pub fn union(&self, other: &StateSet) -> StateSet {
        self.zip_with(other, |a, b| a || b)
    }

    pub fn intersection(&self, other: &StateSet) -> StateSet {
        self.zip_with(other, |a, b| a && b)
    }

    pub fn difference(&self, other: &StateSet) -> StateSet {
        self.zip_with(other, |a, b| a && !b)
    }

    pub fn is_subset(&self, other: &StateSet) -> bool {
        self.members
            .iter()
            .zip(&other.members)
            .all(|(&a, &b)| !a || b)
    }

    pub fn as_slice(&self) -> &[bool] {
        &self.members
    }

    fn zip_with(&self, other: &StateSet, f: impl Fn(bool, bool) -> bool) -> StateSet {
        assert_eq!(
            self.universe(),
            other.universe(),
            "state sets over different universes"
        );
        StateSet {
            members: self
                .members
                .iter()
                .zip(&other.members)
                .map(|(&a, &b)| f(a, b))
                .collect(),
        }
    }
}

impl fmt::Debug for StateSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn set_algebra() {
        let a = StateSet::from_indices(5, [0, 2, 3]);
        let b = StateSet::from_indices(5, [2, 4]);
        assert_eq!(a.union(&b), StateSet::from_indices(5, [0, 2, 3, 4]));
        assert_eq!(a.intersection(&b), StateSet::from_indices(5, [2]));
        assert_eq!(a.difference(&b), StateSet::from_indices(5, [0, 3]));
        assert_eq!(a.complement(), StateSet::from_indices(5, [1, 4]));
        assert_eq!(a.count(), 3);
        assert!(StateSet::from_indices(5, [2]).is_subset(&a));
        assert!(!b.is_subset(&a));
        assert!(StateSet::empty(3).is_empty());
        assert_eq!(StateSet::full(3).count(), 3);
    }
}
