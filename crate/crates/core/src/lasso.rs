use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("a lasso needs a nonempty cycle")]
pub struct EmptyCycle;

/// An ultimately periodic path `stem · cycle^ω` over state indices.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Lasso {
    stem: Vec<usize>,
    cycle: Vec<usize>,
}

impl Lasso {
    pub fn new(stem: Vec<usize>, cycle: Vec<usize>) -> Result<Self, EmptyCycle> {
        if cycle.is_empty() {
            return Err(EmptyCycle);
        }
        Ok(Lasso { stem, cycle })
    }

    pub fn stem(&self) -> &[usize] {
        &self.stem
    }

    pub fn cycle(&self) -> &[usize] {
        &self.cycle
    }

    /// The first state of the path.
    pub fn start(&self) -> usize {
        self.stem.first().copied().unwrap_or(self.cycle[0])
    }

    /// Every transition the infinite path takes at least once: the stem, the entry
    /// into the cycle, and the cycle including its wrap-around.
    pub fn transitions(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        let mut states = self.stem.iter().chain(&self.cycle).copied();
        let first = states.next();
        states
            .scan(first, |prev, next| {
                let edge = (prev.unwrap(), next);
                *prev = Some(next);
                Some(edge)
            })
            .chain(std::iter::once((
                *self.cycle.last().unwrap(),
                self.cycle[0],
            )))
    }

    /// The state at position `i` of the infinite path.
    pub fn state_at(&self, i: usize) -> usize {
        if i < self.stem.len() {
            self.stem[i]
        } else {
            self.cycle[(i - self.stem.len()) % self.cycle.len()]
        }
    }

    /// The unique representation of the same infinite path with the shortest stem
    /// and a primitive cycle. Two lassos denote the same path iff their canonical
    /// forms are equal.
    pub fn canonical(&self) -> Lasso {
        let mut cycle = self.cycle.clone();
        let len = cycle.len();
        if let Some(period) =
            (1..=len).find(|&p| len.is_multiple_of(p) && (p..len).all(|i| cycle[i] == cycle[i - p]))
        {
            cycle.truncate(period);
        }
        let mut stem = self.stem.clone();
        while let Some(&last) = stem.last() {
            if last != *cycle.last().unwrap() {
                break;
            }
            stem.pop();
            cycle.rotate_right(1);
        }
        Lasso { stem, cycle }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn rejects_empty_cycle() {
        assert_eq!(Lasso::new(vec![1], vec![]), Err(EmptyCycle));
    }

    #[test]
    fn transitions_include_entry_and_wrap() {
        let l = Lasso::new(vec![0, 1], vec![2, 3]).unwrap();
        assert_eq!(
            l.transitions().collect::<Vec<_>>(),
            vec![(0, 1), (1, 2), (2, 3), (3, 2)]
        );
        let selfloop = Lasso::new(vec![], vec![4]).unwrap();
        assert_eq!(selfloop.transitions().collect::<Vec<_>>(), vec![(4, 4)]);
        assert_eq!(selfloop.start(), 4);
    }

    #[test]
    fn canonical_form_examples() {
        let a = Lasso::new(vec![0, 1, 2], vec![1, 2]).unwrap();
        assert_eq!(a.canonical(), Lasso::new(vec![0], vec![1, 2]).unwrap());
        let b = Lasso::new(vec![], vec![3, 3, 3]).unwrap();
        assert_eq!(b.canonical(), Lasso::new(vec![], vec![3]).unwrap());
        let c = Lasso::new(vec![5, 1], vec![2, 1, 2, 1]).unwrap();
        assert_eq!(c.canonical(), Lasso::new(vec![5], vec![1, 2]).unwrap());
    }

    fn arb_lasso() -> impl Strategy<Value = Lasso> {
        (
            prop::collection::vec(0usize..3, 0..4),
            prop::collection::vec(0usize..3, 1..5),
        )
            .prop_map(|(s, c)| Lasso::new(s, c).unwrap())
    }

    proptest! {
        #[test]
        fn canonical_preserves_the_path(l in arb_lasso()) {
            let c = l.canonical();
            for i in 0..40 {
                prop_assert_eq!(l.state_at(i), c.state_at(i));
            }
            prop_assert_eq!(c.canonical(), c.clone());
            prop_assert!(c.stem().len() <= l.stem().len());
        }

        #[test]
        fn canonical_identifies_equal_paths(a in arb_lasso(), b in arb_lasso()) {
            // 40 positions exceed stem + lcm of cycle lengths for these sizes
            let same = (0..40).all(|i| a.state_at(i) == b.state_at(i));
            prop_assert_eq!(same, a.canonical() == b.canonical());
        }
    }
}
