use std::fmt;

use thiserror::Error;

use crate::possibility::Possibility;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum IntervalError {
    #[error("interval lower bound {lower} exceeds upper bound {upper}")]
    Inverted {
        lower: Possibility,
        upper: Possibility,
    },
}

/// A subinterval of `[0, 1]` with rational endpoints, each open or closed.
///
/// Degenerate intervals such as `(1, 1]` (from `Po>1`) or `[0, 0)` (from `Po<0`)
/// are allowed and contain nothing.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Interval {
    lower: Possibility,
    upper: Possibility,
    lower_closed: bool,
    upper_closed: bool,
}

impl Interval {
    pub fn new(
        lower: Possibility,
        lower_closed: bool,
        upper: Possibility,
        upper_closed: bool,
    ) -> Result<Self, IntervalError> {
        if lower > upper {
            return Err(IntervalError::Inverted { lower, upper });
        }
        Ok(Interval {
            lower,
            upper,
            lower_closed,
            upper_closed,
        })
    }

    /// `[p, 1]`
    pub fn at_least(p: Possibility) -> Self {
        Interval {
            lower: p,
            upper: Possibility::ONE,
            lower_closed: true,
            upper_closed: true,
        }
    }

    /// `(p, 1]`
    pub fn greater_than(p: Possibility) -> Self {
        Interval {
            lower: p,
            upper: Possibility::ONE,
            lower_closed: false,
            upper_closed: true,
        }
    }

    /// `[0, p]`
    pub fn at_most(p: Possibility) -> Self {
        Interval {
            lower: Possibility::ZERO,
            upper: p,
            lower_closed: true,
            upper_closed: true,
        }
    }

    /// `[0, p)`
    pub fn less_than(p: Possibility) -> Self {
        Interval {
            lower: Possibility::ZERO,
            upper: p,
            lower_closed: true,
            upper_closed: false,
        }
    }

    /// `[p, p]`
    pub fn exactly(p: Possibility) -> Self {
        Interval {
            lower: p,
            upper: p,
            lower_closed: true,
            upper_closed: true,
        }
    }

    /// The qualitative bound `> 0`.
    pub fn positive() -> Self {
        Interval::greater_than(Possibility::ZERO)
    }

    pub fn lower(&self) -> Possibility {
        self.lower
    }

    pub fn upper(&self) -> Possibility {
        self.upper
    }

    pub fn lower_closed(&self) -> bool {
        self.lower_closed
    }

    pub fn upper_closed(&self) -> bool {
        self.upper_closed
    }

    pub fn contains(&self, x: Possibility) -> bool {
        let above = if self.lower_closed {
            self.lower <= x
        } else {
            self.lower < x
        };
        let below = if self.upper_closed {
            x <= self.upper
        } else {
            x < self.upper
        };
        above && below
    }

    pub fn is_empty(&self) -> bool {
        self.lower == self.upper && !(self.lower_closed && self.upper_closed)
    }
}

impl fmt::Display for Interval {
    /// The comparator suffix used after `Po`: `>=0.5`, `=1`, ` in (0.2,0.7]`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (lo, hi) = (self.lower, self.upper);
        if lo == hi && self.lower_closed && self.upper_closed {
            write!(f, "={lo}")
        } else if hi.is_one() && self.upper_closed {
            write!(f, "{}{lo}", if self.lower_closed { ">=" } else { ">" })
        } else if lo.is_zero() && self.lower_closed {
            write!(f, "{}{hi}", if self.upper_closed { "<=" } else { "<" })
        } else {
            write!(
                f,
                " in {}{lo},{hi}{}",
                if self.lower_closed { '[' } else { '(' },
                if self.upper_closed { ']' } else { ')' }
            )
        }
    }
}

impl fmt::Debug for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}{},{}{}",
            if self.lower_closed { '[' } else { '(' },
            self.lower,
            self.upper,
            if self.upper_closed { ']' } else { ')' }
        )
    }
}

/// State formulae of PoCTL and CTL after desugaring.
///
/// `false`, `|` and `->` are expressed with `true`, `!` and `&`. A formula may
/// use `Po` or the CTL quantifiers, never both; see [`StateFormula::class`].
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum StateFormula {
    True,
    Atom(String),
    Not(Box<StateFormula>),
    And(Box<StateFormula>, Box<StateFormula>),
    Po(Interval, Box<PathFormula>),
    Exists(Box<PathFormula>),
    Forall(Box<PathFormula>),
}

/// Path formulae. `F Φ` is `true U Φ`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum PathFormula {
    Next(StateFormula),
    Until(StateFormula, StateFormula),
    BoundedUntil(StateFormula, StateFormula, usize),
    Always(StateFormula),
}

/// Which logic a well-formed formula belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FormulaClass {
    /// No path operators at all; both a PoCTL and a CTL formula.
    Propositional,
    Poctl,
    Ctl,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WellFormednessError {
    #[error("formula mixes `Po` with the CTL quantifiers `E`/`A`")]
    Mixed,
    #[error("bounded until is not a CTL path operator")]
    BoundedUntilInCtl,
    #[error("expected a PoCTL formula, found CTL quantifiers")]
    ExpectedPoctl,
    #[error("expected a CTL formula, found `Po`")]
    ExpectedCtl,
}

impl StateFormula {
    pub fn atom(name: impl Into<String>) -> Self {
        StateFormula::Atom(name.into())
    }

    /// `false`, i.e. `!true`.
    pub fn falsity() -> Self {
        StateFormula::True.not()
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(self) -> Self {
        StateFormula::Not(Box::new(self))
    }

    pub fn and(self, other: StateFormula) -> Self {
        StateFormula::And(Box::new(self), Box::new(other))
    }

    /// `a | b`, i.e. `!(!a & !b)`.
    pub fn or(self, other: StateFormula) -> Self {
        self.not().and(other.not()).not()
    }

    /// `a -> b`, i.e. `!(a & !b)`.
    pub fn implies(self, other: StateFormula) -> Self {
        self.and(other.not()).not()
    }

    pub fn po(bound: Interval, path: PathFormula) -> Self {
        StateFormula::Po(bound, Box::new(path))
    }

    pub fn exists(path: PathFormula) -> Self {
        StateFormula::Exists(Box::new(path))
    }

    pub fn forall(path: PathFormula) -> Self {
        StateFormula::Forall(Box::new(path))
    }

    /// Number of AST nodes, state and path nodes alike.
    pub fn size(&self) -> usize {
        1 + match self {
            StateFormula::True | StateFormula::Atom(_) => 0,
            StateFormula::Not(x) => x.size(),
            StateFormula::And(a, b) => a.size() + b.size(),
            StateFormula::Po(_, p) | StateFormula::Exists(p) | StateFormula::Forall(p) => p.size(),
        }
    }

    /// Classifies the formula, rejecting mixtures of `Po` and `E`/`A` and bounded
    /// until under a CTL quantifier.
    pub fn class(&self) -> Result<FormulaClass, WellFormednessError> {
        let (has_po, has_ctl) = self.operators()?;
        match (has_po, has_ctl) {
            (false, false) => Ok(FormulaClass::Propositional),
            (true, false) => Ok(FormulaClass::Poctl),
            (false, true) => Ok(FormulaClass::Ctl),
            (true, true) => Err(WellFormednessError::Mixed),
        }
    }

    fn operators(&self) -> Result<(bool, bool), WellFormednessError> {
        Ok(match self {
            StateFormula::True | StateFormula::Atom(_) => (false, false),
            StateFormula::Not(x) => x.operators()?,
            StateFormula::And(a, b) => {
                let (pa, ca) = a.operators()?;
                let (pb, cb) = b.operators()?;
                (pa || pb, ca || cb)
            }
            StateFormula::Po(_, p) => {
                let (_, cp) = p.operators()?;
                (true, cp)
            }
            StateFormula::Exists(p) | StateFormula::Forall(p) => {
                if matches!(**p, PathFormula::BoundedUntil(..)) {
                    return Err(WellFormednessError::BoundedUntilInCtl);
                }
                let (pp, _) = p.operators()?;
                (pp, true)
            }
        })
    }

    /// Every atom occurring in the formula.
    pub fn atoms(&self) -> Vec<&str> {
        let mut out = Vec::new();
        self.collect_atoms(&mut out);
        out
    }

    fn collect_atoms<'a>(&'a self, out: &mut Vec<&'a str>) {
        match self {
            StateFormula::True => {}
            StateFormula::Atom(a) => out.push(a),
            StateFormula::Not(x) => x.collect_atoms(out),
            StateFormula::And(a, b) => {
                a.collect_atoms(out);
                b.collect_atoms(out);
            }
            StateFormula::Po(_, p) | StateFormula::Exists(p) | StateFormula::Forall(p) => {
                for s in p.operands() {
                    s.collect_atoms(out);
                }
            }
        }
    }
}

impl PathFormula {
    pub fn next(target: StateFormula) -> Self {
        PathFormula::Next(target)
    }

    pub fn until(hold: StateFormula, goal: StateFormula) -> Self {
        PathFormula::Until(hold, goal)
    }

    pub fn bounded_until(hold: StateFormula, goal: StateFormula, bound: usize) -> Self {
        PathFormula::BoundedUntil(hold, goal, bound)
    }

    /// `F Φ`, i.e. `true U Φ`.
    pub fn eventually(goal: StateFormula) -> Self {
        PathFormula::Until(StateFormula::True, goal)
    }

    pub fn always(inv: StateFormula) -> Self {
        PathFormula::Always(inv)
    }

    /// The state subformulae, left to right.
    pub fn operands(&self) -> Vec<&StateFormula> {
        match self {
            PathFormula::Next(x) | PathFormula::Always(x) => vec![x],
            PathFormula::Until(a, b) | PathFormula::BoundedUntil(a, b, _) => vec![a, b],
        }
    }

    pub fn size(&self) -> usize {
        1 + self.operands().iter().map(|s| s.size()).sum::<usize>()
    }

    fn operators(&self) -> Result<(bool, bool), WellFormednessError> {
        let mut acc = (false, false);
        for s in self.operands() {
            let (p, c) = s.operators()?;
            acc = (acc.0 || p, acc.1 || c);
        }
        Ok(acc)
    }
}

/// `|Φ|`: the number of AST nodes of `Φ`, state and path nodes alike, after
/// desugaring.
pub fn formula_size(formula: &StateFormula) -> usize {
    formula.size()
}
