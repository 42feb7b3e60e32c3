//! Existential normal form and the CTL → PoCTL embeddings.

use thiserror::Error;

use super::ast::{FormulaClass, Interval, PathFormula, StateFormula, WellFormednessError};
use crate::possibility::Possibility;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TransformError {
    #[error("expected a CTL formula: {0}")]
    NotCtl(#[from] WellFormednessError),
    #[error("cut level {0} is outside (0, 1]")]
    InvalidLevel(Possibility),
}

fn require_ctl(f: &StateFormula) -> Result<(), TransformError> {
    match f.class()? {
        FormulaClass::Poctl => Err(WellFormednessError::ExpectedCtl.into()),
        _ => Ok(()),
    }
}

/// `¬x`, cancelling a double negation.
fn negate(x: StateFormula) -> StateFormula {
    match x {
        StateFormula::Not(inner) => *inner,
        other => other.not(),
    }
}

/// Rewrites a CTL formula into existential normal form: only `true`, atoms, `¬`,
/// `∧`, `∃X`, `∃U` and `∃G` remain.
pub fn to_enf(formula: &StateFormula) -> Result<StateFormula, TransformError> {
    require_ctl(formula)?;
    Ok(enf(formula))
}

fn enf(f: &StateFormula) -> StateFormula {
    use PathFormula as P;
    use StateFormula as S;
    match f {
        S::True | S::Atom(_) => f.clone(),
        S::Not(x) => negate(enf(x)),
        S::And(a, b) => enf(a).and(enf(b)),
        S::Exists(path) => S::exists(match &**path {
            P::Next(x) => P::next(enf(x)),
            P::Until(a, b) => P::until(enf(a), enf(b)),
            P::Always(x) => P::always(enf(x)),
            P::BoundedUntil(..) => unreachable!("rejected by classification"),
        }),
        S::Forall(path) => match &**path {
            // ∀X Φ ≡ ¬∃X ¬Φ
            P::Next(x) => negate(S::exists(P::next(negate(enf(x))))),
            // ∀F Φ ≡ ¬∃G ¬Φ
            P::Until(S::True, goal) => negate(S::exists(P::always(negate(enf(goal))))),
            // ∀(Φ U Ψ) ≡ ¬∃(¬Ψ U (¬Φ ∧ ¬Ψ)) ∧ ¬∃G ¬Ψ
            P::Until(hold, goal) => {
                let not_hold = negate(enf(hold));
                let not_goal = negate(enf(goal));
                negate(S::exists(P::until(
                    not_goal.clone(),
                    not_hold.and(not_goal.clone()),
                )))
                .and(negate(S::exists(P::always(not_goal))))
            }
            // ∀G Φ ≡ ¬∃F ¬Φ
            P::Always(x) => negate(S::exists(P::eventually(negate(enf(x))))),
            P::BoundedUntil(..) => unreachable!("rejected by classification"),
        },
        S::Po(..) => unreachable!("rejected by classification"),
    }
}

/// Whether a formula uses only the ENF vocabulary.
pub fn is_enf(f: &StateFormula) -> bool {
    use PathFormula as P;
    use StateFormula as S;
    match f {
        S::True | S::Atom(_) => true,
        S::Not(x) => is_enf(x),
        S::And(a, b) => is_enf(a) && is_enf(b),
        S::Exists(path) => match &**path {
            P::Next(x) | P::Always(x) => is_enf(x),
            P::Until(a, b) => is_enf(a) && is_enf(b),
            P::BoundedUntil(..) => false,
        },
        S::Forall(_) | S::Po(..) => false,
    }
}

/// Translates CTL into qualitative PoCTL: `∃φ ↦ Po>0(φ)`, and `¬∃φ ↦ Po=0(φ)`.
pub fn embed_ctl(formula: &StateFormula) -> Result<StateFormula, TransformError> {
    let enf = to_enf(formula)?;
    Ok(embed(
        &enf,
        Interval::positive(),
        Interval::exactly(Possibility::ZERO),
    ))
}

/// The level-`α` translation: `∃φ ↦ Po>=α(φ)`, and `¬∃φ ↦ Po<α(φ)`.
pub fn embed_ctl_alpha(
    formula: &StateFormula,
    alpha: Possibility,
) -> Result<StateFormula, TransformError> {
    if alpha.is_zero() {
        return Err(TransformError::InvalidLevel(alpha));
    }
    let enf = to_enf(formula)?;
    Ok(embed(
        &enf,
        Interval::at_least(alpha),
        Interval::less_than(alpha),
    ))
}

fn embed(f: &StateFormula, exists: Interval, not_exists: Interval) -> StateFormula {
    use StateFormula as S;
    let path = |p: &PathFormula| match p {
        PathFormula::Next(x) => PathFormula::next(embed(x, exists, not_exists)),
        PathFormula::Until(a, b) => {
            PathFormula::until(embed(a, exists, not_exists), embed(b, exists, not_exists))
        }
        PathFormula::Always(x) => PathFormula::always(embed(x, exists, not_exists)),
        PathFormula::BoundedUntil(..) => unreachable!("not in ENF"),
    };
    match f {
        S::True | S::Atom(_) => f.clone(),
        S::Not(x) => match &**x {
            S::Exists(p) => S::po(not_exists, path(p)),
            _ => embed(x, exists, not_exists).not(),
        },
        S::And(a, b) => embed(a, exists, not_exists).and(embed(b, exists, not_exists)),
        S::Exists(p) => S::po(exists, path(p)),
        S::Forall(_) | S::Po(..) => unreachable!("not in ENF"),
    }
}
