//! Concrete syntax for formulae. The output reparses to the same AST.

use std::fmt;

use super::ast::{PathFormula, StateFormula};

fn write_atom(f: &mut fmt::Formatter<'_>, name: &str) -> fmt::Result {
    write!(f, "\"{name}\"")
}

/// Writes a formula that binds at least as tightly as `!`.
fn write_unary(f: &mut fmt::Formatter<'_>, s: &StateFormula) -> fmt::Result {
    match s {
        StateFormula::And(..) => write!(f, "({s})"),
        _ => write!(f, "{s}"),
    }
}

impl fmt::Display for StateFormula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            StateFormula::True => f.write_str("true"),
            StateFormula::Atom(a) => write_atom(f, a),
            StateFormula::Not(x) => {
                f.write_str("!")?;
                write_unary(f, x)
            }
            StateFormula::And(a, b) => {
                // left-associative: only the right operand needs parentheses
                write!(f, "{a} & ")?;
                write_unary(f, b)
            }
            StateFormula::Po(bound, path) => write!(f, "Po{bound} [ {path} ]"),
            StateFormula::Exists(path) => write!(f, "E [ {path} ]"),
            StateFormula::Forall(path) => write!(f, "A [ {path} ]"),
        }
    }
}

impl fmt::Display for PathFormula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PathFormula::Next(x) => write!(f, "X {x}"),
            PathFormula::Until(StateFormula::True, goal) => write!(f, "F {goal}"),
            PathFormula::Until(hold, goal) => write!(f, "{hold} U {goal}"),
            PathFormula::BoundedUntil(hold, goal, n) => write!(f, "{hold} U<={n} {goal}"),
            PathFormula::Always(x) => write!(f, "G {x}"),
        }
    }
}
