//! Model checking possibilistic computation tree logic (PoCTL) over possibilistic
//! Kripke structures.
//!
//! Possibilities are exact rationals in `[0, 1]` and all matrix operations use the
//! max-min semiring, so results are exact.

pub mod algebra;
pub mod checker;
pub mod format;
pub mod kripke;
pub mod lasso;
pub mod logic;
pub mod oracle;
pub mod possibility;
pub mod state_set;
pub mod ts;

pub use algebra::{AlgebraError, FuzzyMatrix, PossibilityVector};
pub use checker::{ctl_sat, sat, CheckError, CheckResult};
pub use format::{parse_model, write_model};
pub use kripke::{ModelError, PossibilisticKripkeStructure, Violation};
pub use lasso::Lasso;
pub use logic::{parse_ctl, parse_formula, parse_poctl, PathFormula, StateFormula};
pub use possibility::Possibility;
pub use state_set::StateSet;
pub use ts::TransitionSystem;
