//! Formula syntax for PoCTL and CTL.

mod ast;
mod parser;
mod print;
mod transform;

pub use ast::{
    formula_size, FormulaClass, Interval, IntervalError, PathFormula, StateFormula,
    WellFormednessError,
};
pub use parser::{parse_ctl, parse_formula, parse_poctl, ParseError};
pub use transform::{embed_ctl, embed_ctl_alpha, is_enf, to_enf, TransformError};
