//! Terms of the coloured prop, their sorts and their text syntax.

pub mod build;
pub mod parse;
mod print;
pub mod sort;
mod term;

pub use parse::{parse_checked, parse_term, DiagramError};
pub use print::pretty_print;
pub use sort::{
    generator_sorting, is_affine_algebra_term, sort_check, subterm, SortError, Sorting, TermPath,
};
pub use term::{Generator, Sort, SortWord, Term};
