//! Exact relational semantics for linear electrical circuits with meters
//! and controlled sources.
//!
//! Circuits are string-diagram terms over electric and information wires.
//! Each term denotes an affine relation over the rational functions Q(x);
//! equality and inclusion of circuits are decided on those relations.

pub mod affine;
pub mod analysis;
pub mod axioms;
pub mod diagram;
pub mod field;
pub mod netlist;
pub mod random;
pub mod semantics;

pub use affine::AffineRelation;
pub use diagram::{parse_term, pretty_print, sort_check, Generator, Sort, SortWord, Term};
pub use field::{Poly, RatFunc, Rational};
pub use netlist::{netlist_to_relation_direct, netlist_to_term, parse_netlist, Netlist};
pub use semantics::denote;
