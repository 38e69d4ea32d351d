//! Impedance calculus, one-port classification, measurement and the
//! structural checks, plus the library of physical gadgets.

mod checks;
pub mod gadgets;
mod impedance;
mod thevenin;

use thiserror::Error;

use crate::diagram::{SortError, SortWord};

pub use checks::{
    check_independent_measurement, check_port_invariants, check_superposition, measure, plug,
    CheckReport, Classification, MeasurementResult, PlugMode, PortInvariants, Side,
};
pub use gadgets::{gadget, gadget_for, is_physical, realize};
pub use impedance::{
    close_box, const_term, csource_payload, force_eq_term, one_port_relation, parallel_box,
    reverse_box, series_box, synthesize_box, vsource_payload,
};
pub use thevenin::{source_transform, thevenin, TheveninForm};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AnalysisError {
    #[error(transparent)]
    Sort(#[from] SortError),
    #[error("payload must have sorting N -> N, found {dom} -> {cod}")]
    BadPayloadSort { dom: SortWord, cod: SortWord },
    #[error("expected a one-port E -> E, found {dom} -> {cod}")]
    NotOnePort { dom: SortWord, cod: SortWord },
    #[error("wire {index} on the {side} side is not an information wire")]
    NotInfoWire { side: &'static str, index: usize },
    #[error("{mode} applies to the {expected} side")]
    PlugSideMismatch {
        mode: &'static str,
        expected: &'static str,
    },
    #[error("port invariants violated (relativity: {relativity}, conservation: {conservation})")]
    InvariantViolation {
        relativity: bool,
        conservation: bool,
    },
    #[error("boundary must be all electric, found {dom} -> {cod}")]
    NotElectricBoundary { dom: SortWord, cod: SortWord },
    #[error("boundary must be information wires only ({what}), found {dom} -> {cod}")]
    NotInfoBoundary {
        what: &'static str,
        dom: SortWord,
        cod: SortWord,
    },
    #[error("element not allowed here: {which}")]
    ForbiddenElement { which: String },
    #[error("term does not match the expected pattern: {0}")]
    PatternMismatch(String),
    #[error("independent source present: {which}")]
    IndependentSourcePresent { which: String },
    #[error("unknown gadget: {0}")]
    UnknownGadget(String),
}
