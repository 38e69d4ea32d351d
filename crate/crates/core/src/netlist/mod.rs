//! Node-based netlists, their compilation into terms, and a direct
//! constraint-based interpretation used as an independent oracle.
//!
//! A two-terminal element `X name a b` runs from node `b` (its left
//! terminal) to node `a` (its right terminal); its current is counted from
//! `b` to `a` through the element. `PORT p a b` opens a boundary wire into
//! node `b` on the left and out of node `a` on the right.

mod compile;
mod oracle;

use std::collections::HashMap;
use std::fmt;

use thiserror::Error;

use crate::field::{parse_rational, q, Rational};

pub use compile::netlist_to_term;
pub use oracle::netlist_to_relation_direct;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ElementKind {
    R,
    L,
    C,
    V,
    I,
    AM,
    VM,
    CV,
    CI,
    PORT,
}

impl ElementKind {
    pub fn is_meter(self) -> bool {
        matches!(self, ElementKind::AM | ElementKind::VM)
    }

    pub fn is_controlled(self) -> bool {
        matches!(self, ElementKind::CV | ElementKind::CI)
    }

    fn parse(s: &str) -> Option<Self> {
        use ElementKind::*;
        Some(match s {
            "R" => R,
            "L" => L,
            "C" => C,
            "V" => V,
            "I" => I,
            "AM" => AM,
            "VM" => VM,
            "CV" => CV,
            "CI" => CI,
            "PORT" => PORT,
            _ => return None,
        })
    }
}

impl fmt::Display for ElementKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

/// What drives a controlled source.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Control {
    /// The reading of a named meter.
    Meter(String),
    /// An external information input on the left boundary (API only).
    Input(usize),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Element {
    pub kind: ElementKind,
    pub name: String,
    pub node_a: String,
    pub node_b: String,
    pub value: Option<Rational>,
    pub ctrl: Option<Control>,
    pub gain: Rational,
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Netlist {
    /// Nodes in order of first use.
    pub nodes: Vec<String>,
    pub elements: Vec<Element>,
    /// Number of external control inputs.
    pub inputs: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum NetlistError {
    #[error("line {line}: syntax error: {message}")]
    Syntax { line: usize, message: String },
    #[error("line {line}: bad value: {message}")]
    BadValue { line: usize, message: String },
    #[error("line {line}: unknown control meter '{name}'")]
    UnknownControl { line: usize, name: String },
    #[error("line {line}: duplicate element name '{name}'")]
    DuplicateName { line: usize, name: String },
    #[error("unknown node '{name}'")]
    UnknownNode { name: String },
}

impl Netlist {
    /// Indices of PORT elements, in declaration order.
    pub fn ports(&self) -> Vec<usize> {
        self.indices(|e| e.kind == ElementKind::PORT)
    }

    /// Indices of meters, in declaration order.
    pub fn meters(&self) -> Vec<usize> {
        self.indices(|e| e.kind.is_meter())
    }

    /// Indices of controlled sources, in declaration order.
    pub fn controlled(&self) -> Vec<usize> {
        self.indices(|e| e.kind.is_controlled())
    }

    /// Meters whose readings leave on the right boundary: those no
    /// controlled source consumes.
    pub fn info_outputs(&self) -> Vec<usize> {
        self.meters()
            .into_iter()
            .filter(|&m| {
                let name = &self.elements[m].name;
                !self
                    .elements
                    .iter()
                    .any(|e| e.ctrl.as_ref() == Some(&Control::Meter(name.clone())))
            })
            .collect()
    }

    fn indices(&self, pred: impl Fn(&Element) -> bool) -> Vec<usize> {
        (0..self.elements.len())
            .filter(|&i| pred(&self.elements[i]))
            .collect()
    }

    pub(crate) fn node_index(&self) -> HashMap<&str, usize> {
        self.nodes
            .iter()
            .enumerate()
            .map(|(i, n)| (n.as_str(), i))
            .collect()
    }

    /// Adds an element, registering its nodes.
    pub fn push(&mut self, e: Element) {
        for n in [&e.node_a, &e.node_b] {
            if !self.nodes.contains(n) {
                self.nodes.push(n.clone());
            }
        }
        if let Some(Control::Input(k)) = e.ctrl {
            self.inputs = self.inputs.max(k + 1);
        }
        self.elements.push(e);
    }

    /// Checks node references, controls and parameter ranges.
    pub fn validate(&self) -> Result<(), NetlistError> {
        let meters: Vec<&str> = self
            .elements
            .iter()
            .filter(|e| e.kind.is_meter())
            .map(|e| e.name.as_str())
            .collect();
        let mut seen = std::collections::HashSet::new();
        for (k, e) in self.elements.iter().enumerate() {
            let line = k + 1;
            for n in [&e.node_a, &e.node_b] {
                if !self.nodes.contains(n) {
                    return Err(NetlistError::UnknownNode { name: n.clone() });
                }
            }
            if !seen.insert(e.name.as_str()) {
                return Err(NetlistError::DuplicateName {
                    line,
                    name: e.name.clone(),
                });
            }
            check_value(e, line)?;
            match (&e.ctrl, e.kind.is_controlled()) {
                (Some(Control::Meter(m)), true) if !meters.contains(&m.as_str()) => {
                    return Err(NetlistError::UnknownControl {
                        line,
                        name: m.clone(),
                    })
                }
                (Some(Control::Input(k)), true) if *k >= self.inputs => {
                    return Err(NetlistError::UnknownControl {
                        line,
                        name: format!("input {k}"),
                    })
                }
                (None, true) | (Some(_), false) => {
                    return Err(NetlistError::Syntax {
                        line,
                        message: format!("control does not fit element {}", e.name),
                    })
                }
                _ => {}
            }
        }
        Ok(())
    }
}

fn check_value(e: &Element, line: usize) -> Result<(), NetlistError> {
    use num_traits::Signed;
    use ElementKind::*;
    let bad = |message: String| Err(NetlistError::BadValue { line, message });
    let needs_value = matches!(e.kind, R | L | C | V | I);
    match (&e.value, needs_value) {
        (None, true) => return bad(format!("{} needs a value", e.name)),
        (Some(_), false) => return bad(format!("{} takes no value", e.name)),
        _ => {}
    }
    match (e.kind, &e.value) {
        (R, Some(v)) if v.is_negative() => bad(format!("resistance {v} must be >= 0")),
        (L | C, Some(v)) if !v.is_positive() => bad(format!("{} must be > 0, got {v}", e.kind)),
        _ => Ok(()),
    }
}

/// Parses the line-oriented netlist format.
pub fn parse_netlist(text: &str) -> Result<Netlist, NetlistError> {
    let mut nl = Netlist::default();
    let mut lines = Vec::new();
    for (k, raw) in text.lines().enumerate() {
        let line = k + 1;
        let content = raw.split('#').next().unwrap_or("");
        let toks: Vec<&str> = content.split_whitespace().collect();
        if toks.is_empty() {
            continue;
        }
        let syntax = |message: String| NetlistError::Syntax { line, message };
        let kind = ElementKind::parse(toks[0])
            .ok_or_else(|| syntax(format!("unknown element kind '{}'", toks[0])))?;
        use ElementKind::*;
        let (min, max) = match kind {
            R | L | C | V | I => (5, 5),
            AM | VM | PORT => (4, 4),
            CV | CI => (5, 6),
        };
        if toks.len() < min || toks.len() > max {
            return Err(syntax(format!(
                "{kind} expects {} fields, found {}",
                min,
                toks.len()
            )));
        }
        for node in &toks[2..4] {
            if !node.chars().all(|c| c.is_ascii_alphanumeric() || c == '_') {
                return Err(syntax(format!("bad node name '{node}'")));
            }
        }
        let value = |s: &str| {
            parse_rational(s).map_err(|e| NetlistError::BadValue {
                line,
                message: format!("'{s}': {e}"),
            })
        };
        let (val, ctrl, gain) = match kind {
            R | L | C | V | I => (Some(value(toks[4])?), None, q(1)),
            AM | VM | PORT => (None, None, q(1)),
            CV | CI => {
                let gain = match toks.get(5) {
                    Some(g) => value(g)?,
                    None => q(1),
                };
                (None, Some(Control::Meter(toks[4].to_string())), gain)
            }
        };
        if nl.elements.iter().any(|e| e.name == toks[1]) {
            return Err(NetlistError::DuplicateName {
                line,
                name: toks[1].to_string(),
            });
        }
        let e = Element {
            kind,
            name: toks[1].to_string(),
            node_a: toks[2].to_string(),
            node_b: toks[3].to_string(),
            value: val,
            ctrl,
            gain,
        };
        check_value(&e, line)?;
        lines.push(line);
        nl.push(e);
    }
    let meters: Vec<&str> = nl
        .elements
        .iter()
        .filter(|e| e.kind.is_meter())
        .map(|e| e.name.as_str())
        .collect();
    for (e, &line) in nl.elements.iter().zip(&lines) {
        if let Some(Control::Meter(m)) = &e.ctrl {
            if !meters.contains(&m.as_str()) {
                return Err(NetlistError::UnknownControl {
                    line,
                    name: m.clone(),
                });
            }
        }
    }
    Ok(nl)
}

impl fmt::Display for Netlist {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for e in &self.elements {
            write!(f, "{} {} {} {}", e.kind, e.name, e.node_a, e.node_b)?;
            if let Some(v) = &e.value {
                write!(f, " {v}")?;
            }
            match &e.ctrl {
                Some(Control::Meter(m)) => write!(f, " {m}")?,
                Some(Control::Input(k)) => write!(f, " <input {k}>")?,
                None => {}
            }
            if e.kind.is_controlled() && e.gain != q(1) {
                write!(f, " {}", e.gain)?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) const LOOP: &str = "V b 1 0 10\nR r 1 2 5\nAM a 2 0\n";

    #[test]
    fn parses_the_battery_loop() {
        let nl = parse_netlist(LOOP).unwrap();
        assert_eq!(nl.elements.len(), 3);
        assert_eq!(nl.nodes, vec!["1", "0", "2"]);
        assert_eq!(nl.info_outputs(), vec![2]);
        assert!(nl.validate().is_ok());
    }

    #[test]
    fn implicit_nodes_and_comments() {
        let nl = parse_netlist("# header\nR r 1 9 5   # trailing\n\n").unwrap();
        assert_eq!(nl.nodes, vec!["1", "9"]);
    }

    #[test]
    fn errors() {
        assert!(matches!(
            parse_netlist("CI g 1 0 m 2"),
            Err(NetlistError::UnknownControl { line: 1, .. })
        ));
        assert!(matches!(
            parse_netlist("R r 1 0 -1"),
            Err(NetlistError::BadValue { .. })
        ));
        assert!(matches!(
            parse_netlist("L l 1 0 0"),
            Err(NetlistError::BadValue { .. })
        ));
        assert!(matches!(
            parse_netlist("R r 1 0 x"),
            Err(NetlistError::BadValue { .. })
        ));
        assert!(matches!(
            parse_netlist("Q q 1 0 1"),
            Err(NetlistError::Syntax { .. })
        ));
        assert!(matches!(
            parse_netlist("R r 1 0"),
            Err(NetlistError::Syntax { .. })
        ));
        assert!(matches!(
            parse_netlist("R r 1 0 1\nR r 1 0 2"),
            Err(NetlistError::DuplicateName { line: 2, .. })
        ));
    }

    #[test]
    fn consumed_meters_are_not_exported() {
        let nl = parse_netlist("AM m 1 0\nCV s 2 1 m 3\nVM v 2 0\nR r 2 0 1").unwrap();
        assert_eq!(nl.info_outputs(), vec![2]);
        assert_eq!(nl.elements[1].gain, q(3));
    }

    #[test]
    fn display_round_trips() {
        let src = "V b 1 0 10\nAM m 2 0\nCI g 1 2 m -1/2\nPORT p 1 0\n";
        let nl = parse_netlist(src).unwrap();
        assert_eq!(parse_netlist(&nl.to_string()).unwrap(), nl);
    }

    use crate::analysis::{measure, one_port_relation, Classification};
    use crate::diagram::{sort_check, Term};
    use crate::semantics::denote;

    fn both(src: &str) -> (crate::affine::AffineRelation, crate::affine::AffineRelation) {
        let nl = parse_netlist(src).unwrap();
        let t = netlist_to_term(&nl);
        sort_check(&t).unwrap();
        (denote(&t).unwrap(), netlist_to_relation_direct(&nl))
    }

    #[test]
    fn battery_loop_reads_two_both_ways() {
        let (term, direct) = both(LOOP);
        assert_eq!(term, direct);
        let expect =
            crate::affine::AffineRelation::point(vec![], vec![crate::field::RatFunc::from_int(2)]);
        assert_eq!(direct, expect);
        let t = netlist_to_term(&parse_netlist(LOOP).unwrap());
        let m = measure(&t).unwrap();
        assert_eq!(
            m.classification,
            Classification::UniquePoint(vec![crate::field::RatFunc::from_int(2)])
        );
    }

    #[test]
    fn resistor_port() {
        let nl = parse_netlist("PORT p 1 0\nR r 1 0 4").unwrap();
        let t = netlist_to_term(&nl);
        let z = one_port_relation(&t).unwrap();
        assert_eq!(
            z,
            denote(&Term::scalar(crate::field::RatFunc::from_int(4))).unwrap()
        );
        assert_eq!(denote(&t).unwrap(), netlist_to_relation_direct(&nl));
    }

    #[test]
    fn parallel_unequal_sources_are_empty() {
        let (term, direct) = both("V a 1 0 1\nV b 1 0 2");
        assert!(direct.is_empty());
        assert_eq!(term, direct);
        let (term, direct) = both("V a 1 0 2\nV b 1 0 2\nAM m 1 2\nR r 2 0 1");
        assert!(!direct.is_empty());
        assert_eq!(term, direct);
    }

    #[test]
    fn empty_netlist_is_the_unit() {
        let nl = parse_netlist("# nothing\n").unwrap();
        assert_eq!(
            netlist_to_term(&nl),
            Term::Id(crate::diagram::SortWord::empty())
        );
        assert_eq!(
            netlist_to_relation_direct(&nl),
            crate::affine::AffineRelation::identity(0)
        );
    }

    #[test]
    fn controlled_sources_and_fan_out() {
        let srcs = [
            "I s 1 0 3\nAM m 1 2\nR r 2 0 2\nCV c 3 0 m 2\nR q 3 0 1\nVM v 3 0",
            "PORT p 1 0\nAM m 1 2\nR r 2 0 2\nCI c 3 0 m -1/2\nCV d 4 0 m\nR q 3 0 1\nR w 4 0 5",
            "PORT p 1 0\nPORT o 2 0\nL l 1 2 3\nC c 2 0 1/2\nVM v 1 0",
            "PORT p a b\nPORT p2 b a\nR r a b 1",
        ];
        for s in srcs {
            let (term, direct) = both(s);
            assert_eq!(term, direct, "{s}");
        }
    }

    #[test]
    fn external_inputs() {
        let mut nl = parse_netlist("R r 1 0 2\nAM m 1 0").unwrap();
        nl.push(Element {
            kind: ElementKind::CI,
            name: "g".into(),
            node_a: "1".into(),
            node_b: "0".into(),
            value: None,
            ctrl: Some(Control::Input(0)),
            gain: q(1),
        });
        nl.validate().unwrap();
        let t = netlist_to_term(&nl);
        assert_eq!(denote(&t).unwrap(), netlist_to_relation_direct(&nl));
    }
}
