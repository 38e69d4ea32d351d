use serde::Serialize;

use super::AnalysisError;
use crate::affine::{zeros, AffineRelation, Functionality, Vector};
use crate::diagram::{sort_check, Generator, Sort, SortWord, Term};
use crate::field::RatFunc;
use crate::semantics::denote;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct PortInvariants {
    /// Shifting every boundary potential by the same amount stays inside.
    pub relativity: bool,
    /// Total current in on the left equals total current out on the right.
    pub conservation: bool,
}

pub(crate) fn port_invariants_of(
    rel: &AffineRelation,
    dom: &[Sort],
    cod: &[Sort],
) -> PortInvariants {
    if rel.is_empty() {
        return PortInvariants {
            relativity: true,
            conservation: true,
        };
    }
    let mut shift = Vec::with_capacity(rel.width());
    let mut flow = Vec::with_capacity(rel.width());
    for (word, sign) in [(dom, 1), (cod, -1)] {
        for s in word {
            match s {
                Sort::Electric => {
                    shift.extend([RatFunc::one(), RatFunc::zero()]);
                    flow.extend([RatFunc::zero(), RatFunc::from_int(sign)]);
                }
                Sort::Info => {
                    shift.push(RatFunc::zero());
                    flow.push(RatFunc::zero());
                }
            }
        }
    }
    PortInvariants {
        relativity: rel.direction_contains(&shift),
        conservation: rel.annihilated_by(&flow),
    }
}

/// Relativity of potentials and conservation of current for a term with an
/// all-electric boundary.
pub fn check_port_invariants(t: &Term) -> Result<PortInvariants, AnalysisError> {
    let s = sort_check(t)?;
    if !s.dom.all(Sort::Electric) || !s.cod.all(Sort::Electric) {
        return Err(AnalysisError::NotElectricBoundary {
            dom: s.dom,
            cod: s.cod,
        });
    }
    let rel = denote(t)?;
    Ok(port_invariants_of(&rel, s.dom.sorts(), s.cod.sorts()))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Domain,
    Codomain,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PlugMode {
    /// Feed a zero into a control input.
    SourceOff,
    /// Ignore a meter reading.
    MeterDiscard,
}

/// Plugs one boundary information wire.
pub fn plug(t: &Term, side: Side, index: usize, mode: PlugMode) -> Result<Term, AnalysisError> {
    let s = sort_check(t)?;
    let (word, side_name) = match side {
        Side::Domain => (&s.dom, "domain"),
        Side::Codomain => (&s.cod, "codomain"),
    };
    match (side, mode) {
        (Side::Domain, PlugMode::SourceOff) | (Side::Codomain, PlugMode::MeterDiscard) => {}
        (_, PlugMode::SourceOff) => {
            return Err(AnalysisError::PlugSideMismatch {
                mode: "source_off",
                expected: "domain",
            })
        }
        (_, PlugMode::MeterDiscard) => {
            return Err(AnalysisError::PlugSideMismatch {
                mode: "meter_discard",
                expected: "codomain",
            })
        }
    }
    if word.sorts().get(index) != Some(&Sort::Info) {
        return Err(AnalysisError::NotInfoWire {
            side: side_name,
            index,
        });
    }
    let before = Term::Id(SortWord(word.sorts()[..index].to_vec()));
    let after = Term::Id(SortWord(word.sorts()[index + 1..].to_vec()));
    Ok(match side {
        Side::Domain => Term::seq(Term::par_all([before, Term::zero(), after]), t.clone()),
        Side::Codomain => Term::seq(t.clone(), Term::par_all([before, Term::discard(), after])),
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Classification {
    Empty,
    UniquePoint(Vec<RatFunc>),
    Underdetermined(usize),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MeasurementResult {
    pub relation: AffineRelation,
    pub classification: Classification,
}

impl Serialize for MeasurementResult {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeMap;
        let mut m = s.serialize_map(None)?;
        match &self.classification {
            Classification::Empty => m.serialize_entry("classification", "empty")?,
            Classification::UniquePoint(values) => {
                m.serialize_entry("classification", "unique_point")?;
                m.serialize_entry("values", values)?;
            }
            Classification::Underdetermined(dim) => {
                m.serialize_entry("classification", "underdetermined")?;
                m.serialize_entry("dim", dim)?;
            }
        }
        m.end()
    }
}

fn info_boundary(t: &Term, closed: bool) -> Result<(SortWord, SortWord), AnalysisError> {
    let s = sort_check(t)?;
    let ok = s.dom.all(Sort::Info) && s.cod.all(Sort::Info) && (!closed || s.dom.is_empty());
    if !ok {
        return Err(AnalysisError::NotInfoBoundary {
            what: if closed { "ε -> N^n" } else { "N^m -> N^n" },
            dom: s.dom,
            cod: s.cod,
        });
    }
    Ok((s.dom, s.cod))
}

/// Solves a closed circuit for its meter readings.
pub fn measure(t: &Term) -> Result<MeasurementResult, AnalysisError> {
    info_boundary(t, true)?;
    let relation = denote(t)?;
    let classification = match relation.offset() {
        None => Classification::Empty,
        Some(off) if relation.basis().is_empty() => Classification::UniquePoint(off.to_vec()),
        Some(_) => Classification::Underdetermined(relation.basis().len()),
    };
    Ok(MeasurementResult {
        relation,
        classification,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CheckReport {
    pub inclusion_holds: bool,
    pub equality_holds: bool,
    pub lhs: AffineRelation,
    pub rhs: AffineRelation,
    pub functional_witness: Vec<Functionality>,
}

impl CheckReport {
    fn new(
        lhs: AffineRelation,
        rhs: AffineRelation,
        functional_witness: Vec<Functionality>,
    ) -> Self {
        let inclusion_holds = rhs.contains(&lhs).expect("both sides share widths");
        CheckReport {
            equality_holds: lhs == rhs,
            inclusion_holds,
            lhs,
            rhs,
            functional_witness,
        }
    }

    pub fn strict(&self) -> bool {
        self.inclusion_holds && !self.equality_holds
    }
}

/// Relation with `m` inputs copied to `m * k` outputs, block after block.
fn diagonal(m: usize, k: usize) -> AffineRelation {
    let d = m + m * k;
    let mut e: Vec<Vector> = Vec::new();
    for b in 0..k {
        for j in 0..m {
            let mut row = zeros(d);
            row[j] = RatFunc::one();
            row[m + b * m + j] = RatFunc::from_int(-1);
            e.push(row);
        }
    }
    let f = vec![RatFunc::zero(); e.len()];
    AffineRelation::from_constraints(&e, &f, m, m * k).expect("widths agree")
}

/// Compares the joint readings of all meters with the readings taken one
/// meter at a time (all others discarded). Inputs, if any, are shared.
pub fn check_independent_measurement(t: &Term) -> Result<CheckReport, AnalysisError> {
    let (dom, cod) = info_boundary(t, false)?;
    let (m, n) = (dom.len(), cod.len());
    let lhs = denote(t)?;
    let mut singles = Vec::with_capacity(n);
    for j in 0..n {
        let kept = Term::par_all((0..n).map(|k| {
            if k == j {
                Term::id_n()
            } else {
                Term::discard()
            }
        }));
        singles.push(denote(&Term::seq(t.clone(), kept))?);
    }
    let witness = singles.iter().map(|r| r.functionality()).collect();
    let product = singles
        .iter()
        .fold(AffineRelation::identity(0), |acc, r| acc.tensor(r));
    let rhs = diagonal(m, n).compose(&product).expect("widths agree");
    Ok(CheckReport::new(lhs, rhs, witness))
}

fn independent_source(g: &Generator) -> Option<String> {
    match g {
        Generator::VSource(v) if !num_traits::Zero::is_zero(v) => Some(format!("V({v})")),
        Generator::CSource(i) if !num_traits::Zero::is_zero(i) => Some(format!("I({i})")),
        Generator::One => Some("one".into()),
        _ => None,
    }
}

/// Compares the circuit with the sum of its responses to one control input
/// at a time (all other inputs set to zero).
pub fn check_superposition(t: &Term) -> Result<CheckReport, AnalysisError> {
    let (dom, cod) = info_boundary(t, false)?;
    let mut found = None;
    t.for_each_generator(&mut |g| {
        if found.is_none() {
            found = independent_source(g);
        }
    });
    if let Some(which) = found {
        return Err(AnalysisError::IndependentSourcePresent { which });
    }
    let (m, p) = (dom.len(), cod.len());
    let rhs = denote(t)?;
    let mut singles = Vec::with_capacity(m);
    for j in 0..m {
        let feed = Term::par_all((0..m).map(|k| if k == j { Term::id_n() } else { Term::zero() }));
        singles.push(denote(&Term::seq(feed, t.clone()))?);
    }
    let witness = singles.iter().map(|r| r.functionality()).collect();
    let product = singles
        .iter()
        .fold(AffineRelation::identity(0), |acc, r| acc.tensor(r));
    // Sum the p readings of each single-source block coordinate-wise.
    let d = m * p + p;
    let mut e = Vec::with_capacity(p);
    for k in 0..p {
        let mut row = zeros(d);
        for j in 0..m {
            row[j * p + k] = RatFunc::one();
        }
        row[m * p + k] = RatFunc::from_int(-1);
        e.push(row);
    }
    let f = vec![RatFunc::zero(); p];
    let sum = AffineRelation::from_constraints(&e, &f, m * p, p).expect("widths agree");
    let lhs = product.compose(&sum).expect("widths agree");
    Ok(CheckReport::new(lhs, rhs, witness))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::build::{self, ids};
    use crate::diagram::parse_term;

    fn p(s: &str) -> Term {
        parse_term(s).unwrap()
    }

    fn rf(n: i64) -> RatFunc {
        RatFunc::from_int(n)
    }

    /// Loop: `top` on the outgoing wire, `bottom` on the return wire; both
    /// `E → N^k·E`, readings gathered on the left.
    fn loop_of(top: Term, k_top: usize, bottom: Term, k_bot: usize) -> Term {
        let e = Sort::Electric;
        let n = Sort::Info;
        let mut word = vec![n; k_top];
        word.push(e);
        word.extend(vec![n; k_bot]);
        word.push(e);
        let mut targets: Vec<usize> = (0..k_top).collect();
        targets.push(k_top + k_bot);
        targets.extend(k_top..k_top + k_bot);
        targets.push(k_top + k_bot + 1);
        Term::seq_all([
            build::cup(),
            Term::par(top, bottom),
            build::permutation(&SortWord(word), &targets),
            Term::par(ids(n, k_top + k_bot), build::cap()),
        ])
        .unwrap()
    }

    #[test]
    fn invariants_of_elements() {
        for s in [
            "R(3)",
            "junc",
            "cojunc",
            "V(2) | I(1)",
            "coopen ; open",
            "ammeter ; cvs",
        ] {
            let inv = check_port_invariants(&p(s)).unwrap();
            assert!(inv.relativity && inv.conservation, "{s}");
        }
        assert!(check_port_invariants(&p("copy")).is_err());
    }

    #[test]
    fn measure_battery_loop() {
        let t = loop_of(p("V(10) ; R(5)"), 0, p("ammeter"), 1);
        let r = measure(&t).unwrap();
        assert_eq!(r.classification, Classification::UniquePoint(vec![rf(2)]));
        let json = serde_json::to_value(&r).unwrap();
        assert_eq!(json["classification"], "unique_point");
        assert_eq!(json["values"], serde_json::json!(["2"]));
    }

    #[test]
    fn measure_underdetermined_and_empty() {
        // Two ideal wires in parallel, one with an ammeter: the split is free.
        let wires = Term::seq_all([p("junc"), p("ammeter | id:e"), p("id:n | cojunc")]).unwrap();
        let t = loop_of(p("id:e"), 0, wires, 1);
        assert_eq!(
            measure(&t).unwrap().classification,
            Classification::Underdetermined(1)
        );
        let shorted = loop_of(p("V(1)"), 0, p("id:e"), 0);
        assert_eq!(
            measure(&shorted).unwrap().classification,
            Classification::Empty
        );
    }

    #[test]
    fn plugging() {
        let am = p("R(2) ; ammeter");
        let plugged = plug(&am, Side::Codomain, 0, PlugMode::MeterDiscard).unwrap();
        assert_eq!(denote(&plugged).unwrap(), denote(&p("R(2)")).unwrap());
        let ccs = p("ccs");
        let off = plug(&ccs, Side::Domain, 0, PlugMode::SourceOff).unwrap();
        assert_eq!(denote(&off).unwrap(), denote(&p("open ; coopen")).unwrap());
        assert!(matches!(
            plug(&ccs, Side::Domain, 1, PlugMode::SourceOff),
            Err(AnalysisError::NotInfoWire { .. })
        ));
        assert!(plug(&ccs, Side::Codomain, 0, PlugMode::SourceOff).is_err());
    }

    #[test]
    fn independent_measurement_equality() {
        // Battery, two resistors, an ammeter in the loop and a voltmeter
        // across one resistor.
        let top = p("V(6) ; R(1)");
        let bottom = Term::seq_all([build::bridged(p("R(2)"), 0), p("id:n | ammeter")]).unwrap();
        let t = loop_of(top, 0, bottom, 2);
        let rep = check_independent_measurement(&t).unwrap();
        assert!(rep.inclusion_holds && rep.equality_holds);
        assert!(rep.functional_witness.iter().all(|f| f.is_function()));
    }

    #[test]
    fn short_circuit_is_strict() {
        // A current source shorted by two ideal wires, each with an ammeter.
        let wires = Term::seq_all([
            p("junc"),
            p("ammeter | ammeter"),
            p("id:n | swap:en | id:e"),
            p("id:nn | cojunc"),
        ])
        .unwrap();
        let t = loop_of(p("I(3)"), 0, wires, 2);
        let rep = check_independent_measurement(&t).unwrap();
        assert!(rep.inclusion_holds);
        assert!(!rep.equality_holds);
        assert!(rep.strict());
    }

    #[test]
    fn superposition_of_two_controls() {
        // Two controlled voltage sources and a resistor in one loop with an
        // ammeter: the reading is linear in both controls.
        let top = Term::seq_all([p("id:nn | R(2)"), p("id:n | cvs"), p("cvs")]).unwrap();
        let t = Term::seq_all([
            Term::par(ids(Sort::Info, 2), build::cup()),
            Term::par(top, p("ammeter")),
            p("swap:en | id:e"),
            Term::par(Term::id_n(), build::cap()),
        ])
        .unwrap();
        let rep = check_superposition(&t).unwrap();
        assert!(rep.inclusion_holds && rep.equality_holds);
    }

    #[test]
    fn superposition_strict_when_shorted() {
        // Two controlled voltage sources alone in a loop with an ammeter.
        let t = Term::seq_all([
            Term::par(ids(Sort::Info, 2), build::cup()),
            Term::par(p("(id:n | cvs) ; cvs"), p("ammeter")),
            p("swap:en | id:e"),
            Term::par(Term::id_n(), build::cap()),
        ])
        .unwrap();
        let rep = check_superposition(&t).unwrap();
        assert!(rep.inclusion_holds);
        assert!(!rep.equality_holds);
        let with_source = Term::seq(p("one"), p("scalar(2)"));
        assert!(matches!(
            check_superposition(&with_source),
            Err(AnalysisError::IndependentSourcePresent { .. })
        ));
    }
}
