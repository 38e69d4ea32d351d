//! Netlist to term, in layers: meters, reading distribution, remaining
//! elements, wire grouping, node spiders, port ordering.
//!
//! Every element is bent into an `ε → E·E` (or `N → E·E`) piece with a cup,
//! so its left terminal wire carries the negated element current into the
//! spider of its node and Kirchhoff's current law comes out of the spider.

use super::{Control, ElementKind, Netlist};
use crate::diagram::build::{cup, ids, permutation, spider};
use crate::diagram::{Generator, Sort, SortWord, Term};
use crate::field::{q, RatFunc};

use Sort::{Electric as E, Info as N};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Wire {
    PortIn(usize),
    PortOut(usize),
    Input(usize),
    Reading(usize),
    Feed(usize),
    Export(usize),
    /// Left terminal of element `e`.
    Left(usize),
    /// Right terminal of element `e`.
    Right(usize),
}

impl Wire {
    fn sort(self) -> Sort {
        match self {
            Wire::Input(_) | Wire::Reading(_) | Wire::Feed(_) | Wire::Export(_) => N,
            _ => E,
        }
    }
}

fn word(ws: &[Wire]) -> SortWord {
    ws.iter().map(|w| w.sort()).collect::<Vec<_>>().into()
}

fn reorder(cur: &[Wire], want: &[Wire]) -> Term {
    let targets: Vec<usize> = cur
        .iter()
        .map(|w| want.iter().position(|v| v == w).expect("wire kept"))
        .collect();
    permutation(&word(cur), &targets)
}

fn fan_out(n: usize) -> Term {
    match n {
        0 => Term::discard(),
        1 => Term::id_n(),
        _ => Term::seq(Term::copy(), Term::par(Term::id_n(), fan_out(n - 1))),
    }
}

fn generator(kind: ElementKind, value: Option<&crate::field::Rational>) -> Generator {
    use ElementKind::*;
    let v = || value.cloned().expect("validated");
    match kind {
        R => Generator::Resistor(v()),
        L => Generator::Inductor(v()),
        C => Generator::Capacitor(v()),
        V => Generator::VSource(v()),
        I => Generator::CSource(v()),
        AM => Generator::Ammeter,
        VM => Generator::Voltmeter,
        CV => Generator::CtrlVSource,
        CI => Generator::CtrlCSource,
        PORT => unreachable!("ports are not elements"),
    }
}

/// Compiles a netlist into a term `E^P·N^M → E^P·N^X`, where `P` counts
/// ports, `M` external control inputs and `X` exported meter readings.
pub fn netlist_to_term(nl: &Netlist) -> Term {
    let ports = nl.ports();
    let meters = nl.meters();
    let ctrls = nl.controlled();
    let exports = nl.info_outputs();
    let p = ports.len();
    if nl.elements.is_empty() && nl.inputs == 0 {
        return Term::Id(SortWord::empty());
    }

    let mut layers = Vec::new();
    let mut cur: Vec<Wire> = (0..p)
        .map(Wire::PortIn)
        .chain((0..nl.inputs).map(Wire::Input))
        .collect();

    // Meters, each bent as cup ; (id:e | meter).
    let mut pieces = vec![Term::Id(word(&cur))];
    for (k, &e) in meters.iter().enumerate() {
        let g = Term::Gen(generator(nl.elements[e].kind, None));
        pieces.push(Term::seq(cup(), Term::par(Term::id_e(), g)));
        cur.extend([Wire::Left(e), Wire::Reading(k), Wire::Right(e)]);
    }
    layers.push(Term::par_all(pieces));

    // Gather information wires at the end: inputs first, then readings.
    let electric: Vec<Wire> = cur.iter().copied().filter(|w| w.sort() == E).collect();
    let sources: Vec<Wire> = (0..nl.inputs)
        .map(Wire::Input)
        .chain((0..meters.len()).map(Wire::Reading))
        .collect();
    let want: Vec<Wire> = electric.iter().chain(&sources).copied().collect();
    layers.push(reorder(&cur, &want));

    // Fan each source out to its consumers, or export it.
    let consumers = |src: Wire| -> Vec<usize> {
        (0..ctrls.len())
            .filter(|&c| match (&nl.elements[ctrls[c]].ctrl, src) {
                (Some(Control::Input(k)), Wire::Input(j)) => *k == j,
                (Some(Control::Meter(m)), Wire::Reading(j)) => *m == nl.elements[meters[j]].name,
                _ => false,
            })
            .collect()
    };
    let mut pieces = vec![Term::Id(word(&electric))];
    let mut fanned = electric.clone();
    for &src in &sources {
        let mut outs: Vec<Wire> = consumers(src).into_iter().map(Wire::Feed).collect();
        if let Wire::Reading(j) = src {
            if let Some(x) = exports.iter().position(|&m| m == meters[j]) {
                outs.push(Wire::Export(x));
            }
        }
        pieces.push(fan_out(outs.len()));
        fanned.extend(outs);
    }
    layers.push(Term::par_all(pieces));
    let want: Vec<Wire> = electric
        .iter()
        .copied()
        .chain((0..ctrls.len()).map(Wire::Feed))
        .chain((0..exports.len()).map(Wire::Export))
        .collect();
    layers.push(reorder(&fanned, &want));

    // Gains, then the remaining elements.
    if ctrls.iter().any(|&c| nl.elements[c].gain != q(1)) {
        let mut pieces = vec![Term::Id(word(&electric))];
        for &c in &ctrls {
            let g = &nl.elements[c].gain;
            pieces.push(if *g == q(1) {
                Term::id_n()
            } else {
                Term::scalar(RatFunc::constant(g.clone()))
            });
        }
        pieces.push(ids(N, exports.len()));
        layers.push(Term::par_all(pieces));
    }
    let mut pieces = vec![Term::Id(word(&electric))];
    let mut cur = electric;
    for &c in &ctrls {
        let g = Term::Gen(generator(nl.elements[c].kind, None));
        pieces.push(
            Term::seq_all([
                Term::par(Term::id_n(), cup()),
                Term::par(Term::Swap(N, E), Term::id_e()),
                Term::par(Term::id_e(), g),
            ])
            .expect("nonempty"),
        );
        cur.extend([Wire::Left(c), Wire::Right(c)]);
    }
    for (e, el) in nl.elements.iter().enumerate() {
        if el.kind.is_meter() || el.kind.is_controlled() || el.kind == ElementKind::PORT {
            continue;
        }
        let g = Term::Gen(generator(el.kind, el.value.as_ref()));
        pieces.push(Term::seq(cup(), Term::par(Term::id_e(), g)));
        cur.extend([Wire::Left(e), Wire::Right(e)]);
    }
    pieces.push(ids(N, exports.len()));
    layers.push(Term::par_all(pieces));
    cur.extend((0..exports.len()).map(Wire::Export));

    // Group wires by node and join each group with a spider.
    let idx = nl.node_index();
    let node_of = |w: Wire| -> usize {
        let (e, right) = match w {
            Wire::PortIn(k) => (ports[k], false),
            Wire::Left(e) => (e, false),
            Wire::Right(e) => (e, true),
            _ => unreachable!(),
        };
        let el = &nl.elements[e];
        idx[if right {
            el.node_a.as_str()
        } else {
            el.node_b.as_str()
        }]
    };
    let mut want = Vec::new();
    let mut spiders = Vec::new();
    let mut outs = Vec::new();
    for n in 0..nl.nodes.len() {
        let here: Vec<Wire> = cur
            .iter()
            .copied()
            .filter(|&w| w.sort() == E && node_of(w) == n)
            .collect();
        let right: Vec<Wire> = (0..p)
            .filter(|&k| idx[nl.elements[ports[k]].node_a.as_str()] == n)
            .map(Wire::PortOut)
            .collect();
        spiders.push(spider(here.len(), right.len()));
        want.extend(here);
        outs.extend(right);
    }
    want.extend((0..exports.len()).map(Wire::Export));
    outs.extend((0..exports.len()).map(Wire::Export));
    layers.push(reorder(&cur, &want));
    spiders.push(ids(N, exports.len()));
    layers.push(Term::par_all(spiders));
    let fin: Vec<Wire> = (0..p)
        .map(Wire::PortOut)
        .chain((0..exports.len()).map(Wire::Export))
        .collect();
    layers.push(reorder(&outs, &fin));

    let layers: Vec<Term> = layers
        .into_iter()
        .filter(|t| !matches!(t, Term::Id(_)))
        .collect();
    let dom: Vec<Wire> = (0..p)
        .map(Wire::PortIn)
        .chain((0..nl.inputs).map(Wire::Input))
        .collect();
    Term::seq_all(layers).unwrap_or_else(|| Term::Id(word(&dom)))
}
