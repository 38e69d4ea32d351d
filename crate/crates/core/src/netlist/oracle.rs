use super::{Control, ElementKind, Netlist};
use crate::affine::{zeros, AffineRelation, Vector};
use crate::field::RatFunc;

/// Direct interpretation: node potentials, element currents and meter
/// readings as unknowns, one equation per element and per node, then
/// projection onto the boundary `E^P·N^M → E^P·N^X`.
///
/// No potential is pinned, so the result agrees with the compositional
/// semantics exactly rather than up to gauge.
pub fn netlist_to_relation_direct(nl: &Netlist) -> AffineRelation {
    let ports = nl.ports();
    let meters = nl.meters();
    let exports = nl.info_outputs();
    let (p, m) = (ports.len(), nl.inputs);
    let idx = nl.node_index();

    // Variable layout: [φL, iL]^P, inputs, [φR, iR]^P, exports, then
    // internal: node potentials, element currents, meter readings.
    let port_in = |k: usize| 2 * k;
    let input = |k: usize| 2 * p + k;
    let port_out = |k: usize| 2 * p + m + 2 * k;
    let boundary = 4 * p + m + exports.len();
    let node_base = boundary;
    let cur_base = node_base + nl.nodes.len();
    let read_base = cur_base + nl.elements.len();
    let nvars = read_base + meters.len();
    let export_var = |x: usize| 4 * p + m + x;

    let mut rows: Vec<Vector> = Vec::new();
    let mut rhs: Vec<RatFunc> = Vec::new();
    let mut eq = |terms: &[(usize, RatFunc)], c: RatFunc| {
        let mut v = zeros(nvars);
        for (i, a) in terms {
            v[*i] = &v[*i] + a;
        }
        rows.push(v);
        rhs.push(c);
    };
    let one = RatFunc::one;
    let neg = || RatFunc::from_int(-1);
    let k = |r: &crate::field::Rational| RatFunc::constant(r.clone());

    // Kirchhoff current law, as (variable, sign) inflows per node.
    let mut kcl: Vec<Vec<(usize, RatFunc)>> = vec![Vec::new(); nl.nodes.len()];
    for (pi, &e) in ports.iter().enumerate() {
        let el = &nl.elements[e];
        let (a, b) = (idx[el.node_a.as_str()], idx[el.node_b.as_str()]);
        eq(
            &[(port_in(pi), one()), (node_base + b, neg())],
            RatFunc::zero(),
        );
        eq(
            &[(port_out(pi), one()), (node_base + a, neg())],
            RatFunc::zero(),
        );
        kcl[b].push((port_in(pi) + 1, one()));
        kcl[a].push((port_out(pi) + 1, neg()));
    }
    for (x, &mi) in exports.iter().enumerate() {
        let r = meters.iter().position(|&j| j == mi).expect("meter");
        eq(
            &[(export_var(x), one()), (read_base + r, neg())],
            RatFunc::zero(),
        );
    }
    for (e, el) in nl.elements.iter().enumerate() {
        if el.kind == ElementKind::PORT {
            continue;
        }
        let (a, b) = (
            node_base + idx[el.node_a.as_str()],
            node_base + idx[el.node_b.as_str()],
        );
        let i = cur_base + e;
        kcl[b - node_base].push((i, neg()));
        kcl[a - node_base].push((i, one()));
        let ctrl = || match el.ctrl.as_ref().expect("validated") {
            Control::Input(j) => input(*j),
            Control::Meter(name) => {
                read_base
                    + meters
                        .iter()
                        .position(|&j| nl.elements[j].name == *name)
                        .expect("validated")
            }
        };
        let reading = || read_base + meters.iter().position(|&j| j == e).expect("meter");
        let val = || k(el.value.as_ref().expect("validated"));
        let x = RatFunc::x;
        use ElementKind::*;
        match el.kind {
            R => eq(&[(a, one()), (b, neg()), (i, -val())], RatFunc::zero()),
            L => eq(
                &[(a, one()), (b, neg()), (i, -(&x() * &val()))],
                RatFunc::zero(),
            ),
            C => {
                let cx = &x() * &val();
                eq(&[(i, one()), (a, -cx.clone()), (b, cx)], RatFunc::zero())
            }
            V => eq(&[(a, one()), (b, neg())], val()),
            I => eq(&[(i, one())], val()),
            AM => {
                eq(&[(a, one()), (b, neg())], RatFunc::zero());
                eq(&[(reading(), one()), (i, neg())], RatFunc::zero());
            }
            VM => {
                eq(&[(i, one())], RatFunc::zero());
                eq(
                    &[(reading(), one()), (a, neg()), (b, one())],
                    RatFunc::zero(),
                );
            }
            CV => eq(
                &[(a, one()), (b, neg()), (ctrl(), -k(&el.gain))],
                RatFunc::zero(),
            ),
            CI => eq(&[(i, one()), (ctrl(), -k(&el.gain))], RatFunc::zero()),
            PORT => unreachable!(),
        }
    }
    for terms in kcl {
        eq(&terms, RatFunc::zero());
    }

    let all = AffineRelation::from_constraints(&rows, &rhs, nvars, 0).expect("consistent widths");
    let coords: Vec<usize> = (0..boundary).collect();
    all.project(&coords, 2 * p + m)
}
