//! Seeded generators of parameters, relations, terms and netlists for the
//! property suites and the CLI's randomized checks.

use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};

use crate::affine::{AffineRelation, Vector};
use crate::diagram::build::ids;
use crate::diagram::{generator_sorting, Generator, Sort, SortWord, Term};
use crate::field::{Poly, RatFunc, Rational};
use crate::netlist::{Control, Element, ElementKind, Netlist};

use Sort::{Electric as E, Info as N};

pub fn rng(seed: u64) -> StdRng {
    StdRng::seed_from_u64(seed)
}

/// A small rational `p/q` with `|p| ≤ 6`, `1 ≤ q ≤ 4`.
pub fn rational(rng: &mut impl Rng) -> Rational {
    Rational::new(rng.gen_range(-6..=6).into(), rng.gen_range(1..=4).into())
}

pub fn nonneg_rational(rng: &mut impl Rng) -> Rational {
    Rational::new(rng.gen_range(0..=8).into(), rng.gen_range(1..=3).into())
}

pub fn positive_rational(rng: &mut impl Rng) -> Rational {
    Rational::new(rng.gen_range(1..=8).into(), rng.gen_range(1..=3).into())
}

pub fn poly(rng: &mut impl Rng, max_degree: usize) -> Poly {
    let d = rng.gen_range(0..=max_degree);
    Poly::from_coeffs((0..=d).map(|_| rational(rng)).collect())
}

/// A rational function of low degree; mostly constants and polynomials.
pub fn ratfunc(rng: &mut impl Rng) -> RatFunc {
    match rng.gen_range(0..6) {
        0..=2 => RatFunc::constant(rational(rng)),
        3 => RatFunc::from_poly(poly(rng, 2)),
        _ => loop {
            let den = poly(rng, 2);
            if !den.is_zero() {
                break RatFunc::new(poly(rng, 2), den).expect("nonzero denominator");
            }
        },
    }
}

pub fn nonzero_ratfunc(rng: &mut impl Rng) -> RatFunc {
    loop {
        let f = ratfunc(rng);
        if !f.is_zero() {
            return f;
        }
    }
}

/// A random relation `dom → cod`: empty now and then, otherwise a point
/// plus a random span of dimension at most `dom + cod`.
pub fn relation(rng: &mut impl Rng, dom: usize, cod: usize) -> AffineRelation {
    let d = dom + cod;
    if rng.gen_ratio(1, 10) {
        return AffineRelation::empty(dom, cod);
    }
    fn vec(rng: &mut impl Rng, d: usize) -> Vector {
        (0..d)
            .map(|_| {
                if rng.gen_ratio(1, 3) {
                    RatFunc::zero()
                } else {
                    ratfunc(rng)
                }
            })
            .collect()
    }
    let offset = vec(rng, d);
    let k = rng.gen_range(0..=d);
    let basis = (0..k).map(|_| vec(rng, d)).collect();
    crate::affine::canonicalize(offset, basis, dom, cod).expect("widths agree")
}

fn merge_info(rng: &mut impl Rng, m: usize) -> Term {
    match m {
        0 => [Term::zero(), Term::one(), Term::codiscard()]
            .choose(rng)
            .unwrap()
            .clone(),
        1 => Term::id_n(),
        _ => {
            let g = if rng.gen_bool(0.6) {
                Term::add()
            } else {
                Term::cocopy()
            };
            Term::seq(Term::par(merge_info(rng, m - 1), Term::id_n()), g)
        }
    }
}

fn split_info(rng: &mut impl Rng, n: usize) -> Term {
    match n {
        0 => {
            if rng.gen_bool(0.6) {
                Term::discard()
            } else {
                Term::cozero()
            }
        }
        1 => Term::id_n(),
        _ => {
            let g = if rng.gen_bool(0.6) {
                Term::copy()
            } else {
                Term::coadd()
            };
            Term::seq(g, Term::par(Term::id_n(), split_info(rng, n - 1)))
        }
    }
}

fn unary_info(rng: &mut impl Rng) -> Term {
    match rng.gen_range(0..5) {
        0 => Term::id_n(),
        1 | 2 => Term::scalar(ratfunc(rng)),
        3 => Term::coscalar(ratfunc(rng)),
        _ => Term::seq(Term::par(Term::id_n(), merge_info(rng, 0)), Term::add()),
    }
}

/// A term of the affine algebra on information wires, `N^m → N^n`, of
/// nesting depth at most `depth`.
pub fn gaa_term(rng: &mut impl Rng, m: usize, n: usize, depth: usize) -> Term {
    let choice = if depth == 0 { 0 } else { rng.gen_range(0..4) };
    match choice {
        1 => {
            let k = rng.gen_range(0..=2);
            Term::seq(
                gaa_term(rng, m, k, depth - 1),
                gaa_term(rng, k, n, depth - 1),
            )
        }
        2 if m + n >= 2 => {
            let m1 = rng.gen_range(0..=m);
            let n1 = rng.gen_range(0..=n);
            Term::par(
                gaa_term(rng, m1, n1, depth - 1),
                gaa_term(rng, m - m1, n - n1, depth - 1),
            )
        }
        _ => {
            let mid = unary_info(rng);
            Term::seq_all([merge_info(rng, m), mid, split_info(rng, n)]).expect("nonempty")
        }
    }
}

/// A payload `N → N` for impedance boxes.
pub fn gaa_payload(rng: &mut impl Rng, depth: usize) -> Term {
    gaa_term(rng, 1, 1, depth)
}

fn pick_generator(rng: &mut impl Rng, wires: &[Sort]) -> Generator {
    use Generator::*;
    let e_count = wires.iter().filter(|&&s| s == E).count();
    match rng.gen_range(0..24) {
        0 => Resistor(nonneg_rational(rng)),
        1 => VSource(rational(rng)),
        2 => CSource(rational(rng)),
        3 => Inductor(positive_rational(rng)),
        4 => Capacitor(positive_rational(rng)),
        5 if e_count < 6 => Junction,
        6 => CoJunction,
        7 if e_count < 6 => OpenLeft,
        8 => OpenRight,
        9 => Voltmeter,
        10 => Ammeter,
        11 => CtrlVSource,
        12 => CtrlCSource,
        13 => Copy,
        14 => Discard,
        15 => Scalar(ratfunc(rng)),
        16 => Add,
        17 => Zero,
        18 => One,
        19 => CoCopy,
        20 => CoScalar(ratfunc(rng)),
        21 => CoAdd,
        22 => ImpedanceBox {
            m: 0,
            n: 0,
            payload: Box::new(gaa_payload(rng, 2)),
        },
        _ => Resistor(nonneg_rational(rng)),
    }
}

/// A term with an all-electric boundary built by a random walk over wire
/// states, using at most `max_generators` generators. Information wires
/// created along the way are discarded at the end.
pub fn electric_term(rng: &mut impl Rng, max_generators: usize) -> Term {
    let start = rng.gen_range(0..=3);
    let mut wires: Vec<Sort> = vec![E; start];
    let mut layers = Vec::new();
    let budget = rng.gen_range(1..=max_generators.max(1));
    let mut used = 0;
    let mut attempts = 0;
    while used < budget && attempts < budget * 20 {
        attempts += 1;
        if wires.len() >= 2 && rng.gen_ratio(1, 6) {
            let p = rng.gen_range(0..wires.len() - 1);
            layers.push(Term::par_all([
                Term::Id(SortWord::from(wires[..p].to_vec())),
                Term::Swap(wires[p], wires[p + 1]),
                Term::Id(SortWord::from(wires[p + 2..].to_vec())),
            ]));
            wires.swap(p, p + 1);
            continue;
        }
        if wires.len() > 8 {
            // Shrink: close an info wire or an electric terminal.
            if let Some(p) = wires.iter().position(|&s| s == N) {
                layers.push(place(&wires, p, Term::discard()));
                wires.remove(p);
            } else {
                let p = rng.gen_range(0..wires.len());
                layers.push(place(&wires, p, Term::open_right()));
                wires.remove(p);
            }
            used += 1;
            continue;
        }
        let g = pick_generator(rng, &wires);
        let s = generator_sorting(&g);
        let dom = s.dom.sorts();
        let fits: Vec<usize> = (0..=wires.len().saturating_sub(dom.len()))
            .filter(|&p| p + dom.len() <= wires.len() && &wires[p..p + dom.len()] == dom)
            .collect();
        let Some(&p) = fits.choose(rng) else { continue };
        let size = Term::Gen(g.clone()).size();
        layers.push(place(&wires, p, Term::Gen(g)));
        wires.splice(p..p + dom.len(), s.cod.sorts().iter().copied());
        used += size;
    }
    while let Some(p) = wires.iter().position(|&s| s == N) {
        layers.push(place(&wires, p, Term::discard()));
        wires.remove(p);
    }
    Term::seq_all(layers).unwrap_or_else(|| ids(E, start))
}

fn place(wires: &[Sort], p: usize, g: Term) -> Term {
    let len = crate::diagram::sort_check(&g).expect("generator").dom.len();
    Term::par_all([
        Term::Id(SortWord::from(wires[..p].to_vec())),
        g,
        Term::Id(SortWord::from(wires[p + len..].to_vec())),
    ])
}

fn node_name(k: usize) -> String {
    k.to_string()
}

fn element(
    kind: ElementKind,
    name: String,
    a: usize,
    b: usize,
    value: Option<Rational>,
) -> Element {
    Element {
        kind,
        name,
        node_a: node_name(a),
        node_b: node_name(b),
        value,
        ctrl: None,
        gain: crate::field::q(1),
    }
}

/// Options for [`netlist`].
#[derive(Debug, Clone)]
pub struct NetlistShape {
    pub max_nodes: usize,
    pub max_elements: usize,
    pub max_ports: usize,
    pub kinds: Vec<ElementKind>,
    /// Maximum number of external control inputs.
    pub max_inputs: usize,
}

impl Default for NetlistShape {
    fn default() -> Self {
        use ElementKind::*;
        NetlistShape {
            max_nodes: 10,
            max_elements: 15,
            max_ports: 2,
            kinds: vec![R, L, C, V, I, AM, VM, CV, CI],
            max_inputs: 0,
        }
    }
}

/// A random valid netlist. Controlled sources read a meter when one exists,
/// otherwise an external input when allowed, otherwise they are skipped.
pub fn netlist(rng: &mut impl Rng, shape: &NetlistShape) -> Netlist {
    use ElementKind::*;
    let nodes = rng.gen_range(1..=shape.max_nodes.max(1));
    let count = rng.gen_range(0..=shape.max_elements);
    let inputs = rng.gen_range(0..=shape.max_inputs);
    let mut nl = Netlist {
        inputs,
        ..Netlist::default()
    };
    let ports = rng.gen_range(0..=shape.max_ports);
    let mut kinds: Vec<ElementKind> = (0..count)
        .map(|_| *shape.kinds.choose(rng).expect("kinds"))
        .collect();
    // Meters first so controls can refer to them.
    kinds.sort_by_key(|k| !k.is_meter());
    let mut meters = Vec::new();
    for (i, kind) in kinds.into_iter().enumerate() {
        let a = rng.gen_range(0..nodes);
        let b = rng.gen_range(0..nodes);
        let name = format!("{}{i}", kind.to_string().to_lowercase());
        let value = match kind {
            R => Some(nonneg_rational(rng)),
            L | C => Some(positive_rational(rng)),
            V | I => Some(rational(rng)),
            _ => None,
        };
        let mut el = element(kind, name.clone(), a, b, value);
        if kind.is_controlled() {
            let use_input = inputs > 0 && (meters.is_empty() || rng.gen_bool(0.5));
            el.ctrl = if use_input {
                Some(Control::Input(rng.gen_range(0..inputs)))
            } else if let Some(m) = meters.choose(rng) {
                Some(Control::Meter(String::clone(m)))
            } else {
                continue;
            };
            el.gain = if rng.gen_bool(0.5) {
                crate::field::q(1)
            } else {
                rational(rng)
            };
        }
        if kind.is_meter() {
            meters.push(name);
        }
        nl.push(el);
    }
    for k in 0..ports {
        let a = rng.gen_range(0..nodes);
        let b = rng.gen_range(0..nodes);
        nl.push(element(PORT, format!("p{k}"), a, b, None));
    }
    nl
}

/// A one-port of resistors and independent sources with at most
/// `max_elements` elements, compiled from a one-PORT netlist.
pub fn resistive_one_port(rng: &mut impl Rng, max_elements: usize) -> Term {
    use ElementKind::*;
    let shape = NetlistShape {
        max_nodes: 5,
        max_elements,
        max_ports: 0,
        kinds: vec![R, R, V, I],
        max_inputs: 0,
    };
    let mut nl = netlist(rng, &shape);
    let n = nl.nodes.len().max(1);
    let (a, b) = (rng.gen_range(0..n), rng.gen_range(0..n));
    let name = |k: usize| nl.nodes.get(k).cloned().unwrap_or_else(|| node_name(k));
    let (a, b) = (name(a), name(b));
    nl.push(Element {
        kind: PORT,
        name: "p".into(),
        node_a: a,
        node_b: b,
        value: None,
        ctrl: None,
        gain: crate::field::q(1),
    });
    crate::netlist::netlist_to_term(&nl)
}

/// A closed circuit `ε → N^k` with between one and `max_meters` meters.
pub fn meter_circuit(rng: &mut impl Rng, max_meters: usize) -> Term {
    use ElementKind::*;
    let shape = NetlistShape {
        max_nodes: 5,
        max_elements: 6,
        max_ports: 0,
        kinds: vec![R, L, C, V, I],
        max_inputs: 0,
    };
    let mut nl = netlist(rng, &shape);
    let meters = rng.gen_range(1..=max_meters.max(1));
    let n = nl.nodes.len().max(2);
    for k in 0..meters {
        let kind = if rng.gen_bool(0.5) { AM } else { VM };
        nl.push(element(
            kind,
            format!("m{k}"),
            rng.gen_range(0..n),
            rng.gen_range(0..n),
            None,
        ));
    }
    crate::netlist::netlist_to_term(&nl)
}

/// A source-free circuit `N^M → N^k` whose `1 ≤ M ≤ max_controlled`
/// controlled sources are driven by external inputs.
pub fn controlled_circuit(rng: &mut impl Rng, max_controlled: usize) -> Term {
    use ElementKind::*;
    let shape = NetlistShape {
        max_nodes: 5,
        max_elements: 6,
        max_ports: 0,
        kinds: vec![R, R, L, C, AM, VM],
        max_inputs: 0,
    };
    let mut nl = netlist(rng, &shape);
    let m = rng.gen_range(1..=max_controlled.max(1));
    let n = nl.nodes.len().max(2);
    for k in 0..m {
        let kind = if rng.gen_bool(0.5) { CV } else { CI };
        let mut el = element(
            kind,
            format!("s{k}"),
            rng.gen_range(0..n),
            rng.gen_range(0..n),
            None,
        );
        el.ctrl = Some(Control::Input(k));
        el.gain = if rng.gen_bool(0.5) {
            crate::field::q(1)
        } else {
            rational(rng)
        };
        nl.push(el);
    }
    if nl.meters().is_empty() {
        nl.push(element(
            AM,
            "m".into(),
            rng.gen_range(0..n),
            rng.gen_range(0..n),
            None,
        ));
    }
    crate::netlist::netlist_to_term(&nl)
}

/// A wire permutation term for round-trip tests.
pub fn permutation_term(rng: &mut impl Rng, n: usize) -> Term {
    let word: Vec<Sort> = (0..n)
        .map(|_| if rng.gen_bool(0.5) { E } else { N })
        .collect();
    let mut targets: Vec<usize> = (0..n).collect();
    targets.shuffle(rng);
    crate::diagram::build::permutation(&SortWord::from(word), &targets)
}
