//! Circuits built only from basic elements, meters and controlled sources
//! that denote each information-wire generator.
//!
//! The recurring trick: a controlled current source forces a loop current
//! equal to its input, and ammeters threaded through the loop read it back;
//! dually, controlled voltage sources set a potential difference that a
//! voltmeter reads back.

use super::AnalysisError;
use crate::diagram::build::{bridged, cap, close_loop, cup, ids};
use crate::diagram::{Generator, Sort, Term};
use crate::field::{q, Poly, RatFunc, Rational};

use Sort::{Electric as E, Info as N};

fn seq(ts: impl IntoIterator<Item = Term>) -> Term {
    Term::seq_all(ts).expect("nonempty")
}

fn par(ts: impl IntoIterator<Item = Term>) -> Term {
    Term::par_all(ts)
}

pub fn copy() -> Term {
    let x = seq([
        Term::ctrl_csource(),
        Term::ammeter(),
        par([Term::id_n(), Term::ammeter()]),
    ]);
    close_loop(x, 1, 2)
}

pub fn discard() -> Term {
    seq([
        par([Term::id_n(), Term::open_left()]),
        Term::ctrl_vsource(),
        Term::open_right(),
    ])
}

pub fn add() -> Term {
    let sources = seq([
        par([Term::id_n(), Term::ctrl_vsource()]),
        Term::ctrl_vsource(),
    ]);
    seq([
        par([ids(N, 2), Term::open_left()]),
        bridged(sources, 2),
        par([Term::id_n(), Term::open_right()]),
    ])
}

pub fn zero() -> Term {
    seq([
        Term::open_left(),
        Term::ammeter(),
        par([Term::id_n(), Term::open_right()]),
    ])
}

pub fn one() -> Term {
    seq([
        Term::open_left(),
        bridged(Term::vsource(q(1)), 0),
        par([Term::id_n(), Term::open_right()]),
    ])
}

pub fn codiscard() -> Term {
    seq([
        Term::open_left(),
        Term::voltmeter(),
        par([Term::id_n(), Term::open_right()]),
    ])
}

pub fn cozero() -> Term {
    seq([
        par([Term::id_n(), Term::open_left()]),
        Term::ctrl_csource(),
        Term::open_right(),
    ])
}

pub fn coadd() -> Term {
    let x = seq([
        Term::ctrl_csource(),
        Term::junction(),
        par([Term::ammeter(), Term::ammeter()]),
        par([Term::id_n(), Term::Swap(E, N), Term::id_e()]),
        par([ids(N, 2), Term::cojunction()]),
    ]);
    close_loop(x, 1, 2)
}

/// Two controlled voltage sources facing each other around a loop can only
/// agree; a voltmeter across one reports the common value.
pub fn cocopy() -> Term {
    seq([
        par([ids(N, 2), cup()]),
        par([Term::id_n(), Term::Swap(N, E), Term::id_e()]),
        par([bridged(Term::ctrl_vsource(), 1), Term::ctrl_vsource()]),
        par([Term::id_n(), cap()]),
    ])
}

/// Negation: an ammeter on the return wire of a current-source loop.
pub fn antipode() -> Term {
    seq([
        par([Term::id_n(), cup()]),
        par([Term::ctrl_csource(), Term::ammeter()]),
        par([Term::Swap(E, N), Term::id_e()]),
        par([Term::id_n(), cap()]),
    ])
}

/// Multiplication by the impedance of a two-terminal `elem`: drive the input
/// as a current through it and read the voltage.
fn through(elem: Term) -> Term {
    close_loop(seq([Term::ctrl_csource(), bridged(elem, 0)]), 1, 1)
}

fn scalar_const(c: &Rational) -> Term {
    use num_traits::{Signed, Zero};
    if c.is_zero() {
        seq([discard(), zero()])
    } else if c.is_negative() {
        seq([antipode(), through(Term::resistor(-c))])
    } else {
        through(Term::resistor(c.clone()))
    }
}

fn fan_out(n: usize) -> Term {
    match n {
        0 => discard(),
        1 => Term::id_n(),
        _ => seq([copy(), par([Term::id_n(), fan_out(n - 1)])]),
    }
}

fn fan_in(n: usize) -> Term {
    match n {
        0 => zero(),
        1 => Term::id_n(),
        _ => seq([par([Term::id_n(), fan_in(n - 1)]), add()]),
    }
}

fn scalar_poly(p: &Poly) -> Term {
    let monomials: Vec<Term> = p
        .coeffs()
        .iter()
        .enumerate()
        .filter(|(_, c)| !num_traits::Zero::is_zero(*c))
        .map(|(k, c)| {
            let mut chain: Vec<Term> = (0..k).map(|_| through(Term::inductor(q(1)))).collect();
            if !num_traits::One::is_one(c) || k == 0 {
                chain.push(scalar_const(c));
            }
            seq(chain)
        })
        .collect();
    if monomials.is_empty() {
        return scalar_const(&q(0));
    }
    let n = monomials.len();
    seq([fan_out(n), par(monomials), fan_in(n)])
}

/// `{(a, b) : a = q·b}` for a polynomial `q`.
fn coscalar_poly(p: &Poly) -> Term {
    seq([
        par([Term::id_n(), seq([codiscard(), copy()])]),
        par([Term::id_n(), scalar_poly(p), Term::id_n()]),
        par([cocopy(), Term::id_n()]),
        par([discard(), Term::id_n()]),
    ])
}

pub fn scalar(k: &RatFunc) -> Term {
    if let Some(c) = k.as_constant() {
        return scalar_const(&c);
    }
    // Denominators are monic, so a constant one is 1.
    if k.den().is_constant() {
        return scalar_poly(k.num());
    }
    seq([scalar_poly(k.num()), coscalar_poly(k.den())])
}

pub fn coscalar(k: &RatFunc) -> Term {
    if k.is_zero() {
        seq([cozero(), codiscard()])
    } else {
        scalar(&k.inv().expect("nonzero"))
    }
}

/// Information cup `ε → N·N`.
pub fn info_cup() -> Term {
    seq([codiscard(), copy()])
}

/// Information cap `N·N → ε`.
pub fn info_cap() -> Term {
    seq([cocopy(), discard()])
}

/// Voltage-controlled current source `E·E → E·E`: the voltage across the
/// first port sets the current through the second.
pub fn vccs() -> Term {
    seq([
        par([Term::voltmeter(), Term::id_e()]),
        par([Term::Swap(N, E), Term::id_e()]),
        par([Term::id_e(), Term::ctrl_csource()]),
    ])
}

/// Gadget by name; `scalar` and `coscalar` take a parameter.
pub fn gadget(name: &str, param: Option<&RatFunc>) -> Result<Term, AnalysisError> {
    let need = || AnalysisError::UnknownGadget(format!("{name} needs a parameter"));
    Ok(match name {
        "copy" => copy(),
        "discard" => discard(),
        "add" => add(),
        "zero" => zero(),
        "one" => one(),
        "cocopy" => cocopy(),
        "codiscard" => codiscard(),
        "coadd" => coadd(),
        "cozero" => cozero(),
        "antipode" => antipode(),
        "cup" => info_cup(),
        "cap" => info_cap(),
        "vccs" => vccs(),
        "scalar" => scalar(param.ok_or_else(need)?),
        "coscalar" => coscalar(param.ok_or_else(need)?),
        other => return Err(AnalysisError::UnknownGadget(other.to_string())),
    })
}

/// Gadget for an information-wire generator, `None` for anything else.
pub fn gadget_for(g: &Generator) -> Option<Term> {
    use Generator::*;
    Some(match g {
        Copy => copy(),
        Discard => discard(),
        Scalar(k) => scalar(k),
        Add => add(),
        Zero => zero(),
        CoCopy => cocopy(),
        CoDiscard => codiscard(),
        CoScalar(k) => coscalar(k),
        CoAdd => coadd(),
        CoZero => cozero(),
        One => one(),
        _ => return None,
    })
}

/// Replaces every information-wire generator and impedance box by a
/// physical circuit with the same denotation.
pub fn realize(t: &Term) -> Term {
    match t {
        Term::Gen(Generator::ImpedanceBox { m, n, payload }) => seq([
            par([ids(N, *m), Term::ammeter()]),
            par([realize(payload), Term::id_e()]),
            par([ids(N, *n), Term::ctrl_vsource()]),
        ]),
        Term::Gen(g) => gadget_for(g).unwrap_or_else(|| t.clone()),
        Term::Id(_) | Term::Swap(..) => t.clone(),
        Term::Seq(..) => {
            let mut factors = Vec::new();
            let mut cur = t;
            while let Term::Seq(a, b) = cur {
                factors.push(b.as_ref());
                cur = a;
            }
            factors.push(cur);
            factors.reverse();
            seq(factors.into_iter().map(realize))
        }
        Term::Par(a, b) => Term::par(realize(a), realize(b)),
    }
}

/// True if `t` uses no information-wire generators and no boxes.
pub fn is_physical(t: &Term) -> bool {
    !t.any_generator(|g| g.is_affine_algebra() || matches!(g, Generator::ImpedanceBox { .. }))
}
