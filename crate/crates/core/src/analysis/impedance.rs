use super::checks::port_invariants_of;
use super::AnalysisError;
use crate::affine::AffineRelation;
use crate::diagram::{sort_check, Sort, Term};
use crate::field::RatFunc;
use crate::semantics::denote;

fn check_payload(c: &Term) -> Result<(), AnalysisError> {
    let s = sort_check(c)?;
    if s.dom.sorts() != [Sort::Info] || s.cod.sorts() != [Sort::Info] {
        return Err(AnalysisError::BadPayloadSort {
            dom: s.dom,
            cod: s.cod,
        });
    }
    Ok(())
}

/// Payload of two boxes in series: impedances add pointwise.
pub fn series_box(c1: Term, c2: Term) -> Result<Term, AnalysisError> {
    check_payload(&c1)?;
    check_payload(&c2)?;
    Ok(Term::seq_all([Term::copy(), Term::par(c1, c2), Term::add()]).expect("nonempty"))
}

/// Payload of two boxes in parallel: the current splits, the voltage is
/// shared.
pub fn parallel_box(c1: Term, c2: Term) -> Result<Term, AnalysisError> {
    check_payload(&c1)?;
    check_payload(&c2)?;
    Ok(Term::seq_all([Term::coadd(), Term::par(c1, c2), Term::cocopy()]).expect("nonempty"))
}

/// Payload of a box turned around.
pub fn reverse_box(c: Term) -> Result<Term, AnalysisError> {
    check_payload(&c)?;
    let m = || Term::scalar(RatFunc::from_int(-1));
    Ok(Term::seq_all([m(), c, m()]).expect("nonempty"))
}

/// The `0 → 0` relation of a box whose terminals are joined: nonempty iff
/// some current gives zero voltage.
pub fn close_box(c: Term) -> Result<AffineRelation, AnalysisError> {
    check_payload(&c)?;
    let t = Term::seq_all([Term::codiscard(), c, Term::cozero()]).expect("nonempty");
    Ok(denote(&t)?)
}

/// `ε → N` term denoting the constant `c`.
pub fn const_term(c: &RatFunc) -> Term {
    if c.is_zero() {
        Term::zero()
    } else if c.is_one() {
        Term::one()
    } else {
        Term::seq(Term::one(), Term::scalar(c.clone()))
    }
}

/// `N → ε` term admitting exactly the value `c`.
pub fn force_eq_term(c: &RatFunc) -> Term {
    if c.is_zero() {
        return Term::cozero();
    }
    Term::seq_all([
        Term::par(Term::id_n(), const_term(&-c)),
        Term::add(),
        Term::cozero(),
    ])
    .expect("nonempty")
}

/// Payload `{(i, v) : v = V}` of a voltage source.
pub fn vsource_payload(v: &RatFunc) -> Term {
    Term::seq(Term::discard(), const_term(v))
}

/// Payload `{(i, v) : i = I}` of a current source.
pub fn csource_payload(i: &RatFunc) -> Term {
    Term::seq(force_eq_term(i), Term::codiscard())
}

/// A payload denoting the given `1 → 1` relation.
pub fn synthesize_box(z: &AffineRelation) -> Term {
    assert_eq!(
        (z.dom_width(), z.cod_width()),
        (1, 1),
        "impedance relations are 1 -> 1"
    );
    let Some(off) = z.offset() else {
        let clash = Term::seq(Term::one(), Term::cozero());
        return Term::seq_all([Term::discard(), clash, Term::codiscard()]).expect("nonempty");
    };
    let basis = z.basis();
    match basis.len() {
        0 => Term::seq(force_eq_term(&off[0]), const_term(&off[1])),
        1 => {
            let (bi, bv) = (&basis[0][0], &basis[0][1]);
            if bi.is_zero() {
                csource_payload(&off[0])
            } else {
                let r = bv / bi;
                let v0 = &off[1] - &(&r * &off[0]);
                if v0.is_zero() {
                    Term::scalar(r)
                } else {
                    Term::seq(Term::par(Term::scalar(r), const_term(&v0)), Term::add())
                }
            }
        }
        _ => Term::seq(Term::discard(), Term::codiscard()),
    }
}

/// The current/voltage relation `{(i, v)}` of a one-port `E → E`, with the
/// left potential pinned to zero.
pub fn one_port_relation(t: &Term) -> Result<AffineRelation, AnalysisError> {
    let s = sort_check(t)?;
    if s.dom.sorts() != [Sort::Electric] || s.cod.sorts() != [Sort::Electric] {
        return Err(AnalysisError::NotOnePort {
            dom: s.dom,
            cod: s.cod,
        });
    }
    let rel = denote(t)?;
    let inv = port_invariants_of(&rel, s.dom.sorts(), s.cod.sorts());
    if !(inv.relativity && inv.conservation) {
        return Err(AnalysisError::InvariantViolation {
            relativity: inv.relativity,
            conservation: inv.conservation,
        });
    }
    // Coordinates: φ1, i1, φ2, i2.
    Ok(rel.restrict(0, &RatFunc::zero()).project(&[1, 2], 1))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::parse_term;
    use crate::field::q;

    fn d(t: &Term) -> AffineRelation {
        denote(t).unwrap()
    }

    fn p(s: &str) -> Term {
        parse_term(s).unwrap()
    }

    fn rf(n: i64) -> RatFunc {
        RatFunc::from_int(n)
    }

    #[test]
    fn series_examples() {
        let b = Term::boxed(series_box(p("scalar(2)"), p("scalar(3)")).unwrap());
        assert_eq!(d(&b), d(&Term::resistor(q(5))));
        let b = Term::boxed(series_box(p("scalar(x)"), p("scalar(2*x)")).unwrap());
        assert_eq!(d(&b), d(&Term::inductor(q(3))));
        let c = p("coscalar(x+1)");
        assert_eq!(d(&series_box(p("scalar(0)"), c.clone()).unwrap()), d(&c));
    }

    #[test]
    fn parallel_examples() {
        let b = Term::boxed(parallel_box(p("scalar(2)"), p("scalar(3)")).unwrap());
        assert_eq!(d(&b), d(&Term::resistor(crate::field::qf(6, 5))));
        let b = Term::boxed(parallel_box(p("scalar(0)"), p("scalar(0)")).unwrap());
        assert_eq!(d(&b), d(&Term::resistor(q(0))));
        let pb = parallel_box(vsource_payload(&rf(1)), vsource_payload(&rf(2))).unwrap();
        assert!(d(&pb).is_empty());
    }

    #[test]
    fn reverse_examples() {
        let r = reverse_box(p("scalar(7)")).unwrap();
        assert_eq!(d(&r), d(&p("scalar(7)")));
        let v = reverse_box(vsource_payload(&rf(3))).unwrap();
        assert_eq!(d(&v), d(&vsource_payload(&rf(-3))));
        let c = p("(scalar(2) | one) ; add");
        let rr = reverse_box(reverse_box(c.clone()).unwrap()).unwrap();
        assert_eq!(d(&rr), d(&c));
    }

    #[test]
    fn close_examples() {
        assert!(!close_box(p("scalar(5)")).unwrap().is_empty());
        assert!(close_box(vsource_payload(&rf(3))).unwrap().is_empty());
        assert!(!close_box(csource_payload(&rf(0))).unwrap().is_empty());
    }

    #[test]
    fn payload_sort_is_checked() {
        assert!(matches!(
            series_box(p("copy"), p("scalar(1)")),
            Err(AnalysisError::BadPayloadSort { .. })
        ));
    }

    #[test]
    fn one_port_examples() {
        let z = one_port_relation(&Term::resistor(q(4))).unwrap();
        assert_eq!(z, d(&p("scalar(4)")));
        let z = one_port_relation(&p("open ; coopen")).unwrap();
        assert_eq!(z, d(&csource_payload(&rf(0))));
        let z = one_port_relation(&p("V(10) ; R(5)")).unwrap();
        assert!(z.contains_point(&[rf(1), rf(15)]));
        assert_eq!(z.dim(), Some(1));
        assert!(matches!(
            one_port_relation(&p("copy")),
            Err(AnalysisError::NotOnePort { .. })
        ));
    }

    #[test]
    fn synthesis_round_trips_every_shape() {
        let shapes = [
            "scalar(5)",
            "discard ; one ; scalar(2)",
            "(id:n | (one ; scalar(-2))) ; add ; cozero ; codiscard",
            "(id:n | (one ; scalar(-2))) ; add ; cozero ; one ; scalar(3)",
            "discard ; codiscard",
            "discard ; one ; cozero ; codiscard",
            "(scalar(x) | (one ; scalar(4))) ; add",
            "coscalar(x)",
        ];
        for s in shapes {
            let z = d(&p(s));
            assert_eq!(d(&synthesize_box(&z)), z, "{s}");
        }
        assert_eq!(synthesize_box(&d(&p("scalar(5)"))), p("scalar(5)"));
    }
}
