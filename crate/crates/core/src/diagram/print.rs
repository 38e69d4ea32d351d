use std::fmt::Write;

use super::term::{Generator, Term};

/// Renders `t` in the text grammar; `parse_term` inverts it exactly.
///
/// `;` and `|` both associate to the left and `|` binds tighter, so only
/// right operands of the same or looser operator need parentheses.
pub fn pretty_print(t: &Term) -> String {
    let mut out = String::new();
    write_seq(t, &mut out);
    out
}

fn spine<'a>(t: &'a Term, par: bool) -> (&'a Term, Vec<&'a Term>) {
    let mut rights = Vec::new();
    let mut cur = t;
    loop {
        match (cur, par) {
            (Term::Seq(a, b), false) | (Term::Par(a, b), true) => {
                rights.push(b.as_ref());
                cur = a;
            }
            _ => break,
        }
    }
    rights.reverse();
    (cur, rights)
}

fn write_seq(t: &Term, out: &mut String) {
    let (head, rest) = spine(t, false);
    write_par(head, out);
    for r in rest {
        out.push_str(" ; ");
        if matches!(r, Term::Seq(..)) {
            out.push('(');
            write_seq(r, out);
            out.push(')');
        } else {
            write_par(r, out);
        }
    }
}

fn write_par(t: &Term, out: &mut String) {
    let (head, rest) = spine(t, true);
    write_atom(head, out);
    for r in rest {
        out.push_str(" | ");
        write_atom(r, out);
    }
}

fn write_atom(t: &Term, out: &mut String) {
    match t {
        Term::Seq(..) | Term::Par(..) => {
            out.push('(');
            write_seq(t, out);
            out.push(')');
        }
        Term::Id(w) => {
            out.push_str("id:");
            out.extend(w.sorts().iter().map(|s| s.letter()));
        }
        Term::Swap(a, b) => {
            let _ = write!(out, "swap:{}{}", a.letter(), b.letter());
        }
        Term::Gen(g) => write_gen(g, out),
    }
}

fn write_gen(g: &Generator, out: &mut String) {
    use Generator::*;
    let _ = match g {
        Resistor(r) => write!(out, "R({r})"),
        VSource(v) => write!(out, "V({v})"),
        CSource(i) => write!(out, "I({i})"),
        Inductor(l) => write!(out, "L({l})"),
        Capacitor(c) => write!(out, "C({c})"),
        Scalar(k) => write!(out, "scalar({k})"),
        CoScalar(k) => write!(out, "coscalar({k})"),
        ImpedanceBox { m, n, payload } => {
            if *m == 0 && *n == 0 {
                out.push_str("box{ ");
            } else {
                let _ = write!(out, "box({m},{n}){{ ");
            }
            write_seq(payload, out);
            out.push_str(" }");
            Ok(())
        }
        _ => {
            out.push_str(match g {
                Junction => "junc",
                CoJunction => "cojunc",
                OpenRight => "open",
                OpenLeft => "coopen",
                Voltmeter => "voltmeter",
                Ammeter => "ammeter",
                CtrlVSource => "cvs",
                CtrlCSource => "ccs",
                Copy => "copy",
                Discard => "discard",
                Add => "add",
                Zero => "zero",
                One => "one",
                CoCopy => "cocopy",
                CoDiscard => "codiscard",
                CoAdd => "coadd",
                CoZero => "cozero",
                _ => unreachable!(),
            });
            Ok(())
        }
    };
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::parse::parse_term;
    use crate::field::{q, Rational};

    fn round_trip(src: &str) {
        let t = parse_term(src).unwrap();
        let printed = pretty_print(&t);
        assert_eq!(parse_term(&printed).unwrap(), t, "{printed}");
    }

    #[test]
    fn examples() {
        assert_eq!(
            pretty_print(&Term::par(Term::id_e(), Term::open_right())),
            "id:e | open"
        );
        for s in ["V(5) ; R(2)", "box{ scalar(3*x) }", "copy ; (id:n | one)"] {
            round_trip(s);
        }
    }

    #[test]
    fn associativity() {
        let t = Term::seq(Term::seq(Term::copy(), Term::add()), Term::copy());
        assert_eq!(pretty_print(&t), "copy ; add ; copy");
        let r = Term::seq(Term::copy(), Term::seq(Term::add(), Term::copy()));
        assert_eq!(pretty_print(&r), "copy ; (add ; copy)");
        let p = Term::par(Term::id_n(), Term::par(Term::one(), Term::zero()));
        assert_eq!(pretty_print(&p), "id:n | (one | zero)");
        let s = Term::par(Term::seq(Term::one(), Term::copy()), Term::zero());
        assert_eq!(pretty_print(&s), "(one ; copy) | zero");
    }

    #[test]
    fn parameters_and_boxes() {
        let t = Term::seq(
            Term::resistor(Rational::new((-3).into(), 2.into())),
            Term::scalar("(3*x^2-1)/(x+2)".parse().unwrap()),
        );
        assert_eq!(parse_term(&pretty_print(&t)).unwrap(), t);
        round_trip("box(1,2){ id:nn ; copy | id:n }");
        round_trip("id: | id:en | swap:ne");
        assert_eq!(pretty_print(&Term::inductor(q(2))), "L(2)");
    }

    #[test]
    fn long_chain() {
        let t = Term::seq_all((0..5000).map(|_| Term::resistor(q(1)))).unwrap();
        assert_eq!(parse_term(&pretty_print(&t)).unwrap(), t);
    }
}
