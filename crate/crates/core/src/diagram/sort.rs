use num_traits::{Signed, Zero};
use thiserror::Error;

use super::term::{Generator, Sort, SortWord, Term};

/// Domain and codomain of a well-sorted term.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Sorting {
    pub dom: SortWord,
    pub cod: SortWord,
}

impl Sorting {
    fn new(dom: Vec<Sort>, cod: Vec<Sort>) -> Self {
        Sorting {
            dom: SortWord(dom),
            cod: SortWord(cod),
        }
    }
}

/// Path from the root: `0` selects the left operand (or a box payload), `1`
/// the right operand.
pub type TermPath = Vec<usize>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SortError {
    #[error("sort mismatch at {path:?}: expected {expected}, found {found}")]
    SortMismatch {
        path: TermPath,
        expected: SortWord,
        found: SortWord,
    },
    #[error("ill-formed impedance box at {path:?}: {reason}")]
    IllFormedBox { path: TermPath, reason: String },
    #[error("invalid parameter at {path:?}: {reason}")]
    InvalidParameter { path: TermPath, reason: String },
}

impl SortError {
    pub fn path(&self) -> &[usize] {
        match self {
            SortError::SortMismatch { path, .. }
            | SortError::IllFormedBox { path, .. }
            | SortError::InvalidParameter { path, .. } => path,
        }
    }
}

use Sort::{Electric as E, Info as N};

/// Sorting of a generator, ignoring parameter validity.
pub fn generator_sorting(g: &Generator) -> Sorting {
    use Generator::*;
    let (d, c): (Vec<Sort>, Vec<Sort>) = match g {
        Copy => (vec![N], vec![N, N]),
        Discard => (vec![N], vec![]),
        Scalar(_) | CoScalar(_) => (vec![N], vec![N]),
        Add => (vec![N, N], vec![N]),
        Zero | One | CoDiscard => (vec![], vec![N]),
        CoCopy => (vec![N, N], vec![N]),
        CoAdd => (vec![N], vec![N, N]),
        CoZero => (vec![N], vec![]),
        Resistor(_) | VSource(_) | CSource(_) | Inductor(_) | Capacitor(_) => (vec![E], vec![E]),
        Junction => (vec![E], vec![E, E]),
        CoJunction => (vec![E, E], vec![E]),
        OpenRight => (vec![E], vec![]),
        OpenLeft => (vec![], vec![E]),
        Voltmeter | Ammeter => (vec![E], vec![N, E]),
        CtrlVSource | CtrlCSource => (vec![N, E], vec![E]),
        ImpedanceBox { m, n, .. } => {
            let mut d = vec![N; *m];
            d.push(E);
            let mut c = vec![N; *n];
            c.push(E);
            (d, c)
        }
    };
    Sorting::new(d, c)
}

fn check_params(g: &Generator, path: &TermPath) -> Result<(), SortError> {
    use Generator::*;
    let bad = |reason: &str| {
        Err(SortError::InvalidParameter {
            path: path.clone(),
            reason: reason.to_string(),
        })
    };
    match g {
        Resistor(r) if r.is_negative() => bad("resistance must be >= 0"),
        Inductor(l) if !l.is_positive() => bad("inductance must be > 0"),
        Capacitor(c) if !c.is_positive() => bad("capacitance must be > 0"),
        _ => Ok(()),
    }
}

/// True if `t` uses only affine-algebra generators and structure on
/// information wires.
pub fn is_affine_algebra_term(t: &Term) -> bool {
    match t {
        Term::Gen(g) => g.is_affine_algebra(),
        Term::Id(w) => w.all(N),
        Term::Swap(a, b) => *a == N && *b == N,
        Term::Seq(a, b) | Term::Par(a, b) => is_affine_algebra_term(a) && is_affine_algebra_term(b),
    }
}

/// Computes the unique sorting of `t`.
pub fn sort_check(t: &Term) -> Result<Sorting, SortError> {
    let mut path = Vec::new();
    check(t, &mut path)
}

fn check(t: &Term, path: &mut TermPath) -> Result<Sorting, SortError> {
    match t {
        Term::Gen(g) => {
            check_params(g, path)?;
            if let Generator::ImpedanceBox { m, n, payload } = g {
                path.push(0);
                if !is_affine_algebra_term(payload) {
                    return Err(SortError::IllFormedBox {
                        path: path.clone(),
                        reason:
                            "payload must use only affine-algebra generators on information wires"
                                .into(),
                    });
                }
                let s = check(payload, path)?;
                if s.dom.len() != m + 1 || s.cod.len() != n + 1 {
                    return Err(SortError::IllFormedBox {
                        path: path.clone(),
                        reason: format!(
                            "payload has sorting {} -> {}, expected {} -> {} wires",
                            s.dom,
                            s.cod,
                            m + 1,
                            n + 1
                        ),
                    });
                }
                path.pop();
            }
            Ok(generator_sorting(g))
        }
        Term::Id(w) => Ok(Sorting {
            dom: w.clone(),
            cod: w.clone(),
        }),
        Term::Swap(a, b) => Ok(Sorting::new(vec![*a, *b], vec![*b, *a])),
        Term::Seq(..) => {
            // Left-nested chains are walked iteratively.
            let mut chain = Vec::new();
            let mut cur = t;
            let mut depth = 0;
            while let Term::Seq(a, b) = cur {
                chain.push(b.as_ref());
                cur = a;
                depth += 1;
            }
            let base = path.len();
            path.extend(std::iter::repeat(0).take(depth));
            let first = check(cur, path)?;
            let dom = first.dom;
            let mut cod = first.cod;
            for (k, next) in chain.iter().rev().enumerate() {
                path.truncate(base + depth - 1 - k);
                path.push(1);
                let s = check(next, path)?;
                if s.dom != cod {
                    return Err(SortError::SortMismatch {
                        path: path.clone(),
                        expected: cod,
                        found: s.dom,
                    });
                }
                cod = s.cod;
            }
            path.truncate(base);
            Ok(Sorting { dom, cod })
        }
        Term::Par(a, b) => {
            path.push(0);
            let sa = check(a, path)?;
            path.pop();
            path.push(1);
            let sb = check(b, path)?;
            path.pop();
            Ok(Sorting {
                dom: sa.dom.concat(&sb.dom),
                cod: sa.cod.concat(&sb.cod),
            })
        }
    }
}

/// Follows a path to the subterm it names.
pub fn subterm<'a>(t: &'a Term, path: &[usize]) -> Option<&'a Term> {
    let mut cur = t;
    for &step in path {
        cur = match (cur, step) {
            (Term::Seq(a, _), 0) | (Term::Par(a, _), 0) => a,
            (Term::Seq(_, b), 1) | (Term::Par(_, b), 1) => b,
            (Term::Gen(Generator::ImpedanceBox { payload, .. }), 0) => payload,
            _ => return None,
        };
    }
    Some(cur)
}

/// True if every parameter is zero (used to recognise switched-off sources).
pub fn source_is_off(g: &Generator) -> bool {
    match g {
        Generator::VSource(v) | Generator::CSource(v) => v.is_zero(),
        _ => false,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{q, RatFunc};

    #[test]
    fn series_source_resistor() {
        let t = Term::seq(Term::vsource(q(5)), Term::resistor(q(2)));
        let s = sort_check(&t).unwrap();
        assert_eq!(s.dom, SortWord(vec![E]));
        assert_eq!(s.cod, SortWord(vec![E]));
    }

    #[test]
    fn voltmeter_output() {
        let t = Term::seq(Term::resistor(q(1)), Term::voltmeter());
        let s = sort_check(&t).unwrap();
        assert_eq!(s.cod, SortWord(vec![N, E]));
    }

    #[test]
    fn info_into_electric_is_rejected() {
        let t = Term::seq(Term::copy(), Term::resistor(q(1)));
        match sort_check(&t) {
            Err(SortError::SortMismatch {
                path,
                expected,
                found,
            }) => {
                assert_eq!(path, vec![1]);
                assert_eq!(expected, SortWord(vec![N, N]));
                assert_eq!(found, SortWord(vec![E]));
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn nested_error_path() {
        let bad = Term::seq(Term::copy(), Term::resistor(q(1)));
        let t = Term::seq(
            Term::seq(Term::id_e(), Term::id_e()),
            Term::par(Term::id_n(), bad),
        );
        match sort_check(&t) {
            Err(e) => assert_eq!(e.path(), &[1, 1, 1]),
            Ok(_) => panic!(),
        }
    }

    #[test]
    fn boxes() {
        let b = Term::boxed(Term::scalar(RatFunc::from_int(3)));
        assert_eq!(sort_check(&b).unwrap().dom, SortWord(vec![E]));
        let bad = Term::boxed(Term::copy());
        assert!(matches!(
            sort_check(&bad),
            Err(SortError::IllFormedBox { .. })
        ));
        let electric = Term::boxed(Term::resistor(q(1)));
        assert!(matches!(
            sort_check(&electric),
            Err(SortError::IllFormedBox { .. })
        ));
        let gen = Term::Gen(Generator::ImpedanceBox {
            m: 0,
            n: 1,
            payload: Box::new(
                Term::seq_all([Term::cozero(), Term::codiscard(), Term::copy()]).unwrap(),
            ),
        });
        assert_eq!(sort_check(&gen).unwrap().cod, SortWord(vec![N, E]));
    }

    #[test]
    fn parameters() {
        assert!(sort_check(&Term::resistor(q(0))).is_ok());
        assert!(matches!(
            sort_check(&Term::resistor(q(-1))),
            Err(SortError::InvalidParameter { .. })
        ));
        assert!(sort_check(&Term::inductor(q(0))).is_err());
        assert!(sort_check(&Term::capacitor(q(-2))).is_err());
    }

    #[test]
    fn long_chain_does_not_recurse() {
        let t = Term::seq_all((0..5000).map(|_| Term::resistor(q(1)))).unwrap();
        let s = sort_check(&t).unwrap();
        assert_eq!(s.dom, s.cod);
        let bad = Term::seq(t, Term::copy());
        assert_eq!(sort_check(&bad).unwrap_err().path(), &[1]);
    }
}
