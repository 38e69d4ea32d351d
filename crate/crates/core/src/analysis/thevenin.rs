use num_traits::Signed;
use serde::Serialize;

use super::impedance::one_port_relation;
use super::AnalysisError;
use crate::affine::AffineRelation;
use crate::diagram::{build, Generator, Sort, Term};
use crate::field::{q, RatFunc};

/// Canonical shape of a resistor/source one-port.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TheveninForm {
    /// `v = V0 + R·i`
    SeriesVR {
        v0: RatFunc,
        r: RatFunc,
    },
    /// `i = I0`, any voltage.
    CurrentSrc {
        i0: RatFunc,
    },
    EmptyCircuit,
    NonCanonical {
        z: AffineRelation,
    },
}

impl TheveninForm {
    /// A circuit in canonical form with the same denotation.
    pub fn to_term(&self) -> Option<Term> {
        let constant = |f: &RatFunc| f.as_constant();
        match self {
            TheveninForm::SeriesVR { v0, r } => Some(Term::seq(
                Term::vsource(constant(v0)?),
                Term::resistor(constant(r)?),
            )),
            TheveninForm::CurrentSrc { i0 } => Some(Term::csource(constant(i0)?)),
            TheveninForm::EmptyCircuit => {
                let shorted = Term::seq_all([
                    build::cup(),
                    Term::par(Term::vsource(q(1)), Term::id_e()),
                    build::cap(),
                ])
                .expect("nonempty");
                Some(Term::par(Term::id_e(), shorted))
            }
            TheveninForm::NonCanonical { .. } => None,
        }
    }
}

impl Serialize for TheveninForm {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeMap;
        let mut m = s.serialize_map(None)?;
        match self {
            TheveninForm::SeriesVR { v0, r } => {
                m.serialize_entry("case", "series_vr")?;
                m.serialize_entry("V0", v0)?;
                m.serialize_entry("R", r)?;
            }
            TheveninForm::CurrentSrc { i0 } => {
                m.serialize_entry("case", "current_src")?;
                m.serialize_entry("I0", i0)?;
            }
            TheveninForm::EmptyCircuit => m.serialize_entry("case", "empty_circuit")?,
            TheveninForm::NonCanonical { z } => {
                m.serialize_entry("case", "non_canonical")?;
                m.serialize_entry("Z", z)?;
            }
        }
        m.end()
    }
}

fn check_resistive(t: &Term) -> Result<(), AnalysisError> {
    let bad = |which: String| Err(AnalysisError::ForbiddenElement { which });
    match t {
        Term::Gen(g) => {
            use Generator::*;
            match g {
                Resistor(_) | VSource(_) | CSource(_) | Junction | CoJunction | OpenRight
                | OpenLeft => Ok(()),
                other => bad(Term::Gen(other.clone()).to_string()),
            }
        }
        Term::Id(w) if w.all(Sort::Electric) => Ok(()),
        Term::Swap(Sort::Electric, Sort::Electric) => Ok(()),
        Term::Id(_) | Term::Swap(..) => bad(format!("information wire in {t}")),
        Term::Seq(..) | Term::Par(..) => {
            // Iterative walk: resistive chains can be long.
            let mut stack = vec![t];
            while let Some(u) = stack.pop() {
                match u {
                    Term::Seq(a, b) | Term::Par(a, b) => {
                        stack.push(b);
                        stack.push(a);
                    }
                    leaf => check_resistive(leaf)?,
                }
            }
            Ok(())
        }
    }
}

/// Classifies a one-port built from resistors, independent sources,
/// junctions and open terminals.
pub fn thevenin(t: &Term) -> Result<TheveninForm, AnalysisError> {
    check_resistive(t)?;
    let z = one_port_relation(t)?;
    let Some(off) = z.offset() else {
        return Ok(TheveninForm::EmptyCircuit);
    };
    let basis = z.basis();
    if basis.len() != 1 {
        return Ok(TheveninForm::NonCanonical { z });
    }
    let (bi, bv) = (&basis[0][0], &basis[0][1]);
    if bi.is_zero() {
        return Ok(TheveninForm::CurrentSrc { i0: off[0].clone() });
    }
    let r = bv / bi;
    match r.as_constant() {
        Some(c) if !c.is_negative() => {
            let v0 = &off[1] - &(&r * &off[0]);
            Ok(TheveninForm::SeriesVR { v0, r })
        }
        _ => Ok(TheveninForm::NonCanonical { z }),
    }
}

/// Rewrites a current source in parallel with a positive resistor as a
/// voltage source in series with the same resistor.
///
/// With potentials rising along the current through both sources, the
/// equivalent voltage is `-R·I`.
pub fn source_transform(t: &Term) -> Result<Term, AnalysisError> {
    let mismatch = || {
        AnalysisError::PatternMismatch("expected junc ; (I(i) | R(r)) ; cojunc with r > 0".into())
    };
    let (i, r) = match_parallel_pair(t).ok_or_else(mismatch)?;
    if !r.is_positive() {
        return Err(mismatch());
    }
    Ok(Term::seq(Term::vsource(-(&r * &i)), Term::resistor(r)))
}

fn match_parallel_pair(t: &Term) -> Option<(crate::field::Rational, crate::field::Rational)> {
    use Generator::*;
    // Accept either association of the three-factor chain.
    let (first, mid, last) = match t {
        Term::Seq(a, c) => match (a.as_ref(), c.as_ref()) {
            (Term::Seq(j, m), _) => (j.as_ref(), m.as_ref(), c.as_ref()),
            (_, Term::Seq(m, cj)) => (a.as_ref(), m.as_ref(), cj.as_ref()),
            _ => return None,
        },
        _ => return None,
    };
    if first != &Term::junction() || last != &Term::cojunction() {
        return None;
    }
    let Term::Par(x, y) = mid else { return None };
    match (x.as_ref(), y.as_ref()) {
        (Term::Gen(CSource(i)), Term::Gen(Resistor(r)))
        | (Term::Gen(Resistor(r)), Term::Gen(CSource(i))) => Some((i.clone(), r.clone())),
        _ => None,
    }
}
