//! The interpretation of terms as affine relations.
//!
//! An electric wire contributes the coordinates `(φ, i)` in that order, an
//! information wire a single coordinate. Port currents are oriented left to
//! right throughout, so a two-terminal element carries the same `i` on both
//! sides.

use rayon::prelude::*;

use crate::affine::{unit, zeros, AffineRelation, Vector};
use crate::diagram::{sort_check, Generator, Sort, SortError, Term};
use crate::field::{RatFunc, Rational};

/// Denotation of a well-sorted term.
pub fn denote(t: &Term) -> Result<AffineRelation, SortError> {
    let s = sort_check(t)?;
    let start = AffineRelation::identity(s.dom.width());
    Ok(apply(start, t, 0))
}

/// Denotes a batch of terms in parallel, preserving order.
pub fn denote_many(ts: &[Term]) -> Vec<Result<AffineRelation, SortError>> {
    ts.par_iter().map(denote).collect()
}

/// `acc ; (id_pos ⊗ t ⊗ id)`, for an already sort-checked `t`.
fn apply(acc: AffineRelation, t: &Term, pos: usize) -> AffineRelation {
    match t {
        Term::Id(_) => acc,
        Term::Gen(g) => {
            let r = generator_relation(g);
            acc.compose_block(&r, pos).expect("sort-checked widths")
        }
        _ if t.is_structural() => permute_at(acc, &structural_targets(t), pos),
        Term::Par(..) => {
            // A parallel layer is denoted on its own (tensoring is cheap) and
            // composed once, skipping identity factors at either end.
            let factors = par_factors(t);
            let Some(lo) = factors.iter().position(|f| !matches!(f, Term::Id(_))) else {
                return acc;
            };
            let hi = factors
                .iter()
                .rposition(|f| !matches!(f, Term::Id(_)))
                .expect("lo exists");
            let lead: usize = factors[..lo].iter().map(|f| cod_width(f)).sum();
            let block = factors[lo..=hi]
                .iter()
                .map(|f| standalone(f))
                .reduce(|a, b| a.tensor(&b))
                .expect("nonempty");
            acc.compose_block(&block, pos + lead)
                .expect("sort-checked widths")
        }
        Term::Seq(..) => {
            let factors = seq_factors(t);
            let mut acc = acc;
            let mut k = 0;
            while k < factors.len() {
                if factors[k].is_structural() {
                    // Merge a run of structural factors into one permutation.
                    let mut targets = structural_targets(factors[k]);
                    k += 1;
                    while k < factors.len() && factors[k].is_structural() {
                        let next = structural_targets(factors[k]);
                        for x in targets.iter_mut() {
                            *x = next[*x];
                        }
                        k += 1;
                    }
                    acc = permute_at(acc, &targets, pos);
                } else {
                    acc = apply(acc, factors[k], pos);
                    k += 1;
                }
            }
            acc
        }
        Term::Swap(..) => unreachable!("swaps are structural"),
    }
}

fn standalone(t: &Term) -> AffineRelation {
    apply(AffineRelation::identity(dom_width(t)), t, 0)
}

fn permute_at(acc: AffineRelation, local: &[usize], pos: usize) -> AffineRelation {
    if local.iter().enumerate().all(|(j, &k)| j == k) {
        return acc;
    }
    let mut targets: Vec<usize> = (0..acc.cod_width()).collect();
    for (j, &k) in local.iter().enumerate() {
        targets[pos + j] = pos + k;
    }
    acc.permute_cod(&targets)
}

fn par_factors(t: &Term) -> Vec<&Term> {
    let mut out = Vec::new();
    let mut stack = vec![t];
    while let Some(u) = stack.pop() {
        match u {
            Term::Par(a, b) => {
                stack.push(b);
                stack.push(a);
            }
            _ => out.push(u),
        }
    }
    out
}

/// Flattens nested sequential composites into their factors, in order.
fn seq_factors(t: &Term) -> Vec<&Term> {
    let mut out = Vec::new();
    let mut stack = vec![t];
    while let Some(u) = stack.pop() {
        match u {
            Term::Seq(a, b) => {
                stack.push(b);
                stack.push(a);
            }
            _ => out.push(u),
        }
    }
    out
}

fn dom_width(t: &Term) -> usize {
    match t {
        Term::Gen(g) => crate::diagram::generator_sorting(g).dom.width(),
        Term::Id(w) => w.width(),
        Term::Swap(a, b) => a.width() + b.width(),
        Term::Par(..) => par_factors(t).into_iter().map(dom_width).sum(),
        Term::Seq(..) => dom_width(seq_factors(t)[0]),
    }
}

fn cod_width(t: &Term) -> usize {
    match t {
        Term::Gen(g) => crate::diagram::generator_sorting(g).cod.width(),
        Term::Id(w) => w.width(),
        Term::Swap(a, b) => a.width() + b.width(),
        Term::Par(..) => par_factors(t).into_iter().map(cod_width).sum(),
        Term::Seq(..) => cod_width(seq_factors(t).last().expect("nonempty")),
    }
}

/// Coordinate permutation of a structural term: input `j` goes to output
/// `targets[j]`.
fn structural_targets(t: &Term) -> Vec<usize> {
    match t {
        Term::Id(w) => (0..w.width()).collect(),
        Term::Swap(a, b) => {
            let (wa, wb) = (a.width(), b.width());
            (0..wa).map(|j| wb + j).chain(0..wb).collect()
        }
        Term::Par(a, b) => {
            let mut ta = structural_targets(a);
            let off = ta.len();
            ta.extend(structural_targets(b).into_iter().map(|k| k + off));
            ta
        }
        Term::Seq(..) => {
            let mut factors = seq_factors(t).into_iter();
            let mut acc = structural_targets(factors.next().expect("nonempty"));
            for f in factors {
                let next = structural_targets(f);
                for k in acc.iter_mut() {
                    *k = next[*k];
                }
            }
            acc
        }
        Term::Gen(_) => panic!("not structural"),
    }
}

fn rf(c: &Rational) -> RatFunc {
    RatFunc::constant(c.clone())
}

/// Builds `{ z : Σ coeff·z[idx] = rhs }` from sparse rows.
fn equations(dom: usize, cod: usize, rows: &[(&[(usize, RatFunc)], RatFunc)]) -> AffineRelation {
    let d = dom + cod;
    let mut e = Vec::with_capacity(rows.len());
    let mut f = Vec::with_capacity(rows.len());
    for (terms, rhs) in rows {
        let mut row = zeros(d);
        for (i, c) in terms.iter() {
            row[*i] = &row[*i] + c;
        }
        e.push(row);
        f.push(rhs.clone());
    }
    AffineRelation::from_constraints(&e, &f, dom, cod).expect("well-formed equations")
}

fn one() -> RatFunc {
    RatFunc::one()
}

fn neg_one() -> RatFunc {
    RatFunc::from_int(-1)
}

fn z() -> RatFunc {
    RatFunc::zero()
}

/// Denotation of a single generator.
pub fn generator_relation(g: &Generator) -> AffineRelation {
    use Generator::*;
    let (p, m) = (one(), neg_one());
    match g {
        Copy => equations(
            1,
            2,
            &[
                (&[(1, p.clone()), (0, m.clone())], z()),
                (&[(2, p.clone()), (0, m.clone())], z()),
            ],
        ),
        Discard => AffineRelation::full(1, 0),
        Scalar(k) => equations(1, 1, &[(&[(1, p.clone()), (0, -k)], z())]),
        Add => equations(
            2,
            1,
            &[(&[(2, p.clone()), (0, m.clone()), (1, m.clone())], z())],
        ),
        Zero => equations(0, 1, &[(&[(0, p.clone())], z())]),
        One => equations(0, 1, &[(&[(0, p.clone())], one())]),
        CoCopy | CoDiscard | CoScalar(_) | CoAdd | CoZero => {
            let base = match g {
                CoCopy => Copy,
                CoDiscard => Discard,
                CoScalar(k) => Scalar(k.clone()),
                CoAdd => Add,
                _ => Zero,
            };
            generator_relation(&base).converse()
        }
        // Two-terminal elements over (φ1, i1, φ2, i2).
        Resistor(r) => equations(
            2,
            2,
            &[
                (&[(1, p.clone()), (3, m.clone())], z()),
                (&[(2, p.clone()), (0, m.clone()), (1, -rf(r))], z()),
            ],
        ),
        VSource(v) => equations(
            2,
            2,
            &[
                (&[(1, p.clone()), (3, m.clone())], z()),
                (&[(2, p.clone()), (0, m.clone())], rf(v)),
            ],
        ),
        CSource(i) => equations(
            2,
            2,
            &[(&[(1, p.clone())], rf(i)), (&[(3, p.clone())], rf(i))],
        ),
        Inductor(l) => equations(
            2,
            2,
            &[
                (&[(1, p.clone()), (3, m.clone())], z()),
                (
                    &[(2, p.clone()), (0, m.clone()), (1, -(rf(l) * RatFunc::x()))],
                    z(),
                ),
            ],
        ),
        Capacitor(c) => {
            let cx = rf(c) * RatFunc::x();
            equations(
                2,
                2,
                &[
                    (&[(1, p.clone()), (3, m.clone())], z()),
                    (&[(1, p.clone()), (2, -&cx), (0, cx)], z()),
                ],
            )
        }
        // (φ1, i1) → (φ2, i2, φ3, i3)
        Junction => equations(
            2,
            4,
            &[
                (&[(2, p.clone()), (0, m.clone())], z()),
                (&[(4, p.clone()), (0, m.clone())], z()),
                (&[(1, p.clone()), (3, m.clone()), (5, m.clone())], z()),
            ],
        ),
        CoJunction => generator_relation(&Junction).converse(),
        OpenRight => equations(2, 0, &[(&[(1, p.clone())], z())]),
        OpenLeft => equations(0, 2, &[(&[(1, p.clone())], z())]),
        // (φ1, i1) → (b, φ2, i2)
        Voltmeter => equations(
            2,
            3,
            &[
                (&[(1, p.clone())], z()),
                (&[(4, p.clone())], z()),
                (&[(2, p.clone()), (3, m.clone()), (0, p.clone())], z()),
            ],
        ),
        Ammeter => equations(
            2,
            3,
            &[
                (&[(3, p.clone()), (0, m.clone())], z()),
                (&[(4, p.clone()), (1, m.clone())], z()),
                (&[(2, p.clone()), (1, m.clone())], z()),
            ],
        ),
        // (a, φ1, i1) → (φ2, i2)
        CtrlVSource => equations(
            3,
            2,
            &[
                (&[(3, p.clone()), (1, m.clone()), (0, m.clone())], z()),
                (&[(2, p.clone()), (4, m.clone())], z()),
            ],
        ),
        CtrlCSource => equations(
            3,
            2,
            &[
                (&[(2, p.clone()), (0, m.clone())], z()),
                (&[(4, p.clone()), (0, m.clone())], z()),
            ],
        ),
        ImpedanceBox {
            m: ma,
            n: nb,
            payload,
        } => {
            let inner = denote(payload).expect("box payload sort-checked by caller");
            box_relation(*ma, *nb, &inner)
        }
    }
}

/// Lifts a payload relation on `(a⃗, i) → (b⃗, v)` to the box relation on
/// `(a⃗, φ1, i) → (b⃗, φ2, i)` with `v = φ2 − φ1`.
pub fn box_relation(m: usize, n: usize, payload: &AffineRelation) -> AffineRelation {
    let (dom, cod) = (m + 2, n + 2);
    let Some(offset) = payload.offset() else {
        return AffineRelation::empty(dom, cod);
    };
    // Payload coordinates: a⃗ = 0..m, i = m, b⃗ = m+1..m+1+n, v = m+1+n.
    let lift = |w: &[RatFunc]| -> Vector {
        let mut out = zeros(dom + cod);
        out[..m].clone_from_slice(&w[..m]);
        out[m + 1] = w[m].clone();
        out[dom..dom + n].clone_from_slice(&w[m + 1..m + 1 + n]);
        out[dom + n] = w[m + 1 + n].clone();
        out[dom + n + 1] = w[m].clone();
        out
    };
    let mut basis: Vec<Vector> = payload.basis().iter().map(|b| lift(b)).collect();
    let mut shift = unit(dom + cod, m);
    shift[dom + n] = RatFunc::one();
    basis.push(shift);
    AffineRelation::canonicalize(lift(offset), basis, dom, cod).expect("widths agree")
}

/// Coordinates of the potentials within a word, as a 0/1 mask.
pub fn potential_mask(word: &[Sort]) -> Vec<bool> {
    word.iter()
        .flat_map(|s| match s {
            Sort::Electric => vec![true, false],
            Sort::Info => vec![false],
        })
        .collect()
}
