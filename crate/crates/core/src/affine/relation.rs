use std::fmt;

use serde::ser::SerializeStruct;
use thiserror::Error;

use super::linalg::{self, leading_index, Vector};
use crate::field::RatFunc;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AffineError {
    #[error("dimension mismatch: expected vectors of length {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("width mismatch: {left} vs {right}")]
    WidthMismatch { left: usize, right: usize },
}

#[derive(Clone, PartialEq, Eq, Hash)]
enum Body {
    Empty,
    Span { offset: Vector, basis: Vec<Vector> },
}

/// An affine subspace of `k^dom × k^cod`, read as a relation `dom → cod`.
///
/// Nonempty relations are stored as `offset + span(basis)` with the basis in
/// reduced row-echelon form and the offset zero in every pivot column, so
/// structural equality is set equality.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct AffineRelation {
    dom: usize,
    cod: usize,
    body: Body,
}

/// Whether a relation is a total and/or single-valued function.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
pub struct Functionality {
    pub total: bool,
    pub single_valued: bool,
}

impl Functionality {
    pub fn is_function(&self) -> bool {
        self.total && self.single_valued
    }
}

fn check_len(v: &[RatFunc], d: usize) -> Result<(), AffineError> {
    if v.len() != d {
        return Err(AffineError::DimensionMismatch {
            expected: d,
            found: v.len(),
        });
    }
    Ok(())
}

impl AffineRelation {
    /// Canonical form of `offset + span(basis)`.
    pub fn canonicalize(
        offset: Vector,
        basis: Vec<Vector>,
        dom: usize,
        cod: usize,
    ) -> Result<Self, AffineError> {
        let d = dom + cod;
        check_len(&offset, d)?;
        for b in &basis {
            check_len(b, d)?;
        }
        Ok(Self::from_parts(offset, basis, dom, cod))
    }

    fn from_parts(mut offset: Vector, mut basis: Vec<Vector>, dom: usize, cod: usize) -> Self {
        let pivots = linalg::rref(&mut basis, dom + cod);
        linalg::reduce(&mut offset, &basis, &pivots);
        AffineRelation {
            dom,
            cod,
            body: Body::Span { offset, basis },
        }
    }

    pub fn empty(dom: usize, cod: usize) -> Self {
        AffineRelation {
            dom,
            cod,
            body: Body::Empty,
        }
    }

    /// The full relation `k^dom × k^cod`.
    pub fn full(dom: usize, cod: usize) -> Self {
        let d = dom + cod;
        let basis = (0..d).map(|i| unit(d, i)).collect();
        AffineRelation {
            dom,
            cod,
            body: Body::Span {
                offset: zeros(d),
                basis,
            },
        }
    }

    /// The single point `(u, w)`.
    pub fn point(u: Vector, w: Vector) -> Self {
        let (dom, cod) = (u.len(), w.len());
        let mut offset = u;
        offset.extend(w);
        AffineRelation {
            dom,
            cod,
            body: Body::Span {
                offset,
                basis: Vec::new(),
            },
        }
    }

    pub fn identity(n: usize) -> Self {
        Self::permutation(&(0..n).collect::<Vec<_>>())
    }

    /// Graph of the coordinate permutation sending input `j` to output
    /// `targets[j]`.
    pub fn permutation(targets: &[usize]) -> Self {
        let n = targets.len();
        let basis = targets
            .iter()
            .enumerate()
            .map(|(j, &t)| {
                let mut row = zeros(2 * n);
                row[j] = RatFunc::one();
                row[n + t] = RatFunc::one();
                row
            })
            .collect();
        AffineRelation {
            dom: n,
            cod: n,
            body: Body::Span {
                offset: zeros(2 * n),
                basis,
            },
        }
    }

    /// Canonical form of `{ z : E z = f }`.
    pub fn from_constraints(
        e: &[Vector],
        f: &[RatFunc],
        dom: usize,
        cod: usize,
    ) -> Result<Self, AffineError> {
        let d = dom + cod;
        if e.len() != f.len() {
            return Err(AffineError::DimensionMismatch {
                expected: e.len(),
                found: f.len(),
            });
        }
        let mut aug = Vec::with_capacity(e.len());
        for (row, rhs) in e.iter().zip(f) {
            check_len(row, d)?;
            let mut r = row.clone();
            r.push(rhs.clone());
            aug.push(r);
        }
        Ok(match linalg::solve(aug, d) {
            None => Self::empty(dom, cod),
            Some((part, null)) => Self::from_parts(part, null, dom, cod),
        })
    }

    pub fn dom_width(&self) -> usize {
        self.dom
    }

    pub fn cod_width(&self) -> usize {
        self.cod
    }

    pub fn width(&self) -> usize {
        self.dom + self.cod
    }

    pub fn is_empty(&self) -> bool {
        matches!(self.body, Body::Empty)
    }

    /// Offset vector, `None` for the empty relation.
    pub fn offset(&self) -> Option<&[RatFunc]> {
        match &self.body {
            Body::Empty => None,
            Body::Span { offset, .. } => Some(offset),
        }
    }

    /// RREF basis of the direction space; empty slice for the empty relation.
    pub fn basis(&self) -> &[Vector] {
        match &self.body {
            Body::Empty => &[],
            Body::Span { basis, .. } => basis,
        }
    }

    /// Dimension as an affine space, `None` when empty.
    pub fn dim(&self) -> Option<usize> {
        match &self.body {
            Body::Empty => None,
            Body::Span { basis, .. } => Some(basis.len()),
        }
    }

    fn pivots(&self) -> Vec<usize> {
        self.basis()
            .iter()
            .map(|r| leading_index(r).expect("basis rows are nonzero"))
            .collect()
    }

    /// Whether `v` lies in the direction space.
    pub fn direction_contains(&self, v: &[RatFunc]) -> bool {
        let mut w = v.to_vec();
        linalg::reduce(&mut w, self.basis(), &self.pivots());
        w.iter().all(RatFunc::is_zero)
    }

    pub fn contains_point(&self, p: &[RatFunc]) -> bool {
        match &self.body {
            Body::Empty => false,
            Body::Span { offset, .. } => {
                let diff: Vector = p.iter().zip(offset).map(|(a, b)| a - b).collect();
                self.direction_contains(&diff)
            }
        }
    }

    /// True when the linear functional `w` vanishes on every point.
    pub fn annihilated_by(&self, w: &[RatFunc]) -> bool {
        let dot = |v: &[RatFunc]| {
            v.iter()
                .zip(w)
                .fold(RatFunc::zero(), |acc, (a, b)| &acc + &(a * b))
        };
        match &self.body {
            Body::Empty => true,
            Body::Span { offset, basis } => {
                dot(offset).is_zero() && basis.iter().all(|b| dot(b).is_zero())
            }
        }
    }

    /// Returns `Some(targets)` if this is the graph of a coordinate
    /// permutation.
    pub fn as_permutation(&self) -> Option<Vec<usize>> {
        let Body::Span { offset, basis } = &self.body else {
            return None;
        };
        let n = self.dom;
        if self.cod != n || basis.len() != n || offset.iter().any(|c| !c.is_zero()) {
            return None;
        }
        let mut targets = vec![usize::MAX; n];
        let mut seen = vec![false; n];
        for (j, row) in basis.iter().enumerate() {
            let mut nz = row.iter().enumerate().filter(|(_, c)| !c.is_zero());
            let (a, ca) = nz.next()?;
            let (b, cb) = nz.next()?;
            if nz.next().is_some() || a != j || b < n || !ca.is_one() || !cb.is_one() {
                return None;
            }
            let t = b - n;
            if seen[t] {
                return None;
            }
            seen[t] = true;
            targets[j] = t;
        }
        Some(targets)
    }

    /// Reorders codomain coordinates: old codomain coordinate `t` becomes
    /// new codomain coordinate `targets[t]`.
    pub fn permute_cod(&self, targets: &[usize]) -> Self {
        assert_eq!(targets.len(), self.cod);
        let m = self.dom;
        self.map_coords(self.dom, self.cod, |old| {
            if old < m {
                old
            } else {
                m + targets[old - m]
            }
        })
    }

    /// Reorders domain coordinates: old domain coordinate `t` becomes new
    /// domain coordinate `targets[t]`.
    pub fn permute_dom(&self, targets: &[usize]) -> Self {
        assert_eq!(targets.len(), self.dom);
        let m = self.dom;
        self.map_coords(
            self.dom,
            self.cod,
            |old| {
                if old < m {
                    targets[old]
                } else {
                    old
                }
            },
        )
    }

    fn map_coords(&self, dom: usize, cod: usize, f: impl Fn(usize) -> usize) -> Self {
        let Body::Span { offset, basis } = &self.body else {
            return Self::empty(dom, cod);
        };
        let d = dom + cod;
        let remap = |v: &Vector| {
            let mut out = zeros(d);
            for (i, c) in v.iter().enumerate() {
                out[f(i)] = c.clone();
            }
            out
        };
        Self::from_parts(remap(offset), basis.iter().map(remap).collect(), dom, cod)
    }

    /// Relational composite `self ; other`.
    pub fn compose(&self, other: &AffineRelation) -> Result<Self, AffineError> {
        if self.cod != other.dom {
            return Err(AffineError::WidthMismatch {
                left: self.cod,
                right: other.dom,
            });
        }
        if let Some(t) = other.as_permutation() {
            return Ok(self.permute_cod(&t));
        }
        if let Some(t) = self.as_permutation() {
            // (perm ; S): S's domain coordinate t[j] is fed by input j.
            let inv = invert(&t);
            return Ok(other.permute_dom(&inv));
        }
        self.compose_block(other, 0)
    }

    /// `self ; (id_start ⊗ op ⊗ id_rest)`, where `op` acts on the codomain
    /// coordinates `start .. start + op.dom_width()`.
    pub fn compose_block(&self, op: &AffineRelation, start: usize) -> Result<Self, AffineError> {
        let k = op.dom;
        if start + k > self.cod {
            return Err(AffineError::WidthMismatch {
                left: self.cod,
                right: start + k,
            });
        }
        let m = self.dom;
        let new_cod = self.cod - k + op.cod;
        let (
            Body::Span {
                offset: ro,
                basis: rb,
            },
            Body::Span {
                offset: so,
                basis: sb,
            },
        ) = (&self.body, &op.body)
        else {
            return Ok(Self::empty(m, new_cod));
        };
        let a = rb.len();
        let b = sb.len();
        let n = a + b;
        // Match the touched middle coordinates of the two parametrizations.
        let mut aug = Vec::with_capacity(k);
        for t in 0..k {
            let mid = m + start + t;
            let mut row = Vec::with_capacity(n + 1);
            row.extend(rb.iter().map(|r| r[mid].clone()));
            row.extend(sb.iter().map(|s| -&s[t]));
            row.push(&so[t] - &ro[mid]);
            aug.push(row);
        }
        let Some((part, null)) = linalg::solve(aug, n) else {
            return Ok(Self::empty(m, new_cod));
        };
        let d = m + new_cod;
        // Outer coordinates: dom | cod[..start] | op.cod | cod[start+k..].
        let outer = |coef: &[RatFunc], with_offset: bool| -> Vector {
            let mut v = if with_offset {
                let mut v = Vec::with_capacity(d);
                v.extend(ro[..m + start].iter().cloned());
                v.extend(so[k..].iter().cloned());
                v.extend(ro[m + start + k..].iter().cloned());
                v
            } else {
                zeros(d)
            };
            for (j, c) in coef[..a].iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                let r = &rb[j];
                for (i, x) in r[..m + start].iter().enumerate() {
                    if !x.is_zero() {
                        v[i] = &v[i] + &(c * x);
                    }
                }
                let shift = m + start + op.cod;
                for (i, x) in r[m + start + k..].iter().enumerate() {
                    if !x.is_zero() {
                        v[shift + i] = &v[shift + i] + &(c * x);
                    }
                }
            }
            for (l, c) in coef[a..].iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                for (i, x) in sb[l][k..].iter().enumerate() {
                    if !x.is_zero() {
                        let at = m + start + i;
                        v[at] = &v[at] + &(c * x);
                    }
                }
            }
            v
        };
        let offset = outer(&part, true);
        let basis = null.iter().map(|c| outer(c, false)).collect();
        Ok(Self::from_parts(offset, basis, m, new_cod))
    }

    /// Monoidal product: domains side by side, then codomains.
    pub fn tensor(&self, other: &AffineRelation) -> Self {
        let dom = self.dom + other.dom;
        let cod = self.cod + other.cod;
        let (
            Body::Span {
                offset: ao,
                basis: ab,
            },
            Body::Span {
                offset: bo,
                basis: bb,
            },
        ) = (&self.body, &other.body)
        else {
            return Self::empty(dom, cod);
        };
        let d = dom + cod;
        // Layout: self.dom, other.dom, self.cod, other.cod.
        let place_a = |v: &Vector, out: &mut Vector| {
            for (i, c) in v.iter().enumerate() {
                let at = if i < self.dom { i } else { other.dom + i };
                out[at] = c.clone();
            }
        };
        let place_b = |v: &Vector, out: &mut Vector| {
            for (i, c) in v.iter().enumerate() {
                let at = if i < other.dom {
                    self.dom + i
                } else {
                    self.dom + self.cod + i
                };
                out[at] = c.clone();
            }
        };
        let mut offset = zeros(d);
        place_a(ao, &mut offset);
        place_b(bo, &mut offset);
        let mut rows: Vec<(usize, Vector)> = Vec::with_capacity(ab.len() + bb.len());
        for r in ab {
            let mut v = zeros(d);
            place_a(r, &mut v);
            rows.push((leading_index(&v).expect("nonzero"), v));
        }
        for r in bb {
            let mut v = zeros(d);
            place_b(r, &mut v);
            rows.push((leading_index(&v).expect("nonzero"), v));
        }
        // Pivot columns of the two factors are disjoint, so sorting rows by
        // pivot already yields RREF.
        rows.sort_by_key(|(p, _)| *p);
        AffineRelation {
            dom,
            cod,
            body: Body::Span {
                offset,
                basis: rows.into_iter().map(|(_, v)| v).collect(),
            },
        }
    }

    /// Opposite relation, swapping domain and codomain.
    pub fn converse(&self) -> Self {
        let (m, n) = (self.dom, self.cod);
        self.map_coords(n, m, |old| if old < m { n + old } else { old - m })
    }

    /// `other ⊆ self`.
    pub fn contains(&self, other: &AffineRelation) -> Result<bool, AffineError> {
        if self.dom != other.dom || self.cod != other.cod {
            return Err(AffineError::WidthMismatch {
                left: self.width(),
                right: other.width(),
            });
        }
        Ok(match (&self.body, &other.body) {
            (_, Body::Empty) => true,
            (Body::Empty, _) => false,
            (Body::Span { .. }, Body::Span { offset, basis }) => {
                self.contains_point(offset) && basis.iter().all(|b| self.direction_contains(b))
            }
        })
    }

    pub fn functionality(&self) -> Functionality {
        match &self.body {
            Body::Empty => Functionality {
                total: false,
                single_valued: true,
            },
            Body::Span { basis, .. } => {
                let dom_proj: Vec<Vector> = basis.iter().map(|b| b[..self.dom].to_vec()).collect();
                let r = linalg::rank(&dom_proj, self.dom);
                Functionality {
                    total: r == self.dom,
                    single_valued: r == basis.len(),
                }
            }
        }
    }

    /// Intersection with the hyperplane `z[coord] = value`.
    pub fn restrict(&self, coord: usize, value: &RatFunc) -> Self {
        let Body::Span { offset, basis } = &self.body else {
            return self.clone();
        };
        let Some(j) = basis.iter().position(|b| !b[coord].is_zero()) else {
            return if &offset[coord] == value {
                self.clone()
            } else {
                Self::empty(self.dom, self.cod)
            };
        };
        let pivot = &basis[j];
        let t = &(value - &offset[coord]) / &pivot[coord];
        let new_offset: Vector = offset
            .iter()
            .zip(pivot)
            .map(|(o, p)| o + &(&t * p))
            .collect();
        let new_basis = basis
            .iter()
            .enumerate()
            .filter(|(i, _)| *i != j)
            .map(|(_, b)| {
                let mut b = b.clone();
                let f = &b[coord] / &pivot[coord];
                linalg::axpy_sub(&mut b, &f, pivot);
                b
            })
            .collect();
        Self::from_parts(new_offset, new_basis, self.dom, self.cod)
    }

    /// Image under the coordinate projection onto `coords` (the first `dom`
    /// of them form the new domain).
    pub fn project(&self, coords: &[usize], dom: usize) -> Self {
        let cod = coords.len() - dom;
        let Body::Span { offset, basis } = &self.body else {
            return Self::empty(dom, cod);
        };
        let pick = |v: &Vector| coords.iter().map(|&c| v[c].clone()).collect::<Vector>();
        Self::from_parts(pick(offset), basis.iter().map(pick).collect(), dom, cod)
    }

    /// A constraint presentation `{ z : E z = f }` of this relation.
    pub fn constraints(&self) -> (Vec<Vector>, Vector) {
        let d = self.width();
        match &self.body {
            Body::Empty => (vec![zeros(d)], vec![RatFunc::one()]),
            Body::Span { offset, basis } => {
                // Orthogonal complement: null space of the basis matrix.
                let aug: Vec<Vector> = basis
                    .iter()
                    .map(|b| {
                        let mut r = b.clone();
                        r.push(RatFunc::zero());
                        r
                    })
                    .collect();
                let (_, null) = linalg::solve(aug, d).expect("homogeneous system");
                let f = null
                    .iter()
                    .map(|w| {
                        w.iter()
                            .zip(offset)
                            .fold(RatFunc::zero(), |acc, (a, b)| &acc + &(a * b))
                    })
                    .collect();
                (null, f)
            }
        }
    }
}

pub fn zeros(d: usize) -> Vector {
    vec![RatFunc::zero(); d]
}

pub fn unit(d: usize, i: usize) -> Vector {
    let mut v = zeros(d);
    v[i] = RatFunc::one();
    v
}

fn invert(targets: &[usize]) -> Vec<usize> {
    let mut inv = vec![0; targets.len()];
    for (j, &t) in targets.iter().enumerate() {
        inv[t] = j;
    }
    inv
}

pub fn canonicalize(
    offset: Vector,
    basis: Vec<Vector>,
    dom: usize,
    cod: usize,
) -> Result<AffineRelation, AffineError> {
    AffineRelation::canonicalize(offset, basis, dom, cod)
}

pub fn compose(r: &AffineRelation, s: &AffineRelation) -> Result<AffineRelation, AffineError> {
    r.compose(s)
}

pub fn tensor(r: &AffineRelation, s: &AffineRelation) -> AffineRelation {
    r.tensor(s)
}

pub fn converse(r: &AffineRelation) -> AffineRelation {
    r.converse()
}

/// `s ⊆ r`.
pub fn contains(r: &AffineRelation, s: &AffineRelation) -> Result<bool, AffineError> {
    r.contains(s)
}

pub fn functionality(r: &AffineRelation) -> Functionality {
    r.functionality()
}

pub fn from_constraints(
    e: &[Vector],
    f: &[RatFunc],
    dom: usize,
    cod: usize,
) -> Result<AffineRelation, AffineError> {
    AffineRelation::from_constraints(e, f, dom, cod)
}

impl fmt::Debug for AffineRelation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "AffineRelation({} -> {}", self.dom, self.cod)?;
        match &self.body {
            Body::Empty => write!(f, ", empty)"),
            Body::Span { offset, basis } => {
                write!(f, ", offset {offset:?}, basis {basis:?})")
            }
        }
    }
}

impl fmt::Display for AffineRelation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let show = |v: &[RatFunc]| {
            v.iter()
                .map(|c| c.to_string())
                .collect::<Vec<_>>()
                .join(", ")
        };
        write!(f, "{} -> {}: ", self.dom, self.cod)?;
        match &self.body {
            Body::Empty => write!(f, "empty"),
            Body::Span { offset, basis } => {
                write!(f, "({})", show(offset))?;
                if !basis.is_empty() {
                    let rows: Vec<String> =
                        basis.iter().map(|b| format!("({})", show(b))).collect();
                    write!(f, " + span{{{}}}", rows.join(", "))?;
                }
                Ok(())
            }
        }
    }
}

impl serde::Serialize for AffineRelation {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("AffineRelation", 5)?;
        st.serialize_field("dom_width", &self.dom)?;
        st.serialize_field("cod_width", &self.cod)?;
        st.serialize_field("empty", &self.is_empty())?;
        st.serialize_field("offset", self.offset().unwrap_or(&[]))?;
        st.serialize_field("basis", self.basis())?;
        st.end()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(xs: &[i64]) -> Vector {
        xs.iter().map(|&x| RatFunc::from_int(x)).collect()
    }

    #[test]
    fn canonicalize_examples() {
        let r = canonicalize(v(&[1, 1]), vec![v(&[2, 0])], 1, 1).unwrap();
        assert_eq!(r.offset().unwrap(), v(&[0, 1]).as_slice());
        assert_eq!(r.basis(), &[v(&[1, 0])]);

        let r = canonicalize(v(&[0, 0]), vec![v(&[1, 1]), v(&[2, 2])], 1, 1).unwrap();
        assert_eq!(r.basis(), &[v(&[1, 1])]);

        let r = canonicalize(v(&[3, 6]), vec![v(&[1, 2])], 1, 1).unwrap();
        assert_eq!(r.offset().unwrap(), v(&[0, 0]).as_slice());
        assert_eq!(r.basis(), &[v(&[1, 2])]);

        assert!(matches!(
            canonicalize(v(&[0]), vec![], 1, 1),
            Err(AffineError::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn copy_then_add_doubles() {
        let copy = from_constraints(&[v(&[1, -1, 0]), v(&[1, 0, -1])], &v(&[0, 0]), 1, 2).unwrap();
        let add = from_constraints(&[v(&[1, 1, -1])], &v(&[0]), 2, 1).unwrap();
        let doubled = copy.compose(&add).unwrap();
        let expected = canonicalize(v(&[0, 0]), vec![v(&[1, 2])], 1, 1).unwrap();
        assert_eq!(doubled, expected);
    }

    #[test]
    fn compose_width_mismatch() {
        let a = AffineRelation::identity(1);
        let b = AffineRelation::identity(2);
        assert!(matches!(
            a.compose(&b),
            Err(AffineError::WidthMismatch { .. })
        ));
    }

    #[test]
    fn tensor_examples() {
        let id1 = AffineRelation::identity(1);
        assert_eq!(id1.tensor(&id1), AffineRelation::identity(2));
        let e = AffineRelation::empty(1, 0);
        assert!(e.tensor(&id1).is_empty());
        let one = AffineRelation::point(vec![], v(&[1]));
        let two = AffineRelation::point(vec![], v(&[2]));
        assert_eq!(one.tensor(&two), AffineRelation::point(vec![], v(&[1, 2])));
    }

    #[test]
    fn converse_examples() {
        let one = AffineRelation::point(vec![], v(&[1]));
        assert_eq!(one.converse(), AffineRelation::point(v(&[1]), vec![]));
        assert!(AffineRelation::empty(2, 1).converse().is_empty());
        let scalar3 = canonicalize(v(&[0, 0]), vec![v(&[1, 3])], 1, 1).unwrap();
        let coscalar3 = canonicalize(v(&[0, 0]), vec![v(&[3, 1])], 1, 1).unwrap();
        assert_eq!(scalar3.converse(), coscalar3);
    }

    #[test]
    fn containment_examples() {
        let codiscard = AffineRelation::full(0, 1);
        let zero = AffineRelation::point(vec![], v(&[0]));
        assert!(contains(&codiscard, &zero).unwrap());
        assert!(!contains(&zero, &codiscard).unwrap());
        assert!(contains(&zero, &zero).unwrap());
        assert!(contains(&zero, &AffineRelation::empty(0, 1)).unwrap());
    }

    #[test]
    fn functionality_examples() {
        let scalar2 = canonicalize(v(&[0, 0]), vec![v(&[1, 2])], 1, 1).unwrap();
        assert_eq!(
            scalar2.functionality(),
            Functionality {
                total: true,
                single_valued: true
            }
        );
        assert_eq!(
            AffineRelation::full(0, 1).functionality(),
            Functionality {
                total: true,
                single_valued: false
            }
        );
        let origin = AffineRelation::point(v(&[0]), v(&[0]));
        assert_eq!(
            origin.functionality(),
            Functionality {
                total: false,
                single_valued: true
            }
        );
    }

    #[test]
    fn from_constraints_examples() {
        let id = from_constraints(&[v(&[1, -1])], &v(&[0]), 1, 1).unwrap();
        assert_eq!(id, AffineRelation::identity(1));
        assert!(from_constraints(&[v(&[0, 0])], &v(&[1]), 1, 1)
            .unwrap()
            .is_empty());
        let line = from_constraints(&[v(&[1, 1])], &v(&[5]), 1, 1).unwrap();
        assert_eq!(line.offset().unwrap(), v(&[0, 5]).as_slice());
        assert_eq!(line.basis(), &[v(&[1, -1])]);
    }

    #[test]
    fn permutation_detection() {
        let p = AffineRelation::permutation(&[2, 0, 1]);
        assert_eq!(p.as_permutation(), Some(vec![2, 0, 1]));
        assert_eq!(AffineRelation::full(1, 1).as_permutation(), None);
    }

    #[test]
    fn restrict_and_project() {
        let plane = AffineRelation::full(1, 1);
        let line = plane.restrict(0, &RatFunc::from_int(2));
        assert_eq!(line.offset().unwrap(), v(&[2, 0]).as_slice());
        assert_eq!(line.basis(), &[v(&[0, 1])]);
        let pt = AffineRelation::point(v(&[1]), v(&[2]));
        assert!(pt.restrict(0, &RatFunc::from_int(3)).is_empty());
        let proj = pt.project(&[1], 0);
        assert_eq!(proj, AffineRelation::point(vec![], v(&[2])));
    }

    #[test]
    fn json_shape() {
        let r = from_constraints(&[v(&[1, 1])], &v(&[5]), 1, 1).unwrap();
        let s = serde_json::to_string(&r).unwrap();
        assert_eq!(
            s,
            r#"{"dom_width":1,"cod_width":1,"empty":false,"offset":["0","5"],"basis":[["1","-1"]]}"#
        );
        let e = serde_json::to_string(&AffineRelation::empty(0, 1)).unwrap();
        assert_eq!(
            e,
            r#"{"dom_width":0,"cod_width":1,"empty":true,"offset":[],"basis":[]}"#
        );
    }
}
