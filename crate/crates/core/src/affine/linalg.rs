//! Gaussian elimination over Q(x).

use crate::field::RatFunc;

pub type Vector = Vec<RatFunc>;

/// Index of the first nonzero entry.
pub fn leading_index(v: &[RatFunc]) -> Option<usize> {
    v.iter().position(|c| !c.is_zero())
}

/// `dst -= factor * src`, skipping zero entries of `src`.
pub fn axpy_sub(dst: &mut [RatFunc], factor: &RatFunc, src: &[RatFunc]) {
    if factor.is_zero() {
        return;
    }
    for (d, s) in dst.iter_mut().zip(src) {
        if !s.is_zero() {
            *d = &*d - &(factor * s);
        }
    }
}

/// Brings the first `ncols` columns of `rows` into reduced row-echelon form,
/// dropping rows that become zero there. Any trailing columns (an augmented
/// right-hand side) are carried along. Returns the pivot columns in order.
pub fn rref(rows: &mut Vec<Vector>, ncols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..ncols {
        if r == rows.len() {
            break;
        }
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][col].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = rows[r][col].inv().expect("pivot is nonzero");
        if !inv.is_one() {
            for c in rows[r].iter_mut() {
                if !c.is_zero() {
                    *c = &*c * &inv;
                }
            }
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i != r && !row[col].is_zero() {
                let f = row[col].clone();
                axpy_sub(row, &f, &pivot_row);
            }
        }
        pivots.push(col);
        r += 1;
    }
    // Rows below the last pivot are zero in the first `ncols` columns; keep
    // them only if they carry a nonzero augmented entry.
    let keep_tail: Vec<Vector> = rows
        .drain(r..)
        .filter(|row| row.iter().skip(ncols).any(|c| !c.is_zero()))
        .collect();
    rows.extend(keep_tail);
    pivots
}

/// Reduces `v` against rows already in RREF with the given pivots.
pub fn reduce(v: &mut [RatFunc], rows: &[Vector], pivots: &[usize]) {
    for (row, &p) in rows.iter().zip(pivots) {
        if !v[p].is_zero() {
            let f = v[p].clone();
            axpy_sub(v, &f, row);
        }
    }
}

/// Solution set of `A y = b` given as augmented rows `[A | b]` with `n`
/// unknowns: a particular solution and a basis of the null space, or `None`
/// when inconsistent.
pub fn solve(mut aug: Vec<Vector>, n: usize) -> Option<(Vector, Vec<Vector>)> {
    let pivots = rref(&mut aug, n);
    if aug.len() > pivots.len() {
        return None;
    }
    let mut particular = vec![RatFunc::zero(); n];
    for (row, &p) in aug.iter().zip(&pivots) {
        particular[p] = row[n].clone();
    }
    let mut is_pivot = vec![false; n];
    for &p in &pivots {
        is_pivot[p] = true;
    }
    let mut null = Vec::new();
    for free in (0..n).filter(|&c| !is_pivot[c]) {
        let mut v = vec![RatFunc::zero(); n];
        v[free] = RatFunc::one();
        for (row, &p) in aug.iter().zip(&pivots) {
            if !row[free].is_zero() {
                v[p] = -&row[free];
            }
        }
        null.push(v);
    }
    Some((particular, null))
}

/// Rank of a list of vectors of length `ncols`.
pub fn rank(rows: &[Vector], ncols: usize) -> usize {
    let mut m = rows.to_vec();
    rref(&mut m, ncols).len()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(xs: &[i64]) -> Vector {
        xs.iter().map(|&x| RatFunc::from_int(x)).collect()
    }

    #[test]
    fn rref_drops_dependent_rows() {
        let mut rows = vec![v(&[1, 1]), v(&[2, 2])];
        let p = rref(&mut rows, 2);
        assert_eq!(p, vec![0]);
        assert_eq!(rows, vec![v(&[1, 1])]);
    }

    #[test]
    fn solve_consistent_and_not() {
        // x + y = 5
        let (part, null) = solve(vec![v(&[1, 1, 5])], 2).unwrap();
        assert_eq!(part, v(&[5, 0]));
        assert_eq!(null, vec![v(&[-1, 1])]);
        // 0 = 1
        assert!(solve(vec![v(&[0, 0, 1])], 2).is_none());
    }

    #[test]
    fn rank_counts_independent_rows() {
        assert_eq!(rank(&[v(&[1, 2, 3]), v(&[2, 4, 6]), v(&[0, 0, 1])], 3), 2);
    }
}
