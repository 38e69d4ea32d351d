//! Derived circuit constructions used across the crate.

use super::term::{Sort, SortWord, Term};

use Sort::{Electric as E, Info as N};

pub fn ids(s: Sort, n: usize) -> Term {
    Term::Id(SortWord::repeat(s, n))
}

/// Electric cup `ε → E·E`: both wires share a potential and carry opposite
/// currents.
pub fn cup() -> Term {
    Term::seq(Term::open_left(), Term::junction())
}

/// Electric cap `E·E → ε`.
pub fn cap() -> Term {
    Term::seq(Term::cojunction(), Term::open_right())
}

/// Parallel connection of two `E → E` terms.
pub fn parallel(a: Term, b: Term) -> Term {
    Term::seq_all([Term::junction(), Term::par(a, b), Term::cojunction()]).expect("nonempty")
}

/// Series connection of `E → E` terms; the empty list is a plain wire.
pub fn series(ts: impl IntoIterator<Item = Term>) -> Term {
    Term::seq_all(ts).unwrap_or_else(Term::id_e)
}

/// An `E → E` term turned around with a cup and a cap.
pub fn reverse(t: Term) -> Term {
    Term::seq_all([
        Term::par(cup(), Term::id_e()),
        Term::par_all([Term::id_e(), t, Term::id_e()]),
        Term::par(Term::id_e(), cap()),
    ])
    .expect("nonempty")
}

/// Feeds the electric output of `x: N^p·E → N^q·E` back into its electric
/// input, giving `N^p → N^q`.
pub fn close_loop(x: Term, p: usize, q: usize) -> Term {
    Term::seq_all([
        Term::par(ids(N, p), cup()),
        Term::par(x, Term::id_e()),
        Term::par(ids(N, q), cap()),
    ])
    .expect("nonempty")
}

/// Places a voltmeter across `x: N^p·E → E`, giving `N^p·E → N·E` whose
/// reading is the voltage across `x`.
pub fn bridged(x: Term, p: usize) -> Term {
    Term::seq_all([
        Term::par(ids(N, p), Term::junction()),
        Term::par(x, Term::voltmeter()),
        Term::par(Term::Swap(E, N), Term::id_e()),
        Term::par(Term::id_n(), Term::cojunction()),
    ])
    .expect("nonempty")
}

/// Node spider `E^left → E^right`: one shared potential, inflow equals
/// outflow.
pub fn spider(left: usize, right: usize) -> Term {
    let merge = tree(left, Term::open_left(), Term::cojunction(), true);
    let split = tree(right, Term::open_right(), Term::junction(), false);
    Term::seq(merge, split)
}

/// Balanced-ish binary tree of `node` generators joining `n` wires into one
/// (or splitting one into `n`, when `!merging`); `leaf` handles `n = 0`.
fn tree(n: usize, leaf: Term, node: Term, merging: bool) -> Term {
    match n {
        0 => leaf,
        1 => Term::id_e(),
        _ => {
            let h = n / 2;
            let halves = Term::par(
                tree(h, leaf.clone(), node.clone(), merging),
                tree(n - h, leaf, node.clone(), merging),
            );
            if merging {
                Term::seq(halves, node)
            } else {
                Term::seq(node, halves)
            }
        }
    }
}

/// Permutes the wires of `word`: wire `j` moves to position `targets[j]`.
/// Built from adjacent swaps as an odd-even transposition network.
pub fn permutation(word: &SortWord, targets: &[usize]) -> Term {
    let n = word.len();
    assert_eq!(targets.len(), n);
    // cur[k] = index of the original wire at position k.
    let mut cur: Vec<usize> = (0..n).collect();
    let mut sorts: Vec<Sort> = word.sorts().to_vec();
    let mut layers = Vec::new();
    for round in 0..n {
        let mut pieces = Vec::new();
        let mut swapped = false;
        let mut k = 0;
        if round % 2 == 1 && n > 0 {
            pieces.push(Term::id(sorts[0]));
            k = 1;
        }
        while k < n {
            if k + 1 < n && targets[cur[k]] > targets[cur[k + 1]] {
                pieces.push(Term::Swap(sorts[k], sorts[k + 1]));
                cur.swap(k, k + 1);
                sorts.swap(k, k + 1);
                swapped = true;
                k += 2;
            } else {
                pieces.push(Term::id(sorts[k]));
                k += 1;
            }
        }
        if swapped {
            layers.push(merge_ids(pieces));
        }
    }
    Term::seq_all(layers).unwrap_or_else(|| Term::Id(word.clone()))
}

/// Parallel composite with adjacent identities fused into one `Id` word.
fn merge_ids(pieces: Vec<Term>) -> Term {
    let mut out: Vec<Term> = Vec::new();
    for p in pieces {
        match (out.last_mut(), p) {
            (Some(Term::Id(w)), Term::Id(v)) => w.0.extend(v.0),
            (_, p) => out.push(p),
        }
    }
    Term::par_all(out)
}
