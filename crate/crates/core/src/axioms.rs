//! Built-in instances of the equational theory of the information-wire
//! algebra, each checked by comparing denotations.

use serde::Serialize;

use crate::diagram::{parse_term, Term};
use crate::field::RatFunc;
use crate::semantics::denote;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AxiomResult {
    pub name: String,
    pub lhs: String,
    pub rhs: String,
    /// `=` for equations, `<=` for the order axiom.
    pub relation: &'static str,
    pub holds: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AxiomReport {
    pub seed: u64,
    pub results: Vec<AxiomResult>,
}

impl AxiomReport {
    pub fn all_hold(&self) -> bool {
        self.results.iter().all(|r| r.holds)
    }

    pub fn passed(&self) -> usize {
        self.results.iter().filter(|r| r.holds).count()
    }
}

const EQUATIONS: &[(&str, &str, &str)] = &[
    // Copy comonoid and cocopy monoid.
    (
        "copy coassociative",
        "copy ; (copy | id:n)",
        "copy ; (id:n | copy)",
    ),
    ("copy counital", "copy ; (discard | id:n)", "id:n"),
    ("copy cocommutative", "copy ; swap:nn", "copy"),
    (
        "cocopy associative",
        "(cocopy | id:n) ; cocopy",
        "(id:n | cocopy) ; cocopy",
    ),
    ("cocopy unital", "(codiscard | id:n) ; cocopy", "id:n"),
    ("cocopy commutative", "swap:nn ; cocopy", "cocopy"),
    // Add monoid and coadd comonoid.
    (
        "add associative",
        "(add | id:n) ; add",
        "(id:n | add) ; add",
    ),
    ("add unital", "(zero | id:n) ; add", "id:n"),
    ("add commutative", "swap:nn ; add", "add"),
    (
        "coadd coassociative",
        "coadd ; (coadd | id:n)",
        "coadd ; (id:n | coadd)",
    ),
    ("coadd counital", "coadd ; (cozero | id:n)", "id:n"),
    ("coadd cocommutative", "coadd ; swap:nn", "coadd"),
    // Bialgebras between opposite colours.
    (
        "bialgebra add/copy",
        "add ; copy",
        "(copy | copy) ; (id:n | swap:nn | id:n) ; (add | add)",
    ),
    (
        "bialgebra add/discard",
        "add ; discard",
        "discard | discard",
    ),
    ("bialgebra zero/copy", "zero ; copy", "zero | zero"),
    ("bialgebra zero/discard", "zero ; discard", "id:"),
    (
        "bialgebra cocopy/coadd",
        "cocopy ; coadd",
        "(coadd | coadd) ; (id:n | swap:nn | id:n) ; (cocopy | cocopy)",
    ),
    (
        "bialgebra cocopy/cozero",
        "cocopy ; cozero",
        "cozero | cozero",
    ),
    (
        "bialgebra codiscard/coadd",
        "codiscard ; coadd",
        "codiscard | codiscard",
    ),
    ("bialgebra codiscard/cozero", "codiscard ; cozero", "id:"),
    // Extra-special Frobenius, copy colour.
    (
        "frobenius copy left",
        "(copy | id:n) ; (id:n | cocopy)",
        "cocopy ; copy",
    ),
    (
        "frobenius copy right",
        "(id:n | copy) ; (cocopy | id:n)",
        "cocopy ; copy",
    ),
    ("special copy", "copy ; cocopy", "id:n"),
    ("extra copy", "codiscard ; discard", "id:"),
    (
        "frobenius copy width 2",
        "(copy | id:n | id:n) ; (id:n | cocopy | id:n)",
        "(cocopy | id:n) ; (copy | id:n)",
    ),
    // Extra-special Frobenius, add colour.
    (
        "frobenius add left",
        "(coadd | id:n) ; (id:n | add)",
        "add ; coadd",
    ),
    (
        "frobenius add right",
        "(id:n | coadd) ; (add | id:n)",
        "add ; coadd",
    ),
    ("special add", "coadd ; add", "id:n"),
    ("extra add", "zero ; cozero", "id:"),
    // Cups and caps change colour through -1.
    (
        "cup colour change",
        "zero ; coadd",
        "codiscard ; copy ; (id:n | scalar(-1))",
    ),
    (
        "cap colour change",
        "add ; cozero",
        "(id:n | scalar(-1)) ; cocopy ; discard",
    ),
    // Affine structure.
    ("dup", "one ; copy", "one | one"),
    ("del", "one ; discard", "id:"),
    (
        "empty",
        "(one ; cozero) | id:n",
        "(one ; cozero) | (discard ; zero)",
    ),
];

/// Scalar laws, instantiated at `k` and `l` (with `k` nonzero).
fn scalar_equations(k: &RatFunc, l: &RatFunc) -> Vec<(String, String, String)> {
    let (kk, ll) = (format!("({k})"), format!("({l})"));
    let s = |c: &str| format!("scalar{c}");
    vec![
        (
            "scalar inverse".into(),
            format!("{} ; coscalar{kk}", s(&kk)),
            "id:n".into(),
        ),
        (
            "coscalar inverse".into(),
            format!("coscalar{kk} ; {}", s(&kk)),
            "id:n".into(),
        ),
        (
            "scalar product".into(),
            format!("{} ; {}", s(&kk), s(&ll)),
            s(&format!("({})", k * l)),
        ),
        (
            "scalar sum".into(),
            format!("copy ; ({} | {}) ; add", s(&kk), s(&ll)),
            s(&format!("({})", k + l)),
        ),
        (
            "scalar copies".into(),
            format!("{} ; copy", s(&kk)),
            format!("copy ; ({} | {})", s(&kk), s(&kk)),
        ),
        (
            "scalar adds".into(),
            format!("add ; {}", s(&kk)),
            format!("({} | {}) ; add", s(&kk), s(&kk)),
        ),
        ("scalar zero".into(), s("(0)"), "discard ; zero".into()),
        ("scalar one".into(), s("(1)"), "id:n".into()),
    ]
}

fn check(name: &str, lhs: &str, rhs: &str, order: bool) -> AxiomResult {
    let parse = |s: &str| -> Option<Term> { parse_term(s).ok() };
    let holds = match (parse(lhs), parse(rhs)) {
        (Some(a), Some(b)) => match (denote(&a), denote(&b)) {
            (Ok(ra), Ok(rb)) if order => rb.contains(&ra).unwrap_or(false),
            (Ok(ra), Ok(rb)) => ra == rb,
            _ => false,
        },
        _ => false,
    };
    AxiomResult {
        name: name.to_string(),
        lhs: lhs.to_string(),
        rhs: rhs.to_string(),
        relation: if order { "<=" } else { "=" },
        holds,
    }
}

/// Runs every built-in axiom instance. Scalar laws are instantiated with
/// parameters drawn from `seed`, plus a few fixed ones.
pub fn axioms_suite(seed: u64) -> AxiomReport {
    let mut results: Vec<AxiomResult> = EQUATIONS
        .iter()
        .map(|(n, l, r)| check(n, l, r, false))
        .collect();
    let mut rng = crate::random::rng(seed);
    let mut params = vec![
        (RatFunc::from_int(2), RatFunc::from_int(-3)),
        (RatFunc::x(), "1/(x+1)".parse().expect("literal")),
    ];
    for _ in 0..4 {
        params.push((
            crate::random::nonzero_ratfunc(&mut rng),
            crate::random::ratfunc(&mut rng),
        ));
    }
    for (k, l) in &params {
        for (n, lhs, rhs) in scalar_equations(k, l) {
            results.push(check(&format!("{n} [{k}, {l}]"), &lhs, &rhs, false));
        }
    }
    results.push(check("order zero <= codiscard", "zero", "codiscard", true));
    AxiomReport { seed, results }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_instance_holds() {
        let report = axioms_suite(0);
        for r in &report.results {
            assert!(r.holds, "{} : {} {} {}", r.name, r.lhs, r.relation, r.rhs);
        }
        assert!(report.results.len() > 40);
    }

    #[test]
    fn wrong_instances_fail() {
        assert!(!check("bad", "copy ; cocopy", "discard ; zero", false).holds);
        assert!(!check("bad order", "codiscard", "zero", true).holds);
        assert!(!check("unparsable", "copy ;", "copy", false).holds);
    }
}
