//! Algebraic laws checked on seeded random instances.

use proptest::prelude::*;

use relcirc::affine::AffineRelation;
use relcirc::field::{RatFunc, Rational};
use relcirc::random::{self, rng};
use relcirc::{denote, parse_term, pretty_print};

fn triple(seed: u64) -> (RatFunc, RatFunc, RatFunc) {
    let mut r = rng(seed);
    (
        random::ratfunc(&mut r),
        random::ratfunc(&mut r),
        random::ratfunc(&mut r),
    )
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn field_laws(seed in any::<u64>()) {
        let (f, g, h) = triple(seed);
        prop_assert_eq!(&(&f + &g) + &h, &f + &(&g + &h));
        prop_assert_eq!(&(&f * &g) * &h, &f * &(&g * &h));
        prop_assert_eq!(&f * &(&g + &h), &(&f * &g) + &(&f * &h));
        prop_assert_eq!(&f + &g, &g + &f);
        prop_assert_eq!(&f - &f, RatFunc::zero());
        if !f.is_zero() {
            prop_assert_eq!(&f * &f.inv().unwrap(), RatFunc::one());
        } else {
            prop_assert!(f.inv().is_err());
        }
    }

    #[test]
    fn evaluation_is_multiplicative(seed in any::<u64>()) {
        let (f, g, _) = triple(seed);
        let fg = &f * &g;
        let mut r = rng(seed ^ 0x5eed);
        for _ in 0..20 {
            let p: Rational = random::rational(&mut r);
            if let (Ok(a), Ok(b)) = (f.eval(&p), g.eval(&p)) {
                prop_assert_eq!(fg.eval(&p).unwrap(), a * b);
            }
        }
    }

    #[test]
    fn display_parses_back(seed in any::<u64>()) {
        let (f, _, _) = triple(seed);
        let back: RatFunc = f.to_string().parse().unwrap();
        prop_assert_eq!(back, f);
    }

    #[test]
    fn composition_laws(seed in any::<u64>()) {
        let mut r = rng(seed);
        let a = random::relation(&mut r, 1, 2);
        let b = random::relation(&mut r, 2, 1);
        let c = random::relation(&mut r, 1, 2);
        let ab_c = a.compose(&b).unwrap().compose(&c).unwrap();
        let a_bc = a.compose(&b.compose(&c).unwrap()).unwrap();
        prop_assert_eq!(ab_c, a_bc);
        prop_assert_eq!(a.compose(&AffineRelation::identity(2)).unwrap(), a.clone());
        prop_assert_eq!(AffineRelation::identity(1).compose(&a).unwrap(), a.clone());
        prop_assert_eq!(a.converse().converse(), a.clone());
    }

    #[test]
    fn interchange_law(seed in any::<u64>()) {
        let mut r = rng(seed);
        let a = random::relation(&mut r, 1, 1);
        let b = random::relation(&mut r, 1, 2);
        let c = random::relation(&mut r, 1, 1);
        let d = random::relation(&mut r, 2, 1);
        let lhs = a.tensor(&b).compose(&c.tensor(&d)).unwrap();
        let rhs = a.compose(&c).unwrap().tensor(&b.compose(&d).unwrap());
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn composition_is_monotone(seed in any::<u64>()) {
        let mut r = rng(seed);
        let big = random::relation(&mut r, 1, 1);
        // A subrelation: intersect with a hyperplane.
        let small = big.restrict(0, &random::ratfunc(&mut r));
        let t = random::relation(&mut r, 1, 1);
        prop_assert!(big.contains(&small).unwrap());
        prop_assert!(big.compose(&t).unwrap().contains(&small.compose(&t).unwrap()).unwrap());
        prop_assert!(t.compose(&big).unwrap().contains(&t.compose(&small).unwrap()).unwrap());
    }

    #[test]
    fn constraint_form_round_trips(seed in any::<u64>()) {
        let mut r = rng(seed);
        let a = random::relation(&mut r, 2, 1);
        let (e, f) = a.constraints();
        prop_assert_eq!(AffineRelation::from_constraints(&e, &f, 2, 1).unwrap(), a.clone());
        for _ in 0..20 {
            let p: Vec<RatFunc> = (0..3).map(|_| RatFunc::constant(random::rational(&mut r))).collect();
            let by_constraints = e.iter().zip(&f).all(|(row, rhs)| {
                row.iter().zip(&p).fold(RatFunc::zero(), |acc, (x, y)| &acc + &(x * y)) == *rhs
            });
            prop_assert_eq!(a.contains_point(&p), by_constraints);
        }
    }

    #[test]
    fn print_parse_round_trip(seed in any::<u64>()) {
        let mut r = rng(seed);
        for t in [
            random::electric_term(&mut r, 40),
            random::gaa_term(&mut r, 2, 2, 3),
            random::resistive_one_port(&mut r, 4),
            random::permutation_term(&mut r, 5),
        ] {
            let printed = pretty_print(&t);
            let back = parse_term(&printed).unwrap();
            prop_assert_eq!(back, t);
        }
    }
}

#[test]
fn denotation_respects_composition() {
    let mut r = rng(11);
    for _ in 0..30 {
        let a = random::gaa_term(&mut r, 1, 2, 2);
        let b = random::gaa_term(&mut r, 2, 1, 2);
        let ab = relcirc::Term::seq(a.clone(), b.clone());
        assert_eq!(
            denote(&ab).unwrap(),
            denote(&a).unwrap().compose(&denote(&b).unwrap()).unwrap()
        );
        let par = relcirc::Term::par(a.clone(), b.clone());
        assert_eq!(
            denote(&par).unwrap(),
            denote(&a).unwrap().tensor(&denote(&b).unwrap())
        );
    }
}
