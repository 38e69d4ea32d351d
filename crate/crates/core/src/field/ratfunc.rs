use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::poly::{Poly, Rational};
use super::{parse, FieldError};

/// Element of the field Q(x).
///
/// Always stored reduced: `gcd(num, den) = 1` and `den` is monic, so two
/// values are equal exactly when their representations are equal.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RatFunc {
    num: Poly,
    den: Poly,
}

impl RatFunc {
    /// Reduces `num/den` to its canonical representative.
    pub fn new(num: Poly, den: Poly) -> Result<Self, FieldError> {
        if den.is_zero() {
            return Err(FieldError::ZeroDenominator);
        }
        Ok(Self::normalize(num, den))
    }

    fn normalize(num: Poly, den: Poly) -> Self {
        if num.is_zero() {
            return RatFunc::zero();
        }
        if den.is_constant() {
            let inv = den.constant_term().recip();
            return RatFunc {
                num: num.scale(&inv),
                den: Poly::one(),
            };
        }
        let g = num.gcd(&den);
        let (num, den) = if g.is_one() {
            (num, den)
        } else {
            (num.div_rem(&g).0, den.div_rem(&g).0)
        };
        let lc = den.leading().cloned().expect("nonzero denominator");
        if lc.is_one() {
            RatFunc { num, den }
        } else {
            let inv = lc.recip();
            RatFunc {
                num: num.scale(&inv),
                den: den.scale(&inv),
            }
        }
    }

    pub fn zero() -> Self {
        RatFunc {
            num: Poly::zero(),
            den: Poly::one(),
        }
    }

    pub fn one() -> Self {
        RatFunc::constant(Rational::one())
    }

    pub fn x() -> Self {
        RatFunc {
            num: Poly::x(),
            den: Poly::one(),
        }
    }

    pub fn constant(c: Rational) -> Self {
        RatFunc {
            num: Poly::constant(c),
            den: Poly::one(),
        }
    }

    pub fn from_int(n: i64) -> Self {
        RatFunc::constant(Rational::from_integer(BigInt::from(n)))
    }

    pub fn from_frac(n: i64, d: i64) -> Self {
        RatFunc::constant(Rational::new(n.into(), d.into()))
    }

    pub fn from_poly(p: Poly) -> Self {
        RatFunc {
            num: p,
            den: Poly::one(),
        }
    }

    pub fn num(&self) -> &Poly {
        &self.num
    }

    pub fn den(&self) -> &Poly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    /// True for elements of Q (degree-zero numerator over denominator 1).
    pub fn is_constant(&self) -> bool {
        self.den.is_one() && self.num.is_constant()
    }

    /// The rational value if this is a constant.
    pub fn as_constant(&self) -> Option<Rational> {
        self.is_constant().then(|| self.num.constant_term())
    }

    fn const_pair<'a>(&'a self, other: &'a RatFunc) -> Option<(Rational, Rational)> {
        if self.is_constant() && other.is_constant() {
            Some((self.num.constant_term(), other.num.constant_term()))
        } else {
            None
        }
    }

    pub fn add_ref(&self, other: &RatFunc) -> RatFunc {
        if let Some((a, b)) = self.const_pair(other) {
            return RatFunc::constant(a + b);
        }
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        if self.den == other.den {
            return Self::normalize(self.num.add(&other.num), self.den.clone());
        }
        let num = self.num.mul(&other.den).add(&other.num.mul(&self.den));
        Self::normalize(num, self.den.mul(&other.den))
    }

    pub fn neg_ref(&self) -> RatFunc {
        RatFunc {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }

    pub fn sub_ref(&self, other: &RatFunc) -> RatFunc {
        if let Some((a, b)) = self.const_pair(other) {
            return RatFunc::constant(a - b);
        }
        self.add_ref(&other.neg_ref())
    }

    pub fn mul_ref(&self, other: &RatFunc) -> RatFunc {
        if let Some((a, b)) = self.const_pair(other) {
            return RatFunc::constant(a * b);
        }
        if self.is_zero() || other.is_zero() {
            return RatFunc::zero();
        }
        if self.is_one() {
            return other.clone();
        }
        if other.is_one() {
            return self.clone();
        }
        Self::normalize(self.num.mul(&other.num), self.den.mul(&other.den))
    }

    /// Multiplicative inverse.
    pub fn inv(&self) -> Result<RatFunc, FieldError> {
        if self.is_zero() {
            return Err(FieldError::DivisionByZero);
        }
        if self.is_constant() {
            return Ok(RatFunc::constant(self.num.constant_term().recip()));
        }
        Ok(Self::normalize(self.den.clone(), self.num.clone()))
    }

    pub fn checked_div(&self, other: &RatFunc) -> Result<RatFunc, FieldError> {
        if other.is_zero() {
            return Err(FieldError::DivisionByZero);
        }
        if let Some((a, b)) = self.const_pair(other) {
            return Ok(RatFunc::constant(a / b));
        }
        Ok(self.mul_ref(&other.inv()?))
    }

    /// Exact evaluation at a rational point.
    pub fn eval(&self, at: &Rational) -> Result<Rational, FieldError> {
        let d = self.den.eval(at);
        if d.is_zero() {
            return Err(FieldError::PoleAtPoint);
        }
        Ok(self.num.eval(at) / d)
    }
}

/// Reduces `num/den`; the free-function form of [`RatFunc::new`].
pub fn rf_normalize(num: Poly, den: Poly) -> Result<RatFunc, FieldError> {
    RatFunc::new(num, den)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
}

pub fn rf_arith(op: ArithOp, a: &RatFunc, b: &RatFunc) -> Result<RatFunc, FieldError> {
    match op {
        ArithOp::Add => Ok(a.add_ref(b)),
        ArithOp::Sub => Ok(a.sub_ref(b)),
        ArithOp::Mul => Ok(a.mul_ref(b)),
        ArithOp::Div => a.checked_div(b),
    }
}

pub fn rf_eval(f: &RatFunc, point: &Rational) -> Result<Rational, FieldError> {
    f.eval(point)
}

impl Default for RatFunc {
    fn default() -> Self {
        RatFunc::zero()
    }
}

impl From<Rational> for RatFunc {
    fn from(c: Rational) -> Self {
        RatFunc::constant(c)
    }
}

impl From<i64> for RatFunc {
    fn from(n: i64) -> Self {
        RatFunc::from_int(n)
    }
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident, $impl_fn:ident) => {
        impl $tr<&RatFunc> for &RatFunc {
            type Output = RatFunc;
            fn $method(self, rhs: &RatFunc) -> RatFunc {
                self.$impl_fn(rhs)
            }
        }
        impl $tr<RatFunc> for RatFunc {
            type Output = RatFunc;
            fn $method(self, rhs: RatFunc) -> RatFunc {
                self.$impl_fn(&rhs)
            }
        }
        impl $tr<&RatFunc> for RatFunc {
            type Output = RatFunc;
            fn $method(self, rhs: &RatFunc) -> RatFunc {
                self.$impl_fn(rhs)
            }
        }
    };
}

forward_binop!(Add, add, add_ref);
forward_binop!(Sub, sub, sub_ref);
forward_binop!(Mul, mul, mul_ref);

impl Div<&RatFunc> for &RatFunc {
    type Output = RatFunc;
    /// Panics on division by zero, like integer division.
    fn div(self, rhs: &RatFunc) -> RatFunc {
        self.checked_div(rhs).expect("division by zero in Q(x)")
    }
}

impl Div<RatFunc> for RatFunc {
    type Output = RatFunc;
    fn div(self, rhs: RatFunc) -> RatFunc {
        &self / &rhs
    }
}

impl Neg for RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        self.neg_ref()
    }
}

impl Neg for &RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        self.neg_ref()
    }
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

impl fmt::Debug for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl FromStr for RatFunc {
    type Err = FieldError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse::parse_ratfunc(s)
    }
}

impl serde::Serialize for RatFunc {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}
