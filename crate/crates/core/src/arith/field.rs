use std::cmp::Ordering;
use std::fmt::Debug;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Rational = BigRational;

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn frac(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Formats as `p/q`, or `p` when the denominator is one.
pub fn format_rational(q: &Rational) -> String {
    q.to_string()
}

pub fn parse_rational(s: &str) -> Result<Rational> {
    let t = s.trim();
    let bad = || Error::parse(format!("\"{s}\""), "malformed rational number");
    if t.is_empty() {
        return Err(bad());
    }
    match t.split_once('/') {
        Some((p, q)) => {
            let p: BigInt = p.trim().parse().map_err(|_| bad())?;
            let q: BigInt = q.trim().parse().map_err(|_| bad())?;
            if q.is_zero() {
                return Err(Error::parse(format!("\"{s}\""), "zero denominator"));
            }
            Ok(Rational::new(p, q))
        }
        None => Ok(Rational::from_integer(t.parse().map_err(|_| bad())?)),
    }
}

/// A field given by a context object; elements carry no reference to it.
///
/// The rationals use [`Rationals`]; number fields use
/// [`FieldTower`](super::tower::FieldTower) with coordinate vectors as elements.
pub trait Field: Clone + Debug {
    type Elem: Clone + PartialEq + Debug;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    /// Panics on zero.
    fn inv(&self, a: &Self::Elem) -> Self::Elem;
    fn from_rational(&self, q: &Rational) -> Self::Elem;
    /// Total order used only to make outputs deterministic.
    fn cmp_elem(&self, a: &Self::Elem, b: &Self::Elem) -> Ordering;

    fn div(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.mul(a, &self.inv(b))
    }

    fn is_one(&self, a: &Self::Elem) -> bool {
        *a == self.one()
    }

    fn from_int(&self, n: i64) -> Self::Elem {
        self.from_rational(&rat(n))
    }

    fn pow(&self, a: &Self::Elem, mut e: u32) -> Self::Elem {
        let mut base = a.clone();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            e >>= 1;
            if e > 0 {
                base = self.mul(&base, &base);
            }
        }
        acc
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Rationals;

impl Field for Rationals {
    type Elem = Rational;

    fn zero(&self) -> Rational {
        Rational::zero()
    }
    fn one(&self) -> Rational {
        Rational::one()
    }
    fn is_zero(&self, a: &Rational) -> bool {
        a.is_zero()
    }
    fn add(&self, a: &Rational, b: &Rational) -> Rational {
        a + b
    }
    fn sub(&self, a: &Rational, b: &Rational) -> Rational {
        a - b
    }
    fn neg(&self, a: &Rational) -> Rational {
        -a
    }
    fn mul(&self, a: &Rational, b: &Rational) -> Rational {
        a * b
    }
    fn inv(&self, a: &Rational) -> Rational {
        assert!(!a.is_zero(), "inverse of zero");
        a.recip()
    }
    fn from_rational(&self, q: &Rational) -> Rational {
        q.clone()
    }
    /// Absolute value first, then negative before positive.
    fn cmp_elem(&self, a: &Rational, b: &Rational) -> Ordering {
        a.abs().cmp(&b.abs()).then_with(|| a.cmp(b))
    }
    fn is_one(&self, a: &Rational) -> bool {
        a.is_one()
    }
}

/// Least common multiple of the denominators.
pub fn common_denominator<'a>(qs: impl IntoIterator<Item = &'a Rational>) -> BigInt {
    use num_integer::Integer;
    qs.into_iter().fold(BigInt::one(), |acc, q| acc.lcm(q.denom()))
}

/// Scales a rational vector to a primitive integer vector with the same direction.
pub fn primitive_integer_vector(v: &[Rational]) -> Vec<BigInt> {
    use num_integer::Integer;
    let den = common_denominator(v);
    let ints: Vec<BigInt> = v.iter().map(|q| (q * Rational::from_integer(den.clone())).to_integer()).collect();
    let g = ints.iter().fold(BigInt::zero(), |g, a| g.gcd(a));
    if g.is_zero() {
        return ints;
    }
    ints.into_iter().map(|a| a / &g).collect()
}

pub fn abs_int(a: &BigInt) -> BigInt {
    a.abs()
}
