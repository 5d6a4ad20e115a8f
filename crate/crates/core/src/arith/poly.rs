use std::cmp::Ordering;
use std::fmt;

use super::field::{format_rational, rat, Field, Rational, Rationals};
use crate::error::{Error, Result};

/// Dense univariate polynomial, coefficients lowest degree first.
///
/// The coefficient list never ends in a zero, so the zero polynomial has no
/// coefficients at all. Arithmetic goes through a [`Field`] context.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct UniPoly<E = Rational> {
    coeffs: Vec<E>,
}

impl<E: Clone + PartialEq + fmt::Debug> UniPoly<E> {
    pub fn new<F: Field<Elem = E>>(field: &F, mut coeffs: Vec<E>) -> Self {
        while coeffs.last().is_some_and(|c| field.is_zero(c)) {
            coeffs.pop();
        }
        UniPoly { coeffs }
    }

    pub fn zero() -> Self {
        UniPoly { coeffs: Vec::new() }
    }

    pub fn constant<F: Field<Elem = E>>(field: &F, c: E) -> Self {
        Self::new(field, vec![c])
    }

    /// The polynomial `x - r`.
    pub fn linear_root<F: Field<Elem = E>>(field: &F, r: &E) -> Self {
        Self::new(field, vec![field.neg(r), field.one()])
    }

    pub fn coeffs(&self) -> &[E] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<E> {
        self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&E> {
        self.coeffs.last()
    }

    pub fn coeff<F: Field<Elem = E>>(&self, field: &F, i: usize) -> E {
        self.coeffs.get(i).cloned().unwrap_or_else(|| field.zero())
    }

    pub fn add<F: Field<Elem = E>>(&self, other: &Self, field: &F) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let c = (0..n).map(|i| field.add(&self.coeff(field, i), &other.coeff(field, i))).collect();
        Self::new(field, c)
    }

    pub fn sub<F: Field<Elem = E>>(&self, other: &Self, field: &F) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let c = (0..n).map(|i| field.sub(&self.coeff(field, i), &other.coeff(field, i))).collect();
        Self::new(field, c)
    }

    pub fn neg<F: Field<Elem = E>>(&self, field: &F) -> Self {
        UniPoly { coeffs: self.coeffs.iter().map(|c| field.neg(c)).collect() }
    }

    pub fn scale<F: Field<Elem = E>>(&self, s: &E, field: &F) -> Self {
        Self::new(field, self.coeffs.iter().map(|c| field.mul(c, s)).collect())
    }

    pub fn mul<F: Field<Elem = E>>(&self, other: &Self, field: &F) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut out = vec![field.zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if field.is_zero(a) {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if !field.is_zero(b) {
                    out[i + j] = field.add(&out[i + j], &field.mul(a, b));
                }
            }
        }
        Self::new(field, out)
    }

    pub fn pow<F: Field<Elem = E>>(&self, e: u32, field: &F) -> Self {
        let mut acc = Self::constant(field, field.one());
        for _ in 0..e {
            acc = acc.mul(self, field);
        }
        acc
    }

    /// Euclidean division; panics if `divisor` is zero.
    pub fn div_rem<F: Field<Elem = E>>(&self, divisor: &Self, field: &F) -> (Self, Self) {
        let dd = divisor.degree().expect("division by the zero polynomial");
        let lead_inv = field.inv(divisor.leading().unwrap());
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return (Self::zero(), self.clone());
        }
        let mut quo = vec![field.zero(); rem.len() - dd];
        for k in (0..quo.len()).rev() {
            let c = field.mul(&rem[k + dd], &lead_inv);
            if field.is_zero(&c) {
                continue;
            }
            for (i, d) in divisor.coeffs.iter().enumerate() {
                if !field.is_zero(d) {
                    rem[k + i] = field.sub(&rem[k + i], &field.mul(&c, d));
                }
            }
            quo[k] = c;
        }
        rem.truncate(dd);
        (Self::new(field, quo), Self::new(field, rem))
    }

    pub fn rem<F: Field<Elem = E>>(&self, divisor: &Self, field: &F) -> Self {
        self.div_rem(divisor, field).1
    }

    /// Exact quotient; the caller guarantees divisibility.
    pub fn exact_div<F: Field<Elem = E>>(&self, divisor: &Self, field: &F) -> Self {
        let (q, r) = self.div_rem(divisor, field);
        debug_assert!(r.is_zero(), "inexact polynomial division");
        q
    }

    pub fn monic<F: Field<Elem = E>>(&self, field: &F) -> Self {
        match self.leading() {
            None => Self::zero(),
            Some(l) if field.is_one(l) => self.clone(),
            Some(l) => self.scale(&field.inv(l), field),
        }
    }

    pub fn derivative<F: Field<Elem = E>>(&self, field: &F) -> Self {
        let c = self.coeffs.iter().enumerate().skip(1).map(|(i, c)| field.mul(c, &field.from_int(i as i64))).collect();
        Self::new(field, c)
    }

    pub fn eval<F: Field<Elem = E>>(&self, x: &E, field: &F) -> E {
        self.coeffs.iter().rev().fold(field.zero(), |acc, c| field.add(&field.mul(&acc, x), c))
    }

    /// Monic greatest common divisor (zero if both inputs are zero).
    pub fn gcd<F: Field<Elem = E>>(&self, other: &Self, field: &F) -> Self {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b, field);
            a = b;
            b = r;
        }
        a.monic(field)
    }

    /// Returns `(g, s, t)` with `s*self + t*other = g`, `g` monic.
    pub fn ext_gcd<F: Field<Elem = E>>(&self, other: &Self, field: &F) -> (Self, Self, Self) {
        let one = Self::constant(field, field.one());
        let (mut r0, mut r1) = (self.clone(), other.clone());
        let (mut s0, mut s1) = (one.clone(), Self::zero());
        let (mut t0, mut t1) = (Self::zero(), one);
        while !r1.is_zero() {
            let (q, r) = r0.div_rem(&r1, field);
            let s2 = s0.sub(&q.mul(&s1, field), field);
            let t2 = t0.sub(&q.mul(&t1, field), field);
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s2);
            t0 = std::mem::replace(&mut t1, t2);
        }
        match r0.leading().cloned() {
            None => (r0, s0, t0),
            Some(l) => {
                let li = field.inv(&l);
                (r0.scale(&li, field), s0.scale(&li, field), t0.scale(&li, field))
            }
        }
    }

    /// `self(x + c)`.
    pub fn shift<F: Field<Elem = E>>(&self, c: &E, field: &F) -> Self {
        let lin = Self::new(field, vec![c.clone(), field.one()]);
        let mut acc = Self::zero();
        for a in self.coeffs.iter().rev() {
            acc = acc.mul(&lin, field).add(&Self::constant(field, a.clone()), field);
        }
        acc
    }

    /// Deterministic order: degree first, then coefficients from the
    /// constant term upwards.
    pub fn cmp_canonical<F: Field<Elem = E>>(&self, other: &Self, field: &F) -> Ordering {
        self.coeffs.len().cmp(&other.coeffs.len()).then_with(|| {
            for (a, b) in self.coeffs.iter().zip(&other.coeffs) {
                let o = field.cmp_elem(a, b);
                if o != Ordering::Equal {
                    return o;
                }
            }
            Ordering::Equal
        })
    }

    /// Yun's square-free decomposition: monic `(g_i, i)` with `f = lc * prod g_i^i`.
    pub fn squarefree_decomposition<F: Field<Elem = E>>(&self, field: &F) -> Vec<(Self, u32)> {
        let mut out = Vec::new();
        if self.degree().unwrap_or(0) == 0 {
            return out;
        }
        let f = self.monic(field);
        let df = f.derivative(field);
        let a0 = f.gcd(&df, field);
        let mut b = f.exact_div(&a0, field);
        let mut c = df.exact_div(&a0, field);
        let mut d = c.sub(&b.derivative(field), field);
        let mut i = 1;
        while b.degree().unwrap_or(0) > 0 {
            let a = b.gcd(&d, field);
            if a.degree().unwrap_or(0) > 0 {
                out.push((a.clone(), i));
            }
            b = b.exact_div(&a, field);
            c = d.exact_div(&a, field);
            d = c.sub(&b.derivative(field), field);
            i += 1;
        }
        out
    }

    pub fn map<G: Field>(&self, target: &G, f: impl Fn(&E) -> G::Elem) -> UniPoly<G::Elem> {
        UniPoly::new(target, self.coeffs.iter().map(f).collect())
    }
}

impl UniPoly<Rational> {
    pub fn from_ints(coeffs: &[i64]) -> Self {
        UniPoly::new(&Rationals, coeffs.iter().map(|&c| rat(c)).collect())
    }

    pub fn from_rationals(coeffs: Vec<Rational>) -> Self {
        UniPoly::new(&Rationals, coeffs)
    }
}

impl fmt::Display for UniPoly<Rational> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if num_traits::Zero::is_zero(c) {
                continue;
            }
            let neg = num_traits::Signed::is_negative(c);
            let abs = num_traits::Signed::abs(c);
            if first {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            first = false;
            let unit = num_traits::One::is_one(&abs);
            match i {
                0 => f.write_str(&format_rational(&abs))?,
                _ => {
                    if !unit {
                        write!(f, "{}*", format_rational(&abs))?;
                    }
                    if i == 1 {
                        f.write_str("x")?;
                    } else {
                        write!(f, "x^{i}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

/// `f / gcd(f, f')`, made monic.
pub fn squarefree_part(f: &UniPoly<Rational>) -> Result<UniPoly<Rational>> {
    if f.is_zero() {
        return Err(Error::domain("square-free part of the zero polynomial"));
    }
    let q = &Rationals;
    let g = f.gcd(&f.derivative(q), q);
    Ok(f.exact_div(&g, q).monic(q))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> UniPoly {
        UniPoly::from_ints(c)
    }

    #[test]
    fn squarefree_part_examples() {
        assert_eq!(squarefree_part(&p(&[1, -2, 1])).unwrap(), p(&[-1, 1]));
        assert_eq!(squarefree_part(&p(&[1, 0, 1])).unwrap(), p(&[1, 0, 1]));
        // x^3 - x^2: gcd with 3x^2 - 2x is x, quotient x^2 - x
        let f = p(&[0, 0, -1, 1]);
        let (q, r) = f.div_rem(&p(&[0, 1]), &Rationals);
        assert!(r.is_zero());
        assert_eq!(q, p(&[0, -1, 1]));
        assert_eq!(squarefree_part(&f).unwrap(), p(&[0, -1, 1]));
        assert!(squarefree_part(&UniPoly::zero()).is_err());
    }

    #[test]
    fn ext_gcd_bezout() {
        let q = &Rationals;
        let a = p(&[-1, 0, 1]);
        let b = p(&[2, 3, 1]);
        let (g, s, t) = a.ext_gcd(&b, q);
        assert_eq!(g, p(&[1, 1]));
        assert_eq!(s.mul(&a, q).add(&t.mul(&b, q), q), g);
    }

    #[test]
    fn yun_decomposition() {
        let q = &Rationals;
        // (x-1)^2 (x+2)^3 x
        let f = p(&[-1, 1]).pow(2, q).mul(&p(&[2, 1]).pow(3, q), q).mul(&p(&[0, 1]), q);
        let d = f.squarefree_decomposition(q);
        assert_eq!(d, vec![(p(&[0, 1]), 1), (p(&[-1, 1]), 2), (p(&[2, 1]), 3)]);
    }

    #[test]
    fn shift_and_display() {
        let q = &Rationals;
        assert_eq!(p(&[0, 0, 1]).shift(&rat(1), q), p(&[1, 2, 1]));
        assert_eq!(p(&[1, 0, -3, 1]).to_string(), "x^3 - 3*x^2 + 1");
    }
}
