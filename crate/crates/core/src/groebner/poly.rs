use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use num_traits::{One, Signed, Zero};

use super::monomial::{Exp, Monomial, MonomialOrder};
use crate::arith::{parse_rational, Rational};
use crate::error::{Error, Result};

/// Named indeterminates shared by a family of polynomials.
#[derive(Clone, Debug)]
pub struct PolyRing {
    names: Arc<Vec<String>>,
}

impl PartialEq for PolyRing {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.names, &other.names) || self.names == other.names
    }
}

impl Eq for PolyRing {}

impl PolyRing {
    pub fn new<S: Into<String>>(names: impl IntoIterator<Item = S>) -> Self {
        PolyRing { names: Arc::new(names.into_iter().map(Into::into).collect()) }
    }

    /// The coordinate ring of n×n matrices, variables `x_i_j` in row-major order.
    pub fn matrix(n: usize) -> Self {
        PolyRing::new((1..=n).flat_map(|i| (1..=n).map(move |j| format!("x_{i}_{j}"))))
    }

    pub fn nvars(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn var(&self, i: usize) -> MultiPoly {
        MultiPoly { ring: self.clone(), terms: vec![(Monomial::var(self.nvars(), i), Rational::one())] }
    }

    pub fn zero(&self) -> MultiPoly {
        MultiPoly::zero(self)
    }

    pub fn constant(&self, c: Rational) -> MultiPoly {
        MultiPoly::constant(self, c)
    }

    pub fn parse(&self, s: &str) -> Result<MultiPoly> {
        MultiPoly::parse(self, s)
    }
}

pub type Term = (Monomial, Rational);

/// Sparse polynomial with rational coefficients. Terms are kept sorted in
/// decreasing graded reverse lexicographic order with no zero coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultiPoly {
    ring: PolyRing,
    terms: Vec<Term>,
}

fn canonical_sort(terms: &mut [Term]) {
    terms.sort_by(|a, b| MonomialOrder::GrevLex.cmp(&b.0, &a.0));
}

impl MultiPoly {
    pub fn zero(ring: &PolyRing) -> Self {
        MultiPoly { ring: ring.clone(), terms: Vec::new() }
    }

    pub fn constant(ring: &PolyRing, c: Rational) -> Self {
        let terms = if c.is_zero() { Vec::new() } else { vec![(Monomial::one(ring.nvars()), c)] };
        MultiPoly { ring: ring.clone(), terms }
    }

    pub fn one(ring: &PolyRing) -> Self {
        MultiPoly::constant(ring, Rational::one())
    }

    /// Collects like terms and drops zeros.
    pub fn from_terms(ring: &PolyRing, terms: impl IntoIterator<Item = Term>) -> Self {
        let mut acc: HashMap<Monomial, Rational> = HashMap::new();
        for (m, c) in terms {
            assert_eq!(m.nvars(), ring.nvars(), "monomial length does not match the ring");
            *acc.entry(m).or_insert_with(Rational::zero) += c;
        }
        let mut terms: Vec<Term> = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        canonical_sort(&mut terms);
        MultiPoly { ring: ring.clone(), terms }
    }

    pub(crate) fn from_sorted_terms(ring: &PolyRing, terms: Vec<Term>) -> Self {
        MultiPoly { ring: ring.clone(), terms }
    }

    pub fn ring(&self) -> &PolyRing {
        &self.ring
    }

    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.iter().all(|(m, _)| m.is_one())
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.iter().map(|(m, _)| m.degree()).max().unwrap_or(0)
    }

    pub fn degree_in(&self, var: usize) -> Exp {
        self.terms.iter().map(|(m, _)| m.exps()[var]).max().unwrap_or(0)
    }

    pub fn uses_var(&self, var: usize) -> bool {
        self.terms.iter().any(|(m, _)| m.exps()[var] > 0)
    }

    /// Leading term under `order`.
    pub fn leading(&self, order: &MonomialOrder) -> Option<&Term> {
        self.terms.iter().max_by(|a, b| order.cmp(&a.0, &b.0))
    }

    /// Divides by the leading coefficient under `order`.
    pub fn monic(&self, order: &MonomialOrder) -> MultiPoly {
        match self.leading(order) {
            None => self.clone(),
            Some((_, c)) => self.scale(&c.recip()),
        }
    }

    pub fn scale(&self, c: &Rational) -> MultiPoly {
        if c.is_zero() {
            return MultiPoly::zero(&self.ring);
        }
        MultiPoly { ring: self.ring.clone(), terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect() }
    }

    fn check_ring(&self, other: &MultiPoly) {
        assert!(self.ring == other.ring, "polynomials over different rings");
    }

    fn merge(&self, other: &MultiPoly, sign: bool) -> MultiPoly {
        self.check_ring(other);
        let order = MonomialOrder::GrevLex;
        let (a, b) = (&self.terms, &other.terms);
        let (mut i, mut j) = (0, 0);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let conv = |c: &Rational| if sign { c.clone() } else { -c };
        while i < a.len() && j < b.len() {
            match order.cmp(&a[i].0, &b[j].0) {
                std::cmp::Ordering::Greater => {
                    out.push(a[i].clone());
                    i += 1;
                }
                std::cmp::Ordering::Less => {
                    out.push((b[j].0.clone(), conv(&b[j].1)));
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    let c = &a[i].1 + conv(&b[j].1);
                    if !c.is_zero() {
                        out.push((a[i].0.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend(a[i..].iter().cloned());
        out.extend(b[j..].iter().map(|(m, c)| (m.clone(), conv(c))));
        MultiPoly { ring: self.ring.clone(), terms: out }
    }

    pub fn add(&self, other: &MultiPoly) -> MultiPoly {
        self.merge(other, true)
    }

    pub fn sub(&self, other: &MultiPoly) -> MultiPoly {
        self.merge(other, false)
    }

    pub fn neg(&self) -> MultiPoly {
        MultiPoly { ring: self.ring.clone(), terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect() }
    }

    pub fn mul(&self, other: &MultiPoly) -> MultiPoly {
        self.check_ring(other);
        if self.is_zero() || other.is_zero() {
            return MultiPoly::zero(&self.ring);
        }
        let prod = self.terms.iter().flat_map(|(m, a)| other.terms.iter().map(move |(n, b)| (m.mul(n), a * b)));
        MultiPoly::from_terms(&self.ring, prod)
    }

    pub fn mul_term(&self, m: &Monomial, c: &Rational) -> MultiPoly {
        if c.is_zero() {
            return MultiPoly::zero(&self.ring);
        }
        MultiPoly { ring: self.ring.clone(), terms: self.terms.iter().map(|(n, a)| (n.mul(m), a * c)).collect() }
    }

    pub fn pow(&self, mut e: u32) -> MultiPoly {
        let mut base = self.clone();
        let mut acc = MultiPoly::one(&self.ring);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    pub fn eval(&self, point: &[Rational]) -> Rational {
        assert_eq!(point.len(), self.ring.nvars());
        let mut total = Rational::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (x, &e) in point.iter().zip(m.exps()) {
                if e > 0 {
                    t *= num_traits::pow(x.clone(), e as usize);
                }
            }
            total += t;
        }
        total
    }

    pub fn derivative(&self, var: usize) -> MultiPoly {
        let terms = self.terms.iter().filter(|(m, _)| m.exps()[var] > 0).map(|(m, c)| {
            let mut e = m.exps().to_vec();
            let k = e[var];
            e[var] -= 1;
            (Monomial::new(e), c * Rational::from_integer(k.into()))
        });
        MultiPoly::from_terms(&self.ring, terms)
    }

    /// Replaces variable `var` by `image`, which lives in the same ring.
    pub fn substitute(&self, var: usize, image: &MultiPoly) -> MultiPoly {
        self.check_ring(image);
        if !self.uses_var(var) {
            return self.clone();
        }
        let mut powers = vec![MultiPoly::one(&self.ring)];
        let mut acc: Vec<Term> = Vec::new();
        for (m, c) in &self.terms {
            let e = m.exps()[var] as usize;
            if e == 0 {
                acc.push((m.clone(), c.clone()));
                continue;
            }
            while powers.len() <= e {
                let next = powers.last().unwrap().mul(image);
                powers.push(next);
            }
            let mut rest = m.exps().to_vec();
            rest[var] = 0;
            let rest = Monomial::new(rest);
            acc.extend(powers[e].terms.iter().map(|(n, a)| (n.mul(&rest), a * c)));
        }
        MultiPoly::from_terms(&self.ring, acc)
    }

    /// Substitutes `images[i]` for variable `i`; all images share one ring.
    pub fn compose(&self, images: &[MultiPoly]) -> MultiPoly {
        assert_eq!(images.len(), self.ring.nvars());
        let target = images.first().map(|p| p.ring.clone()).unwrap_or_else(|| self.ring.clone());
        let mut powers: Vec<Vec<MultiPoly>> = vec![vec![MultiPoly::one(&target)]; images.len()];
        let mut acc = MultiPoly::zero(&target);
        for (m, c) in &self.terms {
            let mut t = MultiPoly::constant(&target, c.clone());
            for (i, &e) in m.exps().iter().enumerate() {
                let e = e as usize;
                if e == 0 {
                    continue;
                }
                while powers[i].len() <= e {
                    let next = powers[i].last().unwrap().mul(&images[i]);
                    powers[i].push(next);
                }
                t = t.mul(&powers[i][e]);
            }
            acc = acc.add(&t);
        }
        acc
    }

    /// Moves the polynomial into `target`; variable `i` of this ring becomes
    /// variable `map[i]` of the target. Variables mapped to `None` must not occur.
    pub fn rename(&self, target: &PolyRing, map: &[Option<usize>]) -> MultiPoly {
        let n = target.nvars();
        let terms = self.terms.iter().map(|(m, c)| {
            let mut e = vec![0; n];
            for (i, &k) in m.exps().iter().enumerate() {
                if k > 0 {
                    let j = map[i].expect("variable has no image in the target ring");
                    e[j] += k;
                }
            }
            (Monomial::new(e), c.clone())
        });
        MultiPoly::from_terms(target, terms)
    }

    /// Moves the polynomial into `target` by matching variable names.
    pub fn embed(&self, target: &PolyRing) -> MultiPoly {
        let map: Vec<Option<usize>> = self.ring.names().iter().map(|n| target.index_of(n)).collect();
        self.rename(target, &map)
    }

    pub fn parse(ring: &PolyRing, s: &str) -> Result<MultiPoly> {
        let text: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let err = |msg: &str| Error::parse(format!("polynomial \"{s}\""), msg);
        if text.is_empty() {
            return Err(err("empty polynomial"));
        }
        let mut pieces: Vec<(bool, String)> = Vec::new();
        let mut current = String::new();
        let mut negative = false;
        for (k, ch) in text.char_indices() {
            if (ch == '+' || ch == '-') && !(k > 0 && text[..k].ends_with('^')) {
                if k > 0 {
                    if current.is_empty() {
                        return Err(err("missing term between signs"));
                    }
                    pieces.push((negative, std::mem::take(&mut current)));
                }
                negative = ch == '-';
            } else {
                current.push(ch);
            }
        }
        if current.is_empty() {
            return Err(err("trailing sign"));
        }
        pieces.push((negative, current));
        let mut terms = Vec::new();
        for (negative, piece) in pieces {
            let mut coeff = Rational::one();
            let mut exps = vec![0 as Exp; ring.nvars()];
            for factor in piece.split('*') {
                if factor.is_empty() {
                    return Err(err("empty factor"));
                }
                if factor.starts_with(|c: char| c.is_ascii_digit()) {
                    coeff *= parse_rational(factor)?;
                    continue;
                }
                let (name, e) = match factor.split_once('^') {
                    Some((name, e)) => (name, e.parse::<Exp>().map_err(|_| err("bad exponent"))?),
                    None => (factor, 1),
                };
                let i = ring.index_of(name).ok_or_else(|| err(&format!("unknown variable {name}")))?;
                exps[i] = exps[i].checked_add(e).ok_or_else(|| err("exponent overflow"))?;
            }
            if negative {
                coeff = -coeff;
            }
            terms.push((Monomial::new(exps), coeff));
        }
        Ok(MultiPoly::from_terms(ring, terms))
    }
}

fn write_monomial(f: &mut fmt::Formatter<'_>, ring: &PolyRing, m: &Monomial) -> fmt::Result {
    let mut first = true;
    for (i, &e) in m.exps().iter().enumerate() {
        if e == 0 {
            continue;
        }
        if !first {
            f.write_str("*")?;
        }
        first = false;
        f.write_str(ring.name(i))?;
        if e > 1 {
            write!(f, "^{e}")?;
        }
    }
    Ok(())
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (k, (m, c)) in self.terms.iter().enumerate() {
            let mag = c.abs();
            match (k, c.is_negative()) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            if m.is_one() {
                write!(f, "{mag}")?;
            } else {
                if !mag.is_one() {
                    write!(f, "{mag}*")?;
                }
                write_monomial(f, &self.ring, m)?;
            }
        }
        Ok(())
    }
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident, $inner:ident) => {
        impl std::ops::$tr<&MultiPoly> for &MultiPoly {
            type Output = MultiPoly;
            fn $method(self, rhs: &MultiPoly) -> MultiPoly {
                MultiPoly::$inner(self, rhs)
            }
        }
    };
}

forward_binop!(Add, add, add);
forward_binop!(Sub, sub, sub);
forward_binop!(Mul, mul, mul);

impl std::ops::Neg for &MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        MultiPoly::neg(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{frac, rat};

    #[test]
    fn parse_and_print_round_trip() {
        let r = PolyRing::new(["x", "y", "T0"]);
        let p = r.parse("3/2*x^2*y - y + 4 - x*T0^3").unwrap();
        assert_eq!(p.to_string(), "-x*T0^3 + 3/2*x^2*y - y + 4");
        assert_eq!(r.parse(&p.to_string()).unwrap(), p);
        assert_eq!(r.parse("-x + x").unwrap().to_string(), "0");
        assert!(r.parse("x + z").is_err());
        assert!(r.parse("x +").is_err());
    }

    #[test]
    fn arithmetic_and_substitution() {
        let r = PolyRing::new(["x", "y"]);
        let x = r.var(0);
        let y = r.var(1);
        let p = &(&x + &y) * &(&x - &y);
        assert_eq!(p, r.parse("x^2 - y^2").unwrap());
        assert_eq!(p.eval(&[rat(3), frac(1, 2)]), frac(35, 4));
        let q = p.substitute(1, &r.parse("x + 1").unwrap());
        assert_eq!(q, r.parse("-2*x - 1").unwrap());
        assert_eq!((&x + &y).pow(3).terms().len(), 4);
    }
}
