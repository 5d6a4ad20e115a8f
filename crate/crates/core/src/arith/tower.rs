//! Number fields as towers of simple extensions of the rationals.
//!
//! An element of a tower of depth `k` is a coordinate vector over the
//! product basis `a1^e1 * ... * ak^ek` (`0 <= ei < deg_i`), with the index of
//! the top generator varying slowest.

use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

use num_traits::{One, Signed, Zero};

use super::factor::factor_squarefree;
use super::field::{format_rational, rat, Field, Rational, Rationals};
use super::poly::UniPoly;
use crate::error::{Error, Limit, Result};

pub type Coords = Vec<Rational>;

#[derive(Debug)]
struct Level {
    name: String,
    /// Monic minimal polynomial over the level below, lowest degree first.
    minpoly: Vec<Coords>,
}

impl Level {
    fn degree(&self) -> usize {
        self.minpoly.len() - 1
    }
}

#[derive(Clone, Debug)]
pub struct FieldTower {
    levels: Arc<Vec<Level>>,
    depth: usize,
}

impl PartialEq for FieldTower {
    fn eq(&self, other: &Self) -> bool {
        self.depth == other.depth && (Arc::ptr_eq(&self.levels, &other.levels) || self.describe() == other.describe())
    }
}

impl FieldTower {
    pub fn rationals() -> Self {
        FieldTower { levels: Arc::new(Vec::new()), depth: 0 }
    }

    pub fn depth(&self) -> usize {
        self.depth
    }

    /// Degree over the rationals.
    pub fn degree(&self) -> usize {
        self.levels[..self.depth].iter().map(Level::degree).product()
    }

    pub fn level_degrees(&self) -> Vec<usize> {
        self.levels[..self.depth].iter().map(Level::degree).collect()
    }

    pub fn generator_names(&self) -> Vec<String> {
        self.levels[..self.depth].iter().map(|l| l.name.clone()).collect()
    }

    /// The tower with the top level removed.
    pub fn base(&self) -> FieldTower {
        assert!(self.depth > 0);
        FieldTower { levels: self.levels.clone(), depth: self.depth - 1 }
    }

    /// Adjoins a root of `minpoly`, which must be irreducible over `self`.
    pub fn extend(&self, name: &str, minpoly: &UniPoly<Coords>) -> Result<FieldTower> {
        if minpoly.degree().unwrap_or(0) < 1 {
            return Err(Error::domain("minimal polynomial of a new level must have positive degree"));
        }
        let monic = minpoly.monic(self);
        if factor_over_tower(self, &monic).len() != 1 {
            return Err(Error::domain(format!("polynomial for level {name} is reducible")));
        }
        Ok(self.extend_unchecked(name, &monic))
    }

    pub(crate) fn extend_unchecked(&self, name: &str, minpoly: &UniPoly<Coords>) -> FieldTower {
        let mut levels: Vec<Level> = self.levels[..self.depth]
            .iter()
            .map(|l| Level { name: l.name.clone(), minpoly: l.minpoly.clone() })
            .collect();
        let monic = minpoly.monic(self);
        levels.push(Level { name: name.to_string(), minpoly: monic.into_coeffs() });
        FieldTower { depth: levels.len(), levels: Arc::new(levels) }
    }

    /// The generator of the top level.
    pub fn generator(&self) -> Coords {
        assert!(self.depth > 0);
        let sub = self.base().degree();
        let mut c = self.zero();
        c[sub] = Rational::one();
        c
    }

    /// Image of an element of [`base`](Self::base).
    pub fn embed_base(&self, a: &[Rational]) -> Coords {
        let mut c = self.zero();
        c[..a.len()].clone_from_slice(a);
        c
    }

    /// Image of an element of any lower level.
    pub fn embed(&self, a: &[Rational]) -> Coords {
        self.embed_base(a)
    }

    pub fn minpoly(&self) -> UniPoly<Coords> {
        assert!(self.depth > 0);
        let b = self.base();
        UniPoly::new(&b, self.levels[self.depth - 1].minpoly.clone())
    }

    fn describe(&self) -> Vec<(String, Vec<Coords>)> {
        self.levels[..self.depth].iter().map(|l| (l.name.clone(), l.minpoly.clone())).collect()
    }

    fn split_blocks<'a>(&self, a: &'a [Rational]) -> Vec<&'a [Rational]> {
        let sub = self.base().degree();
        a.chunks(sub).collect()
    }

    /// Matrix (over the base level) of multiplication by `a`; column `j` holds
    /// the coordinates of `a * generator^j`.
    fn mult_matrix(&self, a: &[Rational]) -> Vec<Vec<Coords>> {
        let d = self.levels[self.depth - 1].degree();
        let g = self.generator();
        let mut cols = Vec::with_capacity(d);
        let mut cur = a.to_vec();
        for _ in 0..d {
            cols.push(self.split_blocks(&cur).into_iter().map(|b| b.to_vec()).collect::<Vec<_>>());
            cur = self.mul(&cur, &g);
        }
        // rows indexed by block, columns by power
        (0..d).map(|i| (0..d).map(|j| cols[j][i].clone()).collect()).collect()
    }

    /// Relative norm down to the base level.
    pub fn norm_to_base(&self, a: &[Rational]) -> Coords {
        let b = self.base();
        determinant(&b, self.mult_matrix(a))
    }

    pub fn format_elem(&self, a: &[Rational]) -> String {
        let degs = self.level_degrees();
        let names = self.generator_names();
        let mut parts = Vec::new();
        for (idx, c) in a.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mut rest = idx;
            let mut mono = Vec::new();
            for (d, n) in degs.iter().zip(&names) {
                let e = rest % d;
                rest /= d;
                match e {
                    0 => {}
                    1 => mono.push(n.clone()),
                    _ => mono.push(format!("{n}^{e}")),
                }
            }
            let neg = c.is_negative();
            let abs = c.abs();
            let body = if mono.is_empty() {
                format_rational(&abs)
            } else if abs.is_one() {
                mono.join("*")
            } else {
                format!("{}*{}", format_rational(&abs), mono.join("*"))
            };
            parts.push((neg, body));
        }
        if parts.is_empty() {
            return "0".into();
        }
        let mut s = String::new();
        for (i, (neg, body)) in parts.into_iter().enumerate() {
            match (i, neg) {
                (0, true) => s.push('-'),
                (0, false) => {}
                (_, true) => s.push_str(" - "),
                (_, false) => s.push_str(" + "),
            }
            s.push_str(&body);
        }
        s
    }
}

impl Field for FieldTower {
    type Elem = Coords;

    fn zero(&self) -> Coords {
        vec![Rational::zero(); self.degree()]
    }

    fn one(&self) -> Coords {
        let mut c = self.zero();
        c[0] = Rational::one();
        c
    }

    fn is_zero(&self, a: &Coords) -> bool {
        a.iter().all(Zero::is_zero)
    }

    fn add(&self, a: &Coords, b: &Coords) -> Coords {
        a.iter().zip(b).map(|(x, y)| x + y).collect()
    }

    fn sub(&self, a: &Coords, b: &Coords) -> Coords {
        a.iter().zip(b).map(|(x, y)| x - y).collect()
    }

    fn neg(&self, a: &Coords) -> Coords {
        a.iter().map(|x| -x).collect()
    }

    fn mul(&self, a: &Coords, b: &Coords) -> Coords {
        if self.depth == 0 {
            return vec![&a[0] * &b[0]];
        }
        let sub = self.base();
        let level = &self.levels[self.depth - 1];
        let d = level.degree();
        let ab = self.split_blocks(a);
        let bb = self.split_blocks(b);
        let mut prod = vec![sub.zero(); 2 * d - 1];
        for (i, x) in ab.iter().enumerate() {
            if x.iter().all(Zero::is_zero) {
                continue;
            }
            for (j, y) in bb.iter().enumerate() {
                if y.iter().all(Zero::is_zero) {
                    continue;
                }
                let t = sub.mul(&x.to_vec(), &y.to_vec());
                prod[i + j] = sub.add(&prod[i + j], &t);
            }
        }
        for k in (d..2 * d - 1).rev() {
            let c = std::mem::replace(&mut prod[k], sub.zero());
            if sub.is_zero(&c) {
                continue;
            }
            for (i, m) in level.minpoly[..d].iter().enumerate() {
                if !sub.is_zero(m) {
                    prod[k - d + i] = sub.sub(&prod[k - d + i], &sub.mul(&c, m));
                }
            }
        }
        prod.truncate(d);
        prod.concat()
    }

    fn inv(&self, a: &Coords) -> Coords {
        assert!(!self.is_zero(a), "inverse of zero");
        if self.depth == 0 {
            return vec![a[0].recip()];
        }
        let sub = self.base();
        let pa = UniPoly::new(&sub, self.split_blocks(a).into_iter().map(|b| b.to_vec()).collect());
        let (g, s, _) = pa.ext_gcd(&self.minpoly(), &sub);
        debug_assert_eq!(g.degree(), Some(0));
        let d = self.levels[self.depth - 1].degree();
        (0..d).map(|i| s.coeff(&sub, i)).collect::<Vec<_>>().concat()
    }

    fn from_rational(&self, q: &Rational) -> Coords {
        let mut c = self.zero();
        c[0] = q.clone();
        c
    }

    fn cmp_elem(&self, a: &Coords, b: &Coords) -> Ordering {
        for (x, y) in a.iter().zip(b) {
            let o = Rationals.cmp_elem(x, y);
            if o != Ordering::Equal {
                return o;
            }
        }
        Ordering::Equal
    }
}

/// Determinant by Gaussian elimination over any field.
pub(crate) fn determinant<F: Field>(field: &F, mut m: Vec<Vec<F::Elem>>) -> F::Elem {
    let n = m.len();
    let mut det = field.one();
    for c in 0..n {
        let Some(piv) = (c..n).find(|&r| !field.is_zero(&m[r][c])) else {
            return field.zero();
        };
        if piv != c {
            m.swap(piv, c);
            det = field.neg(&det);
        }
        let pinv = field.inv(&m[c][c]);
        det = field.mul(&det, &m[c][c]);
        for r in c + 1..n {
            if field.is_zero(&m[r][c]) {
                continue;
            }
            let f = field.mul(&m[r][c], &pinv);
            for k in c..n {
                let t = field.mul(&f, &m[c][k]);
                m[r][k] = field.sub(&m[r][k], &t);
            }
        }
    }
    det
}

/// Relative norm of a polynomial over a tower down to the base level,
/// by evaluation at rational points and interpolation.
fn poly_norm(k: &FieldTower, g: &UniPoly<Coords>) -> UniPoly<Coords> {
    let base = k.base();
    let d = k.levels[k.depth - 1].degree();
    let deg = g.degree().unwrap() * d;
    let xs: Vec<Rational> = (0..=deg as i64).map(rat).collect();
    let ys: Vec<Coords> = xs.iter().map(|x| k.norm_to_base(&g.eval(&k.from_rational(x), k))).collect();
    interpolate(&base, &xs, ys)
}

/// Newton interpolation through `(x_i, y_i)` with rational nodes.
fn interpolate<F: Field>(field: &F, xs: &[Rational], mut coef: Vec<F::Elem>) -> UniPoly<F::Elem> {
    let n = xs.len();
    for j in 1..n {
        for i in (j..n).rev() {
            let den = field.from_rational(&(&xs[i] - &xs[i - j]));
            coef[i] = field.div(&field.sub(&coef[i], &coef[i - 1]), &den);
        }
    }
    let mut acc = UniPoly::zero();
    for i in (0..n).rev() {
        let lin = UniPoly::new(field, vec![field.from_rational(&-&xs[i]), field.one()]);
        acc = acc.mul(&lin, field).add(&UniPoly::constant(field, coef[i].clone()), field);
    }
    acc
}

fn is_squarefree<F: Field>(field: &F, f: &UniPoly<F::Elem>) -> bool {
    f.gcd(&f.derivative(field), field).degree() == Some(0)
}

/// Irreducible monic factors with multiplicities, ordered by degree and
/// then by coefficients.
pub fn factor_over_tower(k: &FieldTower, f: &UniPoly<Coords>) -> Vec<(UniPoly<Coords>, u32)> {
    let mut out = Vec::new();
    for (g, mult) in f.squarefree_decomposition(k) {
        for h in factor_squarefree_tower(k, &g) {
            out.push((h, mult));
        }
    }
    out.sort_by(|a, b| a.0.cmp_canonical(&b.0, k).then(a.1.cmp(&b.1)));
    out
}

fn factor_squarefree_tower(k: &FieldTower, f: &UniPoly<Coords>) -> Vec<UniPoly<Coords>> {
    if f.degree().unwrap_or(0) <= 1 {
        return vec![f.monic(k)];
    }
    if k.depth == 0 {
        let q = f.map(&Rationals, |c| c[0].clone());
        return factor_squarefree(&q).into_iter().map(|g| g.map(k, |c| vec![c.clone()])).collect();
    }
    let base = k.base();
    let theta = k.generator();
    // find a shift making the norm square-free: 0, 1, -1, 2, -2, ...
    for step in 0.. {
        let s = if step % 2 == 1 { (step + 1) / 2 } else { -(step / 2) };
        let st = k.mul(&k.from_int(s), &theta);
        let shifted = f.shift(&k.neg(&st), k);
        let norm = poly_norm(k, &shifted);
        if !is_squarefree(&base, &norm) {
            continue;
        }
        let mut out = Vec::new();
        let mut rest = shifted.clone();
        for (nf, _) in factor_over_tower(&base, &norm) {
            let lifted = nf.map(k, |c| k.embed_base(c));
            let h = rest.gcd(&lifted, k);
            if h.degree().unwrap_or(0) > 0 {
                rest = rest.exact_div(&h, k);
                out.push(h.shift(&st, k).monic(k));
            }
        }
        return out;
    }
    unreachable!()
}

/// Factors a rational polynomial over a tower.
pub fn factor_over_field(f: &UniPoly<Rational>, k: &FieldTower) -> Result<Vec<(UniPoly<Coords>, u32)>> {
    if f.is_zero() {
        return Err(Error::domain("factorization of the zero polynomial"));
    }
    let lifted = f.map(k, |c| k.from_rational(c));
    Ok(factor_over_tower(k, &lifted))
}

#[derive(Clone, Debug)]
pub struct NumberFieldElement {
    tower: FieldTower,
    coords: Coords,
}

impl PartialEq for NumberFieldElement {
    fn eq(&self, other: &Self) -> bool {
        self.tower == other.tower && self.coords == other.coords
    }
}

impl NumberFieldElement {
    pub fn new(tower: &FieldTower, coords: Coords) -> Result<Self> {
        if coords.len() != tower.degree() {
            return Err(Error::domain(format!(
                "coordinate vector of length {} for a tower of degree {}",
                coords.len(),
                tower.degree()
            )));
        }
        Ok(NumberFieldElement { tower: tower.clone(), coords })
    }

    pub fn from_rational(tower: &FieldTower, q: &Rational) -> Self {
        NumberFieldElement { tower: tower.clone(), coords: tower.from_rational(q) }
    }

    pub fn tower(&self) -> &FieldTower {
        &self.tower
    }

    pub fn coords(&self) -> &[Rational] {
        &self.coords
    }

    pub fn add(&self, o: &Self) -> Self {
        NumberFieldElement { tower: self.tower.clone(), coords: self.tower.add(&self.coords, &o.coords) }
    }

    pub fn sub(&self, o: &Self) -> Self {
        NumberFieldElement { tower: self.tower.clone(), coords: self.tower.sub(&self.coords, &o.coords) }
    }

    pub fn mul(&self, o: &Self) -> Self {
        NumberFieldElement { tower: self.tower.clone(), coords: self.tower.mul(&self.coords, &o.coords) }
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::domain("inverse of zero"));
        }
        Ok(NumberFieldElement { tower: self.tower.clone(), coords: self.tower.inv(&self.coords) })
    }

    pub fn is_zero(&self) -> bool {
        self.tower.is_zero(&self.coords)
    }
}

impl fmt::Display for NumberFieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.tower.format_elem(&self.coords))
    }
}

/// Coordinates over the product basis of the element's tower.
pub fn field_coords(a: &NumberFieldElement) -> Vec<Rational> {
    a.coords.clone()
}

pub const DEFAULT_DEGREE_CAP: usize = 64;

/// Splitting field of a square-free rational polynomial together with all
/// of its roots.
///
/// Roots are ordered like the linear factors `x - r` they come from.
/// Factoring a degree-`k` polynomial over a tower of degree `D` works with a
/// norm of degree `D*k`; when that exceeds `degree_cap` the computation stops
/// with a resource error, as it does when the tower itself would.
pub fn splitting_field(f: &UniPoly<Rational>, degree_cap: usize) -> Result<(FieldTower, Vec<NumberFieldElement>)> {
    let q = &Rationals;
    if f.is_zero() {
        return Err(Error::domain("splitting field of the zero polynomial"));
    }
    if f.gcd(&f.derivative(q), q).degree() != Some(0) {
        return Err(Error::domain("splitting field requires a square-free polynomial"));
    }
    let mut tower = FieldTower::rationals();
    let mut roots: Vec<Coords> = Vec::new();
    let mut pending = f.monic(q).map(&tower, |c| vec![c.clone()]);
    while pending.degree().unwrap_or(0) > 0 {
        let k = pending.degree().unwrap();
        if tower.degree() * k > degree_cap {
            return Err(Error::resource(
                Limit::FieldDegree,
                format!(
                    "splitting field degree cap {degree_cap} exceeded: attained degree {}, unsplit factor of degree {k}",
                    tower.degree()
                ),
            ));
        }
        let factors = factor_over_tower(&tower, &pending);
        let mut nonlinear = Vec::new();
        for (g, _) in factors {
            if g.degree() == Some(1) {
                roots.push(tower.neg(&g.coeffs()[0]));
            } else {
                nonlinear.push(g);
            }
        }
        let Some(next) = nonlinear.first() else { break };
        let new_degree = tower.degree() * next.degree().unwrap();
        if new_degree > degree_cap {
            return Err(Error::resource(
                Limit::FieldDegree,
                format!("splitting field degree cap {degree_cap} exceeded: attained degree {new_degree}"),
            ));
        }
        let new_tower = tower.extend_unchecked(&format!("a{}", tower.depth() + 1), next);
        let lift = |c: &Coords| new_tower.embed(c);
        roots = roots.iter().map(lift).collect();
        let theta = new_tower.generator();
        let rest = nonlinear
            .iter()
            .fold(UniPoly::constant(&new_tower, new_tower.one()), |acc, g| acc.mul(&g.map(&new_tower, lift), &new_tower));
        pending = rest.exact_div(&UniPoly::linear_root(&new_tower, &theta), &new_tower);
        roots.push(theta);
        tower = new_tower;
    }
    roots.sort_by(|a, b| tower.cmp_elem(&tower.neg(a), &tower.neg(b)));
    let roots = roots.into_iter().map(|c| NumberFieldElement { tower: tower.clone(), coords: c }).collect();
    Ok((tower, roots))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::field::frac;

    fn p(c: &[i64]) -> UniPoly {
        UniPoly::from_ints(c)
    }

    fn gaussian() -> FieldTower {
        let q = FieldTower::rationals();
        q.extend("i", &p(&[1, 0, 1]).map(&q, |c| vec![c.clone()])).unwrap()
    }

    #[test]
    fn coordinates_in_gaussian_field() {
        let k = gaussian();
        let i = NumberFieldElement::new(&k, k.generator()).unwrap();
        assert_eq!(field_coords(&i), vec![rat(0), rat(1)]);
        let e = NumberFieldElement::new(&k, vec![rat(2), rat(-3)]).unwrap();
        assert_eq!(e.to_string(), "2 - 3*i");
        assert_eq!(field_coords(&i.mul(&i)), vec![rat(-1), rat(0)]);
        let inv = e.inv().unwrap();
        assert_eq!(field_coords(&inv.mul(&e)), vec![rat(1), rat(0)]);
        assert_eq!(field_coords(&inv), vec![frac(2, 13), frac(3, 13)]);
    }

    #[test]
    fn extend_rejects_reducible() {
        let q = FieldTower::rationals();
        assert!(q.extend("b", &p(&[-4, 0, 1]).map(&q, |c| vec![c.clone()])).is_err());
    }

    #[test]
    fn splitting_field_examples() {
        let (k, roots) = splitting_field(&p(&[-3, 1]), 64).unwrap();
        assert_eq!(k.degree(), 1);
        assert_eq!(roots.len(), 1);
        assert_eq!(field_coords(&roots[0]), vec![rat(3)]);

        let (k, roots) = splitting_field(&p(&[1, 0, 1]), 64).unwrap();
        assert_eq!(k.degree(), 2);
        assert_eq!(field_coords(&roots[0]), vec![rat(0), rat(1)]);
        assert_eq!(field_coords(&roots[1]), vec![rat(0), rat(-1)]);

        let f = p(&[-2, 0, 1]);
        let (k, roots) = splitting_field(&f, 64).unwrap();
        assert_eq!(k.degree(), 2);
        for r in &roots {
            let v = f.map(&k, |c| k.from_rational(c)).eval(&r.coords, &k);
            assert!(k.is_zero(&v));
        }
    }

    #[test]
    fn cube_root_of_two_needs_degree_six() {
        let f = p(&[-2, 0, 0, 1]);
        let (k, roots) = splitting_field(&f, 64).unwrap();
        assert_eq!(k.degree(), 6);
        assert_eq!(roots.len(), 3);
        let fk = f.map(&k, |c| k.from_rational(c));
        for r in &roots {
            assert!(k.is_zero(&fk.eval(&r.coords().to_vec(), &k)));
        }
        let err = splitting_field(&f, 4).unwrap_err();
        assert!(err.is_resource());
    }

    #[test]
    fn factor_over_gaussian_field() {
        let k = gaussian();
        let fs = factor_over_field(&p(&[1, 0, 1]), &k).unwrap();
        assert_eq!(fs.len(), 2);
        // x^4 + 1 over Q(i) splits into x^2 - i and x^2 + i
        let fs = factor_over_field(&p(&[1, 0, 0, 0, 1]), &k).unwrap();
        assert_eq!(fs.len(), 2);
        assert!(fs.iter().all(|(g, m)| g.degree() == Some(2) && *m == 1));
        let prod = fs.iter().fold(UniPoly::constant(&k, k.one()), |a, (g, _)| a.mul(g, &k));
        assert_eq!(prod, p(&[1, 0, 0, 0, 1]).map(&k, |c| k.from_rational(c)));
    }
}
