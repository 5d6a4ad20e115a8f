//! Subspaces of `Q^d` given by spanning sets.

use num_traits::Zero;

use super::matrix::{kernel_rows, rref};
use crate::arith::{Rational, Rationals};

/// A subspace kept as a reduced row echelon basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Space {
    dim: usize,
    rows: Vec<Vec<Rational>>,
    pivots: Vec<usize>,
}

impl Space {
    pub fn zero(dim: usize) -> Self {
        Space { dim, rows: Vec::new(), pivots: Vec::new() }
    }

    pub fn full(dim: usize) -> Self {
        let rows = (0..dim)
            .map(|i| (0..dim).map(|j| if i == j { Rational::from_integer(1.into()) } else { Rational::zero() }).collect())
            .collect();
        Space { dim, rows, pivots: (0..dim).collect() }
    }

    pub fn span(dim: usize, vectors: &[Vec<Rational>]) -> Self {
        let mut rows = vectors.to_vec();
        let pivots = if rows.is_empty() { Vec::new() } else { rref(&Rationals, &mut rows) };
        Space { dim, rows, pivots }
    }

    pub fn ambient(&self) -> usize {
        self.dim
    }

    pub fn dimension(&self) -> usize {
        self.rows.len()
    }

    pub fn basis(&self) -> &[Vec<Rational>] {
        &self.rows
    }

    /// Residue of `v` after clearing the pivot columns.
    pub fn reduce(&self, v: &[Rational]) -> Vec<Rational> {
        let mut v = v.to_vec();
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if v[p].is_zero() {
                continue;
            }
            let c = v[p].clone();
            for (x, r) in v.iter_mut().zip(row) {
                if !r.is_zero() {
                    *x -= &c * r;
                }
            }
        }
        v
    }

    pub fn contains(&self, v: &[Rational]) -> bool {
        self.reduce(v).iter().all(Zero::is_zero)
    }

    pub fn contains_space(&self, other: &Space) -> bool {
        other.rows.iter().all(|v| self.contains(v))
    }

    pub fn sum(&self, other: &Space) -> Space {
        let mut all = self.rows.clone();
        all.extend(other.rows.iter().cloned());
        Space::span(self.dim, &all)
    }

    pub fn intersection(&self, other: &Space) -> Space {
        // solve a*A = b*B for the stacked coefficients
        let (a, b) = (self.rows.len(), other.rows.len());
        if a == 0 || b == 0 {
            return Space::zero(self.dim);
        }
        let eqs: Vec<Vec<Rational>> = (0..self.dim)
            .map(|k| self.rows.iter().map(|r| r[k].clone()).chain(other.rows.iter().map(|r| -&r[k])).collect())
            .collect();
        let ker = kernel_rows(&Rationals, &eqs, a + b);
        let vecs: Vec<Vec<Rational>> = ker
            .iter()
            .map(|c| {
                let mut v = vec![Rational::zero(); self.dim];
                for (ci, row) in c[..a].iter().zip(&self.rows) {
                    for (x, r) in v.iter_mut().zip(row) {
                        *x += ci * r;
                    }
                }
                v
            })
            .collect();
        Space::span(self.dim, &vecs)
    }
}

/// Coordinates with respect to a fixed (independent) list of vectors.
#[derive(Clone, Debug)]
pub struct Coordinates {
    size: usize,
    rows: Vec<Vec<Rational>>,
    combos: Vec<Vec<Rational>>,
    pivots: Vec<usize>,
}

impl Coordinates {
    /// Panics if the vectors are dependent.
    pub fn new(vectors: &[Vec<Rational>]) -> Self {
        let size = vectors.len();
        let dim = vectors.first().map_or(0, Vec::len);
        let mut aug: Vec<Vec<Rational>> = vectors
            .iter()
            .enumerate()
            .map(|(i, v)| {
                let mut r = v.clone();
                r.extend((0..size).map(|j| if i == j { Rational::from_integer(1.into()) } else { Rational::zero() }));
                r
            })
            .collect();
        let pivots = if aug.is_empty() { Vec::new() } else { rref(&Rationals, &mut aug) };
        assert!(pivots.len() == size && pivots.iter().all(|&p| p < dim), "dependent basis");
        let rows = aug.iter().map(|r| r[..dim].to_vec()).collect();
        let combos = aug.iter().map(|r| r[dim..].to_vec()).collect();
        Coordinates { size, rows, combos, pivots }
    }

    pub fn len(&self) -> usize {
        self.size
    }

    pub fn is_empty(&self) -> bool {
        self.size == 0
    }

    /// Coefficients expressing `v` in the basis, or `None` if outside the span.
    pub fn coords(&self, v: &[Rational]) -> Option<Vec<Rational>> {
        let mut v = v.to_vec();
        let mut c = vec![Rational::zero(); self.size];
        for ((row, combo), &p) in self.rows.iter().zip(&self.combos).zip(&self.pivots) {
            if v[p].is_zero() {
                continue;
            }
            let f = v[p].clone();
            for (x, r) in v.iter_mut().zip(row) {
                if !r.is_zero() {
                    *x -= &f * r;
                }
            }
            for (x, r) in c.iter_mut().zip(combo) {
                if !r.is_zero() {
                    *x += &f * r;
                }
            }
        }
        v.iter().all(Zero::is_zero).then_some(c)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;

    fn v(x: &[i64]) -> Vec<Rational> {
        x.iter().map(|&a| rat(a)).collect()
    }

    #[test]
    fn intersection_and_coordinates() {
        let a = Space::span(3, &[v(&[1, 0, 0]), v(&[0, 1, 0])]);
        let b = Space::span(3, &[v(&[1, 1, 1]), v(&[0, 1, 0])]);
        let i = a.intersection(&b);
        assert_eq!(i.dimension(), 1);
        assert!(i.contains(&v(&[0, 5, 0])));
        let c = Coordinates::new(&[v(&[1, 1, 0]), v(&[0, 1, 1])]);
        assert_eq!(c.coords(&v(&[2, 5, 3])).unwrap(), v(&[2, 3]));
        assert!(c.coords(&v(&[1, 0, 0])).is_none());
    }
}
