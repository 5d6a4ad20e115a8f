use num_traits::Zero;

use crate::arith::Rational;
use crate::error::{Error, Result};
use crate::linalg::{Coordinates, MatrixQ, Space};

/// A subspace of n×n matrices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MatrixSpace {
    n: usize,
    space: Space,
}

pub(crate) fn unflatten(n: usize, v: &[Rational]) -> MatrixQ {
    MatrixQ::from_flat(n, n, v.to_vec())
}

impl MatrixSpace {
    pub fn zero(n: usize) -> Self {
        MatrixSpace { n, space: Space::zero(n * n) }
    }

    pub fn full(n: usize) -> Self {
        MatrixSpace { n, space: Space::full(n * n) }
    }

    pub fn span(n: usize, mats: &[MatrixQ]) -> Self {
        let vecs: Vec<Vec<Rational>> = mats.iter().map(|m| m.flat().to_vec()).collect();
        MatrixSpace { n, space: Space::span(n * n, &vecs) }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dimension(&self) -> usize {
        self.space.dimension()
    }

    pub fn is_zero(&self) -> bool {
        self.dimension() == 0
    }

    /// Canonical (reduced echelon) basis.
    pub fn basis(&self) -> Vec<MatrixQ> {
        self.space.basis().iter().map(|v| unflatten(self.n, v)).collect()
    }

    pub fn contains(&self, m: &MatrixQ) -> bool {
        self.space.contains(m.flat())
    }

    pub fn contains_space(&self, other: &MatrixSpace) -> bool {
        self.space.contains_space(&other.space)
    }

    pub fn sum(&self, other: &MatrixSpace) -> MatrixSpace {
        MatrixSpace { n: self.n, space: self.space.sum(&other.space) }
    }

    pub fn intersection(&self, other: &MatrixSpace) -> MatrixSpace {
        MatrixSpace { n: self.n, space: self.space.intersection(&other.space) }
    }

    /// Residue modulo this subspace; linear in `m`.
    pub(crate) fn reduce(&self, m: &MatrixQ) -> Vec<Rational> {
        self.space.reduce(m.flat())
    }

    /// Span of all brackets `[a, b]`.
    pub fn bracket(&self, other: &MatrixSpace) -> MatrixSpace {
        let (a, b) = (self.basis(), other.basis());
        let all: Vec<MatrixQ> = a.iter().flat_map(|x| b.iter().map(move |y| x.bracket(y))).collect();
        MatrixSpace::span(self.n, &all)
    }
}

/// A Lie subalgebra of gl(n) with its structure constants.
#[derive(Clone, Debug)]
pub struct LieAlgebra {
    n: usize,
    basis: Vec<MatrixQ>,
    /// `structure[i][j][k]`: coefficient of `b_k` in `[b_i, b_j]`.
    structure: Vec<Vec<Vec<Rational>>>,
    coords: Coordinates,
}

impl PartialEq for LieAlgebra {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.basis == other.basis
    }
}

impl LieAlgebra {
    /// Checks independence and closure under the bracket.
    pub fn new(n: usize, basis: Vec<MatrixQ>) -> Result<Self> {
        if basis.iter().any(|b| b.rows() != n || b.cols() != n) {
            return Err(Error::domain(format!("basis matrices must be {n}x{n}")));
        }
        let vecs: Vec<Vec<Rational>> = basis.iter().map(|b| b.flat().to_vec()).collect();
        if Space::span(n * n, &vecs).dimension() != basis.len() {
            return Err(Error::domain("basis is linearly dependent"));
        }
        let coords = if vecs.is_empty() { Coordinates::new(&[]) } else { Coordinates::new(&vecs) };
        let d = basis.len();
        let mut structure = vec![vec![Vec::new(); d]; d];
        for i in 0..d {
            for j in 0..d {
                if j < i {
                    structure[i][j] = structure[j][i].iter().map(|c: &Rational| -c).collect();
                    continue;
                }
                let br = basis[i].bracket(&basis[j]);
                structure[i][j] = coords.coords(br.flat()).ok_or_else(|| {
                    Error::domain(format!("not closed under the bracket: [b{}, b{}] leaves the span", i + 1, j + 1))
                })?;
            }
        }
        Ok(LieAlgebra { n, basis, structure, coords })
    }

    pub fn from_space(space: &MatrixSpace) -> Result<Self> {
        LieAlgebra::new(space.n(), space.basis())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dimension(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[MatrixQ] {
        &self.basis
    }

    pub fn structure(&self, i: usize, j: usize) -> &[Rational] {
        &self.structure[i][j]
    }

    pub fn space(&self) -> MatrixSpace {
        MatrixSpace::span(self.n, &self.basis)
    }

    pub fn coords(&self, m: &MatrixQ) -> Option<Vec<Rational>> {
        if self.basis.is_empty() {
            return m.is_zero().then(Vec::new);
        }
        self.coords.coords(m.flat())
    }

    pub fn contains(&self, m: &MatrixQ) -> bool {
        self.coords(m).is_some()
    }

    pub fn element(&self, c: &[Rational]) -> MatrixQ {
        let mut out = MatrixQ::zeros(self.n, self.n);
        for (ci, b) in c.iter().zip(&self.basis) {
            if !ci.is_zero() {
                out = &out + &b.scale(ci);
            }
        }
        out
    }

    /// Matrix of `ad x` in the basis, for `x` given by coordinates.
    pub fn ad(&self, x: &[Rational]) -> MatrixQ {
        let d = self.dimension();
        MatrixQ::from_fn(d, d, |k, j| {
            let mut s = Rational::zero();
            for (i, xi) in x.iter().enumerate() {
                if !xi.is_zero() {
                    s += xi * &self.structure[i][j][k];
                }
            }
            s
        })
    }

    pub fn is_abelian(&self) -> bool {
        self.structure.iter().flatten().flatten().all(Zero::is_zero)
    }

    pub fn derived(&self) -> MatrixSpace {
        let s = self.space();
        s.bracket(&s)
    }

    pub fn is_nilpotent(&self) -> bool {
        let whole = self.space();
        let mut cur = whole.clone();
        for _ in 0..=self.dimension() {
            if cur.is_zero() {
                return true;
            }
            let next = whole.bracket(&cur);
            if next.dimension() == cur.dimension() {
                return false;
            }
            cur = next;
        }
        cur.is_zero()
    }

    pub fn is_solvable(&self) -> bool {
        let mut cur = self.space();
        loop {
            if cur.is_zero() {
                return true;
            }
            let next = cur.bracket(&cur);
            if next.dimension() == cur.dimension() {
                return false;
            }
            cur = next;
        }
    }

    /// Jacobi identity on all basis triples, via the structure constants.
    pub fn satisfies_jacobi(&self) -> bool {
        let d = self.dimension();
        let br = |x: &[Rational], j: usize| -> Vec<Rational> {
            let mut out = vec![Rational::zero(); d];
            for (i, xi) in x.iter().enumerate() {
                if xi.is_zero() {
                    continue;
                }
                for (o, c) in out.iter_mut().zip(&self.structure[i][j]) {
                    *o += xi * c;
                }
            }
            out
        };
        for i in 0..d {
            for j in 0..d {
                for k in 0..d {
                    // [[b_i,b_j],b_k] + [[b_j,b_k],b_i] + [[b_k,b_i],b_j]
                    let a = br(&self.structure[i][j], k);
                    let b = br(&self.structure[j][k], i);
                    let c = br(&self.structure[k][i], j);
                    if a.iter().zip(&b).zip(&c).any(|((x, y), z)| !(x + y + z).is_zero()) {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// Subalgebra spanned by the given elements of this algebra.
    pub fn subalgebra(&self, space: &MatrixSpace) -> Result<LieAlgebra> {
        LieAlgebra::from_space(space)
    }
}

/// Structure constants of the Lie algebra spanned by `basis`.
pub fn structure_constants(basis: &[MatrixQ]) -> Result<LieAlgebra> {
    let n = basis.first().map(MatrixQ::rows).ok_or_else(|| Error::domain("empty basis: matrix size unknown"))?;
    LieAlgebra::new(n, basis.to_vec())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;

    pub(crate) fn sl2() -> Vec<MatrixQ> {
        vec![MatrixQ::from_ints(&[&[1, 0], &[0, -1]]), MatrixQ::unit(2, 0, 1), MatrixQ::unit(2, 1, 0)]
    }

    #[test]
    fn sl2_constants() {
        let l = structure_constants(&sl2()).unwrap();
        assert_eq!(l.structure(0, 1), [rat(0), rat(2), rat(0)]);
        assert_eq!(l.structure(0, 2), [rat(0), rat(0), rat(-2)]);
        assert_eq!(l.structure(1, 2), [rat(1), rat(0), rat(0)]);
        assert!(l.satisfies_jacobi());
        assert!(!l.is_solvable());
    }

    #[test]
    fn abelian_examples() {
        let d = structure_constants(&[MatrixQ::from_ints(&[&[1, 0], &[0, 0]]), MatrixQ::from_ints(&[&[0, 0], &[0, 1]])]).unwrap();
        assert!(d.is_abelian());
        let e = structure_constants(&[MatrixQ::unit(3, 0, 1), MatrixQ::unit(3, 0, 2)]).unwrap();
        assert!(e.is_abelian() && e.is_nilpotent());
    }

    #[test]
    fn non_closed_basis_is_rejected() {
        let err = structure_constants(&[MatrixQ::unit(2, 0, 1), MatrixQ::unit(2, 1, 0)]).unwrap_err();
        assert!(err.to_string().contains("[b1, b2]"));
    }
}
