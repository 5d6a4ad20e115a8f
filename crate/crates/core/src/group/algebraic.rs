use std::fmt;

use num_traits::{One, Zero};

use crate::arith::Rational;
use crate::error::{Error, Result};
use crate::groebner::{groebner_in, GroebnerLimits, MonomialOrder, MultiPoly, PolyRing};
use crate::lie::MatrixSpace;
use crate::linalg::{kernel, MatrixQ};

/// Caps shared by the group constructions.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Limits {
    pub groebner: GroebnerLimits,
    /// Largest splitting-field degree over the rationals.
    pub degree_cap: usize,
    /// Largest number of rounds in [`generated_group`](super::generated_group).
    pub max_rounds: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits { groebner: GroebnerLimits::default(), degree_cap: crate::arith::tower::DEFAULT_DEGREE_CAP, max_rounds: 50 }
    }
}

/// How a group was obtained.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Provenance {
    Trivial,
    /// Read back from its serialized ideal.
    Parsed,
    Nilpotent { basis: Vec<MatrixQ> },
    Semisimple { x: MatrixQ },
    Product { left: Box<Provenance>, right: Box<Provenance> },
    Generated { left: Box<Provenance>, right: Box<Provenance>, rounds: usize },
    LieAlgebra { basis: Vec<MatrixQ> },
}

impl fmt::Display for Provenance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Provenance::Trivial => f.write_str("trivial"),
            Provenance::Parsed => f.write_str("parsed"),
            Provenance::Nilpotent { basis } => write!(f, "nilpotent_group({} generators)", basis.len()),
            Provenance::Semisimple { x } => write!(f, "semisimple_group({x})"),
            Provenance::Product { left, right } => write!(f, "closure({left} * {right})"),
            Provenance::Generated { left, right, rounds } => write!(f, "generated_group({left}, {right}; {rounds} rounds)"),
            Provenance::LieAlgebra { basis } => write!(f, "group_of_lie_algebra(dim {})", basis.len()),
        }
    }
}

/// A matrix group given by the reduced grevlex Gröbner basis of its
/// vanishing ideal in the variables `x_i_j`.
#[derive(Clone, Debug)]
pub struct AlgebraicGroup {
    n: usize,
    ideal: Vec<MultiPoly>,
    provenance: Provenance,
}

impl PartialEq for AlgebraicGroup {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.ideal == other.ideal
    }
}

pub(crate) fn identity_point(n: usize) -> Vec<Rational> {
    MatrixQ::identity(n).flat().to_vec()
}

impl AlgebraicGroup {
    /// Computes the reduced basis of `gens` and checks that the identity
    /// matrix lies on the variety.
    pub fn new(n: usize, gens: &[MultiPoly], provenance: Provenance, limits: &GroebnerLimits) -> Result<Self> {
        let ring = PolyRing::matrix(n);
        let gens: Vec<MultiPoly> = gens.iter().map(|g| g.embed(&ring)).collect();
        let gb = groebner_in(&ring, &gens, &MonomialOrder::GrevLex, limits)?;
        Self::from_basis(n, gb.into_generators(), provenance)
    }

    /// Wraps an already reduced grevlex basis.
    pub(crate) fn from_basis(n: usize, ideal: Vec<MultiPoly>, provenance: Provenance) -> Result<Self> {
        let id = identity_point(n);
        if let Some(g) = ideal.iter().find(|g| !g.eval(&id).is_zero()) {
            return Err(Error::domain(format!("identity matrix does not satisfy {g}")));
        }
        Ok(AlgebraicGroup { n, ideal, provenance })
    }

    pub fn trivial(n: usize) -> Self {
        let ring = PolyRing::matrix(n);
        let ideal = (0..n * n)
            .map(|p| {
                let v = ring.var(p);
                if p / n == p % n {
                    v.sub(&MultiPoly::one(&ring))
                } else {
                    v
                }
            })
            .collect::<Vec<_>>();
        let mut ideal = ideal;
        ideal.sort_by(|a, b| {
            let o = MonomialOrder::GrevLex;
            o.cmp(&a.leading(&o).unwrap().0, &b.leading(&o).unwrap().0)
        });
        AlgebraicGroup { n, ideal, provenance: Provenance::Trivial }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn ring(&self) -> PolyRing {
        self.ideal.first().map(|g| g.ring().clone()).unwrap_or_else(|| PolyRing::matrix(self.n))
    }

    /// Reduced grevlex basis, sorted by increasing leading monomial.
    pub fn ideal(&self) -> &[MultiPoly] {
        &self.ideal
    }

    pub fn provenance(&self) -> &Provenance {
        &self.provenance
    }

    pub fn is_trivial(&self) -> bool {
        *self == AlgebraicGroup::trivial(self.n)
    }

    pub(crate) fn with_provenance(mut self, p: Provenance) -> Self {
        self.provenance = p;
        self
    }

    /// Whether every generator vanishes at `m`.
    pub fn contains(&self, m: &MatrixQ) -> bool {
        m.rows() == self.n && m.cols() == self.n && self.ideal.iter().all(|g| g.eval(m.flat()).is_zero())
    }

    /// Header `n=<n>`, then one polynomial per line.
    pub fn serialize(&self) -> String {
        let mut out = format!("n={}\n", self.n);
        for g in &self.ideal {
            out.push_str(&g.to_string());
            out.push('\n');
        }
        out
    }

    pub fn parse(text: &str, limits: &GroebnerLimits) -> Result<Self> {
        let mut lines = text.lines().map(str::trim).filter(|l| !l.is_empty());
        let header = lines.next().ok_or_else(|| Error::parse("line 1", "missing header n=<int>"))?;
        let n: usize = header
            .strip_prefix("n=")
            .and_then(|v| v.trim().parse().ok())
            .filter(|&n| n > 0)
            .ok_or_else(|| Error::parse("line 1", "expected header n=<positive int>"))?;
        let ring = PolyRing::matrix(n);
        let gens = lines.map(|l| ring.parse(l)).collect::<Result<Vec<_>>>()?;
        AlgebraicGroup::new(n, &gens, Provenance::Parsed, limits)
    }

    /// Basis of the tangent space at the identity: the common kernel of the
    /// gradients of all generators at the identity.
    pub fn tangent_space(&self) -> Result<MatrixSpace> {
        let n = self.n;
        let id = identity_point(n);
        if let Some(g) = self.ideal.iter().find(|g| !g.eval(&id).is_zero()) {
            return Err(Error::domain(format!("identity matrix is not on the variety: {g}")));
        }
        let rows: Vec<Vec<Rational>> =
            self.ideal.iter().map(|g| (0..n * n).map(|p| g.derivative(p).eval(&id)).collect()).collect();
        let vecs = if rows.is_empty() {
            (0..n * n).map(|p| (0..n * n).map(|q| if p == q { Rational::one() } else { Rational::zero() }).collect()).collect()
        } else {
            kernel(&MatrixQ::from_rows(rows))
        };
        let mats: Vec<MatrixQ> = vecs.into_iter().map(|v| MatrixQ::from_flat(n, n, v)).collect();
        Ok(MatrixSpace::span(n, &mats))
    }
}

impl fmt::Display for AlgebraicGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.serialize())
    }
}

/// Tangent space at the identity as a canonical list of matrices.
pub fn tangent_space_at_identity(g: &AlgebraicGroup) -> Result<Vec<MatrixQ>> {
    Ok(g.tangent_space()?.basis())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn group(n: usize, gens: &[&str]) -> AlgebraicGroup {
        let ring = PolyRing::matrix(n);
        let gens: Vec<MultiPoly> = gens.iter().map(|s| ring.parse(s).unwrap()).collect();
        AlgebraicGroup::new(n, &gens, Provenance::Parsed, &GroebnerLimits::default()).unwrap()
    }

    #[test]
    fn tangent_examples() {
        let u = group(2, &["x_1_1 - 1", "x_2_2 - 1", "x_2_1"]);
        assert_eq!(tangent_space_at_identity(&u).unwrap(), vec![MatrixQ::unit(2, 0, 1)]);
        let sl = group(2, &["x_1_1*x_2_2 - x_1_2*x_2_1 - 1"]);
        let t = sl.tangent_space().unwrap();
        assert_eq!(t.dimension(), 3);
        assert!(t.basis().iter().all(|m| m.trace().is_zero()));
        let so = group(2, &["x_2_1 + x_1_2", "x_1_1 - x_2_2", "x_1_1^2 + x_1_2^2 - 1"]);
        assert_eq!(so.tangent_space().unwrap(), MatrixSpace::span(2, &[MatrixQ::from_ints(&[&[0, 1], &[-1, 0]])]));
    }

    #[test]
    fn identity_must_lie_on_the_variety() {
        let ring = PolyRing::matrix(2);
        let err = AlgebraicGroup::new(2, &[ring.parse("x_1_1").unwrap()], Provenance::Parsed, &GroebnerLimits::default());
        assert!(err.is_err());
    }

    #[test]
    fn serialization_round_trip() {
        let so = group(2, &["x_1_1^2 + x_1_2^2 - 1", "x_2_1 + x_1_2", "x_1_1 - x_2_2"]);
        let text = so.serialize();
        assert!(text.starts_with("n=2\n"));
        let back = AlgebraicGroup::parse(&text, &GroebnerLimits::default()).unwrap();
        assert_eq!(back, so);
        assert_eq!(back.serialize(), text);
        assert!(AlgebraicGroup::parse("m=2\nx_1_1", &GroebnerLimits::default()).is_err());
        assert!(AlgebraicGroup::trivial(3).contains(&MatrixQ::identity(3)));
        assert_eq!(AlgebraicGroup::trivial(2).tangent_space().unwrap().dimension(), 0);
    }
}
