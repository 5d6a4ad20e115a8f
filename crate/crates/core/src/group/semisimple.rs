use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use super::algebraic::{AlgebraicGroup, Limits, Provenance};
use super::nilpotent::{annihilator_forms, apply_form};
use crate::arith::field::primitive_integer_vector;
use crate::arith::tower::Coords;
use crate::arith::{
    factor_rational, field_coords, splitting_field, Field, FieldTower, NumberFieldElement, Rational, Rationals, UniPoly,
};
use crate::error::{Error, Result};
use crate::groebner::{eliminate, Monomial, MultiPoly, PolyRing};
use crate::linalg::matrix::inverse;
use crate::linalg::{characteristic_polynomial, is_semisimple, kernel, minimal_polynomial, saturate_lattice, Lattice, MatrixQ};

/// The associative algebra spanned by the powers of `X`, with linear
/// equations cutting it out and coordinate maps back to `T_0..T_t`.
#[derive(Clone, Debug)]
pub struct AssociativeHull {
    pub x: MatrixQ,
    /// Degree of the minimal polynomial minus one.
    pub t: usize,
    pub powers: Vec<MatrixQ>,
    /// Linear polynomials in the `x_i_j` vanishing exactly on the span of the powers.
    pub membership_constraints: Vec<MultiPoly>,
    /// `coordinate_maps[k][i*n + j]` is the coefficient of `x_i_j` in `T_k`.
    pub coordinate_maps: Vec<Vec<Rational>>,
}

impl AssociativeHull {
    pub fn new(x: &MatrixQ) -> Result<Self> {
        let n = x.rows();
        let t = minimal_polynomial(x)?.degree().unwrap_or(0) - 1;
        let mut powers = vec![MatrixQ::identity(n)];
        for _ in 0..t {
            let next = powers.last().unwrap() * x;
            powers.push(next);
        }
        let ring = PolyRing::matrix(n);
        let vars: Vec<MultiPoly> = (0..n * n).map(|p| ring.var(p)).collect();
        let membership_constraints =
            annihilator_forms(n, &powers).iter().map(|f| apply_form(&ring, f, &vars)).collect();

        // Lexicographically first positions on which the powers have full rank.
        let mut chosen: Vec<usize> = Vec::new();
        let mut rows: Vec<Vec<Rational>> = Vec::new();
        for p in 0..n * n {
            let row: Vec<Rational> = powers.iter().map(|m| m.flat()[p].clone()).collect();
            let mut trial = rows.clone();
            trial.push(row.clone());
            if crate::linalg::matrix::rank(&Rationals, &trial) > rows.len() {
                rows.push(row);
                chosen.push(p);
                if chosen.len() == t + 1 {
                    break;
                }
            }
        }
        let pinv = inverse(&MatrixQ::from_rows(rows)).expect("powers are independent on the chosen positions");
        let coordinate_maps = (0..=t)
            .map(|k| {
                let mut a = vec![Rational::zero(); n * n];
                for (col, &p) in chosen.iter().enumerate() {
                    a[p] = pinv.get(k, col).clone();
                }
                a
            })
            .collect();
        Ok(AssociativeHull { x: x.clone(), t, powers, membership_constraints, coordinate_maps })
    }
}

/// Integer relations `Σ e_i α_i = 0` among the given algebraic numbers.
pub fn lambda_basis(roots: &[NumberFieldElement]) -> Result<Lattice> {
    let m = roots.len();
    let Some(first) = roots.first() else {
        return Ok(Lattice::new(0, Vec::new()));
    };
    let d = first.tower().degree();
    let cols: Vec<Vec<Rational>> = roots.iter().map(field_coords).collect();
    if cols.iter().any(|c| c.len() != d) {
        return Err(Error::domain("roots live in different fields"));
    }
    let rows: Vec<Vec<Rational>> = (0..d).map(|k| cols.iter().map(|c| c[k].clone()).collect()).collect();
    let ker = kernel(&MatrixQ::from_rows(rows));
    let basis: Vec<Vec<BigInt>> = ker.iter().map(|v| primitive_integer_vector(v)).collect();
    saturate_lattice(&Lattice::new(m, basis))
}

/// Each lattice row `e` split as `e' - e''` with both parts non-negative.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LatticeEquations {
    pub lattice: Lattice,
    pub monomial_pairs: Vec<(Vec<u32>, Vec<u32>)>,
}

impl LatticeEquations {
    pub fn new(lattice: &Lattice) -> Self {
        let exp = |x: &BigInt| u32::try_from(x).expect("lattice entry fits in u32");
        let monomial_pairs = lattice
            .basis
            .iter()
            .map(|e| {
                let pos = e.iter().map(|x| if x.is_positive() { exp(x) } else { 0 }).collect();
                let neg = e.iter().map(|x| if x.is_negative() { exp(&-x) } else { 0 }).collect();
                (pos, neg)
            })
            .collect();
        LatticeEquations { lattice: lattice.clone(), monomial_pairs }
    }
}

/// Polynomial in `T_0..T_t` with coefficients in a number field.
struct FieldPoly {
    terms: HashMap<Monomial, Coords>,
}

impl FieldPoly {
    fn constant(k: &FieldTower, nvars: usize) -> Self {
        FieldPoly { terms: HashMap::from([(Monomial::one(nvars), k.one())]) }
    }

    fn linear(coeffs: Vec<Coords>, k: &FieldTower) -> Self {
        let nvars = coeffs.len();
        let terms = coeffs.into_iter().enumerate().filter(|(_, c)| !k.is_zero(c)).map(|(i, c)| (Monomial::var(nvars, i), c)).collect();
        FieldPoly { terms }
    }

    fn mul(&self, other: &FieldPoly, k: &FieldTower) -> FieldPoly {
        let mut terms: HashMap<Monomial, Coords> = HashMap::new();
        for (m, a) in &self.terms {
            for (n, b) in &other.terms {
                let prod = k.mul(a, b);
                let e = terms.entry(m.mul(n)).or_insert_with(|| k.zero());
                *e = k.add(e, &prod);
            }
        }
        terms.retain(|_, c| !k.is_zero(c));
        FieldPoly { terms }
    }

    fn pow(&self, e: u32, k: &FieldTower, nvars: usize) -> FieldPoly {
        (0..e).fold(FieldPoly::constant(k, nvars), |acc, _| acc.mul(self, k))
    }

    fn sub(mut self, other: &FieldPoly, k: &FieldTower) -> FieldPoly {
        for (m, c) in &other.terms {
            let e = self.terms.entry(m.clone()).or_insert_with(|| k.zero());
            *e = k.sub(e, c);
        }
        self.terms.retain(|_, c| !k.is_zero(c));
        self
    }

    /// One rational polynomial per coordinate of the field basis.
    fn expand(&self, ring: &PolyRing, degree: usize) -> Vec<MultiPoly> {
        (0..degree)
            .map(|d| MultiPoly::from_terms(ring, self.terms.iter().map(|(m, c)| (m.clone(), c[d].clone()))))
            .filter(|p| !p.is_zero())
            .collect()
    }
}

/// `G(X)`: the smallest algebraic group whose Lie algebra contains the
/// semisimple matrix `X`.
pub fn semisimple_group(x: &MatrixQ, limits: &Limits) -> Result<AlgebraicGroup> {
    semisimple_group_ordered(x, limits, |roots| roots)
}

/// As [`semisimple_group`], with the eigenvalues enumerated in the order
/// produced by `arrange`.
pub(crate) fn semisimple_group_ordered(
    x: &MatrixQ,
    limits: &Limits,
    arrange: impl FnOnce(Vec<NumberFieldElement>) -> Vec<NumberFieldElement>,
) -> Result<AlgebraicGroup> {
    if !x.is_square() {
        return Err(Error::domain("expected a square matrix"));
    }
    if !is_semisimple(x) {
        return Err(Error::domain(format!("matrix {x} is not semisimple")));
    }
    let n = x.rows();
    let hull = AssociativeHull::new(x)?;
    let f = minimal_polynomial(x)?;
    let (tower, roots) = splitting_field(&f, limits.degree_cap)?;
    let roots = arrange(roots);
    let mult = multiplicities(x, &tower, &roots)?;
    let lattice = lambda_basis(&roots)?;
    let eqs = LatticeEquations::new(&lattice);

    let nt = hull.t + 1;
    let t_names: Vec<String> = (0..nt).map(|i| format!("T{i}")).collect();
    let sat_ring = PolyRing::new(std::iter::once("y".to_string()).chain(t_names.iter().cloned()));
    let t_ring = PolyRing::new(t_names);
    // y_k = Σ_i T_i α_k^i
    let ys: Vec<FieldPoly> = roots
        .iter()
        .map(|r| {
            let mut coeffs = Vec::with_capacity(nt);
            let mut p = tower.one();
            for _ in 0..nt {
                coeffs.push(p.clone());
                p = tower.mul(&p, &r.coords().to_vec());
            }
            FieldPoly::linear(coeffs, &tower)
        })
        .collect();
    let product = |e: &[u32]| {
        e.iter().zip(&ys).fold(FieldPoly::constant(&tower, nt), |acc, (&k, y)| if k == 0 { acc } else { acc.mul(&y.pow(k, &tower, nt), &tower) })
    };

    let mut binomials: Vec<MultiPoly> = Vec::new();
    for (pos, neg) in &eqs.monomial_pairs {
        binomials.extend(product(pos).sub(&product(neg), &tower).expand(&t_ring, tower.degree()));
    }

    let mut images: Vec<MultiPoly> = Vec::new();
    let xring = PolyRing::matrix(n);
    let vars: Vec<MultiPoly> = (0..n * n).map(|p| xring.var(p)).collect();
    for k in 0..nt {
        images.push(apply_form(&xring, &hull.coordinate_maps[k], &vars));
    }

    let mut gens = hull.membership_constraints.clone();
    if !binomials.is_empty() {
        // Remove components on which det M(T) vanishes.
        let det = product(&mult);
        if det.terms.values().any(|c| c[1..].iter().any(|q| !q.is_zero())) {
            return Err(Error::domain("determinant of the hull parametrization is not rational"));
        }
        let det = MultiPoly::from_terms(&t_ring, det.terms.iter().map(|(m, c)| (m.clone(), c[0].clone()))).embed(&sat_ring);
        let mut sat_gens: Vec<MultiPoly> = binomials.iter().map(|b| b.embed(&sat_ring)).collect();
        sat_gens.push(sat_ring.var(0).mul(&det).sub(&MultiPoly::one(&sat_ring)));
        let saturated = eliminate(&sat_gens, &[0], &limits.groebner)?;
        for h in saturated {
            let h = h.embed(&t_ring);
            gens.push(h.compose(&images));
        }
    }
    AlgebraicGroup::new(n, &gens, Provenance::Semisimple { x: x.clone() }, &limits.groebner)
}

/// Multiplicity of each root as an eigenvalue of `x`.
fn multiplicities(x: &MatrixQ, tower: &FieldTower, roots: &[NumberFieldElement]) -> Result<Vec<u32>> {
    let cp = characteristic_polynomial(x)?;
    let factors: Vec<(UniPoly, u32)> = factor_rational(&cp);
    roots
        .iter()
        .map(|r| {
            factors
                .iter()
                .find(|(g, _)| tower.is_zero(&g.map(tower, |c| tower.from_rational(c)).eval(&r.coords().to_vec(), tower)))
                .map(|(_, m)| *m)
                .ok_or_else(|| Error::domain("eigenvalue not found among characteristic factors"))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;
    use crate::groebner::ideal_equal;

    fn ints(rows: &[&[i64]]) -> Vec<Vec<BigInt>> {
        rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect()
    }

    fn ideal_of(n: usize, gens: &[&str]) -> Vec<MultiPoly> {
        let r = PolyRing::matrix(n);
        gens.iter().map(|g| r.parse(g).unwrap()).collect()
    }

    #[test]
    fn lambda_examples() {
        let (_, roots) = splitting_field(&UniPoly::from_ints(&[1, 0, 1]), 64).unwrap();
        assert_eq!(lambda_basis(&roots).unwrap().basis, ints(&[&[1, 1]]));
        let q = FieldTower::rationals();
        let r = |v: i64| NumberFieldElement::from_rational(&q, &rat(v));
        assert_eq!(lambda_basis(&[r(1), r(2)]).unwrap().basis, ints(&[&[2, -1]]));
        assert_eq!(lambda_basis(&[r(1), r(1)]).unwrap().basis, ints(&[&[1, -1]]));
        let eqs = LatticeEquations::new(&Lattice::new(2, ints(&[&[2, -1]])));
        assert_eq!(eqs.monomial_pairs, vec![(vec![2, 0], vec![0, 1])]);
    }

    #[test]
    fn hull_of_rotation() {
        let h = AssociativeHull::new(&MatrixQ::from_ints(&[&[0, 1], &[-1, 0]])).unwrap();
        assert_eq!(h.t, 1);
        assert_eq!(h.membership_constraints.len(), 2);
        assert_eq!(h.coordinate_maps, vec![vec![rat(1), rat(0), rat(0), rat(0)], vec![rat(0), rat(1), rat(0), rat(0)]]);
    }

    #[test]
    fn semisimple_examples() {
        let l = Limits::default();
        let g = semisimple_group(&MatrixQ::from_ints(&[&[0, 1], &[-1, 0]]), &l).unwrap();
        let expect = ideal_of(2, &["x_2_1 + x_1_2", "x_1_1 - x_2_2", "x_1_1^2 + x_1_2^2 - 1"]);
        assert!(ideal_equal(g.ideal(), &expect, &l.groebner).unwrap());

        let g = semisimple_group(&MatrixQ::identity(2), &l).unwrap();
        assert!(ideal_equal(g.ideal(), &ideal_of(2, &["x_1_2", "x_2_1", "x_1_1 - x_2_2"]), &l.groebner).unwrap());

        let g = semisimple_group(&MatrixQ::from_ints(&[&[1, 0], &[0, 2]]), &l).unwrap();
        assert!(ideal_equal(g.ideal(), &ideal_of(2, &["x_1_2", "x_2_1", "x_1_1^2 - x_2_2"]), &l.groebner).unwrap());
        assert!(g.contains(&MatrixQ::diag(&[rat(3), rat(9)])));
    }

    #[test]
    fn eigenvalue_order_does_not_matter() {
        let l = Limits::default();
        for x in [
            MatrixQ::from_ints(&[&[1, 0, 0], &[0, 2, 0], &[0, 0, 4]]),
            MatrixQ::from_ints(&[&[0, 1, 0], &[-1, 0, 0], &[0, 0, 2]]),
        ] {
            let a = semisimple_group(&x, &l).unwrap();
            let b = semisimple_group_ordered(&x, &l, |mut r| {
                r.reverse();
                r
            })
            .unwrap();
            assert_eq!(a, b);
            assert!(a.tangent_space().unwrap().contains(&x));
        }
    }

    #[test]
    fn non_semisimple_rejected() {
        assert!(semisimple_group(&MatrixQ::from_ints(&[&[1, 1], &[0, 1]]), &Limits::default()).is_err());
    }
}
