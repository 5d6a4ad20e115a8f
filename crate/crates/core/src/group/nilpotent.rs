use num_traits::{One, Zero};

use super::algebraic::{AlgebraicGroup, Limits, Provenance};
use crate::arith::{rat, Rational};
use crate::error::{Error, Result};
use crate::groebner::{eliminate, MultiPoly, PolyRing};
use crate::lie::{structure_constants, MatrixSpace};
use crate::linalg::{is_nilpotent, kernel, MatrixQ};

/// Square matrix with polynomial entries.
pub type PolyMatrix = Vec<Vec<MultiPoly>>;

pub(crate) fn poly_identity(ring: &PolyRing, n: usize) -> PolyMatrix {
    (0..n).map(|i| (0..n).map(|j| if i == j { MultiPoly::one(ring) } else { MultiPoly::zero(ring) }).collect()).collect()
}

pub(crate) fn poly_mat_mul(a: &PolyMatrix, b: &PolyMatrix) -> PolyMatrix {
    let n = a.len();
    let ring = a[0][0].ring().clone();
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| (0..n).fold(MultiPoly::zero(&ring), |acc, k| if a[i][k].is_zero() || b[k][j].is_zero() { acc } else { acc.add(&a[i][k].mul(&b[k][j])) }))
                .collect()
        })
        .collect()
}

fn poly_mat_add(a: &PolyMatrix, b: &PolyMatrix) -> PolyMatrix {
    a.iter().zip(b).map(|(r, s)| r.iter().zip(s).map(|(x, y)| x.add(y)).collect()).collect()
}

fn poly_mat_scale(a: &PolyMatrix, c: &Rational) -> PolyMatrix {
    a.iter().map(|r| r.iter().map(|x| x.scale(c)).collect()).collect()
}

/// `Σ coeffs[k] * mats[k]` with polynomial coefficients.
pub(crate) fn linear_combination(ring: &PolyRing, coeffs: &[MultiPoly], mats: &[MatrixQ], n: usize) -> PolyMatrix {
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    coeffs.iter().zip(mats).fold(MultiPoly::zero(ring), |acc, (c, m)| {
                        let e = m.get(i, j);
                        if e.is_zero() {
                            acc
                        } else {
                            acc.add(&c.scale(e))
                        }
                    })
                })
                .collect()
        })
        .collect()
}

fn is_zero_matrix(a: &PolyMatrix) -> bool {
    a.iter().flatten().all(MultiPoly::is_zero)
}

/// Checks that `basis` spans a Lie algebra of nilpotent matrices: closed
/// under the bracket, and every product of `n` elements vanishes.
fn check_nilpotent_algebra(n: usize, basis: &[MatrixQ]) -> Result<()> {
    if let Some(m) = basis.iter().find(|m| !is_nilpotent(m)) {
        return Err(Error::domain(format!("matrix {m} is not nilpotent")));
    }
    if basis.is_empty() {
        return Ok(());
    }
    if basis.iter().any(|m| m.rows() != n || m.cols() != n) {
        return Err(Error::domain("matrices of different sizes"));
    }
    structure_constants(basis)?;
    let mut words = MatrixSpace::span(n, basis);
    for _ in 1..n {
        let next: Vec<MatrixQ> = words.basis().iter().flat_map(|w| basis.iter().map(move |b| w * b)).collect();
        words = MatrixSpace::span(n, &next);
    }
    if !words.is_zero() {
        return Err(Error::domain("the span contains matrices that are not nilpotent"));
    }
    Ok(())
}

fn parameter_ring(r: usize, extra: &[String]) -> PolyRing {
    PolyRing::new((0..r).map(|i| format!("T{i}")).chain(extra.iter().cloned()))
}

fn exp_series(s: &PolyMatrix, ring: &PolyRing, n: usize) -> PolyMatrix {
    let mut result = poly_identity(ring, n);
    let mut power = poly_identity(ring, n);
    let mut factorial = Rational::one();
    for k in 1..=n {
        power = poly_mat_mul(&power, s);
        if is_zero_matrix(&power) {
            break;
        }
        factorial *= rat(k as i64);
        result = poly_mat_add(&result, &poly_mat_scale(&power, &factorial.recip()));
    }
    result
}

/// `exp(T0 N_1 + ... )` as a matrix of polynomials in `T0, T1, ...`.
pub fn exp_nilpotent_symbolic(basis: &[MatrixQ]) -> Result<(PolyRing, PolyMatrix)> {
    let n = basis.first().map(MatrixQ::rows).ok_or_else(|| Error::domain("empty basis: matrix size unknown"))?;
    check_nilpotent_algebra(n, basis)?;
    let ring = parameter_ring(basis.len(), &[]);
    let t: Vec<MultiPoly> = (0..basis.len()).map(|i| ring.var(i)).collect();
    let s = linear_combination(&ring, &t, basis, n);
    let m = exp_series(&s, &ring, n);
    Ok((ring, m))
}

/// Exponential of a single nilpotent rational matrix.
pub fn exp_nilpotent(m: &MatrixQ) -> MatrixQ {
    let n = m.rows();
    let mut result = MatrixQ::identity(n);
    let mut power = MatrixQ::identity(n);
    let mut factorial = Rational::one();
    for k in 1..=n {
        power = &power * m;
        if power.is_zero() {
            break;
        }
        factorial *= rat(k as i64);
        result = &result + &power.scale(&factorial.recip());
    }
    result
}

/// The connected unipotent group with Lie algebra spanned by `basis`.
pub fn nilpotent_group(n: usize, basis: &[MatrixQ], limits: &Limits) -> Result<AlgebraicGroup> {
    check_nilpotent_algebra(n, basis)?;
    if basis.is_empty() {
        return Ok(AlgebraicGroup::trivial(n));
    }
    let xring = PolyRing::matrix(n);
    let r = basis.len();
    let ring = parameter_ring(r, xring.names());
    let t: Vec<MultiPoly> = (0..r).map(|i| ring.var(i)).collect();
    let m = exp_series(&linear_combination(&ring, &t, basis, n), &ring, n);
    let gens: Vec<MultiPoly> = (0..n * n).map(|p| ring.var(r + p).sub(&m[p / n][p % n])).collect();
    let drop: Vec<usize> = (0..r).collect();
    let ideal = eliminate(&gens, &drop, &limits.groebner)?;
    AlgebraicGroup::from_basis(n, ideal.iter().map(|g| g.embed(&xring)).collect(), Provenance::Nilpotent { basis: basis.to_vec() })
}

/// Linear forms on `n×n` matrices vanishing exactly on the span of `mats`.
pub(crate) fn annihilator_forms(n: usize, mats: &[MatrixQ]) -> Vec<Vec<Rational>> {
    if mats.is_empty() {
        return (0..n * n).map(|p| (0..n * n).map(|q| rat((p == q) as i64)).collect()).collect();
    }
    kernel(&MatrixQ::from_rows(mats.iter().map(|m| m.flat().to_vec()).collect()))
}

pub(crate) fn apply_form(ring: &PolyRing, form: &[Rational], entries: &[MultiPoly]) -> MultiPoly {
    form.iter().zip(entries).fold(MultiPoly::zero(ring), |acc, (c, e)| if c.is_zero() { acc } else { acc.add(&e.scale(c)) })
}

/// Entries of `(X - I)^n` and `p(log*(X))` for each linear form `p`
/// vanishing on the span of `basis`, where
/// `log*(X) = -Σ_{i<n} (I - X)^i / i`.
pub fn log_star_equations(n: usize, basis: &[MatrixQ]) -> Result<Vec<MultiPoly>> {
    check_nilpotent_algebra(n, basis)?;
    let ring = PolyRing::matrix(n);
    let x: PolyMatrix = (0..n).map(|i| (0..n).map(|j| ring.var(i * n + j)).collect()).collect();
    let id = poly_identity(&ring, n);
    let x_minus_i: PolyMatrix = x.iter().zip(&id).map(|(r, s)| r.iter().zip(s).map(|(a, b)| a.sub(b)).collect()).collect();
    let i_minus_x: PolyMatrix = x_minus_i.iter().map(|r| r.iter().map(MultiPoly::neg).collect()).collect();

    let mut out = Vec::new();
    let mut power = poly_identity(&ring, n);
    for _ in 0..n {
        power = poly_mat_mul(&power, &x_minus_i);
    }
    out.extend(power.into_iter().flatten().filter(|p| !p.is_zero()));

    let mut log = poly_mat_scale(&id, &Rational::zero());
    let mut power = poly_identity(&ring, n);
    for i in 1..n {
        power = poly_mat_mul(&power, &i_minus_x);
        log = poly_mat_add(&log, &poly_mat_scale(&power, &-rat(i as i64).recip()));
    }
    let entries: Vec<MultiPoly> = log.into_iter().flatten().collect();
    for form in annihilator_forms(n, basis) {
        let p = apply_form(&ring, &form, &entries);
        if !p.is_zero() {
            out.push(p);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::frac;
    use crate::groebner::{ideal_equal, reduced_groebner, normal_form, MonomialOrder};

    fn e(n: usize, i: usize, j: usize) -> MatrixQ {
        MatrixQ::unit(n, i, j)
    }

    fn heisenberg() -> Vec<MatrixQ> {
        vec![e(3, 0, 1), e(3, 0, 2), e(3, 1, 2)]
    }

    fn ideal_of(n: usize, gens: &[&str]) -> Vec<MultiPoly> {
        let r = PolyRing::matrix(n);
        gens.iter().map(|g| r.parse(g).unwrap()).collect()
    }

    #[test]
    fn symbolic_exponentials() {
        let (_, m) = exp_nilpotent_symbolic(&[e(2, 0, 1)]).unwrap();
        assert_eq!(m[0][1].to_string(), "T0");
        assert_eq!(m[0][0].to_string(), "1");
        let (_, m) = exp_nilpotent_symbolic(&heisenberg()).unwrap();
        assert_eq!(m[0][2].to_string(), "1/2*T0*T2 + T1");
        let (_, m) = exp_nilpotent_symbolic(&[&e(3, 0, 1) + &e(3, 1, 2)]).unwrap();
        assert_eq!(m[0][2].to_string(), "1/2*T0^2");
        assert!(exp_nilpotent_symbolic(&[MatrixQ::identity(2)]).is_err());
        assert!(exp_nilpotent_symbolic(&[e(2, 0, 1), e(2, 1, 0)]).is_err());
    }

    #[test]
    fn nilpotent_group_examples() {
        let l = Limits::default();
        let g = nilpotent_group(2, &[e(2, 0, 1)], &l).unwrap();
        assert!(ideal_equal(g.ideal(), &ideal_of(2, &["x_1_1 - 1", "x_2_2 - 1", "x_2_1"]), &l.groebner).unwrap());
        let g = nilpotent_group(3, &heisenberg(), &l).unwrap();
        let expect = ideal_of(3, &["x_1_1 - 1", "x_2_2 - 1", "x_3_3 - 1", "x_2_1", "x_3_1", "x_3_2"]);
        assert!(ideal_equal(g.ideal(), &expect, &l.groebner).unwrap());
        let g = nilpotent_group(3, &[&e(3, 0, 1) + &e(3, 1, 2)], &l).unwrap();
        let gb = reduced_groebner(g.ideal(), &MonomialOrder::GrevLex).unwrap();
        for s in ["x_1_2 - x_2_3", "2*x_1_3 - x_1_2^2", "x_2_1", "x_1_1 - 1"] {
            assert!(gb.contains(&PolyRing::matrix(3).parse(s).unwrap()), "{s}");
        }
        for c in [rat(3), frac(-2, 5)] {
            let point = exp_nilpotent(&(&e(3, 0, 1) + &e(3, 1, 2)).scale(&c));
            assert!(g.contains(&point));
        }
        assert_eq!(g.tangent_space().unwrap(), MatrixSpace::span(3, &[&e(3, 0, 1) + &e(3, 1, 2)]));
    }

    #[test]
    fn log_star_examples() {
        let eqs = log_star_equations(2, &[e(2, 0, 1)]).unwrap();
        let l = Limits::default();
        let expect = ideal_of(2, &["x_1_1 - 1", "x_2_2 - 1", "x_2_1"]);
        assert!(ideal_equal(&eqs, &expect, &l.groebner).unwrap());
        let eqs = log_star_equations(3, &[e(3, 0, 2)]).unwrap();
        let gb = reduced_groebner(&eqs, &MonomialOrder::GrevLex).unwrap();
        let r = PolyRing::matrix(3);
        assert!(normal_form(&r.parse("x_1_2").unwrap(), &gb).is_zero());
        assert!(normal_form(&r.parse("x_2_3").unwrap(), &gb).is_zero());
        let eqs = log_star_equations(2, &[]).unwrap();
        assert!(ideal_equal(&eqs, AlgebraicGroup::trivial(2).ideal(), &l.groebner).unwrap());
    }
}
