use num_traits::Zero;

use super::matrix::{kernel_rows, MatrixQ};
use crate::arith::{rat, squarefree_part, Rational, Rationals, UniPoly};
use crate::error::{Error, Result};

fn require_square(x: &MatrixQ) -> Result<()> {
    if x.is_square() {
        Ok(())
    } else {
        Err(Error::domain(format!("expected a square matrix, got {}x{}", x.rows(), x.cols())))
    }
}

/// Monic annihilating polynomial of least degree.
pub fn minimal_polynomial(x: &MatrixQ) -> Result<UniPoly> {
    require_square(x)?;
    let n = x.rows();
    let mut powers = vec![MatrixQ::identity(n)];
    loop {
        let k = powers.len();
        // columns are the flattened powers I, X, ..., X^(k-1)
        let rows: Vec<Vec<Rational>> = (0..n * n).map(|e| powers.iter().map(|p| p.flat()[e].clone()).collect()).collect();
        let ker = kernel_rows(&Rationals, &rows, k);
        if let Some(c) = ker.first() {
            return Ok(UniPoly::from_rationals(c.clone()).monic(&Rationals));
        }
        let next = &powers[k - 1] * x;
        powers.push(next);
    }
}

/// `det(t*I - X)` by the Faddeev-LeVerrier recurrence.
pub fn characteristic_polynomial(x: &MatrixQ) -> Result<UniPoly> {
    require_square(x)?;
    let n = x.rows();
    let mut coeffs = vec![Rational::zero(); n + 1];
    coeffs[n] = rat(1);
    let mut m = MatrixQ::zeros(n, n);
    for k in 1..=n {
        m = &(x * &m) + &MatrixQ::identity(n).scale(&coeffs[n - k + 1]);
        let am = x * &m;
        coeffs[n - k] = -am.trace() / rat(k as i64);
    }
    Ok(UniPoly::from_rationals(coeffs))
}

pub fn is_nilpotent(x: &MatrixQ) -> bool {
    x.is_square() && x.pow(x.rows() as u32).is_zero()
}

pub fn is_semisimple(x: &MatrixQ) -> bool {
    minimal_polynomial(x).is_ok_and(|m| squarefree_part(&m).is_ok_and(|s| s == m))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MatrixClass {
    Semisimple,
    Nilpotent,
    Mixed,
}

/// Nilpotency is tested first, so the zero matrix counts as nilpotent.
pub fn classify(x: &MatrixQ) -> Result<MatrixClass> {
    require_square(x)?;
    Ok(if is_nilpotent(x) {
        MatrixClass::Nilpotent
    } else if is_semisimple(x) {
        MatrixClass::Semisimple
    } else {
        MatrixClass::Mixed
    })
}

/// Semisimple and nilpotent parts of a square matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JordanPair {
    pub semisimple: MatrixQ,
    pub nilpotent: MatrixQ,
}

/// Newton iteration `Y <- Y - f(Y) h(Y)` with `f` the square-free part of
/// the minimal polynomial and `h f' = 1 mod f`; stops once `f(Y) = 0`.
pub fn jordan_decomposition(x: &MatrixQ) -> Result<JordanPair> {
    let q = &Rationals;
    let mp = minimal_polynomial(x)?;
    let f = squarefree_part(&mp)?;
    let n = x.rows();
    if f == mp {
        return Ok(JordanPair { semisimple: x.clone(), nilpotent: MatrixQ::zeros(n, n) });
    }
    let (g, h, _) = f.derivative(q).ext_gcd(&f, q);
    debug_assert_eq!(g.degree(), Some(0));
    let mut y = x.clone();
    loop {
        let fy = y.eval_poly(&f);
        if fy.is_zero() {
            break;
        }
        y = &y - &(&fy * &y.eval_poly(&h));
    }
    let nil = x - &y;
    Ok(JordanPair { semisimple: y, nilpotent: nil })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[&[i64]]) -> MatrixQ {
        MatrixQ::from_ints(rows)
    }

    #[test]
    fn minimal_polynomials() {
        assert_eq!(minimal_polynomial(&m(&[&[0, 1], &[-1, 0]])).unwrap(), UniPoly::from_ints(&[1, 0, 1]));
        assert_eq!(minimal_polynomial(&MatrixQ::identity(3)).unwrap(), UniPoly::from_ints(&[-1, 1]));
        let d = m(&[&[1, 0], &[0, 2]]);
        let mp = minimal_polynomial(&d).unwrap();
        assert_eq!(mp, UniPoly::from_ints(&[2, -3, 1]));
        assert!(d.eval_poly(&mp).is_zero());
    }

    #[test]
    fn characteristic_polynomial_divisible_by_minimal() {
        let x = m(&[&[2, 1, 0], &[0, 2, 0], &[0, 0, 3]]);
        let cp = characteristic_polynomial(&x).unwrap();
        assert_eq!(cp, UniPoly::from_ints(&[-12, 16, -7, 1]));
        let mp = minimal_polynomial(&x).unwrap();
        assert!(cp.rem(&mp, &Rationals).is_zero());
    }

    #[test]
    fn jordan_examples() {
        let j = jordan_decomposition(&m(&[&[1, 1], &[0, 1]])).unwrap();
        assert_eq!(j.semisimple, MatrixQ::identity(2));
        assert_eq!(j.nilpotent, m(&[&[0, 1], &[0, 0]]));

        let d = m(&[&[1, 0], &[0, 2]]);
        let j = jordan_decomposition(&d).unwrap();
        assert_eq!(j.semisimple, d);
        assert!(j.nilpotent.is_zero());

        let x = m(&[&[1, 1, 0], &[0, 1, 0], &[0, 0, 2]]);
        let j = jordan_decomposition(&x).unwrap();
        assert_eq!(j.semisimple, m(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, 2]]));
        assert_eq!(j.nilpotent, MatrixQ::unit(3, 0, 1));
    }

    #[test]
    fn classification() {
        assert_eq!(classify(&MatrixQ::unit(2, 0, 1)).unwrap(), MatrixClass::Nilpotent);
        assert_eq!(classify(&m(&[&[0, 1], &[-1, 0]])).unwrap(), MatrixClass::Semisimple);
        assert_eq!(classify(&m(&[&[1, 1], &[0, 1]])).unwrap(), MatrixClass::Mixed);
        assert!(classify(&MatrixQ::zeros(2, 3)).is_err());
    }
}
