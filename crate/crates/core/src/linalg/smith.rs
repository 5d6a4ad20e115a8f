//! Smith and Hermite normal forms of integer matrices, and saturation of
//! integer lattices.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::matrix::{inverse, rank, MatrixQ};
use crate::arith::{Rational, Rationals};
use crate::error::{Error, Result};

pub type IntMatrix = Vec<Vec<BigInt>>;

/// `p * b * q = s` with `p`, `q` unimodular and `s` diagonal-rectangular.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmithForm {
    pub p: IntMatrix,
    pub q: IntMatrix,
    pub s: IntMatrix,
    /// Nonzero diagonal entries `d_1 | d_2 | ...`, all positive.
    pub divisors: Vec<BigInt>,
}

fn identity(n: usize) -> IntMatrix {
    (0..n).map(|i| (0..n).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }).collect()).collect()
}

pub fn int_mat_mul(a: &IntMatrix, b: &IntMatrix) -> IntMatrix {
    let inner = b.len();
    let cols = b.first().map_or(0, Vec::len);
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|j| (0..inner).fold(BigInt::zero(), |acc, k| acc + &row[k] * &b[k][j]))
                .collect()
        })
        .collect()
}

fn row_axpy(m: &mut IntMatrix, dst: usize, src: usize, f: &BigInt) {
    if f.is_zero() {
        return;
    }
    let s = m[src].clone();
    for (x, y) in m[dst].iter_mut().zip(&s) {
        *x += f * y;
    }
}

fn col_axpy(m: &mut IntMatrix, dst: usize, src: usize, f: &BigInt) {
    if f.is_zero() {
        return;
    }
    for row in m.iter_mut() {
        let y = row[src].clone();
        row[dst] += f * y;
    }
}

fn col_swap(m: &mut IntMatrix, a: usize, b: usize) {
    for row in m.iter_mut() {
        row.swap(a, b);
    }
}

/// Smith normal form by elementary row and column operations, pivoting on
/// the entry of least absolute value.
pub fn smith_normal_form(b: &IntMatrix) -> SmithForm {
    let m = b.len();
    let n = b.first().map_or(0, Vec::len);
    let mut s = b.clone();
    let mut p = identity(m);
    let mut q = identity(n);
    let mut t = 0;
    while t < m.min(n) {
        // least nonzero entry of the trailing block
        let mut best: Option<(usize, usize)> = None;
        for i in t..m {
            for j in t..n {
                if !s[i][j].is_zero() && best.is_none_or(|(bi, bj)| s[i][j].abs() < s[bi][bj].abs()) {
                    best = Some((i, j));
                }
            }
        }
        let Some((bi, bj)) = best else { break };
        s.swap(t, bi);
        p.swap(t, bi);
        col_swap(&mut s, t, bj);
        col_swap(&mut q, t, bj);

        let mut clean = true;
        for i in t + 1..m {
            if s[i][t].is_zero() {
                continue;
            }
            let f = -s[i][t].div_floor(&s[t][t]);
            row_axpy(&mut s, i, t, &f);
            row_axpy(&mut p, i, t, &f);
            clean &= s[i][t].is_zero();
        }
        for j in t + 1..n {
            if s[t][j].is_zero() {
                continue;
            }
            let f = -s[t][j].div_floor(&s[t][t]);
            col_axpy(&mut s, j, t, &f);
            col_axpy(&mut q, j, t, &f);
            clean &= s[t][j].is_zero();
        }
        if !clean {
            continue;
        }
        // divisibility: fold an offending row into row t and retry
        let offending = (t + 1..m).find(|&i| (t + 1..n).any(|j| !(&s[i][j] % &s[t][t]).is_zero()));
        if let Some(i) = offending {
            let one = BigInt::one();
            row_axpy(&mut s, t, i, &one);
            row_axpy(&mut p, t, i, &one);
            continue;
        }
        if s[t][t].is_negative() {
            for x in s[t].iter_mut() {
                *x = -&*x;
            }
            for x in p[t].iter_mut() {
                *x = -&*x;
            }
        }
        t += 1;
    }
    let divisors = (0..m.min(n)).map(|i| s[i][i].clone()).take_while(|d| !d.is_zero()).collect();
    SmithForm { p, q, s, divisors }
}

/// Row-style Hermite normal form: echelon rows with positive pivots and
/// entries above each pivot reduced into `[0, pivot)`. Zero rows dropped.
pub fn hermite_normal_form(rows: &IntMatrix) -> IntMatrix {
    let mut a = rows.clone();
    let m = a.len();
    let n = a.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..n {
        if r == m {
            break;
        }
        loop {
            let Some(piv) = (r..m).filter(|&i| !a[i][c].is_zero()).min_by(|&x, &y| a[x][c].abs().cmp(&a[y][c].abs())) else {
                break;
            };
            a.swap(r, piv);
            let mut done = true;
            for i in r + 1..m {
                if a[i][c].is_zero() {
                    continue;
                }
                let f = -a[i][c].div_floor(&a[r][c]);
                row_axpy(&mut a, i, r, &f);
                done &= a[i][c].is_zero();
            }
            if done {
                break;
            }
        }
        if r < m && !a[r][c].is_zero() {
            if a[r][c].is_negative() {
                for x in a[r].iter_mut() {
                    *x = -&*x;
                }
            }
            for i in 0..r {
                let f = -a[i][c].div_floor(&a[r][c]);
                row_axpy(&mut a, i, r, &f);
            }
            r += 1;
        }
    }
    a.truncate(r);
    a
}

/// A sublattice of `Z^n` given by independent integer rows.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Lattice {
    pub ambient: usize,
    pub basis: IntMatrix,
}

impl Lattice {
    pub fn new(ambient: usize, basis: IntMatrix) -> Self {
        Lattice { ambient, basis }
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    /// Canonical basis (Hermite normal form); equal lattices compare equal.
    pub fn canonical(&self) -> Lattice {
        Lattice { ambient: self.ambient, basis: hermite_normal_form(&self.basis) }
    }
}

fn to_rational(m: &IntMatrix) -> MatrixQ {
    MatrixQ::from_rows(m.iter().map(|r| r.iter().map(|x| Rational::from_integer(x.clone())).collect()).collect())
}

fn unimodular_inverse(m: &IntMatrix) -> IntMatrix {
    let inv = inverse(&to_rational(m)).expect("unimodular matrix is invertible");
    inv.to_rows()
        .into_iter()
        .map(|r| {
            r.into_iter()
                .map(|x| {
                    debug_assert!(x.is_integer());
                    x.to_integer()
                })
                .collect()
        })
        .collect()
}

/// Basis of `(Q-span of the rows) ∩ Z^n`: with `P B Q = S`, the rows of
/// `P^-1 S' Q^-1` where `S'` replaces every elementary divisor by one.
/// Returned in Hermite normal form.
pub fn saturate_lattice(lattice: &Lattice) -> Result<Lattice> {
    let b = &lattice.basis;
    let m = b.len();
    if m == 0 {
        return Ok(lattice.clone());
    }
    if rank(&Rationals, &to_rational(b).to_rows()) < m {
        return Err(Error::domain("lattice basis rows are linearly dependent"));
    }
    let snf = smith_normal_form(b);
    let q_inv = unimodular_inverse(&snf.q);
    let p_inv = unimodular_inverse(&snf.p);
    let head: IntMatrix = q_inv[..m].to_vec();
    let a = int_mat_mul(&p_inv, &head);
    Ok(Lattice { ambient: lattice.ambient, basis: hermite_normal_form(&a) })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn im(rows: &[&[i64]]) -> IntMatrix {
        rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect()
    }

    fn check_smith(b: &IntMatrix) -> SmithForm {
        let f = smith_normal_form(b);
        assert_eq!(int_mat_mul(&int_mat_mul(&f.p, b), &f.q), f.s);
        for w in f.divisors.windows(2) {
            assert!((&w[1] % &w[0]).is_zero());
        }
        assert!(f.divisors.iter().all(|d| d.is_positive()));
        f
    }

    #[test]
    fn smith_examples() {
        assert_eq!(check_smith(&im(&[&[1, 2]])).s, im(&[&[1, 0]]));
        assert_eq!(check_smith(&im(&[&[2, 0], &[0, 3]])).divisors, vec![BigInt::from(1), BigInt::from(6)]);
        assert_eq!(check_smith(&im(&[&[2, 4]])).s, im(&[&[2, 0]]));
        let f = check_smith(&im(&[&[2, 4, 4], &[-6, 6, 12], &[10, -4, -16]]));
        assert_eq!(f.divisors, vec![BigInt::from(2), BigInt::from(6), BigInt::from(12)]);
    }

    #[test]
    fn saturation_examples() {
        let sat = |rows: &[&[i64]]| saturate_lattice(&Lattice::new(rows[0].len(), im(rows))).unwrap().basis;
        assert_eq!(sat(&[&[2, 2]]), im(&[&[1, 1]]));
        assert_eq!(sat(&[&[1, 1]]), im(&[&[1, 1]]));
        assert_eq!(sat(&[&[2, 0], &[0, 2]]), im(&[&[1, 0], &[0, 1]]));
        assert!(saturate_lattice(&Lattice::new(2, im(&[&[1, 2], &[2, 4]]))).is_err());
    }

    #[test]
    fn hermite_is_canonical() {
        let a = hermite_normal_form(&im(&[&[1, 2, 3], &[0, 3, 6]]));
        let b = hermite_normal_form(&im(&[&[1, 5, 9], &[1, 2, 3]]));
        assert_eq!(a, b);
    }
}
