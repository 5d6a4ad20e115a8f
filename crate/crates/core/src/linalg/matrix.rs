use std::fmt;
use std::ops::{Add, Mul, Sub};

use num_traits::{One, Zero};

use crate::arith::{Field, Rational, Rationals};

/// Dense matrix, row-major.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Matrix<E = Rational> {
    rows: usize,
    cols: usize,
    data: Vec<E>,
}

pub type MatrixQ = Matrix<Rational>;

impl<E: Clone> Matrix<E> {
    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> E) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix { rows, cols, data }
    }

    /// Panics if the rows are ragged.
    pub fn from_rows(rows: Vec<Vec<E>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged matrix rows");
        Matrix { rows: r, cols: c, data: rows.into_iter().flatten().collect() }
    }

    pub fn from_flat(rows: usize, cols: usize, data: Vec<E>) -> Self {
        assert_eq!(data.len(), rows * cols);
        Matrix { rows, cols, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &E {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: E) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[E] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<E>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    /// Entries in row-major order.
    pub fn flat(&self) -> &[E] {
        &self.data
    }

    pub fn transpose(&self) -> Self {
        Matrix::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }
}

impl MatrixQ {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![Rational::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        Matrix::from_fn(n, n, |i, j| if i == j { Rational::one() } else { Rational::zero() })
    }

    /// Matrix unit with a one at `(i, j)`, zero-based.
    pub fn unit(n: usize, i: usize, j: usize) -> Self {
        let mut m = Self::zeros(n, n);
        m.set(i, j, Rational::one());
        m
    }

    pub fn from_ints(rows: &[&[i64]]) -> Self {
        Matrix::from_rows(rows.iter().map(|r| r.iter().map(|&x| crate::arith::rat(x)).collect()).collect())
    }

    pub fn diag(entries: &[Rational]) -> Self {
        let n = entries.len();
        Matrix::from_fn(n, n, |i, j| if i == j { entries[i].clone() } else { Rational::zero() })
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn scale(&self, s: &Rational) -> Self {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|x| x * s).collect() }
    }

    pub fn trace(&self) -> Rational {
        (0..self.rows.min(self.cols)).map(|i| self.get(i, i).clone()).sum()
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::identity(self.rows);
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// `[self, other] = self*other - other*self`.
    pub fn bracket(&self, other: &Self) -> Self {
        &(self * other) - &(other * self)
    }

    /// Evaluates a polynomial at this (square) matrix by Horner's rule.
    pub fn eval_poly(&self, p: &crate::arith::UniPoly) -> Self {
        let mut acc = Self::zeros(self.rows, self.cols);
        for c in p.coeffs().iter().rev() {
            acc = &(&acc * self) + &Self::identity(self.rows).scale(c);
        }
        acc
    }
}

impl<'a> Mul<&'a MatrixQ> for &'a MatrixQ {
    type Output = MatrixQ;
    fn mul(self, rhs: &MatrixQ) -> MatrixQ {
        assert_eq!(self.cols, rhs.rows, "matrix dimension mismatch");
        let mut out = MatrixQ::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = rhs.get(k, j);
                    if !b.is_zero() {
                        let idx = i * rhs.cols + j;
                        out.data[idx] += a * b;
                    }
                }
            }
        }
        out
    }
}

impl<'a> Add<&'a MatrixQ> for &'a MatrixQ {
    type Output = MatrixQ;
    fn add(self, rhs: &MatrixQ) -> MatrixQ {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().zip(&rhs.data).map(|(a, b)| a + b).collect() }
    }
}

impl<'a> Sub<&'a MatrixQ> for &'a MatrixQ {
    type Output = MatrixQ;
    fn sub(self, rhs: &MatrixQ) -> MatrixQ {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().zip(&rhs.data).map(|(a, b)| a - b).collect() }
    }
}

impl fmt::Display for MatrixQ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for i in 0..self.rows {
            if i > 0 {
                f.write_str(", ")?;
            }
            f.write_str("[")?;
            for j in 0..self.cols {
                if j > 0 {
                    f.write_str(", ")?;
                }
                write!(f, "{}", self.get(i, j))?;
            }
            f.write_str("]")?;
        }
        f.write_str("]")
    }
}

/// Brings `rows` to reduced row echelon form in place and returns the pivot
/// columns. Zero rows are dropped.
pub fn rref<F: Field>(field: &F, rows: &mut Vec<Vec<F::Elem>>) -> Vec<usize> {
    let ncols = rows.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == rows.len() {
            break;
        }
        let Some(p) = (r..rows.len()).find(|&i| !field.is_zero(&rows[i][c])) else {
            continue;
        };
        rows.swap(r, p);
        let inv = field.inv(&rows[r][c]);
        if !field.is_one(&inv) {
            for x in rows[r].iter_mut().skip(c) {
                *x = field.mul(x, &inv);
            }
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == r || field.is_zero(&row[c]) {
                continue;
            }
            let f = row[c].clone();
            for k in c..ncols {
                if !field.is_zero(&pivot_row[k]) {
                    row[k] = field.sub(&row[k], &field.mul(&f, &pivot_row[k]));
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    rows.truncate(r);
    pivots
}

pub fn rank<F: Field>(field: &F, rows: &[Vec<F::Elem>]) -> usize {
    let mut m = rows.to_vec();
    rref(field, &mut m).len()
}

/// Canonical basis of the right null space of the `ncols`-column matrix
/// with the given rows: one vector per free column, with a one in that
/// column and zeros in the other free columns.
pub fn kernel_rows<F: Field>(field: &F, rows: &[Vec<F::Elem>], ncols: usize) -> Vec<Vec<F::Elem>> {
    let mut m = rows.to_vec();
    let pivots = rref(field, &mut m);
    let mut out = Vec::new();
    let mut pi = 0;
    for free in 0..ncols {
        if pi < pivots.len() && pivots[pi] == free {
            pi += 1;
            continue;
        }
        let mut v = vec![field.zero(); ncols];
        v[free] = field.one();
        for (r, &pc) in pivots.iter().enumerate() {
            v[pc] = field.neg(&m[r][free]);
        }
        out.push(v);
    }
    out
}

/// Right null space of a rational matrix in canonical form.
pub fn kernel(m: &MatrixQ) -> Vec<Vec<Rational>> {
    kernel_rows(&Rationals, &m.to_rows(), m.cols())
}

/// Solves `m * x = b`; `None` if inconsistent. Free variables are set to zero.
pub fn solve(m: &MatrixQ, b: &[Rational]) -> Option<Vec<Rational>> {
    let rows: Vec<Vec<Rational>> = (0..m.rows())
        .map(|i| {
            let mut r = m.row(i).to_vec();
            r.push(b[i].clone());
            r
        })
        .collect();
    let mut rows = rows;
    let pivots = rref(&Rationals, &mut rows);
    if pivots.last() == Some(&m.cols()) {
        return None;
    }
    let mut x = vec![Rational::zero(); m.cols()];
    for (r, &c) in pivots.iter().enumerate() {
        x[c] = rows[r][m.cols()].clone();
    }
    Some(x)
}

pub fn inverse(m: &MatrixQ) -> Option<MatrixQ> {
    assert!(m.is_square());
    let n = m.rows();
    let mut rows: Vec<Vec<Rational>> = (0..n)
        .map(|i| {
            let mut r = m.row(i).to_vec();
            r.extend(MatrixQ::identity(n).row(i).iter().cloned());
            r
        })
        .collect();
    let pivots = rref(&Rationals, &mut rows);
    if pivots.len() < n || pivots[n - 1] != n - 1 {
        return None;
    }
    Some(Matrix::from_rows(rows.into_iter().map(|r| r[n..].to_vec()).collect()))
}

pub fn determinant(m: &MatrixQ) -> Rational {
    crate::arith::tower::determinant(&Rationals, m.to_rows())
}
