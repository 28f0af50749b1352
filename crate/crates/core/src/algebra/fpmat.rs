//! Dense matrices over F_p with exact Gaussian elimination.

use super::fp::raw;
use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct FpMatrix {
    p: u64,
    rows: usize,
    cols: usize,
    data: Vec<u64>, // row-major, entries reduced mod p
}

impl FpMatrix {
    pub fn zeros(p: u64, rows: usize, cols: usize) -> Self {
        FpMatrix { p, rows, cols, data: vec![0; rows * cols] }
    }

    pub fn identity(p: u64, n: usize) -> Self {
        let mut m = Self::zeros(p, n, n);
        for i in 0..n {
            m.data[i * n + i] = 1;
        }
        m
    }

    pub fn from_rows(p: u64, rows: Vec<Vec<u64>>) -> Result<Self> {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != ncols) {
            return Err(Error::Mismatch("ragged rows".into()));
        }
        let data = rows.into_iter().flatten().map(|c| c % p).collect();
        Ok(FpMatrix { p, rows: nrows, cols: ncols, data })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> u64 {
        self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: u64) {
        self.data[i * self.cols + j] = v % self.p;
    }

    /// Adds `v` into entry `(i, j)`.
    pub fn add_at(&mut self, i: usize, j: usize, v: u64) {
        let cur = self.get(i, j);
        self.data[i * self.cols + j] = raw::add(cur, v % self.p, self.p);
    }

    fn expect_same_shape(&self, rhs: &Self) {
        assert_eq!(self.p, rhs.p, "mixed moduli");
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols), "shape mismatch");
    }

    pub fn add(&self, rhs: &Self) -> Self {
        self.expect_same_shape(rhs);
        let data = self
            .data
            .iter()
            .zip(&rhs.data)
            .map(|(&a, &b)| raw::add(a, b, self.p))
            .collect();
        FpMatrix { p: self.p, rows: self.rows, cols: self.cols, data }
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.expect_same_shape(rhs);
        let data = self
            .data
            .iter()
            .zip(&rhs.data)
            .map(|(&a, &b)| raw::sub(a, b, self.p))
            .collect();
        FpMatrix { p: self.p, rows: self.rows, cols: self.cols, data }
    }

    pub fn scale(&self, c: u64) -> Self {
        let c = c % self.p;
        let data = self.data.iter().map(|&a| raw::mul(a, c, self.p)).collect();
        FpMatrix { p: self.p, rows: self.rows, cols: self.cols, data }
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        assert_eq!(self.p, rhs.p, "mixed moduli");
        assert_eq!(self.cols, rhs.rows, "inner dimension mismatch");
        let mut out = Self::zeros(self.p, self.rows, rhs.cols);
        for i in 0..self.rows {
            for j in 0..rhs.cols {
                let mut acc = 0u128;
                for k in 0..self.cols {
                    acc += self.get(i, k) as u128 * rhs.get(k, j) as u128;
                }
                out.data[i * rhs.cols + j] = (acc % self.p as u128) as u64;
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[u64]) -> Vec<u64> {
        assert_eq!(v.len(), self.cols, "vector length mismatch");
        (0..self.rows)
            .map(|i| {
                let mut acc = 0u128;
                for j in 0..self.cols {
                    acc += self.get(i, j) as u128 * v[j] as u128;
                }
                (acc % self.p as u128) as u64
            })
            .collect()
    }

    pub fn pow(&self, mut exp: u64) -> Self {
        assert_eq!(self.rows, self.cols, "power of a non-square matrix");
        let mut acc = Self::identity(self.p, self.rows);
        let mut base = self.clone();
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc.mul(&base);
            }
            exp >>= 1;
            if exp > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Reduced row echelon form; returns the pivot columns.
    pub fn rref_in_place(&mut self) -> Vec<usize> {
        let p = self.p;
        let (rows, cols) = (self.rows, self.cols);
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..cols {
            if row == rows {
                break;
            }
            let Some(pivot_row) = (row..rows).find(|&i| self.get(i, col) != 0) else {
                continue;
            };
            if pivot_row != row {
                for j in 0..cols {
                    self.data.swap(row * cols + j, pivot_row * cols + j);
                }
            }
            let inv = raw::inv(self.get(row, col), p);
            for j in col..cols {
                let v = raw::mul(self.get(row, j), inv, p);
                self.data[row * cols + j] = v;
            }
            for i in 0..rows {
                if i == row {
                    continue;
                }
                let f = self.get(i, col);
                if f == 0 {
                    continue;
                }
                for j in col..cols {
                    let v = raw::sub(self.get(i, j), raw::mul(f, self.get(row, j), p), p);
                    self.data[i * cols + j] = v;
                }
            }
            pivots.push(col);
            row += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        let mut m = self.clone();
        m.rref_in_place().len()
    }

    /// Dimension of the right kernel.
    pub fn nullity(&self) -> usize {
        self.cols - self.rank()
    }

    pub fn is_invertible(&self) -> bool {
        self.rows == self.cols && self.rank() == self.rows
    }

    /// Basis of the right kernel, one vector per free column.
    pub fn kernel_basis(&self) -> Vec<Vec<u64>> {
        let mut m = self.clone();
        let pivots = m.rref_in_place();
        let pivot_set: Vec<Option<usize>> = {
            let mut v = vec![None; self.cols];
            for (r, &c) in pivots.iter().enumerate() {
                v[c] = Some(r);
            }
            v
        };
        let mut basis = Vec::new();
        for free in 0..self.cols {
            if pivot_set[free].is_some() {
                continue;
            }
            let mut vec = vec![0u64; self.cols];
            vec[free] = 1;
            for (col, &rowopt) in pivot_set.iter().enumerate() {
                if let Some(row) = rowopt {
                    vec[col] = raw::neg(m.get(row, free), self.p);
                }
            }
            basis.push(vec);
        }
        basis
    }

    /// Solves `self * x = b`, returning any solution.
    pub fn solve(&self, b: &[u64]) -> Option<Vec<u64>> {
        assert_eq!(b.len(), self.rows, "rhs length mismatch");
        let mut aug = Self::zeros(self.p, self.rows, self.cols + 1);
        for i in 0..self.rows {
            for j in 0..self.cols {
                aug.data[i * (self.cols + 1) + j] = self.get(i, j);
            }
            aug.data[i * (self.cols + 1) + self.cols] = b[i] % self.p;
        }
        let pivots = aug.rref_in_place();
        if pivots.contains(&self.cols) {
            return None; // inconsistent system
        }
        let mut x = vec![0u64; self.cols];
        for (row, &col) in pivots.iter().enumerate() {
            x[col] = aug.get(row, self.cols);
        }
        Some(x)
    }

    /// Determinant by elimination.
    pub fn det(&self) -> u64 {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
        let p = self.p;
        let n = self.rows;
        let mut m = self.clone();
        let mut det = 1u64;
        for col in 0..n {
            let Some(pivot_row) = (col..n).find(|&i| m.get(i, col) != 0) else {
                return 0;
            };
            if pivot_row != col {
                for j in 0..n {
                    m.data.swap(col * n + j, pivot_row * n + j);
                }
                det = raw::neg(det, p);
            }
            let pivot = m.get(col, col);
            det = raw::mul(det, pivot, p);
            let inv = raw::inv(pivot, p);
            for i in col + 1..n {
                let f = raw::mul(m.get(i, col), inv, p);
                if f == 0 {
                    continue;
                }
                for j in col..n {
                    let v = raw::sub(m.get(i, j), raw::mul(f, m.get(col, j), p), p);
                    m.data[i * n + j] = v;
                }
            }
        }
        det
    }
}
