//! Dense square and rectangular matrices over a [`Scalar`].

use std::fmt;

use crate::error::AlgebraError;
use crate::field::Scalar;

#[derive(Clone, Debug, PartialEq)]
pub struct Matrix<K: Scalar> {
    rows: usize,
    cols: usize,
    data: Vec<K>,
}

impl<K: Scalar> Matrix<K> {
    pub fn from_rows(rows: Vec<Vec<K>>) -> Result<Self, AlgebraError> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if r == 0 || c == 0 {
            return Err(AlgebraError::Empty("matrix"));
        }
        if rows.iter().any(|row| row.len() != c) {
            return Err(AlgebraError::Dimension("ragged rows".into()));
        }
        Ok(Matrix { rows: r, cols: c, data: rows.into_iter().flatten().collect() })
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> K) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix { rows, cols, data }
    }

    pub fn zeros(rows: usize, cols: usize, witness: &K) -> Self {
        Matrix { rows, cols, data: vec![witness.zero_like(); rows * cols] }
    }

    pub fn identity(n: usize, witness: &K) -> Self {
        Self::scalar(n, witness.one_like())
    }

    pub fn scalar(n: usize, c: K) -> Self {
        let z = c.zero_like();
        Matrix::from_fn(n, n, |i, j| if i == j { c.clone() } else { z.clone() })
    }

    pub fn diagonal(entries: Vec<K>) -> Self {
        let n = entries.len();
        let z = entries[0].zero_like();
        Matrix::from_fn(n, n, |i, j| if i == j { entries[i].clone() } else { z.clone() })
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

    pub fn get(&self, i: usize, j: usize) -> &K {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: K) {
        self.data[i * self.cols + j] = v;
    }

    pub fn entries(&self) -> &[K] {
        &self.data
    }

    pub fn row_vecs(&self) -> Vec<Vec<K>> {
        self.data.chunks(self.cols).map(<[K]>::to_vec).collect()
    }

    pub fn witness(&self) -> &K {
        &self.data[0]
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Scalar::is_zero)
    }

    pub fn map<L: Scalar>(&self, f: impl Fn(&K) -> L) -> Matrix<L> {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(f).collect() }
    }

    fn same_shape(&self, o: &Self) -> bool {
        self.rows == o.rows && self.cols == o.cols
    }

    pub fn add(&self, o: &Self) -> Self {
        assert!(self.same_shape(o), "matrix shape mismatch");
        let data = self.data.iter().zip(&o.data).map(|(a, b)| a.clone() + b.clone()).collect();
        Matrix { data, ..*self }
    }

    pub fn sub(&self, o: &Self) -> Self {
        assert!(self.same_shape(o), "matrix shape mismatch");
        let data = self.data.iter().zip(&o.data).map(|(a, b)| a.clone() - b.clone()).collect();
        Matrix { data, ..*self }
    }

    pub fn neg(&self) -> Self {
        Matrix { data: self.data.iter().map(|a| -a.clone()).collect(), ..*self }
    }

    pub fn scale(&self, c: &K) -> Self {
        Matrix { data: self.data.iter().map(|a| c.clone() * a.clone()).collect(), ..*self }
    }

    pub fn mul(&self, o: &Self) -> Self {
        assert_eq!(self.cols, o.rows, "matrix shape mismatch");
        let zero = self.witness().zero_like();
        let mut data = vec![zero; self.rows * o.cols];
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self.data[i * self.cols + k];
                if a.is_zero() {
                    continue;
                }
                for j in 0..o.cols {
                    let idx = i * o.cols + j;
                    data[idx] = data[idx].clone() + a.clone() * o.data[k * o.cols + j].clone();
                }
            }
        }
        Matrix { rows: self.rows, cols: o.cols, data }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Matrix::identity(self.rows, self.witness());
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn transpose(&self) -> Self {
        Matrix::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    /// Row-reduced echelon form and the pivot columns.
    pub fn rref(&self) -> (Self, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..m.cols {
            if row == m.rows {
                break;
            }
            let Some(p) = (row..m.rows).find(|&r| !m.get(r, col).is_zero()) else {
                continue;
            };
            if p != row {
                for j in 0..m.cols {
                    m.data.swap(p * m.cols + j, row * m.cols + j);
                }
            }
            let inv = m.get(row, col).inv().expect("field scalar");
            for j in 0..m.cols {
                let v = m.get(row, j).clone() * inv.clone();
                m.set(row, j, v);
            }
            for r in 0..m.rows {
                if r == row || m.get(r, col).is_zero() {
                    continue;
                }
                let f = m.get(r, col).clone();
                for j in 0..m.cols {
                    let v = m.get(r, j).clone() - f.clone() * m.get(row, j).clone();
                    m.set(r, j, v);
                }
            }
            pivots.push(col);
            row += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Inverse by Gauss-Jordan elimination.
    pub fn inverse(&self) -> Result<Self, AlgebraError> {
        if !self.is_square() {
            return Err(AlgebraError::Dimension("inverse of a non-square matrix".into()));
        }
        let n = self.rows;
        let id = Matrix::identity(n, self.witness());
        let aug = Matrix::from_fn(n, 2 * n, |i, j| {
            if j < n {
                self.get(i, j).clone()
            } else {
                id.get(i, j - n).clone()
            }
        });
        let (r, pivots) = aug.rref();
        if pivots.len() < n || pivots[n - 1] >= n {
            return Err(AlgebraError::NotInvertible);
        }
        Ok(Matrix::from_fn(n, n, |i, j| r.get(i, j + n).clone()))
    }

    /// Whether `self` equals `c * I` for some scalar `c`, returning `c`.
    pub fn as_scalar(&self) -> Option<K> {
        if !self.is_square() {
            return None;
        }
        let c = self.get(0, 0).clone();
        for i in 0..self.rows {
            for j in 0..self.cols {
                let v = self.get(i, j);
                if (i == j && *v != c) || (i != j && !v.is_zero()) {
                    return None;
                }
            }
        }
        Some(c)
    }
}

impl<K: Scalar> fmt::Display for Matrix<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for row in self.data.chunks(self.cols) {
            let cells: Vec<String> = row.iter().map(ToString::to_string).collect();
            writeln!(f, "[{}]", cells.join(", "))?;
        }
        Ok(())
    }
}
