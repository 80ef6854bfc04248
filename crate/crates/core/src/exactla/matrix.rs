use std::fmt;

use super::field::Field;
use super::subspace::Subspace;

/// Dense row-major matrix over an exact field.
#[derive(Clone, PartialEq)]
pub struct Matrix<F: Field> {
    field: F,
    rows: usize,
    cols: usize,
    data: Vec<F::Elem>,
}

impl<F: Field> fmt::Debug for Matrix<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            let row: Vec<String> = self.row(r).iter().map(|e| e.to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

impl<F: Field> Matrix<F> {
    pub fn zeros(field: &F, rows: usize, cols: usize) -> Self {
        Matrix { field: field.clone(), rows, cols, data: vec![field.zero(); rows * cols] }
    }

    pub fn identity(field: &F, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.data[i * n + i] = field.one();
        }
        m
    }

    pub fn from_vec(field: &F, rows: usize, cols: usize, data: Vec<F::Elem>) -> Self {
        assert_eq!(data.len(), rows * cols, "entries length must be rows * cols");
        Matrix { field: field.clone(), rows, cols, data }
    }

    /// Builds a matrix from rows; `cols` is needed when there are no rows.
    pub fn from_rows(field: &F, cols: usize, rows: &[Vec<F::Elem>]) -> Self {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            assert_eq!(r.len(), cols, "row length mismatch");
            data.extend(r.iter().cloned());
        }
        Matrix { field: field.clone(), rows: rows.len(), cols, data }
    }

    pub fn from_i64_rows(field: &F, cols: usize, rows: &[&[i64]]) -> Self {
        let rows: Vec<Vec<F::Elem>> = rows.iter().map(|r| r.iter().map(|&v| field.from_i64(v)).collect()).collect();
        Self::from_rows(field, cols, &rows)
    }

    pub fn field(&self) -> &F {
        &self.field
    }
    pub fn rows(&self) -> usize {
        self.rows
    }
    pub fn cols(&self) -> usize {
        self.cols
    }
    pub fn entries(&self) -> &[F::Elem] {
        &self.data
    }

    pub fn get(&self, r: usize, c: usize) -> &F::Elem {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: F::Elem) {
        self.data[r * self.cols + c] = v;
    }

    pub fn add_to(&mut self, r: usize, c: usize, v: &F::Elem) {
        let i = r * self.cols + c;
        self.data[i] = self.field.add(&self.data[i], v);
    }

    pub fn row(&self, r: usize) -> &[F::Elem] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vec<F::Elem> {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn row_vecs(&self) -> Vec<Vec<F::Elem>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|e| self.field.is_zero(e))
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(&self.field, self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.data[c * self.rows + r] = self.get(r, c).clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "dimension mismatch in matrix product");
        let f = &self.field;
        let mut out = Self::zeros(f, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if f.is_zero(a) {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !f.is_zero(b) {
                        let idx = i * other.cols + j;
                        out.data[idx] = f.mul_add(&out.data[idx], a, b);
                    }
                }
            }
        }
        out
    }

    /// `self · v` for a column vector `v`.
    pub fn mul_vec(&self, v: &[F::Elem]) -> Vec<F::Elem> {
        assert_eq!(v.len(), self.cols, "dimension mismatch in matrix-vector product");
        let f = &self.field;
        (0..self.rows)
            .map(|r| {
                let mut acc = f.zero();
                for (a, b) in self.row(r).iter().zip(v) {
                    if !f.is_zero(a) && !f.is_zero(b) {
                        acc = f.mul_add(&acc, a, b);
                    }
                }
                acc
            })
            .collect()
    }

    /// Restriction to the given row and column index lists.
    pub fn select(&self, rows: &[usize], cols: &[usize]) -> Self {
        let mut data = Vec::with_capacity(rows.len() * cols.len());
        for &r in rows {
            for &c in cols {
                data.push(self.get(r, c).clone());
            }
        }
        Matrix { field: self.field.clone(), rows: rows.len(), cols: cols.len(), data }
    }

    /// Reduced row echelon form and strictly increasing pivot columns.
    /// Pivoting takes the first nonzero entry at or below the current row.
    pub fn rref(&self) -> (Self, Vec<usize>) {
        let mut m = self.clone();
        let pivots = m.rref_in_place();
        (m, pivots)
    }

    pub fn rref_in_place(&mut self) -> Vec<usize> {
        let f = self.field.clone();
        let (rows, cols) = (self.rows, self.cols);
        let mut pivots = Vec::new();
        let mut lead = 0;
        for c in 0..cols {
            if lead == rows {
                break;
            }
            let Some(pr) = (lead..rows).find(|&r| !f.is_zero(self.get(r, c))) else {
                continue;
            };
            if pr != lead {
                for j in 0..cols {
                    self.data.swap(pr * cols + j, lead * cols + j);
                }
            }
            let inv = f.inv(self.get(lead, c));
            if !f.is_one(&inv) {
                for j in c..cols {
                    let i = lead * cols + j;
                    self.data[i] = f.mul(&self.data[i], &inv);
                }
            }
            for r in 0..rows {
                if r == lead {
                    continue;
                }
                let factor = self.get(r, c).clone();
                if f.is_zero(&factor) {
                    continue;
                }
                for j in c..cols {
                    let pv = &self.data[lead * cols + j];
                    if f.is_zero(pv) {
                        continue;
                    }
                    let t = f.mul(&factor, pv);
                    let i = r * cols + j;
                    self.data[i] = f.sub(&self.data[i], &t);
                }
            }
            pivots.push(c);
            lead += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of `{v : self · v = 0}` inside `F^cols`.
    pub fn kernel_basis(&self) -> Subspace<F> {
        let f = &self.field;
        let (r, pivots) = self.rref();
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        let mut vecs = Vec::new();
        for free in (0..self.cols).filter(|&c| !is_pivot[c]) {
            let mut v = vec![f.zero(); self.cols];
            v[free] = f.one();
            for (i, &p) in pivots.iter().enumerate() {
                v[p] = f.neg(r.get(i, free));
            }
            vecs.push(v);
        }
        let k = Subspace::span(f, self.cols, vecs);
        debug_assert_eq!(k.dim() + pivots.len(), self.cols, "rank-nullity");
        k
    }

    /// Column space, as a subspace of `F^rows`.
    pub fn image_basis(&self) -> Subspace<F> {
        Subspace::span(&self.field, self.rows, self.transpose().row_vecs())
    }

    /// Some `x` with `self · x = b`, if one exists.
    pub fn solve(&self, b: &[F::Elem]) -> Option<Vec<F::Elem>> {
        assert_eq!(b.len(), self.rows, "right-hand side has wrong length");
        let f = &self.field;
        let mut aug = Self::zeros(f, self.rows, self.cols + 1);
        for (r, rhs) in b.iter().enumerate() {
            for c in 0..self.cols {
                aug.set(r, c, self.get(r, c).clone());
            }
            aug.set(r, self.cols, rhs.clone());
        }
        let pivots = aug.rref_in_place();
        if pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut x = vec![f.zero(); self.cols];
        for (i, &p) in pivots.iter().enumerate() {
            x[p] = aug.get(i, self.cols).clone();
        }
        Some(x)
    }

    /// Inverse of a square invertible matrix.
    pub fn inverse(&self) -> Option<Self> {
        assert_eq!(self.rows, self.cols, "inverse of a non-square matrix");
        let n = self.rows;
        let f = &self.field;
        let mut aug = Self::zeros(f, n, 2 * n);
        for r in 0..n {
            for c in 0..n {
                aug.set(r, c, self.get(r, c).clone());
            }
            aug.set(r, n + r, f.one());
        }
        let pivots = aug.rref_in_place();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return None;
        }
        let mut inv = Self::zeros(f, n, n);
        for r in 0..n {
            for c in 0..n {
                inv.set(r, c, aug.get(r, n + c).clone());
            }
        }
        Some(inv)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactla::{PrimeField, Rational, RationalField};

    #[test]
    fn rref_identity_and_zero() {
        let f = PrimeField::new(5).unwrap();
        let (r, p) = Matrix::identity(&f, 2).rref();
        assert_eq!(r, Matrix::identity(&f, 2));
        assert_eq!(p, vec![0, 1]);
        let z = Matrix::zeros(&f, 3, 4);
        let (r, p) = z.rref();
        assert_eq!(r, z);
        assert!(p.is_empty());
    }

    #[test]
    fn rref_hand_example_f7() {
        // [[2,4],[1,2]]: first row scaled by 2^{-1} = 4 gives [1,2]; second row cleared.
        let f = PrimeField::new(7).unwrap();
        let m = Matrix::from_i64_rows(&f, 2, &[&[2, 4], &[1, 2]]);
        let (r, p) = m.rref();
        assert_eq!(r, Matrix::from_i64_rows(&f, 2, &[&[1, 2], &[0, 0]]));
        assert_eq!(p, vec![0]);
    }

    #[test]
    fn kernel_examples() {
        let f = PrimeField::new(3).unwrap();
        assert_eq!(Matrix::identity(&f, 3).kernel_basis().dim(), 0);
        assert_eq!(Matrix::zeros(&f, 2, 2).kernel_basis().dim(), 2);
        let q = RationalField;
        let k = Matrix::from_i64_rows(&q, 2, &[&[1, 1]]).kernel_basis();
        assert_eq!(k.dim(), 1);
        let expected = Subspace::span(&q, 2, vec![vec![Rational::from_i64(1), Rational::from_i64(-1)]]);
        assert_eq!(k, expected);
    }

    #[test]
    fn solve_and_inverse() {
        let q = RationalField;
        let id = Matrix::identity(&q, 3);
        let b: Vec<Rational> = [1, -2, 5].iter().map(|&v| Rational::from_i64(v)).collect();
        assert_eq!(id.solve(&b).unwrap(), b);
        let singular = Matrix::from_i64_rows(&q, 2, &[&[1, 1], &[1, 1]]);
        assert!(singular.solve(&[Rational::from_i64(1), Rational::from_i64(0)]).is_none());
        assert!(singular.inverse().is_none());
        let m = Matrix::from_i64_rows(&q, 2, &[&[2, 1], &[1, 1]]);
        assert_eq!(m.mul(&m.inverse().unwrap()), Matrix::identity(&q, 2));
    }
}
