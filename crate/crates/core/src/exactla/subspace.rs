use thiserror::Error;

use super::field::Field;
use super::matrix::Matrix;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinAlgError {
    #[error("ambient dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),
    #[error("subspace is not contained in the ambient subspace")]
    NotContained,
}

/// A subspace of `F^ambient`, stored as the nonzero rows of an RREF matrix.
#[derive(Clone, PartialEq, Debug)]
pub struct Subspace<F: Field> {
    ambient: usize,
    basis: Matrix<F>,
    pivots: Vec<usize>,
}

impl<F: Field> Subspace<F> {
    pub fn span(field: &F, ambient: usize, vecs: impl IntoIterator<Item = Vec<F::Elem>>) -> Self {
        let rows: Vec<Vec<F::Elem>> = vecs.into_iter().collect();
        let m = Matrix::from_rows(field, ambient, &rows);
        let (r, pivots) = m.rref();
        let basis = r.select(&(0..pivots.len()).collect::<Vec<_>>(), &(0..ambient).collect::<Vec<_>>());
        Subspace { ambient, basis, pivots }
    }

    pub fn zero(field: &F, ambient: usize) -> Self {
        Subspace { ambient, basis: Matrix::zeros(field, 0, ambient), pivots: Vec::new() }
    }

    pub fn full(field: &F, ambient: usize) -> Self {
        Subspace { ambient, basis: Matrix::identity(field, ambient), pivots: (0..ambient).collect() }
    }

    /// Span of the standard basis vectors whose index satisfies `keep`.
    pub fn coordinate(field: &F, ambient: usize, keep: impl Fn(usize) -> bool) -> Self {
        let idx: Vec<usize> = (0..ambient).filter(|&i| keep(i)).collect();
        let mut basis = Matrix::zeros(field, idx.len(), ambient);
        for (r, &c) in idx.iter().enumerate() {
            basis.set(r, c, field.one());
        }
        Subspace { ambient, basis, pivots: idx }
    }

    pub fn field(&self) -> &F {
        self.basis.field()
    }
    pub fn ambient(&self) -> usize {
        self.ambient
    }
    pub fn dim(&self) -> usize {
        self.pivots.len()
    }
    pub fn is_zero(&self) -> bool {
        self.pivots.is_empty()
    }
    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }
    pub fn basis(&self) -> &Matrix<F> {
        &self.basis
    }
    pub fn basis_vecs(&self) -> Vec<Vec<F::Elem>> {
        self.basis.row_vecs()
    }

    /// `v` minus its component along the pivot columns; zero iff `v` lies in the subspace.
    pub fn reduce(&self, v: &[F::Elem]) -> Vec<F::Elem> {
        assert_eq!(v.len(), self.ambient, "vector has wrong length");
        let f = self.field();
        let mut out = v.to_vec();
        for (i, &p) in self.pivots.iter().enumerate() {
            let coef = out[p].clone();
            if f.is_zero(&coef) {
                continue;
            }
            for (o, b) in out.iter_mut().zip(self.basis.row(i)) {
                if !f.is_zero(b) {
                    *o = f.sub(o, &f.mul(&coef, b));
                }
            }
        }
        out
    }

    pub fn contains(&self, v: &[F::Elem]) -> bool {
        let f = self.field();
        self.reduce(v).iter().all(|e| f.is_zero(e))
    }

    /// Coordinates with respect to the RREF basis rows.
    pub fn coordinates(&self, v: &[F::Elem]) -> Option<Vec<F::Elem>> {
        self.contains(v).then(|| self.pivots.iter().map(|&p| v[p].clone()).collect())
    }

    /// Adds `v` to the span keeping the basis in RREF; returns whether the dimension grew.
    pub fn insert(&mut self, v: &[F::Elem]) -> bool {
        let f = self.field().clone();
        let mut r = self.reduce(v);
        let Some(p) = r.iter().position(|e| !f.is_zero(e)) else {
            return false;
        };
        let inv = f.inv(&r[p]);
        for e in r.iter_mut() {
            *e = f.mul(e, &inv);
        }
        let mut rows = self.basis.row_vecs();
        for row in rows.iter_mut() {
            let coef = row[p].clone();
            if f.is_zero(&coef) {
                continue;
            }
            for (o, b) in row.iter_mut().zip(&r) {
                if !f.is_zero(b) {
                    *o = f.sub(o, &f.mul(&coef, b));
                }
            }
        }
        let at = self.pivots.partition_point(|&q| q < p);
        rows.insert(at, r);
        self.pivots.insert(at, p);
        self.basis = Matrix::from_rows(&f, self.ambient, &rows);
        true
    }

    pub fn contains_subspace(&self, other: &Self) -> bool {
        other.ambient == self.ambient && (0..other.dim()).all(|i| self.contains(other.basis.row(i)))
    }

    fn check_ambient(&self, other: &Self) -> Result<(), LinAlgError> {
        if self.ambient != other.ambient {
            return Err(LinAlgError::DimensionMismatch(self.ambient, other.ambient));
        }
        Ok(())
    }

    pub fn sum(&self, other: &Self) -> Result<Self, LinAlgError> {
        self.check_ambient(other)?;
        Ok(Subspace::span(self.field(), self.ambient, self.basis_vecs().into_iter().chain(other.basis_vecs())))
    }

    pub fn intersect(&self, other: &Self) -> Result<Self, LinAlgError> {
        self.check_ambient(other)?;
        let f = self.field();
        if self.is_zero() || other.is_zero() {
            return Ok(Subspace::zero(f, self.ambient));
        }
        // (alpha, beta) with alpha.U + beta.W = 0 give alpha.U in the intersection.
        let (k, l) = (self.dim(), other.dim());
        let mut stacked = Matrix::zeros(f, self.ambient, k + l);
        for i in 0..k {
            for c in 0..self.ambient {
                stacked.set(c, i, self.basis.get(i, c).clone());
            }
        }
        for j in 0..l {
            for c in 0..self.ambient {
                stacked.set(c, k + j, other.basis.get(j, c).clone());
            }
        }
        let kernel = stacked.kernel_basis();
        let vecs = kernel.basis_vecs().into_iter().map(|coeffs| {
            let mut v = vec![f.zero(); self.ambient];
            for (i, a) in coeffs[..k].iter().enumerate() {
                if f.is_zero(a) {
                    continue;
                }
                for (o, b) in v.iter_mut().zip(self.basis.row(i)) {
                    *o = f.mul_add(o, a, b);
                }
            }
            v
        });
        let meet = Subspace::span(f, self.ambient, vecs);
        debug_assert_eq!(meet.dim() + self.sum(other)?.dim(), self.dim() + other.dim());
        Ok(meet)
    }

    /// Basis vectors of `big` (in RREF order) that complete a basis of `small`;
    /// they project to a basis of `big / small`.
    pub fn quotient_representatives(big: &Self, small: &Self) -> Result<Vec<Vec<F::Elem>>, LinAlgError> {
        big.check_ambient(small)?;
        if !big.contains_subspace(small) {
            return Err(LinAlgError::NotContained);
        }
        let mut acc = small.clone();
        let mut reps = Vec::new();
        for v in big.basis_vecs() {
            if acc.dim() == big.dim() {
                break;
            }
            if acc.insert(&v) {
                reps.push(v);
            }
        }
        debug_assert_eq!(reps.len() + small.dim(), big.dim());
        Ok(reps)
    }
}

/// Coordinates of vectors in `small ⊕ span(reps)` along `reps`, i.e. a
/// fixed linear section of the projection onto `(small + span reps) / small`.
#[derive(Clone, Debug)]
pub struct RelativeBasis<F: Field> {
    small: Subspace<F>,
    reps: Vec<Vec<F::Elem>>,
    echelon: Matrix<F>,
    pivots: Vec<usize>,
    transform: Matrix<F>,
}

impl<F: Field> RelativeBasis<F> {
    /// `reps` must be independent modulo `small`; panics otherwise.
    pub fn new(small: Subspace<F>, reps: Vec<Vec<F::Elem>>) -> Self {
        let f = small.field().clone();
        let n = small.ambient();
        let k = reps.len();
        let mut aug = Matrix::zeros(&f, k, n + k);
        for (i, r) in reps.iter().enumerate() {
            for (c, e) in small.reduce(r).into_iter().enumerate() {
                aug.set(i, c, e);
            }
            aug.set(i, n + i, f.one());
        }
        let pivots_all = aug.rref_in_place();
        let pivots: Vec<usize> = pivots_all.iter().copied().filter(|&p| p < n).collect();
        assert_eq!(pivots.len(), k, "representatives are dependent modulo the subspace");
        let cols_n: Vec<usize> = (0..n).collect();
        let cols_t: Vec<usize> = (n..n + k).collect();
        let rows: Vec<usize> = (0..k).collect();
        RelativeBasis { echelon: aug.select(&rows, &cols_n), transform: aug.select(&rows, &cols_t), pivots, small, reps }
    }

    pub fn dim(&self) -> usize {
        self.reps.len()
    }
    pub fn ambient(&self) -> usize {
        self.small.ambient()
    }
    pub fn reps(&self) -> &[Vec<F::Elem>] {
        &self.reps
    }
    pub fn small(&self) -> &Subspace<F> {
        &self.small
    }

    /// Coordinates along the representatives, or `None` when `v` is not in `small + span(reps)`.
    pub fn coordinates(&self, v: &[F::Elem]) -> Option<Vec<F::Elem>> {
        let f = self.small.field();
        let mut z = self.small.reduce(v);
        let e: Vec<F::Elem> = self.pivots.iter().map(|&p| z[p].clone()).collect();
        for (i, coef) in e.iter().enumerate() {
            if f.is_zero(coef) {
                continue;
            }
            for (o, b) in z.iter_mut().zip(self.echelon.row(i)) {
                if !f.is_zero(b) {
                    *o = f.sub(o, &f.mul(coef, b));
                }
            }
        }
        if !z.iter().all(|x| f.is_zero(x)) {
            return None;
        }
        let k = self.reps.len();
        let mut c = vec![f.zero(); k];
        for (i, coef) in e.iter().enumerate() {
            if f.is_zero(coef) {
                continue;
            }
            for (j, cj) in c.iter_mut().enumerate() {
                let t = self.transform.get(i, j);
                if !f.is_zero(t) {
                    *cj = f.mul_add(cj, coef, t);
                }
            }
        }
        Some(c)
    }

    /// `Σ c_i reps_i`.
    pub fn combine(&self, c: &[F::Elem]) -> Vec<F::Elem> {
        combine(self.small.field(), self.ambient(), &self.reps, c)
    }
}

/// `Σ c_i vecs_i` in `F^ambient`.
pub fn combine<F: Field>(f: &F, ambient: usize, vecs: &[Vec<F::Elem>], c: &[F::Elem]) -> Vec<F::Elem> {
    let mut out = vec![f.zero(); ambient];
    for (v, a) in vecs.iter().zip(c) {
        if f.is_zero(a) {
            continue;
        }
        for (o, b) in out.iter_mut().zip(v) {
            if !f.is_zero(b) {
                *o = f.mul_add(o, a, b);
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactla::{PrimeField, RationalField};

    #[test]
    fn quotient_example_f2() {
        let f = PrimeField::new(2).unwrap();
        let big = Subspace::full(&f, 2);
        let small = Subspace::span(&f, 2, vec![vec![1, 0]]);
        let reps = Subspace::quotient_representatives(&big, &small).unwrap();
        assert_eq!(reps.len(), 1);
        assert!(!small.contains(&reps[0]));
        assert_eq!(small.reduce(&reps[0]), vec![0, 1]);
    }

    #[test]
    fn intersect_example_q() {
        let q = RationalField;
        let a = Subspace::span(&q, 2, vec![vec![q.one(), q.one()]]);
        let b = Subspace::span(&q, 2, vec![vec![q.one(), q.zero()]]);
        assert!(a.intersect(&b).unwrap().is_zero());
        assert_eq!(a.sum(&b).unwrap().dim(), 2);
    }

    #[test]
    fn errors() {
        let f = PrimeField::new(3).unwrap();
        let a = Subspace::full(&f, 2);
        let b = Subspace::full(&f, 3);
        assert_eq!(a.sum(&b).unwrap_err(), LinAlgError::DimensionMismatch(2, 3));
        let small = Subspace::span(&f, 2, vec![vec![1, 0]]);
        let other = Subspace::span(&f, 2, vec![vec![0, 1]]);
        assert_eq!(Subspace::quotient_representatives(&small, &other).unwrap_err(), LinAlgError::NotContained);
    }

    #[test]
    fn relative_coordinates() {
        let f = PrimeField::new(5).unwrap();
        let small = Subspace::span(&f, 3, vec![vec![1, 1, 0]]);
        let rb = RelativeBasis::new(small, vec![vec![0, 2, 0], vec![0, 0, 3]]);
        // v = 4*(1,1,0) + 1*(0,2,0) + 2*(0,0,3) = (4, 6, 6) = (4,1,1)
        assert_eq!(rb.coordinates(&[4, 1, 1]).unwrap(), vec![1, 2]);
        let full = RelativeBasis::new(Subspace::zero(&f, 3), vec![vec![1, 0, 0]]);
        assert!(full.coordinates(&[0, 1, 0]).is_none());
    }
}
