use std::collections::BTreeMap;

use crate::exactla::{Field, Matrix, Subspace};
use crate::hochschild::CohomologyAlgebra;

use super::SpecSeqError;

/// The coefficient filtration `F_p = C*(A; J(-p))` of the Hochschild
/// complex, carried by its filtered reduction. Cells keep the filtration of
/// the cochain they came from, so `F_p` is spanned by the cells of
/// filtration at most `p`.
#[derive(Clone, Debug)]
pub struct FilteredComplex<F: Field> {
    field: F,
    window: i64,
    depth: i64,
    filt: BTreeMap<i64, Vec<i32>>,
    d: BTreeMap<i64, Matrix<F>>,
}

impl<F: Field> FilteredComplex<F> {
    /// Requires the reduction behind `hh` to be filtered, and a bounded
    /// algebra: `F_p = 0` below `-top`, where `top` is the top degree of A.
    pub fn new(hh: &CohomologyAlgebra<F>) -> Result<Self, SpecSeqError> {
        let a = hh.complex.algebra();
        let f = a.field().clone();
        if let Some((n, j)) = hh.complex.sparse().find_filtration_violation() {
            return Err(SpecSeqError::NotFiltered(format!("δ raises the filtration of {}", hh.complex.label(n, j))));
        }
        let depth = a.top_degree();
        let r = hh.reduction.reduced();
        let (lo, hi) = (hh.complex.lo(), hh.complex.hi());
        let mut filt = BTreeMap::new();
        let mut d = BTreeMap::new();
        for n in lo..=hi {
            let fl = hh.reduction.filtration(n).to_vec();
            if let Some(&p) = fl.iter().find(|&&p| (p as i64) < -depth || p > 0) {
                return Err(SpecSeqError::NotFiltered(format!("cell of filtration {p} in degree {n}")));
            }
            filt.insert(n, fl);
        }
        for n in lo..hi {
            let m = r.d(n);
            for c in 0..m.cols() {
                for row in 0..m.rows() {
                    if !f.is_zero(m.get(row, c)) && filt[&(n + 1)][row] > filt[&n][c] {
                        return Err(SpecSeqError::NotFiltered(format!("reduced differential raises filtration in degree {n}")));
                    }
                }
            }
            d.insert(n, m);
        }
        Ok(FilteredComplex { field: f, window: hh.complex.window(), depth, filt, d })
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn window(&self) -> i64 {
        self.window
    }

    /// Number of filtration steps below zero; `F_p = 0` for `p < -depth`.
    pub fn depth(&self) -> i64 {
        self.depth
    }

    pub fn dim(&self, n: i64) -> usize {
        self.filt.get(&n).map_or(0, Vec::len)
    }

    pub fn filtration(&self, n: i64) -> &[i32] {
        self.filt.get(&n).map_or(&[], Vec::as_slice)
    }

    /// `d^n`, or a zero matrix outside the stored range.
    pub fn d(&self, n: i64) -> Matrix<F> {
        self.d.get(&n).cloned().unwrap_or_else(|| Matrix::zeros(&self.field, self.dim(n + 1), self.dim(n)))
    }

    pub(crate) fn d_ref(&self, n: i64) -> Option<&Matrix<F>> {
        self.d.get(&n)
    }

    pub fn apply_d(&self, n: i64, v: &[F::Elem]) -> Vec<F::Elem> {
        match self.d.get(&n) {
            Some(m) => m.mul_vec(v),
            None => vec![self.field.zero(); self.dim(n + 1)],
        }
    }

    /// `F_p` in degree `n`.
    pub fn subspace(&self, n: i64, p: i64) -> Subspace<F> {
        let fl = self.filtration(n);
        Subspace::coordinate(&self.field, fl.len(), |j| fl[j] as i64 <= p)
    }

    /// Whether `v` lies in `F_p`.
    pub fn in_filtration(&self, n: i64, p: i64, v: &[F::Elem]) -> bool {
        let fl = self.filtration(n);
        v.iter().zip(fl).all(|(e, &q)| q as i64 <= p || self.field.is_zero(e))
    }

    /// Exact filtration of `v`: the least `p` with `v ∈ F_p`.
    pub fn filtration_of(&self, n: i64, v: &[F::Elem]) -> Option<i64> {
        let fl = self.filtration(n);
        v.iter().zip(fl).filter(|(e, _)| !self.field.is_zero(e)).map(|(_, &q)| q as i64).max()
    }

    /// Cell dimensions of the associated graded `F_p / F_{p-1}`.
    pub fn graded_dims(&self, n: i64) -> BTreeMap<i64, usize> {
        let mut out = BTreeMap::new();
        for &p in self.filtration(n) {
            *out.entry(p as i64).or_insert(0) += 1;
        }
        out
    }
}
