use std::collections::BTreeMap;

use crate::exactla::{Field, Matrix, RelativeBasis, Subspace};

use super::{GradedError, GradedVectorSpace};

/// Degree-preserving map between graded spaces, one matrix per degree
/// (columns index the source piece). Missing degrees are zero.
pub type ChainMap<F> = BTreeMap<i64, Matrix<F>>;

/// Dense cochain complex with `d^n : X^n → X^{n+1}`.
#[derive(Clone, Debug)]
pub struct CochainComplex<F: Field> {
    field: F,
    space: GradedVectorSpace,
    differential: BTreeMap<i64, Matrix<F>>,
    certified: (i64, i64),
}

/// Cohomology in one degree: cocycles, coboundaries and a fixed choice of
/// cocycle representatives for a basis of the quotient.
#[derive(Clone, Debug)]
pub struct CohomologyPiece<F: Field> {
    pub degree: i64,
    pub cocycles: Subspace<F>,
    pub coboundaries: Subspace<F>,
    pub classes: RelativeBasis<F>,
}

impl<F: Field> CohomologyPiece<F> {
    pub fn dim(&self) -> usize {
        self.classes.dim()
    }

    pub fn representatives(&self) -> &[Vec<F::Elem>] {
        self.classes.reps()
    }

    /// Class coordinates of a cocycle; `None` if `z` is not a cocycle.
    pub fn class_of(&self, z: &[F::Elem]) -> Option<Vec<F::Elem>> {
        if !self.cocycles.contains(z) {
            return None;
        }
        self.classes.coordinates(z)
    }
}

impl<F: Field> CochainComplex<F> {
    /// Builds a complex and verifies `d ∘ d = 0`. The certified window is the
    /// range in which the pieces `n-1, n, n+1` are all known; pass `None` for
    /// a complex that is complete.
    pub fn new(
        field: &F,
        space: GradedVectorSpace,
        differential: BTreeMap<i64, Matrix<F>>,
        certified: Option<(i64, i64)>,
    ) -> Result<Self, GradedError> {
        for (&n, m) in &differential {
            let (want_rows, want_cols) = (space.dim(n + 1), space.dim(n));
            if m.rows() != want_rows || m.cols() != want_cols {
                return Err(GradedError::Shape { degree: n, rows: m.rows(), cols: m.cols(), want_rows, want_cols });
            }
        }
        let certified = certified.unwrap_or_else(|| (space.min_degree().unwrap_or(0) - 1, space.max_degree().unwrap_or(0) + 1));
        let c = CochainComplex { field: field.clone(), space, differential, certified };
        c.check_complex()?;
        Ok(c)
    }

    pub fn field(&self) -> &F {
        &self.field
    }
    pub fn space(&self) -> &GradedVectorSpace {
        &self.space
    }
    pub fn certified(&self) -> (i64, i64) {
        self.certified
    }
    pub fn dim(&self, n: i64) -> usize {
        self.space.dim(n)
    }

    /// `d^n`, materialising zero maps for missing degrees.
    pub fn d(&self, n: i64) -> Matrix<F> {
        self.differential.get(&n).cloned().unwrap_or_else(|| Matrix::zeros(&self.field, self.dim(n + 1), self.dim(n)))
    }

    pub fn apply_d(&self, n: i64, v: &[F::Elem]) -> Vec<F::Elem> {
        match self.differential.get(&n) {
            Some(m) => m.mul_vec(v),
            None => vec![self.field.zero(); self.dim(n + 1)],
        }
    }

    pub fn check_complex(&self) -> Result<(), GradedError> {
        let f = &self.field;
        for (&n, dn) in &self.differential {
            let Some(dn1) = self.differential.get(&(n + 1)) else { continue };
            let comp = dn1.mul(dn);
            for col in 0..comp.cols() {
                if (0..comp.rows()).any(|r| !f.is_zero(comp.get(r, col))) {
                    return Err(GradedError::NotAComplex { degree: n, label: self.space.labels(n)[col].clone() });
                }
            }
        }
        Ok(())
    }

    fn check_window(&self, n: i64) -> Result<(), GradedError> {
        let (lo, hi) = self.certified;
        if n < lo || n > hi {
            return Err(GradedError::OutsideWindow { degree: n, lo, hi });
        }
        Ok(())
    }

    pub fn cocycles(&self, n: i64) -> Subspace<F> {
        if self.dim(n + 1) == 0 {
            return Subspace::full(&self.field, self.dim(n));
        }
        self.d(n).kernel_basis()
    }

    pub fn coboundaries(&self, n: i64) -> Subspace<F> {
        if self.dim(n - 1) == 0 {
            return Subspace::zero(&self.field, self.dim(n));
        }
        self.d(n - 1).image_basis()
    }

    pub fn cohomology(&self, n: i64) -> Result<CohomologyPiece<F>, GradedError> {
        self.check_window(n)?;
        let cocycles = self.cocycles(n);
        let coboundaries = self.coboundaries(n);
        let reps =
            Subspace::quotient_representatives(&cocycles, &coboundaries).expect("d∘d = 0 guarantees coboundaries lie in the cocycles");
        let classes = RelativeBasis::new(coboundaries.clone(), reps);
        Ok(CohomologyPiece { degree: n, cocycles, coboundaries, classes })
    }

    /// `dim X^n - rank d^n - rank d^{n-1}`.
    pub fn betti_by_rank(&self, n: i64) -> Result<usize, GradedError> {
        self.check_window(n)?;
        Ok(self.dim(n) - self.d(n).rank() - self.d(n - 1).rank())
    }

    pub fn cohomology_dims(&self) -> BTreeMap<i64, usize> {
        let (lo, hi) = self.certified;
        (lo..=hi).filter_map(|n| self.cohomology(n).ok().map(|h| (n, h.dim()))).filter(|(_, d)| *d > 0).collect()
    }
}

/// Total complex of a bicomplex whose row `p` is `rows[p]` and whose
/// horizontal maps `maps[p-1] : rows[p] → rows[p-1]` commute with the row
/// differentials. An element of cohomological degree `m` in row `p` sits in
/// total degree `m - p`; the total differential is `(-1)^p d_row + h`.
pub fn total_complex<F: Field>(rows: &[CochainComplex<F>], maps: &[ChainMap<F>]) -> Result<CochainComplex<F>, GradedError> {
    let Some(first) = rows.first() else {
        return Err(GradedError::Bicomplex("no rows".into()));
    };
    if maps.len() + 1 != rows.len() {
        return Err(GradedError::Bicomplex(format!("{} rows need {} horizontal maps", rows.len(), rows.len() - 1)));
    }
    let f = first.field().clone();
    let zero_map = |src: &CochainComplex<F>, dst: &CochainComplex<F>, m: i64| Matrix::zeros(&f, dst.dim(m), src.dim(m));
    let h = |p: usize, m: i64| -> Matrix<F> { maps[p - 1].get(&m).cloned().unwrap_or_else(|| zero_map(&rows[p], &rows[p - 1], m)) };
    for p in 1..rows.len() {
        let degrees: Vec<i64> = rows[p].space().degrees().chain(rows[p - 1].space().degrees()).collect();
        for &m in &degrees {
            let hm = h(p, m);
            if hm.rows() != rows[p - 1].dim(m) || hm.cols() != rows[p].dim(m) {
                return Err(GradedError::Bicomplex(format!("horizontal map from row {p} has wrong shape in degree {m}")));
            }
            let left = rows[p - 1].d(m).mul(&hm);
            let right = h(p, m + 1).mul(&rows[p].d(m));
            if left != right {
                return Err(GradedError::NotAChainMap { row: p, degree: m });
            }
        }
    }

    // offsets[n] = list of (p, m, start) blocks making up total degree n
    let mut blocks: BTreeMap<i64, Vec<(usize, i64, usize)>> = BTreeMap::new();
    let mut space = GradedVectorSpace::new();
    for (p, row) in rows.iter().enumerate() {
        for m in row.space().degrees().collect::<Vec<_>>() {
            let n = m - p as i64;
            let start = space.dim(n);
            blocks.entry(n).or_default().push((p, m, start));
            for l in row.space().labels(m) {
                space.push(n, format!("{p}:{l}"))?;
            }
        }
    }
    let block_start =
        |n: i64, p: usize| -> Option<usize> { blocks.get(&n).and_then(|bs| bs.iter().find(|(q, _, _)| *q == p).map(|(_, _, s)| *s)) };
    let mut differential = BTreeMap::new();
    for (&n, bs) in &blocks {
        if space.dim(n + 1) == 0 {
            continue;
        }
        let mut d = Matrix::zeros(&f, space.dim(n + 1), space.dim(n));
        for &(p, m, start) in bs {
            let vert = rows[p].d(m);
            let sign = f.sign(p % 2 == 1);
            if let Some(ts) = block_start(n + 1, p) {
                for r in 0..vert.rows() {
                    for c in 0..vert.cols() {
                        let v = vert.get(r, c);
                        if !f.is_zero(v) {
                            d.add_to(ts + r, start + c, &f.mul(&sign, v));
                        }
                    }
                }
            }
            if p > 0 {
                let hor = h(p, m);
                if let Some(ts) = block_start(n + 1, p - 1) {
                    for r in 0..hor.rows() {
                        for c in 0..hor.cols() {
                            let v = hor.get(r, c);
                            if !f.is_zero(v) {
                                d.add_to(ts + r, start + c, v);
                            }
                        }
                    }
                }
            }
        }
        differential.insert(n, d);
    }
    CochainComplex::new(&f, space, differential, None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactla::{PrimeField, RationalField};

    fn line_complex<F: Field>(f: &F, maps: &[(i64, i64)]) -> Result<CochainComplex<F>, GradedError> {
        // one basis element per degree 0..=3, d^n = given scalar
        let mut space = GradedVectorSpace::new();
        for n in 0..=3 {
            space.push(n, format!("e{n}")).unwrap();
        }
        let diff = maps.iter().map(|&(n, v)| (n, Matrix::from_i64_rows(f, 1, &[&[v]]))).collect();
        CochainComplex::new(f, space, diff, None)
    }

    #[test]
    fn check_complex_examples() {
        let f = PrimeField::new(5).unwrap();
        assert!(line_complex(&f, &[]).is_ok());
        assert!(line_complex(&f, &[(1, 1)]).is_ok());
        let err = line_complex(&f, &[(1, 1), (2, 1)]).unwrap_err();
        assert_eq!(err, GradedError::NotAComplex { degree: 1, label: "e1".into() });
    }

    #[test]
    fn cohomology_examples() {
        let q = RationalField;
        let mut space = GradedVectorSpace::new();
        for l in ["a", "b", "c"] {
            space.push(2, l).unwrap();
        }
        let c = CochainComplex::new(&q, space, BTreeMap::new(), None).unwrap();
        assert_eq!(c.cohomology(2).unwrap().dim(), 3);
        let acyclic = line_complex(&q, &[(1, 1)]).unwrap();
        assert_eq!(acyclic.cohomology(1).unwrap().dim(), 0);
        assert_eq!(acyclic.cohomology(2).unwrap().dim(), 0);
        assert_eq!(acyclic.cohomology(0).unwrap().dim(), 1);
        assert!(matches!(acyclic.cohomology(10), Err(GradedError::OutsideWindow { .. })));
        for n in 0..=3 {
            assert_eq!(acyclic.cohomology(n).unwrap().dim(), acyclic.betti_by_rank(n).unwrap());
        }
    }

    #[test]
    fn total_complex_single_row_unchanged() {
        let q = RationalField;
        let row = line_complex(&q, &[(1, 2)]).unwrap();
        let t = total_complex(std::slice::from_ref(&row), &[]).unwrap();
        for n in 0..=3 {
            assert_eq!(t.dim(n), row.dim(n));
            assert_eq!(t.d(n), row.d(n));
        }
    }

    #[test]
    fn total_complex_two_identity_rows_acyclic() {
        let q = RationalField;
        let row = line_complex(&q, &[(1, 1)]).unwrap();
        let id: ChainMap<RationalField> = (0..=3).map(|m| (m, Matrix::identity(&q, 1))).collect();
        let t = total_complex(&[row.clone(), row], &[id]).unwrap();
        for n in -2..=4 {
            assert_eq!(t.cohomology(n).unwrap().dim(), 0, "degree {n}");
        }
    }
}
