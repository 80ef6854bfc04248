//! The spectral sequence of the Hochschild complex filtered by the
//! coefficient filtration `J(n) = A^{≥n}`.
//!
//! Pages are computed on the filtered reduction of `C*(A; A)` with the
//! standard formulas `Z^r_p = {x ∈ F_p : dx ∈ F_{p-r}}` and
//! `E^r_p = Z^r_p / (Z^{r-1}_{p-1} + d Z^{r-1}_{p+r-1})`, one cell per
//! total degree `n` and filtration `p`, with `q = -n - p`. For an algebra of
//! top degree `D` the filtration has length `D + 1`, so `E^{D+1} = E^∞`.

mod checks;
mod filtered;
mod page;

use thiserror::Error;

use crate::dga::DGAlgebra;
use crate::exactla::sparse::SparseVec;
use crate::exactla::Field;
use crate::hochschild::{CohomologyAlgebra, HochschildError};

pub use checks::{
    abutment, column_zero_survivors, e1_term, e2_identification, frobenius_cycles, leibniz, lineage, square_zero, AbutmentRow, Check,
    E2Identification, FrobeniusReport, FrobeniusRow,
};
pub use filtered::FilteredComplex;
pub use page::{Cell, Page};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SpecSeqError {
    #[error("the spectral sequence needs a bounded algebra: {0}")]
    Unbounded(String),
    #[error("filtration check failed: {0}")]
    NotFiltered(String),
    #[error("page index must be at least 1 (got {0})")]
    PageIndex(usize),
    #[error("no even-degree central class of negative degree in the Ext window")]
    NoEvenCentralClass,
    #[error("{0} is only defined over a field of positive characteristic")]
    NeedsPositiveCharacteristic(&'static str),
    #[error("internal inconsistency: {0}")]
    Internal(String),
    #[error(transparent)]
    Hochschild(#[from] HochschildError),
}

/// Pages `E^1, …, E^{D+1}` on the window of the underlying `HH` computation.
#[derive(Clone, Debug)]
pub struct SpectralSequence<F: Field> {
    pub filtered: FilteredComplex<F>,
    pages: Vec<Page<F>>,
}

impl<F: Field> SpectralSequence<F> {
    /// `hh` must come from [`crate::hochschild::hh_algebra`] (filtered reduction).
    pub fn new(hh: &CohomologyAlgebra<F>) -> Result<Self, SpecSeqError> {
        let a = hh.complex.algebra();
        let report = a.validate();
        if report.top_cohomology_degree.is_none() || !report.finite_type {
            return Err(SpecSeqError::Unbounded("cohomology is not finite".into()));
        }
        let fc = FilteredComplex::new(hh)?;
        let w = fc.window();
        let last = fc.depth() as usize + 1;
        let mut pages = Vec::with_capacity(last);
        let mut prev = page::CycleTable::new(&fc, 0, -w - 1..=w);
        for r in 1..=last {
            let cur = page::CycleTable::new(&fc, r, -w - 1..=w);
            pages.push(page::build_page(&fc, r, &cur, &prev)?);
            prev = cur;
        }
        Ok(SpectralSequence { filtered: fc, pages })
    }

    pub fn window(&self) -> i64 {
        self.filtered.window()
    }

    /// Pages `E^1, …, E^{D+1}`.
    pub fn pages(&self) -> &[Page<F>] {
        &self.pages
    }

    /// `E^r`; pages past the last computed one equal `E^∞`.
    pub fn page(&self, r: usize) -> Result<&Page<F>, SpecSeqError> {
        if r == 0 {
            return Err(SpecSeqError::PageIndex(r));
        }
        Ok(&self.pages[(r - 1).min(self.pages.len() - 1)])
    }

    pub fn infinity(&self) -> &Page<F> {
        self.pages.last().expect("at least one page")
    }

    /// Least `r ≥ 2` with `E^r = E^∞`.
    pub fn collapse_page(&self) -> usize {
        let last_nonzero = self.pages.iter().rposition(|pg| !pg.is_zero_differential());
        last_nonzero.map_or(2, |i| (i + 2).max(2))
    }

    /// Product of classes `x ∈ E^r(n1, p1)` and `y ∈ E^r(n2, p2)`: the cup
    /// product of representatives, read off in `E^r(n1+n2, p1+p2)`. `None`
    /// outside the window.
    pub fn product(
        &self,
        hh: &CohomologyAlgebra<F>,
        r: usize,
        (n1, p1, x): (i64, i64, &[F::Elem]),
        (n2, p2, y): (i64, i64, &[F::Elem]),
    ) -> Option<Result<Vec<F::Elem>, SpecSeqError>> {
        let pg = self.page(r).ok()?;
        let c1 = pg.cell(n1, p1)?;
        let c2 = pg.cell(n2, p2)?;
        let target = pg.cell(n1 + n2, p1 + p2);
        if n1 + n2 > self.window() || n1 + n2 < -self.window() {
            return None;
        }
        let f = self.filtered.field();
        let lx = hh.reduction.lift(n1, &c1.combine(f, self.filtered.dim(n1), x));
        let ly = hh.reduction.lift(n2, &c2.combine(f, self.filtered.dim(n2), y));
        Some(self.product_of_lifts(hh, pg.r, (n1 + n2, p1 + p2), target, &lx, n1, &ly, n2))
    }

    #[allow(clippy::too_many_arguments)]
    pub(crate) fn product_of_lifts(
        &self,
        hh: &CohomologyAlgebra<F>,
        r: usize,
        (n, p): (i64, i64),
        target: Option<&Cell<F>>,
        lx: &SparseVec<F::Elem>,
        n1: i64,
        ly: &SparseVec<F::Elem>,
        n2: i64,
    ) -> Result<Vec<F::Elem>, SpecSeqError> {
        let f = self.filtered.field();
        let c = hh.complex.cup(n1, lx, n2, ly).ok_or_else(|| SpecSeqError::Internal(format!("cup outside degree {n}")))?;
        let v = hh.reduction.project(n, &c);
        if !self.filtered.in_filtration(n, p, &v) {
            return Err(SpecSeqError::Internal(format!("E^{r} product leaves F_{p} in degree {n}")));
        }
        Ok(match target {
            Some(t) => t.coordinates(f, &v),
            None => Vec::new(),
        })
    }
}

/// `HH^*(A)` on the window together with its spectral sequence.
pub fn spectral_sequence<F: Field>(
    a: &DGAlgebra<F>,
    window: i64,
    budget: usize,
) -> Result<(CohomologyAlgebra<F>, SpectralSequence<F>), SpecSeqError> {
    let hh = crate::hochschild::hh_algebra(a, window, budget)?;
    let ss = SpectralSequence::new(&hh)?;
    Ok((hh, ss))
}
