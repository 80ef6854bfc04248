use std::collections::BTreeMap;

use rayon::prelude::*;

use crate::exactla::{Field, Matrix, Subspace};

use super::filtered::FilteredComplex;
use super::SpecSeqError;

/// One cell `E^r_{p,q}` in total degree `n = -p-q`, with cocycle
/// representatives `z ∈ F_p` (`δz ∈ F_{p-r}`) in the reduced complex.
#[derive(Clone, Debug)]
pub struct Cell<F: Field> {
    pub n: i64,
    pub p: i64,
    reps: Vec<Vec<F::Elem>>,
    /// Coordinates of `v ∈ Z^r_p` are `Σ_k v[sel[k]] · coord[k]`.
    sel: Vec<usize>,
    coord: Vec<Vec<F::Elem>>,
}

impl<F: Field> Cell<F> {
    /// `Z / B` for subspaces `B ⊆ Z` of the degree-`n` piece.
    fn new(f: &F, n: i64, p: i64, z: &Subspace<F>, b: &Subspace<F>) -> Result<Self, SpecSeqError> {
        let reps = Subspace::quotient_representatives(z, b).map_err(|e| SpecSeqError::Internal(format!("E({n},{p}): {e}")))?;
        let ambient = z.ambient();
        if reps.is_empty() {
            return Ok(Cell { n, p, reps, sel: Vec::new(), coord: Vec::new() });
        }
        let rows: Vec<Vec<F::Elem>> = b.basis_vecs().into_iter().chain(reps.iter().cloned()).collect();
        let k = rows.len();
        let mut aug = Matrix::zeros(f, k, ambient + k);
        for (i, r) in rows.iter().enumerate() {
            for (c, e) in r.iter().enumerate() {
                if !f.is_zero(e) {
                    aug.set(i, c, e.clone());
                }
            }
            aug.set(i, ambient + i, f.one());
        }
        let pivots = aug.rref_in_place();
        let sel: Vec<usize> = pivots.iter().copied().filter(|&c| c < ambient).collect();
        if sel.len() != k {
            return Err(SpecSeqError::Internal(format!("E({n},{p}): dependent representatives")));
        }
        let first = b.dim();
        let coord = (0..k).map(|row| (first..k).map(|i| aug.get(row, ambient + i).clone()).collect()).collect();
        Ok(Cell { n, p, reps, sel, coord })
    }

    pub fn dim(&self) -> usize {
        self.reps.len()
    }

    pub fn q(&self) -> i64 {
        -self.n - self.p
    }

    pub fn reps(&self) -> &[Vec<F::Elem>] {
        &self.reps
    }

    /// Class of `v`, which must lie in `Z^r_p` (unchecked).
    pub fn coordinates(&self, f: &F, v: &[F::Elem]) -> Vec<F::Elem> {
        let mut out = vec![f.zero(); self.dim()];
        for (k, &s) in self.sel.iter().enumerate() {
            let e = &v[s];
            if f.is_zero(e) {
                continue;
            }
            for (o, c) in out.iter_mut().zip(&self.coord[k]) {
                if !f.is_zero(c) {
                    *o = f.mul_add(o, e, c);
                }
            }
        }
        out
    }

    /// `Σ c_i z_i` over the reduced complex of dimension `ambient`.
    pub fn combine(&self, f: &F, ambient: usize, c: &[F::Elem]) -> Vec<F::Elem> {
        crate::exactla::combine(f, ambient, &self.reps, c)
    }
}

/// The page `E^r`, cells indexed by `(n, p)`, with differentials
/// `d^r : E^r(n, p) → E^r(n+1, p-r)` wherever the target degree is in the
/// window.
#[derive(Clone, Debug)]
pub struct Page<F: Field> {
    pub r: usize,
    pub(crate) cells: BTreeMap<(i64, i64), Cell<F>>,
    pub(crate) diff: BTreeMap<(i64, i64), Matrix<F>>,
}

impl<F: Field> Page<F> {
    pub fn cell(&self, n: i64, p: i64) -> Option<&Cell<F>> {
        self.cells.get(&(n, p))
    }

    pub fn dim(&self, n: i64, p: i64) -> usize {
        self.cell(n, p).map_or(0, Cell::dim)
    }

    pub fn cells(&self) -> impl Iterator<Item = &Cell<F>> {
        self.cells.values()
    }

    /// `d^r` out of `(n, p)`; `None` when its target lies outside the window.
    pub fn differential(&self, n: i64, p: i64) -> Option<&Matrix<F>> {
        self.diff.get(&(n, p))
    }

    pub fn differentials(&self) -> impl Iterator<Item = (&(i64, i64), &Matrix<F>)> {
        self.diff.iter()
    }

    pub fn is_zero_differential(&self) -> bool {
        self.diff.values().all(Matrix::is_zero)
    }

    pub fn total_dim(&self, n: i64) -> usize {
        self.cells.range((n, i64::MIN)..=(n, i64::MAX)).map(|(_, c)| c.dim()).sum()
    }
}

/// `Z^s_q` in every degree `n` of `degrees`, for `q` in `[-depth-1, 0]`.
pub(crate) struct CycleTable<F: Field> {
    s: usize,
    table: BTreeMap<(i64, i64), Subspace<F>>,
}

impl<F: Field> CycleTable<F> {
    pub(crate) fn new(fc: &FilteredComplex<F>, s: usize, degrees: std::ops::RangeInclusive<i64>) -> Self {
        let qs: Vec<i64> = (-fc.depth() - 1..=0).collect();
        let keys: Vec<(i64, i64)> = degrees.flat_map(|n| qs.iter().map(move |&q| (n, q))).collect();
        let table = keys.par_iter().map(|&(n, q)| ((n, q), cycles(fc, n, s, q))).collect();
        CycleTable { s, table }
    }

    pub(crate) fn get(&self, n: i64, q: i64) -> &Subspace<F> {
        debug_assert!(q <= 0, "Z^s_q with q > 0 is not Z^s_0");
        &self.table[&(n, q)]
    }

    pub(crate) fn level(&self) -> usize {
        self.s
    }
}

/// `Z^s_q = {x ∈ F_q : dx ∈ F_{q-s}}` in degree `n`.
pub(crate) fn cycles<F: Field>(fc: &FilteredComplex<F>, n: i64, s: usize, q: i64) -> Subspace<F> {
    let f = fc.field();
    let fl = fc.filtration(n);
    let cols: Vec<usize> = (0..fl.len()).filter(|&j| fl[j] as i64 <= q).collect();
    let full = || Subspace::coordinate(f, fl.len(), |j| fl[j] as i64 <= q);
    let Some(d) = fc.d_ref(n) else { return full() };
    if s == 0 || cols.is_empty() {
        return full();
    }
    let fl1 = fc.filtration(n + 1);
    let rows: Vec<usize> = (0..fl1.len()).filter(|&t| fl1[t] as i64 > q - s as i64).collect();
    if rows.is_empty() {
        return full();
    }
    let k = d.select(&rows, &cols).kernel_basis();
    let vecs = k.basis_vecs().into_iter().map(|v| {
        let mut out = vec![f.zero(); fl.len()];
        for (c, e) in cols.iter().zip(v) {
            out[*c] = e;
        }
        out
    });
    Subspace::span(f, fl.len(), vecs)
}

/// Builds `E^r` from `Z^r` and `Z^{r-1}` (the latter over one extra degree
/// below the window, for boundaries).
pub(crate) fn build_page<F: Field>(
    fc: &FilteredComplex<F>,
    r: usize,
    zr: &CycleTable<F>,
    zprev: &CycleTable<F>,
) -> Result<Page<F>, SpecSeqError> {
    debug_assert_eq!(zr.level(), r);
    debug_assert_eq!(zprev.level() + 1, r);
    let f = fc.field();
    let w = fc.window();
    let keys: Vec<(i64, i64)> = (-w..=w).flat_map(|n| (-fc.depth()..=0).map(move |p| (n, p))).collect();
    let cells: Vec<Cell<F>> = keys
        .par_iter()
        .map(|&(n, p)| {
            let z = zr.get(n, p);
            let mut b = zprev.get(n, p - 1).clone();
            if let Some(d) = fc.d_ref(n - 1) {
                // Z^{r-1}_{p+r-1}; above filtration 0 only the condition dx ∈ F_p remains.
                let q = p + r as i64 - 1;
                let wide;
                let src = if q <= 0 {
                    zprev.get(n - 1, q)
                } else {
                    wide = cycles(fc, n - 1, (-p) as usize, 0);
                    &wide
                };
                for v in src.basis_vecs() {
                    b.insert(&d.mul_vec(&v));
                }
            }
            if !z.contains_subspace(&b) {
                return Err(SpecSeqError::Internal(format!("E^{r}({n},{p}): boundaries are not cycles")));
            }
            Cell::new(f, n, p, z, &b)
        })
        .collect::<Result<_, _>>()?;
    let cells: BTreeMap<(i64, i64), Cell<F>> = cells.into_iter().map(|c| ((c.n, c.p), c)).collect();
    let mut diff = BTreeMap::new();
    for (&(n, p), c) in &cells {
        if n + 1 > w {
            continue;
        }
        let tp = p - r as i64;
        let target = cells.get(&(n + 1, tp));
        let rows = target.map_or(0, Cell::dim);
        let mut m = Matrix::zeros(f, rows, c.dim());
        for (i, z) in c.reps().iter().enumerate() {
            let y = fc.apply_d(n, z);
            if !fc.in_filtration(n + 1, tp, &y) {
                return Err(SpecSeqError::Internal(format!("d^{r} of a class in ({n},{p}) leaves F_{tp}")));
            }
            if let Some(t) = target {
                for (row, e) in t.coordinates(f, &y).into_iter().enumerate() {
                    m.set(row, i, e);
                }
            }
        }
        diff.insert((n, p), m);
    }
    Ok(Page { r, cells, diff })
}
