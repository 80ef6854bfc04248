//! Sparse cochain complexes and their reduction to a small dense model.
//!
//! A [`SparseComplex`] carries an integer filtration value on every cell; the
//! differential may only keep or lower it. [`Reduction::new`] performs
//! Gaussian elimination of complexes, cancelling pairs `a → b` with an
//! invertible coefficient and equal filtration. The result is a filtered
//! deformation retract: projection `f`, inclusion `g` and the reduced complex
//! `R` satisfy `f g = 1`, `d_R = f d g`, and both maps respect filtrations.
//! Because every cancelled pair lives in a single filtration step, `R` has
//! the same spectral sequence as the original complex from the first page on.

use std::collections::BTreeMap;

use rustc_hash::FxHashSet;

use crate::exactla::sparse::{Accumulator, SparseVec};
use crate::exactla::{Field, Matrix};

use super::{CochainComplex, GradedError, GradedVectorSpace};

#[derive(Clone, Debug)]
pub struct SparseComplex<F: Field> {
    field: F,
    lo: i64,
    filt: Vec<Vec<i32>>,
    /// `cols[n - lo][j]` is `d(e_j)` for cell `j` of degree `n`.
    cols: Vec<Vec<SparseVec<F::Elem>>>,
    certified: (i64, i64),
}

impl<F: Field> SparseComplex<F> {
    /// `filt[i]` and `cols[i]` describe degree `lo + i`. The top degree's
    /// columns must be empty (or omitted).
    pub fn new(field: &F, lo: i64, filt: Vec<Vec<i32>>, mut cols: Vec<Vec<SparseVec<F::Elem>>>, certified: (i64, i64)) -> Self {
        cols.resize_with(filt.len(), Vec::new);
        for (i, c) in cols.iter_mut().enumerate() {
            if c.is_empty() {
                c.resize_with(filt[i].len(), Vec::new);
            }
            assert_eq!(c.len(), filt[i].len(), "one column per cell");
        }
        SparseComplex { field: field.clone(), lo, filt, cols, certified }
    }

    pub fn field(&self) -> &F {
        &self.field
    }
    pub fn lo(&self) -> i64 {
        self.lo
    }
    pub fn hi(&self) -> i64 {
        self.lo + self.filt.len() as i64 - 1
    }
    pub fn certified(&self) -> (i64, i64) {
        self.certified
    }

    fn slot(&self, n: i64) -> Option<usize> {
        let i = n - self.lo;
        (i >= 0 && (i as usize) < self.filt.len()).then_some(i as usize)
    }

    pub fn dim(&self, n: i64) -> usize {
        self.slot(n).map_or(0, |i| self.filt[i].len())
    }

    pub fn total_dim(&self) -> usize {
        self.filt.iter().map(Vec::len).sum()
    }

    pub fn filtration(&self, n: i64) -> &[i32] {
        self.slot(n).map_or(&[], |i| &self.filt[i])
    }

    pub fn column(&self, n: i64, j: usize) -> &[(u32, F::Elem)] {
        &self.cols[self.slot(n).expect("degree in range")][j]
    }

    pub fn nnz(&self) -> usize {
        self.cols.iter().flatten().map(Vec::len).sum()
    }

    pub fn apply_d(&self, n: i64, v: &[(u32, F::Elem)]) -> SparseVec<F::Elem> {
        let Some(i) = self.slot(n) else { return Vec::new() };
        let mut acc = Accumulator::new(&self.field);
        for (j, e) in v {
            acc.add_scaled(e, &self.cols[i][*j as usize]);
        }
        acc.into_sorted()
    }

    /// First cell `(degree, index)` with `d d e ≠ 0`, if any.
    pub fn find_dd_violation(&self) -> Option<(i64, usize)> {
        for n in self.lo..self.hi() {
            let i = self.slot(n).unwrap();
            for j in 0..self.filt[i].len() {
                if !self.apply_d(n + 1, &self.cols[i][j]).is_empty() {
                    return Some((n, j));
                }
            }
        }
        None
    }

    /// First cell whose differential raises the filtration, if any.
    pub fn find_filtration_violation(&self) -> Option<(i64, usize)> {
        for n in self.lo..self.hi() {
            let i = self.slot(n).unwrap();
            for (j, col) in self.cols[i].iter().enumerate() {
                if col.iter().any(|(t, _)| self.filt[i + 1][*t as usize] > self.filt[i][j]) {
                    return Some((n, j));
                }
            }
        }
        None
    }

    /// Dense copy with the given labels; only sensible for small complexes.
    pub fn to_dense(&self, label: impl Fn(i64, usize) -> String) -> Result<CochainComplex<F>, GradedError> {
        let mut space = GradedVectorSpace::new();
        for n in self.lo..=self.hi() {
            for j in 0..self.dim(n) {
                space.push(n, label(n, j))?;
            }
        }
        let mut diff = BTreeMap::new();
        for n in self.lo..self.hi() {
            let i = self.slot(n).unwrap();
            let mut m = Matrix::zeros(&self.field, self.dim(n + 1), self.dim(n));
            for (j, col) in self.cols[i].iter().enumerate() {
                for (t, e) in col {
                    m.set(*t as usize, j, e.clone());
                }
            }
            diff.insert(n, m);
        }
        CochainComplex::new(&self.field, space, diff, Some(self.certified))
    }
}

struct Elimination<E> {
    a: u32,
    b: u32,
    c: E,
    /// `d a` without its `b` entry.
    gamma: SparseVec<E>,
    /// `(x, ⟨d x, b⟩)` for the other columns hitting `b`.
    kappa: SparseVec<E>,
}

struct DegreeOutcome<E> {
    log: Vec<Elimination<E>>,
    /// Remaining columns of uncancelled sources (indexed by cell).
    remaining: Vec<(u32, SparseVec<E>)>,
}

/// Result of reducing a [`SparseComplex`].
#[derive(Clone, Debug)]
pub struct Reduction<F: Field> {
    field: F,
    lo: i64,
    /// Original cell indices of the surviving cells, per degree.
    survivors: Vec<Vec<u32>>,
    /// Filtration values of surviving cells.
    filt: Vec<Vec<i32>>,
    /// `f(e_t)` for every cell `t` that is not itself a survivor or zero.
    proj: Vec<rustc_hash::FxHashMap<u32, SparseVec<F::Elem>>>,
    /// Position of each original cell among the survivors.
    position: Vec<Vec<u32>>,
    /// `g(e_s)` for each survivor, over original cells.
    lifts: Vec<Vec<SparseVec<F::Elem>>>,
    reduced: CochainComplex<F>,
    eliminated: usize,
}

const NONE: u32 = u32::MAX;

impl<F: Field> Reduction<F> {
    /// Cancels every invertible pair, or only pairs of equal filtration when
    /// `filtered`. Without the restriction the reduced differential is zero
    /// and `R` is the cohomology.
    pub fn new(c: &SparseComplex<F>, filtered: bool, label: impl Fn(i64, usize) -> String) -> Result<Self, GradedError> {
        let f = c.field().clone();
        let degrees = c.filt.len();
        let mut removed_b: Vec<FxHashSet<u32>> = vec![FxHashSet::default(); degrees + 1];
        let mut outcomes: Vec<DegreeOutcome<F::Elem>> = Vec::with_capacity(degrees);
        for i in 0..degrees {
            let next_filt: &[i32] = if i + 1 < degrees { &c.filt[i + 1] } else { &[] };
            let out = eliminate_degree(&f, &c.filt[i], next_filt, &c.cols[i], &removed_b[i], filtered);
            for e in &out.log {
                removed_b[i + 1].insert(e.b);
            }
            outcomes.push(out);
        }
        let a_sets: Vec<FxHashSet<u32>> = outcomes.iter().map(|o| o.log.iter().map(|e| e.a).collect()).collect();

        let mut survivors = Vec::with_capacity(degrees);
        let mut position = Vec::with_capacity(degrees);
        let mut sfilt = Vec::with_capacity(degrees);
        for i in 0..degrees {
            let mut pos = vec![NONE; c.filt[i].len()];
            let mut surv = Vec::new();
            for j in 0..c.filt[i].len() as u32 {
                if !a_sets[i].contains(&j) && !removed_b[i].contains(&j) {
                    pos[j as usize] = surv.len() as u32;
                    surv.push(j);
                }
            }
            sfilt.push(surv.iter().map(|&j| c.filt[i][j as usize]).collect());
            survivors.push(surv);
            position.push(pos);
        }

        // A lowest degree below the certified range only supplies coboundaries:
        // keep a basis of its image, chosen in order of filtration so that
        // every `d(F_p)` is still spanned, and skip its lifts.
        let trim = c.lo < c.certified.0 && degrees > 1;
        if trim {
            let mut cand: Vec<&(u32, SparseVec<F::Elem>)> =
                outcomes[0].remaining.iter().filter(|(j, _)| position[0][*j as usize] != NONE).collect();
            cand.sort_by_key(|(j, _)| (c.filt[0][*j as usize], *j));
            let rank_cap = survivors[1].len();
            let mut echelon: rustc_hash::FxHashMap<u32, SparseVec<F::Elem>> = Default::default();
            let mut kept = Vec::new();
            for (j, col) in cand {
                if echelon.len() == rank_cap {
                    break;
                }
                let mut v: SparseVec<F::Elem> = col
                    .iter()
                    .filter_map(|(t, e)| match position[1][*t as usize] {
                        NONE => None,
                        p => Some((p, e.clone())),
                    })
                    .collect();
                v.sort_unstable_by_key(|(t, _)| *t);
                while let Some((lead, e)) = v.first().cloned() {
                    let Some(b) = echelon.get(&lead) else { break };
                    v = axpy(&f, &v, &f.neg(&e), b).0;
                }
                if let Some((lead, e)) = v.first().cloned() {
                    let inv = f.inv(&e);
                    echelon.insert(lead, crate::exactla::sparse::scale(&f, &inv, &v));
                    kept.push(*j);
                }
            }
            kept.sort_unstable();
            let mut pos = vec![NONE; c.filt[0].len()];
            for (k, &j) in kept.iter().enumerate() {
                pos[j as usize] = k as u32;
            }
            sfilt[0] = kept.iter().map(|&j| c.filt[0][j as usize]).collect();
            survivors[0] = kept;
            position[0] = pos;
        }

        // g: L[x] is the survivor expansion of the coefficient of x in g.
        let mut lifts = Vec::with_capacity(degrees);
        for i in 0..degrees {
            if i == 0 && trim {
                lifts.push(Vec::new());
                continue;
            }
            let mut l: rustc_hash::FxHashMap<u32, SparseVec<F::Elem>> = Default::default();
            for e in outcomes[i].log.iter().rev() {
                let mut acc = Accumulator::new(&f);
                for (x, k) in &e.kappa {
                    match position[i][*x as usize] {
                        NONE => {
                            if let Some(lx) = l.get(x) {
                                acc.add_scaled(k, lx);
                            }
                        }
                        p => acc.add(p, k),
                    }
                }
                let s = f.neg(&f.inv(&e.c));
                let v = crate::exactla::sparse::scale(&f, &s, &acc.into_sorted());
                if !v.is_empty() {
                    l.insert(e.a, v);
                }
            }
            let mut g: Vec<SparseVec<F::Elem>> = survivors[i].iter().map(|&s| vec![(s, f.one())]).collect();
            for (x, lx) in l {
                for (s, v) in lx {
                    g[s as usize].push((x, v));
                }
            }
            for v in &mut g {
                v.sort_unstable_by_key(|(x, _)| *x);
            }
            lifts.push(g);
        }

        // f: F[b] for cancelled targets, from the log of the degree below.
        let mut proj = Vec::with_capacity(degrees);
        for i in 0..degrees {
            let mut fb: rustc_hash::FxHashMap<u32, SparseVec<F::Elem>> = Default::default();
            if i > 0 {
                for e in outcomes[i - 1].log.iter().rev() {
                    let mut acc = Accumulator::new(&f);
                    for (t, v) in &e.gamma {
                        match position[i][*t as usize] {
                            NONE => {
                                if let Some(ft) = fb.get(t) {
                                    acc.add_scaled(v, ft);
                                }
                            }
                            p => acc.add(p, v),
                        }
                    }
                    let s = f.neg(&f.inv(&e.c));
                    let v = crate::exactla::sparse::scale(&f, &s, &acc.into_sorted());
                    if !v.is_empty() {
                        fb.insert(e.b, v);
                    }
                }
            }
            proj.push(fb);
        }

        // Reduced differential: remaining columns of survivors, restricted
        // to surviving rows (rows cancelled as sources one degree up drop).
        let mut space = GradedVectorSpace::new();
        for (i, surv) in survivors.iter().enumerate().take(degrees) {
            let n = c.lo + i as i64;
            for &s in surv {
                space.push(n, label(n, s as usize))?;
            }
        }
        let mut diff = BTreeMap::new();
        for i in 0..degrees.saturating_sub(1) {
            let n = c.lo + i as i64;
            let mut m = Matrix::zeros(&f, survivors[i + 1].len(), survivors[i].len());
            for (j, col) in &outcomes[i].remaining {
                let pj = position[i][*j as usize];
                if pj == NONE {
                    continue;
                }
                for (t, v) in col {
                    let pt = position[i + 1][*t as usize];
                    if pt != NONE {
                        m.set(pt as usize, pj as usize, v.clone());
                    }
                }
            }
            diff.insert(n, m);
        }
        let reduced = CochainComplex::new(&f, space, diff, Some(c.certified))?;
        let eliminated = outcomes.iter().map(|o| o.log.len()).sum();
        Ok(Reduction { field: f, lo: c.lo, survivors, filt: sfilt, proj, position, lifts, reduced, eliminated })
    }

    pub fn reduced(&self) -> &CochainComplex<F> {
        &self.reduced
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn eliminated_pairs(&self) -> usize {
        self.eliminated
    }

    fn slot(&self, n: i64) -> Option<usize> {
        let i = n - self.lo;
        (i >= 0 && (i as usize) < self.survivors.len()).then_some(i as usize)
    }

    /// Filtration values of the reduced cells in degree `n`.
    pub fn filtration(&self, n: i64) -> &[i32] {
        self.slot(n).map_or(&[], |i| &self.filt[i])
    }

    /// Original cell index of each reduced cell in degree `n`.
    pub fn survivors(&self, n: i64) -> &[u32] {
        self.slot(n).map_or(&[], |i| &self.survivors[i])
    }

    /// `f(v)` as a dense vector over the reduced cells of degree `n`.
    pub fn project(&self, n: i64, v: &[(u32, F::Elem)]) -> Vec<F::Elem> {
        let f = &self.field;
        let Some(i) = self.slot(n) else { return Vec::new() };
        let mut out = vec![f.zero(); self.survivors[i].len()];
        for (t, e) in v {
            match self.position[i][*t as usize] {
                NONE => {
                    if let Some(ft) = self.proj[i].get(t) {
                        for (s, w) in ft {
                            out[*s as usize] = f.mul_add(&out[*s as usize], e, w);
                        }
                    }
                }
                p => out[p as usize] = f.add(&out[p as usize], e),
            }
        }
        out
    }

    /// `g(e_s)` for reduced cell `s` of degree `n`. Not available in a
    /// trimmed lowest degree.
    pub fn lift_cell(&self, n: i64, s: usize) -> &[(u32, F::Elem)] {
        let i = self.slot(n).expect("degree in range");
        assert!(!self.lifts[i].is_empty() || self.survivors[i].is_empty(), "no lifts in the trimmed degree {n}");
        &self.lifts[i][s]
    }

    /// `g(x)` for a dense vector over the reduced cells of degree `n`.
    pub fn lift(&self, n: i64, x: &[F::Elem]) -> SparseVec<F::Elem> {
        let mut acc = Accumulator::new(&self.field);
        if let Some(i) = self.slot(n) {
            assert!(!self.lifts[i].is_empty() || self.survivors[i].is_empty(), "no lifts in the trimmed degree {n}");
            for (s, e) in x.iter().enumerate() {
                acc.add_scaled(e, &self.lifts[i][s]);
            }
        }
        acc.into_sorted()
    }
}

fn eliminate_degree<F: Field>(
    f: &F,
    src_filt: &[i32],
    dst_filt: &[i32],
    cols: &[SparseVec<F::Elem>],
    removed: &FxHashSet<u32>,
    filtered: bool,
) -> DegreeOutcome<F::Elem> {
    let ncols = cols.len();
    let mut active = vec![true; ncols];
    let mut work: Vec<SparseVec<F::Elem>> = Vec::with_capacity(ncols);
    for (j, col) in cols.iter().enumerate() {
        if removed.contains(&(j as u32)) {
            active[j] = false;
            work.push(Vec::new());
        } else {
            work.push(col.clone());
        }
    }
    let mut rows: Vec<FxHashSet<u32>> = vec![FxHashSet::default(); dst_filt.len()];
    for (j, col) in work.iter().enumerate() {
        for (t, _) in col {
            rows[*t as usize].insert(j as u32);
        }
    }
    let mut log = Vec::new();
    let mut threshold: usize = 0;
    loop {
        let mut progress = 0usize;
        let mut candidates = 0usize;
        for a in 0..ncols {
            if !active[a] || work[a].is_empty() {
                continue;
            }
            let fa = src_filt[a];
            let mut best: Option<(usize, u32)> = None;
            for (b, _) in &work[a] {
                if filtered && dst_filt[*b as usize] != fa {
                    continue;
                }
                let rl = rows[*b as usize].len();
                if best.is_none_or(|(r, _)| rl < r) {
                    best = Some((rl, *b));
                }
            }
            let Some((rl, b)) = best else { continue };
            candidates += 1;
            let cost = (work[a].len() - 1) * (rl - 1);
            if cost > threshold {
                continue;
            }
            progress += 1;
            let col_a = std::mem::take(&mut work[a]);
            let c = col_a.iter().find(|(t, _)| *t == b).unwrap().1.clone();
            let cinv = f.inv(&c);
            let gamma: SparseVec<F::Elem> = col_a.iter().filter(|(t, _)| *t != b).cloned().collect();
            for (t, _) in &col_a {
                rows[*t as usize].remove(&(a as u32));
            }
            let mut hitters: Vec<u32> = rows[b as usize].iter().copied().collect();
            hitters.sort_unstable();
            let mut kappa = Vec::with_capacity(hitters.len());
            for x in hitters {
                let xu = x as usize;
                let k = work[xu].iter().find(|(t, _)| *t == b).unwrap().1.clone();
                let s = f.neg(&f.mul(&k, &cinv));
                let (merged, added, dropped) = axpy(f, &work[xu], &s, &col_a);
                work[xu] = merged;
                for t in added {
                    rows[t as usize].insert(x);
                }
                for t in dropped {
                    rows[t as usize].remove(&x);
                }
                kappa.push((x, k));
            }
            debug_assert!(rows[b as usize].is_empty());
            active[a] = false;
            log.push(Elimination { a: a as u32, b, c, gamma, kappa });
        }
        if candidates == 0 {
            break;
        }
        if progress == 0 {
            threshold = (threshold * 2).max(1);
        }
    }
    let remaining = (0..ncols).filter(|&j| active[j]).map(|j| (j as u32, std::mem::take(&mut work[j]))).collect();
    DegreeOutcome { log, remaining }
}

/// `x + s·y` for sorted sparse vectors; also returns indices that became
/// nonzero and indices that cancelled.
#[allow(clippy::type_complexity)]
fn axpy<F: Field>(f: &F, x: &[(u32, F::Elem)], s: &F::Elem, y: &[(u32, F::Elem)]) -> (SparseVec<F::Elem>, Vec<u32>, Vec<u32>) {
    let mut out = Vec::with_capacity(x.len() + y.len());
    let (mut added, mut dropped) = (Vec::new(), Vec::new());
    let (mut i, mut j) = (0, 0);
    while i < x.len() || j < y.len() {
        let xi = x.get(i).map_or(u32::MAX, |e| e.0);
        let yj = y.get(j).map_or(u32::MAX, |e| e.0);
        if xi < yj {
            out.push(x[i].clone());
            i += 1;
        } else if yj < xi {
            out.push((yj, f.mul(s, &y[j].1)));
            added.push(yj);
            j += 1;
        } else {
            let v = f.mul_add(&x[i].1, s, &y[j].1);
            if f.is_zero(&v) {
                dropped.push(xi);
            } else {
                out.push((xi, v));
            }
            i += 1;
            j += 1;
        }
    }
    (out, added, dropped)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactla::sparse::to_dense;
    use crate::exactla::{PrimeField, RationalField};

    /// Small complex: degree 0 cells {u, v}, degree 1 cells {w, y}, degree 2 {z}.
    /// d u = w - y, d v = 0, d w = z, d y = z.
    fn sample<F: Field>(f: &F, filt: [[i32; 2]; 2], z_filt: i32) -> SparseComplex<F> {
        let one = f.one();
        let m1 = f.neg(&one);
        SparseComplex::new(
            f,
            0,
            vec![filt[0].to_vec(), filt[1].to_vec(), vec![z_filt]],
            vec![vec![vec![(0, one.clone()), (1, m1)], Vec::new()], vec![vec![(0, one.clone())], vec![(0, one.clone())]], vec![Vec::new()]],
            (0, 2),
        )
    }

    fn check_retract<F: Field>(c: &SparseComplex<F>, r: &Reduction<F>) {
        let f = c.field();
        let rc = r.reduced();
        for n in c.lo()..=c.hi() {
            for s in 0..rc.dim(n) {
                let g = r.lift_cell(n, s);
                // f g = 1
                let mut unit = vec![f.zero(); rc.dim(n)];
                unit[s] = f.one();
                assert_eq!(r.project(n, g), unit);
                // d g = g d_R
                if n < c.hi() {
                    let lhs = c.apply_d(n, g);
                    let rhs = r.lift(n + 1, &rc.apply_d(n, &unit));
                    assert_eq!(to_dense(f, c.dim(n + 1), &lhs), to_dense(f, c.dim(n + 1), &rhs));
                }
            }
        }
    }

    #[test]
    fn unfiltered_reduction_is_cohomology() {
        let q = RationalField;
        let c = sample(&q, [[0, 0], [0, 0]], 0);
        assert!(c.find_dd_violation().is_none());
        let r = Reduction::new(&c, true, |n, j| format!("{n}.{j}")).unwrap();
        let dense = c.to_dense(|n, j| format!("{n}.{j}")).unwrap();
        for n in 0..=2 {
            assert_eq!(r.reduced().dim(n), dense.cohomology(n).unwrap().dim());
            assert!(r.reduced().d(n).is_zero());
        }
        check_retract(&c, &r);
    }

    #[test]
    fn filtration_blocks_cross_pairs() {
        let f = PrimeField::new(3).unwrap();
        // u, v in filtration 1; w, y, z in filtration 0: nothing may cancel.
        let c = sample(&f, [[1, 1], [0, 0]], 0);
        assert!(c.find_filtration_violation().is_none());
        let r = Reduction::new(&c, true, |n, j| format!("{n}.{j}")).unwrap();
        assert_eq!(r.eliminated_pairs(), 1);
        assert_eq!(r.reduced().dim(0), 2);
        check_retract(&c, &r);
    }

    #[test]
    fn axpy_tracks_fill_and_cancellation() {
        let f = PrimeField::new(5).unwrap();
        let (v, added, dropped) = axpy(&f, &[(0, 1), (2, 3)], &1, &[(1, 1), (2, 2)]);
        assert_eq!(v, vec![(0, 1), (1, 1)]);
        assert_eq!(added, vec![1]);
        assert_eq!(dropped, vec![2]);
    }
}
