//! Independent cross-check: Hochschild cochains computed from the
//! unnormalized two-sided bar construction.
//!
//! Here `B(A, A, A) = ⊕_s Σ^s A ⊗ A^{⊗s} ⊗ A` with unshifted tensors, the
//! realization differential `(-1)^s ∂ + Σ_i (-1)^i d_i`, and cochains are
//! `A^e`-linear maps `B → M` determined by their values on `1[b_1|…|b_s]1`,
//! where letters range over the whole basis including the unit. The matrix
//! entries are computed target-side, by expanding faces of each bar word.
//!
//! The complex is infinite in each degree because of unit letters, so only
//! normalized cochains (vanishing on words containing the unit) are kept;
//! the code checks that this subspace is closed under the differential on
//! every word with exactly one unit letter, which is where closure could
//! fail. By the normalization theorem the subcomplex has the same
//! cohomology as the full one.

use std::collections::{BTreeMap, HashMap};

use crate::dga::{DGAlgebra, DGBimodule};
use crate::exactla::sparse::{Accumulator, SparseVec};
use crate::exactla::{Field, Matrix};
use crate::graded::reduce::{Reduction, SparseComplex};
use crate::graded::{CochainComplex, GradedVectorSpace};

type Letters = Vec<usize>;

enum Action {
    Scalar,
    Left(usize),
    Right(usize),
}

/// Normalized cochains `C^n = ⊕_m Hom(Ā^{⊗s}, k·m)` built target-side.
pub struct UnnormalizedOracle<F: Field> {
    field: F,
    lo: i64,
    hi: i64,
    window: i64,
    cells: BTreeMap<i64, Vec<(Letters, usize)>>,
    index: HashMap<(Letters, usize), usize>,
    /// `rows[n]`: entries `(target, source, value)` of `δ^n`.
    entries: BTreeMap<i64, Vec<(usize, usize, F::Elem)>>,
}

impl<F: Field> UnnormalizedOracle<F> {
    pub fn new(a: &DGAlgebra<F>, m: &DGBimodule<F>, window: i64) -> Result<Self, String> {
        let f = a.field().clone();
        let top = m.degrees().iter().copied().max().unwrap_or(0);
        let lo = -window - 1;
        let hi = (window + 1).min(top).max(lo);
        let internal = |w: &[usize]| -> i64 { w.iter().map(|&b| a.degree(b)).sum::<i64>() - w.len() as i64 };

        // Normalized words by bar degree Σ|b| - s, by brute-force extension.
        let max_shift = top - lo;
        let mut words: Vec<Letters> = vec![Vec::new()];
        let mut frontier: Vec<Letters> = vec![Vec::new()];
        while !frontier.is_empty() {
            let mut next = Vec::new();
            for w in &frontier {
                for b in 1..a.dim() {
                    let mut v = w.clone();
                    v.push(b);
                    if a.degree(b) < 2 {
                        return Err(format!("letter `{}` has degree below 2", a.name(b)));
                    }
                    if internal(&v) <= max_shift {
                        next.push(v);
                    }
                }
            }
            words.extend(next.iter().cloned());
            frontier = next;
        }
        let mut cells: BTreeMap<i64, Vec<(Letters, usize)>> = BTreeMap::new();
        for mi in 0..m.dim() {
            for w in &words {
                let n = m.degree(mi) - internal(w);
                if n >= lo && n <= hi {
                    cells.entry(n).or_default().push((w.clone(), mi));
                }
            }
        }
        for v in cells.values_mut() {
            v.sort();
        }
        let mut index = HashMap::new();
        for v in cells.values() {
            for (k, c) in v.iter().enumerate() {
                index.insert(c.clone(), k);
            }
        }

        let odd = |k: i64| k.rem_euclid(2) == 1;
        // (δφ)(w') = d_M φ(w') - (-1)^n φ(∂ w') for φ of degree n.
        // Faces of 1[w']1 as (source word, action, coefficient).
        let faces = |w: &[usize]| -> Vec<(Letters, Action, F::Elem)> {
            let s = w.len();
            let mut out = Vec::new();
            let mut koszul = 0i64;
            for j in 0..s {
                for (u, c) in a.d(w[j]) {
                    let mut v = w.to_vec();
                    v[j] = *u as usize;
                    out.push((v, Action::Scalar, f.mul(&f.sign(odd(s as i64 + koszul)), c)));
                }
                koszul += a.degree(w[j]);
            }
            if s > 0 {
                out.push((w[1..].to_vec(), Action::Left(w[0]), f.one()));
                out.push((w[..s - 1].to_vec(), Action::Right(w[s - 1]), f.sign(odd(s as i64))));
            }
            for i in 1..s {
                for (u, c) in a.mul(w[i - 1], w[i]) {
                    let mut v = w[..i - 1].to_vec();
                    v.push(*u as usize);
                    v.extend_from_slice(&w[i + 1..]);
                    out.push((v, Action::Scalar, f.mul(&f.sign(odd(i as i64)), c)));
                }
            }
            out
        };
        // Column contributions of source cell (v, mi) to target word w'.
        let contribute = |w: &[usize], acc: &mut HashMap<(usize, Letters, usize), F::Elem>| {
            let s = w.len() as i64;
            for (v, act, c) in faces(w) {
                if v.contains(&0) {
                    continue;
                }
                for mi in 0..m.dim() {
                    let n = m.degree(mi) - internal(&v);
                    let base = f.mul(&f.neg(&f.sign(odd(n))), &c);
                    let (img, extra): (SparseVec<F::Elem>, F::Elem) = match act {
                        Action::Scalar => (vec![(mi as u32, f.one())], f.one()),
                        Action::Left(b) => (m.left(b, mi).to_vec(), f.sign(odd((s - 1) * a.degree(b) + n * a.degree(b)))),
                        Action::Right(b) => (m.right(mi, b).to_vec(), f.one()),
                    };
                    for (mt, e) in img {
                        let val = f.mul(&base, &f.mul(&extra, &e));
                        let key = (mi, v.clone(), mt as usize);
                        let slot = acc.entry(key).or_insert_with(|| f.zero());
                        *slot = f.add(slot, &val);
                    }
                }
            }
            // d_M term
            if !w.contains(&0) {
                for mi in 0..m.dim() {
                    for (mt, e) in m.d(mi) {
                        let key = (mi, w.to_vec(), *mt as usize);
                        let slot = acc.entry(key).or_insert_with(|| f.zero());
                        *slot = f.add(slot, e);
                    }
                }
            }
        };

        let mut entries: BTreeMap<i64, Vec<(usize, usize, F::Elem)>> = BTreeMap::new();
        for w in &words {
            let mut acc = HashMap::new();
            contribute(w, &mut acc);
            for ((mi, v, mt), val) in acc {
                if f.is_zero(&val) {
                    continue;
                }
                let n = m.degree(mi) - internal(&v);
                let (Some(&src), Some(&dst)) = (index.get(&(v.clone(), mi)), index.get(&(w.clone(), mt))) else { continue };
                if n < lo || n >= hi {
                    continue;
                }
                entries.entry(n).or_default().push((dst, src, val));
            }
        }
        // Closure of normalized cochains: δφ must vanish on words with one unit letter.
        let max_len = words.iter().map(Vec::len).max().unwrap_or(0);
        for w in words.iter().filter(|w| w.len() < max_len + 1) {
            for pos in 0..=w.len() {
                let mut v = w.clone();
                v.insert(pos, 0);
                let mut acc = HashMap::new();
                contribute(&v, &mut acc);
                for ((mi, src, mt), val) in acc {
                    if f.is_zero(&val) {
                        continue;
                    }
                    let n = m.degree(mi) - internal(&src);
                    if n >= lo && n < hi && index.contains_key(&(src.clone(), mi)) {
                        return Err(format!(
                            "normalized cochains are not closed: δ of ({:?}, {}) is nonzero on {:?} (coefficient {})",
                            src,
                            m.name(mi),
                            v,
                            m.name(mt)
                        ));
                    }
                }
            }
        }
        Ok(UnnormalizedOracle { field: f, lo, hi, window, cells, index, entries })
    }

    pub fn dim(&self, n: i64) -> usize {
        self.cells.get(&n).map_or(0, Vec::len)
    }

    /// Number of normalized cochains in the built range.
    pub fn total_dim(&self) -> usize {
        self.index.len()
    }

    fn matrix(&self, n: i64) -> Matrix<F> {
        let mut d = Matrix::zeros(&self.field, self.dim(n + 1), self.dim(n));
        for (r, c, v) in self.entries.get(&n).into_iter().flatten() {
            d.add_to(*r, *c, v);
        }
        d
    }

    /// Dense complex; sensible for small windows only.
    pub fn dense(&self) -> Result<CochainComplex<F>, String> {
        let mut space = GradedVectorSpace::new();
        for (&n, cs) in &self.cells {
            for (k, _) in cs.iter().enumerate() {
                space.push(n, format!("c{k}")).map_err(|e| e.to_string())?;
            }
        }
        let diff = (self.lo..self.hi).map(|n| (n, self.matrix(n))).collect();
        CochainComplex::new(&self.field, space, diff, Some((-self.window, self.window))).map_err(|e| e.to_string())
    }

    fn sparse(&self) -> SparseComplex<F> {
        let mut filt = Vec::new();
        let mut cols = Vec::new();
        for n in self.lo..=self.hi {
            filt.push(vec![0; self.dim(n)]);
            let mut c: Vec<Accumulator<F>> = (0..self.dim(n)).map(|_| Accumulator::new(&self.field)).collect();
            for (r, s, v) in self.entries.get(&n).into_iter().flatten() {
                c[*s].add(*r as u32, v);
            }
            cols.push(c.into_iter().map(Accumulator::into_sorted).collect());
        }
        SparseComplex::new(&self.field, self.lo, filt, cols, (-self.window, self.window))
    }

    /// Cohomology dimensions on `[-window, window]`, nonzero degrees only.
    pub fn cohomology_dims(&self) -> Result<BTreeMap<i64, usize>, String> {
        if self.total_dim() <= 400 {
            let c = self.dense()?;
            return Ok(c.cohomology_dims());
        }
        let sparse = self.sparse();
        if let Some((n, j)) = sparse.find_dd_violation() {
            return Err(format!("δ² ≠ 0 at degree {n}, cell {j}"));
        }
        let r = Reduction::new(&sparse, false, |n, j| format!("{n}.{j}")).map_err(|e| e.to_string())?;
        Ok((-self.window..=self.window).map(|n| (n, r.reduced().dim(n))).filter(|(_, d)| *d > 0).collect())
    }
}
