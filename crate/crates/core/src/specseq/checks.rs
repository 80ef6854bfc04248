use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::Serialize;

use crate::dga::{DGAlgebra, DGBimodule};
use crate::exactla::sparse::{Accumulator, SparseVec};
use crate::exactla::{Field, Matrix, Subspace};
use crate::graded::CohomologyPiece;
use crate::hochschild::{ext_algebra, Coefficients, CohomologyAlgebra, HochschildComplex, HochschildError, Shearing};

use super::page::{cycles, Page};
use super::{SpecSeqError, SpectralSequence};

/// Outcome of one named verification.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

impl Check {
    pub fn new(name: impl Into<String>, outcome: Result<String, String>) -> Self {
        let (passed, detail) = match outcome {
            Ok(d) => (true, d),
            Err(d) => (false, d),
        };
        Check { name: name.into(), passed, detail }
    }
}

fn add_vecs<F: Field>(f: &F, a: &mut [F::Elem], b: &[F::Elem], s: &F::Elem) {
    for (x, y) in a.iter_mut().zip(b) {
        *x = f.mul_add(x, s, y);
    }
}

fn span_dim<F: Field>(f: &F, ambient: usize, vecs: impl IntoIterator<Item = Vec<F::Elem>>) -> usize {
    Subspace::span(f, ambient, vecs).dim()
}

/// `d^r ∘ d^r = 0` on every page wherever both maps are in the window.
pub fn square_zero<F: Field>(ss: &SpectralSequence<F>) -> Check {
    let mut count = 0;
    for pg in ss.pages() {
        let r = pg.r as i64;
        for (&(n, p), d1) in pg.differentials() {
            let Some(d2) = pg.differential(n + 1, p - r) else { continue };
            if d1.rows() > 0 && d2.rows() > 0 && d1.cols() > 0 && !d2.mul(d1).is_zero() {
                return Check::new("page d∘d = 0", Err(format!("d^{r} ∘ d^{r} ≠ 0 from ({n},{p})")));
            }
            count += 1;
        }
    }
    Check::new("page d∘d = 0", Ok(format!("{count} composites over {} pages", ss.pages().len())))
}

/// `E^{r+1} ≅ ker d^r / im d^r` cell-wise: representatives of `E^{r+1}`
/// map to `d^r`-cycles of `E^r` that are independent modulo boundaries, and
/// `dim E^{r+1} = dim ker d^r - dim im d^r` wherever both maps are known.
pub fn lineage<F: Field>(ss: &SpectralSequence<F>) -> Check {
    let f = ss.filtered.field();
    let w = ss.window();
    let mut count = 0;
    for pair in ss.pages().windows(2) {
        let (cur, next) = (&pair[0], &pair[1]);
        let r = cur.r as i64;
        for c2 in next.cells() {
            let (n, p) = (c2.n, c2.p);
            let c = cur.cell(n, p).expect("same cells on every page");
            let lin: Vec<Vec<F::Elem>> = c2.reps().iter().map(|z| c.coordinates(f, z)).collect();
            let mut ker = None;
            if let Some(d) = cur.differential(n, p) {
                if lin.iter().any(|v| d.mul_vec(v).iter().any(|e| !f.is_zero(e))) {
                    return Check::new("page lineage", Err(format!("E^{}({n},{p}) class is not a d^{r}-cycle", r + 1)));
                }
                ker = Some(c.dim() - d.rank());
            }
            let incoming: Option<Vec<Vec<F::Elem>>> = if p + r > 0 {
                Some(Vec::new())
            } else if n - 1 < -w {
                None
            } else {
                cur.differential(n - 1, p + r).map(|d| (0..d.cols()).map(|j| d.column(j)).collect())
            };
            if let Some(inc) = incoming {
                let im = span_dim(f, c.dim(), inc.iter().cloned());
                let all = span_dim(f, c.dim(), lin.iter().cloned().chain(inc));
                if all != im + c2.dim() {
                    return Check::new("page lineage", Err(format!("E^{}({n},{p}) classes are dependent modulo boundaries", r + 1)));
                }
                if let Some(k) = ker {
                    if c2.dim() + im != k {
                        return Check::new(
                            "page lineage",
                            Err(format!("dim E^{}({n},{p}) = {} but ker - im = {k} - {im}", r + 1, c2.dim())),
                        );
                    }
                }
            }
            count += 1;
        }
    }
    Check::new("page lineage", Ok(format!("{count} cells")))
}

/// `E^1(n, p)` against `HH^n(A; A^{-p})` computed directly with the slice
/// bimodule as coefficients. Returns `(filtered, direct)` per cell.
#[allow(clippy::type_complexity)]
pub fn e1_term<F: Field>(
    a: &DGAlgebra<F>,
    ss: &SpectralSequence<F>,
    budget: usize,
) -> Result<(Check, BTreeMap<(i64, i64), (usize, usize)>), SpecSeqError> {
    let w = ss.window();
    let e1 = ss.page(1)?;
    let mut table = BTreeMap::new();
    let mut bad = None;
    for p in -ss.filtered.depth()..=0 {
        let direct: Option<crate::graded::CochainComplex<F>> = if a.indices_in_degree(-p).is_empty() {
            None
        } else {
            let slice = a.subquotient(-p).map_err(HochschildError::from)?;
            let hc = HochschildComplex::new(a, slice, Coefficients::Module, w, budget)?;
            Some(hc.reduce(false).map_err(HochschildError::from)?.reduced().clone())
        };
        for n in -w..=w {
            let d = direct.as_ref().map_or(0, |c| c.dim(n));
            let e = e1.dim(n, p);
            if d != e && bad.is_none() {
                bad = Some(format!("E^1 at n={n}, p={p}: {e} vs {d}"));
            }
            if d > 0 || e > 0 {
                table.insert((n, p), (e, d));
            }
        }
    }
    let check = Check::new("E^1 = Ext(A, A^{-p})", bad.map_or_else(|| Ok(format!("{} nonzero cells", table.len())), Err));
    Ok((check, table))
}

/// `E^2 ≅ H(A) ⊗ Ext_A(k, k)`: the class of `h ⌣ ẽ` for a cocycle `h` of
/// `A` and the unit-coefficient lift `ẽ` of an Ext cocycle.
#[derive(Clone, Debug)]
pub struct E2Identification<F: Field> {
    /// `Ext_A(k, k)` on the enlarged window `w + D` so every `E^2` cell is covered.
    pub ext: CohomologyAlgebra<F>,
    pub homology: BTreeMap<i64, (CohomologyPiece<F>, Vec<SparseVec<F::Elem>>)>,
    /// Columns indexed by `i · dim Ext^{n+p} + k` for `h_i ∈ H^{-p}`, `e_k ∈ Ext^{n+p}`.
    phi: BTreeMap<(i64, i64), Matrix<F>>,
}

pub fn e2_identification<F: Field>(
    a: &DGAlgebra<F>,
    hh: &CohomologyAlgebra<F>,
    ss: &SpectralSequence<F>,
    budget: usize,
) -> Result<E2Identification<F>, SpecSeqError> {
    let f = a.field();
    let w = ss.window();
    let depth = ss.filtered.depth();
    let ext = ext_algebra(a, w + depth, budget)?;
    let homology = a.cohomology().map_err(HochschildError::from)?;
    let page = ss.page(2)?;
    let mut phi = BTreeMap::new();
    for n in -w..=w {
        for p in -depth..=0 {
            let Some(cell) = page.cell(n, p) else { continue };
            let m = n + p;
            let hreps: &[SparseVec<F::Elem>] = homology.get(&-p).map_or(&[], |(_, r)| r);
            let edim = ext.table.dim(m);
            let mut mat = Matrix::zeros(f, cell.dim(), hreps.len() * edim);
            for (i, h) in hreps.iter().enumerate() {
                for k in 0..edim {
                    let mut acc = Accumulator::new(f);
                    for (cj, c) in ext.representative(m, k) {
                        let (_, word) = ext.complex.decode(m, *cj as usize);
                        for (ai, ca) in h {
                            let idx = hh
                                .complex
                                .try_index(n, *ai as usize, word)
                                .ok_or_else(|| SpecSeqError::Internal(format!("no cell for h ⊗ e in degree {n}")))?;
                            acc.add(idx, &f.mul(c, ca));
                        }
                    }
                    let v = hh.reduction.project(n, &acc.into_sorted());
                    if !ss.filtered.in_filtration(n, p, &v) || !ss.filtered.in_filtration(n + 1, p - 2, &ss.filtered.apply_d(n, &v)) {
                        return Err(SpecSeqError::Internal(format!("h ⊗ e is not a 2-cycle at ({n},{p})")));
                    }
                    for (row, e) in cell.coordinates(f, &v).into_iter().enumerate() {
                        mat.set(row, i * edim + k, e);
                    }
                }
            }
            phi.insert((n, p), mat);
        }
    }
    Ok(E2Identification { ext, homology, phi })
}

impl<F: Field> E2Identification<F> {
    pub fn h_dim(&self, j: i64) -> usize {
        self.homology.get(&j).map_or(0, |(p, _)| p.dim())
    }

    /// `Φ(h ⊗ e)` in `E^2(n, p)` coordinates.
    pub fn phi(&self, n: i64, p: i64, h: &[F::Elem], e: &[F::Elem]) -> Vec<F::Elem> {
        let f = self.ext.table.field();
        let Some(m) = self.phi.get(&(n, p)) else { return Vec::new() };
        let edim = e.len();
        let mut out = vec![f.zero(); m.rows()];
        for (i, hi) in h.iter().enumerate() {
            for (k, ek) in e.iter().enumerate() {
                let c = f.mul(hi, ek);
                if !f.is_zero(&c) {
                    add_vecs(f, &mut out, &m.column(i * edim + k), &c);
                }
            }
        }
        out
    }

    /// `dim E^2(n, p) = dim H^{-p}(A) · dim Ext^{n+p}` and `Φ` is invertible.
    pub fn check_dims(&self, ss: &SpectralSequence<F>) -> Check {
        let page = ss.page(2).expect("page 2");
        for (&(n, p), m) in &self.phi {
            let want = self.h_dim(-p) * self.ext.table.dim(n + p);
            if page.dim(n, p) != want {
                return Check::new("E^2 = H ⊗ Ext dims", Err(format!("({n},{p}): {} vs {want}", page.dim(n, p))));
            }
            if m.rank() != want {
                return Check::new("E^2 = H ⊗ Ext dims", Err(format!("({n},{p}): identification is not injective")));
            }
        }
        Check::new("E^2 = H ⊗ Ext dims", Ok(format!("{} cells", self.phi.len())))
    }

    /// `E^2(n, p)` against `HH^n(A; H^{-p}(A))` with trivially acting
    /// coefficients, computed directly.
    pub fn check_direct(&self, a: &DGAlgebra<F>, ss: &SpectralSequence<F>, budget: usize) -> Result<Check, SpecSeqError> {
        let w = ss.window();
        let page = ss.page(2)?;
        for p in -ss.filtered.depth()..=0 {
            let j = -p;
            let hd = self.h_dim(j);
            let direct = if hd == 0 {
                None
            } else {
                let basis: Vec<(String, i64)> = (0..hd).map(|i| (format!("h{j}_{i}"), j)).collect();
                let m = DGBimodule::trivial(a, &basis);
                let hc = HochschildComplex::new(a, m, Coefficients::Module, w, budget)?;
                Some(hc.reduce(false).map_err(HochschildError::from)?.reduced().clone())
            };
            for n in -w..=w {
                let d = direct.as_ref().map_or(0, |c| c.dim(n));
                if d != page.dim(n, p) {
                    return Ok(Check::new("E^2 = HH(A; H(A))", Err(format!("({n},{p}): {} vs {d}", page.dim(n, p)))));
                }
            }
        }
        Ok(Check::new("E^2 = HH(A; H(A))", Ok("all cells".into())))
    }

    fn h_product(&self, a: &DGAlgebra<F>, j1: i64, i1: usize, j2: i64, i2: usize) -> Vec<F::Elem> {
        let f = a.field();
        let Some((piece, _)) = self.homology.get(&(j1 + j2)) else { return Vec::new() };
        let x = &self.homology[&j1].1[i1];
        let y = &self.homology[&j2].1[i2];
        let idx = a.indices_in_degree(j1 + j2);
        let mut dense = vec![f.zero(); idx.len()];
        for (t, e) in a.mul_vec(x, y) {
            let pos = idx.iter().position(|&q| q == t as usize).expect("degree of product");
            dense[pos] = e;
        }
        piece.class_of(&dense).expect("product of cocycles is a cocycle")
    }

    /// The `E^2` product of `Φ(h ⊗ e)` and `Φ(h' ⊗ e')` equals
    /// `(-1)^{|e||h'|} Φ(hh' ⊗ ee')` on all basis pairs.
    pub fn check_products(&self, a: &DGAlgebra<F>, hh: &CohomologyAlgebra<F>, ss: &SpectralSequence<F>) -> Check {
        let f = a.field();
        let w = ss.window();
        let basis: Vec<(i64, i64, usize, usize)> = self
            .phi
            .keys()
            .flat_map(|&(n, p)| {
                let hd = self.h_dim(-p);
                let ed = self.ext.table.dim(n + p);
                (0..hd).flat_map(move |i| (0..ed).map(move |k| (n, p, i, k)))
            })
            .collect();
        let unit = |len: usize, i: usize| {
            let mut v = vec![f.zero(); len];
            v[i] = f.one();
            v
        };
        let jobs: Vec<((i64, i64, usize, usize), (i64, i64, usize, usize))> =
            basis.iter().flat_map(|&x| basis.iter().map(move |&y| (x, y))).filter(|(x, y)| x.0 + y.0 >= -w && x.0 + y.0 <= w).collect();
        let res: Result<usize, String> = jobs
            .par_iter()
            .map(|&((n1, p1, i1, k1), (n2, p2, i2, k2))| {
                let (m1, m2) = (n1 + p1, n2 + p2);
                let (j1, j2) = (-p1, -p2);
                let x = self.phi(n1, p1, &unit(self.h_dim(j1), i1), &unit(self.ext.table.dim(m1), k1));
                let y = self.phi(n2, p2, &unit(self.h_dim(j2), i2), &unit(self.ext.table.dim(m2), k2));
                let lhs = match ss.product(hh, 2, (n1, p1, &x), (n2, p2, &y)) {
                    Some(Ok(v)) => v,
                    Some(Err(e)) => return Err(e.to_string()),
                    None => return Ok(0),
                };
                let (n, p) = (n1 + n2, p1 + p2);
                let rhs = if p < -ss.filtered.depth() || self.h_dim(-p) == 0 {
                    vec![f.zero(); lhs.len()]
                } else {
                    let h = self.h_product(a, j1, i1, j2, i2);
                    let e = self
                        .ext
                        .table
                        .basis_product(m1, k1, m2, k2)
                        .map(<[F::Elem]>::to_vec)
                        .unwrap_or_else(|| vec![f.zero(); self.ext.table.dim(m1 + m2)]);
                    let s = f.sign((m1 * j2).rem_euclid(2) == 1);
                    self.phi(n, p, &h, &e).into_iter().map(|c| f.mul(&s, &c)).collect()
                };
                if lhs != rhs {
                    return Err(format!("Φ product mismatch at ({n1},{p1})·({n2},{p2})"));
                }
                Ok(1)
            })
            .try_reduce(|| 0, |a, b| Ok(a + b));
        Check::new("E^2 product = H ⊗ Ext product", res.map(|c| format!("{c} basis pairs")))
    }
}

/// `d^r(xy) = d^r(x) y + (-1)^{|x|} x d^r(y)` for all basis pairs on every page.
pub fn leibniz<F: Field>(hh: &CohomologyAlgebra<F>, ss: &SpectralSequence<F>) -> Check {
    let f = ss.filtered.field();
    let w = ss.window();
    let mut total = 0usize;
    for pg in ss.pages() {
        let r = pg.r as i64;
        let keys: Vec<(i64, i64)> = pg.cells().filter(|c| c.dim() > 0).map(|c| (c.n, c.p)).collect();
        type Lifted<E> = (Vec<SparseVec<E>>, Option<Vec<SparseVec<E>>>);
        let lifted: BTreeMap<(i64, i64), Lifted<F::Elem>> = keys
            .par_iter()
            .map(|&(n, p)| {
                let c = pg.cell(n, p).unwrap();
                let reps = c.reps().iter().map(|z| hh.reduction.lift(n, z)).collect();
                let dx = pg.differential(n, p).map(|d| {
                    (0..c.dim())
                        .map(|i| match pg.cell(n + 1, p - r) {
                            Some(t) if t.dim() > 0 => hh.reduction.lift(n + 1, &t.combine(f, ss.filtered.dim(n + 1), &d.column(i))),
                            _ => Vec::new(),
                        })
                        .collect()
                });
                ((n, p), (reps, dx))
            })
            .collect();
        let jobs: Vec<((i64, i64), (i64, i64))> = keys
            .iter()
            .flat_map(|&a| keys.iter().map(move |&b| (a, b)))
            .filter(|&((n1, p1), (n2, p2))| {
                let n = n1 + n2;
                n >= -w && n < w && pg.dim(n + 1, p1 + p2 - r) > 0
            })
            .collect();
        let res: Result<usize, String> = jobs
            .par_iter()
            .map(|&((n1, p1), (n2, p2))| {
                let (n, p) = (n1 + n2, p1 + p2);
                let t = pg.cell(n + 1, p - r).unwrap();
                let prod_cell = pg.cell(n, p);
                let d_prod = pg.differential(n, p);
                let (xs, dxs) = &lifted[&(n1, p1)];
                let (ys, dys) = &lifted[&(n2, p2)];
                let (Some(dxs), Some(dys)) = (dxs, dys) else { return Ok(0) };
                let s = f.sign(n1.rem_euclid(2) == 1);
                let err = |e: SpecSeqError| e.to_string();
                let mut count = 0;
                for (x, dx) in xs.iter().zip(dxs) {
                    for (y, dy) in ys.iter().zip(dys) {
                        let xy = ss.product_of_lifts(hh, pg.r, (n, p), prod_cell, x, n1, y, n2).map_err(err)?;
                        let lhs = match (prod_cell, d_prod) {
                            (Some(c), Some(d)) if c.dim() > 0 => d.mul_vec(&xy),
                            _ => vec![f.zero(); t.dim()],
                        };
                        let mut rhs = ss.product_of_lifts(hh, pg.r, (n + 1, p - r), Some(t), dx, n1 + 1, y, n2).map_err(err)?;
                        let t2 = ss.product_of_lifts(hh, pg.r, (n + 1, p - r), Some(t), x, n1, dy, n2 + 1).map_err(err)?;
                        add_vecs(f, &mut rhs, &t2, &s);
                        if lhs != rhs {
                            return Err(format!("Leibniz fails on E^{r} for ({n1},{p1}) × ({n2},{p2})"));
                        }
                        count += 1;
                    }
                }
                Ok(count)
            })
            .try_reduce(|| 0, |a, b| Ok(a + b));
        match res {
            Ok(c) => total += c,
            Err(e) => return Check::new("Leibniz on pages", Err(e)),
        }
    }
    Check::new("Leibniz on pages", Ok(format!("{total} basis pairs with nonzero target")))
}

/// The classes of `E^2(n, 0)` that survive to `E^∞` against the image of
/// the shearing map under the identification. Returns per degree the
/// dimension of both subspaces.
#[allow(clippy::type_complexity)]
pub fn column_zero_survivors<F: Field>(
    a: &DGAlgebra<F>,
    hh: &CohomologyAlgebra<F>,
    ss: &SpectralSequence<F>,
    e2: &E2Identification<F>,
    budget: usize,
) -> Result<(Check, BTreeMap<i64, (usize, usize)>), SpecSeqError> {
    let f = a.field();
    let w = ss.window();
    let ext_small = ext_algebra(a, w, budget)?;
    let shr = Shearing::new(hh, &ext_small)?;
    let page = ss.page(2)?;
    let depth = ss.filtered.depth() as usize;
    let mut dims = BTreeMap::new();
    let mut bad = None;
    for n in -w..=w {
        let Some(cell) = page.cell(n, 0) else { continue };
        let surv =
            Subspace::span(f, cell.dim(), cycles(&ss.filtered, n, depth + 1, 0).basis_vecs().into_iter().map(|z| cell.coordinates(f, &z)));
        let mut image = Vec::new();
        if let Some(im) = shr.image.get(&n) {
            for v in im.basis_vecs() {
                let rep = ext_small.representative_of(n, &v);
                let e = e2
                    .ext
                    .class_of_cochain(n, &rep)
                    .ok_or_else(|| SpecSeqError::Internal(format!("shearing image in degree {n} is not an Ext cocycle")))?;
                image.push(e2.phi(n, 0, &[f.one()], &e));
            }
        }
        let image = Subspace::span(f, cell.dim(), image);
        if surv.dim() > 0 || image.dim() > 0 {
            dims.insert(n, (surv.dim(), image.dim()));
        }
        if (!surv.contains_subspace(&image) || !image.contains_subspace(&surv)) && bad.is_none() {
            bad = Some(format!("degree {n}: survivors {} vs shearing image {}", surv.dim(), image.dim()));
        }
    }
    let check = Check::new("E^2_{0,*} survivors = shearing image", bad.map_or_else(|| Ok(format!("{} degrees", dims.len())), Err));
    Ok((check, dims))
}

/// One total degree of the abutment comparison.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AbutmentRow {
    pub n: i64,
    pub hh: usize,
    /// `dim E^∞(n, p)` by `p`.
    pub e_infinity: BTreeMap<i64, usize>,
    /// `dim Im_p / Im_{p-1}` where `Im_p` is the image of `H^n(F_p)` in `HH^n`.
    pub graded: BTreeMap<i64, usize>,
}

/// `Σ_p dim E^∞(n, p) = dim HH^n` and the graded pieces of the filtration
/// of `HH^n` match `E^∞` cell by cell.
pub fn abutment<F: Field>(hh: &CohomologyAlgebra<F>, ss: &SpectralSequence<F>) -> (Check, Vec<AbutmentRow>) {
    let f = ss.filtered.field();
    let w = ss.window();
    let depth = ss.filtered.depth();
    let inf = ss.infinity();
    let mut rows = Vec::new();
    let mut bad = None;
    for n in -w..=w {
        let hd = hh.table.dim(n);
        let mut e_infinity = BTreeMap::new();
        let mut graded = BTreeMap::new();
        let mut below = 0;
        for p in -depth..=0 {
            let im = match hh.pieces.get(&n) {
                Some(piece) => {
                    let classes = cycles(&ss.filtered, n, depth as usize + 1, p)
                        .basis_vecs()
                        .into_iter()
                        .map(|z| piece.class_of(&z).expect("cycle of the reduced complex"));
                    span_dim(f, hd, classes)
                }
                None => 0,
            };
            if inf.dim(n, p) > 0 {
                e_infinity.insert(p, inf.dim(n, p));
            }
            if im > below {
                graded.insert(p, im - below);
            }
            below = im;
        }
        let total: usize = e_infinity.values().sum();
        if (total != hd || e_infinity != graded) && bad.is_none() {
            bad = Some(format!("degree {n}: Σ E^∞ = {total}, HH = {hd}"));
        }
        if hd > 0 || total > 0 {
            rows.push(AbutmentRow { n, hh: hd, e_infinity, graded });
        }
    }
    let check = Check::new("E^∞ = gr HH", bad.map_or_else(|| Ok(format!("{} degrees", rows.len())), Err));
    (check, rows)
}

/// One power in the Frobenius check.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FrobeniusRow {
    pub page: usize,
    pub power: u64,
    pub degree: i64,
    /// `None` when the power falls outside the window.
    pub survives: Option<bool>,
}

/// Outcome of the Frobenius check.
#[derive(Clone, Debug, Serialize)]
pub struct FrobeniusReport {
    pub check: Check,
    /// Degree and label of the class, `None` when the check is vacuous.
    pub class: Option<(i64, String)>,
    /// Whether the class is graded-central in the Ext window.
    pub central: bool,
    pub rows: Vec<FrobeniusRow>,
}

/// Over `F_p`: for an even class `x ∈ Ext^m`, `x^{p^{r-1}}` survives to
/// `E^{r+1}` for every page `r ≥ 2`. Without a given class the first
/// central one of even negative degree is used, falling back to the first
/// even class when the center has none. Vacuous when the sequence
/// degenerates at `E^2`.
pub fn frobenius_cycles<F: Field>(
    ss: &SpectralSequence<F>,
    e2: &E2Identification<F>,
    class: Option<(i64, Vec<F::Elem>)>,
) -> Result<FrobeniusReport, SpecSeqError> {
    let f = ss.filtered.field();
    let p = f.characteristic();
    if p == 0 {
        return Err(SpecSeqError::NeedsPositiveCharacteristic("the Frobenius check"));
    }
    let w = ss.window();
    let table = &e2.ext.table;
    let degenerate = ss.pages().iter().skip(1).all(Page::is_zero_differential);
    let even: Vec<i64> = (-w..=-1).rev().filter(|m| m % 2 == 0 && table.dim(*m) > 0).collect();
    let chosen = match class {
        Some((m, x)) => Some((m, x)),
        None => even
            .iter()
            .find_map(|&m| table.center(m).basis_vecs().into_iter().next().map(|x| (m, x)))
            .or_else(|| even.first().map(|&m| (m, table.basis_vector(m, 0)))),
    };
    let Some((m, x)) = chosen else {
        if degenerate {
            let check = Check::new("Frobenius powers are d^r-cycles", Ok("vacuous: no differentials from E^2 on".into()));
            return Ok(FrobeniusReport { check, class: None, central: true, rows: Vec::new() });
        }
        return Err(SpecSeqError::NoEvenCentralClass);
    };
    let central = table.commutes_with_all(m, &x).is_ok();
    let label = table.format_element(m, &x);
    let mut rows = Vec::new();
    let mut bad = None;
    for r in 2..=ss.pages().len().max(2) {
        let power = p.pow(r as u32 - 1);
        let degree = m * power as i64;
        if degree < -w {
            rows.push(FrobeniusRow { page: r, power, degree, survives: None });
            continue;
        }
        let mut y = x.clone();
        let mut deg = m;
        for _ in 1..power {
            y = table.product(deg, &y, m, &x).expect("power inside the Ext window");
            deg += m;
        }
        let page = ss.page(2)?;
        let cell = page.cell(degree, 0).expect("cell in window");
        let target = e2.phi(degree, 0, &[f.one()], &y);
        let surv =
            Subspace::span(f, cell.dim(), cycles(&ss.filtered, degree, r + 1, 0).basis_vecs().into_iter().map(|z| cell.coordinates(f, &z)));
        let ok = surv.contains(&target);
        if !ok && bad.is_none() {
            bad = Some(format!("{label}^{power} does not survive to E^{}", r + 1));
        }
        rows.push(FrobeniusRow { page: r, power, degree, survives: Some(ok) });
    }
    let checked = rows.iter().filter(|r| r.survives.is_some()).count();
    let kind = if central { "central" } else { "non-central" };
    let check = Check::new(
        "Frobenius powers are d^r-cycles",
        bad.map_or_else(|| Ok(format!("{kind} {label} in degree {m}: {checked} pages in window")), Err),
    );
    Ok(FrobeniusReport { check, class: Some((m, label)), central, rows })
}
