use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::Serialize;

use crate::exactla::sparse::SparseVec;
use crate::exactla::{Field, Subspace};
use crate::graded::reduce::Reduction;
use crate::graded::CohomologyPiece;

use super::{HochschildComplex, HochschildError};

/// A graded algebra known on a degree window: class labels per degree and
/// structure constants for every product landing in the window.
#[derive(Clone, Debug)]
pub struct GradedAlgebraTable<F: Field> {
    field: F,
    certified: (i64, i64),
    labels: BTreeMap<i64, Vec<String>>,
    /// `products[(n1, n2)][i * dim(n2) + j]`, coordinates in degree `n1 + n2`.
    products: BTreeMap<(i64, i64), Vec<Vec<F::Elem>>>,
    unit: Vec<F::Elem>,
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct TableEntry {
    pub left: String,
    pub right: String,
    pub product: String,
}

impl<F: Field> GradedAlgebraTable<F> {
    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn certified(&self) -> (i64, i64) {
        self.certified
    }

    pub fn in_window(&self, n: i64) -> bool {
        n >= self.certified.0 && n <= self.certified.1
    }

    pub fn dim(&self, n: i64) -> usize {
        self.labels.get(&n).map_or(0, Vec::len)
    }

    pub fn dims(&self) -> BTreeMap<i64, usize> {
        self.labels.iter().filter(|(_, l)| !l.is_empty()).map(|(n, l)| (*n, l.len())).collect()
    }

    pub fn labels(&self, n: i64) -> &[String] {
        self.labels.get(&n).map_or(&[], Vec::as_slice)
    }

    /// Nonzero degrees, ascending.
    pub fn degrees(&self) -> Vec<i64> {
        self.dims().into_keys().collect()
    }

    pub fn unit(&self) -> &[F::Elem] {
        &self.unit
    }

    pub fn basis_vector(&self, n: i64, i: usize) -> Vec<F::Elem> {
        let mut v = vec![self.field.zero(); self.dim(n)];
        v[i] = self.field.one();
        v
    }

    /// Product of basis classes; `None` when the product degree is outside
    /// the window.
    pub fn basis_product(&self, n1: i64, i: usize, n2: i64, j: usize) -> Option<&[F::Elem]> {
        if !self.in_window(n1 + n2) {
            return None;
        }
        if self.dim(n1 + n2) == 0 {
            return Some(&[]);
        }
        self.products.get(&(n1, n2)).map(|p| p[i * self.dim(n2) + j].as_slice())
    }

    /// Bilinear product of arbitrary elements.
    pub fn product(&self, n1: i64, x: &[F::Elem], n2: i64, y: &[F::Elem]) -> Option<Vec<F::Elem>> {
        let f = &self.field;
        let n = n1 + n2;
        if !self.in_window(n) {
            return None;
        }
        let mut out = vec![f.zero(); self.dim(n)];
        for (i, a) in x.iter().enumerate() {
            if f.is_zero(a) {
                continue;
            }
            for (j, b) in y.iter().enumerate() {
                if f.is_zero(b) {
                    continue;
                }
                let ab = f.mul(a, b);
                if let Some(p) = self.basis_product(n1, i, n2, j) {
                    for (k, c) in p.iter().enumerate() {
                        out[k] = f.mul_add(&out[k], &ab, c);
                    }
                }
            }
        }
        Some(out)
    }

    pub fn format_element(&self, n: i64, v: &[F::Elem]) -> String {
        let f = &self.field;
        let terms: Vec<String> = v
            .iter()
            .enumerate()
            .filter(|(_, c)| !f.is_zero(c))
            .map(|(i, c)| if f.is_one(c) { self.labels(n)[i].clone() } else { format!("{c}·{}", self.labels(n)[i]) })
            .collect();
        if terms.is_empty() {
            "0".into()
        } else {
            terms.join(" + ")
        }
    }

    /// Nonzero basis products in the window, in degree order.
    pub fn entries(&self) -> Vec<TableEntry> {
        let mut out = Vec::new();
        for (&(n1, n2), p) in &self.products {
            for (k, v) in p.iter().enumerate() {
                if v.iter().all(|c| self.field.is_zero(c)) {
                    continue;
                }
                let (i, j) = (k / self.dim(n2), k % self.dim(n2));
                out.push(TableEntry {
                    left: self.labels(n1)[i].clone(),
                    right: self.labels(n2)[j].clone(),
                    product: self.format_element(n1 + n2, v),
                });
            }
        }
        out
    }

    pub fn check_unit(&self) -> Result<(), String> {
        for n in self.degrees() {
            for i in 0..self.dim(n) {
                let e = self.basis_vector(n, i);
                let l = self.product(0, &self.unit, n, &e);
                let r = self.product(n, &e, 0, &self.unit);
                if l.as_deref() != Some(&e[..]) || r.as_deref() != Some(&e[..]) {
                    return Err(format!("unit fails on {}", self.labels(n)[i]));
                }
            }
        }
        Ok(())
    }

    /// `(xy)z = x(yz)` on all basis triples whose partial products lie in
    /// the window.
    pub fn check_associative(&self) -> Result<(), String> {
        let degs = self.degrees();
        for &a in &degs {
            for &b in &degs {
                if !self.in_window(a + b) {
                    continue;
                }
                for &c in &degs {
                    if !self.in_window(b + c) || !self.in_window(a + b + c) {
                        continue;
                    }
                    for i in 0..self.dim(a) {
                        let x = self.basis_vector(a, i);
                        for j in 0..self.dim(b) {
                            let y = self.basis_vector(b, j);
                            let xy = self.product(a, &x, b, &y).unwrap();
                            for k in 0..self.dim(c) {
                                let z = self.basis_vector(c, k);
                                let yz = self.product(b, &y, c, &z).unwrap();
                                if self.product(a + b, &xy, c, &z) != self.product(a, &x, b + c, &yz) {
                                    return Err(format!(
                                        "({} {}) {} ≠ {} ({} {})",
                                        self.labels(a)[i],
                                        self.labels(b)[j],
                                        self.labels(c)[k],
                                        self.labels(a)[i],
                                        self.labels(b)[j],
                                        self.labels(c)[k]
                                    ));
                                }
                            }
                        }
                    }
                }
            }
        }
        Ok(())
    }

    /// `x y = (-1)^{|x||y|} y x` for the given element against every basis class.
    pub fn commutes_with_all(&self, n: i64, x: &[F::Elem]) -> Result<(), String> {
        let f = &self.field;
        for m in self.degrees() {
            if !self.in_window(n + m) {
                continue;
            }
            let s = f.sign((n * m).rem_euclid(2) == 1);
            for j in 0..self.dim(m) {
                let y = self.basis_vector(m, j);
                let xy = self.product(n, x, m, &y).unwrap();
                let yx: Vec<F::Elem> = self.product(m, &y, n, x).unwrap().iter().map(|c| f.mul(&s, c)).collect();
                if xy != yx {
                    return Err(format!("{} does not graded-commute with {}", self.format_element(n, x), self.labels(m)[j]));
                }
            }
        }
        Ok(())
    }

    /// Graded center in degree `n`, tested against every class whose
    /// products with degree `n` stay in the window.
    pub fn center(&self, n: i64) -> Subspace<F> {
        let f = &self.field;
        let dn = self.dim(n);
        let mut rows: Vec<Vec<F::Elem>> = Vec::new();
        for m in self.degrees() {
            if !self.in_window(n + m) {
                continue;
            }
            let s = f.sign((n * m).rem_euclid(2) == 1);
            for j in 0..self.dim(m) {
                let y = self.basis_vector(m, j);
                let cols: Vec<Vec<F::Elem>> = (0..dn)
                    .map(|i| {
                        let x = self.basis_vector(n, i);
                        let xy = self.product(n, &x, m, &y).unwrap();
                        let yx = self.product(m, &y, n, &x).unwrap();
                        xy.iter().zip(&yx).map(|(a, b)| f.sub(a, &f.mul(&s, b))).collect()
                    })
                    .collect();
                for k in 0..self.dim(n + m) {
                    rows.push(cols.iter().map(|c| c[k].clone()).collect());
                }
            }
        }
        let mut mat = crate::exactla::Matrix::zeros(f, rows.len(), dn);
        for (r, row) in rows.into_iter().enumerate() {
            for (c, e) in row.into_iter().enumerate() {
                mat.set(r, c, e);
            }
        }
        mat.kernel_basis()
    }

    pub fn check_graded_commutative(&self) -> Result<(), String> {
        for n in self.degrees() {
            for i in 0..self.dim(n) {
                self.commutes_with_all(n, &self.basis_vector(n, i))?;
            }
        }
        Ok(())
    }

    /// Span of all `k`-fold products of elements of `ideal` that stay in
    /// the window. Partial products leaving the window are dropped, which
    /// is exact when the algebra is graded commutative and nonzero classes
    /// exist only up to a fixed top degree (order positive factors first).
    pub fn ideal_power(&self, ideal: &BTreeMap<i64, Subspace<F>>, k: usize) -> BTreeMap<i64, Subspace<F>> {
        let mut power: BTreeMap<i64, Subspace<F>> = ideal.clone();
        for _ in 1..k {
            power = self.ideal_product(&power, ideal);
        }
        power
    }

    pub fn ideal_product(&self, left: &BTreeMap<i64, Subspace<F>>, right: &BTreeMap<i64, Subspace<F>>) -> BTreeMap<i64, Subspace<F>> {
        let mut out: BTreeMap<i64, Subspace<F>> = BTreeMap::new();
        for (&a, p) in left {
            for (&b, q) in right {
                if !self.in_window(a + b) || self.dim(a + b) == 0 {
                    continue;
                }
                for x in p.basis_vecs() {
                    for y in q.basis_vecs() {
                        let v = self.product(a, &x, b, &y).unwrap();
                        out.entry(a + b).or_insert_with(|| Subspace::zero(&self.field, self.dim(a + b))).insert(&v);
                    }
                }
            }
        }
        out.retain(|_, s| s.dim() > 0);
        out
    }
}

/// Cohomology of a Hochschild complex as an algebra, with the reduction
/// used to compute it.
#[derive(Clone, Debug)]
pub struct CohomologyAlgebra<F: Field> {
    pub complex: HochschildComplex<F>,
    pub reduction: Reduction<F>,
    pub pieces: BTreeMap<i64, CohomologyPiece<F>>,
    /// Cocycle representatives in the full complex, per degree and class.
    pub lifted: BTreeMap<i64, Vec<SparseVec<F::Elem>>>,
    pub table: GradedAlgebraTable<F>,
}

impl<F: Field> CohomologyAlgebra<F> {
    /// `filtered` keeps the coefficient filtration in the reduction, so the
    /// same reduction also carries the spectral sequence.
    pub fn new(complex: HochschildComplex<F>, filtered: bool) -> Result<Self, HochschildError> {
        let f = complex.algebra().field().clone();
        let reduction = complex.reduce(filtered)?;
        let (lo, hi) = complex.certified();
        let r = reduction.reduced();
        let mut pieces = BTreeMap::new();
        let mut lifted = BTreeMap::new();
        let mut labels = BTreeMap::new();
        for n in lo..=hi {
            let h = r.cohomology(n)?;
            if h.dim() == 0 {
                continue;
            }
            let reps: Vec<SparseVec<F::Elem>> = h.representatives().iter().map(|z| reduction.lift(n, z)).collect();
            let names: Vec<String> = h
                .representatives()
                .iter()
                .map(|z| {
                    let lead = z.iter().position(|c| !f.is_zero(c)).expect("nonzero representative");
                    format!("⟨{}⟩", r.space().labels(n)[lead])
                })
                .collect();
            labels.insert(n, dedupe(names));
            lifted.insert(n, reps);
            pieces.insert(n, h);
        }
        let mut alg = CohomologyAlgebra {
            complex,
            reduction,
            pieces,
            lifted,
            table: GradedAlgebraTable { field: f.clone(), certified: (lo, hi), labels, products: BTreeMap::new(), unit: Vec::new() },
        };
        alg.table.unit = alg.class_of_cochain(0, &[(0, f.one())]).unwrap_or_default();
        if alg.complex.kind() != super::Coefficients::Module {
            alg.fill_products();
        }
        Ok(alg)
    }

    fn fill_products(&mut self) {
        let degs: Vec<i64> = self.pieces.keys().copied().collect();
        let mut jobs = Vec::new();
        for &a in &degs {
            for &b in &degs {
                if self.table.in_window(a + b) && self.table.dim(a + b) > 0 {
                    jobs.push((a, b));
                }
            }
        }
        let products: Vec<((i64, i64), Vec<Vec<F::Elem>>)> = jobs
            .par_iter()
            .map(|&(a, b)| {
                let mut out = Vec::with_capacity(self.table.dim(a) * self.table.dim(b));
                for x in &self.lifted[&a] {
                    for y in &self.lifted[&b] {
                        out.push(self.product_of_cochains(a, x, b, y));
                    }
                }
                ((a, b), out)
            })
            .collect();
        self.table.products = products.into_iter().collect();
    }

    fn product_of_cochains(&self, a: i64, x: &[(u32, F::Elem)], b: i64, y: &[(u32, F::Elem)]) -> Vec<F::Elem> {
        let c = self.complex.cup(a, x, b, y).expect("product degree is in the window");
        self.class_of_cochain(a + b, &c).expect("cup of cocycles is a cocycle")
    }

    /// Class coordinates of a cocycle of the full complex.
    pub fn class_of_cochain(&self, n: i64, v: &[(u32, F::Elem)]) -> Option<Vec<F::Elem>> {
        let Some(piece) = self.pieces.get(&n) else {
            let (lo, hi) = self.complex.certified();
            let in_window = n >= lo && n <= hi;
            let cocycle = self.complex.apply_d(n, v).is_empty();
            return (in_window && cocycle).then(Vec::new);
        };
        piece.class_of(&self.reduction.project(n, v))
    }

    /// Lifted representative of basis class `i` in degree `n`.
    pub fn representative(&self, n: i64, i: usize) -> &[(u32, F::Elem)] {
        &self.lifted[&n][i]
    }

    /// Representative of an arbitrary class.
    pub fn representative_of(&self, n: i64, x: &[F::Elem]) -> SparseVec<F::Elem> {
        let f = self.table.field();
        let mut acc = crate::exactla::sparse::Accumulator::new(f);
        if let Some(reps) = self.lifted.get(&n) {
            for (c, r) in x.iter().zip(reps) {
                acc.add_scaled(c, r);
            }
        }
        acc.into_sorted()
    }
}

fn dedupe(mut names: Vec<String>) -> Vec<String> {
    let mut seen: BTreeMap<String, usize> = BTreeMap::new();
    for n in &mut names {
        let k = seen.entry(n.clone()).or_insert(0);
        *k += 1;
        if *k > 1 {
            *n = format!("{n}#{k}");
        }
    }
    names
}
