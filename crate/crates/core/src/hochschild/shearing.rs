use std::collections::BTreeMap;

use serde::Serialize;

use crate::exactla::{Field, Matrix, Subspace};

use super::table::{CohomologyAlgebra, GradedAlgebraTable};
use super::HochschildError;

/// The map `HH^*(A) → Ext_A(k, k)` induced by the augmentation on
/// coefficients, per degree, with its image and kernel.
#[derive(Clone, Debug)]
pub struct Shearing<F: Field> {
    /// `matrices[n]` has one column per HH class and one row per Ext class.
    pub matrices: BTreeMap<i64, Matrix<F>>,
    pub image: BTreeMap<i64, Subspace<F>>,
    pub kernel: BTreeMap<i64, Subspace<F>>,
}

impl<F: Field> Shearing<F> {
    pub fn new(hh: &CohomologyAlgebra<F>, ext: &CohomologyAlgebra<F>) -> Result<Self, HochschildError> {
        if hh.complex.certified() != ext.complex.certified() {
            return Err(HochschildError::WindowMismatch);
        }
        let f = hh.table.field().clone();
        let mut matrices = BTreeMap::new();
        let mut image = BTreeMap::new();
        let mut kernel = BTreeMap::new();
        for n in hh.table.degrees() {
            let rows = ext.table.dim(n);
            let cols = hh.table.dim(n);
            let mut m = Matrix::zeros(&f, rows, cols);
            for i in 0..cols {
                let e = hh.complex.augment(n, hh.representative(n, i));
                let c = ext.class_of_cochain(n, &e).expect("augmentation maps cocycles to cocycles");
                for (r, v) in c.into_iter().enumerate() {
                    m.set(r, i, v);
                }
            }
            let ker = m.kernel_basis();
            if ker.dim() > 0 {
                kernel.insert(n, ker);
            }
            if rows > 0 {
                let im = m.image_basis();
                if im.dim() > 0 {
                    image.insert(n, im);
                }
            }
            matrices.insert(n, m);
        }
        Ok(Shearing { matrices, image, kernel })
    }

    pub fn apply(&self, n: i64, x: &[F::Elem]) -> Option<Vec<F::Elem>> {
        self.matrices.get(&n).map(|m| m.mul_vec(x))
    }

    pub fn image_dims(&self) -> BTreeMap<i64, usize> {
        self.image.iter().map(|(n, s)| (*n, s.dim())).collect()
    }

    pub fn kernel_dims(&self) -> BTreeMap<i64, usize> {
        self.kernel.iter().map(|(n, s)| (*n, s.dim())).collect()
    }

    /// `shr(xy) = shr(x) shr(y)` on all basis pairs with product in the window.
    pub fn check_ring_map(&self, hh: &GradedAlgebraTable<F>, ext: &GradedAlgebraTable<F>) -> Result<(), String> {
        for a in hh.degrees() {
            for b in hh.degrees() {
                if !hh.in_window(a + b) {
                    continue;
                }
                for i in 0..hh.dim(a) {
                    for j in 0..hh.dim(b) {
                        let xy = hh.basis_product(a, i, b, j).unwrap().to_vec();
                        let lhs =
                            if hh.dim(a + b) == 0 { vec![hh.field().zero(); ext.dim(a + b)] } else { self.apply(a + b, &xy).unwrap() };
                        let sx = self.apply(a, &hh.basis_vector(a, i)).unwrap();
                        let sy = self.apply(b, &hh.basis_vector(b, j)).unwrap();
                        let rhs = ext.product(a, &sx, b, &sy).unwrap();
                        if lhs != rhs {
                            return Err(format!("shr({} · {}) ≠ shr · shr", hh.labels(a)[i], hh.labels(b)[j]));
                        }
                    }
                }
            }
        }
        Ok(())
    }

    /// Every image class graded-commutes with every Ext class.
    pub fn check_central(&self, ext: &GradedAlgebraTable<F>) -> Result<(), String> {
        for (&n, im) in &self.image {
            for v in im.basis_vecs() {
                ext.commutes_with_all(n, &v)?;
            }
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", content = "value", rename_all = "snake_case")]
pub enum Nilpotency {
    /// Smallest `N` with every `N`-fold product zero in the window. An empty
    /// kernel reports 1.
    Index(usize),
    /// Products of this many classes are still nonzero in the window.
    ExceedsWindow(usize),
}

/// Nilpotency index of `kernel` inside `table`, trying powers up to `max_power`.
pub fn nilpotency_index<F: Field>(kernel: &BTreeMap<i64, Subspace<F>>, table: &GradedAlgebraTable<F>, max_power: usize) -> Nilpotency {
    let mut power = kernel.clone();
    power.retain(|_, s| s.dim() > 0);
    let mut k = 1;
    while !power.is_empty() {
        if k >= max_power {
            return Nilpotency::ExceedsWindow(k);
        }
        power = table.ideal_product(&power, kernel);
        k += 1;
    }
    Nilpotency::Index(k)
}
