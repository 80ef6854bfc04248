use crate::exactla::sparse::{Accumulator, SparseVec};
use crate::exactla::Field;
use crate::graded::GradedVectorSpace;

use super::{DGAlgebra, DgaError};

/// A DG bimodule over a fixed algebra, given by structure constants.
#[derive(Clone, Debug)]
pub struct DGBimodule<F: Field> {
    field: F,
    names: Vec<String>,
    degrees: Vec<i64>,
    d: Vec<SparseVec<F::Elem>>,
    algebra_dim: usize,
    /// `left[a * dim + m] = x_a · m`
    left: Vec<SparseVec<F::Elem>>,
    /// `right[m * algebra_dim + a] = m · x_a`
    right: Vec<SparseVec<F::Elem>>,
}

/// `J(n) ⊆ A` together with the indices of its basis inside `A`.
#[derive(Clone, Debug)]
pub struct FiltrationPiece<F: Field> {
    pub n: i64,
    pub module: DGBimodule<F>,
    pub inclusion: Vec<usize>,
}

impl<F: Field> FiltrationPiece<F> {
    pub(super) fn new(a: &DGAlgebra<F>, n: i64) -> Result<Self, DgaError> {
        if n < 0 {
            return Err(DgaError::NegativeFiltration(n));
        }
        let inclusion: Vec<usize> = (0..a.dim()).filter(|&i| a.degree(i) >= n).collect();
        let mut pos = vec![u32::MAX; a.dim()];
        for (k, &i) in inclusion.iter().enumerate() {
            pos[i] = k as u32;
        }
        let restrict = |v: &[(u32, F::Elem)], what: &str| -> Result<SparseVec<F::Elem>, DgaError> {
            v.iter()
                .map(|(t, e)| match pos[*t as usize] {
                    u32::MAX => Err(DgaError::Invalid(format!("J({n}) is not closed: {what}"))),
                    p => Ok((p, e.clone())),
                })
                .collect()
        };
        let dim = inclusion.len();
        let mut d = Vec::with_capacity(dim);
        let mut left = vec![Vec::new(); a.dim() * dim];
        let mut right = vec![Vec::new(); dim * a.dim()];
        for (k, &i) in inclusion.iter().enumerate() {
            d.push(restrict(a.d(i), &format!("d({})", a.name(i)))?);
            for x in 0..a.dim() {
                left[x * dim + k] = restrict(a.mul(x, i), &format!("{}*{}", a.name(x), a.name(i)))?;
                right[k * a.dim() + x] = restrict(a.mul(i, x), &format!("{}*{}", a.name(i), a.name(x)))?;
            }
        }
        let module = DGBimodule {
            field: a.field().clone(),
            names: inclusion.iter().map(|&i| a.name(i).to_string()).collect(),
            degrees: inclusion.iter().map(|&i| a.degree(i)).collect(),
            d,
            algebra_dim: a.dim(),
            left,
            right,
        };
        Ok(FiltrationPiece { n, module, inclusion })
    }
}

impl<F: Field> DGBimodule<F> {
    /// `A` as a bimodule over itself.
    pub fn regular(a: &DGAlgebra<F>) -> Self {
        FiltrationPiece::new(a, 0).expect("J(0) = A").module
    }

    /// The ground field, with `A` acting through the augmentation.
    pub fn ground(a: &DGAlgebra<F>) -> Self {
        Self::trivial(a, &[("1".to_string(), 0)])
    }

    /// `J(n)/J(n+1)`: the degree-`n` basis elements, zero differential, and
    /// only the unit acting.
    pub fn slice(a: &DGAlgebra<F>, n: i64) -> Self {
        let labels: Vec<(String, i64)> = a.indices_in_degree(n).into_iter().map(|i| (a.name(i).to_string(), n)).collect();
        Self::trivial(a, &labels)
    }

    /// Direct sum of copies of `k` in the given degrees, with zero
    /// differential and `A` acting through the augmentation.
    pub fn trivial(a: &DGAlgebra<F>, basis: &[(String, i64)]) -> Self {
        let f = a.field();
        let dim = basis.len();
        let mut left = vec![Vec::new(); a.dim() * dim];
        let mut right = vec![Vec::new(); dim * a.dim()];
        for m in 0..dim {
            left[m] = vec![(m as u32, f.one())];
            right[m * a.dim()] = vec![(m as u32, f.one())];
        }
        DGBimodule {
            field: f.clone(),
            names: basis.iter().map(|(n, _)| n.clone()).collect(),
            degrees: basis.iter().map(|(_, d)| *d).collect(),
            d: vec![Vec::new(); dim],
            algebra_dim: a.dim(),
            left,
            right,
        }
    }

    pub fn field(&self) -> &F {
        &self.field
    }
    pub fn dim(&self) -> usize {
        self.names.len()
    }
    pub fn name(&self, m: usize) -> &str {
        &self.names[m]
    }
    pub fn degree(&self, m: usize) -> i64 {
        self.degrees[m]
    }
    pub fn degrees(&self) -> &[i64] {
        &self.degrees
    }
    pub fn d(&self, m: usize) -> &[(u32, F::Elem)] {
        &self.d[m]
    }
    pub fn left(&self, a: usize, m: usize) -> &[(u32, F::Elem)] {
        &self.left[a * self.dim() + m]
    }
    pub fn right(&self, m: usize, a: usize) -> &[(u32, F::Elem)] {
        &self.right[m * self.algebra_dim + a]
    }
    pub fn space(&self) -> GradedVectorSpace {
        let mut s = GradedVectorSpace::new();
        for (n, d) in self.names.iter().zip(&self.degrees) {
            s.push(*d, n.clone()).expect("names are unique");
        }
        s
    }

    /// True when every positive-degree element of `A` acts by zero.
    pub fn is_augmentation_trivial(&self, a: &DGAlgebra<F>) -> bool {
        (1..a.dim()).all(|x| (0..self.dim()).all(|m| self.left(x, m).is_empty() && self.right(m, x).is_empty()))
    }

    fn left_vec(&self, x: &[(u32, F::Elem)], v: &[(u32, F::Elem)]) -> SparseVec<F::Elem> {
        let f = &self.field;
        let mut acc = Accumulator::new(f);
        for (a, ea) in x {
            for (m, em) in v {
                acc.add_scaled(&f.mul(ea, em), self.left(*a as usize, *m as usize));
            }
        }
        acc.into_sorted()
    }

    fn right_vec(&self, v: &[(u32, F::Elem)], x: &[(u32, F::Elem)]) -> SparseVec<F::Elem> {
        let f = &self.field;
        let mut acc = Accumulator::new(f);
        for (m, em) in v {
            for (a, ea) in x {
                acc.add_scaled(&f.mul(ea, em), self.right(*m as usize, *a as usize));
            }
        }
        acc.into_sorted()
    }

    fn d_vec(&self, v: &[(u32, F::Elem)]) -> SparseVec<F::Elem> {
        let mut acc = Accumulator::new(&self.field);
        for (m, e) in v {
            acc.add_scaled(e, &self.d[*m as usize]);
        }
        acc.into_sorted()
    }

    /// Checks the bimodule axioms against `a`; returns the first failure.
    pub fn validate(&self, a: &DGAlgebra<F>) -> Result<(), String> {
        let f = &self.field;
        if a.dim() != self.algebra_dim {
            return Err("bimodule belongs to a different algebra".into());
        }
        let unit = |i: usize| vec![(i as u32, f.one())];
        let odd = |d: i64| d.rem_euclid(2) == 1;
        for m in 0..self.dim() {
            let um = unit(m);
            if self.left_vec(&unit(0), &um) != um || self.right_vec(&um, &unit(0)) != um {
                return Err(format!("unit does not act as the identity on `{}`", self.names[m]));
            }
            if !self.d_vec(&self.d[m]).is_empty() {
                return Err(format!("d(d({})) ≠ 0", self.names[m]));
            }
            for x in 0..a.dim() {
                for y in 0..a.dim() {
                    let w = format!("`{}`, `{}`, `{}`", a.name(x), a.name(y), self.names[m]);
                    if self.left_vec(&unit(x), self.left(y, m)) != self.left_vec(a.mul(x, y), &um) {
                        return Err(format!("left action not associative on {w}"));
                    }
                    if self.right_vec(self.right(m, x), &unit(y)) != self.right_vec(&um, a.mul(x, y)) {
                        return Err(format!("right action not associative on {w}"));
                    }
                    if self.right_vec(self.left(x, m), &unit(y)) != self.left_vec(&unit(x), self.right(m, y)) {
                        return Err(format!("left and right actions do not commute on {w}"));
                    }
                }
                // d(x m) = d(x) m + (-1)^|x| x d(m)
                let lhs = self.d_vec(self.left(x, m));
                let mut acc = Accumulator::from_sparse(f, &self.left_vec(a.d(x), &um));
                acc.add_scaled(&f.sign(odd(a.degree(x))), &self.left_vec(&unit(x), &self.d[m]));
                if lhs != acc.into_sorted() {
                    return Err(format!("left Leibniz rule fails on `{}`, `{}`", a.name(x), self.names[m]));
                }
                // d(m x) = d(m) x + (-1)^|m| m d(x)
                let lhs = self.d_vec(self.right(m, x));
                let mut acc = Accumulator::from_sparse(f, &self.right_vec(&self.d[m], &unit(x)));
                acc.add_scaled(&f.sign(odd(self.degrees[m])), &self.right_vec(&um, a.d(x)));
                if lhs != acc.into_sorted() {
                    return Err(format!("right Leibniz rule fails on `{}`, `{}`", self.names[m], a.name(x)));
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::super::tests::{e3, exterior_q};
    use crate::exactla::RationalField;

    #[test]
    fn filtration_and_slices() {
        let a = exterior_q();
        assert_eq!(a.filtration(0).unwrap().module.dim(), 2);
        assert_eq!(a.filtration(4).unwrap().module.dim(), 0);
        let s = a.subquotient(3).unwrap();
        assert_eq!(s.dim(), 1);
        assert!(s.is_augmentation_trivial(&a));
        assert!(a.subquotient(-1).is_err());

        let b = e3(&RationalField);
        let s = b.subquotient(4).unwrap();
        assert_eq!(s.name(0), "x^2");
        assert!(s.d(0).is_empty());
        let ideal = b.augmentation_ideal();
        assert_eq!(ideal.dim(), 4);
        for n in 0..=6 {
            let j = b.filtration(n).unwrap().module;
            j.validate(&b).unwrap();
            b.subquotient(n).unwrap().validate(&b).unwrap();
        }
    }
}
