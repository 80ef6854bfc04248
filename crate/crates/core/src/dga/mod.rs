//! Finite-dimensional differential graded algebras given by structure
//! constants, their bimodules, the enveloping algebra and the filtration by
//! degree.

mod bimodule;

use std::collections::BTreeMap;

use serde::Serialize;
use thiserror::Error;

use crate::exactla::sparse::{Accumulator, SparseVec};
use crate::exactla::{Field, Matrix};
use crate::graded::{CochainComplex, CohomologyPiece, GradedError, GradedVectorSpace};

pub use bimodule::{DGBimodule, FiltrationPiece};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DgaError {
    #[error("the first basis element must be the unit `1` in degree 0")]
    MissingUnit,
    #[error("duplicate basis element `{0}`")]
    DuplicateBasis(String),
    #[error("unknown basis element `{0}`")]
    UnknownBasis(String),
    #[error("products with the unit are implied and may not be given (`{0}`)")]
    UnitProduct(String),
    #[error("`{0}` is defined twice")]
    Redefined(String),
    #[error("filtration index must be non-negative (got {0})")]
    NegativeFiltration(i64),
    #[error("algebra is not valid: {0}")]
    Invalid(String),
    #[error(transparent)]
    Graded(#[from] GradedError),
}

/// Linear combination of basis elements, written out by name.
pub type Combination<E> = Vec<(E, String)>;

/// A DGA with basis `x_0 = 1, x_1, …`, differential and structure constants.
#[derive(Clone, Debug)]
pub struct DGAlgebra<F: Field> {
    field: F,
    names: Vec<String>,
    degrees: Vec<i64>,
    d: Vec<SparseVec<F::Elem>>,
    /// `mul[i * n + j] = x_i x_j`
    mul: Vec<SparseVec<F::Elem>>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Axiom {
    DifferentialDegree,
    ProductDegree,
    Coconnective,
    SimplyConnected,
    Unit,
    Associativity,
    Leibniz,
    SquareZero,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub axiom: Axiom,
    pub witnesses: Vec<String>,
    pub detail: String,
}

/// Outcome of [`DGAlgebra::validate`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
    pub coconnective: bool,
    pub simply_connected: bool,
    pub finite_type: bool,
    /// Top degree with nonzero cohomology; `None` when not computable.
    pub top_cohomology_degree: Option<i64>,
    pub top_chain_degree: i64,
    pub cohomology_dims: BTreeMap<i64, usize>,
    pub basis_dims: BTreeMap<i64, usize>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }

    /// The bound `d` used for kernel nilpotency: the top cohomological degree.
    pub fn bound_degree(&self) -> Option<i64> {
        self.top_cohomology_degree
    }
}

impl<F: Field> DGAlgebra<F> {
    /// Builds an algebra from named data. Products with the unit are
    /// implied; missing differentials and products are zero.
    pub fn new(
        field: &F,
        basis: &[(String, i64)],
        differential: &[(String, Combination<F::Elem>)],
        products: &[((String, String), Combination<F::Elem>)],
    ) -> Result<Self, DgaError> {
        if basis.first().map(|(n, d)| (n.as_str(), *d)) != Some(("1", 0)) {
            return Err(DgaError::MissingUnit);
        }
        let mut names: Vec<String> = Vec::new();
        let mut degrees = Vec::new();
        for (n, deg) in basis {
            if names.contains(n) {
                return Err(DgaError::DuplicateBasis(n.clone()));
            }
            names.push(n.clone());
            degrees.push(*deg);
        }
        let dim = names.len();
        let lookup = |s: &str| names.iter().position(|n| n == s).ok_or_else(|| DgaError::UnknownBasis(s.to_string()));
        let combo = |c: &Combination<F::Elem>| -> Result<SparseVec<F::Elem>, DgaError> {
            let mut acc = Accumulator::new(field);
            for (e, n) in c {
                acc.add(lookup(n)? as u32, e);
            }
            Ok(acc.into_sorted())
        };
        let mut d = vec![Vec::new(); dim];
        let mut seen_d = vec![false; dim];
        for (n, c) in differential {
            let i = lookup(n)?;
            if seen_d[i] {
                return Err(DgaError::Redefined(format!("d({n})")));
            }
            seen_d[i] = true;
            d[i] = combo(c)?;
        }
        let mut mul = vec![Vec::new(); dim * dim];
        for i in 0..dim {
            mul[i] = vec![(i as u32, field.one())];
            mul[i * dim] = vec![(i as u32, field.one())];
        }
        let mut seen_m = vec![false; dim * dim];
        for ((a, b), c) in products {
            let (i, j) = (lookup(a)?, lookup(b)?);
            if i == 0 || j == 0 {
                return Err(DgaError::UnitProduct(format!("{a}*{b}")));
            }
            if seen_m[i * dim + j] {
                return Err(DgaError::Redefined(format!("{a}*{b}")));
            }
            seen_m[i * dim + j] = true;
            mul[i * dim + j] = combo(c)?;
        }
        Ok(DGAlgebra { field: field.clone(), names, degrees, d, mul })
    }

    pub fn field(&self) -> &F {
        &self.field
    }
    pub fn dim(&self) -> usize {
        self.names.len()
    }
    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }
    pub fn names(&self) -> &[String] {
        &self.names
    }
    pub fn degree(&self, i: usize) -> i64 {
        self.degrees[i]
    }
    pub fn degrees(&self) -> &[i64] {
        &self.degrees
    }
    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }
    pub fn d(&self, i: usize) -> &[(u32, F::Elem)] {
        &self.d[i]
    }
    pub fn mul(&self, i: usize, j: usize) -> &[(u32, F::Elem)] {
        &self.mul[i * self.dim() + j]
    }
    pub fn top_degree(&self) -> i64 {
        self.degrees.iter().copied().max().unwrap_or(0)
    }

    pub fn basis(&self) -> GradedVectorSpace {
        let mut s = GradedVectorSpace::new();
        for (n, d) in self.names.iter().zip(&self.degrees) {
            s.push(*d, n.clone()).expect("names are unique");
        }
        s
    }

    /// Indices of basis elements in degree `n`, in basis order.
    pub fn indices_in_degree(&self, n: i64) -> Vec<usize> {
        (0..self.dim()).filter(|&i| self.degrees[i] == n).collect()
    }

    /// Product of two sparse elements.
    pub fn mul_vec(&self, x: &[(u32, F::Elem)], y: &[(u32, F::Elem)]) -> SparseVec<F::Elem> {
        let f = &self.field;
        let mut acc = Accumulator::new(f);
        for (i, a) in x {
            for (j, b) in y {
                acc.add_scaled(&f.mul(a, b), self.mul(*i as usize, *j as usize));
            }
        }
        acc.into_sorted()
    }

    pub fn d_vec(&self, x: &[(u32, F::Elem)]) -> SparseVec<F::Elem> {
        let mut acc = Accumulator::new(&self.field);
        for (i, a) in x {
            acc.add_scaled(a, &self.d[*i as usize]);
        }
        acc.into_sorted()
    }

    /// Exhaustive check of every axiom, together with `H^*(A)`.
    pub fn validate(&self) -> ValidationReport {
        let f = &self.field;
        let n = self.dim();
        let mut v = Vec::new();
        let unit_vec = |i: usize| vec![(i as u32, f.one())];
        let name = |i: u32| self.names[i as usize].clone();

        for i in 0..n {
            if let Some((t, _)) = self.d[i].iter().find(|(t, _)| self.degrees[*t as usize] != self.degrees[i] + 1) {
                v.push(Violation {
                    axiom: Axiom::DifferentialDegree,
                    witnesses: vec![self.names[i].clone()],
                    detail: format!(
                        "d({}) has a component `{}` of degree {}, expected {}",
                        self.names[i],
                        name(*t),
                        self.degrees[*t as usize],
                        self.degrees[i] + 1
                    ),
                });
            }
        }
        for i in 0..n {
            for j in 0..n {
                if let Some((t, _)) = self.mul(i, j).iter().find(|(t, _)| self.degrees[*t as usize] != self.degrees[i] + self.degrees[j]) {
                    v.push(Violation {
                        axiom: Axiom::ProductDegree,
                        witnesses: vec![self.names[i].clone(), self.names[j].clone()],
                        detail: format!("{}*{} has a component `{}` of the wrong degree", self.names[i], self.names[j], name(*t)),
                    });
                }
            }
        }
        let negative: Vec<String> = (0..n).filter(|&i| self.degrees[i] < 0).map(|i| self.names[i].clone()).collect();
        let extra_zero: Vec<String> = (1..n).filter(|&i| self.degrees[i] == 0).map(|i| self.names[i].clone()).collect();
        let coconnective = negative.is_empty() && extra_zero.is_empty();
        if !negative.is_empty() {
            v.push(Violation { axiom: Axiom::Coconnective, witnesses: negative, detail: "basis elements in negative degree".into() });
        }
        if !extra_zero.is_empty() {
            v.push(Violation {
                axiom: Axiom::Coconnective,
                witnesses: extra_zero,
                detail: "degree 0 must be spanned by the unit alone".into(),
            });
        }
        let deg_one: Vec<String> = (0..n).filter(|&i| self.degrees[i] == 1).map(|i| self.names[i].clone()).collect();
        let simply_connected = coconnective && deg_one.is_empty();
        if !deg_one.is_empty() {
            v.push(Violation {
                axiom: Axiom::SimplyConnected,
                witnesses: deg_one,
                detail: "degree 1 must be empty (strict simple connectivity)".into(),
            });
        }
        if !self.d[0].is_empty() {
            v.push(Violation { axiom: Axiom::Unit, witnesses: vec!["1".into()], detail: "d(1) must vanish".into() });
        }
        for i in 0..n {
            let ui = unit_vec(i);
            if self.mul_vec(&unit_vec(0), &ui) != ui || self.mul_vec(&ui, &unit_vec(0)) != ui {
                v.push(Violation { axiom: Axiom::Unit, witnesses: vec![self.names[i].clone()], detail: "1 is not a unit".into() });
            }
        }
        'assoc: for i in 1..n {
            for j in 1..n {
                let xy = self.mul(i, j);
                for k in 1..n {
                    let left = self.mul_vec(xy, &unit_vec(k));
                    let right = self.mul_vec(&unit_vec(i), self.mul(j, k));
                    if left != right {
                        v.push(Violation {
                            axiom: Axiom::Associativity,
                            witnesses: vec![self.names[i].clone(), self.names[j].clone(), self.names[k].clone()],
                            detail: "(xy)z ≠ x(yz)".into(),
                        });
                        break 'assoc;
                    }
                }
            }
        }
        'leibniz: for i in 0..n {
            for j in 0..n {
                let lhs = self.d_vec(self.mul(i, j));
                let mut acc = Accumulator::from_sparse(f, &self.mul_vec(&self.d[i], &unit_vec(j)));
                let s = f.sign(self.degrees[i] % 2 != 0);
                acc.add_scaled(&s, &self.mul_vec(&unit_vec(i), &self.d[j]));
                if lhs != acc.into_sorted() {
                    v.push(Violation {
                        axiom: Axiom::Leibniz,
                        witnesses: vec![self.names[i].clone(), self.names[j].clone()],
                        detail: "d(xy) ≠ d(x)y + (-1)^|x| x d(y)".into(),
                    });
                    break 'leibniz;
                }
            }
        }
        for i in 0..n {
            if !self.d_vec(&self.d[i]).is_empty() {
                v.push(Violation { axiom: Axiom::SquareZero, witnesses: vec![self.names[i].clone()], detail: "d(d(x)) ≠ 0".into() });
            }
        }

        let degree_ok = !v.iter().any(|x| x.axiom == Axiom::DifferentialDegree || x.axiom == Axiom::SquareZero);
        let cohomology_dims = if degree_ok { self.complex().map(|c| c.cohomology_dims()).unwrap_or_default() } else { BTreeMap::new() };
        ValidationReport {
            violations: v,
            coconnective,
            simply_connected,
            finite_type: true,
            top_cohomology_degree: if degree_ok { cohomology_dims.keys().next_back().copied() } else { None },
            top_chain_degree: self.top_degree(),
            cohomology_dims,
            basis_dims: self.basis().dims(),
        }
    }

    pub fn ensure_valid(&self) -> Result<ValidationReport, DgaError> {
        let r = self.validate();
        match r.violations.first() {
            None => Ok(r),
            Some(x) => Err(DgaError::Invalid(x.detail.clone())),
        }
    }

    /// Underlying cochain complex, basis ordered as given within each degree.
    pub fn complex(&self) -> Result<CochainComplex<F>, GradedError> {
        let space = self.basis();
        let pos: Vec<usize> =
            (0..self.dim()).map(|i| self.indices_in_degree(self.degrees[i]).iter().position(|&j| j == i).unwrap()).collect();
        let mut diff = BTreeMap::new();
        for deg in space.degrees().collect::<Vec<_>>() {
            if space.dim(deg + 1) == 0 {
                continue;
            }
            let mut m = Matrix::zeros(&self.field, space.dim(deg + 1), space.dim(deg));
            for i in self.indices_in_degree(deg) {
                for (t, e) in &self.d[i] {
                    m.set(pos[*t as usize], pos[i], e.clone());
                }
            }
            diff.insert(deg, m);
        }
        CochainComplex::new(&self.field, space, diff, None)
    }

    /// `H^n(A)` with cocycle representatives expressed over the full basis.
    pub fn cohomology(&self) -> Result<BTreeMap<i64, (CohomologyPiece<F>, Vec<SparseVec<F::Elem>>)>, GradedError> {
        let c = self.complex()?;
        let mut out = BTreeMap::new();
        for deg in c.space().degrees().collect::<Vec<_>>() {
            let h = c.cohomology(deg)?;
            if h.dim() == 0 {
                continue;
            }
            let idx = self.indices_in_degree(deg);
            let reps = h
                .representatives()
                .iter()
                .map(|r| r.iter().enumerate().filter(|(_, e)| !self.field.is_zero(e)).map(|(k, e)| (idx[k] as u32, e.clone())).collect())
                .collect();
            out.insert(deg, (h, reps));
        }
        Ok(out)
    }

    /// `A ⊗ A^op` with the Koszul sign and the signed opposite product
    /// `y ·op y' = (-1)^{|y||y'|} y' y`.
    pub fn enveloping(&self) -> DGAlgebra<F> {
        let f = &self.field;
        let n = self.dim();
        let mut names = Vec::with_capacity(n * n);
        let mut degrees = Vec::with_capacity(n * n);
        // Keep the unit first and group by degree.
        let mut pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (0..n).map(move |j| (i, j))).collect();
        pairs.sort_by_key(|&(i, j)| (self.degrees[i] + self.degrees[j], i, j));
        let mut index = vec![0u32; n * n];
        for (k, &(i, j)) in pairs.iter().enumerate() {
            index[i * n + j] = k as u32;
            names.push(if i == 0 && j == 0 { "1".to_string() } else { format!("{}⊗{}", self.names[i], self.names[j]) });
            degrees.push(self.degrees[i] + self.degrees[j]);
        }
        let odd = |d: i64| d.rem_euclid(2) == 1;
        let mut d = vec![Vec::new(); n * n];
        for &(i, j) in &pairs {
            let mut acc = Accumulator::new(f);
            for (t, e) in &self.d[i] {
                acc.add(index[*t as usize * n + j], e);
            }
            let s = f.sign(odd(self.degrees[i]));
            for (t, e) in &self.d[j] {
                acc.add(index[i * n + *t as usize], &f.mul(&s, e));
            }
            d[index[i * n + j] as usize] = acc.into_sorted();
        }
        let m = n * n;
        let mut mul = vec![Vec::new(); m * m];
        for &(x, y) in &pairs {
            for &(x2, y2) in &pairs {
                let s = f.sign(odd(self.degrees[y] * self.degrees[x2] + self.degrees[y] * self.degrees[y2]));
                let mut acc = Accumulator::new(f);
                for (a, ea) in self.mul(x, x2) {
                    for (b, eb) in self.mul(y2, y) {
                        acc.add(index[*a as usize * n + *b as usize], &f.mul(&s, &f.mul(ea, eb)));
                    }
                }
                mul[index[x * n + y] as usize * m + index[x2 * n + y2] as usize] = acc.into_sorted();
            }
        }
        DGAlgebra { field: f.clone(), names, degrees, d, mul }
    }

    /// `J(n)`: span of the basis elements of degree at least `n`.
    pub fn filtration(&self, n: i64) -> Result<FiltrationPiece<F>, DgaError> {
        FiltrationPiece::new(self, n)
    }

    /// `J(n)/J(n+1)`: the degree-`n` slice with only the unit acting.
    pub fn subquotient(&self, n: i64) -> Result<DGBimodule<F>, DgaError> {
        if n < 0 {
            return Err(DgaError::NegativeFiltration(n));
        }
        Ok(DGBimodule::slice(self, n))
    }

    pub fn augmentation_ideal(&self) -> DGBimodule<F> {
        FiltrationPiece::new(self, 1).expect("n = 1 is non-negative").module
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactla::{PrimeField, Rational, RationalField};

    fn s(x: &str) -> String {
        x.to_string()
    }

    pub(crate) fn exterior_q() -> DGAlgebra<RationalField> {
        DGAlgebra::new(&RationalField, &[(s("1"), 0), (s("x"), 3)], &[], &[]).unwrap()
    }

    pub(crate) fn e3<F: Field>(f: &F) -> DGAlgebra<F> {
        let one = f.one();
        DGAlgebra::new(
            f,
            &[(s("1"), 0), (s("x"), 2), (s("z"), 3), (s("x^2"), 4), (s("xz"), 5)],
            &[(s("z"), vec![(one.clone(), s("x^2"))])],
            &[
                ((s("x"), s("x")), vec![(one.clone(), s("x^2"))]),
                ((s("x"), s("z")), vec![(one.clone(), s("xz"))]),
                ((s("z"), s("x")), vec![(one.clone(), s("xz"))]),
            ],
        )
        .unwrap()
    }

    #[test]
    fn validate_fixtures() {
        let k = DGAlgebra::new(&RationalField, &[(s("1"), 0)], &[], &[]).unwrap();
        let r = k.validate();
        assert!(r.is_valid());
        assert_eq!(r.top_cohomology_degree, Some(0));
        let r = exterior_q().validate();
        assert!(r.is_valid(), "{:?}", r.violations);
        assert_eq!(r.cohomology_dims, BTreeMap::from([(0, 1), (3, 1)]));
        assert_eq!(r.top_cohomology_degree, Some(3));
        let f2 = PrimeField::new(2).unwrap();
        let r = e3(&f2).validate();
        assert!(r.is_valid(), "{:?}", r.violations);
        assert_eq!(r.cohomology_dims, BTreeMap::from([(0, 1), (2, 1), (5, 1)]));
        let r = e3(&RationalField).validate();
        assert!(r.is_valid(), "{:?}", r.violations);
    }

    #[test]
    fn bad_differential_is_named() {
        let a =
            DGAlgebra::new(&RationalField, &[(s("1"), 0), (s("x"), 3)], &[(s("x"), vec![(Rational::from_i64(1), s("1"))])], &[]).unwrap();
        let r = a.validate();
        assert!(!r.is_valid());
        assert_eq!(r.violations[0].axiom, Axiom::DifferentialDegree);
        assert_eq!(r.violations[0].witnesses, vec![s("x")]);
    }

    #[test]
    fn enveloping_of_exterior() {
        let q = RationalField;
        let e = exterior_q().enveloping();
        assert_eq!(e.basis().dims(), BTreeMap::from([(0, 1), (3, 2), (6, 1)]));
        assert!(e.validate().is_valid());
        let one_x = e.index_of("1⊗x").unwrap();
        let x_one = e.index_of("x⊗1").unwrap();
        let xx = e.index_of("x⊗x").unwrap() as u32;
        assert_eq!(e.mul(one_x, x_one), &[(xx, q.from_i64(-1))]);
        let k = DGAlgebra::new(&q, &[(s("1"), 0)], &[], &[]).unwrap();
        assert_eq!(k.enveloping().dim(), 1);
        assert!(e3(&q).enveloping().validate().is_valid());
    }
}
