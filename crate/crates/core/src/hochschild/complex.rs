use std::sync::Arc;

use rayon::prelude::*;

use crate::dga::{DGAlgebra, DGBimodule};
use crate::exactla::sparse::{Accumulator, SparseVec};
use crate::exactla::Field;
use crate::graded::reduce::{Reduction, SparseComplex};
use crate::graded::GradedError;

use super::words::WordTable;
use super::HochschildError;

/// Which coefficient pairing the cup product uses.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Coefficients {
    /// `M = A`, values multiplied in `A`.
    Algebra,
    /// `M = k` through the augmentation.
    Ground,
    /// Any other bimodule; no cup product.
    Module,
}

/// The normalized Hochschild cochain complex `C*(A; M)`.
///
/// A basis cochain `(w, m)` sends the bar word `w` to `m` and vanishes on all
/// other words; it has degree `|m| - |w|` where `|w| = Σ (|a_i| - 1)`. With
/// `ε_i = Σ_{j<i} (|a_j| - 1)` the bar differential is
///
/// ```text
/// d[a_1|…|a_t] = Σ (-1)^{ε_i + 1} [… |d a_i| …] + Σ (-1)^{ε_{i+1}} [… |a_i a_{i+1}| …]
/// ```
///
/// and a cochain `f` of degree `n` has
///
/// ```text
/// (δf)(a_1…a_{t}) = d_M f(a_1…a_t) - (-1)^n f(d[a_1|…|a_t])
///                   - (-1)^{n(|a_1|-1)} a_1 · f(a_2…a_t)
///                   + (-1)^{n + ε_t} f(a_1…a_{t-1}) · a_t
/// ```
///
/// The cup product is `(f ⌣ g)(w_1 w_2) = (-1)^{|g||w_1|} f(w_1) g(w_2)`.
/// The filtration value of `(w, m)` is `-|m|`, so `F_p` consists of the
/// cochains with coefficients in `J(-p)`.
#[derive(Clone, Debug)]
pub struct HochschildComplex<F: Field> {
    algebra: DGAlgebra<F>,
    coeffs: DGBimodule<F>,
    kind: Coefficients,
    words: Arc<WordTable>,
    window: i64,
    lo: i64,
    /// `starts[n - lo][m]`: first cell of coefficient `m` in degree `n`.
    starts: Vec<Vec<u32>>,
    sparse: SparseComplex<F>,
}

struct Tables<E> {
    /// `dpre[b]`: letters `u` with `⟨d u, b⟩ = c ≠ 0`.
    dpre: Vec<Vec<(u8, E)>>,
    /// `splits[b]`: letter pairs with `⟨u v, b⟩ = c ≠ 0`.
    splits: Vec<Vec<(u8, u8, E)>>,
}

impl<F: Field> HochschildComplex<F> {
    /// Words needed for window `n` and coefficients of top degree `top`.
    pub fn required_shift(window: i64, top: i64) -> i64 {
        top + window + 1
    }

    pub fn new(a: &DGAlgebra<F>, coeffs: DGBimodule<F>, kind: Coefficients, window: i64, budget: usize) -> Result<Self, HochschildError> {
        let top = coeffs.degrees().iter().copied().max().unwrap_or(0);
        let words = Arc::new(WordTable::new(a, Self::required_shift(window, top), budget)?);
        Self::with_words(a, coeffs, kind, window, words)
    }

    pub fn with_algebra(a: &DGAlgebra<F>, window: i64, budget: usize) -> Result<Self, HochschildError> {
        Self::new(a, DGBimodule::regular(a), Coefficients::Algebra, window, budget)
    }

    pub fn with_ground(a: &DGAlgebra<F>, window: i64, budget: usize) -> Result<Self, HochschildError> {
        Self::new(a, DGBimodule::ground(a), Coefficients::Ground, window, budget)
    }

    /// Builds the complex over a shared word table, which must reach
    /// [`Self::required_shift`].
    pub fn with_words(
        a: &DGAlgebra<F>,
        coeffs: DGBimodule<F>,
        kind: Coefficients,
        window: i64,
        words: Arc<WordTable>,
    ) -> Result<Self, HochschildError> {
        if window < 0 {
            return Err(HochschildError::Window(window));
        }
        let f = a.field().clone();
        let top = coeffs.degrees().iter().copied().max().unwrap_or(0);
        if words.max_shift() < Self::required_shift(window, top) {
            return Err(HochschildError::WordTableTooShort);
        }
        let lo = -window - 1;
        let hi = (window + 1).min(top).max(lo);
        let mut starts = Vec::new();
        for n in lo..=hi {
            let mut s = Vec::with_capacity(coeffs.dim() + 1);
            let mut acc = 0u32;
            for m in 0..coeffs.dim() {
                s.push(acc);
                acc += words.count(coeffs.degree(m) - n) as u32;
            }
            s.push(acc);
            starts.push(s);
        }
        let tables = Self::tables(a, &words);
        let mut hc = HochschildComplex {
            algebra: a.clone(),
            coeffs,
            kind,
            words,
            window,
            lo,
            starts,
            sparse: SparseComplex::new(&f, lo, Vec::new(), Vec::new(), (-window, window)),
        };
        let mut filt = Vec::new();
        let mut cols = Vec::new();
        for n in lo..=hi {
            let dim = hc.dim(n);
            filt.push((0..dim).map(|j| -(hc.coeffs.degree(hc.decode(n, j).0) as i32)).collect());
            if n == hi {
                cols.push(Vec::new());
                continue;
            }
            let c: Vec<SparseVec<F::Elem>> = (0..dim).into_par_iter().map(|j| hc.column(&tables, n, j)).collect();
            cols.push(c);
        }
        hc.sparse = SparseComplex::new(&f, lo, filt, cols, (-window, window));
        Ok(hc)
    }

    fn tables(a: &DGAlgebra<F>, words: &WordTable) -> Tables<F::Elem> {
        let nl = words.letter_count();
        let mut dpre = vec![Vec::new(); nl];
        let mut splits = vec![Vec::new(); nl];
        for u in 0..nl as u8 {
            for (t, c) in a.d(words.letter(u)) {
                if let Some(b) = words.letter_of(*t as usize) {
                    dpre[b as usize].push((u, c.clone()));
                }
            }
            for v in 0..nl as u8 {
                for (t, c) in a.mul(words.letter(u), words.letter(v)) {
                    if let Some(b) = words.letter_of(*t as usize) {
                        splits[b as usize].push((u, v, c.clone()));
                    }
                }
            }
        }
        Tables { dpre, splits }
    }

    fn column(&self, t: &Tables<F::Elem>, n: i64, j: usize) -> SparseVec<F::Elem> {
        let f = self.algebra.field();
        let (m, w) = self.decode(n, j);
        let w: &[u8] = w;
        let odd = |k: i64| k.rem_euclid(2) == 1;
        let mut acc = Accumulator::new(f);
        let target = n + 1;
        // d_M
        for (m2, e) in self.coeffs.d(m) {
            acc.add(self.index(target, *m2 as usize, w), e);
        }
        // -(-1)^n f ∘ d_B, through preimages of w under the bar differential
        let mut buf: Vec<u8> = Vec::with_capacity(w.len() + 1);
        let mut eps: i64 = 0;
        for i in 0..w.len() {
            let b = w[i] as usize;
            for (u, c) in &t.dpre[b] {
                buf.clear();
                buf.extend_from_slice(w);
                buf[i] = *u;
                // -(-1)^n (-1)^{ε_i + 1} c
                let s = f.sign(odd(n + eps));
                acc.add(self.index(target, m, &buf), &f.mul(&s, c));
            }
            for (u, v, c) in &t.splits[b] {
                buf.clear();
                buf.extend_from_slice(&w[..i]);
                buf.push(*u);
                buf.push(*v);
                buf.extend_from_slice(&w[i + 1..]);
                // -(-1)^n (-1)^{ε_i + |u| - 1} c
                let s = f.sign(!odd(n + eps + self.words.shift(*u) as i64));
                acc.add(self.index(target, m, &buf), &f.mul(&s, c));
            }
            eps += self.words.shift(w[i]) as i64;
        }
        // -(-1)^{n(|a|-1)} a · f(rest)  and  (-1)^{n + |w|} f(init) · a
        for l in 0..self.words.letter_count() as u8 {
            let a = self.words.letter(l);
            let sh = self.words.shift(l) as i64;
            let left = self.coeffs.left(a, m);
            if !left.is_empty() {
                buf.clear();
                buf.push(l);
                buf.extend_from_slice(w);
                let s = f.sign(!odd(n * sh));
                for (m2, e) in left {
                    acc.add(self.index(target, *m2 as usize, &buf), &f.mul(&s, e));
                }
            }
            let right = self.coeffs.right(m, a);
            if !right.is_empty() {
                buf.clear();
                buf.extend_from_slice(w);
                buf.push(l);
                let s = f.sign(odd(n + eps));
                for (m2, e) in right {
                    acc.add(self.index(target, *m2 as usize, &buf), &f.mul(&s, e));
                }
            }
        }
        acc.into_sorted()
    }

    pub fn algebra(&self) -> &DGAlgebra<F> {
        &self.algebra
    }
    pub fn coefficients(&self) -> &DGBimodule<F> {
        &self.coeffs
    }
    pub fn kind(&self) -> Coefficients {
        self.kind
    }
    pub fn words(&self) -> &Arc<WordTable> {
        &self.words
    }
    pub fn window(&self) -> i64 {
        self.window
    }
    pub fn certified(&self) -> (i64, i64) {
        (-self.window, self.window)
    }
    pub fn sparse(&self) -> &SparseComplex<F> {
        &self.sparse
    }
    pub fn lo(&self) -> i64 {
        self.lo
    }
    pub fn hi(&self) -> i64 {
        self.lo + self.starts.len() as i64 - 1
    }

    fn slot(&self, n: i64) -> Option<usize> {
        let i = n - self.lo;
        (i >= 0 && (i as usize) < self.starts.len()).then_some(i as usize)
    }

    pub fn dim(&self, n: i64) -> usize {
        self.slot(n).map_or(0, |i| *self.starts[i].last().unwrap() as usize)
    }

    /// Coefficient index and word of cell `j` in degree `n`.
    pub fn decode(&self, n: i64, j: usize) -> (usize, &[u8]) {
        let s = &self.starts[self.slot(n).expect("degree in range")];
        let m = s.partition_point(|&x| x as usize <= j) - 1;
        let w = &self.words.words(self.coeffs.degree(m) - n)[j - s[m] as usize];
        (m, w)
    }

    /// Cell of `(w, m)` in degree `n`; panics when outside the built range.
    pub fn index(&self, n: i64, m: usize, w: &[u8]) -> u32 {
        self.try_index(n, m, w).expect("cell inside the built range")
    }

    pub fn try_index(&self, n: i64, m: usize, w: &[u8]) -> Option<u32> {
        let s = &self.starts[self.slot(n)?];
        if self.coeffs.degree(m) - self.words.degree_of(w) != n {
            return None;
        }
        Some(s[m] + self.words.position(w)?)
    }

    pub fn label(&self, n: i64, j: usize) -> String {
        let (m, w) = self.decode(n, j);
        match self.kind {
            Coefficients::Ground => self.words.format(w),
            _ => format!("{}⊗{}", self.words.format(w), self.coeffs.name(m)),
        }
    }

    pub fn apply_d(&self, n: i64, v: &[(u32, F::Elem)]) -> SparseVec<F::Elem> {
        self.sparse.apply_d(n, v)
    }

    /// Reduces the complex; `filtered` keeps the coefficient filtration.
    pub fn reduce(&self, filtered: bool) -> Result<Reduction<F>, GradedError> {
        Reduction::new(&self.sparse, filtered, |n, j| self.label(n, j))
    }

    /// Cup product of cochains of degrees `n1` and `n2`. Returns `None` when
    /// the product degree lies below the built range; products above it are
    /// zero.
    pub fn cup(&self, n1: i64, x: &[(u32, F::Elem)], n2: i64, y: &[(u32, F::Elem)]) -> Option<SparseVec<F::Elem>> {
        let f = self.algebra.field();
        let n = n1 + n2;
        if n > self.hi() {
            return Some(Vec::new());
        }
        self.slot(n)?;
        let mut acc = Accumulator::new(f);
        let mut buf = Vec::new();
        let y_dec: Vec<(usize, &[u8], &F::Elem)> = y
            .iter()
            .map(|(j, e)| {
                let (m, w) = self.decode(n2, *j as usize);
                (m, w, e)
            })
            .collect();
        for (i, ex) in x {
            let (m1, w1) = self.decode(n1, *i as usize);
            let s = f.sign((n2 * self.words.degree_of(w1)).rem_euclid(2) == 1);
            for &(m2, w2, ey) in &y_dec {
                let prod: Vec<(u32, F::Elem)> = match self.kind {
                    Coefficients::Algebra => self.algebra.mul(m1, m2).to_vec(),
                    Coefficients::Ground => vec![(0, f.one())],
                    Coefficients::Module => panic!("cup product needs algebra or ground coefficients"),
                };
                if prod.is_empty() {
                    continue;
                }
                buf.clear();
                buf.extend_from_slice(w1);
                buf.extend_from_slice(w2);
                let c = f.mul(&s, &f.mul(ex, ey));
                for (m, e) in prod {
                    acc.add(self.index(n, m as usize, &buf), &f.mul(&c, &e));
                }
            }
        }
        Some(acc.into_sorted())
    }

    /// Number of words with shifted degree `|m| - n` for the unit coefficient;
    /// these are the first cells of degree `n` when `M = A` or `M = k`.
    pub fn unit_block(&self, n: i64) -> usize {
        self.words.count(-n)
    }

    /// Post-composition with the augmentation, `C*(A; A) → C*(A; k)`. Cell
    /// indices of the unit block coincide in both complexes.
    pub fn augment(&self, n: i64, v: &[(u32, F::Elem)]) -> SparseVec<F::Elem> {
        assert_eq!(self.kind, Coefficients::Algebra);
        let block = self.unit_block(n) as u32;
        v.iter().filter(|(j, _)| *j < block).cloned().collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactla::{PrimeField, RationalField};

    fn s(x: &str) -> String {
        x.to_string()
    }

    fn e3<F: Field>(f: &F) -> DGAlgebra<F> {
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
    fn square_zero_on_e3() {
        for_both(|hc_a, hc_k| {
            assert_eq!(hc_a.sparse().find_dd_violation(), None);
            assert_eq!(hc_k.sparse().find_dd_violation(), None);
            assert_eq!(hc_a.sparse().find_filtration_violation(), None);
        });
    }

    fn for_both(check: impl Fn(&HochschildComplex<RationalField>, &HochschildComplex<RationalField>)) {
        let a = e3(&RationalField);
        let hc_a = HochschildComplex::with_algebra(&a, 6, 1 << 20).unwrap();
        let hc_k = HochschildComplex::with_ground(&a, 6, 1 << 20).unwrap();
        check(&hc_a, &hc_k);
    }

    #[test]
    fn cup_leibniz_on_basis_pairs() {
        for_both(|hc, _| {
            let f = RationalField;
            for n1 in -3..=2 {
                for n2 in -3..=2 {
                    let n = n1 + n2;
                    if n < hc.lo() + 1 || n + 1 > hc.hi() {
                        continue;
                    }
                    for i in 0..hc.dim(n1).min(12) {
                        for j in 0..hc.dim(n2).min(12) {
                            let x = vec![(i as u32, f.one())];
                            let y = vec![(j as u32, f.one())];
                            let lhs = hc.apply_d(n, &hc.cup(n1, &x, n2, &y).unwrap());
                            let mut acc = Accumulator::new(&f);
                            acc.add_scaled(&f.one(), &hc.cup(n1 + 1, &hc.apply_d(n1, &x), n2, &y).unwrap());
                            let s = f.sign(n1.rem_euclid(2) == 1);
                            acc.add_scaled(&s, &hc.cup(n1, &x, n2 + 1, &hc.apply_d(n2, &y)).unwrap());
                            assert_eq!(lhs, acc.into_sorted(), "{} ⌣ {}", hc.label(n1, i), hc.label(n2, j));
                        }
                    }
                }
            }
        });
    }

    #[test]
    fn exterior_ground_complex_has_zero_differential() {
        let q = RationalField;
        let a = DGAlgebra::new(&q, &[(s("1"), 0), (s("x"), 3)], &[], &[]).unwrap();
        let hc = HochschildComplex::with_ground(&a, 8, 1000).unwrap();
        for n in -8..=0 {
            assert_eq!(hc.dim(n), if n % 2 == 0 { 1 } else { 0 });
        }
        assert_eq!(hc.sparse().nnz(), 0);
        let f2 = PrimeField::new(2).unwrap();
        let b = e3(&f2);
        let hc = HochschildComplex::with_algebra(&b, 8, 1 << 20).unwrap();
        assert_eq!(hc.sparse().find_dd_violation(), None);
    }
}
