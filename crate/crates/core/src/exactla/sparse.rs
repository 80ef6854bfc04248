//! Sparse vectors as sorted `(index, value)` lists, plus a hash accumulator.

use rustc_hash::FxHashMap;

use super::field::Field;

pub type SparseVec<E> = Vec<(u32, E)>;

/// Hash-map backed accumulator for building sparse vectors.
#[derive(Clone, Debug)]
pub struct Accumulator<F: Field> {
    field: F,
    map: FxHashMap<u32, F::Elem>,
}

impl<F: Field> Accumulator<F> {
    pub fn new(field: &F) -> Self {
        Accumulator { field: field.clone(), map: FxHashMap::default() }
    }

    pub fn from_sparse(field: &F, v: &[(u32, F::Elem)]) -> Self {
        let mut acc = Self::new(field);
        for (i, e) in v {
            acc.add(*i, e);
        }
        acc
    }

    pub fn add(&mut self, index: u32, value: &F::Elem) {
        let f = &self.field;
        if f.is_zero(value) {
            return;
        }
        match self.map.entry(index) {
            std::collections::hash_map::Entry::Occupied(mut o) => {
                let s = f.add(o.get(), value);
                if f.is_zero(&s) {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
            std::collections::hash_map::Entry::Vacant(v) => {
                v.insert(value.clone());
            }
        }
    }

    /// `self += scale * v`
    pub fn add_scaled(&mut self, scale: &F::Elem, v: &[(u32, F::Elem)]) {
        if self.field.is_zero(scale) {
            return;
        }
        for (i, e) in v {
            let t = self.field.mul(scale, e);
            self.add(*i, &t);
        }
    }

    pub fn get(&self, index: u32) -> Option<&F::Elem> {
        self.map.get(&index)
    }

    pub fn remove(&mut self, index: u32) -> Option<F::Elem> {
        self.map.remove(&index)
    }

    pub fn is_empty(&self) -> bool {
        self.map.is_empty()
    }

    pub fn len(&self) -> usize {
        self.map.len()
    }

    pub fn into_sorted(self) -> SparseVec<F::Elem> {
        let mut v: Vec<(u32, F::Elem)> = self.map.into_iter().collect();
        v.sort_unstable_by_key(|(i, _)| *i);
        v
    }
}

pub fn to_dense<F: Field>(f: &F, len: usize, v: &[(u32, F::Elem)]) -> Vec<F::Elem> {
    let mut out = vec![f.zero(); len];
    for (i, e) in v {
        out[*i as usize] = f.add(&out[*i as usize], e);
    }
    out
}

pub fn from_dense<F: Field>(f: &F, v: &[F::Elem]) -> SparseVec<F::Elem> {
    v.iter().enumerate().filter(|(_, e)| !f.is_zero(e)).map(|(i, e)| (i as u32, e.clone())).collect()
}

pub fn scale<F: Field>(f: &F, s: &F::Elem, v: &[(u32, F::Elem)]) -> SparseVec<F::Elem> {
    if f.is_zero(s) {
        return Vec::new();
    }
    v.iter().map(|(i, e)| (*i, f.mul(s, e))).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactla::PrimeField;

    #[test]
    fn accumulate_cancels() {
        let f = PrimeField::new(3).unwrap();
        let mut acc = Accumulator::new(&f);
        acc.add_scaled(&1, &[(0, 1), (4, 2)]);
        acc.add_scaled(&2, &[(0, 1), (2, 1)]);
        assert_eq!(acc.clone().into_sorted(), vec![(2, 2), (4, 2)]);
        assert_eq!(to_dense(&f, 5, &acc.into_sorted()), vec![0, 0, 2, 0, 2]);
        assert_eq!(from_dense(&f, &[0, 1, 0]), vec![(1, 1)]);
    }
}
