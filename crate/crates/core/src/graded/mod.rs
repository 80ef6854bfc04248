//! Graded vector spaces, cochain complexes and their cohomology.
//!
//! Everything is stored cohomologically: the piece in degree `n` is `X^n`
//! and differentials raise degree by one. Homological degrees are the
//! negatives, `X_n = X^{-n}`; use [`homological`] when reporting them.

mod complex;
pub mod reduce;

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use complex::{total_complex, ChainMap, CochainComplex, CohomologyPiece};

/// Homological degree of a cohomological degree (and vice versa).
pub fn homological(n: i64) -> i64 {
    -n
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GradedError {
    #[error("duplicate basis label `{label}` in degree {degree}")]
    DuplicateLabel { degree: i64, label: String },
    #[error("differential d^{degree} has shape {rows}x{cols}, expected {want_rows}x{want_cols}")]
    Shape { degree: i64, rows: usize, cols: usize, want_rows: usize, want_cols: usize },
    #[error("d^{} ∘ d^{degree} ≠ 0 (first offending basis element `{label}` in degree {degree})", degree + 1)]
    NotAComplex { degree: i64, label: String },
    #[error("degree {degree} is outside the certified window [{lo}, {hi}]")]
    OutsideWindow { degree: i64, lo: i64, hi: i64 },
    #[error("horizontal map from row {row} does not commute with the vertical differentials in degree {degree}")]
    NotAChainMap { row: usize, degree: i64 },
    #[error("bicomplex rows and horizontal maps do not match: {0}")]
    Bicomplex(String),
}

/// Finite-dimensional Z-graded vector space with labelled basis.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct GradedVectorSpace {
    pieces: BTreeMap<i64, Vec<String>>,
}

impl GradedVectorSpace {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_pieces(pieces: impl IntoIterator<Item = (i64, Vec<String>)>) -> Result<Self, GradedError> {
        let mut s = Self::new();
        for (d, labels) in pieces {
            for l in labels {
                s.push(d, l)?;
            }
        }
        Ok(s)
    }

    /// Appends a basis element; order within a degree is insertion order.
    pub fn push(&mut self, degree: i64, label: impl Into<String>) -> Result<usize, GradedError> {
        let label = label.into();
        let piece = self.pieces.entry(degree).or_default();
        if piece.contains(&label) {
            return Err(GradedError::DuplicateLabel { degree, label });
        }
        piece.push(label);
        Ok(piece.len() - 1)
    }

    pub fn dim(&self, degree: i64) -> usize {
        self.pieces.get(&degree).map_or(0, Vec::len)
    }

    pub fn labels(&self, degree: i64) -> &[String] {
        self.pieces.get(&degree).map_or(&[], Vec::as_slice)
    }

    pub fn index_of(&self, degree: i64, label: &str) -> Option<usize> {
        self.labels(degree).iter().position(|l| l == label)
    }

    /// Degrees with a nonzero piece, ascending.
    pub fn degrees(&self) -> impl Iterator<Item = i64> + '_ {
        self.pieces.iter().filter(|(_, v)| !v.is_empty()).map(|(d, _)| *d)
    }

    pub fn min_degree(&self) -> Option<i64> {
        self.degrees().next()
    }

    pub fn max_degree(&self) -> Option<i64> {
        self.degrees().last()
    }

    pub fn total_dim(&self) -> usize {
        self.pieces.values().map(Vec::len).sum()
    }

    pub fn dims(&self) -> BTreeMap<i64, usize> {
        self.pieces.iter().filter(|(_, v)| !v.is_empty()).map(|(d, v)| (*d, v.len())).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn duplicate_labels_rejected() {
        let mut s = GradedVectorSpace::new();
        s.push(0, "1").unwrap();
        s.push(3, "x").unwrap();
        assert!(matches!(s.push(3, "x"), Err(GradedError::DuplicateLabel { degree: 3, .. })));
        s.push(4, "x").unwrap();
        assert_eq!(s.dims(), BTreeMap::from([(0, 1), (3, 1), (4, 1)]));
        assert_eq!(homological(-2), 2);
    }
}
