//! Reduced bar words, Hochschild cochain complexes, cup products and the
//! algebras `HH^*(A)` and `Ext_A(k, k)`.

mod complex;
mod shearing;
mod table;
pub mod unnormalized;
mod words;

use thiserror::Error;

use crate::dga::{DGAlgebra, DgaError};
use crate::exactla::Field;
use crate::graded::GradedError;

pub use complex::{Coefficients, HochschildComplex};
pub use shearing::{nilpotency_index, Nilpotency, Shearing};
pub use table::{CohomologyAlgebra, GradedAlgebraTable, TableEntry};
pub use words::{Word, WordTable, DEFAULT_BUDGET};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HochschildError {
    #[error("window of {words} bar words exceeds the budget of {budget}; raise --budget or lower --window")]
    Budget { words: usize, budget: usize },
    #[error("basis element `{0}` has degree below 2; only strictly simply connected algebras are supported")]
    NotStrict(String),
    #[error("too many augmentation-ideal basis elements ({0}, at most 255)")]
    TooManyLetters(usize),
    #[error("window must be non-negative (got {0})")]
    Window(i64),
    #[error("shared word table does not reach the requested window")]
    WordTableTooShort,
    #[error("tables were computed on different windows")]
    WindowMismatch,
    #[error(transparent)]
    Graded(#[from] GradedError),
    #[error(transparent)]
    Dga(#[from] DgaError),
}

/// `HH^*(A)` on the window `[-window, window]`. The reduction keeps the
/// coefficient filtration so it can be reused for the spectral sequence.
pub fn hh_algebra<F: Field>(a: &DGAlgebra<F>, window: i64, budget: usize) -> Result<CohomologyAlgebra<F>, HochschildError> {
    a.ensure_valid()?;
    CohomologyAlgebra::new(HochschildComplex::with_algebra(a, window, budget)?, true)
}

/// `Ext_A(k, k)` as the cohomology of `C*(A; k)`.
pub fn ext_algebra<F: Field>(a: &DGAlgebra<F>, window: i64, budget: usize) -> Result<CohomologyAlgebra<F>, HochschildError> {
    a.ensure_valid()?;
    CohomologyAlgebra::new(HochschildComplex::with_ground(a, window, budget)?, false)
}

/// Both algebras over one word table, plus the shearing map between them.
pub fn shearing<F: Field>(
    a: &DGAlgebra<F>,
    window: i64,
    budget: usize,
) -> Result<(CohomologyAlgebra<F>, CohomologyAlgebra<F>, Shearing<F>), HochschildError> {
    a.ensure_valid()?;
    let top = a.top_degree();
    let words = std::sync::Arc::new(WordTable::new(a, HochschildComplex::<F>::required_shift(window, top), budget)?);
    let hc_a = HochschildComplex::with_words(a, crate::dga::DGBimodule::regular(a), Coefficients::Algebra, window, words.clone())?;
    let hc_k = HochschildComplex::with_words(a, crate::dga::DGBimodule::ground(a), Coefficients::Ground, window, words)?;
    let hh = CohomologyAlgebra::new(hc_a, true)?;
    let ext = CohomologyAlgebra::new(hc_k, false)?;
    let shr = Shearing::new(&hh, &ext)?;
    Ok((hh, ext, shr))
}
