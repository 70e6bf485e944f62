//! Chain-complex linear algebra over GF(2) and ℤ: Betti numbers, Smith
//! normal form, and integer 2-cochains on cubical complexes.

mod chain;
mod cochain;
mod snf;

pub use chain::{betti_gf2, ChainComplexGF2};
pub use cochain::{evaluate_pairing, is_cocycle, Chain2, Coefficients, Cochain2};
pub use snf::{smith_normal_form, SmithForm, SNF_MAX_DIM};

use thiserror::Error;

use crate::cubical::CubicalCell;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum HomologyError {
    #[error("degree {0} out of range")]
    InvalidDegree(usize),
    #[error("boundary matrices do not compose to zero at degree {0}")]
    NotAComplex(usize),
    #[error("matrix {rows}x{cols} exceeds the {max}x{max} Smith normal form limit")]
    TooLarge { rows: usize, cols: usize, max: usize },
    #[error("integer overflow during Smith normal form")]
    Overflow,
    #[error("cochain is undefined on cell {0}")]
    IncompleteCochain(CubicalCell),
    #[error("cell {0} is not in the host complex")]
    UnknownCell(CubicalCell),
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
}
