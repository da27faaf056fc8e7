//! Exact 2×2 and 3×3 matrices, Hermitian forms, and finite matrix groups.

mod closure;
mod form;
mod matrix;
mod scalar;

use thiserror::Error;

use crate::cyclo::CycError;

pub use closure::{
    alternating_product, braid_length, braid_length_in, eval_word, find_isomorphism, group_closure,
    verify_relation, ClosureMode, GroupClosure, DEFAULT_CAP,
};
pub use form::{preserves_form, HermitianForm, Signature};
pub use matrix::{CycMatrix, SquareMatrix};
pub use scalar::{Scalar, F3};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HermError {
    #[error("matrix is singular")]
    Singular,
    #[error("matrix is not Hermitian")]
    NotHermitian,
    #[error("closure exceeded {cap} elements; the group may be infinite")]
    CapExceeded { cap: usize },
    #[error("no generators given")]
    NoGenerators,
    #[error("word refers to missing generator {0}")]
    BadGenerator(usize),
    #[error(transparent)]
    Cyc(#[from] CycError),
}

/// All invertible 2×2 matrices over `F_3`; their closure is `GL(2, F_3)`.
pub fn gl2_f3_generators() -> Vec<SquareMatrix<F3>> {
    let mut out = Vec::new();
    for a in F3::all() {
        for b in F3::all() {
            for c in F3::all() {
                for d in F3::all() {
                    let m = SquareMatrix::from_rows(vec![vec![a, b], vec![c, d]]);
                    if !m.det().is_zero() {
                        out.push(m);
                    }
                }
            }
        }
    }
    out
}
