//! Exact arithmetic in `Z[ζ₁₂]` and 3×3 matrices over it.
//!
//! Used to check that a set of generator matrices preserves a Hermitian form
//! and to test relations among them modulo scalars.

mod data;
mod element;
mod matrix;
mod relations;

use num_bigint::BigInt;
use thiserror::Error;

pub use data::{dump_table, form_a, generator, generators};
pub use element::CyclotomicElement;
pub use matrix::{scalar_equivalent, verify_form_preservation, CycMatrix, ScalarWitness};
pub use relations::{
    cs_relation_report, evaluate_word, relation_presentation, GeneratorCheck, RelationCheck, RelationReport,
    CS_RELATIONS, STATED_ABELIANIZATION,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CycError {
    #[error("{element} is not a unit (norm {norm})")]
    NotAUnit { element: String, norm: BigInt },
    #[error("matrix is not invertible over Z[z] (det = {det})")]
    SingularMatrix { det: String },
}
