//! Finitely presented groups, torus-surgery relators and abelianization.
//!
//! Commutators follow `[a, b] = a⁻¹b⁻¹ab` everywhere. Only exponent sums
//! reach the homology computations, so the bracket order never affects a
//! reported group.

mod builtins;
mod group;
mod surgery;
mod word;

use thiserror::Error;

pub use builtins::{
    product_presentation, y1_complement, y1_stated_relations, y1_surgeries, y_n_complement,
    y_n_stated_relations, y_n_surgeries, z_n_complement, z_n_surgeries, StatedRelation,
};
pub(crate) use group::torsion_lower_bound_note;
pub use group::{cyclic, surface_group, FreeProduct, Presentation};
pub use surgery::{SurgeryCoefficient, SurgeryDatum};
pub use word::{is_valid_name, Word};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PresentationError {
    #[error("cannot parse word `{word}`: {reason}")]
    WordSyntax { word: String, reason: String },
    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),
    #[error("generator `{0}` declared twice")]
    DuplicateGenerator(String),
    #[error("invalid generator name `{0}`")]
    InvalidName(String),
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("cannot parse surgery coefficient `{0}`")]
    Coefficient(String),
}
