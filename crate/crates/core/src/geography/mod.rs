//! Euler characteristic, signature and surface bookkeeping for 4-manifold
//! building blocks.

mod block;
mod catalog;
mod ops;

use thiserror::Error;

use crate::presentation::PresentationError;

pub use block::{Block, CharNumbers, Parity, Profile, TrackedSurface};
pub use catalog::{builtin_blocks, cs_surface, mumford_blown_up, mumford_m};
pub use ops::{
    adjunction_genus, blow_up, fiber_sum, homology_profile, product_block, sew_surfaces, torus_surgery,
    GluingSpec,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GeoError {
    #[error("s + k = {0} is odd, genus is not an integer")]
    NonIntegralGenus(i64),
    #[error("s + k = {0} gives negative genus")]
    NegativeGenus(i64),
    #[error("block `{block}` has no surface `{label}`")]
    UnknownSurface { block: String, label: String },
    #[error("cannot glue genus {0} to genus {1}")]
    GenusMismatch(u32, u32),
    #[error("squares {0} and {1} do not cancel")]
    SquareMismatch(i64, i64),
    #[error("surfaces meet the gluing surface {0} times, expected once")]
    UnsupportedIntersectionPattern(u32),
    #[error("block `{0}` carries no presentation")]
    MissingPresentation(String),
    #[error("b1 of `{0}` is unknown")]
    UnknownB1(String),
    #[error("b2 = {b2} and signature {signature} do not give integral b2+ and b2-")]
    HalfIntegerB2 { b2: i64, signature: i64 },
    #[error("surface `{label}` fails adjunction: genus {genus}, square {square}, K.S {k}")]
    Adjunction {
        label: String,
        genus: u32,
        square: i64,
        k: i64,
    },
    #[error(transparent)]
    Presentation(#[from] PresentationError),
}
