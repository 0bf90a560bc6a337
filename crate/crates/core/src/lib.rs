//! Invariant bookkeeping for symplectic 4-manifold constructions: exact
//! cyclotomic matrix checks, Smith normal form, group presentations,
//! geography of building blocks and a recipe runner.

pub mod cyclotomic;
pub mod geography;
pub mod lattice;
pub mod presentation;
pub mod recipe;
pub mod sweep;
