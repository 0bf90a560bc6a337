//! Line-based recipes that chain block operations, and the reports they
//! produce.
//!
//! ```text
//! recipe X1
//! param p = 7
//! step product name=Y g=3 h=1
//! expect Y.euler = 0 cite "§4"
//! ```

mod builtins;
mod parse;
mod report;
mod run;

use thiserror::Error;

use crate::geography::GeoError;
use crate::presentation::PresentationError;

pub use builtins::{builtin_recipe, builtin_recipe_names};
pub use parse::{eval_int, Expectation, Param, Recipe, Step, Value};
pub use report::{
    Annotation, Discrepancy, ExpectationResult, H1Result, NamedValue, Report, ResultSummary, StatedValue,
    StepSnapshot,
};
pub use run::run_recipe;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RecipeError {
    #[error("{line}:{col}: {message}")]
    Syntax {
        line: usize,
        col: usize,
        message: String,
    },
    #[error("{line}:{col}: unknown step `{op}`")]
    UnknownStep { line: usize, col: usize, op: String },
    #[error("{line}:{col}: parameter {param} = {value} is below its minimum {min}")]
    ParameterOutOfRange {
        line: usize,
        col: usize,
        param: String,
        value: i64,
        min: i64,
    },
    #[error("recipe declares no parameter `{0}`")]
    UnknownParameter(String),
    #[error("no built-in recipe `{0}`")]
    UnknownRecipe(String),
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum StepError {
    #[error("no block named `{0}`")]
    MissingBlock(String),
    #[error("argument `{key}`: {message}")]
    BadArgument { key: String, message: String },
    #[error("invariant violated: {0}")]
    Invariant(String),
    #[error(transparent)]
    Geo(#[from] GeoError),
    #[error(transparent)]
    Presentation(#[from] PresentationError),
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("step {step} (`{op}`, line {line}): {source}")]
pub struct RunError {
    pub step: usize,
    pub line: usize,
    pub op: String,
    pub source: StepError,
}

/// Process exit codes used by the command-line runner.
pub mod exit {
    pub const OK: i32 = 0;
    pub const ASSERTION_FAILED: i32 = 1;
    pub const PARSE_ERROR: i32 = 2;
    pub const STEP_ERROR: i32 = 3;
}
