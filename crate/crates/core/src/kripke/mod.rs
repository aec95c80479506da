//! Bimodal Kripke models, their validation and evaluation.

pub mod batch;
mod birelational;
mod file;
mod eval;
mod frame;
mod model;
mod spectrum;

pub use batch::{BatchError, Context, Evaluation, NodeId, Program};
pub use eval::{
    check_evaluable, eval_classical, eval_forcing, explain_classical, explain_forcing, Assignment, EvalError,
};
pub use frame::{
    default_individual_name, ones, subsets, validate_frame, BimodalFrame, Individual, ModelError,
    ValidationReport, Violation, WorldId, MAX_INDIVIDUALS, MAX_WORLDS,
};
pub use model::{validate_model, BimodalModel, BitSet, ModelFlags, TupleCoder, Value, MAX_TABLE};
pub use file::{parse_model, render_model, FileError, ModelFile, SourceMap};
pub use birelational::{eval_intuitionistic, validate_birelational};
pub use spectrum::{spectrum, DeterminacySpectrum};
