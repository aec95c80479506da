//! Bimodal analysis of potentialism: formulas, translations, Kripke
//! semantics, Hilbert-style proof checking and bounded model search.

pub mod cli;
pub mod formula;
pub mod kripke;
pub mod proofs;
pub mod search;
pub mod translate;
