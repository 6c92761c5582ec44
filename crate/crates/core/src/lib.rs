//! Gap-admitting truth for propositional and prenex first-order sentences
//! over finite interpretations.
//!
//! A sentence is true when it is classically satisfied and every atom it
//! mentions is needed to fix its value; false when its negation is true in
//! that sense; otherwise it has no truth value.

pub mod ast;
pub mod classical;
pub mod cli;
pub mod error;
pub mod harness;
pub mod model;
pub mod mono;
pub mod poly;
pub mod prop_relevance;

pub use ast::{parse_formula, parse_prenex, Atom, Flavor, Formula, PrenexSentence, Quantifier, Term};
pub use error::{Error, Result};
pub use model::{parse_model, Interpretation, Signature};
pub use poly::{evaluate, evaluate_sentence, verdict, RelevanceMode, Sentence, Verdict};
