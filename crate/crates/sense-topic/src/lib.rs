//! Knowledge-based all-words word sense disambiguation.
//!
//! The crate couples a WordNet 3.0 knowledge base with a synset topic model:
//! documents are modeled as mixtures over WordNet synsets, synset proportions
//! get a logistic-normal prior whose precision matrix is built from
//! gloss-overlap similarity, and per-synset word distributions get Dirichlet
//! priors from sense frequencies. All priors are fixed from the knowledge
//! base; inference is collapsed Gibbs sampling over synset assignments with
//! interleaved MAP updates of the per-document logistic-normal parameters.
//!
//! Modules:
//! - [`wordnet`]: database parsing, sense inventories, priors, morphology.
//! - [`similarity`]: gloss-overlap similarity and precision matrices.
//! - [`model`]: the sampler and the full inference pipeline.
//! - [`corpus`]: evaluation-corpus and plain-text ingestion.
//! - [`eval`]: scoring and knowledge-based baselines.

pub mod corpus;
pub mod error;
pub mod eval;
pub mod model;
pub mod similarity;
pub mod wordnet;

pub use error::{Error, Result};
