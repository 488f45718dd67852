//! Scholar embeddings built from pre-trained word vectors.
//!
//! A paper is embedded as the mean of its abstract's word vectors. Each of a
//! scholar's papers is weighted by a blend of the scholar's authorship rank on
//! it and its citation count relative to the scholar's best-cited paper, and
//! the weighted paper vectors are averaged into one scholar vector. Cosine
//! similarity between scholar vectors drives collaborator recommendation and
//! is scored against expert annotations.
//!
//! ```no_run
//! use scholar_embed::{BlendWeight, Corpus, Pipeline, VectorStore};
//!
//! let store = VectorStore::load("glove.6B.100d.txt", Some(100))?;
//! let corpus = Corpus::load("papers.jsonl", None)?;
//! let sim = Pipeline::new(&corpus, &store).similarity(BlendWeight::default())?;
//! for (id, s) in scholar_embed::top_k(&sim, "s1", 5)? {
//!     println!("{id} {s:.3}");
//! }
//! # Ok::<(), scholar_embed::Error>(())
//! ```
//!
//! Runnable walkthroughs live in `examples/`; the `scholar-embed` binary
//! wraps the same pipeline for file-based batch runs.

pub mod cli;
pub mod corpus;
pub mod embed;
mod error;
pub mod eval;
pub mod influence;
pub mod output;
pub mod pipeline;
pub mod scholar;
pub mod vectors;

pub use corpus::{load_corpus, Corpus, Paper, Scholar, ScholarProfile};
pub use embed::{embed_corpus, embed_paper, tokenize, PaperEmbedding};
pub use error::{Error, Result};
pub use eval::{
    level_to_value, overall_accuracy, scholar_accuracy, sweep_dimension, sweep_lambda,
    AccuracyReport, AnnotationMatrix,
};
pub use influence::{
    citation_flag, citation_impact, combined_influence, rank_contribution, BlendWeight,
    InfluenceBreakdown,
};
pub use pipeline::Pipeline;
pub use scholar::{
    cosine_similarity, embed_scholar, similarity_matrix, top_k, Divisor, ScholarEmbedding,
    SimilarityMatrix,
};
pub use vectors::VectorStore;
