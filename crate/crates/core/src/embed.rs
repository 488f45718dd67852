//! Paper vectors: the mean of the in-vocabulary word vectors of an abstract.

use std::collections::BTreeMap;

use rayon::prelude::*;

use crate::corpus::{Corpus, Paper};
use crate::vectors::VectorStore;

/// Lowercases and splits on every character that is not a letter or digit.
/// Empty pieces are dropped; order is preserved.
pub fn tokenize(text: &str) -> Vec<String> {
    text.split(|c: char| !c.is_alphanumeric())
        .filter(|t| !t.is_empty())
        .map(str::to_lowercase)
        .collect()
}

#[derive(Debug, Clone, PartialEq)]
pub struct PaperEmbedding {
    pub paper_id: String,
    pub vector: Vec<f64>,
    /// Tokens found in the vector store; the divisor of the mean.
    pub matched_tokens: usize,
    pub total_tokens: usize,
}

impl PaperEmbedding {
    /// No token matched, so the vector is all zeros.
    pub fn is_degenerate(&self) -> bool {
        self.matched_tokens == 0
    }
}

/// Averages the vectors of `tokens` that are present in `store`, skipping the
/// rest. Summation runs left to right.
pub fn mean_vector<S: AsRef<str>>(store: &VectorStore, tokens: &[S]) -> (Vec<f64>, usize) {
    let mut sum = vec![0.0; store.dimension()];
    let mut matched = 0usize;
    for token in tokens {
        if let Some(v) = store.lookup(token.as_ref()) {
            for (acc, x) in sum.iter_mut().zip(v) {
                *acc += x;
            }
            matched += 1;
        }
    }
    if matched > 0 {
        let n = matched as f64;
        for acc in &mut sum {
            *acc /= n;
        }
    }
    (sum, matched)
}

pub fn embed_paper(store: &VectorStore, paper: &Paper) -> PaperEmbedding {
    let tokens = tokenize(&paper.abstract_text);
    let (vector, matched_tokens) = mean_vector(store, &tokens);
    PaperEmbedding {
        paper_id: paper.paper_id.clone(),
        vector,
        matched_tokens,
        total_tokens: tokens.len(),
    }
}

/// Embeds every paper of the corpus, keyed by paper id. Papers are processed
/// in parallel; each paper's sum order is fixed so the result does not depend
/// on the thread count.
pub fn embed_corpus(store: &VectorStore, corpus: &Corpus) -> BTreeMap<String, PaperEmbedding> {
    corpus
        .papers()
        .par_iter()
        .map(|p| embed_paper(store, p))
        .collect::<Vec<_>>()
        .into_iter()
        .map(|e| (e.paper_id.clone(), e))
        .collect()
}
