//! End-to-end composition: paper vectors → influences → scholar vectors →
//! similarity → accuracy.
//!
//! Paper vectors do not depend on the blend weight, so a [`Pipeline`] computes
//! them once and reuses them for every λ it is asked about.

use std::collections::BTreeMap;

use rayon::prelude::*;

use crate::corpus::{Corpus, ScholarProfile};
use crate::embed::{embed_corpus, PaperEmbedding};
use crate::error::Result;
use crate::eval::{overall_accuracy, AccuracyReport, AnnotationMatrix};
use crate::influence::{BlendWeight, InfluenceBreakdown};
use crate::scholar::{embed_scholar, similarity_matrix, Divisor, ScholarEmbedding, SimilarityMatrix};
use crate::vectors::VectorStore;

/// Influence records of one scholar, keyed by paper id.
pub type ScholarInfluences = BTreeMap<String, InfluenceBreakdown>;

pub struct Pipeline<'a> {
    corpus: &'a Corpus,
    profiles: BTreeMap<String, ScholarProfile>,
    papers: BTreeMap<String, PaperEmbedding>,
    dimension: usize,
}

/// Token coverage of the corpus against a vector store.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct TokenStats {
    pub total: usize,
    pub matched: usize,
}

impl TokenStats {
    pub fn oov_rate(&self) -> f64 {
        if self.total == 0 {
            0.0
        } else {
            (self.total - self.matched) as f64 / self.total as f64
        }
    }
}

impl<'a> Pipeline<'a> {
    pub fn new(corpus: &'a Corpus, store: &VectorStore) -> Self {
        Self {
            corpus,
            profiles: corpus.scholar_profiles(),
            papers: embed_corpus(store, corpus),
            dimension: store.dimension(),
        }
    }

    pub fn corpus(&self) -> &Corpus {
        self.corpus
    }

    pub fn dimension(&self) -> usize {
        self.dimension
    }

    pub fn profiles(&self) -> &BTreeMap<String, ScholarProfile> {
        &self.profiles
    }

    pub fn paper_embeddings(&self) -> &BTreeMap<String, PaperEmbedding> {
        &self.papers
    }

    pub fn token_stats(&self) -> TokenStats {
        self.papers.values().fold(TokenStats::default(), |acc, p| TokenStats {
            total: acc.total + p.total_tokens,
            matched: acc.matched + p.matched_tokens,
        })
    }

    /// Influence records keyed by scholar id, then paper id.
    pub fn influences(&self, w: BlendWeight) -> Result<BTreeMap<String, ScholarInfluences>> {
        let rows: Vec<(String, ScholarInfluences)> = self
            .profiles
            .par_iter()
            .map(|(id, profile)| {
                let records = profile
                    .paper_ids
                    .iter()
                    .map(|pid| {
                        let paper = self.corpus.paper(pid).expect("profile paper in corpus");
                        InfluenceBreakdown::compute(profile, paper, w)
                            .map(|b| (pid.clone(), b))
                    })
                    .collect::<Result<ScholarInfluences, _>>()?;
                Ok((id.clone(), records))
            })
            .collect::<Result<_>>()?;
        Ok(rows.into_iter().collect())
    }

    /// Scholar vectors in ascending scholar-id order.
    pub fn scholar_embeddings(
        &self,
        w: BlendWeight,
        divisor: Divisor,
    ) -> Result<Vec<ScholarEmbedding>> {
        let influences = self.influences(w)?;
        self.profiles
            .par_iter()
            .map(|(id, profile)| {
                Ok(embed_scholar(
                    profile,
                    &self.papers,
                    &influences[id],
                    self.dimension,
                    divisor,
                )?)
            })
            .collect()
    }

    pub fn similarity(&self, w: BlendWeight) -> Result<SimilarityMatrix> {
        Ok(similarity_matrix(
            &self.scholar_embeddings(w, Divisor::PaperCount)?,
        )?)
    }

    pub fn evaluate(&self, w: BlendWeight, annotations: &AnnotationMatrix) -> Result<AccuracyReport> {
        let sim = self.similarity(w)?;
        let accuracy = overall_accuracy(&sim, annotations)?;
        Ok(AccuracyReport {
            lambda: w.get(),
            dimension: self.dimension,
            accuracy,
        })
    }
}
