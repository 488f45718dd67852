//! Scholar vectors, cosine similarity and collaborator ranking.

use std::cmp::Ordering;
use std::collections::BTreeMap;

use rayon::prelude::*;

use crate::corpus::ScholarProfile;
use crate::embed::PaperEmbedding;
use crate::influence::InfluenceBreakdown;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum ScholarError {
    #[error("scholar {0:?} has no papers")]
    NoPapers(String),
    #[error("scholar {scholar_id:?}: no embedding for paper {paper_id:?}")]
    MissingPaperEmbedding {
        scholar_id: String,
        paper_id: String,
    },
    #[error("scholar {scholar_id:?}: no influence record for paper {paper_id:?}")]
    MissingInfluence {
        scholar_id: String,
        paper_id: String,
    },
    #[error("vector length mismatch: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },
    #[error("scholar {scholar_id:?} has dimension {found}, expected {expected}")]
    DimensionMismatch {
        scholar_id: String,
        expected: usize,
        found: usize,
    },
    #[error("unknown scholar {0:?}")]
    UnknownScholar(String),
}

/// What the weighted paper sum is divided by.
///
/// Cosine similarity ignores positive scaling, so every choice gives the same
/// similarity matrix; `PaperCount` is the default.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Divisor {
    #[default]
    PaperCount,
    InfluenceSum,
    One,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ScholarEmbedding {
    pub scholar_id: String,
    pub vector: Vec<f64>,
    /// Papers aggregated, degenerate ones included.
    pub paper_count: usize,
}

impl ScholarEmbedding {
    pub fn is_degenerate(&self) -> bool {
        is_zero(&self.vector)
    }

    pub fn dimension(&self) -> usize {
        self.vector.len()
    }
}

fn is_zero(v: &[f64]) -> bool {
    v.iter().all(|x| *x == 0.0)
}

/// Influence-weighted sum of the scholar's paper vectors divided by
/// `divisor`. Papers are visited in the profile's sorted order.
///
/// `influences` is keyed by paper id and must hold this scholar's records.
pub fn embed_scholar(
    profile: &ScholarProfile,
    paper_embeddings: &BTreeMap<String, PaperEmbedding>,
    influences: &BTreeMap<String, InfluenceBreakdown>,
    dimension: usize,
    divisor: Divisor,
) -> Result<ScholarEmbedding, ScholarError> {
    if profile.paper_ids.is_empty() {
        return Err(ScholarError::NoPapers(profile.scholar_id.clone()));
    }
    let mut ordered: Vec<&String> = profile.paper_ids.iter().collect();
    ordered.sort();

    let mut sum = vec![0.0; dimension];
    let mut weight_total = 0.0;
    for paper_id in ordered {
        let paper = paper_embeddings.get(paper_id).ok_or_else(|| {
            ScholarError::MissingPaperEmbedding {
                scholar_id: profile.scholar_id.clone(),
                paper_id: paper_id.clone(),
            }
        })?;
        let influence = influences
            .get(paper_id)
            .filter(|b| b.scholar_id == profile.scholar_id)
            .ok_or_else(|| ScholarError::MissingInfluence {
                scholar_id: profile.scholar_id.clone(),
                paper_id: paper_id.clone(),
            })?;
        if paper.vector.len() != dimension {
            return Err(ScholarError::DimensionMismatch {
                scholar_id: profile.scholar_id.clone(),
                expected: dimension,
                found: paper.vector.len(),
            });
        }
        for (acc, x) in sum.iter_mut().zip(&paper.vector) {
            *acc += influence.e * x;
        }
        weight_total += influence.e;
    }

    let denom = match divisor {
        Divisor::PaperCount => profile.paper_ids.len() as f64,
        Divisor::InfluenceSum => weight_total,
        Divisor::One => 1.0,
    };
    if denom != 0.0 {
        for acc in &mut sum {
            *acc /= denom;
        }
    }
    Ok(ScholarEmbedding {
        scholar_id: profile.scholar_id.clone(),
        vector: sum,
        paper_count: profile.paper_ids.len(),
    })
}

/// Result of a cosine computation; `Degenerate` when either side is all zeros.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Cosine {
    Defined(f64),
    Degenerate,
}

impl Cosine {
    /// The similarity, with degenerate pairs reported as 0.
    pub fn value(self) -> f64 {
        match self {
            Cosine::Defined(v) => v,
            Cosine::Degenerate => 0.0,
        }
    }

    pub fn is_degenerate(self) -> bool {
        matches!(self, Cosine::Degenerate)
    }
}

pub fn cosine(a: &[f64], b: &[f64]) -> Result<Cosine, ScholarError> {
    if a.len() != b.len() {
        return Err(ScholarError::LengthMismatch {
            left: a.len(),
            right: b.len(),
        });
    }
    let mut dot = 0.0;
    let mut na = 0.0;
    let mut nb = 0.0;
    for (x, y) in a.iter().zip(b) {
        dot += x * y;
        na += x * x;
        nb += y * y;
    }
    if na == 0.0 || nb == 0.0 {
        return Ok(Cosine::Degenerate);
    }
    Ok(Cosine::Defined(
        (dot / (na.sqrt() * nb.sqrt())).clamp(-1.0, 1.0),
    ))
}

/// Cosine similarity with degenerate pairs mapped to 0.
pub fn cosine_similarity(a: &[f64], b: &[f64]) -> Result<f64, ScholarError> {
    cosine(a, b).map(Cosine::value)
}

/// Symmetric scholar × scholar cosine matrix, stored row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct SimilarityMatrix {
    ids: Vec<String>,
    values: Vec<f64>,
    degenerate: Vec<bool>,
}

impl SimilarityMatrix {
    /// Builds the matrix from explicit values. `values` is row-major,
    /// `ids.len()²` long, and must be symmetric.
    pub fn from_values(ids: Vec<String>, values: Vec<f64>) -> Result<Self, ScholarError> {
        let n = ids.len();
        if values.len() != n * n {
            return Err(ScholarError::LengthMismatch {
                left: values.len(),
                right: n * n,
            });
        }
        let degenerate = (0..n)
            .map(|i| (0..n).all(|j| values[i * n + j] == 0.0))
            .collect();
        Ok(Self {
            ids,
            values,
            degenerate,
        })
    }

    pub fn ids(&self) -> &[String] {
        &self.ids
    }

    pub fn len(&self) -> usize {
        self.ids.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ids.is_empty()
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.values[i * self.ids.len() + j]
    }

    pub fn row(&self, i: usize) -> &[f64] {
        let n = self.ids.len();
        &self.values[i * n..(i + 1) * n]
    }

    pub fn index_of(&self, scholar_id: &str) -> Option<usize> {
        self.ids.iter().position(|s| s == scholar_id)
    }

    pub fn is_degenerate(&self, i: usize) -> bool {
        self.degenerate[i]
    }

    /// Ids of scholars whose vector was all zeros.
    pub fn degenerate_ids(&self) -> Vec<&str> {
        self.ids
            .iter()
            .zip(&self.degenerate)
            .filter(|(_, d)| **d)
            .map(|(s, _)| s.as_str())
            .collect()
    }
}

/// Computes every unordered pair once and mirrors it. The diagonal is 1, or
/// 0 for degenerate scholars. Order follows `embeddings`.
pub fn similarity_matrix(
    embeddings: &[ScholarEmbedding],
) -> Result<SimilarityMatrix, ScholarError> {
    let n = embeddings.len();
    if let Some(first) = embeddings.first() {
        let d = first.dimension();
        if let Some(bad) = embeddings.iter().find(|e| e.dimension() != d) {
            return Err(ScholarError::DimensionMismatch {
                scholar_id: bad.scholar_id.clone(),
                expected: d,
                found: bad.dimension(),
            });
        }
    }
    let degenerate: Vec<bool> = embeddings.iter().map(|e| e.is_degenerate()).collect();

    // Upper triangle by row; each cell depends only on its own pair.
    let upper: Vec<Vec<f64>> = (0..n)
        .into_par_iter()
        .map(|i| {
            ((i + 1)..n)
                .map(|j| cosine(&embeddings[i].vector, &embeddings[j].vector).map(Cosine::value))
                .collect::<Result<Vec<_>, _>>()
        })
        .collect::<Result<_, _>>()?;

    let mut values = vec![0.0; n * n];
    for i in 0..n {
        values[i * n + i] = if degenerate[i] { 0.0 } else { 1.0 };
        for (offset, v) in upper[i].iter().enumerate() {
            let j = i + 1 + offset;
            values[i * n + j] = *v;
            values[j * n + i] = *v;
        }
    }
    Ok(SimilarityMatrix {
        ids: embeddings.iter().map(|e| e.scholar_id.clone()).collect(),
        values,
        degenerate,
    })
}

/// The `k` most similar other scholars, descending; ties go to the smaller id.
pub fn top_k(
    matrix: &SimilarityMatrix,
    scholar_id: &str,
    k: usize,
) -> Result<Vec<(String, f64)>, ScholarError> {
    let i = matrix
        .index_of(scholar_id)
        .ok_or_else(|| ScholarError::UnknownScholar(scholar_id.to_string()))?;
    let mut others: Vec<(&String, f64)> = matrix
        .ids()
        .iter()
        .enumerate()
        .filter(|(j, _)| *j != i)
        .map(|(j, id)| (id, matrix.get(i, j)))
        .collect();
    others.sort_by(|a, b| {
        b.1.partial_cmp(&a.1)
            .unwrap_or(Ordering::Equal)
            .then_with(|| a.0.cmp(b.0))
    });
    Ok(others
        .into_iter()
        .take(k)
        .map(|(id, v)| (id.clone(), v))
        .collect())
}
