//! Per (scholar, paper) influence weights.
//!
//! Two signals are blended:
//!
//! * rank contribution `e_r`: `e` for the first author, otherwise
//!   `exp((x - k) / x)` for rank `k` out of `x` authors. The first-author
//!   value is not the limit of the general branch, so there is a jump between
//!   ranks 1 and 2.
//! * citation impact `e_c`: `0` for an uncited paper, otherwise
//!   `exp(n / n_max)` where `n_max` is the scholar's best-cited paper.
//!
//! The blend is `λ·e_r + (1 − λ)·e_c` with a single global `λ`.

use std::f64::consts::E;
use std::fmt;

use crate::corpus::{Paper, ScholarProfile};

pub const DEFAULT_LAMBDA: f64 = 0.56;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum InfluenceError {
    #[error("rank {rank} outside 1..={coauthors}")]
    RankOutOfRange { rank: usize, coauthors: usize },
    #[error("citation count {citations} exceeds scholar maximum {max_citations}")]
    CitationsAboveMax { citations: u64, max_citations: u64 },
    #[error("blend weight {0} outside [0, 1]")]
    LambdaOutOfRange(f64),
    #[error("scholar {scholar_id:?} is not an author of paper {paper_id:?}")]
    NotAnAuthor {
        scholar_id: String,
        paper_id: String,
    },
}

/// The blend weight λ ∈ [0, 1].
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct BlendWeight(f64);

impl BlendWeight {
    pub fn new(lambda: f64) -> Result<Self, InfluenceError> {
        if (0.0..=1.0).contains(&lambda) {
            Ok(Self(lambda))
        } else {
            Err(InfluenceError::LambdaOutOfRange(lambda))
        }
    }

    pub fn get(self) -> f64 {
        self.0
    }
}

impl Default for BlendWeight {
    fn default() -> Self {
        Self(DEFAULT_LAMBDA)
    }
}

impl fmt::Display for BlendWeight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

pub fn rank_contribution(coauthors: usize, rank: usize) -> Result<f64, InfluenceError> {
    if rank == 0 || rank > coauthors {
        return Err(InfluenceError::RankOutOfRange { rank, coauthors });
    }
    if rank == 1 {
        return Ok(E);
    }
    let x = coauthors as f64;
    Ok(((x - rank as f64) / x).exp())
}

pub fn citation_flag(citations: u64) -> f64 {
    if citations == 0 {
        0.0
    } else {
        1.0
    }
}

/// `n_max = 0` is treated as a divisor of 1; it only occurs when `n = 0`,
/// where the flag already zeroes the result.
pub fn citation_impact(citations: u64, max_citations: u64) -> Result<f64, InfluenceError> {
    if citations > max_citations {
        return Err(InfluenceError::CitationsAboveMax {
            citations,
            max_citations,
        });
    }
    if citations == 0 {
        return Ok(0.0);
    }
    let divisor = max_citations.max(1) as f64;
    Ok(citation_flag(citations) * (citations as f64 / divisor).exp())
}

pub fn combined_influence(rank_contribution: f64, citation_impact: f64, w: BlendWeight) -> f64 {
    let l = w.get();
    l * rank_contribution + (1.0 - l) * citation_impact
}

#[derive(Debug, Clone, PartialEq)]
pub struct InfluenceBreakdown {
    pub scholar_id: String,
    pub paper_id: String,
    pub rank: usize,
    pub coauthors: usize,
    pub citations: u64,
    pub max_citations: u64,
    pub e_r: f64,
    pub c: f64,
    pub e_c: f64,
    pub e: f64,
}

impl InfluenceBreakdown {
    pub fn compute(
        profile: &ScholarProfile,
        paper: &Paper,
        w: BlendWeight,
    ) -> Result<Self, InfluenceError> {
        let rank = paper
            .rank_of(&profile.scholar_id)
            .ok_or_else(|| InfluenceError::NotAnAuthor {
                scholar_id: profile.scholar_id.clone(),
                paper_id: paper.paper_id.clone(),
            })?;
        let coauthors = paper.coauthor_count();
        let e_r = rank_contribution(coauthors, rank)?;
        let e_c = citation_impact(paper.citations, profile.max_citations)?;
        Ok(Self {
            scholar_id: profile.scholar_id.clone(),
            paper_id: paper.paper_id.clone(),
            rank,
            coauthors,
            citations: paper.citations,
            max_citations: profile.max_citations,
            e_r,
            c: citation_flag(paper.citations),
            e_c,
            e: combined_influence(e_r, e_c, w),
        })
    }
}

#[cfg(test)]
#[allow(clippy::approx_constant)] // reference values are quoted to 9 places
mod tests {
    use super::*;

    const TOL: f64 = 1e-9;

    #[test]
    fn rank_branches() {
        assert!((rank_contribution(7, 1).unwrap() - 2.718281828).abs() < TOL);
        assert_eq!(rank_contribution(4, 4).unwrap(), 1.0);
        assert!((rank_contribution(4, 2).unwrap() - 1.648721271).abs() < TOL);
        assert_eq!(rank_contribution(1, 1).unwrap(), E);
    }

    #[test]
    fn rank_out_of_range() {
        assert!(rank_contribution(3, 0).is_err());
        assert_eq!(
            rank_contribution(3, 4),
            Err(InfluenceError::RankOutOfRange {
                rank: 4,
                coauthors: 3
            })
        );
    }

    #[test]
    fn citation_branches() {
        assert_eq!(citation_flag(0), 0.0);
        assert_eq!(citation_flag(12), 1.0);
        assert_eq!(citation_flag(1), 1.0);
        assert_eq!(citation_impact(0, 50).unwrap(), 0.0);
        assert!((citation_impact(5, 5).unwrap() - 2.718281828).abs() < TOL);
        assert!((citation_impact(5, 10).unwrap() - 1.648721271).abs() < TOL);
        assert_eq!(citation_impact(0, 0).unwrap(), 0.0);
        assert!(citation_impact(11, 10).is_err());
    }

    #[test]
    fn blend_endpoints() {
        let one = BlendWeight::new(1.0).unwrap();
        let zero = BlendWeight::new(0.0).unwrap();
        assert_eq!(combined_influence(1.7, 2.2, one), 1.7);
        assert_eq!(combined_influence(1.7, 2.2, zero), 2.2);
        let d = combined_influence(E, 0.0, BlendWeight::default());
        assert!((d - 1.522237824).abs() < TOL);
    }

    #[test]
    fn blend_weight_range() {
        assert!(BlendWeight::new(-0.01).is_err());
        assert!(BlendWeight::new(1.01).is_err());
        assert!(BlendWeight::new(f64::NAN).is_err());
        assert_eq!(BlendWeight::default().get(), 0.56);
    }

    #[test]
    fn breakdown_for_a_coauthor() {
        let profile = ScholarProfile {
            scholar_id: "s2".into(),
            paper_ids: vec!["p".into()],
            max_citations: 10,
        };
        let paper = Paper {
            paper_id: "p".into(),
            title: None,
            abstract_text: String::new(),
            authors: vec!["s1".into(), "s2".into(), "s3".into(), "s4".into()],
            citations: 5,
        };
        let b = InfluenceBreakdown::compute(&profile, &paper, BlendWeight::new(0.5).unwrap())
            .unwrap();
        assert_eq!((b.rank, b.coauthors), (2, 4));
        assert_eq!(b.c, 1.0);
        assert!((b.e - 0.5 * (0.5f64.exp() + 0.5f64.exp())).abs() < TOL);

        let stranger = ScholarProfile {
            scholar_id: "s9".into(),
            ..profile
        };
        assert!(InfluenceBreakdown::compute(&stranger, &paper, BlendWeight::default()).is_err());
    }
}
