//! Agreement between computed similarities and expert annotations, and the
//! λ / dimension sweep drivers built on it.
//!
//! Annotation levels 1..=5 map to target similarities `level / 5`. For each
//! scholar the row of similarities to every *other* scholar is compared with
//! the matching row of targets by cosine; the overall score is the unweighted
//! mean of those per-scholar values.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fs::File;
use std::io::{self, Read};
use std::path::{Path, PathBuf};

use rayon::prelude::*;

use crate::corpus::Corpus;
use crate::error::Result;
use crate::influence::BlendWeight;
use crate::pipeline::Pipeline;
use crate::scholar::{cosine, Cosine, SimilarityMatrix};
use crate::vectors::VectorStore;

#[derive(Debug, thiserror::Error)]
pub enum EvalError {
    #[error("cannot read annotations {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: io::Error,
    },
    #[error("{source_name}:{line}: {message}")]
    Malformed {
        source_name: String,
        line: usize,
        message: String,
    },
    #[error("annotation level {0} outside 1..=5")]
    LevelOutOfRange(i64),
    #[error("{source_name}:{line}: self pair ({scholar_id}, {scholar_id})")]
    SelfPair {
        source_name: String,
        line: usize,
        scholar_id: String,
    },
    #[error("{source_name}:{line}: pair ({a}, {b}) annotated more than once")]
    DuplicatePair {
        source_name: String,
        line: usize,
        a: String,
        b: String,
    },
    #[error("annotations miss {} pair(s): {}", .0.len(), format_pairs(.0))]
    MissingPairs(Vec<(String, String)>),
    #[error("annotations need at least two scholars")]
    TooFewScholars,
    #[error("scholar sets differ; only in similarities: {only_similarity:?}; only in annotations: {only_annotations:?}")]
    ScholarSetMismatch {
        only_similarity: Vec<String>,
        only_annotations: Vec<String>,
    },
    #[error("accuracy vectors differ in length: {0} vs {1}")]
    LengthMismatch(usize, usize),
    #[error("accuracy vectors are empty")]
    EmptyVectors,
    #[error("empty sweep grid")]
    EmptyGrid,
    #[error("invalid grid {spec:?}: {reason}")]
    InvalidGrid { spec: String, reason: String },
}

fn format_pairs(pairs: &[(String, String)]) -> String {
    pairs
        .iter()
        .map(|(a, b)| format!("({a}, {b})"))
        .collect::<Vec<_>>()
        .join(", ")
}

pub fn level_to_value(level: i64) -> Result<f64, EvalError> {
    if (1..=5).contains(&level) {
        Ok(level as f64 / 5.0)
    } else {
        Err(EvalError::LevelOutOfRange(level))
    }
}

/// Nearest annotation level for a similarity value; ties go to the lower
/// level and anything below 0.2 maps to level 1.
pub fn nearest_level(similarity: f64) -> u8 {
    let mut best = 1u8;
    for level in 2..=5u8 {
        let v = level as f64 / 5.0;
        if (similarity - v).abs() < (similarity - best as f64 / 5.0).abs() {
            best = level;
        }
    }
    best
}

/// Expert collaboration levels over every unordered scholar pair.
#[derive(Debug, Clone, PartialEq)]
pub struct AnnotationMatrix {
    ids: Vec<String>,
    /// Row-major, 0 on the diagonal.
    levels: Vec<u8>,
}

impl AnnotationMatrix {
    pub fn load(path: impl AsRef<Path>) -> Result<Self, EvalError> {
        let path = path.as_ref();
        let file = File::open(path).map_err(|source| EvalError::Io {
            path: path.to_path_buf(),
            source,
        })?;
        Self::from_reader(file, &path.display().to_string())
    }

    /// Reads `scholar_a,scholar_b,level` rows. A leading header row is
    /// skipped when its third field is not an integer.
    pub fn from_reader<R: Read>(reader: R, source_name: &str) -> Result<Self, EvalError> {
        let mut rdr = csv::ReaderBuilder::new()
            .has_headers(false)
            .trim(csv::Trim::All)
            .flexible(true)
            .from_reader(reader);
        let mut pairs = Vec::new();
        for (idx, record) in rdr.records().enumerate() {
            let line = idx + 1;
            let malformed = |message: String| EvalError::Malformed {
                source_name: source_name.to_string(),
                line,
                message,
            };
            let record = record.map_err(|e| malformed(e.to_string()))?;
            if record.len() == 1 && record[0].is_empty() {
                continue;
            }
            if record.len() != 3 {
                return Err(malformed(format!("expected 3 fields, found {}", record.len())));
            }
            let level = match record[2].parse::<i64>() {
                Ok(l) => l,
                Err(_) if idx == 0 => continue,
                Err(_) => return Err(malformed(format!("bad level {:?}", &record[2]))),
            };
            level_to_value(level).map_err(|e| malformed(e.to_string()))?;
            pairs.push((record[0].to_string(), record[1].to_string(), level as u8, line));
        }
        Self::build(pairs, source_name)
    }

    /// Builds from `(a, b, level)` triples; each unordered pair exactly once.
    pub fn from_pairs<I, S>(pairs: I) -> Result<Self, EvalError>
    where
        I: IntoIterator<Item = (S, S, u8)>,
        S: Into<String>,
    {
        let mut rows = Vec::new();
        for (idx, (a, b, level)) in pairs.into_iter().enumerate() {
            level_to_value(level as i64)?;
            rows.push((a.into(), b.into(), level, idx + 1));
        }
        Self::build(rows, "<pairs>")
    }

    fn build(pairs: Vec<(String, String, u8, usize)>, source_name: &str) -> Result<Self, EvalError> {
        let ids: Vec<String> = pairs
            .iter()
            .flat_map(|(a, b, _, _)| [a.clone(), b.clone()])
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect();
        if ids.len() < 2 {
            return Err(EvalError::TooFewScholars);
        }
        let pos: HashMap<&str, usize> = ids.iter().enumerate().map(|(i, s)| (s.as_str(), i)).collect();
        let n = ids.len();
        let mut levels = vec![0u8; n * n];
        for (a, b, level, line) in &pairs {
            if a == b {
                return Err(EvalError::SelfPair {
                    source_name: source_name.to_string(),
                    line: *line,
                    scholar_id: a.clone(),
                });
            }
            let (i, j) = (pos[a.as_str()], pos[b.as_str()]);
            if levels[i * n + j] != 0 {
                return Err(EvalError::DuplicatePair {
                    source_name: source_name.to_string(),
                    line: *line,
                    a: a.clone(),
                    b: b.clone(),
                });
            }
            levels[i * n + j] = *level;
            levels[j * n + i] = *level;
        }
        let mut missing = Vec::new();
        for i in 0..n {
            for j in (i + 1)..n {
                if levels[i * n + j] == 0 {
                    missing.push((ids[i].clone(), ids[j].clone()));
                }
            }
        }
        if !missing.is_empty() {
            return Err(EvalError::MissingPairs(missing));
        }
        Ok(Self { ids, levels })
    }

    /// Quantizes every off-diagonal similarity to its nearest level.
    pub fn quantized_from(sim: &SimilarityMatrix) -> Result<Self, EvalError> {
        let ids = sim.ids();
        let mut pairs = Vec::new();
        for i in 0..ids.len() {
            for j in (i + 1)..ids.len() {
                pairs.push((ids[i].clone(), ids[j].clone(), nearest_level(sim.get(i, j))));
            }
        }
        Self::from_pairs(pairs)
    }

    /// Sorted ascending.
    pub fn ids(&self) -> &[String] {
        &self.ids
    }

    pub fn level(&self, i: usize, j: usize) -> u8 {
        self.levels[i * self.ids.len() + j]
    }

    /// Target similarity `level / 5`; 0 on the diagonal.
    pub fn value(&self, i: usize, j: usize) -> f64 {
        match self.level(i, j) {
            0 => 0.0,
            l => l as f64 / 5.0,
        }
    }

    pub fn index_of(&self, scholar_id: &str) -> Option<usize> {
        self.ids.binary_search_by(|s| s.as_str().cmp(scholar_id)).ok()
    }

    /// CSV rows `scholar_a,scholar_b,level` with a header, pairs in id order.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("scholar_a,scholar_b,level\n");
        for i in 0..self.ids.len() {
            for j in (i + 1)..self.ids.len() {
                out.push_str(&format!("{},{},{}\n", self.ids[i], self.ids[j], self.level(i, j)));
            }
        }
        out
    }
}

/// Cosine agreement between one scholar's similarity row and target row,
/// both without the self entry.
pub fn scholar_accuracy(similarities: &[f64], targets: &[f64]) -> Result<Cosine, EvalError> {
    if similarities.len() != targets.len() {
        return Err(EvalError::LengthMismatch(similarities.len(), targets.len()));
    }
    if similarities.is_empty() {
        return Err(EvalError::EmptyVectors);
    }
    Ok(cosine(similarities, targets).expect("lengths checked"))
}

#[derive(Debug, Clone, PartialEq)]
pub struct Accuracy {
    pub per_scholar: BTreeMap<String, f64>,
    pub overall: f64,
    /// Scholars whose similarity row was all zeros (accuracy reported as 0).
    pub degenerate: Vec<String>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct AccuracyReport {
    pub lambda: f64,
    pub dimension: usize,
    pub accuracy: Accuracy,
}

impl AccuracyReport {
    pub fn overall(&self) -> f64 {
        self.accuracy.overall
    }
}

/// Per-scholar and mean accuracy. Rows are assembled in ascending id order
/// regardless of how either matrix is ordered.
pub fn overall_accuracy(sim: &SimilarityMatrix, ann: &AnnotationMatrix) -> Result<Accuracy, EvalError> {
    let sim_ids: BTreeSet<&str> = sim.ids().iter().map(String::as_str).collect();
    let ann_ids: BTreeSet<&str> = ann.ids().iter().map(String::as_str).collect();
    if sim_ids != ann_ids || sim_ids.len() != sim.len() {
        return Err(EvalError::ScholarSetMismatch {
            only_similarity: sim_ids.difference(&ann_ids).map(|s| s.to_string()).collect(),
            only_annotations: ann_ids.difference(&sim_ids).map(|s| s.to_string()).collect(),
        });
    }

    // (annotation index, similarity index) in ascending id order
    let order: Vec<(usize, usize)> = ann
        .ids()
        .iter()
        .enumerate()
        .map(|(a, id)| (a, sim.index_of(id).expect("same id sets")))
        .collect();

    let mut per_scholar = BTreeMap::new();
    let mut degenerate = Vec::new();
    let mut total = 0.0;
    for &(ai, si) in &order {
        let mut s = Vec::with_capacity(order.len() - 1);
        let mut t = Vec::with_capacity(order.len() - 1);
        for &(aj, sj) in &order {
            if aj != ai {
                s.push(sim.get(si, sj));
                t.push(ann.value(ai, aj));
            }
        }
        let c = scholar_accuracy(&s, &t)?;
        if c.is_degenerate() {
            degenerate.push(ann.ids()[ai].clone());
        }
        total += c.value();
        per_scholar.insert(ann.ids()[ai].clone(), c.value());
    }
    Ok(Accuracy {
        overall: total / order.len() as f64,
        per_scholar,
        degenerate,
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LambdaPoint {
    pub lambda: f64,
    pub accuracy: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DimensionPoint {
    pub dimension: usize,
    pub accuracy: f64,
}

/// Evaluates every λ in `grid`, reusing one set of paper vectors. Output
/// follows grid order.
pub fn sweep_lambda(
    corpus: &Corpus,
    store: &VectorStore,
    ann: &AnnotationMatrix,
    grid: &[f64],
) -> Result<Vec<LambdaPoint>> {
    if grid.is_empty() {
        return Err(EvalError::EmptyGrid.into());
    }
    let weights = grid
        .iter()
        .map(|&l| BlendWeight::new(l))
        .collect::<Result<Vec<_>, _>>()?;
    let pipeline = Pipeline::new(corpus, store);
    sweep_lambda_with(&pipeline, ann, &weights)
}

pub fn sweep_lambda_with(
    pipeline: &Pipeline<'_>,
    ann: &AnnotationMatrix,
    weights: &[BlendWeight],
) -> Result<Vec<LambdaPoint>> {
    weights
        .par_iter()
        .map(|&w| {
            Ok(LambdaPoint {
                lambda: w.get(),
                accuracy: pipeline.evaluate(w, ann)?.overall(),
            })
        })
        .collect()
}

/// Full pipeline per store at a fixed λ; rows sorted by dimension.
pub fn sweep_dimension(
    corpus: &Corpus,
    stores: &BTreeMap<usize, VectorStore>,
    ann: &AnnotationMatrix,
    w: BlendWeight,
) -> Result<Vec<DimensionPoint>> {
    stores
        .values()
        .map(|store| {
            let report = Pipeline::new(corpus, store).evaluate(w, ann)?;
            Ok(DimensionPoint {
                dimension: store.dimension(),
                accuracy: report.overall(),
            })
        })
        .collect()
}

/// Parses `lo:hi:step` (or a single value) into an inclusive grid. Points are
/// `lo + (hi − lo)·i/n` so that, for example, `0:1:0.01` yields exactly
/// `i / 100`.
pub fn parse_grid(spec: &str) -> Result<Vec<f64>, EvalError> {
    let invalid = |reason: &str| EvalError::InvalidGrid {
        spec: spec.to_string(),
        reason: reason.to_string(),
    };
    let parts: Vec<f64> = spec
        .split(':')
        .map(|p| p.trim().parse::<f64>())
        .collect::<Result<_, _>>()
        .map_err(|_| invalid("fields must be numbers"))?;
    if parts.iter().any(|p| !p.is_finite()) {
        return Err(invalid("fields must be finite"));
    }
    let (lo, hi, step) = match parts.as_slice() {
        [v] => return Ok(vec![*v]),
        [lo, hi, step] => (*lo, *hi, *step),
        _ => return Err(invalid("expected lo:hi:step")),
    };
    if hi < lo {
        return Err(invalid("hi must not be below lo"));
    }
    if lo == hi {
        return Ok(vec![lo]);
    }
    if step <= 0.0 {
        return Err(invalid("step must be positive"));
    }
    let ratio = (hi - lo) / step;
    let nearest = ratio.round();
    let intervals = if (ratio - nearest).abs() < 1e-9 * nearest.max(1.0) {
        nearest
    } else {
        ratio.floor()
    };
    if intervals > 1e7 {
        return Err(invalid("too many grid points"));
    }
    let n = intervals as usize;
    if n == 0 {
        return Ok(vec![lo]);
    }
    let exact_end = (intervals - ratio).abs() < 1e-9 * intervals.max(1.0);
    let end = if exact_end { hi } else { lo + step * intervals };
    Ok((0..=n)
        .map(|i| {
            if i == n {
                end
            } else {
                lo + (end - lo) * i as f64 / n as f64
            }
        })
        .collect())
}
