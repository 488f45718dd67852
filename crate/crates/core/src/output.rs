//! Reading and writing the on-disk formats.
//!
//! JSON floats carry 17 significant digits (`%.17g` style) so they parse back
//! to the same bits; CSV floats carry 9 decimal places. Every writer emits a
//! fixed ordering so identical inputs give byte-identical files.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::fs;
use std::io;
use std::path::{Path, PathBuf};

use serde::Deserialize;

use crate::embed::PaperEmbedding;
use crate::eval::{AccuracyReport, DimensionPoint, LambdaPoint};
use crate::pipeline::ScholarInfluences;
use crate::scholar::{ScholarEmbedding, SimilarityMatrix};

#[derive(Debug, thiserror::Error)]
pub enum OutputError {
    #[error("cannot access {path}: {source}")]
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
    #[error("{source_name}: scholar {scholar_id:?} has dimension {found}, expected {expected}")]
    MixedDimension {
        source_name: String,
        scholar_id: String,
        expected: usize,
        found: usize,
    },
    #[error("{1}: scholar {0:?} listed twice")]
    DuplicateScholar(String, String),
}

/// `%.17g`: 17 significant digits, trailing zeros trimmed, scientific
/// notation outside `1e-4 ≤ |x| < 1e17`.
pub fn format_sig17(x: f64) -> String {
    if x == 0.0 {
        return if x.is_sign_negative() { "-0".into() } else { "0".into() };
    }
    if !x.is_finite() {
        // not valid JSON; never produced by the pipeline
        return format!("{x}");
    }
    let sci = format!("{:.16e}", x);
    let (mantissa, exp) = sci.split_once('e').expect("exponent");
    let exp: i32 = exp.parse().expect("integer exponent");
    if (-4..17).contains(&exp) {
        let decimals = (16 - exp) as usize;
        trim_zeros(format!("{:.*}", decimals, x))
    } else {
        let m = trim_zeros(mantissa.to_string());
        let sign = if exp < 0 { '-' } else { '+' };
        format!("{m}e{sign}{:02}", exp.abs())
    }
}

fn trim_zeros(s: String) -> String {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.').to_string()
    } else {
        s
    }
}

pub fn format_csv(x: f64) -> String {
    format!("{:.9}", x)
}

fn json_str(s: &str) -> String {
    serde_json::to_string(s).expect("string serializes")
}

fn json_vec(v: &[f64]) -> String {
    let parts: Vec<String> = v.iter().map(|x| format_sig17(*x)).collect();
    format!("[{}]", parts.join(","))
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n', '\r']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

pub fn write_file(path: &Path, contents: &str) -> Result<(), OutputError> {
    if let Some(parent) = path.parent().filter(|p| !p.as_os_str().is_empty()) {
        fs::create_dir_all(parent).map_err(|source| OutputError::Io {
            path: parent.to_path_buf(),
            source,
        })?;
    }
    fs::write(path, contents).map_err(|source| OutputError::Io {
        path: path.to_path_buf(),
        source,
    })
}

fn read_file(path: &Path) -> Result<String, OutputError> {
    fs::read_to_string(path).map_err(|source| OutputError::Io {
        path: path.to_path_buf(),
        source,
    })
}

/// `{"scholar_id", "m", "degenerate", "vector"}` per line.
pub fn scholar_embeddings_jsonl(embeddings: &[ScholarEmbedding]) -> String {
    let mut out = String::new();
    for e in embeddings {
        writeln!(
            out,
            "{{\"scholar_id\":{},\"m\":{},\"degenerate\":{},\"vector\":{}}}",
            json_str(&e.scholar_id),
            e.paper_count,
            e.is_degenerate(),
            json_vec(&e.vector)
        )
        .unwrap();
    }
    out
}

#[derive(Deserialize)]
struct EmbeddingRecord {
    scholar_id: String,
    m: usize,
    degenerate: bool,
    vector: Vec<f64>,
}

pub fn parse_scholar_embeddings(
    text: &str,
    source_name: &str,
) -> Result<Vec<ScholarEmbedding>, OutputError> {
    let mut out: Vec<ScholarEmbedding> = Vec::new();
    let mut seen = std::collections::HashSet::new();
    for (idx, line) in text.lines().enumerate() {
        let line_no = idx + 1;
        if line.trim().is_empty() {
            continue;
        }
        let malformed = |message: String| OutputError::Malformed {
            source_name: source_name.to_string(),
            line: line_no,
            message,
        };
        let rec: EmbeddingRecord =
            serde_json::from_str(line).map_err(|e| malformed(e.to_string()))?;
        if rec.vector.is_empty() {
            return Err(malformed(format!("scholar {:?} has an empty vector", rec.scholar_id)));
        }
        if let Some(first) = out.first() {
            if first.vector.len() != rec.vector.len() {
                return Err(OutputError::MixedDimension {
                    source_name: source_name.to_string(),
                    scholar_id: rec.scholar_id,
                    expected: first.vector.len(),
                    found: rec.vector.len(),
                });
            }
        }
        if !seen.insert(rec.scholar_id.clone()) {
            return Err(OutputError::DuplicateScholar(
                rec.scholar_id,
                source_name.to_string(),
            ));
        }
        let e = ScholarEmbedding {
            scholar_id: rec.scholar_id,
            vector: rec.vector,
            paper_count: rec.m,
        };
        if e.is_degenerate() != rec.degenerate {
            return Err(malformed(format!(
                "scholar {:?}: degenerate flag disagrees with vector",
                e.scholar_id
            )));
        }
        out.push(e);
    }
    Ok(out)
}

pub fn read_scholar_embeddings(path: &Path) -> Result<Vec<ScholarEmbedding>, OutputError> {
    parse_scholar_embeddings(&read_file(path)?, &path.display().to_string())
}

/// `{"paper_id", "n", "vector"}` per line, papers in id order.
pub fn paper_embeddings_jsonl(papers: &BTreeMap<String, PaperEmbedding>) -> String {
    let mut out = String::new();
    for p in papers.values() {
        writeln!(
            out,
            "{{\"paper_id\":{},\"n\":{},\"vector\":{}}}",
            json_str(&p.paper_id),
            p.matched_tokens,
            json_vec(&p.vector)
        )
        .unwrap();
    }
    out
}

pub fn influence_csv(influences: &BTreeMap<String, ScholarInfluences>) -> String {
    let mut out = String::from("scholar_id,paper_id,k,x,n,n_max,e_r,c,e_c,e\n");
    for records in influences.values() {
        for b in records.values() {
            writeln!(
                out,
                "{},{},{},{},{},{},{},{},{},{}",
                csv_field(&b.scholar_id),
                csv_field(&b.paper_id),
                b.rank,
                b.coauthors,
                b.citations,
                b.max_citations,
                format_csv(b.e_r),
                format_csv(b.c),
                format_csv(b.e_c),
                format_csv(b.e)
            )
            .unwrap();
        }
    }
    out
}

/// Header row and first column of scholar ids; corner cell `scholar_id`.
pub fn similarity_csv(sim: &SimilarityMatrix) -> String {
    let mut out = String::from("scholar_id");
    for id in sim.ids() {
        out.push(',');
        out.push_str(&csv_field(id));
    }
    out.push('\n');
    for (i, id) in sim.ids().iter().enumerate() {
        out.push_str(&csv_field(id));
        for v in sim.row(i) {
            out.push(',');
            out.push_str(&format_csv(*v));
        }
        out.push('\n');
    }
    out
}

pub fn parse_similarity_csv(text: &str, source_name: &str) -> Result<SimilarityMatrix, OutputError> {
    let malformed = |line: usize, message: String| OutputError::Malformed {
        source_name: source_name.to_string(),
        line,
        message,
    };
    let mut rdr = csv::ReaderBuilder::new()
        .has_headers(false)
        .from_reader(text.as_bytes());
    let mut rows = rdr.records();
    let header = rows
        .next()
        .ok_or_else(|| malformed(1, "empty file".into()))?
        .map_err(|e| malformed(1, e.to_string()))?;
    let ids: Vec<String> = header.iter().skip(1).map(str::to_string).collect();
    let n = ids.len();
    let mut values = Vec::with_capacity(n * n);
    for (i, row) in rows.enumerate() {
        let line = i + 2;
        let row = row.map_err(|e| malformed(line, e.to_string()))?;
        if i >= n {
            return Err(malformed(line, "more rows than header columns".into()));
        }
        if row.get(0) != Some(ids[i].as_str()) {
            return Err(malformed(line, format!("row id should be {:?}", ids[i])));
        }
        if row.len() != n + 1 {
            return Err(malformed(line, format!("expected {} values", n)));
        }
        for field in row.iter().skip(1) {
            let v: f64 = field
                .trim()
                .parse()
                .map_err(|_| malformed(line, format!("bad value {field:?}")))?;
            values.push(v);
        }
    }
    if values.len() != n * n {
        return Err(malformed(n + 1, "fewer rows than header columns".into()));
    }
    for i in 0..n {
        for j in (i + 1)..n {
            if values[i * n + j] != values[j * n + i] {
                return Err(malformed(i + 2, format!("asymmetric at ({}, {})", ids[i], ids[j])));
            }
        }
    }
    SimilarityMatrix::from_values(ids, values).map_err(|e| malformed(1, e.to_string()))
}

pub fn read_similarity_csv(path: &Path) -> Result<SimilarityMatrix, OutputError> {
    parse_similarity_csv(&read_file(path)?, &path.display().to_string())
}

pub fn report_json(report: &AccuracyReport) -> String {
    let acc = &report.accuracy;
    let per: Vec<String> = acc
        .per_scholar
        .iter()
        .map(|(id, v)| format!("    {}: {}", json_str(id), format_sig17(*v)))
        .collect();
    let degenerate: Vec<String> = acc.degenerate.iter().map(|s| json_str(s)).collect();
    format!(
        "{{\n  \"lambda\": {},\n  \"dimension\": {},\n  \"overall\": {},\n  \"aggregation\": \"unweighted_mean\",\n  \"degenerate_scholars\": [{}],\n  \"per_scholar\": {{\n{}\n  }}\n}}\n",
        format_sig17(report.lambda),
        report.dimension,
        format_sig17(acc.overall),
        degenerate.join(", "),
        per.join(",\n")
    )
}

pub fn per_scholar_csv(report: &AccuracyReport) -> String {
    let mut out = String::from("scholar_id,accuracy\n");
    for (id, v) in &report.accuracy.per_scholar {
        writeln!(out, "{},{}", csv_field(id), format_csv(*v)).unwrap();
    }
    out
}

pub fn lambda_sweep_csv(points: &[LambdaPoint]) -> String {
    let mut out = String::from("lambda,accuracy\n");
    for p in points {
        writeln!(out, "{},{}", format_csv(p.lambda), format_csv(p.accuracy)).unwrap();
    }
    out
}

pub fn dimension_sweep_csv(points: &[DimensionPoint]) -> String {
    let mut out = String::from("dimension,accuracy\n");
    for p in points {
        writeln!(out, "{},{}", p.dimension, format_csv(p.accuracy)).unwrap();
    }
    out
}
