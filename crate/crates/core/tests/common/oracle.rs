//! Naive reference implementation of the scholar-embedding pipeline.
//!
//! Reads the fixture files on its own and transcribes every formula with
//! plain loops. Nothing in here calls into `scholar_embed`; it exists to be
//! compared against the library.

#![allow(clippy::needless_range_loop)]

use std::collections::HashMap;
use std::fs;
use std::path::Path;

pub struct OraclePaper {
    pub id: String,
    pub text: String,
    pub authors: Vec<String>,
    pub citations: f64,
}

pub fn read_vectors(path: &Path) -> HashMap<String, Vec<f64>> {
    let raw = fs::read_to_string(path).unwrap();
    let mut out = HashMap::new();
    for line in raw.lines() {
        let mut fields = line.split_whitespace();
        let word = fields.next().unwrap().to_string();
        let v: Vec<f64> = fields.map(|f| f.parse::<f64>().unwrap()).collect();
        out.insert(word, v);
    }
    out
}

pub fn read_papers(path: &Path) -> Vec<OraclePaper> {
    let raw = fs::read_to_string(path).unwrap();
    let mut out = Vec::new();
    for line in raw.lines() {
        if line.trim().is_empty() {
            continue;
        }
        let v: serde_json::Value = serde_json::from_str(line).unwrap();
        out.push(OraclePaper {
            id: v["paper_id"].as_str().unwrap().to_string(),
            text: v["abstract"].as_str().unwrap().to_string(),
            authors: v["authors"]
                .as_array()
                .unwrap()
                .iter()
                .map(|a| a.as_str().unwrap().to_string())
                .collect(),
            citations: v["citations"].as_f64().unwrap(),
        });
    }
    out
}

/// Lowercase, then cut at anything that is not a letter or digit.
pub fn words(text: &str) -> Vec<String> {
    let mut out = Vec::new();
    let mut cur = String::new();
    for ch in text.chars() {
        if ch.is_alphabetic() || ch.is_numeric() {
            for low in ch.to_lowercase() {
                cur.push(low);
            }
        } else if !cur.is_empty() {
            out.push(cur.clone());
            cur.clear();
        }
    }
    if !cur.is_empty() {
        out.push(cur);
    }
    out
}

pub fn paper_vector(vectors: &HashMap<String, Vec<f64>>, dim: usize, text: &str) -> Vec<f64> {
    let mut sum = vec![0.0; dim];
    let mut n = 0.0;
    for w in words(text) {
        if let Some(v) = vectors.get(&w) {
            for t in 0..dim {
                sum[t] += v[t];
            }
            n += 1.0;
        }
    }
    if n > 0.0 {
        for t in 0..dim {
            sum[t] /= n;
        }
    }
    sum
}

pub fn e_rank(x: f64, k: f64) -> f64 {
    if k == 1.0 {
        std::f64::consts::E
    } else {
        ((x - k) / x).exp()
    }
}

pub fn e_citation(n: f64, n_max: f64) -> f64 {
    let c = if n == 0.0 { 0.0 } else { 1.0 };
    if c == 0.0 {
        0.0
    } else {
        c * (n / n_max).exp()
    }
}

#[derive(Clone, Copy)]
pub enum OracleDivisor {
    PaperCount,
    InfluenceSum,
}

/// Scholar vectors keyed by id, in sorted id order.
pub fn scholar_vectors(
    vectors_path: &Path,
    papers_path: &Path,
    lambda: f64,
    divisor: OracleDivisor,
) -> Vec<(String, Vec<f64>)> {
    let vectors = read_vectors(vectors_path);
    let dim = vectors.values().next().unwrap().len();
    let papers = read_papers(papers_path);

    let mut ids: Vec<String> = Vec::new();
    for p in &papers {
        for a in &p.authors {
            if !ids.contains(a) {
                ids.push(a.clone());
            }
        }
    }
    ids.sort();

    let mut out = Vec::new();
    for id in &ids {
        let mut n_max = 0.0f64;
        let mut m = 0.0;
        for p in &papers {
            if p.authors.contains(id) {
                m += 1.0;
                if p.citations > n_max {
                    n_max = p.citations;
                }
            }
        }
        let mut acc = vec![0.0; dim];
        let mut e_sum = 0.0;
        for p in &papers {
            let mut k = 0.0;
            for (pos, a) in p.authors.iter().enumerate() {
                if a == id {
                    k = (pos + 1) as f64;
                }
            }
            if k == 0.0 {
                continue;
            }
            let x = p.authors.len() as f64;
            let e = lambda * e_rank(x, k) + (1.0 - lambda) * e_citation(p.citations, n_max);
            e_sum += e;
            let pv = paper_vector(&vectors, dim, &p.text);
            for t in 0..dim {
                acc[t] += e * pv[t];
            }
        }
        let div = match divisor {
            OracleDivisor::PaperCount => m,
            OracleDivisor::InfluenceSum => e_sum,
        };
        if div != 0.0 {
            for t in 0..dim {
                acc[t] /= div;
            }
        }
        out.push((id.clone(), acc));
    }
    out
}

pub fn cos(a: &[f64], b: &[f64]) -> f64 {
    let mut dot = 0.0;
    let mut na = 0.0;
    let mut nb = 0.0;
    for t in 0..a.len() {
        dot += a[t] * b[t];
        na += a[t] * a[t];
        nb += b[t] * b[t];
    }
    if na == 0.0 || nb == 0.0 {
        return 0.0;
    }
    dot / (na.sqrt() * nb.sqrt())
}

pub fn similarity(scholars: &[(String, Vec<f64>)]) -> Vec<Vec<f64>> {
    let n = scholars.len();
    let mut s = vec![vec![0.0; n]; n];
    for i in 0..n {
        for j in 0..n {
            if i == j {
                let zero = scholars[i].1.iter().all(|v| *v == 0.0);
                s[i][j] = if zero { 0.0 } else { 1.0 };
            } else {
                s[i][j] = cos(&scholars[i].1, &scholars[j].1);
            }
        }
    }
    s
}

/// Nearest of {0.2, 0.4, 0.6, 0.8, 1.0}; anything at or below 0.2 maps to 0.2.
pub fn quantize(v: f64) -> f64 {
    let levels = [0.2, 0.4, 0.6, 0.8, 1.0];
    let mut best = levels[0];
    for l in levels {
        if (v - l).abs() < (v - best).abs() {
            best = l;
        }
    }
    best
}

/// Mean over scholars of cos(row of s without diagonal, row of t without diagonal).
pub fn accuracy(s: &[Vec<f64>], t: &[Vec<f64>]) -> f64 {
    let n = s.len();
    let mut total = 0.0;
    for i in 0..n {
        let mut si = Vec::new();
        let mut ti = Vec::new();
        for j in 0..n {
            if j != i {
                si.push(s[i][j]);
                ti.push(t[i][j]);
            }
        }
        total += cos(&si, &ti);
    }
    total / n as f64
}
