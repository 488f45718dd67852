//! Seeded synthetic vector stores and corpora for scale and determinism tests.

use std::fmt::Write as _;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub struct SynthSpec {
    pub seed: u64,
    pub vocab: usize,
    pub dim: usize,
    pub scholars: usize,
    pub papers: usize,
    pub tokens_per_abstract: usize,
}

pub fn word(i: usize) -> String {
    format!("w{i}")
}

/// GloVe-format text with `vocab` tokens of dimension `dim`.
pub fn vectors_text(spec: &SynthSpec) -> String {
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let mut out = String::with_capacity(spec.vocab * spec.dim * 10);
    for i in 0..spec.vocab {
        out.push_str(&word(i));
        for _ in 0..spec.dim {
            let v: f64 = rng.gen_range(-1.0..1.0);
            write!(out, " {:.6}", v).unwrap();
        }
        out.push('\n');
    }
    out
}

/// Papers JSON-Lines. Abstracts mix vocabulary words with ~10% unknown
/// words; each paper has 1–3 distinct authors.
pub fn papers_jsonl(spec: &SynthSpec) -> String {
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed ^ 0x5eed);
    let scholars: Vec<String> = (0..spec.scholars).map(|i| format!("sch{i:03}")).collect();
    let mut out = String::new();
    for p in 0..spec.papers {
        let n_authors = rng.gen_range(1..=3).min(spec.scholars);
        let mut authors: Vec<&String> = Vec::with_capacity(n_authors);
        authors.push(&scholars[p % spec.scholars]);
        while authors.len() < n_authors {
            let cand = scholars.choose(&mut rng).unwrap();
            if !authors.contains(&cand) {
                authors.push(cand);
            }
        }
        // topical bias: each first author favours a slice of the vocabulary
        let base = (p % spec.scholars) * spec.vocab / spec.scholars;
        let mut text = String::new();
        for t in 0..spec.tokens_per_abstract {
            if t > 0 {
                text.push(' ');
            }
            let r: f64 = rng.gen();
            if r < 0.1 {
                write!(text, "oov{}", rng.gen_range(0..1000)).unwrap();
            } else if r < 0.6 {
                let w = (base + rng.gen_range(0..50)) % spec.vocab;
                text.push_str(&word(w));
            } else {
                text.push_str(&word(rng.gen_range(0..spec.vocab)));
            }
        }
        let citations: u32 = if rng.gen_bool(0.3) { 0 } else { rng.gen_range(1..500) };
        let authors_json: Vec<String> = authors.iter().map(|a| format!("\"{a}\"")).collect();
        writeln!(
            out,
            "{{\"paper_id\":\"p{p:06}\",\"abstract\":\"{text}\",\"authors\":[{}],\"citations\":{citations}}}",
            authors_json.join(",")
        )
        .unwrap();
    }
    out
}
