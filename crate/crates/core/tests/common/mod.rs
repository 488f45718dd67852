#![allow(dead_code)]

pub mod oracle;
pub mod synth;

use std::path::PathBuf;

pub fn toy(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("data/toy")
        .join(name)
}

pub fn max_abs_diff(a: &[Vec<f64>], b: &[Vec<f64>]) -> f64 {
    assert_eq!(a.len(), b.len());
    a.iter()
        .zip(b)
        .flat_map(|(ra, rb)| {
            assert_eq!(ra.len(), rb.len());
            ra.iter().zip(rb).map(|(x, y)| (x - y).abs())
        })
        .fold(0.0, f64::max)
}

pub fn matrix_rows(sim: &scholar_embed::SimilarityMatrix) -> Vec<Vec<f64>> {
    (0..sim.len()).map(|i| sim.row(i).to_vec()).collect()
}

/// Runs the CLI in-process; returns (exit code, stdout).
pub fn run_cli(args: &[&str]) -> (i32, String) {
    use clap::Parser;
    let mut argv = vec!["scholar-embed"];
    argv.extend_from_slice(args);
    let cli = match scholar_embed::cli::Cli::try_parse_from(&argv) {
        Ok(c) => c,
        Err(e) => return (if e.use_stderr() { 2 } else { 0 }, String::new()),
    };
    let mut out = Vec::new();
    let code = scholar_embed::cli::run_cli(cli, &mut out);
    (code, String::from_utf8(out).unwrap())
}
