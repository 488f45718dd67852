// Accuracy as a function of the rank/citation blend weight.

use scholar_embed::eval::{parse_grid, LambdaPoint};
use scholar_embed::{sweep_lambda, AnnotationMatrix, Corpus, VectorStore};

pub fn run(grid: &str) -> scholar_embed::Result<Vec<LambdaPoint>> {
    let data = concat!(env!("CARGO_MANIFEST_DIR"), "/data/toy");
    let store = VectorStore::load(format!("{data}/vectors_3d.txt"), Some(3))?;
    let corpus = Corpus::load(format!("{data}/papers.jsonl"), None)?;
    let annotations = AnnotationMatrix::load(format!("{data}/annotations.csv"))?;

    let points = sweep_lambda(&corpus, &store, &annotations, &parse_grid(grid)?)?;
    for p in &points {
        let bar = "#".repeat((p.accuracy.max(0.0) * 40.0).round() as usize);
        println!("{:>5.2} {:.4} {bar}", p.lambda, p.accuracy);
    }
    let best = points
        .iter()
        .max_by(|a, b| a.accuracy.total_cmp(&b.accuracy))
        .expect("grid is never empty");
    println!("best λ = {:.2} ({:.4})", best.lambda, best.accuracy);
    Ok(points)
}

fn main() -> scholar_embed::Result<()> {
    let grid = std::env::args().nth(1).unwrap_or_else(|| "0:1:0.1".to_string());
    run(&grid).map(drop)
}
