// Score similarities against expert annotation levels (1–5).

use scholar_embed::{AccuracyReport, AnnotationMatrix, BlendWeight, Corpus, Pipeline, VectorStore};

pub fn run() -> scholar_embed::Result<AccuracyReport> {
    let data = concat!(env!("CARGO_MANIFEST_DIR"), "/data/toy");
    let store = VectorStore::load(format!("{data}/vectors_3d.txt"), Some(3))?;
    let corpus = Corpus::load(format!("{data}/papers.jsonl"), None)?;
    let annotations = AnnotationMatrix::load(format!("{data}/annotations.csv"))?;

    let report = Pipeline::new(&corpus, &store).evaluate(BlendWeight::default(), &annotations)?;
    for (id, acc) in &report.accuracy.per_scholar {
        println!("{id}: {acc:.4}");
    }
    println!("overall (mean over scholars): {:.4}", report.overall());
    if !report.accuracy.degenerate.is_empty() {
        println!("no defined accuracy for: {:?}", report.accuracy.degenerate);
    }
    Ok(report)
}

fn main() -> scholar_embed::Result<()> {
    run().map(drop)
}
