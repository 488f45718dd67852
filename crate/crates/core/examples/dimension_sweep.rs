// Compare accuracy across vector files of different dimensions.
//
// The toy 4-d file is the 3-d file with a zero column appended, so both
// rows come out equal; with real GloVe files (50d … 300d) they differ.

use std::collections::BTreeMap;

use scholar_embed::eval::DimensionPoint;
use scholar_embed::{sweep_dimension, AnnotationMatrix, BlendWeight, Corpus, VectorStore};

pub fn run() -> scholar_embed::Result<Vec<DimensionPoint>> {
    let data = concat!(env!("CARGO_MANIFEST_DIR"), "/data/toy");
    let corpus = Corpus::load(format!("{data}/papers.jsonl"), None)?;
    let annotations = AnnotationMatrix::load(format!("{data}/annotations.csv"))?;

    let mut stores = BTreeMap::new();
    for d in [3, 4] {
        stores.insert(d, VectorStore::load(format!("{data}/vectors_{d}d.txt"), Some(d))?);
    }
    let points = sweep_dimension(&corpus, &stores, &annotations, BlendWeight::default())?;
    for p in &points {
        println!("d = {:>3}: {:.6}", p.dimension, p.accuracy);
    }
    Ok(points)
}

fn main() -> scholar_embed::Result<()> {
    run().map(drop)
}
