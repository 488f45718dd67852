// Scholar vectors, their similarity matrix, and collaborator recommendations.

use scholar_embed::{top_k, BlendWeight, Corpus, Divisor, Pipeline, VectorStore};

pub fn run() -> scholar_embed::Result<Vec<(String, f64)>> {
    let data = concat!(env!("CARGO_MANIFEST_DIR"), "/data/toy");
    let store = VectorStore::load(format!("{data}/vectors_3d.txt"), Some(3))?;
    let corpus = Corpus::load(
        format!("{data}/papers.jsonl"),
        Some(format!("{data}/scholars.jsonl").as_ref()),
    )?;
    let pipeline = Pipeline::new(&corpus, &store);
    let w = BlendWeight::default();

    for s in pipeline.scholar_embeddings(w, Divisor::PaperCount)? {
        let name = corpus
            .scholar(&s.scholar_id)
            .and_then(|sc| sc.display_name.as_deref())
            .unwrap_or("?");
        println!("{} ({name}, m = {}): {:.4?}", s.scholar_id, s.paper_count, s.vector);
    }

    let sim = pipeline.similarity(w)?;
    print!("\n      ");
    for id in sim.ids() {
        print!("{id:>7}");
    }
    println!();
    for (i, id) in sim.ids().iter().enumerate() {
        print!("{id:>6}");
        for v in sim.row(i) {
            print!("{v:>7.3}");
        }
        println!();
    }

    let recs = top_k(&sim, "s1", 3)?;
    println!("\nbest collaborators for s1:");
    for (rank, (id, s)) in recs.iter().enumerate() {
        println!("  {}. {id} ({s:.3})", rank + 1);
    }
    Ok(recs)
}

fn main() -> scholar_embed::Result<()> {
    run().map(drop)
}
