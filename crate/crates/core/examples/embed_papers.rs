// Embed paper abstracts as the mean of their known word vectors.

use scholar_embed::{embed_corpus, tokenize, Corpus, VectorStore};

pub fn run() -> scholar_embed::Result<usize> {
    let data = concat!(env!("CARGO_MANIFEST_DIR"), "/data/toy");
    let store = VectorStore::load(format!("{data}/vectors_3d.txt"), Some(3))?;
    let corpus = Corpus::load(format!("{data}/papers.jsonl"), None)?;

    let first = &corpus.papers()[0];
    println!("tokens of {}: {:?}", first.paper_id, tokenize(&first.abstract_text));

    let papers = embed_corpus(&store, &corpus);
    for (id, e) in &papers {
        let flag = if e.is_degenerate() { "  (no known words)" } else { "" };
        println!(
            "{id}: {}/{} tokens matched -> [{:.3}, {:.3}, {:.3}]{flag}",
            e.matched_tokens, e.total_tokens, e.vector[0], e.vector[1], e.vector[2]
        );
    }
    Ok(papers.len())
}

fn main() -> scholar_embed::Result<()> {
    run().map(drop)
}
