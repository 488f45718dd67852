// Load a GloVe-format vector file and look tokens up.
//
// `cargo run --example load_vectors [path/to/glove.txt]`

use scholar_embed::VectorStore;

pub fn run(path: Option<&str>) -> scholar_embed::Result<VectorStore> {
    let default = concat!(env!("CARGO_MANIFEST_DIR"), "/data/toy/vectors_3d.txt");
    let store = VectorStore::load(path.unwrap_or(default), None)?;
    println!("{}: {} tokens, d = {}", store.source(), store.len(), store.dimension());

    for token in ["graph", "Graph", "zzz"] {
        match store.lookup(token) {
            Some(v) => println!("  {token:>6} -> {v:?}"),
            // lookups are exact: the tokenizer lowercases, the store does not
            None => println!("  {token:>6} -> (not in vocabulary)"),
        }
    }
    Ok(store)
}

fn main() -> scholar_embed::Result<()> {
    let arg = std::env::args().nth(1);
    run(arg.as_deref()).map(drop)
}
