// How authorship rank and citations weight each of a scholar's papers.

use scholar_embed::{BlendWeight, Corpus, InfluenceBreakdown};

pub fn run(lambda: f64) -> scholar_embed::Result<Vec<InfluenceBreakdown>> {
    let corpus = Corpus::load(concat!(env!("CARGO_MANIFEST_DIR"), "/data/toy/papers.jsonl"), None)?;
    let w = BlendWeight::new(lambda)?;
    let profiles = corpus.scholar_profiles();

    let mut rows = Vec::new();
    println!("λ = {w}");
    println!("scholar paper  k/x  n/n_max     E_R     E_C       E");
    for profile in profiles.values() {
        for paper_id in &profile.paper_ids {
            let paper = corpus.paper(paper_id).expect("profile lists corpus papers");
            let b = InfluenceBreakdown::compute(profile, paper, w)?;
            println!(
                "{:>7} {:>5} {:>2}/{:<2} {:>3}/{:<4} {:>7.4} {:>7.4} {:>7.4}",
                b.scholar_id, b.paper_id, b.rank, b.coauthors, b.citations, b.max_citations,
                b.e_r, b.e_c, b.e
            );
            rows.push(b);
        }
    }
    Ok(rows)
}

fn main() -> scholar_embed::Result<()> {
    let lambda = std::env::args().nth(1).map_or(0.56, |s| s.parse().expect("λ must be a number"));
    run(lambda).map(drop)
}
