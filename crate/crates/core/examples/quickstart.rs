//! Minimal end-to-end pipeline: ingest two users, score, pick one seed.
//!
//! Run with `cargo run -p evimax-core --example quickstart`.

use std::io::Cursor;

use evimax_core::maximize::celf_select;
use evimax_core::{GainFormula, InfluenceMode, InfluenceView, Lexicon, SocialGraph};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let edges = "follower,followee\nb,a\n";
    let log =
        r#"{"id":"t1","author":"a","ts":1,"text":"great","mentions":["b"],"retweet_of":null}"#;

    let lexicon = Lexicon::from_tsv_str("great\t0.9\t0.0")?;
    let mut graph = SocialGraph::ingest(Cursor::new(edges), Cursor::new(log))?;
    graph.score_opinions(&lexicon);
    graph.score_edges();

    let view = InfluenceView::new(&graph, InfluenceMode::OpinionPositive);
    let picked = celf_select(&view, 1, GainFormula::Exact)?;
    println!("{:?} σ = {}", picked.seeds, picked.sigma_final);
    Ok(())
}
