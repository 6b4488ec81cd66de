//! Feeds synthetic sequences through the stream miner batch by batch and
//! compares the final answer with exact mining over everything seen.

use std::collections::HashSet;

use seqmine::bench::{synthetic_database, SyntheticConfig};
use seqmine::sequence::prefixspan_mine;
use seqmine::stream::{StreamConfig, StreamMiner};
use seqmine::Constraints;

fn main() -> seqmine::Result<()> {
    let db = synthetic_database(&SyntheticConfig::new(2_000, 21))?;
    let config = StreamConfig::new(0.1, 0.02, 250)?.with_max_length(3)?;
    let mut miner = StreamMiner::new(config)?;

    let output = miner.run(db.sequences().iter().cloned(), |m| {
        println!(
            "batch {:>2}: N={:>5} tracked={:>4} reported={:>3}",
            m.batches_seen(),
            m.sequences_seen(),
            m.tree().len(),
            m.query_output().len()
        );
    })?;

    let exact = prefixspan_mine(&db, &Constraints::with_min_support(0.1).max_length(3))?;
    let reported: HashSet<_> = output.iter().map(|p| &p.pattern).collect();
    let missed = exact
        .patterns
        .iter()
        .filter(|p| !reported.contains(&p.pattern))
        .count();
    let extra = output.len() + missed - exact.patterns.len();
    println!(
        "exact: {} patterns; stream: {} reported, {missed} missed, {extra} with support in [0.08, 0.1)",
        exact.patterns.len(),
        output.len()
    );
    println!(
        "peak tree size: {} nodes (~{} bytes)",
        miner.peak_nodes(),
        miner.peak_store_bytes()
    );
    Ok(())
}
