//! Runs the benchmark harness over a few database sizes.

use seqmine::bench::{run_bench, BenchAlgo, BenchConfig};

fn main() -> seqmine::Result<()> {
    let config = BenchConfig::new(
        vec![500, 1_000, 2_000, 4_000],
        vec![BenchAlgo::Gsp, BenchAlgo::PrefixSpan, BenchAlgo::Stream],
        42,
    );
    let report = run_bench(&config)?;
    print!("{}", report.table());
    Ok(())
}
