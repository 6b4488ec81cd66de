//! Seeded synthetic sequence databases and a small benchmark harness.
//!
//! Generator: each data-sequence has `1 + Geometric(1 / mean_transactions)`
//! transactions at times 1, 2, ...; each transaction draws
//! `1 + Geometric(1 / mean_itemset_size)` items from a Zipf distribution over
//! the alphabet (duplicates collapse). Items are named `i00`, `i01`, ... so
//! token order matches rank order.

use std::fmt::Write as _;
use std::str::FromStr;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Geometric, Zipf};

use crate::error::{Error, Result};
use crate::model::{Alphabet, Constraints, DataSequence, Item, SequenceDatabase, SupportedPattern};
use crate::sequence::Algorithm;
use crate::stream::{StreamConfig, StreamMiner};

#[derive(Clone, Debug, PartialEq)]
pub struct SyntheticConfig {
    pub sequences: usize,
    pub items: usize,
    pub mean_transactions: f64,
    pub mean_itemset_size: f64,
    pub zipf_exponent: f64,
    pub seed: u64,
}

impl SyntheticConfig {
    pub fn new(sequences: usize, seed: u64) -> Self {
        SyntheticConfig {
            sequences,
            items: 20,
            mean_transactions: 4.0,
            mean_itemset_size: 1.5,
            zipf_exponent: 1.1,
            seed,
        }
    }
}

fn extra_count(rng: &mut impl Rng, mean: f64) -> usize {
    if mean <= 1.0 {
        return 0;
    }
    Geometric::new(1.0 / mean)
        .expect("probability in (0, 1]")
        .sample(rng) as usize
}

pub fn synthetic_database(config: &SyntheticConfig) -> Result<SequenceDatabase> {
    if config.items == 0 {
        return Err(Error::InvalidConstraints("items must be >= 1".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let zipf = Zipf::new(config.items as f64, config.zipf_exponent)
        .map_err(|e| Error::InvalidConstraints(format!("zipf: {e}")))?;
    let width = (config.items - 1).to_string().len().max(2);
    let alphabet = Alphabet::from_tokens((0..config.items).map(|i| format!("i{i:0width$}")));
    let sequences = (0..config.sequences)
        .map(|s| {
            let length = 1 + extra_count(&mut rng, config.mean_transactions);
            let transactions: Vec<(i64, Vec<Item>)> = (0..length)
                .map(|t| {
                    let size = 1 + extra_count(&mut rng, config.mean_itemset_size);
                    let items = (0..size)
                        .map(|_| Item(zipf.sample(&mut rng) as u32 - 1))
                        .collect();
                    (t as i64 + 1, items)
                })
                .collect();
            DataSequence::new(format!("s{s}"), transactions)
        })
        .collect::<Result<Vec<_>>>()?;
    SequenceDatabase::new(sequences, alphabet)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BenchAlgo {
    Gsp,
    PrefixSpan,
    Stream,
}

impl BenchAlgo {
    pub fn name(self) -> &'static str {
        match self {
            BenchAlgo::Gsp => "gsp",
            BenchAlgo::PrefixSpan => "prefixspan",
            BenchAlgo::Stream => "stream",
        }
    }
}

impl FromStr for BenchAlgo {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "gsp" => Ok(BenchAlgo::Gsp),
            "prefixspan" => Ok(BenchAlgo::PrefixSpan),
            "stream" => Ok(BenchAlgo::Stream),
            other => Err(format!(
                "unknown algorithm {other:?} (expected gsp, prefixspan or stream)"
            )),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct BenchConfig {
    pub sizes: Vec<usize>,
    pub algorithms: Vec<BenchAlgo>,
    pub seed: u64,
    pub min_support: f64,
    pub max_length: usize,
    pub epsilon: f64,
    pub batch_size: usize,
}

impl BenchConfig {
    pub fn new(sizes: Vec<usize>, algorithms: Vec<BenchAlgo>, seed: u64) -> Self {
        BenchConfig {
            sizes,
            algorithms,
            seed,
            min_support: 0.1,
            max_length: 4,
            epsilon: 0.02,
            batch_size: 200,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct BenchRow {
    pub algorithm: BenchAlgo,
    pub sequences: usize,
    pub avg_transactions: f64,
    pub constraints: String,
    pub patterns_emitted: usize,
    pub elapsed: Duration,
    pub store_bytes: usize,
    /// Stream rows only: share of emitted patterns below `min_support`.
    pub false_positive_fraction: Option<f64>,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LinearFit {
    pub slope: f64,
    pub intercept: f64,
    pub r_squared: f64,
}

/// Ordinary least squares of `y` on `x`. Needs two distinct `x` values.
pub fn linear_fit(points: &[(f64, f64)]) -> Option<LinearFit> {
    let n = points.len() as f64;
    if points.len() < 2 {
        return None;
    }
    let mean_x = points.iter().map(|p| p.0).sum::<f64>() / n;
    let mean_y = points.iter().map(|p| p.1).sum::<f64>() / n;
    let sxx: f64 = points.iter().map(|p| (p.0 - mean_x).powi(2)).sum();
    let sxy: f64 = points.iter().map(|p| (p.0 - mean_x) * (p.1 - mean_y)).sum();
    let syy: f64 = points.iter().map(|p| (p.1 - mean_y).powi(2)).sum();
    if sxx == 0.0 {
        return None;
    }
    let slope = sxy / sxx;
    let r_squared = if syy == 0.0 {
        1.0
    } else {
        sxy * sxy / (sxx * syy)
    };
    Some(LinearFit {
        slope,
        intercept: mean_y - slope * mean_x,
        r_squared,
    })
}

#[derive(Clone, Debug, PartialEq)]
pub struct BenchReport {
    pub rows: Vec<BenchRow>,
    /// Elapsed seconds against sequence count over the stream rows.
    pub stream_fit: Option<LinearFit>,
}

fn result_bytes(patterns: &[SupportedPattern]) -> usize {
    patterns
        .iter()
        .map(|p| {
            std::mem::size_of::<SupportedPattern>()
                + p.pattern.elements().len() * std::mem::size_of::<Vec<Item>>()
                + p.pattern.len() * std::mem::size_of::<Item>()
        })
        .sum()
}

/// Runs a stream over `db` and reports (output, elapsed, peak store bytes).
pub fn time_stream(
    db: &SequenceDatabase,
    config: &StreamConfig,
) -> Result<(Vec<SupportedPattern>, Duration, usize)> {
    let start = Instant::now();
    let mut miner = StreamMiner::new(config.clone())?;
    let out = miner.run(db.sequences().iter().cloned(), |_| {})?;
    Ok((out, start.elapsed(), miner.peak_store_bytes()))
}

pub fn run_bench(config: &BenchConfig) -> Result<BenchReport> {
    let constraints =
        Constraints::with_min_support(config.min_support).max_length(config.max_length);
    let stream_config = StreamConfig::new(config.min_support, config.epsilon, config.batch_size)?
        .with_max_length(config.max_length)?;
    let mut rows = Vec::new();
    for &size in &config.sizes {
        let db = synthetic_database(&SyntheticConfig::new(size, config.seed))?;
        let avg_transactions = db.sequences().iter().map(DataSequence::len).sum::<usize>() as f64
            / db.len().max(1) as f64;
        for &algorithm in &config.algorithms {
            let row = match algorithm {
                BenchAlgo::Gsp | BenchAlgo::PrefixSpan => {
                    let miner = if algorithm == BenchAlgo::Gsp {
                        Algorithm::Gsp
                    } else {
                        Algorithm::PrefixSpan
                    };
                    let result = miner.mine(&db, &constraints)?;
                    BenchRow {
                        algorithm,
                        sequences: size,
                        avg_transactions,
                        constraints: format!(
                            "min_support={} max_length={}",
                            config.min_support, config.max_length
                        ),
                        patterns_emitted: result.patterns.len(),
                        elapsed: result.stats.elapsed,
                        store_bytes: result_bytes(&result.patterns),
                        false_positive_fraction: None,
                    }
                }
                BenchAlgo::Stream => {
                    let (out, elapsed, store_bytes) = time_stream(&db, &stream_config)?;
                    let exact = Algorithm::PrefixSpan.mine(&db, &constraints)?;
                    let truly: std::collections::HashSet<_> =
                        exact.patterns.iter().map(|p| &p.pattern).collect();
                    let false_positives =
                        out.iter().filter(|p| !truly.contains(&p.pattern)).count();
                    BenchRow {
                        algorithm,
                        sequences: size,
                        avg_transactions,
                        constraints: format!(
                            "sigma={} epsilon={} batch_size={} max_length={}",
                            config.min_support,
                            config.epsilon,
                            config.batch_size,
                            config.max_length
                        ),
                        patterns_emitted: out.len(),
                        elapsed,
                        store_bytes,
                        false_positive_fraction: Some(if out.is_empty() {
                            0.0
                        } else {
                            false_positives as f64 / out.len() as f64
                        }),
                    }
                }
            };
            rows.push(row);
        }
    }
    let stream_points: Vec<(f64, f64)> = rows
        .iter()
        .filter(|r| r.algorithm == BenchAlgo::Stream)
        .map(|r| (r.sequences as f64, r.elapsed.as_secs_f64()))
        .collect();
    Ok(BenchReport {
        stream_fit: linear_fit(&stream_points),
        rows,
    })
}

impl BenchReport {
    /// One `key=value` line per row, then the stream fit if present.
    pub fn machine_lines(&self) -> String {
        let mut s = String::new();
        for r in &self.rows {
            let _ = write!(
                s,
                "algo={} sequences={} avg_transactions={:.2} constraints=\"{}\" patterns_emitted={} elapsed_ms={:.3} store_bytes={}",
                r.algorithm.name(),
                r.sequences,
                r.avg_transactions,
                r.constraints,
                r.patterns_emitted,
                r.elapsed.as_secs_f64() * 1e3,
                r.store_bytes
            );
            if let Some(fp) = r.false_positive_fraction {
                let _ = write!(s, " false_positive_fraction={fp:.4}");
            }
            s.push('\n');
        }
        if let Some(fit) = self.stream_fit {
            let _ = writeln!(
                s,
                "stream_fit slope_ms_per_seq={:.6} intercept_ms={:.3} r_squared={:.4}",
                fit.slope * 1e3,
                fit.intercept * 1e3,
                fit.r_squared
            );
        }
        s
    }

    pub fn table(&self) -> String {
        let mut s = format!(
            "{:<11} {:>9} {:>8} {:>9} {:>12} {:>12} {:>8}\n",
            "algorithm", "sequences", "avg_tx", "patterns", "elapsed_ms", "store_bytes", "fp_frac"
        );
        for r in &self.rows {
            let fp = r
                .false_positive_fraction
                .map_or_else(|| "-".to_string(), |f| format!("{f:.4}"));
            let _ = writeln!(
                s,
                "{:<11} {:>9} {:>8.2} {:>9} {:>12.3} {:>12} {:>8}",
                r.algorithm.name(),
                r.sequences,
                r.avg_transactions,
                r.patterns_emitted,
                r.elapsed.as_secs_f64() * 1e3,
                r.store_bytes,
                fp
            );
        }
        if let Some(fit) = self.stream_fit {
            let _ = writeln!(s, "stream linear fit: R^2 = {:.4}", fit.r_squared);
        }
        s
    }
}
