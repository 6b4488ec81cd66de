//! Acceptance checks, one line of output per criterion.
//!
//! Runs as a plain binary (`harness = false`) and exits non-zero if any
//! criterion fails.

mod common;

use std::collections::HashSet;
use std::path::Path;
use std::process::Command;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use seqmine::bench::{linear_fit, synthetic_database, time_stream, SyntheticConfig};
use seqmine::dataset::{bundled_results, Percent};
use seqmine::itemset::mine_frequent_itemsets;
use seqmine::model::{itemset_support, support};
use seqmine::oracle::{brute_closed, brute_itemsets, brute_sequences, brute_stream, true_count};
use seqmine::sequence::{filter_closed, gsp_mine, prefixspan_mine, MiningResult};
use seqmine::stream::{StreamConfig, StreamMiner};
use seqmine::{Constraints, Item, Itemset, Pattern, SequenceDatabase};

use common::*;

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        pass,
        detail: detail.into(),
    }
}

fn itemset_oracle() -> Outcome {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let mut mismatches = 0;
    for _ in 0..500 {
        let items = rng.random_range(1..=8);
        let count = rng.random_range(1..=12);
        let txns = random_transactions(&mut rng, items, count);
        let min_support = pick(&mut rng, &[0.25, 0.5, 0.75]);
        let mut fast = mine_frequent_itemsets(&txns, min_support).unwrap();
        let mut slow = brute_itemsets(&txns, min_support).unwrap();
        fast.sort_by(|a, b| a.itemset.cmp(&b.itemset));
        slow.sort_by(|a, b| a.itemset.cmp(&b.itemset));
        let key = |v: &[seqmine::itemset::FrequentItemset]| {
            v.iter()
                .map(|f| (f.itemset.clone(), f.count))
                .collect::<Vec<_>>()
        };
        if key(&fast) != key(&slow) {
            mismatches += 1;
        }
    }
    let elapsed = start.elapsed();
    outcome(
        mismatches == 0 && elapsed < Duration::from_secs(10),
        format!(
            "500 databases, {mismatches} mismatches, {:.2}s",
            elapsed.as_secs_f64()
        ),
    )
}

fn constraint_grid() -> Vec<(&'static str, Constraints)> {
    let base = Constraints::default();
    vec![
        ("unconstrained", base.clone()),
        ("max_gap=1", base.clone().max_gap(1)),
        ("max_gap=2", base.clone().max_gap(2)),
        ("max_index_gap=0", base.clone().max_index_gap(0)),
        ("max_index_gap=1", base.clone().max_index_gap(1)),
        ("min_gap=0", base.clone().min_gap(0)),
        ("min_gap=1", base.min_gap(1)),
    ]
}

/// The databases shared by the sequence and closed-filter criteria.
fn sequence_cases() -> Vec<(SequenceDatabase, Constraints)> {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let mut cases = Vec::new();
    for _ in 0..300 {
        let items = rng.random_range(1..=6);
        let db = random_db(&mut rng, items, 8, 5, 3);
        let min_support = pick(&mut rng, &[0.25, 0.5, 0.75]);
        for (_, c) in constraint_grid() {
            let mut c = c;
            c.min_support = min_support;
            cases.push((db.clone(), c));
        }
    }
    cases
}

fn sequence_oracle(cases: &[(SequenceDatabase, Constraints)]) -> Outcome {
    let start = Instant::now();
    let mut mismatches = 0;
    let mut compared = 0;
    for (db, c) in cases {
        let gsp = gsp_mine(db, c).unwrap().patterns;
        compared += gsp.len();
        let ps = prefixspan_mine(db, c).unwrap().patterns;
        if sorted(gsp) != sorted(ps) {
            mismatches += 1;
        }
        let bounded = c.clone().max_length(4);
        let gsp = sorted(gsp_mine(db, &bounded).unwrap().patterns);
        let ps = sorted(prefixspan_mine(db, &bounded).unwrap().patterns);
        let brute = sorted(brute_sequences(db, &bounded).unwrap());
        if gsp != brute || ps != brute {
            mismatches += 1;
        }
    }
    let elapsed = start.elapsed();
    outcome(
        mismatches == 0 && elapsed < Duration::from_secs(60),
        format!(
            "{} database x constraint cases, {compared} patterns, {mismatches} mismatches, {:.2}s",
            cases.len(),
            elapsed.as_secs_f64()
        ),
    )
}

fn random_super_itemset(rng: &mut impl Rng, base: &Itemset, items: usize) -> Itemset {
    let extra = rng.random_range(0..=items);
    Itemset::new(
        base.items()
            .iter()
            .copied()
            .chain((0..extra).map(|_| Item(rng.random_range(0..items as u32)))),
    )
    .unwrap()
}

/// Grows a pattern by inserting items at random places, keeping it a
/// super-pattern in the unconstrained sense.
fn random_super_pattern(rng: &mut impl Rng, base: &Pattern, items: usize) -> Pattern {
    let mut raw: Vec<Vec<Item>> = base.elements().iter().map(|e| e.items().to_vec()).collect();
    for _ in 0..rng.random_range(0..=2) {
        let item = Item(rng.random_range(0..items as u32));
        if rng.random_bool(0.5) {
            let j = rng.random_range(0..raw.len());
            raw[j].push(item);
        } else {
            let j = rng.random_range(0..=raw.len());
            raw.insert(j, vec![item]);
        }
    }
    Pattern::new(raw.into_iter().map(|e| Itemset::new(e).unwrap()).collect()).unwrap()
}

fn anti_monotonicity() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let mut violations = 0;
    for _ in 0..10_000 {
        let items = rng.random_range(1..=8);
        let count = rng.random_range(1..=12);
        let txns = random_transactions(&mut rng, items, count);
        let i = random_itemset(&mut rng, items, 3);
        let j = random_super_itemset(&mut rng, &i, items);
        let (ci, _) = itemset_support(&i, &txns).unwrap();
        let (cj, _) = itemset_support(&j, &txns).unwrap();
        if cj > ci {
            violations += 1;
        }
    }
    let unconstrained = Constraints::default();
    for _ in 0..10_000 {
        let items = rng.random_range(1..=6);
        let db = random_db(&mut rng, items, 8, 5, 3);
        let len = rng.random_range(1..=2);
        let raw: Vec<Itemset> = (0..len)
            .map(|_| random_itemset(&mut rng, items, 2))
            .collect();
        let p = Pattern::new(raw).unwrap();
        let q = random_super_pattern(&mut rng, &p, items);
        let sp = support(&p, &db, &unconstrained).unwrap();
        let sq = support(&q, &db, &unconstrained).unwrap();
        if sq.count > sp.count {
            violations += 1;
        }
    }
    outcome(
        violations == 0,
        format!("10000 itemset and 10000 sequence triples, {violations} violations"),
    )
}

fn stream_guarantees() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let unconstrained = Constraints::default();
    let mut missing = 0usize;
    let mut below_floor = 0usize;
    let mut emitted = 0usize;
    let mut false_positives = 0usize;
    let mut boundaries = 0usize;
    for s in 0..100 {
        let items = rng.random_range(2..=5);
        let n = rng.random_range(1..=200);
        let stream: Vec<_> = (0..n)
            .map(|i| random_sequence(&mut rng, i, items, 3, 2))
            .collect();
        let sigma = pick(&mut rng, &[0.2, 0.3, 0.5]);
        let epsilon = sigma / pick(&mut rng, &[2.0, 4.0, 10.0]);
        let batch_size = rng.random_range(3..=30);
        let max_length = rng.random_range(1..=4);
        let config = StreamConfig::new(sigma, epsilon, batch_size)
            .unwrap()
            .with_max_length(max_length)
            .unwrap();
        let mut miner = StreamMiner::new(config).unwrap();
        let mut check = |miner: &StreamMiner, output: Vec<seqmine::SupportedPattern>| {
            let seen = &stream[..miner.sequences_seen()];
            let got: HashSet<Pattern> = output.iter().map(|p| p.pattern.clone()).collect();
            let truth = brute_stream(seen, sigma, max_length).unwrap();
            missing += truth.iter().filter(|p| !got.contains(&p.pattern)).count();
            let floor = (sigma - epsilon) * seen.len() as f64 - 1e-9;
            let exact: HashSet<Pattern> = truth.into_iter().map(|p| p.pattern).collect();
            for p in &output {
                let count = true_count(&p.pattern, seen, &unconstrained);
                if (count as f64) < floor {
                    below_floor += 1;
                }
            }
            emitted += output.len();
            false_positives += output
                .iter()
                .filter(|p| !exact.contains(&p.pattern))
                .count();
            boundaries += 1;
        };
        let final_output = miner
            .run(stream.iter().cloned(), |m| check(m, m.query_output()))
            .unwrap_or_else(|e| panic!("stream {s}: {e}"));
        check(&miner, final_output);
    }
    let fp = if emitted == 0 {
        0.0
    } else {
        false_positives as f64 / emitted as f64
    };
    outcome(
        missing == 0 && below_floor == 0,
        format!(
            "100 streams, {boundaries} boundaries: {missing} missing, {below_floor} below sigma-epsilon, false-positive fraction {fp:.4}"
        ),
    )
}

fn stream_linearity() -> Outcome {
    let start = Instant::now();
    let config = StreamConfig::new(0.1, 0.02, 200)
        .unwrap()
        .with_max_length(4)
        .unwrap();
    let sizes = [1000usize, 2000, 4000, 8000];
    let mut points = Vec::new();
    for &size in &sizes {
        let db = synthetic_database(&SyntheticConfig::new(size, 5)).unwrap();
        let mut runs: Vec<f64> = (0..3)
            .map(|_| time_stream(&db, &config).unwrap().1.as_secs_f64())
            .collect();
        runs.sort_by(f64::total_cmp);
        points.push((size as f64, runs[1]));
    }
    let fit = linear_fit(&points).unwrap();
    let ratio = points[3].1 / points[0].1;
    let elapsed = start.elapsed();
    outcome(
        fit.r_squared >= 0.95 && ratio <= 10.0 && elapsed < Duration::from_secs(120),
        format!(
            "R^2 {:.4}, 8k/1k time ratio {ratio:.2}, median times {:?} ms, {:.1}s",
            fit.r_squared,
            points
                .iter()
                .map(|p| (p.1 * 1e4).round() / 10.0)
                .collect::<Vec<_>>(),
            elapsed.as_secs_f64()
        ),
    )
}

const TABLES: [(&str, [&str; 5]); 5] = [
    ("BE-101", ["62.5", "79.8", "71.3", "78.4", "60.4"]),
    ("BE-102", ["66.55", "68.69", "79.72", "72.66", "68.08"]),
    ("BE-103", ["88.62", "90.54", "91.57", "90.28", "90.94"]),
    ("BE-104", ["88.62", "90.54", "91.57", "90.28", "90.94"]),
    ("BE-105", ["72.8", "87.44", "69.45", "74.4", "29.69"]),
];

fn dataset_fidelity() -> Outcome {
    let records = bundled_results();
    let mut matched = 0;
    for (subject, values) in TABLES {
        for (offset, value) in values.iter().enumerate() {
            let year = 2003 + offset as i32;
            let expected = Percent::parse(value).unwrap();
            if records
                .iter()
                .any(|r| r.subject_code == subject && r.year == year && r.pass_pct == expected)
            {
                matched += 1;
            }
        }
    }
    outcome(
        matched == 25 && records.len() == 25,
        format!("{matched}/25 values exact, {} records", records.len()),
    )
}

fn closed_filter(cases: &[(SequenceDatabase, Constraints)]) -> Outcome {
    let mut mismatches = 0;
    for (db, c) in cases {
        let bounded = c.clone().max_length(4);
        let mined = prefixspan_mine(db, &bounded).unwrap();
        let brute = brute_closed(&brute_sequences(db, &bounded).unwrap()).unwrap();
        if sorted(filter_closed(mined).patterns) != sorted(brute) {
            mismatches += 1;
        }
        let MiningResult { patterns, stats } = gsp_mine(db, c).unwrap();
        let brute = brute_closed(&patterns).unwrap();
        if sorted(filter_closed(MiningResult { patterns, stats }).patterns) != sorted(brute) {
            mismatches += 1;
        }
    }
    outcome(
        mismatches == 0,
        format!("{} cases, {mismatches} mismatches", cases.len()),
    )
}

fn run_cli(dir: &Path, args: &[&str], threads: Option<&str>) -> Result<(), String> {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_seqmine"));
    cmd.current_dir(dir).args(args);
    match threads {
        Some(t) => cmd.env("SEQMINE_THREADS", t),
        None => cmd.env_remove("SEQMINE_THREADS"),
    };
    let out = cmd.output().map_err(|e| e.to_string())?;
    if out.status.success() {
        Ok(())
    } else {
        Err(format!(
            "{args:?}: {}",
            String::from_utf8_lossy(&out.stderr).trim()
        ))
    }
}

/// Timing fields are the only part of a bench report allowed to vary.
fn strip_timing(text: &str) -> String {
    text.lines()
        .filter(|l| !l.starts_with("stream_fit"))
        .map(|l| {
            l.split(' ')
                .filter(|f| !f.starts_with("elapsed_ms="))
                .collect::<Vec<_>>()
                .join(" ")
        })
        .collect::<Vec<_>>()
        .join("\n")
}

fn determinism() -> Outcome {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    std::fs::write(d.join("tdb.csv"), "T1,a b c\nT2,a b\nT3,a c\nT4,b c\n").unwrap();
    std::fs::write(
        d.join("db1.csv"),
        "S1,1,a\nS1,2,a b\nS1,3,c\nS2,1,a\nS2,2,c\nS2,3,b\nS3,1,b\nS3,2,a b\nS3,3,c\nS4,1,a\nS4,5,b\n",
    )
    .unwrap();
    let synth = synthetic_database(&SyntheticConfig::new(300, 9)).unwrap();
    let mut text = Vec::new();
    seqmine::dataset::write_sequence_db(&mut text, &synth).unwrap();
    std::fs::write(d.join("synth.csv"), text).unwrap();

    let commands: Vec<(Vec<&str>, Vec<&str>)> = vec![
        (
            vec![
                "mine-itemsets",
                "tdb.csv",
                "--min-support",
                "0.5",
                "--min-confidence",
                "0.5",
                "--out",
                "o.txt",
            ],
            vec!["o.txt"],
        ),
        (
            vec![
                "mine-seq",
                "synth.csv",
                "--min-support",
                "0.05",
                "--algo",
                "gsp",
                "--max-length",
                "4",
                "--out",
                "o.txt",
            ],
            vec!["o.txt"],
        ),
        (
            vec![
                "mine-seq",
                "synth.csv",
                "--min-support",
                "0.05",
                "--max-gap",
                "2",
                "--closed",
                "--out",
                "o.txt",
            ],
            vec!["o.txt"],
        ),
        (
            vec![
                "mine-seq",
                "db1.csv",
                "--min-support",
                "0.5",
                "--out",
                "o.txt",
            ],
            vec!["o.txt"],
        ),
        (
            vec![
                "mine-stream",
                "synth.csv",
                "--sigma",
                "0.1",
                "--epsilon",
                "0.02",
                "--batch-size",
                "50",
                "--out",
                "o.txt",
            ],
            vec!["o.txt"],
        ),
        (
            vec!["analyze-results", "--plot-dir", "plots", "--out", "o.txt"],
            vec![
                "o.txt",
                "plots/BE-101.svg",
                "plots/BE-102.svg",
                "plots/BE-103.svg",
                "plots/BE-104.svg",
                "plots/BE-105.svg",
            ],
        ),
        (
            vec![
                "bench", "--sizes", "100,200", "--seed", "7", "--out", "o.txt",
            ],
            vec!["o.txt"],
        ),
    ];
    let mut differing = Vec::new();
    for (args, files) in &commands {
        let mut reference: Option<Vec<String>> = None;
        for threads in [None, Some("1"), Some("4")] {
            for _ in 0..3 {
                if let Err(e) = run_cli(d, args, threads) {
                    return outcome(false, format!("command failed: {e}"));
                }
                let contents: Vec<String> = files
                    .iter()
                    .map(|f| {
                        let text = std::fs::read_to_string(d.join(f)).unwrap();
                        if args[0] == "bench" {
                            strip_timing(&text)
                        } else {
                            text
                        }
                    })
                    .collect();
                match &reference {
                    None => reference = Some(contents),
                    Some(r) if *r != contents => differing.push(args[0]),
                    Some(_) => {}
                }
            }
        }
    }
    differing.dedup();
    outcome(
        differing.is_empty(),
        format!(
            "{} commands x 3 thread settings x 3 runs, differing: {differing:?}",
            commands.len()
        ),
    )
}

fn main() {
    let cases = sequence_cases();
    type Check<'a> = Box<dyn FnOnce() -> Outcome + 'a>;
    let checks: Vec<(&str, Check)> = vec![
        ("1 itemset oracle equivalence", Box::new(itemset_oracle)),
        (
            "2 sequence oracle and cross-miner equivalence",
            Box::new(|| sequence_oracle(&cases)),
        ),
        ("3 anti-monotonicity", Box::new(anti_monotonicity)),
        ("4 stream guarantees", Box::new(stream_guarantees)),
        ("5 stream linearity", Box::new(stream_linearity)),
        ("6 dataset fidelity", Box::new(dataset_fidelity)),
        (
            "7 closed filter correctness",
            Box::new(|| closed_filter(&cases)),
        ),
        ("8 determinism", Box::new(determinism)),
    ];
    let mut failed = 0;
    for (name, check) in checks {
        let result = check();
        println!(
            "{} criterion {name}: {}",
            if result.pass { "PASS" } else { "FAIL" },
            result.detail
        );
        failed += usize::from(!result.pass);
    }
    if failed > 0 {
        println!("{failed} acceptance criteria failed");
        std::process::exit(1);
    }
}
