use std::time::Instant;

use rayon::prelude::*;

use super::projection::Projection;
use super::{check_input, MiningResult, MiningStats};
use crate::error::Result;
use crate::model::{
    absolute_threshold, Constraints, DataSequence, Item, Pattern, SequenceDatabase,
    SupportedPattern,
};

/// Pattern growth over pseudo-projected databases.
pub fn prefixspan_mine(db: &SequenceDatabase, constraints: &Constraints) -> Result<MiningResult> {
    check_input(db, constraints)?;
    let start = Instant::now();
    let min_count = absolute_threshold(constraints.min_support, db.len());
    let (patterns, mut stats) =
        mine_with_min_count(db.sequences(), db.alphabet().len(), constraints, min_count);
    stats.elapsed = start.elapsed();
    Ok(MiningResult { patterns, stats })
}

struct Grower<'a> {
    sequences: &'a [DataSequence],
    alphabet_len: usize,
    constraints: &'a Constraints,
    min_count: usize,
}

#[derive(Default)]
struct Collected {
    patterns: Vec<SupportedPattern>,
    candidates: usize,
    passes: usize,
}

impl Grower<'_> {
    fn grow(&self, prefix: Pattern, projection: Projection, out: &mut Collected) {
        let total = self.sequences.len();
        let support = projection.support();
        let length = prefix.len();
        out.patterns
            .push(SupportedPattern::new(prefix.clone(), support, total));
        if !self.constraints.allows_length(length + 1) {
            return;
        }
        out.passes += 1;
        let (s_counts, i_counts) = projection.extension_counts(
            self.sequences,
            self.alphabet_len,
            prefix.last_item(),
            self.constraints,
        );
        out.candidates += s_counts.iter().chain(&i_counts).filter(|&&c| c > 0).count();

        for (id, &count) in s_counts.iter().enumerate() {
            if count >= self.min_count {
                let item = Item(id as u32);
                let next = projection.sequence_extension(self.sequences, item, self.constraints);
                debug_assert_eq!(next.support(), count);
                self.grow(prefix.sequence_extension(item), next, out);
            }
        }
        for (id, &count) in i_counts.iter().enumerate() {
            if count >= self.min_count {
                let item = Item(id as u32);
                let next = projection.itemset_extension(self.sequences, item);
                debug_assert_eq!(next.support(), count);
                self.grow(prefix.itemset_extension(item), next, out);
            }
        }
    }
}

/// Mines `sequences` at an absolute count threshold. Output is sorted.
pub(crate) fn mine_with_min_count(
    sequences: &[DataSequence],
    alphabet_len: usize,
    constraints: &Constraints,
    min_count: usize,
) -> (Vec<SupportedPattern>, MiningStats) {
    let grower = Grower {
        sequences,
        alphabet_len,
        constraints,
        min_count,
    };
    let mut first_counts = vec![0usize; alphabet_len];
    for s in sequences {
        let mut items: Vec<Item> = s
            .transactions()
            .iter()
            .flat_map(|t| t.items.items().iter().copied())
            .collect();
        items.sort_unstable();
        items.dedup();
        for item in items {
            first_counts[item.index()] += 1;
        }
    }
    let roots: Vec<Item> = (0..alphabet_len)
        .filter(|&id| first_counts[id] >= min_count.max(1))
        .map(|id| Item(id as u32))
        .collect();

    let branches: Vec<Collected> = roots
        .par_iter()
        .map(|&item| {
            let mut out = Collected::default();
            grower.grow(
                Pattern::single(item),
                Projection::of_item(sequences, item),
                &mut out,
            );
            out
        })
        .collect();

    let mut stats = MiningStats {
        candidates_generated: first_counts.iter().filter(|&&c| c > 0).count(),
        database_passes: 1,
        ..Default::default()
    };
    let mut patterns = Vec::new();
    for branch in branches {
        stats.candidates_generated += branch.candidates;
        stats.database_passes += branch.passes;
        patterns.extend(branch.patterns);
    }
    patterns.sort_by(|a, b| a.pattern.cmp(&b.pattern));
    (patterns, stats)
}
