use std::collections::HashSet;
use std::time::Instant;

use rayon::prelude::*;

use super::{check_input, MiningResult, MiningStats};
use crate::error::Result;
use crate::model::{
    absolute_threshold, contains, Constraints, Item, Pattern, SequenceDatabase, SupportedPattern,
};

/// Level-wise candidate generation and counting.
///
/// Level `m` extends every frequent pattern of `m - 1` items by one frequent
/// item, either as a new trailing element or inside the last element (only
/// items above its largest, so each pattern has one parent). A candidate is
/// counted only if every sub-pattern obtained by a gap-safe single-item
/// deletion was frequent at level `m - 1`.
pub fn gsp_mine(db: &SequenceDatabase, constraints: &Constraints) -> Result<MiningResult> {
    check_input(db, constraints)?;
    let start = Instant::now();
    let n = db.len();
    let min_count = absolute_threshold(constraints.min_support, n);
    let mut stats = MiningStats::default();

    let singles: Vec<Pattern> = db.used_items().into_iter().map(Pattern::single).collect();
    let mut candidates = singles;
    let mut frequent_items: Vec<Item> = Vec::new();
    let mut patterns: Vec<SupportedPattern> = Vec::new();
    let mut length = 1;

    loop {
        stats.database_passes += 1;
        stats.candidates_generated += candidates.len();
        let counted: Vec<(Pattern, usize)> = candidates
            .into_par_iter()
            .map(|p| {
                let count = db
                    .sequences()
                    .iter()
                    .filter(|s| contains(&p, s, constraints))
                    .count();
                (p, count)
            })
            .collect();
        let mut level: Vec<Pattern> = Vec::new();
        for (pattern, count) in counted {
            if count >= min_count {
                level.push(pattern.clone());
                patterns.push(SupportedPattern::new(pattern, count, n));
            }
        }
        if level.is_empty() {
            break;
        }
        if length == 1 {
            frequent_items = level.iter().map(Pattern::last_item).collect();
        }
        length += 1;
        candidates = if constraints.allows_length(length) {
            next_candidates(&level, &frequent_items, constraints)
        } else {
            Vec::new()
        };
    }

    patterns.sort_by(|a, b| a.pattern.cmp(&b.pattern));
    stats.elapsed = start.elapsed();
    Ok(MiningResult { patterns, stats })
}

fn next_candidates(level: &[Pattern], items: &[Item], constraints: &Constraints) -> Vec<Pattern> {
    let known: HashSet<&Pattern> = level.iter().collect();
    let mut out = Vec::new();
    for parent in level {
        for &item in items {
            let s_ext = parent.sequence_extension(item);
            if survives_pruning(&s_ext, &known, constraints) {
                out.push(s_ext);
            }
        }
        let last = parent.last_item();
        for &item in items.iter().filter(|&&i| i > last) {
            let i_ext = parent.itemset_extension(item);
            if survives_pruning(&i_ext, &known, constraints) {
                out.push(i_ext);
            }
        }
    }
    out.sort();
    out
}

/// Checks every single-item deletion that cannot break an embedding under
/// `constraints`. Deleting from a multi-item element keeps all match
/// positions; dropping a whole first or last element keeps all remaining
/// gaps; dropping an interior element merges two gaps, which is only safe
/// without upper gap bounds.
fn survives_pruning(
    candidate: &Pattern,
    known: &HashSet<&Pattern>,
    constraints: &Constraints,
) -> bool {
    let elements = candidate.elements();
    let last = elements.len() - 1;
    elements.iter().enumerate().all(|(j, element)| {
        let safe = element.len() > 1 || j == 0 || j == last || !constraints.has_upper_gap();
        !safe
            || (0..element.len()).all(|k| match candidate.without_item(j, k) {
                Some(sub) => known.contains(&sub),
                None => true,
            })
    })
}
