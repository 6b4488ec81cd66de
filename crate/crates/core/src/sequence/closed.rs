use std::collections::HashMap;

use super::MiningResult;

/// Keeps the patterns that have no strict super-pattern of equal count in
/// `result`. Containment here ignores gap constraints.
pub fn filter_closed(result: MiningResult) -> MiningResult {
    let MiningResult { patterns, stats } = result;
    let mut by_count: HashMap<usize, Vec<usize>> = HashMap::new();
    for (i, p) in patterns.iter().enumerate() {
        by_count.entry(p.count).or_default().push(i);
    }
    let keep: Vec<bool> = patterns
        .iter()
        .map(|p| {
            !by_count[&p.count].iter().any(|&j| {
                let q = &patterns[j].pattern;
                q.len() > p.pattern.len() && p.pattern.is_subpattern_of(q)
            })
        })
        .collect();
    let patterns = patterns
        .into_iter()
        .zip(keep)
        .filter_map(|(p, k)| k.then_some(p))
        .collect();
    MiningResult { patterns, stats }
}
