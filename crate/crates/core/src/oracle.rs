//! Exhaustive reference miners.
//!
//! Everything here is deliberately naive: itemsets are enumerated as
//! bitmasks over the alphabet, sequential patterns are enumerated up to a
//! length cap and checked by trying every tuple of transaction indices.
//! Hard caps keep the search bounded; exceeding one is an error.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::itemset::FrequentItemset;
use crate::model::{
    absolute_threshold, Constraints, DataSequence, Item, Itemset, Pattern, SequenceDatabase,
    SupportedPattern,
};

pub const ITEMSET_ALPHABET_CAP: usize = 16;
pub const SEQUENCE_ALPHABET_CAP: usize = 6;
pub const SEQUENCE_LENGTH_CAP: usize = 4;

/// Every itemset over the alphabet whose count meets the threshold.
pub fn brute_itemsets(transactions: &[Itemset], min_support: f64) -> Result<Vec<FrequentItemset>> {
    if transactions.is_empty() {
        return Err(Error::EmptyDatabase);
    }
    let mut alphabet: Vec<Item> = transactions
        .iter()
        .flat_map(|t| t.items().iter().copied())
        .collect();
    alphabet.sort_unstable();
    alphabet.dedup();
    if alphabet.len() > ITEMSET_ALPHABET_CAP {
        return Err(Error::AlphabetTooLarge {
            size: alphabet.len(),
            cap: ITEMSET_ALPHABET_CAP,
        });
    }
    let n = transactions.len();
    let min_count = absolute_threshold(min_support, n);
    let mut out = Vec::new();
    for mask in 1u32..(1 << alphabet.len()) {
        let members: Vec<Item> = (0..alphabet.len())
            .filter(|b| mask & (1 << b) != 0)
            .map(|b| alphabet[b])
            .collect();
        let count = transactions
            .iter()
            .filter(|t| members.iter().all(|m| t.items().contains(m)))
            .count();
        if count >= min_count {
            out.push(FrequentItemset {
                itemset: Itemset::new(members)?,
                count,
                support: count as f64 / n as f64,
            });
        }
    }
    out.sort_by(|a, b| (a.itemset.len(), &a.itemset).cmp(&(b.itemset.len(), &b.itemset)));
    Ok(out)
}

/// Tries every increasing tuple of transaction indices.
pub fn embeds(pattern: &Pattern, seq: &DataSequence, constraints: &Constraints) -> bool {
    fn search(
        elements: &[Itemset],
        seq: &DataSequence,
        constraints: &Constraints,
        prev: Option<usize>,
    ) -> bool {
        let Some((element, rest)) = elements.split_first() else {
            return true;
        };
        let tx = seq.transactions();
        let start = prev.map_or(0, |p| p + 1);
        (start..tx.len()).any(|i| {
            let fits = element
                .items()
                .iter()
                .all(|x| tx[i].items.items().contains(x));
            let gap_ok = match prev {
                None => true,
                Some(p) => {
                    let dt = tx[i].time - tx[p].time;
                    dt > constraints.min_gap
                        && constraints.max_gap.is_none_or(|g| dt <= g)
                        && constraints.max_index_gap.is_none_or(|g| i - p - 1 <= g)
                }
            };
            fits && gap_ok && search(rest, seq, constraints, Some(i))
        })
    }
    search(pattern.elements(), seq, constraints, None)
}

pub fn true_count(
    pattern: &Pattern,
    sequences: &[DataSequence],
    constraints: &Constraints,
) -> usize {
    sequences
        .iter()
        .filter(|s| embeds(pattern, s, constraints))
        .count()
}

/// All canonical patterns over `items` with at most `cap` items.
pub fn enumerate_patterns(items: &[Item], cap: usize) -> Vec<Pattern> {
    fn grow(p: Pattern, items: &[Item], cap: usize, out: &mut Vec<Pattern>) {
        if p.len() < cap {
            for &x in items {
                grow(p.sequence_extension(x), items, cap, out);
            }
            let last = p.last_item();
            for &x in items.iter().filter(|&&x| x > last) {
                grow(p.itemset_extension(x), items, cap, out);
            }
        }
        out.push(p);
    }
    let mut out = Vec::new();
    if cap > 0 {
        for &x in items {
            grow(Pattern::single(x), items, cap, &mut out);
        }
    }
    out.sort();
    out
}

fn brute_over(
    sequences: &[DataSequence],
    constraints: &Constraints,
    min_count: usize,
) -> Result<Vec<SupportedPattern>> {
    let mut items: Vec<Item> = sequences
        .iter()
        .flat_map(|s| s.transactions())
        .flat_map(|t| t.items.items().iter().copied())
        .collect();
    items.sort_unstable();
    items.dedup();
    if items.len() > SEQUENCE_ALPHABET_CAP {
        return Err(Error::AlphabetTooLarge {
            size: items.len(),
            cap: SEQUENCE_ALPHABET_CAP,
        });
    }
    // No pattern can hold more items than the longest sequence.
    let longest = sequences
        .iter()
        .map(DataSequence::item_count)
        .max()
        .unwrap_or(0);
    let cap = constraints.max_length.unwrap_or(usize::MAX).min(longest);
    if cap > SEQUENCE_LENGTH_CAP {
        return Err(Error::InstanceTooLarge(format!(
            "pattern length cap {cap} exceeds {SEQUENCE_LENGTH_CAP}"
        )));
    }
    let n = sequences.len();
    Ok(enumerate_patterns(&items, cap)
        .into_iter()
        .filter_map(|p| {
            let count = true_count(&p, sequences, constraints);
            (count >= min_count).then(|| SupportedPattern::new(p, count, n))
        })
        .collect())
}

/// Every pattern whose constrained support meets `constraints.min_support`.
pub fn brute_sequences(
    db: &SequenceDatabase,
    constraints: &Constraints,
) -> Result<Vec<SupportedPattern>> {
    if db.is_empty() {
        return Ok(Vec::new());
    }
    constraints.validate()?;
    brute_over(
        db.sequences(),
        constraints,
        absolute_threshold(constraints.min_support, db.len()),
    )
}

/// Offline exact answer for a whole stream prefix: all unconstrained
/// patterns up to `max_length` items with support at least `sigma`.
pub fn brute_stream(
    stream: &[DataSequence],
    sigma: f64,
    max_length: usize,
) -> Result<Vec<SupportedPattern>> {
    if stream.is_empty() {
        return Ok(Vec::new());
    }
    let constraints = Constraints::with_min_support(sigma).max_length(max_length);
    constraints.validate()?;
    brute_over(
        stream,
        &constraints,
        absolute_threshold(sigma, stream.len()),
    )
}

/// Closed subset of a frequent set, found by deleting every non-empty
/// subset of item positions from each pattern.
pub fn brute_closed(patterns: &[SupportedPattern]) -> Result<Vec<SupportedPattern>> {
    let counts: HashMap<&Pattern, usize> = patterns.iter().map(|p| (&p.pattern, p.count)).collect();
    let mut absorbed: std::collections::HashSet<Pattern> = Default::default();
    for sp in patterns {
        let positions: Vec<(usize, Item)> = sp
            .pattern
            .elements()
            .iter()
            .enumerate()
            .flat_map(|(j, e)| e.items().iter().map(move |&x| (j, x)))
            .collect();
        if positions.len() > 20 {
            return Err(Error::InstanceTooLarge(format!(
                "pattern with {} items",
                positions.len()
            )));
        }
        for drop in 1u32..(1 << positions.len()) - 1 {
            let mut raw: Vec<Vec<Item>> = vec![Vec::new(); sp.pattern.elements().len()];
            for (bit, &(j, x)) in positions.iter().enumerate() {
                if drop & (1 << bit) == 0 {
                    raw[j].push(x);
                }
            }
            raw.retain(|e| !e.is_empty());
            let sub = Pattern::new(
                raw.into_iter()
                    .map(Itemset::new)
                    .collect::<Result<Vec<_>>>()?,
            )?;
            if counts.get(&sub) == Some(&sp.count) {
                absorbed.insert(sub);
            }
        }
    }
    Ok(patterns
        .iter()
        .filter(|p| !absorbed.contains(&p.pattern))
        .cloned()
        .collect())
}
