//! Level-wise Apriori mining over unordered transactions and association
//! rule generation.

use std::collections::{HashMap, HashSet};

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::model::{absolute_threshold, itemset_support, Item, Itemset};

#[derive(Clone, Debug, PartialEq)]
pub struct FrequentItemset {
    pub itemset: Itemset,
    pub count: usize,
    pub support: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct AssociationRule {
    pub antecedent: Itemset,
    pub consequent: Itemset,
    pub support: f64,
    pub confidence: f64,
}

fn check_fraction(name: &'static str, value: f64) -> Result<()> {
    if value > 0.0 && value <= 1.0 {
        Ok(())
    } else {
        Err(Error::InvalidThreshold {
            name,
            range: "(0, 1]",
            value,
        })
    }
}

/// Apriori-gen: prefix-join of (m-1)-itemsets followed by subset pruning.
///
/// Two itemsets join when they agree on all but their last item; the joined
/// m-itemset survives only if every one of its (m-1)-subsets is in `prev`.
pub fn generate_candidates(prev: &[Itemset]) -> Result<Vec<Itemset>> {
    let Some(first) = prev.first() else {
        return Ok(Vec::new());
    };
    let k = first.len();
    if let Some(other) = prev.iter().find(|s| s.len() != k) {
        return Err(Error::MixedSizes(k, other.len()));
    }
    let mut sorted: Vec<&Itemset> = prev.iter().collect();
    sorted.sort();
    sorted.dedup();
    let known: HashSet<&Itemset> = sorted.iter().copied().collect();

    let mut out = Vec::new();
    for (i, left) in sorted.iter().enumerate() {
        let prefix = &left.items()[..k - 1];
        for right in &sorted[i + 1..] {
            if &right.items()[..k - 1] != prefix {
                // Sorted order keeps all itemsets sharing a prefix adjacent.
                break;
            }
            let mut items = left.items().to_vec();
            items.push(right.last());
            let candidate = Itemset::from_sorted(items);
            if all_subsets_known(&candidate, &known) {
                out.push(candidate);
            }
        }
    }
    Ok(out)
}

fn all_subsets_known(candidate: &Itemset, known: &HashSet<&Itemset>) -> bool {
    let items = candidate.items();
    // Dropping either of the last two items yields a join parent.
    (0..items.len().saturating_sub(2)).all(|skip| {
        let subset: Vec<Item> = items
            .iter()
            .enumerate()
            .filter(|&(i, _)| i != skip)
            .map(|(_, &item)| item)
            .collect();
        known.contains(&Itemset::from_sorted(subset))
    })
}

fn binomial_at_most(n: usize, k: usize, limit: usize) -> bool {
    let mut acc: usize = 1;
    for i in 0..k.min(n - k) {
        acc = acc * (n - i) / (i + 1);
        if acc > limit {
            return false;
        }
    }
    true
}

fn for_each_subset(items: &[Item], k: usize, f: &mut impl FnMut(&[Item])) {
    fn rec(
        items: &[Item],
        k: usize,
        start: usize,
        buf: &mut Vec<Item>,
        f: &mut impl FnMut(&[Item]),
    ) {
        if buf.len() == k {
            f(buf);
            return;
        }
        let needed = k - buf.len();
        for i in start..=items.len() - needed {
            buf.push(items[i]);
            rec(items, k, i + 1, buf, f);
            buf.pop();
        }
    }
    rec(items, k, 0, &mut Vec::with_capacity(k), f);
}

/// Counts every candidate of size `k` in one pass over the transactions.
///
/// Per transaction, either enumerates its k-subsets and looks them up, or
/// tests each candidate for inclusion, whichever touches fewer sets.
fn count_candidates(transactions: &[Itemset], candidates: &[Itemset], k: usize) -> Vec<usize> {
    let index: HashMap<&[Item], usize> = candidates
        .iter()
        .enumerate()
        .map(|(i, c)| (c.items(), i))
        .collect();
    transactions
        .par_iter()
        .fold(
            || vec![0usize; candidates.len()],
            |mut counts, t| {
                if t.len() < k {
                    return counts;
                }
                if binomial_at_most(t.len(), k, candidates.len()) {
                    for_each_subset(t.items(), k, &mut |subset| {
                        if let Some(&i) = index.get(subset) {
                            counts[i] += 1;
                        }
                    });
                } else {
                    for (i, c) in candidates.iter().enumerate() {
                        if c.is_subset_of(t) {
                            counts[i] += 1;
                        }
                    }
                }
                counts
            },
        )
        .reduce(
            || vec![0usize; candidates.len()],
            |mut a, b| {
                a.iter_mut().zip(b).for_each(|(x, y)| *x += y);
                a
            },
        )
}

/// Frequent itemsets sorted by (size, lexicographic).
pub fn mine_frequent_itemsets(
    transactions: &[Itemset],
    min_support: f64,
) -> Result<Vec<FrequentItemset>> {
    if transactions.is_empty() {
        return Err(Error::EmptyDatabase);
    }
    check_fraction("min_support", min_support)?;
    let n = transactions.len();
    let min_count = absolute_threshold(min_support, n);

    let mut singles: HashMap<Item, usize> = HashMap::new();
    for t in transactions {
        for &item in t.items() {
            *singles.entry(item).or_default() += 1;
        }
    }
    let mut level: Vec<(Itemset, usize)> = singles
        .into_iter()
        .filter(|&(_, c)| c >= min_count)
        .map(|(item, c)| (Itemset::from_sorted(vec![item]), c))
        .collect();
    level.sort();

    let mut out = Vec::new();
    let mut k = 1;
    while !level.is_empty() {
        let prev: Vec<Itemset> = level.iter().map(|(s, _)| s.clone()).collect();
        out.extend(level.drain(..).map(|(itemset, count)| FrequentItemset {
            itemset,
            count,
            support: count as f64 / n as f64,
        }));
        k += 1;
        let candidates = generate_candidates(&prev)?;
        if candidates.is_empty() {
            break;
        }
        let counts = count_candidates(transactions, &candidates, k);
        level = candidates
            .into_iter()
            .zip(counts)
            .filter(|&(_, c)| c >= min_count)
            .collect();
    }
    Ok(out)
}

/// All rules `X -> Z \ X` with confidence at least `min_confidence`, for
/// every frequent `Z` of two or more items.
///
/// Rules are ordered by `Z` (in input order) and then by antecedent size
/// and lexicographic order.
pub fn generate_rules(
    frequent: &[FrequentItemset],
    min_confidence: f64,
) -> Result<Vec<AssociationRule>> {
    check_fraction("min_confidence", min_confidence)?;
    let counts: HashMap<&Itemset, usize> = frequent.iter().map(|f| (&f.itemset, f.count)).collect();
    let mut rules = Vec::new();
    for whole in frequent.iter().filter(|f| f.itemset.len() >= 2) {
        let items = whole.itemset.items();
        let mut splits: Vec<(Itemset, Itemset)> = (1u32..(1 << items.len()) - 1)
            .map(|mask| {
                let (left, right): (Vec<_>, Vec<_>) = items
                    .iter()
                    .enumerate()
                    .partition(|(i, _)| mask & (1 << i) != 0);
                (
                    Itemset::from_sorted(left.into_iter().map(|(_, &x)| x).collect()),
                    Itemset::from_sorted(right.into_iter().map(|(_, &x)| x).collect()),
                )
            })
            .collect();
        splits.sort_by(|a, b| (a.0.len(), &a.0).cmp(&(b.0.len(), &b.0)));
        for (antecedent, consequent) in splits {
            let &antecedent_count = counts
                .get(&antecedent)
                .ok_or_else(|| Error::MissingSubsetSupport(format!("{:?}", antecedent.items())))?;
            let confidence = whole.count as f64 / antecedent_count as f64;
            if confidence + 1e-12 >= min_confidence {
                rules.push(AssociationRule {
                    antecedent,
                    consequent,
                    support: whole.support,
                    confidence,
                });
            }
        }
    }
    Ok(rules)
}

/// Support of every frequent itemset recomputed by direct scan.
pub fn recount(frequent: &[FrequentItemset], transactions: &[Itemset]) -> Result<Vec<usize>> {
    frequent
        .iter()
        .map(|f| itemset_support(&f.itemset, transactions).map(|(c, _)| c))
        .collect()
}
