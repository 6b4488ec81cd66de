//! Pseudo-projection with gap constraints.
//!
//! A projected entry records, for one data-sequence, every transaction index
//! at which the current prefix's last element can be matched by some valid
//! embedding of the whole prefix. Because gap constraints only relate
//! consecutive elements, that end set is all the future growth depends on.

use crate::model::{Constraints, DataSequence, Item};

#[derive(Clone, Debug)]
pub(crate) struct Entry {
    pub seq: usize,
    pub ends: Vec<usize>,
}

#[derive(Clone, Debug, Default)]
pub(crate) struct Projection {
    pub entries: Vec<Entry>,
}

impl Projection {
    /// Projection of the one-item pattern `<{item}>`.
    pub fn of_item(sequences: &[DataSequence], item: Item) -> Projection {
        let entries = sequences
            .iter()
            .enumerate()
            .filter_map(|(seq, s)| {
                let ends: Vec<usize> = positions_with(s, item, 0..s.len());
                (!ends.is_empty()).then_some(Entry { seq, ends })
            })
            .collect();
        Projection { entries }
    }

    pub fn support(&self) -> usize {
        self.entries.len()
    }

    /// Transactions that may host the next element after `ends`.
    pub fn successors(seq: &DataSequence, ends: &[usize], constraints: &Constraints) -> Vec<usize> {
        let Some(&first) = ends.first() else {
            return Vec::new();
        };
        (first + 1..seq.len())
            .filter(|&next| {
                ends.iter()
                    .take_while(|&&end| end < next)
                    .any(|&end| constraints.gap_ok(seq, end, next))
            })
            .collect()
    }

    /// Projection after appending `item` as a new element.
    pub fn sequence_extension(
        &self,
        sequences: &[DataSequence],
        item: Item,
        constraints: &Constraints,
    ) -> Projection {
        let entries = self
            .entries
            .iter()
            .filter_map(|e| {
                let s = &sequences[e.seq];
                let succ = Self::successors(s, &e.ends, constraints);
                let ends = positions_with(s, item, succ);
                (!ends.is_empty()).then_some(Entry { seq: e.seq, ends })
            })
            .collect();
        Projection { entries }
    }

    /// Projection after adding `item` to the last element.
    pub fn itemset_extension(&self, sequences: &[DataSequence], item: Item) -> Projection {
        let entries = self
            .entries
            .iter()
            .filter_map(|e| {
                let ends = positions_with(&sequences[e.seq], item, e.ends.iter().copied());
                (!ends.is_empty()).then_some(Entry { seq: e.seq, ends })
            })
            .collect();
        Projection { entries }
    }

    /// Per-item counts of sequences admitting each extension kind.
    ///
    /// Returns `(sequence_counts, itemset_counts)` indexed by item id;
    /// itemset extensions only consider items above `last_item`.
    pub fn extension_counts(
        &self,
        sequences: &[DataSequence],
        alphabet_len: usize,
        last_item: Item,
        constraints: &Constraints,
    ) -> (Vec<usize>, Vec<usize>) {
        let mut s_counts = vec![0usize; alphabet_len];
        let mut i_counts = vec![0usize; alphabet_len];
        let mut s_seen = vec![usize::MAX; alphabet_len];
        let mut i_seen = vec![usize::MAX; alphabet_len];
        for (n, e) in self.entries.iter().enumerate() {
            let s = &sequences[e.seq];
            let tx = s.transactions();
            for next in Self::successors(s, &e.ends, constraints) {
                for &item in tx[next].items.items() {
                    if s_seen[item.index()] != n {
                        s_seen[item.index()] = n;
                        s_counts[item.index()] += 1;
                    }
                }
            }
            for &end in &e.ends {
                for &item in tx[end].items.items().iter().filter(|&&i| i > last_item) {
                    if i_seen[item.index()] != n {
                        i_seen[item.index()] = n;
                        i_counts[item.index()] += 1;
                    }
                }
            }
        }
        (s_counts, i_counts)
    }
}

fn positions_with(
    seq: &DataSequence,
    item: Item,
    candidates: impl IntoIterator<Item = usize>,
) -> Vec<usize> {
    let tx = seq.transactions();
    candidates
        .into_iter()
        .filter(|&i| tx[i].items.contains_item(item))
        .collect()
}
