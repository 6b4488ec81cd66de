//! Items, itemsets, time-stamped data-sequences and sequential patterns,
//! together with the constraint-aware containment relation every miner
//! shares.

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap, HashSet};
use std::fmt;

use crate::error::{Error, Result};

/// Dense item identifier handed out by an [`Alphabet`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Item(pub u32);

impl Item {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

/// Bidirectional symbol table between tokens and dense item ids.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Alphabet {
    tokens: Vec<String>,
    index: HashMap<String, Item>,
}

impl Alphabet {
    pub fn new() -> Self {
        Self::default()
    }

    /// Builds an alphabet whose id order matches the sorted token order.
    pub fn from_tokens<I, S>(tokens: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let mut sorted: Vec<String> = tokens.into_iter().map(Into::into).collect();
        sorted.sort();
        sorted.dedup();
        let mut alphabet = Self::new();
        for token in sorted {
            alphabet.intern(&token);
        }
        alphabet
    }

    pub fn intern(&mut self, token: &str) -> Item {
        if let Some(&item) = self.index.get(token) {
            return item;
        }
        let item = Item(self.tokens.len() as u32);
        self.tokens.push(token.to_owned());
        self.index.insert(token.to_owned(), item);
        item
    }

    pub fn get(&self, token: &str) -> Option<Item> {
        self.index.get(token).copied()
    }

    pub fn token(&self, item: Item) -> &str {
        &self.tokens[item.index()]
    }

    pub fn len(&self) -> usize {
        self.tokens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tokens.is_empty()
    }

    pub fn items(&self) -> impl Iterator<Item = Item> + '_ {
        (0..self.tokens.len() as u32).map(Item)
    }
}

/// A non-empty, strictly ascending set of items.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Itemset(Vec<Item>);

impl Itemset {
    /// Sorts and deduplicates `items`.
    pub fn new<I: IntoIterator<Item = Item>>(items: I) -> Result<Self> {
        let mut items: Vec<Item> = items.into_iter().collect();
        if items.is_empty() {
            return Err(Error::EmptyElement);
        }
        items.sort_unstable();
        items.dedup();
        Ok(Itemset(items))
    }

    pub(crate) fn from_sorted(items: Vec<Item>) -> Self {
        debug_assert!(!items.is_empty());
        debug_assert!(items.windows(2).all(|w| w[0] < w[1]));
        Itemset(items)
    }

    pub fn items(&self) -> &[Item] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn last(&self) -> Item {
        self.0[self.0.len() - 1]
    }

    pub fn contains_item(&self, item: Item) -> bool {
        self.0.binary_search(&item).is_ok()
    }

    /// Merge-walk subset test over two ascending lists.
    pub fn is_subset_of(&self, other: &Itemset) -> bool {
        is_sorted_subset(&self.0, &other.0)
    }

    pub(crate) fn union(&self, other: &Itemset) -> Itemset {
        let mut items = self.0.clone();
        items.extend_from_slice(&other.0);
        items.sort_unstable();
        items.dedup();
        Itemset(items)
    }
}

pub(crate) fn is_sorted_subset(small: &[Item], large: &[Item]) -> bool {
    if small.len() > large.len() {
        return false;
    }
    let mut rest = large.iter();
    'outer: for item in small {
        for candidate in rest.by_ref() {
            match candidate.cmp(item) {
                Ordering::Less => continue,
                Ordering::Equal => continue 'outer,
                Ordering::Greater => return false,
            }
        }
        return false;
    }
    true
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Transaction {
    pub time: i64,
    pub items: Itemset,
}

/// Time-ordered transactions belonging to one entity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DataSequence {
    id: String,
    transactions: Vec<Transaction>,
}

impl DataSequence {
    /// Builds a sequence from `(time, items)` pairs in any order.
    /// Transactions that share a timestamp are merged into one.
    pub fn new<S, I>(id: S, transactions: I) -> Result<Self>
    where
        S: Into<String>,
        I: IntoIterator<Item = (i64, Vec<Item>)>,
    {
        let id = id.into();
        let mut by_time: BTreeMap<i64, Vec<Item>> = BTreeMap::new();
        for (time, items) in transactions {
            if items.is_empty() {
                return Err(Error::EmptyElement);
            }
            by_time.entry(time).or_default().extend(items);
        }
        if by_time.is_empty() {
            return Err(Error::EmptySequence(id));
        }
        let transactions = by_time
            .into_iter()
            .map(|(time, items)| Itemset::new(items).map(|items| Transaction { time, items }))
            .collect::<Result<Vec<_>>>()?;
        Ok(DataSequence { id, transactions })
    }

    pub fn id(&self) -> &str {
        &self.id
    }

    pub fn transactions(&self) -> &[Transaction] {
        &self.transactions
    }

    pub fn len(&self) -> usize {
        self.transactions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.transactions.is_empty()
    }

    /// Total number of items over all transactions.
    pub fn item_count(&self) -> usize {
        self.transactions.iter().map(|t| t.items.len()).sum()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SequenceDatabase {
    sequences: Vec<DataSequence>,
    alphabet: Alphabet,
}

impl SequenceDatabase {
    pub fn new(sequences: Vec<DataSequence>, alphabet: Alphabet) -> Result<Self> {
        let mut seen = HashSet::new();
        for seq in &sequences {
            if !seen.insert(seq.id()) {
                return Err(Error::DuplicateSequence(seq.id().to_owned()));
            }
        }
        Ok(SequenceDatabase {
            sequences,
            alphabet,
        })
    }

    pub fn sequences(&self) -> &[DataSequence] {
        &self.sequences
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn len(&self) -> usize {
        self.sequences.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sequences.is_empty()
    }

    /// Items that actually occur in some transaction, ascending.
    pub fn used_items(&self) -> Vec<Item> {
        let mut items: Vec<Item> = self
            .sequences
            .iter()
            .flat_map(|s| s.transactions.iter())
            .flat_map(|t| t.items.items().iter().copied())
            .collect();
        items.sort_unstable();
        items.dedup();
        items
    }

    pub fn into_parts(self) -> (Vec<DataSequence>, Alphabet) {
        (self.sequences, self.alphabet)
    }
}

/// A sequential pattern: an ordered list of itemsets.
///
/// Patterns order by total item count first, then lexicographically by
/// element, which is the output order of every miner.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Pattern(Vec<Itemset>);

impl Pattern {
    pub fn new(elements: Vec<Itemset>) -> Result<Self> {
        if elements.is_empty() {
            return Err(Error::EmptyPattern);
        }
        Ok(Pattern(elements))
    }

    pub fn single(item: Item) -> Self {
        Pattern(vec![Itemset(vec![item])])
    }

    pub fn elements(&self) -> &[Itemset] {
        &self.0
    }

    /// Total number of items summed over elements.
    pub fn len(&self) -> usize {
        self.0.iter().map(Itemset::len).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn last_item(&self) -> Item {
        self.0[self.0.len() - 1].last()
    }

    /// Appends `item` as a new trailing element.
    pub fn sequence_extension(&self, item: Item) -> Pattern {
        let mut elements = self.0.clone();
        elements.push(Itemset(vec![item]));
        Pattern(elements)
    }

    /// Adds `item` to the last element; `item` must exceed its largest item.
    pub fn itemset_extension(&self, item: Item) -> Pattern {
        debug_assert!(item > self.last_item());
        let mut elements = self.0.clone();
        let last = elements.len() - 1;
        elements[last].0.push(item);
        Pattern(elements)
    }

    /// Removes the item at `offset` within `element`, dropping the element
    /// if it becomes empty. Returns `None` when nothing would remain.
    pub fn without_item(&self, element: usize, offset: usize) -> Option<Pattern> {
        let mut elements = self.0.clone();
        elements[element].0.remove(offset);
        if elements[element].0.is_empty() {
            elements.remove(element);
        }
        if elements.is_empty() {
            None
        } else {
            Some(Pattern(elements))
        }
    }

    /// Unconstrained pattern-in-pattern containment: every element of `self`
    /// is a subset of a distinct, strictly later element of `other`.
    pub fn is_subpattern_of(&self, other: &Pattern) -> bool {
        let mut rest = other.0.iter();
        self.0.iter().all(|element| {
            rest.by_ref()
                .any(|candidate| element.is_subset_of(candidate))
        })
    }
}

impl Ord for Pattern {
    fn cmp(&self, other: &Self) -> Ordering {
        self.len()
            .cmp(&other.len())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Pattern {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Sorts every element and removes duplicate items, keeping element order.
pub fn canonicalize(raw: Vec<Vec<Item>>) -> Result<Pattern> {
    if raw.is_empty() {
        return Err(Error::EmptyPattern);
    }
    let elements = raw
        .into_iter()
        .map(Itemset::new)
        .collect::<Result<Vec<_>>>()?;
    Pattern::new(elements)
}

/// Containment constraints and the minimum support used by the miners.
///
/// Time gaps are measured between the transactions matched by consecutive
/// pattern elements: the difference must be strictly greater than `min_gap`
/// and at most `max_gap`. `max_index_gap` bounds the number of transactions
/// skipped between two matched elements.
#[derive(Clone, Debug, PartialEq)]
pub struct Constraints {
    pub min_support: f64,
    pub min_gap: i64,
    pub max_gap: Option<i64>,
    pub max_index_gap: Option<usize>,
    pub max_length: Option<usize>,
}

impl Default for Constraints {
    fn default() -> Self {
        Constraints {
            min_support: 1.0,
            min_gap: 0,
            max_gap: None,
            max_index_gap: None,
            max_length: None,
        }
    }
}

impl Constraints {
    pub fn with_min_support(min_support: f64) -> Self {
        Constraints {
            min_support,
            ..Default::default()
        }
    }

    pub fn min_gap(mut self, gap: i64) -> Self {
        self.min_gap = gap;
        self
    }

    pub fn max_gap(mut self, gap: i64) -> Self {
        self.max_gap = Some(gap);
        self
    }

    pub fn max_index_gap(mut self, gap: usize) -> Self {
        self.max_index_gap = Some(gap);
        self
    }

    pub fn max_length(mut self, length: usize) -> Self {
        self.max_length = Some(length);
        self
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.min_support > 0.0 && self.min_support <= 1.0) {
            return Err(Error::InvalidThreshold {
                name: "min_support",
                range: "(0, 1]",
                value: self.min_support,
            });
        }
        if self.min_gap < 0 {
            return Err(Error::InvalidConstraints(format!(
                "min_gap must be >= 0, got {}",
                self.min_gap
            )));
        }
        if let Some(max_gap) = self.max_gap {
            if self.min_gap >= max_gap {
                return Err(Error::InvalidConstraints(format!(
                    "min_gap ({}) must be below max_gap ({max_gap})",
                    self.min_gap
                )));
            }
        }
        if self.max_length == Some(0) {
            return Err(Error::InvalidConstraints("max_length must be >= 1".into()));
        }
        Ok(())
    }

    /// True when dropping an interior element can break an embedding.
    pub fn has_upper_gap(&self) -> bool {
        self.max_gap.is_some() || self.max_index_gap.is_some()
    }

    pub fn allows_length(&self, length: usize) -> bool {
        self.max_length.is_none_or(|max| length <= max)
    }

    /// Whether transaction `next` may follow transaction `prev` as the match
    /// of the next pattern element. Requires `prev < next`.
    pub fn gap_ok(&self, seq: &DataSequence, prev: usize, next: usize) -> bool {
        let tx = seq.transactions();
        let dt = tx[next].time - tx[prev].time;
        dt > self.min_gap
            && self.max_gap.is_none_or(|max| dt <= max)
            && self.max_index_gap.is_none_or(|max| next - prev - 1 <= max)
    }
}

/// Absolute minimum count for a fractional threshold: `ceil(fraction * n)`,
/// tolerant of binary rounding noise and never below one.
pub fn absolute_threshold(fraction: f64, n: usize) -> usize {
    let raw = (fraction * n as f64 - 1e-9).ceil();
    (raw.max(1.0)) as usize
}

#[derive(Clone, Debug, PartialEq)]
pub struct SupportedPattern {
    pub pattern: Pattern,
    pub count: usize,
    pub support: f64,
}

impl SupportedPattern {
    pub fn new(pattern: Pattern, count: usize, total: usize) -> Self {
        let support = if total == 0 {
            0.0
        } else {
            count as f64 / total as f64
        };
        SupportedPattern {
            pattern,
            count,
            support,
        }
    }
}

/// Whether `pattern` embeds into `seq` under `constraints`.
///
/// Dynamic programme over match positions: `reach[i]` is true when the
/// elements seen so far admit a valid embedding whose last element lands on
/// transaction `i`.
pub fn contains(pattern: &Pattern, seq: &DataSequence, constraints: &Constraints) -> bool {
    let tx = seq.transactions();
    let mut elements = pattern.elements().iter();
    let Some(first) = elements.next() else {
        return true;
    };
    let mut reach: Vec<bool> = tx.iter().map(|t| first.is_subset_of(&t.items)).collect();
    for element in elements {
        let mut next = vec![false; tx.len()];
        let mut any = false;
        for (j, t) in tx.iter().enumerate() {
            if !element.is_subset_of(&t.items) {
                continue;
            }
            if (0..j).any(|i| reach[i] && constraints.gap_ok(seq, i, j)) {
                next[j] = true;
                any = true;
            }
        }
        if !any {
            return false;
        }
        reach = next;
    }
    reach.into_iter().any(|r| r)
}

/// Number and fraction of data-sequences that contain `pattern`.
pub fn support(
    pattern: &Pattern,
    db: &SequenceDatabase,
    constraints: &Constraints,
) -> Result<SupportedPattern> {
    if db.is_empty() {
        return Err(Error::EmptyDatabase);
    }
    let count = db
        .sequences()
        .iter()
        .filter(|seq| contains(pattern, seq, constraints))
        .count();
    Ok(SupportedPattern::new(pattern.clone(), count, db.len()))
}

/// Number and fraction of transactions that contain `itemset`.
pub fn itemset_support(itemset: &Itemset, transactions: &[Itemset]) -> Result<(usize, f64)> {
    if transactions.is_empty() {
        return Err(Error::EmptyDatabase);
    }
    let count = transactions
        .iter()
        .filter(|t| itemset.is_subset_of(t))
        .count();
    Ok((count, count as f64 / transactions.len() as f64))
}

impl fmt::Display for Item {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "#{}", self.0)
    }
}
