//! One-pass batched sequential-pattern mining with bounded memory.
//!
//! The stream is cut into batches of `batch_size` data-sequences and every
//! batch is seen exactly once. Candidate patterns live in a prefix tree in
//! the style of lossy counting: each node carries the count observed since
//! it was inserted and `delta`, an upper bound on what it may have missed
//! before. For every retained node
//!
//! ```text
//! count <= true count <= count + delta
//! ```
//!
//! and a pattern that is not in the tree has true count at most
//! `epsilon * N`. Consequently [`StreamMiner::query_output`], which reports
//! nodes with `count >= (sigma - epsilon) * N`, never misses a pattern of
//! true support `sigma` and never reports one below `sigma - epsilon`.
//!
//! Per batch:
//! 1. every tracked pattern is counted exactly over the batch by walking the
//!    tree with pseudo-projections;
//! 2. the batch is mined at local count `max(1, floor(epsilon * |batch|))`,
//!    so an untracked pattern misses fewer than `epsilon * |batch|`
//!    occurrences; new patterns enter with `delta = floor(epsilon * N_before)`;
//! 3. nodes with `count + delta <= floor(epsilon * N_after)` are pruned along
//!    with their subtrees.

use std::collections::BTreeMap;
use std::mem;

use crate::error::{Error, Result};
use crate::model::{Constraints, DataSequence, Item, Pattern, SupportedPattern};
use crate::sequence::mine_with_min_count;
use crate::sequence::projection::Projection;

#[derive(Clone, Debug, PartialEq)]
pub struct StreamConfig {
    pub sigma: f64,
    pub epsilon: f64,
    pub batch_size: usize,
    /// Largest pattern (in items) tracked by the tree.
    pub max_length: usize,
}

impl StreamConfig {
    pub fn new(sigma: f64, epsilon: f64, batch_size: usize) -> Result<Self> {
        let config = StreamConfig {
            sigma,
            epsilon,
            batch_size,
            max_length: 5,
        };
        config.validate()?;
        Ok(config)
    }

    pub fn with_max_length(mut self, max_length: usize) -> Result<Self> {
        self.max_length = max_length;
        self.validate()?;
        Ok(self)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.sigma > 0.0 && self.sigma <= 1.0) {
            return Err(Error::InvalidThreshold {
                name: "sigma",
                range: "(0, 1]",
                value: self.sigma,
            });
        }
        if !(self.epsilon > 0.0 && self.epsilon < self.sigma) {
            return Err(Error::InvalidThreshold {
                name: "epsilon",
                range: "(0, sigma)",
                value: self.epsilon,
            });
        }
        if self.batch_size == 0 {
            return Err(Error::InvalidConstraints("batch_size must be >= 1".into()));
        }
        if self.max_length == 0 {
            return Err(Error::InvalidConstraints("max_length must be >= 1".into()));
        }
        Ok(())
    }

    fn local_threshold(&self, batch_len: usize) -> usize {
        floor_fraction(self.epsilon, batch_len).max(1)
    }
}

fn floor_fraction(fraction: f64, n: usize) -> usize {
    (fraction * n as f64 + 1e-9).floor() as usize
}

/// How a tree edge extends its parent pattern.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
enum Step {
    /// New trailing element holding the item.
    Sequence(Item),
    /// Item added to the last element.
    Itemset(Item),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct NodeStats {
    pub count: usize,
    pub delta: usize,
    pub inserted_at_batch: usize,
}

#[derive(Clone, Debug)]
struct Node {
    stats: NodeStats,
    children: BTreeMap<Step, Node>,
}

impl Node {
    fn size(&self) -> usize {
        1 + self.children.values().map(Node::size).sum::<usize>()
    }
}

/// Prefix tree of tracked patterns.
#[derive(Clone, Debug, Default)]
pub struct PatternTree {
    roots: BTreeMap<Item, Node>,
}

fn steps_of(pattern: &Pattern) -> Vec<Step> {
    let mut steps = Vec::with_capacity(pattern.len());
    for element in pattern.elements() {
        let (first, rest) = element.items().split_first().expect("non-empty element");
        steps.push(Step::Sequence(*first));
        steps.extend(rest.iter().copied().map(Step::Itemset));
    }
    steps
}

fn extend(pattern: &Pattern, step: Step) -> Pattern {
    match step {
        Step::Sequence(item) => pattern.sequence_extension(item),
        Step::Itemset(item) => pattern.itemset_extension(item),
    }
}

impl PatternTree {
    /// Number of tracked patterns.
    pub fn len(&self) -> usize {
        self.roots.values().map(Node::size).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.roots.is_empty()
    }

    pub fn get(&self, pattern: &Pattern) -> Option<NodeStats> {
        let steps = steps_of(pattern);
        let Step::Sequence(first) = steps[0] else {
            unreachable!()
        };
        let mut node = self.roots.get(&first)?;
        for step in &steps[1..] {
            node = node.children.get(step)?;
        }
        Some(node.stats)
    }

    /// Every tracked pattern with its node statistics, in pattern order.
    pub fn entries(&self) -> Vec<(Pattern, NodeStats)> {
        fn walk(pattern: Pattern, node: &Node, out: &mut Vec<(Pattern, NodeStats)>) {
            for (&step, child) in &node.children {
                walk(extend(&pattern, step), child, out);
            }
            out.push((pattern, node.stats));
        }
        let mut out = Vec::new();
        for (&item, node) in &self.roots {
            walk(Pattern::single(item), node, &mut out);
        }
        out.sort_by(|a, b| a.0.cmp(&b.0));
        out
    }

    /// Adds the exact batch count of every tracked pattern.
    fn refresh(&mut self, batch: &[DataSequence], constraints: &Constraints) {
        fn walk(
            node: &mut Node,
            projection: &Projection,
            batch: &[DataSequence],
            constraints: &Constraints,
        ) {
            node.stats.count += projection.support();
            for (&step, child) in node.children.iter_mut() {
                let next = match step {
                    Step::Sequence(item) => projection.sequence_extension(batch, item, constraints),
                    Step::Itemset(item) => projection.itemset_extension(batch, item),
                };
                // An empty projection adds nothing below this point.
                if next.support() > 0 {
                    walk(child, &next, batch, constraints);
                }
            }
        }
        for (&item, node) in self.roots.iter_mut() {
            let projection = Projection::of_item(batch, item);
            if projection.support() > 0 {
                walk(node, &projection, batch, constraints);
            }
        }
    }

    /// Inserts `pattern` if absent. Its parent must already be tracked.
    fn insert(&mut self, pattern: &Pattern, stats: NodeStats) -> bool {
        let steps = steps_of(pattern);
        let Step::Sequence(first) = steps[0] else {
            unreachable!()
        };
        if steps.len() == 1 {
            if self.roots.contains_key(&first) {
                return false;
            }
            self.roots.insert(
                first,
                Node {
                    stats,
                    children: BTreeMap::new(),
                },
            );
            return true;
        }
        let Some(mut node) = self.roots.get_mut(&first) else {
            panic!("parent of a mined pattern is not tracked");
        };
        for step in &steps[1..steps.len() - 1] {
            node = node
                .children
                .get_mut(step)
                .expect("parent of a mined pattern is not tracked");
        }
        let last = steps[steps.len() - 1];
        if node.children.contains_key(&last) {
            return false;
        }
        node.children.insert(
            last,
            Node {
                stats,
                children: BTreeMap::new(),
            },
        );
        true
    }

    /// Removes nodes (with their subtrees) whose `count + delta` is at most
    /// `bound`. Returns the number of removed nodes.
    fn prune(&mut self, bound: usize) -> usize {
        fn prune_children(children: &mut BTreeMap<Step, Node>, bound: usize) -> usize {
            let mut removed = 0;
            children.retain(|_, node| {
                if node.stats.count + node.stats.delta <= bound {
                    removed += node.size();
                    false
                } else {
                    removed += prune_children(&mut node.children, bound);
                    true
                }
            });
            removed
        }
        let mut removed = 0;
        self.roots.retain(|_, node| {
            if node.stats.count + node.stats.delta <= bound {
                removed += node.size();
                false
            } else {
                removed += prune_children(&mut node.children, bound);
                true
            }
        });
        removed
    }
}

/// State of a running stream: the pattern tree plus batch bookkeeping.
#[derive(Clone, Debug)]
pub struct StreamMiner {
    config: StreamConfig,
    tree: PatternTree,
    sequences_seen: usize,
    batches_seen: usize,
    peak_nodes: usize,
    finished: bool,
}

impl StreamMiner {
    pub fn new(config: StreamConfig) -> Result<Self> {
        config.validate()?;
        Ok(StreamMiner {
            config,
            tree: PatternTree::default(),
            sequences_seen: 0,
            batches_seen: 0,
            peak_nodes: 0,
            finished: false,
        })
    }

    pub fn config(&self) -> &StreamConfig {
        &self.config
    }

    pub fn tree(&self) -> &PatternTree {
        &self.tree
    }

    /// N, the number of data-sequences consumed so far.
    pub fn sequences_seen(&self) -> usize {
        self.sequences_seen
    }

    pub fn batches_seen(&self) -> usize {
        self.batches_seen
    }

    /// Largest node count the tree reached, measured before pruning.
    pub fn peak_nodes(&self) -> usize {
        self.peak_nodes
    }

    /// Approximate heap footprint of the tree at its peak, in bytes.
    pub fn peak_store_bytes(&self) -> usize {
        self.peak_nodes * (mem::size_of::<Node>() + mem::size_of::<Step>())
    }

    /// Consumes one full batch. The batch is dropped once processed.
    pub fn process_batch(&mut self, batch: Vec<DataSequence>) -> Result<()> {
        if self.finished {
            return Err(Error::StreamFinished);
        }
        if batch.len() != self.config.batch_size {
            return Err(Error::BadBatchSize {
                expected: self.config.batch_size.to_string(),
                got: batch.len(),
            });
        }
        self.absorb(batch);
        Ok(())
    }

    fn absorb(&mut self, batch: Vec<DataSequence>) {
        let constraints = Constraints::default().max_length(self.config.max_length);
        let n_before = self.sequences_seen;
        let batch_index = self.batches_seen + 1;

        self.tree.refresh(&batch, &constraints);

        let alphabet_len = batch
            .iter()
            .flat_map(|s| s.transactions())
            .flat_map(|t| t.items.items())
            .map(|i| i.index() + 1)
            .max()
            .unwrap_or(0);
        let local = self.config.local_threshold(batch.len());
        let (mined, _) = mine_with_min_count(&batch, alphabet_len, &constraints, local);
        let delta = floor_fraction(self.config.epsilon, n_before);
        // Sorted by length, so parents are inserted before children.
        for found in mined {
            self.tree.insert(
                &found.pattern,
                NodeStats {
                    count: found.count,
                    delta,
                    inserted_at_batch: batch_index,
                },
            );
        }

        self.sequences_seen += batch.len();
        self.batches_seen = batch_index;
        self.peak_nodes = self.peak_nodes.max(self.tree.len());
        self.tree
            .prune(floor_fraction(self.config.epsilon, self.sequences_seen));
    }

    /// Patterns with `count >= (sigma - epsilon) * N`, support estimated as
    /// `count / N`.
    pub fn query_output(&self) -> Vec<SupportedPattern> {
        let n = self.sequences_seen;
        if n == 0 {
            return Vec::new();
        }
        let floor = (self.config.sigma - self.config.epsilon) * n as f64 - 1e-9;
        self.tree
            .entries()
            .into_iter()
            .filter(|(_, stats)| stats.count as f64 >= floor)
            .map(|(pattern, stats)| SupportedPattern::new(pattern, stats.count, n))
            .collect()
    }

    /// Processes a trailing partial batch and returns the final output.
    /// After a non-empty flush the stream accepts no further batches.
    pub fn flush(&mut self, residual: Vec<DataSequence>) -> Result<Vec<SupportedPattern>> {
        if residual.len() >= self.config.batch_size {
            return Err(Error::BadBatchSize {
                expected: format!("fewer than {}", self.config.batch_size),
                got: residual.len(),
            });
        }
        if !residual.is_empty() {
            if self.finished {
                return Err(Error::StreamFinished);
            }
            self.absorb(residual);
            self.finished = true;
        }
        Ok(self.query_output())
    }

    /// Drives the miner from a consuming iterator, calling `on_batch` at
    /// every full-batch boundary, then flushes the remainder.
    pub fn run<I, F>(&mut self, stream: I, mut on_batch: F) -> Result<Vec<SupportedPattern>>
    where
        I: IntoIterator<Item = DataSequence>,
        F: FnMut(&StreamMiner),
    {
        let mut pending = Vec::with_capacity(self.config.batch_size);
        for seq in stream {
            pending.push(seq);
            if pending.len() == self.config.batch_size {
                let batch = mem::replace(&mut pending, Vec::with_capacity(self.config.batch_size));
                self.process_batch(batch)?;
                on_batch(self);
            }
        }
        self.flush(pending)
    }
}
