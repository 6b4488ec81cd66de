#![allow(dead_code)]

use rand::seq::IndexedRandom;
use rand::Rng;
use seqmine::{Alphabet, DataSequence, Item, Itemset, Pattern, SequenceDatabase, SupportedPattern};

pub fn alphabet(n: usize) -> Alphabet {
    Alphabet::from_tokens((0..n).map(|i| ((b'a' + i as u8) as char).to_string()))
}

pub fn random_itemset(rng: &mut impl Rng, items: usize, max_size: usize) -> Itemset {
    let size = rng.random_range(1..=max_size.min(items));
    Itemset::new((0..size).map(|_| Item(rng.random_range(0..items as u32)))).unwrap()
}

pub fn random_transactions(rng: &mut impl Rng, items: usize, count: usize) -> Vec<Itemset> {
    (0..count)
        .map(|_| random_itemset(rng, items, items))
        .collect()
}

/// Times advance by 1 to 3 so gap constraints have something to bite on.
pub fn random_sequence(
    rng: &mut impl Rng,
    id: usize,
    items: usize,
    max_transactions: usize,
    max_itemset: usize,
) -> DataSequence {
    let length = rng.random_range(1..=max_transactions);
    let mut time = 0i64;
    let transactions: Vec<(i64, Vec<Item>)> = (0..length)
        .map(|_| {
            time += rng.random_range(1..=3);
            (
                time,
                random_itemset(rng, items, max_itemset).items().to_vec(),
            )
        })
        .collect();
    DataSequence::new(format!("s{id}"), transactions).unwrap()
}

pub fn random_db(
    rng: &mut impl Rng,
    items: usize,
    max_sequences: usize,
    max_transactions: usize,
    max_itemset: usize,
) -> SequenceDatabase {
    let n = rng.random_range(1..=max_sequences);
    let sequences = (0..n)
        .map(|i| random_sequence(rng, i, items, max_transactions, max_itemset))
        .collect();
    SequenceDatabase::new(sequences, alphabet(items)).unwrap()
}

pub fn pick<T: Copy>(rng: &mut impl Rng, options: &[T]) -> T {
    *options.choose(rng).unwrap()
}

pub fn sorted(mut patterns: Vec<SupportedPattern>) -> Vec<(Pattern, usize)> {
    patterns.sort_by(|a, b| a.pattern.cmp(&b.pattern));
    patterns.into_iter().map(|p| (p.pattern, p.count)).collect()
}
