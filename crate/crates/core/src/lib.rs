//! Frequent itemset, sequential pattern and stream pattern mining, plus the
//! university results dataset and its trend analysis.

pub mod bench;
pub mod cli;
pub mod dataset;
pub mod error;
pub mod format;
pub mod itemset;
pub mod model;
pub mod oracle;
pub mod plot;
pub mod sequence;
pub mod stream;

pub use error::{Error, Result};
pub use model::{
    Alphabet, Constraints, DataSequence, Item, Itemset, Pattern, SequenceDatabase, SupportedPattern,
};
