//! Constrained sequential-pattern mining.
//!
//! Two independent miners share one contract: [`gsp_mine`] grows patterns
//! level by level and verifies candidates by counting, [`prefixspan_mine`]
//! grows them depth-first over pseudo-projected databases. Both return
//! exactly the patterns whose constrained support clears the threshold.

mod closed;
mod gsp;
mod prefixspan;
pub(crate) mod projection;

use std::time::Duration;

pub use closed::filter_closed;
pub use gsp::gsp_mine;
pub(crate) use prefixspan::mine_with_min_count;
pub use prefixspan::prefixspan_mine;

use crate::error::{Error, Result};
use crate::model::{Constraints, SequenceDatabase, SupportedPattern};

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct MiningStats {
    /// Candidate patterns whose support was counted.
    pub candidates_generated: usize,
    /// Full database scans for GSP; initial scan plus projected-database
    /// scans for PrefixSpan.
    pub database_passes: usize,
    pub elapsed: Duration,
}

#[derive(Clone, Debug, PartialEq)]
pub struct MiningResult {
    /// Sorted by (item count, lexicographic element order).
    pub patterns: Vec<SupportedPattern>,
    pub stats: MiningStats,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Algorithm {
    Gsp,
    PrefixSpan,
}

impl Algorithm {
    pub fn mine(self, db: &SequenceDatabase, constraints: &Constraints) -> Result<MiningResult> {
        match self {
            Algorithm::Gsp => gsp_mine(db, constraints),
            Algorithm::PrefixSpan => prefixspan_mine(db, constraints),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Algorithm::Gsp => "gsp",
            Algorithm::PrefixSpan => "prefixspan",
        }
    }
}

fn check_input(db: &SequenceDatabase, constraints: &Constraints) -> Result<()> {
    if db.is_empty() {
        return Err(Error::EmptyDatabase);
    }
    constraints.validate()
}
