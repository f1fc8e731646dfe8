use std::fmt;

use crate::error::{domain, Result};

/// Inclusive rank interval `[start, end]` on a curve.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Segment {
    pub start: u128,
    pub end: u128,
}

impl Segment {
    pub fn new(start: u128, end: u128) -> Result<Self> {
        if start > end {
            return domain(format!("segment start {start} exceeds end {end}"));
        }
        Ok(Segment { start, end })
    }

    pub fn single(rank: u128) -> Self {
        Segment {
            start: rank,
            end: rank,
        }
    }

    pub fn len(&self) -> u128 {
        self.end - self.start + 1
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn contains(&self, rank: u128) -> bool {
        self.start <= rank && rank <= self.end
    }

    /// Fails unless the segment lies inside a curve of `count` elements.
    pub fn check_within(&self, count: u128) -> Result<()> {
        if self.end >= count {
            return domain(format!("segment {self} exceeds curve of {count} elements"));
        }
        Ok(())
    }

    /// The same region after `extra_bits` more bits of refinement: every
    /// rank is scaled and the end covers all descendants.
    pub fn refined(&self, extra_bits: u32) -> Self {
        Segment {
            start: self.start << extra_bits,
            end: ((self.end + 1) << extra_bits) - 1,
        }
    }
}

impl fmt::Display for Segment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", self.start, self.end)
    }
}
