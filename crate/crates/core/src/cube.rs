//! The d-dimensional cubical Morton curve.
//!
//! A level-`L` rank is the concatenation of `L` digits of `d` bits each, the
//! coarsest digit most significant. Inside a digit, bit 0 selects the half
//! along axis 0 and bit `d - 1` the half along the last axis. Axes are
//! numbered from 0 throughout the crate.

use crate::error::{domain, Result};
use crate::segment::Segment;

/// Largest supported `dim * level`; the element count `2^(dim*level)` must
/// itself fit into a `u128`.
pub const MAX_RANK_BITS: u32 = 127;
/// Lattice coordinates are stored as `u64`.
pub const MAX_LEVEL: u32 = 63;

fn check_shape(dim: u32, level: u32) -> Result<()> {
    if dim == 0 {
        return domain("dimension must be at least 1");
    }
    if level > MAX_LEVEL {
        return domain(format!("level {level} exceeds maximum {MAX_LEVEL}"));
    }
    if dim as u64 * level as u64 > MAX_RANK_BITS as u64 {
        return domain(format!(
            "dim {dim} * level {level} exceeds {MAX_RANK_BITS} rank bits"
        ));
    }
    Ok(())
}

/// Number of level-`level` elements of a `dim`-dimensional curve.
pub fn element_count(dim: u32, level: u32) -> Result<u128> {
    check_shape(dim, level)?;
    Ok(1u128 << (dim * level))
}

/// A rank on a level-`L` Morton curve of dimension `d`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CurveIndex {
    dim: u32,
    level: u32,
    rank: u128,
}

impl CurveIndex {
    pub fn new(dim: u32, level: u32, rank: u128) -> Result<Self> {
        let count = element_count(dim, level)?;
        if rank >= count {
            return domain(format!("rank {rank} out of range [0, {count})"));
        }
        Ok(CurveIndex { dim, level, rank })
    }

    pub fn dim(&self) -> u32 {
        self.dim
    }

    pub fn level(&self) -> u32 {
        self.level
    }

    pub fn rank(&self) -> u128 {
        self.rank
    }

    /// The `d`-bit child choice made at `level_from_root` (1 is the first
    /// subdivision).
    pub fn digit(&self, level_from_root: u32) -> u32 {
        assert!((1..=self.level).contains(&level_from_root));
        let shift = self.dim * (self.level - level_from_root);
        ((self.rank >> shift) & ((1u128 << self.dim) - 1)) as u32
    }
}

/// Integer lattice coordinates of a level-`L` quadrant, in units of `2^-L`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Coords {
    level: u32,
    x: Vec<u64>,
}

impl Coords {
    pub fn new(level: u32, x: Vec<u64>) -> Result<Self> {
        check_shape(x.len() as u32, level)?;
        let side = 1u64 << level;
        if let Some((axis, v)) = x.iter().enumerate().find(|(_, &v)| v >= side) {
            return domain(format!(
                "coordinate {v} on axis {axis} out of range [0, {side})"
            ));
        }
        Ok(Coords { level, x })
    }

    pub fn dim(&self) -> u32 {
        self.x.len() as u32
    }

    pub fn level(&self) -> u32 {
        self.level
    }

    pub fn as_slice(&self) -> &[u64] {
        &self.x
    }
}

/// Axis-aligned box in units of `2^-L`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuadrantBox {
    pub level: u32,
    pub lower: Vec<u64>,
    pub upper: Vec<u64>,
}

impl QuadrantBox {
    pub fn contains_box(&self, other: &QuadrantBox) -> bool {
        self.lower.iter().zip(&other.lower).all(|(a, b)| a <= b)
            && self.upper.iter().zip(&other.upper).all(|(a, b)| a >= b)
    }
}

pub fn encode(coords: &Coords) -> CurveIndex {
    let dim = coords.dim();
    let level = coords.level;
    let mut rank = 0u128;
    for bit in 0..level {
        for (axis, &x) in coords.x.iter().enumerate() {
            rank |= (((x >> bit) & 1) as u128) << (bit * dim + axis as u32);
        }
    }
    CurveIndex { dim, level, rank }
}

pub fn decode(index: &CurveIndex) -> Coords {
    let mut x = vec![0u64; index.dim as usize];
    for bit in 0..index.level {
        for (axis, v) in x.iter_mut().enumerate() {
            *v |= (((index.rank >> (bit * index.dim + axis as u32)) & 1) as u64) << bit;
        }
    }
    Coords {
        level: index.level,
        x,
    }
}

/// Traversal in reverse: `2^(dL) - 1 - Q`, the point reflection about the
/// root cube center.
pub fn reverse(index: &CurveIndex) -> CurveIndex {
    let last = (1u128 << (index.dim * index.level)) - 1;
    CurveIndex {
        rank: last - index.rank,
        ..*index
    }
}

/// The cell of `index`, or with `from_origin` the box spanned from the origin
/// to the cell's far corner.
pub fn omega_box(index: &CurveIndex, from_origin: bool) -> QuadrantBox {
    let x = decode(index).x;
    let upper = x.iter().map(|v| v + 1).collect();
    let lower = if from_origin { vec![0; x.len()] } else { x };
    QuadrantBox {
        level: index.level,
        lower,
        upper,
    }
}

/// Same-level neighbor across the face with normal `+axis` (`positive`) or
/// `-axis`; `None` at the domain boundary.
pub fn face_neighbor(index: &CurveIndex, axis: usize, positive: bool) -> Option<CurveIndex> {
    assert!(axis < index.dim as usize, "axis {axis} out of range");
    let mut coords = decode(index);
    let v = coords.x[axis];
    coords.x[axis] = if positive {
        let next = v + 1;
        if next >= 1u64 << index.level {
            return None;
        }
        next
    } else {
        v.checked_sub(1)?
    };
    Some(encode(&coords))
}

/// Result of splitting a segment at its longest common bit prefix.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Split {
    Whole(Segment),
    Halves(Segment, Segment),
}

/// Splits `segment` into `[start, p011..1]` and `[p100..0, end]`, where `p`
/// is the longest bit prefix shared by `start` and `end`. Each half is a
/// single face-connected piece.
pub fn split_segment(segment: &Segment) -> Split {
    let diff = segment.start ^ segment.end;
    if diff == 0 {
        return Split::Whole(*segment);
    }
    let top = 127 - diff.leading_zeros();
    let low_mask = (1u128 << top) - 1;
    let left_end = segment.start | low_mask;
    let right_start = left_end + 1;
    Split::Halves(
        Segment {
            start: segment.start,
            end: left_end,
        },
        Segment {
            start: right_start,
            end: segment.end,
        },
    )
}
