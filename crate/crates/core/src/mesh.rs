//! Face-connected components of curve segments over uniform refinements.

use std::fmt;
use std::str::FromStr;

use crate::cube::{self, CurveIndex};
use crate::dsu::DisjointSets;
use crate::error::{domain, Error, Result};
use crate::segment::Segment;
use crate::simplex::{self, SimplexMesh};

/// Largest mesh for which flat adjacency lists are built.
pub const MAX_VIEW_ELEMENTS: u128 = 1 << 24;

/// Exhaustive scans over all segments refuse meshes with `N^2` above this
/// unless forced.
pub const SCAN_STEP_LIMIT: u128 = 1 << 34;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Geometry {
    Cube { dim: u32 },
    Simplex { dim: u32 },
}

impl Geometry {
    pub fn dim(&self) -> u32 {
        match *self {
            Geometry::Cube { dim } | Geometry::Simplex { dim } => dim,
        }
    }

    pub fn is_cube(&self) -> bool {
        matches!(self, Geometry::Cube { .. })
    }

    pub fn element_count(&self, level: u32) -> Result<u128> {
        match *self {
            Geometry::Cube { dim } => cube::element_count(dim, level),
            Geometry::Simplex { dim } => simplex::element_count(dim, level),
        }
    }

    /// Upper bound on the number of face neighbors of one element.
    pub fn max_neighbors(&self) -> usize {
        match *self {
            Geometry::Cube { dim } => 2 * dim as usize,
            Geometry::Simplex { dim } => dim as usize + 1,
        }
    }
}

impl FromStr for Geometry {
    type Err = Error;

    /// Accepts `quad`, `cube`, `triangle`, `tet` and `cube:<d>`.
    fn from_str(s: &str) -> Result<Self> {
        let g = match s {
            "quad" | "quads" => Geometry::Cube { dim: 2 },
            "cube" | "cubes" => Geometry::Cube { dim: 3 },
            "triangle" | "triangles" | "tri" => Geometry::Simplex { dim: 2 },
            "tet" | "tets" => Geometry::Simplex { dim: 3 },
            _ => {
                let dim = s
                    .strip_prefix("cube:")
                    .and_then(|d| d.parse::<u32>().ok())
                    .filter(|&d| d >= 1)
                    .ok_or_else(|| Error::Domain(format!("unknown geometry '{s}'")))?;
                Geometry::Cube { dim }
            }
        };
        Ok(g)
    }
}

impl fmt::Display for Geometry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Geometry::Cube { dim } => write!(f, "cube:{dim}"),
            Geometry::Simplex { dim: 2 } => write!(f, "triangle"),
            Geometry::Simplex { .. } => write!(f, "tet"),
        }
    }
}

/// A uniform level-`L` mesh seen through its curve order: element `r` is the
/// element of rank `r`, with precomputed face-neighbor ranks.
#[derive(Debug, Clone)]
pub struct MeshView {
    geometry: Geometry,
    level: u32,
    offsets: Vec<u32>,
    /// Neighbors of each element, ascending.
    adjacency: Vec<u32>,
    /// Per element, how many of its neighbors have a smaller rank.
    lower: Vec<u8>,
}

impl MeshView {
    pub fn new(geometry: Geometry, level: u32) -> Result<Self> {
        let n = geometry.element_count(level)?;
        if n > MAX_VIEW_ELEMENTS {
            return domain(format!(
                "{geometry} level {level} has {n} elements; at most {MAX_VIEW_ELEMENTS} supported"
            ));
        }
        let lists: Vec<Vec<u32>> = match geometry {
            Geometry::Cube { dim } => (0..n)
                .map(|r| {
                    let q = CurveIndex::new(dim, level, r).unwrap();
                    let mut v: Vec<u32> = (0..dim as usize)
                        .flat_map(|axis| {
                            [false, true]
                                .into_iter()
                                .filter_map(move |pos| cube::face_neighbor(&q, axis, pos))
                        })
                        .map(|q| q.rank() as u32)
                        .collect();
                    v.sort_unstable();
                    v
                })
                .collect(),
            Geometry::Simplex { dim } => SimplexMesh::new(dim, level)?.into_neighbors(),
        };
        Ok(Self::from_lists(geometry, level, lists))
    }

    pub fn cube(dim: u32, level: u32) -> Result<Self> {
        Self::new(Geometry::Cube { dim }, level)
    }

    pub fn simplex(dim: u32, level: u32) -> Result<Self> {
        Self::new(Geometry::Simplex { dim }, level)
    }

    fn from_lists(geometry: Geometry, level: u32, lists: Vec<Vec<u32>>) -> Self {
        let mut offsets = Vec::with_capacity(lists.len() + 1);
        let mut adjacency = Vec::new();
        let mut lower = Vec::with_capacity(lists.len());
        offsets.push(0);
        for (r, list) in lists.iter().enumerate() {
            lower.push(list.iter().filter(|&&x| (x as usize) < r).count() as u8);
            adjacency.extend_from_slice(list);
            offsets.push(adjacency.len() as u32);
        }
        MeshView {
            geometry,
            level,
            offsets,
            adjacency,
            lower,
        }
    }

    pub fn geometry(&self) -> Geometry {
        self.geometry
    }

    pub fn level(&self) -> u32 {
        self.level
    }

    pub fn len(&self) -> usize {
        self.lower.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lower.is_empty()
    }

    #[inline]
    pub fn neighbors(&self, rank: usize) -> &[u32] {
        &self.adjacency[self.offsets[rank] as usize..self.offsets[rank + 1] as usize]
    }

    /// Neighbors with a smaller rank, ascending.
    #[inline]
    pub fn lower_neighbors(&self, rank: usize) -> &[u32] {
        let start = self.offsets[rank] as usize;
        &self.adjacency[start..start + self.lower[rank] as usize]
    }

    /// Neighbors with a greater rank, ascending.
    #[inline]
    pub fn upper_neighbors(&self, rank: usize) -> &[u32] {
        let start = self.offsets[rank] as usize + self.lower[rank] as usize;
        &self.adjacency[start..self.offsets[rank + 1] as usize]
    }

    pub fn are_adjacent(&self, a: usize, b: usize) -> bool {
        self.neighbors(a).binary_search(&(b as u32)).is_ok()
    }

    fn check_segment(&self, segment: &Segment) -> Result<()> {
        segment.check_within(self.len() as u128)
    }

    /// Number of segment-extension steps of an exhaustive scan.
    pub fn scan_steps(&self) -> u128 {
        let n = self.len() as u128;
        n * (n + 1) / 2
    }

    pub fn check_scan_size(&self, force: bool) -> Result<()> {
        let n = self.len() as u128;
        if !force && n * n > SCAN_STEP_LIMIT {
            return Err(Error::SizeGuard {
                steps: n * n,
                limit: SCAN_STEP_LIMIT,
            });
        }
        Ok(())
    }
}

/// Components of one segment. `labels[i]` is the component of rank
/// `segment.start + i`; components are numbered by first appearance.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Components {
    pub segment: Segment,
    pub count: usize,
    pub labels: Vec<u32>,
}

impl Components {
    /// Maximal runs of consecutive ranks per component.
    pub fn rank_runs(&self) -> Vec<Vec<(u128, u128)>> {
        let mut runs: Vec<Vec<(u128, u128)>> = vec![Vec::new(); self.count];
        for (i, &c) in self.labels.iter().enumerate() {
            let rank = self.segment.start + i as u128;
            let list = &mut runs[c as usize];
            match list.last_mut() {
                Some(last) if last.1 + 1 == rank => last.1 = rank,
                _ => list.push((rank, rank)),
            }
        }
        runs
    }

    pub fn sizes(&self) -> Vec<usize> {
        let mut sizes = vec![0; self.count];
        for &c in &self.labels {
            sizes[c as usize] += 1;
        }
        sizes
    }
}

pub fn count_components(view: &MeshView, segment: &Segment) -> Result<Components> {
    view.check_segment(segment)?;
    let (s, e) = (segment.start as usize, segment.end as usize);
    let mut sets = DisjointSets::new(e - s + 1);
    let mut count = 0usize;
    for r in s..=e {
        count += 1;
        for &n in view.lower_neighbors(r) {
            if n as usize >= s && sets.union(r - s, n as usize - s) {
                count -= 1;
            }
        }
    }
    let mut ids = vec![u32::MAX; e - s + 1];
    let mut next = 0;
    let labels = (0..=e - s)
        .map(|i| {
            let root = sets.find(i);
            if ids[root] == u32::MAX {
                ids[root] = next;
                next += 1;
            }
            ids[root]
        })
        .collect();
    Ok(Components {
        segment: *segment,
        count,
        labels,
    })
}

/// Connectivity class of a segment on the cubical curve.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ConnectivityClass {
    Disconnected,
    /// One component whose first and last elements share a face normal to
    /// `axis` (0-based).
    WeaklyConnected {
        axis: usize,
    },
    /// One component whose end elements are not face neighbors, or a single
    /// element.
    StronglyConnected,
}

/// Axis along which two cube cells are face neighbors.
fn adjacency_axis(dim: u32, level: u32, a: u128, b: u128) -> Option<usize> {
    let xa = cube::decode(&CurveIndex::new(dim, level, a).ok()?);
    let xb = cube::decode(&CurveIndex::new(dim, level, b).ok()?);
    let mut axis = None;
    for (i, (p, q)) in xa.as_slice().iter().zip(xb.as_slice()).enumerate() {
        if p != q {
            if axis.is_some() || p.abs_diff(*q) != 1 {
                return None;
            }
            axis = Some(i);
        }
    }
    axis
}

pub(crate) fn class_from(
    components: usize,
    endpoint_axis: Option<usize>,
    len: u128,
) -> ConnectivityClass {
    if components > 1 {
        ConnectivityClass::Disconnected
    } else if len == 1 {
        ConnectivityClass::StronglyConnected
    } else {
        match endpoint_axis {
            Some(axis) => ConnectivityClass::WeaklyConnected { axis },
            None => ConnectivityClass::StronglyConnected,
        }
    }
}

pub fn classify_segment(view: &MeshView, segment: &Segment) -> Result<ConnectivityClass> {
    let Geometry::Cube { dim } = view.geometry() else {
        return Err(Error::Unsupported(
            "connectivity classes are defined for cubical curves only".into(),
        ));
    };
    let comps = count_components(view, segment)?;
    let axis = adjacency_axis(dim, view.level(), segment.start, segment.end);
    Ok(class_from(comps.count, axis, segment.len()))
}

/// Extends segments from `start` one element at a time and reports the
/// component count of `[start, end]` for every `end`.
#[inline]
pub(crate) fn scan_from(
    view: &MeshView,
    sets: &mut DisjointSets,
    start: usize,
    mut visit: impl FnMut(usize, usize),
) {
    let mut count = 0usize;
    for end in start..view.len() {
        sets.make_set(end);
        count += 1;
        for &n in view.lower_neighbors(end) {
            if n as usize >= start && sets.union(end, n as usize) {
                count -= 1;
            }
        }
        visit(end, count);
    }
}

const SCAN_BLOCK: usize = 32;

/// Runs [`scan_from`] for every start rank. Work is split into blocks of
/// start ranks, each folded into its own accumulator; accumulators are merged
/// in rank order, so the result does not depend on the thread count.
pub fn scan_all<T, I, V, M>(view: &MeshView, init: I, visit: V, merge: M) -> T
where
    T: Send,
    I: Fn() -> T + Sync + Send,
    V: Fn(&mut T, usize, usize, usize) + Sync + Send,
    M: Fn(T, T) -> T,
{
    let n = view.len();
    let blocks = n.div_ceil(SCAN_BLOCK);
    let run_block = |b: usize| {
        let mut acc = init();
        let mut sets = DisjointSets::new(n);
        for start in b * SCAN_BLOCK..((b + 1) * SCAN_BLOCK).min(n) {
            scan_from(view, &mut sets, start, |end, count| {
                visit(&mut acc, start, end, count)
            });
        }
        acc
    };
    #[cfg(feature = "parallel")]
    let partials: Vec<T> = {
        use rayon::prelude::*;
        (0..blocks).into_par_iter().map(run_block).collect()
    };
    #[cfg(not(feature = "parallel"))]
    let partials: Vec<T> = (0..blocks).map(run_block).collect();
    partials.into_iter().fold(init(), merge)
}

/// Component counts of all prefixes `[0, end]`, indexed by `end`.
pub fn prefix_counts(view: &MeshView) -> Vec<usize> {
    let mut sets = DisjointSets::new(view.len());
    let mut out = Vec::with_capacity(view.len());
    scan_from(view, &mut sets, 0, |_, c| out.push(c));
    out
}

/// Component counts of all suffixes `[start, N-1]`, indexed by `start`.
pub fn suffix_counts(view: &MeshView) -> Vec<usize> {
    let n = view.len();
    let mut sets = DisjointSets::new(n);
    let mut out = vec![0; n];
    let mut count = 0usize;
    for start in (0..n).rev() {
        count += 1;
        for &m in view.upper_neighbors(start) {
            if sets.union(start, m as usize) {
                count -= 1;
            }
        }
        out[start] = count;
    }
    out
}

/// Largest component count over all segments, with the first segment (by
/// start, then end) attaining it.
pub fn max_components(view: &MeshView, force: bool) -> Result<(usize, Segment)> {
    view.check_scan_size(force)?;
    let (count, start, end) = scan_all(
        view,
        || (0usize, 0usize, 0usize),
        |acc, s, e, c| {
            if c > acc.0 {
                *acc = (c, s, e);
            }
        },
        |a, b| if b.0 > a.0 { b } else { a },
    );
    Ok((
        count,
        Segment {
            start: start as u128,
            end: end as u128,
        },
    ))
}

/// Smallest and largest component count over all segments.
pub fn component_range(view: &MeshView, force: bool) -> Result<(usize, usize)> {
    view.check_scan_size(force)?;
    Ok(scan_all(
        view,
        || (usize::MAX, 0usize),
        |acc, _, _, c| {
            acc.0 = acc.0.min(c);
            acc.1 = acc.1.max(c);
        },
        |a, b| (a.0.min(b.0), a.1.max(b.1)),
    ))
}

/// Whether `segment` keeps its component count when the mesh is uniformly
/// refined `extra` more levels.
pub fn refinement_invariance_check(view: &MeshView, segment: &Segment, extra: u32) -> Result<bool> {
    let fine = MeshView::new(view.geometry(), view.level() + extra)?;
    refinement_invariance_with(view, &fine, segment)
}

/// As [`refinement_invariance_check`] with a prebuilt fine mesh.
pub fn refinement_invariance_with(
    coarse: &MeshView,
    fine: &MeshView,
    segment: &Segment,
) -> Result<bool> {
    if coarse.geometry() != fine.geometry() || fine.level() < coarse.level() {
        return domain("fine mesh must refine the coarse mesh");
    }
    let bits = coarse.geometry().dim() * (fine.level() - coarse.level());
    let a = count_components(coarse, segment)?.count;
    let b = count_components(fine, &segment.refined(bits))?.count;
    Ok(a == b)
}

/// Maximal complete subtrees covering a cubical segment, as `(first rank,
/// subtree depth)` pairs: each covers `2^(dim*depth)` consecutive ranks.
pub fn cube_blocks(dim: u32, segment: &Segment) -> Vec<(u128, u32)> {
    let mut out = Vec::new();
    let mut at = segment.start;
    loop {
        let mut depth = 0;
        loop {
            let next = depth + 1;
            let bits = dim * next;
            if bits >= 128 {
                break;
            }
            let size = 1u128 << bits;
            if at % size != 0 || at + (size - 1) > segment.end {
                break;
            }
            depth = next;
        }
        out.push((at, depth));
        let size = 1u128 << (dim * depth);
        if segment.end - at < size {
            break;
        }
        at += size;
        if at > segment.end {
            break;
        }
    }
    out
}

/// Component count of a cubical segment computed on its subtree blocks
/// instead of single cells. Blocks are boxes, so two of them are connected
/// exactly when the boxes share a face patch of positive area.
pub fn cube_components_by_blocks(dim: u32, level: u32, segment: &Segment) -> Result<usize> {
    segment.check_within(cube::element_count(dim, level)?)?;
    let boxes: Vec<(Vec<u64>, u64)> = cube_blocks(dim, segment)
        .into_iter()
        .map(|(rank, depth)| {
            let lower = cube::decode(&CurveIndex::new(dim, level, rank).unwrap());
            (lower.as_slice().to_vec(), 1u64 << depth)
        })
        .collect();
    let touching = |a: &(Vec<u64>, u64), b: &(Vec<u64>, u64)| {
        let mut contact = 0;
        for i in 0..dim as usize {
            let (alo, ahi) = (a.0[i], a.0[i] + a.1);
            let (blo, bhi) = (b.0[i], b.0[i] + b.1);
            if ahi == blo || bhi == alo {
                contact += 1;
            } else if ahi <= blo || bhi <= alo {
                return false;
            }
        }
        contact == 1
    };
    let mut sets = DisjointSets::new(boxes.len());
    let mut count = boxes.len();
    for i in 0..boxes.len() {
        for j in 0..i {
            if touching(&boxes[i], &boxes[j]) && sets.union(i, j) {
                count -= 1;
            }
        }
    }
    Ok(count)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::VecDeque;

    fn seg(a: u128, b: u128) -> Segment {
        Segment::new(a, b).unwrap()
    }

    /// Breadth-first component count on the raw neighbor lists.
    fn bfs_count(view: &MeshView, s: &Segment) -> usize {
        let (a, b) = (s.start as usize, s.end as usize);
        let mut seen = vec![false; b - a + 1];
        let mut count = 0;
        for r in a..=b {
            if seen[r - a] {
                continue;
            }
            count += 1;
            seen[r - a] = true;
            let mut queue = VecDeque::from([r]);
            while let Some(x) = queue.pop_front() {
                for &y in view.neighbors(x) {
                    let y = y as usize;
                    if (a..=b).contains(&y) && !seen[y - a] {
                        seen[y - a] = true;
                        queue.push_back(y);
                    }
                }
            }
        }
        count
    }

    #[test]
    fn geometry_parsing() {
        assert_eq!(
            "quad".parse::<Geometry>().unwrap(),
            Geometry::Cube { dim: 2 }
        );
        assert_eq!(
            "cube:4".parse::<Geometry>().unwrap(),
            Geometry::Cube { dim: 4 }
        );
        assert_eq!(
            "tet".parse::<Geometry>().unwrap(),
            Geometry::Simplex { dim: 3 }
        );
        assert!("cube:0".parse::<Geometry>().is_err());
        assert!("hex".parse::<Geometry>().is_err());
    }

    #[test]
    fn neighbor_relation_is_symmetric_and_bounded() {
        for g in ["quad", "cube", "triangle", "tet", "cube:4"] {
            let g: Geometry = g.parse().unwrap();
            let view = MeshView::new(g, 2).unwrap();
            for r in 0..view.len() {
                assert!(view.neighbors(r).len() <= g.max_neighbors());
                for &n in view.neighbors(r) {
                    assert_ne!(n as usize, r);
                    assert!(view.are_adjacent(n as usize, r));
                }
            }
        }
    }

    #[test]
    fn count_examples() {
        let quad = MeshView::cube(2, 2).unwrap();
        assert_eq!(count_components(&quad, &seg(1, 2)).unwrap().count, 2);
        assert_eq!(count_components(&quad, &seg(7, 7)).unwrap().count, 1);
        let tet = MeshView::simplex(3, 2).unwrap();
        let c = count_components(&tet, &seg(22, 25)).unwrap();
        assert_eq!(c.count, 4);
        assert_eq!(c.sizes(), vec![1, 1, 1, 1]);
        assert!(count_components(&quad, &seg(3, 16)).is_err());
    }

    #[test]
    fn components_agree_with_bfs() {
        for g in ["quad", "cube", "triangle", "tet"] {
            let view = MeshView::new(g.parse().unwrap(), 3).unwrap();
            let n = view.len() as u128;
            for a in (0..n).step_by(7) {
                for b in (a..n).step_by(13) {
                    let s = seg(a, b);
                    assert_eq!(
                        count_components(&view, &s).unwrap().count,
                        bfs_count(&view, &s)
                    );
                }
            }
        }
    }

    #[test]
    fn rank_runs_cover_the_segment() {
        let quad = MeshView::cube(2, 2).unwrap();
        let c = count_components(&quad, &seg(1, 2)).unwrap();
        assert_eq!(c.rank_runs(), vec![vec![(1, 1)], vec![(2, 2)]]);
    }

    #[test]
    fn classify_examples() {
        let quad = MeshView::cube(2, 1).unwrap();
        use ConnectivityClass::*;
        assert_eq!(
            classify_segment(&quad, &seg(0, 1)).unwrap(),
            WeaklyConnected { axis: 0 }
        );
        assert_eq!(classify_segment(&quad, &seg(1, 2)).unwrap(), Disconnected);
        assert_eq!(
            classify_segment(&quad, &seg(0, 3)).unwrap(),
            StronglyConnected
        );
        assert_eq!(
            classify_segment(&quad, &seg(0, 2)).unwrap(),
            WeaklyConnected { axis: 1 }
        );
        assert_eq!(
            classify_segment(&quad, &seg(2, 2)).unwrap(),
            StronglyConnected
        );
        let tri = MeshView::simplex(2, 1).unwrap();
        assert!(matches!(
            classify_segment(&tri, &seg(0, 1)),
            Err(Error::Unsupported(_))
        ));
    }

    #[test]
    fn max_component_examples() {
        assert_eq!(
            max_components(&MeshView::cube(2, 3).unwrap(), false)
                .unwrap()
                .0,
            2
        );
        let (m, w) = max_components(&MeshView::simplex(3, 2).unwrap(), false).unwrap();
        assert_eq!(m, 4);
        let tet = MeshView::simplex(3, 2).unwrap();
        assert_eq!(count_components(&tet, &w).unwrap().count, 4);
    }

    #[test]
    fn size_guard_refuses_large_scans() {
        let view = MeshView::cube(2, 9).unwrap();
        assert!(matches!(
            max_components(&view, false),
            Err(Error::SizeGuard { .. })
        ));
    }

    #[test]
    fn scan_matches_direct_counts() {
        let view = MeshView::simplex(2, 3).unwrap();
        let all = scan_all(
            &view,
            Vec::new,
            |acc: &mut Vec<(usize, usize, usize)>, s, e, c| acc.push((s, e, c)),
            |mut a, b| {
                a.extend(b);
                a
            },
        );
        assert_eq!(all.len(), 64 * 65 / 2);
        for (s, e, c) in all {
            assert_eq!(
                count_components(&view, &seg(s as u128, e as u128))
                    .unwrap()
                    .count,
                c
            );
        }
    }

    #[test]
    fn prefix_and_suffix_counts() {
        let view = MeshView::simplex(3, 2).unwrap();
        let pre = prefix_counts(&view);
        let suf = suffix_counts(&view);
        let last = view.len() as u128 - 1;
        for r in 0..view.len() {
            assert_eq!(
                pre[r],
                count_components(&view, &seg(0, r as u128)).unwrap().count
            );
            assert_eq!(
                suf[r],
                count_components(&view, &seg(r as u128, last))
                    .unwrap()
                    .count
            );
        }
    }

    #[test]
    fn refinement_invariance_examples() {
        let coarse = MeshView::cube(2, 1).unwrap();
        assert!(refinement_invariance_check(&coarse, &seg(1, 2), 1).unwrap());
        assert!(refinement_invariance_check(&coarse, &seg(3, 3), 2).unwrap());
        let coarse = MeshView::simplex(2, 2).unwrap();
        let fine = MeshView::simplex(2, 3).unwrap();
        for a in 0..16 {
            for b in a..16 {
                assert!(refinement_invariance_with(&coarse, &fine, &seg(a, b)).unwrap());
            }
        }
    }

    #[test]
    fn blocks_partition_the_segment() {
        let s = seg(3, 57);
        let blocks = cube_blocks(2, &s);
        let mut at = s.start;
        for (start, depth) in blocks {
            assert_eq!(start, at);
            assert_eq!(start % (1 << (2 * depth)), 0);
            at += 1 << (2 * depth);
        }
        assert_eq!(at, s.end + 1);
        assert_eq!(cube_blocks(3, &seg(0, 511)), vec![(0, 3)]);
    }

    #[test]
    fn block_counts_match_cell_counts() {
        for (dim, level) in [(1, 4), (2, 3), (3, 2), (4, 1)] {
            let view = MeshView::cube(dim, level).unwrap();
            let n = view.len() as u128;
            for a in 0..n {
                for b in a..n {
                    let s = seg(a, b);
                    assert_eq!(
                        cube_components_by_blocks(dim, level, &s).unwrap(),
                        count_components(&view, &s).unwrap().count,
                        "dim {dim} level {level} {s}"
                    );
                }
            }
        }
    }
}
