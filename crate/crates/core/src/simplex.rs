//! Tetrahedral Morton (TM) curve for triangles and tetrahedra.
//!
//! Every element of a uniform refinement of the root simplex is one of the
//! `d!` Kuhn simplices of its level-`L` lattice cube. A Kuhn simplex is a
//! monotone lattice path from the cube's anchor corner to the opposite
//! corner; its vertices are listed in path order. The path for type `b` is
//!
//! | d | b | axis order |
//! |---|---|------------|
//! | 2 | 0 | x, y |
//! | 2 | 1 | y, x |
//! | 3 | 0 | x, z, y |
//! | 3 | 1 | x, y, z |
//! | 3 | 2 | y, x, z |
//! | 3 | 3 | y, z, x |
//! | 3 | 4 | z, y, x |
//! | 3 | 5 | z, x, y |
//!
//! The root is the level-0 simplex of type 0. Children follow Bey's red
//! refinement and are visited in the order given by the local index tables.

use std::collections::HashMap;

use crate::error::{domain, Error, Result};

/// Deepest level for which lattice coordinates fit the packed facet keys.
pub const MAX_LEVEL: u32 = 20;

const PATHS_2D: [[usize; 3]; 2] = [[0, 1, 2], [1, 0, 2]];
const PATHS_3D: [[usize; 3]; 6] = [
    [0, 2, 1],
    [0, 1, 2],
    [1, 0, 2],
    [1, 2, 0],
    [2, 1, 0],
    [2, 0, 1],
];

/// Local index `sigma_b(i)`: TM position of Bey child `i` under a parent of
/// type `b`.
const LOCAL_INDEX_2D: [[u8; 4]; 2] = [[0, 1, 3, 2], [0, 2, 3, 1]];
const LOCAL_INDEX_3D: [[u8; 8]; 6] = [
    [0, 1, 4, 7, 2, 3, 6, 5],
    [0, 1, 5, 7, 2, 3, 6, 4],
    [0, 3, 4, 7, 1, 2, 6, 5],
    [0, 1, 6, 7, 2, 3, 4, 5],
    [0, 3, 5, 7, 1, 2, 4, 6],
    [0, 3, 6, 7, 2, 1, 4, 5],
];

/// Vertex indices of Bey's children.
const BEY_2D: [[(usize, usize); 3]; 4] = [
    [(0, 0), (0, 1), (0, 2)],
    [(0, 1), (1, 1), (1, 2)],
    [(0, 2), (1, 2), (2, 2)],
    [(0, 1), (0, 2), (1, 2)],
];
const BEY_3D: [[(usize, usize); 4]; 8] = [
    [(0, 0), (0, 1), (0, 2), (0, 3)],
    [(0, 1), (1, 1), (1, 2), (1, 3)],
    [(0, 2), (1, 2), (2, 2), (2, 3)],
    [(0, 3), (1, 3), (2, 3), (3, 3)],
    [(0, 1), (0, 2), (0, 3), (1, 3)],
    [(0, 1), (0, 2), (1, 2), (1, 3)],
    [(0, 2), (0, 3), (1, 3), (2, 3)],
    [(0, 2), (1, 2), (1, 3), (2, 3)],
];

fn check_dim(dim: u32) -> Result<()> {
    match dim {
        2 | 3 => Ok(()),
        _ => Err(Error::Unsupported(format!(
            "simplices of dimension {dim}; only 2 and 3 are implemented"
        ))),
    }
}

pub fn type_count(dim: u32) -> u8 {
    if dim == 2 {
        2
    } else {
        6
    }
}

fn type_path(dim: u32, stype: u8) -> [usize; 3] {
    if dim == 2 {
        PATHS_2D[stype as usize]
    } else {
        PATHS_3D[stype as usize]
    }
}

fn type_of_path(dim: u32, path: &[usize]) -> Option<u8> {
    let n = dim as usize;
    (0..type_count(dim)).find(|&b| type_path(dim, b)[..n] == path[..n])
}

pub type Point = [u32; 3];

/// An element of the TM curve: level, lattice anchor (lower corner of its
/// cube, units of `2^-level`) and type.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Simplex {
    dim: u32,
    level: u32,
    anchor: Point,
    stype: u8,
}

impl Simplex {
    pub fn new(dim: u32, level: u32, anchor: Point, stype: u8) -> Result<Self> {
        check_dim(dim)?;
        if level > MAX_LEVEL {
            return domain(format!("simplex level {level} exceeds {MAX_LEVEL}"));
        }
        if stype >= type_count(dim) {
            return domain(format!("type {stype} out of range for dimension {dim}"));
        }
        let side = 1u32 << level;
        if anchor[..dim as usize].iter().any(|&a| a >= side)
            || anchor[dim as usize..].iter().any(|&a| a != 0)
        {
            return domain(format!(
                "anchor {anchor:?} outside the level-{level} lattice"
            ));
        }
        Ok(Simplex {
            dim,
            level,
            anchor,
            stype,
        })
    }

    /// Recovers a simplex from its vertices, which may come in any order.
    pub fn from_vertices(dim: u32, level: u32, vertices: &[Point]) -> Result<Self> {
        check_dim(dim)?;
        let n = dim as usize;
        if vertices.len() != n + 1 {
            return domain(format!(
                "{} vertices given for a {dim}-simplex",
                vertices.len()
            ));
        }
        let mut sorted = vertices.to_vec();
        sorted.sort_by_key(|v| v.iter().map(|&c| c as u64).sum::<u64>());
        let mut path = [0usize, 1, 2];
        for k in 0..n {
            let (a, b) = (sorted[k], sorted[k + 1]);
            let steps: Vec<usize> = (0..3).filter(|&i| a[i] != b[i]).collect();
            match steps.as_slice() {
                [axis] if b[*axis] == a[*axis] + 1 => path[k] = *axis,
                _ => return domain(format!("{vertices:?} is not a lattice Kuhn simplex")),
            }
        }
        let stype = type_of_path(dim, &path)
            .ok_or_else(|| Error::Domain(format!("{vertices:?} is not a Kuhn simplex")))?;
        Simplex::new(dim, level, sorted[0], stype)
    }

    pub fn dim(&self) -> u32 {
        self.dim
    }

    pub fn level(&self) -> u32 {
        self.level
    }

    pub fn anchor(&self) -> Point {
        self.anchor
    }

    pub fn simplex_type(&self) -> u8 {
        self.stype
    }

    /// Vertices in canonical order, units of `2^-level`.
    pub fn vertices(&self) -> Vec<Point> {
        let path = type_path(self.dim, self.stype);
        let mut v = self.anchor;
        let mut out = Vec::with_capacity(self.dim as usize + 1);
        out.push(v);
        for &axis in &path[..self.dim as usize] {
            v[axis] += 1;
            out.push(v);
        }
        out
    }

    /// Sum of the vertices; the centroid scaled by `d + 1`.
    fn centroid_scaled(&self) -> [u64; 3] {
        let mut c = [0u64; 3];
        for v in self.vertices() {
            for i in 0..3 {
                c[i] += v[i] as u64;
            }
        }
        c
    }

    /// Number of vertices this simplex has in common with `other`.
    pub fn shared_vertices(&self, other: &Simplex) -> usize {
        let mine = self.vertices();
        other.vertices().iter().filter(|v| mine.contains(v)).count()
    }

    /// The ancestor at `level`, found by locating the centroid among the
    /// Kuhn simplices of the enclosing coarse cube.
    pub fn ancestor(&self, level: u32) -> Result<Simplex> {
        if level > self.level {
            return domain(format!(
                "ancestor level {level} below simplex level {}",
                self.level
            ));
        }
        let n = self.dim as usize;
        let shift = self.level - level;
        let mut anchor = [0u32; 3];
        for i in 0..n {
            anchor[i] = self.anchor[i] >> shift;
        }
        let c = self.centroid_scaled();
        let scale = (n as u64 + 1) << shift;
        let rel: Vec<u64> = (0..n).map(|i| c[i] - anchor[i] as u64 * scale).collect();
        let mut path: Vec<usize> = (0..n).collect();
        path.sort_by(|&a, &b| rel[b].cmp(&rel[a]));
        if path.windows(2).any(|w| rel[w[0]] == rel[w[1]]) {
            return domain("centroid on a type boundary");
        }
        let stype = type_of_path(self.dim, &path).expect("every axis order is a type");
        Ok(Simplex {
            dim: self.dim,
            level,
            anchor,
            stype,
        })
    }

    /// Image under the point reflection through the center of the root cube.
    pub fn point_reflected(&self) -> Simplex {
        let side = 1u32 << self.level;
        let n = self.dim as usize;
        let verts: Vec<Point> = self
            .vertices()
            .iter()
            .map(|v| {
                let mut w = [0; 3];
                for i in 0..n {
                    w[i] = side - v[i];
                }
                w
            })
            .collect();
        Simplex::from_vertices(self.dim, self.level, &verts)
            .expect("reflection of a Kuhn simplex is a Kuhn simplex")
    }
}

/// The level-0, type-0 simplex of the unit cube.
pub fn root_simplex(dim: u32) -> Result<Simplex> {
    Simplex::new(dim, 0, [0; 3], 0)
}

/// The level-0 simplex of the given type.
pub fn root_of_type(dim: u32, stype: u8) -> Result<Simplex> {
    Simplex::new(dim, 0, [0; 3], stype)
}

pub fn local_index(dim: u32, parent_type: u8, bey_child: usize) -> Result<u8> {
    check_dim(dim)?;
    if parent_type >= type_count(dim) || bey_child >= 1 << dim {
        return domain(format!(
            "local index of child {bey_child} under type {parent_type} (d = {dim})"
        ));
    }
    Ok(if dim == 2 {
        LOCAL_INDEX_2D[parent_type as usize][bey_child]
    } else {
        LOCAL_INDEX_3D[parent_type as usize][bey_child]
    })
}

/// Bey child sitting at TM position `position` under a parent of `parent_type`.
fn bey_child_at(dim: u32, parent_type: u8, position: usize) -> usize {
    (0..1usize << dim)
        .find(|&i| local_index(dim, parent_type, i).unwrap() as usize == position)
        .expect("local index rows are permutations")
}

/// Vertex lists of Bey's children in units of `2^-(level+1)`, in the vertex
/// order given by the refinement rule.
pub fn bey_child_vertices(parent: &Simplex) -> Vec<Vec<Point>> {
    let doubled: Vec<Point> = parent
        .vertices()
        .iter()
        .map(|v| [v[0] * 2, v[1] * 2, v[2] * 2])
        .collect();
    let mid = |i: usize, j: usize| -> Point {
        let (a, b) = (doubled[i], doubled[j]);
        [(a[0] + b[0]) / 2, (a[1] + b[1]) / 2, (a[2] + b[2]) / 2]
    };
    let build = |rows: &[(usize, usize)]| rows.iter().map(|&(i, j)| mid(i, j)).collect();
    if parent.dim == 2 {
        BEY_2D.iter().map(|r| build(r)).collect()
    } else {
        BEY_3D.iter().map(|r| build(r)).collect()
    }
}

/// The `2^d` children in Bey order `T_0 .. T_{2^d - 1}`.
pub fn bey_children(parent: &Simplex) -> Result<Vec<Simplex>> {
    if parent.level >= MAX_LEVEL {
        return domain(format!("cannot refine beyond level {MAX_LEVEL}"));
    }
    bey_child_vertices(parent)
        .iter()
        .map(|v| Simplex::from_vertices(parent.dim, parent.level + 1, v))
        .collect()
}

/// The children in TM order: position `p` holds Bey child `sigma_b^-1(p)`.
pub fn sfc_children(parent: &Simplex) -> Result<Vec<Simplex>> {
    let bey = bey_children(parent)?;
    Ok((0..bey.len())
        .map(|p| bey[bey_child_at(parent.dim, parent.stype, p)])
        .collect())
}

fn sfc_child(parent: &Simplex, position: usize) -> Simplex {
    let bey = bey_child_at(parent.dim, parent.stype, position);
    let verts = &bey_child_vertices(parent)[bey];
    Simplex::from_vertices(parent.dim, parent.level + 1, verts).expect("Bey child is Kuhn")
}

/// Number of elements at `level`.
pub fn element_count(dim: u32, level: u32) -> Result<u128> {
    check_dim(dim)?;
    if level > MAX_LEVEL {
        return domain(format!("simplex level {level} exceeds {MAX_LEVEL}"));
    }
    Ok(1u128 << (dim * level))
}

/// A rank on the level-`L` TM curve.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TmRank {
    pub dim: u32,
    pub level: u32,
    pub rank: u128,
}

impl TmRank {
    pub fn new(dim: u32, level: u32, rank: u128) -> Result<Self> {
        let n = element_count(dim, level)?;
        if rank >= n {
            return domain(format!("TM rank {rank} out of range [0, {n})"));
        }
        Ok(TmRank { dim, level, rank })
    }
}

/// Descends from `root` along the base-`2^d` digits of `rank`.
pub fn simplex_at_from(root: &Simplex, levels: u32, rank: u128) -> Simplex {
    let d = root.dim;
    let mask = (1u128 << d) - 1;
    let mut node = *root;
    for l in (0..levels).rev() {
        let digit = ((rank >> (d * l)) & mask) as usize;
        node = sfc_child(&node, digit);
    }
    node
}

pub fn simplex_at(rank: &TmRank) -> Simplex {
    simplex_at_from(&root_simplex(rank.dim).unwrap(), rank.level, rank.rank)
}

/// Position of `simplex` on the TM curve of its level; inverse of
/// [`simplex_at`].
pub fn tm_rank(simplex: &Simplex) -> Result<TmRank> {
    let root = root_simplex(simplex.dim)?;
    if simplex.ancestor(0)? != root {
        return domain("simplex lies outside the root simplex");
    }
    let mut node = root;
    let mut rank = 0u128;
    for level in 1..=simplex.level {
        let target = simplex.ancestor(level)?;
        let position = sfc_children(&node)?
            .iter()
            .position(|c| *c == target)
            .ok_or_else(|| Error::Domain("simplex not in the root refinement".into()))?;
        rank = (rank << simplex.dim) | position as u128;
        node = target;
    }
    Ok(TmRank {
        dim: simplex.dim,
        level: simplex.level,
        rank,
    })
}

/// All level-`levels` descendants of `root` in TM order.
pub fn traverse(root: &Simplex, levels: u32) -> Result<Vec<Simplex>> {
    if root.level + levels > MAX_LEVEL {
        return domain(format!("cannot refine beyond level {MAX_LEVEL}"));
    }
    let mut out = Vec::with_capacity(1 << (root.dim * levels));
    fn walk(node: &Simplex, left: u32, out: &mut Vec<Simplex>) {
        if left == 0 {
            out.push(*node);
            return;
        }
        for c in sfc_children(node).unwrap() {
            walk(&c, left - 1, out);
        }
    }
    walk(root, levels, &mut out);
    Ok(out)
}

/// The level-`L` TM sequences of the type-0 and the type-1 root triangle.
pub fn reverse_2d_order(level: u32) -> Result<(Vec<Simplex>, Vec<Simplex>)> {
    Ok((
        traverse(&root_of_type(2, 0)?, level)?,
        traverse(&root_of_type(2, 1)?, level)?,
    ))
}

type FacetKey = [Point; 3];

fn facet_keys(s: &Simplex) -> impl Iterator<Item = FacetKey> {
    let verts = s.vertices();
    let n = s.dim as usize;
    (0..=n).map(move |skip| {
        let mut key = [[u32::MAX; 3]; 3];
        let mut k = 0;
        for (i, v) in verts.iter().enumerate() {
            if i != skip {
                key[k] = *v;
                k += 1;
            }
        }
        key[..n].sort_unstable();
        key
    })
}

/// The uniform level-`L` refinement of the root in TM order, with
/// face-neighbor lists obtained by hashing facets.
#[derive(Debug, Clone)]
pub struct SimplexMesh {
    dim: u32,
    level: u32,
    elements: Vec<Simplex>,
    rank_of: HashMap<Simplex, u32>,
    neighbors: Vec<Vec<u32>>,
}

impl SimplexMesh {
    pub fn new(dim: u32, level: u32) -> Result<Self> {
        let elements = traverse(&root_simplex(dim)?, level)?;
        let rank_of: HashMap<Simplex, u32> = elements
            .iter()
            .enumerate()
            .map(|(r, s)| (*s, r as u32))
            .collect();
        let mut facets: HashMap<FacetKey, u32> = HashMap::with_capacity(elements.len() * 2);
        let mut neighbors = vec![Vec::new(); elements.len()];
        for (r, s) in elements.iter().enumerate() {
            for key in facet_keys(s) {
                if let Some(other) = facets.remove(&key) {
                    neighbors[r].push(other);
                    neighbors[other as usize].push(r as u32);
                } else {
                    facets.insert(key, r as u32);
                }
            }
        }
        for list in &mut neighbors {
            list.sort_unstable();
        }
        Ok(SimplexMesh {
            dim,
            level,
            elements,
            rank_of,
            neighbors,
        })
    }

    pub fn dim(&self) -> u32 {
        self.dim
    }

    pub fn level(&self) -> u32 {
        self.level
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[Simplex] {
        &self.elements
    }

    pub fn element(&self, rank: usize) -> &Simplex {
        &self.elements[rank]
    }

    pub fn rank_of(&self, s: &Simplex) -> Option<usize> {
        self.rank_of.get(s).map(|&r| r as usize)
    }

    pub fn neighbor_ranks(&self, rank: usize) -> &[u32] {
        &self.neighbors[rank]
    }

    /// Same-level simplices sharing a facet with `s`.
    pub fn face_neighbors(&self, s: &Simplex) -> Result<Vec<Simplex>> {
        let r = self
            .rank_of(s)
            .ok_or_else(|| Error::Domain("simplex not part of this mesh".into()))?;
        Ok(self.neighbors[r]
            .iter()
            .map(|&n| self.elements[n as usize])
            .collect())
    }

    pub(crate) fn into_neighbors(self) -> Vec<Vec<u32>> {
        self.neighbors
    }
}
