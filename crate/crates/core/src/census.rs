//! Exact census of segment connectivity on the cubical curve.
//!
//! Segments of length `l` on level `L` come from coarse segments of length
//! `k` on level `L - 1`. Disconnected coarse segments only refine to
//! disconnected ones and strongly connected ones only to strongly connected
//! ones; weakly connected coarse segments split three ways according to the
//! `refine_weak` table of their adjacency axis. The recursion is memoized on
//! `(level, length)`.

use std::collections::{BTreeMap, HashMap};
use std::sync::OnceLock;

pub use num_rational::Ratio;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::dsu::DisjointSets;
use crate::error::{domain, Error, Result};
use crate::mesh::{self, class_from, ConnectivityClass, Geometry, MeshView};
use crate::segment::Segment;

/// Dimensions supported by the recursive enumeration.
pub const MAX_ENUMERATE_DIM: u32 = 4;
/// Keeps `10 * remainder` of every census ratio inside `u128`.
pub const MAX_ENUMERATE_BITS: u32 = 120;

/// Counts of disconnected, strongly connected and weakly connected (per
/// adjacency axis, 0-based) segments.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SegmentCensus {
    pub disconnected: u128,
    pub strong: u128,
    pub weak: Vec<u128>,
}

fn add(a: u128, b: u128) -> u128 {
    a.checked_add(b).expect("census count overflow")
}

fn mul(a: u128, b: u128) -> u128 {
    a.checked_mul(b).expect("census count overflow")
}

impl SegmentCensus {
    pub fn zero(dim: u32) -> Self {
        SegmentCensus {
            disconnected: 0,
            strong: 0,
            weak: vec![0; dim as usize],
        }
    }

    pub fn dim(&self) -> u32 {
        self.weak.len() as u32
    }

    pub fn weak_total(&self) -> u128 {
        self.weak.iter().fold(0, |a, &b| add(a, b))
    }

    pub fn connected(&self) -> u128 {
        add(self.strong, self.weak_total())
    }

    pub fn total(&self) -> u128 {
        add(self.disconnected, self.connected())
    }

    pub fn record(&mut self, class: ConnectivityClass, count: u128) {
        match class {
            ConnectivityClass::Disconnected => self.disconnected = add(self.disconnected, count),
            ConnectivityClass::StronglyConnected => self.strong = add(self.strong, count),
            ConnectivityClass::WeaklyConnected { axis } => {
                self.weak[axis] = add(self.weak[axis], count)
            }
        }
    }

    /// `self += other * factor`.
    pub fn add_scaled(&mut self, other: &SegmentCensus, factor: u128) {
        self.disconnected = add(self.disconnected, mul(other.disconnected, factor));
        self.strong = add(self.strong, mul(other.strong, factor));
        for (w, &o) in self.weak.iter_mut().zip(&other.weak) {
            *w = add(*w, mul(o, factor));
        }
    }

    fn with(dim: u32, entries: &[(ConnectivityClass, u128)]) -> Self {
        let mut c = SegmentCensus::zero(dim);
        for &(class, n) in entries {
            c.record(class, n);
        }
        c
    }
}

/// The lookup tables used by [`Enumerator`] for one dimension.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RefineTables {
    dim: u32,
    /// Index `l` in `1..=2^d`.
    one: Vec<SegmentCensus>,
    /// Index `[axis][r]` with `r` in `2..=2^(d+1)`.
    weak: Vec<Vec<SegmentCensus>>,
}

impl RefineTables {
    pub fn dim(&self) -> u32 {
        self.dim
    }

    /// Census of the length-`l` segments inside one refined quadrant.
    pub fn refine_one(&self, l: u32) -> Result<&SegmentCensus> {
        if l == 0 || l as usize >= self.one.len() {
            return domain(format!(
                "refine_one length {l} outside [1, {}]",
                self.one.len() - 1
            ));
        }
        Ok(&self.one[l as usize])
    }

    /// Census of the refined segments of a coarse segment that is weakly
    /// connected along `axis`, with `r` children in its two end families.
    pub fn refine_weak(&self, axis: usize, r: u32) -> Result<&SegmentCensus> {
        let max = 2u32 << self.dim;
        if axis >= self.dim as usize || !(2..=max).contains(&r) {
            return domain(format!("refine_weak axis {axis}, r {r} out of range"));
        }
        Ok(&self.weak[axis][r as usize])
    }

    /// Brute-force construction: every segment of one refined quadrant, and
    /// every segment made of the last `a` children of a quadrant followed by
    /// the first `r - a` children of its upper neighbor along `axis`.
    pub fn generate(dim: u32) -> Result<Self> {
        if dim == 0 || dim > MAX_ENUMERATE_DIM {
            return domain(format!("refine tables for dimension {dim}"));
        }
        let q = 1u128 << dim;
        let view = MeshView::cube(dim, 1)?;
        let mut one = vec![SegmentCensus::zero(dim)];
        for l in 1..=q {
            let mut c = SegmentCensus::zero(dim);
            for start in 0..=q - l {
                let s = Segment {
                    start,
                    end: start + l - 1,
                };
                c.record(mesh::classify_segment(&view, &s)?, 1);
            }
            one.push(c);
        }
        let mut weak = Vec::new();
        for axis in 0..dim as usize {
            let cells: Vec<Vec<i64>> = (0..2)
                .flat_map(|family| {
                    (0..q).map(move |child| {
                        (0..dim as usize)
                            .map(|i| {
                                let bit = ((child >> i) & 1) as i64;
                                if i == axis {
                                    bit + 2 * family
                                } else {
                                    bit
                                }
                            })
                            .collect()
                    })
                })
                .collect();
            let mut row = vec![SegmentCensus::zero(dim); 2];
            for r in 2..=2 * q {
                let mut c = SegmentCensus::zero(dim);
                for a in r.saturating_sub(q).max(1)..=(r - 1).min(q) {
                    let first = (q - a) as usize;
                    let cells = &cells[first..first + r as usize];
                    c.record(classify_cells(cells), 1);
                }
                row.push(c);
            }
            weak.push(row);
        }
        Ok(RefineTables { dim, one, weak })
    }

    /// The two-dimensional tables as listed for the quadrant curve; the
    /// `refine_weak` rows for axis 0 are generated.
    fn quadrant_tables() -> Self {
        use ConnectivityClass::*;
        let w = |axis| WeaklyConnected { axis };
        let one = vec![
            SegmentCensus::zero(2),
            SegmentCensus::with(2, &[(StronglyConnected, 4)]),
            SegmentCensus::with(2, &[(Disconnected, 1), (w(0), 2)]),
            SegmentCensus::with(2, &[(w(1), 2)]),
            SegmentCensus::with(2, &[(StronglyConnected, 1)]),
        ];
        let mut weak_y = vec![SegmentCensus::zero(2); 2];
        weak_y.push(SegmentCensus::with(2, &[(Disconnected, 1)]));
        weak_y.push(SegmentCensus::with(2, &[(w(1), 2)]));
        weak_y.push(SegmentCensus::with(2, &[(StronglyConnected, 3)]));
        for r in 5..=8 {
            weak_y.push(SegmentCensus::with(2, &[(StronglyConnected, 9 - r)]));
        }
        let generated = Self::generate(2).expect("2D tables");
        RefineTables {
            dim: 2,
            one,
            weak: vec![generated.weak[0].clone(), weak_y],
        }
    }

    /// Tables for `dim`, built once per process.
    pub fn for_dim(dim: u32) -> Result<&'static RefineTables> {
        static CACHE: [OnceLock<RefineTables>; MAX_ENUMERATE_DIM as usize] =
            [const { OnceLock::new() }; MAX_ENUMERATE_DIM as usize];
        if dim == 0 || dim > MAX_ENUMERATE_DIM {
            return Err(Error::Unsupported(format!("census in dimension {dim}")));
        }
        Ok(CACHE[dim as usize - 1].get_or_init(|| match dim {
            2 => Self::quadrant_tables(),
            3 => frozen::octant_tables(),
            _ => Self::generate(dim).expect("dimension checked"),
        }))
    }
}

/// Classifies a run of lattice cells given in curve order.
fn classify_cells(cells: &[Vec<i64>]) -> ConnectivityClass {
    let neighbor_axis = |a: &[i64], b: &[i64]| -> Option<usize> {
        let mut axis = None;
        for i in 0..a.len() {
            match (a[i] - b[i]).abs() {
                0 => {}
                1 if axis.is_none() => axis = Some(i),
                _ => return None,
            }
        }
        axis
    };
    let mut sets = DisjointSets::new(cells.len());
    let mut count = cells.len();
    for i in 0..cells.len() {
        for j in 0..i {
            if neighbor_axis(&cells[i], &cells[j]).is_some() && sets.union(i, j) {
                count -= 1;
            }
        }
    }
    let ends = neighbor_axis(&cells[0], &cells[cells.len() - 1]);
    class_from(count, ends, cells.len() as u128)
}

mod frozen {
    use super::{RefineTables, SegmentCensus};

    // (disconnected, strong, weak x, weak y, weak z), generated by
    // `RefineTables::generate(3)`.
    const ONE: [[u128; 5]; 8] = [
        [0, 8, 0, 0, 0],
        [3, 0, 4, 0, 0],
        [2, 0, 0, 4, 0],
        [3, 2, 0, 0, 0],
        [0, 0, 0, 0, 4],
        [0, 3, 0, 0, 0],
        [0, 2, 0, 0, 0],
        [0, 1, 0, 0, 0],
    ];
    // Rows r = 2..=16 per axis.
    const WEAK: [[[u128; 5]; 15]; 3] = [
        [
            [1, 0, 0, 0, 0],
            [2, 0, 0, 0, 0],
            [3, 0, 0, 0, 0],
            [4, 0, 0, 0, 0],
            [5, 0, 0, 0, 0],
            [6, 0, 0, 0, 0],
            [3, 0, 4, 0, 0],
            [0, 8, 0, 0, 0],
            [0, 7, 0, 0, 0],
            [0, 6, 0, 0, 0],
            [0, 5, 0, 0, 0],
            [0, 4, 0, 0, 0],
            [0, 3, 0, 0, 0],
            [0, 2, 0, 0, 0],
            [0, 1, 0, 0, 0],
        ],
        [
            [1, 0, 0, 0, 0],
            [2, 0, 0, 0, 0],
            [3, 0, 0, 0, 0],
            [4, 0, 0, 0, 0],
            [5, 0, 0, 0, 0],
            [2, 0, 0, 4, 0],
            [1, 6, 0, 0, 0],
            [0, 8, 0, 0, 0],
            [0, 7, 0, 0, 0],
            [0, 6, 0, 0, 0],
            [0, 5, 0, 0, 0],
            [0, 4, 0, 0, 0],
            [0, 3, 0, 0, 0],
            [0, 2, 0, 0, 0],
            [0, 1, 0, 0, 0],
        ],
        [
            [1, 0, 0, 0, 0],
            [2, 0, 0, 0, 0],
            [3, 0, 0, 0, 0],
            [0, 0, 0, 0, 4],
            [0, 5, 0, 0, 0],
            [0, 6, 0, 0, 0],
            [0, 7, 0, 0, 0],
            [0, 8, 0, 0, 0],
            [0, 7, 0, 0, 0],
            [0, 6, 0, 0, 0],
            [0, 5, 0, 0, 0],
            [0, 4, 0, 0, 0],
            [0, 3, 0, 0, 0],
            [0, 2, 0, 0, 0],
            [0, 1, 0, 0, 0],
        ],
    ];

    fn census(row: &[u128; 5]) -> SegmentCensus {
        SegmentCensus {
            disconnected: row[0],
            strong: row[1],
            weak: row[2..].to_vec(),
        }
    }

    pub(super) fn octant_tables() -> RefineTables {
        let mut one = vec![SegmentCensus::zero(3)];
        one.extend(ONE.iter().map(census));
        let weak = WEAK
            .iter()
            .map(|rows| {
                let mut v = vec![SegmentCensus::zero(3); 2];
                v.extend(rows.iter().map(census));
                v
            })
            .collect();
        RefineTables { dim: 3, one, weak }
    }
}

fn check_enumerate_args(dim: u32, level: u32, length: u128) -> Result<u128> {
    if dim == 0 || dim > MAX_ENUMERATE_DIM {
        return Err(Error::Unsupported(format!(
            "enumeration in dimension {dim}"
        )));
    }
    if dim as u64 * level as u64 > MAX_ENUMERATE_BITS as u64 {
        return domain(format!(
            "dim {dim} * level {level} exceeds {MAX_ENUMERATE_BITS} bits"
        ));
    }
    let n = 1u128 << (dim * level);
    if length == 0 || length > n {
        return domain(format!("segment length {length} outside [1, {n}]"));
    }
    Ok(n)
}

/// Memoized recursive census for one dimension. Reusing an enumerator across
/// calls shares the memo table.
#[derive(Debug)]
pub struct Enumerator {
    dim: u32,
    tables: &'static RefineTables,
    memo: HashMap<(u32, u128), SegmentCensus>,
}

impl Enumerator {
    pub fn new(dim: u32) -> Result<Self> {
        Ok(Enumerator {
            dim,
            tables: RefineTables::for_dim(dim)?,
            memo: HashMap::new(),
        })
    }

    pub fn dim(&self) -> u32 {
        self.dim
    }

    /// Census of all length-`length` segments of the level-`level` curve.
    pub fn enumerate(&mut self, level: u32, length: u128) -> Result<SegmentCensus> {
        check_enumerate_args(self.dim, level, length)?;
        Ok(self.run(level, length))
    }

    fn run(&mut self, level: u32, length: u128) -> SegmentCensus {
        let d = self.dim;
        if length == 1 || level == 0 {
            let mut c = SegmentCensus::zero(d);
            c.strong = 1u128 << (d * level);
            return c;
        }
        if let Some(c) = self.memo.get(&(level, length)) {
            return c.clone();
        }
        let q = 1u128 << d;
        let coarse_count = 1u128 << (d * (level - 1));
        let shortest = length.div_ceil(q);
        let longest = length / q + if length % q < 2 { 1 } else { 2 };
        let mut out = SegmentCensus::zero(d);
        for k in shortest..=longest.min(coarse_count) {
            if k == 1 {
                let one = self
                    .tables
                    .refine_one(length as u32)
                    .expect("length <= 2^d");
                out.add_scaled(one, coarse_count);
                continue;
            }
            let r = length - (k - 2) * q;
            debug_assert!((2..=2 * q).contains(&r));
            let splits = (r - 1).min(2 * q - (r - 1));
            let coarse = self.run(level - 1, k);
            out.disconnected = add(out.disconnected, mul(coarse.disconnected, splits));
            out.strong = add(out.strong, mul(coarse.strong, splits));
            for (axis, &n) in coarse.weak.iter().enumerate() {
                let table = self.tables.refine_weak(axis, r as u32).expect("r in range");
                out.add_scaled(table, n);
            }
        }
        self.memo.insert((level, length), out.clone());
        out
    }
}

pub fn refine_one(dim: u32, length: u32) -> Result<SegmentCensus> {
    RefineTables::for_dim(dim)?.refine_one(length).cloned()
}

pub fn refine_weak(dim: u32, axis: usize, r: u32) -> Result<SegmentCensus> {
    RefineTables::for_dim(dim)?.refine_weak(axis, r).cloned()
}

pub fn enumerate(dim: u32, level: u32, length: u128) -> Result<SegmentCensus> {
    Enumerator::new(dim)?.enumerate(level, length)
}

/// Fraction of connected segments among all segments of one length.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub struct Phi(Ratio<u128>);

impl Phi {
    pub fn from_census(census: &SegmentCensus) -> Self {
        Phi(Ratio::new(census.connected(), census.total()))
    }

    pub fn ratio(&self) -> Ratio<u128> {
        self.0
    }

    /// Exact comparison against `num / den`.
    pub fn at_least(&self, num: u128, den: u128) -> bool {
        self.0 >= Ratio::new(num, den)
    }

    pub fn to_decimal(&self, places: u32) -> String {
        decimal(*self.0.numer(), *self.0.denom(), places)
    }

    pub fn to_f64(&self) -> f64 {
        *self.0.numer() as f64 / *self.0.denom() as f64
    }
}

/// `num / den` rounded half up to `places` decimals.
pub fn decimal(num: u128, den: u128, places: u32) -> String {
    assert!(den > 0);
    let mut int = num / den;
    let mut rem = num % den;
    let mut digits = Vec::with_capacity(places as usize);
    for _ in 0..places {
        rem *= 10;
        digits.push((rem / den) as u8);
        rem %= den;
    }
    // Round half up on the next digit.
    if rem * 2 >= den {
        let mut i = digits.len();
        loop {
            if i == 0 {
                int += 1;
                break;
            }
            i -= 1;
            if digits[i] == 9 {
                digits[i] = 0;
            } else {
                digits[i] += 1;
                break;
            }
        }
    }
    let mut s = int.to_string();
    if places > 0 {
        s.push('.');
        s.extend(digits.iter().map(|d| char::from(b'0' + d)));
    }
    s
}

pub fn phi(dim: u32, level: u32, length: u128) -> Result<Phi> {
    Ok(Phi::from_census(&enumerate(dim, level, length)?))
}

/// `count` lengths drawn log-uniformly from `[2, max]` with replacement.
pub fn log_uniform_lengths(count: usize, max: u128, seed: u64) -> Vec<u128> {
    assert!(max >= 2);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let lo = 2f64.ln();
    let hi = (max as f64).ln();
    (0..count)
        .map(|_| {
            let u: f64 = rng.gen();
            let l = (lo + u * (hi - lo)).exp().floor() as u128;
            l.clamp(2, max)
        })
        .collect()
}

/// Census of length-`length` segments by classifying each one directly.
pub fn brute_census(dim: u32, level: u32, length: u128, force: bool) -> Result<SegmentCensus> {
    let view = MeshView::cube(dim, level)?;
    let n = view.len() as u128;
    if length == 0 || length > n {
        return domain(format!("segment length {length} outside [1, {n}]"));
    }
    let steps = (n - length + 1) * length;
    if !force && steps > mesh::SCAN_STEP_LIMIT {
        return Err(Error::SizeGuard {
            steps,
            limit: mesh::SCAN_STEP_LIMIT,
        });
    }
    let mut census = SegmentCensus::zero(dim);
    for start in 0..=n - length {
        let s = Segment {
            start,
            end: start + length - 1,
        };
        census.record(mesh::classify_segment(&view, &s)?, 1);
    }
    Ok(census)
}

/// Axis of adjacent cubical ranks: a face step changes the bits of one axis
/// only.
fn cube_step_axis(dim: u32, a: usize, b: usize) -> usize {
    ((a ^ b).trailing_zeros() % dim) as usize
}

/// Brute-force census of every length at once, indexed by length (entry 0
/// is empty), from one incremental scan over all segments.
pub fn brute_census_all_lengths(view: &MeshView, force: bool) -> Result<Vec<SegmentCensus>> {
    let Geometry::Cube { dim } = view.geometry() else {
        return Err(Error::Unsupported("census of a simplicial curve".into()));
    };
    view.check_scan_size(force)?;
    let n = view.len();
    let init = || vec![SegmentCensus::zero(dim); n + 1];
    Ok(mesh::scan_all(
        view,
        init,
        |acc, s, e, count| {
            let axis = (e != s && view.are_adjacent(s, e)).then(|| cube_step_axis(dim, s, e));
            acc[e - s + 1].record(class_from(count, axis, (e - s + 1) as u128), 1);
        },
        |mut a, b| {
            for (x, y) in a.iter_mut().zip(&b) {
                x.add_scaled(y, 1);
            }
            a
        },
    ))
}

/// Segment counts and summed lengths per component count.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComponentHistogram {
    pub geometry: Geometry,
    pub level: u32,
    pub excludes_singletons: bool,
    /// components -> (segments, sum of their lengths)
    pub bins: BTreeMap<usize, (u128, u128)>,
}

impl ComponentHistogram {
    pub fn total(&self) -> u128 {
        self.bins.values().map(|b| b.0).sum()
    }

    pub fn count(&self, components: usize) -> u128 {
        self.bins.get(&components).map_or(0, |b| b.0)
    }

    pub fn fraction(&self, components: usize) -> Ratio<u128> {
        Ratio::new(self.count(components), self.total())
    }

    pub fn mean_length(&self, components: usize) -> Option<Ratio<u128>> {
        self.bins
            .get(&components)
            .map(|&(c, len)| Ratio::new(len, c))
    }

    pub fn connected_fraction(&self) -> Ratio<u128> {
        self.fraction(1)
    }

    pub fn max_components(&self) -> usize {
        self.bins.keys().next_back().copied().unwrap_or(0)
    }
}

/// Histogram of component counts over all segments of length at least 2,
/// each segment weighted equally.
pub fn scan_distribution(
    geometry: Geometry,
    level: u32,
    force: bool,
) -> Result<ComponentHistogram> {
    let view = MeshView::new(geometry, level)?;
    scan_distribution_of(&view, force)
}

pub fn scan_distribution_of(view: &MeshView, force: bool) -> Result<ComponentHistogram> {
    view.check_scan_size(force)?;
    let bins: Vec<(u64, u64)> = mesh::scan_all(
        view,
        Vec::new,
        |acc: &mut Vec<(u64, u64)>, s, e, count| {
            if e == s {
                return;
            }
            if acc.len() <= count {
                acc.resize(count + 1, (0, 0));
            }
            acc[count].0 += 1;
            acc[count].1 += (e - s + 1) as u64;
        },
        |mut a, b| {
            if a.len() < b.len() {
                a.resize(b.len(), (0, 0));
            }
            for (x, y) in a.iter_mut().zip(b) {
                x.0 += y.0;
                x.1 += y.1;
            }
            a
        },
    );
    Ok(ComponentHistogram {
        geometry: view.geometry(),
        level: view.level(),
        excludes_singletons: true,
        bins: bins
            .into_iter()
            .enumerate()
            .filter(|(_, b)| b.0 > 0)
            .map(|(k, (c, l))| (k, (c as u128, l as u128)))
            .collect(),
    })
}
