use proptest::prelude::*;

use segconn::census::{self, Phi};
use segconn::cube::{self, Coords, CurveIndex, Split};
use segconn::mesh::{self, MeshView};
use segconn::simplex::{self, TmRank};
use segconn::Segment;

fn cube_index() -> impl Strategy<Value = CurveIndex> {
    (1u32..=6, 0u32..=10).prop_flat_map(|(d, l)| {
        (0..1u128 << (d * l)).prop_map(move |r| CurveIndex::new(d, l, r).unwrap())
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(2000))]

    #[test]
    fn encode_decode_roundtrip(q in cube_index()) {
        let x = cube::decode(&q);
        prop_assert_eq!(cube::encode(&x), q);
        let again = cube::decode(&cube::encode(&Coords::new(q.level(), x.as_slice().to_vec()).unwrap()));
        prop_assert_eq!(again, x);
    }

    #[test]
    fn dominated_cells_come_first(q in cube_index(), frac in proptest::collection::vec(0.0f64..=1.0, 6)) {
        let x = cube::decode(&q);
        let lower: Vec<u64> = x.as_slice().iter().zip(&frac).map(|(&v, f)| (v as f64 * f) as u64).collect();
        let qt = cube::encode(&Coords::new(q.level(), lower).unwrap());
        prop_assert!(qt.rank() <= q.rank());
    }

    #[test]
    fn reversal_is_an_order_reversing_involution(a in cube_index(), r in any::<u128>()) {
        let b = CurveIndex::new(a.dim(), a.level(), r % (1u128 << (a.dim() * a.level()))).unwrap();
        prop_assert_eq!(cube::reverse(&cube::reverse(&a)), a);
        if a.rank() < b.rank() {
            prop_assert!(cube::reverse(&a).rank() > cube::reverse(&b).rank());
        }
    }

    #[test]
    fn face_neighbors_are_mutual(q in cube_index(), axis in 0usize..6, positive: bool) {
        let axis = axis % q.dim() as usize;
        if let Some(n) = cube::face_neighbor(&q, axis, positive) {
            prop_assert_eq!(cube::face_neighbor(&n, axis, !positive), Some(q));
        }
    }

    #[test]
    fn consecutive_ranks_touch_iff_one_bit_flips(q in cube_index()) {
        let n = 1u128 << (q.dim() * q.level());
        // On a line every step is a face step; the rule is about d >= 2.
        prop_assume!(q.dim() >= 2 && q.rank() + 1 < n);
        let next = CurveIndex::new(q.dim(), q.level(), q.rank() + 1).unwrap();
        let touching = (0..q.dim() as usize)
            .any(|axis| cube::face_neighbor(&q, axis, true) == Some(next));
        prop_assert_eq!(touching, (q.rank() ^ next.rank()).count_ones() == 1);
    }

    #[test]
    fn split_halves_cover_the_segment(d in 1u32..=4, l in 1u32..=6, a: u64, b: u64) {
        let n = 1u128 << (d * l);
        let (a, b) = ((a as u128) % n, (b as u128) % n);
        let seg = Segment::new(a.min(b), a.max(b)).unwrap();
        match cube::split_segment(&seg) {
            Split::Whole(s) => prop_assert_eq!(s, seg),
            Split::Halves(x, y) => {
                prop_assert_eq!((x.start, y.end), (seg.start, seg.end));
                prop_assert_eq!(x.end + 1, y.start);
                prop_assert_eq!(mesh::cube_components_by_blocks(d, l, &x).unwrap(), 1);
                prop_assert_eq!(mesh::cube_components_by_blocks(d, l, &y).unwrap(), 1);
            }
        }
    }

    #[test]
    fn simplex_rank_roundtrip(d in 2u32..=3, l in 0u32..=8, r: u64) {
        let r = r as u128 % simplex::element_count(d, l).unwrap();
        let s = simplex::simplex_at(&TmRank::new(d, l, r).unwrap());
        prop_assert_eq!(simplex::tm_rank(&s).unwrap().rank, r);
    }

    #[test]
    fn census_is_conserved_and_above_the_bound(d in 2u32..=3, l in 0u32..=40, len: u128) {
        let n = 1u128 << (d * l);
        let len = len % n + 1;
        let c = census::enumerate(d, l, len).unwrap();
        prop_assert_eq!(c.total(), n - (len - 1));
        prop_assert!(Phi::from_census(&c).at_least(1, (1 << d) - 1));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn reversal_keeps_component_counts(d in 2u32..=3, a: u16, b: u16) {
        let l = if d == 2 { 4 } else { 3 };
        let view = MeshView::cube(d, l).unwrap();
        let n = view.len() as u128;
        let (a, b) = (a as u128 % n, b as u128 % n);
        let seg = Segment::new(a.min(b), a.max(b)).unwrap();
        let rev = Segment::new(n - 1 - seg.end, n - 1 - seg.start).unwrap();
        prop_assert_eq!(
            mesh::count_components(&view, &seg).unwrap().count,
            mesh::count_components(&view, &rev).unwrap().count
        );
    }
}
