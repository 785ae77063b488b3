use std::sync::OnceLock;

use kshape_core::bijection::{phi, varphi_trace};
use kshape_core::pistol::{self, point_stats, Pistol};
use kshape_core::poly::{dumont_foata, gamma, MultiPoly, Var, NVARS};
use kshape_core::shape::{
    canonical_partition, hook_length, is_k_shape, k_boundary, Cell, Partition,
};
use proptest::prelude::*;

fn all_pistols(height: usize) -> &'static [Pistol] {
    static CACHE: [OnceLock<Vec<Pistol>>; 7] = [const { OnceLock::new() }; 7];
    CACHE[height].get_or_init(|| pistol::enumerate(height).collect())
}

fn any_pistol(max_height: usize) -> impl Strategy<Value = Pistol> {
    (1..=max_height)
        .prop_flat_map(|h| (Just(h), 0..all_pistols(h).len()))
        .prop_map(|(h, i)| all_pistols(h)[i].clone())
}

fn any_partition() -> impl Strategy<Value = Partition> {
    prop::collection::vec(1usize..9, 0..9).prop_map(|mut parts| {
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition::new(parts).unwrap()
    })
}

/// Hook length straight from the definition: cells to the right in the row
/// plus cells above in the column, plus the cell itself.
fn naive_hook(p: &Partition, cell: Cell) -> usize {
    let right = p.parts()[cell.row] - cell.col - 1;
    let above = (cell.row + 1..p.len())
        .filter(|&r| p.parts()[r] > cell.col)
        .count();
    right + above + 1
}

proptest! {
    #[test]
    fn stats_compose(f in any_pistol(6)) {
        let s = point_stats(&f);
        prop_assert_eq!(s.fix, s.fl + s.fnl);
        prop_assert_eq!(s.sur, s.sl + s.snl);
        prop_assert_eq!(s.max, s.mo + s.me);
        prop_assert_eq!(s.fix, s.fix_vector.iter().map(|&b| b as usize).sum::<usize>());
    }

    #[test]
    fn pistol_json_round_trip(f in any_pistol(6)) {
        let text = serde_json::to_string(&f).unwrap();
        let back: Pistol = serde_json::from_str(&text).unwrap();
        prop_assert_eq!(back, f);
    }

    #[test]
    fn round_trip(f in any_pistol(6)) {
        let k = f.height() + 1;
        let trace = varphi_trace(&f).unwrap();
        prop_assert_eq!(phi(&trace.shape, k).unwrap(), f);
    }

    #[test]
    fn saturation_is_never_lost(f in any_pistol(6)) {
        let k = f.height() + 1;
        prop_assume!(k >= 3);
        let trace = varphi_trace(&f).unwrap();
        for j in 1..2 * k - 4 {
            let before = trace.sequence.term(j + 1);
            let after = trace.sequence.term(j);
            for c in 0..before.columns().len() {
                if before.is_column_saturated(c) {
                    prop_assert!(after.is_column_saturated(c), "column {} at step {}", c, j);
                }
            }
            // step 2i is the one that adds the columns of height i + 1
            for i in (1..=k - 2).filter(|&i| 2 * i != j) {
                prop_assert!(!before.is_saturated_in(i) || after.is_saturated_in(i));
            }
        }
    }

    #[test]
    fn hooks_match_definition(p in any_partition()) {
        for cell in p.cells() {
            prop_assert_eq!(hook_length(&p, cell).unwrap(), naive_hook(&p, cell));
        }
    }

    #[test]
    fn boundary_is_small_hooks(p in any_partition(), k in 1usize..8) {
        let b = k_boundary(&p, k);
        for cell in p.cells() {
            prop_assert_eq!(b.contains(cell), naive_hook(&p, cell) <= k);
        }
    }

    #[test]
    fn k_shapes_are_rebuilt_from_boundary(p in any_partition(), k in 1usize..8) {
        prop_assume!(is_k_shape(&p, k));
        prop_assert_eq!(canonical_partition(&k_boundary(&p, k)).unwrap(), p);
    }

    #[test]
    fn partition_json_round_trip(p in any_partition()) {
        let text = serde_json::to_string(&p).unwrap();
        let back: Partition = serde_json::from_str(&text).unwrap();
        prop_assert_eq!(back, p);
    }

    #[test]
    fn shift_is_substitution(a in -4i64..5, b in -4i64..5, c in -4i64..5) {
        let f = dumont_foata(4).unwrap();
        let shifted = f.shift(Var::X);
        let mut at = [0i64; NVARS];
        at[..3].copy_from_slice(&[a, b, c]);
        let mut plus = at;
        plus[0] += 1;
        prop_assert_eq!(shifted.eval(&at), f.eval(&plus));
    }

    #[test]
    fn product_is_pointwise(a in -4i64..5, b in -4i64..5) {
        let p = gamma(3).unwrap();
        let q = dumont_foata(3).unwrap();
        let at = [a, b, a + b, b - a, 1, -1];
        prop_assert_eq!((&p * &q).eval(&at), p.eval(&at) * q.eval(&at));
        prop_assert_eq!(&p - &p, MultiPoly::zero());
    }
}
