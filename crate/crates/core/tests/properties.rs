mod common;

use num_bigint::BigInt;
use proptest::prelude::*;

use comb_tilings::identities::verify_corollary3;
use comb_tilings::permanents::restricted_perm_table;
use comb_tilings::{
    census, count_restricted_perms, decompose_metatiles, enumerate_tilings, mirror, slot_swap,
    theorem1_sequence, tiling_counts, OffsetSet, RecurrenceSpec, TileShape,
};
use common::{brute_perms, brute_tilings};

fn tile(p: usize) -> impl Strategy<Value = TileShape> {
    (
        1..=2usize,
        0..=3usize,
        1..=3usize,
        1..=2u32,
        proptest::option::of(0..p),
    )
        .prop_map(move |(len, gap, teeth, colors, residue)| {
            let mut t = TileShape::comb(p, len, gap, teeth)
                .unwrap()
                .with_colors(colors)
                .unwrap();
            if let Some(r) = residue {
                t = t.with_alignment([r]).unwrap();
            }
            t
        })
}

fn tile_set() -> impl Strategy<Value = (Vec<TileShape>, usize)> {
    (1..=3usize).prop_flat_map(|p| (proptest::collection::vec(tile(p), 1..=3), Just(p)))
}

fn offset_set(lo: i64, hi: i64) -> impl Strategy<Value = OffsetSet> {
    proptest::collection::btree_set(lo..=hi, 1..=4).prop_map(|s| OffsetSet::new(s).unwrap())
}

/// Half-squares plus combs of a few sizes, all on a two-slot board.
fn comb_family() -> impl Strategy<Value = Vec<TileShape>> {
    proptest::collection::btree_set(2..=5usize, 1..=2).prop_map(|sizes| {
        let mut tiles = vec![TileShape::half_comb(1).unwrap().with_label("h")];
        tiles.extend(
            sizes
                .into_iter()
                .map(|m| TileShape::half_comb(m).unwrap().with_label(format!("C{m}"))),
        );
        tiles
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn counting_matches_enumeration((tiles, p) in tile_set(), n in 0..=4usize) {
        let counts = tiling_counts(n, &tiles, p).unwrap();
        let listed = enumerate_tilings(n, &tiles, p, usize::MAX).unwrap();
        prop_assert_eq!(&counts[n], &BigInt::from(listed.len()));
        prop_assert_eq!(&counts[n], &BigInt::from(brute_tilings(n, &tiles, p)));
        prop_assert!(listed.iter().all(|b| b.is_complete()));
    }

    #[test]
    fn census_rebuilds_counts((tiles, p) in tile_set(), l_max in 1..=7usize) {
        let c = census(&tiles, p, l_max).unwrap();
        prop_assert_eq!(c.convolve(l_max), tiling_counts(l_max, &tiles, p).unwrap());
    }

    #[test]
    fn cuts_split_into_metatiles(tiles in comb_family(), n in 1..=6usize) {
        for b in enumerate_tilings(n, &tiles, 2, 5_000).unwrap() {
            let cuts = decompose_metatiles(&b);
            prop_assert_eq!(cuts.last().copied(), Some(n));
            for c in 1..=n {
                let straddled = b.placements().iter().any(|pl| {
                    let span = b.tile_of(pl).span();
                    pl.start < 2 * c && pl.start + span > 2 * c
                });
                prop_assert_eq!(cuts.contains(&c), !straddled, "cell boundary {}", c);
            }
        }
    }

    #[test]
    fn slot_swap_is_an_involution(tiles in comb_family(), n in 0..=6usize) {
        for b in enumerate_tilings(n, &tiles, 2, 5_000).unwrap() {
            let once = slot_swap(&b).unwrap();
            prop_assert!(once.is_complete());
            prop_assert_eq!(once.labels(), b.labels());
            prop_assert_eq!(decompose_metatiles(&once), decompose_metatiles(&b));
            prop_assert_eq!(slot_swap(&once).unwrap(), b);
        }
    }

    #[test]
    fn mirror_keeps_the_count(w in offset_set(-4, 4), n in 0..=9usize) {
        prop_assert_eq!(count_restricted_perms(n, &w), count_restricted_perms(n, &mirror(&w)));
    }

    #[test]
    fn sweep_matches_bounded_count(w in offset_set(-5, 5)) {
        let table = restricted_perm_table(&w, 10);
        for n in 0..=10 {
            prop_assert_eq!(table.term(n), count_restricted_perms(n as usize, &w));
        }
        let elems: Vec<i64> = w.iter().collect();
        for n in 0..=6 {
            prop_assert_eq!(table.term(n), BigInt::from(brute_perms(n as usize, &elems)));
        }
    }

    #[test]
    fn recurrence_matches_count(rest in proptest::collection::btree_set(0..=5i64, 1..=3)) {
        prop_assume!(rest.iter().any(|&d| d > 0));
        let w = OffsetSet::new(std::iter::once(-1).chain(rest)).unwrap();
        let rec = theorem1_sequence(&w, 15).unwrap();
        for n in 0..=15 {
            prop_assert_eq!(rec.term(n), count_restricted_perms(n as usize, &w));
        }
    }

    #[test]
    fn slot_combs_give_powers(
        terms in proptest::collection::btree_map(1..=4usize, 1..=3u64, 1..=3),
        p in 2..=3usize,
    ) {
        let spec = RecurrenceSpec::new(terms).unwrap();
        let report = verify_corollary3(&spec, p, 6).unwrap();
        prop_assert!(report.is_verified(), "{}", report.status_text());
    }
}
