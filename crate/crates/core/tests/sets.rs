use std::collections::BTreeSet;

use gdom::sets::{binomial, colex_rank, colex_unrank, enumerate_ksubsets, shadow, SetFamily};
use proptest::prelude::*;

fn family(n: usize, k: usize) -> impl Strategy<Value = SetFamily> {
    prop::collection::vec(prop::sample::subsequence((1..=n).collect::<Vec<_>>(), k), 0..24).prop_map(move |sets| {
        let masks = sets.iter().map(|s| s.iter().fold(0u64, |m, &e| m | 1 << (e - 1)));
        SetFamily::from_masks(n, k, masks).unwrap()
    })
}

fn sets_of(f: &SetFamily) -> BTreeSet<u64> {
    f.masks().iter().copied().collect()
}

proptest! {
    #[test]
    fn shadow_is_monotone(f in family(9, 3), g in family(9, 3)) {
        let union = f.union(&g).unwrap();
        let sf = sets_of(&shadow(&f).unwrap());
        let su = sets_of(&shadow(&union).unwrap());
        prop_assert!(sf.is_subset(&su));
    }

    #[test]
    fn shadow_size_bound_and_equality((k, f) in (2usize..5).prop_flat_map(|k| (Just(k), family(10, k)))) {
        let sh = shadow(&f).unwrap();
        prop_assert!(sh.len() <= k * f.len());
        let packing = f.masks().iter().enumerate().all(|(i, &a)| {
            f.masks()[i + 1..].iter().all(|&b| ((a & b).count_ones() as usize) + 2 <= k)
        });
        prop_assert_eq!(sh.len() == k * f.len(), packing);
    }

    #[test]
    fn rank_unrank_round_trip(n in 1usize..=64, k in 0usize..=6, x in any::<u64>()) {
        prop_assume!(k <= n);
        let total = binomial(n, k);
        let r = x % total;
        let s = colex_unrank(r, n, k).unwrap();
        prop_assert_eq!(s.len(), k);
        prop_assert_eq!(colex_rank(&s), r);
    }

    #[test]
    fn family_text_round_trip(f in family(12, 4)) {
        let back = SetFamily::parse(&f.to_text()).unwrap();
        prop_assert_eq!(back, f);
    }
}

#[test]
fn enumeration_rank_unrank_consistent_exhaustively() {
    for n in 1..=20 {
        for k in 0..=5.min(n) {
            let mut count = 0u64;
            let mut prev: Option<u64> = None;
            for (i, s) in enumerate_ksubsets(n, k).enumerate() {
                assert_eq!(colex_rank(&s), i as u64);
                assert_eq!(colex_unrank(i as u64, n, k).unwrap(), s);
                if let Some(p) = prev {
                    assert!(p < s.bits());
                }
                prev = Some(s.bits());
                count += 1;
            }
            assert_eq!(count, binomial(n, k), "n={n} k={k}");
        }
    }
}

#[test]
fn binomial_values() {
    assert_eq!(binomial(5, 2), 10);
    assert_eq!(binomial(30, 3), 4060);
    assert_eq!(binomial(11, 3), enumerate_ksubsets(11, 3).count() as u64);
    assert_eq!(binomial(9, 4), 126);
    assert_eq!(binomial(64, 32), 1_832_624_140_942_590_534);
    assert_eq!(binomial(4, 7), 0);
}
