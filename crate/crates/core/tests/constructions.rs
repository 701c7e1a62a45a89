use std::collections::HashMap;

use gdom::bounds::alpha_star;
use gdom::constructions::{
    base_wellcovered, example1, example2, greedy_packing, is_packing, layered_wellcovered, steiner_triple_system,
    LayeredPlan, Packer,
};
use gdom::hypergraph::{
    clique_count, dompair_from_wellcovered, e_minus_c, is_well_covered, verify_dominating, verify_independent,
};
use gdom::sets::{binomial, sub_masks};
use gdom::Error;

#[test]
fn steiner_triple_systems() {
    for v in [7, 9, 13, 15, 19, 21, 25, 27] {
        let sts = steiner_triple_system(v).unwrap();
        assert_eq!(sts.len() as u64, (v * (v - 1) / 6) as u64, "v={v}");
        let mut seen: HashMap<u64, usize> = HashMap::new();
        for &t in sts.masks() {
            for p in sub_masks(t, 2) {
                *seen.entry(p).or_default() += 1;
            }
        }
        assert_eq!(seen.len() as u64, binomial(v, 2), "v={v}");
        assert!(seen.values().all(|&c| c == 1), "v={v}");
    }
    for v in [6, 8, 10, 11, 12, 14] {
        assert!(matches!(steiner_triple_system(v), Err(Error::Domain(_))), "v={v}");
    }
}

#[test]
fn greedy_packings_are_packings() {
    for m in 3..=14 {
        for k in 2..=5.min(m) {
            let p = greedy_packing(m, k).unwrap();
            assert!(is_packing(&p), "m={m} k={k}");
            let pairwise = p.masks().iter().enumerate().all(|(i, &a)| {
                p.masks()[i + 1..].iter().all(|&b| ((a & b).count_ones() as usize) + 2 <= k)
            });
            assert!(pairwise);
            assert!(!p.is_empty());
        }
    }
}

#[test]
fn base_construction_counts() {
    // edges: S plus X + b for X in the shadow of S; cliques: X + b for X in S
    for (a, b, k) in [(7, 4, 3), (9, 5, 3), (8, 3, 4), (10, 6, 3), (11, 2, 5)] {
        let packing = greedy_packing(a, k).unwrap();
        let s = packing.len();
        let h = base_wellcovered(a, b, k, &packing).unwrap();
        assert!(is_well_covered(&h).well_covered);
        assert_eq!(h.edge_count(), s + k * s * b, "a={a} b={b} k={k}");
        assert_eq!(clique_count(&h), s * b, "a={a} b={b} k={k}");
        assert_eq!(e_minus_c(&h), (s + (k - 1) * s * b) as i64);
        assert!(h.edges().masks().iter().all(|&e| (e >> a).count_ones() <= 1));
    }
}

#[test]
fn layered_pipeline() {
    for (k, n) in [(3, 30), (4, 25), (5, 20)] {
        let a = alpha_star(k as u32).unwrap();
        let plan = LayeredPlan::new(n, k, a).unwrap();
        assert_eq!(plan.sizes.iter().sum::<usize>(), n);
        let out = layered_wellcovered(&plan, Packer::Auto).unwrap();
        let h = &out.hypergraph;
        assert!(is_well_covered(h).well_covered, "k={k} n={n}");
        let d = dompair_from_wellcovered(h).unwrap();
        assert!(verify_dominating(&d).dominating);
        assert!(verify_independent(&d).independent);
        let (e, c) = (h.edge_count() as i64, clique_count(h) as i64);
        assert_eq!(d.size() as i64, binomial(n, k) as i64 - e + c, "k={k} n={n}");
        assert_eq!(out.layers.iter().map(|l| l.edges as i64 - l.cliques as i64).sum::<i64>(), e - c);
    }
}

#[test]
fn worked_examples() {
    let d = example1();
    assert_eq!((d.size(), d.upper().len(), d.lower().len()), (102, 28, 74));
    assert!(verify_dominating(&d).dominating);
    assert!(verify_independent(&d).independent);

    let d = example2();
    assert_eq!(d.size(), 2686);
    assert!(verify_dominating(&d).dominating);
    assert!(verify_independent(&d).independent);
}
