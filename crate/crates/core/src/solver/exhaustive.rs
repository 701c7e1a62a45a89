//! Exhaustive and sampled small cases for `G_{3,2}` and the graph objective.

use std::collections::HashSet;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{optimal_classes, Mode, SolveOptions};
use crate::bounds::gamma32;
use crate::constructions::extremal_graphs;
use crate::dompair::DomPair;
use crate::error::{Error, Result};
use crate::graph::{certificate, f_times_2, graph_from_dompair, isomorphic, Graph};
use crate::par::{self, Execution};
use crate::sets::{binomial, colex_unrank, BitIter, KSubsets};

const CHUNK: u64 = 1 << 18;

/// Every dominating set of `G_{3,2}` on `[n]` of size `γ`, in colex order of the
/// joint vertex mask (pairs first).
pub fn enumerate_optimal_32(n: usize) -> Result<Vec<DomPair>> {
    enumerate_optimal_32_with(n, Execution::default())
}

pub fn enumerate_optimal_32_with(n: usize, exec: Execution) -> Result<Vec<DomPair>> {
    if !(3..=6).contains(&n) {
        return Err(Error::Argument(format!(
            "exhaustive enumeration covers 3 <= n <= 6, got {n}; use sample_optimal_32 for larger n"
        )));
    }
    let pairs: Vec<u64> = KSubsets::new(n, 2).collect();
    let triples: Vec<u64> = KSubsets::new(n, 3).collect();
    let verts: Vec<u64> = pairs.iter().chain(&triples).copied().collect();
    let total = verts.len();
    let closed: Vec<u64> = verts
        .iter()
        .map(|&a| {
            let mut m = 0u64;
            for (j, &b) in verts.iter().enumerate() {
                let (small, big) = if a.count_ones() <= b.count_ones() { (a, b) } else { (b, a) };
                if a == b || small.count_ones() < big.count_ones() && small & big == small {
                    m |= 1 << j;
                }
            }
            m
        })
        .collect();
    let size = gamma32(n as u64) as usize;
    let full = (1u64 << total) - 1;
    let count = binomial(total, size);
    let ranges: Vec<(u64, u64)> = (0..count).step_by(CHUNK as usize).map(|s| (s, (s + CHUNK).min(count))).collect();
    let hits = par::map(exec, &ranges, |&(lo, hi)| {
        let first = colex_unrank(lo, total, size).expect("rank in range").bits();
        KSubsets::starting_at(total, first)
            .take((hi - lo) as usize)
            .filter(|&s| BitIter(s).fold(0, |acc, i| acc | closed[i]) == full)
            .collect::<Vec<u64>>()
    });
    let np = pairs.len();
    Ok(hits
        .into_iter()
        .flatten()
        .map(|s| {
            let lower = BitIter(s).filter(|&i| i < np).map(|i| pairs[i]).collect();
            let upper = BitIter(s).filter(|&i| i >= np).map(|i| triples[i - np]).collect();
            DomPair::from_masks(n, 3, 2, lower, upper)
        })
        .collect())
}

/// Name of the extremal graph `h` is isomorphic to, if any.
pub fn classify_extremal(h: &Graph) -> Option<String> {
    extremal_graphs(h.order()).into_iter().find(|(_, g)| isomorphic(g, h)).map(|(name, _)| name)
}

/// Up to `count` distinct minimum dominating sets of `G_{3,2}` on `[n]`: each is a
/// random relabeling of an optimum from a uniformly chosen class.
///
/// Fails if some `H(D)` is not one of the extremal graphs for `n`.
pub fn sample_optimal_32(n: usize, count: usize, seed: u64) -> Result<Vec<DomPair>> {
    if !(5..=9).contains(&n) {
        return Err(Error::Argument(format!("sampling covers 5 <= n <= 9, got {n}")));
    }
    let classes = optimal_classes(n, 3, 2, Mode::Gamma, &SolveOptions::default())?;
    for d in &classes {
        let h = graph_from_dompair(d)?;
        if classify_extremal(&h).is_none() {
            return Err(Error::Internal(format!("optimum with non-extremal H(D): edges {:?}", h.edges())));
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    let mut perm: Vec<usize> = (0..n).collect();
    for _ in 0..count.saturating_mul(20) {
        if out.len() == count {
            break;
        }
        let d = &classes[rng.gen_range(0..classes.len())];
        perm.shuffle(&mut rng);
        let p = d.permuted(&perm);
        if seen.insert(p.clone()) {
            out.push(p);
        }
    }
    Ok(out)
}

/// Result of scanning every labeled graph on `[n]`.
#[derive(Clone, Debug)]
pub struct ExhaustiveF {
    pub max_f_times_2: i64,
    /// Pairwise non-isomorphic maximizers, in order of first appearance.
    pub maximizers: Vec<Graph>,
    pub labeled_maximizers: u64,
}

/// Maximum of `2(|E| - |T|) - |E0|` over all graphs on `[n]`, checking the
/// equality clause on every maximizer.
pub fn exhaustive_graphs_f(n: usize) -> Result<ExhaustiveF> {
    exhaustive_graphs_f_with(n, Execution::default())
}

pub fn exhaustive_graphs_f_with(n: usize, exec: Execution) -> Result<ExhaustiveF> {
    if !(1..=7).contains(&n) {
        return Err(Error::Argument(format!("exhaustive graph scan covers 1 <= n <= 7, got {n}")));
    }
    let pairs: Vec<(usize, usize)> =
        KSubsets::new(n, 2).map(|m| (m.trailing_zeros() as usize, 63 - m.leading_zeros() as usize)).collect();
    let total = 1u64 << pairs.len();
    let ranges: Vec<(u64, u64)> = (0..total).step_by(CHUNK as usize).map(|s| (s, (s + CHUNK).min(total))).collect();
    let per_chunk = par::map(exec, &ranges, |&(lo, hi)| {
        let mut best = i64::MIN;
        let mut codes = Vec::new();
        for code in lo..hi {
            let f = f_times_2(&Graph::from_pair_code(n, code, &pairs));
            if f > best {
                best = f;
                codes.clear();
            }
            if f == best {
                codes.push(code);
            }
        }
        (best, codes)
    });
    let max = per_chunk.iter().map(|c| c.0).max().expect("at least one graph");
    let mut reps: Vec<Graph> = Vec::new();
    let mut labeled = 0;
    for (best, codes) in per_chunk {
        if best != max {
            continue;
        }
        for code in codes {
            labeled += 1;
            let g = Graph::from_pair_code(n, code, &pairs);
            if !certificate(&g).equality_clause_holds() {
                return Err(Error::Internal(format!("maximizer violates the equality clause: {:?}", g.edges())));
            }
            if !reps.iter().any(|r| isomorphic(r, &g)) {
                reps.push(g);
            }
        }
    }
    Ok(ExhaustiveF { max_f_times_2: max, maximizers: reps, labeled_maximizers: labeled })
}
