//! `k`-uniform hypergraphs and the implicit inclusion graph `G_{l,k}`.
//!
//! `G_{l,k}` is never materialised: its vertices are walked level by level in colex
//! order and adjacency is a subset test on masks.

use std::collections::{HashMap, HashSet};

use crate::dompair::DomPair;
use crate::error::{Error, Result};
use crate::par::{self, Execution};
use crate::sets::{binomial, colex_unrank, sub_masks, BitIter, KSubsets, SetFamily, VertexSet};

const CHUNK: usize = 2048;

/// A `k`-uniform hypergraph on `[n]` with a hashed edge index.
#[derive(Clone, Debug)]
pub struct KGraph {
    edges: SetFamily,
    index: HashSet<u64>,
}

impl PartialEq for KGraph {
    fn eq(&self, other: &Self) -> bool {
        self.edges == other.edges
    }
}

impl Eq for KGraph {}

impl KGraph {
    pub fn new(edges: SetFamily) -> KGraph {
        let index = edges.masks().iter().copied().collect();
        KGraph { edges, index }
    }

    pub fn empty(n: usize, k: usize) -> KGraph {
        KGraph::new(SetFamily::empty(n, k))
    }

    /// All `k`-subsets of `[n]`.
    pub fn complete(n: usize, k: usize) -> KGraph {
        KGraph::new(SetFamily::all(n, k))
    }

    #[inline]
    pub fn ground(&self) -> usize {
        self.edges.ground()
    }

    #[inline]
    pub fn k(&self) -> usize {
        self.edges.cardinality()
    }

    #[inline]
    pub fn edges(&self) -> &SetFamily {
        &self.edges
    }

    #[inline]
    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    #[inline]
    pub fn has_edge_bits(&self, bits: u64) -> bool {
        self.index.contains(&bits)
    }

    /// Whether every `k`-subset of `set` is an edge.
    #[inline]
    fn spans_clique(&self, set: u64) -> bool {
        BitIter(set).all(|b| self.index.contains(&(set & !(1 << b))))
    }
}

/// `(k+1)`-sets all of whose `k`-subsets are edges, colex-sorted.
pub fn cliques(h: &KGraph) -> SetFamily {
    cliques_with(h, Execution::default())
}

pub fn cliques_with(h: &KGraph, exec: Execution) -> SetFamily {
    let n = h.ground();
    let masks = h.edges.masks();
    // Each clique is found once, from the edge that omits its largest element.
    let per_chunk = par::map(exec, &par::chunks(masks.len(), CHUNK), |r| {
        let mut out = Vec::new();
        for &e in &masks[r.clone()] {
            let top = 63 - e.leading_zeros() as usize;
            for v in top + 1..n {
                let c = e | 1 << v;
                if BitIter(e).all(|u| h.index.contains(&(c & !(1 << u)))) {
                    out.push(c);
                }
            }
        }
        out
    });
    let mut all: Vec<u64> = per_chunk.into_iter().flatten().collect();
    all.sort_unstable();
    SetFamily::from_sorted_unchecked(n, h.k() + 1, all)
}

pub fn clique_count(h: &KGraph) -> usize {
    cliques(h).len()
}

/// `e(H) - c(H)`.
pub fn e_minus_c(h: &KGraph) -> i64 {
    h.edge_count() as i64 - clique_count(h) as i64
}

/// Outcome of a well-coveredness check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WellCovered {
    pub well_covered: bool,
    /// Colex-least edge lying in no `(k+1)`-clique.
    pub witness: Option<VertexSet>,
}

pub fn is_well_covered(h: &KGraph) -> WellCovered {
    is_well_covered_with(h, Execution::default())
}

pub fn is_well_covered_with(h: &KGraph, exec: Execution) -> WellCovered {
    let n = h.ground();
    let masks = h.edges.masks();
    let outside_all = crate::sets::full_mask(n);
    let witness = par::min_of(exec, &par::chunks(masks.len(), CHUNK), |r| {
        masks[r.clone()].iter().copied().find(|&e| {
            !BitIter(outside_all & !e).any(|v| h.spans_clique(e | 1 << v))
        })
    });
    WellCovered {
        well_covered: witness.is_none(),
        witness: witness.map(|b| VertexSet::from_bits_unchecked(n, b)),
    }
}

/// The independent dominating set of `G_{k+1,k}` attached to a well-covered `H`:
/// non-edges on level `k`, cliques on level `k+1`.
pub fn dompair_from_wellcovered(h: &KGraph) -> Result<DomPair> {
    let wc = is_well_covered(h);
    if let Some(w) = wc.witness {
        return Err(Error::Precondition(format!("hypergraph not well-covered: edge {w} lies in no clique")));
    }
    if h.k() + 1 > h.ground() {
        return Err(Error::Argument(format!("need k + 1 <= n, got k={} n={}", h.k(), h.ground())));
    }
    DomPair::new(h.edges.complement(), cliques(h))
}

/// The hypergraph of `k`-sets outside an independent dominating set.
///
/// For `l = k + 1` the result is checked to be well-covered; for larger `l` the
/// edges are returned as is.
pub fn wellcovered_from_dompair(d: &DomPair) -> Result<KGraph> {
    if let Some((a, b)) = verify_independent(d).witness {
        return Err(Error::Precondition(format!("not independent: {a} is inside {b}")));
    }
    if let Some(w) = verify_dominating(d).witness {
        return Err(Error::Precondition(format!("not dominating: {w} is undominated")));
    }
    let h = KGraph::new(d.lower().complement());
    if d.l() == d.k() + 1 {
        if let Some(w) = is_well_covered(&h).witness {
            return Err(Error::Internal(format!("edge {w} of H(D) lies in no clique")));
        }
    }
    Ok(h)
}

/// Outcome of a domination check on `G_{l,k}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Domination {
    pub dominating: bool,
    /// Colex-least undominated vertex, lower level before upper level.
    pub witness: Option<VertexSet>,
}

pub fn verify_dominating(d: &DomPair) -> Domination {
    verify_dominating_with(d, Execution::default())
}

fn scan_level<F>(exec: Execution, n: usize, r: usize, bad: F) -> Option<u64>
where
    F: Fn(u64) -> bool + Sync + Send,
{
    let total = binomial(n, r) as usize;
    par::min_of(exec, &par::chunks(total, CHUNK), |range| {
        let start = colex_unrank(range.start as u64, n, r).expect("rank in range").bits();
        KSubsets::starting_at(n, start).take(range.len()).find(|&m| bad(m))
    })
}

pub fn verify_dominating_with(d: &DomPair, exec: Execution) -> Domination {
    let (n, k, l) = (d.ground(), d.k(), d.l());
    let lower: HashSet<u64> = d.lower().masks().iter().copied().collect();
    let upper = d.upper();

    let covered: HashSet<u64> = upper.masks().iter().flat_map(|&b| sub_masks(b, k)).collect();
    let low_bad = scan_level(exec, n, k, |a| !lower.contains(&a) && !covered.contains(&a));
    let witness = low_bad.or_else(|| {
        let lower_masks = d.lower().masks();
        let by_subsets = binomial(l, k) as usize <= lower_masks.len();
        scan_level(exec, n, l, |b| {
            if upper.contains_bits(b) {
                return false;
            }
            let hit = if by_subsets {
                sub_masks(b, k).any(|a| lower.contains(&a))
            } else {
                lower_masks.iter().any(|&a| a & !b == 0)
            };
            !hit
        })
    });
    Domination {
        dominating: witness.is_none(),
        witness: witness.map(|b| VertexSet::from_bits_unchecked(n, b)),
    }
}

/// Outcome of an independence check on `G_{l,k}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Independence {
    pub independent: bool,
    /// Colex-least comparable pair: the lower member and the least upper member containing it.
    pub witness: Option<(VertexSet, VertexSet)>,
}

pub fn verify_independent(d: &DomPair) -> Independence {
    let (n, k) = (d.ground(), d.k());
    let mut least_cover: HashMap<u64, u64> = HashMap::new();
    for &b in d.upper().masks() {
        for a in sub_masks(b, k) {
            least_cover.entry(a).or_insert(b);
        }
    }
    let witness = d.lower().masks().iter().find_map(|a| least_cover.get(a).map(|&b| (*a, b)));
    Independence {
        independent: witness.is_none(),
        witness: witness.map(|(a, b)| (VertexSet::from_bits_unchecked(n, a), VertexSet::from_bits_unchecked(n, b))),
    }
}
