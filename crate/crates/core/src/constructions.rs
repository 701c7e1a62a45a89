//! Builders for the explicit graphs, designs, hypergraphs and dominating sets.
//!
//! Every builder uses a fixed labeling, so serialized outputs are byte-stable.

use std::collections::HashSet;
use std::ops::RangeInclusive;

use crate::dompair::DomPair;
use crate::error::{Error, Result};
use crate::graph::{triangles, Graph};
use crate::hypergraph::{clique_count, dompair_from_wellcovered, KGraph};
use crate::sets::{binomial, full_mask, sub_masks, BitIter, KSubsets, SetFamily, MAX_N};

/// `K⁺_{s,n-s}`: a maximum matching `{2i-1,2i}` inside `[s]`, every pair between
/// `[s]` and `[s+1,n]`, and `[s+1,n]` independent.
pub fn k_plus(s: usize, n: usize) -> Result<Graph> {
    if !(1 < s && s < n && n <= MAX_N) {
        return Err(Error::Argument(format!("K+ needs 1 < s < n <= {MAX_N}, got s={s} n={n}")));
    }
    let mut g = Graph::empty(n);
    for i in 0..s / 2 {
        g.add_edge0(2 * i, 2 * i + 1);
    }
    for u in 0..s {
        for v in s..n {
            g.add_edge0(u, v);
        }
    }
    Ok(g)
}

/// Twice the objective of `K⁺_{s,n-s}` in closed form.
pub fn k_plus_f_times_2(s: usize, n: usize) -> i64 {
    let (s, n) = (s as i64, n as i64);
    if s % 2 == 0 {
        s * (n - s + 1)
    } else {
        (s - 1) + s * (n - s)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SmallGraph {
    H5a,
    H5b,
    H9,
}

impl SmallGraph {
    pub fn name(self) -> &'static str {
        match self {
            SmallGraph::H5a => "H5a",
            SmallGraph::H5b => "H5b",
            SmallGraph::H9 => "H9",
        }
    }
}

pub fn small_graph(which: SmallGraph) -> Graph {
    let (n, edges): (usize, &[(usize, usize)]) = match which {
        SmallGraph::H5a => (5, &[(1, 2), (1, 4), (2, 3), (2, 4), (2, 5), (3, 5), (4, 5)]),
        SmallGraph::H5b => (5, &[(1, 2), (2, 3), (3, 4), (1, 4), (1, 5), (2, 5), (3, 5), (4, 5)]),
        SmallGraph::H9 => (
            9,
            &[
                (1, 2), (2, 3), (3, 4), (4, 6), (3, 6), (3, 7), (2, 7), (2, 5), (1, 5),
                (1, 9), (8, 9), (7, 8), (7, 9), (6, 9), (1, 6), (4, 5), (5, 8), (4, 8),
            ],
        ),
    };
    Graph::from_edges(n, edges).expect("fixed edge list")
}

/// The `s` values for which `K⁺_{s,n-s}` is an extremal graph on `[n]`.
pub fn extremal_k_plus_sizes(n: usize) -> Vec<usize> {
    let v = match n % 4 {
        0 => vec![n / 2],
        1 => vec![(n - 1) / 2, (n + 1) / 2, (n + 3) / 2],
        2 => vec![(n + 2) / 2],
        _ => vec![(n + 1) / 2],
    };
    v.into_iter().filter(|&s| 1 < s && s < n).collect()
}

/// Every extremal graph on `[n]` up to isomorphism, with a display name.
pub fn extremal_graphs(n: usize) -> Vec<(String, Graph)> {
    let mut out: Vec<(String, Graph)> = extremal_k_plus_sizes(n)
        .into_iter()
        .map(|s| (format!("K+_{{{},{}}}", s, n - s), k_plus(s, n).expect("s in range")))
        .collect();
    match n {
        5 => {
            out.push(("H5a".into(), small_graph(SmallGraph::H5a)));
            out.push(("H5b".into(), small_graph(SmallGraph::H5b)));
        }
        9 => out.push(("H9".into(), small_graph(SmallGraph::H9))),
        _ => {}
    }
    out
}

/// Minimum dominating set of `G_{3,2}` for `n ≡ 1 (mod 4)` built on `K⁺_{(n+1)/2,(n-1)/2}`.
///
/// `D_2` is the non-edges, `D_3` the triangles plus `{c, x_i, y_i}` where `c = (n+1)/2`
/// is the unmatched vertex and `x_i = c + i`, `y_i = n + 1 - i` pair up the leaves of
/// the star of uncovered edges. The result dominates but is not independent.
pub fn star_completed_dompair(n: usize) -> Result<DomPair> {
    if n % 4 != 1 || !(9..=MAX_N).contains(&n) {
        return Err(Error::Argument(format!("need n ≡ 1 (mod 4) and 9 <= n <= {MAX_N}, got {n}")));
    }
    let c = (n + 1) / 2;
    let h = k_plus(c, n)?;
    let mut upper: Vec<u64> = triangles(&h).masks().to_vec();
    for i in 1..=(n - 1) / 4 {
        let (x, y) = (c + i, n + 1 - i);
        upper.push(1 << (c - 1) | 1 << (x - 1) | 1 << (y - 1));
    }
    let lower = h.edge_family().complement();
    DomPair::new(lower, SetFamily::from_masks(n, 3, upper)?)
}

/// Steiner triple system on `[v]`: Bose for `v ≡ 3 (mod 6)`, Skolem for `v ≡ 1 (mod 6)`.
pub fn steiner_triple_system(v: usize) -> Result<SetFamily> {
    if v < 7 || v > MAX_N || !matches!(v % 6, 1 | 3) {
        return Err(Error::Domain(format!("no Steiner triple system construction for v={v}; need v ≡ 1, 3 (mod 6), 7 <= v <= {MAX_N}")));
    }
    let triples = if v % 6 == 3 { bose(v) } else { skolem(v) };
    let sts = SetFamily::from_masks(v, 3, triples)?;
    check_pair_coverage(&sts)?;
    Ok(sts)
}

// Point (x, i) of Z_m x Z_3 is element 1 + x + i*m.
fn point(m: usize, x: usize, i: usize) -> u64 {
    1 << (x + (i % 3) * m)
}

fn bose(v: usize) -> Vec<u64> {
    let m = v / 3;
    let half = (m + 1) / 2;
    let op = |x: usize, y: usize| (x + y) * half % m;
    let mut out = Vec::with_capacity(v * (v - 1) / 6);
    for x in 0..m {
        out.push(point(m, x, 0) | point(m, x, 1) | point(m, x, 2));
    }
    for i in 0..3 {
        for x in 0..m {
            for y in x + 1..m {
                out.push(point(m, x, i) | point(m, y, i) | point(m, op(x, y), i + 1));
            }
        }
    }
    out
}

fn skolem(v: usize) -> Vec<u64> {
    let m2 = (v - 1) / 3;
    let m = m2 / 2;
    let inf = 1u64 << (v - 1);
    let op = |x: usize, y: usize| {
        let s = (x + y) % m2;
        if s % 2 == 0 {
            s / 2
        } else {
            (s - 1) / 2 + m
        }
    };
    let mut out = Vec::with_capacity(v * (v - 1) / 6);
    for x in 0..m {
        out.push(point(m2, x, 0) | point(m2, x, 1) | point(m2, x, 2));
    }
    for i in 0..3 {
        for x in 0..m {
            out.push(inf | point(m2, m + x, i) | point(m2, x, i + 1));
        }
        for x in 0..m2 {
            for y in x + 1..m2 {
                out.push(point(m2, x, i) | point(m2, y, i) | point(m2, op(x, y), i + 1));
            }
        }
    }
    out
}

fn check_pair_coverage(f: &SetFamily) -> Result<()> {
    let mut seen = HashSet::new();
    for &t in f.masks() {
        for p in sub_masks(t, 2) {
            if !seen.insert(p) {
                return Err(Error::Internal(format!("pair {p:#x} covered twice")));
            }
        }
    }
    if seen.len() as u64 != binomial(f.ground(), 2) {
        return Err(Error::Internal("some pair is uncovered".into()));
    }
    Ok(())
}

/// Greedy colex packing of `k`-subsets of `[m]` with pairwise intersections at most `k-2`.
pub fn greedy_packing(m: usize, k: usize) -> Result<SetFamily> {
    if !(1 <= k && k <= m && m <= MAX_N) {
        return Err(Error::Argument(format!("need 1 <= k <= m <= {MAX_N}, got m={m} k={k}")));
    }
    let mut covered = HashSet::new();
    let mut chosen = Vec::new();
    for x in KSubsets::new(m, k) {
        if sub_masks(x, k - 1).all(|y| !covered.contains(&y)) {
            covered.extend(sub_masks(x, k - 1));
            chosen.push(x);
        }
    }
    Ok(SetFamily::from_sorted_unchecked(m, k, chosen))
}

/// `⌈C(m,k)/m⌉`, the size a packing is guaranteed to be able to reach.
pub fn graham_target(m: usize, k: usize) -> u64 {
    binomial(m, k).div_ceil(m as u64)
}

/// Whether distinct members meet in at most `k-2` elements.
pub fn is_packing(f: &SetFamily) -> bool {
    let k = f.cardinality();
    if k == 0 {
        return f.len() <= 1;
    }
    let mut seen = HashSet::new();
    f.masks().iter().all(|&x| sub_masks(x, k - 1).all(|y| seen.insert(y)))
}

// Edges of the base construction with A, B as masks and S given on A.
fn base_edges(k: usize, b: u64, packing: &[u64], out: &mut Vec<u64>) {
    let mut shadow = HashSet::new();
    for &x in packing {
        out.push(x);
        shadow.extend(sub_masks(x, k - 1));
    }
    for y in shadow {
        for v in BitIter(b) {
            out.push(y | 1 << v);
        }
    }
}

/// The single-layer well-covered `k`-graph on `A = [a]`, `B = [a+1, a+b]` with
/// edges `S ∪ {X ∪ {v} : X ∈ ΔS, v ∈ B}`.
pub fn base_wellcovered(a_size: usize, b_size: usize, k: usize, packing: &SetFamily) -> Result<KGraph> {
    let n = a_size + b_size;
    if b_size == 0 || n > MAX_N || k < 2 {
        return Err(Error::Argument(format!("need b >= 1, a + b <= {MAX_N}, k >= 2; got a={a_size} b={b_size} k={k}")));
    }
    if packing.cardinality() != k || packing.masks().iter().any(|&x| x & !full_mask(a_size) != 0) {
        return Err(Error::Argument(format!("packing must consist of {k}-subsets of [{a_size}]")));
    }
    if !is_packing(packing) {
        return Err(Error::Argument(format!("packing has two members sharing {} elements", k - 1)));
    }
    let mut edges = Vec::new();
    base_edges(k, full_mask(n) & !full_mask(a_size), packing.masks(), &mut edges);
    Ok(KGraph::new(SetFamily::from_masks(n, k, edges)?))
}

/// Partition of `[n]` into consecutive intervals `A_0, …, A_r`.
#[derive(Clone, Debug, PartialEq)]
pub struct LayeredPlan {
    pub n: usize,
    pub k: usize,
    /// `None` for plans given by explicit sizes.
    pub split_ratio: Option<f64>,
    pub sizes: Vec<usize>,
}

impl LayeredPlan {
    /// `|A_0| = ⌊(1-α)n⌋`, then `|A_i| = ⌊(1-α)·rest⌋` while that is at least `k`;
    /// the remainder is `A_r`.
    pub fn new(n: usize, k: usize, split_ratio: f64) -> Result<LayeredPlan> {
        if !(split_ratio > 0.0 && split_ratio < 1.0) {
            return Err(Error::Argument(format!("split ratio must lie in (0,1), got {split_ratio}")));
        }
        if !(2 <= k && k < n && n <= MAX_N) {
            return Err(Error::Argument(format!("need 2 <= k < n <= {MAX_N}, got k={k} n={n}")));
        }
        let take = |rest: usize| ((1.0 - split_ratio) * rest as f64).floor() as usize;
        let mut sizes = Vec::new();
        let mut rest = n;
        loop {
            let a = take(rest);
            if a < k {
                break;
            }
            sizes.push(a);
            rest -= a;
        }
        if sizes.is_empty() {
            return Err(Error::Argument(format!(
                "rule (iii) violated: ⌊(1-α)n⌋ = {} < k = {k}, no layer can be built",
                take(n)
            )));
        }
        sizes.push(rest);
        Ok(LayeredPlan { n, k, split_ratio: Some(split_ratio), sizes })
    }

    /// Explicit part sizes; every part but the last carries a layer.
    pub fn from_sizes(n: usize, k: usize, sizes: &[usize]) -> Result<LayeredPlan> {
        if sizes.iter().sum::<usize>() != n || sizes.len() < 2 || sizes.contains(&0) {
            return Err(Error::Argument(format!("sizes {sizes:?} must be at least two positive parts summing to {n}")));
        }
        if !(2 <= k && n <= MAX_N) || sizes[..sizes.len() - 1].iter().any(|&a| a < k) {
            return Err(Error::Argument(format!("every layer part needs at least k={k} elements")));
        }
        Ok(LayeredPlan { n, k, split_ratio: None, sizes: sizes.to_vec() })
    }

    /// Parts as 1-based inclusive intervals.
    pub fn parts(&self) -> Vec<RangeInclusive<usize>> {
        let mut start = 1;
        self.sizes
            .iter()
            .map(|&s| {
                let r = start..=start + s - 1;
                start += s;
                r
            })
            .collect()
    }

    /// Number of layers, `r`.
    pub fn layers(&self) -> usize {
        self.sizes.len() - 1
    }
}

/// How each layer's packing is chosen.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Packer {
    /// Steiner triple system when `k = 3` and `|A_i|` admits one, greedy otherwise.
    #[default]
    Auto,
    Greedy,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LayerStats {
    pub a_size: usize,
    pub b_size: usize,
    pub packing_size: usize,
    pub steiner: bool,
    pub edges: usize,
    pub cliques: usize,
}

#[derive(Clone, Debug)]
pub struct Layered {
    pub hypergraph: KGraph,
    pub layers: Vec<LayerStats>,
}

/// Packing on `[a]` chosen by `packer`, and whether it is a Steiner triple system.
pub fn packing_for(a: usize, k: usize, packer: Packer) -> Result<(SetFamily, bool)> {
    if packer == Packer::Auto && k == 3 && a >= 7 && matches!(a % 6, 1 | 3) {
        Ok((steiner_triple_system(a)?, true))
    } else {
        Ok((greedy_packing(a, k)?, false))
    }
}

/// The union of the base construction on every layer `A_i` against `A_{i+1} ∪ … ∪ A_r`.
///
/// The union's clique count is recomputed and checked against the sum over layers.
pub fn layered_wellcovered(plan: &LayeredPlan, packer: Packer) -> Result<Layered> {
    let (n, k) = (plan.n, plan.k);
    let mut all = Vec::new();
    let mut layers = Vec::new();
    let mut offset = 0;
    for (i, &a) in plan.sizes[..plan.layers()].iter().enumerate() {
        let rest: usize = plan.sizes[i + 1..].iter().sum();
        let (packing, steiner) = packing_for(a, k, packer)?;
        let shifted: Vec<u64> = packing.masks().iter().map(|&x| x << offset).collect();
        let b = full_mask(n) & !full_mask(offset + a);
        let mut edges = Vec::new();
        base_edges(k, b, &shifted, &mut edges);
        let layer = KGraph::new(SetFamily::from_masks(n, k, edges.iter().copied())?);
        let cliques = clique_count(&layer);
        layers.push(LayerStats {
            a_size: a,
            b_size: rest,
            packing_size: packing.len(),
            steiner,
            edges: layer.edge_count(),
            cliques,
        });
        all.extend(edges);
        offset += a;
    }
    let hypergraph = KGraph::new(SetFamily::from_masks(n, k, all)?);
    let sum: i64 = layers.iter().map(|l| l.edges as i64 - l.cliques as i64).sum();
    let total = hypergraph.edge_count() as i64 - clique_count(&hypergraph) as i64;
    if sum != total || layers.iter().map(|l| l.edges).sum::<usize>() != hypergraph.edge_count() {
        return Err(Error::Internal(format!("layers are not additive: e-c of union {total}, sum over layers {sum}")));
    }
    Ok(Layered { hypergraph, layers })
}

/// `k = 3`, `A = [7]`, `B = [8, 11]`, packing the Fano plane.
pub fn example1_hypergraph() -> KGraph {
    let sts = steiner_triple_system(7).expect("v = 7 admissible");
    base_wellcovered(7, 4, 3, &sts).expect("valid base construction")
}

pub fn example1() -> DomPair {
    dompair_from_wellcovered(&example1_hypergraph()).expect("well-covered")
}

/// Parts `[1,19]`, `[20,26]`, `[27,30]` with Steiner triple systems on the first two.
pub fn example2_plan() -> LayeredPlan {
    LayeredPlan::from_sizes(30, 3, &[19, 7, 4]).expect("fixed plan")
}

pub fn example2_hypergraph() -> Layered {
    layered_wellcovered(&example2_plan(), Packer::Auto).expect("fixed plan builds")
}

pub fn example2() -> DomPair {
    dompair_from_wellcovered(&example2_hypergraph().hypergraph).expect("well-covered")
}

/// The 25-edge graph on `[9]` of the independent size-17 witness in `G_{4,2}`.
pub fn fig4_left_graph() -> Graph {
    let edges = [
        (1, 2), (6, 7), (8, 9), (5, 9), (3, 4), (4, 5), (1, 6), (2, 6), (2, 7), (3, 7), (3, 6), (4, 6), (4, 7),
        (1, 7), (1, 8), (2, 8), (2, 9), (1, 9), (5, 7), (5, 6), (5, 8), (3, 8), (3, 9), (4, 9), (4, 8),
    ];
    Graph::from_edges(9, &edges).expect("fixed edge list")
}

/// Independent dominating set of `G_{4,2}` on `[9]`, size 17.
pub fn fig4_left() -> DomPair {
    let upper = SetFamily::from_sets(
        9,
        4,
        &[&[1, 2, 6, 7], &[3, 4, 6, 7], &[4, 5, 6, 7], &[1, 2, 8, 9], &[3, 4, 8, 9], &[4, 5, 8, 9]],
    )
    .expect("fixed sets");
    DomPair::new(fig4_left_graph().edge_family().complement(), upper).expect("levels 2 and 4")
}

/// `K_{3,3,3}` on parts `{1,2,3}`, `{4,5,6}`, `{7,8,9}`.
pub fn fig4_right_graph() -> Graph {
    let mut g = Graph::empty(9);
    for u in 0..9 {
        for v in u + 1..9 {
            if u / 3 != v / 3 {
                g.add_edge0(u, v);
            }
        }
    }
    g
}

/// Dominating set of `G_{4,2}` on `[9]` of size 15; not independent.
pub fn fig4_right() -> DomPair {
    let upper = SetFamily::from_sets(
        9,
        4,
        &[&[1, 2, 4, 7], &[1, 2, 5, 8], &[1, 2, 6, 9], &[3, 4, 5, 9], &[3, 6, 7, 8], &[4, 5, 7, 8]],
    )
    .expect("fixed sets");
    DomPair::new(fig4_right_graph().edge_family().complement(), upper).expect("levels 2 and 4")
}
