//! Simple graphs on `[n]` and the triangle/edge bookkeeping behind the
//! `|E| - |T| - |E0|/2` bound.
//!
//! Every quantity that is naturally a half or a quarter is stored scaled to an
//! integer (`*_times_2`, `*_times_4`); nothing here compares rationals in
//! floating point.

use std::fmt;

use serde::Serialize;

use crate::dompair::DomPair;
use crate::error::{parse_err, Error, Result};
use crate::hypergraph::verify_dominating;
use crate::par::{self, Execution};
use crate::sets::{full_mask, shadow, BitIter, SetFamily, MAX_N};

/// Undirected simple graph on `[n]`, one adjacency mask per vertex.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    adj: Vec<u64>,
}

impl Graph {
    pub fn empty(n: usize) -> Graph {
        assert!(n <= MAX_N, "graph on {n} > {MAX_N} vertices");
        Graph { n, adj: vec![0; n] }
    }

    pub fn complete(n: usize) -> Graph {
        let mut g = Graph::empty(n);
        for x in 0..n {
            g.adj[x] = full_mask(n) & !(1 << x);
        }
        g
    }

    /// Builds a graph from 1-based edges.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Graph> {
        if n > MAX_N {
            return Err(Error::Argument(format!("graph on {n} > {MAX_N} vertices")));
        }
        let mut g = Graph::empty(n);
        for &(u, v) in edges {
            if u == 0 || v == 0 || u > n || v > n {
                return Err(Error::Argument(format!("edge {u}-{v} outside [1, {n}]")));
            }
            if u == v {
                return Err(Error::Argument(format!("loop at {u}")));
            }
            g.add_edge0(u - 1, v - 1);
        }
        Ok(g)
    }

    /// Graph whose edges are the members of a 2-uniform family.
    pub fn from_pairs(pairs: &SetFamily) -> Graph {
        assert_eq!(pairs.cardinality(), 2);
        let mut g = Graph::empty(pairs.ground());
        for &m in pairs.masks() {
            let a = m.trailing_zeros() as usize;
            let b = 63 - m.leading_zeros() as usize;
            g.add_edge0(a, b);
        }
        g
    }

    /// From the lower triangle of an adjacency bit-string (bit `i` = i-th pair in colex order).
    pub(crate) fn from_pair_code(n: usize, code: u64, pairs: &[(usize, usize)]) -> Graph {
        let mut g = Graph::empty(n);
        for (i, &(a, b)) in pairs.iter().enumerate() {
            if code >> i & 1 == 1 {
                g.add_edge0(a, b);
            }
        }
        g
    }

    #[inline]
    pub(crate) fn add_edge0(&mut self, a: usize, b: usize) {
        self.adj[a] |= 1 << b;
        self.adj[b] |= 1 << a;
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.n
    }

    /// Neighbour mask of a 1-based vertex (bit `i` = vertex `i + 1`).
    #[inline]
    pub fn neighbors(&self, x: usize) -> u64 {
        self.adj[x - 1]
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u != v && u >= 1 && v >= 1 && u <= self.n && v <= self.n && self.adj[u - 1] >> (v - 1) & 1 == 1
    }

    #[inline]
    pub fn degree(&self, x: usize) -> u32 {
        self.adj[x - 1].count_ones()
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(|a| a.count_ones() as usize).sum::<usize>() / 2
    }

    /// 1-based edges `(u, v)` with `u < v`, lexicographic.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.edge_count());
        for x in 0..self.n {
            for y in BitIter(self.adj[x] >> x >> 1) {
                out.push((x + 1, x + y + 2));
            }
        }
        out
    }

    /// Edges as a 2-uniform family.
    pub fn edge_family(&self) -> SetFamily {
        let masks = self.edges().into_iter().map(|(u, v)| (1u64 << (u - 1)) | (1 << (v - 1)));
        SetFamily::from_masks(self.n.max(1), 2, masks).expect("edge masks")
    }

    /// Relabels vertices; `perm[i]` is the 0-based image of 0-based vertex `i`.
    pub fn permuted(&self, perm: &[usize]) -> Graph {
        let mut g = Graph::empty(self.n);
        for (x, y) in self.edges() {
            g.add_edge0(perm[x - 1], perm[y - 1]);
        }
        g
    }

    /// Text format: `n=<n>` then one `u v` line per edge, `u < v`, sorted.
    pub fn to_text(&self) -> String {
        let mut s = format!("n={}\n", self.n);
        for (u, v) in self.edges() {
            s.push_str(&format!("{u} {v}\n"));
        }
        s
    }

    pub fn parse(text: &str) -> Result<Graph> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
        let (hline, header) = lines.next().ok_or_else(|| parse_err(1, "missing header `n=<n>`"))?;
        let n: usize = header
            .strip_prefix("n=")
            .and_then(|v| v.trim().parse().ok())
            .ok_or_else(|| parse_err(hline, "header must be `n=<n>`"))?;
        if n > MAX_N {
            return Err(parse_err(hline, format!("n={n} exceeds {MAX_N}")));
        }
        let mut g = Graph::empty(n);
        for (line, text) in lines {
            let nums: Vec<usize> = text
                .split_whitespace()
                .map(|t| t.parse().map_err(|_| parse_err(line, format!("non-numeric token {t:?}"))))
                .collect::<Result<_>>()?;
            let [u, v] = nums[..] else {
                return Err(parse_err(line, "edge line must be `u v`"));
            };
            if u == 0 || v > n || u >= v {
                return Err(parse_err(line, format!("edge {u} {v} must satisfy 1 <= u < v <= {n}")));
            }
            if g.has_edge(u, v) {
                return Err(parse_err(line, format!("duplicate edge {u} {v}")));
            }
            g.add_edge0(u - 1, v - 1);
        }
        Ok(g)
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, {:?})", self.n, self.edges())
    }
}

/// An exact multiple of one half.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Half(pub i64);

impl Half {
    pub fn twice(self) -> i64 {
        self.0
    }

    pub fn floor(self) -> i64 {
        self.0.div_euclid(2)
    }

    pub fn is_integer(self) -> bool {
        self.0 % 2 == 0
    }
}

impl fmt::Display for Half {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_integer() {
            write!(f, "{}", self.0 / 2)
        } else {
            write!(f, "{}.5", self.floor())
        }
    }
}

/// Vertex sets of all triangles, colex-sorted.
pub fn triangles(g: &Graph) -> SetFamily {
    let mut out = Vec::new();
    for z in 0..g.n {
        // x < y < z keeps the masks in colex order
        let below = g.adj[z] & ((1u64 << z) - 1);
        for y in BitIter(below) {
            for x in BitIter(below & g.adj[y] & ((1u64 << y) - 1)) {
                out.push((1u64 << x) | (1 << y) | (1 << z));
            }
        }
    }
    SetFamily::from_sorted_unchecked(g.n.max(3), 3, out)
}

pub fn triangle_count(g: &Graph) -> usize {
    let mut count = 0;
    for z in 0..g.n {
        let below = g.adj[z] & ((1u64 << z) - 1);
        for y in BitIter(below) {
            count += (below & g.adj[y] & ((1u64 << y) - 1)).count_ones() as usize;
        }
    }
    count
}

/// Per-edge and per-vertex triangle counts.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EdgeStats {
    /// `((u, v), t(uv))` for every edge, 1-based, lexicographic.
    pub edges: Vec<((usize, usize), u32)>,
    /// `t(x)` indexed by `x - 1`.
    pub vertices: Vec<u32>,
}

pub fn edge_stats(g: &Graph) -> EdgeStats {
    let edges: Vec<((usize, usize), u32)> = g
        .edges()
        .into_iter()
        .map(|(u, v)| ((u, v), (g.adj[u - 1] & g.adj[v - 1]).count_ones()))
        .collect();
    let mut twice = vec![0u32; g.n];
    for &((u, v), t) in &edges {
        twice[u - 1] += t;
        twice[v - 1] += t;
    }
    EdgeStats { edges, vertices: twice.into_iter().map(|t| t / 2).collect() }
}

/// Edges lying in no triangle.
pub fn uncovered_edges(g: &Graph) -> Vec<(usize, usize)> {
    g.edges().into_iter().filter(|&(u, v)| g.adj[u - 1] & g.adj[v - 1] == 0).collect()
}

/// `|E| - |T| - |E0|/2`.
pub fn f_value(g: &Graph) -> Half {
    Half(f_times_2(g))
}

pub(crate) fn f_times_2(g: &Graph) -> i64 {
    let mut e = 0i64;
    let mut e0 = 0i64;
    for x in 0..g.n {
        for y in BitIter(g.adj[x] >> x >> 1) {
            let y = x + 1 + y;
            e += 1;
            if g.adj[x] & g.adj[y] == 0 {
                e0 += 1;
            }
        }
    }
    2 * (e - triangle_count(g) as i64) - e0
}

/// `⌊(n+1)^2 / 8⌋`.
pub fn f_upper_bound(n: usize) -> i64 {
    ((n as i64 + 1) * (n as i64 + 1)).div_euclid(8)
}

/// All the counting quantities of the `|E| - |T| - |E0|/2` argument, in scaled integers.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GraphCertificate {
    pub n: usize,
    pub edge_count: usize,
    pub triangle_count: usize,
    pub uncovered_edges: Vec<[usize; 2]>,
    pub covered_edge_count: usize,
    /// `2(|E| - |T|) - |E0|`.
    pub f_times_2: i64,
    /// Sum over triangles `xyz` of the number of outside vertices with 0 or 3 neighbours in `xyz`.
    pub alpha: i64,
    /// `2 * sum_{xy in E1} (t(xy) - 1)((d(x) + d(y))/2 - t(xy) - 1)`.
    pub beta_times_2: i64,
    /// `4 * sum_x ((n+1)/2 - d(x))^2`.
    pub gamma_times_4: i64,
    pub first_step_holds: bool,
    pub final_inequality_holds: bool,
}

impl GraphCertificate {
    pub fn f(&self) -> Half {
        Half(self.f_times_2)
    }

    /// Whether `f` meets `⌊(n+1)^2/8⌋`.
    pub fn within_bound(&self) -> bool {
        self.f_times_2 <= 2 * f_upper_bound(self.n)
    }

    /// Equality clause of the bound: only `E0 = ∅`, or `n ≡ 1 (mod 4)` with `|E0|` even.
    pub fn equality_clause_holds(&self) -> bool {
        self.f_times_2 != 2 * f_upper_bound(self.n)
            || self.uncovered_edges.is_empty()
            || (self.n % 4 == 1 && self.uncovered_edges.len() % 2 == 0)
    }
}

pub fn certificate(g: &Graph) -> GraphCertificate {
    let n = g.n as i64;
    let deg: Vec<i64> = g.adj.iter().map(|a| a.count_ones() as i64).collect();
    let edges = g.edges();
    let tri = triangles(g);

    let mut uncovered = Vec::new();
    // sum over all edges of (t-1)(d(x)+d(y)-2t-2), and the E1 part of it
    let mut second_sum = 0i64;
    let mut beta_times_2 = 0i64;
    for &(u, v) in &edges {
        let t = (g.adj[u - 1] & g.adj[v - 1]).count_ones() as i64;
        let term = (t - 1) * (deg[u - 1] + deg[v - 1] - 2 * t - 2);
        second_sum += term;
        if t == 0 {
            uncovered.push([u, v]);
        } else {
            beta_times_2 += term;
        }
    }

    let mut alpha = 0i64;
    for &m in tri.masks() {
        let mut it = BitIter(m);
        let (x, y, z) = (it.next().unwrap(), it.next().unwrap(), it.next().unwrap());
        let outside = full_mask(g.n) & !m;
        let none = outside & !(g.adj[x] | g.adj[y] | g.adj[z]);
        let all = outside & g.adj[x] & g.adj[y] & g.adj[z];
        alpha += (none.count_ones() + all.count_ones()) as i64;
    }

    let e = edges.len() as i64;
    let t = tri.len() as i64;
    let e0 = uncovered.len() as i64;
    let gamma_times_4: i64 = deg.iter().map(|&d| (n + 1 - 2 * d).pow(2)).sum();
    let sum_sq: i64 = deg.iter().map(|d| d * d).sum();

    let first_step_holds = sum_sq + second_sum == 2 * n * t + 2 * e - 2 * alpha;
    let final_inequality_holds =
        8 * n * (e - t) - 4 * n * e0 <= n * (n + 1) * (n + 1) - 8 * e0 - 8 * alpha - 4 * beta_times_2 - gamma_times_4;

    GraphCertificate {
        n: g.n,
        edge_count: edges.len(),
        triangle_count: tri.len(),
        covered_edge_count: edges.len() - uncovered.len(),
        uncovered_edges: uncovered,
        f_times_2: 2 * (e - t) - e0,
        alpha,
        beta_times_2,
        gamma_times_4,
        first_step_holds,
        final_inequality_holds,
    }
}

/// `certificate` over a corpus, in input order.
pub fn certificates(graphs: &[Graph], exec: Execution) -> Vec<GraphCertificate> {
    par::map(exec, graphs, certificate)
}

/// Edges `xy` with `N(x) \ {y} = N(y) \ {x}`.
///
/// Panics if a reported edge breaks the equivalent degree form
/// `t(xy) = (d(x) + d(y))/2 - 1`, which would indicate corrupted adjacency.
pub fn matching_set_m(g: &Graph) -> Vec<(usize, usize)> {
    g.edges()
        .into_iter()
        .filter(|&(u, v)| {
            let (a, b) = (u - 1, v - 1);
            let same = g.adj[a] & !(1 << b) == g.adj[b] & !(1 << a);
            let t = (g.adj[a] & g.adj[b]).count_ones() as i64;
            let degree_form = 2 * t == g.adj[a].count_ones() as i64 + g.adj[b].count_ones() as i64 - 2;
            assert_eq!(same, degree_form, "neighbourhood and degree forms disagree on edge {u}-{v}");
            same
        })
        .collect()
}

/// The graph `H(D)` on `[n]` with edge set `ΔD_3 \ D_2`.
pub fn graph_from_dompair(d: &DomPair) -> Result<Graph> {
    if d.l() != 3 || d.k() != 2 {
        return Err(Error::Argument(format!("H(D) needs (l,k) = (3,2), got ({}, {})", d.l(), d.k())));
    }
    let sh = shadow(d.upper())?;
    let mut g = Graph::empty(d.ground());
    for &m in sh.masks() {
        if !d.lower().contains_bits(m) {
            let a = m.trailing_zeros() as usize;
            let b = 63 - m.leading_zeros() as usize;
            g.add_edge0(a, b);
        }
    }
    Ok(g)
}

/// Whether dropping any single member of a dominating set breaks domination.
pub fn is_minimal_dominating(d: &DomPair) -> Result<bool> {
    if let Some(w) = verify_dominating(d).witness {
        return Err(Error::Precondition(format!("not dominating: {w} is undominated")));
    }
    Ok(d.members().all(|v| !verify_dominating(&d.without(&v)).dominating))
}

/// Prunes redundant members, trying the lower level first, each level in colex order.
pub fn minimalize(d: &DomPair) -> Result<DomPair> {
    if let Some(w) = verify_dominating(d).witness {
        return Err(Error::Precondition(format!("not dominating: {w} is undominated")));
    }
    let mut cur = d.clone();
    let order: Vec<_> = d.members().collect();
    for v in order {
        let next = cur.without(&v);
        if verify_dominating(&next).dominating {
            cur = next;
        }
    }
    Ok(cur)
}

/// An isomorphism `g1 -> g2` as a 0-based vertex map, if one exists.
///
/// Backtracking over vertices with matching (degree, triangle count); intended for
/// graphs with at most a couple of dozen vertices.
pub fn isomorphism(g1: &Graph, g2: &Graph) -> Option<Vec<usize>> {
    if g1.n != g2.n || g1.edge_count() != g2.edge_count() {
        return None;
    }
    let n = g1.n;
    let inv = |g: &Graph| -> Vec<(u32, u32)> {
        let st = edge_stats(g);
        (0..n).map(|x| (g.adj[x].count_ones(), st.vertices[x])).collect()
    };
    let (inv1, inv2) = (inv(g1), inv(g2));
    let mut s1 = inv1.clone();
    let mut s2 = inv2.clone();
    s1.sort_unstable();
    s2.sort_unstable();
    if s1 != s2 {
        return None;
    }

    // Map high-degree vertices first, then keep extending along neighbours.
    let mut order: Vec<usize> = Vec::with_capacity(n);
    let mut placed = 0u64;
    while order.len() < n {
        let frontier: u64 = order.iter().fold(0, |acc, &v| acc | g1.adj[v]) & !placed;
        let pool = if frontier != 0 { frontier } else { full_mask(n) & !placed };
        let next = BitIter(pool).max_by_key(|&v| (inv1[v], std::cmp::Reverse(v))).unwrap();
        order.push(next);
        placed |= 1 << next;
    }

    let mut map = vec![usize::MAX; n];
    let mut used = 0u64;
    if extend(g1, g2, &order, &inv1, &inv2, 0, &mut map, &mut used) {
        debug_assert!(g1.permuted(&map) == *g2);
        Some(map)
    } else {
        None
    }
}

#[allow(clippy::too_many_arguments)]
fn extend(
    g1: &Graph,
    g2: &Graph,
    order: &[usize],
    inv1: &[(u32, u32)],
    inv2: &[(u32, u32)],
    depth: usize,
    map: &mut [usize],
    used: &mut u64,
) -> bool {
    if depth == order.len() {
        return true;
    }
    let v = order[depth];
    for w in BitIter(full_mask(g1.n) & !*used) {
        if inv1[v] != inv2[w] {
            continue;
        }
        let consistent = order[..depth]
            .iter()
            .all(|&u| (g1.adj[v] >> u & 1) == (g2.adj[w] >> map[u] & 1));
        if !consistent {
            continue;
        }
        map[v] = w;
        *used |= 1 << w;
        if extend(g1, g2, order, inv1, inv2, depth + 1, map, used) {
            return true;
        }
        *used &= !(1 << w);
        map[v] = usize::MAX;
    }
    false
}

pub fn isomorphic(g1: &Graph, g2: &Graph) -> bool {
    isomorphism(g1, g2).is_some()
}
