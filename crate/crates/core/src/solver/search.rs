//! Orderly search over the lower level of a dominating set.
//!
//! A node fixes membership of every `k`-set inside positions `0..depth`. Nodes are
//! kept only when their membership code (colex order) is the largest over all
//! relabelings of those positions, so each `S_n`-class of lower levels is met once.
//! Once the lower level is complete the upper level is determined up to a set cover:
//! every `l`-set without a lower member must be chosen, and the `k`-sets left
//! unabsorbed are covered by as few further `l`-sets as possible.

use std::cmp::Ordering as CmpOrd;
use std::sync::atomic::{AtomicBool, AtomicU64, Ordering};
use std::time::Instant;

use super::cover::min_cover;
use super::Mode;
use crate::sets::{binomial, colex_rank_bits, colex_unrank, sub_masks, BitIter, KSubsets};

pub(crate) struct Instance {
    pub n: usize,
    pub l: usize,
    pub k: usize,
    pub mode: Mode,
    ktop: Vec<Vec<u64>>,
    ltop: Vec<Vec<u64>>,
    kbase: Vec<usize>,
}

#[derive(Clone)]
pub(crate) struct Node {
    depth: usize,
    dk: Vec<bool>,
    members: usize,
    forced: Vec<u64>,
}

/// A complete solution: lower members, upper members.
#[derive(Clone, Debug)]
pub(crate) struct Found {
    pub lower: Vec<u64>,
    pub upper: Vec<u64>,
}

impl Found {
    pub fn size(&self) -> usize {
        self.lower.len() + self.upper.len()
    }
}

/// What a search run keeps and how it prunes.
pub(crate) enum Goal<'a> {
    /// Minimise; a solution of value `v` in task `t` has key `v << 32 | t`, and the
    /// shared key only decreases.
    Minimise { key: &'a AtomicU64, task: u64 },
    /// Collect one solution per class with value at most `target`.
    Enumerate { target: usize },
}

pub(crate) struct Run<'a> {
    inst: &'a Instance,
    goal: Goal<'a>,
    deadline: Option<Instant>,
    stop: &'a AtomicBool,
    pub nodes: u64,
    pub best: Option<Found>,
    pub all: Vec<Found>,
    collect_at: Option<usize>,
    collect_cap: usize,
    pub collected: Vec<Node>,
    pub overflow: bool,
}

impl Instance {
    pub fn new(n: usize, l: usize, k: usize, mode: Mode) -> Instance {
        let ktop = (0..n).map(|d| KSubsets::new(d, k - 1).collect()).collect();
        let ltop = (0..n).map(|d| KSubsets::new(d, l - 1).collect()).collect();
        let kbase = (0..=n).map(|d| binomial(d, k) as usize).collect();
        Instance { n, l, k, mode, ktop, ltop, kbase }
    }

    pub fn root(&self) -> Node {
        Node { depth: 0, dk: vec![false; binomial(self.n, self.k) as usize], members: 0, forced: Vec::new() }
    }

    /// Positions with identical roles: swapping any two of them fixes `dk`.
    fn twin_classes(&self, dk: &[bool], top: usize) -> [u8; 64] {
        let mut class = [0u8; 64];
        for (v, c) in class.iter_mut().enumerate().take(top) {
            *c = v as u8;
        }
        for w in 1..top {
            for v in 0..w {
                if class[v] as usize != v {
                    continue;
                }
                let (bv, bw) = (1u64 << v, 1u64 << w);
                let swap_ok = KSubsets::new(top, self.k).enumerate().all(|(r, s)| {
                    if (s & bv == 0) == (s & bw == 0) {
                        return true;
                    }
                    dk[r] == dk[colex_rank_bits(s ^ bv ^ bw) as usize]
                });
                if swap_ok {
                    class[w] = v as u8;
                    break;
                }
            }
        }
        class
    }

    /// Whether no relabeling of positions `0..top` gives a larger membership code.
    pub fn is_canonical(&self, dk: &[bool], top: usize) -> bool {
        let class = self.twin_classes(dk, top);
        let mut perm = [0usize; 64];
        self.canon_from(dk, top, 0, &mut perm, 0, &class)
    }

    fn canon_from(&self, dk: &[bool], top: usize, p: usize, perm: &mut [usize; 64], used: u64, class: &[u8; 64]) -> bool {
        if p == top {
            return true;
        }
        let mut tried = 0u64;
        for v in 0..top {
            if used >> v & 1 == 1 || tried >> class[v] & 1 == 1 {
                continue;
            }
            tried |= 1 << class[v];
            perm[p] = v;
            let mut ord = CmpOrd::Equal;
            for (idx, &s) in self.ktop[p].iter().enumerate() {
                let img = BitIter(s).fold(1u64 << v, |acc, i| acc | 1 << perm[i]);
                let mapped = dk[colex_rank_bits(img) as usize];
                let orig = dk[self.kbase[p] + idx];
                if mapped != orig {
                    ord = mapped.cmp(&orig);
                    break;
                }
            }
            match ord {
                CmpOrd::Greater => return false,
                CmpOrd::Less => {}
                CmpOrd::Equal => {
                    if !self.canon_from(dk, top, p + 1, perm, used | 1 << v, class) {
                        return false;
                    }
                }
            }
        }
        true
    }

    fn has_lower_member(&self, dk: &[bool], b: u64) -> bool {
        sub_masks(b, self.k).any(|s| dk[colex_rank_bits(s) as usize])
    }

    /// `ceil(N / (Δ + 1))` over the `C(n,k) + C(n,l)` vertices.
    pub fn root_bound(&self) -> usize {
        let total = binomial(self.n, self.k) + binomial(self.n, self.l);
        let reach = 1 + binomial(self.n - self.k, self.l - self.k).max(binomial(self.l, self.k));
        total.div_ceil(reach) as usize
    }
}

impl<'a> Run<'a> {
    pub fn new(inst: &'a Instance, goal: Goal<'a>, deadline: Option<Instant>, stop: &'a AtomicBool) -> Run<'a> {
        Run {
            inst,
            goal,
            deadline,
            stop,
            nodes: 0,
            best: None,
            all: Vec::new(),
            collect_at: None,
            collect_cap: 0,
            collected: Vec::new(),
            overflow: false,
        }
    }

    /// Stops at `depth` and keeps the nodes instead; gives up past `cap` nodes.
    pub fn collecting_at(mut self, depth: usize, cap: usize) -> Self {
        self.collect_at = Some(depth);
        self.collect_cap = cap;
        self
    }

    /// Largest value still worth reaching, if any.
    fn ceiling(&self) -> Option<usize> {
        match self.goal {
            Goal::Minimise { key, task } => {
                let key = key.load(Ordering::Relaxed);
                (key > task).then(|| ((key - task - 1) >> 32) as usize)
            }
            Goal::Enumerate { target } => Some(target),
        }
    }

    fn pruned(&self, bound: usize) -> bool {
        self.ceiling().map_or(true, |c| bound > c)
    }

    fn out_of_time(&mut self) -> bool {
        if self.stop.load(Ordering::Relaxed) {
            return true;
        }
        if let Some(d) = self.deadline {
            if self.nodes % 64 == 0 && Instant::now() >= d {
                self.stop.store(true, Ordering::Relaxed);
                return true;
            }
        }
        false
    }

    pub fn explore(&mut self, node: &mut Node) {
        if node.depth == self.inst.n {
            self.leaf(node);
            return;
        }
        self.extend(node, 0);
    }

    /// Assigns the `k`-sets whose top position is `node.depth`, one at a time.
    fn extend(&mut self, node: &mut Node, idx: usize) {
        let inst = self.inst;
        let d = node.depth;
        if idx == inst.ktop[d].len() {
            self.close_level(node);
            return;
        }
        let r = inst.kbase[d] + idx;
        self.extend(node, idx + 1);
        if self.stop.load(Ordering::Relaxed) || self.overflow {
            return;
        }
        if !self.pruned(node.members + 1 + node.forced.len()) {
            node.dk[r] = true;
            node.members += 1;
            self.extend(node, idx + 1);
            node.dk[r] = false;
            node.members -= 1;
        }
    }

    fn close_level(&mut self, node: &mut Node) {
        self.nodes += 1;
        if self.out_of_time() {
            return;
        }
        let inst = self.inst;
        let d = node.depth;
        let before = node.forced.len();
        for &t in &inst.ltop[d] {
            let b = t | 1 << d;
            if !inst.has_lower_member(&node.dk, b) {
                node.forced.push(b);
            }
        }
        if !self.pruned(node.members + node.forced.len()) {
            node.depth += 1;
            let leaf = node.depth == inst.n;
            let check = !leaf || matches!(self.goal, Goal::Enumerate { .. });
            if !check || inst.is_canonical(&node.dk, node.depth) {
                if self.collect_at == Some(node.depth) && !leaf {
                    self.collected.push(node.clone());
                    self.overflow = self.collected.len() > self.collect_cap;
                } else {
                    self.explore(node);
                }
            }
            node.depth -= 1;
        }
        node.forced.truncate(before);
    }

    fn leaf(&mut self, node: &Node) {
        let inst = self.inst;
        let base = node.members + node.forced.len();
        let Some(ceiling) = self.ceiling() else { return };
        if base > ceiling {
            return;
        }
        let mut absorbed = vec![false; node.dk.len()];
        for &b in &node.forced {
            for s in sub_masks(b, inst.k) {
                absorbed[colex_rank_bits(s) as usize] = true;
            }
        }
        let open: Vec<u64> = (0..node.dk.len())
            .filter(|&r| !node.dk[r] && !absorbed[r])
            .map(|r| colex_unrank(r as u64, inst.n, inst.k).expect("rank").bits())
            .collect();
        let extra = match inst.mode {
            Mode::Independent if !open.is_empty() => return,
            Mode::Independent => Vec::new(),
            Mode::Gamma => match min_cover(inst.n, inst.l, inst.k, &open, ceiling - base) {
                Some(c) => c,
                None => return,
            },
        };
        let lower: Vec<u64> = (0..node.dk.len())
            .filter(|&r| node.dk[r])
            .map(|r| colex_unrank(r as u64, inst.n, inst.k).expect("rank").bits())
            .collect();
        let mut upper = node.forced.clone();
        upper.extend(extra);
        let found = Found { lower, upper };
        match self.goal {
            Goal::Minimise { key, task } => {
                key.fetch_min((found.size() as u64) << 32 | task, Ordering::Relaxed);
                self.best = Some(found);
            }
            Goal::Enumerate { .. } => self.all.push(found),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn count_classes(n: usize, k: usize) -> usize {
        // every class of lower levels on [n], with nothing pruned
        let inst = Instance::new(n, k + 1, k, Mode::Gamma);
        let stop = AtomicBool::new(false);
        let mut run = Run::new(&inst, Goal::Enumerate { target: usize::MAX / 2 }, None, &stop);
        let mut count = 0;
        fn walk(run: &mut Run, inst: &Instance, node: &mut Node, count: &mut usize) {
            if node.depth == inst.n {
                *count += 1;
                return;
            }
            let d = node.depth;
            let c = inst.ktop[d].len();
            for x in 0u64..1 << c {
                for i in 0..c {
                    node.dk[inst.kbase[d] + i] = x >> i & 1 == 1;
                }
                node.depth += 1;
                if inst.is_canonical(&node.dk, node.depth) {
                    walk(run, inst, node, count);
                }
                node.depth -= 1;
            }
            for i in 0..c {
                node.dk[inst.kbase[d] + i] = false;
            }
        }
        let mut root = inst.root();
        walk(&mut run, &inst, &mut root, &mut count);
        count
    }

    #[test]
    fn orderly_counts_match_known_graph_counts() {
        // unlabeled graphs on n vertices: 1, 2, 4, 11, 34, 156, 1044
        let expected = [1, 2, 4, 11, 34, 156, 1044];
        for (i, &e) in expected.iter().enumerate() {
            assert_eq!(count_classes(i + 1, 2), e, "n={}", i + 1);
        }
    }

    #[test]
    fn orderly_counts_three_uniform() {
        // unlabeled 3-uniform hypergraphs on 4 and 5 vertices
        assert_eq!(count_classes(4, 3), 5);
        assert_eq!(count_classes(5, 3), 34);
    }
}
