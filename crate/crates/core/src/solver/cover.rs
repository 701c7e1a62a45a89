//! Exact minimum cover of a family of `k`-sets by `l`-sets.

use std::collections::{HashMap, HashSet};

use crate::sets::{binomial, full_mask, sub_masks, BitIter, KSubsets};

#[derive(Clone)]
struct Bits(Vec<u64>);

impl Bits {
    fn zeros(len: usize) -> Bits {
        Bits(vec![0; len.div_ceil(64)])
    }

    fn set(&mut self, i: usize) {
        self.0[i / 64] |= 1 << (i % 64);
    }

    fn get(&self, i: usize) -> bool {
        self.0[i / 64] >> (i % 64) & 1 == 1
    }

    fn count(&self) -> u32 {
        self.0.iter().map(|w| w.count_ones()).sum()
    }

    fn and_count(&self, other: &Bits) -> u32 {
        self.0.iter().zip(&other.0).map(|(a, b)| (a & b).count_ones()).sum()
    }

    fn clear(&mut self, other: &Bits) {
        for (a, b) in self.0.iter_mut().zip(&other.0) {
            *a &= !b;
        }
    }

    fn first(&self) -> Option<usize> {
        self.0.iter().enumerate().find(|(_, w)| **w != 0).map(|(i, w)| i * 64 + w.trailing_zeros() as usize)
    }
}

struct Cover<'a> {
    cands: &'a [(u64, Bits)],
    by_elem: Vec<Vec<usize>>,
    chosen: Vec<usize>,
}

impl Cover<'_> {
    fn dfs(&mut self, uncovered: &Bits, left: usize) -> bool {
        let Some(e) = uncovered.first() else { return true };
        if left == 0 {
            return false;
        }
        let mut opts: Vec<(u32, usize)> =
            self.by_elem[e].iter().map(|&c| (self.cands[c].1.and_count(uncovered), c)).collect();
        let remaining = uncovered.count();
        let best = self.cands.iter().map(|(_, b)| b.and_count(uncovered)).max().unwrap_or(0);
        if best == 0 || (remaining as usize).div_ceil(best as usize) > left {
            return false;
        }
        opts.sort_by(|a, b| b.0.cmp(&a.0).then(a.1.cmp(&b.1)));
        for (_, c) in opts {
            let mut next = uncovered.clone();
            next.clear(&self.cands[c].1);
            self.chosen.push(c);
            if self.dfs(&next, left - 1) {
                return true;
            }
            self.chosen.pop();
        }
        false
    }
}

/// Fewest `l`-subsets of `[n]` whose `k`-subsets include every member of `targets`,
/// provided at most `limit` suffice. Returned masks are colex-sorted.
pub(crate) fn min_cover(n: usize, l: usize, k: usize, targets: &[u64], limit: usize) -> Option<Vec<u64>> {
    if targets.is_empty() {
        return Some(Vec::new());
    }
    let index: HashMap<u64, usize> = targets.iter().enumerate().map(|(i, &t)| (t, i)).collect();
    let mut seen = HashSet::new();
    let mut cands: Vec<(u64, Bits)> = Vec::new();
    let all = full_mask(n);
    for &t in targets {
        let free: Vec<usize> = BitIter(all & !t).collect();
        for extra in KSubsets::new(n - k, l - k) {
            let b = BitIter(extra).fold(t, |acc, i| acc | 1 << free[i]);
            if !seen.insert(b) {
                continue;
            }
            let mut bits = Bits::zeros(targets.len());
            for s in sub_masks(b, k) {
                if let Some(&i) = index.get(&s) {
                    bits.set(i);
                }
            }
            cands.push((b, bits));
        }
    }
    cands.sort_by_key(|c| c.0);
    let mut by_elem = vec![Vec::new(); targets.len()];
    for (ci, (_, bits)) in cands.iter().enumerate() {
        for (e, list) in by_elem.iter_mut().enumerate() {
            if bits.get(e) {
                list.push(ci);
            }
        }
    }
    let per_set = binomial(l, k) as usize;
    let lower = targets.len().div_ceil(per_set);
    let mut all_bits = Bits::zeros(targets.len());
    (0..targets.len()).for_each(|i| all_bits.set(i));
    let mut search = Cover { cands: &cands, by_elem, chosen: Vec::new() };
    for bound in lower..=limit {
        if search.dfs(&all_bits, bound) {
            let mut out: Vec<u64> = search.chosen.iter().map(|&c| cands[c].0).collect();
            out.sort_unstable();
            return Some(out);
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn covers_all_pairs_of_seven_with_fano() {
        let pairs: Vec<u64> = KSubsets::new(7, 2).collect();
        let c = min_cover(7, 3, 2, &pairs, 10).unwrap();
        assert_eq!(c.len(), 7);
        assert!(min_cover(7, 3, 2, &pairs, 6).is_none());
    }

    #[test]
    fn trivial_cases() {
        assert_eq!(min_cover(5, 3, 2, &[], 0), Some(vec![]));
        assert_eq!(min_cover(5, 3, 2, &[0b11], 1), Some(vec![0b111]));
        assert_eq!(min_cover(5, 3, 2, &[0b11, 0b1100], 1), None);
    }
}
