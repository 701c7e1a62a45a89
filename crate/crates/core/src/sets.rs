//! Subsets of a ground set `[n]` as single-word bit masks.
//!
//! Element `i` (1-based) lives in bit `i - 1`, so numeric order on masks of equal
//! cardinality is colex order. Every family in this crate is kept sorted that way.

use std::fmt;

use crate::error::{parse_err, Error, Result};

/// Largest supported ground set.
pub const MAX_N: usize = 64;

const fn binomial_table() -> [[u64; MAX_N + 1]; MAX_N + 1] {
    let mut t = [[0u64; MAX_N + 1]; MAX_N + 1];
    let mut n = 0;
    while n <= MAX_N {
        t[n][0] = 1;
        let mut k = 1;
        while k <= n {
            t[n][k] = t[n - 1][k - 1] + if k < n { t[n - 1][k] } else { 0 };
            k += 1;
        }
        n += 1;
    }
    t
}

static BINOMIAL: [[u64; MAX_N + 1]; MAX_N + 1] = binomial_table();

// The whole table is exact in u64; the middle of the last row is its largest entry.
const _: () = assert!(binomial_table()[64][32] == 1_832_624_140_942_590_534);

/// Exact binomial coefficient for `n <= 64`; zero when `k > n`.
pub fn binomial(n: usize, k: usize) -> u64 {
    assert!(n <= MAX_N, "binomial: n = {n} exceeds {MAX_N}");
    if k > n {
        0
    } else {
        BINOMIAL[n][k]
    }
}

/// Mask with bits `0..n` set.
#[inline]
pub fn full_mask(n: usize) -> u64 {
    if n >= 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

fn check_n(n: usize) -> Result<()> {
    if !(1..=MAX_N).contains(&n) {
        return Err(Error::Argument(format!("ground set size {n} outside 1..={MAX_N}")));
    }
    Ok(())
}

/// A subset of `[n]`.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct VertexSet {
    bits: u64,
    n: u8,
}

impl VertexSet {
    /// Builds a set from 1-based elements.
    pub fn new(n: usize, elements: &[usize]) -> Result<Self> {
        check_n(n)?;
        let mut bits = 0u64;
        for &e in elements {
            if e == 0 || e > n {
                return Err(Error::Argument(format!("element {e} outside [1, {n}]")));
            }
            bits |= 1 << (e - 1);
        }
        Ok(Self { bits, n: n as u8 })
    }

    pub fn from_bits(n: usize, bits: u64) -> Result<Self> {
        check_n(n)?;
        if bits & !full_mask(n) != 0 {
            return Err(Error::Argument(format!("mask {bits:#x} has bits above position {n}")));
        }
        Ok(Self { bits, n: n as u8 })
    }

    #[inline]
    pub(crate) fn from_bits_unchecked(n: usize, bits: u64) -> Self {
        debug_assert!(bits & !full_mask(n) == 0);
        Self { bits, n: n as u8 }
    }

    #[inline]
    pub fn bits(&self) -> u64 {
        self.bits
    }

    #[inline]
    pub fn ground(&self) -> usize {
        self.n as usize
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.bits.count_ones() as usize
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.bits == 0
    }

    #[inline]
    pub fn contains(&self, element: usize) -> bool {
        element >= 1 && element <= self.ground() && self.bits >> (element - 1) & 1 == 1
    }

    #[inline]
    pub fn is_subset(&self, other: &VertexSet) -> bool {
        self.bits & !other.bits == 0
    }

    /// Elements in increasing order, 1-based.
    pub fn elements(&self) -> impl Iterator<Item = usize> {
        BitIter(self.bits).map(|b| b + 1)
    }
}

impl PartialOrd for VertexSet {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for VertexSet {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (self.bits.count_ones(), self.bits, self.n).cmp(&(other.bits.count_ones(), other.bits, other.n))
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, e) in self.elements().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{e}")?;
        }
        f.write_str("}")
    }
}

/// Iterates the 0-based positions of set bits, lowest first.
#[derive(Clone, Copy)]
pub struct BitIter(pub u64);

impl Iterator for BitIter {
    type Item = usize;

    #[inline]
    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let b = self.0.trailing_zeros() as usize;
        self.0 &= self.0 - 1;
        Some(b)
    }
}

/// All `k`-subsets of `[n]` as masks, in colex order (Gosper's hack).
#[derive(Clone)]
pub struct KSubsets {
    next: Option<u128>,
    limit: u128,
}

impl KSubsets {
    pub fn new(n: usize, k: usize) -> Self {
        assert!(n <= MAX_N);
        let next = if k > n { None } else { Some((1u128 << k) - 1) };
        Self { next, limit: 1u128 << n }
    }

    /// Starts at an arbitrary `k`-subset mask (inclusive).
    pub(crate) fn starting_at(n: usize, first: u64) -> Self {
        Self { next: Some(first as u128), limit: 1u128 << n }
    }
}

impl Iterator for KSubsets {
    type Item = u64;

    fn next(&mut self) -> Option<u64> {
        let x = self.next?;
        if x >= self.limit {
            self.next = None;
            return None;
        }
        self.next = if x == 0 {
            None
        } else {
            let c = x & x.wrapping_neg();
            let r = x + c;
            Some((((r ^ x) >> 2) / c) | r)
        };
        Some(x as u64)
    }
}

/// The `r`-element sub-masks of `mask`, in colex order.
pub fn sub_masks(mask: u64, r: usize) -> impl Iterator<Item = u64> {
    let mut pos = [0u8; 64];
    let mut len = 0;
    for b in BitIter(mask) {
        pos[len] = b as u8;
        len += 1;
    }
    KSubsets::new(len, r).map(move |sel| BitIter(sel).fold(0u64, |acc, i| acc | 1 << pos[i]))
}

/// Lazily yields the `k`-subsets of `[n]` in colex order.
pub fn enumerate_ksubsets(n: usize, k: usize) -> impl Iterator<Item = VertexSet> {
    KSubsets::new(n, k).map(move |b| VertexSet::from_bits_unchecked(n, b))
}

/// Position of a mask in the colex order of sets with its cardinality.
pub fn colex_rank_bits(bits: u64) -> u64 {
    BitIter(bits).enumerate().map(|(i, p)| binomial(p, i + 1)).sum()
}

pub fn colex_rank(s: &VertexSet) -> u64 {
    colex_rank_bits(s.bits)
}

pub fn colex_unrank(rank: u64, n: usize, k: usize) -> Result<VertexSet> {
    check_n(n)?;
    let total = binomial(n, k);
    if rank >= total {
        return Err(Error::Range { what: "colex rank", value: rank, bound: total });
    }
    let mut r = rank;
    let mut bits = 0u64;
    let mut top = n;
    for i in (1..=k).rev() {
        // largest p < top with C(p, i) <= r
        let mut p = top - 1;
        while binomial(p, i) > r {
            p -= 1;
        }
        r -= binomial(p, i);
        bits |= 1 << p;
        top = p;
    }
    Ok(VertexSet::from_bits_unchecked(n, bits))
}

/// A duplicate-free family of `k`-subsets of `[n]`, colex-sorted.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SetFamily {
    n: usize,
    k: usize,
    members: Vec<u64>,
}

impl SetFamily {
    pub fn empty(n: usize, k: usize) -> Self {
        Self { n, k, members: Vec::new() }
    }

    /// Every `k`-subset of `[n]`.
    pub fn all(n: usize, k: usize) -> Self {
        Self { n, k, members: KSubsets::new(n, k).collect() }
    }

    /// Validates cardinalities and range, then sorts and drops duplicates.
    pub fn from_masks(n: usize, k: usize, masks: impl IntoIterator<Item = u64>) -> Result<Self> {
        check_n(n)?;
        if k > n {
            return Err(Error::Argument(format!("cardinality {k} exceeds ground set {n}")));
        }
        let full = full_mask(n);
        let mut members: Vec<u64> = Vec::new();
        for m in masks {
            if m & !full != 0 {
                return Err(Error::Argument(format!("mask {m:#x} has bits above position {n}")));
            }
            if m.count_ones() as usize != k {
                return Err(Error::Argument(format!(
                    "set {} has cardinality {}, expected {k}",
                    VertexSet::from_bits_unchecked(n, m),
                    m.count_ones()
                )));
            }
            members.push(m);
        }
        members.sort_unstable();
        members.dedup();
        Ok(Self { n, k, members })
    }

    pub fn from_sets(n: usize, k: usize, sets: &[&[usize]]) -> Result<Self> {
        let masks = sets
            .iter()
            .map(|s| VertexSet::new(n, s).map(|v| v.bits()))
            .collect::<Result<Vec<_>>>()?;
        Self::from_masks(n, k, masks)
    }

    /// Caller guarantees sorted, unique, correctly sized masks.
    pub(crate) fn from_sorted_unchecked(n: usize, k: usize, members: Vec<u64>) -> Self {
        debug_assert!(members.windows(2).all(|w| w[0] < w[1]));
        debug_assert!(members.iter().all(|m| m.count_ones() as usize == k));
        Self { n, k, members }
    }

    #[inline]
    pub fn ground(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn cardinality(&self) -> usize {
        self.k
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.members.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    #[inline]
    pub fn masks(&self) -> &[u64] {
        &self.members
    }

    pub fn iter(&self) -> impl Iterator<Item = VertexSet> + '_ {
        self.members.iter().map(move |&b| VertexSet::from_bits_unchecked(self.n, b))
    }

    #[inline]
    pub fn contains_bits(&self, bits: u64) -> bool {
        self.members.binary_search(&bits).is_ok()
    }

    pub fn contains(&self, s: &VertexSet) -> bool {
        self.contains_bits(s.bits())
    }

    /// The `k`-subsets of `[n]` not in this family.
    pub fn complement(&self) -> SetFamily {
        let mut out = Vec::with_capacity(binomial(self.n, self.k) as usize - self.len());
        let mut mine = self.members.iter().peekable();
        for m in KSubsets::new(self.n, self.k) {
            if mine.peek() == Some(&&m) {
                mine.next();
            } else {
                out.push(m);
            }
        }
        Self::from_sorted_unchecked(self.n, self.k, out)
    }

    pub fn union(&self, other: &SetFamily) -> Result<SetFamily> {
        if self.n != other.n || self.k != other.k {
            return Err(Error::Argument("union of families with different n or k".into()));
        }
        let mut members = self.members.clone();
        members.extend_from_slice(&other.members);
        members.sort_unstable();
        members.dedup();
        Ok(Self::from_sorted_unchecked(self.n, self.k, members))
    }

    /// Relabels the ground set by `perm`, where `perm[i]` is the 0-based image of position `i`.
    pub fn permuted(&self, perm: &[usize]) -> SetFamily {
        let mut members: Vec<u64> = self.members.iter().map(|&m| permute_bits(m, perm)).collect();
        members.sort_unstable();
        Self::from_sorted_unchecked(self.n, self.k, members)
    }

    pub fn to_text(&self) -> String {
        let mut s = format!("n={} k={} count={}\n", self.n, self.k, self.len());
        for v in self.iter() {
            let line: Vec<String> = v.elements().map(|e| e.to_string()).collect();
            s.push_str(&line.join(" "));
            s.push('\n');
        }
        s
    }

    /// Parses the `.sf` text format.
    pub fn parse(text: &str) -> Result<SetFamily> {
        let lines: Vec<(usize, &str)> = text.lines().enumerate().map(|(i, l)| (i + 1, l)).collect();
        let (fam, rest) = parse_section(&lines)?;
        if let Some(&(line, l)) = rest.iter().find(|(_, l)| !l.trim().is_empty()) {
            return Err(parse_err(line, format!("trailing content {l:?}")));
        }
        Ok(fam)
    }
}

impl fmt::Debug for SetFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SetFamily(n={}, k={}, ", self.n, self.k)?;
        f.debug_list().entries(self.iter()).finish()?;
        f.write_str(")")
    }
}

#[inline]
pub(crate) fn permute_bits(mut m: u64, perm: &[usize]) -> u64 {
    let mut out = 0u64;
    while m != 0 {
        let b = m.trailing_zeros() as usize;
        m &= m - 1;
        out |= 1 << perm[b];
    }
    out
}

fn parse_header(line: usize, text: &str) -> Result<(usize, usize, usize)> {
    let mut n = None;
    let mut k = None;
    let mut count = None;
    for tok in text.split_whitespace() {
        let (key, val) = tok
            .split_once('=')
            .ok_or_else(|| parse_err(line, format!("malformed header token {tok:?}")))?;
        let val: usize = val
            .parse()
            .map_err(|_| parse_err(line, format!("non-numeric header value {val:?}")))?;
        let slot = match key {
            "n" => &mut n,
            "k" => &mut k,
            "count" => &mut count,
            _ => return Err(parse_err(line, format!("unknown header key {key:?}"))),
        };
        if slot.replace(val).is_some() {
            return Err(parse_err(line, format!("repeated header key {key:?}")));
        }
    }
    match (n, k, count) {
        (Some(n), Some(k), Some(c)) => Ok((n, k, c)),
        _ => Err(parse_err(line, "header must be `n=<n> k=<k> count=<m>`")),
    }
}

/// Parses one `.sf` section from numbered lines and returns the unconsumed tail.
pub(crate) fn parse_section<'a>(
    lines: &'a [(usize, &'a str)],
) -> Result<(SetFamily, &'a [(usize, &'a str)])> {
    let mut idx = 0;
    while idx < lines.len() && (lines[idx].1.trim_start().starts_with('#') || lines[idx].1.trim().is_empty()) {
        idx += 1;
    }
    let Some(&(hline, htext)) = lines.get(idx) else {
        let line = lines.last().map_or(1, |l| l.0);
        return Err(parse_err(line, "missing header"));
    };
    let (n, k, count) = parse_header(hline, htext)?;
    check_n(n).map_err(|e| parse_err(hline, e.to_string()))?;
    if k > n {
        return Err(parse_err(hline, format!("k={k} exceeds n={n}")));
    }
    idx += 1;
    let mut members = Vec::with_capacity(count);
    for _ in 0..count {
        let Some(&(line, text)) = lines.get(idx) else {
            let line = lines.last().map_or(hline, |l| l.0);
            return Err(parse_err(line, format!("expected {count} sets, found {}", members.len())));
        };
        if text.trim() == "---" {
            return Err(parse_err(line, format!("expected {count} sets, found {}", members.len())));
        }
        let mut bits = 0u64;
        let mut prev = 0usize;
        for tok in text.split_whitespace() {
            let e: usize = tok
                .parse()
                .map_err(|_| parse_err(line, format!("non-numeric element {tok:?}")))?;
            if e == 0 || e > n {
                return Err(parse_err(line, format!("element {e} outside [1, {n}]")));
            }
            if e <= prev {
                return Err(parse_err(line, "elements must be strictly increasing"));
            }
            prev = e;
            bits |= 1 << (e - 1);
        }
        if bits.count_ones() as usize != k {
            return Err(parse_err(line, format!("set has {} elements, expected {k}", bits.count_ones())));
        }
        members.push((bits, line));
        idx += 1;
    }
    let mut sorted: Vec<(u64, usize)> = members.clone();
    sorted.sort_unstable();
    for w in sorted.windows(2) {
        if w[0].0 == w[1].0 {
            return Err(parse_err(w[1].1.max(w[0].1), "duplicate set"));
        }
    }
    let fam = SetFamily::from_sorted_unchecked(n, k, sorted.into_iter().map(|(b, _)| b).collect());
    Ok((fam, &lines[idx..]))
}

/// All `(k-1)`-subsets of members of a `k`-uniform family.
pub fn shadow(f: &SetFamily) -> Result<SetFamily> {
    if f.k == 0 {
        return Err(Error::Argument("shadow of a family of empty sets".into()));
    }
    let mut out = Vec::with_capacity(f.len() * f.k);
    for &m in &f.members {
        for b in BitIter(m) {
            out.push(m & !(1 << b));
        }
    }
    out.sort_unstable();
    out.dedup();
    Ok(SetFamily::from_sorted_unchecked(f.n, f.k - 1, out))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn naive_binomial(n: u64, k: u64) -> u64 {
        // multiplicative form in u128, independent of the Pascal table
        if k > n {
            return 0;
        }
        let mut acc: u128 = 1;
        for i in 0..k.min(n - k) {
            acc = acc * (n - i) as u128 / (i + 1) as u128;
        }
        acc as u64
    }

    #[test]
    fn binomial_values() {
        assert_eq!(binomial(5, 2), 10);
        assert_eq!(binomial(30, 3), 4060);
        assert_eq!(binomial(11, 3), KSubsets::new(11, 3).count() as u64);
        assert_eq!(binomial(11, 3), 165);
        assert_eq!(binomial(4, 7), 0);
        for n in 0..=64u64 {
            for k in 0..=n {
                assert_eq!(binomial(n as usize, k as usize), naive_binomial(n, k), "C({n},{k})");
            }
        }
    }

    #[test]
    fn enumeration_small_cases() {
        let v: Vec<String> = enumerate_ksubsets(3, 2).map(|s| s.to_string()).collect();
        assert_eq!(v, ["{1,2}", "{1,3}", "{2,3}"]);
        let empties: Vec<VertexSet> = enumerate_ksubsets(4, 0).collect();
        assert_eq!(empties.len(), 1);
        assert!(empties[0].is_empty());
        assert_eq!(enumerate_ksubsets(9, 4).count(), 126);
        assert_eq!(KSubsets::new(64, 64).collect::<Vec<_>>(), vec![u64::MAX]);
        assert_eq!(KSubsets::new(64, 63).count(), 64);
        assert_eq!(KSubsets::new(3, 4).count(), 0);
    }

    #[test]
    fn rank_unrank_exhaustive() {
        for n in 1..=20 {
            for k in 0..=5.min(n) {
                let mut prev = None;
                for (r, s) in enumerate_ksubsets(n, k).enumerate() {
                    assert_eq!(colex_rank(&s), r as u64);
                    assert_eq!(colex_unrank(r as u64, n, k).unwrap(), s);
                    if let Some(p) = prev {
                        assert!(p < s);
                    }
                    prev = Some(s);
                }
                assert_eq!(enumerate_ksubsets(n, k).count() as u64, binomial(n, k));
            }
        }
    }

    #[test]
    fn rank_extremes_and_range_error() {
        let s = VertexSet::new(7, &[1, 2]).unwrap();
        assert_eq!(colex_rank(&s), 0);
        let last = colex_unrank(binomial(9, 4) - 1, 9, 4).unwrap();
        assert_eq!(last, VertexSet::new(9, &[6, 7, 8, 9]).unwrap());
        assert!(matches!(colex_unrank(126, 9, 4), Err(Error::Range { .. })));
    }

    #[test]
    fn shadow_examples() {
        let f = SetFamily::from_sets(5, 3, &[&[1, 2, 3]]).unwrap();
        let sh = shadow(&f).unwrap();
        assert_eq!(sh, SetFamily::from_sets(5, 2, &[&[1, 2], &[1, 3], &[2, 3]]).unwrap());
        assert!(matches!(shadow(&SetFamily::all(4, 0)), Err(Error::Argument(_))));
    }

    #[test]
    fn fano_shadow_is_every_pair_once() {
        let fano: &[&[usize]] = &[&[1, 2, 4], &[2, 3, 5], &[3, 4, 6], &[4, 5, 7], &[1, 5, 6], &[2, 6, 7], &[1, 3, 7]];
        let f = SetFamily::from_sets(7, 3, fano).unwrap();
        let sh = shadow(&f).unwrap();
        assert_eq!(sh, SetFamily::all(7, 2));
        for pair in KSubsets::new(7, 2) {
            assert_eq!(f.masks().iter().filter(|&&t| t & pair == pair).count(), 1);
        }
    }

    #[test]
    fn sf_text_round_trip_and_errors() {
        let f = SetFamily::from_sets(6, 3, &[&[2, 4, 6], &[1, 2, 3]]).unwrap();
        let text = f.to_text();
        assert_eq!(text, "n=6 k=3 count=2\n1 2 3\n2 4 6\n");
        assert_eq!(SetFamily::parse(&format!("# comment\n{text}")).unwrap(), f);

        let dup = "n=6 k=3 count=2\n1 2 3\n1 2 3\n";
        assert!(matches!(SetFamily::parse(dup), Err(Error::Parse { line: 3, .. })));
        let card = "n=6 k=3 count=1\n1 2\n";
        assert!(matches!(SetFamily::parse(card), Err(Error::Parse { line: 2, .. })));
        let count = "n=6 k=3 count=3\n1 2 3\n";
        assert!(matches!(SetFamily::parse(count), Err(Error::Parse { .. })));
        let extra = "n=6 k=3 count=1\n1 2 3\n2 3 4\n";
        assert!(matches!(SetFamily::parse(extra), Err(Error::Parse { line: 3, .. })));
        let order = "n=6 k=3 count=1\n3 2 1\n";
        assert!(matches!(SetFamily::parse(order), Err(Error::Parse { line: 2, .. })));
    }

    #[test]
    fn complement_partitions_the_level() {
        let f = SetFamily::from_sets(5, 2, &[&[1, 2], &[3, 5]]).unwrap();
        let c = f.complement();
        assert_eq!(c.len(), 8);
        assert_eq!(f.union(&c).unwrap(), SetFamily::all(5, 2));
    }
}
