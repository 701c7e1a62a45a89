//! Candidate dominating sets of `G_{l,k}`, split by level.

use crate::error::{parse_err, Error, Result};
use crate::sets::{parse_section, SetFamily, VertexSet};

/// A vertex set of the inclusion graph `G_{l,k}` on `[n]`: the chosen `k`-sets
/// (`lower`) and the chosen `l`-sets (`upper`).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DomPair {
    n: usize,
    l: usize,
    k: usize,
    lower: SetFamily,
    upper: SetFamily,
}

impl DomPair {
    pub fn new(lower: SetFamily, upper: SetFamily) -> Result<Self> {
        let n = lower.ground();
        let (k, l) = (lower.cardinality(), upper.cardinality());
        if upper.ground() != n {
            return Err(Error::Argument(format!(
                "levels over different ground sets ({n} and {})",
                upper.ground()
            )));
        }
        if !(1 <= k && k < l && l <= n) {
            return Err(Error::Argument(format!("need 1 <= k < l <= n, got k={k} l={l} n={n}")));
        }
        Ok(Self { n, l, k, lower, upper })
    }

    pub fn empty(n: usize, l: usize, k: usize) -> Result<Self> {
        Self::new(SetFamily::empty(n, k), SetFamily::empty(n, l))
    }

    pub(crate) fn from_masks(n: usize, l: usize, k: usize, lower: Vec<u64>, upper: Vec<u64>) -> Self {
        let lower = SetFamily::from_masks(n, k, lower).expect("lower level masks");
        let upper = SetFamily::from_masks(n, l, upper).expect("upper level masks");
        Self { n, l, k, lower, upper }
    }

    #[inline]
    pub fn ground(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn l(&self) -> usize {
        self.l
    }

    #[inline]
    pub fn k(&self) -> usize {
        self.k
    }

    #[inline]
    pub fn lower(&self) -> &SetFamily {
        &self.lower
    }

    #[inline]
    pub fn upper(&self) -> &SetFamily {
        &self.upper
    }

    /// Total number of chosen vertices.
    pub fn size(&self) -> usize {
        self.lower.len() + self.upper.len()
    }

    /// Members as one list, lower level first, each level in colex order.
    pub fn members(&self) -> impl Iterator<Item = VertexSet> + '_ {
        self.lower.iter().chain(self.upper.iter())
    }

    pub fn contains(&self, v: &VertexSet) -> bool {
        match v.len() {
            x if x == self.k => self.lower.contains(v),
            x if x == self.l => self.upper.contains(v),
            _ => false,
        }
    }

    /// Copy without one member (no-op if absent).
    pub fn without(&self, v: &VertexSet) -> DomPair {
        let mut out = self.clone();
        let drop = |f: &SetFamily| {
            SetFamily::from_masks(f.ground(), f.cardinality(), f.masks().iter().copied().filter(|&m| m != v.bits()))
                .expect("subfamily")
        };
        if v.len() == self.k {
            out.lower = drop(&self.lower);
        } else if v.len() == self.l {
            out.upper = drop(&self.upper);
        }
        out
    }

    /// Relabels `[n]`; `perm[i]` is the 0-based image of position `i`.
    pub fn permuted(&self, perm: &[usize]) -> DomPair {
        DomPair {
            n: self.n,
            l: self.l,
            k: self.k,
            lower: self.lower.permuted(perm),
            upper: self.upper.permuted(perm),
        }
    }

    /// Two `.sf` sections separated by `---`, lower level first.
    pub fn to_text(&self) -> String {
        format!("{}---\n{}", self.lower.to_text(), self.upper.to_text())
    }

    pub fn parse(text: &str) -> Result<DomPair> {
        let lines: Vec<(usize, &str)> = text.lines().enumerate().map(|(i, l)| (i + 1, l)).collect();
        let (lower, rest) = parse_section(&lines)?;
        let sep = rest.iter().position(|(_, l)| !l.trim().is_empty());
        let rest = match sep {
            Some(i) if rest[i].1.trim() == "---" => &rest[i + 1..],
            Some(i) => return Err(parse_err(rest[i].0, "expected `---` between sections")),
            None => {
                let line = lines.last().map_or(1, |l| l.0);
                return Err(parse_err(line, "missing `---` and upper section"));
            }
        };
        let (upper, tail) = parse_section(rest)?;
        if let Some(&(line, _)) = tail.iter().find(|(_, l)| !l.trim().is_empty()) {
            return Err(parse_err(line, "trailing content after upper section"));
        }
        let first_line = rest.first().map_or(1, |l| l.0);
        DomPair::new(lower, upper).map_err(|e| parse_err(first_line, e.to_string()))
    }
}
