//! Exact minimum dominating and independent dominating sets of `G_{l,k}`.

mod cover;
pub mod exhaustive;
mod search;

use std::sync::atomic::{AtomicBool, AtomicU64, Ordering};
use std::time::{Duration, Instant};

use serde::Serialize;

use crate::dompair::DomPair;
use crate::error::{Error, Result};
use crate::hypergraph::{verify_dominating, verify_independent};
use crate::par::{self, Execution};
use crate::sets::{binomial, SetFamily, MAX_N};
use search::{Found, Goal, Instance, Run};

/// Largest `C(n,k) + C(n,l)` accepted by [`solve`].
pub const SEARCH_GUARD: u64 = 200_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Mode {
    #[serde(rename = "gamma")]
    Gamma,
    #[serde(rename = "i")]
    Independent,
}

impl Mode {
    pub fn name(self) -> &'static str {
        match self {
            Mode::Gamma => "gamma",
            Mode::Independent => "i",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Optimal,
    UpperBoundOnly,
}

#[derive(Clone, Debug, Default)]
pub struct SolveOptions {
    /// Soft limit, checked between nodes.
    pub budget: Option<Duration>,
    /// Verified dominating sets used as initial incumbents.
    pub warm_starts: Vec<DomPair>,
    pub execution: Execution,
}

#[derive(Clone, Debug)]
pub struct SolveResult {
    pub size: usize,
    pub witness: DomPair,
    pub status: Status,
    pub lower_bound: usize,
    pub nodes_explored: u64,
    pub elapsed: Duration,
}

pub(crate) fn check_instance(n: usize, l: usize, k: usize) -> Result<()> {
    if !(1 <= k && k < l && l <= n && n <= MAX_N) {
        return Err(Error::Argument(format!("need 1 <= k < l <= n <= {MAX_N}, got n={n} l={l} k={k}")));
    }
    let size = binomial(n, k) + binomial(n, l);
    if size > SEARCH_GUARD {
        return Err(Error::Argument(format!(
            "G_{{{l},{k}}} on [{n}] has {size} vertices, above the search guard of {SEARCH_GUARD}"
        )));
    }
    Ok(())
}

fn to_dompair(n: usize, l: usize, k: usize, f: &Found) -> DomPair {
    DomPair::from_masks(n, l, k, f.lower.clone(), f.upper.clone())
}

// Either full level is an independent dominating set.
fn full_level(n: usize, l: usize, k: usize) -> DomPair {
    if binomial(n, k) <= binomial(n, l) {
        DomPair::new(SetFamily::all(n, k), SetFamily::empty(n, l)).expect("valid levels")
    } else {
        DomPair::new(SetFamily::empty(n, k), SetFamily::all(n, l)).expect("valid levels")
    }
}

fn check_warm(d: &DomPair, n: usize, l: usize, k: usize, mode: Mode) -> Result<()> {
    if (d.ground(), d.l(), d.k()) != (n, l, k) {
        return Err(Error::Precondition(format!(
            "warm start is for n={} l={} k={}, instance is n={n} l={l} k={k}",
            d.ground(),
            d.l(),
            d.k()
        )));
    }
    if let Some(w) = verify_dominating(d).witness {
        return Err(Error::Precondition(format!("warm start does not dominate {w}")));
    }
    if mode == Mode::Independent {
        if let Some((a, b)) = verify_independent(d).witness {
            return Err(Error::Precondition(format!("warm start is not independent: {a} inside {b}")));
        }
    }
    Ok(())
}

const MIN_TASKS: usize = 64;
const MAX_TASKS: usize = 20_000;

/// Minimum dominating set (`Mode::Gamma`) or minimum independent dominating set
/// (`Mode::Independent`) of `G_{l,k}` on `[n]`.
///
/// The reported size, status and lower bound do not depend on the thread count;
/// with no budget the witness does not either.
pub fn solve(n: usize, l: usize, k: usize, mode: Mode, opts: &SolveOptions) -> Result<SolveResult> {
    check_instance(n, l, k)?;
    let start = Instant::now();
    let deadline = opts.budget.map(|b| start + b);
    let inst = Instance::new(n, l, k, mode);

    let mut incumbent = full_level(n, l, k);
    for w in &opts.warm_starts {
        check_warm(w, n, l, k, mode)?;
        if w.size() < incumbent.size() {
            incumbent = w.clone();
        }
    }
    let key = AtomicU64::new((incumbent.size() as u64) << 32);
    let stop = AtomicBool::new(false);

    // Parallel tasks are the classes at the shallowest depth giving enough of them.
    let mut nodes = 0;
    let mut tasks = vec![inst.root()];
    for depth in k..n {
        let mut run = Run::new(&inst, Goal::Minimise { key: &key, task: 1 }, deadline, &stop)
            .collecting_at(depth, MAX_TASKS);
        run.explore(&mut inst.root());
        nodes += run.nodes;
        if run.overflow || stop.load(Ordering::Relaxed) {
            break;
        }
        tasks = run.collected;
        if tasks.len() >= MIN_TASKS {
            break;
        }
    }
    let indexed: Vec<(u64, _)> = tasks.into_iter().enumerate().map(|(i, t)| (i as u64 + 1, t)).collect();
    let results = par::map(opts.execution, &indexed, |(task, node)| {
        let mut run = Run::new(&inst, Goal::Minimise { key: &key, task: *task }, deadline, &stop);
        run.explore(&mut node.clone());
        (run.best.map(|f| (f.size(), *task, f)), run.nodes)
    });
    let mut best: Option<(usize, u64, Found)> = None;
    for (found, count) in results {
        nodes += count;
        if let Some(f) = found {
            if best.as_ref().map_or(true, |b| (f.0, f.1) < (b.0, b.1)) {
                best = Some(f);
            }
        }
    }
    let witness = match best {
        Some((size, _, f)) if size < incumbent.size() => to_dompair(n, l, k, &f),
        _ => incumbent,
    };
    if !verify_dominating(&witness).dominating
        || (mode == Mode::Independent && !verify_independent(&witness).independent)
    {
        return Err(Error::Internal("search produced an invalid witness".into()));
    }
    let size = witness.size();
    let (status, lower_bound) = if stop.load(Ordering::Relaxed) {
        (Status::UpperBoundOnly, inst.root_bound().min(size))
    } else {
        (Status::Optimal, size)
    };
    Ok(SolveResult { size, witness, status, lower_bound, nodes_explored: nodes, elapsed: start.elapsed() })
}

/// One optimal solution for every relabeling class of optimal lower levels.
///
/// Upper levels are one minimum completion each; lower levels are pairwise
/// non-isomorphic under permutations of `[n]`.
pub fn optimal_classes(n: usize, l: usize, k: usize, mode: Mode, opts: &SolveOptions) -> Result<Vec<DomPair>> {
    let opt = solve(n, l, k, mode, opts)?;
    if opt.status != Status::Optimal {
        return Err(Error::Domain(format!("optimum of G_{{{l},{k}}} on [{n}] not proven within budget")));
    }
    let inst = Instance::new(n, l, k, mode);
    let stop = AtomicBool::new(false);
    let deadline = opts.budget.map(|b| Instant::now() + b);
    let mut run = Run::new(&inst, Goal::Enumerate { target: opt.size }, deadline, &stop);
    run.explore(&mut inst.root());
    if stop.load(Ordering::Relaxed) {
        return Err(Error::Domain("class enumeration ran out of budget".into()));
    }
    Ok(run.all.iter().map(|f| to_dompair(n, l, k, f)).collect())
}
