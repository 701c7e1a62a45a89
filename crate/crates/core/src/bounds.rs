//! Closed-form and asymptotic bounds on domination numbers of inclusion graphs.
//!
//! Asymptotic coefficients are fractions of `C(n,k)`. Turán densities are inputs,
//! never computed.

use serde::Serialize;

use crate::error::{Error, Result};

/// `C(n,2) - ⌊(n+1)²/8⌋`, exact for any `n ≥ 2`.
pub fn gamma32(n: u64) -> u64 {
    let n = n as u128;
    (n * (n - 1) / 2 - (n + 1) * (n + 1) / 8) as u64
}

/// `⌊(n+1)²/8⌋`.
pub fn lemma2_rhs(n: u64) -> u64 {
    let n = n as u128;
    ((n + 1) * (n + 1) / 8) as u64
}

const BISECT_TOL: f64 = 1e-12;
const BISECT_MAX_ITER: usize = 60;

/// Root of `(k-1)x^k - kx + 1` in `[0, 1/2]`, by bisection.
pub fn alpha_star(k: u32) -> Result<f64> {
    if k < 3 {
        return Err(Error::Argument(format!("alpha_star needs k >= 3, got {k}")));
    }
    let p = |x: f64| (k - 1) as f64 * x.powi(k as i32) - k as f64 * x + 1.0;
    let (mut lo, mut hi) = (0.0_f64, 0.5_f64);
    if !(p(lo) > 0.0 && p(hi) < 0.0) {
        return Err(Error::Internal(format!("no sign change on [0, 1/2] for k={k}")));
    }
    for _ in 0..BISECT_MAX_ITER {
        let mid = 0.5 * (lo + hi);
        if p(mid) > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
        if hi - lo < BISECT_TOL {
            break;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// `1 - (k-1)²·a(1-a)^{k-2}/k` at `a = alpha_star(k)`.
pub fn new_upper(k: u32) -> Result<f64> {
    let a = alpha_star(k)?;
    Ok(1.0 - upper_gain(k, a))
}

fn upper_gain(k: u32, a: f64) -> f64 {
    let k1 = (k - 1) as f64;
    k1 * k1 * a * (1.0 - a).powi(k as i32 - 2) / k as f64
}

/// `(α*, new_upper(k))`.
pub fn theorem3(k: u32) -> Result<(f64, f64)> {
    Ok((alpha_star(k)?, new_upper(k)?))
}

/// `(k-1)a(1-a)^{k-1} / (1-a^k)`, the fraction of `C(n,k)` gained by the layered construction.
pub fn layered_rate(k: u32, a: f64) -> Result<f64> {
    if k < 2 || !(a > 0.0 && a < 1.0) {
        return Err(Error::Argument(format!("need k >= 2 and 0 < a < 1, got k={k} a={a}")));
    }
    let k1 = (k - 1) as f64;
    Ok(k1 * a * (1.0 - a).powi(k as i32 - 1) / (1.0 - a.powi(k as i32)))
}

fn check_density(t: f64) -> Result<()> {
    if t > 0.0 && t < 1.0 {
        Ok(())
    } else {
        Err(Error::Argument(format!("Turán density must lie in (0,1), got {t}")))
    }
}

/// `(1 - (k-1)/k·t_k, 1 - ½((k-1)/k)^{k-1})`.
pub fn gerbner_bounds(k: u32, tk: f64) -> Result<(f64, f64)> {
    if k < 2 {
        return Err(Error::Argument(format!("need k >= 2, got {k}")));
    }
    check_density(tk)?;
    let r = (k - 1) as f64 / k as f64;
    Ok((1.0 - r * tk, 1.0 - 0.5 * r.powi(k as i32 - 1)))
}

/// `1 - (C(l,k)-2)/(C(l,k)-1)·t`.
pub fn general_bounds_l(l: u32, k: u32, tlk: f64) -> Result<f64> {
    if !(2 <= k && k < l && l <= 64) {
        return Err(Error::Argument(format!("need 2 <= k < l <= 64, got l={l} k={k}")));
    }
    check_density(tlk)?;
    let c = crate::sets::binomial(l as usize, k as usize) as f64;
    Ok(1.0 - (c - 2.0) / (c - 1.0) * tlk)
}

/// `(l+3)/((l-1)(l+1))`.
pub fn gamma_l2(l: u32) -> Result<f64> {
    if l < 3 {
        return Err(Error::Argument(format!("need l >= 3, got {l}")));
    }
    let l = l as f64;
    Ok((l + 3.0) / ((l - 1.0) * (l + 1.0)))
}

/// Default Turán density upper bounds, inverted from the published lower bounds.
pub const DEFAULT_TK: [(u32, f64); 5] = [(3, 0.5936), (4, 0.7373), (5, 0.7697), (6, 0.8339), (7, 0.8411)];

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BoundsRow {
    pub k: u32,
    pub turan_upper_tk: f64,
    pub lower: f64,
    pub gerbner_upper: f64,
    pub new_upper: f64,
    pub alpha_star: f64,
}

impl BoundsRow {
    /// Three-decimal values rounded outward: lower bound down, upper bounds up.
    pub fn rounded(&self) -> (f64, f64, f64) {
        (round_down3(self.lower), round_up3(self.gerbner_upper), round_up3(self.new_upper))
    }
}

// The 1e-9 slack keeps values that are exact thousandths from moving a unit.
fn round_down3(x: f64) -> f64 {
    (x * 1000.0 + 1e-9).floor() / 1000.0
}

fn round_up3(x: f64) -> f64 {
    (x * 1000.0 - 1e-9).ceil() / 1000.0
}

pub fn table1(config: &[(u32, f64)]) -> Result<Vec<BoundsRow>> {
    config
        .iter()
        .map(|&(k, tk)| {
            if k < 3 {
                return Err(Error::Argument(format!("table rows need k >= 3, got {k}")));
            }
            let (lower, gerbner_upper) = gerbner_bounds(k, tk)?;
            Ok(BoundsRow {
                k,
                turan_upper_tk: tk,
                lower,
                gerbner_upper,
                new_upper: new_upper(k)?,
                alpha_star: alpha_star(k)?,
            })
        })
        .collect()
}

/// `t_k = k(1-L)/(k-1)`, the density whose lower bound is `L`.
pub fn invert_lower(k: u32, lower: f64) -> f64 {
    k as f64 * (1.0 - lower) / (k - 1) as f64
}
