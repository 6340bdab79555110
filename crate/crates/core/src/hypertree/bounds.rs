use serde::Serialize;

use crate::binom::{binom_checked, ln_binom};
use crate::error::{invalid, Result};

/// Euler–Mascheroni constant.
pub const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

/// Natural logarithms of the counting bounds for `n`-vertex `d`-hypertrees, with the
/// per-face constant `κ` of each bound written as `(κ n)^exponent`.
///
/// Lower-order `o(1)` factors are dropped.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoundReport {
    pub n: u32,
    pub d: u32,
    /// Collapsible hypertrees by coning: `(n e^{-(H_d - 1)})^C(n-2, d)`.
    pub log_lower_cnd: f64,
    pub cnd_per_face: f64,
    /// Weaker closed form of the coning bound: `(e^{1-γ} n / (d+1))^C(n-2, d)`.
    pub log_lower_cnd_weak: f64,
    pub cnd_weak_per_face: f64,
    /// Growth-process lower bound `(e^{1+α} n / (d+1))^C(n-1, d)`, when `α` is supplied.
    pub log_lower_thm1: Option<f64>,
    pub thm1_per_face: Option<f64>,
    /// Counting all complexes with `C(n-1, d)` faces: `(e n / (d+1))^C(n-1, d)`.
    pub log_upper_kalai: f64,
    pub upper_per_face: f64,
    /// Worst-case co-shadow bound `(n / (d+1))^C(n-1, d)`.
    pub log_lower_corollary: f64,
    pub corollary_per_face: f64,
}

fn binom_f64(n: u64, k: u64) -> f64 {
    binom_checked(n, k).map_or_else(|| ln_binom(n, k).exp(), |v| v as f64)
}

fn harmonic(d: u32) -> f64 {
    (1..=d).map(|i| 1.0 / i as f64).sum()
}

pub fn bound_evaluators(n: u32, d: u32, alpha: Option<f64>) -> Result<BoundReport> {
    if d == 0 || n <= d {
        return invalid(format!("bounds need n > d >= 1, got n = {n}, d = {d}"));
    }
    let (nf, df) = (n as f64, d as f64);
    let e_lo = binom_f64(n as u64 - 2, d as u64);
    let e_hi = binom_f64(n as u64 - 1, d as u64);
    let cnd_exp = -(harmonic(d) - 1.0);
    let weak_log = 1.0 - EULER_GAMMA - (df + 1.0).ln();
    let ln_n = nf.ln();
    let ln_d1 = (df + 1.0).ln();
    Ok(BoundReport {
        n,
        d,
        log_lower_cnd: e_lo * (ln_n + cnd_exp),
        cnd_per_face: cnd_exp.exp(),
        log_lower_cnd_weak: e_lo * (ln_n + weak_log),
        cnd_weak_per_face: weak_log.exp(),
        log_lower_thm1: alpha.map(|a| e_hi * (1.0 + a + ln_n - ln_d1)),
        thm1_per_face: alpha.map(|a| (1.0 + a).exp() / (df + 1.0)),
        log_upper_kalai: e_hi * (1.0 + ln_n - ln_d1),
        upper_per_face: 1f64.exp() / (df + 1.0),
        log_lower_corollary: e_hi * (ln_n - ln_d1),
        corollary_per_face: 1.0 / (df + 1.0),
    })
}
