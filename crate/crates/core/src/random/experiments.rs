use std::collections::HashMap;

use rand::Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::binom::binom;
use crate::complex::SimplicialComplex;
use crate::error::{invalid, Error, Result};
use crate::hypertree::{
    betti_top, certify, coshadow, coshadow_lower_bound, cone_hypertree, enumerate_hypertrees, peel_collapse,
};
use crate::stats::{chi_square_uniform, wilson_interval, ChiSquareTest, MeanStderr, Z_99};

use super::{
    growth_process, sample_1out_eps, sample_y_m, sample_y_p, simplex_boundary_count, substream, BaseExchangeChain,
};

/// Fraction of uniform hypertree-sized face sets that are hypertrees, with a 99% Wilson
/// interval.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ProbabilityEstimate {
    pub trials: u64,
    pub successes: u64,
    pub estimate: f64,
    pub ci_low: f64,
    pub ci_high: f64,
}

pub fn hypertree_probability(n: u32, d: u32, trials: u64, seed: u64) -> Result<ProbabilityEstimate> {
    if trials == 0 {
        return invalid("need at least one trial");
    }
    if d == 0 || n <= d {
        return invalid(format!("need n > d >= 1, got n = {n}, d = {d}"));
    }
    let k = binom(n as u64 - 1, d as u64);
    let hits: Vec<bool> = (0..trials)
        .into_par_iter()
        .map(|i| {
            let x = sample_y_m(n, d, k, &mut substream(seed, "hypertree-prob", i)).expect("validated parameters");
            certify(&x).is_hypertree
        })
        .collect();
    let successes = hits.iter().filter(|&&h| h).count() as u64;
    let (ci_low, ci_high) = wilson_interval(successes, trials, Z_99);
    Ok(ProbabilityEstimate { trials, successes, estimate: successes as f64 / trials as f64, ci_low, ci_high })
}

/// Top Betti numbers of 1-out samples against their simplex-boundary counts.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OneOutHomology {
    pub n: u32,
    pub d: u32,
    pub eps: f64,
    pub trials: u64,
    pub betti: MeanStderr,
    /// Mean top Betti number divided by `C(n, d)`.
    pub normalized: f64,
    pub boundaries: MeanStderr,
    /// Mean over variance of the boundary counts; `None` when the variance is zero.
    pub boundary_dispersion: Option<f64>,
    /// Fraction of trials whose Betti number equals the boundary count.
    pub boundary_match: f64,
    pub betti_values: Vec<u64>,
    pub boundary_values: Vec<u64>,
}

pub fn one_out_homology(n: u32, d: u32, eps: f64, trials: u64, seed: u64) -> Result<OneOutHomology> {
    if trials < 2 {
        return invalid("need at least two trials");
    }
    if d == 0 || n <= d + 1 {
        return invalid(format!("need n > d + 1 and d >= 1, got n = {n}, d = {d}"));
    }
    if !(0.0..=1.0).contains(&eps) {
        return invalid(format!("eps must lie in [0, 1], got {eps}"));
    }
    let pairs: Vec<(u64, u64)> = (0..trials)
        .into_par_iter()
        .map(|i| {
            let s = sample_1out_eps(n, d, eps, &mut substream(seed, "one-out", i)).expect("validated parameters");
            (betti_top(&s.complex) as u64, simplex_boundary_count(&s.complex))
        })
        .collect();
    let (betti_values, boundary_values): (Vec<u64>, Vec<u64>) = pairs.iter().copied().unzip();
    let as_f64 = |v: &[u64]| v.iter().map(|&x| x as f64).collect::<Vec<_>>();
    let betti = MeanStderr::of(&as_f64(&betti_values));
    let boundaries = MeanStderr::of(&as_f64(&boundary_values));
    let var = boundaries.variance();
    let matches = pairs.iter().filter(|(b, s)| b == s).count();
    Ok(OneOutHomology {
        n,
        d,
        eps,
        trials,
        normalized: betti.mean / binom(n as u64, d as u64) as f64,
        betti,
        boundaries,
        boundary_dispersion: (var > 0.0).then(|| boundaries.mean / var),
        boundary_match: matches as f64 / trials as f64,
        betti_values,
        boundary_values,
    })
}

/// Steps discarded before the chain is sampled.
pub const CHAIN_BURN_IN: u64 = 1000;

/// Visit frequencies of the base-exchange chain against the uniform law on all
/// hypertrees.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ChainUniformity {
    pub n: u32,
    pub d: u32,
    pub steps: u64,
    pub thin: u64,
    /// Number of hypertrees, by exhaustive enumeration.
    pub states: u64,
    pub visited: u64,
    pub samples: u64,
    /// Steps that changed the state.
    pub moves: u64,
    pub chi_square: ChiSquareTest,
}

/// Runs the chain from the cone hypertree for `steps` steps after a burn-in, recording the
/// state every `thin` steps, and tests the counts for uniformity at 99%. Every new state
/// is re-certified; a failure is an invariant violation.
pub fn chain_uniformity(n: u32, d: u32, steps: u64, thin: u64, seed: u64) -> Result<ChainUniformity> {
    if thin == 0 || steps < thin {
        return invalid("need thin >= 1 and steps >= thin");
    }
    let states = enumerate_hypertrees(n, d, false)?.hypertree_count;
    if states < 2 {
        return invalid(format!("only {states} hypertree(s) for n = {n}, d = {d}"));
    }
    let mut chain = BaseExchangeChain::new(&cone_hypertree(n, d)?)?;
    let mut rng = substream(seed, "chain", 0);
    let mut counts: HashMap<Vec<u64>, u64> = HashMap::new();
    let (mut moves, mut samples) = (0, 0);
    for step in 0..CHAIN_BURN_IN + steps {
        let t = chain.step(&mut rng)?;
        if t.added != t.removed {
            moves += 1;
            if !certify(&chain.complex()).is_hypertree {
                return Err(Error::Invariant(format!("step {step} left the set of hypertrees")));
            }
        }
        if step >= CHAIN_BURN_IN && (step - CHAIN_BURN_IN + 1) % thin == 0 {
            *counts.entry(chain.state().to_vec()).or_insert(0) += 1;
            samples += 1;
        }
    }
    let visited = counts.len() as u64;
    if visited > states {
        return Err(Error::Invariant(format!("visited {visited} states but only {states} exist")));
    }
    let mut hist: Vec<u64> = counts.into_values().collect();
    hist.resize(states as usize, 0);
    hist.sort_unstable();
    let chi_square = chi_square_uniform(&hist, 0.99);
    Ok(ChainUniformity { n, d, steps, thin, states, visited, samples, moves, chi_square })
}

/// Co-shadow sizes of random growth prefixes against the guaranteed lower bound.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CoshadowBoundCheck {
    pub n: u32,
    pub d: u32,
    pub complexes: u64,
    pub violations: u64,
    /// Smallest `|co-shadow| - bound` seen.
    pub min_slack: i64,
}

/// Draws `complexes` acyclic complexes as prefixes of uniformly random length of the
/// growth process, and computes each co-shadow from scratch.
pub fn coshadow_bound_check(n: u32, d: u32, complexes: u64, seed: u64) -> Result<CoshadowBoundCheck> {
    if complexes == 0 {
        return invalid("need at least one complex");
    }
    let slacks = (0..complexes)
        .into_par_iter()
        .map(|i| {
            let mut rng = substream(seed, "coshadow-bound", i);
            let trace = growth_process(n, d, &mut rng)?;
            let m = rng.random_range(0..=trace.faces.len());
            let x = SimplicialComplex::from_ranks(n, d, trace.faces[..m].to_vec())?;
            let size = coshadow(&x)?.len() as i64;
            Ok(size - coshadow_lower_bound(n, d, m as u64)? as i64)
        })
        .collect::<Result<Vec<i64>>>()?;
    Ok(CoshadowBoundCheck {
        n,
        d,
        complexes,
        violations: slacks.iter().filter(|&&s| s < 0).count() as u64,
        min_slack: slacks.iter().copied().min().unwrap_or(0),
    })
}

/// Peeling of random complexes under many initial orders.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PeelConfluence {
    pub n: u32,
    pub d: u32,
    pub p: f64,
    pub complexes: u64,
    pub orders: u64,
    /// Complexes where some order produced a different core.
    pub mismatches: u64,
    pub collapsible: u64,
    pub mean_core_faces: f64,
}

pub fn peel_confluence(n: u32, d: u32, p: f64, complexes: u64, orders: u64, seed: u64) -> Result<PeelConfluence> {
    if complexes == 0 || orders == 0 {
        return invalid("need at least one complex and one order");
    }
    let runs = (0..complexes)
        .into_par_iter()
        .map(|i| {
            let mut rng = substream(seed, "peel", i);
            let x = sample_y_p(n, d, p, &mut rng)?;
            let reference = peel_collapse(&x, None);
            let agree =
                (0..orders).all(|_| peel_collapse(&x, Some(rng.random())).core == reference.core);
            Ok((agree, reference.collapsible, reference.core.len()))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(PeelConfluence {
        n,
        d,
        p,
        complexes,
        orders,
        mismatches: runs.iter().filter(|r| !r.0).count() as u64,
        collapsible: runs.iter().filter(|r| r.1).count() as u64,
        mean_core_faces: runs.iter().map(|r| r.2 as f64).sum::<f64>() / complexes as f64,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trees_on_four_vertices() {
        let e = hypertree_probability(4, 1, 4000, 11).unwrap();
        assert!(e.ci_low <= 0.8 && 0.8 <= e.ci_high, "{e:?}");
        assert_eq!(e, hypertree_probability(4, 1, 4000, 11).unwrap());
    }

    #[test]
    fn single_simplex_always_succeeds() {
        let e = hypertree_probability(3, 2, 10, 0).unwrap();
        assert_eq!(e.successes, 10);
        assert!(hypertree_probability(3, 2, 0, 0).is_err());
    }

    #[test]
    fn chain_on_trees_of_four_vertices() {
        let r = chain_uniformity(4, 1, 20_000, 10, 3).unwrap();
        assert_eq!(r.states, 16);
        assert_eq!(r.visited, 16);
        assert_eq!(r.samples, 2000);
        assert!(r.chi_square.pass, "{r:?}");
        assert_eq!(r, chain_uniformity(4, 1, 20_000, 10, 3).unwrap());
    }

    #[test]
    fn small_drivers() {
        let b = coshadow_bound_check(8, 2, 40, 1).unwrap();
        assert_eq!(b.violations, 0);
        assert!(b.min_slack >= 0);
        let p = peel_confluence(9, 2, 0.3, 10, 5, 2).unwrap();
        assert_eq!(p.mismatches, 0);
        let h = one_out_homology(12, 2, 0.0, 4, 3).unwrap();
        assert_eq!(h.betti_values.len(), 4);
        assert!(one_out_homology(12, 2, 1.5, 4, 3).is_err());
    }
}
