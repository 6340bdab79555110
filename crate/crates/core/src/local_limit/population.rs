use num_traits::Float;
use rand::Rng;
use rand_distr::{Distribution, Poisson};
use rayon::prelude::*;
use serde::Serialize;

use crate::analytic::lit;
use crate::error::{invalid, Result};
use crate::random::substream;

/// Pool entries updated per parallel task; each block draws from its own substream.
pub const POPULATION_BLOCK: usize = 4096;

const MIN_POOL: usize = 10_000;
const MIN_SWEEPS: u32 = 50;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PopulationResult<T> {
    pub d: u32,
    pub pool: usize,
    pub sweeps: u32,
    #[serde(rename = "E_X")]
    pub e_x: T,
    /// Standard error of the final-sweep mean of X.
    pub stderr: T,
    #[serde(rename = "Pr_X_pos")]
    pub pr_x_positive: T,
    #[serde(rename = "E_Y")]
    pub e_y: T,
    /// Mean of the X pool after each sweep.
    pub history: Vec<T>,
    /// Whether the last two sweep means differ by at most three standard errors.
    pub converged: bool,
}

fn mean_stderr<T: Float>(xs: &[T]) -> (T, T) {
    let n: T = lit(xs.len() as f64);
    let mean = xs.iter().fold(T::zero(), |s, &x| s + x) / n;
    let ss = xs.iter().fold(T::zero(), |s, &x| s + (x - mean) * (x - mean));
    (mean, (ss / (n - T::one()) / n).sqrt())
}

struct Pools<'a, T> {
    x: &'a [T],
    y: &'a [T],
    d: u32,
    poisson: Poisson<f64>,
}

impl<T: Float> Pools<'_, T> {
    fn pick<R: Rng>(pool: &[T], rng: &mut R) -> T {
        pool[rng.random_range(0..pool.len())]
    }

    /// Sum over `m ~ Poisson(d)` type-B cells of `1 / Q`, or `None` if some `Q` is zero.
    fn b_cells<R: Rng>(&self, rng: &mut R) -> Option<T> {
        let m = self.poisson.sample(rng) as u64;
        let mut inv = T::zero();
        for _ in 0..m {
            let mut q = Self::pick(self.y, rng);
            for _ in 1..self.d {
                q = q + Self::pick(self.x, rng);
            }
            if q == T::zero() {
                return None;
            }
            inv = inv + q.recip();
        }
        Some(inv)
    }

    fn draw_x<R: Rng>(&self, rng: &mut R) -> T {
        let mut p = T::zero();
        for _ in 0..self.d {
            p = p + Self::pick(self.x, rng);
        }
        let cells = self.b_cells(rng);
        match cells {
            Some(inv) if p > T::zero() => (T::one() + p.recip() + inv).recip(),
            _ => T::zero(),
        }
    }

    fn draw_y<R: Rng>(&self, rng: &mut R) -> T {
        match self.b_cells(rng) {
            Some(inv) => (T::one() + inv).recip(),
            None => T::zero(),
        }
    }
}

/// Iterates the distributional recursion of the limiting tree on pools of samples.
///
/// X is the value at a type-A facet and Y at a type-B facet. Every sweep rebuilds both
/// pools from the previous ones, so results depend only on `seed` and not on the thread
/// count.
pub fn population_dynamics<T>(d: u32, pool: usize, sweeps: u32, init: T, seed: u64) -> Result<PopulationResult<T>>
where
    T: Float + Send + Sync,
{
    if d < 1 {
        return invalid("dimension must be at least 1");
    }
    if pool < MIN_POOL {
        return invalid(format!("pool size must be at least {MIN_POOL}, got {pool}"));
    }
    if sweeps < MIN_SWEEPS {
        return invalid(format!("need at least {MIN_SWEEPS} sweeps, got {sweeps}"));
    }
    if !(init >= T::zero() && init <= T::one()) {
        return invalid("initial pool value must lie in [0, 1]");
    }
    let poisson = Poisson::new(d as f64).expect("positive rate");
    let mut x = vec![init; pool];
    let mut y = vec![init; pool];
    let mut next_x = vec![T::zero(); pool];
    let mut next_y = vec![T::zero(); pool];
    let mut history = Vec::with_capacity(sweeps as usize);
    let mut stderrs = Vec::with_capacity(sweeps as usize);
    for sweep in 0..sweeps {
        let pools = Pools { x: &x, y: &y, d, poisson };
        next_x
            .par_chunks_mut(POPULATION_BLOCK)
            .zip(next_y.par_chunks_mut(POPULATION_BLOCK))
            .enumerate()
            .for_each(|(block, (bx, by))| {
                let mut rng = substream(seed, "population", ((sweep as u64) << 32) | block as u64);
                for (vx, vy) in bx.iter_mut().zip(by.iter_mut()) {
                    *vx = pools.draw_x(&mut rng);
                    *vy = pools.draw_y(&mut rng);
                }
            });
        std::mem::swap(&mut x, &mut next_x);
        std::mem::swap(&mut y, &mut next_y);
        let (m, s) = mean_stderr(&x);
        history.push(m);
        stderrs.push(s);
    }
    let (e_x, stderr) = (history[history.len() - 1], stderrs[stderrs.len() - 1]);
    let prev = history[history.len() - 2];
    let three: T = lit(3.0);
    let converged = (e_x - prev).abs() <= three * stderr.max(stderrs[stderrs.len() - 2]);
    let positive = x.iter().filter(|&&v| v > T::zero()).count();
    Ok(PopulationResult {
        d,
        pool,
        sweeps,
        e_x,
        stderr,
        pr_x_positive: lit::<T>(positive as f64) / lit(pool as f64),
        e_y: mean_stderr(&y).0,
        history,
        converged,
    })
}
