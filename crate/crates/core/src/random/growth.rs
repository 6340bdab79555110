use rand::Rng;
use serde::Serialize;

use crate::binom::binom;
use crate::complex::{BoundaryTable, SimplicialComplex};
use crate::error::{invalid, Error, Result};
use crate::linalg::{IncrementalBasis, DEFAULT_PRIME};

/// Below this co-shadow density the sampler picks from the explicit co-shadow list
/// instead of drawing uniform faces and rejecting those outside it.
pub const REJECTION_MIN_DENSITY: f64 = 0.1;

/// Record of one run of the acyclic growth process.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GrowthTrace {
    pub n: u32,
    pub d: u32,
    /// Colex rank of the face added at each step.
    pub faces: Vec<u64>,
    /// Co-shadow size before each step and after the last: `faces.len() + 1` entries,
    /// starting at `C(n, d+1)` and ending at 0.
    pub coshadow_sizes: Vec<u64>,
    #[serde(skip)]
    pub complex: SimplicialComplex,
}

impl GrowthTrace {
    /// `sum_i ln |coshadow(T_i)|` over the steps, divided by the number of steps.
    pub fn mean_log_coshadow(&self) -> f64 {
        let k = self.faces.len();
        self.coshadow_sizes[..k].iter().map(|&s| (s as f64).ln()).sum::<f64>() / k as f64
    }
}

/// Grows a `d`-hypertree by adding, at each step, a uniform face of the current
/// co-shadow.
///
/// The co-shadow is maintained exactly: after each insertion a fresh random left-kernel
/// vector certifies most surviving faces, and the rest get an exact span test.
pub fn growth_process<R: Rng + ?Sized>(n: u32, d: u32, rng: &mut R) -> Result<GrowthTrace> {
    if d == 0 || n <= d {
        return invalid(format!("need n > d >= 1, got n = {n}, d = {d}"));
    }
    let total = binom(n as u64, d as u64 + 1);
    let steps = binom(n as u64 - 1, d as u64) as usize;
    let table = BoundaryTable::new(n, d);
    let mut basis = IncrementalBasis::new(binom(n as u64, d as u64) as usize, DEFAULT_PRIME);
    let mut live: Vec<u64> = (0..total).collect();
    let mut in_live = vec![true; total as usize];
    let mut faces = Vec::with_capacity(steps);
    let mut sizes = Vec::with_capacity(steps + 1);
    sizes.push(total);
    for _ in 0..steps {
        if live.is_empty() {
            return Err(Error::Invariant("co-shadow emptied before the hypertree was complete".into()));
        }
        let sigma = if live.len() as f64 > REJECTION_MIN_DENSITY * total as f64 {
            loop {
                let r = rng.random_range(0..total);
                if in_live[r as usize] {
                    break r;
                }
            }
        } else {
            live[rng.random_range(0..live.len())]
        };
        if !basis.insert(table.column(sigma)) {
            return Err(Error::Invariant(format!("co-shadow face {sigma} was dependent")));
        }
        faces.push(sigma);
        let z = basis.left_kernel_vector(rng);
        live.retain(|&f| {
            let col = table.column(f);
            let keep = basis.dot(&z, col) != 0 || !basis.contains(col);
            in_live[f as usize] = keep;
            keep
        });
        sizes.push(live.len() as u64);
    }
    let complex = SimplicialComplex::from_ranks(n, d, faces.clone())?;
    Ok(GrowthTrace { n, d, faces, coshadow_sizes: sizes, complex })
}
