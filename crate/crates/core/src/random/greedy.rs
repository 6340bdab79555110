use rand::Rng;
use serde::Serialize;

use crate::complex::SimplicialComplex;
use crate::error::{invalid, Result};
use crate::hypertree::peel_collapse;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GreedyOutcome {
    #[serde(skip)]
    pub complex: SimplicialComplex,
    pub halted_face_count: usize,
    /// Candidate faces tested, sweeps included.
    pub attempts: u64,
    /// Full sweeps run after the rejection budget ran out.
    pub sweeps: u64,
}

fn stays_collapsible(x: &SimplicialComplex, face: u64) -> bool {
    let mut y = x.clone();
    y.insert_rank(face);
    peel_collapse(&y, None).collapsible
}

/// Adds uniform random absent faces while the complex stays collapsible.
///
/// After `C(n, d+1)` consecutive rejections every absent face is tested; the process
/// continues with a uniform choice among the addable ones and halts when there are
/// none, or when the complex reaches hypertree size.
pub fn greedy_collapsible_process<R: Rng + ?Sized>(n: u32, d: u32, rng: &mut R) -> Result<GreedyOutcome> {
    if d == 0 || n <= d {
        return invalid(format!("need n > d >= 1, got n = {n}, d = {d}"));
    }
    let mut x = SimplicialComplex::empty(n, d)?;
    let budget = x.total_faces();
    let cap = x.hypertree_size() as usize;
    let mut absent: Vec<u64> = (0..budget).collect();
    let (mut attempts, mut sweeps, mut rejections) = (0u64, 0u64, 0u64);
    while x.len() < cap {
        let i = if rejections < budget {
            let i = rng.random_range(0..absent.len());
            attempts += 1;
            if !stays_collapsible(&x, absent[i]) {
                rejections += 1;
                continue;
            }
            i
        } else {
            sweeps += 1;
            attempts += absent.len() as u64;
            let ok: Vec<usize> = (0..absent.len()).filter(|&i| stays_collapsible(&x, absent[i])).collect();
            if ok.is_empty() {
                break;
            }
            ok[rng.random_range(0..ok.len())]
        };
        x.insert_rank(absent.swap_remove(i));
        rejections = 0;
    }
    Ok(GreedyOutcome { halted_face_count: x.len(), complex: x, attempts, sweeps })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hypertree::certify;
    use crate::random::substream;

    #[test]
    fn graphs_grow_to_spanning_trees() {
        for seed in 0..10 {
            let g = greedy_collapsible_process(8, 1, &mut substream(seed, "gr", 0)).unwrap();
            assert_eq!(g.halted_face_count, 7);
            assert!(certify(&g.complex).is_hypertree);
        }
    }

    #[test]
    fn two_dimensional_result_collapses() {
        for seed in 0..5 {
            let g = greedy_collapsible_process(7, 2, &mut substream(seed, "gr", 0)).unwrap();
            assert!(peel_collapse(&g.complex, None).collapsible);
            assert!(g.halted_face_count <= 15);
        }
    }
}
