use rand::Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::binom::binom;
use crate::complex::{BoundaryTable, SimplicialComplex};
use crate::error::{invalid, Result};
use crate::hypertree::peel_collapse;
use crate::linalg::{sketch_detects, Gf2Span};
use crate::stats::MeanStderr;

use super::{sample_y_p, substream};

/// Rank and co-shadow size of a complex over GF(2).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Gf2Summary {
    pub faces: usize,
    pub rank: usize,
    pub core_faces: usize,
    /// Faces whose boundary lies outside the span of the complex's boundaries.
    pub coshadow: u64,
}

/// Rank of the boundary columns of `x` over GF(2) and the number of faces outside
/// their span.
///
/// Peeling removes faces with a free ridge; each adds exactly one to the rank, so only
/// the core is eliminated. A 64-lane left-kernel sketch of the core is extended back
/// through the peel order, fixing each free ridge so its face is annihilated. Faces the
/// sketch annihilates are counted as in the span, wrongly with probability `2^-64` each.
pub fn gf2_rank_and_coshadow<R: Rng + ?Sized>(x: &SimplicialComplex, table: &BoundaryTable, rng: &mut R) -> Gf2Summary {
    let ridges = x.ridge_count() as usize;
    assert_eq!(table.len() as u64, x.total_faces(), "boundary table does not match the complex");
    let peel = peel_collapse(x, None);
    let mut compact = vec![u32::MAX; ridges];
    let mut used = 0u32;
    for &f in peel.core.face_ranks() {
        for &(r, _) in table.column(f) {
            if compact[r as usize] == u32::MAX {
                compact[r as usize] = used;
                used += 1;
            }
        }
    }
    let mut span = Gf2Span::new(used as usize);
    let mut support = Vec::new();
    for &f in peel.core.face_ranks() {
        support.clear();
        support.extend(table.column(f).iter().map(|&(r, _)| compact[r as usize]));
        span.insert(&support);
    }
    let core_z = span.kernel_sketch(rng);
    let mut z: Vec<u64> = (0..ridges).map(|_| rng.random()).collect();
    for (r, &c) in compact.iter().enumerate() {
        if c != u32::MAX {
            z[r] = core_z[c as usize];
        }
    }
    for &(t, s) in peel.removals.iter().rev() {
        z[t as usize] = table.column(s).iter().filter(|e| e.0 as u64 != t).fold(0, |acc, e| acc ^ z[e.0 as usize]);
    }
    let mut rows = Vec::new();
    let coshadow = (0..x.total_faces())
        .filter(|&f| {
            rows.clear();
            rows.extend(table.column(f).iter().map(|e| e.0));
            sketch_detects(&z, &rows)
        })
        .count() as u64;
    Gf2Summary { faces: x.len(), rank: peel.removals.len() + span.rank(), core_faces: peel.core.len(), coshadow }
}

/// Mean normalised rank and co-shadow density of `Y_d(n, c/n)` at one grid point.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CurvePoint {
    pub c: f64,
    /// `rank / C(n-1, d)`.
    pub rank: MeanStderr,
    /// `|coshadow| / C(n, d+1)`.
    pub density: MeanStderr,
}

/// Samples `Y_d(n, c/n)` for each `c` and summarises rank and co-shadow density over
/// GF(2).
pub fn curve_experiment(n: u32, d: u32, cs: &[f64], trials: u64, seed: u64) -> Result<Vec<CurvePoint>> {
    if d == 0 || n <= d {
        return invalid(format!("need n > d >= 1, got n = {n}, d = {d}"));
    }
    if trials == 0 {
        return invalid("need at least one trial");
    }
    if let Some(c) = cs.iter().find(|&&c| !(0.0..=n as f64).contains(&c)) {
        return invalid(format!("c = {c} must lie in [0, n]"));
    }
    let table = BoundaryTable::new(n, d);
    let k = binom(n as u64 - 1, d as u64) as f64;
    let total = binom(n as u64, d as u64 + 1) as f64;
    cs.iter()
        .enumerate()
        .map(|(ci, &c)| {
            let runs: Vec<(f64, f64)> = (0..trials)
                .into_par_iter()
                .map(|t| {
                    let mut rng = substream(seed, "curve-experiment", ((ci as u64) << 32) | t);
                    let y = sample_y_p(n, d, c / n as f64, &mut rng).expect("validated parameters");
                    let s = gf2_rank_and_coshadow(&y, &table, &mut rng);
                    (s.rank as f64 / k, s.coshadow as f64 / total)
                })
                .collect();
            let (ranks, dens): (Vec<f64>, Vec<f64>) = runs.into_iter().unzip();
            Ok(CurvePoint { c, rank: MeanStderr::of(&ranks), density: MeanStderr::of(&dens) })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hypertree::tests::rp2;
    use crate::hypertree::{cone_hypertree, coshadow};
    use crate::linalg::rank_mod_p;
    use crate::random::sample_y_m;
    use crate::build_boundary_matrix;

    #[test]
    fn agrees_with_mod_two_elimination() {
        let table = BoundaryTable::new(9, 2);
        for seed in 0..20 {
            let mut rng = substream(seed, "t", 0);
            let y = sample_y_m(9, 2, 10 + 2 * seed, &mut rng).unwrap();
            let s = gf2_rank_and_coshadow(&y, &table, &mut rng);
            assert_eq!(s.rank, rank_mod_p(&build_boundary_matrix(&y), 2).rank);
            // brute force: a face is outside the span iff adding it raises the rank
            let brute = (0..y.total_faces())
                .filter(|&f| {
                    let mut z = y.clone();
                    z.insert_rank(f) && rank_mod_p(&build_boundary_matrix(&z), 2).rank > s.rank
                })
                .count() as u64;
            assert_eq!(s.coshadow, brute, "seed {seed}");
        }
    }

    #[test]
    fn projective_plane_differs_from_rationals() {
        let x = rp2();
        let s = gf2_rank_and_coshadow(&x, &BoundaryTable::new(6, 2), &mut substream(0, "t", 0));
        assert_eq!((s.rank, s.core_faces), (9, 10));
    }

    #[test]
    fn collapsible_tree_matches_exact_coshadow() {
        let g = cone_hypertree(8, 2).unwrap();
        let s = gf2_rank_and_coshadow(&g, &BoundaryTable::new(8, 2), &mut substream(0, "t", 0));
        assert_eq!(s.rank, g.len());
        assert_eq!(s.coshadow, 0);
        let part = SimplicialComplex::from_ranks(8, 2, g.face_ranks()[..12].to_vec()).unwrap();
        let s = gf2_rank_and_coshadow(&part, &BoundaryTable::new(8, 2), &mut substream(0, "t", 0));
        assert_eq!(s.coshadow, coshadow(&part).unwrap().len() as u64);
    }

    #[test]
    fn below_threshold_is_nearly_acyclic() {
        let pts = curve_experiment(40, 2, &[0.5], 4, 1).unwrap();
        assert!((pts[0].rank.mean - 0.5 / 3.0).abs() < 0.03, "{pts:?}");
        assert!(pts[0].density.mean > 0.95);
        assert_eq!(pts, curve_experiment(40, 2, &[0.5], 4, 1).unwrap());
    }
}
