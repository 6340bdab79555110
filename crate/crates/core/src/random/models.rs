use rand::seq::SliceRandom;
use rand::Rng;
use serde::Serialize;

use crate::binom::binom;
use crate::complex::{Colex, SimplicialComplex};
use crate::error::{invalid, Result};

fn check_dims(n: u32, d: u32) -> Result<()> {
    if d == 0 || n <= d {
        return invalid(format!("need n > d >= 1, got n = {n}, d = {d}"));
    }
    Ok(())
}

/// Linial–Meshulam complex: each `d`-face independently with probability `p`.
pub fn sample_y_p<R: Rng + ?Sized>(n: u32, d: u32, p: f64, rng: &mut R) -> Result<SimplicialComplex> {
    check_dims(n, d)?;
    if !(0.0..=1.0).contains(&p) {
        return invalid(format!("probability must lie in [0, 1], got {p}"));
    }
    let total = binom(n as u64, d as u64 + 1);
    let faces = (0..total).filter(|_| rng.random_bool(p)).collect();
    SimplicialComplex::from_ranks(n, d, faces)
}

/// Uniform `m`-subset of the `d`-faces: the prefix of a seeded partial shuffle.
pub fn sample_y_m<R: Rng + ?Sized>(n: u32, d: u32, m: u64, rng: &mut R) -> Result<SimplicialComplex> {
    check_dims(n, d)?;
    let total = binom(n as u64, d as u64 + 1);
    if m > total {
        return invalid(format!("face count {m} exceeds C({n}, {}) = {total}", d + 1));
    }
    let mut all: Vec<u64> = (0..total).collect();
    let (prefix, _) = all.partial_shuffle(rng, m as usize);
    SimplicialComplex::from_ranks(n, d, prefix.to_vec())
}

/// A draw from the 1-out model.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OneOutSample {
    /// Vertex chosen by each `(d-1)`-face, indexed by colex rank; `None` when inactive.
    pub selection: Vec<Option<u32>>,
    #[serde(skip)]
    pub complex: SimplicialComplex,
    /// Selections lost to merging: `active ridges - faces`.
    pub duplicates: u64,
    /// Faces chosen by two or more ridges.
    pub multiply_selected: u64,
}

/// Every `(d-1)`-face picks a uniform vertex outside itself; the complex is the union
/// of the resulting `d`-faces.
pub fn sample_1out<R: Rng + ?Sized>(n: u32, d: u32, rng: &mut R) -> Result<OneOutSample> {
    sample_1out_eps(n, d, 0.0, rng)
}

/// As [`sample_1out`], but each `(d-1)`-face first stays active with probability
/// `1 - eps`.
pub fn sample_1out_eps<R: Rng + ?Sized>(n: u32, d: u32, eps: f64, rng: &mut R) -> Result<OneOutSample> {
    if d == 0 || n <= d + 1 {
        return invalid(format!("need n > d + 1 and d >= 1, got n = {n}, d = {d}"));
    }
    if !(0.0..=1.0).contains(&eps) {
        return invalid(format!("eps must lie in [0, 1], got {eps}"));
    }
    let colex = Colex::new(n, d as usize + 1);
    let ridges = binom(n as u64, d as u64);
    let mut tau = vec![0u32; d as usize];
    let mut face = Vec::with_capacity(d as usize + 1);
    let mut selection = Vec::with_capacity(ridges as usize);
    let mut chosen = Vec::with_capacity(ridges as usize);
    for r in 0..ridges {
        if eps > 0.0 && rng.random_bool(eps) {
            selection.push(None);
            continue;
        }
        colex.unrank(r, &mut tau);
        let mut v = rng.random_range(0..n - d);
        for &t in &tau {
            if v >= t {
                v += 1;
            }
        }
        selection.push(Some(v));
        face.clear();
        face.extend_from_slice(&tau);
        let at = face.partition_point(|&t| t < v);
        face.insert(at, v);
        chosen.push(colex.rank(&face));
    }
    chosen.sort_unstable();
    let active = chosen.len() as u64;
    let mut multiply_selected = 0;
    for run in chosen.chunk_by(|a, b| a == b) {
        if run.len() > 1 {
            multiply_selected += 1;
        }
    }
    chosen.dedup();
    let duplicates = active - chosen.len() as u64;
    let complex = SimplicialComplex::from_ranks(n, d, chosen)?;
    Ok(OneOutSample { selection, complex, duplicates, multiply_selected })
}

/// Number of `(d+2)`-vertex sets whose whole boundary lies in `x`.
pub fn simplex_boundary_count(x: &SimplicialComplex) -> u64 {
    let (n, k) = (x.n(), x.d() as usize + 1);
    let colex = Colex::new(n, k + 1);
    let mut present = vec![false; x.total_faces() as usize];
    for &r in x.face_ranks() {
        present[r as usize] = true;
    }
    let mut sigma = vec![0u32; k];
    let mut big = vec![0u32; k + 1];
    let mut facet = vec![0u32; k];
    let mut count = 0;
    for &r in x.face_ranks() {
        colex.unrank(r, &mut sigma);
        big[..k].copy_from_slice(&sigma);
        // each set is counted from the facet missing its largest vertex
        for w in sigma[k - 1] + 1..n {
            big[k] = w;
            let full = (0..k).all(|skip| {
                let mut j = 0;
                for (i, &v) in big.iter().enumerate() {
                    if i != skip {
                        facet[j] = v;
                        j += 1;
                    }
                }
                present[colex.rank(&facet) as usize]
            });
            if full {
                count += 1;
            }
        }
    }
    count
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hypertree::cone_hypertree;
    use crate::random::substream;

    #[test]
    fn extremes() {
        let mut rng = substream(1, "t", 0);
        assert_eq!(sample_y_p(6, 2, 1.0, &mut rng).unwrap().len(), 20);
        assert!(sample_y_p(6, 2, 0.0, &mut rng).unwrap().is_empty());
        assert!(sample_y_m(6, 2, 0, &mut rng).unwrap().is_empty());
        assert_eq!(sample_y_m(6, 2, 20, &mut rng).unwrap().len(), 20);
        assert!(sample_y_m(6, 2, 21, &mut rng).is_err());
        assert!(sample_y_p(6, 2, 1.5, &mut rng).is_err());
        let s = sample_1out_eps(8, 2, 1.0, &mut rng).unwrap();
        assert!(s.complex.is_empty());
        assert!(s.selection.iter().all(Option::is_none));
        assert!(sample_1out(3, 2, &mut rng).is_err());
    }

    #[test]
    fn one_out_covers_every_ridge() {
        let mut rng = substream(2, "t", 0);
        let s = sample_1out(9, 2, &mut rng).unwrap();
        let ridges = binom(9, 2);
        assert_eq!(s.complex.len() as u64 + s.duplicates, ridges);
        let colex = Colex::new(9, 3);
        let mut tau = [0u32; 2];
        for (r, v) in s.selection.iter().enumerate() {
            let v = v.unwrap();
            colex.unrank(r as u64, &mut tau);
            assert!(!tau.contains(&v));
            let mut f = vec![tau[0], tau[1], v];
            f.sort_unstable();
            assert!(s.complex.contains_rank(colex.rank(&f)));
        }
    }

    #[test]
    fn boundary_counts() {
        assert_eq!(simplex_boundary_count(&SimplicialComplex::complete(4, 2).unwrap()), 1);
        assert_eq!(simplex_boundary_count(&SimplicialComplex::complete(6, 2).unwrap()), 15);
        assert_eq!(simplex_boundary_count(&SimplicialComplex::complete(6, 1).unwrap()), 20);
        assert_eq!(simplex_boundary_count(&cone_hypertree(7, 2).unwrap()), 0);
        assert_eq!(simplex_boundary_count(&SimplicialComplex::empty(5, 2).unwrap()), 0);
    }
}
