use std::collections::{HashMap, VecDeque};

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::complex::{face_unrank, Colex, FaceKey, SimplicialComplex};

/// Outcome of greedy peeling: removed `(exposed ridge, its unique face)` pairs by colex
/// rank, and the residual core.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PeelResult {
    pub collapsible: bool,
    pub removals: Vec<(u64, u64)>,
    #[serde(skip)]
    pub core: SimplicialComplex,
}

impl PeelResult {
    /// The removal sequence as vertex lists.
    pub fn removal_faces(&self) -> Vec<(FaceKey, FaceKey)> {
        let (n, d) = (self.core.n(), self.core.d() as usize);
        self.removals
            .iter()
            .map(|&(t, s)| (face_unrank(t, d, n).unwrap(), face_unrank(s, d + 1, n).unwrap()))
            .collect()
    }
}

/// Ridge degree counters: dense when the ridge space is small, hashed otherwise.
enum Counters {
    Dense(Vec<(u32, u32)>),
    Sparse(HashMap<u64, (u32, u32)>),
}

impl Counters {
    fn new(ridges: u64) -> Self {
        if ridges <= 1 << 24 {
            Counters::Dense(vec![(0, 0); ridges as usize])
        } else {
            Counters::Sparse(HashMap::new())
        }
    }

    /// (degree, xor of incident face indices)
    #[inline]
    fn get_mut(&mut self, r: u64) -> &mut (u32, u32) {
        match self {
            Counters::Dense(v) => &mut v[r as usize],
            Counters::Sparse(m) => m.entry(r).or_insert((0, 0)),
        }
    }

    fn exposed(&self) -> Vec<u64> {
        let mut out: Vec<u64> = match self {
            Counters::Dense(v) => (0..v.len() as u64).filter(|&r| v[r as usize].0 == 1).collect(),
            Counters::Sparse(m) => m.iter().filter(|e| e.1 .0 == 1).map(|e| *e.0).collect(),
        };
        out.sort_unstable();
        out
    }
}

/// Repeatedly removes an exposed ridge (a `(d-1)`-face in exactly one `d`-face) together
/// with its face, until none is left.
///
/// Newly exposed ridges join a FIFO queue; `order_seed` shuffles only the initial queue.
/// The residual core does not depend on the order.
pub fn peel_collapse(x: &SimplicialComplex, order_seed: Option<u64>) -> PeelResult {
    let faces = x.face_ranks();
    let c = Colex::new(x.n(), x.d() as usize + 1);
    let k = x.d() as usize + 1;
    let mut verts = vec![0u32; k];
    let mut buf = Vec::with_capacity(k);
    let mut facets: Vec<u64> = Vec::with_capacity(faces.len() * k);
    let mut counters = Counters::new(x.ridge_count());
    for (i, &r) in faces.iter().enumerate() {
        c.unrank(r, &mut verts);
        c.facets(&verts, &mut buf);
        for &(t, _) in &buf {
            facets.push(t);
            let e = counters.get_mut(t);
            e.0 += 1;
            e.1 ^= i as u32;
        }
    }
    let mut queue: Vec<u64> = counters.exposed();
    if let Some(seed) = order_seed {
        queue.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
    }
    let mut queue: VecDeque<u64> = queue.into();
    let mut alive = vec![true; faces.len()];
    let mut removals = Vec::new();
    while let Some(t) = queue.pop_front() {
        let (deg, idx) = *counters.get_mut(t);
        if deg != 1 {
            continue;
        }
        let i = idx as usize;
        debug_assert!(alive[i]);
        alive[i] = false;
        removals.push((t, faces[i]));
        for &u in &facets[i * k..(i + 1) * k] {
            let e = counters.get_mut(u);
            e.0 -= 1;
            e.1 ^= idx;
            if e.0 == 1 {
                queue.push_back(u);
            }
        }
    }
    let core_ranks: Vec<u64> = faces.iter().zip(&alive).filter(|e| *e.1).map(|e| *e.0).collect();
    let core = SimplicialComplex::from_ranks(x.n(), x.d(), core_ranks).expect("subset of a valid complex");
    PeelResult { collapsible: core.is_empty(), removals, core }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hypertree::tests::{rp2, star};

    #[test]
    fn star_collapses() {
        for (n, d) in [(5, 2), (7, 2), (6, 3), (6, 1)] {
            let r = peel_collapse(&star(n, d), None);
            assert!(r.collapsible);
            assert_eq!(r.removals.len(), star(n, d).len());
        }
    }

    #[test]
    fn obstructions() {
        let r = peel_collapse(&rp2(), None);
        assert!(!r.collapsible);
        assert_eq!(r.core.len(), 10);
        let r = peel_collapse(&SimplicialComplex::complete(4, 2).unwrap(), Some(7));
        assert!(!r.collapsible);
        assert!(r.removals.is_empty());
    }

    #[test]
    fn removal_pairs_are_incident() {
        let r = peel_collapse(&star(6, 2), Some(1));
        for (t, s) in r.removal_faces() {
            assert!(t.vertices().iter().all(|v| s.contains(*v)));
        }
    }
}
