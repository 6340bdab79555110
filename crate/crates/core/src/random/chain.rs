use rand::Rng;
use serde::Serialize;

use crate::complex::{BoundaryTable, SimplicialComplex};
use crate::error::{invalid, Error, Result};
use crate::hypertree::certify;
use crate::linalg::{first_dependency_mod_p, SparseSignMatrix, DEFAULT_PRIME, SECOND_PRIME};

/// One move of the chain, by colex rank. `added == removed` is a lazy step.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Transition {
    pub added: u64,
    pub removed: u64,
    /// Faces in the support of the cycle closed by `added`, itself included.
    pub cycle_len: usize,
}

/// Random walk on the `d`-hypertrees of `n` vertices by base exchange.
///
/// Each step adds a uniform outside face, which closes a unique cycle, then removes a
/// uniform face of that cycle's support. Exchanges are symmetric, so the uniform
/// distribution is stationary.
#[derive(Debug, Clone)]
pub struct BaseExchangeChain {
    n: u32,
    d: u32,
    table: BoundaryTable,
    rows: usize,
    total: u64,
    state: Vec<u64>,
    member: Vec<bool>,
}

impl BaseExchangeChain {
    /// Starts at `initial`, which must certify as a hypertree.
    pub fn new(initial: &SimplicialComplex) -> Result<Self> {
        if !certify(initial).is_hypertree {
            return invalid("the initial complex is not a hypertree");
        }
        let total = initial.total_faces();
        let mut member = vec![false; total as usize];
        for &r in initial.face_ranks() {
            member[r as usize] = true;
        }
        Ok(BaseExchangeChain {
            n: initial.n(),
            d: initial.d(),
            table: BoundaryTable::new(initial.n(), initial.d()),
            rows: initial.ridge_count() as usize,
            total,
            state: initial.face_ranks().to_vec(),
            member,
        })
    }

    /// Current faces, sorted by colex rank.
    pub fn state(&self) -> &[u64] {
        &self.state
    }

    pub fn complex(&self) -> SimplicialComplex {
        SimplicialComplex::from_ranks(self.n, self.d, self.state.clone()).expect("chain states are valid")
    }

    /// Support of the cycle in `state + sigma`, as indices into `state`, checked to agree
    /// over two primes.
    fn cycle_support(&self, sigma: u64) -> Result<Vec<usize>> {
        let k = self.state.len();
        let mut m = SparseSignMatrix::new(self.rows);
        for &f in self.state.iter().chain([sigma].iter()) {
            m.push_column(self.table.column(f)).expect("table columns are well formed");
        }
        let mut supports = [DEFAULT_PRIME, SECOND_PRIME].map(|p| {
            first_dependency_mod_p(&m, p).map(|(at, c)| (at, (0..k).filter(|&j| c[j] != 0).collect::<Vec<_>>()))
        });
        match (supports[0].take(), supports[1].take()) {
            (Some((a, s1)), Some((b, s2))) if a == k && b == k && s1 == s2 => Ok(s1),
            _ => Err(Error::Invariant(format!(
                "adding face {sigma} did not close a unique cycle consistently over both primes"
            ))),
        }
    }

    pub fn step<R: Rng + ?Sized>(&mut self, rng: &mut R) -> Result<Transition> {
        if self.state.len() as u64 == self.total {
            let f = self.state[0];
            return Ok(Transition { added: f, removed: f, cycle_len: 1 });
        }
        let sigma = loop {
            let r = rng.random_range(0..self.total);
            if !self.member[r as usize] {
                break r;
            }
        };
        let support = self.cycle_support(sigma)?;
        let cycle_len = support.len() + 1;
        let pick = rng.random_range(0..cycle_len);
        if pick == support.len() {
            return Ok(Transition { added: sigma, removed: sigma, cycle_len });
        }
        let out = support[pick];
        let removed = self.state.remove(out);
        self.member[removed as usize] = false;
        self.member[sigma as usize] = true;
        let at = self.state.partition_point(|&f| f < sigma);
        self.state.insert(at, sigma);
        Ok(Transition { added: sigma, removed, cycle_len })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::FaceKey;
    use crate::hypertree::cone_hypertree;
    use crate::random::substream;

    #[test]
    fn steps_preserve_hypertrees() {
        let mut c = BaseExchangeChain::new(&cone_hypertree(6, 2).unwrap()).unwrap();
        let mut rng = substream(9, "c", 0);
        for _ in 0..300 {
            let t = c.step(&mut rng).unwrap();
            assert!(t.cycle_len >= 2);
            assert_eq!(c.state().len(), 10);
            assert!(c.state().windows(2).all(|w| w[0] < w[1]));
            assert!(certify(&c.complex()).is_hypertree);
        }
    }

    #[test]
    fn cycle_of_a_triangle_edge() {
        // spanning path 0-1-2 on 3 vertices plus edge {0,2} closes the triangle
        let path = SimplicialComplex::from_faces(3, 1, [[0, 1], [1, 2]].map(|f| FaceKey::new(f.to_vec()).unwrap()))
            .unwrap();
        let c = BaseExchangeChain::new(&path).unwrap();
        assert_eq!(c.cycle_support(1).unwrap(), vec![0, 1]);
    }

    #[test]
    fn rejects_non_hypertree() {
        assert!(BaseExchangeChain::new(&SimplicialComplex::complete(4, 2).unwrap()).is_err());
    }
}
