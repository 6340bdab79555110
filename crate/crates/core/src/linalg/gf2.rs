use rand::Rng;

const NONE: u32 = u32::MAX;

/// Column span over GF(2) with bit-packed dense columns, for matrices too large for
/// word-sized prime-field elimination.
///
/// Stored vectors are in echelon form keyed by their highest set row.
#[derive(Debug, Clone)]
pub struct Gf2Span {
    rows: usize,
    words: usize,
    basis: Vec<u64>,
    pivot_rows: Vec<u32>,
    pivot_of_row: Vec<u32>,
    scratch: Vec<u64>,
}

impl Gf2Span {
    pub fn new(rows: usize) -> Self {
        let words = rows.div_ceil(64).max(1);
        Gf2Span {
            rows,
            words,
            basis: Vec::new(),
            pivot_rows: Vec::new(),
            pivot_of_row: vec![NONE; rows],
            scratch: vec![0; words],
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn rank(&self) -> usize {
        self.pivot_rows.len()
    }

    /// Adds the column with ones at `support`; returns whether it was independent.
    pub fn insert(&mut self, support: &[u32]) -> bool {
        let w = self.words;
        let v = &mut self.scratch;
        v.fill(0);
        let mut top = 0usize;
        for &r in support {
            v[r as usize / 64] ^= 1 << (r % 64);
            top = top.max(r as usize / 64);
        }
        loop {
            while v[top] == 0 {
                if top == 0 {
                    return false;
                }
                top -= 1;
            }
            let h = top * 64 + 63 - v[top].leading_zeros() as usize;
            let k = self.pivot_of_row[h];
            if k == NONE {
                self.pivot_of_row[h] = self.pivot_rows.len() as u32;
                self.pivot_rows.push(h as u32);
                self.basis.extend_from_slice(v);
                return true;
            }
            let b = &self.basis[k as usize * w..k as usize * w + top + 1];
            for (x, y) in v[..=top].iter_mut().zip(b) {
                *x ^= *y;
            }
        }
    }

    /// 64 independent uniform left-kernel vectors, packed one bit-lane per vector:
    /// entry `r` holds row `r` of all 64.
    ///
    /// A column is outside the span exactly when some kernel vector has odd inner
    /// product with it; with 64 random lanes a miss has probability `2^-64`.
    pub fn kernel_sketch<R: Rng + ?Sized>(&self, rng: &mut R) -> Vec<u64> {
        let w = self.words;
        let mut z = vec![0u64; self.rows];
        for (r, zr) in z.iter_mut().enumerate() {
            if self.pivot_of_row[r] == NONE {
                *zr = rng.random();
            }
        }
        let mut order: Vec<usize> = (0..self.rank()).collect();
        order.sort_unstable_by_key(|&k| self.pivot_rows[k]);
        for k in order {
            let piv = self.pivot_rows[k] as usize;
            let b = &self.basis[k * w..(k + 1) * w];
            let mut acc = 0u64;
            for (wi, &word) in b.iter().enumerate() {
                let mut bits = word;
                while bits != 0 {
                    let r = wi * 64 + bits.trailing_zeros() as usize;
                    bits &= bits - 1;
                    if r != piv {
                        acc ^= z[r];
                    }
                }
            }
            z[piv] = acc;
        }
        z
    }
}

/// Whether the column with ones at `support` lies outside the span sketched by `z`.
#[inline]
pub fn sketch_detects(z: &[u64], support: &[u32]) -> bool {
    support.iter().fold(0u64, |acc, &r| acc ^ z[r as usize]) != 0
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::{build_boundary_matrix, SimplicialComplex};
    use crate::linalg::rank::rank_mod_p;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn support(col: &[(u32, i32)]) -> Vec<u32> {
        col.iter().map(|e| e.0).collect()
    }

    #[test]
    fn matches_mod_two_rank() {
        let m = build_boundary_matrix(&SimplicialComplex::complete(9, 2).unwrap());
        let mut s = Gf2Span::new(m.rows());
        for c in m.columns() {
            s.insert(&support(c));
        }
        assert_eq!(s.rank(), rank_mod_p(&m, 2).rank);
        assert_eq!(s.rank(), 28);
    }

    #[test]
    fn sketch_separates() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let m = build_boundary_matrix(&SimplicialComplex::complete(8, 2).unwrap());
        let mut s = Gf2Span::new(m.rows());
        let mut reference = Gf2Span::new(m.rows());
        for c in m.columns().step_by(3) {
            s.insert(&support(c));
            reference.insert(&support(c));
        }
        let z = s.kernel_sketch(&mut rng);
        for c in m.columns() {
            let outside = reference.clone().insert(&support(c));
            assert_eq!(sketch_detects(&z, &support(c)), outside);
        }
    }

    #[test]
    fn word_boundaries() {
        let mut s = Gf2Span::new(130);
        assert!(s.insert(&[0, 64, 129]));
        assert!(s.insert(&[63, 64]));
        assert!(s.insert(&[0, 63]));
        assert!(!s.insert(&[129, 63, 0, 63, 0, 64, 63]));
        assert!(!s.insert(&[]));
    }
}
