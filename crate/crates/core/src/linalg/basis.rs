use rand::Rng;

use super::field::Fp;

const NONE: u32 = u32::MAX;

/// Column span over GF(p) kept in reduced row-echelon form.
///
/// Every stored vector is 1 at its pivot row and 0 at every other pivot row, so a
/// column lies in the span exactly when subtracting the stored vectors selected by the
/// column's own pivot-row entries leaves nothing behind.
#[derive(Debug, Clone)]
pub struct IncrementalBasis {
    f: Fp,
    rows: usize,
    basis: Vec<Vec<u64>>,
    pivot_rows: Vec<usize>,
    pivot_of_row: Vec<u32>,
}

impl IncrementalBasis {
    pub fn new(rows: usize, p: u64) -> Self {
        IncrementalBasis {
            f: Fp::new(p),
            rows,
            basis: Vec::new(),
            pivot_rows: Vec::new(),
            pivot_of_row: vec![NONE; rows],
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn rank(&self) -> usize {
        self.pivot_rows.len()
    }

    pub fn prime(&self) -> u64 {
        self.f.modulus()
    }

    /// The column minus its projection onto the span, as a dense vector.
    fn residual(&self, col: &[(u32, i32)]) -> Vec<u64> {
        let f = self.f;
        let mut v = vec![0u64; self.rows];
        for &(r, x) in col {
            assert!((r as usize) < self.rows, "row index out of range");
            v[r as usize] = f.from_i64(x as i64);
        }
        for &(r, x) in col {
            let k = self.pivot_of_row[r as usize];
            if k == NONE {
                continue;
            }
            let c = f.from_i64(x as i64);
            for (vi, &bi) in v.iter_mut().zip(&self.basis[k as usize]) {
                if bi != 0 {
                    *vi = f.sub_mul(*vi, c, bi);
                }
            }
        }
        v
    }

    /// Whether `col` lies in the current span.
    pub fn contains(&self, col: &[(u32, i32)]) -> bool {
        self.residual(col).iter().all(|&x| x == 0)
    }

    /// Adds `col` if it is independent; returns whether it was.
    pub fn insert(&mut self, col: &[(u32, i32)]) -> bool {
        let f = self.f;
        let mut v = self.residual(col);
        let Some(piv) = v.iter().position(|&x| x != 0) else {
            return false;
        };
        let inv = f.inv(v[piv]);
        for x in v.iter_mut() {
            *x = f.mul(*x, inv);
        }
        for b in &mut self.basis {
            let c = b[piv];
            if c == 0 {
                continue;
            }
            for (bi, &vi) in b.iter_mut().zip(&v) {
                if vi != 0 {
                    *bi = f.sub_mul(*bi, c, vi);
                }
            }
        }
        self.pivot_of_row[piv] = self.basis.len() as u32;
        self.pivot_rows.push(piv);
        self.basis.push(v);
        true
    }

    /// A uniformly random vector `z` of the left kernel: `z . b = 0` for every column `b`
    /// of the span.
    ///
    /// For a column outside the span, `z . col` vanishes with probability `1/p`, so a
    /// nonzero product certifies independence.
    pub fn left_kernel_vector<R: Rng + ?Sized>(&self, rng: &mut R) -> Vec<u64> {
        let f = self.f;
        let p = f.modulus();
        let mut z = vec![0u64; self.rows];
        for (r, zr) in z.iter_mut().enumerate() {
            if self.pivot_of_row[r] == NONE {
                *zr = rng.random_range(0..p);
            }
        }
        for (k, b) in self.basis.iter().enumerate() {
            let mut acc = 0u64;
            for (r, &br) in b.iter().enumerate() {
                if br != 0 && self.pivot_of_row[r] == NONE {
                    acc = f.add(acc, f.mul(z[r], br));
                }
            }
            z[self.pivot_rows[k]] = f.neg(acc);
        }
        z
    }

    /// `z . col` in GF(p).
    pub fn dot(&self, z: &[u64], col: &[(u32, i32)]) -> u64 {
        let f = self.f;
        col.iter()
            .fold(0u64, |acc, &(r, x)| f.add(acc, f.mul(z[r as usize], f.from_i64(x as i64))))
    }
}
