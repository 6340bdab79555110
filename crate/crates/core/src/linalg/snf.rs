//! Smith normal form over the integers.
//!
//! Elimination runs in checked `i64` first and restarts in big integers on overflow.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::Serialize;

use super::sparse::SparseSignMatrix;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SnfReport {
    /// Nonzero invariant factors `d_1 | d_2 | ...`; their count is the rank.
    #[serde(serialize_with = "ser_vec_decimal")]
    pub invariant_factors: Vec<BigUint>,
    /// Product of the factors exceeding 1.
    #[serde(serialize_with = "ser_decimal")]
    pub torsion_order: BigUint,
}

impl SnfReport {
    pub fn rank(&self) -> usize {
        self.invariant_factors.len()
    }
}

fn ser_decimal<S: serde::Serializer>(v: &BigUint, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_string())
}

fn ser_vec_decimal<S: serde::Serializer>(v: &[BigUint], s: S) -> Result<S::Ok, S::Error> {
    use serde::ser::SerializeSeq;
    let mut seq = s.serialize_seq(Some(v.len()))?;
    for x in v {
        seq.serialize_element(&x.to_string())?;
    }
    seq.end()
}

trait Entry: Clone {
    fn from_i32(v: i32) -> Self;
    fn is_zero(&self) -> bool;
    fn abs_lt(&self, other: &Self) -> bool;
    fn quot(&self, d: &Self) -> Self;
    /// `self -= q * x`, `None` on overflow.
    fn sub_mul(&mut self, q: &Self, x: &Self) -> Option<()>;
    fn abs_big(&self) -> BigUint;
}

impl Entry for i64 {
    fn from_i32(v: i32) -> Self {
        v as i64
    }
    fn is_zero(&self) -> bool {
        *self == 0
    }
    fn abs_lt(&self, other: &Self) -> bool {
        self.unsigned_abs() < other.unsigned_abs()
    }
    fn quot(&self, d: &Self) -> Self {
        self / d
    }
    fn sub_mul(&mut self, q: &Self, x: &Self) -> Option<()> {
        *self = self.checked_sub(q.checked_mul(*x)?)?;
        Some(())
    }
    fn abs_big(&self) -> BigUint {
        BigUint::from(self.unsigned_abs())
    }
}

impl Entry for BigInt {
    fn from_i32(v: i32) -> Self {
        BigInt::from(v)
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn abs_lt(&self, other: &Self) -> bool {
        self.magnitude() < other.magnitude()
    }
    fn quot(&self, d: &Self) -> Self {
        self / d
    }
    fn sub_mul(&mut self, q: &Self, x: &Self) -> Option<()> {
        *self -= q * x;
        Some(())
    }
    fn abs_big(&self) -> BigUint {
        self.magnitude().clone()
    }
}

fn diagonalize<T: Entry>(m: &SparseSignMatrix) -> Option<Vec<BigUint>> {
    let (rows, cols) = (m.rows(), m.cols());
    let mut a: Vec<Vec<T>> = vec![vec![T::from_i32(0); cols]; rows];
    for (j, col) in m.columns().enumerate() {
        for &(r, v) in col {
            a[r as usize][j] = T::from_i32(v);
        }
    }
    let mut diag = Vec::new();
    for t in 0..rows.min(cols) {
        let mut best: Option<(usize, usize)> = None;
        for (i, row) in a.iter().enumerate().skip(t) {
            for (j, x) in row.iter().enumerate().skip(t) {
                if !x.is_zero() && best.is_none_or(|(bi, bj)| x.abs_lt(&a[bi][bj])) {
                    best = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = best else { break };
        swap_to(&mut a, t, pi, pj);
        loop {
            let mut clean = true;
            for i in t + 1..rows {
                if a[i][t].is_zero() {
                    continue;
                }
                let q = a[i][t].quot(&a[t][t]);
                let (top, rest) = a.split_at_mut(i);
                let (prow, row) = (&top[t], &mut rest[0]);
                for j in t..cols {
                    if !prow[j].is_zero() {
                        row[j].sub_mul(&q, &prow[j])?;
                    }
                }
                clean &= a[i][t].is_zero();
            }
            for j in t + 1..cols {
                if a[t][j].is_zero() {
                    continue;
                }
                let q = a[t][j].quot(&a[t][t]);
                for row in a.iter_mut().skip(t) {
                    if !row[t].is_zero() {
                        let pv = row[t].clone();
                        row[j].sub_mul(&q, &pv)?;
                    }
                }
                clean &= a[t][j].is_zero();
            }
            if clean {
                break;
            }
            // A nonzero remainder is smaller than the pivot: promote the smallest one.
            let mut best = (t, t);
            for i in t + 1..rows {
                if !a[i][t].is_zero() && a[i][t].abs_lt(&a[best.0][best.1]) {
                    best = (i, t);
                }
            }
            for j in t + 1..cols {
                if !a[t][j].is_zero() && a[t][j].abs_lt(&a[best.0][best.1]) {
                    best = (t, j);
                }
            }
            swap_to(&mut a, t, best.0, best.1);
        }
        diag.push(a[t][t].abs_big());
    }
    Some(diag)
}

fn swap_to<T>(a: &mut [Vec<T>], t: usize, i: usize, j: usize) {
    a.swap(t, i);
    if j != t {
        for row in a.iter_mut() {
            row.swap(t, j);
        }
    }
}

/// Invariant factors of `m` over the integers.
pub fn smith_normal_form(m: &SparseSignMatrix) -> SnfReport {
    let mut d = diagonalize::<i64>(m).unwrap_or_else(|| {
        diagonalize::<BigInt>(m).expect("big-integer elimination cannot overflow")
    });
    // Enforce the divisibility chain: (a, b) -> (gcd, lcm) is an equivalent diagonal.
    for i in 0..d.len() {
        for j in i + 1..d.len() {
            if !(&d[j] % &d[i]).is_zero() {
                let g = d[i].gcd(&d[j]);
                let l = &d[i] / &g * &d[j];
                d[i] = g;
                d[j] = l;
            }
        }
    }
    let torsion_order = d.iter().filter(|x| !x.is_one()).fold(BigUint::one(), |acc, x| acc * x);
    SnfReport { invariant_factors: d, torsion_order }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::{build_boundary_matrix, FaceKey, SimplicialComplex};

    fn factors(r: &SnfReport) -> Vec<u64> {
        r.invariant_factors.iter().map(|x| x.try_into().unwrap()).collect()
    }

    #[test]
    fn diagonal_examples() {
        let r = smith_normal_form(&SparseSignMatrix::diagonal(&[2, 6]));
        assert_eq!(factors(&r), vec![2, 6]);
        assert_eq!(r.torsion_order, BigUint::from(12u32));
        let r = smith_normal_form(&SparseSignMatrix::diagonal(&[4, 6]));
        assert_eq!(factors(&r), vec![2, 12]);
        let r = smith_normal_form(&SparseSignMatrix::diagonal(&[0, 3, 0]));
        assert_eq!(factors(&r), vec![3]);
    }

    #[test]
    fn projective_plane_torsion() {
        let faces: [[u32; 3]; 10] = [
            [0, 1, 4], [0, 1, 5], [0, 2, 3], [0, 2, 5], [0, 3, 4],
            [1, 2, 3], [1, 2, 4], [1, 3, 5], [2, 4, 5], [3, 4, 5],
        ];
        let x = SimplicialComplex::from_faces(6, 2, faces.map(|f| FaceKey::new(f.to_vec()).unwrap())).unwrap();
        let r = smith_normal_form(&build_boundary_matrix(&x));
        assert_eq!(r.rank(), 10);
        assert_eq!(r.torsion_order, BigUint::from(2u32));
    }

    #[test]
    fn tree_is_torsion_free() {
        let x = SimplicialComplex::from_faces(
            5,
            1,
            [[0, 1], [1, 2], [1, 3], [3, 4]].map(|f| FaceKey::new(f.to_vec()).unwrap()),
        )
        .unwrap();
        let r = smith_normal_form(&build_boundary_matrix(&x));
        assert_eq!(factors(&r), vec![1, 1, 1, 1]);
        assert!(r.torsion_order.is_one());
    }

    #[test]
    fn overflow_falls_back_to_bigint() {
        // powers of a large base force the checked path to overflow
        let big = 1 << 30;
        let m = SparseSignMatrix::from_dense(&[vec![big, 1], vec![0, big]]).unwrap();
        let r = smith_normal_form(&m);
        assert_eq!(factors(&r), vec![1, 1u64 << 60]);
        let m = SparseSignMatrix::from_dense(&[vec![big, big - 1, 0], vec![0, big, big - 1], vec![big - 1, 0, big]]).unwrap();
        let r = smith_normal_form(&m);
        let det = BigInt::from(big as i64).pow(3) + BigInt::from(big as i64 - 1).pow(3);
        assert_eq!(r.torsion_order, det.magnitude().clone());
    }
}
