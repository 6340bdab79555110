//! Rank over prime fields and over the rationals.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;
use serde::Serialize;

use super::field::{Fp, DEFAULT_PRIME, SECOND_PRIME};
use super::sparse::SparseSignMatrix;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum RankMethod {
    PrimeField,
    ExactRational,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RankReport {
    pub rank: usize,
    pub method: RankMethod,
    pub prime: Option<u64>,
}

/// Column limit for [`rank_exact`] unless the caller overrides it.
pub const EXACT_RANK_MAX_COLS: usize = 2000;

const NONE: u32 = u32::MAX;

/// Row-echelon basis over GF(p) built one dense column at a time.
///
/// Each stored vector is normalised to 1 at its pivot (its first nonzero row) and is
/// zero above it. When `track` is set, every stored vector also carries its expression
/// as a combination of the inserted columns.
#[derive(Debug, Clone)]
pub struct EchelonModP {
    f: Fp,
    rows: usize,
    basis: Vec<u64>,
    pivot_rows: Vec<usize>,
    pivot_of_row: Vec<u32>,
    track: bool,
    combos: Vec<Vec<u64>>,
    inserted: usize,
    scratch: Vec<u64>,
}

/// Outcome of inserting a column into an [`EchelonModP`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Insert {
    Independent,
    /// Dependent; with tracking, coefficients `c` over inserted columns (including this
    /// one, with coefficient 1) such that `sum_j c_j col_j = 0`.
    Dependent(Option<Vec<u64>>),
}

impl EchelonModP {
    pub fn new(rows: usize, p: u64, track: bool) -> Self {
        EchelonModP {
            f: Fp::new(p),
            rows,
            basis: Vec::new(),
            pivot_rows: Vec::new(),
            pivot_of_row: vec![NONE; rows],
            track,
            combos: Vec::new(),
            inserted: 0,
            scratch: Vec::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.pivot_rows.len()
    }

    /// Forgets all inserted columns, keeping allocations.
    pub fn reset(&mut self) {
        self.basis.clear();
        self.pivot_rows.clear();
        self.pivot_of_row.fill(NONE);
        self.combos.clear();
        self.inserted = 0;
    }

    pub fn insert_sparse(&mut self, col: &[(u32, i32)]) -> Insert {
        let mut v = std::mem::take(&mut self.scratch);
        v.clear();
        v.resize(self.rows, 0);
        for &(r, x) in col {
            v[r as usize] = self.f.from_i64(x as i64);
        }
        let out = self.reduce_and_store(&mut v);
        self.scratch = v;
        out
    }

    pub fn insert_dense(&mut self, mut v: Vec<u64>) -> Insert {
        assert_eq!(v.len(), self.rows, "column length must equal the row count");
        self.reduce_and_store(&mut v)
    }

    fn reduce_and_store(&mut self, v: &mut [u64]) -> Insert {
        let f = self.f;
        let me = self.inserted;
        self.inserted += 1;
        let mut combo = if self.track {
            let mut c = vec![0u64; me + 1];
            c[me] = 1;
            Some(c)
        } else {
            None
        };
        for r in 0..self.rows {
            let x = v[r];
            if x == 0 {
                continue;
            }
            let k = self.pivot_of_row[r];
            if k == NONE {
                let inv = f.inv(x);
                for e in &mut v[r..] {
                    *e = f.mul(*e, inv);
                }
                if let Some(c) = combo.as_mut() {
                    for e in c.iter_mut() {
                        *e = f.mul(*e, inv);
                    }
                    self.combos.push(std::mem::take(c));
                }
                self.pivot_of_row[r] = self.pivot_rows.len() as u32;
                self.pivot_rows.push(r);
                self.basis.extend_from_slice(v);
                return Insert::Independent;
            }
            let b = &self.basis[k as usize * self.rows..(k as usize + 1) * self.rows];
            for i in r..self.rows {
                if b[i] != 0 {
                    v[i] = f.sub_mul(v[i], x, b[i]);
                }
            }
            if let Some(c) = combo.as_mut() {
                for (i, &bc) in self.combos[k as usize].iter().enumerate() {
                    if bc != 0 {
                        c[i] = f.sub_mul(c[i], x, bc);
                    }
                }
            }
        }
        Insert::Dependent(combo)
    }
}

/// Rank of `m` over GF(p).
pub fn rank_mod_p(m: &SparseSignMatrix, p: u64) -> RankReport {
    let mut e = EchelonModP::new(m.rows(), p, false);
    for col in m.columns() {
        if e.rank() == m.rows() {
            break;
        }
        e.insert_sparse(col);
    }
    RankReport { rank: e.rank(), method: RankMethod::PrimeField, prime: Some(p) }
}

/// The first column that depends on its predecessors over GF(p), with a relation
/// `sum_j c_j col_j = 0` normalised so the dependent column has coefficient 1.
pub fn first_dependency_mod_p(m: &SparseSignMatrix, p: u64) -> Option<(usize, Vec<u64>)> {
    let mut e = EchelonModP::new(m.rows(), p, true);
    for (j, col) in m.columns().enumerate() {
        if let Insert::Dependent(Some(c)) = e.insert_sparse(col) {
            return Some((j, c));
        }
    }
    None
}

/// Rank over the rationals by fraction-free (Bareiss) elimination, refusing matrices
/// with more than [`EXACT_RANK_MAX_COLS`] columns.
pub fn rank_exact(m: &SparseSignMatrix) -> Result<RankReport> {
    if m.cols() > EXACT_RANK_MAX_COLS {
        return Err(Error::Guard(format!(
            "{} columns exceeds the exact-rank limit of {EXACT_RANK_MAX_COLS}; use rank_exact_unguarded to override",
            m.cols()
        )));
    }
    Ok(rank_exact_unguarded(m))
}

pub fn rank_exact_unguarded(m: &SparseSignMatrix) -> RankReport {
    let dense = m.to_dense();
    let (rows, cols) = (m.rows(), m.cols());
    let mut a: Vec<Vec<BigInt>> = dense
        .iter()
        .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
        .collect();
    let mut prev = BigInt::from(1);
    let mut rank = 0usize;
    for c in 0..cols {
        if rank == rows {
            break;
        }
        let Some(piv) = (rank..rows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(rank, piv);
        let pivot = a[rank][c].clone();
        for i in rank + 1..rows {
            let lead = a[i][c].clone();
            for j in c + 1..cols {
                let num = &a[i][j] * &pivot - &lead * &a[rank][j];
                let (q, r) = num.div_rem(&prev);
                debug_assert!(r.is_zero(), "Bareiss division must be exact");
                a[i][j] = q;
            }
            a[i][c] = BigInt::zero();
        }
        prev = pivot;
        rank += 1;
    }
    RankReport { rank, method: RankMethod::ExactRational, prime: None }
}

/// Rational rank with the prime-field proxy: full column rank mod the default prime is
/// accepted as is; a deficiency is re-checked with a second prime, and disagreement
/// escalates to exact elimination (or the larger modular rank when beyond the guard).
pub fn rank_verified(m: &SparseSignMatrix) -> RankReport {
    let r1 = rank_mod_p(m, DEFAULT_PRIME);
    if r1.rank == m.cols() || r1.rank == m.rows() {
        return r1;
    }
    let r2 = rank_mod_p(m, SECOND_PRIME);
    if r1.rank == r2.rank {
        return r1;
    }
    match rank_exact(m) {
        Ok(r) => r,
        Err(_) => {
            if r1.rank >= r2.rank {
                r1
            } else {
                r2
            }
        }
    }
}
