use std::collections::BTreeMap;

use num_bigint::BigUint;
use num_traits::{ToPrimitive, Zero};
use rayon::prelude::*;
use serde::{Serialize, Serializer};

use crate::binom::{binom, binom_checked};
use crate::complex::{BoundaryTable, ColexSubsets};
use crate::error::{Error, Result};
use crate::linalg::{rank_exact_unguarded, smith_normal_form, EchelonModP, SparseSignMatrix, DEFAULT_PRIME, SECOND_PRIME};

/// Largest number of candidate subsets `C(C(n, d+1), C(n-1, d))` enumeration accepts.
pub const ENUMERATION_GUARD: u128 = 10_000_000;

/// Counts of `d`-hypertrees on `n` vertices with a histogram of torsion orders.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EnumerationSummary {
    pub n: u32,
    pub d: u32,
    #[serde(rename = "count")]
    pub hypertree_count: u64,
    /// Torsion order -> number of hypertrees; empty when torsion was not computed.
    pub torsion: BTreeMap<u64, u64>,
    /// `sum count * order^2` when torsion was computed.
    #[serde(serialize_with = "ser_opt_decimal")]
    pub kalai_sum: Option<BigUint>,
    /// `n^C(n-2, d)`.
    #[serde(serialize_with = "ser_decimal")]
    pub expected: BigUint,
    #[serde(skip)]
    pub subsets: u64,
    /// Negative verdicts where the two primes disagreed and exact rank decided.
    #[serde(skip)]
    pub escalations: u64,
}

fn ser_decimal<S: Serializer>(v: &BigUint, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_string())
}

fn ser_opt_decimal<S: Serializer>(v: &Option<BigUint>, s: S) -> std::result::Result<S::Ok, S::Error> {
    match v {
        Some(x) => s.serialize_str(&x.to_string()),
        None => s.serialize_none(),
    }
}

#[derive(Default)]
struct Tally {
    count: u64,
    torsion: BTreeMap<u64, u64>,
    subsets: u64,
    escalations: u64,
}

impl Tally {
    fn merge(mut self, other: Tally) -> Tally {
        self.count += other.count;
        self.subsets += other.subsets;
        self.escalations += other.escalations;
        for (k, v) in other.torsion {
            *self.torsion.entry(k).or_default() += v;
        }
        self
    }
}

/// Exhaustively enumerates `C(n-1, d)`-subsets of `d`-faces and counts hypertrees.
///
/// Work is split by the largest face of the subset and merged deterministically.
/// A full-rank verdict modulo the default prime is final; a deficient one is re-checked
/// modulo a second prime and settled by exact rank if the two disagree.
pub fn enumerate_hypertrees(n: u32, d: u32, with_torsion: bool) -> Result<EnumerationSummary> {
    if d == 0 || n == 0 {
        return Err(Error::Validation("need n >= 1 and d >= 1".into()));
    }
    let total = binom(n as u64, d as u64 + 1);
    let k = binom(n as u64 - 1, d as u64);
    let subsets = binom_checked(total, k);
    if subsets.is_none_or(|s| s > ENUMERATION_GUARD) {
        return Err(Error::Guard(format!(
            "C({total}, {k}) subsets exceeds the enumeration limit of {ENUMERATION_GUARD}"
        )));
    }
    let exponent = if n >= 2 { binom(n as u64 - 2, d as u64) } else { 0 };
    let expected = BigUint::from(n).pow(exponent as u32);
    let tally = if k == 0 {
        // Only the empty complex, which is trivially a hypertree.
        let mut t = Tally { count: 1, subsets: 1, ..Default::default() };
        if with_torsion {
            t.torsion.insert(1, 1);
        }
        t
    } else {
        let table = BoundaryTable::new(n, d);
        let rows = binom(n as u64, d as u64) as usize;
        let k = k as usize;
        (k as u64 - 1..total)
            .into_par_iter()
            .map(|top| enumerate_unit(&table, rows, k, top, with_torsion))
            .reduce(Tally::default, Tally::merge)
    };
    let kalai_sum = with_torsion.then(|| {
        tally
            .torsion
            .iter()
            .fold(BigUint::zero(), |acc, (&o, &c)| acc + BigUint::from(o).pow(2) * c)
    });
    Ok(EnumerationSummary {
        n,
        d,
        hypertree_count: tally.count,
        torsion: tally.torsion,
        kalai_sum,
        expected,
        subsets: tally.subsets,
        escalations: tally.escalations,
    })
}

/// All subsets whose largest face has rank `top`.
fn enumerate_unit(table: &BoundaryTable, rows: usize, k: usize, top: u64, with_torsion: bool) -> Tally {
    let mut t = Tally::default();
    let mut e1 = EchelonModP::new(rows, DEFAULT_PRIME, false);
    let mut e2 = EchelonModP::new(rows, SECOND_PRIME, false);
    let mut it = ColexSubsets::new(top as u32, k - 1);
    let mut faces = vec![0u64; k];
    while let Some(rest) = it.current() {
        for (slot, &r) in faces.iter_mut().zip(rest) {
            *slot = r as u64;
        }
        faces[k - 1] = top;
        t.subsets += 1;
        let r1 = rank_of(&mut e1, table, &faces);
        let is_tree = r1 == k || {
            let r2 = rank_of(&mut e2, table, &faces);
            if r1 == r2 {
                false
            } else {
                t.escalations += 1;
                rank_exact_unguarded(&matrix(table, rows, &faces)).rank == k
            }
        };
        if is_tree {
            t.count += 1;
            if with_torsion {
                let snf = smith_normal_form(&matrix(table, rows, &faces));
                let order = snf.torsion_order.to_u64().expect("torsion order fits in 64 bits");
                *t.torsion.entry(order).or_default() += 1;
            }
        }
        it.next_ref();
    }
    t
}

fn rank_of(e: &mut EchelonModP, table: &BoundaryTable, faces: &[u64]) -> usize {
    e.reset();
    for &f in faces {
        e.insert_sparse(table.column(f));
    }
    e.rank()
}

fn matrix(table: &BoundaryTable, rows: usize, faces: &[u64]) -> SparseSignMatrix {
    let mut m = SparseSignMatrix::new(rows);
    for &f in faces {
        m.push_column(table.column(f)).expect("table columns are well formed");
    }
    m
}
