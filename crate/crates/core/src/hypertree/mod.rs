//! Hypertree certification, co-shadows, peeling, enumeration, coning and bounds.

mod bounds;
mod cone;
mod enumerate;
mod peel;

pub use bounds::{bound_evaluators, BoundReport, EULER_GAMMA};
pub use cone::{cone_extend, cone_hypertree};
pub use enumerate::{enumerate_hypertrees, EnumerationSummary, ENUMERATION_GUARD};
pub use peel::{peel_collapse, PeelResult};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::binom::binom;
use crate::complex::{build_boundary_matrix, BoundaryTable, SimplicialComplex};
use crate::error::{invalid, Error, Result};
use crate::linalg::{
    nullity_mod_p, rank_exact, rank_verified, IncrementalBasis, RankMethod, DEFAULT_PRIME, SECOND_PRIME,
};

/// Rank data for a complex and whether it is a hypertree.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HypertreeCertificate {
    pub is_hypertree: bool,
    pub face_count: usize,
    pub rank: usize,
    /// Dimension of the top homology: `face_count - rank`.
    pub beta_top: usize,
    /// Dimension of the codimension-one homology: `C(n-1, d) - rank`.
    pub beta_codim1: usize,
    pub method: RankMethod,
}

/// Certifies `x` using the rational rank (prime-field proxy with escalation).
pub fn certify(x: &SimplicialComplex) -> HypertreeCertificate {
    let m = build_boundary_matrix(x);
    let r = rank_verified(&m);
    let k = x.hypertree_size() as usize;
    let beta_top = x.len() - r.rank;
    HypertreeCertificate {
        is_hypertree: x.len() == k && beta_top == 0,
        face_count: x.len(),
        rank: r.rank,
        beta_top,
        beta_codim1: k - r.rank,
        method: r.method,
    }
}

/// The top Betti number over the rationals: `|X| - rank(X)`.
///
/// Peeling keeps the top homology, so only the core is examined. A zero kernel modulo
/// the default prime is conclusive; otherwise a second prime must agree, and a
/// disagreement is settled by exact elimination (or the smaller count beyond its guard).
pub fn betti_top(x: &SimplicialComplex) -> usize {
    let core = peel_collapse(x, None).core;
    if core.is_empty() {
        return 0;
    }
    let m = build_boundary_matrix(&core);
    let a = nullity_mod_p(&m, DEFAULT_PRIME);
    if a == 0 {
        return 0;
    }
    let b = nullity_mod_p(&m, SECOND_PRIME);
    if a == b {
        return a;
    }
    rank_exact(&m).map_or(a.min(b), |r| core.len() - r.rank)
}

/// Builds a basis for the span of an acyclic complex, trying the second prime if the
/// first reports a spurious dependency.
pub(crate) fn acyclic_basis(x: &SimplicialComplex, table: &BoundaryTable) -> Result<IncrementalBasis> {
    for p in [DEFAULT_PRIME, SECOND_PRIME] {
        let mut b = IncrementalBasis::new(x.ridge_count() as usize, p);
        if x.face_ranks().iter().all(|&r| b.insert(table.column(r))) {
            return Ok(b);
        }
    }
    let cert = certify(x);
    if cert.beta_top > 0 {
        invalid(format!("co-shadow requires an acyclic complex; top Betti number is {}", cert.beta_top))
    } else {
        Err(Error::Invariant("acyclic complex reported dependent modulo both primes".into()))
    }
}

/// The co-shadow of an acyclic complex: all `d`-faces whose boundary is independent of
/// the boundaries of `x`, returned as a complex on the same vertices.
///
/// A random left-kernel vector screens every face; faces it does not separate are
/// settled by an exact membership test, so the result does not depend on the screen.
pub fn coshadow(x: &SimplicialComplex) -> Result<SimplicialComplex> {
    let table = BoundaryTable::new(x.n(), x.d());
    let basis = acyclic_basis(x, &table)?;
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_c05a);
    let z = basis.left_kernel_vector(&mut rng);
    let out: Vec<u64> = (0..x.total_faces())
        .filter(|&r| {
            let col = table.column(r);
            basis.dot(&z, col) != 0 || !basis.contains(col)
        })
        .collect();
    SimplicialComplex::from_ranks(x.n(), x.d(), out)
}

/// `ceil(C(n, d+1) * (1 - m / C(n-1, d)))`, the guaranteed co-shadow size of an acyclic
/// complex with `m` faces.
pub fn coshadow_lower_bound(n: u32, d: u32, m: u64) -> Result<u64> {
    if n == 0 || d == 0 {
        return invalid("need n >= 1 and d >= 1");
    }
    let k = binom(n as u64 - 1, d as u64);
    if m > k {
        return invalid(format!("m = {m} exceeds C({}, {d}) = {k}", n - 1));
    }
    if k == 0 {
        return Ok(0);
    }
    let total = binom(n as u64, d as u64 + 1) as u128;
    let (num, den) = (total * (k - m) as u128, k as u128);
    Ok(num.div_ceil(den) as u64)
}
