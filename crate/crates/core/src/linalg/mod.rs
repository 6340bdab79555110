//! Exact linear algebra over prime fields, the rationals and the integers.

mod basis;
mod field;
mod gf2;
mod rank;
mod snf;
mod sparse;
mod structured;

pub use basis::IncrementalBasis;
pub use field::{is_prime_u64, Fp, DEFAULT_PRIME, SECOND_PRIME};
pub use gf2::{sketch_detects, Gf2Span};
pub use rank::{
    first_dependency_mod_p, rank_exact, rank_exact_unguarded, rank_mod_p, rank_verified, EchelonModP, Insert,
    RankMethod, RankReport, EXACT_RANK_MAX_COLS,
};
pub use snf::{smith_normal_form, SnfReport};
pub use sparse::SparseSignMatrix;
pub use structured::nullity_mod_p;
