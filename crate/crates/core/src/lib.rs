//! Computations on d-dimensional hypertrees: exact homological linear algebra,
//! enumeration and certification, random complex models, analytic constants and the
//! local limit of the 1-out model.

pub mod analytic;
pub mod binom;
pub mod complex;
pub mod error;
pub mod hypertree;
pub mod linalg;
pub mod local_limit;
pub mod random;
pub mod stats;

pub use complex::{
    boundary_chain, build_boundary_matrix, cofaces, face_rank, face_unrank, read_complex, write_complex, FaceKey,
    SignedChain, SimplicialComplex,
};
pub use error::{Error, Result};

pub type ThresholdConstantsF64 = analytic::ThresholdConstants<f64>;
pub type AlphaResultF64 = analytic::AlphaResult<f64>;
pub type CurvePointF64 = analytic::CurvePoint<f64>;
pub type FixedPointABF64 = local_limit::FixedPointAB<f64>;
pub type PopulationResultF64 = local_limit::PopulationResult<f64>;
pub type ThresholdConstantsF32 = analytic::ThresholdConstants<f32>;
pub type AlphaResultF32 = analytic::AlphaResult<f32>;
pub type FixedPointABF32 = local_limit::FixedPointAB<f32>;
