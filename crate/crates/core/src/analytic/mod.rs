//! Threshold constants, the rank and co-shadow density curves of random complexes, and
//! the entropy constant of the acyclic growth process.
//!
//! Everything is generic over [`num_traits::Float`]; the crate root exports `f64`
//! aliases. Roots are bracketed by bisection and polished by Newton steps, and
//! integrals use tanh-sinh quadrature.

mod constants;
mod quadrature;

pub use constants::{
    alpha, curve_table, r_inverse, r_of_c, sbar, t_of_c, threshold, threshold_jump, AlphaResult, CurvePoint,
    ThresholdConstants, ThresholdJump,
};
pub use quadrature::{tanh_sinh, Integral};

use num_traits::Float;

/// `x` as a `T`; every literal used here is representable.
#[inline]
pub(crate) fn lit<T: Float>(x: f64) -> T {
    T::from(x).expect("literal representable in the scalar type")
}

/// Bisection on a sign change of `f` over `[lo, hi]`, down to adjacent floats.
pub(crate) fn bisect<T: Float, F: Fn(T) -> T>(f: F, mut lo: T, mut hi: T) -> T {
    let neg_lo = f(lo) < T::zero();
    for _ in 0..2000 {
        let mid = lo + (hi - lo) / lit(2.0);
        if mid <= lo || mid >= hi {
            break;
        }
        if (f(mid) < T::zero()) == neg_lo {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    if f(lo).abs() <= f(hi).abs() {
        lo
    } else {
        hi
    }
}

/// A few Newton steps from `x`, each kept only if it stays in `[lo, hi]` and shrinks
/// the residual.
pub(crate) fn newton_polish<T: Float, F: Fn(T) -> T, G: Fn(T) -> T>(f: F, df: G, mut x: T, lo: T, hi: T) -> T {
    for _ in 0..8 {
        let fx = f(x);
        let step = fx / df(x);
        let next = x - step;
        if !next.is_finite() || next < lo || next > hi || f(next).abs() >= fx.abs() {
            break;
        }
        x = next;
    }
    x
}
