//! The limiting `d`-tree of the 1-out model: sampling, neighbourhood statistics of
//! finite samples against it, its scalar fixed points and the distributional recursion
//! for the spectral atom at zero.

mod census;
mod population;
mod tree;

pub use census::{neighborhood_census, CensusReport, CensusRow, DEGREE_CAP};
pub use population::{population_dynamics, PopulationResult, POPULATION_BLOCK};
pub use tree::{sample_bd, DTreeNode, Role, TypeTag};

use num_traits::Float;
use serde::Serialize;

use crate::analytic::{bisect, lit};
use crate::error::{invalid, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum BranchLabel {
    Trivial,
    Nontrivial,
}

/// A solution of `a = (1 - (1-a)^d) b` and `b = exp(-d (1-b) (1-a)^{d-1})`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FixedPointAB<T> {
    pub a: T,
    pub b: T,
    pub branch: BranchLabel,
}

impl<T: Float> FixedPointAB<T> {
    /// Absolute residuals of the two defining equations.
    pub fn residuals(&self, d: u32) -> (T, T) {
        let (a, b, one) = (self.a, self.b, T::one());
        let df: T = lit(d as f64);
        let first = a - (one - (one - a).powi(d as i32)) * b;
        let second = b - (-df * (one - b) * (one - a).powi(d as i32 - 1)).exp();
        (first.abs(), second.abs())
    }
}

/// `a - b(1 - (1-a)^d) - (1-b)(1 - (1-a)^d - d a (1-a)^{d-1})`, the expected spectral
/// atom in terms of the scalar fixed point.
pub fn expected_x_formula<T: Float>(a: T, b: T, d: u32) -> T {
    let one = T::one();
    let df: T = lit(d as f64);
    let q = (one - a).powi(d as i32);
    a - b * (one - q) - (one - b) * (one - q - df * a * (one - a).powi(d as i32 - 1))
}

/// All fixed points found: the trivial branch `a = 0`, any interior solutions located
/// by a sign scan in `a`, and the corner `(1, 1)`.
pub fn solve_ab<T: Float>(d: u32) -> Result<Vec<FixedPointAB<T>>> {
    if d < 2 {
        return invalid(format!("need d >= 2, got {d}"));
    }
    let one = T::one();
    let df: T = lit(d as f64);
    let mut out = Vec::new();
    // b = exp(-d(1-b)): concave gap, negative at 0, positive just below the root at 1
    let h = |b: T| b - (-df * (one - b)).exp();
    let hi = one - (df - one) / (df * df);
    out.push(FixedPointAB { a: T::zero(), b: bisect(h, T::zero(), hi), branch: BranchLabel::Trivial });

    let b_of = |a: T| a / (one - (one - a).powi(d as i32));
    let gap = |a: T| {
        let b = b_of(a);
        b - (-df * (one - b) * (one - a).powi(d as i32 - 1)).exp()
    };
    const GRID: usize = 4096;
    let lo: T = lit(1e-6);
    let step = (one - lo - lo) / lit(GRID as f64);
    let mut prev = (lo, gap(lo));
    for i in 1..=GRID {
        let a = lo + step * lit(i as f64);
        let g = gap(a);
        if (prev.1 < T::zero()) != (g < T::zero()) {
            let root = bisect(gap, prev.0, a);
            out.push(FixedPointAB { a: root, b: b_of(root), branch: BranchLabel::Nontrivial });
        }
        prev = (a, g);
    }
    out.push(FixedPointAB { a: one, b: one, branch: BranchLabel::Trivial });
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fixed_points() {
        // mpmath roots at 30 digits
        let expected = [
            (2, 0.203_187_869_979_979_95, 0.367_503_567_339_596_02, 0.612_558_765_822_444_23, -0.052_327_376_057_148_081),
            (3, 0.059_520_209_292_640_369, 0.307_842_800_594_990_41, 0.460_566_569_409_074_66, -0.121_887_559_631_535_41),
            (4, 0.019_827_401_281_778_414, 0.268_221_700_373_828_76, 0.376_060_771_793_961_1, -0.182_696_571_015_069_93),
        ];
        for (d, b0, a1, b1, ex) in expected {
            let pts = solve_ab::<f64>(d).unwrap();
            assert_eq!(pts.len(), 3);
            assert!((pts[0].b - b0).abs() < 1e-14 && pts[0].a == 0.0);
            assert!((pts[1].a - a1).abs() < 1e-12 && (pts[1].b - b1).abs() < 1e-12, "{pts:?}");
            assert_eq!(pts[1].branch, BranchLabel::Nontrivial);
            assert!((expected_x_formula(pts[1].a, pts[1].b, d) - ex).abs() < 1e-12);
            for p in &pts {
                let (r1, r2) = p.residuals(d);
                assert!(r1 < 1e-12 && r2 < 1e-12);
                assert!(expected_x_formula(p.a, p.b, d) <= 1e-12);
            }
        }
        assert!(solve_ab::<f64>(1).is_err());
    }

    #[test]
    fn formula_corners() {
        assert_eq!(expected_x_formula(1.0, 1.0, 5), 0.0);
        assert_eq!(expected_x_formula(0.0, 0.203_187_869_979_979_95, 2), 0.0);
        let pts = solve_ab::<f32>(2).unwrap();
        assert!((pts[1].a - 0.367_503_6).abs() < 1e-4);
    }
}
