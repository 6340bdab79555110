use num_traits::{Float, FloatConst};
use serde::Serialize;

use crate::error::{invalid, Error, Result};

use super::quadrature::tanh_sinh;
use super::{bisect, lit, newton_polish};

/// The threshold root `t*` of `(d+1)(1-t) + (1+dt) ln t = 0` in `(0, 1)` and the critical
/// density `c* = -ln t* / (1-t*)^d`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ThresholdConstants<T> {
    pub d: u32,
    pub t_star: T,
    pub c_star: T,
}

impl<T: Float> ThresholdConstants<T> {
    /// `|(d+1)(1-t*) + (1+dt*) ln t*|`
    pub fn root_residual(&self) -> T {
        threshold_fn(self.d, self.t_star).abs()
    }

    /// `|c* + ln t* / (1-t*)^d|`
    pub fn c_residual(&self) -> T {
        (self.c_star + self.t_star.ln() / (T::one() - self.t_star).powi(self.d as i32)).abs()
    }
}

fn threshold_fn<T: Float>(d: u32, t: T) -> T {
    let df: T = lit(d as f64);
    (df + T::one()) * (T::one() - t) + (T::one() + df * t) * t.ln()
}

pub fn threshold<T: Float>(d: u32) -> Result<ThresholdConstants<T>> {
    if d < 2 {
        return invalid(format!(
            "the threshold equation has no root in (0, 1) for d = {d}: for d = 1 its only zero is the endpoint t = 1"
        ));
    }
    let df: T = lit(d as f64);
    let f = |t: T| threshold_fn(d, t);
    // f -> -inf at 0+, and f(1/2) = (d+1)/2 - (1+d/2) ln 2 > 0 for d >= 2
    let t = bisect(f, T::min_positive_value(), lit(0.5));
    let df_dt = |t: T| -(df + T::one()) + df * t.ln() + (T::one() + df * t) / t;
    let t_star = newton_polish(f, df_dt, t, T::min_positive_value(), lit(0.5));
    let c_star = -t_star.ln() / (T::one() - t_star).powi(d as i32);
    Ok(ThresholdConstants { d, t_star, c_star })
}

/// Branch formulas for one dimension above the threshold.
struct Branch<T> {
    d: u32,
    th: ThresholdConstants<T>,
}

impl<T: Float> Branch<T> {
    fn new(d: u32) -> Result<Self> {
        Ok(Branch { d, th: threshold(d)? })
    }

    fn df(&self) -> T {
        lit(self.d as f64)
    }

    /// Smallest positive root of `t = exp(-c (1-t)^d)`, for `c > c*`.
    fn t_of_c(&self, c: T) -> Result<T> {
        if !(c > self.th.c_star) {
            return invalid(format!(
                "t(c) is defined above c* = {:.12}; got c = {:.12}",
                self.th.c_star.to_f64().unwrap_or(f64::NAN),
                c.to_f64().unwrap_or(f64::NAN)
            ));
        }
        let d = self.d as i32;
        let g = |t: T| (-c * (T::one() - t).powi(d)).exp();
        let h = |t: T| t - g(t);
        let dh = |t: T| T::one() - g(t) * c * self.df() * (T::one() - t).powi(d - 1);
        // increasing iteration from 0 converges to the smallest root
        let mut t = T::zero();
        let mut converged = false;
        for _ in 0..100_000 {
            let next = g(t);
            if next <= t || next - t <= T::epsilon() * next {
                t = t.max(next);
                converged = true;
                break;
            }
            t = next;
        }
        if !converged {
            // h(0) < 0 < h(t*) when c > c*
            t = bisect(h, T::zero(), self.th.t_star);
        }
        Ok(newton_polish(h, dh, t, T::zero(), self.th.t_star))
    }

    fn sbar_of_t(&self, t: T) -> T {
        -((self.df() + T::one()) * (-t).ln_1p()).exp_m1()
    }

    fn r_of(&self, c: T, t: T) -> T {
        let d1 = self.df() + T::one();
        c / d1 * self.sbar_of_t(t) + (T::one() - t) - c * t * (T::one() - t).powi(self.d as i32)
    }

    /// `1 - r(c)` above the threshold, accurate when `t` is tiny.
    fn one_minus_r(&self, c: T, t: T) -> T {
        if t == T::zero() {
            return T::zero();
        }
        let d1 = self.df() + T::one();
        t - c * t * (self.sbar_of_t(t) / (d1 * t) - (T::one() - t).powi(self.d as i32))
    }

    fn sbar(&self, c: T) -> Result<T> {
        if c <= self.th.c_star {
            return Ok(T::one());
        }
        Ok(self.sbar_of_t(self.t_of_c(c)?))
    }

    fn r(&self, c: T) -> Result<T> {
        if c <= self.th.c_star {
            return Ok(c / (self.df() + T::one()));
        }
        Ok(self.r_of(c, self.t_of_c(c)?))
    }

    /// `r^{-1}(1 - delta)` for `delta` in `(0, 1]`.
    fn r_inverse_complement(&self, delta: T) -> Result<T> {
        let d1 = self.df() + T::one();
        let x = T::one() - delta;
        let r_star = self.th.c_star / d1;
        if x <= r_star {
            return Ok(x * d1);
        }
        let gap = |c: T| -> T {
            if c <= self.th.c_star {
                return T::one() - c / d1 - delta;
            }
            match self.t_of_c(c) {
                Ok(t) => self.one_minus_r(c, t) - delta,
                Err(_) => T::nan(),
            }
        };
        let lo = self.th.c_star;
        let mut hi = self.th.c_star + T::one();
        while gap(hi) > T::zero() {
            hi = hi + hi;
            if !hi.is_finite() {
                return Err(Error::Numerical("r^-1 bracket overflowed".into()));
            }
        }
        let c = bisect(gap, lo, hi);
        let dgap = |c: T| -> T { -self.sbar(c).unwrap_or(T::nan()) / d1 };
        Ok(newton_polish(gap, dgap, c, lo, hi))
    }
}

/// Smallest positive root of `t = exp(-c (1-t)^d)`; defined for `c > c*`.
pub fn t_of_c<T: Float>(c: T, d: u32) -> Result<T> {
    Branch::new(d)?.t_of_c(c)
}

fn check_c<T: Float>(c: T) -> Result<()> {
    if !(c >= T::zero()) || !c.is_finite() {
        return invalid("c must be finite and non-negative");
    }
    Ok(())
}

/// Limiting co-shadow density: 1 up to `c*`, then `1 - (1 - t_c)^{d+1}`.
pub fn sbar<T: Float>(c: T, d: u32) -> Result<T> {
    check_c(c)?;
    Branch::new(d)?.sbar(c)
}

/// Limiting normalised rank: `c/(d+1)` up to `c*`, then
/// `c/(d+1) s(c) + (1 - t_c) - c t_c (1 - t_c)^d`.
pub fn r_of_c<T: Float>(c: T, d: u32) -> Result<T> {
    check_c(c)?;
    Branch::new(d)?.r(c)
}

/// Inverse of the increasing function [`r_of_c`] on `[0, 1)`.
pub fn r_inverse<T: Float>(x: T, d: u32) -> Result<T> {
    if !(x >= T::zero()) {
        return invalid("r^-1 needs x >= 0");
    }
    if !(x < T::one()) {
        return invalid(format!(
            "r(c) < 1 for every finite c and tends to 1 as c grows, so r^-1({:.6}) does not exist",
            x.to_f64().unwrap_or(f64::NAN)
        ));
    }
    Branch::new(d)?.r_inverse_complement(T::one() - x)
}

/// The entropy constant computed in two ways.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct AlphaResult<T> {
    pub d: u32,
    /// `int_{c*/(d+1)}^1 ln s(r^{-1}(x)) dx`
    pub alpha_x_form: T,
    /// `1/(d+1) int_0^{t*}` of the integrand in the threshold variable.
    pub alpha_y_form: T,
    pub x_error: T,
    pub y_error: T,
}

impl<T: Float> AlphaResult<T> {
    /// `e^{1 + alpha} / (d + 1)`, the per-face constant of the growth-process bound.
    pub fn per_face_constant(&self) -> T {
        (T::one() + self.alpha_y_form).exp() / lit(self.d as f64 + 1.0)
    }
}

pub fn alpha<T: Float + FloatConst>(d: u32) -> Result<AlphaResult<T>> {
    let b = Branch::<T>::new(d)?;
    let tol = lit::<T>(1e-10).max(T::epsilon() * lit(1000.0));
    let df = b.df();
    let d1 = df + T::one();
    let y_integrand = |y: T, _| -> T {
        let s = -(d1 * (-y).ln_1p()).exp_m1();
        s * s.ln() * (T::one() - y + df * y * y.ln()) / (y * (T::one() - y).powi(b.d as i32 + 1))
    };
    let y = tanh_sinh(y_integrand, T::zero(), b.th.t_star, tol)?;
    let x_integrand = |_, delta: T| -> T {
        match b.r_inverse_complement(delta).and_then(|c| b.sbar(c)) {
            Ok(s) => s.ln(),
            Err(_) => T::nan(),
        }
    };
    let x = tanh_sinh(x_integrand, b.th.c_star / d1, T::one(), tol)?;
    Ok(AlphaResult { d, alpha_x_form: x.value, alpha_y_form: y.value / d1, x_error: x.error, y_error: y.error / d1 })
}

/// One row of the limiting curves; `t_c` is absent at or below the threshold.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CurvePoint<T> {
    pub c: T,
    pub t_c: Option<T>,
    pub sbar: T,
    pub r: T,
}

pub fn curve_table<T: Float>(d: u32, cs: &[T]) -> Result<Vec<CurvePoint<T>>> {
    let b = Branch::<T>::new(d)?;
    cs.iter()
        .map(|&c| {
            check_c(c)?;
            if c <= b.th.c_star {
                return Ok(CurvePoint { c, t_c: None, sbar: T::one(), r: c / (b.df() + T::one()) });
            }
            let t = b.t_of_c(c)?;
            Ok(CurvePoint { c, t_c: Some(t), sbar: b.sbar_of_t(t), r: b.r_of(c, t) })
        })
        .collect()
}

/// One-sided limits of both curves at `c*`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ThresholdJump<T> {
    pub sbar_left: T,
    pub sbar_right: T,
    pub r_left: T,
    pub r_right: T,
}

pub fn threshold_jump<T: Float>(d: u32) -> Result<ThresholdJump<T>> {
    let b = Branch::<T>::new(d)?;
    let (c, t) = (b.th.c_star, b.th.t_star);
    Ok(ThresholdJump {
        sbar_left: T::one(),
        sbar_right: b.sbar_of_t(t),
        r_left: c / (b.df() + T::one()),
        r_right: b.r_of(c, t),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    // 30-digit roots of the threshold equation (mpmath findroot)
    const THRESHOLDS: [(u32, f64, f64); 9] = [
        (2, 0.116_586_032_758_120_85, 2.753_805_829_974_258),
        (3, 0.027_501_575_928_863_859, 3.907_080_659_512_184_5),
        (4, 0.008_221_459_345_502_196_1, 4.962_191_956_310_503_1),
        (5, 0.002_731_238_638_491_849_2, 5.984_277_316_672_034_1),
        (6, 0.000_955_328_102_793_322_25, 6.993_446_311_275_761_8),
        (7, 0.000_342_887_642_627_306_87, 7.997_283_189_942_910_6),
        (8, 0.000_124_660_998_195_770_87, 8.998_883_082_541_485_3),
        (9, 4.560_737_446_412_403_3e-5, 9.999_544_861_999_791_7),
        (10, 1.673_555_035_719_245_8e-5, 10.999_816_078_373_805),
    ];

    #[test]
    fn threshold_table() {
        for (d, t, c) in THRESHOLDS {
            let th = threshold::<f64>(d).unwrap();
            assert!((th.t_star - t).abs() <= 1e-14 * t, "d={d}: {}", th.t_star);
            assert!((th.c_star - c).abs() <= 1e-12 * c, "d={d}: {}", th.c_star);
            assert!(th.root_residual() < 1e-12 && th.c_residual() < 1e-12);
        }
        assert!(threshold::<f64>(1).is_err());
    }

    #[test]
    fn single_precision_threshold() {
        let th = threshold::<f32>(2).unwrap();
        assert!((th.c_star - 2.753_806).abs() < 1e-5);
    }

    #[test]
    fn curve_values() {
        // (c, t_c, s, r) for d = 2 from a 30-digit fixed-point iteration
        let rows = [
            (3.0, 0.078_109_129_861_428_7, 0.216_500_827_707_47, 0.939_240_885_389_074),
            (3.5, 0.039_634_429_777_402_2, 0.114_252_886_511_934, 0.965_718_402_053_338),
            (4.0, 0.021_756_534_988_082_6, 0.063_859_862_906_719_9, 0.980_109_389_906_574),
            (5.0, 0.007_242_121_999_611_24, 0.021_569_400_842_874_1, 0.993_018_853_531_634),
        ];
        for (c, t, s, r) in rows {
            let tc: f64 = t_of_c(c, 2).unwrap();
            assert!((tc - t).abs() < 1e-13, "c={c}");
            assert!((tc - (-c * (1.0 - tc).powi(2)).exp()).abs() < 1e-12);
            assert!((sbar(c, 2).unwrap() - s).abs() < 1e-13);
            assert!((r_of_c(c, 2).unwrap() - r).abs() < 1e-13);
        }
        assert_eq!(sbar(1.0, 2).unwrap(), 1.0);
        assert!((r_of_c(1.0, 2).unwrap() - 1.0 / 3.0).abs() < 1e-16);
        assert!(t_of_c(2.0, 2).is_err());
        let grid: Vec<f64> = (3..=10).map(f64::from).collect();
        let ts: Vec<f64> = grid.iter().map(|&c| t_of_c(c, 2).unwrap()).collect();
        assert!(ts.windows(2).all(|w| w[0] > w[1]));
    }

    #[test]
    fn inverse_round_trip() {
        // r flattens like 1 - e^{-c}, so beyond c ~ 10 one ulp of x moves c visibly
        for c in [0.5, 2.0, 2.9, 4.0, 7.5, 10.0] {
            let x = r_of_c(c, 2).unwrap();
            assert!((r_inverse(x, 2).unwrap() - c).abs() < 1e-9 * c.max(1.0), "c={c}");
        }
        assert!(r_inverse(1.0, 2).is_err());
        assert!(r_inverse(-0.1, 2).is_err());
    }

    #[test]
    fn derivative_identities() {
        let th = threshold::<f64>(2).unwrap();
        let h = 1e-5;
        for i in 0..50 {
            let c = th.c_star + 0.05 + 0.15 * i as f64;
            let dr = (r_of_c(c + h, 2).unwrap() - r_of_c(c - h, 2).unwrap()) / (2.0 * h);
            assert!((dr - sbar(c, 2).unwrap() / 3.0).abs() < 1e-6, "c={c}");
            let t = t_of_c(c, 2).unwrap();
            let dt = (t_of_c(c + h, 2).unwrap() - t_of_c(c - h, 2).unwrap()) / (2.0 * h);
            let formula = -t * (1.0 - t).powi(3) / (1.0 - t + 2.0 * t * t.ln());
            assert!((dt - formula).abs() < 1e-6, "c={c}");
        }
    }

    #[test]
    fn threshold_limits() {
        let j = threshold_jump::<f64>(2).unwrap();
        assert!((j.r_left - j.r_right).abs() < 1e-12);
        assert!(j.sbar_right < j.sbar_left);
        let th = threshold::<f64>(2).unwrap();
        let eps = 1e-8;
        let left = r_of_c(th.c_star - eps, 2).unwrap();
        let right = r_of_c(th.c_star + eps, 2).unwrap();
        assert!((left - right).abs() < 1e-7);
    }

    #[test]
    fn alpha_values() {
        let expected = [
            (2, -0.187_137_761_995_787_63),
            (3, -0.076_837_715_922_220_06),
            (4, -0.032_053_300_476_469_927),
            (5, -0.013_453_406_971_777_942),
            (6, -0.005_634_711_448_924_588_5),
            (7, -0.002_344_539_710_818_275_7),
            (8, -0.000_967_382_612_251_096_97),
        ];
        for (d, a) in expected {
            let r = alpha::<f64>(d).unwrap();
            assert!((r.alpha_y_form - a).abs() < 1e-9, "d={d}: {}", r.alpha_y_form);
            assert!((r.alpha_x_form - r.alpha_y_form).abs() < 1e-6, "d={d}: {}", r.alpha_x_form);
        }
        let r = alpha::<f64>(2).unwrap();
        assert!((r.per_face_constant() - 0.751_450_417_008).abs() < 1e-11);
    }
}
