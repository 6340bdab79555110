//! Small summary statistics used by the experiments.

use serde::Serialize;
use statrs::distribution::{ChiSquared, ContinuousCDF};

/// Two-sided 99% normal quantile.
pub const Z_99: f64 = 2.575_829_303_548_901;

/// Sample mean and the standard error of the mean.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MeanStderr {
    pub mean: f64,
    pub stderr: f64,
    pub count: usize,
}

impl MeanStderr {
    /// Summarises `xs` in order, so equal inputs give bit-identical results.
    pub fn of(xs: &[f64]) -> Self {
        let count = xs.len();
        if count == 0 {
            return MeanStderr { mean: f64::NAN, stderr: f64::NAN, count };
        }
        let n = count as f64;
        let mean = xs.iter().sum::<f64>() / n;
        let stderr = if count > 1 {
            let var = xs.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (n - 1.0);
            (var / n).sqrt()
        } else {
            0.0
        };
        MeanStderr { mean, stderr, count }
    }

    /// Unbiased sample variance.
    pub fn variance(&self) -> f64 {
        self.stderr * self.stderr * self.count as f64
    }
}

/// Wilson score interval for a binomial proportion.
pub fn wilson_interval(successes: u64, trials: u64, z: f64) -> (f64, f64) {
    if trials == 0 {
        return (0.0, 1.0);
    }
    let n = trials as f64;
    let p = successes as f64 / n;
    let z2 = z * z;
    let centre = (p + z2 / (2.0 * n)) / (1.0 + z2 / n);
    let half = z / (1.0 + z2 / n) * (p * (1.0 - p) / n + z2 / (4.0 * n * n)).sqrt();
    ((centre - half).max(0.0), (centre + half).min(1.0))
}

/// Pearson goodness-of-fit test of `counts` against the uniform distribution.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ChiSquareTest {
    pub statistic: f64,
    pub dof: u64,
    pub critical: f64,
    pub p_value: f64,
    pub pass: bool,
}

/// Tests uniformity at level `1 - confidence`; needs at least two categories.
pub fn chi_square_uniform(counts: &[u64], confidence: f64) -> ChiSquareTest {
    assert!(counts.len() >= 2, "need at least two categories");
    let total: u64 = counts.iter().sum();
    let expected = total as f64 / counts.len() as f64;
    let statistic = counts.iter().map(|&c| (c as f64 - expected).powi(2) / expected).sum::<f64>();
    let dof = counts.len() as u64 - 1;
    let dist = ChiSquared::new(dof as f64).expect("positive degrees of freedom");
    let critical = dist.inverse_cdf(confidence);
    ChiSquareTest { statistic, dof, critical, p_value: dist.sf(statistic), pass: statistic <= critical }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn mean_and_stderr() {
        let s = MeanStderr::of(&[1.0, 2.0, 3.0, 4.0]);
        assert_eq!(s.mean, 2.5);
        assert!((s.stderr - (5.0f64 / 12.0).sqrt()).abs() < 1e-15);
        assert!((s.variance() - 5.0 / 3.0).abs() < 1e-12);
    }

    #[test]
    fn wilson_brackets_the_proportion() {
        let (lo, hi) = wilson_interval(80, 100, Z_99);
        assert!(lo < 0.8 && 0.8 < hi);
        // statsmodels proportion_confint(80, 100, alpha=0.01, method="wilson")
        assert!((lo - 0.679_826_467_384_555).abs() < 1e-12 && (hi - 0.882_841_119_985_951).abs() < 1e-12, "{lo} {hi}");
        assert_eq!(wilson_interval(0, 0, Z_99), (0.0, 1.0));
    }

    #[test]
    fn chi_square_critical_value() {
        let t = chi_square_uniform(&[100, 100, 100], 0.99);
        assert_eq!(t.statistic, 0.0);
        assert!(t.pass);
        // chi2(2) 99% quantile = -2 ln 0.01
        assert!((t.critical - 2.0 * 100f64.ln()).abs() < 1e-9);
        assert!(!chi_square_uniform(&[200, 100, 0], 0.99).pass);
    }
}
