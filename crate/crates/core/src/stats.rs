//! Estimator reports and the few statistics the experiments need.

use serde::{Deserialize, Serialize};

/// A point estimate with its standard error and, where known, the exact
/// reference value it is meant to reproduce.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StatReport {
    pub name: String,
    pub estimate: f64,
    /// Sample standard deviation over `sqrt(count)`; absent for statistics
    /// without a per-sample variance (exact values, KS distances).
    pub stderr: Option<f64>,
    pub count: u64,
    pub reference: Option<f64>,
}

impl StatReport {
    pub fn exact(name: impl Into<String>, value: f64, count: u64) -> Self {
        StatReport {
            name: name.into(),
            estimate: value,
            stderr: Some(0.0),
            count,
            reference: Some(value),
        }
    }

    /// Mean of 0/1 outcomes.
    pub fn from_indicator(
        name: impl Into<String>,
        hits: u64,
        count: u64,
        reference: Option<f64>,
    ) -> Self {
        let (mean, se) = indicator_mean_se(hits, count);
        StatReport {
            name: name.into(),
            estimate: mean,
            stderr: Some(se),
            count,
            reference,
        }
    }

    pub fn from_samples(name: impl Into<String>, values: &[f64], reference: Option<f64>) -> Self {
        let (mean, se) = mean_se(values);
        StatReport {
            name: name.into(),
            estimate: mean,
            stderr: Some(se),
            count: values.len() as u64,
            reference,
        }
    }

    /// `|estimate - reference| / stderr`, when both exist.
    pub fn z_score(&self) -> Option<f64> {
        let r = self.reference?;
        let se = self.stderr?;
        let d = (self.estimate - r).abs();
        Some(if se > 0.0 {
            d / se
        } else if d == 0.0 {
            0.0
        } else {
            f64::INFINITY
        })
    }
}

pub fn mean_se(values: &[f64]) -> (f64, f64) {
    let n = values.len();
    if n == 0 {
        return (f64::NAN, f64::NAN);
    }
    let mean = values.iter().sum::<f64>() / n as f64;
    if n == 1 {
        return (mean, 0.0);
    }
    let var = values.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (n - 1) as f64;
    (mean, (var / n as f64).sqrt())
}

/// Mean and standard error of `hits` successes in `count` 0/1 samples,
/// using the unbiased sample variance.
pub fn indicator_mean_se(hits: u64, count: u64) -> (f64, f64) {
    if count == 0 {
        return (f64::NAN, f64::NAN);
    }
    let p = hits as f64 / count as f64;
    if count == 1 {
        return (p, 0.0);
    }
    let var = p * (1.0 - p) * count as f64 / (count - 1) as f64;
    (p, (var / count as f64).sqrt())
}

/// One-sample Kolmogorov–Smirnov distance of `sample` to a continuous CDF.
pub fn ks_distance(sample: &[f64], cdf: impl Fn(f64) -> f64) -> f64 {
    let mut xs = sample.to_vec();
    xs.sort_by(f64::total_cmp);
    let m = xs.len() as f64;
    xs.iter()
        .enumerate()
        .map(|(i, &x)| {
            let f = cdf(x);
            let above = (i + 1) as f64 / m - f;
            let below = f - i as f64 / m;
            above.max(below)
        })
        .fold(0.0, f64::max)
}

/// Two-sample Kolmogorov–Smirnov distance.
pub fn ks_two_sample(a: &[f64], b: &[f64]) -> f64 {
    let mut a = a.to_vec();
    let mut b = b.to_vec();
    a.sort_by(f64::total_cmp);
    b.sort_by(f64::total_cmp);
    let (na, nb) = (a.len() as f64, b.len() as f64);
    let (mut i, mut j) = (0, 0);
    let mut d: f64 = 0.0;
    while i < a.len() && j < b.len() {
        let x = a[i].min(b[j]);
        while i < a.len() && a[i] <= x {
            i += 1;
        }
        while j < b.len() && b[j] <= x {
            j += 1;
        }
        d = d.max((i as f64 / na - j as f64 / nb).abs());
    }
    d
}

/// Ordinary least-squares slope and intercept of `y` on `x`.
pub fn linear_fit(x: &[f64], y: &[f64]) -> (f64, f64) {
    let n = x.len() as f64;
    let mx = x.iter().sum::<f64>() / n;
    let my = y.iter().sum::<f64>() / n;
    let sxy: f64 = x.iter().zip(y).map(|(a, b)| (a - mx) * (b - my)).sum();
    let sxx: f64 = x.iter().map(|a| (a - mx).powi(2)).sum();
    let slope = sxy / sxx;
    (slope, my - slope * mx)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn indicator_se_matches_sample_formula() {
        let v: Vec<f64> = [1, 0, 0, 1, 1, 0, 1, 1].iter().map(|&x| x as f64).collect();
        let (m1, s1) = mean_se(&v);
        let (m2, s2) = indicator_mean_se(5, 8);
        assert!((m1 - m2).abs() < 1e-15);
        assert!((s1 - s2).abs() < 1e-15);
    }

    #[test]
    fn ks_of_uniform_grid() {
        let xs: Vec<f64> = (0..100).map(|i| (i as f64 + 0.5) / 100.0).collect();
        assert!((ks_distance(&xs, |x| x) - 0.005).abs() < 1e-12);
        assert_eq!(ks_two_sample(&xs, &xs), 0.0);
        let a: Vec<f64> = (0..100).map(f64::from).collect();
        let b: Vec<f64> = (10..110).map(f64::from).collect();
        assert!((ks_two_sample(&a, &b) - 0.1).abs() < 1e-12);
    }

    #[test]
    fn exact_line() {
        let x = [1.0, 2.0, 3.0, 4.0];
        let y: Vec<f64> = x.iter().map(|v| 3.0 - 0.5 * v).collect();
        let (s, c) = linear_fit(&x, &y);
        assert!((s + 0.5).abs() < 1e-12 && (c - 3.0).abs() < 1e-12);
    }
}
