use crate::error::{Error, Result};

/// Kolmogorov-Smirnov distance between the empirical CDF of `sorted` and
/// `cdf`: max_i max(i/N - F(x_(i)), F(x_(i)) - (i-1)/N), in absolute value.
pub fn ks_statistic<F: Fn(f64) -> f64>(sorted: &[f64], cdf: F) -> Result<f64> {
    if sorted.is_empty() {
        return Err(Error::Domain("KS statistic needs at least one sample".into()));
    }
    if sorted.iter().any(|x| x.is_nan()) {
        return Err(Error::Domain("KS statistic got a NaN sample".into()));
    }
    if sorted.windows(2).any(|w| w[1] < w[0]) {
        return Err(Error::Domain("KS statistic needs sorted samples".into()));
    }
    let n = sorted.len() as f64;
    let mut d: f64 = 0.0;
    for (i, &x) in sorted.iter().enumerate() {
        let f = cdf(x);
        let upper = (i + 1) as f64 / n;
        let lower = i as f64 / n;
        d = d.max((upper - f).abs()).max((f - lower).abs());
    }
    Ok(d)
}

/// Sorts a copy of `values` and applies [`ks_statistic`].
pub fn ks_statistic_unsorted<F: Fn(f64) -> f64>(values: &[f64], cdf: F) -> Result<f64> {
    let mut sorted = values.to_vec();
    sorted.sort_by(f64::total_cmp);
    ks_statistic(&sorted, cdf)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn uniform(x: f64) -> f64 {
        x.clamp(0.0, 1.0)
    }

    #[test]
    fn single_sample_at_the_median() {
        assert_eq!(ks_statistic(&[0.5], uniform).unwrap(), 0.5);
    }

    #[test]
    fn rejects_bad_input() {
        assert!(ks_statistic(&[], uniform).is_err());
        assert!(ks_statistic(&[0.3, 0.1], uniform).is_err());
        assert!(ks_statistic(&[0.1, f64::NAN], uniform).is_err());
        assert!(ks_statistic_unsorted(&[0.3, 0.1], uniform).is_ok());
    }

    #[test]
    fn exact_quantiles() {
        let n = 9;
        let xs: Vec<f64> = (1..=n).map(|i| i as f64 / (n + 1) as f64).collect();
        let d = ks_statistic(&xs, uniform).unwrap();
        assert!((d - 1.0 / (n + 1) as f64).abs() < 1e-15);
    }
}
