//! Small descriptive statistics used by the diagnostics.

/// Sample mean and (n - 1)-normalized standard deviation.
pub fn mean_sd(values: &[f64]) -> (f64, f64) {
    let n = values.len();
    if n == 0 {
        return (f64::NAN, f64::NAN);
    }
    let mean = values.iter().sum::<f64>() / n as f64;
    if n == 1 {
        return (mean, 0.0);
    }
    let ss: f64 = values.iter().map(|v| (v - mean) * (v - mean)).sum();
    (mean, (ss / (n - 1) as f64).sqrt())
}

/// Mean and its batch-means standard error for a correlated series.
///
/// The series is cut into `batches` contiguous blocks (the tail remainder is
/// dropped from the error estimate, not from the mean).
pub fn batch_means(values: &[f64], batches: usize) -> (f64, f64) {
    let (mean, _) = mean_sd(values);
    let batches = batches.max(2);
    let size = values.len() / batches;
    if size == 0 {
        return (mean, f64::NAN);
    }
    let block_means: Vec<f64> = values
        .chunks_exact(size)
        .take(batches)
        .map(|c| c.iter().sum::<f64>() / size as f64)
        .collect();
    let (_, sd) = mean_sd(&block_means);
    (mean, sd / (batches as f64).sqrt())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn mean_sd_small_cases() {
        let (m, s) = mean_sd(&[1.0, 2.0, 3.0, 4.0]);
        assert_eq!(m, 2.5);
        assert!((s - (5.0f64 / 3.0).sqrt()).abs() < 1e-15);
        assert_eq!(mean_sd(&[7.0]), (7.0, 0.0));
        assert!(mean_sd(&[]).0.is_nan());
    }

    #[test]
    fn batch_means_of_constant_blocks() {
        let values: Vec<f64> = (0..100).map(|i| (i / 25) as f64).collect();
        let (m, se) = batch_means(&values, 4);
        assert_eq!(m, 1.5);
        // block means 0, 1, 2, 3: sd = sqrt(5/3), se = sd / 2
        assert!((se - (5.0f64 / 3.0).sqrt() / 2.0).abs() < 1e-15);
    }
}
