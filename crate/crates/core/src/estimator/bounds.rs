//! Sample sizes and half-widths from the Hoeffding and Bernstein tail
//! bounds for means of `k` samples with range `[0, n/2]`.

use crate::error::EstimatorError;

fn check(t: Option<f64>, delta: f64) -> Result<f64, EstimatorError> {
    if let Some(t) = t {
        if !(t > 0.0 && t.is_finite()) {
            return Err(EstimatorError::InvalidHalfWidth(t));
        }
    }
    if !(delta > 0.0 && delta < 1.0) {
        return Err(EstimatorError::InvalidDelta(delta));
    }
    Ok((2.0 / delta).ln())
}

/// Smallest `k` with `2 exp(-8 k t² / n²) <= δ`.
pub fn hoeffding_sample_size(n: usize, t: f64, delta: f64) -> Result<u64, EstimatorError> {
    let l = check(Some(t), delta)?;
    let n = n as f64;
    Ok(((n * n * l / (8.0 * t * t)).ceil() as u64).max(1))
}

/// `t` solving `2 exp(-8 k t² / n²) = δ`.
pub fn hoeffding_half_width(n: usize, k: u64, delta: f64) -> Result<f64, EstimatorError> {
    let l = check(None, delta)?;
    if k == 0 {
        return Err(EstimatorError::NoSamples);
    }
    Ok(n as f64 * (l / (8.0 * k as f64)).sqrt())
}

/// Smallest `k` with `2 exp(-k t² / (n + 2t/3)) <= δ`.
pub fn bernstein_sample_size(n: usize, t: f64, delta: f64) -> Result<u64, EstimatorError> {
    let l = check(Some(t), delta)?;
    Ok((((n as f64 + 2.0 * t / 3.0) * l / (t * t)).ceil() as u64).max(1))
}

/// `t` solving `2 exp(-k t² / (n + 2t/3)) = δ`, the positive root of
/// `k t² - (2L/3) t - n L = 0` with `L = ln(2/δ)`.
pub fn bernstein_half_width(n: usize, k: u64, delta: f64) -> Result<f64, EstimatorError> {
    let l = check(None, delta)?;
    if k == 0 {
        return Err(EstimatorError::NoSamples);
    }
    let (k, n) = (k as f64, n as f64);
    let b = 2.0 * l / 3.0;
    Ok((b + (b * b + 4.0 * k * n * l).sqrt()) / (2.0 * k))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hoeffding_examples() {
        assert_eq!(hoeffding_sample_size(100, 0.35, 0.05).unwrap(), 37_642);
        assert_eq!(hoeffding_sample_size(100, 1.0, 0.05).unwrap(), 4_612);
        // The constant in front of n²/t² at 95%.
        let c = (2.0f64 / 0.05).ln() / 8.0;
        assert!((c - 0.4611).abs() < 5e-5);
        let k1 = hoeffding_sample_size(100, 0.5, 0.05).unwrap();
        let k2 = hoeffding_sample_size(100, 1.0, 0.05).unwrap();
        assert!((k1 as f64 / k2 as f64 - 4.0).abs() < 1e-3);
    }

    #[test]
    fn bernstein_examples() {
        assert_eq!(bernstein_sample_size(100, 0.1, 0.05).unwrap(), 36_914);
        assert_eq!(bernstein_sample_size(1, 100.0, 0.999_999).unwrap(), 1);
        let a = bernstein_sample_size(200, 0.5, 0.05).unwrap() as f64;
        let b = bernstein_sample_size(100, 0.5, 0.05).unwrap() as f64;
        assert!((a / b - 2.0).abs() < 0.01);
    }

    #[test]
    fn widths_invert_sizes() {
        for (n, t) in [(100, 0.35), (50, 0.2), (8, 0.05)] {
            let k = hoeffding_sample_size(n, t, 0.05).unwrap();
            let w = hoeffding_half_width(n, k, 0.05).unwrap();
            assert!(w <= t && w > t * 0.999);
            let k = bernstein_sample_size(n, t, 0.05).unwrap();
            let w = bernstein_half_width(n, k, 0.05).unwrap();
            assert!(w <= t && w > t * 0.999);
            let l = (2.0f64 / 0.05).ln();
            let back = 2.0 * (-(k as f64) * w * w / (n as f64 + 2.0 * w / 3.0)).exp();
            assert!((back - 0.05).abs() < 1e-9, "{back} {l}");
        }
    }

    #[test]
    fn bad_inputs() {
        assert!(matches!(
            hoeffding_sample_size(10, 0.0, 0.05),
            Err(EstimatorError::InvalidHalfWidth(_))
        ));
        assert!(matches!(
            bernstein_sample_size(10, 1.0, 1.0),
            Err(EstimatorError::InvalidDelta(_))
        ));
        assert!(matches!(hoeffding_half_width(10, 0, 0.05), Err(EstimatorError::NoSamples)));
    }
}
