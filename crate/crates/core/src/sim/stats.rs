//! Error-rate statistics.

/// 95% Wilson score interval for a binomial proportion.
pub fn wilson_interval(successes: u64, trials: u64) -> (f64, f64) {
    if trials == 0 {
        return (0.0, 1.0);
    }
    let z = 1.959963984540054f64;
    let n = trials as f64;
    let p = successes as f64 / n;
    let z2 = z * z;
    let denom = 1.0 + z2 / n;
    let centre = p + z2 / (2.0 * n);
    let spread = z * (p * (1.0 - p) / n + z2 / (4.0 * n * n)).sqrt();
    (
        ((centre - spread) / denom).max(0.0),
        ((centre + spread) / denom).min(1.0),
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn interval_contains_point_estimate() {
        for (e, n) in [(0u64, 100u64), (1, 100), (50, 100), (100, 100), (7, 19)] {
            let (lo, hi) = wilson_interval(e, n);
            let p = e as f64 / n as f64;
            assert!(lo <= p + 1e-12 && p <= hi + 1e-12, "({e},{n}): [{lo},{hi}]");
            assert!((0.0..=1.0).contains(&lo) && (0.0..=1.0).contains(&hi));
        }
    }

    #[test]
    fn interval_shrinks_with_samples() {
        let (lo1, hi1) = wilson_interval(10, 100);
        let (lo2, hi2) = wilson_interval(100, 1000);
        assert!(hi2 - lo2 < hi1 - lo1);
    }

    #[test]
    fn classic_values() {
        // Wilson 95% for 100/10000 is roughly [0.0082, 0.0121].
        let (lo, hi) = wilson_interval(100, 10_000);
        assert!((lo - 0.00823).abs() < 2e-4, "{lo}");
        assert!((hi - 0.01214).abs() < 2e-4, "{hi}");
    }
}
