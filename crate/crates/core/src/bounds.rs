//! Finite-blocklength converse reference: the normal approximation of the
//! meta-converse bound for the Bi-AWGN channel.
//!
//!   eps(n, k) = Q( (n C - k + 0.5 log2 n) / sqrt(n V) )
//!
//! with capacity C and dispersion V (in bits and bits^2) computed by
//! Gauss-Hermite quadrature of the information density.

use crate::channel::ebn0_to_sigma;
use crate::error::{Error, Result};

/// Gauss-Hermite nodes and weights for integrals against e^(-x^2)
/// (physicists' convention), by Newton iteration on the orthonormal
/// recurrence.
pub fn gauss_hermite(n: usize) -> (Vec<f64>, Vec<f64>) {
    assert!(n >= 2);
    let mut nodes = vec![0.0f64; n];
    let mut weights = vec![0.0f64; n];
    let m = (n + 1) / 2;
    let nf = n as f64;
    let mut z = 0.0f64;
    for i in 0..m {
        // Initial guesses for the i-th largest root.
        z = match i {
            0 => (2.0 * nf + 1.0).sqrt() - 1.85575 * (2.0 * nf + 1.0).powf(-1.0 / 6.0),
            1 => z - 1.14 * nf.powf(0.426) / z,
            2 => 1.86 * z - 0.86 * nodes[0],
            3 => 1.91 * z - 0.91 * nodes[1],
            _ => 2.0 * z - nodes[i - 2],
        };
        let mut pp = 0.0;
        for _ in 0..200 {
            // Orthonormal Hermite recurrence up to degree n.
            let mut p1 = std::f64::consts::PI.powf(-0.25);
            let mut p2 = 0.0f64;
            for j in 0..n {
                let p3 = p2;
                p2 = p1;
                let jf = j as f64;
                p1 = z * (2.0 / (jf + 1.0)).sqrt() * p2
                    - (jf / (jf + 1.0)).sqrt() * p3;
            }
            pp = (2.0 * nf).sqrt() * p2;
            let dz = p1 / pp;
            z -= dz;
            if dz.abs() < 1e-15 {
                break;
            }
        }
        nodes[i] = z;
        nodes[n - 1 - i] = -z;
        weights[i] = 2.0 / (pp * pp);
        weights[n - 1 - i] = weights[i];
    }
    (nodes, weights)
}

/// log2(1 + e^x), stable for large |x|.
fn log2_1p_exp(x: f64) -> f64 {
    if x > 35.0 {
        x / std::f64::consts::LN_2
    } else {
        libm::log1p(x.exp()) / std::f64::consts::LN_2
    }
}

/// Capacity (bits) and dispersion (bits^2) of the Bi-AWGN channel at
/// noise level sigma, via 96-node Gauss-Hermite quadrature of the
/// information density i(y) = 1 - log2(1 + e^(-2y/sigma^2)) with
/// y ~ N(1, sigma^2).
pub fn capacity_dispersion_biawgn(sigma: f64) -> Result<(f64, f64)> {
    if !(sigma > 0.0) {
        return Err(Error::domain(format!("sigma must be positive, got {sigma}")));
    }
    let (nodes, weights) = gauss_hermite(96);
    let norm = 1.0 / std::f64::consts::PI.sqrt();
    let mut c = 0.0;
    let mut second = 0.0;
    for (&u, &w) in nodes.iter().zip(weights.iter()) {
        let y = 1.0 + std::f64::consts::SQRT_2 * sigma * u;
        let l = 2.0 * y / (sigma * sigma);
        let density = 1.0 - log2_1p_exp(-l);
        c += w * density;
        second += w * density * density;
    }
    c *= norm;
    second *= norm;
    Ok((c, (second - c * c).max(0.0)))
}

/// Q-function.
pub fn q_func(x: f64) -> f64 {
    0.5 * libm::erfc(x / std::f64::consts::SQRT_2)
}

/// Normal-approximation block error probability for an (n, k) code at the
/// given Eb/N0, clamped into (0, 1).
pub fn normal_approx_fer(n: usize, k: usize, ebn0_db: f64) -> Result<f64> {
    if n < 1 || k == 0 || k >= n {
        return Err(Error::domain(format!(
            "invalid blocklength/dimension ({n}, {k})"
        )));
    }
    let rate = k as f64 / n as f64;
    let sigma = ebn0_to_sigma(ebn0_db, rate)?;
    let (c, v) = capacity_dispersion_biawgn(sigma)?;
    let nf = n as f64;
    let arg = (nf * c - k as f64 + 0.5 * nf.log2()) / (nf * v).sqrt();
    Ok(q_func(arg).clamp(1e-300, 1.0 - 1e-12))
}

/// One evaluated point of the reference curve.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundPoint {
    pub ebn0_db: f64,
    pub n: usize,
    pub k: usize,
    pub fer_bound: f64,
}

/// Sweeps the bound over a dB grid.
pub fn bound_curve(n: usize, k: usize, ebn0_grid: &[f64]) -> Result<Vec<BoundPoint>> {
    ebn0_grid
        .iter()
        .map(|&ebn0_db| {
            Ok(BoundPoint {
                ebn0_db,
                n,
                k,
                fer_bound: normal_approx_fer(n, k, ebn0_db)?,
            })
        })
        .collect()
}

/// Inverts the bound horizontally: the Eb/N0 where the curve crosses a
/// target error rate (bisection; the bound is monotone in SNR).
pub fn ebn0_at_fer(n: usize, k: usize, target: f64) -> Result<f64> {
    let (mut lo, mut hi) = (-10.0f64, 20.0f64);
    if normal_approx_fer(n, k, lo)? < target || normal_approx_fer(n, k, hi)? > target {
        return Err(Error::domain(format!(
            "target FER {target} not bracketed for ({n}, {k})"
        )));
    }
    for _ in 0..80 {
        let mid = 0.5 * (lo + hi);
        if normal_approx_fer(n, k, mid)? > target {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hermite_rule_integrates_polynomials() {
        let (nodes, weights) = gauss_hermite(64);
        let total: f64 = weights.iter().sum();
        assert!((total - std::f64::consts::PI.sqrt()).abs() < 1e-10, "{total}");
        let second: f64 = nodes
            .iter()
            .zip(weights.iter())
            .map(|(&x, &w)| w * x * x)
            .sum();
        assert!((second - std::f64::consts::PI.sqrt() / 2.0).abs() < 1e-10);
        let fourth: f64 = nodes
            .iter()
            .zip(weights.iter())
            .map(|(&x, &w)| w * x * x * x * x)
            .sum();
        assert!((fourth - 0.75 * std::f64::consts::PI.sqrt()).abs() < 1e-9);
    }

    #[test]
    fn capacity_limits() {
        let (c_noisy, _) = capacity_dispersion_biawgn(50.0).unwrap();
        assert!(c_noisy < 1e-3, "sigma -> inf gives C -> 0, got {c_noisy}");
        let (c_clean, v_clean) = capacity_dispersion_biawgn(0.05).unwrap();
        assert!(c_clean > 0.999999, "sigma -> 0 gives C -> 1, got {c_clean}");
        assert!(v_clean < 1e-4);
    }

    /// Independent trapezoid-rule oracle for C over y in [1 - 12s, 1 + 12s].
    fn capacity_trapezoid(sigma: f64) -> f64 {
        let steps = 400_000;
        let lo = 1.0 - 12.0 * sigma;
        let hi = 1.0 + 12.0 * sigma;
        let dy = (hi - lo) / steps as f64;
        let mut acc = 0.0;
        for i in 0..=steps {
            let y = lo + i as f64 * dy;
            let pdf = (-(y - 1.0) * (y - 1.0) / (2.0 * sigma * sigma)).exp()
                / ((2.0 * std::f64::consts::PI).sqrt() * sigma);
            let l = 2.0 * y / (sigma * sigma);
            let f = (1.0 - log2_1p_exp(-l)) * pdf;
            let w = if i == 0 || i == steps { 0.5 } else { 1.0 };
            acc += w * f;
        }
        acc * dy
    }

    #[test]
    fn capacity_cross_checked_against_trapezoid_oracle() {
        for &sigma in &[0.97869f64, 0.8, 1.2] {
            let (c, _) = capacity_dispersion_biawgn(sigma).unwrap();
            let oracle = capacity_trapezoid(sigma);
            assert!(
                (c - oracle).abs() < 1e-6,
                "sigma {sigma}: GH {c} vs trapezoid {oracle}"
            );
        }
        // sigma = 0.97869 is the rate-1/2 Shannon threshold of this
        // channel (Eb/N0 = 0.188 dB), so the capacity there is 1/2.
        let (c, _) = capacity_dispersion_biawgn(0.97869).unwrap();
        assert!((c - 0.5).abs() < 5e-4, "C(0.97869) = {c}");
    }

    #[test]
    fn long_blocks_below_capacity_vanish() {
        // 1 dB of margin at rate 1/2 and n = 10^6: eps under 1e-10.
        let eps = normal_approx_fer(1_000_000, 500_000, 1.2).unwrap();
        assert!(eps < 1e-10, "{eps}");
    }

    #[test]
    fn monotone_in_snr_and_dimension() {
        let mut prev = 1.0;
        for i in 0..20 {
            let e = normal_approx_fer(256, 128, i as f64 * 0.25).unwrap();
            assert!(e < prev);
            prev = e;
        }
        let lo_k = normal_approx_fer(256, 100, 2.0).unwrap();
        let hi_k = normal_approx_fer(256, 128, 2.0).unwrap();
        assert!(hi_k > lo_k);
    }

    #[test]
    fn matches_fig1_reference_horizontally() {
        // Published meta-converse at (256,128): 2.00 dB -> 3.509e-4.
        // Horizontal agreement within 0.15 dB.
        let at = ebn0_at_fer(256, 128, 3.509e-4).unwrap();
        assert!((at - 2.0).abs() <= 0.15, "crossing at {at} dB");
    }

    #[test]
    fn matches_fig2_reference_horizontally() {
        // Published bound at (65536, 32768): 0.30 dB -> 2.982e-3.
        let at = ebn0_at_fer(65536, 32768, 2.982e-3).unwrap();
        assert!((at - 0.30).abs() <= 0.15, "crossing at {at} dB");
    }

    #[test]
    fn rejects_bad_arguments() {
        assert!(normal_approx_fer(0, 0, 1.0).is_err());
        assert!(normal_approx_fer(100, 100, 1.0).is_err());
        assert!(normal_approx_fer(100, 0, 1.0).is_err());
    }
}
