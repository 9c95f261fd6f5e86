//! Polar code construction by density evolution under the Gaussian
//! approximation.
//!
//! Message densities are summarised by their mean LLR `m` (the consistent
//! Gaussian N(m, 2m)). One polarization level maps a channel with mean `m`
//! to
//!
//! ```text
//! check branch:    m- = phi_inv(1 - (1 - phi(m))^2)
//! variable branch: m+ = 2 m
//! ```
//!
//! with the two-piece phi approximation of Chung et al.; the pieces are
//! joined at their crossover so phi stays continuous and strictly
//! decreasing, which keeps the inverse well defined.

use crate::error::{Error, Result};
use std::sync::OnceLock;

/// Mean LLR of the raw Bi-AWGN channel at noise level sigma.
pub fn raw_channel_mean(sigma: f64) -> f64 {
    2.0 / (sigma * sigma)
}

fn phi_small(x: f64) -> f64 {
    (-0.4527 * x.powf(0.86) + 0.0218).exp()
}

fn phi_large(x: f64) -> f64 {
    (std::f64::consts::PI / x).sqrt() * (-x / 4.0).exp() * (1.0 - 10.0 / (7.0 * x))
}

/// Crossover of the two phi pieces, located once by bisection.
fn phi_switch() -> f64 {
    static SWITCH: OnceLock<f64> = OnceLock::new();
    *SWITCH.get_or_init(|| {
        let (mut lo, mut hi) = (10.0f64, 20.0f64);
        debug_assert!(phi_small(lo) < phi_large(lo));
        debug_assert!(phi_small(hi) > phi_large(hi));
        for _ in 0..80 {
            let mid = 0.5 * (lo + hi);
            if phi_small(mid) < phi_large(mid) {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        0.5 * (lo + hi)
    })
}

/// phi(m) = 1 - E[tanh(L/2)] for L ~ N(m, 2m).
pub fn ga_phi(m: f64) -> f64 {
    if m <= 0.0 {
        1.0
    } else if m < phi_switch() {
        phi_small(m).min(1.0)
    } else {
        phi_large(m)
    }
}

/// Inverse of [`ga_phi`] on (0, 1].
pub fn ga_phi_inv(y: f64) -> f64 {
    if y >= 1.0 {
        return 0.0;
    }
    let xc = phi_switch();
    let yc = ga_phi(xc);
    if y > yc {
        // Closed-form inverse of the small-x piece.
        ((0.0218 - y.ln()) / 0.4527).powf(1.0 / 0.86)
    } else {
        // Bisection on the monotone large-x piece; 70 halvings of the
        // bracket reach f64 resolution.
        let (mut lo, mut hi) = (xc, 4000.0f64);
        for _ in 0..70 {
            let mid = 0.5 * (lo + hi);
            if ga_phi(mid) > y {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        0.5 * (lo + hi)
    }
}

/// Above this mean the check update switches to its asymptotic form
/// (the large-x phi piece underflows past m ~ 2800).
const CHECK_ASYMPTOTIC: f64 = 2000.0;

fn check_update(m: f64) -> f64 {
    if m > CHECK_ASYMPTOTIC {
        // phi(m-) = 2 phi(m) and phi ~ sqrt(pi/x) e^{-x/4} give
        // m- = m - 4 ln 2 up to a vanishing sqrt correction.
        m - 4.0 * std::f64::consts::LN_2
    } else {
        let p = ga_phi(m);
        ga_phi_inv((p * (2.0 - p)).min(1.0))
    }
}

fn variable_update(m: f64) -> f64 {
    2.0 * m
}

/// Mean-LLR reliability surrogate of every synthetic channel of a length
/// 2^n polar code designed at noise level `design_sigma`. Higher is more
/// reliable. Index 0 is the all-check channel.
pub fn density_evolution_reliabilities(n: u32, design_sigma: f64) -> Result<Vec<f64>> {
    if n < 1 {
        return Err(Error::domain("polarization depth must be at least 1"));
    }
    if !(design_sigma > 0.0) {
        return Err(Error::domain(format!(
            "design sigma must be positive, got {design_sigma}"
        )));
    }
    let mut means = vec![raw_channel_mean(design_sigma)];
    for _ in 0..n {
        let mut next = Vec::with_capacity(means.len() * 2);
        for &m in &means {
            next.push(check_update(m));
            next.push(variable_update(m));
        }
        means = next;
    }
    Ok(means)
}

/// Error probability of a synthetic channel with mean LLR `m`:
/// Q(sqrt(m/2)).
pub fn channel_error_prob(m: f64) -> f64 {
    0.5 * libm::erfc(m.sqrt() / 2.0)
}

/// Block error probability predicted by the Gaussian approximation for a
/// given information set: 1 - prod(1 - Pe_i).
pub fn ga_block_error(rel: &[f64], info_set: &[usize]) -> f64 {
    let log_ok: f64 = info_set
        .iter()
        .map(|&i| (-channel_error_prob(rel[i])).ln_1p())
        .sum();
    -log_ok.exp_m1()
}

/// Indices of the K most reliable channels, ties broken toward the larger
/// index, returned sorted ascending.
pub fn select_info_set(rel: &[f64], k: usize) -> Result<Vec<usize>> {
    if k > rel.len() {
        return Err(Error::domain(format!(
            "cannot select {k} channels out of {}",
            rel.len()
        )));
    }
    let mut order: Vec<usize> = (0..rel.len()).collect();
    order.sort_by(|&a, &b| {
        rel[b]
            .partial_cmp(&rel[a])
            .expect("reliabilities are finite")
            .then(b.cmp(&a))
    });
    let mut chosen: Vec<usize> = order[..k].to_vec();
    chosen.sort_unstable();
    Ok(chosen)
}

/// A master reliability ordering from which shorter orderings nest.
#[derive(Debug, Clone, PartialEq)]
pub struct ReliabilitySequence {
    /// Permutation of 0..N_max, least to most reliable.
    pub order: Vec<usize>,
    pub design_snr_db: f64,
    pub target_fer: f64,
}

impl ReliabilitySequence {
    /// Builds the ordering from DE reliabilities at the given design point.
    pub fn from_density_evolution(n: u32, design_snr_db: f64, rate: f64, target_fer: f64) -> Result<Self> {
        let sigma = crate::channel::ebn0_to_sigma(design_snr_db, rate)?;
        let rel = density_evolution_reliabilities(n, sigma)?;
        let mut order: Vec<usize> = (0..rel.len()).collect();
        // Least reliable first; ties toward smaller index on the unreliable
        // side, which matches select_info_set's preference for larger
        // indices among the reliable.
        order.sort_by(|&a, &b| {
            rel[a]
                .partial_cmp(&rel[b])
                .expect("reliabilities are finite")
                .then(a.cmp(&b))
        });
        Ok(ReliabilitySequence {
            order,
            design_snr_db,
            target_fer,
        })
    }

    pub fn block_len(&self) -> usize {
        self.order.len()
    }

    /// The K most reliable indices (sorted ascending).
    pub fn info_set(&self, k: usize) -> Result<Vec<usize>> {
        if k > self.order.len() {
            return Err(Error::domain(format!(
                "k = {k} exceeds sequence length {}",
                self.order.len()
            )));
        }
        let mut set: Vec<usize> = self.order[self.order.len() - k..].to_vec();
        set.sort_unstable();
        Ok(set)
    }
}

/// Restricts a master sequence to indices below 2^n_short, preserving
/// relative order.
pub fn extract_nested(seq: &ReliabilitySequence, n_short: u32) -> Result<ReliabilitySequence> {
    let short_len = 1usize << n_short;
    if short_len > seq.order.len() {
        return Err(Error::domain(format!(
            "cannot extract length {short_len} from a length {} sequence",
            seq.order.len()
        )));
    }
    Ok(ReliabilitySequence {
        order: seq.order.iter().copied().filter(|&i| i < short_len).collect(),
        design_snr_db: seq.design_snr_db,
        target_fer: seq.target_fer,
    })
}

/// True iff index `a` is dominated by `b` in the polar partial order:
/// the ones of `a` can be injectively matched to ones of `b` at positions
/// at least as high. Synthetic channel `b` is then provably no less
/// reliable than `a`.
pub fn partial_order_le(a: usize, b: usize) -> bool {
    let pa: Vec<u32> = (0..usize::BITS).filter(|&i| (a >> i) & 1 == 1).collect();
    let pb: Vec<u32> = (0..usize::BITS).filter(|&i| (b >> i) & 1 == 1).collect();
    if pa.len() > pb.len() {
        return false;
    }
    let offset = pb.len() - pa.len();
    pa.iter().zip(pb[offset..].iter()).all(|(x, y)| x <= y)
}

/// Upward closure of a seed set under the polar partial order.
pub fn monomial_closure(n_log2: u32, i_min: &[usize]) -> Result<Vec<usize>> {
    let n = 1usize << n_log2;
    for &s in i_min {
        if s >= n {
            return Err(Error::domain(format!("seed index {s} out of range")));
        }
    }
    Ok((0..n)
        .filter(|&j| i_min.iter().any(|&s| partial_order_le(s, j)))
        .collect())
}

/// Automorphism-friendly information set: the closure of `i_min`, padded
/// to dimension `k` with the most reliable remaining channels when the
/// closure is short. A closure larger than `k` is rejected.
pub fn design_monomial_info_set(
    n_log2: u32,
    i_min: &[usize],
    k: usize,
    design_sigma: f64,
) -> Result<Vec<usize>> {
    let mut info = monomial_closure(n_log2, i_min)?;
    if info.len() > k {
        return Err(Error::construction(format!(
            "closure of the seed set has {} indices, exceeding k = {k}",
            info.len()
        )));
    }
    if info.len() < k {
        let rel = density_evolution_reliabilities(n_log2, design_sigma)?;
        let mut in_set = vec![false; rel.len()];
        for &i in &info {
            in_set[i] = true;
        }
        let mut order: Vec<usize> = (0..rel.len()).filter(|&i| !in_set[i]).collect();
        order.sort_by(|&a, &b| {
            rel[b]
                .partial_cmp(&rel[a])
                .expect("reliabilities are finite")
                .then(b.cmp(&a))
        });
        info.extend(order.into_iter().take(k - info.len()));
        info.sort_unstable();
    }
    Ok(info)
}

/// Finds the design Eb/N0 at which the GA-predicted block error of the
/// best rate-K/N information set equals `target_fer`.
pub fn design_snr_for_target_fer(n: u32, k: usize, target_fer: f64) -> Result<f64> {
    if k == 0 || k > (1usize << n) {
        return Err(Error::domain(format!("invalid dimension {k} for n={n}")));
    }
    let rate = k as f64 / (1u64 << n) as f64;
    let fer_at = |ebn0: f64| -> Result<f64> {
        let sigma = crate::channel::ebn0_to_sigma(ebn0, rate)?;
        let rel = density_evolution_reliabilities(n, sigma)?;
        let info = select_info_set(&rel, k)?;
        Ok(ga_block_error(&rel, &info))
    };
    let (mut lo, mut hi) = (-4.0f64, 16.0f64);
    if fer_at(lo)? < target_fer || fer_at(hi)? > target_fer {
        return Err(Error::construction(format!(
            "target FER {target_fer} unreachable within [-4, 16] dB for (2^{n}, {k})"
        )));
    }
    // 40 halvings pin the design point far below a millidecibel.
    for _ in 0..40 {
        let mid = 0.5 * (lo + hi);
        if fer_at(mid)? > target_fer {
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
    fn phi_is_continuous_and_decreasing() {
        // The fitted phi is clamped at 1 below m ~ 0.03, so strict decrease
        // is only required past that plateau.
        let mut prev = ga_phi(1e-9);
        let mut x = 0.01;
        while x < 100.0 {
            let y = ga_phi(x);
            assert!(y <= prev, "phi increased at {x}");
            if x >= 0.05 {
                assert!(y < prev, "phi not strictly decreasing at {x}");
            }
            prev = y;
            x += 0.01;
        }
        let xc = phi_switch();
        assert!((phi_small(xc) - phi_large(xc)).abs() < 1e-10);
    }

    #[test]
    fn phi_inv_round_trips() {
        for &m in &[0.05, 0.5, 1.0, 3.0, 9.0, 15.0, 40.0, 200.0, 1500.0] {
            let y = ga_phi(m);
            let back = ga_phi_inv(y);
            assert!(
                (back - m).abs() / m < 1e-6,
                "phi_inv(phi({m})) = {back}"
            );
        }
    }

    #[test]
    fn one_level_polarizes_around_raw() {
        let sigma = 0.9;
        let raw = raw_channel_mean(sigma);
        let rel = density_evolution_reliabilities(1, sigma).unwrap();
        assert!(rel[1] >= rel[0]);
        assert!(rel[1] >= raw, "variable branch must improve");
        assert!(rel[0] <= raw, "check branch must degrade");
    }

    #[test]
    fn classical_n8_info_set() {
        let rel = density_evolution_reliabilities(3, 1.0).unwrap();
        let info = select_info_set(&rel, 4).unwrap();
        assert_eq!(info, vec![3, 5, 6, 7]);
    }

    #[test]
    fn reliabilities_monotone_in_sigma() {
        let hi_noise = density_evolution_reliabilities(6, 1.0).unwrap();
        let lo_noise = density_evolution_reliabilities(6, 0.8).unwrap();
        for (i, (a, b)) in hi_noise.iter().zip(lo_noise.iter()).enumerate() {
            assert!(b >= a, "channel {i} degraded when noise decreased");
        }
    }

    #[test]
    fn select_full_and_empty() {
        let rel = density_evolution_reliabilities(4, 1.0).unwrap();
        assert_eq!(select_info_set(&rel, 16).unwrap(), (0..16).collect::<Vec<_>>());
        assert_eq!(select_info_set(&rel, 0).unwrap(), Vec::<usize>::new());
        assert!(select_info_set(&rel, 17).is_err());
    }

    #[test]
    fn select_is_deterministic_with_exact_k() {
        let rel = density_evolution_reliabilities(5, 1.1).unwrap();
        let a = select_info_set(&rel, 13).unwrap();
        let b = select_info_set(&rel, 13).unwrap();
        assert_eq!(a.len(), 13);
        assert_eq!(a, b);
    }

    #[test]
    fn polarization_fraction_grows_past_half() {
        // Fraction of synthetic channels beating the raw channel at fixed
        // sigma, checked at n = 4, 8, 10. The limit fraction is the channel
        // capacity, so sigma must sit where C > 1/2.
        let sigma = 0.8;
        let raw = raw_channel_mean(sigma);
        let frac = |n: u32| {
            let rel = density_evolution_reliabilities(n, sigma).unwrap();
            rel.iter().filter(|&&m| m > raw).count() as f64 / rel.len() as f64
        };
        let (f4, f8, f10) = (frac(4), frac(8), frac(10));
        assert!(f10 > 0.5, "n=10 fraction {f10}");
        assert!(f8 >= f4 - 0.05 && f10 >= f8 - 0.05, "{f4} {f8} {f10}");
    }

    #[test]
    fn nested_identity_at_full_length() {
        let seq = ReliabilitySequence::from_density_evolution(4, 2.0, 0.5, 1e-6).unwrap();
        let same = extract_nested(&seq, 4).unwrap();
        assert_eq!(same.order, seq.order);
    }

    #[test]
    fn nested_filter_by_value() {
        let seq = ReliabilitySequence {
            order: vec![0, 1, 2, 3, 5, 4, 6, 7],
            design_snr_db: 0.0,
            target_fer: 1e-6,
        };
        let short = extract_nested(&seq, 2).unwrap();
        assert_eq!(short.order, vec![0, 1, 2, 3]);
        assert!(extract_nested(&seq, 4).is_err());
    }

    #[test]
    fn nested_agrees_with_rederived_short_sequence() {
        // Top-half membership of the nested sequence matches a directly
        // designed short sequence on at least 90% of indices.
        let master = ReliabilitySequence::from_density_evolution(9, 2.0, 0.5, 1e-6).unwrap();
        let nested = extract_nested(&master, 8).unwrap();
        let direct = ReliabilitySequence::from_density_evolution(8, 2.0, 0.5, 1e-6).unwrap();
        let k = 128;
        let a: std::collections::BTreeSet<_> = nested.info_set(k).unwrap().into_iter().collect();
        let b: std::collections::BTreeSet<_> = direct.info_set(k).unwrap().into_iter().collect();
        let overlap = a.intersection(&b).count();
        assert!(
            overlap * 10 >= k * 9,
            "nested/direct top-{k} overlap only {overlap}"
        );
    }

    #[test]
    fn rejects_bad_sigma() {
        assert!(density_evolution_reliabilities(3, 0.0).is_err());
        assert!(density_evolution_reliabilities(3, -1.0).is_err());
        assert!(density_evolution_reliabilities(0, 1.0).is_err());
    }

    #[test]
    fn partial_order_basics() {
        assert!(partial_order_le(3, 3));
        assert!(partial_order_le(3, 5)); // {0,1} -> {0,2}
        assert!(partial_order_le(3, 12)); // {0,1} -> {2,3}
        assert!(!partial_order_le(12, 3));
        assert!(partial_order_le(5, 7)); // adding ones
        assert!(!partial_order_le(7, 12)); // weight drops
    }

    #[test]
    fn closure_of_31_57_has_dimension_128() {
        // Weight >= 5 indices (93 of them for n = 8) all dominate 31, and
        // 35 weight-4 indices dominate 57; together exactly 128.
        let closure = monomial_closure(8, &[31, 57]).unwrap();
        assert_eq!(closure.len(), 128);
        assert!(closure.contains(&31));
        assert!(closure.contains(&57));
        assert!(closure.contains(&255));
        for &j in &closure {
            assert!(partial_order_le(31, j) || partial_order_le(57, j));
        }
    }

    #[test]
    fn monomial_design_pads_with_de() {
        // closure({12}) on n=4 is {12,13,14,15}; four DE-filled indices
        // complete k = 8.
        let info = design_monomial_info_set(4, &[12], 8, 1.0).unwrap();
        assert_eq!(info.len(), 8);
        for &j in &[12usize, 13, 14, 15] {
            assert!(info.contains(&j));
        }
        assert!(design_monomial_info_set(4, &[3], 8, 1.0).is_err());
    }

    #[test]
    fn design_snr_search_converges() {
        let snr = design_snr_for_target_fer(8, 128, 1e-6).unwrap();
        assert!(snr.is_finite());
        let rate = 0.5;
        let sigma = crate::channel::ebn0_to_sigma(snr, rate).unwrap();
        let rel = density_evolution_reliabilities(8, sigma).unwrap();
        let info = select_info_set(&rel, 128).unwrap();
        let fer = ga_block_error(&rel, &info);
        assert!(
            (fer.log10() - (-6.0)).abs() < 0.05,
            "GA FER at design point: {fer}"
        );
    }
}
