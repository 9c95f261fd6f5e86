//! Log-likelihood ratios.
//!
//! Convention used throughout the crate: natural-log LLR with positive
//! values favouring bit 0, i.e. `llr = ln P(bit=0|y) / P(bit=1|y)`.

use crate::bits::BitVector;
use std::fmt;
use std::ops::{Deref, DerefMut, Index};

/// Saturation magnitude standing in for "infinite" confidence (known bits,
/// noiseless limits). Large enough to dominate any finite sum, small enough
/// that sums of a few saturated values stay finite in f64.
pub const LLR_SATURATION: f64 = 1e30;

/// A vector of per-bit log-likelihood ratios.
#[derive(Clone, PartialEq, Default)]
pub struct LlrVector(Vec<f64>);

impl LlrVector {
    pub fn zeros(len: usize) -> Self {
        LlrVector(vec![0.0; len])
    }

    pub fn from_values(values: Vec<f64>) -> Self {
        LlrVector(values)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn values(&self) -> &[f64] {
        &self.0
    }

    pub fn values_mut(&mut self) -> &mut [f64] {
        &mut self.0
    }

    pub fn into_inner(self) -> Vec<f64> {
        self.0
    }

    /// Clamps every value to the saturation magnitude.
    pub fn saturate(&mut self) {
        for v in &mut self.0 {
            *v = v.clamp(-LLR_SATURATION, LLR_SATURATION);
        }
    }
}

impl Deref for LlrVector {
    type Target = [f64];
    fn deref(&self) -> &[f64] {
        &self.0
    }
}

impl DerefMut for LlrVector {
    fn deref_mut(&mut self) -> &mut [f64] {
        &mut self.0
    }
}

impl Index<usize> for LlrVector {
    type Output = f64;
    fn index(&self, i: usize) -> &f64 {
        &self.0[i]
    }
}

impl From<Vec<f64>> for LlrVector {
    fn from(v: Vec<f64>) -> Self {
        LlrVector(v)
    }
}

impl fmt::Debug for LlrVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_tuple("LlrVector").field(&self.0).finish()
    }
}

/// Hard decision per bit: 0 iff the LLR is non-negative (ties to 0).
pub fn hard_decision(llr: &LlrVector) -> BitVector {
    llr.iter().map(|&v| (v < 0.0) as u8).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::{Rng, SeedSpec};

    #[test]
    fn hard_decision_basic() {
        let llr = LlrVector::from_values(vec![1.2, -0.3]);
        assert_eq!(hard_decision(&llr).bits(), &[0, 1]);
    }

    #[test]
    fn hard_decision_tie_is_zero() {
        let llr = LlrVector::from_values(vec![0.0]);
        assert_eq!(hard_decision(&llr).bits(), &[0]);
    }

    #[test]
    fn hard_decision_matches_sign_oracle() {
        let mut rng = Rng::from_seed(SeedSpec::new(77, 0));
        let llr = LlrVector::from_values((0..512).map(|_| rng.next_gaussian()).collect());
        let decided = hard_decision(&llr);
        for (i, &v) in llr.iter().enumerate() {
            let expect = if v.signum() >= 0.0 { 0 } else { 1 };
            assert_eq!(decided[i], expect, "at {i}: llr {v}");
        }
    }
}
