//! Shared pieces of the successive-cancellation decoder family.

use crate::bits::BitVector;

/// Check-node kernel used in the f update.
///
/// `MinSum` matches fixed-point hardware practice and makes the simplified
/// decoder's node shortcuts bit-exact; `Exact` is the tanh-rule boxplus,
/// paired with the exact path-metric penalty in the list decoder.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Kernel {
    #[default]
    MinSum,
    Exact,
}

impl Kernel {
    /// f(a, b): LLR of the checked combination of two branches.
    #[inline]
    pub(crate) fn f(self, a: f64, b: f64) -> f64 {
        let sign_neg = (a < 0.0) != (b < 0.0);
        let mag = a.abs().min(b.abs());
        let ms = if sign_neg { -mag } else { mag };
        match self {
            Kernel::MinSum => ms,
            // Exact boxplus via the Jacobian form:
            //   f = sign(a)sign(b)min(|a|,|b|)
            //       + ln(1 + e^-|a+b|) - ln(1 + e^-|a-b|)
            Kernel::Exact => {
                ms + libm::log1p((-(a + b).abs()).exp()) - libm::log1p((-(a - b).abs()).exp())
            }
        }
    }

    /// g(a, b, u): LLR after the branch decision u on the checked side.
    #[inline]
    pub(crate) fn g(self, a: f64, b: f64, u: u8) -> f64 {
        if u == 0 {
            b + a
        } else {
            b - a
        }
    }

    /// Path-metric penalty for deciding `bit` against LLR `llr`.
    ///
    /// Min-sum: |llr| when the decision contradicts the sign, else 0.
    /// Exact: ln(1 + e^-(1-2u)llr), the negative log-likelihood term that
    /// makes the final metric ML-consistent over full paths.
    #[inline]
    pub(crate) fn penalty(self, llr: f64, bit: u8) -> f64 {
        let follows = (llr >= 0.0) == (bit == 0);
        match self {
            Kernel::MinSum => {
                if follows {
                    0.0
                } else {
                    llr.abs()
                }
            }
            Kernel::Exact => {
                let base = libm::log1p((-llr.abs()).exp());
                if follows {
                    base
                } else {
                    llr.abs() + base
                }
            }
        }
    }
}

/// Result of one polar decoding attempt.
#[derive(Debug, Clone, PartialEq)]
pub struct DecodeOutcome {
    /// Recovered message bits (CRC stripped when present).
    pub message: BitVector,
    /// The decided mother codeword.
    pub codeword: BitVector,
    /// Path metric (SC/SCL) or correlation score (ensemble decoding).
    pub metric: f64,
    /// CRC verdict; `None` when the code carries no CRC.
    pub crc_ok: Option<bool>,
}
