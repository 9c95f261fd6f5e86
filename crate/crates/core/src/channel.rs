//! BPSK modulation over the binary-input AWGN channel.

use crate::bits::BitVector;
use crate::error::{Error, Result};
use crate::llr::{LlrVector, LLR_SATURATION};
use crate::rng::{Rng, SeedSpec};
use serde::{Deserialize, Serialize};

/// Channel family. Only the binary-input AWGN channel is modelled.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum ChannelKind {
    BiAwgn,
}

/// An operating point of the channel: Eb/N0 in dB together with the code
/// rate that relates information-bit energy to symbol energy.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ChannelSpec {
    pub kind: ChannelKind,
    pub ebn0_db: f64,
    pub code_rate: f64,
}

impl ChannelSpec {
    pub fn bi_awgn(ebn0_db: f64, code_rate: f64) -> Self {
        ChannelSpec {
            kind: ChannelKind::BiAwgn,
            ebn0_db,
            code_rate,
        }
    }

    pub fn sigma(&self) -> Result<f64> {
        ebn0_to_sigma(self.ebn0_db, self.code_rate)
    }
}

/// Noise standard deviation for BPSK at a given Eb/N0 and code rate:
/// sigma = sqrt(1 / (2 * R * 10^(ebn0_db/10))).
pub fn ebn0_to_sigma(ebn0_db: f64, rate: f64) -> Result<f64> {
    if !(rate > 0.0 && rate <= 1.0) {
        return Err(Error::domain(format!(
            "code rate must be in (0, 1], got {rate}"
        )));
    }
    let ebn0 = 10f64.powf(ebn0_db / 10.0);
    Ok((1.0 / (2.0 * rate * ebn0)).sqrt())
}

/// Maps bits to symbols s = 1 - 2b, adds N(0, sigma^2) noise and returns
/// channel LLRs 2*y/sigma^2, saturated at [`LLR_SATURATION`].
pub fn transmit_bpsk_awgn(
    codeword: &BitVector,
    channel: &ChannelSpec,
    seed: SeedSpec,
) -> Result<LlrVector> {
    let mut rng = Rng::from_seed(seed);
    let sigma = channel.sigma()?;
    Ok(transmit_bpsk_awgn_with(codeword, sigma, &mut rng))
}

/// Streaming form of [`transmit_bpsk_awgn`] drawing noise from a live
/// generator; used by the simulation harness so one worker stream spans
/// many frames.
pub fn transmit_bpsk_awgn_with(codeword: &BitVector, sigma: f64, rng: &mut Rng) -> LlrVector {
    let scale = 2.0 / (sigma * sigma);
    codeword
        .iter()
        .map(|&b| {
            let symbol = 1.0 - 2.0 * f64::from(b);
            let y = symbol + sigma * rng.next_gaussian();
            (scale * y).clamp(-LLR_SATURATION, LLR_SATURATION)
        })
        .collect::<Vec<f64>>()
        .into()
}
