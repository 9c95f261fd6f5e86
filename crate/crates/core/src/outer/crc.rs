//! Cyclic redundancy checks over GF(2).
//!
//! Bit-serial, MSB-first polynomial division with zero initial state and
//! zero final xor unless configured otherwise.

use crate::bits::BitVector;
use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};

/// CRC-11 used by the CRC-aided polar configuration
/// (x^11 + x^10 + x^9 + x^5 + 1).
pub const CRC11_POLY: u64 = 0xE21;

/// A CRC polynomial of the given degree; `poly` holds the coefficients of
/// x^{degree-1}..x^0 (the leading term is implicit).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct CrcSpec {
    pub degree: u32,
    pub poly: u64,
    pub init: u64,
    pub final_xor: u64,
}

impl CrcSpec {
    /// Accepts the polynomial either with or without its leading term
    /// (0xE21 and 0x621 both describe CRC-11); the leading bit is stripped
    /// for storage.
    pub fn new(degree: u32, poly: u64) -> Result<Self> {
        if degree == 0 || degree > 63 {
            return Err(Error::domain(format!("crc degree {degree} out of range")));
        }
        let poly = match poly >> degree {
            0 => poly,
            1 => poly & ((1u64 << degree) - 1),
            _ => {
                return Err(Error::domain(format!(
                    "crc polynomial 0x{poly:X} does not fit degree {degree}"
                )))
            }
        };
        Ok(CrcSpec {
            degree,
            poly,
            init: 0,
            final_xor: 0,
        })
    }

    pub fn crc11() -> Self {
        CrcSpec::new(11, CRC11_POLY).expect("static spec")
    }

    pub fn len(&self) -> usize {
        self.degree as usize
    }

    /// Remainder of msg * x^degree divided by the generator, MSB first.
    pub fn remainder(&self, msg: &[u8]) -> u64 {
        let mask = if self.degree == 63 {
            u64::MAX
        } else {
            (1u64 << self.degree) - 1
        };
        let top = 1u64 << (self.degree - 1);
        let mut reg = self.init & mask;
        for &bit in msg {
            let fb = ((reg & top) != 0) ^ (bit == 1);
            reg = (reg << 1) & mask;
            if fb {
                reg ^= self.poly & mask;
            }
        }
        (reg ^ self.final_xor) & mask
    }

    /// Appends the CRC bits (MSB first) to the message.
    pub fn append(&self, msg: &BitVector) -> BitVector {
        let rem = self.remainder(msg.bits());
        let mut out = msg.clone();
        for i in (0..self.degree).rev() {
            out.push(((rem >> i) & 1) as u8);
        }
        out
    }

    /// True iff `word` (message plus appended CRC) has zero remainder.
    pub fn check(&self, word: &BitVector) -> bool {
        if word.len() < self.len() {
            return false;
        }
        let (msg, tail) = word.bits().split_at(word.len() - self.len());
        let rem = self.remainder(msg);
        let mut expected = 0u64;
        for &b in tail {
            expected = (expected << 1) | u64::from(b);
        }
        rem == expected
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::{Rng, SeedSpec};

    /// Long-division oracle: divides msg||0^degree by the full generator
    /// polynomial represented as an explicit bit vector.
    fn long_division_remainder(msg: &[u8], degree: u32, poly: u64) -> u64 {
        let mut gen = vec![1u8];
        for i in (0..degree).rev() {
            gen.push(((poly >> i) & 1) as u8);
        }
        let mut work: Vec<u8> = msg.to_vec();
        work.extend(std::iter::repeat(0).take(degree as usize));
        for i in 0..msg.len() {
            if work[i] == 1 {
                for (j, &g) in gen.iter().enumerate() {
                    work[i + j] ^= g;
                }
            }
        }
        let mut rem = 0u64;
        for &b in &work[msg.len()..] {
            rem = (rem << 1) | u64::from(b);
        }
        rem
    }

    #[test]
    fn append_then_check_random_messages() {
        let crc = CrcSpec::crc11();
        let mut rng = Rng::from_seed(SeedSpec::new(17, 0));
        for _ in 0..10_000 {
            let msg: BitVector = (0..117).map(|_| rng.next_u64() as u8 & 1).collect();
            let word = crc.append(&msg);
            assert_eq!(word.len(), 128);
            assert!(crc.check(&word));
        }
    }

    #[test]
    fn single_bit_flip_always_detected() {
        let crc = CrcSpec::crc11();
        let mut rng = Rng::from_seed(SeedSpec::new(18, 0));
        let msg: BitVector = (0..117).map(|_| rng.next_u64() as u8 & 1).collect();
        let word = crc.append(&msg);
        for i in 0..word.len() {
            let mut flipped = word.clone();
            flipped.set(i, flipped[i] ^ 1);
            assert!(!crc.check(&flipped), "flip at {i} not detected");
        }
    }

    #[test]
    fn remainder_matches_long_division_oracle() {
        let crc = CrcSpec::crc11();
        let mut rng = Rng::from_seed(SeedSpec::new(19, 0));
        for _ in 0..200 {
            let msg: Vec<u8> = (0..117).map(|_| rng.next_u64() as u8 & 1).collect();
            assert_eq!(
                crc.remainder(&msg),
                long_division_remainder(&msg, 11, CRC11_POLY)
            );
        }
        // A fixed vector, frozen from the oracle.
        let fixed: Vec<u8> = (0..117).map(|i| ((i * 7 + 3) % 5 == 0) as u8).collect();
        let expect = long_division_remainder(&fixed, 11, CRC11_POLY);
        assert_eq!(crc.remainder(&fixed), expect);
    }

    #[test]
    fn rejects_bad_params() {
        assert!(CrcSpec::new(0, 0).is_err());
        assert!(CrcSpec::new(4, 0x3F).is_err());
        // Leading-term form is accepted and stripped.
        assert_eq!(CrcSpec::new(11, 0xE21).unwrap(), CrcSpec::new(11, 0x621).unwrap());
    }
}
