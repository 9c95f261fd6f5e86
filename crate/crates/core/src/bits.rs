//! Binary vectors.

use crate::error::{Error, Result};
use std::fmt;
use std::ops::{Deref, Index};

/// An ordered sequence of bits, each stored as 0 or 1 in a byte.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct BitVector(Vec<u8>);

impl BitVector {
    /// All-zero vector of the given length.
    pub fn zeros(len: usize) -> Self {
        BitVector(vec![0; len])
    }

    /// Builds from raw bytes, rejecting anything but 0 and 1.
    pub fn from_bits(bits: Vec<u8>) -> Result<Self> {
        if let Some(pos) = bits.iter().position(|&b| b > 1) {
            return Err(Error::domain(format!(
                "bit vector element at {pos} is {} (must be 0 or 1)",
                bits[pos]
            )));
        }
        Ok(BitVector(bits))
    }

    /// Builds from bools (true = 1).
    pub fn from_bools(bits: &[bool]) -> Self {
        BitVector(bits.iter().map(|&b| b as u8).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn bits(&self) -> &[u8] {
        &self.0
    }

    pub fn bits_mut(&mut self) -> &mut [u8] {
        &mut self.0
    }

    pub fn into_inner(self) -> Vec<u8> {
        self.0
    }

    pub fn set(&mut self, i: usize, bit: u8) {
        debug_assert!(bit <= 1);
        self.0[i] = bit;
    }

    pub fn push(&mut self, bit: u8) {
        debug_assert!(bit <= 1);
        self.0.push(bit);
    }

    /// Number of ones.
    pub fn weight(&self) -> usize {
        self.0.iter().filter(|&&b| b == 1).count()
    }

    /// Hamming distance to another vector of the same length.
    pub fn distance(&self, other: &BitVector) -> Result<usize> {
        if self.len() != other.len() {
            return Err(Error::domain(format!(
                "length mismatch: {} vs {}",
                self.len(),
                other.len()
            )));
        }
        Ok(self
            .0
            .iter()
            .zip(other.0.iter())
            .filter(|(a, b)| a != b)
            .count())
    }
}

impl Deref for BitVector {
    type Target = [u8];
    fn deref(&self) -> &[u8] {
        &self.0
    }
}

impl Index<usize> for BitVector {
    type Output = u8;
    fn index(&self, i: usize) -> &u8 {
        &self.0[i]
    }
}

impl From<Vec<bool>> for BitVector {
    fn from(v: Vec<bool>) -> Self {
        BitVector::from_bools(&v)
    }
}

impl FromIterator<u8> for BitVector {
    fn from_iter<I: IntoIterator<Item = u8>>(iter: I) -> Self {
        let v: Vec<u8> = iter.into_iter().collect();
        debug_assert!(v.iter().all(|&b| b <= 1));
        BitVector(v)
    }
}

impl fmt::Debug for BitVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BitVector[")?;
        for &b in &self.0 {
            write!(f, "{b}")?;
        }
        write!(f, "]")
    }
}

/// Counts bit errors against a reference of equal length and flags the frame.
pub fn count_bit_errors(decoded: &BitVector, reference: &BitVector) -> Result<(bool, usize)> {
    let d = decoded.distance(reference)?;
    Ok((d > 0, d))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_non_binary() {
        assert!(BitVector::from_bits(vec![0, 1, 2]).is_err());
        assert!(BitVector::from_bits(vec![0, 1, 1]).is_ok());
    }

    #[test]
    fn count_errors_identical() {
        let a = BitVector::from_bits(vec![0, 1, 1, 0]).unwrap();
        assert_eq!(count_bit_errors(&a, &a).unwrap(), (false, 0));
    }

    #[test]
    fn count_errors_single_flip() {
        let a = BitVector::from_bits(vec![0, 1, 1, 0]).unwrap();
        let b = BitVector::from_bits(vec![0, 1, 0, 0]).unwrap();
        assert_eq!(count_bit_errors(&a, &b).unwrap(), (true, 1));
    }

    #[test]
    fn count_errors_length_mismatch() {
        let a = BitVector::zeros(3);
        let b = BitVector::zeros(4);
        assert!(count_bit_errors(&a, &b).is_err());
    }

    #[test]
    fn count_errors_matches_naive_loop() {
        let mut rng = crate::rng::Rng::from_seed(crate::rng::SeedSpec::new(9, 0));
        for _ in 0..50 {
            let a: BitVector = (0..64).map(|_| rng.next_u64() as u8 & 1).collect();
            let b: BitVector = (0..64).map(|_| rng.next_u64() as u8 & 1).collect();
            let mut naive = 0;
            for i in 0..64 {
                if a[i] != b[i] {
                    naive += 1;
                }
            }
            assert_eq!(count_bit_errors(&a, &b).unwrap(), (naive > 0, naive));
        }
    }
}
