//! The polar transform.
//!
//! Codewords are `c = u * F^{(x)n}` over GF(2) with `F = [[1,0],[1,1]]`
//! (natural bit order, no bit-reversal). Index 0 of `u` is the least
//! reliable synthetic channel under successive cancellation and the
//! all-ones generator row sits at index N-1.

use crate::bits::BitVector;
use crate::error::{Error, Result};

/// Applies the transform in place. Length must be a power of two.
pub(crate) fn transform_in_place(bits: &mut [u8]) {
    let n = bits.len();
    debug_assert!(n.is_power_of_two());
    let mut step = 1;
    while step < n {
        let mut base = 0;
        while base < n {
            for j in base..base + step {
                bits[j] ^= bits[j + step];
            }
            base += 2 * step;
        }
        step *= 2;
    }
}

/// Returns `u * F^{(x)n}` over GF(2), computed with O(N log N) butterfly
/// passes. The transform is an involution.
pub fn polar_transform(u: &BitVector) -> Result<BitVector> {
    if u.is_empty() || !u.len().is_power_of_two() {
        return Err(Error::domain(format!(
            "polar transform length must be a power of two, got {}",
            u.len()
        )));
    }
    let mut out = u.clone();
    transform_in_place(out.bits_mut());
    Ok(out)
}
