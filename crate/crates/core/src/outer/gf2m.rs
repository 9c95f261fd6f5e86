//! GF(2^m) arithmetic via exp/log tables, m <= 16.

use crate::error::{Error, Result};

/// Conventional primitive polynomials (with leading term), indexed by m.
pub fn default_primitive_poly(m: u32) -> Result<u32> {
    Ok(match m {
        3 => 0xB,      // x^3 + x + 1
        4 => 0x13,     // x^4 + x + 1
        5 => 0x25,     // x^5 + x^2 + 1
        6 => 0x43,     // x^6 + x + 1
        7 => 0x89,     // x^7 + x^3 + 1
        8 => 0x11D,    // x^8 + x^4 + x^3 + x^2 + 1
        10 => 0x409,   // x^10 + x^3 + 1
        12 => 0x1053,  // x^12 + x^6 + x^4 + x + 1
        14 => 0x402B,  // x^14 + x^5 + x^3 + x + 1
        16 => 0x1002D, // x^16 + x^5 + x^3 + x^2 + 1 (DVB-S2 field)
        _ => {
            return Err(Error::domain(format!(
                "no default primitive polynomial stored for m = {m}"
            )))
        }
    })
}

/// Field tables for GF(2^m).
#[derive(Debug, Clone)]
pub struct GfField {
    pub m: u32,
    pub prim_poly: u32,
    /// Number of nonzero elements, 2^m - 1.
    pub order: usize,
    exp: Vec<u16>,
    log: Vec<u16>,
}

impl GfField {
    pub fn new(m: u32, prim_poly: u32) -> Result<Self> {
        if !(2..=16).contains(&m) {
            return Err(Error::domain(format!("field degree {m} outside [2, 16]")));
        }
        let order = (1usize << m) - 1;
        let mut exp = vec![0u16; 2 * order];
        let mut log = vec![0u16; 1 << m];
        let mask = 1u32 << m;
        let mut x = 1u32;
        for i in 0..order {
            if x == 1 && i != 0 {
                return Err(Error::construction(format!(
                    "0x{prim_poly:X} is not primitive over GF(2^{m})"
                )));
            }
            exp[i] = x as u16;
            log[x as usize] = i as u16;
            x <<= 1;
            if x & mask != 0 {
                x ^= prim_poly;
            }
        }
        if x != 1 {
            return Err(Error::construction(format!(
                "0x{prim_poly:X} does not generate GF(2^{m})"
            )));
        }
        for i in order..2 * order {
            exp[i] = exp[i - order];
        }
        Ok(GfField {
            m,
            prim_poly,
            order,
            exp,
            log,
        })
    }

    pub fn with_default_poly(m: u32) -> Result<Self> {
        GfField::new(m, default_primitive_poly(m)?)
    }

    #[inline]
    pub fn alpha_pow(&self, e: usize) -> u16 {
        self.exp[e % self.order]
    }

    #[inline]
    pub fn mul(&self, a: u16, b: u16) -> u16 {
        if a == 0 || b == 0 {
            0
        } else {
            self.exp[self.log[a as usize] as usize + self.log[b as usize] as usize]
        }
    }

    #[inline]
    pub fn inv(&self, a: u16) -> Result<u16> {
        if a == 0 {
            return Err(Error::domain("zero has no inverse"));
        }
        Ok(self.exp[self.order - self.log[a as usize] as usize])
    }

    #[inline]
    pub fn log_of(&self, a: u16) -> Option<usize> {
        if a == 0 {
            None
        } else {
            Some(self.log[a as usize] as usize)
        }
    }

    pub fn pow(&self, a: u16, e: usize) -> u16 {
        if a == 0 {
            return if e == 0 { 1 } else { 0 };
        }
        let l = (self.log[a as usize] as usize * e) % self.order;
        self.exp[l]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exhaustive_axioms_gf256() {
        let f = GfField::with_default_poly(8).unwrap();
        // a * a^-1 = 1 for every nonzero a.
        for a in 1..=255u16 {
            assert_eq!(f.mul(a, f.inv(a).unwrap()), 1, "a = {a}");
        }
        // Associativity and commutativity on a grid.
        for a in (1..=255u16).step_by(7) {
            for b in (1..=255u16).step_by(11) {
                assert_eq!(f.mul(a, b), f.mul(b, a));
                for c in (1..=255u16).step_by(31) {
                    assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
                    // Distributivity over xor.
                    assert_eq!(f.mul(a, b ^ c), f.mul(a, b) ^ f.mul(a, c));
                }
            }
        }
    }

    #[test]
    fn field_order_element() {
        let f = GfField::with_default_poly(8).unwrap();
        assert_eq!(f.pow(2, 255), 1);
        assert_ne!(f.pow(2, 85), 1);
    }

    #[test]
    fn gf2_16_field_builds() {
        let f = GfField::with_default_poly(16).unwrap();
        assert_eq!(f.order, 65535);
        for a in [1u16, 2, 1000, 40000, 65535] {
            assert_eq!(f.mul(a, f.inv(a).unwrap()), 1);
        }
    }

    #[test]
    fn non_primitive_poly_rejected() {
        // x^4 + x^3 + x^2 + x + 1 divides x^5 - 1: order 5, not primitive.
        assert!(GfField::new(4, 0x1F).is_err());
    }
}
