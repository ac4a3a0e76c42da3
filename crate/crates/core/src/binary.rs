//! Polynomials over GF(2), primitivity testing and binary m-sequences.

use std::fmt;
use std::str::FromStr;

use crate::{Error, Result};

/// Largest supported degree. Products are reduced bit by bit, so this only
/// bounds the width of the state word.
pub const MAX_DEGREE: u32 = 32;

/// A nonzero polynomial over GF(2); bit `i` is the coefficient of `x^i`.
///
/// Every nonzero polynomial over GF(2) is monic, so the leading coefficient
/// invariant holds by construction.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct BinaryPolynomial {
    bits: u64,
}

// Primitive polynomials, one per degree 2..=12, as bit masks.
const PRIMITIVE_TABLE: [(u32, u64); 11] = [
    (2, 0b111),             // x^2 + x + 1
    (3, 0b1101),            // x^3 + x^2 + 1
    (4, 0b1_1001),          // x^4 + x^3 + 1
    (5, 0b10_1001),         // x^5 + x^3 + 1
    (6, 0b110_0001),        // x^6 + x^5 + 1
    (7, 0b1100_0001),       // x^7 + x^6 + 1
    (8, 0b1_0111_0001),     // x^8 + x^6 + x^5 + x^4 + 1
    (9, 0b10_0010_0001),    // x^9 + x^5 + 1
    (10, 0b100_1000_0001),  // x^10 + x^7 + 1
    (11, 0b1010_0000_0001), // x^11 + x^9 + 1
    (12, 0b1_1100_0001_0001), // x^12 + x^11 + x^10 + x^4 + 1
];

/// The built-in primitive polynomial of degree `n`, if the table has one.
pub fn primitive_polynomial(n: u32) -> Option<BinaryPolynomial> {
    PRIMITIVE_TABLE
        .iter()
        .find(|(deg, _)| *deg == n)
        .map(|&(_, bits)| BinaryPolynomial { bits })
}

impl BinaryPolynomial {
    pub fn from_bits(bits: u64) -> Result<Self> {
        if bits < 2 {
            return Err(Error::invalid("binary polynomial must have degree >= 1"));
        }
        let p = BinaryPolynomial { bits };
        if p.degree() > MAX_DEGREE {
            return Err(Error::invalid(format!(
                "degree {} exceeds the supported maximum {MAX_DEGREE}",
                p.degree()
            )));
        }
        Ok(p)
    }

    /// Builds `sum x^e` over the given exponents. Repeated exponents cancel.
    pub fn from_exponents(exponents: &[u32]) -> Result<Self> {
        let mut bits = 0u64;
        for &e in exponents {
            if e > MAX_DEGREE {
                return Err(Error::invalid(format!("exponent {e} out of range")));
            }
            bits ^= 1 << e;
        }
        Self::from_bits(bits)
    }

    pub fn bits(&self) -> u64 {
        self.bits
    }

    pub fn degree(&self) -> u32 {
        63 - self.bits.leading_zeros()
    }

    pub fn coeff(&self, i: u32) -> u8 {
        if i > 63 {
            0
        } else {
            ((self.bits >> i) & 1) as u8
        }
    }

    /// Coefficients low-to-high, length `degree + 1`.
    pub fn coefficients(&self) -> Vec<u8> {
        (0..=self.degree()).map(|i| self.coeff(i)).collect()
    }

    fn mulmod(&self, a: u64, b: u64) -> u64 {
        let n = self.degree();
        let top = 1u64 << n;
        let mut a = a;
        let mut b = b;
        let mut acc = 0u64;
        while b != 0 {
            if b & 1 == 1 {
                acc ^= a;
            }
            b >>= 1;
            a <<= 1;
            if a & top != 0 {
                a ^= self.bits;
            }
        }
        acc
    }

    fn powmod_x(&self, mut e: u64) -> u64 {
        let mut base = if self.degree() == 1 { self.bits ^ 2 } else { 2 };
        let mut acc = 1u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mulmod(acc, base);
            }
            base = self.mulmod(base, base);
            e >>= 1;
        }
        acc
    }

    /// True when `x` has multiplicative order `2^n - 1` modulo `self`.
    ///
    /// Admits degree 1 (`x + 1`), which the public [`is_primitive`](Self::is_primitive)
    /// rejects.
    pub(crate) fn has_maximal_order(&self) -> bool {
        let n = self.degree();
        let order = (1u64 << n) - 1;
        if self.powmod_x(order) != 1 {
            return false;
        }
        prime_factors(order)
            .into_iter()
            .all(|p| self.powmod_x(order / p) != 1)
    }

    /// Irreducible over GF(2) with a root of order `2^n - 1`.
    ///
    /// A reducible polynomial has fewer than `2^n - 1` units in its residue
    /// ring, so maximal order of `x` is equivalent to primitivity.
    pub fn is_primitive(&self) -> Result<bool> {
        if self.degree() < 2 {
            return Err(Error::invalid("primitivity test requires degree >= 2"));
        }
        Ok(self.has_maximal_order())
    }
}

fn prime_factors(mut m: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= m {
        if m.is_multiple_of(p) {
            out.push(p);
            while m.is_multiple_of(p) {
                m /= p;
            }
        }
        p += 1;
    }
    if m > 1 {
        out.push(m);
    }
    out
}

impl fmt::Display for BinaryPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = (0..=self.degree())
            .rev()
            .filter(|&i| self.coeff(i) == 1)
            .map(|i| match i {
                0 => "1".to_string(),
                1 => "x".to_string(),
                _ => format!("x^{i}"),
            })
            .collect();
        write!(f, "{}", terms.join(" + "))
    }
}

/// Parses `x^3 + x + 1` style expressions, or a `0x`-prefixed bit mask.
impl FromStr for BinaryPolynomial {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if let Some(hex) = s.strip_prefix("0x") {
            let bits = u64::from_str_radix(hex, 16)
                .map_err(|e| Error::invalid(format!("bad polynomial mask {s:?}: {e}")))?;
            return Self::from_bits(bits);
        }
        let mut exps = Vec::new();
        for term in s.split('+').map(str::trim) {
            let e = match term {
                "1" => 0,
                "x" => 1,
                t => t
                    .strip_prefix("x^")
                    .and_then(|e| e.parse::<u32>().ok())
                    .ok_or_else(|| Error::invalid(format!("bad polynomial term {t:?}")))?,
            };
            exps.push(e);
        }
        Self::from_exponents(&exps)
    }
}

/// Runs the binary LFSR with characteristic polynomial `h`,
/// `s(t+n) = sum_{j<n} h_j s(t+j)`, for one full period `2^n - 1`.
pub fn generate_m_sequence(h: &BinaryPolynomial, init: &[u8]) -> Result<Vec<u8>> {
    let n = h.degree() as usize;
    if init.len() != n {
        return Err(Error::invalid(format!(
            "initial state has {} bits, expected {n}",
            init.len()
        )));
    }
    if init.iter().any(|&b| b > 1) {
        return Err(Error::invalid("initial state must be bits"));
    }
    if init.iter().all(|&b| b == 0) {
        return Err(Error::invalid("initial state must be nonzero"));
    }
    if !h.has_maximal_order() {
        return Err(Error::invalid(format!("{h} is not primitive")));
    }
    let period = (1usize << n) - 1;
    let taps: Vec<usize> = (0..n).filter(|&j| h.coeff(j as u32) == 1).collect();
    let mut s = Vec::with_capacity(period);
    s.extend_from_slice(init);
    while s.len() < period {
        let t = s.len() - n;
        let bit = taps.iter().fold(0u8, |acc, &j| acc ^ s[t + j]);
        s.push(bit);
    }
    s.truncate(period);
    Ok(s)
}
