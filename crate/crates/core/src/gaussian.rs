//! Exact Gaussian integers, the value ring of `Z4` sequence correlations.

use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub struct Gaussian {
    pub re: i64,
    pub im: i64,
}

impl Gaussian {
    pub const ZERO: Gaussian = Gaussian { re: 0, im: 0 };
    pub const ONE: Gaussian = Gaussian { re: 1, im: 0 };

    pub const fn new(re: i64, im: i64) -> Self {
        Gaussian { re, im }
    }

    /// `i^k` for `k` taken mod 4.
    pub const fn unit(k: u8) -> Self {
        match k & 3 {
            0 => Gaussian::new(1, 0),
            1 => Gaussian::new(0, 1),
            2 => Gaussian::new(-1, 0),
            _ => Gaussian::new(0, -1),
        }
    }

    /// Builds the sum `c0 - c2 + i (c1 - c3)` from a histogram of powers of `i`.
    pub fn from_counts(counts: [u32; 4]) -> Self {
        Gaussian::new(
            counts[0] as i64 - counts[2] as i64,
            counts[1] as i64 - counts[3] as i64,
        )
    }

    pub fn conj(self) -> Self {
        Gaussian::new(self.re, -self.im)
    }

    pub fn norm_sqr(self) -> i64 {
        self.re * self.re + self.im * self.im
    }

    pub fn abs(self) -> f64 {
        (self.norm_sqr() as f64).sqrt()
    }

    pub fn to_complex(self) -> Complex64 {
        Complex64::new(self.re as f64, self.im as f64)
    }
}

impl Add for Gaussian {
    type Output = Gaussian;
    fn add(self, rhs: Gaussian) -> Gaussian {
        Gaussian::new(self.re + rhs.re, self.im + rhs.im)
    }
}

impl AddAssign for Gaussian {
    fn add_assign(&mut self, rhs: Gaussian) {
        self.re += rhs.re;
        self.im += rhs.im;
    }
}

impl Sub for Gaussian {
    type Output = Gaussian;
    fn sub(self, rhs: Gaussian) -> Gaussian {
        Gaussian::new(self.re - rhs.re, self.im - rhs.im)
    }
}

impl Neg for Gaussian {
    type Output = Gaussian;
    fn neg(self) -> Gaussian {
        Gaussian::new(-self.re, -self.im)
    }
}

impl Mul for Gaussian {
    type Output = Gaussian;
    fn mul(self, rhs: Gaussian) -> Gaussian {
        Gaussian::new(
            self.re * rhs.re - self.im * rhs.im,
            self.re * rhs.im + self.im * rhs.re,
        )
    }
}
