//! Exact values in the Eisenstein ring Z[ω], ω = e^(2πi/3).
//!
//! Sums of cube roots of unity land here: an element is x + yω with integer
//! x, y, reduced via ω^2 = -1 - ω. The squared magnitude
//! |x + yω|^2 = x^2 - xy + y^2 is an exact nonnegative integer, which is what
//! lets correlation bounds be checked without floating point.

use serde::{Deserialize, Serialize};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::Error;

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub struct EisensteinValue {
    pub x: i64,
    pub y: i64,
}

impl EisensteinValue {
    pub const ZERO: EisensteinValue = EisensteinValue { x: 0, y: 0 };
    pub const ONE: EisensteinValue = EisensteinValue { x: 1, y: 0 };
    /// ω itself.
    pub const OMEGA: EisensteinValue = EisensteinValue { x: 0, y: 1 };

    /// The six units of Z[ω]: ±1, ±ω, ±ω^2.
    pub const UNITS: [EisensteinValue; 6] = [
        EisensteinValue { x: 1, y: 0 },
        EisensteinValue { x: -1, y: 0 },
        EisensteinValue { x: 0, y: 1 },
        EisensteinValue { x: 0, y: -1 },
        EisensteinValue { x: -1, y: -1 },
        EisensteinValue { x: 1, y: 1 },
    ];

    pub fn new(x: i64, y: i64) -> Self {
        EisensteinValue { x, y }
    }

    /// Value of n0 * ω^0 + n1 * ω^1 + n2 * ω^2 given the three counts:
    /// since ω^2 = -1 - ω this is (n0 - n2) + (n1 - n2)ω.
    pub fn from_counts(n0: i64, n1: i64, n2: i64) -> Self {
        EisensteinValue {
            x: n0 - n2,
            y: n1 - n2,
        }
    }

    /// ω^t for t mod 3.
    pub fn omega_pow(t: u8) -> Self {
        match t % 3 {
            0 => Self::ONE,
            1 => Self::OMEGA,
            _ => EisensteinValue { x: -1, y: -1 },
        }
    }

    /// |x + yω|^2 = x^2 - xy + y^2, exact.
    pub fn mag2(&self) -> u128 {
        let x = self.x as i128;
        let y = self.y as i128;
        let m = x * x - x * y + y * y;
        debug_assert!(m >= 0);
        m as u128
    }

    pub fn is_zero(&self) -> bool {
        self.x == 0 && self.y == 0
    }

    /// True when the value is a rational integer. In the {1, ω} basis the
    /// imaginary part is y√3/2, so real means y = 0.
    pub fn is_real(&self) -> bool {
        self.y == 0
    }

    pub fn scale(&self, c: i64) -> Self {
        EisensteinValue {
            x: self.x * c,
            y: self.y * c,
        }
    }

    /// Exact halving; errors if either coordinate is odd.
    pub fn half(&self) -> Result<Self, Error> {
        if self.x % 2 != 0 || self.y % 2 != 0 {
            return Err(Error::ParityViolation {
                x: self.x,
                y: self.y,
            });
        }
        Ok(EisensteinValue {
            x: self.x / 2,
            y: self.y / 2,
        })
    }
}

impl Add for EisensteinValue {
    type Output = EisensteinValue;
    fn add(self, rhs: Self) -> Self {
        EisensteinValue {
            x: self.x + rhs.x,
            y: self.y + rhs.y,
        }
    }
}

impl Sub for EisensteinValue {
    type Output = EisensteinValue;
    fn sub(self, rhs: Self) -> Self {
        EisensteinValue {
            x: self.x - rhs.x,
            y: self.y - rhs.y,
        }
    }
}

impl Neg for EisensteinValue {
    type Output = EisensteinValue;
    fn neg(self) -> Self {
        EisensteinValue {
            x: -self.x,
            y: -self.y,
        }
    }
}

impl Mul for EisensteinValue {
    type Output = EisensteinValue;
    /// (a + bω)(c + dω) = ac - bd + (ad + bc - bd)ω, using ω^2 = -1 - ω.
    fn mul(self, rhs: Self) -> Self {
        let (a, b) = (self.x, self.y);
        let (c, d) = (rhs.x, rhs.y);
        EisensteinValue {
            x: a * c - b * d,
            y: a * d + b * c - b * d,
        }
    }
}

impl fmt::Display for EisensteinValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.x, self.y) {
            (x, 0) => write!(f, "{x}"),
            (0, y) => write!(f, "{y}ω"),
            (x, y) if y < 0 => write!(f, "{x}{y}ω"),
            (x, y) => write!(f, "{x}+{y}ω"),
        }
    }
}
