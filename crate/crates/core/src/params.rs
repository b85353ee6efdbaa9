//! The decimation family d = (3^(2k) + 1)^2 / 20 over GF(3^n) with n = 4k,
//! k odd.
//!
//! For odd k, 3^(2k) + 1 ≡ 10 (mod 20), so the square is divisible by 20 and
//! d is an integer with d ≡ 5 (mod 20). The analysis of the correlation sum
//! runs through the pair of exponents e1 = 3^(2(k+1)) + 1 and
//! e2 = 3^(2k) + 1, linked to d by d * e1 ≡ e2 (mod 3^n - 1).

use crate::arith;
use crate::error::Error;

/// Derived constants for one admissible k.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DecimationParams {
    /// The family parameter, odd.
    pub k: u64,
    /// Field degree n = 4k.
    pub n: usize,
    /// Sequence period L = 3^n - 1.
    pub l: u128,
    /// Decimation d = (3^(2k) + 1)^2 / 20.
    pub d: u128,
    /// First form exponent e1 = 3^(2(k+1)) + 1.
    pub e1: u128,
    /// Second form exponent e2 = 3^(2k) + 1.
    pub e2: u128,
    /// Frobenius power P1 = 3^(2(k+1)) = e1 - 1.
    pub p1: u128,
    /// Frobenius power P2 = 3^(2k) = e2 - 1.
    pub p2: u128,
    /// Correlation magnitude bound 5 * 3^(n/2) + 1.
    pub bound: u128,
}

/// Validate k and derive the parameter set. Even or zero k is rejected
/// (20 does not divide (3^(2k) + 1)^2 there), as is any k whose 3^(4k)
/// overflows u128 (k > 20).
pub fn decimation_params(k: u64) -> Result<DecimationParams, Error> {
    if k == 0 || k.is_multiple_of(2) {
        return Err(Error::KNotOdd { k });
    }
    if k > 20 {
        return Err(Error::Overflow { k });
    }
    let n = (4 * k) as usize;
    let size = arith::pow3(n as u32).ok_or(Error::Overflow { k })?;
    let l = size - 1;
    let p2 = arith::pow3(2 * k as u32).expect("3^(2k) fits when 3^(4k) does");
    let p1 = arith::pow3(2 * (k as u32 + 1)).expect("3^(2k+2) fits when k <= 20");
    let e2 = p2 + 1;
    let e1 = p1 + 1;
    let sq = e2.checked_mul(e2).expect("(3^(2k)+1)^2 fits when 3^(4k) does");
    assert_eq!(sq % 20, 0, "odd k forces 20 | (3^(2k)+1)^2");
    let d = sq / 20;
    let bound = 5 * arith::pow3(n as u32 / 2).expect("3^(n/2) fits") + 1;

    let params = DecimationParams {
        k,
        n,
        l,
        d,
        e1,
        e2,
        p1,
        p2,
        bound,
    };
    // structural identities the whole analysis rests on
    assert_eq!(arith::mulmod(params.d, params.e1, params.l), params.e2 % params.l);
    assert_eq!(arith::gcd(params.e1, params.l), 2);
    Ok(params)
}

impl DecimationParams {
    pub fn bound_squared(&self) -> u128 {
        self.bound * self.bound
    }
}
