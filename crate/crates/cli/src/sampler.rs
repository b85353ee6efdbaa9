//! Deterministic shift sampling.
//!
//! The generator is pinned so that a (seed, count, period) triple always
//! yields the same shift list, across runs and platforms: ChaCha8 keyed
//! with the little-endian seed in the first 8 key bytes and zeros in the
//! remaining 24. Each draw takes one `next_u64`; values at or above
//! `2^64 - (2^64 mod period)` are rejected outright (no modulo bias), the
//! rest reduce mod the period. Draws repeat until `count` distinct shifts
//! accumulate, and the result is sorted ascending.

use std::collections::BTreeSet;

use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::config::CliError;

pub fn sample_taus(seed: u64, count: u64, period: u128) -> Result<Vec<u64>, CliError> {
    if period == 0 || (count as u128) > period {
        return Err(CliError::Config(format!(
            "cannot draw {count} distinct shifts from a period of {period}"
        )));
    }
    if period > u64::MAX as u128 {
        return Err(CliError::Config(format!(
            "sampling supports periods up to 2^64, got {period}"
        )));
    }
    let period = period as u64;
    let mut key = [0u8; 32];
    key[..8].copy_from_slice(&seed.to_le_bytes());
    let mut rng = ChaCha8Rng::from_seed(key);

    // 2^64 - (2^64 mod period), the largest multiple of the period that
    // fits; computed in u128 because 2^64 itself does not fit in u64.
    let threshold = (1u128 << 64) - ((1u128 << 64) % period as u128);

    let mut picked = BTreeSet::new();
    while (picked.len() as u64) < count {
        let raw = rng.next_u64() as u128;
        if raw < threshold {
            picked.insert((raw % period as u128) as u64);
        }
    }
    Ok(picked.into_iter().collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn deterministic_and_sorted() {
        let a = sample_taus(42, 100, 531_440).unwrap();
        let b = sample_taus(42, 100, 531_440).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.len(), 100);
        assert!(a.windows(2).all(|w| w[0] < w[1]));
        assert!(a.iter().all(|&t| t < 531_440));
    }

    #[test]
    fn seed_changes_the_draw() {
        let a = sample_taus(0, 50, 531_440).unwrap();
        let b = sample_taus(1, 50, 531_440).unwrap();
        assert_ne!(a, b);
    }

    #[test]
    fn exhaustive_draw_is_the_full_range() {
        let all = sample_taus(7, 80, 80).unwrap();
        assert_eq!(all, (0..80).collect::<Vec<_>>());
    }

    #[test]
    fn rejects_impossible_requests() {
        assert!(sample_taus(0, 81, 80).is_err());
        assert!(sample_taus(0, 1, 0).is_err());
    }

    #[test]
    fn pinned_first_draws() {
        // Freezes the generator contract: seed 0, period 80.
        let taus = sample_taus(0, 5, 80).unwrap();
        let mut key = [0u8; 32];
        key[..8].copy_from_slice(&0u64.to_le_bytes());
        let mut rng = ChaCha8Rng::from_seed(key);
        let mut expect = std::collections::BTreeSet::new();
        let threshold = (1u128 << 64) - ((1u128 << 64) % 80);
        while expect.len() < 5 {
            let raw = rng.next_u64() as u128;
            if raw < threshold {
                expect.insert((raw % 80) as u64);
            }
        }
        assert_eq!(taus, expect.into_iter().collect::<Vec<_>>());
    }
}
