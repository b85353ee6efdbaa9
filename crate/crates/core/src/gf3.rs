//! Scalar arithmetic mod 3 on `u8` trits. Inputs and outputs are always in
//! {0, 1, 2}.

#[inline(always)]
pub fn add(a: u8, b: u8) -> u8 {
    let s = a + b;
    if s >= 3 {
        s - 3
    } else {
        s
    }
}

#[inline(always)]
pub fn sub(a: u8, b: u8) -> u8 {
    add(a, neg(b))
}

#[inline(always)]
pub fn neg(a: u8) -> u8 {
    if a == 0 {
        0
    } else {
        3 - a
    }
}

#[inline(always)]
pub fn mul(a: u8, b: u8) -> u8 {
    (a * b) % 3
}

/// Multiplicative inverse of a nonzero trit. 1 and 2 are self-inverse.
#[inline(always)]
pub fn inv(a: u8) -> u8 {
    debug_assert!(a == 1 || a == 2);
    a
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tables_are_exact() {
        for a in 0..3u8 {
            for b in 0..3u8 {
                assert_eq!(add(a, b), (a + b) % 3);
                assert_eq!(mul(a, b), (a * b) % 3);
                assert_eq!(sub(a, b), (3 + a - b) % 3);
            }
            assert_eq!(add(a, neg(a)), 0);
        }
        assert_eq!(mul(1, inv(1)), 1);
        assert_eq!(mul(2, inv(2)), 1);
    }
}
