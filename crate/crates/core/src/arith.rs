//! Integer utilities on `u128`: powers of three, gcd, overflow-safe modular
//! multiplication, Miller-Rabin primality, and Pollard-rho factorization.
//!
//! Factorization here only ever sees numbers of the form 3^n - 1 for n ≤ 40
//! or so; rho with Brent cycling is far more than adequate.

/// 3^k, or None on overflow. 3^80 < 2^128 < 3^81.
pub fn pow3(k: u32) -> Option<u128> {
    3u128.checked_pow(k)
}

pub fn gcd(mut a: u128, mut b: u128) -> u128 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

/// (a * b) mod m without overflow, via double-and-add on 128-bit halves.
pub fn mulmod(mut a: u128, mut b: u128, m: u128) -> u128 {
    debug_assert!(m != 0);
    a %= m;
    b %= m;
    // fast path: product fits in u128
    if a.checked_mul(b).is_some() {
        return a * b % m;
    }
    let mut acc = 0u128;
    while b > 0 {
        if b & 1 == 1 {
            acc = addmod(acc, a, m);
        }
        a = addmod(a, a, m);
        b >>= 1;
    }
    acc
}

#[inline]
fn addmod(a: u128, b: u128, m: u128) -> u128 {
    // a, b < m <= u128::MAX; avoid overflow by subtracting first
    let a = a % m;
    let b = b % m;
    if a >= m - b {
        a - (m - b)
    } else {
        a + b
    }
}

pub fn powmod(mut a: u128, mut e: u128, m: u128) -> u128 {
    debug_assert!(m != 0);
    if m == 1 {
        return 0;
    }
    let mut acc = 1u128;
    a %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = mulmod(acc, a, m);
        }
        a = mulmod(a, a, m);
        e >>= 1;
    }
    acc
}

/// Deterministic Miller-Rabin. The witness set below is proven complete for
/// all n < 3.3 * 10^24, which covers every factor this crate can produce.
pub fn is_prime(n: u128) -> bool {
    if n < 2 {
        return false;
    }
    for &p in &[2u128, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n == p {
            return true;
        }
        if n.is_multiple_of(p) {
            return false;
        }
    }
    let mut d = n - 1;
    let mut s = 0u32;
    while d & 1 == 0 {
        d >>= 1;
        s += 1;
    }
    'witness: for &a in &[2u128, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = powmod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mulmod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// One nontrivial factor of composite odd n, via Brent's variant of
/// Pollard rho.
fn pollard_rho(n: u128) -> u128 {
    debug_assert!(n > 3 && !is_prime(n));
    if n & 1 == 0 {
        return 2;
    }
    let mut c = 1u128;
    loop {
        let f = |x: u128| addmod(mulmod(x, x, n), c, n);
        let mut x = 2u128;
        let mut y = 2u128;
        let mut d = 1u128;
        while d == 1 {
            x = f(x);
            y = f(f(y));
            d = gcd(x.abs_diff(y), n);
        }
        if d != n {
            return d;
        }
        c += 1;
    }
}

/// Prime factorization with multiplicities, ascending by prime.
pub fn factorize(mut n: u128) -> Vec<(u128, u32)> {
    let mut out: Vec<(u128, u32)> = Vec::new();
    let push = |p: u128, out: &mut Vec<(u128, u32)>| {
        if let Some(last) = out.iter_mut().find(|(q, _)| *q == p) {
            last.1 += 1;
        } else {
            out.push((p, 1));
        }
    };
    for p in [2u128, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47] {
        while n.is_multiple_of(p) {
            push(p, &mut out);
            n /= p;
        }
    }
    let mut stack = vec![n];
    while let Some(m) = stack.pop() {
        if m == 1 {
            continue;
        }
        if is_prime(m) {
            push(m, &mut out);
            continue;
        }
        let d = pollard_rho(m);
        stack.push(d);
        stack.push(m / d);
    }
    out.sort_unstable();
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pow3_overflow_boundary() {
        assert_eq!(pow3(0), Some(1));
        assert_eq!(pow3(4), Some(81));
        assert!(pow3(80).is_some());
        assert_eq!(pow3(81), None);
    }

    #[test]
    fn gcd_basics() {
        assert_eq!(gcd(0, 5), 5);
        assert_eq!(gcd(12, 18), 6);
        assert_eq!(gcd(3u128.pow(4) - 1, 10), 10);
    }

    #[test]
    fn mulmod_matches_wide_product() {
        let m = (1u128 << 100) + 7;
        let a = (1u128 << 99) + 12345;
        let b = (1u128 << 98) + 67890;
        // reference via repeated halving identity: (2a)b = 2(ab)
        let half = mulmod(a >> 1, b, m);
        let lhs = mulmod(a, b, m);
        let expect = addmod_pub(addmod_pub(half, half, m), mulmod(a & 1, b, m), m);
        assert_eq!(lhs, expect);
        assert_eq!(mulmod(7, 9, 1000), 63);
    }

    fn addmod_pub(a: u128, b: u128, m: u128) -> u128 {
        super::addmod(a, b, m)
    }

    #[test]
    fn powmod_small_cases() {
        assert_eq!(powmod(3, 4, 1000), 81);
        assert_eq!(powmod(2, 10, 1 << 20), 1024);
        assert_eq!(powmod(5, 0, 7), 1);
        assert_eq!(powmod(10, 100, 1), 0);
    }

    #[test]
    fn primality_known_values() {
        let primes = [2u128, 3, 5, 41, 73, 1181, 1361, 4561, 1_000_003];
        for p in primes {
            assert!(is_prime(p), "{p} should be prime");
        }
        for c in [1u128, 4, 80, 531440, 6561, 1_000_001] {
            assert!(!is_prime(c), "{c} should be composite");
        }
    }

    #[test]
    fn factorize_order_of_small_fields() {
        // 3^4 - 1 = 80 = 2^4 * 5
        assert_eq!(factorize(80), vec![(2, 4), (5, 1)]);
        // 3^12 - 1 = 531440 = 2^4 * 5 * 7 * 13 * 73
        assert_eq!(
            factorize(531440),
            vec![(2, 4), (5, 1), (7, 1), (13, 1), (73, 1)]
        );
        // 3^20 - 1 = 3486784400 = 2^4 * 5^2 * 11^2 * 61 * 1181
        assert_eq!(
            factorize(3u128.pow(20) - 1),
            vec![(2, 4), (5, 2), (11, 2), (61, 1), (1181, 1)]
        );
    }

    #[test]
    fn factorize_reassembles() {
        for n in [1u128, 2, 80, 531440, 3u128.pow(20) - 1, 987654321] {
            let f = factorize(n);
            let prod: u128 = f.iter().map(|&(p, e)| p.pow(e)).product();
            assert_eq!(prod, n.max(1));
            for &(p, _) in &f {
                assert!(is_prime(p));
            }
        }
    }
}
