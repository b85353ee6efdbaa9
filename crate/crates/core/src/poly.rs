//! Dense polynomial arithmetic over GF(3).
//!
//! Polynomials are little-endian coefficient vectors of trits. The zero
//! polynomial is the empty vector and every function returns trimmed output
//! (no trailing zero coefficients). These routines back field construction:
//! irreducibility and primitivity testing, and reduction mod the field
//! modulus.

use crate::arith;
use crate::gf3;

pub fn trim(v: &mut Vec<u8>) {
    while v.last() == Some(&0) {
        v.pop();
    }
}

pub fn is_zero(a: &[u8]) -> bool {
    a.iter().all(|&c| c == 0)
}

pub fn degree(a: &[u8]) -> Option<usize> {
    a.iter().rposition(|&c| c != 0)
}

pub fn add(a: &[u8], b: &[u8]) -> Vec<u8> {
    let mut out = vec![0u8; a.len().max(b.len())];
    for (i, o) in out.iter_mut().enumerate() {
        let x = a.get(i).copied().unwrap_or(0);
        let y = b.get(i).copied().unwrap_or(0);
        *o = gf3::add(x, y);
    }
    trim(&mut out);
    out
}

pub fn sub(a: &[u8], b: &[u8]) -> Vec<u8> {
    let mut out = vec![0u8; a.len().max(b.len())];
    for (i, o) in out.iter_mut().enumerate() {
        let x = a.get(i).copied().unwrap_or(0);
        let y = b.get(i).copied().unwrap_or(0);
        *o = gf3::sub(x, y);
    }
    trim(&mut out);
    out
}

pub fn mul(a: &[u8], b: &[u8]) -> Vec<u8> {
    let (da, db) = match (degree(a), degree(b)) {
        (Some(da), Some(db)) => (da, db),
        _ => return Vec::new(),
    };
    let mut out = vec![0u8; da + db + 1];
    for i in 0..=da {
        if a[i] == 0 {
            continue;
        }
        for j in 0..=db {
            out[i + j] = gf3::add(out[i + j], gf3::mul(a[i], b[j]));
        }
    }
    trim(&mut out);
    out
}

/// Remainder of a modulo monic f.
pub fn rem(a: &[u8], f: &[u8]) -> Vec<u8> {
    let df = degree(f).expect("modulus must be nonzero");
    debug_assert_eq!(f[df], 1, "modulus must be monic");
    let mut r: Vec<u8> = a.to_vec();
    trim(&mut r);
    while let Some(dr) = degree(&r) {
        if dr < df {
            break;
        }
        let c = r[dr];
        let shift = dr - df;
        for i in 0..=df {
            r[shift + i] = gf3::sub(r[shift + i], gf3::mul(c, f[i]));
        }
        trim(&mut r);
    }
    r
}

pub fn mulmod(a: &[u8], b: &[u8], f: &[u8]) -> Vec<u8> {
    rem(&mul(a, b), f)
}

pub fn powmod(a: &[u8], mut e: u128, f: &[u8]) -> Vec<u8> {
    let mut base = rem(a, f);
    let mut acc = vec![1u8];
    while e > 0 {
        if e & 1 == 1 {
            acc = mulmod(&acc, &base, f);
        }
        base = mulmod(&base, &base, f);
        e >>= 1;
    }
    acc
}

/// a^(3^j) mod f, one cube at a time.
pub fn frob_mod(a: &[u8], j: usize, f: &[u8]) -> Vec<u8> {
    let mut out = rem(a, f);
    for _ in 0..j {
        let sq = mulmod(&out, &out, f);
        out = mulmod(&sq, &out, f);
    }
    out
}

/// Monic gcd.
pub fn gcd(a: &[u8], b: &[u8]) -> Vec<u8> {
    let mut a = a.to_vec();
    let mut b = b.to_vec();
    trim(&mut a);
    trim(&mut b);
    while !b.is_empty() {
        let r = rem_general(&a, &b);
        a = b;
        b = r;
    }
    if let Some(da) = degree(&a) {
        let lead_inv = gf3::inv(a[da]);
        for c in &mut a {
            *c = gf3::mul(*c, lead_inv);
        }
    }
    a
}

/// Remainder where the divisor need not be monic.
fn rem_general(a: &[u8], f: &[u8]) -> Vec<u8> {
    let df = degree(f).expect("divisor must be nonzero");
    let lead_inv = gf3::inv(f[df]);
    let mut r: Vec<u8> = a.to_vec();
    trim(&mut r);
    while let Some(dr) = degree(&r) {
        if dr < df {
            break;
        }
        let c = gf3::mul(r[dr], lead_inv);
        let shift = dr - df;
        for i in 0..=df {
            r[shift + i] = gf3::sub(r[shift + i], gf3::mul(c, f[i]));
        }
        trim(&mut r);
    }
    r
}

/// Rabin's test: monic f of degree n is irreducible over GF(3) iff
/// x^(3^n) ≡ x (mod f) and gcd(x^(3^(n/q)) - x, f) = 1 for every prime q | n.
pub fn is_irreducible(f: &[u8]) -> bool {
    let n = match degree(f) {
        Some(0) | None => return false,
        Some(n) => n,
    };
    let x = vec![0u8, 1];
    let xq = frob_mod(&x, n, f);
    if xq != x {
        return false;
    }
    let mut primes = Vec::new();
    let mut m = n;
    let mut p = 2;
    while p * p <= m {
        if m % p == 0 {
            primes.push(p);
            while m % p == 0 {
                m /= p;
            }
        }
        p += 1;
    }
    if m > 1 {
        primes.push(m);
    }
    for q in primes {
        let xp = frob_mod(&x, n / q, f);
        let g = gcd(&sub(&xp, &x), f);
        if degree(&g) != Some(0) {
            return false;
        }
    }
    true
}

/// Multiplicative order of x in GF(3)[x]/(f) for irreducible f. `order` is
/// 3^deg(f) - 1 and `factors` its prime factorization.
pub fn root_order(f: &[u8], order: u128, factors: &[(u128, u32)]) -> u128 {
    let x = vec![0u8, 1];
    debug_assert_eq!(powmod(&x, order, f), vec![1u8]);
    let mut ord = order;
    for &(p, _) in factors {
        while ord.is_multiple_of(p) && powmod(&x, ord / p, f) == vec![1u8] {
            ord /= p;
        }
    }
    ord
}

/// First primitive monic polynomial of degree n in the pinned candidate
/// order: candidate v in 0..3^n supplies the low coefficients via base-3
/// digits (coefficient of x^i is digit i of v), plus a monic leading 1.
pub fn find_primitive(n: usize, order: u128, factors: &[(u128, u32)]) -> Option<Vec<u8>> {
    let count = arith::pow3(n as u32)?;
    let mut v = 0u128;
    while v < count {
        let mut f = vec![0u8; n + 1];
        let mut t = v;
        for c in f.iter_mut().take(n) {
            *c = (t % 3) as u8;
            t /= 3;
        }
        f[n] = 1;
        v += 1;
        // an irreducible polynomial of degree >= 1 with zero constant term
        // is x itself, and x is never primitive
        if f[0] == 0 {
            continue;
        }
        if !is_irreducible(&f) {
            continue;
        }
        if root_order(&f, order, factors) == order {
            return Some(f);
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::factorize;

    #[test]
    fn mul_and_rem_agree_with_hand_calc() {
        // (x + 1)(x + 2) = x^2 + 2 over GF(3)
        assert_eq!(mul(&[1, 1], &[2, 1]), vec![2, 0, 1]);
        // x^4 mod (x^4 + x + 2) = -x - 2 = 2x + 1
        let f = [2u8, 1, 0, 0, 1];
        assert_eq!(rem(&[0, 0, 0, 0, 1], &f), vec![1, 2]);
    }

    #[test]
    fn powmod_reaches_full_order() {
        let f = [2u8, 1, 0, 0, 1];
        let x = [0u8, 1];
        assert_eq!(powmod(&x, 80, &f), vec![1]);
        assert_ne!(powmod(&x, 40, &f), vec![1]);
        assert_ne!(powmod(&x, 16, &f), vec![1]);
    }

    #[test]
    fn irreducibility_classifier() {
        // x^2 + 1 = (x+1)(x+2)? no: (x+1)(x+2) = x^2+2. x^2+1 is irreducible
        assert!(is_irreducible(&[1, 0, 1]));
        // x^2 + 2 = (x+1)(x+2) is reducible
        assert!(!is_irreducible(&[2, 0, 1]));
        // x^4 + x + 2 is irreducible
        assert!(is_irreducible(&[2, 1, 0, 0, 1]));
        // a quartic is reducible iff it has a monic factor of degree 1 or 2;
        // cross-check the classifier against that exhaustive scan
        for v in 0..81u32 {
            let f = [
                (v % 3) as u8,
                (v / 3 % 3) as u8,
                (v / 9 % 3) as u8,
                (v / 27 % 3) as u8,
                1,
            ];
            let mut has_factor = false;
            for a in 0..3u8 {
                if is_zero(&rem(&f, &[a, 1])) {
                    has_factor = true;
                }
                for b in 0..3u8 {
                    if is_zero(&rem(&f, &[a, b, 1])) {
                        has_factor = true;
                    }
                }
            }
            assert_eq!(is_irreducible(&f), !has_factor, "quartic {v}");
        }
    }

    #[test]
    fn first_primitive_quartic_is_pinned() {
        let factors = factorize(80);
        let f = find_primitive(4, 80, &factors).unwrap();
        assert_eq!(f, vec![2, 1, 0, 0, 1]);
        assert_eq!(root_order(&f, 80, &factors), 80);
    }

    #[test]
    fn irreducible_but_imprimitive_quartic_detected() {
        // x^4 + x^3 + x^2 + x + 1 divides x^5 - 1, so its root has order 5
        let f = [1u8, 1, 1, 1, 1];
        assert!(is_irreducible(&f));
        let factors = factorize(80);
        assert_eq!(root_order(&f, 80, &factors), 5);
    }
}
