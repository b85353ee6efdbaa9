//! GF(3^n) in a polynomial basis.
//!
//! A [`FieldCtx`] owns a primitive modulus f of degree n over GF(3) and
//! represents elements as little-endian trit vectors of length n, the
//! coordinates with respect to the basis 1, α, ..., α^(n-1) where α is the
//! residue of x. Primitivity of f makes α a generator of the multiplicative
//! group, so discrete logs are defined for every nonzero element.
//!
//! When 3^n fits the table budget the context precomputes log and antilog
//! tables plus a per-element trace table; multiplication, powering, inverses,
//! and character evaluations then run in O(1) table lookups (plus O(n)
//! index packing). Larger fields fall back to polynomial reduction. Both
//! routes are exposed so they can be checked against each other.

use std::fmt;

use crate::arith;
use crate::error::Error;
use crate::gf3;
use crate::poly;

/// Largest 3^n for which log/antilog tables are built by default: 3^12.
pub const DEFAULT_TABLE_BUDGET: u128 = 531_441;

/// An element of GF(3^n): trit coefficients, little-endian, length n.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct FieldElement {
    coeffs: Vec<u8>,
}

impl FieldElement {
    pub fn coeffs(&self) -> &[u8] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    fn from_coeffs(coeffs: Vec<u8>) -> Self {
        FieldElement { coeffs }
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_trits(&self.coeffs))
    }
}

/// Parse a comma-separated trit string such as "2,1,0,0,1" (little-endian).
pub fn parse_trits(s: &str) -> Result<Vec<u8>, Error> {
    let mut out = Vec::new();
    for part in s.split(',') {
        match part.trim() {
            "0" => out.push(0),
            "1" => out.push(1),
            "2" => out.push(2),
            other => {
                return Err(Error::InvalidTritString(format!(
                    "expected 0, 1 or 2, found {other:?} in {s:?}"
                )))
            }
        }
    }
    Ok(out)
}

/// Comma-separated little-endian rendering, inverse of [`parse_trits`].
pub fn format_trits(trits: &[u8]) -> String {
    let parts: Vec<String> = trits.iter().map(|t| t.to_string()).collect();
    parts.join(",")
}

/// Arithmetic context for GF(3^n).
///
/// Debug output stays compact: the tables are summarized, not dumped.
pub struct FieldCtx {
    n: usize,
    modulus: Vec<u8>,
    order: u128,
    order_factors: Vec<(u128, u32)>,
    basis_traces: Vec<u8>,
    log: Option<Vec<u32>>,
    antilog: Option<Vec<u32>>,
    trace_by_index: Option<Vec<u8>>,
}

/// Build a context with the default table budget. With `modulus: None` the
/// first primitive polynomial in the pinned search order is used, which makes
/// the default field for each n reproducible across runs and machines.
pub fn make_field(n: usize, modulus: Option<&[u8]>) -> Result<FieldCtx, Error> {
    make_field_with_budget(n, modulus, DEFAULT_TABLE_BUDGET)
}

/// As [`make_field`], but log/antilog/trace tables are only built when
/// 3^n <= table_budget (and 3^n fits a u32 index).
pub fn make_field_with_budget(
    n: usize,
    modulus: Option<&[u8]>,
    table_budget: u128,
) -> Result<FieldCtx, Error> {
    if n == 0 {
        return Err(Error::InvalidModulus("degree must be at least 1".into()));
    }
    let size = arith::pow3(n as u32)
        .ok_or_else(|| Error::InvalidModulus(format!("3^{n} exceeds the supported range")))?;
    let order = size - 1;
    let order_factors = arith::factorize(order);

    let modulus = match modulus {
        Some(m) => {
            if m.len() != n + 1 {
                return Err(Error::InvalidModulus(format!(
                    "expected {} coefficients for degree {n}, got {}",
                    n + 1,
                    m.len()
                )));
            }
            if m.iter().any(|&c| c > 2) {
                return Err(Error::InvalidModulus(
                    "coefficients must be trits in {0, 1, 2}".into(),
                ));
            }
            if m[n] != 1 {
                return Err(Error::InvalidModulus("modulus must be monic".into()));
            }
            if !poly::is_irreducible(m) {
                return Err(Error::ModulusNotIrreducible);
            }
            let root_order = poly::root_order(m, order, &order_factors);
            if root_order != order {
                return Err(Error::ModulusNotPrimitive {
                    root_order,
                    group_order: order,
                });
            }
            m.to_vec()
        }
        None => poly::find_primitive(n, order, &order_factors)
            .ok_or(Error::NoPrimitiveFound { n })?,
    };

    let mut ctx = FieldCtx {
        n,
        modulus,
        order,
        order_factors,
        basis_traces: Vec::new(),
        log: None,
        antilog: None,
        trace_by_index: None,
    };

    // traces of the basis elements 1, α, ..., α^(n-1) make the trace a dot
    // product; computed once via the Frobenius-sum definition
    ctx.basis_traces = (0..n)
        .map(|i| {
            let mut coeffs = vec![0u8; n];
            coeffs[i] = 1;
            ctx.trace(&FieldElement::from_coeffs(coeffs))
        })
        .collect();

    if size <= table_budget && size <= u32::MAX as u128 {
        ctx.build_tables(size as usize);
    }
    Ok(ctx)
}

impl fmt::Debug for FieldCtx {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FieldCtx")
            .field("n", &self.n)
            .field("modulus", &self.modulus_string())
            .field("order", &self.order)
            .field("tables", &self.has_tables())
            .finish()
    }
}

impl FieldCtx {
    pub fn n(&self) -> usize {
        self.n
    }

    /// 3^n - 1, the order of the multiplicative group.
    pub fn order(&self) -> u128 {
        self.order
    }

    /// Prime factorization of the group order, ascending.
    pub fn order_factors(&self) -> &[(u128, u32)] {
        &self.order_factors
    }

    /// The modulus, monic of degree n, little-endian.
    pub fn modulus(&self) -> &[u8] {
        &self.modulus
    }

    /// Modulus rendered as a trit string, e.g. "2,1,0,0,1" for x^4 + x + 2.
    pub fn modulus_string(&self) -> String {
        format_trits(&self.modulus)
    }

    pub fn has_tables(&self) -> bool {
        self.log.is_some()
    }

    /// Traces of the power basis: entry i is Tr(α^i).
    pub fn basis_traces(&self) -> &[u8] {
        &self.basis_traces
    }

    pub fn zero(&self) -> FieldElement {
        FieldElement::from_coeffs(vec![0; self.n])
    }

    pub fn one(&self) -> FieldElement {
        let mut c = vec![0; self.n];
        c[0] = 1;
        FieldElement::from_coeffs(c)
    }

    /// The residue of x, a fixed generator of the multiplicative group.
    pub fn alpha(&self) -> FieldElement {
        let mut c = vec![0; self.n];
        if self.n > 1 {
            c[1] = 1;
        } else {
            // GF(3): x reduces to a scalar
            c[0] = gf3::neg(self.modulus[0]);
        }
        FieldElement::from_coeffs(c)
    }

    /// Checked element constructor from raw trits.
    pub fn element(&self, coeffs: &[u8]) -> Result<FieldElement, Error> {
        if coeffs.len() != self.n {
            return Err(Error::ContextMismatch {
                expected: self.n,
                got: coeffs.len(),
            });
        }
        if coeffs.iter().any(|&c| c > 2) {
            return Err(Error::InvalidTritString(
                "coefficients must be trits in {0, 1, 2}".into(),
            ));
        }
        Ok(FieldElement::from_coeffs(coeffs.to_vec()))
    }

    pub fn add(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        self.check(a);
        self.check(b);
        let coeffs = a
            .coeffs
            .iter()
            .zip(&b.coeffs)
            .map(|(&x, &y)| gf3::add(x, y))
            .collect();
        FieldElement::from_coeffs(coeffs)
    }

    pub fn sub(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        self.add(a, &self.neg(b))
    }

    pub fn neg(&self, a: &FieldElement) -> FieldElement {
        self.check(a);
        FieldElement::from_coeffs(a.coeffs.iter().map(|&x| gf3::neg(x)).collect())
    }

    pub fn scale(&self, c: u8, a: &FieldElement) -> FieldElement {
        self.check(a);
        FieldElement::from_coeffs(a.coeffs.iter().map(|&x| gf3::mul(c, x)).collect())
    }

    /// Product, via log/antilog tables when present, else polynomial
    /// reduction. The two routes agree bit for bit.
    pub fn mul(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        if let (Some(log), Some(antilog)) = (&self.log, &self.antilog) {
            if a.is_zero() || b.is_zero() {
                return self.zero();
            }
            let la = log[self.element_index(a)] as u128;
            let lb = log[self.element_index(b)] as u128;
            let t = (la + lb) % self.order;
            return self.element_from_index(antilog[t as usize] as usize);
        }
        self.mul_polynomial(a, b)
    }

    /// Product by schoolbook multiplication and reduction mod the modulus,
    /// ignoring any tables. Exposed so the table route can be audited.
    pub fn mul_polynomial(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        self.check(a);
        self.check(b);
        let r = poly::mulmod(&a.coeffs, &b.coeffs, &self.modulus);
        self.pad(r)
    }

    /// Product with α: a coefficient shift plus one reduction step, O(n).
    pub fn mul_by_alpha(&self, a: &FieldElement) -> FieldElement {
        self.check(a);
        let top = a.coeffs[self.n - 1];
        let mut out = vec![0u8; self.n];
        out[1..self.n].copy_from_slice(&a.coeffs[..self.n - 1]);
        if top != 0 {
            // x^n = -(f_0 + f_1 x + ... + f_(n-1) x^(n-1)) for monic f
            for (o, &m) in out.iter_mut().zip(&self.modulus) {
                *o = gf3::sub(*o, gf3::mul(top, m));
            }
        }
        FieldElement::from_coeffs(out)
    }

    pub fn inv(&self, a: &FieldElement) -> Result<FieldElement, Error> {
        if a.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if let (Some(log), Some(antilog)) = (&self.log, &self.antilog) {
            let la = log[self.element_index(a)] as u128;
            let t = (self.order - la) % self.order;
            return Ok(self.element_from_index(antilog[t as usize] as usize));
        }
        Ok(self.pow(a, self.order - 1))
    }

    /// a^e with the empty product convention pow(a, 0) = 1, including a = 0.
    pub fn pow(&self, a: &FieldElement, e: u128) -> FieldElement {
        if e == 0 {
            return self.one();
        }
        if a.is_zero() {
            return self.zero();
        }
        let e = e % self.order;
        if e == 0 {
            return self.one();
        }
        if let (Some(log), Some(antilog)) = (&self.log, &self.antilog) {
            let la = log[self.element_index(a)] as u128;
            let t = arith::mulmod(la, e, self.order);
            return self.element_from_index(antilog[t as usize] as usize);
        }
        let r = poly::powmod(&a.coeffs, e, &self.modulus);
        self.pad(r)
    }

    /// a^e for signed e; negative exponents invert first, so a must be
    /// nonzero when e < 0.
    pub fn pow_signed(&self, a: &FieldElement, e: i128) -> Result<FieldElement, Error> {
        if e >= 0 {
            Ok(self.pow(a, e as u128))
        } else {
            let inv = self.inv(a)?;
            Ok(self.pow(&inv, e.unsigned_abs()))
        }
    }

    /// The Frobenius automorphism a -> a^3.
    pub fn frobenius(&self, a: &FieldElement) -> FieldElement {
        let sq = self.mul(a, a);
        self.mul(&sq, a)
    }

    /// j-fold Frobenius, a -> a^(3^j).
    pub fn frobenius_iter(&self, a: &FieldElement, j: usize) -> FieldElement {
        let mut out = a.clone();
        for _ in 0..j % self.n {
            out = self.frobenius(&out);
        }
        out
    }

    /// Absolute trace Tr(a) = a + a^3 + ... + a^(3^(n-1)), always a scalar.
    pub fn trace(&self, a: &FieldElement) -> u8 {
        let mut acc = a.clone();
        let mut cur = a.clone();
        for _ in 1..self.n {
            cur = self.frobenius(&cur);
            acc = self.add(&acc, &cur);
        }
        debug_assert!(
            acc.coeffs[1..].iter().all(|&c| c == 0),
            "trace must land in GF(3)"
        );
        acc.coeffs[0]
    }

    /// Trace as a dot product with the precomputed basis traces. Agrees with
    /// [`Self::trace`] everywhere and costs O(n).
    pub(crate) fn trace_linear(&self, a: &FieldElement) -> u8 {
        let mut acc = 0u32;
        for (c, t) in a.coeffs.iter().zip(&self.basis_traces) {
            acc += (c * t) as u32;
        }
        (acc % 3) as u8
    }

    /// Relative trace into GF(3^m) for m | n:
    /// a + a^(3^m) + a^(3^(2m)) + ... with n/m summands.
    pub fn trace_to_subfield(&self, a: &FieldElement, m: usize) -> Result<FieldElement, Error> {
        if m == 0 || !self.n.is_multiple_of(m) {
            return Err(Error::InvalidSubfield { m, n: self.n });
        }
        let h = self.n / m;
        let mut acc = a.clone();
        let mut cur = a.clone();
        for _ in 1..h {
            cur = self.frobenius_iter(&cur, m);
            acc = self.add(&acc, &cur);
        }
        debug_assert_eq!(self.frobenius_iter(&acc, m), acc);
        Ok(acc)
    }

    /// Quadratic character: 0 at zero, +1 on nonzero squares, -1 otherwise.
    pub fn quadratic_character(&self, a: &FieldElement) -> i8 {
        if a.is_zero() {
            return 0;
        }
        if let Some(log) = &self.log {
            let la = log[self.element_index(a)];
            return if la % 2 == 0 { 1 } else { -1 };
        }
        let p = self.pow(a, self.order / 2);
        if p == self.one() {
            1
        } else {
            debug_assert_eq!(p, self.neg(&self.one()));
            -1
        }
    }

    /// The pinned nonsquare r = α^((3^n - 1)/80) of the subfield GF(3^4).
    /// Requires 4 | n. Then r^(3^4) = r, r^40 = -1, and the quadratic
    /// character of r is -1 both in GF(3^4) and in GF(3^n) (the exponent
    /// (3^n - 1)/80 is odd exactly when n/4 is odd).
    pub fn subfield_nonsquare(&self) -> Result<FieldElement, Error> {
        if !self.n.is_multiple_of(4) {
            return Err(Error::InvalidSubfield { m: 4, n: self.n });
        }
        Ok(self.alpha_pow(self.order / 80))
    }

    /// α^t for arbitrary t, reduced mod the group order.
    pub fn alpha_pow(&self, t: u128) -> FieldElement {
        let t = t % self.order;
        if let Some(antilog) = &self.antilog {
            return self.element_from_index(antilog[t as usize] as usize);
        }
        self.pow(&self.alpha(), t)
    }

    /// Discrete log of a nonzero element, if tables are present.
    pub fn discrete_log(&self, a: &FieldElement) -> Option<u128> {
        if a.is_zero() {
            return None;
        }
        self.log
            .as_ref()
            .map(|log| log[self.element_index(a)] as u128)
    }

    /// Index of an element in the base-3 enumeration: sum of c_i 3^i.
    pub fn element_index(&self, a: &FieldElement) -> usize {
        self.check(a);
        let mut acc: u128 = 0;
        for &c in a.coeffs.iter().rev() {
            acc = acc * 3 + c as u128;
        }
        usize::try_from(acc).expect("element index exceeds usize")
    }

    /// Inverse of [`Self::element_index`].
    pub fn element_from_index(&self, idx: usize) -> FieldElement {
        let mut t = idx;
        let coeffs: Vec<u8> = (0..self.n)
            .map(|_| {
                let c = (t % 3) as u8;
                t /= 3;
                c
            })
            .collect();
        assert_eq!(t, 0, "index out of range for GF(3^{})", self.n);
        FieldElement::from_coeffs(coeffs)
    }

    /// All 3^n elements in index order. Intended for small fields.
    pub fn iter_elements(&self) -> impl Iterator<Item = FieldElement> + '_ {
        let size = usize::try_from(self.order + 1).expect("field too large to enumerate");
        (0..size).map(move |i| self.element_from_index(i))
    }

    pub(crate) fn trace_table(&self) -> Option<&[u8]> {
        self.trace_by_index.as_deref()
    }

    pub(crate) fn antilog_table(&self) -> Option<&[u32]> {
        self.antilog.as_deref()
    }

    fn build_tables(&mut self, size: usize) {
        let mut log = vec![0u32; size];
        let mut antilog = vec![0u32; size - 1];
        let mut cur = self.one();
        for t in 0..self.order {
            let idx = self.element_index(&cur);
            antilog[t as usize] = idx as u32;
            log[idx] = t as u32;
            cur = self.mul_by_alpha(&cur);
        }
        // primitivity guarantees the orbit closes exactly here
        debug_assert_eq!(cur, self.one());
        let trace_by_index = (0..size)
            .map(|i| self.trace_linear(&self.element_from_index(i)))
            .collect();
        self.log = Some(log);
        self.antilog = Some(antilog);
        self.trace_by_index = Some(trace_by_index);
    }

    fn pad(&self, mut v: Vec<u8>) -> FieldElement {
        v.resize(self.n, 0);
        FieldElement::from_coeffs(v)
    }

    #[inline]
    fn check(&self, a: &FieldElement) {
        debug_assert_eq!(a.coeffs.len(), self.n, "element from another context");
    }
}
