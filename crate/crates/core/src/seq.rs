//! Ternary sequences, decimation, and direct correlation sums.
//!
//! The m-sequence attached to a field context is s_t = Tr(α^t) for
//! t = 0..3^n - 2, one full period. Cross-correlations are evaluated as
//! exact Eisenstein values: C(τ) = Σ_t ω^(a_(t+τ) - b_t).

use rayon::prelude::*;

use crate::eisenstein::EisensteinValue;
use crate::error::Error;
use crate::field::FieldCtx;
use crate::gf3;
use crate::params::DecimationParams;
use crate::spectrum::direct_work;

/// One period of a ternary sequence.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Sequence {
    symbols: Vec<u8>,
}

impl Sequence {
    pub fn from_symbols(symbols: Vec<u8>) -> Result<Self, Error> {
        if symbols.is_empty() {
            return Err(Error::InvalidTritString("sequence must be nonempty".into()));
        }
        if symbols.iter().any(|&s| s > 2) {
            return Err(Error::InvalidTritString(
                "sequence symbols must be trits in {0, 1, 2}".into(),
            ));
        }
        Ok(Sequence { symbols })
    }

    pub fn symbols(&self) -> &[u8] {
        &self.symbols
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    /// Smallest p dividing the stored length with s_(t+p) = s_t cyclically.
    pub fn least_period(&self) -> usize {
        let len = self.symbols.len();
        (1..=len)
            .filter(|p| len.is_multiple_of(*p))
            .find(|&p| (0..len).all(|i| self.symbols[i] == self.symbols[i % p]))
            .expect("the full length is always a period")
    }

    /// Occurrences of 0, 1, 2 across one period.
    pub fn symbol_counts(&self) -> [usize; 3] {
        let mut counts = [0usize; 3];
        for &s in &self.symbols {
            counts[s as usize] += 1;
        }
        counts
    }

    /// Concatenated digits with no separator, e.g. "1021".
    pub fn to_trit_string(&self) -> String {
        self.symbols.iter().map(|s| (b'0' + s) as char).collect()
    }
}

impl std::fmt::Display for Sequence {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.to_trit_string())
    }
}

/// s_t = Tr(α^t) over one period of length 3^n - 1. Materializes the whole
/// period, so memory is L bytes; intended for table-sized fields.
pub fn m_sequence(ctx: &FieldCtx) -> Sequence {
    let l = usize::try_from(ctx.order()).expect("period exceeds memory limits");
    let mut symbols = Vec::with_capacity(l);
    let mut x = ctx.one();
    for _ in 0..l {
        symbols.push(ctx.trace(&x));
        x = ctx.mul_by_alpha(&x);
    }
    Sequence { symbols }
}

/// v_t = s_(t d mod len), one period of the decimated sequence.
pub fn decimate(s: &Sequence, d: u128) -> Sequence {
    let len = s.symbols.len() as u128;
    let d = d % len;
    let mut symbols = Vec::with_capacity(s.symbols.len());
    let mut idx = 0u128;
    for _ in 0..s.symbols.len() {
        symbols.push(s.symbols[idx as usize]);
        idx += d;
        if idx >= len {
            idx -= len;
        }
    }
    Sequence { symbols }
}

/// C(τ) = Σ_t ω^(a_(t+τ) - b_t), exact in Z[ω]. The sequences must have
/// equal length; τ is reduced cyclically.
pub fn cross_correlation(
    a: &Sequence,
    b: &Sequence,
    tau: u64,
) -> Result<EisensteinValue, Error> {
    if a.len() != b.len() {
        return Err(Error::LengthMismatch {
            a: a.len(),
            b: b.len(),
        });
    }
    let len = a.len();
    let mut counts = [0i64; 3];
    let mut i = (tau as usize) % len;
    for t in 0..len {
        let diff = gf3::sub(a.symbols[i], b.symbols[t]);
        counts[diff as usize] += 1;
        i += 1;
        if i == len {
            i = 0;
        }
    }
    Ok(EisensteinValue::from_counts(counts[0], counts[1], counts[2]))
}

/// One row of a correlation spectrum.
#[derive(Clone, Copy, PartialEq, Eq, Debug, serde::Serialize)]
pub struct SpectrumEntry {
    pub tau: u64,
    pub c_d: EisensteinValue,
    pub mag2: u128,
}

/// Cross-correlation spectrum of the m-sequence against its d-decimation,
/// evaluated directly from the sequences at the requested shifts. Work is
/// |taus| * L symbol operations and is refused beyond `budget`.
pub fn spectrum_direct(
    ctx: &FieldCtx,
    params: &DecimationParams,
    taus: &[u64],
    budget: u128,
) -> Result<Vec<SpectrumEntry>, Error> {
    if ctx.n() != params.n {
        return Err(Error::DegreeMismatch {
            ctx_n: ctx.n(),
            params_n: params.n,
        });
    }
    spectrum_direct_with_decimation(ctx, params.d, taus, budget)
}

/// As [`spectrum_direct`] but for an arbitrary decimation exponent.
pub fn spectrum_direct_with_decimation(
    ctx: &FieldCtx,
    d: u128,
    taus: &[u64],
    budget: u128,
) -> Result<Vec<SpectrumEntry>, Error> {
    let needed = direct_work(taus.len() as u128, ctx.order());
    if needed > budget {
        return Err(Error::FeasibilityRefused { needed, budget });
    }
    let s = m_sequence(ctx);
    let v = decimate(&s, d);
    taus.par_iter()
        .map(|&tau| {
            let c_d = cross_correlation(&s, &v, tau)?;
            Ok(SpectrumEntry {
                tau,
                c_d,
                mag2: c_d.mag2(),
            })
        })
        .collect()
}

/// The field-sum form of the correlation at one shift:
/// S_d(τ) = Σ_x ω^(tr(α^τ x - x^d)) over all x in GF(3^n), so that
/// C_d(τ) = S_d(τ) - 1. Runs in O(L) per call without materializing
/// sequences; uses log tables when present.
pub fn s_d_direct(
    ctx: &FieldCtx,
    params: &DecimationParams,
    tau: u64,
) -> Result<EisensteinValue, Error> {
    if ctx.n() != params.n {
        return Err(Error::DegreeMismatch {
            ctx_n: ctx.n(),
            params_n: params.n,
        });
    }
    let l = ctx.order();
    let d = params.d % l;
    let tau = tau as u128 % l;
    let mut counts = [0i64; 3];
    // x = 0 contributes ω^0
    counts[0] += 1;
    if let (Some(antilog), Some(traces)) = (ctx.antilog_table(), ctx.trace_table()) {
        let l = l as u64;
        let d = d as u64;
        let mut ax = tau as u64; // log of α^τ x at x = α^j
        let mut dx = 0u64; // log of x^d
        for _ in 0..l {
            let t1 = traces[antilog[ax as usize] as usize];
            let t2 = traces[antilog[dx as usize] as usize];
            counts[gf3::sub(t1, t2) as usize] += 1;
            ax += 1;
            if ax == l {
                ax = 0;
            }
            dx += d;
            if dx >= l {
                dx -= l;
            }
        }
    } else {
        let alpha_d = ctx.pow(&ctx.alpha(), d);
        let mut x = ctx.alpha_pow(tau); // α^τ x walks the group from x = 1
        let mut xd = ctx.one(); // x^d walks by α^d steps
        let mut j = 0u128;
        while j < l {
            let t1 = ctx.trace(&x);
            let t2 = ctx.trace(&xd);
            counts[gf3::sub(t1, t2) as usize] += 1;
            x = ctx.mul_by_alpha(&x);
            xd = ctx.mul(&xd, &alpha_d);
            j += 1;
        }
    }
    Ok(EisensteinValue::from_counts(counts[0], counts[1], counts[2]))
}
