//! Exact arithmetic over GF(3^n) and cross-correlation analysis of ternary
//! m-sequences against decimated companions.
//!
//! The crate is organized bottom-up:
//!
//! * [`arith`]: integer utilities on `u128` (powers of three, gcd, modular
//!   arithmetic, primality, factorization).
//! * [`field`]: polynomial-basis contexts for GF(3^n) with optional log and
//!   antilog tables, traces, and quadratic characters.
//! * [`params`]: the decimation family d = (3^(2k)+1)^2 / 20 for odd k and
//!   the exponents that govern its quadratic-form reduction.
//! * [`eisenstein`]: exact values in Z[ω], ω = e^(2πi/3), the ring where
//!   ternary character sums live.
//! * [`seq`]: sequence generation, decimation, and direct correlation sums.
//! * [`linalg`]: dense GF(3) matrices, rank, kernels, and congruence
//!   diagonalization of symmetric matrices.
//! * [`quad`]: the two quadratic forms attached to each shift τ, their Gram
//!   matrices, ranks, character sums, and solution counts.
//! * [`spectrum`]: a per-τ engine that assembles Gram matrices from
//!   precomputed trace tensors and evaluates whole spectra in O(n^3) per τ.
//! * [`bruteforce`]: small-field enumeration oracles used to cross-check the
//!   closed-form routes.
//!
//! All arithmetic is exact. Nothing here uses floating point.

pub mod arith;
pub mod bruteforce;
pub mod eisenstein;
pub mod error;
pub mod field;
mod gf3;
pub mod linalg;
pub mod params;
pub mod poly;
pub mod quad;
pub mod seq;
pub mod spectrum;

pub use eisenstein::EisensteinValue;
pub use error::Error;
pub use field::{format_trits, make_field, parse_trits, FieldCtx, FieldElement};
pub use params::{decimation_params, DecimationParams};
pub use quad::{FormKind, GramMatrix, QuadFormSpec, RankReport};
pub use seq::{Sequence, SpectrumEntry};
pub use spectrum::{TauAnalysis, TauAnalyzer};
