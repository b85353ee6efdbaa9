use thiserror::Error;

/// Errors surfaced by field construction, parameter validation, and the
/// correlation routines.
#[derive(Debug, Error)]
pub enum Error {
    #[error("modulus is not irreducible over GF(3)")]
    ModulusNotIrreducible,

    #[error("modulus is irreducible but not primitive: root has order {root_order}, group has order {group_order}")]
    ModulusNotPrimitive { root_order: u128, group_order: u128 },

    #[error("no primitive polynomial of degree {n} found")]
    NoPrimitiveFound { n: usize },

    #[error("invalid modulus: {0}")]
    InvalidModulus(String),

    #[error("invalid trit string: {0}")]
    InvalidTritString(String),

    #[error("division by zero in GF(3^n)")]
    DivisionByZero,

    #[error("element has {got} coefficients, context expects {expected}")]
    ContextMismatch { expected: usize, got: usize },

    #[error("GF(3^{m}) is not a subfield of GF(3^{n})")]
    InvalidSubfield { m: usize, n: usize },

    #[error("decimation family requires odd k, got {k}")]
    KNotOdd { k: u64 },

    #[error("k = {k} overflows the supported integer range")]
    Overflow { k: u64 },

    #[error("degree mismatch: field has n = {ctx_n}, parameters have n = {params_n}")]
    DegreeMismatch { ctx_n: usize, params_n: usize },

    #[error("sequence lengths differ: {a} vs {b}")]
    LengthMismatch { a: usize, b: usize },

    #[error("requested work {needed} exceeds budget {budget}")]
    FeasibilityRefused { needed: u128, budget: u128 },

    #[error("supplied basis is linearly dependent")]
    BasisNotIndependent,

    #[error("character-sum total {x}+{y}ω is not divisible by 2 in Z[ω]")]
    ParityViolation { x: i64, y: i64 },
}
