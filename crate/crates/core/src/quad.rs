//! The pair of quadratic forms attached to each shift of the correlation
//! sum, and everything computed from them: Gram matrices, ranks, radicals,
//! discriminants, character sums, and solution counts.
//!
//! For a shift τ with a = α^τ, the substitution x -> x^e1 (which is 2-to-1
//! onto the nonzero squares because gcd(e1, 3^n - 1) = 2) splits the sum
//! S_d(τ) = Σ_x ω^(tr(a x - x^d)) into two ternary quadratic forms
//!
//!   q1(x) = tr(a x^e1 - x^e2)
//!   q2(x) = tr(a r x^e1 - r^d x^e2)
//!
//! with r the pinned nonsquare of GF(3^4), e1 = 3^(2(k+1)) + 1 and
//! e2 = 3^(2k) + 1, so that 2 S_d(τ) = Σ_x ω^(q1(x)) + Σ_x ω^(q2(x)).
//! Both exponents are one more than a power of 3, so each form is GF(3)
//! quadratic in the coordinates of x and its character sum follows from the
//! rank and discriminant of its Gram matrix.

use serde::{Deserialize, Serialize};

use crate::eisenstein::EisensteinValue;
use crate::error::Error;
use crate::field::{FieldCtx, FieldElement};
use crate::gf3;
use crate::linalg::{diagonalize_symmetric, Mat3};
use crate::params::DecimationParams;

/// Which of the two forms of the split.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FormKind {
    Q1,
    Q2,
}

/// One concrete quadratic form q(x) = tr(c1 x^e1 - c2 x^e2) on GF(3^n).
pub struct QuadFormSpec<'a> {
    ctx: &'a FieldCtx,
    params: DecimationParams,
    kind: FormKind,
    tau: u64,
    coeff1: FieldElement,
    coeff2: FieldElement,
}

/// Construct the form of the given kind at shift τ: coefficients are
/// (a, 1) for q1 and (a r, r^d) for q2, with a = α^τ.
pub fn build_form<'a>(
    ctx: &'a FieldCtx,
    params: &DecimationParams,
    kind: FormKind,
    tau: u64,
) -> Result<QuadFormSpec<'a>, Error> {
    if ctx.n() != params.n {
        return Err(Error::DegreeMismatch {
            ctx_n: ctx.n(),
            params_n: params.n,
        });
    }
    let a = ctx.alpha_pow(tau as u128);
    let (coeff1, coeff2) = match kind {
        FormKind::Q1 => (a, ctx.one()),
        FormKind::Q2 => {
            let r = ctx.subfield_nonsquare()?;
            let rd = ctx.pow(&r, params.d);
            (ctx.mul(&a, &r), rd)
        }
    };
    Ok(QuadFormSpec {
        ctx,
        params: *params,
        kind,
        tau,
        coeff1,
        coeff2,
    })
}

impl<'a> QuadFormSpec<'a> {
    pub fn ctx(&self) -> &'a FieldCtx {
        self.ctx
    }

    pub fn kind(&self) -> FormKind {
        self.kind
    }

    pub fn tau(&self) -> u64 {
        self.tau
    }

    pub fn coeff1(&self) -> &FieldElement {
        &self.coeff1
    }

    pub fn coeff2(&self) -> &FieldElement {
        &self.coeff2
    }

    /// q(x) by the literal definition tr(c1 x^e1 - c2 x^e2).
    pub fn evaluate(&self, x: &FieldElement) -> u8 {
        let t1 = self.ctx.mul(&self.coeff1, &self.ctx.pow(x, self.params.e1));
        let t2 = self.ctx.mul(&self.coeff2, &self.ctx.pow(x, self.params.e2));
        self.ctx.trace(&self.ctx.sub(&t1, &t2))
    }

    /// Symmetric Gram matrix in the power basis 1, α, ..., α^(n-1), with
    /// q(x) = x^T S x for the coordinate vector of x.
    pub fn gram_matrix(&self) -> GramMatrix {
        let basis: Vec<FieldElement> = (0..self.ctx.n())
            .map(|i| {
                let mut c = vec![0u8; self.ctx.n()];
                c[i] = 1;
                self.ctx.element(&c).expect("power basis is valid")
            })
            .collect();
        self.gram_in_basis(&basis)
    }

    /// Gram matrix with respect to an arbitrary basis of GF(3^n) over GF(3).
    pub fn gram_matrix_with_basis(
        &self,
        basis: &[FieldElement],
    ) -> Result<GramMatrix, Error> {
        let n = self.ctx.n();
        if basis.len() != n {
            return Err(Error::ContextMismatch {
                expected: n,
                got: basis.len(),
            });
        }
        let mut m = Mat3::zeros(n, n);
        for (j, b) in basis.iter().enumerate() {
            for i in 0..n {
                m.set(i, j, b.coeffs()[i]);
            }
        }
        if m.rank() != n {
            return Err(Error::BasisNotIndependent);
        }
        Ok(self.gram_in_basis(basis))
    }

    /// Writing x = Σ x_i b_i, the powers of 3 inside e1 and e2 act linearly,
    /// so q(x) = Σ_ij x_i x_j A_ij with
    /// A_ij = tr(c1 b_i^P1 b_j) - tr(c2 b_i^P2 b_j). The symmetrized
    /// S = 2(A + A^T) then satisfies x^T S x = 4 q(x) = q(x) in GF(3).
    fn gram_in_basis(&self, basis: &[FieldElement]) -> GramMatrix {
        let ctx = self.ctx;
        let n = ctx.n();
        let f1 = 2 * (self.params.k as usize + 1);
        let f2 = 2 * self.params.k as usize;
        let mut a = Mat3::zeros(n, n);
        for i in 0..n {
            let bi_p1 = ctx.frobenius_iter(&basis[i], f1);
            let bi_p2 = ctx.frobenius_iter(&basis[i], f2);
            let u = ctx.mul(&self.coeff1, &bi_p1);
            let v = ctx.mul(&self.coeff2, &bi_p2);
            for (j, bj) in basis.iter().enumerate() {
                let t1 = ctx.trace(&ctx.mul(&u, bj));
                let t2 = ctx.trace(&ctx.mul(&v, bj));
                a.set(i, j, gf3::sub(t1, t2));
            }
        }
        let mut s = Mat3::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                let sym = gf3::add(a.get(i, j), a.get(j, i));
                s.set(i, j, gf3::mul(2, sym));
            }
        }
        GramMatrix::from_symmetric(s)
    }
}

/// Symmetric Gram matrix of a ternary quadratic form.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct GramMatrix {
    mat: Mat3,
}

impl GramMatrix {
    /// Wrap a symmetric matrix; panics if the argument is not symmetric.
    pub fn from_symmetric(mat: Mat3) -> Self {
        assert!(mat.is_symmetric(), "Gram matrices are symmetric");
        GramMatrix { mat }
    }

    pub fn matrix(&self) -> &Mat3 {
        &self.mat
    }

    pub fn n(&self) -> usize {
        self.mat.rows()
    }

    pub fn rank(&self) -> usize {
        self.mat.rank()
    }

    /// Dimension of the radical, n - rank.
    pub fn radical_dim(&self) -> usize {
        self.n() - self.rank()
    }

    /// x^T S x for a coordinate vector.
    pub fn evaluate(&self, coords: &[u8]) -> u8 {
        assert_eq!(coords.len(), self.n());
        let mut acc = 0u32;
        for i in 0..self.n() {
            if coords[i] == 0 {
                continue;
            }
            for j in 0..self.n() {
                acc += (coords[i] * gf3::mul(self.mat.get(i, j), coords[j])) as u32;
            }
        }
        (acc % 3) as u8
    }

    pub fn diagonalize(&self) -> Diagonalization {
        let out = diagonalize_symmetric(&self.mat);
        let diag: Vec<u8> = out.diag.iter().copied().filter(|&d| d != 0).collect();
        let rank = diag.len();
        let delta = diag.iter().fold(1u8, |acc, &d| gf3::mul(acc, d));
        // ε = η((-1)^floor(rank/2) Δ); the quadratic class of Δ is basis
        // independent even though Δ itself is only defined up to squares
        let sign = if (rank / 2) % 2 == 1 { 2u8 } else { 1u8 };
        let epsilon = eta3(gf3::mul(sign, delta));
        Diagonalization {
            diag,
            rank,
            delta,
            epsilon,
        }
    }
}

/// Quadratic character of GF(3): η(1) = 1, η(2) = -1, η(0) = 0.
fn eta3(c: u8) -> i8 {
    match c {
        0 => 0,
        1 => 1,
        _ => -1,
    }
}

/// Outcome of congruence-diagonalizing a Gram matrix. `diag` keeps the
/// nonzero entries only; `delta` is their product, a representative of the
/// discriminant class; `epsilon` is the sign η((-1)^floor(t/2) Δ) that
/// drives both the character sum and the solution counts.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Diagonalization {
    pub diag: Vec<u8>,
    pub rank: usize,
    pub delta: u8,
    pub epsilon: i8,
}

/// Character sum Σ_x ω^(q(x)) of a rank-t form on GF(3^n) from its
/// diagonalization: the n - t radical dimensions scale by 3^(n-t), and the
/// nondegenerate part contributes ε 3^(t/2) for even t and
/// ε i √3 3^((t-1)/2) = ε (1 + 2ω) 3^((t-1)/2) for odd t.
pub fn char_sum_from_diag(n: usize, d: &Diagonalization) -> EisensteinValue {
    let t = d.rank;
    let eps = d.epsilon as i64;
    if t.is_multiple_of(2) {
        let mag = 3i64
            .checked_pow((n - t / 2) as u32)
            .expect("character sum exceeds i64");
        EisensteinValue::new(eps * mag, 0)
    } else {
        let c = eps
            * 3i64
                .checked_pow((n - t.div_ceil(2)) as u32)
                .expect("character sum exceeds i64");
        EisensteinValue::new(c, 2 * c)
    }
}

/// Character sum of a form, by diagonalizing its Gram matrix.
pub fn char_sum(qf: &QuadFormSpec) -> EisensteinValue {
    char_sum_from_diag(qf.ctx().n(), &qf.gram_matrix().diagonalize())
}

/// Number of x in GF(3^n) with q(x) = c, from the diagonalization.
pub fn count_solutions(qf: &QuadFormSpec, c: u8) -> u128 {
    count_from_diag(qf.ctx().n(), &qf.gram_matrix().diagonalize(), c)
}

/// Solution counts of a diagonalized rank-t form, all scaled by 3^(n-t)
/// for the radical directions:
/// even t: N(0) = 3^(t-1) + ε(3-1) 3^((t-2)/2), N(c) = 3^(t-1) - ε 3^((t-2)/2);
/// odd t:  N(0) = 3^(t-1), N(c) = 3^(t-1) + ε η(c) 3^((t-1)/2).
pub fn count_from_diag(n: usize, d: &Diagonalization, c: u8) -> u128 {
    debug_assert!(c < 3);
    let t = d.rank;
    let pow = |e: usize| -> i128 { 3u128.pow(e as u32) as i128 };
    if t == 0 {
        return if c == 0 { pow(n) as u128 } else { 0 };
    }
    let eps = d.epsilon as i128;
    let scale = pow(n - t);
    let core = if t.is_multiple_of(2) {
        if c == 0 {
            pow(t - 1) + eps * 2 * pow((t - 2) / 2)
        } else {
            pow(t - 1) - eps * pow((t - 2) / 2)
        }
    } else if c == 0 {
        pow(t - 1)
    } else {
        pow(t - 1) + eps * eta3(c) as i128 * pow((t - 1) / 2)
    };
    let total = core * scale;
    debug_assert!(total >= 0);
    total as u128
}

/// S_d(τ) by the quadratic-form route: half the sum of the two character
/// sums. The halving is exact in Z[ω]; a parity failure would falsify the
/// two-form split and is surfaced as an error rather than rounded.
pub fn s_d_quadform(
    ctx: &FieldCtx,
    params: &DecimationParams,
    tau: u64,
) -> Result<EisensteinValue, Error> {
    let q1 = build_form(ctx, params, FormKind::Q1, tau)?;
    let q2 = build_form(ctx, params, FormKind::Q2, tau)?;
    (char_sum(&q1) + char_sum(&q2)).half()
}

/// Rank analysis of one form at one shift, in a stable serializable shape.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct RankReport {
    pub tau: u64,
    pub kind: FormKind,
    pub rank: usize,
    pub radical_dim: usize,
    pub delta: u8,
    pub epsilon: i8,
    pub char_sum: EisensteinValue,
}

pub fn rank_report(qf: &QuadFormSpec) -> RankReport {
    let gram = qf.gram_matrix();
    report_from_gram(qf.ctx().n(), qf.tau(), qf.kind(), &gram)
}

pub(crate) fn report_from_gram(
    n: usize,
    tau: u64,
    kind: FormKind,
    gram: &GramMatrix,
) -> RankReport {
    let d = gram.diagonalize();
    RankReport {
        tau,
        kind,
        rank: d.rank,
        radical_dim: n - d.rank,
        delta: d.delta,
        epsilon: d.epsilon,
        char_sum: char_sum_from_diag(n, &d),
    }
}

/// Kernel dimension of the linearized operator attached to q1:
/// y -> a^P1 y^81 + y^9 + a y, the P1-th power of the bilinear kernel map,
/// so its kernel is exactly the radical of q1. The exponents 81 = 3^4 and
/// 9 = 3^2 are literal for every k.
pub fn linearized_kernel_q1(
    ctx: &FieldCtx,
    params: &DecimationParams,
    tau: u64,
) -> Result<usize, Error> {
    if ctx.n() != params.n {
        return Err(Error::DegreeMismatch {
            ctx_n: ctx.n(),
            params_n: params.n,
        });
    }
    let a = ctx.alpha_pow(tau as u128);
    let c_top = ctx.frobenius_iter(&a, 2 * (params.k as usize + 1));
    Ok(linearized_kernel_dim(ctx, &c_top, &ctx.one(), &a))
}

/// Kernel dimension of the linearized operator attached to q2:
/// y -> (a r)^P1 y^81 - (r^d + r^(9d)) y^9 + a r y. Since r^d + r^(9d) = 0,
/// the middle term vanishes and the kernel is always trivial.
pub fn linearized_kernel_q2(
    ctx: &FieldCtx,
    params: &DecimationParams,
    tau: u64,
) -> Result<usize, Error> {
    if ctx.n() != params.n {
        return Err(Error::DegreeMismatch {
            ctx_n: ctx.n(),
            params_n: params.n,
        });
    }
    let r = ctx.subfield_nonsquare()?;
    let a = ctx.alpha_pow(tau as u128);
    let ar = ctx.mul(&a, &r);
    let c_top = ctx.frobenius_iter(&ar, 2 * (params.k as usize + 1));
    let rd = ctx.pow(&r, params.d);
    let r9d = ctx.pow(&rd, 9);
    let c_mid = ctx.neg(&ctx.add(&rd, &r9d));
    Ok(linearized_kernel_dim(ctx, &c_top, &c_mid, &ar))
}

/// The q2 operator after dropping its vanishing middle term and dividing by
/// a r: y -> a^(P1 - 1) y^81 + y. Same kernel as the full operator; used as
/// a consistency check on the reduction.
pub fn linearized_kernel_q2_reduced(
    ctx: &FieldCtx,
    params: &DecimationParams,
    tau: u64,
) -> Result<usize, Error> {
    if ctx.n() != params.n {
        return Err(Error::DegreeMismatch {
            ctx_n: ctx.n(),
            params_n: params.n,
        });
    }
    let a = ctx.alpha_pow(tau as u128);
    let c_top = ctx.pow(&a, params.p1 - 1);
    Ok(linearized_kernel_dim(ctx, &c_top, &ctx.zero(), &ctx.one()))
}

/// Kernel dimension of y -> c_top y^81 + c_mid y^9 + c_lin y as a GF(3)
/// linear map in the power basis.
fn linearized_kernel_dim(
    ctx: &FieldCtx,
    c_top: &FieldElement,
    c_mid: &FieldElement,
    c_lin: &FieldElement,
) -> usize {
    let n = ctx.n();
    let mut m = Mat3::zeros(n, n);
    for j in 0..n {
        let mut c = vec![0u8; n];
        c[j] = 1;
        let b = ctx.element(&c).expect("power basis is valid");
        let y81 = ctx.frobenius_iter(&b, 4);
        let y9 = ctx.frobenius_iter(&b, 2);
        let img = ctx.add(
            &ctx.add(&ctx.mul(c_top, &y81), &ctx.mul(c_mid, &y9)),
            &ctx.mul(c_lin, &b),
        );
        for i in 0..n {
            m.set(i, j, img.coeffs()[i]);
        }
    }
    n - m.rank()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::make_field;
    use crate::params::decimation_params;
    use crate::seq::s_d_direct;

    fn quartic() -> (FieldCtx, DecimationParams) {
        (make_field(4, None).unwrap(), decimation_params(1).unwrap())
    }

    #[test]
    fn shift_zero_rank_reports_are_pinned() {
        let (ctx, params) = quartic();
        let q1 = build_form(&ctx, &params, FormKind::Q1, 0).unwrap();
        let r1 = rank_report(&q1);
        assert_eq!(r1.rank, 2);
        assert_eq!(r1.radical_dim, 2);
        assert_eq!(r1.epsilon, -1);
        assert_eq!(r1.char_sum, EisensteinValue::new(-27, 0));

        let q2 = build_form(&ctx, &params, FormKind::Q2, 0).unwrap();
        let r2 = rank_report(&q2);
        assert_eq!(r2.rank, 4);
        assert_eq!(r2.radical_dim, 0);
        assert_eq!(r2.epsilon, 1);
        assert_eq!(r2.char_sum, EisensteinValue::new(9, 0));
    }

    #[test]
    fn shift_zero_solution_counts_are_pinned() {
        let (ctx, params) = quartic();
        let q1 = build_form(&ctx, &params, FormKind::Q1, 0).unwrap();
        assert_eq!(
            [0u8, 1, 2].map(|c| count_solutions(&q1, c)),
            [9, 36, 36]
        );
        let q2 = build_form(&ctx, &params, FormKind::Q2, 0).unwrap();
        assert_eq!(
            [0u8, 1, 2].map(|c| count_solutions(&q2, c)),
            [33, 24, 24]
        );
        // counts always total the field size
        for tau in [0u64, 3, 8, 41] {
            for kind in [FormKind::Q1, FormKind::Q2] {
                let q = build_form(&ctx, &params, kind, tau).unwrap();
                let total: u128 = [0u8, 1, 2].iter().map(|&c| count_solutions(&q, c)).sum();
                assert_eq!(total, 81);
            }
        }
    }

    #[test]
    fn literal_evaluation_matches_gram_form() {
        let (ctx, params) = quartic();
        for tau in [0u64, 1, 5, 8, 17, 40, 79] {
            for kind in [FormKind::Q1, FormKind::Q2] {
                let q = build_form(&ctx, &params, kind, tau).unwrap();
                let gram = q.gram_matrix();
                for x in ctx.iter_elements() {
                    assert_eq!(
                        q.evaluate(&x),
                        gram.evaluate(x.coeffs()),
                        "tau = {tau}, kind = {kind:?}, x = {x}"
                    );
                }
            }
        }
    }

    #[test]
    fn gram_form_is_basis_independent_in_rank_and_sign() {
        let (ctx, params) = quartic();
        let q = build_form(&ctx, &params, FormKind::Q1, 11).unwrap();
        let standard = rank_report(&q);

        // a scaled and shuffled basis: 2α^2, α, 2, α^3
        let basis = vec![
            ctx.element(&[0, 0, 2, 0]).unwrap(),
            ctx.element(&[0, 1, 0, 0]).unwrap(),
            ctx.element(&[2, 0, 0, 0]).unwrap(),
            ctx.element(&[0, 0, 0, 1]).unwrap(),
        ];
        let gram = q.gram_matrix_with_basis(&basis).unwrap();
        let d = gram.diagonalize();
        assert_eq!(d.rank, standard.rank);
        assert_eq!(d.epsilon, standard.epsilon);
        assert_eq!(
            char_sum_from_diag(ctx.n(), &d),
            standard.char_sum
        );

        let dependent = vec![
            ctx.one(),
            ctx.alpha(),
            ctx.add(&ctx.one(), &ctx.alpha()),
            ctx.element(&[0, 0, 0, 1]).unwrap(),
        ];
        assert!(matches!(
            q.gram_matrix_with_basis(&dependent),
            Err(Error::BasisNotIndependent)
        ));
        assert!(matches!(
            q.gram_matrix_with_basis(&basis[..2]),
            Err(Error::ContextMismatch {
                expected: 4,
                got: 2
            })
        ));
    }

    #[test]
    fn quadform_route_reproduces_direct_sums_everywhere() {
        let (ctx, params) = quartic();
        for tau in 0..80u64 {
            assert_eq!(
                s_d_quadform(&ctx, &params, tau).unwrap(),
                s_d_direct(&ctx, &params, tau).unwrap(),
                "tau = {tau}"
            );
        }
    }

    #[test]
    fn q1_kernel_equals_radical_and_tracks_eighth_powers() {
        let (ctx, params) = quartic();
        for tau in 0..80u64 {
            let q1 = build_form(&ctx, &params, FormKind::Q1, tau).unwrap();
            let k = linearized_kernel_q1(&ctx, &params, tau).unwrap();
            assert_eq!(k, q1.gram_matrix().radical_dim(), "tau = {tau}");
            // degenerate exactly when a is an eighth power
            let expect = if tau % 8 == 0 { 2 } else { 0 };
            assert_eq!(k, expect, "tau = {tau}");
        }
    }

    #[test]
    fn q2_kernel_is_trivial_for_all_shifts() {
        let (ctx, params) = quartic();
        for tau in 0..80u64 {
            assert_eq!(linearized_kernel_q2(&ctx, &params, tau).unwrap(), 0);
            assert_eq!(
                linearized_kernel_q2(&ctx, &params, tau).unwrap(),
                linearized_kernel_q2_reduced(&ctx, &params, tau).unwrap()
            );
        }
    }

    #[test]
    fn rank_report_serialization_shape() {
        let (ctx, params) = quartic();
        let q1 = build_form(&ctx, &params, FormKind::Q1, 0).unwrap();
        let v = serde_json::to_value(rank_report(&q1)).unwrap();
        assert_eq!(v["tau"], 0);
        assert_eq!(v["kind"], "q1");
        assert_eq!(v["rank"], 2);
        assert_eq!(v["radical_dim"], 2);
        assert_eq!(v["epsilon"], -1);
        assert_eq!(v["char_sum"]["x"], -27);
        assert_eq!(v["char_sum"]["y"], 0);
        let delta = v["delta"].as_u64().unwrap();
        assert!(delta == 1 || delta == 2);
        // round trip
        let back: RankReport = serde_json::from_value(v).unwrap();
        assert_eq!(back, rank_report(&q1));
    }

    #[test]
    fn degenerate_diag_inputs() {
        let d0 = Diagonalization {
            diag: vec![],
            rank: 0,
            delta: 1,
            epsilon: 1,
        };
        assert_eq!(char_sum_from_diag(4, &d0), EisensteinValue::new(81, 0));
        assert_eq!(count_from_diag(4, &d0, 0), 81);
        assert_eq!(count_from_diag(4, &d0, 1), 0);

        // q(x) = x^2 on GF(3): counts 1 each of 0 and 1... over one variable
        // N(0) = 1, N(1) = 2, N(2) = 0
        let d1 = Diagonalization {
            diag: vec![1],
            rank: 1,
            delta: 1,
            epsilon: 1,
        };
        assert_eq!(count_from_diag(1, &d1, 0), 1);
        assert_eq!(count_from_diag(1, &d1, 1), 2);
        assert_eq!(count_from_diag(1, &d1, 2), 0);
        // Σ_x ω^(x^2) = 1 + 2ω
        assert_eq!(char_sum_from_diag(1, &d1), EisensteinValue::new(1, 2));
    }
}
