//! Enumeration oracles: the same quantities as [`crate::quad`], computed by
//! walking all of GF(3^n) with no structure theory at all. They exist to
//! cross-check the closed-form routes and are only practical for small
//! fields (the quartic case enumerates 81 elements, squared for the radical
//! scan).

use crate::eisenstein::EisensteinValue;
use crate::field::FieldElement;
use crate::quad::QuadFormSpec;

/// Σ_x ω^(q(x)) over every x in the field, by direct evaluation.
pub fn char_sum_enum(qf: &QuadFormSpec) -> EisensteinValue {
    let mut counts = [0i64; 3];
    for x in qf.ctx().iter_elements() {
        counts[qf.evaluate(&x) as usize] += 1;
    }
    EisensteinValue::from_counts(counts[0], counts[1], counts[2])
}

/// |{x : q(x) = c}| by direct evaluation.
pub fn count_solutions_enum(qf: &QuadFormSpec, c: u8) -> u128 {
    assert!(c < 3);
    qf.ctx()
        .iter_elements()
        .filter(|x| qf.evaluate(x) == c)
        .count() as u128
}

/// The definitional radical {y : q(x + y) = q(x) for all x}, found by
/// scanning all pairs. Cost is 9^n evaluations of a cached value table.
pub fn radical_enum(qf: &QuadFormSpec) -> Vec<FieldElement> {
    let ctx = qf.ctx();
    let size = usize::try_from(ctx.order() + 1).expect("field too large to enumerate");
    let values: Vec<u8> = (0..size)
        .map(|i| qf.evaluate(&ctx.element_from_index(i)))
        .collect();
    let mut radical = Vec::new();
    'outer: for yi in 0..size {
        let y = ctx.element_from_index(yi);
        for xi in 0..size {
            let x = ctx.element_from_index(xi);
            let xy = ctx.add(&x, &y);
            if values[ctx.element_index(&xy)] != values[xi] {
                continue 'outer;
            }
        }
        radical.push(y);
    }
    radical
}

/// Solution count of q(x) = c restricted to representatives: used to verify
/// that x -> x^e1 is exactly 2-to-1 onto the nonzero squares, the fact that
/// justifies splitting the correlation sum into two quadratic forms.
pub fn power_map_image_counts(
    ctx: &crate::field::FieldCtx,
    e: u128,
) -> std::collections::BTreeMap<usize, usize> {
    let mut hits: std::collections::BTreeMap<usize, usize> = Default::default();
    for x in ctx.iter_elements() {
        if x.is_zero() {
            continue;
        }
        let img = ctx.pow(&x, e);
        *hits.entry(ctx.element_index(&img)).or_default() += 1;
    }
    hits
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::make_field;
    use crate::params::decimation_params;
    use crate::quad::{
        build_form, char_sum, count_solutions, linearized_kernel_q1, FormKind,
    };

    #[test]
    fn closed_form_character_sums_match_enumeration_for_all_shifts() {
        let ctx = make_field(4, None).unwrap();
        let params = decimation_params(1).unwrap();
        for tau in 0..80u64 {
            for kind in [FormKind::Q1, FormKind::Q2] {
                let q = build_form(&ctx, &params, kind, tau).unwrap();
                assert_eq!(
                    char_sum(&q),
                    char_sum_enum(&q),
                    "tau = {tau}, kind = {kind:?}"
                );
            }
        }
    }

    #[test]
    fn closed_form_counts_match_enumeration_for_all_shifts() {
        let ctx = make_field(4, None).unwrap();
        let params = decimation_params(1).unwrap();
        for tau in 0..80u64 {
            for kind in [FormKind::Q1, FormKind::Q2] {
                let q = build_form(&ctx, &params, kind, tau).unwrap();
                for c in 0..3u8 {
                    assert_eq!(
                        count_solutions(&q, c),
                        count_solutions_enum(&q, c),
                        "tau = {tau}, kind = {kind:?}, c = {c}"
                    );
                }
            }
        }
    }

    #[test]
    fn definitional_radical_matches_gram_radical_and_kernel() {
        let ctx = make_field(4, None).unwrap();
        let params = decimation_params(1).unwrap();
        for tau in 0..80u64 {
            let q = build_form(&ctx, &params, FormKind::Q1, tau).unwrap();
            let rad = radical_enum(&q);
            let dim = q.gram_matrix().radical_dim();
            assert_eq!(rad.len(), 3usize.pow(dim as u32), "tau = {tau}");
            assert_eq!(
                dim,
                linearized_kernel_q1(&ctx, &params, tau).unwrap(),
                "tau = {tau}"
            );
            // radical members are annihilated by the Gram matrix
            let gram = q.gram_matrix();
            for y in &rad {
                let image = gram.matrix().mul_vec(y.coeffs());
                assert!(image.iter().all(|&v| v == 0), "tau = {tau}, y = {y}");
            }
        }
    }

    #[test]
    fn e1_power_map_double_covers_nonzero_squares() {
        let ctx = make_field(4, None).unwrap();
        let params = decimation_params(1).unwrap();
        let hits = power_map_image_counts(&ctx, params.e1);
        // image has (3^4 - 1)/2 = 40 elements, each hit exactly twice, and
        // every image element is a nonzero square
        assert_eq!(hits.len(), 40);
        for (&idx, &count) in &hits {
            assert_eq!(count, 2);
            let img = ctx.element_from_index(idx);
            assert_eq!(ctx.quadratic_character(&img), 1);
        }
    }

    #[test]
    fn shifted_forms_change_value_off_the_radical() {
        // for a degenerate shift, elements outside the radical must move
        // some value of q1; the radical scan is what certifies invariance
        let ctx = make_field(4, None).unwrap();
        let params = decimation_params(1).unwrap();
        let q = build_form(&ctx, &params, FormKind::Q1, 8).unwrap();
        let rad = radical_enum(&q);
        assert_eq!(rad.len(), 9);
        let rad_idx: std::collections::BTreeSet<usize> =
            rad.iter().map(|y| ctx.element_index(y)).collect();
        for y in ctx.iter_elements() {
            if rad_idx.contains(&ctx.element_index(&y)) {
                continue;
            }
            let moved = ctx.iter_elements().any(|x| {
                let xy = ctx.add(&x, &y);
                q.evaluate(&xy) != q.evaluate(&x)
            });
            assert!(moved, "y = {y} should not be shift invariant");
        }
    }
}
