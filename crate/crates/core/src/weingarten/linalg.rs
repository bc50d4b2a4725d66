//! Fraction-free Gauss–Jordan elimination over the integers.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::scalar::ExactScalar;

/// Inverts an integer matrix exactly.
///
/// Runs Bareiss-style Gauss–Jordan on `[A | I]`: after step `t` every entry is
/// a minor of the augmented matrix, so each division by the previous pivot is
/// exact. The final state is `[d·I | d·A⁻¹]` with `d = ±det A`. Returns `None`
/// when `A` is singular.
pub fn invert_integer_matrix(a: &[Vec<BigInt>]) -> Option<Vec<Vec<ExactScalar>>> {
    let (scaled, det) = invert_integer_matrix_scaled(a)?;
    Some(
        scaled
            .into_iter()
            .map(|row| row.into_iter().map(|x| ExactScalar::from_bigints(x, det.clone())).collect())
            .collect(),
    )
}

/// Inverse as an integer matrix `B` and a nonzero scale `d` with `A⁻¹ = B / d`.
pub fn invert_integer_matrix_scaled(a: &[Vec<BigInt>]) -> Option<(Vec<Vec<BigInt>>, BigInt)> {
    let n = a.len();
    assert!(a.iter().all(|row| row.len() == n), "matrix must be square");
    let mut aug: Vec<Vec<BigInt>> = a
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }));
            r
        })
        .collect();
    let mut prev = BigInt::one();
    for t in 0..n {
        let pivot_row = (t..n).find(|&r| !aug[r][t].is_zero())?;
        aug.swap(t, pivot_row);
        let pivot_line = aug[t].clone();
        let pivot = pivot_line[t].clone();
        aug.par_iter_mut().enumerate().filter(|(i, _)| *i != t).for_each(|(i, row)| {
            let factor = row[t].clone();
            for j in 0..2 * n {
                if j < t {
                    // eliminated columns: only the diagonal is nonzero
                    if i == j {
                        row[j] = pivot.clone();
                    }
                    continue;
                }
                if j == t {
                    row[j] = BigInt::zero();
                    continue;
                }
                let num = &pivot * &row[j] - &factor * &pivot_line[j];
                let (q, r) = num.div_rem(&prev);
                debug_assert!(r.is_zero(), "fraction-free step must divide exactly");
                row[j] = q;
            }
        });
        prev = pivot;
    }
    let scaled = aug.into_iter().map(|mut row| row.split_off(n)).collect();
    Some((scaled, prev))
}

/// Exact product of two rational matrices.
pub fn mat_mul(a: &[Vec<ExactScalar>], b: &[Vec<ExactScalar>]) -> Vec<Vec<ExactScalar>> {
    let inner = b.len();
    let cols = b.first().map_or(0, Vec::len);
    a.iter()
        .map(|row| {
            assert_eq!(row.len(), inner);
            (0..cols).map(|j| (0..inner).map(|l| &row[l] * &b[l][j]).sum()).collect()
        })
        .collect()
}

pub fn is_identity(m: &[Vec<ExactScalar>]) -> bool {
    m.iter().enumerate().all(|(i, row)| {
        row.len() == m.len()
            && row.iter().enumerate().all(|(j, x)| if i == j { *x == ExactScalar::one() } else { x.is_zero() })
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn int_matrix(rows: &[&[i64]]) -> Vec<Vec<BigInt>> {
        rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect()
    }

    fn to_scalar(m: &[Vec<BigInt>]) -> Vec<Vec<ExactScalar>> {
        m.iter().map(|r| r.iter().map(|x| ExactScalar::from_bigint(x.clone())).collect()).collect()
    }

    #[test]
    fn two_by_two() {
        let g = int_matrix(&[&[9, 3], &[3, 3]]);
        let w = invert_integer_matrix(&g).unwrap();
        let expected = [[ExactScalar::ratio(1, 6), ExactScalar::ratio(-1, 6)], [ExactScalar::ratio(-1, 6), ExactScalar::ratio(1, 2)]];
        for i in 0..2 {
            for j in 0..2 {
                assert_eq!(w[i][j], expected[i][j]);
            }
        }
    }

    #[test]
    fn singular_detected() {
        assert!(invert_integer_matrix(&int_matrix(&[&[1, 1], &[1, 1]])).is_none());
        assert!(invert_integer_matrix(&int_matrix(&[&[1, 2, 3], &[4, 5, 6], &[7, 8, 9]])).is_none());
    }

    #[test]
    fn needs_row_swap() {
        let a = int_matrix(&[&[0, 2, 1], &[1, 0, 0], &[3, 1, 4]]);
        let w = invert_integer_matrix(&a).unwrap();
        assert!(is_identity(&mat_mul(&w, &to_scalar(&a))));
        assert!(is_identity(&mat_mul(&to_scalar(&a), &w)));
    }

    #[test]
    fn empty_matrix() {
        assert_eq!(invert_integer_matrix(&[]).unwrap().len(), 0);
    }

    proptest::proptest! {
        #[test]
        fn inverse_is_exact(entries in proptest::collection::vec(-9i64..10, 16)) {
            let a: Vec<Vec<BigInt>> = entries.chunks(4).map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect();
            if let Some(w) = invert_integer_matrix(&a) {
                proptest::prop_assert!(is_identity(&mat_mul(&w, &to_scalar(&a))));
            }
        }
    }
}
