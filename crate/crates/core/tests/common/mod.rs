//! Independent oracles for the integration suites. Nothing here calls the
//! elimination, characteristic-polynomial or recurrence code it is used to
//! check.
#![allow(dead_code)]

use moment_core::identities::{random_measure, MeasureGenSpec, SplitMix64};
use moment_core::{DiscreteMeasure, ExactScalar, Matrix};
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Determinant by Laplace expansion along the first row.
pub fn cofactor_det(m: &Matrix) -> ExactScalar {
    let rows = m.to_rows();
    laplace(&rows)
}

fn laplace(rows: &[Vec<ExactScalar>]) -> ExactScalar {
    let n = rows.len();
    if n == 0 {
        return ExactScalar::one();
    }
    if n == 1 {
        return rows[0][0].clone();
    }
    let mut acc = ExactScalar::zero();
    for j in 0..n {
        if rows[0][j].is_zero() {
            continue;
        }
        let minor: Vec<Vec<ExactScalar>> = rows[1..]
            .iter()
            .map(|r| r.iter().enumerate().filter(|&(c, _)| c != j).map(|(_, v)| v.clone()).collect())
            .collect();
        let term = &rows[0][j] * laplace(&minor);
        if j % 2 == 0 {
            acc += term;
        } else {
            acc -= term;
        }
    }
    acc
}

/// PSD iff all `2^n - 1` principal minors are nonnegative.
pub fn principal_minors_psd(m: &Matrix) -> bool {
    let n = m.rows();
    (1u32..(1 << n)).all(|mask| {
        let idx: Vec<usize> = (0..n).filter(|&i| mask & (1 << i) != 0).collect();
        !cofactor_det(&m.select(&idx, &idx)).is_negative()
    })
}

/// `sum_j m_j x_j^k` with explicit powers.
pub fn naive_moments(pairs: &[(ExactScalar, ExactScalar)], count: usize) -> Vec<ExactScalar> {
    (0..count)
        .map(|k| pairs.iter().fold(ExactScalar::zero(), |acc, (x, m)| acc + m * num_traits::pow(x.clone(), k)))
        .collect()
}

/// Hankel determinants by cofactor expansion.
pub fn naive_det_sequence(s: &[ExactScalar]) -> Vec<ExactScalar> {
    let horizon = (s.len() - 1) / 2;
    (0..=horizon).map(|n| cofactor_det(&Matrix::from_fn(n + 1, n + 1, |i, j| s[i + j].clone()))).collect()
}

pub fn q(n: i64, d: i64) -> ExactScalar {
    BigRational::new(n.into(), d.into())
}

pub fn int(n: i64) -> ExactScalar {
    BigRational::from_integer(n.into())
}

/// Seeded measure with `n` atoms in `[-3, 3]`, denominators at most 4.
pub fn seeded_measure(n: usize, seed: u64) -> DiscreteMeasure {
    random_measure(&MeasureGenSpec::new(n, seed)).unwrap()
}

pub fn random_matrix(rng: &mut SplitMix64, n: usize) -> Matrix {
    Matrix::from_fn(n, n, |_, _| rng.small_rational(6, 4))
}

/// Random symmetric matrix; every other draw is a Gram matrix `B B^T` of a
/// possibly rank-deficient `B`, so PSD and non-PSD cases both occur.
pub fn random_symmetric(rng: &mut SplitMix64, n: usize) -> Matrix {
    if rng.below(2) == 0 {
        let a = random_matrix(rng, n);
        Matrix::from_fn(n, n, |i, j| if i <= j { a[(i, j)].clone() } else { a[(j, i)].clone() })
    } else {
        let rank = rng.range_usize(0, n);
        let b = Matrix::from_fn(n, rank, |_, _| rng.small_rational(4, 3));
        Matrix::from_fn(n, n, |i, j| (0..rank).fold(ExactScalar::zero(), |acc, k| acc + &b[(i, k)] * &b[(j, k)]))
    }
}
