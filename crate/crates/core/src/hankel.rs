//! Hankel matrices of a finite moment window, their determinants, an exact
//! positive-semidefiniteness test, and the sign-pattern classification.

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::exact_algebra::{char_poly, det_exact, ExactScalar, Matrix};
use crate::recovery;

/// A finite stretch `s_0, ..., s_m` of a real sequence.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MomentWindow {
    moments: Vec<ExactScalar>,
}

impl MomentWindow {
    pub fn new(moments: Vec<ExactScalar>) -> Result<Self> {
        if moments.is_empty() {
            return Err(Error::BadShape("moment window must hold at least s_0".into()));
        }
        Ok(MomentWindow { moments })
    }

    pub fn from_ints(values: &[i64]) -> Self {
        Self::new(values.iter().map(|&v| ExactScalar::from_integer(v.into())).collect()).expect("empty window")
    }

    pub fn moments(&self) -> &[ExactScalar] {
        &self.moments
    }

    pub fn into_moments(self) -> Vec<ExactScalar> {
        self.moments
    }

    pub fn len(&self) -> usize {
        self.moments.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Index of the last moment.
    pub fn last_index(&self) -> usize {
        self.moments.len() - 1
    }

    /// Largest `n` with `H_n` inside the window, `floor(m / 2)`.
    pub fn horizon(&self) -> usize {
        self.last_index() / 2
    }

    pub fn get(&self, k: usize) -> Result<&ExactScalar> {
        self.moments.get(k).ok_or(Error::OutOfWindow { needed: k, len: self.moments.len() })
    }

    /// Copy of the window with `extra` appended.
    pub fn extended(&self, extra: impl IntoIterator<Item = ExactScalar>) -> Self {
        let mut moments = self.moments.clone();
        moments.extend(extra);
        MomentWindow { moments }
    }
}

/// `H_n = (s_{i+j})` for `0 <= i, j <= n`.
pub fn hankel_matrix(w: &MomentWindow, n: usize) -> Result<Matrix> {
    w.get(2 * n)?;
    Ok(Matrix::from_fn(n + 1, n + 1, |i, j| w.moments[i + j].clone()))
}

/// `[D_0, ..., D_N]`, each computed independently.
pub fn det_sequence(w: &MomentWindow) -> Vec<ExactScalar> {
    (0..=w.horizon())
        .map(|n| det_exact(&hankel_matrix(w, n).expect("n within horizon")).expect("Hankel matrices are square"))
        .collect()
}

/// Exact PSD test for a symmetric matrix. With
/// `det(xI - M) = x^n - c_1 x^(n-1) + c_2 x^(n-2) - ...`, the eigenvalues are
/// real and `M` is PSD iff every `c_k >= 0`.
pub fn is_psd(m: &Matrix) -> Result<bool> {
    if !m.is_symmetric() {
        return Err(Error::NotSymmetric);
    }
    let n = m.rows();
    let cp = char_poly(m)?;
    Ok((1..=n).all(|k| {
        let c = cp.coeff(n - k);
        if k % 2 == 0 {
            !c.is_negative()
        } else {
            !c.is_positive()
        }
    }))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum InvalidReason {
    NegativeDeterminant,
    ZeroThenPositive,
    ZeroS0NonzeroTail,
}

impl InvalidReason {
    pub fn as_str(self) -> &'static str {
        match self {
            InvalidReason::NegativeDeterminant => "negative_determinant",
            InvalidReason::ZeroThenPositive => "zero_then_positive",
            InvalidReason::ZeroS0NonzeroTail => "zero_s0_nonzero_tail",
        }
    }
}

/// Sign pattern of `D_0, ..., D_N` for a finite window.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Classification {
    /// Every `D_n` in the window is positive. Nothing is claimed past the
    /// horizon.
    PositiveWindow { horizon: usize },
    /// `D_k > 0` for `k < n0` and `D_k = 0` for `n0 <= k <= N`.
    /// `window_consistent` is set when every moment past index `2 n0 - 1`
    /// agrees with the unique extension of the first `2 n0` moments.
    Degenerate { n0: usize, window_consistent: bool },
    /// The pattern is violated at determinant index `first_violation`
    /// (index 0 for [`InvalidReason::ZeroS0NonzeroTail`]).
    Invalid { first_violation: usize, reason: InvalidReason },
}

impl Classification {
    /// `Some(n0)` for a degenerate window whose tail agrees with the
    /// extension.
    pub fn consistent_degree(&self) -> Option<usize> {
        match *self {
            Classification::Degenerate { n0, window_consistent: true } => Some(n0),
            _ => None,
        }
    }
}

pub fn classify(w: &MomentWindow) -> Classification {
    classify_with_determinants(w).0
}

/// Same as [`classify`], also returning `det_sequence(w)`.
pub fn classify_with_determinants(w: &MomentWindow) -> (Classification, Vec<ExactScalar>) {
    let dets = det_sequence(w);
    if w.moments[0].is_zero() {
        let class = if w.moments.iter().all(Zero::is_zero) {
            Classification::Degenerate { n0: 0, window_consistent: true }
        } else {
            Classification::Invalid { first_violation: 0, reason: InvalidReason::ZeroS0NonzeroTail }
        };
        return (class, dets);
    }

    let mut first_zero = None;
    for (k, d) in dets.iter().enumerate() {
        if d.is_negative() {
            let class = Classification::Invalid { first_violation: k, reason: InvalidReason::NegativeDeterminant };
            return (class, dets);
        }
        match (first_zero, d.is_zero()) {
            (None, true) => first_zero = Some(k),
            (Some(_), false) => {
                let class = Classification::Invalid { first_violation: k, reason: InvalidReason::ZeroThenPositive };
                return (class, dets);
            }
            _ => {}
        }
    }
    let class = match first_zero {
        None => Classification::PositiveWindow { horizon: w.horizon() },
        Some(n0) => Classification::Degenerate { n0, window_consistent: recovery::tail_matches_extension(w, n0) },
    };
    (class, dets)
}
