//! Orthogonal polynomials of the bilinear form `<x^j, x^k> = s_{j+k}`.

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exact_algebra::{det_exact, ExactScalar, Matrix, RationalPoly};
use crate::hankel::MomentWindow;

/// The moment functional of a window, defined on pairs of polynomials whose
/// degrees sum to at most `m`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MomentForm {
    window: MomentWindow,
}

impl MomentForm {
    pub fn new(window: MomentWindow) -> Self {
        MomentForm { window }
    }

    pub fn window(&self) -> &MomentWindow {
        &self.window
    }

    /// Largest `n` with `<p, q>` defined for all `p, q` of degree `<= n`.
    pub fn max_degree(&self) -> usize {
        self.window.horizon()
    }

    pub fn inner_product(&self, p: &RationalPoly, q: &RationalPoly) -> Result<ExactScalar> {
        moment_inner_product(p, q, self)
    }
}

/// `sum_{j,k} p_j q_k s_{j+k}`.
pub fn moment_inner_product(p: &RationalPoly, q: &RationalPoly, form: &MomentForm) -> Result<ExactScalar> {
    let (Some(dp), Some(dq)) = (p.degree(), q.degree()) else {
        return Ok(ExactScalar::zero());
    };
    let s = form.window.moments();
    if dp + dq >= s.len() {
        return Err(Error::OutOfWindow { needed: dp + dq, len: s.len() });
    }
    let mut acc = ExactScalar::zero();
    for (j, a) in p.coeffs().iter().enumerate() {
        if a.is_zero() {
            continue;
        }
        for (k, b) in q.coeffs().iter().enumerate() {
            acc += a * b * &s[j + k];
        }
    }
    Ok(acc)
}

/// `p_n(x)`: the determinant whose first `n` rows are
/// `(s_i, s_{i+1}, ..., s_{i+n})` and whose last row is `(1, x, ..., x^n)`.
///
/// Expanding along the last row, the coefficient of `x^j` is
/// `(-1)^(n+j)` times the minor with that row and column `j` deleted. The
/// leading coefficient is therefore `D_{n-1}`.
pub fn orthogonal_poly(w: &MomentWindow, n: usize) -> Result<RationalPoly> {
    if n == 0 {
        return Ok(RationalPoly::constant(ExactScalar::one()));
    }
    w.get(2 * n - 1)?;
    let s = w.moments();
    let upper = Matrix::from_fn(n, n + 1, |i, j| s[i + j].clone());
    let coeffs = (0..=n)
        .map(|j| {
            let cols: Vec<usize> = (0..=n).filter(|&c| c != j).collect();
            let rows: Vec<usize> = (0..n).collect();
            let minor = det_exact(&upper.select(&rows, &cols)).expect("square minor");
            if (n + j).is_multiple_of(2) {
                minor
            } else {
                -minor
            }
        })
        .collect();
    Ok(RationalPoly::new(coeffs))
}

/// `p_n / D_{n-1}` with `D_{-1} = 1`; leading coefficient exactly 1.
pub fn monic_orthogonal_poly(w: &MomentWindow, n: usize) -> Result<RationalPoly> {
    let p = orthogonal_poly(w, n)?;
    if p.degree() != Some(n) {
        return Err(Error::DegenerateNormalization { n });
    }
    Ok(p.monic())
}
