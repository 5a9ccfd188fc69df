//! Recovery of the finitely supported measure behind a degenerate window,
//! moments of discrete measures, and the unique forward extension.
//!
//! Atoms are the real roots of the monic kernel polynomial
//! `P = p_{n0} / D_{n0-1}`. Rational roots stay exact; the rest are carried
//! as isolating intervals. Weights come from the Vandermonde system
//! `sum_j m_j x_j^k = s_k` (`k < n0`) when every atom is rational, and
//! otherwise from the equivalent Lagrange form `m_j = N(x_j) / P'(x_j)`,
//! which is evaluated exactly at rational atoms and by interval arithmetic at
//! the others.

use std::cmp::Ordering;

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::exact_algebra::scalar::ten_pow_neg;
use crate::exact_algebra::{
    refine_root, sturm_isolate, ExactScalar, IsolatingInterval, RationalInterval, RationalPoly,
};
use crate::hankel::{classify, Classification, MomentWindow};
use crate::orthopoly::monic_orthogonal_poly;

pub const DEFAULT_DIGITS: u32 = 50;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum AtomValue {
    Exact(ExactScalar),
    Algebraic(IsolatingInterval),
}

impl AtomValue {
    pub fn exact(&self) -> Option<&ExactScalar> {
        match self {
            AtomValue::Exact(x) => Some(x),
            AtomValue::Algebraic(iv) => iv.exact(),
        }
    }

    pub fn enclosure(&self) -> RationalInterval {
        match self {
            AtomValue::Exact(x) => RationalInterval::point(x.clone()),
            AtomValue::Algebraic(iv) => iv.enclosure(),
        }
    }

    /// Narrows an algebraic atom to width `10^-digits`. A root that lands
    /// exactly on a bisection point becomes `Exact`.
    pub fn refined(&self, digits: u32) -> AtomValue {
        match self {
            AtomValue::Exact(_) => self.clone(),
            AtomValue::Algebraic(iv) => {
                let r = refine_root(iv, digits);
                match r.exact() {
                    Some(x) => AtomValue::Exact(x.clone()),
                    None => AtomValue::Algebraic(r),
                }
            }
        }
    }

    fn strictly_before(&self, other: &AtomValue) -> bool {
        self.enclosure().hi() < other.enclosure().lo()
    }
}

/// A rational or a certified rational enclosure of a real number.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum CertifiedValue {
    Exact(ExactScalar),
    Enclosure(RationalInterval),
}

impl CertifiedValue {
    pub fn exact(&self) -> Option<&ExactScalar> {
        match self {
            CertifiedValue::Exact(x) => Some(x),
            CertifiedValue::Enclosure(_) => None,
        }
    }

    pub fn enclosure(&self) -> RationalInterval {
        match self {
            CertifiedValue::Exact(x) => RationalInterval::point(x.clone()),
            CertifiedValue::Enclosure(iv) => iv.clone(),
        }
    }

    pub fn contains(&self, x: &ExactScalar) -> bool {
        match self {
            CertifiedValue::Exact(v) => v == x,
            CertifiedValue::Enclosure(iv) => iv.contains(x),
        }
    }

    pub fn is_certified_positive(&self) -> bool {
        match self {
            CertifiedValue::Exact(v) => v.is_positive(),
            CertifiedValue::Enclosure(iv) => iv.is_positive(),
        }
    }

    fn from_interval(iv: RationalInterval) -> Self {
        if iv.is_point() {
            CertifiedValue::Exact(iv.lo().clone())
        } else {
            CertifiedValue::Enclosure(iv)
        }
    }
}

/// `sum_j m_j delta_{x_j}` with strictly increasing atoms and positive
/// weights.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DiscreteMeasure {
    atoms: Vec<AtomValue>,
    weights: Vec<CertifiedValue>,
}

impl DiscreteMeasure {
    pub fn new(atoms: Vec<AtomValue>, weights: Vec<CertifiedValue>) -> Result<Self> {
        if atoms.len() != weights.len() {
            return Err(Error::BadShape(format!("{} atoms but {} weights", atoms.len(), weights.len())));
        }
        if let Some(i) = weights.iter().position(|w| !w.is_certified_positive()) {
            return Err(Error::BadShape(format!("weight {i} is not certified positive")));
        }
        if let Some(i) = atoms.windows(2).position(|p| !p[0].strictly_before(&p[1])) {
            return Err(Error::BadShape(format!("atoms {i} and {} are not strictly increasing", i + 1)));
        }
        let atoms = atoms
            .into_iter()
            .map(|a| match a.exact() {
                Some(x) => AtomValue::Exact(x.clone()),
                None => a,
            })
            .collect();
        Ok(DiscreteMeasure { atoms, weights })
    }

    /// Measure from exact `(atom, weight)` pairs in any order.
    pub fn from_exact(mut pairs: Vec<(ExactScalar, ExactScalar)>) -> Result<Self> {
        pairs.sort_by(|a, b| a.0.cmp(&b.0));
        let (atoms, weights) = pairs.into_iter().map(|(x, m)| (AtomValue::Exact(x), CertifiedValue::Exact(m))).unzip();
        Self::new(atoms, weights)
    }

    pub fn zero() -> Self {
        DiscreteMeasure { atoms: Vec::new(), weights: Vec::new() }
    }

    pub fn atoms(&self) -> &[AtomValue] {
        &self.atoms
    }

    pub fn weights(&self) -> &[CertifiedValue] {
        &self.weights
    }

    pub fn len(&self) -> usize {
        self.atoms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.atoms.is_empty()
    }

    pub fn is_exact(&self) -> bool {
        self.atoms.iter().all(|a| a.exact().is_some()) && self.weights.iter().all(|w| w.exact().is_some())
    }

    /// `(atom, weight)` pairs when everything is rational.
    pub fn exact_pairs(&self) -> Option<Vec<(ExactScalar, ExactScalar)>> {
        self.atoms.iter().zip(&self.weights).map(|(a, w)| Some((a.exact()?.clone(), w.exact()?.clone()))).collect()
    }
}

/// `s_k = sum_j m_j x_j^k` for `k < count`.
///
/// Exact when the measure is; otherwise algebraic atoms are refined until
/// each enclosure is at most `10^-digits` wide. Weight enclosures are taken
/// as given, so their own width bounds how narrow the result can get.
pub fn measure_moments(mu: &DiscreteMeasure, count: usize, digits: u32) -> Vec<CertifiedValue> {
    if let Some(pairs) = mu.exact_pairs() {
        return exact_moments(&pairs, count).into_iter().map(CertifiedValue::Exact).collect();
    }
    let tol = ten_pow_neg(digits);
    let weights: Vec<RationalInterval> = mu.weights.iter().map(CertifiedValue::enclosure).collect();
    let mut atoms = mu.atoms.clone();
    let mut precision = digits + 10;
    let mut previous: Option<Vec<ExactScalar>> = None;
    loop {
        atoms = atoms.iter().map(|a| a.refined(precision)).collect();
        let encl: Vec<RationalInterval> = atoms.iter().map(AtomValue::enclosure).collect();
        let moments = interval_moments(&encl, &weights, count);
        let widths: Vec<ExactScalar> = moments.iter().map(RationalInterval::width).collect();
        let narrow = widths.iter().all(|w| *w <= tol);
        // Once narrower atoms stop halving every width, the weights dominate.
        let stalled = previous.as_ref().is_some_and(|prev| widths.iter().zip(prev).all(|(w, p)| w + w > *p));
        if narrow || stalled || precision > 4 * digits + 400 {
            return moments.into_iter().map(CertifiedValue::from_interval).collect();
        }
        previous = Some(widths);
        precision += digits.max(10);
    }
}

pub(crate) fn exact_moments(pairs: &[(ExactScalar, ExactScalar)], count: usize) -> Vec<ExactScalar> {
    let mut powers: Vec<ExactScalar> = pairs.iter().map(|(_, m)| m.clone()).collect();
    let mut out = Vec::with_capacity(count);
    for _ in 0..count {
        out.push(powers.iter().fold(ExactScalar::zero(), |acc, p| acc + p));
        for (p, (x, _)) in powers.iter_mut().zip(pairs) {
            *p *= x;
        }
    }
    out
}

fn interval_moments(atoms: &[RationalInterval], weights: &[RationalInterval], count: usize) -> Vec<RationalInterval> {
    let mut powers: Vec<RationalInterval> = weights.to_vec();
    let mut out = Vec::with_capacity(count);
    for _ in 0..count {
        out.push(powers.iter().fold(RationalInterval::point(ExactScalar::zero()), |acc, p| &acc + p));
        for (p, x) in powers.iter_mut().zip(atoms) {
            *p = &*p * x;
        }
    }
    out
}

fn require_consistent(w: &MomentWindow) -> Result<usize> {
    match classify(w) {
        Classification::Degenerate { n0, window_consistent: true } => Ok(n0),
        other => {
            Err(Error::PreconditionViolated(format!("window must be degenerate with a consistent tail, got {other:?}")))
        }
    }
}

/// Coefficients `a_0..a_{n0}` (with `a_{n0} = 1`) of the recurrence
/// `sum_j a_j s_{k+j} = 0`.
fn kernel_poly(w: &MomentWindow, n0: usize) -> Result<RationalPoly> {
    monic_orthogonal_poly(w, n0)
}

fn next_term(kernel: &RationalPoly, tail: &[ExactScalar]) -> ExactScalar {
    let n0 = kernel.degree().unwrap();
    debug_assert_eq!(tail.len(), n0);
    -tail.iter().zip(kernel.coeffs()).fold(ExactScalar::zero(), |acc, (s, a)| acc + s * a)
}

/// Whether `s_{2 n0}, ..., s_m` follow the recurrence fixed by
/// `s_0, ..., s_{2 n0 - 1}`.
pub(crate) fn tail_matches_extension(w: &MomentWindow, n0: usize) -> bool {
    let s = w.moments();
    if n0 == 0 {
        return s.iter().all(Zero::is_zero);
    }
    let Ok(kernel) = kernel_poly(w, n0) else {
        return false;
    };
    (2 * n0..s.len()).all(|t| next_term(&kernel, &s[t - n0..t]) == s[t])
}

/// The next `count` moments `s_{m+1}, ..., s_{m+count}` of the unique
/// continuation, from the exact linear recurrence of the kernel polynomial.
pub fn extend(w: &MomentWindow, count: usize) -> Result<Vec<ExactScalar>> {
    let n0 = require_consistent(w)?;
    if n0 == 0 {
        return Ok(vec![ExactScalar::zero(); count]);
    }
    let kernel = kernel_poly(w, n0)?;
    let mut s = w.moments().to_vec();
    for _ in 0..count {
        let t = s.len();
        let v = next_term(&kernel, &s[t - n0..t]);
        s.push(v);
    }
    Ok(s.split_off(w.len()))
}

/// Solves `sum_j m_j x_j^k = rhs_k` for `k < n` by Gaussian elimination.
/// Returns `None` if two nodes coincide.
pub fn solve_vandermonde(nodes: &[ExactScalar], rhs: &[ExactScalar]) -> Option<Vec<ExactScalar>> {
    let n = nodes.len();
    assert_eq!(rhs.len(), n);
    // Augmented rows: row k is (x_0^k, ..., x_{n-1}^k | rhs_k).
    let mut a: Vec<Vec<ExactScalar>> = Vec::with_capacity(n);
    let mut powers = vec![ExactScalar::one(); n];
    for r in rhs {
        let mut row = powers.clone();
        row.push(r.clone());
        a.push(row);
        for (p, x) in powers.iter_mut().zip(nodes) {
            *p *= x;
        }
    }
    for col in 0..n {
        let pivot = (col..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(col, pivot);
        let inv = a[col][col].recip();
        for v in &mut a[col][col..] {
            *v *= &inv;
        }
        let pivot_row = a[col].clone();
        for (r, row) in a.iter_mut().enumerate() {
            if r != col && !row[col].is_zero() {
                let f = row[col].clone();
                for (v, p) in row[col..].iter_mut().zip(&pivot_row[col..]) {
                    *v -= &f * p;
                }
            }
        }
    }
    Some(a.into_iter().map(|mut row| row.pop().unwrap()).collect())
}

/// Numerator `N(t) = sum_r t^r sum_{k <= n0-1-r} s_k a_{k+r+1}` of the Lagrange
/// weight formula `m_j = N(x_j) / P'(x_j)`.
fn weight_numerator(kernel: &RationalPoly, s: &[ExactScalar]) -> RationalPoly {
    let n0 = kernel.degree().unwrap();
    RationalPoly::new(
        (0..n0)
            .map(|r| (0..n0 - r).fold(ExactScalar::zero(), |acc, k| acc + &s[k] * kernel.coeff(k + r + 1)))
            .collect(),
    )
}

/// The unique `n0`-atom measure whose moments are the window.
///
/// Requires `classify(w)` to be `Degenerate { n0, window_consistent: true }`.
/// Irrational atoms and their weights are certified to `10^-digits`, and
/// every window moment is checked to lie in the enclosure of the
/// reconstructed moment.
pub fn reconstruct(w: &MomentWindow, digits: u32) -> Result<DiscreteMeasure> {
    let n0 = require_consistent(w)?;
    if n0 == 0 {
        return Ok(DiscreteMeasure::zero());
    }
    let s = w.moments();
    let kernel = kernel_poly(w, n0)?;
    let roots = sturm_isolate(&kernel).map_err(|e| Error::InconsistentWindow(format!("kernel {kernel}: {e}")))?;
    if roots.len() != n0 {
        return Err(Error::InconsistentWindow(format!(
            "kernel {kernel} has {} real roots, expected {n0}",
            roots.len()
        )));
    }

    let exact_atoms: Option<Vec<ExactScalar>> = roots.iter().map(|r| r.exact().cloned()).collect();
    if let Some(nodes) = exact_atoms {
        let weights = solve_vandermonde(&nodes, &s[..n0])
            .ok_or_else(|| Error::InconsistentWindow("singular Vandermonde system".into()))?;
        let pairs: Vec<_> = nodes.into_iter().zip(weights).collect();
        if let Some((x, m)) = pairs.iter().find(|(_, m)| !m.is_positive()) {
            return Err(Error::InconsistentWindow(format!("weight {m} at atom {x} is not positive")));
        }
        if exact_moments(&pairs, s.len()) != s {
            return Err(Error::InconsistentWindow("reconstructed moments differ from the window".into()));
        }
        return DiscreteMeasure::from_exact(pairs);
    }

    let numer = weight_numerator(&kernel, s);
    let deriv = kernel.derivative();
    let tol = ten_pow_neg(digits);
    let mut precision = digits + 10;
    let limit = 8 * digits + 800;
    loop {
        let atoms: Vec<AtomValue> = roots
            .iter()
            .map(|r| match r.exact() {
                Some(x) => AtomValue::Exact(x.clone()),
                None => AtomValue::Algebraic(r.clone()).refined(precision),
            })
            .collect();
        match certify(&atoms, &numer, &deriv, s, &tol)? {
            Some(weights) => return DiscreteMeasure::new(atoms, weights),
            None if precision >= limit => {
                return Err(Error::InconsistentWindow(format!(
                    "could not certify weights to 1e-{digits} at precision 1e-{precision}"
                )))
            }
            None => precision = (precision * 2).min(limit),
        }
    }
}

/// Weights for the given atoms, or `None` when the current precision is not
/// enough to certify positivity and the `tol` residual bound.
fn certify(
    atoms: &[AtomValue],
    numer: &RationalPoly,
    deriv: &RationalPoly,
    s: &[ExactScalar],
    tol: &ExactScalar,
) -> Result<Option<Vec<CertifiedValue>>> {
    let mut weights = Vec::with_capacity(atoms.len());
    for atom in atoms {
        let w = match atom.exact() {
            Some(x) => CertifiedValue::Exact(numer.eval(x) / deriv.eval(x)),
            None => {
                let x = atom.enclosure();
                let Some(w) = x.eval_poly(numer).div(&x.eval_poly(deriv)) else {
                    return Ok(None);
                };
                if w.width() > *tol {
                    return Ok(None);
                }
                CertifiedValue::Enclosure(w)
            }
        };
        match w.enclosure() {
            iv if iv.is_positive() => weights.push(w),
            iv if iv.hi().is_positive() => return Ok(None),
            iv => {
                return Err(Error::InconsistentWindow(format!(
                    "weight enclosure [{}, {}] is not positive",
                    iv.lo(),
                    iv.hi()
                )))
            }
        }
    }
    let encl: Vec<RationalInterval> = atoms.iter().map(AtomValue::enclosure).collect();
    let wenc: Vec<RationalInterval> = weights.iter().map(CertifiedValue::enclosure).collect();
    for (k, (m, target)) in interval_moments(&encl, &wenc, s.len()).iter().zip(s).enumerate() {
        if !m.contains(target) {
            return Err(Error::InconsistentWindow(format!("moment {k} enclosure excludes s_{k} = {target}")));
        }
        if m.width() > *tol {
            return Ok(None);
        }
    }
    Ok(Some(weights))
}

impl PartialOrd for AtomValue {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        if self == other {
            Some(Ordering::Equal)
        } else if self.strictly_before(other) {
            Some(Ordering::Less)
        } else if other.strictly_before(self) {
            Some(Ordering::Greater)
        } else {
            None
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_algebra::scalar::{int, ratio};

    fn exact(v: &CertifiedValue) -> ExactScalar {
        v.exact().cloned().expect("exact value")
    }

    #[test]
    fn moments_of_exact_measures() {
        let dirac = DiscreteMeasure::from_exact(vec![(int(0), int(1))]).unwrap();
        let m: Vec<_> = measure_moments(&dirac, 4, 10).iter().map(exact).collect();
        assert_eq!(m, vec![int(1), int(0), int(0), int(0)]);

        let mu = DiscreteMeasure::from_exact(vec![(int(-2), ratio(1, 4)), (int(2), ratio(3, 4))]).unwrap();
        let m: Vec<_> = measure_moments(&mu, 5, 10).iter().map(exact).collect();
        assert_eq!(m, vec![int(1), int(1), int(4), int(4), int(16)]);

        let mu = DiscreteMeasure::from_exact(vec![(ratio(-1, 2), ratio(1, 4)), (ratio(1, 2), ratio(3, 4))]).unwrap();
        let m: Vec<_> = measure_moments(&mu, 5, 10).iter().map(exact).collect();
        assert_eq!(m, vec![int(1), ratio(1, 4), ratio(1, 4), ratio(1, 16), ratio(1, 16)]);
    }

    #[test]
    fn reconstruct_examples() {
        let mu = reconstruct(&MomentWindow::from_ints(&[1, 1, 4, 4, 16]), DEFAULT_DIGITS).unwrap();
        assert_eq!(mu.exact_pairs().unwrap(), vec![(int(-2), ratio(1, 4)), (int(2), ratio(3, 4))]);
        let mu = reconstruct(&MomentWindow::from_ints(&[1, 0, 0]), DEFAULT_DIGITS).unwrap();
        assert_eq!(mu.exact_pairs().unwrap(), vec![(int(0), int(1))]);
        let mu = reconstruct(&MomentWindow::from_ints(&[1, 1, 1]), DEFAULT_DIGITS).unwrap();
        assert_eq!(mu.exact_pairs().unwrap(), vec![(int(1), int(1))]);
        let mu = reconstruct(&MomentWindow::from_ints(&[0, 0, 0]), DEFAULT_DIGITS).unwrap();
        assert!(mu.is_empty());
    }

    #[test]
    fn reconstruct_rejects_non_degenerate() {
        for w in [&[1, 1, 1, 1, 0, 0, 0][..], &[1, 0, 1], &[1, 1, 1, 1, 0]] {
            assert!(matches!(reconstruct(&MomentWindow::from_ints(w), 10), Err(Error::PreconditionViolated(_))));
        }
    }

    #[test]
    fn irrational_atoms_are_certified() {
        // a = 2: s_{2n} = s_{2n+1} = 2^n, atoms -sqrt2, sqrt2,
        // weights (sqrt2 -+ 1) / (2 sqrt2).
        let w = MomentWindow::from_ints(&[1, 1, 2, 2, 4, 4, 8]);
        let mu = reconstruct(&w, 30).unwrap();
        assert_eq!(mu.len(), 2);
        let tol = ten_pow_neg(30);
        for (a, wt) in mu.atoms().iter().zip(mu.weights()) {
            assert!(a.exact().is_none());
            let e = wt.enclosure();
            assert!(e.width() <= tol && e.is_positive());
        }
        // m_+ = (2 + sqrt2) / 4 lies in (0.8535, 0.8536).
        let hi_weight = mu.weights()[1].enclosure();
        assert!(hi_weight.lo() > &ratio(8535, 10000) && hi_weight.hi() < &ratio(8536, 10000));
        for (m, s) in measure_moments(&mu, w.len(), 30).iter().zip(w.moments()) {
            assert!(m.contains(s));
            assert!(m.enclosure().width() <= tol);
        }
    }

    #[test]
    fn mixed_exact_and_algebraic_atoms() {
        // Atoms 0 and +-sqrt3 with weights 1/2, 1/4, 1/4 give s = 1, 0, 3/2, 0, 9/2, 0, 27/2.
        let w = MomentWindow::new([int(1), int(0), ratio(3, 2), int(0), ratio(9, 2), int(0), ratio(27, 2)].to_vec())
            .unwrap();
        let mu = reconstruct(&w, 20).unwrap();
        assert_eq!(mu.len(), 3);
        assert_eq!(mu.atoms()[1], AtomValue::Exact(int(0)));
        assert_eq!(mu.weights()[1], CertifiedValue::Exact(ratio(1, 2)));
        assert!(mu.weights()[0].contains(&ratio(1, 4)));
        assert!(mu.weights()[2].contains(&ratio(1, 4)));
    }

    #[test]
    fn extension_examples() {
        assert_eq!(extend(&MomentWindow::from_ints(&[1, 3, 9]), 2).unwrap(), vec![int(27), int(81)]);
        assert_eq!(extend(&MomentWindow::from_ints(&[1, 1, 4, 4, 16]), 2).unwrap(), vec![int(16), int(64)]);
        assert_eq!(extend(&MomentWindow::from_ints(&[1, 0, 0]), 3).unwrap(), vec![int(0); 3]);
        assert_eq!(extend(&MomentWindow::from_ints(&[0, 0, 0]), 2).unwrap(), vec![int(0); 2]);
        assert!(matches!(extend(&MomentWindow::from_ints(&[1, 0, 1]), 2), Err(Error::PreconditionViolated(_))));
    }

    #[test]
    fn vandermonde_solver() {
        let nodes = [int(-2), int(2)];
        assert_eq!(solve_vandermonde(&nodes, &[int(1), int(1)]).unwrap(), vec![ratio(1, 4), ratio(3, 4)]);
        assert!(solve_vandermonde(&[int(1), int(1)], &[int(1), int(1)]).is_none());
    }

    #[test]
    fn measure_validation() {
        assert!(DiscreteMeasure::from_exact(vec![(int(1), int(1)), (int(1), int(2))]).is_err());
        assert!(DiscreteMeasure::from_exact(vec![(int(1), int(0))]).is_err());
        assert!(DiscreteMeasure::new(vec![AtomValue::Exact(int(0))], vec![]).is_err());
    }
}
