//! Real-root isolation with Sturm chains, and bisection refinement.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::interval::RationalInterval;
use super::poly::RationalPoly;
use super::scalar::{sign, ten_pow_neg, ExactScalar};
use crate::error::{Error, Result};

/// A closed interval `[lo, hi]` holding exactly one real root of `poly`,
/// which is simple. `lo == hi` marks a root known exactly.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct IsolatingInterval {
    lo: ExactScalar,
    hi: ExactScalar,
    poly: RationalPoly,
}

impl IsolatingInterval {
    /// Checks that `poly` is square-free and has exactly one root in
    /// `[lo, hi]`.
    pub fn new(lo: ExactScalar, hi: ExactScalar, poly: RationalPoly) -> Result<Self> {
        if poly.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        if lo > hi {
            return Err(Error::BadShape(format!("interval endpoints out of order: [{lo}, {hi}]")));
        }
        let g = poly.gcd(&poly.derivative());
        if g.degree() != Some(0) {
            return Err(Error::NotSquareFree(g.degree().unwrap_or(0)));
        }
        let chain = sturm_chain(&poly);
        let count = count_roots_closed(&chain, &lo, &hi);
        if count != 1 {
            return Err(Error::BadShape(format!("[{lo}, {hi}] holds {count} roots of {poly}, expected 1")));
        }
        Ok(IsolatingInterval { lo, hi, poly })
    }

    pub(crate) fn new_unchecked(lo: ExactScalar, hi: ExactScalar, poly: RationalPoly) -> Self {
        debug_assert!(lo <= hi);
        IsolatingInterval { lo, hi, poly }
    }

    pub fn lo(&self) -> &ExactScalar {
        &self.lo
    }

    pub fn hi(&self) -> &ExactScalar {
        &self.hi
    }

    pub fn poly(&self) -> &RationalPoly {
        &self.poly
    }

    pub fn width(&self) -> ExactScalar {
        &self.hi - &self.lo
    }

    /// The root itself when it is known exactly.
    pub fn exact(&self) -> Option<&ExactScalar> {
        (self.lo == self.hi).then_some(&self.lo)
    }

    pub fn enclosure(&self) -> RationalInterval {
        RationalInterval::new(self.lo.clone(), self.hi.clone())
    }
}

/// Signed remainder sequence `p, p', -rem(p, p'), ...` ending at the last
/// nonzero term.
pub fn sturm_chain(p: &RationalPoly) -> Vec<RationalPoly> {
    let mut chain = vec![p.clone()];
    let mut next = p.derivative();
    while !next.is_zero() {
        let r = -&chain.last().unwrap().rem(&next);
        chain.push(next);
        next = r;
    }
    chain
}

/// Sign changes in the chain evaluated at `x`, zeros skipped.
pub fn sign_variations(chain: &[RationalPoly], x: &ExactScalar) -> usize {
    let mut last = 0i8;
    let mut changes = 0;
    for p in chain {
        let s = sign(&p.eval(x));
        if s != 0 {
            if last != 0 && s != last {
                changes += 1;
            }
            last = s;
        }
    }
    changes
}

/// Sign changes of the chain at `-inf` (`negative`) or `+inf`.
pub fn sign_variations_at_infinity(chain: &[RationalPoly], negative: bool) -> usize {
    let signs = chain.iter().map(|p| {
        let lc = sign(p.leading().unwrap());
        let odd = p.degree().unwrap() % 2 == 1;
        if negative && odd {
            -lc
        } else {
            lc
        }
    });
    signs.collect::<Vec<_>>().windows(2).filter(|w| w[0] != w[1]).count()
}

/// Number of distinct roots in `[lo, hi]` for a square-free polynomial.
/// `V(a) - V(b)` counts roots in `(a, b]` even when `a` or `b` is a root.
fn count_roots_closed(chain: &[RationalPoly], lo: &ExactScalar, hi: &ExactScalar) -> usize {
    let at_lo = chain[0].eval(lo).is_zero() as usize;
    if lo == hi {
        return at_lo;
    }
    sign_variations(chain, lo) - sign_variations(chain, hi) + at_lo
}

/// `1 + max |c_j / c_deg|`: every real root lies strictly inside `(-B, B)`.
pub fn cauchy_bound(p: &RationalPoly) -> ExactScalar {
    let lc = p.leading().expect("bound of zero polynomial").abs();
    let max = p.coeffs()[..p.coeffs().len() - 1].iter().map(|c| c.abs() / &lc).max().unwrap_or_else(ExactScalar::zero);
    max + ExactScalar::one()
}

fn half() -> ExactScalar {
    BigRational::new(BigInt::one(), BigInt::from(2))
}

/// Isolates every real root of a square-free polynomial. Intervals come back
/// sorted and pairwise disjoint; rational roots are found exactly and
/// returned as `[r, r]`.
///
/// A rational root of the primitive integer form `a_n x^n + ... + a_0` has a
/// denominator dividing `a_n`, so it is `k / a_n` for an integer `k`. Each
/// isolating interval is narrowed below width `1 / a_n` and the single
/// remaining candidate is tested exactly.
pub fn sturm_isolate(p: &RationalPoly) -> Result<Vec<IsolatingInterval>> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if p.degree() == Some(0) {
        return Ok(Vec::new());
    }
    let g = p.gcd(&p.derivative());
    if g.degree() != Some(0) {
        return Err(Error::NotSquareFree(g.degree().unwrap_or(0)));
    }
    let chain = sturm_chain(p);
    let leading = p.primitive_integer_form().pop().unwrap();
    let grid = BigRational::from_integer(leading);

    let bound = cauchy_bound(p);
    let mut out = Vec::new();
    // Roots counted in (lo, hi]; lo and hi are never roots.
    let neg_bound = -bound.clone();
    let (v_neg, v_pos) = (sign_variations(&chain, &neg_bound), sign_variations(&chain, &bound));
    let mut stack = vec![(neg_bound, bound, v_neg, v_pos)];
    while let Some((lo, hi, v_lo, v_hi)) = stack.pop() {
        let count = v_lo - v_hi;
        if count == 0 {
            continue;
        }
        if count == 1 {
            out.push(finish_isolation(p, lo, hi, &grid));
            continue;
        }
        let mid = (&lo + &hi) * half();
        if !p.eval(&mid).is_zero() {
            let v_mid = sign_variations(&chain, &mid);
            stack.push((lo, mid.clone(), v_lo, v_mid));
            stack.push((mid, hi, v_mid, v_hi));
            continue;
        }
        // Split around an exact root found at the midpoint.
        let mut delta = (&hi - &lo) / BigRational::from_integer(4.into());
        let (a, b) = loop {
            let a = &mid - &delta;
            let b = &mid + &delta;
            if !p.eval(&a).is_zero()
                && !p.eval(&b).is_zero()
                && sign_variations(&chain, &a) - sign_variations(&chain, &b) == 1
            {
                break (a, b);
            }
            delta *= half();
        };
        out.push(IsolatingInterval::new_unchecked(mid.clone(), mid, p.clone()));
        let (v_a, v_b) = (sign_variations(&chain, &a), sign_variations(&chain, &b));
        stack.push((lo, a, v_lo, v_a));
        stack.push((b, hi, v_b, v_hi));
    }
    out.sort_by(|x, y| x.lo.cmp(&y.lo));
    // Neighbours from adjacent branches can share a (non-root) endpoint.
    for i in 1..out.len() {
        if out[i - 1].hi == out[i].lo {
            let shared = out[i].lo.clone();
            out[i - 1] = shrink_below(&out[i - 1], &shared);
        }
    }
    Ok(out)
}

/// Bisects `iv` until its upper end is strictly below `bound`, where `bound`
/// is not a root and lies above the isolated root.
fn shrink_below(iv: &IsolatingInterval, bound: &ExactScalar) -> IsolatingInterval {
    let p = &iv.poly;
    let s_lo = sign(&p.eval(&iv.lo));
    let (mut lo, mut hi) = (iv.lo.clone(), iv.hi.clone());
    while &hi >= bound {
        let mid = (&lo + &hi) * half();
        let s = sign(&p.eval(&mid));
        if s == 0 {
            return IsolatingInterval::new_unchecked(mid.clone(), mid, p.clone());
        }
        if s == s_lo {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    IsolatingInterval::new_unchecked(lo, hi, p.clone())
}

/// `[lo, hi]` holds exactly one simple root and neither endpoint is a root.
fn finish_isolation(
    p: &RationalPoly,
    mut lo: ExactScalar,
    mut hi: ExactScalar,
    grid: &ExactScalar,
) -> IsolatingInterval {
    let s_lo = sign(&p.eval(&lo));
    while (&hi - &lo) * grid >= ExactScalar::one() {
        let mid = (&lo + &hi) * half();
        let s = sign(&p.eval(&mid));
        if s == 0 {
            return IsolatingInterval::new_unchecked(mid.clone(), mid, p.clone());
        }
        if s == s_lo {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let candidate = (&hi * grid).floor() / grid;
    if candidate > lo && p.eval(&candidate).is_zero() {
        return IsolatingInterval::new_unchecked(candidate.clone(), candidate, p.clone());
    }
    IsolatingInterval::new_unchecked(lo, hi, p.clone())
}

/// Bisects until the width is at most `10^-digits`. The result is nested in
/// `iv` and isolates the same root; exact roots come back unchanged.
pub fn refine_root(iv: &IsolatingInterval, digits: u32) -> IsolatingInterval {
    if iv.lo == iv.hi {
        return iv.clone();
    }
    let p = &iv.poly;
    let tol = ten_pow_neg(digits);
    let (mut lo, mut hi) = (iv.lo.clone(), iv.hi.clone());
    let s_lo = sign(&p.eval(&lo));
    if s_lo == 0 {
        return IsolatingInterval::new_unchecked(lo.clone(), lo, p.clone());
    }
    if p.eval(&hi).is_zero() {
        return IsolatingInterval::new_unchecked(hi.clone(), hi, p.clone());
    }
    while &hi - &lo > tol {
        let mid = (&lo + &hi) * half();
        let s = sign(&p.eval(&mid));
        if s == 0 {
            return IsolatingInterval::new_unchecked(mid.clone(), mid, p.clone());
        }
        if s == s_lo {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    IsolatingInterval::new_unchecked(lo, hi, p.clone())
}
