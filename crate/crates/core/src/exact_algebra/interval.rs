//! Closed intervals with rational endpoints, used as certified enclosures of
//! irrational quantities.

use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};

use super::poly::RationalPoly;
use super::scalar::ExactScalar;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RationalInterval {
    lo: ExactScalar,
    hi: ExactScalar,
}

impl RationalInterval {
    /// Panics if `lo > hi`.
    pub fn new(lo: ExactScalar, hi: ExactScalar) -> Self {
        assert!(lo <= hi, "empty interval [{lo}, {hi}]");
        RationalInterval { lo, hi }
    }

    pub fn point(x: ExactScalar) -> Self {
        RationalInterval { lo: x.clone(), hi: x }
    }

    pub fn lo(&self) -> &ExactScalar {
        &self.lo
    }

    pub fn hi(&self) -> &ExactScalar {
        &self.hi
    }

    pub fn width(&self) -> ExactScalar {
        &self.hi - &self.lo
    }

    pub fn midpoint(&self) -> ExactScalar {
        (&self.lo + &self.hi) / ExactScalar::from_integer(2.into())
    }

    pub fn is_point(&self) -> bool {
        self.lo == self.hi
    }

    pub fn contains(&self, x: &ExactScalar) -> bool {
        &self.lo <= x && x <= &self.hi
    }

    pub fn contains_zero(&self) -> bool {
        !self.lo.is_positive() && !self.hi.is_negative()
    }

    pub fn is_positive(&self) -> bool {
        self.lo.is_positive()
    }

    pub fn recip(&self) -> Option<Self> {
        if self.contains_zero() {
            return None;
        }
        Some(RationalInterval { lo: self.hi.recip(), hi: self.lo.recip() })
    }

    pub fn div(&self, rhs: &Self) -> Option<Self> {
        rhs.recip().map(|r| self * &r)
    }

    pub fn pow(&self, k: usize) -> Self {
        (0..k).fold(Self::point(ExactScalar::one()), |acc, _| &acc * self)
    }

    /// Enclosure of `p` over this interval by interval Horner evaluation.
    pub fn eval_poly(&self, p: &RationalPoly) -> Self {
        p.coeffs()
            .iter()
            .rev()
            .fold(Self::point(ExactScalar::zero()), |acc, c| &(&acc * self) + &Self::point(c.clone()))
    }
}

impl Add for &RationalInterval {
    type Output = RationalInterval;

    fn add(self, rhs: &RationalInterval) -> RationalInterval {
        RationalInterval { lo: &self.lo + &rhs.lo, hi: &self.hi + &rhs.hi }
    }
}

impl Sub for &RationalInterval {
    type Output = RationalInterval;

    fn sub(self, rhs: &RationalInterval) -> RationalInterval {
        RationalInterval { lo: &self.lo - &rhs.hi, hi: &self.hi - &rhs.lo }
    }
}

impl Mul for &RationalInterval {
    type Output = RationalInterval;

    fn mul(self, rhs: &RationalInterval) -> RationalInterval {
        if self.is_point() && rhs.is_point() {
            return RationalInterval::point(&self.lo * &rhs.lo);
        }
        let products = [&self.lo * &rhs.lo, &self.lo * &rhs.hi, &self.hi * &rhs.lo, &self.hi * &rhs.hi];
        let lo = products.iter().min().unwrap().clone();
        let hi = products.iter().max().unwrap().clone();
        RationalInterval { lo, hi }
    }
}

impl Neg for &RationalInterval {
    type Output = RationalInterval;

    fn neg(self) -> RationalInterval {
        RationalInterval { lo: -&self.hi, hi: -&self.lo }
    }
}
