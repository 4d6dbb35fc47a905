//! Numbers a + b√d in a fixed real quadratic extension of ℚ.

use super::{rat, ExactError, Rat};
use num_traits::Zero;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

/// Element a + b√d of ℚ(√d) for a fixed square-free d > 0.
///
/// A value with b = 0 is treated as rational regardless of its radicand, so
/// plain rationals mix freely with any extension. Arithmetic between two
/// genuinely irrational values of different radicands is refused.
#[derive(Debug, Clone, Eq)]
pub struct QuadNum {
    pub a: Rat,
    pub b: Rat,
    pub d: u64,
}

impl PartialEq for QuadNum {
    fn eq(&self, other: &Self) -> bool {
        self.a == other.a
            && self.b == other.b
            && (self.b.is_zero() || self.d == other.d)
    }
}

impl QuadNum {
    pub fn new(a: Rat, b: Rat, d: u64) -> Self {
        QuadNum { a, b, d }
    }

    pub fn from_rat(a: Rat) -> Self {
        QuadNum { a, b: Rat::zero(), d: 0 }
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_rat(rat(n))
    }

    /// b√d with rational b.
    pub fn radical(b: Rat, d: u64) -> Self {
        QuadNum { a: Rat::zero(), b, d }
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    fn merged_radicand(&self, other: &Self) -> Result<u64, ExactError> {
        match (self.b.is_zero(), other.b.is_zero()) {
            (true, true) => Ok(0),
            (false, true) => Ok(self.d),
            (true, false) => Ok(other.d),
            (false, false) => {
                if self.d == other.d {
                    Ok(self.d)
                } else {
                    Err(ExactError::MixedRadicands(self.d, other.d))
                }
            }
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self, ExactError> {
        let d = self.merged_radicand(other)?;
        Ok(QuadNum { a: &self.a + &other.a, b: &self.b + &other.b, d })
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self, ExactError> {
        let d = self.merged_radicand(other)?;
        let dd = rat(d as i64);
        Ok(QuadNum {
            a: &self.a * &other.a + &(&self.b * &other.b) * &dd,
            b: &self.a * &other.b + &self.b * &other.a,
            d,
        })
    }

    pub fn scale(&self, c: &Rat) -> Self {
        QuadNum { a: &self.a * c, b: &self.b * c, d: self.d }
    }

    /// Field norm a² − d·b².
    pub fn norm(&self) -> Rat {
        &self.a * &self.a - &(&self.b * &self.b) * &rat(self.d as i64)
    }

    pub fn inverse(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let n = self.norm();
        debug_assert!(!n.is_zero(), "square-free d makes the norm anisotropic");
        Some(QuadNum { a: &self.a / &n, b: -(&self.b / &n), d: self.d })
    }
}

impl Add for QuadNum {
    type Output = QuadNum;
    fn add(self, rhs: QuadNum) -> QuadNum {
        self.checked_add(&rhs).expect("mixed radicands")
    }
}

impl Sub for QuadNum {
    type Output = QuadNum;
    fn sub(self, rhs: QuadNum) -> QuadNum {
        self.checked_add(&-rhs).expect("mixed radicands")
    }
}

impl Mul for QuadNum {
    type Output = QuadNum;
    fn mul(self, rhs: QuadNum) -> QuadNum {
        self.checked_mul(&rhs).expect("mixed radicands")
    }
}

impl Neg for QuadNum {
    type Output = QuadNum;
    fn neg(self) -> QuadNum {
        QuadNum { a: -self.a, b: -self.b, d: self.d }
    }
}

impl fmt::Display for QuadNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.b.is_zero() {
            write!(f, "{}", self.a)
        } else if self.a.is_zero() {
            write!(f, "{}*sqrt({})", self.b, self.d)
        } else {
            write!(f, "{}+{}*sqrt({})", self.a, self.b, self.d)
        }
    }
}

/// Coefficient fields usable for Cartan coordinates: ℚ itself or ℚ(√d).
pub trait Coeff: Clone + PartialEq {
    fn coeff_zero() -> Self;
    fn add_ref(&self, other: &Self) -> Self;
    fn sub_ref(&self, other: &Self) -> Self;
    fn neg_ref(&self) -> Self;
    fn mul_rat(&self, c: &Rat) -> Self;
    fn coeff_is_zero(&self) -> bool;
    fn from_rat(c: Rat) -> Self;
}

impl Coeff for Rat {
    fn coeff_zero() -> Self {
        <Rat as Zero>::zero()
    }
    fn add_ref(&self, other: &Self) -> Self {
        self + other
    }
    fn sub_ref(&self, other: &Self) -> Self {
        self - other
    }
    fn neg_ref(&self) -> Self {
        -self.clone()
    }
    fn mul_rat(&self, c: &Rat) -> Self {
        self * c
    }
    fn coeff_is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn from_rat(c: Rat) -> Self {
        c
    }
}

impl Coeff for QuadNum {
    fn coeff_zero() -> Self {
        QuadNum::from_rat(<Rat as Zero>::zero())
    }
    fn add_ref(&self, other: &Self) -> Self {
        self.checked_add(other).expect("mixed radicands")
    }
    fn sub_ref(&self, other: &Self) -> Self {
        self.checked_add(&other.clone().neg()).expect("mixed radicands")
    }
    fn neg_ref(&self) -> Self {
        self.clone().neg()
    }
    fn mul_rat(&self, c: &Rat) -> Self {
        self.scale(c)
    }
    fn coeff_is_zero(&self) -> bool {
        QuadNum::is_zero(self)
    }
    fn from_rat(c: Rat) -> Self {
        QuadNum::from_rat(c)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat_frac;

    #[test]
    fn arithmetic_in_q_sqrt6() {
        let x = QuadNum::new(rat(1), rat(2), 6); // 1 + 2√6
        let y = QuadNum::new(rat(-3), rat_frac(1, 2), 6); // -3 + √6/2
        let p = x.checked_mul(&y).unwrap();
        // (1+2√6)(-3+√6/2) = -3 + √6/2 - 6√6 + 6 = 3 - 11/2 √6
        assert_eq!(p.a, rat(3));
        assert_eq!(p.b, rat_frac(-11, 2));
        let inv = x.inverse().unwrap();
        let prod = x.checked_mul(&inv).unwrap();
        assert_eq!(prod, QuadNum::from_int(1));
    }

    #[test]
    fn rationals_mix_with_any_radicand() {
        let r = QuadNum::from_int(5);
        let x = QuadNum::radical(rat(1), 6);
        assert!(r.checked_add(&x).is_ok());
        let y = QuadNum::radical(rat(1), 2);
        assert!(x.checked_add(&y).is_err());
    }
}
