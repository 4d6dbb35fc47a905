//! Rational functions in q, the working form of type-sum terms before the
//! final cancellation down to a polynomial.

use super::{ExactError, QPoly, Rat};
use num_traits::One;
use std::ops::{Add, Div, Mul, Neg, Sub};

/// Reduced fraction of Laurent polynomials with monic denominator.
#[derive(Debug, Clone, PartialEq)]
pub struct RatFn {
    num: QPoly,
    den: QPoly,
}

impl RatFn {
    pub fn zero() -> Self {
        RatFn { num: QPoly::zero(), den: QPoly::one() }
    }

    pub fn one() -> Self {
        RatFn { num: QPoly::one(), den: QPoly::one() }
    }

    pub fn from_poly(p: QPoly) -> Self {
        RatFn { num: p, den: QPoly::one() }
    }

    pub fn from_ratio(num: QPoly, den: QPoly) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        let mut r = RatFn { num, den };
        r.reduce();
        r
    }

    fn reduce(&mut self) {
        if self.num.is_zero() {
            self.den = QPoly::one();
            return;
        }
        let g = self.num.gcd(&self.den);
        if !g.is_zero() {
            self.num = self.num.exact_div(&g).expect("gcd divides");
            self.den = self.den.exact_div(&g).expect("gcd divides");
        }
        // normalize: monic denominator with zero low degree
        let shift = self.den.low_degree().unwrap_or(0);
        self.den = self.den.shift(-shift);
        self.num = self.num.shift(-shift);
        let lead = self.den.leading();
        if !lead.is_one() {
            let inv = Rat::one() / lead;
            self.den = self.den.scale(&inv);
            self.num = self.num.scale(&inv);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// Extract the polynomial if the fraction reduced to one.
    pub fn into_poly(self) -> Result<QPoly, ExactError> {
        if self.den == QPoly::one() {
            Ok(self.num)
        } else {
            Err(ExactError::NonPolynomialResult(self.den.to_string()))
        }
    }

    pub fn numerator(&self) -> &QPoly {
        &self.num
    }

    pub fn denominator(&self) -> &QPoly {
        &self.den
    }
}

impl Add for &RatFn {
    type Output = RatFn;
    fn add(self, rhs: &RatFn) -> RatFn {
        RatFn::from_ratio(
            &(&self.num * &rhs.den) + &(&rhs.num * &self.den),
            &self.den * &rhs.den,
        )
    }
}

impl Sub for &RatFn {
    type Output = RatFn;
    fn sub(self, rhs: &RatFn) -> RatFn {
        self + &(-rhs.clone())
    }
}

impl Mul for &RatFn {
    type Output = RatFn;
    fn mul(self, rhs: &RatFn) -> RatFn {
        RatFn::from_ratio(&self.num * &rhs.num, &self.den * &rhs.den)
    }
}

impl Div for &RatFn {
    type Output = RatFn;
    fn div(self, rhs: &RatFn) -> RatFn {
        assert!(!rhs.is_zero(), "division by zero rational function");
        RatFn::from_ratio(&self.num * &rhs.den, &self.den * &rhs.num)
    }
}

impl Neg for RatFn {
    type Output = RatFn;
    fn neg(mut self) -> RatFn {
        self.num = -self.num;
        self
    }
}

macro_rules! owned_ops {
    ($($tr:ident :: $m:ident),*) => {$(
        impl $tr for RatFn {
            type Output = RatFn;
            fn $m(self, rhs: RatFn) -> RatFn { (&self).$m(&rhs) }
        }
    )*};
}
owned_ops!(Add::add, Sub::sub, Mul::mul, Div::div);

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> QPoly {
        s.parse().unwrap()
    }

    #[test]
    fn partial_fractions_recombine() {
        // 1/(q-1) + 1/(q+1) = 2q/(q^2-1)
        let a = RatFn::from_ratio(QPoly::one(), p("q-1"));
        let b = RatFn::from_ratio(QPoly::one(), p("q+1"));
        let s = &a + &b;
        assert_eq!(s, RatFn::from_ratio(p("2*q"), p("q^2-1")));
    }

    #[test]
    fn cancellation_to_polynomial() {
        // (q^2-1)/(q-1) = q+1
        let f = RatFn::from_ratio(p("q^2-1"), p("q-1"));
        assert_eq!(f.into_poly().unwrap(), p("q+1"));
        let g = RatFn::from_ratio(p("q"), p("q-1"));
        assert!(g.into_poly().is_err());
    }

    #[test]
    fn type_sum_shape() {
        // -4/(q-1) + (q+1)^2/(q(q-1)) + 1/q = 1, the sl2 additive sum
        let t1 = RatFn::from_ratio(p("-4"), p("q-1"));
        let t2 = RatFn::from_ratio(p("q^2+2*q+1"), &p("q") * &p("q-1"));
        let t3 = RatFn::from_ratio(QPoly::one(), p("q"));
        let s = &(&t1 + &t2) + &t3;
        assert_eq!(s.into_poly().unwrap(), QPoly::one());
    }
}
