//! Laurent polynomials in the indeterminate `q` over ℚ.

use super::{ExactError, Rat};
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

/// Polynomial in q with rational coefficients and integer (possibly negative)
/// exponents. Zero coefficients are never stored.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct QPoly {
    coeffs: BTreeMap<i64, Rat>,
}

impl QPoly {
    pub fn zero() -> Self {
        QPoly { coeffs: BTreeMap::new() }
    }

    pub fn one() -> Self {
        QPoly::constant(Rat::one())
    }

    pub fn constant(c: Rat) -> Self {
        let mut p = QPoly::zero();
        p.set(0, c);
        p
    }

    pub fn from_int(n: i64) -> Self {
        QPoly::constant(super::rat(n))
    }

    /// The variable q.
    pub fn var() -> Self {
        QPoly::monomial(Rat::one(), 1)
    }

    pub fn monomial(c: Rat, k: i64) -> Self {
        let mut p = QPoly::zero();
        p.set(k, c);
        p
    }

    fn set(&mut self, k: i64, c: Rat) {
        if c.is_zero() {
            self.coeffs.remove(&k);
        } else {
            self.coeffs.insert(k, c);
        }
    }

    pub fn coeff(&self, k: i64) -> Rat {
        self.coeffs.get(&k).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, &Rat)> {
        self.coeffs.iter().map(|(k, c)| (*k, c))
    }

    /// Highest exponent with nonzero coefficient.
    pub fn degree(&self) -> Option<i64> {
        self.coeffs.keys().next_back().copied()
    }

    /// Lowest exponent with nonzero coefficient.
    pub fn low_degree(&self) -> Option<i64> {
        self.coeffs.keys().next().copied()
    }

    pub fn leading(&self) -> Rat {
        self.degree().map(|d| self.coeff(d)).unwrap_or_else(Rat::zero)
    }

    pub fn scale(&self, c: &Rat) -> Self {
        let mut out = QPoly::zero();
        for (k, v) in &self.coeffs {
            out.set(*k, v * c);
        }
        out
    }

    /// Multiply by q^k.
    pub fn shift(&self, k: i64) -> Self {
        let mut out = QPoly::zero();
        for (e, v) in &self.coeffs {
            out.set(e + k, v.clone());
        }
        out
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut out = QPoly::one();
        for _ in 0..n {
            out = &out * self;
        }
        out
    }

    /// Exact evaluation at a rational point (nonzero if negative exponents occur).
    pub fn eval(&self, x: &Rat) -> Rat {
        let mut acc = Rat::zero();
        for (k, c) in &self.coeffs {
            acc += c * &pow_rat(x, *k);
        }
        acc
    }

    pub fn eval_u64(&self, x: u64) -> Rat {
        self.eval(&Rat::from_integer(BigInt::from(x)))
    }

    /// Exact division; errors unless the remainder vanishes.
    pub fn exact_div(&self, rhs: &QPoly) -> Result<QPoly, ExactError> {
        let (q, r) = self.div_rem(rhs)?;
        if r.is_zero() {
            Ok(q)
        } else {
            Err(ExactError::DivisionNotExact)
        }
    }

    /// Long division by a nonzero divisor. Laurent supports are normalized by
    /// factoring out powers of q first.
    pub fn div_rem(&self, rhs: &QPoly) -> Result<(QPoly, QPoly), ExactError> {
        if rhs.is_zero() {
            return Err(ExactError::DivisionNotExact);
        }
        if self.is_zero() {
            return Ok((QPoly::zero(), QPoly::zero()));
        }
        let a_low = self.low_degree().unwrap();
        let b_low = rhs.low_degree().unwrap();
        let mut rem = self.shift(-a_low);
        let b = rhs.shift(-b_low);
        let bdeg = b.degree().unwrap();
        let blead = b.leading();
        let mut quo = QPoly::zero();
        while !rem.is_zero() && rem.degree().unwrap() >= bdeg {
            let d = rem.degree().unwrap() - bdeg;
            let c = &rem.leading() / &blead;
            let t = QPoly::monomial(c, d);
            rem = &rem - &(&t * &b);
            quo = &quo + &t;
        }
        Ok((quo.shift(a_low - b_low), rem.shift(a_low)))
    }

    /// Monic gcd via the Euclidean algorithm (Laurent supports normalized).
    pub fn gcd(&self, rhs: &QPoly) -> QPoly {
        let mut a = self.clone();
        let mut b = rhs.clone();
        if let Some(l) = a.low_degree() {
            a = a.shift(-l);
        }
        if let Some(l) = b.low_degree() {
            b = b.shift(-l);
        }
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b).expect("nonzero divisor");
            a = b;
            b = r;
        }
        if a.is_zero() {
            a
        } else {
            let lead = a.leading();
            a.scale(&(Rat::one() / lead))
        }
    }

    /// True when every coefficient is an integer.
    pub fn is_integral(&self) -> bool {
        self.coeffs.values().all(|c| c.is_integer())
    }

    /// True when every exponent is nonnegative.
    pub fn is_polynomial(&self) -> bool {
        self.low_degree().map_or(true, |l| l >= 0)
    }
}

fn pow_rat(x: &Rat, k: i64) -> Rat {
    if k >= 0 {
        let mut acc = Rat::one();
        for _ in 0..k {
            acc *= x;
        }
        acc
    } else {
        let inv = Rat::one() / x;
        let mut acc = Rat::one();
        for _ in 0..(-k) {
            acc *= &inv;
        }
        acc
    }
}

impl Add for &QPoly {
    type Output = QPoly;
    fn add(self, rhs: &QPoly) -> QPoly {
        let mut out = self.clone();
        for (k, c) in &rhs.coeffs {
            let v = out.coeff(*k) + c;
            out.set(*k, v);
        }
        out
    }
}

impl Sub for &QPoly {
    type Output = QPoly;
    fn sub(self, rhs: &QPoly) -> QPoly {
        let mut out = self.clone();
        for (k, c) in &rhs.coeffs {
            let v = out.coeff(*k) - c;
            out.set(*k, v);
        }
        out
    }
}

impl Mul for &QPoly {
    type Output = QPoly;
    fn mul(self, rhs: &QPoly) -> QPoly {
        let mut out = QPoly::zero();
        for (ka, ca) in &self.coeffs {
            for (kb, cb) in &rhs.coeffs {
                let k = ka + kb;
                let v = out.coeff(k) + ca * cb;
                out.set(k, v);
            }
        }
        out
    }
}

impl Neg for QPoly {
    type Output = QPoly;
    fn neg(self) -> QPoly {
        &QPoly::zero() - &self
    }
}

macro_rules! owned_ops {
    ($($tr:ident :: $m:ident),*) => {$(
        impl $tr for QPoly {
            type Output = QPoly;
            fn $m(self, rhs: QPoly) -> QPoly { (&self).$m(&rhs) }
        }
    )*};
}
owned_ops!(Add::add, Sub::sub, Mul::mul);

impl fmt::Display for QPoly {
    /// Text format: sum of `c*q^k` terms in descending k, `/` for rational
    /// coefficients, e.g. `2*q^2+12*q+48`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().rev() {
            let neg = c.is_negative();
            let mag = if neg { -c.clone() } else { c.clone() };
            if first {
                if neg {
                    write!(f, "-")?;
                }
                first = false;
            } else {
                write!(f, "{}", if neg { "-" } else { "+" })?;
            }
            let show_coeff = !mag.is_one() || *k == 0;
            if show_coeff {
                if mag.is_integer() {
                    write!(f, "{}", mag.numer())?;
                } else {
                    write!(f, "{}/{}", mag.numer(), mag.denom())?;
                }
            }
            if *k != 0 {
                if show_coeff {
                    write!(f, "*")?;
                }
                if *k == 1 {
                    write!(f, "q")?;
                } else {
                    write!(f, "q^{}", k)?;
                }
            }
        }
        Ok(())
    }
}

impl FromStr for QPoly {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if s.is_empty() {
            return Err("empty polynomial".into());
        }
        let mut out = QPoly::zero();
        // split into signed terms
        let mut terms: Vec<(bool, String)> = Vec::new();
        let mut cur = String::new();
        let mut sign = false;
        for (i, ch) in s.chars().enumerate() {
            if (ch == '+' || ch == '-') && i > 0 && !matches!(s.as_bytes()[i - 1], b'^' | b'*' | b'/' | b'+' | b'-') {
                terms.push((sign, std::mem::take(&mut cur)));
                sign = ch == '-';
            } else if i == 0 && (ch == '+' || ch == '-') {
                sign = ch == '-';
            } else {
                cur.push(ch);
            }
        }
        terms.push((sign, cur));
        for (neg, t) in terms {
            let (coeff, exp) = parse_term(&t)?;
            let c = if neg { -coeff } else { coeff };
            let v = out.coeff(exp) + c;
            out.set(exp, v);
        }
        Ok(out)
    }
}

impl serde::Serialize for QPoly {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> serde::Deserialize<'de> for QPoly {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

fn parse_term(t: &str) -> Result<(Rat, i64), String> {
    if t.is_empty() {
        return Err("empty term".into());
    }
    let (coeff_str, var_str) = match t.find('q') {
        None => (t, ""),
        Some(i) => (&t[..i], &t[i..]),
    };
    let coeff_str = coeff_str.trim_end_matches('*');
    let coeff = if coeff_str.is_empty() {
        Rat::one()
    } else if let Some((n, d)) = coeff_str.split_once('/') {
        Rat::new(
            n.parse::<BigInt>().map_err(|e| e.to_string())?,
            d.parse::<BigInt>().map_err(|e| e.to_string())?,
        )
    } else {
        Rat::from_integer(coeff_str.parse::<BigInt>().map_err(|e| e.to_string())?)
    };
    let exp = if var_str.is_empty() {
        0
    } else if var_str == "q" {
        1
    } else {
        let e = var_str.strip_prefix("q^").ok_or_else(|| format!("bad term {t:?}"))?;
        e.parse::<i64>().map_err(|e| e.to_string())?
    };
    Ok((coeff, exp))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;
    use rand::{Rng, SeedableRng};

    fn p(s: &str) -> QPoly {
        s.parse().unwrap()
    }

    #[test]
    fn difference_of_squares() {
        assert_eq!(&p("q+1") * &p("q-1"), p("q^2-1"));
    }

    #[test]
    fn paper_polynomial_evaluates() {
        // 2q^2+12q+48 at q=3 is 102; the variety count at the same q is 2*81+12*27+40*9.
        assert_eq!(p("2*q^2+12*q+48").eval_u64(3), rat(102));
        assert_eq!(p("2*q^4+12*q^3+40*q^2").eval_u64(3), rat(846));
    }

    #[test]
    fn exact_division_by_monomial() {
        let a = p("2*q^4+12*q^3+40*q^2");
        let b = QPoly::monomial(rat(1), 2);
        assert_eq!(a.exact_div(&b).unwrap(), p("2*q^2+12*q+40"));
        // monomial division is total on Laurent polynomials
        assert_eq!(p("q+1").exact_div(&p("q")).unwrap(), p("1+q^-1"));
        assert!(p("q^2+1").exact_div(&p("q+1")).is_err());
    }

    #[test]
    fn laurent_supports_divide() {
        let a = QPoly::monomial(rat(1), -2);
        let b = &p("q^2+1") * &a; // q^-2 (q^2+1) = 1 + q^-2
        assert_eq!(b.exact_div(&a).unwrap(), p("q^2+1"));
        assert_eq!(b.eval(&rat(2)), crate::exact::rat_frac(5, 4));
    }

    #[test]
    fn display_and_parse_round_trip() {
        for s in ["2*q^2+12*q+48", "q-1", "-3*q^3+1/2*q-7", "q^-2+1", "0"] {
            let a = p(s);
            assert_eq!(p(&a.to_string()), a, "{s}");
        }
        assert_eq!(p("2*q^2+12*q+48").to_string(), "2*q^2+12*q+48");
    }

    #[test]
    fn ring_laws_on_random_triples() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(401);
        let rand_poly = |rng: &mut rand_chacha::ChaCha8Rng| {
            let mut q = QPoly::zero();
            for _ in 0..4 {
                let k: i64 = rng.gen_range(-3..6);
                let c: i64 = rng.gen_range(-9..10);
                q = &q + &QPoly::monomial(rat(c), k);
            }
            q
        };
        for _ in 0..100 {
            let a = rand_poly(&mut rng);
            let b = rand_poly(&mut rng);
            let c = rand_poly(&mut rng);
            assert_eq!(&(&a + &b) * &c, &(&a * &c) + &(&b * &c));
            assert_eq!(&a * &b, &b * &a);
            assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            // evaluation is a ring homomorphism
            let x = rat(rng.gen_range(1..20));
            assert_eq!((&a * &b).eval(&x), a.eval(&x) * b.eval(&x));
            assert_eq!((&a + &b).eval(&x), a.eval(&x) + b.eval(&x));
            // exact-divide(a*b, b) = a
            if !b.is_zero() {
                assert_eq!((&a * &b).exact_div(&b).unwrap(), a);
            }
        }
    }
}
