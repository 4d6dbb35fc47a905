//! Small finite fields 𝔽_{p^k} with table-based arithmetic.

use serde::{Deserialize, Serialize};

/// 𝔽_{p^k} for a prime p and k ≤ 4, with q = p^k ≤ 1024. Elements are encoded
/// as integers in [0, q): base-p digit vectors of the residue polynomial.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct FqField {
    pub p: u16,
    pub k: u8,
    pub q: u16,
    /// coefficients c_0..c_{k-1} with x^k = c_0 + c_1 x + …: the reduction
    /// rule of the irreducible modulus polynomial
    pub modulus_tail: Vec<u16>,
    #[serde(skip)]
    mul_table: Vec<u16>,
    #[serde(skip)]
    inv_table: Vec<u16>,
    #[serde(skip)]
    add_table: Vec<u16>,
    #[serde(skip)]
    neg_table: Vec<u16>,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FqError {
    #[error("{0} is not a prime")]
    NotPrime(u64),
    #[error("field size {0} exceeds the supported bound")]
    TooLarge(u64),
}

pub type Felt = u16;

impl FqField {
    pub fn new(p: u16, k: u8) -> Result<FqField, FqError> {
        if !is_prime(p as u64) {
            return Err(FqError::NotPrime(p as u64));
        }
        let q = (p as u64).pow(k as u32);
        if q > 1024 || k == 0 || k > 4 {
            return Err(FqError::TooLarge(q));
        }
        let q = q as u16;
        let modulus_tail = if k == 1 { vec![] } else { find_irreducible(p, k) };
        let mut f = FqField {
            p,
            k,
            q,
            modulus_tail,
            mul_table: Vec::new(),
            inv_table: Vec::new(),
            add_table: Vec::new(),
            neg_table: Vec::new(),
        };
        f.build_tables();
        Ok(f)
    }

    /// The field of order q (q a prime power).
    pub fn of_order(q: u64) -> Result<FqField, FqError> {
        let Some(p) = crate::exact::countfn::prime_of(q) else {
            return Err(FqError::NotPrime(q));
        };
        let mut k = 0u8;
        let mut n = q;
        while n > 1 {
            n /= p;
            k += 1;
        }
        FqField::new(p as u16, k)
    }

    fn build_tables(&mut self) {
        let q = self.q as usize;
        self.add_table = vec![0; q * q];
        self.mul_table = vec![0; q * q];
        self.neg_table = vec![0; q];
        self.inv_table = vec![0; q];
        for a in 0..q {
            for b in 0..q {
                self.add_table[a * q + b] = self.add_slow(a as u16, b as u16);
                self.mul_table[a * q + b] = self.mul_slow(a as u16, b as u16);
            }
        }
        for a in 0..q {
            self.neg_table[a] = self.neg_slow(a as u16);
        }
        for a in 1..q {
            let inv = (1..q).find(|&b| self.mul_table[a * q + b] == 1).expect("field inverse");
            self.inv_table[a] = inv as u16;
        }
    }

    fn digits(&self, a: u16) -> [u16; 4] {
        let mut d = [0u16; 4];
        let mut x = a;
        for i in 0..self.k as usize {
            d[i] = x % self.p;
            x /= self.p;
        }
        d
    }

    fn undigits(&self, d: &[u16; 4]) -> u16 {
        let mut x = 0u32;
        for i in (0..self.k as usize).rev() {
            x = x * self.p as u32 + d[i] as u32;
        }
        x as u16
    }

    fn add_slow(&self, a: u16, b: u16) -> u16 {
        let (da, db) = (self.digits(a), self.digits(b));
        let mut out = [0u16; 4];
        for i in 0..self.k as usize {
            out[i] = (da[i] + db[i]) % self.p;
        }
        self.undigits(&out)
    }

    fn neg_slow(&self, a: u16) -> u16 {
        let da = self.digits(a);
        let mut out = [0u16; 4];
        for i in 0..self.k as usize {
            out[i] = (self.p - da[i]) % self.p;
        }
        self.undigits(&out)
    }

    fn mul_slow(&self, a: u16, b: u16) -> u16 {
        let k = self.k as usize;
        let (da, db) = (self.digits(a), self.digits(b));
        // schoolbook product then reduce by x^k = tail
        let mut prod = [0u32; 8];
        for i in 0..k {
            for j in 0..k {
                prod[i + j] += da[i] as u32 * db[j] as u32;
            }
        }
        for i in (k..2 * k - 1).rev() {
            let c = prod[i] % self.p as u32;
            prod[i] = 0;
            if c != 0 {
                for (j, &t) in self.modulus_tail.iter().enumerate() {
                    prod[i - k + j] += c * t as u32;
                }
            }
        }
        let mut out = [0u16; 4];
        for i in 0..k {
            out[i] = (prod[i] % self.p as u32) as u16;
        }
        self.undigits(&out)
    }

    #[inline]
    pub fn add(&self, a: Felt, b: Felt) -> Felt {
        self.add_table[a as usize * self.q as usize + b as usize]
    }

    #[inline]
    pub fn sub(&self, a: Felt, b: Felt) -> Felt {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: Felt, b: Felt) -> Felt {
        self.mul_table[a as usize * self.q as usize + b as usize]
    }

    #[inline]
    pub fn neg(&self, a: Felt) -> Felt {
        self.neg_table[a as usize]
    }

    #[inline]
    pub fn inv(&self, a: Felt) -> Felt {
        debug_assert!(a != 0);
        self.inv_table[a as usize]
    }

    pub fn one(&self) -> Felt {
        1
    }

    /// Embed an integer via reduction mod p.
    pub fn from_int(&self, n: i64) -> Felt {
        (n.rem_euclid(self.p as i64)) as u16
    }

    pub fn elements(&self) -> impl Iterator<Item = Felt> {
        0..self.q
    }

    pub fn units(&self) -> impl Iterator<Item = Felt> {
        1..self.q
    }

    pub fn pow(&self, a: Felt, e: u64) -> Felt {
        let mut acc = 1;
        let mut base = a;
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    pub fn is_square(&self, a: Felt) -> bool {
        if a == 0 {
            return true;
        }
        if self.p == 2 {
            return true;
        }
        self.pow(a, (self.q as u64 - 1) / 2) == 1
    }

    pub fn smallest_nonresidue(&self) -> Felt {
        self.elements().find(|&a| a != 0 && !self.is_square(a)).expect("odd field has non-squares")
    }

    /// Multiplicative generator.
    pub fn generator(&self) -> Felt {
        let n = self.q as u64 - 1;
        'outer: for g in 1..self.q {
            let mut d = 2;
            let mut m = n;
            let mut primes = Vec::new();
            while d * d <= m {
                if m % d == 0 {
                    primes.push(d);
                    while m % d == 0 {
                        m /= d;
                    }
                }
                d += 1;
            }
            if m > 1 {
                primes.push(m);
            }
            for pr in primes {
                if self.pow(g, n / pr) == 1 {
                    continue 'outer;
                }
            }
            return g;
        }
        unreachable!("cyclic unit group")
    }

    /// Embed 𝔽_p-valued data into this field (k ≥ 1): the prime field is the
    /// digit-0 line.
    pub fn lift_prime_field(&self, a_mod_p: u16) -> Felt {
        a_mod_p % self.p
    }

    /// Multiplicative order of a unit.
    pub fn order_of(&self, a: Felt) -> u64 {
        debug_assert!(a != 0);
        let mut x = a;
        let mut o = 1u64;
        while x != 1 {
            x = self.mul(x, a);
            o += 1;
        }
        o
    }
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

fn find_irreducible(p: u16, k: u8) -> Vec<u16> {
    // monic x^k - (tail): scan tails until the polynomial has no roots and,
    // for k = 4, no quadratic factors; equivalently no element of F_{p^2}
    // is a root. For k <= 3 root-freeness suffices; for k = 4 we check
    // irreducibility by trial multiplication of all monic quadratics.
    let pk = (p as u64).pow(k as u32);
    let _ = pk;
    let mut tail = vec![0u16; k as usize];
    loop {
        // increment tail as base-p counter
        let mut i = 0;
        loop {
            tail[i] += 1;
            if tail[i] < p {
                break;
            }
            tail[i] = 0;
            i += 1;
            assert!(i < k as usize, "irreducible polynomial exists");
        }
        if poly_irreducible(p, k, &tail) {
            return tail;
        }
    }
}

/// Is x^k - tail(x) irreducible over F_p? Brute-force trial division by all
/// monic polynomials of degree 1..k/2.
fn poly_irreducible(p: u16, k: u8, tail: &[u16]) -> bool {
    // full polynomial: x^k - tail => coefficients c[0..=k]
    let k = k as usize;
    let mut c = vec![0i64; k + 1];
    c[k] = 1;
    for (i, &t) in tail.iter().enumerate() {
        c[i] = -(t as i64);
    }
    let c: Vec<u16> = c.iter().map(|&x| x.rem_euclid(p as i64) as u16).collect();
    for d in 1..=(k / 2) {
        // all monic divisors of degree d
        let count = (p as u64).pow(d as u32);
        for idx in 0..count {
            let mut div = vec![0u16; d + 1];
            div[d] = 1;
            let mut x = idx;
            for c in div.iter_mut().take(d) {
                *c = (x % p as u64) as u16;
                x /= p as u64;
            }
            if poly_rem_is_zero(p, &c, &div) {
                return false;
            }
        }
    }
    true
}

fn poly_rem_is_zero(p: u16, num: &[u16], den: &[u16]) -> bool {
    let mut r: Vec<i64> = num.iter().map(|&x| x as i64).collect();
    let dd = den.len() - 1;
    while r.len() > dd {
        let lead = *r.last().unwrap() % p as i64;
        let shift = r.len() - 1 - dd;
        if lead != 0 {
            for (i, &dc) in den.iter().enumerate() {
                r[shift + i] = (r[shift + i] - lead * dc as i64).rem_euclid(p as i64);
            }
        }
        r.pop();
    }
    r.iter().all(|&x| x % p as i64 == 0)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn field_axioms_sampled() {
        for (p, k) in [(3u16, 1u8), (3, 2), (5, 1), (2, 2), (3, 4), (13, 1)] {
            let f = FqField::new(p, k).unwrap();
            let q = f.q;
            for a in 0..q {
                for b in 0..q {
                    assert_eq!(f.add(a, b), f.add(b, a));
                    assert_eq!(f.mul(a, b), f.mul(b, a));
                    if b != 0 {
                        assert_eq!(f.mul(f.mul(a, b), f.inv(b)), a);
                    }
                }
                assert_eq!(f.add(a, f.neg(a)), 0);
            }
            // distributivity spot checks
            for a in 0..q.min(9) {
                for b in 0..q.min(9) {
                    for c in 0..q.min(9) {
                        assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
                    }
                }
            }
        }
    }

    #[test]
    fn squares_and_generators() {
        let f9 = FqField::new(3, 2).unwrap();
        let squares: Vec<bool> = f9.elements().map(|a| f9.is_square(a)).collect();
        assert_eq!(squares.iter().filter(|&&s| s).count(), 1 + 4); // 0 plus (q-1)/2
        let g = f9.generator();
        assert_eq!(f9.order_of(g), 8);
        let f13 = FqField::new(13, 1).unwrap();
        assert_eq!(f13.smallest_nonresidue(), 2);
    }
}
