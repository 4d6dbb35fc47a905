//! Dense matrices over small finite fields.

use super::fq::{Felt, FqField};

/// n×n matrix, row-major.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FqMat {
    pub n: u8,
    pub data: Vec<Felt>,
}

impl FqMat {
    pub fn zero(n: usize) -> Self {
        FqMat { n: n as u8, data: vec![0; n * n] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = FqMat::zero(n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    #[inline]
    pub fn at(&self, i: usize, j: usize) -> Felt {
        self.data[i * self.n as usize + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: Felt) {
        self.data[i * self.n as usize + j] = v;
    }

    pub fn dim(&self) -> usize {
        self.n as usize
    }

    pub fn mul(&self, f: &FqField, other: &FqMat) -> FqMat {
        let n = self.dim();
        let mut out = FqMat::zero(n);
        for i in 0..n {
            for k in 0..n {
                let a = self.at(i, k);
                if a == 0 {
                    continue;
                }
                for j in 0..n {
                    let b = other.at(k, j);
                    if b != 0 {
                        let v = f.add(out.at(i, j), f.mul(a, b));
                        out.set(i, j, v);
                    }
                }
            }
        }
        out
    }

    pub fn add(&self, f: &FqField, other: &FqMat) -> FqMat {
        let n = self.dim();
        let mut out = FqMat::zero(n);
        for i in 0..n * n {
            out.data[i] = f.add(self.data[i], other.data[i]);
        }
        out
    }

    pub fn sub(&self, f: &FqField, other: &FqMat) -> FqMat {
        let n = self.dim();
        let mut out = FqMat::zero(n);
        for i in 0..n * n {
            out.data[i] = f.sub(self.data[i], other.data[i]);
        }
        out
    }

    pub fn scale(&self, f: &FqField, c: Felt) -> FqMat {
        let mut out = self.clone();
        for v in out.data.iter_mut() {
            *v = f.mul(*v, c);
        }
        out
    }

    pub fn transpose(&self) -> FqMat {
        let n = self.dim();
        let mut out = FqMat::zero(n);
        for i in 0..n {
            for j in 0..n {
                out.set(j, i, self.at(i, j));
            }
        }
        out
    }

    pub fn pow(&self, f: &FqField, e: u64) -> FqMat {
        let mut acc = FqMat::identity(self.dim());
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(f, &base);
            }
            base = base.mul(f, &base);
            e >>= 1;
        }
        acc
    }

    pub fn inv(&self, f: &FqField) -> Option<FqMat> {
        let n = self.dim();
        let mut a = self.clone();
        let mut b = FqMat::identity(n);
        for c in 0..n {
            let piv = (c..n).find(|&i| a.at(i, c) != 0)?;
            if piv != c {
                for j in 0..n {
                    let (x, y) = (a.at(c, j), a.at(piv, j));
                    a.set(c, j, y);
                    a.set(piv, j, x);
                    let (x, y) = (b.at(c, j), b.at(piv, j));
                    b.set(c, j, y);
                    b.set(piv, j, x);
                }
            }
            let inv = f.inv(a.at(c, c));
            for j in 0..n {
                a.set(c, j, f.mul(a.at(c, j), inv));
                b.set(c, j, f.mul(b.at(c, j), inv));
            }
            for i in 0..n {
                if i != c && a.at(i, c) != 0 {
                    let fac = a.at(i, c);
                    for j in 0..n {
                        let v = f.sub(a.at(i, j), f.mul(fac, a.at(c, j)));
                        a.set(i, j, v);
                        let v = f.sub(b.at(i, j), f.mul(fac, b.at(c, j)));
                        b.set(i, j, v);
                    }
                }
            }
        }
        Some(b)
    }

    pub fn rank(&self, f: &FqField) -> usize {
        let n = self.dim();
        let mut a = self.clone();
        let mut r = 0;
        for c in 0..n {
            let Some(piv) = (r..n).find(|&i| a.at(i, c) != 0) else { continue };
            if piv != r {
                for j in 0..n {
                    let (x, y) = (a.at(r, j), a.at(piv, j));
                    a.set(r, j, y);
                    a.set(piv, j, x);
                }
            }
            let inv = f.inv(a.at(r, c));
            for j in 0..n {
                a.set(r, j, f.mul(a.at(r, j), inv));
            }
            for i in 0..n {
                if i != r && a.at(i, c) != 0 {
                    let fac = a.at(i, c);
                    for j in 0..n {
                        let v = f.sub(a.at(i, j), f.mul(fac, a.at(r, j)));
                        a.set(i, j, v);
                    }
                }
            }
            r += 1;
            if r == n {
                break;
            }
        }
        r
    }

    pub fn is_upper_triangular(&self) -> bool {
        let n = self.dim();
        for i in 1..n {
            for j in 0..i {
                if self.at(i, j) != 0 {
                    return false;
                }
            }
        }
        true
    }

    pub fn is_identity(&self) -> bool {
        let n = self.dim();
        (0..n).all(|i| (0..n).all(|j| self.at(i, j) == u16::from(i == j)))
    }

    /// Order of an invertible matrix (spins the cyclic group).
    pub fn order(&self, f: &FqField) -> u64 {
        let mut x = self.clone();
        let mut o = 1u64;
        while !x.is_identity() {
            x = x.mul(f, self);
            o += 1;
            debug_assert!(o < 10_000_000, "order loop runaway");
        }
        o
    }

    pub fn map_base<FM: Fn(Felt) -> Felt>(&self, g: FM) -> FqMat {
        FqMat { n: self.n, data: self.data.iter().map(|&x| g(x)).collect() }
    }
}

/// Kernel basis (as vectors) of an n×n matrix acting on column vectors.
pub fn kernel_basis(f: &FqField, m: &FqMat) -> Vec<Vec<Felt>> {
    let n = m.dim();
    let mut a = m.clone();
    let mut piv_cols = Vec::new();
    let mut r = 0;
    for c in 0..n {
        let Some(piv) = (r..n).find(|&i| a.at(i, c) != 0) else { continue };
        if piv != r {
            for j in 0..n {
                let (x, y) = (a.at(r, j), a.at(piv, j));
                a.set(r, j, y);
                a.set(piv, j, x);
            }
        }
        let inv = f.inv(a.at(r, c));
        for j in 0..n {
            a.set(r, j, f.mul(a.at(r, j), inv));
        }
        for i in 0..n {
            if i != r && a.at(i, c) != 0 {
                let fac = a.at(i, c);
                for j in 0..n {
                    let v = f.sub(a.at(i, j), f.mul(fac, a.at(r, j)));
                    a.set(i, j, v);
                }
            }
        }
        piv_cols.push(c);
        r += 1;
    }
    let mut basis = Vec::new();
    for free in (0..n).filter(|c| !piv_cols.contains(c)) {
        let mut v = vec![0; n];
        v[free] = 1;
        for (row, &pc) in piv_cols.iter().enumerate() {
            v[pc] = f.neg(a.at(row, free));
        }
        basis.push(v);
    }
    basis
}

pub fn mat_vec(f: &FqField, m: &FqMat, v: &[Felt]) -> Vec<Felt> {
    let n = m.dim();
    (0..n)
        .map(|i| (0..n).fold(0, |acc, j| f.add(acc, f.mul(m.at(i, j), v[j]))))
        .collect()
}

/// Rank of a list of row vectors.
pub fn row_rank(f: &FqField, rows: &[Vec<Felt>]) -> usize {
    if rows.is_empty() {
        return 0;
    }
    let cols = rows[0].len();
    let mut m: Vec<Vec<Felt>> = rows.to_vec();
    let mut r = 0;
    for c in 0..cols {
        let Some(piv) = (r..m.len()).find(|&i| m[i][c] != 0) else { continue };
        m.swap(r, piv);
        let inv = f.inv(m[r][c]);
        for x in m[r].iter_mut() {
            *x = f.mul(*x, inv);
        }
        for i in 0..m.len() {
            if i != r && m[i][c] != 0 {
                let fac = m[i][c];
                for j in 0..cols {
                    m[i][j] = f.sub(m[i][j], f.mul(fac, m[r][j]));
                }
            }
        }
        r += 1;
        if r == m.len() {
            break;
        }
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inverse_round_trip() {
        let f = FqField::new(5, 1).unwrap();
        let mut m = FqMat::identity(3);
        m.set(0, 1, 2);
        m.set(1, 2, 4);
        m.set(0, 2, 3);
        let inv = m.inv(&f).unwrap();
        assert!(m.mul(&f, &inv).is_identity());
        assert_eq!(m.rank(&f), 3);
    }

    #[test]
    fn kernel_of_nilpotent() {
        let f = FqField::new(3, 1).unwrap();
        let mut n = FqMat::zero(3);
        n.set(0, 1, 1);
        n.set(1, 2, 1);
        assert_eq!(kernel_basis(&f, &n).len(), 1);
        assert_eq!(n.pow(&f, 2).rank(&f), 1);
        assert_eq!(n.pow(&f, 3).rank(&f), 0);
    }
}
