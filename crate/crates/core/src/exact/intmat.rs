//! Integer matrices and Smith normal form over ℤ.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

/// Dense matrix with arbitrary-precision integer entries.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntMat {
    pub rows: usize,
    pub cols: usize,
    data: Vec<BigInt>,
}

/// Decomposition U·A·V = D with U, V unimodular and D = diag(d_1, …),
/// d_i ≥ 0 and d_i | d_{i+1}.
#[derive(Debug, Clone)]
pub struct SnfResult {
    pub u: IntMat,
    pub d: IntMat,
    pub v: IntMat,
}

impl IntMat {
    pub fn zero(rows: usize, cols: usize) -> Self {
        IntMat { rows, cols, data: vec![BigInt::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = IntMat::zero(n, n);
        for i in 0..n {
            m[(i, i)] = BigInt::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<i64>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        assert!(rows.iter().all(|x| x.len() == c), "ragged rows");
        let data = rows.into_iter().flatten().map(BigInt::from).collect();
        IntMat { rows: r, cols: c, data }
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn mul(&self, other: &IntMat) -> IntMat {
        assert_eq!(self.cols, other.rows);
        let mut out = IntMat::zero(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let add = a * &other[(k, j)];
                    out[(i, j)] += add;
                }
            }
        }
        out
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    fn add_row_multiple(&mut self, dst: usize, src: usize, f: &BigInt) {
        for j in 0..self.cols {
            let add = f * &self[(src, j)];
            self[(dst, j)] += add;
        }
    }

    fn add_col_multiple(&mut self, dst: usize, src: usize, f: &BigInt) {
        for i in 0..self.rows {
            let add = f * &self[(i, src)];
            self[(i, dst)] += add;
        }
    }

    fn negate_row(&mut self, i: usize) {
        for j in 0..self.cols {
            let v = -self[(i, j)].clone();
            self[(i, j)] = v;
        }
    }

    /// Smith normal form by elementary row/column operations, tracking the
    /// unimodular transforms.
    pub fn snf(&self) -> SnfResult {
        let mut a = self.clone();
        let mut u = IntMat::identity(self.rows);
        let mut v = IntMat::identity(self.cols);
        let n = self.rows.min(self.cols);
        let mut t = 0;
        while t < n {
            // pivot: smallest nonzero |entry| in the remaining block
            let mut piv: Option<(usize, usize)> = None;
            for i in t..self.rows {
                for j in t..self.cols {
                    if !a[(i, j)].is_zero()
                        && piv.map_or(true, |(pi, pj)| a[(i, j)].abs() < a[(pi, pj)].abs())
                    {
                        piv = Some((i, j));
                    }
                }
            }
            let Some((pi, pj)) = piv else { break };
            a.swap_rows(t, pi);
            u.swap_rows(t, pi);
            a.swap_cols(t, pj);
            v.swap_cols(t, pj);
            // clear row and column t
            let mut dirty = true;
            while dirty {
                dirty = false;
                for i in (t + 1)..self.rows {
                    if !a[(i, t)].is_zero() {
                        let f = -(&a[(i, t)] / &a[(t, t)]);
                        a.add_row_multiple(i, t, &f);
                        u.add_row_multiple(i, t, &f);
                        if !a[(i, t)].is_zero() {
                            // remainder smaller than pivot: swap up and restart
                            a.swap_rows(t, i);
                            u.swap_rows(t, i);
                            dirty = true;
                        }
                    }
                }
                for j in (t + 1)..self.cols {
                    if !a[(t, j)].is_zero() {
                        let f = -(&a[(t, j)] / &a[(t, t)]);
                        a.add_col_multiple(j, t, &f);
                        v.add_col_multiple(j, t, &f);
                        if !a[(t, j)].is_zero() {
                            a.swap_cols(t, j);
                            v.swap_cols(t, j);
                            dirty = true;
                        }
                    }
                }
            }
            t += 1;
        }
        // positive diagonal
        for i in 0..n {
            if a[(i, i)].is_negative() {
                a.negate_row(i);
                u.negate_row(i);
            }
        }
        // divisibility chain d_i | d_{i+1}
        let mut again = true;
        while again {
            again = false;
            for i in 0..n.saturating_sub(1) {
                let (di, dj) = (a[(i, i)].clone(), a[(i + 1, i + 1)].clone());
                if !di.is_zero() && !(&dj % &di).is_zero() {
                    // fold d_{i+1} into row i and redo the 2x2 block
                    a.add_col_multiple(i, i + 1, &BigInt::one());
                    v.add_col_multiple(i, i + 1, &BigInt::one());
                    let g = gcd(&di, &dj);
                    let l = &di * &dj / &g;
                    // clear by the general elimination again (small block)
                    clear_block(&mut a, &mut u, &mut v, i);
                    debug_assert_eq!(a[(i, i)].abs(), g.abs());
                    debug_assert_eq!(a[(i + 1, i + 1)].abs(), l.abs());
                    again = true;
                } else if di.is_zero() && !dj.is_zero() {
                    a.swap_rows(i, i + 1);
                    u.swap_rows(i, i + 1);
                    a.swap_cols(i, i + 1);
                    v.swap_cols(i, i + 1);
                    again = true;
                }
            }
        }
        for i in 0..n {
            if a[(i, i)].is_negative() {
                a.negate_row(i);
                u.negate_row(i);
            }
        }
        SnfResult { u, d: a, v }
    }

    /// Nonzero diagonal entries of the Smith form.
    pub fn elementary_divisors(&self) -> Vec<BigInt> {
        let s = self.snf();
        let n = self.rows.min(self.cols);
        (0..n).map(|i| s.d[(i, i)].clone()).filter(|d| !d.is_zero()).collect()
    }

    pub fn rank(&self) -> usize {
        self.elementary_divisors().len()
    }

    /// Determinant via fraction-free elimination (square matrices only).
    pub fn det(&self) -> BigInt {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let mut m: Vec<Vec<num_rational::BigRational>> = (0..n)
            .map(|i| (0..n).map(|j| num_rational::BigRational::from_integer(self[(i, j)].clone())).collect())
            .collect();
        let mut det = num_rational::BigRational::one();
        for c in 0..n {
            let Some(p) = (c..n).find(|&i| !m[i][c].is_zero()) else {
                return BigInt::zero();
            };
            if p != c {
                m.swap(p, c);
                det = -det;
            }
            det *= m[c][c].clone();
            let inv = num_rational::BigRational::one() / m[c][c].clone();
            for i in (c + 1)..n {
                let f = &m[i][c] * &inv;
                if f.is_zero() {
                    continue;
                }
                for j in c..n {
                    let sub = &f * &m[c][j];
                    m[i][j] -= sub;
                }
            }
        }
        debug_assert!(det.is_integer());
        det.to_integer()
    }
}

/// Re-eliminate the trailing block starting at t after a column fold.
fn clear_block(a: &mut IntMat, u: &mut IntMat, v: &mut IntMat, t: usize) {
    let rows = a.rows;
    let cols = a.cols;
    loop {
        // pivot to smallest in block
        let mut piv: Option<(usize, usize)> = None;
        for i in t..rows {
            for j in t..cols {
                if !a[(i, j)].is_zero()
                    && piv.map_or(true, |(pi, pj)| a[(i, j)].abs() < a[(pi, pj)].abs())
                {
                    piv = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = piv else { return };
        a.swap_rows(t, pi);
        u.swap_rows(t, pi);
        a.swap_cols(t, pj);
        v.swap_cols(t, pj);
        let mut clean = true;
        for i in (t + 1)..rows {
            if !a[(i, t)].is_zero() {
                let f = -(&a[(i, t)] / &a[(t, t)]);
                a.add_row_multiple(i, t, &f);
                u.add_row_multiple(i, t, &f);
                if !a[(i, t)].is_zero() {
                    clean = false;
                }
            }
        }
        for j in (t + 1)..cols {
            if !a[(t, j)].is_zero() {
                let f = -(&a[(t, j)] / &a[(t, t)]);
                a.add_col_multiple(j, t, &f);
                v.add_col_multiple(j, t, &f);
                if !a[(t, j)].is_zero() {
                    clean = false;
                }
            }
        }
        if clean {
            return;
        }
    }
}

fn gcd(a: &BigInt, b: &BigInt) -> BigInt {
    num_integer::Integer::gcd(a, b)
}

impl std::ops::Index<(usize, usize)> for IntMat {
    type Output = BigInt;
    fn index(&self, (i, j): (usize, usize)) -> &BigInt {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for IntMat {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut BigInt {
        &mut self.data[i * self.cols + j]
    }
}
