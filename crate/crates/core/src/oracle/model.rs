//! Matrix models of the split groups the oracle can enumerate and scan:
//! root-subgroup generators, tori, Weyl representatives, Bruhat cosets of the
//! Borel, and the unipotent radical.

use super::fq::{Felt, FqField};
use super::mat::FqMat;

/// Which bilinear-form family the model preserves.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FormKind {
    /// no form condition (GL)
    None,
    /// symmetric form, det 1 (SO)
    Symmetric,
    /// alternating form (Sp; SL2 = Sp2)
    Alternating,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ModelName {
    Torus,
    SL2,
    GL2,
    SO3,
    SO4,
    Sp4,
    SO5,
}

/// One irreducible (or GL) matrix factor: roots are exponent vectors in the
/// torus parameters; each root carries an integer nilpotent generator matrix.
#[derive(Debug, Clone)]
pub struct MatrixModel {
    pub name: ModelName,
    pub dim: usize,
    pub rank: usize,
    pub form: FormKind,
    /// antidiagonal ±1 pattern of the invariant form (empty for GL)
    pub form_mat: Vec<Vec<i64>>,
    /// diagonal exponent vector of each matrix slot in the torus parameters
    pub diag_exps: Vec<Vec<i64>>,
    /// (weight, generator entries) for every root; generators satisfy E³ = 0
    pub root_vecs: Vec<(Vec<i64>, Vec<Vec<i64>>)>,
    /// positive roots: indices into root_vecs
    pub positive: Vec<usize>,
    /// simple roots among the positives
    pub simple: Vec<usize>,
}

fn e(i: usize, j: usize, n: usize, c: i64) -> Vec<Vec<i64>> {
    let mut m = vec![vec![0; n]; n];
    m[i][j] = c;
    m
}

fn madd(a: &[Vec<i64>], b: &[Vec<i64>]) -> Vec<Vec<i64>> {
    a.iter().zip(b).map(|(ra, rb)| ra.iter().zip(rb).map(|(x, y)| x + y).collect()).collect()
}

pub fn model(name: ModelName) -> MatrixModel {
    match name {
        ModelName::Torus => MatrixModel {
            name,
            dim: 1,
            rank: 1,
            form: FormKind::None,
            form_mat: vec![],
            diag_exps: vec![vec![1]],
            root_vecs: vec![],
            positive: vec![],
            simple: vec![],
        },
        ModelName::SL2 => MatrixModel {
            name,
            dim: 2,
            rank: 1,
            form: FormKind::Alternating,
            form_mat: vec![vec![0, 1], vec![-1, 0]],
            diag_exps: vec![vec![1], vec![-1]],
            root_vecs: vec![(vec![2], e(0, 1, 2, 1)), (vec![-2], e(1, 0, 2, 1))],
            positive: vec![0],
            simple: vec![0],
        },
        ModelName::GL2 => MatrixModel {
            name,
            dim: 2,
            rank: 2,
            form: FormKind::None,
            form_mat: vec![],
            diag_exps: vec![vec![1, 0], vec![0, 1]],
            root_vecs: vec![(vec![1, -1], e(0, 1, 2, 1)), (vec![-1, 1], e(1, 0, 2, 1))],
            positive: vec![0],
            simple: vec![0],
        },
        ModelName::SO3 => MatrixModel {
            name,
            dim: 3,
            rank: 1,
            form: FormKind::Symmetric,
            form_mat: antidiag(3),
            diag_exps: vec![vec![1], vec![0], vec![-1]],
            root_vecs: vec![
                (vec![1], madd(&e(0, 1, 3, -1), &e(1, 2, 3, 1))),
                (vec![-1], madd(&e(1, 0, 3, -1), &e(2, 1, 3, 1))),
            ],
            positive: vec![0],
            simple: vec![0],
        },
        ModelName::SO4 => MatrixModel {
            name,
            dim: 4,
            rank: 2,
            form: FormKind::Symmetric,
            form_mat: antidiag(4),
            diag_exps: vec![vec![1, 0], vec![0, 1], vec![0, -1], vec![-1, 0]],
            root_vecs: vec![
                (vec![1, -1], madd(&e(0, 1, 4, -1), &e(2, 3, 4, 1))),
                (vec![-1, 1], madd(&e(1, 0, 4, -1), &e(3, 2, 4, 1))),
                (vec![1, 1], madd(&e(0, 2, 4, -1), &e(1, 3, 4, 1))),
                (vec![-1, -1], madd(&e(2, 0, 4, -1), &e(3, 1, 4, 1))),
            ],
            positive: vec![0, 2],
            simple: vec![0, 2],
        },
        ModelName::Sp4 => MatrixModel {
            name,
            dim: 4,
            rank: 2,
            form: FormKind::Alternating,
            form_mat: vec![
                vec![0, 0, 0, 1],
                vec![0, 0, 1, 0],
                vec![0, -1, 0, 0],
                vec![-1, 0, 0, 0],
            ],
            diag_exps: vec![vec![1, 0], vec![0, 1], vec![0, -1], vec![-1, 0]],
            root_vecs: vec![
                (vec![1, -1], madd(&e(0, 1, 4, -1), &e(2, 3, 4, 1))),
                (vec![-1, 1], madd(&e(1, 0, 4, -1), &e(3, 2, 4, 1))),
                (vec![0, 2], e(1, 2, 4, 1)),
                (vec![0, -2], e(2, 1, 4, 1)),
                (vec![1, 1], madd(&e(0, 2, 4, 1), &e(1, 3, 4, 1))),
                (vec![-1, -1], madd(&e(2, 0, 4, 1), &e(3, 1, 4, 1))),
                (vec![2, 0], e(0, 3, 4, 1)),
                (vec![-2, 0], e(3, 0, 4, 1)),
            ],
            positive: vec![0, 2, 4, 6],
            simple: vec![0, 2],
        },
        ModelName::SO5 => MatrixModel {
            name,
            dim: 5,
            rank: 2,
            form: FormKind::Symmetric,
            form_mat: antidiag(5),
            diag_exps: vec![vec![1, 0], vec![0, 1], vec![0, 0], vec![0, -1], vec![-1, 0]],
            root_vecs: vec![
                (vec![1, -1], madd(&e(0, 1, 5, -1), &e(3, 4, 5, 1))),
                (vec![-1, 1], madd(&e(1, 0, 5, -1), &e(4, 3, 5, 1))),
                (vec![0, 1], madd(&e(1, 2, 5, -1), &e(2, 3, 5, 1))),
                (vec![0, -1], madd(&e(2, 1, 5, -1), &e(3, 2, 5, 1))),
                (vec![1, 0], madd(&e(0, 2, 5, -1), &e(2, 4, 5, 1))),
                (vec![-1, 0], madd(&e(2, 0, 5, -1), &e(4, 2, 5, 1))),
                (vec![1, 1], madd(&e(0, 3, 5, -1), &e(1, 4, 5, 1))),
                (vec![-1, -1], madd(&e(3, 0, 5, -1), &e(4, 1, 5, 1))),
            ],
            positive: vec![0, 2, 4, 6],
            simple: vec![0, 2],
        },
    }
}

fn antidiag(n: usize) -> Vec<Vec<i64>> {
    (0..n).map(|i| (0..n).map(|j| i64::from(i + j == n - 1)).collect()).collect()
}

impl MatrixModel {
    pub fn n_positive(&self) -> usize {
        self.positive.len()
    }

    /// Torus element with the given unit parameters.
    pub fn torus(&self, f: &FqField, params: &[Felt]) -> FqMat {
        let mut m = FqMat::zero(self.dim);
        for (i, exps) in self.diag_exps.iter().enumerate() {
            let mut v = 1;
            for (&p, &k) in params.iter().zip(exps) {
                let base = if k >= 0 { p } else { f.inv(p) };
                for _ in 0..k.abs() {
                    v = f.mul(v, base);
                }
            }
            m.set(i, i, v);
        }
        m
    }

    /// x_α(t) = exp(t·E_α) = 1 + tE + t²E²/2 (E³ = 0 in these realizations;
    /// odd characteristic makes the half exact).
    pub fn xroot(&self, f: &FqField, root: usize, t: Felt) -> FqMat {
        let gen = &self.root_vecs[root].1;
        let n = self.dim;
        let mut em = FqMat::zero(n);
        for i in 0..n {
            for j in 0..n {
                em.set(i, j, f.from_int(gen[i][j]));
            }
        }
        let e2 = em.mul(f, &em);
        debug_assert!(e2.mul(f, &em).data.iter().all(|&x| x == 0), "E^3 = 0");
        let mut out = FqMat::identity(n);
        let te = em.scale(f, t);
        out = out.add(f, &te);
        if e2.data.iter().any(|&x| x != 0) {
            assert!(f.p != 2, "short-root exponentials need odd characteristic");
            let half = f.inv(f.from_int(2));
            let c = f.mul(f.mul(t, t), half);
            out = out.add(f, &e2.scale(f, c));
        }
        out
    }

    /// Representative of the simple reflection: x_α(1)·x_{−α}(−1)·x_α(1).
    pub fn weyl_rep(&self, f: &FqField, pos_root: usize) -> FqMat {
        let neg = self.negative_of(pos_root);
        let a = self.xroot(f, pos_root, 1);
        let b = self.xroot(f, neg, f.neg(1));
        a.mul(f, &b).mul(f, &a)
    }

    pub fn negative_of(&self, root: usize) -> usize {
        let w: Vec<i64> = self.root_vecs[root].0.iter().map(|x| -x).collect();
        self.root_vecs.iter().position(|(v, _)| *v == w).expect("negation closed")
    }

    /// Form-preservation / determinant membership test.
    pub fn in_group(&self, f: &FqField, g: &FqMat) -> bool {
        match self.form {
            FormKind::None => g.inv(f).is_some(),
            FormKind::Symmetric | FormKind::Alternating => {
                let n = self.dim;
                let mut fm = FqMat::zero(n);
                for i in 0..n {
                    for j in 0..n {
                        fm.set(i, j, f.from_int(self.form_mat[i][j]));
                    }
                }
                let ok = g.transpose().mul(f, &fm).mul(f, g) == fm;
                if !ok {
                    return false;
                }
                if self.form == FormKind::Symmetric {
                    det(f, g) == 1
                } else {
                    true
                }
            }
        }
    }

    /// All q^N elements of the unipotent radical, as products over the
    /// positive roots in a fixed order.
    pub fn unipotent_elements(&self, f: &FqField) -> Vec<FqMat> {
        let mut out = vec![FqMat::identity(self.dim)];
        for &r in &self.positive {
            let mut next = Vec::with_capacity(out.len() * f.q as usize);
            for t in f.elements() {
                let x = self.xroot(f, r, t);
                for m in &out {
                    next.push(m.mul(f, &x));
                }
            }
            out = next;
        }
        out
    }

    /// Weyl group on the exponent space, as (signed-permutation) matrices of
    /// i64 acting on exponent vectors, each with a reduced word.
    pub fn weyl_exponent_group(&self) -> Vec<(Vec<Vec<i64>>, Vec<usize>)> {
        let r = self.rank;
        let simples: Vec<Vec<i64>> = self.simple.iter().map(|&i| {
            self.root_vecs[self.positive[..].iter().position(|&p| p == i).map(|_| i).unwrap_or(i)].0.clone()
        }).collect();
        let refl = |alpha: &[i64], v: &[i64]| -> Vec<i64> {
            let num: i64 = 2 * alpha.iter().zip(v).map(|(a, b)| a * b).sum::<i64>();
            let den: i64 = alpha.iter().map(|a| a * a).sum();
            debug_assert_eq!(num % den, 0, "crystallographic");
            let c = num / den;
            v.iter().zip(alpha).map(|(x, a)| x - c * a).collect()
        };
        let ident: Vec<Vec<i64>> =
            (0..r).map(|i| (0..r).map(|j| i64::from(i == j)).collect()).collect();
        let mut out: Vec<(Vec<Vec<i64>>, Vec<usize>)> = Vec::new();
        let mut seen = std::collections::HashSet::new();
        let mut queue = std::collections::VecDeque::new();
        seen.insert(ident.clone());
        queue.push_back((ident, Vec::new()));
        while let Some((m, word)) = queue.pop_front() {
            for (si, alpha) in simples.iter().enumerate() {
                // s_i ∘ m: apply reflection to each column of m
                let cols: Vec<Vec<i64>> =
                    (0..r).map(|j| (0..r).map(|i| m[i][j]).collect()).collect();
                let newcols: Vec<Vec<i64>> = cols.iter().map(|c| refl(alpha, c)).collect();
                let nm: Vec<Vec<i64>> =
                    (0..r).map(|i| (0..r).map(|j| newcols[j][i]).collect()).collect();
                if seen.insert(nm.clone()) {
                    let mut w = vec![si];
                    w.extend_from_slice(&word);
                    queue.push_back((nm, w));
                }
            }
            out.push((m, word));
        }
        out
    }

    /// One representative matrix per coset of the Borel (upper-triangular)
    /// subgroup: the Bruhat cells u·ẇ with u over the inversion set of w.
    pub fn borel_cosets(&self, f: &FqField) -> Vec<FqMat> {
        let weyl = self.weyl_exponent_group();
        let pos_weights: Vec<Vec<i64>> =
            self.positive.iter().map(|&i| self.root_vecs[i].0.clone()).collect();
        let mut out = Vec::new();
        for (m, word) in &weyl {
            // inversion set: positive roots sent negative by m^{-1} = m^T
            let inv: Vec<usize> = self
                .positive
                .iter()
                .enumerate()
                .filter(|(k, _)| {
                    let a = &pos_weights[*k];
                    let r = self.rank;
                    let img: Vec<i64> =
                        (0..r).map(|i| (0..r).map(|j| m[j][i] * a[j]).sum()).collect();
                    let negimg: Vec<i64> = img.iter().map(|x| -x).collect();
                    pos_weights.contains(&negimg)
                })
                .map(|(_, &p)| p)
                .collect();
            // Weyl representative along the word
            let mut nw = FqMat::identity(self.dim);
            for &si in word {
                nw = nw.mul(f, &self.weyl_rep(f, self.simple[si]));
            }
            // enumerate u over the inversion-set root subgroups
            let mut us = vec![FqMat::identity(self.dim)];
            for &r in &inv {
                let mut next = Vec::with_capacity(us.len() * f.q as usize);
                for t in f.elements() {
                    let x = self.xroot(f, r, t);
                    for u in &us {
                        next.push(u.mul(f, &x));
                    }
                }
                us = next;
            }
            for u in us {
                out.push(u.mul(f, &nw));
            }
        }
        out
    }

    /// |B^F| = q^N (q−1)^rank for the split Borel.
    pub fn borel_order(&self, q: u64) -> u64 {
        q.pow(self.n_positive() as u32) * (q - 1).pow(self.rank as u32)
    }
}

pub fn det(f: &FqField, m: &FqMat) -> Felt {
    let n = m.dim();
    let mut a = m.clone();
    let mut d: Felt = 1;
    for c in 0..n {
        let Some(p) = (c..n).find(|&i| a.at(i, c) != 0) else { return 0 };
        if p != c {
            for j in 0..n {
                let (x, y) = (a.at(c, j), a.at(p, j));
                a.set(c, j, y);
                a.set(p, j, x);
            }
            d = f.neg(d);
        }
        d = f.mul(d, a.at(c, c));
        let inv = f.inv(a.at(c, c));
        for i in (c + 1)..n {
            if a.at(i, c) != 0 {
                let fac = f.mul(a.at(i, c), inv);
                for j in c..n {
                    let v = f.sub(a.at(i, j), f.mul(fac, a.at(c, j)));
                    a.set(i, j, v);
                }
            }
        }
    }
    d
}

#[cfg(test)]
mod tests {
    use super::*;

    fn all_models() -> Vec<MatrixModel> {
        [ModelName::SL2, ModelName::GL2, ModelName::SO3, ModelName::SO4, ModelName::Sp4, ModelName::SO5]
            .into_iter()
            .map(model)
            .collect()
    }

    #[test]
    fn generators_preserve_the_form() {
        let f = FqField::new(7, 1).unwrap();
        for m in all_models() {
            for r in 0..m.root_vecs.len() {
                for t in [1u16, 3, 5] {
                    let x = m.xroot(&f, r, t);
                    assert!(m.in_group(&f, &x), "{:?} root {r}", m.name);
                }
            }
            for params in [[2u16, 3], [4, 5]] {
                let t = m.torus(&f, &params[..m.rank]);
                assert!(m.in_group(&f, &t), "{:?} torus", m.name);
            }
            for &s in &m.simple {
                let w = m.weyl_rep(&f, s);
                assert!(m.in_group(&f, &w), "{:?} weyl", m.name);
            }
        }
    }

    #[test]
    fn torus_conjugation_scales_by_the_root_weight() {
        let f = FqField::new(11, 1).unwrap();
        for m in all_models() {
            let params: Vec<Felt> = (0..m.rank).map(|i| 2 + i as u16).collect();
            let t = m.torus(&f, &params);
            let ti = t.inv(&f).unwrap();
            for (r, (w, _)) in m.root_vecs.iter().enumerate() {
                let x = m.xroot(&f, r, 1);
                let conj = t.mul(&f, &x).mul(&f, &ti);
                // t x_a(1) t^-1 = x_a(alpha(t))
                let mut alpha_t = 1;
                for (&p, &k) in params.iter().zip(w) {
                    let base = if k >= 0 { p } else { f.inv(p) };
                    for _ in 0..k.abs() {
                        alpha_t = f.mul(alpha_t, base);
                    }
                }
                assert_eq!(conj, m.xroot(&f, r, alpha_t), "{:?} root {r}", m.name);
            }
        }
    }

    #[test]
    fn coset_counts_match_flag_variety_orders() {
        let f = FqField::new(3, 1).unwrap();
        let counts: Vec<usize> =
            all_models().iter().map(|m| m.borel_cosets(&f).len()).collect();
        // SL2, GL2: q+1 = 4; SO3: q+1 = 4; SO4: (q+1)^2 = 16;
        // Sp4, SO5: (q+1)^2 (q^2+1) = 160
        assert_eq!(counts, vec![4, 4, 4, 16, 160, 160]);
        let f5 = FqField::new(5, 1).unwrap();
        assert_eq!(model(ModelName::Sp4).borel_cosets(&f5).len(), 936);
    }

    #[test]
    fn unipotent_radical_sizes() {
        let f = FqField::new(3, 1).unwrap();
        for m in all_models() {
            let u = m.unipotent_elements(&f);
            assert_eq!(u.len(), 3usize.pow(m.n_positive() as u32), "{:?}", m.name);
            // all distinct and upper triangular
            let set: std::collections::HashSet<_> = u.iter().collect();
            assert_eq!(set.len(), u.len());
            assert!(u.iter().all(|x| x.is_upper_triangular()));
        }
    }

    #[test]
    fn weyl_exponent_group_orders() {
        assert_eq!(model(ModelName::SL2).weyl_exponent_group().len(), 2);
        assert_eq!(model(ModelName::SO4).weyl_exponent_group().len(), 4);
        assert_eq!(model(ModelName::Sp4).weyl_exponent_group().len(), 8);
        assert_eq!(model(ModelName::SO5).weyl_exponent_group().len(), 8);
    }
}
