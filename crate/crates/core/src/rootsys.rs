//! Reduced crystallographic root systems of small rank in exact rational
//! coordinates, with full Weyl group enumeration and extended bases.
//!
//! Realizations use the classical orthogonal ε-coordinates: Aₙ in the
//! sum-zero hyperplane of ℚ^{n+1}, Bₙ/Cₙ in ℚⁿ, Dₙ in ℚⁿ, G₂ in ℚ³.
//! A preset additionally fixes the character lattice X ≅ ℤ^cartan_rank by a
//! basis matrix expressing the simple roots in X, which encodes the isogeny.

use crate::exact::{rat, Rat};
use num_traits::Zero;
use serde::{Deserialize, Serialize};
use std::collections::VecDeque;
use std::fmt;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum TypeLetter {
    A,
    B,
    C,
    D,
    G,
}

impl fmt::Display for TypeLetter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self)
    }
}

/// Cartan type plus lattice data: the isogeny class of the group.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CartanSpec {
    pub factors: Vec<(TypeLetter, u8)>,
    /// Rows express the simple roots (in the order produced by `build`) in a
    /// fixed basis of the character lattice X ≅ ℤ^cartan_rank.
    #[serde(rename = "latticeBasis")]
    pub lattice_basis: Vec<Vec<i64>>,
    pub name: String,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum RootSysError {
    #[error("unsupported type {0}{1}")]
    UnsupportedType(String, u8),
    #[error("total rank {0} exceeds the supported bound 4")]
    RankTooLarge(usize),
    #[error("unknown preset {0:?}")]
    UnknownPreset(String),
    #[error("lattice basis shape mismatch: {0} simple roots, {1} rows")]
    LatticeShape(usize, usize),
}

pub type Vector = Vec<Rat>;

fn dot(a: &[Rat], b: &[Rat]) -> Rat {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn neg(v: &[Rat]) -> Vector {
    v.iter().map(|x| -x.clone()).collect()
}

/// Root system in exact coordinates. Roots are indexed; `coroot[i]` is
/// 2·roots[i]/(roots[i],roots[i]).
#[derive(Debug, Clone)]
pub struct RootSystem {
    pub roots: Vec<Vector>,
    pub positive: Vec<usize>,
    pub simple: Vec<usize>,
    pub coroots: Vec<Vector>,
    /// index of -roots[i]
    pub negation: Vec<usize>,
    /// ambient dimension of the realization
    pub ambient_dim: usize,
    /// root index per irreducible factor
    pub factor_of: Vec<usize>,
    pub n_factors: usize,
    /// basis of the Cartan subspace 𝔱 (cocharacter span) inside the ambient space
    pub cartan_basis: Vec<Vector>,
    /// basis of the central directions 𝔱 ∩ (span Φ)^⊥
    pub center_basis: Vec<Vector>,
    /// simple-root coordinates of each root (integer entries)
    pub simple_coords: Vec<Vec<i64>>,
    /// character-lattice coordinates of each root
    pub lattice_coords: Vec<Vec<i64>>,
    /// rank of the character lattice (dimension of T)
    pub cartan_rank: usize,
}

impl RootSystem {
    pub fn index_of(&self, v: &[Rat]) -> Option<usize> {
        self.roots.iter().position(|r| r == v)
    }

    pub fn rank(&self) -> usize {
        self.simple.len()
    }

    pub fn n_positive(&self) -> usize {
        self.positive.len()
    }

    /// ⟨β, α∨⟩ Cartan pairing.
    pub fn pairing(&self, beta: usize, alpha: usize) -> Rat {
        dot(&self.roots[beta], &self.coroots[alpha])
    }

    /// Highest root of each irreducible factor: dominant and maximal in the
    /// root order.
    pub fn highest_roots(&self) -> Vec<usize> {
        let mut out = Vec::new();
        for f in 0..self.n_factors {
            let mut best: Option<usize> = None;
            for (i, _) in self.roots.iter().enumerate() {
                if self.factor_of[i] != f {
                    continue;
                }
                let ht: Rat = self.simple_coords[i].iter().map(|c| rat(*c)).sum();
                match best {
                    None => best = Some(i),
                    Some(b) => {
                        let bht: Rat = self.simple_coords[b].iter().map(|c| rat(*c)).sum();
                        if ht > bht {
                            best = Some(i);
                        }
                    }
                }
            }
            out.push(best.expect("nonempty factor"));
        }
        out
    }
}

/// Weyl group element: a permutation of the root list plus its orthogonal
/// matrix on the ambient space.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeylElem {
    pub perm: Vec<u32>,
    pub matrix: Vec<Vector>, // rows
}

impl WeylElem {
    pub fn apply(&self, v: &[Rat]) -> Vector {
        self.matrix.iter().map(|row| dot(row, v)).collect()
    }
}

#[derive(Debug, Clone)]
pub struct WeylGroup {
    pub elements: Vec<WeylElem>,
    /// indices into `elements` of the simple reflections
    pub simple_reflections: Vec<usize>,
}

impl WeylGroup {
    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn identity_index(&self) -> usize {
        self.elements
            .iter()
            .position(|e| e.perm.iter().enumerate().all(|(i, &p)| p as usize == i))
            .expect("identity present")
    }
}

/// Δ ⊔ {−θ} per irreducible factor, with the affine marks c_i in
/// θ = Σ c_i α_i.
#[derive(Debug, Clone)]
pub struct ExtendedBase {
    pub factors: Vec<ExtendedFactor>,
}

#[derive(Debug, Clone)]
pub struct ExtendedFactor {
    pub simples: Vec<usize>,
    pub lowest: usize, // index of -θ
    pub marks: Vec<i64>,
}

/// Construct the root system, Weyl group, and extended base for a spec.
pub fn build(spec: &CartanSpec) -> Result<(RootSystem, WeylGroup, ExtendedBase), RootSysError> {
    let total_rank: usize = spec.factors.iter().map(|&(_, r)| r as usize).sum();
    if total_rank > 4 {
        return Err(RootSysError::RankTooLarge(total_rank));
    }
    let mut simple_vecs: Vec<Vector> = Vec::new();
    let mut all_roots: Vec<(Vector, usize)> = Vec::new();
    let mut offset = 0usize;
    let mut ambient = 0usize;
    for (f, &(letter, rank)) in spec.factors.iter().enumerate() {
        let (simples, roots) = factor_realization(letter, rank)?;
        let dim = simples[0].len();
        for s in &simples {
            let mut v = vec![Rat::zero(); ambient];
            v.extend(s.iter().cloned());
            simple_vecs.push(v);
        }
        for r in &roots {
            let mut v = vec![Rat::zero(); ambient];
            v.extend(r.iter().cloned());
            all_roots.push((v, f));
        }
        ambient += dim;
        offset += rank as usize;
    }
    let _ = offset;
    // pad all vectors to the final ambient dimension
    for v in simple_vecs.iter_mut() {
        v.resize(ambient, Rat::zero());
    }
    for (v, _) in all_roots.iter_mut() {
        v.resize(ambient, Rat::zero());
    }
    if spec.lattice_basis.len() != simple_vecs.len() {
        return Err(RootSysError::LatticeShape(simple_vecs.len(), spec.lattice_basis.len()));
    }
    let cartan_rank = spec.lattice_basis.first().map_or(0, |r| r.len());

    let roots: Vec<Vector> = all_roots.iter().map(|(v, _)| v.clone()).collect();
    let factor_of: Vec<usize> = all_roots.iter().map(|(_, f)| *f).collect();
    let coroots: Vec<Vector> = roots
        .iter()
        .map(|r| {
            let n = dot(r, r);
            r.iter().map(|x| x * &rat(2) / &n).collect()
        })
        .collect();
    let negation: Vec<usize> = roots
        .iter()
        .map(|r| roots.iter().position(|s| *s == neg(r)).expect("closed under negation"))
        .collect();
    // simple coordinates: solve r = sum c_i simple_i, integer entries
    let simple_idx: Vec<usize> = simple_vecs
        .iter()
        .map(|s| roots.iter().position(|r| r == s).expect("simple root present"))
        .collect();
    let simple_coords: Vec<Vec<i64>> = roots
        .iter()
        .map(|r| solve_integer_combination(&simple_vecs, r).expect("root in simple span"))
        .collect();
    let positive: Vec<usize> = (0..roots.len())
        .filter(|&i| {
            let c = &simple_coords[i];
            c.iter().any(|&x| x > 0) && c.iter().all(|&x| x >= 0)
        })
        .collect();
    assert_eq!(positive.len() * 2, roots.len());
    // lattice coordinates of each root via its simple coordinates
    let lattice_coords: Vec<Vec<i64>> = simple_coords
        .iter()
        .map(|c| {
            (0..cartan_rank)
                .map(|j| c.iter().zip(&spec.lattice_basis).map(|(ci, row)| ci * row[j]).sum())
                .collect()
        })
        .collect();
    // Cartan subspace: span of coroots plus, when the lattice has more rank
    // than the semisimple rank, central directions orthogonal to all roots.
    let mut cartan_basis: Vec<Vector> = Vec::new();
    for &s in &simple_idx {
        cartan_basis.push(coroots[s].clone());
    }
    let central_dims = cartan_rank.saturating_sub(simple_idx.len());
    let mut center_basis = orthogonal_complement(&roots, ambient);
    center_basis.truncate(central_dims);
    assert_eq!(center_basis.len(), central_dims, "center dimension from lattice");
    cartan_basis.extend(center_basis.iter().cloned());

    let rs = RootSystem {
        roots,
        positive,
        simple: simple_idx,
        coroots,
        negation,
        ambient_dim: ambient,
        factor_of,
        n_factors: spec.factors.len(),
        cartan_basis,
        center_basis,
        simple_coords,
        lattice_coords,
        cartan_rank,
    };
    let weyl = enumerate_weyl(&rs);
    let ext = extended_base(&rs);
    Ok((rs, weyl, ext))
}

fn factor_realization(letter: TypeLetter, rank: u8) -> Result<(Vec<Vector>, Vec<Vector>), RootSysError> {
    let n = rank as usize;
    let e = |i: usize, dim: usize| -> Vector {
        (0..dim).map(|j| if j == i { rat(1) } else { rat(0) }).collect()
    };
    let sub = |a: &Vector, b: &Vector| -> Vector { a.iter().zip(b).map(|(x, y)| x - y).collect() };
    let add = |a: &Vector, b: &Vector| -> Vector { a.iter().zip(b).map(|(x, y)| x + y).collect() };
    let scale = |a: &Vector, c: i64| -> Vector { a.iter().map(|x| x * &rat(c)).collect() };
    match (letter, rank) {
        (TypeLetter::A, 1..=4) => {
            let dim = n + 1;
            let simples: Vec<Vector> = (0..n).map(|i| sub(&e(i, dim), &e(i + 1, dim))).collect();
            let mut roots = Vec::new();
            for i in 0..dim {
                for j in 0..dim {
                    if i != j {
                        roots.push(sub(&e(i, dim), &e(j, dim)));
                    }
                }
            }
            Ok((simples, roots))
        }
        (TypeLetter::B, 2..=4) => {
            let dim = n;
            let mut simples: Vec<Vector> = (0..n - 1).map(|i| sub(&e(i, dim), &e(i + 1, dim))).collect();
            simples.push(e(n - 1, dim));
            let mut roots = Vec::new();
            for i in 0..n {
                roots.push(e(i, dim));
                roots.push(neg(&e(i, dim)));
                for j in (i + 1)..n {
                    for (si, sj) in [(1, 1), (1, -1), (-1, 1), (-1, -1)] {
                        roots.push(add(&scale(&e(i, dim), si), &scale(&e(j, dim), sj)));
                    }
                }
            }
            Ok((simples, roots))
        }
        (TypeLetter::C, 2..=4) => {
            let dim = n;
            let mut simples: Vec<Vector> = (0..n - 1).map(|i| sub(&e(i, dim), &e(i + 1, dim))).collect();
            simples.push(scale(&e(n - 1, dim), 2));
            let mut roots = Vec::new();
            for i in 0..n {
                roots.push(scale(&e(i, dim), 2));
                roots.push(scale(&e(i, dim), -2));
                for j in (i + 1)..n {
                    for (si, sj) in [(1, 1), (1, -1), (-1, 1), (-1, -1)] {
                        roots.push(add(&scale(&e(i, dim), si), &scale(&e(j, dim), sj)));
                    }
                }
            }
            Ok((simples, roots))
        }
        (TypeLetter::D, 4) => {
            let dim = n;
            let mut simples: Vec<Vector> = (0..n - 1).map(|i| sub(&e(i, dim), &e(i + 1, dim))).collect();
            simples.push(add(&e(n - 2, dim), &e(n - 1, dim)));
            let mut roots = Vec::new();
            for i in 0..n {
                for j in (i + 1)..n {
                    for (si, sj) in [(1, 1), (1, -1), (-1, 1), (-1, -1)] {
                        roots.push(add(&scale(&e(i, dim), si), &scale(&e(j, dim), sj)));
                    }
                }
            }
            Ok((simples, roots))
        }
        (TypeLetter::G, 2) => {
            // G2 in the sum-zero hyperplane of Q^3
            let dim = 3;
            let a1 = sub(&e(0, dim), &e(1, dim)); // short
            let a2: Vector = vec![rat(-2), rat(1), rat(1)]; // long
            let simples = vec![a1.clone(), a2.clone()];
            let combos: [(i64, i64); 6] = [(1, 0), (0, 1), (1, 1), (2, 1), (3, 1), (3, 2)];
            let mut roots = Vec::new();
            for (c1, c2) in combos {
                let r = add(&scale(&a1, c1), &scale(&a2, c2));
                roots.push(neg(&r));
                roots.push(r);
            }
            Ok((simples, roots))
        }
        _ => Err(RootSysError::UnsupportedType(letter.to_string(), rank)),
    }
}

fn solve_integer_combination(basis: &[Vector], target: &Vector) -> Option<Vec<i64>> {
    // Gaussian elimination over Q on [basis^T | target]
    let dim = target.len();
    let k = basis.len();
    let mut m: Vec<Vector> = (0..dim)
        .map(|i| {
            let mut row: Vector = basis.iter().map(|b| b[i].clone()).collect();
            row.push(target[i].clone());
            row
        })
        .collect();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..k {
        if let Some(p) = (r..dim).find(|&i| !m[i][c].is_zero()) {
            m.swap(r, p);
            let inv = Rat::one_over(&m[r][c]);
            for x in m[r].iter_mut() {
                *x = &*x * &inv;
            }
            for i in 0..dim {
                if i != r && !m[i][c].is_zero() {
                    let f = m[i][c].clone();
                    for j in 0..=k {
                        let sub = &f * &m[r][j];
                        m[i][j] = &m[i][j] - &sub;
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
    }
    // consistency
    for i in r..dim {
        if !m[i][k].is_zero() {
            return None;
        }
    }
    let mut coeffs = vec![0i64; k];
    for (row, &c) in pivots.iter().enumerate() {
        let v = &m[row][k];
        if !v.is_integer() {
            return None;
        }
        coeffs[c] = int_to_i64(v);
    }
    Some(coeffs)
}

fn int_to_i64(v: &Rat) -> i64 {
    use num_traits::ToPrimitive;
    v.to_integer().to_i64().expect("small integer")
}

trait OneOver {
    fn one_over(x: &Rat) -> Rat;
}
impl OneOver for Rat {
    fn one_over(x: &Rat) -> Rat {
        Rat::from_integer(1.into()) / x
    }
}

fn orthogonal_complement(roots: &[Vector], ambient: usize) -> Vec<Vector> {
    // kernel of the matrix with rows = roots
    let mut m: Vec<Vector> = roots.to_vec();
    let mut pivots: Vec<usize> = Vec::new();
    let mut r = 0;
    for c in 0..ambient {
        if let Some(p) = (r..m.len()).find(|&i| !m[i][c].is_zero()) {
            m.swap(r, p);
            let inv = Rat::one_over(&m[r][c]);
            for x in m[r].iter_mut() {
                *x = &*x * &inv;
            }
            for i in 0..m.len() {
                if i != r && !m[i][c].is_zero() {
                    let f = m[i][c].clone();
                    for j in 0..ambient {
                        let sub = &f * &m[r][j];
                        m[i][j] = &m[i][j] - &sub;
                    }
                }
            }
            pivots.push(c);
            r += 1;
            if r == m.len() {
                break;
            }
        }
    }
    let mut out = Vec::new();
    for free in (0..ambient).filter(|c| !pivots.contains(c)) {
        let mut v = vec![Rat::zero(); ambient];
        v[free] = rat(1);
        for (row, &p) in pivots.iter().enumerate() {
            v[p] = -m[row][free].clone();
        }
        out.push(v);
    }
    out
}

fn enumerate_weyl(rs: &RootSystem) -> WeylGroup {
    let _n = rs.roots.len();
    let dim = rs.ambient_dim;
    let reflect = |alpha: usize, v: &[Rat]| -> Vector {
        let a = &rs.roots[alpha];
        let c = dot(v, &rs.coroots[alpha]);
        v.iter().zip(a).map(|(x, y)| x - &(&c * y)).collect()
    };
    let perm_of_matrix = |rows: &[Vector]| -> Vec<u32> {
        rs.roots
            .iter()
            .map(|r| {
                let img: Vector = rows.iter().map(|row| dot(row, r)).collect();
                rs.index_of(&img).expect("Weyl permutes roots") as u32
            })
            .collect()
    };
    let mut gens: Vec<Vec<Vector>> = Vec::new();
    for &s in &rs.simple {
        let rows: Vec<Vector> = (0..dim)
            .map(|i| {
                let ei: Vector = (0..dim).map(|j| if i == j { rat(1) } else { rat(0) }).collect();
                reflect(s, &ei)
            })
            .collect();
        // rows currently give columns of the reflection; reflections are
        // symmetric so rows == columns
        gens.push(rows);
    }
    let id_rows: Vec<Vector> = (0..dim)
        .map(|i| (0..dim).map(|j| if i == j { rat(1) } else { rat(0) }).collect())
        .collect();
    let mut elements: Vec<WeylElem> = Vec::new();
    let mut seen = std::collections::HashSet::new();
    let mut queue = VecDeque::new();
    let id_perm = perm_of_matrix(&id_rows);
    seen.insert(id_perm.clone());
    queue.push_back(WeylElem { perm: id_perm, matrix: id_rows });
    while let Some(w) = queue.pop_front() {
        for g in &gens {
            // compose: (g ∘ w) as matrices: rows of g times matrix of w
            let rows: Vec<Vector> = g
                .iter()
                .map(|grow| {
                    (0..dim)
                        .map(|j| {
                            (0..dim)
                                .map(|k| &grow[k] * &w.matrix[k][j])
                                .fold(Rat::zero(), |a, b| a + b)
                        })
                        .collect()
                })
                .collect();
            let perm = perm_of_matrix(&rows);
            if seen.insert(perm.clone()) {
                queue.push_back(WeylElem { perm, matrix: rows });
            }
        }
        elements.push(w);
    }
    let simple_reflections = rs
        .simple
        .iter()
        .map(|&s| {
            let rows: Vec<Vector> = (0..dim)
                .map(|i| {
                    let ei: Vector = (0..dim).map(|j| if i == j { rat(1) } else { rat(0) }).collect();
                    reflect(s, &ei)
                })
                .collect();
            let perm = perm_of_matrix(&rows);
            elements.iter().position(|e| e.perm == perm).expect("generator enumerated")
        })
        .collect();
    WeylGroup { elements, simple_reflections }
}

fn extended_base(rs: &RootSystem) -> ExtendedBase {
    let highest = rs.highest_roots();
    let mut factors = Vec::new();
    for (f, &theta) in highest.iter().enumerate() {
        let simples: Vec<usize> =
            rs.simple.iter().copied().filter(|&s| rs.factor_of[s] == f).collect();
        let lowest = rs.negation[theta];
        let marks: Vec<i64> = rs
            .simple
            .iter()
            .enumerate()
            .filter(|(_, &s)| rs.factor_of[s] == f)
            .map(|(si, _)| rs.simple_coords[theta][si])
            .collect();
        factors.push(ExtendedFactor { simples, lowest, marks });
    }
    ExtendedBase { factors }
}

// ---- presets ----

/// Named presets: exactly the groups the counting pipeline supports.
pub fn preset(name: &str) -> Result<CartanSpec, RootSysError> {
    let spec = match name {
        "SL2" => CartanSpec {
            factors: vec![(TypeLetter::A, 1)],
            lattice_basis: vec![vec![2]],
            name: "SL2".into(),
        },
        "GL2" => CartanSpec {
            factors: vec![(TypeLetter::A, 1)],
            lattice_basis: vec![vec![1, -1]],
            name: "GL2".into(),
        },
        "Sp4" => CartanSpec {
            factors: vec![(TypeLetter::C, 2)],
            lattice_basis: vec![vec![1, -1], vec![0, 2]],
            name: "Sp4".into(),
        },
        "SO5" => CartanSpec {
            factors: vec![(TypeLetter::B, 2)],
            lattice_basis: vec![vec![1, -1], vec![0, 1]],
            name: "SO5".into(),
        },
        "SL2xSL2" => CartanSpec {
            factors: vec![(TypeLetter::A, 1), (TypeLetter::A, 1)],
            lattice_basis: vec![vec![2, 0], vec![0, 2]],
            name: "SL2xSL2".into(),
        },
        other => return Err(RootSysError::UnknownPreset(other.into())),
    };
    Ok(spec)
}

pub const PRESET_NAMES: &[&str] = &["SL2", "GL2", "Sp4", "SO5", "SL2xSL2"];

/// Bare root-system specs for the poset test systems (lattice = root lattice).
pub fn simple_system(letter: TypeLetter, rank: u8) -> CartanSpec {
    let n = rank as usize;
    // root-lattice coordinates: simple roots are the standard basis
    let lattice_basis = (0..n)
        .map(|i| (0..n).map(|j| if i == j { 1 } else { 0 }).collect())
        .collect();
    CartanSpec { factors: vec![(letter, rank)], lattice_basis, name: format!("{letter}{rank}") }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn counts(name: &str) -> (usize, usize) {
        let (rs, w, _) = build(&preset(name).unwrap()).unwrap();
        (rs.roots.len(), w.order())
    }

    #[test]
    fn classical_counts() {
        assert_eq!(counts("SL2"), (2, 2));
        assert_eq!(counts("GL2"), (2, 2));
        assert_eq!(counts("Sp4"), (8, 8));
        assert_eq!(counts("SO5"), (8, 8));
        assert_eq!(counts("SL2xSL2"), (4, 4));
        let (rs, w, _) = build(&simple_system(TypeLetter::G, 2)).unwrap();
        assert_eq!((rs.roots.len(), w.order()), (12, 12));
        let (rs, w, _) = build(&simple_system(TypeLetter::A, 2)).unwrap();
        assert_eq!((rs.roots.len(), w.order()), (6, 6));
        let (rs, w, _) = build(&simple_system(TypeLetter::B, 3)).unwrap();
        assert_eq!((rs.roots.len(), w.order()), (18, 48));
        let (rs, w, _) = build(&simple_system(TypeLetter::A, 4)).unwrap();
        assert_eq!((rs.roots.len(), w.order()), (20, 120));
        let (rs, w, _) = build(&simple_system(TypeLetter::D, 4)).unwrap();
        assert_eq!((rs.roots.len(), w.order()), (24, 192));
        let (rs, w, _) = build(&simple_system(TypeLetter::C, 4)).unwrap();
        assert_eq!((rs.roots.len(), w.order()), (32, 384));
    }

    #[test]
    fn rank_guard() {
        let spec = CartanSpec {
            factors: vec![(TypeLetter::C, 4), (TypeLetter::A, 1)],
            lattice_basis: vec![],
            name: "too-big".into(),
        };
        assert!(matches!(build(&spec), Err(RootSysError::RankTooLarge(5))));
    }

    #[test]
    fn cartan_integers_are_small() {
        for name in PRESET_NAMES {
            let (rs, _, _) = build(&preset(name).unwrap()).unwrap();
            for b in 0..rs.roots.len() {
                for a in 0..rs.roots.len() {
                    let p = rs.pairing(b, a);
                    assert!(p.is_integer());
                    let v = int_to_i64(&p).abs();
                    assert!(v <= 3, "pairing {v}");
                }
            }
        }
    }

    #[test]
    fn weyl_preserves_inner_product_and_roots() {
        let (rs, w, _) = build(&preset("Sp4").unwrap()).unwrap();
        for e in &w.elements {
            for i in 0..rs.ambient_dim {
                for j in 0..rs.ambient_dim {
                    let ei: Vector =
                        (0..rs.ambient_dim).map(|k| if k == i { rat(1) } else { rat(0) }).collect();
                    let ej: Vector =
                        (0..rs.ambient_dim).map(|k| if k == j { rat(1) } else { rat(0) }).collect();
                    assert_eq!(dot(&e.apply(&ei), &e.apply(&ej)), dot(&ei, &ej));
                }
            }
            // permutation is consistent with the matrix
            for (i, r) in rs.roots.iter().enumerate() {
                assert_eq!(rs.roots[e.perm[i] as usize], e.apply(r));
            }
        }
    }

    #[test]
    fn c2_highest_root_and_extended_base() {
        let (rs, _, ext) = build(&preset("Sp4").unwrap()).unwrap();
        let theta = rs.highest_roots()[0];
        assert_eq!(rs.roots[theta], vec![rat(2), rat(0)]);
        let f = &ext.factors[0];
        assert_eq!(f.marks, vec![2, 1]); // theta = 2a1 + a2
        assert_eq!(rs.roots[f.lowest], vec![rat(-2), rat(0)]);
        // affine relation: theta = sum of marks * simples
        let mut acc = vec![Rat::zero(); rs.ambient_dim];
        for (m, &s) in f.marks.iter().zip(&f.simples) {
            for (k, x) in rs.roots[s].iter().enumerate() {
                acc[k] += x * &rat(*m);
            }
        }
        assert_eq!(acc, rs.roots[theta]);
    }

    #[test]
    fn a1_extended_base_is_plus_minus_alpha() {
        let (rs, w, ext) = build(&preset("SL2").unwrap()).unwrap();
        assert_eq!(w.order(), 2);
        let f = &ext.factors[0];
        assert_eq!(rs.roots[f.lowest], neg(&rs.roots[f.simples[0]]));
    }

    #[test]
    fn weyl_action_example_swap() {
        // in C2, s_{e1-e2} applied to (3,6) gives (6,3)
        let (rs, w, _) = build(&preset("Sp4").unwrap()).unwrap();
        let alpha = rs.index_of(&vec![rat(1), rat(-1)]).unwrap();
        let refl = w
            .elements
            .iter()
            .find(|e| {
                e.perm[alpha] as usize == rs.negation[alpha]
                    && e.apply(&vec![rat(3), rat(6)]) == vec![rat(6), rat(3)]
            })
            .expect("reflection swaps coordinates");
        assert_eq!(refl.apply(&rs.roots[alpha]), neg(&rs.roots[alpha]));
    }

    #[test]
    fn closure_under_simple_reflections() {
        // applying simple reflections to the enumerated group adds nothing
        let (rs, w, _) = build(&preset("SO5").unwrap()).unwrap();
        let perms: std::collections::HashSet<_> =
            w.elements.iter().map(|e| e.perm.clone()).collect();
        for e in &w.elements {
            for &s in &w.simple_reflections {
                let sp = &w.elements[s].perm;
                let comp: Vec<u32> = (0..rs.roots.len()).map(|i| sp[e.perm[i] as usize]).collect();
                assert!(perms.contains(&comp));
            }
        }
    }

    #[test]
    fn product_preset_has_two_highest_roots() {
        let (rs, _, _) = build(&preset("SL2xSL2").unwrap()).unwrap();
        assert_eq!(rs.highest_roots().len(), 2);
    }

    #[test]
    fn gl2_center_direction() {
        let (rs, _, _) = build(&preset("GL2").unwrap()).unwrap();
        assert_eq!(rs.center_basis.len(), 1);
        assert!(dot(&rs.center_basis[0], &rs.roots[0]).is_zero());
        assert_eq!(rs.cartan_rank, 2);
        // SL2 has no central direction (lattice rank 1)
        let (rs2, _, _) = build(&preset("SL2").unwrap()).unwrap();
        assert!(rs2.center_basis.is_empty());
        assert_eq!(rs2.cartan_basis.len(), 1);
    }
}
