//! Subsystem closures, the standard Levi poset 𝓛(G) and standard pseudo-Levi
//! poset 𝓔(G), isolation tests, W-orbits, and Möbius functions.
//!
//! "Standard" means relative to the fixed torus: 𝓛(G) is every ℚ-closed
//! subsystem Φ ∩ U, 𝓔(G) every subsystem closed in the root lattice
//! (optionally in the preset's character lattice).

use crate::exact::{rat, IntMat, Rat};
use crate::rootsys::{RootSystem, WeylGroup};
use num_traits::Zero;
use std::collections::{BTreeSet, HashMap, HashSet};

/// Set of root indices closed under negation and its own reflections.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Subsystem {
    pub roots: BTreeSet<u32>,
}

impl Subsystem {
    pub fn empty() -> Self {
        Subsystem { roots: BTreeSet::new() }
    }

    pub fn from_indices(idx: impl IntoIterator<Item = u32>) -> Self {
        Subsystem { roots: idx.into_iter().collect() }
    }

    pub fn len(&self) -> usize {
        self.roots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.roots.is_empty()
    }

    pub fn is_subset(&self, other: &Subsystem) -> bool {
        self.roots.is_subset(&other.roots)
    }

    pub fn rank(&self, rs: &RootSystem) -> usize {
        rational_rank(&vectors_of(rs, self))
    }
}

fn vectors_of(rs: &RootSystem, s: &Subsystem) -> Vec<Vec<Rat>> {
    s.roots.iter().map(|&i| rs.roots[i as usize].clone()).collect()
}

fn rational_rank(vecs: &[Vec<Rat>]) -> usize {
    if vecs.is_empty() {
        return 0;
    }
    let mut m: Vec<Vec<Rat>> = vecs.to_vec();
    let cols = m[0].len();
    let mut r = 0;
    for c in 0..cols {
        if let Some(p) = (r..m.len()).find(|&i| !m[i][c].is_zero()) {
            m.swap(r, p);
            let pivot = m[r][c].clone();
            for i in 0..m.len() {
                if i != r && !m[i][c].is_zero() {
                    let f = &m[i][c] / &pivot;
                    for j in 0..cols {
                        let sub = &f * &m[r][j];
                        m[i][j] = &m[i][j] - &sub;
                    }
                }
            }
            r += 1;
            if r == m.len() {
                break;
            }
        }
    }
    r
}

/// Is `target` in the ℚ-span of `vecs`?
fn in_rational_span(vecs: &[Vec<Rat>], target: &[Rat]) -> bool {
    if vecs.is_empty() {
        return target.iter().all(|x| x.is_zero());
    }
    let mut all: Vec<Vec<Rat>> = vecs.to_vec();
    let before = rational_rank(&all);
    all.push(target.to_vec());
    rational_rank(&all) == before
}

/// Is `target` in the ℤ-span of integer vectors `vecs`? Uses the Smith form
/// of the generator matrix.
fn in_integer_span(vecs: &[Vec<i64>], target: &[i64]) -> bool {
    if vecs.is_empty() {
        return target.iter().all(|&x| x == 0);
    }
    let m = IntMat::from_rows(vecs.to_vec());
    let snf = m.snf();
    // rows span L; target ∈ L iff target·V has entries divisible by the
    // diagonal (U·M·V = D means L = row-span(D·V⁻¹·…)); work instead via
    // solving x·M = target over ℚ and checking x·U⁻¹-integrality through D:
    // target ∈ rowspan_Z(M) ⟺ target·V = y·D for integer y.
    let cols = m.cols;
    let tv: Vec<Rat> = (0..cols)
        .map(|j| {
            (0..cols)
                .map(|k| rat(target[k]) * Rat::from_integer(snf.v[(k, j)].clone()))
                .fold(Rat::zero(), |a, b| a + b)
        })
        .collect();
    let n = m.rows.min(m.cols);
    for j in 0..cols {
        let d = if j < n { snf.d[(j, j)].clone() } else { num_bigint::BigInt::zero() };
        if d.is_zero() {
            if !tv[j].is_zero() {
                return false;
            }
        } else {
            let y = &tv[j] / &Rat::from_integer(d);
            if !y.is_integer() {
                return false;
            }
        }
    }
    true
}

/// Which lattice ℤ-closure is computed against.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ClosureLattice {
    /// The root lattice ⟨Φ⟩_ℤ in the realization (the paper's setting for
    /// simply connected derived subgroup).
    #[default]
    RootLattice,
    /// The preset's character lattice X (differs for non-simply-connected
    /// presets such as SO5).
    CharacterLattice,
}

/// ⟨S⟩_ℤ ∩ Φ.
pub fn zclosure(rs: &RootSystem, s: &Subsystem, lattice: ClosureLattice) -> Subsystem {
    let coords: &dyn Fn(usize) -> Vec<i64> = match lattice {
        ClosureLattice::RootLattice => &|i| rs.simple_coords[i].clone(),
        ClosureLattice::CharacterLattice => &|i| rs.lattice_coords[i].clone(),
    };
    let gens: Vec<Vec<i64>> = s.roots.iter().map(|&i| coords(i as usize)).collect();
    let out = (0..rs.roots.len())
        .filter(|&i| in_integer_span(&gens, &coords(i)))
        .map(|i| i as u32)
        .collect();
    Subsystem { roots: out }
}

/// span_ℚ(S) ∩ Φ.
pub fn qclosure(rs: &RootSystem, s: &Subsystem) -> Subsystem {
    let gens = vectors_of(rs, s);
    let out = (0..rs.roots.len())
        .filter(|&i| in_rational_span(&gens, &rs.roots[i]))
        .map(|i| i as u32)
        .collect();
    Subsystem { roots: out }
}

/// ℚ-closure within an ambient subsystem: span_ℚ(S) ∩ Φ_E (the Levi closure
/// of the reductive subgroup with root system Φ_E).
pub fn qclosure_within(rs: &RootSystem, s: &Subsystem, ambient: &Subsystem) -> Subsystem {
    let gens = vectors_of(rs, s);
    let out = ambient
        .roots
        .iter()
        .copied()
        .filter(|&i| in_rational_span(&gens, &rs.roots[i as usize]))
        .collect();
    Subsystem { roots: out }
}

/// The unique minimal Levi subsystem containing Ψ: its rational closure.
pub fn minimal_levi(rs: &RootSystem, s: &Subsystem) -> Subsystem {
    qclosure(rs, s)
}

/// Ψ is isolated iff its minimal Levi is the whole system.
pub fn is_isolated(rs: &RootSystem, s: &Subsystem) -> bool {
    qclosure(rs, s).len() == rs.roots.len()
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PosetError {
    #[error("elements are not comparable in the poset")]
    NotComparable,
    #[error("subsystem is not a member of the poset")]
    NotMember,
}

/// Finite poset of subsystems under inclusion, with a memoized Möbius table.
#[derive(Debug, Clone)]
pub struct Poset {
    pub elems: Vec<Subsystem>,
    index: HashMap<Subsystem, usize>,
    leq: Vec<Vec<bool>>,
    mobius: std::cell::RefCell<HashMap<(usize, usize), i64>>,
}

impl Poset {
    pub fn new(mut elems: Vec<Subsystem>) -> Self {
        elems.sort_by(|a, b| (a.len(), a).cmp(&(b.len(), b)));
        elems.dedup();
        let n = elems.len();
        let leq = (0..n)
            .map(|i| (0..n).map(|j| elems[i].is_subset(&elems[j])).collect())
            .collect();
        let index = elems.iter().cloned().enumerate().map(|(i, e)| (e, i)).collect();
        Poset { elems, index, leq, mobius: Default::default() }
    }

    pub fn len(&self) -> usize {
        self.elems.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elems.is_empty()
    }

    pub fn index_of(&self, s: &Subsystem) -> Option<usize> {
        self.index.get(s).copied()
    }

    pub fn leq(&self, i: usize, j: usize) -> bool {
        self.leq[i][j]
    }

    /// μ(x, y) by the standard recursion, memoized.
    pub fn mobius(&self, x: usize, y: usize) -> Result<i64, PosetError> {
        if !self.leq[x][y] {
            return Err(PosetError::NotComparable);
        }
        Ok(self.mobius_unchecked(x, y))
    }

    fn mobius_unchecked(&self, x: usize, y: usize) -> i64 {
        if x == y {
            return 1;
        }
        if let Some(&v) = self.mobius.borrow().get(&(x, y)) {
            return v;
        }
        let mut acc = 0i64;
        for z in 0..self.elems.len() {
            if z != y && self.leq[x][z] && self.leq[z][y] {
                acc += self.mobius_unchecked(x, z);
            }
        }
        let v = -acc;
        self.mobius.borrow_mut().insert((x, y), v);
        v
    }

    /// Partition into W-orbits; returns (representative index, orbit indices).
    pub fn w_orbits(&self, weyl: &WeylGroup) -> Vec<(usize, Vec<usize>)> {
        let mut seen = vec![false; self.elems.len()];
        let mut out = Vec::new();
        for i in 0..self.elems.len() {
            if seen[i] {
                continue;
            }
            let mut orbit = BTreeSet::new();
            for w in &weyl.elements {
                let img = Subsystem::from_indices(
                    self.elems[i].roots.iter().map(|&r| w.perm[r as usize]),
                );
                let j = self
                    .index_of(&img)
                    .expect("W permutes the poset (closure is W-equivariant)");
                orbit.insert(j);
            }
            for &j in &orbit {
                seen[j] = true;
            }
            out.push((i, orbit.into_iter().collect()));
        }
        out
    }
}

/// Every ℤ-closed subsystem: the closure of each ≤ rank-sized subset of Φ⁺,
/// deduplicated. Complete because a subsystem is generated by a base inside
/// Φ⁺ of size equal to its rank.
pub fn enumerate_pseudo_levis(rs: &RootSystem, lattice: ClosureLattice) -> Poset {
    enumerate_closed(rs, |s| zclosure(rs, s, lattice))
}

/// Every ℚ-closed subsystem.
pub fn enumerate_levis(rs: &RootSystem) -> Poset {
    enumerate_closed(rs, |s| qclosure(rs, s))
}

fn enumerate_closed(rs: &RootSystem, close: impl Fn(&Subsystem) -> Subsystem) -> Poset {
    let pos = &rs.positive;
    let rank = rs.rank();
    let mut seen = HashSet::new();
    seen.insert(close(&Subsystem::empty()));
    let mut stack: Vec<(usize, Vec<u32>)> = vec![(0, Vec::new())];
    while let Some((start, chosen)) = stack.pop() {
        if chosen.len() < rank {
            for k in start..pos.len() {
                let mut next = chosen.clone();
                next.push(pos[k] as u32);
                seen.insert(close(&Subsystem::from_indices(next.iter().copied())));
                stack.push((k + 1, next));
            }
        }
    }
    Poset::new(seen.into_iter().collect())
}

/// Levi subsystems of the ambient subsystem `e` (ℚ-closed within Φ_e),
/// as a standalone poset.
pub fn enumerate_levis_within(rs: &RootSystem, e: &Subsystem) -> Poset {
    let pos: Vec<u32> =
        e.roots.iter().copied().filter(|&i| rs.positive.contains(&(i as usize))).collect();
    let rank = rs.rank();
    let mut seen = HashSet::new();
    seen.insert(qclosure_within(rs, &Subsystem::empty(), e));
    let mut stack: Vec<(usize, Vec<u32>)> = vec![(0, Vec::new())];
    while let Some((start, chosen)) = stack.pop() {
        if chosen.len() < rank {
            for k in start..pos.len() {
                let mut next = chosen.clone();
                next.push(pos[k]);
                seen.insert(qclosure_within(rs, &Subsystem::from_indices(next.iter().copied()), e));
                stack.push((k + 1, next));
            }
        }
    }
    Poset::new(seen.into_iter().collect())
}

/// Order of the reflection subgroup of W generated by the roots of `s`.
pub fn reflection_subgroup_order(rs: &RootSystem, weyl: &WeylGroup, s: &Subsystem) -> usize {
    reflection_subgroup_perms(rs, weyl, s).len()
}

/// The reflection subgroup of W generated by the roots of `s`, as
/// permutations of the root list.
pub fn reflection_subgroup_perms(rs: &RootSystem, weyl: &WeylGroup, s: &Subsystem) -> Vec<Vec<u32>> {
    let n = rs.roots.len();
    if s.is_empty() {
        return vec![(0..n as u32).collect()];
    }
    let mut gens: Vec<Vec<u32>> = Vec::new();
    for &i in &s.roots {
        // reflection in root i as a permutation of roots
        let w = weyl
            .elements
            .iter()
            .find(|e| {
                e.perm[i as usize] as usize == rs.negation[i as usize]
                    && (0..n).all(|j| {
                        // s_i fixes the orthogonal complement of root i
                        if rs.pairing(j, i as usize).is_zero() {
                            e.perm[j] == j as u32
                        } else {
                            true
                        }
                    })
            })
            .expect("reflection present in W");
        gens.push(w.perm.clone());
    }
    let ident: Vec<u32> = (0..n as u32).collect();
    let mut seen = HashSet::new();
    seen.insert(ident.clone());
    let mut queue = vec![ident];
    while let Some(p) = queue.pop() {
        for g in &gens {
            let comp: Vec<u32> = (0..n).map(|k| g[p[k] as usize]).collect();
            if seen.insert(comp.clone()) {
                queue.push(comp);
            }
        }
    }
    seen.into_iter().collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootsys::{build, preset, simple_system, TypeLetter};
    use rand::{Rng, SeedableRng};

    fn c2() -> (RootSystem, WeylGroup) {
        let (rs, w, _) = build(&preset("Sp4").unwrap()).unwrap();
        (rs, w)
    }

    fn sub(rs: &RootSystem, vecs: &[Vec<i64>]) -> Subsystem {
        Subsystem::from_indices(vecs.iter().map(|v| {
            let rv: Vec<Rat> = v.iter().map(|&x| rat(x)).collect();
            rs.index_of(&rv).expect("root") as u32
        }))
    }

    #[test]
    fn closures_in_c2() {
        let (rs, _) = c2();
        // a base of C2 closes to all 8 roots
        let base = sub(&rs, &[vec![1, -1], vec![0, 2]]);
        assert_eq!(zclosure(&rs, &base, ClosureLattice::RootLattice).len(), 8);
        // the two long roots close to 4 long roots only
        let longs = sub(&rs, &[vec![2, 0], vec![0, 2]]);
        let z = zclosure(&rs, &longs, ClosureLattice::RootLattice);
        assert_eq!(z.len(), 4);
        // but their rational span is the whole plane
        assert_eq!(qclosure(&rs, &longs).len(), 8);
        // a single long root spans only itself
        let one_long = sub(&rs, &[vec![2, 0]]);
        assert_eq!(qclosure(&rs, &one_long).len(), 2);
        assert!(zclosure(&rs, &Subsystem::empty(), ClosureLattice::RootLattice).is_empty());
        assert!(qclosure(&rs, &Subsystem::empty()).is_empty());
    }

    #[test]
    fn pseudo_levi_poset_of_c2() {
        let (rs, _) = c2();
        let e = enumerate_pseudo_levis(&rs, ClosureLattice::RootLattice);
        assert_eq!(e.len(), 7);
        let sizes: Vec<usize> = e.elems.iter().map(|s| s.len()).collect();
        assert_eq!(sizes, vec![0, 2, 2, 2, 2, 4, 8]);
        // isolated members: the long A1xA1 and the full system
        let iso: Vec<usize> =
            (0..e.len()).filter(|&i| is_isolated(&rs, &e.elems[i])).collect();
        let iso_sizes: Vec<usize> = iso.iter().map(|&i| e.elems[i].len()).collect();
        assert_eq!(iso_sizes, vec![4, 8]);
    }

    #[test]
    fn levi_poset_of_c2() {
        let (rs, _) = c2();
        let l = enumerate_levis(&rs);
        assert_eq!(l.len(), 6);
        // all Levis are Z-closed
        for s in &l.elems {
            assert_eq!(&zclosure(&rs, s, ClosureLattice::RootLattice), s);
        }
        // mu(empty, full) = 3 on the 6-element poset
        let bot = l.index_of(&Subsystem::empty()).unwrap();
        let top = l.len() - 1;
        assert_eq!(l.mobius(bot, top).unwrap(), 3);
    }

    #[test]
    fn a1_posets() {
        let (rs, _, _) = build(&preset("SL2").unwrap()).unwrap();
        let e = enumerate_pseudo_levis(&rs, ClosureLattice::RootLattice);
        assert_eq!(e.len(), 2);
        let l = enumerate_levis(&rs);
        assert_eq!(l.len(), 2);
        assert_eq!(l.mobius(0, 1).unwrap(), -1);
        assert!(!is_isolated(&rs, &Subsystem::empty()));
        assert!(is_isolated(&rs, &l.elems[1]));
    }

    #[test]
    fn minimal_levi_examples() {
        let (rs, _) = c2();
        let longs = sub(&rs, &[vec![2, 0], vec![0, 2]]);
        let m = minimal_levi(&rs, &zclosure(&rs, &longs, ClosureLattice::RootLattice));
        assert_eq!(m.len(), 8);
        let one = qclosure(&rs, &sub(&rs, &[vec![2, 0]]));
        assert_eq!(minimal_levi(&rs, &one), one);
        assert!(minimal_levi(&rs, &Subsystem::empty()).is_empty());
    }

    #[test]
    fn w_orbits_of_c2_levis() {
        let (rs, w) = c2();
        let l = enumerate_levis(&rs);
        let orbits = l.w_orbits(&w);
        let mut sizes: Vec<usize> = orbits.iter().map(|(_, o)| o.len()).collect();
        sizes.sort();
        assert_eq!(sizes, vec![1, 1, 2, 2]);
        let total: usize = orbits.iter().map(|(_, o)| o.len()).sum();
        assert_eq!(total, l.len());
    }

    #[test]
    fn closure_laws_on_random_subsets() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(403);
        for name in crate::rootsys::PRESET_NAMES {
            let (rs, _, _) = build(&preset(name).unwrap()).unwrap();
            for _ in 0..200 {
                let k = rng.gen_range(0..=rs.rank());
                let s = Subsystem::from_indices(
                    (0..k).map(|_| rng.gen_range(0..rs.roots.len()) as u32),
                );
                for close in [
                    &(|x: &Subsystem| zclosure(&rs, x, ClosureLattice::RootLattice))
                        as &dyn Fn(&Subsystem) -> Subsystem,
                    &(|x: &Subsystem| qclosure(&rs, x)),
                ] {
                    let c = close(&s);
                    assert!(s.is_subset(&c), "extensive");
                    assert_eq!(close(&c), c, "idempotent");
                    let mut bigger = s.clone();
                    bigger.roots.insert(rng.gen_range(0..rs.roots.len()) as u32);
                    assert!(c.is_subset(&close(&bigger)), "monotone");
                }
                // Q-closed implies Z-closed
                let qc = qclosure(&rs, &s);
                assert_eq!(zclosure(&rs, &qc, ClosureLattice::RootLattice), qc);
            }
        }
    }

    #[test]
    fn mobius_partial_order_axioms() {
        let (rs, _) = c2();
        let e = enumerate_pseudo_levis(&rs, ClosureLattice::RootLattice);
        for x in 0..e.len() {
            assert_eq!(e.mobius(x, x).unwrap(), 1);
            for y in 0..e.len() {
                if e.leq(x, y) && x != y {
                    let total: i64 =
                        (0..e.len()).filter(|&z| e.leq(x, z) && e.leq(z, y)).map(|z| e.mobius(x, z).unwrap()).sum();
                    assert_eq!(total, 0, "mobius sum telescopes");
                } else if !e.leq(x, y) {
                    assert!(e.mobius(x, y).is_err());
                }
            }
        }
    }

    #[test]
    fn galois_connection_and_restriction() {
        // exhaustive on C2, A2, G2, B3
        for spec in [
            preset("Sp4").unwrap(),
            simple_system(TypeLetter::A, 2),
            simple_system(TypeLetter::G, 2),
            simple_system(TypeLetter::B, 3),
        ] {
            let (rs, _, _) = build(&spec).unwrap();
            let e = enumerate_pseudo_levis(&rs, ClosureLattice::RootLattice);
            let l = enumerate_levis(&rs);
            // Galois connection: for psi in E(G), lambda in L(G):
            // sum over omega in E with minimal_levi(omega) = lambda of mu_E(psi, omega)
            //   = mu_L(psi, lambda) if psi is Levi, else 0
            let closure_of: Vec<usize> = e
                .elems
                .iter()
                .map(|omega| l.index_of(&minimal_levi(&rs, omega)).expect("closure is a Levi"))
                .collect();
            for (pi, psi) in e.elems.iter().enumerate() {
                let psi_in_l = l.index_of(psi);
                for li in 0..l.len() {
                    let mut sum = 0i64;
                    for oi in 0..e.len() {
                        if closure_of[oi] == li && e.leq(pi, oi) {
                            sum += e.mobius(pi, oi).unwrap();
                        }
                    }
                    let expected = match psi_in_l {
                        Some(pl) if l.leq(pl, li) => l.mobius(pl, li).unwrap(),
                        _ => 0,
                    };
                    assert_eq!(sum, expected, "{}: psi {:?} lambda {}", spec.name, psi, li);
                }
            }
            // Restriction: for isolated E, the standalone poset E(E) carries
            // the restricted Möbius function
            for (ei, esub) in e.elems.iter().enumerate() {
                if !is_isolated(&rs, esub) {
                    continue;
                }
                let members: Vec<Subsystem> =
                    e.elems.iter().filter(|s| s.is_subset(esub)).cloned().collect();
                let standalone = Poset::new(members);
                for (ai, a) in standalone.elems.iter().enumerate() {
                    for (bi, b) in standalone.elems.iter().enumerate() {
                        if standalone.leq(ai, bi) {
                            let ga = e.index_of(a).unwrap();
                            let gb = e.index_of(b).unwrap();
                            assert_eq!(
                                standalone.mobius(ai, bi).unwrap(),
                                e.mobius(ga, gb).unwrap()
                            );
                        }
                    }
                }
                let _ = ei;
            }
        }
    }

    #[test]
    fn levis_of_isolated_are_pseudo_levis() {
        // for every isolated pseudo-Levi E and every Levi subsystem of E,
        // the Levi is Z-closed in the ambient system (hence a member of E(G))
        for spec in [
            preset("Sp4").unwrap(),
            simple_system(TypeLetter::G, 2),
            simple_system(TypeLetter::B, 3),
        ] {
            let (rs, _, _) = build(&spec).unwrap();
            let e = enumerate_pseudo_levis(&rs, ClosureLattice::RootLattice);
            for esub in &e.elems {
                if !is_isolated(&rs, esub) {
                    continue;
                }
                let levis = enumerate_levis_within(&rs, esub);
                for psi in &levis.elems {
                    assert_eq!(
                        &zclosure(&rs, psi, ClosureLattice::RootLattice),
                        psi,
                        "{}: Levi of isolated E must be ambient-Z-closed",
                        spec.name
                    );
                    assert!(e.index_of(psi).is_some());
                }
            }
        }
    }

    #[test]
    fn character_lattice_variant_differs_for_so5() {
        // D2 = {±(e1−e2), ±(e1+e2)} is Z-closed in the B2 root lattice; in the
        // SO5 character lattice Z^2 its span contains ±e1, ±e2 as well... the
        // integer span of (1,-1),(1,1) in X = Z^2 is the even-sum sublattice,
        // which excludes the short roots, so the two notions agree on D2 but
        // differ on subsystems like {±e1} closures elsewhere; assert both
        // posets exist and the root-lattice one has 7 elements like C2.
        let (rs, _, _) = build(&preset("SO5").unwrap()).unwrap();
        let e_root = enumerate_pseudo_levis(&rs, ClosureLattice::RootLattice);
        assert_eq!(e_root.len(), 7);
        let e_char = enumerate_pseudo_levis(&rs, ClosureLattice::CharacterLattice);
        // for SO5 the character lattice IS the root lattice, so they coincide;
        // for Sp4 (weight lattice) they also coincide on C2 because the short
        // roots already generate X... assert equality holds where expected.
        assert_eq!(e_char.len(), e_root.len());
        let (rs2, _, _) = build(&preset("SL2").unwrap()).unwrap();
        // SL2: X = weight lattice; the root alpha = 2*omega, and <alpha>_X
        // still meets Phi in {±alpha} only: same poset.
        assert_eq!(enumerate_pseudo_levis(&rs2, ClosureLattice::CharacterLattice).len(), 2);
    }

    #[test]
    fn reflection_subgroup_orders() {
        let (rs, w) = c2();
        let e = enumerate_pseudo_levis(&rs, ClosureLattice::RootLattice);
        let orders: Vec<usize> =
            e.elems.iter().map(|s| reflection_subgroup_order(&rs, &w, s)).collect();
        assert_eq!(orders, vec![1, 2, 2, 2, 2, 4, 8]);
    }

    #[test]
    fn rng_orbit_sum_invariant() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(404);
        let _ = rng.gen_range(0..10);
        for name in ["Sp4", "SO5"] {
            let (rs, w, _) = build(&preset(name).unwrap()).unwrap();
            let e = enumerate_pseudo_levis(&rs, ClosureLattice::RootLattice);
            let orbits = e.w_orbits(&w);
            let total: usize = orbits.iter().map(|(_, o)| o.len()).sum();
            assert_eq!(total, e.len());
        }
    }
}
