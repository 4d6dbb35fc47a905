//! The orbit-count identity for absolutely indecomposable flag tuples:
//! #(indecomposable orbits) = ζ-isotypic multiplicity in ℂ[G/P₁ × … × G/P_ℓ],
//! with ζ an exhaustively-found generic linear character.

use super::group::FqGroup;
use super::mat::FqMat;
use super::OracleError;
use crate::subposet::is_isolated;
use num_bigint::BigInt;
use num_traits::Zero;
use serde::Serialize;
use std::collections::{HashMap, HashSet};

/// A linear character of G^F given by its exponent on a cyclic quotient.
#[derive(Debug, Clone, Serialize)]
pub struct LinearChar {
    /// order of the cyclic abelianization
    pub order: u64,
    /// exponent of the character on the chosen generator coset
    pub exponent: u64,
    /// per group element: discrete log in the abelianization
    #[serde(skip)]
    pub logs: Vec<u64>,
}

impl LinearChar {
    /// ζ(g) as an exponent of ζ_order.
    pub fn value_exp(&self, g_index: u32) -> u64 {
        (self.exponent * self.logs[g_index as usize]) % self.order
    }

    pub fn is_trivial_on(&self, indices: &[u32]) -> bool {
        indices.iter().all(|&i| self.value_exp(i) == 0)
    }
}

/// Abelianization G/[G,G] with discrete logs, provided it is cyclic.
pub fn abelianization(grp: &FqGroup) -> Option<(u64, Vec<u64>)> {
    let f = &grp.field;
    // commutator subgroup by closure
    let mut comm: HashSet<u32> = HashSet::new();
    let mut frontier: Vec<u32> = Vec::new();
    let id = grp.index_of(&FqMat::identity(grp.model.dim)).unwrap();
    comm.insert(id);
    frontier.push(id);
    let mut commutators: Vec<u32> = Vec::new();
    for a in &grp.elements {
        for bi in [1usize, 2, 3, 5, 7] {
            if bi >= grp.elements.len() {
                break;
            }
            let b = &grp.elements[bi];
            let c = a
                .mul(f, b)
                .mul(f, &a.inv(f).unwrap())
                .mul(f, &b.inv(f).unwrap());
            commutators.push(grp.index_of(&c).unwrap());
        }
    }
    // closure under multiplication by generators of the commutator set
    let gens: Vec<u32> = commutators;
    let mut changed = true;
    while changed {
        changed = false;
        let current: Vec<u32> = comm.iter().copied().collect();
        for &x in &current {
            for &g in &gens {
                let y = grp
                    .index_of(&grp.elements[x as usize].mul(f, &grp.elements[g as usize]))
                    .unwrap();
                if comm.insert(y) {
                    changed = true;
                }
            }
        }
    }
    let m = (grp.order() as usize) / comm.len();
    // cosets: map each element to its coset id
    let mut coset_of: Vec<Option<u32>> = vec![None; grp.elements.len()];
    let mut reps: Vec<u32> = Vec::new();
    for i in 0..grp.elements.len() {
        if coset_of[i].is_some() {
            continue;
        }
        let cid = reps.len() as u32;
        reps.push(i as u32);
        for &c in &comm {
            let y = grp
                .index_of(&grp.elements[i].mul(f, &grp.elements[c as usize]))
                .unwrap();
            coset_of[y as usize] = Some(cid);
        }
    }
    debug_assert_eq!(reps.len(), m);
    // find a generator coset of the quotient (requires cyclic)
    let mul_cosets = |a: u32, b: u32| -> u32 {
        let p = grp.elements[reps[a as usize] as usize]
            .mul(f, &grp.elements[reps[b as usize] as usize]);
        coset_of[grp.index_of(&p).unwrap() as usize].unwrap()
    };
    let id_coset = coset_of[id as usize].unwrap();
    for g in 0..m as u32 {
        let mut seen = vec![false; m];
        let mut x = id_coset;
        let mut cnt = 0;
        loop {
            if seen[x as usize] {
                break;
            }
            seen[x as usize] = true;
            cnt += 1;
            x = mul_cosets(x, g);
        }
        if cnt == m {
            // discrete logs along powers of g
            let mut log_of_coset = vec![0u64; m];
            let mut x = id_coset;
            for e in 0..m as u64 {
                log_of_coset[x as usize] = e;
                x = mul_cosets(x, g);
            }
            let logs: Vec<u64> = (0..grp.elements.len())
                .map(|i| log_of_coset[coset_of[i].unwrap() as usize])
                .collect();
            return Some((m as u64, logs));
        }
    }
    None
}

/// Search the (cyclic) linear characters for a generic one: nontrivial,
/// constant on Jordan semisimple parts, and equal to 1 exactly on the toral
/// semisimple elements with isolated connected centralizer.
pub fn find_generic_linear_character(grp: &FqGroup) -> Result<LinearChar, OracleError> {
    let (order, logs) = abelianization(grp)
        .ok_or(OracleError::NoValidTheta)?;
    let f = &grp.field;
    'cand: for e in 1..order {
        let zeta = LinearChar { order, exponent: e, logs: logs.clone() };
        for (i, g) in grp.elements.iter().enumerate() {
            let (gs, _) = grp.jordan(g);
            let i_s = grp.index_of(&gs).unwrap();
            if zeta.value_exp(i as u32) != zeta.value_exp(i_s) {
                continue 'cand;
            }
        }
        // toral semisimple elements: split over F_q itself
        for (i, g) in grp.elements.iter().enumerate() {
            let (gs, _) = grp.jordan(g);
            if gs != *g {
                continue;
            }
            let Ok(phi) = grp.centralizer_roots(g, 1) else { continue };
            let isolated = is_isolated(&grp.rootsys, &phi);
            let trivial = zeta.value_exp(i as u32) == 0;
            if isolated != trivial {
                continue 'cand;
            }
            let _ = f;
        }
        return Ok(zeta);
    }
    Err(OracleError::NoValidTheta)
}

#[derive(Debug, Clone, Serialize)]
pub struct AnalogueReport {
    pub group: String,
    pub q: u64,
    pub punctures: usize,
    pub zeta_order: u64,
    pub zeta_exponent: u64,
    pub orbit_count: u64,
    #[serde(with = "bigint_string")]
    pub isotypic_dim: BigInt,
    pub equal: bool,
}

/// Compute both sides of the identity on (G/B)^ℓ: the number of G^F-orbits of
/// absolutely indecomposable tuples, and the ζ-weighted fixed-point sum.
pub fn verify_analogue(grp: &FqGroup, ell: usize) -> Result<AnalogueReport, OracleError> {
    let zeta = find_generic_linear_character(grp)?;
    let f = &grp.field;
    let nf = grp.n_flags() as u32;
    // flag action table: g x coset -> coset
    let action: Vec<Vec<u32>> = grp
        .elements
        .iter()
        .map(|g| grp.cosets.iter().map(|r| grp.flag_of(&g.mul(f, r))).collect())
        .collect();
    // enumerate tuples, keep the indecomposable ones
    let mut tuples: Vec<Vec<u32>> = Vec::new();
    {
        fn rec(cur: &mut Vec<u32>, nf: u32, ell: usize, out: &mut Vec<Vec<u32>>) {
            if cur.len() == ell {
                out.push(cur.clone());
                return;
            }
            for i in 0..nf {
                cur.push(i);
                rec(cur, nf, ell, out);
                cur.pop();
            }
        }
        rec(&mut Vec::new(), nf, ell, &mut tuples);
    }
    let mut indec: HashMap<Vec<u32>, usize> = HashMap::new();
    let mut stab_sizes: Vec<u64> = Vec::new();
    for t in &tuples {
        // stabilizer elements (indices)
        let stab: Vec<u32> = (0..grp.elements.len() as u32)
            .filter(|&gi| t.iter().all(|&fi| action[gi as usize][fi as usize] == fi))
            .collect();
        let all_isolated = {
            let mut ok = true;
            for &gi in &stab {
                let (gs, _) = grp.jordan(&grp.elements[gi as usize]);
                let phi = grp.centralizer_roots(&gs, 2)?;
                if !is_isolated(&grp.rootsys, &phi) {
                    ok = false;
                    break;
                }
            }
            ok
        };
        if all_isolated {
            let idx = indec.len();
            indec.insert(t.clone(), idx);
            stab_sizes.push(stab.len() as u64);
        }
    }
    // union-find over the G-action restricted to the indecomposable set
    let mut parent: Vec<usize> = (0..indec.len()).collect();
    fn find(p: &mut Vec<usize>, mut x: usize) -> usize {
        while p[x] != x {
            p[x] = p[p[x]];
            x = p[x];
        }
        x
    }
    for (t, &i) in &indec {
        for gi in 0..grp.elements.len() {
            let img: Vec<u32> = t.iter().map(|&fi| action[gi][fi as usize]).collect();
            let j = *indec.get(&img).expect("indecomposability is G-invariant");
            let (ri, rj) = (find(&mut parent, i), find(&mut parent, j));
            if ri != rj {
                parent[ri] = rj;
            }
        }
    }
    let orbit_count =
        (0..indec.len()).filter(|&i| find(&mut parent, i) == i).count() as u64;
    // Burnside consistency: sum of stabilizer orders over the indecomposable
    // set equals |G| times the number of orbits
    let stab_total: u64 = stab_sizes.iter().sum();
    assert_eq!(stab_total, grp.order() * orbit_count, "Burnside consistency");
    // right side: (1/|G|) sum_g fix(g)^ell * zeta(g)
    let n = zeta.order as usize;
    let mut acc = super::charsum::ZetaVec::zero(n.max(1));
    for (gi, _) in grp.elements.iter().enumerate() {
        let fixed = (0..nf).filter(|&fi| action[gi][fi as usize] == fi).count() as u64;
        if fixed == 0 {
            continue;
        }
        let weight = BigInt::from(fixed).pow(ell as u32);
        let e = zeta.value_exp(gi as u32);
        let mut term = super::charsum::ZetaVec::zero(n.max(1));
        term.coeffs[e as usize] = weight;
        acc.add_assign(&term);
    }
    let total = acc
        .to_integer()
        .ok_or_else(|| OracleError::NonIntegralResult("zeta-weighted sum".into()))?;
    let g_order = BigInt::from(grp.order());
    if (&total % &g_order) != BigInt::zero() {
        return Err(OracleError::NonIntegralResult(format!(
            "{total} not divisible by |G| = {g_order}"
        )));
    }
    let isotypic = &total / &g_order;
    Ok(AnalogueReport {
        group: grp.preset.clone(),
        q: grp.field.q as u64,
        punctures: ell,
        zeta_order: zeta.order,
        zeta_exponent: zeta.exponent,
        orbit_count,
        isotypic_dim: isotypic.clone(),
        equal: BigInt::from(orbit_count) == isotypic,
    })
}

mod bigint_string {
    use num_bigint::BigInt;
    use serde::Serializer;

    pub fn serialize<S: Serializer>(v: &BigInt, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&v.to_string())
    }
}
