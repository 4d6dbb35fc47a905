//! Concretely enumerated matrix groups over 𝔽_q with Borel/flag structure,
//! Jordan decomposition, toral centralizer root systems, and the absolute
//! indecomposability test.

use super::fq::FqField;
use super::mat::FqMat;
use super::model::{model, MatrixModel, ModelName};
use super::OracleError;
use crate::rootsys::{build, preset, RootSystem, WeylGroup};
use crate::subposet::{self, Subsystem};
use std::collections::{HashMap, VecDeque};

pub const ENUM_BUDGET: u64 = 10_000_000;

/// Oracle presets carry both the matrix model and the exact root system.
pub fn oracle_model(name: &str) -> Result<ModelName, OracleError> {
    match name {
        "SL2" => Ok(ModelName::SL2),
        "GL2" => Ok(ModelName::GL2),
        "Sp4" => Ok(ModelName::Sp4),
        "SO5" => Ok(ModelName::SO5),
        other => Err(OracleError::UnsupportedPreset(other.to_string())),
    }
}

/// An enumerated finite group of Lie type with its flag machinery.
pub struct FqGroup {
    pub preset: String,
    pub field: FqField,
    pub model: MatrixModel,
    pub elements: Vec<FqMat>,
    index: HashMap<FqMat, u32>,
    pub borel: Vec<u32>,
    /// coset representatives of G/B in Bruhat order
    pub cosets: Vec<FqMat>,
    flag_ids: HashMap<Vec<Vec<u16>>, u32>,
    pub rootsys: RootSystem,
    pub weyl: WeylGroup,
    /// model root slot -> root index in `rootsys`
    pub root_map: Vec<usize>,
}

impl FqGroup {
    /// Enumerate the full group by closure from torus, root-subgroup, and
    /// Weyl generators.
    pub fn enumerate(preset_name: &str, q: u64) -> Result<FqGroup, OracleError> {
        let mname = oracle_model(preset_name)?;
        let m = model(mname);
        let f = FqField::of_order(q)?;
        let order_bound = expected_order(&m, q);
        if order_bound > ENUM_BUDGET {
            return Err(OracleError::TooLarge(order_bound, ENUM_BUDGET));
        }
        let mut gens: Vec<FqMat> = Vec::new();
        for r in 0..m.root_vecs.len() {
            gens.push(m.xroot(&f, r, 1));
        }
        // torus generators: one multiplicative generator per parameter slot
        let g = f.generator();
        for j in 0..m.rank {
            let params: Vec<u16> = (0..m.rank).map(|i| if i == j { g } else { 1 }).collect();
            gens.push(m.torus(&f, &params));
        }
        let id = FqMat::identity(m.dim);
        let mut index = HashMap::new();
        index.insert(id.clone(), 0u32);
        let mut elements = vec![id.clone()];
        let mut queue = VecDeque::new();
        queue.push_back(id);
        while let Some(x) = queue.pop_front() {
            for gma in &gens {
                let y = x.mul(&f, gma);
                if !index.contains_key(&y) {
                    index.insert(y.clone(), elements.len() as u32);
                    elements.push(y.clone());
                    queue.push_back(y);
                    if elements.len() as u64 > ENUM_BUDGET {
                        return Err(OracleError::TooLarge(elements.len() as u64, ENUM_BUDGET));
                    }
                }
            }
        }
        let borel: Vec<u32> = elements
            .iter()
            .enumerate()
            .filter(|(_, g)| g.is_upper_triangular())
            .map(|(i, _)| i as u32)
            .collect();
        let cosets = m.borel_cosets(&f);
        let (rootsys, weyl, _) = build(&preset(preset_name).expect("preset")).expect("rank ok");
        let root_map = build_root_map(&m, &rootsys, preset_name);
        let mut grp = FqGroup {
            preset: preset_name.to_string(),
            field: f,
            model: m,
            elements,
            index,
            borel,
            cosets,
            flag_ids: HashMap::new(),
            rootsys,
            weyl,
            root_map,
        };
        grp.flag_ids = grp
            .cosets
            .iter()
            .enumerate()
            .map(|(i, r)| (grp.flag_key(r), i as u32))
            .collect();
        Ok(grp)
    }

    pub fn order(&self) -> u64 {
        self.elements.len() as u64
    }

    pub fn index_of(&self, g: &FqMat) -> Option<u32> {
        self.index.get(g).copied()
    }

    /// Canonical key of the coset gB: the echelon forms of the standard-flag
    /// images g·V_1 ⊂ … ⊂ g·V_{n−1} (B is exactly the chain stabilizer).
    pub fn flag_key(&self, g: &FqMat) -> Vec<Vec<u16>> {
        let n = self.model.dim;
        let f = &self.field;
        let mut out = Vec::new();
        for k in 1..n {
            // span of first k columns of g, echelon-reduced
            let rows: Vec<Vec<u16>> =
                (0..k).map(|j| (0..n).map(|i| g.at(i, j)).collect()).collect();
            out.push(echelon_key(f, rows));
        }
        out
    }

    pub fn flag_of(&self, g: &FqMat) -> u32 {
        self.flag_ids[&self.flag_key(g)]
    }

    pub fn n_flags(&self) -> usize {
        self.cosets.len()
    }

    /// Jordan decomposition by CRT on the element order.
    pub fn jordan(&self, g: &FqMat) -> (FqMat, FqMat) {
        jordan_decomposition(&self.field, g)
    }

    /// Diagonal-stabilizer of a flag tuple: all group elements fixing every
    /// coset, computed as ∩ g_i B g_i^{-1}.
    pub fn stabilizer(&self, flags: &[u32]) -> Vec<FqMat> {
        let f = &self.field;
        let reps: Vec<&FqMat> = flags.iter().map(|&i| &self.cosets[i as usize]).collect();
        let inv: Vec<FqMat> = reps.iter().map(|r| r.inv(f).expect("rep")).collect();
        let mut out = Vec::new();
        for bi in &self.borel {
            let b = &self.elements[*bi as usize];
            let cand = reps[0].mul(f, b).mul(f, &inv[0]);
            let ok = reps
                .iter()
                .zip(&inv)
                .skip(1)
                .all(|(r, ri)| ri.mul(f, &cand).mul(f, r).is_upper_triangular());
            if ok {
                out.push(cand);
            }
        }
        out
    }

    /// Root system of the connected centralizer of a semisimple element:
    /// conjugate (up to W) into the split torus over 𝔽_{q^m}, m ≤ budget,
    /// then evaluate {α : α(t) = 1}. Returns indices into `self.rootsys`.
    pub fn centralizer_roots(&self, s: &FqMat, budget: u8) -> Result<Subsystem, OracleError> {
        assert_eq!(self.field.k, 1, "extension tower rooted at a prime field");
        let p = self.field.p;
        for m in 1..=budget {
            let fm = FqField::new(p, m).map_err(OracleError::Field)?;
            let lifted = s.map_base(|x| fm.lift_prime_field(x));
            if let Some(params) = toral_parameters(&fm, &self.model, &lifted) {
                let mut roots = Vec::new();
                for (slot, (w, _)) in self.model.root_vecs.iter().enumerate() {
                    let mut val = 1u16;
                    for (&pp, &k) in params.iter().zip(w) {
                        let base = if k >= 0 { pp } else { fm.inv(pp) };
                        for _ in 0..k.abs() {
                            val = fm.mul(val, base);
                        }
                    }
                    if val == 1 {
                        roots.push(self.root_map[slot] as u32);
                    }
                }
                return Ok(Subsystem::from_indices(roots));
            }
        }
        Err(OracleError::ExtensionBudgetExceeded(budget))
    }

    /// True iff every semisimple part of the stabilizer (over 𝔽_{q^m}) has an
    /// isolated connected centralizer.
    pub fn is_abs_indecomposable(
        &self,
        flags: &[u32],
        stab_ext: u8,
        eig_budget: u8,
    ) -> Result<bool, OracleError> {
        let stab = self.stabilizer_over_extension(flags, stab_ext)?;
        let p = self.field.p;
        let fm = FqField::new(p, stab_ext).map_err(OracleError::Field)?;
        for g in &stab {
            let (gs, _) = jordan_decomposition(&fm, g);
            let phi = self.centralizer_roots_over(&fm, &gs, eig_budget)?;
            if !subposet::is_isolated(&self.rootsys, &phi) {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Stabilizer of the flag tuple with all data lifted to 𝔽_{p^m}.
    pub fn stabilizer_over_extension(
        &self,
        flags: &[u32],
        m: u8,
    ) -> Result<Vec<FqMat>, OracleError> {
        assert_eq!(self.field.k, 1);
        let fm = FqField::new(self.field.p, m).map_err(OracleError::Field)?;
        let reps: Vec<FqMat> = flags
            .iter()
            .map(|&i| self.cosets[i as usize].map_base(|x| fm.lift_prime_field(x)))
            .collect();
        let inv: Vec<FqMat> = reps.iter().map(|r| r.inv(&fm).expect("rep")).collect();
        let mut out = Vec::new();
        for b in borel_elements(&fm, &self.model) {
            let cand = reps[0].mul(&fm, &b).mul(&fm, &inv[0]);
            let ok = reps
                .iter()
                .zip(&inv)
                .skip(1)
                .all(|(r, ri)| ri.mul(&fm, &cand).mul(&fm, r).is_upper_triangular());
            if ok {
                out.push(cand);
            }
        }
        Ok(out)
    }

    fn centralizer_roots_over(
        &self,
        f_base: &FqField,
        s: &FqMat,
        budget: u8,
    ) -> Result<Subsystem, OracleError> {
        let p = f_base.p;
        let base_k = f_base.k;
        for mult in 1..=budget {
            let k = base_k * mult;
            if (p as u64).pow(k as u32) > 1024 {
                break;
            }
            let fm = match FqField::new(p, k) {
                Ok(f) => f,
                Err(_) => break,
            };
            // re-embed: elements of F_{p^base_k} into F_{p^k} requires a field
            // embedding; supported when base_k divides k and the element is
            // actually in the prime field or base_k == k.
            let lifted = if k == base_k {
                s.clone()
            } else if s.data.iter().all(|&x| x < p) {
                s.map_base(|x| fm.lift_prime_field(x))
            } else {
                continue;
            };
            if let Some(params) = toral_parameters(&fm, &self.model, &lifted) {
                let mut roots = Vec::new();
                for (slot, (w, _)) in self.model.root_vecs.iter().enumerate() {
                    let mut val = 1u16;
                    for (&pp, &kk) in params.iter().zip(w) {
                        let base = if kk >= 0 { pp } else { fm.inv(pp) };
                        for _ in 0..kk.abs() {
                            val = fm.mul(val, base);
                        }
                    }
                    if val == 1 {
                        roots.push(self.root_map[slot] as u32);
                    }
                }
                return Ok(Subsystem::from_indices(roots));
            }
        }
        Err(OracleError::ExtensionBudgetExceeded(budget))
    }

    /// #{Borel cosets xB : u·xB = xB}.
    pub fn green_fixed_points(&self, u: &FqMat) -> u64 {
        let f = &self.field;
        self.cosets
            .iter()
            .filter(|r| {
                let ri = r.inv(f).expect("rep");
                ri.mul(f, u).mul(f, r).is_upper_triangular()
            })
            .count() as u64
    }
}

/// All elements of B(𝔽) for the model: torus × ordered positive-root products.
pub fn borel_elements(f: &FqField, m: &MatrixModel) -> Vec<FqMat> {
    let mut toral = Vec::new();
    let mut params = vec![1u16; m.rank];
    loop {
        toral.push(m.torus(f, &params));
        // odometer over units
        let mut i = 0;
        loop {
            if i == m.rank {
                let unipotent = m.unipotent_elements(f);
                let mut out = Vec::with_capacity(toral.len() * unipotent.len());
                for t in &toral {
                    for u in &unipotent {
                        out.push(t.mul(f, u));
                    }
                }
                return out;
            }
            params[i] += 1;
            if params[i] < f.q {
                break;
            }
            params[i] = 1;
            i += 1;
        }
    }
}

fn expected_order(m: &MatrixModel, q: u64) -> u64 {
    // q^N (q-1)^r * number of cosets; the Poincaré factor is bounded by
    // (q+1)^r (q^2+1)… — use the crude bound q^dim^2 guard instead
    let flags: u64 = match m.name {
        ModelName::SL2 | ModelName::GL2 | ModelName::SO3 => q + 1,
        ModelName::SO4 => (q + 1) * (q + 1),
        ModelName::Sp4 | ModelName::SO5 => (q + 1) * (q + 1) * (q * q + 1),
        ModelName::Torus => 1,
    };
    m.borel_order(q) * flags
}

fn echelon_key(f: &FqField, mut rows: Vec<Vec<u16>>) -> Vec<u16> {
    let cols = rows.first().map_or(0, |r| r.len());
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows.len()).find(|&i| rows[i][c] != 0) else { continue };
        rows.swap(r, p);
        let inv = f.inv(rows[r][c]);
        for x in rows[r].iter_mut() {
            *x = f.mul(*x, inv);
        }
        for i in 0..rows.len() {
            if i != r && rows[i][c] != 0 {
                let fac = rows[i][c];
                for j in 0..cols {
                    rows[i][j] = f.sub(rows[i][j], f.mul(fac, rows[r][j]));
                }
            }
        }
        r += 1;
    }
    rows.sort();
    rows.into_iter().flatten().collect()
}

/// g = g_s · g_u with commuting semisimple and unipotent parts, via CRT on
/// the element order.
pub fn jordan_decomposition(f: &FqField, g: &FqMat) -> (FqMat, FqMat) {
    let p = f.p as u64;
    let order = g.order(f);
    let mut pa = 1u64;
    let mut m = order;
    while m % p == 0 {
        m /= p;
        pa *= p;
    }
    if pa == 1 {
        return (g.clone(), FqMat::identity(g.dim()));
    }
    if m == 1 {
        return (FqMat::identity(g.dim()), g.clone());
    }
    // g_s = g^(pa * x) with pa*x = 1 mod m; g_u = g^(m * y) with m*y = 1 mod pa
    let x = mod_inverse(pa % m, m);
    let y = mod_inverse(m % pa, pa);
    let gs = g.pow(f, (pa * x) % order);
    let gu = g.pow(f, (m * y) % order);
    (gs, gu)
}

fn mod_inverse(a: u64, n: u64) -> u64 {
    // extended Euclid
    let (mut t, mut newt) = (0i128, 1i128);
    let (mut r, mut newr) = (n as i128, a as i128);
    while newr != 0 {
        let q = r / newr;
        (t, newt) = (newt, t - q * newt);
        (r, newr) = (newr, r - q * newr);
    }
    assert_eq!(r, 1, "inverse exists");
    t.rem_euclid(n as i128) as u64
}

/// Try to realize a semisimple matrix as a torus element: compute the
/// eigenvalue multiset over the field and match it to the model's diagonal
/// pattern. Returns torus parameters when split.
pub fn toral_parameters(f: &FqField, m: &MatrixModel, s: &FqMat) -> Option<Vec<u16>> {
    let n = s.dim();
    // eigenvalue multiset
    let mut eigs: Vec<(u16, usize)> = Vec::new();
    let mut total = 0;
    for lam in f.units() {
        let mut a = s.clone();
        for i in 0..n {
            let v = f.sub(a.at(i, i), lam);
            a.set(i, i, v);
        }
        let dim = n - a.rank(f);
        if dim > 0 {
            eigs.push((lam, dim));
            total += dim;
        }
    }
    if total != n {
        return None; // not split over this field (or not invertible)
    }
    // search parameters whose diagonal pattern reproduces the multiset
    let candidates: Vec<u16> = eigs.iter().map(|&(l, _)| l).collect();
    let mut params = vec![0u16; m.rank];
    fn rec(
        f: &FqField,
        m: &MatrixModel,
        cands: &[u16],
        params: &mut Vec<u16>,
        slot: usize,
        eigs: &[(u16, usize)],
    ) -> bool {
        if slot == m.rank {
            // check multiset
            let mut counts: HashMap<u16, i64> = HashMap::new();
            for exps in &m.diag_exps {
                let mut v = 1u16;
                for (&pp, &k) in params.iter().zip(exps) {
                    let base = if k >= 0 { pp } else { f.inv(pp) };
                    for _ in 0..k.abs() {
                        v = f.mul(v, base);
                    }
                }
                *counts.entry(v).or_insert(0) += 1;
            }
            return eigs.iter().all(|&(l, d)| counts.get(&l) == Some(&(d as i64)))
                && counts.values().sum::<i64>() as usize
                    == eigs.iter().map(|&(_, d)| d).sum::<usize>();
        }
        for &c in cands {
            params[slot] = c;
            if rec(f, m, cands, params, slot + 1, eigs) {
                return true;
            }
            // also try the inverse of a candidate eigenvalue
            params[slot] = f.inv(c);
            if rec(f, m, cands, params, slot + 1, eigs) {
                return true;
            }
        }
        false
    }
    if rec(f, m, &candidates, &mut params, 0, &eigs) {
        Some(params)
    } else {
        None
    }
}

fn build_root_map(m: &MatrixModel, rs: &RootSystem, preset_name: &str) -> Vec<usize> {
    use crate::exact::{rat, rat_frac};
    m.root_vecs
        .iter()
        .map(|(w, _)| {
            // model exponent vector -> realization coordinates
            let target: Vec<crate::exact::Rat> = match preset_name {
                "SL2" => vec![rat_frac(w[0], 2), rat_frac(-w[0], 2)],
                _ => w.iter().map(|&x| rat(x)).collect(),
            };
            rs.index_of(&target).expect("model roots match the realization")
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    #[test]
    fn orders_of_small_groups() {
        assert_eq!(FqGroup::enumerate("SL2", 3).unwrap().order(), 24);
        assert_eq!(FqGroup::enumerate("GL2", 3).unwrap().order(), 48);
        assert_eq!(FqGroup::enumerate("SL2", 5).unwrap().order(), 120);
        let sp4 = FqGroup::enumerate("Sp4", 3).unwrap();
        assert_eq!(sp4.order(), 51840);
        assert_eq!(sp4.n_flags(), 160);
        let so5 = FqGroup::enumerate("SO5", 3).unwrap();
        assert_eq!(so5.order(), 51840);
    }

    #[test]
    fn jordan_parts_commute_with_coprime_orders() {
        let g3 = FqGroup::enumerate("SL2", 3).unwrap();
        let f = &g3.field;
        for g in &g3.elements {
            let (s, u) = g3.jordan(g);
            assert_eq!(s.mul(f, &u), *g);
            assert_eq!(s.mul(f, &u), u.mul(f, &s));
            let (os, ou) = (s.order(f), u.order(f));
            assert_eq!(os % 3, if os == 3 { 0 } else { os % 3 });
            assert!(ou == 1 || ou == 3, "unipotent part is a p-element");
            assert!(os % 3 != 0, "semisimple part is coprime to p");
        }
        // order-6 element decomposes as (-I, -g)
        let six = g3.elements.iter().find(|g| g.order(f) == 6).unwrap();
        let (s, u) = g3.jordan(six);
        assert_eq!(s, FqMat::identity(2).scale(f, f.neg(1)));
        assert_eq!(u, six.scale(f, f.neg(1)));
    }

    #[test]
    fn stabilizer_is_a_subgroup_with_orbit_counting() {
        let g = FqGroup::enumerate("SL2", 3).unwrap();
        let f = &g.field;
        // (B, B, B): stabilizer is the whole Borel
        let stab = g.stabilizer(&[0, 0, 0]);
        assert_eq!(stab.len(), g.borel.len());
        // closure under product
        let set: HashSet<&FqMat> = stab.iter().collect();
        for a in &stab {
            for b in &stab {
                assert!(set.contains(&a.mul(f, b)));
            }
        }
        // three pairwise distinct flags: central stabilizer
        let stab = g.stabilizer(&[0, 1, 2]);
        assert_eq!(stab.len(), 2);
        // orbit-stabilizer on a sampled flag tuple
        let flags = [0u32, 1, 3];
        let stab = g.stabilizer(&flags);
        let mut orbit = HashSet::new();
        for x in &g.elements {
            let img: Vec<u32> =
                flags.iter().map(|&i| g.flag_of(&x.mul(f, &g.cosets[i as usize]))).collect();
            orbit.insert(img);
        }
        assert_eq!(orbit.len() * stab.len(), g.order() as usize);
    }

    #[test]
    fn centralizer_roots_cases() {
        let g = FqGroup::enumerate("Sp4", 3).unwrap();
        let f = &g.field;
        // central -I: all roots
        let minus = FqMat::identity(4).scale(f, f.neg(1));
        let phi = g.centralizer_roots(&minus, 2).unwrap();
        assert_eq!(phi.len(), 8);
        // regular split torus element: empty
        let t = g.model.torus(f, &[2, 1]);
        // (2,1) has eigenvalues {2, 1, 1, 2^-1}: alpha(t)=1 for the middle...
        // pick a regular one instead
        let treg = g.model.torus(f, &[2, 2]);
        // careful: t1 = t2 = 2 kills e1-e2; construct diag(2, 1/2):
        let tr = g.model.torus(f, &[2, f.inv(2)]);
        let phi_tr = g.centralizer_roots(&tr, 2).unwrap();
        // alpha(t) over roots of C2 at (2, 1/2) in F3: 2*2=4=1! e1+e2 kills it
        // — at q=3 the torus is tiny; just assert consistency with a direct
        // fixed-space computation for a few elements
        for s in [t, treg, tr, minus] {
            let phi = g.centralizer_roots(&s, 2).unwrap();
            let si = s.inv(f).unwrap();
            // dim C_G(s) = rank + |Phi_s| must equal the fixed-space dimension
            // of Ad(s) on the Lie algebra spanned by root vectors and the torus
            let mut fixed = 0usize;
            for (slot, _) in g.model.root_vecs.iter().enumerate() {
                let x = g.model.xroot(f, slot, 1);
                if s.mul(f, &x).mul(f, &si) == x {
                    fixed += 1;
                }
            }
            assert_eq!(
                fixed,
                phi.len(),
                "root-vector fixed count matches the toral computation"
            );
        }
        let _ = phi_tr;
    }

    #[test]
    fn abs_indecomposable_on_sl2_f3() {
        let g = FqGroup::enumerate("SL2", 3).unwrap();
        // repeated Borels: stabilizer contains a torus, not indecomposable
        assert!(!g.is_abs_indecomposable(&[0, 0, 0], 2, 4).unwrap());
        // three distinct flags: central stabilizer, indecomposable
        assert!(g.is_abs_indecomposable(&[0, 1, 2], 2, 4).unwrap());
    }

    #[test]
    fn green_fixed_points_examples() {
        let sp4 = FqGroup::enumerate("Sp4", 3).unwrap();
        assert_eq!(sp4.green_fixed_points(&FqMat::identity(4)), 160);
        let sl2 = FqGroup::enumerate("SL2", 7).unwrap();
        assert_eq!(sl2.green_fixed_points(&FqMat::identity(2)), 8);
        let f = &sl2.field;
        let u = sl2.model.xroot(f, 0, 1);
        assert_eq!(sl2.green_fixed_points(&u), 1);
    }
}
