//! Structural data of the finite groups of Lie type as exact polynomials:
//! center orders |Z_E^F|, counts N(E), unipotent class data (Green functions
//! Q_T^L, centralizer orders |C_L(u)^F|), and the type sets 𝒯(G)/𝒯(𝔤).
//!
//! Green functions and class-in-U counts are derived, not transcribed: for
//! split T the Green value is the number of Borels containing u, a polynomial
//! of degree ≤ |Φ_L⁺| fitted by interpolation through oracle counts and
//! re-verified at a held-out q. Centralizer orders follow from the counting
//! identity |class|·Q(u) = |G/B|·|class ∩ U|, i.e. |C(u)| = |B|·Q(u)/|class ∩ U|.

use crate::exact::{rat, CountFn, ExactError, IntMat, QPoly, Rat};
use crate::oracle::classes::{class_scan, ScannedClass};
use crate::oracle::fq::FqField;
use crate::oracle::model::{model, ModelName};
use crate::rootsys::{CartanSpec, RootSystem, WeylGroup};
use crate::subposet::{
    enumerate_levis_within, enumerate_pseudo_levis, is_isolated, ClosureLattice, Poset, Subsystem,
};
use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};
use std::collections::HashMap;

pub const DEFAULT_FIT_SAMPLES: [u64; 5] = [3, 5, 7, 9, 11];
pub const DEFAULT_HOLDOUT: u64 = 13;
pub const CACHE_SCHEMA: u32 = 1;

#[derive(Debug, thiserror::Error)]
pub enum LieDataError {
    #[error("subsystem is not a pseudo-Levi of the preset")]
    NotPseudoLevi,
    #[error("unsupported Levi type: {0}")]
    UnsupportedLeviType(String),
    #[error("interpolation mismatch for {0} at held-out q = {1}: fit {2}, oracle {3}")]
    InterpolationMismatch(String, u64, String, String),
    #[error("not enough sample points: need {0}, got {1}")]
    NotEnoughSamples(usize, usize),
    #[error("oracle failure: {0}")]
    Oracle(#[from] crate::oracle::OracleError),
    #[error("scan failure: {0}")]
    Scan(#[from] crate::oracle::classes::ScanError),
    #[error("exact arithmetic failure: {0}")]
    Exact(#[from] ExactError),
    #[error("cache i/o failure: {0}")]
    Cache(String),
}

/// Class-level data of one unipotent class of a (pseudo-)Levi subgroup.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClassDatum {
    pub label: String,
    /// Q_T^L on this class, as a polynomial in q (valid for odd q)
    pub green: QPoly,
    /// |C_L(u)^F| as a polynomial in q
    pub cent_order: QPoly,
    /// dim C_L(u) = degree of cent_order
    pub dim_cent: i64,
    /// congruence validity: q ≡ 1 (mod this); 2 = "odd q"
    pub validity: u64,
}

/// Reductive subgroup shape: matrix-model factors, plus a central torus.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModelSpec {
    pub factors: Vec<ModelName>,
    pub central_rank: usize,
}

/// One type τ = ([Φ_L], [u]): a W-orbit of subsystems and a class label.
#[derive(Debug, Clone, Serialize)]
pub struct TypeDatum {
    /// representative subsystem (root indices) of the W-orbit
    pub levi_rep: Vec<u32>,
    pub class_label: String,
    pub orbit_size: usize,
}

/// Identify the reductive subgroup with root system `sub` inside the preset:
/// which matrix models realize its factors and how much central torus is left.
pub fn classify_subsystem(
    rs: &RootSystem,
    sub: &Subsystem,
) -> Result<ModelSpec, LieDataError> {
    let comps = orthogonal_components(rs, sub);
    let span_rank = sub.rank(rs);
    let total_central = rs.cartan_rank - span_rank;
    if comps.is_empty() {
        return Ok(ModelSpec { factors: vec![], central_rank: total_central });
    }
    let gcd_of = |i: u32| -> i64 {
        rs.lattice_coords[i as usize]
            .iter()
            .fold(0i64, |g, &x| num_integer::Integer::gcd(&g, &x))
    };
    let mut budget = total_central;
    let mut factors = Vec::new();
    // the one non-product case: two odd-gcd A1 components fused as SO4
    let odd_a1: Vec<usize> = comps
        .iter()
        .enumerate()
        .filter(|(_, c)| c.len() == 2 && gcd_of(c[0]) % 2 != 0)
        .map(|(i, _)| i)
        .collect();
    let mut fused_so4: Vec<usize> = Vec::new();
    if odd_a1.len() == 2 && budget == 0 {
        let mut joint: Vec<Vec<i64>> = Vec::new();
        for &ci in &odd_a1 {
            for &r in &comps[ci] {
                joint.push(rs.lattice_coords[r as usize].clone());
            }
        }
        let divs = IntMat::from_rows(joint).elementary_divisors();
        if divs.iter().any(|d| *d == BigInt::from(2)) {
            factors.push(ModelName::SO4);
            fused_so4 = odd_a1.clone();
        } else {
            return Err(LieDataError::UnsupportedLeviType(
                "two odd A1 factors without central rank or a Z/2 fusion".into(),
            ));
        }
    }
    for (ci, comp) in comps.iter().enumerate() {
        if fused_so4.contains(&ci) {
            continue;
        }
        match comp.len() {
            2 => {
                if gcd_of(comp[0]) % 2 == 0 {
                    factors.push(ModelName::SL2);
                } else if budget >= 1 {
                    factors.push(ModelName::GL2);
                    budget -= 1;
                } else {
                    factors.push(ModelName::SO3);
                }
            }
            8 => {
                // rank-2 irreducible: C2 if the long roots are divisible in X
                let lens: Vec<Rat> = comp
                    .iter()
                    .map(|&i| {
                        rs.roots[i as usize]
                            .iter()
                            .map(|x| x * x)
                            .fold(Rat::zero(), |a, b| a + b)
                    })
                    .collect();
                let maxlen = lens.iter().max().unwrap().clone();
                let long = comp
                    .iter()
                    .zip(&lens)
                    .find(|(_, l)| **l == maxlen)
                    .map(|(&i, _)| i)
                    .unwrap();
                if gcd_of(long) % 2 == 0 {
                    factors.push(ModelName::Sp4);
                } else {
                    factors.push(ModelName::SO5);
                }
            }
            other => {
                return Err(LieDataError::UnsupportedLeviType(format!(
                    "component with {other} roots"
                )))
            }
        }
    }
    factors.sort();
    Ok(ModelSpec { factors, central_rank: budget })
}

fn orthogonal_components(rs: &RootSystem, sub: &Subsystem) -> Vec<Vec<u32>> {
    let roots: Vec<u32> = sub.roots.iter().copied().collect();
    let mut unassigned: Vec<u32> = roots.clone();
    let mut comps = Vec::new();
    while let Some(seed) = unassigned.pop() {
        let mut comp = vec![seed];
        loop {
            let mut grew = false;
            unassigned.retain(|&r| {
                let connected = comp.iter().any(|&c| {
                    let dot: Rat = rs.roots[c as usize]
                        .iter()
                        .zip(&rs.roots[r as usize])
                        .map(|(a, b)| a * b)
                        .fold(Rat::zero(), |x, y| x + y);
                    !dot.is_zero()
                });
                if connected {
                    comp.push(r);
                    grew = true;
                    false
                } else {
                    true
                }
            });
            if !grew {
                break;
            }
        }
        comp.sort_unstable();
        comps.push(comp);
    }
    comps.sort();
    comps
}

/// Lagrange interpolation through exact integer points.
pub fn interpolate(points: &[(u64, BigInt)]) -> QPoly {
    let mut out = QPoly::zero();
    for (i, (xi, yi)) in points.iter().enumerate() {
        let mut term = QPoly::constant(Rat::from_integer(yi.clone()));
        for (j, (xj, _)) in points.iter().enumerate() {
            if i == j {
                continue;
            }
            let num = &QPoly::var() - &QPoly::from_int(*xj as i64);
            let den = rat(*xi as i64 - *xj as i64);
            term = &term * &num.scale(&(Rat::from_integer(1.into()) / den));
        }
        out = &out + &term;
    }
    out
}

/// |Z_Ψ^F| as a CountFn: the diagonalizable group with character lattice
/// X/⟨Φ_Ψ⟩, via the Smith form of the root-coordinate matrix.
pub fn center_count(rs: &RootSystem, sub: &Subsystem) -> CountFn {
    let rows: Vec<Vec<i64>> =
        sub.roots.iter().map(|&i| rs.lattice_coords[i as usize].clone()).collect();
    if rows.is_empty() {
        return CountFn::center(rs.cartan_rank as u32, vec![]);
    }
    let divs = IntMat::from_rows(rows).elementary_divisors();
    let free = rs.cartan_rank - divs.len();
    let gcds: Vec<u64> = divs
        .iter()
        .filter(|d| **d != BigInt::from(1))
        .map(|d| u64::try_from(d).expect("small divisor"))
        .collect();
    CountFn::center(free as u32, gcds)
}

/// N(E) = Σ_{K ⊇ E in 𝓔(G)} μ(Φ_E, Φ_K) · |Z_K^F| by Möbius inversion.
pub fn n_count(rs: &RootSystem, poset: &Poset, sub: &Subsystem) -> Result<CountFn, LieDataError> {
    let i = poset.index_of(sub).ok_or(LieDataError::NotPseudoLevi)?;
    let mut acc = CountFn::zero();
    for j in 0..poset.len() {
        if poset.leq(i, j) {
            let mu = poset.mobius(i, j).expect("comparable");
            if mu != 0 {
                acc = acc.add_scaled(1, &{
                    let mut z = center_count(rs, &poset.elems[j]);
                    z = CountFn::zero().add_scaled(mu, &z);
                    z
                });
            }
        }
    }
    Ok(acc)
}

/// Fitted tables for every pseudo-Levi orbit representative of one preset.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct LieTables {
    pub schema: u32,
    pub preset: String,
    pub fitted_q: Vec<u64>,
    pub holdout: u64,
    /// key: sorted root indices of the orbit representative
    pub tables: HashMap<String, Vec<ClassDatum>>,
}

fn key_of(sub: &Subsystem) -> String {
    let v: Vec<String> = sub.roots.iter().map(|r| r.to_string()).collect();
    v.join(",")
}

/// Fit class data for one model factor at the sample points; verify at the
/// holdout; product-assemble afterwards.
fn fit_factor(
    name: ModelName,
    samples: &[u64],
    holdout: u64,
) -> Result<Vec<(String, QPoly, QPoly, QPoly)>, LieDataError> {
    let m = model(name);
    let needed = m.n_positive() + 1;
    if samples.len() < needed {
        return Err(LieDataError::NotEnoughSamples(needed, samples.len()));
    }
    let mut per_q: Vec<(u64, Vec<ScannedClass>)> = Vec::new();
    for &q in samples.iter().chain(std::iter::once(&holdout)) {
        let f = FqField::of_order(q).map_err(crate::oracle::OracleError::Field)?;
        let cosets = m.borel_cosets(&f);
        per_q.push((q, class_scan(&f, &m, &cosets)?));
    }
    let labels: Vec<String> = per_q[0].1.iter().map(|c| c.label.clone()).collect();
    for (q, scan) in &per_q {
        let mut l2: Vec<String> = scan.iter().map(|c| c.label.clone()).collect();
        l2.sort();
        let mut l1 = labels.clone();
        l1.sort();
        if l1 != l2 {
            return Err(LieDataError::InterpolationMismatch(
                format!("{name:?} label set"),
                *q,
                format!("{l1:?}"),
                format!("{l2:?}"),
            ));
        }
    }
    let lookup = |q_idx: usize, lab: &str| -> &ScannedClass {
        per_q[q_idx].1.iter().find(|c| c.label == lab).expect("label present")
    };
    let borel_poly = {
        let qv = QPoly::var();
        let qm1 = &qv - &QPoly::one();
        &QPoly::monomial(rat(1), m.n_positive() as i64) * &qm1.pow(m.rank as u32)
    };
    let mut out = Vec::new();
    for lab in &labels {
        let gp = interpolate(
            &(0..samples.len())
                .map(|i| (per_q[i].0, BigInt::from(lookup(i, lab).green)))
                .collect::<Vec<_>>(),
        );
        let up = interpolate(
            &(0..samples.len())
                .map(|i| (per_q[i].0, BigInt::from(lookup(i, lab).u_count)))
                .collect::<Vec<_>>(),
        );
        let cent = (&borel_poly * &gp).exact_div(&up).map_err(|_| {
            LieDataError::InterpolationMismatch(
                format!("{name:?}/{lab} centralizer division"),
                holdout,
                format!("{}", &borel_poly * &gp),
                format!("{up}"),
            )
        })?;
        // holdout checks
        let h = samples.len();
        let ho = lookup(h, lab);
        for (what, poly, oracle_val) in [
            ("green", &gp, ho.green),
            ("ucount", &up, ho.u_count),
            ("cent", &cent, ho.cent_order),
        ] {
            let fit_val = poly.eval_u64(holdout);
            if fit_val != rat(0) + Rat::from_integer(BigInt::from(oracle_val)) {
                return Err(LieDataError::InterpolationMismatch(
                    format!("{name:?}/{lab}/{what}"),
                    holdout,
                    format!("{fit_val}"),
                    oracle_val.to_string(),
                ));
            }
        }
        out.push((lab.clone(), gp, up, cent));
    }
    Ok(out)
}

/// Class data of the subgroup described by a ModelSpec: products of factor
/// data times the central torus.
fn assemble(
    spec: &ModelSpec,
    factor_tables: &HashMap<ModelName, Vec<(String, QPoly, QPoly, QPoly)>>,
) -> Vec<ClassDatum> {
    let central = {
        let qm1 = &QPoly::var() - &QPoly::one();
        qm1.pow(spec.central_rank as u32)
    };
    let mut acc: Vec<(String, QPoly, QPoly)> =
        vec![(String::new(), QPoly::one(), QPoly::one())];
    for f in &spec.factors {
        let table = &factor_tables[f];
        let mut next = Vec::with_capacity(acc.len() * table.len());
        for (lab0, g0, c0) in &acc {
            for (lab, g, _, c) in table {
                let nl = if lab0.is_empty() { lab.clone() } else { format!("{lab0}|{lab}") };
                next.push((nl, g0 * g, c0 * c));
            }
        }
        acc = next;
    }
    acc.into_iter()
        .map(|(lab, g, c)| {
            let cent = &c * &central;
            let dim = cent.degree().unwrap_or(0);
            ClassDatum {
                label: if lab.is_empty() { "1".into() } else { lab },
                green: g,
                cent_order: cent,
                dim_cent: dim,
                validity: 2,
            }
        })
        .collect()
}

impl LieTables {
    /// Fit every pseudo-Levi orbit representative of the preset.
    pub fn fit(
        spec: &CartanSpec,
        rs: &RootSystem,
        weyl: &WeylGroup,
        samples: &[u64],
        holdout: u64,
    ) -> Result<LieTables, LieDataError> {
        let _ = weyl;
        let poset = enumerate_pseudo_levis(rs, ClosureLattice::RootLattice);
        // every pseudo-Levi, plus every Levi-within of every isolated one
        // (the algebra-side type sets of the decomposition); conjugate
        // subsystems get equal tables, which keeps lookups orbit-free
        let mut specs: HashMap<String, ModelSpec> = HashMap::new();
        for sub in &poset.elems {
            specs.insert(key_of(sub), classify_subsystem(rs, sub)?);
        }
        for e in poset.elems.iter().filter(|s| is_isolated(rs, s)) {
            let levis = enumerate_levis_within(rs, e);
            for sub in &levis.elems {
                if !specs.contains_key(&key_of(sub)) {
                    specs.insert(key_of(sub), classify_subsystem(rs, sub)?);
                }
            }
        }
        let mut needed: Vec<ModelName> = specs.values().flat_map(|s| s.factors.clone()).collect();
        needed.sort();
        needed.dedup();
        let mut factor_tables = HashMap::new();
        for name in needed {
            factor_tables.insert(name, fit_factor(name, samples, holdout)?);
        }
        let tables = specs
            .into_iter()
            .map(|(k, ms)| (k, assemble(&ms, &factor_tables)))
            .collect();
        Ok(LieTables {
            schema: CACHE_SCHEMA,
            preset: spec.name.clone(),
            fitted_q: samples.to_vec(),
            holdout,
            tables,
        })
    }

    pub fn classes_of(&self, sub: &Subsystem) -> Option<&[ClassDatum]> {
        self.tables.get(&key_of(sub)).map(|v| v.as_slice())
    }

    pub fn save(&self, path: &std::path::Path) -> Result<(), LieDataError> {
        let s = serde_json::to_string_pretty(self).map_err(|e| LieDataError::Cache(e.to_string()))?;
        std::fs::write(path, s).map_err(|e| LieDataError::Cache(e.to_string()))
    }

    pub fn load(path: &std::path::Path) -> Result<LieTables, LieDataError> {
        let s = std::fs::read_to_string(path).map_err(|e| LieDataError::Cache(e.to_string()))?;
        let t: LieTables =
            serde_json::from_str(&s).map_err(|e| LieDataError::Cache(e.to_string()))?;
        if t.schema != CACHE_SCHEMA {
            return Err(LieDataError::Cache(format!("schema {} != {}", t.schema, CACHE_SCHEMA)));
        }
        Ok(t)
    }
}

/// The type set 𝒯(G) (group side: pseudo-Levi orbits) or 𝒯(𝔤) (algebra side:
/// Levi orbits, classes reused through the Springer identification).
pub enum TypeSide {
    Group,
    Algebra,
}

pub fn types(
    rs: &RootSystem,
    weyl: &WeylGroup,
    tables: &LieTables,
    side: TypeSide,
) -> Result<Vec<TypeDatum>, LieDataError> {
    let poset = match side {
        TypeSide::Group => enumerate_pseudo_levis(rs, ClosureLattice::RootLattice),
        TypeSide::Algebra => crate::subposet::enumerate_levis(rs),
    };
    let mut out = Vec::new();
    for (rep, orbit) in poset.w_orbits(weyl) {
        let sub = &poset.elems[rep];
        let classes = tables
            .classes_of(sub)
            .ok_or(LieDataError::NotPseudoLevi)?;
        for c in classes {
            out.push(TypeDatum {
                levi_rep: sub.roots.iter().copied().collect(),
                class_label: c.label.clone(),
                orbit_size: orbit.len(),
            });
        }
    }
    Ok(out)
}
