//! The two point-count formulas as exact polynomial evaluators: the
//! tensor-multiplicity type sum over 𝒯(G), the additive character-variety
//! count over 𝒯(𝔤), and the isolated-pseudo-Levi decomposition that ties
//! them together. Both routes are implemented independently and cross-checked.

use crate::exact::{rat, CountFn, QPoly, Rat, RatFn};
use crate::liedata::{center_count, n_count, LieDataError, LieTables};
use crate::rootsys::{build, preset, CartanSpec, RootSystem, WeylGroup};
use crate::subposet::{
    enumerate_levis_within, enumerate_pseudo_levis, is_isolated, reflection_subgroup_perms,
    ClosureLattice, Poset, Subsystem,
};
use num_bigint::BigInt;
use num_traits::Signed;
use serde::Serialize;
use std::collections::BTreeSet;

#[derive(Debug, thiserror::Error)]
pub enum CountingError {
    #[error("2g + l = {0} violates the standing assumption 2g + l >= 3")]
    BadParams(u32),
    #[error("type-sum result is not a polynomial: denominator {0}")]
    NonPolynomialResult(String),
    #[error("type-sum result has non-integer coefficients: {0}")]
    NonIntegralResult(String),
    #[error("the two formulas disagree: type sum {0} vs decomposition {1}")]
    DecompositionMismatch(String, String),
    #[error("subsystem is not isolated")]
    NotIsolated,
    #[error(transparent)]
    LieData(#[from] LieDataError),
    #[error("preset error: {0}")]
    Preset(#[from] crate::rootsys::RootSysError),
}

#[derive(Debug, Clone, Copy)]
pub struct CountingParams {
    pub genus: u32,
    pub punctures: u32,
}

impl CountingParams {
    pub fn new(genus: u32, punctures: u32) -> Result<Self, CountingError> {
        if 2 * genus + punctures < 3 {
            return Err(CountingError::BadParams(2 * genus + punctures));
        }
        Ok(CountingParams { genus, punctures })
    }
}

/// Everything the evaluators need about one preset.
pub struct PresetData {
    pub spec: CartanSpec,
    pub rs: RootSystem,
    pub weyl: WeylGroup,
    pub pseudo_levis: Poset,
    pub tables: LieTables,
}

impl PresetData {
    pub fn new(spec: CartanSpec, rs: RootSystem, weyl: WeylGroup, tables: LieTables) -> Self {
        let pseudo_levis = enumerate_pseudo_levis(&rs, ClosureLattice::RootLattice);
        PresetData { spec, rs, weyl, pseudo_levis, tables }
    }

    pub fn from_name(
        name: &str,
        samples: &[u64],
        holdout: u64,
    ) -> Result<PresetData, CountingError> {
        let spec = preset(name)?;
        let (rs, weyl, _) = build(&spec)?;
        let tables = LieTables::fit(&spec, &rs, &weyl, samples, holdout)?;
        Ok(PresetData::new(spec, rs, weyl, tables))
    }

    pub fn dim_g(&self) -> i64 {
        self.rs.cartan_rank as i64 + self.rs.roots.len() as i64
    }

    pub fn dim_center(&self) -> i64 {
        self.rs.cartan_rank as i64 - full_subsystem_rank(&self.rs)
    }

    fn full(&self) -> Subsystem {
        Subsystem::from_indices(0..self.rs.roots.len() as u32)
    }
}

fn full_subsystem_rank(rs: &RootSystem) -> i64 {
    Subsystem::from_indices(0..rs.roots.len() as u32).rank(rs) as i64
}

/// γ_E = dim Z_E + (g−1)·dim 𝔢 + ℓ·|Φ_E⁺| (dim Z_E = dim Z_G for isolated E).
pub fn gamma(pd: &PresetData, esub: &Subsystem, params: &CountingParams) -> Result<i64, CountingError> {
    if !is_isolated(&pd.rs, esub) {
        return Err(CountingError::NotIsolated);
    }
    Ok(gamma_unchecked(pd, esub, params))
}

fn gamma_unchecked(pd: &PresetData, esub: &Subsystem, params: &CountingParams) -> i64 {
    let dim_z = pd.rs.cartan_rank as i64 - esub.rank(&pd.rs) as i64;
    let dim_e = pd.rs.cartan_rank as i64 + esub.len() as i64;
    dim_z + (params.genus as i64 - 1) * dim_e + params.punctures as i64 * (esub.len() as i64 / 2)
}

fn count_poly(c: &CountFn) -> QPoly {
    c.poly.clone()
}

/// The inner Möbius sum ν(L) = Σ over isolated standard E of μ(Φ_L, Φ_E)|Z_E^F|
/// as a polynomial on the odd-q class.
fn isolated_mobius_weight(pd: &PresetData, levi_index: usize) -> QPoly {
    let poset = &pd.pseudo_levis;
    let mut acc = QPoly::zero();
    for j in 0..poset.len() {
        if poset.leq(levi_index, j) && is_isolated(&pd.rs, &poset.elems[j]) {
            let mu = poset.mobius(levi_index, j).expect("comparable");
            if mu != 0 {
                let z = count_poly(&center_count(&pd.rs, &poset.elems[j]));
                acc = &acc + &z.scale(&rat(mu));
            }
        }
    }
    acc
}

/// The per-class coefficient of the type sum:
/// q^{g·dim C} · Q(u)^ℓ · |W|^{ℓ−1} · |[Φ_L]| / (|C_L(u)^F| · |W_L|^{ℓ−1}).
fn type_term(
    green: &QPoly,
    cent: &QPoly,
    dim_c: i64,
    params: &CountingParams,
    w_order: u64,
    wl_order: u64,
    orbit_size: usize,
) -> RatFn {
    let ell = params.punctures;
    let mut num = QPoly::monomial(rat(1), params.genus as i64 * dim_c);
    num = &num * &green.pow(ell);
    let w_pow = BigInt::from(w_order).pow(ell - 1);
    num = num.scale(&Rat::from_integer(w_pow * BigInt::from(orbit_size as u64)));
    let mut den = cent.clone();
    den = den.scale(&Rat::from_integer(BigInt::from(wl_order).pow(ell - 1)));
    RatFn::from_ratio(num, den)
}

/// ⟨Λ ⊗ χ_{θ₁} ⊗ … ⊗ χ_{θ_ℓ}, 1⟩: the type sum over 𝒯(G).
pub fn multiplicity_generic(
    pd: &PresetData,
    params: &CountingParams,
) -> Result<QPoly, CountingError> {
    let poset = &pd.pseudo_levis;
    let w_order = pd.weyl.order() as u64;
    let mut total = RatFn::zero();
    for (rep, orbit) in poset.w_orbits(&pd.weyl) {
        let sub = &poset.elems[rep];
        let nu = isolated_mobius_weight(pd, rep);
        if nu.is_zero() {
            continue;
        }
        let wl = reflection_subgroup_perms(&pd.rs, &pd.weyl, sub).len() as u64;
        let classes = pd
            .tables
            .classes_of(sub)
            .ok_or(LieDataError::NotPseudoLevi)?;
        let mut levi_sum = RatFn::zero();
        for c in classes {
            let t = type_term(&c.green, &c.cent_order, c.dim_cent, params, w_order, wl, orbit.len());
            levi_sum = &levi_sum + &t;
        }
        total = &total + &(&levi_sum * &RatFn::from_poly(nu));
    }
    finalize_polynomial(total)
}

/// |𝒳_𝔢^F| for the pseudo-Levi subgroup with roots `esub` (the whole system
/// for |𝒳_𝔤^F|): |Z_E^F| q^{γ_E} Σ over 𝒯(𝔢) with μ_{𝓛(E)}(Φ_L, Φ_E).
pub fn additive_charvar_count(
    pd: &PresetData,
    esub: &Subsystem,
    params: &CountingParams,
) -> Result<QPoly, CountingError> {
    let rs = &pd.rs;
    let levis = enumerate_levis_within(rs, esub);
    let top = levis
        .index_of(esub)
        .expect("the ambient subsystem is its own Levi closure");
    let we_perms = reflection_subgroup_perms(rs, &pd.weyl, esub);
    let we_order = we_perms.len() as u64;
    let gamma_e = gamma_unchecked(pd, esub, params);
    let z_e = count_poly(&center_count(rs, esub));
    let mut total = RatFn::zero();
    for (rep, orbit) in w_orbits_under(&levis, &we_perms) {
        if !levis.leq(rep, top) {
            continue;
        }
        let mu = levis.mobius(rep, top).expect("comparable");
        if mu == 0 {
            continue;
        }
        let sub = &levis.elems[rep];
        let wl = reflection_subgroup_perms(rs, &pd.weyl, sub).len() as u64;
        let classes = pd
            .tables
            .classes_of(sub)
            .ok_or(LieDataError::NotPseudoLevi)?;
        let mut levi_sum = RatFn::zero();
        for c in classes {
            let t =
                type_term(&c.green, &c.cent_order, c.dim_cent, params, we_order, wl, orbit.len());
            levi_sum = &levi_sum + &t;
        }
        total = &total + &(&levi_sum * &RatFn::from_poly(QPoly::from_int(mu)));
    }
    let prefactor = &z_e * &QPoly::monomial(rat(1), gamma_e);
    finalize_polynomial(&RatFn::from_poly(prefactor) * &total)
}

/// Orbits of a poset's members under an explicit permutation set.
fn w_orbits_under(poset: &Poset, perms: &[Vec<u32>]) -> Vec<(usize, Vec<usize>)> {
    let mut seen = vec![false; poset.len()];
    let mut out = Vec::new();
    for i in 0..poset.len() {
        if seen[i] {
            continue;
        }
        let mut orbit = BTreeSet::new();
        for p in perms {
            let img = Subsystem::from_indices(
                poset.elems[i].roots.iter().map(|&r| p[r as usize]),
            );
            let j = poset.index_of(&img).expect("W_E permutes the Levis of E");
            orbit.insert(j);
        }
        for &j in &orbit {
            seen[j] = true;
        }
        out.push((i, orbit.into_iter().collect()));
    }
    out
}

fn finalize_polynomial(total: RatFn) -> Result<QPoly, CountingError> {
    let p = total
        .into_poly()
        .map_err(|e| CountingError::NonPolynomialResult(e.to_string()))?;
    if !p.is_integral() {
        return Err(CountingError::NonIntegralResult(p.to_string()));
    }
    Ok(p)
}

/// One isolated term of the decomposition.
#[derive(Debug, Clone, Serialize)]
pub struct IsolatedContribution {
    pub isolated: Vec<u32>,
    pub gamma: i64,
    pub n_count: CountFn,
    pub z_count: CountFn,
    pub charvar: QPoly,
    pub contribution: QPoly,
}

#[derive(Debug, Clone, Serialize)]
pub struct Decomposition {
    pub per_isolated: Vec<IsolatedContribution>,
    pub total: QPoly,
    /// validity congruence: polynomials hold for q ≡ 1 (mod this)
    pub modulus: u64,
}

/// Theorem-level decomposition: Σ over isolated E of
/// N(E)·|W|^{ℓ−1} / (q^{γ_E}·|Z_E^F|·|W_E|^{ℓ−1}) · |𝒳_𝔢^F|;
/// cross-asserted against the independent type sum.
pub fn decompose(pd: &PresetData, params: &CountingParams) -> Result<Decomposition, CountingError> {
    let poset = &pd.pseudo_levis;
    let w_order = pd.weyl.order() as u64;
    let ell = params.punctures;
    let mut per = Vec::new();
    let mut total = RatFn::zero();
    let mut modulus = 2u64;
    for esub in poset.elems.iter().filter(|s| is_isolated(&pd.rs, s)) {
        let cv = additive_charvar_count(pd, esub, params)?;
        let g = gamma_unchecked(pd, esub, params);
        let n_e = n_count(&pd.rs, poset, esub)?;
        let z_e = center_count(&pd.rs, esub);
        modulus = num_integer::Integer::lcm(&modulus, &n_e.modulus);
        let we = reflection_subgroup_perms(&pd.rs, &pd.weyl, esub).len() as u64;
        let num = count_poly(&n_e)
            .scale(&Rat::from_integer(BigInt::from(w_order).pow(ell - 1)));
        let den = (&count_poly(&z_e) * &QPoly::monomial(rat(1), g))
            .scale(&Rat::from_integer(BigInt::from(we).pow(ell - 1)));
        let term = &RatFn::from_ratio(num, den) * &RatFn::from_poly(cv.clone());
        total = &total + &term;
        let contribution = term
            .into_poly()
            .map_err(|e| CountingError::NonPolynomialResult(e.to_string()))?;
        per.push(IsolatedContribution {
            isolated: esub.roots.iter().copied().collect(),
            gamma: g,
            n_count: n_e,
            z_count: z_e,
            charvar: cv,
            contribution,
        });
    }
    let total = finalize_polynomial(total)?;
    // the cross-formula identity is the theorem; disagreement is a hard error
    let direct = multiplicity_generic(pd, params)?;
    if direct != total {
        return Err(CountingError::DecompositionMismatch(
            direct.to_string(),
            total.to_string(),
        ));
    }
    Ok(Decomposition { per_isolated: per, total, modulus })
}

/// Negative coefficients of a polynomial, reported but never asserted.
#[derive(Debug, Clone, Serialize)]
pub struct PositivityReport {
    pub all_nonnegative: bool,
    pub negative_terms: Vec<(i64, String)>,
}

pub fn positivity_report(p: &QPoly) -> PositivityReport {
    let negative_terms: Vec<(i64, String)> = p
        .terms()
        .filter(|(_, c)| c.is_negative())
        .map(|(k, c)| (k, c.to_string()))
        .collect();
    PositivityReport { all_nonnegative: negative_terms.is_empty(), negative_terms }
}

/// Degree and leading-coefficient law: degree = (g−1)·dim G + dim Z_G + ℓ|Φ⁺|,
/// leading coefficient = that of the |Z_G^F| count polynomial.
pub fn leading_law_holds(pd: &PresetData, params: &CountingParams, m: &QPoly) -> bool {
    let expected_degree = (params.genus as i64 - 1) * pd.dim_g()
        + pd.dim_center()
        + params.punctures as i64 * pd.rs.n_positive() as i64;
    let z = center_count(&pd.rs, &pd.full());
    m.degree() == Some(expected_degree) && m.leading() == z.poly.leading()
}
