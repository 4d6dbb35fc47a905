//! Unipotent class scanning: Jordan types, block-form discriminant
//! invariants, intrinsic class labels, fixed-flag (Green) counts, and the
//! centralizer-order identity |C(u)| = |B|·Q(u)/|class ∩ U|.

use super::fq::{Felt, FqField};
use super::mat::{kernel_basis, mat_vec, row_rank, FqMat};
use super::model::{FormKind, MatrixModel, ModelName};
use std::collections::HashMap;

/// Class invariant: Jordan type plus quadratic block-form data.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ClassInvariant {
    pub jordan: Vec<u8>,
    /// per relevant block size d: the disc tag
    pub tags: Vec<(u8, DiscTag)>,
    /// SO4 only: which ruling the (2,2) image plane belongs to
    pub ruling: Option<u8>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum DiscTag {
    /// 1-dimensional multiplicity space: square class of the discriminant
    /// (q-dependent twin naming; twins carry identical polynomial data)
    Sq,
    Nonsq,
    /// 2-dimensional multiplicity space: hyperbolic or anisotropic plane
    /// (intrinsic, stable in q)
    Split,
    Aniso,
}

pub fn jordan_type(f: &FqField, u: &FqMat) -> Vec<u8> {
    let n = u.dim();
    let nm = u.sub(f, &FqMat::identity(n));
    let mut ranks = vec![n];
    let mut p = FqMat::identity(n);
    for _ in 0..n + 1 {
        p = p.mul(f, &nm);
        ranks.push(p.rank(f));
        if *ranks.last().unwrap() == 0 {
            break;
        }
    }
    while ranks.len() < n + 2 {
        ranks.push(0);
    }
    let mut part = Vec::new();
    for k in 1..=n {
        let blocks =
            (ranks[k - 1] - ranks[k]) as i64 - (ranks[k] as i64 - ranks[k + 1] as i64);
        for _ in 0..blocks {
            part.push(k as u8);
        }
    }
    part.sort_unstable_by(|a, b| b.cmp(a));
    part
}

fn form_matrix(f: &FqField, m: &MatrixModel) -> FqMat {
    let n = m.dim;
    let mut fm = FqMat::zero(n);
    for i in 0..n {
        for j in 0..n {
            fm.set(i, j, f.from_int(m.form_mat[i][j]));
        }
    }
    fm
}

fn bilinear(f: &FqField, fm: &FqMat, v: &[Felt], w: &[Felt]) -> Felt {
    let n = v.len();
    let mut acc = 0;
    for i in 0..n {
        if v[i] == 0 {
            continue;
        }
        for j in 0..n {
            if fm.at(i, j) != 0 && w[j] != 0 {
                acc = f.add(acc, f.mul(v[i], f.mul(fm.at(i, j), w[j])));
            }
        }
    }
    acc
}

/// Discriminant (square class) of the induced form ⟨v, n^{d−1} w⟩ on the
/// d-block multiplicity space ker(n^d) / (ker(n^{d−1}) + im(n) ∩ ker(n^d)).
/// Returns None when the space is zero or the form degenerates.
fn block_form_disc(f: &FqField, m: &MatrixModel, u: &FqMat, d: usize) -> Option<(usize, bool)> {
    let n = u.dim();
    let fm = form_matrix(f, m);
    let nm = u.sub(f, &FqMat::identity(n));
    let nd1 = nm.pow(f, (d - 1) as u64);
    let nd = nd1.mul(f, &nm);
    let nd2 = nd.mul(f, &nm);
    let ker_nd = kernel_basis(f, &nd);
    let mut sub = kernel_basis(f, &nd1);
    for x in kernel_basis(f, &nd2) {
        sub.push(mat_vec(f, &nm, &x));
    }
    // complement of span(sub) inside span(ker_nd)
    let rank0 = row_rank(f, &sub);
    let mut comp: Vec<Vec<Felt>> = Vec::new();
    let mut cur = sub.clone();
    for v in &ker_nd {
        let mut trial = cur.clone();
        trial.push(v.clone());
        if row_rank(f, &trial) > rank0 + comp.len() {
            comp.push(v.clone());
            cur = trial;
        }
    }
    if comp.is_empty() {
        return None;
    }
    let gram: Vec<Vec<Felt>> = comp
        .iter()
        .map(|v| comp.iter().map(|w| bilinear(f, &fm, v, &mat_vec(f, &nd1, w))).collect())
        .collect();
    let det = small_det(f, &gram);
    if det == 0 {
        return None;
    }
    Some((comp.len(), f.is_square(det)))
}

fn small_det(f: &FqField, g: &[Vec<Felt>]) -> Felt {
    let n = g.len();
    let mut a: Vec<Vec<Felt>> = g.to_vec();
    let mut d: Felt = 1;
    for c in 0..n {
        let Some(p) = (c..n).find(|&i| a[i][c] != 0) else { return 0 };
        if p != c {
            a.swap(p, c);
            d = f.neg(d);
        }
        d = f.mul(d, a[c][c]);
        let inv = f.inv(a[c][c]);
        for i in (c + 1)..n {
            if a[i][c] != 0 {
                let fac = f.mul(a[i][c], inv);
                for j in c..n {
                    a[i][j] = f.sub(a[i][j], f.mul(fac, a[c][j]));
                }
            }
        }
    }
    d
}

/// Which ruling of the split quadric the totally singular plane im(u−1)
/// belongs to: dim(im ∩ span(e₁,e₂)) mod 2.
fn so4_ruling(f: &FqField, u: &FqMat) -> u8 {
    let n = u.dim();
    let nm = u.sub(f, &FqMat::identity(n));
    let cols: Vec<Vec<Felt>> = (0..n)
        .map(|j| (0..n).map(|i| nm.at(i, j)).collect())
        .filter(|c: &Vec<Felt>| c.iter().any(|&x| x != 0))
        .collect();
    let dim_im = row_rank(f, &cols);
    let mut both = cols;
    let mut e1 = vec![0; n];
    e1[0] = 1;
    let mut e2 = vec![0; n];
    e2[1] = 1;
    both.push(e1);
    both.push(e2);
    let dim_sum = row_rank(f, &both);
    ((dim_im + 2 - dim_sum) % 2) as u8
}

pub fn invariant(f: &FqField, m: &MatrixModel, u: &FqMat) -> ClassInvariant {
    let jordan = jordan_type(f, u);
    let mut tags = Vec::new();
    let relevant_parity = match m.form {
        FormKind::Alternating => 0,
        FormKind::Symmetric => 1,
        FormKind::None => 2, // no form invariants for GL
    };
    let mut sizes: Vec<u8> = jordan.clone();
    sizes.dedup();
    for &d in &sizes {
        if relevant_parity == 2 || (d as usize) % 2 != relevant_parity {
            continue;
        }
        if let Some((dim, is_sq)) = block_form_disc(f, m, u, d as usize) {
            let tag = if dim == 2 {
                // hyperbolic plane iff disc ~ -1 mod squares
                if f.is_square(f.neg(1)) == is_sq {
                    DiscTag::Split
                } else {
                    DiscTag::Aniso
                }
            } else if is_sq {
                DiscTag::Sq
            } else {
                DiscTag::Nonsq
            };
            tags.push((d, tag));
        }
    }
    let ruling = if m.name == ModelName::SO4 && jordan == vec![2, 2] {
        Some(so4_ruling(f, u))
    } else {
        None
    };
    ClassInvariant { jordan, tags, ruling }
}

/// Stable label components: Jordan type, split/aniso tags, ruling. The
/// q-dependent Sq/Nonsq bits enter labels only to separate equal-data twins.
fn stable_part(inv: &ClassInvariant) -> String {
    if inv.jordan.iter().all(|&d| d == 1) || inv.jordan.is_empty() {
        return "1".to_string();
    }
    let mut s: String = inv.jordan.iter().map(|d| d.to_string()).collect();
    for (_, t) in &inv.tags {
        match t {
            DiscTag::Split => s.push_str("-split"),
            DiscTag::Aniso => s.push_str("-aniso"),
            _ => {}
        }
    }
    if let Some(r) = inv.ruling {
        s.push_str(if r == 0 { "-L" } else { "-R" });
    }
    s
}

fn bit_suffix(inv: &ClassInvariant) -> String {
    inv.tags
        .iter()
        .filter_map(|(_, t)| match t {
            DiscTag::Sq => Some("-sq"),
            DiscTag::Nonsq => Some("-nonsq"),
            _ => None,
        })
        .collect()
}

/// Per-q scan result for one unipotent class.
#[derive(Debug, Clone)]
pub struct ScannedClass {
    pub label: String,
    pub green: u64,
    pub u_count: u64,
    pub cent_order: u64,
    pub representative: FqMat,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ScanError {
    #[error("centralizer identity fails for class {0}: |B|·green = {1} not divisible by {2}")]
    CentralizerIdentity(String, u64, u64),
    #[error("class labels collide at q = {0}: {1}")]
    LabelCollision(u64, String),
}

/// Scan the unipotent radical, bucket by invariant, label, count fixed flags
/// of one representative per class, and derive centralizer orders.
pub fn class_scan(f: &FqField, m: &MatrixModel, cosets: &[FqMat]) -> Result<Vec<ScannedClass>, ScanError> {
    let mut buckets: HashMap<ClassInvariant, (FqMat, u64)> = HashMap::new();
    for u in m.unipotent_elements(f) {
        let inv = invariant(f, m, &u);
        buckets.entry(inv).and_modify(|e| e.1 += 1).or_insert((u, 1));
    }
    // label assignment: stable part, with disc bits only to split groups
    let mut by_stable: HashMap<String, Vec<&ClassInvariant>> = HashMap::new();
    for inv in buckets.keys() {
        by_stable.entry(stable_part(inv)).or_default().push(inv);
    }
    let mut labels: HashMap<ClassInvariant, String> = HashMap::new();
    for (stable, invs) in &by_stable {
        if invs.len() == 1 {
            labels.insert(invs[0].clone(), stable.clone());
        } else {
            for inv in invs {
                let lab = format!("{stable}{}", bit_suffix(inv));
                if labels.values().any(|l| l == &lab) {
                    return Err(ScanError::LabelCollision(f.q as u64, lab));
                }
                labels.insert((*inv).clone(), lab);
            }
        }
    }
    let inv_cosets: Vec<FqMat> = cosets.iter().map(|r| r.inv(f).expect("coset rep")).collect();
    let borel = m.borel_order(f.q as u64);
    let mut out = Vec::new();
    for (inv, (rep, ucount)) in buckets {
        let label = labels[&inv].clone();
        let mut green = 0u64;
        for (r, ri) in cosets.iter().zip(&inv_cosets) {
            if ri.mul(f, &rep).mul(f, r).is_upper_triangular() {
                green += 1;
            }
        }
        let num = borel * green;
        if num % ucount != 0 {
            return Err(ScanError::CentralizerIdentity(label, num, ucount));
        }
        out.push(ScannedClass { label, green, u_count: ucount, cent_order: num / ucount, representative: rep });
    }
    out.sort_by(|a, b| a.label.cmp(&b.label));
    Ok(out)
}

/// Springer identification at odd q: the Cayley transform
/// n ↦ (1 + n/2)(1 − n/2)^{-1}, an L-equivariant bijection from nilpotents to
/// unipotents that preserves centralizers.
pub fn cayley(f: &FqField, n: &FqMat) -> FqMat {
    assert!(f.p != 2);
    let half = f.inv(f.from_int(2));
    let nh = n.scale(f, half);
    let id = FqMat::identity(n.dim());
    let plus = id.add(f, &nh);
    let minus = id.sub(f, &nh);
    plus.mul(f, &minus.inv(f).expect("1 - n/2 invertible for nilpotent n"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::model::{model, ModelName};

    fn scan(name: ModelName, q: u64) -> Vec<ScannedClass> {
        let f = FqField::of_order(q).unwrap();
        let m = model(name);
        let cosets = m.borel_cosets(&f);
        class_scan(&f, &m, &cosets).unwrap()
    }

    #[test]
    fn sl2_classes_at_small_q() {
        for q in [3u64, 5, 7, 9] {
            let s = scan(ModelName::SL2, q);
            assert_eq!(s.len(), 3);
            let one = s.iter().find(|c| c.label == "1").unwrap();
            assert_eq!(one.green, q + 1);
            assert_eq!(one.cent_order, q * (q * q - 1));
            for lab in ["2-sq", "2-nonsq"] {
                let c = s.iter().find(|c| c.label == lab).unwrap();
                assert_eq!(c.green, 1, "regular unipotent lies in one Borel");
                assert_eq!(c.cent_order, 2 * q);
                assert_eq!(c.u_count, (q - 1) / 2);
            }
        }
    }

    #[test]
    fn sp4_class_table_at_q3() {
        let s = scan(ModelName::Sp4, 3);
        let q = 3u64;
        let expect: Vec<(&str, u64, u64)> = vec![
            ("1", (q + 1) * (q + 1) * (q * q + 1), q.pow(4) * (q * q - 1) * (q.pow(4) - 1)),
            ("211-nonsq", (q + 1) * (q + 1), 2 * q.pow(4) * (q * q - 1)),
            ("211-sq", (q + 1) * (q + 1), 2 * q.pow(4) * (q * q - 1)),
            ("22-aniso", q + 1, 2 * q.pow(3) * (q + 1)),
            ("22-split", 3 * q + 1, 2 * q.pow(3) * (q - 1)),
            ("4-nonsq", 1, 2 * q * q),
            ("4-sq", 1, 2 * q * q),
        ];
        assert_eq!(s.len(), 7);
        for (lab, green, cent) in expect {
            let c = s.iter().find(|c| c.label == lab).unwrap_or_else(|| panic!("{lab}"));
            assert_eq!(c.green, green, "{lab} green");
            assert_eq!(c.cent_order, cent, "{lab} cent");
        }
        assert_eq!(s.iter().find(|c| c.label == "1").unwrap().green, 160);
    }

    #[test]
    fn so5_and_so4_class_counts() {
        assert_eq!(scan(ModelName::SO5, 3).len(), 5);
        let so4 = scan(ModelName::SO4, 3);
        assert_eq!(so4.len(), 5);
        // the two rulings have identical data
        let l = so4.iter().find(|c| c.label == "22-L").unwrap();
        let r = so4.iter().find(|c| c.label == "22-R").unwrap();
        assert_eq!((l.green, l.cent_order), (r.green, r.cent_order));
        assert_eq!(l.cent_order, 9 * 8); // q^2 (q^2-1) at q=3
    }

    #[test]
    fn steinberg_unipotent_count() {
        // sum over classes of |G|/|C(u)| = q^(2N)
        for (name, q) in
            [(ModelName::Sp4, 3u64), (ModelName::SO5, 3), (ModelName::SL2, 7), (ModelName::GL2, 5)]
        {
            let f = FqField::of_order(q).unwrap();
            let m = model(name);
            let cosets = m.borel_cosets(&f);
            let s = class_scan(&f, &m, &cosets).unwrap();
            let group_order = m.borel_order(q) * cosets.len() as u64;
            let unipotents: u64 = s.iter().map(|c| group_order / c.cent_order).sum();
            assert_eq!(unipotents, q.pow(2 * m.n_positive() as u32), "{name:?} q={q}");
        }
    }

    #[test]
    fn cayley_preserves_centralizer_structure() {
        let f = FqField::new(5, 1).unwrap();
        let m = model(ModelName::Sp4);
        // a nilpotent from a root generator
        let x = m.xroot(&f, 6, 2); // x_{2e1}(2) = 1 + 2E
        let n = x.sub(&f, &FqMat::identity(4));
        let u = cayley(&f, &n);
        assert_eq!(jordan_type(&f, &u), jordan_type(&f, &x));
        // centralizer equality spot check: everything commuting with n
        // commutes with cayley(n) and conversely
        let t = m.torus(&f, &[2, 3]);
        let ti = t.inv(&f).unwrap();
        let conj_n = t.mul(&f, &n).mul(&f, &ti);
        let conj_u = t.mul(&f, &u).mul(&f, &ti);
        assert_eq!(cayley(&f, &conj_n), conj_u, "equivariance");
    }
}
