//! End-to-end verification of the SO5 worked example over ℚ(√6): seven exact
//! checks on the reference matrices, from skew-symmetry and genericity to the
//! isolated stabilizing torus element.

use crate::exact::{rat, rat_frac, QuadNum, Rat};
use crate::genericity::{is_generic, is_regular, CartanElement, GenericityOptions};
use crate::refdata::*;
use crate::rootsys::{build, preset};
use crate::subposet::{enumerate_levis, is_isolated, Subsystem};
use num_traits::Zero;
use serde::Serialize;

#[derive(Debug, Clone, Serialize)]
pub struct AppendixCheck {
    pub step: u32,
    pub name: String,
    pub passed: bool,
}

#[derive(Debug, thiserror::Error)]
#[error("appendix verification failed at step {step}: {name}")]
pub struct AppendixError {
    pub step: u32,
    pub name: String,
}

type QMat = Vec<Vec<QuadNum>>;

fn qn(a: Rat) -> QuadNum {
    QuadNum::from_rat(a)
}

fn int_mat(m: &[[i64; 5]; 5]) -> QMat {
    m.iter().map(|row| row.iter().map(|&x| qn(rat(x))).collect()).collect()
}

fn sqrt6_mat(m: &[[i64; 5]; 5]) -> QMat {
    m.iter().map(|row| row.iter().map(|&x| QuadNum::radical(rat(x), 6)).collect()).collect()
}

fn scaled_mat(m: &[[i64; 5]; 5], den: i64) -> QMat {
    m.iter().map(|row| row.iter().map(|&x| qn(rat_frac(x, den))).collect()).collect()
}

fn mat_mul(a: &QMat, b: &QMat) -> QMat {
    let n = a.len();
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let mut acc = QuadNum::from_int(0);
                    for k in 0..n {
                        acc = acc
                            .checked_add(&a[i][k].checked_mul(&b[k][j]).unwrap())
                            .unwrap();
                    }
                    acc
                })
                .collect()
        })
        .collect()
}

fn mat_transpose(a: &QMat) -> QMat {
    let n = a.len();
    (0..n).map(|i| (0..n).map(|j| a[j][i].clone()).collect()).collect()
}

fn mat_add(a: &QMat, b: &QMat) -> QMat {
    a.iter()
        .zip(b)
        .map(|(ra, rb)| ra.iter().zip(rb).map(|(x, y)| x.checked_add(y).unwrap()).collect())
        .collect()
}

fn mat_neg(a: &QMat) -> QMat {
    a.iter().map(|r| r.iter().map(|x| x.clone().neg_q()).collect()).collect()
}

trait NegQ {
    fn neg_q(self) -> QuadNum;
}
impl NegQ for QuadNum {
    fn neg_q(self) -> QuadNum {
        QuadNum { a: -self.a, b: -self.b, d: self.d }
    }
}

fn is_zero_mat(a: &QMat) -> bool {
    a.iter().all(|r| r.iter().all(|x| x.is_zero()))
}

fn identity(n: usize) -> QMat {
    (0..n)
        .map(|i| (0..n).map(|j| qn(if i == j { rat(1) } else { rat(0) })).collect())
        .collect()
}

/// Characteristic polynomial by Newton's identities on power traces
/// (coefficients low to high).
fn charpoly(m: &QMat) -> Vec<QuadNum> {
    let n = m.len();
    let mut powers = vec![identity(n)];
    for _ in 0..n {
        powers.push(mat_mul(powers.last().unwrap(), m));
    }
    let trace = |a: &QMat| -> QuadNum {
        let mut acc = QuadNum::from_int(0);
        for i in 0..n {
            acc = acc.checked_add(&a[i][i]).unwrap();
        }
        acc
    };
    let p: Vec<QuadNum> = (1..=n).map(|k| trace(&powers[k])).collect();
    // e_0 = 1; k e_k = sum_{i=1..k} (-1)^{i-1} e_{k-i} p_i
    let mut e = vec![QuadNum::from_int(1)];
    for k in 1..=n {
        let mut acc = QuadNum::from_int(0);
        for i in 1..=k {
            let term = e[k - i].checked_mul(&p[i - 1]).unwrap();
            let signed = if i % 2 == 1 { term } else { term.neg_q() };
            acc = acc.checked_add(&signed).unwrap();
        }
        e.push(acc.scale(&rat_frac(1, k as i64)));
    }
    // char poly = sum (-1)^k e_k x^{n-k}
    let mut coeffs = vec![QuadNum::from_int(0); n + 1];
    for (k, ek) in e.iter().enumerate() {
        let c = if k % 2 == 0 { ek.clone() } else { ek.clone().neg_q() };
        coeffs[n - k] = c;
    }
    coeffs
}

/// Run the seven checks; any failure is a hard error naming the failed step.
/// Pass an optional mutation of one g1 entry for the negative control.
pub fn verify_so5_appendix() -> Result<Vec<AppendixCheck>, AppendixError> {
    verify_with(|g1| g1)
}

pub fn verify_with(
    mutate_g1: impl Fn(QMat) -> QMat,
) -> Result<Vec<AppendixCheck>, AppendixError> {
    let mut checks = Vec::new();
    let mut record = |step: u32, name: &str, passed: bool| -> Result<(), AppendixError> {
        checks.push(AppendixCheck { step, name: name.to_string(), passed });
        if passed {
            Ok(())
        } else {
            Err(AppendixError { step, name: name.to_string() })
        }
    };
    let s1 = int_mat(&S1);
    let s2 = int_mat(&S2);
    let s3 = sqrt6_mat(&S3_SQRT6);
    let g1 = mutate_g1(scaled_mat(&G1_TIMES_3, 3));
    let g2 = scaled_mat(&G2_TIMES_3, 3);
    let a1 = int_mat(&AD1);
    let a2 = int_mat(&AD2);
    let a3 = int_mat(&AD3);

    // (1) skew-symmetric and regular
    let skew = |m: &QMat| is_zero_mat(&mat_add(m, &mat_transpose(m)));
    let (rs, weyl, _) = build(&preset("SO5").expect("preset")).expect("rank");
    let q6 = |a: i64, b: i64| QuadNum::new(rat(a), rat(b), 6);
    let c1 = CartanElement::new(vec![q6(S_COORDS_RATIONAL[0][0], 0), q6(S_COORDS_RATIONAL[0][1], 0)]);
    let c2 = CartanElement::new(vec![q6(S_COORDS_RATIONAL[1][0], 0), q6(S_COORDS_RATIONAL[1][1], 0)]);
    let c3 = CartanElement::new(vec![q6(0, S3_COORDS_SQRT6[0]), q6(0, S3_COORDS_SQRT6[1])]);
    let regular_all =
        [&c1, &c2, &c3].iter().all(|c| is_regular(&rs, c));
    record(1, "s1, s2, s3 skew-symmetric and regular", skew(&s1) && skew(&s2) && skew(&s3) && regular_all)?;

    // (2) genericity, including the explicit sum inequalities
    let levis = enumerate_levis(&rs);
    let generic = is_generic(&rs, &weyl, &levis, &[c1.clone(), c2.clone(), c3.clone()], &GenericityOptions::default())
        .map(|r| r.verdict)
        .unwrap_or(false);
    // literal inequalities: rational sums a of the first two entries never
    // cancel ±8√6, and a ± 8√6 never equals b ± 4√6 for the occurring b
    let mut sums: Vec<(Rat, Rat)> = Vec::new();
    for w in &weyl.elements {
        let img = w.apply(&[rat(S_COORDS_RATIONAL[1][0]), rat(S_COORDS_RATIONAL[1][1])]);
        sums.push((
            rat(S_COORDS_RATIONAL[0][0]) + img[0].clone(),
            rat(S_COORDS_RATIONAL[0][1]) + img[1].clone(),
        ));
    }
    let mut literal = true;
    for (a, b) in &sums {
        for sa in [1i64, -1] {
            let lhs = QuadNum::new(a.clone(), rat(8 * sa), 6);
            if lhs.is_zero() {
                literal = false;
            }
            for sb in [1i64, -1] {
                let rhs = QuadNum::new(b.clone(), rat(4 * sb), 6);
                if lhs == rhs {
                    literal = false;
                }
            }
        }
    }
    record(2, "the tuple (s1, s2, s3) is generic", generic && literal)?;

    // (3) the displayed adjoint images
    let orth = |g: &QMat| is_zero_mat(&mat_add(&mat_mul(g, &mat_transpose(g)), &mat_neg(&identity(5))));
    let ad = |g: &QMat, s: &QMat| mat_mul(&mat_mul(g, s), &mat_transpose(g));
    let ok3 = orth(&g1)
        && orth(&g2)
        && is_zero_mat(&mat_add(&ad(&g1, &s1), &mat_neg(&a1)))
        && is_zero_mat(&mat_add(&ad(&g2, &s2), &mat_neg(&a2)));
    record(3, "Ad_g1(s1) and Ad_g2(s2) equal the displayed matrices", ok3)?;

    // (4) the three adjoint images sum to zero
    record(4, "the displayed adjoint images sum to zero", is_zero_mat(&mat_add(&mat_add(&a1, &a2), &a3)))?;

    // (5) characteristic polynomial of the third image matches s3's
    let cp3 = charpoly(&a3);
    let cps3 = charpoly(&s3);
    let expected: Vec<QuadNum> =
        AD3_CHARPOLY.iter().map(|&c| QuadNum::from_int(c)).collect();
    record(
        5,
        "char poly of the third image is x(x^2+384)(x^2+96), matching s3",
        cp3 == expected && cps3 == expected,
    )?;

    // (6) the torus witness stabilizes: commutes with g1, g2, and the third
    // image has the 4+1 block form preserved by it
    let t: QMat = (0..5)
        .map(|i| (0..5).map(|j| qn(rat(if i == j { T_WITNESS[i] } else { 0 }))).collect())
        .collect();
    let commutes = |m: &QMat| is_zero_mat(&mat_add(&mat_mul(&t, m), &mat_neg(&mat_mul(m, &t))));
    let block_form = (0..5).all(|i| a3[4][i].is_zero() && a3[i][4].is_zero());
    record(6, "t commutes with g1, g2 and the block form of the third image", commutes(&g1) && commutes(&g2) && commutes(&a3) && block_form)?;

    // (7) the centralizer root system of t is isolated and proper
    let phi_t: Vec<u32> = (0..rs.roots.len())
        .filter(|&i| {
            // alpha(t) for t with multiplicative coordinates (±1, ±1)
            let val: i64 = rs.lattice_coords[i]
                .iter()
                .zip(&T_WITNESS_TORUS_SIGNS)
                .map(|(&e, &s)| if e % 2 == 0 { 1 } else { s })
                .product();
            val == 1
        })
        .map(|i| i as u32)
        .collect();
    let phi_t = Subsystem::from_indices(phi_t);
    record(
        7,
        "the stabilizing torus element has an isolated proper centralizer",
        is_isolated(&rs, &phi_t) && phi_t.len() < rs.roots.len(),
    )?;
    Ok(checks)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn full_run_passes_all_seven() {
        let checks = verify_so5_appendix().unwrap();
        assert_eq!(checks.len(), 7);
        assert!(checks.iter().all(|c| c.passed));
    }

    #[test]
    fn perturbing_g1_fails_step_three() {
        let err = verify_with(|mut g1| {
            g1[0][1] = QuadNum::from_int(1);
            g1
        })
        .unwrap_err();
        assert_eq!(err.step, 3);
    }
}
