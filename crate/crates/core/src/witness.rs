//! Witness polynomials: explicit F with M_25(F) = 5^3 q and
//! M_27(F) = 3^4 q or 3^5 q, assembled from exact norm representations and
//! verified by recomputing the full profile.
//!
//! Every construction follows the same two-step recipe. First the unit
//! reduction is replayed with exact integer arithmetic to pull out a norm
//! identity such as 5q = N_1(1 - x + 5g(x)) - never just truncated digits.
//! Then the assembly
//!
//!   F(x) = (x^l - 1)/(x - 1) * f(x) - lambda (x^n - 1)/(x - 1)
//!
//! pins F(1) while leaving every norm untouched, with l chosen minimal
//! positive for its congruence. All intermediate division steps check
//! integrality and abort loudly on failure: a failure there means the
//! classification was wrong, not a recoverable state.

use crate::arith::factor_bigint;
use crate::classify::{
    classify_elt_mod9, classify_mod3, classify_mod5, find_norm_element, TypeLabel,
};
use crate::cyclo::{div_exact_int, div_exact_omega_minus_1_pow, CycloElt, CycloIndex};
use crate::error::{Error, Result};
use crate::measure::{measure, norm, NormProfile};
use crate::poly::{cyclotomic_poly, IntPoly};
use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// An exact norm representation recovered from the unit reduction, the raw
/// material for the witness assemblies. The stated identity is verified by
/// resultant on construction.
#[derive(Clone, Debug)]
pub enum ExactTypeRep {
    /// q = N_1(1 + (x-1)^3 h(x)) in Z[omega_5]; Type 1 iff 5 does not
    /// divide h(1).
    FiveNorm { q: u64, h: IntPoly },
    /// q = N_1(delta + 3A(x-1) + 9B) in Z[omega_3]; Type 1 iff 3 does not
    /// divide A.
    ThreeNorm {
        q: u64,
        delta: u8,
        a: BigInt,
        b: BigInt,
    },
    /// q = N_2(1 + (x-1)^5 h(x)) with 3 not dividing h(1): the 9-norm
    /// Type-1 shape.
    NineNormPi5 { q: u64, h: IntPoly },
    /// q = N_2(1 + (x-1)^7 t(x)): the 9-norm Type-2 shape; Type 3 iff 3
    /// does not divide t(1).
    NineNormPi7 { q: u64, t: IntPoly },
}

fn check_norm_identity(f: &IntPoly, p: u64, k: u32, expect: &BigInt) -> Result<()> {
    let got = norm(f, p, k);
    if &got == expect {
        Ok(())
    } else {
        Err(Error::Internal(format!(
            "norm identity failed: N_{k}({f}) = {got}, expected {expect} (p = {p})"
        )))
    }
}

/// Replay the unit reduction for q in the given ring with exact arithmetic
/// and recover the representation polynomial (or triple) as integers.
pub fn exact_type_representation(q: u64, idx: CycloIndex) -> Result<ExactTypeRep> {
    match (idx.p(), idx.level()) {
        (5, 1) => {
            let verdict = classify_mod5(q)?;
            let reduced = verdict.reduction.reduced();
            let h = div_exact_omega_minus_1_pow(&reduced.sub_int(&BigInt::one()), 3).to_poly();
            let rep = IntPoly::one().add(&IntPoly::from_i64(&[-1, 1]).pow(3).mul(&h));
            check_norm_identity(&rep, 5, 1, &BigInt::from(q))?;
            Ok(ExactTypeRep::FiveNorm { q, h })
        }
        (3, 1) => {
            let verdict = classify_mod3(q)?;
            let cert = &verdict.reduction;
            let (delta, a, b) = (
                cert.delta.unwrap(),
                cert.a.clone().unwrap(),
                cert.b.clone().unwrap(),
            );
            let rep = IntPoly::constant(BigInt::from(delta) + BigInt::from(9) * &b)
                .add(&IntPoly::from_i64(&[-1, 1]).mul_scalar(&(BigInt::from(3) * &a)));
            check_norm_identity(&rep, 3, 1, &BigInt::from(q))?;
            Ok(ExactTypeRep::ThreeNorm { q, delta, a, b })
        }
        (3, 2) => {
            let e = find_norm_element(q, idx)?;
            let (label, cert) = classify_elt_mod9(&e)?;
            let reduced = cert.reduced();
            if label == TypeLabel::Type1 {
                let h = div_exact_omega_minus_1_pow(&reduced.sub_int(&BigInt::one()), 5).to_poly();
                let rep = IntPoly::one().add(&IntPoly::from_i64(&[-1, 1]).pow(5).mul(&h));
                check_norm_identity(&rep, 3, 2, &BigInt::from(q))?;
                return Ok(ExactTypeRep::NineNormPi5 { q, h });
            }
            let t = div_exact_omega_minus_1_pow(&reduced.sub_int(&BigInt::one()), 7).to_poly();
            let rep = IntPoly::one().add(&IntPoly::from_i64(&[-1, 1]).pow(7).mul(&t));
            check_norm_identity(&rep, 3, 2, &BigInt::from(q))?;
            Ok(ExactTypeRep::NineNormPi7 { q, t })
        }
        _ => Err(Error::UnsupportedRing {
            p: idx.p(),
            level: idx.level(),
        }),
    }
}

/// A constructed witness: the assembled polynomial plus everything needed
/// to re-verify it from scratch.
#[derive(Clone, Debug)]
pub struct WitnessPlan {
    pub target: BigInt,
    pub p: u64,
    pub t: u32,
    pub ell: u64,
    pub lambda: BigInt,
    pub f_core: IntPoly,
    pub witness: IntPoly,
    pub profile: NormProfile,
}

impl WitnessPlan {
    /// Recompute the profile from the stored polynomial and compare.
    pub fn self_verify(&self) -> bool {
        let fresh = measure(&self.witness, self.p, self.t);
        fresh == self.profile && fresh.measure == self.target
    }
}

/// The common assembly: ((x^l - 1)/(x - 1)) f - lambda (x^n - 1)/(x - 1),
/// reduced mod x^n - 1 (the measure only depends on the residue).
fn assemble(
    f_core: &IntPoly,
    ell: u64,
    lambda: &BigInt,
    p: u64,
    t: u32,
    target: &BigInt,
    expected_profile: &[BigInt],
) -> Result<WitnessPlan> {
    let n = p.pow(t) as usize;
    let witness = IntPoly::geometric(ell as usize)
        .mul(f_core)
        .sub(&IntPoly::geometric(n).mul_scalar(lambda))
        .reduce_mod_xn_minus_1(n);
    let profile = measure(&witness, p, t);
    if &profile.measure != target {
        return Err(Error::Internal(format!(
            "assembled witness has measure {} instead of {target}",
            profile.measure
        )));
    }
    let mut shape = vec![profile.f_at_1.clone()];
    shape.extend(profile.norms.iter().cloned());
    if shape != expected_profile {
        return Err(Error::Internal(format!(
            "assembled witness has profile {shape:?} instead of {expected_profile:?}"
        )));
    }
    Ok(WitnessPlan {
        target: target.clone(),
        p,
        t,
        ell,
        lambda: lambda.clone(),
        f_core: f_core.clone(),
        witness,
        profile,
    })
}

fn minimal_ell(c: &BigInt, modulus: u64) -> (u64, BigInt) {
    for ell in 1..=modulus {
        let v = c * BigInt::from(ell) - BigInt::one();
        if (&v % BigInt::from(modulus)).is_zero() {
            return (ell, v / BigInt::from(modulus));
        }
    }
    unreachable!("c is a unit modulo {modulus}")
}

/// M_25(F) = 5^3 q for a perissad q, with profile (5, 5q, 5). Uses
/// 5q = N_1(1 - x + 5g) with g = -(x^2+1)^2 h mod Phi_5.
pub fn witness_5cubed(q: u64) -> Result<WitnessPlan> {
    let idx = CycloIndex::new(5, 1)?;
    let rep = exact_type_representation(q, idx)?;
    let ExactTypeRep::FiveNorm { h, .. } = rep else {
        unreachable!()
    };
    if (h.eval_at_one() % 5u8).is_zero() {
        return Err(Error::TypeMismatch(format!("{q} is an artiad")));
    }
    let phi5 = cyclotomic_poly(5, 1);
    let g = IntPoly::from_i64(&[1, 0, 1])
        .pow(2)
        .mul(&h)
        .neg()
        .monic_div_rem(&phi5)
        .1;
    let five_q = BigInt::from(5) * BigInt::from(q);
    check_norm_identity(
        &IntPoly::from_i64(&[1, -1]).add(&g.mul_scalar(&BigInt::from(5))),
        5,
        1,
        &five_q,
    )?;
    let g1 = g.eval_at_one();
    assert!(!(&g1 % 5u8).is_zero(), "g(1) must stay a unit mod 5");
    let (ell, lambda) = minimal_ell(&g1, 5);
    // f = (1 - x) + Phi_5(x^5) g(x), and Phi_5(x^5) = Phi_25(x)
    let f_core = IntPoly::from_i64(&[1, -1]).add(&cyclotomic_poly(5, 2).mul(&g));
    let target = BigInt::from(125u64) * BigInt::from(q);
    let expected = [BigInt::from(5), five_q, BigInt::from(5)];
    assemble(&f_core, ell, &lambda, 5, 2, &target, &expected)
}

/// Shared tail for the two Z[omega_9]-based builders: from the head form
/// e = pi + 3 delta(omega) + A pi^7 + ..., cancel the pi^7 digit with the
/// ladder unit and extract t with e' = pi + 3 delta(omega) + 3 (omega-1)^2
/// t(omega) exactly.
fn two_norms_form(e: &CycloElt, delta_poly: &IntPoly) -> Result<IntPoly> {
    let idx = e.index();
    let delta_elt = CycloElt::from_poly(idx, delta_poly);
    let pi = CycloElt::pi(idx);
    let head = pi.add(&delta_elt.mul_int(&BigInt::from(3)));
    let rem = e.sub(&head);
    let d7 = crate::cyclo::pi_digits(&rem, 8)[7];
    let adjusted = if d7 == 0 {
        e.clone()
    } else {
        let (u, _, _, _, _) = crate::classify::nine_ring_unit(idx, 6, d7);
        e.mul(&u)
    };
    let rem = adjusted.sub(&head);
    let rem3 = div_exact_int(&rem, &BigInt::from(3))
        .ok_or_else(|| Error::Internal("two-norms remainder not divisible by 3".into()))?;
    Ok(div_exact_omega_minus_1_pow(&rem3, 2).to_poly())
}

/// M_27(F) = 3^4 q for a Type-1 prime q = 1 mod 9, profile (3, 3, 3q, 3).
pub fn witness_3p4(q: u64) -> Result<WitnessPlan> {
    let idx = CycloIndex::new(3, 2)?;
    let rep = exact_type_representation(q, idx)?;
    let ExactTypeRep::NineNormPi5 { h, .. } = rep else {
        return Err(Error::TypeMismatch(format!(
            "{q} has no 9-norm Type-1 representation"
        )));
    };
    // e = (1 - omega)(1 + (omega-1)^5 h(omega)) = pi + 3 s(omega)
    let p_poly = IntPoly::one().add(&IntPoly::from_i64(&[-1, 1]).pow(5).mul(&h));
    let q_poly = IntPoly::from_i64(&[1, -1]).mul(&p_poly);
    let e = CycloElt::from_poly(idx, &q_poly);
    let s = div_exact_int(&e.sub(&CycloElt::pi(idx)), &BigInt::from(3))
        .ok_or_else(|| Error::Internal("pi * reduced - pi not divisible by 3".into()))?;
    let delta_poly = match s.digit0() {
        1 => IntPoly::from_i64(&[0, 1]), // delta(x) = x
        2 => IntPoly::from_i64(&[-1]),   // delta(x) = -1
        _ => {
            return Err(Error::Internal(format!(
                "q={q}: Type-1 head digit vanished"
            )))
        }
    };
    let t = two_norms_form(&e, &delta_poly)?;
    // 3q = N_2(1 - x + 3 delta(x) + 3 (x-1)^2 t(x))
    let three_q = BigInt::from(3) * BigInt::from(q);
    let two_norm_poly = IntPoly::from_i64(&[1, -1])
        .add(&delta_poly.mul_scalar(&BigInt::from(3)))
        .add(
            &IntPoly::from_i64(&[-1, 1])
                .pow(2)
                .mul(&t)
                .mul_scalar(&BigInt::from(3)),
        );
    check_norm_identity(&two_norm_poly, 3, 2, &three_q)?;
    let c = delta_poly.eval_at_one() + BigInt::from(3) * t.eval_at_one();
    let (ell, lambda) = minimal_ell(&c, 9);
    let phi9 = cyclotomic_poly(3, 2);
    let phi27 = cyclotomic_poly(3, 3);
    let f_core = IntPoly::from_i64(&[1, -1])
        .add(&phi27.mul(&delta_poly.add(&IntPoly::from_i64(&[-1, 1]).pow(2).mul(&t))))
        .add(
            &IntPoly::monomial(1, BigInt::one())
                .mul(&t)
                .mul(&phi9)
                .mul(&phi27),
        );
    let target = BigInt::from(81u64) * BigInt::from(q);
    let expected = [BigInt::from(3), BigInt::from(3), three_q, BigInt::from(3)];
    assemble(&f_core, ell, &lambda, 3, 3, &target, &expected)
}

/// M_27(F) = 3^5 q for a Type-1 prime q = 1 mod 3, profile (9, 3q, 3, 3).
pub fn witness_3p5_mod3(q: u64) -> Result<WitnessPlan> {
    let idx = CycloIndex::new(3, 1)?;
    let rep = exact_type_representation(q, idx)?;
    let ExactTypeRep::ThreeNorm { delta, a, b, .. } = rep else {
        unreachable!()
    };
    if (&a % 3u8).is_zero() {
        return Err(Error::TypeMismatch(format!("{q} is mod-3 Type 2")));
    }
    let b_shift = &a - &b;
    // 3q = N_1(delta (1-x) + 9A + 9B'(x-1))
    let three_q = BigInt::from(3) * BigInt::from(q);
    let one_norm_poly = IntPoly::from_i64(&[1, -1])
        .mul_scalar(&BigInt::from(delta))
        .add(&IntPoly::constant(BigInt::from(9) * &a))
        .add(&IntPoly::from_i64(&[-1, 1]).mul_scalar(&(BigInt::from(9) * &b_shift)));
    check_norm_identity(&one_norm_poly, 3, 1, &three_q)?;
    let (ell, lambda) = minimal_ell(&a, 3);
    let delta_poly = match delta {
        1 => IntPoly::one(),
        2 => IntPoly::from_i64(&[1, 0, 0, 1]),
        4 => IntPoly::from_i64(&[1, 0, 0, 1]).pow(2),
        _ => unreachable!(),
    };
    let phi9 = cyclotomic_poly(3, 2);
    let phi27 = cyclotomic_poly(3, 3);
    let f_core =
        delta_poly
            .mul(&IntPoly::from_i64(&[1, -1]))
            .add(
                &phi9.mul(&phi27).mul(
                    &IntPoly::constant(a.clone())
                        .add(&IntPoly::from_i64(&[-1, 1]).mul_scalar(&b_shift)),
                ),
            );
    let target = BigInt::from(243u64) * BigInt::from(q);
    let expected = [BigInt::from(9), three_q, BigInt::from(3), BigInt::from(3)];
    assemble(&f_core, ell, &lambda, 3, 3, &target, &expected)
}

/// M_27(F) = 3^5 q for a Type-3 prime q = 1 mod 9, profile (9, 3, 3q, 3).
pub fn witness_3p5_type3(q: u64) -> Result<WitnessPlan> {
    let idx = CycloIndex::new(3, 2)?;
    let rep = exact_type_representation(q, idx)?;
    let ExactTypeRep::NineNormPi7 { t: t_raw, .. } = rep else {
        return Err(Error::TypeMismatch(format!("{q} is 9-norm Type 1")));
    };
    if (t_raw.eval_at_one() % 3u8).is_zero() {
        return Err(Error::TypeMismatch(format!("{q} is Type 4")));
    }
    // e = (1-x)(1 + (x-1)^7 t_raw) at omega = pi + 3 (omega-1)^2 t'(omega)
    let q_poly = IntPoly::from_i64(&[1, -1])
        .mul(&IntPoly::one().add(&IntPoly::from_i64(&[-1, 1]).pow(7).mul(&t_raw)));
    let e = CycloElt::from_poly(idx, &q_poly);
    let rem = e.sub(&CycloElt::pi(idx));
    let rem3 = div_exact_int(&rem, &BigInt::from(3))
        .ok_or_else(|| Error::Internal("pi^8 remainder not divisible by 3".into()))?;
    let t = div_exact_omega_minus_1_pow(&rem3, 2).to_poly();
    let three_q = BigInt::from(3) * BigInt::from(q);
    let two_norm_poly = IntPoly::from_i64(&[1, -1]).add(
        &IntPoly::from_i64(&[-1, 1])
            .pow(2)
            .mul(&t)
            .mul_scalar(&BigInt::from(3)),
    );
    check_norm_identity(&two_norm_poly, 3, 2, &three_q)?;
    let t1 = t.eval_at_one();
    let (ell, lambda) = minimal_ell(&t1, 3);
    let phi9 = cyclotomic_poly(3, 2);
    let phi27 = cyclotomic_poly(3, 3);
    let f_core = IntPoly::from_i64(&[1, -1])
        .add(&phi27.mul(&IntPoly::from_i64(&[-1, 1]).pow(2)).mul(&t))
        .add(
            &IntPoly::monomial(1, BigInt::one())
                .mul(&phi9)
                .mul(&phi27)
                .mul(&t),
        );
    let target = BigInt::from(243u64) * BigInt::from(q);
    let expected = [BigInt::from(9), BigInt::from(3), three_q, BigInt::from(3)];
    assemble(&f_core, ell, &lambda, 3, 3, &target, &expected)
}

/// Phi_q (q prime) already reduced mod x^n - 1: coefficient j counts the
/// exponents below q congruent to j.
fn prime_cyclotomic_reduced(q: &BigUint, n: usize) -> IntPoly {
    let nb = BigUint::from(n as u64);
    let mut coeffs = Vec::with_capacity(n);
    for j in 0..n {
        let jb = BigUint::from(j as u64);
        if jb >= *q {
            coeffs.push(BigInt::zero());
        } else {
            let count = (q - &jb - 1u32) / &nb + 1u32;
            coeffs.push(BigInt::from(count));
        }
    }
    IntPoly::new(coeffs)
}

/// Scale a witness by a coprime integer m: multiply by prod Phi_q^a over
/// q^a exactly dividing m (and flip the sign of F for m < 0). The norms are
/// untouched; the measure picks up the factor m exactly.
pub fn multiply_coprime(plan: &WitnessPlan, m: &BigInt) -> Result<WitnessPlan> {
    if m.is_zero() {
        return Err(Error::NotCoprime("0".to_string(), plan.p));
    }
    if (m % BigInt::from(plan.p)).is_zero() {
        return Err(Error::NotCoprime(m.to_string(), plan.p));
    }
    let n = plan.p.pow(plan.t) as usize;
    let mut f = plan.witness.clone();
    if m.is_negative() {
        f = f.neg();
    }
    let fac = factor_bigint(m.magnitude(), crate::membership::DEFAULT_RHO_BUDGET);
    if let Some(u) = fac.unfactored {
        return Err(Error::FactorizationFailed(format!(
            "coprime cofactor {u} uncracked"
        )));
    }
    for (q, e) in fac.factors {
        let phi_q = prime_cyclotomic_reduced(&q, n);
        for _ in 0..e {
            f = f.mul(&phi_q).reduce_mod_xn_minus_1(n);
        }
    }
    let target = &plan.target * m;
    let profile = measure(&f, plan.p, plan.t);
    if profile.measure != target || profile.norms != plan.profile.norms {
        return Err(Error::Internal(
            "coprime multiplication changed the norms".to_string(),
        ));
    }
    Ok(WitnessPlan {
        target,
        p: plan.p,
        t: plan.t,
        ell: plan.ell,
        lambda: plan.lambda.clone(),
        f_core: plan.f_core.clone(),
        witness: f,
        profile,
    })
}

/// Exact check that F attains the expected measure over Z_{p^t}.
pub fn verify_witness(f: &IntPoly, p: u64, t: u32, expected: &BigInt) -> (bool, NormProfile) {
    let profile = measure(f, p, t);
    (&profile.measure == expected, profile)
}

/// Produce a witness for a Member verdict certified by a qualifying prime
/// (the v = 3 case of Z_25, v = 4 and 5 of Z_27): build the base witness
/// for the prime and absorb the leftover coprime cofactor. Returns None
/// for verdicts certified by coprimality or high p-power instead.
pub fn realize_member(
    verdict: &crate::membership::MembershipVerdict,
) -> Result<Option<WitnessPlan>> {
    use crate::membership::{Decision, MemberReason};
    if verdict.decision != Decision::Member {
        return Err(Error::NotApplicable("not a Member verdict".to_string()));
    }
    let MemberReason::QualifyingPrime { q, verdict: tv } = &verdict.reason else {
        return Ok(None);
    };
    let (v, _) = crate::arith::p_valuation(&verdict.value, if verdict.n == 25 { 5 } else { 3 });
    let base = match (verdict.n, v) {
        (25, 3) => witness_5cubed(*q)?,
        (27, 4) => witness_3p4(*q)?,
        (27, 5) => match tv.label {
            TypeLabel::Type1 => witness_3p5_mod3(*q)?,
            TypeLabel::Type3 => witness_3p5_type3(*q)?,
            _ => {
                return Err(Error::Internal(
                    "qualifying prime with unusable label".to_string(),
                ))
            }
        },
        _ => return Ok(None),
    };
    let (cof, rem) = verdict.value.div_rem(&base.target);
    if !rem.is_zero() {
        return Err(Error::Internal(
            "qualifying witness does not divide the target".to_string(),
        ));
    }
    if cof.is_one() {
        return Ok(Some(base));
    }
    Ok(Some(multiply_coprime(&base, &cof)?))
}
