//! Prime classification by pi-adic unit reduction, with independent oracles.
//!
//! A prime q = 1 mod 5 is reduced in Z[omega_5]: a generator f of a prime
//! ideal above q is multiplied by units +/- x^I (1+x)^J (x^4+x)^(2K) until it
//! reads 1 + (omega-1)^3 h(omega); the class of h(1) mod 5 is the deciding
//! digit (nonzero: Type 1, the perissads; zero: Type 2, the artiads).
//!
//! For q = 1 mod 3 the ring Z[omega_3] reduction lands on
//! delta + 3A(omega-1) + 9B with delta in {1,2,4}; Type 1 means 3 does not
//! divide A. Type-2 primes q = 1 mod 9 are refined in Z[omega_9] by pushing
//! the reduction to 1 + (omega-1)^7 t(omega); t(1) mod 3 splits Type 3 from
//! Type 4.
//!
//! The label never depends on the generator chosen: conjugating or swapping
//! units preserves it, and the suite checks that. Four further oracles
//! (Fibonacci entry point, quintic residues, Jacobi sums, the Dickson
//! quaternary form) cross-validate the mod-5 split, and two (the form
//! 4q = x^2 + 243y^2 and cubic residuosity of 3) the mod-3 split.

use crate::arith::{fib_pair_mod, is_prime_u64, mul_mod, pow_mod, primitive_root, sqrt_mod};
use crate::cyclo::{div_exact_omega_minus_1_pow, pi_digits, CycloElt, CycloIndex};
use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};
use serde::{Deserialize, Serialize};
use std::fmt;

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Context {
    Mod5,
    Mod3,
    Mod9,
}

impl fmt::Display for Context {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Context::Mod5 => "mod5",
            Context::Mod3 => "mod3",
            Context::Mod9 => "mod9",
        };
        write!(f, "{s}")
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub enum TypeLabel {
    Type1,
    Type2,
    Type3,
    Type4,
}

impl TypeLabel {
    /// Context-aware display: the mod-5 partition carries Tanner's names.
    pub fn in_context(&self, ctx: Context) -> &'static str {
        match (ctx, self) {
            (Context::Mod5, TypeLabel::Type1) => "Perissad",
            (Context::Mod5, TypeLabel::Type2) => "Artiad",
            (_, TypeLabel::Type1) => "Type1",
            (_, TypeLabel::Type2) => "Type2",
            (_, TypeLabel::Type3) => "Type3",
            (_, TypeLabel::Type4) => "Type4",
        }
    }
}

/// The unit-reduction data justifying a label. `sign * x^exp_x *
/// (1+x)^exp_one_plus_x * aux^exp_aux` multiplied into the generator
/// reproduces the recorded digit sequence; `aux` is (x^4+x)^2 for (5,1) and
/// (x^4+1) for (3,2).
#[derive(Clone, Debug)]
pub struct ReductionCertificate {
    pub generator: CycloElt,
    pub sign: i8,
    pub exp_x: u32,
    pub exp_one_plus_x: u32,
    pub exp_aux: u32,
    /// pi-adic digits of the reduced element: 5 digits for level-1 rings
    /// (deciding digit at pi^3), 9 for (3,2) (deciding digit at pi^7).
    pub digits: Vec<u8>,
    pub key_digit: u8,
    /// Only for the (3,1) reduction: the exact delta + 3A(omega-1) + 9B data.
    pub delta: Option<u8>,
    pub a: Option<BigInt>,
    pub b: Option<BigInt>,
}

impl ReductionCertificate {
    /// Rebuild the recorded unit as a ring element.
    pub fn unit(&self, idx: CycloIndex) -> CycloElt {
        let mut u = CycloElt::omega_pow(idx, self.exp_x as i64);
        let one_plus = CycloElt::one(idx).add(&CycloElt::omega(idx));
        u = u.mul(&one_plus.pow(self.exp_one_plus_x));
        let aux = match (idx.p(), idx.level()) {
            (5, 1) => CycloElt::omega_pow(idx, 4)
                .add(&CycloElt::omega(idx))
                .pow(2),
            (3, 2) => CycloElt::omega_pow(idx, 4).add(&CycloElt::one(idx)),
            _ => CycloElt::one(idx),
        };
        u = u.mul(&aux.pow(self.exp_aux));
        if self.sign < 0 {
            u = u.neg();
        }
        u
    }

    /// The reduced element `unit * generator`.
    pub fn reduced(&self) -> CycloElt {
        self.unit(self.generator.index()).mul(&self.generator)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FibonacciCertificate {
    pub index: u64,
    pub residue: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct JacobiCertificate {
    pub primitive_root: u64,
    /// q_0..q_4 with sum -1.
    pub q_coeffs: [i64; 5],
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DicksonCertificate {
    pub x: i64,
    pub u: i64,
    pub v: i64,
    pub w: i64,
}

#[derive(Clone, Debug)]
pub struct TypeVerdict {
    pub q: u64,
    pub context: Context,
    pub label: TypeLabel,
    pub reduction: ReductionCertificate,
}

impl TypeVerdict {
    pub fn label_str(&self) -> &'static str {
        self.label.in_context(self.context)
    }
}

fn require_prime_congruent(q: u64, modulus: u64) -> Result<()> {
    if !is_prime_u64(q) {
        return Err(Error::NotApplicable(format!("{q} is not prime")));
    }
    if q % modulus != 1 {
        return Err(Error::NotApplicable(format!("{q} is not 1 mod {modulus}")));
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// norm-q generators
// ---------------------------------------------------------------------------

/// A primitive `order`-th root of unity mod q (order = p^i), found by
/// exponentiating bases drawn from an RNG seeded by q, so the same generator
/// comes back on every run.
fn root_of_unity_mod(q: u64, order: u64, p: u64) -> u64 {
    let mut rng = ChaCha8Rng::seed_from_u64(q ^ 0x9e37_79b9_7f4a_7c15);
    loop {
        let a = 2 + rng.next_u64() % (q - 3);
        let r = pow_mod(a, (q - 1) / order, q);
        if r != 1 && pow_mod(r, order / p, q) != 1 {
            return r;
        }
    }
}

/// Search the ideal lattice {c : c(r) = 0 mod q} for an element of absolute
/// norm exactly q. The coefficient box grows geometrically; candidates are
/// generated from the lattice congruence and accepted on the exact resultant.
pub fn find_norm_element(q: u64, idx: CycloIndex) -> Result<CycloElt> {
    let order = idx.order();
    if q == idx.p() || !is_prime_u64(q) {
        return Err(Error::NotApplicable(format!(
            "{q} must be a prime different from {}",
            idx.p()
        )));
    }
    if q % order != 1 {
        return Err(Error::NoSplit { q, modulus: order });
    }
    let r = root_of_unity_mod(q, order, idx.p());
    let phi = idx.phi();
    let mut rpow = vec![1u64; phi];
    for k in 1..phi {
        rpow[k] = mul_mod(rpow[k - 1], r, q);
    }
    let qi = BigInt::from(q);
    // generators with balanced conjugates have coordinates around q^(1/phi)
    let cap = (4.0 * (q as f64).powf(1.0 / phi as f64)).ceil() as i64 + 4;
    let mut bound = 4i64;
    loop {
        let mut tail = vec![-bound; phi - 1]; // coordinates c_1..c_{phi-1}
        'odometer: loop {
            let mut s = 0u64;
            for (k, &c) in tail.iter().enumerate() {
                let cu = c.rem_euclid(q as i64) as u64;
                s = (s + mul_mod(cu, rpow[k + 1], q)) % q;
            }
            // c_0 = -s mod q lifted into [-bound, bound]
            let rho = (q - s) % q;
            for c0 in [rho as i64, rho as i64 - q as i64] {
                if c0.abs() > bound {
                    continue;
                }
                if c0 == 0 && tail.iter().all(|&c| c == 0) {
                    continue;
                }
                let mut coords = Vec::with_capacity(phi);
                coords.push(BigInt::from(c0));
                coords.extend(tail.iter().map(|&c| BigInt::from(c)));
                let e = CycloElt::from_poly(idx, &crate::poly::IntPoly::new(coords));
                if e.abs_norm() == qi {
                    return Ok(e);
                }
            }
            for slot in tail.iter_mut() {
                if *slot < bound {
                    *slot += 1;
                    continue 'odometer;
                }
                *slot = -bound;
            }
            break;
        }
        if bound >= cap {
            return Err(Error::SearchExhausted {
                q,
                bound: bound as u64,
            });
        }
        bound *= 2;
    }
}

/// Cross-check path: scan every small-coefficient polynomial directly for
/// one whose resultant with Phi is exactly q. Exponential; test scale only.
pub fn find_norm_element_direct(q: u64, idx: CycloIndex, bound: i64) -> Option<CycloElt> {
    let phi = idx.phi();
    let qi = BigInt::from(q);
    let mut coords = vec![-bound; phi];
    'odometer: loop {
        if coords.iter().any(|&c| c != 0) {
            let e = CycloElt::from_poly(
                idx,
                &crate::poly::IntPoly::new(coords.iter().map(|&c| BigInt::from(c)).collect()),
            );
            if e.abs_norm() == qi {
                return Some(e);
            }
        }
        for slot in coords.iter_mut() {
            if *slot < bound {
                *slot += 1;
                continue 'odometer;
            }
            *slot = -bound;
        }
        return None;
    }
}

// ---------------------------------------------------------------------------
// the (5,1) reduction
// ---------------------------------------------------------------------------

/// Reduce a pi-unit of Z[omega_5] to 1 + (omega-1)^3 h(omega) and read off
/// h(1) mod 5. Works for any element of norm coprime to 5.
pub fn classify_elt_mod5(e: &CycloElt) -> Result<(TypeLabel, ReductionCertificate)> {
    let idx = e.index();
    assert_eq!((idx.p(), idx.level()), (5, 1));
    let d0 = e.digit0();
    if d0 == 0 {
        return Err(Error::NotApplicable(
            "element is divisible by pi".to_string(),
        ));
    }
    // sign and J with sign * 2^J * d0 = 1 mod 5
    let (mut sign, j) = match d0 {
        1 => (1i8, 0u32),
        4 => (-1, 0),
        2 => (-1, 1),
        3 => (1, 1),
        _ => unreachable!(),
    };
    let one_plus = CycloElt::one(idx).add(&CycloElt::omega(idx));
    let mut cur = e.mul(&one_plus.pow(j));
    if sign < 0 {
        cur = cur.neg();
    }
    // kill the pi^1 digit with omega^I = (1 - pi)^I
    let i_exp = pi_digits(&cur, 2)[1] as u32;
    cur = cur.mul(&CycloElt::omega_pow(idx, i_exp as i64));
    // kill the pi^2 digit with (-(omega^4+omega)^2)^K = (1 + pi^2 + ...)^K
    let d2 = pi_digits(&cur, 3)[2];
    let k_exp = ((5 - d2) % 5) as u32;
    let aux = CycloElt::omega_pow(idx, 4)
        .add(&CycloElt::omega(idx))
        .pow(2);
    cur = cur.mul(&aux.pow(k_exp));
    if k_exp % 2 == 1 {
        cur = cur.neg();
        sign = -sign;
    }
    let digits = pi_digits(&cur, 5);
    assert_eq!(&digits[..3], &[1, 0, 0], "reduction failed to clear digits");
    let h = div_exact_omega_minus_1_pow(&cur.sub_int(&BigInt::one()), 3);
    let key = h.digit0();
    let label = if key != 0 {
        TypeLabel::Type1
    } else {
        TypeLabel::Type2
    };
    Ok((
        label,
        ReductionCertificate {
            generator: e.clone(),
            sign,
            exp_x: i_exp,
            exp_one_plus_x: j,
            exp_aux: k_exp,
            digits,
            key_digit: key,
            delta: None,
            a: None,
            b: None,
        },
    ))
}

/// Perissad / artiad verdict for a prime q = 1 mod 5.
pub fn classify_mod5(q: u64) -> Result<TypeVerdict> {
    require_prime_congruent(q, 5)?;
    let idx = CycloIndex::new(5, 1)?;
    let e = find_norm_element(q, idx)?;
    let (label, cert) = classify_elt_mod5(&e)?;
    Ok(TypeVerdict {
        q,
        context: Context::Mod5,
        label,
        reduction: cert,
    })
}

// ---------------------------------------------------------------------------
// the (3,1) reduction
// ---------------------------------------------------------------------------

fn small_mod(v: &BigInt, m: u64) -> u8 {
    v.mod_floor(&BigInt::from(m)).to_u8().unwrap()
}

/// Normalize an element of Z[omega_3] of norm coprime to 3 into
/// delta + 3A(omega-1) + 9B with delta in {1,2,4}.
pub fn classify_elt_mod3(e: &CycloElt) -> Result<(TypeLabel, ReductionCertificate)> {
    let idx = e.index();
    assert_eq!((idx.p(), idx.level()), (3, 1));
    if e.digit0() == 0 {
        return Err(Error::NotApplicable(
            "element is divisible by pi".to_string(),
        ));
    }
    // rotate until the (omega - 1) coordinate is divisible by 3
    let three = BigInt::from(3);
    let mut rot = None;
    for j in 0..3u32 {
        let cand = e.mul(&CycloElt::omega_pow(idx, j as i64));
        let b = cand.coords()[1].clone(); // cand = a + b(omega - 1), b = omega coordinate
        if (&b % &three).is_zero() {
            rot = Some((j, cand, b));
            break;
        }
    }
    let (j, cand, b) = rot.expect("one rotation always lands on 3 | b");
    let a = &cand.coords()[0] + &b;
    let (sign, delta) = match small_mod(&a, 9) {
        r @ (1 | 2 | 4) => (1i8, r),
        r @ (5 | 7 | 8) => (-1, 9 - r),
        _ => unreachable!("a is coprime to 3"),
    };
    let s_big = BigInt::from(sign);
    let a_cap = &s_big * (&b / &three);
    let b_cap: BigInt = (&s_big * &a - BigInt::from(delta)) / BigInt::from(9);
    let reduced = if sign < 0 { cand.neg() } else { cand.clone() };
    // exact identity: reduced == delta + 3A(omega-1) + 9B
    let omega_minus_1 = CycloElt::omega(idx).sub(&CycloElt::one(idx));
    let rebuilt = CycloElt::from_int(idx, BigInt::from(delta) + BigInt::from(9) * &b_cap)
        .add(&omega_minus_1.mul_int(&(BigInt::from(3) * &a_cap)));
    assert_eq!(reduced, rebuilt, "(3,1) normal form mismatch");
    let key = small_mod(&a_cap, 3);
    let label = if key != 0 {
        TypeLabel::Type1
    } else {
        TypeLabel::Type2
    };
    Ok((
        label,
        ReductionCertificate {
            generator: e.clone(),
            sign,
            exp_x: j,
            exp_one_plus_x: 0,
            exp_aux: 0,
            digits: pi_digits(&reduced, 5),
            key_digit: key,
            delta: Some(delta),
            a: Some(a_cap),
            b: Some(b_cap),
        },
    ))
}

/// Type 1 / Type 2 verdict for a prime q = 1 mod 3.
pub fn classify_mod3(q: u64) -> Result<TypeVerdict> {
    require_prime_congruent(q, 3)?;
    let idx = CycloIndex::new(3, 1)?;
    let e = find_norm_element(q, idx)?;
    let (label, cert) = classify_elt_mod3(&e)?;
    Ok(TypeVerdict {
        q,
        context: Context::Mod3,
        label,
        reduction: cert,
    })
}

// ---------------------------------------------------------------------------
// the (3,2) reduction
// ---------------------------------------------------------------------------

/// Unit used at ladder level `level` to cancel digit `d` (1 or 2) in
/// Z[omega_9], with its (sign, I, J, K) bookkeeping. The d = 1 units are
/// 1 - pi^level and the d = 2 units 1 + pi^level, modulo higher terms.
pub(crate) fn nine_ring_unit(idx: CycloIndex, level: u32, d: u8) -> (CycloElt, i8, u32, u32, u32) {
    let w = |k: i64| CycloElt::omega_pow(idx, k);
    let one_plus = CycloElt::one(idx).add(&CycloElt::omega(idx));
    let aux = CycloElt::omega_pow(idx, 4).add(&CycloElt::one(idx)); // x^4 + 1
    match (level, d) {
        (1, 1) => (w(1), 1, 1, 0, 0),
        (1, 2) => (one_plus.neg(), -1, 0, 1, 0),
        (2, 1) => (w(1).mul(&one_plus).neg(), -1, 1, 1, 0),
        (2, 2) => (w(2).mul(&one_plus.pow(2)), 1, 2, 2, 0),
        (3, 1) => (w(3), 1, 3, 0, 0),
        (3, 2) => (w(6), 1, 6, 0, 0),
        (4, 1) => (w(12).mul(&one_plus.pow(4)).mul(&aux.pow(2)), 1, 12, 4, 2),
        (4, 2) => (w(6).mul(&one_plus.pow(2)).mul(&aux).neg(), -1, 6, 2, 1),
        (6, 1) => (w(3).mul(&one_plus.pow(3)).neg(), -1, 3, 3, 0),
        (6, 2) => (w(6).mul(&one_plus.pow(6)), 1, 6, 6, 0),
        _ => unreachable!("no unit ladder entry for level {level} digit {d}"),
    }
}

/// Full Z[omega_9] reduction. Clears digits pi^1..pi^4; a nonzero pi^5
/// digit means Type 1. Otherwise clears pi^6 and splits Type 3 / Type 4 on
/// the pi^7 digit.
pub fn classify_elt_mod9(e: &CycloElt) -> Result<(TypeLabel, ReductionCertificate)> {
    let idx = e.index();
    assert_eq!((idx.p(), idx.level()), (3, 2));
    let d0 = e.digit0();
    if d0 == 0 {
        return Err(Error::NotApplicable(
            "element is divisible by pi".to_string(),
        ));
    }
    let mut sign: i8 = if d0 == 2 { -1 } else { 1 };
    let mut cur = if d0 == 2 { e.neg() } else { e.clone() };
    let (mut ix, mut jx, mut kx) = (0u32, 0u32, 0u32);
    let mut apply = |cur: &mut CycloElt, sign: &mut i8, level: u32| {
        let d = pi_digits(cur, level as usize + 1)[level as usize];
        if d != 0 {
            let (u, s, i, j, k) = nine_ring_unit(idx, level, d);
            *cur = cur.mul(&u);
            *sign *= s;
            ix += i;
            jx += j;
            kx += k;
        }
    };
    for level in 1..=4 {
        apply(&mut cur, &mut sign, level);
    }
    let digits6 = pi_digits(&cur, 6);
    assert_eq!(&digits6[..5], &[1, 0, 0, 0, 0], "u1..u4 ladder failed");
    if digits6[5] != 0 {
        // Type 1: cur = 1 + (omega-1)^5 h with 3 not dividing h(1)
        let h = div_exact_omega_minus_1_pow(&cur.sub_int(&BigInt::one()), 5);
        let key = h.digit0();
        debug_assert_ne!(key, 0);
        return Ok((
            TypeLabel::Type1,
            ReductionCertificate {
                generator: e.clone(),
                sign,
                exp_x: ix,
                exp_one_plus_x: jx,
                exp_aux: kx,
                digits: pi_digits(&cur, 9),
                key_digit: key,
                delta: None,
                a: None,
                b: None,
            },
        ));
    }
    // Type 2: continue to the pi^7 digit
    apply(&mut cur, &mut sign, 6);
    let digits = pi_digits(&cur, 9);
    assert!(
        digits[..7] == [1, 0, 0, 0, 0, 0, 0],
        "u5 step failed to clear pi^6"
    );
    let t = div_exact_omega_minus_1_pow(&cur.sub_int(&BigInt::one()), 7);
    let key = t.digit0();
    let label = if key != 0 {
        TypeLabel::Type3
    } else {
        TypeLabel::Type4
    };
    Ok((
        label,
        ReductionCertificate {
            generator: e.clone(),
            sign,
            exp_x: ix,
            exp_one_plus_x: jx,
            exp_aux: kx,
            digits,
            key_digit: key,
            delta: None,
            a: None,
            b: None,
        },
    ))
}

/// Type 1 / Type 3 / Type 4 verdict for a prime q = 1 mod 9. Type 1 falls
/// out of the mod-3 reduction (the 9-norm type matches the 3-norm type);
/// Type-2 primes go through the Z[omega_9] pipeline.
pub fn classify_mod9(q: u64) -> Result<TypeVerdict> {
    require_prime_congruent(q, 9)?;
    let mod3 = classify_mod3(q)?;
    if mod3.label == TypeLabel::Type1 {
        return Ok(TypeVerdict {
            q,
            context: Context::Mod9,
            label: TypeLabel::Type1,
            reduction: mod3.reduction,
        });
    }
    let idx = CycloIndex::new(3, 2)?;
    let e = find_norm_element(q, idx)?;
    let (label, cert) = classify_elt_mod9(&e)?;
    if label == TypeLabel::Type1 {
        return Err(Error::Internal(format!(
            "q={q}: mod-3 said Type 2 but the 9-norm reduction said Type 1"
        )));
    }
    Ok(TypeVerdict {
        q,
        context: Context::Mod9,
        label,
        reduction: cert,
    })
}

// ---------------------------------------------------------------------------
// oracles
// ---------------------------------------------------------------------------

/// Lehmer's Fibonacci criterion: q divides F_((q-1)/5) exactly for artiads.
pub fn fibonacci_artiad_test(q: u64) -> Result<(bool, FibonacciCertificate)> {
    require_prime_congruent(q, 5)?;
    let index = (q - 1) / 5;
    let residue = fib_pair_mod(index, q).0;
    Ok((residue == 0, FibonacciCertificate { index, residue }))
}

/// Both roots of x^2 - x - 1 mod q are quintic residues exactly for artiads.
pub fn quintic_residue_test(q: u64) -> Result<bool> {
    require_prime_congruent(q, 5)?;
    let s = sqrt_mod(5, q).expect("5 is a square mod primes 1 mod 5");
    let inv2 = q.div_ceil(2);
    let r1 = mul_mod((1 + s) % q, inv2, q);
    let r2 = mul_mod((1 + q - s) % q, inv2, q);
    let e = (q - 1) / 5;
    Ok(pow_mod(r1, e, q) == 1 && pow_mod(r2, e, q) == 1)
}

/// Tanner's original criterion: the normalized Jacobi-function coefficients
/// q_1..q_4 are congruent mod 5 exactly for artiads. Needs a full index
/// table, so it is desk-bounded.
pub fn jacobi_artiad_test(q: u64) -> Result<(bool, JacobiCertificate)> {
    require_prime_congruent(q, 5)?;
    if q >= 1_000_000 {
        return Err(Error::TableTooLarge(q));
    }
    let g = primitive_root(q);
    let mut ind = vec![0u32; q as usize];
    let mut x = 1u64;
    for k in 0..q - 1 {
        ind[x as usize] = k as u32;
        x = mul_mod(x, g, q);
    }
    let mut counts = [0i64; 5];
    for s in 1..=q - 2 {
        let k = (ind[s as usize] as u64 + ind[(s + 1) as usize] as u64) % 5;
        counts[k as usize] += 1;
    }
    let t = ((q - 1) / 5) as i64;
    let mut q_coeffs = [0i64; 5];
    for (c, out) in counts.iter().zip(q_coeffs.iter_mut()) {
        *out = c - t;
    }
    debug_assert_eq!(q_coeffs.iter().sum::<i64>(), -1);
    // R(omega) R(omega^-1) = q, an exact identity in Z[omega_5]
    let idx = CycloIndex::new(5, 1)?;
    let r_elt = CycloElt::from_poly(
        idx,
        &crate::poly::IntPoly::new(q_coeffs.iter().map(|&c| BigInt::from(c)).collect()),
    );
    let prod = r_elt.mul(&r_elt.conj_map(4));
    if prod != CycloElt::from_int(idx, BigInt::from(q)) {
        return Err(Error::Internal(format!(
            "Jacobi modulus identity failed for q={q}"
        )));
    }
    let artiad = q_coeffs[1..].windows(2).all(|w| (w[0] - w[1]) % 5 == 0);
    Ok((
        artiad,
        JacobiCertificate {
            primitive_root: g,
            q_coeffs,
        },
    ))
}

/// Dickson representation 16q = x^2 + 50u^2 + 50v^2 + 125w^2 with x = 1
/// mod 5 and xw = (v-2u)^2 - 5u^2; artiads are the q with 5 | w.
pub fn dickson_artiad_test(q: u64) -> Result<(bool, DicksonCertificate)> {
    require_prime_congruent(q, 5)?;
    let target = 16 * q as i64;
    let wmax = ((target / 125) as u64).isqrt() as i64 + 1;
    let uvmax = ((target / 50) as u64).isqrt() as i64 + 1;
    for w in -wmax..=wmax {
        for u in 0..=uvmax {
            let head = 50 * u * u + 125 * w * w;
            if head > target {
                continue;
            }
            for v in -uvmax..=uvmax {
                let s = target - head - 50 * v * v;
                if s < 0 {
                    continue;
                }
                let x = (s as u64).isqrt() as i64;
                if x * x != s {
                    continue;
                }
                // x^2 = q != 0 mod 5: exactly one sign has x = 1 mod 5
                let xs = if x.rem_euclid(5) == 1 { x } else { -x };
                if xs.rem_euclid(5) != 1 {
                    continue;
                }
                if xs * w == (v - 2 * u) * (v - 2 * u) - 5 * u * u {
                    return Ok((w % 5 == 0, DicksonCertificate { x: xs, u, v, w }));
                }
            }
        }
    }
    Err(Error::Internal(format!(
        "no Dickson representation found for q={q}"
    )))
}

/// 4q = x^2 + 243 y^2 is solvable exactly for mod-3 Type-2 primes.
pub fn binary_form_test(q: u64) -> Result<bool> {
    require_prime_congruent(q, 3)?;
    let target = 4 * q;
    let ymax = (target / 243).isqrt();
    for y in 0..=ymax {
        let s = target - 243 * y * y;
        let x = s.isqrt();
        if x * x == s {
            return Ok(true);
        }
    }
    Ok(false)
}

/// 3 is a cubic residue mod q exactly for mod-3 Type-2 primes.
pub fn cubic_residue_test(q: u64) -> Result<bool> {
    require_prime_congruent(q, 3)?;
    Ok(pow_mod(3, (q - 1) / 3, q) == 1)
}
