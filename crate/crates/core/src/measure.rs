//! Measures and norms of integer polynomials over prime-power roots of unity.
//!
//! M_{p^t}(F) = F(1) * prod_{k=1..t} N_k(F), where N_k(F) is the product of
//! F over the primitive p^k-th roots of unity, computed as an exact
//! resultant with Phi_{p^k}. The p-th power descent maps F to g with
//! prod_j F(x w^j) = g(x^p); it carries N_k down one level.

use crate::cyclo::{CycloElt, CycloIndex};
use crate::poly::{cyclotomic_poly, resultant, IntPoly};
use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

/// The valuation bookkeeping tuple (F(1), N_1..N_t, measure).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NormProfile {
    #[serde(rename = "f1", with = "crate::serde_bigint")]
    pub f_at_1: BigInt,
    #[serde(with = "crate::serde_bigint_vec")]
    pub norms: Vec<BigInt>,
    #[serde(with = "crate::serde_bigint")]
    pub measure: BigInt,
}

/// N_k(F): the product of F over the primitive p^k-th roots of unity.
/// Nonnegative for every integer F since the roots pair into conjugates.
pub fn norm(f: &IntPoly, p: u64, k: u32) -> BigInt {
    let phi = cyclotomic_poly(p, k);
    // Phi is monic, so reducing first leaves the resultant unchanged.
    let r = if f.degree() > phi.degree() {
        f.monic_div_rem(&phi).1
    } else {
        f.clone()
    };
    resultant(&phi, &r)
}

/// M_{p^t}(F) together with the full norm profile.
pub fn measure(f: &IntPoly, p: u64, t: u32) -> NormProfile {
    assert!(t >= 1);
    let f_at_1 = f.eval_at_one();
    let norms: Vec<BigInt> = (1..=t).map(|k| norm(f, p, k)).collect();
    let mut m = f_at_1.clone();
    for n in &norms {
        m *= n;
    }
    NormProfile {
        f_at_1,
        norms,
        measure: m,
    }
}

/// The descent F -> g with prod_{j=0..p-1} F(x w^j) = g(x^p). Computed by
/// multiplying the rotated factors in Z[omega][x] and reading off the x^{pk}
/// coefficients, which are rational integers.
pub fn pth_power_reduce(f: &IntPoly, p: u64) -> IntPoly {
    if f.is_zero() {
        return IntPoly::zero();
    }
    let idx = CycloIndex::new(p, 1).expect("descent needs an odd prime");
    let n = f.degree().unwrap();
    // product of polynomials with CycloElt coefficients
    let mut acc: Vec<CycloElt> = vec![CycloElt::zero(idx); 1];
    acc[0] = CycloElt::one(idx);
    for j in 0..p {
        let factor: Vec<CycloElt> = f
            .coeffs()
            .iter()
            .enumerate()
            .map(|(i, c)| CycloElt::omega_pow(idx, (i as u64 * j) as i64).mul_int(c))
            .collect();
        let mut next = vec![CycloElt::zero(idx); acc.len() + n];
        for (a, ca) in acc.iter().enumerate() {
            if ca.is_zero() {
                continue;
            }
            for (b, cb) in factor.iter().enumerate() {
                if !cb.is_zero() {
                    next[a + b] = next[a + b].add(&ca.mul(cb));
                }
            }
        }
        acc = next;
    }
    let mut g = vec![BigInt::zero(); n + 1];
    for (k, c) in acc.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        assert!(
            c.is_rational_integer(),
            "descent product left an irrational coefficient"
        );
        assert!(
            k % p as usize == 0,
            "descent product not a polynomial in x^p"
        );
        g[k / p as usize] = c.coords()[0].clone();
    }
    IntPoly::new(g)
}

/// The explicit p = 3 route: split F = f0(x^3) + x f1(x^3) + x^2 f2(x^3) and
/// return f0^3 + x f1^3 + x^2 f2^3 - 3x f0 f1 f2.
pub fn pth_power_reduce_cubic(f: &IntPoly) -> IntPoly {
    let mut parts = [IntPoly::zero(), IntPoly::zero(), IntPoly::zero()];
    for (r, part) in parts.iter_mut().enumerate() {
        let coeffs: Vec<BigInt> = f
            .coeffs()
            .iter()
            .enumerate()
            .filter(|(i, _)| i % 3 == r)
            .map(|(_, c)| c.clone())
            .collect();
        *part = IntPoly::new(coeffs);
    }
    let [f0, f1, f2] = parts;
    let x = IntPoly::monomial(1, 1.into());
    let cube = |g: &IntPoly| g.pow(3);
    cube(&f0)
        .add(&x.mul(&cube(&f1)))
        .add(&x.pow(2).mul(&cube(&f2)))
        .sub(&x.mul(&f0.mul(&f1).mul(&f2)).mul_scalar(&BigInt::from(3)))
}

/// Floating-point cross-check of the measure: the product of F over all
/// p^t-th roots of unity with conjugate pairs multiplied together first.
/// Returns the nearest integer only when it lies within 1e-3 of the float
/// product; a test oracle, never the source of truth.
pub fn measure_float(f: &IntPoly, p: u64, t: u32) -> Option<BigInt> {
    let n = p.checked_pow(t)?;
    let coeffs: Vec<f64> = f
        .coeffs()
        .iter()
        .map(|c| c.to_f64().unwrap_or(f64::NAN))
        .collect();
    let eval = |theta: f64| -> (f64, f64) {
        let (mut re, mut im) = (0.0f64, 0.0f64);
        for (j, c) in coeffs.iter().enumerate() {
            let a = theta * j as f64;
            re += c * a.cos();
            im += c * a.sin();
        }
        (re, im)
    };
    let tau = std::f64::consts::TAU;
    let mut prod = coeffs.iter().sum::<f64>(); // F(1)
                                               // conjugate pairs (j, n-j): |F|^2 keeps the partial products real
    for j in 1..=(n - 1) / 2 {
        let (re, im) = eval(tau * j as f64 / n as f64);
        prod *= re * re + im * im;
        if !prod.is_finite() {
            return None;
        }
    }
    if !prod.is_finite() {
        return None;
    }
    let rounded = prod.round();
    if (prod - rounded).abs() <= 1e-3 {
        num_traits::FromPrimitive::from_f64(rounded)
    } else {
        None
    }
}

impl NormProfile {
    /// v_p of the measure, with the p-free cofactor; None for measure 0.
    pub fn p_valuation(&self, p: u64) -> Option<(u32, BigInt)> {
        if self.measure.is_zero() {
            return None;
        }
        Some(crate::arith::p_valuation(&self.measure, p))
    }

    pub fn check_identity(&self) -> bool {
        let mut m = self.f_at_1.clone();
        for n in &self.norms {
            m *= n;
        }
        m == self.measure && self.norms.iter().all(|n| !n.is_negative())
    }
}
