//! Exact arithmetic in the rings Z[omega] for omega a primitive p^i-th root
//! of unity, together with the pi-adic bookkeeping built on pi = 1 - omega.
//!
//! Unit-group material (standard unit generators, the Newman probe) is only
//! wired up for the three rings the classification needs: (p, i) in
//! {(5,1), (3,1), (3,2)}.

use crate::arith::is_prime_u64;
use crate::error::{Error, Result};
use crate::poly::{cyclotomic_poly, resultant, IntPoly};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};
use std::fmt;

/// Which cyclotomic ring: p odd prime, level i >= 1, field degree phi(p^i).
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct CycloIndex {
    p: u64,
    level: u32,
}

pub const SUPPORTED_UNIT_RINGS: [(u64, u32); 3] = [(5, 1), (3, 1), (3, 2)];

impl CycloIndex {
    pub fn new(p: u64, level: u32) -> Result<Self> {
        if p < 3 || p.is_multiple_of(2) || !is_prime_u64(p) {
            return Err(Error::UnsupportedRing { p, level });
        }
        if level == 0 || p.checked_pow(level).is_none() {
            return Err(Error::UnsupportedRing { p, level });
        }
        Ok(CycloIndex { p, level })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn level(&self) -> u32 {
        self.level
    }

    /// p^i, the order of omega.
    pub fn order(&self) -> u64 {
        self.p.pow(self.level)
    }

    /// phi(p^i) = p^(i-1) (p-1), the rank of the ring.
    pub fn phi(&self) -> usize {
        (self.p.pow(self.level - 1) * (self.p - 1)) as usize
    }

    pub fn modulus(&self) -> IntPoly {
        cyclotomic_poly(self.p, self.level)
    }

    pub fn is_supported_unit_ring(&self) -> bool {
        SUPPORTED_UNIT_RINGS.contains(&(self.p, self.level))
    }
}

impl fmt::Display for CycloIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Z[omega_{}]", self.order())
    }
}

/// Element of Z[omega] in the power basis 1, omega, ..., omega^(phi-1).
#[derive(Clone, PartialEq, Eq)]
pub struct CycloElt {
    idx: CycloIndex,
    coords: Vec<BigInt>,
}

impl fmt::Debug for CycloElt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CycloElt[{}]({})", self.idx, self.to_poly())
    }
}

impl CycloElt {
    pub fn zero(idx: CycloIndex) -> Self {
        CycloElt {
            idx,
            coords: vec![BigInt::zero(); idx.phi()],
        }
    }

    pub fn one(idx: CycloIndex) -> Self {
        CycloElt::from_int(idx, BigInt::one())
    }

    pub fn from_int(idx: CycloIndex, n: BigInt) -> Self {
        let mut e = CycloElt::zero(idx);
        e.coords[0] = n;
        e
    }

    /// omega^k for any integer exponent (reduced mod the order).
    pub fn omega_pow(idx: CycloIndex, k: i64) -> Self {
        let n = idx.order() as i64;
        let k = k.rem_euclid(n) as usize;
        CycloElt::from_poly(idx, &IntPoly::monomial(k, BigInt::one()))
    }

    pub fn omega(idx: CycloIndex) -> Self {
        CycloElt::omega_pow(idx, 1)
    }

    /// 1 - omega, the prime above p.
    pub fn pi(idx: CycloIndex) -> Self {
        CycloElt::one(idx).sub(&CycloElt::omega(idx))
    }

    /// Reduce an integer polynomial mod Phi and take its residue.
    pub fn from_poly(idx: CycloIndex, f: &IntPoly) -> Self {
        let phi = idx.phi();
        let r = if f.degree().is_some_and(|d| d >= phi) {
            f.monic_div_rem(&idx.modulus()).1
        } else {
            f.clone()
        };
        let mut coords = vec![BigInt::zero(); phi];
        for (j, c) in r.coeffs().iter().enumerate() {
            coords[j] = c.clone();
        }
        CycloElt { idx, coords }
    }

    pub fn index(&self) -> CycloIndex {
        self.idx
    }

    pub fn coords(&self) -> &[BigInt] {
        &self.coords
    }

    /// The coordinate polynomial of degree < phi; the canonical lift.
    pub fn to_poly(&self) -> IntPoly {
        IntPoly::new(self.coords.clone())
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|c| c.is_zero())
    }

    /// True when the element lies in Z (all higher coordinates vanish).
    pub fn is_rational_integer(&self) -> bool {
        self.coords[1..].iter().all(|c| c.is_zero())
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.idx, other.idx);
        CycloElt {
            idx: self.idx,
            coords: self
                .coords
                .iter()
                .zip(&other.coords)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!(self.idx, other.idx);
        CycloElt {
            idx: self.idx,
            coords: self
                .coords
                .iter()
                .zip(&other.coords)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }

    pub fn neg(&self) -> Self {
        CycloElt {
            idx: self.idx,
            coords: self.coords.iter().map(|a| -a).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.idx, other.idx);
        CycloElt::from_poly(self.idx, &self.to_poly().mul(&other.to_poly()))
    }

    pub fn mul_int(&self, n: &BigInt) -> Self {
        CycloElt {
            idx: self.idx,
            coords: self.coords.iter().map(|a| a * n).collect(),
        }
    }

    pub fn sub_int(&self, n: &BigInt) -> Self {
        let mut coords = self.coords.clone();
        coords[0] -= n;
        CycloElt {
            idx: self.idx,
            coords,
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = CycloElt::one(self.idx);
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// The Galois map omega -> omega^j for gcd(j, p) = 1.
    pub fn conj_map(&self, j: u64) -> Self {
        assert!(
            !j.is_multiple_of(self.idx.p),
            "conjugation exponent must be coprime to p"
        );
        let n = self.idx.order();
        let mut f = IntPoly::zero();
        for (k, c) in self.coords.iter().enumerate() {
            if !c.is_zero() {
                let e = ((k as u64) * (j % n)) % n;
                f = f.add(&IntPoly::monomial(e as usize, c.clone()));
            }
        }
        CycloElt::from_poly(self.idx, &f)
    }

    /// Absolute norm: the product over all conjugates, as an exact resultant
    /// of the coordinate polynomial with Phi. Nonnegative in these rings.
    pub fn abs_norm(&self) -> BigInt {
        resultant(&self.idx.modulus(), &self.to_poly())
    }

    /// Residue mod pi, identified with Z/p: the coordinate sum mod p.
    pub fn digit0(&self) -> u8 {
        let p = BigInt::from(self.idx.p);
        let s = self.coords.iter().sum::<BigInt>().mod_floor(&p);
        u8::try_from(s.magnitude().to_u32_digits().first().copied().unwrap_or(0)).unwrap()
    }
}

/// The cofactor C with pi * C = p, i.e. C = prod over j != 1 of (1 - omega^j).
fn pi_complement(idx: CycloIndex) -> CycloElt {
    let n = idx.order();
    let mut acc = CycloElt::one(idx);
    for j in 2..n {
        if j % idx.p != 0 {
            let f = CycloElt::one(idx).sub(&CycloElt::omega_pow(idx, j as i64));
            acc = acc.mul(&f);
        }
    }
    acc
}

/// `e / (1 - omega)` when the division is exact, else None. The quotient is
/// computed by multiplying with the exact inverse p^-1 * C and checking that
/// every coordinate stays integral.
pub fn div_exact_pi(e: &CycloElt) -> Option<CycloElt> {
    let c = pi_complement(e.index());
    let y = e.mul(&c);
    div_exact_int(&y, &BigInt::from(e.index().p()))
}

pub fn div_exact_int(e: &CycloElt, n: &BigInt) -> Option<CycloElt> {
    let mut coords = Vec::with_capacity(e.coords.len());
    for c in &e.coords {
        let (q, r) = c.div_rem(n);
        if !r.is_zero() {
            return None;
        }
        coords.push(q);
    }
    Some(CycloElt { idx: e.idx, coords })
}

/// Divide by (omega - 1)^k exactly; panics if the division is not exact,
/// which always signals a caller bug in the reduction pipelines.
pub fn div_exact_omega_minus_1_pow(e: &CycloElt, k: u32) -> CycloElt {
    let mut cur = e.clone();
    for _ in 0..k {
        // omega - 1 = -pi
        cur = div_exact_pi(&cur)
            .expect("exact division by (omega - 1) failed")
            .neg();
    }
    cur
}

/// pi-adic valuation; None encodes infinity (the zero element).
pub fn pi_valuation(e: &CycloElt) -> Option<u64> {
    if e.is_zero() {
        return None;
    }
    let mut v = 0u64;
    let mut cur = e.clone();
    while let Some(next) = div_exact_pi(&cur) {
        cur = next;
        v += 1;
    }
    Some(v)
}

/// First `count` digits of the pi-adic expansion, each in 0..p.
pub fn pi_digits(e: &CycloElt, count: usize) -> Vec<u8> {
    let mut out = Vec::with_capacity(count);
    let mut cur = e.clone();
    for _ in 0..count {
        let d = cur.digit0();
        out.push(d);
        cur = div_exact_pi(&cur.sub_int(&BigInt::from(d)))
            .expect("digit extraction left a non-divisible remainder");
    }
    out
}

/// Generators of the unit groups used by the reductions, each of absolute
/// norm 1. Only the three supported rings are wired.
pub fn standard_units(idx: CycloIndex) -> Result<Vec<CycloElt>> {
    if !idx.is_supported_unit_ring() {
        return Err(Error::UnsupportedRing {
            p: idx.p(),
            level: idx.level(),
        });
    }
    let one = CycloElt::one(idx);
    let w = CycloElt::omega(idx);
    let one_plus_w = one.add(&w);
    let units = match (idx.p(), idx.level()) {
        (3, 1) => vec![one.neg(), w],
        // +/- x^I (1+x)^J (x^4 + x)^(2K)
        (5, 1) => {
            let aux = CycloElt::omega_pow(idx, 4).add(&w).pow(2);
            vec![one.neg(), w, one_plus_w, aux]
        }
        // +/- x^I (1+x)^J (x^4 + 1)^K
        (3, 2) => {
            let aux = CycloElt::omega_pow(idx, 4).add(&one);
            vec![one.neg(), w, one_plus_w, aux]
        }
        _ => unreachable!(),
    };
    Ok(units)
}

/// One fuzzed pair from the unit criterion: the pi-adic valuation of the
/// difference of two units, with None for equal units.
#[derive(Clone, Debug)]
pub struct UnitProbe {
    pub u1: CycloElt,
    pub u2: CycloElt,
    pub valuation: Option<u64>,
}

impl UnitProbe {
    /// An odd valuation must be p^l with 0 <= l < i.
    pub fn violates(&self, idx: CycloIndex) -> bool {
        match self.valuation {
            None => false,
            Some(s) => {
                if s % 2 == 0 {
                    return false;
                }
                let mut pw = 1u64;
                for _ in 0..idx.level() {
                    if s == pw {
                        return false;
                    }
                    pw *= idx.p();
                }
                true
            }
        }
    }
}

fn random_unit(idx: CycloIndex, gens: &[CycloElt], rng: &mut ChaCha8Rng) -> CycloElt {
    let mut u = CycloElt::one(idx);
    for g in gens {
        let e = (rng.next_u64() % 4) as u32;
        u = u.mul(&g.pow(e));
    }
    // random conjugate
    let n = idx.order();
    loop {
        let j = 1 + rng.next_u64() % (n - 1);
        if !j.is_multiple_of(idx.p()) {
            return u.conj_map(j);
        }
    }
}

/// Seeded fuzz of the unit criterion: generate `trials` random unit pairs,
/// compute the valuation of their difference, and return all violating
/// probes; expected empty.
pub fn newman_unit_probe(idx: CycloIndex, trials: u64, seed: u64) -> Result<Vec<UnitProbe>> {
    let gens = standard_units(idx)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut violations = Vec::new();
    for _ in 0..trials {
        let u1 = random_unit(idx, &gens, &mut rng);
        let u2 = random_unit(idx, &gens, &mut rng);
        let diff = u1.sub(&u2);
        let probe = UnitProbe {
            valuation: pi_valuation(&diff),
            u1,
            u2,
        };
        if probe.violates(idx) {
            violations.push(probe);
        }
    }
    Ok(violations)
}
