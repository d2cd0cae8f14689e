//! Dense integer polynomials and the exact resultant.
//!
//! `IntPoly` stores arbitrary-precision coefficients with index `j` holding
//! the coefficient of `x^j`. The canonical text form is a comma-separated
//! list, constant term first: `"1,0,0,0,1,1,0,0,0,1,1"` is
//! `1 + x^4 + x^5 + x^9 + x^10`.
//!
//! Resultants are computed with the fraction-free subresultant remainder
//! sequence over the integers, oriented so that for monic `a`,
//! `resultant(a, b) = prod b(alpha)` over the roots `alpha` of `a`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use std::fmt;
use std::str::FromStr;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntPoly {
    // invariant: empty, or last entry nonzero
    coeffs: Vec<BigInt>,
}

impl fmt::Debug for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IntPoly({})", self)
    }
}

impl IntPoly {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        IntPoly { coeffs }
    }

    pub fn zero() -> Self {
        IntPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        IntPoly::constant(BigInt::one())
    }

    pub fn constant(c: BigInt) -> Self {
        IntPoly::new(vec![c])
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        IntPoly::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    /// `c * x^k`.
    pub fn monomial(k: usize, c: BigInt) -> Self {
        if c.is_zero() {
            return IntPoly::zero();
        }
        let mut v = vec![BigInt::zero(); k + 1];
        v[k] = c;
        IntPoly { coeffs: v }
    }

    /// `1 + x + ... + x^(len-1)`, i.e. `(x^len - 1)/(x - 1)`.
    pub fn geometric(len: usize) -> Self {
        IntPoly {
            coeffs: vec![BigInt::one(); len],
        }
    }

    /// `x^n - 1`.
    pub fn xn_minus_1(n: usize) -> Self {
        let mut v = vec![BigInt::zero(); n + 1];
        v[0] = -BigInt::one();
        v[n] = BigInt::one();
        IntPoly { coeffs: v }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// None for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coeff(&self, j: usize) -> BigInt {
        self.coeffs.get(j).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn leading(&self) -> BigInt {
        self.coeffs.last().cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn eval(&self, x: &BigInt) -> BigInt {
        let mut acc = BigInt::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    /// Coefficient sum; equals `eval(1)`.
    pub fn eval_at_one(&self) -> BigInt {
        self.coeffs.iter().sum()
    }

    pub fn neg(&self) -> Self {
        IntPoly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut v = Vec::with_capacity(n);
        for j in 0..n {
            v.push(self.coeff(j) + other.coeff(j));
        }
        IntPoly::new(v)
    }

    pub fn sub(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut v = Vec::with_capacity(n);
        for j in 0..n {
            v.push(self.coeff(j) - other.coeff(j));
        }
        IntPoly::new(v)
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return IntPoly::zero();
        }
        let mut v = vec![BigInt::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    v[i + j] += a * b;
                }
            }
        }
        IntPoly::new(v)
    }

    pub fn mul_scalar(&self, c: &BigInt) -> Self {
        if c.is_zero() {
            return IntPoly::zero();
        }
        IntPoly {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = IntPoly::one();
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Substitute `x -> x^k` (k >= 1).
    pub fn inflate(&self, k: usize) -> Self {
        assert!(k >= 1);
        if self.is_zero() {
            return IntPoly::zero();
        }
        let mut v = vec![BigInt::zero(); (self.coeffs.len() - 1) * k + 1];
        for (j, c) in self.coeffs.iter().enumerate() {
            v[j * k] = c.clone();
        }
        IntPoly { coeffs: v }
    }

    /// Reduce modulo `x^n - 1` by folding indices.
    pub fn reduce_mod_xn_minus_1(&self, n: usize) -> Self {
        assert!(n >= 1);
        let mut v = vec![BigInt::zero(); n];
        for (j, c) in self.coeffs.iter().enumerate() {
            v[j % n] += c;
        }
        IntPoly::new(v)
    }

    /// Division with remainder by a monic divisor.
    pub fn monic_div_rem(&self, d: &IntPoly) -> (IntPoly, IntPoly) {
        assert!(
            !d.is_zero() && d.leading().is_one(),
            "divisor must be monic"
        );
        let dd = d.coeffs.len() - 1;
        if self.coeffs.len() <= dd {
            return (IntPoly::zero(), self.clone());
        }
        let mut rem = self.coeffs.clone();
        let mut quo = vec![BigInt::zero(); rem.len() - dd];
        for k in (dd..rem.len()).rev() {
            let c = std::mem::replace(&mut rem[k], BigInt::zero());
            if c.is_zero() {
                continue;
            }
            for (i, dc) in d.coeffs.iter().take(dd).enumerate() {
                if !dc.is_zero() {
                    let t = &c * dc;
                    rem[k - dd + i] -= t;
                }
            }
            quo[k - dd] = c;
        }
        rem.truncate(dd);
        (IntPoly::new(quo), IntPoly::new(rem))
    }
}

/// The cyclotomic polynomial `Phi_{p^k}` for odd prime `p` and level `k >= 1`,
/// via `Phi_{p^k}(x) = Phi_p(x^{p^{k-1}})`.
pub fn cyclotomic_poly(p: u64, k: u32) -> IntPoly {
    assert!(p >= 3 && p % 2 == 1, "p must be an odd prime");
    assert!(k >= 1, "level must be >= 1");
    let step = p.checked_pow(k - 1).expect("p^(k-1) overflow") as usize;
    IntPoly::geometric(p as usize).inflate(step)
}

/// Pseudo-remainder: `lc(b)^(deg a - deg b + 1) * a = q*b + r`. Requires
/// `deg a >= deg b`, `b` nonzero.
fn pseudo_rem(a: &IntPoly, b: &IntPoly) -> IntPoly {
    let da = a.degree().unwrap();
    let db = b.degree().unwrap();
    assert!(da >= db);
    let lcb = b.leading();
    let mut rem = a.coeffs.clone();
    for k in (db..=da).rev() {
        // scale the sub-leading part by lc(b), then eliminate position k
        let c = std::mem::replace(&mut rem[k], BigInt::zero());
        for r in rem.iter_mut().take(k) {
            *r *= &lcb;
        }
        if !c.is_zero() {
            for (i, bc) in b.coeffs.iter().take(db).enumerate() {
                if !bc.is_zero() {
                    rem[k - db + i] -= &c * bc;
                }
            }
        }
    }
    rem.truncate(db);
    IntPoly::new(rem)
}

fn exact_div(a: &BigInt, b: &BigInt) -> BigInt {
    let (q, r) = a.div_rem(b);
    debug_assert!(r.is_zero(), "inexact division in subresultant chain");
    q
}

fn poly_exact_div_scalar(a: &IntPoly, c: &BigInt) -> IntPoly {
    IntPoly {
        coeffs: a.coeffs.iter().map(|x| exact_div(x, c)).collect(),
    }
}

fn content(a: &IntPoly) -> BigInt {
    let mut g = BigInt::zero();
    for c in &a.coeffs {
        g = g.gcd(c);
        if g.is_one() {
            break;
        }
    }
    g
}

/// Exact resultant of `a` and `b` over the integers.
///
/// With `a` monic this equals the product of `b` over the roots of `a`, so
/// `resultant(Phi_n, f)` is the norm-style product used throughout.
pub fn resultant(a: &IntPoly, b: &IntPoly) -> BigInt {
    if a.is_zero() || b.is_zero() {
        return BigInt::zero();
    }
    let (mut a, mut b) = (a.clone(), b.clone());
    let mut sign = BigInt::one();
    if a.degree() < b.degree() {
        if a.degree().unwrap() % 2 == 1 && b.degree().unwrap() % 2 == 1 {
            sign = -sign;
        }
        std::mem::swap(&mut a, &mut b);
    }
    let da = a.degree().unwrap();
    let db = b.degree().unwrap();
    if db == 0 {
        return sign * b.leading().pow(da as u32);
    }
    // pull out contents: Res(ca*A, cb*B) = ca^deg B * cb^deg A * Res(A, B)
    let ca = content(&a);
    let cb = content(&b);
    let mut scale = ca.pow(db as u32) * cb.pow(da as u32);
    a = poly_exact_div_scalar(&a, &ca);
    b = poly_exact_div_scalar(&b, &cb);
    scale *= sign;

    let mut g = BigInt::one();
    let mut h = BigInt::one();
    let mut s = BigInt::one();
    loop {
        let da = a.degree().unwrap();
        let db = b.degree().unwrap();
        let delta = (da - db) as u32;
        if da % 2 == 1 && db % 2 == 1 {
            s = -s;
        }
        let r = pseudo_rem(&a, &b);
        a = b;
        let denom = &g * h.pow(delta);
        b = if r.is_zero() {
            IntPoly::zero()
        } else {
            poly_exact_div_scalar(&r, &denom)
        };
        g = a.leading();
        h = match delta {
            0 => h,
            1 => g.clone(),
            _ => exact_div(&g.pow(delta), &h.pow(delta - 1)),
        };
        if b.is_zero() {
            return BigInt::zero();
        }
        if b.degree() == Some(0) {
            let da = a.degree().unwrap() as u32;
            let num = b.leading().pow(da);
            let res = if da == 0 {
                num
            } else {
                exact_div(&num, &h.pow(da - 1))
            };
            return scale * s * res;
        }
    }
}

impl fmt::Display for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.coeffs.iter().map(|c| c.to_string()).collect();
        write!(f, "{}", parts.join(","))
    }
}

impl serde::Serialize for IntPoly {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> serde::Deserialize<'de> for IntPoly {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParsePolyError(pub String);

impl fmt::Display for ParsePolyError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "invalid polynomial literal: {}", self.0)
    }
}

impl std::error::Error for ParsePolyError {}

impl FromStr for IntPoly {
    type Err = ParsePolyError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut v = Vec::new();
        for part in s.split(',') {
            let t = part.trim();
            if t.is_empty() {
                return Err(ParsePolyError(s.to_string()));
            }
            let c: BigInt = t.parse().map_err(|_| ParsePolyError(s.to_string()))?;
            v.push(c);
        }
        Ok(IntPoly::new(v))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Independent oracle: resultant as the Sylvester-matrix determinant,
    /// computed by fraction-free Bareiss elimination.
    fn sylvester_resultant(a: &IntPoly, b: &IntPoly) -> BigInt {
        let da = a.degree().unwrap();
        let db = b.degree().unwrap();
        let n = da + db;
        if n == 0 {
            return BigInt::one();
        }
        let mut m = vec![vec![BigInt::zero(); n]; n];
        for row in 0..db {
            for (j, c) in a.coeffs().iter().enumerate() {
                m[row][row + da - j] = c.clone();
            }
        }
        for row in 0..da {
            for (j, c) in b.coeffs().iter().enumerate() {
                m[db + row][row + db - j] = c.clone();
            }
        }
        // Bareiss
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if m[k][k].is_zero() {
                let swap = (k + 1..n).find(|&r| !m[r][k].is_zero());
                match swap {
                    Some(r) => {
                        m.swap(k, r);
                        sign = -sign;
                    }
                    None => return BigInt::zero(),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = &m[k][k] * &m[i][j] - &m[i][k] * &m[k][j];
                    let (q, r) = num.div_rem(&prev);
                    assert!(r.is_zero());
                    m[i][j] = q;
                }
                m[i][k] = BigInt::zero();
            }
            prev = m[k][k].clone();
        }
        sign * m[n - 1][n - 1].clone()
    }

    fn p(v: &[i64]) -> IntPoly {
        IntPoly::from_i64(v)
    }

    #[test]
    fn cyclotomic_basics() {
        assert_eq!(cyclotomic_poly(5, 1), p(&[1, 1, 1, 1, 1]));
        assert_eq!(cyclotomic_poly(3, 2), p(&[1, 0, 0, 1, 0, 0, 1]));
        for pr in [3u64, 5, 7, 11, 13] {
            for k in 1..=3u32 {
                let phi = cyclotomic_poly(pr, k);
                assert_eq!(phi.eval_at_one(), BigInt::from(pr));
                assert!(phi.leading().is_one());
                let deg = (pr.pow(k - 1) * (pr - 1)) as usize;
                assert_eq!(phi.degree(), Some(deg));
            }
        }
    }

    #[test]
    fn eval_at_one_is_coeff_sum() {
        let f = p(&[3, -2, 0, 7, 4]);
        assert_eq!(f.eval_at_one(), f.eval(&BigInt::one()));
    }

    #[test]
    fn monic_div_rem_roundtrip() {
        let d = cyclotomic_poly(5, 1);
        let f = p(&[2, 0, -3, 1, 0, 0, 4, 1, -1, 2, 9]);
        let (q, r) = f.monic_div_rem(&d);
        assert_eq!(q.mul(&d).add(&r), f);
        assert!(r.degree().is_none_or(|dr| dr < d.degree().unwrap()));
    }

    #[test]
    fn resultant_matches_sylvester() {
        let cases = [
            (cyclotomic_poly(5, 1), p(&[-1, 1])),
            (cyclotomic_poly(3, 1), p(&[2, 1])),
            (cyclotomic_poly(3, 2), p(&[2, 1])),
            (cyclotomic_poly(5, 1), p(&[1, 0, 0, 0, 1, 1, 0, 0, 0, 1, 1])),
            (cyclotomic_poly(5, 2), p(&[3, -1, 4, 1, -5, 9, 2, -6])),
            (p(&[1, 3, 0, -2, 1, 1]), p(&[-7, 0, 2, 1])),
            (p(&[2, 4]), p(&[-1, 0, 0, 3])),
        ];
        for (a, b) in &cases {
            assert_eq!(resultant(a, b), sylvester_resultant(a, b), "a={a} b={b}");
            let swapped = sylvester_resultant(b, a);
            assert_eq!(resultant(b, a), swapped, "a={a} b={b} (swapped)");
        }
    }

    #[test]
    fn resultant_known_values() {
        // product of (x - 1) over primitive 5th roots is Phi_5(1) = 5
        assert_eq!(
            resultant(&cyclotomic_poly(5, 1), &p(&[-1, 1])),
            BigInt::from(5)
        );
        // (omega + 2)(omega^2 + 2) = 3 for omega a primitive cube root
        assert_eq!(
            resultant(&cyclotomic_poly(3, 1), &p(&[2, 1])),
            BigInt::from(3)
        );
        // frozen from brute force: N_1(1 + x^4 + x^5 + x^9 + x^10) over p=5
        assert_eq!(
            resultant(
                &cyclotomic_poly(5, 1),
                &p(&[1, 0, 0, 0, 1, 1, 0, 0, 0, 1, 1])
            ),
            BigInt::from(55)
        );
        // Phi_9 evaluated across x+2: Phi_9(-2) = 57
        assert_eq!(
            resultant(&cyclotomic_poly(3, 2), &p(&[2, 1])),
            BigInt::from(57)
        );
        // degenerate inputs
        assert_eq!(
            resultant(&cyclotomic_poly(3, 1), &IntPoly::zero()),
            BigInt::zero()
        );
        assert_eq!(
            resultant(&cyclotomic_poly(3, 1), &IntPoly::constant(BigInt::from(4))),
            BigInt::from(16)
        );
    }

    #[test]
    fn parse_display_roundtrip() {
        let s = "1,0,0,0,1,1,0,0,0,1,1";
        let f: IntPoly = s.parse().unwrap();
        assert_eq!(f.to_string(), s);
        assert_eq!(IntPoly::zero().to_string(), "0");
        let z: IntPoly = "0".parse().unwrap();
        assert!(z.is_zero());
        let neg: IntPoly = "-1, 2, -3".parse().unwrap();
        assert_eq!(neg, p(&[-1, 2, -3]));
        assert!("".parse::<IntPoly>().is_err());
        assert!("1,,2".parse::<IntPoly>().is_err());
        assert!("x".parse::<IntPoly>().is_err());
    }

    #[test]
    fn reduce_mod_xn() {
        let f = p(&[1, 2, 3, 4, 5, 6, 7]);
        let r = f.reduce_mod_xn_minus_1(3);
        assert_eq!(r, p(&[1 + 4 + 7, 2 + 5, 3 + 6]));
    }

    #[test]
    fn quintic_power_identity() {
        // (x-1)^4 = 5(x^2+1)^2 - 4*Phi_5(x)
        let lhs = p(&[-1, 1]).pow(4);
        let rhs = p(&[1, 0, 1])
            .pow(2)
            .mul_scalar(&BigInt::from(5))
            .sub(&cyclotomic_poly(5, 1).mul_scalar(&BigInt::from(4)));
        assert_eq!(lhs, rhs);
    }
}
