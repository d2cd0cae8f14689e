//! Modular arithmetic, primality and factorization helpers.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

pub fn gcd_u64(a: u64, b: u64) -> u64 {
    let (mut a, mut b) = (a, b);
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

pub fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let mut acc = 1u64;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Deterministic Miller-Rabin for all n < 2^64.
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n == p {
            return true;
        }
        if n.is_multiple_of(p) {
            return false;
        }
    }
    let d = n - 1;
    let s = d.trailing_zeros();
    let d = d >> s;
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Ascending primes below `bound`.
pub fn primes_below(bound: u64) -> Vec<u64> {
    if bound <= 2 {
        return Vec::new();
    }
    let n = bound as usize;
    let mut sieve = vec![true; n];
    sieve[0] = false;
    sieve[1] = false;
    let mut i = 2;
    while i * i < n {
        if sieve[i] {
            let mut j = i * i;
            while j < n {
                sieve[j] = false;
                j += i;
            }
        }
        i += 1;
    }
    sieve
        .iter()
        .enumerate()
        .filter_map(|(i, &b)| b.then_some(i as u64))
        .collect()
}

/// Multiplicative order of `a` modulo `m` (gcd(a, m) = 1).
pub fn order_mod(a: u64, m: u64) -> u64 {
    assert!(gcd_u64(a, m) == 1);
    let mut k = 1u64;
    let mut x = a % m;
    while x != 1 {
        x = mul_mod(x, a % m, m);
        k += 1;
        assert!(k <= m, "order search ran past the modulus");
    }
    k
}

/// Smallest primitive root modulo an odd prime `q`.
pub fn primitive_root(q: u64) -> u64 {
    assert!(is_prime_u64(q) && q >= 3);
    let fac = factor_u64(q - 1);
    'cand: for g in 2..q {
        for &(p, _) in &fac {
            if pow_mod(g, (q - 1) / p, q) == 1 {
                continue 'cand;
            }
        }
        return g;
    }
    unreachable!("prime has a primitive root")
}

/// Tonelli-Shanks square root of `a` modulo an odd prime `q`.
pub fn sqrt_mod(a: u64, q: u64) -> Option<u64> {
    let a = a % q;
    if a == 0 {
        return Some(0);
    }
    if pow_mod(a, (q - 1) / 2, q) != 1 {
        return None;
    }
    if q % 4 == 3 {
        return Some(pow_mod(a, (q + 1) / 4, q));
    }
    let s = (q - 1).trailing_zeros();
    let d = (q - 1) >> s;
    // any quadratic non-residue will do
    let mut z = 2;
    while pow_mod(z, (q - 1) / 2, q) != q - 1 {
        z += 1;
    }
    let mut m = s;
    let mut c = pow_mod(z, d, q);
    let mut t = pow_mod(a, d, q);
    let mut r = pow_mod(a, d.div_ceil(2), q);
    while t != 1 {
        let mut i = 0;
        let mut tt = t;
        while tt != 1 {
            tt = mul_mod(tt, tt, q);
            i += 1;
        }
        let mut b = c;
        for _ in 0..(m - i - 1) {
            b = mul_mod(b, b, q);
        }
        m = i;
        c = mul_mod(b, b, q);
        t = mul_mod(t, c, q);
        r = mul_mod(r, b, q);
    }
    Some(r)
}

/// `(F_n mod q, F_{n+1} mod q)` by fast doubling.
pub fn fib_pair_mod(n: u64, q: u64) -> (u64, u64) {
    if n == 0 {
        return (0, 1 % q);
    }
    let (a, b) = fib_pair_mod(n >> 1, q);
    // F(2k) = F(k) * (2F(k+1) - F(k)), F(2k+1) = F(k)^2 + F(k+1)^2
    let two_b = (2 * b as u128 % q as u128) as u64;
    let t = (two_b + q - a) % q;
    let c = mul_mod(a, t, q);
    let d = (mul_mod(a, a, q) + mul_mod(b, b, q)) % q;
    if n & 1 == 0 {
        (c, d)
    } else {
        (d, (c + d) % q)
    }
}

fn pollard_brent(n: u64, seed: u64) -> Option<u64> {
    if n.is_multiple_of(2) {
        return Some(2);
    }
    let mut y = seed % n;
    let c = 1 + seed % (n - 1);
    let m = 128u64;
    let (mut g, mut r, mut q) = (1u64, 1u64, 1u64);
    let (mut x, mut ys) = (0u64, 0u64);
    while g == 1 {
        x = y;
        for _ in 0..r {
            y = (mul_mod(y, y, n) + c) % n;
        }
        let mut k = 0u64;
        while k < r && g == 1 {
            ys = y;
            for _ in 0..m.min(r - k) {
                y = (mul_mod(y, y, n) + c) % n;
                q = mul_mod(q, x.abs_diff(y), n);
            }
            g = gcd_u64(q, n);
            k += m;
        }
        r *= 2;
        if r > 1 << 40 {
            return None;
        }
    }
    if g == n {
        loop {
            ys = (mul_mod(ys, ys, n) + c) % n;
            g = gcd_u64(x.abs_diff(ys), n);
            if g > 1 {
                break;
            }
        }
    }
    (g != n).then_some(g)
}

/// Full factorization of a u64, ascending primes with exponents.
pub fn factor_u64(n: u64) -> Vec<(u64, u32)> {
    let mut out: Vec<(u64, u32)> = Vec::new();
    let mut n = n;
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31] {
        let mut e = 0;
        while n.is_multiple_of(p) {
            n /= p;
            e += 1;
        }
        if e > 0 {
            out.push((p, e));
        }
    }
    let mut stack = vec![n];
    while let Some(m) = stack.pop() {
        if m == 1 {
            continue;
        }
        if is_prime_u64(m) {
            match out.iter_mut().find(|(p, _)| *p == m) {
                Some((_, e)) => *e += 1,
                None => out.push((m, 1)),
            }
            continue;
        }
        let mut seed = 3;
        let d = loop {
            if let Some(d) = pollard_brent(m, seed) {
                break d;
            }
            seed += 1;
        };
        stack.push(d);
        stack.push(m / d);
    }
    out.sort();
    out
}

/// Exponent of `p` in `n` plus the cofactor; `n` must be nonzero.
pub fn p_valuation(n: &BigInt, p: u64) -> (u32, BigInt) {
    assert!(!n.is_zero());
    let p = BigInt::from(p);
    let mut v = 0u32;
    let mut m = n.abs();
    loop {
        let (q, r) = m.div_rem(&p);
        if !r.is_zero() {
            break;
        }
        m = q;
        v += 1;
    }
    // restore the sign on the cofactor
    if n.is_negative() {
        m = -m;
    }
    (v, m)
}

/// Miller-Rabin on big integers. Deterministic below 2^64; above that it
/// runs the first 40 prime bases, which is how composites are screened in
/// the audit paths (factors that large never feed classification).
pub fn is_prime_bigint(n: &BigUint) -> bool {
    if let Some(v) = n.to_u64() {
        return is_prime_u64(v);
    }
    if n.is_even() {
        return false;
    }
    let one = BigUint::one();
    let nm1 = n - &one;
    let s = nm1.trailing_zeros().unwrap_or(0);
    let d = &nm1 >> s;
    let bases = primes_below(180); // first 40 primes
    'base: for b in bases {
        let b = BigUint::from(b);
        let mut x = b.modpow(&d, n);
        if x == one || x == nm1 {
            continue;
        }
        for _ in 1..s {
            x = (&x * &x) % n;
            if x == nm1 {
                continue 'base;
            }
        }
        return false;
    }
    true
}

/// Outcome of budgeted factoring: prime factors found plus an optional
/// composite remainder that did not crack within the budget.
#[derive(Debug, Clone)]
pub struct Factorization {
    pub factors: Vec<(BigUint, u32)>,
    pub unfactored: Option<BigUint>,
}

impl Factorization {
    pub fn is_complete(&self) -> bool {
        self.unfactored.is_none()
    }
}

fn big_pollard_brent(n: &BigUint, seed: u64, budget: u64) -> Option<BigUint> {
    let one = BigUint::one();
    if n.is_even() {
        return Some(BigUint::from(2u32));
    }
    let c = BigUint::from(seed | 1);
    let f = |x: &BigUint| (x * x + &c) % n;
    let mut y = BigUint::from(seed + 2);
    let (mut g, mut r) = (one.clone(), 1u64);
    let mut q = one.clone();
    let mut x = y.clone();
    let mut ys = y.clone();
    let mut steps = 0u64;
    while g == one {
        x = y.clone();
        for _ in 0..r {
            y = f(&y);
        }
        let mut k = 0u64;
        while k < r && g == one {
            ys = y.clone();
            let m = 128.min(r - k);
            for _ in 0..m {
                y = f(&y);
                let diff = if x > y { &x - &y } else { &y - &x };
                q = (q * diff) % n;
            }
            g = q.gcd(n);
            k += m;
            steps += m;
            if steps > budget {
                return None;
            }
        }
        r *= 2;
    }
    if &g == n {
        loop {
            ys = f(&ys);
            let diff = if x > ys { &x - &ys } else { &ys - &x };
            g = diff.gcd(n);
            if g > one {
                break;
            }
            steps += 1;
            if steps > budget {
                return None;
            }
        }
    }
    (&g != n).then_some(g)
}

/// Trial division to 10^6, then Pollard-Brent rho within `budget` steps per
/// composite. Never guesses: anything uncracked lands in `unfactored`.
pub fn factor_bigint(n: &BigUint, budget: u64) -> Factorization {
    let mut factors: Vec<(BigUint, u32)> = Vec::new();
    let push = |p: BigUint, e: u32, factors: &mut Vec<(BigUint, u32)>| match factors
        .iter_mut()
        .find(|(q, _)| *q == p)
    {
        Some((_, e0)) => *e0 += e,
        None => factors.push((p, e)),
    };
    // word-size values take the fast u64 route
    if let Some(small) = n.to_u64() {
        if small > 0 {
            for (p, e) in factor_u64(small) {
                factors.push((BigUint::from(p), e));
            }
        }
        return Factorization {
            factors,
            unfactored: None,
        };
    }
    let mut m = n.clone();
    if m.is_zero() {
        return Factorization {
            factors,
            unfactored: None,
        };
    }
    for p in [2u64, 3, 5] {
        let pb = BigUint::from(p);
        let mut e = 0;
        while (&m % &pb).is_zero() {
            m /= &pb;
            e += 1;
        }
        if e > 0 {
            push(pb, e, &mut factors);
        }
    }
    let mut d = 7u64;
    let wheel = [4u64, 2, 4, 2, 4, 6, 2, 6];
    let mut wi = 0;
    while d <= 1_000_000 {
        if let Some(small) = m.to_u64() {
            // the remainder fits a word: the u64 machinery finishes it
            if small > 1 {
                for (p, e) in factor_u64(small) {
                    push(BigUint::from(p), e, &mut factors);
                }
            }
            factors.sort();
            return Factorization {
                factors,
                unfactored: None,
            };
        }
        let db = BigUint::from(d);
        let mut e = 0;
        while (&m % &db).is_zero() {
            m /= &db;
            e += 1;
        }
        if e > 0 {
            push(db, e, &mut factors);
        }
        d += wheel[wi];
        wi = (wi + 1) % wheel.len();
    }
    let one = BigUint::one();
    let mut unfactored = None;
    let mut stack = vec![m];
    while let Some(m) = stack.pop() {
        if m == one {
            continue;
        }
        if is_prime_bigint(&m) {
            push(m, 1, &mut factors);
            continue;
        }
        // perfect powers first: rho stalls on them
        let mut split = None;
        for k in 2..=m.bits() {
            let r = m.nth_root(k as u32);
            if r.pow(k as u32) == m {
                split = Some((r, k as u32));
                break;
            }
        }
        if let Some((r, k)) = split {
            for _ in 0..k {
                stack.push(r.clone());
            }
            continue;
        }
        let mut found = None;
        for seed in 1..=8u64 {
            if let Some(d) = big_pollard_brent(&m, seed, budget) {
                found = Some(d);
                break;
            }
        }
        match found {
            Some(d) => {
                stack.push(&m / &d);
                stack.push(d);
            }
            None => {
                unfactored = Some(match unfactored {
                    None => m,
                    Some(u) => u * m,
                });
            }
        }
    }
    factors.sort();
    Factorization {
        factors,
        unfactored,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primality_small() {
        let primes = primes_below(2000);
        for n in 0..2000u64 {
            assert_eq!(is_prime_u64(n), primes.contains(&n), "n={n}");
        }
        assert!(is_prime_u64(4871));
        assert!(is_prime_u64((1 << 61) - 1));
        assert!(!is_prime_u64(3215031751)); // strong pseudoprime to bases 2,3,5,7
    }

    #[test]
    fn fib_fast_doubling() {
        // F_0..F_12 straight from the recurrence
        let mut want = vec![0u64, 1];
        for i in 2..=42 {
            let t = want[i - 1] + want[i - 2];
            want.push(t);
        }
        let q = 1_000_000_007u64;
        for (i, &w) in want.iter().enumerate() {
            assert_eq!(fib_pair_mod(i as u64, q).0, w % q);
        }
        // frozen: F_42 = 267914296 = 211 * 1269736
        assert_eq!(want[42], 267914296);
        assert_eq!(want[42] % 211, 0);
    }

    #[test]
    fn factoring_roundtrip() {
        for n in [
            2u64 * 3 * 3 * 19,
            4871,
            1375,
            26375,
            999999999989,
            600851475143,
        ] {
            let f = factor_u64(n);
            let prod: u64 = f.iter().map(|(p, e)| p.pow(*e)).product();
            assert_eq!(prod, n);
            assert!(f.iter().all(|(p, _)| is_prime_u64(*p)));
        }
    }

    #[test]
    fn factor_bigint_roundtrip() {
        let n = BigUint::from(1375u64) * BigUint::from(4871u64) * BigUint::from(123456789012347u64);
        let f = factor_bigint(&n, 2_000_000);
        assert!(f.is_complete());
        let mut prod = BigUint::one();
        for (p, e) in &f.factors {
            assert!(is_prime_bigint(p));
            prod *= p.pow(*e);
        }
        assert_eq!(prod, n);
    }

    #[test]
    fn sqrt_mod_works() {
        for q in [11u64, 41, 211, 4871, 1000003] {
            for a in [2u64, 5, 10, 123] {
                if let Some(r) = sqrt_mod(a, q) {
                    assert_eq!(mul_mod(r, r, q), a % q);
                }
            }
            // 5 must be a QR mod q = 1 mod 5 primes
            if q % 5 == 1 {
                assert!(sqrt_mod(5, q).is_some());
            }
        }
    }

    #[test]
    fn valuation_and_orders() {
        let n = BigInt::from(-1375);
        let (v, m) = p_valuation(&n, 5);
        assert_eq!((v, m), (3, BigInt::from(-11)));
        assert_eq!(order_mod(7, 9), 3);
        assert_eq!(order_mod(2, 9), 6);
        let g = primitive_root(11);
        assert_eq!(order_mod(g, 11), 10);
    }
}
