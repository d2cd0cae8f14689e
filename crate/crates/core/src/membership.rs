//! Exact membership decisions for the 25x25 and 27x27 circulant
//! determinant sets, plus the general prime-power necessary conditions.
//!
//! For Z_25: a nonzero D with v_5(D) = 0 or >= 4 is always attained; v in
//! {1,2} never; v = 3 exactly when some perissad prime q = 1 mod 5 divides
//! the cofactor. For Z_27: v_3 in {1,2,3} never, v >= 6 always, v = 4 needs
//! a Type-1 prime q = 1 mod 9, and v = 5 a Type-1 prime q = 1 mod 3 or a
//! Type-3 prime q = 1 mod 9.
//!
//! Every verdict is a mathematical claim: when the factoring budget runs
//! out, or a needed factor is too large to classify, the functions return
//! `FactorizationFailed` instead of guessing.

use crate::arith::{factor_bigint, order_mod, p_valuation, Factorization};
use crate::classify::{classify_mod3, classify_mod5, classify_mod9, TypeLabel, TypeVerdict};
use crate::error::{Error, Result};
use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

pub const DEFAULT_RHO_BUDGET: u64 = 4_000_000;

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Decision {
    Member,
    NonMember,
}

#[derive(Clone, Debug)]
pub enum MemberReason {
    /// gcd(D, n) = 1; the classic coprime construction applies.
    Coprime,
    /// n^2 divides D.
    HighPower { valuation: u32 },
    /// A classified prime divisor certifies the verdict.
    QualifyingPrime { q: u64, verdict: Box<TypeVerdict> },
    /// v_p(D) sits in the excluded window.
    ExcludedValuation { valuation: u32 },
    /// Complete factor list, none of which qualifies.
    NoQualifyingPrime { factors: Vec<(BigUint, u32)> },
}

#[derive(Clone, Debug)]
pub struct MembershipVerdict {
    pub value: BigInt,
    /// Group order n = p^t.
    pub n: u64,
    pub decision: Decision,
    pub reason: MemberReason,
}

/// The two base inclusions valid for every cyclic group order n >= 2:
/// integers coprime to n, and multiples of n^2.
pub fn base_membership(n: u64, d: &BigInt) -> Option<MembershipVerdict> {
    assert!(n >= 2);
    if d.is_zero() {
        return None;
    }
    let nb = BigInt::from(n);
    if d.gcd(&nb).is_one() {
        return Some(MembershipVerdict {
            value: d.clone(),
            n,
            decision: Decision::Member,
            reason: MemberReason::Coprime,
        });
    }
    if (d % (&nb * &nb)).is_zero() {
        return Some(MembershipVerdict {
            value: d.clone(),
            n,
            decision: Decision::Member,
            reason: MemberReason::HighPower { valuation: 0 },
        });
    }
    None
}

/// The divisibility obstruction: p | D together with p^t exactly dividing n
/// forces p^(t+1) | D. Returns the refuting NonMember verdict if violated.
pub fn divisibility_check(n: u64, d: &BigInt) -> Option<MembershipVerdict> {
    if d.is_zero() {
        return None;
    }
    for (p, t) in crate::arith::factor_u64(n) {
        let (v, _) = p_valuation(d, p);
        if v >= 1 && v < t + 1 {
            return Some(MembershipVerdict {
                value: d.clone(),
                n,
                decision: Decision::NonMember,
                reason: MemberReason::ExcludedValuation { valuation: v },
            });
        }
    }
    None
}

fn factor_or_fail(m: &BigUint, budget: u64, what: &str) -> Result<Vec<(BigUint, u32)>> {
    let Factorization {
        factors,
        unfactored,
    } = factor_bigint(m, budget);
    match unfactored {
        None => Ok(factors),
        Some(u) => Err(Error::FactorizationFailed(format!(
            "{what}: composite cofactor {u} uncracked"
        ))),
    }
}

/// Scan prime factors for one matching `congruence` and classified with
/// `wanted` by `classify`. Factors that are congruent but too large to
/// classify poison a NonMember conclusion, so they surface as an error
/// unless a qualifying prime was already found.
fn find_qualifying(
    factors: &[(BigUint, u32)],
    modulus: u64,
    wanted: TypeLabel,
    classify: fn(u64) -> Result<TypeVerdict>,
) -> Result<Option<(u64, TypeVerdict)>> {
    let mut oversized: Option<&BigUint> = None;
    for (f, _) in factors {
        if (f % modulus).to_u64() != Some(1) {
            continue;
        }
        match f.to_u64() {
            Some(q) => {
                let verdict = classify(q)?;
                if verdict.label == wanted {
                    return Ok(Some((q, verdict)));
                }
            }
            None => oversized = Some(f),
        }
    }
    match oversized {
        Some(f) => Err(Error::FactorizationFailed(format!(
            "prime {f} is too large to classify"
        ))),
        None => Ok(None),
    }
}

/// Exact decision for S(Z_25) with the default factoring budget.
pub fn member_z25(d: &BigInt) -> Result<MembershipVerdict> {
    member_z25_with_budget(d, DEFAULT_RHO_BUDGET)
}

pub fn member_z25_with_budget(d: &BigInt, budget: u64) -> Result<MembershipVerdict> {
    if d.is_zero() {
        return Err(Error::NotApplicable("D = 0".to_string()));
    }
    let verdict = |decision, reason| MembershipVerdict {
        value: d.clone(),
        n: 25,
        decision,
        reason,
    };
    let (v, m) = p_valuation(d, 5);
    match v {
        0 => Ok(verdict(Decision::Member, MemberReason::Coprime)),
        1 | 2 => Ok(verdict(
            Decision::NonMember,
            MemberReason::ExcludedValuation { valuation: v },
        )),
        3 => {
            let factors = factor_or_fail(m.magnitude(), budget, "member_z25")?;
            match find_qualifying(&factors, 5, TypeLabel::Type1, classify_mod5)? {
                Some((q, verdict_q)) => Ok(verdict(
                    Decision::Member,
                    MemberReason::QualifyingPrime {
                        q,
                        verdict: Box::new(verdict_q),
                    },
                )),
                None => Ok(verdict(
                    Decision::NonMember,
                    MemberReason::NoQualifyingPrime { factors },
                )),
            }
        }
        _ => Ok(verdict(
            Decision::Member,
            MemberReason::HighPower { valuation: v },
        )),
    }
}

/// Exact decision for S(Z_27) with the default factoring budget.
pub fn member_z27(d: &BigInt) -> Result<MembershipVerdict> {
    member_z27_with_budget(d, DEFAULT_RHO_BUDGET)
}

pub fn member_z27_with_budget(d: &BigInt, budget: u64) -> Result<MembershipVerdict> {
    if d.is_zero() {
        return Err(Error::NotApplicable("D = 0".to_string()));
    }
    let verdict = |decision, reason| MembershipVerdict {
        value: d.clone(),
        n: 27,
        decision,
        reason,
    };
    let (v, m) = p_valuation(d, 3);
    match v {
        0 => Ok(verdict(Decision::Member, MemberReason::Coprime)),
        1..=3 => Ok(verdict(
            Decision::NonMember,
            MemberReason::ExcludedValuation { valuation: v },
        )),
        4 => {
            let factors = factor_or_fail(m.magnitude(), budget, "member_z27")?;
            match find_qualifying(&factors, 9, TypeLabel::Type1, classify_mod9)? {
                Some((q, verdict_q)) => Ok(verdict(
                    Decision::Member,
                    MemberReason::QualifyingPrime {
                        q,
                        verdict: Box::new(verdict_q),
                    },
                )),
                None => Ok(verdict(
                    Decision::NonMember,
                    MemberReason::NoQualifyingPrime { factors },
                )),
            }
        }
        5 => {
            let factors = factor_or_fail(m.magnitude(), budget, "member_z27")?;
            if let Some((q, verdict_q)) =
                find_qualifying(&factors, 3, TypeLabel::Type1, classify_mod3)?
            {
                return Ok(verdict(
                    Decision::Member,
                    MemberReason::QualifyingPrime {
                        q,
                        verdict: Box::new(verdict_q),
                    },
                ));
            }
            if let Some((q, verdict_q)) =
                find_qualifying(&factors, 9, TypeLabel::Type3, classify_mod9)?
            {
                return Ok(verdict(
                    Decision::Member,
                    MemberReason::QualifyingPrime {
                        q,
                        verdict: Box::new(verdict_q),
                    },
                ));
            }
            Ok(verdict(
                Decision::NonMember,
                MemberReason::NoQualifyingPrime { factors },
            ))
        }
        _ => Ok(verdict(
            Decision::Member,
            MemberReason::HighPower { valuation: v },
        )),
    }
}

// ---------------------------------------------------------------------------
// the general prime-power necessary condition
// ---------------------------------------------------------------------------

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum CheckStatus {
    Excluded,
    NotExcluded,
}

/// One demanded slot: a prime power q^a = 1 mod p^i with a odd.
#[derive(Clone, Debug)]
pub struct Slot {
    pub i: u32,
    pub modulus: u64,
}

/// A feasible assignment entry: slot modulus p^i covered by q^a.
#[derive(Clone, Debug)]
pub struct SlotFill {
    pub i: u32,
    pub q: BigUint,
    pub a: u32,
}

#[derive(Clone, Debug)]
pub struct GeneralCheck {
    pub value: BigInt,
    pub p: u64,
    pub t: u32,
    /// v_p when it lies in the window t+1 .. 2t-1.
    pub j: Option<u32>,
    pub status: CheckStatus,
    pub required: Vec<Slot>,
    pub assignment: Vec<SlotFill>,
}

/// Try to cover every slot with prime powers dividing m; each prime can
/// serve several slots as long as the sum of its (odd, minimal) exponents
/// stays within its multiplicity. Exhaustive over the small slot count.
fn cover_slots(slots: &[Slot], primes: &[(BigUint, u32)], p: u64) -> Option<Vec<SlotFill>> {
    // cost[s][f]: minimal odd exponent a with q_f^a = 1 mod p^i_s, if any
    let mut cost = vec![vec![None; primes.len()]; slots.len()];
    for (s, slot) in slots.iter().enumerate() {
        for (f, (q, _)) in primes.iter().enumerate() {
            let qm = (q % slot.modulus).to_u64().unwrap();
            if qm == 0 {
                continue;
            }
            let ord = order_mod(qm, slot.modulus);
            if ord % 2 == 1 {
                cost[s][f] = Some(ord as u32);
            }
        }
    }
    let mut capacity: Vec<u32> = primes.iter().map(|(_, e)| *e).collect();
    let mut fills: Vec<SlotFill> = Vec::new();
    fn recurse(
        s: usize,
        slots: &[Slot],
        primes: &[(BigUint, u32)],
        cost: &[Vec<Option<u32>>],
        capacity: &mut Vec<u32>,
        fills: &mut Vec<SlotFill>,
    ) -> bool {
        if s == slots.len() {
            return true;
        }
        for f in 0..primes.len() {
            if let Some(a) = cost[s][f] {
                if capacity[f] >= a {
                    capacity[f] -= a;
                    fills.push(SlotFill {
                        i: slots[s].i,
                        q: primes[f].0.clone(),
                        a,
                    });
                    if recurse(s + 1, slots, primes, cost, capacity, fills) {
                        return true;
                    }
                    fills.pop();
                    capacity[f] += a;
                }
            }
        }
        false
    }
    let _ = p;
    // largest modulus first: hardest slots constrain the search most
    let mut order: Vec<usize> = (0..slots.len()).collect();
    order.sort_by_key(|&s| std::cmp::Reverse(slots[s].modulus));
    let ordered: Vec<Slot> = order.iter().map(|&s| slots[s].clone()).collect();
    let ordered_cost: Vec<Vec<Option<u32>>> = order.iter().map(|&s| cost[s].clone()).collect();
    if recurse(
        0,
        &ordered,
        primes,
        &ordered_cost,
        &mut capacity,
        &mut fills,
    ) {
        Some(fills)
    } else {
        None
    }
}

/// Necessary-condition check for p^j * m in S(Z_{p^t}) with t+1 <= j <= 2t-1:
/// the factorization of m must supply the demanded odd-exponent prime
/// powers, one per slot. Values outside the window are never excluded here.
pub fn general_exclusion_check(p: u64, t: u32, d: &BigInt) -> Result<GeneralCheck> {
    general_exclusion_check_with_budget(p, t, d, DEFAULT_RHO_BUDGET)
}

pub fn general_exclusion_check_with_budget(
    p: u64,
    t: u32,
    d: &BigInt,
    budget: u64,
) -> Result<GeneralCheck> {
    if !crate::arith::is_prime_u64(p) || p < 3 {
        return Err(Error::NotApplicable(format!(
            "p = {p} must be an odd prime"
        )));
    }
    if t < 2 || (p == 3 && t < 3) {
        return Err(Error::NotApplicable(format!(
            "needs t >= 2 (t >= 3 for p = 3), got t = {t}"
        )));
    }
    if d.is_zero() {
        return Err(Error::NotApplicable("D = 0".to_string()));
    }
    let (j, m) = p_valuation(d, p);
    let mut check = GeneralCheck {
        value: d.clone(),
        p,
        t,
        j: None,
        status: CheckStatus::NotExcluded,
        required: Vec::new(),
        assignment: Vec::new(),
    };
    if j < t + 1 || j > 2 * t - 1 {
        return Ok(check);
    }
    check.j = Some(j);
    let slots: Vec<Slot> = if p == 3 && j == t + 1 {
        (2..=t - 1)
            .map(|i| Slot {
                i,
                modulus: p.pow(i),
            })
            .collect()
    } else {
        (1..=2 * t - j)
            .map(|i| Slot {
                i,
                modulus: p.pow(i),
            })
            .collect()
    };
    check.required = slots.clone();
    if slots.is_empty() {
        return Ok(check);
    }
    let factors = factor_or_fail(m.magnitude(), budget, "general_exclusion_check")?;
    match cover_slots(&slots, &factors, p) {
        Some(fills) => {
            check.assignment = fills;
            Ok(check)
        }
        None => {
            check.status = CheckStatus::Excluded;
            Ok(check)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(v: i64) -> BigInt {
        BigInt::from(v)
    }

    #[test]
    fn base_rules() {
        assert!(matches!(
            base_membership(25, &big(7)),
            Some(MembershipVerdict {
                decision: Decision::Member,
                reason: MemberReason::Coprime,
                ..
            })
        ));
        assert!(matches!(
            base_membership(25, &big(625)),
            Some(MembershipVerdict {
                decision: Decision::Member,
                ..
            })
        ));
        assert!(base_membership(25, &big(10)).is_none());
        assert!(base_membership(25, &big(0)).is_none());
    }

    #[test]
    fn divisibility_rule() {
        let v = divisibility_check(25, &big(10)).unwrap();
        assert_eq!(v.decision, Decision::NonMember);
        // 9k with 3 not dividing k: v_3 = 2 < 4
        let v = divisibility_check(27, &big(9 * 5)).unwrap();
        assert_eq!(v.decision, Decision::NonMember);
        assert!(divisibility_check(25, &big(1375)).is_none());
        assert!(divisibility_check(27, &big(1539)).is_none());
    }

    #[test]
    fn z25_decisions() {
        assert_eq!(member_z25(&big(1375)).unwrap().decision, Decision::Member);
        let v = member_z25(&big(125 * 211)).unwrap();
        assert_eq!(v.decision, Decision::NonMember);
        assert!(matches!(v.reason, MemberReason::NoQualifyingPrime { .. }));
        // sign and coprime cofactor absorbed
        assert_eq!(
            member_z25(&big(-125 * 11 * 3)).unwrap().decision,
            Decision::Member
        );
        assert_eq!(member_z25(&big(7)).unwrap().decision, Decision::Member);
        assert_eq!(member_z25(&big(10)).unwrap().decision, Decision::NonMember);
        assert_eq!(
            member_z25(&big(625 * 211)).unwrap().decision,
            Decision::Member
        );
        assert_eq!(member_z25(&big(125)).unwrap().decision, Decision::NonMember);
        assert!(member_z25(&big(0)).is_err());
        // stability under sign
        for d in [1375i64, 125 * 211, 10, 7, 625] {
            let a = member_z25(&big(d)).unwrap().decision;
            let b = member_z25(&big(-d)).unwrap().decision;
            assert_eq!(a, b);
        }
    }

    #[test]
    fn z27_decisions() {
        assert_eq!(member_z27(&big(1539)).unwrap().decision, Decision::Member);
        let v = member_z27(&big(81 * 73)).unwrap();
        assert_eq!(v.decision, Decision::NonMember);
        assert_eq!(
            member_z27(&big(243 * 7)).unwrap().decision,
            Decision::Member
        );
        let v = member_z27(&big(243 * 61)).unwrap();
        assert_eq!(v.decision, Decision::NonMember);
        // 73 is Type 3: qualifies at 3^5 but not 3^4
        assert_eq!(
            member_z27(&big(243 * 73)).unwrap().decision,
            Decision::Member
        );
        assert_eq!(
            member_z27(&big(9 * 7)).unwrap().decision,
            Decision::NonMember
        );
        assert_eq!(
            member_z27(&big(729 * 61)).unwrap().decision,
            Decision::Member
        );
        assert_eq!(member_z27(&big(-1539)).unwrap().decision, Decision::Member);
    }

    #[test]
    fn general_exclusion_examples() {
        // 125 = 5^3 in Z_25: excluded
        let c = general_exclusion_check(5, 2, &big(125)).unwrap();
        assert_eq!(c.status, CheckStatus::Excluded);
        assert_eq!(c.j, Some(3));
        // multiples of p^(2t) are never in the window
        let c = general_exclusion_check(5, 3, &big(5i64.pow(6) * 14)).unwrap();
        assert_eq!(c.status, CheckStatus::NotExcluded);
        assert!(c.j.is_none());
        // 3^4 * 73 in Z_27: 73 = 1 mod 9 fills the single case-(b) slot,
        // yet member_z27 rejects it: the condition is necessary, not
        // sufficient
        let c = general_exclusion_check(3, 3, &big(81 * 73)).unwrap();
        assert_eq!(c.status, CheckStatus::NotExcluded);
        assert_eq!(c.assignment.len(), 1);
        assert_eq!(
            member_z27(&big(81 * 73)).unwrap().decision,
            Decision::NonMember
        );
        // 3^4 * 7: ord(7 mod 9) = 3 is odd but 7^3 does not divide 7
        let c = general_exclusion_check(3, 3, &big(81 * 7)).unwrap();
        assert_eq!(c.status, CheckStatus::Excluded);
        // ... while 3^4 * 7^3 passes the necessary condition
        let c = general_exclusion_check(3, 3, &big(81 * 343)).unwrap();
        assert_eq!(c.status, CheckStatus::NotExcluded);
        assert_eq!(c.assignment[0].a, 3);
        // case (a) with two slots: j = 4 = t+1 for p = 5, t = 3 demands
        // q_1^a1 = 1 mod 5 and q_2^a2 = 1 mod 25
        let c = general_exclusion_check(5, 3, &big(5i64.pow(4) * 11 * 101)).unwrap();
        assert_eq!(c.status, CheckStatus::NotExcluded);
        assert_eq!(c.required.len(), 2);
        let c = general_exclusion_check(5, 3, &big(5i64.pow(4) * 11 * 31)).unwrap();
        assert_eq!(c.status, CheckStatus::Excluded); // no factor = 1 mod 25
        assert!(general_exclusion_check(3, 2, &big(81)).is_err());
        assert!(general_exclusion_check(5, 1, &big(81)).is_err());
    }
}
