//! Corpus audits: every record from a search run is checked against the
//! divisibility condition, the valuation profile forced inside the window
//! t+1 <= v_p <= 2t, and the qualifying-prime requirements for Z_25 / Z_27.
//! Unfactored cofactors and primes beyond the classification bound are
//! reported as unknown, never as violations.

use crate::arith::{factor_bigint, p_valuation};
use crate::classify::{classify_mod3, classify_mod5, classify_mod9, TypeLabel};
use crate::measure::measure;
use crate::membership::{general_exclusion_check_with_budget, CheckStatus};
use crate::search::MeasureRecord;
use num_bigint::BigUint;
use num_traits::ToPrimitive;

/// Largest prime the audit will classify; beyond it the record counts as
/// unknown.
pub const CLASSIFY_BOUND: u64 = 1_000_000;

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum ViolationKind {
    /// Stored profile disagrees with a fresh exact recomputation.
    ProfileMismatch,
    /// p divides the measure but p^(t+1) does not.
    Divisibility,
    /// Valuation in the window without the forced (F(1), N_i) profile.
    ValuationProfile,
    /// Measure shape that the qualifying-prime characterization rules out.
    QualifyingPrime,
    /// Attained measure that the general exclusion says cannot exist.
    GeneralExclusion,
}

#[derive(Clone, Debug)]
pub struct Violation {
    pub kind: ViolationKind,
    pub coeffs: String,
    pub detail: String,
}

#[derive(Clone, Debug, Default)]
pub struct AuditReport {
    pub records: u64,
    pub violations: Vec<Violation>,
    /// Records whose verdict could not be settled within the budget.
    pub unknown: u64,
    /// Window records where some required modulus p^i is only served by a
    /// prime-power substitute, never a genuine prime q = 1 mod p^i.
    pub substitute_only: u64,
    /// Window records fully checked for the qualifying-prime requirement.
    pub qualifying_checked: u64,
}

impl AuditReport {
    pub fn is_clean(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Classification results are memoized per audit run: corpora repeat the
/// same qualifying primes over and over.
type LabelCache = std::collections::HashMap<(u64, u64), Option<TypeLabel>>;

/// One qualifying-prime requirement: (modulus, accepted labels, classifier).
type Requirement = (u64, Vec<TypeLabel>, ClassifyFn);
type ClassifyFn = fn(u64) -> crate::error::Result<crate::classify::TypeVerdict>;

fn classify_qualifies(
    factors: &[(BigUint, u32)],
    modulus: u64,
    wanted: &[TypeLabel],
    classify: fn(u64) -> crate::error::Result<crate::classify::TypeVerdict>,
    cache: &mut LabelCache,
) -> Option<bool> {
    // Some(true): a qualifying prime exists. Some(false): provably none.
    // None: a congruent prime was out of classification reach.
    let mut all_known = true;
    for (f, _) in factors {
        if (f % modulus).to_u64() != Some(1) {
            continue;
        }
        match f.to_u64() {
            Some(q) if q <= CLASSIFY_BOUND => {
                let label = cache
                    .entry((modulus, q))
                    .or_insert_with(|| classify(q).ok().map(|v| v.label));
                match label {
                    Some(l) if wanted.contains(l) => return Some(true),
                    Some(_) => {}
                    None => all_known = false,
                }
            }
            _ => all_known = false,
        }
    }
    if all_known {
        Some(false)
    } else {
        None
    }
}

/// Audit a corpus produced over Z_{p^t}.
pub fn corpus_audit(records: &[MeasureRecord], p: u64, t: u32, budget: u64) -> AuditReport {
    let mut report = AuditReport::default();
    let mut cache: LabelCache = LabelCache::new();
    for rec in records {
        report.records += 1;
        let coeffs = rec.coeffs.to_string();
        let violate = |kind, detail: String| Violation {
            kind,
            coeffs: coeffs.clone(),
            detail,
        };
        // records must re-verify from their polynomial
        let fresh = measure(&rec.coeffs, p, t);
        if fresh != rec.profile {
            report.violations.push(violate(
                ViolationKind::ProfileMismatch,
                "stored profile disagrees with recomputation".to_string(),
            ));
            continue;
        }
        let vp = rec.vp;
        // divisibility condition
        if (1..=t).contains(&vp) {
            report.violations.push(violate(
                ViolationKind::Divisibility,
                format!("v_p = {vp} lies in 1..={t}"),
            ));
            continue;
        }
        if vp < t + 1 || vp > 2 * t {
            continue;
        }
        // forced valuation profile in the window
        let (vf1, _) = p_valuation(&rec.profile.f_at_1, p);
        let norm_vals: Vec<u32> = rec
            .profile
            .norms
            .iter()
            .map(|n| p_valuation(n, p).0)
            .collect();
        if vf1 != vp - t || norm_vals.iter().any(|&v| v != 1) {
            report.violations.push(violate(
                ViolationKind::ValuationProfile,
                format!("F(1) has v_p {vf1} (want {}), norms {norm_vals:?}", vp - t),
            ));
            continue;
        }
        // factoring is only needed inside the strict window
        if vp > 2 * t - 1 {
            continue;
        }
        let fac = factor_bigint(rec.m.magnitude(), budget);
        if !fac.is_complete() {
            report.unknown += 1;
            continue;
        }
        let requirement: Option<Vec<Requirement>> = match (p, t, vp) {
            (5, 2, 3) => Some(vec![(
                5u64,
                vec![TypeLabel::Type1],
                classify_mod5 as ClassifyFn,
            )]),
            (3, 3, 4) => Some(vec![(
                9,
                vec![TypeLabel::Type1],
                classify_mod9 as ClassifyFn,
            )]),
            (3, 3, 5) => Some(vec![
                (3, vec![TypeLabel::Type1], classify_mod3 as ClassifyFn),
                (9, vec![TypeLabel::Type3], classify_mod9 as ClassifyFn),
            ]),
            _ => None,
        };
        if let Some(req) = requirement {
            report.qualifying_checked += 1;
            let mut any_true = false;
            let mut any_unknown = false;
            for (modulus, wanted, classify) in req {
                match classify_qualifies(&fac.factors, modulus, &wanted, classify, &mut cache) {
                    Some(true) => {
                        any_true = true;
                        break;
                    }
                    Some(false) => {}
                    None => any_unknown = true,
                }
            }
            if !any_true {
                if any_unknown {
                    report.unknown += 1;
                } else {
                    report.violations.push(violate(
                        ViolationKind::QualifyingPrime,
                        format!(
                            "measure {} lacks the mandated prime class",
                            rec.profile.measure
                        ),
                    ));
                }
                continue;
            }
        } else if p >= 5 && t >= 2 || p == 3 && t >= 3 {
            // general window: the attained value must pass the necessary
            // condition
            match general_exclusion_check_with_budget(p, t, &rec.profile.measure, budget) {
                Ok(check) if check.status == CheckStatus::Excluded => {
                    report.violations.push(violate(
                        ViolationKind::GeneralExclusion,
                        format!("attained measure {} is excluded", rec.profile.measure),
                    ));
                    continue;
                }
                Ok(_) => {}
                Err(_) => {
                    report.unknown += 1;
                    continue;
                }
            }
        }
        // substitute-only statistics: does every required modulus see a
        // genuine prime q = 1 mod p^i among the factors?
        let slots: Vec<u32> = if p == 3 && vp == t + 1 {
            (2..=t - 1).collect()
        } else {
            (1..=2 * t - vp).collect()
        };
        let genuine_missing = slots.iter().any(|&i| {
            let m = p.pow(i);
            !fac.factors.iter().any(|(q, _)| (q % m).to_u64() == Some(1))
        });
        if genuine_missing {
            report.substitute_only += 1;
        }
    }
    report
}
