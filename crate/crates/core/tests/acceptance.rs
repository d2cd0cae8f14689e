//! Acceptance suite: one test per criterion, each printing a pass/fail
//! line (run with `-- --nocapture` to see them on success).
//!
//! Every tolerance, bound and expected value is pinned here; nothing is
//! deferred to later calibration.

mod common;

use circdet_core::arith::p_valuation;
use circdet_core::classify::{
    binary_form_test, classify_mod3, classify_mod5, cubic_residue_test, dickson_artiad_test,
    fibonacci_artiad_test, jacobi_artiad_test, quintic_residue_test, TypeLabel,
};
use circdet_core::cyclo::{newman_unit_probe, CycloIndex};
use circdet_core::measure::{measure, norm, pth_power_reduce, pth_power_reduce_cubic};
use circdet_core::membership::{member_z25, member_z27, Decision};
use circdet_core::search::{enumerate_measures, exclusion_probe, MeasureRecord, SearchSpec};
use circdet_core::tables::{tables, TableContext};
use circdet_core::witness::{
    verify_witness, witness_3p4, witness_3p5_mod3, witness_3p5_type3, witness_5cubed,
};
use circdet_core::IntPoly;
use common::lists;
use num_bigint::BigInt;
use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};
use rayon::prelude::*;
use std::collections::BTreeSet;
use std::time::Duration;

const MIN: Duration = Duration::from_secs(60);

fn check_lists(
    report: &circdet_core::tables::TableReport,
    want: &[(&str, &[u64])],
) -> Result<(), String> {
    for (label, expect) in want {
        let got = report.list(label);
        if got != *expect {
            let got_set: BTreeSet<_> = got.iter().collect();
            let want_set: BTreeSet<_> = expect.iter().collect();
            let extra: Vec<_> = got_set.difference(&want_set).collect();
            let missing: Vec<_> = want_set.difference(&got_set).collect();
            return Err(format!(
                "{label}: {} listed vs {} expected; extra {extra:?}, missing {missing:?}",
                got.len(),
                expect.len()
            ));
        }
    }
    Ok(())
}

#[test]
fn criterion_01_perissad_artiad_tables() {
    common::criterion("C1 perissad/artiad tables", 5 * MIN, || {
        let pool = common::single_thread_pool();
        let report = pool
            .install(|| tables(TableContext::Mod5, 5000))
            .map_err(|e| e.to_string())?;
        let total = report.count("Perissad") + report.count("Artiad");
        if total != 163 {
            return Err(format!("{total} primes classified, expected 163"));
        }
        check_lists(
            &report,
            &[("Perissad", &lists::PERISSADS), ("Artiad", &lists::ARTIADS)],
        )?;
        Ok("134 perissads + 29 artiads, element-for-element".to_string())
    });
}

#[test]
fn criterion_02_mod3_tables() {
    common::criterion("C2 mod-3 tables", 10 * MIN, || {
        let pool = common::single_thread_pool();
        let mod9 = pool
            .install(|| tables(TableContext::Mod9, 5000))
            .map_err(|e| e.to_string())?;
        check_lists(
            &mod9,
            &[
                ("Type1", &lists::MOD9_TYPE1),
                ("Type3", &lists::MOD9_TYPE3),
                ("Type4", &lists::MOD9_TYPE4),
            ],
        )?;
        let mod4 = pool
            .install(|| tables(TableContext::Mod4Mod9, 5000))
            .map_err(|e| e.to_string())?;
        check_lists(
            &mod4,
            &[("Type1", &lists::MOD4_TYPE1), ("Type2", &lists::MOD4_TYPE2)],
        )?;
        let mod7 = pool
            .install(|| tables(TableContext::Mod7Mod9, 5000))
            .map_err(|e| e.to_string())?;
        check_lists(
            &mod7,
            &[("Type1", &lists::MOD7_TYPE1), ("Type2", &lists::MOD7_TYPE2)],
        )?;
        Ok("76/24/9 (1 mod 9), 75/34 (4 mod 9), 76/36 (7 mod 9)".to_string())
    });
}

#[test]
fn criterion_03_oracle_cross_agreement() {
    common::criterion("C3 oracle cross-agreement", 10 * MIN, || {
        let primes = circdet_core::arith::primes_below(5000);
        let mut checked5 = 0;
        for &q in primes.iter().filter(|&&q| q % 5 == 1) {
            let artiad = classify_mod5(q).map_err(|e| e.to_string())?.label == TypeLabel::Type2;
            let fib = fibonacci_artiad_test(q).map_err(|e| e.to_string())?.0;
            let quintic = quintic_residue_test(q).map_err(|e| e.to_string())?;
            let jacobi = jacobi_artiad_test(q).map_err(|e| e.to_string())?.0;
            let dickson = dickson_artiad_test(q).map_err(|e| e.to_string())?.0;
            if [fib, quintic, jacobi, dickson].iter().any(|&o| o != artiad) {
                return Err(format!(
                    "q={q}: reduction {artiad}, fib {fib}, quintic {quintic}, \
                     jacobi {jacobi}, dickson {dickson}"
                ));
            }
            checked5 += 1;
        }
        let mut checked3 = 0;
        for &q in primes.iter().filter(|&&q| q % 3 == 1) {
            let type2 = classify_mod3(q).map_err(|e| e.to_string())?.label == TypeLabel::Type2;
            let by_form = binary_form_test(q).map_err(|e| e.to_string())?;
            let by_cubic = cubic_residue_test(q).map_err(|e| e.to_string())?;
            if type2 != by_form || type2 != by_cubic {
                return Err(format!(
                    "q={q}: reduction Type2={type2}, form {by_form}, cubic {by_cubic}"
                ));
            }
            checked3 += 1;
        }
        Ok(format!(
            "{checked5} primes x 5 oracles (mod 5), {checked3} primes x 3 routes (mod 3), zero disagreements"
        ))
    });
}

#[test]
fn criterion_04_published_witnesses_verify() {
    common::criterion("C4 published witnesses", MIN, || {
        for (coeffs, p, t, want) in lists::PUBLISHED_WITNESSES {
            let f: IntPoly = coeffs.parse().expect("test data parses");
            let (ok, profile) = verify_witness(&f, p, t, &BigInt::from(want));
            if !ok {
                return Err(format!("{coeffs}: measure {} != {want}", profile.measure));
            }
        }
        Ok(format!(
            "{} printed polynomials reproduce their measures bit-exactly",
            lists::PUBLISHED_WITNESSES.len()
        ))
    });
}

#[test]
fn criterion_05_constructed_witnesses() {
    common::criterion("C5 constructed witnesses", 15 * MIN, || {
        let big = BigInt::from;
        let mut built = 0;
        for &q in lists::PERISSADS.iter().filter(|&&q| q < 1000) {
            let plan = witness_5cubed(q).map_err(|e| format!("q={q}: {e}"))?;
            let want = [big(5), big(5 * q as i64), big(5)];
            let got = [
                plan.profile.f_at_1.clone(),
                plan.profile.norms[0].clone(),
                plan.profile.norms[1].clone(),
            ];
            if got != want || plan.target != big(125 * q as i64) || !plan.self_verify() {
                return Err(format!("witness_5cubed({q}) profile {got:?}"));
            }
            built += 1;
        }
        for &q in lists::MOD9_TYPE1.iter().filter(|&&q| q < 1000) {
            let plan = witness_3p4(q).map_err(|e| format!("q={q}: {e}"))?;
            let want = [big(3), big(3), big(3 * q as i64), big(3)];
            let mut got = vec![plan.profile.f_at_1.clone()];
            got.extend(plan.profile.norms.iter().cloned());
            if got != want || plan.target != big(81 * q as i64) || !plan.self_verify() {
                return Err(format!("witness_3p4({q}) profile {got:?}"));
            }
            built += 1;
        }
        // Type-1 primes 1 mod 3 below 500: all three residue tables
        let type1_mod3: Vec<u64> = lists::MOD9_TYPE1
            .iter()
            .chain(lists::MOD4_TYPE1.iter())
            .chain(lists::MOD7_TYPE1.iter())
            .copied()
            .filter(|&q| q < 500)
            .collect();
        for q in type1_mod3 {
            let plan = witness_3p5_mod3(q).map_err(|e| format!("q={q}: {e}"))?;
            let want = [big(9), big(3 * q as i64), big(3), big(3)];
            let mut got = vec![plan.profile.f_at_1.clone()];
            got.extend(plan.profile.norms.iter().cloned());
            if got != want || plan.target != big(243 * q as i64) || !plan.self_verify() {
                return Err(format!("witness_3p5_mod3({q}) profile {got:?}"));
            }
            built += 1;
        }
        for &q in lists::MOD9_TYPE3.iter().filter(|&&q| q < 500) {
            let plan = witness_3p5_type3(q).map_err(|e| format!("q={q}: {e}"))?;
            let want = [big(9), big(3), big(3 * q as i64), big(3)];
            let mut got = vec![plan.profile.f_at_1.clone()];
            got.extend(plan.profile.norms.iter().cloned());
            if got != want || plan.target != big(243 * q as i64) || !plan.self_verify() {
                return Err(format!("witness_3p5_type3({q}) profile {got:?}"));
            }
            built += 1;
        }
        Ok(format!(
            "{built} witnesses constructed and verified, zero failures"
        ))
    });
}

#[test]
fn criterion_06_p_power_valuation_identity() {
    common::criterion("C6 p-power valuation identity", MIN, || {
        let mut checks = 0;
        for p in [3u64, 5] {
            for t in [2u32, 3] {
                for ell in [1u32, 2] {
                    // F = x - 1 + p^ell
                    let f = IntPoly::from_i64(&[(p.pow(ell) as i64) - 1, 1]);
                    let prof = measure(&f, p, t);
                    let (vp, _) = p_valuation(&prof.measure, p);
                    if vp != t + ell {
                        return Err(format!(
                            "p={p} t={t} ell={ell}: v_p = {vp}, want {}",
                            t + ell
                        ));
                    }
                    if p == 3 && t == 2 && ell == 1 && prof.measure != BigInt::from(513) {
                        return Err(format!("M_9(x+2) = {} != 513", prof.measure));
                    }
                    checks += 1;
                }
            }
        }
        Ok(format!(
            "{checks} exact valuation checks, including M_9(x+2) = 513"
        ))
    });
}

#[test]
fn criterion_07_descent_property() {
    common::criterion("C7 descent property", 15 * MIN, || {
        let mut rng = ChaCha8Rng::seed_from_u64(0x5EED_DE5C);
        let polys: Vec<IntPoly> = (0..1000)
            .map(|_| {
                let deg = (rng.next_u64() % 31) as usize;
                let coeffs: Vec<i64> = (0..=deg)
                    .map(|_| (rng.next_u64() % 19) as i64 - 9)
                    .collect();
                IntPoly::from_i64(&coeffs)
            })
            .collect();
        let failures: Vec<String> = polys
            .par_iter()
            .flat_map(|f| {
                let mut errs = Vec::new();
                if f.is_zero() {
                    return errs;
                }
                for p in [3u64, 5] {
                    let g = pth_power_reduce(f, p);
                    if g.eval_at_one() != f.eval_at_one() * norm(f, p, 1) {
                        errs.push(format!("g(1) contract failed for {f} (p={p})"));
                    }
                    for t in [2u32, 3] {
                        for i in 2..=t {
                            if norm(f, p, i) != norm(&g, p, i - 1) {
                                errs.push(format!(
                                    "N_{i}(F) != N_{}(g) for {f} (p={p}, t={t})",
                                    i - 1
                                ));
                            }
                        }
                    }
                    if p == 3 && g != pth_power_reduce_cubic(f) {
                        errs.push(format!("explicit cubic route disagrees for {f}"));
                    }
                }
                errs
            })
            .collect();
        if let Some(first) = failures.first() {
            return Err(format!("{} failures, first: {first}", failures.len()));
        }
        Ok("1000 random polynomials, both descent routes, zero failures".to_string())
    });
}

#[test]
fn criterion_08_exclusion_probes() {
    common::criterion("C8 exclusion probes", 30 * MIN, || {
        // no measure +/- 5^3 over {-1,0,1}, deg <= 12, F(1) = +/-5
        let spec = SearchSpec::new(5, 2, &[-1, 0, 1], 12).with_f1(&[5, -5]);
        let report = exclusion_probe(5, 2, 3, &spec).map_err(|e| e.to_string())?;
        if !report.hits.is_empty() {
            return Err(format!("Z_25 probe found {:?}", report.hits));
        }
        if report.nearest_m != Some(BigInt::from(11)) {
            return Err(format!(
                "Z_25 nearest cofactor {:?}, expected 11",
                report.nearest_m
            ));
        }
        let z25_visited = report.visited;
        // no +/- 3^4 or 3^5 over {0,1}, deg <= 14 (F(1) must be a power of
        // 3 for a pure p-power measure, so 0 and 15 need no enumeration)
        let spec = SearchSpec::new(3, 3, &[0, 1], 14).with_f1(&[1, 3, 9]);
        let mut visited = 0;
        for j in [4u32, 5] {
            let report = exclusion_probe(3, 3, j, &spec).map_err(|e| e.to_string())?;
            if !report.hits.is_empty() {
                return Err(format!("Z_27 probe j={j} found {:?}", report.hits));
            }
            visited += report.visited;
        }
        Ok(format!(
            "no +/-5^3 among {z25_visited} Z_25 leaves; no +/-3^4, +/-3^5 among {visited} Z_27 leaves"
        ))
    });
}

/// Build a corpus through the persistence path: enumerate to a JSON-lines
/// file, then load it back with per-record re-verification.
fn build_corpus(spec: &SearchSpec, name: &str) -> Vec<MeasureRecord> {
    use std::io::Write;
    let mut path = std::env::temp_dir();
    path.push(format!(
        "circdet-accept-{}-{name}.jsonl",
        std::process::id()
    ));
    let mut file = std::io::BufWriter::new(std::fs::File::create(&path).expect("temp file"));
    let mut sink = |r: MeasureRecord| {
        writeln!(file, "{}", serde_json::to_string(&r)?)?;
        Ok(())
    };
    let outcome = enumerate_measures(spec, None, &mut sink).expect("enumeration");
    assert!(outcome.complete);
    drop(file);
    let reader = std::io::BufReader::new(std::fs::File::open(&path).expect("reopen"));
    let records =
        circdet_core::search::read_records(reader, spec.p, spec.t).expect("records re-verify");
    std::fs::remove_file(&path).ok();
    records
}

#[test]
fn criterion_09_corpus_audit_clean() {
    common::criterion("C9 corpus audit", 30 * MIN, || {
        // the desk-scale default corpora, shipped through the JSONL format
        let z25 = build_corpus(&SearchSpec::new(5, 2, &[-1, 0, 1], 12).with_f1(&[5]), "z25");
        let z27 = build_corpus(&SearchSpec::new(3, 3, &[0, 1], 16).with_f1(&[3, 9]), "z27");
        let mut summary = Vec::new();
        for (records, p, t, n) in [(&z25, 5u64, 2u32, 25u64), (&z27, 3, 3, 27)] {
            let report = circdet_core::audit::corpus_audit(records, p, t, 4_000_000);
            if !report.is_clean() {
                return Err(format!(
                    "Z_{n} corpus: {} violations, first {:?}",
                    report.violations.len(),
                    report.violations.first()
                ));
            }
            // membership must agree with every attained measure
            let distinct: BTreeSet<BigInt> =
                records.iter().map(|r| r.profile.measure.clone()).collect();
            let contradictions: Vec<String> = distinct
                .par_iter()
                .filter_map(|measure| {
                    let verdict = match n {
                        25 => member_z25(measure),
                        _ => member_z27(measure),
                    };
                    match verdict {
                        Ok(v) if v.decision == Decision::Member => None,
                        Ok(_) => Some(format!("{measure} judged NonMember yet attained")),
                        // factoring failures cannot contradict; count none
                        Err(_) => None,
                    }
                })
                .collect();
            if let Some(first) = contradictions.first() {
                return Err(format!("Z_{n}: {first}"));
            }
            summary.push(format!(
                "Z_{n}: {} records, {} qualifying-checked, {} unknown, {} distinct measures all Member",
                report.records,
                report.qualifying_checked,
                report.unknown,
                distinct.len()
            ));
        }
        Ok(summary.join("; "))
    });
}

#[test]
fn criterion_10_newman_unit_fuzz() {
    common::criterion("C10 unit-criterion fuzz", 15 * MIN, || {
        for (p, i) in [(5u64, 1u32), (3, 1), (3, 2)] {
            let idx = CycloIndex::new(p, i).expect("supported ring");
            let violations = newman_unit_probe(idx, 10_000, 0xA11CE).map_err(|e| e.to_string())?;
            if !violations.is_empty() {
                return Err(format!(
                    "ring ({p},{i}): {} violations, first {:?}",
                    violations.len(),
                    violations.first()
                ));
            }
        }
        Ok("3 rings x 10^4 seeded unit pairs, zero odd non-p-power valuations".to_string())
    });
}
