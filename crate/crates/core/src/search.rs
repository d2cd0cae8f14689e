//! Desk-scale exhaustive searches over coefficient boxes.
//!
//! Coefficient vectors are enumerated in lexicographic order with
//! branch-and-bound pruning on the reachable F(1); a conservative floating
//! screen discards candidates whose measure provably misses the valuation
//! window, and everything emitted is re-verified with exact resultants.
//! Sharding is by coefficient prefix: shard s of k owns the prefixes whose
//! mixed-radix rank is s mod k, which partitions the space and keeps the
//! output of a fixed (spec, shard) pair byte-identical run over run.

use crate::arith::p_valuation;
use crate::error::{Error, Result};
use crate::measure::{measure, norm, NormProfile};
use crate::poly::IntPoly;
use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};
use serde::{Deserialize, Serialize};

/// Residue-class coefficient-sum constraints: the coefficients at indices
/// congruent to r mod `modulus` must sum to `sums[r]`. With modulus p^s this
/// pins F mod x^(p^s) - 1 and hence the norms N_1..N_s by construction.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Strata {
    pub modulus: usize,
    pub sums: Vec<i64>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SearchSpec {
    pub p: u64,
    pub t: u32,
    /// Allowed coefficient values, e.g. [-1, 0, 1] or [0, 1].
    pub coeffs: Vec<i64>,
    pub max_degree: usize,
    /// Allowed values of F(1); None leaves F(1) unconstrained.
    pub f1_targets: Option<Vec<i64>>,
    pub strata: Option<Strata>,
    /// Valuation window [vp_min, vp_max] on v_p(measure); zero measures are
    /// never emitted.
    pub vp_min: Option<u32>,
    pub vp_max: Option<u32>,
    pub shard_index: u64,
    pub shard_count: u64,
    /// Leaf-visit budget; the search stops at a prefix boundary once spent.
    pub budget: Option<u64>,
    pub screen: bool,
}

impl SearchSpec {
    pub fn new(p: u64, t: u32, coeffs: &[i64], max_degree: usize) -> Self {
        let mut c = coeffs.to_vec();
        c.sort_unstable();
        c.dedup();
        SearchSpec {
            p,
            t,
            coeffs: c,
            max_degree,
            f1_targets: None,
            strata: None,
            vp_min: None,
            vp_max: None,
            shard_index: 0,
            shard_count: 1,
            budget: None,
            screen: true,
        }
    }

    pub fn with_f1(mut self, targets: &[i64]) -> Self {
        self.f1_targets = Some(targets.to_vec());
        self
    }

    pub fn with_window(mut self, lo: Option<u32>, hi: Option<u32>) -> Self {
        self.vp_min = lo;
        self.vp_max = hi;
        self
    }

    pub fn with_shard(mut self, index: u64, count: u64) -> Self {
        self.shard_index = index;
        self.shard_count = count;
        self
    }

    /// Stable hash over the fields that define the output stream; manifests
    /// carry it so a resume never silently continues a different search.
    /// Budget and screening are runtime policy and change nothing emitted,
    /// so they stay out of the hash.
    pub fn hash(&self) -> String {
        let content = serde_json::json!([
            self.p,
            self.t,
            self.coeffs,
            self.max_degree,
            self.f1_targets,
            self.strata,
            self.vp_min,
            self.vp_max,
            self.shard_index,
            self.shard_count,
        ]);
        format!("{:016x}", fnv1a64(content.to_string().as_bytes()))
    }
}

fn fnv1a64(bytes: &[u8]) -> u64 {
    let mut h = 0xcbf2_9ce4_8422_2325u64;
    for &b in bytes {
        h ^= b as u64;
        h = h.wrapping_mul(0x0000_0100_0000_01b3);
    }
    h
}

/// One emitted search result; `m` is the p-free cofactor of the measure.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct MeasureRecord {
    pub coeffs: IntPoly,
    pub profile: NormProfile,
    pub vp: u32,
    #[serde(with = "crate::serde_bigint")]
    pub m: BigInt,
    #[serde(with = "crate::serde_bigint_vec")]
    pub hints: Vec<BigInt>,
}

impl MeasureRecord {
    /// Recompute the profile from the polynomial; loaders call this so a
    /// corrupt corpus cannot pass an audit.
    pub fn re_verify(&self, p: u64, t: u32) -> bool {
        let fresh = measure(&self.coeffs, p, t);
        if fresh != self.profile || self.profile.measure.is_zero() {
            return false;
        }
        let (vp, m) = p_valuation(&self.profile.measure, p);
        vp == self.vp && m == self.m
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ShardManifest {
    pub spec_hash: String,
    pub shard_index: u64,
    pub shard_count: u64,
    pub prefix_len: u32,
    /// First prefix rank not yet processed.
    pub next_rank: u64,
    pub complete: bool,
    pub emitted: u64,
}

#[derive(Clone, Debug)]
pub struct SearchOutcome {
    pub visited: u64,
    pub emitted: u64,
    pub complete: bool,
    pub manifest: ShardManifest,
}

/// Find small prime divisors of |m| cheaply; full factoring is the
/// auditor's job.
fn factor_hints(m: &BigInt) -> Vec<BigInt> {
    let mut out = Vec::new();
    let mut rest = m.magnitude().clone();
    for p in crate::arith::primes_below(10_000) {
        let pb = num_bigint::BigUint::from(p);
        if (&rest % &pb).is_zero() {
            out.push(BigInt::from(p));
            while (&rest % &pb).is_zero() {
                rest /= &pb;
            }
        }
    }
    out
}

/// Conservative float screen: returns the measure only when a rigorous
/// interval pins a single integer; None means "cannot tell, go exact".
fn screen_measure(coeffs: &[i64], f1: i64, p: u64, t: u32) -> Option<BigInt> {
    let n = p.pow(t);
    let s: f64 = coeffs.iter().map(|&c| c.abs() as f64).sum();
    if s == 0.0 {
        return Some(BigInt::zero());
    }
    // generous per-evaluation error bound for degree <= 64, |coeffs| small
    let eval_err = (coeffs.len() as f64) * s * 2f64.powi(-48) + 1e-12;
    let tau = std::f64::consts::TAU;
    let mut lo = 1.0f64;
    let mut hi = 1.0f64;
    for j in 1..=(n - 1) / 2 {
        let theta = tau * j as f64 / n as f64;
        let (mut re, mut im) = (0.0f64, 0.0f64);
        for (k, &c) in coeffs.iter().enumerate() {
            if c != 0 {
                let a = theta * k as f64;
                re += c as f64 * a.cos();
                im += c as f64 * a.sin();
            }
        }
        let mag2 = re * re + im * im;
        let err = 2.0 * (re.abs() + im.abs()) * eval_err + 2.0 * eval_err * eval_err;
        lo *= (mag2 - err).max(0.0);
        hi *= mag2 + err;
        if !hi.is_finite() {
            return None;
        }
    }
    let f1a = f1.unsigned_abs() as f64;
    lo *= f1a * (1.0 - 1e-9);
    hi *= f1a * (1.0 + 1e-9);
    if hi >= 2f64.powi(51) {
        return None;
    }
    let lo_int = (lo - 0.25).ceil() as i64;
    let hi_int = (hi + 0.25).floor() as i64;
    if lo_int != hi_int {
        return None;
    }
    let mag = BigInt::from(lo_int);
    Some(if f1 < 0 { -mag } else { mag })
}

struct Enumerator<'a> {
    spec: &'a SearchSpec,
    prefix_len: usize,
    resume_from: u64,
    visited: u64,
    emitted: u64,
    coeffs: Vec<i64>,
    class_sums: Vec<i64>,
    stopped_at: Option<u64>,
    sink: &'a mut dyn FnMut(MeasureRecord) -> Result<()>,
}

impl<'a> Enumerator<'a> {
    /// Reachable-final-sum window for pruning.
    fn sum_feasible(&self, pos: usize, running: i64) -> bool {
        let left = (self.spec.max_degree - pos) as i64;
        let (min_c, max_c) = (
            *self.spec.coeffs.first().unwrap(),
            *self.spec.coeffs.last().unwrap(),
        );
        let lo = running + left * min_c;
        let hi = running + left * max_c;
        match &self.spec.f1_targets {
            None => true,
            Some(ts) => ts.iter().any(|&t| lo <= t && t <= hi),
        }
    }

    fn class_feasible(&self, pos: usize) -> bool {
        let Some(strata) = &self.spec.strata else {
            return true;
        };
        let r = pos % strata.modulus;
        let (min_c, max_c) = (
            *self.spec.coeffs.first().unwrap(),
            *self.spec.coeffs.last().unwrap(),
        );
        // future positions in class r strictly beyond pos
        let mut left = 0i64;
        let mut k = pos + strata.modulus;
        while k <= self.spec.max_degree {
            left += 1;
            k += strata.modulus;
        }
        let cur = self.class_sums[r];
        cur + left * min_c <= strata.sums[r] && strata.sums[r] <= cur + left * max_c
    }

    fn run(&mut self, pos: usize, running: i64, rank: u64) -> Result<()> {
        if self.stopped_at.is_some() {
            return Ok(());
        }
        if pos == self.prefix_len {
            if rank % self.spec.shard_count != self.spec.shard_index {
                return Ok(());
            }
            if rank < self.resume_from {
                return Ok(());
            }
            if let Some(budget) = self.spec.budget {
                if self.visited >= budget {
                    self.stopped_at = Some(rank);
                    return Ok(());
                }
            }
        }
        if pos > self.spec.max_degree {
            return self.leaf(running);
        }
        for (ci, &c) in self.spec.coeffs.iter().enumerate() {
            self.coeffs[pos] = c;
            let next_running = running + c;
            let next_rank = if pos < self.prefix_len {
                rank * self.spec.coeffs.len() as u64 + ci as u64
            } else {
                rank
            };
            if let Some(strata) = &self.spec.strata {
                let r = pos % strata.modulus;
                self.class_sums[r] += c;
            }
            if self.sum_feasible(pos, next_running) && self.class_feasible(pos) {
                self.run(pos + 1, next_running, next_rank)?;
            }
            if let Some(strata) = &self.spec.strata {
                let r = pos % strata.modulus;
                self.class_sums[r] -= c;
            }
            if self.stopped_at.is_some() {
                break;
            }
        }
        Ok(())
    }

    fn leaf(&mut self, f1: i64) -> Result<()> {
        self.visited += 1;
        if let Some(ts) = &self.spec.f1_targets {
            if !ts.contains(&f1) {
                return Ok(());
            }
        }
        if let Some(strata) = &self.spec.strata {
            if self.class_sums != strata.sums {
                return Ok(());
            }
        }
        let spec = self.spec;
        let in_window = |vp: u32| {
            spec.vp_min.is_none_or(|lo| vp >= lo) && spec.vp_max.is_none_or(|hi| vp <= hi)
        };
        if spec.screen {
            if let Some(val) = screen_measure(&self.coeffs, f1, spec.p, spec.t) {
                if val.is_zero() {
                    return Ok(());
                }
                let (vp, _) = p_valuation(&val, spec.p);
                if !in_window(vp) {
                    return Ok(());
                }
                // fall through to the exact path: emission always re-verifies
            }
        }
        let poly = IntPoly::from_i64(&self.coeffs);
        let profile = measure(&poly, spec.p, spec.t);
        if profile.measure.is_zero() {
            return Ok(());
        }
        let (vp, m) = p_valuation(&profile.measure, spec.p);
        if !in_window(vp) {
            return Ok(());
        }
        let hints = factor_hints(&m);
        self.emitted += 1;
        (self.sink)(MeasureRecord {
            coeffs: poly,
            profile,
            vp,
            m,
            hints,
        })
    }
}

/// Checkpoint depth: deep enough to cover the shard count and to give
/// budgeted runs around 256 resume points. A fixed property of the search
/// space, never of the runtime policy, so resume ranks always line up.
fn prefix_len_for(spec: &SearchSpec) -> usize {
    let base = spec.coeffs.len() as u64;
    if base <= 1 {
        return 0;
    }
    let target = spec.shard_count.max(256);
    let mut len = 0usize;
    let mut cover = 1u64;
    while cover < target && len < spec.max_degree + 1 {
        cover = cover.saturating_mul(base);
        len += 1;
    }
    len
}

/// Visit every polynomial in the spec exactly once (restricted to the
/// shard), emitting records for measures inside the valuation window.
/// `resume_from` skips prefixes below the recorded rank.
pub fn enumerate_measures(
    spec: &SearchSpec,
    resume_from: Option<u64>,
    sink: &mut dyn FnMut(MeasureRecord) -> Result<()>,
) -> Result<SearchOutcome> {
    if spec.coeffs.is_empty() {
        return Err(Error::InvalidInput("empty coefficient set".to_string()));
    }
    if spec.shard_count == 0 || spec.shard_index >= spec.shard_count {
        return Err(Error::InvalidInput(format!(
            "bad shard {}/{}",
            spec.shard_index, spec.shard_count
        )));
    }
    if let Some(strata) = &spec.strata {
        if strata.sums.len() != strata.modulus || strata.modulus == 0 {
            return Err(Error::InfeasibleStrata(
                "sums length must equal the modulus".to_string(),
            ));
        }
        let total: i64 = strata.sums.iter().sum();
        if let Some(ts) = &spec.f1_targets {
            if !ts.contains(&total) {
                return Err(Error::InfeasibleStrata(format!(
                    "class sums force F(1) = {total}, outside the F(1) targets"
                )));
            }
        }
    }
    let prefix_len = prefix_len_for(spec);
    let class_len = spec.strata.as_ref().map_or(1, |s| s.modulus);
    let mut en = Enumerator {
        spec,
        prefix_len,
        resume_from: resume_from.unwrap_or(0),
        visited: 0,
        emitted: 0,
        coeffs: vec![0; spec.max_degree + 1],
        class_sums: vec![0; class_len],
        stopped_at: None,
        sink,
    };
    en.run(0, 0, 0)?;
    let complete = en.stopped_at.is_none();
    let next_rank = en
        .stopped_at
        .unwrap_or_else(|| (spec.coeffs.len() as u64).saturating_pow(prefix_len as u32));
    Ok(SearchOutcome {
        visited: en.visited,
        emitted: en.emitted,
        complete,
        manifest: ShardManifest {
            spec_hash: spec.hash(),
            shard_index: spec.shard_index,
            shard_count: spec.shard_count,
            prefix_len: prefix_len as u32,
            next_rank,
            complete,
            emitted: en.emitted,
        },
    })
}

/// Enumerate under residue-class sum constraints and assert the pinned
/// norms on every record: with modulus p^s, each emitted F must reproduce
/// N_k of the class-sum polynomial for k = 1..s.
pub fn stratified_family_search(
    spec: &SearchSpec,
    sink: &mut dyn FnMut(MeasureRecord) -> Result<()>,
) -> Result<SearchOutcome> {
    let strata = spec
        .strata
        .as_ref()
        .ok_or_else(|| Error::InfeasibleStrata("missing strata".to_string()))?;
    let g = IntPoly::from_i64(&strata.sums);
    let mut pinned = Vec::new();
    let mut pk = spec.p as usize;
    let mut k = 1u32;
    while strata.modulus % pk == 0 {
        pinned.push((k, norm(&g, spec.p, k)));
        pk *= spec.p as usize;
        k += 1;
    }
    let mut checked_sink = |rec: MeasureRecord| -> Result<()> {
        for (k, want) in &pinned {
            let got = &rec.profile.norms[*k as usize - 1];
            if got != want {
                return Err(Error::Internal(format!(
                    "stratum pin broken: N_{k}({}) = {got}, expected {want}",
                    rec.coeffs
                )));
            }
        }
        sink(rec)
    };
    enumerate_measures(spec, None, &mut checked_sink)
}

/// The quadratic base stratum: nonnegative c0 + c1 x + c2 x^2 with
/// c0+c1+c2 = f1 and N_1 = pinned over p.
pub fn quadratic_stratum_solutions(p: u64, f1: i64, pinned_n1: &BigInt) -> Vec<[i64; 3]> {
    let mut out = Vec::new();
    for c0 in 0..=f1 {
        for c1 in 0..=f1 - c0 {
            let c2 = f1 - c0 - c1;
            let f = IntPoly::from_i64(&[c0, c1, c2]);
            if &norm(&f, p, 1) == pinned_n1 {
                out.push([c0, c1, c2]);
            }
        }
    }
    out
}

/// Deterministic samples from a {0,1} family matching the strata: for each
/// residue class pick `sums[r]` of its slots.
pub fn sample_stratified(
    strata: &Strata,
    max_degree: usize,
    count: usize,
    seed: u64,
) -> Vec<IntPoly> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(count);
    for _ in 0..count {
        let mut coeffs = vec![0i64; max_degree + 1];
        for (r, &need) in strata.sums.iter().enumerate() {
            let slots: Vec<usize> = (r..=max_degree).step_by(strata.modulus).collect();
            assert!(need >= 0 && (need as usize) <= slots.len());
            // Fisher-Yates prefix
            let mut slots = slots;
            for i in 0..need as usize {
                let j = i + (rng.next_u64() as usize) % (slots.len() - i);
                slots.swap(i, j);
                coeffs[slots[i]] = 1;
            }
        }
        out.push(IntPoly::from_i64(&coeffs));
    }
    out
}

#[derive(Clone, Debug)]
pub struct ProbeReport {
    pub p: u64,
    pub t: u32,
    pub j: u32,
    /// Polynomials attaining measure +/- p^j; expected empty.
    pub hits: Vec<IntPoly>,
    /// Smallest |m| attained among v_p = j records, with an example.
    pub nearest_m: Option<BigInt>,
    pub nearest_poly: Option<IntPoly>,
    pub visited: u64,
    pub emitted: u64,
}

/// Exhaustively verify that no F in the spec attains measure +/- p^j, and
/// report the nearest attained p^j * m.
pub fn exclusion_probe(p: u64, t: u32, j: u32, spec: &SearchSpec) -> Result<ProbeReport> {
    assert!(t < j && j < 2 * t, "j must sit in the window");
    let mut spec = spec.clone();
    spec.p = p;
    spec.t = t;
    spec.vp_min = Some(j);
    spec.vp_max = Some(j);
    let mut hits = Vec::new();
    let mut nearest: Option<(BigInt, IntPoly)> = None;
    let mut sink = |rec: MeasureRecord| -> Result<()> {
        let m_abs = rec.m.abs();
        if m_abs == BigInt::from(1) {
            hits.push(rec.coeffs.clone());
        }
        if nearest.as_ref().is_none_or(|(best, _)| m_abs < *best) {
            nearest = Some((m_abs, rec.coeffs.clone()));
        }
        Ok(())
    };
    let outcome = enumerate_measures(&spec, None, &mut sink)?;
    if !outcome.complete {
        return Err(Error::BudgetExceeded {
            resume_rank: outcome.manifest.next_rank,
        });
    }
    let (nearest_m, nearest_poly) = match nearest {
        Some((m, f)) => (Some(m), Some(f)),
        None => (None, None),
    };
    Ok(ProbeReport {
        p,
        t,
        j,
        hits,
        nearest_m,
        nearest_poly,
        visited: outcome.visited,
        emitted: outcome.emitted,
    })
}

/// Parse a JSON-lines corpus, re-verifying every record against (p, t).
pub fn read_records<R: std::io::BufRead>(reader: R, p: u64, t: u32) -> Result<Vec<MeasureRecord>> {
    let mut out = Vec::new();
    for (lineno, line) in reader.lines().enumerate() {
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        let rec: MeasureRecord = serde_json::from_str(&line)?;
        if !rec.re_verify(p, t) {
            return Err(Error::InvalidInput(format!(
                "record on line {} fails re-verification",
                lineno + 1
            )));
        }
        out.push(rec);
    }
    Ok(out)
}
