//! circdet: classify primes, decide membership, build witnesses, and run
//! desk-scale searches for integral circulant determinants of odd
//! prime-power order. Output is JSON-lines by default (`--csv` for flat
//! tables); all big integers are printed as decimal strings.

use circdet_core::classify::{
    binary_form_test, classify_mod3, classify_mod5, classify_mod9, cubic_residue_test,
    dickson_artiad_test, fibonacci_artiad_test, jacobi_artiad_test, quintic_residue_test,
    TypeVerdict,
};
use circdet_core::membership::{
    base_membership, divisibility_check, general_exclusion_check_with_budget,
    member_z25_with_budget, member_z27_with_budget, CheckStatus, Decision, MemberReason,
    DEFAULT_RHO_BUDGET,
};
use circdet_core::search::{
    enumerate_measures, read_records, sample_stratified, MeasureRecord, SearchSpec, ShardManifest,
    Strata,
};
use circdet_core::tables::{tables, TableContext};
use circdet_core::witness::{
    verify_witness, witness_3p4, witness_3p5_mod3, witness_3p5_type3, witness_5cubed, WitnessPlan,
};
use circdet_core::{Error, IntPoly};
use clap::{Args, Parser, Subcommand};
use num_bigint::BigInt;
use serde_json::{json, Value};
use std::fs::File;
use std::io::{BufReader, BufWriter, Write};
use std::path::PathBuf;
use std::str::FromStr;

#[derive(Parser)]
#[command(
    name = "circdet",
    version,
    about = "integral circulant determinants of odd prime-power order"
)]
struct Cli {
    /// Emit CSV instead of JSON lines
    #[arg(long, global = true)]
    csv: bool,
    /// Worker threads for tables and search (default: all cores)
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Seed for sampled searches
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Budget: search node limit / factoring effort, depending on command
    #[arg(long, global = true)]
    budget: Option<u64>,
    /// Exit 1 on negative verdicts (NonMember, TypeMismatch, audit hits)
    #[arg(long, global = true)]
    strict: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Classify primes (perissad/artiad for p=5, Types 1-4 for p=3)
    Classify(ClassifyArgs),
    /// Decide membership in S(Z_25) / S(Z_27), or run the general check
    Member(MemberArgs),
    /// Construct and verify a witness polynomial
    Witness(WitnessArgs),
    /// Enumerate measures over a coefficient box
    Search(SearchArgs),
    /// Audit a JSON-lines corpus
    Audit(AuditArgs),
    /// Classification tables below a bound
    Tables(TablesArgs),
}

#[derive(Args)]
struct ClassifyArgs {
    /// Base prime: 3 or 5
    #[arg(long)]
    p: u64,
    /// Single prime to classify
    #[arg(long)]
    q: Option<u64>,
    /// Classify all qualifying primes below this bound
    #[arg(long)]
    below: Option<u64>,
    /// Skip the cross-validation oracles (reduction certificate only)
    #[arg(long)]
    no_oracles: bool,
}

#[derive(Args)]
struct MemberArgs {
    /// Group order 25 or 27 (exact decision)
    #[arg(long, conflicts_with_all = ["p", "t"])]
    n: Option<u64>,
    /// Prime for the general necessary-condition check
    #[arg(long, requires = "t")]
    p: Option<u64>,
    /// Level for the general necessary-condition check
    #[arg(long, requires = "p")]
    t: Option<u32>,
    /// The integer to decide (decimal, optional sign)
    #[arg(allow_hyphen_values = true)]
    value: String,
}

#[derive(Args)]
struct WitnessArgs {
    /// Group order 25 or 27
    #[arg(long)]
    n: u64,
    /// Target determinant value (decimal, optional sign)
    #[arg(long, allow_hyphen_values = true)]
    target: Option<String>,
    /// Base prime q (alternative to --target)
    #[arg(long)]
    q: Option<u64>,
    /// For n=27 with --q: the power of 3, 4 or 5
    #[arg(long)]
    level: Option<u32>,
    /// Verify a given polynomial (canonical coefficient form) against --target
    #[arg(long)]
    check: Option<String>,
}

#[derive(Args)]
struct SearchArgs {
    #[arg(long)]
    p: u64,
    #[arg(long)]
    t: u32,
    /// Coefficient set, e.g. "-1,0,1"
    #[arg(long, allow_hyphen_values = true, default_value = "-1,0,1")]
    coeffs: String,
    #[arg(long)]
    max_degree: usize,
    /// Allowed F(1) values, e.g. "5" or "3,9"
    #[arg(long, allow_hyphen_values = true)]
    f1: Option<String>,
    /// Valuation window "lo:" or "lo:hi"
    #[arg(long)]
    vp_window: Option<String>,
    /// Shard "i/k"
    #[arg(long)]
    shard: Option<String>,
    /// Write records here (stdout if omitted); the manifest goes next to it
    #[arg(long)]
    out: Option<PathBuf>,
    /// Resume from a manifest written by an earlier budgeted run
    #[arg(long)]
    resume: Option<PathBuf>,
    /// Residue-class sum constraints: modulus for --strata-sums
    #[arg(long)]
    strata_mod: Option<usize>,
    /// Comma-separated class sums, length = --strata-mod
    #[arg(long, allow_hyphen_values = true)]
    strata_sums: Option<String>,
    /// Sample N random {0,1} members of the strata family instead of
    /// enumerating (uses --seed)
    #[arg(long)]
    sample: Option<usize>,
    /// Disable the conservative float screen
    #[arg(long)]
    no_screen: bool,
}

#[derive(Args)]
struct AuditArgs {
    #[arg(long)]
    p: u64,
    #[arg(long)]
    t: u32,
    /// JSON-lines corpus files
    files: Vec<PathBuf>,
}

#[derive(Args)]
struct TablesArgs {
    /// mod5 | mod9 | mod4mod9 | mod7mod9
    #[arg(long)]
    context: String,
    #[arg(long)]
    bound: u64,
}

fn main() {
    let cli = Cli::parse();
    if let Some(n) = cli.threads {
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global();
    }
    let code = match run(&cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            2
        }
    };
    std::process::exit(code);
}

fn parse_bigint(s: &str) -> Result<BigInt, Error> {
    BigInt::from_str(s).map_err(|_| Error::InvalidInput(format!("bad integer {s}")))
}

fn emit(csv: bool, json_line: Value, csv_line: String) {
    if csv {
        println!("{csv_line}");
    } else {
        println!("{json_line}");
    }
}

fn run(cli: &Cli) -> Result<i32, Error> {
    match &cli.command {
        Command::Classify(args) => classify_cmd(cli, args),
        Command::Member(args) => member_cmd(cli, args),
        Command::Witness(args) => witness_cmd(cli, args),
        Command::Search(args) => search_cmd(cli, args),
        Command::Audit(args) => audit_cmd(cli, args),
        Command::Tables(args) => tables_cmd(cli, args),
    }
}

fn reduction_json(v: &TypeVerdict) -> Value {
    json!({
        "I": v.reduction.exp_x,
        "J": v.reduction.exp_one_plus_x,
        "K": v.reduction.exp_aux,
        "sign": v.reduction.sign,
        "digits": v.reduction.digits,
        "key_digit": v.reduction.key_digit,
    })
}

fn classify_one(p: u64, q: u64, with_oracles: bool) -> Result<Vec<(Value, String)>, Error> {
    let mut out = Vec::new();
    match p {
        5 => {
            let v = classify_mod5(q)?;
            let mut certs = json!({ "reduction": reduction_json(&v) });
            if with_oracles {
                let (fib, _) = fibonacci_artiad_test(q)?;
                let quintic = quintic_residue_test(q)?;
                let (dickson, dc) = dickson_artiad_test(q)?;
                certs["fibonacci"] = json!(fib);
                certs["quintic"] = json!(quintic);
                certs["dickson"] =
                    json!({"x": dc.x, "u": dc.u, "v": dc.v, "w": dc.w, "artiad": dickson});
                if let Ok((jac, jc)) = jacobi_artiad_test(q) {
                    certs["jacobi"] = json!({
                        "q0": jc.q_coeffs[0], "q1": jc.q_coeffs[1], "q2": jc.q_coeffs[2],
                        "q3": jc.q_coeffs[3], "q4": jc.q_coeffs[4],
                        "primitive_root": jc.primitive_root, "artiad": jac,
                    });
                }
            }
            let label = v.label_str();
            out.push((
                json!({"q": q, "context": "mod5", "label": label, "certificates": certs}),
                format!("{q},mod5,{label}"),
            ));
        }
        3 => {
            let v3 = classify_mod3(q)?;
            let mut certs = json!({ "reduction": reduction_json(&v3) });
            if with_oracles {
                certs["binary_form"] = json!(binary_form_test(q)?);
                certs["cubic_residue"] = json!(cubic_residue_test(q)?);
            }
            let label = v3.label_str();
            out.push((
                json!({"q": q, "context": "mod3", "label": label, "certificates": certs}),
                format!("{q},mod3,{label}"),
            ));
            if q % 9 == 1 {
                let v9 = classify_mod9(q)?;
                let label = v9.label_str();
                out.push((
                    json!({
                        "q": q, "context": "mod9", "label": label,
                        "certificates": { "reduction": reduction_json(&v9) },
                    }),
                    format!("{q},mod9,{label}"),
                ));
            }
        }
        _ => {
            return Err(Error::InvalidInput(format!(
                "classification is defined for p = 3 and 5, not {p}"
            )))
        }
    }
    Ok(out)
}

fn classify_cmd(cli: &Cli, args: &ClassifyArgs) -> Result<i32, Error> {
    let qs: Vec<u64> = match (args.q, args.below) {
        (Some(q), None) => vec![q],
        (None, Some(bound)) => {
            let modulus = if args.p == 5 { 5 } else { 3 };
            circdet_core::arith::primes_below(bound)
                .into_iter()
                .filter(|&q| q % modulus == 1)
                .collect()
        }
        _ => {
            return Err(Error::InvalidInput(
                "pass exactly one of --q or --below".to_string(),
            ))
        }
    };
    if cli.csv {
        println!("q,context,label");
    }
    for q in qs {
        for (j, c) in classify_one(args.p, q, !args.no_oracles)? {
            emit(cli.csv, j, c);
        }
    }
    Ok(0)
}

fn reason_json(reason: &MemberReason) -> Value {
    match reason {
        MemberReason::Coprime => json!({"kind": "coprime"}),
        MemberReason::HighPower { valuation } => {
            json!({"kind": "high-power", "valuation": valuation})
        }
        MemberReason::QualifyingPrime { q, verdict } => json!({
            "kind": "qualifying-prime",
            "q": q,
            "context": verdict.context.to_string(),
            "label": verdict.label_str(),
            "reduction": reduction_json(verdict),
        }),
        MemberReason::ExcludedValuation { valuation } => {
            json!({"kind": "excluded-valuation", "valuation": valuation})
        }
        MemberReason::NoQualifyingPrime { factors } => json!({
            "kind": "no-qualifying-prime",
            "factors": factors.iter().map(|(p, e)| json!([p.to_string(), e])).collect::<Vec<_>>(),
        }),
    }
}

fn member_cmd(cli: &Cli, args: &MemberArgs) -> Result<i32, Error> {
    let value = parse_bigint(&args.value)?;
    let budget = cli.budget.unwrap_or(DEFAULT_RHO_BUDGET);
    if let (Some(p), Some(t)) = (args.p, args.t) {
        let check = general_exclusion_check_with_budget(p, t, &value, budget)?;
        let status = match check.status {
            CheckStatus::Excluded => "Excluded",
            CheckStatus::NotExcluded => "NotExcluded",
        };
        let j = json!({
            "value": value.to_string(),
            "p": p, "t": t,
            "j": check.j,
            "status": status,
            "required": check.required.iter()
                .map(|s| json!({"i": s.i, "modulus": s.modulus})).collect::<Vec<_>>(),
            "assignment": check.assignment.iter()
                .map(|f| json!({"i": f.i, "q": f.q.to_string(), "a": f.a})).collect::<Vec<_>>(),
        });
        emit(cli.csv, j, format!("{value},{p}^{t},{status}"));
        return Ok(if cli.strict && check.status == CheckStatus::Excluded {
            1
        } else {
            0
        });
    }
    let n = args
        .n
        .ok_or_else(|| Error::InvalidInput("pass --n 25|27 or --p/--t".to_string()))?;
    let verdict = match n {
        25 => member_z25_with_budget(&value, budget)?,
        27 => member_z27_with_budget(&value, budget)?,
        _ => {
            // only the base facts apply for other orders
            match base_membership(n, &value).or_else(|| divisibility_check(n, &value)) {
                Some(v) => v,
                None => {
                    return Err(Error::NotApplicable(format!(
                        "no exact decision for n = {n}; base rules are inconclusive"
                    )))
                }
            }
        }
    };
    let decision = match verdict.decision {
        Decision::Member => "Member",
        Decision::NonMember => "NonMember",
    };
    let j = json!({
        "value": value.to_string(),
        "n": n,
        "decision": decision,
        "reason": reason_json(&verdict.reason),
    });
    emit(cli.csv, j, format!("{value},{n},{decision}"));
    Ok(if cli.strict && verdict.decision == Decision::NonMember {
        1
    } else {
        0
    })
}

fn plan_json(plan: &WitnessPlan) -> Value {
    json!({
        "target": plan.target.to_string(),
        "n": plan.p.pow(plan.t),
        "ell": plan.ell,
        "lambda": plan.lambda.to_string(),
        "coeffs": plan.witness.to_string(),
        "profile": {
            "f1": plan.profile.f_at_1.to_string(),
            "norms": plan.profile.norms.iter().map(|n| n.to_string()).collect::<Vec<_>>(),
            "measure": plan.profile.measure.to_string(),
        },
    })
}

fn witness_for_target(n: u64, target: &BigInt) -> Result<WitnessPlan, Error> {
    let verdict = match n {
        25 => member_z25_with_budget(target, DEFAULT_RHO_BUDGET)?,
        27 => member_z27_with_budget(target, DEFAULT_RHO_BUDGET)?,
        _ => return Err(Error::InvalidInput("supported orders: 25, 27".to_string())),
    };
    if verdict.decision == Decision::NonMember {
        return Err(Error::TypeMismatch(format!(
            "{target} is not a Z_{n} determinant"
        )));
    }
    match circdet_core::witness::realize_member(&verdict)? {
        Some(plan) => Ok(plan),
        None => Err(Error::NotApplicable(
            "target is attained by the coprime/high-power constructions; \
             no reduction-based witness is assembled for it"
                .to_string(),
        )),
    }
}

fn witness_cmd(cli: &Cli, args: &WitnessArgs) -> Result<i32, Error> {
    if let Some(poly) = &args.check {
        let f: IntPoly = poly
            .parse()
            .map_err(|e| Error::InvalidInput(format!("{e}")))?;
        let target = parse_bigint(
            args.target
                .as_deref()
                .ok_or_else(|| Error::InvalidInput("--check needs --target".to_string()))?,
        )?;
        let (p, t) = match args.n {
            25 => (5u64, 2u32),
            27 => (3, 3),
            _ => return Err(Error::InvalidInput("supported orders: 25, 27".to_string())),
        };
        let (ok, profile) = verify_witness(&f, p, t, &target);
        let j = json!({
            "coeffs": f.to_string(),
            "target": target.to_string(),
            "verified": ok,
            "profile": {
                "f1": profile.f_at_1.to_string(),
                "norms": profile.norms.iter().map(|n| n.to_string()).collect::<Vec<_>>(),
                "measure": profile.measure.to_string(),
            },
        });
        emit(cli.csv, j, format!("\"{f}\",{target},{ok}"));
        return Ok(if !ok && cli.strict { 1 } else { 0 });
    }
    let plan = match (&args.target, args.q) {
        (Some(t), None) => witness_for_target(args.n, &parse_bigint(t)?)?,
        (None, Some(q)) => match (args.n, args.level) {
            (25, None | Some(3)) => witness_5cubed(q)?,
            (27, Some(4)) => witness_3p4(q)?,
            (27, Some(5)) => {
                // prefer the mod-3 Type-1 route, fall back to Type 3
                match witness_3p5_mod3(q) {
                    Ok(plan) => plan,
                    Err(Error::TypeMismatch(_)) => witness_3p5_type3(q)?,
                    Err(e) => return Err(e),
                }
            }
            (27, None) => {
                return Err(Error::InvalidInput(
                    "--n 27 with --q needs --level 4 or 5".to_string(),
                ))
            }
            _ => return Err(Error::InvalidInput("supported orders: 25, 27".to_string())),
        },
        _ => {
            return Err(Error::InvalidInput(
                "pass exactly one of --target or --q".to_string(),
            ))
        }
    };
    let j = plan_json(&plan);
    let csv = format!(
        "{},{},\"{}\",{}",
        plan.target,
        plan.p.pow(plan.t),
        plan.witness,
        plan.profile.measure
    );
    emit(cli.csv, j, csv);
    Ok(0)
}

fn parse_i64_list(s: &str) -> Result<Vec<i64>, Error> {
    s.split(',')
        .map(|p| {
            p.trim()
                .parse::<i64>()
                .map_err(|_| Error::InvalidInput(format!("bad integer list {s}")))
        })
        .collect()
}

fn search_cmd(cli: &Cli, args: &SearchArgs) -> Result<i32, Error> {
    let mut spec = SearchSpec::new(
        args.p,
        args.t,
        &parse_i64_list(&args.coeffs)?,
        args.max_degree,
    );
    if let Some(f1) = &args.f1 {
        spec = spec.with_f1(&parse_i64_list(f1)?);
    }
    if let Some(win) = &args.vp_window {
        let (lo, hi) = win
            .split_once(':')
            .ok_or_else(|| Error::InvalidInput("window is lo: or lo:hi".to_string()))?;
        let parse = |s: &str| -> Result<Option<u32>, Error> {
            if s.is_empty() {
                Ok(None)
            } else {
                s.parse()
                    .map(Some)
                    .map_err(|_| Error::InvalidInput(format!("bad window bound {s}")))
            }
        };
        spec = spec.with_window(parse(lo)?, parse(hi)?);
    }
    if let Some(shard) = &args.shard {
        let (i, k) = shard
            .split_once('/')
            .ok_or_else(|| Error::InvalidInput("shard is i/k".to_string()))?;
        spec = spec.with_shard(
            i.parse()
                .map_err(|_| Error::InvalidInput("bad shard index".to_string()))?,
            k.parse()
                .map_err(|_| Error::InvalidInput("bad shard count".to_string()))?,
        );
    }
    if let (Some(m), Some(sums)) = (args.strata_mod, &args.strata_sums) {
        spec.strata = Some(Strata {
            modulus: m,
            sums: parse_i64_list(sums)?,
        });
    }
    spec.budget = cli.budget;
    spec.screen = !args.no_screen;

    // sampled strata mode: verified samples, no exhaustive enumeration
    if let Some(count) = args.sample {
        let strata = spec
            .strata
            .clone()
            .ok_or_else(|| Error::InvalidInput("--sample needs strata".to_string()))?;
        if cli.csv {
            println!("coeffs,f1,norms,measure,vp,m");
        }
        for f in sample_stratified(&strata, spec.max_degree, count, cli.seed) {
            let profile = circdet_core::measure::measure(&f, spec.p, spec.t);
            let (vp, m) = circdet_core::arith::p_valuation(&profile.measure, spec.p);
            let norms: Vec<String> = profile.norms.iter().map(|n| n.to_string()).collect();
            let j = json!({
                "coeffs": f.to_string(),
                "f1": profile.f_at_1.to_string(),
                "norms": norms,
                "measure": profile.measure.to_string(),
                "vp": vp,
                "m": m.to_string(),
            });
            let csvl = format!(
                "\"{}\",{},{},{},{},{}",
                f,
                profile.f_at_1,
                profile
                    .norms
                    .iter()
                    .map(|n| n.to_string())
                    .collect::<Vec<_>>()
                    .join(";"),
                profile.measure,
                vp,
                m
            );
            emit(cli.csv, j, csvl);
        }
        return Ok(0);
    }

    let resume_from = match &args.resume {
        None => None,
        Some(path) => {
            let manifest: ShardManifest =
                serde_json::from_reader(BufReader::new(File::open(path)?))?;
            if manifest.spec_hash != spec.hash() {
                return Err(Error::InvalidInput(
                    "resume manifest belongs to a different spec".to_string(),
                ));
            }
            Some(manifest.next_rank)
        }
    };

    let mut writer: Box<dyn Write> = match &args.out {
        Some(path) => Box::new(BufWriter::new(File::create(path)?)),
        None => Box::new(std::io::stdout().lock()),
    };
    if cli.csv {
        writeln!(writer, "coeffs,f1,norms,measure,vp,m")?;
    }
    let csv = cli.csv;
    let mut sink = |rec: MeasureRecord| -> Result<(), Error> {
        if csv {
            writeln!(
                writer,
                "\"{}\",{},{},{},{},{}",
                rec.coeffs,
                rec.profile.f_at_1,
                rec.profile
                    .norms
                    .iter()
                    .map(|n| n.to_string())
                    .collect::<Vec<_>>()
                    .join(";"),
                rec.profile.measure,
                rec.vp,
                rec.m
            )?;
        } else {
            writeln!(writer, "{}", serde_json::to_string(&rec)?)?;
        }
        Ok(())
    };
    let outcome = enumerate_measures(&spec, resume_from, &mut sink)?;
    drop(writer);
    if let Some(out) = &args.out {
        let manifest_path = out.with_extension("manifest.json");
        serde_json::to_writer_pretty(
            BufWriter::new(File::create(&manifest_path)?),
            &outcome.manifest,
        )?;
        eprintln!(
            "visited {} leaves, emitted {} records, complete: {} (manifest: {})",
            outcome.visited,
            outcome.emitted,
            outcome.complete,
            manifest_path.display()
        );
    }
    Ok(if outcome.complete { 0 } else { 2 })
}

fn audit_cmd(cli: &Cli, args: &AuditArgs) -> Result<i32, Error> {
    let mut records = Vec::new();
    for path in &args.files {
        let reader = BufReader::new(File::open(path)?);
        records.extend(read_records(reader, args.p, args.t)?);
    }
    let budget = cli.budget.unwrap_or(DEFAULT_RHO_BUDGET);
    let report = circdet_core::audit::corpus_audit(&records, args.p, args.t, budget);
    let j = json!({
        "records": report.records,
        "violations": report.violations.iter().map(|v| json!({
            "kind": format!("{:?}", v.kind),
            "coeffs": v.coeffs,
            "detail": v.detail,
        })).collect::<Vec<_>>(),
        "unknown": report.unknown,
        "qualifying_checked": report.qualifying_checked,
        "substitute_only": report.substitute_only,
        "clean": report.is_clean(),
    });
    emit(
        cli.csv,
        j,
        format!(
            "{},{},{},{},{}",
            report.records,
            report.violations.len(),
            report.unknown,
            report.qualifying_checked,
            report.substitute_only
        ),
    );
    Ok(if !report.is_clean() && cli.strict {
        1
    } else {
        0
    })
}

fn tables_cmd(cli: &Cli, args: &TablesArgs) -> Result<i32, Error> {
    let context: TableContext = args.context.parse()?;
    let report = tables(context, args.bound)?;
    if cli.csv {
        println!("context,label,q");
        for (label, list) in &report.groups {
            for q in list {
                println!("{context},{label},{q}");
            }
        }
    } else {
        let counts: serde_json::Map<String, Value> = report
            .groups
            .iter()
            .map(|(l, v)| (l.clone(), json!(v.len())))
            .collect();
        let lists: serde_json::Map<String, Value> = report
            .groups
            .iter()
            .map(|(l, v)| (l.clone(), json!(v)))
            .collect();
        println!(
            "{}",
            json!({
                "context": context.to_string(),
                "bound": report.bound,
                "counts": counts,
                "lists": lists,
            })
        );
    }
    Ok(0)
}
