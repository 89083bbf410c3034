//! Command-line surface: analyze group files, build family members, and run
//! the differential corpus.
//!
//! Exit codes: 0 success, 2 validation/parse error, 3 differential
//! disagreement or invariant failure, 4 cap/budget exceeded.

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use pyramidal::{
    automorphism_group_order, classify_with_budget, corpus, io::PermGroupFile,
    is_3_pyramidal_definition, resolve, structural_checks, sylow_profile, CorpusEntry, Error,
    Expectation, FamilySpec, Group, GroupSpec, NotPyramidalReason, Profile, PyramidalReport,
    ReducedSylowShape, Verdict, DEFAULT_AUT_BUDGET, DEFAULT_CAP, DEFAULT_ISO_BUDGET,
};

const EXIT_OK: u8 = 0;
const EXIT_INVALID: u8 = 2;
const EXIT_DISAGREEMENT: u8 = 3;
const EXIT_BUDGET: u8 = 4;

#[derive(Parser)]
#[command(
    name = "pyramidal",
    version,
    about = "Decide, classify, and construct 3-pyramidal groups"
)]
struct Cli {
    #[command(flatten)]
    limits: Limits,
    /// Emit machine-readable JSON instead of text
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Limits {
    /// Element cap for group closures
    #[arg(long, global = true, default_value_t = DEFAULT_CAP)]
    cap: usize,
    /// Node budget for isomorphism search
    #[arg(long, global = true, default_value_t = DEFAULT_ISO_BUDGET)]
    budget_iso: usize,
    /// Node budget for automorphism-order counting
    #[arg(long, global = true, default_value_t = DEFAULT_AUT_BUDGET)]
    budget_aut: usize,
}

#[derive(Subcommand)]
enum Command {
    /// Load a permgroup/v1 file and print its classification report
    Analyze { path: PathBuf },
    /// Build a family member and write it as a permgroup/v1 file
    Make {
        /// Family name: s3xh, homocyclic, or suzuki64
        family: String,
        /// Parameters as key=value (h=cyclic:7, n=2, y=cyclic:9, a=3)
        #[arg(short = 'p', long = "param")]
        params: Vec<String>,
        /// Output path
        #[arg(short, long)]
        out: PathBuf,
    },
    /// Run the differential corpus: definition oracle vs classifier
    Corpus {
        #[arg(long, value_parser = parse_profile, default_value = "small")]
        profile: Profile,
        /// Worker threads for corpus evaluation
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        /// Also verify the order-64 Suzuki group's automorphism count
        #[arg(long)]
        slow: bool,
        /// Write the corpus manifest (corpus/v1) to this path
        #[arg(long)]
        write_manifest: Option<PathBuf>,
    },
}

fn parse_profile(s: &str) -> Result<Profile, String> {
    match s {
        "small" => Ok(Profile::Small),
        "full" => Ok(Profile::Full),
        other => Err(format!("unknown profile `{other}` (expected small|full)")),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let code = match run(&cli) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err}");
            exit_code_for(&err)
        }
    };
    ExitCode::from(code)
}

fn exit_code_for(err: &Error) -> u8 {
    match err {
        Error::CapExceeded { .. } | Error::BudgetExceeded { .. } => EXIT_BUDGET,
        _ => EXIT_INVALID,
    }
}

fn run(cli: &Cli) -> Result<u8, Error> {
    match &cli.command {
        Command::Analyze { path } => cmd_analyze(cli, path),
        Command::Make {
            family,
            params,
            out,
        } => cmd_make(cli, family, params, out),
        Command::Corpus {
            profile,
            jobs,
            slow,
            write_manifest,
        } => cmd_corpus(cli, *profile, *jobs, *slow, write_manifest.as_deref()),
    }
}

// ---------------------------------------------------------------- analyze

#[derive(Serialize)]
struct ReportJson {
    verdict: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    reason: Option<String>,
    involutions: Vec<usize>,
    involution_count: usize,
    involutions_conjugate: bool,
    k_order: usize,
    c_order: usize,
    odd_core_order: usize,
    two_adic_valuation: u32,
    #[serde(skip_serializing_if = "Option::is_none")]
    case_params: Option<serde_json::Value>,
}

fn verdict_tag(v: &Verdict) -> &'static str {
    match v {
        Verdict::NotPyramidal(_) => "not_pyramidal",
        Verdict::S3TimesOdd { .. } => "s3_times_odd",
        Verdict::Suzuki64Semidirect { .. } => "suzuki64_semidirect",
        Verdict::HomocyclicSemidirect { .. } => "homocyclic_semidirect",
    }
}

fn reason_text(r: &NotPyramidalReason) -> String {
    match r {
        NotPyramidalReason::InvolutionCount { count } => {
            format!("involution count is {count}, not 3")
        }
        NotPyramidalReason::InvolutionsNotConjugate => {
            "the three involutions are not all conjugate".to_string()
        }
        NotPyramidalReason::Structural { check } => format!("structural check failed: {check}"),
    }
}

fn report_json(report: &PyramidalReport) -> ReportJson {
    let (reason, case_params) = match &report.verdict {
        Verdict::NotPyramidal(r) => (Some(reason_text(r)), None),
        Verdict::S3TimesOdd { odd_complement } => (
            None,
            Some(serde_json::json!({ "odd_complement_order": odd_complement.order() })),
        ),
        Verdict::Suzuki64Semidirect { a_order } => {
            (None, Some(serde_json::json!({ "a_order": a_order })))
        }
        Verdict::HomocyclicSemidirect { exponent } => {
            (None, Some(serde_json::json!({ "exponent": exponent })))
        }
    };
    ReportJson {
        verdict: verdict_tag(&report.verdict),
        reason,
        involutions: report.involutions.iter().map(|i| i.0).collect(),
        involution_count: report.involution_count(),
        involutions_conjugate: report.involutions_conjugate,
        k_order: report.involution_subgroup.order(),
        c_order: report.involution_centralizer.order(),
        odd_core_order: report.odd_core.order(),
        two_adic_valuation: report.two_adic_valuation,
        case_params,
    }
}

fn print_report(order: usize, report: &PyramidalReport, json: bool) {
    if json {
        println!(
            "{}",
            serde_json::to_string_pretty(&report_json(report)).expect("report serializes")
        );
        return;
    }
    println!("order                : {order}");
    println!("involutions          : {}", report.involution_count());
    println!("involutions conjugate: {}", report.involutions_conjugate);
    println!(
        "|K| (involution span): {}",
        report.involution_subgroup.order()
    );
    println!(
        "|C| = |C_G(K)|       : {}",
        report.involution_centralizer.order()
    );
    println!("|O(G)| (odd core)    : {}", report.odd_core.order());
    println!("2-adic valuation     : {}", report.two_adic_valuation);
    match &report.verdict {
        Verdict::NotPyramidal(r) => println!(
            "verdict              : not 3-pyramidal ({})",
            reason_text(r)
        ),
        Verdict::S3TimesOdd { odd_complement } => println!(
            "verdict              : s3_times_odd (odd complement of order {})",
            odd_complement.order()
        ),
        Verdict::Suzuki64Semidirect { a_order } => {
            println!("verdict              : suzuki64_semidirect (complement order {a_order})")
        }
        Verdict::HomocyclicSemidirect { exponent } => {
            println!("verdict              : homocyclic_semidirect (exponent {exponent})")
        }
    }
}

fn cmd_analyze(cli: &Cli, path: &std::path::Path) -> Result<u8, Error> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::MalformedFile(format!("{}: {e}", path.display())))?;
    let group = pyramidal::io::read_group(&text, cli.limits.cap)?;
    let report = classify_with_budget(&group, cli.limits.budget_iso)?;
    print_report(group.order(), &report, cli.json);
    Ok(EXIT_OK)
}

// ------------------------------------------------------------------- make

fn parse_group_value(value: &str) -> Result<GroupSpec, Error> {
    // cyclic:7 or cyclic:3x9 (direct product of cyclic factors)
    let rest = value
        .strip_prefix("cyclic:")
        .ok_or_else(|| Error::MalformedFile(format!("unsupported group value `{value}`")))?;
    let factors = rest
        .split('x')
        .map(|part| {
            part.parse::<usize>()
                .map_err(|_| Error::MalformedFile(format!("bad cyclic order `{part}`")))
                .map(|k| GroupSpec::Cyclic { k })
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(if factors.len() == 1 {
        factors.into_iter().next().expect("one factor")
    } else {
        GroupSpec::DirectProd { specs: factors }
    })
}

fn build_family_spec(family: &str, params: &[String]) -> Result<GroupSpec, Error> {
    let mut kv = std::collections::BTreeMap::new();
    for p in params {
        let (k, v) = p
            .split_once('=')
            .ok_or_else(|| Error::MalformedFile(format!("parameter `{p}` is not key=value")))?;
        kv.insert(k.to_string(), v.to_string());
    }
    let get_int = |kv: &std::collections::BTreeMap<String, String>, key: &str| {
        kv.get(key)
            .ok_or_else(|| Error::MalformedFile(format!("missing parameter `{key}`")))?
            .parse::<usize>()
            .map_err(|_| Error::MalformedFile(format!("parameter `{key}` is not an integer")))
    };
    match family {
        "s3xh" => {
            let h = kv
                .get("h")
                .ok_or_else(|| Error::MalformedFile("missing parameter `h`".to_string()))?;
            Ok(GroupSpec::Family(FamilySpec::S3TimesH {
                h: Box::new(parse_group_value(h)?),
            }))
        }
        "homocyclic" => {
            let n = get_int(&kv, "n")? as u32;
            let y = kv
                .get("y")
                .map(|v| parse_group_value(v))
                .transpose()?
                .map(Box::new);
            Ok(GroupSpec::Family(FamilySpec::Homocyclic { n, y }))
        }
        "suzuki64" => {
            let a_order = get_int(&kv, "a")?;
            Ok(GroupSpec::Family(FamilySpec::Suzuki64 { a_order }))
        }
        other => Err(Error::MalformedFile(format!(
            "unknown family `{other}` (expected s3xh, homocyclic, suzuki64)"
        ))),
    }
}

fn cmd_make(
    cli: &Cli,
    family: &str,
    params: &[String],
    out: &std::path::Path,
) -> Result<u8, Error> {
    let spec = build_family_spec(family, params)?;
    let group = resolve(&spec, cli.limits.cap)?;
    let file = PermGroupFile::from_group(&group);
    std::fs::write(out, file.to_json())
        .map_err(|e| Error::MalformedFile(format!("{}: {e}", out.display())))?;
    if cli.json {
        println!(
            "{}",
            serde_json::json!({
                "written": out.display().to_string(),
                "order": group.order(),
                "degree": file.degree,
                "generators": file.generators.len(),
            })
        );
    } else {
        println!(
            "wrote {} (order {}, degree {}, {} generators)",
            out.display(),
            group.order(),
            file.degree,
            file.generators.len()
        );
    }
    Ok(EXIT_OK)
}

// ----------------------------------------------------------------- corpus

#[derive(Serialize)]
struct EntryResult {
    id: String,
    order: usize,
    expected: Expectation,
    oracle: bool,
    verdict: &'static str,
    agree: bool,
    expected_match: bool,
    invariants_ok: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    detail: Option<String>,
    millis: u128,
}

#[derive(Serialize)]
struct RunSummary {
    profile: &'static str,
    groups: usize,
    agreements: usize,
    disagreements: usize,
    invariant_failures: usize,
    expected_mismatches: usize,
    slow_checks_run: bool,
    elapsed_ms: u128,
}

#[derive(Serialize)]
struct RunReportJson {
    summary: RunSummary,
    entries: Vec<EntryResult>,
}

fn evaluate_entry(
    entry: &CorpusEntry,
    cap: usize,
    iso_budget: usize,
) -> Result<EntryResult, Error> {
    let start = Instant::now();
    let group = resolve(&entry.spec, cap)?;
    let oracle = is_3_pyramidal_definition(&group);
    let report = classify_with_budget(&group, iso_budget)?;
    let agree = oracle == report.verdict.is_pyramidal();
    let expected_match = match entry.expected {
        Expectation::Positive => oracle,
        Expectation::Negative => !oracle,
        Expectation::Unknown => true,
    };
    let mut detail = None;
    let invariants_ok = if oracle {
        positive_invariants_hold(&group, iso_budget, &mut detail)?
    } else {
        true
    };
    if !agree {
        detail = Some(format!(
            "oracle says {oracle}, classifier says {:?}",
            report.verdict
        ));
    }
    Ok(EntryResult {
        id: entry.id.clone(),
        order: group.order(),
        expected: entry.expected,
        oracle,
        verdict: verdict_tag(&report.verdict),
        agree,
        expected_match,
        invariants_ok,
        detail,
        millis: start.elapsed().as_millis(),
    })
}

/// The invariants every 3-pyramidal group must satisfy: the structural
/// predicate suite, solvability, 2-length 1, and a reduced Sylow 2-subgroup
/// that is homocyclic of rank <= 2 or the order-64 Suzuki group.
fn positive_invariants_hold(
    group: &Group,
    iso_budget: usize,
    detail: &mut Option<String>,
) -> Result<bool, Error> {
    let checks = structural_checks(group);
    if !checks.all_hold() {
        *detail = Some("structural predicate suite failed".to_string());
        return Ok(false);
    }
    let profile = sylow_profile(group, iso_budget)?;
    if !profile.solvable {
        *detail = Some("not solvable".to_string());
        return Ok(false);
    }
    if profile.two_length != Some(1) {
        *detail = Some(format!("2-length {:?}, expected 1", profile.two_length));
        return Ok(false);
    }
    let shape_ok = match &profile.reduced_sylow {
        ReducedSylowShape::Homocyclic { factors } => factors.len() <= 2,
        ReducedSylowShape::Suzuki64 => true,
        ReducedSylowShape::Other => false,
    };
    if !shape_ok {
        *detail = Some("reduced Sylow 2-subgroup has an unexpected shape".to_string());
        return Ok(false);
    }
    Ok(true)
}

fn cmd_corpus(
    cli: &Cli,
    profile: Profile,
    jobs: usize,
    slow: bool,
    write_manifest: Option<&std::path::Path>,
) -> Result<u8, Error> {
    let entries = corpus(profile);
    if let Some(path) = write_manifest {
        let manifest = serde_json::to_string_pretty(&entries).expect("corpus serializes");
        std::fs::write(path, manifest)
            .map_err(|e| Error::MalformedFile(format!("{}: {e}", path.display())))?;
    }

    let start = Instant::now();
    let cap = cli.limits.cap;
    let iso = cli.limits.budget_iso;
    let results: Vec<Result<EntryResult, Error>> = if jobs > 1 {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build()
            .expect("thread pool");
        pool.install(|| {
            use rayon::prelude::*;
            entries
                .par_iter()
                .map(|e| evaluate_entry(e, cap, iso))
                .collect()
        })
    } else {
        entries
            .iter()
            .map(|e| evaluate_entry(e, cap, iso))
            .collect()
    };
    let results: Vec<EntryResult> = results.into_iter().collect::<Result<_, _>>()?;

    let mut slow_ok = true;
    if slow {
        let suzuki = pyramidal::load_reference(pyramidal::ReferenceName::Suzuki64)?;
        let aut = automorphism_group_order(&suzuki, cli.limits.budget_aut)?;
        slow_ok = aut == 15_360;
        if !cli.json {
            println!(
                "slow check: |Aut(suzuki64)| = {aut} (expected 15360) {}",
                if slow_ok { "ok" } else { "FAILED" }
            );
        }
    }

    let disagreements = results.iter().filter(|r| !r.agree).count();
    let invariant_failures =
        results.iter().filter(|r| !r.invariants_ok).count() + usize::from(!slow_ok);
    let expected_mismatches = results.iter().filter(|r| !r.expected_match).count();
    let summary = RunSummary {
        profile: match profile {
            Profile::Small => "small",
            Profile::Full => "full",
        },
        groups: results.len(),
        agreements: results.len() - disagreements,
        disagreements,
        invariant_failures,
        expected_mismatches,
        slow_checks_run: slow,
        elapsed_ms: start.elapsed().as_millis(),
    };

    if cli.json {
        let out = RunReportJson {
            summary,
            entries: results,
        };
        println!(
            "{}",
            serde_json::to_string_pretty(&out).expect("run report serializes")
        );
    } else {
        for r in &results {
            let status = if r.agree && r.invariants_ok && r.expected_match {
                "ok"
            } else {
                "FAIL"
            };
            println!(
                "{status:4} {:28} order {:5} oracle {:5} verdict {:21} {:4} ms{}",
                r.id,
                r.order,
                r.oracle,
                r.verdict,
                r.millis,
                r.detail
                    .as_deref()
                    .map(|d| format!("  [{d}]"))
                    .unwrap_or_default()
            );
        }
        println!(
            "{} groups, {} agreements, {} disagreements, {} invariant failures, {} expectation mismatches in {} ms",
            summary.groups,
            summary.agreements,
            summary.disagreements,
            summary.invariant_failures,
            summary.expected_mismatches,
            summary.elapsed_ms
        );
    }

    if disagreements > 0 || invariant_failures > 0 || expected_mismatches > 0 {
        return Ok(EXIT_DISAGREEMENT);
    }
    Ok(EXIT_OK)
}
