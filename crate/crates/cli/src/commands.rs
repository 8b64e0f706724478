use std::fmt::{self, Write as _};
use std::fs;
use std::io::Read;
use std::path::Path;

use maximin::fairness::scan::{notion_separation_scan, ScanConfig, ScanReport};
use maximin::fairness::{audit_with, Allocation, Criteria, FairnessReport};
use maximin::{
    corollary_case, decompose, dominates, filtration_trace, mms_cardinality, mms_with_limits,
    non_dominance_witness, non_dominated_pairs, candidate_pairs, EntitlementVector, Instance, Pair, Rational,
};
use serde::Serialize;
use serde_json::{json, Value as Json};

use crate::{Command, InstanceArgs};

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Resource(String),
    Io(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) | CliError::Io(_) => 2,
            CliError::Resource(_) => 3,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(m) => write!(f, "{m}"),
            CliError::Resource(m) => write!(f, "resource limit: {m}"),
            CliError::Io(m) => write!(f, "i/o: {m}"),
        }
    }
}

impl From<maximin::Error> for CliError {
    fn from(e: maximin::Error) -> Self {
        if e.is_resource_refusal() {
            CliError::Resource(e.to_string())
        } else {
            CliError::Usage(e.to_string())
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e.to_string())
    }
}

impl From<serde_json::Error> for CliError {
    fn from(e: serde_json::Error) -> Self {
        CliError::Usage(format!("json: {e}"))
    }
}

/// Result of one command: the JSON document, its text rendering and the
/// process exit code.
#[derive(Debug, Clone)]
pub struct Outcome {
    pub json: Json,
    pub text: String,
    pub code: u8,
}

pub fn to_json<T: Serialize>(value: &T) -> Result<String, CliError> {
    Ok(serde_json::to_string_pretty(value)?)
}

pub fn execute(command: &Command) -> Result<Outcome, CliError> {
    match command {
        Command::Mms { input, pair, limits } => cmd_mms(input, pair, &limits.limits()),
        Command::Dominates {
            l,
            d,
            l_prime,
            d_prime,
        } => cmd_dominates(*l, *d, *l_prime, *d_prime),
        Command::Pairs {
            entitlement,
            items_count,
            trace,
        } => cmd_pairs(entitlement, *items_count, *trace),
        Command::Audit {
            input,
            entitlements,
            allocation,
            allocation_file,
            criteria,
            limits,
        } => cmd_audit(
            input,
            entitlements,
            allocation.as_deref(),
            allocation_file.as_deref(),
            criteria,
            &limits.limits(),
        ),
        Command::Scan {
            values,
            grid_items,
            agents,
            denominator,
            samples,
            sample_max_items,
            sample_max_value,
            seed,
            output,
            limits,
        } => {
            let config = ScanConfig {
                values: values.clone(),
                max_items: *grid_items,
                agent_counts: agents.clone(),
                denominator: *denominator,
                samples: *samples,
                sample_max_items: *sample_max_items,
                sample_max_value: *sample_max_value,
                seed: *seed,
                limits: limits.limits(),
            };
            cmd_scan(&config, output.as_deref())
        }
        Command::Replay { .. } => Err(CliError::Usage("replay is handled by the caller".into())),
    }
}

fn read_instance(input: &InstanceArgs) -> Result<Instance, CliError> {
    let text = match (&input.items, &input.instance) {
        (Some(items), _) => items.clone(),
        (None, Some(path)) if path == Path::new("-") => {
            let mut buf = String::new();
            std::io::stdin().read_to_string(&mut buf)?;
            buf
        }
        (None, Some(path)) => fs::read_to_string(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?,
        (None, None) => return Err(CliError::Usage("one of --items or --instance is required".into())),
    };
    Ok(Instance::parse(&text)?)
}

fn parse_pair(text: &str) -> Result<Pair, CliError> {
    Ok(text.parse::<Pair>()?)
}

fn cmd_mms(input: &InstanceArgs, pair: &str, limits: &maximin::SearchLimits) -> Result<Outcome, CliError> {
    let instance = read_instance(input)?;
    let pair = parse_pair(pair)?;
    let res = mms_with_limits(&instance, pair, limits)?;
    let part_sums = res.witness.part_sums(&instance)?;
    let bundles: Vec<Vec<u64>> = res
        .witness
        .bundles()
        .iter()
        .map(|b| b.iter().map(|&i| instance.items()[i].get()).collect())
        .collect();

    let mut text = format!("MMS {} of {} = {}\n", pair, instance, res.value);
    text.push_str("witness:");
    for b in &bundles {
        let inner: Vec<String> = b.iter().map(u64::to_string).collect();
        let _ = write!(text, " {{{}}}", inner.join(","));
    }
    text.push('\n');

    let json = json!({
        "command": "mms",
        "items": instance,
        "pair": pair,
        "value": res.value,
        "witness": res.witness,
        "part_sums": part_sums,
    });
    Ok(Outcome { json, text, code: 0 })
}

fn cmd_dominates(l: u32, d: u32, l_prime: u32, d_prime: u32) -> Result<Outcome, CliError> {
    let p = Pair::new(l, d)?;
    let pp = Pair::new(l_prime, d_prime)?;
    let dec = decompose(p.d(), pp.d());
    let verdict = dominates(p, pp);
    let share = dec.q * u64::from(p.l()) - u64::from(p.l()).min(dec.r);

    let (text, witness) = if verdict {
        let case = corollary_case(p, pp).map(|c| format!(", case {c}")).unwrap_or_default();
        (
            format!("yes: {p} dominates {pp} (q={}, r={}{case})\n", dec.q, dec.r),
            Json::Null,
        )
    } else {
        let w = non_dominance_witness(p, pp)?;
        let m = w.len() as u64;
        let (low, high) = (mms_cardinality(m, p), mms_cardinality(m, pp));
        (
            format!(
                "no: {p} does not dominate {pp} (q={}, r={})\nwitness: {m} unit items, MMS {p} = {low} < {high} = MMS {pp}\n",
                dec.q, dec.r
            ),
            json!({ "items": w, "mms_p": low, "mms_p_prime": high }),
        )
    };
    let json = json!({
        "command": "dominates",
        "p": p,
        "p_prime": pp,
        "dominates": verdict,
        "q": dec.q,
        "r": dec.r,
        "balanced_share": share,
        "corollary_case": corollary_case(p, pp),
        "witness": witness,
    });
    Ok(Outcome {
        json,
        text,
        code: if verdict { 0 } else { 1 },
    })
}

fn cmd_pairs(entitlement: &str, m: usize, trace: bool) -> Result<Outcome, CliError> {
    let a: Rational = entitlement.parse()?;
    let candidates = candidate_pairs(&a, m)?;
    let set = non_dominated_pairs(&a, m)?;
    let removals = filtration_trace(&a, m)?;

    let mut text = String::new();
    if trace {
        let listed: Vec<String> = candidates.iter().map(Pair::to_string).collect();
        let _ = writeln!(text, "candidates: {}", listed.join(", "));
        for r in &removals {
            let _ = writeln!(text, "{r}");
        }
    }
    for p in &set.pairs {
        let _ = writeln!(text, "{p}");
    }
    let mut json = json!({
        "command": "pairs",
        "entitlement": a,
        "items_count": m,
        "candidates": candidates,
        "pairs": set.pairs,
    });
    if trace {
        json["trace"] = serde_json::to_value(&removals)?;
    }
    Ok(Outcome { json, text, code: 0 })
}

fn cmd_audit(
    input: &InstanceArgs,
    entitlements: &str,
    allocation: Option<&str>,
    allocation_file: Option<&Path>,
    criteria: &str,
    limits: &maximin::SearchLimits,
) -> Result<Outcome, CliError> {
    let instance = read_instance(input)?;
    let t = EntitlementVector::parse(entitlements)?;
    let criteria: Criteria = criteria.parse()?;
    let alloc = match (allocation, allocation_file) {
        (Some(text), _) => Allocation::parse(&instance, text)?,
        (None, Some(path)) => {
            let raw = fs::read_to_string(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
            let bundles: Vec<Vec<usize>> = serde_json::from_str(&raw)?;
            Allocation::new(&instance, bundles)?
        }
        (None, None) => return Err(CliError::Usage("one of --allocation or --allocation-file is required".into())),
    };
    let report = audit_with(&instance, &t, &alloc, criteria, limits)?;
    let text = render_audit(&report);
    let json = json!({
        "command": "audit",
        "items": instance,
        "entitlements": t,
        "report": report,
    });
    Ok(Outcome {
        json,
        text,
        code: if report.all_ok { 0 } else { 1 },
    })
}

fn verdict(ok: Option<bool>) -> &'static str {
    match ok {
        Some(true) => "pass",
        Some(false) => "FAIL",
        None => "-",
    }
}

fn render_audit(report: &FairnessReport) -> String {
    let mut text = String::new();
    for a in &report.agents {
        let _ = write!(
            text,
            "agent {} (t={}): bundle value {}",
            a.agent + 1,
            a.entitlement,
            a.bundle_value
        );
        if let Some(reqs) = &a.omms_requirements {
            let listed: Vec<String> = reqs.iter().map(|r| format!("{}={}", r.pair, r.value)).collect();
            let _ = write!(text, " | OMMS {} [{}]", verdict(a.omms_ok), listed.join(" "));
        }
        if let Some(v) = &a.wmms_value {
            let _ = write!(text, " | WMMS {} ({v})", verdict(a.wmms_ok));
        }
        if let Some(v) = &a.bmms_value {
            let _ = write!(text, " | BMMS {} ({v})", verdict(a.bmms_ok));
        }
        text.push('\n');
    }
    let _ = writeln!(text, "{}", if report.all_ok { "fair" } else { "not fair" });
    text
}

fn cmd_scan(config: &ScanConfig, output: Option<&Path>) -> Result<Outcome, CliError> {
    let report = notion_separation_scan(config);
    if let Some(path) = output {
        let body = if path.extension().is_some_and(|e| e.eq_ignore_ascii_case("csv")) {
            scan_csv(&report)
        } else {
            to_json(&report)? + "\n"
        };
        fs::write(path, body).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
    }
    let s = &report.summary;
    let mut text = String::new();
    let _ = writeln!(text, "rows: {} ({} agent checks, {} skipped)", s.rows, s.agent_checks, s.skipped);
    let _ = writeln!(text, "WMMS strictly stronger than OMMS: {}", s.wmms_strictly_stronger);
    let _ = writeln!(text, "OMMS strictly stronger than WMMS: {}", s.omms_strictly_stronger);
    let _ = writeln!(text, "OMMS and WMMS incomparable: {}", s.omms_wmms_incomparable);
    let _ = writeln!(
        text,
        "equal entitlements: {} agents, {} OMMS/WMMS mismatches, {} BMMS/WMMS mismatches",
        s.equal_split_agents, s.equal_split_omms_wmms_mismatches, s.equal_split_bmms_wmms_mismatches
    );
    let _ = writeln!(text, "BMMS conjecture: {}", s.bmms_conjecture);
    let json = serde_json::to_value(&report)?;
    Ok(Outcome { json, text, code: 0 })
}

pub const SCAN_CSV_HEADER: &str = "agents,instance,entitlements,omms,wmms,bmms,omms_implies_wmms,wmms_implies_omms,bmms_implies_omms,bmms_implies_wmms,equal_split";

/// One line per instance/entitlement pair; per-agent fields are `;`-separated.
fn scan_csv(report: &ScanReport) -> String {
    let mut out = String::from(SCAN_CSV_HEADER);
    out.push('\n');
    let flag = |b: bool| if b { "1" } else { "0" };
    for row in &report.rows {
        let join = |f: &dyn Fn(&maximin::fairness::scan::AgentThresholds) -> String| {
            row.agents.iter().map(f).collect::<Vec<_>>().join(";")
        };
        let items: Vec<String> = row.instance.values().map(|v| v.to_string()).collect();
        let ents: Vec<String> = row.entitlements.as_slice().iter().map(Rational::to_string).collect();
        let _ = writeln!(
            out,
            "{},{},{},{},{},{},{},{},{},{},{}",
            row.agents.len(),
            items.join(" "),
            ents.join(";"),
            join(&|a| a.omms.to_string()),
            join(&|a| a.wmms.to_string()),
            join(&|a| a.bmms.to_string()),
            join(&|a| flag(a.implications.omms_implies_wmms).into()),
            join(&|a| flag(a.implications.wmms_implies_omms).into()),
            join(&|a| flag(a.implications.bmms_implies_omms).into()),
            join(&|a| flag(a.implications.bmms_implies_wmms).into()),
            flag(row.equal_split),
        );
    }
    out
}
