//! `jrank` — rank journals from citation matrices, check the ranking axioms,
//! and hunt for the instances where the axioms collide.
//!
//! Exit status: 0 clean, 1 when violations or certificates were found (or a
//! replay failed to reproduce), 2 on usage or input errors.

mod format;
mod report;

use clap::{Parser, Subcommand, ValueEnum};
use format::{problem_from_value, problem_to_csv, problem_to_json, read_problem, Format};
use jrank_core::axioms::{certify_impossibility, check_ia, check_sc_method, IaMode};
use jrank_core::methods::{connected_components, induced_order, least_squares_residual, Method};
use jrank_core::order::enumerate_weak_orders;
use jrank_core::rational::parse_rational;
use jrank_core::sc::sc_admissible_set;
use jrank_core::search::{
    sweep_impossibility, sweep_violations, ClassConstraints, FamilySpec, SweepAxiom, SweepViolation,
};
use jrank_core::Problem;
use report::{family_from_json, family_to_json, method_label, Params, Report};
use serde_json::{json, Value};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "jrank",
    version,
    about = "Journal ranking from citation matrices: scoring methods, \
             self-consistency, aggregation invariance, and impossibility \
             certificates"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Problem file (CSV or structured JSON)
    #[arg(short = 'i', long, global = true, value_name = "FILE")]
    input: Option<PathBuf>,

    /// Input format; `auto` picks by extension (.json = structured)
    #[arg(long, global = true, value_enum, default_value_t = FormatArg::Auto)]
    format: FormatArg,

    /// Report format on stdout
    #[arg(long, global = true, value_enum, default_value_t = OutputArg::Text)]
    output: OutputArg,

    /// Score gap below which two journals count as tied
    #[arg(long, global = true, default_value_t = 1e-8, value_name = "EPS")]
    tie_tolerance: f64,

    /// Citation grid step for the decomposition search, e.g. "1/2"
    #[arg(long, global = true, default_value = "1/2", value_name = "STEP")]
    granularity: String,

    /// Cap on layers per decomposition (default: what the matrix requires)
    #[arg(long, global = true, value_name = "K")]
    max_layers: Option<usize>,

    /// Cap on decompositions searched per problem
    #[arg(long, global = true, default_value_t = 128, value_name = "K")]
    cap: usize,
}

#[derive(Subcommand)]
enum Command {
    /// Report which domain classes the problem belongs to
    Classify,
    /// Apply the extremal rewrite and print the resulting problem as CSV
    Transform,
    /// Merge two journals and print the aggregated problem as CSV
    Aggregate {
        /// The two journals to merge, by name: "A,B"
        #[arg(long, value_name = "A,B")]
        merge: String,
    },
    /// Score the journals and print the induced ranking
    Rank {
        #[arg(long, value_enum)]
        method: MethodArg,
    },
    /// Enumerate every self-consistent weak order of the problem
    ScEnumerate,
    /// Check a scoring method against an axiom, or replay a stored report
    Check {
        #[arg(
            long,
            value_enum,
            required_unless_present = "replay",
            conflicts_with = "replay"
        )]
        axiom: Option<AxiomArg>,
        #[arg(
            long,
            value_enum,
            required_unless_present = "replay",
            conflicts_with = "replay"
        )]
        method: Option<MethodArg>,
        /// Re-execute a stored structured report and compare results
        #[arg(long, value_name = "REPORT")]
        replay: Option<PathBuf>,
    },
    /// Look for an impossibility certificate on one problem
    Certify {
        /// Pair whose relation should clash, by name: "A,B"
        #[arg(long, value_name = "A,B")]
        target: String,
        /// Pair to merge, by name: "C,D" (disjoint from the target)
        #[arg(long, value_name = "C,D")]
        merge: String,
    },
    /// Sweep an instance family for violations or certificates
    Search {
        /// Journal count of the family
        #[arg(long, value_name = "K")]
        n: usize,
        /// Comma list of class constraints: balanced, unweighted, loopless, extremal
        #[arg(long, value_name = "CLASSES")]
        family: Option<String>,
        /// Axiom to sweep (with --method)
        #[arg(
            long,
            value_enum,
            requires = "method",
            conflicts_with = "impossibility"
        )]
        axiom: Option<AxiomArg>,
        /// Method to sweep (with --axiom)
        #[arg(long, value_enum, requires = "axiom", conflicts_with = "impossibility")]
        method: Option<MethodArg>,
        /// Sweep for impossibility certificates instead of violations
        #[arg(long)]
        impossibility: bool,
        /// Keep one instance per relabeling orbit
        #[arg(long)]
        dedup_isomorphic: bool,
        /// Raise the family-size ceiling (default 5 journals)
        #[arg(long, value_name = "K")]
        max_n: Option<usize>,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum FormatArg {
    Auto,
    Csv,
    Structured,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum OutputArg {
    Text,
    Structured,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum MethodArg {
    /// Least squares on the matches graph
    Ls,
    /// All scores zero
    Flat,
    /// Net citation flow
    #[value(name = "netsum")]
    NetSum,
}

fn to_method(arg: MethodArg) -> Method {
    match arg {
        MethodArg::Ls => Method::LeastSquares,
        MethodArg::Flat => Method::Flat,
        MethodArg::NetSum => Method::NetSum,
    }
}

fn method_from_name(name: &str) -> Result<Method, String> {
    match name {
        "ls" => Ok(Method::LeastSquares),
        "flat" => Ok(Method::Flat),
        "netsum" => Ok(Method::NetSum),
        other => Err(format!("unknown method {other:?}")),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum AxiomArg {
    /// Aggregation must not reverse a weak preference
    IaWeak,
    /// Aggregation must not change any relation
    IaStrict,
    /// Self-consistency
    Sc,
}

impl AxiomArg {
    fn name(self) -> &'static str {
        match self {
            AxiomArg::IaWeak => "ia-weak",
            AxiomArg::IaStrict => "ia-strict",
            AxiomArg::Sc => "sc",
        }
    }
}

fn axiom_from_name(name: &str) -> Result<AxiomArg, String> {
    match name {
        "ia-weak" => Ok(AxiomArg::IaWeak),
        "ia-strict" => Ok(AxiomArg::IaStrict),
        "sc" => Ok(AxiomArg::Sc),
        other => Err(format!("unknown axiom {other:?}")),
    }
}

fn to_sweep_axiom(arg: AxiomArg) -> SweepAxiom {
    match arg {
        AxiomArg::IaWeak => SweepAxiom::IaWeak,
        AxiomArg::IaStrict => SweepAxiom::IaStrict,
        AxiomArg::Sc => SweepAxiom::Sc,
    }
}

enum SearchMode {
    Axiom(SweepAxiom, Method),
    Impossibility,
}

enum Outcome {
    Clean,
    Findings,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(Outcome::Clean) => ExitCode::SUCCESS,
        Ok(Outcome::Findings) => ExitCode::from(1),
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: &Cli) -> Result<Outcome, String> {
    if let Command::Check {
        replay: Some(path), ..
    } = &cli.command
    {
        return run_replay(path);
    }
    if cli.tie_tolerance.is_nan() || cli.tie_tolerance < 0.0 {
        return Err("--tie-tolerance must be a nonnegative number".into());
    }
    let params = Params {
        tie_tolerance: cli.tie_tolerance,
        granularity: parse_rational(&cli.granularity).map_err(|e| format!("--granularity: {e}"))?,
        max_layers: cli.max_layers,
        cap: cli.cap,
    };
    params.bounds().validate().map_err(|e| e.to_string())?;
    let report = match &cli.command {
        Command::Classify => cmd_classify(&require_input(cli)?, &params),
        Command::Transform => cmd_transform(&require_input(cli)?, &params),
        Command::Aggregate { merge } => {
            let p = require_input(cli)?;
            let (a, b) = parse_pair(&p, merge, "--merge")?;
            cmd_aggregate(&p, a, b, &params)?
        }
        Command::Rank { method } => cmd_rank(&require_input(cli)?, to_method(*method), &params),
        Command::ScEnumerate => cmd_sc_enumerate(&require_input(cli)?, &params)?,
        Command::Check {
            axiom,
            method,
            replay: _,
        } => {
            let p = require_input(cli)?;
            let axiom = axiom.expect("clap requires --axiom without --replay");
            let method = method.expect("clap requires --method without --replay");
            cmd_check(&p, axiom, to_method(method), &params)?
        }
        Command::Certify { target, merge } => {
            let p = require_input(cli)?;
            let target = parse_pair(&p, target, "--target")?;
            let merge = parse_pair(&p, merge, "--merge")?;
            cmd_certify(&p, target, merge, &params)?
        }
        Command::Search {
            n,
            family,
            axiom,
            method,
            impossibility,
            dedup_isomorphic,
            max_n,
        } => {
            let mut spec = FamilySpec::new(*n);
            if let Some(m) = max_n {
                spec.max_n = *m;
            }
            spec.dedup_isomorphic = *dedup_isomorphic;
            if let Some(list) = family {
                spec.constraints = parse_constraints(list)?;
            }
            let mode = match (axiom, method, impossibility) {
                (Some(a), Some(m), false) => SearchMode::Axiom(to_sweep_axiom(*a), to_method(*m)),
                (None, None, true) => SearchMode::Impossibility,
                _ => {
                    return Err(
                        "search needs either --axiom AXIOM --method METHOD or --impossibility"
                            .into(),
                    )
                }
            };
            cmd_search(&spec, &mode, &params)?
        }
    };
    Ok(emit(cli, &report))
}

fn emit(cli: &Cli, report: &Report) -> Outcome {
    match cli.output {
        OutputArg::Text => println!("{}", report.text),
        OutputArg::Structured => println!(
            "{}",
            serde_json::to_string_pretty(&report.to_json()).expect("report is serializable")
        ),
    }
    if report.findings {
        Outcome::Findings
    } else {
        Outcome::Clean
    }
}

fn require_input(cli: &Cli) -> Result<Problem, String> {
    let path = cli
        .input
        .as_ref()
        .ok_or("this command needs --input <FILE>")?;
    let format = match cli.format {
        FormatArg::Auto => None,
        FormatArg::Csv => Some(Format::Csv),
        FormatArg::Structured => Some(Format::Structured),
    };
    read_problem(path, format)
}

/// Resolves `"A,B"` to a pair of distinct journal indices.
fn parse_pair(p: &Problem, text: &str, what: &str) -> Result<(usize, usize), String> {
    let parts: Vec<&str> = text.split(',').map(str::trim).collect();
    if parts.len() != 2 {
        return Err(format!(
            "{what}: expected two comma-separated journal names, got {text:?}"
        ));
    }
    let a = p
        .index_of(parts[0])
        .ok_or_else(|| format!("{what}: no journal named {:?}", parts[0]))?;
    let b = p
        .index_of(parts[1])
        .ok_or_else(|| format!("{what}: no journal named {:?}", parts[1]))?;
    Ok((a, b))
}

fn parse_constraints(list: &str) -> Result<ClassConstraints, String> {
    let mut c = ClassConstraints::default();
    for item in list.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        match item {
            "balanced" => c.balanced = true,
            "unweighted" => c.unweighted = true,
            "loopless" => c.loopless = true,
            "extremal" => c.extremal = true,
            other => {
                return Err(format!(
                    "--family: unknown class {other:?} (expected balanced, unweighted, loopless, extremal)"
                ))
            }
        }
    }
    Ok(c)
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn cmd_classify(p: &Problem, params: &Params) -> Report {
    let flags = p.classify();
    let result = json!({
        "balanced": flags.balanced,
        "unweighted": flags.unweighted,
        "loopless": flags.loopless,
        "extremal": flags.extremal,
        "all": flags.all(),
    });
    let text = format!(
        "journals ({}): {}\nbalanced:   {}\nunweighted: {}\nloopless:   {}\nextremal:   {}",
        p.n(),
        p.journals().join(", "),
        yes_no(flags.balanced),
        yes_no(flags.unweighted),
        yes_no(flags.loopless),
        yes_no(flags.extremal),
    );
    Report {
        command: "classify",
        args: json!({}),
        params: params.clone(),
        problem: Some(problem_to_json(p)),
        family: None,
        result,
        text,
        findings: false,
    }
}

fn cmd_transform(p: &Problem, params: &Params) -> Report {
    let image = p.extremal_transform();
    Report {
        command: "transform",
        args: json!({}),
        params: params.clone(),
        problem: Some(problem_to_json(p)),
        family: None,
        result: json!({ "problem": problem_to_json(&image) }),
        text: problem_to_csv(&image).trim_end().to_string(),
        findings: false,
    }
}

fn cmd_aggregate(p: &Problem, a: usize, b: usize, params: &Params) -> Result<Report, String> {
    let merged = p.aggregate(a, b).map_err(|e| e.to_string())?;
    let keep = a.min(b);
    let names = p.journals();
    let result = json!({
        "problem": problem_to_json(&merged),
        "merge": [a, b],
        "merge_names": [names[a], names[b]],
        "merged_name": merged.journal(keep),
        "merged_index": keep,
    });
    Ok(Report {
        command: "aggregate",
        args: json!({ "merge": [a, b] }),
        params: params.clone(),
        problem: Some(problem_to_json(p)),
        family: None,
        result,
        text: problem_to_csv(&merged).trim_end().to_string(),
        findings: false,
    })
}

fn cmd_rank(p: &Problem, method: Method, params: &Params) -> Report {
    let scores = method.score(p);
    let order = induced_order(&scores, params.tie_tolerance);
    let components = connected_components(p);
    let names = p.journals();
    let mut result = serde_json::Map::new();
    result.insert("method".into(), json!(method.name()));
    result.insert("scores".into(), json!(scores.values));
    result.insert("order".into(), report::order_json(&order, names));
    result.insert("components".into(), json!(components));
    if method == Method::LeastSquares {
        result.insert(
            "residual".into(),
            json!(least_squares_residual(p, &scores.values)),
        );
    }
    let width = names.iter().map(|s| s.chars().count()).max().unwrap_or(0);
    let mut text = format!("method: {}\nscores:", method_label(method));
    for (i, name) in names.iter().enumerate() {
        text.push_str(&format!(
            "\n  {name:<width$}  {:>12}",
            report::fmt_score(scores.values[i])
        ));
    }
    text.push_str(&format!("\norder: {}", order.to_text(names)));
    if components.len() > 1 {
        text.push_str(&format!(
            "\ncomponents: {} (disconnected; scores are zero-sum within each)",
            components.len()
        ));
    }
    if let Some(r) = result.get("residual").and_then(Value::as_f64) {
        text.push_str(&format!("\nresidual: {r:.2e}"));
    }
    Report {
        command: "rank",
        args: json!({ "method": method.name() }),
        params: params.clone(),
        problem: Some(problem_to_json(p)),
        family: None,
        result: Value::Object(result),
        text,
        findings: false,
    }
}

fn cmd_sc_enumerate(p: &Problem, params: &Params) -> Result<Report, String> {
    let orders = sc_admissible_set(p, &params.bounds()).map_err(|e| e.to_string())?;
    let candidates = enumerate_weak_orders(p.n())
        .map_err(|e| e.to_string())?
        .len();
    let names = p.journals();
    let result = json!({
        "count": orders.len(),
        "candidates": candidates,
        "orders": orders.iter().map(|o| report::order_json(o, names)).collect::<Vec<_>>(),
    });
    let mut text = format!(
        "admissible weak orders: {} of {} candidates",
        orders.len(),
        candidates
    );
    for o in &orders {
        text.push_str(&format!("\n  {}", o.to_text(names)));
    }
    Ok(Report {
        command: "sc-enumerate",
        args: json!({}),
        params: params.clone(),
        problem: Some(problem_to_json(p)),
        family: None,
        result,
        text,
        findings: false,
    })
}

fn cmd_check(
    p: &Problem,
    axiom: AxiomArg,
    method: Method,
    params: &Params,
) -> Result<Report, String> {
    let (violations, lines): (Vec<Value>, Vec<String>) = match axiom {
        AxiomArg::IaWeak | AxiomArg::IaStrict => {
            let mode = if axiom == AxiomArg::IaWeak {
                IaMode::Weak
            } else {
                IaMode::Strict
            };
            let found =
                check_ia(method, p, mode, params.tie_tolerance).map_err(|e| e.to_string())?;
            (
                found.iter().map(report::ia_violation_json).collect(),
                found.iter().map(report::ia_violation_text).collect(),
            )
        }
        AxiomArg::Sc => match check_sc_method(method, p, params.tie_tolerance, &params.bounds()) {
            Some(v) => (
                vec![report::sc_violation_json(p, &v)],
                vec![report::sc_violation_text(p, &v)],
            ),
            None => (Vec::new(), Vec::new()),
        },
    };
    let count = violations.len();
    let result = json!({
        "axiom": axiom.name(),
        "method": method.name(),
        "count": count,
        "violations": violations,
    });
    let mut text = format!(
        "axiom: {}\nmethod: {}\nviolations: {}",
        axiom.name(),
        method_label(method),
        count
    );
    for line in &lines {
        text.push_str("\n  ");
        text.push_str(line);
    }
    Ok(Report {
        command: "check",
        args: json!({ "axiom": axiom.name(), "method": method.name() }),
        params: params.clone(),
        problem: Some(problem_to_json(p)),
        family: None,
        result,
        text,
        findings: count > 0,
    })
}

fn cmd_certify(
    p: &Problem,
    target: (usize, usize),
    merge: (usize, usize),
    params: &Params,
) -> Result<Report, String> {
    let cert =
        certify_impossibility(p, target, merge, &params.bounds()).map_err(|e| e.to_string())?;
    let names = p.journals();
    let (result, text, findings) = match &cert {
        Some(c) => {
            let cert_json = report::certificate_json(c);
            let validated = cert_json
                .get("validated")
                .and_then(Value::as_bool)
                .unwrap_or(false);
            let orders = |k: usize| if k == 1 { "order" } else { "orders" };
            let text = format!(
                "impossibility certificate: found\n  target {} vs {}, merge ({}, {})\n  before: {} admissible {}, every one has {}\n  after: {} admissible {}, every one has {}\n  re-validated from scratch: {}",
                names[target.0],
                names[target.1],
                names[merge.0],
                names[merge.1],
                c.before.len(),
                orders(c.before.len()),
                report::pair_text(names, target, c.before_relation),
                c.after.len(),
                orders(c.after.len()),
                report::pair_text(names, target, c.after_relation),
                yes_no(validated),
            );
            (json!({ "certificate": cert_json }), text, true)
        }
        None => (
            json!({ "certificate": null }),
            "impossibility certificate: none within the current bounds".to_string(),
            false,
        ),
    };
    Ok(Report {
        command: "certify",
        args: json!({ "target": [target.0, target.1], "merge": [merge.0, merge.1] }),
        params: params.clone(),
        problem: Some(problem_to_json(p)),
        family: None,
        result,
        text,
        findings,
    })
}

fn cmd_search(spec: &FamilySpec, mode: &SearchMode, params: &Params) -> Result<Report, String> {
    let bounds = params.bounds();
    spec.validate().map_err(|e| e.to_string())?;
    let instances = spec.instance_count().map_err(|e| e.to_string())?;
    let family_json = family_to_json(spec);
    let head = format!(
        "family: n={}, {} pair states, {} instances",
        spec.n,
        spec.alphabet.len(),
        instances
    );
    match mode {
        SearchMode::Axiom(axiom, method) => {
            let found = sweep_violations(*method, spec, *axiom, params.tie_tolerance, &bounds)
                .map_err(|e| e.to_string())?;
            let items: Vec<Value> = found
                .iter()
                .map(|f| {
                    let violation = match &f.violation {
                        SweepViolation::Ia(v) => report::ia_violation_json(v),
                        SweepViolation::Sc { problem, violation } => {
                            report::sc_violation_json(problem, violation)
                        }
                    };
                    json!({ "instance": f.instance, "violation": violation })
                })
                .collect();
            let result = json!({
                "mode": "axiom",
                "axiom": axiom.name(),
                "method": method.name(),
                "instances": instances,
                "count": found.len(),
                "findings": items,
            });
            let mut text = format!(
                "{head}\nmode: {} sweep of {}\nviolations: {}",
                axiom.name(),
                method_label(*method),
                found.len()
            );
            for f in &found {
                let line = match &f.violation {
                    SweepViolation::Ia(v) => report::ia_violation_text(v),
                    SweepViolation::Sc { problem, violation } => {
                        report::sc_violation_text(problem, violation)
                    }
                };
                text.push_str(&format!("\n  #{}: {}", f.instance, line));
            }
            Ok(Report {
                command: "search",
                args: json!({ "mode": "axiom", "axiom": axiom.name(), "method": method.name() }),
                params: params.clone(),
                problem: None,
                family: Some(family_json),
                result,
                text,
                findings: !found.is_empty(),
            })
        }
        SearchMode::Impossibility => {
            let found = sweep_impossibility(spec, &bounds).map_err(|e| e.to_string())?;
            let items: Vec<Value> = found
                .iter()
                .map(|sc| {
                    json!({
                        "instance": sc.instance,
                        "certificate": report::certificate_json(&sc.certificate),
                    })
                })
                .collect();
            let result = json!({
                "mode": "impossibility",
                "instances": instances,
                "count": found.len(),
                "certificates": items,
            });
            let mut text = format!(
                "{head}\nmode: impossibility certificate sweep\ncertificates: {}",
                found.len()
            );
            for sc in &found {
                let c = &sc.certificate;
                let names = c.problem.journals();
                text.push_str(&format!(
                    "\n  #{}: merge ({}, {}): {} before, {} after",
                    sc.instance,
                    names[c.merge.0],
                    names[c.merge.1],
                    report::pair_text(names, c.target, c.before_relation),
                    report::pair_text(names, c.target, c.after_relation),
                ));
            }
            Ok(Report {
                command: "search",
                args: json!({ "mode": "impossibility" }),
                params: params.clone(),
                problem: None,
                family: Some(family_json),
                result,
                text,
                findings: !found.is_empty(),
            })
        }
    }
}

/// Re-executes the command stored in a structured report and compares the
/// regenerated result with the stored one (numbers within 1e-9).
fn run_replay(path: &Path) -> Result<Outcome, String> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| format!("cannot read {}: {e}", path.display()))?;
    let doc: Value = serde_json::from_str(&text)
        .map_err(|e| format!("{}: not a report: {e}", path.display()))?;
    let schema = doc
        .get("schema")
        .and_then(Value::as_str)
        .ok_or("not a report: missing \"schema\"")?;
    if schema != report::SCHEMA {
        return Err(format!(
            "unsupported schema {schema:?} (expected {:?})",
            report::SCHEMA
        ));
    }
    let name = doc
        .pointer("/command/name")
        .and_then(Value::as_str)
        .ok_or("not a report: missing command name")?;
    let args = doc
        .pointer("/command/args")
        .cloned()
        .unwrap_or_else(|| json!({}));
    let params = Params::from_json(doc.get("params").ok_or("not a report: missing params")?)?;
    params.bounds().validate().map_err(|e| e.to_string())?;
    let problem = doc.get("problem").map(problem_from_value).transpose()?;
    let family = doc.get("family").map(family_from_json).transpose()?;
    let stored = doc.get("result").ok_or("not a report: missing result")?;
    let fresh = execute(name, &args, problem.as_ref(), family.as_ref(), &params)?;
    match report::compare_json(stored, &fresh, 1e-9) {
        None => {
            println!("replay ok: {name} reproduced");
            Ok(Outcome::Clean)
        }
        Some(difference) => {
            println!("replay mismatch: {difference}");
            Ok(Outcome::Findings)
        }
    }
}

/// Recomputes a report's result from its embedded inputs.
fn execute(
    name: &str,
    args: &Value,
    problem: Option<&Problem>,
    family: Option<&FamilySpec>,
    params: &Params,
) -> Result<Value, String> {
    let p = || problem.ok_or_else(|| format!("report for {name:?} does not embed a problem"));
    match name {
        "classify" => Ok(cmd_classify(p()?, params).result),
        "transform" => Ok(cmd_transform(p()?, params).result),
        "aggregate" => {
            let (a, b) = pair_from_json(args.get("merge"), "merge")?;
            Ok(cmd_aggregate(p()?, a, b, params)?.result)
        }
        "rank" => {
            let method = method_from_name(str_arg(args, "method")?)?;
            Ok(cmd_rank(p()?, method, params).result)
        }
        "sc-enumerate" => Ok(cmd_sc_enumerate(p()?, params)?.result),
        "check" => {
            let axiom = axiom_from_name(str_arg(args, "axiom")?)?;
            let method = method_from_name(str_arg(args, "method")?)?;
            Ok(cmd_check(p()?, axiom, method, params)?.result)
        }
        "certify" => {
            let target = pair_from_json(args.get("target"), "target")?;
            let merge = pair_from_json(args.get("merge"), "merge")?;
            Ok(cmd_certify(p()?, target, merge, params)?.result)
        }
        "search" => {
            let spec = family.ok_or("report for \"search\" does not embed a family")?;
            let mode = match str_arg(args, "mode")? {
                "axiom" => SearchMode::Axiom(
                    to_sweep_axiom(axiom_from_name(str_arg(args, "axiom")?)?),
                    method_from_name(str_arg(args, "method")?)?,
                ),
                "impossibility" => SearchMode::Impossibility,
                other => return Err(format!("args: unknown search mode {other:?}")),
            };
            Ok(cmd_search(spec, &mode, params)?.result)
        }
        other => Err(format!("unknown command {other:?} in report")),
    }
}

fn str_arg<'a>(args: &'a Value, key: &str) -> Result<&'a str, String> {
    args.get(key)
        .and_then(Value::as_str)
        .ok_or_else(|| format!("args: missing {key:?}"))
}

fn pair_from_json(value: Option<&Value>, what: &str) -> Result<(usize, usize), String> {
    let arr = value
        .and_then(Value::as_array)
        .filter(|a| a.len() == 2)
        .ok_or_else(|| format!("args: {what} must be a two-element array"))?;
    let a = arr[0]
        .as_u64()
        .ok_or_else(|| format!("args: {what}[0] must be a journal index"))? as usize;
    let b = arr[1]
        .as_u64()
        .ok_or_else(|| format!("args: {what}[1] must be a journal index"))? as usize;
    Ok((a, b))
}
