//! Report assembly: the structured output schema, the matching text
//! renderers' shared helpers, and the tolerant comparison used by replay.
//!
//! Every structured report is one JSON object:
//!
//! ```text
//! {
//!   "schema": "jrank-report/1",
//!   "command": { "name": ..., "args": {...} },
//!   "params": { "tie_tolerance": ..., "granularity": ..., "max_layers": ..., "cap": ... },
//!   "problem": {...},            // commands that read one problem
//!   "family": {...},             // search only
//!   "result": {...}              // command-specific
//! }
//! ```
//!
//! Reports embed everything needed to re-execute the command, which is what
//! `check --replay` does: rebuild the inputs, recompute the result, and
//! deep-compare against the stored one (numbers within 1e-9).

use jrank_core::axioms::{IaViolation, ImpossibilityCertificate};
use jrank_core::decomp::SearchBounds;
use jrank_core::methods::Method;
use jrank_core::order::{Relation, WeakOrder};
use jrank_core::rational::{format_rational, parse_rational, rat};
use jrank_core::sc::{DominanceWitness, ScViolation};
use jrank_core::search::{ClassConstraints, FamilySpec};
use jrank_core::{Problem, Rational};
use serde_json::{json, Map, Value};

pub const SCHEMA: &str = "jrank-report/1";

/// The global knobs every command runs under; serialized into each report.
#[derive(Debug, Clone, PartialEq)]
pub struct Params {
    pub tie_tolerance: f64,
    pub granularity: Rational,
    pub max_layers: Option<usize>,
    pub cap: usize,
}

impl Params {
    pub fn bounds(&self) -> SearchBounds {
        SearchBounds {
            granularity: self.granularity,
            max_layers: self.max_layers,
            cap: self.cap,
        }
    }

    pub fn to_json(&self) -> Value {
        json!({
            "tie_tolerance": self.tie_tolerance,
            "granularity": format_rational(self.granularity),
            "max_layers": self.max_layers,
            "cap": self.cap,
        })
    }

    pub fn from_json(value: &Value) -> Result<Params, String> {
        let tie_tolerance = value
            .get("tie_tolerance")
            .and_then(Value::as_f64)
            .ok_or("params: missing tie_tolerance")?;
        let granularity = value
            .get("granularity")
            .and_then(Value::as_str)
            .ok_or("params: missing granularity")?;
        let granularity = parse_rational(granularity).map_err(|e| e.to_string())?;
        let max_layers = match value.get("max_layers") {
            None | Some(Value::Null) => None,
            Some(v) => Some(
                v.as_u64()
                    .ok_or("params: max_layers must be an integer or null")?
                    as usize,
            ),
        };
        let cap = value
            .get("cap")
            .and_then(Value::as_u64)
            .ok_or("params: missing cap")? as usize;
        Ok(Params {
            tie_tolerance,
            granularity,
            max_layers,
            cap,
        })
    }
}

/// One finished command: everything `emit` needs for either output mode.
pub struct Report {
    pub command: &'static str,
    pub args: Value,
    pub params: Params,
    pub problem: Option<Value>,
    pub family: Option<Value>,
    pub result: Value,
    pub text: String,
    pub findings: bool,
}

impl Report {
    pub fn to_json(&self) -> Value {
        let mut doc = Map::new();
        doc.insert("schema".into(), json!(SCHEMA));
        doc.insert(
            "command".into(),
            json!({ "name": self.command, "args": self.args }),
        );
        doc.insert("params".into(), self.params.to_json());
        if let Some(p) = &self.problem {
            doc.insert("problem".into(), p.clone());
        }
        if let Some(f) = &self.family {
            doc.insert("family".into(), f.clone());
        }
        doc.insert("result".into(), self.result.clone());
        Value::Object(doc)
    }
}

pub fn relation_str(r: Relation) -> &'static str {
    match r {
        Relation::Above => "above",
        Relation::Tied => "tied",
        Relation::Below => "below",
    }
}

pub fn method_label(m: Method) -> &'static str {
    match m {
        Method::LeastSquares => "least squares",
        Method::Flat => "flat",
        Method::NetSum => "net sum",
    }
}

/// Six decimal places — the text-mode score precision.
pub fn fmt_score(x: f64) -> String {
    format!("{x:.6}")
}

/// `"J1 ≻ J2"`, `"J1 ∼ J2"`, ... for text output.
pub fn pair_text(names: &[String], pair: (usize, usize), rel: Relation) -> String {
    format!("{} {} {}", names[pair.0], rel.symbol(), names[pair.1])
}

pub fn order_json(order: &WeakOrder, names: &[String]) -> Value {
    let ranks: Vec<usize> = (0..order.n()).map(|i| order.rank(i)).collect();
    let classes: Vec<Vec<&String>> = order
        .classes()
        .iter()
        .map(|class| class.iter().map(|&i| &names[i]).collect())
        .collect();
    json!({ "ranks": ranks, "classes": classes, "text": order.to_text(names) })
}

pub fn ia_violation_json(v: &IaViolation) -> Value {
    let names = v.problem.journals();
    json!({
        "mode": v.mode.name(),
        "merge": [v.merge.0, v.merge.1],
        "merge_names": [names[v.merge.0], names[v.merge.1]],
        "pair": [v.pair.0, v.pair.1],
        "pair_names": [names[v.pair.0], names[v.pair.1]],
        "before": relation_str(v.before),
        "after": relation_str(v.after),
    })
}

pub fn ia_violation_text(v: &IaViolation) -> String {
    let names = v.problem.journals();
    format!(
        "merging ({}, {}): {} became {}",
        names[v.merge.0],
        names[v.merge.1],
        pair_text(names, v.pair, v.before),
        pair_text(names, v.pair, v.after),
    )
}

pub fn witness_json(w: &DominanceWitness) -> Value {
    let layers: Vec<Vec<Vec<String>>> = w
        .decomposition
        .layers
        .iter()
        .map(|layer| {
            let lp = &layer.problem;
            (0..lp.n())
                .map(|i| lp.row(i).iter().map(|c| format_rational(*c)).collect())
                .collect()
        })
        .collect();
    let mappings: Vec<Value> = w
        .mappings
        .iter()
        .map(|m| {
            json!({
                "layer": m.layer,
                "pairs": m.pairs.iter().map(|&(k, g)| json!([k, g])).collect::<Vec<_>>(),
            })
        })
        .collect();
    json!({ "strict": w.strict, "layers": layers, "mappings": mappings })
}

pub fn sc_violation_json(problem: &Problem, v: &ScViolation) -> Value {
    let names = problem.journals();
    json!({
        "pair": [v.pair.0, v.pair.1],
        "pair_names": [names[v.pair.0], names[v.pair.1]],
        "observed": relation_str(v.observed),
        "forced": if v.witness.strict { "above" } else { "at-least-tied" },
        "witness": witness_json(&v.witness),
    })
}

pub fn sc_violation_text(problem: &Problem, v: &ScViolation) -> String {
    let names = problem.journals();
    let forced = if v.witness.strict {
        pair_text(names, v.pair, Relation::Above)
    } else {
        format!("{} ⪰ {}", names[v.pair.0], names[v.pair.1])
    };
    format!(
        "scores put {}, but self-consistency forces {}",
        pair_text(names, v.pair, v.observed),
        forced,
    )
}

/// Full serialization of a certificate, including both admissible sets, so
/// third parties can re-verify without re-running the search. `validated`
/// reports an actual from-scratch revalidation done at serialization time.
pub fn certificate_json(c: &ImpossibilityCertificate) -> Value {
    let names = c.problem.journals();
    let merged = c
        .problem
        .aggregate(c.merge.0, c.merge.1)
        .expect("certificate pairs are valid");
    let merged_names = merged.journals();
    json!({
        "target": [c.target.0, c.target.1],
        "target_names": [names[c.target.0], names[c.target.1]],
        "merge": [c.merge.0, c.merge.1],
        "merge_names": [names[c.merge.0], names[c.merge.1]],
        "before_relation": relation_str(c.before_relation),
        "after_relation": relation_str(c.after_relation),
        "before_count": c.before.len(),
        "after_count": c.after.len(),
        "before": c.before.iter().map(|o| order_json(o, names)).collect::<Vec<_>>(),
        "after": c.after.iter().map(|o| order_json(o, merged_names)).collect::<Vec<_>>(),
        "validated": c.validate(),
    })
}

pub fn constraints_to_json(c: &ClassConstraints) -> Value {
    let mut list = Vec::new();
    if c.balanced {
        list.push("balanced");
    }
    if c.unweighted {
        list.push("unweighted");
    }
    if c.loopless {
        list.push("loopless");
    }
    if c.extremal {
        list.push("extremal");
    }
    json!(list)
}

pub fn constraints_from_json(value: &Value) -> Result<ClassConstraints, String> {
    let list = value
        .as_array()
        .ok_or("family: constraints must be an array")?;
    let mut c = ClassConstraints::default();
    for item in list {
        match item.as_str() {
            Some("balanced") => c.balanced = true,
            Some("unweighted") => c.unweighted = true,
            Some("loopless") => c.loopless = true,
            Some("extremal") => c.extremal = true,
            other => return Err(format!("family: unknown class constraint {other:?}")),
        }
    }
    Ok(c)
}

pub fn family_to_json(spec: &FamilySpec) -> Value {
    let alphabet: Vec<[String; 2]> = spec
        .alphabet
        .iter()
        .map(|&(a, b)| [format_rational(a), format_rational(b)])
        .collect();
    json!({
        "n": spec.n,
        "constraints": constraints_to_json(&spec.constraints),
        "alphabet": alphabet,
        "max_n": spec.max_n,
        "dedup_isomorphic": spec.dedup_isomorphic,
    })
}

pub fn family_from_json(value: &Value) -> Result<FamilySpec, String> {
    let n = value
        .get("n")
        .and_then(Value::as_u64)
        .ok_or("family: missing n")? as usize;
    let max_n = value
        .get("max_n")
        .and_then(Value::as_u64)
        .ok_or("family: missing max_n")? as usize;
    let dedup_isomorphic = value
        .get("dedup_isomorphic")
        .and_then(Value::as_bool)
        .ok_or("family: missing dedup_isomorphic")?;
    let constraints = constraints_from_json(
        value
            .get("constraints")
            .ok_or("family: missing constraints")?,
    )?;
    let alphabet_value = value
        .get("alphabet")
        .and_then(Value::as_array)
        .ok_or("family: missing alphabet")?;
    let mut alphabet = Vec::new();
    for entry in alphabet_value {
        let pair = entry
            .as_array()
            .filter(|a| a.len() == 2)
            .ok_or("family: each alphabet entry must be a two-element array")?;
        let mut cells = [rat(0, 1); 2];
        for (slot, cell) in pair.iter().enumerate() {
            let text = match cell {
                Value::Number(n) => n.to_string(),
                Value::String(s) => s.clone(),
                other => return Err(format!("family: alphabet cell {other} is not a number")),
            };
            cells[slot] = parse_rational(&text).map_err(|e| e.to_string())?;
        }
        alphabet.push((cells[0], cells[1]));
    }
    Ok(FamilySpec {
        n,
        constraints,
        alphabet,
        max_n,
        dedup_isomorphic,
    })
}

/// Deep comparison with a numeric tolerance; returns the path of the first
/// difference, or `None` when the documents agree.
pub fn compare_json(expected: &Value, actual: &Value, tol: f64) -> Option<String> {
    fn walk(expected: &Value, actual: &Value, tol: f64, path: &str) -> Option<String> {
        match (expected, actual) {
            (Value::Number(a), Value::Number(b)) => match (a.as_f64(), b.as_f64()) {
                (Some(x), Some(y)) if (x - y).abs() <= tol => None,
                _ if a == b => None,
                _ => Some(format!("{path}: {a} vs {b}")),
            },
            (Value::Array(a), Value::Array(b)) => {
                if a.len() != b.len() {
                    return Some(format!("{path}: array length {} vs {}", a.len(), b.len()));
                }
                a.iter()
                    .zip(b)
                    .enumerate()
                    .find_map(|(i, (x, y))| walk(x, y, tol, &format!("{path}[{i}]")))
            }
            (Value::Object(a), Value::Object(b)) => {
                for key in a.keys() {
                    if !b.contains_key(key) {
                        return Some(format!("{path}.{key}: missing in replayed result"));
                    }
                }
                for key in b.keys() {
                    if !a.contains_key(key) {
                        return Some(format!("{path}.{key}: extra in replayed result"));
                    }
                }
                a.iter()
                    .find_map(|(k, x)| walk(x, &b[k], tol, &format!("{path}.{k}")))
            }
            (a, b) if a == b => None,
            (a, b) => Some(format!("{path}: {a} vs {b}")),
        }
    }
    walk(expected, actual, tol, "result")
}
