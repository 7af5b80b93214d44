//! Report assembly. Reports are plain JSON values with alphabetically
//! ordered keys, so equal inputs produce byte-identical output; wall-clock
//! timings are only included on request.

use serde_json::{json, Map, Value};
use sha2::{Digest, Sha256};

use crate::runner::TaskOutcome;
use crate::scenario::{BuildOutcome, Scenario};

pub struct ReportInput<'a> {
    pub scenario: &'a Scenario,
    pub raw_bytes: &'a [u8],
    pub seed: u64,
    pub built: &'a BuildOutcome,
    pub outcomes: &'a [TaskOutcome],
    pub timings: bool,
    pub total_millis: u128,
}

pub fn digest(bytes: &[u8]) -> String {
    let hash = Sha256::digest(bytes);
    let mut out = String::with_capacity(7 + 64);
    out.push_str("sha256:");
    for b in hash {
        out.push_str(&format!("{b:02x}"));
    }
    out
}

pub fn assemble(input: &ReportInput) -> Value {
    let sc = input.scenario;
    let mut warnings: Vec<String> = Vec::new();
    if sc.prime <= 5 {
        warnings.push(format!(
            "prime {} is at most 5: small primes allow extra isomorphisms between the \
             standard constructions; all computations remain exact",
            sc.prime
        ));
    }
    for o in input.outcomes {
        warnings.extend(o.warnings.iter().cloned());
    }
    warnings.sort();
    warnings.dedup();

    let objects: Vec<Value> = input
        .built
        .iter()
        .map(|(name, kind, r)| match r {
            Ok(obj) => json!({
                "name": name,
                "kind": kind,
                "status": "ok",
                "dim": obj.dim(),
            }),
            Err(e) => json!({
                "name": name,
                "kind": kind,
                "status": "error",
                "error": e,
            }),
        })
        .collect();

    let tasks: Vec<Value> = sc
        .tasks
        .iter()
        .zip(input.outcomes)
        .enumerate()
        .map(|(i, (decl, out))| {
            let mut row = Map::new();
            row.insert("index".into(), json!(i));
            row.insert("op".into(), json!(decl.op));
            row.insert("target".into(), json!(decl.target));
            if let Some(b) = decl.block {
                row.insert("block".into(), json!(b));
            }
            if decl.bosonize {
                row.insert("bosonize".into(), json!(true));
            }
            if let Some(o) = &decl.other {
                row.insert("other".into(), json!(o));
                if let Some(ob) = decl.other_block {
                    row.insert("other_block".into(), json!(ob));
                }
            }
            match &out.result {
                Ok(v) => {
                    row.insert("status".into(), json!("ok"));
                    row.insert("result".into(), v.clone());
                }
                Err(e) => {
                    row.insert("status".into(), json!("error"));
                    row.insert("error".into(), json!(e));
                }
            }
            if input.timings {
                row.insert("millis".into(), json!(out.millis));
            }
            Value::Object(row)
        })
        .collect();

    let ok = input.outcomes.iter().all(|o| o.result.is_ok());
    let mut report = json!({
        "schema": "report/v1",
        "tool": {
            "name": env!("CARGO_PKG_NAME"),
            "version": env!("CARGO_PKG_VERSION"),
        },
        "scenario": {
            "name": sc.name,
            "prime": sc.prime,
            "seed": input.seed,
            "digest": digest(input.raw_bytes),
        },
        "warnings": warnings,
        "objects": objects,
        "tasks": tasks,
        "ok": ok,
    });
    if input.timings {
        report["total_millis"] = json!(input.total_millis);
    }
    report
}

pub fn render_json(report: &Value) -> String {
    let mut out = serde_json::to_string_pretty(report).expect("report serializes");
    out.push('\n');
    out
}

pub fn render_text(report: &Value) -> String {
    let mut out = String::new();
    let sc = &report["scenario"];
    out.push_str(&format!(
        "scenario {} (p = {}, seed = {})\n",
        sc["name"].as_str().unwrap_or("?"),
        sc["prime"],
        sc["seed"]
    ));
    out.push_str(&format!("digest {}\n", sc["digest"].as_str().unwrap_or("?")));
    for w in report["warnings"].as_array().into_iter().flatten() {
        out.push_str(&format!("warning: {}\n", w.as_str().unwrap_or("?")));
    }
    for o in report["objects"].as_array().into_iter().flatten() {
        let name = o["name"].as_str().unwrap_or("?");
        let kind = o["kind"].as_str().unwrap_or("?");
        if o["status"] == "ok" {
            out.push_str(&format!("object {name} ({kind}): dim {}\n", o["dim"]));
        } else {
            out.push_str(&format!(
                "object {name} ({kind}): ERROR {}\n",
                o["error"].as_str().unwrap_or("?")
            ));
        }
    }
    for t in report["tasks"].as_array().into_iter().flatten() {
        let mut head = format!(
            "[{}] {} {}",
            t["index"],
            t["op"].as_str().unwrap_or("?"),
            t["target"].as_str().unwrap_or("?")
        );
        if let Some(b) = t.get("block").and_then(Value::as_u64) {
            head.push_str(&format!(" block {b}"));
        }
        if t.get("bosonize").is_some() {
            head.push_str(" bosonized");
        }
        if let Some(o) = t.get("other").and_then(Value::as_str) {
            head.push_str(&format!(" vs {o}"));
        }
        if t["status"] == "ok" {
            let body = serde_json::to_string(&t["result"]).expect("result serializes");
            out.push_str(&format!("{head}: {body}\n"));
        } else {
            out.push_str(&format!(
                "{head}: ERROR {}\n",
                t["error"].as_str().unwrap_or("?")
            ));
        }
        if let Some(ms) = t.get("millis") {
            out.push_str(&format!("    ({ms} ms)\n"));
        }
    }
    let ok = report["ok"].as_bool().unwrap_or(false);
    let count = report["tasks"].as_array().map_or(0, Vec::len);
    out.push_str(&format!(
        "result: {} ({count} tasks)\n",
        if ok { "ok" } else { "failed" }
    ));
    out
}
