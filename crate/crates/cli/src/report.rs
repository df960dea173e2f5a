//! The JSON report envelope every subcommand prints to standard output.
//!
//! A report is a single JSON object with fixed top-level fields; payloads
//! are command-specific. Objects serialize with sorted keys, and all
//! sampling is seed-driven, so identical argv and seed produce the same
//! bytes.

use serde::Serialize;
use serde_json::{json, Value};

use leibniz_core::analysis::{
    CheckReport, Counterexample, DegreeBehavior, Fingerprint, MonomialConstants, ProbeResult,
};
use leibniz_core::scalar::ScalarElem;

#[derive(Debug, Serialize)]
pub struct ReportDoc {
    pub command: String,
    pub status: String,
    pub seed: u64,
    pub inputs: Vec<String>,
    pub payload: Value,
    pub counts: Value,
}

impl ReportDoc {
    pub fn new(command: &str, seed: u64, inputs: Vec<String>) -> Self {
        Self {
            command: command.to_string(),
            status: "pass".to_string(),
            seed,
            inputs,
            payload: json!({}),
            counts: json!({}),
        }
    }

    /// Folds a check into the report: counterexamples flip status to fail.
    pub fn with_check(mut self, check: &CheckReport) -> Self {
        if !check.passes() {
            self.status = "fail".to_string();
        }
        self.payload = check_payload(check);
        self.counts = check_counts(check);
        self
    }
}

pub fn check_payload(check: &CheckReport) -> Value {
    json!({
        "counterexamples": check
            .counterexamples
            .iter()
            .map(counterexample_value)
            .collect::<Vec<_>>(),
    })
}

pub fn check_counts(check: &CheckReport) -> Value {
    json!({
        "total": check.total,
        "passed": check.passed,
        "skipped": check.skipped,
        "counterexamples": check.counterexamples.len(),
    })
}

pub fn counterexample_value(cex: &Counterexample) -> Value {
    json!({
        "inputs": cex.inputs,
        "lhs": cex.lhs.to_string(),
        "rhs": cex.rhs.to_string(),
        "first_diff_power": cex.first_diff_power,
    })
}

pub fn fingerprint_payload(fp: &Fingerprint) -> Value {
    let table = |samples: &[((usize, ScalarElem), ScalarElem)]| {
        samples
            .iter()
            .map(|((k, point), value)| {
                json!({
                    "k": k,
                    "point": point.to_string(),
                    "value": value.to_string(),
                })
            })
            .collect::<Vec<_>>()
    };
    json!({
        "kmax": fp.kmax,
        "psi": table(&fp.psi_samples),
        "phi": table(&fp.phi_samples),
    })
}

pub fn behavior_payload(behavior: &DegreeBehavior) -> Value {
    match behavior.witness() {
        None => json!({ "behavior": behavior.label() }),
        Some((input, image)) => json!({
            "behavior": behavior.label(),
            "witness": { "input": input, "image": image.to_string() },
        }),
    }
}

pub fn constants_payload(constants: &MonomialConstants) -> Value {
    json!({
        "rows": constants
            .rows
            .iter()
            .map(|(n, c, d)| json!({
                "n": n,
                "c": c.to_string(),
                "d": d.to_string(),
            }))
            .collect::<Vec<_>>(),
        "uniform": constants
            .uniform()
            .map(|(c, d)| json!({ "c": c.to_string(), "d": d.to_string() })),
    })
}

pub fn probe_payload(result: &ProbeResult) -> Value {
    json!({
        "tested": result.tested,
        "counterexample": result.counterexample.as_ref().map(|cex| json!({
            "p": cex.p.to_string(),
            "q": cex.q.to_string(),
            "z0": cex.z0.to_string(),
            "shared_value": cex.shared_value.to_string(),
            "tp_value": cex.tp_value.to_string(),
            "tq_value": cex.tq_value.to_string(),
        })),
    })
}
