use std::collections::BTreeMap;
use std::fmt::Write as _;

use postulate::algorithms::DjKind;
use postulate::protocols::{BellKind, Correction, DegeneracyReport};
use serde::{Deserialize, Serialize};

use crate::config::{Format, RunConfig};

pub const SCHEMA: &str = "postulate-sim/1";

/// Everything a run produced. Serialized field order is declaration order and
/// all maps are ordered, so equal reports serialize to equal bytes.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunReport {
    pub schema: String,
    pub version: String,
    pub config: RunConfig,
    pub outcomes: Vec<Trial>,
    /// Observed relative frequency of each readout.
    pub frequencies: BTreeMap<String, f64>,
    /// Exact probability of each readout with nonzero weight.
    pub born_probabilities: BTreeMap<String, f64>,
    /// Trials that met the command's success criterion.
    pub successes: usize,
    /// Present when strict semantics left the post-measurement state undetermined.
    pub blocked: Option<DegeneracyReport>,
}

impl RunReport {
    pub fn new(config: RunConfig) -> Self {
        Self {
            schema: SCHEMA.to_string(),
            version: env!("CARGO_PKG_VERSION").to_string(),
            config,
            outcomes: Vec::new(),
            frequencies: BTreeMap::new(),
            born_probabilities: BTreeMap::new(),
            successes: 0,
            blocked: None,
        }
    }

    pub fn is_blocked(&self) -> bool {
        self.blocked.is_some()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "command", rename_all = "lowercase")]
pub enum Trial {
    Teleport {
        trial: usize,
        outcome: BellKind,
        bits: String,
        probability: f64,
        correction: Correction,
        /// Bob's corrected qubit as `[[re, im], [re, im]]`.
        bob_state: Option<Vec<[f64; 2]>>,
        fidelity: Option<f64>,
    },
    Dj {
        trial: usize,
        measured: String,
        verdict: DjKind,
        determined: bool,
    },
    Simon {
        trial: usize,
        samples: Vec<String>,
        /// `None` when the samples never reached rank n-1.
        period: Option<String>,
    },
    Grover {
        trial: usize,
        found: String,
        marked: bool,
    },
    Measure {
        trial: usize,
        index: usize,
        eigenvalue: f64,
        probability: f64,
        determined: bool,
        post_state: Option<Vec<[f64; 2]>>,
    },
}

pub fn emit_report(report: &RunReport, format: Format) -> Vec<u8> {
    match format {
        Format::Json => {
            let mut out = serde_json::to_vec_pretty(report).expect("report is plain data");
            out.push(b'\n');
            out
        }
        Format::Text => text_summary(report).into_bytes(),
    }
}

pub fn parse_report(bytes: &[u8]) -> serde_json::Result<RunReport> {
    serde_json::from_slice(bytes)
}

fn text_summary(report: &RunReport) -> String {
    let c = &report.config;
    let mut s = String::new();
    let _ = writeln!(
        s,
        "{} {}  mode={} seed={} trials={}",
        report.schema,
        c.command.name(),
        c.mode,
        c.seed,
        c.trials
    );
    if let Some(b) = &report.blocked {
        let _ = writeln!(
            s,
            "BLOCKED: degenerate observable (dim {}, {} eigenvalues, multiplicities {:?}); post-measurement state undetermined",
            b.dimension, b.distinct_eigenvalues, b.multiplicities
        );
    }
    let _ = writeln!(s, "successes: {}/{}", report.successes, report.outcomes.len());

    const MAX_ROWS: usize = 16;
    let _ = writeln!(s, "{:<20} {:>10} {:>10}", "readout", "observed", "born");
    let keys: std::collections::BTreeSet<&String> = report
        .frequencies
        .keys()
        .chain(report.born_probabilities.keys())
        .collect();
    for key in keys.iter().take(MAX_ROWS) {
        let cell = |m: &BTreeMap<String, f64>| {
            m.get(*key).map_or_else(|| "-".to_string(), |v| format!("{v:.4}"))
        };
        let _ = writeln!(
            s,
            "{:<20} {:>10} {:>10}",
            key,
            cell(&report.frequencies),
            cell(&report.born_probabilities)
        );
    }
    if keys.len() > MAX_ROWS {
        let _ = writeln!(s, "... {} more readouts", keys.len() - MAX_ROWS);
    }
    s
}
