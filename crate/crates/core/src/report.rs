//! Versioned JSON report.
//!
//! ```text
//! {
//!   "schema": "spatial-milnor-report", "version": 1,
//!   "command": "...", "input": "...", "max_degree": 3, "exact": true,
//!   "generators": [...],                  // present
//!   "relators": {"r1": "<series>"},       // present
//!   "verdicts": {...}, "witnesses": {...},
//!   "mu_bar": {"123": 1, ...},            // nonzero coefficients
//!   "lambda": {"1": {"relators": 3, "links": 3}},
//!   "flags": [...]
//! }
//! ```
//!
//! Multi-index keys concatenate the colors ("123"); if any color exceeds 9
//! they are comma separated ("1,10"). Coefficients are JSON integers when
//! they fit in 64 bits and decimal strings otherwise. A `null` lambda means
//! no value up to the truncation degree.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::Serialize;
use serde_json::Value;

use crate::graph::{Cycle, CycleSelection};
use crate::ring::Color;

pub const SCHEMA: &str = "spatial-milnor-report";
pub const VERSION: u32 = 1;

#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub schema: &'static str,
    pub version: u32,
    pub command: String,
    pub input: String,
    pub max_degree: usize,
    pub exact: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub generators: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub relators: Option<BTreeMap<String, String>>,
    pub verdicts: BTreeMap<String, Value>,
    pub witnesses: BTreeMap<String, Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub mu_bar: Option<BTreeMap<String, Value>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lambda: Option<BTreeMap<String, LambdaJson>>,
    pub flags: Vec<String>,
}

#[derive(Debug, Clone, Copy, Serialize, PartialEq, Eq)]
pub struct LambdaJson {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub relators: Option<Option<usize>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub links: Option<Option<usize>>,
}

impl Report {
    pub fn new(command: &str, input: &str, max_degree: usize, exact: bool) -> Self {
        let mut flags = Vec::new();
        if !exact {
            flags.push("approximate: truncation degree below the number of components".into());
        }
        Self {
            schema: SCHEMA,
            version: VERSION,
            command: command.into(),
            input: input.into(),
            max_degree,
            exact,
            generators: None,
            relators: None,
            verdicts: BTreeMap::new(),
            witnesses: BTreeMap::new(),
            mu_bar: None,
            lambda: None,
            flags,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

pub fn multi_index_key(index: &[Color]) -> String {
    if index.iter().all(|&c| c < 10) {
        index.iter().map(|c| c.to_string()).collect()
    } else {
        index.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(",")
    }
}

pub fn coefficient(c: &BigInt) -> Value {
    match c.to_i64() {
        Some(v) => Value::from(v),
        None => Value::from(c.to_string()),
    }
}

/// Signed edge steps of a cycle, `+e` along the edge, `-e` against it.
pub fn cycle_steps(cycle: &Cycle) -> Vec<String> {
    cycle
        .steps()
        .iter()
        .map(|s| if s.forward { format!("+{}", s.edge) } else { format!("-{}", s.edge) })
        .collect()
}

pub fn selection(sel: &CycleSelection) -> Value {
    let map: serde_json::Map<String, Value> = sel
        .cycles()
        .iter()
        .map(|(c, cy)| (c.to_string(), Value::from(cycle_steps(cy))))
        .collect();
    Value::Object(map)
}
