//! Experiment reports and their JSON, CSV and text renderings.
//!
//! Rationals are always written as decimal digit strings, never floats.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{io::emit_graph6, Graph, VertexSet};
use crate::ratio::{self, Rational};

pub mod rational_serde {
    use serde::{de::Error as _, Deserialize, Deserializer, Serializer};

    use crate::ratio::{self, Rational};

    pub fn serialize<S: Serializer>(r: &Rational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&ratio::to_string(r))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rational, D::Error> {
        let text = String::deserialize(d)?;
        ratio::parse(&text).ok_or_else(|| D::Error::custom(format!("not a rational: {text:?}")))
    }
}

pub mod biguint_serde {
    use num_bigint::BigUint;
    use serde::{de::Error as _, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &BigUint, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&v.to_str_radix(10))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigUint, D::Error> {
        let text = String::deserialize(d)?;
        BigUint::parse_bytes(text.as_bytes(), 10)
            .ok_or_else(|| D::Error::custom(format!("not a decimal integer: {text:?}")))
    }
}

/// A graph as its graph6 string.
pub mod graph6_serde {
    use serde::{de::Error as _, Deserialize, Deserializer, Serializer};

    use crate::graph::{io, Graph};

    pub fn serialize<S: Serializer>(g: &Graph, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&io::emit_graph6(g))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Graph, D::Error> {
        let text = String::deserialize(d)?;
        io::parse_graph6(&text).map_err(D::Error::custom)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Format {
    Json,
    Csv,
    Text,
}

impl std::str::FromStr for Format {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "json" => Ok(Format::Json),
            "csv" => Ok(Format::Csv),
            "text" => Ok(Format::Text),
            other => Err(format!("unknown format {other:?} (json, csv, text)")),
        }
    }
}

/// One graph x invariant value.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Record {
    pub graph: String,
    pub graph6: String,
    pub invariant: String,
    pub value: String,
    /// Numerator and denominator for rational values, empty otherwise.
    pub num: String,
    pub den: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub certificate: Option<serde_json::Value>,
}

impl Record {
    pub fn text(graph: &str, g: &Graph, invariant: &str, value: impl Into<String>) -> Self {
        Record {
            graph: graph.into(),
            graph6: emit_graph6(g),
            invariant: invariant.into(),
            value: value.into(),
            num: String::new(),
            den: String::new(),
            certificate: None,
        }
    }

    pub fn rational(graph: &str, g: &Graph, invariant: &str, r: &Rational) -> Self {
        Record {
            num: r.numer().to_str_radix(10),
            den: r.denom().to_str_radix(10),
            ..Record::text(graph, g, invariant, ratio::to_string(r))
        }
    }

    pub fn with_certificate<T: Serialize>(mut self, cert: &T) -> Self {
        self.certificate = Some(serde_json::to_value(cert).expect("certificates serialize"));
        self
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Severity {
    /// Falsifies an open question.
    Finding,
    /// Contradicts a proven statement: an implementation bug.
    Violation,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Counterexample {
    pub severity: Severity,
    pub statement: String,
    pub graph: String,
    pub graph6: String,
    pub detail: String,
    pub certificate: serde_json::Value,
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct ExperimentReport {
    pub command: String,
    pub params: BTreeMap<String, String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rng: Option<String>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub summary: BTreeMap<String, String>,
    pub results: Vec<Record>,
    pub counterexamples: Vec<Counterexample>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub runtime_ms: Option<u64>,
}

impl ExperimentReport {
    pub fn new(command: &str) -> Self {
        ExperimentReport {
            command: command.into(),
            ..Default::default()
        }
    }

    pub fn param(&mut self, key: &str, value: impl ToString) -> &mut Self {
        self.params.insert(key.into(), value.to_string());
        self
    }

    pub fn summarize(&mut self, key: &str, value: impl ToString) -> &mut Self {
        self.summary.insert(key.into(), value.to_string());
        self
    }

    pub fn has_violations(&self) -> bool {
        self.counterexamples
            .iter()
            .any(|c| c.severity == Severity::Violation)
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("reports serialize");
        s.push('\n');
        s
    }

    /// One row per graph x invariant; certificates are left to JSON.
    pub fn to_csv(&self) -> Result<String> {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(["graph", "graph6", "invariant", "value", "num", "den"])
            .map_err(csv_err)?;
        for r in &self.results {
            w.write_record([&r.graph, &r.graph6, &r.invariant, &r.value, &r.num, &r.den])
                .map_err(csv_err)?;
        }
        for c in &self.counterexamples {
            let severity = match c.severity {
                Severity::Finding => "finding",
                Severity::Violation => "violation",
            };
            w.write_record([&c.graph, &c.graph6, severity, &c.statement, "", ""])
                .map_err(csv_err)?;
        }
        let bytes = w.into_inner().map_err(|e| Error::Io(e.into_error()))?;
        Ok(String::from_utf8(bytes).expect("csv of utf-8 fields"))
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("command: {}\n", self.command);
        for (k, v) in &self.params {
            out.push_str(&format!("param {k} = {v}\n"));
        }
        if let Some(seed) = self.seed {
            out.push_str(&format!("seed: {seed}\n"));
        }
        if let Some(rng) = &self.rng {
            out.push_str(&format!("rng: {rng}\n"));
        }
        for r in &self.results {
            out.push_str(&format!("{} [{}] {} = {}\n", r.graph, r.graph6, r.invariant, r.value));
        }
        for (k, v) in &self.summary {
            out.push_str(&format!("{k}: {v}\n"));
        }
        out.push_str(&format!("counterexamples: {}\n", self.counterexamples.len()));
        for c in &self.counterexamples {
            out.push_str(&format!(
                "  {:?} {} on {} [{}]: {}\n",
                c.severity, c.statement, c.graph, c.graph6, c.detail
            ));
        }
        if let Some(ms) = self.runtime_ms {
            out.push_str(&format!("runtime_ms: {ms}\n"));
        }
        out
    }

    pub fn render(&self, format: Format) -> Result<String> {
        match format {
            Format::Json => Ok(self.to_json()),
            Format::Csv => self.to_csv(),
            Format::Text => Ok(self.to_text()),
        }
    }
}

fn csv_err(e: csv::Error) -> Error {
    Error::Io(std::io::Error::other(e))
}

/// Recomputes `|I| / (|I| + |N(I)|)` for a serialized expansion witness from
/// the graph6 string and member list alone, checking independence edge by
/// edge. Shares no code with the searches.
pub fn reverify_expansion(graph6: &str, members: &[usize]) -> Result<Rational> {
    let g = crate::graph::io::parse_graph6(graph6)?;
    let n = g.n();
    if members.is_empty() || members.iter().any(|&v| v >= n) {
        return Err(Error::Certificate("witness members out of range or empty".into()));
    }
    let mut inside = vec![false; n];
    for &v in members {
        inside[v] = true;
    }
    let mut boundary = vec![false; n];
    for (u, v) in g.edges() {
        if inside[u] && inside[v] {
            return Err(Error::Certificate(format!("edge {u}-{v} inside the witness")));
        }
        if inside[u] {
            boundary[v] = true;
        }
        if inside[v] {
            boundary[u] = true;
        }
    }
    let size = inside.iter().filter(|&&b| b).count();
    let nb = boundary.iter().filter(|&&b| b).count();
    Ok(ratio::ratio(size, size + nb))
}

/// Members of a serialized [`VertexSet`] inside a certificate value.
pub fn members_of(value: &serde_json::Value) -> Option<Vec<usize>> {
    let set: VertexSet = serde_json::from_value(value.clone()).ok()?;
    Some(set.to_vec())
}
