//! The command-line result document. `--json` prints it with serde; the
//! human-readable form is rendered from the same value.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::parse::SourceSpan;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct OutputDocument {
    pub schema_version: u32,
    /// The arguments the command was invoked with, program name excluded.
    pub command: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub result: Option<Payload>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub diagnostics: Vec<Diagnostic>,
}

impl OutputDocument {
    pub fn new(command: Vec<String>) -> Self {
        OutputDocument { schema_version: SCHEMA_VERSION, command, ..Default::default() }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Payload {
    /// `solved`, `false`, `wrong`, `yes`, `no(false)`, `no(wrong)`, `no(?)`,
    /// `valid`, `typed`, `no`, `consistent` or `inconsistent`.
    pub outcome: String,
    /// Variable to printed term.
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub bindings: BTreeMap<String, String>,
    /// Variable to printed type.
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub types: BTreeMap<String, String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub principal: Option<TypingDoc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub constraints: Option<ConstraintDoc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub steps: Option<usize>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub trace: Vec<TraceEntry>,
    /// Command-specific lines: definitions, signatures, counters.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub details: Vec<String>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct TypingDoc {
    pub context: BTreeMap<String, String>,
    #[serde(rename = "type")]
    pub ty: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConstraintDoc {
    #[serde(default, rename = "type", skip_serializing_if = "Option::is_none")]
    pub ty: Option<String>,
    pub terms: Vec<String>,
    pub types: Vec<String>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct TraceEntry {
    /// Rewrite rule number for solver traces; absent for resolution traces.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rule: Option<u8>,
    pub acted_on: String,
    pub result: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Diagnostic {
    pub severity: Severity,
    pub message: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub span: Option<SourceSpan>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Severity {
    Error,
    Warning,
}

impl Diagnostic {
    pub fn error(message: impl Into<String>, span: Option<SourceSpan>) -> Self {
        Diagnostic { severity: Severity::Error, message: message.into(), span }
    }
}

fn braces<'a>(pairs: impl Iterator<Item = (&'a String, &'a String)>, sep: &str) -> String {
    let body: Vec<String> = pairs.map(|(k, v)| format!("{k}{sep}{v}")).collect();
    format!("{{{}}}", body.join(", "))
}

/// Renders the payload for a terminal. Diagnostics are rendered separately
/// by [`render_diagnostics`].
pub fn render_human(doc: &OutputDocument) -> String {
    let mut s = String::new();
    let Some(p) = &doc.result else { return s };
    for t in &p.trace {
        match t.rule {
            Some(r) => writeln!(s, "rule{r}: {} ==> {}", t.acted_on, t.result),
            None => writeln!(s, "{}: {}", t.acted_on, t.result),
        }
        .expect("writing to a String");
    }
    match (&p.outcome[..], p.bindings.is_empty()) {
        ("yes", false) => writeln!(s, "yes {}", braces(p.bindings.iter(), " = ")),
        _ => writeln!(s, "{}", p.outcome),
    }
    .expect("writing to a String");
    if !p.bindings.is_empty() && p.outcome != "yes" {
        writeln!(s, "mgu: {}", braces(p.bindings.iter(), " = ")).expect("writing to a String");
    }
    if !p.types.is_empty() {
        writeln!(s, "types: {}", braces(p.types.iter(), ": ")).expect("writing to a String");
    }
    if let Some(t) = &p.principal {
        writeln!(s, "typing: ({}, {})", braces(t.context.iter(), ": "), t.ty).expect("writing to a String");
    }
    if let Some(c) = &p.constraints {
        if let Some(ty) = &c.ty {
            writeln!(s, "type: {ty}").expect("writing to a String");
        }
        writeln!(s, "C: {{{}}}", c.terms.join(", ")).expect("writing to a String");
        writeln!(s, "T: {{{}}}", c.types.join(", ")).expect("writing to a String");
    }
    if let Some(w) = &p.witness {
        writeln!(s, "witness: {w}").expect("writing to a String");
    }
    if let Some(n) = p.steps {
        writeln!(s, "steps: {n}").expect("writing to a String");
    }
    for d in &p.details {
        writeln!(s, "{d}").expect("writing to a String");
    }
    s
}

pub fn render_diagnostics(doc: &OutputDocument) -> String {
    let mut s = String::new();
    for d in &doc.diagnostics {
        let level = match d.severity {
            Severity::Error => "error",
            Severity::Warning => "warning",
        };
        match &d.span {
            Some(span) => writeln!(s, "{level}: {span}: {}", d.message),
            None => writeln!(s, "{level}: {}", d.message),
        }
        .expect("writing to a String");
    }
    s
}
