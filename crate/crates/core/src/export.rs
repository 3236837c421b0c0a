//! JSON report structures and Graphviz DOT rendering.
//!
//! Every report serializes with fields in declaration order and sorted
//! collections, so equal inputs give byte-identical output.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use num_bigint::BigUint;
use num_traits::ToPrimitive;
use serde::ser::SerializeSeq;
use serde::{Serialize, Serializer};

use crate::matrix::{BooleanMatrix, LogicalMatrix};
use crate::model::{Labels, TransitionSystem};
use crate::reach::{Condensation, PartitionCheck};
use crate::simulation::{FeedbackSearch, QuotientSystem, RobustnessVerdict, Witness};

/// Counts that fit in `u64` become JSON numbers, larger ones decimal strings.
pub fn serialize_big_counts<S: Serializer>(counts: &[BigUint], ser: S) -> Result<S::Ok, S::Error> {
    let mut seq = ser.serialize_seq(Some(counts.len()))?;
    for c in counts {
        match c.to_u64() {
            Some(v) => seq.serialize_element(&v)?,
            None => seq.serialize_element(&c.to_string())?,
        }
    }
    seq.end()
}

fn rows(m: &BooleanMatrix) -> Vec<Vec<u8>> {
    m.to_rows()
}

/// A transition matrix: logical ones as a delta list, others as 0/1 rows.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(untagged)]
pub enum MatrixJson {
    Delta { rows: usize, delta: Vec<usize> },
    Rows { rows: usize, cols: usize, entries: Vec<Vec<u8>> },
}

impl MatrixJson {
    pub fn from_boolean(m: &BooleanMatrix) -> Self {
        match LogicalMatrix::try_from(m) {
            Ok(lm) => MatrixJson::Delta {
                rows: lm.rows(),
                delta: lm.delta_indices(),
            },
            Err(_) => MatrixJson::Rows {
                rows: m.rows(),
                cols: m.cols(),
                entries: rows(m),
            },
        }
    }

    pub fn from_logical(m: &LogicalMatrix) -> Self {
        MatrixJson::Delta {
            rows: m.rows(),
            delta: m.delta_indices(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LabelsJson {
    pub states: Vec<String>,
    pub inputs: Vec<String>,
    pub outputs: Vec<String>,
}

impl From<&Labels> for LabelsJson {
    fn from(l: &Labels) -> Self {
        LabelsJson {
            states: l.states.clone(),
            inputs: l.inputs.clone(),
            outputs: l.outputs.clone(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TsJson {
    pub n_states: usize,
    pub n_inputs: usize,
    pub disturbance_arity: usize,
    pub n_outputs: usize,
    pub deterministic: bool,
    pub l: MatrixJson,
    pub h: MatrixJson,
    pub labels: LabelsJson,
}

impl From<&TransitionSystem> for TsJson {
    fn from(ts: &TransitionSystem) -> Self {
        TsJson {
            n_states: ts.n_states(),
            n_inputs: ts.n_inputs(),
            disturbance_arity: ts.disturbance_arity(),
            n_outputs: ts.n_outputs(),
            deterministic: ts.is_deterministic(),
            l: MatrixJson::from_boolean(ts.l()),
            h: MatrixJson::from_logical(ts.h()),
            labels: (&ts.labels_or_generic()).into(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ReachJson {
    pub reachable: Vec<Vec<u8>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub invariant: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub permutation: Option<Vec<usize>>,
}

impl ReachJson {
    pub fn new(c: &BooleanMatrix, check: Option<&PartitionCheck>) -> Self {
        ReachJson {
            reachable: rows(c),
            invariant: check.map(|p| p.verdict),
            permutation: check.and_then(|p| p.permutation.clone()),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct QuotientJson {
    pub n_classes: usize,
    pub n_inputs: usize,
    pub q: Vec<Vec<u8>>,
    pub hbar: Vec<Vec<u8>>,
    pub class_members: Vec<Vec<usize>>,
}

impl From<&QuotientSystem> for QuotientJson {
    fn from(q: &QuotientSystem) -> Self {
        QuotientJson {
            n_classes: q.n_classes,
            n_inputs: q.n_inputs,
            q: rows(&q.q),
            hbar: rows(&q.hbar),
            class_members: q.class_members.clone(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct WitnessJson {
    pub class: usize,
    pub input: usize,
}

impl From<Witness> for WitnessJson {
    fn from(w: Witness) -> Self {
        WitnessJson {
            class: w.class,
            input: w.input,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RobustJson {
    pub robust: bool,
    pub witness: Option<WitnessJson>,
    pub nominal_quotient: QuotientJson,
    pub disturbed_quotient: QuotientJson,
}

impl From<&RobustnessVerdict> for RobustJson {
    fn from(v: &RobustnessVerdict) -> Self {
        RobustJson {
            robust: v.robust,
            witness: v.witness.map(Into::into),
            nominal_quotient: (&v.nominal_quotient).into(),
            disturbed_quotient: (&v.disturbed_quotient).into(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FeedbackJson {
    /// `ℓ^n` as a decimal string (it can exceed any JSON integer).
    pub candidates: String,
    pub examined: u64,
    pub truncated: bool,
    pub control_arity: usize,
    pub gains: Vec<Vec<usize>>,
}

impl FeedbackJson {
    pub fn new(search: &FeedbackSearch, control_arity: usize, n: usize) -> Self {
        FeedbackJson {
            candidates: search
                .candidates
                .map_or_else(|| format!("{control_arity}^{n}"), |c| c.to_string()),
            examined: search.examined,
            truncated: search.truncated,
            control_arity,
            gains: search.gains.iter().map(|g| g.delta_indices()).collect(),
        }
    }
}

fn quote(s: &str) -> String {
    let mut out = String::with_capacity(s.len() + 2);
    out.push('"');
    for ch in s.chars() {
        match ch {
            '"' => out.push_str("\\\""),
            '\\' => out.push_str("\\\\"),
            '\n' => out.push_str("\\n"),
            c => out.push(c),
        }
    }
    out.push('"');
    out
}

/// States as nodes labelled with their output, one edge per state pair with
/// the inputs that take it listed on the edge.
pub fn ts_to_dot(ts: &TransitionSystem, name: &str) -> String {
    let labels = ts.labels_or_generic();
    let n = ts.n_states();
    let mut out = String::new();
    let _ = writeln!(out, "digraph {} {{", quote(name));
    out.push_str("  rankdir=LR;\n  node [shape=circle];\n");
    for x in 0..n {
        let label = format!("{}\n{}", labels.states[x], labels.outputs[ts.h().row_of(x)]);
        let _ = writeln!(out, "  s{} [label={}];", x + 1, quote(&label));
    }
    let mut edges: BTreeMap<(usize, usize), Vec<usize>> = BTreeMap::new();
    for u in 0..ts.n_inputs() {
        for x in 0..n {
            for i in ts.l().col_ones(u * n + x) {
                edges.entry((x, i)).or_default().push(u);
            }
        }
    }
    for ((x, i), inputs) in edges {
        if ts.is_autonomous() {
            let _ = writeln!(out, "  s{} -> s{};", x + 1, i + 1);
        } else {
            let text: Vec<&str> = inputs.iter().map(|&u| labels.inputs[u].as_str()).collect();
            let _ = writeln!(out, "  s{} -> s{} [label={}];", x + 1, i + 1, quote(&text.join(",")));
        }
    }
    out.push_str("}\n");
    out
}

/// One node per strongly connected component, listing its states.
pub fn condensation_to_dot(c: &Condensation, name: &str, state_labels: &[String]) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "digraph {} {{", quote(name));
    out.push_str("  rankdir=LR;\n");
    for (k, members) in c.components.iter().enumerate() {
        let names: Vec<&str> = members.iter().map(|&s| state_labels[s - 1].as_str()).collect();
        let shape = if c.cyclic[k] { "doublecircle" } else { "box" };
        let _ = writeln!(
            out,
            "  c{} [shape={shape}, label={}];",
            k + 1,
            quote(&format!("{{{}}}", names.join(", ")))
        );
    }
    for &(a, b) in &c.edges {
        let _ = writeln!(out, "  c{a} -> c{b};");
    }
    out.push_str("}\n");
    out
}
