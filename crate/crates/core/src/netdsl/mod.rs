//! Text formats for networks (`.bn`) and transition systems (`.ts`), and
//! their compilation into algebraic state-space form.
//!
//! `.bn` example:
//!
//! ```text
//! network robust_demo
//! state x1, x2, x3
//! disturbance xi
//! x1' = !xi & x1
//! x2' = (xi | !x1) ^ x3
//! x3' = (x1 ^ x2) | x3
//! y = (x1 <-> x2) <-> !x3
//! nominal x1' = !x1          # per-variable nominal rule
//! nominal x2' = x1 ^ x3
//! ```
//!
//! `.ts` example:
//!
//! ```text
//! ts example
//! states 4
//! inputs 2
//! outputs 3
//! trans 1 1 -> 2 3
//! obs 1 -> 1
//! ```
//!
//! Either format accepts matrix literals: `delta <rows> [i1 .. in]`, and in
//! `.ts` files raw 0/1 rows `[0 1 0; 1 0 1]` for a Boolean `L`.

mod compile;
mod expr;
mod lexer;
mod parser;

pub use compile::{assemble_assr, spec_to_ts, structure_matrix, CompileError, MAX_ASSR_COLUMNS};
pub use expr::{literal_position, position_literal, BinOp, Expr};
pub use parser::{parse_network, parse_ts};

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}, column {column}: {kind}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub kind: ParseErrorKind,
}

impl ParseError {
    pub(crate) fn new(line: usize, column: usize, kind: ParseErrorKind) -> Self {
        ParseError { line, column, kind }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseErrorKind {
    #[error("syntax error: {0}")]
    Syntax(String),
    #[error("undeclared variable '{0}'")]
    UndeclaredVariable(String),
    #[error("arity mismatch: {0}")]
    ArityMismatch(String),
    #[error("duplicate definition of {0}")]
    DuplicateDefinition(String),
    #[error("index out of range: {0}")]
    OutOfRange(String),
    #[error("missing definition: {0}")]
    Missing(String),
    #[error("operator {0} requires a Boolean network (k = 2)")]
    UnsupportedOperator(String),
}

/// Rules that produce the disturbance-free model from a disturbed network.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Nominal {
    /// Disturbance values (as literals) used for rules without an override.
    pub assignment: Vec<(String, u64)>,
    /// State variable → replacement update rule.
    pub overrides: Vec<(String, Expr)>,
}

impl Nominal {
    pub fn is_empty(&self) -> bool {
        self.assignment.is_empty() && self.overrides.is_empty()
    }
}

/// A parsed logical (control) network.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Network {
    pub name: String,
    pub k: usize,
    pub state_vars: Vec<String>,
    pub input_vars: Vec<String>,
    pub disturbance_vars: Vec<String>,
    /// One rule per state variable, aligned with `state_vars`.
    pub updates: Vec<Expr>,
    pub output: Option<Expr>,
    pub nominal: Nominal,
}

impl Network {
    /// STP argument order of every update rule: disturbances, inputs, states.
    pub fn arguments(&self) -> Vec<String> {
        self.disturbance_vars
            .iter()
            .chain(&self.input_vars)
            .chain(&self.state_vars)
            .cloned()
            .collect()
    }

    pub fn has_disturbance(&self) -> bool {
        !self.disturbance_vars.is_empty()
    }

    /// The disturbance-free model: override rules where given, otherwise the
    /// disturbed rule with disturbances fixed by the nominal assignment.
    pub fn nominal_network(&self) -> Result<Network, NominalError> {
        if !self.has_disturbance() {
            return Ok(self.clone());
        }
        let args = self.arguments();
        let free: Vec<String> = self.input_vars.iter().chain(&self.state_vars).cloned().collect();
        let mut fixed = Vec::with_capacity(self.disturbance_vars.len());
        for d in &self.disturbance_vars {
            let lit = self
                .nominal
                .assignment
                .iter()
                .find(|(name, _)| name == d)
                .map(|(_, v)| *v);
            fixed.push(lit);
        }

        let mut updates = Vec::with_capacity(self.updates.len());
        for (var, rule) in self.state_vars.iter().zip(&self.updates) {
            if let Some((_, e)) = self.nominal.overrides.iter().find(|(v, _)| v == var) {
                updates.push(e.clone());
                continue;
            }
            let refs_disturbance = matches!(rule, Expr::Delta(_))
                || rule
                    .referenced_vars()
                    .iter()
                    .any(|v| self.disturbance_vars.iter().any(|d| d == v));
            if !refs_disturbance {
                updates.push(rule.clone());
                continue;
            }
            let mut positions = Vec::with_capacity(fixed.len());
            for (d, lit) in self.disturbance_vars.iter().zip(&fixed) {
                let lit = lit.ok_or_else(|| NominalError::Undetermined {
                    state: var.clone(),
                    disturbance: d.clone(),
                })?;
                positions.push(literal_position(lit, self.k).ok_or_else(|| {
                    NominalError::BadValue {
                        disturbance: d.clone(),
                        value: lit,
                    }
                })?);
            }
            // tabulate the rule over the remaining arguments
            let cols = self.k.pow(free.len() as u32);
            let mut values = Vec::with_capacity(cols);
            let mut env = positions.clone();
            env.resize(args.len(), 0);
            for c in 0..cols {
                let mut rem = c;
                for i in (0..free.len()).rev() {
                    env[positions.len() + i] = rem % self.k;
                    rem /= self.k;
                }
                values.push(position_literal(rule.eval(self.k, &args, &env), self.k));
            }
            updates.push(Expr::Table {
                vars: free.clone(),
                values,
            });
        }
        Ok(Network {
            name: format!("{}_nominal", self.name),
            k: self.k,
            state_vars: self.state_vars.clone(),
            input_vars: self.input_vars.clone(),
            disturbance_vars: Vec::new(),
            updates,
            output: self.output.clone(),
            nominal: Nominal::default(),
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum NominalError {
    #[error("nominal rule for {state} depends on disturbance {disturbance}, which has no nominal value")]
    Undetermined { state: String, disturbance: String },
    #[error("nominal value {value} is not valid for disturbance {disturbance}")]
    BadValue { disturbance: String, value: u64 },
}

impl fmt::Display for Network {
    /// Prints the network in `.bn` syntax.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "network {}", self.name)?;
        if self.k != 2 {
            writeln!(f, "k = {}", self.k)?;
        }
        writeln!(f, "state {}", self.state_vars.join(", "))?;
        if !self.input_vars.is_empty() {
            writeln!(f, "input {}", self.input_vars.join(", "))?;
        }
        if !self.disturbance_vars.is_empty() {
            writeln!(f, "disturbance {}", self.disturbance_vars.join(", "))?;
        }
        for (v, e) in self.state_vars.iter().zip(&self.updates) {
            writeln!(f, "{v}' = {e}")?;
        }
        if let Some(y) = &self.output {
            writeln!(f, "y = {y}")?;
        }
        if !self.nominal.assignment.is_empty() {
            let parts: Vec<String> = self
                .nominal
                .assignment
                .iter()
                .map(|(d, v)| format!("{d} = {v}"))
                .collect();
            writeln!(f, "nominal {}", parts.join(", "))?;
        }
        for (v, e) in &self.nominal.overrides {
            writeln!(f, "nominal {v}' = {e}")?;
        }
        Ok(())
    }
}

/// One `trans` line: successors of `(state, input)`, all 1-based.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TransitionEdge {
    pub state: usize,
    pub input: usize,
    pub successors: Vec<usize>,
}

/// Transition data of a finite transition system before matrix assembly.
/// Indices are 1-based.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TransitionSpec {
    pub name: String,
    pub n_states: usize,
    pub n_inputs: usize,
    /// Declared output count; `None` with no observations means `H = I`.
    pub n_outputs: Option<usize>,
    pub edges: Vec<TransitionEdge>,
    /// state → output index
    pub observations: BTreeMap<usize, usize>,
}

impl fmt::Display for TransitionSpec {
    /// Prints the transition data in `.ts` syntax.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "ts {}", self.name)?;
        writeln!(f, "states {}", self.n_states)?;
        writeln!(f, "inputs {}", self.n_inputs)?;
        if let Some(p) = self.n_outputs {
            writeln!(f, "outputs {p}")?;
        }
        for e in &self.edges {
            write!(f, "trans {} {} ->", e.state, e.input)?;
            for s in &e.successors {
                write!(f, " {s}")?;
            }
            writeln!(f)?;
        }
        for (s, o) in &self.observations {
            writeln!(f, "obs {s} -> {o}")?;
        }
        Ok(())
    }
}
