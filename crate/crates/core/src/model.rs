//! Transition systems in algebraic form and the transformations between
//! them: input folding (undistinguished control), control/state lifting
//! (distinguished control), disturbance folding and state-feedback loops.
//!
//! The input of a [`TransitionSystem`] is the STP product of an optional
//! disturbance factor (arity `s`) and a control factor (arity `ℓ`), in that
//! order, so `L` has `n·s·ℓ` columns and column `((ξ-1)ℓ + (u-1))n + x`
//! carries the successors of state `x` under disturbance `ξ` and control `u`.

use std::collections::BTreeSet;

use thiserror::Error;

use crate::matrix::{BooleanMatrix, LogicalMatrix, MatrixError};
use crate::netdsl::{TransitionEdge, TransitionSpec};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ModelError {
    #[error("L has {rows} rows but H has {cols} columns")]
    StateCountMismatch { rows: usize, cols: usize },
    #[error("L has {cols} columns, not a multiple of the {n} states")]
    InputBlocks { cols: usize, n: usize },
    #[error("disturbance arity {s} does not divide input arity {m}")]
    DisturbanceArity { s: usize, m: usize },
    #[error("{what} has {found} entries, expected {expected}")]
    LabelCount {
        what: &'static str,
        found: usize,
        expected: usize,
    },
    #[error("feedback gain must be {rows}x{cols}, got {got_rows}x{got_cols}")]
    GainShape {
        rows: usize,
        cols: usize,
        got_rows: usize,
        got_cols: usize,
    },
    #[error("state {0} out of range")]
    StateOutOfRange(usize),
    #[error("input {0} out of range")]
    InputOutOfRange(usize),
    #[error("control input is still open (arity {0}); close the loop first")]
    OpenControl(usize),
    #[error("nominal and disturbed models differ: {0}")]
    Incompatible(String),
    #[error(transparent)]
    Matrix(#[from] MatrixError),
}

/// Optional human-readable names for states, inputs and outputs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Labels {
    pub states: Vec<String>,
    pub inputs: Vec<String>,
    pub outputs: Vec<String>,
}

impl Labels {
    pub fn generic(n: usize, m: usize, p: usize) -> Self {
        Labels {
            states: (1..=n).map(|i| format!("x{i}")).collect(),
            inputs: (1..=m).map(|i| format!("u{i}")).collect(),
            outputs: (1..=p).map(|i| format!("O{i}")).collect(),
        }
    }
}

/// `x(t+1) = L u(t) x(t)`, `y(t) = H x(t)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TransitionSystem {
    n_states: usize,
    n_inputs: usize,
    disturbance_arity: usize,
    l: BooleanMatrix,
    h: LogicalMatrix,
    deterministic: bool,
    labels: Option<Labels>,
}

impl TransitionSystem {
    pub fn new(l: BooleanMatrix, h: LogicalMatrix) -> Result<Self, ModelError> {
        let n = h.cols();
        if l.rows() != n {
            return Err(ModelError::StateCountMismatch { rows: l.rows(), cols: n });
        }
        if l.cols() == 0 || l.cols() % n != 0 {
            return Err(ModelError::InputBlocks { cols: l.cols(), n });
        }
        let deterministic = l.columns_at_most_one();
        Ok(TransitionSystem {
            n_states: n,
            n_inputs: l.cols() / n,
            disturbance_arity: 1,
            l,
            h,
            deterministic,
            labels: None,
        })
    }

    pub fn autonomous(m: BooleanMatrix, h: LogicalMatrix) -> Result<Self, ModelError> {
        if !m.is_square() {
            return Err(MatrixError::NotSquare {
                op: "autonomous",
                rows: m.rows(),
                cols: m.cols(),
            }
            .into());
        }
        Self::new(m, h)
    }

    /// Declares the leading input factor of arity `s` to be a disturbance.
    pub fn with_disturbance_arity(mut self, s: usize) -> Result<Self, ModelError> {
        if s == 0 || self.n_inputs % s != 0 {
            return Err(ModelError::DisturbanceArity { s, m: self.n_inputs });
        }
        self.disturbance_arity = s;
        Ok(self)
    }

    pub fn with_labels(mut self, labels: Labels) -> Result<Self, ModelError> {
        let checks = [
            ("state labels", labels.states.len(), self.n_states),
            ("input labels", labels.inputs.len(), self.n_inputs),
            ("output labels", labels.outputs.len(), self.n_outputs()),
        ];
        for (what, found, expected) in checks {
            if found != expected {
                return Err(ModelError::LabelCount { what, found, expected });
            }
        }
        self.labels = Some(labels);
        Ok(self)
    }

    pub fn n_states(&self) -> usize {
        self.n_states
    }

    /// Total input arity `m = s·ℓ`; 1 for an autonomous system.
    pub fn n_inputs(&self) -> usize {
        self.n_inputs
    }

    pub fn disturbance_arity(&self) -> usize {
        self.disturbance_arity
    }

    /// Arity `ℓ` of the control factor.
    pub fn control_arity(&self) -> usize {
        self.n_inputs / self.disturbance_arity
    }

    pub fn n_outputs(&self) -> usize {
        self.h.rows()
    }

    pub fn l(&self) -> &BooleanMatrix {
        &self.l
    }

    pub fn h(&self) -> &LogicalMatrix {
        &self.h
    }

    /// `|Σ(x, u)| ≤ 1` for every state and input.
    pub fn is_deterministic(&self) -> bool {
        self.deterministic
    }

    pub fn is_autonomous(&self) -> bool {
        self.n_inputs == 1
    }

    pub fn labels(&self) -> Option<&Labels> {
        self.labels.as_ref()
    }

    /// Labels, falling back to generic `x_i`/`u_j`/`O_k` names.
    pub fn labels_or_generic(&self) -> Labels {
        self.labels
            .clone()
            .unwrap_or_else(|| Labels::generic(self.n_states, self.n_inputs, self.n_outputs()))
    }

    /// `L δ_m^u` for a 0-based input `u`: the `n×n` block of that input.
    pub fn input_block(&self, u: usize) -> BooleanMatrix {
        self.l.column_block(u * self.n_states, self.n_states)
    }

    /// Successors of `(x, u)` as 0-based state indices.
    pub(crate) fn successors(&self, x: usize, u: usize) -> impl Iterator<Item = usize> + '_ {
        self.l.col_ones(u * self.n_states + x)
    }

    /// Set-semantics step: union of successors of every state in `x` under
    /// input `u`. States and inputs are 1-based; dead ends contribute nothing.
    pub fn step(&self, x: &BTreeSet<usize>, u: usize) -> Result<BTreeSet<usize>, ModelError> {
        if u == 0 || u > self.n_inputs {
            return Err(ModelError::InputOutOfRange(u));
        }
        let mut out = BTreeSet::new();
        for &s in x {
            if s == 0 || s > self.n_states {
                return Err(ModelError::StateOutOfRange(s));
            }
            out.extend(self.successors(s - 1, u - 1).map(|i| i + 1));
        }
        Ok(out)
    }

    /// Undistinguished-control conversion: `M = Σ_B L δ_m^i`.
    pub fn to_undistinguished(&self) -> AutonomousTS {
        let n = self.n_states;
        let mut m = self.input_block(0);
        for u in 1..self.n_inputs {
            m.or_assign(&self.input_block(u)).expect("blocks share a shape");
        }
        let labels = self.labels.as_ref().map(|l| Labels {
            states: l.states.clone(),
            inputs: vec!["*".into()],
            outputs: l.outputs.clone(),
        });
        AutonomousTS {
            m,
            h: self.h.clone(),
            labels,
        }
        .debug_checked(n)
    }

    /// Distinguished-control conversion on pairs `w = u ⋉ x`:
    /// `Ξ = [Lᵀ … Lᵀ]ᵀ` (`m` copies), outputs read through the `x` part.
    pub fn to_distinguished(&self) -> AutonomousTS {
        let (n, m) = (self.n_states, self.n_inputs);
        let copies: Vec<&BooleanMatrix> = std::iter::repeat_n(&self.l, m).collect();
        let xi = BooleanMatrix::vstack(&copies).expect("same column count");
        let h = LogicalMatrix::from_positions(
            self.h.rows(),
            (0..m * n).map(|w| self.h.row_of(w % n)).collect(),
        )
        .expect("positions taken from H");
        let labels = self.labels.as_ref().map(|l| Labels {
            states: (0..m * n)
                .map(|w| format!("{}/{}", l.inputs[w / n], l.states[w % n]))
                .collect(),
            inputs: vec!["*".into()],
            outputs: l.outputs.clone(),
        });
        AutonomousTS { m: xi, h, labels }.debug_checked(m * n)
    }

    /// State feedback `u = G x` on the control factor. Any disturbance factor
    /// stays open: the result has `s` inputs (autonomous when `s = 1`).
    pub fn closed_loop(&self, g: &LogicalMatrix) -> Result<TransitionSystem, ModelError> {
        let (n, s, ell) = (self.n_states, self.disturbance_arity, self.control_arity());
        if g.rows() != ell || g.cols() != n {
            return Err(ModelError::GainShape {
                rows: ell,
                cols: n,
                got_rows: g.rows(),
                got_cols: g.cols(),
            });
        }
        let mut l = BooleanMatrix::zeros(n, n * s);
        for d in 0..s {
            for x in 0..n {
                let src = (d * ell + g.row_of(x)) * n + x;
                for i in self.l.col_ones(src) {
                    l.set(i, d * n + x, true);
                }
            }
        }
        let labels = self.labels.as_ref().map(|lb| Labels {
            states: lb.states.clone(),
            inputs: if s == 1 {
                vec!["*".into()]
            } else {
                (1..=s).map(|d| format!("d{d}")).collect()
            },
            outputs: lb.outputs.clone(),
        });
        let mut ts = TransitionSystem::new(l, self.h.clone())?.with_disturbance_arity(s)?;
        ts.labels = labels;
        Ok(ts)
    }

    /// Folds the disturbance factor into the transition relation by Boolean
    /// sum, keeping the control factor: `L'` has `n·ℓ` columns.
    pub fn fold_disturbance(&self) -> TransitionSystem {
        let (n, s, ell) = (self.n_states, self.disturbance_arity, self.control_arity());
        let mut l = BooleanMatrix::zeros(n, n * ell);
        for d in 0..s {
            l.or_assign(&self.l.column_block(d * n * ell, n * ell))
                .expect("blocks share a shape");
        }
        let labels = self.labels.as_ref().map(|lb| Labels {
            states: lb.states.clone(),
            inputs: if ell == 1 {
                vec!["*".into()]
            } else {
                (1..=ell).map(|u| format!("u{u}")).collect()
            },
            outputs: lb.outputs.clone(),
        });
        let mut ts = TransitionSystem::new(l, self.h.clone()).expect("shape preserved");
        ts.labels = labels;
        ts
    }

    /// The transition data in `.ts` form, one edge per nonempty column.
    pub fn to_spec(&self, name: &str) -> TransitionSpec {
        let n = self.n_states;
        let mut edges = Vec::new();
        for u in 0..self.n_inputs {
            for x in 0..n {
                let successors: Vec<usize> = self.successors(x, u).map(|i| i + 1).collect();
                if !successors.is_empty() {
                    edges.push(TransitionEdge {
                        state: x + 1,
                        input: u + 1,
                        successors,
                    });
                }
            }
        }
        TransitionSpec {
            name: name.to_string(),
            n_states: n,
            n_inputs: self.n_inputs,
            n_outputs: Some(self.n_outputs()),
            edges,
            observations: self
                .h
                .delta_indices()
                .into_iter()
                .enumerate()
                .map(|(j, o)| (j + 1, o))
                .collect(),
        }
    }
}

/// `x(t+1) = M x(t)`, `y(t) = H x(t)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AutonomousTS {
    m: BooleanMatrix,
    h: LogicalMatrix,
    labels: Option<Labels>,
}

impl AutonomousTS {
    pub fn new(m: BooleanMatrix, h: LogicalMatrix) -> Result<Self, ModelError> {
        if !m.is_square() {
            return Err(MatrixError::NotSquare {
                op: "AutonomousTS",
                rows: m.rows(),
                cols: m.cols(),
            }
            .into());
        }
        if m.rows() != h.cols() {
            return Err(ModelError::StateCountMismatch {
                rows: m.rows(),
                cols: h.cols(),
            });
        }
        Ok(AutonomousTS { m, h, labels: None })
    }

    fn debug_checked(self, n: usize) -> Self {
        debug_assert!(self.m.rows() == n && self.m.cols() == n && self.h.cols() == n);
        self
    }

    pub fn m(&self) -> &BooleanMatrix {
        &self.m
    }

    pub fn h(&self) -> &LogicalMatrix {
        &self.h
    }

    pub fn n_states(&self) -> usize {
        self.m.rows()
    }

    pub fn labels(&self) -> Option<&Labels> {
        self.labels.as_ref()
    }

    pub fn to_ts(&self) -> TransitionSystem {
        let mut ts = TransitionSystem::new(self.m.clone(), self.h.clone()).expect("square and consistent");
        ts.labels = self.labels.clone();
        ts
    }
}

impl From<AutonomousTS> for TransitionSystem {
    fn from(a: AutonomousTS) -> Self {
        a.to_ts()
    }
}

/// A nominal model paired with its disturbed counterpart.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DisturbedModel {
    nominal: TransitionSystem,
    disturbed: TransitionSystem,
}

impl DisturbedModel {
    /// `nominal` must be disturbance-free; both models share states, outputs
    /// and control arity.
    pub fn new(nominal: TransitionSystem, disturbed: TransitionSystem) -> Result<Self, ModelError> {
        if nominal.disturbance_arity() != 1 {
            return Err(ModelError::Incompatible("the nominal model carries a disturbance".into()));
        }
        if nominal.n_states() != disturbed.n_states() {
            return Err(ModelError::Incompatible(format!(
                "{} vs {} states",
                nominal.n_states(),
                disturbed.n_states()
            )));
        }
        if nominal.h() != disturbed.h() {
            return Err(ModelError::Incompatible("output maps differ".into()));
        }
        if nominal.control_arity() != disturbed.control_arity() {
            return Err(ModelError::Incompatible(format!(
                "control arity {} vs {}",
                nominal.control_arity(),
                disturbed.control_arity()
            )));
        }
        Ok(DisturbedModel { nominal, disturbed })
    }

    pub fn nominal(&self) -> &TransitionSystem {
        &self.nominal
    }

    pub fn disturbed(&self) -> &TransitionSystem {
        &self.disturbed
    }

    pub fn control_arity(&self) -> usize {
        self.nominal.control_arity()
    }

    pub fn disturbance_arity(&self) -> usize {
        self.disturbed.disturbance_arity()
    }

    pub fn n_states(&self) -> usize {
        self.nominal.n_states()
    }

    /// Applies the same state feedback to both models.
    pub fn closed_loop(&self, g: &LogicalMatrix) -> Result<DisturbedModel, ModelError> {
        Ok(DisturbedModel {
            nominal: self.nominal.closed_loop(g)?,
            disturbed: self.disturbed.closed_loop(g)?,
        })
    }

    /// Transition representation of the disturbed model: `T = Σ_B L δ_s^ξ`.
    pub fn disturbed_tsr(&self) -> Result<AutonomousTS, ModelError> {
        if self.control_arity() != 1 {
            return Err(ModelError::OpenControl(self.control_arity()));
        }
        Ok(self.disturbed.fold_disturbance().to_undistinguished())
    }
}
