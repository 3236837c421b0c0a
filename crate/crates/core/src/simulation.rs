//! Output-based quotients (simulations), output robustness and the search
//! for state feedback that makes a disturbed system output robust.
//!
//! States are grouped by the output they produce. The quotient has one class
//! per output label, its dynamics are `Q = H ×_B L ×_B (I_m ⊗ Hᵀ)` and its
//! output map is `Hbar = Booleanize(H Hᵀ)`. Classes and states are 1-based in
//! every public signature.

use rayon::prelude::*;
use thiserror::Error;

use crate::matrix::{BooleanMatrix, LogicalMatrix, MatrixError};
use crate::model::{DisturbedModel, ModelError, TransitionSystem};

/// Default limit on the number of feedback gains examined.
pub const DEFAULT_FEEDBACK_CAP: u64 = 1_000_000;

/// Limit on `n·(m·p)^horizon` for containment checks.
pub const CONTAINMENT_BOUND: u128 = 1 << 32;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SimulationError {
    #[error("horizon must be at least 1")]
    ZeroHorizon,
    #[error("containment check too large: n·(m·p)^horizon = {work} exceeds {bound}")]
    TooLarge { work: String, bound: String },
    #[error("control input still open (arity {0}); close the loop or search for a feedback")]
    OpenControl(usize),
    #[error("{candidates} feedback candidates exceed the cap of {cap}")]
    CapExceeded { candidates: String, cap: u64 },
    #[error("feedback gain {gain} failed re-verification")]
    Verification { gain: String },
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error(transparent)]
    Matrix(#[from] MatrixError),
}

/// `classes[c-1]` holds the states with output `c`; unused outputs get an
/// empty class.
pub fn output_partition(h: &LogicalMatrix) -> Vec<Vec<usize>> {
    let mut classes = vec![Vec::new(); h.rows()];
    for x in 0..h.cols() {
        classes[h.row_of(x)].push(x + 1);
    }
    classes
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuotientSystem {
    pub n_classes: usize,
    pub n_inputs: usize,
    /// `p × (p·m)`; column `(u-1)p + c` holds the successor classes of `c`
    /// under input `u`.
    pub q: BooleanMatrix,
    pub hbar: BooleanMatrix,
    pub class_members: Vec<Vec<usize>>,
}

impl QuotientSystem {
    /// Classes nobody maps to.
    pub fn unused_classes(&self) -> Vec<usize> {
        (1..=self.n_classes)
            .filter(|&c| self.class_members[c - 1].is_empty())
            .collect()
    }

    /// The quotient as a transition system observed through its own classes.
    pub fn to_ts(&self) -> TransitionSystem {
        TransitionSystem::new(self.q.clone(), LogicalMatrix::identity(self.n_classes))
            .expect("quotient shapes are consistent")
    }
}

pub fn quotient(ts: &TransitionSystem) -> Result<QuotientSystem, SimulationError> {
    let h = ts.h().to_boolean();
    let ht = h.transpose();
    let lifted = BooleanMatrix::identity(ts.n_inputs()).kron(&ht);
    let q = h.bool_mul(ts.l())?.bool_mul(&lifted)?;
    let hbar = h.bool_mul(&ht)?;
    Ok(QuotientSystem {
        n_classes: ts.n_outputs(),
        n_inputs: ts.n_inputs(),
        q,
        hbar,
        class_members: output_partition(ts.h()),
    })
}

/// An input/output sequence of the system that the quotient cannot produce.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ContainmentViolation {
    pub class: usize,
    pub inputs: Vec<usize>,
    pub outputs: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ContainmentResult {
    pub holds: bool,
    pub counterexample: Option<ContainmentViolation>,
    /// Distinct input/output sequences examined.
    pub sequences: usize,
}

/// Explores every input/output sequence of up to `horizon` steps that a state
/// of some class can produce, and checks that the quotient produces the same
/// outputs from that class under the same inputs.
pub fn check_containment(ts: &TransitionSystem, horizon: usize) -> Result<ContainmentResult, SimulationError> {
    if horizon == 0 {
        return Err(SimulationError::ZeroHorizon);
    }
    let (n, m, p) = (ts.n_states(), ts.n_inputs(), ts.n_outputs());
    let work = (m as u128 * p as u128)
        .checked_pow(horizon as u32)
        .and_then(|w| w.checked_mul(n as u128));
    match work {
        Some(w) if w <= CONTAINMENT_BOUND => {}
        _ => {
            return Err(SimulationError::TooLarge {
                work: work.map_or_else(|| "overflow".into(), |w| w.to_string()),
                bound: CONTAINMENT_BOUND.to_string(),
            })
        }
    }
    let quot = quotient(ts)?;
    let h = ts.h();
    let mut sequences = 0usize;

    struct Node {
        inputs: Vec<usize>,
        outputs: Vec<usize>,
        states: Vec<usize>,
    }

    for (c, members) in quot.class_members.iter().enumerate() {
        if members.is_empty() {
            continue;
        }
        let mut stack = vec![Node {
            inputs: Vec::new(),
            outputs: vec![c],
            states: members.iter().map(|s| s - 1).collect(),
        }];
        while let Some(node) = stack.pop() {
            sequences += 1;
            let last = *node.outputs.last().expect("nonempty");
            if !quot.hbar.get(last, last) {
                return Ok(violation(c, &node.inputs, &node.outputs, sequences));
            }
            if node.inputs.len() == horizon {
                continue;
            }
            for u in 0..m {
                let mut by_output: Vec<Vec<bool>> = vec![Vec::new(); p];
                for &x in &node.states {
                    for i in ts.l().col_ones(u * n + x) {
                        let y = h.row_of(i);
                        if by_output[y].is_empty() {
                            by_output[y] = vec![false; n];
                        }
                        by_output[y][i] = true;
                    }
                }
                for (y, set) in by_output.into_iter().enumerate().rev() {
                    if set.is_empty() {
                        continue;
                    }
                    let mut inputs = node.inputs.clone();
                    inputs.push(u);
                    let mut outputs = node.outputs.clone();
                    outputs.push(y);
                    if !quot.q.get(y, u * p + last) {
                        return Ok(violation(c, &inputs, &outputs, sequences));
                    }
                    let states = (0..n).filter(|&i| set[i]).collect();
                    stack.push(Node { inputs, outputs, states });
                }
            }
        }
    }
    Ok(ContainmentResult {
        holds: true,
        counterexample: None,
        sequences,
    })
}

fn violation(class: usize, inputs: &[usize], outputs: &[usize], sequences: usize) -> ContainmentResult {
    ContainmentResult {
        holds: false,
        counterexample: Some(ContainmentViolation {
            class: class + 1,
            inputs: inputs.iter().map(|u| u + 1).collect(),
            outputs: outputs.iter().map(|y| y + 1).collect(),
        }),
        sequences,
    }
}

/// First place where two quotients disagree.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Witness {
    pub class: usize,
    pub input: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RobustnessVerdict {
    pub robust: bool,
    pub nominal_quotient: QuotientSystem,
    pub disturbed_quotient: QuotientSystem,
    pub witness: Option<Witness>,
}

/// Exact comparison of quotient dynamics and output maps.
pub fn compare_quotients(a: &QuotientSystem, b: &QuotientSystem) -> Option<Witness> {
    if a.q.rows() != b.q.rows() || a.q.cols() != b.q.cols() {
        return Some(Witness { class: 1, input: 1 });
    }
    let p = a.n_classes;
    for col in 0..a.q.cols() {
        if a.q.col_ones(col).ne(b.q.col_ones(col)) {
            return Some(Witness {
                class: col % p + 1,
                input: col / p + 1,
            });
        }
    }
    (0..p)
        .find(|&c| a.hbar.col_ones(c).ne(b.hbar.col_ones(c)))
        .map(|c| Witness { class: c + 1, input: 1 })
}

/// Compares the quotient of the nominal model with the quotient of the
/// disturbed model's transition representation (disturbance folded by
/// Boolean sum). Both models must be autonomous apart from the disturbance.
pub fn is_output_robust(dm: &DisturbedModel) -> Result<RobustnessVerdict, SimulationError> {
    if dm.control_arity() != 1 {
        return Err(SimulationError::OpenControl(dm.control_arity()));
    }
    let nominal_quotient = quotient(dm.nominal())?;
    let disturbed_quotient = quotient(&dm.disturbed_tsr()?.to_ts())?;
    let witness = compare_quotients(&nominal_quotient, &disturbed_quotient);
    Ok(RobustnessVerdict {
        robust: witness.is_none(),
        nominal_quotient,
        disturbed_quotient,
        witness,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FeedbackSearch {
    /// `ℓ^n`, or `None` when it overflows `u128`.
    pub candidates: Option<u128>,
    pub examined: u64,
    pub truncated: bool,
    /// Robust gains in lexicographic order of their column indices.
    pub gains: Vec<LogicalMatrix>,
}

/// Gain number `k` in lexicographic order: the base-`ℓ` digits of `k`, first
/// column most significant.
pub fn gain_at(ell: usize, n: usize, mut k: u64) -> LogicalMatrix {
    let mut cols = vec![0usize; n];
    for c in cols.iter_mut().rev() {
        *c = (k % ell as u64) as usize;
        k /= ell as u64;
    }
    LogicalMatrix::from_positions(ell, cols).expect("digits are below ell")
}

/// Tests every state feedback `u = Gx`, `G ∈ L_{ℓ×n}`, in lexicographic
/// order and keeps the ones whose closed loop is output robust.
///
/// With more than `cap` candidates the search fails, unless `truncate` is
/// set, in which case only the first `cap` candidates are examined.
pub fn find_robust_feedback(dm: &DisturbedModel, cap: u64, truncate: bool) -> Result<FeedbackSearch, SimulationError> {
    let (n, ell) = (dm.n_states(), dm.control_arity());
    let candidates = (ell as u128).checked_pow(n as u32);
    let over = candidates.is_none_or(|c| c > cap as u128);
    if over && !truncate {
        return Err(SimulationError::CapExceeded {
            candidates: candidates.map_or_else(|| format!("{ell}^{n}"), |c| c.to_string()),
            cap,
        });
    }
    let examined = if over { cap } else { candidates.expect("checked") as u64 };
    let results: Result<Vec<Option<LogicalMatrix>>, SimulationError> = (0..examined)
        .into_par_iter()
        .map(|k| {
            let g = gain_at(ell, n, k);
            let robust = is_output_robust(&dm.closed_loop(&g)?)?.robust;
            Ok(robust.then_some(g))
        })
        .collect();
    let gains: Vec<LogicalMatrix> = results?.into_iter().flatten().collect();
    for g in &gains {
        if !robust_by_edges(dm, g) {
            return Err(SimulationError::Verification { gain: g.to_string() });
        }
    }
    Ok(FeedbackSearch {
        candidates,
        examined,
        truncated: over,
        gains,
    })
}

/// Robustness of the closed loop under `g` recomputed from individual
/// transitions, without any matrix products.
pub fn robust_by_edges(dm: &DisturbedModel, g: &LogicalMatrix) -> bool {
    let class_edges = |ts: &TransitionSystem, s: usize| {
        let (n, ell) = (ts.n_states(), ts.control_arity());
        let h = ts.h();
        let mut edges = std::collections::BTreeSet::new();
        for x in 0..n {
            let u = if ell == 1 { 0 } else { g.row_of(x) };
            for d in 0..s {
                for i in ts.l().col_ones((d * ell + u) * n + x) {
                    edges.insert((h.row_of(x), h.row_of(i)));
                }
            }
        }
        edges
    };
    let nominal = class_edges(dm.nominal(), 1);
    let disturbed = class_edges(dm.disturbed(), dm.disturbance_arity());
    nominal == disturbed
}
