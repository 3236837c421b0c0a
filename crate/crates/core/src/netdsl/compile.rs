use thiserror::Error;

use super::expr::{literal_position, position_literal, Expr};
use super::{Network, TransitionSpec};
use crate::matrix::{BooleanMatrix, LogicalMatrix};
use crate::model::{Labels, ModelError, TransitionSystem};

/// Largest number of structure-matrix columns (`k^args`) compiled.
pub const MAX_ASSR_COLUMNS: usize = 1 << 24;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CompileError {
    #[error("operator requires a Boolean network, but k = {0}")]
    UnsupportedOperator(usize),
    #[error("variable '{0}' is not an argument of the rule")]
    UnboundVariable(String),
    #[error("literal {lit} is not a value for k = {k}")]
    BadLiteral { lit: u64, k: usize },
    #[error("structure matrix literal has {found} columns, expected {expected}")]
    DeltaShape { found: usize, expected: usize },
    #[error("{k}^{args} columns exceeds the compile limit")]
    TooLarge { k: usize, args: usize },
    #[error(transparent)]
    Model(#[from] ModelError),
}

fn check(f: &Expr, vars: &[String], k: usize, top: bool) -> Result<(), CompileError> {
    match f {
        Expr::Var(v) => {
            if !vars.contains(v) {
                return Err(CompileError::UnboundVariable(v.clone()));
            }
        }
        Expr::Const(lit) => {
            literal_position(*lit, k).ok_or(CompileError::BadLiteral { lit: *lit, k })?;
        }
        Expr::Not(e) => {
            if k != 2 {
                return Err(CompileError::UnsupportedOperator(k));
            }
            check(e, vars, k, false)?;
        }
        Expr::Binary(_, a, b) => {
            if k != 2 {
                return Err(CompileError::UnsupportedOperator(k));
            }
            check(a, vars, k, false)?;
            check(b, vars, k, false)?;
        }
        Expr::Table { vars: tv, values } => {
            if let Some(v) = tv.iter().find(|v| !vars.contains(v)) {
                return Err(CompileError::UnboundVariable(v.clone()));
            }
            let expected = k.pow(tv.len() as u32);
            if values.len() != expected {
                return Err(CompileError::DeltaShape {
                    found: values.len(),
                    expected,
                });
            }
            if let Some(&lit) = values.iter().find(|&&v| literal_position(v, k).is_none()) {
                return Err(CompileError::BadLiteral { lit, k });
            }
        }
        Expr::Delta(m) => {
            let expected = k.pow(vars.len() as u32);
            if !top || m.cols() != expected {
                return Err(CompileError::DeltaShape {
                    found: m.cols(),
                    expected,
                });
            }
        }
    }
    Ok(())
}

/// Structure matrix `M_f` of `f` over `vars`: the `k × k^|vars|` logical
/// matrix with `M_f ⋉ x_1 ⋉ … ⋉ x_r` equal to the vector form of `f`.
///
/// Column `c` corresponds to the argument tuple whose base-`k` digits spell
/// `c` with the first variable most significant; digit `d` is the value at
/// vector-form position `d` (for Boolean networks true is `δ_2^1`).
pub fn structure_matrix(f: &Expr, vars: &[String], k: usize) -> Result<LogicalMatrix, CompileError> {
    check(f, vars, k, true)?;
    let cols = checked_columns(k, vars.len())?;
    if let Expr::Delta(m) = f {
        return Ok(m.clone());
    }
    let mut values = vec![0usize; vars.len()];
    let mut col_index = Vec::with_capacity(cols);
    for c in 0..cols {
        let mut rem = c;
        for slot in values.iter_mut().rev() {
            *slot = rem % k;
            rem /= k;
        }
        col_index.push(f.eval(k, vars, &values));
    }
    Ok(LogicalMatrix::from_positions(k, col_index).expect("evaluation stays in range"))
}

fn checked_columns(k: usize, args: usize) -> Result<usize, CompileError> {
    k.checked_pow(args as u32)
        .filter(|&c| c <= MAX_ASSR_COLUMNS)
        .ok_or(CompileError::TooLarge { k, args })
}

fn tuple_label(k: usize, digits: &[usize]) -> String {
    let parts: Vec<String> = digits.iter().map(|&d| position_literal(d, k).to_string()).collect();
    if k <= 10 {
        parts.concat()
    } else {
        parts.join(",")
    }
}

fn tuple_labels(k: usize, width: usize) -> Vec<String> {
    let count = k.pow(width as u32);
    (0..count)
        .map(|c| {
            let mut digits = vec![0; width];
            let mut rem = c;
            for d in digits.iter_mut().rev() {
                *d = rem % k;
                rem /= k;
            }
            tuple_label(k, &digits)
        })
        .collect()
}

/// Assembles `x(t+1) = L ξ(t) u(t) x(t)`, `y = H x` with
/// `L = M_1 * M_2 * … * M_n` (Khatri-Rao product of the structure matrices
/// over the arguments disturbances, inputs, states).
pub fn assemble_assr(net: &Network) -> Result<TransitionSystem, CompileError> {
    let k = net.k;
    let args = net.arguments();
    checked_columns(k, args.len())?;
    let mut l: Option<LogicalMatrix> = None;
    for f in &net.updates {
        let mi = structure_matrix(f, &args, k)?;
        l = Some(match l {
            None => mi,
            Some(acc) => acc.khatri_rao(&mi).map_err(ModelError::from)?,
        });
    }
    let l = l.expect("networks have at least one state variable");
    let n_vars = net.state_vars.len();
    let n = k.pow(n_vars as u32);
    let h = match &net.output {
        Some(y) => structure_matrix(y, &net.state_vars, k)?,
        None => LogicalMatrix::identity(n),
    };
    let s = k.pow(net.disturbance_vars.len() as u32);
    let state_labels = tuple_labels(k, n_vars);
    let output_labels = match &net.output {
        None => state_labels.clone(),
        Some(Expr::Delta(m)) => (1..=m.rows()).map(|o| format!("O{o}")).collect(),
        Some(_) => (0..k).map(|p| position_literal(p, k).to_string()).collect(),
    };
    let labels = Labels {
        states: state_labels,
        inputs: tuple_labels(k, net.disturbance_vars.len() + net.input_vars.len()),
        outputs: output_labels,
    };
    let ts = TransitionSystem::new(l.to_boolean(), h)?
        .with_disturbance_arity(s)?
        .with_labels(labels)?;
    Ok(ts)
}

/// Boolean `L` with column `(u-1)n + x` holding the successors of `(x, u)`,
/// and logical `H` from the observations (identity when there are none).
pub fn spec_to_ts(spec: &TransitionSpec) -> Result<TransitionSystem, ModelError> {
    let (n, m) = (spec.n_states, spec.n_inputs);
    let mut l = BooleanMatrix::zeros(n, n * m);
    for e in &spec.edges {
        if e.state == 0 || e.state > n {
            return Err(ModelError::StateOutOfRange(e.state));
        }
        if e.input == 0 || e.input > m {
            return Err(ModelError::InputOutOfRange(e.input));
        }
        for &succ in &e.successors {
            if succ == 0 || succ > n {
                return Err(ModelError::StateOutOfRange(succ));
            }
            l.set(succ - 1, (e.input - 1) * n + e.state - 1, true);
        }
    }
    let h = if spec.observations.is_empty() {
        LogicalMatrix::identity(n)
    } else {
        let p = spec
            .n_outputs
            .unwrap_or_else(|| spec.observations.values().copied().max().unwrap_or(1));
        let mut idx = Vec::with_capacity(n);
        for s in 1..=n {
            idx.push(*spec.observations.get(&s).ok_or(ModelError::StateOutOfRange(s))?);
        }
        LogicalMatrix::delta(p, &idx)?
    };
    let p = h.rows();
    TransitionSystem::new(l, h)?.with_labels(Labels::generic(n, m, p))
}
