//! Cycle structure of autonomous transition systems.
//!
//! Counting uses the trace recursion `N_1 = tr(M)`,
//! `N_s = (tr(M^s) - Σ_{k ∈ P(s)} k N_k) / s` where `P(s)` are the proper
//! divisors of `s`. For a nondeterministic `M`, `N_s` counts rotation classes
//! of closed walks whose minimal period is exactly `s`; these include
//! compound cycles, so `s_max` has to be bounded by the caller.
//!
//! States in every public signature here are 1-based.

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::matrix::{BooleanMatrix, CountMatrix, MatrixError};
use crate::model::{ModelError, TransitionSystem};

/// Default limit on the number of simple cycles enumerated.
pub const DEFAULT_CYCLE_CAP: usize = 1_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AnalysisError {
    #[error("cycle count for length {s} is not an integer (remainder {remainder}); trace data is inconsistent")]
    InexactDivision { s: usize, remainder: String },
    #[error("cycle count for length {s} would be negative; trace data is inconsistent")]
    NegativeCount { s: usize },
    #[error("more than {cap} simple cycles")]
    CycleCapExceeded { cap: usize },
    #[error("trajectory is empty")]
    EmptyTrajectory,
    #[error("state {0} out of range")]
    StateOutOfRange(usize),
    #[error("no transition from state {from} to state {to} (position {position})")]
    NotClosedWalk { position: usize, from: usize, to: usize },
    #[error("maximum cycle length must be given for nondeterministic systems")]
    MissingLengthBound,
    #[error("{0}")]
    Limit(String),
    #[error(transparent)]
    Matrix(#[from] MatrixError),
    #[error(transparent)]
    Model(#[from] ModelError),
}

fn require_square(m: &BooleanMatrix, op: &'static str) -> Result<(), AnalysisError> {
    if !m.is_square() {
        return Err(MatrixError::NotSquare {
            op,
            rows: m.rows(),
            cols: m.cols(),
        }
        .into());
    }
    Ok(())
}

/// `tr(M^s)` for `s = 1..=s_max`.
///
/// A matrix with at most one 1 per column is a partial function, and its
/// traces are counted by iterating the function; otherwise the integer
/// powers are accumulated exactly.
pub fn trace_sequence(m: &BooleanMatrix, s_max: usize) -> Result<Vec<BigUint>, AnalysisError> {
    require_square(m, "trace_sequence")?;
    if m.columns_at_most_one() {
        return Ok(functional_traces(m, s_max));
    }
    let mut traces = Vec::with_capacity(s_max);
    let mut power = CountMatrix::from(m);
    for s in 1..=s_max {
        traces.push(power.trace());
        if s < s_max {
            power = power.mul_boolean(m)?;
        }
    }
    Ok(traces)
}

fn functional_traces(m: &BooleanMatrix, s_max: usize) -> Vec<BigUint> {
    let n = m.rows();
    let next: Vec<Option<usize>> = (0..n).map(|j| m.col_ones(j).next()).collect();
    let mut counts = vec![0u64; s_max];
    for x in 0..n {
        let mut cur = Some(x);
        for c in counts.iter_mut() {
            cur = cur.and_then(|v| next[v]);
            match cur {
                Some(v) if v == x => *c += 1,
                Some(_) => {}
                None => break,
            }
        }
    }
    counts.into_iter().map(BigUint::from).collect()
}

/// Applies the divisor recursion to `traces[s-1] = tr(M^s)`.
pub fn counts_from_traces(traces: &[BigUint]) -> Result<Vec<BigUint>, AnalysisError> {
    let mut counts: Vec<BigUint> = Vec::with_capacity(traces.len());
    for (i, tr) in traces.iter().enumerate() {
        let s = i + 1;
        let mut shorter = BigUint::zero();
        for k in (1..s).filter(|k| s % k == 0) {
            shorter += &counts[k - 1] * BigUint::from(k);
        }
        if &shorter > tr {
            return Err(AnalysisError::NegativeCount { s });
        }
        let (q, r) = (tr - shorter).div_rem(&BigUint::from(s));
        if !r.is_zero() {
            return Err(AnalysisError::InexactDivision {
                s,
                remainder: r.to_string(),
            });
        }
        counts.push(q);
    }
    Ok(counts)
}

/// `N_1..=N_{s_max}`.
pub fn count_cycles(m: &BooleanMatrix, s_max: usize) -> Result<Vec<BigUint>, AnalysisError> {
    counts_from_traces(&trace_sequence(m, s_max)?)
}

/// Checks `tr(M^s) = Σ_{k | s} k N_k` for every `s` covered by both slices.
pub fn trace_identity_holds(traces: &[BigUint], counts: &[BigUint]) -> bool {
    traces.iter().zip(1..).all(|(tr, s)| {
        let sum = (1..=s)
            .filter(|k| s % k == 0)
            .filter(|&k| k <= counts.len())
            .fold(BigUint::zero(), |acc, k| acc + &counts[k - 1] * BigUint::from(k));
        &sum == tr
    })
}

/// States `i` with `M_ii = 1`.
pub fn enumerate_fixed_points(m: &BooleanMatrix) -> Result<Vec<usize>, AnalysisError> {
    require_square(m, "enumerate_fixed_points")?;
    Ok((0..m.rows()).filter(|&i| m.get(i, i)).map(|i| i + 1).collect())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CycleEnumeration {
    /// Canonical rotations, sorted lexicographically.
    pub cycles: Vec<Vec<usize>>,
    pub truncated: bool,
}

/// All elementary circuits of length at most `max_len` (default `n`).
/// Fails with [`AnalysisError::CycleCapExceeded`] past [`DEFAULT_CYCLE_CAP`].
pub fn enumerate_simple_cycles(
    m: &BooleanMatrix,
    max_len: Option<usize>,
) -> Result<Vec<Vec<usize>>, AnalysisError> {
    let e = enumerate_simple_cycles_capped(m, max_len, DEFAULT_CYCLE_CAP)?;
    if e.truncated {
        return Err(AnalysisError::CycleCapExceeded {
            cap: DEFAULT_CYCLE_CAP,
        });
    }
    Ok(e.cycles)
}

/// Like [`enumerate_simple_cycles`] but stops after `cap` cycles and reports
/// truncation instead of failing.
pub fn enumerate_simple_cycles_capped(
    m: &BooleanMatrix,
    max_len: Option<usize>,
    cap: usize,
) -> Result<CycleEnumeration, AnalysisError> {
    require_square(m, "enumerate_simple_cycles")?;
    let n = m.rows();
    let max_len = max_len.unwrap_or(n).min(n);
    let mut search = CircuitSearch::new(m, cap);
    for s in 0..n {
        if max_len == 0 || search.truncated {
            break;
        }
        let comp = search.component_from(s);
        if comp.len() == 1 && !m.get(s, s) {
            continue;
        }
        if max_len >= n {
            search.johnson(s, &comp);
        } else {
            search.bounded(s, &comp, max_len);
        }
    }
    let mut cycles: Vec<Vec<usize>> = search
        .found
        .into_iter()
        .map(|c| c.into_iter().map(|v| v + 1).collect())
        .collect();
    cycles.sort();
    Ok(CycleEnumeration {
        cycles,
        truncated: search.truncated,
    })
}

/// Elementary-circuit search over the graph `j -> i` iff `M_ij = 1`.
///
/// Circuits are rooted at their least vertex `s` and confined to the strongly
/// connected component of `s` in the subgraph induced by `{s, s+1, ...}`, so
/// each is found exactly once and already in canonical rotation.
struct CircuitSearch {
    succ: Vec<Vec<usize>>,
    pred: Vec<Vec<usize>>,
    cap: usize,
    found: Vec<Vec<usize>>,
    truncated: bool,
    in_comp: Vec<bool>,
    blocked: Vec<bool>,
    b_sets: Vec<Vec<usize>>,
}

impl CircuitSearch {
    fn new(m: &BooleanMatrix, cap: usize) -> Self {
        let n = m.rows();
        let t = m.transpose();
        CircuitSearch {
            succ: (0..n).map(|j| t.row_ones(j).collect()).collect(),
            pred: (0..n).map(|i| m.row_ones(i).collect()).collect(),
            cap,
            found: Vec::new(),
            truncated: false,
            in_comp: vec![false; n],
            blocked: vec![false; n],
            b_sets: vec![Vec::new(); n],
        }
    }

    /// Vertices `≥ s` both reachable from and reaching `s`; marks `in_comp`.
    fn component_from(&mut self, s: usize) -> Vec<usize> {
        let n = self.succ.len();
        let walk = |adj: &Vec<Vec<usize>>| {
            let mut seen = vec![false; n];
            seen[s] = true;
            let mut stack = vec![s];
            while let Some(v) = stack.pop() {
                for &w in &adj[v] {
                    if w >= s && !seen[w] {
                        seen[w] = true;
                        stack.push(w);
                    }
                }
            }
            seen
        };
        let fwd = walk(&self.succ);
        let bwd = walk(&self.pred);
        let mut comp = Vec::new();
        for v in 0..n {
            self.in_comp[v] = fwd[v] && bwd[v];
            if self.in_comp[v] {
                comp.push(v);
            }
        }
        comp
    }

    fn record(&mut self, path: &[usize]) {
        if self.found.len() >= self.cap {
            self.truncated = true;
        } else {
            self.found.push(path.to_vec());
        }
    }

    fn unblock(&mut self, u: usize) {
        let mut stack = vec![u];
        while let Some(v) = stack.pop() {
            if !self.blocked[v] {
                continue;
            }
            self.blocked[v] = false;
            stack.extend(std::mem::take(&mut self.b_sets[v]));
        }
    }

    /// Johnson's circuit search from root `s`, written with an explicit
    /// stack of `(vertex, next successor slot, found a circuit)` frames.
    fn johnson(&mut self, s: usize, comp: &[usize]) {
        for &v in comp {
            self.blocked[v] = false;
            self.b_sets[v].clear();
        }
        let mut path = vec![s];
        let mut frames: Vec<(usize, usize, bool)> = vec![(s, 0, false)];
        self.blocked[s] = true;
        while let Some(&(v, slot, _)) = frames.last() {
            if self.truncated {
                return;
            }
            if slot < self.succ[v].len() {
                frames.last_mut().expect("nonempty").1 += 1;
                let w = self.succ[v][slot];
                if !self.in_comp[w] {
                    continue;
                }
                if w == s {
                    self.record(&path);
                    frames.last_mut().expect("nonempty").2 = true;
                } else if !self.blocked[w] {
                    self.blocked[w] = true;
                    path.push(w);
                    frames.push((w, 0, false));
                }
                continue;
            }
            let (v, _, closed) = frames.pop().expect("nonempty");
            if closed {
                self.unblock(v);
            } else {
                for i in 0..self.succ[v].len() {
                    let w = self.succ[v][i];
                    if self.in_comp[w] && !self.b_sets[w].contains(&v) {
                        self.b_sets[w].push(v);
                    }
                }
            }
            path.pop();
            if let Some(parent) = frames.last_mut() {
                parent.2 |= closed;
            }
        }
    }

    /// Plain backtracking with a length limit; Johnson's blocking is not
    /// valid once paths are cut short.
    fn bounded(&mut self, s: usize, comp: &[usize], max_len: usize) {
        let mut on_path = vec![false; self.succ.len()];
        let _ = comp;
        let mut path = vec![s];
        on_path[s] = true;
        let mut frames: Vec<(usize, usize)> = vec![(s, 0)];
        while let Some(&(v, slot)) = frames.last() {
            if self.truncated {
                return;
            }
            if slot < self.succ[v].len() {
                frames.last_mut().expect("nonempty").1 += 1;
                let w = self.succ[v][slot];
                if !self.in_comp[w] {
                    continue;
                }
                if w == s {
                    self.record(&path);
                } else if !on_path[w] && path.len() < max_len {
                    on_path[w] = true;
                    path.push(w);
                    frames.push((w, 0));
                }
                continue;
            }
            frames.pop();
            if let Some(v) = path.pop() {
                on_path[v] = false;
            }
        }
    }
}

/// Rotation with the least state first; ties broken lexicographically.
pub fn canonical_rotation(traj: &[usize]) -> Vec<usize> {
    let Some(&min) = traj.iter().min() else {
        return Vec::new();
    };
    let len = traj.len();
    (0..len)
        .filter(|&r| traj[r] == min)
        .map(|r| (0..len).map(|i| traj[(r + i) % len]).collect::<Vec<_>>())
        .min()
        .expect("minimum occurs")
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CycleClass {
    FixedPoint,
    SimpleCycle,
    /// `k ≥ 2` repetitions of a shorter cycle; a special compound cycle.
    PowerCycle,
    CompoundCycle,
}

fn check_closed_walk(m: &BooleanMatrix, traj: &[usize]) -> Result<(), AnalysisError> {
    require_square(m, "closed walk")?;
    if traj.is_empty() {
        return Err(AnalysisError::EmptyTrajectory);
    }
    let n = m.rows();
    if let Some(&bad) = traj.iter().find(|&&x| x == 0 || x > n) {
        return Err(AnalysisError::StateOutOfRange(bad));
    }
    for (i, &from) in traj.iter().enumerate() {
        let to = traj[(i + 1) % traj.len()];
        if !m.get(to - 1, from - 1) {
            return Err(AnalysisError::NotClosedWalk {
                position: i + 1,
                from,
                to,
            });
        }
    }
    Ok(())
}

fn minimal_period(traj: &[usize]) -> usize {
    let len = traj.len();
    (1..=len)
        .filter(|p| len % p == 0)
        .find(|&p| (0..len).all(|i| traj[i] == traj[i % p]))
        .expect("len itself is a period")
}

/// Classifies a closed walk of `M` (the wrap-around step included).
pub fn classify_cycle(m: &BooleanMatrix, traj: &[usize]) -> Result<CycleClass, AnalysisError> {
    check_closed_walk(m, traj)?;
    if traj.len() == 1 {
        return Ok(CycleClass::FixedPoint);
    }
    let mut seen = traj.to_vec();
    seen.sort_unstable();
    seen.dedup();
    if seen.len() == traj.len() {
        return Ok(CycleClass::SimpleCycle);
    }
    if minimal_period(traj) < traj.len() {
        Ok(CycleClass::PowerCycle)
    } else {
        Ok(CycleClass::CompoundCycle)
    }
}

/// A simple cycle cut out of a walk at the position of its first state.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Extraction {
    pub cycle: Vec<usize>,
    /// 0-based position, in the sequence the cycle was cut from, of the
    /// state that opens and closes it.
    pub anchor: usize,
}

/// Result of repeatedly cutting simple cycles out of a closed walk.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CycleDecomposition {
    /// Extracted cycles in scan order.
    pub extracted: Vec<Extraction>,
    /// What is left once no state repeats; itself a simple cycle.
    pub residue: Vec<usize>,
}

impl CycleDecomposition {
    /// All simple cycles of the decomposition: extractions then residue.
    pub fn leaves(&self) -> Vec<&[usize]> {
        self.extracted
            .iter()
            .map(|e| e.cycle.as_slice())
            .chain(std::iter::once(self.residue.as_slice()))
            .collect()
    }

    /// Re-inserts the extracted cycles in reverse order.
    pub fn reconstruct(&self) -> Vec<usize> {
        let mut seq = self.residue.clone();
        for e in self.extracted.iter().rev() {
            let mut insert = e.cycle[1..].to_vec();
            insert.push(e.cycle[0]);
            let at = e.anchor + 1;
            seq.splice(at..at, insert);
        }
        seq
    }
}

/// Scans the walk left to right; the first repeated state closes a simple
/// cycle, which is cut out (keeping one copy of the repeated state), and the
/// scan restarts until no state repeats.
///
/// The scan starts where `traj` starts. Use [`canonical_rotation`] first for
/// a rotation-independent result.
pub fn decompose_cycle(m: &BooleanMatrix, traj: &[usize]) -> Result<CycleDecomposition, AnalysisError> {
    check_closed_walk(m, traj)?;
    let mut seq = traj.to_vec();
    let mut extracted = Vec::new();
    'scan: loop {
        for j in 1..seq.len() {
            if let Some(i) = seq[..j].iter().position(|&x| x == seq[j]) {
                extracted.push(Extraction {
                    cycle: seq[i..j].to_vec(),
                    anchor: i,
                });
                seq.drain(i + 1..=j);
                continue 'scan;
            }
        }
        break;
    }
    Ok(CycleDecomposition {
        extracted,
        residue: seq,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ControlMode {
    Undistinguished,
    Distinguished,
}

/// Counts, fixed points and simple cycles of an autonomous system.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CycleReport {
    #[serde(skip)]
    pub s_max: usize,
    /// `counts[s-1] = N_s`
    #[serde(serialize_with = "crate::export::serialize_big_counts")]
    pub counts: Vec<BigUint>,
    pub fixed_points: Vec<usize>,
    pub simple_cycles: Vec<Vec<usize>>,
    pub truncated: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CycleOptions {
    pub s_max: usize,
    pub max_len: Option<usize>,
    pub cap: usize,
}

impl CycleOptions {
    pub fn new(s_max: usize) -> Self {
        CycleOptions {
            s_max,
            max_len: None,
            cap: DEFAULT_CYCLE_CAP,
        }
    }
}

/// `n` for a partial-function `M` (no longer cycles exist); `None` otherwise.
pub fn default_s_max(m: &BooleanMatrix) -> Option<usize> {
    m.columns_at_most_one().then_some(m.rows())
}

pub fn analyze_cycles(m: &BooleanMatrix, opts: &CycleOptions) -> Result<CycleReport, AnalysisError> {
    let counts = count_cycles(m, opts.s_max)?;
    let fixed_points = enumerate_fixed_points(m)?;
    debug_assert!(counts.first().is_none_or(|n1| n1.to_usize() == Some(fixed_points.len())));
    let e = enumerate_simple_cycles_capped(m, opts.max_len, opts.cap)?;
    Ok(CycleReport {
        s_max: opts.s_max,
        counts,
        fixed_points,
        simple_cycles: e.cycles,
        truncated: e.truncated,
    })
}

/// Converts a control system to an autonomous one and analyzes its cycles.
/// In distinguished mode states are pairs `w = (u - 1) n + x`.
pub fn control_cycles(
    ts: &TransitionSystem,
    s_max: usize,
    mode: ControlMode,
) -> Result<CycleReport, AnalysisError> {
    control_cycles_with(ts, mode, &CycleOptions::new(s_max))
}

pub fn control_cycles_with(
    ts: &TransitionSystem,
    mode: ControlMode,
    opts: &CycleOptions,
) -> Result<CycleReport, AnalysisError> {
    let auto = match mode {
        ControlMode::Undistinguished => ts.to_undistinguished(),
        ControlMode::Distinguished => ts.to_distinguished(),
    };
    analyze_cycles(auto.m(), opts)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn b(rows: &[&[u8]]) -> BooleanMatrix {
        BooleanMatrix::from_01(rows).unwrap()
    }

    fn two_state() -> BooleanMatrix {
        b(&[&[1, 1], &[1, 0]])
    }

    fn four_state() -> BooleanMatrix {
        b(&[&[0, 0, 1, 0], &[1, 0, 0, 0], &[1, 1, 0, 0], &[0, 0, 1, 1]])
    }

    fn merged_fig() -> BooleanMatrix {
        b(&[&[0, 0, 0, 0], &[1, 1, 1, 1], &[1, 1, 1, 0], &[0, 1, 0, 1]])
    }

    fn nums(v: &[u64]) -> Vec<BigUint> {
        v.iter().map(|&x| BigUint::from(x)).collect()
    }

    #[test]
    fn identity_has_only_fixed_points() {
        let i = BooleanMatrix::identity(5);
        assert_eq!(count_cycles(&i, 6).unwrap(), nums(&[5, 0, 0, 0, 0, 0]));
        assert_eq!(
            enumerate_simple_cycles(&i, None).unwrap(),
            (1..=5).map(|v| vec![v]).collect::<Vec<_>>()
        );
    }

    #[test]
    fn four_state_counts_and_cycles() {
        let m = four_state();
        assert_eq!(count_cycles(&m, 4).unwrap(), nums(&[1, 1, 1, 0]));
        assert_eq!(
            enumerate_simple_cycles(&m, None).unwrap(),
            vec![vec![1, 2, 3], vec![1, 3], vec![4]]
        );
    }

    #[test]
    fn merged_counts() {
        assert_eq!(count_cycles(&merged_fig(), 5).unwrap(), nums(&[3, 2, 4, 7, 16]));
        assert_eq!(enumerate_fixed_points(&merged_fig()).unwrap(), vec![2, 3, 4]);
        assert_eq!(
            enumerate_simple_cycles(&merged_fig(), None).unwrap(),
            vec![vec![2], vec![2, 3], vec![2, 4], vec![3], vec![4]]
        );
    }

    #[test]
    fn fixed_points() {
        assert_eq!(enumerate_fixed_points(&two_state()).unwrap(), vec![1]);
        assert!(enumerate_fixed_points(&BooleanMatrix::zeros(3, 3)).unwrap().is_empty());
    }

    #[test]
    fn inexact_division_is_reported() {
        // tr(M) = 1, tr(M^2) = 2 would need N_2 = 1/2
        let err = counts_from_traces(&nums(&[1, 2])).unwrap_err();
        assert!(matches!(err, AnalysisError::InexactDivision { s: 2, .. }));
        assert!(matches!(counts_from_traces(&nums(&[3, 1])), Err(AnalysisError::NegativeCount { s: 2 })));
    }

    #[test]
    fn non_square_rejected() {
        assert!(count_cycles(&BooleanMatrix::zeros(2, 3), 2).is_err());
        assert!(enumerate_simple_cycles(&BooleanMatrix::zeros(2, 3), None).is_err());
    }

    #[test]
    fn classification() {
        let m = two_state();
        assert_eq!(classify_cycle(&m, &[1]).unwrap(), CycleClass::FixedPoint);
        assert_eq!(classify_cycle(&m, &[1, 2]).unwrap(), CycleClass::SimpleCycle);
        assert_eq!(classify_cycle(&m, &[1, 2, 1, 2, 1, 2]).unwrap(), CycleClass::PowerCycle);
        assert_eq!(classify_cycle(&m, &[1, 2, 1, 1, 2]).unwrap(), CycleClass::CompoundCycle);
        assert_eq!(classify_cycle(&merged_fig(), &[2, 2, 3]).unwrap(), CycleClass::CompoundCycle);
        assert!(matches!(
            classify_cycle(&m, &[2, 2]),
            Err(AnalysisError::NotClosedWalk { position: 1, from: 2, to: 2 })
        ));
        assert!(matches!(classify_cycle(&m, &[]), Err(AnalysisError::EmptyTrajectory)));
        assert!(matches!(classify_cycle(&m, &[3]), Err(AnalysisError::StateOutOfRange(3))));
    }

    #[test]
    fn growing_compound_cycles_are_compound() {
        // (1,2, 1,1,2, 1,1,1,2, ...) has length s(s+3)/2
        let m = two_state();
        for s in 1..=5usize {
            let mut traj = Vec::new();
            for r in 1..=s {
                traj.extend(std::iter::repeat_n(1, r));
                traj.push(2);
            }
            assert_eq!(traj.len(), s * (s + 3) / 2);
            let class = classify_cycle(&m, &traj).unwrap();
            let expect = if s == 1 { CycleClass::SimpleCycle } else { CycleClass::CompoundCycle };
            assert_eq!(class, expect);
        }
    }

    #[test]
    fn decomposition_examples() {
        let d = decompose_cycle(&merged_fig(), &[2, 2, 3]).unwrap();
        assert_eq!(d.extracted, vec![Extraction { cycle: vec![2], anchor: 0 }]);
        assert_eq!(d.residue, vec![2, 3]);

        let d = decompose_cycle(&two_state(), &[1, 2]).unwrap();
        assert!(d.extracted.is_empty());
        assert_eq!(d.leaves(), vec![&[1, 2][..]]);

        let d = decompose_cycle(&two_state(), &[1, 2, 1, 1, 2]).unwrap();
        let cycles: Vec<_> = d.extracted.iter().map(|e| e.cycle.clone()).collect();
        assert_eq!(cycles, vec![vec![1, 2], vec![1]]);
        assert_eq!(d.residue, vec![1, 2]);
        assert_eq!(d.reconstruct(), vec![1, 2, 1, 1, 2]);
    }

    #[test]
    fn canonical_rotation_breaks_ties() {
        assert_eq!(canonical_rotation(&[2, 1, 3, 1, 2]), vec![1, 2, 2, 1, 3]);
        assert_eq!(canonical_rotation(&[3, 1, 2]), vec![1, 2, 3]);
    }

    #[test]
    fn capped_enumeration_truncates() {
        let full = BooleanMatrix::from_01(&[[1u8; 4]; 4]).unwrap();
        let all = enumerate_simple_cycles(&full, None).unwrap();
        // 4 loops + 6 two-cycles + 8 three-cycles + 6 four-cycles
        assert_eq!(all.len(), 24);
        let e = enumerate_simple_cycles_capped(&full, None, 10).unwrap();
        assert!(e.truncated);
        assert_eq!(e.cycles.len(), 10);
        let short = enumerate_simple_cycles(&full, Some(2)).unwrap();
        assert_eq!(short.len(), 10);
        assert!(short.iter().all(|c| c.len() <= 2));
    }

    #[test]
    fn functional_and_general_traces_agree() {
        let m = crate::LogicalMatrix::delta(6, &[2, 3, 1, 5, 4, 6]).unwrap().to_boolean();
        let mut general = CountMatrix::from(&m);
        for s in 1..=8 {
            assert_eq!(functional_traces(&m, 8)[s - 1], general.trace());
            general = general.mul_boolean(&m).unwrap();
        }
    }
}
