//! Reachability and invariant-set structure of autonomous systems.
//!
//! `C = Σ_B M^(s)` for `s = 1..n`, so `C_ij = 1` iff state `j` reaches state
//! `i` in at least one step. A state reaches itself only when it lies on a
//! cycle. States are 1-based in every public signature.

use std::collections::BTreeSet;

use thiserror::Error;

use crate::matrix::{BooleanMatrix, MatrixError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ReachError {
    #[error("state {state} out of range 1..={n}")]
    StateOutOfRange { state: usize, n: usize },
    #[error("state set is empty")]
    EmptySet,
    #[error("state {0} appears in more than one set")]
    Overlap(usize),
    #[error(transparent)]
    Matrix(#[from] MatrixError),
}

fn require_square(m: &BooleanMatrix, op: &'static str) -> Result<(), ReachError> {
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

fn check_state(state: usize, n: usize) -> Result<usize, ReachError> {
    if state == 0 || state > n {
        return Err(ReachError::StateOutOfRange { state, n });
    }
    Ok(state - 1)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReachabilityResult {
    pub c: BooleanMatrix,
    /// `M^(1), …, M^(n)` when requested.
    pub per_step: Option<Vec<BooleanMatrix>>,
}

impl ReachabilityResult {
    /// `C_{to,from}`; 1-based.
    pub fn reaches(&self, from: usize, to: usize) -> Result<bool, ReachError> {
        let n = self.c.rows();
        Ok(self.c.get(check_state(to, n)?, check_state(from, n)?))
    }
}

/// `C` by repeated squaring: `R ← R + R R` doubles the covered walk lengths,
/// and walks longer than `n` add nothing new.
pub fn reach_matrix(m: &BooleanMatrix) -> Result<ReachabilityResult, ReachError> {
    require_square(m, "reach_matrix")?;
    let n = m.rows();
    let mut r = m.clone();
    let mut covered = 1usize;
    while covered < n {
        let next = r.bool_add(&r.bool_mul(&r)?)?;
        if next == r {
            break;
        }
        r = next;
        covered = covered.saturating_mul(2);
    }
    Ok(ReachabilityResult { c: r, per_step: None })
}

/// `C` as the literal sum `M + M^(2) + … + M^(n)`, keeping every power.
pub fn reach_matrix_per_step(m: &BooleanMatrix) -> Result<ReachabilityResult, ReachError> {
    require_square(m, "reach_matrix")?;
    let n = m.rows();
    let mut c = BooleanMatrix::zeros(n, n);
    let mut steps = Vec::with_capacity(n);
    let mut p = m.clone();
    for s in 1..=n {
        c.or_assign(&p)?;
        if s < n {
            let next = p.bool_mul(m)?;
            steps.push(std::mem::replace(&mut p, next));
        } else {
            steps.push(p.clone());
        }
    }
    Ok(ReachabilityResult {
        c,
        per_step: Some(steps),
    })
}

/// Whether `to` can be reached from `from` in one or more steps.
pub fn is_reachable(m: &BooleanMatrix, from: usize, to: usize) -> Result<bool, ReachError> {
    require_square(m, "is_reachable")?;
    let n = m.rows();
    let from = check_state(from, n)?;
    let to = check_state(to, n)?;
    let t = m.transpose();
    let mut seen = vec![false; n];
    let mut stack: Vec<usize> = t.row_ones(from).collect();
    while let Some(v) = stack.pop() {
        if seen[v] {
            continue;
        }
        if v == to {
            return Ok(true);
        }
        seen[v] = true;
        stack.extend(t.row_ones(v).filter(|&w| !seen[w]));
    }
    Ok(false)
}

fn state_set(z: &[usize], n: usize) -> Result<BTreeSet<usize>, ReachError> {
    if z.is_empty() {
        return Err(ReachError::EmptySet);
    }
    z.iter().map(|&s| check_state(s, n)).collect()
}

/// `Z` is invariant when every successor of a state in `Z` is in `Z`.
pub fn is_invariant_set(m: &BooleanMatrix, z: &[usize]) -> Result<bool, ReachError> {
    require_square(m, "is_invariant_set")?;
    let set = state_set(z, m.rows())?;
    Ok(set.iter().all(|&j| m.col_ones(j).all(|i| set.contains(&i))))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PartitionCheck {
    /// The candidate sets, each sorted.
    pub sets: Vec<Vec<usize>>,
    pub verdict: bool,
    /// New position `a` holds old state `permutation[a]` (1-based).
    pub permutation: Option<Vec<usize>>,
    pub permuted: Option<BooleanMatrix>,
}

/// Checks that every set is invariant. On success the states of the sets are
/// moved to the front, set by set, which makes `M` block upper triangular
/// with a block-diagonal leading part.
pub fn check_attractor_partition(m: &BooleanMatrix, sets: &[Vec<usize>]) -> Result<PartitionCheck, ReachError> {
    require_square(m, "check_attractor_partition")?;
    let n = m.rows();
    let mut owner = vec![None; n];
    let mut sorted_sets = Vec::with_capacity(sets.len());
    for (k, z) in sets.iter().enumerate() {
        let set = state_set(z, n)?;
        for &s in &set {
            if owner[s].is_some_and(|o| o != k) {
                return Err(ReachError::Overlap(s + 1));
            }
            owner[s] = Some(k);
        }
        sorted_sets.push(set.into_iter().map(|s| s + 1).collect::<Vec<_>>());
    }
    let mut verdict = true;
    for z in &sorted_sets {
        if !is_invariant_set(m, z)? {
            verdict = false;
            break;
        }
    }
    let (permutation, permuted) = if verdict {
        let mut perm: Vec<usize> = sorted_sets.iter().flatten().copied().collect();
        perm.extend((1..=n).filter(|&s| owner[s - 1].is_none()));
        let zero_based: Vec<usize> = perm.iter().map(|s| s - 1).collect();
        (Some(perm), Some(m.permute_symmetric(&zero_based)))
    } else {
        (None, None)
    };
    Ok(PartitionCheck {
        sets: sorted_sets,
        verdict,
        permutation,
        permuted,
    })
}

/// Checks the block form of a permuted matrix whose leading states come in
/// groups of the given sizes: nothing leaves a group, so the rows outside a
/// group are zero in that group's columns.
pub fn has_block_form(permuted: &BooleanMatrix, sizes: &[usize]) -> bool {
    let mut start = 0;
    for &len in sizes {
        for j in start..start + len {
            if permuted.col_ones(j).any(|i| i < start || i >= start + len) {
                return false;
            }
        }
        start += len;
    }
    start <= permuted.rows()
}

/// Strongly connected components and the acyclic graph between them.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Condensation {
    /// Components ordered by least state; states sorted and 1-based.
    pub components: Vec<Vec<usize>>,
    /// Whether the component contains a cycle (a self-loop or two states).
    pub cyclic: Vec<bool>,
    /// `(from, to)` component indices (1-based), sorted and distinct.
    pub edges: Vec<(usize, usize)>,
}

pub fn condensation(m: &BooleanMatrix) -> Result<Condensation, ReachError> {
    let n = m.rows();
    let c = reach_matrix(m)?.c;
    let mut comp_of = vec![usize::MAX; n];
    let mut components: Vec<Vec<usize>> = Vec::new();
    for i in 0..n {
        if comp_of[i] != usize::MAX {
            continue;
        }
        let id = components.len();
        let mut members = vec![i];
        comp_of[i] = id;
        for j in i + 1..n {
            if comp_of[j] == usize::MAX && c.get(i, j) && c.get(j, i) {
                comp_of[j] = id;
                members.push(j);
            }
        }
        components.push(members);
    }
    let cyclic = components.iter().map(|ms| c.get(ms[0], ms[0])).collect();
    let mut edges = BTreeSet::new();
    for j in 0..n {
        for i in m.col_ones(j) {
            if comp_of[i] != comp_of[j] {
                edges.insert((comp_of[j] + 1, comp_of[i] + 1));
            }
        }
    }
    Ok(Condensation {
        components: components
            .into_iter()
            .map(|ms| ms.into_iter().map(|s| s + 1).collect())
            .collect(),
        cyclic,
        edges: edges.into_iter().collect(),
    })
}
