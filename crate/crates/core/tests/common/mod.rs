//! Brute-force reference implementations shared by the integration tests.
//! None of them go through the matrix algebra they are compared against.

#![allow(dead_code)]

use std::collections::{BTreeSet, VecDeque};

use rand::Rng;
use stpnet::BooleanMatrix;

/// `adj[j]` lists `i` with `M_ij = 1`, i.e. the successors of `j`.
pub fn successors(m: &BooleanMatrix) -> Vec<Vec<usize>> {
    let n = m.rows();
    (0..n).map(|j| (0..n).filter(|&i| m.get(i, j)).collect()).collect()
}

/// Rotation classes of closed walks with minimal period exactly `s`,
/// enumerated directly: each class is counted at its lexicographically
/// least rotation, which starts at the least state of the walk.
pub fn rotation_classes(m: &BooleanMatrix, s: usize) -> u64 {
    let adj = successors(m);
    let n = m.rows();
    let mut count = 0;
    let mut walk = Vec::with_capacity(s);
    for start in 0..n {
        walk.clear();
        walk.push(start);
        extend_walks(&adj, start, s, &mut walk, &mut count);
    }
    count
}

fn extend_walks(adj: &[Vec<usize>], start: usize, s: usize, walk: &mut Vec<usize>, count: &mut u64) {
    let last = *walk.last().unwrap();
    if walk.len() == s {
        if adj[last].contains(&start) && is_least_rotation(walk) && has_full_period(walk) {
            *count += 1;
        }
        return;
    }
    for &next in &adj[last] {
        if next >= start {
            walk.push(next);
            extend_walks(adj, start, s, walk, count);
            walk.pop();
        }
    }
}

pub fn is_least_rotation(w: &[usize]) -> bool {
    let len = w.len();
    (1..len).all(|r| {
        let rotated: Vec<usize> = (0..len).map(|i| w[(r + i) % len]).collect();
        w <= rotated.as_slice()
    })
}

pub fn has_full_period(w: &[usize]) -> bool {
    let len = w.len();
    (1..len).filter(|p| len % p == 0).all(|p| (0..len).any(|i| w[i] != w[i % p]))
}

/// Number of closed walks of length `s` (`tr(M^s)` by enumeration).
pub fn closed_walks(m: &BooleanMatrix, s: usize) -> u64 {
    let adj = successors(m);
    let n = m.rows();
    let mut total = 0;
    for start in 0..n {
        let mut ways = vec![0u64; n];
        ways[start] = 1;
        for _ in 0..s {
            let mut next = vec![0u64; n];
            for (v, &w) in ways.iter().enumerate() {
                for &t in &adj[v] {
                    next[t] += w;
                }
            }
            ways = next;
        }
        total += ways[start];
    }
    total
}

/// Elementary circuits by exhaustive path search, each in canonical rotation.
pub fn simple_cycles(m: &BooleanMatrix) -> BTreeSet<Vec<usize>> {
    let adj = successors(m);
    let n = m.rows();
    let mut out = BTreeSet::new();
    fn go(adj: &[Vec<usize>], start: usize, path: &mut Vec<usize>, out: &mut BTreeSet<Vec<usize>>) {
        let last = *path.last().unwrap();
        for &next in &adj[last] {
            if next == start {
                out.insert(path.iter().map(|v| v + 1).collect());
            } else if next > start && !path.contains(&next) {
                path.push(next);
                go(adj, start, path, out);
                path.pop();
            }
        }
    }
    for start in 0..n {
        go(&adj, start, &mut vec![start], &mut out);
    }
    out
}

/// `closure[i][j]`: `j` reaches `i` in one or more steps (BFS from each `j`).
pub fn bfs_closure(m: &BooleanMatrix) -> Vec<Vec<bool>> {
    let adj = successors(m);
    let n = m.rows();
    let mut c = vec![vec![false; n]; n];
    for j in 0..n {
        let mut queue: VecDeque<usize> = adj[j].iter().copied().collect();
        let mut seen = vec![false; n];
        while let Some(v) = queue.pop_front() {
            if seen[v] {
                continue;
            }
            seen[v] = true;
            c[v][j] = true;
            queue.extend(adj[v].iter().filter(|&&w| !seen[w]));
        }
    }
    c
}

pub fn random_boolean(rng: &mut impl Rng, rows: usize, cols: usize, density: f64) -> BooleanMatrix {
    let mut m = BooleanMatrix::zeros(rows, cols);
    for i in 0..rows {
        for j in 0..cols {
            if rng.gen_bool(density) {
                m.set(i, j, true);
            }
        }
    }
    m
}

/// A Boolean formula kept independent of the library's expression type.
#[derive(Debug, Clone)]
pub enum Formula {
    Var(usize),
    Const(bool),
    Not(Box<Formula>),
    And(Box<Formula>, Box<Formula>),
    Or(Box<Formula>, Box<Formula>),
    Xor(Box<Formula>, Box<Formula>),
    Iff(Box<Formula>, Box<Formula>),
    Implies(Box<Formula>, Box<Formula>),
}

impl Formula {
    pub fn random(rng: &mut impl Rng, vars: usize, depth: usize) -> Formula {
        if depth == 0 || rng.gen_bool(0.25) {
            return if rng.gen_bool(0.1) {
                Formula::Const(rng.gen())
            } else {
                Formula::Var(rng.gen_range(0..vars))
            };
        }
        let op = rng.gen_range(0..6);
        let mut sub = || Box::new(Formula::random(rng, vars, depth - 1));
        match op {
            0 => Formula::Not(sub()),
            1 => Formula::And(sub(), sub()),
            2 => Formula::Or(sub(), sub()),
            3 => Formula::Xor(sub(), sub()),
            4 => Formula::Iff(sub(), sub()),
            _ => Formula::Implies(sub(), sub()),
        }
    }

    pub fn eval(&self, x: &[bool]) -> bool {
        match self {
            Formula::Var(i) => x[*i],
            Formula::Const(b) => *b,
            Formula::Not(a) => !a.eval(x),
            Formula::And(a, b) => a.eval(x) && b.eval(x),
            Formula::Or(a, b) => a.eval(x) || b.eval(x),
            Formula::Xor(a, b) => a.eval(x) != b.eval(x),
            Formula::Iff(a, b) => a.eval(x) == b.eval(x),
            Formula::Implies(a, b) => !a.eval(x) || b.eval(x),
        }
    }

    /// Fully parenthesized source text.
    pub fn render(&self, names: &[String]) -> String {
        let bin = |op: &str, a: &Formula, b: &Formula| format!("({} {op} {})", a.render(names), b.render(names));
        match self {
            Formula::Var(i) => names[*i].clone(),
            Formula::Const(b) => if *b { "1" } else { "0" }.to_string(),
            Formula::Not(a) => format!("!{}", a.render(names)),
            Formula::And(a, b) => bin("&", a, b),
            Formula::Or(a, b) => bin("|", a, b),
            Formula::Xor(a, b) => bin("^", a, b),
            Formula::Iff(a, b) => bin("<->", a, b),
            Formula::Implies(a, b) => bin("->", a, b),
        }
    }
}

/// State index (0-based) of a Boolean assignment: first variable most
/// significant, `true` is digit 0.
pub fn state_index(x: &[bool]) -> usize {
    x.iter().fold(0, |acc, &b| acc * 2 + usize::from(!b))
}

pub fn state_values(index: usize, n_vars: usize) -> Vec<bool> {
    (0..n_vars).map(|i| (index >> (n_vars - 1 - i)) & 1 == 0).collect()
}
