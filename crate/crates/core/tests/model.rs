mod common;

use std::collections::BTreeSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use stpnet::{BooleanMatrix, LogicalMatrix, TransitionSystem};

fn random_ts(rng: &mut impl Rng, n: usize, m: usize, density: f64) -> TransitionSystem {
    let l = common::random_boolean(rng, n, n * m, density);
    TransitionSystem::new(l, LogicalMatrix::identity(n)).unwrap()
}

fn random_gain(rng: &mut impl Rng, ell: usize, n: usize) -> LogicalMatrix {
    LogicalMatrix::from_positions(ell, (0..n).map(|_| rng.gen_range(0..ell)).collect()).unwrap()
}

#[test]
fn undistinguished_is_union_of_input_edges() {
    let mut rng = ChaCha8Rng::seed_from_u64(31);
    for _ in 0..60 {
        let (n, m) = (rng.gen_range(1..=16), rng.gen_range(1..=4));
        let ts = random_ts(&mut rng, n, m, 0.15);
        let auto = ts.to_undistinguished();
        for j in 0..n {
            for i in 0..n {
                let witnessed = (0..m).any(|u| ts.l().get(i, u * n + j));
                assert_eq!(auto.m().get(i, j), witnessed);
            }
        }
    }
}

fn trajectories(m: &BooleanMatrix, len: usize) -> Vec<Vec<usize>> {
    let adj = common::successors(m);
    let mut out: Vec<Vec<usize>> = (0..m.rows()).map(|v| vec![v]).collect();
    for _ in 0..len {
        out = out
            .into_iter()
            .flat_map(|t| {
                let last = *t.last().unwrap();
                adj[last].iter().map(move |&w| {
                    let mut next = t.clone();
                    next.push(w);
                    next
                }).collect::<Vec<_>>()
            })
            .collect();
    }
    out
}

#[test]
fn distinguished_trajectories_project_to_undistinguished_ones() {
    let mut rng = ChaCha8Rng::seed_from_u64(32);
    for _ in 0..20 {
        let (n, m) = (rng.gen_range(1..=4), rng.gen_range(1..=2));
        let ts = random_ts(&mut rng, n, m, 0.3);
        let xi = ts.to_distinguished();
        let undist = ts.to_undistinguished();
        for t in trajectories(xi.m(), 6) {
            for w in t.windows(2) {
                assert!(undist.m().get(w[1] % n, w[0] % n));
            }
        }
    }
}

#[test]
fn closing_the_loop_commutes_with_folding_the_disturbance() {
    let mut rng = ChaCha8Rng::seed_from_u64(33);
    for _ in 0..100 {
        let (n, ell, s) = (rng.gen_range(1..=6), rng.gen_range(1..=3), rng.gen_range(1..=3));
        let ts = random_ts(&mut rng, n, ell * s, 0.3).with_disturbance_arity(s).unwrap();
        let g = random_gain(&mut rng, ell, n);
        let a = ts.closed_loop(&g).unwrap().fold_disturbance().to_undistinguished();
        let b = ts.fold_disturbance().closed_loop(&g).unwrap().to_undistinguished();
        assert_eq!(a.m(), b.m());
    }
}

#[test]
fn step_is_matrix_vector_product() {
    let mut rng = ChaCha8Rng::seed_from_u64(34);
    for _ in 0..100 {
        let (n, m) = (rng.gen_range(1..=8), rng.gen_range(1..=3));
        let ts = random_ts(&mut rng, n, m, 0.3);
        let set: BTreeSet<usize> = (1..=n).filter(|_| rng.gen_bool(0.5)).collect();
        let v: Vec<bool> = (1..=n).map(|x| set.contains(&x)).collect();
        for u in 1..=m {
            let via_matrix = ts.input_block(u - 1).mul_vector(&v);
            let expect: BTreeSet<usize> = (1..=n).filter(|&i| via_matrix[i - 1]).collect();
            assert_eq!(ts.step(&set, u).unwrap(), expect);
        }
    }
}

#[test]
fn distinguished_conversion_of_published_system() {
    let spec = stpnet::netdsl::parse_ts(include_str!("../../../models/fig1_transition_system.ts")).unwrap();
    let ts = stpnet::netdsl::spec_to_ts(&spec).unwrap();
    let xi = ts.to_distinguished();
    let top = [
        [0, 0, 0, 0, 0, 0, 0, 0],
        [1, 1, 0, 1, 0, 0, 1, 0],
        [1, 1, 0, 0, 0, 0, 1, 0],
        [0, 0, 0, 1, 0, 1, 0, 0],
    ];
    let rows: Vec<[u8; 8]> = top.iter().chain(top.iter()).copied().collect();
    assert_eq!(xi.m(), &BooleanMatrix::from_01(&rows).unwrap());
}
