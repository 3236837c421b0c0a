mod common;

use common::{state_index, state_values, Formula};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use stpnet::netdsl::{assemble_assr, parse_network, parse_ts, spec_to_ts, structure_matrix};
use stpnet::LogicalMatrix;

fn names(prefix: &str, count: usize) -> Vec<String> {
    (1..=count).map(|i| format!("{prefix}{i}")).collect()
}

/// Random network text plus the formulas it was rendered from. Formula
/// variables index inputs first, then states.
fn random_network(rng: &mut impl Rng, n: usize, m: usize) -> (String, Vec<Formula>) {
    let states = names("x", n);
    let inputs = names("u", m);
    let scope: Vec<String> = inputs.iter().chain(&states).cloned().collect();
    let mut text = format!("network random\nstate {}\n", states.join(", "));
    if m > 0 {
        text.push_str(&format!("input {}\n", inputs.join(", ")));
    }
    let mut rules = Vec::new();
    for s in &states {
        let f = Formula::random(rng, n + m, 4);
        text.push_str(&format!("{s}' = {}\n", f.render(&scope)));
        rules.push(f);
    }
    (text, rules)
}

#[test]
fn assr_matches_truth_table_simulation() {
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    for _ in 0..150 {
        let n = rng.gen_range(1..=5);
        let m = rng.gen_range(0..=(10 - n).min(3));
        let (text, rules) = random_network(&mut rng, n, m);
        let net = parse_network(&text).unwrap_or_else(|e| panic!("{e}\n{text}"));
        let ts = assemble_assr(&net).unwrap();
        let n_states = 1usize << n;
        for u in 0..(1usize << m) {
            for x in 0..n_states {
                let mut env = state_values(u, m);
                env.extend(state_values(x, n));
                let next: Vec<bool> = rules.iter().map(|f| f.eval(&env)).collect();
                let succ: Vec<usize> = ts.l().col_ones(u * n_states + x).collect();
                assert_eq!(succ, vec![state_index(&next)], "{text}\nu={u} x={x}");
            }
        }
    }
}

#[test]
fn structure_matrices_have_unit_columns() {
    let mut rng = ChaCha8Rng::seed_from_u64(22);
    for _ in 0..100 {
        let n = rng.gen_range(1..=4);
        let (text, _) = random_network(&mut rng, n, 1);
        let net = parse_network(&text).unwrap();
        let args = net.arguments();
        for f in &net.updates {
            let b = structure_matrix(f, &args, 2).unwrap().to_boolean();
            assert!((0..b.cols()).all(|j| b.col_ones(j).count() == 1));
        }
    }
}

#[test]
fn network_display_parses_back_to_the_same_assr() {
    let mut rng = ChaCha8Rng::seed_from_u64(23);
    for _ in 0..50 {
        let (text, _) = random_network(&mut rng, 3, 1);
        let net = parse_network(&text).unwrap();
        let again = parse_network(&net.to_string()).unwrap();
        assert_eq!(assemble_assr(&net).unwrap().l(), assemble_assr(&again).unwrap().l());
    }
}

#[test]
fn printed_spec_reproduces_matrices_and_ignores_order() {
    let mut rng = ChaCha8Rng::seed_from_u64(24);
    for _ in 0..50 {
        let (n, m, p) = (rng.gen_range(1..=6), rng.gen_range(1..=3), rng.gen_range(1..=3));
        let text = format!("ts r\nstates {n}\ninputs {m}\noutputs {p}\n");
        let mut lines = Vec::new();
        for x in 1..=n {
            for u in 1..=m {
                let succ: Vec<String> = (1..=n).filter(|_| rng.gen_bool(0.3)).map(|s| s.to_string()).collect();
                lines.push(format!("trans {x} {u} -> {}\n", succ.join(" ")));
            }
        }
        let obs: Vec<String> = (1..=n).map(|x| format!("obs {x} -> {}\n", rng.gen_range(1..=p))).collect();
        let forward = format!("{text}{}{}", lines.concat(), obs.concat());
        lines.reverse();
        let backward = format!("{text}{}{}", lines.concat(), obs.concat());
        let a = spec_to_ts(&parse_ts(&forward).unwrap()).unwrap();
        let b = spec_to_ts(&parse_ts(&backward).unwrap()).unwrap();
        assert_eq!((a.l(), a.h()), (b.l(), b.h()));
        let printed = parse_ts(&parse_ts(&forward).unwrap().to_string()).unwrap();
        let c = spec_to_ts(&printed).unwrap();
        assert_eq!((a.l(), a.h()), (c.l(), c.h()));
    }
}

#[test]
fn distinct_specs_give_distinct_matrices() {
    let base = "ts a\nstates 2\ninputs 2\ntrans 1 1 -> 2\ntrans 2 2 -> 1\n";
    let other = "ts a\nstates 2\ninputs 2\ntrans 1 1 -> 2\ntrans 2 1 -> 1\n";
    let a = spec_to_ts(&parse_ts(base).unwrap()).unwrap();
    let b = spec_to_ts(&parse_ts(other).unwrap()).unwrap();
    assert_ne!(a.l(), b.l());
}

#[test]
fn operator_conventions_reproduce_published_matrices() {
    let nominal = parse_network(include_str!("../../../models/robust_demo_nominal.bn")).unwrap();
    let disturbed = parse_network(include_str!("../../../models/robust_demo_disturbed.bn")).unwrap();
    let m0 = assemble_assr(&nominal).unwrap();
    let l = assemble_assr(&disturbed).unwrap();
    assert_eq!(
        LogicalMatrix::try_from(m0.l()).unwrap().delta_indices(),
        vec![7, 6, 7, 5, 1, 3, 1, 4]
    );
    assert_eq!(
        LogicalMatrix::try_from(l.l()).unwrap().delta_indices(),
        vec![7, 6, 7, 5, 7, 5, 7, 6, 1, 4, 1, 3, 7, 5, 7, 6]
    );
    assert_eq!(m0.h().delta_indices(), vec![2, 1, 1, 2, 1, 2, 2, 1]);
    assert_eq!(l.disturbance_arity(), 2);
}

#[test]
fn single_file_nominal_matches_separate_file() {
    let single = parse_network(include_str!("../../../models/robust_demo.bn")).unwrap();
    let nominal = parse_network(include_str!("../../../models/robust_demo_nominal.bn")).unwrap();
    let derived = single.nominal_network().unwrap();
    assert_eq!(
        assemble_assr(&derived).unwrap().l(),
        assemble_assr(&nominal).unwrap().l()
    );
}

#[test]
fn k_valued_tables_compile() {
    let net = parse_network(include_str!("../../../models/three_valued.bn")).unwrap();
    let ts = assemble_assr(&net).unwrap();
    assert_eq!(ts.n_states(), 9);
    // a' = table(b), b' = table(a, b); state (a, b) has index 3(a-1) + (b-1)
    let a_next = [2, 3, 1];
    let b_next = [1, 1, 2, 2, 3, 3, 3, 1, 2];
    for a in 0..3 {
        for b in 0..3 {
            let x = 3 * a + b;
            let expect = 3 * (a_next[b] - 1) + (b_next[x] - 1);
            assert_eq!(ts.l().col_ones(x).collect::<Vec<_>>(), vec![expect]);
        }
    }
}
