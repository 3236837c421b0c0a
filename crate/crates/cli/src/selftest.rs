//! Randomized consistency checks between independent code paths of the
//! library, reproducible from a seed.

use std::fmt::Write as _;

use num_bigint::BigUint;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use stpnet::attractors::{count_cycles, enumerate_simple_cycles, trace_identity_holds};
use stpnet::netdsl::{parse_ts, spec_to_ts};
use stpnet::reach::{is_reachable, reach_matrix, reach_matrix_per_step};
use stpnet::simulation::{check_containment, find_robust_feedback, is_output_robust, robust_by_edges};
use stpnet::{BooleanMatrix, DisturbedModel, LogicalMatrix, TransitionSystem};

use crate::{CliError, Format};

#[derive(Serialize)]
struct CheckResult {
    name: &'static str,
    trials: usize,
    failures: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    first_failure: Option<usize>,
}

#[derive(Serialize)]
struct SelftestOut {
    seed: u64,
    passed: bool,
    checks: Vec<CheckResult>,
}

fn random_boolean(rng: &mut ChaCha8Rng, rows: usize, cols: usize, density: f64) -> BooleanMatrix {
    let mut m = BooleanMatrix::zeros(rows, cols);
    for i in 0..rows {
        for j in 0..cols {
            m.set(i, j, rng.gen_bool(density));
        }
    }
    m
}

fn random_ts(rng: &mut ChaCha8Rng, n: usize, m: usize, p: usize) -> TransitionSystem {
    let l = random_boolean(rng, n, n * m, 0.25);
    let h = LogicalMatrix::from_positions(p, (0..n).map(|_| rng.gen_range(0..p)).collect()).expect("rows in range");
    TransitionSystem::new(l, h).expect("shapes agree")
}

/// Counts satisfy the trace identity, bound the simple cycles of each
/// length from above and equal them for functional graphs.
fn cycle_counts(rng: &mut ChaCha8Rng) -> bool {
    let n = rng.gen_range(1..=6);
    let functional = rng.gen_bool(0.3);
    let m = if functional {
        LogicalMatrix::from_positions(n, (0..n).map(|_| rng.gen_range(0..n)).collect())
            .expect("rows in range")
            .to_boolean()
    } else {
        let density = rng.gen_range(0.1..0.6);
        random_boolean(rng, n, n, density)
    };
    let s_max = 8;
    let (Ok(counts), Ok(cycles)) = (count_cycles(&m, s_max), enumerate_simple_cycles(&m, None)) else {
        return false;
    };
    let traces: Vec<BigUint> = (1..=s_max).filter_map(|s| m.int_power_trace(s).ok()).collect();
    if !trace_identity_holds(&traces, &counts) {
        return false;
    }
    (1..=s_max).all(|s| {
        let simple = BigUint::from(cycles.iter().filter(|c| c.len() == s).count());
        if functional {
            counts[s - 1] == simple
        } else {
            counts[s - 1] >= simple
        }
    })
}

fn reachability(rng: &mut ChaCha8Rng) -> bool {
    let n = rng.gen_range(1..=24);
    let m = random_boolean(rng, n, n, (2.0 / n as f64).min(1.0));
    let (Ok(a), Ok(b)) = (reach_matrix(&m), reach_matrix_per_step(&m)) else {
        return false;
    };
    if a.c != b.c {
        return false;
    }
    let (from, to) = (rng.gen_range(1..=n), rng.gen_range(1..=n));
    is_reachable(&m, from, to).is_ok_and(|r| r == a.c.get(to - 1, from - 1))
}

fn containment(rng: &mut ChaCha8Rng) -> bool {
    let (n, m, p) = (rng.gen_range(1..=8), rng.gen_range(1..=2), rng.gen_range(1..=3));
    let ts = random_ts(rng, n, m, p);
    check_containment(&ts, 4).is_ok_and(|r| r.holds)
}

fn feedback(rng: &mut ChaCha8Rng) -> bool {
    let (n, ell, s) = (rng.gen_range(1..=4), rng.gen_range(1..=2), rng.gen_range(1..=2));
    let nominal = random_ts(rng, n, ell, 2);
    let l = random_boolean(rng, n, n * ell * s, 0.2);
    let Ok(disturbed) = TransitionSystem::new(l, nominal.h().clone()).and_then(|t| t.with_disturbance_arity(s)) else {
        return false;
    };
    let Ok(dm) = DisturbedModel::new(nominal, disturbed) else {
        return false;
    };
    let Ok(search) = find_robust_feedback(&dm, 1 << 12, false) else {
        return false;
    };
    search.gains.iter().all(|g| {
        robust_by_edges(&dm, g)
            && dm
                .closed_loop(g)
                .ok()
                .and_then(|c| is_output_robust(&c).ok())
                .is_some_and(|v| v.robust)
    })
}

fn ts_round_trip(rng: &mut ChaCha8Rng) -> bool {
    let (n, m, p) = (rng.gen_range(1..=6), rng.gen_range(1..=3), rng.gen_range(1..=3));
    let ts = random_ts(rng, n, m, p);
    let text = ts.to_spec("r").to_string();
    parse_ts(&text)
        .ok()
        .and_then(|spec| spec_to_ts(&spec).ok())
        .is_some_and(|back| back.l() == ts.l() && back.h() == ts.h())
}

pub fn run(seed: u64, trials: usize, f: Format) -> Result<String, CliError> {
    if f == Format::Dot {
        return Err(CliError::Config("selftest has no DOT rendering; use --format json or text".into()));
    }
    let checks: [(&'static str, fn(&mut ChaCha8Rng) -> bool); 5] = [
        ("cycle_counts", cycle_counts),
        ("reachability", reachability),
        ("containment", containment),
        ("feedback", feedback),
        ("ts_round_trip", ts_round_trip),
    ];
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let results: Vec<CheckResult> = checks
        .iter()
        .map(|(name, check)| {
            let failed: Vec<usize> = (0..trials).filter(|_| !check(&mut rng)).collect();
            CheckResult {
                name,
                trials,
                failures: failed.len(),
                first_failure: failed.first().copied(),
            }
        })
        .collect();
    let out = SelftestOut {
        seed,
        passed: results.iter().all(|r| r.failures == 0),
        checks: results,
    };
    let text = match f {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(&out).expect("report serializes");
            s.push('\n');
            s
        }
        _ => {
            let mut s = format!("selftest seed {seed}\n");
            for r in &out.checks {
                let verdict = if r.failures == 0 { "ok" } else { "FAILED" };
                let _ = writeln!(s, "{:<14} {verdict} ({}/{} trials)", r.name, r.trials - r.failures, r.trials);
            }
            s
        }
    };
    if out.passed {
        Ok(text)
    } else {
        print!("{text}");
        Err(CliError::Analysis("selftest found inconsistencies".into()))
    }
}
