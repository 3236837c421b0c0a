//! Acceptance checks: one PASS/FAIL line per criterion, with timings.
//! Exits non-zero when any criterion fails.

mod common;

use std::time::{Duration, Instant};

use num_bigint::BigUint;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use stpnet::attractors::{count_cycles, enumerate_simple_cycles, trace_identity_holds};
use stpnet::netdsl::{assemble_assr, parse_network, parse_ts, spec_to_ts};
use stpnet::reach::reach_matrix;
use stpnet::simulation::{check_containment, find_robust_feedback, is_output_robust, DEFAULT_FEEDBACK_CAP};
use stpnet::{BooleanMatrix, DisturbedModel, LogicalMatrix, TransitionSystem};

const FIG1_TS: &str = include_str!("../../../models/fig1_transition_system.ts");
const NOMINAL_BN: &str = include_str!("../../../models/robust_demo_nominal.bn");
const DISTURBED_BN: &str = include_str!("../../../models/robust_demo_disturbed.bn");
const CONTROL_BN: &str = include_str!("../../../models/robust_control.bn");

const FIG1_L: [[u8; 8]; 4] = [
    [0, 0, 0, 0, 0, 0, 0, 0],
    [1, 1, 0, 1, 0, 0, 1, 0],
    [1, 1, 0, 0, 0, 0, 1, 0],
    [0, 0, 0, 1, 0, 1, 0, 0],
];

const PRINTED_T: [[u8; 8]; 8] = [
    [1, 0, 1, 0, 0, 0, 0, 0],
    [0, 0, 0, 0, 0, 0, 0, 0],
    [0, 0, 0, 1, 0, 0, 0, 0],
    [0, 1, 0, 0, 0, 0, 0, 0],
    [0, 0, 0, 1, 0, 1, 0, 0],
    [0, 1, 0, 0, 0, 0, 0, 1],
    [1, 0, 1, 0, 1, 0, 1, 0],
    [0, 0, 0, 0, 0, 0, 0, 0],
];

const M0: [usize; 8] = [7, 6, 7, 5, 1, 3, 1, 4];
const PRINTED_L: [usize; 14] = [7, 6, 7, 5, 7, 6, 1, 4, 1, 3, 7, 5, 7, 6];
const H: [usize; 8] = [2, 1, 1, 2, 1, 2, 2, 1];

struct Outcome {
    pass: bool,
    detail: String,
}

type Check = Result<String, String>;

fn ensure(cond: bool, what: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(what.into())
    }
}

fn nums(v: &[u64]) -> Vec<BigUint> {
    v.iter().map(|&x| BigUint::from(x)).collect()
}

fn b(rows: &[[u8; 8]]) -> BooleanMatrix {
    BooleanMatrix::from_01(rows).expect("rectangular")
}

fn delta_of(m: &BooleanMatrix) -> Option<Vec<usize>> {
    LogicalMatrix::try_from(m).ok().map(|l| l.delta_indices())
}

/// Every matrix whose cycles were counted, for the trace identity check.
struct Analyzed(Vec<(BooleanMatrix, usize, Vec<BigUint>)>);

impl Analyzed {
    fn count(&mut self, m: &BooleanMatrix, s_max: usize) -> Vec<BigUint> {
        let counts = count_cycles(m, s_max).expect("square");
        self.0.push((m.clone(), s_max, counts.clone()));
        counts
    }
}

fn timed(limit: Option<Duration>, f: impl FnOnce() -> Check) -> Outcome {
    let start = Instant::now();
    let result = f();
    let elapsed = start.elapsed();
    let timing = match limit {
        Some(l) => format!("{:.3} ms, limit {:.0} ms", elapsed.as_secs_f64() * 1e3, l.as_secs_f64() * 1e3),
        None => format!("{:.3} ms", elapsed.as_secs_f64() * 1e3),
    };
    match result {
        Ok(d) if limit.is_none_or(|l| elapsed < l) => Outcome {
            pass: true,
            detail: format!("{d} ({timing})"),
        },
        Ok(d) => Outcome {
            pass: false,
            detail: format!("{d} but too slow ({timing})"),
        },
        Err(e) => Outcome {
            pass: false,
            detail: format!("{e} ({timing})"),
        },
    }
}

fn criterion_1(seen: &mut Analyzed) -> Check {
    let m = BooleanMatrix::from_01(&[[0, 0, 1, 0], [1, 0, 0, 0], [1, 1, 0, 0], [0, 0, 1, 1]]).unwrap();
    let counts = seen.count(&m, 4);
    ensure(counts == nums(&[1, 1, 1, 0]), format!("N_1..N_4 = {counts:?}"))?;
    let cycles = enumerate_simple_cycles(&m, None).map_err(|e| e.to_string())?;
    ensure(
        cycles == vec![vec![1, 2, 3], vec![1, 3], vec![4]],
        format!("simple cycles {cycles:?}"),
    )?;
    Ok("N = [1,1,1,0]; simple cycles {(4),(1,3),(1,2,3)}".into())
}

fn criterion_2(seen: &mut Analyzed) -> Check {
    let ts = spec_to_ts(&parse_ts(FIG1_TS).map_err(|e| e.to_string())?).map_err(|e| e.to_string())?;
    let m_i = ts.to_undistinguished();
    let expect_mi = BooleanMatrix::from_01(&[[0, 0, 0, 0], [1, 1, 1, 1], [1, 1, 1, 0], [0, 1, 0, 1]]).unwrap();
    ensure(m_i.m() == &expect_mi, format!("M_I =\n{}", m_i.m()))?;
    let xi_rows: Vec<[u8; 8]> = FIG1_L.iter().chain(FIG1_L.iter()).copied().collect();
    ensure(ts.to_distinguished().m() == &b(&xi_rows), "distinguished matrix differs")?;
    let counts = seen.count(m_i.m(), 5);
    ensure(counts == nums(&[3, 2, 4, 7, 16]), format!("counts {counts:?}"))?;
    let cycles = enumerate_simple_cycles(m_i.m(), None).map_err(|e| e.to_string())?;
    ensure(
        cycles == vec![vec![2], vec![2, 3], vec![2, 4], vec![3], vec![4]],
        format!("simple cycles {cycles:?}"),
    )?;
    Ok("M_I and Xi exact; N = [3,2,4,7,16]; simple cycles {(2),(3),(4),(2,3),(2,4)}".into())
}

fn published_model() -> Result<(TransitionSystem, TransitionSystem), String> {
    let nominal = assemble_assr(&parse_network(NOMINAL_BN).map_err(|e| e.to_string())?).map_err(|e| e.to_string())?;
    let disturbed = assemble_assr(&parse_network(DISTURBED_BN).map_err(|e| e.to_string())?).map_err(|e| e.to_string())?;
    Ok((nominal, disturbed))
}

fn check_published_system(nominal: &TransitionSystem, disturbed: &TransitionSystem) -> Result<Vec<usize>, String> {
    ensure(delta_of(nominal.l()).as_deref() == Some(&M0[..]), "M_0 differs")?;
    ensure(nominal.h().delta_indices() == H, "H differs")?;
    let l = delta_of(disturbed.l()).ok_or("L is not logical")?;
    ensure(l.len() == 16, format!("L has {} columns", l.len()))?;
    Ok(l)
}

fn criterion_3(seen: &mut Analyzed) -> Check {
    let (nominal, disturbed) = published_model()?;
    let l = check_published_system(&nominal, &disturbed)?;
    // the printed 14-entry list is the compiled L with columns 5 and 6 dropped
    let mut shortened = l.clone();
    shortened.drain(4..6);
    ensure(shortened == PRINTED_L, format!("compiled L = {l:?}"))?;
    let dm = DisturbedModel::new(nominal, disturbed).map_err(|e| e.to_string())?;
    let t = dm.disturbed_tsr().map_err(|e| e.to_string())?;
    ensure(t.m() == &b(&PRINTED_T), format!("T =\n{}", t.m()))?;
    let verdict = is_output_robust(&dm).map_err(|e| e.to_string())?;
    let q = BooleanMatrix::from_01(&[[0, 1], [1, 1]]).unwrap();
    ensure(verdict.nominal_quotient.q == q, "nominal quotient differs")?;
    ensure(verdict.disturbed_quotient.q == q, "disturbed quotient differs")?;
    ensure(verdict.robust, "not robust")?;
    seen.count(dm.nominal().l(), 8);
    seen.count(t.m(), 8);
    Ok(format!(
        "M_0, H exact; L = δ8{l:?} (printed with 14 entries, the pair at columns 5-6 missing; this 16-column L reproduces the printed T exactly); quotients [[0,1],[1,1]]; robust"
    ))
}

fn criterion_4() -> Check {
    let net = parse_network(CONTROL_BN).map_err(|e| e.to_string())?;
    let nominal = assemble_assr(&net.nominal_network().map_err(|e| e.to_string())?).map_err(|e| e.to_string())?;
    let disturbed = assemble_assr(&net).map_err(|e| e.to_string())?;
    let dm = DisturbedModel::new(nominal, disturbed).map_err(|e| e.to_string())?;
    let search = find_robust_feedback(&dm, DEFAULT_FEEDBACK_CAP, false).map_err(|e| e.to_string())?;
    ensure(search.examined == 256, format!("{} candidates examined", search.examined))?;
    let g = LogicalMatrix::delta(2, &[1, 1, 1, 1, 2, 2, 2, 2]).unwrap();
    ensure(search.gains.contains(&g), "u = x1 not among the robust gains")?;
    let closed = dm.closed_loop(&g).map_err(|e| e.to_string())?;
    let (nominal3, disturbed3) = published_model()?;
    ensure(closed.nominal().l() == nominal3.l(), "closed nominal loop differs")?;
    ensure(closed.disturbed().l() == disturbed3.l(), "closed disturbed loop differs")?;
    check_published_system(closed.nominal(), closed.disturbed())?;
    Ok(format!(
        "256 candidates, {} robust gains, including δ2[1,1,1,1,2,2,2,2]; closed loop equals criterion 3's system",
        search.gains.len()
    ))
}

fn criterion_5() -> Check {
    let ts = spec_to_ts(&parse_ts(FIG1_TS).map_err(|e| e.to_string())?).map_err(|e| e.to_string())?;
    ensure(ts.l() == &b(&FIG1_L), format!("L =\n{}", ts.l()))?;
    ensure(ts.h().delta_indices() == [1, 2, 3, 2], "H differs")?;
    Ok("4x8 L exact; H = δ3[1,2,3,2]".into())
}

fn criterion_6(seen: &mut Analyzed) -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    for trial in 0..200 {
        let n = rng.gen_range(1..=6);
        let density = rng.gen_range(0.1..0.7);
        let m = common::random_boolean(&mut rng, n, n, density);
        let counts = seen.count(&m, 8);
        for s in 1..=8 {
            let brute = common::rotation_classes(&m, s);
            ensure(counts[s - 1] == BigUint::from(brute), format!("cycle trial {trial}, s = {s}"))?;
        }
    }
    for trial in 0..100 {
        let n = rng.gen_range(1..=4);
        let names: Vec<String> = (1..=n).map(|i| format!("x{i}")).collect();
        let rules: Vec<common::Formula> = (0..n).map(|_| common::Formula::random(&mut rng, n, 4)).collect();
        let mut text = format!("network r\nstate {}\n", names.join(", "));
        for (v, f) in names.iter().zip(&rules) {
            text.push_str(&format!("{v}' = {}\n", f.render(&names)));
        }
        let ts = assemble_assr(&parse_network(&text).map_err(|e| e.to_string())?).map_err(|e| e.to_string())?;
        for x in 0..1usize << n {
            let values = common::state_values(x, n);
            let next: Vec<bool> = rules.iter().map(|f| f.eval(&values)).collect();
            let succ: Vec<usize> = ts.l().col_ones(x).collect();
            ensure(succ == [common::state_index(&next)], format!("network trial {trial}, state {}", x + 1))?;
        }
    }
    for trial in 0..100 {
        let n = rng.gen_range(1..=64);
        let density = (rng.gen_range(0.0..4.0) / n as f64).min(1.0);
        let m = common::random_boolean(&mut rng, n, n, density);
        let c = reach_matrix(&m).map_err(|e| e.to_string())?.c;
        let oracle = common::bfs_closure(&m);
        let same = (0..n).all(|i| (0..n).all(|j| c.get(i, j) == oracle[i][j]));
        ensure(same, format!("reach trial {trial}"))?;
    }
    Ok("200 cycle-count, 100 network and 100 reachability trials agree with the oracles".into())
}

fn criterion_7(seen: &Analyzed) -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for trial in 0..100 {
        let (n, m, p) = (rng.gen_range(1..=8), rng.gen_range(1..=2), rng.gen_range(1..=3));
        let l = common::random_boolean(&mut rng, n, n * m, 0.25);
        let h = LogicalMatrix::from_positions(p, (0..n).map(|_| rng.gen_range(0..p)).collect()).unwrap();
        let ts = TransitionSystem::new(l, h).map_err(|e| e.to_string())?;
        let r = check_containment(&ts, 5).map_err(|e| e.to_string())?;
        ensure(r.holds, format!("containment trial {trial}: {:?}", r.counterexample))?;
    }
    for (k, (m, s_max, counts)) in seen.0.iter().enumerate() {
        let traces: Vec<BigUint> = (1..=*s_max).map(|s| m.int_power_trace(s).expect("square")).collect();
        ensure(trace_identity_holds(&traces, counts), format!("trace identity fails on analyzed system {k}"))?;
    }
    Ok(format!(
        "containment holds on 100 random systems (horizon 5); trace identity holds on all {} analyzed systems",
        seen.0.len()
    ))
}

fn main() {
    let mut seen = Analyzed(Vec::new());
    let ms = Duration::from_millis;
    let outcomes = [
        (1, timed(Some(ms(1)), || criterion_1(&mut seen))),
        (2, timed(Some(ms(10)), || criterion_2(&mut seen))),
        (3, timed(Some(ms(10)), || criterion_3(&mut seen))),
        (4, timed(Some(ms(1000)), criterion_4)),
        (5, timed(None, criterion_5)),
        (6, timed(Some(ms(30_000)), || criterion_6(&mut seen))),
        (7, timed(None, || criterion_7(&seen))),
    ];
    let mut failed = 0;
    for (k, o) in &outcomes {
        println!("criterion {k}: {} {}", if o.pass { "PASS" } else { "FAIL" }, o.detail);
        failed += usize::from(!o.pass);
    }
    println!("{} of {} criteria pass", outcomes.len() - failed, outcomes.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
