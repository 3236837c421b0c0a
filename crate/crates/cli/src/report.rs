//! Subcommand implementations and their JSON, text and DOT renderings.

use std::fmt::Write as _;

use serde::Serialize;
use stpnet::attractors::{control_cycles_with, default_s_max, AnalysisError, CycleOptions, DEFAULT_CYCLE_CAP};
use stpnet::export::{
    condensation_to_dot, ts_to_dot, FeedbackJson, QuotientJson, ReachJson, RobustJson, TsJson,
};
use stpnet::reach::{check_attractor_partition, condensation, reach_matrix, ReachError};
use stpnet::simulation::{find_robust_feedback, is_output_robust, quotient, SimulationError, DEFAULT_FEEDBACK_CAP};
use stpnet::{
    AutonomousTS, BooleanMatrix, ControlMode, CycleReport, DisturbedModel, LogicalMatrix, TransitionSystem,
};

use crate::input::Loaded;
use crate::{CliError, ConvertTarget, DotView, Format, Mode};

fn json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("reports serialize");
    s.push('\n');
    s
}

fn no_dot(command: &str) -> CliError {
    CliError::Config(format!("{command} has no DOT rendering; use --format json or text"))
}

fn analysis(e: impl std::fmt::Display) -> CliError {
    CliError::Analysis(e.to_string())
}

fn control_mode(mode: Mode) -> ControlMode {
    match mode {
        Mode::Undistinguished => ControlMode::Undistinguished,
        Mode::Distinguished => ControlMode::Distinguished,
    }
}

fn autonomous(ts: &TransitionSystem, mode: Mode) -> AutonomousTS {
    match mode {
        Mode::Undistinguished => ts.to_undistinguished(),
        Mode::Distinguished => ts.to_distinguished(),
    }
}

fn matrix_text(m: &BooleanMatrix) -> String {
    match LogicalMatrix::try_from(m) {
        Ok(lm) => lm.to_string(),
        Err(_) => {
            let rows: Vec<String> = m.to_rows().iter().map(|r| join(r, " ")).collect();
            format!("[{}]", rows.join("\n     "))
        }
    }
}

fn join<T: ToString>(items: &[T], sep: &str) -> String {
    items.iter().map(ToString::to_string).collect::<Vec<_>>().join(sep)
}

fn cycle_text(c: &[usize]) -> String {
    format!("({})", join(c, ","))
}

fn rows_text(m: &BooleanMatrix, indent: &str) -> String {
    let mut out = String::new();
    for r in m.to_rows() {
        let _ = writeln!(out, "{indent}{}", join(&r, " "));
    }
    out
}

/// The system as `.ts` text with literal `L` and `H`.
fn ts_text(name: &str, ts: &TransitionSystem) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "ts {name}");
    let _ = writeln!(out, "states {}", ts.n_states());
    let _ = writeln!(out, "inputs {}", ts.n_inputs());
    let _ = writeln!(out, "outputs {}", ts.n_outputs());
    let _ = writeln!(out, "L = {}", matrix_text(ts.l()));
    let _ = writeln!(out, "H = {}", ts.h());
    out
}

#[derive(Serialize)]
struct AssrOut<'a> {
    name: &'a str,
    #[serde(skip_serializing_if = "Option::is_none")]
    arguments: Option<Vec<String>>,
    #[serde(flatten)]
    system: TsJson,
}

pub fn assr(m: &Loaded, f: Format) -> Result<String, CliError> {
    Ok(match f {
        Format::Json => json(&AssrOut {
            name: &m.name,
            arguments: m.network.as_ref().map(|n| n.arguments()),
            system: (&m.ts).into(),
        }),
        Format::Text => {
            let mut out = String::new();
            if let Some(net) = &m.network {
                let _ = writeln!(out, "# column order: {}", net.arguments().join(", "));
                if m.ts.disturbance_arity() > 1 {
                    let _ = writeln!(out, "# disturbance arity {}", m.ts.disturbance_arity());
                }
            }
            out + &ts_text(&m.name, &m.ts)
        }
        Format::Dot => ts_to_dot(&m.ts, &m.name),
    })
}

#[derive(Serialize)]
struct AttractorsOut<'a> {
    name: &'a str,
    mode: ControlMode,
    n_states: usize,
    s_max: usize,
    #[serde(flatten)]
    report: CycleReport,
}

pub fn attractors(
    m: &Loaded,
    f: Format,
    smax: Option<usize>,
    mode: Mode,
    max_len: Option<usize>,
    cap: Option<u64>,
    truncate: bool,
) -> Result<String, CliError> {
    if f == Format::Dot {
        return Err(no_dot("attractors"));
    }
    let auto = autonomous(&m.ts, mode);
    let s_max = match smax {
        Some(0) => return Err(CliError::Config("--smax must be at least 1".into())),
        Some(s) => s,
        None => default_s_max(auto.m()).ok_or_else(|| {
            CliError::Config("the system is nondeterministic; give the largest cycle length with --smax".into())
        })?,
    };
    let cap = cap.map_or(DEFAULT_CYCLE_CAP, |c| usize::try_from(c).unwrap_or(usize::MAX));
    let opts = CycleOptions {
        s_max,
        max_len,
        cap,
    };
    let report = control_cycles_with(&m.ts, control_mode(mode), &opts).map_err(analysis)?;
    if report.truncated && !truncate {
        return Err(analysis(AnalysisError::CycleCapExceeded { cap }));
    }
    let out = AttractorsOut {
        name: &m.name,
        mode: control_mode(mode),
        n_states: auto.n_states(),
        s_max,
        report,
    };
    Ok(match f {
        Format::Json => json(&out),
        _ => {
            let r = &out.report;
            let mut s = String::new();
            let _ = writeln!(s, "{}: {} states ({:?} mode)", out.name, out.n_states, mode);
            for (k, c) in r.counts.iter().enumerate() {
                let _ = writeln!(s, "N_{} = {c}", k + 1);
            }
            let _ = writeln!(s, "fixed points: {}", join(&r.fixed_points, " "));
            let _ = writeln!(
                s,
                "simple cycles ({}{}):",
                r.simple_cycles.len(),
                if r.truncated { ", truncated" } else { "" }
            );
            for c in &r.simple_cycles {
                let _ = writeln!(s, "  {}", cycle_text(c));
            }
            s
        }
    })
}

#[derive(Serialize)]
struct ConvertOut<'a> {
    name: &'a str,
    to: &'static str,
    #[serde(flatten)]
    system: TsJson,
}

pub fn convert(m: &Loaded, f: Format, to: ConvertTarget) -> Result<String, CliError> {
    let (ts, tag) = match to {
        ConvertTarget::Ts => (m.ts.clone(), "ts"),
        ConvertTarget::Undistinguished => (m.ts.to_undistinguished().to_ts(), "undistinguished"),
        ConvertTarget::Distinguished => (m.ts.to_distinguished().to_ts(), "distinguished"),
        ConvertTarget::Folded => (m.ts.fold_disturbance(), "folded"),
    };
    Ok(match f {
        Format::Json => json(&ConvertOut {
            name: &m.name,
            to: tag,
            system: (&ts).into(),
        }),
        Format::Text => ts.to_spec(&m.name).to_string(),
        Format::Dot => ts_to_dot(&ts, &m.name),
    })
}

fn parse_set(s: &str) -> Result<Vec<usize>, CliError> {
    s.split(|c: char| c == ',' || c.is_whitespace())
        .filter(|t| !t.is_empty())
        .map(|t| {
            t.parse::<usize>()
                .map_err(|_| CliError::Config(format!("--set: '{t}' is not a state index")))
        })
        .collect()
}

fn reach_error(e: ReachError) -> CliError {
    match e {
        ReachError::Matrix(_) => analysis(e),
        _ => CliError::Config(e.to_string()),
    }
}

#[derive(Serialize)]
struct ReachOut<'a> {
    name: &'a str,
    mode: ControlMode,
    n_states: usize,
    #[serde(flatten)]
    reach: ReachJson,
}

pub fn reach(m: &Loaded, f: Format, sets: &[String], mode: Mode) -> Result<String, CliError> {
    let auto = autonomous(&m.ts, mode);
    if f == Format::Dot {
        let c = condensation(auto.m()).map_err(reach_error)?;
        let labels = auto.to_ts().labels_or_generic().states;
        return Ok(condensation_to_dot(&c, &m.name, &labels));
    }
    let c = reach_matrix(auto.m()).map_err(reach_error)?.c;
    let sets: Vec<Vec<usize>> = sets.iter().map(|s| parse_set(s)).collect::<Result<_, _>>()?;
    let check = if sets.is_empty() {
        None
    } else {
        Some(check_attractor_partition(auto.m(), &sets).map_err(reach_error)?)
    };
    let out = ReachOut {
        name: &m.name,
        mode: control_mode(mode),
        n_states: auto.n_states(),
        reach: ReachJson::new(&c, check.as_ref()),
    };
    Ok(match f {
        Format::Json => json(&out),
        _ => {
            let mut s = format!("{}: reachability matrix (row i, column j: j reaches i)\n", out.name);
            s += &rows_text(&c, "  ");
            if let Some(inv) = out.reach.invariant {
                let _ = writeln!(s, "invariant: {inv}");
            }
            if let Some(p) = &out.reach.permutation {
                let _ = writeln!(s, "permutation: {}", join(p, " "));
            }
            s
        }
    })
}

#[derive(Serialize)]
struct QuotientOut<'a> {
    name: &'a str,
    #[serde(flatten)]
    quotient: QuotientJson,
}

pub fn quotient_report(m: &Loaded, f: Format) -> Result<String, CliError> {
    let q = quotient(&m.ts).map_err(analysis)?;
    Ok(match f {
        Format::Json => json(&QuotientOut {
            name: &m.name,
            quotient: (&q).into(),
        }),
        Format::Text => {
            let mut s = format!("{}: {} output classes, {} inputs\n", m.name, q.n_classes, q.n_inputs);
            for (c, members) in q.class_members.iter().enumerate() {
                let _ = writeln!(s, "class {}: {{{}}}", c + 1, join(members, ", "));
            }
            s += "Q =\n";
            s += &rows_text(&q.q, "  ");
            s += "Hbar =\n";
            s += &rows_text(&q.hbar, "  ");
            s
        }
        Format::Dot => ts_to_dot(&q.to_ts(), &format!("{}_quotient", m.name)),
    })
}

#[derive(Serialize)]
struct RobustOut<'a> {
    name: &'a str,
    #[serde(flatten)]
    verdict: RobustJson,
}

pub fn robust(name: &str, dm: &DisturbedModel, f: Format) -> Result<String, CliError> {
    if f == Format::Dot {
        return Err(no_dot("robust"));
    }
    let v = is_output_robust(dm).map_err(analysis)?;
    Ok(match f {
        Format::Json => json(&RobustOut {
            name,
            verdict: (&v).into(),
        }),
        _ => {
            let mut s = format!("{name}: robust = {}\n", v.robust);
            if let Some(w) = v.witness {
                let _ = writeln!(s, "quotients differ at class {}, input {}", w.class, w.input);
            }
            s += "nominal Q =\n";
            s += &rows_text(&v.nominal_quotient.q, "  ");
            s += "disturbed Q =\n";
            s += &rows_text(&v.disturbed_quotient.q, "  ");
            s
        }
    })
}

#[derive(Serialize)]
struct FeedbackOut<'a> {
    name: &'a str,
    #[serde(flatten)]
    search: FeedbackJson,
}

pub fn search_feedback(
    name: &str,
    dm: &DisturbedModel,
    f: Format,
    cap: Option<u64>,
    truncate: bool,
) -> Result<String, CliError> {
    if f == Format::Dot {
        return Err(no_dot("search-feedback"));
    }
    let cap = cap.unwrap_or(DEFAULT_FEEDBACK_CAP);
    let search = find_robust_feedback(dm, cap, truncate).map_err(|e| match e {
        SimulationError::Model(_) => CliError::Config(e.to_string()),
        _ => analysis(e),
    })?;
    let out = FeedbackJson::new(&search, dm.control_arity(), dm.n_states());
    Ok(match f {
        Format::Json => json(&FeedbackOut { name, search: out }),
        _ => {
            let mut s = format!(
                "{name}: {} of {} candidates examined{}, {} robust\n",
                out.examined,
                out.candidates,
                if out.truncated { " (truncated)" } else { "" },
                out.gains.len()
            );
            for g in &search.gains {
                let _ = writeln!(s, "  G = {g}");
            }
            s
        }
    })
}

pub fn export_dot(m: &Loaded, view: DotView) -> Result<String, CliError> {
    match view {
        DotView::Ts => Ok(ts_to_dot(&m.ts, &m.name)),
        DotView::Condensation => reach(m, Format::Dot, &[], Mode::Undistinguished),
        DotView::Quotient => quotient_report(m, Format::Dot),
    }
}
