//! Scenario runners behind the `advinfo` binary. Each `cmd_*` builds a
//! [`Report`]; `main` only parses arguments, prints and picks the exit code.

use advinfo_core::bits::{format_bits, parse_bits};
use advinfo_core::boolean_net::{
    average_over_orders, classical_trial_count, satisfying_assignments, verify_quantum_satisfaction, PartialAssignment,
    SatisfactionReport,
};
use advinfo_core::density::entanglement_entropy;
use advinfo_core::epr::{
    backdating_equivalence_check, evolve_to_t, joint_distribution, make_singlet, measure_photon, Photon,
};
use advinfo_core::grover::{grover_iterations, k_register_invariance_check, Pipeline, QueryCounter};
use advinfo_core::histories::{derive_phases, enumerate_histories, full_history_space, reconstruct, AdvancedInfo};
use advinfo_core::measure::{joint_outcome_distribution, measure, MeasurementMode};
use advinfo_core::queries::{advanced_classical_search, expected_query_table};
use advinfo_core::report::{distribution_value, state_value, Report};
use advinfo_core::search::entanglement_max_search;
use advinfo_core::{make_uniform_input, Execution, Subsystem, TOLERANCE};
use num_rational::Ratio;
use serde_json::{json, Value};
use thiserror::Error;

pub mod render;

/// Largest n accepted by `phases` (reconstruction is exhaustive).
pub const MAX_PHASES_N: usize = 3;
/// Largest n accepted by `grover` and `querycount`.
pub const MAX_N: usize = 8;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("usage: {0}")]
    Usage(String),
    #[error(transparent)]
    Core(#[from] advinfo_core::Error),
}

pub type Result<T> = std::result::Result<T, CliError>;

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

fn check_n(n: usize, max: usize) -> Result<()> {
    if n == 0 || n > max {
        return Err(usage(format!("--n must be between 1 and {max}, got {n}")));
    }
    Ok(())
}

fn bits_arg(flag: &str, text: &str, n: usize) -> Result<u64> {
    parse_bits(text, n).map_err(|e| usage(format!("{flag}: {e}")))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroverConfig {
    pub n: usize,
    pub oracle_k: Option<String>,
    pub iterations: Option<usize>,
    pub seed: u64,
}

pub fn cmd_grover(cfg: &GroverConfig) -> Result<Report> {
    check_n(cfg.n, MAX_N)?;
    let n = cfg.n;
    let oracle_k = cfg
        .oracle_k
        .as_deref()
        .map(|t| bits_arg("--oracle-k", t, n))
        .transpose()?;
    let iterations = cfg.iterations.unwrap_or_else(|| grover_iterations(n));
    if iterations == 0 {
        return Err(usage("--iterations must be at least 1"));
    }

    let mut r = Report::new("grover");
    r.input("n", n).input("iterations", iterations).input("seed", cfg.seed);
    if let Some(t) = &cfg.oracle_k {
        r.input("oracle_k", t.as_str());
    }

    let pipeline = Pipeline::grover(n, iterations)?;
    let input = make_uniform_input(n)?;
    let mut counter = QueryCounter::new();
    let out = pipeline.apply(&input, &mut counter)?;
    let joint = joint_outcome_distribution(&out, &[Subsystem::K, Subsystem::X])?;

    r.result("input_state", state_value(&input))
        .result("final_state", state_value(&out))
        .result("queries", counter.count())
        .result("joint_kx", distribution_value(&joint, &[("k", n), ("x", n)]))
        .result("k_entropy_bits", entanglement_entropy(&out, &Subsystem::K)?);
    r.check("k_register_untouched", k_register_invariance_check(&pipeline).holds);
    r.check("query_count_equals_iterations", counter.count() == iterations as u64);

    if let Some(k) = oracle_k {
        let reduced = measure(&out, &Subsystem::K, MeasurementMode::Forced(k))?;
        let reading = measure(&reduced.post_state, &Subsystem::X, MeasurementMode::Sampled(cfg.seed))?;
        r.result("oracle_choice_probability", reduced.probability)
            .result("reduced_state", state_value(&reduced.post_state))
            .result("solution", format_bits(reading.outcome, n))
            .result("solution_probability", reading.probability);
        if n == 2 && iterations == 1 {
            r.check("solution_equals_oracle_choice", reading.outcome == k);
            r.check("solution_is_definite", (reading.probability - 1.0).abs() <= TOLERANCE);
        }
    } else if n == 2 && iterations == 1 {
        let correlated = joint.len() == 4
            && joint
                .iter()
                .all(|(key, p)| key[0] == key[1] && (p - 0.25).abs() <= TOLERANCE);
        r.check("uniform_correlated_table", correlated);
    }
    Ok(r)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HistoriesConfig {
    pub n: usize,
    pub known_bits: Vec<String>,
    pub query: String,
}

fn parse_known_bit(text: &str) -> Result<(usize, u8)> {
    let bad = || usage(format!("--known-bit {text:?}: expected the form k<i>=<0|1>, e.g. k0=0"));
    let (name, value) = text.split_once('=').ok_or_else(bad)?;
    let index: usize = name.strip_prefix('k').ok_or_else(bad)?.parse().map_err(|_| bad())?;
    let value = match value {
        "0" => 0,
        "1" => 1,
        _ => return Err(bad()),
    };
    Ok((index, value))
}

pub fn cmd_histories(cfg: &HistoriesConfig) -> Result<Report> {
    check_n(cfg.n, MAX_PHASES_N)?;
    let n = cfg.n;
    let known = cfg
        .known_bits
        .iter()
        .map(|t| parse_known_bit(t))
        .collect::<Result<Vec<_>>>()?;
    let info = AdvancedInfo::new(n, &known).map_err(|e| usage(e.to_string()))?;
    let query = bits_arg("--query", &cfg.query, n)?;
    let histories = enumerate_histories(&info, query).map_err(|e| usage(e.to_string()))?;

    let mut r = Report::new("histories");
    r.input("n", n)
        .input("known_bits", info.label())
        .input("query", cfg.query.as_str());

    let listed: Vec<Value> = histories
        .iter()
        .enumerate()
        .map(|(i, h)| {
            json!({
                "number": i + 1,
                "initial": h.s_in.label(n),
                "after": h.s_out.label(n),
                "delta": u8::from(h.s_in.k == h.s_in.x),
            })
        })
        .collect();
    let runs: Vec<Value> = info
        .candidates()
        .into_iter()
        .map(|k| {
            advanced_classical_search(&info, k, Some(query)).map(|run| {
                json!({
                    "oracle_k": format_bits(run.oracle_k, n),
                    "queries": run.queries.iter().map(|&q| format_bits(q, n)).collect::<Vec<_>>(),
                    "deltas": run.deltas,
                    "solution": format_bits(run.solution, n),
                    "query_count": run.query_count,
                })
            })
        })
        .collect::<std::result::Result<_, _>>()?;

    let all_correct = info
        .candidates()
        .into_iter()
        .all(|k| advanced_classical_search(&info, k, Some(query)).is_ok_and(|run| run.solution == k));
    let max_queries = info
        .candidates()
        .into_iter()
        .filter_map(|k| advanced_classical_search(&info, k, Some(query)).ok())
        .map(|run| run.query_count)
        .max()
        .unwrap_or(0);

    r.result(
        "candidates",
        info.candidates().iter().map(|&k| format_bits(k, n)).collect::<Vec<_>>(),
    )
    .result("histories", listed)
    .result("runs", runs);
    r.check("solutions_correct", all_correct);
    if n == 2 {
        r.check("single_query", max_queries == 1);
    }
    Ok(r)
}

pub fn cmd_phases(n: usize) -> Result<Report> {
    if n == 0 || n > MAX_PHASES_N {
        return Err(usage(format!(
            "--n must be between 1 and {MAX_PHASES_N} for phase reconstruction, got {n}"
        )));
    }
    let mut r = Report::new("phases");
    r.input("n", n).input("search_n", 2);

    let (before, after) = reconstruct(&derive_phases(n)?, &full_history_space(n)?)?;
    let input = make_uniform_input(n)?;
    let second = Pipeline::new(input.layout(), vec![advinfo_core::grover::Step::Oracle])?
        .apply(&input, &mut QueryCounter::new())?;
    let d_in = before.max_abs_diff(&input);
    let d_out = after.max_abs_diff(&second);

    let search = entanglement_max_search(Execution::default())?;
    r.result("histories", full_history_space(n)?.len())
        .result("input_max_diff", d_in)
        .result("second_stage_max_diff", d_out)
        .result("quantum_entropy_bits", search.quantum_entropy)
        .result("max_entropy_bits", search.max_entropy)
        .result("maximizers", search.maximizers)
        .result("assignments", search.assignments)
        .result("quantum_mask", format!("{:#06x}", search.quantum_mask));
    r.check("reconstruction_input", d_in <= TOLERANCE)
        .check("reconstruction_second_stage", d_out <= TOLERANCE)
        .check("quantum_attains_max", search.quantum_attains_max);
    Ok(r)
}

pub fn cmd_querycount(n: usize) -> Result<Report> {
    check_n(n, MAX_N)?;
    let t = expected_query_table(n, Execution::default())?;
    let mut r = Report::new("querycount");
    r.input("n", n);
    r.result("plain_avg", t.plain_average.to_string())
        .result(
            "plain_avg_value",
            *t.plain_average.numer() as f64 / *t.plain_average.denom() as f64,
        )
        .result("plain_worst", t.plain_worst)
        .result("advanced", t.advanced)
        .result("quantum", t.quantum);
    if let Some(s) = &t.order_sweep {
        r.result("orders_checked", s.orders)
            .result("order_independent", s.order_independent());
        r.check("order_independent", s.order_independent());
    }
    if n == 2 {
        r.check(
            "matches_9/4_3_1_1",
            t.plain_average == Ratio::new(9, 4) && t.plain_worst == 3 && t.advanced == 1 && t.quantum == 1,
        );
    }
    Ok(r)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BooleanConfig {
    pub fixed_k: Option<String>,
    pub seed: u64,
}

fn satisfaction_value(s: &SatisfactionReport) -> Value {
    json!({
        "satisfying_mass": s.satisfying_mass,
        "support_size": s.support_size(),
        "support": s.support.iter().map(|&(k, x, p)| json!({
            "k": format_bits(k, 2),
            "x": format_bits(x, 2),
            "probability": p,
        })).collect::<Vec<_>>(),
    })
}

pub fn cmd_boolean(cfg: &BooleanConfig) -> Result<Report> {
    let fixed_k = cfg
        .fixed_k
        .as_deref()
        .map(|t| bits_arg("--fixed-k", t, 2))
        .transpose()?;
    let mut r = Report::new("boolean");
    r.input("seed", cfg.seed);
    if let Some(t) = &cfg.fixed_k {
        r.input("fixed_k", t.as_str());
    }

    let fixed = fixed_k.map(PartialAssignment::with_k).unwrap_or_default();
    let sat = satisfying_assignments(&fixed);
    let sat_value: Vec<Value> = sat
        .iter()
        .map(|a| {
            json!({
                "k0": a.k0, "k1": a.k1, "x0": a.x0, "x1": a.x1,
                "y0": a.y0, "y1": a.y1, "delta": a.delta,
            })
        })
        .collect();
    let ascending = classical_trial_count(fixed_k, &[0, 1, 2, 3])?;
    let over_orders = average_over_orders(fixed_k)?;

    let mut counter = QueryCounter::new();
    let out = Pipeline::grover(2, 1)?.apply(&make_uniform_input(2)?, &mut counter)?;
    let out_sat = verify_quantum_satisfaction(&out)?;

    r.result("satisfying_assignments", sat_value)
        .result("trials_ascending_expected", ascending.expected.to_string())
        .result("trials_ascending_worst", ascending.worst)
        .result("trials_average_over_orders", over_orders.to_string())
        .result("output_satisfaction", satisfaction_value(&out_sat))
        .result("queries", counter.count());
    r.check(
        "output_satisfies_network",
        (out_sat.satisfying_mass - 1.0).abs() <= TOLERANCE,
    )
    .check("difficulty_unaltered", over_orders == Ratio::new(9, 4));

    if let Some(k) = fixed_k {
        let reduced = measure(&out, &Subsystem::K, MeasurementMode::Forced(k))?;
        let red_sat = verify_quantum_satisfaction(&reduced.post_state)?;
        let reading = measure(&reduced.post_state, &Subsystem::X, MeasurementMode::Sampled(cfg.seed))?;
        r.result("reduced_satisfaction", satisfaction_value(&red_sat))
            .result("solution", format_bits(reading.outcome, 2))
            .result("solution_probability", reading.probability);
        r.check("unique_solution", sat.len() == 1 && sat[0].x() == k)
            .check("definite_outcome", red_sat.is_definite() && reading.outcome == k);
    } else {
        r.check(
            "four_solutions_on_diagonal",
            sat.len() == 4 && sat.iter().all(|a| a.k() == a.x()),
        );
    }
    Ok(r)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EprConfig {
    pub left: Option<u8>,
    pub seed: u64,
}

pub fn cmd_epr(cfg: &EprConfig) -> Result<Report> {
    let mode = match cfg.left {
        Some(b) if b < 2 => MeasurementMode::Forced(u64::from(b)),
        Some(b) => return Err(usage(format!("--left must be 0 or 1, got {b}"))),
        None => MeasurementMode::Sampled(cfg.seed),
    };
    let mut r = Report::new("epr");
    r.input("seed", cfg.seed);
    if let Some(b) = cfg.left {
        r.input("left", b);
    }

    let origin = make_singlet();
    let at_t = evolve_to_t(&origin)?;
    let left = measure_photon(&at_t, Photon::L, mode)?;
    let right = measure_photon(&left.post_state, Photon::R, MeasurementMode::Sampled(cfg.seed))?;

    let table = |first| -> Result<Value> {
        Ok(Value::Object(
            joint_distribution(&at_t, first)?
                .into_iter()
                .map(|((l, rr), p)| (format!("L={l},R={rr}"), Value::from(p)))
                .collect(),
        ))
    };
    let l_first = table(Photon::L)?;
    let r_first = table(Photon::R)?;
    let report = backdating_equivalence_check()?;
    let singlet: Vec<Value> = origin
        .polarization()
        .iter()
        .enumerate()
        .filter(|(_, a)| a.norm() > TOLERANCE)
        .map(|(i, a)| json!({ "L": i >> 1, "R": i & 1, "re": a.re, "im": a.im }))
        .collect();

    r.result("singlet", singlet)
        .result("positions_t0", format!("{:?}", origin.positions()))
        .result("positions_T", format!("{:?}", at_t.positions()))
        .result("left_outcome", left.outcome)
        .result("left_probability", left.probability)
        .result("right_outcome", right.outcome)
        .result("right_probability", right.probability)
        .result("joint_l_first", l_first.clone())
        .result("joint_r_first", r_first.clone())
        .result("backdating", serde_json::to_value(&report).expect("plain data"));
    r.check(
        "anticorrelation",
        report.equal_outcome_probability == 0.0 && right.outcome != left.outcome,
    )
    .check("order_invariance", l_first == r_first)
    .check("backdating_equivalence", report.passed());
    Ok(r)
}
