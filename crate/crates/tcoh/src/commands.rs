use std::fmt::Write as _;

use rayon::prelude::*;
use serde::Serialize;
use tcoh_core::bounds::{
    corollary_linear_bound, infidelity_band, simple_proof_estimate, RotationSchedule, SIMPLE_ESTIMATE_WARN,
};
use tcoh_core::chain::{
    exact_average_series, free_accumulation_channel, mc_block_count, monte_carlo_block, randomized_compiling_channel,
    ChainSpec, McAccumulator, McEstimate,
};
use tcoh_core::densesim::verify_theorem2;
use tcoh_core::foliation::{convert_noise_model_with_stats, DEFAULT_TUPLE_CAP};
use tcoh_core::ptm::average_infidelity;
use tcoh_core::threshold::{evaluate, ThresholdInputs};
use tcoh_core::Tolerances;

use crate::error::{CliError, CliResult};
use crate::fmt::{csv_float, csv_opt};
use crate::schema::{ChainConfig, FoliationConfig};

/// Monte Carlo over blocks in parallel, merged in block order so the result
/// does not depend on the thread count.
pub fn parallel_monte_carlo(spec: &ChainSpec, samples: u64, seed: u64) -> CliResult<Vec<McEstimate>> {
    if samples == 0 {
        return Err(CliError::usage("--samples must be at least 1"));
    }
    let horizon = spec.len();
    let blocks = (0..mc_block_count(samples))
        .into_par_iter()
        .map(|b| monte_carlo_block(spec, horizon, samples, seed, b))
        .collect::<Result<Vec<_>, _>>()?;
    let mut acc = McAccumulator::new(horizon);
    for b in &blocks {
        acc.merge(b);
    }
    Ok(acc.estimates())
}

fn mc_request(samples: Option<u64>, seed: Option<u64>) -> CliResult<Option<(u64, u64)>> {
    match (samples, seed) {
        (None, _) => Ok(None),
        (Some(_), None) => Err(CliError::usage("--samples requires --seed")),
        (Some(n), Some(s)) => Ok(Some((n, s))),
    }
}

pub fn chain(cfg: &ChainConfig, tol: &Tolerances, samples: Option<u64>, seed: Option<u64>) -> CliResult<String> {
    let mc = mc_request(samples, seed)?;
    let spec = cfg.chain_spec(tol)?;
    let exact = exact_average_series(&spec);
    let mc = match mc {
        Some((n, s)) => Some(parallel_monte_carlo(&spec, n, s)?),
        None => None,
    };
    let mut out = String::from("t,r_exact,r_free,r_rc,r_mc,mc_stderr\n");
    for t in 1..=spec.len() {
        let free = average_infidelity(&free_accumulation_channel(&spec, t)?);
        let rc = average_infidelity(&randomized_compiling_channel(&spec, t)?);
        let (rm, se) = match &mc {
            Some(v) => (Some(v[t - 1].infidelity), Some(v[t - 1].infidelity_stderr)),
            None => (None, None),
        };
        writeln!(
            out,
            "{t},{},{},{},{},{}",
            csv_float(average_infidelity(&exact[t - 1])),
            csv_float(free),
            csv_float(rc),
            csv_opt(rm),
            csv_opt(se)
        )
        .expect("write to String");
    }
    Ok(out)
}

pub fn bounds(cfg: &ChainConfig, tol: &Tolerances) -> CliResult<String> {
    let spec = cfg.chain_spec(tol)?;
    let steps = spec.len();
    let exact = exact_average_series(&spec);
    let b2 = infidelity_band(&spec, steps, 2)?;
    let b3 = infidelity_band(&spec, steps, 3)?;
    let simple = match cfg.angle_schedule()? {
        Some(thetas) => {
            let est = simple_proof_estimate(&RotationSchedule { thetas });
            if est.angle_budget > SIMPLE_ESTIMATE_WARN {
                eprintln!(
                    "warning: angle budget {} exceeds {SIMPLE_ESTIMATE_WARN}; r_simple is outside its small-angle regime",
                    est.angle_budget
                );
            }
            Some(est.values)
        }
        None => None,
    };
    let r0 = spec.errors().iter().map(average_infidelity).fold(0.0, f64::max);
    let mut out = String::from("t,r_exact,r_lo2,r_hi2,r_lo3,r_hi3,r_simple,r_corollary\n");
    for t in 1..=steps {
        let cor = corollary_linear_bound(r0, t).ok();
        writeln!(
            out,
            "{t},{},{},{},{},{},{},{}",
            csv_float(average_infidelity(&exact[t - 1])),
            csv_float(b2[t - 1].r_lo),
            csv_float(b2[t - 1].r_hi),
            csv_float(b3[t - 1].r_lo),
            csv_float(b3[t - 1].r_hi),
            csv_opt(simple.as_ref().map(|v| v[t - 1])),
            csv_opt(cor)
        )
        .expect("write to String");
    }
    Ok(out)
}

#[derive(Serialize)]
struct ProbEntry {
    gamma: usize,
    t: usize,
    w: usize,
    axis: String,
    p: f64,
}

#[derive(Serialize)]
struct Stats {
    kraus_products: u64,
    ptm_products: u64,
    tuples: u64,
}

#[derive(Serialize)]
struct FoliateJson {
    #[serde(rename = "L")]
    rounds: usize,
    widths: Vec<usize>,
    probs: Vec<ProbEntry>,
    stats: Stats,
}

/// JSON replacement model and its flat CSV.
pub fn foliate(cfg: &FoliationConfig, tol: &Tolerances) -> CliResult<(String, String)> {
    let model = cfg.model(tol)?;
    let (rep, stats) = convert_noise_model_with_stats(&model, tol, DEFAULT_TUPLE_CAP)?;
    let mut csv = String::from("gamma,t,w,axis,p\n");
    let mut probs = Vec::with_capacity(rep.probs.len());
    for (loc, (axis, p)) in &rep.probs {
        writeln!(csv, "{},{},{},{axis},{}", loc.gamma, loc.t, loc.w, csv_float(*p)).expect("write to String");
        probs.push(ProbEntry { gamma: loc.gamma, t: loc.t, w: loc.w, axis: axis.to_string(), p: *p });
    }
    let doc = FoliateJson {
        rounds: rep.rounds,
        widths: rep.widths.clone(),
        probs,
        stats: Stats { kraus_products: stats.kraus_products, ptm_products: stats.ptm_products, tuples: stats.tuples },
    };
    Ok((json(&doc), csv))
}

#[derive(Serialize)]
struct GroupJson {
    syndrome: String,
    prob_coherent: f64,
    prob_pauli: f64,
    max_ptm_delta: Option<f64>,
}

#[derive(Serialize)]
struct VerifyJson {
    groups: Vec<GroupJson>,
    max_deviation: f64,
    max_probability_deviation: f64,
    max_ptm_deviation: f64,
    raw_max_probability_deviation: f64,
    raw_max_ptm_deviation: f64,
}

pub fn verify(cfg: &FoliationConfig, tol: &Tolerances) -> CliResult<String> {
    let model = cfg.model(tol)?;
    let rep = verify_theorem2(&model)?;
    let doc = VerifyJson {
        groups: rep
            .groups
            .iter()
            .map(|g| GroupJson {
                syndrome: g.syndrome.clone(),
                prob_coherent: g.prob_coherent,
                prob_pauli: g.prob_pauli,
                max_ptm_delta: g.max_ptm_delta,
            })
            .collect(),
        max_deviation: rep.max_deviation(),
        max_probability_deviation: rep.max_probability_deviation,
        max_ptm_deviation: rep.max_ptm_deviation,
        raw_max_probability_deviation: rep.raw_max_probability_deviation,
        raw_max_ptm_deviation: rep.raw_max_ptm_deviation,
    };
    Ok(json(&doc))
}

#[derive(Serialize)]
struct ThresholdJson {
    p_th_bound: f64,
    theta_bound: f64,
}

pub fn threshold(b: u32, p_th: Option<f64>, n_locations: u32) -> CliResult<String> {
    let r = evaluate(&ThresholdInputs { b, n_locations, p_th_numeric: p_th })?;
    Ok(json(&ThresholdJson { p_th_bound: r.p_th_bound, theta_bound: r.theta_bound }))
}

fn json<T: Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("plain data serializes");
    s.push('\n');
    s
}
