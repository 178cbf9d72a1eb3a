use std::collections::BTreeMap;

use ida_core::graph::io::GraphDoc;
use ida_core::graph::EnumLimits;
use ida_core::ida::{
    bootstrap_causal_scores, ida_global, ida_local_all, median, BootstrapConfig, EffectMultiset, IdaConfig, Method,
    Modifications,
};
use ida_core::pc::{bic_select_alpha, pc_cpdag, repair_cpdag};
use ida_core::sim::{run_scenario, summarize_records, SimScenario};
use ida_core::stats::{CiTestConfig, Dataset};
use serde::Serialize;
use serde_json::json;

use crate::error::{CliError, CliResult};
use crate::io::{csv_bytes, read_dataset, write_atomic};
use crate::{DataArgs, EffectArgs, EstimateArgs, MethodArg, ScoreArgs, SimMethodArg, SimulateArgs, TuneArgs};

fn test_config(alpha: f64) -> CliResult<CiTestConfig> {
    CiTestConfig::new(alpha).map_err(|e| CliError::Config(e.to_string()))
}

fn ida_config(a: &EffectArgs) -> CliResult<IdaConfig> {
    if a.max_sib > 60 {
        return Err(CliError::Config(format!("--max-sib {} is above the supported 60", a.max_sib)));
    }
    Ok(IdaConfig {
        mods: Modifications { zero_path: a.mod_zero_path, prune_y: a.mod_prune_y },
        limits: EnumLimits { max_component_edges: a.max_enum, ..EnumLimits::default() },
        max_siblings: a.max_sib,
    })
}

fn load(a: &DataArgs) -> CliResult<Dataset<f64>> {
    let d = read_dataset(&a.input, &a.response)?;
    if a.no_standardize {
        Ok(d)
    } else {
        Ok(d.standardize()?)
    }
}

/// Number of covariates at each ambiguity level, with fractions.
fn ambiguity_table(effects: &[EffectMultiset<f64>]) -> serde_json::Value {
    let mut counts: BTreeMap<usize, usize> = BTreeMap::new();
    for m in effects {
        *counts.entry(m.ambiguity()).or_default() += 1;
    }
    let total = effects.len().max(1) as f64;
    counts.into_iter().map(|(k, c)| json!({"ambiguity": k, "covariates": c, "fraction": c as f64 / total})).collect()
}

pub fn estimate(a: &EstimateArgs) -> CliResult<()> {
    let test = test_config(a.alpha)?;
    let cfg = ida_config(&a.effects)?;
    let d = load(&a.data)?;
    let y = d.response();
    let res = pc_cpdag(&d, test, None)?;
    let (graph, repair, dags, effects) = match a.method {
        MethodArg::Local => {
            let effects = ida_local_all(&d, &res.cpdag, y, cfg).into_iter().collect::<Result<Vec<_>, _>>()?;
            (res.cpdag.clone(), None, None, effects)
        }
        MethodArg::Global => {
            let r = repair_cpdag(&res, a.data.seed);
            let theta = ida_global(&d, &r.cpdag, y, cfg)?;
            let repair = json!({
                "stage": r.stage,
                "dropped": r.dropped,
            });
            (r.cpdag, Some(repair), Some(theta.dags()), theta.rows())
        }
    };
    let names = d.names();
    let report = json!({
        "response": names[y],
        "method": match a.method { MethodArg::Local => Method::Local, MethodArg::Global => Method::Global }.as_str(),
        "alpha": a.alpha,
        "standardized": d.is_standardized(),
        "modifications": cfg.mods,
        "graph": GraphDoc::new(&graph, Some(names)),
        "repair": repair,
        "dags": dags,
        "effects": effects.iter().map(|m| m.to_json(names)).collect::<Vec<_>>(),
        "ambiguity_table": ambiguity_table(&effects),
        "diagnostics": res.diagnostics,
    });
    let mut text = serde_json::to_string_pretty(&report).expect("report serializes");
    text.push('\n');
    write_atomic(&a.data.out, text.as_bytes())
}

#[derive(Serialize)]
struct ScoreRow<'a> {
    name: &'a str,
    score: Option<f64>,
    ambiguity: Option<f64>,
    replicate_failures: usize,
}

pub fn score(a: &ScoreArgs) -> CliResult<()> {
    let test = test_config(a.alpha)?;
    let ida = ida_config(&a.effects)?;
    if a.bootstrap == 0 {
        return Err(CliError::Config("--bootstrap must be at least 1".into()));
    }
    let d = load(&a.data)?;
    let cfg = BootstrapConfig { test, replicates: a.bootstrap, seed: a.data.seed, ida, max_level: None };
    let scores = bootstrap_causal_scores(&d, cfg)?;
    let mut rows: Vec<ScoreRow> = scores
        .scores
        .iter()
        .map(|s| ScoreRow {
            name: &d.names()[s.covariate],
            score: s.score,
            ambiguity: if a.bootstrap_ambiguity {
                let amb: Vec<f64> = s.replicate_ambiguity.iter().flatten().map(|&k| k as f64).collect();
                median(&amb)
            } else {
                s.ambiguity.map(|k| k as f64)
            },
            replicate_failures: s.failures,
        })
        .collect();
    rows.sort_by(|x, y| {
        let key = |s: Option<f64>| s.unwrap_or(f64::NEG_INFINITY);
        key(y.score).total_cmp(&key(x.score))
    });
    write_atomic(&a.data.out, &csv_bytes(&rows)?)
}

#[derive(Serialize)]
struct TuneRow {
    alpha: f64,
    bic: f64,
    selected: bool,
    repair_stage: Option<u8>,
    error: Option<String>,
}

pub fn tune(a: &TuneArgs) -> CliResult<()> {
    for &alpha in &a.alphas {
        test_config(alpha)?;
    }
    let d = load(&a.data)?;
    let sel = bic_select_alpha(&d, &a.alphas, None, a.data.seed)?;
    let rows: Vec<TuneRow> = sel
        .scores
        .iter()
        .map(|s| TuneRow {
            alpha: s.alpha,
            bic: s.bic,
            selected: s.alpha == sel.alpha,
            repair_stage: s.stage.map(|st| st as u8),
            error: s.error.clone(),
        })
        .collect();
    write_atomic(&a.data.out, &csv_bytes(&rows)?)?;
    println!("selected alpha {}", sel.alpha);
    Ok(())
}

#[derive(Serialize)]
struct SimRow {
    rep: usize,
    method: Method,
    x: String,
    y: String,
    e2_ave: Option<f64>,
    e2_min: Option<f64>,
    runtime_s: Option<f64>,
    status: ida_core::sim::Status,
    truth: Method,
    distinct_sets: String,
    message: String,
}

pub fn simulate(a: &SimulateArgs) -> CliResult<()> {
    test_config(a.alpha)?;
    let cfg = ida_config(&a.effects)?;
    let mut s = SimScenario {
        p_plus_1: a.p_plus_1,
        en: a.en,
        n: a.n,
        n_reps: a.reps,
        blocks: None,
        seed: a.seed,
        signed_weights: a.signed_weights,
    };
    if let Some(b) = a.blocks {
        s = s.with_blocks(b).map_err(|e| CliError::Config(e.to_string()))?;
    }
    s.validate().map_err(|e| CliError::Config(e.to_string()))?;
    if s.n < 2 {
        return Err(CliError::Config("--n must be at least 2".into()));
    }
    let methods = match a.method {
        SimMethodArg::Local => vec![Method::Local],
        SimMethodArg::Global => vec![Method::Global],
        SimMethodArg::Both => vec![Method::Global, Method::Local],
    };
    let records = run_scenario::<f64>(&s, &methods, a.alpha, cfg)?;
    let name = |v: usize| format!("V{}", v + 1);
    let rows: Vec<SimRow> = records
        .iter()
        .map(|r| SimRow {
            rep: r.rep,
            method: r.method,
            x: name(r.x),
            y: name(r.y),
            e2_ave: r.e2_ave,
            e2_min: r.e2_min,
            runtime_s: a.timings.then_some(r.runtime_s),
            status: r.status,
            truth: r.truth,
            distinct_sets: r.distinct_sets.clone(),
            message: r.message.clone(),
        })
        .collect();
    write_atomic(&a.out, &csv_bytes(&rows)?)?;

    println!("method  ok  failed  median_e2_ave  median_e2_min  mean_runtime_s");
    let show = |v: Option<f64>| v.map_or_else(|| "NA".to_string(), |x| format!("{x:.4}"));
    for m in summarize_records(&records) {
        let runtime = if a.timings { show(m.mean_runtime_s) } else { "-".into() };
        println!(
            "{:<7} {:>3} {:>7}  {:>13}  {:>13}  {:>14}",
            m.method.as_str(),
            m.ok,
            m.failed,
            show(m.median_e2_ave),
            show(m.median_e2_min),
            runtime
        );
    }
    Ok(())
}
