use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{error_measures, gen_data, random_weighted_dag, true_theta, SimScenario};
use crate::error::{Error, ErrorKind, Result};
use crate::graph::Vertex;
use crate::ida::{ida_global, ida_local, median, EffectMultiset, IdaConfig, Method};
use crate::pc::{pc_cpdag, repair_cpdag};
use crate::scalar::Scalar;
use crate::stats::{CiTestConfig, Dataset};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Ok,
    Input,
    Numerical,
    Resource,
}

impl From<&Error> for Status {
    fn from(e: &Error) -> Self {
        match e.kind() {
            ErrorKind::Input => Status::Input,
            ErrorKind::Numerical => Status::Numerical,
            ErrorKind::Resource => Status::Resource,
        }
    }
}

/// Outcome of one method on one replicate.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SimRecord {
    pub rep: usize,
    pub method: Method,
    pub x: Vertex,
    pub y: Vertex,
    pub e2_ave: Option<f64>,
    pub e2_min: Option<f64>,
    /// Wall-clock seconds for PC, repair and the effect computation.
    pub runtime_s: f64,
    pub status: Status,
    /// Method used for the true multiset; local when the class of the true
    /// CPDAG is too large to enumerate.
    pub truth: Method,
    /// Distinct adjustment sets of the estimate, `;`-separated.
    pub distinct_sets: String,
    pub message: String,
}

fn format_sets<T: Scalar>(m: &EffectMultiset<T>, names: &[String]) -> String {
    let mut sets: Vec<String> = m
        .entries
        .iter()
        .map(|e| match &e.adjustment {
            None => "0".to_string(),
            Some(s) => format!("{{{}}}", s.iter().map(|&v| names[v].as_str()).collect::<Vec<_>>().join(",")),
        })
        .collect();
    sets.sort();
    sets.join(";")
}

/// Runs every replicate of `s` in parallel. Replicate `r` draws everything
/// from stream `r` of a generator seeded with `s.seed`, so the output does
/// not depend on scheduling; runtimes aside.
pub fn run_scenario<T: Scalar>(
    s: &SimScenario,
    methods: &[Method],
    alpha: f64,
    cfg: IdaConfig,
) -> Result<Vec<SimRecord>> {
    s.validate()?;
    if s.block_size() < 2 {
        return Err(Error::Precondition("each block needs at least two vertices".into()));
    }
    if methods.is_empty() || methods.contains(&Method::Oracle) {
        return Err(Error::Precondition("methods must be a nonempty list of global and local".into()));
    }
    let test = CiTestConfig::new(alpha)?;
    let per_rep: Vec<Vec<SimRecord>> =
        (0..s.n_reps).into_par_iter().map(|rep| replicate::<T>(s, rep, methods, test, cfg)).collect();
    Ok(per_rep.into_iter().flatten().collect())
}

fn replicate<T: Scalar>(
    s: &SimScenario,
    rep: usize,
    methods: &[Method],
    test: CiTestConfig,
    cfg: IdaConfig,
) -> Vec<SimRecord> {
    let mut rng = ChaCha8Rng::seed_from_u64(s.seed);
    rng.set_stream(rep as u64);
    let w = random_weighted_dag::<T, _>(s, &mut rng);
    let y = rng.random_range(0..s.p_plus_1);
    let start = s.block_of(y) * s.block_size();
    let mut x = start + rng.random_range(0..s.block_size() - 1);
    if x >= y {
        x += 1;
    }
    let repair_seed: u64 = rng.random();
    let data = gen_data(&w, s.n, &mut rng).and_then(|d| d.with_response(y));

    let (truth_method, truth) = match true_theta(&w, x, y, Method::Global, cfg) {
        Err(Error::Resource(_)) => (Method::Local, true_theta(&w, x, y, Method::Local, cfg)),
        other => (Method::Global, other),
    };

    let fail = |method: Method, e: &Error, runtime_s: f64| SimRecord {
        rep,
        method,
        x,
        y,
        e2_ave: None,
        e2_min: None,
        runtime_s,
        status: Status::from(e),
        truth: truth_method,
        distinct_sets: String::new(),
        message: e.to_string(),
    };
    let (data, truth) = match (data, truth) {
        (Ok(d), Ok(t)) => (d, t),
        (Err(e), _) | (_, Err(e)) => return methods.iter().map(|&m| fail(m, &e, 0.0)).collect(),
    };

    let t0 = Instant::now();
    let cpdag = pc_cpdag(&data, test, None).map(|res| repair_cpdag(&res, repair_seed).cpdag);
    let pc_time = t0.elapsed().as_secs_f64();
    let cpdag = match cpdag {
        Ok(g) => g,
        Err(e) => return methods.iter().map(|&m| fail(m, &e, pc_time)).collect(),
    };

    methods
        .iter()
        .map(|&method| {
            let t1 = Instant::now();
            let est = estimate(&data, &cpdag, x, y, method, cfg);
            let runtime_s = pc_time + t1.elapsed().as_secs_f64();
            match est.and_then(|m| Ok((error_measures(&m, &truth)?, m))) {
                Ok(((ave, min), m)) => SimRecord {
                    rep,
                    method,
                    x,
                    y,
                    e2_ave: Some(ave.as_f64()),
                    e2_min: Some(min.as_f64()),
                    runtime_s,
                    status: Status::Ok,
                    truth: truth_method,
                    distinct_sets: format_sets(&m, data.names()),
                    message: String::new(),
                },
                Err(e) => fail(method, &e, runtime_s),
            }
        })
        .collect()
}

fn estimate<T: Scalar>(
    d: &Dataset<T>,
    g: &crate::graph::Pdag,
    x: Vertex,
    y: Vertex,
    method: Method,
    cfg: IdaConfig,
) -> Result<EffectMultiset<T>> {
    match method {
        Method::Global => Ok(ida_global(d, g, y, cfg)?.row(x).expect("covariate row")),
        _ => ida_local(d, g, x, y, cfg),
    }
}

/// Per-method medians of the error measures over successful replicates.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MethodSummary {
    pub method: Method,
    pub ok: usize,
    pub failed: usize,
    pub median_e2_ave: Option<f64>,
    pub median_e2_min: Option<f64>,
    pub mean_runtime_s: Option<f64>,
}

pub fn summarize_records(records: &[SimRecord]) -> Vec<MethodSummary> {
    let mut methods: Vec<Method> = Vec::new();
    for r in records {
        if !methods.contains(&r.method) {
            methods.push(r.method);
        }
    }
    methods
        .into_iter()
        .map(|method| {
            let rows: Vec<&SimRecord> = records.iter().filter(|r| r.method == method).collect();
            let ok: Vec<&&SimRecord> = rows.iter().filter(|r| r.status == Status::Ok).collect();
            let ave: Vec<f64> = ok.iter().filter_map(|r| r.e2_ave).collect();
            let min: Vec<f64> = ok.iter().filter_map(|r| r.e2_min).collect();
            let mean_runtime_s =
                (!ok.is_empty()).then(|| ok.iter().map(|r| r.runtime_s).sum::<f64>() / ok.len() as f64);
            MethodSummary {
                method,
                ok: ok.len(),
                failed: rows.len() - ok.len(),
                median_e2_ave: median(&ave),
                median_e2_min: median(&min),
                mean_runtime_s,
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn strip_time(mut r: Vec<SimRecord>) -> Vec<SimRecord> {
        for x in &mut r {
            x.runtime_s = 0.0;
        }
        r
    }

    #[test]
    fn single_replicate_is_reproducible() {
        let s = SimScenario::new(10, 4.0, 200, 1, 17).unwrap();
        let m = [Method::Global, Method::Local];
        let a = run_scenario::<f64>(&s, &m, 0.01, IdaConfig::default()).unwrap();
        let b = run_scenario::<f64>(&s, &m, 0.01, IdaConfig::default()).unwrap();
        assert_eq!(a.len(), 2);
        assert_eq!(strip_time(a.clone()), strip_time(b));
        assert!(a.iter().all(|r| r.runtime_s >= 0.0));
    }

    #[test]
    fn blocked_pairs_share_a_block() {
        let s = SimScenario::new(20, 3.0, 50, 20, 3).unwrap().with_blocks(4).unwrap();
        let recs = run_scenario::<f64>(&s, &[Method::Local], 0.01, IdaConfig::default()).unwrap();
        assert!(recs.iter().all(|r| s.block_of(r.x) == s.block_of(r.y) && r.x != r.y));
    }

    #[test]
    fn errors_are_nonnegative_and_methods_agree_on_sets() {
        let s = SimScenario::new(10, 4.0, 100, 30, 5).unwrap();
        let recs = run_scenario::<f64>(&s, &[Method::Global, Method::Local], 0.01, IdaConfig::default()).unwrap();
        for pair in recs.chunks(2) {
            let (g, l) = (&pair[0], &pair[1]);
            if g.status == Status::Ok && l.status == Status::Ok {
                assert!(g.e2_ave.unwrap() >= 0.0 && g.e2_min.unwrap() >= 0.0);
                assert_eq!(g.distinct_sets, l.distinct_sets);
            }
        }
        let sum = summarize_records(&recs);
        assert_eq!(sum.len(), 2);
        assert_eq!(sum[0].ok + sum[0].failed, 30);
    }

    #[test]
    fn invalid_scenarios_are_rejected() {
        let s = SimScenario::new(10, 4.0, 100, 1, 5).unwrap();
        assert!(run_scenario::<f64>(&s, &[], 0.01, IdaConfig::default()).is_err());
        assert!(run_scenario::<f64>(&s, &[Method::Local], 1.5, IdaConfig::default()).is_err());
    }
}
