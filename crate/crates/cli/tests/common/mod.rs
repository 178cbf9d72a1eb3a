#![allow(dead_code)]

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use ida_core::sim::{gen_data_seeded, WeightedDag};
use ida_core::stats::Dataset;

pub fn ida(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ida")).args(args).env_clear().output().expect("binary runs")
}

pub fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

pub fn write_csv(path: &Path, names: &[&str], rows: impl IntoIterator<Item = Vec<f64>>) {
    let mut w = csv::Writer::from_path(path).unwrap();
    w.write_record(names).unwrap();
    for r in rows {
        w.write_record(r.iter().map(|v| v.to_string())).unwrap();
    }
    w.flush().unwrap();
}

pub fn write_dataset(path: &Path, d: &Dataset<f64>) {
    let names: Vec<&str> = d.names().iter().map(String::as_str).collect();
    write_csv(path, &names, (0..d.n()).map(|r| d.row(r).to_vec()));
}

/// Draws from the four-variable model X2 -> X1, X2 -> X3, with Y = -X1 + 2 X2 - X3 + noise
/// and noise variances 0.36, 1, 0.36, 1. The total effect of X2 on Y is 0.4.
pub fn four_variable_rows(n: usize, seed: u64) -> Vec<Vec<f64>> {
    let noise = gen_data_seeded(&WeightedDag::<f64>::from_arcs(4, &[]).unwrap(), n, seed).unwrap();
    (0..n)
        .map(|r| {
            let e = noise.row(r);
            let x2 = e[1];
            let x1 = 0.8 * x2 + 0.6 * e[0];
            let x3 = 0.8 * x2 + 0.6 * e[2];
            vec![x1, x2, x3, -x1 + 2.0 * x2 - x3 + e[3]]
        })
        .collect()
}

/// Covariate V1 causes V3 with weight 1; V2 is independent of both.
pub fn cause_and_noise(n: usize, seed: u64) -> Dataset<f64> {
    let w = WeightedDag::from_arcs(3, &[(0, 2, 1.0f64)]).unwrap();
    gen_data_seeded(&w, n, seed).unwrap()
}

/// V1 and V3 cause the response V4 with weights 1 and 0.5, so V4 is a
/// collider and both arrows are oriented. V2 is independent of everything.
pub fn oriented_cause_and_noise(n: usize, seed: u64) -> Dataset<f64> {
    let w = WeightedDag::from_arcs(4, &[(0, 3, 1.0f64), (2, 3, 0.5)]).unwrap();
    gen_data_seeded(&w, n, seed).unwrap()
}

pub fn path_str(p: &Path) -> &str {
    p.to_str().unwrap()
}

pub fn tmp() -> tempfile::TempDir {
    tempfile::tempdir().unwrap()
}

pub fn file(dir: &tempfile::TempDir, name: &str) -> PathBuf {
    dir.path().join(name)
}
