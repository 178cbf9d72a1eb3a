//! Sample PC algorithm: skeleton search with separating sets, collider
//! orientation, Meek completion, repair of incoherent outputs and BIC
//! selection of the significance level.

mod orient;
mod repair;
mod skeleton;
mod tune;

use serde::{Deserialize, Serialize};

pub use orient::{apply_colliders, collider_triples, orient_v_structures, Conflict, Oriented};
pub use repair::{random_cpdag, repair_cpdag, Repair, RepairStage, EXACT_REPAIR_CAP};
pub use skeleton::{estimate_skeleton, SepsetTable, SkeletonStats};
pub use tune::{bic_select_alpha, AlphaScore, AlphaSelection};

use crate::error::Result;
use crate::graph::{meek_closure, CpdagReport, Pdag, VStructure};
use crate::scalar::Scalar;
use crate::stats::{CiTest, CiTestConfig, Dataset, FisherZ};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PcDiagnostics {
    pub tests_per_level: Vec<usize>,
    pub skipped_per_level: Vec<usize>,
    /// Colliders in the order they were written.
    pub applied: Vec<VStructure>,
    pub conflicts: Vec<Conflict>,
    pub validity: CpdagReport,
}

impl PcDiagnostics {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("diagnostics serialize")
    }
}

/// Output of the PC pipeline. `cpdag` may be invalid; see
/// `diagnostics.validity` and [`repair_cpdag`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PcResult {
    pub cpdag: Pdag,
    pub skeleton: Pdag,
    pub sepsets: SepsetTable,
    pub diagnostics: PcDiagnostics,
}

/// Orients an estimated skeleton: colliders first, then the Meek rules.
pub fn orient_skeleton(skeleton: Pdag, sepsets: SepsetTable, stats: SkeletonStats) -> PcResult {
    let oriented = orient_v_structures(&skeleton, &sepsets);
    let cpdag = meek_closure(&oriented.graph);
    let diagnostics = PcDiagnostics {
        tests_per_level: stats.tests_per_level,
        skipped_per_level: stats.skipped_per_level,
        applied: oriented.applied,
        conflicts: oriented.conflicts,
        validity: cpdag.validate(),
    };
    PcResult { cpdag, skeleton, sepsets, diagnostics }
}

/// Full pipeline for an arbitrary conditional independence test.
pub fn pc_with_test<C: CiTest + ?Sized>(test: &C, max_level: Option<usize>) -> Result<PcResult> {
    let (skeleton, sepsets, stats) = estimate_skeleton(test, max_level)?;
    Ok(orient_skeleton(skeleton, sepsets, stats))
}

/// Full pipeline with Fisher z tests on the sample covariance of `d`.
pub fn pc_cpdag<T: Scalar>(d: &Dataset<T>, cfg: CiTestConfig, max_level: Option<usize>) -> Result<PcResult> {
    let test = FisherZ::new(&d.covariance(), cfg)?;
    pc_with_test(&test, max_level)
}
