use std::collections::BTreeSet;

use ida_core::graph::{cpdag_from_dag, enumerate_dags, extension_with_parents, EnumLimits, Pdag, Vertex};
use ida_core::ida::{ida_global, ida_local, ida_oracle_multiplicities, IdaConfig, Modifications};
use ida_core::pc::{orient_skeleton, pc_with_test, repair_cpdag, SepsetTable, SkeletonStats};
use ida_core::sim::{random_weighted_dag_seeded, true_covariance, SimScenario, WeightedDag};
use ida_core::stats::PopulationOracle;
use proptest::prelude::*;

const WIDE: EnumLimits = EnumLimits { max_component_edges: 45, max_dags: 1 << 22 };

fn cfg() -> IdaConfig {
    IdaConfig { limits: WIDE, ..Default::default() }
}

fn model(p1: usize, en: f64, seed: u64) -> WeightedDag<f64> {
    let s = SimScenario::new(p1, en.min(p1 as f64 - 0.5), 10, 1, 0).unwrap();
    random_weighted_dag_seeded(&s, seed)
}

fn fixture() -> impl Strategy<Value = WeightedDag<f64>> {
    (2usize..=10, 0.0f64..=4.0, any::<u64>()).prop_map(|(p1, en, seed)| model(p1, en, seed))
}

fn subsets(items: &[Vertex]) -> Vec<Vec<Vertex>> {
    (0u64..1 << items.len()).map(|m| (0..items.len()).filter(|b| m >> b & 1 == 1).map(|b| items[b]).collect()).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn global_and_local_agree_as_sets(w in fixture()) {
        let g = w.cpdag();
        let cov = true_covariance(&w);
        let p1 = g.vertex_count();
        let y = p1 - 1;
        let theta = ida_global(&cov, &g, y, cfg()).unwrap();
        for i in 0..y {
            let global: BTreeSet<_> = theta.row(i).unwrap().adjustments().into_iter().collect();
            let local: BTreeSet<_> = ida_local(&cov, &g, i, y, cfg()).unwrap().adjustments().into_iter().collect();
            prop_assert_eq!(global, local);
        }
    }

    #[test]
    fn local_validity_matches_class_members(w in fixture()) {
        let g = w.cpdag();
        let dags = enumerate_dags(&g, WIDE).unwrap();
        for i in 0..g.vertex_count() {
            let pa = g.parents(i);
            let counts = ida_oracle_multiplicities(&g, i, WIDE).unwrap();
            prop_assert_eq!(counts.values().sum::<usize>(), dags.len());
            for s in subsets(&g.siblings(i)) {
                let mut want = pa.clone();
                want.extend(&s);
                want.sort_unstable();
                let exists = dags.iter().any(|d| d.parents(i) == want);
                prop_assert_eq!(g.is_locally_valid(i, &s).unwrap(), exists);
                prop_assert_eq!(counts[&s] >= 1, exists);
                if exists {
                    let d = extension_with_parents(&g, i, &s).unwrap();
                    prop_assert_eq!(d.parents(i), want);
                    prop_assert_eq!(cpdag_from_dag(&d), g.clone());
                }
            }
        }
    }

    #[test]
    fn local_never_exceeds_global_count(w in fixture()) {
        let g = w.cpdag();
        let cov = true_covariance(&w);
        let y = 0;
        let theta = ida_global(&cov, &g, y, cfg()).unwrap();
        for i in 1..g.vertex_count() {
            let local = ida_local(&cov, &g, i, y, cfg()).unwrap();
            prop_assert!(local.total() <= theta.row(i).unwrap().total());
        }
    }

    #[test]
    fn modifications_keep_distinct_values(w in fixture()) {
        let g = w.cpdag();
        let cov = true_covariance(&w);
        let y = g.vertex_count() / 2;
        let rounded = |vals: Vec<f64>| -> BTreeSet<i64> { vals.into_iter().map(|v| (v * 1e7).round() as i64).collect() };
        for zero_path in [false, true] {
            let on = IdaConfig { mods: Modifications { zero_path, prune_y: true }, ..cfg() };
            for i in (0..g.vertex_count()).filter(|&i| i != y) {
                let plain = rounded(ida_local(&cov, &g, i, y, cfg()).unwrap().values());
                let modded = rounded(ida_local(&cov, &g, i, y, on).unwrap().values());
                if zero_path && modded == BTreeSet::from([0]) {
                    prop_assert!(plain.iter().all(|&v| v == 0));
                } else {
                    prop_assert_eq!(plain, modded);
                }
                let gp = rounded(ida_global(&cov, &g, y, on).unwrap().row(i).unwrap().values());
                prop_assert_eq!(gp, rounded(ida_global(&cov, &g, y, cfg()).unwrap().row(i).unwrap().values()));
            }
        }
    }

    #[test]
    fn population_pc_recovers_the_cpdag(w in fixture()) {
        let res = pc_with_test(&PopulationOracle::new(true_covariance(&w)), None).unwrap();
        prop_assert_eq!(res.cpdag, w.cpdag());
        let p1 = w.vertex_count();
        for u in 0..p1 {
            for v in u + 1..p1 {
                prop_assert!(res.skeleton.is_adjacent(u, v) != res.sepsets.get(u, v).is_some());
                if let Some(s) = res.sepsets.get(u, v) {
                    prop_assert!(!s.contains(&u) && !s.contains(&v));
                }
            }
        }
    }

    #[test]
    fn repair_always_yields_a_valid_cpdag(
        edges in prop::collection::vec(any::<bool>(), 21),
        seps in prop::collection::vec(prop::collection::vec(any::<bool>(), 7), 21),
        seed in any::<u64>(),
    ) {
        let n = 7;
        let pairs: Vec<(usize, usize)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
        let mut g = Pdag::new(n);
        let mut table = SepsetTable::default();
        for (k, &(u, v)) in pairs.iter().enumerate() {
            if edges[k] {
                g.add_undirected(u, v).unwrap();
            } else {
                let s = (0..n).filter(|&w| w != u && w != v && seps[k][w]).collect();
                table.insert(u, v, s);
            }
        }
        let res = orient_skeleton(g.clone(), table, SkeletonStats::default());
        for c in &res.diagnostics.conflicts {
            prop_assert!(g.is_adjacent(c.edge.0, c.edge.1));
        }
        let r = repair_cpdag(&res, seed);
        prop_assert!(r.cpdag.validate().is_valid());
        prop_assert!(r.cpdag.same_skeleton(&g));
    }
}

#[test]
fn single_precision_pipeline_runs() {
    let w =
        WeightedDag::<f32>::from_arcs(4, &[(1, 0, 0.8), (1, 2, 0.8), (0, 3, -1.0), (1, 3, 2.0), (2, 3, -1.0)]).unwrap();
    let cov = true_covariance(&w);
    let g = pc_with_test(&PopulationOracle::with_tolerance(cov.clone(), 1e-4), None).unwrap().cpdag;
    assert_eq!(g, w.cpdag());
    let m = ida_local(&cov, &g, 1, 3, IdaConfig::default()).unwrap();
    assert_eq!(m.total(), 3);
}
