use std::collections::BTreeSet;

use simplexgraph::harness::{
    self, suite_conjecture, suite_example_q11, suite_example_q7, ConjectureMode, SuiteName, CLAIMS,
};
use simplexgraph::RunOptions;

#[test]
fn every_claim_is_checked_somewhere() {
    let o = RunOptions::with_seed(0);
    let reports = vec![
        harness::verify(3, SuiteName::All, &o).unwrap(),
        harness::verify(4, SuiteName::All, &o).unwrap(),
        harness::verify(5, SuiteName::All, &o).unwrap(),
        harness::verify(7, SuiteName::Inversion, &o).unwrap(),
        suite_example_q7(&o).unwrap(),
        suite_example_q11(&o).unwrap(),
        suite_conjecture(5, ConjectureMode::Representative, 0, &o).unwrap(),
    ];
    let emitted: BTreeSet<&str> = reports
        .iter()
        .flat_map(|r| r.checks.iter().map(|c| c.id.as_str()))
        .collect();
    for (claim, ids) in CLAIMS {
        assert!(!ids.is_empty(), "{claim}");
        for id in *ids {
            assert!(
                emitted.contains(id),
                "{claim} names {id}, which no suite emits"
            );
        }
    }
    for r in &reports {
        for ids in r.coverage.values() {
            assert!(ids.iter().all(|id| r.check(id).is_some()));
        }
    }
}

#[test]
fn check_ids_are_unique_per_report() {
    let o = RunOptions::with_seed(0);
    for q in [3, 4] {
        let r = harness::verify(q, SuiteName::All, &o).unwrap();
        let ids: BTreeSet<&str> = r.checks.iter().map(|c| c.id.as_str()).collect();
        assert_eq!(ids.len(), r.checks.len());
    }
}
