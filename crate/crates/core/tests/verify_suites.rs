use crossfam::compression::CompressionIndex;
use crossfam::verify::{
    check_pair_stability, parse_grid, replay, run_suite, Counterexample, Outcome, SuiteKind,
    SuiteOptions,
};
use crossfam::Family;

/// Cross-1-intersecting in C([4], 2), not a star pair, and `Δ_{1,2}` maps both
/// families onto the star on {1}. Possible only because n = 4 lies below the
/// threshold for (r, s, t) = (2, 2, 1).
fn below_threshold_pair() -> (Family, Family) {
    (
        Family::from_lists(4, &[[1, 2], [1, 3], [2, 4]]).unwrap(),
        Family::from_lists(4, &[[1, 2], [1, 4], [2, 3]]).unwrap(),
    )
}

#[test]
fn pair_stability_check_reports_a_failure_below_the_threshold() {
    let (a, b) = below_threshold_pair();
    let Outcome::Fail { index, .. } = check_pair_stability(&a, &b, 1).unwrap() else {
        panic!("expected a failure");
    };
    assert_eq!(index, Some(CompressionIndex::new(1, 2, 4).unwrap()));

    let record = Counterexample {
        suite: SuiteKind::PairStability,
        n: 4,
        t: 1,
        uniformities: vec![2, 2],
        families: vec![a.to_lists(), b.to_lists()],
        index,
        mode: None,
        entry: 0,
        case: 0,
        detail: String::new(),
    };
    let text = serde_json::to_string(&record).unwrap();
    let back: Counterexample = serde_json::from_str(&text).unwrap();
    assert!(!replay(&back, &SuiteOptions::default()).unwrap().is_pass());
}

#[test]
fn suites_refuse_grids_outside_their_hypotheses() {
    let opts = SuiteOptions::default();
    let grid = parse_grid(SuiteKind::PairStability, "n=4,r=2,s=2,t=1").unwrap();
    assert!(run_suite(SuiteKind::PairStability, &grid, &opts).is_err());
    let grid = parse_grid(SuiteKind::StarStability, "n=4,p=3,t=1").unwrap();
    assert!(run_suite(SuiteKind::StarStability, &grid, &opts).is_err());
    // Exhaustive enumeration beyond 4096 subfamilies per side is refused.
    let grid = parse_grid(SuiteKind::CrossPreservation, "n=6,r=2,s=2,t=1").unwrap();
    assert!(run_suite(SuiteKind::CrossPreservation, &grid, &opts).is_err());
}

#[test]
fn seeded_reports_are_reproducible() {
    let grid = parse_grid(
        SuiteKind::PairStability,
        "n=9,r=2,s=3,t=2,random=150; n=10,r=1,s=2,t=1,random=50",
    )
    .unwrap();
    let opts = SuiteOptions {
        seed: 42,
        ..SuiteOptions::default()
    };
    let mut a = run_suite(SuiteKind::PairStability, &grid, &opts).unwrap();
    let mut b = run_suite(SuiteKind::PairStability, &grid, &opts).unwrap();
    a.wall_time_ms = 0;
    b.wall_time_ms = 0;
    assert_eq!(a, b);
    assert!(a.passed());
    assert_eq!(a.cases_run, 200);
    assert_eq!(a.seed, Some(42));
}

#[test]
fn exhaustive_reports_carry_no_seed() {
    let grid = parse_grid(SuiteKind::StarStability, "n=4..5,p=2,t=1").unwrap();
    let report = run_suite(SuiteKind::StarStability, &grid, &SuiteOptions::default()).unwrap();
    assert!(report.passed());
    assert_eq!(report.seed, None);
    assert_eq!(report.grid, vec!["n=4,p=2,t=1", "n=5,p=2,t=1"]);
    let json = serde_json::to_value(&report).unwrap();
    assert_eq!(json["suite"], "lemma32");
    assert!(json["counterexample"].is_null());
}
