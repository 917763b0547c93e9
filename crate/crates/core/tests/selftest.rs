use nashkit::selftest::{run_criterion, selftest, CRITERIA};

#[test]
fn reports_are_deterministic() {
    let a = selftest(0);
    let b = selftest(0);
    assert_eq!(serde_json::to_string(&a).unwrap(), serde_json::to_string(&b).unwrap());
    assert_eq!(a.criteria.len(), CRITERIA.len());
    assert!(a.passed, "{}", a.summary());
}

#[test]
fn seeds_one_to_five_pass() {
    for seed in 1..=5 {
        let r = selftest(seed);
        assert!(r.passed, "seed {seed}\n{}", r.summary());
    }
}

#[test]
fn criteria_use_independent_streams() {
    assert_eq!(run_criterion(8, 4), selftest(4).criteria[7]);
}
