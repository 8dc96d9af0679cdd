use scottlab_core::suites::{run_suite, SuiteConfig, SUITES};

fn run(name: &str, count: usize, max: usize) {
    let cfg = SuiteConfig { seed: 11, count, max };
    let rep = run_suite(name, &cfg).unwrap();
    assert!(rep.passed(), "{}", rep.render());
}

#[test]
fn zed_suites_pass() {
    for name in ["prop-order", "claim23-sups", "thmA-membership", "thm44-roundtrip", "t-order"] {
        run(name, 2_000, 5);
    }
}

#[test]
fn finite_suites_pass() {
    run("gamma-faithful", 1_000, 4);
    run("finite-universals", 1_000, 4);
    run("kf-discipline", 1_000, 4);
}

#[test]
fn corpus_suites_pass() {
    for name in ["exampleJ-cc", "exampleM-witness", "corpus-orders"] {
        run(name, 2_000, 5);
    }
}

#[test]
fn every_listed_suite_runs_and_unknown_is_rejected() {
    let cfg = SuiteConfig { seed: 1, count: 10, max: 3 };
    for (name, _) in SUITES {
        run_suite(name, &cfg).unwrap();
    }
    assert!(run_suite("nope", &cfg).is_err());
}

#[test]
fn reports_are_deterministic() {
    let cfg = SuiteConfig { seed: 3, count: 300, max: 3 };
    let a = run_suite("claim23-sups", &cfg).unwrap().render();
    let b = run_suite("claim23-sups", &cfg).unwrap().render();
    assert_eq!(a, b);
}
