use multiplex_juggling::verify::{checks, run_checks, Limits, Suite};

fn run(suite: Suite) {
    let report = run_checks(&checks(suite, &Limits::default()));
    assert!(report.passed(), "{report}");
    assert!(!report.outcomes().is_empty());
}

#[test]
fn identities() {
    run(Suite::Identities);
}

#[test]
fn cross() {
    run(Suite::Cross);
}

#[test]
fn bijections() {
    run(Suite::Bijections);
}

#[test]
fn oeis() {
    run(Suite::Oeis);
}

#[test]
fn ids_are_unique_and_sorted() {
    let report = run_checks(&checks(Suite::Oeis, &Limits::default()));
    let ids: Vec<&str> = report.outcomes().iter().map(|o| o.id.as_str()).collect();
    let mut sorted = ids.clone();
    sorted.sort();
    sorted.dedup();
    assert_eq!(ids, sorted);
}
