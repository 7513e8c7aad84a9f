use std::time::Instant;

use freenorm::suites::{run, Suite};

fn check(suite: Suite) {
    let start = Instant::now();
    let report = run(suite, 1).unwrap();
    let failed: Vec<_> = report
        .failures()
        .map(|a| format!("{} [{}] {:?}", a.name, a.tag, a.detail))
        .collect();
    eprintln!("{} in {:.1?}", suite.name(), start.elapsed());
    assert!(failed.is_empty(), "{}: {failed:#?}", suite.name());
}

#[test]
fn lemma7() {
    check(Suite::Lemma7);
}

#[test]
fn lemma15() {
    check(Suite::Lemma15);
}

#[test]
fn prop1() {
    check(Suite::Prop1);
}

#[test]
fn prop4() {
    check(Suite::Prop4);
}

#[test]
fn prop8() {
    check(Suite::Prop8);
}

#[test]
fn prop9() {
    check(Suite::Prop9);
}

#[test]
fn prop12() {
    check(Suite::Prop12);
}

#[test]
fn prop13() {
    check(Suite::Prop13);
}

#[test]
fn prop14() {
    check(Suite::Prop14);
}

#[test]
fn prop16() {
    check(Suite::Prop16);
}

#[test]
fn prop17() {
    check(Suite::Prop17);
}

#[test]
fn hp_split() {
    check(Suite::HpSplit);
}

#[test]
fn row_column() {
    check(Suite::RowColumn);
}

#[test]
fn von_neumann() {
    check(Suite::VonNeumann);
}

#[test]
fn names_round_trip() {
    for s in Suite::ALL {
        assert_eq!(Suite::from_name(s.name()), Some(s));
    }
    assert_eq!(Suite::from_name("prop2"), None);
}
