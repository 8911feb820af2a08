mod common;

use std::path::Path;
use std::time::Duration;

use mols10_core::families::gf4_mols;
use mols10_core::Square;
use mols10_harness::extend::{check_extendability, ExtendError};
use mols10_harness::runner::{Outcome, SolverCommand};
use mols10_harness::verify::verify_pair;

fn bundled() -> SolverCommand {
    SolverCommand::for_bundled(Path::new(env!("CARGO_BIN_EXE_mols10-sat")))
}

#[test]
fn order4_triple_extends() {
    let [a, b, c] = gf4_mols().map(|s| s.column_inverse().unwrap());
    let dir = tempfile::tempdir().unwrap();
    let r = check_extendability(&a, &b, &bundled(), Duration::from_secs(60), dir.path()).unwrap();
    assert_eq!(r.outcome, Outcome::Sat);
    let l = r.third.unwrap();
    assert!(verify_pair(&l, &a).passed() && verify_pair(&l, &b).passed());
    // the third member of the triple is one of the witnesses
    assert!(verify_pair(&c, &a).passed() && verify_pair(&c, &b).passed());
}

#[test]
fn fixture_pair_does_not_extend() {
    let (p, q) = common::trp10();
    let dir = tempfile::tempdir().unwrap();
    let r = check_extendability(&p, &q, &bundled(), Duration::from_secs(60), dir.path()).unwrap();
    assert_eq!(r.outcome, Outcome::Unsat);
    assert!(r.wall_seconds < 60.0);
}

#[test]
fn unverified_pair_is_rejected_before_solving() {
    let c3 = Square::cyclic(3);
    let dir = tempfile::tempdir().unwrap();
    let err = check_extendability(&c3, &c3, &bundled(), Duration::from_secs(60), dir.path()).unwrap_err();
    assert!(matches!(err, ExtendError::Unverified(_)));
    assert!(!dir.path().join("extension.cnf").exists());
}
