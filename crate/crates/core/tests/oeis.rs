use num_bigint::BigUint;

use stepwalk::oeis::{oeis_lookup, OeisMode, FIXTURE_DIR_ENV, FORCE_FIXTURE_ENV};
use stepwalk::Error;

fn big(v: &[u64]) -> Vec<BigUint> {
    v.iter().map(|&x| BigUint::from(x)).collect()
}

#[test]
fn bundled_fixtures() {
    let m = oeis_lookup(&big(&[1, 2, 5, 14, 42, 132]), OeisMode::Fixture).unwrap();
    assert_eq!(m[0].id, "A000108");
    assert!(m[0].offset > 0);
    // Narayana's cows
    let m = oeis_lookup(&big(&[1, 1, 1, 2, 3, 4, 6, 9, 13]), OeisMode::Fixture).unwrap();
    assert!(m.iter().any(|x| x.id == "A000930"), "{m:?}");
    assert!(oeis_lookup(&big(&[7, 7, 7, 7, 7, 8]), OeisMode::Fixture).is_err());
    assert!(oeis_lookup(&big(&[1, 2, 3]), OeisMode::Off).unwrap().is_empty());
}

// environment variables are process-wide, so everything touching them lives in one test
#[test]
fn environment_overrides() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(
        dir.path().join("extra.json"),
        r#"{"results":[{"number":999999,"name":"test sequence","data":"7,7,7,7,7,8"}]}"#,
    )
    .unwrap();
    std::env::set_var(FIXTURE_DIR_ENV, dir.path());
    let m = oeis_lookup(&big(&[7, 7, 7, 7, 7, 8]), OeisMode::Fixture).unwrap();
    assert_eq!(m[0].id, "A999999");

    // online requests are redirected to fixtures
    std::env::set_var(FORCE_FIXTURE_ENV, "1");
    let m = oeis_lookup(&big(&[7, 7, 7, 7, 7, 8]), OeisMode::Online).unwrap();
    assert_eq!(m[0].id, "A999999");
    let e = oeis_lookup(&big(&[3, 1, 4, 1, 5, 9, 2, 6]), OeisMode::Online).unwrap_err();
    assert!(matches!(e, Error::MissingFixture(_)));
    std::env::remove_var(FORCE_FIXTURE_ENV);
    std::env::remove_var(FIXTURE_DIR_ENV);
}
