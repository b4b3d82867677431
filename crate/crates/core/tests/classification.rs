use num_bigint::BigUint;

use stepwalk::classify::{
    audit_hierarchy, classify_constrained, classify_finite, constrained_units_and_group,
    group_structure, nz_columns_of_finite, nz_fast_path, recurrence_sequence,
    small_stepset_monoid, truncation_consistency, GroupIso, MonoidType, NzVerdict, Tri,
};
use stepwalk::enumerate::{count_walks, naive_count};
use stepwalk::stepset::{registry_classification, Combination};
use stepwalk::{ConstraintSpec, Family, LatticePoint, Truncation, Walk};

fn set(v: &[(i64, i64)]) -> Vec<LatticePoint> {
    v.iter().map(|&(x, y)| LatticePoint::new(x, y)).collect()
}

fn compass(s: &str) -> Vec<LatticePoint> {
    Walk::from_compass(s).unwrap().steps
}

fn nums(v: &[BigUint]) -> Vec<u64> {
    v.iter().map(|x| x.try_into().unwrap()).collect()
}

#[test]
fn finite_reports() {
    let en = classify_finite(&compass("EN")).unwrap();
    assert_eq!(en.combination, Some(Combination::I));
    assert!(en.cc.holds && en.slc.holds && en.lc.holds && en.wlc.holds);
    assert_eq!(en.group_iso, Some(GroupIso::NotGroup));

    let nesw = classify_finite(&compass("NESW")).unwrap();
    assert_eq!(nesw.combination, Some(Combination::X));
    assert_eq!(nesw.group_iso, Some(GroupIso::Z2));
    assert_eq!(nesw.units_nontrivial.value, Tri::Yes);

    let nes = classify_finite(&compass("NES")).unwrap();
    assert_eq!(nes.combination, Some(Combination::X));
    assert_eq!(nes.units_nontrivial.value, Tri::Yes);
    assert_eq!(nes.group_iso, Some(GroupIso::NotGroup));
    assert!(nes.wlc.holds);
    for r in [&en, &nesw, &nes] {
        audit_hierarchy(r).unwrap();
    }
}

#[test]
fn hierarchy_audit_rejects_impossible_reports() {
    let mut r = classify_finite(&compass("EN")).unwrap();
    r.lc.holds = false;
    assert!(audit_hierarchy(&r).is_err(), "cc without lc must be rejected");
    let mut r = classify_finite(&compass("NESW")).unwrap();
    r.fpp.value = Tri::Yes;
    assert!(audit_hierarchy(&r).is_err(), "fpp together with ipp must be rejected");
}

#[test]
fn groups() {
    assert_eq!(group_structure(&[]), GroupIso::Trivial);
    assert_eq!(group_structure(&set(&[(3, 0), (-6, 0)])), GroupIso::Z);
    assert_eq!(group_structure(&set(&[(3, 0), (6, 0)])), GroupIso::NotGroup);
    assert_eq!(group_structure(&set(&[(1, 1), (-1, 0), (0, -1)])), GroupIso::Z2);
}

#[test]
fn two_step_monoids() {
    assert_eq!(
        small_stepset_monoid(&set(&[(2, 4), (3, 6)])).unwrap(),
        MonoidType::NumericalMonoid { k: 2, l: 3, gcd: 1 }
    );
    assert_eq!(small_stepset_monoid(&set(&[(1, 2), (-2, -4)])).unwrap(), MonoidType::GroupZ);
    assert_eq!(
        small_stepset_monoid(&set(&[(1, 0), (0, 1)])).unwrap(),
        MonoidType::FreeCommutativeRankTwo
    );
    assert_eq!(small_stepset_monoid(&set(&[(5, 5)])).unwrap(), MonoidType::FreeOnOneGenerator);
    assert!(small_stepset_monoid(&set(&[(1, 0), (0, 1), (1, 1)])).is_err());
}

#[test]
fn recurrences() {
    assert_eq!(nums(&recurrence_sequence(1, 2, 7).unwrap()), [1, 1, 2, 3, 5, 8, 13, 21]);
    assert_eq!(nums(&recurrence_sequence(2, 3, 6).unwrap()), [1, 0, 1, 1, 1, 2, 2]);
    assert!(recurrence_sequence(3, 3, 4).is_err());

    // walks on {(1,0),(3,0)} counted one word at a time
    let x = set(&[(1, 0), (3, 0)]);
    let seq = recurrence_sequence(1, 3, 9).unwrap();
    for (n, a) in seq.iter().enumerate() {
        let brute = naive_count(&x, LatticePoint::new(n as i64, 0), &ConstraintSpec::FullPlane, n, 1 << 20).unwrap();
        assert_eq!(&brute, a, "n = {n}");
    }
    assert_eq!(nums(&seq[..6]), [1, 1, 1, 2, 3, 4]);

    // a numerical monoid along a non-axis ray
    let ray = set(&[(2, -2), (3, -3)]);
    let seq = recurrence_sequence(2, 3, 12).unwrap();
    for (n, a) in seq.iter().enumerate() {
        let c = count_walks(&ray, LatticePoint::new(n as i64, -(n as i64)), &ConstraintSpec::FullPlane, None).unwrap();
        assert_eq!(c.exact(), Some(a));
    }
}

#[test]
fn constrained_catalog() {
    let neswu = compass("NESWU");
    let q = classify_constrained(&neswu, &ConstraintSpec::PuncturedQuadrant, 8).unwrap();
    assert_eq!((q.fpp.value, q.ipp.value, q.bpp.value), (Tri::No, Tri::No, Tri::No));
    assert_eq!(q.combination, Some(Combination::IX));

    let chain = classify_constrained(&neswu, &ConstraintSpec::DiagonalChain, 8).unwrap();
    assert_eq!(chain.fpp.value, Tri::Yes);

    let cat = classify_constrained(&compass("NE"), &ConstraintSpec::BelowDiagonal, 8).unwrap();
    assert_eq!((cat.fpp.value, cat.ipp.value), (Tri::Yes, Tri::No));
    for r in [&q, &chain, &cat] {
        audit_hierarchy(r).unwrap();
    }
}

#[test]
fn units_and_groups_under_constraints() {
    let (u, g) = constrained_units_and_group(&compass("NESWU"), &ConstraintSpec::PuncturedQuadrant, 8).unwrap();
    assert_eq!(u.value, Tri::No);
    assert_eq!(g.value, Tri::No);
    let (u, g) = constrained_units_and_group(&compass("NESW"), &ConstraintSpec::FullPlane, 8).unwrap();
    assert_eq!((u.value, g.value), (Tri::Yes, Tri::Yes));
    let (u, g) = constrained_units_and_group(&compass("NE"), &ConstraintSpec::FullPlane, 8).unwrap();
    assert_eq!((u.value, g.value), (Tri::No, Tri::No));
}

#[test]
fn unknown_verdicts_keep_their_bound() {
    // a closed walk needs more than two steps here
    let x = set(&[(2, 1), (-1, 1), (-1, -2)]);
    let c = ConstraintSpec::HalfplaneIntersection {
        normals: vec![stepwalk::geom::Direction::new(1, 1).unwrap()],
    };
    let short = classify_constrained(&x, &c, 1).unwrap();
    audit_hierarchy(&short).unwrap();
    let long = classify_constrained(&x, &c, 8).unwrap();
    assert_eq!(long.ipp.value, Tri::Yes);
    if short.ipp.value == Tri::Unknown {
        assert!(matches!(short.ipp.evidence, stepwalk::classify::Evidence::Bound { max_len: 1 }));
    }
}

#[test]
fn column_lemma() {
    // (0,-1) plus columns going up: finitely many steps per column
    let x = set(&[(0, 1), (1, 0), (1, 5), (2, -3)]);
    let cols = nz_columns_of_finite(&x).unwrap();
    assert_eq!(nz_fast_path(cols), NzVerdict::Inconclusive);
    let y = set(&[(1, 0), (1, 5), (2, -3)]);
    assert_eq!(nz_fast_path(nz_columns_of_finite(&y).unwrap()), NzVerdict::Fpp);
    assert!(nz_columns_of_finite(&set(&[(-1, 0)])).is_none());
}

#[test]
fn registry_and_truncations_agree() {
    let expect = [
        (Family::En, Combination::I),
        (Family::OneTimesZ, Combination::III),
        (Family::IrrationalHalfplane, Combination::VI),
        (Family::Sqrt2Iv, Combination::IV),
        (Family::AppendixV, Combination::V),
        (Family::Middle, Combination::VII),
    ];
    for (f, c) in expect {
        assert_eq!(registry_classification(f).combination, c, "{f}");
    }
    for f in [Family::OneTimesZ, Family::OneTimesN, Family::AASquared, Family::Middle, Family::Ix] {
        let ev = truncation_consistency(f, Truncation::bound(4)).unwrap();
        assert!(ev.contradictions.is_empty(), "{f}: {:?}", ev.contradictions);
    }
    let ev = truncation_consistency(
        Family::IrrationalHalfplane,
        Truncation { bound: None, window: Some(3) },
    )
    .unwrap();
    assert!(ev.contradictions.is_empty());
    assert!(Family::ALL.iter().all(|&f| registry_classification(f).combination.is_realizable()));
}
