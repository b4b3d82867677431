//! Deciding the counting properties of a step set, with or without a constraint.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigUint;
use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::enumerate::{
    admissible_steps, find_closed_walk, reachable_points, Admissibility, ClosedWalk,
};
use crate::error::{Error, Result};
use crate::geom::{
    check_cc, check_lc, check_slc, check_wlc, convex_hull, cross_sign, dot_sign, lc_witness,
    origin_in_hull, origin_in_relative_interior, ConditionWitness, Direction, HullKind,
    LatticePoint, OriginCertificate,
};
use crate::stepset::{
    materialize, registry_classification, Combination, ConstraintSpec, Family, StepSetSpec,
    Truncation,
};
use crate::walk::Walk;

/// Three-valued verdict.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Tri {
    Yes,
    No,
    Unknown,
}

impl Tri {
    pub fn from_bool(b: bool) -> Self {
        if b {
            Tri::Yes
        } else {
            Tri::No
        }
    }

    pub fn known(self) -> Option<bool> {
        match self {
            Tri::Yes => Some(true),
            Tri::No => Some(false),
            Tri::Unknown => None,
        }
    }
}

impl std::ops::Not for Tri {
    type Output = Tri;

    fn not(self) -> Tri {
        match self {
            Tri::Yes => Tri::No,
            Tri::No => Tri::Yes,
            Tri::Unknown => Tri::Unknown,
        }
    }
}

impl fmt::Display for Tri {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Tri::Yes => "yes",
            Tri::No => "no",
            Tri::Unknown => "unknown",
        })
    }
}

/// Why a verdict holds. Every `Yes`/`No` carries one of the certificate variants and
/// every `Unknown` carries the search bound used.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Evidence {
    /// every step has `normal . A >= 1`
    LineCondition { normal: Direction },
    /// the admissible steps satisfy the line condition
    AdmissibleLineCondition {
        admissible: Vec<LatticePoint>,
        normal: Direction,
    },
    /// `O` lies in the hull of the steps
    OriginInHull {
        certificate: Option<OriginCertificate>,
    },
    /// `O` lies in the hull of the admissible steps
    AdmissibleHull {
        admissible: Vec<LatticePoint>,
        certificate: Option<OriginCertificate>,
    },
    ClosedWalk { walk: ClosedWalk },
    /// no step `s` has `-s` in the constraint, so nothing can step back onto `O`
    NoReturnStep,
    /// `normal . P > 0` for every nonzero point of the constraint
    PointedConstraint { normal: LatticePoint },
    /// walks to `point` and to `-point`
    OppositePair {
        point: LatticePoint,
        forward: Walk,
        backward: Walk,
    },
    /// a reachable point whose negation leaves the constraint
    NegationOutside { point: LatticePoint, walk: Walk },
    /// reached points whose hull holds `O` strictly inside
    InteriorHull { points: Vec<LatticePoint> },
    /// no admissible steps at all
    NoAdmissibleSteps,
    /// step-set group structure of an unconstrained set
    GroupStructure { iso: GroupIso },
    /// for finite step sets the bounded-length and finite-count properties agree
    SameAsFpp,
    /// forced by an implication of the hierarchy from another verdict
    Implied { from: String },
    /// search to this length found no certificate
    Bound { max_len: usize },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verdict {
    pub value: Tri,
    pub evidence: Evidence,
}

impl Verdict {
    fn new(value: Tri, evidence: Evidence) -> Self {
        Verdict { value, evidence }
    }

    fn unknown(max_len: usize) -> Self {
        Verdict::new(Tri::Unknown, Evidence::Bound { max_len })
    }
}

/// Outcome of a geometric condition check.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConditionCheck {
    pub holds: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<ConditionWitness>,
}

impl ConditionCheck {
    fn of(w: Option<ConditionWitness>) -> Self {
        ConditionCheck {
            holds: w.is_some(),
            witness: w,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum GroupIso {
    Trivial,
    Z,
    Z2,
    NotGroup,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassificationReport {
    pub cc: ConditionCheck,
    pub slc: ConditionCheck,
    pub lc: ConditionCheck,
    pub wlc: ConditionCheck,
    pub fpp: Verdict,
    pub bpp: Verdict,
    pub ipp: Verdict,
    /// `None` while any of the six fields is undecided
    pub combination: Option<Combination>,
    pub units_nontrivial: Verdict,
    pub is_group: Verdict,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub group_iso: Option<GroupIso>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub admissible: Option<Admissibility>,
}

impl ClassificationReport {
    /// `(cc, slc, lc, fpp, bpp, not ipp)` when all six are decided.
    pub fn flags(&self) -> Option<[bool; 6]> {
        Some([
            self.cc.holds,
            self.slc.holds,
            self.lc.holds,
            self.fpp.value.known()?,
            self.bpp.value.known()?,
            !self.ipp.value.known()?,
        ])
    }
}

/// Check the implications between the six conditions (and `lc => wlc`).
pub fn audit_hierarchy(r: &ClassificationReport) -> Result<()> {
    let t = |b: bool| Tri::from_bool(b);
    let not_ipp = !r.ipp.value;
    let rules: [(&str, Tri, &str, Tri); 8] = [
        ("cc", t(r.cc.holds), "slc", t(r.slc.holds)),
        ("slc", t(r.slc.holds), "lc", t(r.lc.holds)),
        ("lc", t(r.lc.holds), "wlc", t(r.wlc.holds)),
        ("fpp", r.fpp.value, "bpp", r.bpp.value),
        ("bpp", r.bpp.value, "not ipp", not_ipp),
        ("cc", t(r.cc.holds), "fpp", r.fpp.value),
        ("slc", t(r.slc.holds), "bpp", r.bpp.value),
        ("lc", t(r.lc.holds), "not ipp", not_ipp),
    ];
    for (a, va, b, vb) in rules {
        if va == Tri::Yes && vb == Tri::No {
            return Err(Error::Hierarchy(format!("{a} holds but {b} fails")));
        }
    }
    if r.combination == Some(Combination::VIII) {
        return Err(Error::Hierarchy("combination (VIII) cannot occur".into()));
    }
    Ok(())
}

fn geometric_checks(steps: &[LatticePoint]) -> [ConditionCheck; 4] {
    [
        ConditionCheck::of(check_cc(steps)),
        ConditionCheck::of(check_slc(steps)),
        ConditionCheck::of(lc_witness(steps)),
        ConditionCheck::of(check_wlc(steps)),
    ]
}

/// Classify a finite, unconstrained step set. Exactly one of combinations (I) and (X)
/// results.
pub fn classify_finite(steps: &[LatticePoint]) -> Result<ClassificationReport> {
    if steps.iter().any(|p| p.is_origin()) {
        return Err(Error::InvalidInput("the origin is not a step".into()));
    }
    let [cc, slc, lc, wlc] = geometric_checks(steps);
    let hull = origin_in_hull(steps);
    let (fpp, ipp) = match check_lc(steps) {
        Some(u) => (
            Verdict::new(Tri::Yes, Evidence::LineCondition { normal: u }),
            Verdict::new(Tri::No, Evidence::LineCondition { normal: u }),
        ),
        None => {
            let ev = Evidence::OriginInHull {
                certificate: hull.certificate.clone(),
            };
            (Verdict::new(Tri::No, ev.clone()), Verdict::new(Tri::Yes, ev))
        }
    };
    let bpp = Verdict::new(fpp.value, Evidence::SameAsFpp);
    let units = Verdict::new(
        Tri::from_bool(hull.contained),
        Evidence::OriginInHull {
            certificate: hull.certificate,
        },
    );
    let iso = group_structure(steps);
    let is_group = Verdict::new(
        Tri::from_bool(iso != GroupIso::NotGroup),
        Evidence::GroupStructure { iso },
    );
    let mut report = ClassificationReport {
        cc,
        slc,
        lc,
        wlc,
        fpp,
        bpp,
        ipp,
        combination: None,
        units_nontrivial: units,
        is_group,
        group_iso: Some(iso),
        admissible: None,
    };
    report.combination = report.flags().and_then(Combination::from_flags);
    audit_hierarchy(&report)?;
    match report.combination {
        Some(Combination::I) | Some(Combination::X) => Ok(report),
        other => Err(Error::Postcondition(format!(
            "finite step set classified as {other:?}"
        ))),
    }
}

/// Group structure of the monoid generated by a finite step set.
pub fn group_structure(steps: &[LatticePoint]) -> GroupIso {
    if steps.is_empty() {
        return GroupIso::Trivial;
    }
    let a = steps[0];
    let collinear = steps.iter().all(|&p| cross_sign(a, p) == Ordering::Equal);
    if collinear {
        if origin_in_relative_interior(steps) {
            GroupIso::Z
        } else {
            GroupIso::NotGroup
        }
    } else if check_wlc(steps).is_none() {
        GroupIso::Z2
    } else {
        GroupIso::NotGroup
    }
}

/// Isomorphism type of the monoid generated by one or two steps.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum MonoidType {
    FreeOnOneGenerator,
    /// generated by `k` and `l` times a shared primitive vector, `k <= l`
    NumericalMonoid { k: u64, l: u64, gcd: u64 },
    GroupZ,
    FreeCommutativeRankTwo,
}

pub fn small_stepset_monoid(steps: &[LatticePoint]) -> Result<MonoidType> {
    if steps.iter().any(|p| p.is_origin()) {
        return Err(Error::InvalidInput("the origin is not a step".into()));
    }
    match steps {
        [_] => Ok(MonoidType::FreeOnOneGenerator),
        [a, b] if a == b => Ok(MonoidType::FreeOnOneGenerator),
        [a, b] => {
            if cross_sign(*a, *b) != Ordering::Equal {
                return Ok(MonoidType::FreeCommutativeRankTwo);
            }
            if dot_sign(*a, *b) == Ordering::Less {
                return Ok(MonoidType::GroupZ);
            }
            let (p, q) = (a.content().unsigned_abs(), b.content().unsigned_abs());
            let (k, l) = (p.min(q), p.max(q));
            Ok(MonoidType::NumericalMonoid {
                k,
                l,
                gcd: num_integer::gcd(k, l),
            })
        }
        _ => Err(Error::InvalidInput(format!(
            "expected one or two steps, got {}",
            steps.len()
        ))),
    }
}

/// `a_n = a_{n-k} + a_{n-l}` with `a_0 = 1` and `a_n = 0` for negative `n`.
pub fn recurrence_sequence(k: usize, l: usize, n_max: usize) -> Result<Vec<BigUint>> {
    if k == 0 || k >= l {
        return Err(Error::InvalidInput("need 0 < k < l".into()));
    }
    let mut a: Vec<BigUint> = Vec::with_capacity(n_max + 1);
    for n in 0..=n_max {
        let v = if n == 0 {
            BigUint::one()
        } else {
            let x = n.checked_sub(k).map(|i| a[i].clone()).unwrap_or_default();
            let y = n.checked_sub(l).map(|i| a[i].clone()).unwrap_or_default();
            x + y
        };
        a.push(v);
    }
    Ok(a)
}

/// A normal `u` with `u . P > 0` for every nonzero point of the constraint, when the
/// constraint is known to be a pointed cone.
fn pointed_normal(c: &ConstraintSpec) -> Option<LatticePoint> {
    match c {
        ConstraintSpec::PuncturedQuadrant | ConstraintSpec::BelowDiagonal => {
            Some(LatticePoint::new(1, 1))
        }
        ConstraintSpec::DiagonalChain => None,
        ConstraintSpec::HalfplaneIntersection { normals } => {
            // pointed iff the normals span the plane; their sum is then strictly
            // positive off the origin
            let spans = normals
                .iter()
                .any(|m| normals.iter().any(|n| cross_sign(m.vector(), n.vector()) != Ordering::Equal));
            spans.then(|| {
                normals
                    .iter()
                    .fold(LatticePoint::new(0, 0), |acc, n| acc + n.vector())
            })
        }
        ConstraintSpec::FullPlane | ConstraintSpec::Custom(_) => None,
    }
}

/// Units and group verdicts for the constrained monoid of reachable points.
pub fn constrained_units_and_group(
    steps: &[LatticePoint],
    constraint: &ConstraintSpec,
    bound: usize,
) -> Result<(Verdict, Verdict)> {
    if constraint.is_full_plane() {
        let hull = origin_in_hull(steps);
        let iso = group_structure(steps);
        return Ok((
            Verdict::new(
                Tri::from_bool(hull.contained),
                Evidence::OriginInHull {
                    certificate: hull.certificate,
                },
            ),
            Verdict::new(
                Tri::from_bool(iso != GroupIso::NotGroup),
                Evidence::GroupStructure { iso },
            ),
        ));
    }
    let adm = admissible_steps(steps, constraint, bound, constraint.interior_cone())?;
    units_and_group_with(steps, constraint, bound, &adm)
}

fn units_and_group_with(
    steps: &[LatticePoint],
    constraint: &ConstraintSpec,
    bound: usize,
    adm: &Admissibility,
) -> Result<(Verdict, Verdict)> {
    let reached = reachable_points(steps, constraint, bound)?;
    let nonzero: Vec<&(LatticePoint, Walk)> = reached.iter().filter(|(p, _)| !p.is_origin()).collect();

    let units = if let Some((p, fwd, back)) = nonzero.iter().find_map(|(p, w)| {
        reached
            .iter()
            .find(|(q, _)| *q == -*p)
            .map(|(_, b)| (*p, w.clone(), b.clone()))
    }) {
        Verdict::new(
            Tri::Yes,
            Evidence::OppositePair {
                point: p,
                forward: fwd,
                backward: back,
            },
        )
    } else if let Some(hull) = Some(origin_in_hull(&nonzero.iter().map(|(p, _)| *p).collect::<Vec<_>>()))
        .filter(|h| h.contained)
    {
        // O in the hull of the monoid minus O already forces a unit
        Verdict::new(
            Tri::Yes,
            Evidence::OriginInHull {
                certificate: hull.certificate,
            },
        )
    } else if let Some(u) = check_lc(steps) {
        Verdict::new(Tri::No, Evidence::LineCondition { normal: u })
    } else if let Some(u) = adm.is_complete().then(|| check_lc(&adm.confirmed_steps())).flatten() {
        Verdict::new(
            Tri::No,
            Evidence::AdmissibleLineCondition {
                admissible: adm.confirmed_steps(),
                normal: u,
            },
        )
    } else if let Some(n) = pointed_normal(constraint) {
        Verdict::new(Tri::No, Evidence::PointedConstraint { normal: n })
    } else {
        Verdict::unknown(bound)
    };

    let pts: Vec<LatticePoint> = nonzero.iter().map(|(p, _)| *p).collect();
    let group = if adm.is_complete() && adm.confirmed.is_empty() {
        Verdict::new(Tri::Yes, Evidence::NoAdmissibleSteps)
    } else if convex_hull(&pts).kind == HullKind::Polygon && origin_in_relative_interior(&pts) {
        Verdict::new(Tri::Yes, Evidence::InteriorHull { points: pts })
    } else if let Some((p, w)) = nonzero.iter().find(|(p, _)| !constraint.contains(-*p)) {
        Verdict::new(
            Tri::No,
            Evidence::NegationOutside {
                point: *p,
                walk: w.clone(),
            },
        )
    } else if units.value == Tri::No && !nonzero.is_empty() {
        Verdict::new(
            Tri::No,
            Evidence::Implied {
                from: "trivial units with a nonzero reachable point".into(),
            },
        )
    } else {
        Verdict::unknown(bound)
    };
    Ok((units, group))
}

/// Classify a finite step set under a constraint. Undecided properties come back as
/// `Unknown` together with the search bound.
pub fn classify_constrained(
    steps: &[LatticePoint],
    constraint: &ConstraintSpec,
    bound: usize,
) -> Result<ClassificationReport> {
    if constraint.is_full_plane() {
        return classify_finite(steps);
    }
    if steps.iter().any(|p| p.is_origin()) {
        return Err(Error::InvalidInput("the origin is not a step".into()));
    }
    let [cc, slc, lc, wlc] = geometric_checks(steps);
    let adm = admissible_steps(steps, constraint, bound, constraint.interior_cone())?;
    let y = adm.confirmed_steps();
    let y_lc = if adm.is_complete() { check_lc(&y) } else { None };

    let mut fpp = if let Some(u) = check_lc(steps) {
        Verdict::new(Tri::Yes, Evidence::LineCondition { normal: u })
    } else if !adm.is_complete() {
        Verdict::unknown(bound)
    } else if let Some(u) = y_lc {
        Verdict::new(
            Tri::Yes,
            Evidence::AdmissibleLineCondition {
                admissible: y.clone(),
                normal: u,
            },
        )
    } else if y.is_empty() {
        Verdict::new(Tri::Yes, Evidence::NoAdmissibleSteps)
    } else {
        Verdict::new(
            Tri::No,
            Evidence::AdmissibleHull {
                admissible: y.clone(),
                certificate: origin_in_hull(&y).certificate,
            },
        )
    };

    let (units, is_group) = units_and_group_with(steps, constraint, bound, &adm)?;
    let closed = find_closed_walk(steps, constraint, bound, None)?;
    let return_possible = steps.iter().any(|&s| constraint.contains(-s));
    let mut ipp = if let Some(walk) = closed.found {
        Verdict::new(Tri::Yes, Evidence::ClosedWalk { walk })
    } else if let Evidence::OppositePair {
        forward, backward, ..
    } = &units.evidence
    {
        // the walk to -A, shifted to start at A, stays in the monoid
        let walk = ClosedWalk {
            approach: Walk::empty(),
            cycle: forward.concat(backward),
        };
        Verdict::new(Tri::Yes, Evidence::ClosedWalk { walk })
    } else if units.value == Tri::Yes {
        Verdict::new(Tri::Yes, Evidence::Implied { from: "units".into() })
    } else if let Some(u) = check_lc(steps) {
        Verdict::new(Tri::No, Evidence::LineCondition { normal: u })
    } else if let Some(u) = y_lc {
        Verdict::new(
            Tri::No,
            Evidence::AdmissibleLineCondition {
                admissible: y.clone(),
                normal: u,
            },
        )
    } else if adm.is_complete() && y.is_empty() {
        Verdict::new(Tri::No, Evidence::NoAdmissibleSteps)
    } else if !return_possible {
        Verdict::new(Tri::No, Evidence::NoReturnStep)
    } else if constraint.is_group() && adm.is_complete() {
        // inside a group every word over the admissible steps stays in the constraint
        let hull = origin_in_hull(&y);
        Verdict::new(
            Tri::from_bool(hull.contained),
            Evidence::AdmissibleHull {
                admissible: y.clone(),
                certificate: hull.certificate,
            },
        )
    } else {
        Verdict::unknown(bound)
    };

    // a closed walk at O rules out finiteness; finiteness rules out a closed walk
    if ipp.value == Tri::Yes && fpp.value == Tri::Unknown {
        fpp = Verdict::new(Tri::No, Evidence::Implied { from: "ipp".into() });
    }
    if fpp.value == Tri::Yes && ipp.value == Tri::Unknown {
        ipp = Verdict::new(Tri::No, Evidence::Implied { from: "fpp".into() });
    }
    let bpp = match fpp.value {
        Tri::Unknown => fpp.clone(),
        v => Verdict::new(v, Evidence::SameAsFpp),
    };

    let mut report = ClassificationReport {
        cc,
        slc,
        lc,
        wlc,
        fpp,
        bpp,
        ipp,
        combination: None,
        units_nontrivial: units,
        is_group,
        group_iso: None,
        admissible: Some(adm),
    };
    report.combination = report.flags().and_then(Combination::from_flags);
    audit_hierarchy(&report)?;
    Ok(report)
}

/// Column summary of a step set inside `N x Z`: whether the `y`-axis column has a
/// positive or negative entry, and whether some later column has infinitely many
/// positive entries.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NzColumns {
    pub axis_positive: bool,
    pub axis_negative: bool,
    pub some_column_positive_infinite: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum NzVerdict {
    /// finitely many walks to every point
    Fpp,
    /// walks of unbounded length to some point
    NotBpp,
    Inconclusive,
}

/// Decide finiteness from the column structure alone, without counting.
pub fn nz_fast_path(cols: NzColumns) -> NzVerdict {
    if !cols.axis_positive && !cols.some_column_positive_infinite {
        NzVerdict::Fpp
    } else if cols.axis_negative && cols.some_column_positive_infinite {
        NzVerdict::NotBpp
    } else {
        NzVerdict::Inconclusive
    }
}

/// Column summary of a finite step set, if it lies in `N x Z`.
pub fn nz_columns_of_finite(steps: &[LatticePoint]) -> Option<NzColumns> {
    if steps.iter().any(|p| p.x < 0) {
        return None;
    }
    Some(NzColumns {
        axis_positive: steps.iter().any(|p| p.x == 0 && p.y > 0),
        axis_negative: steps.iter().any(|p| p.x == 0 && p.y < 0),
        some_column_positive_infinite: false,
    })
}

/// Column summary of an untruncated catalogued family, if it lies in `N x Z`.
pub fn nz_columns_of_family(family: Family) -> Option<NzColumns> {
    let cols = |axis_positive, axis_negative, some_column_positive_infinite| {
        Some(NzColumns {
            axis_positive,
            axis_negative,
            some_column_positive_infinite,
        })
    };
    match family {
        Family::En => cols(true, false, false),
        Family::Nes => cols(true, true, false),
        Family::OneTimesZ | Family::OneTimesN | Family::OneTimesP => cols(false, false, true),
        Family::NorthPlusOneTimesP => cols(true, false, true),
        Family::AASquared => cols(false, false, false),
        Family::Middle => cols(false, true, false),
        Family::Ix => cols(false, true, true),
        Family::Nesw
        | Family::IrrationalHalfplane
        | Family::Sqrt2Iv
        | Family::AppendixV => None,
    }
}

/// What a finite truncation says about the full family, compared with the catalogue.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TruncationEvidence {
    pub family: Family,
    pub registry: Combination,
    pub truncated: Combination,
    pub step_count: usize,
    /// statements the truncation proves about the full family that the catalogue denies
    pub contradictions: Vec<String>,
}

/// Classify a truncation and flag anything it proves that contradicts the catalogue.
///
/// Line conditions pass to subsets, and a closed walk in a subset is one in the full
/// family, so a truncation can refute but never confirm a catalogue label.
pub fn truncation_consistency(family: Family, truncation: Truncation) -> Result<TruncationEvidence> {
    let spec = StepSetSpec::family(family, truncation);
    let steps = materialize(&spec)?;
    let report = classify_finite(&steps)?;
    let registry = registry_classification(family).combination;
    let [rcc, rslc, rlc, ..] = registry.flags();
    let not_ipp = registry.flags()[5];
    let mut contradictions = Vec::new();
    for (name, full, part) in [
        ("cc", rcc, report.cc.holds),
        ("slc", rslc, report.slc.holds),
        ("lc", rlc, report.lc.holds),
    ] {
        if full && !part {
            contradictions.push(format!("{name} fails on a subset"));
        }
    }
    if not_ipp && report.ipp.value == Tri::Yes {
        contradictions.push("a subset has a closed walk".into());
    }
    if let Some(NzVerdict::Fpp) = nz_columns_of_family(family).map(nz_fast_path) {
        if !registry.flags()[3] {
            contradictions.push("column lemma gives finiteness".into());
        }
    }
    if let Some(NzVerdict::NotBpp) = nz_columns_of_family(family).map(nz_fast_path) {
        if registry.flags()[4] {
            contradictions.push("column lemma gives unbounded lengths".into());
        }
    }
    Ok(TruncationEvidence {
        family,
        registry,
        truncated: report.combination.expect("finite sets are always decided"),
        step_count: steps.len(),
        contradictions,
    })
}
