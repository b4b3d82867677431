//! Step sets, named families with their truncations, and constraint monoids.

use std::cmp::Ordering;
use std::fmt;
use std::ops::Deref;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geom::{cross_sign, Direction, LatticePoint, ORIGIN};
use crate::quad::{example_v_steps, QuadExt};
use crate::walk::Walk;

/// A finite set of nonzero steps, kept sorted and deduplicated.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(transparent)]
pub struct StepSet {
    steps: Vec<LatticePoint>,
}

impl StepSet {
    pub fn new(points: impl IntoIterator<Item = LatticePoint>) -> Result<Self> {
        let mut steps: Vec<LatticePoint> = points.into_iter().collect();
        if steps.iter().any(|p| p.is_origin()) {
            return Err(Error::InvalidInput("the origin cannot be a step".into()));
        }
        steps.sort();
        steps.dedup();
        Ok(StepSet { steps })
    }

    pub fn from_pairs(pairs: &[(i64, i64)]) -> Result<Self> {
        StepSet::new(pairs.iter().map(|&p| LatticePoint::from(p)))
    }

    pub fn as_slice(&self) -> &[LatticePoint] {
        &self.steps
    }

    /// Largest absolute coordinate among the steps.
    pub fn max_coordinate(&self) -> i64 {
        self.steps
            .iter()
            .map(|p| p.x.unsigned_abs().max(p.y.unsigned_abs()))
            .max()
            .unwrap_or(0)
            .min(i64::MAX as u64) as i64
    }
}

impl<'de> Deserialize<'de> for StepSet {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let v = Vec::<LatticePoint>::deserialize(d)?;
        StepSet::new(v).map_err(serde::de::Error::custom)
    }
}

impl Deref for StepSet {
    type Target = [LatticePoint];
    fn deref(&self) -> &[LatticePoint] {
        &self.steps
    }
}

/// The named step sets of the catalogue.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Family {
    #[serde(rename = "EN")]
    En,
    #[serde(rename = "NESW")]
    Nesw,
    #[serde(rename = "NES")]
    Nes,
    #[serde(rename = "one_times_Z")]
    OneTimesZ,
    #[serde(rename = "one_times_N")]
    OneTimesN,
    #[serde(rename = "one_times_P")]
    OneTimesP,
    #[serde(rename = "north_plus_one_times_P")]
    NorthPlusOneTimesP,
    #[serde(rename = "a_a_squared")]
    AASquared,
    #[serde(rename = "middle")]
    Middle,
    #[serde(rename = "irrational_halfplane")]
    IrrationalHalfplane,
    #[serde(rename = "sqrt2_IV")]
    Sqrt2Iv,
    #[serde(rename = "IX")]
    Ix,
    #[serde(rename = "appendix_V")]
    AppendixV,
}

impl Family {
    pub const ALL: [Family; 13] = [
        Family::En,
        Family::Nesw,
        Family::Nes,
        Family::OneTimesZ,
        Family::OneTimesN,
        Family::OneTimesP,
        Family::NorthPlusOneTimesP,
        Family::AASquared,
        Family::Middle,
        Family::IrrationalHalfplane,
        Family::Sqrt2Iv,
        Family::Ix,
        Family::AppendixV,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Family::En => "EN",
            Family::Nesw => "NESW",
            Family::Nes => "NES",
            Family::OneTimesZ => "one_times_Z",
            Family::OneTimesN => "one_times_N",
            Family::OneTimesP => "one_times_P",
            Family::NorthPlusOneTimesP => "north_plus_one_times_P",
            Family::AASquared => "a_a_squared",
            Family::Middle => "middle",
            Family::IrrationalHalfplane => "irrational_halfplane",
            Family::Sqrt2Iv => "sqrt2_IV",
            Family::Ix => "IX",
            Family::AppendixV => "appendix_V",
        }
    }

    pub fn from_name(s: &str) -> Result<Self> {
        Family::ALL
            .into_iter()
            .find(|f| f.name() == s)
            .ok_or_else(|| Error::UnknownFamily(s.to_string()))
    }

    /// Whether the family is finite, so needs no truncation.
    pub fn is_finite(self) -> bool {
        matches!(self, Family::En | Family::Nesw | Family::Nes)
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FamilyParams {
    /// radicand of the irrational slope
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub d: Option<u64>,
    /// `+1` for the side above the line, `-1` below
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub side: Option<i8>,
}

/// Finite cut of an infinite family: `bound` limits the family index, `window` the
/// coordinates.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Truncation {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub bound: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub window: Option<i64>,
}

impl Truncation {
    pub fn bound(b: u64) -> Self {
        Truncation {
            bound: Some(b),
            window: None,
        }
    }

    pub fn window(w: i64) -> Self {
        Truncation {
            bound: None,
            window: Some(w),
        }
    }
}

/// Either an explicit list of steps or a family with parameters and truncation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawStepSetSpec", into = "RawStepSetSpec")]
pub enum StepSetSpec {
    Explicit(StepSet),
    Family {
        family: Family,
        params: FamilyParams,
        truncation: Truncation,
    },
}

#[derive(Clone, Debug, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawStepSetSpec {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    steps: Option<Vec<LatticePoint>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    family: Option<Family>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    params: Option<FamilyParams>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    truncation: Option<Truncation>,
}

impl TryFrom<RawStepSetSpec> for StepSetSpec {
    type Error = Error;
    fn try_from(raw: RawStepSetSpec) -> Result<Self> {
        match (raw.steps, raw.family) {
            (Some(_), Some(_)) => Err(Error::Spec(
                "give either `steps` or `family`, not both".into(),
            )),
            (Some(steps), None) => {
                if raw.params.is_some() || raw.truncation.is_some() {
                    return Err(Error::Spec(
                        "`params` and `truncation` only apply to a `family`".into(),
                    ));
                }
                Ok(StepSetSpec::Explicit(StepSet::new(steps)?))
            }
            (None, Some(family)) => Ok(StepSetSpec::Family {
                family,
                params: raw.params.unwrap_or_default(),
                truncation: raw.truncation.unwrap_or_default(),
            }),
            (None, None) => Err(Error::Spec("a step set needs `steps` or `family`".into())),
        }
    }
}

impl From<StepSetSpec> for RawStepSetSpec {
    fn from(s: StepSetSpec) -> Self {
        match s {
            StepSetSpec::Explicit(set) => RawStepSetSpec {
                steps: Some(set.steps),
                ..Default::default()
            },
            StepSetSpec::Family {
                family,
                params,
                truncation,
            } => RawStepSetSpec {
                family: Some(family),
                params: (params != FamilyParams::default()).then_some(params),
                truncation: (truncation != Truncation::default()).then_some(truncation),
                ..Default::default()
            },
        }
    }
}

impl StepSetSpec {
    pub fn explicit(pairs: &[(i64, i64)]) -> Result<Self> {
        Ok(StepSetSpec::Explicit(StepSet::from_pairs(pairs)?))
    }

    pub fn family(family: Family, truncation: Truncation) -> Self {
        StepSetSpec::Family {
            family,
            params: FamilyParams::default(),
            truncation,
        }
    }

    pub fn materialize(&self) -> Result<StepSet> {
        materialize(self)
    }
}

const APPENDIX_BUDGET: u64 = 5_000_000;

fn need_bound(family: Family, t: &Truncation) -> Result<i64> {
    match t.bound {
        Some(b) if b > 0 => i64::try_from(b)
            .map_err(|_| Error::InvalidInput(format!("bound {b} too large"))),
        Some(_) => Err(Error::EmptyTruncation(family.name().into())),
        None => Err(Error::Spec(format!(
            "family `{family}` needs `truncation.bound`"
        ))),
    }
}

fn need_window(family: Family, t: &Truncation) -> Result<i64> {
    match t.window {
        Some(w) if w > 0 => Ok(w),
        Some(_) => Err(Error::EmptyTruncation(family.name().into())),
        None => Err(Error::Spec(format!(
            "family `{family}` needs `truncation.window`"
        ))),
    }
}

/// Expand a spec into a finite step set.
pub fn materialize(spec: &StepSetSpec) -> Result<StepSet> {
    let (family, params, t) = match spec {
        StepSetSpec::Explicit(set) => return Ok(set.clone()),
        StepSetSpec::Family {
            family,
            params,
            truncation,
        } => (*family, params, truncation),
    };
    let p = LatticePoint::new;
    let pts: Vec<LatticePoint> = match family {
        Family::En => vec![p(1, 0), p(0, 1)],
        Family::Nesw => vec![p(1, 0), p(0, 1), p(-1, 0), p(0, -1)],
        Family::Nes => vec![p(1, 0), p(0, 1), p(0, -1)],
        Family::OneTimesZ => {
            let b = need_bound(family, t)?;
            (-b..=b).map(|j| p(1, j)).collect()
        }
        Family::OneTimesN => {
            let b = need_bound(family, t)?;
            (0..=b).map(|j| p(1, j)).collect()
        }
        Family::OneTimesP => {
            let b = need_bound(family, t)?;
            (1..=b).map(|j| p(1, j)).collect()
        }
        Family::NorthPlusOneTimesP => {
            let b = need_bound(family, t)?;
            std::iter::once(p(0, 1)).chain((1..=b).map(|j| p(1, j))).collect()
        }
        Family::AASquared => {
            let b = need_bound(family, t)?;
            let mut v = vec![p(1, 0)];
            for a in 1..=b {
                let sq = a
                    .checked_mul(a)
                    .ok_or_else(|| Error::Overflow(format!("{a}^2")))?;
                v.push(p(a, sq));
                v.push(p(a, -sq));
            }
            v
        }
        Family::Middle => {
            let b = need_bound(family, t)?;
            let mut v = vec![p(0, -1)];
            for a in 1..=b {
                let sq = a
                    .checked_mul(a)
                    .ok_or_else(|| Error::Overflow(format!("{a}^2")))?;
                v.push(p(a, sq));
            }
            v
        }
        Family::Ix => {
            let b = need_bound(family, t)?;
            std::iter::once(p(0, -1)).chain((0..=b).map(|j| p(1, j))).collect()
        }
        Family::IrrationalHalfplane => {
            let w = need_window(family, t)?;
            let d = params.d.unwrap_or(2);
            crate::quad::check_radicand(d)?;
            let side = params.side.unwrap_or(1);
            if side != 1 && side != -1 {
                return Err(Error::InvalidInput("side must be +1 or -1".into()));
            }
            let mut v = Vec::new();
            for x in -w..=w {
                for y in -w..=w {
                    let off = QuadExt::from_ints(y, -x, d);
                    let s = off.sign();
                    if (side == 1 && s == Ordering::Greater) || (side == -1 && s == Ordering::Less)
                    {
                        v.push(p(x, y));
                    }
                }
            }
            v
        }
        Family::Sqrt2Iv => {
            if params.d.is_some_and(|d| d != 2) {
                return Err(Error::InvalidInput("sqrt2_IV uses d = 2 only".into()));
            }
            let w = need_window(family, t)?;
            let b = need_bound(family, t)?;
            let mut v = sqrt2_band_points(w);
            for q in 0..=b {
                let qq = q
                    .checked_mul(q)
                    .ok_or_else(|| Error::Overflow(format!("{q}^2")))?;
                v.push(sqrt2_rhombus_point(q, qq)?);
            }
            v
        }
        Family::AppendixV => {
            let b = need_bound(family, t)?;
            let ex = example_v_steps(b as u64, APPENDIX_BUDGET)?;
            ex.steps
                .iter()
                .map(|s| s.to_lattice())
                .collect::<Result<Vec<_>>>()?
        }
    };
    if pts.is_empty() {
        return Err(Error::EmptyTruncation(family.name().into()));
    }
    StepSet::new(pts)
}

/// `0 < sqrt2*x - y < 2`, the open strip between the first two slanted lines.
pub fn in_sqrt2_band(pt: LatticePoint) -> bool {
    let v = QuadExt::from_ints(-pt.y, pt.x, 2);
    v.sign() == Ordering::Greater && v < QuadExt::from_int(2, 2)
}

/// Lattice points of the strip with both coordinates positive and `x <= w`.
pub fn sqrt2_band_points(w: i64) -> Vec<LatticePoint> {
    let mut out = Vec::new();
    for x in 1..=w {
        let top = QuadExt::from_ints(0, x, 2).floor();
        let top: i64 = top.try_into().expect("coordinate fits");
        for y in (top - 2).max(1)..=top {
            let pt = LatticePoint::new(x, y);
            if in_sqrt2_band(pt) {
                out.push(pt);
            }
        }
    }
    out
}

/// The chosen lattice point of the open rhombus `R_{p,q}`:
/// `2p < sqrt2*x - y < 2p + 2` and `-sqrt2*(q+1) < y < -sqrt2*q`.
///
/// Among the points inside, the one nearest the origin is taken, ties broken
/// lexicographically.
pub fn sqrt2_rhombus_point(p: i64, q: i64) -> Result<LatticePoint> {
    let d = 2;
    let to_i64 = |b: BigInt| -> Result<i64> {
        b.try_into()
            .map_err(|_| Error::Overflow("rhombus coordinate".into()))
    };
    let y_lo = to_i64(QuadExt::from_ints(0, -(q + 1), d).floor())?;
    let y_hi = to_i64(QuadExt::from_ints(0, -q, d).floor())?;
    let mut best: Option<LatticePoint> = None;
    for y in y_lo..=y_hi {
        // x in ((2p + y)/sqrt2, (2p + 2 + y)/sqrt2)
        let half = BigRational::new(1.into(), 2.into());
        let lo = QuadExt::new(BigRational::from_integer(0.into()), half.clone() * BigRational::from_integer((2 * p + y).into()), d);
        let x_lo = to_i64(lo.floor())?;
        for x in x_lo..=x_lo + 3 {
            let pt = LatticePoint::new(x, y);
            let band = QuadExt::from_ints(-y, x, d);
            let strip_ok = band > QuadExt::from_int(2 * p, d) && band < QuadExt::from_int(2 * p + 2, d);
            let yv = QuadExt::from_int(y, d);
            let row_ok = yv > QuadExt::from_ints(0, -(q + 1), d) && yv < QuadExt::from_ints(0, -q, d);
            if strip_ok && row_ok {
                let better = match best {
                    None => true,
                    Some(b) => (pt.norm_sq(), pt) < (b.norm_sq(), b),
                };
                if better {
                    best = Some(pt);
                }
            }
        }
    }
    best.ok_or_else(|| Error::Postcondition(format!("rhombus ({p}, {q}) has no lattice point")))
}

/// The open cone `first . x > 0` and `second . x > 0`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LatticeCone {
    pub first: Direction,
    pub second: Direction,
}

impl LatticeCone {
    pub fn new(first: Direction, second: Direction) -> Result<Self> {
        if cross_sign(first.vector(), second.vector()) == Ordering::Equal {
            return Err(Error::InvalidInput("cone normals must not be parallel".into()));
        }
        Ok(LatticeCone { first, second })
    }

    pub fn contains(&self, p: LatticePoint) -> bool {
        self.first.sign_at(p) == Ordering::Greater && self.second.sign_at(p) == Ordering::Greater
    }

    /// Whether `n . x >= 0` on the whole cone, i.e. `n` is a nonnegative combination
    /// of the two normals.
    fn dual_contains(&self, n: LatticePoint) -> bool {
        let (f, s) = (self.first.vector(), self.second.vector());
        let o = cross_sign(f, s);
        if o == Ordering::Equal {
            return false;
        }
        let a = cross_sign(f, n);
        let b = cross_sign(n, s);
        (a == o || a == Ordering::Equal) && (b == o || b == Ordering::Equal)
    }
}

pub type Predicate = Arc<dyn Fn(LatticePoint) -> bool + Send + Sync>;

/// A user-supplied constraint that passed a randomised closure check.
#[derive(Clone)]
pub struct CustomConstraint {
    pub name: String,
    predicate: Predicate,
}

impl fmt::Debug for CustomConstraint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CustomConstraint({})", self.name)
    }
}

/// A submonoid `C` of the lattice restricting every prefix of a walk.
#[derive(Clone, Debug, Default, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum ConstraintSpec {
    #[default]
    FullPlane,
    /// `n . x >= 0` for every listed normal.
    HalfplaneIntersection { normals: Vec<Direction> },
    /// `{O}` together with the points having both coordinates positive.
    PuncturedQuadrant,
    /// the diagonal line `{(a, a)}`
    DiagonalChain,
    /// `{(a, b) : 0 <= b <= a}`
    BelowDiagonal,
    #[serde(skip)]
    Custom(CustomConstraint),
}

impl PartialEq for ConstraintSpec {
    fn eq(&self, other: &Self) -> bool {
        use ConstraintSpec::*;
        match (self, other) {
            (FullPlane, FullPlane)
            | (PuncturedQuadrant, PuncturedQuadrant)
            | (DiagonalChain, DiagonalChain)
            | (BelowDiagonal, BelowDiagonal) => true,
            (HalfplaneIntersection { normals: a }, HalfplaneIntersection { normals: b }) => a == b,
            (Custom(a), Custom(b)) => Arc::ptr_eq(&a.predicate, &b.predicate),
            _ => false,
        }
    }
}

impl ConstraintSpec {
    /// Wrap a predicate after checking `O` membership and closure under addition on
    /// random members of the box `[-radius, radius]^2`.
    pub fn custom(
        name: impl Into<String>,
        predicate: impl Fn(LatticePoint) -> bool + Send + Sync + 'static,
        seed: u64,
        trials: usize,
        radius: i64,
    ) -> Result<Self> {
        let name = name.into();
        if !predicate(ORIGIN) {
            return Err(Error::NotSubmonoid(format!("`{name}` does not contain the origin")));
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut members = Vec::new();
        for _ in 0..trials.saturating_mul(20) {
            if members.len() >= trials.max(2) {
                break;
            }
            let p = LatticePoint::new(rng.gen_range(-radius..=radius), rng.gen_range(-radius..=radius));
            if predicate(p) {
                members.push(p);
            }
        }
        for _ in 0..trials {
            if members.is_empty() {
                break;
            }
            let a = members[rng.gen_range(0..members.len())];
            let b = members[rng.gen_range(0..members.len())];
            if !predicate(a + b) {
                return Err(Error::NotSubmonoid(format!(
                    "`{name}` contains {a} and {b} but not {}",
                    a + b
                )));
            }
        }
        Ok(ConstraintSpec::Custom(CustomConstraint {
            name,
            predicate: Arc::new(predicate),
        }))
    }

    pub fn quadrant() -> Self {
        ConstraintSpec::HalfplaneIntersection {
            normals: vec![Direction::new(1, 0).unwrap(), Direction::new(0, 1).unwrap()],
        }
    }

    pub fn is_full_plane(&self) -> bool {
        matches!(self, ConstraintSpec::FullPlane)
    }

    pub fn contains(&self, p: LatticePoint) -> bool {
        match self {
            ConstraintSpec::FullPlane => true,
            ConstraintSpec::HalfplaneIntersection { normals } => {
                normals.iter().all(|n| n.sign_at(p) != Ordering::Less)
            }
            ConstraintSpec::PuncturedQuadrant => p.is_origin() || (p.x >= 1 && p.y >= 1),
            ConstraintSpec::DiagonalChain => p.x == p.y,
            ConstraintSpec::BelowDiagonal => p.x >= 0 && p.y >= 0 && p.y <= p.x,
            ConstraintSpec::Custom(c) => (c.predicate)(p),
        }
    }

    pub fn label(&self) -> String {
        match self {
            ConstraintSpec::FullPlane => "full-plane".into(),
            ConstraintSpec::HalfplaneIntersection { normals } => {
                let parts: Vec<String> = normals.iter().map(|n| format!("{n:?}")).collect();
                format!("halfplane-intersection[{}]", parts.join(","))
            }
            ConstraintSpec::PuncturedQuadrant => "punctured-quadrant".into(),
            ConstraintSpec::DiagonalChain => "diagonal-chain".into(),
            ConstraintSpec::BelowDiagonal => "below-diagonal".into(),
            ConstraintSpec::Custom(c) => format!("custom:{}", c.name),
        }
    }

    /// Closed under negation as well as addition. Then a step is usable from some
    /// reachable point exactly when it lies in the constraint itself.
    pub fn is_group(&self) -> bool {
        match self {
            ConstraintSpec::FullPlane | ConstraintSpec::DiagonalChain => true,
            ConstraintSpec::HalfplaneIntersection { normals } => normals.iter().all(|n| {
                let neg = Direction::new(-n.a(), -n.b()).unwrap();
                normals.contains(&neg)
            }),
            _ => false,
        }
    }

    /// Whether the constraint lies inside a line through the origin.
    pub fn is_within_line(&self) -> bool {
        match self {
            ConstraintSpec::DiagonalChain => true,
            ConstraintSpec::HalfplaneIntersection { normals } => normals.iter().any(|n| {
                let neg = Direction::new(-n.a(), -n.b()).unwrap();
                normals.contains(&neg)
            }),
            _ => false,
        }
    }

    /// Exact test that the lattice points of an open cone all lie in the constraint.
    /// `None` when that cannot be decided (custom predicates).
    pub fn contains_cone(&self, cone: &LatticeCone) -> Option<bool> {
        let axis = |a, b| LatticePoint::new(a, b);
        match self {
            ConstraintSpec::FullPlane => Some(true),
            ConstraintSpec::HalfplaneIntersection { normals } => {
                Some(normals.iter().all(|n| cone.dual_contains(n.vector())))
            }
            // the open cone sits in the open quadrant, whose lattice points are positive
            ConstraintSpec::PuncturedQuadrant => {
                Some(cone.dual_contains(axis(1, 0)) && cone.dual_contains(axis(0, 1)))
            }
            ConstraintSpec::BelowDiagonal => {
                Some(cone.dual_contains(axis(0, 1)) && cone.dual_contains(axis(1, -1)))
            }
            ConstraintSpec::DiagonalChain => Some(false),
            ConstraintSpec::Custom(_) => None,
        }
    }

    /// A default open cone inside the constraint, when one is known.
    pub fn interior_cone(&self) -> Option<LatticeCone> {
        let dir = |a, b| Direction::new(a, b).unwrap();
        let cone = match self {
            ConstraintSpec::FullPlane | ConstraintSpec::PuncturedQuadrant => {
                LatticeCone::new(dir(1, 0), dir(0, 1)).ok()?
            }
            ConstraintSpec::BelowDiagonal => LatticeCone::new(dir(0, 1), dir(1, -1)).ok()?,
            ConstraintSpec::HalfplaneIntersection { normals } => match normals.as_slice() {
                [n] => LatticeCone::new(*n, Direction::primitive(n.vector() + n.vector().rot_ccw()).ok()?).ok()?,
                [a, b] => LatticeCone::new(*a, *b).ok()?,
                _ => return None,
            },
            ConstraintSpec::DiagonalChain | ConstraintSpec::Custom(_) => return None,
        };
        debug_assert_eq!(self.contains_cone(&cone), Some(true));
        Some(cone)
    }
}

/// Every prefix endpoint (including `O` and the endpoint) lies in `C`.
pub fn walk_is_constrained(walk: &Walk, constraint: &ConstraintSpec) -> bool {
    walk.prefix_endpoints().all(|p| constraint.contains(p))
}

pub fn walk_endpoint(walk: &Walk) -> LatticePoint {
    walk.endpoint()
}

/// The ten combinations of the three geometric conditions and three counting
/// properties, in the order of the classification table.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Combination {
    I,
    II,
    III,
    IV,
    V,
    VI,
    VII,
    VIII,
    IX,
    X,
}

/// `(cc, slc, lc, fpp, bpp, not_ipp)`.
pub type Flags = [bool; 6];

impl Combination {
    pub const ALL: [Combination; 10] = [
        Combination::I,
        Combination::II,
        Combination::III,
        Combination::IV,
        Combination::V,
        Combination::VI,
        Combination::VII,
        Combination::VIII,
        Combination::IX,
        Combination::X,
    ];

    pub fn flags(self) -> Flags {
        use Combination::*;
        let (geo, count) = match self {
            I => ([true, true, true], [true, true, true]),
            II => ([false, true, true], [true, true, true]),
            III => ([false, true, true], [false, true, true]),
            IV => ([false, false, true], [true, true, true]),
            V => ([false, false, true], [false, true, true]),
            VI => ([false, false, true], [false, false, true]),
            VII => ([false, false, false], [true, true, true]),
            VIII => ([false, false, false], [false, true, true]),
            IX => ([false, false, false], [false, false, true]),
            X => ([false, false, false], [false, false, false]),
        };
        [geo[0], geo[1], geo[2], count[0], count[1], count[2]]
    }

    pub fn from_flags(flags: Flags) -> Option<Combination> {
        Combination::ALL.into_iter().find(|c| c.flags() == flags)
    }

    /// Every combination except (VIII) is realised by some step set.
    pub fn is_realizable(self) -> bool {
        self != Combination::VIII
    }

    pub fn roman(self) -> &'static str {
        use Combination::*;
        match self {
            I => "I",
            II => "II",
            III => "III",
            IV => "IV",
            V => "V",
            VI => "VI",
            VII => "VII",
            VIII => "VIII",
            IX => "IX",
            X => "X",
        }
    }
}

impl fmt::Display for Combination {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.roman())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RegistryEntry {
    pub family: Family,
    pub combination: Combination,
    /// The catalogued fact for the full (untruncated) family.
    pub note: &'static str,
}

/// The combination label of each catalogued family.
pub fn registry_classification(family: Family) -> RegistryEntry {
    use Combination::*;
    let (combination, note) = match family {
        Family::En => (I, "finite, inside the open first quadrant"),
        Family::OneTimesN => (I, "vertical line x = 1 lies beyond every step"),
        Family::OneTimesP => (I, "vertical line x = 1 lies beyond every step"),
        Family::NorthPlusOneTimesP => (I, "cone between the y-axis and slope 1"),
        Family::AASquared => (II, "x = 0 is the only line with the steps on one side"),
        Family::OneTimesZ => (III, "every walk to (a, b) has length a, infinitely many for a >= 2"),
        Family::Sqrt2Iv => (IV, "the only line is the irrational one; counts stay finite"),
        Family::AppendixV => (V, "bounded lengths, infinitely many walks to (4, 0)"),
        Family::IrrationalHalfplane => (VI, "walks of every length to every nonzero point"),
        Family::Middle => (VII, "no line, yet finitely many walks"),
        Family::Ix => (IX, "unbounded lengths without a closed walk"),
        Family::Nesw => (X, "origin is inside the hull"),
        Family::Nes => (X, "origin is on the hull boundary"),
    };
    RegistryEntry {
        family,
        combination,
        note,
    }
}
