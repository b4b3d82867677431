//! Exact planar geometry on integer points.
//!
//! Every predicate here is decided with integer arithmetic: products are taken in
//! `i128` and fall back to big integers when even that overflows.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// A point of the integer lattice. Ordered lexicographically by `(x, y)`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct LatticePoint {
    pub x: i64,
    pub y: i64,
}

pub const ORIGIN: LatticePoint = LatticePoint { x: 0, y: 0 };

impl LatticePoint {
    pub const fn new(x: i64, y: i64) -> Self {
        LatticePoint { x, y }
    }

    pub fn is_origin(self) -> bool {
        self.x == 0 && self.y == 0
    }

    pub fn checked_add(self, other: Self) -> Option<Self> {
        Some(LatticePoint::new(
            self.x.checked_add(other.x)?,
            self.y.checked_add(other.y)?,
        ))
    }

    pub fn checked_sub(self, other: Self) -> Option<Self> {
        Some(LatticePoint::new(
            self.x.checked_sub(other.x)?,
            self.y.checked_sub(other.y)?,
        ))
    }

    pub fn checked_scale(self, k: i64) -> Option<Self> {
        Some(LatticePoint::new(self.x.checked_mul(k)?, self.y.checked_mul(k)?))
    }

    /// Quarter turn counter-clockwise.
    pub fn rot_ccw(self) -> Self {
        LatticePoint::new(-self.y, self.x)
    }

    /// Quarter turn clockwise.
    pub fn rot_cw(self) -> Self {
        LatticePoint::new(self.y, -self.x)
    }

    pub fn content(self) -> i64 {
        self.x.gcd(&self.y)
    }

    pub fn norm_sq(self) -> i128 {
        let (x, y) = (self.x as i128, self.y as i128);
        x * x + y * y
    }

    pub fn to_big(self) -> (BigInt, BigInt) {
        (BigInt::from(self.x), BigInt::from(self.y))
    }
}

impl fmt::Debug for LatticePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.x, self.y)
    }
}

impl fmt::Display for LatticePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.x, self.y)
    }
}

impl Add for LatticePoint {
    type Output = LatticePoint;
    fn add(self, o: Self) -> Self {
        self.checked_add(o).expect("lattice coordinate overflow")
    }
}

impl Sub for LatticePoint {
    type Output = LatticePoint;
    fn sub(self, o: Self) -> Self {
        self.checked_sub(o).expect("lattice coordinate overflow")
    }
}

impl Neg for LatticePoint {
    type Output = LatticePoint;
    fn neg(self) -> Self {
        LatticePoint::new(-self.x, -self.y)
    }
}

impl Mul<i64> for LatticePoint {
    type Output = LatticePoint;
    fn mul(self, k: i64) -> Self {
        self.checked_scale(k).expect("lattice coordinate overflow")
    }
}

impl Serialize for LatticePoint {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        [self.x, self.y].serialize(s)
    }
}

impl<'de> Deserialize<'de> for LatticePoint {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let [x, y] = <[i64; 2]>::deserialize(d)?;
        Ok(LatticePoint::new(x, y))
    }
}

impl From<(i64, i64)> for LatticePoint {
    fn from((x, y): (i64, i64)) -> Self {
        LatticePoint::new(x, y)
    }
}

/// Sign of `p*s - q*r`.
fn det_sign(p: i128, q: i128, r: i128, s: i128) -> Ordering {
    match (p.checked_mul(s), q.checked_mul(r)) {
        (Some(a), Some(b)) => a.cmp(&b),
        _ => {
            let a = BigInt::from(p) * BigInt::from(s);
            let b = BigInt::from(q) * BigInt::from(r);
            a.cmp(&b)
        }
    }
}

/// Sign of the cross product `a x b`. `Greater` means `b` is counter-clockwise of `a`.
pub fn cross_sign(a: LatticePoint, b: LatticePoint) -> Ordering {
    det_sign(a.x as i128, a.y as i128, b.x as i128, b.y as i128)
}

/// Orientation of the triple `(o, a, b)`.
pub fn orient(o: LatticePoint, a: LatticePoint, b: LatticePoint) -> Ordering {
    let ax = a.x as i128 - o.x as i128;
    let ay = a.y as i128 - o.y as i128;
    let bx = b.x as i128 - o.x as i128;
    let by = b.y as i128 - o.y as i128;
    det_sign(ax, ay, bx, by)
}

pub fn cross_big(a: LatticePoint, b: LatticePoint) -> BigInt {
    BigInt::from(a.x as i128 * b.y as i128) - BigInt::from(a.y as i128 * b.x as i128)
}

/// Exact dot product.
pub fn dot(u: LatticePoint, p: LatticePoint) -> i128 {
    u.x as i128 * p.x as i128 + u.y as i128 * p.y as i128
}

/// Sign of the dot product, never overflowing.
pub fn dot_sign(u: LatticePoint, p: LatticePoint) -> Ordering {
    let a = u.x as i128 * p.x as i128;
    let b = u.y as i128 * p.y as i128;
    match a.checked_add(b) {
        Some(s) => s.cmp(&0),
        None => (BigInt::from(a) + BigInt::from(b)).cmp(&BigInt::zero()),
    }
}

fn half(p: LatticePoint) -> u8 {
    if p.y > 0 || (p.y == 0 && p.x > 0) {
        0
    } else {
        1
    }
}

/// Total order on nonzero vectors by polar angle in `[0, 2pi)`.
pub fn angle_cmp(a: LatticePoint, b: LatticePoint) -> Ordering {
    half(a)
        .cmp(&half(b))
        .then_with(|| cross_sign(b, a))
}

/// A primitive integer direction `(a, b)` with `gcd(a, b) = 1`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "[i64; 2]", into = "[i64; 2]")]
pub struct Direction {
    a: i64,
    b: i64,
}

impl Direction {
    pub fn new(a: i64, b: i64) -> Result<Self> {
        if (a == 0 && b == 0) || a.gcd(&b) != 1 {
            return Err(Error::NonPrimitiveDirection(a, b));
        }
        Ok(Direction { a, b })
    }

    /// Reduce any nonzero vector to its primitive direction.
    pub fn primitive(v: LatticePoint) -> Result<Self> {
        if v.is_origin() {
            return Err(Error::InvalidInput("zero vector has no direction".into()));
        }
        let g = v.content();
        Direction::new(v.x / g, v.y / g)
    }

    pub fn a(self) -> i64 {
        self.a
    }

    pub fn b(self) -> i64 {
        self.b
    }

    pub fn vector(self) -> LatticePoint {
        LatticePoint::new(self.a, self.b)
    }

    pub fn apply(self, p: LatticePoint) -> i128 {
        dot(self.vector(), p)
    }

    pub fn sign_at(self, p: LatticePoint) -> Ordering {
        dot_sign(self.vector(), p)
    }
}

impl TryFrom<[i64; 2]> for Direction {
    type Error = Error;
    fn try_from([a, b]: [i64; 2]) -> Result<Self> {
        Direction::new(a, b)
    }
}

impl From<Direction> for [i64; 2] {
    fn from(d: Direction) -> Self {
        [d.a, d.b]
    }
}

impl fmt::Debug for Direction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.a, self.b)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum HullKind {
    Empty,
    Point,
    Segment,
    Polygon,
}

/// Convex hull, vertices in counter-clockwise order with collinear points dropped.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HullResult {
    pub kind: HullKind,
    pub vertices: Vec<LatticePoint>,
}

/// Andrew's monotone chain with exact orientation tests.
pub fn convex_hull(points: &[LatticePoint]) -> HullResult {
    let mut pts: Vec<LatticePoint> = points.to_vec();
    pts.sort();
    pts.dedup();
    match pts.len() {
        0 => {
            return HullResult {
                kind: HullKind::Empty,
                vertices: vec![],
            }
        }
        1 => {
            return HullResult {
                kind: HullKind::Point,
                vertices: pts,
            }
        }
        _ => {}
    }
    let mut lower: Vec<LatticePoint> = Vec::new();
    for &p in &pts {
        while lower.len() >= 2
            && orient(lower[lower.len() - 2], lower[lower.len() - 1], p) != Ordering::Greater
        {
            lower.pop();
        }
        lower.push(p);
    }
    let mut upper: Vec<LatticePoint> = Vec::new();
    for &p in pts.iter().rev() {
        while upper.len() >= 2
            && orient(upper[upper.len() - 2], upper[upper.len() - 1], p) != Ordering::Greater
        {
            upper.pop();
        }
        upper.push(p);
    }
    lower.pop();
    upper.pop();
    lower.extend(upper);
    if lower.len() <= 2 {
        // all points collinear: keep the two extremes
        let first = pts[0];
        let last = pts[pts.len() - 1];
        return HullResult {
            kind: HullKind::Segment,
            vertices: vec![first, last],
        };
    }
    HullResult {
        kind: HullKind::Polygon,
        vertices: lower,
    }
}

fn on_segment(a: LatticePoint, b: LatticePoint, p: LatticePoint) -> bool {
    orient(a, b, p) == Ordering::Equal
        && p.x >= a.x.min(b.x)
        && p.x <= a.x.max(b.x)
        && p.y >= a.y.min(b.y)
        && p.y <= a.y.max(b.y)
}

/// Whether `p` lies on the boundary of the hull (the whole hull for degenerate hulls).
pub fn on_hull_boundary(hull: &HullResult, p: LatticePoint) -> bool {
    match hull.kind {
        HullKind::Empty => false,
        HullKind::Point => hull.vertices[0] == p,
        HullKind::Segment => on_segment(hull.vertices[0], hull.vertices[1], p),
        HullKind::Polygon => {
            let n = hull.vertices.len();
            (0..n).any(|i| on_segment(hull.vertices[i], hull.vertices[(i + 1) % n], p))
        }
    }
}

/// Whether `p` is in the closed hull.
pub fn in_hull(hull: &HullResult, p: LatticePoint) -> bool {
    match hull.kind {
        HullKind::Polygon => {
            let n = hull.vertices.len();
            (0..n).all(|i| {
                orient(hull.vertices[i], hull.vertices[(i + 1) % n], p) != Ordering::Less
            })
        }
        _ => on_hull_boundary(hull, p),
    }
}

/// One term `multiplicity * step` of an origin certificate.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertTerm {
    pub step: LatticePoint,
    #[serde(with = "crate::serde_big::biguint")]
    pub multiplicity: BigUint,
}

/// Positive integer relation `sum c_i * A_i = O` among steps.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OriginCertificate {
    pub terms: Vec<CertTerm>,
}

impl OriginCertificate {
    pub fn verify(&self) -> bool {
        if self.terms.is_empty() || self.terms.iter().any(|t| t.multiplicity.is_zero()) {
            return false;
        }
        let mut sx = BigInt::zero();
        let mut sy = BigInt::zero();
        for CertTerm { step: p, multiplicity } in &self.terms {
            let c = BigInt::from(multiplicity.clone());
            sx += &c * p.x;
            sy += &c * p.y;
        }
        sx.is_zero() && sy.is_zero()
    }

    pub fn total_length(&self) -> BigUint {
        self.terms.iter().map(|t| t.multiplicity.clone()).sum()
    }

    /// Expand into a closed step sequence if it has at most `max_len` letters.
    pub fn expand(&self, max_len: usize) -> Option<Vec<LatticePoint>> {
        if self.total_length() > BigUint::from(max_len) {
            return None;
        }
        let mut out = Vec::new();
        for t in &self.terms {
            let n: usize = (&t.multiplicity).try_into().ok()?;
            out.extend(std::iter::repeat_n(t.step, n));
        }
        Some(out)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OriginHull {
    pub contained: bool,
    pub certificate: Option<OriginCertificate>,
}

fn big_abs(v: BigInt) -> BigUint {
    v.abs().to_biguint().expect("absolute value is nonnegative")
}

fn reduce(terms: Vec<(LatticePoint, BigUint)>) -> OriginCertificate {
    let g = terms.iter().fold(BigUint::zero(), |g, (_, c)| g.gcd(c));
    let terms = terms
        .into_iter()
        .map(|(step, c)| CertTerm {
            step,
            multiplicity: if g.is_zero() { c } else { c / &g },
        })
        .collect();
    OriginCertificate { terms }
}

/// Decide `O in Conv(X)` and, when true, produce a positive integer relation.
///
/// A relation of two opposite steps is tried first, then a triangle whose interior
/// holds the origin, with weights from Cramer's rule on the barycentric system.
pub fn origin_in_hull(steps: &[LatticePoint]) -> OriginHull {
    let mut pts: Vec<LatticePoint> = steps.iter().copied().filter(|p| !p.is_origin()).collect();
    pts.sort();
    pts.dedup();
    if steps.iter().any(|p| p.is_origin()) {
        return OriginHull {
            contained: true,
            certificate: None,
        };
    }
    if check_lc(&pts).is_some() || pts.is_empty() {
        return OriginHull {
            contained: false,
            certificate: None,
        };
    }
    for i in 0..pts.len() {
        for j in i + 1..pts.len() {
            let (a, b) = (pts[i], pts[j]);
            if cross_sign(a, b) == Ordering::Equal && dot_sign(a, b) == Ordering::Less {
                let ga = BigUint::from(a.content().unsigned_abs());
                let gb = BigUint::from(b.content().unsigned_abs());
                let cert = reduce(vec![(a, gb), (b, ga)]);
                return OriginHull {
                    contained: true,
                    certificate: Some(cert),
                };
            }
        }
    }
    for i in 0..pts.len() {
        for j in i + 1..pts.len() {
            for k in j + 1..pts.len() {
                let (a, b, c) = (pts[i], pts[j], pts[k]);
                let wa = cross_big(b, c);
                let wb = cross_big(c, a);
                let wc = cross_big(a, b);
                let s = wa.sign();
                if s != num_bigint::Sign::NoSign && wb.sign() == s && wc.sign() == s {
                    let cert = reduce(vec![(a, big_abs(wa)), (b, big_abs(wb)), (c, big_abs(wc))]);
                    return OriginHull {
                        contained: true,
                        certificate: Some(cert),
                    };
                }
            }
        }
    }
    unreachable!("origin enclosed by the angular test but no certificate found")
}

/// Whether `O` lies in the relative interior of `Conv(X)`.
pub fn origin_in_relative_interior(steps: &[LatticePoint]) -> bool {
    let hull = convex_hull(steps);
    match hull.kind {
        HullKind::Empty => false,
        HullKind::Point => hull.vertices[0].is_origin(),
        HullKind::Segment => {
            let (a, b) = (hull.vertices[0], hull.vertices[1]);
            orient(a, b, ORIGIN) == Ordering::Equal
                && dot_sign(a, b) == Ordering::Less
        }
        HullKind::Polygon => {
            let n = hull.vertices.len();
            (0..n).all(|i| {
                orient(hull.vertices[i], hull.vertices[(i + 1) % n], ORIGIN) == Ordering::Greater
            })
        }
    }
}

/// Sorted distinct primitive directions of the nonzero points.
fn directions(steps: &[LatticePoint]) -> Vec<LatticePoint> {
    let mut dirs: Vec<LatticePoint> = steps
        .iter()
        .filter(|p| !p.is_origin())
        .map(|p| {
            let g = p.content();
            LatticePoint::new(p.x / g, p.y / g)
        })
        .collect();
    dirs.sort_by(|a, b| angle_cmp(*a, *b));
    dirs.dedup();
    dirs
}

/// The extreme directions `(first, last)` of an angular sector of opening `< pi`
/// holding every step, if one exists.
fn open_sector(steps: &[LatticePoint]) -> Option<(LatticePoint, LatticePoint)> {
    if steps.iter().any(|p| p.is_origin()) {
        return None;
    }
    let dirs = directions(steps);
    match dirs.len() {
        0 => None,
        1 => Some((dirs[0], dirs[0])),
        n => {
            for i in 0..n {
                let cur = dirs[i];
                let next = dirs[(i + 1) % n];
                // gap from cur to next (counter-clockwise) exceeds pi
                if cross_sign(cur, next) == Ordering::Less {
                    return Some((next, cur));
                }
            }
            None
        }
    }
}

/// Witness of one of the geometric conditions on a step set.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "condition", rename_all = "snake_case")]
pub enum ConditionWitness {
    /// `normal . A > 0` for every step.
    Lc { normal: Direction },
    /// `normal . A >= 0` for every step.
    Wlc { normal: Direction },
    /// `normal . A >= offset + 1` for every step, with `offset >= 1`.
    Slc { normal: LatticePoint, offset: i64 },
    /// every step lies in the open cone `first . x > 0, second . x > 0`.
    Cc { first: Direction, second: Direction },
}

impl ConditionWitness {
    pub fn replay(&self, steps: &[LatticePoint]) -> bool {
        match self {
            ConditionWitness::Lc { normal } => {
                steps.iter().all(|&p| normal.sign_at(p) == Ordering::Greater)
            }
            ConditionWitness::Wlc { normal } => {
                steps.iter().all(|&p| normal.sign_at(p) != Ordering::Less)
            }
            ConditionWitness::Slc { normal, offset } => {
                *offset >= 1
                    && !normal.is_origin()
                    && steps.iter().all(|&p| dot(*normal, p) > *offset as i128)
            }
            ConditionWitness::Cc { first, second } => {
                cross_sign(first.vector(), second.vector()) != Ordering::Equal
                    && steps.iter().all(|&p| {
                        first.sign_at(p) == Ordering::Greater
                            && second.sign_at(p) == Ordering::Greater
                    })
            }
        }
    }
}

const AXES: [LatticePoint; 4] = [
    LatticePoint::new(1, 0),
    LatticePoint::new(0, 1),
    LatticePoint::new(-1, 0),
    LatticePoint::new(0, -1),
];

/// Line condition: an integer normal `u` with `u . A >= 1` for every step.
///
/// Coordinate axes are preferred when they work; otherwise the normal is built from the
/// two extreme directions of the sector holding the steps.
pub fn check_lc(steps: &[LatticePoint]) -> Option<Direction> {
    let (first, last) = open_sector(steps)?;
    for axis in AXES {
        if steps.iter().all(|&p| dot_sign(axis, p) == Ordering::Greater) {
            return Some(Direction::primitive(axis).unwrap());
        }
    }
    let u = if first == last {
        first
    } else {
        first.rot_ccw() + last.rot_cw()
    };
    let d = Direction::primitive(u).ok()?;
    debug_assert!(steps.iter().all(|&p| d.sign_at(p) == Ordering::Greater));
    Some(d)
}

pub fn lc_witness(steps: &[LatticePoint]) -> Option<ConditionWitness> {
    check_lc(steps).map(|normal| ConditionWitness::Lc { normal })
}

/// Weak line condition: a closed half-plane through `O` holding every step.
pub fn check_wlc(steps: &[LatticePoint]) -> Option<ConditionWitness> {
    let hull = convex_hull(steps);
    let mut candidates: Vec<LatticePoint> = AXES.to_vec();
    for p in steps.iter().filter(|p| !p.is_origin()) {
        candidates.push(p.rot_ccw());
        candidates.push(p.rot_cw());
    }
    if hull.kind == HullKind::Polygon {
        let n = hull.vertices.len();
        for i in 0..n {
            let e = hull.vertices[(i + 1) % n] - hull.vertices[i];
            candidates.push(e.rot_ccw());
        }
    }
    for c in candidates {
        let Ok(normal) = Direction::primitive(c) else {
            continue;
        };
        if steps.iter().all(|&p| normal.sign_at(p) != Ordering::Less) {
            return Some(ConditionWitness::Wlc { normal });
        }
    }
    None
}

/// Strict line condition. For a finite set it follows from the line condition by
/// doubling the normal.
pub fn check_slc(steps: &[LatticePoint]) -> Option<ConditionWitness> {
    let u = check_lc(steps)?;
    Some(ConditionWitness::Slc {
        normal: u.vector() * 2,
        offset: 1,
    })
}

/// Cone condition: the steps lie in an open cone bounded by the line-condition line and
/// a second line through `O` strictly between that line and the step closest to it.
pub fn check_cc(steps: &[LatticePoint]) -> Option<ConditionWitness> {
    let first = check_lc(steps)?;
    let along = first.vector().rot_cw();
    let nearest = steps
        .iter()
        .copied()
        .min_by(|&p, &q| cross_sign(q, p))?;
    let second = Direction::primitive((along + nearest).rot_ccw()).ok()?;
    let w = ConditionWitness::Cc { first, second };
    debug_assert!(w.replay(steps));
    Some(w)
}

/// The family of parallel lines `u . x = k` carrying lattice points.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LatticeLines {
    pub normal: Direction,
    /// `s, t` with `a*s + b*t = 1`.
    bezout: (i64, i64),
}

impl LatticeLines {
    /// Squared distance between consecutive lines.
    pub fn spacing_squared(&self) -> BigRational {
        let a = BigInt::from(self.normal.a());
        let b = BigInt::from(self.normal.b());
        BigRational::new(BigInt::one(), &a * &a + &b * &b)
    }

    /// A lattice point on the line `u . x = k`.
    pub fn point_on_level(&self, k: i64) -> Option<LatticePoint> {
        LatticePoint::new(self.bezout.0, self.bezout.1).checked_scale(k)
    }
}

pub fn lines_with_lattice_points(normal: Direction) -> LatticeLines {
    let e = normal.a().extended_gcd(&normal.b());
    debug_assert_eq!(e.gcd.abs(), 1);
    let (s, t) = if e.gcd < 0 { (-e.x, -e.y) } else { (e.x, e.y) };
    LatticeLines {
        normal,
        bezout: (s, t),
    }
}

/// Inclusive axis-parallel box of lattice points.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Window {
    pub x_min: i64,
    pub x_max: i64,
    pub y_min: i64,
    pub y_max: i64,
}

impl Window {
    pub fn new(x_min: i64, x_max: i64, y_min: i64, y_max: i64) -> Result<Self> {
        if x_min > x_max || y_min > y_max {
            return Err(Error::InvalidInput("empty window".into()));
        }
        Ok(Window {
            x_min,
            x_max,
            y_min,
            y_max,
        })
    }

    /// `[0, n] x [0, n]`.
    pub fn square(n: i64) -> Self {
        Window {
            x_min: 0,
            x_max: n,
            y_min: 0,
            y_max: n,
        }
    }

    pub fn contains(&self, p: LatticePoint) -> bool {
        (self.x_min..=self.x_max).contains(&p.x) && (self.y_min..=self.y_max).contains(&p.y)
    }

    pub fn inflate(&self, k: i64) -> Self {
        Window {
            x_min: self.x_min.saturating_sub(k),
            x_max: self.x_max.saturating_add(k),
            y_min: self.y_min.saturating_sub(k),
            y_max: self.y_max.saturating_add(k),
        }
    }

    pub fn corners(&self) -> [LatticePoint; 4] {
        [
            LatticePoint::new(self.x_min, self.y_min),
            LatticePoint::new(self.x_min, self.y_max),
            LatticePoint::new(self.x_max, self.y_min),
            LatticePoint::new(self.x_max, self.y_max),
        ]
    }

    /// Points in lexicographic order.
    pub fn points(&self) -> impl Iterator<Item = LatticePoint> + '_ {
        (self.x_min..=self.x_max)
            .flat_map(move |x| (self.y_min..=self.y_max).map(move |y| LatticePoint::new(x, y)))
    }

    pub fn len(&self) -> u128 {
        (self.x_max - self.x_min + 1) as u128 * (self.y_max - self.y_min + 1) as u128
    }

    pub fn is_empty(&self) -> bool {
        false
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pts(v: &[(i64, i64)]) -> Vec<LatticePoint> {
        v.iter().map(|&p| p.into()).collect()
    }

    #[test]
    fn hull_of_square_with_interior() {
        let h = convex_hull(&pts(&[(0, 0), (2, 0), (2, 2), (0, 2), (1, 1), (1, 0)]));
        assert_eq!(h.kind, HullKind::Polygon);
        assert_eq!(h.vertices, pts(&[(0, 0), (2, 0), (2, 2), (0, 2)]));
        assert!(on_hull_boundary(&h, LatticePoint::new(1, 0)));
        assert!(!on_hull_boundary(&h, LatticePoint::new(1, 1)));
    }

    #[test]
    fn collinear_hull_is_segment() {
        let h = convex_hull(&pts(&[(3, 0), (-6, 0), (1, 0)]));
        assert_eq!(h.kind, HullKind::Segment);
        assert_eq!(h.vertices, pts(&[(-6, 0), (3, 0)]));
    }

    #[test]
    fn lc_prefers_axes() {
        assert_eq!(check_lc(&pts(&[(1, 2), (3, 1)])).unwrap().vector(), LatticePoint::new(1, 0));
        assert!(check_lc(&pts(&[(1, 0), (-1, 0)])).is_none());
    }

    #[test]
    fn lc_non_axis_normal() {
        let s = pts(&[(1, 2), (-1, 3), (-2, 5)]);
        let u = check_lc(&s).unwrap();
        assert!(s.iter().all(|&p| u.apply(p) >= 1));
    }

    #[test]
    fn huge_coordinates_do_not_overflow() {
        let a = LatticePoint::new(i64::MAX, i64::MAX - 1);
        let b = LatticePoint::new(i64::MAX - 1, i64::MAX);
        assert_eq!(cross_sign(a, b), Ordering::Greater);
        assert_eq!(orient(LatticePoint::new(i64::MIN, i64::MIN), a, b), Ordering::Greater);
    }

    #[test]
    fn bezout_point_on_level() {
        let lines = lines_with_lattice_points(Direction::new(3, 5).unwrap());
        let p = lines.point_on_level(7).unwrap();
        assert_eq!(3 * p.x + 5 * p.y, 7);
        assert_eq!(lines.spacing_squared(), BigRational::new(1.into(), 34.into()));
    }
}
