//! Exact arithmetic in `Q(sqrt d)` and the dense-monoid construction built on it.

use std::cmp::Ordering;
use std::collections::HashSet;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geom::LatticePoint;
use crate::walk::Walk;

/// Check that `d` is a squarefree integer greater than one, so `sqrt d` is irrational.
pub fn check_radicand(d: u64) -> Result<()> {
    if d < 2 {
        return Err(Error::InvalidInput(format!("radicand {d} must be at least 2")));
    }
    let mut f = 2u64;
    while f * f <= d {
        if d.is_multiple_of(f * f) {
            return Err(Error::InvalidInput(format!("radicand {d} is not squarefree")));
        }
        f += 1;
    }
    Ok(())
}

fn rat(n: impl Into<BigInt>) -> BigRational {
    BigRational::from_integer(n.into())
}

/// `a + b*sqrt(d)` with rational `a, b`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct QuadExt {
    pub a: BigRational,
    pub b: BigRational,
    pub d: u64,
}

impl QuadExt {
    pub fn new(a: BigRational, b: BigRational, d: u64) -> Self {
        QuadExt { a, b, d }
    }

    pub fn from_int(n: impl Into<BigInt>, d: u64) -> Self {
        QuadExt::new(rat(n), BigRational::zero(), d)
    }

    pub fn from_rational(r: BigRational, d: u64) -> Self {
        QuadExt::new(r, BigRational::zero(), d)
    }

    /// `x + y*sqrt(d)` for integers.
    pub fn from_ints(x: impl Into<BigInt>, y: impl Into<BigInt>, d: u64) -> Self {
        QuadExt::new(rat(x), rat(y), d)
    }

    /// `sqrt(d)` itself.
    pub fn root(d: u64) -> Self {
        QuadExt::new(BigRational::zero(), BigRational::one(), d)
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn conjugate(&self) -> Self {
        QuadExt::new(self.a.clone(), -self.b.clone(), self.d)
    }

    /// Field norm `a^2 - d b^2`.
    pub fn norm(&self) -> BigRational {
        &self.a * &self.a - &self.b * &self.b * rat(self.d)
    }

    pub fn sign(&self) -> Ordering {
        let sa = self.a.cmp(&BigRational::zero());
        let sb = self.b.cmp(&BigRational::zero());
        if sb == Ordering::Equal {
            return sa;
        }
        if sa == Ordering::Equal || sa == sb {
            return sb;
        }
        // opposite signs: compare a^2 with d b^2
        let lhs = &self.a * &self.a;
        let rhs = &self.b * &self.b * rat(self.d);
        if lhs > rhs {
            sa
        } else {
            sb
        }
    }

    pub fn scale(&self, r: &BigRational) -> Self {
        QuadExt::new(&self.a * r, &self.b * r, self.d)
    }

    pub fn floor(&self) -> BigInt {
        let p = self.b.numer();
        let q = self.b.denom();
        let m = BigInt::from((p * p * BigInt::from(self.d)).magnitude().sqrt());
        let root_part = if p.sign() == Sign::Minus {
            (-m).div_floor(q) - 1
        } else {
            m.div_floor(q)
        };
        let mut n = self.a.floor().to_integer() + root_part;
        while (self - &QuadExt::from_int(n.clone(), self.d)).sign() == Ordering::Less {
            n -= 1;
        }
        while (self - &QuadExt::from_int(&n + 1, self.d)).sign() != Ordering::Less {
            n += 1;
        }
        n
    }

    /// `x - floor(x)`, in `[0, 1)`.
    pub fn fract(&self) -> Self {
        self - &QuadExt::from_int(self.floor(), self.d)
    }

    /// Approximation through an exact floor at 2^-60 resolution, so cancellation in
    /// huge coefficients does not leak into the result.
    pub fn to_f64(&self) -> f64 {
        let scale = BigRational::from_integer(BigInt::one() << 60u32);
        let n = self.scale(&scale).floor();
        n.to_f64().unwrap_or(f64::NAN) / 2f64.powi(60)
    }

    /// Exact comparison that reports elements of different fields as an error.
    pub fn try_cmp(&self, other: &Self) -> Result<Ordering> {
        if self.d != other.d {
            return Err(Error::InvalidInput(format!(
                "cannot compare elements of Q(sqrt {}) and Q(sqrt {})",
                self.d, other.d
            )));
        }
        Ok(self.cmp(other))
    }

    fn same_field(&self, other: &Self) {
        assert_eq!(self.d, other.d, "mixing quadratic fields");
    }
}

impl PartialOrd for QuadExt {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for QuadExt {
    fn cmp(&self, other: &Self) -> Ordering {
        (self - other).sign()
    }
}

impl fmt::Display for QuadExt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} + {}*sqrt({})", self.a, self.b, self.d)
    }
}

impl fmt::Debug for QuadExt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self} (~{:.6})", self.to_f64())
    }
}

impl<'a> Add<&'a QuadExt> for &'a QuadExt {
    type Output = QuadExt;
    fn add(self, o: &QuadExt) -> QuadExt {
        self.same_field(o);
        QuadExt::new(&self.a + &o.a, &self.b + &o.b, self.d)
    }
}

impl<'a> Sub<&'a QuadExt> for &'a QuadExt {
    type Output = QuadExt;
    fn sub(self, o: &QuadExt) -> QuadExt {
        self.same_field(o);
        QuadExt::new(&self.a - &o.a, &self.b - &o.b, self.d)
    }
}

impl<'a> Mul<&'a QuadExt> for &'a QuadExt {
    type Output = QuadExt;
    fn mul(self, o: &QuadExt) -> QuadExt {
        self.same_field(o);
        let d = rat(self.d);
        QuadExt::new(
            &self.a * &o.a + &self.b * &o.b * d,
            &self.a * &o.b + &self.b * &o.a,
            self.d,
        )
    }
}

impl<'a> Div<&'a QuadExt> for &'a QuadExt {
    type Output = QuadExt;
    fn div(self, o: &QuadExt) -> QuadExt {
        let n = o.norm();
        assert!(!n.is_zero(), "division by zero in Q(sqrt d)");
        (self * &o.conjugate()).scale(&n.recip())
    }
}

impl Neg for &QuadExt {
    type Output = QuadExt;
    fn neg(self) -> QuadExt {
        QuadExt::new(-self.a.clone(), -self.b.clone(), self.d)
    }
}

macro_rules! forward_owned {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr for QuadExt {
            type Output = QuadExt;
            fn $m(self, o: QuadExt) -> QuadExt { (&self).$m(&o) }
        }
    )*};
}
forward_owned!(Add add, Sub sub, Mul mul, Div div);

impl Neg for QuadExt {
    type Output = QuadExt;
    fn neg(self) -> QuadExt {
        -&self
    }
}

/// A nonnegative element `x + y*sqrt(d)` of the monoid of nonnegative integer
/// combinations of `1` and `sqrt d`. The surd coefficient is its `phi` value.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct MElement {
    #[serde(with = "crate::serde_big::bigint")]
    pub int_part: BigInt,
    #[serde(with = "crate::serde_big::bigint")]
    pub phi: BigInt,
    pub d: u64,
}

impl MElement {
    pub fn new(int_part: BigInt, phi: BigInt, d: u64) -> Result<Self> {
        let e = MElement { int_part, phi, d };
        if e.value().sign() == Ordering::Less {
            return Err(Error::InvalidInput(format!("{e:?} is negative")));
        }
        Ok(e)
    }

    pub fn integer(n: i64, d: u64) -> Self {
        MElement {
            int_part: BigInt::from(n),
            phi: BigInt::zero(),
            d,
        }
    }

    pub fn value(&self) -> QuadExt {
        QuadExt::from_ints(self.int_part.clone(), self.phi.clone(), self.d)
    }

    /// The lattice point `(x, y)` with `x + y*sqrt d = self`.
    pub fn lattice(&self) -> (BigInt, BigInt) {
        (self.int_part.clone(), self.phi.clone())
    }
}

impl fmt::Debug for MElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} + {}*sqrt({}) (~{:.6})",
            self.int_part,
            self.phi,
            self.d,
            self.value().to_f64()
        )
    }
}


/// Parameters of the approximation step for index `k`:
/// `0 < l*xi - a < 1/k` and the period bound `p`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PkChoice {
    pub k: u64,
    #[serde(with = "crate::serde_big::bigint")]
    pub l: BigInt,
    #[serde(with = "crate::serde_big::bigint")]
    pub a: BigInt,
    #[serde(with = "crate::serde_big::bigint")]
    pub p: BigInt,
}

impl PkChoice {
    /// `l*xi - a`, a small positive element.
    pub fn gap(&self, d: u64) -> QuadExt {
        QuadExt::from_ints(-self.a.clone(), self.l.clone(), d)
    }
}

/// Smallest `l` with `0 < l*xi - a < 1/k`, then the least integer above
/// `l*(1 + 1/(l*xi - a))`, raised above `prev` to keep the sequence increasing.
pub fn find_pk(k: u64, d: u64, prev: Option<&BigInt>) -> Result<PkChoice> {
    check_radicand(d)?;
    if k == 0 {
        return Err(Error::InvalidInput("k must be positive".into()));
    }
    let xi = QuadExt::root(d);
    let kq = rat(k);
    let mut l = BigInt::one();
    loop {
        let lxi = xi.scale(&BigRational::from_integer(l.clone()));
        let a = lxi.floor();
        let gap = &lxi - &QuadExt::from_int(a.clone(), d);
        if (&gap.scale(&kq) - &QuadExt::from_int(1, d)).sign() == Ordering::Less {
            let lq = QuadExt::from_int(l.clone(), d);
            let bound = &lq + &(&lq / &gap);
            let mut p = bound.floor() + 1;
            if let Some(prev) = prev {
                if &p <= prev {
                    p = prev + 1;
                }
            }
            return Ok(PkChoice { k, l, a, p });
        }
        l += 1;
    }
}

/// Result of placing an element near a prescribed real number.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ElementChoice {
    pub element: MElement,
    pub t: BigInt,
}

/// An element in `(alpha, alpha + 1/k)` with `phi` in `[p, p + p_k]`.
pub fn find_element(p: &BigInt, alpha: &QuadExt, k: u64, pk: &PkChoice) -> Result<ElementChoice> {
    let d = alpha.d;
    let xi = QuadExt::root(d);
    let theta = alpha - &xi.scale(&BigRational::from_integer(p.clone()));
    let frac = theta.fract();
    let gap = pk.gap(d);
    let t = (&frac / &gap).floor() + 1;
    let b = theta.floor() - &t * &pk.a;
    let c = &t * &pk.l + p;
    let element = MElement {
        int_part: b,
        phi: c,
        d,
    };
    let v = element.value();
    let upper = alpha + &QuadExt::from_rational(BigRational::new(1.into(), k.into()), d);
    if !(v > *alpha && v < upper) {
        return Err(Error::Postcondition(format!(
            "element {element:?} not in (alpha, alpha + 1/k)"
        )));
    }
    if element.phi < *p || element.phi > p + &pk.p {
        return Err(Error::Postcondition(format!(
            "phi {} outside [p, p + p_k]",
            element.phi
        )));
    }
    if v.sign() == Ordering::Less {
        return Err(Error::InvalidInput("target value is negative".into()));
    }
    Ok(ElementChoice { element, t })
}

/// The inequality behind the element choice: `0 < t*(l*xi - a) - frac(alpha - p*xi) < 1/k`.
pub fn replay_element_bound(p: &BigInt, alpha: &QuadExt, k: u64, pk: &PkChoice, t: &BigInt) -> bool {
    let d = alpha.d;
    let xi = QuadExt::root(d);
    let frac = (alpha - &xi.scale(&BigRational::from_integer(p.clone()))).fract();
    let lhs = &pk.gap(d).scale(&BigRational::from_integer(t.clone())) - &frac;
    let bound = QuadExt::from_rational(BigRational::new(1.into(), k.into()), d);
    lhs.sign() == Ordering::Greater && lhs < bound
}

/// Membership in the box `B(l)`: `|phi| <= l - 1` and value in `[0, l)`.
pub fn b_set_membership(x: &MElement, l: u64) -> bool {
    let l_int = BigInt::from(l);
    x.phi.abs() < l_int && x.value() < QuadExt::from_int(l_int, x.d) && x.value().sign() != Ordering::Less
}

pub fn n_l(l: u64) -> BigInt {
    BigInt::from(l) + BigInt::from(l).pow(3)
}

/// `R_k = (2k + p_k + 1) * (1 + sum_{n=0}^{n_k} n_k (3k)^n)`.
pub fn radius(k: u64, p_k: &BigInt) -> BigInt {
    let nk = n_l(k);
    let nk_usize = nk.to_usize().expect("n_k fits in usize");
    let base = BigInt::from(3 * k);
    let mut sum = BigInt::zero();
    let mut pow = BigInt::one();
    for _ in 0..=nk_usize {
        sum += &nk * &pow;
        pow *= &base;
    }
    (BigInt::from(2 * k + 1) + p_k) * (BigInt::one() + sum)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct AppendixConfig {
    pub d: u64,
    /// Number of `alpha` terms requested.
    pub alphas: u64,
    /// Number of `(beta, gamma)` pairs requested.
    pub pairs: u64,
    /// Maximum work units for the inductive pair step.
    pub budget: u64,
}

impl Default for AppendixConfig {
    fn default() -> Self {
        AppendixConfig {
            d: 2,
            alphas: 3,
            pairs: 1,
            budget: 5_000_000,
        }
    }
}

/// Data recorded while building one `(beta_k, gamma_k)` pair for `k >= 2`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairStep {
    pub k: u64,
    /// the auxiliary index `K > k`
    pub big_k: u64,
    #[serde(with = "crate::serde_big::bigint")]
    pub p: BigInt,
    /// number of distinct `phi` values of sums that were enumerated
    pub phi_values: usize,
    pub work: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AppendixSequences {
    pub d: u64,
    pub pk: Vec<PkChoice>,
    #[serde(with = "bigint_vec_string")]
    pub radii: Vec<BigInt>,
    pub alphas: Vec<MElement>,
    pub betas: Vec<MElement>,
    pub gammas: Vec<MElement>,
    pub pair_steps: Vec<PairStep>,
}

mod bigint_vec_string {
    use num_bigint::BigInt;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    pub fn serialize<S: Serializer>(v: &[BigInt], s: S) -> Result<S::Ok, S::Error> {
        v.iter().map(|x| x.to_string()).collect::<Vec<_>>().serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<BigInt>, D::Error> {
        Vec::<String>::deserialize(d)?
            .iter()
            .map(|s| s.parse().map_err(serde::de::Error::custom))
            .collect()
    }
}

impl AppendixSequences {
    fn new(d: u64) -> Self {
        AppendixSequences {
            d,
            pk: vec![],
            radii: vec![],
            alphas: vec![],
            betas: vec![],
            gammas: vec![],
            pair_steps: vec![],
        }
    }

    pub fn p_k(&self, k: u64) -> &PkChoice {
        &self.pk[(k - 1) as usize]
    }

    pub fn r_k(&self, k: u64) -> &BigInt {
        &self.radii[(k - 1) as usize]
    }

    /// Extend `p_k`, `R_k` and `alpha_k` up to index `k`.
    fn extend_alphas(&mut self, k: u64) -> Result<()> {
        while (self.alphas.len() as u64) < k {
            let i = self.alphas.len() as u64 + 1;
            let choice = find_pk(i, self.d, self.pk.last().map(|c| &c.p))?;
            let r = radius(i, &choice.p);
            let p = BigInt::from(i) * (BigInt::one() + &r) + 1;
            let target = QuadExt::from_rational(BigRational::new(1.into(), i.into()), self.d);
            let alpha = find_element(&p, &target, i, &choice)?.element;
            self.pk.push(choice);
            self.radii.push(r);
            self.alphas.push(alpha);
        }
        Ok(())
    }

    /// All distinct elements of the truncated generating set.
    pub fn sigma(&self) -> Vec<MElement> {
        let mut out: Vec<MElement> = Vec::new();
        for e in self.alphas.iter().chain(&self.betas).chain(&self.gammas) {
            if !out.contains(e) {
                out.push(e.clone());
            }
        }
        out
    }
}

fn binomial(n: u64, k: u64) -> BigUint {
    let mut r = BigUint::one();
    for i in 0..k {
        r = r * BigUint::from(n - i) / BigUint::from(i + 1);
    }
    r
}

/// Build `alpha_1..`, `beta_1..`, `gamma_1..` for the requested counts.
///
/// `beta_1 = gamma_1 = 2`. Later pairs run the inductive construction, which enumerates
/// the `phi` values of bounded sums and therefore carries a work budget.
pub fn build_appendix_sequences(config: &AppendixConfig) -> Result<AppendixSequences> {
    check_radicand(config.d)?;
    let d = config.d;
    let mut seq = AppendixSequences::new(d);
    seq.extend_alphas(config.alphas)?;
    if config.pairs == 0 {
        return Ok(seq);
    }
    seq.betas.push(MElement::integer(2, d));
    seq.gammas.push(MElement::integer(2, d));
    for k in 2..=config.pairs {
        build_pair(&mut seq, k, config.budget)?;
    }
    Ok(seq)
}

fn build_pair(seq: &mut AppendixSequences, k: u64, budget: u64) -> Result<()> {
    let d = seq.d;
    let max_phi = seq
        .betas
        .iter()
        .chain(&seq.gammas)
        .map(|e| e.phi.abs())
        .max()
        .unwrap_or_default();
    let mut big_k = k + 1;
    loop {
        seq.extend_alphas(big_k)?;
        if *seq.r_k(big_k) > max_phi {
            break;
        }
        big_k += 1;
    }
    let n_big = n_l(big_k).to_u64().expect("n_K fits");
    let mut elements: Vec<BigInt> = seq.alphas[..big_k as usize]
        .iter()
        .chain(&seq.betas)
        .chain(&seq.gammas)
        .map(|e| e.phi.clone())
        .collect();
    elements.sort();
    elements.dedup();
    let m = elements.len() as u64;
    let estimate = binomial(n_big + m, m) * BigUint::from(m);
    if estimate > BigUint::from(budget) {
        return Err(Error::budget("pair construction", estimate, budget));
    }

    // phi values of all sums of at most n_K elements
    let mut all: HashSet<BigInt> = HashSet::new();
    let mut layer: HashSet<BigInt> = HashSet::from([BigInt::zero()]);
    all.insert(BigInt::zero());
    let mut work = 0u64;
    for _ in 0..n_big {
        let mut next = HashSet::with_capacity(layer.len() * elements.len());
        for v in &layer {
            for e in &elements {
                next.insert(v + e);
                work += 1;
            }
        }
        all.extend(next.iter().cloned());
        layer = next;
    }

    // the window [p, p + len] must avoid every +-v/t as a real interval
    let p_k = seq.p_k(k).p.clone();
    let len = BigInt::from(2 * big_k) + &p_k;
    let n_t = n_big as usize;
    let cap = BigInt::from((all.len() * n_t * 2 + 1) as u64) * (&len + 1) + 1;
    let mut blocked: Vec<(BigInt, BigInt)> = Vec::new();
    for v in &all {
        for t in 1..=n_t {
            let t = BigInt::from(t);
            for w in [v.clone(), -v.clone()] {
                // p is blocked iff p <= w/t <= p + len
                let hi = w.div_floor(&t);
                let lo = (&w - &t * &len).div_ceil(&t);
                if hi >= BigInt::one() && lo <= cap {
                    blocked.push((lo.max(BigInt::one()), hi));
                }
            }
        }
    }
    blocked.sort();
    let mut p = BigInt::one();
    for (lo, hi) in &blocked {
        if *lo > p {
            break;
        }
        if *hi >= p {
            p = hi + 1;
        }
    }
    let r_big = seq.r_k(big_k).clone();
    if &p + &len >= r_big {
        return Err(Error::Postcondition("no admissible window below R_K".into()));
    }

    let choice = seq.p_k(k).clone();
    let gamma = find_element(&(&p + big_k), &QuadExt::from_int(1, d), k, &choice)?.element;
    let beta = MElement::new(BigInt::from(4) - &gamma.int_part, -gamma.phi.clone(), d)?;

    // every enumerated phi value stays more than K away from +-phi(gamma)
    let g = &gamma.phi;
    for v in &all {
        for t in 1..=n_t {
            let t = BigInt::from(t);
            for w in [v.clone(), -v.clone()] {
                if (g * &t - &w).abs() <= BigInt::from(big_k) * &t {
                    return Err(Error::Postcondition(format!(
                        "phi(gamma_{k}) within K of {w}/{t}"
                    )));
                }
            }
        }
    }
    seq.pair_steps.push(PairStep {
        k,
        big_k,
        p,
        phi_values: all.len(),
        work,
    });
    seq.betas.push(beta);
    seq.gammas.push(gamma);
    Ok(())
}

/// True when no sum of exactly `n` elements of `sigma` (with repetition) lies in `B(l)`.
pub fn sum_set_check(sigma: &[MElement], l: u64, n: u64, budget: u64) -> Result<bool> {
    let mut elems: Vec<MElement> = Vec::new();
    for e in sigma {
        if !elems.contains(e) {
            elems.push(e.clone());
        }
    }
    if elems.is_empty() {
        return Ok(true);
    }
    let d = elems[0].d;
    let limit = QuadExt::from_int(l, d);
    let mut work = 0u64;
    // depth-first over nondecreasing index sequences; partial sums only grow
    #[allow(clippy::too_many_arguments)]
    fn go(
        elems: &[MElement],
        start: usize,
        left: u64,
        int_part: &BigInt,
        phi: &BigInt,
        limit: &QuadExt,
        l: u64,
        work: &mut u64,
        budget: u64,
    ) -> Result<bool> {
        *work += 1;
        if *work > budget {
            return Err(Error::budget("sum_set_check", format!("> {}", budget), budget));
        }
        let d = limit.d;
        let value = QuadExt::from_ints(int_part.clone(), phi.clone(), d);
        if value >= *limit {
            return Ok(true);
        }
        if left == 0 {
            let x = MElement {
                int_part: int_part.clone(),
                phi: phi.clone(),
                d,
            };
            return Ok(!b_set_membership(&x, l));
        }
        for i in start..elems.len() {
            let ni = int_part + &elems[i].int_part;
            let np = phi + &elems[i].phi;
            if !go(elems, i, left - 1, &ni, &np, limit, l, work, budget)? {
                return Ok(false);
            }
        }
        Ok(true)
    }
    go(
        &elems,
        0,
        n,
        &BigInt::zero(),
        &BigInt::zero(),
        &limit,
        l,
        &mut work,
        budget,
    )
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum VStepKind {
    A,
    B,
    C,
}

/// A step of the dense-monoid example, as a lattice point with big coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VStep {
    pub kind: VStepKind,
    pub index: u64,
    #[serde(with = "crate::serde_big::bigint")]
    pub x: BigInt,
    #[serde(with = "crate::serde_big::bigint")]
    pub y: BigInt,
}

impl VStep {
    pub fn value(&self, d: u64) -> QuadExt {
        QuadExt::from_ints(self.x.clone(), self.y.clone(), d)
    }

    pub fn to_lattice(&self) -> Result<LatticePoint> {
        match (self.x.to_i64(), self.y.to_i64()) {
            (Some(x), Some(y)) => Ok(LatticePoint::new(x, y)),
            _ => Err(Error::Overflow(format!(
                "step {:?}{} = ({}, {}) does not fit in i64",
                self.kind, self.index, self.x, self.y
            ))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DenseMonoidSteps {
    pub sequences: AppendixSequences,
    pub steps: Vec<VStep>,
}

impl DenseMonoidSteps {
    pub fn step(&self, kind: VStepKind, index: u64) -> Option<&VStep> {
        self.steps
            .iter()
            .find(|s| s.kind == kind && s.index == index)
            .or_else(|| {
                // B_1 and C_1 coincide and are stored once
                if index == 1 && kind == VStepKind::C {
                    self.step(VStepKind::B, 1)
                } else {
                    None
                }
            })
    }

    /// Every step has positive value under `(x, y) -> x + y*sqrt d`.
    pub fn replay_line_condition(&self) -> bool {
        let d = self.sequences.d;
        self.steps.iter().all(|s| s.value(d).sign() == Ordering::Greater)
    }

    /// Distinct two-letter walks `B_i C_i`, `C_i B_i` ending at `(4, 0)`.
    pub fn walks_to_4e(&self) -> Vec<Vec<VStep>> {
        let mut out: Vec<Vec<VStep>> = Vec::new();
        for i in 1..=self.sequences.betas.len() as u64 {
            let (Some(b), Some(c)) = (self.step(VStepKind::B, i), self.step(VStepKind::C, i))
            else {
                continue;
            };
            for w in [vec![b.clone(), c.clone()], vec![c.clone(), b.clone()]] {
                let coords: Vec<(BigInt, BigInt)> = w.iter().map(|s| (s.x.clone(), s.y.clone())).collect();
                let seen = out.iter().any(|o| {
                    o.iter().map(|s| (s.x.clone(), s.y.clone())).collect::<Vec<_>>() == coords
                });
                if !seen {
                    out.push(w);
                }
            }
        }
        out
    }
}

/// Steps `A_i, B_i, C_i` for `i <= i_max` of the dense-monoid example.
pub fn example_v_steps(i_max: u64, budget: u64) -> Result<DenseMonoidSteps> {
    if i_max == 0 {
        return Err(Error::InvalidInput("i_max must be positive".into()));
    }
    let config = AppendixConfig {
        d: 2,
        alphas: i_max,
        pairs: i_max,
        budget,
    };
    let sequences = build_appendix_sequences(&config)?;
    let mut steps = Vec::new();
    for (i, a) in sequences.alphas.iter().take(i_max as usize).enumerate() {
        let (x, y) = a.lattice();
        steps.push(VStep {
            kind: VStepKind::A,
            index: i as u64 + 1,
            x,
            y,
        });
    }
    for (i, (b, c)) in sequences.betas.iter().zip(&sequences.gammas).enumerate() {
        let (bx, by) = b.lattice();
        steps.push(VStep {
            kind: VStepKind::B,
            index: i as u64 + 1,
            x: bx,
            y: by,
        });
        if b != c {
            let (cx, cy) = c.lattice();
            steps.push(VStep {
                kind: VStepKind::C,
                index: i as u64 + 1,
                x: cx,
                y: cy,
            });
        }
    }
    Ok(DenseMonoidSteps { sequences, steps })
}

/// `(u, v)` with `u >= 1` and `0 < v - slope*u < eps`.
fn small_positive(slope: &QuadExt, eps: &QuadExt) -> Result<(BigInt, BigInt)> {
    let d = slope.d;
    let half = QuadExt::from_rational(BigRational::new(1.into(), 2.into()), d);
    let mut u = BigInt::one();
    let limit = BigInt::from(100_000_000u64);
    while u <= limit {
        let su = slope.scale(&BigRational::from_integer(u.clone()));
        let v = (&su + &half).floor();
        let s = &QuadExt::from_int(v.clone(), d) - &su;
        let abs = if s.sign() == Ordering::Less { -&s } else { s.clone() };
        if abs < *eps {
            if s.sign() == Ordering::Greater {
                return Ok((u, v));
            }
            // reflect a small negative value into a small positive one
            let k = (&QuadExt::from_int(1, d) / &abs).floor();
            return Ok((&k * &u, &k * &v + 1));
        }
        u += 1;
    }
    Err(Error::budget("rational approximation", "more than 1e8 denominators", 100_000_000))
}

/// `(u, v)` with `u >= 1` and `-eps < v - slope*u < 0`.
fn small_negative(slope: &QuadExt, eps: &QuadExt) -> Result<(BigInt, BigInt)> {
    let d = slope.d;
    let (u, v) = small_positive(slope, eps)?;
    let t = &QuadExt::from_int(v.clone(), d) - &slope.scale(&BigRational::from_integer(u.clone()));
    let k = (&QuadExt::from_int(1, d) / &t).floor();
    Ok((&k * &u, &k * &v - 1))
}

/// A lattice point `(a, b)` with `a > r` strictly between the lines
/// `y = slope*x + gamma` and `y = slope*x + delta`.
pub fn lattice_point_between(
    gamma: &QuadExt,
    delta: &QuadExt,
    slope: &QuadExt,
    r: &BigRational,
) -> Result<(BigInt, BigInt)> {
    if slope.is_rational() {
        return Err(Error::InvalidInput("slope must be irrational".into()));
    }
    if gamma >= delta {
        return Err(Error::InvalidInput("need gamma < delta".into()));
    }
    let d = slope.d;
    let r_int = (r.floor().to_integer() + BigInt::one()).max(BigInt::one());
    let rq = BigRational::from_integer(r_int.clone());
    let width = (delta - gamma).scale(&rq.recip());
    let zero = QuadExt::from_int(0, d);
    let (a, b) = if *gamma < zero && zero < *delta {
        let (u, v) = small_positive(slope, &delta.scale(&rq.recip()))?;
        (&r_int * u, &r_int * v)
    } else if *gamma >= zero {
        let (u, v) = small_positive(slope, &width)?;
        let t = &QuadExt::from_int(v.clone(), d) - &slope.scale(&BigRational::from_integer(u.clone()));
        let k = (gamma / &t.scale(&rq)).floor() + 1;
        (&r_int * &k * u, &r_int * &k * v)
    } else {
        let (u, v) = small_negative(slope, &width)?;
        let s = &QuadExt::from_int(v.clone(), d) - &slope.scale(&BigRational::from_integer(u.clone()));
        let k = (&(-delta) / &(-&s).scale(&rq)).floor() + 1;
        (&r_int * &k * u, &r_int * &k * v)
    };
    let offset = &QuadExt::from_int(b.clone(), d) - &slope.scale(&BigRational::from_integer(a.clone()));
    if !(offset > *gamma && offset < *delta && BigRational::from_integer(a.clone()) > *r) {
        return Err(Error::Postcondition(format!("({a}, {b}) not between the lines")));
    }
    Ok((a, b))
}

/// A walk of exactly `k` steps from `O` to `target`, every step in the open half-plane
/// `side * (y - slope*x) > 0`.
///
/// Intermediate points are placed strictly between equally spaced parallel lines, so
/// the signed offset increases at every step.
pub fn construct_irrational_walk(
    slope: &QuadExt,
    side: i8,
    target: LatticePoint,
    k: usize,
) -> Result<Walk> {
    if side != 1 && side != -1 {
        return Err(Error::InvalidInput("side must be +1 or -1".into()));
    }
    if k == 0 {
        return Err(Error::InvalidInput("walk length must be positive".into()));
    }
    let d = slope.d;
    let sigma = BigRational::from_integer(BigInt::from(side));
    let offset = |p: (&BigInt, &BigInt)| -> QuadExt {
        (&QuadExt::from_int(p.1.clone(), d) - &slope.scale(&BigRational::from_integer(p.0.clone())))
            .scale(&sigma)
    };
    let (tx, ty) = (BigInt::from(target.x), BigInt::from(target.y));
    let g_target = offset((&tx, &ty));
    if g_target.sign() != Ordering::Greater {
        return Err(Error::InvalidInput(format!("{target} is not in the half-plane")));
    }
    let mut points: Vec<(BigInt, BigInt)> = vec![(BigInt::zero(), BigInt::zero())];
    for i in 1..k {
        let lo = g_target.scale(&BigRational::new((i as i64 - 1).into(), (k as i64).into()));
        let hi = g_target.scale(&BigRational::new((i as i64).into(), (k as i64).into()));
        // translate the offset band back to lines y - slope*x in (gamma, delta)
        let (gamma, delta) = if side == 1 { (lo, hi) } else { (-hi, -lo) };
        let p = lattice_point_between(&gamma, &delta, slope, &BigRational::zero())?;
        points.push(p);
    }
    points.push((tx, ty));
    let mut steps = Vec::with_capacity(k);
    for w in points.windows(2) {
        let dx = &w[1].0 - &w[0].0;
        let dy = &w[1].1 - &w[0].1;
        match (dx.to_i64(), dy.to_i64()) {
            (Some(x), Some(y)) => steps.push(LatticePoint::new(x, y)),
            _ => return Err(Error::Overflow("walk step exceeds i64".into())),
        }
    }
    let walk = Walk::new(steps);
    for s in &walk.steps {
        let (x, y) = s.to_big();
        if offset((&x, &y)).sign() != Ordering::Greater {
            return Err(Error::Postcondition(format!("step {s} on the wrong side")));
        }
    }
    Ok(walk)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn floor_of_surds() {
        let x = QuadExt::from_ints(0, 1, 2);
        assert_eq!(x.floor(), BigInt::from(1));
        let y = QuadExt::from_ints(0, -1, 2);
        assert_eq!(y.floor(), BigInt::from(-2));
        let z = QuadExt::from_ints(-7, 5, 2); // 5*1.414 - 7 = 0.07
        assert_eq!(z.floor(), BigInt::from(0));
        let w = QuadExt::new(BigRational::new(1.into(), 3.into()), BigRational::new((-7).into(), 2.into()), 3);
        // 1/3 - 3.5*1.732 = -5.729
        assert_eq!(w.floor(), BigInt::from(-6));
    }

    #[test]
    fn radicand_validation() {
        assert!(check_radicand(2).is_ok());
        assert!(check_radicand(4).is_err());
        assert!(check_radicand(12).is_err());
        assert!(check_radicand(1).is_err());
    }

    #[test]
    fn division_round_trip() {
        let a = QuadExt::from_ints(3, 2, 5);
        let b = QuadExt::from_ints(-1, 4, 5);
        assert_eq!(&(&a / &b) * &b, a);
    }

    #[test]
    fn radius_small_cases() {
        assert_eq!(radius(1, &BigInt::from(4)), BigInt::from(189));
        assert_eq!(radius(2, &BigInt::from(5)), BigInt::from(7_255_941_110u64));
    }
}
