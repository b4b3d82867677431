//! Seeded property suites over random step sets and constraints.

use std::time::Instant;

use num_bigint::BigUint;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::classify::{
    classify_constrained, classify_finite, constrained_units_and_group, group_structure,
    recurrence_sequence, small_stepset_monoid, truncation_consistency, GroupIso, MonoidType, Tri,
};
use crate::enumerate::{count_walks, naive_count, WalkCount};
use crate::error::Result;
use crate::geom::{check_lc, dot, origin_in_hull, origin_in_relative_interior, LatticePoint, Window};
use crate::graph::build_graph;
use crate::stepset::{ConstraintSpec, Family, StepSet, Truncation};

#[derive(Clone, Debug, Serialize)]
pub struct SuiteResult {
    pub name: &'static str,
    pub cases: usize,
    pub failures: Vec<String>,
    pub elapsed_ms: u128,
}

impl SuiteResult {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

fn timed(name: &'static str, f: impl FnOnce(&mut Vec<String>) -> Result<usize>) -> SuiteResult {
    let start = Instant::now();
    let mut failures = Vec::new();
    let cases = match f(&mut failures) {
        Ok(n) => n,
        Err(e) => {
            failures.push(format!("error: {e}"));
            0
        }
    };
    SuiteResult {
        name,
        cases,
        failures,
        elapsed_ms: start.elapsed().as_millis(),
    }
}

/// A random step set of at most `max_size` distinct nonzero points in `[-r, r]^2`.
pub fn random_stepset(rng: &mut ChaCha8Rng, max_size: usize, r: i64) -> StepSet {
    let n = rng.gen_range(1..=max_size);
    let mut pts = Vec::with_capacity(n);
    while pts.len() < n {
        let p = LatticePoint::new(rng.gen_range(-r..=r), rng.gen_range(-r..=r));
        if !p.is_origin() && !pts.contains(&p) {
            pts.push(p);
        }
    }
    StepSet::new(pts).expect("nonzero distinct points")
}

fn builtin_constraints() -> Vec<ConstraintSpec> {
    vec![
        ConstraintSpec::FullPlane,
        ConstraintSpec::quadrant(),
        ConstraintSpec::PuncturedQuadrant,
        ConstraintSpec::DiagonalChain,
        ConstraintSpec::BelowDiagonal,
    ]
}

/// Finite sets land in (I) or (X); (I) exactly when `O` is outside the hull; every
/// (X) carries a positive integer relation summing to `O`.
pub fn suite_finite_dichotomy(seed: u64, n: usize) -> SuiteResult {
    timed("finite dichotomy", |fail| {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for _ in 0..n {
            let x = random_stepset(&mut rng, 5, 5);
            let r = classify_finite(&x)?;
            let hull = origin_in_hull(&x);
            match r.combination {
                Some(crate::stepset::Combination::I) if !hull.contained => {}
                Some(crate::stepset::Combination::X) if hull.contained => {
                    if !hull.certificate.as_ref().is_some_and(|c| c.verify()) {
                        fail.push(format!("{x:?}: missing or invalid origin certificate"));
                    }
                }
                other => fail.push(format!("{x:?}: combination {other:?}, hull {}", hull.contained)),
            }
        }
        Ok(n)
    })
}

/// Level counts agree with brute-force word enumeration.
pub fn suite_oracle_equivalence(seed: u64, n: usize, max_bound: i128) -> SuiteResult {
    timed("oracle equivalence", |fail| {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut done = 0;
        let mut tries = 0;
        while done < n && tries < 200 * n {
            tries += 1;
            let x = random_stepset(&mut rng, 4, 3);
            let Some(u) = check_lc(&x) else { continue };
            let t = LatticePoint::new(rng.gen_range(0..=6), rng.gen_range(0..=6));
            let bound = dot(u.vector(), t);
            if !(0..=max_bound).contains(&bound) {
                continue;
            }
            done += 1;
            let dp = count_walks(&x, t, &ConstraintSpec::FullPlane, None)?;
            let brute = naive_count(&x, t, &ConstraintSpec::FullPlane, bound as usize, 50_000_000)?;
            if dp.exact() != Some(&brute) {
                fail.push(format!("{x:?} -> {t}: dp {dp}, brute force {brute}"));
            }
        }
        if done < n {
            fail.push(format!("only {done} qualifying cases in {tries} draws"));
        }
        Ok(done)
    })
}

/// The group verdict agrees with the relative-interior test.
pub fn suite_group_structure(seed: u64, n: usize) -> SuiteResult {
    timed("group structure", |fail| {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for _ in 0..n {
            let x = random_stepset(&mut rng, 5, 5);
            let is_group = group_structure(&x) != GroupIso::NotGroup;
            if is_group != origin_in_relative_interior(&x) {
                fail.push(format!("{x:?}: group {is_group}"));
            }
        }
        Ok(n)
    })
}

/// Forward count from `s` to `s + t`, by levels, without reusing the origin-based code.
fn count_from(steps: &[LatticePoint], s: LatticePoint, t: LatticePoint) -> Option<BigUint> {
    let u = check_lc(steps)?;
    let top = dot(u.vector(), s + t);
    let mut counts = std::collections::HashMap::from([(s, BigUint::one())]);
    let mut order = vec![s];
    let mut i = 0;
    while i < order.len() {
        let p = order[i];
        i += 1;
        for &a in steps {
            let q = p + a;
            if dot(u.vector(), q) <= top && !counts.contains_key(&q) {
                counts.insert(q, BigUint::zero());
                order.push(q);
            }
        }
    }
    order.sort_by_key(|p| dot(u.vector(), *p));
    let mut f: std::collections::HashMap<LatticePoint, BigUint> = Default::default();
    for p in order {
        let mut v = if p == s { BigUint::one() } else { BigUint::zero() };
        for &a in steps {
            if let Some(c) = f.get(&(p - a)) {
                v += c;
            }
        }
        f.insert(p, v);
    }
    Some(f.remove(&(s + t)).unwrap_or_default())
}

pub fn suite_translation_invariance(seed: u64, n: usize) -> SuiteResult {
    timed("translation invariance", |fail| {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut done = 0;
        while done < n {
            let x = random_stepset(&mut rng, 4, 3);
            if check_lc(&x).is_none() {
                continue;
            }
            done += 1;
            let t = LatticePoint::new(rng.gen_range(-3..=5), rng.gen_range(-3..=5));
            let s = LatticePoint::new(rng.gen_range(-20..=20), rng.gen_range(-20..=20));
            let here = count_walks(&x, t, &ConstraintSpec::FullPlane, None)?;
            if here.exact() != count_from(&x, s, t).as_ref() {
                fail.push(format!("{x:?}: {t} from {s}"));
            }
        }
        Ok(n)
    })
}

/// Constraining never adds walks.
pub fn suite_constraint_monotonicity(seed: u64, n: usize) -> SuiteResult {
    timed("constraint monotonicity", |fail| {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let cs = builtin_constraints();
        let mut done = 0;
        while done < n {
            let x = random_stepset(&mut rng, 4, 2);
            if check_lc(&x).is_none() {
                continue;
            }
            done += 1;
            let t = LatticePoint::new(rng.gen_range(0..=4), rng.gen_range(0..=4));
            let free = count_walks(&x, t, &ConstraintSpec::FullPlane, None)?;
            for c in &cs[1..] {
                let bound = count_walks(&x, t, c, None)?;
                if bound.exact() > free.exact() {
                    fail.push(format!("{x:?} -> {t} under {}: {bound} > {free}", c.label()));
                }
            }
        }
        Ok(n)
    })
}

/// Graphs of sets without a closed walk are acyclic; sets with one show a cycle.
pub fn suite_dag(seed: u64, n: usize) -> SuiteResult {
    timed("acyclic graphs", |fail| {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for _ in 0..n {
            let x = random_stepset(&mut rng, 4, 2);
            let ipp = classify_finite(&x)?.ipp.value == Tri::Yes;
            let w = Window::new(-3, 3, -3, 3)?;
            let g = build_graph(&x, &ConstraintSpec::FullPlane, w, Some(12))?;
            if !ipp && g.has_directed_cycle() {
                fail.push(format!("{x:?}: cycle without a closed walk"));
            }
            if !g.edges_consistent(&ConstraintSpec::FullPlane) {
                fail.push(format!("{x:?}: inconsistent edge"));
            }
        }
        Ok(n)
    })
}

/// Units imply a closed walk at `O`, which implies `O` in the hull of the steps.
pub fn suite_constrained_directions(seed: u64, n: usize) -> SuiteResult {
    timed("constrained units and closed walks", |fail| {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let cs = builtin_constraints();
        for i in 0..n {
            let x = random_stepset(&mut rng, 4, 2);
            let c = &cs[i % cs.len()];
            let r = classify_constrained(&x, c, 8)?;
            let (units, _) = constrained_units_and_group(&x, c, 8)?;
            if units.value == Tri::Yes && r.ipp.value != Tri::Yes {
                fail.push(format!("{x:?} under {}: units without closed walk", c.label()));
            }
            if r.ipp.value == Tri::Yes && !origin_in_hull(&x).contained {
                fail.push(format!("{x:?} under {}: closed walk with O outside hull", c.label()));
            }
            if let crate::classify::Evidence::ClosedWalk { walk } = &r.ipp.evidence {
                let w = walk.approach.concat(&walk.cycle);
                if !crate::stepset::walk_is_constrained(&w, c) || walk.cycle.endpoint() != LatticePoint::new(0, 0) {
                    fail.push(format!("{x:?} under {}: bad closed walk", c.label()));
                }
            }
        }
        Ok(n)
    })
}

/// Two collinear steps `kC`, `lC` count walks along the ray by the recurrence.
pub fn suite_recurrences(n_max: usize) -> SuiteResult {
    timed("two-step recurrences", |fail| {
        let mut cases = 0;
        for (k, l) in [(1usize, 2usize), (1, 3), (2, 3), (2, 5), (3, 4)] {
            for dir in [LatticePoint::new(1, 0), LatticePoint::new(1, 2), LatticePoint::new(-2, 3)] {
                let a = dir * k as i64;
                let b = dir * l as i64;
                let x = StepSet::new([a, b])?;
                match small_stepset_monoid(&x)? {
                    MonoidType::NumericalMonoid { k: mk, l: ml, .. }
                        if mk as usize == k && ml as usize == l => {}
                    other => fail.push(format!("{x:?}: monoid {other:?}")),
                }
                let seq = recurrence_sequence(k, l, n_max)?;
                for (n, expected) in seq.iter().enumerate() {
                    cases += 1;
                    let got = count_walks(&x, dir * n as i64, &ConstraintSpec::FullPlane, None)?;
                    if got != WalkCount::Exact(expected.clone()) {
                        fail.push(format!("({k},{l}) along {dir}, n={n}: {got} vs {expected}"));
                    }
                }
            }
        }
        Ok(cases)
    })
}

/// Built-in constraints contain `O` and are closed under addition.
pub fn suite_constraint_closure(seed: u64, n: usize) -> SuiteResult {
    timed("constraint closure", |fail| {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let cs = builtin_constraints();
        for c in &cs {
            if !c.contains(LatticePoint::new(0, 0)) {
                fail.push(format!("{}: O missing", c.label()));
            }
            let mut members = Vec::new();
            while members.len() < 2 * n {
                let p = LatticePoint::new(rng.gen_range(-50..=50), rng.gen_range(-50..=50));
                if c.contains(p) {
                    members.push(p);
                }
            }
            for pair in members.chunks(2) {
                if !c.contains(pair[0] + pair[1]) {
                    fail.push(format!("{}: {} + {}", c.label(), pair[0], pair[1]));
                }
            }
        }
        Ok(cs.len() * n)
    })
}

/// Truncations never contradict the catalogue labels.
pub fn suite_truncations() -> SuiteResult {
    timed("truncation evidence", |fail| {
        let mut cases = 0;
        for family in Family::ALL {
            let truncs: Vec<Truncation> = match family {
                Family::IrrationalHalfplane => vec![Truncation::window(2), Truncation::window(4)],
                Family::Sqrt2Iv => vec![Truncation {
                    bound: Some(2),
                    window: Some(4),
                }],
                Family::AppendixV => vec![Truncation::bound(2)],
                f if f.is_finite() => vec![Truncation::default()],
                _ => vec![Truncation::bound(3), Truncation::bound(6)],
            };
            for t in truncs {
                cases += 1;
                let ev = truncation_consistency(family, t)?;
                for c in ev.contradictions {
                    fail.push(format!("{family}: {c}"));
                }
            }
        }
        Ok(cases)
    })
}

/// Every suite with the given seed and default sizes.
pub fn run_all(seed: u64) -> Vec<SuiteResult> {
    vec![
        suite_finite_dichotomy(seed, 500),
        suite_oracle_equivalence(seed, 200, 7),
        suite_group_structure(seed, 500),
        suite_translation_invariance(seed, 100),
        suite_constraint_monotonicity(seed, 100),
        suite_dag(seed, 100),
        suite_constrained_directions(seed, 100),
        suite_recurrences(20),
        suite_constraint_closure(seed, 1000),
        suite_truncations(),
    ]
}
