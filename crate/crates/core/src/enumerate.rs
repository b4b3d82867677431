//! Counting constrained walks.
//!
//! When the steps admit a line condition every walk raises an integer potential, so
//! counts are finite and computed level by level. Otherwise the engine looks for a
//! certificate of infinity (a closed walk on a path to the target), for a finite
//! backward closure of the target, or falls back to a length-bounded count.

use std::collections::{BTreeMap, HashMap, HashSet, VecDeque};
use std::fmt;

use num_bigint::BigUint;
use num_traits::{One, Zero};
use petgraph::algo::tarjan_scc;
use petgraph::graph::{DiGraph, NodeIndex};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geom::{check_lc, dot, origin_in_hull, Direction, LatticePoint, Window, ORIGIN};
use crate::stepset::{walk_is_constrained, ConstraintSpec, LatticeCone};
use crate::walk::Walk;

/// Search length used when the caller gives none and only a reachability witness is
/// needed.
pub const DEFAULT_SEARCH_LEN: usize = 48;
/// Maximum number of lattice points any single search may visit.
pub const NODE_BUDGET: usize = 4_000_000;
const CLOSURE_BUDGET: usize = 20_000;

/// A closed walk on a path to the target: `approach . cycle^k . tail` is a valid walk for
/// every `k`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InfiniteCertificate {
    pub approach: Walk,
    pub cycle: Walk,
    pub tail: Walk,
}

impl InfiniteCertificate {
    pub fn replay(&self, target: LatticePoint, constraint: &ConstraintSpec) -> bool {
        if self.cycle.is_empty() || !self.cycle.endpoint().is_origin() {
            return false;
        }
        (0..3).all(|k| {
            let w = self.approach.concat(&self.cycle.repeat(k)).concat(&self.tail);
            w.endpoint() == target && walk_is_constrained(&w, constraint)
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum WalkCount {
    Exact(BigUint),
    Infinite(Box<InfiniteCertificate>),
    /// `found` walks of length at most `max_len`, with no proof that longer ones are absent.
    AtLeast { found: BigUint, max_len: usize },
}

impl WalkCount {
    pub fn exact(&self) -> Option<&BigUint> {
        match self {
            WalkCount::Exact(n) => Some(n),
            _ => None,
        }
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self, WalkCount::Infinite(_))
    }

    pub fn is_positive(&self) -> bool {
        match self {
            WalkCount::Exact(n) => !n.is_zero(),
            WalkCount::Infinite(_) => true,
            WalkCount::AtLeast { found, .. } => !found.is_zero(),
        }
    }

    /// Short label: the number, `inf`, or `≥n`.
    pub fn label(&self) -> String {
        match self {
            WalkCount::Exact(n) => n.to_string(),
            WalkCount::Infinite(_) => "inf".into(),
            WalkCount::AtLeast { found, .. } => format!("≥{found}"),
        }
    }
}

impl fmt::Display for WalkCount {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label())
    }
}

#[derive(Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
enum WalkCountRepr {
    Exact {
        value: String,
    },
    Infinite {
        certificate: InfiniteCertificate,
    },
    AtLeast {
        value: String,
        max_len: usize,
    },
}

impl Serialize for WalkCount {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let r = match self {
            WalkCount::Exact(n) => WalkCountRepr::Exact {
                value: n.to_string(),
            },
            WalkCount::Infinite(c) => WalkCountRepr::Infinite {
                certificate: (**c).clone(),
            },
            WalkCount::AtLeast { found, max_len } => WalkCountRepr::AtLeast {
                value: found.to_string(),
                max_len: *max_len,
            },
        };
        r.serialize(s)
    }
}

impl<'de> Deserialize<'de> for WalkCount {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let parse = |v: &str| v.parse::<BigUint>().map_err(serde::de::Error::custom);
        Ok(match WalkCountRepr::deserialize(d)? {
            WalkCountRepr::Exact { value } => WalkCount::Exact(parse(&value)?),
            WalkCountRepr::Infinite { certificate } => WalkCount::Infinite(Box::new(certificate)),
            WalkCountRepr::AtLeast { value, max_len } => WalkCount::AtLeast {
                found: parse(&value)?,
                max_len,
            },
        })
    }
}

/// Counts for the reachable points of a window. Points absent from `entries` are not
/// reachable (or, for unconstrained sets without a line condition, were not reached
/// within the search length).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CountTable {
    pub window: Window,
    pub entries: BTreeMap<LatticePoint, WalkCount>,
}

impl CountTable {
    pub fn get(&self, p: LatticePoint) -> Option<&WalkCount> {
        self.entries.get(&p)
    }

    /// Exact count at `p`, treating absent points as zero.
    pub fn exact_at(&self, p: LatticePoint) -> Option<BigUint> {
        match self.entries.get(&p) {
            None => Some(BigUint::zero()),
            Some(c) => c.exact().cloned(),
        }
    }
}

#[derive(Serialize)]
struct TableRow<'a> {
    point: LatticePoint,
    count: &'a WalkCount,
}

impl Serialize for CountTable {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let rows: Vec<TableRow> = self
            .entries
            .iter()
            .map(|(p, c)| TableRow { point: *p, count: c })
            .collect();
        let mut st = s.serialize_struct("CountTable", 2)?;
        st.serialize_field("window", &self.window)?;
        st.serialize_field("entries", &rows)?;
        st.end()
    }
}

fn level(u: Direction, p: LatticePoint) -> i128 {
    dot(u.vector(), p)
}

/// Exact count when every step raises `u . x` by at least one.
fn count_by_levels(
    steps: &[LatticePoint],
    u: Direction,
    target: LatticePoint,
    constraint: &ConstraintSpec,
) -> Result<BigUint> {
    let top = level(u, target);
    if top < 0 || !constraint.contains(target) {
        return Ok(BigUint::zero());
    }
    if target.is_origin() {
        return Ok(BigUint::one());
    }
    // backward closure of the target above level zero
    let mut seen: HashSet<LatticePoint> = HashSet::from([target]);
    let mut queue = VecDeque::from([target]);
    while let Some(q) = queue.pop_front() {
        for &a in steps {
            let Some(p) = q.checked_sub(a) else { continue };
            let lv = level(u, p);
            if lv < 0 || (lv == 0 && !p.is_origin()) || !constraint.contains(p) {
                continue;
            }
            if seen.insert(p) {
                if seen.len() > NODE_BUDGET {
                    return Err(Error::budget("level count", seen.len(), NODE_BUDGET as u64));
                }
                queue.push_back(p);
            }
        }
    }
    if !seen.contains(&ORIGIN) {
        return Ok(BigUint::zero());
    }
    let mut order: Vec<LatticePoint> = seen.into_iter().collect();
    order.sort_by_key(|&p| (level(u, p), p));
    let mut f: HashMap<LatticePoint, BigUint> = HashMap::with_capacity(order.len());
    for p in order {
        let v = if p.is_origin() {
            BigUint::one()
        } else {
            let mut acc = BigUint::zero();
            for &a in steps {
                if let Some(prev) = p.checked_sub(a).and_then(|q| f.get(&q)) {
                    acc += prev;
                }
            }
            acc
        };
        f.insert(p, v);
    }
    Ok(f.remove(&target).unwrap_or_default())
}

/// Forward sweep by levels: exact counts for every point with `u . x <= top`.
fn table_by_levels(
    steps: &[LatticePoint],
    u: Direction,
    top: i128,
    constraint: &ConstraintSpec,
) -> Result<HashMap<LatticePoint, BigUint>> {
    let mut counts: HashMap<LatticePoint, BigUint> = HashMap::from([(ORIGIN, BigUint::one())]);
    let mut buckets: BTreeMap<i128, Vec<LatticePoint>> = BTreeMap::from([(0, vec![ORIGIN])]);
    while let Some((lv, pts)) = buckets.pop_first() {
        for p in pts {
            let c = counts[&p].clone();
            for &a in steps {
                let Some(q) = p.checked_add(a) else { continue };
                let lq = lv + level(u, a);
                if lq > top || !constraint.contains(q) {
                    continue;
                }
                match counts.get_mut(&q) {
                    Some(v) => *v += &c,
                    None => {
                        counts.insert(q, c.clone());
                        buckets.entry(lq).or_default().push(q);
                        if counts.len() > NODE_BUDGET {
                            return Err(Error::budget("level table", counts.len(), NODE_BUDGET as u64));
                        }
                    }
                }
            }
        }
    }
    Ok(counts)
}

/// Breadth-first exploration of the constrained walk graph from a base point.
struct Explorer {
    nodes: Vec<LatticePoint>,
    index: HashMap<LatticePoint, usize>,
    /// `(parent, step)` on a shortest path from the base
    parent: Vec<Option<(usize, LatticePoint)>>,
}

impl Explorer {
    fn run(
        steps: &[LatticePoint],
        constraint: &ConstraintSpec,
        base: LatticePoint,
        max_depth: usize,
        region: Option<Window>,
    ) -> Result<Self> {
        let mut ex = Explorer {
            nodes: vec![base],
            index: HashMap::from([(base, 0)]),
            parent: vec![None],
        };
        let mut frontier = vec![0usize];
        for _ in 0..max_depth {
            let mut next = Vec::new();
            for &i in &frontier {
                let p = ex.nodes[i];
                for &a in steps {
                    let Some(q) = p.checked_add(a) else { continue };
                    if !constraint.contains(q) || region.is_some_and(|r| !r.contains(q)) {
                        continue;
                    }
                    if !ex.index.contains_key(&q) {
                        let j = ex.nodes.len();
                        ex.nodes.push(q);
                        ex.index.insert(q, j);
                        ex.parent.push(Some((i, a)));
                        next.push(j);
                        if ex.nodes.len() > NODE_BUDGET {
                            return Err(Error::budget("exploration", ex.nodes.len(), NODE_BUDGET as u64));
                        }
                    }
                }
            }
            if next.is_empty() {
                break;
            }
            frontier = next;
        }
        Ok(ex)
    }

    fn path_to(&self, mut i: usize) -> Walk {
        let mut steps = Vec::new();
        while let Some((p, a)) = self.parent[i] {
            steps.push(a);
            i = p;
        }
        steps.reverse();
        Walk::new(steps)
    }

    fn graph(&self, steps: &[LatticePoint], constraint: &ConstraintSpec) -> DiGraph<(), LatticePoint> {
        let mut g = DiGraph::with_capacity(self.nodes.len(), self.nodes.len() * steps.len());
        for _ in &self.nodes {
            g.add_node(());
        }
        for (i, &p) in self.nodes.iter().enumerate() {
            for &a in steps {
                let Some(q) = p.checked_add(a) else { continue };
                if !constraint.contains(q) {
                    continue;
                }
                if let Some(&j) = self.index.get(&q) {
                    g.add_edge(NodeIndex::new(i), NodeIndex::new(j), a);
                }
            }
        }
        g
    }
}

/// Points of the explored graph that lie on a closed walk, each with such a walk.
fn cyclic_nodes(g: &DiGraph<(), LatticePoint>) -> HashMap<usize, Walk> {
    let mut out = HashMap::new();
    for comp in tarjan_scc(g) {
        if comp.len() < 2 {
            continue;
        }
        let members: HashSet<NodeIndex> = comp.iter().copied().collect();
        let start = comp[0];
        // shortest cycle through `start` inside its component
        let mut prev: HashMap<NodeIndex, (NodeIndex, LatticePoint)> = HashMap::new();
        let mut queue = VecDeque::from([start]);
        let mut closing: Option<(NodeIndex, LatticePoint)> = None;
        'bfs: while let Some(v) = queue.pop_front() {
            for e in g.edges(v) {
                use petgraph::visit::EdgeRef;
                let w = e.target();
                if !members.contains(&w) {
                    continue;
                }
                if w == start {
                    closing = Some((v, *e.weight()));
                    break 'bfs;
                }
                if let std::collections::hash_map::Entry::Vacant(slot) = prev.entry(w) {
                    slot.insert((v, *e.weight()));
                    queue.push_back(w);
                }
            }
        }
        let (mut v, last) = closing.expect("strong component of size >= 2 has a cycle");
        let mut steps = vec![last];
        while v != start {
            let (p, a) = prev[&v];
            steps.push(a);
            v = p;
        }
        steps.reverse();
        let cycle = Walk::new(steps);
        // every member reuses the cycle found at the start, rotated to begin there
        out.insert(start.index(), cycle);
        for &m in &comp {
            if m != start {
                out.entry(m.index()).or_insert_with(Walk::empty);
            }
        }
    }
    out
}

/// For every explored point reachable from a cycle: `(cycle node, path from it)`.
fn reached_from_cycles(
    g: &DiGraph<(), LatticePoint>,
    cyclic: &HashMap<usize, Walk>,
) -> HashMap<usize, (usize, Vec<LatticePoint>)> {
    use petgraph::visit::EdgeRef;
    let roots: Vec<usize> = cyclic
        .iter()
        .filter(|(_, w)| !w.is_empty())
        .map(|(&i, _)| i)
        .collect();
    let mut reach: HashMap<usize, (usize, Vec<LatticePoint>)> = HashMap::new();
    let mut queue = VecDeque::new();
    for r in roots {
        reach.insert(r, (r, vec![]));
        queue.push_back(r);
    }
    while let Some(v) = queue.pop_front() {
        let (root, path) = reach[&v].clone();
        for e in g.edges(NodeIndex::new(v)) {
            let w = e.target().index();
            if let std::collections::hash_map::Entry::Vacant(slot) = reach.entry(w) {
                let mut p = path.clone();
                p.push(*e.weight());
                slot.insert((root, p));
                queue.push_back(w);
            }
        }
    }
    reach
}

/// Exact count from a finite, acyclic backward closure of the target, if it has one.
fn count_by_closure(
    steps: &[LatticePoint],
    target: LatticePoint,
    constraint: &ConstraintSpec,
) -> Option<BigUint> {
    let mut seen: HashSet<LatticePoint> = HashSet::from([target]);
    let mut queue = VecDeque::from([target]);
    while let Some(q) = queue.pop_front() {
        for &a in steps {
            let Some(p) = q.checked_sub(a) else { continue };
            if constraint.contains(p) && seen.insert(p) {
                if seen.len() > CLOSURE_BUDGET {
                    return None;
                }
                queue.push_back(p);
            }
        }
    }
    // Kahn's algorithm on the induced subgraph
    let mut indeg: HashMap<LatticePoint, usize> = seen.iter().map(|&p| (p, 0)).collect();
    for &p in &seen {
        for &a in steps {
            if let Some(q) = p.checked_add(a).filter(|q| seen.contains(q)) {
                *indeg.get_mut(&q).unwrap() += 1;
            }
        }
    }
    let mut ready: Vec<LatticePoint> = indeg.iter().filter(|(_, &d)| d == 0).map(|(&p, _)| p).collect();
    let mut f: HashMap<LatticePoint, BigUint> = HashMap::new();
    let mut done = 0;
    while let Some(p) = ready.pop() {
        done += 1;
        let own = if p.is_origin() { BigUint::one() } else { BigUint::zero() };
        let v = f.remove(&p).unwrap_or_default() + own;
        for &a in steps {
            if let Some(q) = p.checked_add(a).filter(|q| seen.contains(q)) {
                *f.entry(q).or_default() += &v;
                let d = indeg.get_mut(&q).unwrap();
                *d -= 1;
                if *d == 0 {
                    ready.push(q);
                }
            }
        }
        if p == target {
            f.insert(p, v);
        }
    }
    if done != seen.len() {
        return None;
    }
    Some(f.remove(&target).unwrap_or_default())
}

/// Number of walks of length at most `max_len` to every point, and whether the
/// frontier died out (so the counts are complete).
fn counts_by_length(
    steps: &[LatticePoint],
    constraint: &ConstraintSpec,
    max_len: usize,
) -> Result<(HashMap<LatticePoint, BigUint>, bool)> {
    let mut total: HashMap<LatticePoint, BigUint> = HashMap::from([(ORIGIN, BigUint::one())]);
    let mut layer: HashMap<LatticePoint, BigUint> = HashMap::from([(ORIGIN, BigUint::one())]);
    for _ in 0..max_len {
        let mut next: HashMap<LatticePoint, BigUint> = HashMap::new();
        for (p, c) in &layer {
            for &a in steps {
                let Some(q) = p.checked_add(a) else { continue };
                if constraint.contains(q) {
                    *next.entry(q).or_default() += c;
                }
            }
        }
        if next.len() > NODE_BUDGET {
            return Err(Error::budget("length count", next.len(), NODE_BUDGET as u64));
        }
        if next.is_empty() {
            return Ok((total, true));
        }
        for (p, c) in &next {
            *total.entry(*p).or_default() += c;
        }
        layer = next;
    }
    Ok((total, false))
}

/// Number of walks to `target` of length at most `max_len`.
pub fn count_walks_up_to_length(
    steps: &[LatticePoint],
    target: LatticePoint,
    constraint: &ConstraintSpec,
    max_len: usize,
) -> Result<BigUint> {
    let mut layer: HashMap<LatticePoint, BigUint> = HashMap::from([(ORIGIN, BigUint::one())]);
    let mut total = if target.is_origin() { BigUint::one() } else { BigUint::zero() };
    let u = check_lc(steps);
    for _ in 0..max_len {
        let mut next: HashMap<LatticePoint, BigUint> = HashMap::new();
        for (p, c) in &layer {
            for &a in steps {
                let Some(q) = p.checked_add(a) else { continue };
                if !constraint.contains(q) {
                    continue;
                }
                if let Some(u) = u {
                    if level(u, q) > level(u, target) {
                        continue;
                    }
                }
                *next.entry(q).or_default() += c;
            }
        }
        if next.len() > NODE_BUDGET {
            return Err(Error::budget("length count", next.len(), NODE_BUDGET as u64));
        }
        if let Some(c) = next.get(&target) {
            total += c;
        }
        if next.is_empty() {
            break;
        }
        layer = next;
    }
    Ok(total)
}

/// A closed walk at `O` from the hull certificate, when it is short enough.
fn hull_cycle(steps: &[LatticePoint]) -> Option<Walk> {
    origin_in_hull(steps)
        .certificate
        .and_then(|c| c.expand(100_000))
        .map(Walk::new)
}

fn unconstrained_infinite(
    steps: &[LatticePoint],
    target: LatticePoint,
    max_len: Option<usize>,
) -> Result<WalkCount> {
    let len = max_len.unwrap_or(DEFAULT_SEARCH_LEN);
    let full = ConstraintSpec::FullPlane;
    let cycle = match hull_cycle(steps) {
        Some(c) => c,
        None => find_closed_walk(steps, &full, len, None)?
            .found
            .map(|c| c.cycle)
            .ok_or_else(|| Error::MissingMaxLen("closed walk longer than the search length".into()))?,
    };
    let ex = Explorer::run(steps, &full, ORIGIN, len, None)?;
    match ex.index.get(&target) {
        Some(&i) => Ok(WalkCount::Infinite(Box::new(InfiniteCertificate {
            approach: Walk::empty(),
            cycle,
            tail: ex.path_to(i),
        }))),
        None if max_len.is_some() => Ok(WalkCount::AtLeast {
            found: BigUint::zero(),
            max_len: len,
        }),
        None => Err(Error::MissingMaxLen(format!(
            "no walk to {target} within {len} steps"
        ))),
    }
}

/// Number of constrained walks from `O` to `target`.
pub fn count_walks(
    steps: &[LatticePoint],
    target: LatticePoint,
    constraint: &ConstraintSpec,
    max_len: Option<usize>,
) -> Result<WalkCount> {
    if !constraint.contains(target) {
        return Ok(WalkCount::Exact(BigUint::zero()));
    }
    if steps.is_empty() {
        return Ok(WalkCount::Exact(BigUint::from(target.is_origin() as u8)));
    }
    if let Some(u) = check_lc(steps) {
        return Ok(WalkCount::Exact(count_by_levels(steps, u, target, constraint)?));
    }
    if constraint.is_full_plane() {
        return unconstrained_infinite(steps, target, max_len);
    }
    let search = max_len.unwrap_or(DEFAULT_SEARCH_LEN);
    let adm = admissible_steps(steps, constraint, search, constraint.interior_cone())?;
    if adm.undetermined.is_empty() {
        let usable = adm.confirmed_steps();
        if usable.is_empty() {
            return Ok(WalkCount::Exact(BigUint::from(target.is_origin() as u8)));
        }
        if let Some(u) = check_lc(&usable) {
            return Ok(WalkCount::Exact(count_by_levels(&usable, u, target, constraint)?));
        }
    }
    if let Some(n) = count_by_closure(steps, target, constraint) {
        return Ok(WalkCount::Exact(n));
    }
    let len = max_len.ok_or_else(|| {
        Error::MissingMaxLen(format!("no termination certificate for {target}"))
    })?;
    let ex = Explorer::run(steps, constraint, ORIGIN, len, None)?;
    let g = ex.graph(steps, constraint);
    let cyclic = cyclic_nodes(&g);
    let reach = reached_from_cycles(&g, &cyclic);
    if let Some(&t) = ex.index.get(&target) {
        if let Some((root, path)) = reach.get(&t) {
            return Ok(WalkCount::Infinite(Box::new(InfiniteCertificate {
                approach: ex.path_to(*root),
                cycle: cyclic[root].clone(),
                tail: Walk::new(path.clone()),
            })));
        }
    }
    let (totals, complete) = counts_by_length(steps, constraint, len)?;
    let found = totals.get(&target).cloned().unwrap_or_default();
    Ok(if complete {
        WalkCount::Exact(found)
    } else {
        WalkCount::AtLeast {
            found,
            max_len: len,
        }
    })
}

/// Counts for every point of a window, from one shared sweep.
pub fn count_table(
    steps: &[LatticePoint],
    window: Window,
    constraint: &ConstraintSpec,
    max_len: Option<usize>,
) -> Result<CountTable> {
    let mut entries = BTreeMap::new();
    let mut exact_sweep = |usable: &[LatticePoint], u: Direction| -> Result<()> {
        let top = window.corners().iter().map(|&c| level(u, c)).max().unwrap();
        if top < 0 {
            return Ok(());
        }
        let counts = table_by_levels(usable, u, top, constraint)?;
        for (p, c) in counts {
            if window.contains(p) && !c.is_zero() {
                entries.insert(p, WalkCount::Exact(c));
            }
        }
        Ok(())
    };
    if steps.is_empty() {
        if window.contains(ORIGIN) {
            entries.insert(ORIGIN, WalkCount::Exact(BigUint::one()));
        }
        return Ok(CountTable { window, entries });
    }
    if let Some(u) = check_lc(steps) {
        exact_sweep(steps, u)?;
        return Ok(CountTable { window, entries });
    }
    let inflate = 2 * (steps.iter().map(|p| p.x.abs().max(p.y.abs())).max().unwrap_or(1));
    if constraint.is_full_plane() {
        let len = max_len.unwrap_or(DEFAULT_SEARCH_LEN);
        let cycle = hull_cycle(steps)
            .ok_or_else(|| Error::MissingMaxLen("closed walk too long to certify".into()))?;
        let ex = Explorer::run(steps, constraint, ORIGIN, len, Some(window.inflate(inflate.max(len as i64))))?;
        for (i, &p) in ex.nodes.iter().enumerate() {
            if window.contains(p) {
                entries.insert(
                    p,
                    WalkCount::Infinite(Box::new(InfiniteCertificate {
                        approach: Walk::empty(),
                        cycle: cycle.clone(),
                        tail: ex.path_to(i),
                    })),
                );
            }
        }
        return Ok(CountTable { window, entries });
    }
    let search = max_len.unwrap_or(DEFAULT_SEARCH_LEN);
    let adm = admissible_steps(steps, constraint, search, constraint.interior_cone())?;
    if adm.undetermined.is_empty() {
        let usable = adm.confirmed_steps();
        if usable.is_empty() {
            if window.contains(ORIGIN) {
                entries.insert(ORIGIN, WalkCount::Exact(BigUint::one()));
            }
            return Ok(CountTable { window, entries });
        }
        if let Some(u) = check_lc(&usable) {
            exact_sweep(&usable, u)?;
            return Ok(CountTable { window, entries });
        }
    }
    let len = max_len.ok_or_else(|| {
        Error::MissingMaxLen("constrained steps without a line condition".into())
    })?;
    let ex = Explorer::run(steps, constraint, ORIGIN, len, Some(window.inflate(inflate)))?;
    let g = ex.graph(steps, constraint);
    let cyclic = cyclic_nodes(&g);
    let reach = reached_from_cycles(&g, &cyclic);
    let mut pending = Vec::new();
    for (i, &p) in ex.nodes.iter().enumerate() {
        if !window.contains(p) {
            continue;
        }
        if let Some((root, path)) = reach.get(&i) {
            entries.insert(
                p,
                WalkCount::Infinite(Box::new(InfiniteCertificate {
                    approach: ex.path_to(*root),
                    cycle: cyclic[root].clone(),
                    tail: Walk::new(path.clone()),
                })),
            );
        } else if let Some(n) = count_by_closure(steps, p, constraint) {
            if !n.is_zero() {
                entries.insert(p, WalkCount::Exact(n));
            }
        } else {
            pending.push(p);
        }
    }
    if !pending.is_empty() {
        let (totals, complete) = counts_by_length(steps, constraint, len)?;
        for p in pending {
            let found = totals.get(&p).cloned().unwrap_or_default();
            let c = if complete {
                WalkCount::Exact(found)
            } else {
                WalkCount::AtLeast {
                    found,
                    max_len: len,
                }
            };
            if c.is_positive() {
                entries.insert(p, c);
            }
        }
    }
    Ok(CountTable { window, entries })
}

/// Exhaustive enumeration of all words of length at most `max_len`. Independent of the
/// other counting paths; used as an oracle.
pub fn naive_count(
    steps: &[LatticePoint],
    target: LatticePoint,
    constraint: &ConstraintSpec,
    max_len: usize,
    budget: u64,
) -> Result<BigUint> {
    let n = steps.len() as u128;
    let mut words: u128 = 0;
    let mut pow: u128 = 1;
    for _ in 0..=max_len {
        words = words.saturating_add(pow);
        pow = pow.saturating_mul(n);
    }
    if words > budget as u128 {
        return Err(Error::budget("naive count", words, budget));
    }
    fn go(
        steps: &[LatticePoint],
        at: LatticePoint,
        left: usize,
        target: LatticePoint,
        constraint: &ConstraintSpec,
    ) -> BigUint {
        let mut c = if at == target { BigUint::one() } else { BigUint::zero() };
        if left == 0 {
            return c;
        }
        for &a in steps {
            let Some(q) = at.checked_add(a) else { continue };
            if constraint.contains(q) {
                c += go(steps, q, left - 1, target, constraint);
            }
        }
        c
    }
    Ok(go(steps, ORIGIN, max_len, target, constraint))
}

/// Every point reachable by a constrained walk of length at most `max_len`, each with a
/// shortest such walk, in discovery order (so `O` comes first).
pub fn reachable_points(
    steps: &[LatticePoint],
    constraint: &ConstraintSpec,
    max_len: usize,
) -> Result<Vec<(LatticePoint, Walk)>> {
    let ex = Explorer::run(steps, constraint, ORIGIN, max_len, None)?;
    Ok(ex
        .nodes
        .iter()
        .enumerate()
        .map(|(i, &p)| (p, ex.path_to(i)))
        .collect())
}

/// A closed walk through `base` (default `O`) found by bounded search.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClosedWalk {
    /// walk from `O` to the base point
    pub approach: Walk,
    /// nonempty walk from the base back to itself
    pub cycle: Walk,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClosedWalkSearch {
    pub found: Option<ClosedWalk>,
    /// Whether a `None` result is a proof (only when the steps satisfy the line condition).
    pub absence_certain: bool,
}

pub fn find_closed_walk(
    steps: &[LatticePoint],
    constraint: &ConstraintSpec,
    max_len: usize,
    base: Option<LatticePoint>,
) -> Result<ClosedWalkSearch> {
    let absence_certain = check_lc(steps).is_some();
    let base = base.unwrap_or(ORIGIN);
    let approach = if base.is_origin() {
        Walk::empty()
    } else {
        let ex = Explorer::run(steps, constraint, ORIGIN, max_len, None)?;
        match ex.index.get(&base) {
            Some(&i) => ex.path_to(i),
            None => {
                return Ok(ClosedWalkSearch {
                    found: None,
                    absence_certain,
                })
            }
        }
    };
    if absence_certain || max_len == 0 {
        return Ok(ClosedWalkSearch {
            found: None,
            absence_certain,
        });
    }
    let ex = Explorer::run(steps, constraint, base, max_len - 1, None)?;
    let mut best: Option<Walk> = None;
    for (i, &p) in ex.nodes.iter().enumerate() {
        for &a in steps {
            if p.checked_add(a) == Some(base) {
                let w = ex.path_to(i).concat(&Walk::new(vec![a]));
                if best.as_ref().is_none_or(|b| w.len() < b.len()) {
                    best = Some(w);
                }
            }
        }
    }
    Ok(ClosedWalkSearch {
        found: best.map(|cycle| ClosedWalk { approach, cycle }),
        absence_certain,
    })
}

/// Which steps can be used by some constrained walk.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Admissibility {
    /// steps with a witness walk that ends with that step
    pub confirmed: Vec<(LatticePoint, Walk)>,
    /// steps proven unusable
    pub refuted: Vec<LatticePoint>,
    pub undetermined: Vec<LatticePoint>,
}

impl Admissibility {
    pub fn confirmed_steps(&self) -> Vec<LatticePoint> {
        self.confirmed.iter().map(|(s, _)| *s).collect()
    }

    pub fn is_complete(&self) -> bool {
        self.undetermined.is_empty()
    }
}

/// Classify each step as usable, unusable or undecided.
///
/// For a constraint closed under negation a step is usable iff it lies in the
/// constraint. Otherwise a bounded search confirms steps directly, and when `cone` is an
/// open cone inside the constraint containing a reached point, every remaining step is
/// confirmed by repeating the walk to that point before taking the step.
pub fn admissible_steps(
    steps: &[LatticePoint],
    constraint: &ConstraintSpec,
    bound: usize,
    cone: Option<LatticeCone>,
) -> Result<Admissibility> {
    let mut out = Admissibility {
        confirmed: vec![],
        refuted: vec![],
        undetermined: vec![],
    };
    if constraint.is_group() {
        for &a in steps {
            if constraint.contains(a) {
                out.confirmed.push((a, Walk::new(vec![a])));
            } else {
                out.refuted.push(a);
            }
        }
        return Ok(out);
    }
    let mut witness: BTreeMap<LatticePoint, Walk> = BTreeMap::new();
    let ex = if bound == 0 {
        None
    } else {
        let ex = Explorer::run(steps, constraint, ORIGIN, bound - 1, None)?;
        for (i, &p) in ex.nodes.iter().enumerate() {
            for &a in steps {
                if witness.contains_key(&a) {
                    continue;
                }
                if p.checked_add(a).is_some_and(|q| constraint.contains(q)) {
                    witness.insert(a, ex.path_to(i).concat(&Walk::new(vec![a])));
                }
            }
        }
        Some(ex)
    };
    let missing: Vec<LatticePoint> = steps.iter().copied().filter(|a| !witness.contains_key(a)).collect();
    if let (Some(cone), Some(ex), false) = (cone, ex.as_ref(), missing.is_empty()) {
        if constraint.contains_cone(&cone) == Some(true) {
            if let Some(i) = ex.nodes.iter().position(|&p| cone.contains(p)) {
                let b = ex.nodes[i];
                let to_b = ex.path_to(i);
                for &a in &missing {
                    for n in 1..=1_000_000i64 {
                        let Some(q) = b.checked_scale(n).and_then(|nb| nb.checked_add(a)) else {
                            break;
                        };
                        if cone.contains(q) {
                            let w = to_b.repeat(n as usize).concat(&Walk::new(vec![a]));
                            if walk_is_constrained(&w, constraint) {
                                witness.insert(a, w);
                            }
                            break;
                        }
                    }
                }
            }
        }
    }
    for &a in steps {
        match witness.remove(&a) {
            Some(w) => out.confirmed.push((a, w)),
            None => out.undetermined.push(a),
        }
    }
    Ok(out)
}
