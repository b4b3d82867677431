//! Versioned JSON job descriptions and their execution.

use std::fmt::Write as _;
use std::path::PathBuf;

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::classify::{classify_constrained, ClassificationReport, Tri};
use crate::enumerate::{count_table, count_walks, CountTable, WalkCount, DEFAULT_SEARCH_LEN};
use crate::error::{Error, Result};
use crate::geom::{LatticePoint, Window};
use crate::graph::{build_graph, emit_dot, emit_tikz};
use crate::oeis::{oeis_lookup, OeisMatch, OeisMode};
use crate::quad::{
    build_appendix_sequences, find_element, replay_element_bound, sum_set_check,
    AppendixConfig, AppendixSequences, QuadExt,
};
use crate::stepset::{registry_classification, ConstraintSpec, StepSetSpec};
use crate::verify::{run_all, SuiteResult};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Command {
    Classify,
    Count,
    Graph,
    Sequence,
    Appendix,
    Verify,
}

/// Which line of a count table to read as a sequence.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "line", rename_all = "lowercase")]
pub enum SequenceLine {
    /// `(n, n)` for `n = 0..len`
    Diagonal,
    /// `(n, y)` for fixed `y`
    Row { y: i64 },
    /// `(x, n)` for fixed `x`
    Column { x: i64 },
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OutputPaths {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub json: Option<PathBuf>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub csv: Option<PathBuf>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dot: Option<PathBuf>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tikz: Option<PathBuf>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct JobSpec {
    pub v: u32,
    pub command: Command,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub stepset: Option<StepSetSpec>,
    #[serde(default, skip_serializing_if = "ConstraintSpec::is_full_plane")]
    pub constraint: ConstraintSpec,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub window: Option<Window>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub target: Option<LatticePoint>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub max_len: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sequence: Option<SequenceLine>,
    /// number of sequence terms
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub terms: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub appendix: Option<AppendixConfig>,
    #[serde(default)]
    pub oeis: OeisMode,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(default)]
    pub output: OutputPaths,
}

impl JobSpec {
    pub fn new(command: Command) -> Self {
        JobSpec {
            v: SCHEMA_VERSION,
            command,
            stepset: None,
            constraint: ConstraintSpec::FullPlane,
            window: None,
            target: None,
            max_len: None,
            sequence: None,
            terms: None,
            appendix: None,
            oeis: OeisMode::Off,
            seed: None,
            output: OutputPaths::default(),
        }
    }

    /// Parse and validate; errors carry the position of the problem.
    pub fn from_json(text: &str) -> Result<Self> {
        // serde_json reports the line and column itself
        let job: JobSpec = serde_json::from_str(text).map_err(|e| Error::Spec(e.to_string()))?;
        job.validate()?;
        Ok(job)
    }

    pub fn validate(&self) -> Result<()> {
        if self.v != SCHEMA_VERSION {
            return Err(Error::Spec(format!(
                "unsupported schema version {} (expected {SCHEMA_VERSION})",
                self.v
            )));
        }
        let needs_steps = !matches!(self.command, Command::Appendix | Command::Verify);
        if needs_steps && self.stepset.is_none() {
            return Err(Error::Spec("field `stepset` is required".into()));
        }
        match self.command {
            Command::Count if self.target.is_none() && self.window.is_none() => Err(Error::Spec(
                "count needs `target` or `window`".into(),
            )),
            Command::Graph if self.window.is_none() => {
                Err(Error::Spec("graph needs `window`".into()))
            }
            Command::Sequence if self.sequence.is_none() => {
                Err(Error::Spec("sequence needs `sequence`".into()))
            }
            _ => Ok(()),
        }
    }
}

/// Result of a job: machine-readable JSON, a human summary and files to write.
#[derive(Clone, Debug)]
pub struct JobOutput {
    pub json: Value,
    pub human: String,
    pub files: Vec<(PathBuf, String)>,
}

pub fn run_job(job: &JobSpec) -> Result<JobOutput> {
    job.validate()?;
    let mut out = match job.command {
        Command::Classify => run_classify(job)?,
        Command::Count => run_count(job)?,
        Command::Graph => run_graph(job)?,
        Command::Sequence => run_sequence(job)?,
        Command::Appendix => run_appendix(job)?,
        Command::Verify => run_verify(job)?,
    };
    if let Some(p) = &job.output.json {
        let text = serde_json::to_string_pretty(&out.json)? + "\n";
        out.files.push((p.clone(), text));
    }
    Ok(out)
}

fn steps_of(job: &JobSpec) -> Result<crate::stepset::StepSet> {
    job.stepset
        .as_ref()
        .ok_or_else(|| Error::Spec("field `stepset` is required".into()))?
        .materialize()
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn report_table(r: &ClassificationReport) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "cc   {}", yes_no(r.cc.holds));
    let _ = writeln!(s, "slc  {}", yes_no(r.slc.holds));
    let _ = writeln!(s, "lc   {}", yes_no(r.lc.holds));
    let _ = writeln!(s, "wlc  {}", yes_no(r.wlc.holds));
    let _ = writeln!(s, "fpp  {}", r.fpp.value);
    let _ = writeln!(s, "bpp  {}", r.bpp.value);
    let _ = writeln!(s, "ipp  {}", r.ipp.value);
    let _ = writeln!(s, "units nontrivial  {}", r.units_nontrivial.value);
    let _ = writeln!(s, "group             {}", r.is_group.value);
    if let Some(iso) = r.group_iso {
        let _ = writeln!(s, "group type        {iso:?}");
    }
    match r.combination {
        Some(c) => {
            let _ = writeln!(s, "combination {c}");
        }
        None => {
            let _ = writeln!(s, "combination unknown");
        }
    }
    s
}

fn run_classify(job: &JobSpec) -> Result<JobOutput> {
    let steps = steps_of(job)?;
    let bound = job.max_len.unwrap_or(DEFAULT_SEARCH_LEN);
    let report = classify_constrained(&steps, &job.constraint, bound)?;
    let mut json = json!({ "steps": steps, "constraint": job.constraint.label(), "report": report });
    let mut human = report_table(&report);
    if let Some(StepSetSpec::Family { family, .. }) = &job.stepset {
        let entry = registry_classification(*family);
        let _ = writeln!(
            human,
            "catalogue label for the full family: {} ({})",
            entry.combination, entry.note
        );
        json["registry"] = serde_json::to_value(&entry)?;
        if let Some(c) = report.combination {
            let _ = writeln!(human, "(the truncation above has {} steps and classifies as {c})", steps.len());
        }
    }
    if report.fpp.value == Tri::Unknown || report.ipp.value == Tri::Unknown {
        let _ = writeln!(human, "some verdicts are undecided at search length {bound}");
    }
    Ok(JobOutput {
        json,
        human,
        files: vec![],
    })
}

pub fn table_csv(t: &CountTable) -> String {
    let mut s = String::from("x,y,kind,count\n");
    for (p, c) in &t.entries {
        let kind = match c {
            WalkCount::Exact(_) => "exact",
            WalkCount::Infinite(_) => "infinite",
            WalkCount::AtLeast { .. } => "at_least",
        };
        let value = match c {
            WalkCount::Exact(n) | WalkCount::AtLeast { found: n, .. } => n.to_string(),
            WalkCount::Infinite(_) => String::new(),
        };
        let _ = writeln!(s, "{},{},{kind},{value}", p.x, p.y);
    }
    s
}

fn run_count(job: &JobSpec) -> Result<JobOutput> {
    let steps = steps_of(job)?;
    if let Some(t) = job.target {
        let c = count_walks(&steps, t, &job.constraint, job.max_len)?;
        return Ok(JobOutput {
            json: json!({ "target": t, "count": c }),
            human: format!("{c}\n"),
            files: vec![],
        });
    }
    let window = job.window.expect("validated");
    let table = count_table(&steps, window, &job.constraint, job.max_len)?;
    let csv = table_csv(&table);
    let mut files = vec![];
    if let Some(p) = &job.output.csv {
        files.push((p.clone(), csv.clone()));
    }
    Ok(JobOutput {
        json: serde_json::to_value(&table)?,
        human: csv,
        files,
    })
}

fn run_graph(job: &JobSpec) -> Result<JobOutput> {
    let steps = steps_of(job)?;
    let window = job.window.expect("validated");
    let mut g = build_graph(&steps, &job.constraint, window, job.max_len)?;
    if let Some(StepSetSpec::Family {
        family, truncation, ..
    }) = &job.stepset
    {
        g.truncation = Some(format!("{family} {}", serde_json::to_string(truncation)?));
    }
    let dot = emit_dot(&g);
    let mut files = vec![];
    if let Some(p) = &job.output.dot {
        files.push((p.clone(), dot.clone()));
    }
    if let Some(p) = &job.output.tikz {
        files.push((p.clone(), emit_tikz(&g)));
    }
    Ok(JobOutput {
        json: json!({
            "vertices": g.vertices.len(),
            "edges": g.edges.len(),
            "acyclic": !g.has_directed_cycle(),
        }),
        human: dot,
        files,
    })
}

/// Points of a sequence line, `n = 0..terms`.
pub fn line_points(line: SequenceLine, terms: usize) -> Vec<LatticePoint> {
    (0..terms as i64)
        .map(|n| match line {
            SequenceLine::Diagonal => LatticePoint::new(n, n),
            SequenceLine::Row { y } => LatticePoint::new(n, y),
            SequenceLine::Column { x } => LatticePoint::new(x, n),
        })
        .collect()
}

fn run_sequence(job: &JobSpec) -> Result<JobOutput> {
    let steps = steps_of(job)?;
    let line = job.sequence.expect("validated");
    let terms = job.terms.unwrap_or(10).max(1);
    let pts = line_points(line, terms);
    let xs = pts.iter().map(|p| p.x);
    let ys = pts.iter().map(|p| p.y);
    let window = Window::new(
        xs.clone().min().unwrap(),
        xs.max().unwrap(),
        ys.clone().min().unwrap(),
        ys.max().unwrap(),
    )?;
    let table = count_table(&steps, window, &job.constraint, job.max_len)?;
    let counts: Vec<WalkCount> = pts
        .iter()
        .map(|p| table.get(*p).cloned().unwrap_or(WalkCount::Exact(BigUint::default())))
        .collect();
    let labels: Vec<String> = counts.iter().map(|c| c.label()).collect();
    let exact: Option<Vec<BigUint>> = counts.iter().map(|c| c.exact().cloned()).collect();
    let matches: Vec<OeisMatch> = match (&exact, job.oeis) {
        (_, OeisMode::Off) => vec![],
        (Some(v), mode) => oeis_lookup(v, mode)?,
        (None, _) => {
            return Err(Error::InvalidInput(
                "sequence has non-exact terms; cannot look it up".into(),
            ))
        }
    };
    let mut human = labels.join(",") + "\n";
    for m in &matches {
        let _ = writeln!(human, "{}  {}", m.id, m.name);
    }
    Ok(JobOutput {
        json: json!({ "points": pts, "terms": labels, "oeis": matches }),
        human,
        files: vec![],
    })
}

/// Exact replays of the dense-monoid construction, one line per check.
pub fn appendix_transcript(seq: &AppendixSequences) -> Vec<(String, bool)> {
    let d = seq.d;
    let mut lines = Vec::new();
    for (i, pk) in seq.pk.iter().enumerate() {
        let k = i as u64 + 1;
        let gap = pk.gap(d);
        let ok = gap.sign() == std::cmp::Ordering::Greater
            && gap.scale(&num_rational::BigRational::from_integer(k.into()))
                < QuadExt::from_int(1, d);
        lines.push((format!("p_{k} = {} with l = {}, a = {}: 0 < l*xi - a < 1/{k}", pk.p, pk.l, pk.a), ok));
    }
    for (i, r) in seq.radii.iter().enumerate() {
        lines.push((format!("R_{} = {r}", i + 1), true));
    }
    for (i, a) in seq.alphas.iter().enumerate() {
        let k = i as u64 + 1;
        let v = a.value();
        let lo = QuadExt::from_rational(num_rational::BigRational::new(1.into(), k.into()), d);
        let hi = QuadExt::from_rational(num_rational::BigRational::new(2.into(), k.into()), d);
        let phi_ok = a.phi > num_bigint::BigInt::from(k) * (num_bigint::BigInt::from(1) + &seq.radii[i]);
        lines.push((
            format!(
                "alpha_{k} = {} + {}*sqrt({d}) ~ {:.6}: in (1/{k}, 2/{k}) and phi > {k}(1 + R_{k})",
                a.int_part,
                a.phi,
                v.to_f64()
            ),
            v > lo && v < hi && phi_ok,
        ));
    }
    for (i, (b, c)) in seq.betas.iter().zip(&seq.gammas).enumerate() {
        let sum = &b.value() + &c.value();
        lines.push((
            format!(
                "beta_{0} + gamma_{0} = 4 (gamma ~ {1:.6})",
                i + 1,
                c.value().to_f64()
            ),
            sum == QuadExt::from_int(4, d),
        ));
    }
    lines
}

fn run_appendix(job: &JobSpec) -> Result<JobOutput> {
    let config = job.appendix.clone().unwrap_or_default();
    let seq = build_appendix_sequences(&config)?;
    let mut transcript = appendix_transcript(&seq);
    // a few element placements replayed against their defining inequality
    if let Some(pk) = seq.pk.first() {
        for p in [0i64, 7, 191] {
            let alpha = QuadExt::from_int(1, config.d);
            let choice = find_element(&p.into(), &alpha, 1, pk)?;
            let ok = replay_element_bound(&p.into(), &alpha, 1, pk, &choice.t);
            transcript.push((format!("element bound replay for p = {p}, t = {}", choice.t), ok));
        }
    }
    let sigma = seq.sigma();
    for (l, n) in [(1u64, 3u64), (1, 4)] {
        let ok = sum_set_check(&sigma, l, n, config.budget)?;
        transcript.push((format!("no sum of {n} generators lies in B({l})"), ok));
    }
    let human = transcript
        .iter()
        .map(|(s, ok)| format!("[{}] {s}", if *ok { "ok" } else { "FAIL" }))
        .collect::<Vec<_>>()
        .join("\n")
        + "\n";
    let all_ok = transcript.iter().all(|(_, ok)| *ok);
    let json = json!({
        "sequences": seq,
        "transcript": transcript.iter().map(|(s, ok)| json!({"check": s, "ok": ok})).collect::<Vec<_>>(),
        "ok": all_ok,
    });
    if !all_ok {
        return Err(Error::Postcondition(human));
    }
    Ok(JobOutput {
        json,
        human,
        files: vec![],
    })
}

fn run_verify(job: &JobSpec) -> Result<JobOutput> {
    let seed = job.seed.unwrap_or(2024);
    let results: Vec<SuiteResult> = run_all(seed);
    let mut human = String::new();
    for r in &results {
        let _ = writeln!(
            human,
            "{} {} ({} cases, {} ms)",
            if r.passed() { "PASS" } else { "FAIL" },
            r.name,
            r.cases,
            r.elapsed_ms
        );
        for f in r.failures.iter().take(5) {
            let _ = writeln!(human, "    {f}");
        }
    }
    let json = json!({ "seed": seed, "suites": results });
    if results.iter().any(|r| !r.passed()) {
        return Err(Error::Postcondition(human));
    }
    Ok(JobOutput {
        json,
        human,
        files: vec![],
    })
}
