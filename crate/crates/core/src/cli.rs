//! Command-line front end. `main` only forwards to [`run`].

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::error::{Error, Result};
use crate::geom::{Direction, LatticePoint, Window};
use crate::job::{run_job, Command, JobSpec, SequenceLine};
use crate::oeis::OeisMode;
use crate::stepset::{ConstraintSpec, Family, FamilyParams, StepSet, StepSetSpec, Truncation};

#[derive(Parser, Debug)]
#[command(name = "stepwalk", version, about = "Count and classify lattice walks with a fixed step set")]
struct Cli {
    #[command(subcommand)]
    command: Sub,
}

#[derive(Subcommand, Debug)]
enum Sub {
    /// Decide the geometric conditions and counting properties
    Classify(CommonArgs),
    /// Count walks to a target, or to every point of a window
    Count(CommonArgs),
    /// Write the labelled walk graph of a window as DOT and TikZ
    Graph(CommonArgs),
    /// Read a row, column or diagonal of counts, optionally looking it up in the OEIS
    Sequence(CommonArgs),
    /// Build and check the dense-monoid sequences
    Appendix(CommonArgs),
    /// Run the seeded property suites
    Verify(CommonArgs),
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
enum Format {
    #[default]
    Human,
    Json,
}

#[derive(Args, Debug, Default)]
struct CommonArgs {
    /// Read the whole job from a JSON file (other flags override it)
    #[arg(long)]
    job: Option<PathBuf>,
    /// Explicit steps as JSON, e.g. '[[0,1],[1,0]]'
    #[arg(long, conflicts_with = "family")]
    steps: Option<String>,
    /// Catalogued family name, e.g. EN or one_times_N
    #[arg(long)]
    family: Option<String>,
    /// Index bound for truncating an infinite family
    #[arg(long)]
    bound: Option<u64>,
    /// Coordinate bound for truncating a family given by a region
    #[arg(long = "trunc-window")]
    trunc_window: Option<i64>,
    /// Radicand of the irrational slope
    #[arg(long)]
    d: Option<u64>,
    /// Side of the irrational line, +1 or -1
    #[arg(long, allow_hyphen_values = true)]
    side: Option<i8>,
    /// full-plane, quadrant, punctured-quadrant, diagonal-chain, below-diagonal,
    /// halfplanes:a,b;c,d or a JSON object
    #[arg(long, allow_hyphen_values = true)]
    constraint: Option<String>,
    /// N for [0,N]^2, or xmin,xmax,ymin,ymax
    #[arg(long, allow_hyphen_values = true)]
    window: Option<String>,
    /// Target point x,y
    #[arg(long, allow_hyphen_values = true)]
    target: Option<String>,
    #[arg(long = "max-len")]
    max_len: Option<usize>,
    #[arg(long, conflicts_with_all = ["row", "column"])]
    diagonal: bool,
    #[arg(long, allow_hyphen_values = true)]
    row: Option<i64>,
    #[arg(long, allow_hyphen_values = true)]
    column: Option<i64>,
    /// Number of sequence terms
    #[arg(long)]
    terms: Option<usize>,
    #[arg(long, value_enum)]
    oeis: Option<OeisArg>,
    #[arg(long)]
    seed: Option<u64>,
    /// Number of alpha terms (appendix)
    #[arg(long)]
    alphas: Option<u64>,
    /// Number of beta/gamma pairs (appendix)
    #[arg(long)]
    pairs: Option<u64>,
    /// Work budget (appendix)
    #[arg(long)]
    budget: Option<u64>,
    #[arg(long = "json-out")]
    json_out: Option<PathBuf>,
    #[arg(long = "csv-out")]
    csv_out: Option<PathBuf>,
    #[arg(long = "dot-out")]
    dot_out: Option<PathBuf>,
    #[arg(long = "tikz-out")]
    tikz_out: Option<PathBuf>,
    /// What to print on standard output
    #[arg(long, value_enum, default_value_t = Format::Human)]
    format: Format,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum OeisArg {
    Off,
    Online,
    Fixture,
}

fn parse_ints(s: &str, n: usize, what: &str) -> Result<Vec<i64>> {
    let v: Vec<i64> = s
        .split(',')
        .map(|t| t.trim().parse::<i64>())
        .collect::<std::result::Result<_, _>>()
        .map_err(|e| Error::InvalidInput(format!("{what} `{s}`: {e}")))?;
    if v.len() != n {
        return Err(Error::InvalidInput(format!("{what} `{s}`: expected {n} integers")));
    }
    Ok(v)
}

fn parse_point(s: &str) -> Result<LatticePoint> {
    let v = parse_ints(s, 2, "point")?;
    Ok(LatticePoint::new(v[0], v[1]))
}

fn parse_window(s: &str) -> Result<Window> {
    if let Ok(n) = s.trim().parse::<i64>() {
        if n < 0 {
            return Err(Error::InvalidInput("window size must be nonnegative".into()));
        }
        return Ok(Window::square(n));
    }
    let v = parse_ints(s, 4, "window")?;
    Window::new(v[0], v[1], v[2], v[3])
}

pub fn parse_constraint(s: &str) -> Result<ConstraintSpec> {
    let s = s.trim();
    if s.starts_with('{') {
        return serde_json::from_str(s)
            .map_err(|e| Error::Spec(format!("constraint: {e}")));
    }
    if let Some(rest) = s.strip_prefix("halfplanes:") {
        let normals = rest
            .split(';')
            .map(|t| {
                let v = parse_ints(t, 2, "normal")?;
                Direction::new(v[0], v[1])
            })
            .collect::<Result<Vec<_>>>()?;
        return Ok(ConstraintSpec::HalfplaneIntersection { normals });
    }
    Ok(match s {
        "full-plane" | "none" => ConstraintSpec::FullPlane,
        "quadrant" => ConstraintSpec::quadrant(),
        "punctured-quadrant" => ConstraintSpec::PuncturedQuadrant,
        "diagonal-chain" => ConstraintSpec::DiagonalChain,
        "below-diagonal" => ConstraintSpec::BelowDiagonal,
        other => return Err(Error::InvalidInput(format!("unknown constraint `{other}`"))),
    })
}

fn build_job(command: Command, a: &CommonArgs) -> Result<JobSpec> {
    let mut job = match &a.job {
        Some(path) => {
            let j = JobSpec::from_json(&std::fs::read_to_string(path)?)?;
            if j.command != command {
                return Err(Error::Spec(format!(
                    "job file is for `{:?}`, not `{command:?}`",
                    j.command
                )));
            }
            j
        }
        None => JobSpec::new(command),
    };
    if let Some(s) = &a.steps {
        let pairs: Vec<(i64, i64)> = serde_json::from_str(s)
            .map_err(|e| Error::Spec(format!("steps: {e}")))?;
        job.stepset = Some(StepSetSpec::Explicit(StepSet::from_pairs(&pairs)?));
    }
    if let Some(name) = &a.family {
        let family = Family::from_name(name)?;
        job.stepset = Some(StepSetSpec::Family {
            family,
            params: FamilyParams {
                d: a.d,
                side: a.side,
            },
            truncation: Truncation {
                bound: a.bound,
                window: a.trunc_window,
            },
        });
    }
    if let Some(c) = &a.constraint {
        job.constraint = parse_constraint(c)?;
    }
    if let Some(w) = &a.window {
        job.window = Some(parse_window(w)?);
    }
    if let Some(t) = &a.target {
        job.target = Some(parse_point(t)?);
    }
    job.max_len = a.max_len.or(job.max_len);
    if a.diagonal {
        job.sequence = Some(SequenceLine::Diagonal);
    } else if let Some(y) = a.row {
        job.sequence = Some(SequenceLine::Row { y });
    } else if let Some(x) = a.column {
        job.sequence = Some(SequenceLine::Column { x });
    }
    job.terms = a.terms.or(job.terms);
    if let Some(o) = a.oeis {
        job.oeis = match o {
            OeisArg::Off => OeisMode::Off,
            OeisArg::Online => OeisMode::Online,
            OeisArg::Fixture => OeisMode::Fixture,
        };
    }
    job.seed = a.seed.or(job.seed);
    if a.alphas.is_some() || a.pairs.is_some() || a.budget.is_some() || (command == Command::Appendix && a.d.is_some()) {
        let mut cfg = job.appendix.clone().unwrap_or_default();
        cfg.alphas = a.alphas.unwrap_or(cfg.alphas);
        cfg.pairs = a.pairs.unwrap_or(cfg.pairs);
        cfg.budget = a.budget.unwrap_or(cfg.budget);
        cfg.d = a.d.unwrap_or(cfg.d);
        job.appendix = Some(cfg);
    }
    let o = &mut job.output;
    o.json = a.json_out.clone().or(o.json.take());
    o.csv = a.csv_out.clone().or(o.csv.take());
    o.dot = a.dot_out.clone().or(o.dot.take());
    o.tikz = a.tikz_out.clone().or(o.tikz.take());
    job.validate()?;
    Ok(job)
}

fn execute(command: Command, a: &CommonArgs, stdout: &mut dyn Write) -> Result<()> {
    let job = build_job(command, a)?;
    let out = run_job(&job)?;
    for (path, text) in &out.files {
        std::fs::write(path, text)?;
    }
    match a.format {
        Format::Human => stdout.write_all(out.human.as_bytes())?,
        Format::Json => writeln!(stdout, "{}", serde_json::to_string_pretty(&out.json)?)?,
    }
    Ok(())
}

/// Run the command line and return the process exit code: 0 on success, 1 on invalid
/// input, 2 when a work budget is exhausted, 3 when an online lookup fails.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 {
                stdout.write_all(text.as_bytes())
            } else {
                stderr.write_all(text.as_bytes())
            };
            return code;
        }
    };
    let (command, args) = match &cli.command {
        Sub::Classify(a) => (Command::Classify, a),
        Sub::Count(a) => (Command::Count, a),
        Sub::Graph(a) => (Command::Graph, a),
        Sub::Sequence(a) => (Command::Sequence, a),
        Sub::Appendix(a) => (Command::Appendix, a),
        Sub::Verify(a) => (Command::Verify, a),
    };
    match execute(command, args, stdout) {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            e.exit_code()
        }
    }
}
