//! The `knot` command line.
//!
//! Exit codes: 0 success, 1 unparsable input, 2 resource limit, 3 negative
//! decision (`realizable` on a non-realizable code).

pub mod report;
pub mod table;

use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use knot_core::anyon::{self, jones_estimate, jones_point, Calibration};
use knot_core::burau;
use knot_core::diagram::{parse_unsigned_gauss, realizable_unsigned, DiagramError};
use knot_core::skein::{self, SkeinBudget, SkeinEngine, SkeinError};
use knot_core::{BraidWord, GaussCode, PDDiagram};
use num_complex::Complex64;
use serde_json::json;

pub use report::InvariantReport;

/// Environment variable overriding the default skein node budget.
pub const BUDGET_ENV: &str = "KNOT_BUDGET";

#[derive(Parser, Debug)]
#[command(
    name = "knot",
    version,
    about = "Knot invariants, Burau matrices and a Fibonacci-anyon simulator"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Compute an exact invariant of a braid closure or Gauss code.
    Invariant(InvariantArgs),
    /// Decide whether a Gauss code comes from a planar diagram.
    Realizable(RealizableArgs),
    /// Estimate the Jones value at e^(2πi/5) with the anyon simulator.
    Estimate(EstimateArgs),
    /// Enumerate braid words and group their knot closures by Jones polynomial.
    Table(TableArgs),
    /// Time memoized against plain skein recursion on σ₁^c closures.
    Bench(BenchArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Invariant {
    Homfly,
    Jones,
    JonesAt,
    Coeff,
    Burau,
}

#[derive(clap::Args, Debug)]
pub struct InvariantArgs {
    /// Braid word such as "1 -2 1" or "n=3 1 -2"; `@path` reads a file.
    #[arg(long, conflicts_with = "gauss", required_unless_present = "gauss")]
    pub braid: Option<String>,
    /// Signed Gauss code such as "O1+U2+O3+U1+O2+U3+"; `@path` reads a file.
    #[arg(long)]
    pub gauss: Option<String>,
    #[arg(long, value_enum, default_value = "homfly")]
    pub invariant: Invariant,
    /// Complex parameter: "1+0i", "-0.5+0.866i", "2" or "root:K" for e^(2πi/K).
    #[arg(long, allow_hyphen_values = true)]
    pub t: Option<String>,
    /// Power of z whose coefficient is extracted.
    #[arg(long, allow_hyphen_values = true)]
    pub k: Option<i32>,
    /// Maximum skein recursion nodes.
    #[arg(long)]
    pub budget: Option<usize>,
    /// Evaluate skein branches on all cores.
    #[arg(long)]
    pub parallel: bool,
}

#[derive(clap::Args, Debug)]
pub struct RealizableArgs {
    #[arg(long)]
    pub gauss: String,
    /// Treat the code as unsigned ("O1 U2 …") and search all signings.
    #[arg(long)]
    pub unsigned: bool,
}

#[derive(clap::Args, Debug)]
pub struct EstimateArgs {
    #[arg(long)]
    pub braid: String,
    #[arg(long, default_value_t = 0.1)]
    pub epsilon: f64,
    #[arg(long, default_value_t = 0.05)]
    pub delta: f64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Also compute the exact value and the error.
    #[arg(long)]
    pub check: bool,
    #[arg(long)]
    pub budget: Option<usize>,
}

#[derive(clap::Args, Debug)]
pub struct TableArgs {
    #[arg(long)]
    pub strands: usize,
    #[arg(long)]
    pub maxlen: usize,
    #[arg(long)]
    pub budget: Option<usize>,
}

#[derive(clap::Args, Debug)]
pub struct BenchArgs {
    #[arg(long, default_value_t = 14)]
    pub max_crossings: usize,
    /// Node budget for the unmemoized runs.
    #[arg(long)]
    pub budget: Option<usize>,
}

/// Result of one invocation.
#[derive(Debug, Default, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

#[derive(Debug)]
enum Failure {
    Input(String),
    Resource(String),
}

impl Failure {
    fn code(&self) -> i32 {
        match self {
            Failure::Input(_) => 1,
            Failure::Resource(_) => 2,
        }
    }
}

impl From<SkeinError> for Failure {
    fn from(e: SkeinError) -> Self {
        if e.is_budget() {
            Failure::Resource(e.to_string())
        } else {
            Failure::Input(e.to_string())
        }
    }
}

impl From<DiagramError> for Failure {
    fn from(e: DiagramError) -> Self {
        match e {
            DiagramError::GuardExceeded(..) => Failure::Resource(e.to_string()),
            _ => Failure::Input(e.to_string()),
        }
    }
}

impl From<anyon::AnyonError> for Failure {
    fn from(e: anyon::AnyonError) -> Self {
        match e {
            anyon::AnyonError::TooManyAnyons(_) => Failure::Resource(e.to_string()),
            anyon::AnyonError::Skein(s) => s.into(),
            _ => Failure::Input(e.to_string()),
        }
    }
}

fn input(e: impl ToString) -> Failure {
    Failure::Input(e.to_string())
}

/// Parse arguments (program name first) and run, reading `KNOT_BUDGET` from
/// `env_budget`.
pub fn run<I, S>(args: I, env_budget: Option<String>) -> Outcome
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let text = e.render().to_string();
            return match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => Outcome {
                    code: 0,
                    stdout: text,
                    stderr: String::new(),
                },
                _ => Outcome {
                    code: 1,
                    stdout: String::new(),
                    stderr: text,
                },
            };
        }
    };
    let result = match &cli.command {
        Command::Invariant(a) => cmd_invariant(a, env_budget.as_deref()),
        Command::Realizable(a) => cmd_realizable(a),
        Command::Estimate(a) => cmd_estimate(a, env_budget.as_deref()),
        Command::Table(a) => cmd_table(a, env_budget.as_deref()),
        Command::Bench(a) => cmd_bench(a, env_budget.as_deref()),
    };
    match result {
        Ok((code, stdout)) => Outcome {
            code,
            stdout,
            stderr: String::new(),
        },
        Err(f) => {
            let code = f.code();
            let (Failure::Input(m) | Failure::Resource(m)) = f;
            Outcome {
                code,
                stdout: String::new(),
                stderr: format!("error: {m}\n"),
            }
        }
    }
}

/// `@path` reads the argument from a file.
fn resolve(arg: &str) -> Result<String, Failure> {
    match arg.strip_prefix('@') {
        Some(path) => std::fs::read_to_string(path)
            .map(|s| s.trim().to_string())
            .map_err(|e| input(format!("cannot read {path}: {e}"))),
        None => Ok(arg.to_string()),
    }
}

fn budget(flag: Option<usize>, env: Option<&str>) -> Result<SkeinBudget, Failure> {
    let nodes = match (flag, env) {
        (Some(n), _) => n,
        (None, Some(v)) => v
            .trim()
            .parse()
            .map_err(|_| input(format!("{BUDGET_ENV}={v} is not a count")))?,
        (None, None) => SkeinBudget::default().max_nodes,
    };
    SkeinBudget::new(SkeinBudget::default().max_crossings, nodes, true).map_err(input)
}

/// `re+imi`, `re`, or `root:K`.
pub fn parse_complex(text: &str) -> Result<Complex64, String> {
    let s: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    let bad = || format!("cannot parse complex number `{text}`");
    if let Some(k) = s.strip_prefix("root:") {
        let k: f64 = k.parse().map_err(|_| bad())?;
        if k == 0.0 {
            return Err(bad());
        }
        return Ok(Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI / k));
    }
    let Some(body) = s.strip_suffix('i') else {
        return s.parse::<f64>().map(|re| Complex64::new(re, 0.0)).map_err(|_| bad());
    };
    // Split before the last sign that is not an exponent sign.
    let bytes = body.as_bytes();
    let split = (1..bytes.len())
        .rev()
        .find(|&k| (bytes[k] == b'+' || bytes[k] == b'-') && !matches!(bytes[k - 1], b'e' | b'E'));
    let (re, im) = match split {
        Some(k) => (&body[..k], &body[k..]),
        None => ("0", body),
    };
    let im = match im {
        "" | "+" => 1.0,
        "-" => -1.0,
        x => x.parse::<f64>().map_err(|_| bad())?,
    };
    let re: f64 = re.parse().map_err(|_| bad())?;
    Ok(Complex64::new(re, im))
}

/// Rounded to 12 decimals; the imaginary part is dropped when it rounds to 0.
pub fn format_complex(c: Complex64) -> String {
    let r = |x: f64| {
        let v = (x * 1e12).round() / 1e12;
        if v == 0.0 {
            0.0
        } else {
            v
        }
    };
    let (re, im) = (r(c.re), r(c.im));
    if im == 0.0 {
        format!("{re}")
    } else if im < 0.0 {
        format!("{re}-{}i", -im)
    } else {
        format!("{re}+{im}i")
    }
}

fn parse_braid(text: &str) -> Result<BraidWord, Failure> {
    BraidWord::parse(&resolve(text)?).map_err(input)
}

fn cmd_invariant(a: &InvariantArgs, env: Option<&str>) -> Result<(i32, String), Failure> {
    let start = Instant::now();
    let budget = budget(a.budget, env)?;
    let (descriptor, braid, diagram) = match (&a.braid, &a.gauss) {
        (Some(b), _) => {
            let b = parse_braid(b)?;
            let d = PDDiagram::from_braid(&b.free_reduce());
            (format!("braid:{b}"), Some(b), d)
        }
        (None, Some(g)) => {
            let code = GaussCode::parse(&resolve(g)?)?;
            let d = code.to_diagram()?;
            (format!("gauss:{code}"), None, d)
        }
        (None, None) => return Err(input("one of --braid or --gauss is required")),
    };
    let name = a
        .invariant
        .to_possible_value()
        .map(|v| v.get_name().to_string())
        .unwrap_or_default();
    let mut report = InvariantReport::new(descriptor, name);
    report.meta("budget_nodes", budget.max_nodes);
    let engine = SkeinEngine::new(budget).parallel(a.parallel);
    let t = a.t.as_deref().map(parse_complex).transpose().map_err(input)?;
    report.value = match a.invariant {
        Invariant::Homfly => engine.homfly(&diagram)?.to_string(),
        Invariant::Jones => {
            report.meta("variable", "s = t^(1/2)");
            engine.homfly(&diagram)?.specialize_jones().map_err(input)?.to_string()
        }
        Invariant::JonesAt => {
            let t = t.ok_or_else(|| input("--invariant jones-at needs --t"))?;
            report.meta("t", format_complex(t));
            let v = engine.homfly(&diagram)?.specialize_jones().map_err(input)?;
            format_complex(skein::jones_eval(&v, t)?)
        }
        Invariant::Coeff => {
            let k = a.k.ok_or_else(|| input("--invariant coeff needs --k"))?;
            report.meta("k", k).meta("variable", "a");
            engine.homfly(&diagram)?.coeff_z(k).fmt_var("a")
        }
        Invariant::Burau => {
            let b = braid.ok_or_else(|| input("--invariant burau needs --braid"))?;
            match t {
                None => burau::burau_symbolic(&b).to_string(),
                Some(t) => {
                    report.meta("t", format_complex(t));
                    let m = burau::burau_numeric(&b, t).map_err(input)?;
                    let mut s = String::new();
                    for i in 0..m.nrows() {
                        let row: Vec<String> = (0..m.ncols()).map(|j| format_complex(m[(i, j)])).collect();
                        s.push_str(&format!("[{}]\n", row.join("; ")));
                    }
                    s
                }
            }
        }
    };
    if a.invariant != Invariant::Burau {
        let stats = engine.stats();
        report
            .meta("skein_nodes", stats.nodes)
            .meta("memo_hits", stats.memo_hits);
        report.meta("crossings", diagram.crossing_count());
    }
    report.elapsed_us = start.elapsed().as_micros() as u64;
    Ok((0, report.to_string()))
}

fn cmd_realizable(a: &RealizableArgs) -> Result<(i32, String), Failure> {
    let start = Instant::now();
    let text = resolve(&a.gauss)?;
    let mut report = InvariantReport::new(format!("gauss:{text}"), "realizable");
    let ok = if a.unsigned {
        let seq = parse_unsigned_gauss(&text)?;
        report.meta("mode", "unsigned").meta("crossings", seq.len() / 2);
        realizable_unsigned(&seq)?
    } else {
        let code = GaussCode::parse(&text)?;
        let s = code.surface();
        report
            .meta("mode", "signed")
            .meta("crossings", code.crossing_count())
            .meta("vertices", s.vertices)
            .meta("edges", s.edges)
            .meta("faces", s.faces)
            .meta("euler", s.euler_characteristic());
        code.realizable()
    };
    report.value = ok.to_string();
    report.elapsed_us = start.elapsed().as_micros() as u64;
    Ok((if ok { 0 } else { 3 }, report.to_string()))
}

fn cmd_estimate(a: &EstimateArgs, env: Option<&str>) -> Result<(i32, String), Failure> {
    let start = Instant::now();
    let b = parse_braid(&a.braid)?;
    let cal = Calibration::frozen();
    let e = jones_estimate(&b, a.epsilon, a.delta, a.seed, &cal)?;
    let mut report = InvariantReport::new(format!("braid:{b}"), "jones-estimate");
    report.value = format_complex(e.value);
    report
        .meta("t", "e^(2πi/5)")
        .meta("epsilon", a.epsilon)
        .meta("delta", a.delta)
        .meta("seed", a.seed)
        .meta("samples_per_part", e.samples_per_part)
        .meta("samples", e.total_samples())
        .meta("scale", e.scale)
        .meta("bound", a.epsilon * e.scale)
        .meta("calibration_mirror", cal.mirror)
        .meta("calibration_alpha", format_complex(cal.alpha))
        .meta("calibration_delta", format_complex(cal.delta));
    if a.check {
        match skein::jones_at_braid(&b, jones_point(), budget(a.budget, env)?) {
            Ok(exact) => {
                let err = (exact - e.value).norm();
                report
                    .meta("exact", format_complex(exact))
                    .meta("error", err)
                    .meta("within_bound", err <= a.epsilon * e.scale);
            }
            Err(err) if err.is_budget() => {
                report.meta("exact", format!("unavailable: {err}"));
            }
            Err(err) => return Err(err.into()),
        }
    }
    // Reproducibility under --seed covers everything but the timing line.
    report.elapsed_us = start.elapsed().as_micros() as u64;
    Ok((0, report.to_string()))
}

fn cmd_table(a: &TableArgs, env: Option<&str>) -> Result<(i32, String), Failure> {
    if a.strands == 0 || a.strands > table::MAX_STRANDS || a.maxlen > table::MAX_LENGTH {
        return Err(Failure::Resource(format!(
            "table limited to 1..={} strands and length ≤ {}",
            table::MAX_STRANDS,
            table::MAX_LENGTH
        )));
    }
    let engine = SkeinEngine::new(budget(a.budget, env)?);
    let t = table::knot_table(a.strands, a.maxlen, &engine)?;
    let mut out = format!(
        "strands={}\nmaxlen={}\nwords={}\nknots={}\ngroups={}\n",
        a.strands,
        a.maxlen,
        t.words,
        t.knots,
        t.groups.len()
    );
    for g in &t.groups {
        let row = json!({
            "size": g.members.len(),
            "representative": g.representative().to_string(),
            "jones": g.jones,
            "homfly": g.homfly,
        });
        out.push_str(&format!("row={row}\n"));
    }
    Ok((0, out))
}

fn cmd_bench(a: &BenchArgs, env: Option<&str>) -> Result<(i32, String), Failure> {
    let plain_budget = budget(a.budget, env)?;
    let mut out = format!("instances={}\n", a.max_crossings);
    for c in 1..=a.max_crossings {
        let b = BraidWord::new(2, vec![1; c]).map_err(input)?;
        let d = PDDiagram::from_braid(&b);
        let memo = SkeinEngine::new(SkeinBudget {
            max_crossings: c.max(1),
            ..plain_budget
        });
        let t0 = Instant::now();
        memo.homfly(&d)?;
        let memo_ms = t0.elapsed().as_secs_f64() * 1e3;
        let plain = SkeinEngine::new(
            SkeinBudget {
                max_crossings: c.max(1),
                ..plain_budget
            }
            .unmemoized(),
        );
        let t1 = Instant::now();
        let status = match plain.homfly(&d) {
            Ok(_) => "ok",
            Err(e) if e.is_budget() => "budget",
            Err(e) => return Err(e.into()),
        };
        let plain_ms = t1.elapsed().as_secs_f64() * 1e3;
        let row = json!({
            "crossings": c,
            "memo_nodes": memo.stats().nodes,
            "memo_hits": memo.stats().memo_hits,
            "memo_ms": memo_ms,
            "plain_nodes": plain.stats().nodes.min(plain_budget.max_nodes),
            "plain_status": status,
            "plain_ms": plain_ms,
            "bound": 1u64 << c.min(63),
        });
        out.push_str(&format!("row={row}\n"));
    }
    Ok((0, out))
}
