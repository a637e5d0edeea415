//! The `gromov` command line, usable in-process through [`run`] and
//! [`run_args`].
//!
//! Exit codes: 0 on success, 1 when a hypothesis of the width formula fails
//! (the report names a witness), 2 on malformed input.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{ArgGroup, Args, Parser, Subcommand, ValueEnum};
use gromov_core::rational::{self, Rational};
use gromov_core::{
    degree_check, edge_cross_check, gromov_width, seidel_structure, ActionData, Hypothesis,
    SeidelStatus, SeidelStructure, ToricError, WidthError, WidthReport,
};
use serde_json::{json, Value};

pub mod source;

pub use source::Source;
use source::{parse_direction, parse_grassmannian, parse_product, resolve, Resolved};

pub const EXIT_OK: i32 = 0;
pub const EXIT_HYPOTHESIS: i32 = 1;
pub const EXIT_INPUT: i32 = 2;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Command {
    Width,
    Check,
    Fixed,
    Edges,
    Seidel,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum)]
pub enum Format {
    #[default]
    Text,
    Json,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Request {
    pub command: Command,
    pub source: Source,
    pub format: Format,
}

/// Rendered report and process exit code.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub output: String,
    pub code: i32,
}

/// Why a request did not produce a report.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Failure {
    Input(String),
    Hypothesis {
        hypothesis: &'static str,
        witness: String,
        /// `H_max - s` as a JSON number or "p/q" string.
        raw_difference: Option<Value>,
        message: String,
    },
}

impl Failure {
    pub(crate) fn input(msg: impl Into<String>) -> Self {
        Failure::Input(msg.into())
    }

    pub(crate) fn not_monotone(msg: String) -> Self {
        Failure::Hypothesis {
            hypothesis: "monotone",
            message: format!("NOT MONOTONE: {msg}"),
            witness: msg,
            raw_difference: None,
        }
    }

    fn code(&self) -> i32 {
        match self {
            Failure::Input(_) => EXIT_INPUT,
            Failure::Hypothesis { .. } => EXIT_HYPOTHESIS,
        }
    }

    fn render(&self, format: Format) -> String {
        match (self, format) {
            (Failure::Input(msg), Format::Text) => format!("error: {msg}\n"),
            (Failure::Hypothesis { message, .. }, Format::Text) => format!("{message}\n"),
            (Failure::Input(msg), Format::Json) => pretty(&json!({
                "status": "input_error",
                "message": msg,
            })),
            (
                Failure::Hypothesis {
                    hypothesis,
                    witness,
                    raw_difference,
                    message,
                },
                Format::Json,
            ) => pretty(&json!({
                "status": "hypothesis_failed",
                "hypothesis": hypothesis,
                "witness": witness,
                "raw_difference": raw_difference,
                "message": message,
            })),
        }
    }
}

impl From<WidthError> for Failure {
    fn from(e: WidthError) -> Self {
        match &e {
            WidthError::HypothesisFailed {
                witness,
                raw_difference,
            } => Failure::Hypothesis {
                hypothesis: hypothesis_key(witness.hypothesis()),
                witness: witness.to_string(),
                raw_difference: raw_difference.as_ref().map(qjson),
                message: e.to_string(),
            },
            WidthError::NotEnoughComponents => Failure::input(e.to_string()),
        }
    }
}

fn hypothesis_key(h: Hypothesis) -> &'static str {
    match h {
        Hypothesis::Semifree => "semifree",
        Hypothesis::IsolatedMax => "isolated_max",
        Hypothesis::MonotoneConsistency => "monotone_consistency",
    }
}

#[derive(Parser)]
#[command(
    name = "gromov",
    version,
    about = "Gromov width of monotone manifolds with a semifree circle action"
)]
struct Cli {
    #[command(subcommand)]
    command: CommandArgs,
}

#[derive(Subcommand)]
enum CommandArgs {
    /// Width H(F_max) - s, after checking the hypotheses
    Width(SourceArgs),
    /// Check semifreeness, isolated maximum and normalization
    Check(SourceArgs),
    /// List fixed components by descending H
    Fixed(SourceArgs),
    /// Edge spheres of a toric action with c1, area and lattice length
    Edges(SourceArgs),
    /// Vanishing pattern of the Seidel element
    Seidel(SourceArgs),
}

#[derive(Args)]
#[command(group(
    ArgGroup::new("source")
        .required(true)
        .args(["action", "toric", "grassmannian", "product"])
))]
struct SourceArgs {
    /// Fixed-point data in JSON
    #[arg(long, value_name = "FILE")]
    action: Option<PathBuf>,
    /// Delzant polytope in JSON; needs --dir
    #[arg(long, value_name = "FILE", requires = "dir")]
    toric: Option<PathBuf>,
    /// Primitive subcircle direction for --toric
    #[arg(long, value_name = "A,B,...", allow_hyphen_values = true)]
    dir: Option<String>,
    /// Standard action on Gr(k,m)
    #[arg(long, value_name = "K,M")]
    grassmannian: Option<String>,
    /// Diagonal action on a product, e.g. "gr(2,4),toric(fig1.json,0,1)"
    #[arg(long, value_name = "SRC,...")]
    product: Option<String>,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

impl SourceArgs {
    fn source(&self) -> Result<Source, Failure> {
        if self.dir.is_some() && self.toric.is_none() {
            return Err(Failure::input("--dir only applies to --toric"));
        }
        if let Some(p) = &self.action {
            return Ok(Source::ActionFile(p.clone()));
        }
        if let Some(p) = &self.toric {
            let dir = self.dir.as_deref().expect("clap enforces --dir");
            return Ok(Source::Toric {
                polytope: p.clone(),
                xi: parse_direction(dir)?,
            });
        }
        if let Some(g) = &self.grassmannian {
            return Ok(Source::Grassmannian(parse_grassmannian(g)?));
        }
        let p = self.product.as_deref().expect("clap enforces one source");
        parse_product(p)
    }
}

/// Parses arguments (program name first) and runs the request.
pub fn run_args<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            return Outcome {
                output: e.render().to_string(),
                code,
            };
        }
    };
    let (command, a) = match cli.command {
        CommandArgs::Width(a) => (Command::Width, a),
        CommandArgs::Check(a) => (Command::Check, a),
        CommandArgs::Fixed(a) => (Command::Fixed, a),
        CommandArgs::Edges(a) => (Command::Edges, a),
        CommandArgs::Seidel(a) => (Command::Seidel, a),
    };
    match a.source() {
        Ok(source) => run(&Request {
            command,
            source,
            format: a.format,
        }),
        Err(f) => Outcome {
            output: f.render(a.format),
            code: f.code(),
        },
    }
}

pub fn run(req: &Request) -> Outcome {
    match execute(req) {
        Ok(output) => Outcome {
            output,
            code: EXIT_OK,
        },
        Err(f) => Outcome {
            output: f.render(req.format),
            code: f.code(),
        },
    }
}

fn execute(req: &Request) -> Result<String, Failure> {
    let r = resolve(&req.source)?;
    match req.command {
        Command::Width => {
            check_hypotheses(&r)?;
            let report = gromov_width(&r.action)?;
            Ok(render_width(&report, req.format))
        }
        Command::Check => Ok(render_check(&check_hypotheses(&r)?, req.format)),
        Command::Fixed => Ok(render_fixed(&r.action, req.format)),
        Command::Edges => render_edges(&r, req.format),
        Command::Seidel => {
            check_hypotheses(&r)?;
            let st = seidel_structure(&r.action).map_err(seidel_failure)?;
            degree_check(&st).map_err(seidel_failure)?;
            Ok(render_seidel(&st, req.format))
        }
    }
}

fn seidel_failure(e: gromov_core::SeidelError) -> Failure {
    match e {
        gromov_core::SeidelError::Width(w) => w.into(),
        e => Failure::input(e.to_string()),
    }
}

/// Face isotropy of toric factors first, then the fixed-point checks.
fn check_hypotheses(r: &Resolved) -> Result<Vec<Hypothesis>, Failure> {
    if let Some(w) = &r.face_witness {
        return Err(WidthError::hypothesis_failed(&r.action, w.clone()).into());
    }
    r.action
        .check_all()
        .map_err(|w| WidthError::hypothesis_failed(&r.action, w).into())
}

/// Integers as JSON numbers, everything else as a "p/q" string.
pub fn qjson(r: &Rational) -> Value {
    match rational::to_i64(r) {
        Some(i) => json!(i),
        None => json!(rational::format(r)),
    }
}

fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("JSON values serialize");
    s.push('\n');
    s
}

fn render_width(r: &WidthReport, format: Format) -> String {
    match format {
        Format::Text => {
            let hyps: Vec<String> = r.hypothesis_log.iter().map(|h| h.to_string()).collect();
            format!(
                "Gromov width: {}\nH(F_max) = {} [{}]\nH(F_smax) = {} [{}]\nhypotheses: {}\n",
                rational::format(&r.width),
                rational::format(&r.h_max),
                r.max_component,
                rational::format(&r.s),
                r.second_level_components.join(", "),
                hyps.join(", ")
            )
        }
        Format::Json => pretty(&json!({
            "width": qjson(&r.width),
            "h_max": qjson(&r.h_max),
            "s": qjson(&r.s),
            "max_component": r.max_component,
            "second_level_components": r.second_level_components,
            "hypotheses": r.hypothesis_log.iter().map(|h| hypothesis_key(*h)).collect::<Vec<_>>(),
        })),
    }
}

fn render_check(log: &[Hypothesis], format: Format) -> String {
    match format {
        Format::Text => {
            let mut out = String::new();
            for h in log {
                writeln!(out, "{h}: ok").unwrap();
            }
            out
        }
        Format::Json => pretty(&json!({
            "status": "ok",
            "hypotheses": log.iter().map(|h| hypothesis_key(*h)).collect::<Vec<_>>(),
        })),
    }
}

fn render_fixed(a: &ActionData, format: Format) -> String {
    match format {
        Format::Json => {
            let mut s = a.to_json();
            s.push('\n');
            s
        }
        Format::Text => {
            let mut out = format!("n = {}\n", a.n());
            for c in a.sorted_by_h() {
                let w: Vec<String> = c.weights.iter().map(|w| w.to_string()).collect();
                writeln!(
                    out,
                    "H = {:>4}  dim {:>2}  weights [{}]  {}",
                    rational::format(&c.h),
                    c.complex_dim,
                    w.join(","),
                    c.label
                )
                .unwrap();
            }
            out
        }
    }
}

fn render_edges(r: &Resolved, format: Format) -> Result<String, Failure> {
    let spec = r
        .toric
        .as_ref()
        .ok_or_else(|| Failure::input("edges needs a single --toric source"))?;
    let edges = edge_cross_check(spec).map_err(|e| match e {
        ToricError::NotSemifree(w) => WidthError::hypothesis_failed(&r.action, w).into(),
        e => Failure::input(e.to_string()),
    })?;
    Ok(match format {
        Format::Text => {
            let mut out = String::new();
            for e in &edges {
                writeln!(
                    out,
                    "{} -> {}: weight {}, c1 = {}, area = {}, lattice length = {}",
                    e.from,
                    e.to,
                    e.weight,
                    e.c1,
                    rational::format(&e.area),
                    rational::format(&e.lattice_length)
                )
                .unwrap();
            }
            out
        }
        Format::Json => pretty(&Value::Array(
            edges
                .iter()
                .map(|e| {
                    json!({
                        "from": e.from,
                        "to": e.to,
                        "weight": e.weight,
                        "c1": e.c1,
                        "area": qjson(&e.area),
                        "lattice_length": qjson(&e.lattice_length),
                    })
                })
                .collect(),
        )),
    })
}

fn status_key(s: SeidelStatus) -> &'static str {
    match s {
        SeidelStatus::PointClass => "point_class",
        SeidelStatus::ForcedZero => "forced_zero",
        SeidelStatus::Unconstrained => "unconstrained",
    }
}

fn render_seidel(st: &SeidelStructure, format: Format) -> String {
    match format {
        Format::Text => {
            let mut out = format!("{}\n", st.formula());
            for e in st.entries.iter().rev() {
                writeln!(
                    out,
                    "a_{}: {} (degree {}, q^{})",
                    e.index, e.status, e.cohomology_degree, e.q_exponent
                )
                .unwrap();
            }
            out
        }
        Format::Json => pretty(&json!({
            "n": st.n,
            "s": st.s,
            "formula": st.formula(),
            "entries": st.entries.iter().rev().map(|e| json!({
                "index": e.index,
                "status": status_key(e.status),
                "degree": e.cohomology_degree,
                "q_exponent": e.q_exponent,
            })).collect::<Vec<_>>(),
        })),
    }
}
