//! Input documents, report documents and the two analysis pipelines behind
//! the command-line front end.

use std::fmt::Write as _;
use std::time::{Duration, Instant};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::algebra::field::parse_rational;
use crate::algebra::{parse_polynomial, ParseError, PolyMatrix, Polynomial, Rational, Ring};
use crate::basis::{with_task_timeout, EngineError};
use crate::family::{
    analyze_family, default_samples, AnalysisMode, DeterminantalFamily, FamilyError, FamilyOptions,
    FamilyReport, Semicontinuity, TopologicalVerdict,
};
use crate::germ::{build_germ, verify_ids, DeterminantalGerm, GermError, IdsCertificate};
use crate::invariants::{vanishing_euler_certified, GenericityContext, InvariantError, InvariantReport};

pub const TOOL_NAME: &str = "idsing";
pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

pub const REDUCEDNESS_CAVEAT: &str =
    "smoothness off the origin was tested with the Jacobian criterion, assuming the minors ideal is reduced";

#[derive(Debug, Clone, PartialEq, Error)]
pub enum DocumentError {
    #[error("line {line}: unknown section `{word}`")]
    UnknownSection { line: usize, word: String },
    #[error("line {line}: section `{section}` given twice")]
    Duplicate { line: usize, section: &'static str },
    #[error("missing section `{0}`")]
    Missing(&'static str),
    #[error("line {line}: bad value for `{key}`: {value}")]
    BadValue { line: usize, key: String, value: String },
    #[error("line {line}: matrix row has {found} entries, expected {expected}")]
    Ragged {
        line: usize,
        found: usize,
        expected: usize,
    },
    #[error("variable name `{0}` declared twice")]
    DuplicateVariable(String),
    #[error("matrix entry ({row}, {col}): {source}")]
    Expression {
        row: usize,
        col: usize,
        source: ParseError,
    },
    #[error("s = {s} must satisfy 1 <= s <= {max}")]
    MinorSize { s: usize, max: usize },
}

/// Analysis options given in the `options` line.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct InputOptions {
    pub seed: Option<u64>,
    pub bound: Option<u64>,
    pub samples: Option<Vec<Rational>>,
    pub mode: Option<AnalysisMode>,
}

/// A parsed input file.
///
/// ```text
/// vars x y z w
/// param t
/// s 2
/// matrix
/// x, y, z
/// y, z, w + t*x
/// options seed=7 bound=32 samples=1/2,1/3 mode=generic
/// ```
#[derive(Clone, Debug, PartialEq)]
pub struct InputDocument {
    pub variables: Vec<String>,
    pub parameter: Option<String>,
    pub s: usize,
    pub matrix: Vec<Vec<String>>,
    pub options: InputOptions,
    /// The file as given.
    pub source: String,
}

pub fn parse_seed(text: &str) -> Option<u64> {
    match text.strip_prefix("0x").or_else(|| text.strip_prefix("0X")) {
        Some(hex) => u64::from_str_radix(&hex.replace('_', ""), 16).ok(),
        None => text.replace('_', "").parse().ok(),
    }
}

pub fn parse_samples(text: &str) -> Option<Vec<Rational>> {
    let out: Option<Vec<Rational>> = text.split(',').map(parse_rational).collect();
    out.filter(|v| !v.is_empty())
}

pub fn parse_mode(text: &str) -> Option<AnalysisMode> {
    match text {
        "generic" => Some(AnalysisMode::Generic),
        "sampled" => Some(AnalysisMode::Sampled),
        _ => None,
    }
}

fn parse_options(line: usize, rest: &str) -> Result<InputOptions, DocumentError> {
    let mut out = InputOptions::default();
    for tok in rest.split_whitespace() {
        let bad = |key: &str, value: &str| DocumentError::BadValue {
            line,
            key: key.to_string(),
            value: value.to_string(),
        };
        let (key, value) = tok.split_once('=').ok_or_else(|| bad(tok, ""))?;
        match key {
            "seed" => out.seed = Some(parse_seed(value).ok_or_else(|| bad(key, value))?),
            "bound" => {
                out.bound = Some(
                    value
                        .parse()
                        .ok()
                        .filter(|&b: &u64| b > 0)
                        .ok_or_else(|| bad(key, value))?,
                )
            }
            "samples" => out.samples = Some(parse_samples(value).ok_or_else(|| bad(key, value))?),
            "mode" => out.mode = Some(parse_mode(value).ok_or_else(|| bad(key, value))?),
            _ => return Err(bad(key, value)),
        }
    }
    Ok(out)
}

const SECTIONS: [&str; 5] = ["vars", "param", "s", "matrix", "options"];

fn push_row(rows: &mut Vec<Vec<String>>, content: &str, line: usize) -> Result<(), DocumentError> {
    let row: Vec<String> = content.split(',').map(|e| e.trim().to_string()).collect();
    if let Some(first) = rows.first() {
        if first.len() != row.len() {
            return Err(DocumentError::Ragged {
                line,
                found: row.len(),
                expected: first.len(),
            });
        }
    }
    rows.push(row);
    Ok(())
}

fn set_once<T>(
    slot: &mut Option<T>,
    value: T,
    line: usize,
    section: &'static str,
) -> Result<(), DocumentError> {
    if slot.is_some() {
        return Err(DocumentError::Duplicate { line, section });
    }
    *slot = Some(value);
    Ok(())
}

impl InputDocument {
    pub fn parse(text: &str) -> Result<Self, DocumentError> {
        let mut vars: Option<Vec<String>> = None;
        let mut param: Option<String> = None;
        let mut s: Option<usize> = None;
        let mut rows: Option<Vec<Vec<String>>> = None;
        let mut options: Option<InputOptions> = None;
        let mut in_matrix = false;
        for (idx, raw) in text.lines().enumerate() {
            let line = idx + 1;
            let content = raw.split('#').next().unwrap_or("").trim();
            if content.is_empty() {
                continue;
            }
            let (word, rest) = content
                .split_once(char::is_whitespace)
                .map_or((content, ""), |(w, r)| (w, r.trim()));
            // inside the matrix block, `s + x` is a row over a variable named `s`
            let looks_like_expression = word != "options" && rest.contains(|c: char| ",+-*^/()".contains(c));
            let is_row = in_matrix && (!SECTIONS.contains(&word) || looks_like_expression);
            if is_row {
                push_row(rows.as_mut().expect("matrix section open"), content, line)?;
                continue;
            }
            match word {
                "vars" => {
                    in_matrix = false;
                    let names: Vec<String> = rest.split_whitespace().map(str::to_string).collect();
                    if names.is_empty() {
                        return Err(DocumentError::BadValue {
                            line,
                            key: "vars".into(),
                            value: String::new(),
                        });
                    }
                    set_once(&mut vars, names, line, "vars")?;
                }
                "param" => {
                    in_matrix = false;
                    let names: Vec<&str> = rest.split_whitespace().collect();
                    if names.len() != 1 {
                        return Err(DocumentError::BadValue {
                            line,
                            key: "param".into(),
                            value: rest.into(),
                        });
                    }
                    set_once(&mut param, names[0].to_string(), line, "param")?;
                }
                "s" => {
                    in_matrix = false;
                    let v = rest.parse().map_err(|_| DocumentError::BadValue {
                        line,
                        key: "s".into(),
                        value: rest.into(),
                    })?;
                    set_once(&mut s, v, line, "s")?;
                }
                "matrix" if rest.is_empty() => {
                    set_once(&mut rows, Vec::new(), line, "matrix")?;
                    in_matrix = true;
                }
                "options" => {
                    in_matrix = false;
                    set_once(&mut options, parse_options(line, rest)?, line, "options")?;
                }
                _ => {
                    return Err(DocumentError::UnknownSection {
                        line,
                        word: word.to_string(),
                    })
                }
            }
        }
        let variables = vars.ok_or(DocumentError::Missing("vars"))?;
        let s = s.ok_or(DocumentError::Missing("s"))?;
        let matrix = rows
            .filter(|r| !r.is_empty())
            .ok_or(DocumentError::Missing("matrix"))?;
        let doc = Self {
            variables,
            parameter: param,
            s,
            matrix,
            options: options.unwrap_or_default(),
            source: text.to_string(),
        };
        doc.validate()?;
        Ok(doc)
    }

    fn full_ring(&self) -> std::sync::Arc<Ring> {
        let mut names = self.variables.clone();
        names.extend(self.parameter.iter().cloned());
        Ring::new(&names)
    }

    fn validate(&self) -> Result<(), DocumentError> {
        let mut seen = std::collections::BTreeSet::new();
        for v in self.variables.iter().chain(self.parameter.iter()) {
            if !seen.insert(v) {
                return Err(DocumentError::DuplicateVariable(v.clone()));
            }
        }
        self.parsed_entries()?;
        let max = self.matrix.len().min(self.matrix[0].len());
        if self.s == 0 || self.s > max {
            return Err(DocumentError::MinorSize { s: self.s, max });
        }
        Ok(())
    }

    fn parsed_entries(&self) -> Result<Vec<Vec<Polynomial<Rational>>>, DocumentError> {
        let ring = self.full_ring();
        self.matrix
            .iter()
            .enumerate()
            .map(|(i, r)| {
                r.iter()
                    .enumerate()
                    .map(|(j, e)| {
                        parse_polynomial(e, &ring).map_err(|source| DocumentError::Expression {
                            row: i,
                            col: j,
                            source,
                        })
                    })
                    .collect()
            })
            .collect()
    }

    /// The germ, for documents without a parameter.
    pub fn germ(&self) -> Result<DeterminantalGerm<Rational>, GermError> {
        let rows = self.parsed_entries().expect("entries validated when parsing");
        build_germ(Ring::new(&self.variables), PolyMatrix::new(rows)?, self.s)
    }

    /// The family, for documents with a parameter.
    pub fn family(&self) -> Result<DeterminantalFamily, FamilyError> {
        let param = self.parameter.as_deref().ok_or(FamilyError::MissingParameter)?;
        let rows = self.parsed_entries().expect("entries validated when parsing");
        DeterminantalFamily::new(Ring::with_param(&self.variables, param), rows, self.s)
    }
}

/// Settings from the command line; each overrides the input file.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct RunFlags {
    pub seed: Option<u64>,
    pub bound: Option<u64>,
    pub samples: Option<Vec<Rational>>,
    pub mode: Option<AnalysisMode>,
    /// Number of agreeing draws required.
    pub draws: Option<usize>,
    /// Time limit per basis computation.
    pub timeout: Option<Duration>,
    /// Record wall-clock time per stage.
    pub timings: bool,
}

/// Effective settings of a run.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Settings {
    pub seed: u64,
    pub bound: u64,
    pub draws: usize,
    pub retries: usize,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub mode: Option<AnalysisMode>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub samples: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub timeout_seconds: Option<f64>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Command {
    Analyze,
    Family,
}

/// The input as read.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InputEcho {
    pub variables: Vec<String>,
    pub parameter: Option<String>,
    pub s: usize,
    pub matrix: Vec<Vec<String>>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct StageTiming {
    pub stage: String,
    pub seconds: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ReportDocument {
    pub tool: String,
    pub version: String,
    pub command: Command,
    pub input: InputEcho,
    pub settings: Settings,
    /// Certificate of the germ (`analyze` only).
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub ids_certificate: Option<IdsCertificate>,
    /// Invariants of the germ (`analyze` only, absent when the certificate fails).
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub invariants: Option<InvariantReport>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub family: Option<FamilyReport>,
    pub caveats: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub timings: Option<Vec<StageTiming>>,
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum RunError {
    #[error("`analyze` takes a germ; the input declares parameter `{0}`")]
    UnexpectedParameter(String),
    #[error("`family` needs a `param` line")]
    MissingParameter,
    #[error(transparent)]
    Germ(#[from] GermError),
    #[error(transparent)]
    Family(#[from] FamilyError),
    #[error(transparent)]
    Invariant(#[from] InvariantError),
    #[error(transparent)]
    Engine(#[from] EngineError),
}

/// Process exit codes.
pub mod exit {
    pub const OK: u8 = 0;
    pub const INPUT: u8 = 1;
    pub const CERTIFICATE: u8 = 2;
    pub const GENERICITY: u8 = 3;
    pub const TIMEOUT: u8 = 4;
    pub const ENGINE: u8 = 5;
}

fn engine_code(e: &EngineError) -> u8 {
    match e {
        EngineError::Timeout { .. } => exit::TIMEOUT,
        _ => exit::ENGINE,
    }
}

fn germ_code(e: &GermError) -> u8 {
    match e {
        GermError::NotDeterminantal { .. } | GermError::NegativeExpectedDimension { .. } => exit::CERTIFICATE,
        GermError::Engine(e) => engine_code(e),
        GermError::InvalidMinorSize { .. } | GermError::EntryNotVanishing { .. } | GermError::Matrix(_) => {
            exit::INPUT
        }
    }
}

fn invariant_code(e: &InvariantError) -> u8 {
    match e {
        InvariantError::NotIds(_) | InvariantError::NonIsolated => exit::CERTIFICATE,
        InvariantError::GenericityUnstable { .. }
        | InvariantError::WrongPolarDimension { .. }
        | InvariantError::NonFiniteCriticalScheme => exit::GENERICITY,
        InvariantError::NonCoprimeExponents { .. } | InvariantError::InvalidPolarIndex { .. } => exit::INPUT,
        InvariantError::Engine(e) => engine_code(e),
    }
}

impl RunError {
    pub fn exit_code(&self) -> u8 {
        match self {
            Self::UnexpectedParameter(_) | Self::MissingParameter => exit::INPUT,
            Self::Germ(e) => germ_code(e),
            Self::Invariant(e) => invariant_code(e),
            Self::Engine(e) => engine_code(e),
            Self::Family(e) => match e {
                FamilyError::NotOriginPreserving { .. }
                | FamilyError::MissingParameter
                | FamilyError::Ragged
                | FamilyError::Parse(_) => exit::INPUT,
                FamilyError::Member { source, .. } | FamilyError::Germ(source) => germ_code(source),
                FamilyError::Invariant(e) => invariant_code(e),
                FamilyError::Engine(e) => engine_code(e),
            },
        }
    }
}

/// A finished run: the report and the exit code it calls for.
#[derive(Clone, Debug, PartialEq)]
pub struct Run {
    pub report: ReportDocument,
    pub exit_code: u8,
}

struct Stages {
    enabled: bool,
    list: Vec<StageTiming>,
}

impl Stages {
    fn time<R>(&mut self, stage: &str, f: impl FnOnce() -> R) -> R {
        let start = Instant::now();
        let r = f();
        if self.enabled {
            self.list.push(StageTiming {
                stage: stage.to_string(),
                seconds: start.elapsed().as_secs_f64(),
            });
        }
        r
    }

    fn finish(self) -> Option<Vec<StageTiming>> {
        self.enabled.then_some(self.list)
    }
}

fn context(doc: &InputDocument, flags: &RunFlags) -> GenericityContext {
    let mut ctx = GenericityContext::default();
    if let Some(seed) = flags.seed.or(doc.options.seed) {
        ctx.seed = seed;
    }
    if let Some(bound) = flags.bound.or(doc.options.bound) {
        ctx.bound = bound;
    }
    if let Some(draws) = flags.draws {
        ctx.draws = draws.max(1);
    }
    ctx
}

fn settings(ctx: &GenericityContext, flags: &RunFlags, family: Option<&FamilyOptions>) -> Settings {
    Settings {
        seed: ctx.seed,
        bound: ctx.bound,
        draws: ctx.draws,
        retries: ctx.retries,
        mode: family.map(|f| f.mode),
        samples: family.map(|f| f.samples.iter().map(ToString::to_string).collect()),
        timeout_seconds: flags.timeout.map(|d| d.as_secs_f64()),
    }
}

fn echo(doc: &InputDocument) -> InputEcho {
    InputEcho {
        variables: doc.variables.clone(),
        parameter: doc.parameter.clone(),
        s: doc.s,
        matrix: doc.matrix.clone(),
    }
}

fn caveats<'a>(certs: impl IntoIterator<Item = &'a IdsCertificate>) -> Vec<String> {
    if certs.into_iter().any(|c| c.reducedness_assumed) {
        vec![REDUCEDNESS_CAVEAT.to_string()]
    } else {
        Vec::new()
    }
}

/// Certificate and invariants of a germ.
pub fn run_analyze(doc: &InputDocument, flags: &RunFlags) -> Result<Run, RunError> {
    if let Some(p) = &doc.parameter {
        return Err(RunError::UnexpectedParameter(p.clone()));
    }
    let ctx = context(doc, flags);
    let mut stages = Stages {
        enabled: flags.timings,
        list: Vec::new(),
    };
    with_task_timeout(flags.timeout, || {
        let germ = stages.time("germ", || doc.germ())?;
        let cert = stages.time("certificate", || verify_ids(&germ))?;
        let invariants = if cert.is_ids() {
            Some(stages.time("invariants", || vanishing_euler_certified(&germ, cert, &ctx))?)
        } else {
            None
        };
        let exit_code = if invariants.is_some() {
            exit::OK
        } else {
            exit::CERTIFICATE
        };
        Ok(Run {
            report: ReportDocument {
                tool: TOOL_NAME.to_string(),
                version: TOOL_VERSION.to_string(),
                command: Command::Analyze,
                input: echo(doc),
                settings: settings(&ctx, flags, None),
                ids_certificate: Some(cert),
                invariants,
                family: None,
                caveats: caveats([&cert]),
                timings: stages.finish(),
            },
            exit_code,
        })
    })
}

/// Member invariants and verdicts of a family.
pub fn run_family(doc: &InputDocument, flags: &RunFlags) -> Result<Run, RunError> {
    if doc.parameter.is_none() {
        return Err(RunError::MissingParameter);
    }
    let ctx = context(doc, flags);
    let opts = FamilyOptions {
        mode: flags.mode.or(doc.options.mode).unwrap_or_default(),
        samples: flags
            .samples
            .clone()
            .or_else(|| doc.options.samples.clone())
            .unwrap_or_else(default_samples),
        ctx,
    };
    let mut stages = Stages {
        enabled: flags.timings,
        list: Vec::new(),
    };
    with_task_timeout(flags.timeout, || {
        let fam = stages.time("family", || doc.family())?;
        let report = stages.time("analysis", || analyze_family(&fam, &opts))?;
        Ok(Run {
            report: ReportDocument {
                tool: TOOL_NAME.to_string(),
                version: TOOL_VERSION.to_string(),
                command: Command::Family,
                input: echo(doc),
                settings: settings(&ctx, flags, Some(&opts)),
                ids_certificate: None,
                invariants: None,
                caveats: caveats(report.members.iter().map(|m| &m.certificate)),
                family: Some(report),
                timings: stages.finish(),
            },
            exit_code: exit::OK,
        })
    })
}

impl ReportDocument {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize") + "\n"
    }

    /// Aligned plain-text rendering.
    pub fn to_text(&self) -> String {
        let mut out = Text::default();
        let command = match self.command {
            Command::Analyze => "analyze",
            Command::Family => "family",
        };
        out.heading(&format!("{} {} {}", self.tool, self.version, command));
        out.section("input");
        out.row("vars", &self.input.variables.join(" "));
        if let Some(p) = &self.input.parameter {
            out.row("param", p);
        }
        out.row("s", &self.input.s.to_string());
        for (i, r) in self.input.matrix.iter().enumerate() {
            out.row(if i == 0 { "matrix" } else { "" }, &r.join(", "));
        }
        out.section("settings");
        out.row("seed", &format!("{:#x}", self.settings.seed));
        out.row("bound", &self.settings.bound.to_string());
        out.row(
            "draws",
            &format!("{} (retries {})", self.settings.draws, self.settings.retries),
        );
        if let Some(m) = self.settings.mode {
            out.row("mode", m.name());
        }
        if let Some(s) = &self.settings.samples {
            out.row("samples", &s.join(", "));
        }
        if let Some(t) = self.settings.timeout_seconds {
            out.row("timeout", &format!("{t} s"));
        }
        if let Some(c) = &self.ids_certificate {
            out.section("certificate");
            certificate_rows(&mut out, c);
        }
        if let Some(inv) = &self.invariants {
            out.section("invariants");
            invariant_rows(&mut out, inv);
        }
        if let Some(f) = &self.family {
            family_rows(&mut out, f);
        }
        for c in &self.caveats {
            out.line(&format!("caveat: {c}"));
        }
        if let Some(t) = &self.timings {
            out.section("timings");
            for s in t {
                out.row(&s.stage, &format!("{:.3} s", s.seconds));
            }
        }
        out.finish()
    }
}

#[derive(Default)]
struct Text {
    blocks: Vec<(String, Vec<(String, String)>)>,
}

impl Text {
    fn heading(&mut self, h: &str) {
        self.blocks.push((h.to_string(), Vec::new()));
    }

    fn section(&mut self, name: &str) {
        self.blocks.push((name.to_string(), Vec::new()));
    }

    fn row(&mut self, key: &str, value: &str) {
        self.blocks
            .last_mut()
            .expect("section open")
            .1
            .push((key.to_string(), value.to_string()));
    }

    fn line(&mut self, text: &str) {
        self.blocks.push((text.to_string(), Vec::new()));
    }

    fn finish(self) -> String {
        let width = self
            .blocks
            .iter()
            .flat_map(|b| b.1.iter().map(|r| r.0.chars().count()))
            .max()
            .unwrap_or(0);
        let mut s = String::new();
        for (title, rows) in &self.blocks {
            let _ = writeln!(s, "{title}");
            for (k, v) in rows {
                let _ = writeln!(s, "  {k:<width$}  {v}");
            }
        }
        s
    }
}

fn yes(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn join(v: &[u64]) -> String {
    v.iter().map(u64::to_string).collect::<Vec<_>>().join(" ")
}

fn certificate_rows(out: &mut Text, c: &IdsCertificate) {
    out.row("ids", yes(c.is_ids()));
    out.row("codim_bound_ok", yes(c.codim_bound_ok));
    out.row("rank_drop_isolated", yes(c.rank_drop_isolated));
    out.row("smooth_off_origin", yes(c.smooth_off_origin));
    out.row("reducedness_assumed", yes(c.reducedness_assumed));
}

fn invariant_rows(out: &mut Text, inv: &InvariantReport) {
    out.row("dimension", &inv.dimension.to_string());
    out.row("connectivity_class", inv.connectivity_class.name());
    out.row("m", &join(&inv.m));
    out.row("nu", &inv.nu.to_string());
    out.row("chi_smoothing", &inv.chi_smoothing.to_string());
    out.row("smoothing_connected", yes(inv.smoothing_connected));
}

fn family_rows(out: &mut Text, f: &FamilyReport) {
    for m in &f.members {
        out.section(&format!("member {}", m.label));
        certificate_rows(out, &m.certificate);
        match &m.invariants {
            Some(inv) => {
                out.row("m", &join(&inv.m));
                out.row("nu", &inv.nu.to_string());
            }
            None => out.row("invariants", "not computed (not an IDS)"),
        }
    }
    out.section("family");
    out.row("mode", f.mode.name());
    out.row("dimension", &f.dimension.to_string());
    out.row("connectivity_class", f.connectivity_class.name());
    out.row("good", yes(f.good));
    out.row("nu_constant", yes(f.nu_constant));
    out.row("mi_constant", yes(f.mi_constant));
    let opt = |v: Option<String>| v.unwrap_or_else(|| "n/a".to_string());
    out.row("relative_md", &opt(f.relative_md.map(|v| v.to_string())));
    out.row("chi_fiber", &opt(f.chi_fiber.map(|v| v.to_string())));
    if let Some(c) = &f.conservation {
        let status = format!("{:?}", c.status).to_lowercase();
        out.row("conservation", &format!("{status} (m_d {} vs {})", c.lhs, c.rhs));
        if let Some(d) = &c.diagnostics {
            out.row("", d);
        }
    }
    let semi = match &f.semicontinuity {
        Semicontinuity::Holds => "holds".to_string(),
        Semicontinuity::Violated => "violated".to_string(),
        Semicontinuity::NotApplicable(why) => format!("not applicable ({why})"),
    };
    out.row("semicontinuity", &semi);
    let topo = match f.topological_verdict {
        TopologicalVerdict::ConstantTopType => "ConstantTopType".to_string(),
        TopologicalVerdict::HypothesisUnverified(h) => format!("HypothesisUnverified({})", h.name()),
        TopologicalVerdict::NotConcluded => "NotConcluded".to_string(),
    };
    out.row("topological_verdict", &topo);
    out.row("whitney_verdict", &format!("{:?}", f.whitney_verdict));
}
