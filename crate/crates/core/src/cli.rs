//! Command-line front end. `run` does all the work and returns the text to
//! print and the exit code, so the binary stays a thin wrapper.
//!
//! Exit codes: 0 success (verdicts are data, not failures), 1 invariant
//! mismatch in `check`, 2 input error, 3 internal non-convergence.

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};
use thiserror::Error;

use crate::diagram::{parse, EmbeddingCode, ParseError};
use crate::graph::DEFAULT_CYCLE_CAP;
use crate::invariants::{
    i_split_obstruction, is_completely_split, lambda_from_relators, lambda_report, mu_bar_with_degree,
    relators_trivial, resolve, summarize, InvariantError, MuBarReport, Options, SelectionResult,
};
use crate::presentation::{DirectPresentation, PresentationError, Relator};
use crate::report::{self, LambdaJson, Report};
use crate::ring::Color;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Parser)]
#[command(name = "spatial-milnor", version, about = "Component-homotopy invariants of spatial graph diagrams")]
pub struct Cli {
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Limit on enumerated cycles and constituent links.
    #[arg(long, global = true, default_value_t = DEFAULT_CYCLE_CAP as u64, value_parser = clap::value_parser!(u64).range(1..))]
    pub cap: u64,
    /// Seed for `check`.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Read a relator presentation instead of a diagram code.
    #[arg(long, global = true)]
    pub presentation: bool,
    /// Override the truncation degree (results are approximate below the
    /// number of components).
    #[arg(long, global = true, value_parser = clap::value_parser!(u64).range(1..))]
    pub max_degree: Option<u64>,
    /// Evaluate constituent links in parallel.
    #[arg(long, global = true)]
    pub parallel: bool,
    #[arg(short, long, global = true, action = clap::ArgAction::Count)]
    pub verbose: u8,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Subcommand)]
pub enum Command {
    /// Generators and surface elements (or relator expansions).
    Present { file: PathBuf },
    /// Complete splittability up to component homotopy.
    Split { file: PathBuf },
    /// Obstruction to separating one component.
    Isplit { file: PathBuf, color: Color },
    /// Lambda of every component.
    Lambda { file: PathBuf },
    /// Milnor invariants of a link.
    Mu { file: PathBuf },
    /// Apply random self-crossing changes and compare all invariants.
    Check {
        file: PathBuf,
        #[arg(long, default_value_t = 10)]
        moves: usize,
    },
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Present { .. } => "present",
            Command::Split { .. } => "split",
            Command::Isplit { .. } => "isplit",
            Command::Lambda { .. } => "lambda",
            Command::Mu { .. } => "mu",
            Command::Check { .. } => "check",
        }
    }

    fn file(&self) -> &PathBuf {
        match self {
            Command::Present { file }
            | Command::Split { file }
            | Command::Isplit { file, .. }
            | Command::Lambda { file }
            | Command::Mu { file }
            | Command::Check { file, .. } => file,
        }
    }
}

/// Validated settings for one run.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub command: Command,
    pub format: Format,
    pub options: Options,
    pub seed: u64,
    pub presentation: bool,
    pub verbosity: u8,
}

impl From<Cli> for RunConfig {
    fn from(c: Cli) -> Self {
        RunConfig {
            command: c.command,
            format: c.format,
            options: Options {
                cap: c.cap as usize,
                max_degree: c.max_degree.map(|d| d as usize),
                parallel: c.parallel,
            },
            seed: c.seed,
            presentation: c.presentation,
            verbosity: c.verbose,
        }
    }
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("cannot read {path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error(transparent)]
    Presentation(#[from] PresentationError),
    #[error(transparent)]
    Invariant(#[from] InvariantError),
    #[error("{0}")]
    Usage(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        let nonconvergence = matches!(
            self,
            CliError::Presentation(PresentationError::NonConvergence { .. })
                | CliError::Invariant(InvariantError::Presentation(PresentationError::NonConvergence { .. }))
        );
        if nonconvergence {
            3
        } else {
            2
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

/// Parses arguments (first item is the program name) and runs the command.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => execute(&RunConfig::from(cli)),
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            if code == 0 {
                Outcome { code, stdout: text, stderr: String::new() }
            } else {
                Outcome { code, stdout: String::new(), stderr: text }
            }
        }
    }
}

pub fn execute(cfg: &RunConfig) -> Outcome {
    match dispatch(cfg) {
        Ok((out, code)) => {
            let stdout = match cfg.format {
                Format::Json => out.report.to_json() + "\n",
                Format::Text => out.text.join("\n") + "\n",
            };
            Outcome { code, stdout, stderr: String::new() }
        }
        Err(e) => Outcome { code: e.exit_code(), stdout: String::new(), stderr: format!("error: {e}\n") },
    }
}

enum Source {
    Diagram(EmbeddingCode),
    Direct(DirectPresentation),
}

struct Out {
    report: Report,
    text: Vec<String>,
}

fn load(cfg: &RunConfig) -> Result<Source, CliError> {
    let path = cfg.command.file();
    let text = std::fs::read_to_string(path)
        .map_err(|source| CliError::Io { path: path.display().to_string(), source })?;
    Ok(if cfg.presentation {
        Source::Direct(DirectPresentation::parse(&text)?)
    } else {
        Source::Diagram(parse(&text)?)
    })
}

fn dispatch(cfg: &RunConfig) -> Result<(Out, i32), CliError> {
    let source = load(cfg)?;
    let input = cfg.command.file().display().to_string();
    let name = cfg.command.name();
    let o = &cfg.options;
    let out = match (&cfg.command, &source) {
        (Command::Present { .. }, Source::Diagram(code)) => present_diagram(code, o, name, &input, cfg.verbosity)?,
        (Command::Present { .. }, Source::Direct(p)) => present_direct(p, o, name, &input),
        (Command::Split { .. }, Source::Diagram(code)) => split_diagram(code, o, name, &input)?,
        (Command::Split { .. }, Source::Direct(p)) => split_direct(p, o, name, &input),
        (Command::Isplit { color, .. }, _) => isplit(&source, *color, o, name, &input)?,
        (Command::Lambda { .. }, Source::Diagram(code)) => lambda_diagram(code, o, name, &input)?,
        (Command::Lambda { .. }, Source::Direct(p)) => lambda_direct(p, o, name, &input),
        (Command::Mu { .. }, Source::Diagram(code)) => mu(code, o, name, &input, cfg.verbosity)?,
        (Command::Check { moves, .. }, Source::Diagram(code)) => {
            return check(code, o, *moves, cfg.seed, name, &input, cfg.verbosity)
        }
        (Command::Mu { .. } | Command::Check { .. }, Source::Direct(_)) => {
            return Err(CliError::Usage(format!("'{name}' needs a diagram code, not a presentation")))
        }
    };
    Ok((out, 0))
}

fn direct_degree(p: &DirectPresentation, o: &Options) -> (usize, bool) {
    let exact = p.max_degree();
    let d = o.max_degree.unwrap_or(exact);
    (d, d >= exact)
}

fn approx_note(report: &Report, text: &mut Vec<String>) {
    if !report.exact {
        text.push(format!("note: approximate, truncated at degree {}", report.max_degree));
    }
}

fn present_diagram(code: &EmbeddingCode, o: &Options, name: &str, input: &str, verbosity: u8) -> Result<Out, CliError> {
    let bundle = resolve(code, o)?;
    let mut report = Report::new(name, input, bundle.max_degree(), bundle.is_exact());
    let mut text = Vec::new();
    let gens: Vec<String> = bundle.generators().map(|v| format!("m{},{}", v.color, v.index)).collect();
    text.push(format!("generators ({}): {}", gens.len(), gens.join(" ")));
    for v in bundle.generators() {
        let e = bundle.generator_edge(v).expect("generator edge");
        text.push(format!("  m{},{} = meridian of edge {e}", v.color, v.index));
        if verbosity > 0 {
            text.push(format!("    longitude: {}", bundle.longitude(v).expect("longitude")));
        }
    }
    let mut rel = BTreeMap::new();
    for r in bundle.relators() {
        text.push(format!("{} = {}", r.label, r.series));
        rel.insert(r.label, r.series.to_string());
    }
    report.generators = Some(gens);
    report.relators = Some(rel);
    approx_note(&report, &mut text);
    Ok(Out { report, text })
}

fn present_direct(p: &DirectPresentation, o: &Options, name: &str, input: &str) -> Out {
    let (d, exact) = direct_degree(p, o);
    let mut report = Report::new(name, input, d, exact);
    let gens: Vec<String> = p.generators().iter().map(|v| format!("m{},{}", v.color, v.index)).collect();
    let mut text = vec![format!("generators ({}): {}", gens.len(), gens.join(" "))];
    let mut rel = BTreeMap::new();
    for (w, r) in p.relator_words().iter().zip(p.relators(d)) {
        text.push(format!("{}: {w}", r.label));
        text.push(format!("  = {}", r.series));
        rel.insert(r.label, r.series.to_string());
    }
    report.generators = Some(gens);
    report.relators = Some(rel);
    approx_note(&report, &mut text);
    Out { report, text }
}

fn selection_text(r: &SelectionResult) -> String {
    r.selection
        .cycles()
        .iter()
        .map(|(c, cy)| format!("component {c}: {}", report::cycle_steps(cy).join(" ")))
        .collect::<Vec<_>>()
        .join("; ")
}

fn first_nonvanishing_json(r: &SelectionResult) -> Value {
    match &r.first_nonvanishing {
        Some((k, entries)) => {
            let coeffs: serde_json::Map<String, Value> =
                entries.iter().map(|(i, c)| (report::multi_index_key(i), report::coefficient(c))).collect();
            json!({"length": k, "coefficients": coeffs})
        }
        None => Value::Null,
    }
}

fn split_diagram(code: &EmbeddingCode, o: &Options, name: &str, input: &str) -> Result<Out, CliError> {
    let s = is_completely_split(code, o)?;
    let bundle = resolve(code, o)?;
    let mut report = Report::new(name, input, bundle.max_degree(), bundle.is_exact());
    let mut text = vec![format!("completely split: {}", yes_no(s.completely_split))];
    report.verdicts.insert("completely_split".into(), Value::from(s.completely_split));
    if let Some(w) = &s.witness {
        text.push(format!("witness: {}", selection_text(w)));
        if let Some((k, entries)) = &w.first_nonvanishing {
            let shown: Vec<String> = entries
                .iter()
                .map(|(i, c)| format!("mu({}) = {c}", report::multi_index_key(i)))
                .collect();
            text.push(format!("  first nonvanishing length {k}: {}", shown.join(", ")));
        }
        report.witnesses.insert(
            "constituent_link".into(),
            json!({"selection": report::selection(&w.selection), "first_nonvanishing": first_nonvanishing_json(w)}),
        );
    }
    let mut per_color = serde_json::Map::new();
    for (c, r) in &s.obstructions {
        text.push(format!("component {c}: {}", r.verdict()));
        per_color.insert(c.to_string(), Value::from(r.obstructed));
    }
    report.verdicts.insert("obstructed".into(), Value::Object(per_color));
    approx_note(&report, &mut text);
    Ok(Out { report, text })
}

fn split_direct(p: &DirectPresentation, o: &Options, name: &str, input: &str) -> Out {
    let (d, exact) = direct_degree(p, o);
    let relators = p.relators(d);
    let split = relators_trivial(&relators);
    let mut report = Report::new(name, input, d, exact);
    report.flags.push("presentation route: split exactly when every relator expands to 1".into());
    report.verdicts.insert("completely_split".into(), Value::from(split));
    let mut text = vec![format!("completely split: {}", yes_no(split))];
    if let Some(r) = relators.iter().find(|r| !r.series.is_one()) {
        let low = r.series.homogeneous_part(r.series.lowest_degree().unwrap_or(0));
        text.push(format!("witness: {} has lowest terms {low}", r.label));
        report.witnesses.insert("relator".into(), json!({"label": r.label, "lowest_terms": low.to_string()}));
    }
    approx_note(&report, &mut text);
    Out { report, text }
}

fn relators_of(source: &Source, o: &Options) -> Result<(Vec<Relator>, Vec<Color>, usize, bool), CliError> {
    Ok(match source {
        Source::Diagram(code) => {
            let b = resolve(code, o)?;
            (b.relators(), code.graph().colors(), b.max_degree(), b.is_exact())
        }
        Source::Direct(p) => {
            let (d, exact) = direct_degree(p, o);
            (p.relators(d), p.colors().into_iter().collect(), d, exact)
        }
    })
}

fn isplit(source: &Source, color: Color, o: &Options, name: &str, input: &str) -> Result<Out, CliError> {
    let (relators, colors, d, exact) = relators_of(source, o)?;
    if !colors.contains(&color) {
        return Err(CliError::Usage(format!("unknown component {color}")));
    }
    let r = i_split_obstruction(&relators, color);
    let mut report = Report::new(name, input, d, exact);
    report.verdicts.insert(
        "isplit".into(),
        json!({"color": color, "obstructed": r.obstructed, "verdict": r.verdict()}),
    );
    let mut text = vec![format!("component {color}: {}", r.verdict())];
    if let Some((label, m, c)) = &r.witness {
        text.push(format!("witness: {label} contains {c}·{m}"));
        report.witnesses.insert(
            "relator".into(),
            json!({"label": label, "monomial": m.to_string(), "coefficient": report::coefficient(c)}),
        );
    }
    approx_note(&report, &mut text);
    Ok(Out { report, text })
}

fn lambda_text(v: Option<usize>, d: usize) -> String {
    v.map_or_else(|| format!("none up to {d}"), |k| k.to_string())
}

fn lambda_diagram(code: &EmbeddingCode, o: &Options, name: &str, input: &str) -> Result<Out, CliError> {
    let l = lambda_report(code, o)?;
    let mut report = Report::new(name, input, l.max_degree, l.exact);
    let mut text = Vec::new();
    let mut map = BTreeMap::new();
    for (c, e) in &l.values {
        text.push(format!(
            "lambda({c}) = {} (relators), {} (links)",
            lambda_text(e.relators, l.max_degree),
            lambda_text(e.links, l.max_degree)
        ));
        map.insert(c.to_string(), LambdaJson { relators: Some(e.relators), links: Some(e.links) });
    }
    report.lambda = Some(map);
    report.verdicts.insert("routes_agree".into(), Value::from(l.routes_agree()));
    if !l.routes_agree() {
        text.push("warning: the two routes disagree".into());
    }
    approx_note(&report, &mut text);
    Ok(Out { report, text })
}

fn lambda_direct(p: &DirectPresentation, o: &Options, name: &str, input: &str) -> Out {
    let (d, exact) = direct_degree(p, o);
    let relators = p.relators(d);
    let mut report = Report::new(name, input, d, exact);
    let mut text = Vec::new();
    let mut map = BTreeMap::new();
    for c in p.colors() {
        let v = lambda_from_relators(&relators, c);
        text.push(format!("lambda({c}) = {}", lambda_text(v, d)));
        map.insert(c.to_string(), LambdaJson { relators: Some(v), links: None });
    }
    report.lambda = Some(map);
    approx_note(&report, &mut text);
    Out { report, text }
}

fn mu(code: &EmbeddingCode, o: &Options, name: &str, input: &str, verbosity: u8) -> Result<Out, CliError> {
    let m: MuBarReport = mu_bar_with_degree(code, o.max_degree)?;
    let mut report = Report::new(name, input, m.max_degree, m.exact);
    let mut text = vec![format!("trivial: {}", yes_no(m.trivial()))];
    report.verdicts.insert("trivial".into(), Value::from(m.trivial()));
    report.verdicts.insert("first_nonvanishing_length".into(), m.first_length().map_or(Value::Null, Value::from));
    if let Some(k) = m.first_length() {
        text.push(format!("first nonvanishing length: {k}"));
    }
    let mut table = BTreeMap::new();
    let mut later = Vec::new();
    for (i, c) in &m.coefficients {
        let key = report::multi_index_key(i);
        let flag = if m.subject_to_indeterminacy(i) {
            later.push(key.clone());
            "  (subject to indeterminacy)"
        } else {
            ""
        };
        text.push(format!("mu({key}) = {c}{flag}"));
        table.insert(key, report::coefficient(c));
    }
    if verbosity > 0 {
        for (c, l) in &m.longitudes {
            text.push(format!("longitude {c} (own color dropped): {l}"));
        }
    }
    if !later.is_empty() {
        report.flags.push(format!("subject to indeterminacy: {}", later.join(" ")));
    }
    report.mu_bar = Some(table);
    approx_note(&report, &mut text);
    Ok(Out { report, text })
}

fn check(
    code: &EmbeddingCode,
    o: &Options,
    moves: usize,
    seed: u64,
    name: &str,
    input: &str,
    verbosity: u8,
) -> Result<(Out, i32), CliError> {
    let reference = summarize(code, o)?;
    let bundle = resolve(code, o)?;
    let mut report = Report::new(name, input, bundle.max_degree(), bundle.is_exact());
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let crossings: Vec<u32> = code.crossings().keys().copied().collect();
    let legal = code.self_crossings();
    let mut log = Vec::new();
    let mut current = code.clone();
    let (mut applied, mut rejected, mut mismatch) = (0usize, 0usize, None);
    if legal.is_empty() {
        log.push("no self-crossings: no legal moves".to_string());
    } else {
        let mut attempts = 0;
        while applied < moves && attempts < 100 * moves.max(1) {
            attempts += 1;
            let c = crossings[rng.gen_range(0..crossings.len())];
            match current.crossing_change(c) {
                Ok(next) => {
                    current = next;
                    applied += 1;
                    log.push(format!("changed crossing {c}"));
                    if summarize(&current, o)? != reference {
                        mismatch = Some(applied);
                        break;
                    }
                }
                Err(e) => {
                    rejected += 1;
                    log.push(format!("rejected crossing {c}: {e}"));
                }
            }
        }
    }
    let ok = mismatch.is_none();
    report.verdicts.insert("invariant".into(), Value::from(ok));
    report.verdicts.insert("moves_applied".into(), Value::from(applied));
    report.verdicts.insert("moves_rejected".into(), Value::from(rejected));
    if let Some(k) = mismatch {
        report.witnesses.insert("mismatch_after_move".into(), Value::from(k));
    }
    let mut text = vec![format!(
        "invariants unchanged: {} ({applied} moves applied, {rejected} rejected, seed {seed})",
        yes_no(ok)
    )];
    if verbosity > 0 {
        text.extend(log.iter().map(|l| format!("  {l}")));
        report.witnesses.insert("log".into(), Value::from(log));
    }
    approx_note(&report, &mut text);
    Ok((Out { report, text }, if ok { 0 } else { 1 }))
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}
