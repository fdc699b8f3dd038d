//! Milnor invariants of constituent links, splittability verdicts, the
//! per-component separation obstruction and the lambda invariants.
//!
//! The lower central series quotient by commutators of length n corresponds
//! on the ring side to the degree-n filtration; every statement here is made
//! in ring terms ("lowest degree of a monomial containing color i").

mod mu;

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use rayon::prelude::*;
use thiserror::Error;

use crate::diagram::{EmbeddingCode, MoveError};
use crate::graph::{CycleSelection, GraphError, DEFAULT_CYCLE_CAP};
use crate::presentation::{PresentationBundle, PresentationError, Relator};
use crate::ring::{Color, Monomial};

pub use mu::{mu_bar, mu_bar_with_degree, MultiIndex, MuBarReport};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum InvariantError {
    #[error("not a link: every component must be a single circle")]
    NotALink,
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Move(#[from] MoveError),
    #[error(transparent)]
    Presentation(#[from] PresentationError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Options {
    /// Limit on enumerated cycles and selections.
    pub cap: usize,
    /// Truncation override; `None` uses the number of colors.
    pub max_degree: Option<usize>,
    /// Evaluate constituent links on the rayon pool.
    pub parallel: bool,
}

impl Default for Options {
    fn default() -> Self {
        Self { cap: DEFAULT_CYCLE_CAP, max_degree: None, parallel: false }
    }
}

/// First nonvanishing Milnor data of one constituent link.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SelectionResult {
    pub selection: CycleSelection,
    pub first_nonvanishing: Option<(usize, Vec<(MultiIndex, BigInt)>)>,
}

impl SelectionResult {
    pub fn trivial(&self) -> bool {
        self.first_nonvanishing.is_none()
    }
}

fn analyze(code: &EmbeddingCode, sel: &CycleSelection, opts: &Options) -> Result<SelectionResult, InvariantError> {
    // a knot's Milnor invariants with distinct indices are all empty
    let first_nonvanishing = if sel.len() < 2 {
        None
    } else {
        mu_bar_with_degree(&code.extract_sublink(sel)?, opts.max_degree)?.first_nonvanishing()
    };
    Ok(SelectionResult { selection: sel.clone(), first_nonvanishing })
}

/// Milnor data of every constituent link, in selection order.
pub fn constituent_links(code: &EmbeddingCode, opts: &Options) -> Result<Vec<SelectionResult>, InvariantError> {
    let sels = code.graph().constituent_selections(None, opts.cap)?;
    if opts.parallel {
        sels.par_iter().map(|s| analyze(code, s, opts)).collect()
    } else {
        sels.iter().map(|s| analyze(code, s, opts)).collect()
    }
}

/// Outcome of the separation test for one color.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ISplitReport {
    pub color: Color,
    pub obstructed: bool,
    /// First relator (in order) with a monomial containing the color, and
    /// its smallest such monomial.
    pub witness: Option<(String, Monomial, BigInt)>,
}

impl ISplitReport {
    /// The test is one-sided: absence of an obstruction proves nothing.
    pub fn verdict(&self) -> &'static str {
        if self.obstructed {
            "obstructed (not separable up to component homotopy)"
        } else {
            "no obstruction found (inconclusive)"
        }
    }
}

pub fn i_split_obstruction(relators: &[Relator], color: Color) -> ISplitReport {
    let witness = relators.iter().find_map(|r| {
        r.series
            .terms()
            .find(|(m, _)| m.contains_color(color))
            .map(|(m, c)| (r.label.clone(), m.clone(), c.clone()))
    });
    ISplitReport { color, obstructed: witness.is_some(), witness }
}

/// Smallest degree of a relator monomial containing the color.
pub fn lambda_from_relators(relators: &[Relator], color: Color) -> Option<usize> {
    relators.iter().filter_map(|r| r.series.lowest_degree_with_color(color)).min()
}

/// Smallest length of a nonvanishing Milnor invariant whose index runs over
/// every component of a constituent link through a cycle of the color.
pub fn lambda_from_links(results: &[SelectionResult], color: Color) -> Option<usize> {
    results
        .iter()
        .filter(|r| r.selection.contains(color))
        .filter_map(|r| match &r.first_nonvanishing {
            Some((k, _)) if *k == r.selection.len() => Some(*k),
            _ => None,
        })
        .min()
}

/// True when every relator expands to 1.
pub fn relators_trivial(relators: &[Relator]) -> bool {
    relators.iter().all(|r| r.series.is_one())
}

/// The relators after killing every generator outside `colors`.
pub fn restrict_relators(relators: &[Relator], colors: &BTreeSet<Color>) -> Vec<Relator> {
    relators
        .iter()
        .map(|r| Relator { label: r.label.clone(), series: r.series.restrict_colors(|c| colors.contains(&c)) })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SplitReport {
    pub completely_split: bool,
    /// First constituent link (in selection order) with a nonvanishing
    /// Milnor invariant.
    pub witness: Option<SelectionResult>,
    pub obstructions: BTreeMap<Color, ISplitReport>,
}

/// Complete splittability: every constituent link must have vanishing Milnor
/// invariants.
pub fn is_completely_split(code: &EmbeddingCode, opts: &Options) -> Result<SplitReport, InvariantError> {
    let sels = code.graph().constituent_selections(None, opts.cap)?;
    let hit = |r: &Result<SelectionResult, InvariantError>| r.as_ref().map_or(true, |r| !r.trivial());
    let first = if opts.parallel {
        sels.par_iter().map(|s| analyze(code, s, opts)).find_first(hit)
    } else {
        sels.iter().map(|s| analyze(code, s, opts)).find(hit)
    };
    let witness = first.transpose()?;
    let bundle = resolve(code, opts)?;
    let relators = bundle.relators();
    let obstructions =
        code.graph().colors().into_iter().map(|c| (c, i_split_obstruction(&relators, c))).collect();
    Ok(SplitReport { completely_split: witness.is_none(), witness, obstructions })
}

pub fn resolve(code: &EmbeddingCode, opts: &Options) -> Result<PresentationBundle, InvariantError> {
    Ok(match opts.max_degree {
        Some(d) => PresentationBundle::resolve_with_degree(code, d)?,
        None => PresentationBundle::resolve(code)?,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LambdaEntry {
    pub relators: Option<usize>,
    pub links: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LambdaReport {
    pub max_degree: usize,
    pub exact: bool,
    pub values: BTreeMap<Color, LambdaEntry>,
}

impl LambdaReport {
    pub fn routes_agree(&self) -> bool {
        self.values.values().all(|e| e.relators == e.links)
    }
}

/// Lambda of every color of a diagram by both routes.
pub fn lambda_report(code: &EmbeddingCode, opts: &Options) -> Result<LambdaReport, InvariantError> {
    let bundle = resolve(code, opts)?;
    let relators = bundle.relators();
    let links = constituent_links(code, opts)?;
    let values = code
        .graph()
        .colors()
        .into_iter()
        .map(|c| {
            (c, LambdaEntry { relators: lambda_from_relators(&relators, c), links: lambda_from_links(&links, c) })
        })
        .collect();
    Ok(LambdaReport { max_degree: bundle.max_degree(), exact: bundle.is_exact(), values })
}

/// Everything that must survive component homotopy.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InvariantSummary {
    pub completely_split: bool,
    pub witness: Option<CycleSelection>,
    pub lambda: BTreeMap<Color, LambdaEntry>,
    pub links: Vec<SelectionResult>,
    pub obstructed: BTreeMap<Color, bool>,
}

pub fn summarize(code: &EmbeddingCode, opts: &Options) -> Result<InvariantSummary, InvariantError> {
    let links = constituent_links(code, opts)?;
    let bundle = resolve(code, opts)?;
    let relators = bundle.relators();
    let colors = code.graph().colors();
    let lambda = colors
        .iter()
        .map(|&c| {
            (c, LambdaEntry { relators: lambda_from_relators(&relators, c), links: lambda_from_links(&links, c) })
        })
        .collect();
    let obstructed = colors.iter().map(|&c| (c, i_split_obstruction(&relators, c).obstructed)).collect();
    let witness = links.iter().find(|r| !r.trivial()).map(|r| r.selection.clone());
    Ok(InvariantSummary { completely_split: witness.is_none(), witness, lambda, links, obstructed })
}
