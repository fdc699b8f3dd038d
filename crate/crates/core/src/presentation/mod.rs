//! Milnor-group presentations: meridians of every arc resolved as Magnus
//! series, longitudes of closed walks, and one surface element per component.
//! Presentations given directly as relator words are handled in `direct`.

mod direct;
mod resolve;

use thiserror::Error;

use crate::graph::GraphError;
use crate::ring::{MagnusSeries, WordError};

pub use direct::{expand_direct, DirectPresentation};
pub use resolve::PresentationBundle;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PresentationError {
    #[error("meridian resolution did not stabilize after {sweeps} sweeps")]
    NonConvergence { sweeps: usize },
    #[error("bad walk: {0}")]
    BadWalk(String),
    #[error("unknown generator m{color},{index}")]
    UnknownGenerator { color: u32, index: u32 },
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("line {line}: {source}")]
    Word { line: usize, source: WordError },
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// A named relator expansion; the common currency of both input routes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Relator {
    pub label: String,
    pub series: MagnusSeries,
}
