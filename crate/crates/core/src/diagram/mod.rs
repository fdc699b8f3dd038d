//! Combinatorial diagram codes for spatial graphs.
//!
//! A code lists, for every edge, the crossings it passes from tail to head,
//! and for every vertex the counterclockwise order of its edge-ends. Codes are
//! not checked for planarity; every downstream computation is well defined
//! for virtual codes as well.
//!
//! Sign convention: a crossing is positive when, looking along the
//! overstrand, the understrand passes from right to left.

mod braid;
mod moves;
mod parse;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use thiserror::Error;

use crate::graph::{AbstractGraph, EdgeId, GraphError, VertexId};
use crate::ring::Color;

pub use braid::braid_closure;
pub use parse::{parse, serialize, ParseError};

pub type CrossingId = u32;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Role {
    Over,
    Under,
}

impl Role {
    pub fn swapped(self) -> Self {
        match self {
            Role::Over => Role::Under,
            Role::Under => Role::Over,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Sign {
    Positive,
    Negative,
}

impl Sign {
    pub fn value(self) -> i64 {
        match self {
            Sign::Positive => 1,
            Sign::Negative => -1,
        }
    }

    pub fn negated(self) -> Self {
        match self {
            Sign::Positive => Sign::Negative,
            Sign::Negative => Sign::Positive,
        }
    }
}

/// One passage of an edge through a crossing.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Passage {
    pub crossing: CrossingId,
    pub role: Role,
    pub sign: Sign,
}

impl fmt::Display for Passage {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let role = match self.role {
            Role::Over => 'o',
            Role::Under => 'u',
        };
        let sign = match self.sign {
            Sign::Positive => '+',
            Sign::Negative => '-',
        };
        write!(f, "X{}{}{}", self.crossing, role, sign)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum End {
    /// The edge leaves the vertex.
    Tail,
    /// The edge enters the vertex.
    Head,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct EdgeEnd {
    pub edge: EdgeId,
    pub end: End,
}

impl fmt::Display for EdgeEnd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.end {
            End::Tail => write!(f, "+{}", self.edge),
            End::Head => write!(f, "-{}", self.edge),
        }
    }
}

/// Where a crossing's two passages sit: (edge, index into that edge's list).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CrossingSite {
    pub over: (EdgeId, usize),
    pub under: (EdgeId, usize),
    pub sign: Sign,
}

/// An arc is the stretch of an edge between consecutive undercrossings.
/// Ordinals are 0-based here; arc 0 starts at the tail.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Arc {
    pub edge: EdgeId,
    pub ordinal: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ValidationError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("crossing {0} appears {1} time(s); every crossing needs exactly two passages")]
    CrossingCount(CrossingId, usize),
    #[error("crossing {0} needs one over and one under passage")]
    CrossingRoles(CrossingId),
    #[error("crossing {0} has passages with different signs")]
    CrossingSigns(CrossingId),
    #[error("passages listed for unknown edge {0}")]
    PassagesForUnknownEdge(EdgeId),
    #[error("rotation listed for unknown vertex {0}")]
    RotationForUnknownVertex(VertexId),
    #[error("rotation at vertex {vertex} does not list exactly its incident edge-ends (problem with {end})")]
    Rotation { vertex: VertexId, end: EdgeEnd },
    #[error("vertex {0} has no rotation")]
    MissingRotation(VertexId),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MoveError {
    #[error("unknown crossing {0}")]
    UnknownCrossing(CrossingId),
    #[error("crossing {crossing} joins colors {over} and {under}; changing it is not a component homotopy")]
    IllegalMove { crossing: CrossingId, over: Color, under: Color },
    #[error("selection does not fit this diagram: {0}")]
    BadSelection(String),
    #[error("unknown color {0}")]
    UnknownColor(Color),
}

/// A validated diagram code.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EmbeddingCode {
    graph: AbstractGraph,
    passages: BTreeMap<EdgeId, Vec<Passage>>,
    rotations: BTreeMap<VertexId, Vec<EdgeEnd>>,
    sites: BTreeMap<CrossingId, CrossingSite>,
}

impl EmbeddingCode {
    /// Validates and assembles a code. Edges without an entry in `passages`
    /// pass no crossings.
    pub fn new(
        graph: AbstractGraph,
        mut passages: BTreeMap<EdgeId, Vec<Passage>>,
        rotations: BTreeMap<VertexId, Vec<EdgeEnd>>,
    ) -> Result<Self, ValidationError> {
        for &e in passages.keys() {
            if graph.edge(e).is_none() {
                return Err(ValidationError::PassagesForUnknownEdge(e));
            }
        }
        for e in graph.edges() {
            passages.entry(e.id).or_default();
        }
        let sites = crossing_sites(&passages)?;
        check_rotations(&graph, &rotations)?;
        Ok(Self { graph, passages, rotations, sites })
    }

    pub fn empty() -> Self {
        Self {
            graph: AbstractGraph::default(),
            passages: BTreeMap::new(),
            rotations: BTreeMap::new(),
            sites: BTreeMap::new(),
        }
    }

    pub fn graph(&self) -> &AbstractGraph {
        &self.graph
    }

    pub fn passages(&self, edge: EdgeId) -> &[Passage] {
        self.passages.get(&edge).map_or(&[], Vec::as_slice)
    }

    pub fn all_passages(&self) -> &BTreeMap<EdgeId, Vec<Passage>> {
        &self.passages
    }

    pub fn rotation(&self, v: VertexId) -> &[EdgeEnd] {
        self.rotations.get(&v).map_or(&[], Vec::as_slice)
    }

    pub fn rotations(&self) -> &BTreeMap<VertexId, Vec<EdgeEnd>> {
        &self.rotations
    }

    pub fn crossings(&self) -> &BTreeMap<CrossingId, CrossingSite> {
        &self.sites
    }

    pub fn crossing(&self, c: CrossingId) -> Option<&CrossingSite> {
        self.sites.get(&c)
    }

    pub fn num_colors(&self) -> usize {
        self.graph.num_colors()
    }

    /// Number of arcs of an edge: undercrossings plus one.
    pub fn arc_count(&self, edge: EdgeId) -> usize {
        1 + self.passages(edge).iter().filter(|p| p.role == Role::Under).count()
    }

    /// The arc containing the passage at `index` on `edge`. An undercrossing
    /// belongs to the arc it ends.
    pub fn arc_at(&self, edge: EdgeId, index: usize) -> Arc {
        let ordinal = self.passages(edge)[..index].iter().filter(|p| p.role == Role::Under).count();
        Arc { edge, ordinal }
    }

    /// The over arc at a crossing.
    pub fn over_arc(&self, c: CrossingId) -> Option<Arc> {
        self.sites.get(&c).map(|s| self.arc_at(s.over.0, s.over.1))
    }

    /// Colors of the (over, under) strands.
    pub fn crossing_colors(&self, c: CrossingId) -> Option<(Color, Color)> {
        let s = self.sites.get(&c)?;
        let color = |e| self.graph.edge(e).map(|e| e.color);
        Some((color(s.over.0)?, color(s.under.0)?))
    }

    /// Crossings whose two passages lie in the same component.
    pub fn self_crossings(&self) -> Vec<CrossingId> {
        self.sites
            .keys()
            .copied()
            .filter(|&c| matches!(self.crossing_colors(c), Some((a, b)) if a == b))
            .collect()
    }

    /// True when every component is a cycle graph (one circle per color).
    pub fn is_link(&self) -> bool {
        self.graph.colors().into_iter().all(|c| {
            self.graph.betti(c) == Ok(1) && self.graph.vertices_of(c).all(|v| self.graph.degree(v) == 2)
        })
    }
}

fn crossing_sites(
    passages: &BTreeMap<EdgeId, Vec<Passage>>,
) -> Result<BTreeMap<CrossingId, CrossingSite>, ValidationError> {
    let mut seen: BTreeMap<CrossingId, Vec<(EdgeId, usize, Passage)>> = BTreeMap::new();
    for (&e, list) in passages {
        for (k, p) in list.iter().enumerate() {
            seen.entry(p.crossing).or_default().push((e, k, *p));
        }
    }
    let mut sites = BTreeMap::new();
    for (c, occ) in seen {
        if occ.len() != 2 {
            return Err(ValidationError::CrossingCount(c, occ.len()));
        }
        let (a, b) = (occ[0], occ[1]);
        let (over, under) = match (a.2.role, b.2.role) {
            (Role::Over, Role::Under) => (a, b),
            (Role::Under, Role::Over) => (b, a),
            _ => return Err(ValidationError::CrossingRoles(c)),
        };
        if a.2.sign != b.2.sign {
            return Err(ValidationError::CrossingSigns(c));
        }
        sites.insert(
            c,
            CrossingSite { over: (over.0, over.1), under: (under.0, under.1), sign: a.2.sign },
        );
    }
    Ok(sites)
}

fn check_rotations(
    graph: &AbstractGraph,
    rotations: &BTreeMap<VertexId, Vec<EdgeEnd>>,
) -> Result<(), ValidationError> {
    for &v in rotations.keys() {
        if graph.vertex_color(v).is_none() {
            return Err(ValidationError::RotationForUnknownVertex(v));
        }
    }
    for v in graph.vertices() {
        let mut expected: BTreeSet<EdgeEnd> = BTreeSet::new();
        for e in graph.incident(v) {
            if e.tail == v {
                expected.insert(EdgeEnd { edge: e.id, end: End::Tail });
            }
            if e.head == v {
                expected.insert(EdgeEnd { edge: e.id, end: End::Head });
            }
        }
        let listed = match rotations.get(&v) {
            Some(r) => r,
            None if expected.is_empty() => continue,
            None => return Err(ValidationError::MissingRotation(v)),
        };
        let mut got = BTreeSet::new();
        for &end in listed {
            if !expected.contains(&end) || !got.insert(end) {
                return Err(ValidationError::Rotation { vertex: v, end });
            }
        }
        if let Some(&end) = expected.difference(&got).next() {
            return Err(ValidationError::Rotation { vertex: v, end });
        }
    }
    Ok(())
}
