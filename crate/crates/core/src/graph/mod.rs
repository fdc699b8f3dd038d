//! Abstract (non-embedded) multigraphs with component colors.

mod cycles;

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use thiserror::Error;

use crate::ring::{Color, Variable};

pub use cycles::{Cycle, CycleSelection, DEFAULT_CYCLE_CAP};

pub type VertexId = u32;
pub type EdgeId = u32;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("vertex {0} declared twice")]
    DuplicateVertex(VertexId),
    #[error("edge {0} declared twice")]
    DuplicateEdge(EdgeId),
    #[error("edge {edge} references unknown vertex {vertex}")]
    UnknownVertex { edge: EdgeId, vertex: VertexId },
    #[error("color 0 is reserved; colors are 1-based")]
    ZeroColor,
    #[error("edge {edge} has color {edge_color} but its endpoint {vertex} has color {vertex_color}")]
    ColorMismatch { edge: EdgeId, vertex: VertexId, edge_color: Color, vertex_color: Color },
    #[error("vertex {0} has no incident edges and no color")]
    UncoloredVertex(VertexId),
    #[error("color {0} labels more than one connected component")]
    SplitColor(Color),
    #[error("unknown color {0}")]
    UnknownColor(Color),
    #[error("edge {0} belongs to the spanning tree")]
    EdgeInTree(EdgeId),
    #[error("unknown edge {0}")]
    UnknownEdge(EdgeId),
    #[error("cycle enumeration exceeded the cap of {cap}")]
    CapExceeded { cap: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Edge {
    pub id: EdgeId,
    pub tail: VertexId,
    pub head: VertexId,
    pub color: Color,
}

impl Edge {
    pub fn is_loop(&self) -> bool {
        self.tail == self.head
    }

    /// The endpoint opposite `v` (for a loop, `v` itself).
    pub fn other(&self, v: VertexId) -> VertexId {
        if self.tail == v {
            self.head
        } else {
            self.tail
        }
    }
}

/// One edge traversal in a walk.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Step {
    pub edge: EdgeId,
    /// `true` when traversed tail to head.
    pub forward: bool,
}

impl Step {
    pub fn reversed(self) -> Self {
        Self { edge: self.edge, forward: !self.forward }
    }
}

/// Finite multigraph whose connected components carry distinct colors.
/// Loops and parallel edges are allowed.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct AbstractGraph {
    vertices: BTreeMap<VertexId, Color>,
    edges: BTreeMap<EdgeId, Edge>,
}

/// Deterministic BFS spanning tree of one component.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpanningTree {
    pub color: Color,
    pub root: VertexId,
    /// Vertices in BFS order, root first.
    pub order: Vec<VertexId>,
    /// Parent edge of every non-root vertex.
    pub parent: BTreeMap<VertexId, EdgeId>,
    pub tree_edges: BTreeSet<EdgeId>,
    /// Non-tree edges in id order; the k-th one is generator `x_{color,k+1}`.
    pub non_tree: Vec<EdgeId>,
}

impl SpanningTree {
    pub fn generator_of(&self, edge: EdgeId) -> Option<Variable> {
        self.non_tree
            .iter()
            .position(|&e| e == edge)
            .map(|k| Variable::new(self.color, k as u32 + 1))
    }

    pub fn generators(&self) -> impl Iterator<Item = (Variable, EdgeId)> + '_ {
        self.non_tree
            .iter()
            .enumerate()
            .map(|(k, &e)| (Variable::new(self.color, k as u32 + 1), e))
    }
}

impl AbstractGraph {
    /// Builds a graph and assigns colors 1..n to its connected components,
    /// ordered by smallest vertex id.
    pub fn new(
        vertices: impl IntoIterator<Item = VertexId>,
        edges: impl IntoIterator<Item = (EdgeId, VertexId, VertexId)>,
    ) -> Result<Self, GraphError> {
        let mut g = AbstractGraph::default();
        for v in vertices {
            if g.vertices.insert(v, 0).is_some() {
                return Err(GraphError::DuplicateVertex(v));
            }
        }
        for (id, tail, head) in edges {
            g.insert_edge(Edge { id, tail, head, color: 0 })?;
        }
        let parts = g.partition();
        for (k, part) in parts.iter().enumerate() {
            let color = k as Color + 1;
            for v in part {
                g.vertices.insert(*v, color);
            }
        }
        let colors = g.vertices.clone();
        for e in g.edges.values_mut() {
            e.color = colors[&e.tail];
        }
        Ok(g)
    }

    /// Builds a graph from stored labels, checking they match the connected
    /// components exactly. Vertices without a color inherit it from their
    /// incident edges.
    pub fn with_colors(
        vertices: impl IntoIterator<Item = (VertexId, Option<Color>)>,
        edges: impl IntoIterator<Item = Edge>,
    ) -> Result<Self, GraphError> {
        let mut g = AbstractGraph::default();
        let mut declared = BTreeMap::new();
        for (v, c) in vertices {
            if g.vertices.insert(v, 0).is_some() {
                return Err(GraphError::DuplicateVertex(v));
            }
            if let Some(c) = c {
                declared.insert(v, c);
            }
        }
        for e in edges {
            if e.color == 0 {
                return Err(GraphError::ZeroColor);
            }
            g.insert_edge(e)?;
        }
        for e in g.edges.values() {
            for v in [e.tail, e.head] {
                let slot = g.vertices.get_mut(&v).expect("checked in insert_edge");
                if *slot == 0 {
                    *slot = e.color;
                } else if *slot != e.color {
                    return Err(GraphError::ColorMismatch {
                        edge: e.id,
                        vertex: v,
                        edge_color: e.color,
                        vertex_color: *slot,
                    });
                }
            }
        }
        for (v, c) in declared {
            if c == 0 {
                return Err(GraphError::ZeroColor);
            }
            let slot = g.vertices.get_mut(&v).expect("declared above");
            if *slot == 0 {
                *slot = c;
            } else if *slot != c {
                let edge = g.edges.values().find(|e| e.tail == v || e.head == v).map_or(0, |e| e.id);
                return Err(GraphError::ColorMismatch {
                    edge,
                    vertex: v,
                    edge_color: *slot,
                    vertex_color: c,
                });
            }
        }
        if let Some((&v, _)) = g.vertices.iter().find(|(_, &c)| c == 0) {
            return Err(GraphError::UncoloredVertex(v));
        }
        // edges force one color per component; distinct components need distinct colors
        let mut seen = BTreeSet::new();
        for part in g.partition() {
            let c = g.vertices[&part[0]];
            if !seen.insert(c) {
                return Err(GraphError::SplitColor(c));
            }
        }
        Ok(g)
    }

    fn insert_edge(&mut self, e: Edge) -> Result<(), GraphError> {
        for v in [e.tail, e.head] {
            if !self.vertices.contains_key(&v) {
                return Err(GraphError::UnknownVertex { edge: e.id, vertex: v });
            }
        }
        if self.edges.insert(e.id, e).is_some() {
            return Err(GraphError::DuplicateEdge(e.id));
        }
        Ok(())
    }

    /// Connected vertex sets, each sorted, ordered by smallest vertex.
    fn partition(&self) -> Vec<Vec<VertexId>> {
        let adj = self.adjacency();
        let mut seen = BTreeSet::new();
        let mut parts = Vec::new();
        for &start in self.vertices.keys() {
            if !seen.insert(start) {
                continue;
            }
            let mut part = vec![start];
            let mut stack = vec![start];
            while let Some(v) = stack.pop() {
                for &(_, w) in adj.get(&v).into_iter().flatten() {
                    if seen.insert(w) {
                        part.push(w);
                        stack.push(w);
                    }
                }
            }
            part.sort_unstable();
            parts.push(part);
        }
        parts
    }

    /// Incident (edge, neighbor) pairs per vertex, edges in id order.
    /// A loop appears once in its vertex's list.
    fn adjacency(&self) -> BTreeMap<VertexId, Vec<(EdgeId, VertexId)>> {
        let mut adj: BTreeMap<VertexId, Vec<(EdgeId, VertexId)>> = BTreeMap::new();
        for e in self.edges.values() {
            adj.entry(e.tail).or_default().push((e.id, e.head));
            if !e.is_loop() {
                adj.entry(e.head).or_default().push((e.id, e.tail));
            }
        }
        adj
    }

    pub fn vertices(&self) -> impl Iterator<Item = VertexId> + '_ {
        self.vertices.keys().copied()
    }

    pub fn vertex_color(&self, v: VertexId) -> Option<Color> {
        self.vertices.get(&v).copied()
    }

    pub fn edges(&self) -> impl Iterator<Item = &Edge> {
        self.edges.values()
    }

    pub fn edge(&self, id: EdgeId) -> Option<&Edge> {
        self.edges.get(&id)
    }

    pub fn num_vertices(&self) -> usize {
        self.vertices.len()
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    /// Distinct colors in increasing order.
    pub fn colors(&self) -> Vec<Color> {
        let set: BTreeSet<Color> = self.vertices.values().copied().collect();
        set.into_iter().collect()
    }

    pub fn num_colors(&self) -> usize {
        self.colors().len()
    }

    fn check_color(&self, color: Color) -> Result<(), GraphError> {
        if self.vertices.values().any(|&c| c == color) {
            Ok(())
        } else {
            Err(GraphError::UnknownColor(color))
        }
    }

    pub fn vertices_of(&self, color: Color) -> impl Iterator<Item = VertexId> + '_ {
        self.vertices.iter().filter(move |(_, &c)| c == color).map(|(&v, _)| v)
    }

    pub fn edges_of(&self, color: Color) -> impl Iterator<Item = &Edge> {
        self.edges.values().filter(move |e| e.color == color)
    }

    /// Edges incident to `v` in id order; a loop is listed once.
    pub fn incident(&self, v: VertexId) -> impl Iterator<Item = &Edge> {
        self.edges.values().filter(move |e| e.tail == v || e.head == v)
    }

    /// Number of edge-ends at `v`; a loop counts twice.
    pub fn degree(&self, v: VertexId) -> usize {
        self.incident(v).map(|e| if e.is_loop() { 2 } else { 1 }).sum()
    }

    /// First Betti number `E - V + 1` of one component.
    pub fn betti(&self, color: Color) -> Result<usize, GraphError> {
        self.check_color(color)?;
        let v = self.vertices_of(color).count();
        let e = self.edges_of(color).count();
        Ok(e + 1 - v)
    }

    /// The subgraph of each color; labels are kept.
    pub fn components(&self) -> BTreeMap<Color, AbstractGraph> {
        let mut out: BTreeMap<Color, AbstractGraph> = BTreeMap::new();
        for (&v, &c) in &self.vertices {
            out.entry(c).or_default().vertices.insert(v, c);
        }
        for e in self.edges.values() {
            out.entry(e.color).or_default().edges.insert(e.id, *e);
        }
        out
    }

    /// Subgraph on the colors accepted by `keep`.
    pub fn restrict(&self, keep: impl Fn(Color) -> bool) -> AbstractGraph {
        AbstractGraph {
            vertices: self.vertices.iter().filter(|(_, &c)| keep(c)).map(|(&v, &c)| (v, c)).collect(),
            edges: self.edges.iter().filter(|(_, e)| keep(e.color)).map(|(&k, &e)| (k, e)).collect(),
        }
    }

    /// Relabels colors through `map`; callers keep the map injective.
    pub(crate) fn recolor(&self, map: &BTreeMap<Color, Color>) -> AbstractGraph {
        AbstractGraph {
            vertices: self.vertices.iter().map(|(&v, c)| (v, map[c])).collect(),
            edges: self
                .edges
                .iter()
                .map(|(&k, e)| (k, Edge { color: map[&e.color], ..*e }))
                .collect(),
        }
    }

    /// Breadth-first spanning tree from the smallest vertex of the component,
    /// scanning incident edges in id order.
    pub fn spanning_tree(&self, color: Color) -> Result<SpanningTree, GraphError> {
        self.check_color(color)?;
        let adj = self.adjacency();
        let root = self.vertices_of(color).next().expect("color checked");
        let mut order = vec![root];
        let mut parent = BTreeMap::new();
        let mut tree_edges = BTreeSet::new();
        let mut visited = BTreeSet::from([root]);
        let mut queue = VecDeque::from([root]);
        while let Some(v) = queue.pop_front() {
            for &(e, w) in adj.get(&v).into_iter().flatten() {
                if visited.insert(w) {
                    parent.insert(w, e);
                    tree_edges.insert(e);
                    order.push(w);
                    queue.push_back(w);
                }
            }
        }
        let non_tree = self
            .edges_of(color)
            .map(|e| e.id)
            .filter(|id| !tree_edges.contains(id))
            .collect();
        Ok(SpanningTree { color, root, order, parent, tree_edges, non_tree })
    }

    /// The unique tree path from the head of a non-tree edge back to its tail.
    /// Empty for loops.
    pub fn tree_path(&self, tree: &SpanningTree, edge: EdgeId) -> Result<Vec<Step>, GraphError> {
        let e = *self.edge(edge).ok_or(GraphError::UnknownEdge(edge))?;
        if tree.tree_edges.contains(&edge) {
            return Err(GraphError::EdgeInTree(edge));
        }
        if e.color != tree.color {
            return Err(GraphError::UnknownEdge(edge));
        }
        // climb from both ends to the root, then splice at the lowest common vertex
        let climb = |mut v: VertexId| {
            let mut path = vec![v];
            while let Some(&pe) = tree.parent.get(&v) {
                v = self.edges[&pe].other(v);
                path.push(v);
            }
            path
        };
        let up_head = climb(e.head);
        let up_tail = climb(e.tail);
        let on_tail: BTreeSet<VertexId> = up_tail.iter().copied().collect();
        let meet = up_head.iter().position(|v| on_tail.contains(v)).expect("same tree");
        let lca = up_head[meet];
        let mut steps = Vec::new();
        for &v in &up_head[..meet] {
            let pe = tree.parent[&v];
            steps.push(Step { edge: pe, forward: self.edges[&pe].tail == v });
        }
        let tail_meet = up_tail.iter().position(|&v| v == lca).expect("lca on tail path");
        for &v in up_tail[..tail_meet].iter().rev() {
            let pe = tree.parent[&v];
            steps.push(Step { edge: pe, forward: self.edges[&pe].head == v });
        }
        Ok(steps)
    }

    /// Start vertex of a step.
    pub fn step_source(&self, s: Step) -> Option<VertexId> {
        self.edge(s.edge).map(|e| if s.forward { e.tail } else { e.head })
    }

    /// End vertex of a step.
    pub fn step_target(&self, s: Step) -> Option<VertexId> {
        self.edge(s.edge).map(|e| if s.forward { e.head } else { e.tail })
    }

    /// True when consecutive steps share vertices and the walk returns to
    /// its start.
    pub fn is_closed_walk(&self, walk: &[Step]) -> bool {
        let Some(first) = walk.first() else { return false };
        let mut at = match self.step_source(*first) {
            Some(v) => v,
            None => return false,
        };
        let start = at;
        for &s in walk {
            match (self.step_source(s), self.step_target(s)) {
                (Some(a), Some(b)) if a == at => at = b,
                _ => return false,
            }
        }
        at == start
    }

    /// All simple cycles of one component in canonical form.
    pub fn simple_cycles(&self, color: Color, cap: usize) -> Result<Vec<Cycle>, GraphError> {
        self.check_color(color)?;
        cycles::simple_cycles(self, color, cap)
    }

    /// Every way of picking at most one simple cycle per color, with at least
    /// one cycle overall; `required` forces that color to be present.
    pub fn constituent_selections(
        &self,
        required: Option<Color>,
        cap: usize,
    ) -> Result<Vec<CycleSelection>, GraphError> {
        if let Some(c) = required {
            self.check_color(c)?;
        }
        cycles::constituent_selections(self, required, cap)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn theta() -> AbstractGraph {
        AbstractGraph::new([1, 2], [(1, 1, 2), (2, 1, 2), (3, 1, 2)]).unwrap()
    }

    pub(crate) fn k4() -> AbstractGraph {
        AbstractGraph::new(
            [1, 2, 3, 4],
            [(1, 1, 2), (2, 1, 3), (3, 1, 4), (4, 2, 3), (5, 2, 4), (6, 3, 4)],
        )
        .unwrap()
    }

    #[test]
    fn two_triangles_two_components() {
        let g = AbstractGraph::new(
            1..=6,
            [(1, 1, 2), (2, 2, 3), (3, 3, 1), (4, 4, 5), (5, 5, 6), (6, 6, 4)],
        )
        .unwrap();
        assert_eq!(g.components().len(), 2);
        assert_eq!(g.vertex_color(4), Some(2));
    }

    #[test]
    fn k4_one_component() {
        assert_eq!(k4().components().len(), 1);
    }

    #[test]
    fn example_two_graph_has_four_components() {
        // theta, circle, handcuff, K4
        let g = AbstractGraph::new(
            1..=9,
            [
                (1, 1, 2),
                (2, 1, 2),
                (3, 1, 2),
                (4, 3, 3),
                (5, 4, 4),
                (6, 4, 5),
                (7, 5, 5),
                (8, 6, 7),
                (9, 6, 8),
                (10, 6, 9),
                (11, 7, 8),
                (12, 7, 9),
                (13, 8, 9),
            ],
        )
        .unwrap();
        assert_eq!(g.components().len(), 4);
        assert_eq!(
            g.colors().iter().map(|&c| g.betti(c).unwrap()).collect::<Vec<_>>(),
            vec![2, 1, 2, 3]
        );
    }

    #[test]
    fn spanning_tree_loop() {
        let g = AbstractGraph::new([1], [(1, 1, 1)]).unwrap();
        let t = g.spanning_tree(1).unwrap();
        assert!(t.tree_edges.is_empty());
        assert_eq!(t.non_tree, vec![1]);
        assert_eq!(g.tree_path(&t, 1).unwrap(), vec![]);
    }

    #[test]
    fn spanning_tree_theta() {
        let g = theta();
        let t = g.spanning_tree(1).unwrap();
        assert_eq!(t.tree_edges.len(), 1);
        assert_eq!(t.non_tree, vec![2, 3]);
        assert_eq!(g.tree_path(&t, 2).unwrap(), vec![Step { edge: 1, forward: false }]);
        assert_eq!(g.tree_path(&t, 1), Err(GraphError::EdgeInTree(1)));
    }

    #[test]
    fn spanning_tree_k4() {
        let g = k4();
        let t = g.spanning_tree(1).unwrap();
        assert_eq!(t.tree_edges.len(), 3);
        assert_eq!(t.non_tree.len(), 3);
        assert_eq!(g.betti(1).unwrap(), 3);
        for &e in &t.non_tree {
            let p = g.tree_path(&t, e).unwrap();
            assert!(p.len() <= 2);
            let mut walk = vec![Step { edge: e, forward: true }];
            walk.extend(p);
            assert!(g.is_closed_walk(&walk));
        }
    }

    #[test]
    fn stored_labels_must_match_components() {
        let e = |id, tail, head, color| Edge { id, tail, head, color };
        let split = AbstractGraph::with_colors(
            [(1, None), (2, None), (3, None), (4, None)],
            [e(1, 1, 2, 1), e(2, 3, 4, 1)],
        );
        assert_eq!(split, Err(GraphError::SplitColor(1)));
        let mismatch =
            AbstractGraph::with_colors([(1, None), (2, None)], [e(1, 1, 2, 1), e(2, 2, 1, 2)]);
        assert!(matches!(mismatch, Err(GraphError::ColorMismatch { .. })));
        let isolated = AbstractGraph::with_colors([(1, None)], []);
        assert_eq!(isolated, Err(GraphError::UncoloredVertex(1)));
        let ok = AbstractGraph::with_colors([(1, Some(7))], []).unwrap();
        assert_eq!(ok.colors(), vec![7]);
    }
}
