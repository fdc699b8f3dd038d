use std::collections::{BTreeMap, BTreeSet};

use super::{AbstractGraph, EdgeId, GraphError, Step, VertexId};
use crate::ring::Color;

/// Default limit on enumerated cycles and selections.
pub const DEFAULT_CYCLE_CAP: usize = 10_000;

/// A simple cycle as a closed walk with distinct vertices and distinct edges.
///
/// Canonical form: the walk starts at the smallest vertex, and of the two
/// traversal directions the one with the lexicographically smaller edge-id
/// sequence is kept.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Cycle {
    steps: Vec<Step>,
}

impl Cycle {
    /// Canonicalizes a closed walk. The caller guarantees simplicity.
    pub(crate) fn canonical(g: &AbstractGraph, walk: &[Step]) -> Cycle {
        let n = walk.len();
        let sources: Vec<VertexId> =
            walk.iter().map(|&s| g.step_source(s).expect("edge exists")).collect();
        let start = (0..n).min_by_key(|&k| sources[k]).expect("nonempty");
        let fwd: Vec<Step> = (0..n).map(|k| walk[(start + k) % n]).collect();
        // reverse direction from the same start vertex
        let bwd: Vec<Step> = (0..n).map(|k| walk[(start + n - 1 - k) % n].reversed()).collect();
        let key = |w: &[Step]| w.iter().map(|s| s.edge).collect::<Vec<_>>();
        let steps = if key(&bwd) < key(&fwd) { bwd } else { fwd };
        Cycle { steps }
    }

    pub fn steps(&self) -> &[Step] {
        &self.steps
    }

    pub fn edges(&self) -> BTreeSet<EdgeId> {
        self.steps.iter().map(|s| s.edge).collect()
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    /// Vertex sequence, starting vertex first.
    pub fn vertices(&self, g: &AbstractGraph) -> Vec<VertexId> {
        self.steps.iter().filter_map(|&s| g.step_source(s)).collect()
    }

    pub fn start(&self, g: &AbstractGraph) -> VertexId {
        g.step_source(self.steps[0]).expect("edge exists")
    }
}

/// At most one cycle per color; never empty.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CycleSelection {
    cycles: BTreeMap<Color, Cycle>,
}

impl CycleSelection {
    pub fn new(cycles: BTreeMap<Color, Cycle>) -> Self {
        Self { cycles }
    }

    pub fn cycles(&self) -> &BTreeMap<Color, Cycle> {
        &self.cycles
    }

    pub fn support(&self) -> BTreeSet<Color> {
        self.cycles.keys().copied().collect()
    }

    pub fn len(&self) -> usize {
        self.cycles.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cycles.is_empty()
    }

    pub fn contains(&self, color: Color) -> bool {
        self.cycles.contains_key(&color)
    }
}

pub(super) fn simple_cycles(
    g: &AbstractGraph,
    color: Color,
    cap: usize,
) -> Result<Vec<Cycle>, GraphError> {
    let verts: Vec<VertexId> = g.vertices_of(color).collect();
    let mut found = BTreeSet::new();
    let mut push = |found: &mut BTreeSet<Cycle>, walk: &[Step]| {
        found.insert(Cycle::canonical(g, walk));
        if found.len() > cap {
            Err(GraphError::CapExceeded { cap })
        } else {
            Ok(())
        }
    };
    for &s in &verts {
        for e in g.incident(s) {
            if e.is_loop() {
                push(&mut found, &[Step { edge: e.id, forward: true }])?;
            }
        }
        // paths from s through larger vertices only, closed by an unused edge back to s
        let mut path: Vec<Step> = Vec::new();
        let mut on_path = BTreeSet::from([s]);
        dfs(g, s, s, &mut path, &mut on_path, &mut found, &mut push)?;
    }
    Ok(found.into_iter().collect())
}

type Push<'a> = dyn FnMut(&mut BTreeSet<Cycle>, &[Step]) -> Result<(), GraphError> + 'a;

fn dfs(
    g: &AbstractGraph,
    start: VertexId,
    at: VertexId,
    path: &mut Vec<Step>,
    on_path: &mut BTreeSet<VertexId>,
    found: &mut BTreeSet<Cycle>,
    push: &mut Push<'_>,
) -> Result<(), GraphError> {
    for e in g.incident(at) {
        if e.is_loop() || path.iter().any(|s| s.edge == e.id) {
            continue;
        }
        let next = e.other(at);
        let step = Step { edge: e.id, forward: e.tail == at };
        if next == start {
            if !path.is_empty() {
                path.push(step);
                push(found, path)?;
                path.pop();
            }
        } else if next > start && !on_path.contains(&next) {
            path.push(step);
            on_path.insert(next);
            dfs(g, start, next, path, on_path, found, push)?;
            on_path.remove(&next);
            path.pop();
        }
    }
    Ok(())
}

pub(super) fn constituent_selections(
    g: &AbstractGraph,
    required: Option<Color>,
    cap: usize,
) -> Result<Vec<CycleSelection>, GraphError> {
    let mut per_color: Vec<(Color, Vec<Cycle>)> = Vec::new();
    for c in g.colors() {
        let cycles = simple_cycles(g, c, cap)?;
        if Some(c) == required && cycles.is_empty() {
            return Ok(Vec::new());
        }
        if !cycles.is_empty() {
            per_color.push((c, cycles));
        }
    }
    let mut out: Vec<BTreeMap<Color, Cycle>> = vec![BTreeMap::new()];
    for (c, cycles) in &per_color {
        let mut next = Vec::new();
        for partial in &out {
            if Some(*c) != required {
                next.push(partial.clone());
            }
            for cy in cycles {
                let mut p = partial.clone();
                p.insert(*c, cy.clone());
                next.push(p);
            }
            if next.len() > cap + 1 {
                return Err(GraphError::CapExceeded { cap });
            }
        }
        out = next;
    }
    let mut sels: Vec<CycleSelection> =
        out.into_iter().filter(|m| !m.is_empty()).map(CycleSelection::new).collect();
    sels.sort();
    Ok(sels)
}

#[cfg(test)]
mod tests {
    use super::super::tests::{k4, theta};
    use super::*;

    #[test]
    fn tree_has_no_cycles() {
        let g = AbstractGraph::new([1, 2, 3], [(1, 1, 2), (2, 2, 3)]).unwrap();
        assert!(g.simple_cycles(1, DEFAULT_CYCLE_CAP).unwrap().is_empty());
        assert!(g.constituent_selections(None, DEFAULT_CYCLE_CAP).unwrap().is_empty());
    }

    #[test]
    fn theta_has_three_cycles() {
        let cycles = theta().simple_cycles(1, DEFAULT_CYCLE_CAP).unwrap();
        assert_eq!(cycles.len(), 3);
        for c in &cycles {
            assert_eq!(c.len(), 2);
            assert!(theta().is_closed_walk(c.steps()));
        }
    }

    #[test]
    fn k4_has_seven_cycles() {
        let cycles = k4().simple_cycles(1, DEFAULT_CYCLE_CAP).unwrap();
        assert_eq!(cycles.iter().filter(|c| c.len() == 3).count(), 4);
        assert_eq!(cycles.iter().filter(|c| c.len() == 4).count(), 3);
    }

    #[test]
    fn canonical_start_and_direction() {
        let g = k4();
        for c in g.simple_cycles(1, DEFAULT_CYCLE_CAP).unwrap() {
            let vs = c.vertices(&g);
            assert_eq!(vs[0], *vs.iter().min().unwrap());
            assert!(c.steps()[0].edge < c.steps().last().unwrap().edge);
        }
    }

    #[test]
    fn cap_is_a_hard_error() {
        assert_eq!(k4().simple_cycles(1, 5), Err(GraphError::CapExceeded { cap: 5 }));
    }

    #[test]
    fn three_circles_give_seven_selections() {
        let g = AbstractGraph::new([1, 2, 3], [(1, 1, 1), (2, 2, 2), (3, 3, 3)]).unwrap();
        assert_eq!(g.constituent_selections(None, DEFAULT_CYCLE_CAP).unwrap().len(), 7);
    }

    #[test]
    fn required_color_filters_selections() {
        let g = AbstractGraph::new([1, 2, 3], [(1, 1, 2), (2, 1, 2), (3, 1, 2), (4, 3, 3)])
            .unwrap();
        let sels = g.constituent_selections(Some(2), DEFAULT_CYCLE_CAP).unwrap();
        assert_eq!(sels.len(), 4);
        assert!(sels.iter().all(|s| s.contains(2)));
        let sels = g.constituent_selections(None, DEFAULT_CYCLE_CAP).unwrap();
        assert_eq!(sels.len(), 7);
    }
}
