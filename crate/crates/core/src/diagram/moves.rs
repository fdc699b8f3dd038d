use std::collections::{BTreeMap, BTreeSet};

use super::{CrossingId, EdgeEnd, EmbeddingCode, End, MoveError, Passage};
use crate::graph::{AbstractGraph, Cycle, CycleSelection, Edge, EdgeId, VertexId};
use crate::ring::Color;

impl EmbeddingCode {
    /// Swaps over and under at a self-crossing of one component and negates
    /// its sign.
    pub fn crossing_change(&self, c: CrossingId) -> Result<EmbeddingCode, MoveError> {
        let site = self.crossing(c).ok_or(MoveError::UnknownCrossing(c))?;
        let (over, under) = self.crossing_colors(c).expect("site edges exist");
        if over != under {
            return Err(MoveError::IllegalMove { crossing: c, over, under });
        }
        let mut passages = self.all_passages().clone();
        for (e, k) in [site.over, site.under] {
            let p = &mut passages.get_mut(&e).expect("site edge")[k];
            p.role = p.role.swapped();
            p.sign = p.sign.negated();
        }
        Ok(EmbeddingCode::new(self.graph().clone(), passages, self.rotations().clone())
            .expect("crossing change keeps a code valid"))
    }

    /// The link formed by the selected cycles. Each cycle becomes one loop
    /// edge (id = smallest edge id of the cycle) at the cycle's start vertex,
    /// carrying the concatenated passages; crossings with deleted edges are
    /// dropped. Colors are kept.
    ///
    /// Steps taken against an edge's orientation list its passages in reverse.
    /// A crossing between a reversed and a non-reversed strand changes sign;
    /// roles never change.
    pub fn extract_sublink(&self, sel: &CycleSelection) -> Result<EmbeddingCode, MoveError> {
        let g = self.graph();
        let mut on_cycle: BTreeMap<EdgeId, bool> = BTreeMap::new();
        for (&color, cycle) in sel.cycles() {
            check_cycle(g, color, cycle)?;
            for s in cycle.steps() {
                on_cycle.insert(s.edge, !s.forward);
            }
        }
        let kept: BTreeSet<CrossingId> = self
            .crossings()
            .iter()
            .filter(|(_, s)| on_cycle.contains_key(&s.over.0) && on_cycle.contains_key(&s.under.0))
            .map(|(&c, _)| c)
            .collect();
        let flips: BTreeSet<CrossingId> = kept
            .iter()
            .copied()
            .filter(|c| {
                let s = self.crossing(*c).expect("kept");
                on_cycle[&s.over.0] != on_cycle[&s.under.0]
            })
            .collect();

        let mut vertices = Vec::new();
        let mut edges = Vec::new();
        let mut passages = BTreeMap::new();
        let mut rotations = BTreeMap::new();
        for (&color, cycle) in sel.cycles() {
            let v = cycle.start(g);
            let id = cycle.steps().iter().map(|s| s.edge).min().expect("nonempty cycle");
            let mut list: Vec<Passage> = Vec::new();
            for s in cycle.steps() {
                let src = self.passages(s.edge);
                let ordered: Box<dyn Iterator<Item = &Passage>> =
                    if s.forward { Box::new(src.iter()) } else { Box::new(src.iter().rev()) };
                for p in ordered.filter(|p| kept.contains(&p.crossing)) {
                    let sign = if flips.contains(&p.crossing) { p.sign.negated() } else { p.sign };
                    list.push(Passage { sign, ..*p });
                }
            }
            let single_loop = cycle.len() == 1 && cycle.steps()[0].forward;
            let rotation = if single_loop {
                self.rotation(v).iter().copied().filter(|x| x.edge == id).collect()
            } else {
                vec![EdgeEnd { edge: id, end: End::Tail }, EdgeEnd { edge: id, end: End::Head }]
            };
            vertices.push((v, Some(color)));
            edges.push(Edge { id, tail: v, head: v, color });
            passages.insert(id, list);
            rotations.insert(v, rotation);
        }
        let graph = AbstractGraph::with_colors(vertices, edges)
            .map_err(|e| MoveError::BadSelection(e.to_string()))?;
        EmbeddingCode::new(graph, passages, rotations).map_err(|e| MoveError::BadSelection(e.to_string()))
    }

    /// Removes one component and every crossing it takes part in; remaining
    /// colors are renumbered 1..k in their original order.
    pub fn delete_component(&self, color: Color) -> Result<EmbeddingCode, MoveError> {
        let g = self.graph();
        if !g.colors().contains(&color) {
            return Err(MoveError::UnknownColor(color));
        }
        let rest = g.restrict(|c| c != color);
        let map: BTreeMap<Color, Color> =
            rest.colors().into_iter().enumerate().map(|(k, c)| (c, k as Color + 1)).collect();
        let graph = rest.recolor(&map);
        let dropped: BTreeSet<CrossingId> = self
            .crossings()
            .iter()
            .filter(|(_, s)| {
                [s.over.0, s.under.0].iter().any(|e| g.edge(*e).is_some_and(|e| e.color == color))
            })
            .map(|(&c, _)| c)
            .collect();
        let passages: BTreeMap<EdgeId, Vec<Passage>> = self
            .all_passages()
            .iter()
            .filter(|(e, _)| graph.edge(**e).is_some())
            .map(|(&e, list)| {
                (e, list.iter().copied().filter(|p| !dropped.contains(&p.crossing)).collect())
            })
            .collect();
        let rotations: BTreeMap<VertexId, Vec<EdgeEnd>> = self
            .rotations()
            .iter()
            .filter(|(v, _)| graph.vertex_color(**v).is_some())
            .map(|(&v, r)| (v, r.clone()))
            .collect();
        Ok(EmbeddingCode::new(graph, passages, rotations).expect("deletion keeps a code valid"))
    }
}

fn check_cycle(g: &AbstractGraph, color: Color, cycle: &Cycle) -> Result<(), MoveError> {
    if cycle.is_empty() || !g.is_closed_walk(cycle.steps()) {
        return Err(MoveError::BadSelection(format!("cycle of color {color} is not a closed walk")));
    }
    for s in cycle.steps() {
        if g.edge(s.edge).map(|e| e.color) != Some(color) {
            return Err(MoveError::BadSelection(format!(
                "edge {} is not in component {color}",
                s.edge
            )));
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::super::{parse, serialize, MoveError, Role, Sign};
    use crate::graph::DEFAULT_CYCLE_CAP;

    // theta (edges 1,2,3 between vertices 1 and 2) clasped by a circle (edge 4)
    // that passes over edge 1 and under edge 2
    const THETA_CIRCLE: &str = "\
vertex 1 rotation +1 +2 +3
vertex 2 rotation -3 -2 -1
vertex 3 rotation +4 -4
edge 1 component 1 from 1 to 2 passes X1u+
edge 2 component 1 from 1 to 2 passes X2o-
edge 3 component 1 from 1 to 2 passes
edge 4 component 2 from 3 to 3 passes X1o+ X2u-
";

    #[test]
    fn crossing_change_is_an_involution() {
        let text = "vertex 1 rotation +1 -1\nedge 1 component 1 from 1 to 1 passes X1o+ X2u- X1u+ X2o-\n";
        let code = parse(text).unwrap();
        let once = code.crossing_change(1).unwrap();
        assert_ne!(once, code);
        assert_eq!(once.graph(), code.graph());
        let p = once.passages(1)[0];
        assert_eq!((p.role, p.sign), (Role::Under, Sign::Negative));
        assert_eq!(once.crossing_change(1).unwrap(), code);
    }

    #[test]
    fn inter_component_change_is_illegal() {
        let code = parse(THETA_CIRCLE).unwrap();
        assert_eq!(
            code.crossing_change(1),
            Err(MoveError::IllegalMove { crossing: 1, over: 2, under: 1 })
        );
        assert_eq!(code.crossing_change(9), Err(MoveError::UnknownCrossing(9)));
    }

    #[test]
    fn sublink_concatenates_passages() {
        let code = parse(THETA_CIRCLE).unwrap();
        let sels = code.graph().constituent_selections(Some(2), DEFAULT_CYCLE_CAP).unwrap();
        assert_eq!(sels.len(), 4);
        // cycle through edges 1 and 2: edge 1 forward, edge 2 backward
        let sel = sels.iter().find(|s| s.len() == 2 && s.cycles()[&1].edges().contains(&2) && s.cycles()[&1].edges().contains(&1)).unwrap();
        let link = code.extract_sublink(sel).unwrap();
        assert!(link.is_link());
        assert_eq!(link.graph().colors(), vec![1, 2]);
        let passes: Vec<String> = link.passages(1).iter().map(|p| p.to_string()).collect();
        // edge 2 is walked backwards, so its crossing with the circle flips sign
        assert_eq!(passes, ["X1u+", "X2o+"]);
        let circle: Vec<String> = link.passages(4).iter().map(|p| p.to_string()).collect();
        assert_eq!(circle, ["X1o+", "X2u+"]);
    }

    #[test]
    fn full_selection_of_a_link_is_identity() {
        let text = "vertex 1 rotation +1 -1\nvertex 2 rotation -2 +2\nedge 1 component 1 from 1 to 1 passes X1o+ X2u+\nedge 2 component 2 from 2 to 2 passes X1u+ X2o+\n";
        let code = parse(text).unwrap();
        let sels = code.graph().constituent_selections(None, DEFAULT_CYCLE_CAP).unwrap();
        let full = sels.iter().find(|s| s.len() == 2).unwrap();
        assert_eq!(code.extract_sublink(full).unwrap(), code);
    }

    #[test]
    fn single_cycle_has_no_crossings_with_others() {
        let code = parse(THETA_CIRCLE).unwrap();
        let sels = code.graph().constituent_selections(Some(2), DEFAULT_CYCLE_CAP).unwrap();
        let alone = sels.iter().find(|s| s.len() == 1).unwrap();
        let link = code.extract_sublink(alone).unwrap();
        assert!(link.crossings().is_empty());
    }

    #[test]
    fn delete_renumbers() {
        let code = parse(THETA_CIRCLE).unwrap();
        let rest = code.delete_component(1).unwrap();
        assert_eq!(rest.graph().colors(), vec![1]);
        assert!(rest.crossings().is_empty());
        assert_eq!(serialize(&rest), "vertex 3 rotation +4 -4\nedge 4 component 1 from 3 to 3 passes\n");
        let none = rest.delete_component(1).unwrap();
        assert_eq!(none.graph().num_vertices(), 0);
        assert_eq!(code.delete_component(5), Err(MoveError::UnknownColor(5)));
    }
}
