use std::collections::BTreeMap;

use super::{PresentationError, Relator};
use crate::diagram::{Arc, EdgeEnd, EmbeddingCode, End, Role, Sign};
use crate::graph::{EdgeId, SpanningTree, Step, VertexId};
use crate::ring::{Color, MagnusSeries, Variable};

/// Resolved meridians, longitudes and surface elements of a diagram.
///
/// Conventions: composition is left to right. Passing under a crossing with
/// sign s and overstrand meridian m turns the current meridian a into
/// `u^-1 a u` with `u = m^s`; the product of those `u` along an edge is the
/// edge word `w`, so the last arc of an edge is `w^-1 b w` for its base
/// meridian b. At a vertex, the product over the counterclockwise rotation of
/// `m` for outgoing ends and `m^-1` for incoming ends is 1.
#[derive(Debug, Clone)]
pub struct PresentationBundle {
    max_degree: usize,
    num_colors: usize,
    trees: BTreeMap<Color, SpanningTree>,
    generators: BTreeMap<Variable, EdgeId>,
    arcs: BTreeMap<EdgeId, Vec<MagnusSeries>>,
    edge_words: BTreeMap<EdgeId, MagnusSeries>,
    longitudes: BTreeMap<Variable, MagnusSeries>,
    surface_elements: BTreeMap<Color, MagnusSeries>,
    root_relations: BTreeMap<Color, MagnusSeries>,
}

struct State<'a> {
    code: &'a EmbeddingCode,
    d: usize,
    arcs: BTreeMap<EdgeId, Vec<MagnusSeries>>,
    words: BTreeMap<EdgeId, MagnusSeries>,
}

impl State<'_> {
    fn meridian(&self, arc: Arc) -> &MagnusSeries {
        &self.arcs[&arc.edge][arc.ordinal]
    }

    /// Recomputes the arcs and word of `e` from its base meridian `base`.
    fn propagate(&mut self, e: EdgeId, base: MagnusSeries) {
        let mut current = base;
        let mut list = vec![current.clone()];
        let mut word = MagnusSeries::one(self.d);
        for p in self.code.passages(e) {
            if p.role != Role::Under {
                continue;
            }
            let over = self.code.over_arc(p.crossing).expect("validated crossing");
            let m = self.meridian(over);
            let m_inv = invert(m);
            let (u, u_inv) = match p.sign {
                Sign::Positive => (m.clone(), m_inv),
                Sign::Negative => (m_inv, m.clone()),
            };
            current = u_inv.multiply(&current).multiply(&u);
            word = word.multiply(&u);
            list.push(current.clone());
        }
        self.arcs.insert(e, list);
        self.words.insert(e, word);
    }

    fn base(&self, e: EdgeId) -> MagnusSeries {
        self.arcs[&e][0].clone()
    }

    /// Contribution of one edge-end to a vertex relation.
    fn end_term(&self, end: EdgeEnd) -> MagnusSeries {
        let arcs = &self.arcs[&end.edge];
        match end.end {
            End::Tail => arcs[0].clone(),
            End::Head => invert(arcs.last().expect("at least one arc")),
        }
    }

    fn product(&self, ends: impl IntoIterator<Item = EdgeEnd>) -> MagnusSeries {
        ends.into_iter()
            .fold(MagnusSeries::one(self.d), |acc, end| acc.multiply(&self.end_term(end)))
    }

    fn sweep(&mut self, trees: &BTreeMap<Color, SpanningTree>) {
        let edges: Vec<EdgeId> = self.arcs.keys().copied().collect();
        for e in edges {
            let b = self.base(e);
            self.propagate(e, b);
        }
        for tree in trees.values() {
            for &v in tree.order.iter().skip(1).rev() {
                let p = tree.parent[&v];
                let rotation = self.code.rotation(v);
                let at = rotation
                    .iter()
                    .position(|end| end.edge == p)
                    .expect("parent edge is incident");
                let rest = self.product(
                    rotation[at + 1..].iter().chain(&rotation[..at]).copied(),
                );
                let base = match rotation[at].end {
                    End::Tail => invert(&rest),
                    End::Head => {
                        let w = &self.words[&p];
                        w.multiply(&rest).multiply(&invert(w))
                    }
                };
                self.propagate(p, base);
            }
        }
    }
}

fn invert(s: &MagnusSeries) -> MagnusSeries {
    s.inverse().expect("meridians have constant term 1")
}

impl PresentationBundle {
    /// Resolves a code at the exact truncation degree (number of colors).
    pub fn resolve(code: &EmbeddingCode) -> Result<Self, PresentationError> {
        Self::resolve_with_degree(code, code.num_colors().max(1))
    }

    /// Resolves with an explicit truncation degree. Degrees below the number
    /// of colors give approximate results.
    pub fn resolve_with_degree(
        code: &EmbeddingCode,
        max_degree: usize,
    ) -> Result<Self, PresentationError> {
        let g = code.graph();
        let d = max_degree;
        let mut trees = BTreeMap::new();
        let mut generators = BTreeMap::new();
        for c in g.colors() {
            let tree = g.spanning_tree(c)?;
            generators.extend(tree.generators());
            trees.insert(c, tree);
        }
        let mut state = State { code, d, arcs: BTreeMap::new(), words: BTreeMap::new() };
        let gen_of: BTreeMap<EdgeId, Variable> = generators.iter().map(|(&v, &e)| (e, v)).collect();
        for e in g.edges() {
            let base = match gen_of.get(&e.id) {
                Some(&var) => MagnusSeries::generator(var, d),
                None => MagnusSeries::one(d),
            };
            state.arcs.insert(e.id, vec![base; code.arc_count(e.id)]);
            state.words.insert(e.id, MagnusSeries::one(d));
        }
        let sweeps = d + 1;
        for _ in 0..sweeps {
            state.sweep(&trees);
        }
        let (arcs, words) = (state.arcs.clone(), state.words.clone());
        state.sweep(&trees);
        if state.arcs != arcs || state.words != words {
            return Err(PresentationError::NonConvergence { sweeps });
        }

        let mut root_relations = BTreeMap::new();
        for (&c, tree) in &trees {
            let rotation = code.rotation(tree.root);
            let start = (0..rotation.len()).min_by_key(|&k| rotation[k]).unwrap_or(0);
            let ordered = rotation[start..].iter().chain(&rotation[..start]).copied();
            root_relations.insert(c, state.product(ordered));
        }

        let mut bundle = PresentationBundle {
            max_degree: d,
            num_colors: code.num_colors(),
            trees,
            generators,
            arcs: state.arcs,
            edge_words: state.words,
            longitudes: BTreeMap::new(),
            surface_elements: BTreeMap::new(),
            root_relations,
        };
        for (&var, &e) in &bundle.generators {
            let tree = &bundle.trees[&var.color];
            let mut walk = vec![Step { edge: e, forward: true }];
            walk.extend(g.tree_path(tree, e)?);
            let l = bundle.walk_longitude(code, &walk)?;
            bundle.longitudes.insert(var, l);
        }
        for (&c, tree) in &bundle.trees {
            let mut r = MagnusSeries::one(d);
            for (var, e) in tree.generators() {
                let m = bundle.base_meridian(e);
                let k = MagnusSeries::commutator(m, &bundle.longitudes[&var])
                    .expect("constant term 1");
                r = r.multiply(&k);
            }
            bundle.surface_elements.insert(c, r);
        }
        Ok(bundle)
    }

    /// Product of the edge words along a closed walk; a backward step
    /// contributes the inverse word.
    pub fn walk_longitude(
        &self,
        code: &EmbeddingCode,
        walk: &[Step],
    ) -> Result<MagnusSeries, PresentationError> {
        let g = code.graph();
        if !g.is_closed_walk(walk) {
            return Err(PresentationError::BadWalk(format!("{walk:?} is not a closed walk")));
        }
        let mut out = MagnusSeries::one(self.max_degree);
        for s in walk {
            let w = self
                .edge_words
                .get(&s.edge)
                .ok_or_else(|| PresentationError::BadWalk(format!("edge {} not resolved", s.edge)))?;
            out = out.multiply(&if s.forward { w.clone() } else { invert(w) });
        }
        Ok(out)
    }

    pub fn max_degree(&self) -> usize {
        self.max_degree
    }

    /// False when the truncation degree is below the number of colors.
    pub fn is_exact(&self) -> bool {
        self.max_degree >= self.num_colors
    }

    pub fn generators(&self) -> impl Iterator<Item = Variable> + '_ {
        self.generators.keys().copied()
    }

    pub fn generator_edge(&self, var: Variable) -> Option<EdgeId> {
        self.generators.get(&var).copied()
    }

    pub fn tree(&self, color: Color) -> Option<&SpanningTree> {
        self.trees.get(&color)
    }

    /// Meridian of the first arc of an edge.
    pub fn base_meridian(&self, edge: EdgeId) -> &MagnusSeries {
        &self.arcs[&edge][0]
    }

    pub fn arc_meridian(&self, arc: Arc) -> Option<&MagnusSeries> {
        self.arcs.get(&arc.edge)?.get(arc.ordinal)
    }

    pub fn arc_meridians(&self) -> impl Iterator<Item = (Arc, &MagnusSeries)> {
        self.arcs
            .iter()
            .flat_map(|(&edge, list)| list.iter().enumerate().map(move |(ordinal, s)| (Arc { edge, ordinal }, s)))
    }

    pub fn edge_word(&self, edge: EdgeId) -> Option<&MagnusSeries> {
        self.edge_words.get(&edge)
    }

    pub fn longitude(&self, var: Variable) -> Option<&MagnusSeries> {
        self.longitudes.get(&var)
    }

    pub fn longitudes(&self) -> &BTreeMap<Variable, MagnusSeries> {
        &self.longitudes
    }

    pub fn surface_elements(&self) -> &BTreeMap<Color, MagnusSeries> {
        &self.surface_elements
    }

    /// Vertex relation at each tree root, read from the smallest edge-end.
    pub fn root_relations(&self) -> &BTreeMap<Color, MagnusSeries> {
        &self.root_relations
    }

    /// Root vertex of each color's spanning tree.
    pub fn root(&self, color: Color) -> Option<VertexId> {
        self.trees.get(&color).map(|t| t.root)
    }

    /// Surface elements as relators labelled `r<i>`.
    pub fn relators(&self) -> Vec<Relator> {
        self.surface_elements
            .iter()
            .map(|(c, s)| Relator { label: format!("r{c}"), series: s.clone() })
            .collect()
    }
}
