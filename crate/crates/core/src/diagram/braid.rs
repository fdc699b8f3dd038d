use std::collections::BTreeMap;

use super::{EdgeEnd, EmbeddingCode, End, Passage, Role, Sign};
use crate::graph::{AbstractGraph, Edge};

/// Diagram of the closure of a braid on `strands` strands, drawn bottom to
/// top. Letter `k` is the positive generator on positions k and k+1 (the
/// strand coming from position k crosses over), `-k` its inverse; crossing
/// ids follow word order starting at 1.
///
/// Each component becomes one vertex carrying one loop edge; components are
/// numbered by their smallest starting position. Returns `None` if a letter
/// is out of range.
pub fn braid_closure(strands: usize, word: &[i32]) -> Option<EmbeddingCode> {
    if strands == 0 || word.iter().any(|&l| l == 0 || l.unsigned_abs() as usize >= strands) {
        return None;
    }
    // events[p] = passages met by the strand that enters the braid at position p
    let mut at: Vec<usize> = (0..strands).collect();
    let mut events: Vec<Vec<Passage>> = vec![Vec::new(); strands];
    for (t, &l) in word.iter().enumerate() {
        let k = l.unsigned_abs() as usize - 1;
        let (left, right) = (at[k], at[k + 1]);
        let crossing = t as u32 + 1;
        let (sign, left_role) =
            if l > 0 { (Sign::Positive, Role::Over) } else { (Sign::Negative, Role::Under) };
        events[left].push(Passage { crossing, role: left_role, sign });
        events[right].push(Passage { crossing, role: left_role.swapped(), sign });
        at.swap(k, k + 1);
    }
    // exit position of each strand
    let mut exit = vec![0; strands];
    for (pos, &s) in at.iter().enumerate() {
        exit[s] = pos;
    }
    let mut done = vec![false; strands];
    let mut vertices = Vec::new();
    let mut edges = Vec::new();
    let mut passages = BTreeMap::new();
    let mut rotations = BTreeMap::new();
    for start in 0..strands {
        if done[start] {
            continue;
        }
        let id = vertices.len() as u32 + 1;
        let mut list = Vec::new();
        let mut s = start;
        loop {
            done[s] = true;
            list.extend(events[s].iter().copied());
            s = exit[s];
            if s == start {
                break;
            }
        }
        vertices.push(id);
        edges.push(Edge { id, tail: id, head: id, color: id });
        passages.insert(id, list);
        rotations.insert(id, vec![EdgeEnd { edge: id, end: End::Tail }, EdgeEnd { edge: id, end: End::Head }]);
    }
    let graph = AbstractGraph::with_colors(vertices.into_iter().map(|v| (v, None)), edges).ok()?;
    EmbeddingCode::new(graph, passages, rotations).ok()
}
