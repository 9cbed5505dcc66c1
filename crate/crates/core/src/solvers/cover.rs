use std::collections::{BTreeSet, VecDeque};

use itertools::Itertools;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{CrispGraph, IndexedGraph};
use crate::label::{EdgeKey, VertexLabel};
use crate::properties::connectivity::check_bound;

pub const COVER_LIMIT: usize = 16;
pub const STEINER_LIMIT: usize = 14;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", content = "cover", rename_all = "snake_case")]
pub enum CoverOutcome {
    Yes(BTreeSet<VertexLabel>),
    No,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CoverResult {
    pub outcome: CoverOutcome,
    pub subsets_examined: u64,
}

fn is_connected_subset(idx: &IndexedGraph, chosen: &[usize]) -> bool {
    let mut alive = vec![false; idx.len()];
    for &v in chosen {
        alive[v] = true;
    }
    idx.components_where(&alive).len() <= 1
}

/// Connected vertex cover of size at most `k`: the first subset, by size and
/// then lexicographically, that touches every edge and induces a connected
/// subgraph.
pub fn solve_connected_vertex_cover(g: &CrispGraph, k: usize) -> Result<CoverResult> {
    check_bound("vertices", g.vertex_count(), COVER_LIMIT)?;
    let idx = IndexedGraph::from(g);
    if idx.components().len() > 1 {
        return Err(Error::Disconnected);
    }
    let edges: Vec<(usize, usize)> = idx.edges().collect();
    let mut examined = 0;
    for size in 0..=k.min(idx.len()) {
        for chosen in (0..idx.len()).combinations(size) {
            examined += 1;
            let mut mask = 0u32;
            for &v in &chosen {
                mask |= 1 << v;
            }
            let covers = edges
                .iter()
                .all(|&(a, b)| mask >> a & 1 == 1 || mask >> b & 1 == 1);
            if covers && is_connected_subset(&idx, &chosen) {
                let cover = chosen.iter().map(|&v| idx.labels[v].clone()).collect();
                return Ok(CoverResult {
                    outcome: CoverOutcome::Yes(cover),
                    subsets_examined: examined,
                });
            }
        }
    }
    Ok(CoverResult {
        outcome: CoverOutcome::No,
        subsets_examined: examined,
    })
}

/// Minimum-edge tree containing all `terminals`, or `None` when they lie in
/// different components. Vertex sets are tried smallest first; the tree is
/// the breadth-first tree of the first connected one, rooted at its least
/// label.
pub fn steiner_tree(
    g: &CrispGraph,
    terminals: &BTreeSet<VertexLabel>,
) -> Result<Option<BTreeSet<EdgeKey>>> {
    check_bound("vertices", g.vertex_count(), STEINER_LIMIT)?;
    if terminals.is_empty() {
        return Err(Error::Precondition("terminal set is empty".into()));
    }
    if let Some(t) = terminals.iter().find(|t| !g.contains_vertex(t)) {
        return Err(Error::UnknownVertex(t.clone()));
    }
    let idx = IndexedGraph::from(g);
    let term: Vec<usize> = terminals
        .iter()
        .map(|t| idx.labels.binary_search(t).unwrap())
        .collect();
    let others: Vec<usize> = (0..idx.len()).filter(|v| !term.contains(v)).collect();
    for extra in 0..=others.len() {
        for steiner in others.iter().copied().combinations(extra) {
            let mut chosen: Vec<usize> = term.iter().copied().chain(steiner).collect();
            chosen.sort_unstable();
            if is_connected_subset(&idx, &chosen) {
                return Ok(Some(bfs_tree(&idx, &chosen)));
            }
        }
    }
    Ok(None)
}

fn bfs_tree(idx: &IndexedGraph, chosen: &[usize]) -> BTreeSet<EdgeKey> {
    let mut inside = vec![false; idx.len()];
    for &v in chosen {
        inside[v] = true;
    }
    let mut seen = vec![false; idx.len()];
    let mut tree = BTreeSet::new();
    seen[chosen[0]] = true;
    let mut queue = VecDeque::from([chosen[0]]);
    while let Some(x) = queue.pop_front() {
        for &y in &idx.adj[x] {
            if inside[y] && !seen[y] {
                seen[y] = true;
                tree.insert(EdgeKey::new(idx.labels[x].clone(), idx.labels[y].clone()).unwrap());
                queue.push_back(y);
            }
        }
    }
    tree
}
