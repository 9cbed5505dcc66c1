//! Connectivity, bipartiteness, vertex/edge connectivity and blocks.

use std::collections::VecDeque;

use crate::error::{Error, Result};
use crate::graph::{CrispGraph, IndexedGraph};

pub const DESK_SCALE: usize = 64;

pub(crate) fn check_bound(what: &'static str, actual: usize, limit: usize) -> Result<()> {
    if actual > limit {
        Err(Error::SizeBound {
            what,
            limit,
            actual,
        })
    } else {
        Ok(())
    }
}

/// Empty and single-vertex graphs count as connected.
pub fn is_connected(g: &CrispGraph) -> bool {
    IndexedGraph::from(g).components().len() <= 1
}

pub fn is_bipartite(g: &CrispGraph) -> bool {
    let idx = IndexedGraph::from(g);
    let mut color: Vec<Option<bool>> = vec![None; idx.len()];
    for s in 0..idx.len() {
        if color[s].is_some() {
            continue;
        }
        color[s] = Some(false);
        let mut queue = VecDeque::from([s]);
        while let Some(x) = queue.pop_front() {
            let cx = color[x].unwrap();
            for &y in &idx.adj[x] {
                match color[y] {
                    None => {
                        color[y] = Some(!cx);
                        queue.push_back(y);
                    }
                    Some(cy) if cy == cx => return false,
                    Some(_) => {}
                }
            }
        }
    }
    true
}

/// `|V| > k` and no set of fewer than `k` vertices disconnects `g`, decided by
/// removing every such set.
pub fn is_k_connected(g: &CrispGraph, k: usize) -> Result<bool> {
    if k == 0 {
        return Err(Error::Precondition("k must be at least 1".into()));
    }
    check_bound("is_k_connected vertices", g.vertex_count(), DESK_SCALE)?;
    let idx = IndexedGraph::from(g);
    Ok(is_k_connected_indexed(&idx, k))
}

pub(crate) fn is_k_connected_indexed(idx: &IndexedGraph, k: usize) -> bool {
    let n = idx.len();
    if n <= k {
        return false;
    }
    let mut alive = vec![true; n];
    let mut removed = Vec::with_capacity(k);
    fn rec(
        idx: &IndexedGraph,
        alive: &mut [bool],
        removed: &mut Vec<usize>,
        start: usize,
        budget: usize,
    ) -> bool {
        if idx.components_where(alive).len() > 1 {
            return false;
        }
        if budget == 0 {
            return true;
        }
        for v in start..idx.len() {
            alive[v] = false;
            removed.push(v);
            let ok = rec(idx, alive, removed, v + 1, budget - 1);
            removed.pop();
            alive[v] = true;
            if !ok {
                return false;
            }
        }
        true
    }
    rec(idx, &mut alive, &mut removed, 0, k - 1)
}

/// Size of a minimum edge cut, via unit-capacity max-flow from the first
/// vertex to every other. Disconnected graphs and graphs with fewer than two
/// vertices give 0.
pub fn edge_connectivity(g: &CrispGraph) -> Result<usize> {
    check_bound("edge_connectivity vertices", g.vertex_count(), DESK_SCALE)?;
    let idx = IndexedGraph::from(g);
    let n = idx.len();
    if n < 2 || idx.components().len() > 1 {
        return Ok(0);
    }
    Ok((1..n).map(|t| max_flow_unit(&idx, 0, t)).min().unwrap_or(0))
}

fn max_flow_unit(idx: &IndexedGraph, s: usize, t: usize) -> usize {
    let n = idx.len();
    let mut residual = vec![vec![0i32; n]; n];
    for (a, b) in idx.edges() {
        residual[a][b] = 1;
        residual[b][a] = 1;
    }
    let mut flow = 0;
    loop {
        let mut parent = vec![usize::MAX; n];
        parent[s] = s;
        let mut queue = VecDeque::from([s]);
        while let Some(x) = queue.pop_front() {
            if x == t {
                break;
            }
            for &y in &idx.adj[x] {
                if parent[y] == usize::MAX && residual[x][y] > 0 {
                    parent[y] = x;
                    queue.push_back(y);
                }
            }
        }
        if parent[t] == usize::MAX {
            return flow;
        }
        let mut y = t;
        while y != s {
            let x = parent[y];
            residual[x][y] -= 1;
            residual[y][x] += 1;
            y = x;
        }
        flow += 1;
    }
}

/// Biconnected components (bridges included as two-vertex blocks), each as a
/// sorted vertex list; isolated vertices belong to no block.
pub(crate) fn blocks(idx: &IndexedGraph) -> Vec<Vec<usize>> {
    struct State<'a> {
        idx: &'a IndexedGraph,
        disc: Vec<usize>,
        low: Vec<usize>,
        time: usize,
        stack: Vec<(usize, usize)>,
        out: Vec<Vec<usize>>,
    }
    fn dfs(st: &mut State, u: usize, parent: usize) {
        st.time += 1;
        st.disc[u] = st.time;
        st.low[u] = st.time;
        for i in 0..st.idx.adj[u].len() {
            let v = st.idx.adj[u][i];
            if st.disc[v] == 0 {
                st.stack.push((u, v));
                dfs(st, v, u);
                st.low[u] = st.low[u].min(st.low[v]);
                if st.low[v] >= st.disc[u] {
                    let mut block = Vec::new();
                    while let Some((a, b)) = st.stack.pop() {
                        block.push(a);
                        block.push(b);
                        if (a, b) == (u, v) {
                            break;
                        }
                    }
                    block.sort_unstable();
                    block.dedup();
                    st.out.push(block);
                }
            } else if v != parent && st.disc[v] < st.disc[u] {
                st.stack.push((u, v));
                st.low[u] = st.low[u].min(st.disc[v]);
            }
        }
    }
    let n = idx.len();
    let mut st = State {
        idx,
        disc: vec![0; n],
        low: vec![0; n],
        time: 0,
        stack: Vec::new(),
        out: Vec::new(),
    };
    for s in 0..n {
        if st.disc[s] == 0 {
            dfs(&mut st, s, usize::MAX);
        }
    }
    let mut out = st.out;
    out.sort();
    out
}

/// Induced subgraph of `idx` on `verts`, re-indexed in the order given.
pub(crate) fn induced_indexed(idx: &IndexedGraph, verts: &[usize]) -> IndexedGraph {
    let mut pos = vec![usize::MAX; idx.len()];
    for (i, &v) in verts.iter().enumerate() {
        pos[v] = i;
    }
    let adj = verts
        .iter()
        .map(|&v| {
            let mut ns: Vec<usize> = idx.adj[v]
                .iter()
                .filter(|&&y| pos[y] != usize::MAX)
                .map(|&y| pos[y])
                .collect();
            ns.sort_unstable();
            ns
        })
        .collect();
    IndexedGraph {
        labels: verts.iter().map(|&v| idx.labels[v].clone()).collect(),
        adj,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::families::*;

    #[test]
    fn connectivity_basics() {
        assert!(is_connected(&cycle("c", 5)));
        assert!(!is_connected(
            &CrispGraph::from_pairs([("a", "b"), ("c", "d")]).unwrap()
        ));
        assert!(is_connected(&CrispGraph::new()));
        assert!(is_connected(&empty("v", 1)));
    }

    #[test]
    fn bipartite_basics() {
        assert!(is_bipartite(&cycle("c", 4)));
        assert!(!is_bipartite(&cycle("c", 5)));
        assert!(is_bipartite(&complete_bipartite("k", 3, 3)));
    }

    #[test]
    fn k_connectivity() {
        assert!(is_k_connected(&cycle("c", 5), 2).unwrap());
        assert!(!is_k_connected(&cycle("c", 5), 3).unwrap());
        assert!(is_k_connected(&complete("k", 4), 3).unwrap());
        assert!(!is_k_connected(&complete("k", 3), 3).unwrap());
        assert!(is_k_connected(&complete("k", 5), 4).unwrap());
        assert!(is_k_connected(&path("p", 3), 1).unwrap());
        assert!(!is_k_connected(&path("p", 3), 2).unwrap());
        assert!(is_k_connected(&path("p", 3), 0).is_err());
    }

    #[test]
    fn edge_connectivity_values() {
        assert_eq!(edge_connectivity(&path("p", 5)).unwrap(), 1);
        assert_eq!(edge_connectivity(&star("s", 4)).unwrap(), 1);
        assert_eq!(edge_connectivity(&cycle("c", 7)).unwrap(), 2);
        assert_eq!(edge_connectivity(&complete("k", 4)).unwrap(), 3);
        assert_eq!(edge_connectivity(&complete("k", 6)).unwrap(), 5);
        assert_eq!(
            edge_connectivity(&complete_bipartite("k", 3, 3)).unwrap(),
            3
        );
        assert_eq!(
            edge_connectivity(&CrispGraph::from_pairs([("a", "b"), ("c", "d")]).unwrap()).unwrap(),
            0
        );
        assert_eq!(edge_connectivity(&empty("v", 1)).unwrap(), 0);
    }

    #[test]
    fn blocks_of_bowtie_and_tree() {
        let bowtie = CrispGraph::from_pairs([
            ("a", "b"),
            ("b", "c"),
            ("a", "c"),
            ("c", "d"),
            ("d", "e"),
            ("c", "e"),
        ])
        .unwrap();
        let idx = IndexedGraph::from(&bowtie);
        assert_eq!(blocks(&idx), vec![vec![0, 1, 2], vec![2, 3, 4]]);
        let idx = IndexedGraph::from(&path("p", 4));
        assert_eq!(blocks(&idx).len(), 3);
    }
}
