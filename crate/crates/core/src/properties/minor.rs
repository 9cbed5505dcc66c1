//! Exhaustive minor search.
//!
//! `h` is a minor of `g` iff some vertices of `g` can be split into `|V(h)|`
//! disjoint connected branch sets so that every edge of `h` joins two branch
//! sets that are adjacent in `g`. The search enumerates set partitions of
//! subsets of `V(g)`, so it is only meant for small graphs; the planarity and
//! series-parallel checkers are validated against it.

use super::connectivity::check_bound;
use crate::error::Result;
use crate::graph::{families, CrispGraph, IndexedGraph};

pub const MINOR_SEARCH_LIMIT: usize = 10;

pub fn has_minor(g: &CrispGraph, h: &CrispGraph) -> Result<bool> {
    check_bound(
        "minor search host vertices",
        g.vertex_count(),
        MINOR_SEARCH_LIMIT,
    )?;
    check_bound("minor search pattern vertices", h.vertex_count(), 8)?;
    let host = IndexedGraph::from(g);
    let pattern = IndexedGraph::from(h);
    let k = pattern.len();
    if k == 0 {
        return Ok(true);
    }
    if k > host.len() || pattern.edge_count() > host.edge_count() {
        return Ok(false);
    }
    let pattern_edges: Vec<(usize, usize)> = pattern.edges().collect();
    let perms = permutations(k);
    let mut search = Search {
        host: &host,
        k,
        pattern_edges: &pattern_edges,
        perms: &perms,
        assign: vec![None; host.len()],
    };
    Ok(search.run(0, 0))
}

/// No K₅ and no K₃,₃ minor.
pub fn kuratowski_minor_free(g: &CrispGraph) -> Result<bool> {
    Ok(!has_minor(g, &families::complete("h", 5))?
        && !has_minor(g, &families::complete_bipartite("h", 3, 3))?)
}

struct Search<'a> {
    host: &'a IndexedGraph,
    k: usize,
    pattern_edges: &'a [(usize, usize)],
    perms: &'a [Vec<usize>],
    assign: Vec<Option<usize>>,
}

impl Search<'_> {
    fn run(&mut self, v: usize, opened: usize) -> bool {
        let n = self.host.len();
        if opened + (n - v) < self.k {
            return false;
        }
        if v == n {
            return self.check();
        }
        for block in 0..=opened.min(self.k - 1) {
            self.assign[v] = Some(block);
            let next = if block == opened { opened + 1 } else { opened };
            if self.run(v + 1, next) {
                return true;
            }
        }
        self.assign[v] = None;
        self.run(v + 1, opened)
    }

    fn check(&self) -> bool {
        let k = self.k;
        let n = self.host.len();
        let members: Vec<Vec<usize>> = (0..k)
            .map(|b| (0..n).filter(|&v| self.assign[v] == Some(b)).collect())
            .collect();
        for set in &members {
            let mut alive = vec![false; n];
            for &v in set {
                alive[v] = true;
            }
            if self.host.components_where(&alive).len() != 1 {
                return false;
            }
        }
        let mut quotient = vec![vec![false; k]; k];
        let mut count = 0;
        for (a, b) in self.host.edges() {
            if let (Some(x), Some(y)) = (self.assign[a], self.assign[b]) {
                if x != y && !quotient[x][y] {
                    quotient[x][y] = true;
                    quotient[y][x] = true;
                    count += 1;
                }
            }
        }
        if count < self.pattern_edges.len() {
            return false;
        }
        self.perms.iter().any(|perm| {
            self.pattern_edges
                .iter()
                .all(|&(a, b)| quotient[perm[a]][perm[b]])
        })
    }
}

fn permutations(k: usize) -> Vec<Vec<usize>> {
    fn rec(prefix: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
        if prefix.len() == used.len() {
            out.push(prefix.clone());
            return;
        }
        for i in 0..used.len() {
            if !used[i] {
                used[i] = true;
                prefix.push(i);
                rec(prefix, used, out);
                prefix.pop();
                used[i] = false;
            }
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::new(), &mut vec![false; k], &mut out);
    out
}
