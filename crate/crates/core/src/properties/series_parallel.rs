//! Series-parallel recognition (no K₄ minor) by reduction.
//!
//! Repeatedly: merge parallel edges, delete vertices with at most one
//! neighbor, and suppress vertices with exactly two neighbors. A simple graph
//! of minimum degree three always has a K₄ minor, so the graph is K₄-minor-free
//! iff the reductions remove every edge.

use std::collections::BTreeMap;

use super::connectivity::{check_bound, DESK_SCALE};
use crate::error::Result;
use crate::graph::{CrispGraph, IndexedGraph};

pub fn is_series_parallel(g: &CrispGraph) -> Result<bool> {
    check_bound("is_series_parallel vertices", g.vertex_count(), DESK_SCALE)?;
    Ok(is_series_parallel_indexed(&IndexedGraph::from(g)))
}

pub(crate) fn is_series_parallel_indexed(idx: &IndexedGraph) -> bool {
    // neighbor -> edge multiplicity
    let mut multi: Vec<BTreeMap<usize, u32>> = idx
        .adj
        .iter()
        .map(|ns| ns.iter().map(|&y| (y, 1)).collect())
        .collect();
    let mut alive = vec![true; idx.len()];

    loop {
        let mut changed = false;
        for v in 0..multi.len() {
            if !alive[v] {
                continue;
            }
            // parallel reduction
            for count in multi[v].values_mut() {
                if *count > 1 {
                    *count = 1;
                    changed = true;
                }
            }
            match multi[v].len() {
                0 => {
                    alive[v] = false;
                }
                1 => {
                    let (&x, _) = multi[v].iter().next().unwrap();
                    multi[x].remove(&v);
                    multi[v].clear();
                    alive[v] = false;
                    changed = true;
                }
                2 => {
                    let mut it = multi[v].keys().copied();
                    let (a, b) = (it.next().unwrap(), it.next().unwrap());
                    multi[a].remove(&v);
                    multi[b].remove(&v);
                    multi[v].clear();
                    alive[v] = false;
                    *multi[a].entry(b).or_insert(0) += 1;
                    *multi[b].entry(a).or_insert(0) += 1;
                    changed = true;
                }
                _ => {}
            }
        }
        if !changed {
            break;
        }
    }
    multi.iter().all(BTreeMap::is_empty)
}
