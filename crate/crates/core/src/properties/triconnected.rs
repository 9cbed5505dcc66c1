//! Triconnected components by recursive separation-pair splitting.
//!
//! A connected graph is first cut into blocks at its articulation points.
//! A block that is 3-connected, a cycle, or has at most three vertices is a
//! component. Otherwise it is split at its least separation pair `{x, y}`
//! (label order): each component of `block − {x, y}` together with `x`, `y`
//! and the edge `xy` becomes a part, and the parts are split recursively.
//! The edge `xy` is virtual in every part except that it stays real in the
//! first part when `xy` was a real edge of the block.

use std::collections::BTreeSet;

use super::connectivity::{blocks, check_bound, is_k_connected_indexed};
use crate::error::{Error, Result};
use crate::graph::{CrispGraph, IndexedGraph};
use crate::label::{EdgeKey, VertexLabel};

pub const TRICONNECTED_LIMIT: usize = 16;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SplitComponent {
    pub graph: CrispGraph,
    pub virtual_edges: BTreeSet<EdgeKey>,
}

pub fn triconnected_components(g: &CrispGraph) -> Result<Vec<CrispGraph>> {
    Ok(triconnected_split(g)?
        .into_iter()
        .map(|c| c.graph)
        .collect())
}

pub fn triconnected_split(g: &CrispGraph) -> Result<Vec<SplitComponent>> {
    check_bound(
        "triconnected_components vertices",
        g.vertex_count(),
        TRICONNECTED_LIMIT,
    )?;
    let idx = IndexedGraph::from(g);
    if idx.components().len() > 1 {
        return Err(Error::Disconnected);
    }
    if idx.len() <= 2 {
        return Ok(vec![SplitComponent {
            graph: g.clone(),
            virtual_edges: BTreeSet::new(),
        }]);
    }
    let mut out = Vec::new();
    for block in blocks(&idx) {
        let keep: BTreeSet<VertexLabel> = block.iter().map(|&i| idx.labels[i].clone()).collect();
        split(g.induced(&keep), BTreeSet::new(), &mut out);
    }
    Ok(out)
}

fn is_cycle(idx: &IndexedGraph) -> bool {
    idx.len() >= 3 && idx.adj.iter().all(|ns| ns.len() == 2) && idx.components().len() == 1
}

fn split(g: CrispGraph, virtual_edges: BTreeSet<EdgeKey>, out: &mut Vec<SplitComponent>) {
    let idx = IndexedGraph::from(&g);
    if idx.len() <= 3 || is_cycle(&idx) || is_k_connected_indexed(&idx, 3) {
        out.push(SplitComponent {
            graph: g,
            virtual_edges,
        });
        return;
    }
    let n = idx.len();
    let (x, y, comps) = (0..n)
        .flat_map(|x| (x + 1..n).map(move |y| (x, y)))
        .find_map(|(x, y)| {
            let mut alive = vec![true; n];
            alive[x] = false;
            alive[y] = false;
            let comps = idx.components_where(&alive);
            (comps.len() >= 2).then_some((x, y, comps))
        })
        .expect("biconnected, not 3-connected, not a cycle: a separation pair exists");

    let (lx, ly) = (idx.labels[x].clone(), idx.labels[y].clone());
    let pair_edge = EdgeKey::new(lx.clone(), ly.clone()).unwrap();
    let real_pair = g.contains_edge(&pair_edge) && !virtual_edges.contains(&pair_edge);

    for (i, comp) in comps.iter().enumerate() {
        let mut keep: BTreeSet<VertexLabel> = comp.iter().map(|&v| idx.labels[v].clone()).collect();
        keep.insert(lx.clone());
        keep.insert(ly.clone());
        let mut part = g.induced(&keep);
        part.add_edge(pair_edge.clone()).unwrap();
        let mut part_virtual: BTreeSet<EdgeKey> = virtual_edges
            .iter()
            .filter(|e| part.contains_edge(e))
            .cloned()
            .collect();
        if !(i == 0 && real_pair) {
            part_virtual.insert(pair_edge.clone());
        } else {
            part_virtual.remove(&pair_edge);
        }
        split(part, part_virtual, out);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::families::*;

    fn glued_on_edge(n: usize) -> CrispGraph {
        // two copies of K_n sharing the vertices s, t and the edge st
        let mut pairs: Vec<(String, String)> = vec![("s".into(), "t".into())];
        for side in ["a", "b"] {
            let names: Vec<String> = ["s".to_string(), "t".to_string()]
                .into_iter()
                .chain((0..n - 2).map(|i| format!("{side}{i}")))
                .collect();
            for i in 0..names.len() {
                for j in i + 1..names.len() {
                    if i + j > 1 {
                        pairs.push((names[i].clone(), names[j].clone()));
                    }
                }
            }
        }
        CrispGraph::from_pairs(pairs.iter().map(|(a, b)| (a.as_str(), b.as_str()))).unwrap()
    }

    #[test]
    fn base_cases() {
        let k4 = complete("k", 4);
        assert_eq!(triconnected_components(&k4).unwrap(), vec![k4]);
        let c6 = cycle("c", 6);
        assert_eq!(triconnected_components(&c6).unwrap(), vec![c6]);
    }

    #[test]
    fn two_k4_sharing_an_edge() {
        let g = glued_on_edge(4);
        let parts = triconnected_split(&g).unwrap();
        assert_eq!(parts.len(), 2);
        for part in &parts {
            assert_eq!(part.graph.vertex_count(), 4);
            assert_eq!(part.graph.edge_count(), 6);
            assert!(part.graph.contains_edge(&EdgeKey::parse("s", "t").unwrap()));
        }
        assert!(parts[0].virtual_edges.is_empty());
        assert_eq!(parts[1].virtual_edges.len(), 1);
    }

    #[test]
    fn pair_without_edge_gets_virtual_edges() {
        // K2,3 splits at {s, t} into three paths, each closed by a virtual st
        let g = CrispGraph::from_pairs([
            ("s", "a"),
            ("a", "t"),
            ("s", "b"),
            ("b", "t"),
            ("s", "c"),
            ("c", "t"),
        ])
        .unwrap();
        let parts = triconnected_split(&g).unwrap();
        assert_eq!(parts.len(), 3);
        assert!(parts
            .iter()
            .all(|p| p.graph.vertex_count() == 3 && p.virtual_edges.len() == 1));
    }

    #[test]
    fn blocks_are_split_first() {
        let bowtie = CrispGraph::from_pairs([
            ("a", "b"),
            ("b", "c"),
            ("a", "c"),
            ("c", "d"),
            ("d", "e"),
            ("c", "e"),
        ])
        .unwrap();
        assert_eq!(triconnected_components(&bowtie).unwrap().len(), 2);
        assert_eq!(triconnected_components(&path("p", 4)).unwrap().len(), 3);
    }

    #[test]
    fn errors() {
        let two = CrispGraph::from_pairs([("a", "b"), ("c", "d")]).unwrap();
        assert!(matches!(
            triconnected_components(&two),
            Err(Error::Disconnected)
        ));
        assert!(triconnected_components(&cycle("c", 17)).is_err());
    }

    #[test]
    fn glued_k5_pair() {
        let parts = triconnected_components(&glued_on_edge(5)).unwrap();
        assert_eq!(parts.len(), 2);
        assert!(parts
            .iter()
            .all(|p| p.vertex_count() == 5 && p.edge_count() == 10));
    }
}
