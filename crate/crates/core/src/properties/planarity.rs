//! Planarity for desk-scale graphs.
//!
//! Dense graphs are rejected by the Euler bound `|E| ≤ 3|V| − 6`. Every other
//! graph is split into blocks and each block is embedded face by face
//! (Demoucron–Malgrange–Pertuiset); a fragment with no admissible face is a
//! certificate of a Kuratowski minor. [`super::minor::has_minor`] gives an
//! independent check by direct K₅/K₃,₃ minor search.

use std::collections::VecDeque;

use super::connectivity::{blocks, check_bound, induced_indexed, DESK_SCALE};
use crate::error::Result;
use crate::graph::{CrispGraph, IndexedGraph};

pub fn is_planar(g: &CrispGraph) -> Result<bool> {
    check_bound("is_planar vertices", g.vertex_count(), DESK_SCALE)?;
    Ok(is_planar_indexed(&IndexedGraph::from(g)))
}

pub(crate) fn is_planar_indexed(idx: &IndexedGraph) -> bool {
    if !euler_bound_ok(idx.len(), idx.edge_count()) {
        return false;
    }
    blocks(idx).into_iter().all(|block| {
        if block.len() < 5 {
            return true;
        }
        let sub = induced_indexed(idx, &block);
        euler_bound_ok(sub.len(), sub.edge_count()) && embed_block(&sub.adj)
    })
}

fn euler_bound_ok(n: usize, m: usize) -> bool {
    n < 3 || m + 6 <= 3 * n
}

enum Fragment {
    Chord(usize, usize),
    Piece {
        interior: Vec<usize>,
        attachments: Vec<usize>,
    },
}

impl Fragment {
    fn attachments(&self) -> Vec<usize> {
        match self {
            Fragment::Chord(a, b) => vec![*a, *b],
            Fragment::Piece { attachments, .. } => attachments.clone(),
        }
    }
}

/// Face-by-face embedding of a biconnected simple graph.
fn embed_block(adj: &[Vec<usize>]) -> bool {
    let n = adj.len();
    let mut in_h = vec![false; n];
    let mut h_edge = vec![vec![false; n]; n];

    let cycle = initial_cycle(adj);
    for (i, &x) in cycle.iter().enumerate() {
        let y = cycle[(i + 1) % cycle.len()];
        in_h[x] = true;
        h_edge[x][y] = true;
        h_edge[y][x] = true;
    }
    let mut faces = vec![cycle.clone(), cycle];

    loop {
        let fragments = fragments(adj, &in_h, &h_edge);
        if fragments.is_empty() {
            return true;
        }
        let mut chosen: Option<(usize, usize)> = None;
        for (fi, frag) in fragments.iter().enumerate() {
            let att = frag.attachments();
            let admissible: Vec<usize> = faces
                .iter()
                .enumerate()
                .filter(|(_, face)| att.iter().all(|a| face.contains(a)))
                .map(|(i, _)| i)
                .collect();
            match admissible.len() {
                0 => return false,
                1 => {
                    chosen = Some((fi, admissible[0]));
                    break;
                }
                _ => {
                    if chosen.is_none() {
                        chosen = Some((fi, admissible[0]));
                    }
                }
            }
        }
        let (fi, face_idx) = chosen.expect("fragments exist");
        let path = fragment_path(adj, &in_h, &fragments[fi]);
        for w in path.windows(2) {
            h_edge[w[0]][w[1]] = true;
            h_edge[w[1]][w[0]] = true;
        }
        for &x in &path {
            in_h[x] = true;
        }
        let face = faces.swap_remove(face_idx);
        let (f1, f2) = split_face(&face, &path);
        faces.push(f1);
        faces.push(f2);
    }
}

/// Some cycle through vertex 0: the edge to its first neighbor closed by a
/// shortest path avoiding that edge.
fn initial_cycle(adj: &[Vec<usize>]) -> Vec<usize> {
    let a = adj[0][0];
    let n = adj.len();
    let mut parent = vec![usize::MAX; n];
    parent[a] = a;
    let mut queue = VecDeque::from([a]);
    while let Some(x) = queue.pop_front() {
        for &y in &adj[x] {
            if (x == a && y == 0) || parent[y] != usize::MAX {
                continue;
            }
            parent[y] = x;
            queue.push_back(y);
        }
    }
    debug_assert!(parent[0] != usize::MAX, "block is biconnected");
    let mut cycle = vec![0];
    let mut x = parent[0];
    while x != a {
        cycle.push(x);
        x = parent[x];
    }
    cycle.push(a);
    cycle
}

fn fragments(adj: &[Vec<usize>], in_h: &[bool], h_edge: &[Vec<bool>]) -> Vec<Fragment> {
    let n = adj.len();
    let mut out = Vec::new();
    for a in 0..n {
        for &b in &adj[a] {
            if a < b && in_h[a] && in_h[b] && !h_edge[a][b] {
                out.push(Fragment::Chord(a, b));
            }
        }
    }
    let mut seen = vec![false; n];
    for s in 0..n {
        if in_h[s] || seen[s] {
            continue;
        }
        seen[s] = true;
        let mut interior = vec![s];
        let mut attach = vec![false; n];
        let mut queue = VecDeque::from([s]);
        while let Some(x) = queue.pop_front() {
            for &y in &adj[x] {
                if in_h[y] {
                    attach[y] = true;
                } else if !seen[y] {
                    seen[y] = true;
                    interior.push(y);
                    queue.push_back(y);
                }
            }
        }
        let attachments = (0..n).filter(|&v| attach[v]).collect();
        out.push(Fragment::Piece {
            interior,
            attachments,
        });
    }
    out
}

/// A path through the fragment between two distinct attachment vertices.
fn fragment_path(adj: &[Vec<usize>], in_h: &[bool], frag: &Fragment) -> Vec<usize> {
    match frag {
        Fragment::Chord(a, b) => vec![*a, *b],
        Fragment::Piece {
            interior,
            attachments,
        } => {
            let a = attachments[0];
            let start = *interior
                .iter()
                .find(|&&x| adj[x].contains(&a))
                .expect("attachment touches the fragment");
            let n = adj.len();
            let mut parent = vec![usize::MAX; n];
            parent[start] = start;
            let mut queue = VecDeque::from([start]);
            while let Some(x) = queue.pop_front() {
                if let Some(&b) = adj[x].iter().find(|&&y| in_h[y] && y != a) {
                    let mut path = vec![b];
                    let mut y = x;
                    loop {
                        path.push(y);
                        if y == start {
                            break;
                        }
                        y = parent[y];
                    }
                    path.push(a);
                    path.reverse();
                    return path;
                }
                for &y in &adj[x] {
                    if !in_h[y] && parent[y] == usize::MAX {
                        parent[y] = x;
                        queue.push_back(y);
                    }
                }
            }
            unreachable!("fragment of a biconnected graph has two attachments")
        }
    }
}

/// Splits `face` along `path` (whose endpoints lie on the face) into two faces.
fn split_face(face: &[usize], path: &[usize]) -> (Vec<usize>, Vec<usize>) {
    let len = face.len();
    let a = path[0];
    let b = *path.last().unwrap();
    let i = face.iter().position(|&x| x == a).unwrap();
    let j = face.iter().position(|&x| x == b).unwrap();
    let interior = &path[1..path.len() - 1];

    let walk = |from: usize, to: usize| {
        let mut out = vec![face[from]];
        let mut k = from;
        while k != to {
            k = (k + 1) % len;
            out.push(face[k]);
        }
        out
    };
    let mut f1 = walk(i, j);
    f1.extend(interior.iter().rev());
    let mut f2 = walk(j, i);
    f2.extend(interior.iter());
    (f1, f2)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::families::*;
    use crate::properties::minor::{has_minor, kuratowski_minor_free};
    use crate::random::random_crisp_graph;

    #[test]
    fn small_named_graphs() {
        assert!(is_planar(&complete("k", 4)).unwrap());
        assert!(!is_planar(&complete("k", 5)).unwrap());
        assert!(!is_planar(&complete_bipartite("k", 3, 3)).unwrap());
        assert!(is_planar(&complete_bipartite("k", 2, 5)).unwrap());
        assert!(is_planar(&wheel("w", 7)).unwrap());
        assert!(is_planar(&cycle("c", 9)).unwrap());
        assert!(is_planar(&CrispGraph::new()).unwrap());
    }

    #[test]
    fn k5_minus_edge_and_petersen() {
        let mut k5 = complete("k", 5);
        k5.remove_edge(&crate::label::EdgeKey::parse("k0", "k1").unwrap());
        assert!(is_planar(&k5).unwrap());

        let petersen = CrispGraph::from_pairs([
            ("o0", "o1"),
            ("o1", "o2"),
            ("o2", "o3"),
            ("o3", "o4"),
            ("o4", "o0"),
            ("o0", "i0"),
            ("o1", "i1"),
            ("o2", "i2"),
            ("o3", "i3"),
            ("o4", "i4"),
            ("i0", "i2"),
            ("i2", "i4"),
            ("i4", "i1"),
            ("i1", "i3"),
            ("i3", "i0"),
        ])
        .unwrap();
        // 15 edges on 10 vertices passes the Euler bound; the embedding must fail
        assert!(!is_planar(&petersen).unwrap());
    }

    #[test]
    fn subdivided_k33_is_nonplanar() {
        let g = CrispGraph::from_pairs([
            ("a0", "s0"),
            ("s0", "b0"),
            ("a0", "b1"),
            ("a0", "b2"),
            ("a1", "b0"),
            ("a1", "s1"),
            ("s1", "s2"),
            ("s2", "b1"),
            ("a1", "b2"),
            ("a2", "b0"),
            ("a2", "b1"),
            ("a2", "b2"),
        ])
        .unwrap();
        assert!(!is_planar(&g).unwrap());
    }

    #[test]
    fn size_bound() {
        assert!(is_planar(&empty("v", 65)).is_err());
    }

    #[test]
    fn agrees_with_minor_search() {
        let k5 = complete("h", 5);
        let k33 = complete_bipartite("h", 3, 3);
        let mut nonplanar = 0;
        for seed in 0..300u64 {
            let n = 5 + (seed % 4) as usize;
            let p = [0.35, 0.5, 0.65, 0.8][(seed / 4 % 4) as usize];
            let g = random_crisp_graph(n, p, seed);
            let oracle = kuratowski_minor_free(&g).unwrap();
            assert_eq!(is_planar(&g).unwrap(), oracle, "seed {seed}");
            assert_eq!(
                oracle,
                !has_minor(&g, &k5).unwrap() && !has_minor(&g, &k33).unwrap()
            );
            nonplanar += usize::from(!oracle);
        }
        assert!(nonplanar > 20, "corpus too easy: {nonplanar}");
    }
}
