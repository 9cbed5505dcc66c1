//! Seeded generators for test corpora. Every generator is a pure function of
//! its arguments.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::graph::{CrispGraph, FuzzyGraph};
use crate::label::{EdgeKey, VertexLabel};
use crate::membership::Membership;

/// Resolution of [`random_fuzzy_graph`]: six fractional digits.
pub const DEFAULT_STEPS: u64 = 1_000_000;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn vertex_label(i: usize) -> VertexLabel {
    VertexLabel::new(i.to_string()).expect("numeric label")
}

/// Random fuzzy graph on vertices `0..n`. Vertex memberships are uniform on
/// `(0, 1]`; each pair becomes an edge with probability `p`, with a uniform
/// membership clamped to the smaller endpoint membership.
pub fn random_fuzzy_graph(n: usize, p: f64, seed: u64) -> FuzzyGraph {
    random_fuzzy_graph_quantized(n, p, seed, DEFAULT_STEPS)
}

/// As [`random_fuzzy_graph`], with memberships restricted to multiples of
/// `1/steps`. `steps = 20` gives multiples of 0.05, which makes threshold ties
/// common.
pub fn random_fuzzy_graph_quantized(n: usize, p: f64, seed: u64, steps: u64) -> FuzzyGraph {
    assert!(steps > 0 && (0.0..=1.0).contains(&p));
    let mut rng = rng(seed);
    let draw = |rng: &mut ChaCha8Rng| {
        let k = rng.gen_range(1..=steps);
        Membership::from_ratio(k, steps).expect("finite decimal steps")
    };
    let mut g = FuzzyGraph::new();
    let mut mus = Vec::with_capacity(n);
    for i in 0..n {
        let mu = draw(&mut rng);
        g.add_vertex(vertex_label(i), mu.clone());
        mus.push(mu);
    }
    for a in 0..n {
        for b in a + 1..n {
            if rng.gen_bool(p) {
                let mu = draw(&mut rng).min(mus[a].clone()).min(mus[b].clone());
                g.add_edge(EdgeKey::new(vertex_label(a), vertex_label(b)).unwrap(), mu);
            }
        }
    }
    g
}

/// Erdős–Rényi crisp graph on vertices `0..n`.
pub fn random_crisp_graph(n: usize, p: f64, seed: u64) -> CrispGraph {
    let mut rng = rng(seed);
    let mut g = CrispGraph::new();
    for i in 0..n {
        g.add_vertex(vertex_label(i));
    }
    for a in 0..n {
        for b in a + 1..n {
            if rng.gen_bool(p) {
                g.add_edge(EdgeKey::new(vertex_label(a), vertex_label(b)).unwrap())
                    .unwrap();
            }
        }
    }
    g
}

/// Connected crisp graph: a random recursive tree plus independent extra
/// edges with probability `p`.
pub fn random_connected_graph(n: usize, p: f64, seed: u64) -> CrispGraph {
    let mut rng = rng(seed);
    let mut g = CrispGraph::new();
    for i in 0..n {
        g.add_vertex(vertex_label(i));
    }
    for i in 1..n {
        let j = rng.gen_range(0..i);
        g.add_edge(EdgeKey::new(vertex_label(i), vertex_label(j)).unwrap())
            .unwrap();
    }
    for a in 0..n {
        for b in a + 1..n {
            let key = EdgeKey::new(vertex_label(a), vertex_label(b)).unwrap();
            if !g.contains_edge(&key) && rng.gen_bool(p) {
                g.add_edge(key).unwrap();
            }
        }
    }
    g
}
