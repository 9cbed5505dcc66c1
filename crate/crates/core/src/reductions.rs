//! Embedding classical edge-modification instances as fuzzy instances with
//! every membership equal to 1, and a harness that checks the two agree.

use rand::seq::SliceRandom;
use rand::Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{CrispGraph, FuzzyGraph};
use crate::label::EdgeKey;
use crate::membership::{Membership, MembershipLevel};
use crate::properties::{is_connected, is_planar, PropertySpec};
use crate::random::{random_connected_graph, rng, vertex_label};
use crate::solvers::{
    solve, solve_connected_vertex_cover, CoverOutcome, Operation, Semantics, SolveInstance,
};
use crate::tnorm::TNorm;

/// Largest order accepted by [`generate_planar_instances`].
pub const GENERATOR_LIMIT: usize = 10;
/// Edges handled by the classical bitmask oracle.
pub const ORACLE_EDGE_LIMIT: usize = 24;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ReductionArtifact {
    pub source: CrispGraph,
    pub source_k: usize,
    pub target: SolveInstance,
    /// Source edge `{u, v}` is target edge `{u, v}`.
    pub mapping: &'static str,
}

pub fn embed_crisp(
    g: &CrispGraph,
    k: usize,
    property: &PropertySpec,
    op: Operation,
    alpha: &MembershipLevel,
) -> ReductionArtifact {
    let one = Membership::one();
    ReductionArtifact {
        source: g.clone(),
        source_k: k,
        target: SolveInstance {
            graph: FuzzyGraph::from_crisp(g, &one, &one),
            property: property.clone(),
            budget_k: k,
            semantics: Semantics::Threshold(alpha.clone()),
            operation: op,
            tnorm: TNorm::Minimum,
        },
        mapping: "identity",
    }
}

/// Adjacency bitmasks over the original vertex indices.
#[derive(Clone)]
struct Bits {
    alive: u64,
    adj: Vec<u64>,
}

impl Bits {
    fn to_graph(&self, labels: &CrispGraph) -> CrispGraph {
        let names: Vec<_> = labels.vertices().iter().collect();
        let mut g = CrispGraph::new();
        for (i, name) in names.iter().enumerate() {
            if self.alive >> i & 1 == 1 {
                g.add_vertex((*name).clone());
            }
        }
        for (i, a) in names.iter().enumerate() {
            for (j, b) in names.iter().enumerate().skip(i + 1) {
                if self.alive >> i & 1 == 1 && self.adj[i] >> j & 1 == 1 {
                    g.add_edge(EdgeKey::new((*a).clone(), (*b).clone()).unwrap())
                        .unwrap();
                }
            }
        }
        g
    }

    // Merges `b` into `a`; parallel edges coalesce and the loop disappears.
    fn merge(&mut self, a: usize, b: usize) {
        let nb = self.adj[b];
        self.adj[a] = (self.adj[a] | nb) & !(1 << a) & !(1 << b);
        for x in 0..self.adj.len() {
            if nb >> x & 1 == 1 && x != a {
                self.adj[x] = (self.adj[x] & !(1 << b)) | (1 << a);
            }
        }
        self.adj[b] = 0;
        self.alive &= !(1 << b);
    }
}

/// Classical brute force: is there a set of at most `k` edges whose deletion
/// or contraction puts `g` in `property`? Shares no code with the fuzzy
/// solver.
pub fn classical_verdict(
    g: &CrispGraph,
    k: usize,
    property: &PropertySpec,
    op: Operation,
) -> Result<bool> {
    let names: Vec<_> = g.vertices().iter().collect();
    let index = |v| names.binary_search(&v).unwrap();
    let edges: Vec<(usize, usize)> = g
        .edges()
        .iter()
        .map(|e| (index(e.u()), index(e.v())))
        .collect();
    if edges.len() > ORACLE_EDGE_LIMIT {
        return Err(Error::SizeBound {
            what: "oracle edges",
            limit: ORACLE_EDGE_LIMIT,
            actual: edges.len(),
        });
    }
    if names.len() > 64 {
        return Err(Error::SizeBound {
            what: "oracle vertices",
            limit: 64,
            actual: names.len(),
        });
    }
    let mut base = Bits {
        alive: if names.len() == 64 {
            u64::MAX
        } else {
            (1u64 << names.len()) - 1
        },
        adj: vec![0; names.len()],
    };
    for &(a, b) in &edges {
        base.adj[a] |= 1 << b;
        base.adj[b] |= 1 << a;
    }
    for mask in 0u32..1 << edges.len() {
        if mask.count_ones() as usize > k {
            continue;
        }
        let mut bits = base.clone();
        // original vertex -> representative after merges
        let mut rep: Vec<usize> = (0..names.len()).collect();
        for (i, &(a, b)) in edges.iter().enumerate() {
            if mask >> i & 1 == 0 {
                continue;
            }
            match op {
                Operation::Delete => {
                    bits.adj[a] &= !(1 << b);
                    bits.adj[b] &= !(1 << a);
                }
                Operation::Contract => {
                    let (ra, rb) = (find(&rep, a), find(&rep, b));
                    if ra != rb {
                        let (keep, gone) = (ra.min(rb), ra.max(rb));
                        bits.merge(keep, gone);
                        rep[gone] = keep;
                    }
                }
            }
        }
        if property.check(&bits.to_graph(g))? {
            return Ok(true);
        }
    }
    Ok(false)
}

fn find(rep: &[usize], mut x: usize) -> usize {
    while rep[x] != x {
        x = rep[x];
    }
    x
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EquivalenceRecord {
    pub index: usize,
    pub vertices: usize,
    pub edges: usize,
    pub k: usize,
    pub classical: Option<bool>,
    pub fuzzy: Option<bool>,
    pub agree: bool,
    pub skipped: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EquivalenceReport {
    pub property: PropertySpec,
    pub operation: Operation,
    pub alpha: MembershipLevel,
    pub instances: usize,
    pub agreements: usize,
    pub disagreements: usize,
    pub skipped: usize,
    pub yes_instances: usize,
    pub first_disagreement: Option<EquivalenceRecord>,
    pub records: Vec<EquivalenceRecord>,
}

impl EquivalenceReport {
    /// Every instance decided and every decision agrees.
    pub fn all_agree(&self) -> bool {
        self.disagreements == 0 && self.skipped == 0
    }
}

/// Decides every instance classically and through the fuzzy solver on its
/// embedding. Instances either side refuses are counted as skipped.
pub fn verify_equivalence(
    corpus: &[(CrispGraph, usize)],
    property: &PropertySpec,
    op: Operation,
    alpha: &MembershipLevel,
) -> Result<EquivalenceReport> {
    let records: Vec<EquivalenceRecord> = corpus
        .par_iter()
        .enumerate()
        .map(|(index, (g, k))| {
            let refused = |r: Result<bool>| match r {
                Ok(v) => Ok(Some(v)),
                Err(e) if e.is_bound_refusal() => Ok(None),
                Err(e) => Err(e),
            };
            let classical = refused(classical_verdict(g, *k, property, op))?;
            let artifact = embed_crisp(g, *k, property, op, alpha);
            let fuzzy = refused(solve(&artifact.target).map(|r| r.outcome.is_yes()))?;
            let skipped = classical.is_none() || fuzzy.is_none();
            Ok(EquivalenceRecord {
                index,
                vertices: g.vertex_count(),
                edges: g.edge_count(),
                k: *k,
                classical,
                fuzzy,
                agree: !skipped && classical == fuzzy,
                skipped,
            })
        })
        .collect::<Result<_>>()?;
    let skipped = records.iter().filter(|r| r.skipped).count();
    let agreements = records.iter().filter(|r| r.agree).count();
    Ok(EquivalenceReport {
        property: property.clone(),
        operation: op,
        alpha: alpha.clone(),
        instances: records.len(),
        agreements,
        disagreements: records.len() - agreements - skipped,
        skipped,
        yes_instances: records.iter().filter(|r| r.classical == Some(true)).count(),
        first_disagreement: records.iter().find(|r| !r.agree && !r.skipped).cloned(),
        records,
    })
}

/// Seeded connected graphs on 4 to `n_max` vertices with budgets 0 to 2.
pub fn equivalence_corpus(count: usize, n_max: usize, seed: u64) -> Vec<(CrispGraph, usize)> {
    let mut r = rng(seed);
    (0..count)
        .map(|_| {
            let n = r.gen_range(4..=n_max.max(4));
            let p = r.gen_range(0.3..0.9);
            let k = r.gen_range(0..=2);
            (random_connected_graph(n, p, r.gen()), k)
        })
        .collect()
}

/// Connected planar graphs with a budget next to the minimum connected
/// vertex cover size, so that both verdicts occur.
///
/// Each graph is a stacked triangulation on 4 to `n_max` vertices with some
/// edges removed while it stays connected.
pub fn generate_planar_instances(
    count: usize,
    n_max: usize,
    seed: u64,
) -> Result<Vec<(CrispGraph, usize)>> {
    if !(4..=GENERATOR_LIMIT).contains(&n_max) {
        return Err(Error::SizeBound {
            what: "generator order",
            limit: GENERATOR_LIMIT,
            actual: n_max,
        });
    }
    let mut r = rng(seed);
    let mut out = Vec::with_capacity(count);
    for _ in 0..count {
        let n = r.gen_range(4..=n_max);
        let mut g = stacked_triangulation(n, &mut r);
        let mut edges: Vec<EdgeKey> = g.edges().iter().cloned().collect();
        edges.shuffle(&mut r);
        for e in edges {
            if r.gen_bool(0.4) {
                g.remove_edge(&e);
                if !is_connected(&g) {
                    g.add_edge(e).unwrap();
                }
            }
        }
        debug_assert!(is_planar(&g)?);
        let min_cover = (0..=n)
            .find(|&k| {
                matches!(
                    solve_connected_vertex_cover(&g, k).map(|c| c.outcome),
                    Ok(CoverOutcome::Yes(_))
                )
            })
            .expect("the full vertex set is a connected cover");
        let k = if min_cover > 0 && r.gen_bool(0.5) {
            min_cover - 1
        } else {
            min_cover
        };
        out.push((g, k));
    }
    Ok(out)
}

fn stacked_triangulation(n: usize, r: &mut impl Rng) -> CrispGraph {
    let mut g = CrispGraph::new();
    for i in 0..n {
        g.add_vertex(vertex_label(i));
    }
    let connect = |g: &mut CrispGraph, a: usize, b: usize| {
        g.add_edge(EdgeKey::new(vertex_label(a), vertex_label(b)).unwrap())
            .unwrap();
    };
    connect(&mut g, 0, 1);
    connect(&mut g, 1, 2);
    connect(&mut g, 0, 2);
    let mut faces = vec![[0, 1, 2], [0, 1, 2]];
    for v in 3..n {
        let f = faces.swap_remove(r.gen_range(0..faces.len()));
        for &x in &f {
            connect(&mut g, v, x);
        }
        faces.extend([[f[0], f[1], v], [f[1], f[2], v], [f[0], f[2], v]]);
    }
    g
}

#[cfg(test)]
mod tests {
    use std::collections::BTreeSet;

    use super::*;
    use crate::graph::families::*;
    use crate::properties::Property;

    fn lvl(s: &str) -> MembershipLevel {
        s.parse().unwrap()
    }

    #[test]
    fn embed_examples() {
        let sp = PropertySpec::builtin(Property::SeriesParallel);
        let k4 = complete("k", 4);
        let a = embed_crisp(&k4, 1, &sp, Operation::Delete, &lvl("0.5"));
        assert!(a.target.graph.edges().values().all(Membership::is_one));
        assert_eq!(a.target.graph.alpha_cut(&lvl("0.5")).unwrap(), k4);

        let empty = embed_crisp(&CrispGraph::new(), 0, &sp, Operation::Delete, &lvl("1"));
        assert_eq!(empty.target.graph, FuzzyGraph::new());

        let c5 = cycle("c", 5);
        let lo = embed_crisp(&c5, 0, &sp, Operation::Contract, &lvl("0.2"));
        let hi = embed_crisp(&c5, 0, &sp, Operation::Contract, &lvl("1"));
        assert_eq!(lo.target.graph, hi.target.graph);
        for alpha in ["0.01", "0.2", "0.5", "1"] {
            assert_eq!(lo.target.graph.alpha_cut(&lvl(alpha)).unwrap(), c5);
        }
    }

    #[test]
    fn k5_equivalence() {
        let planar = PropertySpec::builtin(Property::Planar);
        let yes = verify_equivalence(
            &[(complete("k", 5), 1)],
            &planar,
            Operation::Delete,
            &lvl("1"),
        )
        .unwrap();
        assert!(yes.all_agree());
        assert_eq!(yes.records[0].classical, Some(true));
        let no = verify_equivalence(
            &[(complete("k", 5), 0)],
            &planar,
            Operation::Delete,
            &lvl("1"),
        )
        .unwrap();
        assert!(no.all_agree());
        assert_eq!(no.records[0].fuzzy, Some(false));
    }

    #[test]
    fn classical_contraction_oracle() {
        let bip = PropertySpec::builtin(Property::Bipartite);
        // C5 contracted once is C4
        assert!(classical_verdict(&cycle("c", 5), 1, &bip, Operation::Contract).unwrap());
        assert!(!classical_verdict(&cycle("c", 5), 0, &bip, Operation::Contract).unwrap());
        let sp = PropertySpec::builtin(Property::SeriesParallel);
        // K4 contracted once is K3
        assert!(classical_verdict(&complete("k", 4), 1, &sp, Operation::Contract).unwrap());
        let conn = PropertySpec::builtin(Property::Connected);
        let two = CrispGraph::from_pairs([("a", "b"), ("c", "d")]).unwrap();
        assert!(!classical_verdict(&two, 2, &conn, Operation::Contract).unwrap());
    }

    #[test]
    fn generator() {
        let a = generate_planar_instances(5, 6, 1).unwrap();
        assert_eq!(a, generate_planar_instances(5, 6, 1).unwrap());
        let many = generate_planar_instances(100, 8, 3).unwrap();
        let mut verdicts = BTreeSet::new();
        for (g, k) in &many {
            assert!(is_planar(g).unwrap() && is_connected(g));
            verdicts.insert(matches!(
                solve_connected_vertex_cover(g, *k).unwrap().outcome,
                CoverOutcome::Yes(_)
            ));
        }
        assert_eq!(verdicts.len(), 2);
        assert!(generate_planar_instances(1, 11, 0).is_err());
    }
}
