//! Fuzzy and crisp graphs, validation and α-cuts.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::label::{EdgeKey, VertexLabel};
use crate::membership::{Membership, MembershipLevel};

/// Vertex and edge membership functions over labeled vertices.
///
/// Pairs that are not stored have membership 0. The container can hold
/// invalid data so that [`FuzzyGraph::validate`] can report it; operations
/// that require a valid graph check first and return [`Error::Invalid`].
#[derive(Clone, Default, PartialEq, Eq, Hash, Debug)]
pub struct FuzzyGraph {
    vertices: BTreeMap<VertexLabel, Membership>,
    edges: BTreeMap<EdgeKey, Membership>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Violation {
    MissingEndpoint {
        edge: String,
        endpoint: String,
    },
    EdgeExceedsEndpoints {
        edge: String,
        mu: Membership,
        bound: Membership,
    },
    ZeroMembershipEdge {
        edge: String,
    },
    SharedLabelAtom {
        a: String,
        b: String,
    },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::MissingEndpoint { edge, endpoint } => {
                write!(f, "edge {edge} references missing vertex {endpoint}")
            }
            Violation::EdgeExceedsEndpoints { edge, mu, bound } => {
                write!(
                    f,
                    "edge {edge} has membership {mu} > endpoint minimum {bound}"
                )
            }
            Violation::ZeroMembershipEdge { edge } => {
                write!(f, "edge {edge} is stored with membership 0")
            }
            Violation::SharedLabelAtom { a, b } => {
                write!(f, "vertices {a} and {b} share a label atom")
            }
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.violations.is_empty() {
            return f.write_str("valid");
        }
        for (i, v) in self.violations.iter().enumerate() {
            if i > 0 {
                f.write_str("; ")?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

impl FuzzyGraph {
    pub fn new() -> Self {
        Self::default()
    }

    /// Inserts or overwrites a vertex.
    pub fn add_vertex(&mut self, label: VertexLabel, mu: Membership) -> Option<Membership> {
        self.vertices.insert(label, mu)
    }

    /// Inserts or overwrites an edge without checking it; see [`Self::validate`].
    pub fn add_edge(&mut self, edge: EdgeKey, mu: Membership) -> Option<Membership> {
        self.edges.insert(edge, mu)
    }

    pub fn remove_edge(&mut self, edge: &EdgeKey) -> Option<Membership> {
        self.edges.remove(edge)
    }

    pub fn vertices(&self) -> &BTreeMap<VertexLabel, Membership> {
        &self.vertices
    }

    pub fn edges(&self) -> &BTreeMap<EdgeKey, Membership> {
        &self.edges
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn contains_vertex(&self, v: &VertexLabel) -> bool {
        self.vertices.contains_key(v)
    }

    pub fn vertex_membership(&self, v: &VertexLabel) -> Option<&Membership> {
        self.vertices.get(v)
    }

    /// Stored membership of `edge`, or 0 when absent.
    pub fn edge_membership(&self, edge: &EdgeKey) -> Membership {
        self.edges
            .get(edge)
            .cloned()
            .unwrap_or_else(Membership::zero)
    }

    /// Membership of the pair `{a, b}`; 0 for absent pairs and for `a == b`.
    pub fn pair_membership(&self, a: &VertexLabel, b: &VertexLabel) -> Membership {
        match EdgeKey::new(a.clone(), b.clone()) {
            Ok(key) => self.edge_membership(&key),
            Err(_) => Membership::zero(),
        }
    }

    /// Stored incident edges of `v` as `(neighbor, membership)`.
    pub fn incident(&self, v: &VertexLabel) -> BTreeMap<VertexLabel, Membership> {
        self.edges
            .iter()
            .filter_map(|(k, mu)| k.other(v).map(|x| (x.clone(), mu.clone())))
            .collect()
    }

    pub fn validate(&self) -> ValidationReport {
        let mut violations = Vec::new();
        for (edge, mu) in &self.edges {
            let mut missing = false;
            for endpoint in [edge.u(), edge.v()] {
                if !self.vertices.contains_key(endpoint) {
                    missing = true;
                    violations.push(Violation::MissingEndpoint {
                        edge: edge.to_string(),
                        endpoint: endpoint.to_string(),
                    });
                }
            }
            if mu.is_zero() {
                violations.push(Violation::ZeroMembershipEdge {
                    edge: edge.to_string(),
                });
            }
            if !missing {
                let bound = self.vertices[edge.u()]
                    .clone()
                    .min(self.vertices[edge.v()].clone());
                if *mu > bound {
                    violations.push(Violation::EdgeExceedsEndpoints {
                        edge: edge.to_string(),
                        mu: mu.clone(),
                        bound,
                    });
                }
            }
        }
        let merged: Vec<&VertexLabel> = self.vertices.keys().filter(|l| l.is_merged()).collect();
        if !merged.is_empty() {
            for a in &merged {
                for b in self.vertices.keys() {
                    if *a != b && (!b.is_merged() || *a < b) && a.shares_atom_with(b) {
                        violations.push(Violation::SharedLabelAtom {
                            a: a.to_string(),
                            b: b.to_string(),
                        });
                    }
                }
            }
        }
        ValidationReport { violations }
    }

    pub fn ensure_valid(&self) -> Result<()> {
        let report = self.validate();
        if report.is_valid() {
            Ok(())
        } else {
            Err(Error::Invalid(report))
        }
    }

    /// Vertices with `μ_V ≥ α` and edges with `μ_E ≥ α` between them.
    pub fn alpha_cut(&self, alpha: &MembershipLevel) -> Result<CrispGraph> {
        self.ensure_valid()?;
        Ok(self.alpha_cut_unchecked(alpha))
    }

    pub(crate) fn alpha_cut_unchecked(&self, alpha: &MembershipLevel) -> CrispGraph {
        let vertices: BTreeSet<VertexLabel> = self
            .vertices
            .iter()
            .filter(|(_, mu)| alpha.admits(mu))
            .map(|(v, _)| v.clone())
            .collect();
        let edges = self
            .edges
            .iter()
            .filter(|(e, mu)| {
                alpha.admits(mu) && vertices.contains(e.u()) && vertices.contains(e.v())
            })
            .map(|(e, _)| e.clone())
            .collect();
        CrispGraph { vertices, edges }
    }

    /// Distinct positive membership values over vertices and edges, ascending.
    /// The α-cut is constant on each interval `(ℓᵢ, ℓᵢ₊₁]`.
    pub fn distinct_levels(&self) -> Result<Vec<MembershipLevel>> {
        self.ensure_valid()?;
        Ok(self.distinct_levels_unchecked())
    }

    pub(crate) fn distinct_levels_unchecked(&self) -> Vec<MembershipLevel> {
        let values: BTreeSet<&Membership> = self
            .vertices
            .values()
            .chain(self.edges.values())
            .filter(|m| !m.is_zero())
            .collect();
        values
            .into_iter()
            .map(|m| MembershipLevel::new(m.clone()).expect("positive"))
            .collect()
    }

    /// `{x : μ_E(v, x) ≥ α}`
    pub fn alpha_neighborhood(
        &self,
        v: &VertexLabel,
        alpha: &MembershipLevel,
    ) -> Result<BTreeSet<VertexLabel>> {
        if !self.vertices.contains_key(v) {
            return Err(Error::UnknownVertex(v.clone()));
        }
        Ok(self
            .edges
            .iter()
            .filter(|(_, mu)| alpha.admits(mu))
            .filter_map(|(e, _)| e.other(v).cloned())
            .collect())
    }

    /// Lifts a crisp graph with every vertex and edge at the given memberships.
    pub fn from_crisp(g: &CrispGraph, vertex_mu: &Membership, edge_mu: &Membership) -> Self {
        FuzzyGraph {
            vertices: g
                .vertices
                .iter()
                .map(|v| (v.clone(), vertex_mu.clone()))
                .collect(),
            edges: g
                .edges
                .iter()
                .map(|e| (e.clone(), edge_mu.clone()))
                .collect(),
        }
    }

    /// The support graph: every vertex, every stored edge.
    pub fn support(&self) -> CrispGraph {
        CrispGraph {
            vertices: self.vertices.keys().cloned().collect(),
            edges: self.edges.keys().cloned().collect(),
        }
    }
}

/// A plain simple undirected graph over labeled vertices.
#[derive(Clone, Default, PartialEq, Eq, Hash, Debug)]
pub struct CrispGraph {
    vertices: BTreeSet<VertexLabel>,
    edges: BTreeSet<EdgeKey>,
}

impl CrispGraph {
    pub fn new() -> Self {
        Self::default()
    }

    /// Builds a graph from label pairs, adding endpoints as needed.
    pub fn from_pairs<'a>(pairs: impl IntoIterator<Item = (&'a str, &'a str)>) -> Result<Self> {
        let mut g = CrispGraph::new();
        for (a, b) in pairs {
            let key = EdgeKey::parse(a, b)?;
            g.vertices.insert(key.u().clone());
            g.vertices.insert(key.v().clone());
            g.edges.insert(key);
        }
        Ok(g)
    }

    pub fn add_vertex(&mut self, v: VertexLabel) -> bool {
        self.vertices.insert(v)
    }

    pub fn add_edge(&mut self, edge: EdgeKey) -> Result<bool> {
        for endpoint in [edge.u(), edge.v()] {
            if !self.vertices.contains(endpoint) {
                return Err(Error::UnknownVertex(endpoint.clone()));
            }
        }
        Ok(self.edges.insert(edge))
    }

    pub fn remove_edge(&mut self, edge: &EdgeKey) -> bool {
        self.edges.remove(edge)
    }

    pub fn vertices(&self) -> &BTreeSet<VertexLabel> {
        &self.vertices
    }

    pub fn edges(&self) -> &BTreeSet<EdgeKey> {
        &self.edges
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn contains_vertex(&self, v: &VertexLabel) -> bool {
        self.vertices.contains(v)
    }

    pub fn contains_edge(&self, e: &EdgeKey) -> bool {
        self.edges.contains(e)
    }

    pub fn neighbors(&self, v: &VertexLabel) -> BTreeSet<VertexLabel> {
        self.edges
            .iter()
            .filter_map(|e| e.other(v).cloned())
            .collect()
    }

    /// Induced subgraph on `keep ∩ V`.
    pub fn induced(&self, keep: &BTreeSet<VertexLabel>) -> CrispGraph {
        CrispGraph {
            vertices: self.vertices.intersection(keep).cloned().collect(),
            edges: self
                .edges
                .iter()
                .filter(|e| keep.contains(e.u()) && keep.contains(e.v()))
                .cloned()
                .collect(),
        }
    }

    pub fn without_vertices(&self, drop: &BTreeSet<VertexLabel>) -> CrispGraph {
        let keep = self.vertices.difference(drop).cloned().collect();
        self.induced(&keep)
    }

    /// Connected components as vertex sets, ordered by least vertex.
    pub fn components(&self) -> Vec<BTreeSet<VertexLabel>> {
        let idx = IndexedGraph::from(self);
        idx.components()
            .into_iter()
            .map(|c| c.into_iter().map(|i| idx.labels[i].clone()).collect())
            .collect()
    }

    pub fn is_subgraph_of(&self, other: &CrispGraph) -> bool {
        self.vertices.is_subset(&other.vertices) && self.edges.is_subset(&other.edges)
    }
}

/// Dense-index view of a crisp graph used by the algorithms; neighbor lists
/// are sorted and labels are in ascending order.
#[derive(Clone, Debug)]
pub struct IndexedGraph {
    pub labels: Vec<VertexLabel>,
    pub adj: Vec<Vec<usize>>,
}

impl From<&CrispGraph> for IndexedGraph {
    fn from(g: &CrispGraph) -> Self {
        let labels: Vec<VertexLabel> = g.vertices.iter().cloned().collect();
        let index: BTreeMap<&VertexLabel, usize> =
            labels.iter().enumerate().map(|(i, l)| (l, i)).collect();
        let mut adj = vec![Vec::new(); labels.len()];
        for e in &g.edges {
            let (a, b) = (index[e.u()], index[e.v()]);
            adj[a].push(b);
            adj[b].push(a);
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        IndexedGraph { labels, adj }
    }
}

impl IndexedGraph {
    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(Vec::len).sum::<usize>() / 2
    }

    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(a, ns)| ns.iter().filter(move |&&b| a < b).map(move |&b| (a, b)))
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        self.adj[a].binary_search(&b).is_ok()
    }

    /// Components of the subgraph induced by vertices where `alive` is true.
    pub fn components_where(&self, alive: &[bool]) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.len()];
        let mut out = Vec::new();
        for s in 0..self.len() {
            if seen[s] || !alive[s] {
                continue;
            }
            seen[s] = true;
            let mut comp = vec![s];
            let mut queue = VecDeque::from([s]);
            while let Some(x) = queue.pop_front() {
                for &y in &self.adj[x] {
                    if alive[y] && !seen[y] {
                        seen[y] = true;
                        comp.push(y);
                        queue.push_back(y);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    pub fn components(&self) -> Vec<Vec<usize>> {
        self.components_where(&vec![true; self.len()])
    }

    pub fn to_crisp(&self) -> CrispGraph {
        let mut g = CrispGraph::new();
        g.vertices = self.labels.iter().cloned().collect();
        g.edges = self
            .edges()
            .map(|(a, b)| EdgeKey::new(self.labels[a].clone(), self.labels[b].clone()).unwrap())
            .collect();
        g
    }
}

/// Standard graph families, labeled `prefix0`, `prefix1`, ...
pub mod families {
    use super::*;

    fn label(prefix: &str, i: usize) -> VertexLabel {
        VertexLabel::new(format!("{prefix}{i}")).expect("generated label")
    }

    fn build(
        prefix: &str,
        n: usize,
        pairs: impl IntoIterator<Item = (usize, usize)>,
    ) -> CrispGraph {
        let mut g = CrispGraph::new();
        for i in 0..n {
            g.add_vertex(label(prefix, i));
        }
        for (a, b) in pairs {
            g.add_edge(EdgeKey::new(label(prefix, a), label(prefix, b)).unwrap())
                .unwrap();
        }
        g
    }

    pub fn empty(prefix: &str, n: usize) -> CrispGraph {
        build(prefix, n, [])
    }

    pub fn complete(prefix: &str, n: usize) -> CrispGraph {
        build(
            prefix,
            n,
            (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))),
        )
    }

    pub fn path(prefix: &str, n: usize) -> CrispGraph {
        build(prefix, n, (1..n).map(|i| (i - 1, i)))
    }

    pub fn cycle(prefix: &str, n: usize) -> CrispGraph {
        assert!(n >= 3);
        build(prefix, n, (0..n).map(|i| (i, (i + 1) % n)))
    }

    pub fn star(prefix: &str, leaves: usize) -> CrispGraph {
        build(prefix, leaves + 1, (1..=leaves).map(|i| (0, i)))
    }

    /// Parts are `0..a` and `a..a+b`.
    pub fn complete_bipartite(prefix: &str, a: usize, b: usize) -> CrispGraph {
        build(
            prefix,
            a + b,
            (0..a).flat_map(|x| (a..a + b).map(move |y| (x, y))),
        )
    }

    /// Hub `0` joined to the cycle `1..=rim`.
    pub fn wheel(prefix: &str, rim: usize) -> CrispGraph {
        let spokes = (1..=rim).map(|i| (0, i));
        let rim_edges = (1..=rim).map(move |i| (i, i % rim + 1));
        build(prefix, rim + 1, spokes.chain(rim_edges))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::io::sample_graph;

    fn m(s: &str) -> Membership {
        s.parse().unwrap()
    }

    fn lvl(s: &str) -> MembershipLevel {
        s.parse().unwrap()
    }

    fn l(s: &str) -> VertexLabel {
        VertexLabel::new(s).unwrap()
    }

    fn edge_set(g: &CrispGraph) -> Vec<(String, String)> {
        g.edges()
            .iter()
            .map(|e| (e.u().to_string(), e.v().to_string()))
            .collect()
    }

    fn pairs(list: &[(&str, &str)]) -> Vec<(String, String)> {
        list.iter()
            .map(|(a, b)| (a.to_string(), b.to_string()))
            .collect()
    }

    #[test]
    fn sample_graph_is_valid() {
        assert!(sample_graph().validate().is_valid());
    }

    #[test]
    fn single_vertex_is_valid() {
        let mut g = FuzzyGraph::new();
        g.add_vertex(l("v"), m("1"));
        assert!(g.validate().is_valid());
    }

    #[test]
    fn edge_above_endpoint_minimum_is_reported() {
        let mut g = FuzzyGraph::new();
        g.add_vertex(l("u"), m("0.3"));
        g.add_vertex(l("v"), m("1.0"));
        g.add_edge(EdgeKey::parse("u", "v").unwrap(), m("0.5"));
        let report = g.validate();
        assert_eq!(report.violations.len(), 1);
        assert!(matches!(
            &report.violations[0],
            Violation::EdgeExceedsEndpoints { mu, bound, .. } if *mu == m("0.5") && *bound == m("0.3")
        ));
        assert!(matches!(g.alpha_cut(&lvl("0.1")), Err(Error::Invalid(_))));
    }

    #[test]
    fn other_violations_are_reported() {
        let mut g = FuzzyGraph::new();
        g.add_vertex(l("a"), m("1"));
        g.add_vertex(l("b"), m("1"));
        g.add_edge(EdgeKey::parse("a", "b").unwrap(), m("0"));
        g.add_edge(EdgeKey::parse("a", "zz").unwrap(), m("0.5"));
        g.add_vertex(l("a+c"), m("1"));
        let kinds: Vec<_> = g
            .validate()
            .violations
            .iter()
            .map(std::mem::discriminant)
            .collect();
        assert_eq!(kinds.len(), 3);
    }

    #[test]
    fn sample_graph_cuts() {
        let g = sample_graph();
        let c08 = g.alpha_cut(&lvl("0.8")).unwrap();
        assert_eq!(c08.vertex_count(), 5);
        assert_eq!(edge_set(&c08), pairs(&[("1", "2"), ("2", "5")]));
        let c05 = g.alpha_cut(&lvl("0.5")).unwrap();
        assert_eq!(
            edge_set(&c05),
            pairs(&[("1", "2"), ("1", "5"), ("2", "3"), ("2", "5"), ("3", "4")])
        );
    }

    #[test]
    fn cut_above_every_level() {
        let mut g = sample_graph();
        g.add_vertex(l("6"), m("0.2"));
        let c = g.alpha_cut(&lvl("0.95")).unwrap();
        assert_eq!(c.vertex_count(), 5);
        assert_eq!(c.edge_count(), 0);

        let mut low = FuzzyGraph::new();
        low.add_vertex(l("a"), m("0.3"));
        low.add_vertex(l("b"), m("0.4"));
        low.add_edge(EdgeKey::parse("a", "b").unwrap(), m("0.3"));
        assert_eq!(low.alpha_cut(&lvl("0.5")).unwrap(), CrispGraph::new());
    }

    #[test]
    fn levels() {
        let got: Vec<String> = sample_graph()
            .distinct_levels()
            .unwrap()
            .iter()
            .map(|l| l.to_string())
            .collect();
        assert_eq!(got, ["0.4", "0.5", "0.6", "0.7", "0.8", "0.9", "1.0"]);

        let full = FuzzyGraph::from_crisp(&families::complete("k", 4), &m("1"), &m("1"));
        assert_eq!(
            full.distinct_levels().unwrap(),
            vec![MembershipLevel::one()]
        );
        assert!(FuzzyGraph::new().distinct_levels().unwrap().is_empty());
    }

    #[test]
    fn neighborhoods() {
        let g = sample_graph();
        let n = g.alpha_neighborhood(&l("2"), &lvl("0.8")).unwrap();
        assert_eq!(n, [l("1"), l("5")].into_iter().collect());
        let all = g.alpha_neighborhood(&l("2"), &lvl("0.4")).unwrap();
        assert_eq!(all, g.support().neighbors(&l("2")));

        let mut iso = FuzzyGraph::new();
        iso.add_vertex(l("x"), m("1"));
        assert!(iso
            .alpha_neighborhood(&l("x"), &lvl("0.1"))
            .unwrap()
            .is_empty());
        assert!(matches!(
            iso.alpha_neighborhood(&l("y"), &lvl("0.1")),
            Err(Error::UnknownVertex(_))
        ));
    }

    #[test]
    fn families_have_expected_sizes() {
        assert_eq!(families::complete("v", 5).edge_count(), 10);
        assert_eq!(families::complete_bipartite("v", 3, 3).edge_count(), 9);
        assert_eq!(families::wheel("v", 4).edge_count(), 8);
        assert_eq!(families::cycle("v", 6).edge_count(), 6);
        assert_eq!(families::star("v", 4).edge_count(), 4);
    }
}
