//! Fuzzy edge contraction and deletion, plus classical crisp contraction.
//!
//! Fuzzy contraction of `uv` into `w` sets `μ(w) = min(μ(u), μ(v))` and, for
//! every other vertex `x`, `μ'(w, x) = T(μ(u, x), μ(v, x))` with absent pairs
//! read as 0. Under any t-norm the merged vertex therefore keeps only the
//! common neighbors of `u` and `v`. Crisp contraction is the classical one:
//! `w` inherits the union of both neighborhoods.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{CrispGraph, FuzzyGraph};
use crate::label::{EdgeKey, VertexLabel};
use crate::membership::Membership;
use crate::tnorm::TNorm;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ContractionRecord {
    pub contracted: EdgeKey,
    pub merged_label: VertexLabel,
    pub merged_vertex_membership: Membership,
    /// New membership towards every former neighbor of either endpoint,
    /// including zeros for pairs that were dropped.
    pub updated_incidences: BTreeMap<VertexLabel, Membership>,
}

pub fn contract_edge(
    g: &FuzzyGraph,
    e: &EdgeKey,
    t: TNorm,
) -> Result<(FuzzyGraph, ContractionRecord)> {
    g.ensure_valid()?;
    contract_edge_unchecked(g, e, t)
}

fn contract_edge_unchecked(
    g: &FuzzyGraph,
    e: &EdgeKey,
    t: TNorm,
) -> Result<(FuzzyGraph, ContractionRecord)> {
    if !g.edges().contains_key(e) {
        return Err(Error::EdgeNotPresent(e.clone()));
    }
    let (u, v) = (e.u(), e.v());
    let w = VertexLabel::merge(u, v);
    if g.contains_vertex(&w) {
        return Err(Error::LabelCollision(w));
    }
    let mu_w = g.vertices()[u].clone().min(g.vertices()[v].clone());

    let mut out = FuzzyGraph::new();
    for (x, mu) in g.vertices() {
        if x != u && x != v {
            out.add_vertex(x.clone(), mu.clone());
        }
    }
    out.add_vertex(w.clone(), mu_w.clone());

    let mut at_u = BTreeMap::new();
    let mut at_v = BTreeMap::new();
    for (key, mu) in g.edges() {
        if key == e {
            continue;
        }
        if let Some(x) = key.other(u) {
            at_u.insert(x.clone(), mu.clone());
        } else if let Some(x) = key.other(v) {
            at_v.insert(x.clone(), mu.clone());
        } else {
            out.add_edge(key.clone(), mu.clone());
        }
    }

    let zero = Membership::zero();
    let touched: BTreeSet<&VertexLabel> = at_u.keys().chain(at_v.keys()).collect();
    let mut updated = BTreeMap::new();
    for x in touched {
        let mu = t.apply(at_u.get(x).unwrap_or(&zero), at_v.get(x).unwrap_or(&zero));
        if !mu.is_zero() {
            out.add_edge(EdgeKey::new(w.clone(), x.clone())?, mu.clone());
        }
        updated.insert(x.clone(), mu);
    }

    let record = ContractionRecord {
        contracted: e.clone(),
        merged_label: w,
        merged_vertex_membership: mu_w,
        updated_incidences: updated,
    };
    Ok((out, record))
}

/// Sets the membership of `e` to 0; vertices are untouched.
pub fn delete_edge(g: &FuzzyGraph, e: &EdgeKey) -> Result<FuzzyGraph> {
    if !g.edges().contains_key(e) {
        return Err(Error::EdgeNotPresent(e.clone()));
    }
    let mut out = g.clone();
    out.remove_edge(e);
    Ok(out)
}

/// Contracts `edges` left to right. Each reference names vertices of the
/// input graph and is resolved to the vertex currently containing them, so
/// edge sets found against `g` can be replayed directly.
pub fn contract_set(g: &FuzzyGraph, edges: &[EdgeKey], t: TNorm) -> Result<FuzzyGraph> {
    g.ensure_valid()?;
    let mut current_of: HashMap<VertexLabel, VertexLabel> = g
        .vertices()
        .keys()
        .map(|v| (v.clone(), v.clone()))
        .collect();
    let mut current = g.clone();
    for e in edges {
        let resolve = |x: &VertexLabel| {
            current_of
                .get(x)
                .cloned()
                .ok_or_else(|| Error::UnknownVertex(x.clone()))
        };
        let (ru, rv) = (resolve(e.u())?, resolve(e.v())?);
        if ru == rv {
            return Err(Error::CollapsedEdge(e.clone()));
        }
        let key = EdgeKey::new(ru.clone(), rv.clone())?;
        let (next, record) = contract_edge_unchecked(&current, &key, t)?;
        for target in current_of.values_mut() {
            if *target == ru || *target == rv {
                *target = record.merged_label.clone();
            }
        }
        current = next;
    }
    Ok(current)
}

/// Classical simple-graph contraction: parallel edges coalesce, the loop
/// from `e` itself disappears.
pub fn crisp_contract(g: &CrispGraph, e: &EdgeKey) -> Result<CrispGraph> {
    contract_crisp_with(g, e, |in_u, in_v| in_u || in_v)
}

/// Crisp contraction that keeps only common neighbors of the endpoints,
/// which is the adjacency rule fuzzy contraction induces on α-cuts.
pub fn crisp_contract_common_neighbors(g: &CrispGraph, e: &EdgeKey) -> Result<CrispGraph> {
    contract_crisp_with(g, e, |in_u, in_v| in_u && in_v)
}

fn contract_crisp_with(
    g: &CrispGraph,
    e: &EdgeKey,
    keep: impl Fn(bool, bool) -> bool,
) -> Result<CrispGraph> {
    if !g.contains_edge(e) {
        return Err(Error::EdgeNotPresent(e.clone()));
    }
    let (u, v) = (e.u(), e.v());
    let w = VertexLabel::merge(u, v);
    if g.contains_vertex(&w) {
        return Err(Error::LabelCollision(w));
    }
    let nu = g.neighbors(u);
    let nv = g.neighbors(v);
    let mut out = CrispGraph::new();
    for x in g.vertices() {
        if x != u && x != v {
            out.add_vertex(x.clone());
        }
    }
    out.add_vertex(w.clone());
    for key in g.edges() {
        if !key.contains(u) && !key.contains(v) {
            out.add_edge(key.clone())?;
        }
    }
    for x in nu.union(&nv) {
        if x == u || x == v {
            continue;
        }
        if keep(nu.contains(x), nv.contains(x)) {
            out.add_edge(EdgeKey::new(w.clone(), x.clone())?)?;
        }
    }
    Ok(out)
}

/// Left-to-right classical contraction with the same reference resolution
/// as [`contract_set`].
pub fn crisp_contract_set(g: &CrispGraph, edges: &[EdgeKey]) -> Result<CrispGraph> {
    let mut current_of: HashMap<VertexLabel, VertexLabel> = g
        .vertices()
        .iter()
        .map(|v| (v.clone(), v.clone()))
        .collect();
    let mut current = g.clone();
    for e in edges {
        let resolve = |x: &VertexLabel| {
            current_of
                .get(x)
                .cloned()
                .ok_or_else(|| Error::UnknownVertex(x.clone()))
        };
        let (ru, rv) = (resolve(e.u())?, resolve(e.v())?);
        if ru == rv {
            return Err(Error::CollapsedEdge(e.clone()));
        }
        let key = EdgeKey::new(ru.clone(), rv.clone())?;
        current = crisp_contract(&current, &key)?;
        let w = VertexLabel::merge(&ru, &rv);
        for target in current_of.values_mut() {
            if *target == ru || *target == rv {
                *target = w.clone();
            }
        }
    }
    Ok(current)
}

/// Exact equality of vertex sets, edge sets and memberships. Merged labels
/// are canonical, so this decides "same graph up to the renaming a
/// contraction performs".
pub fn graphs_equal<G: PartialEq>(a: &G, b: &G) -> bool {
    a == b
}
