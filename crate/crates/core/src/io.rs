//! Text documents for fuzzy (`.fg`) and crisp (`.cg`) graphs.
//!
//! ```json
//! {
//!   "vertices": [{ "id": "1", "mu": "1.0" }],
//!   "edges": [{ "u": "1", "v": "2", "mu": "0.9" }]
//! }
//! ```
//!
//! Crisp documents have the same shape without `mu`. Writers emit vertices and
//! edges in label order with `u < v`; readers accept either orientation but
//! reject duplicates, self-loops and memberships outside `[0, 1]`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{CrispGraph, FuzzyGraph};
use crate::label::{EdgeKey, VertexLabel};
use crate::membership::Membership;

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct FuzzyVertexDoc {
    id: String,
    mu: String,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct FuzzyEdgeDoc {
    u: String,
    v: String,
    mu: String,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct FuzzyGraphDoc {
    vertices: Vec<FuzzyVertexDoc>,
    edges: Vec<FuzzyEdgeDoc>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct CrispVertexDoc {
    id: String,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct CrispEdgeDoc {
    u: String,
    v: String,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct CrispGraphDoc {
    vertices: Vec<CrispVertexDoc>,
    edges: Vec<CrispEdgeDoc>,
}

/// Either kind of graph document, told apart by the presence of `mu`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GraphDocument {
    Fuzzy(FuzzyGraph),
    Crisp(CrispGraph),
}

pub fn parse_any(text: &str) -> Result<GraphDocument> {
    let value: serde_json::Value = serde_json::from_str(text)?;
    let has_mu = value
        .get("vertices")
        .and_then(|v| v.as_array())
        .and_then(|vs| vs.first())
        .map(|v| v.get("mu").is_some())
        .or_else(|| {
            value
                .get("edges")
                .and_then(|e| e.as_array())
                .and_then(|es| es.first())
                .map(|e| e.get("mu").is_some())
        })
        .unwrap_or(true);
    if has_mu {
        parse_fuzzy(text).map(GraphDocument::Fuzzy)
    } else {
        parse_crisp(text).map(GraphDocument::Crisp)
    }
}

pub fn parse_fuzzy(text: &str) -> Result<FuzzyGraph> {
    let doc: FuzzyGraphDoc = serde_json::from_str(text)?;
    let mut g = FuzzyGraph::new();
    for v in doc.vertices {
        let label = VertexLabel::new(&v.id)?;
        let mu: Membership = v.mu.parse()?;
        if g.add_vertex(label.clone(), mu).is_some() {
            return Err(Error::DuplicateVertex(label));
        }
    }
    for e in doc.edges {
        let key = EdgeKey::parse(&e.u, &e.v)?;
        let mu: Membership = e.mu.parse()?;
        if g.add_edge(key.clone(), mu).is_some() {
            return Err(Error::DuplicateEdge(key));
        }
    }
    Ok(g)
}

pub fn parse_crisp(text: &str) -> Result<CrispGraph> {
    let doc: CrispGraphDoc = serde_json::from_str(text)?;
    let mut g = CrispGraph::new();
    for v in doc.vertices {
        let label = VertexLabel::new(&v.id)?;
        if !g.add_vertex(label.clone()) {
            return Err(Error::DuplicateVertex(label));
        }
    }
    for e in doc.edges {
        let key = EdgeKey::parse(&e.u, &e.v)?;
        if !g.add_edge(key.clone())? {
            return Err(Error::DuplicateEdge(key));
        }
    }
    Ok(g)
}

fn to_text<T: Serialize>(doc: &T) -> String {
    let mut s = serde_json::to_string_pretty(doc).expect("documents serialize");
    s.push('\n');
    s
}

fn fuzzy_doc(g: &FuzzyGraph) -> FuzzyGraphDoc {
    FuzzyGraphDoc {
        vertices: g
            .vertices()
            .iter()
            .map(|(id, mu)| FuzzyVertexDoc {
                id: id.to_string(),
                mu: mu.to_string(),
            })
            .collect(),
        edges: g
            .edges()
            .iter()
            .map(|(e, mu)| FuzzyEdgeDoc {
                u: e.u().to_string(),
                v: e.v().to_string(),
                mu: mu.to_string(),
            })
            .collect(),
    }
}

fn crisp_doc(g: &CrispGraph) -> CrispGraphDoc {
    CrispGraphDoc {
        vertices: g
            .vertices()
            .iter()
            .map(|id| CrispVertexDoc { id: id.to_string() })
            .collect(),
        edges: g
            .edges()
            .iter()
            .map(|e| CrispEdgeDoc {
                u: e.u().to_string(),
                v: e.v().to_string(),
            })
            .collect(),
    }
}

pub fn fuzzy_to_string(g: &FuzzyGraph) -> String {
    to_text(&fuzzy_doc(g))
}

pub fn crisp_to_string(g: &CrispGraph) -> String {
    to_text(&crisp_doc(g))
}

// Graphs embedded in reports use the document shape.
impl Serialize for FuzzyGraph {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        fuzzy_doc(self).serialize(s)
    }
}

impl Serialize for CrispGraph {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        crisp_doc(self).serialize(s)
    }
}

/// Serializes any report-like value with a leading `schema_version`.
pub fn report_to_string<T: Serialize>(report: &T) -> String {
    #[derive(Serialize)]
    struct Versioned<'a, T> {
        schema_version: u32,
        #[serde(flatten)]
        body: &'a T,
    }
    to_text(&Versioned {
        schema_version: REPORT_SCHEMA_VERSION,
        body: report,
    })
}

pub const REPORT_SCHEMA_VERSION: u32 = 1;

/// The five-vertex example graph with edge (2,3) at 0.7.
pub fn sample_graph() -> FuzzyGraph {
    let mut g = FuzzyGraph::new();
    for v in ["1", "2", "3", "4", "5"] {
        g.add_vertex(VertexLabel::new(v).unwrap(), Membership::one());
    }
    for (a, b, mu) in [
        ("1", "2", "0.9"),
        ("1", "5", "0.6"),
        ("2", "5", "0.8"),
        ("2", "3", "0.7"),
        ("3", "4", "0.5"),
        ("4", "5", "0.4"),
    ] {
        g.add_edge(EdgeKey::parse(a, b).unwrap(), mu.parse().unwrap());
    }
    g
}
