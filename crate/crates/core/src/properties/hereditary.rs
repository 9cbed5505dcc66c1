//! Brute-force checks of closure under edge contraction and edge deletion.

use rand::Rng;
use rayon::prelude::*;
use serde::Serialize;

use super::PropertySpec;
use crate::contraction::crisp_contract;
use crate::error::{Error, Result};
use crate::graph::CrispGraph;
use crate::label::EdgeKey;
use crate::random::{rng, vertex_label};

/// Largest `n_max` accepted.
pub const HEREDITARY_LIMIT: usize = 7;

/// Graph orders up to this are enumerated exhaustively (all labeled graphs);
/// larger orders are sampled.
pub const EXHAUSTIVE_LIMIT: usize = 6;

/// Labeled graphs drawn per sampled order.
pub const SAMPLES_PER_ORDER: usize = 20_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ClosureOp {
    Deletion,
    Contraction,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HereditaryCounterexample {
    pub graph: CrispGraph,
    pub edge: EdgeKey,
    pub result: CrispGraph,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HereditaryReport {
    pub property: PropertySpec,
    pub operation: ClosureOp,
    pub n_max: usize,
    /// True when some order was sampled rather than enumerated.
    pub sampled: bool,
    /// Connected graphs examined (whether or not they satisfy the property).
    pub graphs_examined: u64,
    pub operations_checked: u64,
    pub counterexample: Option<HereditaryCounterexample>,
}

impl HereditaryReport {
    pub fn passed(&self) -> bool {
        self.counterexample.is_none()
    }
}

pub fn verify_hereditary_contraction(p: &PropertySpec, n_max: usize) -> Result<HereditaryReport> {
    verify_hereditary(p, n_max, ClosureOp::Contraction)
}

pub fn verify_hereditary_deletion(p: &PropertySpec, n_max: usize) -> Result<HereditaryReport> {
    verify_hereditary(p, n_max, ClosureOp::Deletion)
}

/// Checks every connected graph on up to `n_max` labeled vertices that
/// satisfies `p`, applying `op` to each edge. Returns the first failure in
/// (order, edge-mask) order.
pub fn verify_hereditary(
    p: &PropertySpec,
    n_max: usize,
    op: ClosureOp,
) -> Result<HereditaryReport> {
    if n_max > HEREDITARY_LIMIT {
        return Err(Error::SizeBound {
            what: "n_max",
            limit: HEREDITARY_LIMIT,
            actual: n_max,
        });
    }
    let mut report = HereditaryReport {
        property: p.clone(),
        operation: op,
        n_max,
        sampled: false,
        graphs_examined: 0,
        operations_checked: 0,
        counterexample: None,
    };
    for n in 1..=n_max {
        let pairs: Vec<(usize, usize)> = (0..n)
            .flat_map(|a| (a + 1..n).map(move |b| (a, b)))
            .collect();
        let masks: Vec<u64> = if n <= EXHAUSTIVE_LIMIT {
            (0..1u64 << pairs.len()).collect()
        } else {
            report.sampled = true;
            let mut r = rng(0x6865_7265 ^ n as u64);
            (0..SAMPLES_PER_ORDER)
                .map(|_| r.gen_range(0..1u64 << pairs.len()))
                .collect()
        };
        let outcomes: Vec<Result<Outcome>> = masks
            .par_iter()
            .map(|&mask| check_graph(p, &graph_from_mask(n, &pairs, mask), op))
            .collect();
        for outcome in outcomes {
            match outcome? {
                Outcome::Skipped => {}
                Outcome::Checked(ops) => {
                    report.graphs_examined += 1;
                    report.operations_checked += ops;
                }
                Outcome::Failed(cx) => {
                    report.graphs_examined += 1;
                    report.counterexample = Some(cx);
                    return Ok(report);
                }
            }
        }
    }
    Ok(report)
}

enum Outcome {
    Skipped,
    Checked(u64),
    Failed(HereditaryCounterexample),
}

fn graph_from_mask(n: usize, pairs: &[(usize, usize)], mask: u64) -> CrispGraph {
    let mut g = CrispGraph::new();
    for i in 0..n {
        g.add_vertex(vertex_label(i));
    }
    for (bit, &(a, b)) in pairs.iter().enumerate() {
        if mask >> bit & 1 == 1 {
            g.add_edge(EdgeKey::new(vertex_label(a), vertex_label(b)).unwrap())
                .unwrap();
        }
    }
    g
}

fn check_graph(p: &PropertySpec, g: &CrispGraph, op: ClosureOp) -> Result<Outcome> {
    if !super::is_connected(g) {
        return Ok(Outcome::Skipped);
    }
    if !p.check(g)? {
        return Ok(Outcome::Checked(0));
    }
    let mut ops = 0;
    for e in g.edges() {
        let result = match op {
            ClosureOp::Contraction => crisp_contract(g, e)?,
            ClosureOp::Deletion => {
                let mut h = g.clone();
                h.remove_edge(e);
                h
            }
        };
        ops += 1;
        if !p.check(&result)? {
            return Ok(Outcome::Failed(HereditaryCounterexample {
                graph: g.clone(),
                edge: e.clone(),
                result,
            }));
        }
    }
    Ok(Outcome::Checked(ops))
}
