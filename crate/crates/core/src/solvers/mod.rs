//! Exact edge-deletion and edge-contraction solvers for small fuzzy graphs,
//! plus the classical cover oracles used by the reduction harness.

mod cover;

pub use cover::{solve_connected_vertex_cover, steiner_tree, CoverOutcome, CoverResult};

use std::fmt;
use std::str::FromStr;

use itertools::Itertools;
use rayon::prelude::*;
use serde::{Serialize, Serializer};

use crate::contraction::contract_set;
use crate::error::{Error, Result};
use crate::graph::FuzzyGraph;
use crate::label::EdgeKey;
use crate::membership::{Membership, MembershipLevel, Total};
use crate::properties::PropertySpec;
use crate::tnorm::TNorm;

/// With more edges than this, `solve` only runs when the budget is at most
/// [`BUDGET_LIMIT`].
pub const EDGE_LIMIT: usize = 24;
pub const BUDGET_LIMIT: usize = 6;
/// Candidate edges searched by [`solve_min_membership`].
pub const MIN_MEMBERSHIP_EDGE_LIMIT: usize = 20;

// Subsets handed to the worker pool at a time.
const BLOCK: usize = 1024;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Semantics {
    Threshold(MembershipLevel),
    AllAlpha,
}

impl FromStr for Semantics {
    type Err = Error;

    /// `all` or `threshold:A`.
    fn from_str(s: &str) -> Result<Self> {
        if s == "all" {
            return Ok(Semantics::AllAlpha);
        }
        match s.strip_prefix("threshold:") {
            Some(level) => Ok(Semantics::Threshold(level.parse()?)),
            None => Err(Error::Precondition(format!(
                "semantics must be `all` or `threshold:A`, got {s:?}"
            ))),
        }
    }
}

impl fmt::Display for Semantics {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Semantics::Threshold(a) => write!(f, "threshold:{a}"),
            Semantics::AllAlpha => f.write_str("all"),
        }
    }
}

impl Serialize for Semantics {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Operation {
    Delete,
    Contract,
}

impl Operation {
    pub fn name(self) -> &'static str {
        match self {
            Operation::Delete => "delete",
            Operation::Contract => "contract",
        }
    }
}

impl FromStr for Operation {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "delete" => Ok(Operation::Delete),
            "contract" => Ok(Operation::Contract),
            _ => Err(Error::Precondition(format!("unknown operation {s:?}"))),
        }
    }
}

impl fmt::Display for Operation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SolveInstance {
    pub graph: FuzzyGraph,
    pub property: PropertySpec,
    pub budget_k: usize,
    pub semantics: Semantics,
    pub operation: Operation,
    /// Used in contract mode only.
    pub tnorm: TNorm,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", content = "edges", rename_all = "snake_case")]
pub enum Outcome {
    Yes(Vec<EdgeKey>),
    NoWithinBudget,
}

impl Outcome {
    pub fn is_yes(&self) -> bool {
        matches!(self, Outcome::Yes(_))
    }

    pub fn edges(&self) -> Option<&[EdgeKey]> {
        match self {
            Outcome::Yes(f) => Some(f),
            Outcome::NoWithinBudget => None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SolveResult {
    pub outcome: Outcome,
    /// Subsets tested up to and including the answer, in enumeration order.
    pub subsets_examined: u64,
    /// Total membership of the deleted edges (delete mode, yes outcomes).
    pub membership_removed: Option<Total>,
}

impl SolveInstance {
    /// Does applying `f` put the graph in the property under the instance's
    /// semantics? Contraction sequences that cannot be replayed count as
    /// infeasible.
    pub fn is_feasible(&self, f: &[EdgeKey]) -> Result<bool> {
        let modified = match self.operation {
            Operation::Delete => {
                let mut g = self.graph.clone();
                for e in f {
                    if g.remove_edge(e).is_none() {
                        return Err(Error::EdgeNotPresent(e.clone()));
                    }
                }
                g
            }
            Operation::Contract => match contract_set(&self.graph, f, self.tnorm) {
                Ok(g) => g,
                Err(Error::EdgeNotPresent(_) | Error::CollapsedEdge(_)) => return Ok(false),
                Err(e) => return Err(e),
            },
        };
        satisfies(&modified, &self.property, &self.semantics)
    }

    fn check_bounds(&self) -> Result<()> {
        let m = self.graph.edge_count();
        if m > EDGE_LIMIT && self.budget_k > BUDGET_LIMIT {
            return Err(Error::SizeBound {
                what: "edges (with budget above 6)",
                limit: EDGE_LIMIT,
                actual: m,
            });
        }
        Ok(())
    }
}

/// Property check on the cut at α, or on the cut at every distinct level.
pub fn satisfies(g: &FuzzyGraph, p: &PropertySpec, semantics: &Semantics) -> Result<bool> {
    match semantics {
        Semantics::Threshold(alpha) => p.check(&g.alpha_cut(alpha)?),
        Semantics::AllAlpha => {
            for alpha in g.distinct_levels()? {
                if !p.check(&g.alpha_cut_unchecked(&alpha))? {
                    return Ok(false);
                }
            }
            Ok(true)
        }
    }
}

/// Smallest feasible edge set of size at most `budget_k`, searching sizes in
/// increasing order and, within a size, combinations of the canonical edge
/// order lexicographically.
pub fn solve(instance: &SolveInstance) -> Result<SolveResult> {
    instance.graph.ensure_valid()?;
    instance.check_bounds()?;
    let edges: Vec<EdgeKey> = instance.graph.edges().keys().cloned().collect();
    let mut examined = 0u64;
    for size in 0..=instance.budget_k.min(edges.len()) {
        let mut combos = (0..edges.len()).combinations(size);
        loop {
            let block: Vec<Vec<usize>> = combos.by_ref().take(BLOCK).collect();
            if block.is_empty() {
                break;
            }
            let hit = first_feasible(&block, |idx| {
                let f: Vec<EdgeKey> = idx.iter().map(|&i| edges[i].clone()).collect();
                instance.is_feasible(&f)
            })?;
            if let Some(pos) = hit {
                examined += pos as u64 + 1;
                let f: Vec<EdgeKey> = block[pos].iter().map(|&i| edges[i].clone()).collect();
                let removed = (instance.operation == Operation::Delete)
                    .then(|| Membership::sum(f.iter().map(|e| &instance.graph.edges()[e])));
                return Ok(SolveResult {
                    outcome: Outcome::Yes(f),
                    subsets_examined: examined,
                    membership_removed: removed,
                });
            }
            examined += block.len() as u64;
        }
    }
    Ok(SolveResult {
        outcome: Outcome::NoWithinBudget,
        subsets_examined: examined,
        membership_removed: None,
    })
}

/// Index of the first candidate accepted by `test`, evaluated in parallel.
fn first_feasible<T: Sync>(
    candidates: &[T],
    test: impl Fn(&T) -> Result<bool> + Sync,
) -> Result<Option<usize>> {
    let found = candidates
        .par_iter()
        .enumerate()
        .map(|(i, c)| test(c).map(|ok| ok.then_some(i)))
        .find_first(|r| !matches!(r, Ok(None)));
    found.transpose().map(Option::flatten)
}

/// Re-solves by scanning all subsets as bitmasks from the largest mask down,
/// returning any feasible set of size at most `budget_k`. Used to cross-check
/// the verdict of [`solve`] with a different enumeration order.
pub fn solve_descending_masks(instance: &SolveInstance) -> Result<Option<Vec<EdgeKey>>> {
    instance.graph.ensure_valid()?;
    let edges: Vec<&EdgeKey> = instance.graph.edges().keys().collect();
    if edges.len() > EDGE_LIMIT {
        return Err(Error::SizeBound {
            what: "edges",
            limit: EDGE_LIMIT,
            actual: edges.len(),
        });
    }
    for mask in (0..1u32 << edges.len()).rev() {
        if mask.count_ones() as usize > instance.budget_k {
            continue;
        }
        let f: Vec<EdgeKey> = (0..edges.len())
            .rev()
            .filter(|&i| mask >> i & 1 == 1)
            .map(|i| edges[i].clone())
            .collect();
        if instance.is_feasible(&f)? {
            return Ok(Some(f));
        }
    }
    Ok(None)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MinMembershipResult {
    pub edges: Vec<EdgeKey>,
    pub removed_total: Total,
}

/// Edge deletion minimizing total removed membership so that the α₀-cut has
/// the property. Ties go to fewer edges, then to the earlier combination.
/// `None` when no deletion set works.
///
/// Only edges present in the cut are candidates: deleting any other edge
/// leaves the cut unchanged and costs a positive amount.
pub fn solve_min_membership(
    g: &FuzzyGraph,
    p: &PropertySpec,
    alpha: &MembershipLevel,
) -> Result<Option<MinMembershipResult>> {
    g.ensure_valid()?;
    let candidates: Vec<(&EdgeKey, &Membership)> = g
        .edges()
        .iter()
        .filter(|(e, mu)| {
            alpha.admits(mu)
                && alpha.admits(g.vertex_membership(e.u()).unwrap())
                && alpha.admits(g.vertex_membership(e.v()).unwrap())
        })
        .collect();
    if candidates.len() > MIN_MEMBERSHIP_EDGE_LIMIT {
        return Err(Error::SizeBound {
            what: "edges in the cut",
            limit: MIN_MEMBERSHIP_EDGE_LIMIT,
            actual: candidates.len(),
        });
    }
    let instance = SolveInstance {
        graph: g.clone(),
        property: p.clone(),
        budget_k: candidates.len(),
        semantics: Semantics::Threshold(alpha.clone()),
        operation: Operation::Delete,
        tnorm: TNorm::Minimum,
    };
    let mut best: Option<(Total, Vec<EdgeKey>)> = None;
    for size in 0..=candidates.len() {
        let subsets: Vec<Vec<usize>> = (0..candidates.len()).combinations(size).collect();
        let results: Vec<Option<Total>> = subsets
            .par_iter()
            .map(|idx| {
                let f: Vec<EdgeKey> = idx.iter().map(|&i| candidates[i].0.clone()).collect();
                Ok(instance
                    .is_feasible(&f)?
                    .then(|| Membership::sum(idx.iter().map(|&i| candidates[i].1))))
            })
            .collect::<Result<_>>()?;
        for (idx, cost) in subsets.iter().zip(results) {
            let Some(cost) = cost else { continue };
            // strict comparison keeps the smaller, earlier set on ties
            if best.as_ref().is_none_or(|(b, _)| cost < *b) {
                let f = idx.iter().map(|&i| candidates[i].0.clone()).collect();
                best = Some((cost, f));
            }
        }
    }
    Ok(best.map(|(removed_total, edges)| MinMembershipResult {
        edges,
        removed_total,
    }))
}
