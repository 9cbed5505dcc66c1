//! Property suites relating fuzzy contraction to α-cuts, run over a seeded
//! corpus of small quantized fuzzy graphs.
//!
//! Asserted checks decide the suite verdict. Measured checks are counted and
//! reported but never fail the suite.

use std::collections::{BTreeMap, BTreeSet};

use rayon::prelude::*;
use serde::Serialize;

use crate::contraction::{
    contract_edge, contract_set, crisp_contract, crisp_contract_common_neighbors,
    crisp_contract_set,
};
use crate::error::{Error, Result};
use crate::graph::{CrispGraph, FuzzyGraph};
use crate::label::{EdgeKey, VertexLabel};
use crate::membership::{Membership, MembershipLevel};
use crate::properties::{
    check_property, check_property_via_3cc, edge_connectivity, triconnected_split, Property,
    PropertySpec,
};
use crate::random::{random_connected_graph, random_crisp_graph, random_fuzzy_graph_quantized};
use crate::tnorm::TNorm;

/// Largest corpus graph order.
pub const SUITE_MAX_ORDER: usize = 8;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SuiteConfig {
    pub n_min: usize,
    pub n_max: usize,
    pub densities: Vec<f64>,
    pub seeds_per_cell: u64,
    pub base_seed: u64,
    /// Memberships are multiples of `1/steps`.
    pub steps: u64,
    /// Use all-1 memberships instead of random ones.
    pub full_membership: bool,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            n_min: 3,
            n_max: SUITE_MAX_ORDER,
            densities: vec![0.3, 0.5, 0.8],
            seeds_per_cell: 40,
            base_seed: 0,
            steps: 20,
            full_membership: false,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum CheckId {
    CutCommutation,
    Monotonicity,
    NeighborhoodIntersection,
    OrderIndependence,
    OrderIndependenceCut,
    NoNewEdgesRestricted,
    HereditaryLifting,
    ConnectivityBound,
    ThreeComponentDetermination,
    DecompositionSoundness,
    CutCommutationProduct,
    CutCommutationLukasiewicz,
    CutCommutationCommonNeighbors,
    NoNewEdgesUnrestricted,
}

impl CheckId {
    pub const ALL: [CheckId; 14] = [
        CheckId::CutCommutation,
        CheckId::Monotonicity,
        CheckId::NeighborhoodIntersection,
        CheckId::OrderIndependence,
        CheckId::OrderIndependenceCut,
        CheckId::NoNewEdgesRestricted,
        CheckId::HereditaryLifting,
        CheckId::ConnectivityBound,
        CheckId::ThreeComponentDetermination,
        CheckId::DecompositionSoundness,
        CheckId::CutCommutationProduct,
        CheckId::CutCommutationLukasiewicz,
        CheckId::CutCommutationCommonNeighbors,
        CheckId::NoNewEdgesUnrestricted,
    ];

    pub fn name(self) -> &'static str {
        match self {
            CheckId::CutCommutation => "cut-commutation",
            CheckId::Monotonicity => "monotonicity",
            CheckId::NeighborhoodIntersection => "neighborhood-intersection",
            CheckId::OrderIndependence => "order-independence",
            CheckId::OrderIndependenceCut => "order-independence-cut",
            CheckId::NoNewEdgesRestricted => "no-new-edges-restricted",
            CheckId::HereditaryLifting => "hereditary-lifting",
            CheckId::ConnectivityBound => "connectivity-bound",
            CheckId::ThreeComponentDetermination => "3cc-determination",
            CheckId::DecompositionSoundness => "decomposition-soundness",
            CheckId::CutCommutationProduct => "cut-commutation-product",
            CheckId::CutCommutationLukasiewicz => "cut-commutation-lukasiewicz",
            CheckId::CutCommutationCommonNeighbors => "cut-commutation-common-neighbors",
            CheckId::NoNewEdgesUnrestricted => "no-new-edges-unrestricted",
        }
    }

    pub fn description(self) -> &'static str {
        match self {
            CheckId::CutCommutation => {
                "cut of the min-contraction equals crisp contraction of the cut"
            }
            CheckId::Monotonicity => {
                "new incidences never exceed either old one, for every t-norm"
            }
            CheckId::NeighborhoodIntersection => {
                "α-neighborhood of the merged vertex is the intersection of the endpoints' (min)"
            }
            CheckId::OrderIndependence => {
                "disjoint edges contract to equal graphs in either order, for every t-norm"
            }
            CheckId::OrderIndependenceCut => {
                "cut of a two-edge min-contraction equals both crisp contraction orders of the cut"
            }
            CheckId::NoNewEdgesRestricted => {
                "contracting a sub-threshold edge with a sub-threshold endpoint leaves the cut unchanged up to renaming"
            }
            CheckId::HereditaryLifting => {
                "cut of a min-contraction sequence equals the crisp contraction sequence of the cut"
            }
            CheckId::ConnectivityBound => {
                "edge connectivity of the merged vertex's cut component is at least min(λ, 2)"
            }
            CheckId::ThreeComponentDetermination => {
                "planarity and series-parallelness agree when decided on triconnected components"
            }
            CheckId::DecompositionSoundness => {
                "real edges of the triconnected components partition the input edges"
            }
            CheckId::CutCommutationProduct => "cut-commutation with the product t-norm",
            CheckId::CutCommutationLukasiewicz => "cut-commutation with the Łukasiewicz t-norm",
            CheckId::CutCommutationCommonNeighbors => {
                "cut of the min-contraction equals common-neighbour contraction of the cut"
            }
            CheckId::NoNewEdgesUnrestricted => {
                "contracting a sub-threshold edge whose endpoints both survive leaves the cut unchanged"
            }
        }
    }

    pub fn asserted(self) -> bool {
        !matches!(
            self,
            CheckId::CutCommutationProduct
                | CheckId::CutCommutationLukasiewicz
                | CheckId::CutCommutationCommonNeighbors
                | CheckId::NoNewEdgesUnrestricted
        )
    }
}

/// Everything needed to reproduce one failing case.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Counterexample {
    pub source: &'static str,
    pub seed: Option<u64>,
    pub n: usize,
    pub p: Option<f64>,
    pub alpha: Option<MembershipLevel>,
    pub edges: Vec<EdgeKey>,
    pub tnorm: Option<TNorm>,
    pub detail: String,
    pub graph: FuzzyGraph,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CheckRecord {
    pub id: CheckId,
    pub description: &'static str,
    pub asserted: bool,
    pub cases: u64,
    pub failures: u64,
    pub first_counterexample: Option<Counterexample>,
}

impl CheckRecord {
    pub fn passed(&self) -> bool {
        self.failures == 0
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SuiteReport {
    pub config: SuiteConfig,
    pub corpus_graphs: u64,
    /// True when every asserted check has no failures.
    pub passed: bool,
    pub checks: Vec<CheckRecord>,
}

impl SuiteReport {
    pub fn check(&self, id: CheckId) -> &CheckRecord {
        self.checks
            .iter()
            .find(|c| c.id == id)
            .expect("every check is reported")
    }
}

#[derive(Clone, Default)]
struct Tally {
    cases: u64,
    failures: u64,
    first: Option<Counterexample>,
}

struct Tallies(Vec<Tally>);

impl Tallies {
    fn new() -> Self {
        Tallies(vec![Tally::default(); CheckId::ALL.len()])
    }

    fn slot(&mut self, id: CheckId) -> &mut Tally {
        let i = CheckId::ALL.iter().position(|c| *c == id).unwrap();
        &mut self.0[i]
    }

    fn record(&mut self, id: CheckId, ok: bool, cx: impl FnOnce() -> Counterexample) {
        let t = self.slot(id);
        t.cases += 1;
        if !ok {
            t.failures += 1;
            if t.first.is_none() {
                t.first = Some(cx());
            }
        }
    }

    fn merge(&mut self, other: Tallies) {
        for (a, b) in self.0.iter_mut().zip(other.0) {
            a.cases += b.cases;
            a.failures += b.failures;
            if a.first.is_none() {
                a.first = b.first;
            }
        }
    }
}

struct Case {
    graph: FuzzyGraph,
    seed: u64,
    n: usize,
    p: f64,
}

impl Case {
    fn cx(
        &self,
        alpha: Option<&MembershipLevel>,
        edges: &[&EdgeKey],
        tnorm: Option<TNorm>,
        detail: String,
    ) -> Counterexample {
        Counterexample {
            source: "corpus",
            seed: Some(self.seed),
            n: self.n,
            p: Some(self.p),
            alpha: alpha.cloned(),
            edges: edges.iter().map(|e| (*e).clone()).collect(),
            tnorm,
            detail,
            graph: self.graph.clone(),
        }
    }
}

fn cell_seed(base: u64, n: usize, density_index: usize, s: u64) -> u64 {
    base.wrapping_mul(0x9E37_79B9_7F4A_7C15)
        ^ ((n as u64) << 40)
        ^ ((density_index as u64) << 32)
        ^ s
}

fn corpus(config: &SuiteConfig) -> Vec<Case> {
    let mut out = Vec::new();
    for n in config.n_min..=config.n_max {
        for (di, &p) in config.densities.iter().enumerate() {
            for s in 0..config.seeds_per_cell {
                let seed = cell_seed(config.base_seed, n, di, s);
                let graph = if config.full_membership {
                    let one = Membership::one();
                    FuzzyGraph::from_crisp(&random_crisp_graph(n, p, seed), &one, &one)
                } else {
                    random_fuzzy_graph_quantized(n, p, seed, config.steps)
                };
                out.push(Case { graph, seed, n, p });
            }
        }
    }
    out
}

fn eligible(g: &FuzzyGraph, alpha: &MembershipLevel, e: &EdgeKey) -> bool {
    alpha.admits(&g.edge_membership(e))
        && alpha.admits(g.vertex_membership(e.u()).unwrap())
        && alpha.admits(g.vertex_membership(e.v()).unwrap())
}

fn summarize(a: &CrispGraph, b: &CrispGraph) -> String {
    let show = |g: &CrispGraph| {
        let vs: Vec<&str> = g.vertices().iter().map(|v| v.as_str()).collect();
        let es: Vec<String> = g.edges().iter().map(|e| e.to_string()).collect();
        format!("V={{{}}} E={{{}}}", vs.join(","), es.join(","))
    };
    format!("{} vs {}", show(a), show(b))
}

fn rename(g: &CrispGraph, from: &VertexLabel, to: &VertexLabel) -> CrispGraph {
    let map = |x: &VertexLabel| if x == from { to.clone() } else { x.clone() };
    let mut out = CrispGraph::new();
    for v in g.vertices() {
        out.add_vertex(map(v));
    }
    for e in g.edges() {
        out.add_edge(EdgeKey::new(map(e.u()), map(e.v())).unwrap())
            .unwrap();
    }
    out
}

fn component_with(g: &CrispGraph, v: &VertexLabel) -> CrispGraph {
    let comp = g
        .components()
        .into_iter()
        .find(|c| c.contains(v))
        .unwrap_or_default();
    g.induced(&comp)
}

/// Product contraction at α = 0.85 on a triangle with memberships 0.9: the
/// merged incidence is 0.81, so the cut loses an edge that crisp contraction
/// keeps.
pub fn constructed_product_case() -> (FuzzyGraph, EdgeKey, MembershipLevel) {
    let mut g = FuzzyGraph::new();
    for v in ["u", "v", "x"] {
        g.add_vertex(VertexLabel::new(v).unwrap(), Membership::one());
    }
    let mu: Membership = "0.9".parse().unwrap();
    for (a, b) in [("u", "v"), ("u", "x"), ("v", "x")] {
        g.add_edge(EdgeKey::parse(a, b).unwrap(), mu.clone());
    }
    (
        g,
        EdgeKey::parse("u", "v").unwrap(),
        "0.85".parse().unwrap(),
    )
}

fn run_constructed(t: &mut Tallies) -> Result<()> {
    let (g, e, alpha) = constructed_product_case();
    let fuzzy = contract_edge(&g, &e, TNorm::Product)?.0.alpha_cut(&alpha)?;
    let crisp = crisp_contract(&g.alpha_cut(&alpha)?, &e)?;
    t.record(CheckId::CutCommutationProduct, fuzzy == crisp, || {
        Counterexample {
            source: "constructed",
            seed: None,
            n: 3,
            p: None,
            alpha: Some(alpha.clone()),
            edges: vec![e.clone()],
            tnorm: Some(TNorm::Product),
            detail: summarize(&fuzzy, &crisp),
            graph: g.clone(),
        }
    });
    Ok(())
}

fn check_single_edges(case: &Case, levels: &[MembershipLevel], t: &mut Tallies) -> Result<()> {
    let g = &case.graph;
    for alpha in levels {
        let cut = g.alpha_cut(alpha)?;
        for (e, mu_e) in g.edges() {
            let (u, v) = (e.u(), e.v());
            let w = VertexLabel::merge(u, v);
            if eligible(g, alpha, e) {
                let crisp = crisp_contract(&cut, e)?;
                let common = crisp_contract_common_neighbors(&cut, e)?;
                for tn in TNorm::ALL {
                    let fuzzy = contract_edge(g, e, tn)?.0.alpha_cut(alpha)?;
                    let id = match tn {
                        TNorm::Minimum => CheckId::CutCommutation,
                        TNorm::Product => CheckId::CutCommutationProduct,
                        TNorm::Lukasiewicz => CheckId::CutCommutationLukasiewicz,
                    };
                    t.record(id, fuzzy == crisp, || {
                        case.cx(Some(alpha), &[e], Some(tn), summarize(&fuzzy, &crisp))
                    });
                    if tn == TNorm::Minimum {
                        t.record(
                            CheckId::CutCommutationCommonNeighbors,
                            fuzzy == common,
                            || case.cx(Some(alpha), &[e], Some(tn), summarize(&fuzzy, &common)),
                        );
                    }
                }

                // connectivity of the merged vertex's component
                let (contracted, _) = contract_edge(g, e, TNorm::Minimum)?;
                let after = component_with(&contracted.alpha_cut(alpha)?, &w);
                if after.vertex_count() >= 2 {
                    let before = edge_connectivity(&component_with(&cut, u))?;
                    let lambda = edge_connectivity(&after)?;
                    t.record(CheckId::ConnectivityBound, lambda >= before.min(2), || {
                        case.cx(
                            Some(alpha),
                            &[e],
                            Some(TNorm::Minimum),
                            format!("λ before {before}, after {lambda}"),
                        )
                    });
                }
            } else if !alpha.admits(mu_e) {
                let u_in = alpha.admits(g.vertex_membership(u).unwrap());
                let v_in = alpha.admits(g.vertex_membership(v).unwrap());
                for tn in TNorm::ALL {
                    let fuzzy = contract_edge(g, e, tn)?.0.alpha_cut(alpha)?;
                    if u_in && v_in {
                        t.record(CheckId::NoNewEdgesUnrestricted, fuzzy == cut, || {
                            case.cx(Some(alpha), &[e], Some(tn), summarize(&fuzzy, &cut))
                        });
                    } else {
                        let expected = match (u_in, v_in) {
                            (true, false) => rename(&cut, u, &w),
                            (false, true) => rename(&cut, v, &w),
                            _ => cut.clone(),
                        };
                        t.record(CheckId::NoNewEdgesRestricted, fuzzy == expected, || {
                            case.cx(Some(alpha), &[e], Some(tn), summarize(&fuzzy, &expected))
                        });
                    }
                }
            }
        }
    }

    // Monotonicity and neighborhoods do not depend on α for the contraction
    // itself, so contract once per edge and t-norm.
    for e in g.edges().keys() {
        let (u, v) = (e.u(), e.v());
        for tn in TNorm::ALL {
            let (h, record) = contract_edge(g, e, tn)?;
            let w = &record.merged_label;
            let mut ok = true;
            for (x, mu) in &record.updated_incidences {
                let bound = g.pair_membership(u, x).min(g.pair_membership(v, x));
                ok &= *mu <= bound;
            }
            for alpha in levels {
                for x in h.alpha_neighborhood(w, alpha)? {
                    ok &= alpha.admits(&g.pair_membership(u, &x))
                        && alpha.admits(&g.pair_membership(v, &x));
                }
            }
            t.record(CheckId::Monotonicity, ok, || {
                case.cx(
                    None,
                    &[e],
                    Some(tn),
                    "incidence exceeds an old membership".into(),
                )
            });
            if tn == TNorm::Minimum {
                for alpha in levels {
                    let got = h.alpha_neighborhood(w, alpha)?;
                    let nu = g.alpha_neighborhood(u, alpha)?;
                    let nv = g.alpha_neighborhood(v, alpha)?;
                    let want: BTreeSet<VertexLabel> = nu.intersection(&nv).cloned().collect();
                    t.record(CheckId::NeighborhoodIntersection, got == want, || {
                        case.cx(Some(alpha), &[e], Some(tn), format!("{got:?} vs {want:?}"))
                    });
                }
            }
        }
    }
    Ok(())
}

fn check_edge_pairs(case: &Case, levels: &[MembershipLevel], t: &mut Tallies) -> Result<()> {
    let g = &case.graph;
    let edges: Vec<&EdgeKey> = g.edges().keys().collect();
    for (i, e1) in edges.iter().enumerate() {
        for e2 in &edges[i + 1..] {
            if e1.shares_endpoint(e2) {
                continue;
            }
            let pair = [(*e1).clone(), (*e2).clone()];
            let swapped = [(*e2).clone(), (*e1).clone()];
            for tn in TNorm::ALL {
                let a = contract_set(g, &pair, tn)?;
                let b = contract_set(g, &swapped, tn)?;
                t.record(CheckId::OrderIndependence, a == b, || {
                    case.cx(None, &[e1, e2], Some(tn), "orders differ".into())
                });
            }
            let fuzzy = contract_set(g, &pair, TNorm::Minimum)?;
            for alpha in levels {
                if !(eligible(g, alpha, e1) && eligible(g, alpha, e2)) {
                    continue;
                }
                let cut = g.alpha_cut(alpha)?;
                let lhs = fuzzy.alpha_cut(alpha)?;
                let one = crisp_contract_set(&cut, &pair)?;
                let two = crisp_contract_set(&cut, &swapped)?;
                t.record(
                    CheckId::OrderIndependenceCut,
                    lhs == one && one == two,
                    || {
                        case.cx(
                            Some(alpha),
                            &[e1, e2],
                            Some(TNorm::Minimum),
                            summarize(&lhs, &one),
                        )
                    },
                );
            }
        }
    }
    Ok(())
}

/// Up to three cut edges, taken in canonical order, that form a forest.
fn forest_prefix(g: &FuzzyGraph, alpha: &MembershipLevel) -> Vec<EdgeKey> {
    let mut root: BTreeMap<&VertexLabel, &VertexLabel> = BTreeMap::new();
    fn find<'a>(
        root: &BTreeMap<&'a VertexLabel, &'a VertexLabel>,
        mut x: &'a VertexLabel,
    ) -> &'a VertexLabel {
        while let Some(&r) = root.get(x) {
            x = r;
        }
        x
    }
    let mut out = Vec::new();
    for e in g.edges().keys().filter(|e| eligible(g, alpha, e)) {
        let (a, b) = (find(&root, e.u()), find(&root, e.v()));
        if a != b {
            root.insert(a, b);
            out.push(e.clone());
            if out.len() == 3 {
                break;
            }
        }
    }
    out
}

/// Contracts a small forest of cut edges on both sides.
fn check_lifting(case: &Case, levels: &[MembershipLevel], t: &mut Tallies) -> Result<()> {
    let g = &case.graph;
    for alpha in levels {
        let f = forest_prefix(g, alpha);
        if f.is_empty() {
            continue;
        }
        let refs: Vec<&EdgeKey> = f.iter().collect();
        let crisp = crisp_contract_set(&g.alpha_cut(alpha)?, &f);
        let fuzzy = contract_set(g, &f, TNorm::Minimum).and_then(|h| h.alpha_cut(alpha));
        let (ok, detail) = match (&fuzzy, &crisp) {
            (Ok(a), Ok(b)) => (a == b, summarize(a, b)),
            (Err(a), Ok(_)) => (false, format!("fuzzy sequence failed: {a}")),
            (Ok(_), Err(b)) => (false, format!("crisp sequence failed: {b}")),
            (Err(a), Err(b)) => (false, format!("both failed: {a}; {b}")),
        };
        t.record(CheckId::HereditaryLifting, ok, || {
            case.cx(Some(alpha), &refs, Some(TNorm::Minimum), detail)
        });
    }
    Ok(())
}

fn check_decomposition(
    g: &CrispGraph,
    t: &mut Tallies,
    cx: impl Fn(String) -> Counterexample,
) -> Result<()> {
    let planar = PropertySpec::builtin(Property::Planar);
    let sp = PropertySpec::builtin(Property::SeriesParallel);
    let mut ok = true;
    let mut detail = String::new();
    for p in [&planar, &sp] {
        let direct = check_property(p, g)?;
        let via = check_property_via_3cc(p, g)?;
        if direct != via {
            ok = false;
            detail = format!("{p}: direct {direct}, via components {via}");
        }
    }
    t.record(CheckId::ThreeComponentDetermination, ok, || cx(detail));

    let mut real: Vec<EdgeKey> = Vec::new();
    for part in triconnected_split(g)? {
        real.extend(part.graph.edges().difference(&part.virtual_edges).cloned());
    }
    real.sort();
    let input: Vec<EdgeKey> = g.edges().iter().cloned().collect();
    t.record(CheckId::DecompositionSoundness, real == input, || {
        cx("real component edges differ from the input".into())
    });
    Ok(())
}

fn check_cut_decompositions(
    case: &Case,
    levels: &[MembershipLevel],
    t: &mut Tallies,
) -> Result<()> {
    for alpha in levels {
        let cut = case.graph.alpha_cut(alpha)?;
        if cut.vertex_count() >= 3 && crate::properties::is_connected(&cut) {
            check_decomposition(&cut, t, |d| case.cx(Some(alpha), &[], None, d))?;
        }
    }
    let crisp = random_connected_graph(case.n, case.p, case.seed);
    let one = Membership::one();
    check_decomposition(&crisp, t, |d| Counterexample {
        source: "connected-corpus",
        seed: Some(case.seed),
        n: case.n,
        p: Some(case.p),
        alpha: None,
        edges: vec![],
        tnorm: None,
        detail: d,
        graph: FuzzyGraph::from_crisp(&crisp, &one, &one),
    })
}

fn run_case(case: &Case) -> Result<Tallies> {
    let mut t = Tallies::new();
    let levels = case.graph.distinct_levels()?;
    check_single_edges(case, &levels, &mut t)?;
    check_edge_pairs(case, &levels, &mut t)?;
    check_lifting(case, &levels, &mut t)?;
    check_cut_decompositions(case, &levels, &mut t)?;
    Ok(t)
}

pub fn verify_theorems(config: &SuiteConfig) -> Result<SuiteReport> {
    if config.n_max > SUITE_MAX_ORDER {
        return Err(Error::SizeBound {
            what: "suite graph order",
            limit: SUITE_MAX_ORDER,
            actual: config.n_max,
        });
    }
    if config.steps == 0 || config.densities.iter().any(|p| !(0.0..=1.0).contains(p)) {
        return Err(Error::Precondition(
            "steps must be positive and densities within [0, 1]".into(),
        ));
    }
    let cases = corpus(config);
    let per_case: Vec<Tallies> = cases.par_iter().map(run_case).collect::<Result<_>>()?;

    let mut total = Tallies::new();
    run_constructed(&mut total)?;
    for t in per_case {
        total.merge(t);
    }
    let checks: Vec<CheckRecord> = CheckId::ALL
        .iter()
        .zip(total.0)
        .map(|(&id, t)| CheckRecord {
            id,
            description: id.description(),
            asserted: id.asserted(),
            cases: t.cases,
            failures: t.failures,
            first_counterexample: t.first,
        })
        .collect();
    Ok(SuiteReport {
        config: config.clone(),
        corpus_graphs: cases.len() as u64,
        passed: checks.iter().all(|c| !c.asserted || c.passed()),
        checks,
    })
}
