//! Acceptance checks. Runs without the libtest harness so that every
//! criterion prints its own PASS/FAIL line, then exits non-zero if any fail.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use fuzzygraph::contraction::contract_set;
use fuzzygraph::io::parse_crisp;
use fuzzygraph::properties::{
    check_property, check_property_via_3cc, is_connected, verify_hereditary_contraction,
};
use fuzzygraph::random::{random_connected_graph, random_fuzzy_graph_quantized};
use fuzzygraph::reductions::{equivalence_corpus, verify_equivalence};
use fuzzygraph::solvers::{
    satisfies, solve, solve_descending_masks, solve_min_membership, Operation, Semantics,
    SolveInstance,
};
use fuzzygraph::{
    delete_edge, EdgeKey, FuzzyGraph, Membership, MembershipLevel, Property, PropertySpec, TNorm,
    VertexLabel,
};
use rayon::prelude::*;
use serde_json::Value;

const C1_MAX: Duration = Duration::from_secs(1);
const C2_MIN_CASES: u64 = 5_000;
const C2_MAX: Duration = Duration::from_secs(60);
const C4_MIN_CASES: usize = 2_000;
const C5_MIN_CASES: u64 = 2_000;
const C6_MIN_GRAPHS: usize = 1_000;
const C8_INSTANCES: usize = 200;
const C8_N_MAX: usize = 7;
const C8_SEED: u64 = 7;
const C8_MAX: Duration = Duration::from_secs(600);
const C9_EDGE_LIMIT: usize = 12;

struct Verdict {
    pass: bool,
    detail: String,
}

impl Verdict {
    fn new(pass: bool, detail: impl Into<String>) -> Self {
        Verdict {
            pass,
            detail: detail.into(),
        }
    }
}

fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("fixtures")
        .join(name)
}

fn binary() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_fuzzygraph"));
    c.env_remove("FUZZYGRAPH_JOBS");
    c
}

/// Runs the full default suite at four jobs and returns its report text.
fn suite_report(dir: &Path, name: &str) -> (String, Duration) {
    let out = dir.join(name);
    let start = Instant::now();
    let status = binary()
        .args(["--jobs", "4", "verify-theorems", "--out"])
        .arg(&out)
        .output()
        .expect("binary runs");
    let elapsed = start.elapsed();
    assert!(
        matches!(status.status.code(), Some(0 | 1)),
        "suite exit {:?}",
        status.status
    );
    (fs::read_to_string(out).expect("report written"), elapsed)
}

fn check<'a>(report: &'a Value, name: &str) -> &'a Value {
    report["checks"]
        .as_array()
        .unwrap()
        .iter()
        .find(|c| c["id"] == name)
        .unwrap_or_else(|| panic!("check {name} missing"))
}

fn counts(c: &Value) -> (u64, u64) {
    (
        c["cases"].as_u64().unwrap(),
        c["failures"].as_u64().unwrap(),
    )
}

fn criterion_1() -> Verdict {
    let start = Instant::now();
    let mut ok = true;
    let mut notes = Vec::new();
    let expected = [
        ("0.8", vec![("1", "2"), ("2", "5")]),
        (
            "0.5",
            vec![("1", "2"), ("1", "5"), ("2", "5"), ("2", "3"), ("3", "4")],
        ),
    ];
    for (alpha, edges) in expected {
        let out = binary()
            .args([
                "cut",
                fixture("sample.fg").to_str().unwrap(),
                "--alpha",
                alpha,
            ])
            .output()
            .unwrap();
        let text = String::from_utf8(out.stdout).unwrap();
        let golden = fs::read_to_string(fixture(&format!("sample_cut_{alpha}.cg"))).unwrap();
        let g = parse_crisp(&text).unwrap();
        let want: Vec<EdgeKey> = edges
            .iter()
            .map(|(u, v)| {
                EdgeKey::new(VertexLabel::new(u).unwrap(), VertexLabel::new(v).unwrap()).unwrap()
            })
            .collect();
        let same_edges = g.edge_count() == want.len() && want.iter().all(|e| g.contains_edge(e));
        ok &= out.status.success() && text == golden && same_edges;
        notes.push(format!(
            "α={alpha} golden={} edges={}",
            text == golden,
            same_edges
        ));
    }
    let elapsed = start.elapsed();
    ok &= elapsed < C1_MAX;
    Verdict::new(ok, format!("{} in {elapsed:.2?}", notes.join(", ")))
}

fn criterion_2(report: &Value, elapsed: Duration) -> Verdict {
    let (cases, failures) = counts(check(report, "cut-commutation"));
    Verdict::new(
        failures == 0 && cases >= C2_MIN_CASES && elapsed < C2_MAX,
        format!("{failures} failures over {cases} cases, suite in {elapsed:.2?}"),
    )
}

fn criterion_3(report: &Value) -> Verdict {
    let (cases, failures) = counts(check(report, "neighborhood-intersection"));
    let product = check(report, "cut-commutation-product");
    let constructed = product["asserted"] == false
        && product["first_counterexample"]["source"] == "constructed"
        && product["first_counterexample"]["alpha"] == "0.85";
    Verdict::new(
        failures == 0 && cases > 0 && constructed,
        format!("{failures} failures over {cases} cases, constructed product case reported: {constructed}"),
    )
}

fn criterion_4() -> Verdict {
    let graphs: Vec<FuzzyGraph> = (3..=8)
        .flat_map(|n| {
            [0.3, 0.5, 0.8].into_iter().flat_map(move |p| {
                (0..10u64).map(move |s| random_fuzzy_graph_quantized(n, p, 1000 * n as u64 + s, 20))
            })
        })
        .collect();
    let mut notes = Vec::new();
    let mut ok = true;
    for t in TNorm::ALL {
        let (cases, failures) = graphs
            .par_iter()
            .map(|g| {
                let edges: Vec<&EdgeKey> = g.edges().keys().collect();
                let mut tally = (0usize, 0usize);
                for (i, a) in edges.iter().enumerate() {
                    for b in edges[i + 1..].iter().filter(|b| !a.shares_endpoint(b)) {
                        let ab = contract_set(g, &[(*a).clone(), (*b).clone()], t).unwrap();
                        let ba = contract_set(g, &[(*b).clone(), (*a).clone()], t).unwrap();
                        tally.0 += 1;
                        tally.1 += usize::from(ab != ba);
                    }
                }
                tally
            })
            .reduce(|| (0, 0), |x, y| (x.0 + y.0, x.1 + y.1));
        ok &= failures == 0 && cases >= C4_MIN_CASES;
        notes.push(format!("{t}: {failures}/{cases}"));
    }
    Verdict::new(ok, format!("failures/cases {}", notes.join(", ")))
}

fn criterion_5(report: &Value) -> Verdict {
    let c = check(report, "connectivity-bound");
    let (cases, failures) = counts(c);
    let mut detail = format!("{failures} failures over {cases} cases");
    if let Some(d) = c["first_counterexample"]["detail"].as_str() {
        detail.push_str(&format!("; first: {d}"));
    }
    Verdict::new(failures == 0 && cases >= C5_MIN_CASES, detail)
}

fn criterion_6() -> Verdict {
    let graphs: Vec<_> = (0..C6_MIN_GRAPHS as u64)
        .map(|s| {
            random_connected_graph(
                3 + (s % 6) as usize,
                [0.3, 0.5, 0.8][(s / 6 % 3) as usize],
                s,
            )
        })
        .collect();
    let disagreements: usize = graphs
        .par_iter()
        .map(|g| {
            assert!(is_connected(g));
            [Property::Planar, Property::SeriesParallel]
                .into_iter()
                .filter(|&p| {
                    let spec: PropertySpec = p.into();
                    check_property(&spec, g).unwrap() != check_property_via_3cc(&spec, g).unwrap()
                })
                .count()
        })
        .sum();
    Verdict::new(
        disagreements == 0,
        format!(
            "{disagreements} disagreements over {} connected graphs, planar and series-parallel",
            graphs.len()
        ),
    )
}

fn criterion_7() -> Verdict {
    let mut ok = true;
    let mut notes = Vec::new();
    for p in [
        Property::Connected,
        Property::Planar,
        Property::SeriesParallel,
    ] {
        let r = verify_hereditary_contraction(&p.into(), 6).unwrap();
        ok &= r.passed() && !r.sampled;
        notes.push(format!(
            "{p}: {}",
            if r.passed() {
                "closed"
            } else {
                "counterexample"
            }
        ));
    }
    let first = verify_hereditary_contraction(&Property::Bipartite.into(), 6).unwrap();
    let again = verify_hereditary_contraction(&Property::Bipartite.into(), 6).unwrap();
    let c4_to_c3 = first.counterexample.as_ref().is_some_and(|cx| {
        let g = &cx.graph;
        let cycle = g.vertex_count() == 4
            && g.edge_count() == 4
            && g.vertices().iter().all(|v| g.neighbors(v).len() == 2);
        cycle && cx.result.vertex_count() == 3 && cx.result.edge_count() == 3
    });
    ok &= c4_to_c3 && first == again;
    notes.push(format!(
        "bipartite: C4→C3 {c4_to_c3}, deterministic {}",
        first == again
    ));
    Verdict::new(ok, notes.join(", "))
}

fn criterion_8() -> Verdict {
    let start = Instant::now();
    let corpus = equivalence_corpus(C8_INSTANCES, C8_N_MAX, C8_SEED);
    let pairings = [
        (Property::Planar, Operation::Delete),
        (Property::Planar, Operation::Contract),
        (Property::SeriesParallel, Operation::Delete),
        (Property::SeriesParallel, Operation::Contract),
        (Property::Bipartite, Operation::Delete),
    ];
    let mut ok = true;
    let mut notes = Vec::new();
    for alpha in ["0.5", "1.0"] {
        let level: MembershipLevel = alpha.parse().unwrap();
        for (p, op) in pairings {
            let r = verify_equivalence(&corpus, &p.into(), op, &level).unwrap();
            ok &= r.all_agree() && r.instances == C8_INSTANCES;
            if !r.all_agree() {
                notes.push(format!(
                    "{p}/{op}@{alpha}: {} agree, {} disagree, {} skipped",
                    r.agreements, r.disagreements, r.skipped
                ));
            }
        }
    }
    let elapsed = start.elapsed();
    ok &= elapsed < C8_MAX;
    if notes.is_empty() {
        notes.push("all 10 runs agree on every instance".into());
    }
    Verdict::new(ok, format!("{} in {elapsed:.2?}", notes.join("; ")))
}

/// Cheapest deletion set found by trying every subset of edges.
fn min_membership_by_enumeration(
    g: &FuzzyGraph,
    p: &PropertySpec,
    alpha: &MembershipLevel,
) -> Option<fuzzygraph::membership::Total> {
    let edges: Vec<(&EdgeKey, &Membership)> = g.edges().iter().collect();
    let semantics = Semantics::Threshold(alpha.clone());
    (0u32..1 << edges.len())
        .into_par_iter()
        .filter_map(|mask| {
            let chosen: Vec<_> = edges
                .iter()
                .enumerate()
                .filter(|(i, _)| mask >> i & 1 == 1)
                .map(|(_, e)| *e)
                .collect();
            let h = chosen
                .iter()
                .fold(g.clone(), |h, (e, _)| delete_edge(&h, e).unwrap());
            satisfies(&h, p, &semantics)
                .unwrap()
                .then(|| Membership::sum(chosen.iter().map(|(_, mu)| *mu)))
        })
        .min()
}

fn criterion_9() -> Verdict {
    let corpus: Vec<FuzzyGraph> = (3..=7)
        .flat_map(|n| {
            [0.3, 0.5, 0.8].into_iter().flat_map(move |p| {
                (0..4u64)
                    .map(move |s| random_fuzzy_graph_quantized(n, p, 7000 + 100 * n as u64 + s, 10))
            })
        })
        .filter(|g| g.edge_count() <= C9_EDGE_LIMIT)
        .collect();
    let properties = [
        Property::Planar,
        Property::SeriesParallel,
        Property::Bipartite,
        Property::Connected,
    ];
    let mut order_mismatch = 0;
    let mut monotone_breaks = 0;
    let mut optimum_mismatch = 0;
    let mut solved = 0;
    let mut optimized = 0;
    for (i, g) in corpus.iter().enumerate() {
        let levels = g.distinct_levels().unwrap();
        if levels.is_empty() {
            continue;
        }
        let alpha = levels[levels.len() / 2].clone();
        for (j, &p) in properties.iter().enumerate() {
            let spec: PropertySpec = p.into();
            for op in [Operation::Delete, Operation::Contract] {
                let mut previous = false;
                for k in 0..=3 {
                    let inst = SolveInstance {
                        graph: g.clone(),
                        property: spec.clone(),
                        budget_k: k,
                        semantics: Semantics::Threshold(alpha.clone()),
                        operation: op,
                        tnorm: TNorm::ALL[(i + j) % 3],
                    };
                    let yes = solve(&inst).unwrap().outcome.is_yes();
                    order_mismatch +=
                        usize::from(yes != solve_descending_masks(&inst).unwrap().is_some());
                    monotone_breaks += usize::from(previous && !yes);
                    previous = yes;
                    solved += 1;
                }
            }
            let fast = solve_min_membership(g, &spec, &alpha)
                .unwrap()
                .map(|r| r.removed_total);
            optimum_mismatch +=
                usize::from(fast != min_membership_by_enumeration(g, &spec, &alpha));
            optimized += 1;
        }
    }
    Verdict::new(
        order_mismatch == 0 && monotone_breaks == 0 && optimum_mismatch == 0 && !corpus.is_empty(),
        format!(
            "{} graphs: {order_mismatch}/{solved} order mismatches, {monotone_breaks} monotonicity breaks, {optimum_mismatch}/{optimized} optimum mismatches",
            corpus.len()
        ),
    )
}

fn criterion_10(first: &str, dir: &Path) -> Verdict {
    let (second, _) = suite_report(dir, "second.rpt");
    Verdict::new(
        first == second,
        format!("{} bytes, identical: {}", first.len(), first == second),
    )
}

fn main() -> ExitCode {
    let dir = tempfile::tempdir().unwrap();
    let (first, elapsed) = suite_report(dir.path(), "first.rpt");
    let report: Value = serde_json::from_str(&first).unwrap();

    let results = [
        ("golden α-cuts of the example graph", criterion_1()),
        ("min cut-commutation", criterion_2(&report, elapsed)),
        (
            "neighborhood intersection and measured product case",
            criterion_3(&report),
        ),
        ("order independence per t-norm", criterion_4()),
        ("connectivity bound", criterion_5(&report)),
        ("triconnected-component determination", criterion_6()),
        ("contraction-closure oracle", criterion_7()),
        ("reduction equivalence", criterion_8()),
        ("solver cross-validation", criterion_9()),
        (
            "byte-identical suite reports",
            criterion_10(&first, dir.path()),
        ),
    ];
    let mut failed = 0;
    for (i, (name, v)) in results.iter().enumerate() {
        println!(
            "criterion {:>2}: {} {name}: {}",
            i + 1,
            if v.pass { "PASS" } else { "FAIL" },
            v.detail
        );
        failed += usize::from(!v.pass);
    }
    println!(
        "acceptance: {} passed, {failed} failed",
        results.len() - failed
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
