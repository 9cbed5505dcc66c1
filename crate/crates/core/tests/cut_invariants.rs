use fuzzygraph::contraction::contract_set;
use fuzzygraph::random::{random_fuzzy_graph, random_fuzzy_graph_quantized};
use fuzzygraph::{contract_edge, EdgeKey, FuzzyGraph, Membership, MembershipLevel, TNorm};
use num_rational::BigRational;
use proptest::prelude::*;

fn corpus_graph(i: u64) -> FuzzyGraph {
    let n = 2 + (i % 7) as usize;
    let p = [0.3, 0.5, 0.8][(i % 3) as usize];
    random_fuzzy_graph_quantized(n, p, i, 20)
}

#[test]
fn cuts_nest_as_alpha_grows() {
    for i in 0..1000 {
        let g = corpus_graph(i);
        let levels = g.distinct_levels().unwrap();
        for (a, lo) in levels.iter().enumerate() {
            let lo_cut = g.alpha_cut(lo).unwrap();
            for hi in &levels[a..] {
                assert!(g.alpha_cut(hi).unwrap().is_subgraph_of(&lo_cut), "seed {i}");
            }
        }
    }
}

#[test]
fn cut_is_constant_between_levels() {
    for i in 0..1000 {
        let g = corpus_graph(i);
        let levels = g.distinct_levels().unwrap();
        for pair in levels.windows(2) {
            let (a, b) = (pair[0].value().as_rational(), pair[1].value().as_rational());
            let mid = (a + b) / BigRational::from_integer(2.into());
            let mid = MembershipLevel::new(Membership::from_rational(mid).unwrap()).unwrap();
            assert_eq!(
                g.alpha_cut(&mid).unwrap(),
                g.alpha_cut(&pair[1]).unwrap(),
                "seed {i}"
            );
        }
    }
}

#[test]
fn generated_graphs_validate() {
    for i in 0..1000 {
        assert!(corpus_graph(i).validate().is_valid());
        assert!(random_fuzzy_graph(6, 0.5, i).validate().is_valid());
    }
}

fn arb_graph() -> impl Strategy<Value = FuzzyGraph> {
    (2usize..8, 0.2f64..1.0, any::<u64>())
        .prop_map(|(n, p, seed)| random_fuzzy_graph_quantized(n, p, seed, 20))
}

fn arb_tnorm() -> impl Strategy<Value = TNorm> {
    prop::sample::select(TNorm::ALL.to_vec())
}

proptest! {
    #[test]
    fn contraction_output_validates(g in arb_graph(), t in arb_tnorm(), pick in any::<prop::sample::Index>()) {
        let edges: Vec<&EdgeKey> = g.edges().keys().collect();
        prop_assume!(!edges.is_empty());
        let e = edges[pick.index(edges.len())];
        let (h, record) = contract_edge(&g, e, t).unwrap();
        prop_assert!(h.validate().is_valid());
        prop_assert_eq!(h.vertex_count(), g.vertex_count() - 1);
        let u = g.vertex_membership(e.u()).unwrap();
        let v = g.vertex_membership(e.v()).unwrap();
        prop_assert_eq!(&record.merged_vertex_membership, u.min(v));
        for (x, mu) in &record.updated_incidences {
            let want = t.apply(&g.pair_membership(e.u(), x), &g.pair_membership(e.v(), x));
            prop_assert_eq!(mu, &want);
        }
    }

    #[test]
    fn disjoint_contractions_commute(g in arb_graph(), t in arb_tnorm()) {
        let edges: Vec<&EdgeKey> = g.edges().keys().collect();
        for (i, a) in edges.iter().enumerate() {
            for b in &edges[i + 1..] {
                if a.shares_endpoint(b) {
                    continue;
                }
                let ab = contract_set(&g, &[(*a).clone(), (*b).clone()], t).unwrap();
                let ba = contract_set(&g, &[(*b).clone(), (*a).clone()], t).unwrap();
                prop_assert_eq!(ab, ba);
            }
        }
    }

    #[test]
    fn min_neighborhood_is_intersection(g in arb_graph()) {
        let levels = g.distinct_levels().unwrap();
        for e in g.edges().keys() {
            let (h, record) = contract_edge(&g, e, TNorm::Minimum).unwrap();
            for alpha in &levels {
                let got = h.alpha_neighborhood(&record.merged_label, alpha).unwrap();
                let nu = g.alpha_neighborhood(e.u(), alpha).unwrap();
                let nv = g.alpha_neighborhood(e.v(), alpha).unwrap();
                prop_assert_eq!(got, nu.intersection(&nv).cloned().collect());
            }
        }
    }
}
