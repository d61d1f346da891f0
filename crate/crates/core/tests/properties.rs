use proptest::prelude::*;

use distfactor::enumerate::{canonical_form, is_isomorphic};
use distfactor::factors::{
    fractional_ab_factor, half_integral_oracle, has_k_factor, is_id_factor_critical, max_matching,
    maximum_matching, tutte_violator,
};
use distfactor::graph::{complement, delete, disjoint_union, join, Graph};
use distfactor::io::{from_edge_list, from_graph6, to_edge_list, to_graph6};
use distfactor::linalg::symmetric_eigenvalues;
use distfactor::spectra::{all_pairs_distances, distance_matrix, distance_spectral_radius, dq_spectral_radius};

fn graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (1..=max_n).prop_flat_map(|n| {
        proptest::collection::vec(any::<bool>(), n * (n - 1) / 2).prop_map(move |bits| {
            let mut g = Graph::empty(n);
            let mut it = bits.into_iter();
            for j in 1..n {
                for i in 0..j {
                    if it.next().unwrap() {
                        g.add_edge(i, j);
                    }
                }
            }
            g
        })
    })
}

fn connected(max_n: usize) -> impl Strategy<Value = Graph> {
    graph(max_n).prop_map(|mut g| {
        // chain the components together so the graph is connected
        let (label, count) = g.components();
        let reps: Vec<usize> = (0..count).map(|c| label.iter().position(|&l| l == c).unwrap()).collect();
        for w in reps.windows(2) {
            g.add_edge(w[0], w[1]);
        }
        g
    })
}

fn shuffled(g: &Graph, seed: u64) -> Graph {
    let mut perm: Vec<usize> = (0..g.order()).collect();
    let mut s = seed;
    for i in (1..perm.len()).rev() {
        s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
        perm.swap(i, (s >> 33) as usize % (i + 1));
    }
    g.permuted(&perm)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn graph6_round_trip(g in graph(40)) {
        prop_assert_eq!(from_graph6(&to_graph6(&g)).unwrap(), g.clone());
        prop_assert_eq!(from_edge_list(&to_edge_list(&g)).unwrap(), g);
    }

    #[test]
    fn complement_is_an_involution(g in graph(20)) {
        let h = complement(&g);
        let n = g.order();
        prop_assert_eq!(g.edge_count() + h.edge_count(), n * (n - 1) / 2);
        prop_assert_eq!(complement(&h), g);
    }

    #[test]
    fn join_and_union_sizes(g in graph(10), h in graph(10)) {
        let (n, m) = (g.order(), h.order());
        let u = disjoint_union(&g, &h);
        prop_assert_eq!(u.order(), n + m);
        prop_assert_eq!(u.edge_count(), g.edge_count() + h.edge_count());
        let j = join(&g, &h);
        prop_assert_eq!(j.edge_count(), g.edge_count() + h.edge_count() + n * m);
        prop_assert!(j.is_connected());
        prop_assert_eq!(complement(&j), disjoint_union(&complement(&g), &complement(&h)));
    }

    #[test]
    fn canonical_form_ignores_labels(g in graph(9), seed in any::<u64>()) {
        let h = shuffled(&g, seed);
        prop_assert_eq!(canonical_form(&g), canonical_form(&h));
        prop_assert!(is_isomorphic(&g, &h));
    }

    #[test]
    fn deletion_counts(g in graph(12), pick in any::<u64>()) {
        let vs: Vec<usize> = (0..g.order()).filter(|v| pick >> v & 1 == 1).collect();
        let d = delete(&g, &vs, &[]).unwrap();
        prop_assert_eq!(d.graph.order(), g.order() - vs.len());
        let lost = g.edges().filter(|&(u, v)| vs.contains(&u) || vs.contains(&v)).count();
        prop_assert_eq!(d.graph.edge_count(), g.edge_count() - lost);
    }

    #[test]
    fn spectral_bounds(g in connected(12)) {
        let n = g.order() as f64;
        let data = all_pairs_distances(&g).unwrap();
        let lambda = distance_spectral_radius(&g).unwrap();
        let mu = dq_spectral_radius(&g).unwrap();
        prop_assert!(lambda.vector.iter().all(|&x| x > 0.0));
        prop_assert!(lambda.value >= 2.0 * data.sigma as f64 / n - 1e-9);
        prop_assert!(mu.value >= 4.0 * data.sigma as f64 / n - 1e-9);
        prop_assert!(mu.value >= 2.0 * lambda.value - 1e-9 || g.order() == 1);
        let jacobi = symmetric_eigenvalues(&distance_matrix(&g).unwrap().to_f64());
        prop_assert!((jacobi[0] - lambda.value).abs() <= 1e-7 * lambda.value.max(1.0));
        for v in 0..g.order() {
            let bound = 2 * (g.order() as i64 - 1) - g.degree(v) as i64;
            prop_assert!(data.transmissions[v] >= bound);
        }
    }

    #[test]
    fn adding_an_edge_lowers_the_radius(g in connected(10), pick in any::<(usize, usize)>()) {
        let n = g.order();
        let missing: Vec<(usize, usize)> =
            (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).filter(|&(u, v)| !g.has_edge(u, v)).collect();
        prop_assume!(!missing.is_empty());
        let (u, v) = missing[pick.0 % missing.len()];
        let mut h = g.clone();
        h.add_edge(u, v);
        let before = distance_spectral_radius(&g).unwrap().value;
        let after = distance_spectral_radius(&h).unwrap().value;
        prop_assert!(after < before - 1e-9);
    }

    #[test]
    fn matching_oracles_agree(g in graph(11)) {
        let m = maximum_matching(&g);
        let pm = max_matching(&g).unwrap();
        prop_assert_eq!(pm.exists, 2 * m.len() == g.order());
        prop_assert_eq!(tutte_violator(&g).unwrap().exists, pm.exists);
        if g.order() <= 14 {
            prop_assert_eq!(has_k_factor(&g, 1).unwrap().exists, pm.exists);
        }
    }

    #[test]
    fn fractional_oracles_agree(g in graph(7), a in 1usize..3, extra in 0usize..2) {
        prop_assume!(g.edge_count() <= 16);
        let b = a + extra;
        let lp = fractional_ab_factor(&g, a, b).unwrap();
        let dfs = half_integral_oracle(&g, a, b).unwrap();
        prop_assert_eq!(lp.exists, dfs.exists);
        // a perfect matching is a fractional [1, b]-factor
        if a == 1 && max_matching(&g).unwrap().exists {
            prop_assert!(lp.exists);
        }
    }

    #[test]
    fn id_critical_even_order_has_perfect_matching(g in graph(9)) {
        let d = is_id_factor_critical(&g).unwrap();
        if d.critical && g.order() % 2 == 0 {
            prop_assert!(max_matching(&g).unwrap().exists);
        }
        prop_assert_eq!(d.critical, d.definition_witness.is_none());
    }
}
