use proptest::prelude::*;
use ramsey_games::density::{m2, m2_onl, max_density, max_density_bruteforce};
use ramsey_games::{Graph, Rational};

fn edges_inside(g: &Graph, mask: u32) -> i64 {
    g.edges().iter().filter(|&&(u, v)| mask >> u & 1 == 1 && mask >> v & 1 == 1).count() as i64
}

/// max e(S)/|S| over nonempty vertex subsets
fn densest(g: &Graph) -> Rational {
    (1..1u32 << g.vertex_count()).map(|s| Rational::new(edges_inside(g, s), s.count_ones() as i64)).max().unwrap()
}

/// max (e(H)-1)/(v(H)-2) over subgraphs on at least three vertices; induced ones suffice
fn two_density(g: &Graph) -> Rational {
    (1..1u32 << g.vertex_count())
        .filter(|s| s.count_ones() >= 3)
        .map(|s| Rational::new(edges_inside(g, s) - 1, s.count_ones() as i64 - 2))
        .max()
        .unwrap()
}

fn graph_from_bits(n: usize, bits: &[bool]) -> Graph {
    let pairs = (0..n as u32).flat_map(|v| (0..v).map(move |u| (u, v)));
    let edges: Vec<_> = pairs.zip(bits).filter(|(_, &b)| b).map(|(e, _)| e).collect();
    Graph::from_edges(n, &edges).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn flow_density_matches_subsets(n in 1usize..10, bits in proptest::collection::vec(any::<bool>(), 36)) {
        let g = graph_from_bits(n, &bits);
        let want = densest(&g);
        prop_assert_eq!(max_density(&g), want);
        prop_assert_eq!(max_density_bruteforce(&g).unwrap(), want);
    }

    #[test]
    fn two_density_matches_subsets(n in 3usize..9, bits in proptest::collection::vec(any::<bool>(), 28)) {
        let g = graph_from_bits(n, &bits);
        prop_assume!(g.is_connected() && g.edge_count() >= 2);
        prop_assert_eq!(m2(&g).unwrap(), two_density(&g));
    }
}

#[test]
fn classical_two_densities() {
    for k in 3..=7 {
        assert_eq!(m2(&Graph::clique(k)).unwrap(), Rational::new(k as i64 + 1, 2));
        assert_eq!(m2(&Graph::cycle(k)).unwrap(), Rational::new(k as i64 - 1, k as i64 - 2));
    }
    for l in 2..=6 {
        assert_eq!(m2(&Graph::path(l)).unwrap(), Rational::new(1, 1));
        assert_eq!(m2(&Graph::star(l)).unwrap(), Rational::new(1, 1));
    }
}

#[test]
fn online_density_of_a_single_color_is_plain_density() {
    for spec in ["cycle:4", "clique:4", "path:3", "bowtie"] {
        let g = Graph::named(spec).unwrap();
        assert_eq!(m2_onl(&g, 1).unwrap(), max_density(&g), "{spec}");
    }
}

#[test]
fn density_ignores_isolated_vertices() {
    let mut g = Graph::cycle(5);
    let before = max_density(&g);
    g.add_vertex();
    g.add_vertex();
    assert_eq!(max_density(&g), before);
    assert_eq!(before, Rational::new(1, 1));
}
