use ramsey_games::game::file::{from_json, to_json};
use ramsey_games::game::{play, verify_certificate, GameConfig, Outcome, Restriction, Target, Verdict};
use ramsey_games::solver::{k_star_exact, naive_builder_wins};
use ramsey_games::strategies::{builder_star, builtin_painters, random_painter};
use ramsey_games::{Graph, Rational};

fn tree_game(spec: &str, k: u32) -> GameConfig {
    GameConfig::symmetric(Target::named(spec).unwrap(), 2, Restriction::TreeSize(k)).unwrap()
}

#[test]
fn exact_search_agrees_with_plain_minimax() {
    for spec in ["edge", "path:2", "star:2", "star:3"] {
        let exact = k_star_exact(&tree_game(spec, 1), 6).unwrap().k_star;
        for cap in 1..=4 {
            let naive = naive_builder_wins(&tree_game(spec, cap), cap).unwrap();
            assert_eq!(naive, exact.is_some_and(|k| k <= cap), "{spec} at cap {cap}");
        }
    }
}

#[test]
fn both_sides_of_the_value_are_certified() {
    let cfg = tree_game("path:3", 1);
    let res = k_star_exact(&cfg, 10).unwrap();
    let k = res.k_star.unwrap();
    assert_eq!(k, 7);
    let table = res.painter_table.unwrap();
    assert!(table.survives(&cfg.with_restriction(Restriction::TreeSize(k - 1)).unwrap()).unwrap());
    let cert = ramsey_games::game::BuilderCertificate::Family(res.builder_certificate.unwrap());
    assert!(verify_certificate(&cert, &cfg.with_restriction(Restriction::TreeSize(k)).unwrap()).unwrap().is_win());
    let low = verify_certificate(&cert, &cfg.with_restriction(Restriction::TreeSize(k - 1)).unwrap()).unwrap();
    assert!(matches!(low, Verdict::Fail { .. }));
}

#[test]
fn certificates_survive_a_json_round_trip() {
    let c = builder_star(3, 3).unwrap();
    let text = to_json(&c.certificate, &c.config).unwrap();
    let (cert, cfg) = from_json(&text).unwrap();
    assert_eq!(cert, c.certificate);
    assert_eq!(to_json(&cert, &cfg).unwrap(), text);
    assert!(verify_certificate(&cert, &cfg).unwrap().is_win());
}

#[test]
fn star_boards_are_stars() {
    // r(l-1)+1 edges at one vertex
    for (l, r) in [(2, 2), (3, 2), (2, 3), (4, 3)] {
        let c = builder_star(l, r).unwrap();
        let v = verify_certificate(&c.certificate, &c.config).unwrap();
        let stats = v.stats().unwrap();
        assert_eq!(stats.max_depth, r as usize * (l - 1) + 1);
        assert_eq!(stats.max_density, Rational::new(stats.max_depth as i64, stats.max_depth as i64 + 1));
    }
}

#[test]
fn playouts_end_in_a_real_monochromatic_copy() {
    let c = builder_star(3, 2).unwrap();
    let mut painters = builtin_painters(&c.config);
    painters.extend((0..20).map(|s| Box::new(random_painter(s, 2)) as Box<_>));
    for p in &painters {
        let t = play(&c.certificate, p.as_ref(), &c.config).unwrap();
        assert_eq!(t.replay().unwrap().edges(), t.board.edges());
        let Outcome::Mono { color, vertices } = &t.outcome else { panic!("{} survived", p.name()) };
        // the witness spans a star with three leaves in one color
        let mono = t.board.color_class(*color).induced(vertices);
        assert_eq!(mono.edge_count(), 3);
        assert!(mono.is_connected());
        assert_eq!((0..4).map(|v| mono.degree(v)).max(), Some(3));
    }
}

#[test]
fn restriction_rejects_oversized_trees() {
    let g = Graph::path(4);
    assert!(ramsey_games::game::restriction_ok(&g, Restriction::TreeSize(4)));
    assert!(!ramsey_games::game::restriction_ok(&g, Restriction::TreeSize(3)));
    assert!(ramsey_games::game::restriction_ok(&Graph::cycle(4), Restriction::Density(Rational::new(1, 1))));
    assert!(!ramsey_games::game::restriction_ok(&Graph::cycle(4), Restriction::TreeSize(9)));
}
