//! Acceptance suite: one test per criterion, each printing a single PASS/FAIL line
//! straight to stderr so the line shows up even when output is captured.

use ramsey_games::density::{m2_onl, max_density, max_density_bruteforce};
use ramsey_games::game::{play, verify_certificate, BuilderCertificate, GameConfig, Restriction, Target, Verdict};
use ramsey_games::montecarlo::{estimate_survival, optimal_forest_painter, steps_for, ProcessConfig};
use ramsey_games::rational::format_rational;
use ramsey_games::solver::{k_star_against, k_star_exact, naive_builder_wins};
use ramsey_games::strategies::*;
use ramsey_games::{Graph, Rational, Vertex};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::io::Write;
use std::time::{Duration, Instant};

fn report(n: u32, ok: bool, detail: String) {
    let line = format!("acceptance criterion {n}: {} - {detail}\n", if ok { "PASS" } else { "FAIL" });
    std::io::stderr().write_all(line.as_bytes()).unwrap();
    assert!(ok, "criterion {n} failed: {detail}");
}

fn tree_config(t: Graph, r: usize, cap: u32) -> GameConfig {
    GameConfig::symmetric(Target::from_graph(t), r, Restriction::TreeSize(cap)).unwrap()
}

fn r(x: &Rational) -> String {
    format_rational(x)
}

const TEN_MINUTES: Duration = Duration::from_secs(600);
const HALF_HOUR: Duration = Duration::from_secs(1800);

#[test]
fn criterion_1_exact_path_values() {
    let mut ok = true;
    let mut parts = Vec::new();
    for (l, want) in [(1, 1), (2, 3), (3, 7)] {
        let t = Instant::now();
        let config = tree_config(Graph::path(l), 2, 10);
        let res = k_star_exact(&config, 10).unwrap();
        let cert_ok = match (&res.builder_certificate, res.k_star) {
            (Some(c), Some(k)) => {
                verify_certificate(&BuilderCertificate::Family(c.clone()), &config.with_restriction(Restriction::TreeSize(k)).unwrap())
                    .unwrap()
                    .is_win()
            }
            _ => false,
        };
        // k* = 1 has nothing below it to survive
        let table_ok = want == 1
            || res.painter_table.as_ref().is_some_and(|p| {
                p.cap == want - 1 && p.survives(&config.with_restriction(Restriction::TreeSize(want - 1)).unwrap()).unwrap()
            });
        let fast = t.elapsed() < TEN_MINUTES;
        ok &= res.k_star == Some(want) && cert_ok && table_ok && fast;
        parts.push(format!("P{l}: k*={:?} cert {cert_ok} table {table_ok} {:.1?}", res.k_star, t.elapsed()));
    }
    report(1, ok, parts.join("; "));
}

#[test]
fn criterion_2_greedy_values() {
    let mut ok = true;
    let mut parts = Vec::new();
    for l in 2..=5usize {
        let want = (l + l.div_ceil(2) * (l - 1)) as u32;
        let t = Instant::now();
        let config = tree_config(Graph::path(l), 2, want + 1);
        let g = greedy_painter(&config.target_graphs());
        let k = k_star_against(&g, &config, want + 1).unwrap();
        ok &= k == Some(want) && t.elapsed() < TEN_MINUTES;
        parts.push(format!("P{l}: {k:?} (want {want}) {:.1?}", t.elapsed()));
    }
    report(2, ok, parts.join("; "));
}

#[test]
fn criterion_3_star_formula() {
    let mut ok = true;
    let mut parts = Vec::new();
    for (l, c, want) in [(2, 2u8, 3u32), (3, 2, 5), (2, 3, 4)] {
        let config = tree_config(Graph::star(l), c as usize, 8);
        let k = k_star_exact(&config, 8).unwrap().k_star;
        let b = builder_star(l, c).unwrap();
        let v = verify_certificate(&b.certificate, &b.config).unwrap().is_win();
        ok &= k == Some(want) && v && b.config.restriction() == Restriction::TreeSize(want);
        parts.push(format!("S{l},r={c}: k*={k:?} construction {v}"));
    }
    report(3, ok, parts.join("; "));
}

#[test]
fn criterion_4_cycle_construction() {
    let mut ok = true;
    let mut parts = Vec::new();
    for l in 3..=5i64 {
        let c = builder_cycle(l as usize).unwrap();
        let cap = Rational::new(l, l - 1);
        let v = verify_certificate(&c.certificate, &c.config).unwrap();
        let exact = v.stats().map(|s| s.max_density);
        let below: Vec<bool> = [Rational::new(1, 1000), Rational::new(1, 1_000_000)]
            .iter()
            .map(|eps| {
                let cfg = c.config.with_restriction(Restriction::Density(cap - eps)).unwrap();
                matches!(verify_certificate(&c.certificate, &cfg).unwrap(), Verdict::Fail { .. })
            })
            .collect();
        ok &= v.is_win() && exact == Some(cap) && below.iter().all(|&b| b);
        parts.push(format!("C{l}: {} max {} fail below {below:?}", v.is_win(), exact.map_or("-".into(), |d| r(&d))));
    }
    report(4, ok, parts.join("; "));
}

#[test]
fn criterion_5_bowtie_numbers() {
    let (w1, w2, w2p) = witness_graphs_bowtie();
    let (d1, d2, d3) = (max_density(&w1), max_density(&w2), max_density(&w2p));
    let b = builder_bowtie().unwrap();
    let v = verify_certificate(&b.certificate, &b.config).unwrap();
    let cap = Rational::new(61, 36);
    let md = v.stats().map(|s| s.max_density);
    let ok = d1 == Rational::new(43, 26) && d2 == d1 && d3 == Rational::new(9, 5) && v.is_win() && md == Some(cap);
    report(5, ok, format!("m(W1)={} m(W2)={} m(W2')={} certificate {} max {}", r(&d1), r(&d2), r(&d3), v.is_win(), md.map_or("-".into(), |d| r(&d))));
}

#[test]
fn criterion_6_doubling() {
    let (_, st) = builder_path_doubling(6, SigmaPolicy::Fixed(vec![1, 2, 2, 1, 1, 2])).unwrap();
    let fixed = st.kappa == [0, 2, 7, 17, 51, 119, 343] && st.mu == [0, 1, 5, 15, 35, 103, 239];
    let mut ok = fixed;
    let mut parts = vec![format!("fixed sigma kappa {:?} mu {:?}", st.kappa, st.mu)];
    for l in 2..=6usize {
        let (c, s) = builder_path_doubling(l, SigmaPolicy::Adaptive).unwrap();
        let win = verify_certificate(&c.certificate, &c.config).unwrap().is_win();
        let k = *s.kappa.last().unwrap();
        let bound = doubling_bound_holds(l, k) && s.kappa.iter().enumerate().all(|(i, &x)| kappa_bound_holds(i as u32, x));
        ok &= win && bound;
        parts.push(format!("l={l}: win {win} kappa {k} bound {bound}"));
    }
    report(6, ok, parts.join("; "));
}

#[test]
fn criterion_7_online_density() {
    let mut ok = true;
    let mut parts = Vec::new();
    for l in 3..=6i64 {
        let d = m2_onl(&Graph::cycle(l as usize), 2).unwrap();
        ok &= d == Rational::new(l, l - 1);
        parts.push(format!("C{l}: {}", r(&d)));
    }
    for l in 3..=5i64 {
        let d = m2_onl(&Graph::clique(l as usize), 2).unwrap();
        let exponent = Rational::from_integer(2) - d.recip();
        let e = l * (l - 1) / 2;
        let want = (Rational::from_integer(2) - Rational::new(2, l + 1)) * (Rational::from_integer(1) - Rational::new(1, e * e));
        ok &= exponent == want;
        parts.push(format!("K{l}: exponent {} (want {})", r(&exponent), r(&want)));
    }
    report(7, ok, parts.join("; "));
}

#[test]
fn criterion_8_density_oracle() {
    let t = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let mut mismatches = 0;
    for _ in 0..200 {
        let n = rng.gen_range(1..=12);
        let p: f64 = rng.gen_range(0.1..0.9);
        let mut g = Graph::new(n);
        for u in 0..n as Vertex {
            for v in u + 1..n as Vertex {
                if rng.gen_bool(p) {
                    g.add_edge(u, v).unwrap();
                }
            }
        }
        if max_density(&g) != max_density_bruteforce(&g).unwrap() {
            mismatches += 1;
        }
    }
    let el = t.elapsed();
    report(8, mismatches == 0 && el < Duration::from_secs(60), format!("{mismatches} mismatches in 200 graphs, {el:.1?}"));
}

#[test]
fn criterion_9_threshold_sandwich() {
    let t = Instant::now();
    let p2 = vec![Graph::path(2), Graph::path(2)];
    let opt = optimal_forest_painter(&Graph::path(2), 2, 4).unwrap();
    let rate = |n: usize, alpha: f64, trials: usize, painter: &dyn ramsey_games::game::PainterStrategy, targets: &[Graph]| {
        let cfg = ProcessConfig { n, steps: steps_for(n, alpha), painter, targets: targets.to_vec(), seed: 9 };
        estimate_survival(&cfg, trials).unwrap().rate_f64()
    };
    let (a, b) = (rate(3000, 0.50, 200, &opt, &p2), rate(3000, 0.85, 200, &opt, &p2));
    let t1 = t.elapsed();
    let c3 = vec![Graph::cycle(3), Graph::cycle(3)];
    let g = greedy_painter(&c3);
    let (c, d) = (rate(1000, 1.20, 100, &g, &c3), rate(1000, 1.45, 100, &g, &c3));
    let t2 = t.elapsed() - t1;
    let ok = a >= 0.9 && b <= 0.1 && c >= 0.8 && d <= 0.2 && t1 < HALF_HOUR && t2 < HALF_HOUR;
    report(9, ok, format!("P2 optimal: {a:.3} at n^0.50, {b:.3} at n^0.85 ({t1:.1?}); C3 greedy: {c:.3} at n^1.20, {d:.3} at n^1.45 ({t2:.1?})"));
}

fn emitted_certificates() -> Vec<(String, Construction)> {
    let mut out = Vec::new();
    for (l, c) in [(2, 2u8), (3, 2), (2, 3)] {
        out.push((format!("star {l},{c}"), builder_star(l, c).unwrap()));
    }
    for l in 2..=6 {
        out.push((format!("doubling {l}"), builder_path_doubling(l, SigmaPolicy::Adaptive).unwrap().0));
    }
    for l in 1..=3 {
        let config = tree_config(Graph::path(l), 2, 8);
        let res = k_star_exact(&config, 8).unwrap();
        let k = res.k_star.unwrap();
        let cert = BuilderCertificate::Family(res.builder_certificate.unwrap());
        out.push((format!("solver P{l}"), Construction { certificate: cert, config: config.with_restriction(Restriction::TreeSize(k)).unwrap() }));
    }
    for (name, t) in [("edge", Graph::path(1)), ("P2", Graph::path(2)), ("S3", Graph::star(3)), ("P6", Graph::path(6))] {
        out.push((format!("force_tree {name}"), force_tree(&t, 2).unwrap()));
    }
    for l in 3..=5 {
        out.push((format!("cycle {l}"), builder_cycle(l).unwrap()));
    }
    out.push(("bowtie".into(), builder_bowtie().unwrap()));
    out
}

#[test]
fn criterion_10_soundness() {
    let mut ok = true;
    let mut bad = Vec::new();
    let certs = emitted_certificates();
    for (name, c) in &certs {
        let mut painters = builtin_painters(&c.config);
        painters.extend((0..100).map(|s| Box::new(random_painter(s, c.config.r())) as Box<dyn ramsey_games::game::PainterStrategy>));
        for p in &painters {
            let won = play(&c.certificate, &**p, &c.config).is_ok_and(|t| t.is_win());
            if !won {
                ok = false;
                bad.push(format!("{name} vs {}", p.name()));
            }
        }
    }
    let mut micro = 0;
    for t in [Graph::path(1), Graph::path(2), Graph::star(2)] {
        for cap in 1..=4 {
            let config = tree_config(t.clone(), 2, cap);
            let exact = k_star_exact(&config, cap).unwrap().k_star.is_some();
            if exact != naive_builder_wins(&config, cap).unwrap() {
                ok = false;
                bad.push(format!("minimax mismatch on {:?} at cap {cap}", t.edges()));
            }
            micro += 1;
        }
    }
    let detail = if bad.is_empty() {
        format!("{} certificates beat every built-in and 100 random painters; exact = minimax on {micro} micro instances", certs.len())
    } else {
        bad.join(", ")
    };
    report(10, ok, detail);
}
