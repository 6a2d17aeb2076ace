//! Painter strategies. Colors: 1 is red, 2 is blue.

use crate::density::m2_onl_levels;
use crate::embed::{closes_mono_copy, Pattern};
use crate::error::{Error, Result};
use crate::game::{GameConfig, PainterStrategy};
use crate::graph::{Color, ColoredGraph, Graph, Vertex};
use crate::solver::{path_edges, PainterFunction, PainterTable, StrategyFunction};
use crate::tree::{encode_rooted, root_profile, Adj, Code};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::cell::RefCell;

const RED: Color = 1;
const BLUE: Color = 2;

/// Highest color whose own forbidden graph is not closed by the edge; color 1 if none.
pub struct Greedy {
    avoid: Vec<Pattern>,
    /// `Some(l)` when color `c`'s forbidden graph is the path with `l` edges.
    paths: Vec<Option<u32>>,
    label: String,
}

impl Greedy {
    fn new(avoid: Vec<Pattern>, label: &str) -> Greedy {
        let paths = avoid.iter().map(path_edges).collect();
        Greedy { avoid, paths, label: label.into() }
    }
}

/// On a pair of trees a path closes iff the two root paths of its color reach it.
impl StrategyFunction for Greedy {
    fn color(&self, a: &[u8], b: &[u8]) -> Color {
        if self.paths.iter().all(Option::is_some) {
            let r = self.avoid.len() as Color;
            let (pa, pb) = (root_profile(a, r), root_profile(b, r));
            for c in (1..=r).rev() {
                let i = c as usize - 1;
                if pa[i] + pb[i] + 1 < self.paths[i].unwrap() {
                    return c;
                }
            }
            return 1;
        }
        PainterFunction(self).color(a, b)
    }
}

impl PainterStrategy for Greedy {
    fn decide(&self, board: &ColoredGraph, u: Vertex, v: Vertex) -> Color {
        for c in (1..=self.avoid.len() as Color).rev() {
            if !closes_mono_copy(board, &self.avoid[c as usize - 1], c, u, v) {
                return c;
            }
        }
        1
    }

    fn name(&self) -> String {
        self.label.clone()
    }
}

pub fn greedy_painter(targets: &[Graph]) -> Greedy {
    Greedy::new(targets.iter().map(Pattern::new).collect(), "greedy")
}

/// Greedy where color `i` avoids the maximizer of level `i` of the online density recursion.
pub fn smart_greedy_painter(f: &Graph, r: usize) -> Result<Greedy> {
    let levels = m2_onl_levels(f, r)?;
    let avoid = levels.iter().map(|l| Pattern::new(&f.induced(&l.maximizer))).collect();
    Ok(Greedy::new(avoid, "smart-greedy"))
}

/// The smart-greedy forbidden graphs, color 1 first.
pub fn smart_greedy_graphs(f: &Graph, r: usize) -> Result<Vec<Graph>> {
    Ok(m2_onl_levels(f, r)?.iter().map(|l| f.induced(&l.maximizer)).collect())
}

fn touches(board: &ColoredGraph, u: Vertex, v: Vertex, c: Color) -> bool {
    board.color_degree(u, c) > 0 || board.color_degree(v, c) > 0
}

/// Blue exactly when the edge touches a red edge and closes no blue path of length `l`.
pub struct HeavyEdge {
    path: Pattern,
    l: usize,
}

pub fn heavy_edge_painter(l: usize) -> Result<HeavyEdge> {
    if l < 2 {
        return Err(Error::Domain("heavy-edge painter needs l >= 2".into()));
    }
    Ok(HeavyEdge { path: Pattern::new(&Graph::path(l)), l })
}

impl PainterStrategy for HeavyEdge {
    fn decide(&self, board: &ColoredGraph, u: Vertex, v: Vertex) -> Color {
        if touches(board, u, v, RED) && !closes_mono_copy(board, &self.path, BLUE, u, v) {
            BLUE
        } else {
            RED
        }
    }

    fn name(&self) -> String {
        format!("heavy-edge:{}", self.l)
    }
}

/// Red when the edge touches a blue edge and closes no red path of length 4, or when
/// blue would close a blue path of length `l`; blue otherwise.
pub struct Path815 {
    red4: Pattern,
    blue: Pattern,
    l: usize,
}

pub fn path_815_painter(l: usize) -> Result<Path815> {
    if l < 5 {
        return Err(Error::Domain("the 8/15 painter needs l >= 5".into()));
    }
    Ok(Path815 { red4: Pattern::new(&Graph::path(4)), blue: Pattern::new(&Graph::path(l)), l })
}

impl PainterStrategy for Path815 {
    fn decide(&self, board: &ColoredGraph, u: Vertex, v: Vertex) -> Color {
        let a = touches(board, u, v, BLUE) && !closes_mono_copy(board, &self.red4, RED, u, v);
        if a || closes_mono_copy(board, &self.blue, BLUE, u, v) {
            RED
        } else {
            BLUE
        }
    }

    fn name(&self) -> String {
        format!("p815:{}", self.l)
    }
}

/// Blue exactly when that closes no blue bowtie and red would close a red triangle.
pub struct Bowtie {
    bowtie: Pattern,
    triangle: Pattern,
}

pub fn bowtie_painter() -> Bowtie {
    Bowtie { bowtie: Pattern::new(&Graph::bowtie()), triangle: Pattern::new(&Graph::cycle(3)) }
}

impl PainterStrategy for Bowtie {
    fn decide(&self, board: &ColoredGraph, u: Vertex, v: Vertex) -> Color {
        if closes_mono_copy(board, &self.triangle, RED, u, v) && !closes_mono_copy(board, &self.bowtie, BLUE, u, v) {
            BLUE
        } else {
            RED
        }
    }

    fn name(&self) -> String {
        "bowtie".into()
    }
}

pub struct Const(pub Color);

pub fn const_painter(c: Color) -> Const {
    Const(c)
}

impl PainterStrategy for Const {
    fn decide(&self, _: &ColoredGraph, _: Vertex, _: Vertex) -> Color {
        self.0
    }

    fn name(&self) -> String {
        format!("const:{}", self.0)
    }
}

/// Uniform random colors from a seeded generator.
pub struct RandomPainter {
    rng: RefCell<ChaCha8Rng>,
    r: Color,
    seed: u64,
}

pub fn random_painter(seed: u64, r: Color) -> RandomPainter {
    RandomPainter { rng: RefCell::new(ChaCha8Rng::seed_from_u64(seed)), r, seed }
}

impl PainterStrategy for RandomPainter {
    fn decide(&self, _: &ColoredGraph, _: Vertex, _: Vertex) -> Color {
        self.rng.borrow_mut().gen_range(1..=self.r)
    }

    fn name(&self) -> String {
        format!("random:{}", self.seed)
    }
}

/// Rooted code of `v`'s component, or `None` if it is not a tree.
pub fn component_code(board: &ColoredGraph, v: Vertex) -> Option<Code> {
    let comp = board.component_of(v);
    let mut local = std::collections::HashMap::with_capacity(comp.len());
    for (i, &w) in comp.iter().enumerate() {
        local.insert(w, i as u32);
    }
    let adj: Adj = comp.iter().map(|&w| board.neighbors(w).iter().map(|&(x, c)| (local[&x], c)).collect()).collect();
    let edges: usize = adj.iter().map(Vec::len).sum::<usize>() / 2;
    if edges + 1 != comp.len() {
        return None;
    }
    Some(encode_rooted(&adj, local[&v], false).0)
}

/// A Painter table from the solver, played on a real board: the components of the
/// two endpoints are looked up as rooted trees. Off the table (a cycle, a component
/// beyond the table's cap, or an unlisted pair) the fallback decides.
pub struct TablePainter<F> {
    table: PainterTable,
    fallback: F,
}

pub fn table_painter<F: PainterStrategy>(table: PainterTable, fallback: F) -> TablePainter<F> {
    TablePainter { table, fallback }
}

impl<F: PainterStrategy> PainterStrategy for TablePainter<F> {
    fn decide(&self, board: &ColoredGraph, u: Vertex, v: Vertex) -> Color {
        let small = |w: Vertex| board.component_of(w).len() <= self.table.cap as usize;
        if small(u) && small(v) {
            if let (Some(a), Some(b)) = (component_code(board, u), component_code(board, v)) {
                let same = board.component_of(u).contains(&v);
                if !same {
                    if let Some(c) = self.table.lookup(&a, &b) {
                        return c;
                    }
                }
            }
        }
        self.fallback.decide(board, u, v)
    }

    fn name(&self) -> String {
        format!("table(cap {})", self.table.cap)
    }
}

/// Painter from a name: `greedy`, `smart-greedy`, `heavy-edge:l`, `p815:l`, `bowtie`,
/// `const:c`, `random:seed`.
pub fn painter_by_name(name: &str, config: &GameConfig) -> Result<Box<dyn PainterStrategy>> {
    let bad = || Error::Parse(format!("unknown painter {name:?}"));
    let (kind, arg) = match name.split_once(':') {
        Some((k, a)) => (k, Some(a)),
        None => (name, None),
    };
    let num = |a: Option<&str>| -> Result<u64> { a.ok_or_else(bad)?.trim().parse().map_err(|_| bad()) };
    Ok(match kind {
        "greedy" => Box::new(greedy_painter(&config.target_graphs())),
        "smart-greedy" => Box::new(smart_greedy_painter(config.target(1), config.r() as usize)?),
        "heavy-edge" => Box::new(heavy_edge_painter(num(arg)? as usize)?),
        "p815" => Box::new(path_815_painter(num(arg)? as usize)?),
        "bowtie" => Box::new(bowtie_painter()),
        "const" => {
            let c = num(arg)?;
            if c == 0 || c > config.r() as u64 {
                return Err(Error::ColorRange { color: c as u32, r: config.r() as u32 });
            }
            Box::new(const_painter(c as Color))
        }
        "random" => Box::new(random_painter(num(arg)?, config.r())),
        _ => return Err(bad()),
    })
}

/// The built-in deterministic painters that make sense for a configuration.
pub fn builtin_painters(config: &GameConfig) -> Vec<Box<dyn PainterStrategy>> {
    let r = config.r();
    let mut out: Vec<Box<dyn PainterStrategy>> = vec![Box::new(greedy_painter(&config.target_graphs()))];
    if let Ok(p) = smart_greedy_painter(config.target(1), r as usize) {
        out.push(Box::new(p));
    }
    for c in 1..=r {
        out.push(Box::new(const_painter(c)));
    }
    if r == 2 {
        let t = config.target(1);
        let l = t.edge_count();
        if t.is_forest() && l >= 2 {
            out.push(Box::new(heavy_edge_painter(l).unwrap()));
        }
        if l >= 5 && t.is_forest() {
            out.push(Box::new(path_815_painter(l).unwrap()));
        }
        out.push(Box::new(bowtie_painter()));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn board(n: usize, edges: &[(Vertex, Vertex, Color)]) -> ColoredGraph {
        let mut b = ColoredGraph::new(n);
        for &(u, v, c) in edges {
            b.add_edge(u, v, c).unwrap();
        }
        b
    }

    #[test]
    fn greedy_examples() {
        let g = greedy_painter(&[Graph::path(2), Graph::path(2)]);
        assert_eq!(g.decide(&ColoredGraph::new(2), 0, 1), 2);
        assert_eq!(g.decide(&board(3, &[(0, 1, 2)]), 1, 2), 1);
        assert_eq!(g.decide(&board(4, &[(0, 1, 2), (0, 2, 1)]), 0, 3), 1);
    }

    #[test]
    fn smart_greedy_examples() {
        for l in 3..=6 {
            let hs = smart_greedy_graphs(&Graph::cycle(l), 2).unwrap();
            assert!(hs.iter().all(|h| h.edge_count() == l));
        }
        for l in 3..=5 {
            let hs = smart_greedy_graphs(&Graph::clique(l), 2).unwrap();
            assert!(hs.iter().all(|h| h.edge_count() == l * (l - 1) / 2));
        }
        let p = smart_greedy_painter(&Graph::bowtie(), 2).unwrap();
        assert_eq!(p.decide(&ColoredGraph::new(2), 0, 1), 2);
    }

    #[test]
    fn heavy_edge_rule() {
        let h = heavy_edge_painter(3).unwrap();
        assert_eq!(h.decide(&ColoredGraph::new(2), 0, 1), RED);
        assert_eq!(h.decide(&board(3, &[(0, 1, RED)]), 1, 2), BLUE);
        let b = board(5, &[(0, 1, BLUE), (1, 2, BLUE), (3, 2, RED)]);
        // touches red at 3, no blue path through it
        assert_eq!(h.decide(&b, 3, 4), BLUE);
        // touches red at 2, but blue would close 0-1-2-4
        assert_eq!(h.decide(&b, 2, 4), RED);
        // touches no red edge
        assert_eq!(h.decide(&b, 0, 4), RED);
    }

    #[test]
    fn path_815_rule() {
        let p = path_815_painter(5).unwrap();
        assert_eq!(p.decide(&ColoredGraph::new(2), 0, 1), BLUE);
        assert_eq!(p.decide(&board(3, &[(0, 1, BLUE)]), 1, 2), RED);
        // red would close the red path 4-5-6-7-8, so (a) fails; blue closes 0-1-2-3-4-5
        let reds = [(5, 6, RED), (6, 7, RED), (7, 8, RED)];
        let mut e: Vec<_> = vec![(0, 1, BLUE), (1, 2, BLUE), (2, 3, BLUE), (3, 4, BLUE)];
        e.extend(reds);
        assert_eq!(p.decide(&board(9, &e), 4, 5), RED);
        // same without the first blue edge: neither condition holds
        assert_eq!(p.decide(&board(9, &e[1..]), 4, 5), BLUE);
    }

    #[test]
    fn bowtie_rule() {
        let p = bowtie_painter();
        assert_eq!(p.decide(&ColoredGraph::new(2), 0, 1), RED);
        assert_eq!(p.decide(&board(3, &[(0, 1, RED), (1, 2, RED)]), 0, 2), BLUE);
        // red (1,2) closes 1-2-5; blue (1,2) would close 0-1-2, bridged by 0-3 to the blue 3-4-6
        let mut e = vec![(1, 5, RED), (2, 5, RED), (3, 4, BLUE), (4, 6, BLUE), (3, 6, BLUE), (0, 3, BLUE), (0, 1, BLUE)];
        assert_eq!(p.decide(&board(7, &e), 1, 2), BLUE);
        e.push((0, 2, BLUE));
        assert_eq!(p.decide(&board(7, &e), 1, 2), RED);
    }

    #[test]
    fn names() {
        let cfg = GameConfig::symmetric(crate::game::Target::named("path:3").unwrap(), 2, crate::game::Restriction::TreeSize(3)).unwrap();
        for n in ["greedy", "smart-greedy", "heavy-edge:3", "p815:5", "bowtie", "const:2", "random:7"] {
            assert!(painter_by_name(n, &cfg).is_ok(), "{n}");
        }
        assert!(painter_by_name("const:3", &cfg).is_err());
        assert!(painter_by_name("nope", &cfg).is_err());
        let r = random_painter(3, 2);
        let a: Vec<Color> = (0..20).map(|_| r.decide(&ColoredGraph::new(2), 0, 1)).collect();
        let r2 = random_painter(3, 2);
        let b: Vec<Color> = (0..20).map(|_| r2.decide(&ColoredGraph::new(2), 0, 1)).collect();
        assert_eq!(a, b);
    }
}
