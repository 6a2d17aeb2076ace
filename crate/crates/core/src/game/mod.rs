//! Game configurations, restriction checks, Builder certificates and playouts.
//!
//! Three certificate kinds share one file format (see [`file`]):
//! explicit decision trees over board vertices, set-semantics join strategies
//! for tree-size games ([`family`]), and staged strategies for density games
//! whose forest phase is a join program ([`program`], [`staged`]).

pub mod explicit;
pub mod family;
pub mod file;
pub mod program;
pub mod staged;

use crate::density::max_density;
use crate::embed::Pattern;
use crate::error::{Error, Result};
use crate::graph::{Color, ColoredGraph, Graph, Vertex, DEFAULT_VERTEX_CAP};
use crate::rational::{format_rational, Rational};
use std::fmt;

pub use file::BuilderCertificate;

/// Serde for color-keyed maps inside untagged enums, which buffer map keys as
/// strings and cannot turn them back into integers on their own.
pub(crate) mod color_keys {
    use crate::graph::Color;
    use serde::de::Error as _;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};
    use std::collections::BTreeMap;

    pub fn serialize<T: Serialize, S: Serializer>(m: &BTreeMap<Color, T>, s: S) -> Result<S::Ok, S::Error> {
        m.serialize(s)
    }

    pub fn deserialize<'de, T: Deserialize<'de>, D: Deserializer<'de>>(d: D) -> Result<BTreeMap<Color, T>, D::Error> {
        let raw = BTreeMap::<String, T>::deserialize(d)?;
        raw.into_iter()
            .map(|(k, v)| k.parse::<Color>().map(|c| (c, v)).map_err(|_| D::Error::custom(format!("bad color key {k:?}"))))
            .collect()
    }
}

/// The board rule Builder must respect at every moment.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Restriction {
    /// `m(B) <= d`.
    Density(Rational),
    /// Forest with every component of at most `k` edges.
    TreeSize(u32),
}

impl fmt::Display for Restriction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Restriction::Density(d) => write!(f, "density {}", format_rational(d)),
            Restriction::TreeSize(k) => write!(f, "treesize {k}"),
        }
    }
}

/// One target per color. `name` is kept when the target came from a named spec so
/// files can store the short form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Target {
    pub name: Option<String>,
    pub graph: Graph,
}

impl Target {
    pub fn named(spec: &str) -> Result<Target> {
        Ok(Target { name: Some(spec.trim().to_string()), graph: Graph::named(spec)? })
    }

    pub fn from_graph(graph: Graph) -> Target {
        Target { name: None, graph }
    }
}

#[derive(Clone, Debug)]
pub struct GameConfig {
    targets: Vec<Target>,
    patterns: Vec<Pattern>,
    restriction: Restriction,
}

impl GameConfig {
    pub fn new(targets: Vec<Target>, restriction: Restriction) -> Result<GameConfig> {
        if targets.len() < 2 {
            return Err(Error::Domain("a game needs at least two colors".into()));
        }
        if targets.len() > u8::MAX as usize {
            return Err(Error::Domain("too many colors".into()));
        }
        for t in &targets {
            if t.graph.edge_count() == 0 {
                return Err(Error::Domain("every target needs at least one edge".into()));
            }
            if t.graph.vertex_count() > DEFAULT_VERTEX_CAP {
                return Err(Error::Size(format!("targets are limited to {DEFAULT_VERTEX_CAP} vertices")));
            }
            if matches!(restriction, Restriction::TreeSize(_)) && !t.graph.is_forest() {
                return Err(Error::Domain("tree-size games need forest targets".into()));
            }
        }
        if let Restriction::Density(d) = restriction {
            if d <= Rational::from_integer(0) {
                return Err(Error::Domain("density cap must be positive".into()));
            }
        }
        let patterns = targets.iter().map(|t| Pattern::new(&t.graph)).collect();
        Ok(GameConfig { targets, patterns, restriction })
    }

    /// The same target in each of `r` colors.
    pub fn symmetric(target: Target, r: usize, restriction: Restriction) -> Result<GameConfig> {
        GameConfig::new(vec![target; r], restriction)
    }

    pub fn r(&self) -> Color {
        self.targets.len() as Color
    }

    pub fn targets(&self) -> &[Target] {
        &self.targets
    }

    pub fn target_graphs(&self) -> Vec<Graph> {
        self.targets.iter().map(|t| t.graph.clone()).collect()
    }

    /// Target of color `c` (1-based).
    pub fn target(&self, c: Color) -> &Graph {
        &self.targets[c as usize - 1].graph
    }

    pub fn pattern(&self, c: Color) -> &Pattern {
        &self.patterns[c as usize - 1]
    }

    pub fn restriction(&self) -> Restriction {
        self.restriction
    }

    pub fn with_restriction(&self, restriction: Restriction) -> Result<GameConfig> {
        GameConfig::new(self.targets.clone(), restriction)
    }

    pub fn all_forests(&self) -> bool {
        self.targets.iter().all(|t| t.graph.is_forest())
    }
}

pub fn restriction_ok(board: &Graph, restriction: Restriction) -> bool {
    match restriction {
        Restriction::Density(d) => max_density(board) <= d,
        Restriction::TreeSize(k) => {
            board.is_forest()
                && board.components().iter().all(|c| c.len() <= k as usize + 1)
        }
    }
}

/// Checks the component of `u` right after an edge at `u` was inserted. Returns that
/// component's maximum density, or a description of the violation.
pub(crate) fn check_component(
    board: &ColoredGraph,
    u: Vertex,
    restriction: Restriction,
) -> std::result::Result<Rational, String> {
    let comp = board.component_of(u);
    let edges: usize = comp.iter().map(|&x| board.degree(x)).sum::<usize>() / 2;
    match restriction {
        Restriction::TreeSize(k) => {
            if edges >= comp.len() {
                Err("the board contains a cycle".into())
            } else if edges > k as usize {
                Err(format!("a component has {edges} edges, more than {k}"))
            } else {
                Ok(Rational::new(edges as i64, comp.len() as i64))
            }
        }
        Restriction::Density(d) => {
            let m = max_density(&board.induced_uncolored(&comp));
            if m > d {
                Err(format!("maximum density {} exceeds {}", format_rational(&m), format_rational(&d)))
            } else {
                Ok(m)
            }
        }
    }
}

/// Painter: a deterministic rule coloring each presented edge.
pub trait PainterStrategy {
    /// Color for the new edge `(u, v)`; the edge is not yet on the board.
    fn decide(&self, board: &ColoredGraph, u: Vertex, v: Vertex) -> Color;

    fn name(&self) -> String {
        "painter".into()
    }
}

impl<P: PainterStrategy + ?Sized> PainterStrategy for &P {
    fn decide(&self, board: &ColoredGraph, u: Vertex, v: Vertex) -> Color {
        (**self).decide(board, u, v)
    }

    fn name(&self) -> String {
        (**self).name()
    }
}

impl<P: PainterStrategy + ?Sized> PainterStrategy for Box<P> {
    fn decide(&self, board: &ColoredGraph, u: Vertex, v: Vertex) -> Color {
        (**self).decide(board, u, v)
    }

    fn name(&self) -> String {
        (**self).name()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Outcome {
    Mono { color: Color, vertices: Vec<Vertex> },
    Survived,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Move {
    pub u: Vertex,
    pub v: Vertex,
    pub color: Color,
}

#[derive(Clone, Debug)]
pub struct Transcript {
    pub moves: Vec<Move>,
    pub board: ColoredGraph,
    pub outcome: Outcome,
}

impl Transcript {
    /// Rebuilds the board from the move list.
    pub fn replay(&self) -> Result<ColoredGraph> {
        let mut b = ColoredGraph::new(self.board.vertex_count());
        for m in &self.moves {
            b.add_edge(m.u, m.v, m.color)?;
        }
        Ok(b)
    }

    pub fn is_win(&self) -> bool {
        matches!(self.outcome, Outcome::Mono { .. })
    }
}

/// Presents edges to a painter, checking its colors and recording the moves.
pub(crate) struct Table<'a> {
    pub painter: &'a dyn PainterStrategy,
    pub r: Color,
    pub board: ColoredGraph,
    pub moves: Vec<Move>,
    pub edge_budget: usize,
}

impl<'a> Table<'a> {
    pub fn new(painter: &'a dyn PainterStrategy, r: Color, edge_budget: usize) -> Self {
        Table { painter, r, board: ColoredGraph::new(0), moves: Vec::new(), edge_budget }
    }

    pub fn fresh(&mut self) -> Vertex {
        self.board.add_vertex()
    }

    pub fn present(&mut self, u: Vertex, v: Vertex) -> Result<Color> {
        if self.moves.len() >= self.edge_budget {
            return Err(Error::Size(format!("playout exceeded {} edges", self.edge_budget)));
        }
        let c = self.painter.decide(&self.board, u, v);
        if c == 0 || c > self.r {
            return Err(Error::Strategy(format!(
                "painter {} returned color {c}, expected 1..={}",
                self.painter.name(),
                self.r
            )));
        }
        self.board.add_edge(u, v, c)?;
        self.moves.push(Move { u, v, color: c });
        Ok(c)
    }

    pub fn finish(self, outcome: Outcome) -> Transcript {
        Transcript { moves: self.moves, board: self.board, outcome }
    }
}

/// Default cap on edges presented during one playout.
pub const PLAYOUT_EDGE_BUDGET: usize = 20_000_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FailReason {
    IllegalBoard(String),
    NonWinningLeaf(String),
}

impl fmt::Display for FailReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FailReason::IllegalBoard(s) => write!(f, "illegal board: {s}"),
            FailReason::NonWinningLeaf(s) => write!(f, "non-winning leaf: {s}"),
        }
    }
}

/// Summary of a successful verification.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerifyStats {
    /// Decision nodes checked (shared nodes counted once).
    pub nodes: u64,
    pub leaves: u64,
    /// Largest number of edges on a root-to-leaf path, when it is known.
    pub max_depth: usize,
    /// Maximum of `m(B)` over every board the certificate can produce.
    pub max_density: Rational,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    Win(VerifyStats),
    /// `path` lists Painter's colors from the root to the offending node; `depth` is the
    /// number of edges on the board there.
    Fail { path: Vec<Color>, depth: usize, reason: FailReason },
}

impl Verdict {
    pub fn is_win(&self) -> bool {
        matches!(self, Verdict::Win(_))
    }

    pub fn stats(&self) -> Option<&VerifyStats> {
        match self {
            Verdict::Win(s) => Some(s),
            Verdict::Fail { .. } => None,
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::Win(s) => write!(
                f,
                "WIN (nodes {}, leaves {}, max density {})",
                s.nodes,
                s.leaves,
                format_rational(&s.max_density)
            ),
            Verdict::Fail { path, depth, reason } => {
                write!(f, "FAIL at depth {depth}, path {path:?}: {reason}")
            }
        }
    }
}

/// Verifies any certificate kind against a configuration.
pub fn verify_certificate(cert: &BuilderCertificate, config: &GameConfig) -> Result<Verdict> {
    if cert.r() != config.r() {
        return Err(Error::Structure {
            path: Vec::new(),
            reason: format!("certificate has r = {}, configuration has r = {}", cert.r(), config.r()),
        });
    }
    match cert {
        BuilderCertificate::Explicit(c) => explicit::verify(c, config),
        BuilderCertificate::Family(c) => family::verify(c, config),
        BuilderCertificate::Staged(c) => staged::verify(c, config),
    }
}

/// Plays a certificate against a painter. The outcome's witness is checked on the
/// final board; a certificate that fails to produce one is reported as an error.
pub fn play(cert: &BuilderCertificate, painter: &dyn PainterStrategy, config: &GameConfig) -> Result<Transcript> {
    let t = match cert {
        BuilderCertificate::Explicit(c) => explicit::play(c, painter, config)?,
        BuilderCertificate::Family(c) => family::play(c, painter, config, PLAYOUT_EDGE_BUDGET)?,
        BuilderCertificate::Staged(c) => staged::play(c, painter, config, PLAYOUT_EDGE_BUDGET)?,
    };
    if let Outcome::Mono { color, vertices } = &t.outcome {
        if !crate::embed::is_mono_witness(&t.board, config.pattern(*color), *color, vertices) {
            return Err(Error::Strategy("playout witness is not a monochromatic copy".into()));
        }
    }
    Ok(t)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    #[test]
    fn restriction_examples() {
        assert!(restriction_ok(&Graph::cycle(6), Restriction::Density(rat(6, 5))));
        for k in 0..8 {
            assert!(!restriction_ok(&Graph::cycle(3), Restriction::TreeSize(k)));
        }
        assert!(restriction_ok(&Graph::star(3), Restriction::TreeSize(3)));
        assert!(!restriction_ok(&Graph::star(3), Restriction::TreeSize(2)));
    }

    #[test]
    fn config_validation() {
        let p = Target::named("path:2").unwrap();
        assert!(GameConfig::symmetric(p.clone(), 1, Restriction::TreeSize(3)).is_err());
        assert!(GameConfig::symmetric(Target::named("cycle:3").unwrap(), 2, Restriction::TreeSize(3)).is_err());
        let c = GameConfig::symmetric(p, 3, Restriction::TreeSize(3)).unwrap();
        assert_eq!(c.r(), 3);
        assert_eq!(c.target(2).edge_count(), 2);
    }
}
