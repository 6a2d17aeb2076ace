//! Staged strategies for density games.
//!
//! A gadget first runs a join program that forces a monochromatic copy of a
//! phase tree `P` on a forest, then continues with a small decision tree
//! (template) on the vertices of that copy, chosen by the copy's color. Template
//! vertices `0..|P|` are the copy's vertices; larger ids are fresh vertices. A
//! template leaf either wins or exits with a monochromatic exit pattern whose
//! first vertex is its port. With a finale, gadgets are repeated until `copies`
//! exits share a color, and a last template joins their ports.
//!
//! Only template edges are checked for density, on the core board (the colored
//! copy of `P` plus template edges). This is exact: the rest of the real board is
//! forest hanging off the core at single vertices, and a densest subgraph of a
//! graph with density at least 1 never uses such pendant trees. Finale boards are
//! checked for every combination of exit types at once by splitting a subgraph into
//! its parts inside each gadget, which only meet at the ports.

use super::program::{self, ProgramCertificate, Runner};
use super::{check_component, FailReason, GameConfig, Outcome, PainterStrategy, Restriction, Table, Transcript, Verdict, VerifyStats};
use crate::density::{max_closure, max_density};
use crate::embed::{is_mono_witness, Pattern};
use crate::error::{Error, Result};
use crate::graph::{Color, ColoredGraph, Graph, Vertex};
use crate::rational::Rational;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum TemplateNode {
    Move {
        edge: [Vertex; 2],
        #[serde(with = "super::color_keys")]
        children: BTreeMap<Color, TemplateNode>,
    },
    Leaf { win_color: Color, witness_vertices: Vec<Vertex> },
    Exit { exit_color: Color, exit_vertices: Vec<Vertex> },
}

impl TemplateNode {
    pub fn branch(u: Vertex, v: Vertex, children: Vec<TemplateNode>) -> TemplateNode {
        let children = children.into_iter().enumerate().map(|(i, n)| (i as Color + 1, n)).collect();
        TemplateNode::Move { edge: [u, v], children }
    }

    fn max_vertex(&self) -> Vertex {
        match self {
            TemplateNode::Leaf { witness_vertices: w, .. } | TemplateNode::Exit { exit_vertices: w, .. } => {
                w.iter().copied().max().unwrap_or(0)
            }
            TemplateNode::Move { edge, children } => {
                children.values().map(TemplateNode::max_vertex).fold(edge[0].max(edge[1]), Vertex::max)
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Gadget {
    /// Forest phase; its goal is the phase tree `P`.
    pub forcing: ProgramCertificate,
    /// `templates[c-1]` continues after a color-`c` copy of `P`.
    pub templates: Vec<TemplateNode>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Finale {
    /// Exits of one color collected before the finale starts.
    pub copies: u32,
    /// Shape of every exit; exit vertex 0 is the port.
    pub exit_pattern: Graph,
    /// `templates[x-1]` for exits of color `x`. Vertex `i * p + j` is exit vertex `j` of
    /// the `i`-th collected exit, `p` being the exit pattern's vertex count. Edges run
    /// between ports only.
    pub templates: Vec<TemplateNode>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StagedCertificate {
    pub r: Color,
    pub gadget: Gadget,
    pub finale: Option<Finale>,
}

impl StagedCertificate {
    pub fn phase_tree(&self) -> &Graph {
        &self.gadget.forcing.goal
    }

    /// Gadgets a playout may need before some color has `copies` exits.
    pub fn max_gadgets(&self) -> u32 {
        match &self.finale {
            None => 1,
            Some(f) => self.r as u32 * (f.copies - 1) + 1,
        }
    }
}

/// A reachable exit: the uncolored core board and the port.
#[derive(Clone, Debug)]
struct ExitType {
    core: Graph,
    port: Vertex,
}

struct Walk<'a> {
    config: &'a GameConfig,
    cap: Rational,
    board: ColoredGraph,
    path: Vec<Color>,
    nodes: u64,
    leaves: u64,
    max_density: Rational,
    exits: Vec<Vec<ExitType>>,
    exit_pattern: Option<Pattern>,
}

impl Walk<'_> {
    fn structure(&self, reason: String) -> Error {
        Error::Structure { path: self.path.clone(), reason }
    }

    fn fail(&self, reason: FailReason) -> Verdict {
        Verdict::Fail { path: self.path.clone(), depth: self.board.edge_count(), reason }
    }

    fn gadget(&mut self, node: &TemplateNode) -> Result<Option<Verdict>> {
        self.nodes += 1;
        match node {
            TemplateNode::Leaf { win_color: c, witness_vertices: w } => {
                self.leaves += 1;
                if *c == 0 || *c > self.config.r() {
                    return Err(self.structure(format!("leaf color {c} out of range")));
                }
                if is_mono_witness(&self.board, self.config.pattern(*c), *c, w) {
                    Ok(None)
                } else {
                    Ok(Some(self.fail(FailReason::NonWinningLeaf(format!("vertices {w:?} are not a color-{c} target")))))
                }
            }
            TemplateNode::Exit { exit_color: x, exit_vertices: w } => {
                let pat = self.exit_pattern.as_ref().ok_or_else(|| self.structure("exit without a finale".into()))?;
                if *x == 0 || *x > self.config.r() {
                    return Err(self.structure(format!("exit color {x} out of range")));
                }
                if !is_mono_witness(&self.board, pat, *x, w) {
                    return Ok(Some(self.fail(FailReason::NonWinningLeaf(format!("vertices {w:?} are not a color-{x} exit")))));
                }
                let core = self.board.underlying();
                self.exits[*x as usize - 1].push(ExitType { core, port: w[0] });
                Ok(None)
            }
            TemplateNode::Move { edge: [u, v], children } => {
                let (u, v) = (*u, *v);
                self.check_move(u, v, children)?;
                for (&c, child) in children {
                    self.board.add_edge(u, v, c)?;
                    self.path.push(c);
                    let res = match check_component(&self.board, u, Restriction::Density(self.cap)) {
                        Err(why) => Some(self.fail(FailReason::IllegalBoard(why))),
                        Ok(d) => {
                            self.max_density = self.max_density.max(d);
                            self.gadget(child)?
                        }
                    };
                    self.path.pop();
                    self.board.pop_edge();
                    if res.is_some() {
                        return Ok(res);
                    }
                }
                Ok(None)
            }
        }
    }

    fn check_move(&self, u: Vertex, v: Vertex, children: &BTreeMap<Color, TemplateNode>) -> Result<()> {
        if u == v || self.board.has_edge(u, v) {
            return Err(self.structure(format!("edge ({u},{v}) is a loop or repeated")));
        }
        let r = self.config.r();
        if children.len() != r as usize || !(1..=r).all(|c| children.contains_key(&c)) {
            return Err(self.structure(format!("node ({u},{v}) needs one child per color")));
        }
        Ok(())
    }
}

/// Per-gadget optimum of `q e(S) - p |S|` with the port inside and outside `S`.
#[derive(Clone, Copy, Debug)]
struct Part {
    gain: i64,
    edges: i64,
    vertices: i64,
}

fn best_parts(types: &[ExitType], p: i64, q: i64) -> (Part, Part) {
    let pick = |forced_in: bool| {
        types
            .iter()
            .map(|t| {
                let c = if forced_in {
                    max_closure(&t.core, p, q, Some(t.port), None)
                } else {
                    max_closure(&t.core, p, q, None, Some(t.port))
                };
                Part { gain: c.gain, edges: c.edges as i64, vertices: c.vertices.len() as i64 }
            })
            .max_by_key(|x| x.gain)
            .unwrap()
    };
    (pick(true), pick(false))
}

/// Finds a subgraph denser than `p/q` on some finale board: ports joined by `edges`
/// (pairs of exit indices), each exit of any recorded type. Returns (edges, vertices).
fn denser_finale(types: &[ExitType], copies: usize, edges: &[(usize, usize)], p: i64, q: i64) -> Option<(i64, i64)> {
    let (inside, outside) = best_parts(types, p, q);
    let mut best: Option<(i64, i64, i64)> = None;
    for mask in 0u64..1 << copies {
        let k = mask.count_ones() as i64;
        let ef = edges.iter().filter(|&&(i, j)| mask >> i & 1 == 1 && mask >> j & 1 == 1).count() as i64;
        let gain = k * inside.gain + (copies as i64 - k) * outside.gain + q * ef;
        if gain > 0 && best.map_or(true, |b| gain > b.0) {
            let e = k * inside.edges + (copies as i64 - k) * outside.edges + ef;
            let v = k * inside.vertices + (copies as i64 - k) * outside.vertices;
            best = Some((gain, e, v));
        }
    }
    best.map(|(_, e, v)| (e, v))
}

/// Exact maximum density over all finale boards with the given port edges.
fn finale_density(types: &[ExitType], copies: usize, edges: &[(usize, usize)]) -> Rational {
    let mut lambda = types.iter().map(|t| max_density(&t.core)).max().unwrap();
    while let Some((e, v)) = denser_finale(types, copies, edges, *lambda.numer(), *lambda.denom()) {
        lambda = Rational::new(e, v);
    }
    lambda
}

struct FinaleWalk<'w, 'a> {
    walk: &'w mut Walk<'a>,
    types: Vec<ExitType>,
    copies: usize,
    p: usize,
    ports: Vec<(usize, usize)>,
}

impl FinaleWalk<'_, '_> {
    fn node(&mut self, node: &TemplateNode) -> Result<Option<Verdict>> {
        self.walk.nodes += 1;
        match node {
            TemplateNode::Exit { .. } => Err(self.walk.structure("exit inside the finale".into())),
            TemplateNode::Leaf { .. } => self.walk.gadget(node),
            TemplateNode::Move { edge: [u, v], children } => {
                let (u, v) = (*u, *v);
                self.walk.check_move(u, v, children)?;
                let (p, n) = (self.p as Vertex, self.copies as Vertex);
                if u % p != 0 || v % p != 0 || u / p >= n || v / p >= n {
                    return Err(self.walk.structure(format!("finale edge ({u},{v}) must join two ports")));
                }
                self.ports.push(((u / p) as usize, (v / p) as usize));
                let d = finale_density(&self.types, self.copies, &self.ports);
                self.walk.max_density = self.walk.max_density.max(d);
                for (&c, child) in children {
                    self.walk.board.add_edge(u, v, c)?;
                    self.walk.path.push(c);
                    let res = if d > self.walk.cap {
                        let why = format!("some finale board has maximum density {}", crate::rational::format_rational(&d));
                        Some(self.walk.fail(FailReason::IllegalBoard(why)))
                    } else {
                        self.node(child)?
                    };
                    self.walk.path.pop();
                    self.walk.board.pop_edge();
                    if res.is_some() {
                        self.ports.pop();
                        return Ok(res);
                    }
                }
                self.ports.pop();
                Ok(None)
            }
        }
    }
}

pub fn verify(cert: &StagedCertificate, config: &GameConfig) -> Result<Verdict> {
    let cap = match config.restriction() {
        Restriction::Density(d) => d,
        Restriction::TreeSize(_) => return Err(Error::Domain("staged certificates are for density games".into())),
    };
    let r = config.r();
    if cert.gadget.templates.len() != r as usize {
        return Err(Error::Structure { path: vec![], reason: format!("need {r} gadget templates") });
    }
    let (pv, pstats) = program::verify(&cert.gadget.forcing, config.restriction())?;
    if !pv.is_win() {
        return Ok(pv);
    }
    let tree = cert.phase_tree().clone();
    let mut walk = Walk {
        config,
        cap,
        board: ColoredGraph::new(0),
        path: Vec::new(),
        nodes: pstats.nodes,
        leaves: pstats.goals,
        max_density: Rational::new(pstats.max_tree_edges as i64, pstats.max_tree_edges as i64 + 1),
        exits: vec![Vec::new(); r as usize],
        exit_pattern: cert.finale.as_ref().map(|f| Pattern::new(&f.exit_pattern)),
    };
    for c in 1..=r {
        let t = &cert.gadget.templates[c as usize - 1];
        let mut b = ColoredGraph::new(tree.vertex_count().max(t.max_vertex() as usize + 1));
        for &(u, v) in tree.edges() {
            b.add_edge(u, v, c)?;
        }
        walk.board = b;
        walk.path = vec![c];
        if let Some(f) = walk.gadget(t)? {
            return Ok(f);
        }
    }
    if let Some(fin) = &cert.finale {
        if fin.templates.len() != r as usize || fin.copies == 0 || fin.copies > 16 {
            return Err(Error::Structure { path: vec![], reason: "bad finale".into() });
        }
        let p = fin.exit_pattern.vertex_count();
        let copies = fin.copies as usize;
        let exits = std::mem::take(&mut walk.exits);
        for x in 1..=r {
            let types = exits[x as usize - 1].clone();
            if types.is_empty() {
                continue;
            }
            let t = &fin.templates[x as usize - 1];
            let mut b = ColoredGraph::new((copies * p).max(t.max_vertex() as usize + 1));
            for i in 0..copies {
                for &(u, v) in fin.exit_pattern.edges() {
                    b.add_edge((i * p) as Vertex + u, (i * p) as Vertex + v, x)?;
                }
            }
            walk.board = b;
            walk.path = vec![0, x];
            let mut fw = FinaleWalk { walk: &mut walk, types, copies, p, ports: Vec::new() };
            if let Some(f) = fw.node(t)? {
                return Ok(f);
            }
        }
    }
    Ok(Verdict::Win(VerifyStats { nodes: walk.nodes, leaves: walk.leaves, max_depth: 0, max_density: walk.max_density }))
}

pub fn play(cert: &StagedCertificate, painter: &dyn PainterStrategy, config: &GameConfig, edge_budget: usize) -> Result<Transcript> {
    let runner = Runner::new(&cert.gadget.forcing)?;
    let mut table = Table::new(painter, cert.r, edge_budget);
    let mut exits: Vec<Vec<Vec<Vertex>>> = vec![Vec::new(); cert.r as usize];
    for _ in 0..cert.max_gadgets() {
        let reached = runner.run(&mut table)?;
        let t = &cert.gadget.templates[reached.color as usize - 1];
        let fixed = reached.goal_vertices.clone();
        match walk_template(t, &mut table, |i| fixed.get(i).copied())? {
            End::Win(color, vertices) => return Ok(table.finish(Outcome::Mono { color, vertices })),
            End::Exit(x, vs) => {
                let fin = cert.finale.as_ref().ok_or_else(|| Error::Strategy("exit without a finale".into()))?;
                let list = &mut exits[x as usize - 1];
                list.push(vs);
                if list.len() == fin.copies as usize {
                    let p = fin.exit_pattern.vertex_count();
                    let chosen = list.clone();
                    let t = &fin.templates[x as usize - 1];
                    return match walk_template(t, &mut table, |i| chosen.get(i / p).map(|e| e[i % p]))? {
                        End::Win(color, vertices) => Ok(table.finish(Outcome::Mono { color, vertices })),
                        End::Exit(..) => Err(Error::Strategy("exit inside the finale".into())),
                    };
                }
            }
        }
    }
    let _ = config;
    Err(Error::Strategy("no color collected enough exits".into()))
}

enum End {
    Win(Color, Vec<Vertex>),
    Exit(Color, Vec<Vertex>),
}

/// Walks a template; `fixed(i)` gives the board vertex of local id `i` when it is
/// predetermined, other ids get fresh vertices on first use.
fn walk_template(node: &TemplateNode, table: &mut Table, fixed: impl Fn(usize) -> Option<Vertex>) -> Result<End> {
    let mut local: BTreeMap<Vertex, Vertex> = BTreeMap::new();
    let mut map = |i: Vertex, table: &mut Table| -> Vertex {
        if let Some(v) = fixed(i as usize) {
            return v;
        }
        *local.entry(i).or_insert_with(|| table.fresh())
    };
    let mut node = node;
    loop {
        match node {
            TemplateNode::Leaf { win_color, witness_vertices } => {
                let vs = witness_vertices.iter().map(|&i| map(i, table)).collect();
                return Ok(End::Win(*win_color, vs));
            }
            TemplateNode::Exit { exit_color, exit_vertices } => {
                let vs = exit_vertices.iter().map(|&i| map(i, table)).collect();
                return Ok(End::Exit(*exit_color, vs));
            }
            TemplateNode::Move { edge: [u, v], children } => {
                let (a, b) = (map(*u, table), map(*v, table));
                let c = table.present(a, b)?;
                node = &children[&c];
            }
        }
    }
}
