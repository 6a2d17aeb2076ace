//! Join programs: forest-phase Builder strategies written as subroutines.
//!
//! Each procedure is a small decision graph. A `Join` node joins the roots of
//! two trees the procedure owns and continues by Painter's color; the joined
//! tree may be pruned to a subtree (extra forest edges on the real board never
//! hurt Builder). A `Call` node runs another procedure, which either yields one
//! of its trees or reaches the goal; the caller branches on the yielded tree.
//! Every tree a node consumes must have been produced earlier on the same path
//! of the same procedure, counted with multiplicity, so a playout never needs
//! anything it does not hold and always terminates.

use super::family::{check_tree_table, colored_of_adj, joined_adj, TreeRef};
use super::{FailReason, PainterStrategy, Restriction, Table, Verdict, VerifyStats};
use crate::embed::{find_mono_copy, Pattern};
use crate::error::{Error, Result};
use crate::graph::{Color, ColoredGraph, Graph, Vertex};
use crate::rational::Rational;
use crate::tree::{decode, unrooted_encode, unrooted_of_rooted, Adj, Code};
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, BTreeSet, HashMap};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Branch {
    /// Tree obtained after pruning.
    pub result: u32,
    /// Joined-labeling vertices kept (`a`'s decode order, then `b`'s); all when absent.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub keep: Option<Vec<u32>>,
    pub next: u32,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CallBranch {
    pub tree: u32,
    pub next: u32,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ProgNode {
    Join { a: TreeRef, b: TreeRef, branches: Vec<Branch> },
    Call { procedure: u32, branches: Vec<CallBranch> },
    Yield { tree: u32 },
    Goal { tree: u32, color: Color },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Procedure {
    pub nodes: Vec<ProgNode>,
}

/// Procedure 0 is the entry point; a procedure may only call higher-numbered ones.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProgramCertificate {
    pub r: Color,
    /// Tree to force monochromatically.
    pub goal: Graph,
    pub trees: Vec<Code>,
    pub procedures: Vec<Procedure>,
}

/// Where a successful verification leaves things.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProgramStats {
    pub nodes: u64,
    pub goals: u64,
    /// Largest skeleton tree on any branch.
    pub max_tree_edges: usize,
}

type Need = BTreeMap<u32, u32>;

fn add(need: &mut Need, t: u32, k: u32) {
    if t != 0 {
        *need.entry(t).or_insert(0) += k;
    }
}

fn minus(mut need: Need, t: u32) -> Need {
    if let Some(e) = need.get_mut(&t) {
        *e -= 1;
        if *e == 0 {
            need.remove(&t);
        }
    }
    need
}

fn pointwise_max(a: &mut Need, b: Need) {
    for (t, k) in b {
        let e = a.entry(t).or_insert(0);
        *e = (*e).max(k);
    }
}

/// The pruned result of joining `a` and `b` with color `c`.
fn pruned(adj: &[Adj], a: TreeRef, b: TreeRef, c: Color, keep: Option<&[u32]>) -> std::result::Result<(Adj, Vec<u32>), String> {
    let j = joined_adj(&adj[a.tree as usize], a.root, &adj[b.tree as usize], b.root, c);
    let keep: Vec<u32> = match keep {
        None => (0..j.len() as u32).collect(),
        Some(k) => k.to_vec(),
    };
    let mut pos = vec![u32::MAX; j.len()];
    for (i, &v) in keep.iter().enumerate() {
        if v as usize >= j.len() || pos[v as usize] != u32::MAX {
            return Err(format!("bad kept vertex {v}"));
        }
        pos[v as usize] = i as u32;
    }
    let sub: Adj = keep
        .iter()
        .map(|&v| j[v as usize].iter().filter(|&&(w, _)| pos[w as usize] != u32::MAX).map(|&(w, x)| (pos[w as usize], x)).collect())
        .collect();
    let edges: usize = sub.iter().map(Vec::len).sum::<usize>() / 2;
    if sub.is_empty() || edges + 1 != sub.len() || !connected(&sub) {
        return Err("kept vertices do not form a subtree".into());
    }
    Ok((sub, keep))
}

fn connected(adj: &Adj) -> bool {
    let mut seen = vec![false; adj.len()];
    let mut stack = vec![0usize];
    seen[0] = true;
    let mut n = 1;
    while let Some(x) = stack.pop() {
        for &(y, _) in &adj[x] {
            if !seen[y as usize] {
                seen[y as usize] = true;
                n += 1;
                stack.push(y as usize);
            }
        }
    }
    n == adj.len()
}

/// Per join branch: result id and, for each decode position of the result, the
/// joined-labeling vertex it comes from.
type Compiled = HashMap<(u32, u32, Color), Vec<u32>>;

fn compile(cert: &ProgramCertificate, adj: &[Adj], index: &HashMap<Code, u32>) -> Result<Compiled> {
    let mut out = HashMap::new();
    for (p, proc_) in cert.procedures.iter().enumerate() {
        for (i, node) in proc_.nodes.iter().enumerate() {
            if let ProgNode::Join { a, b, branches } = node {
                let bad = |reason: String| Error::Structure { path: Vec::new(), reason: format!("procedure {p} node {i}: {reason}") };
                for t in [a, b] {
                    if t.tree as usize >= adj.len() || t.root as usize >= adj[t.tree as usize].len() {
                        return Err(bad(format!("bad tree reference {t:?}")));
                    }
                }
                if branches.len() != cert.r as usize {
                    return Err(bad(format!("join needs {} branches", cert.r)));
                }
                for (ci, br) in branches.iter().enumerate() {
                    let c = ci as Color + 1;
                    let (sub, keep) = pruned(adj, *a, *b, c, br.keep.as_deref()).map_err(bad)?;
                    let (code, order) = unrooted_encode(&sub, true);
                    if index.get(&code) != Some(&br.result) {
                        return Err(bad(format!("color {c} does not produce tree {}", br.result)));
                    }
                    out.insert((p as u32, i as u32, c), order.iter().map(|&x| keep[x as usize]).collect());
                }
            }
        }
    }
    Ok(out)
}

struct Checker<'a> {
    cert: &'a ProgramCertificate,
    goal: Pattern,
    adj: Vec<Adj>,
    yields: Vec<BTreeSet<u32>>,
    goal_ok: HashMap<(u32, Color), bool>,
}

struct Found {
    need: Need,
    yields: BTreeSet<u32>,
}

impl Checker<'_> {
    fn goal_holds(&mut self, t: u32, c: Color) -> bool {
        if let Some(&v) = self.goal_ok.get(&(t, c)) {
            return v;
        }
        let g = colored_of_adj(&self.adj[t as usize]);
        let v = find_mono_copy(&g, &self.goal, c).is_some();
        self.goal_ok.insert((t, c), v);
        v
    }

    fn procedure(&mut self, p: usize, stats: &mut ProgramStats) -> Result<std::result::Result<BTreeSet<u32>, String>> {
        let nodes = &self.cert.procedures[p].nodes;
        if nodes.is_empty() {
            return Err(Error::Structure { path: vec![], reason: format!("procedure {p} is empty") });
        }
        let mut memo: Vec<Option<Found>> = (0..nodes.len()).map(|_| None).collect();
        let mut state = vec![0u8; nodes.len()];
        match self.node(p, 0, &mut memo, &mut state, stats)? {
            Err(why) => Ok(Err(why)),
            Ok(()) => {
                let f = memo[0].take().unwrap();
                if let Some((&t, _)) = f.need.iter().next() {
                    return Err(Error::Structure {
                        path: vec![],
                        reason: format!("procedure {p} consumes tree {t} it never produces"),
                    });
                }
                Ok(Ok(f.yields))
            }
        }
    }

    fn node(
        &mut self,
        p: usize,
        i: u32,
        memo: &mut Vec<Option<Found>>,
        state: &mut Vec<u8>,
        stats: &mut ProgramStats,
    ) -> Result<std::result::Result<(), String>> {
        let bad = |reason: String| Error::Structure { path: vec![], reason: format!("procedure {p} node {i}: {reason}") };
        let nodes = &self.cert.procedures[p].nodes;
        let iu = i as usize;
        if iu >= nodes.len() {
            return Err(bad("missing node".into()));
        }
        match state[iu] {
            1 => return Err(bad("cycle".into())),
            2 => return Ok(Ok(())),
            _ => {}
        }
        state[iu] = 1;
        stats.nodes += 1;
        let ntrees = self.cert.trees.len() as u32;
        let mut need = Need::new();
        let mut yields = BTreeSet::new();
        match nodes[iu].clone() {
            ProgNode::Yield { tree } => {
                if tree >= ntrees {
                    return Err(bad(format!("unknown tree {tree}")));
                }
                if p == 0 {
                    return Err(bad("the entry procedure cannot yield".into()));
                }
                add(&mut need, tree, 1);
                yields.insert(tree);
            }
            ProgNode::Goal { tree, color } => {
                if tree >= ntrees || color == 0 || color > self.cert.r {
                    return Err(bad("bad goal".into()));
                }
                stats.goals += 1;
                if !self.goal_holds(tree, color) {
                    return Ok(Err(format!("procedure {p} node {i}: tree {tree} has no color-{color} goal copy")));
                }
                add(&mut need, tree, 1);
            }
            ProgNode::Join { a, b, branches } => {
                let size = self.adj[a.tree as usize].len() + self.adj[b.tree as usize].len() - 1;
                stats.max_tree_edges = stats.max_tree_edges.max(size);
                for br in &branches {
                    if let Err(e) = self.node(p, br.next, memo, state, stats)? {
                        return Ok(Err(e));
                    }
                    let f = memo[br.next as usize].as_ref().unwrap();
                    pointwise_max(&mut need, minus(f.need.clone(), br.result));
                    yields.extend(f.yields.iter().copied());
                }
                add(&mut need, a.tree, 1);
                add(&mut need, b.tree, 1);
            }
            ProgNode::Call { procedure, branches } => {
                let q = procedure as usize;
                if q <= p || q >= self.cert.procedures.len() {
                    return Err(bad(format!("may not call procedure {procedure}")));
                }
                for t in &self.yields[q] {
                    if !branches.iter().any(|b| b.tree == *t) {
                        return Err(bad(format!("no branch for tree {t} yielded by procedure {q}")));
                    }
                }
                for br in &branches {
                    if !self.yields[q].contains(&br.tree) {
                        continue;
                    }
                    if let Err(e) = self.node(p, br.next, memo, state, stats)? {
                        return Ok(Err(e));
                    }
                    let f = memo[br.next as usize].as_ref().unwrap();
                    pointwise_max(&mut need, minus(f.need.clone(), br.tree));
                    yields.extend(f.yields.iter().copied());
                }
            }
        }
        state[iu] = 2;
        memo[iu] = Some(Found { need, yields });
        Ok(Ok(()))
    }
}

/// Checks the program; `Fail` when a goal leaf lacks the goal or forests are not allowed.
pub fn verify(cert: &ProgramCertificate, restriction: Restriction) -> Result<(Verdict, ProgramStats)> {
    let mut stats = ProgramStats { nodes: 0, goals: 0, max_tree_edges: 0 };
    let fail = |reason: FailReason| Verdict::Fail { path: vec![], depth: 0, reason };
    match restriction {
        Restriction::Density(d) if d >= Rational::from_integer(1) => {}
        _ => {
            let why = "the forest phase grows unbounded trees and needs a density cap of at least 1";
            return Ok((fail(FailReason::IllegalBoard(why.into())), stats));
        }
    }
    if cert.procedures.is_empty() {
        return Err(Error::Structure { path: vec![], reason: "no procedures".into() });
    }
    if cert.goal.edge_count() == 0 || !cert.goal.is_forest() {
        return Err(Error::Structure { path: vec![], reason: "the goal must be a forest with edges".into() });
    }
    let index = check_tree_table(&cert.trees, cert.r)?;
    let adj: Vec<Adj> = cert.trees.iter().map(|t| decode(t)).collect();
    compile(cert, &adj, &index)?;
    let mut ck = Checker {
        cert,
        goal: Pattern::new(&cert.goal),
        adj,
        yields: vec![BTreeSet::new(); cert.procedures.len()],
        goal_ok: HashMap::new(),
    };
    for p in (0..cert.procedures.len()).rev() {
        match ck.procedure(p, &mut stats)? {
            Err(why) => return Ok((fail(FailReason::NonWinningLeaf(why)), stats)),
            Ok(y) => ck.yields[p] = y,
        }
    }
    let vs = VerifyStats {
        nodes: stats.nodes,
        leaves: stats.goals,
        max_depth: 0,
        max_density: Rational::new(stats.max_tree_edges as i64, stats.max_tree_edges as i64 + 1),
    };
    Ok((Verdict::Win(vs), stats))
}

/// A playout that reached the goal: the colored goal copy on the board.
#[derive(Clone, Debug)]
pub struct Reached {
    pub color: Color,
    /// Board vertex of each goal vertex.
    pub goal_vertices: Vec<Vertex>,
}

enum End {
    Yield(u32, Vec<Vertex>),
    Goal(u32, Color, Vec<Vertex>),
}

pub(crate) struct Runner<'a> {
    cert: &'a ProgramCertificate,
    compiled: Compiled,
}

impl<'a> Runner<'a> {
    pub fn new(cert: &'a ProgramCertificate) -> Result<Self> {
        let index = check_tree_table(&cert.trees, cert.r)?;
        let adj: Vec<Adj> = cert.trees.iter().map(|t| decode(t)).collect();
        let compiled = compile(cert, &adj, &index)?;
        Ok(Runner { cert, compiled })
    }

    /// Runs the entry procedure on `table`, adding fresh vertices as needed.
    pub fn run(&self, table: &mut Table) -> Result<Reached> {
        match self.proc_(0, table)? {
            End::Goal(t, color, copy) => {
                let g = colored_of_adj(&decode(&self.cert.trees[t as usize]));
                let emb = find_mono_copy(&g, &Pattern::new(&self.cert.goal), color)
                    .ok_or_else(|| Error::Strategy("goal tree lacks the goal".into()))?;
                Ok(Reached { color, goal_vertices: emb.iter().map(|&x| copy[x as usize]).collect() })
            }
            End::Yield(..) => Err(Error::Strategy("entry procedure yielded".into())),
        }
    }

    fn proc_(&self, p: u32, table: &mut Table) -> Result<End> {
        let nodes = &self.cert.procedures[p as usize].nodes;
        let mut stock: HashMap<u32, Vec<Vec<Vertex>>> = HashMap::new();
        let take = |stock: &mut HashMap<u32, Vec<Vec<Vertex>>>, t: u32, table: &mut Table| -> Result<Vec<Vertex>> {
            if t == 0 {
                return Ok(vec![table.fresh()]);
            }
            stock
                .get_mut(&t)
                .and_then(Vec::pop)
                .ok_or_else(|| Error::Strategy(format!("procedure {p} has no copy of tree {t}")))
        };
        let mut i = 0u32;
        loop {
            match &nodes[i as usize] {
                ProgNode::Yield { tree } => return Ok(End::Yield(*tree, take(&mut stock, *tree, table)?)),
                ProgNode::Goal { tree, color } => return Ok(End::Goal(*tree, *color, take(&mut stock, *tree, table)?)),
                ProgNode::Join { a, b, branches } => {
                    let ca = take(&mut stock, a.tree, table)?;
                    let cb = take(&mut stock, b.tree, table)?;
                    let c = table.present(ca[a.root as usize], cb[b.root as usize])?;
                    let br = &branches[c as usize - 1];
                    let order = &self.compiled[&(p, i, c)];
                    let copy = order
                        .iter()
                        .map(|&x| if (x as usize) < ca.len() { ca[x as usize] } else { cb[x as usize - ca.len()] })
                        .collect();
                    stock.entry(br.result).or_default().push(copy);
                    i = br.next;
                }
                ProgNode::Call { procedure, branches } => match self.proc_(*procedure, table)? {
                    End::Goal(t, c, copy) => return Ok(End::Goal(t, c, copy)),
                    End::Yield(t, copy) => {
                        let br = branches
                            .iter()
                            .find(|b| b.tree == t)
                            .ok_or_else(|| Error::Strategy(format!("no branch for yielded tree {t}")))?;
                        stock.entry(t).or_default().push(copy);
                        i = br.next;
                    }
                },
            }
        }
    }
}

/// Plays the program alone and returns the goal copy together with the board.
pub fn play(cert: &ProgramCertificate, painter: &dyn PainterStrategy, edge_budget: usize) -> Result<(Reached, ColoredGraph)> {
    let runner = Runner::new(cert)?;
    let mut table = Table::new(painter, cert.r, edge_budget);
    let reached = runner.run(&mut table)?;
    Ok((reached, table.board))
}

/// Construction helper: trees are kept as explicit skeletons whose vertex ids the
/// caller chooses, and are interned by canonical code on demand.
#[derive(Clone, Debug)]
pub struct ProgramBuilder {
    pub r: Color,
    trees: Vec<Code>,
    index: HashMap<Code, u32>,
    pub procedures: Vec<Procedure>,
}

/// A tree with caller-chosen vertex names, plus its interned id and the decode
/// position of each name.
#[derive(Clone, Debug)]
pub struct Skeleton {
    pub graph: ColoredGraph,
    pub id: u32,
    pub pos: Vec<u32>,
}

impl ProgramBuilder {
    pub fn new(r: Color) -> Self {
        let mut b = ProgramBuilder { r, trees: Vec::new(), index: HashMap::new(), procedures: Vec::new() };
        b.intern_code(&[]);
        b
    }

    fn intern_code(&mut self, code: &[u8]) -> u32 {
        let u = unrooted_of_rooted(code);
        if let Some(&i) = self.index.get(&u) {
            return i;
        }
        let i = self.trees.len() as u32;
        self.trees.push(u.clone());
        self.index.insert(u, i);
        i
    }

    pub fn skeleton(&mut self, graph: ColoredGraph) -> Skeleton {
        let adj: Adj = (0..graph.vertex_count() as Vertex).map(|v| graph.neighbors(v).to_vec()).collect();
        let (code, order) = unrooted_encode(&adj, true);
        let id = self.intern_code(&code);
        let mut pos = vec![0; order.len()];
        for (i, &v) in order.iter().enumerate() {
            pos[v as usize] = i as u32;
        }
        Skeleton { graph, id, pos }
    }

    pub fn single_vertex(&mut self) -> Skeleton {
        self.skeleton(ColoredGraph::new(1))
    }

    /// Joins `a` at vertex `ra` with `b` at vertex `rb` in color `c` and keeps the named
    /// vertices (`a`'s names, then `b`'s names shifted by `a`'s vertex count). Returns the
    /// branch data and the pruned skeleton, whose vertices are `keep` in order.
    pub fn join(&mut self, a: &Skeleton, ra: Vertex, b: &Skeleton, rb: Vertex, c: Color, keep: &[Vertex]) -> (Option<Vec<u32>>, Skeleton) {
        let na = a.graph.vertex_count() as Vertex;
        let mut g = a.graph.clone();
        g.ensure_vertices((na as usize) + b.graph.vertex_count());
        for e in b.graph.edges() {
            g.add_edge(e.u + na, e.v + na, e.color).unwrap();
        }
        g.add_edge(ra, rb + na, c).unwrap();
        let sub = g.induced(keep);
        let labels: Vec<u32> =
            keep.iter().map(|&v| if v < na { a.pos[v as usize] } else { na + b.pos[(v - na) as usize] }).collect();
        let all = keep.len() == g.vertex_count() && {
            let mut s = labels.clone();
            s.sort_unstable();
            s.iter().enumerate().all(|(i, &x)| i as u32 == x)
        };
        (if all { None } else { Some(labels) }, self.skeleton(sub))
    }

    pub fn tree_ref(a: &Skeleton, root: Vertex) -> TreeRef {
        TreeRef { tree: a.id, root: a.pos[root as usize] }
    }

    pub fn add_procedure(&mut self) -> u32 {
        self.procedures.push(Procedure { nodes: Vec::new() });
        self.procedures.len() as u32 - 1
    }

    /// Appends a placeholder node to procedure `p`.
    pub fn reserve(&mut self, p: u32) -> u32 {
        let nodes = &mut self.procedures[p as usize].nodes;
        nodes.push(ProgNode::Yield { tree: u32::MAX });
        nodes.len() as u32 - 1
    }

    pub fn set(&mut self, p: u32, i: u32, node: ProgNode) {
        self.procedures[p as usize].nodes[i as usize] = node;
    }

    pub fn finish(self, goal: Graph) -> ProgramCertificate {
        ProgramCertificate { r: self.r, goal, trees: self.trees, procedures: self.procedures }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    /// Joins two single vertices and stops at the edge, in whichever color.
    fn edge_program() -> ProgramCertificate {
        let mut b = ProgramBuilder::new(2);
        let main = b.add_procedure();
        let k1 = b.single_vertex();
        let start = b.reserve(main);
        let mut branches = Vec::new();
        for c in 1..=2u8 {
            let (keep, sk) = b.join(&k1, 0, &k1, 0, c, &[0, 1]);
            let g = b.reserve(main);
            b.set(main, g, ProgNode::Goal { tree: sk.id, color: c });
            branches.push(Branch { result: sk.id, keep, next: g });
        }
        let r0 = ProgramBuilder::tree_ref(&k1, 0);
        b.set(main, start, ProgNode::Join { a: r0, b: r0, branches });
        b.finish(Graph::path(1))
    }

    /// The entry calls a procedure yielding an edge of either color, then stops.
    fn call_program() -> ProgramCertificate {
        let mut b = ProgramBuilder::new(2);
        let main = b.add_procedure();
        let edge = b.add_procedure();
        let k1 = b.single_vertex();
        let s = b.reserve(edge);
        let mut br = Vec::new();
        let mut calls = Vec::new();
        let call = b.reserve(main);
        for c in 1..=2u8 {
            let (keep, sk) = b.join(&k1, 0, &k1, 0, c, &[0, 1]);
            let y = b.reserve(edge);
            b.set(edge, y, ProgNode::Yield { tree: sk.id });
            br.push(Branch { result: sk.id, keep, next: y });
            let g = b.reserve(main);
            b.set(main, g, ProgNode::Goal { tree: sk.id, color: c });
            calls.push(CallBranch { tree: sk.id, next: g });
        }
        let r0 = ProgramBuilder::tree_ref(&k1, 0);
        b.set(edge, s, ProgNode::Join { a: r0, b: r0, branches: br });
        b.set(main, call, ProgNode::Call { procedure: edge, branches: calls });
        b.finish(Graph::path(1))
    }

    /// Joins a growing star's center to fresh vertices until two edges share a color.
    fn star_program() -> ProgramCertificate {
        fn grow(b: &mut ProgramBuilder, center: &Skeleton, at: u32, counts: [u32; 2], k1: &Skeleton) {
            let mut br = Vec::new();
            for c in 1..=2u8 {
                let n = center.graph.vertex_count() as Vertex;
                let all: Vec<Vertex> = (0..=n).collect();
                let (keep, sk) = b.join(center, 0, k1, 0, c, &all);
                let mut cnt = counts;
                cnt[c as usize - 1] += 1;
                let next = b.reserve(0);
                if cnt[c as usize - 1] == 2 {
                    b.set(0, next, ProgNode::Goal { tree: sk.id, color: c });
                } else {
                    grow(b, &sk, next, cnt, k1);
                }
                br.push(Branch { result: sk.id, keep, next });
            }
            let a = ProgramBuilder::tree_ref(center, 0);
            b.set(0, at, ProgNode::Join { a, b: ProgramBuilder::tree_ref(k1, 0), branches: br });
        }
        let mut b = ProgramBuilder::new(2);
        b.add_procedure();
        let k1 = b.single_vertex();
        let at = b.reserve(0);
        grow(&mut b, &k1, at, [0, 0], &k1);
        b.finish(Graph::path(2))
    }

    struct Alternate;
    impl PainterStrategy for Alternate {
        fn decide(&self, b: &ColoredGraph, _: Vertex, _: Vertex) -> Color {
            (b.edge_count() % 2) as Color + 1
        }
    }

    #[test]
    fn small_programs_verify_and_play() {
        for cert in [edge_program(), call_program(), star_program()] {
            let (v, stats) = verify(&cert, Restriction::Density(rat(1, 1))).unwrap();
            assert!(v.is_win(), "{v}");
            assert!(stats.goals >= 2);
            let (reached, board) = play(&cert, &Alternate, 100).unwrap();
            let pat = Pattern::new(&cert.goal);
            assert!(crate::embed::is_mono_witness(&board, &pat, reached.color, &reached.goal_vertices));
        }
        let (_, stats) = verify(&star_program(), Restriction::Density(rat(1, 1))).unwrap();
        assert_eq!(stats.max_tree_edges, 3);
        let (v, _) = verify(&edge_program(), Restriction::Density(rat(9, 10))).unwrap();
        assert!(!v.is_win());
    }

    #[test]
    fn consuming_an_unproduced_tree_is_rejected() {
        let mut cert = call_program();
        cert.procedures[1].nodes[1] = ProgNode::Yield { tree: 0 };
        assert!(verify(&cert, Restriction::Density(rat(1, 1))).is_err());
        let mut cert = star_program();
        if let ProgNode::Join { a, .. } = &mut cert.procedures[0].nodes[0] {
            a.tree = 1;
        }
        assert!(verify(&cert, Restriction::Density(rat(1, 1))).is_err());
    }
}
