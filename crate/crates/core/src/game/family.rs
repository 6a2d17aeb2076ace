//! Join strategies over enforceable trees, the consistent-Painter view of the
//! forest game.
//!
//! A node asks Painter for the color of an edge joining the roots of two trees
//! Builder already owns, and branches on the answer. Verification tracks which
//! trees every node needs and checks that each one was produced on the way down,
//! so the strategy is sound against any Painter: playout builds enough copies of
//! every tree that, whatever colors Painter uses, some color class of the joins
//! supplies what its branch needs (pigeonhole over the `r` colors).

use super::{FailReason, GameConfig, Outcome, PainterStrategy, Restriction, Table, Transcript, Verdict, VerifyStats};
use crate::embed::{find_mono_copy, Pattern};
use crate::error::{Error, Result};
use crate::graph::{Color, ColoredGraph, Vertex};
use crate::rational::Rational;
use crate::tree::{decode, edge_count, unrooted_encode, unrooted_of_rooted, validate_code, Adj, Code};
use serde::{Deserialize, Serialize};
use std::collections::{BTreeSet, HashMap};

/// A tree of the table rooted at vertex `root` of its decode order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct TreeRef {
    pub tree: u32,
    pub root: u32,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FamilyNode {
    /// `next[c-1]` is the node reached when Painter uses color `c`.
    Join { a: TreeRef, b: TreeRef, next: Vec<u32> },
    /// `trees[j]` holds the `j`-th component of the winning color's target.
    Win { color: Color, trees: Vec<u32> },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FamilyCertificate {
    pub r: Color,
    /// Canonical unrooted codes; entry 0 is the single vertex.
    pub trees: Vec<Code>,
    /// Node 0 is the root.
    pub nodes: Vec<FamilyNode>,
}

/// Incremental construction with interned trees.
#[derive(Clone, Debug)]
pub struct FamilyBuilder {
    pub r: Color,
    trees: Vec<Code>,
    index: HashMap<Code, u32>,
    nodes: Vec<Option<FamilyNode>>,
}

impl FamilyBuilder {
    pub fn new(r: Color) -> Self {
        let mut b = FamilyBuilder { r, trees: Vec::new(), index: HashMap::new(), nodes: Vec::new() };
        b.intern(&[]);
        b
    }

    /// Id of a tree given by any rooted or unrooted code.
    pub fn intern(&mut self, code: &[u8]) -> u32 {
        let u = unrooted_of_rooted(code);
        if let Some(&i) = self.index.get(&u) {
            return i;
        }
        let i = self.trees.len() as u32;
        self.trees.push(u.clone());
        self.index.insert(u, i);
        i
    }

    pub fn code(&self, id: u32) -> &Code {
        &self.trees[id as usize]
    }

    /// Reserves a node slot to be filled later.
    pub fn reserve(&mut self) -> u32 {
        self.nodes.push(None);
        self.nodes.len() as u32 - 1
    }

    pub fn set(&mut self, id: u32, node: FamilyNode) {
        self.nodes[id as usize] = Some(node);
    }

    pub fn push(&mut self, node: FamilyNode) -> u32 {
        self.nodes.push(Some(node));
        self.nodes.len() as u32 - 1
    }

    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    /// Moves `root` to position 0 and drops unreachable nodes.
    pub fn finish(self, root: u32) -> Result<FamilyCertificate> {
        let nodes: Vec<FamilyNode> = self
            .nodes
            .into_iter()
            .map(|n| n.ok_or_else(|| Error::Strategy("unfilled certificate node".into())))
            .collect::<Result<_>>()?;
        let mut order = Vec::new();
        let mut pos = vec![u32::MAX; nodes.len()];
        let mut stack = vec![root];
        while let Some(x) = stack.pop() {
            if pos[x as usize] != u32::MAX {
                continue;
            }
            pos[x as usize] = order.len() as u32;
            order.push(x);
            if let FamilyNode::Join { next, .. } = &nodes[x as usize] {
                stack.extend(next.iter().rev());
            }
        }
        let out = order
            .iter()
            .map(|&x| match &nodes[x as usize] {
                FamilyNode::Join { a, b, next } => {
                    FamilyNode::Join { a: *a, b: *b, next: next.iter().map(|&n| pos[n as usize]).collect() }
                }
                w => w.clone(),
            })
            .collect();
        Ok(FamilyCertificate { r: self.r, trees: self.trees, nodes: out })
    }
}

/// The tree obtained by joining `a` and `b` with color `c`: adjacency in the joined labeling,
/// where `a`'s vertices come first, then `b`'s.
pub(crate) fn joined_adj(a: &Adj, ra: u32, b: &Adj, rb: u32, c: Color) -> Adj {
    let off = a.len() as u32;
    let mut adj: Adj = a.clone();
    adj.extend(b.iter().map(|nb| nb.iter().map(|&(w, x)| (w + off, x)).collect()));
    adj[ra as usize].push((rb + off, c));
    adj[(rb + off) as usize].push((ra, c));
    adj
}

pub(crate) fn colored_of_adj(adj: &Adj) -> ColoredGraph {
    let mut g = ColoredGraph::new(adj.len());
    for (v, nb) in adj.iter().enumerate() {
        for &(w, c) in nb {
            if (v as u32) < w {
                g.add_edge(v as u32, w, c).unwrap();
            }
        }
    }
    g
}

pub(crate) fn check_tree_table(trees: &[Code], r: Color) -> Result<HashMap<Code, u32>> {
    let bad = |reason: String| Error::Structure { path: Vec::new(), reason };
    if trees.first().map_or(true, |t| !t.is_empty()) {
        return Err(bad("tree 0 must be the single vertex".into()));
    }
    let mut index = HashMap::new();
    for (i, t) in trees.iter().enumerate() {
        validate_code(t, r).map_err(|e| bad(format!("tree {i}: {e}")))?;
        if unrooted_of_rooted(t) != *t {
            return Err(bad(format!("tree {i} is not in canonical unrooted form")));
        }
        if index.insert(t.clone(), i as u32).is_some() {
            return Err(bad(format!("tree {i} is listed twice")));
        }
    }
    Ok(index)
}

/// Does `tree` contain component `comp` of `pattern` in color `c`? Returns the embedding
/// (pattern component vertex order) in decode-order vertices.
pub(crate) fn embed_component(tree: &ColoredGraph, pattern: &Pattern, comp: usize, c: Color) -> Option<Vec<Vertex>> {
    let vs = &pattern.components()[comp];
    let sub = Pattern::new(&pattern.graph().induced(vs));
    find_mono_copy(tree, &sub, c)
}

#[derive(Clone, Debug)]
struct JoinInfo {
    /// Per color: result tree id if it is in the table, and the joined-label vertex of each
    /// decode position of the result.
    result: Vec<(Option<u32>, Vec<u32>)>,
    edges: usize,
}

struct Checker<'a> {
    cert: &'a FamilyCertificate,
    config: &'a GameConfig,
    index: HashMap<Code, u32>,
    adj: Vec<Option<Adj>>,
    joins: HashMap<u32, JoinInfo>,
    contains: HashMap<(u32, Color, usize), bool>,
}

impl Checker<'_> {
    fn structure(&self, path: &[Color], reason: String) -> Error {
        Error::Structure { path: path.to_vec(), reason }
    }

    fn adj(&mut self, t: u32) -> &Adj {
        if self.adj[t as usize].is_none() {
            self.adj[t as usize] = Some(decode(&self.cert.trees[t as usize]));
        }
        self.adj[t as usize].as_ref().unwrap()
    }

    fn tree_ref(&mut self, t: TreeRef, path: &[Color]) -> Result<()> {
        if t.tree as usize >= self.cert.trees.len() {
            return Err(self.structure(path, format!("unknown tree {}", t.tree)));
        }
        if t.root as usize >= self.adj(t.tree).len() {
            return Err(self.structure(path, format!("root {} outside tree {}", t.root, t.tree)));
        }
        Ok(())
    }

    fn join(&mut self, id: u32, a: TreeRef, b: TreeRef) -> &JoinInfo {
        if !self.joins.contains_key(&id) {
            let aa = self.adj(a.tree).clone();
            let bb = self.adj(b.tree).clone();
            let result = (1..=self.cert.r)
                .map(|c| {
                    let j = joined_adj(&aa, a.root, &bb, b.root, c);
                    let (code, order) = unrooted_encode(&j, true);
                    (self.index.get(&code).copied(), order)
                })
                .collect();
            let edges = aa.len() + bb.len() - 1;
            self.joins.insert(id, JoinInfo { result, edges });
        }
        &self.joins[&id]
    }

    fn contains(&mut self, t: u32, c: Color, comp: usize) -> bool {
        if let Some(&v) = self.contains.get(&(t, c, comp)) {
            return v;
        }
        let g = colored_of_adj(self.adj(t));
        let v = embed_component(&g, self.config.pattern(c), comp, c).is_some();
        self.contains.insert((t, c, comp), v);
        v
    }
}

fn tree_density(edges: usize) -> Rational {
    Rational::new(edges as i64, edges as i64 + 1)
}

fn legal(edges: usize, restriction: Restriction) -> std::result::Result<(), String> {
    match restriction {
        Restriction::TreeSize(k) if edges > k as usize => Err(format!("a component has {edges} edges, more than {k}")),
        Restriction::Density(d) if tree_density(edges) > d => Err(format!("a tree with {edges} edges is denser than the cap")),
        _ => Ok(()),
    }
}

enum Visit {
    Done(BTreeSet<u32>),
    Fail(Verdict),
}

pub fn verify(cert: &FamilyCertificate, config: &GameConfig) -> Result<Verdict> {
    if cert.nodes.is_empty() {
        return Err(Error::Structure { path: Vec::new(), reason: "no nodes".into() });
    }
    let index = check_tree_table(&cert.trees, cert.r)?;
    let mut ck = Checker {
        cert,
        config,
        index,
        adj: vec![None; cert.trees.len()],
        joins: HashMap::new(),
        contains: HashMap::new(),
    };
    let n = cert.nodes.len();
    // 0 = unvisited, 1 = on the stack, 2 = done
    let mut state = vec![0u8; n];
    let mut req: Vec<Option<BTreeSet<u32>>> = vec![None; n];
    let mut depth = vec![0usize; n];
    let mut stats = VerifyStats { nodes: 0, leaves: 0, max_depth: 0, max_density: Rational::from_integer(0) };
    let mut path = Vec::new();
    let v = visit(&mut ck, 0, &mut state, &mut req, &mut depth, &mut stats, &mut path)?;
    Ok(match v {
        Visit::Fail(f) => f,
        Visit::Done(need) => {
            if let Some(t) = need.into_iter().next() {
                return Err(Error::Structure {
                    path: Vec::new(),
                    reason: format!("tree {t} is used before any node produces it"),
                });
            }
            stats.max_depth = depth[0];
            Verdict::Win(stats)
        }
    })
}

fn visit(
    ck: &mut Checker,
    id: u32,
    state: &mut Vec<u8>,
    req: &mut Vec<Option<BTreeSet<u32>>>,
    depth: &mut Vec<usize>,
    stats: &mut VerifyStats,
    path: &mut Vec<Color>,
) -> Result<Visit> {
    let i = id as usize;
    if i >= state.len() {
        return Err(ck.structure(path, format!("node {id} does not exist")));
    }
    match state[i] {
        1 => return Err(ck.structure(path, format!("node {id} lies on a cycle"))),
        2 => return Ok(Visit::Done(req[i].clone().unwrap())),
        _ => {}
    }
    state[i] = 1;
    stats.nodes += 1;
    let r = ck.cert.r;
    let mut need = BTreeSet::new();
    match ck.cert.nodes[i].clone() {
        FamilyNode::Win { color, trees } => {
            stats.leaves += 1;
            if color == 0 || color > r {
                return Err(ck.structure(path, format!("win color {color} out of range")));
            }
            let comps = ck.config.pattern(color).components().len();
            if trees.len() != comps {
                return Err(ck.structure(path, format!("win lists {} trees for {comps} components", trees.len())));
            }
            for (j, &t) in trees.iter().enumerate() {
                if t as usize >= ck.cert.trees.len() {
                    return Err(ck.structure(path, format!("unknown tree {t}")));
                }
                if !ck.contains(t, color, j) {
                    state[i] = 2;
                    return Ok(Visit::Fail(Verdict::Fail {
                        path: path.clone(),
                        depth: path.len(),
                        reason: FailReason::NonWinningLeaf(format!(
                            "tree {t} has no color-{color} copy of target component {j}"
                        )),
                    }));
                }
                need.insert(t);
            }
        }
        FamilyNode::Join { a, b, next } => {
            ck.tree_ref(a, path)?;
            ck.tree_ref(b, path)?;
            if next.len() != r as usize {
                return Err(ck.structure(path, format!("join needs {r} children, has {}", next.len())));
            }
            let info = ck.join(id, a, b).clone();
            stats.max_density = stats.max_density.max(tree_density(info.edges));
            let mut deepest = 0;
            for c in 1..=r {
                path.push(c);
                if let Err(why) = legal(info.edges, ck.config.restriction()) {
                    let d = path.len();
                    return Ok(Visit::Fail(Verdict::Fail { path: path.clone(), depth: d, reason: FailReason::IllegalBoard(why) }));
                }
                let child = next[c as usize - 1];
                match visit(ck, child, state, req, depth, stats, path)? {
                    Visit::Fail(f) => return Ok(Visit::Fail(f)),
                    Visit::Done(mut sub) => {
                        if let Some(t) = info.result[c as usize - 1].0 {
                            sub.remove(&t);
                        }
                        need.extend(sub);
                    }
                }
                deepest = deepest.max(depth[child as usize]);
                path.pop();
            }
            depth[i] = deepest + 1;
            need.insert(a.tree);
            need.insert(b.tree);
        }
    }
    need.remove(&0);
    state[i] = 2;
    req[i] = Some(need.clone());
    Ok(Visit::Done(need))
}

/// Trees needed (with multiplicity) before a node starts, for the pigeonhole playout.
/// `skip[i]` is the color followed without a query when some branch needs nothing new.
struct Plan {
    need: Vec<HashMap<u32, u64>>,
    skip: Vec<Option<Color>>,
    copies: Vec<u64>,
}

fn plan(cert: &FamilyCertificate, results: &[Vec<Option<u32>>]) -> Plan {
    let n = cert.nodes.len();
    let mut p = Plan { need: vec![HashMap::new(); n], skip: vec![None; n], copies: vec![0; n] };
    let mut order = Vec::new();
    let mut seen = vec![false; n];
    // postorder, iteratively
    let mut stack = vec![(0u32, false)];
    while let Some((x, expanded)) = stack.pop() {
        if expanded {
            order.push(x);
            continue;
        }
        if seen[x as usize] {
            continue;
        }
        seen[x as usize] = true;
        stack.push((x, true));
        if let FamilyNode::Join { next, .. } = &cert.nodes[x as usize] {
            for &c in next.iter().rev() {
                if !seen[c as usize] {
                    stack.push((c, false));
                }
            }
        }
    }
    for &x in &order {
        let i = x as usize;
        match &cert.nodes[i] {
            FamilyNode::Win { trees, .. } => {
                for &t in trees {
                    if t != 0 {
                        *p.need[i].entry(t).or_insert(0) += 1;
                    }
                }
            }
            FamilyNode::Join { a, b, next } => {
                let wants: Vec<u64> = next
                    .iter()
                    .enumerate()
                    .map(|(c, &ch)| results[i][c].map_or(0, |t| p.need[ch as usize].get(&t).copied().unwrap_or(0)))
                    .collect();
                if let Some(c) = wants.iter().position(|&w| w == 0) {
                    p.skip[i] = Some(c as Color + 1);
                    p.need[i] = p.need[next[c] as usize].clone();
                    continue;
                }
                let k = wants.iter().map(|w| w - 1).fold(1u64, |s, w| s.saturating_add(w));
                p.copies[i] = k;
                let mut need: HashMap<u32, u64> = HashMap::new();
                for (c, &ch) in next.iter().enumerate() {
                    for (&t, &m) in &p.need[ch as usize] {
                        if Some(t) == results[i][c] {
                            continue;
                        }
                        let e = need.entry(t).or_insert(0);
                        *e = (*e).max(m);
                    }
                }
                for t in [a.tree, b.tree] {
                    if t != 0 {
                        let e = need.entry(t).or_insert(0);
                        *e = e.saturating_add(k);
                    }
                }
                p.need[i] = need;
            }
        }
    }
    p
}

/// Number of edges a pigeonhole playout may present in the worst case, saturating.
pub fn playout_cost(cert: &FamilyCertificate) -> Result<u64> {
    let (p, _) = prepare(cert)?;
    // nodes only point to later nodes after `finish`, but do not rely on it
    let mut memo: Vec<Option<u64>> = vec![None; cert.nodes.len()];
    fn cost(i: usize, cert: &FamilyCertificate, p: &Plan, memo: &mut Vec<Option<u64>>) -> u64 {
        if let Some(c) = memo[i] {
            return c;
        }
        let c = match &cert.nodes[i] {
            FamilyNode::Win { .. } => 0,
            FamilyNode::Join { next, .. } => match p.skip[i] {
                Some(c) => cost(next[c as usize - 1] as usize, cert, p, memo),
                None => {
                    let below = next.iter().map(|&n| cost(n as usize, cert, p, memo)).max().unwrap_or(0);
                    p.copies[i].saturating_add(below)
                }
            },
        };
        memo[i] = Some(c);
        c
    }
    Ok(cost(0, cert, &p, &mut memo))
}

type Results = Vec<Vec<Option<u32>>>;
type Orders = Vec<Vec<Vec<u32>>>;

fn prepare(cert: &FamilyCertificate) -> Result<(Plan, (Results, Orders))> {
    let index = check_tree_table(&cert.trees, cert.r)?;
    let adj: Vec<Adj> = cert.trees.iter().map(|t| decode(t)).collect();
    let mut results = Vec::with_capacity(cert.nodes.len());
    let mut orders = Vec::with_capacity(cert.nodes.len());
    for node in &cert.nodes {
        match node {
            FamilyNode::Join { a, b, .. } => {
                let mut rs = Vec::new();
                let mut os = Vec::new();
                for c in 1..=cert.r {
                    let j = joined_adj(&adj[a.tree as usize], a.root, &adj[b.tree as usize], b.root, c);
                    let (code, order) = unrooted_encode(&j, true);
                    rs.push(index.get(&code).copied());
                    os.push(order);
                }
                results.push(rs);
                orders.push(os);
            }
            FamilyNode::Win { .. } => {
                results.push(Vec::new());
                orders.push(Vec::new());
            }
        }
    }
    Ok((plan(cert, &results), (results, orders)))
}

/// Copies of enforced trees on the board, each in decode order of its code.
#[derive(Default)]
struct Stock {
    copies: HashMap<u32, Vec<Vec<Vertex>>>,
}

impl Stock {
    fn take(&mut self, t: u32, table: &mut Table) -> Result<Vec<Vertex>> {
        if t == 0 {
            return Ok(vec![table.fresh()]);
        }
        self.copies
            .get_mut(&t)
            .and_then(Vec::pop)
            .ok_or_else(|| Error::Strategy(format!("playout ran out of copies of tree {t}")))
    }

    fn put(&mut self, t: u32, copy: Vec<Vertex>) {
        self.copies.entry(t).or_default().push(copy);
    }
}

pub fn play(
    cert: &FamilyCertificate,
    painter: &dyn PainterStrategy,
    config: &GameConfig,
    edge_budget: usize,
) -> Result<Transcript> {
    let (plan, (results, orders)) = prepare(cert)?;
    let mut table = Table::new(painter, cert.r, edge_budget);
    let mut stock = Stock::default();
    let mut node = 0usize;
    loop {
        match &cert.nodes[node] {
            FamilyNode::Win { color, trees } => {
                let pat = config.pattern(*color);
                let mut witness = vec![0; pat.vertex_count()];
                for (j, &t) in trees.iter().enumerate() {
                    let copy = stock.take(t, &mut table)?;
                    let g = colored_of_adj(&decode(&cert.trees[t as usize]));
                    let emb = embed_component(&g, pat, j, *color)
                        .ok_or_else(|| Error::Strategy(format!("tree {t} lacks the winning component")))?;
                    for (k, &p) in pat.components()[j].iter().enumerate() {
                        witness[p as usize] = copy[emb[k] as usize];
                    }
                }
                return Ok(table.finish(Outcome::Mono { color: *color, vertices: witness }));
            }
            FamilyNode::Join { a, b, next } => {
                if let Some(c) = plan.skip[node] {
                    node = next[c as usize - 1] as usize;
                    continue;
                }
                let wants: Vec<u64> = next
                    .iter()
                    .enumerate()
                    .map(|(c, &ch)| results[node][c].map_or(0, |t| plan.need[ch as usize].get(&t).copied().unwrap_or(0)))
                    .collect();
                let mut made = vec![0u64; cert.r as usize];
                for _ in 0..plan.copies[node] {
                    let ca = stock.take(a.tree, &mut table)?;
                    let cb = stock.take(b.tree, &mut table)?;
                    let c = table.present(ca[a.root as usize], cb[b.root as usize])? as usize;
                    if let Some(t) = results[node][c - 1] {
                        let copy = orders[node][c - 1]
                            .iter()
                            .map(|&x| if (x as usize) < ca.len() { ca[x as usize] } else { cb[x as usize - ca.len()] })
                            .collect();
                        stock.put(t, copy);
                        made[c - 1] += 1;
                    }
                }
                let c = (0..cert.r as usize)
                    .find(|&c| made[c] >= wants[c])
                    .ok_or_else(|| Error::Strategy("pigeonhole playout found no branch".into()))?;
                node = next[c] as usize;
            }
        }
    }
}

/// Largest tree any branch can produce.
pub fn max_tree_edges(cert: &FamilyCertificate) -> usize {
    let mut best = 0;
    let edges: Vec<usize> = cert.trees.iter().map(|t| edge_count(t)).collect();
    for n in &cert.nodes {
        if let FamilyNode::Join { a, b, .. } = n {
            best = best.max(edges[a.tree as usize] + edges[b.tree as usize] + 1);
        }
    }
    best
}
