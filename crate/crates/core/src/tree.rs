//! Rooted colored trees and their canonical byte codes.
//!
//! The code of a rooted tree is the concatenation, in lexicographic order, of
//! one block `[c, code(child), 0]` per child, where `c` is the color of the edge
//! to that child. A single vertex has the empty code. Codes are prefix-free, so
//! splitting a code back into its child blocks only needs a depth counter.

use crate::error::{Error, Result};
use crate::graph::{Color, ColoredGraph, Vertex};

pub type Code = Vec<u8>;

/// Adjacency lists `(neighbor, color)` of a tree.
pub type Adj = Vec<Vec<(u32, Color)>>;

fn adj_of(g: &ColoredGraph) -> Adj {
    (0..g.vertex_count() as Vertex).map(|v| g.neighbors(v).to_vec()).collect()
}

/// Code of the tree rooted at `root`, plus (if `track`) the original vertices in the
/// preorder that decoding the code would assign.
pub fn encode_rooted(adj: &[Vec<(u32, Color)>], root: u32, track: bool) -> (Code, Vec<u32>) {
    let n = adj.len();
    let mut parent = vec![u32::MAX; n];
    let mut pcolor = vec![0u8; n];
    let mut order = Vec::with_capacity(n);
    order.push(root);
    parent[root as usize] = root;
    let mut i = 0;
    while i < order.len() {
        let x = order[i];
        i += 1;
        for &(y, c) in &adj[x as usize] {
            if parent[y as usize] == u32::MAX {
                parent[y as usize] = x;
                pcolor[y as usize] = c;
                order.push(y);
            }
        }
    }
    let mut codes: Vec<Option<(Code, Vec<u32>)>> = vec![None; n];
    for &x in order.iter().rev() {
        let mut kids: Vec<(Code, Vec<u32>)> = adj[x as usize]
            .iter()
            .filter(|&&(y, _)| parent[y as usize] == x && y != root)
            .map(|&(y, _)| {
                let (c, o) = codes[y as usize].take().unwrap();
                let mut block = Vec::with_capacity(c.len() + 2);
                block.push(pcolor[y as usize]);
                block.extend_from_slice(&c);
                block.push(0);
                (block, o)
            })
            .collect();
        kids.sort_by(|a, b| a.0.cmp(&b.0));
        let len: usize = kids.iter().map(|k| k.0.len()).sum();
        let mut code = Vec::with_capacity(len);
        let mut ord = Vec::new();
        if track {
            ord.push(x);
        }
        for (c, o) in kids {
            code.extend_from_slice(&c);
            if track {
                ord.extend_from_slice(&o);
            }
        }
        codes[x as usize] = Some((code, ord));
    }
    codes[root as usize].take().unwrap()
}

/// Rebuilds adjacency from a rooted code; vertex 0 is the root, numbering is preorder.
pub fn decode(code: &[u8]) -> Adj {
    let mut adj: Adj = vec![Vec::new()];
    let mut stack = vec![0u32];
    for &b in code {
        if b == 0 {
            stack.pop();
        } else {
            let v = adj.len() as u32;
            let p = *stack.last().expect("malformed code");
            adj.push(vec![(p, b)]);
            adj[p as usize].push((v, b));
            stack.push(v);
        }
    }
    adj
}

/// Checks that bytes form a well-formed rooted code (balanced, children sorted).
pub fn validate_code(code: &[u8], r: Color) -> Result<()> {
    let adj_ok = {
        let mut depth = 0i64;
        let mut ok = code.len() % 2 == 0;
        for &b in code {
            if b == 0 {
                depth -= 1;
            } else {
                if b > r {
                    ok = false;
                }
                depth += 1;
            }
            if depth < 0 {
                ok = false;
            }
        }
        ok && depth == 0
    };
    if !adj_ok {
        return Err(Error::Parse("malformed tree code".into()));
    }
    let adj = decode(code);
    if encode_rooted(&adj, 0, false).0 != code {
        return Err(Error::Parse("tree code is not canonical".into()));
    }
    Ok(())
}

pub fn edge_count(code: &[u8]) -> usize {
    code.len() / 2
}

/// Splits a rooted code into its child blocks.
pub fn child_blocks(code: &[u8]) -> Vec<&[u8]> {
    let mut out = Vec::new();
    let mut depth = 0usize;
    let mut start = 0;
    for (i, &b) in code.iter().enumerate() {
        if b == 0 {
            depth -= 1;
            if depth == 0 {
                out.push(&code[start..=i]);
                start = i + 1;
            }
        } else {
            depth += 1;
        }
    }
    out
}

/// Joins the roots of `a` and `b` by a new edge of color `c`; the result is rooted at
/// `a`'s root.
pub fn join_codes(a: &[u8], b: &[u8], c: Color) -> Code {
    let mut block = Vec::with_capacity(b.len() + 2);
    block.push(c);
    block.extend_from_slice(b);
    block.push(0);
    let mut out = Vec::with_capacity(a.len() + block.len());
    let mut inserted = false;
    for blk in child_blocks(a) {
        if !inserted && block.as_slice() < blk {
            out.extend_from_slice(&block);
            inserted = true;
        }
        out.extend_from_slice(blk);
    }
    if !inserted {
        out.extend_from_slice(&block);
    }
    out
}

/// One or two centers of a tree.
pub fn centers(adj: &[Vec<(u32, Color)>]) -> Vec<u32> {
    let n = adj.len();
    if n <= 2 {
        return (0..n as u32).collect();
    }
    let mut deg: Vec<usize> = adj.iter().map(Vec::len).collect();
    let mut layer: Vec<u32> = (0..n as u32).filter(|&v| deg[v as usize] <= 1).collect();
    let mut left = n;
    while left > 2 {
        left -= layer.len();
        let mut next = Vec::new();
        for &v in &layer {
            for &(w, _) in &adj[v as usize] {
                let d = &mut deg[w as usize];
                if *d > 0 {
                    *d -= 1;
                    if *d == 1 {
                        next.push(w);
                    }
                }
            }
            deg[v as usize] = 0;
        }
        layer = next;
    }
    layer.sort_unstable();
    layer
}

/// Isomorphism-invariant code of an unrooted tree: the smaller rooted code at a center.
/// With `track`, also the original vertices in decode order of that code.
pub fn unrooted_encode(adj: &[Vec<(u32, Color)>], track: bool) -> (Code, Vec<u32>) {
    centers(adj).into_iter().map(|c| encode_rooted(adj, c, track)).min_by(|a, b| a.0.cmp(&b.0)).unwrap()
}

pub fn unrooted_of_rooted(code: &[u8]) -> Code {
    unrooted_encode(&decode(code), false).0
}

/// Codes of every rooting, indexed by decode-order vertex of `code`.
pub fn rooting_codes(code: &[u8]) -> Vec<Code> {
    let adj = decode(code);
    (0..adj.len() as u32).map(|v| encode_rooted(&adj, v, false).0).collect()
}

/// Distinct rootings, sorted.
pub fn distinct_rootings(code: &[u8]) -> Vec<Code> {
    let mut all = rooting_codes(code);
    all.sort();
    all.dedup();
    all
}

/// For each color `c` (index `c-1`), the longest path of color `c` starting at the root.
pub fn root_profile(code: &[u8], r: Color) -> Vec<u32> {
    let mut best = vec![0u32; r as usize];
    // each stack entry: (mono color of the root path so far or 0 if mixed, depth)
    let mut stack: Vec<(u8, u32)> = vec![(u8::MAX, 0)];
    for &b in code {
        if b == 0 {
            stack.pop();
        } else {
            let (m, d) = *stack.last().unwrap();
            let m2 = if m == u8::MAX || m == b { b } else { 0 };
            if m2 != 0 {
                let e = &mut best[b as usize - 1];
                *e = (*e).max(d + 1);
            }
            stack.push((m2, d + 1));
        }
    }
    best
}

/// Reusable buffers for [`JoinEncoder::encode_join`].
#[derive(Default)]
pub struct JoinEncoder {
    off: Vec<usize>,
    nb: Vec<(u32, Color)>,
    deg: Vec<usize>,
    layer: Vec<u32>,
    next: Vec<u32>,
    parent: Vec<u32>,
    order: Vec<u32>,
    span: Vec<(usize, usize)>,
    kids: Vec<(usize, usize)>,
    arena: Vec<u8>,
}

impl JoinEncoder {
    /// Unrooted code of `a` and `b` joined by an edge `(x, y)` of color `c`; equal to
    /// [`unrooted_encode`] of the joined adjacency, without building it.
    pub fn encode_join(&mut self, a: &Adj, x: u32, b: &Adj, y: u32, c: Color) -> Code {
        let na = a.len();
        let n = na + b.len();
        self.off.clear();
        self.nb.clear();
        self.off.push(0);
        for v in 0..n {
            if v < na {
                self.nb.extend_from_slice(&a[v]);
                if v as u32 == x {
                    self.nb.push((na as u32 + y, c));
                }
            } else {
                self.nb.extend(b[v - na].iter().map(|&(w, k)| (w + na as u32, k)));
                if (v - na) as u32 == y {
                    self.nb.push((x, c));
                }
            }
            self.off.push(self.nb.len());
        }
        self.unrooted()
    }

    /// Distinct rootings of a tree as `(vertex, rooted code)`, first vertex per code.
    pub fn distinct_rootings(&mut self, adj: &Adj) -> Vec<(u32, Code)> {
        self.off.clear();
        self.nb.clear();
        self.off.push(0);
        for nb in adj {
            self.nb.extend_from_slice(nb);
            self.off.push(self.nb.len());
        }
        let mut seen = std::collections::HashSet::new();
        (0..adj.len() as u32).map(|v| (v, self.encode_at(adj.len(), v))).filter(|(_, c)| seen.insert(c.clone())).collect()
    }

    fn unrooted(&mut self) -> Code {
        let n = self.off.len() - 1;
        let mut cs = [u32::MAX; 2];
        self.centers(n, &mut cs);
        let first = self.encode_at(n, cs[0]);
        if cs[1] == u32::MAX {
            return first;
        }
        first.min(self.encode_at(n, cs[1]))
    }

    fn centers(&mut self, n: usize, out: &mut [u32; 2]) {
        if n <= 2 {
            for v in 0..n {
                out[v] = v as u32;
            }
            return;
        }
        self.deg.clear();
        self.deg.extend((0..n).map(|v| self.off[v + 1] - self.off[v]));
        self.layer.clear();
        self.layer.extend((0..n as u32).filter(|&v| self.deg[v as usize] <= 1));
        let mut left = n;
        while left > 2 {
            left -= self.layer.len();
            self.next.clear();
            for &v in &self.layer {
                for &(w, _) in &self.nb[self.off[v as usize]..self.off[v as usize + 1]] {
                    let d = &mut self.deg[w as usize];
                    if *d > 0 {
                        *d -= 1;
                        if *d == 1 {
                            self.next.push(w);
                        }
                    }
                }
                self.deg[v as usize] = 0;
            }
            std::mem::swap(&mut self.layer, &mut self.next);
        }
        self.layer.sort_unstable();
        for (i, &v) in self.layer.iter().enumerate() {
            out[i] = v;
        }
    }

    fn encode_at(&mut self, n: usize, root: u32) -> Code {
        self.parent.clear();
        self.parent.resize(n, u32::MAX);
        self.order.clear();
        self.order.push(root);
        self.parent[root as usize] = root;
        let mut i = 0;
        while i < self.order.len() {
            let v = self.order[i];
            i += 1;
            for &(w, _) in &self.nb[self.off[v as usize]..self.off[v as usize + 1]] {
                if self.parent[w as usize] == u32::MAX {
                    self.parent[w as usize] = v;
                    self.order.push(w);
                }
            }
        }
        self.arena.clear();
        self.span.clear();
        self.span.resize(n, (0, 0));
        for j in (0..n).rev() {
            let v = self.order[j];
            self.kids.clear();
            for &(w, k) in &self.nb[self.off[v as usize]..self.off[v as usize + 1]] {
                if self.parent[w as usize] == v && w != root {
                    // child block: color, child code, terminator
                    let (s, l) = self.span[w as usize];
                    let start = self.arena.len();
                    self.arena.push(k);
                    self.arena.extend_from_within(s..s + l);
                    self.arena.push(0);
                    self.kids.push((start, l + 2));
                }
            }
            let arena = &self.arena;
            self.kids.sort_by(|p, q| arena[p.0..p.0 + p.1].cmp(&arena[q.0..q.0 + q.1]));
            let start = self.arena.len();
            for &(s, l) in &self.kids {
                self.arena.extend_from_within(s..s + l);
            }
            self.span[v as usize] = (start, self.arena.len() - start);
        }
        let (s, l) = self.span[root as usize];
        self.arena[s..s + l].to_vec()
    }
}

/// A rooted colored tree with explicit vertices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootedColoredTree {
    tree: ColoredGraph,
    root: Vertex,
}

impl RootedColoredTree {
    pub fn new(tree: ColoredGraph, root: Vertex) -> Result<Self> {
        let n = tree.vertex_count();
        if root as usize >= n {
            return Err(Error::Graph("root out of range".into()));
        }
        if tree.edge_count() + 1 != n || tree.component_of(root).len() != n {
            return Err(Error::Graph("not a tree".into()));
        }
        Ok(RootedColoredTree { tree, root })
    }

    pub fn single_vertex() -> Self {
        RootedColoredTree { tree: ColoredGraph::new(1), root: 0 }
    }

    pub fn from_code(code: &[u8]) -> Self {
        let adj = decode(code);
        let mut g = ColoredGraph::new(adj.len());
        for (v, nb) in adj.iter().enumerate() {
            for &(w, c) in nb {
                if (v as u32) < w {
                    g.add_edge(v as u32, w, c).unwrap();
                }
            }
        }
        RootedColoredTree { tree: g, root: 0 }
    }

    pub fn tree(&self) -> &ColoredGraph {
        &self.tree
    }

    pub fn root(&self) -> Vertex {
        self.root
    }

    pub fn edge_count(&self) -> usize {
        self.tree.edge_count()
    }

    pub fn canonical_code(&self) -> Code {
        encode_rooted(&adj_of(&self.tree), self.root, false).0
    }

    pub fn unrooted_code(&self) -> Code {
        unrooted_encode(&adj_of(&self.tree), false).0
    }
}

/// Joins the roots by an edge of color `c`. Returns the result rooted at `t1`'s root and
/// rooted at `t2`'s root.
pub fn join(t1: &RootedColoredTree, t2: &RootedColoredTree, c: Color) -> (RootedColoredTree, RootedColoredTree) {
    let off = t1.tree.vertex_count() as Vertex;
    let mut g = t1.tree.clone();
    g.ensure_vertices(t1.tree.vertex_count() + t2.tree.vertex_count());
    for e in t2.tree.edges() {
        g.add_edge(e.u + off, e.v + off, e.color).unwrap();
    }
    g.add_edge(t1.root, t2.root + off, c).unwrap();
    let a = RootedColoredTree { tree: g.clone(), root: t1.root };
    let b = RootedColoredTree { tree: g, root: t2.root + off };
    (a, b)
}

/// One rooted tree per distinct rooting of `t`.
pub fn all_rootings(t: &ColoredGraph) -> Result<Vec<RootedColoredTree>> {
    RootedColoredTree::new(t.clone(), 0)?;
    let adj = adj_of(t);
    let mut seen = std::collections::BTreeMap::new();
    for v in 0..t.vertex_count() as u32 {
        seen.entry(encode_rooted(&adj, v, false).0).or_insert(v);
    }
    Ok(seen.into_values().map(|v| RootedColoredTree { tree: t.clone(), root: v }).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::seq::SliceRandom;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;
    use std::collections::BTreeSet;

    fn random_tree(rng: &mut ChaCha8Rng, n: usize, r: Color) -> ColoredGraph {
        let mut g = ColoredGraph::new(n);
        for v in 1..n as u32 {
            g.add_edge(rng.gen_range(0..v), v, rng.gen_range(1..=r)).unwrap();
        }
        g
    }

    fn relabel(g: &ColoredGraph, perm: &[u32]) -> ColoredGraph {
        let mut h = ColoredGraph::new(g.vertex_count());
        for e in g.edges() {
            h.add_edge(perm[e.u as usize], perm[e.v as usize], e.color).unwrap();
        }
        h
    }

    #[test]
    fn small_codes() {
        assert!(RootedColoredTree::single_vertex().canonical_code().is_empty());
        let mut e = ColoredGraph::new(2);
        e.add_edge(0, 1, 1).unwrap();
        let a = RootedColoredTree::new(e.clone(), 0).unwrap();
        let b = RootedColoredTree::new(e, 1).unwrap();
        assert_eq!(a.canonical_code(), b.canonical_code());
    }

    /// Enumerates labeled colored trees via Pruefer sequences and counts rooted classes by
    /// brute-force isomorphism testing on rooted structures.
    fn brute_rooted_classes(k: usize, r: Color) -> usize {
        let n = k + 1;
        let mut trees: Vec<(ColoredGraph, u32)> = Vec::new();
        if n == 1 {
            return 1;
        }
        let seqs: Vec<Vec<u32>> = if n == 2 {
            vec![vec![]]
        } else {
            let mut all = vec![vec![]];
            for _ in 0..n - 2 {
                all = all.into_iter().flat_map(|s: Vec<u32>| (0..n as u32).map(move |x| {
                    let mut t = s.clone();
                    t.push(x);
                    t
                })).collect();
            }
            all
        };
        for seq in seqs {
            let mut deg = vec![1usize; n];
            for &x in &seq {
                deg[x as usize] += 1;
            }
            let mut edges = Vec::new();
            for &x in &seq {
                let leaf = (0..n).find(|&v| deg[v] == 1).unwrap();
                edges.push((leaf as u32, x));
                deg[leaf] -= 1;
                deg[x as usize] -= 1;
            }
            let rest: Vec<usize> = (0..n).filter(|&v| deg[v] == 1).collect();
            edges.push((rest[0] as u32, rest[1] as u32));
            let m = edges.len();
            for mask in 0..(r as usize).pow(m as u32) {
                let mut g = ColoredGraph::new(n);
                let mut x = mask;
                for &(u, v) in &edges {
                    g.add_edge(u, v, (x % r as usize) as u8 + 1).unwrap();
                    x /= r as usize;
                }
                for root in 0..n as u32 {
                    trees.push((g.clone(), root));
                }
            }
        }
        // isomorphism classes by explicit permutation search
        let perms = permutations(n);
        let mut reps: Vec<(ColoredGraph, u32)> = Vec::new();
        for (g, root) in trees {
            let iso = reps.iter().any(|(h, hr)| {
                perms.iter().any(|p| p[root as usize] == *hr && same_colored(&relabel(&g, p), h))
            });
            if !iso {
                reps.push((g, root));
            }
        }
        reps.len()
    }

    fn same_colored(a: &ColoredGraph, b: &ColoredGraph) -> bool {
        a.edges().iter().all(|e| b.edge_color(e.u, e.v) == Some(e.color))
    }

    fn permutations(n: usize) -> Vec<Vec<u32>> {
        let mut out = vec![vec![]];
        for _ in 0..n {
            out = out
                .into_iter()
                .flat_map(|p: Vec<u32>| {
                    (0..n as u32).filter(|x| !p.contains(x)).map(|x| {
                        let mut q = p.clone();
                        q.push(x);
                        q
                    }).collect::<Vec<_>>()
                })
                .collect();
        }
        out
    }

    #[test]
    fn counts_distinct_rooted_trees() {
        for (k, want) in [(0, 1), (1, 2), (2, 7)] {
            assert_eq!(brute_rooted_classes(k, 2), want);
            // the canonical code must induce exactly the same classes
            let mut codes = BTreeSet::new();
            let mut frontier: Vec<Code> = vec![vec![]];
            for _ in 0..k {
                let mut next = Vec::new();
                for c in &frontier {
                    for s in distinct_rootings(c) {
                        for col in 1..=2 {
                            next.push(unrooted_of_rooted(&join_codes(&s, &[], col)));
                        }
                    }
                }
                next.sort();
                next.dedup();
                frontier = next;
            }
            for c in &frontier {
                for s in distinct_rootings(c) {
                    codes.insert(s);
                }
            }
            assert_eq!(codes.len(), want);
        }
    }

    #[test]
    fn rooting_examples() {
        let mut e = ColoredGraph::new(2);
        e.add_edge(0, 1, 1).unwrap();
        assert_eq!(all_rootings(&e).unwrap().len(), 1);
        let mut p = ColoredGraph::new(3);
        p.add_edge(0, 1, 1).unwrap();
        p.add_edge(1, 2, 2).unwrap();
        assert_eq!(all_rootings(&p).unwrap().len(), 3);
        let mut s = ColoredGraph::new(4);
        for v in 1..4 {
            s.add_edge(0, v, 1).unwrap();
        }
        assert_eq!(all_rootings(&s).unwrap().len(), 2);
    }

    #[test]
    fn join_examples() {
        let k1 = RootedColoredTree::single_vertex();
        let (e, _) = join(&k1, &k1, 1);
        assert_eq!(e.edge_count(), 1);
        let (p, q) = join(&e, &k1, 2);
        assert_eq!(p.edge_count(), 2);
        assert_eq!(root_profile(&p.canonical_code(), 2), vec![1, 1]);
        assert_eq!(root_profile(&q.canonical_code(), 2), vec![0, 1]);
        assert_eq!(join_codes(&e.canonical_code(), &[], 2), p.canonical_code());
    }

    #[test]
    fn random_joins_add_edge_counts_and_match_code_join() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..100 {
            let na = rng.gen_range(1..8);
            let nb = rng.gen_range(1..8);
            let a = RootedColoredTree::new(random_tree(&mut rng, na, 2), rng.gen_range(0..na as u32)).unwrap();
            let b = RootedColoredTree::new(random_tree(&mut rng, nb, 2), rng.gen_range(0..nb as u32)).unwrap();
            let c = rng.gen_range(1..=2);
            let (x, y) = join(&a, &b, c);
            assert_eq!(x.edge_count(), a.edge_count() + b.edge_count() + 1);
            assert_eq!(x.canonical_code(), join_codes(&a.canonical_code(), &b.canonical_code(), c));
            assert_eq!(y.canonical_code(), join_codes(&b.canonical_code(), &a.canonical_code(), c));
            assert_eq!(x.unrooted_code(), y.unrooted_code());
        }
    }

    #[test]
    fn codes_invariant_under_relabeling() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..1000 {
            let n = rng.gen_range(1..14);
            let g = random_tree(&mut rng, n, 3);
            let root = rng.gen_range(0..n as u32);
            let mut perm: Vec<u32> = (0..n as u32).collect();
            perm.shuffle(&mut rng);
            let h = relabel(&g, &perm);
            let a = RootedColoredTree::new(g, root).unwrap();
            let b = RootedColoredTree::new(h, perm[root as usize]).unwrap();
            assert_eq!(a.canonical_code(), b.canonical_code());
            assert_eq!(a.unrooted_code(), b.unrooted_code());
            let code = a.canonical_code();
            validate_code(&code, 3).unwrap();
            assert_eq!(RootedColoredTree::from_code(&code).canonical_code(), code);
        }
    }

    #[test]
    fn join_encoder_matches_unrooted_encode() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let mut enc = JoinEncoder::default();
        for _ in 0..300 {
            let (na, nb) = (rng.gen_range(1..8), rng.gen_range(1..8));
            let a = adj_of(&random_tree(&mut rng, na, 3));
            let b = adj_of(&random_tree(&mut rng, nb, 3));
            let x = rng.gen_range(0..a.len() as u32);
            let y = rng.gen_range(0..b.len() as u32);
            let c = rng.gen_range(1..=3);
            let j = crate::game::family::joined_adj(&a, x, &b, y, c);
            assert_eq!(enc.encode_join(&a, x, &b, y, c), unrooted_encode(&j, false).0);
        }
    }

    #[test]
    fn tracked_order_matches_decode() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..200 {
            let n = rng.gen_range(1..12);
            let g = random_tree(&mut rng, n, 2);
            let adj: Adj = (0..n as u32).map(|v| g.neighbors(v).to_vec()).collect();
            let (code, order) = unrooted_encode(&adj, true);
            let dec = decode(&code);
            assert_eq!(order.len(), n);
            for (i, nb) in dec.iter().enumerate() {
                for &(j, c) in nb {
                    assert_eq!(g.edge_color(order[i], order[j as usize]), Some(c));
                }
            }
        }
    }
}
