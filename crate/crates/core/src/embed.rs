//! Monochromatic subgraph search by backtracking with degree pruning.

use crate::error::{Error, Result};
use crate::graph::{Color, ColoredGraph, Graph, Vertex};

/// A target prepared for repeated searches. Isolated vertices are dropped, so
/// witnesses list the images of the remaining vertices in their original order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Pattern {
    graph: Graph,
    comps: Vec<Vec<Vertex>>,
}

impl Pattern {
    pub fn new(g: &Graph) -> Pattern {
        let graph = g.without_isolated();
        let comps = graph.components();
        Pattern { graph, comps }
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn vertex_count(&self) -> usize {
        self.graph.vertex_count()
    }

    pub fn components(&self) -> &[Vec<Vertex>] {
        &self.comps
    }

    /// Search order: the anchor's component first (from `start`), then the rest.
    fn order(&self, start: &[Vertex]) -> Vec<Vertex> {
        let n = self.graph.vertex_count();
        let mut seen = vec![false; n];
        let mut order = Vec::with_capacity(n);
        let push_bfs = |seeds: &[Vertex], order: &mut Vec<Vertex>, seen: &mut Vec<bool>| {
            let from = order.len();
            for &s in seeds {
                if !seen[s as usize] {
                    seen[s as usize] = true;
                    order.push(s);
                }
            }
            let mut i = from;
            while i < order.len() {
                let x = order[i];
                i += 1;
                for &y in self.graph.neighbors(x) {
                    if !seen[y as usize] {
                        seen[y as usize] = true;
                        order.push(y);
                    }
                }
            }
        };
        push_bfs(start, &mut order, &mut seen);
        let mut rest: Vec<&Vec<Vertex>> = self.comps.iter().collect();
        // bigger components first prune earlier
        rest.sort_by_key(|c| std::cmp::Reverse(c.len()));
        for comp in rest {
            let root = *comp.iter().max_by_key(|&&v| (self.graph.degree(v), std::cmp::Reverse(v))).unwrap();
            push_bfs(&[root], &mut order, &mut seen);
        }
        order
    }
}

struct Search<'a> {
    board: &'a ColoredGraph,
    color: Color,
    pat: &'a Graph,
    order: Vec<Vertex>,
    map: Vec<Vertex>,
    used: Vec<bool>,
    /// An edge of `color` treated as present though it is not on the board.
    extra: Option<(Vertex, Vertex)>,
}

const UNSET: Vertex = Vertex::MAX;

impl Search<'_> {
    fn is_extra(&self, a: Vertex, b: Vertex) -> bool {
        self.extra.map_or(false, |(u, v)| (a, b) == (u, v) || (a, b) == (v, u))
    }

    fn degree(&self, h: Vertex) -> usize {
        let bonus = self.extra.map_or(false, |(u, v)| h == u || h == v) as usize;
        self.board.color_degree(h, self.color) + bonus
    }

    fn fits(&self, p: Vertex, h: Vertex) -> bool {
        if self.used[h as usize] || self.degree(h) < self.pat.degree(p) {
            return false;
        }
        self.pat.neighbors(p).iter().all(|&q| {
            let m = self.map[q as usize];
            m == UNSET || self.board.edge_color(m, h) == Some(self.color) || self.is_extra(m, h)
        })
    }

    fn run(&mut self, i: usize) -> bool {
        if i == self.order.len() {
            return true;
        }
        let p = self.order[i];
        if self.map[p as usize] != UNSET {
            return self.run(i + 1);
        }
        let anchor = self.pat.neighbors(p).iter().map(|&q| self.map[q as usize]).find(|&m| m != UNSET);
        let cands: Vec<Vertex> = match anchor {
            Some(m) => {
                let mut c: Vec<Vertex> =
                    self.board.neighbors(m).iter().filter(|&&(_, c)| c == self.color).map(|&(w, _)| w).collect();
                if let Some((u, v)) = self.extra {
                    if m == u || m == v {
                        c.push(if m == u { v } else { u });
                    }
                }
                c
            }
            None => (0..self.board.vertex_count() as Vertex).collect(),
        };
        for h in cands {
            if self.fits(p, h) {
                self.map[p as usize] = h;
                self.used[h as usize] = true;
                if self.run(i + 1) {
                    return true;
                }
                self.used[h as usize] = false;
                self.map[p as usize] = UNSET;
            }
        }
        false
    }
}

fn search(board: &ColoredGraph, pat: &Pattern, color: Color, pre: &[(Vertex, Vertex)]) -> Option<Vec<Vertex>> {
    search_with(board, pat, color, pre, None)
}

fn search_with(
    board: &ColoredGraph,
    pat: &Pattern,
    color: Color,
    pre: &[(Vertex, Vertex)],
    extra: Option<(Vertex, Vertex)>,
) -> Option<Vec<Vertex>> {
    let n = pat.vertex_count();
    if n == 0 {
        return Some(Vec::new());
    }
    if n > board.vertex_count() {
        return None;
    }
    let starts: Vec<Vertex> = pre.iter().map(|&(p, _)| p).collect();
    let mut s = Search {
        board,
        color,
        pat: &pat.graph,
        order: pat.order(&starts),
        map: vec![UNSET; n],
        used: vec![false; board.vertex_count()],
        extra,
    };
    for &(p, h) in pre {
        if !s.fits(p, h) {
            return None;
        }
        s.map[p as usize] = h;
        s.used[h as usize] = true;
    }
    if s.run(0) {
        Some(s.map)
    } else {
        None
    }
}

/// Some copy of the pattern using only edges of `color`; the result maps pattern vertex `i`
/// to board vertex `result[i]`.
pub fn find_mono_copy(board: &ColoredGraph, pat: &Pattern, color: Color) -> Option<Vec<Vertex>> {
    search(board, pat, color, &[])
}

/// A mono copy that uses the board edge `(u, v)`; used after inserting that edge, since any
/// newly created copy must contain it.
pub fn find_mono_copy_through(
    board: &ColoredGraph,
    pat: &Pattern,
    color: Color,
    u: Vertex,
    v: Vertex,
) -> Option<Vec<Vertex>> {
    if board.edge_color(u, v) != Some(color) {
        return None;
    }
    for &(a, b) in pat.graph.edges() {
        for (x, y) in [(u, v), (v, u)] {
            if let Some(m) = search(board, pat, color, &[(a, x), (b, y)]) {
                return Some(m);
            }
        }
    }
    None
}

/// Whether coloring the absent edge `(u, v)` with `color` would create a mono copy.
pub fn closes_mono_copy(board: &ColoredGraph, pat: &Pattern, color: Color, u: Vertex, v: Vertex) -> bool {
    if board.has_edge(u, v) {
        return false;
    }
    pat.graph.edges().iter().any(|&(a, b)| {
        [(u, v), (v, u)].iter().any(|&(x, y)| search_with(board, pat, color, &[(a, x), (b, y)], Some((u, v))).is_some())
    })
}

/// Checks a claimed witness: distinct board vertices, every pattern edge present in `color`.
pub fn is_mono_witness(board: &ColoredGraph, pat: &Pattern, color: Color, w: &[Vertex]) -> bool {
    if w.len() != pat.vertex_count() || w.iter().any(|&x| x as usize >= board.vertex_count()) {
        return false;
    }
    let mut sorted = w.to_vec();
    sorted.sort_unstable();
    if sorted.windows(2).any(|p| p[0] == p[1]) {
        return false;
    }
    pat.graph.edges().iter().all(|&(a, b)| board.edge_color(w[a as usize], w[b as usize]) == Some(color))
}

/// Whether the color-`color` edges of the board contain a copy of `targets[color-1]`.
pub fn contains_mono_copy(board: &ColoredGraph, targets: &[Graph], color: Color) -> Result<bool> {
    if color == 0 || color as usize > targets.len() {
        return Err(Error::ColorRange { color: color as u32, r: targets.len() as u32 });
    }
    let t = &targets[color as usize - 1];
    if t.edge_count() == 0 {
        return Err(Error::Domain("target graph has no edges".into()));
    }
    Ok(find_mono_copy(board, &Pattern::new(t), color).is_some())
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn colored(n: usize, edges: &[(Vertex, Vertex, Color)]) -> ColoredGraph {
        let mut g = ColoredGraph::new(n);
        for &(u, v, c) in edges {
            g.add_edge(u, v, c).unwrap();
        }
        g
    }

    /// Tries every injective map from pattern vertices into the board.
    fn brute_force(board: &ColoredGraph, t: &Graph, color: Color) -> bool {
        let p = t.without_isolated();
        let k = p.vertex_count();
        let n = board.vertex_count();
        fn rec(i: usize, k: usize, n: usize, map: &mut Vec<Vertex>, p: &Graph, b: &ColoredGraph, c: Color) -> bool {
            if i == k {
                return p.edges().iter().all(|&(x, y)| b.edge_color(map[x as usize], map[y as usize]) == Some(c));
            }
            for h in 0..n as Vertex {
                if !map.contains(&h) {
                    map.push(h);
                    if rec(i + 1, k, n, map, p, b, c) {
                        return true;
                    }
                    map.pop();
                }
            }
            false
        }
        rec(0, k, n, &mut Vec::new(), &p, board, color)
    }

    #[test]
    fn triangle_and_path_examples() {
        let tri = colored(3, &[(0, 1, 1), (1, 2, 1), (0, 2, 1)]);
        assert!(contains_mono_copy(&tri, &[Graph::clique(3), Graph::clique(3)], 1).unwrap());
        let p = colored(4, &[(0, 1, 1), (1, 2, 2), (2, 3, 1)]);
        assert!(!contains_mono_copy(&p, &[Graph::path(2), Graph::path(2)], 1).unwrap());
        assert!(contains_mono_copy(&p, &[Graph::path(2)], 3).is_err());
    }

    #[test]
    fn forest_targets_need_disjoint_copies() {
        let two = Graph::from_edges(4, &[(0, 1), (2, 3)]).unwrap();
        let p2 = colored(3, &[(0, 1, 1), (1, 2, 1)]);
        assert!(!contains_mono_copy(&p2, &[two.clone()], 1).unwrap());
        let m = colored(4, &[(0, 1, 1), (2, 3, 1)]);
        assert!(contains_mono_copy(&m, &[two], 1).unwrap());
    }

    #[test]
    fn anchored_search_uses_the_edge() {
        let b = colored(5, &[(0, 1, 1), (1, 2, 1), (3, 4, 1)]);
        let pat = Pattern::new(&Graph::path(2));
        assert!(find_mono_copy_through(&b, &pat, 1, 3, 4).is_none());
        let w = find_mono_copy_through(&b, &pat, 1, 0, 1).unwrap();
        assert!(is_mono_witness(&b, &pat, 1, &w));
    }

    #[test]
    fn agrees_with_brute_force_on_random_boards() {
        let targets = [
            Graph::path(2),
            Graph::path(3),
            Graph::clique(3),
            Graph::star(3),
            Graph::cycle(4),
            Graph::from_edges(4, &[(0, 1), (2, 3)]).unwrap(),
        ];
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for trial in 0..300 {
            let n = rng.gen_range(2..=if trial < 250 { 6 } else { 8 });
            let mut b = ColoredGraph::new(n);
            for u in 0..n as Vertex {
                for v in u + 1..n as Vertex {
                    if rng.gen_bool(0.5) {
                        b.add_edge(u, v, rng.gen_range(1..=2)).unwrap();
                    }
                }
            }
            for t in &targets {
                for c in 1..=2 {
                    let fast = find_mono_copy(&b, &Pattern::new(t), c);
                    assert_eq!(fast.is_some(), brute_force(&b, t, c));
                    if let Some(w) = fast {
                        assert!(is_mono_witness(&b, &Pattern::new(t), c, &w));
                    }
                }
            }
        }
    }

    #[test]
    fn virtual_edge_matches_real_insertion() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let pats = [Pattern::new(&Graph::path(2)), Pattern::new(&Graph::cycle(3)), Pattern::new(&Graph::path(3))];
        for _ in 0..300 {
            let n = rng.gen_range(3..8);
            let mut b = ColoredGraph::new(n);
            for u in 0..n as Vertex {
                for v in u + 1..n as Vertex {
                    if rng.gen_bool(0.4) {
                        b.add_edge(u, v, rng.gen_range(1..=2)).unwrap();
                    }
                }
            }
            let (u, v) = (rng.gen_range(0..n as Vertex), rng.gen_range(0..n as Vertex));
            if u == v || b.has_edge(u, v) {
                continue;
            }
            for p in &pats {
                for c in 1..=2 {
                    let virt = closes_mono_copy(&b, p, c, u, v);
                    let mut real = b.clone();
                    real.add_edge(u, v, c).unwrap();
                    assert_eq!(virt, find_mono_copy_through(&real, p, c, u, v).is_some());
                }
            }
        }
    }
}
