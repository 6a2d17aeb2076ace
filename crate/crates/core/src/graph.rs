//! Simple graphs, edge-colored graphs, named targets and the text format.

use crate::error::{Error, Result};
use std::collections::VecDeque;
use std::fmt::Write as _;

pub type Vertex = u32;
pub type Color = u8;

/// Default bound on target graph size. Boards are not bounded by this.
pub const DEFAULT_VERTEX_CAP: usize = 64;

fn norm(u: Vertex, v: Vertex) -> (Vertex, Vertex) {
    if u < v {
        (u, v)
    } else {
        (v, u)
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Graph {
    adj: Vec<Vec<Vertex>>,
    edges: Vec<(Vertex, Vertex)>,
}

impl Graph {
    pub fn new(n: usize) -> Self {
        Graph { adj: vec![Vec::new(); n], edges: Vec::new() }
    }

    pub fn from_edges(n: usize, edges: &[(Vertex, Vertex)]) -> Result<Self> {
        let mut g = Graph::new(n);
        for &(u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    pub fn vertex_count(&self) -> usize {
        self.adj.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Edges as `(min, max)` pairs in insertion order.
    pub fn edges(&self) -> &[(Vertex, Vertex)] {
        &self.edges
    }

    pub fn neighbors(&self, v: Vertex) -> &[Vertex] {
        &self.adj[v as usize]
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.adj[v as usize].len()
    }

    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        let (u, v) = (u as usize, v as usize);
        if u >= self.adj.len() || v >= self.adj.len() {
            return false;
        }
        let (a, b) = if self.adj[u].len() <= self.adj[v].len() { (u, v) } else { (v, u) };
        self.adj[a].contains(&(b as Vertex))
    }

    pub fn add_vertex(&mut self) -> Vertex {
        self.adj.push(Vec::new());
        (self.adj.len() - 1) as Vertex
    }

    pub fn add_edge(&mut self, u: Vertex, v: Vertex) -> Result<()> {
        let n = self.adj.len();
        if u as usize >= n || v as usize >= n {
            return Err(Error::Graph(format!("edge ({u},{v}) out of range for {n} vertices")));
        }
        if u == v {
            return Err(Error::Graph(format!("self-loop at {u}")));
        }
        if self.has_edge(u, v) {
            return Err(Error::Graph(format!("duplicate edge ({u},{v})")));
        }
        self.adj[u as usize].push(v);
        self.adj[v as usize].push(u);
        self.edges.push(norm(u, v));
        Ok(())
    }

    /// Connected components as sorted vertex lists, ordered by smallest vertex.
    pub fn components(&self) -> Vec<Vec<Vertex>> {
        let n = self.adj.len();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for s in 0..n {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            let mut comp = vec![s as Vertex];
            let mut q = VecDeque::from([s as Vertex]);
            while let Some(x) = q.pop_front() {
                for &y in &self.adj[x as usize] {
                    if !seen[y as usize] {
                        seen[y as usize] = true;
                        comp.push(y);
                        q.push_back(y);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    /// Subgraph induced by `vs`, relabeled to `0..vs.len()` in the given order.
    pub fn induced(&self, vs: &[Vertex]) -> Graph {
        let mut idx = vec![u32::MAX; self.adj.len()];
        for (i, &v) in vs.iter().enumerate() {
            idx[v as usize] = i as u32;
        }
        let mut g = Graph::new(vs.len());
        for &(u, v) in &self.edges {
            let (a, b) = (idx[u as usize], idx[v as usize]);
            if a != u32::MAX && b != u32::MAX {
                g.add_edge(a, b).expect("induced edge");
            }
        }
        g
    }

    /// Copy with isolated vertices removed; remaining vertices keep their order.
    pub fn without_isolated(&self) -> Graph {
        let keep: Vec<Vertex> =
            (0..self.adj.len() as Vertex).filter(|&v| !self.adj[v as usize].is_empty()).collect();
        self.induced(&keep)
    }

    pub fn is_forest(&self) -> bool {
        self.components().len() + self.edges.len() == self.adj.len()
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() <= 1
    }

    /// Disjoint union; the vertices of `other` are shifted by `self.vertex_count()`.
    pub fn disjoint_union(&self, other: &Graph) -> Graph {
        let off = self.adj.len() as Vertex;
        let mut g = self.clone();
        for _ in 0..other.vertex_count() {
            g.add_vertex();
        }
        for &(u, v) in &other.edges {
            g.add_edge(u + off, v + off).expect("union edge");
        }
        g
    }

    pub fn path(len: usize) -> Graph {
        let e: Vec<_> = (0..len as Vertex).map(|i| (i, i + 1)).collect();
        Graph::from_edges(len + 1, &e).unwrap()
    }

    pub fn cycle(len: usize) -> Graph {
        assert!(len >= 3, "cycles need at least 3 vertices");
        let n = len as Vertex;
        let e: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        Graph::from_edges(len, &e).unwrap()
    }

    /// Star with `leaves` edges; vertex 0 is the center.
    pub fn star(leaves: usize) -> Graph {
        let e: Vec<_> = (1..=leaves as Vertex).map(|i| (0, i)).collect();
        Graph::from_edges(leaves + 1, &e).unwrap()
    }

    pub fn clique(n: usize) -> Graph {
        let mut g = Graph::new(n);
        for u in 0..n as Vertex {
            for v in u + 1..n as Vertex {
                g.add_edge(u, v).unwrap();
            }
        }
        g
    }

    /// Two triangles sharing no vertex, joined by the edge (2,3).
    pub fn bowtie() -> Graph {
        Graph::from_edges(6, &[(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5), (2, 3)]).unwrap()
    }

    /// Parses `path:L`, `cycle:L`, `star:L`, `clique:L`, `bowtie` or `edge`.
    pub fn named(spec: &str) -> Result<Graph> {
        let spec = spec.trim();
        let bad = || Error::Parse(format!("unknown target {spec:?}"));
        if spec == "bowtie" {
            return Ok(Graph::bowtie());
        }
        if spec == "edge" {
            return Ok(Graph::path(1));
        }
        let (kind, arg) = spec.split_once(':').ok_or_else(bad)?;
        let l: usize = arg.trim().parse().map_err(|_| bad())?;
        let too_small = |min: usize| {
            if l < min {
                Err(Error::Parse(format!("{kind} needs parameter >= {min}")))
            } else {
                Ok(())
            }
        };
        match kind {
            "path" => too_small(1).map(|_| Graph::path(l)),
            "cycle" => too_small(3).map(|_| Graph::cycle(l)),
            "star" => too_small(1).map(|_| Graph::star(l)),
            "clique" => too_small(2).map(|_| Graph::clique(l)),
            _ => Err(bad()),
        }
    }
}

/// One colored edge record.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct ColoredEdge {
    pub u: Vertex,
    pub v: Vertex,
    pub color: Color,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ColoredGraph {
    adj: Vec<Vec<(Vertex, Color)>>,
    edges: Vec<ColoredEdge>,
}

impl ColoredGraph {
    pub fn new(n: usize) -> Self {
        ColoredGraph { adj: vec![Vec::new(); n], edges: Vec::new() }
    }

    pub fn vertex_count(&self) -> usize {
        self.adj.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[ColoredEdge] {
        &self.edges
    }

    pub fn neighbors(&self, v: Vertex) -> &[(Vertex, Color)] {
        &self.adj[v as usize]
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.adj[v as usize].len()
    }

    pub fn color_degree(&self, v: Vertex, c: Color) -> usize {
        self.adj[v as usize].iter().filter(|&&(_, k)| k == c).count()
    }

    pub fn edge_color(&self, u: Vertex, v: Vertex) -> Option<Color> {
        let (u, v) = (u as usize, v as usize);
        if u >= self.adj.len() || v >= self.adj.len() {
            return None;
        }
        let (a, b) = if self.adj[u].len() <= self.adj[v].len() { (u, v) } else { (v, u) };
        self.adj[a].iter().find(|&&(w, _)| w as usize == b).map(|&(_, c)| c)
    }

    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        self.edge_color(u, v).is_some()
    }

    pub fn add_vertex(&mut self) -> Vertex {
        self.adj.push(Vec::new());
        (self.adj.len() - 1) as Vertex
    }

    /// Grows the vertex set so that `0..n` exist.
    pub fn ensure_vertices(&mut self, n: usize) {
        if self.adj.len() < n {
            self.adj.resize(n, Vec::new());
        }
    }

    pub fn add_edge(&mut self, u: Vertex, v: Vertex, color: Color) -> Result<()> {
        let n = self.adj.len();
        if u as usize >= n || v as usize >= n {
            return Err(Error::Graph(format!("edge ({u},{v}) out of range for {n} vertices")));
        }
        if u == v {
            return Err(Error::Graph(format!("self-loop at {u}")));
        }
        if color == 0 {
            return Err(Error::Graph("color 0 is not a color".into()));
        }
        if self.has_edge(u, v) {
            return Err(Error::Graph(format!("duplicate edge ({u},{v})")));
        }
        self.adj[u as usize].push((v, color));
        self.adj[v as usize].push((u, color));
        let (u, v) = norm(u, v);
        self.edges.push(ColoredEdge { u, v, color });
        Ok(())
    }

    /// Removes the most recently added edge.
    pub fn pop_edge(&mut self) -> Option<ColoredEdge> {
        let e = self.edges.pop()?;
        let a = &mut self.adj[e.u as usize];
        let i = a.iter().rposition(|&(w, _)| w == e.v).unwrap();
        a.remove(i);
        let b = &mut self.adj[e.v as usize];
        let i = b.iter().rposition(|&(w, _)| w == e.u).unwrap();
        b.remove(i);
        Some(e)
    }

    pub fn underlying(&self) -> Graph {
        let mut g = Graph::new(self.adj.len());
        for e in &self.edges {
            g.add_edge(e.u, e.v).unwrap();
        }
        g
    }

    /// Subgraph spanned by the edges of one color, on the same vertex set.
    pub fn color_class(&self, c: Color) -> Graph {
        let mut g = Graph::new(self.adj.len());
        for e in self.edges.iter().filter(|e| e.color == c) {
            g.add_edge(e.u, e.v).unwrap();
        }
        g
    }

    /// Vertices of the component containing `v`, sorted.
    pub fn component_of(&self, v: Vertex) -> Vec<Vertex> {
        let mut seen = vec![false; self.adj.len()];
        seen[v as usize] = true;
        let mut comp = vec![v];
        let mut i = 0;
        while i < comp.len() {
            let x = comp[i];
            i += 1;
            for &(y, _) in &self.adj[x as usize] {
                if !seen[y as usize] {
                    seen[y as usize] = true;
                    comp.push(y);
                }
            }
        }
        comp.sort_unstable();
        comp
    }

    /// Uncolored subgraph induced by `vs`, relabeled in the given order.
    pub fn induced_uncolored(&self, vs: &[Vertex]) -> Graph {
        let mut idx = std::collections::HashMap::with_capacity(vs.len());
        for (i, &v) in vs.iter().enumerate() {
            idx.insert(v, i as Vertex);
        }
        let mut g = Graph::new(vs.len());
        for &v in vs {
            for &(w, _) in &self.adj[v as usize] {
                if v < w {
                    if let Some(&b) = idx.get(&w) {
                        g.add_edge(idx[&v], b).unwrap();
                    }
                }
            }
        }
        g
    }

    /// Colored subgraph induced by `vs`, relabeled in the given order.
    pub fn induced(&self, vs: &[Vertex]) -> ColoredGraph {
        let mut idx = std::collections::HashMap::with_capacity(vs.len());
        for (i, &v) in vs.iter().enumerate() {
            idx.insert(v, i as Vertex);
        }
        let mut g = ColoredGraph::new(vs.len());
        for &v in vs {
            for &(w, c) in &self.adj[v as usize] {
                if v < w {
                    if let Some(&b) = idx.get(&w) {
                        g.add_edge(idx[&v], b, c).unwrap();
                    }
                }
            }
        }
        g
    }
}

/// Parses the graph text format: first line `n`, then one edge `u v [c]` per line.
/// Blank lines and lines starting with `#` are skipped.
pub fn parse_graph_text(text: &str) -> Result<ColoredGraph> {
    let mut lines = text
        .lines()
        .map(str::trim)
        .enumerate()
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
    let (_, first) = lines.next().ok_or_else(|| Error::Parse("empty graph file".into()))?;
    let n: usize = first.parse().map_err(|_| Error::Parse(format!("bad vertex count {first:?}")))?;
    let mut g = ColoredGraph::new(n);
    for (no, line) in lines {
        let f: Vec<&str> = line.split_whitespace().collect();
        let num = |s: &str| -> Result<u32> {
            s.parse().map_err(|_| Error::Parse(format!("line {}: bad number {s:?}", no + 1)))
        };
        let (u, v, c) = match f.len() {
            2 => (num(f[0])?, num(f[1])?, 1),
            3 => (num(f[0])?, num(f[1])?, num(f[2])?),
            _ => return Err(Error::Parse(format!("line {}: expected `u v [c]`", no + 1))),
        };
        if c == 0 || c > u8::MAX as u32 {
            return Err(Error::Parse(format!("line {}: bad color {c}", no + 1)));
        }
        g.add_edge(u, v, c as u8).map_err(|e| Error::Parse(format!("line {}: {e}", no + 1)))?;
    }
    Ok(g)
}

pub fn write_graph_text(g: &ColoredGraph) -> String {
    let mut s = format!("{}\n", g.vertex_count());
    for e in g.edges() {
        writeln!(s, "{} {} {}", e.u, e.v, e.color).unwrap();
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_bad_edges() {
        let mut g = Graph::new(3);
        g.add_edge(0, 1).unwrap();
        assert!(g.add_edge(1, 0).is_err());
        assert!(g.add_edge(2, 2).is_err());
        assert!(g.add_edge(0, 3).is_err());
    }

    #[test]
    fn named_targets() {
        assert_eq!(Graph::named("path:3").unwrap().edge_count(), 3);
        assert_eq!(Graph::named("cycle:5").unwrap().edge_count(), 5);
        assert_eq!(Graph::named("star:4").unwrap().vertex_count(), 5);
        assert_eq!(Graph::named("clique:4").unwrap().edge_count(), 6);
        let b = Graph::named("bowtie").unwrap();
        assert_eq!((b.vertex_count(), b.edge_count()), (6, 7));
        assert_eq!(Graph::named("edge").unwrap().edge_count(), 1);
        assert!(Graph::named("cycle:2").is_err());
        assert!(Graph::named("wheel:5").is_err());
    }

    #[test]
    fn components_and_forests() {
        let g = Graph::from_edges(5, &[(0, 1), (3, 4)]).unwrap();
        assert_eq!(g.components(), vec![vec![0, 1], vec![2], vec![3, 4]]);
        assert!(g.is_forest());
        assert!(!Graph::cycle(4).is_forest());
        assert_eq!(g.without_isolated().vertex_count(), 4);
    }

    #[test]
    fn text_round_trip() {
        let g = parse_graph_text("4\n0 1 2\n# comment\n1 2\n").unwrap();
        assert_eq!(g.edge_color(1, 2), Some(1));
        assert_eq!(g.edge_color(0, 1), Some(2));
        let again = parse_graph_text(&write_graph_text(&g)).unwrap();
        assert_eq!(again, g);
        assert!(parse_graph_text("2\n0 2\n").is_err());
    }

    #[test]
    fn pop_edge_undoes_add() {
        let mut g = ColoredGraph::new(3);
        g.add_edge(0, 1, 1).unwrap();
        g.add_edge(1, 2, 2).unwrap();
        g.pop_edge();
        assert!(!g.has_edge(1, 2));
        assert_eq!(g.degree(1), 1);
    }
}
