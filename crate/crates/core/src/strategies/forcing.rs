//! Forcing a monochromatic tree on a forest.
//!
//! Spiders (trees with at most one vertex of degree three or more) are forced with
//! two colors by a join program built from three kinds of pieces, all kept pruned
//! to fixed shapes:
//!
//! * a *ray* is a monochromatic path of length `t` rooted at an end;
//! * a *universal vertex* starts a red and a blue path of length `t`, so joining it
//!   to a center hands the center a leg of length `t + 1` in whatever color Painter
//!   picks;
//! * an *object* of color `c` is a `c`-ray root that has collected `c`-legs and a
//!   path of the other color. Joining two objects either gives the first one more
//!   legs or lengthens its other-color path, so growing them ends in a universal
//!   vertex or in a full spider. A ray of the other color turns any object into a
//!   universal vertex at once.
//!
//! A center joined to `2m - 1` universal vertices then has `m` legs of one color.

use crate::error::{Error, Result};
use crate::game::program::{Branch, CallBranch, ProgNode, ProgramBuilder, ProgramCertificate, Skeleton};
use crate::game::staged::{Gadget, StagedCertificate, TemplateNode};
use crate::game::{BuilderCertificate, GameConfig, Restriction, Target};
use crate::graph::{Color, ColoredGraph, Graph, Vertex};
use crate::rational::Rational;
use crate::solver::k_star_exact;
use std::collections::HashMap;

use super::builders::Construction;

const RED: Color = 1;
const BLUE: Color = 2;

fn other(c: Color) -> Color {
    3 - c
}

/// A rooted tree made of paths leaving vertex 0. Arm `k` uses consecutive vertex ids.
fn arms_graph(arms: &[(Color, usize)]) -> ColoredGraph {
    let n = 1 + arms.iter().map(|a| a.1).sum::<usize>();
    let mut g = ColoredGraph::new(n);
    let mut next = 1;
    for &(c, len) in arms {
        let mut prev = 0;
        for _ in 0..len {
            g.add_edge(prev, next, c).unwrap();
            prev = next;
            next += 1;
        }
    }
    g
}

/// Vertex ids of every arm, outward from the root, shifted by `off`.
fn arm_vertices(arms: &[(Color, usize)], off: Vertex) -> Vec<Vec<Vertex>> {
    let mut next = 1;
    arms.iter()
        .map(|&(_, len)| {
            let a = (next..next + len as Vertex).map(|v| v + off).collect();
            next += len as Vertex;
            a
        })
        .collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
enum Shape {
    Ray(Color, usize),
    Uni,
    /// Color, legs, length of the other-color path.
    Obj(Color, usize, usize),
    Center(usize, usize),
    Win(Color),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
enum Proc {
    RayS(usize, usize),
    Ray,
    Obj(Color, usize),
    Uni,
    Main,
}

/// Builds the spider program for `m` legs of length at most `h`.
struct Spider {
    pb: ProgramBuilder,
    m: usize,
    h: usize,
    t: usize,
    shapes: HashMap<Shape, Skeleton>,
    procs: HashMap<Proc, u32>,
}

/// Nodes of one procedure under construction.
struct Nodes {
    p: u32,
}

impl Spider {
    fn arms(&self, s: Shape) -> Vec<(Color, usize)> {
        let (t, h) = (self.t, self.h);
        match s {
            Shape::Ray(_, 0) => vec![],
            Shape::Ray(c, a) => vec![(c, a)],
            Shape::Uni => vec![(RED, t), (BLUE, t)],
            Shape::Obj(c, legs, b) => {
                let mut v = vec![(c, t)];
                v.extend(std::iter::repeat((c, h)).take(legs));
                if b > 0 {
                    v.push((other(c), b));
                }
                v
            }
            Shape::Center(i, j) => {
                let mut v = vec![(RED, h); i];
                v.extend(std::iter::repeat((BLUE, h)).take(j));
                v
            }
            Shape::Win(c) => vec![(c, h); self.m],
        }
    }

    fn shape(&mut self, s: Shape) -> Skeleton {
        if let Some(k) = self.shapes.get(&s) {
            return k.clone();
        }
        let k = self.pb.skeleton(arms_graph(&self.arms(s)));
        self.shapes.insert(s, k.clone());
        k
    }

    fn id(&mut self, s: Shape) -> u32 {
        self.shape(s).id
    }

    fn node(&mut self, n: &Nodes) -> u32 {
        self.pb.reserve(n.p)
    }

    fn put(&mut self, n: &Nodes, i: u32, node: ProgNode) {
        self.pb.set(n.p, i, node);
    }

    fn leaf(&mut self, n: &Nodes, node: ProgNode) -> u32 {
        let i = self.node(n);
        self.put(n, i, node);
        i
    }

    fn yield_(&mut self, n: &Nodes, s: Shape) -> u32 {
        let tree = self.id(s);
        self.leaf(n, ProgNode::Yield { tree })
    }

    fn call(&mut self, n: &Nodes, at: u32, procedure: u32, branches: Vec<(Shape, u32)>) {
        let mut seen = Vec::new();
        let mut out = Vec::new();
        for (s, next) in branches {
            let tree = self.id(s);
            if !seen.contains(&tree) {
                seen.push(tree);
                out.push(CallBranch { tree, next });
            }
        }
        self.put(n, at, ProgNode::Call { procedure, branches: out });
    }

    /// Joins the roots of `a` and `b`; `result(c)` names the pruned shape, its arms as
    /// vertex lists in the joined naming (`b` shifted by `|a|`), and the next node.
    fn join(&mut self, n: &Nodes, at: u32, a: Shape, b: Shape, mut result: impl FnMut(&mut Self, Color, Vertex) -> (Shape, Vec<Vec<Vertex>>, Vertex, u32)) {
        let (ka, kb) = (self.shape(a), self.shape(b));
        let na = ka.graph.vertex_count() as Vertex;
        let mut branches = Vec::new();
        for c in [RED, BLUE] {
            let (s, arms, root, next) = result(self, c, na);
            let mut keep = vec![root];
            for arm in arms {
                keep.extend(arm);
            }
            let (keep, sk) = self.pb.join(&ka, 0, &kb, 0, c, &keep);
            debug_assert_eq!(sk.id, self.id(s), "{s:?}");
            branches.push(Branch { result: sk.id, keep, next });
        }
        let (ra, rb) = (ProgramBuilder::tree_ref(&ka, 0), ProgramBuilder::tree_ref(&kb, 0));
        self.put(n, at, ProgNode::Join { a: ra, b: rb, branches });
    }

    fn arms_of(&self, s: Shape, off: Vertex) -> Vec<Vec<Vertex>> {
        arm_vertices(&self.arms(s), off)
    }

    fn new_proc(&mut self, key: Proc) -> Nodes {
        let p = self.pb.add_procedure();
        self.procs.insert(key, p);
        Nodes { p }
    }

    /// Yields a red ray of length `a` or a blue ray of length `b`.
    fn ray_s(&mut self, a: usize, b: usize) -> u32 {
        let key = Proc::RayS(a, b);
        if let Some(&p) = self.procs.get(&key) {
            return p;
        }
        if a == 0 || b == 0 {
            let n = self.new_proc(key);
            self.yield_(&n, Shape::Ray(RED, 0));
            return n.p;
        }
        let first = self.ray_s(a, b - 1);
        let second = self.ray_s(a - 1, b);
        let n = self.new_proc(key);
        let n0 = self.node(&n);
        let n1 = self.node(&n);
        let n2 = self.node(&n);
        let y_red = self.yield_(&n, Shape::Ray(RED, a));
        let y_blue = self.yield_(&n, Shape::Ray(BLUE, b));
        self.call(&n, n0, first, vec![(Shape::Ray(RED, a), y_red), (Shape::Ray(BLUE, b - 1), n1)]);
        self.call(&n, n1, second, vec![(Shape::Ray(BLUE, b), y_blue), (Shape::Ray(RED, a - 1), n2)]);
        // the red ray's root ends up inside whichever path Painter extends
        self.join(&n, n2, Shape::Ray(RED, a - 1), Shape::Ray(BLUE, b - 1), |s, c, na| {
            let x = s.arms_of(Shape::Ray(RED, a - 1), 0).concat();
            let y = s.arms_of(Shape::Ray(BLUE, b - 1), na).concat();
            if c == RED {
                let arm = std::iter::once(0).chain(x).collect();
                (Shape::Ray(RED, a), vec![arm], na, y_red)
            } else {
                let arm = std::iter::once(na).chain(y).collect();
                (Shape::Ray(BLUE, b), vec![arm], 0, y_blue)
            }
        });
        n.p
    }

    /// Yields a ray of length `t` in either color, trying to grow one path first.
    fn ray(&mut self) -> u32 {
        if let Some(&p) = self.procs.get(&Proc::Ray) {
            return p;
        }
        let t = self.t;
        let fallback = self.ray_s(t, t);
        let n = self.new_proc(Proc::Ray);
        let start = self.node(&n);
        let back = self.node(&n);
        let y_red = self.yield_(&n, Shape::Ray(RED, t));
        let y_blue = self.yield_(&n, Shape::Ray(BLUE, t));
        self.call(&n, back, fallback, vec![(Shape::Ray(RED, t), y_red), (Shape::Ray(BLUE, t), y_blue)]);
        // grow[c][a] holds a color-c path of length a
        let mut grow = [vec![0u32; t + 1], vec![0u32; t + 1]];
        for c in [RED, BLUE] {
            grow[c as usize - 1][t] = if c == RED { y_red } else { y_blue };
            for a in 1..t {
                grow[c as usize - 1][a] = self.node(&n);
            }
        }
        let k1 = Shape::Ray(RED, 0);
        for c in [RED, BLUE] {
            for a in 1..t {
                let at = grow[c as usize - 1][a];
                let up = grow[c as usize - 1][a + 1];
                self.join(&n, at, Shape::Ray(c, a), k1, |s, col, na| {
                    if col == c {
                        let arm = std::iter::once(0).chain(s.arms_of(Shape::Ray(c, a), 0).concat()).collect();
                        (Shape::Ray(c, a + 1), vec![arm], na, up)
                    } else {
                        (k1, vec![], na, back)
                    }
                });
            }
        }
        let g = grow.clone();
        self.join(&n, start, k1, k1, |_, c, na| (Shape::Ray(c, 1), vec![vec![0]], na, g[c as usize - 1][1]));
        n.p
    }

    /// Yields an object of color `c` whose other-color path has length `b`, a universal
    /// vertex, or a ray of the other color; may also reach the goal.
    fn obj(&mut self, c: Color, b: usize) -> u32 {
        let key = Proc::Obj(c, b);
        if let Some(&p) = self.procs.get(&key) {
            return p;
        }
        let (m, t) = (self.m, self.t);
        let d = other(c);
        if b == 0 {
            let ray = self.ray();
            let n = self.new_proc(key);
            let at = self.node(&n);
            let y0 = self.yield_(&n, Shape::Ray(c, t));
            let y1 = self.yield_(&n, Shape::Ray(d, t));
            self.call(&n, at, ray, vec![(Shape::Ray(c, t), y0), (Shape::Ray(d, t), y1)]);
            return n.p;
        }
        let sub = self.obj(c, b - 1);
        let n = self.new_proc(key);
        let start = self.node(&n);
        let y_uni = self.yield_(&n, Shape::Uni);
        let y_ray = self.yield_(&n, Shape::Ray(d, t));
        let held: Vec<u32> = (0..m).map(|_| self.node(&n)).collect();
        let mut first = vec![(Shape::Uni, y_uni), (Shape::Ray(d, t), y_ray)];
        first.extend((0..m).map(|l| (self.obj_shape(c, l, b - 1), held[l])));
        self.call(&n, start, sub, first);
        let win = self.leaf_goal(&n, c);
        for l in 0..m {
            let x = self.obj_shape(c, l, b - 1);
            let with_ray = self.node(&n);
            let pairs: Vec<u32> = (0..m).map(|_| self.node(&n)).collect();
            let mut second = vec![(Shape::Uni, y_uni), (Shape::Ray(d, t), with_ray)];
            second.extend((0..m).map(|l2| (self.obj_shape(c, l2, b - 1), pairs[l2])));
            self.call(&n, held[l], sub, second);
            // an object and a ray of the other color make a universal vertex
            self.join(&n, with_ray, x, Shape::Ray(d, t), |s, col, na| {
                let xa = s.arms_of(x, 0);
                let ya = s.arms_of(Shape::Ray(d, t), na).concat();
                let (root, c_arm, d_arm) = if col == c {
                    (na, std::iter::once(0).chain(xa[0][..t - 1].iter().copied()).collect(), ya)
                } else {
                    (0, xa[0].clone(), std::iter::once(na).chain(ya[..t - 1].iter().copied()).collect())
                };
                let arms = if c == RED { vec![c_arm, d_arm] } else { vec![d_arm, c_arm] };
                (Shape::Uni, arms, root, y_uni)
            });
            let more_legs = if l + 1 == m { win } else { held[l + 1] };
            let done_b = b == t;
            let y_obj = if done_b { y_uni } else { self.node_yield_obj(&n, c, l, b) };
            for l2 in 0..m {
                let y = self.obj_shape(c, l2, b - 1);
                self.join(&n, pairs[l2], x, y, |s, col, na| {
                    let xa = s.arms_of(x, 0);
                    let ya = s.arms_of(y, na);
                    if col == c {
                        let leg: Vec<Vertex> = std::iter::once(na).chain(ya[0].iter().copied()).collect();
                        if l + 1 == m {
                            let mut arms: Vec<Vec<Vertex>> = xa[1..1 + l].to_vec();
                            arms.push(leg);
                            (Shape::Win(c), arms, 0, more_legs)
                        } else {
                            let mut arms: Vec<Vec<Vertex>> = xa[..1 + l].to_vec();
                            arms.push(leg);
                            arms.extend(xa[1 + l..].iter().cloned());
                            (s.obj_shape(c, l + 1, b - 1), arms, 0, more_legs)
                        }
                    } else {
                        let tail: Vec<Vertex> = if b > 1 { ya[1 + l2].clone() } else { vec![] };
                        let d_arm: Vec<Vertex> = std::iter::once(na).chain(tail).collect();
                        if done_b {
                            let arms = if c == RED { vec![xa[0].clone(), d_arm] } else { vec![d_arm, xa[0].clone()] };
                            (Shape::Uni, arms, 0, y_obj)
                        } else {
                            let mut arms: Vec<Vec<Vertex>> = xa[..1 + l].to_vec();
                            arms.push(d_arm);
                            (Shape::Obj(c, l, b), arms, 0, y_obj)
                        }
                    }
                });
            }
        }
        n.p
    }

    fn node_yield_obj(&mut self, n: &Nodes, c: Color, l: usize, b: usize) -> u32 {
        let s = self.obj_shape(c, l, b);
        self.yield_(n, s)
    }

    fn obj_shape(&self, c: Color, l: usize, b: usize) -> Shape {
        if l == 0 && b == 0 {
            Shape::Ray(c, self.t)
        } else {
            Shape::Obj(c, l, b)
        }
    }

    fn leaf_goal(&mut self, n: &Nodes, c: Color) -> u32 {
        let tree = self.id(Shape::Win(c));
        self.leaf(n, ProgNode::Goal { tree, color: c })
    }

    /// Yields a universal vertex (or reaches the goal).
    fn uni(&mut self) -> u32 {
        if let Some(&p) = self.procs.get(&Proc::Uni) {
            return p;
        }
        let t = self.t;
        let red = self.obj(RED, t);
        let blue = self.obj(BLUE, t);
        let n = self.new_proc(Proc::Uni);
        let n0 = self.node(&n);
        let n1 = self.node(&n);
        let n2 = self.node(&n);
        let y = self.yield_(&n, Shape::Uni);
        self.call(&n, n0, red, vec![(Shape::Uni, y), (Shape::Ray(BLUE, t), n1)]);
        self.call(&n, n1, blue, vec![(Shape::Uni, y), (Shape::Ray(RED, t), n2)]);
        self.join(&n, n2, Shape::Ray(BLUE, t), Shape::Ray(RED, t), |s, c, na| {
            let x = s.arms_of(Shape::Ray(BLUE, t), 0).concat();
            let z = s.arms_of(Shape::Ray(RED, t), na).concat();
            if c == RED {
                let red_arm = std::iter::once(na).chain(z[..t - 1].iter().copied()).collect();
                (Shape::Uni, vec![red_arm, x], 0, y)
            } else {
                let blue_arm = std::iter::once(0).chain(x[..t - 1].iter().copied()).collect();
                (Shape::Uni, vec![z, blue_arm], na, y)
            }
        });
        n.p
    }

    fn main(&mut self) -> u32 {
        let m = self.m;
        let uni = if self.t > 0 { Some(self.uni()) } else { None };
        let partner = if self.t > 0 { Shape::Uni } else { Shape::Ray(RED, 0) };
        let n = self.new_proc(Proc::Main);
        let mut at = vec![vec![(0u32, 0u32); m]; m];
        for row in at.iter_mut() {
            for cell in row.iter_mut() {
                *cell = (self.node(&n), if uni.is_some() { self.node(&n) } else { 0 });
            }
        }
        // the entry node must come first
        debug_assert_eq!(at[0][0].0, 0);
        let win = [self.leaf_goal(&n, RED), self.leaf_goal(&n, BLUE)];
        for i in 0..m {
            for j in 0..m {
                let (call_at, join_at) = at[i][j];
                let join_at = match uni {
                    Some(u) => {
                        self.call(&n, call_at, u, vec![(Shape::Uni, join_at)]);
                        join_at
                    }
                    None => call_at,
                };
                let centre = Shape::Center(i, j);
                let ca = at.clone();
                self.join(&n, join_at, centre, partner, |s, c, na| {
                    let xa = s.arms_of(centre, 0);
                    let pa = s.arms_of(partner, na);
                    // a universal partner lists its red arm first
                    let arm = pa.get(c as usize - 1).cloned().unwrap_or_default();
                    let leg: Vec<Vertex> = std::iter::once(na).chain(arm).collect();
                    let (reds, blues) = xa.split_at(i);
                    if c == RED {
                        if i + 1 == m {
                            let mut arms = reds.to_vec();
                            arms.push(leg);
                            return (Shape::Win(RED), arms, 0, win[0]);
                        }
                        let mut arms = reds.to_vec();
                        arms.push(leg);
                        arms.extend(blues.iter().cloned());
                        (Shape::Center(i + 1, j), arms, 0, ca[i + 1][j].0)
                    } else {
                        if j + 1 == m {
                            let mut arms = blues.to_vec();
                            arms.push(leg);
                            return (Shape::Win(BLUE), arms, 0, win[1]);
                        }
                        let mut arms = xa.to_vec();
                        arms.push(leg);
                        (Shape::Center(i, j + 1), arms, 0, ca[i][j + 1].0)
                    }
                });
            }
        }
        n.p
    }
}

/// Reverses procedure numbers so the entry is 0 and calls go to higher numbers.
fn renumber(pb: &mut ProgramBuilder) {
    let n = pb.procedures.len() as u32;
    pb.procedures.reverse();
    for p in pb.procedures.iter_mut() {
        for node in p.nodes.iter_mut() {
            if let ProgNode::Call { procedure, .. } = node {
                *procedure = n - 1 - *procedure;
            }
        }
    }
}

/// The center and leg lengths of a spider, choosing the middle of a path.
pub fn spider_legs(t: &Graph) -> Option<(Vertex, Vec<usize>)> {
    if t.edge_count() == 0 || !t.is_connected() || !t.is_forest() {
        return None;
    }
    let n = t.vertex_count() as Vertex;
    let high: Vec<Vertex> = (0..n).filter(|&v| t.degree(v) >= 3).collect();
    let center = match high.len() {
        0 => {
            // a path: start from an end and walk halfway
            let mut prev = None;
            let mut v = (0..n).find(|&v| t.degree(v) <= 1)?;
            for _ in 0..t.edge_count().div_ceil(2) {
                let next = *t.neighbors(v).iter().find(|&&w| Some(w) != prev)?;
                prev = Some(v);
                v = next;
            }
            v
        }
        1 => high[0],
        _ => return None,
    };
    let legs = t
        .neighbors(center)
        .iter()
        .map(|&first| {
            let (mut prev, mut v, mut len) = (center, first, 1);
            while t.degree(v) == 2 {
                let next = *t.neighbors(v).iter().find(|&&w| w != prev).unwrap();
                prev = v;
                v = next;
                len += 1;
            }
            len
        })
        .collect();
    Some((center, legs))
}

/// Join program forcing a monochromatic copy of `goal`, a spider, with two colors.
pub fn spider_program(goal: &Graph) -> Result<ProgramCertificate> {
    let (_, legs) = spider_legs(goal).ok_or_else(|| Error::Domain("the goal is not a spider".into()))?;
    let m = legs.len();
    let h = *legs.iter().max().unwrap();
    let mut s = Spider { pb: ProgramBuilder::new(2), m, h, t: h - 1, shapes: HashMap::new(), procs: HashMap::new() };
    s.main();
    renumber(&mut s.pb);
    Ok(s.pb.finish(goal.clone()))
}

/// Wraps a forcing program as a staged certificate that stops at the forced copy.
pub fn program_as_staged(forcing: ProgramCertificate) -> StagedCertificate {
    let r = forcing.r;
    let all: Vec<Vertex> = (0..forcing.goal.vertex_count() as Vertex).collect();
    let templates = (1..=r).map(|c| TemplateNode::Leaf { win_color: c, witness_vertices: all.clone() }).collect();
    StagedCertificate { r, gadget: Gadget { forcing, templates }, finale: None }
}

/// Largest tree the exact solver is asked about.
const EXACT_EDGES: usize = 3;
const EXACT_CAP: u32 = 12;

/// A Builder strategy forcing a monochromatic copy of the tree `t` on a forest.
///
/// Small trees use the exact solver, which also minimizes the component size;
/// larger spiders with two colors use the spider program. Other trees are not
/// supported.
pub fn force_tree(t: &Graph, r: Color) -> Result<Construction> {
    if t.edge_count() == 0 || !t.is_connected() || !t.is_forest() {
        return Err(Error::Domain("force_tree needs a tree with at least one edge".into()));
    }
    if r < 2 {
        return Err(Error::Domain("force_tree needs r >= 2".into()));
    }
    let target = Target::from_graph(t.clone());
    if t.edge_count() <= EXACT_EDGES {
        let config = GameConfig::symmetric(target.clone(), r as usize, Restriction::TreeSize(EXACT_CAP))?;
        let res = k_star_exact(&config, EXACT_CAP)?;
        if let (Some(k), Some(cert)) = (res.k_star, res.builder_certificate) {
            let config = config.with_restriction(Restriction::TreeSize(k))?;
            return Ok(Construction { certificate: BuilderCertificate::Family(cert), config });
        }
    }
    if r == 2 && spider_legs(t).is_some() {
        let cert = program_as_staged(spider_program(t)?);
        let config = GameConfig::symmetric(target, 2, Restriction::Density(Rational::from_integer(1)))?;
        return Ok(Construction { certificate: BuilderCertificate::Staged(cert), config });
    }
    Err(Error::Domain(format!(
        "force_tree supports trees with at most {EXACT_EDGES} edges, or spiders with two colors"
    )))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::game::program::{play, verify};
    use crate::strategies::{const_painter, random_painter};

    fn spider(legs: &[usize]) -> Graph {
        let arms: Vec<(Color, usize)> = legs.iter().map(|&l| (RED, l)).collect();
        arms_graph(&arms).underlying()
    }

    #[test]
    fn legs_of_paths_and_spiders() {
        assert_eq!(spider_legs(&Graph::path(4)).map(|x| x.1.len()), Some(2));
        assert_eq!(spider_legs(&spider(&[3, 2, 3])).map(|x| x.1), Some(vec![3, 2, 3]));
        assert!(spider_legs(&Graph::cycle(4)).is_none());
    }

    #[test]
    fn spider_programs_verify_and_play() {
        let dens = Restriction::Density(Rational::from_integer(1));
        for legs in [vec![1], vec![1, 1, 1], vec![2, 2], vec![3, 2, 3, 2]] {
            let goal = spider(&legs);
            let cert = spider_program(&goal).unwrap();
            let (v, _) = verify(&cert, dens).unwrap();
            assert!(v.is_win(), "{legs:?}: {v:?}");
            for seed in 0..20 {
                let (reached, board) = play(&cert, &random_painter(seed, 2), 1 << 22).unwrap();
                assert!(board.underlying().is_forest());
                assert_eq!(reached.goal_vertices.len(), goal.vertex_count());
            }
            for c in [RED, BLUE] {
                play(&cert, &const_painter(c), 1 << 22).unwrap();
            }
        }
    }
}
