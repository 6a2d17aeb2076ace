//! Explicit Builder decision trees over global board vertices.

use super::{check_component, FailReason, GameConfig, Outcome, PainterStrategy, Table, Transcript, Verdict, VerifyStats};
use crate::embed::is_mono_witness;
use crate::error::{Error, Result};
use crate::graph::{Color, ColoredGraph, Vertex};
use crate::rational::Rational;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

/// A node of the decision tree. Internal nodes present `edge` and branch on its color.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum CertNode {
    Move {
        edge: [Vertex; 2],
        #[serde(with = "super::color_keys")]
        children: BTreeMap<Color, CertNode>,
    },
    Leaf { win_color: Color, witness_vertices: Vec<Vertex> },
}

impl CertNode {
    pub fn leaf(win_color: Color, witness_vertices: Vec<Vertex>) -> CertNode {
        CertNode::Leaf { win_color, witness_vertices }
    }

    /// Internal node with children for colors `1..=children.len()`.
    pub fn branch(u: Vertex, v: Vertex, children: Vec<CertNode>) -> CertNode {
        let children = children.into_iter().enumerate().map(|(i, n)| (i as Color + 1, n)).collect();
        CertNode::Move { edge: [u, v], children }
    }

    /// Largest vertex id mentioned anywhere below this node.
    pub fn max_vertex(&self) -> Option<Vertex> {
        match self {
            CertNode::Leaf { witness_vertices, .. } => witness_vertices.iter().copied().max(),
            CertNode::Move { edge, children } => {
                let below = children.values().filter_map(CertNode::max_vertex).max();
                Some(edge[0].max(edge[1]).max(below.unwrap_or(0)))
            }
        }
    }

    pub fn node_count(&self) -> u64 {
        match self {
            CertNode::Leaf { .. } => 1,
            CertNode::Move { children, .. } => 1 + children.values().map(CertNode::node_count).sum::<u64>(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExplicitCertificate {
    pub r: Color,
    pub root: CertNode,
}

impl ExplicitCertificate {
    pub fn board_size(&self) -> usize {
        self.root.max_vertex().map_or(0, |v| v as usize + 1)
    }
}

struct Walk<'a> {
    config: &'a GameConfig,
    board: ColoredGraph,
    path: Vec<Color>,
    stats: VerifyStats,
}

enum Step {
    Ok,
    Fail(Verdict),
}

impl Walk<'_> {
    fn fail(&self, reason: FailReason) -> Step {
        Step::Fail(Verdict::Fail { path: self.path.clone(), depth: self.board.edge_count(), reason })
    }

    fn structure(&self, reason: String) -> Error {
        Error::Structure { path: self.path.clone(), reason }
    }

    fn node(&mut self, node: &CertNode, density: Rational) -> Result<Step> {
        self.stats.nodes += 1;
        self.stats.max_density = self.stats.max_density.max(density);
        self.stats.max_depth = self.stats.max_depth.max(self.path.len());
        match node {
            CertNode::Leaf { win_color, witness_vertices } => {
                let c = *win_color;
                if c == 0 || c > self.config.r() {
                    return Err(self.structure(format!("leaf color {c} out of range")));
                }
                self.stats.leaves += 1;
                if is_mono_witness(&self.board, self.config.pattern(c), c, witness_vertices) {
                    Ok(Step::Ok)
                } else {
                    Ok(self.fail(FailReason::NonWinningLeaf(format!(
                        "vertices {witness_vertices:?} are not a copy of the color-{c} target"
                    ))))
                }
            }
            CertNode::Move { edge: [u, v], children } => {
                let (u, v) = (*u, *v);
                if u == v {
                    return Err(self.structure(format!("self-loop at {u}")));
                }
                if self.board.has_edge(u, v) {
                    return Err(self.structure(format!("edge ({u},{v}) presented twice")));
                }
                let r = self.config.r();
                if children.len() != r as usize || !(1..=r).all(|c| children.contains_key(&c)) {
                    return Err(self.structure(format!("node ({u},{v}) needs exactly one child per color 1..={r}")));
                }
                for (&c, child) in children {
                    self.board.add_edge(u, v, c)?;
                    self.path.push(c);
                    let step = match check_component(&self.board, u, self.config.restriction()) {
                        Err(why) => {
                            self.stats.max_depth = self.stats.max_depth.max(self.path.len());
                            self.fail(FailReason::IllegalBoard(why))
                        }
                        Ok(d) => self.node(child, density.max(d))?,
                    };
                    self.path.pop();
                    self.board.pop_edge();
                    if let Step::Fail(_) = step {
                        return Ok(step);
                    }
                }
                Ok(Step::Ok)
            }
        }
    }
}

pub fn verify(cert: &ExplicitCertificate, config: &GameConfig) -> Result<Verdict> {
    let mut w = Walk {
        config,
        board: ColoredGraph::new(cert.board_size()),
        path: Vec::new(),
        stats: VerifyStats { nodes: 0, leaves: 0, max_depth: 0, max_density: Rational::from_integer(0) },
    };
    Ok(match w.node(&cert.root, Rational::from_integer(0))? {
        Step::Ok => Verdict::Win(w.stats),
        Step::Fail(v) => v,
    })
}

pub fn play(cert: &ExplicitCertificate, painter: &dyn PainterStrategy, config: &GameConfig) -> Result<Transcript> {
    let mut table = Table::new(painter, config.r(), usize::MAX);
    table.board.ensure_vertices(cert.board_size());
    let mut node = &cert.root;
    let mut path = Vec::new();
    loop {
        match node {
            CertNode::Leaf { win_color, witness_vertices } => {
                let outcome = Outcome::Mono { color: *win_color, vertices: witness_vertices.clone() };
                return Ok(table.finish(outcome));
            }
            CertNode::Move { edge: [u, v], children } => {
                let c = table.present(*u, *v)?;
                path.push(c);
                node = children
                    .get(&c)
                    .ok_or_else(|| Error::Structure { path: path.clone(), reason: "missing child".into() })?;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::game::{Restriction, Target};
    use crate::rational::rat;

    /// Three edges at vertex 0, colors branching; leaves name two same-colored edges.
    fn star_s2() -> ExplicitCertificate {
        let mut leaves = Vec::new();
        for c1 in 1..=2u8 {
            let mut mid = Vec::new();
            for c2 in 1..=2u8 {
                if c1 == c2 {
                    mid.push(CertNode::leaf(c1, vec![1, 0, 2]));
                    continue;
                }
                let last: Vec<CertNode> = (1..=2u8)
                    .map(|c3| if c3 == c1 { CertNode::leaf(c3, vec![1, 0, 3]) } else { CertNode::leaf(c3, vec![2, 0, 3]) })
                    .collect();
                mid.push(CertNode::branch(0, 3, last));
            }
            leaves.push(CertNode::branch(0, 2, mid));
        }
        ExplicitCertificate { r: 2, root: CertNode::branch(0, 1, leaves) }
    }

    fn cfg(r: Restriction) -> GameConfig {
        GameConfig::symmetric(Target::named("path:2").unwrap(), 2, r).unwrap()
    }

    #[test]
    fn star_wins_at_three_and_fails_at_two() {
        let c = star_s2();
        let v = verify(&c, &cfg(Restriction::TreeSize(3))).unwrap();
        assert!(v.is_win(), "{v}");
        assert_eq!(v.stats().unwrap().max_density, rat(3, 4));
        match verify(&c, &cfg(Restriction::TreeSize(2))).unwrap() {
            Verdict::Fail { depth, reason: FailReason::IllegalBoard(_), .. } => assert_eq!(depth, 3),
            other => panic!("{other}"),
        }
    }

    #[test]
    fn bad_leaf_and_bad_structure() {
        let mut c = star_s2();
        if let CertNode::Move { children, .. } = &mut c.root {
            if let Some(CertNode::Move { children: m, .. }) = children.get_mut(&1) {
                m.insert(1, CertNode::leaf(1, vec![1, 0, 5]));
            }
        }
        match verify(&c, &cfg(Restriction::TreeSize(3))).unwrap() {
            Verdict::Fail { path, reason: FailReason::NonWinningLeaf(_), .. } => assert_eq!(path, vec![1, 1]),
            other => panic!("{other}"),
        }
        let dup = ExplicitCertificate {
            r: 2,
            root: CertNode::branch(0, 1, vec![CertNode::branch(1, 0, vec![CertNode::leaf(1, vec![]), CertNode::leaf(1, vec![])]), CertNode::leaf(2, vec![])]),
        };
        assert!(matches!(verify(&dup, &cfg(Restriction::TreeSize(3))), Err(Error::Structure { .. })));
        let short = ExplicitCertificate { r: 2, root: CertNode::branch(0, 1, vec![CertNode::leaf(1, vec![])]) };
        assert!(matches!(verify(&short, &cfg(Restriction::TreeSize(3))), Err(Error::Structure { .. })));
    }

    struct Const(Color);
    impl PainterStrategy for Const {
        fn decide(&self, _: &ColoredGraph, _: Vertex, _: Vertex) -> Color {
            self.0
        }
    }

    #[test]
    fn playout_follows_colors() {
        let c = star_s2();
        let t = play(&c, &Const(2), &cfg(Restriction::TreeSize(3))).unwrap();
        assert_eq!(t.moves.len(), 2);
        assert_eq!(t.outcome, Outcome::Mono { color: 2, vertices: vec![1, 0, 2] });
        assert!(play(&c, &Const(3), &cfg(Restriction::TreeSize(3))).is_err());
    }
}
