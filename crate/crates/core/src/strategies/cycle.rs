//! Density-restricted constructions for cycles and the bowtie.
//!
//! Builder first forces a monochromatic spider whose `ℓ(ℓ-1)` legs alternate
//! between lengths `h` and `h - 1` (`h = ℓ(ℓ-1)/2`). Joining the ends of successive
//! legs either closes a cycle of length `ℓ(ℓ-1)` through the center in the spider's
//! color, or, if Painter never uses that color, the joining edges form such a cycle
//! themselves. Chords between cycle vertices `ℓ - 1` apart then give a
//! monochromatic `C_ℓ` either way.

use super::builders::Construction;
use super::forcing::spider_program;
use crate::error::{Error, Result};
use crate::game::staged::{Finale, Gadget, StagedCertificate, TemplateNode};
use crate::game::{BuilderCertificate, GameConfig, Restriction, Target};
use crate::graph::{parse_graph_text, Color, Graph, Vertex};
use crate::rational::Rational;

fn other(c: Color) -> Color {
    3 - c
}

/// The phase spider as a graph, and the vertices of each leg from the center (0) out.
fn phase_spider(l: usize) -> (Graph, Vec<Vec<Vertex>>) {
    let m = l * (l - 1);
    let h = m / 2;
    let mut g = Graph::new(1);
    let mut legs = Vec::with_capacity(m);
    for k in 0..m {
        let len = if k % 2 == 0 { h } else { h - 1 };
        let mut prev = 0;
        let mut leg = Vec::with_capacity(len);
        for _ in 0..len {
            let v = g.add_vertex();
            g.add_edge(prev, v).unwrap();
            leg.push(v);
            prev = v;
        }
        legs.push(leg);
    }
    (g, legs)
}

/// How a finished monochromatic `C_ℓ` is reported.
#[derive(Clone, Copy)]
enum Finish {
    Leaf,
    /// Exit with the cycle; its first vertex is the port.
    Exit,
}

fn found(color: Color, cycle: Vec<Vertex>, finish: Finish) -> TemplateNode {
    match finish {
        Finish::Leaf => TemplateNode::Leaf { win_color: color, witness_vertices: cycle },
        Finish::Exit => TemplateNode::Exit { exit_color: color, exit_vertices: cycle },
    }
}

/// Chords of a monochromatic cycle `cy` of length `ℓ(ℓ-1)`, starting at position `s`.
fn chords(cy: &[Vertex], color: Color, l: usize, s: usize, finish: Finish) -> TemplateNode {
    let m = cy.len();
    let at = |i: usize| (s + i * (l - 1)) % m;
    let mut node = found(other(color), (0..l).map(|i| cy[at(i)]).collect(), finish);
    for i in (0..l).rev() {
        let (a, b) = (at(i), at(i + 1));
        // chord plus the arc it spans
        let arc: Vec<Vertex> = (0..l).map(|j| cy[(a + j) % m]).collect();
        let win = found(color, arc, finish);
        let mut children = vec![win, node];
        if color == 2 {
            children.reverse();
        }
        node = TemplateNode::branch(cy[a], cy[b], children);
    }
    node
}

/// Phase two and three for a spider copy of color `c`.
fn cycle_template(l: usize, c: Color, finish: Finish) -> TemplateNode {
    let (_, legs) = phase_spider(l);
    let m = legs.len();
    let leaf = |k: usize| *legs[k % m].last().unwrap();
    let start = l % 2;
    let cy: Vec<Vertex> = (0..m).map(leaf).collect();
    let mut node = chords(&cy, other(c), l, start, finish);
    for k in (0..m).rev() {
        // cycle through the center: out along leg k, back along leg k+1
        let mut through = vec![0];
        through.extend(&legs[k]);
        through.extend(legs[(k + 1) % m].iter().rev());
        let closed = chords(&through, c, l, 1 + start, finish);
        let mut children = vec![closed, node];
        if c == 2 {
            children.reverse();
        }
        node = TemplateNode::branch(leaf(k), leaf(k + 1), children);
    }
    node
}

fn cycle_gadget(l: usize, finish: Finish) -> Result<Gadget> {
    if l < 3 {
        return Err(Error::Domain("cycle constructions need l >= 3".into()));
    }
    let (spider, _) = phase_spider(l);
    let forcing = spider_program(&spider)?;
    let templates = [1, 2].into_iter().map(|c| cycle_template(l, c, finish)).collect();
    Ok(Gadget { forcing, templates })
}

/// Two-color strategy forcing a monochromatic `C_ℓ` with every board of density at
/// most `ℓ/(ℓ-1)`.
pub fn builder_cycle(l: usize) -> Result<Construction> {
    let gadget = cycle_gadget(l, Finish::Leaf)?;
    let cert = StagedCertificate { r: 2, gadget, finale: None };
    let cap = Rational::new(l as i64, l as i64 - 1);
    let config = GameConfig::symmetric(Target::named(&format!("cycle:{l}"))?, 2, Restriction::Density(cap))?;
    Ok(Construction { certificate: BuilderCertificate::Staged(cert), config })
}

/// Bowtie edges among six ports, in the order they are presented.
const BOWTIE: [(usize, usize); 7] = [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5), (2, 3)];

fn bowtie_finale(x: Color) -> TemplateNode {
    let port = |i: usize| (3 * i) as Vertex;
    let ports: Vec<Vertex> = (0..6).map(port).collect();
    let mut node = TemplateNode::Leaf { win_color: other(x), witness_vertices: ports };
    for &(i, j) in BOWTIE.iter().rev() {
        // two exit triangles joined at their ports
        let w = vec![port(i) + 1, port(i) + 2, port(i), port(j), port(j) + 1, port(j) + 2];
        let win = TemplateNode::Leaf { win_color: x, witness_vertices: w };
        let mut children = vec![win, node];
        if x == 2 {
            children.reverse();
        }
        node = TemplateNode::branch(port(i), port(j), children);
    }
    node
}

/// Two-color strategy forcing a monochromatic bowtie with density at most 61/36:
/// six triangles of one color from the cycle gadget, then a bowtie on their ports.
pub fn builder_bowtie() -> Result<Construction> {
    let gadget = cycle_gadget(3, Finish::Exit)?;
    let finale = Finale { copies: 6, exit_pattern: Graph::cycle(3), templates: vec![bowtie_finale(1), bowtie_finale(2)] };
    let cert = StagedCertificate { r: 2, gadget, finale: Some(finale) };
    let config = GameConfig::symmetric(Target::named("bowtie")?, 2, Restriction::Density(Rational::new(61, 36)))?;
    Ok(Construction { certificate: BuilderCertificate::Staged(cert), config })
}

const WITNESSES: &str = include_str!("../../data/bowtie_witnesses.txt");

/// The witness graphs `W1`, `W2` and `W2'` for the bowtie lower bound.
pub fn witness_graphs_bowtie() -> (Graph, Graph, Graph) {
    let gs: Vec<Graph> = WITNESSES
        .split("\n\n")
        .filter(|b| b.lines().any(|l| !l.trim().is_empty() && !l.trim_start().starts_with('#')))
        .map(|b| parse_graph_text(b).expect("bundled witness graph").underlying())
        .collect();
    assert_eq!(gs.len(), 3, "bundled witness file holds three graphs");
    let mut it = gs.into_iter();
    (it.next().unwrap(), it.next().unwrap(), it.next().unwrap())
}
