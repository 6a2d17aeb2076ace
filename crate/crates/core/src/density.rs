//! Exact subgraph densities: m, m2, the online density recursion and exponent reports.

use crate::error::{Error, Result};
use crate::flow::FlowNetwork;
use crate::graph::{Graph, Vertex};
use crate::rational::{rat, Rational};

/// Largest component size accepted by the subset-enumeration oracle.
pub const BRUTE_FORCE_COMPONENT_LIMIT: usize = 16;
/// Largest target accepted by the subset recursions for m2 and the online density.
pub const TARGET_SUBSET_LIMIT: usize = 20;

/// Bit-mask edge counts for all subsets of a small vertex list.
fn subset_edge_counts(g: &Graph, verts: &[Vertex]) -> Vec<u32> {
    let k = verts.len();
    let mut pos = std::collections::HashMap::new();
    for (i, &v) in verts.iter().enumerate() {
        pos.insert(v, i);
    }
    let mut nbr = vec![0u64; k];
    for &(u, v) in g.edges() {
        if let (Some(&a), Some(&b)) = (pos.get(&u), pos.get(&v)) {
            nbr[a] |= 1 << b;
            nbr[b] |= 1 << a;
        }
    }
    let mut cnt = vec![0u32; 1 << k];
    for mask in 1usize..1 << k {
        let low = mask.trailing_zeros() as usize;
        let rest = mask & (mask - 1);
        cnt[mask] = cnt[rest] + (nbr[low] & rest as u64).count_ones();
    }
    cnt
}

/// Maximum of e(S)/|S| by enumerating the subsets of every component.
pub fn max_density_bruteforce(g: &Graph) -> Result<Rational> {
    if g.vertex_count() == 0 {
        return Err(Error::Domain("graph has no vertices".into()));
    }
    let mut best = rat(0, 1);
    for comp in g.components() {
        if comp.len() > BRUTE_FORCE_COMPONENT_LIMIT {
            return Err(Error::Size(format!(
                "component with {} vertices exceeds the oracle limit {BRUTE_FORCE_COMPONENT_LIMIT}",
                comp.len()
            )));
        }
        let cnt = subset_edge_counts(g, &comp);
        for (mask, &e) in cnt.iter().enumerate().skip(1) {
            let d = rat(e as i64, (mask as u64).count_ones() as i64);
            if d > best {
                best = d;
            }
        }
    }
    Ok(best)
}

/// Best vertex set for `q * e(S) - p * |S|`, optionally forcing one vertex in or out.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Closure {
    pub gain: i64,
    pub edges: usize,
    pub vertices: Vec<Vertex>,
}

/// Maximizes `q * e(S) - p * |S|` over vertex sets `S` by one min cut (`p, q > 0`).
/// Without forcing, the empty set (gain 0) is always a candidate.
pub fn max_closure(g: &Graph, p: i64, q: i64, forced_in: Option<Vertex>, forced_out: Option<Vertex>) -> Closure {
    let n = g.vertex_count();
    let m = g.edge_count();
    let inf = i64::MAX / 4;
    // nodes: 0 source, 1 sink, 2.. edges, 2+m.. vertices
    let mut net = FlowNetwork::new(2 + m + n);
    for (i, &(u, v)) in g.edges().iter().enumerate() {
        net.add_arc(0, 2 + i, q);
        net.add_arc(2 + i, 2 + m + u as usize, inf);
        net.add_arc(2 + i, 2 + m + v as usize, inf);
    }
    for v in 0..n {
        net.add_arc(2 + m + v, 1, p);
    }
    if let Some(v) = forced_in {
        net.add_arc(0, 2 + m + v as usize, inf);
    }
    if let Some(v) = forced_out {
        net.add_arc(2 + m + v as usize, 1, inf);
    }
    let cut = net.max_flow(0, 1);
    let side = net.source_side(0);
    let vertices: Vec<Vertex> = (0..n as Vertex).filter(|&v| side[2 + m + v as usize]).collect();
    let edges = g.edges().iter().filter(|&&(u, v)| side[2 + m + u as usize] && side[2 + m + v as usize]).count();
    let gain = q * edges as i64 - p * vertices.len() as i64;
    debug_assert_eq!(gain, q * m as i64 - cut);
    Closure { gain, edges, vertices }
}

/// Densest subgraph by Dinkelbach iteration over a min-cut closure problem.
/// Returns the density and the largest vertex set attaining it (empty when `g` has no edges).
pub fn densest_subgraph(g: &Graph) -> (Rational, Vec<Vertex>) {
    let n = g.vertex_count();
    let m = g.edge_count();
    if m == 0 {
        return (rat(0, 1), Vec::new());
    }
    let inf = i64::MAX / 4;
    let mut lambda = rat(m as i64, n as i64);
    loop {
        let (p, q) = (*lambda.numer(), *lambda.denom());
        let c = max_closure(g, p, q, None, None);
        if c.gain > 0 {
            lambda = rat(c.edges as i64, c.vertices.len() as i64);
            continue;
        }
        // lambda is optimal; the maximal optimal closure avoids everything that reaches the sink
        let mut net = FlowNetwork::new(2 + m + n);
        for (i, &(u, v)) in g.edges().iter().enumerate() {
            net.add_arc(0, 2 + i, q);
            net.add_arc(2 + i, 2 + m + u as usize, inf);
            net.add_arc(2 + i, 2 + m + v as usize, inf);
        }
        for v in 0..n {
            net.add_arc(2 + m + v, 1, p);
        }
        net.max_flow(0, 1);
        let reach = net.sink_reachers(1);
        let s: Vec<Vertex> = (0..n as Vertex).filter(|&v| !reach[2 + m + v as usize]).collect();
        return (lambda, s);
    }
}

pub fn max_density(g: &Graph) -> Rational {
    densest_subgraph(g).0
}

/// m2(F): maximum of (e_H - 1)/(v_H - 2) over subgraphs on at least 3 vertices. Targets whose
/// edges all sit in 2-vertex components get 1/2.
pub fn m2(f: &Graph) -> Result<Rational> {
    if f.edge_count() == 0 {
        return Err(Error::Domain("m2 needs a graph with at least one edge".into()));
    }
    if f.components().iter().all(|c| c.len() <= 2) {
        return Ok(rat(1, 2));
    }
    let verts: Vec<Vertex> = (0..f.vertex_count() as Vertex).collect();
    if verts.len() > TARGET_SUBSET_LIMIT {
        return Err(Error::Size(format!("target with {} vertices is too large", verts.len())));
    }
    let cnt = subset_edge_counts(f, &verts);
    let mut best: Option<Rational> = None;
    for (mask, &e) in cnt.iter().enumerate() {
        let v = (mask as u64).count_ones() as i64;
        if v >= 3 {
            let d = rat(e as i64 - 1, v - 2);
            if best.map_or(true, |b| d > b) {
                best = Some(d);
            }
        }
    }
    Ok(best.unwrap())
}

/// One level of the online density recursion with its maximizing vertex set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OnlineLevel {
    pub value: Rational,
    pub maximizer: Vec<Vertex>,
}

/// Levels `1..=r` of the online density recursion. Ties between maximizers go to the fewest
/// vertices, then the lexicographically smallest vertex list.
pub fn m2_onl_levels(f: &Graph, r: usize) -> Result<Vec<OnlineLevel>> {
    if r == 0 {
        return Err(Error::Domain("r must be at least 1".into()));
    }
    if f.edge_count() == 0 {
        return Err(Error::Domain("online density needs at least one edge".into()));
    }
    let verts: Vec<Vertex> = (0..f.vertex_count() as Vertex).collect();
    if verts.len() > TARGET_SUBSET_LIMIT {
        return Err(Error::Size(format!("target with {} vertices is too large", verts.len())));
    }
    let cnt = subset_edge_counts(f, &verts);
    let members = |mask: usize| -> Vec<Vertex> { (0..verts.len() as Vertex).filter(|&i| mask >> i & 1 == 1).collect() };
    let mut levels: Vec<OnlineLevel> = Vec::with_capacity(r);
    for level in 1..=r {
        let mut best: Option<(Rational, Vec<Vertex>)> = None;
        for (mask, &e) in cnt.iter().enumerate() {
            if e == 0 {
                continue;
            }
            let v = (mask as u64).count_ones() as i64;
            let denom = match levels.last() {
                None => rat(v, 1),
                Some(prev) => rat(v - 2, 1) + prev.value.recip(),
            };
            let d = rat(e as i64, 1) / denom;
            let better = match &best {
                None => true,
                Some((b, bs)) => d > *b || (d == *b && (v as usize, members(mask)) < (bs.len(), bs.clone())),
            };
            if better {
                best = Some((d, members(mask)));
            }
        }
        let (value, maximizer) = best.unwrap();
        debug_assert!(level == levels.len() + 1);
        levels.push(OnlineLevel { value, maximizer });
    }
    Ok(levels)
}

pub fn m2_onl(f: &Graph, r: usize) -> Result<Rational> {
    Ok(m2_onl_levels(f, r)?.pop().unwrap().value)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DensityReport {
    pub m: Rational,
    pub m2: Rational,
    /// entry `i` is the online density for `i + 1` colors
    pub m2_onl: Vec<Rational>,
    /// 2 - 1/m
    pub lower_exponent: Rational,
    /// 2 - 1/m2
    pub upper_exponent: Rational,
    /// 2 - 1/m2_onl(F, r)
    pub smart_greedy_exponent: Rational,
}

pub fn threshold_report(f: &Graph, r: usize) -> Result<DensityReport> {
    if r < 2 {
        return Err(Error::Domain("threshold report needs r >= 2".into()));
    }
    let levels = m2_onl_levels(f, r)?;
    let m = max_density(f);
    let m2v = m2(f)?;
    let two = rat(2, 1);
    let onl: Vec<Rational> = levels.iter().map(|l| l.value).collect();
    Ok(DensityReport {
        m,
        m2: m2v,
        lower_exponent: two - m.recip(),
        upper_exponent: two - m2v.recip(),
        smart_greedy_exponent: two - onl[r - 1].recip(),
        m2_onl: onl,
    })
}
