//! The tree-size game solved over enforceable trees.
//!
//! Against a consistent Painter the board never matters, only the set of trees
//! Builder can produce: a join of two owned trees at chosen roots yields a new
//! tree, colored by Painter. Builder wins when, for some color, every component of
//! that color's target sits monochromatically in an owned tree.
//!
//! Painter survives at cap `k` iff some set of trees containing the single
//! vertex has no win and is closed: each join of two of its rooted members
//! within the cap has a coloring whose result is again a member. [`k_star_exact`]
//! searches for such sets; when none exists, the failed search is a Builder
//! strategy and is returned as a family certificate.

mod search;

pub use search::{k_star_exact, k_star_upper, naive_builder_wins, HeuristicConfig, PainterTable, SolveResult, SolveStats};

use crate::embed::{find_mono_copy, find_mono_copy_through, Pattern};
use crate::error::{Error, Result};
use crate::game::{GameConfig, PainterStrategy};
use crate::graph::{Color, ColoredGraph, Vertex};
use crate::rational::Rational;
use crate::tree::{decode, encode_rooted, root_profile, Adj, Code, JoinEncoder};
use std::collections::{BTreeSet, HashMap, HashSet};

/// A consistent Painter: a color for every unordered pair of rooted trees.
/// Codes are rooted codes; the root is the endpoint of the new edge.
pub trait StrategyFunction {
    fn color(&self, a: &[u8], b: &[u8]) -> Color;
}

/// A board painter used as a strategy function: the board is just the two trees.
pub struct PainterFunction<P>(pub P);

impl<P: PainterStrategy> StrategyFunction for PainterFunction<P> {
    fn color(&self, a: &[u8], b: &[u8]) -> Color {
        let (a, b) = if a <= b { (a, b) } else { (b, a) };
        let (aa, ab) = (decode(a), decode(b));
        let mut g = ColoredGraph::new(aa.len() + ab.len());
        let off = aa.len() as Vertex;
        for (adj, base) in [(&aa, 0), (&ab, off)] {
            for (v, nb) in adj.iter().enumerate() {
                for &(w, c) in nb {
                    if (v as u32) < w {
                        g.add_edge(base + v as Vertex, base + w, c).expect("decoded tree");
                    }
                }
            }
        }
        self.0.decide(&g, 0, off)
    }
}

/// A tree of the universe rooted at one of its vertices (decode order).
pub(crate) type Rooted = (u32, u32);

pub(crate) struct TreeInfo {
    pub code: Code,
    pub edges: u32,
    adj: Adj,
    /// One vertex per distinct rooting, with its rooted code.
    pub rootings: Vec<(u32, Code)>,
    /// Per color, bit `j` set if component `j` of that color's target embeds.
    pub covers: Vec<u64>,
}

/// Interned trees with cached joins and target coverage.
pub(crate) struct Universe {
    pub r: Color,
    patterns: Vec<Vec<Pattern>>,
    pub full: Vec<u64>,
    pub trees: Vec<TreeInfo>,
    index: HashMap<Code, u32>,
    joins: HashMap<(Rooted, Rooted), Vec<u32>>,
    enc: JoinEncoder,
}

impl Universe {
    pub fn new(config: &GameConfig) -> Result<Universe> {
        if !config.all_forests() {
            return Err(Error::Domain("tree games need forest targets".into()));
        }
        let r = config.r();
        let mut patterns = Vec::new();
        let mut full = Vec::new();
        for c in 1..=r {
            let pat = config.pattern(c);
            let comps: Vec<Pattern> = pat.components().iter().map(|vs| Pattern::new(&pat.graph().induced(vs))).collect();
            if comps.len() > 64 {
                return Err(Error::Size("targets with more than 64 components".into()));
            }
            full.push(if comps.len() == 64 { u64::MAX } else { (1u64 << comps.len()) - 1 });
            patterns.push(comps);
        }
        let mut u = Universe { r, patterns, full, trees: Vec::new(), index: HashMap::new(), joins: HashMap::new(), enc: JoinEncoder::default() };
        u.intern(&[]);
        Ok(u)
    }

    /// Id of the tree with this unrooted canonical code.
    pub fn intern(&mut self, code: &[u8]) -> u32 {
        if let Some(&i) = self.index.get(code) {
            return i;
        }
        let adj = decode(code);
        let graph = crate::game::family::colored_of_adj(&adj);
        let rootings = self.enc.distinct_rootings(&adj);
        let covers = (1..=self.r)
            .map(|c| {
                let mut m = 0u64;
                for (j, p) in self.patterns[c as usize - 1].iter().enumerate() {
                    if find_mono_copy(&graph, p, c).is_some() {
                        m |= 1 << j;
                    }
                }
                m
            })
            .collect();
        let id = self.trees.len() as u32;
        let edges = graph.edge_count() as u32;
        self.trees.push(TreeInfo { code: code.to_vec(), edges, adj, rootings, covers });
        self.index.insert(code.to_vec(), id);
        id
    }

    /// Join results per color, for `x <= y`.
    pub fn join(&mut self, x: Rooted, y: Rooted) -> Vec<u32> {
        if let Some(j) = self.joins.get(&(x, y)) {
            return j.clone();
        }
        let out: Vec<u32> = (1..=self.r)
            .map(|c| {
                let a = &self.trees[x.0 as usize].adj;
                let b = &self.trees[y.0 as usize].adj;
                let code = self.enc.encode_join(a, x.1, b, y.1, c);
                self.intern(&code)
            })
            .collect();
        self.joins.insert((x, y), out.clone());
        out
    }

    pub fn rooted_code(&self, x: Rooted) -> &Code {
        let t = &self.trees[x.0 as usize];
        &t.rootings.iter().find(|(v, _)| *v == x.1).expect("known rooting").1
    }

    /// Rooted members of the given trees, in a fixed order.
    pub fn rooted_of(&self, trees: &[u32]) -> Vec<Rooted> {
        let mut out = Vec::new();
        for &t in trees {
            for (v, _) in &self.trees[t as usize].rootings {
                out.push((t, *v));
            }
        }
        out
    }

    /// Colors winning with these coverage masks.
    pub fn winning_color(&self, cov: &[u64]) -> Option<Color> {
        (0..self.r as usize).find(|&c| cov[c] & self.full[c] == self.full[c]).map(|c| c as Color + 1)
    }

    pub fn add_cover(&self, cov: &mut [u64], t: u32) {
        for (c, m) in self.trees[t as usize].covers.iter().enumerate() {
            cov[c] |= m;
        }
    }

    /// For a winning color, one covering tree per target component.
    pub fn win_witness(&self, color: Color, trees: &[u32]) -> Vec<u32> {
        let c = color as usize - 1;
        (0..self.patterns[c].len())
            .map(|j| *trees.iter().find(|&&t| self.trees[t as usize].covers[c] >> j & 1 == 1).expect("covered"))
            .collect()
    }
}

/// Enforceable trees against a fixed strategy function, by edge count.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TreeFamilyState {
    pub cap: u32,
    /// `by_size[i]`: canonical unrooted codes of the enforceable trees with `i` edges.
    pub by_size: Vec<BTreeSet<Code>>,
}

impl TreeFamilyState {
    pub fn sizes(&self) -> Vec<usize> {
        self.by_size.iter().map(BTreeSet::len).collect()
    }

    pub fn all(&self) -> impl Iterator<Item = &Code> {
        self.by_size.iter().flatten()
    }
}

/// A decoded tree with one vertex per distinct rooting.
struct Rootings {
    adj: Adj,
    roots: Vec<(u32, Code)>,
}

/// Level-by-level enumeration. Rootings are cached only for the sizes that appear
/// as the smaller side of a join; the larger side is rooted on the fly.
struct FamilyRun<'a> {
    pi: &'a dyn StrategyFunction,
    r: Color,
    /// Per size, sorted canonical codes.
    levels: Vec<Vec<Code>>,
    cache: Vec<Option<Vec<Rootings>>>,
    enc: JoinEncoder,
}

/// How a join scan continues.
enum Scan {
    Go,
    Stop,
}

impl FamilyRun<'_> {
    fn new(pi: &dyn StrategyFunction, r: Color) -> FamilyRun<'_> {
        FamilyRun { pi, r, levels: vec![vec![Vec::new()]], cache: Vec::new(), enc: JoinEncoder::default() }
    }

    fn rootings(enc: &mut JoinEncoder, code: &[u8]) -> Rootings {
        let adj = decode(code);
        let roots = enc.distinct_rootings(&adj);
        Rootings { adj, roots }
    }

    fn cached(&mut self, i: usize) -> &[Rootings] {
        if self.cache.len() <= i {
            self.cache.resize_with(i + 1, || None);
        }
        if self.cache[i].is_none() {
            let enc = &mut self.enc;
            self.cache[i] = Some(self.levels[i].iter().map(|c| Self::rootings(enc, c)).collect());
        }
        self.cache[i].as_deref().unwrap()
    }

    /// Calls `f(a, x, b, y, c)` for every join of two rooted trees with `j - 1` edges in
    /// total, where `c` is the painter's color.
    fn scan(&mut self, j: usize, f: &mut dyn FnMut(&mut JoinEncoder, &Adj, u32, &Adj, u32, Color) -> Scan) -> Result<bool> {
        for i1 in 0..j {
            let i2 = j - 1 - i1;
            if i1 > i2 {
                break;
            }
            self.cached(i1);
            let small = self.cache[i1].take().unwrap();
            let result = (|| {
                for bi in 0..self.levels[i2].len() {
                    let big = if i1 == i2 { None } else { Some(Self::rootings(&mut self.enc, &self.levels[i2][bi])) };
                    let big = match &big {
                        Some(t) => t,
                        None => &small[bi],
                    };
                    let upto = if i1 == i2 { bi + 1 } else { small.len() };
                    for sm in &small[..upto] {
                        for (x, rcx) in &sm.roots {
                            for (y, rcy) in &big.roots {
                                let c = self.pi.color(rcx, rcy);
                                if c == 0 || c > self.r {
                                    return Err(Error::Strategy(format!("strategy function returned color {c}")));
                                }
                                if let Scan::Stop = f(&mut self.enc, &sm.adj, *x, &big.adj, *y, c) {
                                    return Ok(true);
                                }
                            }
                        }
                    }
                }
                Ok(false)
            })();
            self.cache[i1] = Some(small);
            if result? {
                return Ok(true);
            }
        }
        Ok(false)
    }

    /// Adds the trees with one more edge.
    fn extend(&mut self) -> Result<()> {
        let j = self.levels.len();
        let mut next: HashSet<Code> = HashSet::new();
        self.scan(j, &mut |enc, a, x, b, y, c| {
            next.insert(enc.encode_join(a, x, b, y, c));
            Scan::Go
        })?;
        let mut level: Vec<Code> = next.into_iter().collect();
        level.sort_unstable();
        self.levels.push(level);
        Ok(())
    }

    fn state(&self) -> TreeFamilyState {
        let by_size = self.levels.iter().map(|l| l.iter().cloned().collect()).collect();
        TreeFamilyState { cap: self.levels.len() as u32 - 1, by_size }
    }
}

/// All trees with at most `k` edges enforceable against `pi`.
pub fn tree_families(pi: &dyn StrategyFunction, r: Color, k: u32) -> Result<TreeFamilyState> {
    let mut run = FamilyRun::new(pi, r);
    for _ in 0..k {
        run.extend()?;
    }
    Ok(run.state())
}

/// Whether a join creates a mono copy of a connected target; the copy must use the
/// new edge. Paths are decided from the root profiles.
fn join_closes(a: &Adj, x: u32, b: &Adj, y: u32, c: Color, pat: &Pattern, path: Option<u32>, r: Color) -> bool {
    if let Some(l) = path {
        let la = root_profile(&encode_rooted(a, x, false).0, r)[c as usize - 1];
        let lb = root_profile(&encode_rooted(b, y, false).0, r)[c as usize - 1];
        return la + lb + 1 >= l;
    }
    let j = crate::game::family::joined_adj(a, x, b, y, c);
    let g = crate::game::family::colored_of_adj(&j);
    find_mono_copy_through(&g, pat, c, x, a.len() as Vertex + y).is_some()
}

/// Smallest cap at which Builder wins against `pi`, or `None` if above `k_max`.
///
/// With connected targets each level is first scanned for a winning join, and only
/// encoded when none exists.
pub fn k_star_against(pi: &dyn StrategyFunction, config: &GameConfig, k_max: u32) -> Result<Option<u32>> {
    if k_max < 1 {
        return Err(Error::Domain("k_max must be at least 1".into()));
    }
    let mut uni = Universe::new(config)?;
    let r = config.r();
    let connected = (1..=r).all(|c| uni.patterns[c as usize - 1].len() == 1);
    let mut run = FamilyRun::new(pi, r);
    if !connected {
        let mut cov = vec![0u64; r as usize];
        for j in 1..=k_max {
            run.extend()?;
            for code in &run.levels[j as usize] {
                let t = uni.intern(code);
                uni.add_cover(&mut cov, t);
            }
            if uni.winning_color(&cov).is_some() {
                return Ok(Some(j));
            }
        }
        return Ok(None);
    }
    let pats: Vec<Pattern> = (1..=r).map(|c| config.pattern(c).clone()).collect();
    let paths: Vec<Option<u32>> = pats.iter().map(path_edges).collect();
    for j in 1..=k_max {
        let won = run.scan(j as usize, &mut |_, a, x, b, y, c| {
            let i = c as usize - 1;
            if join_closes(a, x, b, y, c, &pats[i], paths[i], r) {
                Scan::Stop
            } else {
                Scan::Go
            }
        })?;
        if won {
            return Ok(Some(j));
        }
        if j < k_max {
            run.extend()?;
        }
    }
    Ok(None)
}

/// Edge count when the pattern is a path.
pub(crate) fn path_edges(p: &Pattern) -> Option<u32> {
    let g = p.graph();
    let n = g.vertex_count();
    let ok = n >= 2 && g.is_connected() && g.edge_count() + 1 == n && (0..n as Vertex).all(|v| g.degree(v) <= 2);
    ok.then(|| g.edge_count() as u32)
}

/// Bounds on the smallest density cap at which Builder wins. `upper` is the least
/// maximum board density over the certificates that verify; `lower` is passed through.
pub fn online_ramsey_density_bounds(
    certs: &[(crate::game::BuilderCertificate, GameConfig)],
    lower: Option<Rational>,
) -> Result<(Option<Rational>, Rational)> {
    let mut upper: Option<Rational> = None;
    for (cert, config) in certs {
        let v = crate::game::verify_certificate(cert, config)?;
        let s = v.stats().ok_or_else(|| Error::Strategy(format!("certificate does not verify: {v}")))?;
        upper = Some(upper.map_or(s.max_density, |u| u.min(s.max_density)));
    }
    let upper = upper.ok_or_else(|| Error::Domain("no certificates given".into()))?;
    Ok((lower, upper))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::game::{Restriction, Target};
    use crate::tree::unrooted_encode;

    struct Always(Color);
    impl StrategyFunction for Always {
        fn color(&self, _: &[u8], _: &[u8]) -> Color {
            self.0
        }
    }

    /// Unlabeled trees with `n` vertices by brute force over Prüfer sequences.
    fn unlabeled_trees(n: usize) -> usize {
        if n <= 2 {
            return 1;
        }
        let mut seen = BTreeSet::new();
        let total = n.pow(n as u32 - 2);
        for mut s in 0..total {
            let mut seq = Vec::new();
            for _ in 0..n - 2 {
                seq.push(s % n);
                s /= n;
            }
            let mut deg = vec![1usize; n];
            for &x in &seq {
                deg[x] += 1;
            }
            let mut adj: Adj = vec![Vec::new(); n];
            for &x in &seq {
                let leaf = (0..n).find(|&v| deg[v] == 1).unwrap();
                adj[leaf].push((x as u32, 1));
                adj[x].push((leaf as u32, 1));
                deg[leaf] -= 1;
                deg[x] -= 1;
            }
            let rest: Vec<usize> = (0..n).filter(|&v| deg[v] == 1).collect();
            adj[rest[0]].push((rest[1] as u32, 1));
            adj[rest[1]].push((rest[0] as u32, 1));
            seen.insert(unrooted_encode(&adj, false).0);
        }
        seen.len()
    }

    #[test]
    fn constant_painter_enforces_every_tree() {
        let fam = tree_families(&Always(1), 2, 6).unwrap();
        let expect: Vec<usize> = (1..=7).map(unlabeled_trees).collect();
        assert_eq!(fam.sizes(), expect);
        assert_eq!(expect, vec![1, 1, 1, 2, 3, 6, 11]);
        assert_eq!(tree_families(&Always(2), 3, 0).unwrap().sizes(), vec![1]);
    }

    #[test]
    fn families_extend_incrementally() {
        let f5 = tree_families(&Always(2), 2, 5).unwrap();
        let mut f4 = tree_families(&Always(2), 2, 4).unwrap();
        assert_eq!(&f5.by_size[..5], &f4.by_size[..]);
        let mut run = FamilyRun::new(&Always(2), 2);
        for _ in 0..5 {
            run.extend().unwrap();
        }
        f4 = run.state();
        assert_eq!(f4, f5);
    }

    #[test]
    fn constant_painter_loses_p2_at_two() {
        let cfg = GameConfig::symmetric(Target::named("path:2").unwrap(), 2, Restriction::TreeSize(1)).unwrap();
        assert_eq!(k_star_against(&Always(1), &cfg, 5).unwrap(), Some(2));
        struct Bad;
        impl StrategyFunction for Bad {
            fn color(&self, _: &[u8], _: &[u8]) -> Color {
                7
            }
        }
        assert!(k_star_against(&Bad, &cfg, 5).is_err());
        let cyc = GameConfig::symmetric(Target::named("cycle:3").unwrap(), 2, Restriction::Density(crate::rational::rat(3, 2))).unwrap();
        assert!(matches!(k_star_against(&Always(1), &cyc, 5), Err(Error::Domain(_))));
    }
}
