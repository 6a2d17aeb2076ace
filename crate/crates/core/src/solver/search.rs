//! Searching for closed Painter sets, and Builder certificates when there are none.
//!
//! A state is the set of trees Builder owns. A rooted pair of members is open
//! when none of its colorings gives a member. Any closed superset must settle
//! every open pair with one of its colorings, so whichever open pair is chosen,
//! branching over its colorings is complete. Pairs with a single coloring that
//! keeps Painter alive are settled without branching; a pair with none ends the
//! branch. Every branch that ends this way is a Builder strategy node.

use super::{Rooted, StrategyFunction, Universe};
use crate::error::{Error, Result};
use crate::game::family::{self, FamilyBuilder, FamilyCertificate, FamilyNode, TreeRef};
use crate::game::{GameConfig, Restriction, Verdict};
use crate::graph::Color;
use crate::tree::Code;
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::time::Instant;

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SolveStats {
    /// Search states expanded, over all caps tried.
    pub nodes: u64,
    /// States answered from the memo table.
    pub dedup_hits: u64,
    pub wall_ms: u128,
}

/// A consistent Painter given by a finite table of rooted-pair colors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PainterTable {
    pub r: Color,
    /// The tree-size cap the table was built for.
    pub cap: u32,
    /// Keys are pairs of rooted codes with the smaller first.
    pub entries: BTreeMap<(Code, Code), Color>,
}

#[derive(Serialize, Deserialize)]
struct TableJson {
    r: Color,
    cap: u32,
    entries: Vec<(String, String, Color)>,
}

fn digits(c: &[u8]) -> String {
    c.iter().map(|d| char::from(b'0' + d)).collect()
}

fn undigits(s: &str) -> Result<Code> {
    s.bytes()
        .map(|b| if b.is_ascii_digit() { Ok(b - b'0') } else { Err(Error::Parse(format!("bad tree code {s:?}"))) })
        .collect()
}

impl PainterTable {
    pub fn lookup(&self, a: &[u8], b: &[u8]) -> Option<Color> {
        let key = if a <= b { (a.to_vec(), b.to_vec()) } else { (b.to_vec(), a.to_vec()) };
        self.entries.get(&key).copied()
    }

    /// True if, answering from the table, no join within the cap leads to a win and
    /// every join Builder can ask has an entry.
    pub fn survives(&self, config: &GameConfig) -> Result<bool> {
        let mut uni = Universe::new(config)?;
        let mut owned = vec![0u32];
        let mut cov = vec![0u64; config.r() as usize];
        let mut i = 0;
        // any two owned rooted trees get joined eventually
        while i < owned.len() {
            let t = owned[i];
            i += 1;
            for j in 0..i {
                let s = owned[j];
                let (xs, ys) = (uni.rooted_of(&[s]), uni.rooted_of(&[t]));
                for &x in &xs {
                    for &y in &ys {
                        if uni.trees[x.0 as usize].edges + uni.trees[y.0 as usize].edges + 1 > self.cap {
                            continue;
                        }
                        let (x, y) = if x <= y { (x, y) } else { (y, x) };
                        let Some(c) = self.lookup(uni.rooted_code(x), uni.rooted_code(y)) else {
                            return Ok(false);
                        };
                        if c == 0 || c > self.r {
                            return Ok(false);
                        }
                        let res = uni.join(x, y)[c as usize - 1];
                        if !owned.contains(&res) {
                            owned.push(res);
                            uni.add_cover(&mut cov, res);
                            if uni.winning_color(&cov).is_some() {
                                return Ok(false);
                            }
                        }
                    }
                }
            }
        }
        Ok(true)
    }

    pub fn to_json(&self) -> String {
        let entries = self.entries.iter().map(|((a, b), &c)| (digits(a), digits(b), c)).collect();
        let mut s = serde_json::to_string(&TableJson { r: self.r, cap: self.cap, entries }).expect("plain data");
        s.push('\n');
        s
    }

    pub fn from_json(s: &str) -> Result<PainterTable> {
        let t: TableJson = serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
        let mut entries = BTreeMap::new();
        for (a, b, c) in t.entries {
            let (a, b) = (undigits(&a)?, undigits(&b)?);
            let key = if a <= b { (a, b) } else { (b, a) };
            entries.insert(key, c);
        }
        Ok(PainterTable { r: t.r, cap: t.cap, entries })
    }
}

impl StrategyFunction for PainterTable {
    /// Table entry, or color 1 off the table.
    fn color(&self, a: &[u8], b: &[u8]) -> Color {
        self.lookup(a, b).unwrap_or(1)
    }
}

#[derive(Clone, Debug)]
pub struct SolveResult {
    /// Smallest winning cap, if at most the search cap.
    pub k_star: Option<u32>,
    /// Verified at cap `k_star`.
    pub builder_certificate: Option<FamilyCertificate>,
    /// Survives at `k_star - 1`, or at the search cap when no win was found.
    pub painter_table: Option<PainterTable>,
    pub stats: SolveStats,
}

/// Builder-side heuristics for the upper-bound search.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HeuristicConfig {
    /// Candidate joins Builder tries at each branching state.
    pub beam: usize,
    /// Expanded states allowed per cap before giving up on it.
    pub max_nodes: u64,
}

impl Default for HeuristicConfig {
    fn default() -> Self {
        HeuristicConfig { beam: 64, max_nodes: 2_000_000 }
    }
}

/// A settled pair on the way down: the pair, its results, the surviving color (or
/// none when every coloring wins), and the owned count just before it.
struct Step {
    x: Rooted,
    y: Rooted,
    results: Vec<u32>,
    alive: Option<Color>,
    owned_before: usize,
}

enum Found {
    /// A closed set without a win.
    Closed(Vec<u32>),
    /// Builder wins; the certificate node.
    Refuted(u32),
    /// Out of budget.
    Unknown,
}

/// Per-pair data of an open pair.
struct Open {
    x: Rooted,
    y: Rooted,
    results: Vec<u32>,
    alive: Vec<Color>,
}

struct Search<'a> {
    uni: &'a mut Universe,
    cap: u32,
    fam: FamilyBuilder,
    /// certificate tree id of each universe tree
    fam_ids: HashMap<u32, u32>,
    memo: HashMap<Vec<u32>, Option<u32>>,
    stats: SolveStats,
    budget: u64,
    /// Builder alternatives at branching states; 1 reproduces the exact search.
    beam: usize,
}

impl Search<'_> {
    fn fam_id(&mut self, t: u32) -> u32 {
        if let Some(&i) = self.fam_ids.get(&t) {
            return i;
        }
        let i = self.fam.intern(&self.uni.trees[t as usize].code);
        self.fam_ids.insert(t, i);
        i
    }

    fn tree_ref(&mut self, x: Rooted) -> TreeRef {
        TreeRef { tree: self.fam_id(x.0), root: x.1 }
    }

    fn cover(&self, owned: &[u32]) -> Vec<u64> {
        let mut cov = vec![0u64; self.uni.r as usize];
        for &t in owned {
            self.uni.add_cover(&mut cov, t);
        }
        cov
    }

    /// Open pairs of the owned set, in a fixed order.
    fn open_pairs(&mut self, owned: &[u32], present: &BTreeSet<u32>, cov: &[u64]) -> Vec<Open> {
        let rooted = self.uni.rooted_of(owned);
        let mut out = Vec::new();
        for (i, &x) in rooted.iter().enumerate() {
            let ex = self.uni.trees[x.0 as usize].edges;
            for &y in &rooted[i..] {
                if ex + self.uni.trees[y.0 as usize].edges + 1 > self.cap {
                    continue;
                }
                let (x, y) = if x <= y { (x, y) } else { (y, x) };
                let results = self.uni.join(x, y);
                if results.iter().any(|t| present.contains(t)) {
                    continue;
                }
                let alive = (1..=self.uni.r)
                    .filter(|&c| {
                        let mut cv = cov.to_vec();
                        self.uni.add_cover(&mut cv, results[c as usize - 1]);
                        self.uni.winning_color(&cv).is_none()
                    })
                    .collect();
                out.push(Open { x, y, results, alive });
            }
        }
        out
    }

    fn win_node(&mut self, owned: &[u32], extra: u32) -> u32 {
        let mut trees = owned.to_vec();
        trees.push(extra);
        let cov = self.cover(&trees);
        let color = self.uni.winning_color(&cov).expect("winning coloring");
        let wit = self.uni.win_witness(color, &trees);
        let wit = wit.into_iter().map(|t| self.fam_id(t)).collect();
        self.fam.push(FamilyNode::Win { color, trees: wit })
    }

    /// Certificate nodes for the settled steps, ending in `tail` (unused when the last
    /// step has no surviving color).
    fn chain(&mut self, owned: &[u32], steps: &[Step], mut tail: u32) -> u32 {
        for s in steps.iter().rev() {
            let next = (1..=self.uni.r)
                .map(|c| if s.alive == Some(c) { tail } else { self.win_node(&owned[..s.owned_before], s.results[c as usize - 1]) })
                .collect();
            let (a, b) = (self.tree_ref(s.x), self.tree_ref(s.y));
            tail = self.fam.push(FamilyNode::Join { a, b, next });
        }
        tail
    }

    fn solve(&mut self, mut owned: Vec<u32>) -> Found {
        let mut key = owned.clone();
        key.sort_unstable();
        if let Some(m) = self.memo.get(&key) {
            self.stats.dedup_hits += 1;
            return match *m {
                Some(n) => Found::Refuted(n),
                None => Found::Unknown,
            };
        }
        self.stats.nodes += 1;
        if self.stats.nodes > self.budget {
            return Found::Unknown;
        }
        let mut present: BTreeSet<u32> = owned.iter().copied().collect();
        let mut cov = self.cover(&owned);
        let mut steps = Vec::new();
        let branch = loop {
            let open = self.open_pairs(&owned, &present, &cov);
            if open.is_empty() {
                return Found::Closed(owned);
            }
            if let Some(dead) = open.iter().find(|o| o.alive.is_empty()) {
                steps.push(Step { x: dead.x, y: dead.y, results: dead.results.clone(), alive: None, owned_before: owned.len() });
                let n = self.chain(&owned, &steps, u32::MAX);
                self.memo.insert(key, Some(n));
                return Found::Refuted(n);
            }
            let forced: Vec<&Open> = open.iter().filter(|o| o.alive.len() == 1).collect();
            if forced.is_empty() {
                break self.candidates(open);
            }
            for o in forced {
                let t = o.results[o.alive[0] as usize - 1];
                if present.contains(&t) {
                    continue;
                }
                steps.push(Step { x: o.x, y: o.y, results: o.results.clone(), alive: Some(o.alive[0]), owned_before: owned.len() });
                owned.push(t);
                present.insert(t);
                self.uni.add_cover(&mut cov, t);
            }
        };
        let mut unknown = false;
        'cands: for o in branch {
            let mut next = Vec::new();
            for &c in &o.alive {
                let mut sub = owned.clone();
                sub.push(o.results[c as usize - 1]);
                match self.solve(sub) {
                    Found::Closed(s) => return Found::Closed(s),
                    Found::Refuted(n) => next.push((c, n)),
                    Found::Unknown => {
                        unknown = true;
                        continue 'cands;
                    }
                }
            }
            let by_color: HashMap<Color, u32> = next.into_iter().collect();
            let nexts = (1..=self.uni.r)
                .map(|c| match by_color.get(&c) {
                    Some(&n) => n,
                    None => self.win_node(&owned, o.results[c as usize - 1]),
                })
                .collect();
            let (a, b) = (self.tree_ref(o.x), self.tree_ref(o.y));
            let here = self.fam.push(FamilyNode::Join { a, b, next: nexts });
            let n = self.chain(&owned, &steps, here);
            self.memo.insert(key, Some(n));
            return Found::Refuted(n);
        }
        if !unknown {
            // only reachable with a narrowed beam: no candidate worked
            self.memo.insert(key, None);
        }
        Found::Unknown
    }

    /// Branching pairs to try, best first.
    fn candidates(&self, mut open: Vec<Open>) -> Vec<Open> {
        let r = self.uni.r;
        let score = |o: &Open| {
            let size = self.uni.trees[o.x.0 as usize].edges + self.uni.trees[o.y.0 as usize].edges;
            let reach: u32 = (1..=r)
                .map(|c| {
                    let px = crate::tree::root_profile(self.uni.rooted_code(o.x), r)[c as usize - 1];
                    let py = crate::tree::root_profile(self.uni.rooted_code(o.y), r)[c as usize - 1];
                    px + py
                })
                .max()
                .unwrap_or(0);
            (o.alive.len(), std::cmp::Reverse(reach), size)
        };
        open.sort_by_key(|o| score(o));
        open.truncate(self.beam.max(1));
        open
    }
}

fn table_of(uni: &mut Universe, closed: &[u32], cap: u32) -> PainterTable {
    let present: BTreeSet<u32> = closed.iter().copied().collect();
    let rooted = uni.rooted_of(closed);
    let mut entries = BTreeMap::new();
    for (i, &x) in rooted.iter().enumerate() {
        for &y in &rooted[i..] {
            if uni.trees[x.0 as usize].edges + uni.trees[y.0 as usize].edges + 1 > cap {
                continue;
            }
            let (x, y) = if x <= y { (x, y) } else { (y, x) };
            let res = uni.join(x, y);
            let c = (1..=uni.r).find(|&c| present.contains(&res[c as usize - 1])).expect("closed set");
            let (a, b) = (uni.rooted_code(x).clone(), uni.rooted_code(y).clone());
            let key = if a <= b { (a, b) } else { (b, a) };
            entries.insert(key, c);
        }
    }
    PainterTable { r: uni.r, cap, entries }
}

fn run(config: &GameConfig, k_max: u32, beam: usize, budget: u64) -> Result<SolveResult> {
    if k_max < 1 {
        return Err(Error::Domain("k_max must be at least 1".into()));
    }
    let start = Instant::now();
    let mut uni = Universe::new(config)?;
    let mut stats = SolveStats::default();
    let mut table = Some(PainterTable { r: config.r(), cap: 0, entries: BTreeMap::new() });
    for k in 1..=k_max {
        let mut s = Search {
            uni: &mut uni,
            cap: k,
            fam: FamilyBuilder::new(config.r()),
            fam_ids: HashMap::new(),
            memo: HashMap::new(),
            stats: SolveStats::default(),
            budget: budget.saturating_add(stats.nodes).saturating_sub(stats.nodes),
            beam,
        };
        let found = s.solve(vec![0]);
        stats.nodes += s.stats.nodes;
        stats.dedup_hits += s.stats.dedup_hits;
        match found {
            Found::Closed(closed) => table = Some(table_of(&mut uni, &closed, k)),
            Found::Unknown => table = None,
            Found::Refuted(root) => {
                let cert = s.fam.finish(root)?;
                let v = family::verify(&cert, &config.with_restriction(Restriction::TreeSize(k))?)?;
                if !matches!(v, Verdict::Win(_)) {
                    return Err(Error::Strategy(format!("search produced a certificate that does not verify: {v}")));
                }
                stats.wall_ms = start.elapsed().as_millis();
                return Ok(SolveResult { k_star: Some(k), builder_certificate: Some(cert), painter_table: table, stats });
            }
        }
    }
    stats.wall_ms = start.elapsed().as_millis();
    Ok(SolveResult { k_star: None, builder_certificate: None, painter_table: table, stats })
}

/// Exact value of the tree-size game, with a certificate at the value and a Painter
/// table one below it.
pub fn k_star_exact(config: &GameConfig, k_max: u32) -> Result<SolveResult> {
    let res = run(config, k_max, 1, u64::MAX)?;
    if let Some(t) = &res.painter_table {
        debug_assert!(t.survives(&config.with_restriction(Restriction::TreeSize(t.cap))?)?);
    }
    Ok(res)
}

/// Upper bound from a budgeted search over Builder's most promising joins;
/// Painter's replies are never pruned, so any certificate is sound.
pub fn k_star_upper(config: &GameConfig, heuristics: &HeuristicConfig, k_max: u32) -> Result<SolveResult> {
    let mut res = run(config, k_max, heuristics.beam, heuristics.max_nodes)?;
    // a closed set found under a budget is still a genuine Painter strategy
    if res.k_star.is_none() {
        res.painter_table = res.painter_table.filter(|t| t.cap == k_max);
    }
    Ok(res)
}

/// Plain minimax over every join Builder can ask, without memoization or
/// settling of forced pairs. Only for tiny instances.
pub fn naive_builder_wins(config: &GameConfig, cap: u32) -> Result<bool> {
    let mut uni = Universe::new(config)?;
    fn wins(uni: &mut Universe, owned: &mut Vec<u32>, cap: u32) -> bool {
        let mut cov = vec![0u64; uni.r as usize];
        for &t in owned.iter() {
            uni.add_cover(&mut cov, t);
        }
        if uni.winning_color(&cov).is_some() {
            return true;
        }
        let rooted = uni.rooted_of(owned);
        for (i, &x) in rooted.iter().enumerate() {
            for &y in &rooted[i..] {
                if uni.trees[x.0 as usize].edges + uni.trees[y.0 as usize].edges + 1 > cap {
                    continue;
                }
                let res = uni.join(x, y);
                if res.iter().any(|t| owned.contains(t)) {
                    continue;
                }
                let all = res.iter().all(|&t| {
                    owned.push(t);
                    let w = wins(uni, owned, cap);
                    owned.pop();
                    w
                });
                if all {
                    return true;
                }
            }
        }
        false
    }
    Ok(wins(&mut uni, &mut vec![0], cap))
}
