//! Builder constructions, each returned with the configuration it wins under.

use crate::error::{Error, Result};
use crate::game::explicit::{CertNode, ExplicitCertificate};
use crate::game::family::{joined_adj, FamilyBuilder, FamilyNode, TreeRef};
use crate::game::{BuilderCertificate, GameConfig, Restriction, Target};
use crate::graph::{Color, Vertex};
use crate::tree::{decode, encode_rooted, root_profile, unrooted_encode, Adj, Code};
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use std::collections::BTreeMap;

const RED: Color = 1;
const BLUE: Color = 2;

/// A certificate together with the game it is meant to win.
#[derive(Clone, Debug)]
pub struct Construction {
    pub certificate: BuilderCertificate,
    pub config: GameConfig,
}

/// Presents `r(l-1)+1` edges at one center; some color gets `l` of them.
pub fn builder_star(l: usize, r: Color) -> Result<Construction> {
    if l < 1 || r < 2 {
        return Err(Error::Domain("builder_star needs l >= 1 and r >= 2".into()));
    }
    let m = r as usize * (l - 1) + 1;
    fn node(next: Vertex, leaves: &mut Vec<Vec<Vertex>>, l: usize, r: Color) -> CertNode {
        if let Some(c) = (0..r as usize).find(|&c| leaves[c].len() >= l) {
            let mut w = vec![0];
            w.extend_from_slice(&leaves[c][..l]);
            return CertNode::leaf(c as Color + 1, w);
        }
        let children = (0..r as usize)
            .map(|c| {
                leaves[c].push(next);
                let n = node(next + 1, leaves, l, r);
                leaves[c].pop();
                n
            })
            .collect();
        CertNode::branch(0, next, children)
    }
    let root = node(1, &mut vec![Vec::new(); r as usize], l, r);
    let config = GameConfig::symmetric(Target::named(&format!("star:{l}"))?, r as usize, Restriction::TreeSize(m as u32))?;
    Ok(Construction { certificate: BuilderCertificate::Explicit(ExplicitCertificate { r, root }), config })
}

/// Which branch of the doubling strategy the returned state describes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SigmaPolicy {
    /// The branch with the largest final tree.
    Adaptive,
    /// Painter's first-step colors follow the sequence (1 = Operation 1).
    Fixed(Vec<u8>),
}

/// The doubling table along one branch. Entries are rooted codes; `border` holds the
/// first-step trees `H_{r,0}` and `H_{0,b}`, `table` the maximal entries as they were
/// filled (the entry at `(1,0)` or `(0,1)` may be refilled by the second step).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DoublingState {
    pub table: BTreeMap<(u32, u32), Code>,
    pub border: BTreeMap<(u32, u32), Code>,
    /// Maximal entry after the last operation.
    pub max: (u32, u32),
    pub mu: Vec<u64>,
    pub kappa: Vec<u64>,
    pub sigma: Vec<u8>,
    pub lambda: u32,
}

impl DoublingState {
    /// `(r+1)(b+1)` of the maximal entry.
    pub fn covered_area(&self) -> u64 {
        (self.max.0 as u64 + 1) * (self.max.1 as u64 + 1)
    }
}

/// Smallest `lambda` with `2^lambda > l^2`.
pub fn doubling_steps(l: usize) -> u32 {
    let sq = (l * l) as u64;
    (0..64).find(|&i| 1u64 << i > sq).unwrap()
}

#[derive(Clone)]
struct Entry {
    tree: u32,
    root: u32,
    adj: Adj,
}

impl Entry {
    fn edges(&self) -> u64 {
        self.adj.len() as u64 - 1
    }

    fn profile(&self) -> (u32, u32) {
        let p = root_profile(&encode_rooted(&self.adj, self.root, false).0, 2);
        (p[0], p[1])
    }

    fn code(&self) -> Code {
        encode_rooted(&self.adj, self.root, false).0
    }
}

#[derive(Clone)]
struct Run {
    max: Entry,
    r: u32,
    b: u32,
    red: BTreeMap<u32, Entry>,
    blue: BTreeMap<u32, Entry>,
    table: BTreeMap<(u32, u32), Code>,
    mu: Vec<u64>,
    kappa: Vec<u64>,
    sigma: Vec<u8>,
}

struct Doubling {
    l: u32,
    lambda: u32,
    fam: FamilyBuilder,
    /// Worst final size so far, and the state of the selected branch.
    worst: u64,
    chosen: Option<DoublingState>,
    policy: SigmaPolicy,
}

/// Joins `a` and `b` at their roots in color `c`. Returns the result and the decode
/// position of each joined vertex (`a`'s vertices first).
fn join(fam: &mut FamilyBuilder, a: &Entry, b: &Entry, c: Color) -> (u32, Adj, Vec<u32>) {
    let j = joined_adj(&a.adj, a.root, &b.adj, b.root, c);
    let (code, order) = unrooted_encode(&j, true);
    let mut pos = vec![0u32; order.len()];
    for (k, &x) in order.iter().enumerate() {
        pos[x as usize] = k as u32;
    }
    (fam.intern(&code), decode(&code), pos)
}

/// An end of a longest path of color `c`, with its length: the far end of a double
/// breadth-first search in each color-`c` component.
fn path_end(adj: &Adj, c: Color) -> (u32, u32) {
    let n = adj.len();
    let bfs = |s: u32, dist: &mut Vec<u32>| -> u32 {
        let mut queue = vec![s];
        dist[s as usize] = 0;
        let mut far = s;
        let mut i = 0;
        while i < queue.len() {
            let v = queue[i];
            i += 1;
            if dist[v as usize] > dist[far as usize] {
                far = v;
            }
            for &(w, k) in &adj[v as usize] {
                if k == c && dist[w as usize] == u32::MAX {
                    dist[w as usize] = dist[v as usize] + 1;
                    queue.push(w);
                }
            }
        }
        far
    };
    let mut seen = vec![u32::MAX; n];
    let mut best = (0u32, 0u32);
    for s in 0..n as u32 {
        if seen[s as usize] != u32::MAX {
            continue;
        }
        let a = bfs(s, &mut seen);
        let mut d = vec![u32::MAX; n];
        let z = bfs(a, &mut d);
        if d[z as usize] > best.1 {
            best = (a, d[z as usize]);
        }
    }
    best
}

impl Doubling {
    fn tref(e: &Entry) -> TreeRef {
        TreeRef { tree: e.tree, root: e.root }
    }

    fn op(&mut self, run: Run, i: u32) -> Result<u32> {
        if i == self.lambda {
            return self.finish(run);
        }
        let step1 = self.fam.reserve();
        let mut next1 = Vec::new();
        for c1 in [RED, BLUE] {
            let (tree, adj, _) = join(&mut self.fam, &run.max, &run.max, c1);
            let (root, len) = path_end(&adj, c1);
            let border = Entry { tree, root, adj };
            let (want, other, new_rb) = if c1 == RED {
                (2 * run.r + 1, run.blue.get(&run.b), (2 * run.r + 1, run.b))
            } else {
                (2 * run.b + 1, run.red.get(&run.r), (run.r, 2 * run.b + 1))
            };
            if len < want {
                return Err(Error::Strategy(format!("doubling step produced a path of {len} edges, wanted {want}")));
            }
            let other = other.cloned().ok_or_else(|| Error::Strategy("doubling table lost a border entry".into()))?;
            let mut r1 = run.clone();
            r1.mu.push(border.edges());
            r1.sigma.push(c1);
            let key = if c1 == RED { (want, 0) } else { (0, want) };
            r1.table.insert(key, border.code());
            if c1 == RED {
                r1.red.insert(want, border.clone());
            } else {
                r1.blue.insert(want, border.clone());
            }
            let step2 = self.fam.reserve();
            let mut next2 = Vec::new();
            for c2 in [RED, BLUE] {
                let (tree, adj, pos) = join(&mut self.fam, &border, &other, c2);
                // the new root is the endpoint that gains the added edge in its own path
                let root = if c2 == c1 { pos[border.adj.len() + other.root as usize] } else { pos[border.root as usize] };
                let max = Entry { tree, root, adj };
                let (pr, pb) = max.profile();
                if pr < new_rb.0 || pb < new_rb.1 {
                    return Err(Error::Strategy(format!("doubling entry lacks the ({},{})-property", new_rb.0, new_rb.1)));
                }
                let mut r2 = r1.clone();
                r2.kappa.push(max.edges());
                r2.table.insert(new_rb, max.code());
                r2.max = max;
                (r2.r, r2.b) = new_rb;
                next2.push(self.op(r2, i + 1)?);
            }
            self.fam.set(step2, FamilyNode::Join { a: Self::tref(&border), b: Self::tref(&other), next: next2 });
            next1.push(step2);
        }
        self.fam.set(step1, FamilyNode::Join { a: Self::tref(&run.max), b: Self::tref(&run.max), next: next1 });
        Ok(step1)
    }

    fn finish(&mut self, run: Run) -> Result<u32> {
        let color = if run.r >= self.l {
            RED
        } else if run.b >= self.l {
            BLUE
        } else {
            return Err(Error::Strategy("doubling ended without a long path".into()));
        };
        let size = *run.kappa.last().unwrap();
        let take = match &self.policy {
            SigmaPolicy::Adaptive => self.chosen.is_none() || size > self.worst,
            SigmaPolicy::Fixed(s) => {
                self.chosen.is_none()
                    && run.sigma.iter().zip(s).all(|(a, b)| a == b)
            }
        };
        self.worst = self.worst.max(size);
        if take {
            let border = run
                .red
                .iter()
                .map(|(&r, e)| ((r, 0), e.code()))
                .chain(run.blue.iter().map(|(&b, e)| ((0, b), e.code())))
                .collect();
            self.chosen = Some(DoublingState {
                table: run.table.clone(),
                border,
                max: (run.r, run.b),
                mu: run.mu.clone(),
                kappa: run.kappa.clone(),
                sigma: run.sigma.clone(),
                lambda: self.lambda,
            });
        }
        Ok(self.fam.push(FamilyNode::Win { color, trees: vec![run.max.tree] }))
    }
}

/// The doubling strategy for `P_l` with two colors. The certificate covers every
/// Painter reply and wins under a tree-size cap equal to the largest final tree; the
/// state follows the branch chosen by `policy`.
pub fn builder_path_doubling(l: usize, policy: SigmaPolicy) -> Result<(Construction, DoublingState)> {
    if l < 2 {
        return Err(Error::Domain("path doubling needs l >= 2".into()));
    }
    let lambda = doubling_steps(l);
    if let SigmaPolicy::Fixed(s) = &policy {
        if s.len() < lambda as usize || s.iter().any(|&x| x != 1 && x != 2) {
            return Err(Error::Domain(format!("sigma needs {lambda} entries from {{1,2}}")));
        }
    }
    let mut fam = FamilyBuilder::new(2);
    let k1 = Entry { tree: 0, root: 0, adj: decode(&[]) };
    let mut table = BTreeMap::new();
    table.insert((0, 0), Vec::new());
    let run = Run {
        max: k1.clone(),
        r: 0,
        b: 0,
        red: BTreeMap::from([(0, k1.clone())]),
        blue: BTreeMap::from([(0, k1)]),
        table,
        mu: vec![0],
        kappa: vec![0],
        sigma: Vec::new(),
    };
    let mut d = Doubling { l: l as u32, lambda, fam, worst: 0, chosen: None, policy };
    let root = d.op(run, 0)?;
    let state = d.chosen.take().ok_or_else(|| Error::Strategy("no branch matched the policy".into()))?;
    fam = d.fam;
    let cert = fam.finish(root)?;
    let config = GameConfig::symmetric(Target::named(&format!("path:{l}"))?, 2, Restriction::TreeSize(d.worst as u32))?;
    Ok((Construction { certificate: BuilderCertificate::Family(cert), config }, state))
}

/// Powers of `1 + sqrt 3` as `p + q sqrt 3`.
fn pow_1_sqrt3(n: u32) -> (BigInt, BigInt) {
    let (mut p, mut q) = (BigInt::one(), BigInt::zero());
    for _ in 0..n {
        let np = &p + 3 * &q;
        q += &p;
        p = np;
    }
    (p, q)
}

/// `x <= a + b sqrt 3` for integers, `b >= 0`.
fn le_surd(x: &BigInt, a: &BigInt, b: &BigInt) -> bool {
    let d = x - a;
    !d.is_positive() || &d * &d <= 3 * b * b
}

/// `kappa <= (1/2 + 1/sqrt 3)(1 + sqrt 3)^i`, decided exactly.
pub fn kappa_bound_holds(i: u32, kappa: u64) -> bool {
    // (1/2 + 1/sqrt 3) = (3 + 2 sqrt 3) / 6
    let (p, q) = pow_1_sqrt3(i);
    let a = 3 * &p + 6 * &q;
    let b = 2 * &p + 3 * &q;
    le_surd(&(BigInt::from(kappa) * 6), &a, &b)
}

/// A rational lower bound `(num, den)` of `((9 + 5 sqrt 3)/6) l^(2 log2(1 + sqrt 3))`.
///
/// The exponent is bounded below by `m/1000`, certified by `2^m <= (1+sqrt 3)^2000`,
/// and `l^(m/1000)` by an integer root.
pub fn doubling_bound_lower(l: usize) -> (BigInt, BigInt) {
    const N: u32 = 1000;
    let (p, q) = pow_1_sqrt3(2 * N);
    let exponent = 2.0 * (1.0 + 3f64.sqrt()).log2();
    let mut m = (exponent * N as f64).floor() as u32;
    while !le_surd(&(BigInt::one() << m), &p, &q) {
        m -= 1;
    }
    let bits = 40u32;
    let scaled = BigInt::from(l).pow(m) << (bits * N);
    let lpow = scaled.nth_root(N);
    let scale = 1_000_000_000i64;
    let mut s = BigInt::from((3f64.sqrt() * scale as f64).floor() as i64);
    while &s * &s > BigInt::from(3) * scale * scale {
        s -= 1;
    }
    let num = (BigInt::from(9) * scale + 5 * s) * lpow;
    let den = BigInt::from(6) * scale * (BigInt::one() << bits);
    (num, den)
}

/// `kappa <= ((9 + 5 sqrt 3)/6) l^(2 log2(1 + sqrt 3))`, through the lower bound above.
pub fn doubling_bound_holds(l: usize, kappa: u64) -> bool {
    let (num, den) = doubling_bound_lower(l);
    BigInt::from(kappa) * den <= num
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::game::verify_certificate;

    #[test]
    fn star_certificates() {
        for (l, r, m) in [(2, 2, 3), (3, 2, 5), (2, 3, 4), (1, 2, 1)] {
            let c = builder_star(l, r).unwrap();
            assert_eq!(c.config.restriction(), Restriction::TreeSize(m));
            assert!(verify_certificate(&c.certificate, &c.config).unwrap().is_win());
            let tight = c.config.with_restriction(Restriction::TreeSize(m - 1)).unwrap();
            if m > 1 {
                assert!(!verify_certificate(&c.certificate, &tight).unwrap().is_win());
            }
        }
    }

    #[test]
    fn table_two_sequence() {
        let (c, s) = builder_path_doubling(6, SigmaPolicy::Fixed(vec![1, 2, 2, 1, 1, 2])).unwrap();
        assert_eq!(s.kappa, vec![0, 2, 7, 17, 51, 119, 343]);
        assert_eq!(s.mu, vec![0, 1, 5, 15, 35, 103, 239]);
        assert_eq!(s.lambda, 6);
        assert_eq!(s.max, (7, 7));
        assert_eq!(s.covered_area(), 64);
        assert!(verify_certificate(&c.certificate, &c.config).unwrap().is_win());
    }

    #[test]
    fn surd_bounds() {
        // (1/2 + 1/sqrt 3)(1 + sqrt 3)^i is about 1.077 * 2.732^i
        assert!(kappa_bound_holds(0, 1) && !kappa_bound_holds(0, 2));
        assert!(kappa_bound_holds(3, 21) && !kappa_bound_holds(3, 22));
        // the right side at l = 4 is about 2.943 * 4^2.89997 = 163.6
        assert!(doubling_bound_holds(4, 163) && !doubling_bound_holds(4, 164));
    }
}
