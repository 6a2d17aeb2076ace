//! The random one-player game: uniformly random new edges on `n` vertices, each
//! colored on arrival by a Painter strategy, until a monochromatic target appears.
//!
//! Trial `i` of a run with seed `s` draws from the ChaCha stream `i` of seed `s`, and
//! a trial's edge sequence does not depend on how many steps are played. Survival
//! estimates at different step counts are therefore coupled: a trial that survives
//! `N` steps survives every shorter run.

use crate::embed::{closes_mono_copy, find_mono_copy_through, Pattern};
use crate::error::{Error, Result};
use crate::game::{GameConfig, Move, Outcome, PainterStrategy, Restriction, Target, Transcript};
use crate::graph::{Color, ColoredGraph, Graph, Vertex};
use crate::rational::Rational;
use crate::solver::k_star_exact;
use crate::strategies::{greedy_painter, table_painter, Greedy, TablePainter};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use statrs::distribution::{Beta, ContinuousCDF};
use std::collections::HashMap;
use std::fmt::Write;

pub struct ProcessConfig<'a> {
    pub n: usize,
    /// Edges to present.
    pub steps: usize,
    pub painter: &'a dyn PainterStrategy,
    /// Forbidden graph of each color; `r` is the length.
    pub targets: Vec<Graph>,
    pub seed: u64,
}

impl ProcessConfig<'_> {
    fn validate(&self) -> Result<()> {
        if self.steps > max_steps(self.n) {
            return Err(Error::Domain(format!("{} steps exceed the {} edges of K_{}", self.steps, max_steps(self.n), self.n)));
        }
        if self.targets.is_empty() || self.targets.iter().any(|t| t.edge_count() == 0) {
            return Err(Error::Domain("need one target with at least one edge per color".into()));
        }
        Ok(())
    }
}

pub fn max_steps(n: usize) -> usize {
    n * n.saturating_sub(1) / 2
}

/// The pair with index `k` when pairs `u < v` are listed by `v`, then `u`.
fn unrank(k: u64) -> (Vertex, Vertex) {
    let mut v = ((1.0 + (1.0 + 8.0 * k as f64).sqrt()) / 2.0) as u64;
    while v * (v - 1) / 2 > k {
        v -= 1;
    }
    while (v + 1) * v / 2 <= k {
        v += 1;
    }
    ((k - v * (v - 1) / 2) as Vertex, v as Vertex)
}

/// Distinct uniformly random edges of `K_n`, by a lazy Fisher-Yates shuffle of the
/// pair indices that only stores displaced entries.
struct EdgeStream {
    rng: ChaCha8Rng,
    total: u64,
    drawn: u64,
    moved: HashMap<u64, u64>,
}

impl EdgeStream {
    fn new(n: usize, seed: u64, stream: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(stream);
        EdgeStream { rng, total: max_steps(n) as u64, drawn: 0, moved: HashMap::new() }
    }
}

impl Iterator for EdgeStream {
    type Item = (Vertex, Vertex);

    fn next(&mut self) -> Option<(Vertex, Vertex)> {
        if self.drawn == self.total {
            return None;
        }
        let i = self.drawn;
        let j = self.rng.gen_range(i..self.total);
        let at = |m: &HashMap<u64, u64>, x: u64| m.get(&x).copied().unwrap_or(x);
        let pick = at(&self.moved, j);
        let first = at(&self.moved, i);
        self.moved.insert(j, first);
        self.moved.remove(&i);
        self.drawn += 1;
        Some(unrank(pick))
    }
}

fn run_stream(cfg: &ProcessConfig, stream: u64) -> Result<Transcript> {
    cfg.validate()?;
    let r = cfg.targets.len() as Color;
    let pats: Vec<Pattern> = cfg.targets.iter().map(Pattern::new).collect();
    let mut board = ColoredGraph::new(cfg.n);
    let mut moves = Vec::with_capacity(cfg.steps);
    for (u, v) in EdgeStream::new(cfg.n, cfg.seed, stream).take(cfg.steps) {
        let c = cfg.painter.decide(&board, u, v);
        if c == 0 || c > r {
            return Err(Error::ColorRange { color: c as u32, r: r as u32 });
        }
        let closes = closes_mono_copy(&board, &pats[c as usize - 1], c, u, v);
        board.add_edge(u, v, c)?;
        moves.push(Move { u, v, color: c });
        if closes {
            let vertices = find_mono_copy_through(&board, &pats[c as usize - 1], c, u, v).expect("closed copy");
            return Ok(Transcript { moves, board, outcome: Outcome::Mono { color: c, vertices } });
        }
    }
    Ok(Transcript { moves, board, outcome: Outcome::Survived })
}

/// One run of the process, on stream 0 of the seed.
pub fn run_process(cfg: &ProcessConfig) -> Result<Transcript> {
    run_stream(cfg, 0)
}

#[derive(Clone, Debug, PartialEq)]
pub struct SurvivalEstimate {
    pub n: usize,
    pub steps: usize,
    pub trials: usize,
    pub survived: usize,
    pub rate: Rational,
    /// Exact (Clopper-Pearson) 95% interval.
    pub ci_low: f64,
    pub ci_high: f64,
}

impl SurvivalEstimate {
    pub fn half_width(&self) -> f64 {
        (self.ci_high - self.ci_low) / 2.0
    }

    pub fn rate_f64(&self) -> f64 {
        self.survived as f64 / self.trials as f64
    }
}

/// Clopper-Pearson interval for `k` successes in `n` trials.
pub fn binomial_ci(k: usize, n: usize, level: f64) -> (f64, f64) {
    let a = (1.0 - level) / 2.0;
    let (kf, nf) = (k as f64, n as f64);
    let low = if k == 0 { 0.0 } else { beta_quantile(kf, nf - kf + 1.0, a) };
    let high = if k == n { 1.0 } else { beta_quantile(kf + 1.0, nf - kf, 1.0 - a) };
    (low, high)
}

/// Beta quantile by bisection on the CDF, which statrs evaluates more precisely than
/// its own inverse.
fn beta_quantile(a: f64, b: f64, p: f64) -> f64 {
    let d = Beta::new(a, b).unwrap();
    let (mut lo, mut hi) = (0.0f64, 1.0f64);
    for _ in 0..60 {
        let mid = (lo + hi) / 2.0;
        if d.cdf(mid) < p {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    (lo + hi) / 2.0
}

/// Runs `trials` independent processes and counts survivors.
pub fn estimate_survival(cfg: &ProcessConfig, trials: usize) -> Result<SurvivalEstimate> {
    if trials == 0 {
        return Err(Error::Domain("need at least one trial".into()));
    }
    let mut survived = 0;
    for t in 0..trials {
        if !run_stream(cfg, t as u64)?.is_win() {
            survived += 1;
        }
    }
    let (ci_low, ci_high) = binomial_ci(survived, trials, 0.95);
    Ok(SurvivalEstimate {
        n: cfg.n,
        steps: cfg.steps,
        trials,
        survived,
        rate: Rational::new(survived as i64, trials as i64),
        ci_low,
        ci_high,
    })
}

/// `⌈n^α⌉`.
pub fn steps_for(n: usize, alpha: f64) -> usize {
    let x = (n as f64).powf(alpha);
    // keep exact powers exact despite rounding in powf
    let r = x.round();
    if (x - r).abs() < 1e-9 * x.max(1.0) {
        r as usize
    } else {
        x.ceil() as usize
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct CurveRow {
    pub alpha: f64,
    pub estimate: SurvivalEstimate,
}

/// Survival estimates at `N = ⌈n^α⌉` for each exponent, in ascending `α`.
pub fn survival_curve(
    n: usize,
    exponents: &[f64],
    trials: usize,
    painter: &dyn PainterStrategy,
    targets: &[Graph],
    seed: u64,
) -> Result<Vec<CurveRow>> {
    let mut alphas = exponents.to_vec();
    alphas.sort_by(|a, b| a.partial_cmp(b).unwrap());
    alphas
        .into_iter()
        .map(|alpha| {
            let cfg = ProcessConfig { n, steps: steps_for(n, alpha), painter, targets: targets.to_vec(), seed };
            Ok(CurveRow { alpha, estimate: estimate_survival(&cfg, trials)? })
        })
        .collect()
}

pub const CURVE_HEADER: &str = "n,alpha,N,trials,survived,rate,ci_low,ci_high";

pub fn curve_csv(rows: &[CurveRow]) -> String {
    let mut s = format!("{CURVE_HEADER}\n");
    for row in rows {
        let e = &row.estimate;
        writeln!(s, "{},{},{},{},{},{:.6},{:.6},{:.6}", e.n, row.alpha, e.steps, e.trials, e.survived, e.rate_f64(), e.ci_low, e.ci_high)
            .unwrap();
    }
    s
}

#[derive(Clone, Debug, PartialEq)]
pub struct ThresholdEstimate {
    /// Median of the per-`n` crossings.
    pub exponent: f64,
    /// `(n, α)` where survival crosses one half.
    pub crossings: Vec<(usize, f64)>,
}

const BISECTION_STEPS: usize = 12;

fn crossing(n: usize, trials: usize, painter: &dyn PainterStrategy, targets: &[Graph], seed: u64) -> Result<f64> {
    let rate = |alpha: f64| -> Result<f64> {
        let cfg = ProcessConfig { n, steps: steps_for(n, alpha).min(max_steps(n)), painter, targets: targets.to_vec(), seed };
        Ok(estimate_survival(&cfg, trials)?.rate_f64())
    };
    let (mut lo, mut hi) = (0.0, (max_steps(n) as f64).ln() / (n as f64).ln());
    let (rl, rh) = (rate(lo)?, rate(hi)?);
    if rl < 0.5 || rh >= 0.5 {
        return Err(Error::Range(format!(
            "n = {n}: survival {rl} at alpha {lo} and {rh} at alpha {hi:.4} do not bracket 1/2"
        )));
    }
    for _ in 0..BISECTION_STEPS {
        let mid = (lo + hi) / 2.0;
        if rate(mid)? >= 0.5 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok((lo + hi) / 2.0)
}

/// Locates, for each `n`, the exponent where survival drops through one half, and
/// reports the median.
pub fn estimate_threshold_exponent(
    painter: &dyn PainterStrategy,
    targets: &[Graph],
    n_list: &[usize],
    trials: usize,
    seed: u64,
) -> Result<ThresholdEstimate> {
    if n_list.is_empty() || n_list.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::Domain("n_list must be non-empty and ascending".into()));
    }
    if trials < 50 {
        return Err(Error::Domain("need at least 50 trials per point".into()));
    }
    let crossings = n_list
        .iter()
        .map(|&n| Ok((n, crossing(n, trials, painter, targets, seed)?)))
        .collect::<Result<Vec<_>>>()?;
    let mut xs: Vec<f64> = crossings.iter().map(|c| c.1).collect();
    xs.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let k = xs.len();
    let exponent = if k % 2 == 1 { xs[k / 2] } else { (xs[k / 2 - 1] + xs[k / 2]) / 2.0 };
    Ok(ThresholdEstimate { exponent, crossings })
}

/// Painter for a forest game that plays the solver's surviving strategy one below the
/// game's value, falling back to greedy off the table.
pub fn optimal_forest_painter(target: &Graph, r: usize, k_max: u32) -> Result<TablePainter<Greedy>> {
    let config = GameConfig::symmetric(Target::from_graph(target.clone()), r, Restriction::TreeSize(k_max))?;
    let res = k_star_exact(&config, k_max)?;
    let table = res
        .painter_table
        .filter(|_| res.k_star.is_some())
        .ok_or_else(|| Error::Range(format!("no game value found up to tree size {k_max}")))?;
    Ok(table_painter(table, greedy_painter(&vec![target.clone(); r])))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::strategies::const_painter;

    #[test]
    fn unrank_lists_every_pair_once() {
        let pairs: Vec<_> = (0..10).map(unrank).collect();
        assert_eq!(pairs[..4], [(0, 1), (0, 2), (1, 2), (0, 3)]);
        assert_eq!(pairs[9], (3, 4));
        assert_eq!(unrank(max_steps(100_000) as u64 - 1), (99_998, 99_999));
    }

    #[test]
    fn streams_draw_distinct_edges() {
        let all: Vec<_> = EdgeStream::new(7, 3, 0).collect();
        let mut s = all.clone();
        s.sort_unstable();
        s.dedup();
        assert_eq!((all.len(), s.len()), (21, 21));
    }

    #[test]
    fn single_edge_target_never_survives() {
        let p = const_painter(1);
        let cfg = ProcessConfig { n: 4, steps: 1, painter: &p, targets: vec![Graph::path(1); 2], seed: 9 };
        assert!(run_process(&cfg).unwrap().is_win());
        let too_many = ProcessConfig { steps: 7, ..cfg };
        assert!(run_process(&too_many).is_err());
    }

    #[test]
    fn exact_interval_edges() {
        let (lo, hi) = binomial_ci(0, 10, 0.95);
        assert_eq!(lo, 0.0);
        // 1 - 0.025^(1/10)
        assert!((hi - 0.308_497_11).abs() < 1e-7, "{hi}");
        let (lo, hi) = binomial_ci(5, 10, 0.95);
        assert!((lo - 0.187_086_03).abs() < 1e-7 && (hi - 0.812_913_97).abs() < 1e-7, "{lo} {hi}");
    }
}
