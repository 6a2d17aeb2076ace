//! `ramsey`: command-line driver for the Builder-Painter toolkit.
//!
//! Exit codes: 0 on success, 2 when a certificate or playout fails, 64 on bad
//! arguments, 1 on any other error.

use clap::{Args, Parser, Subcommand};
use ramsey_games::density::{m2, m2_onl, max_density, threshold_report};
use ramsey_games::game::file::{read_file, to_json, write_file};
use ramsey_games::game::{play, verify_certificate, GameConfig, Outcome, PainterStrategy, Restriction, Target, Transcript, Verdict};
use ramsey_games::graph::parse_graph_text;
use ramsey_games::montecarlo::{curve_csv, estimate_survival, optimal_forest_painter, run_process, survival_curve, ProcessConfig};
use ramsey_games::rational::{format_rational, parse_rational};
use ramsey_games::solver::{k_star_against, k_star_exact, k_star_upper, HeuristicConfig, PainterFunction, PainterTable, SolveResult, StrategyFunction};
use ramsey_games::strategies::{
    builder_bowtie, builder_cycle, builder_path_doubling, builder_star, force_tree, greedy_painter, painter_by_name, smart_greedy_painter,
    table_painter, Construction, SigmaPolicy,
};
use ramsey_games::{Error, Graph, Rational};
use serde_json::{json, Value};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "ramsey", version, about = "Builder-Painter Ramsey games: solving, constructions, certificates, simulation")]
struct Cli {
    /// Print a JSON summary instead of text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args, Clone)]
struct Game {
    /// Target per color (`path:3`, `cycle:4`, `star:2`, `clique:3`, `bowtie`, `edge`, or
    /// a graph file); one target is used for every color.
    #[arg(long = "target", required = true)]
    targets: Vec<String>,
    /// Number of colors when a single target is given.
    #[arg(long, default_value_t = 2)]
    colors: usize,
}

#[derive(Args, Clone, Default)]
struct RestrictionArg {
    /// Density cap, an exact fraction such as `3/2`.
    #[arg(long, conflicts_with = "treesize")]
    density: Option<String>,
    /// Tree-size cap.
    #[arg(long)]
    treesize: Option<u32>,
}

#[derive(Subcommand)]
enum Cmd {
    /// Maximum density of a graph.
    Density { graph: String },
    /// Maximum 2-density.
    M2 { graph: String },
    /// Online density for `r` colors.
    M2onl {
        graph: String,
        #[arg(long, default_value_t = 2)]
        colors: usize,
    },
    /// Densities and threshold exponents.
    Report {
        graph: String,
        #[arg(long, default_value_t = 2)]
        colors: usize,
    },
    /// Exact tree-size game value with certificate and Painter table.
    SolveExact {
        #[command(flatten)]
        game: Game,
        #[arg(long)]
        cap: u32,
        /// Where to write the Builder certificate.
        #[arg(long)]
        cert: Option<PathBuf>,
        /// Where to write the surviving Painter table.
        #[arg(long)]
        table: Option<PathBuf>,
    },
    /// Upper bound from a budgeted search.
    SolveUpper {
        #[command(flatten)]
        game: Game,
        #[arg(long)]
        cap: u32,
        #[arg(long, default_value_t = HeuristicConfig::default().beam)]
        beam: usize,
        #[arg(long, default_value_t = HeuristicConfig::default().max_nodes)]
        max_nodes: u64,
        #[arg(long)]
        cert: Option<PathBuf>,
    },
    /// Smallest tree-size cap at which Builder beats a fixed painter.
    SolveVsPainter {
        painter: String,
        #[command(flatten)]
        game: Game,
        #[arg(long)]
        cap: u32,
    },
    /// Verifies a certificate file, optionally under another restriction.
    VerifyCert {
        file: PathBuf,
        #[command(flatten)]
        restriction: RestrictionArg,
    },
    /// Plays a certificate against a painter.
    Play {
        file: PathBuf,
        #[arg(long)]
        painter: String,
        /// Also write the moves, one `u v color` line each.
        #[arg(long)]
        transcript: Option<PathBuf>,
    },
    /// Builds a construction: `cycle:L`, `bowtie`, `star:L,R`, `path-doubling:L` or `tree:TARGET`.
    Construct {
        spec: String,
        /// Painter replies for path doubling, e.g. `1,2,2,1`.
        #[arg(long)]
        sigma: Option<String>,
        /// Colors for `tree:`.
        #[arg(long, default_value_t = 2)]
        colors: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Runs the random process, once or over several trials.
    Simulate {
        #[command(flatten)]
        game: Game,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        steps: usize,
        #[arg(long)]
        painter: String,
        #[arg(long, default_value_t = 1)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Tree-size bound for the `optimal` painter's solver run.
        #[arg(long, default_value_t = 12)]
        cap: u32,
    },
    /// Survival rates at `N = ceil(n^alpha)`, as CSV.
    Curve {
        #[command(flatten)]
        game: Game,
        #[arg(long)]
        n: usize,
        /// Comma-separated exponents (decimals or fractions).
        #[arg(long)]
        alphas: String,
        #[arg(long)]
        painter: String,
        #[arg(long, default_value_t = 100)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 12)]
        cap: u32,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

/// Failures that map to exit codes.
enum Failure {
    Usage(String),
    Verdict(String),
    Other(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Parse(s) => Failure::Usage(s),
            e => Failure::Other(e),
        }
    }
}

type Out = Result<(String, Value), Failure>;

fn usage(s: impl Into<String>) -> Failure {
    Failure::Usage(s.into())
}

fn io_err(p: &Path, e: std::io::Error) -> Failure {
    Failure::Other(Error::Domain(format!("{}: {e}", p.display())))
}

/// A named graph, or a graph file.
fn load_graph(s: &str) -> Result<Graph, Failure> {
    if let Ok(g) = Graph::named(s) {
        return Ok(g);
    }
    let p = Path::new(s);
    if !p.exists() {
        return Err(usage(format!("{s:?} is neither a named graph nor a file")));
    }
    let text = std::fs::read_to_string(p).map_err(|e| io_err(p, e))?;
    Ok(parse_graph_text(&text)?.underlying())
}

fn load_target(s: &str) -> Result<Target, Failure> {
    match Target::named(s) {
        Ok(t) => Ok(t),
        Err(_) => Ok(Target::from_graph(load_graph(s)?)),
    }
}

fn config(game: &Game, restriction: Restriction) -> Result<GameConfig, Failure> {
    let targets = game.targets.iter().map(|s| load_target(s)).collect::<Result<Vec<_>, _>>()?;
    Ok(if targets.len() == 1 {
        GameConfig::symmetric(targets.into_iter().next().unwrap(), game.colors, restriction)?
    } else {
        GameConfig::new(targets, restriction)?
    })
}

fn restriction(r: &RestrictionArg) -> Result<Option<Restriction>, Failure> {
    Ok(match (&r.density, r.treesize) {
        (Some(d), _) => Some(Restriction::Density(parse_rational(d)?)),
        (None, Some(k)) => Some(Restriction::TreeSize(k)),
        (None, None) => None,
    })
}

fn rat(x: &Rational) -> String {
    format_rational(x)
}

fn write_text(p: &Path, s: &str) -> Result<(), Failure> {
    std::fs::write(p, s).map_err(|e| io_err(p, e))
}

/// Painter by name, plus `optimal` (the solver's surviving table one below the game
/// value, greedy off the table) and `table:FILE`.
fn painter(name: &str, config: &GameConfig, cap: u32) -> Result<Box<dyn PainterStrategy>, Failure> {
    if name == "optimal" {
        let t = config.target(1);
        if config.targets().iter().any(|x| &x.graph != t) {
            return Err(usage("the optimal painter needs the same target for every color"));
        }
        return Ok(Box::new(optimal_forest_painter(t, config.r() as usize, cap)?));
    }
    if let Some(file) = name.strip_prefix("table:") {
        let p = Path::new(file);
        let table = PainterTable::from_json(&std::fs::read_to_string(p).map_err(|e| io_err(p, e))?)?;
        return Ok(Box::new(table_painter(table, greedy_painter(&config.target_graphs()))));
    }
    Ok(painter_by_name(name, config)?)
}

fn solve_summary(res: &SolveResult, cap: u32, cert: Option<&Path>, table: Option<&Path>, config: &GameConfig) -> Out {
    let mut text = match res.k_star {
        Some(k) => format!("k*={k}\n"),
        None => format!("k*>{cap}\n"),
    };
    if let (Some(p), Some(c), Some(k)) = (cert, &res.builder_certificate, res.k_star) {
        let cfg = config.with_restriction(Restriction::TreeSize(k))?;
        write_file(p, &ramsey_games::game::BuilderCertificate::Family(c.clone()), &cfg)?;
        text += &format!("certificate written to {}\n", p.display());
    }
    if let (Some(p), Some(t)) = (table, &res.painter_table) {
        write_text(p, &t.to_json())?;
        text += &format!("painter table (cap {}) written to {}\n", t.cap, p.display());
    }
    let s = &res.stats;
    text += &format!("nodes {}, dedup hits {}, {} ms\n", s.nodes, s.dedup_hits, s.wall_ms);
    let v = json!({
        "k_star": res.k_star,
        "cap": cap,
        "certificate": res.builder_certificate.is_some(),
        "painter_table_cap": res.painter_table.as_ref().map(|t| t.cap),
        "nodes": s.nodes,
        "dedup_hits": s.dedup_hits,
    });
    Ok((text, v))
}

fn transcript_json(t: &Transcript) -> Value {
    match &t.outcome {
        Outcome::Mono { color, vertices } => json!({"outcome": "mono", "color": color, "vertices": vertices, "edges": t.moves.len()}),
        Outcome::Survived => json!({"outcome": "survived", "edges": t.moves.len()}),
    }
}

fn transcript_text(t: &Transcript) -> String {
    match &t.outcome {
        Outcome::Mono { color, vertices } => {
            format!("WIN color {color} on vertices {vertices:?} after {} edges\n", t.moves.len())
        }
        Outcome::Survived => format!("SURVIVED {} edges\n", t.moves.len()),
    }
}

fn construct(spec: &str, sigma: Option<&str>, colors: usize) -> Result<Construction, Failure> {
    let (kind, arg) = spec.split_once(':').unwrap_or((spec, ""));
    let num = |s: &str| s.trim().parse::<usize>().map_err(|_| usage(format!("bad construction {spec:?}")));
    Ok(match kind {
        "cycle" => builder_cycle(num(arg)?)?,
        "bowtie" => builder_bowtie()?,
        "star" => {
            let (l, r) = arg.split_once(',').ok_or_else(|| usage("star needs `star:L,R`"))?;
            builder_star(num(l)?, num(r)? as u8)?
        }
        "path-doubling" => {
            let policy = match sigma {
                None => SigmaPolicy::Adaptive,
                Some(s) => SigmaPolicy::Fixed(
                    s.split(',').map(|x| x.trim().parse::<u8>().map_err(|_| usage(format!("bad sigma {s:?}")))).collect::<Result<_, _>>()?,
                ),
            };
            builder_path_doubling(num(arg)?, policy)?.0
        }
        "tree" => force_tree(&load_graph(arg)?, colors as u8)?,
        _ => return Err(usage(format!("unknown construction {spec:?}"))),
    })
}

fn parse_alpha(s: &str) -> Result<f64, Failure> {
    let s = s.trim();
    if let Some((p, q)) = s.split_once('/') {
        let (p, q): (f64, f64) = (p.trim().parse().map_err(|_| usage(format!("bad exponent {s:?}")))?, q.trim().parse().map_err(|_| usage(format!("bad exponent {s:?}")))?);
        return Ok(p / q);
    }
    s.parse().map_err(|_| usage(format!("bad exponent {s:?}")))
}

fn run(cmd: Cmd) -> Out {
    match cmd {
        Cmd::Density { graph } => {
            let g = load_graph(&graph)?;
            let d = max_density(&g);
            Ok((format!("{}\n", rat(&d)), json!({"density": rat(&d), "vertices": g.vertex_count(), "edges": g.edge_count()})))
        }
        Cmd::M2 { graph } => {
            let d = m2(&load_graph(&graph)?)?;
            Ok((format!("{}\n", rat(&d)), json!({"m2": rat(&d)})))
        }
        Cmd::M2onl { graph, colors } => {
            let d = m2_onl(&load_graph(&graph)?, colors)?;
            Ok((format!("{}\n", rat(&d)), json!({"m2_onl": rat(&d), "colors": colors})))
        }
        Cmd::Report { graph, colors } => {
            let r = threshold_report(&load_graph(&graph)?, colors)?;
            let onl: Vec<String> = r.m2_onl.iter().map(rat).collect();
            let text = format!(
                "m = {}\nm2 = {}\nm2_onl (1..{colors} colors) = {}\nlower exponent = {}\nupper exponent = {}\nsmart-greedy exponent = {}\n",
                rat(&r.m),
                rat(&r.m2),
                onl.join(", "),
                rat(&r.lower_exponent),
                rat(&r.upper_exponent),
                rat(&r.smart_greedy_exponent)
            );
            let v = json!({
                "m": rat(&r.m), "m2": rat(&r.m2), "m2_onl": onl,
                "lower_exponent": rat(&r.lower_exponent), "upper_exponent": rat(&r.upper_exponent),
                "smart_greedy_exponent": rat(&r.smart_greedy_exponent),
            });
            Ok((text, v))
        }
        Cmd::SolveExact { game, cap, cert, table } => {
            let config = config(&game, Restriction::TreeSize(cap))?;
            let res = k_star_exact(&config, cap)?;
            solve_summary(&res, cap, cert.as_deref(), table.as_deref(), &config)
        }
        Cmd::SolveUpper { game, cap, beam, max_nodes, cert } => {
            let config = config(&game, Restriction::TreeSize(cap))?;
            let res = k_star_upper(&config, &HeuristicConfig { beam, max_nodes }, cap)?;
            solve_summary(&res, cap, cert.as_deref(), None, &config)
        }
        Cmd::SolveVsPainter { painter: name, game, cap } => {
            let config = config(&game, Restriction::TreeSize(cap))?;
            let k = match name.as_str() {
                "greedy" => k_star_against(&greedy_painter(&config.target_graphs()), &config, cap)?,
                "smart-greedy" => k_star_against(&smart_greedy_painter(config.target(1), config.r() as usize)?, &config, cap)?,
                _ => {
                    let p = painter(&name, &config, cap)?;
                    let f: &dyn StrategyFunction = &PainterFunction(&*p);
                    k_star_against(f, &config, cap)?
                }
            };
            let text = match k {
                Some(k) => format!("k*={k}\n"),
                None => format!("k*>{cap}\n"),
            };
            Ok((text, json!({"painter": name, "k_star": k, "cap": cap})))
        }
        Cmd::VerifyCert { file, restriction: r } => {
            let (cert, mut cfg) = read_file(&file)?;
            if let Some(r) = restriction(&r)? {
                cfg = cfg.with_restriction(r)?;
            }
            let v = verify_certificate(&cert, &cfg)?;
            let j = match &v {
                Verdict::Win(s) => json!({
                    "verdict": "WIN", "kind": cert.kind(), "restriction": cfg.restriction().to_string(),
                    "nodes": s.nodes, "leaves": s.leaves, "max_density": rat(&s.max_density),
                }),
                Verdict::Fail { path, depth, reason } => json!({
                    "verdict": "FAIL", "kind": cert.kind(), "restriction": cfg.restriction().to_string(),
                    "path": path, "depth": depth, "reason": reason.to_string(),
                }),
            };
            if v.is_win() {
                Ok((format!("{v}\n"), j))
            } else {
                Err(Failure::Verdict(if cfg_json() { j.to_string() } else { v.to_string() }))
            }
        }
        Cmd::Play { file, painter: name, transcript } => {
            let (cert, cfg) = read_file(&file)?;
            let p = painter(&name, &cfg, 12)?;
            let t = play(&cert, &*p, &cfg)?;
            if let Some(out) = transcript {
                let lines: String = t.moves.iter().map(|m| format!("{} {} {}\n", m.u, m.v, m.color)).collect();
                write_text(&out, &lines)?;
            }
            let mut j = transcript_json(&t);
            j["painter"] = json!(p.name());
            if t.is_win() {
                Ok((transcript_text(&t), j))
            } else {
                Err(Failure::Verdict(if cfg_json() { j.to_string() } else { transcript_text(&t) }))
            }
        }
        Cmd::Construct { spec, sigma, colors, out } => {
            let c = construct(&spec, sigma.as_deref(), colors)?;
            let mut text = format!("{} certificate, {}\n", c.certificate.kind(), c.config.restriction());
            if let Some(p) = &out {
                write_file(p, &c.certificate, &c.config)?;
                text += &format!("written to {}\n", p.display());
            } else {
                text = to_json(&c.certificate, &c.config)?;
            }
            Ok((text, json!({"kind": c.certificate.kind(), "restriction": c.config.restriction().to_string(), "out": out})))
        }
        Cmd::Simulate { game, n, steps, painter: name, trials, seed, cap } => {
            let cfg = config(&game, Restriction::TreeSize(cap))?;
            let p = painter(&name, &cfg, cap)?;
            let pc = ProcessConfig { n, steps, painter: &*p, targets: cfg.target_graphs(), seed };
            if trials == 1 {
                let t = run_process(&pc)?;
                return Ok((transcript_text(&t), transcript_json(&t)));
            }
            let e = estimate_survival(&pc, trials)?;
            let text = format!(
                "survived {}/{} (rate {:.4}, 95% CI [{:.4}, {:.4}])\n",
                e.survived,
                e.trials,
                e.rate_f64(),
                e.ci_low,
                e.ci_high
            );
            let v = json!({"n": n, "N": steps, "trials": trials, "survived": e.survived, "rate": rat(&e.rate), "ci_low": e.ci_low, "ci_high": e.ci_high});
            Ok((text, v))
        }
        Cmd::Curve { game, n, alphas, painter: name, trials, seed, cap, out } => {
            let cfg = config(&game, Restriction::TreeSize(cap))?;
            let p = painter(&name, &cfg, cap)?;
            let alphas = alphas.split(',').map(parse_alpha).collect::<Result<Vec<_>, _>>()?;
            let rows = survival_curve(n, &alphas, trials, &*p, &cfg.target_graphs(), seed)?;
            let csv = curve_csv(&rows);
            if let Some(o) = &out {
                write_text(o, &csv)?;
            }
            let v: Vec<Value> = rows
                .iter()
                .map(|r| json!({"alpha": r.alpha, "N": r.estimate.steps, "survived": r.estimate.survived, "trials": r.estimate.trials}))
                .collect();
            Ok((csv, json!({"n": n, "rows": v})))
        }
    }
}

static JSON: std::sync::OnceLock<bool> = std::sync::OnceLock::new();

fn cfg_json() -> bool {
    *JSON.get().unwrap_or(&false)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 64 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    JSON.set(cli.json).unwrap();
    match run(cli.cmd) {
        Ok((text, v)) => {
            if cli.json {
                println!("{v}");
            } else {
                print!("{text}");
            }
            ExitCode::SUCCESS
        }
        Err(Failure::Verdict(s)) => {
            println!("{}", s.trim_end());
            ExitCode::from(2)
        }
        Err(Failure::Usage(s)) => {
            eprintln!("error: {s}");
            eprintln!("run `ramsey --help` for usage");
            ExitCode::from(64)
        }
        Err(Failure::Other(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
