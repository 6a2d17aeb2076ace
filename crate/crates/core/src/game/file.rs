//! Certificate files: a JSON header (format version, kind, colors, targets,
//! restriction) followed by the body of the certificate kind.
//!
//! Files are written compactly with a fixed field order and a trailing newline, so
//! a canonical file survives parse and serialize unchanged. Tree codes are digit
//! strings (one digit per code symbol).

use super::explicit::{CertNode, ExplicitCertificate};
use super::family::{FamilyCertificate, FamilyNode};
use super::program::{Procedure, ProgramCertificate};
use super::staged::{Finale, Gadget, StagedCertificate, TemplateNode};
use super::{GameConfig, Restriction, Target};
use crate::error::{Error, Result};
use crate::graph::{Color, Graph, Vertex};
use crate::rational::{format_rational, parse_rational};
use crate::tree::Code;
use serde::{Deserialize, Serialize};
use std::path::Path;

pub const FORMAT_VERSION: u32 = 1;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BuilderCertificate {
    Explicit(ExplicitCertificate),
    Family(FamilyCertificate),
    Staged(StagedCertificate),
}

impl BuilderCertificate {
    pub fn r(&self) -> Color {
        match self {
            BuilderCertificate::Explicit(c) => c.r,
            BuilderCertificate::Family(c) => c.r,
            BuilderCertificate::Staged(c) => c.r,
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            BuilderCertificate::Explicit(_) => "explicit",
            BuilderCertificate::Family(_) => "family",
            BuilderCertificate::Staged(_) => "staged",
        }
    }
}

#[derive(Serialize, Deserialize)]
struct GraphJson {
    vertices: usize,
    edges: Vec<[Vertex; 2]>,
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum TargetJson {
    Named(String),
    Graph(GraphJson),
}

#[derive(Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
enum RestrictionJson {
    Density(String),
    TreeSize(u32),
}

#[derive(Serialize, Deserialize)]
struct FamilyJson {
    trees: Vec<String>,
    nodes: Vec<FamilyNode>,
}

#[derive(Serialize, Deserialize)]
struct ProgramJson {
    goal: GraphJson,
    trees: Vec<String>,
    procedures: Vec<Procedure>,
}

#[derive(Serialize, Deserialize)]
struct FinaleJson {
    copies: u32,
    exit_pattern: GraphJson,
    templates: Vec<TemplateNode>,
}

#[derive(Serialize, Deserialize)]
struct StagedJson {
    program: ProgramJson,
    templates: Vec<TemplateNode>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    finale: Option<FinaleJson>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct FileJson {
    format_version: u32,
    kind: String,
    r: Color,
    targets: Vec<TargetJson>,
    restriction: RestrictionJson,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    root: Option<CertNode>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    family: Option<FamilyJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    staged: Option<StagedJson>,
}

fn graph_json(g: &Graph) -> GraphJson {
    GraphJson { vertices: g.vertex_count(), edges: g.edges().iter().map(|&(u, v)| [u, v]).collect() }
}

fn graph_of(g: GraphJson) -> Result<Graph> {
    let edges: Vec<_> = g.edges.iter().map(|e| (e[0], e[1])).collect();
    Graph::from_edges(g.vertices, &edges)
}

fn code_string(c: &Code) -> Result<String> {
    c.iter()
        .map(|&d| char::from_digit(d as u32, 10).ok_or_else(|| Error::Domain("tree codes need at most 9 colors".into())))
        .collect()
}

fn codes_json(cs: &[Code]) -> Result<Vec<String>> {
    cs.iter().map(code_string).collect()
}

fn codes_of(ss: Vec<String>) -> Result<Vec<Code>> {
    ss.iter()
        .map(|s| {
            s.chars()
                .map(|ch| ch.to_digit(10).map(|d| d as u8).ok_or_else(|| Error::Parse(format!("bad tree code {s:?}"))))
                .collect()
        })
        .collect()
}

fn program_json(p: &ProgramCertificate) -> Result<ProgramJson> {
    Ok(ProgramJson { goal: graph_json(&p.goal), trees: codes_json(&p.trees)?, procedures: p.procedures.clone() })
}

fn program_of(p: ProgramJson, r: Color) -> Result<ProgramCertificate> {
    Ok(ProgramCertificate { r, goal: graph_of(p.goal)?, trees: codes_of(p.trees)?, procedures: p.procedures })
}

/// Serializes a certificate with its game header.
pub fn to_json(cert: &BuilderCertificate, config: &GameConfig) -> Result<String> {
    let targets = config
        .targets()
        .iter()
        .map(|t| match &t.name {
            Some(n) => TargetJson::Named(n.clone()),
            None => TargetJson::Graph(graph_json(&t.graph)),
        })
        .collect();
    let restriction = match config.restriction() {
        Restriction::Density(d) => RestrictionJson::Density(format_rational(&d)),
        Restriction::TreeSize(k) => RestrictionJson::TreeSize(k),
    };
    let mut f = FileJson {
        format_version: FORMAT_VERSION,
        kind: cert.kind().to_string(),
        r: cert.r(),
        targets,
        restriction,
        root: None,
        family: None,
        staged: None,
    };
    match cert {
        BuilderCertificate::Explicit(c) => f.root = Some(c.root.clone()),
        BuilderCertificate::Family(c) => f.family = Some(FamilyJson { trees: codes_json(&c.trees)?, nodes: c.nodes.clone() }),
        BuilderCertificate::Staged(c) => {
            let finale = match &c.finale {
                None => None,
                Some(fin) => Some(FinaleJson {
                    copies: fin.copies,
                    exit_pattern: graph_json(&fin.exit_pattern),
                    templates: fin.templates.clone(),
                }),
            };
            f.staged = Some(StagedJson { program: program_json(&c.gadget.forcing)?, templates: c.gadget.templates.clone(), finale })
        }
    }
    let mut s = serde_json::to_string(&f).map_err(|e| Error::Parse(e.to_string()))?;
    s.push('\n');
    Ok(s)
}

/// Parses a certificate file into the certificate and its game configuration.
pub fn from_json(s: &str) -> Result<(BuilderCertificate, GameConfig)> {
    let f: FileJson = serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
    if f.format_version != FORMAT_VERSION {
        return Err(Error::Parse(format!("unsupported format_version {}", f.format_version)));
    }
    let targets = f
        .targets
        .into_iter()
        .map(|t| match t {
            TargetJson::Named(n) => Target::named(&n),
            TargetJson::Graph(g) => Ok(Target::from_graph(graph_of(g)?)),
        })
        .collect::<Result<Vec<_>>>()?;
    let restriction = match f.restriction {
        RestrictionJson::Density(d) => Restriction::Density(parse_rational(&d)?),
        RestrictionJson::TreeSize(k) => Restriction::TreeSize(k),
    };
    let config = GameConfig::new(targets, restriction)?;
    let missing = |what: &str| Error::Parse(format!("{} certificate without {what}", f.kind));
    let r = f.r;
    let cert = match f.kind.as_str() {
        "explicit" => BuilderCertificate::Explicit(ExplicitCertificate { r, root: f.root.ok_or_else(|| missing("root"))? }),
        "family" => {
            let fam = f.family.ok_or_else(|| missing("family"))?;
            BuilderCertificate::Family(FamilyCertificate { r, trees: codes_of(fam.trees)?, nodes: fam.nodes })
        }
        "staged" => {
            let st = f.staged.ok_or_else(|| missing("staged"))?;
            let finale = match st.finale {
                None => None,
                Some(fin) => Some(Finale { copies: fin.copies, exit_pattern: graph_of(fin.exit_pattern)?, templates: fin.templates }),
            };
            let gadget = Gadget { forcing: program_of(st.program, r)?, templates: st.templates };
            BuilderCertificate::Staged(StagedCertificate { r, gadget, finale })
        }
        k => return Err(Error::Parse(format!("unknown certificate kind {k:?}"))),
    };
    Ok((cert, config))
}

pub fn write_file(path: &Path, cert: &BuilderCertificate, config: &GameConfig) -> Result<()> {
    std::fs::write(path, to_json(cert, config)?).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))
}

pub fn read_file(path: &Path) -> Result<(BuilderCertificate, GameConfig)> {
    let s = std::fs::read_to_string(path).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
    from_json(&s)
}
