//! Graph files and family directories.
//!
//! A family directory holds one graph6 file per member (`*.g6`, read in file
//! name order, member named after the file stem) and, optionally, a
//! `<stem>.json` sidecar with a path decomposition and a proper coloring.

use std::fs;
use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use log::warn;
use serde::{Deserialize, Serialize};

use universo::coloring::{greedy_k_coloring, Coloring};
use universo::decomp::{decompose, DecompKind, PathDecomposition};
use universo::graph::graph6;
use universo::{FamilySpec, Graph};

use crate::report::Inputs;

#[derive(Debug, Default, Serialize, Deserialize)]
pub struct MemberSidecar {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub decomposition: Option<PathDecomposition>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub coloring: Option<Coloring>,
}

pub struct Member {
    pub name: String,
    pub graph: Graph,
    pub sidecar: MemberSidecar,
}

pub fn read_graph(path: &Path, inputs: &mut Inputs) -> Result<Graph> {
    let bytes = fs::read(path).with_context(|| format!("reading {}", path.display()))?;
    inputs.file(&path.display().to_string(), &bytes);
    let text = String::from_utf8(bytes).with_context(|| format!("{} is not UTF-8", path.display()))?;
    let line = text
        .lines()
        .map(str::trim)
        .find(|l| !l.is_empty())
        .with_context(|| format!("{} is empty", path.display()))?;
    graph6::decode(line).with_context(|| format!("parsing {}", path.display()))
}

pub fn read_json<T: for<'de> Deserialize<'de>>(path: &Path, inputs: &mut Inputs) -> Result<T> {
    let bytes = fs::read(path).with_context(|| format!("reading {}", path.display()))?;
    inputs.file(&path.display().to_string(), &bytes);
    serde_json::from_slice(&bytes).with_context(|| format!("parsing {}", path.display()))
}

pub fn write_graph(path: &Path, g: &Graph) -> Result<()> {
    fs::write(path, format!("{}\n", graph6::encode(g))).with_context(|| format!("writing {}", path.display()))
}

pub fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<()> {
    let mut text = serde_json::to_string_pretty(value)?;
    text.push('\n');
    fs::write(path, text).with_context(|| format!("writing {}", path.display()))
}

/// `path` with its extension replaced by `json`.
pub fn sidecar_path(path: &Path) -> PathBuf {
    path.with_extension("json")
}

pub fn read_family(dir: &Path, inputs: &mut Inputs) -> Result<(FamilySpec, Vec<Member>)> {
    let mut files: Vec<PathBuf> = fs::read_dir(dir)
        .with_context(|| format!("reading family directory {}", dir.display()))?
        .map(|e| e.map(|e| e.path()))
        .collect::<std::io::Result<_>>()?;
    files.retain(|p| p.extension().is_some_and(|e| e == "g6"));
    files.sort();
    if files.is_empty() {
        bail!("no .g6 files in {}", dir.display());
    }
    let mut members = Vec::with_capacity(files.len());
    for path in files {
        let name = path
            .file_stem()
            .and_then(|s| s.to_str())
            .with_context(|| format!("bad file name {}", path.display()))?
            .to_owned();
        let graph = read_graph(&path, inputs)?.with_name(name.clone());
        let side = sidecar_path(&path);
        let sidecar = if side.exists() {
            read_json(&side, inputs)?
        } else {
            MemberSidecar::default()
        };
        members.push(Member { name, graph, sidecar });
    }
    let family = FamilySpec::new(members.iter().map(|m| m.graph.clone()).collect())?;
    Ok((family, members))
}

/// Sidecar decomposition and coloring, or the interval heuristic and a
/// greedy `k`-coloring when the sidecar lacks them.
pub fn member_inputs(member: &Member, k: usize) -> Result<(PathDecomposition, Coloring)> {
    let decomp = match &member.sidecar.decomposition {
        Some(d) => d.clone(),
        None => {
            warn!("{}: no decomposition in sidecar, using the interval heuristic", member.name);
            decompose(&member.graph, DecompKind::IntervalHeuristic)?
        }
    };
    let base = match &member.sidecar.coloring {
        Some(c) => c.clone(),
        None => {
            warn!("{}: no coloring in sidecar, using a greedy {k}-coloring", member.name);
            greedy_k_coloring(&member.graph, k)
                .with_context(|| format!("{}: greedy coloring needs more than {k} colors", member.name))?
        }
    };
    if !decomp.is_valid_for(&member.graph) {
        bail!("{}: decomposition is not valid for the graph", member.name);
    }
    if base.k() != k || !base.is_proper(&member.graph) || !base.covers(&member.graph) || !base.deleted().is_empty() {
        bail!("{}: sidecar coloring is not a proper {k}-coloring of the whole graph", member.name);
    }
    Ok((decomp, base))
}
