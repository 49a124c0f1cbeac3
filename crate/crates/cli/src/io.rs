//! Loading graphs and solution files from disk.

use std::fs;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use mcs_core::graph::{parse_binary_graph, parse_text_graph, Graph, GraphError, Vertex};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum LoadError {
    #[error("cannot read {path}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error("cannot parse {path}")]
    Graph { path: PathBuf, source: GraphError },
    #[error("{path}:{line}: expected `p q`, got `{text}`")]
    SolutionLine { path: PathBuf, line: usize, text: String },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum GraphFormat {
    #[default]
    Bin,
    Text,
}

impl FromStr for GraphFormat {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "bin" => Ok(GraphFormat::Bin),
            "text" => Ok(GraphFormat::Text),
            _ => Err(format!("unknown format `{s}` (expected bin or text)")),
        }
    }
}

impl GraphFormat {
    /// `.txt` files are text, everything else the binary format.
    pub fn from_extension(path: &Path) -> GraphFormat {
        match path.extension().and_then(|e| e.to_str()) {
            Some("txt") => GraphFormat::Text,
            _ => GraphFormat::Bin,
        }
    }
}

fn read(path: &Path) -> Result<Vec<u8>, LoadError> {
    fs::read(path).map_err(|source| LoadError::Io { path: path.to_path_buf(), source })
}

/// Text files carry their own directed/labelled header, so the flags only
/// apply to the binary format.
pub fn load_graph(path: &Path, format: GraphFormat, directed: bool, labelled: bool) -> Result<Graph, LoadError> {
    let bytes = read(path)?;
    let parsed = match format {
        GraphFormat::Bin => parse_binary_graph(&bytes, directed, labelled),
        GraphFormat::Text => parse_text_graph(&String::from_utf8_lossy(&bytes)),
    };
    parsed.map_err(|source| LoadError::Graph { path: path.to_path_buf(), source })
}

/// Reads `p q` lines. Blank lines and `#` comments are skipped.
pub fn load_solution(path: &Path) -> Result<Vec<(Vertex, Vertex)>, LoadError> {
    let bytes = read(path)?;
    let text = String::from_utf8_lossy(&bytes);
    let mut pairs = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let bad = || LoadError::SolutionLine { path: path.to_path_buf(), line: i + 1, text: line.to_string() };
        let mut it = line.split_whitespace();
        let (Some(p), Some(q), None) = (it.next(), it.next(), it.next()) else { return Err(bad()) };
        pairs.push((p.parse().map_err(|_| bad())?, q.parse().map_err(|_| bad())?));
    }
    Ok(pairs)
}

pub fn format_solution(pairs: &[(Vertex, Vertex)]) -> String {
    pairs.iter().map(|(p, q)| format!("{p} {q}\n")).collect()
}
