//! Instance list files.
//!
//! One instance per line: `pattern target [flag...]`, flags being
//! `directed`, `labelled` and `text`. Paths are relative to the list file.
//! `#` starts a comment.

use std::fs;
use std::path::{Path, PathBuf};

use thiserror::Error;

use crate::io::GraphFormat;

#[derive(Debug, Error)]
pub enum ListError {
    #[error("cannot read {path}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error("line {line}: {message}")]
    Malformed { line: usize, message: String },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InstanceRecord {
    /// Stable id used in result rows: the pattern and target file stems.
    pub id: String,
    pub pattern: PathBuf,
    pub target: PathBuf,
    pub directed: bool,
    pub labelled: bool,
    pub format: GraphFormat,
}

pub fn parse_list(text: &str, base: &Path) -> Result<Vec<InstanceRecord>, ListError> {
    let mut out = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let mut tokens = line.split_whitespace();
        let (Some(pattern), Some(target)) = (tokens.next(), tokens.next()) else {
            return Err(ListError::Malformed { line: i + 1, message: "expected `pattern target`".into() });
        };
        let mut record = InstanceRecord {
            id: format!("{}:{}", stem(pattern), stem(target)),
            pattern: base.join(pattern),
            target: base.join(target),
            directed: false,
            labelled: false,
            format: GraphFormat::Bin,
        };
        for flag in tokens {
            match flag {
                "directed" => record.directed = true,
                "labelled" => record.labelled = true,
                "text" => record.format = GraphFormat::Text,
                _ => return Err(ListError::Malformed { line: i + 1, message: format!("unknown flag `{flag}`") }),
            }
        }
        out.push(record);
    }
    Ok(out)
}

pub fn read_list(path: &Path) -> Result<Vec<InstanceRecord>, ListError> {
    let text = fs::read_to_string(path).map_err(|source| ListError::Io { path: path.to_path_buf(), source })?;
    parse_list(&text, path.parent().unwrap_or(Path::new(".")))
}

fn stem(path: &str) -> &str {
    Path::new(path).file_stem().and_then(|s| s.to_str()).unwrap_or(path)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn flags_and_comments() {
        let text = "# header\na.bin b.bin\n\nsub/c.grf d.grf directed labelled # trailing\n";
        let list = parse_list(text, Path::new("/data")).unwrap();
        assert_eq!(list.len(), 2);
        assert_eq!(list[0].id, "a:b");
        assert_eq!(list[1].pattern, Path::new("/data/sub/c.grf"));
        assert!(list[1].directed && list[1].labelled);
        assert!(!list[0].directed);
    }

    #[test]
    fn rejects_bad_lines() {
        assert!(matches!(parse_list("lonely\n", Path::new(".")), Err(ListError::Malformed { line: 1, .. })));
        assert!(matches!(parse_list("a b weird\n", Path::new(".")), Err(ListError::Malformed { .. })));
    }
}
