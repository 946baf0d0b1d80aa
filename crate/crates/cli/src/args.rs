use std::fmt;
use std::fs;
use std::ops::RangeInclusive;
use std::path::PathBuf;
use std::str::FromStr;

use bricklayer::graphs::{AnyGraph, GraphJson, GraphSpec, LabeledGraph};

/// `--graph` value: a spec like `ball:4,2`, or `file:path` naming a graph
/// JSON file.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GraphArg {
    Spec(GraphSpec),
    File(PathBuf),
}

impl FromStr for GraphArg {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if let Some(path) = s.strip_prefix("file:") {
            if path.is_empty() {
                return Err("file: needs a path".into());
            }
            return Ok(GraphArg::File(PathBuf::from(path)));
        }
        s.parse::<GraphSpec>()
            .map(GraphArg::Spec)
            .map_err(|e| format!("{e}; expected bricklayer:n[,a], ball:d,r, star:n, hamming:d,a or file:path"))
    }
}

impl fmt::Display for GraphArg {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GraphArg::Spec(s) => write!(f, "{s}"),
            GraphArg::File(p) => write!(f, "file:{}", p.display()),
        }
    }
}

impl GraphArg {
    pub fn load(&self) -> Result<AnyGraph, String> {
        match self {
            GraphArg::Spec(s) => s.build().map_err(|e| e.to_string()),
            GraphArg::File(path) => {
                let text = fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
                let json: GraphJson = serde_json::from_str(&text).map_err(|e| format!("{}: {e}", path.display()))?;
                LabeledGraph::from_json(&json).map(AnyGraph::Labeled).map_err(|e| format!("{}: {e}", path.display()))
            }
        }
    }

    pub fn ball(&self) -> Option<(u32, u32)> {
        match self {
            GraphArg::Spec(GraphSpec::Ball { d, r }) => Some((*d, *r)),
            _ => None,
        }
    }
}

/// An inclusive integer range written `lo..hi`, `lo..=hi` or a single
/// value.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Span {
    pub lo: u64,
    pub hi: u64,
}

impl Span {
    pub fn iter(self) -> RangeInclusive<u64> {
        self.lo..=self.hi
    }
}

impl FromStr for Span {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let num = |t: &str| t.trim().parse::<u64>().map_err(|_| format!("bad range '{s}'"));
        let (lo, hi) = match s.split_once("..") {
            Some((lo, hi)) => (num(lo)?, num(hi.strip_prefix('=').unwrap_or(hi))?),
            None => {
                let v = num(s)?;
                (v, v)
            }
        };
        if lo > hi {
            return Err(format!("empty range '{s}'"));
        }
        Ok(Span { lo, hi })
    }
}

impl fmt::Display for Span {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}..={}", self.lo, self.hi)
    }
}
