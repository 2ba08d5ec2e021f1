//! Text edge-list ingestion.
//!
//! Input is one `u v` pair per line, whitespace separated, with `#` comment
//! lines. Ids may be sparse; they are compacted to `[0, n)` in increasing
//! order and the original ids are kept for output.

use std::collections::BTreeMap;
use std::io::BufRead;

use crate::error::{Error, Result};
use crate::VertexId;

/// Largest vertex count whose ids fit a signed 32-bit word.
pub const MAX_VERTICES: usize = i32::MAX as usize;

/// A normalized simple undirected edge list over dense ids.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EdgeList {
    n: usize,
    /// Each undirected edge once, as `(min, max)`, sorted.
    edges: Vec<(VertexId, VertexId)>,
    original_ids: Vec<u64>,
}

impl EdgeList {
    /// Builds an edge list over dense ids `[0, n)`.
    ///
    /// Self-loops are dropped and duplicate pairs (in either orientation)
    /// merged. Ids are kept as given.
    pub fn from_pairs<I>(n: usize, pairs: I) -> Result<Self>
    where
        I: IntoIterator<Item = (VertexId, VertexId)>,
    {
        if n > MAX_VERTICES {
            return Err(Error::TooManyVertices(n));
        }
        let mut edges = Vec::new();
        for (u, v) in pairs {
            if u as usize >= n || v as usize >= n {
                return Err(Error::VertexOutOfRange(u as u64, v as u64));
            }
            if u != v {
                edges.push((u.min(v), u.max(v)));
            }
        }
        edges.sort_unstable();
        edges.dedup();
        Ok(EdgeList {
            n,
            edges,
            original_ids: (0..n as u64).collect(),
        })
    }

    pub fn parse<R: BufRead>(reader: R) -> Result<Self> {
        let mut raw: Vec<(u64, u64)> = Vec::new();
        for (idx, line) in reader.lines().enumerate() {
            let line_no = idx + 1;
            let line = line.map_err(|e| Error::Parse {
                line: line_no,
                message: e.to_string(),
            })?;
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let mut tokens = line.split_whitespace();
            let u = parse_id(tokens.next(), line_no)?;
            let v = parse_id(tokens.next(), line_no)?;
            if let Some(extra) = tokens.next() {
                return Err(Error::Parse {
                    line: line_no,
                    message: format!("unexpected third token {extra:?}"),
                });
            }
            raw.push((u, v));
        }

        let mut ids: BTreeMap<u64, VertexId> = BTreeMap::new();
        for &(u, v) in &raw {
            ids.insert(u, 0);
            ids.insert(v, 0);
        }
        if ids.len() > MAX_VERTICES {
            return Err(Error::TooManyVertices(ids.len()));
        }
        let mut original_ids = Vec::with_capacity(ids.len());
        for (dense, (orig, slot)) in ids.iter_mut().enumerate() {
            *slot = dense as VertexId;
            original_ids.push(*orig);
        }

        let mut el = EdgeList::from_pairs(
            original_ids.len(),
            raw.iter().map(|(u, v)| (ids[u], ids[v])),
        )?;
        el.original_ids = original_ids;
        Ok(el)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(VertexId, VertexId)] {
        &self.edges
    }

    /// External id of every dense vertex id.
    pub fn original_ids(&self) -> &[u64] {
        &self.original_ids
    }

    pub fn original_id(&self, v: VertexId) -> u64 {
        self.original_ids[v as usize]
    }
}

/// Parses an in-memory edge list; see [`EdgeList::parse`].
pub fn parse_edge_list(text: &[u8]) -> Result<EdgeList> {
    EdgeList::parse(text)
}

fn parse_id(token: Option<&str>, line: usize) -> Result<u64> {
    let token = token.ok_or_else(|| Error::Parse {
        line,
        message: "expected two vertex ids".into(),
    })?;
    if token.starts_with('-') && token[1..].parse::<u64>().is_ok() {
        return Err(Error::Parse {
            line,
            message: format!("negative vertex id {token}"),
        });
    }
    token.parse::<u64>().map_err(|_| Error::Parse {
        line,
        message: format!("malformed vertex id {token:?}"),
    })
}
