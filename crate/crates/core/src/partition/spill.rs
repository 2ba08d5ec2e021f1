//! On-disk partition files.
//!
//! One binary file per partition, little-endian:
//!
//! ```text
//! magic       8 bytes "SCANPRT\0"
//! version     u32
//! index       u64
//! |V_s|       u64
//! |E_s|       u64
//! budget      u64
//! vmap        u32 x |V_s|     local -> global vertex
//! emap        u32 x |E_s|     local -> global edge
//! owned       u8  x |E_s|     1 if the edge is owned here
//! <graph cache block>         offsets, adjacency, edge ids, edges, sim
//! ```
//!
//! The similarity bytes are the last `|E_s|` bytes of the file and are
//! rewritten in place after each pass. A text manifest lists the files and
//! their byte estimates.

use std::fs::{self, File, OpenOptions};
use std::io::{self, BufReader, BufWriter, Read, Seek, SeekFrom, Write};
use std::path::{Path, PathBuf};

use super::plan::PartitionPlan;
use super::subgraph::EdgeExtendedSubgraph;
use crate::error::{Error, Result};
use crate::graph::{read_cache, write_cache};
use crate::graph::cache::{get_u32, get_u32s, get_u64, put_u32, put_u32s, put_u64};

pub const PARTITION_MAGIC: [u8; 8] = *b"SCANPRT\0";
pub const PARTITION_VERSION: u32 = 1;
pub const MANIFEST_NAME: &str = "plan.manifest";

/// Spilled plan: partition files plus the manifest describing them.
#[derive(Debug, Clone)]
pub struct SpillSet {
    dir: PathBuf,
    files: Vec<PathBuf>,
    estimates: Vec<u64>,
    budget_bytes: u64,
    n: usize,
}

impl SpillSet {
    /// Writes every partition of `plan` under `dir`.
    pub fn write(plan: &PartitionPlan, dir: &Path) -> Result<Self> {
        fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))?;
        let mut files = Vec::with_capacity(plan.len());
        for (i, part) in plan.partitions.iter().enumerate() {
            let path = dir.join(format!("part-{i:05}.bin"));
            write_partition(&path, i, part, plan.budget_bytes)
                .map_err(|source| Error::Spill { partition: i, source })?;
            files.push(path);
        }
        let set = SpillSet {
            dir: dir.to_path_buf(),
            files,
            estimates: plan.estimates(),
            budget_bytes: plan.budget_bytes,
            n: plan.n,
        };
        set.write_manifest()?;
        Ok(set)
    }

    fn write_manifest(&self) -> Result<()> {
        let path = self.manifest_path();
        let mut text = format!(
            "# budget={} n={} partitions={}\n",
            self.budget_bytes,
            self.n,
            self.files.len()
        );
        for (file, est) in self.files.iter().zip(&self.estimates) {
            let name = file.file_name().unwrap().to_string_lossy();
            text.push_str(&format!("{name}\t{est}\n"));
        }
        fs::write(&path, text).map_err(|e| Error::io(&path, e))
    }

    /// Re-opens a spilled plan from its manifest.
    pub fn open(dir: &Path) -> Result<Self> {
        let path = dir.join(MANIFEST_NAME);
        let text = fs::read_to_string(&path).map_err(|e| Error::io(&path, e))?;
        let bad = |msg: &str| Error::Format(format!("{}: {msg}", path.display()));
        let mut lines = text.lines();
        let header = lines.next().ok_or_else(|| bad("empty manifest"))?;
        let field = |key: &str| -> Result<u64> {
            header
                .split_whitespace()
                .find_map(|kv| kv.strip_prefix(key).and_then(|v| v.strip_prefix('=')))
                .and_then(|v| v.parse().ok())
                .ok_or_else(|| bad(&format!("missing {key}")))
        };
        let budget_bytes = field("budget")?;
        let n = field("n")? as usize;
        let mut files = Vec::new();
        let mut estimates = Vec::new();
        for line in lines.filter(|l| !l.trim().is_empty()) {
            let (name, est) = line.split_once('\t').ok_or_else(|| bad("malformed entry"))?;
            files.push(dir.join(name));
            estimates.push(est.trim().parse().map_err(|_| bad("malformed estimate"))?);
        }
        if files.len() as u64 != field("partitions")? {
            return Err(bad("partition count does not match entries"));
        }
        Ok(SpillSet {
            dir: dir.to_path_buf(),
            files,
            estimates,
            budget_bytes,
            n,
        })
    }

    pub fn manifest_path(&self) -> PathBuf {
        self.dir.join(MANIFEST_NAME)
    }

    pub fn len(&self) -> usize {
        self.files.len()
    }

    pub fn is_empty(&self) -> bool {
        self.files.is_empty()
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn budget_bytes(&self) -> u64 {
        self.budget_bytes
    }

    pub fn estimates(&self) -> &[u64] {
        &self.estimates
    }

    pub fn files(&self) -> &[PathBuf] {
        &self.files
    }

    pub fn load(&self, i: usize) -> Result<EdgeExtendedSubgraph> {
        read_partition(&self.files[i], i)
    }

    /// Overwrites the stored similarity bytes of partition `i`.
    pub fn store_sim(&self, i: usize, sim: &[u8]) -> Result<()> {
        let spill = |source| Error::Spill { partition: i, source };
        let mut f = OpenOptions::new()
            .write(true)
            .open(&self.files[i])
            .map_err(spill)?;
        f.seek(SeekFrom::End(-(sim.len() as i64))).map_err(spill)?;
        f.write_all(sim).map_err(spill)?;
        f.flush().map_err(spill)
    }
}

fn write_partition(path: &Path, index: usize, s: &EdgeExtendedSubgraph, budget: u64) -> io::Result<()> {
    let mut w = BufWriter::new(File::create(path)?);
    w.write_all(&PARTITION_MAGIC)?;
    put_u32(&mut w, PARTITION_VERSION)?;
    put_u64(&mut w, index as u64)?;
    put_u64(&mut w, s.vertices.len() as u64)?;
    put_u64(&mut w, s.edges.len() as u64)?;
    put_u64(&mut w, budget)?;
    put_u32s(&mut w, &s.vertices)?;
    put_u32s(&mut w, &s.edges)?;
    let mask: Vec<u8> = s.owned_mask.iter().map(|&o| o as u8).collect();
    w.write_all(&mask)?;
    write_cache(&mut w, &s.local, &s.sim)?;
    w.flush()
}

fn read_partition(path: &Path, expected: usize) -> Result<EdgeExtendedSubgraph> {
    let file = File::open(path).map_err(|source| Error::Spill {
        partition: expected,
        source,
    })?;
    let mut r = BufReader::new(file);
    let mut magic = [0u8; 8];
    r.read_exact(&mut magic).map_err(|source| Error::Spill {
        partition: expected,
        source,
    })?;
    if magic != PARTITION_MAGIC {
        return Err(Error::Format(format!("{}: bad magic bytes", path.display())));
    }
    let version = get_u32(&mut r)?;
    if version != PARTITION_VERSION {
        return Err(Error::Format(format!("unsupported partition version {version}")));
    }
    let index = get_u64(&mut r)? as usize;
    if index != expected {
        return Err(Error::Contract(format!(
            "{} holds partition {index}, expected {expected}",
            path.display()
        )));
    }
    let nv = get_u64(&mut r)? as usize;
    let ne = get_u64(&mut r)? as usize;
    let _budget = get_u64(&mut r)?;
    let vertices = get_u32s(&mut r, nv)?;
    let edges = get_u32s(&mut r, ne)?;
    let mut mask = vec![0u8; ne];
    r.read_exact(&mut mask)
        .map_err(|e| Error::Format(format!("truncated owned mask: {e}")))?;
    let (local, sim) = read_cache(&mut r)?;
    if local.n() != nv || local.m() != ne {
        return Err(Error::Format(format!(
            "{}: header sizes disagree with layout",
            path.display()
        )));
    }
    let owned_mask: Vec<bool> = mask.iter().map(|&b| b != 0).collect();
    let owned = edges
        .iter()
        .zip(&owned_mask)
        .filter(|(_, &o)| o)
        .map(|(&e, _)| e)
        .collect::<std::collections::BTreeSet<_>>()
        .into_iter()
        .collect();
    Ok(EdgeExtendedSubgraph {
        owned,
        local,
        vertices,
        edges,
        owned_mask,
        sim,
    })
}
