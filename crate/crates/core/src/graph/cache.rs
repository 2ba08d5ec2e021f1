//! Binary cache of the CSR arrays.
//!
//! Layout (all integers little-endian):
//!
//! ```text
//! magic    8 bytes  "SCANCSR\0"
//! version  u32
//! n        u64
//! m        u64
//! offsets  u64 x (n + 1)
//! adjacency u32 x 2m
//! edge_ids u32 x 2m
//! edges    (u32, u32) x m
//! sim      u8 x m
//! ```

use std::fs::File;
use std::io::{self, BufReader, BufWriter, Read, Write};
use std::path::Path;

use super::Graph;
use crate::error::{Error, Result};

pub const CACHE_MAGIC: [u8; 8] = *b"SCANCSR\0";
pub const CACHE_VERSION: u32 = 1;

pub fn write_cache<W: Write>(w: &mut W, g: &Graph, sim: &[u8]) -> io::Result<()> {
    assert_eq!(sim.len(), g.m(), "similarity slots must match edge count");
    w.write_all(&CACHE_MAGIC)?;
    w.write_all(&CACHE_VERSION.to_le_bytes())?;
    put_u64(w, g.n() as u64)?;
    put_u64(w, g.m() as u64)?;
    for &o in g.offsets() {
        put_u64(w, o)?;
    }
    put_u32s(w, g.adjacency())?;
    put_u32s(w, g.edge_ids())?;
    for &(a, b) in g.edges() {
        put_u32(w, a)?;
        put_u32(w, b)?;
    }
    w.write_all(sim)
}

pub fn read_cache<R: Read>(r: &mut R) -> Result<(Graph, Vec<u8>)> {
    let mut magic = [0u8; 8];
    r.read_exact(&mut magic).map_err(format_err)?;
    if magic != CACHE_MAGIC {
        return Err(Error::Format("bad magic bytes".into()));
    }
    let version = get_u32(r)?;
    if version != CACHE_VERSION {
        return Err(Error::Format(format!("unsupported version {version}")));
    }
    let n = get_u64(r)? as usize;
    let m = get_u64(r)? as usize;
    if n > super::MAX_VERTICES {
        return Err(Error::TooManyVertices(n));
    }
    let mut offsets = Vec::with_capacity(n + 1);
    for _ in 0..=n {
        offsets.push(get_u64(r)?);
    }
    let adjacency = get_u32s(r, 2 * m)?;
    let edge_ids = get_u32s(r, 2 * m)?;
    let flat = get_u32s(r, 2 * m)?;
    let edges = flat.chunks_exact(2).map(|p| (p[0], p[1])).collect();
    let mut sim = vec![0u8; m];
    r.read_exact(&mut sim).map_err(format_err)?;
    let g = Graph::from_parts(offsets, adjacency, edge_ids, edges)?;
    Ok((g, sim))
}

pub fn write_graph_cache(path: &Path, g: &Graph) -> Result<()> {
    let file = File::create(path).map_err(|e| Error::io(path, e))?;
    let mut w = BufWriter::new(file);
    write_cache(&mut w, g, &vec![0u8; g.m()])
        .and_then(|_| w.flush())
        .map_err(|e| Error::io(path, e))
}

pub fn read_graph_cache(path: &Path) -> Result<Graph> {
    let file = File::open(path).map_err(|e| Error::io(path, e))?;
    read_cache(&mut BufReader::new(file)).map(|(g, _)| g)
}

pub(crate) fn put_u32<W: Write>(w: &mut W, x: u32) -> io::Result<()> {
    w.write_all(&x.to_le_bytes())
}

pub(crate) fn put_u64<W: Write>(w: &mut W, x: u64) -> io::Result<()> {
    w.write_all(&x.to_le_bytes())
}

pub(crate) fn put_u32s<W: Write>(w: &mut W, xs: &[u32]) -> io::Result<()> {
    for &x in xs {
        put_u32(w, x)?;
    }
    Ok(())
}

fn format_err(e: io::Error) -> Error {
    if e.kind() == io::ErrorKind::UnexpectedEof {
        Error::Format("truncated input".into())
    } else {
        Error::Format(e.to_string())
    }
}

pub(crate) fn get_u32<R: Read>(r: &mut R) -> Result<u32> {
    let mut b = [0u8; 4];
    r.read_exact(&mut b).map_err(format_err)?;
    Ok(u32::from_le_bytes(b))
}

pub(crate) fn get_u64<R: Read>(r: &mut R) -> Result<u64> {
    let mut b = [0u8; 8];
    r.read_exact(&mut b).map_err(format_err)?;
    Ok(u64::from_le_bytes(b))
}

pub(crate) fn get_u32s<R: Read>(r: &mut R, count: usize) -> Result<Vec<u32>> {
    let mut buf = vec![0u8; count * 4];
    r.read_exact(&mut buf).map_err(format_err)?;
    Ok(buf
        .chunks_exact(4)
        .map(|c| u32::from_le_bytes([c[0], c[1], c[2], c[3]]))
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{build_graph, EdgeList};

    #[test]
    fn header_layout_is_fixed_width() {
        let g = build_graph(&EdgeList::from_pairs(3, [(0, 1), (1, 2)]).unwrap());
        let mut buf = Vec::new();
        write_cache(&mut buf, &g, &[0, 1]).unwrap();
        assert_eq!(&buf[..8], b"SCANCSR\0");
        assert_eq!(u32::from_le_bytes(buf[8..12].try_into().unwrap()), 1);
        assert_eq!(u64::from_le_bytes(buf[12..20].try_into().unwrap()), 3);
        assert_eq!(u64::from_le_bytes(buf[20..28].try_into().unwrap()), 2);
        // header + 4 offsets + 4 adjacency + 4 edge ids + 2 pairs + 2 sim bytes
        assert_eq!(buf.len(), 28 + 4 * 8 + 4 * 4 + 4 * 4 + 2 * 8 + 2);

        let (back, sim) = read_cache(&mut buf.as_slice()).unwrap();
        assert_eq!(back, g);
        assert_eq!(sim, vec![0, 1]);
    }

    #[test]
    fn rejects_bad_magic_and_truncation() {
        let g = build_graph(&EdgeList::from_pairs(2, [(0, 1)]).unwrap());
        let mut buf = Vec::new();
        write_cache(&mut buf, &g, &[0]).unwrap();
        let mut wrong = buf.clone();
        wrong[0] = b'X';
        assert!(matches!(read_cache(&mut wrong.as_slice()), Err(Error::Format(_))));
        buf.truncate(buf.len() - 3);
        assert!(matches!(read_cache(&mut buf.as_slice()), Err(Error::Format(_))));
    }
}
