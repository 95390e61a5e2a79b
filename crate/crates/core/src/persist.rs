//! Binary snapshot files.
//!
//! Layout, all integers little-endian:
//!
//! ```text
//! "SGPSNAP1"  u32 version
//! section*    u32 tag, u64 byte length, payload
//! u64 CRC-64/XZ of everything before it
//! ```
//!
//! Sections appear in a fixed order: header, generators, meta, right, left,
//! rules, counters. The generators section is the JSON generator document.
//! Only generators are stored; every other element is rebuilt on load from its
//! prefix and last letter.

use std::fs::File;
use std::io::{BufReader, BufWriter, Read, Write};
use std::path::Path;

use crc::{Crc, CRC_64_XZ};
use hashbrown::HashTable;

use crate::element::{generators_to_json, parse_generators, ElementKind};
use crate::error::{Error, Result};
use crate::snapshot::{Meta, Snapshot, UNDEF};

const MAGIC: &[u8; 8] = b"SGPSNAP1";
pub const FORMAT_VERSION: u32 = 1;
const CRC64: Crc<u64> = Crc::<u64>::new(&CRC_64_XZ);

const HEADER: u32 = 1;
const GENERATORS: u32 = 2;
const META: u32 = 3;
const RIGHT: u32 = 4;
const LEFT: u32 = 5;
const RULES: u32 = 6;
const COUNTERS: u32 = 7;
const ORDER: [u32; 7] = [HEADER, GENERATORS, META, RIGHT, LEFT, RULES, COUNTERS];

impl Snapshot {
    /// Serializes the snapshot.
    pub fn to_bytes(&self) -> Result<Vec<u8>> {
        let mut out = Vec::with_capacity(64 + self.len() * (20 + 8 * self.nr_gens));
        out.extend_from_slice(MAGIC);
        put_u32(&mut out, FORMAT_VERSION);

        let (kind_tag, size) = match self.kind {
            ElementKind::Transformation { degree } => (0u32, degree),
            ElementKind::BooleanMatrix { dim } => (1u32, dim),
        };
        section(&mut out, HEADER, |b| {
            put_u32(b, kind_tag);
            put_u32(b, size as u32);
            put_u64(b, self.nr_gens as u64);
            put_u64(b, self.len() as u64);
            put_u64(b, self.frontier as u64);
            put_u64(b, self.applied as u64);
        });
        let json = generators_to_json(self.generators())?;
        section(&mut out, GENERATORS, |b| b.extend_from_slice(json.as_bytes()));
        section(&mut out, META, |b| {
            for m in &self.meta {
                for v in [m.first, m.last, m.prefix, m.suffix, m.length] {
                    put_u32(b, v);
                }
            }
        });
        section(&mut out, RIGHT, |b| self.right.iter().for_each(|&v| put_u32(b, v)));
        section(&mut out, LEFT, |b| self.left.iter().for_each(|&v| put_u32(b, v)));
        section(&mut out, RULES, |b| {
            put_u64(b, self.rules.len() as u64);
            for &(u, a, v) in &self.rules {
                put_u32(b, u);
                put_u32(b, a);
                put_u32(b, v);
            }
        });
        section(&mut out, COUNTERS, |b| put_u64(b, self.products));

        let sum = CRC64.checksum(&out);
        put_u64(&mut out, sum);
        Ok(out)
    }

    pub fn save<W: Write>(&self, mut sink: W) -> Result<()> {
        sink.write_all(&self.to_bytes()?)?;
        sink.flush()?;
        Ok(())
    }

    pub fn save_to_path(&self, path: impl AsRef<Path>) -> Result<()> {
        self.save(BufWriter::new(File::create(path)?))
    }

    pub fn load<R: Read>(mut source: R) -> Result<Snapshot> {
        let mut bytes = Vec::new();
        source.read_to_end(&mut bytes)?;
        Snapshot::from_bytes(&bytes)
    }

    pub fn load_from_path(path: impl AsRef<Path>) -> Result<Snapshot> {
        Snapshot::load(BufReader::new(File::open(path)?))
    }

    pub fn from_bytes(bytes: &[u8]) -> Result<Snapshot> {
        if bytes.len() < MAGIC.len() {
            return Err(if MAGIC.starts_with(bytes) { Error::Truncated } else { Error::BadMagic });
        }
        if &bytes[..8] != MAGIC {
            return Err(Error::BadMagic);
        }
        let mut cur = Cursor { bytes, pos: 8 };
        let version = cur.u32()?;
        if version != FORMAT_VERSION {
            return Err(Error::UnsupportedVersion(version));
        }

        let mut payloads = Vec::with_capacity(ORDER.len());
        for expected in ORDER {
            let tag = cur.u32()?;
            if tag != expected {
                return Err(Error::Corrupt(format!("expected section {expected}, found {tag}")));
            }
            let len = usize::try_from(cur.u64()?).map_err(|_| Error::Truncated)?;
            payloads.push(cur.take(len)?);
        }
        let body_end = cur.pos;
        let stored = cur.u64()?;
        if cur.pos != bytes.len() {
            return Err(Error::Corrupt("trailing bytes after checksum".into()));
        }
        let computed = CRC64.checksum(&bytes[..body_end]);
        if stored != computed {
            return Err(Error::ChecksumMismatch { stored, computed });
        }
        decode(&payloads)
    }
}

fn decode(p: &[&[u8]]) -> Result<Snapshot> {
    let mut h = Cursor { bytes: p[0], pos: 0 };
    let (kind_tag, size) = (h.u32()?, h.u32()? as usize);
    let r = h.usize()?;
    let n = h.usize()?;
    let frontier = h.usize()?;
    let applied = h.usize()?;
    h.finish("header")?;

    let json = std::str::from_utf8(p[1]).map_err(|e| Error::Corrupt(e.to_string()))?;
    let gens = parse_generators(json)?;
    let kind = gens[0].kind();
    let expected_kind = match kind_tag {
        0 => ElementKind::Transformation { degree: size },
        1 => ElementKind::BooleanMatrix { dim: size },
        t => return Err(Error::Corrupt(format!("unknown element kind {t}"))),
    };
    if kind != expected_kind || gens.len() != r || n < r || frontier > n || applied > r {
        return Err(Error::Corrupt("header disagrees with contents".into()));
    }
    let cells = n.checked_mul(r).ok_or_else(|| Error::Corrupt("table size overflows".into()))?;

    if p[2].len() as u128 != n as u128 * 20 {
        return Err(Error::Corrupt("meta section has the wrong size".into()));
    }
    let mut c = Cursor { bytes: p[2], pos: 0 };
    let mut meta = Vec::with_capacity(n);
    for _ in 0..n {
        meta.push(Meta {
            first: c.u32()?,
            last: c.u32()?,
            prefix: c.u32()?,
            suffix: c.u32()?,
            length: c.u32()?,
        });
    }
    c.finish("meta")?;
    let right = u32_table(p[3], cells, n, "right")?;
    let left = u32_table(p[4], cells, n, "left")?;

    let mut c = Cursor { bytes: p[5], pos: 0 };
    let nr_rules = c.usize()?;
    let mut rules = Vec::with_capacity(nr_rules.min(cells));
    for _ in 0..nr_rules {
        rules.push((c.u32()?, c.u32()?, c.u32()?));
    }
    c.finish("rules")?;

    let mut c = Cursor { bytes: p[6], pos: 0 };
    let products = c.u64()?;
    c.finish("counters")?;

    // rebuild element values from generators and prefix links
    let mut elements = gens;
    elements.reserve(n - r);
    for (i, m) in meta.iter().enumerate().skip(r) {
        let (pre, last) = (m.prefix as usize, m.last as usize);
        if pre >= i || last >= r {
            return Err(Error::Corrupt(format!("element {i} has an invalid prefix link")));
        }
        let x = elements[pre].mul(&elements[last]);
        elements.push(x);
    }
    let mut dedup = HashTable::with_capacity(n);
    for (i, x) in elements.iter().enumerate() {
        dedup.insert_unique(x.digest(0), i as u32, |&j| elements[j as usize].digest(0));
    }

    let s = Snapshot {
        kind,
        nr_gens: r,
        elements,
        meta,
        right,
        left,
        frontier,
        applied,
        dedup,
        rules,
        products,
    };
    let report = s.validate(false);
    if !report.ok() {
        return Err(Error::Corrupt(report.to_string()));
    }
    Ok(s)
}

fn u32_table(bytes: &[u8], cells: usize, n: usize, what: &str) -> Result<Vec<u32>> {
    if bytes.len() != cells * 4 {
        return Err(Error::Corrupt(format!("{what} table has the wrong size")));
    }
    let table: Vec<u32> = bytes
        .chunks_exact(4)
        .map(|b| u32::from_le_bytes(b.try_into().unwrap()))
        .collect();
    if table.iter().any(|&v| v != UNDEF && v as usize >= n) {
        return Err(Error::Corrupt(format!("{what} table entry out of range")));
    }
    Ok(table)
}

fn section(out: &mut Vec<u8>, tag: u32, fill: impl FnOnce(&mut Vec<u8>)) {
    put_u32(out, tag);
    let len_at = out.len();
    put_u64(out, 0);
    let start = out.len();
    fill(out);
    let len = (out.len() - start) as u64;
    out[len_at..start].copy_from_slice(&len.to_le_bytes());
}

fn put_u32(out: &mut Vec<u8>, v: u32) {
    out.extend_from_slice(&v.to_le_bytes());
}

fn put_u64(out: &mut Vec<u8>, v: u64) {
    out.extend_from_slice(&v.to_le_bytes());
}

struct Cursor<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn take(&mut self, len: usize) -> Result<&'a [u8]> {
        let end = self.pos.checked_add(len).ok_or(Error::Truncated)?;
        let out = self.bytes.get(self.pos..end).ok_or(Error::Truncated)?;
        self.pos = end;
        Ok(out)
    }

    fn u32(&mut self) -> Result<u32> {
        Ok(u32::from_le_bytes(self.take(4)?.try_into().unwrap()))
    }

    fn u64(&mut self) -> Result<u64> {
        Ok(u64::from_le_bytes(self.take(8)?.try_into().unwrap()))
    }

    fn usize(&mut self) -> Result<usize> {
        usize::try_from(self.u64()?).map_err(|_| Error::Corrupt("count does not fit in memory".into()))
    }

    fn finish(&self, what: &str) -> Result<()> {
        if self.pos == self.bytes.len() {
            Ok(())
        } else {
            Err(Error::Corrupt(format!("{what} section has trailing bytes")))
        }
    }
}
