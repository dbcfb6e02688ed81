//! Text persistence for solution lists.
//!
//! ```text
//! TETRA-DS-V1 count=<N> field=F2 group=GL3
//! rrr/rrr/rrr rrr/rrr/rrr rrr/rrr/rrr rrr/rrr/rrr
//! ...
//! END <checksum>
//! ```
//!
//! The checksum is 64-bit FNV-1a over every record line including its
//! trailing newline, written as 16 lowercase hex digits. Records hold four
//! matrices for base solutions and six for six-tuples.

use std::fs::File;
use std::hash::Hasher;
use std::io::{BufRead, BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};

use fnv::FnvHasher;

use crate::error::{Error, Result};
use crate::gf2::Mat3;
use crate::search::{SixTuple, SolutionRecord, SolutionStore};

pub const MAGIC: &str = "TETRA-DS-V1";
const HEADER_TAIL: &str = "field=F2 group=GL3";

pub fn header_line(count: usize) -> String {
    format!("{MAGIC} count={count} {HEADER_TAIL}")
}

fn record_line(mats: &[Mat3]) -> String {
    let mut line = String::with_capacity(12 * mats.len());
    for (i, m) in mats.iter().enumerate() {
        if i > 0 {
            line.push(' ');
        }
        line.push_str(&m.to_string());
    }
    line.push('\n');
    line
}

/// Streams records into the store format. The record count is fixed up front
/// and checked by [`TupleWriter::finish`].
pub struct TupleWriter<W: Write> {
    inner: W,
    hasher: FnvHasher,
    expected: usize,
    written: usize,
}

impl<W: Write> TupleWriter<W> {
    pub fn new(mut inner: W, count: usize) -> std::io::Result<TupleWriter<W>> {
        writeln!(inner, "{}", header_line(count))?;
        Ok(TupleWriter {
            inner,
            hasher: FnvHasher::default(),
            expected: count,
            written: 0,
        })
    }

    pub fn write(&mut self, mats: &[Mat3]) -> std::io::Result<()> {
        let line = record_line(mats);
        self.hasher.write(line.as_bytes());
        self.written += 1;
        self.inner.write_all(line.as_bytes())
    }

    /// Writes the trailer and returns the checksum.
    pub fn finish(mut self) -> std::io::Result<u64> {
        if self.written != self.expected {
            return Err(std::io::Error::new(
                std::io::ErrorKind::InvalidData,
                format!("header announced {} records, wrote {}", self.expected, self.written),
            ));
        }
        let sum = self.hasher.finish();
        writeln!(self.inner, "END {sum:016x}")?;
        self.inner.flush()?;
        Ok(sum)
    }
}

/// FNV-1a checksum of the canonical record lines of a store.
pub fn store_checksum(store: &SolutionStore) -> u64 {
    let mut h = FnvHasher::default();
    for r in store.records() {
        h.write(record_line(&r.matrices()).as_bytes());
    }
    h.finish()
}

fn io_err(path: &Path) -> impl FnOnce(std::io::Error) -> Error + '_ {
    move |source| Error::Io {
        path: path.to_path_buf(),
        source,
    }
}

pub fn write_store<W: Write>(store: &SolutionStore, out: W) -> std::io::Result<u64> {
    let mut w = TupleWriter::new(out, store.len())?;
    for r in store.records() {
        w.write(&r.matrices())?;
    }
    w.finish()
}

pub fn save_store(store: &SolutionStore, path: &Path) -> Result<u64> {
    let file = File::create(path).map_err(io_err(path))?;
    write_store(store, BufWriter::new(file)).map_err(io_err(path))
}

pub fn save_sixtuples(tuples: &[SixTuple], path: &Path) -> Result<u64> {
    let file = File::create(path).map_err(io_err(path))?;
    let mut w = TupleWriter::new(BufWriter::new(file), tuples.len()).map_err(io_err(path))?;
    for t in tuples {
        w.write(&t.matrices()).map_err(io_err(path))?;
    }
    w.finish().map_err(io_err(path))
}

/// Parses a store-format stream with `N` matrices per record. `path` only
/// labels errors.
pub fn read_tuples<const N: usize, R: BufRead>(input: R, path: &Path) -> Result<Vec<[Mat3; N]>> {
    let fail = |line: usize, message: String| Error::StoreFormat {
        path: PathBuf::from(path),
        line,
        message,
    };
    let mut lines = input.lines().enumerate().map(|(i, l)| (i + 1, l));

    let (_, header) = lines.next().ok_or_else(|| fail(1, "empty file".into()))?;
    let header = header.map_err(io_err(path))?;
    let count = parse_header(&header).ok_or_else(|| fail(1, format!("bad header {header:?}")))?;

    let mut hasher = FnvHasher::default();
    let mut records = Vec::with_capacity(count);
    let mut last_line = 1;
    for (n, line) in lines {
        let line = line.map_err(io_err(path))?;
        last_line = n;
        if let Some(sum) = line.strip_prefix("END ") {
            if records.len() != count {
                return Err(fail(
                    n,
                    format!("header announced {count} records, found {}", records.len()),
                ));
            }
            let sum = u64::from_str_radix(sum, 16)
                .ok()
                .filter(|_| sum.len() == 16)
                .ok_or_else(|| fail(n, format!("bad checksum field {sum:?}")))?;
            if sum != hasher.finish() {
                return Err(fail(
                    n,
                    format!("checksum mismatch: file {sum:016x}, computed {:016x}", hasher.finish()),
                ));
            }
            return Ok(records);
        }
        let fields: Vec<&str> = line.split(' ').collect();
        if fields.len() != N {
            return Err(fail(n, format!("expected {N} matrices, found {}", fields.len())));
        }
        let mut rec = [Mat3::ZERO; N];
        for (slot, field) in rec.iter_mut().zip(&fields) {
            *slot = field.parse().map_err(|e: Error| fail(n, e.to_string()))?;
        }
        hasher.write(line.as_bytes());
        hasher.write(b"\n");
        records.push(rec);
    }
    Err(fail(last_line + 1, "missing END line (truncated file?)".into()))
}

fn parse_header(line: &str) -> Option<usize> {
    let rest = line.strip_prefix(MAGIC)?.strip_prefix(" count=")?;
    let (count, tail) = rest.split_once(' ')?;
    if tail != HEADER_TAIL || count.is_empty() || !count.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    count.parse().ok()
}

pub fn load_store(path: &Path) -> Result<SolutionStore> {
    let file = File::open(path).map_err(io_err(path))?;
    let rows = read_tuples::<4, _>(BufReader::new(file), path)?;
    Ok(SolutionStore::from_records(
        rows.into_iter()
            .map(|[r1, r2, r3, r4]| SolutionRecord { r1, r2, r3, r4 })
            .collect(),
    ))
}

pub fn load_sixtuples(path: &Path) -> Result<Vec<SixTuple>> {
    let file = File::open(path).map_err(io_err(path))?;
    Ok(read_tuples::<6, _>(BufReader::new(file), path)?
        .into_iter()
        .map(|[r1, r2, r3, r4, s3, s4]| SixTuple { r1, r2, r3, r4, s3, s4 })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> SolutionStore {
        let i = Mat3::IDENTITY;
        let a: Mat3 = "110/010/001".parse().unwrap();
        SolutionStore::from_records(vec![
            SolutionRecord {
                r1: i,
                r2: i,
                r3: i,
                r4: i,
            },
            SolutionRecord {
                r1: i,
                r2: i,
                r3: i,
                r4: a,
            },
        ])
    }

    fn bytes(store: &SolutionStore) -> Vec<u8> {
        let mut buf = Vec::new();
        write_store(store, &mut buf).unwrap();
        buf
    }

    fn parse(text: &[u8]) -> Result<Vec<[Mat3; 4]>> {
        read_tuples::<4, _>(text, Path::new("mem"))
    }

    #[test]
    fn layout() {
        let text = String::from_utf8(bytes(&sample())).unwrap();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines[0], "TETRA-DS-V1 count=2 field=F2 group=GL3");
        assert_eq!(lines[1], "100/010/001 100/010/001 100/010/001 100/010/001");
        assert_eq!(lines[3], format!("END {:016x}", store_checksum(&sample())));
        assert_eq!(lines.len(), 4);
    }

    #[test]
    fn fnv_reference_value() {
        // FNV-1a 64 of the empty input is the offset basis
        assert_eq!(FnvHasher::default().finish(), 0xcbf29ce484222325);
        let mut h = FnvHasher::default();
        h.write(b"a");
        assert_eq!(h.finish(), 0xaf63dc4c8601ec8c);
    }

    #[test]
    fn truncated_file_names_line() {
        let buf = bytes(&sample());
        let text = String::from_utf8(buf).unwrap();
        let cut: String = text.lines().take(2).map(|l| format!("{l}\n")).collect();
        match parse(cut.as_bytes()) {
            Err(Error::StoreFormat { line, .. }) => assert_eq!(line, 3),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn bad_magic() {
        let text = String::from_utf8(bytes(&sample())).unwrap().replacen("V1", "V2", 1);
        assert!(matches!(
            parse(text.as_bytes()),
            Err(Error::StoreFormat { line: 1, .. })
        ));
    }

    #[test]
    fn bad_record_line() {
        let text = String::from_utf8(bytes(&sample()))
            .unwrap()
            .replacen("100/010/001 ", "100/010/00x ", 1);
        assert!(matches!(
            parse(text.as_bytes()),
            Err(Error::StoreFormat { line: 2, .. })
        ));
    }

    #[test]
    fn wrong_count() {
        let text = String::from_utf8(bytes(&sample()))
            .unwrap()
            .replacen("count=2", "count=3", 1);
        assert!(matches!(
            parse(text.as_bytes()),
            Err(Error::StoreFormat { line: 4, .. })
        ));
    }

    #[test]
    fn corrupted_checksum() {
        let text = String::from_utf8(bytes(&sample())).unwrap();
        let text = text.replacen("110/010/001", "111/010/001", 1);
        assert!(matches!(
            parse(text.as_bytes()),
            Err(Error::StoreFormat { line: 4, .. })
        ));
    }

    #[test]
    fn writer_checks_count() {
        let mut buf = Vec::new();
        let w = TupleWriter::new(&mut buf, 1).unwrap();
        assert!(w.finish().is_err());
    }
}
