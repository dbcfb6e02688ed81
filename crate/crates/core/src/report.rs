//! Text, JSON-lines and CSV output of search results.

use std::io::Write;

use serde::Serialize;

use crate::search::{ModifiedPair, SixTuple, SolutionRecord};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Format {
    #[default]
    Text,
    JsonLines,
    Csv,
}

/// A result row with a plain-text rendering.
pub trait Row: Serialize {
    fn text(&self) -> String;
}

fn join(mats: &[crate::gf2::Mat3]) -> String {
    mats.iter().map(|m| m.to_string()).collect::<Vec<_>>().join(" ")
}

impl Row for SolutionRecord {
    fn text(&self) -> String {
        join(&self.matrices())
    }
}

impl Row for SixTuple {
    fn text(&self) -> String {
        join(&self.matrices())
    }
}

impl Row for ModifiedPair {
    fn text(&self) -> String {
        join(&[self.r1, self.r2, self.r3, self.r4, self.q4])
    }
}

pub struct RowWriter<W: Write> {
    format: Format,
    out: Option<W>,
    csv: Option<csv::Writer<W>>,
}

impl<W: Write> RowWriter<W> {
    pub fn new(out: W, format: Format) -> RowWriter<W> {
        match format {
            Format::Csv => RowWriter {
                format,
                out: None,
                csv: Some(csv::Writer::from_writer(out)),
            },
            _ => RowWriter {
                format,
                out: Some(out),
                csv: None,
            },
        }
    }

    pub fn write<T: Row>(&mut self, row: &T) -> std::io::Result<()> {
        match (self.format, &mut self.out, &mut self.csv) {
            (Format::Csv, _, Some(csv)) => csv.serialize(row).map_err(std::io::Error::other),
            (Format::JsonLines, Some(out), _) => {
                serde_json::to_writer(&mut *out, row)?;
                out.write_all(b"\n")
            }
            (_, Some(out), _) => writeln!(out, "{}", row.text()),
            _ => unreachable!("writer state matches format"),
        }
    }

    pub fn finish(self) -> std::io::Result<()> {
        if let Some(mut csv) = self.csv {
            csv.flush()?;
        }
        if let Some(mut out) = self.out {
            out.flush()?;
        }
        Ok(())
    }
}
