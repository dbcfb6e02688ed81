use std::path::PathBuf;

use thiserror::Error;

use crate::gf2::Mat3;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("matrix {0} is not invertible over F2")]
    NotInvertible(Mat3),

    #[error("malformed matrix {0:?}: expected three rows of 0/1 joined by '/', e.g. 011/001/110")]
    MatrixSyntax(String),

    #[error("slot {0:?} is not a strictly increasing triple in 1..=6")]
    BadSlot([u8; 3]),

    #[error("operator dimension mismatch: {left} vs {right}")]
    DimMismatch { left: usize, right: usize },

    #[error("unsupported operator dimension {0} (expected 8 or 64)")]
    BadDim(usize),

    #[error("map is not a permutation")]
    NotPermutation,

    #[error("searching all 512^4 quadruples requires an explicit override")]
    UnrestrictedRefused,

    #[error("{path}: line {line}: {message}")]
    StoreFormat {
        path: PathBuf,
        line: usize,
        message: String,
    },

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("no worked example numbered {0} (expected 1..=8)")]
    UnknownExample(u32),
}
