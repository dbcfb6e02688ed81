//! Exact search and verification of permutation-type solutions of the
//! tetrahedron equation with two-colour edge variables.
//!
//! * [`gf2`]: packed 3×3 and 6×6 matrices over 𝔽₂, slot embeddings and the
//!   direct-sum equation.
//! * [`quantum`]: permutation operators on 8 and 64 basis states, weighted
//!   combinations and the quantum equations.
//! * [`search`]: exhaustive searches over GL(3, 𝔽₂).
//! * [`store`]: the on-disk solution list format.

pub mod cli;
pub mod error;
pub mod fixtures;
pub mod gf2;
pub mod quantum;
pub mod report;
pub mod search;
pub mod store;
pub mod verify;

pub use error::{Error, Result};
pub use gf2::{check_ds_tetra, embed, enumerate_gl3, Mat3, Mat6, Slot};
pub use quantum::{check_quantum_pure, check_quantum_weighted, lift, quantize, PermOp, WeightedOp};
pub use search::{SixTuple, SolutionRecord, SolutionStore};
