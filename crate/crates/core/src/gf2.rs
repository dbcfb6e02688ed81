//! Bit-packed 3×3 and 6×6 matrices over the two-element field.
//!
//! Vectors are rows and matrices act on them from the right, so `x·(ab) =
//! (x·a)·b` and every product below reads left-to-right in application order.
//!
//! Packing is row-major with row 1 in the lowest bits. Inside a row, column 1
//! is the lowest bit. A packed row is therefore also a row vector, with
//! coordinate 1 in bit 0.

use std::fmt;
use std::ops::{Add, Mul};
use std::str::FromStr;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

/// A 3×3 matrix over 𝔽₂, entry `(p, q)` stored at bit `3p + q` (zero-based).
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Mat3(u16);

/// A 6×6 matrix over 𝔽₂, entry `(p, q)` stored at bit `6p + q` (zero-based).
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Mat6(u64);

/// Number of distinct 3×3 matrices over 𝔽₂.
pub const MAT3_COUNT: usize = 1 << 9;

/// Order of GL(3, 𝔽₂).
pub const GL3_ORDER: usize = 168;

const ROW3: u16 = 0b111;
const ROW6: u64 = 0b11_1111;

impl Mat3 {
    pub const IDENTITY: Mat3 = Mat3(0b100_010_001);
    pub const ZERO: Mat3 = Mat3(0);

    /// Builds a matrix from its 9-bit packing. Bits above 9 are rejected.
    pub fn from_bits(bits: u16) -> Option<Mat3> {
        (bits < MAT3_COUNT as u16).then_some(Mat3(bits))
    }

    pub const fn bits(self) -> u16 {
        self.0
    }

    pub fn from_rows(rows: [[u8; 3]; 3]) -> Mat3 {
        let mut bits = 0u16;
        for (p, row) in rows.iter().enumerate() {
            for (q, &e) in row.iter().enumerate() {
                if e & 1 == 1 {
                    bits |= 1 << (3 * p + q);
                }
            }
        }
        Mat3(bits)
    }

    pub fn to_rows(self) -> [[u8; 3]; 3] {
        let mut rows = [[0u8; 3]; 3];
        for (p, row) in rows.iter_mut().enumerate() {
            for (q, e) in row.iter_mut().enumerate() {
                *e = self.get(p, q);
            }
        }
        rows
    }

    /// Entry at zero-based row `p`, column `q`.
    #[inline]
    pub fn get(self, p: usize, q: usize) -> u8 {
        ((self.0 >> (3 * p + q)) & 1) as u8
    }

    /// Packed row `p` (zero-based), column 1 in bit 0.
    #[inline]
    pub fn row(self, p: usize) -> u8 {
        ((self.0 >> (3 * p)) & ROW3) as u8
    }

    /// Row vector times matrix. `v` carries coordinate 1 in bit 0.
    #[inline]
    pub fn apply_row(self, v: u8) -> u8 {
        let mut out = 0;
        for p in 0..3 {
            if v >> p & 1 == 1 {
                out ^= self.row(p);
            }
        }
        out
    }

    pub fn transpose(self) -> Mat3 {
        let mut bits = 0u16;
        for p in 0..3 {
            for q in 0..3 {
                if self.get(p, q) == 1 {
                    bits |= 1 << (3 * q + p);
                }
            }
        }
        Mat3(bits)
    }

    pub fn det(self) -> u8 {
        let m = |p, q| self.get(p, q);
        // Over 𝔽₂ the signs of the cofactor expansion vanish.
        (m(0, 0) & (m(1, 1) & m(2, 2) ^ m(1, 2) & m(2, 1)))
            ^ (m(0, 1) & (m(1, 0) & m(2, 2) ^ m(1, 2) & m(2, 0)))
            ^ (m(0, 2) & (m(1, 0) & m(2, 1) ^ m(1, 1) & m(2, 0)))
    }

    pub fn is_invertible(self) -> bool {
        self.det() == 1
    }

    /// Inverse by Gauss-Jordan elimination on the augmented rows.
    pub fn invert(self) -> Result<Mat3> {
        let mut left = [self.row(0), self.row(1), self.row(2)];
        let mut right = [0b001u8, 0b010, 0b100];
        for col in 0..3 {
            let pivot = (col..3)
                .find(|&p| left[p] >> col & 1 == 1)
                .ok_or(Error::NotInvertible(self))?;
            left.swap(col, pivot);
            right.swap(col, pivot);
            for p in 0..3 {
                if p != col && left[p] >> col & 1 == 1 {
                    left[p] ^= left[col];
                    right[p] ^= right[col];
                }
            }
        }
        Ok(Mat3(right[0] as u16 | (right[1] as u16) << 3 | (right[2] as u16) << 6))
    }

    /// Number of nonzero entries.
    pub fn weight(self) -> u32 {
        self.0.count_ones()
    }

    /// Rank over 𝔽₂.
    pub fn rank(self) -> u32 {
        let mut rows = [self.row(0), self.row(1), self.row(2)];
        let mut rank = 0;
        for col in 0..3 {
            if let Some(p) = (rank..3).find(|&p| rows[p] >> col & 1 == 1) {
                rows.swap(rank, p);
                for r in 0..3 {
                    if r != rank && rows[r] >> col & 1 == 1 {
                        rows[r] ^= rows[rank];
                    }
                }
                rank += 1;
            }
        }
        rank as u32
    }

    /// True unless some proper nonempty index subset `S` has no entry
    /// leading from a row in `S` to a column outside `S`.
    ///
    /// Such a subset exists exactly when a simultaneous row/column
    /// permutation brings the matrix to (block) triangular form.
    pub fn is_genuinely_3d(self) -> bool {
        (1u8..7).all(|subset| {
            (0..3).any(|p| subset >> p & 1 == 1 && (0..3).any(|q| subset >> q & 1 == 0 && self.get(p, q) == 1))
        })
    }

    /// All 512 matrices in ascending packing order.
    pub fn all() -> impl Iterator<Item = Mat3> {
        (0..MAT3_COUNT as u16).map(Mat3)
    }
}

/// All invertible 3×3 matrices over 𝔽₂ in ascending packing order.
pub fn enumerate_gl3() -> Vec<Mat3> {
    Mat3::all().filter(|m| m.is_invertible()).collect()
}

impl fmt::Display for Mat3 {
    /// `rrr/rrr/rrr`, row 1 first.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for p in 0..3 {
            if p > 0 {
                f.write_str("/")?;
            }
            for q in 0..3 {
                f.write_str(if self.get(p, q) == 1 { "1" } else { "0" })?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Mat3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Mat3({self})")
    }
}

impl FromStr for Mat3 {
    type Err = Error;

    fn from_str(s: &str) -> Result<Mat3> {
        let bad = || Error::MatrixSyntax(s.to_string());
        let bytes = s.as_bytes();
        if bytes.len() != 11 || bytes[3] != b'/' || bytes[7] != b'/' {
            return Err(bad());
        }
        let mut bits = 0u16;
        for p in 0..3 {
            for q in 0..3 {
                match bytes[4 * p + q] {
                    b'0' => {}
                    b'1' => bits |= 1 << (3 * p + q),
                    _ => return Err(bad()),
                }
            }
        }
        Ok(Mat3(bits))
    }
}

impl Serialize for Mat3 {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// Ordered triple of one-based row/column labels `1 ≤ i < j < k ≤ 6`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct Slot([u8; 3]);

impl Slot {
    pub const S123: Slot = Slot([1, 2, 3]);
    pub const S145: Slot = Slot([1, 4, 5]);
    pub const S246: Slot = Slot([2, 4, 6]);
    pub const S356: Slot = Slot([3, 5, 6]);

    /// The four slots of the tetrahedron equation, in equation order.
    pub const CANONICAL: [Slot; 4] = [Slot::S123, Slot::S145, Slot::S246, Slot::S356];

    pub fn new(i: u8, j: u8, k: u8) -> Result<Slot> {
        if 1 <= i && i < j && j < k && k <= 6 {
            Ok(Slot([i, j, k]))
        } else {
            Err(Error::BadSlot([i, j, k]))
        }
    }

    /// One-based labels.
    pub fn labels(self) -> [u8; 3] {
        self.0
    }

    /// Zero-based positions.
    pub fn positions(self) -> [usize; 3] {
        self.0.map(|l| l as usize - 1)
    }

    /// All 20 valid slots in lexicographic order.
    pub fn all() -> impl Iterator<Item = Slot> {
        (1..=6u8).flat_map(|i| (i + 1..=6).flat_map(move |j| (j + 1..=6).map(move |k| Slot([i, j, k]))))
    }
}

impl fmt::Display for Slot {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}{}", self.0[0], self.0[1], self.0[2])
    }
}

impl Mat6 {
    pub const IDENTITY: Mat6 = Mat6(1 | 1 << 7 | 1 << 14 | 1 << 21 | 1 << 28 | 1 << 35);

    pub fn from_bits(bits: u64) -> Option<Mat6> {
        (bits >> 36 == 0).then_some(Mat6(bits))
    }

    pub const fn bits(self) -> u64 {
        self.0
    }

    pub fn from_rows(rows: [[u8; 6]; 6]) -> Mat6 {
        let mut bits = 0u64;
        for (p, row) in rows.iter().enumerate() {
            for (q, &e) in row.iter().enumerate() {
                if e & 1 == 1 {
                    bits |= 1 << (6 * p + q);
                }
            }
        }
        Mat6(bits)
    }

    pub fn to_rows(self) -> [[u8; 6]; 6] {
        let mut rows = [[0u8; 6]; 6];
        for (p, row) in rows.iter_mut().enumerate() {
            for (q, e) in row.iter_mut().enumerate() {
                *e = self.get(p, q);
            }
        }
        rows
    }

    #[inline]
    pub fn get(self, p: usize, q: usize) -> u8 {
        ((self.0 >> (6 * p + q)) & 1) as u8
    }

    #[inline]
    pub fn row(self, p: usize) -> u8 {
        ((self.0 >> (6 * p)) & ROW6) as u8
    }

    #[inline]
    pub fn apply_row(self, v: u8) -> u8 {
        let mut out = 0;
        for p in 0..6 {
            if v >> p & 1 == 1 {
                out ^= self.row(p);
            }
        }
        out
    }

    pub fn transpose(self) -> Mat6 {
        let mut bits = 0u64;
        for p in 0..6 {
            for q in 0..6 {
                if self.get(p, q) == 1 {
                    bits |= 1 << (6 * q + p);
                }
            }
        }
        Mat6(bits)
    }

    pub fn invert(self) -> Option<Mat6> {
        let mut left: [u8; 6] = std::array::from_fn(|p| self.row(p));
        let mut right: [u8; 6] = std::array::from_fn(|p| 1 << p);
        for col in 0..6 {
            let pivot = (col..6).find(|&p| left[p] >> col & 1 == 1)?;
            left.swap(col, pivot);
            right.swap(col, pivot);
            for p in 0..6 {
                if p != col && left[p] >> col & 1 == 1 {
                    left[p] ^= left[col];
                    right[p] ^= right[col];
                }
            }
        }
        Some(Mat6::pack_rows(right))
    }

    fn pack_rows(rows: [u8; 6]) -> Mat6 {
        Mat6(
            rows.iter()
                .enumerate()
                .fold(0u64, |acc, (p, &r)| acc | (r as u64) << (6 * p)),
        )
    }

    /// Extracts the 3×3 core if `self` has the exact shape of `embed(core, slot)`.
    pub fn slot_core(self, slot: Slot) -> Option<Mat3> {
        let pos = slot.positions();
        let mut core = 0u16;
        for (a, &p) in pos.iter().enumerate() {
            for (b, &q) in pos.iter().enumerate() {
                if self.get(p, q) == 1 {
                    core |= 1 << (3 * a + b);
                }
            }
        }
        let core = Mat3(core);
        (embed(core, slot) == self).then_some(core)
    }
}

impl fmt::Display for Mat6 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for p in 0..6 {
            if p > 0 {
                f.write_str("/")?;
            }
            for q in 0..6 {
                f.write_str(if self.get(p, q) == 1 { "1" } else { "0" })?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Mat6 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Mat6({self})")
    }
}

/// Places `r` at rows and columns `slot` of the 6×6 identity.
pub fn embed(r: Mat3, slot: Slot) -> Mat6 {
    let pos = slot.positions();
    let mut rows: [u8; 6] = std::array::from_fn(|p| 1 << p);
    for (a, &p) in pos.iter().enumerate() {
        let mut row = 0u8;
        for (b, &q) in pos.iter().enumerate() {
            row |= r.get(a, b) << q;
        }
        rows[p] = row;
    }
    Mat6::pack_rows(rows)
}

/// Right-multiplication table of a 6×6 matrix: `table[v] = v·m`.
///
/// Multiplying any matrix by `m` on the right then costs six lookups.
#[derive(Clone, Copy)]
pub struct RowTable([u8; 64]);

impl RowTable {
    pub fn new(m: Mat6) -> RowTable {
        RowTable(std::array::from_fn(|v| m.apply_row(v as u8)))
    }

    #[inline]
    pub fn apply(&self, v: u8) -> u8 {
        self.0[v as usize]
    }

    /// `lhs · m`, where `m` is the matrix this table was built from.
    #[inline]
    pub fn right_mul(&self, lhs: Mat6) -> Mat6 {
        let mut bits = 0u64;
        for p in 0..6 {
            bits |= (self.0[lhs.row(p) as usize] as u64) << (6 * p);
        }
        Mat6(bits)
    }
}

/// Both sides of the direct-sum tetrahedron equation for the first three
/// factors: `lhs = R₁₂₃R₁₄₅R₂₄₆` and `rhs = R₂₄₆R₁₄₅R₁₂₃`.
pub fn triple_products(r1: Mat3, r2: Mat3, r3: Mat3) -> (Mat6, Mat6) {
    let e1 = embed(r1, Slot::S123);
    let e2 = embed(r2, Slot::S145);
    let e3 = embed(r3, Slot::S246);
    (e1 * e2 * e3, e3 * e2 * e1)
}

/// `R₁₂₃R₁₄₅R₂₄₆R_356 = R_356R₂₄₆R₁₄₅R₁₂₃`, with independent fourth factors
/// on the two sides (`r4_left` and `r4_right`). Equal fourth factors give the
/// plain equation; distinct ones give the modified form.
pub fn check_ds_general(r1: Mat3, r2: Mat3, r3: Mat3, r4_left: Mat3, r4_right: Mat3) -> bool {
    let (a, b) = triple_products(r1, r2, r3);
    a * embed(r4_left, Slot::S356) == embed(r4_right, Slot::S356) * b
}

/// The direct-sum tetrahedron equation.
pub fn check_ds_tetra(r1: Mat3, r2: Mat3, r3: Mat3, r4: Mat3) -> bool {
    check_ds_general(r1, r2, r3, r4, r4)
}

/// Both equations of a modified pair: `(r4 | q4)` and `(q4 | r4)`.
pub fn check_modified_pair(r1: Mat3, r2: Mat3, r3: Mat3, r4: Mat3, q4: Mat3) -> bool {
    check_ds_general(r1, r2, r3, r4, q4) && check_ds_general(r1, r2, r3, q4, r4)
}

impl Mul for Mat3 {
    type Output = Mat3;

    fn mul(self, rhs: Mat3) -> Mat3 {
        let mut bits = 0u16;
        for p in 0..3 {
            bits |= (rhs.apply_row(self.row(p)) as u16) << (3 * p);
        }
        Mat3(bits)
    }
}

/// Entrywise sum over 𝔽₂.
impl Add for Mat3 {
    type Output = Mat3;

    // addition mod 2 is xor
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn add(self, rhs: Mat3) -> Mat3 {
        Mat3(self.0 ^ rhs.0)
    }
}

impl Mul for Mat6 {
    type Output = Mat6;

    fn mul(self, rhs: Mat6) -> Mat6 {
        let mut bits = 0u64;
        for p in 0..6 {
            bits |= (rhs.apply_row(self.row(p)) as u64) << (6 * p);
        }
        Mat6(bits)
    }
}
