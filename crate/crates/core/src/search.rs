//! Exhaustive searches over GL(3, 𝔽₂).
//!
//! All searches split work over the outermost matrix and merge the partial
//! results in ascending packing order, so output never depends on the number
//! of worker threads.

use std::collections::{BTreeMap, BTreeSet};
use std::ops::Range;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::gf2::{embed, enumerate_gl3, triple_products, Mat3, Mat6, RowTable, Slot, GL3_ORDER};

/// A solution `(R¹, R², R³, R⁴)` of the direct-sum tetrahedron equation.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize)]
pub struct SolutionRecord {
    pub r1: Mat3,
    pub r2: Mat3,
    pub r3: Mat3,
    pub r4: Mat3,
}

impl SolutionRecord {
    pub fn matrices(&self) -> [Mat3; 4] {
        [self.r1, self.r2, self.r3, self.r4]
    }
}

/// `(R¹, R², R³, R⁴, S³, S⁴)` such that every choice of `R³|S³` and `R⁴|S⁴`
/// solves the direct-sum equation with `(R¹, R²)`, with `S³ ≠ R³` and
/// `S⁴ ≠ R⁴`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize)]
pub struct SixTuple {
    pub r1: Mat3,
    pub r2: Mat3,
    pub r3: Mat3,
    pub r4: Mat3,
    pub s3: Mat3,
    pub s4: Mat3,
}

impl SixTuple {
    pub fn matrices(&self) -> [Mat3; 6] {
        [self.r1, self.r2, self.r3, self.r4, self.s3, self.s4]
    }

    /// At least one of `R³, S³, R⁴, S⁴` is genuinely three-dimensional.
    pub fn is_nontrivial(&self) -> bool {
        filter_nontrivial(self)
    }
}

pub fn filter_nontrivial(t: &SixTuple) -> bool {
    [t.r3, t.s3, t.r4, t.s4].iter().any(|m| m.is_genuinely_3d())
}

/// Unordered pair `{R⁴, Q⁴}` satisfying both modified equations for a fixed
/// triple. Stored with `r4 < q4`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize)]
pub struct ModifiedPair {
    pub r1: Mat3,
    pub r2: Mat3,
    pub r3: Mat3,
    pub r4: Mat3,
    pub q4: Mat3,
}

/// Base solutions in canonical order, indexed by `(R¹, R²)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SolutionStore {
    records: Vec<SolutionRecord>,
    index: BTreeMap<(Mat3, Mat3), Range<usize>>,
}

impl SolutionStore {
    /// Sorts and deduplicates `records`, then builds the group index.
    pub fn from_records(mut records: Vec<SolutionRecord>) -> SolutionStore {
        records.sort_unstable();
        records.dedup();
        let mut index = BTreeMap::new();
        let mut start = 0;
        for i in 1..=records.len() {
            let boundary =
                i == records.len() || (records[i].r1, records[i].r2) != (records[start].r1, records[start].r2);
            if boundary {
                index.insert((records[start].r1, records[start].r2), start..i);
                start = i;
            }
        }
        SolutionStore { records, index }
    }

    pub fn records(&self) -> &[SolutionRecord] {
        &self.records
    }

    pub fn len(&self) -> usize {
        self.records.len()
    }

    pub fn is_empty(&self) -> bool {
        self.records.is_empty()
    }

    pub fn contains(&self, r: &SolutionRecord) -> bool {
        self.records.binary_search(r).is_ok()
    }

    /// All records sharing `(r1, r2)`, ordered by `(r3, r4)`.
    pub fn group(&self, r1: Mat3, r2: Mat3) -> &[SolutionRecord] {
        self.index
            .get(&(r1, r2))
            .map_or(&[][..], |range| &self.records[range.clone()])
    }

    /// Iterates `((r1, r2), group)` in canonical order.
    pub fn groups(&self) -> impl Iterator<Item = ((Mat3, Mat3), &[SolutionRecord])> {
        self.index
            .iter()
            .map(|(&key, range)| (key, &self.records[range.clone()]))
    }

    pub fn group_count(&self) -> usize {
        self.index.len()
    }
}

/// Candidate matrices for a search.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Candidates {
    /// GL(3, 𝔽₂) only.
    #[default]
    Invertible,
    /// All 512 matrices.
    All,
}

impl Candidates {
    pub fn matrices(self) -> Vec<Mat3> {
        match self {
            Candidates::Invertible => enumerate_gl3(),
            Candidates::All => Mat3::all().collect(),
        }
    }
}

/// Runs `f` on a dedicated pool with `threads` workers (0 = rayon's default).
pub fn with_threads<T: Send>(threads: usize, f: impl FnOnce() -> T + Send) -> T {
    match rayon::ThreadPoolBuilder::new().num_threads(threads).build() {
        Ok(pool) => pool.install(f),
        Err(_) => f(),
    }
}

/// Precomputed right-multiplication data for every fourth-slot candidate.
struct FourthSlot {
    matrix: Mat3,
    embedded: Mat6,
    table: RowTable,
}

fn fourth_slot_table(candidates: &[Mat3]) -> Vec<FourthSlot> {
    candidates
        .iter()
        .map(|&m| {
            let embedded = embed(m, Slot::S356);
            FourthSlot {
                matrix: m,
                embedded,
                table: RowTable::new(embedded),
            }
        })
        .collect()
}

/// All solutions of the direct-sum equation.
///
/// With [`Candidates::All`] the search spans 512⁴ quadruples, which is
/// refused unless `force` is set.
pub fn search_base(candidates: Candidates, force: bool) -> Result<SolutionStore> {
    if candidates == Candidates::All && !force {
        return Err(Error::UnrestrictedRefused);
    }
    let mats = candidates.matrices();
    let fourth = fourth_slot_table(&mats);
    let parts: Vec<Vec<SolutionRecord>> = mats
        .par_iter()
        .map(|&r1| {
            let mut out = Vec::new();
            for &r2 in &mats {
                for &r3 in &mats {
                    let (lhs, rhs) = triple_products(r1, r2, r3);
                    let rhs_table = RowTable::new(rhs);
                    for c in &fourth {
                        // lhs·E₃₅₆ == E₃₅₆·rhs
                        if c.table.right_mul(lhs) == rhs_table.right_mul(c.embedded) {
                            out.push(SolutionRecord {
                                r1,
                                r2,
                                r3,
                                r4: c.matrix,
                            });
                        }
                    }
                }
            }
            out
        })
        .collect();
    let records: Vec<SolutionRecord> = parts.into_iter().flatten().collect();
    Ok(SolutionStore::from_records(records))
}

/// Raw and interchange-quotiented six-tuple counts.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct SixTupleCounts {
    /// Ordered six-tuples.
    pub raw: u64,
    /// Classes under `R³ ↔ S³` and `R⁴ ↔ S⁴`.
    pub deduplicated: u64,
}

impl std::ops::Add for SixTupleCounts {
    type Output = SixTupleCounts;

    fn add(self, rhs: SixTupleCounts) -> SixTupleCounts {
        SixTupleCounts {
            raw: self.raw + rhs.raw,
            deduplicated: self.deduplicated + rhs.deduplicated,
        }
    }
}

/// Dense numbering of GL(3, 𝔽₂) for bitsets.
struct GlIndex {
    to_index: [u8; 512],
    elements: Vec<Mat3>,
}

impl GlIndex {
    fn new() -> GlIndex {
        let elements = enumerate_gl3();
        let mut to_index = [u8::MAX; 512];
        for (i, m) in elements.iter().enumerate() {
            to_index[m.bits() as usize] = i as u8;
        }
        GlIndex { to_index, elements }
    }

    fn index(&self, m: Mat3) -> Option<usize> {
        match self.to_index[m.bits() as usize] {
            u8::MAX => None,
            i => Some(i as usize),
        }
    }
}

type GlSet = [u64; 3];

fn set_insert(s: &mut GlSet, i: usize) {
    s[i / 64] |= 1 << (i % 64);
}

fn set_and(a: &GlSet, b: &GlSet) -> GlSet {
    [a[0] & b[0], a[1] & b[1], a[2] & b[2]]
}

fn set_len(s: &GlSet) -> u64 {
    s.iter().map(|w| w.count_ones() as u64).sum()
}

fn set_iter(s: &GlSet) -> impl Iterator<Item = usize> + '_ {
    (0..GL3_ORDER).filter(move |&i| s[i / 64] >> (i % 64) & 1 == 1)
}

/// For one `(R¹, R²)` group: each `R³` with the set of `R⁴` it pairs with.
fn group_columns(gl: &GlIndex, group: &[SolutionRecord]) -> Vec<(Mat3, GlSet)> {
    let mut cols: Vec<(Mat3, GlSet)> = Vec::new();
    for rec in group {
        let Some(i) = gl.index(rec.r4) else { continue };
        match cols.last_mut() {
            Some((r3, set)) if *r3 == rec.r3 => set_insert(set, i),
            _ => {
                let mut set = [0; 3];
                set_insert(&mut set, i);
                cols.push((rec.r3, set));
            }
        }
    }
    cols
}

fn count_group(gl: &GlIndex, group: &[SolutionRecord]) -> SixTupleCounts {
    let cols = group_columns(gl, group);
    let mut counts = SixTupleCounts::default();
    for (a, (_, ca)) in cols.iter().enumerate() {
        for (_, cb) in &cols[a + 1..] {
            let k = set_len(&set_and(ca, cb));
            let unordered = k * k.saturating_sub(1) / 2;
            counts.deduplicated += unordered;
            // both orders of {R³, S³} and of {R⁴, S⁴}
            counts.raw += 4 * unordered;
        }
    }
    counts
}

/// Six-tuple counts over the whole store.
pub fn count_sixtuples(store: &SolutionStore) -> SixTupleCounts {
    let gl = GlIndex::new();
    let groups: Vec<&[SolutionRecord]> = store.groups().map(|(_, g)| g).collect();
    groups
        .par_iter()
        .map(|g| count_group(&gl, g))
        .reduce(SixTupleCounts::default, |a, b| a + b)
}

fn emit_group(gl: &GlIndex, r1: Mat3, r2: Mat3, group: &[SolutionRecord], f: &mut impl FnMut(SixTuple)) {
    let cols = group_columns(gl, group);
    for (a, (r3, ca)) in cols.iter().enumerate() {
        for r4i in set_iter(ca) {
            for (b, (s3, cb)) in cols.iter().enumerate() {
                if a == b || cb[r4i / 64] >> (r4i % 64) & 1 == 0 {
                    continue;
                }
                for s4i in set_iter(&set_and(ca, cb)) {
                    if s4i != r4i {
                        f(SixTuple {
                            r1,
                            r2,
                            r3: *r3,
                            r4: gl.elements[r4i],
                            s3: *s3,
                            s4: gl.elements[s4i],
                        });
                    }
                }
            }
        }
    }
}

/// Calls `f` on every ordered six-tuple, ordered by `(R¹, R², R³, R⁴, S³, S⁴)`.
pub fn for_each_sixtuple(store: &SolutionStore, mut f: impl FnMut(SixTuple)) {
    let gl = GlIndex::new();
    for ((r1, r2), group) in store.groups() {
        emit_group(&gl, r1, r2, group, &mut f);
    }
}

/// Six-tuples for one `(R¹, R²)` group.
pub fn sixtuples_in_group(store: &SolutionStore, r1: Mat3, r2: Mat3) -> Vec<SixTuple> {
    let gl = GlIndex::new();
    let mut out = Vec::new();
    emit_group(&gl, r1, r2, store.group(r1, r2), &mut |t| out.push(t));
    out
}

/// Raw and deduplicated counts restricted to nontrivial six-tuples.
pub fn count_nontrivial_sixtuples(store: &SolutionStore) -> SixTupleCounts {
    let gl = GlIndex::new();
    let groups: Vec<((Mat3, Mat3), &[SolutionRecord])> = store.groups().collect();
    groups
        .par_iter()
        .map(|&((r1, r2), g)| {
            let mut c = SixTupleCounts::default();
            emit_group(&gl, r1, r2, g, &mut |t| {
                if filter_nontrivial(&t) {
                    c.raw += 1;
                    if t.r3 < t.s3 && t.r4 < t.s4 {
                        c.deduplicated += 1;
                    }
                }
            });
            c
        })
        .reduce(SixTupleCounts::default, |a, b| a + b)
}

/// Mask and expected bits of everything outside the slot block of an
/// embedding.
#[derive(Clone, Copy)]
struct SlotShape {
    slot: Slot,
    mask: u64,
    value: u64,
}

impl SlotShape {
    fn new(slot: Slot) -> SlotShape {
        let pos = slot.positions();
        let mut block = 0u64;
        for &p in &pos {
            for &q in &pos {
                block |= 1 << (6 * p + q);
            }
        }
        let mask = !block & ((1 << 36) - 1);
        SlotShape {
            slot,
            mask,
            value: Mat6::IDENTITY.bits() & mask,
        }
    }

    #[inline]
    fn core(&self, m: Mat6) -> Option<Mat3> {
        if m.bits() & self.mask != self.value {
            return None;
        }
        m.slot_core(self.slot)
    }
}

/// Per-triple data shared by the modified-pair solver.
struct TripleContext {
    lhs: Mat6,
    rhs: Mat6,
    rhs_inverse_table: RowTable,
}

impl TripleContext {
    fn new(r1: Mat3, r2: Mat3, r3: Mat3) -> Option<TripleContext> {
        let (lhs, rhs) = triple_products(r1, r2, r3);
        let inv = rhs.invert()?;
        Some(TripleContext {
            lhs,
            rhs,
            rhs_inverse_table: RowTable::new(inv),
        })
    }
}

fn modified_pairs_with(
    ctx: &TripleContext,
    shape: &SlotShape,
    fourth: &[FourthSlot],
    candidates: Candidates,
    r1: Mat3,
    r2: Mat3,
    r3: Mat3,
) -> Vec<ModifiedPair> {
    let mut found = BTreeSet::new();
    for c in fourth {
        // lhs·E(r4) = E(q4)·rhs  ⇒  E(q4) = lhs·E(r4)·rhs⁻¹
        let q_embedded = ctx.rhs_inverse_table.right_mul(c.table.right_mul(ctx.lhs));
        let Some(q4) = shape.core(q_embedded) else { continue };
        if q4 == c.matrix {
            continue;
        }
        if candidates == Candidates::Invertible && !q4.is_invertible() {
            continue;
        }
        let eq_first = ctx.lhs * c.embedded == embed(q4, Slot::S356) * ctx.rhs;
        let eq_second = ctx.lhs * embed(q4, Slot::S356) == c.embedded * ctx.rhs;
        if eq_first && eq_second {
            let (r4, q4) = if c.matrix < q4 { (c.matrix, q4) } else { (q4, c.matrix) };
            found.insert(ModifiedPair { r1, r2, r3, r4, q4 });
        }
    }
    found.into_iter().collect()
}

/// All unordered pairs `{R⁴, Q⁴}` with `R⁴ ≠ Q⁴` satisfying both modified
/// equations for the triple `(r1, r2, r3)`, in canonical order.
pub fn search_modified_pairs(r1: Mat3, r2: Mat3, r3: Mat3, candidates: Candidates) -> Result<Vec<ModifiedPair>> {
    for m in [r1, r2, r3] {
        if !m.is_invertible() {
            return Err(Error::NotInvertible(m));
        }
    }
    let ctx = TripleContext::new(r1, r2, r3).ok_or(Error::NotInvertible(r3))?;
    let fourth = fourth_slot_table(&candidates.matrices());
    Ok(modified_pairs_with(
        &ctx,
        &SlotShape::new(Slot::S356),
        &fourth,
        candidates,
        r1,
        r2,
        r3,
    ))
}

/// A triple together with all of its modified pairs.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ModifiedTriple {
    pub r1: Mat3,
    pub r2: Mat3,
    pub r3: Mat3,
    pub pairs: Vec<ModifiedPair>,
}

/// Number of `(R¹, R², R³)` triples over GL(3, 𝔽₂).
pub const TRIPLE_COUNT: usize = GL3_ORDER * GL3_ORDER * GL3_ORDER;

/// The triple at position `i` of the canonical triple order.
pub fn triple_at(gl: &[Mat3], i: usize) -> (Mat3, Mat3, Mat3) {
    let n = gl.len();
    (gl[i / (n * n)], gl[i / n % n], gl[i % n])
}

/// Scans triples `range` (default: all of them) and returns every triple
/// with at least one modified pair, in canonical order.
pub fn search_all_modified(range: Option<Range<usize>>, candidates: Candidates) -> Vec<ModifiedTriple> {
    let gl = enumerate_gl3();
    let range = range.unwrap_or(0..TRIPLE_COUNT);
    let range = range.start.min(TRIPLE_COUNT)..range.end.min(TRIPLE_COUNT);
    let fourth = fourth_slot_table(&candidates.matrices());
    let shape = SlotShape::new(Slot::S356);
    range
        .into_par_iter()
        .filter_map(|i| {
            let (r1, r2, r3) = triple_at(&gl, i);
            let ctx = TripleContext::new(r1, r2, r3)?;
            let pairs = modified_pairs_with(&ctx, &shape, &fourth, candidates, r1, r2, r3);
            (!pairs.is_empty()).then_some(ModifiedTriple { r1, r2, r3, pairs })
        })
        .collect()
}

/// Number of triples per pair count.
pub fn pair_count_histogram(triples: &[ModifiedTriple]) -> BTreeMap<usize, usize> {
    let mut h = BTreeMap::new();
    for t in triples {
        *h.entry(t.pairs.len()).or_insert(0) += 1;
    }
    h
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf2::check_ds_tetra;

    fn m(s: &str) -> Mat3 {
        s.parse().unwrap()
    }

    fn rec(r1: &str, r2: &str, r3: &str, r4: &str) -> SolutionRecord {
        SolutionRecord {
            r1: m(r1),
            r2: m(r2),
            r3: m(r3),
            r4: m(r4),
        }
    }

    #[test]
    fn store_index_partitions_records() {
        let s = SolutionStore::from_records(vec![
            rec("100/010/001", "100/010/001", "100/010/001", "110/010/001"),
            rec("100/010/001", "100/010/001", "100/010/001", "100/010/001"),
            rec("110/010/001", "100/010/001", "100/010/001", "100/010/001"),
            rec("100/010/001", "100/010/001", "100/010/001", "100/010/001"),
        ]);
        assert_eq!(s.len(), 3);
        assert_eq!(s.group_count(), 2);
        let total: usize = s.groups().map(|(_, g)| g.len()).sum();
        assert_eq!(total, s.len());
        assert_eq!(s.group(Mat3::IDENTITY, Mat3::IDENTITY).len(), 2);
        assert!(s.group(m("111/010/001"), Mat3::IDENTITY).is_empty());
    }

    #[test]
    fn unrestricted_search_needs_override() {
        assert!(matches!(
            search_base(Candidates::All, false),
            Err(Error::UnrestrictedRefused)
        ));
    }

    #[test]
    fn group_without_rectangle_contributes_nothing() {
        // one R³ only: no S³ ≠ R³ to pair with
        let s = SolutionStore::from_records(vec![
            rec("100/010/001", "100/010/001", "100/010/001", "100/010/001"),
            rec("100/010/001", "100/010/001", "100/010/001", "110/010/001"),
        ]);
        assert_eq!(count_sixtuples(&s), SixTupleCounts::default());
        let mut n = 0;
        for_each_sixtuple(&s, |_| n += 1);
        assert_eq!(n, 0);
    }

    #[test]
    fn rectangle_gives_four_ordered_tuples() {
        let (a, b) = ("100/010/001", "110/010/001");
        let s = SolutionStore::from_records(vec![
            rec("100/010/001", "100/010/001", a, a),
            rec("100/010/001", "100/010/001", a, b),
            rec("100/010/001", "100/010/001", b, a),
            rec("100/010/001", "100/010/001", b, b),
        ]);
        assert_eq!(
            count_sixtuples(&s),
            SixTupleCounts {
                raw: 4,
                deduplicated: 1
            }
        );
        let mut tuples = Vec::new();
        for_each_sixtuple(&s, |t| tuples.push(t));
        assert_eq!(tuples.len(), 4);
        assert!(tuples.windows(2).all(|w| w[0] < w[1]));
        // all identity-like matrices: none genuinely 3D
        assert!(tuples.iter().all(|t| !filter_nontrivial(t)));
    }

    #[test]
    fn identity_triple_has_no_modified_pairs() {
        let i = Mat3::IDENTITY;
        assert!(search_modified_pairs(i, i, i, Candidates::Invertible)
            .unwrap()
            .is_empty());
    }

    #[test]
    fn modified_search_rejects_singular_triple() {
        let i = Mat3::IDENTITY;
        assert!(search_modified_pairs(m("110/110/001"), i, i, Candidates::Invertible).is_err());
    }

    #[test]
    fn naive_fourth_slot_scan_agrees_for_fixed_triple() {
        // single (r1, r2) slice of the base search, checked by direct products
        let (r1, r2, r3) = (m("100/010/011"), m("100/011/001"), m("011/001/110"));
        let gl = enumerate_gl3();
        let fourth = fourth_slot_table(&gl);
        let (lhs, rhs) = triple_products(r1, r2, r3);
        let rt = RowTable::new(rhs);
        let fast: Vec<Mat3> = fourth
            .iter()
            .filter(|c| c.table.right_mul(lhs) == rt.right_mul(c.embedded))
            .map(|c| c.matrix)
            .collect();
        let slow: Vec<Mat3> = gl
            .iter()
            .copied()
            .filter(|&r4| check_ds_tetra(r1, r2, r3, r4))
            .collect();
        assert_eq!(fast, slow);
        assert!(fast.contains(&m("101/010/011")));
    }

    #[test]
    fn triple_numbering() {
        let gl = enumerate_gl3();
        assert_eq!(triple_at(&gl, 0), (gl[0], gl[0], gl[0]));
        assert_eq!(triple_at(&gl, TRIPLE_COUNT - 1), (gl[167], gl[167], gl[167]));
        assert_eq!(triple_at(&gl, 168), (gl[0], gl[1], gl[0]));
    }
}
