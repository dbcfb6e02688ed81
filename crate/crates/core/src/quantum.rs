//! Permutation-type quantization.
//!
//! A 3×3 matrix `R` over 𝔽₂ becomes the operator on the span of 𝔽₂³ sending
//! each basis triple `x` to `x·R`. Basis states are numbered with coordinate 1
//! as the most significant bit (`x ↦ 4x₁ + 2x₂ + x₃`, and likewise for six
//! coordinates). Operator matrices have rows indexed by the input state:
//! entry `[x, y]` is nonzero iff `x` is sent to `y`, so operator products read
//! left-to-right in application order, the same as the 𝔽₂ products.

use std::collections::BTreeMap;
use std::fmt;

use num_rational::Rational64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::gf2::{Mat3, Mat6, Slot};

/// Reverses the low `n` bits of `v`: converts between state indices
/// (coordinate 1 high) and packed row vectors (coordinate 1 low).
#[inline]
fn reverse_bits(v: u8, n: u32) -> u8 {
    v.reverse_bits() >> (8 - n)
}

/// Encodes an 𝔽₂ tuple as a state index, coordinate 1 most significant.
pub fn encode_state(coords: &[u8]) -> usize {
    coords.iter().fold(0, |acc, &c| acc << 1 | (c & 1) as usize)
}

/// Inverse of [`encode_state`] for `n` coordinates.
pub fn decode_state(index: usize, n: usize) -> Vec<u8> {
    (0..n).map(|c| (index >> (n - 1 - c) & 1) as u8).collect()
}

/// A permutation of the 8 or 64 basis states.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PermOp {
    map: Vec<u8>,
}

impl PermOp {
    pub fn identity(dim: usize) -> Result<PermOp> {
        check_dim(dim)?;
        Ok(PermOp {
            map: (0..dim as u8).collect(),
        })
    }

    pub fn from_map(map: Vec<u8>) -> Result<PermOp> {
        check_dim(map.len())?;
        let mut seen = vec![false; map.len()];
        for &y in &map {
            let slot = seen.get_mut(y as usize).ok_or(Error::NotPermutation)?;
            if std::mem::replace(slot, true) {
                return Err(Error::NotPermutation);
            }
        }
        Ok(PermOp { map })
    }

    pub fn dim(&self) -> usize {
        self.map.len()
    }

    /// Image of basis state `x`.
    #[inline]
    pub fn image(&self, x: usize) -> usize {
        self.map[x] as usize
    }

    pub fn map(&self) -> &[u8] {
        &self.map
    }

    pub fn inverse(&self) -> PermOp {
        let mut inv = vec![0u8; self.map.len()];
        for (x, &y) in self.map.iter().enumerate() {
            inv[y as usize] = x as u8;
        }
        PermOp { map: inv }
    }

    pub fn is_identity(&self) -> bool {
        self.map.iter().enumerate().all(|(x, &y)| x == y as usize)
    }

    /// Apply `self`, then `then`.
    pub fn compose(&self, then: &PermOp) -> Result<PermOp> {
        if self.dim() != then.dim() {
            return Err(Error::DimMismatch {
                left: self.dim(),
                right: then.dim(),
            });
        }
        Ok(self.compose_unchecked(then))
    }

    fn compose_unchecked(&self, then: &PermOp) -> PermOp {
        PermOp {
            map: self.map.iter().map(|&y| then.map[y as usize]).collect(),
        }
    }

    /// Number of states on which `self` and `other` agree.
    pub fn agreements(&self, other: &PermOp) -> usize {
        self.map.iter().zip(&other.map).filter(|(a, b)| a == b).count()
    }
}

fn check_dim(dim: usize) -> Result<()> {
    match dim {
        8 | 64 => Ok(()),
        _ => Err(Error::BadDim(dim)),
    }
}

impl fmt::Display for PermOp {
    /// Comma-separated decimal images.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, y) in self.map.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{y}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for PermOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PermOp[{self}]")
    }
}

/// The 8-state operator `x ↦ x·r`. Only invertible matrices are quantized.
pub fn quantize(r: Mat3) -> Result<PermOp> {
    if !r.is_invertible() {
        return Err(Error::NotInvertible(r));
    }
    Ok(PermOp {
        map: (0..8u8)
            .map(|s| reverse_bits(r.apply_row(reverse_bits(s, 3)), 3))
            .collect(),
    })
}

/// The 64-state operator `x ↦ x·m` of a 6×6 matrix.
pub fn quantize6(m: Mat6) -> Result<PermOp> {
    PermOp::from_map(
        (0..64u8)
            .map(|s| reverse_bits(m.apply_row(reverse_bits(s, 6)), 6))
            .collect(),
    )
}

/// Acts with `p` on coordinates `slot` of a 6-coordinate state and as the
/// identity on the other three.
pub fn lift(p: &PermOp, slot: Slot) -> Result<PermOp> {
    if p.dim() != 8 {
        return Err(Error::DimMismatch {
            left: p.dim(),
            right: 8,
        });
    }
    // coordinate c (zero-based) lives at bit 5 - c of the state index
    let shifts = slot.positions().map(|c| 5 - c);
    let mask: usize = shifts.iter().map(|&s| 1usize << s).sum();
    let map = (0..64usize)
        .map(|s| {
            let sub = shifts.iter().fold(0usize, |acc, &sh| acc << 1 | (s >> sh & 1));
            let img = p.image(sub);
            let mut out = s & !mask;
            for (n, &sh) in shifts.iter().enumerate() {
                out |= (img >> (2 - n) & 1) << sh;
            }
            out as u8
        })
        .collect();
    Ok(PermOp { map })
}

/// `𝓡₁₂₃𝓡₁₄₅𝓡₂₄₆𝓡ᴸ₃₅₆ = 𝓡ᴿ₃₅₆𝓡₂₄₆𝓡₁₄₅𝓡₁₂₃` as permutations of 64 states.
///
/// With `q4_left == q4_right` this is the quantum tetrahedron equation;
/// distinct fourth operators give its modified form.
pub fn check_quantum_pure(q1: &PermOp, q2: &PermOp, q3: &PermOp, q4_left: &PermOp, q4_right: &PermOp) -> Result<bool> {
    let l1 = lift(q1, Slot::S123)?;
    let l2 = lift(q2, Slot::S145)?;
    let l3 = lift(q3, Slot::S246)?;
    let l4 = lift(q4_left, Slot::S356)?;
    let r4 = lift(q4_right, Slot::S356)?;
    let lhs = l1.compose_unchecked(&l2).compose_unchecked(&l3).compose_unchecked(&l4);
    let rhs = r4.compose_unchecked(&l3).compose_unchecked(&l2).compose_unchecked(&l1);
    Ok(lhs == rhs)
}

/// Formal parameters of the weighted operators.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize)]
pub enum Param {
    Alpha,
    Beta,
    Lambda,
    Mu,
}

impl Param {
    pub fn symbol(self) -> &'static str {
        match self {
            Param::Alpha => "alpha",
            Param::Beta => "beta",
            Param::Lambda => "lambda",
            Param::Mu => "mu",
        }
    }
}

/// Numeric values for all formal parameters.
#[derive(Clone, Copy, Debug)]
pub struct ParamPoint {
    pub alpha: Rational64,
    pub beta: Rational64,
    pub lambda: Rational64,
    pub mu: Rational64,
}

impl ParamPoint {
    /// `(α, β, λ, μ) = (1, 2, 3, 5)`.
    pub const CROSS_CHECK: ParamPoint = ParamPoint {
        alpha: Rational64::new_raw(1, 1),
        beta: Rational64::new_raw(2, 1),
        lambda: Rational64::new_raw(3, 1),
        mu: Rational64::new_raw(5, 1),
    };

    pub fn integers(alpha: i64, beta: i64, lambda: i64, mu: i64) -> ParamPoint {
        ParamPoint {
            alpha: alpha.into(),
            beta: beta.into(),
            lambda: lambda.into(),
            mu: mu.into(),
        }
    }

    pub fn value(&self, p: Param) -> Rational64 {
        match p {
            Param::Alpha => self.alpha,
            Param::Beta => self.beta,
            Param::Lambda => self.lambda,
            Param::Mu => self.mu,
        }
    }
}

/// Coefficient of one term: an exact rational or a formal parameter.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Coeff {
    Num(Rational64),
    Param(Param),
}

impl Coeff {
    pub fn one() -> Coeff {
        Coeff::Num(Rational64::from_integer(1))
    }

    fn evaluate(self, point: &ParamPoint) -> Rational64 {
        match self {
            Coeff::Num(v) => v,
            Coeff::Param(p) => point.value(p),
        }
    }

    fn as_monomial(self) -> (Monomial, Rational64) {
        match self {
            Coeff::Num(v) => (Monomial::default(), v),
            Coeff::Param(p) => (Monomial(vec![p]), Rational64::from_integer(1)),
        }
    }
}

impl fmt::Display for Coeff {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Coeff::Num(v) => write!(f, "{v}"),
            Coeff::Param(p) => f.write_str(p.symbol()),
        }
    }
}

/// Product of formal parameters, kept sorted.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Default)]
struct Monomial(Vec<Param>);

impl Monomial {
    fn times(&self, other: &Monomial) -> Monomial {
        let mut v: Vec<Param> = self.0.iter().chain(&other.0).copied().collect();
        v.sort();
        Monomial(v)
    }
}

/// A linear combination of permutation operators of a common dimension.
#[derive(Clone, Debug)]
pub struct WeightedOp {
    dim: usize,
    terms: Vec<(Coeff, PermOp)>,
}

impl WeightedOp {
    pub fn new(terms: Vec<(Coeff, PermOp)>) -> Result<WeightedOp> {
        let dim = terms.first().map(|(_, p)| p.dim()).unwrap_or(8);
        for (_, p) in &terms {
            if p.dim() != dim {
                return Err(Error::DimMismatch {
                    left: dim,
                    right: p.dim(),
                });
            }
        }
        Ok(WeightedOp { dim, terms })
    }

    /// `a·𝓐 + b·𝓑` with formal parameters.
    pub fn pencil(a: Param, pa: PermOp, b: Param, pb: PermOp) -> Result<WeightedOp> {
        WeightedOp::new(vec![(Coeff::Param(a), pa), (Coeff::Param(b), pb)])
    }

    /// A single permutation with coefficient 1.
    pub fn single(p: PermOp) -> WeightedOp {
        WeightedOp {
            dim: p.dim(),
            terms: vec![(Coeff::one(), p)],
        }
    }

    /// `𝓣 = quantize(r4) + quantize(q4)`.
    pub fn modified_sum(r4: Mat3, q4: Mat3) -> Result<WeightedOp> {
        WeightedOp::new(vec![(Coeff::one(), quantize(r4)?), (Coeff::one(), quantize(q4)?)])
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn terms(&self) -> &[(Coeff, PermOp)] {
        &self.terms
    }

    /// Dense matrix with every formal parameter replaced by its value at `point`.
    pub fn evaluate(&self, point: &ParamPoint) -> DenseMatrix {
        let mut m = DenseMatrix::zeros(self.dim);
        for (c, p) in &self.terms {
            let v = c.evaluate(point);
            for x in 0..self.dim {
                *m.get_mut(x, p.image(x)) += v;
            }
        }
        m
    }

    /// Positions that are nonzero for generic coefficients.
    pub fn vertex_count(&self) -> usize {
        let mut hit = vec![false; self.dim * self.dim];
        for (_, p) in &self.terms {
            for x in 0..self.dim {
                hit[x * self.dim + p.image(x)] = true;
            }
        }
        hit.into_iter().filter(|&h| h).count()
    }

    fn lifted(&self, slot: Slot) -> Result<Vec<(Coeff, PermOp)>> {
        self.terms.iter().map(|(c, p)| Ok((*c, lift(p, slot)?))).collect()
    }

    pub fn report(&self) -> WeightedOpReport {
        WeightedOpReport {
            dim: self.dim,
            terms: self
                .terms
                .iter()
                .map(|(c, p)| TermReport {
                    coefficient: c.to_string(),
                    permutation: p.to_string(),
                })
                .collect(),
        }
    }
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct TermReport {
    pub coefficient: String,
    pub permutation: String,
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct WeightedOpReport {
    pub dim: usize,
    pub terms: Vec<TermReport>,
}

/// Square matrix of exact rationals.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct DenseMatrix {
    dim: usize,
    data: Vec<Rational64>,
}

impl DenseMatrix {
    pub fn zeros(dim: usize) -> DenseMatrix {
        DenseMatrix {
            dim,
            data: vec![Rational64::from_integer(0); dim * dim],
        }
    }

    pub fn from_perm(p: &PermOp) -> DenseMatrix {
        let mut m = DenseMatrix::zeros(p.dim());
        for x in 0..p.dim() {
            *m.get_mut(x, p.image(x)) = Rational64::from_integer(1);
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, x: usize, y: usize) -> Rational64 {
        self.data[x * self.dim + y]
    }

    fn get_mut(&mut self, x: usize, y: usize) -> &mut Rational64 {
        &mut self.data[x * self.dim + y]
    }

    pub fn entries(&self) -> &[Rational64] {
        &self.data
    }

    pub fn mul(&self, rhs: &DenseMatrix) -> DenseMatrix {
        let n = self.dim;
        let mut out = DenseMatrix::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = self.get(i, k);
                if a == Rational64::from_integer(0) {
                    continue;
                }
                for j in 0..n {
                    let b = rhs.get(k, j);
                    if b != Rational64::from_integer(0) {
                        *out.get_mut(i, j) += a * b;
                    }
                }
            }
        }
        out
    }
}

type Expansion = BTreeMap<(Monomial, u8, u8), Rational64>;

fn accumulate(exp: &mut Expansion, mono: Monomial, coeff: Rational64, perm: &PermOp) {
    for x in 0..perm.dim() {
        *exp.entry((mono.clone(), x as u8, perm.image(x) as u8))
            .or_insert_with(|| Rational64::from_integer(0)) += coeff;
    }
}

fn nonzero(mut exp: Expansion) -> Expansion {
    exp.retain(|_, v| *v != Rational64::from_integer(0));
    exp
}

/// Outcome of the weighted quantum check along its two independent routes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct WeightedCheck {
    /// Entrywise equality of both sides as polynomials in the parameters.
    pub symbolic: bool,
    /// Equality of both sides as dense matrices at `(1, 2, 3, 5)`.
    pub numeric: bool,
}

impl WeightedCheck {
    pub fn holds(self) -> bool {
        self.symbolic && self.numeric
    }
}

/// `𝓡₁₂₃𝓡₁₄₅·W₃(246)·W₄(356) = W₄(356)·W₃(246)·𝓡₁₄₅𝓡₁₂₃`.
///
/// The symbolic route expands both sides over all term choices and compares
/// every matrix entry coefficient-by-coefficient for each monomial in the
/// formal parameters. The numeric route multiplies dense 64×64 matrices at the
/// integer point `(α, β, λ, μ) = (1, 2, 3, 5)`.
pub fn check_quantum_weighted(q1: &PermOp, q2: &PermOp, w3: &WeightedOp, w4: &WeightedOp) -> Result<WeightedCheck> {
    let l1 = lift(q1, Slot::S123)?;
    let l2 = lift(q2, Slot::S145)?;
    let t3 = w3.lifted(Slot::S246)?;
    let t4 = w4.lifted(Slot::S356)?;

    let head = l1.compose_unchecked(&l2);
    let tail = l2.compose_unchecked(&l1);
    let mut lhs = Expansion::new();
    let mut rhs = Expansion::new();
    for (c3, p3) in &t3 {
        let (m3, v3) = c3.as_monomial();
        for (c4, p4) in &t4 {
            let (m4, v4) = c4.as_monomial();
            let mono = m3.times(&m4);
            let v = v3 * v4;
            accumulate(
                &mut lhs,
                mono.clone(),
                v,
                &head.compose_unchecked(p3).compose_unchecked(p4),
            );
            accumulate(&mut rhs, mono, v, &p4.compose_unchecked(p3).compose_unchecked(&tail));
        }
    }
    let symbolic = nonzero(lhs) == nonzero(rhs);

    let point = ParamPoint::CROSS_CHECK;
    let d1 = DenseMatrix::from_perm(&l1);
    let d2 = DenseMatrix::from_perm(&l2);
    let d3 = WeightedOp::new(t3)?.evaluate(&point);
    let d4 = WeightedOp::new(t4)?.evaluate(&point);
    let numeric = d1.mul(&d2).mul(&d3).mul(&d4) == d4.mul(&d3).mul(&d2).mul(&d1);

    Ok(WeightedCheck { symbolic, numeric })
}

/// The pure equations obtained by picking one term from each of `w3` and `w4`.
///
/// When all terms carry distinct formal parameters, the weighted relation
/// holds iff every one of these does.
pub fn pure_decomposition(q1: &PermOp, q2: &PermOp, w3: &WeightedOp, w4: &WeightedOp) -> Result<Vec<bool>> {
    let mut out = Vec::with_capacity(w3.terms.len() * w4.terms.len());
    for (_, p3) in &w3.terms {
        for (_, p4) in &w4.terms {
            out.push(check_quantum_pure(q1, q2, p3, p4, p4)?);
        }
    }
    Ok(out)
}

/// Multiset of the entries of the 8×8 matrix `quantize(r4) + quantize(q4)`,
/// as a map from entry value to multiplicity.
pub fn entries_of_t(r4: Mat3, q4: Mat3) -> Result<BTreeMap<i64, usize>> {
    let t = WeightedOp::modified_sum(r4, q4)?.evaluate(&ParamPoint::CROSS_CHECK);
    let mut counts = BTreeMap::new();
    for v in t.entries() {
        debug_assert!(v.is_integer());
        *counts.entry(v.to_integer()).or_insert(0) += 1;
    }
    Ok(counts)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf2::embed;

    fn m(s: &str) -> Mat3 {
        s.parse().unwrap()
    }

    fn st(s: &str) -> usize {
        usize::from_str_radix(s, 2).unwrap()
    }

    #[test]
    fn state_encoding() {
        assert_eq!(encode_state(&[1, 0, 0]), 4);
        assert_eq!(encode_state(&[0, 0, 1]), 1);
        for i in 0..64 {
            assert_eq!(encode_state(&decode_state(i, 6)), i);
        }
    }

    #[test]
    fn quantize_identity() {
        assert!(quantize(Mat3::IDENTITY).unwrap().is_identity());
    }

    #[test]
    fn quantize_transposition() {
        let q = quantize(m("010/100/001")).unwrap();
        for fixed in ["000", "001", "110", "111"] {
            assert_eq!(q.image(st(fixed)), st(fixed));
        }
        assert_eq!(q.image(st("100")), st("010"));
        assert_eq!(q.image(st("010")), st("100"));
        assert_eq!(q.image(st("101")), st("011"));
        assert_eq!(q.image(st("011")), st("101"));
    }

    #[test]
    fn quantize_shear() {
        let q = quantize(m("100/011/001")).unwrap();
        for fixed in ["000", "001", "100", "101"] {
            assert_eq!(q.image(st(fixed)), st(fixed));
        }
        assert_eq!(q.image(st("010")), st("011"));
        assert_eq!(q.image(st("011")), st("010"));
        assert_eq!(q.image(st("110")), st("111"));
        assert_eq!(q.image(st("111")), st("110"));
    }

    #[test]
    fn quantize_rejects_singular() {
        assert!(matches!(quantize(m("110/110/001")), Err(Error::NotInvertible(_))));
    }

    #[test]
    fn lift_identity_and_contiguous_slot() {
        let id = PermOp::identity(8).unwrap();
        for slot in Slot::all() {
            assert!(lift(&id, slot).unwrap().is_identity());
        }
        let q = quantize(m("011/001/110")).unwrap();
        let l = lift(&q, Slot::S123).unwrap();
        for s in 0..8 {
            // bits 4..6 zero: the low three state bits
            assert_eq!(l.image(s << 3), q.image(s) << 3);
        }
    }

    #[test]
    fn lift_agrees_with_embedding() {
        let r = m("011/001/110");
        for slot in Slot::all() {
            assert_eq!(
                lift(&quantize(r).unwrap(), slot).unwrap(),
                quantize6(embed(r, slot)).unwrap()
            );
        }
    }

    #[test]
    fn compose_rules() {
        let a = m("011/001/110");
        let b = m("101/010/011");
        let pa = quantize(a).unwrap();
        let id = PermOp::identity(8).unwrap();
        assert_eq!(pa.compose(&id).unwrap(), pa);
        assert_eq!(pa.compose(&quantize(b).unwrap()).unwrap(), quantize(a * b).unwrap());
        assert!(pa.compose(&pa.inverse()).unwrap().is_identity());
        let big = PermOp::identity(64).unwrap();
        assert!(matches!(pa.compose(&big), Err(Error::DimMismatch { .. })));
    }

    #[test]
    fn from_map_validates() {
        assert!(PermOp::from_map(vec![0, 1, 2, 3, 4, 5, 6, 6]).is_err());
        assert!(PermOp::from_map(vec![0, 1, 2]).is_err());
        assert!(PermOp::from_map(vec![7, 6, 5, 4, 3, 2, 1, 0]).is_ok());
    }

    #[test]
    fn vertex_counts() {
        let single = WeightedOp::single(quantize(m("011/001/110")).unwrap());
        assert_eq!(single.vertex_count(), 8);
        let w = WeightedOp::pencil(
            Param::Alpha,
            quantize(m("011/001/110")).unwrap(),
            Param::Beta,
            quantize(Mat3::IDENTITY).unwrap(),
        )
        .unwrap();
        assert_eq!(w.vertex_count(), 14);
    }

    #[test]
    fn t_entries_of_equal_pair() {
        let counts = entries_of_t(Mat3::IDENTITY, Mat3::IDENTITY).unwrap();
        assert_eq!(counts, BTreeMap::from([(0, 56), (2, 8)]));
    }

    #[test]
    fn weighted_single_terms_reduce_to_pure() {
        let q = |s: &str| quantize(m(s)).unwrap();
        let (q1, q2) = (q("100/010/011"), q("100/011/001"));
        let w3 = WeightedOp::single(q("011/001/110"));
        let w4 = WeightedOp::single(q("101/010/011"));
        let c = check_quantum_weighted(&q1, &q2, &w3, &w4).unwrap();
        assert!(c.holds());
        assert_eq!(pure_decomposition(&q1, &q2, &w3, &w4).unwrap(), vec![true]);
    }

    #[test]
    fn weighted_detects_failure() {
        let q = |s: &str| quantize(m(s)).unwrap();
        let (q1, q2) = (q("100/010/011"), q("100/011/001"));
        let w3 = WeightedOp::single(q("011/001/110"));
        let w4 = WeightedOp::pencil(Param::Lambda, q("101/010/011"), Param::Mu, q("110/010/001")).unwrap();
        let c = check_quantum_weighted(&q1, &q2, &w3, &w4).unwrap();
        assert!(!c.symbolic);
        assert!(!c.numeric);
    }

    #[test]
    fn display_is_comma_separated() {
        assert_eq!(PermOp::identity(8).unwrap().to_string(), "0,1,2,3,4,5,6,7");
    }
}
