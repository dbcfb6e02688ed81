//! Verification batteries for the worked examples.

use num_rational::Rational64;
use serde::Serialize;

use crate::error::Result;
use crate::fixtures::{ModifiedExample, SixTupleExample};
use crate::gf2::{check_ds_general, check_ds_tetra, Mat3};
use crate::quantum::{
    check_quantum_pure, check_quantum_weighted, entries_of_t, pure_decomposition, quantize, Coeff, Param, ParamPoint,
    WeightedOp,
};
use crate::search::{search_modified_pairs, Candidates, ModifiedPair, SixTuple};

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct CheckLine {
    pub name: String,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

impl CheckLine {
    fn new(name: impl Into<String>, passed: bool) -> CheckLine {
        CheckLine {
            name: name.into(),
            passed,
            detail: None,
        }
    }

    fn with_detail(mut self, detail: impl Into<String>) -> CheckLine {
        self.detail = Some(detail.into());
        self
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ExampleReport {
    pub example: u32,
    pub checks: Vec<CheckLine>,
    /// `(slot3, slot4)` generic vertex counts, for six-tuple examples.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub vertex_counts: Option<(usize, usize)>,
}

impl ExampleReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

/// Generic vertex counts of `αR³ + βS³` and `λR⁴ + μS⁴`.
pub fn sixtuple_vertex_counts(r3: Mat3, s3: Mat3, r4: Mat3, s4: Mat3) -> Result<(usize, usize)> {
    let w3 = WeightedOp::pencil(Param::Alpha, quantize(r3)?, Param::Beta, quantize(s3)?)?;
    let w4 = WeightedOp::pencil(Param::Lambda, quantize(r4)?, Param::Mu, quantize(s4)?)?;
    Ok((w3.vertex_count(), w4.vertex_count()))
}

pub fn verify_sixtuple(ex: &SixTupleExample) -> Result<ExampleReport> {
    let SixTupleExample {
        r1, r2, r3, r4, s3, s4, ..
    } = *ex;
    let mut checks = vec![
        CheckLine::new("direct-sum (R3, R4)", check_ds_tetra(r1, r2, r3, r4)),
        CheckLine::new("direct-sum (R3, S4)", check_ds_tetra(r1, r2, r3, s4)),
        CheckLine::new("direct-sum (S3, R4)", check_ds_tetra(r1, r2, s3, r4)),
        CheckLine::new("direct-sum (S3, S4)", check_ds_tetra(r1, r2, s3, s4)),
        CheckLine::new("S4 != R4", s4 != r4),
        CheckLine::new("S3 != R3", s3 != r3),
    ];

    let (q1, q2) = (quantize(r1)?, quantize(r2)?);
    let (q3, q4, p3, p4) = (quantize(r3)?, quantize(r4)?, quantize(s3)?, quantize(s4)?);
    checks.push(CheckLine::new(
        "quantum (R3, R4)",
        check_quantum_pure(&q1, &q2, &q3, &q4, &q4)?,
    ));
    checks.push(CheckLine::new(
        "quantum (R3, S4)",
        check_quantum_pure(&q1, &q2, &q3, &p4, &p4)?,
    ));
    checks.push(CheckLine::new(
        "quantum (S3, R4)",
        check_quantum_pure(&q1, &q2, &p3, &q4, &q4)?,
    ));
    checks.push(CheckLine::new(
        "quantum (S3, S4)",
        check_quantum_pure(&q1, &q2, &p3, &p4, &p4)?,
    ));

    let w4 = WeightedOp::pencil(Param::Lambda, q4.clone(), Param::Mu, p4.clone())?;
    let pencil4 = check_quantum_weighted(&q1, &q2, &WeightedOp::single(q3.clone()), &w4)?;
    checks.push(
        CheckLine::new("quantum R3 (lambda R4 + mu S4)", pencil4.holds())
            .with_detail(format!("symbolic={} numeric={}", pencil4.symbolic, pencil4.numeric)),
    );

    let w3 = WeightedOp::pencil(Param::Alpha, q3, Param::Beta, p3)?;
    let full = check_quantum_weighted(&q1, &q2, &w3, &w4)?;
    checks.push(
        CheckLine::new("quantum (alpha R3 + beta S3)(lambda R4 + mu S4)", full.holds())
            .with_detail(format!("symbolic={} numeric={}", full.symbolic, full.numeric)),
    );
    let pure = pure_decomposition(&q1, &q2, &w3, &w4)?;
    checks.push(CheckLine::new(
        "bilinear decomposition into 4 pure checks",
        pure.len() == 4 && pure.iter().all(|&b| b),
    ));

    let point = ParamPoint::integers(1, 2, 3, 5);
    let nonneg = [&w3, &w4].iter().all(|w| {
        w.evaluate(&point)
            .entries()
            .iter()
            .all(|v| *v >= Rational64::from_integer(0))
    });
    checks.push(CheckLine::new("entries nonnegative at (1,2,3,5)", nonneg));

    let counts = (w3.vertex_count(), w4.vertex_count());
    checks.push(
        CheckLine::new("vertex counts", counts == ex.vertex_counts).with_detail(format!(
            "slot3: {}, slot4: {} (expected {}, {})",
            counts.0, counts.1, ex.vertex_counts.0, ex.vertex_counts.1
        )),
    );
    let tuple = SixTuple { r1, r2, r3, r4, s3, s4 };
    checks.push(CheckLine::new("genuinely 3D (nontrivial)", tuple.is_nontrivial()));

    Ok(ExampleReport {
        example: ex.number,
        checks,
        vertex_counts: Some(counts),
    })
}

pub fn verify_modified(ex: &ModifiedExample) -> Result<ExampleReport> {
    let (r1, r2, r3) = (ex.r1, ex.r2, ex.r3);
    let (q1, q2, q3) = (quantize(r1)?, quantize(r2)?, quantize(r3)?);
    let mut checks = Vec::new();
    let mut sums = Vec::new();
    for (n, &(r4, q4)) in ex.pairs.iter().enumerate() {
        let tag = format!("pair {}", n + 1);
        checks.push(CheckLine::new(format!("{tag} R4 != Q4"), r4 != q4));
        checks.push(CheckLine::new(
            format!("{tag} direct-sum R4 | Q4"),
            check_ds_general(r1, r2, r3, r4, q4),
        ));
        checks.push(CheckLine::new(
            format!("{tag} direct-sum Q4 | R4"),
            check_ds_general(r1, r2, r3, q4, r4),
        ));
        let (pr, pq) = (quantize(r4)?, quantize(q4)?);
        checks.push(CheckLine::new(
            format!("{tag} quantum R4 | Q4"),
            check_quantum_pure(&q1, &q2, &q3, &pr, &pq)?,
        ));
        checks.push(CheckLine::new(
            format!("{tag} quantum Q4 | R4"),
            check_quantum_pure(&q1, &q2, &q3, &pq, &pr)?,
        ));

        let entries = entries_of_t(r4, q4)?;
        let in_range = entries.keys().all(|v| (0..=2).contains(v));
        let twos = entries.get(&2).copied().unwrap_or(0);
        checks.push(
            CheckLine::new(
                format!("{tag} T entries in {{0,1,2}}"),
                in_range && twos == pr.agreements(&pq),
            )
            .with_detail(format!("{entries:?}")),
        );

        let t = WeightedOp::modified_sum(r4, q4)?;
        let t_check = check_quantum_weighted(&q1, &q2, &WeightedOp::single(q3.clone()), &t)?;
        checks.push(
            CheckLine::new(format!("{tag} quantum T = R4 + Q4"), t_check.holds())
                .with_detail(format!("symbolic={} numeric={}", t_check.symbolic, t_check.numeric)),
        );
        sums.push((pr, pq));
    }

    if sums.len() > 1 {
        // any combination of the T's works; use distinct weights 1, 2, 3, ...
        let terms = sums
            .iter()
            .enumerate()
            .flat_map(|(i, (a, b))| {
                let c = Coeff::Num(Rational64::from_integer(i as i64 + 1));
                [(c, a.clone()), (c, b.clone())]
            })
            .collect();
        let combo = check_quantum_weighted(&q1, &q2, &WeightedOp::single(q3.clone()), &WeightedOp::new(terms)?)?;
        checks.push(CheckLine::new("linear combination of all T", combo.holds()));
    }

    let found = search_modified_pairs(r1, r2, r3, Candidates::Invertible)?;
    let listed: Vec<ModifiedPair> = {
        let mut v: Vec<ModifiedPair> = ex
            .pairs
            .iter()
            .map(|&(a, b)| {
                let (r4, q4) = if a < b { (a, b) } else { (b, a) };
                ModifiedPair { r1, r2, r3, r4, q4 }
            })
            .collect();
        v.sort();
        v
    };
    checks.push(
        CheckLine::new("search recovers listed pairs", listed.iter().all(|p| found.contains(p))).with_detail(format!(
            "listed {}, found {}",
            listed.len(),
            found.len()
        )),
    );
    checks.push(CheckLine::new("search finds exactly the listed pairs", found == listed));

    Ok(ExampleReport {
        example: ex.number,
        checks,
        vertex_counts: None,
    })
}
