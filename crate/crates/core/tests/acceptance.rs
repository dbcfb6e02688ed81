//! Acceptance gate. Prints one PASS/FAIL line per criterion and exits
//! nonzero if any fails. All comparisons are exact.

mod common;

use std::collections::BTreeSet;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;

use common::dense;
use num_rational::Rational64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use tetra_core::fixtures::{modified_examples, sixtuple_examples};
use tetra_core::gf2::{embed, enumerate_gl3, Mat3, Mat6, Slot};
use tetra_core::quantum::{check_quantum_pure, entries_of_t, lift, quantize, quantize6, Param, ParamPoint, WeightedOp};
use tetra_core::search::{
    count_sixtuples, for_each_sixtuple, search_base, search_modified_pairs, Candidates, SolutionStore,
};
use tetra_core::store::{load_store, save_store, write_store};
use tetra_core::verify::{verify_modified, verify_sixtuple};

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn gl_order() -> Outcome {
    let gl = enumerate_gl3();
    ensure(gl.len() == 168, || format!("|GL| = {}", gl.len()))?;
    let set: BTreeSet<Mat3> = gl.iter().copied().collect();
    ensure(set.len() == 168, || "duplicates in enumeration".into())?;
    let by_det = Mat3::all().filter(|m| m.det() == 1).count();
    ensure(by_det == 168, || format!("{by_det} matrices with det 1"))?;
    Ok("|GL| = 168".into())
}

fn base_count(store: &SolutionStore) -> Outcome {
    ensure(store.len() == 61535, || format!("found {}", store.len()))?;
    Ok(format!(
        "{} solutions in {} (R1, R2) groups",
        store.len(),
        store.group_count()
    ))
}

fn raw_count(store: &SolutionStore) -> Outcome {
    let c = count_sixtuples(store);
    ensure(c.raw == 3_828_292, || format!("raw {}", c.raw))?;
    let mut streamed = 0u64;
    for_each_sixtuple(store, |_| streamed += 1);
    ensure(streamed == c.raw, || {
        format!("stream yields {streamed}, counter {}", c.raw)
    })?;
    Ok(format!("raw {}, deduplicated {}", c.raw, c.deduplicated))
}

fn sixtuple_examples_pass() -> Outcome {
    let mut seen = Vec::new();
    for ex in sixtuple_examples() {
        let report = verify_sixtuple(&ex).map_err(|e| e.to_string())?;
        if let Some(c) = report.checks.iter().find(|c| !c.passed) {
            return Err(format!("example {}: {} {:?}", ex.number, c.name, c.detail));
        }
        let counts = report.vertex_counts.unwrap();
        ensure(counts == ex.vertex_counts, || {
            format!("example {}: counts {counts:?}", ex.number)
        })?;
        seen.push(format!("{}:{:?}", ex.number, counts));
    }
    let expected = [(14, 12), (12, 12), (12, 12), (14, 14)];
    let got: Vec<_> = sixtuple_examples().iter().map(|e| e.vertex_counts).collect();
    ensure(got == expected, || format!("fixture counts {got:?}"))?;
    Ok(format!("vertex counts {}", seen.join(" ")))
}

fn modified_examples_pass() -> Outcome {
    let mut found_counts = Vec::new();
    for ex in modified_examples() {
        let report = verify_modified(&ex).map_err(|e| e.to_string())?;
        if let Some(c) = report.checks.iter().find(|c| !c.passed) {
            return Err(format!("example {}: {} {:?}", ex.number, c.name, c.detail));
        }
        for &(r4, q4) in &ex.pairs {
            let entries = entries_of_t(r4, q4).map_err(|e| e.to_string())?;
            ensure(entries.keys().all(|v| (0..=2).contains(v)), || {
                format!("T entries {entries:?}")
            })?;
        }
        let found = search_modified_pairs(ex.r1, ex.r2, ex.r3, Candidates::Invertible).map_err(|e| e.to_string())?;
        found_counts.push(found.len());
    }
    ensure(found_counts == [1, 2, 2, 4], || format!("pairs found {found_counts:?}"))?;
    Ok(format!("pairs found {found_counts:?}"))
}

fn nonnegative_entries(store: &SolutionStore) -> Outcome {
    let q = |m: Mat3| quantize(m).unwrap();
    let zero = Rational64::from_integer(0);
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut points = vec![ParamPoint::CROSS_CHECK];
    for _ in 0..4 {
        let mut r = || Rational64::new(rng.gen_range(1..50), rng.gen_range(1..50));
        points.push(ParamPoint {
            alpha: r(),
            beta: r(),
            lambda: r(),
            mu: r(),
        });
    }
    let mut ops = Vec::new();
    for ex in sixtuple_examples() {
        ops.push(WeightedOp::pencil(Param::Alpha, q(ex.r3), Param::Beta, q(ex.s3)).unwrap());
        ops.push(WeightedOp::pencil(Param::Lambda, q(ex.r4), Param::Mu, q(ex.s4)).unwrap());
    }
    for ex in modified_examples() {
        for &(r4, q4) in &ex.pairs {
            ops.push(WeightedOp::modified_sum(r4, q4).unwrap());
        }
    }
    let mut n = 0u64;
    for_each_sixtuple(store, |t| {
        if n.is_multiple_of(50_000) {
            ops.push(WeightedOp::pencil(Param::Lambda, q(t.r4), Param::Mu, q(t.s4)).unwrap());
        }
        n += 1;
    });
    for (i, op) in ops.iter().enumerate() {
        for p in &points {
            let e = op.evaluate(p);
            ensure(e.entries().iter().all(|v| *v >= zero), || {
                format!("operator {i} at {p:?}")
            })?;
        }
    }
    Ok(format!("{} operators at {} positive points", ops.len(), points.len()))
}

fn property_suites(store: &SolutionStore) -> Outcome {
    let gl = enumerate_gl3();
    let mut rng = ChaCha8Rng::seed_from_u64(2024);

    for _ in 0..10_000 {
        let a = gl[rng.gen_range(0..gl.len())];
        let b = gl[rng.gen_range(0..gl.len())];
        let lhs = quantize(a * b).unwrap();
        let rhs = quantize(a).unwrap().compose(&quantize(b).unwrap()).unwrap();
        ensure(lhs == rhs, || format!("quantize not multiplicative at {a} {b}"))?;
    }

    for &a in &gl {
        let qa = quantize(a).unwrap();
        for slot in Slot::all() {
            let lifted = lift(&qa, slot).unwrap();
            ensure(lifted == quantize6(embed(a, slot)).unwrap(), || {
                format!("lift {a} at {slot}")
            })?;
            let labels = slot.labels().map(|x| x as usize);
            let naive = common::perm_of(&common::embed(&dense(a), labels));
            ensure((0..64).all(|x| lifted.image(x) == naive[x]), || {
                format!("naive lift {a} at {slot}")
            })?;
        }
    }

    let records = store.records();
    for _ in 0..1000 {
        let r = records[rng.gen_range(0..records.len())];
        let [q1, q2, q3, q4] = r.matrices().map(|m| quantize(m).unwrap());
        let ok = check_quantum_pure(&q1, &q2, &q3, &q4, &q4).unwrap();
        ensure(ok, || format!("{r:?} does not quantize to a solution"))?;
    }

    for _ in 0..1000 {
        let a = common::random_dense6(&mut rng);
        let b = common::random_dense6(&mut rng);
        let packed = (Mat6::from_rows(a) * Mat6::from_rows(b)).to_rows();
        ensure(packed == common::mul6(&a, &b), || format!("packed product {a:?} {b:?}"))?;
    }

    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let path = dir.path().join("store.txt");
    save_store(store, &path).map_err(|e| e.to_string())?;
    let loaded = load_store(&path).map_err(|e| e.to_string())?;
    ensure(&loaded == store, || "loaded store differs".into())?;
    let mut again = Vec::new();
    write_store(&loaded, &mut again).map_err(|e| e.to_string())?;
    let first = std::fs::read(&path).map_err(|e| e.to_string())?;
    ensure(first == again, || "rewritten store is not byte-identical".into())?;

    Ok("homomorphism 10000, lift 168x20, ds=>quantum 1000, packed 1000, round trip".into())
}

fn run(name: &str, f: impl FnOnce() -> Outcome) -> bool {
    let outcome = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|p| {
        let msg = p
            .downcast_ref::<String>()
            .cloned()
            .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
            .unwrap_or_default();
        Err(format!("panicked: {msg}"))
    });
    match &outcome {
        Ok(detail) => println!("PASS  {name}: {detail}"),
        Err(why) => println!("FAIL  {name}: {why}"),
    }
    outcome.is_ok()
}

fn main() -> ExitCode {
    let store = match search_base(Candidates::Invertible, false) {
        Ok(s) => s,
        Err(e) => {
            println!("FAIL  base search: {e}");
            return ExitCode::FAILURE;
        }
    };
    let results = [
        run("1 GL(3,2) order", gl_order),
        run("2 base solution count", || base_count(&store)),
        run("3 raw six-tuple count", || raw_count(&store)),
        run("4 six-tuple examples", sixtuple_examples_pass),
        run("5 modified examples", modified_examples_pass),
        run("6 nonnegative entries", || nonnegative_entries(&store)),
        run("7 property suites", || property_suites(&store)),
    ];
    let passed = results.iter().filter(|&&ok| ok).count();
    println!("acceptance: {passed}/{} criteria passed", results.len());
    if passed == results.len() {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
