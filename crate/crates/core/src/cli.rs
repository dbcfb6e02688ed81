//! The `tetra` command-line front end.
//!
//! Exit codes: 0 on success or when the checked relation holds, 1 when a
//! verification comes out false, 2 on usage, parse or I/O errors.

use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

use crate::error::Error;
use crate::fixtures::{example, Example};
use crate::gf2::{check_ds_tetra, check_modified_pair, enumerate_gl3, Mat3};
use crate::quantum::quantize;
use crate::report::{Format, RowWriter};
use crate::search::{
    count_nontrivial_sixtuples, count_sixtuples, for_each_sixtuple, pair_count_histogram, search_all_modified,
    search_base, search_modified_pairs, with_threads, Candidates, ModifiedTriple, TRIPLE_COUNT,
};
use crate::store::{load_store, save_store, store_checksum};
use crate::verify::{verify_modified, verify_sixtuple, ExampleReport};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FALSE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "tetra",
    version,
    about = "Search and verify two-colour permutation-type tetrahedron equation solutions over GF(2)"
)]
struct Cli {
    /// Worker threads (default: available parallelism). Results do not depend on it.
    #[arg(long, global = true, default_value_t = 0)]
    threads: usize,

    /// Emit reports as JSON lines.
    #[arg(long, global = true, conflicts_with = "csv")]
    json: bool,

    /// Emit reports as CSV.
    #[arg(long, global = true)]
    csv: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// List GL(3, F2) in ascending packing order.
    EnumerateGl {
        /// Print only the number of elements.
        #[arg(long)]
        count: bool,
    },
    /// Find every direct-sum solution over GL(3, F2) and save the store.
    SearchBase {
        #[arg(long)]
        out: PathBuf,
        /// Search all 512 matrices instead of GL(3, F2).
        #[arg(long)]
        all_matrices: bool,
        /// Required together with --all-matrices (512^4 candidates).
        #[arg(long, requires = "all_matrices")]
        force: bool,
    },
    /// Count (and optionally list) six-tuples from a saved store.
    SearchSixtuples {
        #[arg(long)]
        store: PathBuf,
        /// Restrict to tuples with a genuinely three-dimensional member.
        #[arg(long)]
        nontrivial: bool,
        /// Print the tuples themselves.
        #[arg(long)]
        list: bool,
    },
    /// Find modified-equation pairs for one triple or for all triples.
    SearchModified(ModifiedArgs),
    /// Run the verification battery for worked example 1..=8.
    VerifyExample { number: u32 },
    /// Genuinely-three-dimensional verdict for a matrix.
    Classify { matrix: String },
    /// Permutation of the 8 basis states induced by a matrix.
    Quantize { matrix: String },
    /// Check the direct-sum equation or a modified pair.
    Check(CheckArgs),
}

#[derive(Debug, Args)]
struct ModifiedArgs {
    /// The triple R1 R2 R3.
    #[arg(long, num_args = 3, value_names = ["R1", "R2", "R3"], conflicts_with = "all")]
    triple: Option<Vec<String>>,
    /// Scan every triple (or --from/--to sub-range of the canonical order).
    #[arg(long)]
    all: bool,
    #[arg(long, requires = "all")]
    from: Option<usize>,
    #[arg(long, requires = "all")]
    to: Option<usize>,
    /// Print the pair-count multiplicities.
    #[arg(long)]
    histogram: bool,
    /// Allow singular fourth-slot matrices.
    #[arg(long)]
    all_matrices: bool,
}

#[derive(Debug, Args)]
#[group(required = true, multiple = false)]
struct CheckArgs {
    /// R1 R2 R3 R4
    #[arg(long, num_args = 4, value_names = ["R1", "R2", "R3", "R4"])]
    ds: Option<Vec<String>>,
    /// R1 R2 R3 R4 Q4
    #[arg(long, num_args = 5, value_names = ["R1", "R2", "R3", "R4", "Q4"])]
    modified: Option<Vec<String>>,
}

fn parse_mats(args: &[String]) -> Result<Vec<Mat3>, Error> {
    args.iter().map(|s| s.parse()).collect()
}

/// Runs the CLI on `argv` (program name first) and returns the exit code.
pub fn run<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() {
                err.write_all(text.as_bytes())
            } else {
                out.write_all(text.as_bytes())
            };
            return code;
        }
    };
    let format = if cli.json {
        Format::JsonLines
    } else if cli.csv {
        Format::Csv
    } else {
        Format::Text
    };
    let threads = cli.threads;
    match execute(cli.command, format, threads, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_USAGE
        }
    }
}

fn io(e: std::io::Error) -> Error {
    Error::Io {
        path: PathBuf::from("<stdout>"),
        source: e,
    }
}

fn execute(command: Command, format: Format, threads: usize, out: &mut dyn Write) -> Result<i32, Error> {
    match command {
        Command::EnumerateGl { count } => {
            let gl = enumerate_gl3();
            if count {
                writeln!(out, "{}", gl.len()).map_err(io)?;
            } else {
                for m in gl {
                    writeln!(out, "{m}").map_err(io)?;
                }
            }
            Ok(EXIT_OK)
        }
        Command::SearchBase {
            out: path,
            all_matrices,
            force,
        } => {
            let candidates = if all_matrices {
                Candidates::All
            } else {
                Candidates::Invertible
            };
            let store = with_threads(threads, || search_base(candidates, force))?;
            let sum = save_store(&store, &path)?;
            writeln!(out, "solutions: {}", store.len()).map_err(io)?;
            writeln!(out, "groups: {}", store.group_count()).map_err(io)?;
            writeln!(out, "checksum: {sum:016x}").map_err(io)?;
            Ok(EXIT_OK)
        }
        Command::SearchSixtuples {
            store,
            nontrivial,
            list,
        } => {
            let store = load_store(&store)?;
            if list {
                let mut w = RowWriter::new(&mut *out, format);
                let mut result = Ok(());
                for_each_sixtuple(&store, |t| {
                    if result.is_ok() && (!nontrivial || t.is_nontrivial()) {
                        result = w.write(&t);
                    }
                });
                result.map_err(io)?;
                w.finish().map_err(io)?;
                return Ok(EXIT_OK);
            }
            let (counts, extra) = with_threads(threads, || {
                (
                    count_sixtuples(&store),
                    nontrivial.then(|| count_nontrivial_sixtuples(&store)),
                )
            });
            if format == Format::JsonLines {
                let mut v = serde_json::json!({
                    "store_records": store.len(),
                    "store_checksum": format!("{:016x}", store_checksum(&store)),
                    "raw": counts.raw,
                    "deduplicated": counts.deduplicated,
                });
                if let Some(n) = extra {
                    v["nontrivial_raw"] = n.raw.into();
                    v["nontrivial_deduplicated"] = n.deduplicated.into();
                }
                writeln!(out, "{v}").map_err(io)?;
            } else {
                writeln!(out, "raw: {}", counts.raw).map_err(io)?;
                writeln!(out, "deduplicated: {}", counts.deduplicated).map_err(io)?;
                if let Some(n) = extra {
                    writeln!(out, "nontrivial raw: {}", n.raw).map_err(io)?;
                    writeln!(out, "nontrivial deduplicated: {}", n.deduplicated).map_err(io)?;
                }
            }
            Ok(EXIT_OK)
        }
        Command::SearchModified(args) => search_modified_cmd(args, format, threads, out),
        Command::VerifyExample { number } => {
            let report = match example(number).ok_or(Error::UnknownExample(number))? {
                Example::SixTuple(ex) => verify_sixtuple(&ex)?,
                Example::Modified(ex) => verify_modified(&ex)?,
            };
            print_report(&report, format, out).map_err(io)?;
            Ok(if report.all_passed() { EXIT_OK } else { EXIT_FALSE })
        }
        Command::Classify { matrix } => {
            let m: Mat3 = matrix.parse()?;
            let verdict = m.is_genuinely_3d();
            if format == Format::JsonLines {
                writeln!(out, "{}", serde_json::json!({ "matrix": m, "genuinely_3d": verdict })).map_err(io)?;
            } else {
                let word = if verdict { "genuinely 3D" } else { "reducible" };
                writeln!(out, "{m}: {word}").map_err(io)?;
            }
            Ok(EXIT_OK)
        }
        Command::Quantize { matrix } => {
            let m: Mat3 = matrix.parse()?;
            let p = quantize(m)?;
            if format == Format::JsonLines {
                writeln!(out, "{}", serde_json::json!({ "matrix": m, "permutation": p.map() })).map_err(io)?;
            } else {
                writeln!(out, "{p}").map_err(io)?;
            }
            Ok(EXIT_OK)
        }
        Command::Check(args) => {
            let (label, holds) = if let Some(ds) = args.ds {
                let m = parse_mats(&ds)?;
                ("direct-sum", check_ds_tetra(m[0], m[1], m[2], m[3]))
            } else {
                let m = parse_mats(args.modified.as_deref().unwrap_or_default())?;
                (
                    "modified pair",
                    m[3] != m[4] && check_modified_pair(m[0], m[1], m[2], m[3], m[4]),
                )
            };
            if format == Format::JsonLines {
                writeln!(out, "{}", serde_json::json!({ "check": label, "holds": holds })).map_err(io)?;
            } else {
                writeln!(out, "{label}: {}", if holds { "holds" } else { "fails" }).map_err(io)?;
            }
            Ok(if holds { EXIT_OK } else { EXIT_FALSE })
        }
    }
}

fn search_modified_cmd(args: ModifiedArgs, format: Format, threads: usize, out: &mut dyn Write) -> Result<i32, Error> {
    let candidates = if args.all_matrices {
        Candidates::All
    } else {
        Candidates::Invertible
    };
    let triples: Vec<ModifiedTriple> = if let Some(t) = &args.triple {
        let m = parse_mats(t)?;
        let pairs = search_modified_pairs(m[0], m[1], m[2], candidates)?;
        vec![ModifiedTriple {
            r1: m[0],
            r2: m[1],
            r3: m[2],
            pairs,
        }]
    } else if args.all {
        let range = args.from.unwrap_or(0)..args.to.unwrap_or(TRIPLE_COUNT);
        with_threads(threads, || search_all_modified(Some(range), candidates))
    } else {
        return Err(Error::MatrixSyntax(
            "search-modified needs --triple R1 R2 R3 or --all".into(),
        ));
    };

    if args.histogram {
        let hist = pair_count_histogram(&triples);
        if format == Format::JsonLines {
            for (pairs, n) in &hist {
                writeln!(out, "{}", serde_json::json!({ "pairs": pairs, "triples": n })).map_err(io)?;
            }
        } else {
            writeln!(out, "triples with pairs: {}", triples.len()).map_err(io)?;
            for (pairs, n) in &hist {
                writeln!(out, "{pairs} pair(s): {n} triple(s)").map_err(io)?;
            }
        }
        return Ok(EXIT_OK);
    }

    if format == Format::Text {
        for t in &triples {
            writeln!(out, "{} {} {}: {} pair(s)", t.r1, t.r2, t.r3, t.pairs.len()).map_err(io)?;
            for p in &t.pairs {
                writeln!(out, "  R4 {}  Q4 {}", p.r4, p.q4).map_err(io)?;
            }
        }
    } else {
        let mut w = RowWriter::new(&mut *out, format);
        for p in triples.iter().flat_map(|t| &t.pairs) {
            w.write(p).map_err(io)?;
        }
        w.finish().map_err(io)?;
    }
    Ok(EXIT_OK)
}

fn print_report(report: &ExampleReport, format: Format, out: &mut dyn Write) -> std::io::Result<()> {
    if format == Format::JsonLines {
        serde_json::to_writer(&mut *out, report)?;
        return writeln!(out);
    }
    writeln!(out, "example {}", report.example)?;
    for c in &report.checks {
        let mark = if c.passed { "PASS" } else { "FAIL" };
        match &c.detail {
            Some(d) => writeln!(out, "  {mark}  {}  [{d}]", c.name)?,
            None => writeln!(out, "  {mark}  {}", c.name)?,
        }
    }
    if let Some((s3, s4)) = report.vertex_counts {
        writeln!(out, "slot3: {s3}, slot4: {s4}")?;
    }
    writeln!(
        out,
        "{}",
        if report.all_passed() {
            "all checks passed"
        } else {
            "SOME CHECKS FAILED"
        }
    )
}
