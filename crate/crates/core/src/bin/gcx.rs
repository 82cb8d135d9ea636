//! Command line front end: enumeration, matrices, Betti tables, checks,
//! symmetrization and composition, with on-disk artifacts.
//!
//! Exit codes: 0 success, 1 a `verify` check failed, 2 usage error,
//! 3 malformed input, 4 file system error, 5 resource budget exceeded,
//! 6 any other error.

use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use gcx::differential::assemble_matrix;
use gcx::linalg::Window;
use gcx::pair::{combination_to_text, sniff_parities};
use gcx::properad::{compose, describe, parse_gra};
use gcx::verify::{self, CheckReport};
use gcx::{betti, enumerate_basis, sym, BasisSlice, Bidegree, Budget, Complex, Error, OrientedGraph, Parities, SliceFlags, ValencyFilter};

#[derive(Parser)]
#[command(name = "gcx", version, about = "Exact computations in entangled graph complexes")]
struct Cli {
    /// Resource budget file (`key=value` lines).
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Write a JSON report of the run here.
    #[arg(long, global = true)]
    json: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Valency {
    All,
    Univ,
    Min2,
}

#[derive(Clone, Copy, ValueEnum)]
enum Op {
    Full,
    Gc1,
    Geq2,
}

impl From<Op> for Complex {
    fn from(o: Op) -> Complex {
        match o {
            Op::Full => Complex::Full,
            Op::Gc1 => Complex::Gc1,
            Op::Geq2 => Complex::Geq2,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Check {
    D2,
    Class,
    ChainMap,
    Relations,
    Cancellation,
    Les,
}

#[derive(Subcommand)]
enum Command {
    /// Write the basis of one bidegree as a slice file.
    Enumerate {
        #[arg(long)]
        c: i64,
        #[arg(long)]
        d: i64,
        #[arg(long)]
        v1: usize,
        #[arg(long)]
        e1: usize,
        #[arg(long)]
        v2: usize,
        #[arg(long)]
        e2: usize,
        /// Keep only connected pairs.
        #[arg(long)]
        connected: bool,
        #[arg(long, value_enum, default_value = "all")]
        valency: Valency,
        /// Admit loops.
        #[arg(long)]
        loops: bool,
        #[arg(long)]
        out: PathBuf,
    },
    /// Differential matrix out of a slice, in Matrix Market format. The
    /// codomain slices are written next to it and named in a sidecar.
    Diff {
        #[arg(long)]
        slice: PathBuf,
        #[arg(long, value_enum)]
        op: Op,
        #[arg(long)]
        out: PathBuf,
    },
    /// Betti table of a window.
    Betti {
        #[arg(long)]
        window: Window,
        #[arg(long)]
        c: i64,
        #[arg(long)]
        d: i64,
        #[arg(long, value_enum, default_value = "full")]
        complex: Op,
        #[arg(long)]
        report: PathBuf,
    },
    /// Run a consistency check; exits with 1 on failure.
    Verify {
        #[arg(value_enum)]
        check: Check,
        /// Class name for `class` (A, B, K4, symK4K4).
        name: Option<String>,
        #[arg(long)]
        c: i64,
        #[arg(long)]
        d: i64,
        #[arg(long, default_value = "v1+v2<=4,e1+e2<=4")]
        window: Window,
        #[arg(long, value_enum, default_value = "full")]
        complex: Op,
        /// Random instances for `cancellation`.
        #[arg(long, default_value_t = 50)]
        count: usize,
        /// Decimal or `0x`-prefixed hexadecimal.
        #[arg(long, default_value = "0x5eed", value_parser = parse_seed)]
        seed: u64,
    },
    /// Symmetrization of two graphs, one `<coefficient> <pair>` per line.
    Sym {
        #[arg(long)]
        g1: PathBuf,
        #[arg(long)]
        g2: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
    /// Composition of two labeled elements along the listed labels.
    Compose {
        #[arg(long)]
        p: PathBuf,
        #[arg(long)]
        q: PathBuf,
        /// Input labels of `p` (first side) to glue, comma separated.
        #[arg(long, value_delimiter = ',')]
        i: Vec<u32>,
        /// Output labels of `q` (second side) to glue, comma separated.
        #[arg(long, value_delimiter = ',')]
        j: Vec<u32>,
        #[arg(long)]
        out: PathBuf,
    },
}

fn parse_seed(s: &str) -> Result<u64, std::num::ParseIntError> {
    match s.strip_prefix("0x") {
        Some(hex) => u64::from_str_radix(hex, 16),
        None => s.parse(),
    }
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Parse(_) | Error::Structural(_) => 3,
        Error::Io(_) => 4,
        Error::Budget { .. } => 5,
        _ => 6,
    }
}

fn log(msg: &str) {
    eprintln!("[gcx] {msg}");
}

fn read(path: &Path) -> Result<String, Error> {
    std::fs::read_to_string(path).map_err(|e| Error::Io(std::io::Error::new(e.kind(), format!("{}: {e}", path.display()))))
}

fn write(path: &Path, text: &str) -> Result<(), Error> {
    std::fs::write(path, text).map_err(|e| Error::Io(std::io::Error::new(e.kind(), format!("{}: {e}", path.display()))))?;
    log(&format!("wrote {}", path.display()));
    Ok(())
}

fn first_line(text: &str, what: &str) -> Result<String, Error> {
    text.lines()
        .map(str::trim)
        .find(|l| !l.is_empty())
        .map(str::to_owned)
        .ok_or_else(|| Error::Parse(format!("{what} file is empty")))
}

fn sibling(path: &Path, suffix: &str) -> PathBuf {
    let mut s = path.as_os_str().to_owned();
    s.push(suffix);
    PathBuf::from(s)
}

fn run(command: &Command, budget: &Budget) -> Result<(Value, bool), Error> {
    match command {
        Command::Enumerate {
            c,
            d,
            v1,
            e1,
            v2,
            e2,
            connected,
            valency,
            loops,
            out,
        } => {
            let valency = match valency {
                Valency::All => ValencyFilter::All,
                Valency::Univ => ValencyFilter::HasUnivalent,
                Valency::Min2 => ValencyFilter::MinValence2,
            };
            let flags = SliceFlags {
                connected: *connected,
                valency,
                loops: *loops,
            };
            let b = Bidegree::new(*v1, *e1, *v2, *e2);
            let slice = enumerate_basis(b, Parities::new(*c, *d), flags, budget)?;
            log(&format!("bidegree {b}: {} classes", slice.len()));
            write(out, &slice.to_text()?)?;
            Ok((json!({ "bidegree": b.to_string(), "size": slice.len(), "out": out }), true))
        }
        Command::Diff { slice, op, out } => {
            let dom = BasisSlice::from_text(&read(slice)?)?;
            let complex = Complex::from(*op);
            let flags = SliceFlags {
                valency: complex.slice_flags().valency,
                ..dom.flags
            };
            let b = dom.bidegree;
            let mut cod = Vec::new();
            let mut files = vec![("domain".to_string(), slice.display().to_string())];
            for (n, cb) in [
                Bidegree::new(b.v1 + 1, b.e1 + 1, b.v2, b.e2),
                Bidegree::new(b.v1, b.e1, b.v2 + 1, b.e2 + 1),
            ]
            .into_iter()
            .enumerate()
            {
                let s = enumerate_basis(cb, dom.parities, flags, budget)?;
                let path = sibling(out, &format!(".codomain{n}.slice"));
                write(&path, &s.to_text()?)?;
                files.push((format!("codomain{n}"), path.display().to_string()));
                cod.push(s);
            }
            let m = assemble_matrix(&dom, &cod, complex)?;
            if m.nnz() > budget.max_matrix_nnz {
                return Err(Error::Budget {
                    what: format!("matrix out of {b}"),
                    detail: format!("{} nonzeros exceed max_matrix_nnz={}", m.nnz(), budget.max_matrix_nnz),
                });
            }
            log(&format!("{}x{} matrix, {} nonzeros", m.num_rows(), m.num_cols(), m.nnz()));
            write(out, &m.to_matrix_market())?;
            let refs: Vec<(&str, &str)> = files.iter().map(|(a, b)| (a.as_str(), b.as_str())).collect();
            write(&sibling(out, ".sidecar"), &m.slices_sidecar(&refs))?;
            Ok((
                json!({ "rows": m.num_rows(), "cols": m.num_cols(), "nnz": m.nnz(), "out": out }),
                true,
            ))
        }
        Command::Betti {
            window,
            c,
            d,
            complex,
            report,
        } => {
            let (table, _) = betti(*window, Parities::new(*c, *d), (*complex).into(), budget)?;
            let nonzero = table.nonzero_safe();
            for (blk, n) in &nonzero {
                log(&format!("safe nonzero Betti number {n} at loops {:?}, {} vertices", blk.loops, blk.vertices));
            }
            write(report, &table.to_text())?;
            let entries: Vec<Value> = table
                .entries
                .values()
                .map(|e| {
                    json!({
                        "bidegrees": e.bidegrees.iter().map(|b| b.to_string()).collect::<Vec<_>>(),
                        "dim": e.dim, "rank_out": e.rank_out, "rank_in": e.rank_in,
                        "betti": e.betti, "safe": e.safe,
                    })
                })
                .collect();
            Ok((json!({ "window": window.to_string(), "safe_nonzero": nonzero.len(), "entries": entries }), true))
        }
        Command::Verify {
            check,
            name,
            c,
            d,
            window,
            complex,
            count,
            seed,
        } => {
            let par = Parities::new(*c, *d);
            let report: CheckReport = match check {
                Check::D2 => verify::d2_suite(par, *window, (*complex).into(), budget)?,
                Check::Class => {
                    let name = name
                        .as_deref()
                        .ok_or_else(|| Error::Parse("verify class needs a class name".into()))?;
                    verify::certify_class(&verify::find_class(name, par)?, budget)?
                }
                Check::ChainMap => verify::chain_map_check(par, window.max_vertices, window.max_edges)?,
                Check::Relations => verify::relations_check(par)?,
                Check::Cancellation => verify::cancellation_check(par, *count, *seed)?,
                Check::Les => verify::les_check(par, *window, budget)?,
            };
            log(&report.summary());
            for f in &report.failures {
                log(&format!("  {f}"));
            }
            let ok = report.passed;
            Ok((serde_json::to_value(&report).expect("serializable"), ok))
        }
        Command::Sym { g1, g2, out } => {
            let a: OrientedGraph = first_line(&read(g1)?, "graph")?.parse()?;
            let b: OrientedGraph = first_line(&read(g2)?, "graph")?.parse()?;
            let par = Parities {
                c: a.parity,
                d: b.parity,
            };
            let lc = sym(&a, &b)?;
            log(&format!("{} terms", lc.len()));
            write(out, &combination_to_text(&lc, par)?)?;
            Ok((json!({ "terms": lc.len(), "out": out }), true))
        }
        Command::Compose { p, q, i, j, out } => {
            let pt = first_line(&read(p)?, "element")?;
            let qt = first_line(&read(q)?, "element")?;
            let pe = parse_gra(&pt, sniff_parities(&pt)?)?;
            let qe = parse_gra(&qt, sniff_parities(&qt)?)?;
            let lc = compose(&pe, &qe, i, j)?;
            log(&format!("{} terms", lc.len()));
            write(out, &describe(&lc, pe.parities())?)?;
            Ok((json!({ "terms": lc.len(), "out": out }), true))
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    let budget = match &cli.config {
        Some(p) => match Budget::load(p) {
            Ok(b) => b,
            Err(e) => {
                log(&format!("error: {e}"));
                return ExitCode::from(exit_code(&e));
            }
        },
        None => Budget::default(),
    };
    let args: Vec<String> = std::env::args().skip(1).collect();
    log(&format!("gcx {}", args.join(" ")));
    let start = Instant::now();
    let outcome = run(&cli.command, &budget);
    let elapsed = start.elapsed().as_secs_f64();
    let (code, status, result) = match &outcome {
        Ok((v, true)) => (0, "ok", v.clone()),
        Ok((v, false)) => (1, "check failed", v.clone()),
        Err(e) => {
            log(&format!("error: {e}"));
            (exit_code(e), "error", json!({ "error": e.to_string() }))
        }
    };
    log(&format!("{status} in {elapsed:.3}s"));
    if let Some(path) = &cli.json {
        let doc = json!({
            "command": args,
            "config": {
                "max_raw_candidates": budget.max_raw_candidates,
                "max_basis_size": budget.max_basis_size,
                "max_matrix_nnz": budget.max_matrix_nnz,
                "modular_threshold_nnz": budget.modular_threshold_nnz,
            },
            "seconds": elapsed,
            "status": status,
            "exit_code": code,
            "result": result,
        });
        let text = serde_json::to_string_pretty(&doc).expect("serializable") + "\n";
        if let Err(e) = write(path, &text) {
            log(&format!("error: {e}"));
            return ExitCode::from(exit_code(&e));
        }
    }
    ExitCode::from(code)
}
