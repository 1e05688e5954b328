//! The `splitstar` command line.
//!
//! Exit codes: 0 success, 1 validation failure, 2 bad arguments or input.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

use crate::dcc::{self, base, dcc_construct, CaseTag, DccCover, DccRequest, SweepPolicy};
use crate::permutation::Permutation;
use crate::topology::neighbors;
use crate::verify::{validate_dcc, ValidationReport};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INVALID: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

/// A cover as exchanged on the command line.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CoverDocument {
    pub n: usize,
    pub u: Permutation,
    pub v: Permutation,
    pub ell: usize,
    pub c1: Vec<Permutation>,
    pub c2: Vec<Permutation>,
    #[serde(default)]
    pub case_trace: Vec<String>,
}

impl CoverDocument {
    pub fn new(req: &DccRequest, cover: &DccCover, trace: &[CaseTag]) -> Self {
        CoverDocument {
            n: req.n,
            u: req.u,
            v: req.v,
            ell: req.ell,
            c1: cover.c1.vertices().to_vec(),
            c2: cover.c2.vertices().to_vec(),
            case_trace: trace.iter().map(ToString::to_string).collect(),
        }
    }

    /// `c1` is the cycle holding `u`.
    pub fn cover(&self) -> DccCover {
        DccCover::from_pair(self.c1.clone(), self.c2.clone())
    }

    pub fn validate(&self) -> ValidationReport {
        validate_dcc(self.n, &self.cover(), &self.u, &self.v, self.ell)
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "splitstar",
    version,
    about = "Two-disjoint-cycle covers of split-star networks"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum CoverFormat {
    Json,
    Text,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum GraphFormat {
    Dot,
    Edgelist,
}

#[derive(Debug, Subcommand)]
enum Cmd {
    /// Construct a cover with |c1| = len, u in c1 and v in c2.
    Dcc {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        u: String,
        #[arg(long)]
        v: String,
        #[arg(long)]
        len: usize,
        #[arg(long, value_enum, default_value = "json")]
        format: CoverFormat,
    },
    /// Validate a cover document.
    Verify { file: PathBuf },
    /// Construct and validate covers over many instances, u = identity.
    Sweep {
        #[arg(long)]
        n: usize,
        /// Number of random instances; all instances when omitted.
        #[arg(long)]
        sample: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        jobs: Option<usize>,
    },
    /// The embedded n = 4 tables.
    Tables {
        /// Validate every printed row and report repairs.
        #[arg(long)]
        check: bool,
        /// Printed table file to check instead of the embedded one.
        #[arg(long, requires = "check")]
        data: Option<PathBuf>,
    },
    /// Print the graph S_n^2.
    Export {
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value = "edgelist")]
        format: GraphFormat,
    },
}

/// Runs the command line with `args` (including the program name).
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = e.exit_code();
            let text = e.render().to_string();
            let _ = if code == 0 {
                out.write_all(text.as_bytes())
            } else {
                err.write_all(text.as_bytes())
            };
            return if code == 0 { EXIT_OK } else { EXIT_USAGE };
        }
    };
    let res = match cli.cmd {
        Cmd::Dcc { n, u, v, len, format } => cmd_dcc(n, &u, &v, len, format, out),
        Cmd::Verify { file } => cmd_verify(&file, out),
        Cmd::Sweep { n, sample, seed, jobs } => cmd_sweep(n, sample, seed, jobs, out, err),
        Cmd::Tables { check, data } => cmd_tables(check, data, out),
        Cmd::Export { n, format } => cmd_export(n, format, out),
    };
    match res {
        Ok(code) => code,
        Err(Failure(code, msg)) => {
            let _ = writeln!(err, "error: {msg}");
            code
        }
    }
}

struct Failure(i32, String);

fn usage(msg: impl ToString) -> Failure {
    Failure(EXIT_USAGE, msg.to_string())
}

fn io(e: std::io::Error) -> Failure {
    Failure(EXIT_USAGE, e.to_string())
}

type CmdResult = Result<i32, Failure>;

fn cmd_dcc(n: usize, u: &str, v: &str, len: usize, format: CoverFormat, out: &mut dyn Write) -> CmdResult {
    let u = Permutation::parse(u, n).map_err(|e| usage(format!("--u: {e}")))?;
    let v = Permutation::parse(v, n).map_err(|e| usage(format!("--v: {e}")))?;
    let req = DccRequest::new(n, u, v, len).map_err(usage)?;
    let (cover, trace) = dcc_construct(&req).map_err(|e| Failure(EXIT_INVALID, e.to_string()))?;
    let doc = CoverDocument::new(&req, &cover, &trace);
    let report = doc.validate();
    if !report.ok {
        return Err(Failure(
            EXIT_INVALID,
            format!("constructed cover is invalid:\n{report}"),
        ));
    }
    match format {
        CoverFormat::Json => {
            serde_json::to_writer_pretty(&mut *out, &doc).map_err(usage)?;
            writeln!(out).map_err(io)?;
        }
        CoverFormat::Text => {
            let line = |c: &[Permutation]| c.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ");
            writeln!(out, "n={} u={} v={} ell={}", doc.n, doc.u, doc.v, doc.ell).map_err(io)?;
            writeln!(out, "c1 ({}): {}", doc.c1.len(), line(&doc.c1)).map_err(io)?;
            writeln!(out, "c2 ({}): {}", doc.c2.len(), line(&doc.c2)).map_err(io)?;
            for t in &doc.case_trace {
                writeln!(out, "case: {t}").map_err(io)?;
            }
        }
    }
    Ok(EXIT_OK)
}

fn cmd_verify(file: &PathBuf, out: &mut dyn Write) -> CmdResult {
    let text = std::fs::read_to_string(file).map_err(|e| usage(format!("{}: {e}", file.display())))?;
    let doc: CoverDocument = serde_json::from_str(&text).map_err(|e| usage(format!("{}: {e}", file.display())))?;
    if !(3..=dcc::MAX_DCC_DIM).contains(&doc.n) {
        return Err(usage(format!("dimension {} unsupported", doc.n)));
    }
    let report = doc.validate();
    writeln!(out, "{}", serde_json::to_string_pretty(&report).map_err(usage)?).map_err(io)?;
    Ok(if report.ok { EXIT_OK } else { EXIT_INVALID })
}

fn cmd_sweep(
    n: usize,
    sample: Option<usize>,
    seed: u64,
    jobs: Option<usize>,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> CmdResult {
    if !(4..=dcc::MAX_DCC_DIM).contains(&n) {
        return Err(usage(format!("--n must lie in [4, {}]", dcc::MAX_DCC_DIM)));
    }
    let policy = match sample {
        Some(0) => return Err(usage("--sample must be positive")),
        Some(count) => SweepPolicy::Sample { count, seed },
        None if n > 6 => return Err(usage("full sweeps stop at n = 6; pass --sample")),
        None => SweepPolicy::Full,
    };
    let mut pool = rayon::ThreadPoolBuilder::new();
    if let Some(j) = jobs {
        if j == 0 {
            return Err(usage("--jobs must be positive"));
        }
        pool = pool.num_threads(j);
    }
    let pool = pool.build().map_err(usage)?;
    let report = pool.install(|| dcc::pancyclicity_sweep(n, policy));
    for f in &report.failures {
        writeln!(out, "FAIL v={} ell={}: {}", f.v, f.ell, f.reason.replace('\n', "; ")).map_err(io)?;
    }
    writeln!(out, "{}/{} pass", report.passes, report.instances).map_err(io)?;
    writeln!(err, "wall time {:.3} s", report.wall.as_secs_f64()).map_err(io)?;
    Ok(if report.all_pass() { EXIT_OK } else { EXIT_INVALID })
}

fn cmd_tables(check: bool, data: Option<PathBuf>, out: &mut dyn Write) -> CmdResult {
    if !check {
        let rows = base::printed_rows().map_err(usage)?;
        writeln!(
            out,
            "{} printed rows; run `tables --check` for the errata report",
            rows.len()
        )
        .map_err(io)?;
        return Ok(EXIT_OK);
    }
    let rows = match data {
        Some(path) => {
            let text = std::fs::read_to_string(&path).map_err(|e| usage(format!("{}: {e}", path.display())))?;
            base::parse_rows(&text).map_err(|e| usage(format!("configuration error: {e}")))?
        }
        None => base::printed_rows().map_err(usage)?,
    };
    let checks = base::check_rows(&rows).map_err(|e| usage(format!("configuration error: {e}")))?;
    let mut flagged = 0;
    let mut ok = true;
    for c in &checks {
        writeln!(out, "{c}").map_err(io)?;
        if !c.passes_as_printed() {
            flagged += 1;
            ok &= c.repaired_ok();
        }
    }
    writeln!(
        out,
        "{} rows, {} pass as printed, {} flagged, {} repaired rows {}",
        checks.len(),
        checks.len() - flagged,
        flagged,
        flagged,
        if ok { "pass" } else { "FAIL" }
    )
    .map_err(io)?;
    Ok(if ok { EXIT_OK } else { EXIT_INVALID })
}

fn cmd_export(n: usize, format: GraphFormat, out: &mut dyn Write) -> CmdResult {
    if !(3..=5).contains(&n) {
        return Err(usage("export supports 3 <= n <= 5"));
    }
    let mut w = std::io::BufWriter::new(out);
    if let GraphFormat::Dot = format {
        writeln!(w, "graph S{n}_2 {{").map_err(io)?;
        for x in Permutation::all(n) {
            writeln!(w, "  \"{x}\";").map_err(io)?;
        }
    }
    for x in Permutation::all(n) {
        let mut ys: Vec<Permutation> = neighbors(&x).into_iter().map(|(y, _)| y).filter(|y| x < *y).collect();
        ys.sort_unstable();
        for y in ys {
            match format {
                GraphFormat::Dot => writeln!(w, "  \"{x}\" -- \"{y}\";"),
                GraphFormat::Edgelist => writeln!(w, "{x} {y}"),
            }
            .map_err(io)?;
        }
    }
    if let GraphFormat::Dot = format {
        writeln!(w, "}}").map_err(io)?;
    }
    w.flush().map_err(io)?;
    Ok(EXIT_OK)
}
