//! The `bhlab` command-line front end.
//!
//! [`run`] never touches the process: it returns the exit code and both
//! output streams, so the binary is a thin wrapper and tests can drive it
//! in-process.

use std::path::Path;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;
use thiserror::Error;

use crate::bhmat::{parse_matrix_json, BHMatrix, BhError, Sector};
use crate::cohoring::{duality_matrix, orbifold_basis, CohError, DualPair, TableRow};
use crate::dwork::{tfr_matrix, verify_commutation, DworkError, FrobEntryReport};
use crate::homolab::{default_window, verify_quasi_iso};
use crate::rational::fmt_q;
use crate::suites::{run_suite, Suite, SuiteConfig, SuiteReport};

pub const EXIT_PASS: i32 = 0;
pub const EXIT_PROPERTY: i32 = 1;
pub const EXIT_DOMAIN: i32 = 2;
pub const EXIT_PARSE: i32 = 3;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("{0}")]
    Domain(String),
}

impl CliError {
    pub fn code(&self) -> i32 {
        match self {
            CliError::Parse(_) => EXIT_PARSE,
            CliError::Domain(_) => EXIT_DOMAIN,
        }
    }
}

impl From<BhError> for CliError {
    fn from(e: BhError) -> Self {
        CliError::Domain(e.to_string())
    }
}

impl From<DworkError> for CliError {
    fn from(e: DworkError) -> Self {
        CliError::Domain(e.to_string())
    }
}

impl From<CohError> for CliError {
    fn from(e: CohError) -> Self {
        CliError::Domain(e.to_string())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum)]
pub enum Format {
    #[default]
    Pretty,
    Json,
    Csv,
}

#[derive(Debug, Parser)]
#[command(name = "bhlab", version, about = "Invertible polynomials, their duals and twisted Frobenius")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[arg(long, value_enum, global = true, default_value = "pretty")]
    pub format: Format,
}

#[derive(Debug, Args)]
pub struct MatrixArg {
    /// Inline JSON (`[[2,1],[0,3]]` or `{"matrix": ...}`) or a path to a JSON file.
    #[arg(short = 'm', long = "matrix")]
    pub matrix: String,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Validate a matrix and print its atoms, determinant and weights.
    Classify(MatrixArg),
    /// The groups G_A and G_{A^T}.
    Group(MatrixArg),
    /// The orbifold cohomology basis with its two gradings.
    Basis(MatrixArg),
    /// The duality pairs H(Δ) between the bases of A and A^T.
    Dual(MatrixArg),
    /// Run a property suite over the corpus (plus an optional matrix).
    Verify {
        #[arg(long)]
        suite: Suite,
        #[arg(short = 'm', long = "matrix")]
        matrix: Option<String>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        window: Option<u32>,
        /// Randomized cases for the sampling suites.
        #[arg(long, default_value_t = 1000)]
        cases: usize,
    },
    /// The twisted Frobenius matrix on the orbifold basis.
    Frobenius {
        #[command(flatten)]
        m: MatrixArg,
        #[arg(short = 'p', long = "prime")]
        prime: u64,
        /// Absolute π-adic precision; defaults to 2(p-1).
        #[arg(long)]
        precision: Option<i64>,
        /// Also check commutation with the duality map.
        #[arg(long)]
        check_duality: bool,
    },
}

/// Exit code plus captured output.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn ok(stdout: String, pass: bool) -> Self {
        Outcome { code: if pass { EXIT_PASS } else { EXIT_PROPERTY }, stdout, stderr: String::new() }
    }
}

/// Reads `-m`: inline JSON if it looks like JSON, otherwise a file path.
pub fn load_matrix(src: &str) -> Result<BHMatrix, CliError> {
    let text = if src.trim_start().starts_with(['[', '{']) {
        src.to_string()
    } else {
        std::fs::read_to_string(Path::new(src)).map_err(|e| CliError::Parse(format!("{src}: {e}")))?
    };
    let entries = parse_matrix_json(&text).map_err(|e| CliError::Parse(e.to_string()))?;
    Ok(BHMatrix::validate(entries)?)
}

/// Configures the global rayon pool from `BHLAB_THREADS`.
pub fn init_threads() {
    if let Some(n) = std::env::var("BHLAB_THREADS").ok().and_then(|v| v.parse::<usize>().ok()) {
        // a second call fails harmlessly; the pool is already built
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n.max(1)).build_global();
    }
}

/// Parses arguments and runs one command.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => Outcome::ok(text, true),
                _ => Outcome { code: EXIT_PARSE, stdout: String::new(), stderr: text },
            };
        }
    };
    match execute(&cli) {
        Ok(o) => o,
        Err(e) => Outcome { code: e.code(), stdout: String::new(), stderr: format!("error: {e}\n") },
    }
}

fn execute(cli: &Cli) -> Result<Outcome, CliError> {
    let f = cli.format;
    match &cli.command {
        Command::Classify(a) => classify(&load_matrix(&a.matrix)?, f),
        Command::Group(a) => Ok(group(&load_matrix(&a.matrix)?, f)),
        Command::Basis(a) => Ok(basis(&load_matrix(&a.matrix)?, f)),
        Command::Dual(a) => dual(&load_matrix(&a.matrix)?, f),
        Command::Verify { suite, matrix, seed, window, cases } => {
            let m = matrix.as_deref().map(load_matrix).transpose()?;
            let cfg = SuiteConfig { seed: *seed, cases: *cases, window: *window, full_corpus: false };
            Ok(verify(*suite, m.as_ref(), &cfg, f))
        }
        Command::Frobenius { m, prime, precision, check_duality } => {
            frobenius(&load_matrix(&m.matrix)?, *prime, *precision, *check_duality, f)
        }
    }
}

fn tuple<T: ToString>(xs: impl IntoIterator<Item = T>) -> String {
    format!("({})", xs.into_iter().map(|x| x.to_string()).collect::<Vec<_>>().join(","))
}

fn csv_string(header: &[&str], rows: impl IntoIterator<Item = Vec<String>>) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header).expect("in-memory csv");
    for r in rows {
        w.write_record(&r).expect("in-memory csv");
    }
    String::from_utf8(w.into_inner().expect("in-memory csv")).expect("utf8 csv")
}

fn to_json<T: Serialize>(v: &T) -> String {
    serde_json::to_string_pretty(v).expect("serializable report") + "\n"
}

/// Left-aligned columns separated by two spaces.
fn pretty_table(header: &[&str], rows: &[Vec<String>]) -> String {
    let width = |k: usize| {
        rows.iter().map(|r| r[k].chars().count()).chain([header[k].chars().count()]).max().unwrap_or(0)
    };
    let widths: Vec<usize> = (0..header.len()).map(width).collect();
    let line = |cells: Vec<&str>| {
        let padded: Vec<String> =
            cells.iter().zip(&widths).map(|(c, w)| format!("{c:<w$}", w = *w)).collect();
        padded.join("  ").trim_end().to_string() + "\n"
    };
    let mut out = line(header.to_vec());
    for r in rows {
        out += &line(r.iter().map(String::as_str).collect());
    }
    out
}

fn classify(m: &BHMatrix, f: Format) -> Result<Outcome, CliError> {
    let atoms: Vec<String> = m.decomposition().atoms.iter().map(|a| a.to_string()).collect();
    let q: Vec<String> = m.weights().iter().map(fmt_q).collect();
    let text = match f {
        Format::Pretty => format!("{}, det={}, q={}\n", atoms.join(" + "), m.det(), tuple(&q)),
        Format::Json => to_json(&json!({
            "matrix": m.entries(),
            "atoms": atoms,
            "permutation": m.decomposition().permutation,
            "det": m.det(),
            "weights": q,
        })),
        Format::Csv => csv_string(&["atoms", "det", "weights"], [vec![atoms.join(" + "), m.det().to_string(), tuple(&q)]]),
    };
    Ok(Outcome::ok(text, true))
}

fn sector_cells(s: &Sector) -> Vec<String> {
    vec![tuple(&s.lambda), tuple(s.charges.iter().map(fmt_q))]
}

fn group(m: &BHMatrix, f: Format) -> Outcome {
    let t = m.transpose();
    let (ga, gt) = (m.group_elements(), t.group_elements());
    let text = match f {
        Format::Pretty => {
            let block = |title: &str, col: &str, g: &[Sector]| {
                let rows: Vec<Vec<String>> = g.iter().map(sector_cells).collect();
                format!("{title} ({} elements)\n{}", g.len(), pretty_table(&["lambda", col], &rows))
            };
            block("G_A", "lambda A^-T", &ga) + "\n" + &block("G_{A^T}", "lambda A^-1", &gt)
        }
        Format::Json => {
            let rows = |g: &[Sector]| {
                g.iter()
                    .map(|s| json!({"lambda": s.lambda, "charges": s.charges.iter().map(fmt_q).collect::<Vec<_>>()}))
                    .collect::<Vec<_>>()
            };
            to_json(&json!({"group": rows(&ga), "dual_group": rows(&gt)}))
        }
        Format::Csv => {
            let rows = ga
                .iter()
                .map(|s| ("A", s))
                .chain(gt.iter().map(|s| ("AT", s)))
                .map(|(side, s)| [vec![side.to_string()], sector_cells(s)].concat());
            csv_string(&["side", "lambda", "charges"], rows)
        }
    };
    Outcome::ok(text, true)
}

fn row_cells(r: &TableRow) -> Vec<String> {
    vec![r.monomial.clone(), r.total.to_string(), r.half_sharp.clone()]
}

fn basis(m: &BHMatrix, f: Format) -> Outcome {
    let b = orbifold_basis(m);
    let table = b.table();
    let text = match f {
        Format::Pretty => {
            let rows: Vec<Vec<String>> = table.iter().map(row_cells).collect();
            format!("C_A ({} elements)\n", b.len()) + &pretty_table(&["monomial", "Q+Q^v", "(#-#^v)/2"], &rows)
        }
        Format::Json => {
            let rows: Vec<_> = b
                .entries
                .iter()
                .zip(&table)
                .map(|(e, r)| {
                    json!({
                        "monomial": e.mono,
                        "total": r.total,
                        "half_sharp": r.half_sharp,
                        "gradings": e.gradings,
                    })
                })
                .collect();
            to_json(&json!({"matrix": m.entries(), "basis": rows}))
        }
        Format::Csv => csv_string(&["monomial", "total", "half_sharp"], table.iter().map(row_cells)),
    };
    Outcome::ok(text, true)
}

fn pair_cells(p: &DualPair) -> Vec<String> {
    let target = match (&p.target, &p.constant) {
        (Some(t), Some(c)) => [row_cells(t), vec![c.to_string()]].concat(),
        _ => {
            let terms: Vec<String> = p.image.iter().map(|t| format!("({})·{}", t.coefficient, t.monomial)).collect();
            vec![terms.join(" + "), String::new(), String::new(), String::new()]
        }
    };
    [row_cells(&p.source), target].concat()
}

fn dual(m: &BHMatrix, f: Format) -> Result<Outcome, CliError> {
    let d = duality_matrix(m)?;
    let back = duality_matrix(&m.transpose())?;
    let pairs = d.pairs();
    let invertible = d.inverts_with(&back);
    let header = ["C_A", "Q+Q^v", "(#-#^v)/2", "C_{A^T}", "Q+Q^v", "(#-#^v)/2", "constant"];
    let text = match f {
        Format::Pretty => {
            let rows: Vec<Vec<String>> = pairs.iter().map(pair_cells).collect();
            pretty_table(&header, &rows)
        }
        Format::Json => to_json(&json!({"pairs": pairs, "invertible": invertible})),
        Format::Csv => csv_string(
            &["source", "source_total", "source_half_sharp", "target", "target_total", "target_half_sharp", "constant"],
            pairs.iter().map(pair_cells),
        ),
    };
    Ok(Outcome::ok(text, invertible))
}

fn verify(suite: Suite, m: Option<&BHMatrix>, cfg: &SuiteConfig, f: Format) -> Outcome {
    let report = run_suite(suite, m, cfg);
    // quasiiso on a single matrix also shows the per-sector ranks
    let detail = match (suite, m) {
        (Suite::Quasiiso, Some(m)) => verify_quasi_iso(m, cfg.window.unwrap_or_else(|| default_window(m))).ok(),
        _ => None,
    };
    let text = match f {
        Format::Pretty => {
            let mut s = suite_line(&report);
            if let Some(d) = &detail {
                for r in &d.sectors {
                    s += &format!(
                        "  lambda={} ranks B={} C={} milnor={}\n",
                        tuple(&r.lambda),
                        tuple(&r.ranks_b),
                        tuple(&r.ranks_c),
                        r.milnor
                    );
                }
                let totals = d.sectors.iter().map(|r| r.ranks_b.iter().sum::<usize>());
                s += &format!("  ranks {} total {} milnor {}\n", tuple(totals), d.total_b, d.total_milnor);
            }
            for fl in report.failures.iter().take(20) {
                s += &format!("  {fl}\n");
            }
            s
        }
        Format::Json => to_json(&json!({"report": report, "detail": detail})),
        Format::Csv => csv_string(
            &["suite", "matrices", "cases", "failures", "pass"],
            [vec![
                suite.to_string(),
                report.matrices.to_string(),
                report.cases.to_string(),
                report.failures.len().to_string(),
                report.pass.to_string(),
            ]],
        ),
    };
    Outcome::ok(text, report.pass)
}

/// `suite chain: 1000 cases over 57 matrices, 0 failures: PASS`
pub fn suite_line(r: &SuiteReport) -> String {
    format!(
        "suite {}: {} cases over {} matrices, {} failures: {}\n",
        r.suite,
        r.cases,
        r.matrices,
        r.failures.len(),
        if r.pass { "PASS" } else { "FAIL" }
    )
}

fn entry_cells(e: &FrobEntryReport) -> Vec<String> {
    let digits: Vec<String> = e.pi_digits.iter().map(|d| d.to_string()).collect();
    vec![
        e.row.clone(),
        e.col.clone(),
        e.sigma_power.to_string(),
        e.valuation.to_string(),
        digits.join(" "),
        e.certified_prec.to_string(),
    ]
}

fn frobenius(m: &BHMatrix, p: u64, precision: Option<i64>, check: bool, f: Format) -> Result<Outcome, CliError> {
    let prec = precision.unwrap_or(2 * (p as i64 - 1));
    if prec < p as i64 - 1 {
        return Err(CliError::Domain(format!("precision {prec} is below p-1 = {}", p - 1)));
    }
    let fm = tfr_matrix(m, p, prec)?;
    let entries = fm.report();
    let comm = if check { Some(verify_commutation(m, p, prec)?) } else { None };
    let pass = comm.as_ref().is_none_or(|c| c.pass);
    let header = ["row", "col", "sigma", "valuation", "pi-digits", "certified"];
    let text = match f {
        Format::Pretty => {
            let rows: Vec<Vec<String>> = entries.iter().map(entry_cells).collect();
            let mut s = format!(
                "TFr p={p} prec={prec} certified={} diagonal={}\n",
                fm.certified_prec(),
                fm.is_diagonal()
            );
            s += &pretty_table(&header, &rows);
            if let Some(c) = &comm {
                let v = c.min_valuation.map_or("none".to_string(), |v| v.to_string());
                s += &format!(
                    "commutation: min valuation {v}, certified {}: {}\n",
                    c.certified_prec,
                    if c.pass { "PASS" } else { "FAIL" }
                );
            }
            s
        }
        Format::Json => to_json(&json!({
            "p": p,
            "precision": prec,
            "certified_prec": fm.certified_prec(),
            "diagonal": fm.is_diagonal(),
            "entries": entries,
            "commutation": comm,
        })),
        Format::Csv => csv_string(&header, entries.iter().map(entry_cells)),
    };
    Ok(Outcome::ok(text, pass))
}
