//! `kshape`: enumerate pistols and irreducible k-shapes, map between them,
//! compute statistics and polynomials, and run the verification suites.
//!
//! `--k` always names the shape side: pistols have height `k - 1`, and every
//! record carries both numbers. For `poly`, `--k` is the polynomial index.

use std::io::{self, BufRead, BufWriter, Write};
use std::process::ExitCode;

use anyhow::Context;
use clap::{Parser, Subcommand, ValueEnum};
use kshape_core::bijection::{phi_classified, varphi_trace};
use kshape_core::pistol::{self, ProminentRule};
use kshape_core::poly::{self, Weighting};
use kshape_core::shape::render_hooks;
use kshape_core::verify::{self, Suite};
use kshape_core::{
    classify_sites, point_stats, shape_stats, Error, MultiPoly, PartialKShape, Partition, Pistol,
};
use serde_json::{json, Value};

#[derive(Parser)]
#[command(
    name = "kshape",
    version,
    about = "Surjective pistols and irreducible k-shapes"
)]
struct Cli {
    /// Reserved; accepted and ignored. Every command is deterministic.
    #[arg(long, global = true)]
    seed: Option<u64>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Pistols of height k - 1, one JSON record per line.
    Pistols {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        stats: bool,
    },
    /// Irreducible k-shapes, as images of the pistols of height k - 1.
    Shapes {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        stats: bool,
    },
    /// Maps JSON lines from stdin through the bijection or its inverse.
    Map {
        #[arg(long, value_enum)]
        dir: Direction,
        #[arg(long)]
        k: usize,
    },
    /// Adds statistics to JSON lines read from stdin.
    Stats {
        #[arg(long, value_enum)]
        kind: Kind,
        #[arg(long)]
        k: usize,
    },
    /// Polynomial families, from their recursion or as combinatorial sums.
    Poly {
        #[arg(long, value_enum)]
        family: Family,
        #[arg(long)]
        k: usize,
        #[arg(long, value_enum, default_value_t = Source::Recursion)]
        source: Source,
        /// Third variable of the Dumont-Foata sum over pistols.
        #[arg(long, value_enum, default_value_t = Statistic::Sur)]
        statistic: Statistic,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Runs verification suites and prints a pass/fail table.
    Verify {
        #[arg(long)]
        k: usize,
        #[arg(long, value_enum, default_value_t = SuiteArg::All)]
        suite: SuiteArg,
        /// Also run the box enumeration at k = 5.
        #[arg(long)]
        deep: bool,
    },
    /// ASCII diagrams of objects read from stdin.
    Render {
        #[arg(long, value_enum)]
        kind: RenderKind,
        /// For shapes, blank out cells with hook length above k.
        #[arg(long)]
        k: Option<usize>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Direction {
    /// shape -> pistol
    Phi,
    /// pistol -> shape
    Varphi,
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    Pistol,
    Shape,
}

#[derive(Clone, Copy, ValueEnum)]
enum RenderKind {
    Pistol,
    Shape,
    Partial,
}

#[derive(Clone, Copy, ValueEnum)]
enum Family {
    Gandhi,
    Genocchi,
    DumontFoata,
    Gamma,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Source {
    Recursion,
    Pistols,
    Shapes,
}

#[derive(Clone, Copy, ValueEnum)]
enum Statistic {
    Sur,
    Pro,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum SuiteArg {
    All,
    Counts,
    Bijection,
    Theorems,
    Conjecture,
    Confluence,
}

impl From<SuiteArg> for Suite {
    fn from(s: SuiteArg) -> Suite {
        match s {
            SuiteArg::All => Suite::All,
            SuiteArg::Counts => Suite::Counts,
            SuiteArg::Bijection => Suite::Bijection,
            SuiteArg::Theorems => Suite::Theorems,
            SuiteArg::Conjecture => Suite::Conjecture,
            SuiteArg::Confluence => Suite::Confluence,
        }
    }
}

/// Bad arguments. Reported with exit code 2.
#[derive(Debug)]
struct Usage(String);

impl std::fmt::Display for Usage {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for Usage {}

fn usage(msg: impl Into<String>) -> anyhow::Error {
    Usage(msg.into()).into()
}

/// Errors raised while checking arguments count as usage errors.
fn arg_error(e: Error) -> anyhow::Error {
    match e {
        Error::Domain(_) | Error::Precondition(_) | Error::Budget(_) => usage(e.to_string()),
        other => other.into(),
    }
}

fn shape_side(k: usize) -> anyhow::Result<usize> {
    if k < 2 {
        return Err(usage(format!("--k must be at least 2 (got {k})")));
    }
    Ok(k)
}

/// Free-site vector and z sequence. Both are empty for k = 2.
fn shape_vectors(p: &Partition, k: usize) -> kshape_core::Result<(Vec<u8>, Vec<usize>)> {
    if k < 3 {
        return Ok((Vec::new(), Vec::new()));
    }
    let s = shape_stats(p, k)?;
    Ok((s.fr_vector, s.z))
}

fn pistol_record(f: &Pistol, k: usize, stats: bool) -> Value {
    let mut rec = json!({ "k": k, "height": f.height(), "values": f.values() });
    if stats {
        rec["stats"] = json!(point_stats(f));
    }
    rec
}

fn shape_record(p: &Partition, k: usize, stats: bool) -> kshape_core::Result<Value> {
    let mut rec = json!({ "k": k, "height": k - 1, "parts": p.parts() });
    if stats {
        if k >= 3 {
            rec["stats"] = json!(shape_stats(p, k)?);
            rec["sites"] = json!(classify_sites(p, k)?);
        } else {
            rec["stats"] = Value::Null;
            rec["sites"] = Value::Null;
        }
    }
    Ok(rec)
}

fn emit(out: &mut impl Write, rec: &Value) -> io::Result<()> {
    serde_json::to_writer(&mut *out, rec)?;
    out.write_all(b"\n")
}

fn pistol_of_height(line: &str, k: usize) -> anyhow::Result<Pistol> {
    let f: Pistol = serde_json::from_str(line).context("expected a pistol record")?;
    if f.height() != k - 1 {
        anyhow::bail!(
            "pistol has height {}, expected {} for k = {k}",
            f.height(),
            k - 1
        );
    }
    Ok(f)
}

fn map_line(line: &str, dir: Direction, k: usize) -> anyhow::Result<Value> {
    match dir {
        Direction::Varphi => {
            let f = pistol_of_height(line, k)?;
            let trace = varphi_trace(&f)?;
            let (fr, _) = shape_vectors(&trace.shape, k)?;
            Ok(json!({
                "k": k,
                "height": k - 1,
                "input": f,
                "parts": trace.shape.parts(),
                "z": trace.z,
                "fix_vector": f.fix_vector(),
                "fr_vector": fr,
            }))
        }
        Direction::Phi => {
            let p: Partition = serde_json::from_str(line).context("expected a partition record")?;
            let (f, _) = phi_classified(&p, k)?;
            let (fr, z) = shape_vectors(&p, k)?;
            Ok(json!({
                "k": k,
                "height": k - 1,
                "input": p,
                "values": f.values(),
                "z": z,
                "fix_vector": f.fix_vector(),
                "fr_vector": fr,
            }))
        }
    }
}

fn stats_line(line: &str, kind: Kind, k: usize) -> anyhow::Result<Value> {
    match kind {
        Kind::Pistol => Ok(pistol_record(&pistol_of_height(line, k)?, k, true)),
        Kind::Shape => {
            let p: Partition = serde_json::from_str(line).context("expected a partition record")?;
            Ok(shape_record(&p, k, true)?)
        }
    }
}

fn render_line(line: &str, kind: RenderKind, k: Option<usize>) -> anyhow::Result<String> {
    Ok(match kind {
        RenderKind::Pistol => {
            let f: Pistol = serde_json::from_str(line).context("expected a pistol record")?;
            format!("{f}\n{}", f.render())
        }
        RenderKind::Shape => {
            let p: Partition = serde_json::from_str(line).context("expected a partition record")?;
            format!("{p}\n{}", render_hooks(&p, k))
        }
        RenderKind::Partial => {
            let s: PartialKShape =
                serde_json::from_str(line).context("expected a partial k-shape record")?;
            format!("{s}\n{}", s.render())
        }
    })
}

/// Applies `step` to every non-blank stdin line. Failing lines produce an
/// error record on stderr; returns whether any line failed.
fn each_line(
    out: &mut impl Write,
    mut step: impl FnMut(&str) -> anyhow::Result<String>,
) -> anyhow::Result<bool> {
    let mut failed = false;
    for (n, line) in io::stdin().lock().lines().enumerate() {
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        match step(&line) {
            Ok(text) => out.write_all(text.as_bytes())?,
            Err(e) => {
                failed = true;
                let rec = json!({ "line": n + 1, "error": format!("{e:#}"), "input": line });
                eprintln!("{rec}");
            }
        }
    }
    Ok(failed)
}

fn json_line(rec: anyhow::Result<Value>) -> anyhow::Result<String> {
    Ok(format!("{}\n", rec?))
}

enum PolyValue {
    Number(String),
    Poly(MultiPoly),
}

fn poly_output(
    family: Family,
    k: usize,
    source: Source,
    statistic: Statistic,
) -> anyhow::Result<PolyValue> {
    use PolyValue::{Number, Poly};
    let poly = |p: kshape_core::Result<MultiPoly>| p.map(Poly).map_err(arg_error);
    match (family, source) {
        (Family::Gandhi, Source::Recursion) => poly(poly::gandhi(k)),
        (Family::Gandhi, Source::Pistols) => poly(poly::poly_from_pistols(k, Weighting::Gandhi)),
        (Family::Genocchi, Source::Recursion) => {
            Ok(Number(poly::genocchi(k).map_err(arg_error)?.to_string()))
        }
        (Family::Genocchi, Source::Pistols) => Ok(Number(
            pistol::enumerate(shape_side(k)? - 1).count().to_string(),
        )),
        (Family::DumontFoata, Source::Recursion) => poly(poly::dumont_foata(k)),
        (Family::DumontFoata, Source::Pistols) => poly(match statistic {
            Statistic::Sur => poly::poly_from_pistols(k, Weighting::DfSur),
            Statistic::Pro => poly::poly_df_pro_with(k, ProminentRule::DEFAULT),
        }),
        (Family::DumontFoata, Source::Shapes) => poly(poly::poly_from_shapes(k)),
        (Family::Gamma, Source::Recursion) => poly(poly::gamma(k)),
        (Family::Gamma, Source::Pistols) => poly(poly::poly_from_pistols(k, Weighting::Gamma)),
        _ => Err(usage(
            "this --source is not available for the chosen family",
        )),
    }
}

fn run(cli: Cli, out: &mut impl Write) -> anyhow::Result<ExitCode> {
    let mut code = ExitCode::SUCCESS;
    let line_status = |failed: bool| {
        if failed {
            ExitCode::FAILURE
        } else {
            ExitCode::SUCCESS
        }
    };
    match cli.command {
        Command::Pistols { k, stats } => {
            let k = shape_side(k)?;
            for f in pistol::enumerate(k - 1) {
                emit(out, &pistol_record(&f, k, stats))?;
            }
        }
        Command::Shapes { k, stats } => {
            let k = shape_side(k)?;
            for f in pistol::enumerate(k - 1) {
                let shape = varphi_trace(&f)?.shape;
                emit(out, &shape_record(&shape, k, stats)?)?;
            }
        }
        Command::Map { dir, k } => {
            let k = shape_side(k)?;
            code = line_status(each_line(out, |l| json_line(map_line(l, dir, k)))?);
        }
        Command::Stats { kind, k } => {
            let k = shape_side(k)?;
            code = line_status(each_line(out, |l| json_line(stats_line(l, kind, k)))?);
        }
        Command::Poly {
            family,
            k,
            source,
            statistic,
            format,
        } => {
            let value = poly_output(family, k, source, statistic)?;
            let name = family.to_possible_value().map(|v| v.get_name().to_string());
            match (format, value) {
                (Format::Text, PolyValue::Number(n)) => writeln!(out, "{n}")?,
                (Format::Text, PolyValue::Poly(p)) => writeln!(out, "{p}")?,
                (Format::Json, PolyValue::Number(n)) => {
                    emit(out, &json!({ "family": name, "k": k, "value": n }))?
                }
                (Format::Json, PolyValue::Poly(p)) => emit(
                    out,
                    &json!({ "family": name, "k": k, "text": p.to_string(), "poly": p.to_json() }),
                )?,
            }
        }
        Command::Verify { k, suite, deep } => {
            let k = shape_side(k)?;
            let checks = verify::run_suite(k, suite.into(), deep);
            let passed = checks.iter().filter(|c| c.passed).count();
            for c in &checks {
                writeln!(out, "{c}")?;
            }
            writeln!(out, "{passed}/{} checks passed (k = {k})", checks.len())?;
            if passed != checks.len() {
                code = ExitCode::FAILURE;
            }
        }
        Command::Render { kind, k } => {
            code = line_status(each_line(out, |l| {
                render_line(l, kind, k).map(|s| format!("{s}\n"))
            })?);
        }
    }
    out.flush()?;
    Ok(code)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    let stdout = io::stdout();
    let mut out = BufWriter::new(stdout.lock());
    match run(cli, &mut out) {
        Ok(code) => code,
        Err(e)
            if e.downcast_ref::<io::Error>()
                .is_some_and(|io| io.kind() == io::ErrorKind::BrokenPipe) =>
        {
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            if e.downcast_ref::<Usage>().is_some() {
                ExitCode::from(2)
            } else {
                ExitCode::FAILURE
            }
        }
    }
}
