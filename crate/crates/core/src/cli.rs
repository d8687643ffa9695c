//! Command-line front end. `run` holds all the logic so tests can drive it
//! with in-memory streams; `main` only forwards the process arguments.

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::fs;
use std::io::{self, IsTerminal, Write};
use std::path::PathBuf;

use clap::{Parser, Subcommand};
use serde::Serialize;
use serde_json::json;

use crate::bpd::{Bpd, GridJson};
use crate::degree::{corollary_bridge, psw_degree, rrw_decomposition, PINNED_INTERPRETATION};
use crate::error::{Error, Result};
use crate::moves::{brute_force_pipes_bounded, enumerate_pipes, DEFAULT_ORACLE_BOUND};
use crate::permutation::{Code, Permutation};
use crate::polynomial::{
    groth_bpd, groth_oracle, schubert_bpd, schubert_oracle, Exponent, SparsePoly,
};
use crate::support::{
    check, leading_exponent_formula, lex_last_exponent, sweep, sweep_with, Property, Report,
    Status, Subject, SweepOptions,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VIOLATION: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Parser, Debug)]
#[command(
    name = "pipedream",
    version,
    about = "Bumpless pipe dreams, Grothendieck polynomials and their degree and support"
)]
struct Cli {
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Worker threads for sweeps.
    #[arg(long, global = true, default_value_t = 1, value_parser = clap::value_parser!(u16).range(1..))]
    threads: u16,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Count (and optionally print) the pipe dreams of a permutation.
    Pipes {
        perm: Permutation,
        /// Print every pipe dream.
        #[arg(long)]
        show: bool,
        /// Cross-check against exhaustive tiling.
        #[arg(long)]
        oracle: bool,
        /// Largest n the exhaustive tiler accepts.
        #[arg(long, default_value_t = DEFAULT_ORACLE_BOUND)]
        bound: usize,
    },
    /// Grothendieck polynomial.
    Groth {
        perm: Permutation,
        /// Use the divided-difference recursion instead of pipe dreams.
        #[arg(long)]
        oracle: bool,
    },
    /// Schubert polynomial.
    Schubert {
        perm: Permutation,
        /// Use the divided-difference recursion instead of pipe dreams.
        #[arg(long)]
        oracle: bool,
    },
    /// Length, codes and degree formulas.
    Degree { perm: Permutation },
    /// Predicted and actual leading exponents of each homogeneous component.
    Leading {
        perm: Permutation,
        /// Only this degree.
        #[arg(long)]
        k: Option<usize>,
    },
    /// Check one property over every permutation of S_n.
    Verify {
        property: Property,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        vexillary_only: bool,
    },
    /// Check the open support, elbow and leading-term statements over S_n.
    ScanConjectures {
        #[arg(long)]
        n: usize,
        /// Write one JSON record per permutation to this file.
        #[arg(long)]
        manifest: Option<PathBuf>,
    },
    /// Draw a pipe dream: the Rothe pipe dream of a permutation or one read
    /// from a file (ASCII rows or JSON).
    Render {
        #[arg(required_unless_present = "file", conflicts_with = "file")]
        perm: Option<Permutation>,
        #[arg(long)]
        file: Option<PathBuf>,
        /// Replace redundant crossings by bumps.
        #[arg(long)]
        resolved: bool,
    },
}

/// Statements checked by `scan-conjectures`, each proven for vexillary
/// permutations and open in general.
pub const CONJECTURE_SCAN: [Property; 4] = [
    Property::UpByOne,
    Property::Interval,
    Property::ElbowBound,
    Property::Leading,
];

struct Ctx<'a> {
    out: &'a mut dyn Write,
    json: bool,
    threads: usize,
}

impl Ctx<'_> {
    fn json<T: Serialize>(&mut self, value: &T) -> Result<()> {
        let text = serde_json::to_string_pretty(value).map_err(|e| Error::Json(e.to_string()))?;
        self.line(&text)
    }

    fn line(&mut self, text: &str) -> Result<()> {
        writeln!(self.out, "{text}").map_err(io_error)
    }
}

fn io_error(e: io::Error) -> Error {
    Error::Io(e.to_string())
}

/// Parses `args` (program name first), runs the command and returns the
/// exit status.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            if e.use_stderr() {
                let _ = write!(err, "{}", e.render());
                return EXIT_USAGE;
            }
            let _ = write!(out, "{}", e.render());
            return EXIT_OK;
        }
    };
    let mut ctx = Ctx {
        out,
        json: cli.json,
        threads: cli.threads as usize,
    };
    match dispatch(cli.command, &mut ctx) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_USAGE
        }
    }
}

fn dispatch(command: Command, ctx: &mut Ctx) -> Result<i32> {
    match command {
        Command::Pipes {
            perm,
            show,
            oracle,
            bound,
        } => pipes(ctx, &perm, show, oracle, bound),
        Command::Groth { perm, oracle } => {
            let f = if oracle {
                groth_oracle(&perm)
            } else {
                groth_bpd(&perm)
            };
            polynomial(ctx, &perm, &f)
        }
        Command::Schubert { perm, oracle } => {
            let f = if oracle {
                schubert_oracle(&perm)
            } else {
                schubert_bpd(&perm)
            };
            polynomial(ctx, &perm, &f)
        }
        Command::Degree { perm } => degree(ctx, &perm),
        Command::Leading { perm, k } => leading(ctx, &perm, k),
        Command::Verify {
            property,
            n,
            vexillary_only,
        } => verify(ctx, property, n, vexillary_only),
        Command::ScanConjectures { n, manifest } => scan(ctx, n, manifest),
        Command::Render {
            perm,
            file,
            resolved,
        } => render(ctx, perm, file, resolved),
    }
}

fn join(values: &[usize]) -> String {
    values
        .iter()
        .map(usize::to_string)
        .collect::<Vec<_>>()
        .join(",")
}

fn fmt_code(c: &Code) -> String {
    join(c.entries())
}

fn fmt_exp(e: &Exponent) -> String {
    let parts: Vec<String> = e.as_slice().iter().map(u32::to_string).collect();
    format!("({})", parts.join(","))
}

fn pipes(ctx: &mut Ctx, p: &Permutation, show: bool, oracle: bool, bound: usize) -> Result<i32> {
    let all = enumerate_pipes(p);
    let check = if oracle {
        let mut brute = brute_force_pipes_bounded(p, bound)?;
        brute.sort();
        Some((brute.len(), brute == all))
    } else {
        None
    };
    let code = match check {
        Some((_, false)) => EXIT_VIOLATION,
        _ => EXIT_OK,
    };
    if ctx.json {
        let mut v = json!({
            "permutation": p,
            "count": all.len(),
            "reduced": all.iter().filter(|b| b.is_reduced()).count(),
        });
        if show {
            v["bpds"] = json!(all.iter().map(Bpd::to_json).collect::<Vec<GridJson>>());
        }
        if let Some((count, matches)) = check {
            v["oracle"] = json!({ "count": count, "matches": matches });
        }
        ctx.json(&v)?;
        return Ok(code);
    }
    ctx.line(&format!("permutation: {p}"))?;
    ctx.line(&format!("count: {}", all.len()))?;
    ctx.line(&format!(
        "reduced: {}",
        all.iter().filter(|b| b.is_reduced()).count()
    ))?;
    if let Some((count, matches)) = check {
        let verdict = if matches { "match" } else { "MISMATCH" };
        ctx.line(&format!("oracle: {count} ({verdict})"))?;
    }
    if show {
        for b in &all {
            ctx.line("")?;
            ctx.line(b.render_ascii().trim_end())?;
        }
    }
    Ok(code)
}

fn polynomial(ctx: &mut Ctx, p: &Permutation, f: &SparsePoly) -> Result<i32> {
    if ctx.json {
        ctx.json(&json!({
            "permutation": p,
            "degree": f.degree(),
            "terms": f.to_json(),
        }))?;
    } else {
        ctx.line(&f.to_string())?;
    }
    Ok(EXIT_OK)
}

fn degree(ctx: &mut Ctx, p: &Permutation) -> Result<i32> {
    let lehmer = p.lehmer_code();
    let rajchgot = p.rajchgot_code();
    let psw = psw_degree(p);
    let rrw = if p.is_vexillary() {
        Some((
            rrw_decomposition(p)?,
            corollary_bridge(p, PINNED_INTERPRETATION)?,
        ))
    } else {
        None
    };
    if ctx.json {
        let mut v = json!({
            "permutation": p,
            "length": p.length(),
            "lehmer": lehmer,
            "rajchgot": rajchgot,
            "psw": psw,
            "vexillary": p.is_vexillary(),
        });
        if let Some((d, bridge)) = &rrw {
            v["rrw"] = json!(d);
            v["rank_bridge"] = json!(bridge);
        }
        ctx.json(&v)?;
        return Ok(EXIT_OK);
    }
    ctx.line(&format!("permutation: {p}"))?;
    ctx.line(&format!("length: {}", p.length()))?;
    ctx.line(&format!("lehmer: {}", fmt_code(&lehmer)))?;
    ctx.line(&format!("rajchgot: {}", fmt_code(&rajchgot)))?;
    ctx.line(&format!("psw: {psw}"))?;
    match &rrw {
        Some((d, bridge)) => {
            let last = d.rho.iter().rposition(|&r| r > 0).map_or(0, |i| i + 1);
            let terms: Vec<String> = d.rho[..last].iter().map(usize::to_string).collect();
            let sum = if terms.is_empty() {
                "0".to_string()
            } else {
                terms.join("+")
            };
            ctx.line(&format!("rrw: {} + ({sum}) = {}", d.length, d.total))?;
            ctx.line(&format!("rho_a: {}", join(&d.rho)))?;
            ctx.line(&format!(
                "rank bridge ({}): {}",
                serde_json::to_value(bridge.interpretation)
                    .unwrap()
                    .as_str()
                    .unwrap(),
                if bridge.holds { "holds" } else { "fails" }
            ))?;
        }
        None => ctx.line("rrw: not vexillary")?,
    }
    Ok(EXIT_OK)
}

#[derive(Serialize)]
struct LeadingRow {
    k: usize,
    formula: Exponent,
    actual: Option<Exponent>,
    matches: bool,
}

fn leading(ctx: &mut Ctx, p: &Permutation, only: Option<usize>) -> Result<i32> {
    let low = p.length();
    let high = psw_degree(p);
    let degrees = match only {
        Some(k) => {
            leading_exponent_formula(p, k)?;
            k..=k
        }
        None => low..=high,
    };
    let f = groth_bpd(p);
    let rows: Vec<LeadingRow> = degrees
        .map(|k| {
            let formula = leading_exponent_formula(p, k).expect("k in range");
            let actual = lex_last_exponent(&f, k).ok();
            LeadingRow {
                k,
                matches: actual.as_ref() == Some(&formula),
                formula,
                actual,
            }
        })
        .collect();
    let code = if rows.iter().all(|r| r.matches) {
        EXIT_OK
    } else {
        EXIT_VIOLATION
    };
    if ctx.json {
        ctx.json(&json!({
            "permutation": p,
            "vexillary": p.is_vexillary(),
            "degrees": rows,
        }))?;
        return Ok(code);
    }
    for r in &rows {
        let actual = r.actual.as_ref().map_or("-".to_string(), fmt_exp);
        ctx.line(&format!(
            "k={}: formula {} actual {} {}",
            r.k,
            fmt_exp(&r.formula),
            actual,
            if r.matches { "ok" } else { "MISMATCH" }
        ))?;
    }
    Ok(code)
}

fn progress_sink() -> impl Fn(usize, usize) + Sync {
    let live = io::stderr().is_terminal();
    move |done, total| {
        if live && (done == total || done % 64 == 0) {
            eprint!("\r{done}/{total}");
            if done == total {
                eprintln!();
            }
        }
    }
}

#[derive(Serialize, Default)]
struct Tally {
    permutations: usize,
    pass: usize,
    fail: usize,
    skipped: usize,
}

impl Tally {
    fn add(&mut self, r: &Report) {
        self.permutations += 1;
        match r.status {
            Status::Pass => self.pass += 1,
            Status::Fail => self.fail += 1,
            Status::Skipped => self.skipped += 1,
        }
    }
}

fn verify(ctx: &mut Ctx, property: Property, n: usize, vexillary_only: bool) -> Result<i32> {
    let opts = SweepOptions {
        n,
        vexillary_only,
        threads: ctx.threads,
    };
    let reports = sweep(property, opts, &progress_sink())?;
    let mut tally = Tally::default();
    reports.iter().for_each(|r| tally.add(r));
    let code = if tally.fail == 0 {
        EXIT_OK
    } else {
        EXIT_VIOLATION
    };
    if ctx.json {
        ctx.json(&json!({
            "property": property,
            "n": n,
            "vexillary_only": vexillary_only,
            "summary": tally,
            "reports": reports,
        }))?;
        return Ok(code);
    }
    for r in reports.iter().filter(|r| r.status == Status::Fail) {
        for v in &r.violations {
            ctx.line(&format!("FAIL {}: {}", r.permutation, v.detail))?;
            if let Some(grid) = &v.bpd {
                ctx.line(grid.trim_end())?;
            }
        }
    }
    ctx.line(&format!(
        "{property} on S_{n}{}: {} checked, {} pass, {} fail, {} skipped",
        if vexillary_only { " (vexillary)" } else { "" },
        tally.permutations,
        tally.pass,
        tally.fail,
        tally.skipped
    ))?;
    Ok(code)
}

#[derive(Serialize)]
struct ScanRecord {
    permutation: Permutation,
    vexillary: bool,
    results: BTreeMap<Property, Status>,
    violations: Vec<Report>,
}

fn scan(ctx: &mut Ctx, n: usize, manifest: Option<PathBuf>) -> Result<i32> {
    let opts = SweepOptions {
        n,
        vexillary_only: false,
        threads: ctx.threads,
    };
    let records = sweep_with(
        opts,
        |p| {
            let s = Subject::new(p.clone());
            let reports: Vec<Report> = CONJECTURE_SCAN
                .iter()
                .map(|&prop| check(prop, &s))
                .collect();
            ScanRecord {
                permutation: p.clone(),
                vexillary: p.is_vexillary(),
                results: reports.iter().map(|r| (r.property, r.status)).collect(),
                violations: reports
                    .into_iter()
                    .filter(|r| r.status == Status::Fail)
                    .collect(),
            }
        },
        &progress_sink(),
    )?;
    if let Some(path) = &manifest {
        let mut text = String::new();
        for r in &records {
            text.push_str(&serde_json::to_string(r).map_err(|e| Error::Json(e.to_string()))?);
            text.push('\n');
        }
        fs::write(path, text).map_err(io_error)?;
    }
    let mut summary: BTreeMap<Property, Tally> = BTreeMap::new();
    let mut open: BTreeMap<Property, Tally> = BTreeMap::new();
    for r in &records {
        for (&prop, &status) in &r.results {
            let count = |t: &mut Tally| {
                t.permutations += 1;
                match status {
                    Status::Pass => t.pass += 1,
                    Status::Fail => t.fail += 1,
                    Status::Skipped => t.skipped += 1,
                }
            };
            count(summary.entry(prop).or_default());
            if !r.vexillary {
                count(open.entry(prop).or_default());
            }
        }
    }
    let failures = summary.values().map(|t| t.fail).sum::<usize>();
    let code = if failures == 0 {
        EXIT_OK
    } else {
        EXIT_VIOLATION
    };
    if ctx.json {
        ctx.json(&json!({
            "n": n,
            "permutations": records.len(),
            "summary": summary,
            "non_vexillary": open,
            "counterexamples": records
                .iter()
                .filter(|r| !r.violations.is_empty())
                .collect::<Vec<_>>(),
        }))?;
        return Ok(code);
    }
    for r in records.iter().filter(|r| !r.violations.is_empty()) {
        for rep in &r.violations {
            for v in &rep.violations {
                ctx.line(&format!(
                    "COUNTEREXAMPLE {} {}: {}",
                    rep.property, r.permutation, v.detail
                ))?;
            }
        }
    }
    for (prop, t) in &summary {
        let o = &open[prop];
        ctx.line(&format!(
            "{prop}: {} pass, {} fail ({} non-vexillary, {} of them fail)",
            t.pass, t.fail, o.permutations, o.fail
        ))?;
    }
    if let Some(path) = manifest {
        ctx.line(&format!("manifest: {}", path.display()))?;
    }
    Ok(code)
}

fn render(
    ctx: &mut Ctx,
    perm: Option<Permutation>,
    file: Option<PathBuf>,
    resolved: bool,
) -> Result<i32> {
    let b = match (perm, file) {
        (Some(p), _) => Bpd::rothe(&p),
        (None, Some(path)) => {
            let text = fs::read_to_string(&path).map_err(io_error)?;
            if text.trim_start().starts_with('{') {
                Bpd::from_json(&text)?
            } else {
                Bpd::parse_ascii(&text)?
            }
        }
        (None, None) => unreachable!("clap requires one source"),
    };
    let trace = b.trace();
    let grid = if resolved {
        trace.resolved.clone()
    } else {
        b.grid().clone()
    };
    let p = b.permutation_of();
    if ctx.json {
        ctx.json(&json!({
            "permutation": p,
            "reduced": trace.bumps == 0,
            "bumps": trace.bumps,
            "grid": GridJson { n: grid.n(), rows: grid.rows() },
        }))?;
    } else {
        ctx.line(grid.to_ascii().trim_end())?;
        ctx.line(&format!("permutation: {p}"))?;
        ctx.line(&format!("reduced: {}", trace.bumps == 0))?;
    }
    Ok(EXIT_OK)
}
