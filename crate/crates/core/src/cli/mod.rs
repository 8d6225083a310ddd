//! The `radsym` command line.

mod verify;

use std::fs;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::dedekind::{dedekind_sum, format_rat};
use crate::error::Error;
use crate::modgroup::{cosets, Cusp, GroupElement, GroupId};
use crate::periods::{period_numeric, torsion_certificate, CertificateStatus, Divisor, PeriodMap};
use crate::symbols::{PrecisionCtx, SymbolValue, Symbols};

pub use verify::{run_suite, SuiteReport, SUITES};

/// Exit status for malformed command lines and inputs.
pub const EXIT_USAGE: i32 = 64;
/// Exit status for domain errors.
pub const EXIT_DOMAIN: i32 = 1;
/// Exit status for precision or reconstruction failures.
pub const EXIT_PRECISION: i32 = 2;

const DEFAULT_DIGITS: u32 = 60;

#[derive(Parser, Debug)]
#[command(name = "radsym", version, about = "Dedekind sums, Rademacher symbols and cuspidal torsion certificates")]
pub struct Cli {
    #[command(flatten)]
    pub opts: GlobalOpts,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct GlobalOpts {
    /// Working precision in decimal digits (at least 30); defaults to $RADSYM_DIGITS or 60.
    #[arg(long, global = true)]
    pub digits: Option<u32>,
    /// Numerical tolerance, in (0, 1e-4].
    #[arg(long, global = true, default_value_t = 1e-8)]
    pub tol: f64,
    /// Denominator bound for rational reconstruction.
    #[arg(long, global = true)]
    pub denominator_bound: Option<BigInt>,
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Shorthand for `--format json`.
    #[arg(long, global = true)]
    pub json: bool,
    /// Worker threads for batch evaluation (0 = all cores).
    #[arg(long, global = true, default_value_t = 0)]
    pub workers: usize,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Args, Debug, Clone)]
pub struct GroupArgs {
    /// sl2z, gamma, gamma0, gamma1 or gamma0+.
    #[arg(long, default_value = "sl2z")]
    pub group: String,
    #[arg(long, default_value_t = 1)]
    pub level: u64,
}

impl GroupArgs {
    fn id(&self) -> Result<GroupId, Failure> {
        GroupId::parse(&self.group, self.level).map_err(Failure::from)
    }
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Dedekind sum s(a, c).
    Sum {
        #[arg(allow_negative_numbers = true)]
        a: BigInt,
        c: BigInt,
    },
    /// Rademacher symbol Ψ (or Dedekind symbol Φ) of matrices.
    Symbol {
        #[command(flatten)]
        group: GroupArgs,
        #[arg(long, default_value = "inf")]
        cusp: String,
        /// Matrix "a,b,c,d".
        #[arg(long, allow_hyphen_values = true)]
        matrix: Option<String>,
        /// File with one matrix per line.
        #[arg(long)]
        input: Option<PathBuf>,
        /// Report Φ instead of Ψ.
        #[arg(long)]
        phi: bool,
    },
    /// Period of a divisor (or Ψ on SL2(Z)), optionally by quadrature.
    Period {
        #[command(flatten)]
        group: GroupArgs,
        /// Divisor "cusp:mult,...", required off SL2(Z).
        #[arg(long, allow_hyphen_values = true)]
        divisor: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        matrix: Option<String>,
        #[arg(long)]
        input: Option<PathBuf>,
        /// Also integrate E2 - 3/(πy) along the axis (SL2(Z) only).
        #[arg(long)]
        numeric: bool,
    },
    /// Torsion certificate of a cuspidal divisor class.
    Torsion {
        #[command(flatten)]
        group: GroupArgs,
        #[arg(long, allow_hyphen_values = true)]
        divisor: Option<String>,
        /// File with one divisor per line.
        #[arg(long)]
        input: Option<PathBuf>,
    },
    /// Cusp classes with widths.
    Cusps {
        #[command(flatten)]
        group: GroupArgs,
    },
    /// Coset representatives of the group in SL2(Z), or of --sub in the group.
    Cosets {
        #[command(flatten)]
        group: GroupArgs,
        #[arg(long)]
        sub: Option<String>,
        #[arg(long)]
        sub_level: Option<u64>,
    },
    /// Run an invariant suite.
    Verify {
        /// reciprocity, cocycle, coset-sum, lemma, eta or oracle.
        suite: String,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        /// Number of random cases.
        #[arg(long)]
        count: Option<usize>,
        #[arg(long)]
        level: Option<u64>,
    },
}

/// Validated run configuration.
#[derive(Clone, Debug)]
pub struct Config {
    pub ctx: PrecisionCtx,
    pub tol: f64,
    pub format: Format,
    pub workers: usize,
}

impl Config {
    /// Reads flags, falling back to `RADSYM_DIGITS` for the precision.
    pub fn from_opts(o: &GlobalOpts) -> Result<Config, Failure> {
        let digits = match o.digits {
            Some(d) => d,
            None => match std::env::var("RADSYM_DIGITS") {
                Ok(s) => s.trim().parse().map_err(|_| Failure::usage(format!("RADSYM_DIGITS={s:?} is not a number")))?,
                Err(_) => DEFAULT_DIGITS,
            },
        };
        if digits < 30 {
            return Err(Failure::usage(format!("digits must be at least 30, got {digits}")));
        }
        if !(o.tol > 0.0 && o.tol <= 1e-4) {
            return Err(Failure::usage(format!("tolerance must lie in (0, 1e-4], got {}", o.tol)));
        }
        let mut ctx = PrecisionCtx::new(digits).map_err(Failure::from)?;
        if let Some(b) = &o.denominator_bound {
            if b < &BigInt::from(1) {
                return Err(Failure::usage("denominator bound must be positive".into()));
            }
            ctx.denominator_bound = Some(b.clone());
        }
        let format = if o.json { Format::Json } else { o.format };
        Ok(Config { ctx, tol: o.tol, format, workers: o.workers })
    }
}

/// An error with its exit status.
#[derive(Debug)]
pub struct Failure {
    pub code: i32,
    pub message: String,
}

impl Failure {
    fn usage(message: String) -> Self {
        Failure { code: EXIT_USAGE, message }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Parse(_) => EXIT_USAGE,
            Error::Precision(_) => EXIT_PRECISION,
            _ => EXIT_DOMAIN,
        };
        Failure { code, message: e.to_string() }
    }
}

/// Runs the command line against `std::env::args`, writing to stdout and stderr.
pub fn main() -> i32 {
    let out = std::io::stdout();
    let err = std::io::stderr();
    run(std::env::args_os(), &mut out.lock(), &mut err.lock())
}

/// Parses `argv` and executes the subcommand; returns the exit status.
pub fn run<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind::*;
            let code = if matches!(e.kind(), DisplayHelp | DisplayVersion) { 0 } else { EXIT_USAGE };
            let text = e.render().to_string();
            let _ = if code == 0 { write!(out, "{text}") } else { write!(err, "{text}") };
            return code;
        }
    };
    let result = Config::from_opts(&cli.opts).and_then(|cfg| {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(cfg.workers)
            .build()
            .map_err(|e| Failure::usage(format!("worker pool: {e}")))?;
        let mut buf = Vec::new();
        let result = pool.install(|| dispatch(&cli.command, &cfg, &mut buf));
        // partial output goes out even when a later item fails
        out.write_all(&buf).map_err(|e| Failure { code: EXIT_DOMAIN, message: e.to_string() })?;
        result
    });
    match result {
        Ok(code) => code,
        Err(f) => {
            let _ = writeln!(err, "radsym: {}", f.message);
            f.code
        }
    }
}

fn dispatch(cmd: &Command, cfg: &Config, out: &mut dyn Write) -> Result<i32, Failure> {
    match cmd {
        Command::Sum { a, c } => cmd_sum(a, c, cfg, out),
        Command::Symbol { group, cusp, matrix, input, phi } => {
            let lines = inputs(matrix.as_deref(), input.as_ref(), "--matrix")?;
            cmd_symbol(group.id()?, cusp, &lines, *phi, cfg, out)
        }
        Command::Period { group, divisor, matrix, input, numeric } => {
            let lines = inputs(matrix.as_deref(), input.as_ref(), "--matrix")?;
            cmd_period(group.id()?, divisor.as_deref(), &lines, *numeric, cfg, out)
        }
        Command::Torsion { group, divisor, input } => {
            let lines = inputs(divisor.as_deref(), input.as_ref(), "--divisor")?;
            cmd_torsion(group.id()?, &lines, cfg, out)
        }
        Command::Cusps { group } => cmd_cusps(group.id()?, cfg, out),
        Command::Cosets { group, sub, sub_level } => {
            let g = group.id()?;
            let (g1, g) = match sub {
                Some(s) => (GroupId::parse(s, sub_level.unwrap_or(g.level))?, g),
                None => (g, GroupId::sl2z()),
            };
            cmd_cosets(&g1, &g, cfg, out)
        }
        Command::Verify { suite, seed, count, level } => {
            let report = run_suite(suite, *seed, *count, *level, cfg)?;
            emit_report(&report, cfg, out)?;
            Ok(if report.passed { 0 } else { EXIT_DOMAIN })
        }
    }
}

/// One item from the flag or the lines of the input file, blank lines and `#` comments skipped.
fn inputs(single: Option<&str>, file: Option<&PathBuf>, flag: &str) -> Result<Vec<String>, Failure> {
    match (single, file) {
        (Some(s), None) => Ok(vec![s.to_string()]),
        (None, Some(p)) => {
            let text = fs::read_to_string(p).map_err(|e| Failure::usage(format!("{}: {e}", p.display())))?;
            Ok(text.lines().map(str::trim).filter(|l| !l.is_empty() && !l.starts_with('#')).map(String::from).collect())
        }
        (None, None) => Err(Failure::usage(format!("need {flag} or --input"))),
        (Some(_), Some(_)) => Err(Failure::usage(format!("{flag} and --input are exclusive"))),
    }
}

fn write_out(out: &mut dyn Write, s: &str) -> Result<(), Failure> {
    writeln!(out, "{s}").map_err(|e| Failure { code: EXIT_DOMAIN, message: e.to_string() })
}

fn digits_out(cfg: &Config) -> usize {
    cfg.ctx.digits as usize
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

fn cmd_sum(a: &BigInt, c: &BigInt, cfg: &Config, out: &mut dyn Write) -> Result<i32, Failure> {
    let s = format_rat(&dedekind_sum(a, c)?);
    let line = match cfg.format {
        Format::Text => s,
        Format::Json => json!({"a": a.to_string(), "c": c.to_string(), "value": s}).to_string(),
        Format::Csv => format!("a,c,value\n{a},{c},{s}"),
    };
    write_out(out, &line)?;
    Ok(0)
}

/// Per-line outcome of a batch evaluation.
struct Row {
    input: String,
    result: Result<Value, Failure>,
    text: String,
    csv: Vec<String>,
}

fn worst(rows: &[Row]) -> i32 {
    rows.iter().map(|r| r.result.as_ref().err().map_or(0, |f| f.code)).max().unwrap_or(0)
}

fn emit_rows(rows: &[Row], header: &str, cfg: &Config, out: &mut dyn Write) -> Result<i32, Failure> {
    if cfg.format == Format::Csv {
        write_out(out, header)?;
    }
    for r in rows {
        let line = match (&r.result, cfg.format) {
            (Ok(v), Format::Json) => v.to_string(),
            (Ok(_), Format::Text) => r.text.clone(),
            (Ok(_), Format::Csv) => r.csv.iter().map(|s| csv_field(s)).collect::<Vec<_>>().join(","),
            (Err(f), Format::Json) => json!({"input": r.input, "error": f.message}).to_string(),
            (Err(f), Format::Text) => format!("{}: error: {}", r.input, f.message),
            (Err(f), Format::Csv) => format!("{},error,{}", csv_field(&r.input), csv_field(&f.message)),
        };
        write_out(out, &line)?;
    }
    Ok(worst(rows))
}

/// Precision failures surface as exit 2 but keep the row.
fn flag_value(v: &SymbolValue) -> Option<Failure> {
    v.is_approx().then(|| Failure { code: EXIT_PRECISION, message: "value could not be reconstructed".into() })
}

fn cmd_symbol(group: GroupId, cusp: &str, lines: &[String], phi: bool, cfg: &Config, out: &mut dyn Write) -> Result<i32, Failure> {
    let cusp: Cusp = cusp.parse()?;
    let reg = Symbols::new(cfg.ctx.clone());
    let engine = reg.engine(group, &cusp)?;
    let rows: Vec<Row> = lines
        .par_iter()
        .map(|line| {
            let eval = || -> Result<(SymbolValue, GroupElement), Failure> {
                let g: GroupElement = line.parse()?;
                let v = if phi { engine.phi(&g)? } else { engine.psi(&g)? };
                Ok((v, g))
            };
            match eval() {
                Ok((v, g)) => {
                    let class = g.classify().to_string();
                    let value = v.to_json(digits_out(cfg));
                    let j = json!({
                        "matrix": line, "value": value, "method": engine.method(), "kind": v.method(),
                        "group": group.to_string(), "cusp": cusp.to_string(), "trace_class": class,
                        "symbol": if phi { "phi" } else { "psi" },
                    });
                    let rendered = v.render(digits_out(cfg));
                    let csv = vec![line.clone(), rendered.clone(), engine.method().into(), class];
                    let result = match flag_value(&v) {
                        Some(f) => Err(Failure { code: f.code, message: format!("{}: {}", f.message, rendered) }),
                        None => Ok(j),
                    };
                    Row { input: line.clone(), result, text: rendered, csv }
                }
                Err(f) => Row { input: line.clone(), result: Err(f), text: String::new(), csv: vec![] },
            }
        })
        .collect();
    emit_rows(&rows, "matrix,value,method,trace_class", cfg, out)
}

fn cmd_period(
    group: GroupId,
    divisor: Option<&str>,
    lines: &[String],
    numeric: bool,
    cfg: &Config,
    out: &mut dyn Write,
) -> Result<i32, Failure> {
    if numeric && !group.is_full() {
        return Err(Failure::usage("--numeric integrates over SL2(Z) only".into()));
    }
    let reg = Symbols::new(cfg.ctx.clone());
    let divisor = match (divisor, group.is_full()) {
        (Some(d), false) => Some(Divisor::parse(group, d)?),
        (None, false) => return Err(Failure::usage(format!("{group} needs --divisor"))),
        (Some(_), true) => return Err(Failure::usage("SL2(Z) has a single cusp; drop --divisor".into())),
        (None, true) => None,
    };
    let map = divisor.as_ref().map(|d| PeriodMap::new(&reg, d)).transpose()?;
    let engine = reg.engine(GroupId::sl2z(), &Cusp::infinity())?;
    let rows: Vec<Row> = lines
        .par_iter()
        .map(|line| {
            let eval = || -> Result<Row, Failure> {
                let g: GroupElement = line.parse()?;
                let v = match &map {
                    Some(m) => m.period(&g)?,
                    None => engine.psi(&g)?,
                };
                let rendered = v.render(digits_out(cfg));
                let mut j = json!({"matrix": line, "value": v.to_json(digits_out(cfg)), "kind": v.method(), "group": group.to_string()});
                if let Some(d) = &divisor {
                    j["divisor"] = json!(d.to_string());
                }
                let mut text = rendered.clone();
                let mut csv = vec![line.clone(), rendered.clone()];
                let mut failure = flag_value(&v);
                if numeric {
                    let p = period_numeric(&g, cfg.tol)?;
                    let diff = (p.value - v.to_f64()).abs();
                    j["numeric"] = json!({"value": p.value, "err": p.error, "diff": diff, "integrated": p.integrated.to_string()});
                    text = format!("{rendered}  numeric {:.15} (diff {diff:.1e})", p.value);
                    csv.push(format!("{:.15}", p.value));
                    csv.push(format!("{diff:.3e}"));
                    if diff >= cfg.tol {
                        failure = Some(Failure { code: EXIT_PRECISION, message: format!("quadrature off by {diff:.2e}") });
                    }
                }
                let result = match failure {
                    Some(f) => Err(f),
                    None => Ok(j),
                };
                Ok(Row { input: line.clone(), result, text, csv })
            };
            eval().unwrap_or_else(|f| Row { input: line.clone(), result: Err(f), text: String::new(), csv: vec![] })
        })
        .collect();
    let header = if numeric { "matrix,value,numeric,diff" } else { "matrix,value" };
    emit_rows(&rows, header, cfg, out)
}

fn cmd_torsion(group: GroupId, lines: &[String], cfg: &Config, out: &mut dyn Write) -> Result<i32, Failure> {
    let mut code = 0;
    if cfg.format == Format::Csv {
        write_out(out, "divisor,order,status,generators")?;
    }
    for line in lines {
        let d = Divisor::parse(group, line)?;
        let cert = torsion_certificate(&group, &d, &cfg.ctx)?;
        if cert.status == CertificateStatus::NonRational {
            code = code.max(EXIT_PRECISION);
        }
        let order = cert.order.as_ref().map_or_else(|| "none".to_string(), |n| n.to_string());
        match cfg.format {
            Format::Json => write_out(out, &cert.to_json().to_string())?,
            Format::Csv => write_out(out, &format!("{},{order},{},{}", csv_field(&d.to_string()), cert.status, cert.generators.len()))?,
            Format::Text => {
                write_out(out, &format!("{group}  D = {d}"))?;
                write_out(out, &format!("order {order}  ({})", cert.status))?;
                for (g, p) in cert.generators.iter().zip(cert.period_strings()) {
                    write_out(out, &format!("  [{g}]  {p}"))?;
                }
                for n in &cert.notes {
                    write_out(out, &format!("  note: {n}"))?;
                }
            }
        }
    }
    Ok(code)
}

fn cmd_cusps(group: GroupId, cfg: &Config, out: &mut dyn Write) -> Result<i32, Failure> {
    let reg = Symbols::new(cfg.ctx.clone());
    let table = reg.cusp_table(&group)?;
    match cfg.format {
        Format::Json => {
            let list: Vec<Value> = table
                .cusps()
                .iter()
                .map(|c| json!({"cusp": c.cusp.to_string(), "width": c.width, "scaling": c.scaling.base.to_string()}))
                .collect();
            write_out(out, &json!({"group": group.to_string(), "cusps": list}).to_string())?;
        }
        Format::Csv => {
            write_out(out, "cusp,width")?;
            for c in table.cusps() {
                write_out(out, &format!("{},{}", c.cusp, c.width))?;
            }
        }
        Format::Text => {
            for c in table.cusps() {
                write_out(out, &format!("{}\twidth {}", c.cusp, c.width))?;
            }
        }
    }
    Ok(0)
}

fn cmd_cosets(g1: &GroupId, g: &GroupId, cfg: &Config, out: &mut dyn Write) -> Result<i32, Failure> {
    let reps = cosets(g1, g)?;
    match cfg.format {
        Format::Json => {
            let list: Vec<String> = reps.iter().map(|r| r.to_string()).collect();
            write_out(out, &json!({"sub": g1.to_string(), "group": g.to_string(), "index": reps.len(), "reps": list}).to_string())?;
        }
        Format::Csv => {
            write_out(out, "a,b,c,d")?;
            for r in &reps {
                write_out(out, &format!("{},{},{},{}", r.a, r.b, r.c, r.d))?;
            }
        }
        Format::Text => {
            for r in &reps {
                write_out(out, &r.to_string())?;
            }
        }
    }
    Ok(0)
}

fn emit_report(r: &SuiteReport, cfg: &Config, out: &mut dyn Write) -> Result<(), Failure> {
    match cfg.format {
        Format::Json => write_out(
            out,
            &json!({"suite": r.suite, "passed": r.passed, "cases": r.cases, "seed": r.seed, "counterexample": r.counterexample})
                .to_string(),
        ),
        Format::Csv => write_out(out, &format!("suite,passed,cases\n{},{},{}", r.suite, r.passed, r.cases)),
        Format::Text => {
            let status = if r.passed { "PASS" } else { "FAIL" };
            write_out(out, &format!("{status} {} ({} cases, seed {})", r.suite, r.cases, r.seed))?;
            if let Some(c) = &r.counterexample {
                write_out(out, &format!("  counterexample: {c}"))?;
            }
            Ok(())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn call(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let argv = std::iter::once("radsym").chain(args.iter().copied());
        let code = run(argv, &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn sum_and_symbol() {
        assert_eq!(call(&["sum", "1", "3"]), (0, "1/18\n".into(), String::new()));
        assert_eq!(call(&["symbol", "--group", "sl2z", "--matrix", "1,1,0,1"]).1, "1\n");
        let (code, out, _) = call(&["symbol", "--matrix", "-3,-2,-4,-3", "--json"]);
        assert_eq!(code, 0);
        let v: Value = serde_json::from_str(out.trim()).unwrap();
        assert_eq!(v["trace_class"], "hyperbolic");
        assert_eq!(v["method"], "classical");
    }

    #[test]
    fn usage_and_domain_codes() {
        assert_eq!(call(&["symbol", "--matrix", "1,2,3"]).0, EXIT_USAGE);
        assert_eq!(call(&["frobnicate"]).0, EXIT_USAGE);
        assert_eq!(call(&["sum", "1", "3", "--digits", "10"]).0, EXIT_USAGE);
        assert_eq!(call(&["sum", "1", "3", "--tol", "0.1"]).0, EXIT_USAGE);
        assert_eq!(call(&["symbol", "--group", "gamma0", "--level", "5", "--matrix", "1,0,1,1"]).0, EXIT_DOMAIN);
        assert_eq!(call(&["sum", "2", "4"]).0, EXIT_DOMAIN);
        assert_eq!(call(&["--help"]).0, 0);
    }

    #[test]
    fn torsion_json() {
        let (code, out, _) = call(&["torsion", "--group", "gamma0", "--level", "11", "--divisor", "0:-1,inf:1", "--json"]);
        assert_eq!(code, 0);
        let v: Value = serde_json::from_str(out.trim()).unwrap();
        assert_eq!(v["order"], 5);
    }

    #[test]
    fn cusps_and_cosets() {
        let (_, out, _) = call(&["cusps", "--group", "gamma0", "--level", "4"]);
        assert_eq!(out, "inf\twidth 1\n0\twidth 4\n1/2\twidth 1\n");
        let (_, out, _) = call(&["cosets", "--group", "gamma0", "--level", "3"]);
        assert_eq!(out.lines().count(), 4);
    }
}
