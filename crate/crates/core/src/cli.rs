//! Command-line front end: `eval`, `verify` and `table`.
//!
//! Exit codes: 0 on success or pass, 1 when a numeric comparison fails,
//! 2 on usage, domain or constraint errors.

use std::ffi::OsString;
use std::fs::File;
use std::io::{self, Write};
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use indexmap::IndexMap;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::functions::{self, FnEvalResult};
use crate::identities::{self, IdentityReport, Params, Verdict};
use crate::special_core::{self, SeriesControl};
use crate::{polys, umbral};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

/// Largest sweep accepted by `table`.
pub const MAX_SWEEP_POINTS: usize = 1_000_000;

#[derive(Debug, Parser)]
#[command(
    name = "umbral-lab",
    version,
    about = "Evaluate special functions and check integral identities"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Csv,
    Json,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Evaluate one function.
    Eval {
        #[arg(long = "fn")]
        name: String,
        /// Comma-separated `k=v` pairs.
        #[arg(long, default_value = "")]
        args: String,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Compare a closed form with its quadrature oracle.
    Verify {
        #[arg(long)]
        identity: String,
        #[arg(long, default_value = "")]
        params: String,
        #[arg(long)]
        tol_abs: Option<f64>,
        #[arg(long)]
        tol_rel: Option<f64>,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Sweep an identity over a grid of parameter values.
    Table {
        #[arg(long)]
        identity: String,
        /// `k=start..stop[:step]`, inclusive; repeatable.
        #[arg(long)]
        range: Vec<String>,
        /// `k=v1,v2,…`; repeatable.
        #[arg(long)]
        list: Vec<String>,
        #[arg(long, default_value = "")]
        fixed: String,
        #[arg(long)]
        tol_abs: Option<f64>,
        #[arg(long)]
        tol_rel: Option<f64>,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// List the registered identities.
    Identities,
}

/// Runs the CLI with the given arguments (including the program name).
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() {
                stderr.write_all(text.as_bytes())
            } else {
                stdout.write_all(text.as_bytes())
            };
            return code;
        }
    };
    let outcome = match cli.cmd {
        Command::Eval { name, args, format } => cmd_eval(&name, &args, format, stdout),
        Command::Verify {
            identity,
            params,
            tol_abs,
            tol_rel,
            format,
        } => cmd_verify(&identity, &params, tol_abs, tol_rel, format, stdout),
        Command::Table {
            identity,
            range,
            list,
            fixed,
            tol_abs,
            tol_rel,
            format,
            out,
        } => {
            let sweep = SweepSpec::parse(&identity, &range, &list, &fixed, tol_abs, tol_rel, format, out);
            sweep
                .map_err(CliError::from)
                .and_then(|s| cmd_table(&s, stdout, stderr))
        }
        Command::Identities => {
            for spec in identities::registry() {
                let names: Vec<_> = spec.params.iter().map(|p| p.name).collect();
                let _ = writeln!(stdout, "{:<22} {:<40} {}", spec.id, names.join(","), spec.summary);
            }
            Ok(EXIT_OK)
        }
    };
    match outcome {
        Ok(code) => code,
        Err(CliError::Lib(e)) => {
            let _ = writeln!(stderr, "error: {e}");
            EXIT_USAGE
        }
        Err(CliError::Io(e)) => {
            let _ = writeln!(stderr, "error: {e}");
            EXIT_USAGE
        }
    }
}

#[derive(Debug)]
enum CliError {
    Lib(Error),
    Io(io::Error),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Lib(e)
    }
}

impl From<io::Error> for CliError {
    fn from(e: io::Error) -> Self {
        CliError::Io(e)
    }
}

impl From<csv::Error> for CliError {
    fn from(e: csv::Error) -> Self {
        CliError::Io(e.into())
    }
}

impl From<serde_json::Error> for CliError {
    fn from(e: serde_json::Error) -> Self {
        CliError::Io(e.into())
    }
}

type CliResult<T> = std::result::Result<T, CliError>;

fn parse_number(key: &str, s: &str) -> Result<f64> {
    s.trim()
        .parse::<f64>()
        .map_err(|_| Error::Invalid(format!("value for '{key}' is not a number: '{s}'")))
}

/// Parses `k=v,k=v`; an empty string gives no pairs.
pub fn parse_pairs(s: &str) -> Result<Params> {
    let mut out = Params::new();
    for item in s.split(',').map(str::trim).filter(|t| !t.is_empty()) {
        let (k, v) = item
            .split_once('=')
            .ok_or_else(|| Error::Invalid(format!("expected k=v, got '{item}'")))?;
        let k = k.trim();
        if k.is_empty() {
            return Err(Error::Invalid(format!("empty name in '{item}'")));
        }
        if out.insert(k.to_string(), parse_number(k, v)?).is_some() {
            return Err(Error::Invalid(format!("'{k}' given twice")));
        }
    }
    Ok(out)
}

/// Parses `k=start..stop[:step]` into the inclusive list of points.
pub fn parse_range(s: &str) -> Result<(String, Vec<f64>)> {
    let (k, spec) = s
        .split_once('=')
        .ok_or_else(|| Error::Invalid(format!("expected k=start..stop[:step], got '{s}'")))?;
    let k = k.trim().to_string();
    let (start, rest) = spec
        .split_once("..")
        .ok_or_else(|| Error::Invalid(format!("range for '{k}' needs 'start..stop'")))?;
    let (stop, step) = match rest.split_once(':') {
        Some((stop, step)) => (stop, Some(step)),
        None => (rest, None),
    };
    let start = parse_number(&k, start)?;
    let stop = parse_number(&k, stop)?;
    let step = match step {
        Some(st) => parse_number(&k, st)?,
        None if stop >= start => 1.0,
        None => -1.0,
    };
    if !(start.is_finite() && stop.is_finite() && step.is_finite()) {
        return Err(Error::Invalid(format!("range for '{k}' must be finite")));
    }
    if step == 0.0 {
        return Err(Error::Invalid(format!("range for '{k}' has step 0")));
    }
    if (stop - start) * step < 0.0 {
        return Err(Error::Invalid(format!("range for '{k}' is empty")));
    }
    let n = ((stop - start) / step + 1e-9).floor();
    if n >= MAX_SWEEP_POINTS as f64 {
        return Err(Error::Invalid(format!("range for '{k}' has too many points")));
    }
    // start + i·step rather than repeated addition, so endpoints stay exact
    let points = (0..=n as usize).map(|i| start + i as f64 * step).collect();
    Ok((k, points))
}

/// Parses `k=v1,v2,…`.
pub fn parse_list(s: &str) -> Result<(String, Vec<f64>)> {
    let (k, vals) = s
        .split_once('=')
        .ok_or_else(|| Error::Invalid(format!("expected k=v1,v2,…, got '{s}'")))?;
    let k = k.trim().to_string();
    let points = vals
        .split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(|v| parse_number(&k, v))
        .collect::<Result<Vec<_>>>()?;
    if points.is_empty() {
        return Err(Error::Invalid(format!("list for '{k}' is empty")));
    }
    Ok((k, points))
}

struct Args {
    name: String,
    values: Params,
}

impl Args {
    fn real(&mut self, key: &str) -> Result<f64> {
        self.values
            .shift_remove(key)
            .ok_or_else(|| Error::MissingParam(format!("{} needs argument '{key}'", self.name)))
    }

    fn count(&mut self, key: &str) -> Result<u32> {
        let v = self.real(key)?;
        if v >= 0.0 && v.fract() == 0.0 && v <= u32::MAX as f64 {
            Ok(v as u32)
        } else {
            Err(Error::Invalid(format!(
                "argument '{key}' must be a non-negative integer, got {v}"
            )))
        }
    }

    fn finish(self) -> Result<()> {
        match self.values.keys().next() {
            Some(k) => Err(Error::Invalid(format!("{} has no argument '{k}'", self.name))),
            None => Ok(()),
        }
    }
}

/// Function names accepted by `eval`, with their arguments.
pub const EVAL_FUNCTIONS: &[(&str, &str)] = &[
    ("bessel_j", "nu,x"),
    ("bessel_j_scaled", "nu,u"),
    ("sph_bessel", "n,x"),
    ("f_n_combo", "n,x,a,b"),
    ("struve_h", "nu,x"),
    ("struve_umbral", "nu,x,terms"),
    ("wright", "alpha,beta,x"),
    ("mittag_leffler", "alpha,beta,x"),
    ("hermite2", "n,x,y"),
    ("bpoly", "n,x,y,nu"),
    ("gamma", "x"),
    ("recip_gamma1p", "mu"),
    ("log_gamma", "x"),
];

/// Evaluates a named function on `k=v` arguments.
pub fn eval_function(name: &str, args: &Params) -> Result<FnEvalResult> {
    let mut a = Args {
        name: name.to_string(),
        values: args.clone(),
    };
    let ctl = SeriesControl::default();
    let exact = |v: f64| FnEvalResult {
        value: v,
        terms_used: 1,
        truncation_flag: false,
    };
    let r = match name {
        "bessel_j" => functions::bessel_j(a.real("nu")?, a.real("x")?)?,
        "bessel_j_scaled" => functions::bessel_j_scaled(a.real("nu")?, a.real("u")?)?,
        "sph_bessel" => functions::sph_bessel(a.count("n")?, a.real("x")?)?,
        "f_n_combo" => functions::f_n_combo(a.count("n")?, a.real("x")?, a.real("a")?, a.real("b")?)?,
        "struve_h" => functions::struve_h(a.real("nu")?, a.real("x")?)?,
        "struve_umbral" => {
            let (nu, x, k) = (a.real("nu")?, a.real("x")?, a.count("terms")?);
            FnEvalResult {
                value: umbral::struve_umbral_eval(nu, x, k as usize)?,
                terms_used: k as usize,
                truncation_flag: false,
            }
        }
        "wright" | "wright_w" => functions::wright_w(a.real("alpha")?, a.real("beta")?, a.real("x")?, &ctl)?,
        "mittag_leffler" => functions::mittag_leffler(a.real("alpha")?, a.real("beta")?, a.real("x")?, &ctl)?,
        "hermite2" => exact(polys::hermite2(a.count("n")?, a.real("x")?, a.real("y")?)),
        "bpoly" => exact(polys::bpoly(a.count("n")?, a.real("x")?, a.real("y")?, a.real("nu")?)),
        "gamma" => exact(special_core::gamma(a.real("x")?)?),
        "recip_gamma1p" => exact(special_core::recip_gamma1p(a.real("mu")?)),
        "log_gamma" => exact(special_core::log_gamma(a.real("x")?)?),
        _ => return Err(Error::UnknownFunction(name.to_string())),
    };
    a.finish()?;
    Ok(r)
}

fn cmd_eval(name: &str, args: &str, format: Format, out: &mut dyn Write) -> CliResult<i32> {
    let r = eval_function(name, &parse_pairs(args)?)?;
    match format {
        Format::Json => writeln!(out, "{}", serde_json::to_string(&r)?)?,
        Format::Text | Format::Csv => {
            writeln!(out, "value={}", r.value)?;
            writeln!(out, "terms_used={}", r.terms_used)?;
            writeln!(out, "truncation_flag={}", r.truncation_flag)?;
        }
    }
    Ok(EXIT_OK)
}

fn tolerances(spec: &identities::IdentitySpec, p: &Params, tol_abs: Option<f64>, tol_rel: Option<f64>) -> (f64, f64) {
    let d = spec.default_tol(p);
    (tol_abs.unwrap_or(d), tol_rel.unwrap_or(d))
}

fn cmd_verify(
    id: &str,
    params: &str,
    tol_abs: Option<f64>,
    tol_rel: Option<f64>,
    format: Format,
    out: &mut dyn Write,
) -> CliResult<i32> {
    let spec = identities::lookup(id)?;
    let p = parse_pairs(params)?;
    let (ta, tr) = tolerances(spec, &p, tol_abs, tol_rel);
    let report = identities::verify(id, &p, ta, tr)?;
    match format {
        Format::Json => writeln!(out, "{}", serde_json::to_string_pretty(&report)?)?,
        Format::Text | Format::Csv => write_report_text(&report, out)?,
    }
    Ok(match report.verdict {
        Verdict::Pass => EXIT_OK,
        Verdict::Fail => EXIT_FAIL,
        Verdict::ClosedOnly => EXIT_USAGE,
    })
}

fn write_report_text(r: &IdentityReport, out: &mut dyn Write) -> io::Result<()> {
    let verdict = match r.verdict {
        Verdict::Pass => "pass",
        Verdict::Fail => "fail",
        Verdict::ClosedOnly => "closed-only (no oracle for these parameters)",
    };
    let ps: Vec<String> = r.params.iter().map(|(k, v)| format!("{k}={v}")).collect();
    writeln!(out, "identity:     {}", r.id)?;
    writeln!(out, "params:       {}", ps.join(","))?;
    writeln!(out, "verdict:      {verdict}")?;
    writeln!(out, "closed_value: {:.16e}", r.closed_value)?;
    if let Some(o) = &r.oracle {
        let route = r.route.map(|x| format!("{x:?}")).unwrap_or_default();
        writeln!(out, "oracle_value: {:.16e}", o.value)?;
        writeln!(
            out,
            "oracle_err:   {:.3e} ({:?}, {} evaluations, {route})",
            o.abs_err_est, o.status, o.evaluations
        )?;
    }
    if let (Some(a), Some(rel)) = (r.abs_err, r.rel_err) {
        writeln!(out, "abs_err:      {a:.3e}")?;
        writeln!(out, "rel_err:      {rel:.3e}")?;
    }
    writeln!(out, "tolerance:    {:.3e}", r.tolerance_used)
}

/// A parameter sweep for `table`.
#[derive(Debug, Clone)]
pub struct SweepSpec {
    pub identity: String,
    /// Swept parameters in command-line order; the first varies slowest.
    pub axes: Vec<(String, Vec<f64>)>,
    pub fixed: Params,
    pub tol_abs: Option<f64>,
    pub tol_rel: Option<f64>,
    pub json: bool,
    pub out: Option<PathBuf>,
}

impl SweepSpec {
    #[allow(clippy::too_many_arguments)]
    fn parse(
        identity: &str,
        ranges: &[String],
        lists: &[String],
        fixed: &str,
        tol_abs: Option<f64>,
        tol_rel: Option<f64>,
        format: Format,
        out: Option<PathBuf>,
    ) -> Result<Self> {
        identities::lookup(identity)?;
        let json = match format {
            Format::Csv => false,
            Format::Json => true,
            Format::Text => return Err(Error::Invalid("table output is csv or json".into())),
        };
        let mut axes = Vec::new();
        for r in ranges {
            axes.push(parse_range(r)?);
        }
        for l in lists {
            axes.push(parse_list(l)?);
        }
        let fixed = parse_pairs(fixed)?;
        let mut total: usize = 1;
        for (i, (k, pts)) in axes.iter().enumerate() {
            if axes[..i].iter().any(|(j, _)| j == k) || fixed.contains_key(k) {
                return Err(Error::Invalid(format!("parameter '{k}' given twice")));
            }
            total = total.saturating_mul(pts.len());
        }
        if total > MAX_SWEEP_POINTS {
            return Err(Error::Invalid(format!(
                "sweep has {total} points, limit is {MAX_SWEEP_POINTS}"
            )));
        }
        Ok(Self {
            identity: identity.to_string(),
            axes,
            fixed,
            tol_abs,
            tol_rel,
            json,
            out,
        })
    }

    /// Every parameter point, in output order.
    pub fn points(&self) -> Vec<Params> {
        let mut points = vec![Params::new()];
        for (k, vals) in &self.axes {
            points = points
                .into_iter()
                .flat_map(|p| {
                    vals.iter().map(move |v| {
                        let mut q = p.clone();
                        q.insert(k.clone(), *v);
                        q
                    })
                })
                .collect();
        }
        for p in &mut points {
            p.extend(self.fixed.iter().map(|(k, v)| (k.clone(), *v)));
        }
        points
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RowStatus {
    Pass,
    Fail,
    /// The point violates the identity's constraints.
    Skipped,
    /// Closed form only; no oracle covers the point.
    Unverified,
}

/// One row of a sweep table; the JSON form flattens `params` into the row.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TableRow {
    #[serde(flatten)]
    pub params: IndexMap<String, f64>,
    pub closed_value: Option<f64>,
    pub oracle_value: Option<f64>,
    pub abs_err: Option<f64>,
    pub rel_err: Option<f64>,
    pub status: RowStatus,
    pub evaluations: Option<usize>,
}

impl TableRow {
    fn from_report(r: IdentityReport) -> Self {
        let status = match r.verdict {
            Verdict::Pass => RowStatus::Pass,
            Verdict::Fail => RowStatus::Fail,
            Verdict::ClosedOnly => RowStatus::Unverified,
        };
        Self {
            params: r.params,
            closed_value: Some(r.closed_value),
            oracle_value: r.oracle.as_ref().map(|o| o.value),
            abs_err: r.abs_err,
            rel_err: r.rel_err,
            status,
            evaluations: r.oracle.as_ref().map(|o| o.evaluations),
        }
    }

    fn skipped(params: Params) -> Self {
        Self {
            params,
            closed_value: None,
            oracle_value: None,
            abs_err: None,
            rel_err: None,
            status: RowStatus::Skipped,
            evaluations: None,
        }
    }
}

/// Computes every row of a sweep, in input order.
///
/// Points that violate the identity's constraints become skipped rows, with
/// the reason; malformed parameters abort the sweep.
pub fn sweep_rows(s: &SweepSpec) -> Result<Vec<(TableRow, Option<String>)>> {
    let spec = identities::lookup(&s.identity)?;
    s.points()
        .into_par_iter()
        .map(|p| {
            let (ta, tr) = tolerances(spec, &p, s.tol_abs, s.tol_rel);
            match identities::verify(&s.identity, &p, ta, tr) {
                Ok(r) => Ok((TableRow::from_report(r), None)),
                Err(e @ (Error::Domain(_) | Error::Constraint(_) | Error::Pole(_) | Error::Overflow(_))) => {
                    Ok((TableRow::skipped(p), Some(e.to_string())))
                }
                Err(e) => Err(e),
            }
        })
        .collect()
}

fn num(v: Option<f64>) -> String {
    v.map(|x| format!("{x:.16e}")).unwrap_or_default()
}

/// Writes rows as CSV with a fixed header order.
pub fn write_csv(rows: &[TableRow], names: &[String], out: impl Write) -> csv::Result<()> {
    let mut w = csv::Writer::from_writer(out);
    let tail = [
        "closed_value",
        "oracle_value",
        "abs_err",
        "rel_err",
        "status",
        "evaluations",
    ];
    w.write_record(names.iter().map(String::as_str).chain(tail))?;
    for r in rows {
        let mut rec: Vec<String> = names.iter().map(|k| num(r.params.get(k).copied())).collect();
        rec.extend([num(r.closed_value), num(r.oracle_value), num(r.abs_err), num(r.rel_err)]);
        rec.push(
            serde_json::to_value(r.status)
                .ok()
                .and_then(|v| v.as_str().map(str::to_string))
                .unwrap_or_default(),
        );
        rec.push(r.evaluations.map(|e| e.to_string()).unwrap_or_default());
        w.write_record(&rec)?;
    }
    w.flush()?;
    Ok(())
}

fn cmd_table(s: &SweepSpec, stdout: &mut dyn Write, stderr: &mut dyn Write) -> CliResult<i32> {
    let rows = sweep_rows(s)?;
    let points = s.points();
    for ((_, reason), p) in rows.iter().zip(&points) {
        if let Some(reason) = reason {
            let ps: Vec<String> = p.iter().map(|(k, v)| format!("{k}={v}")).collect();
            writeln!(stderr, "skipped {}: {reason}", ps.join(","))?;
        }
    }
    let rows: Vec<TableRow> = rows.into_iter().map(|(r, _)| r).collect();
    let names: Vec<String> = points.first().map(|p| p.keys().cloned().collect()).unwrap_or_default();
    let mut buf = Vec::new();
    if s.json {
        serde_json::to_writer_pretty(&mut buf, &rows)?;
        buf.push(b'\n');
    } else {
        write_csv(&rows, &names, &mut buf)?;
    }
    match &s.out {
        Some(path) => File::create(path)?.write_all(&buf)?,
        None => stdout.write_all(&buf)?,
    }
    let failed = rows.iter().any(|r| r.status == RowStatus::Fail);
    Ok(if failed { EXIT_FAIL } else { EXIT_OK })
}
