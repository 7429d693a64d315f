//! `qcalc` — run identity verifications, evaluate the named q-functions,
//! and emit comparison tables.
//!
//! Exit codes: 0 all checks pass, 1 at least one verification failed,
//! 2 usage or configuration error.

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use qcalc_core::hermite::{self, HermiteFamily};
use qcalc_core::identities::{self, CheckParams, EntryMode, Report};
use qcalc_core::jackson::JacksonConfig;
use qcalc_core::parallel::ExecMode;
use qcalc_core::scalar::QMode;
use qcalc_core::series::{self, NamedSeries};
use qcalc_core::ScalarQ;
use std::io::Write;
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "qcalc", version, about = "exact and numeric q-series identity engine")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Args)]
struct CommonOpts {
    /// `exact` for symbolic-only runs, or a numeric q in (0,1)
    #[arg(long, env = "QCALC_Q", default_value = "0.5")]
    q: String,
    /// truncation degree for exact series checks
    #[arg(long, default_value_t = 12)]
    trunc: u32,
    /// lattice anchor for line integrals
    #[arg(long, default_value_t = 1.0)]
    gamma: f64,
    /// tolerance override for numeric comparisons
    #[arg(long)]
    tol: Option<f64>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// write output to a file instead of standard output
    #[arg(long)]
    out: Option<std::path::PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Run identity verifications and stream one report per identity.
    Verify {
        /// identity ids to run (see `--list`)
        ids: Vec<String>,
        /// run every registered identity
        #[arg(long)]
        all: bool,
        /// list the registry instead of running
        #[arg(long)]
        list: bool,
        #[command(flatten)]
        common: CommonOpts,
    },
    /// Evaluate a named function: series coefficients in exact mode, values
    /// at a point in numeric mode.
    Eval {
        /// one of: eq, bigeq, phi10, logq, li2q, hermite1, hermite2, bq, cq, jackson
        function: String,
        /// positional arguments (a point, a degree, ...) depending on the function
        args: Vec<String>,
        #[command(flatten)]
        common: CommonOpts,
    },
    /// Emit a comparison table (computed vs closed form).
    Table {
        /// one of: moments-i, moments-ii, orthogonality, fourier-pairs
        kind: String,
        /// inclusive index range, e.g. `0..4`
        range: String,
        /// polynomial family for the orthogonality table
        #[arg(long, default_value = "I")]
        family: String,
        #[command(flatten)]
        common: CommonOpts,
    },
}

struct Output {
    target: Option<std::path::PathBuf>,
    buffer: String,
}

impl Output {
    fn new(target: Option<std::path::PathBuf>) -> Output {
        Output {
            target,
            buffer: String::new(),
        }
    }

    fn line(&mut self, s: &str) {
        self.buffer.push_str(s);
        self.buffer.push('\n');
    }

    fn finish(self) -> Result<(), String> {
        match self.target {
            None => {
                print!("{}", self.buffer);
                Ok(())
            }
            Some(path) => std::fs::File::create(&path)
                .and_then(|mut f| f.write_all(self.buffer.as_bytes()))
                .map_err(|e| format!("cannot write {}: {e}", path.display())),
        }
    }
}

enum QArg {
    Exact,
    Numeric(f64),
}

fn parse_q(s: &str) -> Result<QArg, String> {
    if s == "exact" {
        return Ok(QArg::Exact);
    }
    let v: f64 = s
        .parse()
        .map_err(|_| format!("--q must be `exact` or a number in (0,1), got `{s}`"))?;
    if v <= 0.0 || v >= 1.0 {
        return Err(format!("--q must lie strictly inside (0,1), got {v}"));
    }
    Ok(QArg::Numeric(v))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(all_pass) => {
            if all_pass {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> Result<bool, String> {
    match cli.command {
        Command::Verify {
            ids,
            all,
            list,
            common,
        } => cmd_verify(ids, all, list, common),
        Command::Eval {
            function,
            args,
            common,
        } => cmd_eval(&function, &args, common).map(|()| true),
        Command::Table {
            kind,
            range,
            family,
            common,
        } => cmd_table(&kind, &range, &family, common).map(|()| true),
    }
}

// ---------------------------------------------------------------------------
// verify
// ---------------------------------------------------------------------------

fn cmd_verify(
    ids: Vec<String>,
    all: bool,
    list: bool,
    common: CommonOpts,
) -> Result<bool, String> {
    let mut out = Output::new(common.out.clone());
    if list {
        for e in identities::registry() {
            out.line(&format!(
                "{:<20} {:<8} {}",
                e.id,
                match e.mode {
                    EntryMode::Exact => "exact",
                    EntryMode::Numeric => "numeric",
                },
                e.describes
            ));
        }
        out.finish()?;
        return Ok(true);
    }
    let qarg = parse_q(&common.q)?;
    if common.trunc < 4 {
        return Err("--trunc must be at least 4".into());
    }
    let params = CheckParams {
        trunc: common.trunc,
        q: match qarg {
            QArg::Exact => 0.5,
            QArg::Numeric(v) => v,
        },
        gamma: common.gamma,
        tol_override: common.tol,
        exec: ExecMode::default(),
    };
    let filter: Option<Vec<String>> = if all || ids.is_empty() {
        // `--q exact` restricts a full run to the exact suite
        match qarg {
            QArg::Exact => Some(
                identities::registry()
                    .iter()
                    .filter(|e| e.mode == EntryMode::Exact)
                    .map(|e| e.id.to_string())
                    .collect(),
            ),
            QArg::Numeric(_) => None,
        }
    } else {
        Some(ids)
    };
    let reports = identities::check_all(&params, filter.as_deref())
        .map_err(|e| e.to_string())?;
    let all_pass = reports.iter().all(|r| r.status == "pass");
    emit_reports(&reports, common.format, &mut out);
    out.finish()?;
    Ok(all_pass)
}

fn emit_reports(reports: &[Report], format: Format, out: &mut Output) {
    match format {
        Format::Json => {
            for r in reports {
                out.line(&serde_json::to_string(r).expect("report serializes"));
            }
        }
        Format::Csv => {
            out.line("id,status,mode,truncation,q,max_residual,residual_terms,elapsed_ms");
            for r in reports {
                out.line(&format!(
                    "{},{},{},{},{},{},{},{}",
                    r.id,
                    r.status,
                    match r.mode {
                        EntryMode::Exact => "exact",
                        EntryMode::Numeric => "numeric",
                    },
                    r.truncation,
                    r.q,
                    r.max_residual.map(|v| v.to_string()).unwrap_or_default(),
                    r.residual_terms.map(|v| v.to_string()).unwrap_or_default(),
                    r.elapsed_ms
                ));
            }
        }
        Format::Text => {
            for r in reports {
                let residual = match (r.max_residual, r.residual_terms) {
                    (Some(v), _) => format!("max residual {v:.2e}"),
                    (None, Some(t)) => format!("{t} offending terms"),
                    _ => String::new(),
                };
                out.line(&format!(
                    "{:<6} {:<20} {:<8} {residual} ({} ms) {}",
                    r.status,
                    r.id,
                    match r.mode {
                        EntryMode::Exact => "exact",
                        EntryMode::Numeric => "numeric",
                    },
                    r.elapsed_ms,
                    r.detail
                ));
            }
            let passed = reports.iter().filter(|r| r.status == "pass").count();
            out.line(&format!("{passed}/{} passed", reports.len()));
        }
    }
}

// ---------------------------------------------------------------------------
// eval
// ---------------------------------------------------------------------------

fn cmd_eval(function: &str, args: &[String], common: CommonOpts) -> Result<(), String> {
    if common.trunc < 4 {
        return Err("--trunc must be at least 4".into());
    }
    let mut out = Output::new(common.out.clone());
    let qarg = parse_q(&common.q)?;
    let tol = common.tol.unwrap_or(1e-15);
    let named = |name: &str| -> Option<NamedSeries> {
        match name {
            "eq" => Some(NamedSeries::Eq),
            "bigeq" | "bigEq" => Some(NamedSeries::BigEq),
            "logq" => Some(NamedSeries::LogQ),
            "li2q" => Some(NamedSeries::Li2Q),
            _ => None,
        }
    };
    match function {
        f if named(f).is_some() || f == "phi10" => {
            let (series_name, point_arg) = if f == "phi10" {
                let a = args
                    .first()
                    .ok_or("phi10 needs a parameter value, e.g. `phi10 0.25 [z]`")?;
                let a: f64 = a.parse().map_err(|_| "parameter must be numeric")?;
                (NamedSeries::Phi10(ScalarQ::real(a)), args.get(1))
            } else {
                (named(f).unwrap(), args.first())
            };
            match (&qarg, point_arg) {
                (QArg::Numeric(q), Some(z)) => {
                    let z: f64 = z.parse().map_err(|_| "point must be numeric")?;
                    let v = series::numeric_eval(
                        &series_name,
                        Complex64::new(z, 0.0),
                        *q,
                        tol,
                    )
                    .map_err(|e| e.to_string())?;
                    out.line(&format_complex(v));
                }
                _ => {
                    // exact coefficients up to the truncation
                    let name = if f == "phi10" {
                        // symbolic parameter has no single exact scalar; use the
                        // series with the given numeric parameter evaluated exactly
                        return Err(
                            "phi10 exact coefficients need a rational parameter; \
                             use a numeric q and a point instead"
                                .into(),
                        );
                    } else {
                        series_name
                    };
                    let s = series::series_of(&name, &QMode::ExactSymbolic, common.trunc);
                    if common.format == Format::Csv {
                        out.line("degree,coefficient");
                        for k in 0..=common.trunc {
                            out.line(&format!("{k},\"{}\"", s.coeff(k)));
                        }
                    } else {
                        for k in 0..=common.trunc {
                            out.line(&format!("z^{k}: {}", s.coeff(k)));
                        }
                    }
                }
            }
        }
        "hermite1" | "hermite2" => {
            let n: u32 = args
                .first()
                .ok_or("hermite needs a degree")?
                .parse()
                .map_err(|_| "degree must be a nonnegative integer")?;
            let family = if function == "hermite1" {
                HermiteFamily::I
            } else {
                HermiteFamily::II
            };
            match (&qarg, args.get(1)) {
                (QArg::Numeric(q), Some(x)) => {
                    let x: f64 = x.parse().map_err(|_| "point must be numeric")?;
                    let h = hermite::hermite(family, n, &QMode::NumericAt(*q));
                    out.line(&format!("{}", h.eval_real(x, *q)));
                }
                _ => {
                    let h = hermite::hermite(family, n, &QMode::ExactSymbolic);
                    if common.format == Format::Csv {
                        out.line("degree,coefficient");
                        for k in 0..=n {
                            out.line(&format!("{k},\"{}\"", h.poly.coeff(k)));
                        }
                    } else {
                        out.line(&h.to_string());
                    }
                }
            }
        }
        "bq" => {
            let q = numeric_q(&qarg)?;
            out.line(&format!(
                "{}",
                hermite::bq_constant(q, tol).map_err(|e| e.to_string())?
            ));
        }
        "cq" => {
            let q = numeric_q(&qarg)?;
            out.line(&format!(
                "{}",
                hermite::cq_constant(q, common.gamma, tol).map_err(|e| e.to_string())?
            ));
        }
        "jackson" => {
            // int_0^1 t^n d_q t
            let n: u32 = args
                .first()
                .ok_or("jackson needs a monomial degree")?
                .parse()
                .map_err(|_| "degree must be a nonnegative integer")?;
            match &qarg {
                QArg::Exact => {
                    let one_minus_q = ScalarQ::one() - ScalarQ::q();
                    let v = one_minus_q
                        .checked_div(&(ScalarQ::one() - ScalarQ::qpow(n as i64 + 1)))
                        .map_err(|e| e.to_string())?;
                    out.line(&format!("{v}"));
                }
                QArg::Numeric(q) => {
                    let cfg = JacksonConfig::default();
                    let v = qcalc_core::jackson::jackson_interval(
                        |t| Complex64::new(t.powi(n as i32), 0.0),
                        0.0,
                        1.0,
                        *q,
                        &cfg,
                    )
                    .map_err(|e| e.to_string())?;
                    out.line(&format_complex(v));
                }
            }
        }
        other => {
            return Err(format!(
                "unknown function `{other}`; expected one of eq, bigeq, phi10, logq, \
                 li2q, hermite1, hermite2, bq, cq, jackson"
            ))
        }
    }
    out.finish()
}

fn numeric_q(qarg: &QArg) -> Result<f64, String> {
    match qarg {
        QArg::Numeric(q) => Ok(*q),
        QArg::Exact => Err("this evaluation needs a numeric q".into()),
    }
}

fn format_complex(v: Complex64) -> String {
    if v.im.abs() < 1e-14 * v.re.abs().max(1.0) {
        format!("{}", v.re)
    } else {
        format!("{}+{}i", v.re, v.im)
    }
}

// ---------------------------------------------------------------------------
// table
// ---------------------------------------------------------------------------

fn parse_range(s: &str) -> Result<(u32, u32), String> {
    let (a, b) = s
        .split_once("..")
        .ok_or_else(|| format!("range must look like `0..4`, got `{s}`"))?;
    let lo: u32 = a.parse().map_err(|_| "range start must be an integer")?;
    let hi: u32 = b
        .trim_start_matches('=')
        .parse()
        .map_err(|_| "range end must be an integer")?;
    // a reversed range is empty: tables then emit only the header
    Ok((lo, hi))
}

struct TableRow {
    index: String,
    computed: f64,
    closed: f64,
}

fn emit_table(rows: &[TableRow], format: Format, out: &mut Output) {
    match format {
        Format::Csv | Format::Text => {
            out.line("index,computed,closed_form,deviation");
            for r in rows {
                out.line(&format!(
                    "{},{},{},{:e}",
                    r.index,
                    r.computed,
                    r.closed,
                    (r.computed - r.closed).abs()
                ));
            }
        }
        Format::Json => {
            for r in rows {
                out.line(&format!(
                    "{{\"index\":\"{}\",\"computed\":{},\"closed_form\":{},\"deviation\":{:e}}}",
                    r.index,
                    r.computed,
                    r.closed,
                    (r.computed - r.closed).abs()
                ));
            }
        }
    }
}

fn cmd_table(kind: &str, range: &str, family: &str, common: CommonOpts) -> Result<(), String> {
    if common.trunc < 4 {
        return Err("--trunc must be at least 4".into());
    }
    let mut out = Output::new(common.out.clone());
    let q = numeric_q(&parse_q(&common.q)?)?;
    let (lo, hi) = parse_range(range)?;
    let cfg = JacksonConfig::default();
    let mut rows = Vec::new();
    match kind {
        "moments-i" | "moments-I" => {
            let bq = hermite::bq_constant(q, cfg.tail_tol).map_err(|e| e.to_string())?;
            for m in lo..=hi {
                let v = qcalc_core::jackson::jackson_interval(
                    |t| {
                        Complex64::new(t.powi(m as i32), 0.0)
                            * series::gauss_big_g(Complex64::new(t, 0.0), q, 1e-16).unwrap()
                    },
                    -q,
                    q,
                    q,
                    &cfg,
                )
                .map_err(|e| e.to_string())?;
                let closed = if m % 2 == 0 {
                    let n = m / 2;
                    let mut f = 1.0;
                    for j in 0..n {
                        f *= 1.0 - q.powi(2 * j as i32 + 1);
                    }
                    bq * q.powi(2 * n as i32 + 1) * f
                } else {
                    0.0
                };
                rows.push(TableRow {
                    index: m.to_string(),
                    computed: v.re,
                    closed,
                });
            }
        }
        "moments-ii" | "moments-II" => {
            let cq =
                hermite::cq_constant(q, common.gamma, cfg.tail_tol).map_err(|e| e.to_string())?;
            for m in lo..=hi {
                let v = qcalc_core::jackson::jackson_realline(
                    |t| Complex64::new(t.powi(m as i32), 0.0) * hermite::weight_ii(t, q),
                    common.gamma,
                    q,
                    &cfg,
                )
                .map_err(|e| e.to_string())?;
                let closed = if m % 2 == 0 {
                    let n = m / 2;
                    let mut f = 1.0;
                    for j in 0..n {
                        f *= 1.0 - q.powi(2 * j as i32 + 1);
                    }
                    cq * q.powi(-((n * n) as i32)) * f
                } else {
                    0.0
                };
                rows.push(TableRow {
                    index: m.to_string(),
                    computed: v.re,
                    closed,
                });
            }
        }
        "orthogonality" => {
            let fam = match family {
                "I" | "i" | "1" => HermiteFamily::I,
                "II" | "ii" | "2" => HermiteFamily::II,
                other => return Err(format!("family must be I or II, got `{other}`")),
            };
            for m in lo..=hi {
                for n in lo..=hi {
                    let pair =
                        hermite::orthogonality_numeric(fam, m, n, q, common.gamma, &cfg)
                            .map_err(|e| e.to_string())?;
                    rows.push(TableRow {
                        index: format!("{m}:{n}"),
                        computed: pair.computed.re,
                        closed: pair.closed,
                    });
                }
            }
        }
        "fourier-pairs" => {
            let tc = qcalc_core::fourier::TransformConfig::new(q, common.gamma)
                .map_err(|e| e.to_string())?;
            let ys: Vec<Complex64> = (0..9)
                .map(|j| Complex64::new(-2.0 + 0.5 * j as f64, 0.0))
                .collect();
            for n in lo..=hi {
                for class in [
                    qcalc_core::fourier::PairClass::HermiteWeight,
                    qcalc_core::fourier::PairClass::MonomialWeight,
                ] {
                    let r = qcalc_core::fourier::forward_check(
                        class,
                        n,
                        &ys,
                        &tc,
                        ExecMode::default(),
                    )
                    .map_err(|e| e.to_string())?;
                    for row in r.rows {
                        rows.push(TableRow {
                            index: format!(
                                "{}:{}:y={}",
                                match class {
                                    qcalc_core::fourier::PairClass::HermiteWeight => "poly",
                                    qcalc_core::fourier::PairClass::MonomialWeight => "mono",
                                },
                                n,
                                row.point.re
                            ),
                            computed: row.transform.re,
                            closed: row.closed_form.re,
                        });
                    }
                }
            }
        }
        other => {
            return Err(format!(
                "unknown table `{other}`; expected moments-i, moments-ii, orthogonality, \
                 fourier-pairs"
            ))
        }
    }
    emit_table(&rows, common.format, &mut out);
    out.finish()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn q_argument_parses_and_validates() {
        assert!(matches!(parse_q("exact"), Ok(QArg::Exact)));
        assert!(matches!(parse_q("0.5"), Ok(QArg::Numeric(v)) if v == 0.5));
        assert!(parse_q("1.0").is_err());
        assert!(parse_q("0").is_err());
        assert!(parse_q("half").is_err());
    }

    #[test]
    fn ranges_parse_inclusively() {
        assert_eq!(parse_range("0..4").unwrap(), (0, 4));
        assert_eq!(parse_range("2..=7").unwrap(), (2, 7));
        assert_eq!(parse_range("5..2").unwrap(), (5, 2));
        assert!(parse_range("07").is_err());
    }
}
