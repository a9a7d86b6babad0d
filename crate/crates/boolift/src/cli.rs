//! Command-line surface: seven subcommands mapping onto the library
//! modules, reporting through [`crate::report::Report`].
//!
//! Exit codes: 0 success, 1 verification failure, 2 usage or parameter
//! error, 3 resource cap exceeded.

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::bf::ComposedFunction;
use crate::comm::{
    comm_matrix, gadget_property_check, ip_shattering_witness, klauck_bound, lift_audit,
    matrix_rank, one_way_cc, one_way_cc_partial, shattering_check, vc_dim_bruteforce, VcBound,
};
use crate::error::{Error, Result};
use crate::families::{agr, br_enumerate, br_size, intersecting_check, largeq_check, packing_check};
use crate::patterns::pattern_complexity;
use crate::query::{alternating_number, naadt_exact, napdt_exact, nonadaptive_dt, symmetric_naadt, symmetric_naadt_eval};
use crate::report::{OutputFormat, Report};
use crate::spec::{FunctionSpec, GadgetSpec};
use crate::suite::{all_passed, run_suite, Level};
use crate::transforms::{fourier_sparsity, mobius_spectrum, FourierConvention};
use crate::Caps;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum FormatArg {
    Json,
    Csv,
    Text,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum LevelArg {
    Fast,
    Full,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ModelArg {
    /// Non-adaptive decision tree over single variables.
    Ddt,
    /// Non-adaptive AND decision tree.
    Naadt,
    /// Non-adaptive parity decision tree.
    Napdt,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum FamilyOp {
    /// List the ball family's members.
    Enumerate,
    /// Exact member count of the ball family.
    Size,
    /// Extremal intersecting-family size at the best radius.
    Agr,
    /// Pairwise agreement scan of the ball family.
    Intersecting,
    /// Exact packing bound comparison.
    Packing,
    /// Exact large-alphabet bound comparison.
    Largeq,
}

#[derive(Debug, Parser)]
#[command(
    name = "boolift",
    about = "Exact analysis of Boolean functions and their two-party compositions",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = FormatArg::Json)]
    format: FormatArg,

    /// Seed for every randomized construction.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,

    /// Cap on matrix and enumeration cells.
    #[arg(long, global = true)]
    cap_cells: Option<u64>,

    /// Cap on the exact-rank dimension.
    #[arg(long, global = true)]
    cap_rank: Option<usize>,

    /// Cap on search and scan work units.
    #[arg(long, global = true)]
    cap_search: Option<u64>,

    /// Error probability for the entropy-based one-way bound.
    #[arg(long, global = true, default_value_t = 1.0 / 3.0)]
    eps: f64,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Evaluate a function, or print its table without --input.
    Eval {
        #[arg(long)]
        spec: String,
        /// Input point (decimal, 0x hex, or 0b binary).
        #[arg(long)]
        input: Option<String>,
    },
    /// Spectral and structural measures of one function.
    Analyze {
        #[arg(long)]
        spec: String,
        /// Comma list: spar,fourier,patterns,switch,alternating (default all).
        #[arg(long)]
        measures: Option<String>,
    },
    /// Two-party measures of an outer function composed with a gadget.
    Compose {
        #[arg(long)]
        spec: String,
        #[arg(long)]
        gadget: String,
        /// Comma list: oneway,rank,vc,klauck,shatter,gadget,lift (default oneway,rank).
        #[arg(long)]
        measures: Option<String>,
    },
    /// Exact non-adaptive query complexity under one model.
    Query {
        #[arg(long)]
        spec: String,
        #[arg(long, value_enum)]
        model: ModelArg,
    },
    /// Randomized AND-query plan for a symmetric function.
    SymmetricNaadt {
        #[arg(long)]
        spec: String,
    },
    /// q-ary ball families: enumeration, counting, and exact bounds.
    Families {
        #[arg(long, value_enum)]
        op: FamilyOp,
        #[arg(long)]
        q: u32,
        #[arg(long)]
        n: u32,
        #[arg(long, default_value_t = 1)]
        d: u32,
        /// Window radius; defaults to the extremal radius where one exists.
        #[arg(long)]
        r: Option<u32>,
    },
    /// Run the self-verification suite; exits 1 if any item fails.
    Verify {
        /// Suite to run; `claims` covers the library's stated bounds.
        #[arg(long, default_value = "claims")]
        suite: String,
        #[arg(long, value_enum, default_value_t = LevelArg::Fast)]
        level: LevelArg,
    },
}

/// Entry point used by the binary: parses, runs, prints, and returns the
/// process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    let format = match cli.format {
        FormatArg::Json => OutputFormat::Json,
        FormatArg::Csv => OutputFormat::Csv,
        FormatArg::Text => OutputFormat::Text,
    };
    let mut caps = Caps::default();
    if let Some(cells) = cli.cap_cells {
        caps.matrix_cells = cells;
        caps.enum_cells = cells;
    }
    if let Some(dim) = cli.cap_rank {
        caps.rank_dim = dim;
    }
    if let Some(work) = cli.cap_search {
        caps.work = work;
    }
    match dispatch(&cli, &caps) {
        Ok((report, code)) => {
            // A closed pipe on the reading side is not an error.
            use std::io::Write;
            let _ = writeln!(std::io::stdout().lock(), "{}", report.render(format).trim_end());
            code
        }
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

fn dispatch(cli: &Cli, caps: &Caps) -> Result<(Report, i32)> {
    match &cli.command {
        Command::Eval { spec, input } => cmd_eval(spec, input.as_deref()).map(|r| (r, 0)),
        Command::Analyze { spec, measures } => {
            cmd_analyze(spec, measures.as_deref(), caps).map(|r| (r, 0))
        }
        Command::Compose { spec, gadget, measures } => {
            cmd_compose(spec, gadget, measures.as_deref(), cli.eps, caps).map(|r| (r, 0))
        }
        Command::Query { spec, model } => cmd_query(spec, *model, caps).map(|r| (r, 0)),
        Command::SymmetricNaadt { spec } => {
            cmd_symmetric(spec, cli.seed, caps).map(|r| (r, 0))
        }
        Command::Families { op, q, n, d, r } => {
            cmd_families(*op, *q, *n, *d, *r, caps).map(|r| (r, 0))
        }
        Command::Verify { suite, level } => cmd_verify(suite, *level, cli.seed, caps),
    }
}

fn parse_point(text: &str, arity: u32) -> Result<u32> {
    let parsed = if let Some(hex) = text.strip_prefix("0x") {
        u32::from_str_radix(hex, 16)
    } else if let Some(bin) = text.strip_prefix("0b") {
        u32::from_str_radix(bin, 2)
    } else {
        text.parse()
    };
    let x = parsed.map_err(|_| Error::BadParams(format!("cannot parse input `{text}`")))?;
    if arity < 32 && x >= 1 << arity {
        return Err(Error::BadParams(format!("input {x:#x} has more than {arity} bits")));
    }
    Ok(x)
}

fn cmd_eval(spec: &str, input: Option<&str>) -> Result<Report> {
    let f = FunctionSpec::parse(spec)?.build()?;
    let mut report = Report::new("eval");
    report.input("spec", spec);
    report.result("arity", f.arity());
    report.result("total", f.is_total());
    match input {
        Some(text) => {
            let x = parse_point(text, f.arity())?;
            report.input("point", x);
            if f.is_defined(x) {
                report.result("defined", true);
                report.result("value", f.value_unchecked(x) as u8);
            } else {
                report.result("defined", false);
                report.result("value", Value::Null);
                report.warn("the point is outside the function's domain");
            }
        }
        None => {
            report.result("table", f.table_string());
        }
    }
    Ok(report)
}

fn split_measures(text: Option<&str>, default: &[&str], allowed: &[&str]) -> Result<Vec<String>> {
    let list: Vec<String> = match text {
        None => default.iter().map(|s| s.to_string()).collect(),
        Some(t) => t.split(',').map(|s| s.trim().to_string()).collect(),
    };
    for m in &list {
        if !allowed.contains(&m.as_str()) {
            return Err(Error::BadParams(format!(
                "unknown measure `{m}`; expected one of {}",
                allowed.join(", ")
            )));
        }
    }
    Ok(list)
}

fn cmd_analyze(spec: &str, measures: Option<&str>, caps: &Caps) -> Result<Report> {
    let f = FunctionSpec::parse(spec)?.build()?;
    let all = ["spar", "fourier", "patterns", "switch", "alternating"];
    let wanted = split_measures(measures, &all, &all)?;
    let explicit = measures.is_some();
    let mut report = Report::new("analyze");
    report.input("spec", spec);
    report.input("arity", f.arity());
    for m in &wanted {
        match m.as_str() {
            "spar" => {
                let s = mobius_spectrum(&f)?;
                report.result("spar", s.sparsity());
                report.result(
                    "support",
                    Value::Array(s.pairs_hex().into_iter().map(|(h, _)| h.into()).collect()),
                );
            }
            "fourier" => {
                report.result("fourier_zero_one", fourier_sparsity(&f, FourierConvention::ZeroOne)?);
                report
                    .result("fourier_plus_minus", fourier_sparsity(&f, FourierConvention::PlusMinus)?);
            }
            "patterns" => {
                report.result("patterns", pattern_complexity(&f, caps)?);
            }
            "switch" => match f.switch_value() {
                Ok(k) => {
                    report.result("switch", k);
                }
                Err(e) if explicit => return Err(e),
                Err(_) => {
                    report.warn("switch skipped: the function is not symmetric and non-constant");
                }
            },
            "alternating" => {
                report.result("alternating", alternating_number(&f)?);
            }
            _ => unreachable!(),
        }
    }
    Ok(report)
}

fn cmd_compose(
    spec: &str,
    gadget: &str,
    measures: Option<&str>,
    eps: f64,
    caps: &Caps,
) -> Result<Report> {
    let f = FunctionSpec::parse(spec)?.build()?;
    let gspec = GadgetSpec::parse(gadget)?;
    let g = gspec.build()?;
    let cf = ComposedFunction::new(f.clone(), g.clone(), caps)?;
    let m = comm_matrix(&cf, caps)?;
    let allowed = ["oneway", "rank", "vc", "klauck", "shatter", "gadget", "lift"];
    let wanted = split_measures(measures, &["oneway", "rank"], &allowed)?;
    let mut report = Report::new("compose");
    report.input("spec", spec);
    report.input("gadget", gadget);
    report.input("rows", m.row_count() as u64);
    report.input("cols", m.col_count() as u64);
    let mut cached_vc: Option<VcBound> = None;
    for measure in &wanted {
        match measure.as_str() {
            "oneway" => {
                if m.is_total() {
                    report.result("oneway", one_way_cc(&m)?);
                } else {
                    let pc = one_way_cc_partial(&m, caps)?;
                    report.result("oneway", pc.bits);
                    report.result("chromatic", pc.chromatic);
                }
            }
            "rank" => {
                report.result("rank", matrix_rank(&m, caps)?);
            }
            "vc" | "klauck" => {
                let vc = match cached_vc {
                    Some(v) => v,
                    None => {
                        let v = vc_dim_bruteforce(&m, m.row_bits(), caps)?;
                        cached_vc = Some(v);
                        v
                    }
                };
                if measure == "vc" {
                    match vc {
                        VcBound::Exact(d) => {
                            report.result("vc", d);
                            report.result("vc_exact", true);
                        }
                        VcBound::AtLeast(d) => {
                            report.result("vc", d);
                            report.result("vc_exact", false);
                        }
                    }
                } else {
                    report.input("eps", eps);
                    report.result("klauck", klauck_bound(vc.lower(), eps, false)?);
                    report.result("klauck_entangled", klauck_bound(vc.lower(), eps, true)?);
                }
            }
            "shatter" => {
                let GadgetSpec::Ip(b) = gspec else {
                    return Err(Error::BadParams(
                        "the shattering witness is built for ip:b gadgets".into(),
                    ));
                };
                let w = ip_shattering_witness(&f, b, caps)?;
                report.result("shatter_columns", json!(w.columns()));
                report.result("shattered", shattering_check(&m, w.columns(), caps)?);
            }
            "gadget" => match gadget_property_check(&g, caps)? {
                Some(triple) => {
                    report.result("cross_complete", true);
                    report.result("cross_witness", json!(triple));
                }
                None => {
                    report.result("cross_complete", false);
                }
            },
            "lift" => {
                let GadgetSpec::Ip(b) = gspec else {
                    return Err(Error::BadParams(
                        "the message audit is built for ip:b gadgets".into(),
                    ));
                };
                report.result_object("lift", &lift_audit(&f, b, caps)?);
            }
            _ => unreachable!(),
        }
    }
    Ok(report)
}

fn cmd_query(spec: &str, model: ModelArg, caps: &Caps) -> Result<Report> {
    let f = FunctionSpec::parse(spec)?.build()?;
    let mut report = Report::new("query");
    report.input("spec", spec);
    match model {
        ModelArg::Ddt => {
            report.input("model", "ddt");
            let (count, mask) = nonadaptive_dt(&f, caps)?;
            report.result("queries", count);
            report.result("variables", json!(crate::bits::mask_to_vars(mask)));
        }
        ModelArg::Naadt => {
            report.input("model", "naadt");
            let (count, family) = naadt_exact(&f, caps)?;
            report.result("queries", count);
            report.result("sets", json!(family.hex_sets()));
        }
        ModelArg::Napdt => {
            report.input("model", "napdt");
            let (count, family) = napdt_exact(&f, caps)?;
            report.result("queries", count);
            report.result("sets", json!(family.hex_sets()));
        }
    }
    Ok(report)
}

fn cmd_symmetric(spec: &str, seed: u64, caps: &Caps) -> Result<Report> {
    let f = FunctionSpec::parse(spec)?.build()?;
    let plan = symmetric_naadt(&f, seed, caps)?;
    let agrees = (0..1u32 << f.arity()).all(|x| symmetric_naadt_eval(&plan, x) == f.value_unchecked(x));
    let mut report = Report::new("symmetric-naadt");
    report.input("spec", spec);
    report.input("seed", seed);
    report.result("switch", plan.k);
    report.result("queries", plan.family.sets.len() as u64);
    report.result("attempts", plan.attempts);
    report.result("agrees", agrees);
    report.result("sets", json!(plan.family.hex_sets()));
    Ok(report)
}

/// Radius used when `--r` is omitted: the extremal one where it is defined
/// (q >= 3, d >= 1), zero otherwise.
fn default_radius(q: u32, d: u32) -> u32 {
    if q >= 3 && d >= 1 {
        (d - 1) / (q - 2)
    } else {
        0
    }
}

fn cmd_families(op: FamilyOp, q: u32, n: u32, d: u32, r: Option<u32>, caps: &Caps) -> Result<Report> {
    let mut report = Report::new("families");
    report.input("q", q);
    report.input("n", n);
    report.input("d", d);
    let r = r.unwrap_or_else(|| default_radius(q, d));
    match op {
        FamilyOp::Enumerate => {
            report.input("r", r);
            let fam = br_enumerate(q, n, d, r, caps)?;
            report.result("size", fam.len() as u64);
            report.result("members", fam.digit_strings().join("\n"));
        }
        FamilyOp::Size => {
            report.input("r", r);
            report.result("size", br_size(q, n, d, r)?.to_string());
        }
        FamilyOp::Agr => {
            report.input("r", r);
            report.result("size", agr(q, n, d)?.to_string());
        }
        FamilyOp::Intersecting => {
            report.input("r", r);
            let fam = br_enumerate(q, n, d, r, caps)?;
            let outcome = intersecting_check(&fam, d, caps)?;
            report.result("size", fam.len() as u64);
            report.result("intersecting", outcome.ok);
            if let Some((i, j)) = outcome.violation {
                let strings = fam.digit_strings();
                report.result("violation", json!([strings[i], strings[j]]));
            }
        }
        FamilyOp::Packing => {
            report.result("holds", packing_check(q, n, d)?);
        }
        FamilyOp::Largeq => {
            report.result("holds", largeq_check(q, n, d)?);
        }
    }
    Ok(report)
}

fn cmd_verify(suite: &str, level: LevelArg, seed: u64, caps: &Caps) -> Result<(Report, i32)> {
    if suite != "claims" {
        return Err(Error::BadParams(format!("unknown suite `{suite}`; available: claims")));
    }
    let level = match level {
        LevelArg::Fast => Level::Fast,
        LevelArg::Full => Level::Full,
    };
    let outcomes = run_suite(level, seed, caps);
    let passed = all_passed(&outcomes);
    let mut report = Report::new("verify");
    report.input("suite", suite);
    report.input("level", if level == Level::Fast { "fast" } else { "full" });
    report.input("seed", seed);
    report.result("passed", passed);
    for o in &outcomes {
        report.result(
            o.id,
            json!({
                "title": o.title,
                "passed": o.passed,
                "details": o.details,
                "millis": o.millis as u64,
            }),
        );
    }
    Ok((report, if passed { 0 } else { 1 }))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_report(args: &[&str]) -> Result<(Report, i32)> {
        let cli = Cli::try_parse_from(args).expect("args parse");
        let caps = Caps::default();
        dispatch(&cli, &caps)
    }

    #[test]
    fn compose_oneway_matches_direct_computation() {
        let (report, code) = run_report(&[
            "boolift", "compose", "--spec", "omb:5", "--gadget", "and", "--measures", "oneway",
        ])
        .unwrap();
        assert_eq!(code, 0);
        assert_eq!(report.results["oneway"], json!(3));
    }

    #[test]
    fn analyze_reports_addressing_sparsity() {
        let (report, _) = run_report(&[
            "boolift", "analyze", "--spec", "addr:4", "--measures", "spar",
        ])
        .unwrap();
        assert_eq!(report.results["spar"], json!(9));
    }

    #[test]
    fn eval_checks_domain_membership() {
        let (report, _) =
            run_report(&["boolift", "eval", "--spec", "ombp:3", "--input", "0b100"]).unwrap();
        assert_eq!(report.results["defined"], json!(true));
        assert_eq!(report.results["value"], json!(0));
        let (outside, _) =
            run_report(&["boolift", "eval", "--spec", "ombp:3", "--input", "3"]).unwrap();
        assert_eq!(outside.results["defined"], json!(false));
        assert!(!outside.warnings.is_empty());
    }

    #[test]
    fn query_models_agree_with_library_search() {
        let (report, _) =
            run_report(&["boolift", "query", "--spec", "omb:3", "--model", "naadt"]).unwrap();
        assert_eq!(report.results["queries"], json!(3));
    }

    #[test]
    fn families_size_uses_decimal_strings() {
        let (report, _) = run_report(&[
            "boolift", "families", "--op", "size", "--q", "3", "--n", "9", "--d", "3",
        ])
        .unwrap();
        assert_eq!(report.inputs["r"], json!(2));
        assert_eq!(report.results["size"], json!("891"));
    }

    #[test]
    fn unknown_measures_are_usage_errors() {
        let err = run_report(&["boolift", "analyze", "--spec", "omb:3", "--measures", "magic"])
            .unwrap_err();
        assert_eq!(err.exit_code(), 2);
    }

    #[test]
    fn cap_errors_exit_three() {
        let cli = Cli::try_parse_from([
            "boolift",
            "--cap-cells",
            "4",
            "compose",
            "--spec",
            "omb:5",
            "--gadget",
            "and",
        ])
        .unwrap();
        let mut caps = Caps::default();
        caps.matrix_cells = 4;
        let err = dispatch(&cli, &caps).unwrap_err();
        assert_eq!(err.exit_code(), 3);
    }
}
