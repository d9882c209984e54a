//! The `avpoly` command line.
//!
//! Exit codes: 0 success, 1 a negative answer (no tree, functional equation
//! mismatch), 2 invalid input, 3 I/O failure, 4 search budget exhausted.

use std::ffi::OsString;
use std::fs;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};

use clap::{ArgGroup, Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::distribution::{
    asymptotics, check_functional_equation, curve_csv, dist_recurrence, distribution,
    distribution_series, enum_cap_from_env, points_from_poly, Method, RECURRENCE_CAP,
};
use crate::exec::Execution;
use crate::inverse::{
    build_reduction_tree, extract_partition, reduction_poly, solve_general, solve_height2,
    InverseResult, InverseStatus, PartitionSolution, ThreePartitionInstance, DEFAULT_BUDGET,
};
use crate::polyalg::{BivariateSeries, Poly};
use crate::tree::PlaneTree;

pub const EXIT_OK: i32 = 0;
pub const EXIT_NO: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_IO: i32 = 3;
pub const EXIT_BUDGET: i32 = 4;

#[derive(Parser, Debug)]
#[command(
    name = "avpoly",
    version,
    about = "Avalanche polynomials of rooted plane trees"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum Format {
    #[default]
    Json,
    Text,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum MethodArg {
    Enum,
    Rec,
    Closed,
}

impl From<MethodArg> for Method {
    fn from(m: MethodArg) -> Method {
        match m {
            MethodArg::Enum => Method::Enumeration,
            MethodArg::Rec => Method::Recurrence,
            MethodArg::Closed => Method::Closed,
        }
    }
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Label a tree given by its parenthesis encoding.
    Label {
        tree: String,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// The avalanche distribution A_n(q).
    Dist {
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value = "rec")]
        method: MethodArg,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// Exact mean and variance with their asymptotic ratios.
    Moments {
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        n: u64,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// Normalized distribution curve as CSV.
    Curve {
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..=RECURRENCE_CAP as u64))]
        n: u64,
        /// Significant digits per value.
        #[arg(long, default_value_t = 12, value_parser = clap::value_parser!(u64).range(1..=17))]
        precision: u64,
        /// Write here (atomically) instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Find a tree with a given avalanche polynomial.
    Invert(InvertArgs),
    /// Reduction polynomial of a 3-PARTITION instance.
    Reduce(ReduceArgs),
    /// Check the functional equation of A(t, q) through t^order.
    Checkfe {
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..=RECURRENCE_CAP as u64))]
        order: u64,
        /// Corrupt the t^ORDER coefficient first (sensitivity check).
        #[arg(long)]
        perturb: Option<usize>,
    },
}

#[derive(Args, Debug)]
#[command(group(ArgGroup::new("mode").required(true).args(["height2", "general"])))]
pub struct InvertArgs {
    /// Polynomial as text (`q^3 + 2*q^4`) or JSON; `-` reads stdin.
    pub poly: String,
    /// Linear-time solver restricted to trees of height at most 2.
    #[arg(long)]
    pub height2: bool,
    /// Exhaustive backtracking over all trees.
    #[arg(long)]
    pub general: bool,
    /// Child placements allowed before giving up.
    #[arg(long, conflicts_with = "height2")]
    pub budget: Option<u64>,
    #[arg(long, value_enum, default_value_t)]
    pub format: Format,
}

#[derive(Args, Debug)]
pub struct ReduceArgs {
    /// Instance file `{"n":..,"C":..,"a":[..],"lambda":..}`; `-` reads stdin.
    pub instance: String,
    /// Overrides the instance's scale factor.
    #[arg(long)]
    pub lambda: Option<u64>,
    /// Partition (JSON such as `[[1,2,3]]`, or a file holding it) to build the tree from.
    #[arg(long)]
    pub with_partition: Option<String>,
    /// Search for realizing trees and report the partitions they encode.
    #[arg(long, conflicts_with = "with_partition")]
    pub solve: bool,
    /// Child placements allowed for `--solve`.
    #[arg(long)]
    pub budget: Option<u64>,
    #[arg(long, value_enum, default_value_t)]
    pub format: Format,
}

/// A failed command: exit code and message.
#[derive(Debug)]
struct Failure {
    code: i32,
    message: String,
}

fn input_error(message: impl ToString) -> Failure {
    Failure {
        code: EXIT_INPUT,
        message: message.to_string(),
    }
}

fn io_error(context: &str, e: io::Error) -> Failure {
    Failure {
        code: EXIT_IO,
        message: format!("{context}: {e}"),
    }
}

/// Parses `args` (program name first), runs the command and returns the exit
/// code. Output goes to `out`, diagnostics to `err`.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() {
                err.write_all(text.as_bytes())
            } else {
                out.write_all(text.as_bytes())
            };
            return code;
        }
    };
    match execute(cli.command, out, err) {
        Ok(code) => code,
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message);
            f.code
        }
    }
}

fn execute(cmd: Command, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32, Failure> {
    let mut buf = String::new();
    let code = match cmd {
        Command::Label { tree, format } => cmd_label(&tree, format, &mut buf)?,
        Command::Dist { n, method, format } => cmd_dist(n, method.into(), format, &mut buf)?,
        Command::Moments { n, format } => cmd_moments(n as usize, format, &mut buf),
        Command::Curve {
            n,
            precision,
            out: path,
        } => {
            let csv = curve_csv(
                &points_from_poly(&dist_recurrence(n as usize).poly, n as usize),
                precision as usize,
            );
            match path {
                Some(p) => write_atomic(&p, csv.as_bytes())?,
                None => buf = csv,
            }
            EXIT_OK
        }
        Command::Invert(args) => cmd_invert(args, &mut buf, err)?,
        Command::Reduce(args) => cmd_reduce(args, &mut buf, err)?,
        Command::Checkfe { order, perturb } => cmd_checkfe(order as usize, perturb, &mut buf)?,
    };
    out.write_all(buf.as_bytes())
        .map_err(|e| io_error("writing output", e))?;
    Ok(code)
}

fn emit_json(buf: &mut String, value: &Value) {
    buf.push_str(&serde_json::to_string(value).expect("JSON value serializes"));
    buf.push('\n');
}

fn cmd_label(encoding: &str, format: Format, buf: &mut String) -> Result<i32, Failure> {
    let tree = PlaneTree::parse(encoding.trim()).map_err(input_error)?;
    let labeled = tree.label();
    let preorder: Vec<String> = labeled.labels().iter().map(u64::to_string).collect();
    let mut multiset = vec![0];
    multiset.extend(labeled.label_multiset());
    let poly = labeled.avalanche_poly();
    match format {
        Format::Json => emit_json(
            buf,
            &json!({
                "tree": tree.encode(),
                "annotated": labeled.annotated(),
                "labels": multiset,
                "preorder": labeled.labels(),
                "poly": poly,
            }),
        ),
        Format::Text => {
            let sorted: Vec<String> = multiset.iter().map(u64::to_string).collect();
            buf.push_str(&format!(
                "{}\nlabels: {}\npreorder: {}\npoly: {}\n",
                labeled.annotated(),
                sorted.join(","),
                preorder.join(","),
                poly
            ));
        }
    }
    Ok(EXIT_OK)
}

fn cmd_dist(n: usize, method: Method, format: Format, buf: &mut String) -> Result<i32, Failure> {
    let record = distribution(n, method, enum_cap_from_env()).map_err(input_error)?;
    match format {
        Format::Json => emit_json(
            buf,
            &serde_json::to_value(&record).expect("record serializes"),
        ),
        Format::Text => buf.push_str(&format!("{}\n", record.poly)),
    }
    Ok(EXIT_OK)
}

fn cmd_moments(n: usize, format: Format, buf: &mut String) -> i32 {
    let report = asymptotics(n);
    match format {
        Format::Json => emit_json(
            buf,
            &serde_json::to_value(&report).expect("report serializes"),
        ),
        Format::Text => buf.push_str(&format!(
            "n: {}\nmean: {}\nvariance: {}\nmean_ratio: {}\nvariance_ratio: {}\n",
            report.n, report.mean, report.variance, report.mean_ratio, report.variance_ratio
        )),
    }
    EXIT_OK
}

fn read_source(source: &str) -> Result<String, Failure> {
    if source == "-" {
        let mut s = String::new();
        io::stdin()
            .read_to_string(&mut s)
            .map_err(|e| io_error("reading stdin", e))?;
        Ok(s)
    } else {
        fs::read_to_string(source).map_err(|e| io_error(&format!("reading {source}"), e))
    }
}

fn status_name(status: InverseStatus) -> &'static str {
    match status {
        InverseStatus::Found => "found",
        InverseStatus::NoTree => "no_tree",
        InverseStatus::BudgetExhausted => "budget_exhausted",
    }
}

fn status_code(status: InverseStatus) -> i32 {
    match status {
        InverseStatus::Found => EXIT_OK,
        InverseStatus::NoTree => EXIT_NO,
        InverseStatus::BudgetExhausted => EXIT_BUDGET,
    }
}

fn cmd_invert(args: InvertArgs, buf: &mut String, err: &mut dyn Write) -> Result<i32, Failure> {
    let text = if args.poly == "-" {
        read_source("-")?
    } else {
        args.poly.clone()
    };
    let poly = Poly::parse_any(&text).map_err(input_error)?;
    let result: InverseResult = if args.height2 {
        solve_height2(&poly)
    } else {
        solve_general(&poly, args.budget.unwrap_or(DEFAULT_BUDGET))
    }
    .map_err(input_error)?;
    let encodings: Vec<String> = result.trees.iter().map(PlaneTree::encode).collect();
    match args.format {
        Format::Json => emit_json(
            buf,
            &json!({"status": status_name(result.status), "trees": encodings}),
        ),
        Format::Text => {
            for e in &encodings {
                buf.push_str(e);
                buf.push('\n');
            }
            if result.status == InverseStatus::NoTree {
                buf.push_str("NO\n");
            }
        }
    }
    if result.status == InverseStatus::BudgetExhausted {
        let _ = writeln!(err, "budget exhausted; listed trees may be incomplete");
    }
    Ok(status_code(result.status))
}

fn cmd_reduce(args: ReduceArgs, buf: &mut String, err: &mut dyn Write) -> Result<i32, Failure> {
    if args.budget.is_some() && !args.solve {
        return Err(input_error("--budget only applies with --solve"));
    }
    let mut inst =
        ThreePartitionInstance::from_json(&read_source(&args.instance)?).map_err(input_error)?;
    if let Some(l) = args.lambda {
        inst.lambda = l;
        inst.validate().map_err(input_error)?;
    }
    let poly = reduction_poly(&inst).map_err(input_error)?;
    let mut report = json!({
        "instance": inst,
        "poly": poly,
    });
    let mut text = format!("{poly}\n");
    let mut code = EXIT_OK;
    if let Some(spec) = &args.with_partition {
        let raw = if spec.trim_start().starts_with('[') {
            spec.clone()
        } else {
            read_source(spec)?
        };
        let sol: PartitionSolution = serde_json::from_str(&raw)
            .map_err(|e| input_error(format!("invalid partition JSON: {e}")))?;
        let tree = build_reduction_tree(&inst, &sol).map_err(input_error)?;
        report["tree"] = json!(tree.encode());
        report["vertices"] = json!(tree.vertex_count());
        text.push_str(&format!("{}\n", tree.encode()));
    }
    if args.solve {
        if !inst.lambda_separates() {
            let _ = writeln!(
                err,
                "warning: lambda = {} <= 3n; trees need not encode partitions",
                inst.lambda
            );
        }
        let result =
            solve_general(&poly, args.budget.unwrap_or(DEFAULT_BUDGET)).map_err(input_error)?;
        let mut partitions = Vec::new();
        for t in &result.trees {
            match extract_partition(t, &inst) {
                Ok(sol) => partitions.push(sol.normalized()),
                Err(e) => {
                    return Err(Failure {
                        code: EXIT_NO,
                        message: format!("tree {t} realizes the polynomial but {e}"),
                    })
                }
            }
        }
        partitions.sort_by(|a, b| a.groups.cmp(&b.groups));
        partitions.dedup();
        report["status"] = json!(status_name(result.status));
        report["partitions"] = json!(partitions);
        if partitions.is_empty() && result.status == InverseStatus::NoTree {
            text.push_str("NO\n");
        }
        for p in &partitions {
            text.push_str(&serde_json::to_string(p).expect("partition serializes"));
            text.push('\n');
        }
        code = status_code(result.status);
    }
    match args.format {
        Format::Json => emit_json(buf, &report),
        Format::Text => buf.push_str(&text),
    }
    Ok(code)
}

fn cmd_checkfe(order: usize, perturb: Option<usize>, buf: &mut String) -> Result<i32, Failure> {
    let mut series = distribution_series(order, Execution::default());
    if let Some(p) = perturb {
        if p > order {
            return Err(input_error(format!(
                "--perturb {p} is beyond --order {order}"
            )));
        }
        let mut coeffs = series.coeffs().to_vec();
        coeffs[p] = &coeffs[p] + &Poly::monomial(1, 1);
        series = BivariateSeries::from_coeffs(coeffs);
    }
    match check_functional_equation(&series) {
        Ok(()) => {
            buf.push_str(&format!("ok through t^{order}\n"));
            Ok(EXIT_OK)
        }
        Err(p) => {
            buf.push_str(&format!("mismatch at order {p}\n"));
            Ok(EXIT_NO)
        }
    }
}

/// Writes through a temporary file in the same directory, then renames.
fn write_atomic(path: &Path, bytes: &[u8]) -> Result<(), Failure> {
    let dir = match path.parent() {
        Some(d) if !d.as_os_str().is_empty() => d.to_path_buf(),
        _ => PathBuf::from("."),
    };
    let name = path
        .file_name()
        .ok_or_else(|| input_error(format!("{} is not a file path", path.display())))?;
    let mut tmp_name = OsString::from(".");
    tmp_name.push(name);
    tmp_name.push(format!(".{}.tmp", std::process::id()));
    let tmp = dir.join(tmp_name);
    let result = (|| {
        let mut f = fs::File::create(&tmp)?;
        f.write_all(bytes)?;
        f.sync_all()?;
        fs::rename(&tmp, path)
    })();
    result.map_err(|e| {
        let _ = fs::remove_file(&tmp);
        io_error(&format!("writing {}", path.display()), e)
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn call(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let mut full = vec!["avpoly"];
        full.extend_from_slice(args);
        let code = run(full, &mut out, &mut err);
        (
            code,
            String::from_utf8(out).unwrap(),
            String::from_utf8(err).unwrap(),
        )
    }

    #[test]
    fn label_text() {
        let (code, out, _) = call(&["label", "((()))", "--format", "text"]);
        assert_eq!(code, 0);
        assert_eq!(
            out,
            "(0(2(3)))\nlabels: 0,2,3\npreorder: 0,2,3\npoly: q^2 + q^3\n"
        );
        let (_, out, _) = call(&["label", "()", "--format", "text"]);
        assert!(out.contains("labels: 0\n"));
    }

    #[test]
    fn label_json() {
        let (code, out, _) = call(&["label", "((()))"]);
        assert_eq!(code, 0);
        assert_eq!(
            out,
            "{\"annotated\":\"(0(2(3)))\",\"labels\":[0,2,3],\"poly\":[[2,\"1\"],[3,\"1\"]],\"preorder\":[0,2,3],\"tree\":\"((()))\"}\n"
        );
        assert_eq!(call(&["label", "(()"]).0, EXIT_INPUT);
    }

    #[test]
    fn conflicting_flags() {
        assert_eq!(
            call(&["invert", "q", "--height2", "--general"]).0,
            EXIT_INPUT
        );
        assert_eq!(call(&["invert", "q"]).0, EXIT_INPUT);
        assert_eq!(
            call(&["invert", "q", "--height2", "--budget", "5"]).0,
            EXIT_INPUT
        );
        assert_eq!(call(&["moments", "--n", "0"]).0, EXIT_INPUT);
        assert_eq!(
            call(&["dist", "--n", "3", "--method", "fast"]).0,
            EXIT_INPUT
        );
        assert_eq!(call(&["--help"]).0, EXIT_OK);
    }

    #[test]
    fn perturbation_beyond_order() {
        assert_eq!(
            call(&["checkfe", "--order", "2", "--perturb", "3"]).0,
            EXIT_INPUT
        );
    }
}
