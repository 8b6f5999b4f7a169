//! Command-line front end. Every subcommand renders to a string so the
//! binary only has to print and pick an exit code.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::channel::{pattern_label, pattern_probability, MarkovChannel};
use crate::codes::{Code, CodeFamily};
use crate::error::{check_unit, Error};
use crate::fidelity::{fidelity_polynomial, FidelityOracle};
use crate::figures::{figure_table, linspace, Figure, Table};
use crate::fixtures::published_polynomial;
use crate::pauli::{basis_label, FlipBasis};
use crate::recovery::{correctable_set, detectable_set, recovery_for};
use crate::threshold::{ThresholdSolver, DEFAULT_TOLERANCE};
use crate::verify;

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_VERIFY: i32 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "qmemory",
    version,
    about = "Correlated-noise memory channels, codes and entanglement fidelity"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FamilyArg {
    Rc,
    Dfs,
}

impl From<FamilyArg> for CodeFamily {
    fn from(f: FamilyArg) -> Self {
        match f {
            FamilyArg::Rc => CodeFamily::Rc,
            FamilyArg::Dfs => CodeFamily::Dfs,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum BasisArg {
    Bit,
    Phase,
}

impl From<BasisArg> for FlipBasis {
    fn from(b: BasisArg) -> Self {
        match b {
            BasisArg::Bit => FlipBasis::Bit,
            BasisArg::Phase => FlipBasis::Phase,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Default)]
pub enum Format {
    #[default]
    Csv,
    Text,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FigureArg {
    Fig1,
    Fig2,
    Fig3,
}

#[derive(Debug, Args)]
pub struct OutputArgs {
    /// Write to this file instead of stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// List the Kraus terms of the correlated channel.
    Kraus {
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value = "bit")]
        basis: BasisArg,
        #[arg(long)]
        mu: Option<f64>,
        #[arg(long)]
        p: Option<f64>,
        #[arg(long, value_enum, default_value = "csv")]
        format: Format,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Detectable and correctable sets and the recovery completeness residual.
    Recovery {
        #[arg(long, value_enum)]
        family: FamilyArg,
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value = "bit")]
        basis: BasisArg,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Entanglement fidelity at a point, or on a grid as CSV (mu, p, value).
    Fidelity {
        #[arg(long, value_enum)]
        family: FamilyArg,
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value = "bit")]
        basis: BasisArg,
        #[arg(long)]
        mu: Option<f64>,
        #[arg(long)]
        p: Option<f64>,
        #[arg(long, default_value_t = 0.0)]
        p_min: f64,
        #[arg(long, default_value_t = 0.5)]
        p_max: f64,
        /// Grid points per swept axis; sweeps every axis not fixed by --mu/--p.
        #[arg(long)]
        steps: Option<usize>,
        /// Evaluate the full restricted-trace double sum instead of the polynomial.
        #[arg(long)]
        oracle: bool,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Canonical text of the fidelity polynomial.
    Poly {
        #[arg(long, value_enum)]
        family: FamilyArg,
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value = "bit")]
        basis: BasisArg,
        /// Print the published polynomial instead of the derived one.
        #[arg(long)]
        fixture: bool,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Correlation threshold where the DFS code overtakes the repetition code.
    Threshold {
        #[arg(long, default_value_t = 4)]
        n: usize,
        #[arg(long)]
        p: Option<f64>,
        #[arg(long)]
        p_min: Option<f64>,
        #[arg(long)]
        p_max: Option<f64>,
        #[arg(long)]
        steps: Option<usize>,
        #[arg(long, default_value_t = DEFAULT_TOLERANCE)]
        tol: f64,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// CSV data for the fidelity and threshold plots.
    Figures {
        #[arg(value_enum)]
        which: FigureArg,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Compare derived polynomials with the published ones.
    Verify,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Self {
            code: EXIT_OK,
            stdout,
            stderr: String::new(),
        }
    }

    fn usage(msg: impl Into<String>) -> Self {
        Self {
            code: EXIT_USAGE,
            stdout: String::new(),
            stderr: msg.into(),
        }
    }
}

/// Twelve significant digits, shortest round-trip rendering, always with a
/// decimal point.
pub fn fmt_num(x: f64) -> String {
    if !x.is_finite() {
        return x.to_string();
    }
    let rounded: f64 = format!("{x:.11e}").parse().expect("valid float");
    let rounded = if rounded == 0.0 { 0.0 } else { rounded };
    let s = rounded.to_string();
    if s.contains('.') {
        s
    } else {
        s + ".0"
    }
}

fn render_csv(table: &Table) -> String {
    let mut out = table.header.join(",");
    out.push('\n');
    for row in &table.rows {
        let cells: Vec<String> = row
            .iter()
            .map(|c| c.map(fmt_num).unwrap_or_default())
            .collect();
        out.push_str(&cells.join(","));
        out.push('\n');
    }
    out
}

fn deliver(text: String, output: &OutputArgs) -> Outcome {
    match &output.out {
        None => Outcome::ok(text),
        Some(path) => match std::fs::write(path, &text) {
            Ok(()) => Outcome::ok(String::new()),
            Err(e) => Outcome::usage(format!("cannot write {}: {e}\n", path.display())),
        },
    }
}

fn cmd_kraus(
    n: usize,
    basis: FlipBasis,
    point: Option<(f64, f64)>,
    format: Format,
) -> Result<String, Error> {
    let channel = match point {
        Some((mu, p)) => MarkovChannel::numeric(n, basis, mu, p)?,
        None => MarkovChannel::symbolic(n, basis)?,
    };
    let mut out = String::new();
    match format {
        Format::Csv => out.push_str("pattern,label,poly,weight\n"),
        Format::Text => {
            let _ = writeln!(
                out,
                "{:<w$}  {:>5}  {:>14}  poly",
                "pattern",
                "label",
                "weight",
                w = n.max(7)
            );
        }
    }
    for term in channel.terms() {
        let pattern = basis_label(n, term.pattern as usize);
        let label = pattern_label(n, term.pattern);
        let weight = point
            .map(|(mu, p)| fmt_num(pattern_probability(n, term.pattern, mu, p)))
            .unwrap_or_default();
        match format {
            Format::Csv => {
                let _ = writeln!(out, "{pattern},{label},{},{weight}", term.poly);
            }
            Format::Text => {
                let _ = writeln!(
                    out,
                    "{pattern:<w$}  {:>5}  {weight:>14}  {}",
                    format!("A'{label}"),
                    term.poly,
                    w = n.max(7)
                );
            }
        }
    }
    Ok(out)
}

fn cmd_recovery(
    family: CodeFamily,
    n: usize,
    basis: FlipBasis,
    format: Format,
) -> Result<String, Error> {
    let code = Code::new(family, n, basis)?;
    let channel = MarkovChannel::symbolic(n, basis)?;
    let join = |labels: Vec<usize>| {
        labels
            .iter()
            .map(|l| l.to_string())
            .collect::<Vec<_>>()
            .join(" ")
    };
    let detectable = join(
        detectable_set(&channel, &code)
            .iter()
            .map(|t| pattern_label(n, t.pattern))
            .collect(),
    );
    let correctable = join(
        correctable_set(&channel, &code)?
            .iter()
            .map(|t| pattern_label(n, t.pattern))
            .collect(),
    );
    let recovery = recovery_for(&channel, &code)?;
    let residual = fmt_num(recovery.completeness_residual());
    let projector = if recovery.includes_orthogonal_projector() {
        "yes"
    } else {
        "no"
    };
    let mut out = String::new();
    match format {
        Format::Text => {
            let _ = writeln!(out, "code: {family} n={n} basis={basis}");
            let _ = writeln!(out, "detectable: {detectable}");
            let _ = writeln!(out, "correctable: {correctable}");
            let _ = writeln!(
                out,
                "recovery operators: {} (orthogonal projector: {projector})",
                recovery.len()
            );
            let _ = writeln!(out, "completeness residual: {residual}");
        }
        Format::Csv => {
            out.push_str("item,value\n");
            let _ = writeln!(out, "detectable,{detectable}");
            let _ = writeln!(out, "correctable,{correctable}");
            let _ = writeln!(out, "operators,{}", recovery.len());
            let _ = writeln!(out, "orthogonal_projector,{projector}");
            let _ = writeln!(out, "completeness_residual,{residual}");
        }
    }
    Ok(out)
}

struct FidelityRequest {
    family: CodeFamily,
    n: usize,
    basis: FlipBasis,
    mu: Option<f64>,
    p: Option<f64>,
    p_range: (f64, f64),
    steps: Option<usize>,
    oracle: bool,
}

fn cmd_fidelity(req: FidelityRequest) -> Result<String, Error> {
    for (name, v) in [("mu", req.mu), ("p", req.p)] {
        if let Some(v) = v {
            check_unit(name, v)?;
        }
    }
    check_unit("p-min", req.p_range.0)?;
    check_unit("p-max", req.p_range.1)?;
    let eval: Box<dyn Fn(f64, f64) -> f64> = if req.oracle {
        let oracle = FidelityOracle::for_code(req.family, req.n, req.basis)?;
        Box::new(move |mu, p| oracle.evaluate(mu, p))
    } else {
        let poly = fidelity_polynomial(req.family, req.n, req.basis)?.poly;
        Box::new(move |mu, p| poly.eval(mu, p))
    };
    match (req.mu, req.p, req.steps) {
        (Some(mu), Some(p), None) => Ok(format!("{}\n", fmt_num(eval(mu, p)))),
        (mu, p, steps) => {
            let steps = steps.unwrap_or(11);
            let mus = mu.map_or_else(|| linspace(0.0, 1.0, steps), |m| vec![m]);
            let ps = p.map_or_else(
                || linspace(req.p_range.0, req.p_range.1, steps),
                |v| vec![v],
            );
            let mut rows = Vec::new();
            for &m in &mus {
                for &q in &ps {
                    rows.push(vec![Some(m), Some(q), Some(eval(m, q))]);
                }
            }
            Ok(render_csv(&Table {
                header: vec!["mu", "p", "value"],
                rows,
            }))
        }
    }
}

fn cmd_threshold(
    n: usize,
    p: Option<f64>,
    range: (Option<f64>, Option<f64>, Option<usize>),
    tol: f64,
) -> Result<Result<String, String>, Error> {
    let solver = ThresholdSolver::new(n)?;
    match (p, range) {
        (Some(p), (None, None, None)) => Ok(Ok(match solver.crossing(p, tol)? {
            Some(c) => format!("{}\n", fmt_num(c.mu_star)),
            None => "none\n".to_string(),
        })),
        (None, (Some(lo), Some(hi), Some(steps))) => {
            let mut rows = Vec::new();
            for p in linspace(lo, hi, steps) {
                let c = solver.crossing(p, tol)?;
                rows.push(vec![
                    Some(p),
                    c.map(|c| c.mu_star),
                    Some(c.map_or(0, |c| c.sign_changes) as f64),
                ]);
            }
            Ok(Ok(render_csv(&Table {
                header: vec!["p", "mu_star", "crossings"],
                rows,
            })))
        }
        _ => Ok(Err(
            "threshold needs either --p or all of --p-min, --p-max and --steps\n".to_string(),
        )),
    }
}

fn paired(mu: Option<f64>, p: Option<f64>) -> Result<Option<(f64, f64)>, String> {
    match (mu, p) {
        (Some(m), Some(p)) => Ok(Some((m, p))),
        (None, None) => Ok(None),
        _ => Err("--mu and --p must be given together\n".into()),
    }
}

fn dispatch(cli: Cli) -> Outcome {
    let wrap = |r: Result<String, Error>, output: &OutputArgs| match r {
        Ok(text) => deliver(text, output),
        Err(e) => Outcome::usage(format!("error: {e}\n")),
    };
    match cli.command {
        Command::Kraus {
            n,
            basis,
            mu,
            p,
            format,
            output,
        } => match paired(mu, p) {
            Ok(point) => wrap(cmd_kraus(n, basis.into(), point, format), &output),
            Err(msg) => Outcome::usage(msg),
        },
        Command::Recovery {
            family,
            n,
            basis,
            format,
            output,
        } => wrap(
            cmd_recovery(family.into(), n, basis.into(), format),
            &output,
        ),
        Command::Fidelity {
            family,
            n,
            basis,
            mu,
            p,
            p_min,
            p_max,
            steps,
            oracle,
            output,
        } => wrap(
            cmd_fidelity(FidelityRequest {
                family: family.into(),
                n,
                basis: basis.into(),
                mu,
                p,
                p_range: (p_min, p_max),
                steps,
                oracle,
            }),
            &output,
        ),
        Command::Poly {
            family,
            n,
            basis,
            fixture,
            output,
        } => {
            let poly = if fixture {
                published_polynomial(family.into(), n)
            } else {
                fidelity_polynomial(family.into(), n, basis.into()).map(|f| f.poly)
            };
            wrap(poly.map(|p| format!("{p}\n")), &output)
        }
        Command::Threshold {
            n,
            p,
            p_min,
            p_max,
            steps,
            tol,
            output,
        } => match cmd_threshold(n, p, (p_min, p_max, steps), tol) {
            Ok(Ok(text)) => deliver(text, &output),
            Ok(Err(msg)) => Outcome::usage(msg),
            Err(e) => Outcome::usage(format!("error: {e}\n")),
        },
        Command::Figures { which, output } => {
            let figure = match which {
                FigureArg::Fig1 => Figure::RepetitionVsMu,
                FigureArg::Fig2 => Figure::RcVsDfs,
                FigureArg::Fig3 => Figure::Threshold,
            };
            wrap(figure_table(figure).map(|t| render_csv(&t)), &output)
        }
        Command::Verify => match verify::run() {
            Ok(report) => Outcome {
                code: if report.passed() {
                    EXIT_OK
                } else {
                    EXIT_VERIFY
                },
                stdout: report.render(),
                stderr: String::new(),
            },
            Err(e) => Outcome {
                code: EXIT_VERIFY,
                stdout: String::new(),
                stderr: format!("error: {e}\n"),
            },
        },
    }
}

/// Parses `args` (including the program name) and runs the subcommand.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => dispatch(cli),
        Err(e) => {
            use clap::error::ErrorKind;
            let text = e.render().to_string();
            match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => Outcome::ok(text),
                _ => Outcome::usage(text),
            }
        }
    }
}
