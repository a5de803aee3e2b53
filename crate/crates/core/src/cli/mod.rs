//! Command-line front end: `family`, `verify` and `dist`.
//!
//! [`run`] takes the argument list and returns the process exit code:
//! 0 on success, 1 when an asserted identity fails verification, 2 on any
//! usage or validation error. Standard output is written only on success.

mod output;

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::coeff::{Coefficient, Mode};
use crate::dist::{AgingClass, Classification, Ghg, GhgParams, MomentKind, NormalizerMethod};
use crate::error::{Error, Result};
use crate::families::{unified_series, UnifiedParams};
use crate::identity::{run_suite, SuiteSpec};

pub use output::{Format, Table};

#[derive(Debug, Parser)]
#[command(name = "hermite-genocchi", version, about = "Unified Apostol Hermite-Genocchi polynomials and the GHG distribution")]
pub struct Cli {
    #[command(flatten)]
    pub config: RunConfig,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    Exact,
    Float,
}

/// Flags shared by every subcommand.
#[derive(Debug, Args)]
pub struct RunConfig {
    /// Coefficient field (family default: exact; dist always runs in float)
    #[arg(long, global = true, value_enum)]
    pub mode: Option<ModeArg>,
    /// Float precision in bits
    #[arg(long, global = true, default_value_t = Mode::DEFAULT_PRECISION)]
    pub precision: u32,
    /// Series truncation order
    #[arg(long, global = true)]
    pub order: Option<usize>,
    /// Relative tail tolerance for infinite sums
    #[arg(long, global = true)]
    pub epsilon: Option<f64>,
    #[arg(long, global = true, value_enum, default_value = "json")]
    pub format: Format,
    /// Seed for sampled verification points
    #[arg(long, global = true)]
    pub seed: Option<u64>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate the unified family
    #[command(subcommand)]
    Family(FamilyCommand),
    /// Check identities over a suite of seeded points
    Verify(VerifyArgs),
    /// GHG distribution computations
    #[command(subcommand)]
    Dist(DistCommand),
}

#[derive(Debug, Subcommand)]
pub enum FamilyCommand {
    /// One value M_n
    Eval {
        #[command(flatten)]
        params: FamilyArgs,
        #[arg(long)]
        n: usize,
    },
    /// Values M_0 .. M_{n-max}
    Table {
        #[command(flatten)]
        params: FamilyArgs,
        #[arg(long = "n-max")]
        n_max: usize,
    },
}

#[derive(Debug, Args)]
pub struct FamilyArgs {
    #[arg(long)]
    pub r: Option<usize>,
    #[arg(long, default_value_t = 0)]
    pub k: u32,
    #[arg(long = "lnA", default_value = "0", allow_hyphen_values = true)]
    pub ln_a: String,
    #[arg(long = "lnB", default_value = "1", allow_hyphen_values = true)]
    pub ln_b: String,
    #[arg(long = "lnC", default_value = "1", allow_hyphen_values = true)]
    pub ln_c: String,
    /// Comma-separated alpha_0, ..., alpha_{r-1}
    #[arg(long, allow_hyphen_values = true)]
    pub alphas: String,
    #[arg(long, default_value = "0", allow_hyphen_values = true)]
    pub x: String,
    #[arg(long, default_value = "0", allow_hyphen_values = true)]
    pub y: String,
    /// Degree of the Hermite term y t^m
    #[arg(long, default_value_t = 2)]
    pub m: usize,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// Suite file; the bundled default suite when omitted
    pub suite: Option<PathBuf>,
    /// Write the full report array here
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct DistArgs {
    /// JSON parameter file {r, m, alphas, gamma, beta, n, epsilon?}
    #[arg(long, conflicts_with_all = ["alphas", "gamma", "beta", "n", "m"])]
    pub params: Option<PathBuf>,
    #[arg(long, allow_hyphen_values = true)]
    pub alphas: Option<String>,
    #[arg(long)]
    pub m: Option<usize>,
    #[arg(long, allow_hyphen_values = true)]
    pub gamma: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub beta: Option<String>,
    #[arg(long)]
    pub n: Option<usize>,
}

#[derive(Debug, Subcommand)]
pub enum DistCommand {
    /// Probability mass at a lattice point
    Pmf {
        #[command(flatten)]
        params: DistArgs,
        /// Comma-separated coordinates
        #[arg(long)]
        x: String,
    },
    /// Marginal P(X_i <= x), direct and closed forms
    Cdf {
        #[command(flatten)]
        params: DistArgs,
        #[arg(long, default_value_t = 0)]
        coord: usize,
        #[arg(long)]
        x: u64,
    },
    /// Mean, variance and moments of one coordinate
    Moments {
        #[command(flatten)]
        params: DistArgs,
        #[arg(long, default_value_t = 0)]
        coord: usize,
        /// Highest moment order
        #[arg(long = "max-ell", default_value_t = 2)]
        max_ell: u32,
        #[arg(long, default_value = "raw")]
        kind: String,
    },
    /// P(X >= x) by the closed form and by direct summation
    Reliability {
        #[command(flatten)]
        params: DistArgs,
        #[arg(long)]
        x: String,
    },
    /// Hazard rates h_i(x)
    Hazard {
        #[command(flatten)]
        params: DistArgs,
        #[arg(long)]
        x: String,
    },
    /// Aging class on the grid [0, grid)^r
    Classify {
        #[command(flatten)]
        params: DistArgs,
        #[arg(long)]
        class: String,
        #[arg(long, default_value_t = 6)]
        grid: u64,
    },
    /// Normalizing constant B
    Normalizer {
        #[command(flatten)]
        params: DistArgs,
        #[arg(long, default_value = "series")]
        method: String,
    },
}

/// Parses `args` (program name first), runs the command and returns the exit
/// code. `out` receives the result only when the command succeeds.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = out.write_all(text.as_bytes());
                    0
                }
                _ => {
                    let _ = err.write_all(text.as_bytes());
                    2
                }
            };
        }
    };
    let mut buffer = Vec::new();
    match execute(&cli, &mut buffer) {
        Ok(code) => {
            if out.write_all(&buffer).is_err() {
                return 2;
            }
            code
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            2
        }
    }
}

/// Runs a parsed command, writing its output into `out`, and returns the
/// exit code for a successful run (0, or 1 for a failed verification).
pub fn execute(cli: &Cli, out: &mut Vec<u8>) -> Result<i32> {
    let cfg = &cli.config;
    if let Some(eps) = cfg.epsilon {
        if !(eps > 0.0 && eps < 1.0) {
            return Err(Error::invalid("--epsilon", "must lie in (0, 1)"));
        }
    }
    if cfg.order == Some(0) {
        return Err(Error::invalid("--order", "must be at least 1"));
    }
    match &cli.command {
        Command::Family(cmd) => family(cfg, cmd, out),
        Command::Verify(args) => verify(cfg, args, out),
        Command::Dist(cmd) => dist(cfg, cmd, out),
    }
}

fn field(cfg: &RunConfig, default: ModeArg) -> Result<Mode> {
    match cfg.mode.unwrap_or(default) {
        ModeArg::Exact => Ok(Mode::Exact),
        ModeArg::Float => Mode::float(cfg.precision).map_err(|_| {
            Error::invalid("--precision", format!("must be at least {} bits", Mode::MIN_PRECISION))
        }),
    }
}

fn parse_flag(flag: &str, text: &str, mode: Mode) -> Result<Coefficient> {
    Coefficient::parse(text, mode).map_err(|e| Error::invalid(flag, e.to_string()))
}

fn parse_list(flag: &str, text: &str, mode: Mode) -> Result<Vec<Coefficient>> {
    let items: Vec<&str> = text.split(',').map(str::trim).collect();
    if items.iter().any(|s| s.is_empty()) {
        return Err(Error::invalid(flag, format!("malformed list `{text}`")));
    }
    items.iter().map(|s| parse_flag(flag, s, mode)).collect()
}

fn parse_point(text: &str) -> Result<Vec<u64>> {
    text.split(',')
        .map(|s| {
            s.trim()
                .parse::<u64>()
                .map_err(|_| Error::invalid("--x", format!("`{text}` is not a list of nonnegative integers")))
        })
        .collect()
}

fn family_params(args: &FamilyArgs, mode: Mode) -> Result<UnifiedParams> {
    let alphas = parse_list("--alphas", &args.alphas, mode)?;
    if let Some(r) = args.r {
        if r != alphas.len() {
            return Err(Error::invalid(
                "--alphas",
                format!("--r {r} needs {r} values, got {}", alphas.len()),
            ));
        }
    }
    let p = UnifiedParams {
        k: args.k,
        ln_a: parse_flag("--lnA", &args.ln_a, mode)?,
        ln_b: parse_flag("--lnB", &args.ln_b, mode)?,
        ln_c: parse_flag("--lnC", &args.ln_c, mode)?,
        alphas,
        x: parse_flag("--x", &args.x, mode)?,
        y: parse_flag("--y", &args.y, mode)?,
        hermite_degree: args.m,
        mode,
    };
    p.validate()?;
    Ok(p)
}

fn family(cfg: &RunConfig, cmd: &FamilyCommand, out: &mut Vec<u8>) -> Result<i32> {
    let mode = field(cfg, ModeArg::Exact)?;
    let (args, lo, hi) = match cmd {
        FamilyCommand::Eval { params, n } => (params, *n, *n),
        FamilyCommand::Table { params, n_max } => (params, 0, *n_max),
    };
    let p = family_params(args, mode)?;
    let order = cfg.order.unwrap_or(hi.max(1));
    if hi > order {
        return Err(Error::invalid("--order", format!("degree {hi} exceeds truncation order {order}")));
    }
    let values: Vec<Coefficient> = if order < p.leading_order() {
        vec![Coefficient::zero(mode); order + 1]
    } else {
        let s = unified_series(&p, order)?;
        (0..=order).map(|n| s.egf_coeff(n)).collect::<Result<_>>()?
    };
    let table = match cmd {
        FamilyCommand::Eval { n, .. } => Table::record(vec![
            ("n".into(), n.to_string()),
            ("value".into(), values[*n].to_string()),
        ]),
        FamilyCommand::Table { .. } => {
            let mut table = Table::new(["n", "value"]);
            for (n, v) in values.iter().enumerate().take(hi + 1).skip(lo) {
                table.push(vec![n.to_string(), v.to_string()]);
            }
            table
        }
    };
    table.render(cfg.format, out)?;
    Ok(0)
}

fn verify(cfg: &RunConfig, args: &VerifyArgs, out: &mut Vec<u8>) -> Result<i32> {
    let mut spec = match &args.suite {
        Some(path) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| Error::usage(format!("cannot read suite {}: {e}", path.display())))?;
            SuiteSpec::from_json(&text)?
        }
        None => SuiteSpec::default_suite(),
    };
    if let Some(seed) = cfg.seed {
        spec.seed = seed;
    }
    if let Some(mode) = cfg.mode {
        spec.mode = match mode {
            ModeArg::Exact => "exact".into(),
            ModeArg::Float => "float".into(),
        };
        spec.precision = Some(cfg.precision);
    }
    if let Some(eps) = cfg.epsilon {
        spec.epsilon = Some(eps);
    }
    let outcome = run_suite(&spec)?;
    if let Some(path) = &args.out {
        let text = serde_json::to_string_pretty(&outcome.reports)
            .map_err(|e| Error::usage(format!("cannot encode report: {e}")))?;
        std::fs::write(path, text + "\n")
            .map_err(|e| Error::usage(format!("cannot write report {}: {e}", path.display())))?;
    }
    let mut table = Table::new([
        "theorem",
        "expectation",
        "reports",
        "exact_pass",
        "tol_pass",
        "fail",
        "max_residual",
        "ok",
    ]);
    for s in &outcome.summary {
        let expectation = serde_json::to_value(s.expectation)
            .ok()
            .and_then(|v| v.as_str().map(String::from))
            .unwrap_or_default();
        table.push(vec![
            s.theorem.to_string(),
            expectation,
            s.reports.to_string(),
            s.exact_pass.to_string(),
            s.tol_pass.to_string(),
            s.fail.to_string(),
            s.max_residual.as_ref().map(|c| c.to_string()).unwrap_or_default(),
            s.ok.to_string(),
        ]);
    }
    table.render(cfg.format, out)?;
    Ok(if outcome.passed() { 0 } else { 1 })
}

fn dist_model(cfg: &RunConfig, args: &DistArgs) -> Result<Ghg> {
    if cfg.mode == Some(ModeArg::Exact) {
        return Err(Error::usage("dist runs in float mode only"));
    }
    let precision = field(cfg, ModeArg::Float)?.precision().expect("float mode");
    let mut params = match &args.params {
        Some(path) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| Error::usage(format!("cannot read parameters {}: {e}", path.display())))?;
            GhgParams::from_json(&text, precision)?
        }
        None => {
            let mode = Mode::float(precision)?;
            let alphas = args
                .alphas
                .as_deref()
                .ok_or_else(|| Error::usage("give --params or --alphas"))?;
            let alphas = parse_list("--alphas", alphas, mode)?;
            GhgParams {
                r: alphas.len(),
                m: args.m.unwrap_or(2),
                alphas,
                gamma: parse_flag("--gamma", args.gamma.as_deref().unwrap_or("0"), mode)?,
                beta: parse_flag("--beta", args.beta.as_deref().unwrap_or("0"), mode)?,
                n: args.n.unwrap_or(0),
                epsilon: crate::dist::DEFAULT_EPSILON,
                mode,
            }
        }
    };
    if let Some(eps) = cfg.epsilon {
        params.epsilon = eps;
    }
    Ghg::new(params)
}

fn point_cells(prefix: &str, values: &[u64]) -> Vec<(String, String)> {
    values
        .iter()
        .enumerate()
        .map(|(i, v)| (format!("{prefix}{i}"), v.to_string()))
        .collect()
}

fn joined(values: &[u64]) -> String {
    values.iter().map(u64::to_string).collect::<Vec<_>>().join(",")
}

fn dist(cfg: &RunConfig, cmd: &DistCommand, out: &mut Vec<u8>) -> Result<i32> {
    let table = match cmd {
        DistCommand::Pmf { params, x } => {
            let g = dist_model(cfg, params)?;
            let x = parse_point(x)?;
            let mut cells = point_cells("x", &x);
            cells.push(("pmf".into(), g.pmf(&x)?.to_string()));
            Table::record(cells)
        }
        DistCommand::Cdf { params, coord, x } => {
            let g = dist_model(cfg, params)?;
            let c = g.marginal_cdf(*coord, *x)?;
            Table::record(vec![
                ("coord".into(), coord.to_string()),
                ("x".into(), x.to_string()),
                ("cdf".into(), c.direct.to_string()),
                ("lemma_printed".into(), c.lemma_printed.to_string()),
                ("lemma_corrected".into(), c.lemma_corrected.to_string()),
                ("residual_printed".into(), c.residual_printed.to_string()),
                ("residual_corrected".into(), c.residual_corrected.to_string()),
            ])
        }
        DistCommand::Moments {
            params,
            coord,
            max_ell,
            kind,
        } => {
            let g = dist_model(cfg, params)?;
            let kind: MomentKind = kind.parse().map_err(|_| Error::invalid("--kind", "expected raw or factorial"))?;
            let (mean, var) = g.mean_variance(*coord)?;
            let mut cells = vec![
                ("coord".to_string(), coord.to_string()),
                ("mean".to_string(), mean.to_string()),
                ("variance".to_string(), var.to_string()),
            ];
            for ell in 0..=*max_ell {
                let name = match kind {
                    MomentKind::Raw => format!("raw_{ell}"),
                    MomentKind::Factorial => format!("factorial_{ell}"),
                };
                cells.push((name, g.moment(*coord, ell, kind)?.to_string()));
            }
            Table::record(cells)
        }
        DistCommand::Reliability { params, x } => {
            let g = dist_model(cfg, params)?;
            let x = parse_point(x)?;
            let mut cells = point_cells("x", &x);
            cells.push(("reliability".into(), g.reliability(&x)?.to_string()));
            cells.push(("reliability_direct".into(), g.reliability_direct(&x)?.to_string()));
            Table::record(cells)
        }
        DistCommand::Hazard { params, x } => {
            let g = dist_model(cfg, params)?;
            let x = parse_point(x)?;
            let mut cells = point_cells("x", &x);
            for (i, h) in g.hazard(&x)?.iter().enumerate() {
                cells.push((format!("h{i}"), h.to_string()));
            }
            Table::record(cells)
        }
        DistCommand::Classify { params, class, grid } => {
            let g = dist_model(cfg, params)?;
            let class: AgingClass = class.parse().map_err(|_| {
                Error::invalid("--class", "expected one of MNBU, MNWU, MNBUE, MNWUE, MIHR, MDHR")
            })?;
            let result = g.classify(class, *grid)?;
            let (verdict, wx, wt, lhs, rhs) = match &result {
                Classification::HoldsOnGrid => ("holds-on-grid", String::new(), String::new(), String::new(), String::new()),
                Classification::Violated { witness } => (
                    "violated",
                    joined(&witness.x),
                    witness.t.as_deref().map(joined).unwrap_or_default(),
                    witness.lhs.to_string(),
                    witness.rhs.to_string(),
                ),
            };
            Table::record(vec![
                ("class".into(), class.to_string()),
                ("grid".into(), grid.to_string()),
                ("verdict".into(), verdict.into()),
                ("witness_x".into(), wx),
                ("witness_t".into(), wt),
                ("lhs".into(), lhs),
                ("rhs".into(), rhs),
            ])
        }
        DistCommand::Normalizer { params, method } => {
            let g = dist_model(cfg, params)?;
            let method: NormalizerMethod = method.parse().map_err(|_| {
                Error::invalid("--method", "expected series, homogeneous-reduction or lattice-bruteforce")
            })?;
            let res = g.normalizer(method)?;
            Table::record(vec![
                ("method".into(), method_name(method).into()),
                ("B".into(), res.b.to_string()),
                ("inverse".into(), res.inverse.to_string()),
                (
                    "truncation_used".into(),
                    res.truncation_used.map(|t| t.to_string()).unwrap_or_default(),
                ),
                ("tail_bound".into(), format!("{:e}", res.tail_bound)),
            ])
        }
    };
    table.render(cfg.format, out)?;
    Ok(0)
}

fn method_name(m: NormalizerMethod) -> &'static str {
    match m {
        NormalizerMethod::Series => "series",
        NormalizerMethod::HomogeneousReduction => "homogeneous-reduction",
        NormalizerMethod::LatticeBruteforce => "lattice-bruteforce",
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn call(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let mut full = vec!["hermite-genocchi"];
        full.extend_from_slice(args);
        let code = run(full, &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn half_genocchi_table() {
        let (code, out, _) = call(&[
            "family", "table", "--r", "1", "--k", "1", "--lnA", "0", "--lnB", "1", "--lnC", "1", "--alphas", "-1", "--x",
            "0", "--y", "0", "--m", "2", "--n-max", "4", "--mode", "exact",
        ]);
        assert_eq!(code, 0);
        let rows: Vec<serde_json::Value> = serde_json::from_str(&out).unwrap();
        let values: Vec<&str> = rows.iter().map(|r| r["value"].as_str().unwrap()).collect();
        assert_eq!(values, ["0", "1/2", "-1/2", "0", "1/2"]);
    }

    #[test]
    fn prefactor_zero_and_bad_alphas() {
        let (code, out, _) = call(&["family", "eval", "--k", "1", "--alphas", "-1", "--n", "0", "--format", "csv"]);
        assert_eq!(code, 0);
        assert_eq!(out, "n,value\n0,0\n");
        let (code, out, err) = call(&["family", "eval", "--alphas", "1/2,,3", "--n", "2"]);
        assert_eq!(code, 2);
        assert!(out.is_empty());
        assert!(err.contains("--alphas"), "{err}");
        let (code, out, _) = call(&["family", "eval", "--alphas", "1", "--n", "2"]);
        assert_eq!((code, out.is_empty()), (2, true));
    }

    #[test]
    fn dist_geometric() {
        let (code, out, _) = call(&["dist", "pmf", "--alphas", "0.5", "--x", "0"]);
        assert_eq!(code, 0, "{out}");
        let v: serde_json::Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["pmf"], "0.5");
        let (_, out, _) = call(&["dist", "hazard", "--alphas", "0.5", "--x", "5"]);
        let v: serde_json::Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["h0"], "0.5");
        let (_, out, _) = call(&["dist", "classify", "--alphas", "0.5", "--class", "MIHR", "--grid", "6"]);
        let v: serde_json::Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["verdict"], "holds-on-grid");
        let (code, _, err) = call(&["dist", "pmf", "--alphas", "1.0", "--x", "0"]);
        assert_eq!(code, 2);
        assert!(err.contains("divergent"), "{err}");
        let (code, _, _) = call(&["dist", "pmf", "--alphas", "0.5", "--x", "0", "--mode", "exact"]);
        assert_eq!(code, 2);
    }

    #[test]
    fn usage_errors_exit_two() {
        assert_eq!(call(&["family"]).0, 2);
        assert_eq!(call(&["frobnicate"]).0, 2);
        assert_eq!(call(&["--epsilon", "2", "family", "eval", "--alphas", "2", "--n", "1"]).0, 2);
        assert_eq!(call(&["--help"]).0, 0);
    }
}
