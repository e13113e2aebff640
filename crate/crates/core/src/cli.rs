//! Command-line front end.
//!
//! [`run`] parses arguments, executes one command and returns the exit code
//! together with the rendered output, so the binary is a thin wrapper and the
//! whole interface can be driven from tests.
//!
//! Exit codes: 0 pass, 1 numerical failure, 2 invalid input, 3 exclusion-set
//! violation, 4 non-convergence, 5 truncation insufficient.

use std::f64::consts::PI;
use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigUint;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Map, Value};

use crate::error::Error;
use crate::expansions::{
    azimuthal_power_toroidal, euler_kernel_chebyshev, euler_kernel_gegenbauer, euler_kernel_jacobi,
    fourier_integer_terms, fourier_negative_power, multipole_power,
};
use crate::polyspherical::{class_count_table, format_tree, parse_tree, tree_count_table, Child, Tree};
use crate::summation::{PartialSum, Truncation};
use crate::verify::{
    reduction_b2a, reduction_ba, reduction_ca2, verify, Status, TheoremConfig, TheoremId, TraceRow, VerificationReport,
};

pub const SCHEMA: &str = "polykernel/1";

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_EXCLUSION: i32 = 3;
pub const EXIT_CONVERGENCE: i32 = 4;
pub const EXIT_TRUNCATION: i32 = 5;

#[derive(Debug, Parser)]
#[command(
    name = "polykernel",
    version,
    about = "Polyharmonic kernel expansions and polyspherical addition theorems"
)]
pub struct Cli {
    /// Output format; `verify --suite` defaults to csv, everything else to json.
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    /// Series truncation tolerance.
    #[arg(long, global = true, default_value_t = 1e-9)]
    pub tol: f64,
    #[arg(long, global = true, default_value_t = 2000)]
    pub max_terms: usize,
    /// Seed for randomized configurations.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Parse, format and count polyspherical trees.
    Trees {
        #[command(subcommand)]
        cmd: TreesCmd,
    },
    /// Evaluate a series expansion against its closed form.
    Expand(ExpandArgs),
    /// Check an addition theorem numerically.
    Verify(VerifyArgs),
}

#[derive(Debug, Subcommand)]
pub enum TreesCmd {
    Parse {
        spec: String,
    },
    /// Print the canonical spelling.
    Format {
        spec: String,
    },
    /// Tables of tree counts and equivalence-class counts for d = 2..=dmax.
    Count {
        #[arg(long, default_value_t = 13)]
        dmax: usize,
    },
    Classes {
        #[arg(long)]
        d: usize,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ExpandKind {
    Jacobi,
    Gegenbauer,
    Chebyshev,
    Multipole,
    Azimuthal,
    FourierInt,
    FourierNeg,
}

#[derive(Debug, Args)]
#[command(allow_negative_numbers = true)]
pub struct ExpandArgs {
    #[arg(value_enum)]
    pub kind: ExpandKind,
    #[arg(long, default_value_t = -1.0)]
    pub nu: f64,
    #[arg(long, default_value_t = 0.0)]
    pub alpha: f64,
    #[arg(long, default_value_t = 0.0)]
    pub beta: f64,
    #[arg(long, default_value_t = 1.0)]
    pub mu: f64,
    #[arg(long, default_value_t = 2.0)]
    pub z: f64,
    #[arg(long, default_value_t = 0.3)]
    pub x: f64,
    #[arg(long, default_value_t = 3)]
    pub d: u32,
    #[arg(long, default_value_t = 1.0)]
    pub r: f64,
    #[arg(long, default_value_t = 2.0)]
    pub rp: f64,
    #[arg(long, default_value_t = 0.3)]
    pub cosg: f64,
    #[arg(long, default_value_t = 1.5)]
    pub chi: f64,
    #[arg(long = "two-rr", default_value_t = 1.0)]
    pub two_rr: f64,
    #[arg(long, default_value_t = 0.5)]
    pub dphi: f64,
    #[arg(long, default_value_t = 3)]
    pub p: u32,
    #[arg(long, default_value_t = 1)]
    pub q: u32,
    /// Include every term in the report.
    #[arg(long)]
    pub trace: bool,
}

#[derive(Debug, Args)]
#[command(allow_negative_numbers = true)]
pub struct VerifyArgs {
    /// T4.1, T4.2, C4.3, C4.4 or C4.5.
    #[arg(required_unless_present = "suite")]
    pub theorem: Option<String>,
    #[arg(long, default_value_t = -1.0)]
    pub nu: f64,
    #[arg(long, default_value_t = 0)]
    pub m: i64,
    #[arg(long, default_value_t = 1.0)]
    pub r: f64,
    #[arg(long, default_value_t = 2.0)]
    pub rp: f64,
    /// Polar angles of the first point, outermost node first.
    #[arg(long, value_delimiter = ',')]
    pub theta: Vec<f64>,
    #[arg(long, value_delimiter = ',')]
    pub thetap: Vec<f64>,
    /// Azimuths of the first point.
    #[arg(long, value_delimiter = ',')]
    pub phi: Vec<f64>,
    #[arg(long, value_delimiter = ',')]
    pub phip: Vec<f64>,
    /// Dimension for T4.1.
    #[arg(long, default_value_t = 3)]
    pub d: u32,
    /// Depth for T4.2 (dimension 2^q).
    #[arg(long, default_value_t = 2)]
    pub q: u32,
    /// Per-level caps, outermost first; the last one repeats.
    #[arg(long, value_delimiter = ',')]
    pub caps: Vec<usize>,
    #[arg(long)]
    pub trace: bool,
    /// Check the elementary reduction instead (C4.3 at nu=-1, C4.4/C4.5 at nu=-2).
    #[arg(long)]
    pub reduction: bool,
    /// Run the whole configuration matrix.
    #[arg(long)]
    pub suite: bool,
}

/// Result of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

/// Parses `args` (program name first) and runs the command.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_PASS };
            let text = e.render().to_string();
            return if code == EXIT_PASS {
                Outcome {
                    code,
                    stdout: text,
                    stderr: String::new(),
                }
            } else {
                Outcome {
                    code,
                    stdout: String::new(),
                    stderr: text,
                }
            };
        }
    };
    execute(&cli)
}

/// Runs an already parsed command line.
pub fn execute(cli: &Cli) -> Outcome {
    let (code, body) = match &cli.command {
        Command::Trees { cmd } => cmd_trees(cli, cmd),
        Command::Expand(a) => cmd_expand(cli, a),
        Command::Verify(a) if a.suite => cmd_suite(cli, a),
        Command::Verify(a) => cmd_verify(cli, a),
    };
    let stderr = if code == EXIT_PASS {
        String::new()
    } else {
        error_line(&body)
    };
    match &cli.out {
        Some(path) => match std::fs::write(path, &body) {
            Ok(()) => Outcome {
                code,
                stdout: String::new(),
                stderr,
            },
            Err(e) => Outcome {
                code: EXIT_INPUT,
                stdout: String::new(),
                stderr: format!("cannot write {}: {e}\n", path.display()),
            },
        },
        None => Outcome {
            code,
            stdout: body,
            stderr,
        },
    }
}

fn error_line(body: &str) -> String {
    serde_json::from_str::<Value>(body)
        .ok()
        .and_then(|v| {
            v.get("error")
                .and_then(|e| e.get("message"))
                .and_then(Value::as_str)
                .map(String::from)
        })
        .map(|m| format!("error: {m}\n"))
        .unwrap_or_default()
}

pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::ExclusionSet { .. } => EXIT_EXCLUSION,
        Error::Convergence { .. } | Error::SlowConvergence { .. } => EXIT_CONVERGENCE,
        Error::Pole { .. } | Error::Overflow { .. } => EXIT_FAIL,
        _ => EXIT_INPUT,
    }
}

fn error_kind(e: &Error) -> &'static str {
    match e {
        Error::Pole { .. } => "Pole",
        Error::Overflow { .. } => "Overflow",
        Error::Convergence { .. } => "Convergence",
        Error::ParameterPole { .. } => "ParameterPole",
        Error::NonTerminating => "NonTerminating",
        Error::SlowConvergence { .. } => "SlowConvergence",
        Error::Domain { .. } => "Domain",
        Error::ZeroParameter => "ZeroParameter",
        Error::OddDimension(_) => "OddDimension",
        Error::CoincidentPoints => "CoincidentPoints",
        Error::SingularConfiguration { .. } => "SingularConfiguration",
        Error::Axis => "Axis",
        Error::CoincidentRadius { .. } => "CoincidentRadius",
        Error::ExclusionSet { .. } => "ExclusionSet",
        Error::AngleRange { .. } => "AngleRange",
        Error::InadmissibleKey(_) => "InadmissibleKey",
        Error::InvalidParameter(_) => "InvalidParameter",
        Error::Parse(p) => p.kind(),
    }
}

fn error_report(command: &str, e: &Error) -> (i32, String) {
    let mut err = Map::new();
    err.insert("kind".into(), json!(error_kind(e)));
    err.insert("message".into(), json!(e.to_string()));
    if let Error::Parse(p) = e {
        err.insert("position".into(), json!(p.position()));
    }
    let v = json!({ "schema": SCHEMA, "command": command, "error": Value::Object(err) });
    (exit_code(e), render_json(v))
}

/// Rewrites every non-integer number with 17 significant digits.
fn normalize(v: Value) -> Value {
    match v {
        Value::Number(n) if !(n.is_i64() || n.is_u64()) => match n.as_f64() {
            Some(x) => num(x),
            None => Value::Number(n),
        },
        Value::Array(a) => Value::Array(a.into_iter().map(normalize).collect()),
        Value::Object(o) => Value::Object(o.into_iter().map(|(k, v)| (k, normalize(v))).collect()),
        other => other,
    }
}

fn num(x: f64) -> Value {
    if !x.is_finite() {
        return Value::String(x.to_string());
    }
    serde_json::from_str(&format!("{x:.16e}")).unwrap_or(Value::Null)
}

fn big(n: &BigUint) -> Value {
    serde_json::from_str(&n.to_string()).unwrap_or(Value::Null)
}

fn render_json(v: Value) -> String {
    let mut s = serde_json::to_string_pretty(&normalize(v)).expect("json values serialize");
    s.push('\n');
    s
}

fn csv_f(x: f64) -> String {
    format!("{x:.16e}")
}

fn format_of(cli: &Cli) -> Format {
    cli.format.unwrap_or(Format::Json)
}

fn cmd_trees(cli: &Cli, cmd: &TreesCmd) -> (i32, String) {
    let csv = format_of(cli) == Format::Csv;
    match cmd {
        TreesCmd::Parse { spec } => match parse_tree(spec) {
            Ok(t) => {
                if csv {
                    let mut s = String::from("node,type,range,left,right\n");
                    for (i, n) in t.nodes().iter().enumerate() {
                        let _ = writeln!(
                            s,
                            "{i},{},{},{},{}",
                            n.node_type.token(),
                            n.node_type.range_label(),
                            child_label(n.left),
                            child_label(n.right)
                        );
                    }
                    (EXIT_PASS, s)
                } else {
                    let v = json!({
                        "schema": SCHEMA,
                        "command": "trees parse",
                        "input": spec,
                        "canonical": format_tree(&t),
                        "dimension": t.dimension(),
                        "branch_count": t.branch_count(),
                        "root": tree_json(&t, 0),
                    });
                    (EXIT_PASS, render_json(v))
                }
            }
            Err(e) => error_report("trees parse", &Error::Parse(e)),
        },
        TreesCmd::Format { spec } => match parse_tree(spec) {
            Ok(t) => {
                let canon = format_tree(&t);
                if csv {
                    (EXIT_PASS, format!("input,canonical\n{spec},{canon}\n"))
                } else {
                    let v = json!({ "schema": SCHEMA, "command": "trees format", "input": spec, "canonical": canon });
                    (EXIT_PASS, render_json(v))
                }
            }
            Err(e) => error_report("trees format", &Error::Parse(e)),
        },
        TreesCmd::Count { dmax } => {
            if *dmax < 2 {
                return error_report("trees count", &Error::invalid("dmax must be at least 2"));
            }
            let trees = tree_count_table(*dmax);
            let classes = class_count_table(*dmax);
            if csv {
                let mut s = String::from("d,trees,classes\n");
                for d in 2..=*dmax {
                    let _ = writeln!(s, "{d},{},{}", trees[d - 1], classes[d - 1]);
                }
                (EXIT_PASS, s)
            } else {
                let rows: Vec<Value> = (2..=*dmax)
                    .map(|d| json!({ "d": d, "trees": big(&trees[d - 1]), "classes": big(&classes[d - 1]) }))
                    .collect();
                let v = json!({ "schema": SCHEMA, "command": "trees count", "dmax": dmax, "rows": rows });
                (EXIT_PASS, render_json(v))
            }
        }
        TreesCmd::Classes { d } => {
            if *d < 2 {
                return error_report("trees classes", &Error::invalid("d must be at least 2"));
            }
            let trees = tree_count_table(*d);
            let classes = class_count_table(*d);
            if csv {
                (
                    EXIT_PASS,
                    format!("d,trees,classes\n{d},{},{}\n", trees[*d - 1], classes[*d - 1]),
                )
            } else {
                let v = json!({
                    "schema": SCHEMA,
                    "command": "trees classes",
                    "d": d,
                    "trees": big(&trees[*d - 1]),
                    "classes": big(&classes[*d - 1]),
                });
                (EXIT_PASS, render_json(v))
            }
        }
    }
}

fn child_label(c: Child) -> String {
    match c {
        Child::Leaf(k) => format!("x{}", k + 1),
        Child::Branch(j) => format!("node{j}"),
    }
}

fn tree_json(t: &Tree, i: usize) -> Value {
    let n = t.node(i);
    let child = |c: Child| match c {
        Child::Leaf(k) => json!({ "leaf": k + 1 }),
        Child::Branch(j) => tree_json(t, j),
    };
    json!({
        "type": n.node_type.token(),
        "range": n.node_type.range_label(),
        "left": child(n.left),
        "right": child(n.right),
    })
}

fn expand_name(k: ExpandKind) -> &'static str {
    match k {
        ExpandKind::Jacobi => "jacobi",
        ExpandKind::Gegenbauer => "gegenbauer",
        ExpandKind::Chebyshev => "chebyshev",
        ExpandKind::Multipole => "multipole",
        ExpandKind::Azimuthal => "azimuthal",
        ExpandKind::FourierInt => "fourier-int",
        ExpandKind::FourierNeg => "fourier-neg",
    }
}

/// Series value plus the closed form it should reproduce.
fn evaluate_expansion(a: &ExpandArgs, tr: Truncation) -> crate::Result<(PartialSum, f64, Value)> {
    Ok(match a.kind {
        ExpandKind::Jacobi => (
            euler_kernel_jacobi(a.nu, a.alpha, a.beta, a.z, a.x, tr)?,
            (a.z - a.x).powf(-a.nu),
            json!({ "nu": a.nu, "alpha": a.alpha, "beta": a.beta, "z": a.z, "x": a.x }),
        ),
        ExpandKind::Gegenbauer => (
            euler_kernel_gegenbauer(a.nu, a.mu, a.z, a.x, tr)?,
            (a.z - a.x).powf(-a.nu),
            json!({ "nu": a.nu, "mu": a.mu, "z": a.z, "x": a.x }),
        ),
        ExpandKind::Chebyshev => (
            euler_kernel_chebyshev(a.nu, a.z, a.x, tr)?,
            (a.z - a.x).powf(-a.nu),
            json!({ "nu": a.nu, "z": a.z, "x": a.x }),
        ),
        ExpandKind::Multipole => (
            multipole_power(a.d, a.nu, a.r, a.rp, a.cosg, tr)?,
            (a.r * a.r + a.rp * a.rp - 2.0 * a.r * a.rp * a.cosg).powf(0.5 * a.nu),
            json!({ "d": a.d, "nu": a.nu, "r": a.r, "rp": a.rp, "cosg": a.cosg }),
        ),
        ExpandKind::Azimuthal => (
            azimuthal_power_toroidal(a.nu, a.chi, a.two_rr, a.dphi, tr)?,
            (a.two_rr * (a.chi - a.dphi.cos())).powf(0.5 * a.nu),
            json!({ "nu": a.nu, "chi": a.chi, "two_rr": a.two_rr, "dphi": a.dphi }),
        ),
        ExpandKind::FourierInt => {
            let terms = fourier_integer_terms(a.p, a.z, a.x)?;
            let mut acc = crate::summation::Compensated::new();
            for &t in &terms {
                acc.add(t);
            }
            let sum = PartialSum {
                value: acc.value(),
                terms_used: terms.len(),
                last_term_magnitude: terms.last().map_or(0.0, |t| t.abs()),
                converged: true,
                terms,
            };
            (
                sum,
                (a.z - a.x).powi(a.p as i32),
                json!({ "p": a.p, "z": a.z, "x": a.x }),
            )
        }
        ExpandKind::FourierNeg => (
            fourier_negative_power(a.q, a.z, a.x, tr)?,
            (a.z - a.x).powi(-(a.q as i32)),
            json!({ "q": a.q, "z": a.z, "x": a.x }),
        ),
    })
}

fn rel_err(value: f64, exact: f64) -> f64 {
    if exact == 0.0 {
        (value - exact).abs()
    } else {
        ((value - exact) / exact).abs()
    }
}

fn cmd_expand(cli: &Cli, a: &ExpandArgs) -> (i32, String) {
    let name = expand_name(a.kind);
    let command = format!("expand {name}");
    let mut tr = Truncation::new(cli.tol, cli.max_terms);
    if a.trace || format_of(cli) == Format::Csv {
        tr = tr.with_trace();
    }
    let (sum, oracle, params) = match evaluate_expansion(a, tr) {
        Ok(x) => x,
        Err(e) => return error_report(&command, &e),
    };
    let err = rel_err(sum.value, oracle);
    let code = if sum.converged { EXIT_PASS } else { EXIT_CONVERGENCE };
    if format_of(cli) == Format::Csv {
        let mut s = String::from("level,index,term,partial,rel_err\n");
        let mut acc = crate::summation::Compensated::new();
        for (i, &t) in sum.terms.iter().enumerate() {
            acc.add(t);
            let _ = writeln!(
                s,
                "0,{i},{},{},{}",
                csv_f(t),
                csv_f(acc.value()),
                csv_f(rel_err(acc.value(), oracle))
            );
        }
        return (code, s);
    }
    let mut v = json!({
        "schema": SCHEMA,
        "command": command,
        "params": params,
        "tol": cli.tol,
        "max_terms": cli.max_terms,
        "value": sum.value,
        "direct_oracle": oracle,
        "rel_err": err,
        "terms_used": sum.terms_used,
        "last_term_magnitude": sum.last_term_magnitude,
        "converged": sum.converged,
    });
    if a.trace {
        v["per_term"] = json!(sum.terms);
    }
    if !sum.converged {
        v["error"] = json!({
            "kind": "Convergence",
            "message": format!("series did not converge within {} terms", sum.terms_used),
        });
    }
    (code, render_json(v))
}

fn default_polar(n: usize, hopf: bool, primed: bool) -> Vec<f64> {
    let base: &[f64] = match (hopf, primed) {
        (false, false) => &[1.0, 1.3, 0.8, 1.9, 1.1, 2.2, 0.9, 1.6],
        (false, true) => &[2.0, 1.6, 2.3, 1.2, 1.8, 0.7, 2.1, 1.4],
        (true, false) => &[0.6, 0.9, 0.4, 1.1, 0.7, 1.0, 0.5, 0.8],
        (true, true) => &[0.9, 0.5, 1.2, 0.7, 1.0, 0.6, 1.1, 0.4],
    };
    (0..n).map(|i| base[i % base.len()]).collect()
}

fn default_azimuth(n: usize, primed: bool) -> Vec<f64> {
    let (a, b) = if primed { (1.5, 1.1) } else { (0.3, 0.7) };
    (0..n).map(|j| (a + b * j as f64).rem_euclid(2.0 * PI)).collect()
}

/// Number of polar angles and azimuths for a theorem at `order`.
fn angle_split(id: TheoremId, order: u32) -> (usize, usize) {
    match id {
        TheoremId::Ba => (1, 1),
        TheoremId::B2a => (2, 1),
        TheoremId::Ca2 => (1, 2),
        TheoremId::Standard => (order.saturating_sub(2) as usize, 1),
        TheoremId::Hopf => {
            let half = 1usize << order.saturating_sub(1);
            (half - 1, half)
        }
    }
}

fn pick(given: &[f64], default: Vec<f64>, what: &str) -> crate::Result<Vec<f64>> {
    if given.is_empty() {
        Ok(default)
    } else if given.len() != default.len() {
        Err(Error::invalid(format!(
            "--{what} needs {} values, got {}",
            default.len(),
            given.len()
        )))
    } else {
        Ok(given.to_vec())
    }
}

fn build_config(cli: &Cli, a: &VerifyArgs, id: TheoremId) -> crate::Result<TheoremConfig> {
    let order = match id {
        TheoremId::Standard => a.d,
        TheoremId::Hopf => a.q,
        _ => id.default_order(),
    };
    if id == TheoremId::Standard && order < 3 {
        return Err(Error::invalid("T4.1 needs d >= 3"));
    }
    if id == TheoremId::Hopf && !(2..=6).contains(&order) {
        return Err(Error::invalid("T4.2 needs q in 2..=6"));
    }
    let hopf = matches!(id, TheoremId::Hopf | TheoremId::Ca2);
    let (np, na) = angle_split(id, order);
    let theta = pick(&a.theta, default_polar(np, hopf, false), "theta")?;
    let thetap = pick(&a.thetap, default_polar(np, hopf, true), "thetap")?;
    let phi = pick(&a.phi, default_azimuth(na, false), "phi")?;
    let phip = pick(&a.phip, default_azimuth(na, true), "phip")?;
    let (angles, angles_p) = ([theta, phi].concat(), [thetap, phip].concat());
    let mut cfg = TheoremConfig::new(id, a.nu, a.m, a.r, a.rp, angles, angles_p)
        .with_order(order)
        .with_tol(cli.tol);
    if !a.caps.is_empty() {
        cfg = cfg.with_caps(a.caps.clone());
    }
    if a.trace || format_of(cli) == Format::Csv {
        cfg = cfg.with_trace();
    }
    Ok(cfg)
}

fn run_config(cfg: &TheoremConfig, reduction: bool) -> crate::Result<VerificationReport> {
    if !reduction {
        return verify(cfg);
    }
    match cfg.theorem {
        TheoremId::Ba => reduction_ba(cfg),
        TheoremId::B2a => reduction_b2a(cfg),
        TheoremId::Ca2 => reduction_ca2(cfg),
        t => Err(Error::invalid(format!("{t} has no elementary reduction"))),
    }
}

fn status_code(s: Status) -> i32 {
    match s {
        Status::Pass => EXIT_PASS,
        Status::Fail => EXIT_FAIL,
        Status::TruncationInsufficient => EXIT_TRUNCATION,
    }
}

fn trace_csv(rows: &[TraceRow]) -> String {
    let mut s = String::from("level,index,term,partial,rel_err\n");
    for r in rows {
        let _ = writeln!(
            s,
            "{},{},{},{},{}",
            r.level,
            r.index,
            csv_f(r.term),
            csv_f(r.partial),
            csv_f(r.rel_err)
        );
    }
    s
}

fn cmd_verify(cli: &Cli, a: &VerifyArgs) -> (i32, String) {
    let label = a.theorem.as_deref().unwrap_or_default();
    let command = format!("verify {label}");
    let report = label
        .parse::<TheoremId>()
        .and_then(|id| build_config(cli, a, id))
        .and_then(|cfg| run_config(&cfg, a.reduction).map(|r| (cfg, r)));
    let (cfg, report) = match report {
        Ok(x) => x,
        Err(e) => return error_report(&command, &e),
    };
    let code = status_code(report.status);
    if format_of(cli) == Format::Csv {
        return (code, trace_csv(&report.trace));
    }
    let mut v = json!({ "schema": SCHEMA, "command": command, "config": cfg });
    let rep = serde_json::to_value(&report).expect("report serializes");
    if let (Value::Object(dst), Value::Object(src)) = (&mut v, rep) {
        dst.insert("report".into(), Value::Object(src));
    }
    (code, render_json(v))
}

/// One row of the acceptance matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct SuiteCase {
    pub config: TheoremConfig,
    pub reduction: bool,
}

/// Configuration matrix run by `verify --suite`; geometry is drawn from `seed`.
pub fn suite_cases(seed: u64) -> Vec<SuiteCase> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();
    let mut push = |rng: &mut ChaCha8Rng,
                    id: TheoremId,
                    order: u32,
                    nu: f64,
                    m: i64,
                    tol: f64,
                    caps: Vec<usize>,
                    reduction: bool| {
        let (np, na) = angle_split(id, order);
        let hopf = matches!(id, TheoremId::Hopf | TheoremId::Ca2);
        let (lo, hi) = if hopf { (0.3, PI / 2.0 - 0.3) } else { (0.3, PI - 0.3) };
        let draw = |rng: &mut ChaCha8Rng| {
            let mut v: Vec<f64> = (0..np).map(|_| rng.gen_range(lo..hi)).collect();
            v.extend((0..na).map(|_| rng.gen_range(0.0..2.0 * PI)));
            v
        };
        let a = draw(rng);
        let b = draw(rng);
        let ratio: f64 = rng.gen_range(0.2..0.6);
        let (r, rp) = if rng.gen_bool(0.5) { (1.0, ratio) } else { (ratio, 1.0) };
        let config = TheoremConfig::new(id, nu, m, r, rp, a, b)
            .with_order(order)
            .with_tol(tol)
            .with_caps(caps);
        out.push(SuiteCase { config, reduction });
    };
    let cap = vec![crate::verify::DEFAULT_CAP];
    for nu in [-1.0, -2.5] {
        for m in 0..=2 {
            push(&mut rng, TheoremId::Ba, 3, nu, m, 1e-6, cap.clone(), false);
        }
    }
    for m in 0..=1 {
        push(&mut rng, TheoremId::B2a, 4, -2.0, m, 1e-6, cap.clone(), false);
    }
    for m in 0..=1 {
        push(&mut rng, TheoremId::Ca2, 4, -2.0, m, 1e-6, cap.clone(), false);
    }
    for m in 0..=2 {
        push(&mut rng, TheoremId::Ba, 3, -1.0, m, 1e-8, cap.clone(), true);
    }
    for m in 0..=1 {
        push(&mut rng, TheoremId::B2a, 4, -2.0, m, 1e-8, cap.clone(), true);
    }
    for m in 0..=1 {
        push(&mut rng, TheoremId::Ca2, 4, -2.0, m, 1e-8, cap.clone(), true);
    }
    push(&mut rng, TheoremId::Standard, 3, -1.0, 1, 1e-6, cap.clone(), false);
    push(&mut rng, TheoremId::Standard, 5, -2.5, 1, 1e-6, vec![40], false);
    push(&mut rng, TheoremId::Hopf, 2, -1.0, 1, 1e-6, cap.clone(), false);
    push(&mut rng, TheoremId::Hopf, 3, -2.0, 0, 1e-3, vec![12], false);
    out
}

/// Runs every case, in parallel, returning results in case order.
pub fn run_suite(cases: &[SuiteCase]) -> Vec<crate::Result<VerificationReport>> {
    let workers = std::thread::available_parallelism()
        .map_or(1, |n| n.get())
        .min(cases.len().max(1));
    let mut slots: Vec<Option<crate::Result<VerificationReport>>> = vec![None; cases.len()];
    std::thread::scope(|s| {
        let handles: Vec<_> = (0..workers)
            .map(|w| {
                s.spawn(move || {
                    (w..cases.len())
                        .step_by(workers)
                        .map(|i| (i, run_config(&cases[i].config, cases[i].reduction)))
                        .collect::<Vec<_>>()
                })
            })
            .collect();
        for h in handles {
            for (i, r) in h.join().expect("suite worker panicked") {
                slots[i] = Some(r);
            }
        }
    });
    slots.into_iter().map(|r| r.expect("every case ran")).collect()
}

fn cmd_suite(cli: &Cli, _a: &VerifyArgs) -> (i32, String) {
    let cases = suite_cases(cli.seed);
    let results = run_suite(&cases);
    let mut code = EXIT_PASS;
    for r in &results {
        let c = match r {
            Ok(rep) => status_code(rep.status),
            Err(e) => exit_code(e).max(EXIT_FAIL),
        };
        if c != EXIT_PASS && (code == EXIT_PASS || code == EXIT_TRUNCATION) {
            code = c;
        }
    }
    if cli.format == Some(Format::Json) {
        let rows: Vec<Value> = cases
            .iter()
            .zip(&results)
            .enumerate()
            .map(|(i, (c, r))| match r {
                Ok(rep) => json!({ "index": i, "reduction": c.reduction, "report": rep }),
                Err(e) => json!({ "index": i, "reduction": c.reduction, "error": e.to_string() }),
            })
            .collect();
        let v = json!({ "schema": SCHEMA, "command": "verify --suite", "seed": cli.seed, "cases": rows });
        return (code, render_json(v));
    }
    let mut s = String::from("index,label,order,nu,m,chi,lhs,rhs,rel_err,tol,terms,status\n");
    for (i, (c, r)) in cases.iter().zip(&results).enumerate() {
        let cfg = &c.config;
        match r {
            Ok(rep) => {
                let terms: Vec<String> = rep.terms_used().iter().map(|t| t.to_string()).collect();
                let status = serde_json::to_value(rep.status)
                    .ok()
                    .and_then(|v| v.as_str().map(String::from))
                    .unwrap_or_default();
                let _ = writeln!(
                    s,
                    "{i},{},{},{},{},{},{},{},{},{},{},{status}",
                    rep.label,
                    cfg.order,
                    csv_f(cfg.nu),
                    cfg.m,
                    csv_f(rep.chi),
                    csv_f(rep.lhs),
                    csv_f(rep.rhs),
                    csv_f(rep.rel_err),
                    csv_f(cfg.tol),
                    terms.join(";"),
                );
            }
            Err(e) => {
                let _ = writeln!(
                    s,
                    "{i},{},{},{},{},,,,,{},,error: {}",
                    cfg.theorem,
                    cfg.order,
                    cfg.nu,
                    cfg.m,
                    cfg.tol,
                    e.to_string().replace(',', ";")
                );
            }
        }
    }
    (code, s)
}
