//! `galcover`: parameter parsing, dispatch and output formatting.
//!
//! Exit status is 0 on success, 1 when a computation fails and 2 on a usage error.

use std::ffi::OsString;
use std::io::Write;

use clap::{error::ErrorKind, Parser, ValueEnum};
use galcover::covers::{
    artin_schreier_genus, build_report, class_count_bound, minimal_genus, ramification_filtration,
    ramification_jump_series_check, tau_on_torsion, CoverParameters, CoverReport,
};
use galcover::group_theory::{canonical_group, quasi_p_check, DEFAULT_GROUP_CAP};
use galcover::matrix_fp::primary_decomposition;
use galcover::poly_factor::factor;
use galcover::prime_field::{cyclotomic_mod, ord_mod, PolyFp, Prime};
use galcover::Error;
use num_bigint::BigUint;
use serde_json::{json, Value};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Command {
    /// Multiplicative order of l modulo p.
    Order,
    /// Factorization of the p-th cyclotomic polynomial over F_l.
    Factor,
    /// Genus of y^p - y = x^s.
    Genus,
    /// Ramification jump of tau at infinity.
    Jump,
    /// Matrix of tau on the l-torsion of the Jacobian.
    Tau,
    /// Primary decomposition of the tau matrix.
    Decompose,
    /// Quasi-p check of (Z/lZ)^b x| Z/pZ.
    Quasip,
    /// Minimal genus and class-count bound.
    MinimalGenus,
    /// Full report for the minimal-genus covers.
    Report,
}

/// Parsed command line.
#[derive(Debug, Parser)]
#[command(
    name = "galcover",
    version,
    about = "Invariants of (Z/lZ)^b x| Z/pZ covers of the affine line"
)]
pub struct CliConfig {
    #[arg(value_enum)]
    pub command: Command,
    #[arg(long)]
    pub p: Option<u64>,
    #[arg(long)]
    pub l: Option<u64>,
    /// Artin-Schreier exponent; defaults to 2 for odd p and 3 for p = 2.
    #[arg(long)]
    pub s: Option<u64>,
    /// Rank of the elementary abelian l-group; defaults to ord_p(l).
    #[arg(long)]
    pub b: Option<usize>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Cap on enumerated group elements.
    #[arg(long, default_value_t = DEFAULT_GROUP_CAP)]
    pub budget: u128,
    #[arg(long)]
    pub json: bool,
}

enum Failure {
    Usage(String),
    Compute(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Compute(e)
    }
}

type Outcome = std::result::Result<Output, Failure>;

struct Output {
    text: String,
    json: Value,
}

/// Deterministic single-line JSON for a report.
pub fn emit_report_json(r: &CoverReport) -> String {
    r.to_json().render()
}

/// Runs one invocation and returns the exit status.
pub fn run<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let config = match CliConfig::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{}", e.render());
                    0
                }
                _ => {
                    let _ = write!(err, "{}", e.render());
                    2
                }
            };
        }
    };
    let result = if config.command == Command::Report {
        report(&config)
    } else {
        dispatch(&config).map(|o| (o.text, serde_json::to_string(&o.json).expect("json")))
    };
    match result {
        Ok((text, json)) => {
            let body = if config.json { json } else { text };
            let _ = writeln!(out, "{}", body.trim_end());
            0
        }
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            2
        }
        Err(Failure::Compute(e)) => {
            if config.json {
                let obj = json!({ "error": e.name(), "message": e.to_string() });
                let _ = writeln!(out, "{obj}");
            }
            let _ = writeln!(err, "error: {}: {e}", e.name());
            1
        }
    }
}

fn required(value: Option<u64>, flag: &str, command: Command) -> std::result::Result<u64, Failure> {
    value.ok_or_else(|| {
        let name = command.to_possible_value().expect("no skipped variants");
        Failure::Usage(format!("--{flag} is required for `{}`", name.get_name()))
    })
}

fn prime_flag(
    value: Option<u64>,
    flag: &str,
    command: Command,
) -> std::result::Result<Prime, Failure> {
    let n = required(value, flag, command)?;
    Prime::new(n).map_err(|_| Failure::Usage(format!("--{flag}: {flag} must be prime (got {n})")))
}

fn s_flag(config: &CliConfig, p: Prime) -> std::result::Result<u64, Failure> {
    match config.s {
        Some(0) => Err(Failure::Usage("--s: s must be positive".into())),
        Some(s) => Ok(s),
        None => Ok(CoverParameters::minimal_s(p)),
    }
}

fn coeffs(f: &PolyFp) -> Value {
    json!(f.coeffs())
}

fn genus_value(g: &BigUint) -> Value {
    match u64::try_from(g) {
        Ok(x) => json!(x),
        Err(_) => json!(g.to_string()),
    }
}

fn dispatch(c: &CliConfig) -> Outcome {
    let cmd = c.command;
    match cmd {
        Command::Order => {
            let l = prime_flag(c.l, "l", cmd)?;
            let p = prime_flag(c.p, "p", cmd)?;
            let a = ord_mod(l, p)?;
            Ok(Output {
                text: a.to_string(),
                json: json!({ "l": l.get(), "p": p.get(), "order": a }),
            })
        }
        Command::Factor => {
            let p = prime_flag(c.p, "p", cmd)?;
            let l = prime_flag(c.l, "l", cmd)?;
            let fz = factor(&cyclotomic_mod(p, l)?, c.seed)?;
            let lines: Vec<String> = fz
                .factors()
                .iter()
                .map(|(f, e)| {
                    if *e == 1 {
                        f.to_string()
                    } else {
                        format!("({f})^{e}")
                    }
                })
                .collect();
            let factors: Vec<Value> = fz.irreducibles().map(coeffs).collect();
            Ok(Output {
                text: lines.join("\n"),
                json: json!({ "p": p.get(), "l": l.get(), "factors": factors }),
            })
        }
        Command::Genus => {
            let p = prime_flag(c.p, "p", cmd)?;
            let s = s_flag(c, p)?;
            let g = artin_schreier_genus(p, s)?;
            let filtration = ramification_filtration(p, s)?;
            let jump = filtration.last_jump().unwrap_or(-1);
            Ok(Output {
                text: format!(
                    "g = {g} (I_i = Z/{p}Z for -1 <= i <= {jump}, trivial for i > {jump})"
                ),
                json: json!({ "p": p.get(), "s": s, "genus": g, "last_jump": jump }),
            })
        }
        Command::Jump => {
            let p = prime_flag(c.p, "p", cmd)?;
            let s = s_flag(c, p)?;
            let j = ramification_jump_series_check(p, s, s as usize + 2)?;
            Ok(Output {
                text: format!(
                    "tau(pi) - pi = {} pi^{} + O(pi^{})",
                    j.leading_coeff.value(),
                    j.valuation,
                    j.valuation + 1
                ),
                json: json!({
                    "p": p.get(),
                    "s": s,
                    "valuation": j.valuation,
                    "leading_coeff": j.leading_coeff.value(),
                }),
            })
        }
        Command::Tau | Command::Decompose => {
            let p = prime_flag(c.p, "p", cmd)?;
            let l = prime_flag(c.l, "l", cmd)?;
            let s = s_flag(c, p)?;
            let tau = tau_on_torsion(CoverParameters::new(p, l, s)?)?;
            if cmd == Command::Tau {
                return Ok(Output {
                    text: format!("basis: {}\n{}", tau.basis_label, tau.matrix),
                    json: json!({
                        "p": p.get(),
                        "l": l.get(),
                        "s": s,
                        "basis": tau.basis_label,
                        "matrix": tau.matrix.to_rows(),
                    }),
                });
            }
            let parts = primary_decomposition(&tau.matrix)?;
            let text: Vec<String> = parts
                .iter()
                .map(|comp| format!("ker({}) has dimension {}", comp.factor, comp.subspace.dim()))
                .collect();
            let components: Vec<Value> = parts
                .iter()
                .map(|comp| {
                    json!({
                        "factor": coeffs(&comp.factor),
                        "dimension": comp.subspace.dim(),
                        "basis": comp.subspace.basis(),
                    })
                })
                .collect();
            Ok(Output {
                text: text.join("\n"),
                json: json!({ "p": p.get(), "l": l.get(), "s": s, "components": components }),
            })
        }
        Command::Quasip => {
            let p = prime_flag(c.p, "p", cmd)?;
            let l = prime_flag(c.l, "l", cmd)?;
            let b = match c.b {
                Some(0) => return Err(Failure::Usage("--b: b must be positive".into())),
                Some(b) => b,
                None => ord_mod(l, p)? as usize,
            };
            let group = canonical_group(l, b, p)?;
            let r = quasi_p_check(&group, c.budget)?;
            let shape = if group.is_direct_product() { "x" } else { "x|" };
            Ok(Output {
                text: format!(
                    "(Z/{l}Z)^{b} {shape} Z/{p}Z: quasi-{p} = {} (order-{p} elements generate {} of {})",
                    r.is_quasi_p, r.closure_size, r.group_order
                ),
                json: json!({
                    "l": l.get(),
                    "b": b,
                    "p": p.get(),
                    "direct_product": group.is_direct_product(),
                    "order": r.group_order as u64,
                    "closure_size": r.closure_size as u64,
                    "quasi_p": r.is_quasi_p,
                }),
            })
        }
        Command::MinimalGenus => {
            let p = prime_flag(c.p, "p", cmd)?;
            let l = prime_flag(c.l, "l", cmd)?;
            let a = ord_mod(l, p)?;
            let g = minimal_genus(p, l)?;
            let bound = class_count_bound(p, l)?;
            Ok(Output {
                text: format!("minimal genus {g}; at most {bound} isomorphism classes (a = {a})"),
                json: json!({
                    "p": p.get(),
                    "l": l.get(),
                    "a": a,
                    "g_z_min": genus_value(&g),
                    "class_count_bound": bound,
                }),
            })
        }
        Command::Report => unreachable!("handled by report()"),
    }
}

fn report(c: &CliConfig) -> std::result::Result<(String, String), Failure> {
    let cmd = c.command;
    let p = prime_flag(c.p, "p", cmd)?;
    let l = prime_flag(c.l, "l", cmd)?;
    if let Some(s) = c.s.filter(|&s| s != CoverParameters::minimal_s(p)) {
        return Err(Failure::Usage(format!(
            "--s: the report is built for the minimal-genus exponent s = {} (got {s})",
            CoverParameters::minimal_s(p)
        )));
    }
    let r = build_report(p, l, c.seed, c.budget)?;
    Ok((r.to_string(), emit_report_json(&r)))
}
