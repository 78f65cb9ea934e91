//! Command-line front end: `sum`, `table`, `verify` and `gf`.
//!
//! Exit codes: 0 success, 1 numerical failure, 2 malformed input, 3 an
//! input the method does not cover, 4 a verification outside tolerance.

use std::ffi::OsString;
use std::io::Write;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use serde_json::{json, Value};

use crate::error::Error;
use crate::exact::{format_c64, format_f64, ComplexQ, Scalar};
use crate::genfun::{Location, PoleReport, RationalGF, Root};
use crate::lab::{
    approx_identity_limit, fit_divergence, fourier_coeff_quadrature, fourier_coeff_residue, pf_pairing, Branch,
    Mollifier, PfOptions, TracePoint,
};
use crate::special::{euler_at_zero_table, ApostolTable, BernoulliTable};
use crate::summation::{self, SumOptions, SummationResult};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_INADMISSIBLE: i32 = 3;
pub const EXIT_TOLERANCE: i32 = 4;

/// Soft limit on `k` and table length unless `--max-k` raises it.
pub const DEFAULT_MAX_K: usize = 200;

/// Tolerances for the `verify` checks.
pub const FOURIER_TOL_ANALYTIC: f64 = 1e-6;
pub const FOURIER_TOL_CIRCLE: f64 = 1e-4;
pub const PF_STABILITY_TOL: f64 = 1e-6;
pub const PF_DIVERGENCE_REL_TOL: f64 = 0.1;

#[derive(Debug, Parser)]
#[command(name = "divsum", version, about = "Exact regularized sums of divergent power series")]
pub struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Output::Exact, global = true)]
    pub output: Output,

    /// Raise the soft limit on k and table length.
    #[arg(long, default_value_t = DEFAULT_MAX_K, global = true)]
    pub max_k: usize,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Output {
    Exact,
    Decimal,
    Json,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Regularized sum Σ n^k a_n.
    #[command(subcommand)]
    Sum(SumCommand),
    /// Exact special-number tables.
    #[command(subcommand)]
    Table(TableCommand),
    /// Numerical checks of the distributional identities.
    #[command(subcommand)]
    Verify(VerifyCommand),
    /// Describe a generating function: poles, admissibility, coefficients.
    Gf {
        #[command(flatten)]
        gf: GfArgs,
        /// Number of Taylor coefficients to print.
        #[arg(long, default_value_t = 8)]
        terms: usize,
    },
}

#[derive(Debug, Args)]
pub struct GfArgs {
    /// Numerator coefficients, ascending: "c0,c1,...".
    #[arg(long, allow_hyphen_values = true)]
    pub num: String,
    /// Denominator coefficients, ascending.
    #[arg(long, allow_hyphen_values = true)]
    pub den: String,
    /// Exact denominator roots: "root^mult;root^mult;...".
    #[arg(long, allow_hyphen_values = true)]
    pub den_roots: Option<String>,
}

impl GfArgs {
    fn build(&self) -> crate::Result<RationalGF> {
        RationalGF::parse(&self.num, &self.den, self.den_roots.as_deref())
    }
}

#[derive(Debug, Subcommand)]
pub enum SumCommand {
    /// 1^k - 2^k + 3^k - ...
    Alternating {
        #[arg(short)]
        k: usize,
    },
    /// 1^k + 2^k + 3^k + ...
    Natural {
        #[arg(short)]
        k: usize,
    },
    /// Σ ε^n n^k.
    Apostol {
        #[arg(short)]
        k: usize,
        #[arg(long, allow_hyphen_values = true)]
        eps: String,
    },
    /// Σ n^k a_n for f(z) = num/den.
    Gf {
        #[command(flatten)]
        gf: GfArgs,
        #[arg(short)]
        k: usize,
        /// Experimental: accept several simple poles on the unit circle.
        #[arg(long)]
        allow_multi_pole: bool,
    },
}

#[derive(Debug, Subcommand)]
pub enum TableCommand {
    /// B_0..B_n (B_1 = -1/2).
    Bernoulli {
        #[arg(short)]
        n: usize,
    },
    /// E_0(0)..E_n(0).
    Euler0 {
        #[arg(short)]
        n: usize,
    },
    /// B_0(ε)..B_n(ε).
    Apostol {
        #[arg(short)]
        n: usize,
        #[arg(long, allow_hyphen_values = true)]
        eps: String,
    },
}

#[derive(Debug, Subcommand)]
pub enum VerifyCommand {
    /// Fourier coefficient c_n by residue (exact) and by quadrature.
    Fourier {
        #[command(flatten)]
        gf: GfArgs,
        #[arg(short)]
        n: usize,
    },
    /// Approximate-identity limit against the exact regularized sum.
    Mollifier {
        #[command(flatten)]
        gf: GfArgs,
        #[arg(short)]
        k: usize,
        /// Mollifier scales, increasing.
        #[arg(long, value_delimiter = ',')]
        m: Option<Vec<u32>>,
        /// Allowed distance from the exact value (default 1e-4 for k = 1, else 1e-3).
        #[arg(long)]
        tol: Option<f64>,
    },
    /// A_k = (1 - 2^(k+1)) N_k from the closed forms.
    Homothetic {
        #[arg(short)]
        k: usize,
    },
    /// Finite-part pairing with and without the counterterm.
    Pf {
        #[command(flatten)]
        gf: GfArgs,
        /// Bump center (default: the pole angle, or 0 without an on-circle pole).
        #[arg(long, allow_hyphen_values = true)]
        center: Option<f64>,
        /// Bump scale; the support half-width is 1/scale.
        #[arg(long, default_value_t = 1.0)]
        scale: f64,
    },
}

/// Error plus the exit code it maps to.
struct Failure {
    code: i32,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure { code: exit_code(&e), message: e.to_string() }
    }
}

fn usage(message: impl Into<String>) -> Failure {
    Failure { code: EXIT_USAGE, message: message.into() }
}

pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Parse(_)
        | Error::InvalidArgument(_)
        | Error::ZeroOrder
        | Error::ZeroDenominator
        | Error::NonzeroConstantTerm
        | Error::PoleAtOrigin
        | Error::BadRootHint => EXIT_USAGE,
        Error::Inadmissible(_)
        | Error::HigherOrderPole
        | Error::DegenerateApostol
        | Error::UseNaturalSum
        | Error::ParameterOutsideDisc
        | Error::SupportOverlap => EXIT_INADMISSIBLE,
        _ => EXIT_FAILURE,
    }
}

struct Ctx<'a> {
    output: Output,
    max_k: usize,
    out: &'a mut dyn Write,
    err: &'a mut dyn Write,
}

/// Runs the CLI on `args` (including the program name) and returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() { err.write_all(text.as_bytes()) } else { out.write_all(text.as_bytes()) };
            return code;
        }
    };
    check_precision_env(err);
    let mut ctx = Ctx { output: cli.output, max_k: cli.max_k, out, err };
    let result = match &cli.command {
        Command::Sum(cmd) => cmd_sum(&mut ctx, cmd),
        Command::Table(cmd) => cmd_table(&mut ctx, cmd),
        Command::Verify(cmd) => cmd_verify(&mut ctx, cmd),
        Command::Gf { gf, terms } => cmd_gf(&mut ctx, gf, *terms),
    };
    match result {
        Ok(code) => code,
        Err(f) => {
            let _ = writeln!(ctx.err, "error: {}", f.message);
            f.code
        }
    }
}

fn check_precision_env(err: &mut dyn Write) {
    if let Ok(bits) = std::env::var("DIVSUM_PRECISION_BITS") {
        if bits.trim() != "53" {
            let _ = writeln!(
                err,
                "warning: DIVSUM_PRECISION_BITS={bits} ignored; verification instruments use 53-bit doubles"
            );
        }
    }
}

fn check_k(ctx: &Ctx, k: usize, name: &str) -> Result<(), Failure> {
    if k > ctx.max_k {
        return Err(usage(format!("{name} = {k} exceeds the soft limit {}; pass --max-k to raise it", ctx.max_k)));
    }
    Ok(())
}

fn parse_scalar(s: &str) -> Result<ComplexQ, Failure> {
    s.parse::<ComplexQ>().map_err(Failure::from)
}

fn emit_json(ctx: &mut Ctx, v: &Value) -> Result<(), Failure> {
    let text = serde_json::to_string_pretty(v).expect("json values serialise");
    writeln!(ctx.out, "{text}").map_err(io_failure)
}

fn io_failure(e: std::io::Error) -> Failure {
    Failure { code: EXIT_FAILURE, message: format!("write failed: {e}") }
}

fn pair(z: Complex64) -> Value {
    json!([z.re, z.im])
}

fn decimal(z: Complex64) -> String {
    if z.im == 0.0 {
        format_f64(z.re)
    } else {
        format_c64(z)
    }
}

fn scalar_json(s: &Scalar) -> Value {
    json!({
        "exact": s.exact().map(|z| z.to_string()),
        "float": pair(s.to_c64()),
    })
}

fn poles_json(report: &PoleReport) -> Value {
    let entries: Vec<Value> = report
        .entries()
        .map(|(loc, p)| {
            let tolerance = match &p.root {
                Root::Exact(_) => None,
                Root::Numeric { tol, .. } => Some(*tol),
            };
            json!({
                "root": match &p.root {
                    Root::Exact(z) => z.to_string(),
                    Root::Numeric { value, .. } => format_c64(*value),
                },
                "value": pair(p.root.to_c64()),
                "multiplicity": p.multiplicity,
                "location": loc,
                "exact": p.root.is_exact(),
                "tolerance": tolerance,
            })
        })
        .collect();
    Value::Array(entries)
}

fn location_name(loc: Location) -> &'static str {
    match loc {
        Location::Inside => "inside the unit disc",
        Location::OnCircle => "on the unit circle",
        Location::Outside => "outside the unit disc",
        Location::Removable => "removable",
    }
}

fn print_result(ctx: &mut Ctx, r: &SummationResult) -> Result<i32, Failure> {
    match ctx.output {
        Output::Json => emit_json(
            ctx,
            &json!({
                "value": scalar_json(&r.value),
                "k": r.k,
                "method": r.method,
                "admissible": r.diagnostics.admissible,
                "poles": poles_json(&r.diagnostics.poles),
                "notes": r.diagnostics.notes,
            }),
        )?,
        Output::Exact | Output::Decimal => {
            let line = match (ctx.output, &r.value) {
                (Output::Exact, v) => v.to_string(),
                (_, Scalar::Exact(z)) => format!("{} (exact {z})", decimal(z.to_c64())),
                (_, Scalar::Float(z)) => format!("{} (numeric)", decimal(*z)),
            };
            writeln!(ctx.out, "{line}").map_err(io_failure)?;
            let d = &r.diagnostics;
            let _ = writeln!(ctx.err, "method: {}", r.method.as_str());
            let _ = writeln!(ctx.err, "admissible: {}", d.admissible);
            for note in &d.notes {
                let _ = writeln!(ctx.err, "note: {note}");
            }
        }
    }
    Ok(EXIT_OK)
}

fn cmd_sum(ctx: &mut Ctx, cmd: &SumCommand) -> Result<i32, Failure> {
    let result = match cmd {
        SumCommand::Alternating { k } => {
            check_k(ctx, *k, "k")?;
            summation::alternating_sum(*k)?
        }
        SumCommand::Natural { k } => {
            check_k(ctx, *k, "k")?;
            summation::natural_sum(*k)?
        }
        SumCommand::Apostol { k, eps } => {
            check_k(ctx, *k, "k")?;
            summation::apostol_sum(*k, &parse_scalar(eps)?)?
        }
        SumCommand::Gf { gf, k, allow_multi_pole } => {
            check_k(ctx, *k, "k")?;
            let f = gf.build()?;
            summation::regularized_sum_with(&f, *k, &SumOptions { allow_multi_pole: *allow_multi_pole })?
        }
    };
    print_result(ctx, &result)
}

fn cmd_table(ctx: &mut Ctx, cmd: &TableCommand) -> Result<i32, Failure> {
    let (kind, eps, values): (&str, Option<ComplexQ>, Vec<ComplexQ>) = match cmd {
        TableCommand::Bernoulli { n } => {
            check_k(ctx, *n, "n")?;
            ("bernoulli", None, BernoulliTable::up_to(*n).values.into_iter().map(ComplexQ::real).collect())
        }
        TableCommand::Euler0 { n } => {
            check_k(ctx, *n, "n")?;
            ("euler0", None, euler_at_zero_table(*n).into_iter().map(ComplexQ::real).collect())
        }
        TableCommand::Apostol { n, eps } => {
            check_k(ctx, *n, "n")?;
            let e = parse_scalar(eps)?;
            let t = ApostolTable::up_to(*n, &e)?;
            ("apostol", Some(e), t.values)
        }
    };
    match ctx.output {
        Output::Json => {
            let mut v = json!({ "kind": kind, "values": values.iter().map(|z| z.to_string()).collect::<Vec<_>>() });
            if let Some(e) = eps {
                v["eps"] = json!(e.to_string());
            }
            emit_json(ctx, &v)?;
        }
        Output::Exact => {
            for (i, z) in values.iter().enumerate() {
                writeln!(ctx.out, "{i}\t{z}").map_err(io_failure)?;
            }
        }
        Output::Decimal => {
            for (i, z) in values.iter().enumerate() {
                writeln!(ctx.out, "{i}\t{} (exact {z})", decimal(z.to_c64())).map_err(io_failure)?;
            }
        }
    }
    Ok(EXIT_OK)
}

fn trace_lines(ctx: &mut Ctx, trace: &[TracePoint]) -> Result<(), Failure> {
    for p in trace {
        let v = serde_json::to_string(p).expect("trace point serialises");
        writeln!(ctx.out, "  {v}").map_err(io_failure)?;
    }
    Ok(())
}

fn verdict(pass: bool) -> &'static str {
    if pass {
        "PASS"
    } else {
        "FAIL"
    }
}

fn finish(ctx: &mut Ctx, report: Value, human: &[String], trace: &[TracePoint], pass: bool) -> Result<i32, Failure> {
    match ctx.output {
        Output::Json => emit_json(ctx, &report)?,
        _ => {
            for line in human {
                writeln!(ctx.out, "{line}").map_err(io_failure)?;
            }
            if !trace.is_empty() {
                writeln!(ctx.out, "trace:").map_err(io_failure)?;
                trace_lines(ctx, trace)?;
            }
            writeln!(ctx.out, "{}", verdict(pass)).map_err(io_failure)?;
        }
    }
    Ok(if pass { EXIT_OK } else { EXIT_TOLERANCE })
}

fn cmd_verify(ctx: &mut Ctx, cmd: &VerifyCommand) -> Result<i32, Failure> {
    match cmd {
        VerifyCommand::Fourier { gf, n } => {
            check_k(ctx, *n, "n")?;
            let f = gf.build()?;
            let exact = fourier_coeff_residue(&f, *n)?;
            let coeffs = f.taylor_coeffs(*n)?;
            let identity = exact == coeffs[n - 1].scale(&(*n as i64).into());
            let q = fourier_coeff_quadrature(&f, *n as i64)?;
            let tol = match q.branch {
                Branch::Trapezoid => FOURIER_TOL_ANALYTIC,
                Branch::FinitePart => FOURIER_TOL_CIRCLE,
            };
            let diff = (q.value - exact.to_c64()).norm();
            let pass = identity && diff <= tol;
            let report = json!({
                "check": "fourier",
                "n": n,
                "exact": exact.to_string(),
                "n_times_a_n": identity,
                "quadrature": pair(q.value),
                "error_estimate": q.error,
                "branch": q.branch,
                "difference": diff,
                "tolerance": tol,
                "pass": pass,
                "trace": q.trace,
            });
            let human = vec![
                format!("n = {n}"),
                format!("residue (exact): {exact}  [= n a_n: {identity}]"),
                format!("quadrature: {} ± {:.1e} ({})", decimal(q.value), q.error, branch_name(q.branch)),
                format!("difference: {diff:.3e} (tolerance {tol:e})"),
            ];
            finish(ctx, report, &human, &q.trace, pass)
        }
        VerifyCommand::Mollifier { gf, k, m, tol } => {
            check_k(ctx, *k, "k")?;
            let f = gf.build()?;
            let target = summation::regularized_sum(&f, *k)?.value;
            let schedule =
                m.clone().unwrap_or_else(|| if *k == 1 { vec![8, 16, 32, 64] } else { vec![16, 32, 64, 128] });
            let tol = tol.unwrap_or(if *k == 1 { 1e-4 } else { 1e-3 });
            let r = approx_identity_limit(&f, *k, &schedule)?;
            let diff = (r.limit - target.to_c64()).norm();
            let pass = diff <= tol;
            let report = json!({
                "check": "mollifier",
                "k": k,
                "target": scalar_json(&target),
                "limit": pair(r.limit),
                "error_estimate": r.error,
                "difference": diff,
                "tolerance": tol,
                "pass": pass,
                "trace": r.trace,
            });
            let human = vec![
                format!("k = {k}"),
                format!("exact: {target}"),
                format!("limit: {} ± {:.1e}", decimal(r.limit), r.error),
                format!("difference: {diff:.3e} (tolerance {tol:e})"),
            ];
            finish(ctx, report, &human, &r.trace, pass)
        }
        VerifyCommand::Homothetic { k } => {
            check_k(ctx, *k, "k")?;
            let h = summation::homothetic_check(*k)?;
            let report = json!({
                "check": "homothetic",
                "k": k,
                "lhs": h.lhs.to_string(),
                "rhs": h.rhs.to_string(),
                "pass": h.equal,
            });
            let human = vec![format!("k = {k}"), format!("lhs {}", h.lhs), format!("rhs {}", h.rhs)];
            finish(ctx, report, &human, &[], h.equal)
        }
        VerifyCommand::Pf { gf, center, scale } => {
            let f = gf.build()?;
            let report = f.classify_poles()?;
            let laurent = f.circle_laurent(&report)?;
            let center = center.unwrap_or(laurent.as_ref().map_or(0.0, |l| l.t0));
            let phi = Mollifier::normalized_at(center, *scale)?;
            let with = pf_pairing(&f, &phi, &PfOptions::default())?;
            let without = pf_pairing(&f, &phi, &PfOptions { counterterm: false, ..PfOptions::default() })?;
            let stable = with.error < PF_STABILITY_TOL;
            let (alpha, expected, rel, diverges_ok) = match (with.d_minus1, with.phi_t0) {
                (Some(d), Some(p)) => {
                    let fit = fit_divergence(&without.trace)?;
                    let expected = 2.0 * (d * p).norm();
                    let a = fit.alpha.norm();
                    if expected > 1e-12 {
                        let rel = (a - expected).abs() / expected;
                        (Some(fit.alpha), expected, Some(rel), rel <= PF_DIVERGENCE_REL_TOL)
                    } else {
                        (Some(fit.alpha), expected, None, a < 1e-6)
                    }
                }
                _ => (None, 0.0, None, true),
            };
            let pass = stable && diverges_ok;
            let json_report = json!({
                "check": "pf",
                "center": center,
                "scale": scale,
                "t0": with.t0,
                "phi_t0": with.phi_t0,
                "value": pair(with.value),
                "error_estimate": with.error,
                "stability_tolerance": PF_STABILITY_TOL,
                "alpha": alpha.map(pair),
                "expected_abs_alpha": expected,
                "alpha_relative_error": rel,
                "pass": pass,
                "trace": with.trace,
                "trace_without_counterterm": without.trace,
            });
            let mut human =
                vec![format!("pairing: {} ± {:.1e} (tolerance {PF_STABILITY_TOL:e})", decimal(with.value), with.error)];
            match (alpha, rel) {
                (Some(a), Some(rel)) => human.push(format!(
                    "without counterterm: |alpha| = {:.6e}, expected 2|d φ(t0)| = {expected:.6e} (relative {rel:.2e})",
                    a.norm()
                )),
                (Some(a), None) => human.push(format!("without counterterm: |alpha| = {:.3e}, φ(t0) = 0", a.norm())),
                _ => human.push("no pole on the unit circle: plain integral".to_string()),
            }
            let trace = with.trace.clone();
            finish(ctx, json_report, &human, &trace, pass)
        }
    }
}

fn branch_name(b: Branch) -> &'static str {
    match b {
        Branch::Trapezoid => "trapezoid",
        Branch::FinitePart => "finite part",
    }
}

fn cmd_gf(ctx: &mut Ctx, gf: &GfArgs, terms: usize) -> Result<i32, Failure> {
    check_k(ctx, terms, "terms")?;
    let f = gf.build()?;
    let report = f.classify_poles()?;
    let verdict = report.check_admissible(false);
    let laurent = if verdict.is_ok() { f.circle_laurent(&report)? } else { None };
    let coeffs = f.taylor_coeffs(terms)?;
    let (rn, rd) = f.reduced();
    match ctx.output {
        Output::Json => {
            let laurent_json = laurent.as_ref().map(|l| {
                json!({
                    "z0": scalar_json(&l.z0),
                    "t0": l.t0,
                    "c_minus1": scalar_json(&l.c_minus1),
                    "d_minus1": scalar_json(&l.d_minus1),
                })
            });
            emit_json(
                ctx,
                &json!({
                    "num": f.num().coeffs().iter().map(|c| c.to_string()).collect::<Vec<_>>(),
                    "den": f.den().coeffs().iter().map(|c| c.to_string()).collect::<Vec<_>>(),
                    "reduced": {
                        "num": rn.coeffs().iter().map(|c| c.to_string()).collect::<Vec<_>>(),
                        "den": rd.coeffs().iter().map(|c| c.to_string()).collect::<Vec<_>>(),
                    },
                    "poles": poles_json(&report),
                    "admissible": verdict.is_ok(),
                    "violation": verdict.as_ref().err().map(|v| v.to_string()),
                    "laurent": laurent_json,
                    "coefficients": coeffs.iter().map(|c| c.to_string()).collect::<Vec<_>>(),
                }),
            )?;
        }
        _ => {
            let w = &mut *ctx.out;
            writeln!(w, "f(z) = ({}) / ({})", f.num(), f.den()).map_err(io_failure)?;
            writeln!(w, "reduced: ({rn}) / ({rd})").map_err(io_failure)?;
            for (loc, p) in report.entries() {
                let kind = if p.root.is_exact() { "exact" } else { "numeric" };
                writeln!(w, "pole {} (order {}): {} [{kind}]", p.root, p.multiplicity, location_name(loc))
                    .map_err(io_failure)?;
            }
            match &verdict {
                Ok(()) => writeln!(w, "admissible: yes").map_err(io_failure)?,
                Err(v) => writeln!(w, "admissible: no ({v})").map_err(io_failure)?,
            }
            if let Some(l) = &laurent {
                writeln!(
                    w,
                    "laurent: z0 = {}, t0 = {}, c-1 = {}, d-1 = {}",
                    l.z0,
                    format_f64(l.t0),
                    l.c_minus1,
                    l.d_minus1
                )
                .map_err(io_failure)?;
            }
            let list: Vec<String> = coeffs.iter().map(|c| c.to_string()).collect();
            writeln!(w, "a_1..a_{terms}: {}", list.join(", ")).map_err(io_failure)?;
        }
    }
    Ok(EXIT_OK)
}
