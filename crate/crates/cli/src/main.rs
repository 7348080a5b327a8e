//! Command-line front end.
//!
//! Subcommands:
//! * `generate` — read a parameters file and emit the full bundle
//!   (A, g, X, O, ϑ, S) with residuals as JSON.
//! * `verify` — run named identity suites and emit the aggregated report;
//!   the exit code reflects the outcome.
//! * `conventions` — run the sign-convention probes and emit the resolved
//!   ledger with per-candidate evidence.
//! * `tables` — dump the bivector commutator table evaluations.
//!
//! Exit codes: 0 all checks pass, 1 an identity fails or a probe is
//! inconsistent, 2 malformed input, 3 size limit exceeded.

use std::io::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use spinlct::clifford::{comm_table_1d, comm_table_nd, label_lct_generators};
use spinlct::io::{export_bundle, params_from_json};
use spinlct::signature::Signature;
use spinlct::spin::rho;
use spinlct::suites::{conventions_ledger, resolve_suites, run_suite, SuiteConfig, SuiteError};
use spinlct::weyl::ConvKind;

#[derive(Parser)]
#[command(name = "spinlct", version, about = "Exact verification of spinorial representations of linear canonical transformations")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, ValueEnum)]
enum ConvArg {
    /// [p, x] = -i*eta (the convention selected by the product-table oracle)
    NegIEta,
    /// [p, x] = +i*eta
    PosIEta,
}

impl From<ConvArg> for ConvKind {
    fn from(v: ConvArg) -> ConvKind {
        match v {
            ConvArg::NegIEta => ConvKind::NegIEta,
            ConvArg::PosIEta => ConvKind::PosIEta,
        }
    }
}

#[derive(Subcommand)]
enum Cmd {
    /// Build the bundle (A, g, X, O, theta, S) from a parameters file.
    Generate {
        /// JSON parameters file: {"signature": {"plus": P, "minus": M},
        /// "theta"|"phi"|"mu"|"lambda": N x N arrays of "num/den" strings}.
        #[arg(long)]
        params: PathBuf,
        /// Also write the JSON to this file.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Lift the default size caps.
        #[arg(long)]
        unsafe_size: bool,
    },
    /// Run verification suites.
    Verify {
        /// Comma-separated suite names, or "all".
        #[arg(long, value_delimiter = ',', required = true)]
        suite: Vec<String>,
        /// Dimension N (shorthand for --sig N,0).
        #[arg(long)]
        n: Option<usize>,
        /// Signature as PLUS,MINUS.
        #[arg(long)]
        sig: Option<String>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Override the default numeric tolerance.
        #[arg(long)]
        tol: Option<f64>,
        /// Commutation-constant convention for the symbolic suites.
        #[arg(long, value_enum, default_value = "neg-i-eta")]
        convention: ConvArg,
        #[arg(long)]
        unsafe_size: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Probe and report all sign conventions with evidence.
    Conventions {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Dump the bivector commutator table evaluations.
    Tables {
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        sig: Option<String>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

const EXIT_FAIL: u8 = 1;
const EXIT_INPUT: u8 = 2;
const EXIT_SIZE: u8 = 3;

fn parse_sig(n: Option<usize>, sig: Option<&str>) -> Result<Signature, String> {
    if let Some(spec) = sig {
        let mut parts = spec.split(',');
        let plus: usize = parts
            .next()
            .and_then(|x| x.trim().parse().ok())
            .ok_or_else(|| format!("bad --sig {spec:?}, expected PLUS,MINUS"))?;
        let minus: usize = parts
            .next()
            .and_then(|x| x.trim().parse().ok())
            .ok_or_else(|| format!("bad --sig {spec:?}, expected PLUS,MINUS"))?;
        if parts.next().is_some() || plus + minus == 0 {
            return Err(format!("bad --sig {spec:?}, expected PLUS,MINUS with PLUS+MINUS >= 1"));
        }
        return Ok(Signature::new(plus, minus));
    }
    match n {
        Some(0) => Err("--n must be at least 1".into()),
        Some(n) => Ok(Signature::new(n, 0)),
        None => Ok(Signature::new(1, 0)),
    }
}

fn emit(text: &str, out: Option<&PathBuf>) -> Result<(), String> {
    println!("{text}");
    if let Some(path) = out {
        let mut f = std::fs::File::create(path).map_err(|e| format!("cannot write {path:?}: {e}"))?;
        f.write_all(text.as_bytes()).map_err(|e| format!("cannot write {path:?}: {e}"))?;
        f.write_all(b"\n").map_err(|e| format!("cannot write {path:?}: {e}"))?;
    }
    Ok(())
}

fn input_error(msg: impl std::fmt::Display) -> ExitCode {
    eprintln!("error: {msg}");
    ExitCode::from(EXIT_INPUT)
}

fn run_generate(params: PathBuf, out: Option<PathBuf>, unsafe_size: bool) -> ExitCode {
    let text = match std::fs::read_to_string(&params) {
        Ok(t) => t,
        Err(e) => return input_error(format!("cannot read {params:?}: {e}")),
    };
    let parsed = match params_from_json(&text) {
        Ok(p) => p,
        Err(e) => return input_error(e),
    };
    if parsed.sig().n() > 3 && !unsafe_size {
        eprintln!("error: n = {} exceeds the bundle cap of 3 (use --unsafe-size)", parsed.sig().n());
        return ExitCode::from(EXIT_SIZE);
    }
    let bundle = match rho(&parsed) {
        Ok(b) => b,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(EXIT_FAIL);
        }
    };
    let export = export_bundle(&bundle, ConvKind::NegIEta);
    let text = serde_json::to_string_pretty(&export).expect("bundle serializes");
    match emit(&text, out.as_ref()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => input_error(e),
    }
}

#[allow(clippy::too_many_arguments)]
fn run_verify(
    suites: Vec<String>,
    n: Option<usize>,
    sig: Option<String>,
    seed: u64,
    tol: Option<f64>,
    convention: ConvArg,
    unsafe_size: bool,
    out: Option<PathBuf>,
) -> ExitCode {
    let sig = match parse_sig(n, sig.as_deref()) {
        Ok(s) => s,
        Err(e) => return input_error(e),
    };
    // reject unknown suites before any computation
    let resolved = match resolve_suites(&suites) {
        Ok(r) => r,
        Err(e) => return input_error(e),
    };
    let kind: ConvKind = convention.into();
    let config = SuiteConfig { sig, seed, kind, tol, unsafe_size };
    let mut reports = Vec::new();
    for name in &resolved {
        match run_suite(name, &config) {
            Ok(mut r) => reports.append(&mut r),
            Err(SuiteError::SizeLimit { suite, cap, n }) => {
                eprintln!("error: suite {suite} supports n <= {cap}; got n = {n}");
                return ExitCode::from(EXIT_SIZE);
            }
            Err(SuiteError::UnknownSuite(s)) => return input_error(format!("unknown suite {s:?}")),
            Err(e) => {
                eprintln!("error: {e}");
                return ExitCode::from(EXIT_FAIL);
            }
        }
    }
    let all_pass = reports.iter().all(|r| r.all_pass());
    let doc = json!({
        "config": {
            "signature": {"plus": sig.n_plus, "minus": sig.n_minus},
            "seed": seed,
            "convention": kind.label(),
            "tol": tol,
            "suites": resolved,
        },
        "suites": reports,
        "all_pass": all_pass,
    });
    let text = serde_json::to_string_pretty(&doc).expect("report serializes");
    if let Err(e) = emit(&text, out.as_ref()) {
        return input_error(e);
    }
    if all_pass {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(EXIT_FAIL)
    }
}

fn run_conventions(seed: u64, out: Option<PathBuf>) -> ExitCode {
    match conventions_ledger(seed) {
        Ok(ledger) => {
            let text = serde_json::to_string_pretty(&ledger).expect("ledger serializes");
            if let Err(e) = emit(&text, out.as_ref()) {
                return input_error(e);
            }
            if ledger.all_resolved {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(EXIT_FAIL)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(EXIT_FAIL)
        }
    }
}

fn run_tables(n: Option<usize>, sig: Option<String>, out: Option<PathBuf>) -> ExitCode {
    let sig = match parse_sig(n, sig.as_deref()) {
        Ok(s) => s,
        Err(e) => return input_error(e),
    };
    if sig.n() > 3 {
        eprintln!("error: tables support n <= 3; got n = {}", sig.n());
        return ExitCode::from(EXIT_SIZE);
    }
    let mut tables = Vec::new();
    if sig.n() == 1 {
        let lg = label_lct_generators(Signature::new(1, 0)).expect("small algebra");
        tables.push(comm_table_1d(&lg));
    }
    let lg = match label_lct_generators(sig) {
        Ok(lg) => lg,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(EXIT_SIZE);
        }
    };
    tables.push(comm_table_nd(&lg));
    let all_pass = tables.iter().all(|t| t.all_pass());
    let dump = |family: &[spinlct::mat::IMat]| -> Vec<_> {
        family.iter().map(spinlct::io::imat_to_int_pairs).collect()
    };
    let doc = json!({
        "signature": {"plus": sig.n_plus, "minus": sig.n_minus},
        "generators": {
            "alpha_plus": dump(&lg.alpha_plus),
            "beta_plus": dump(&lg.beta_plus),
            "beta_minus": dump(&lg.beta_minus),
            "alpha_minus": dump(&lg.alpha_minus),
        },
        "tables": tables,
        "all_pass": all_pass,
    });
    let text = serde_json::to_string_pretty(&doc).expect("tables serialize");
    if let Err(e) = emit(&text, out.as_ref()) {
        return input_error(e);
    }
    if all_pass {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(EXIT_FAIL)
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.cmd {
        Cmd::Generate { params, out, unsafe_size } => run_generate(params, out, unsafe_size),
        Cmd::Verify { suite, n, sig, seed, tol, convention, unsafe_size, out } => {
            run_verify(suite, n, sig, seed, tol, convention, unsafe_size, out)
        }
        Cmd::Conventions { seed, out } => run_conventions(seed, out),
        Cmd::Tables { n, sig, out } => run_tables(n, sig, out),
    }
}
