//! Command-line front end.
//!
//! Every subcommand writes a deterministic report to the given writer in one
//! of three formats. Errors carry an exit code: 2 for bad usage, 1 for a
//! failed computation or invariant.

use std::io::{self, Write};

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use serde_json::{json, Value};
use thiserror::Error;

use crate::divisors::{divisor_report, fano_scan, is_fano};
use crate::genus1::{genus1_all_routes, Genus1Error, Route};
use crate::localization::{
    assemble_poincare, check_invariants, Assembly, ExclusionRule, InvariantCheck, LocalizationConfig,
    LocalizationError, LocusKind, NodeSmoothing,
};
use crate::polya::{bracelet_count, bracelet_total, BraceletQuery};
use crate::polynomial::IntPolynomial;

pub const THREADS_ENV: &str = "SQBETTI_THREADS";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    #[default]
    Table,
}

#[derive(Debug, Clone, Parser)]
#[command(
    name = "sqbetti",
    version,
    about = "Betti numbers of genus-1 stable quotient spaces"
)]
pub struct RunConfig {
    #[arg(long, value_enum, default_value_t = Format::Table, global = true)]
    pub format: Format,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Subcommand)]
pub enum Command {
    /// Poincaré polynomial of Q̄₁(ℙⁿ⁻¹, d) by torus localization.
    Poincare(SpaceArgs),
    /// Poincaré polynomial of the n = 1 space.
    Genus1 {
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
        d: u32,
        /// Compare the strata sum, closed formula and compact form.
        #[arg(long)]
        check: bool,
    },
    /// Every fixed locus with its cell shift and Poincaré polynomial.
    Loci(SpaceArgs),
    /// Bracelet counts N(d, i) for i = 0..d.
    Bracelets {
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
        d: u32,
    },
    /// Canonical class, anticanonical class in the nef basis, Fano test.
    Divisors {
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
        n: u32,
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
        d: u32,
    },
    /// All Fano spaces with d ≥ 2.
    FanoScan,
}

#[derive(Debug, Clone, Args)]
pub struct SpaceArgs {
    #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
    pub n: u32,
    #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
    pub d: u32,
    #[arg(long, value_enum, default_value_t = ExclusionRule::Successor)]
    pub exclusion: ExclusionRule,
    #[arg(long, value_enum, default_value_t = NodeSmoothing::Tangent)]
    pub smoothing: NodeSmoothing,
    /// Starting base K for the weight vector (1, K, K², …).
    #[arg(long = "weight-seed-k")]
    pub weight_seed_k: Option<u64>,
    /// Run the structural invariant checks and fail if any does not hold.
    #[arg(long)]
    pub check: bool,
}

impl SpaceArgs {
    fn config(&self) -> LocalizationConfig {
        LocalizationConfig {
            exclusion: self.exclusion,
            smoothing: self.smoothing,
            weight_seed_k: self.weight_seed_k,
        }
    }
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("invariant {invariant} violated: {detail}")]
    Invariant { invariant: String, detail: String },
    #[error(transparent)]
    Localization(#[from] LocalizationError),
    #[error(transparent)]
    Genus1(#[from] Genus1Error),
    #[error(transparent)]
    Io(#[from] io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 2,
            _ => 1,
        }
    }

    pub fn to_json(&self) -> Value {
        let kind = match self {
            CliError::Usage(_) => "usage",
            CliError::Invariant { .. } => "invariant",
            CliError::Localization(LocalizationError::ZeroWeight { .. }) => "zero-weight",
            CliError::Localization(LocalizationError::EscalationExhausted { .. }) => "zero-weight",
            CliError::Localization(_) => "localization",
            CliError::Genus1(_) => "genus1",
            CliError::Io(_) => "io",
        };
        let mut v = json!({ "error": kind, "message": self.to_string() });
        match self {
            CliError::Invariant { invariant, .. } => v["invariant"] = json!(invariant),
            CliError::Localization(
                LocalizationError::ZeroWeight { graph, .. }
                | LocalizationError::CardinalityMismatch { graph, .. },
            ) => v["graph"] = json!(graph),
            _ => {}
        }
        v
    }
}

/// Worker count from `SQBETTI_THREADS`; `0` or unset means automatic.
pub fn thread_count_from_env() -> Result<usize, CliError> {
    match std::env::var(THREADS_ENV) {
        Err(_) => Ok(0),
        Ok(raw) => raw.trim().parse().map_err(|_| {
            CliError::Usage(format!(
                "{THREADS_ENV} must be a nonnegative integer, got {raw:?}"
            ))
        }),
    }
}

fn configure_threads() -> Result<(), CliError> {
    let threads = thread_count_from_env()?;
    // A pool may already exist when `run` is called more than once in-process.
    let _ = rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build_global();
    Ok(())
}

pub fn run(cfg: RunConfig, out: &mut impl Write) -> Result<(), CliError> {
    configure_threads()?;
    match &cfg.command {
        Command::Poincare(args) => poincare(args, cfg.format, out),
        Command::Loci(args) => loci(args, cfg.format, out),
        Command::Genus1 { d, check } => genus1(*d, *check, cfg.format, out),
        Command::Bracelets { d } => bracelets(*d, cfg.format, out),
        Command::Divisors { n, d } => divisors(*n, *d, cfg.format, out),
        Command::FanoScan => fano(cfg.format, out),
    }
}

fn write_json(out: &mut impl Write, v: &Value) -> Result<(), CliError> {
    serde_json::to_writer_pretty(&mut *out, v).map_err(io::Error::from)?;
    writeln!(out)?;
    Ok(())
}

fn write_coefficient_csv(out: &mut impl Write, p: &IntPolynomial, top: usize) -> Result<(), CliError> {
    writeln!(out, "degree,value")?;
    for k in 0..=top {
        writeln!(out, "{k},{}", p.coeff(k))?;
    }
    Ok(())
}

fn first_failure(checks: &[InvariantCheck]) -> Result<(), CliError> {
    match checks.iter().find(|c| !c.passed) {
        None => Ok(()),
        Some(c) => Err(CliError::Invariant {
            invariant: c.name.to_string(),
            detail: c.detail.clone(),
        }),
    }
}

fn write_check_lines(out: &mut impl Write, checks: &[InvariantCheck]) -> Result<(), CliError> {
    for c in checks {
        let status = if c.passed { "pass" } else { "FAIL" };
        writeln!(out, "check {}: {status} ({})", c.name, c.detail)?;
    }
    Ok(())
}

fn assembly_json(a: &Assembly, checks: Option<&[InvariantCheck]>) -> Value {
    let mut v = serde_json::to_value(a).expect("assembly serializes");
    if let Some(checks) = checks {
        v["checks"] = json!(checks);
    }
    v
}

fn assemble(args: &SpaceArgs) -> Result<(Assembly, Option<Vec<InvariantCheck>>), CliError> {
    let a = assemble_poincare(args.n, args.d, &args.config())?;
    let checks = args.check.then(|| check_invariants(&a));
    Ok((a, checks))
}

fn poincare(args: &SpaceArgs, format: Format, out: &mut impl Write) -> Result<(), CliError> {
    let (a, checks) = assemble(args)?;
    match format {
        Format::Json => write_json(out, &assembly_json(&a, checks.as_deref()))?,
        Format::Csv => write_coefficient_csv(out, &a.poincare, 2 * (a.n * a.d) as usize)?,
        Format::Table => {
            writeln!(out, "{}", a.poincare)?;
            if let Some(c) = &checks {
                write_check_lines(out, c)?;
            }
        }
    }
    checks.as_deref().map_or(Ok(()), first_failure)
}

fn join(v: &[u32]) -> String {
    v.iter().map(ToString::to_string).collect::<Vec<_>>().join(";")
}

fn loci(args: &SpaceArgs, format: Format, out: &mut impl Write) -> Result<(), CliError> {
    let (a, checks) = assemble(args)?;
    match format {
        Format::Json => write_json(out, &assembly_json(&a, checks.as_deref()))?,
        Format::Csv => {
            writeln!(out, "kind,ell,m,nu,s,delta,positive_weights,shift,poincare")?;
            for r in &a.records {
                match &r.kind {
                    LocusKind::TypeA { ell } => writeln!(
                        out,
                        "A,{ell},,,,,{},{},{}",
                        r.positive_weight_count,
                        r.shift(),
                        r.poincare
                    )?,
                    LocusKind::TypeB { graph } => writeln!(
                        out,
                        "B,,{},{},{},{},{},{},{}",
                        graph.m(),
                        join(graph.nu()),
                        join(graph.s()),
                        join(graph.delta()),
                        r.positive_weight_count,
                        r.shift(),
                        r.poincare
                    )?,
                }
            }
        }
        Format::Table => {
            writeln!(
                out,
                "weights {:?}",
                a.weights
                    .values()
                    .iter()
                    .map(ToString::to_string)
                    .collect::<Vec<_>>()
            )?;
            for r in &a.records {
                match &r.kind {
                    LocusKind::TypeA { ell } => {
                        writeln!(out, "A ell={ell} shift={} poincare={}", r.shift(), r.poincare)?
                    }
                    LocusKind::TypeB { graph } => writeln!(
                        out,
                        "B nu={:?} s={:?} delta={:?} shift={} poincare={}",
                        graph.nu(),
                        graph.s(),
                        graph.delta(),
                        r.shift(),
                        r.poincare
                    )?,
                }
            }
            writeln!(out, "total {}", a.poincare)?;
            if let Some(c) = &checks {
                write_check_lines(out, c)?;
            }
        }
    }
    checks.as_deref().map_or(Ok(()), first_failure)
}

fn genus1(d: u32, check: bool, format: Format, out: &mut impl Write) -> Result<(), CliError> {
    let r = genus1_all_routes(u64::from(d))?;
    // the strata sum is the reference; the closed formula must always match it
    r.compare(Route::Strata, Route::ClosedFormula)?;
    let comparisons: Vec<(Route, Route, Result<(), Genus1Error>)> = if check {
        [
            (Route::Strata, Route::ClosedFormula),
            (Route::Strata, Route::SimpleForm),
        ]
        .into_iter()
        .map(|(a, b)| (a, b, r.compare(a, b)))
        .collect()
    } else {
        Vec::new()
    };
    match format {
        Format::Json => {
            let mut v = json!({
                "d": d,
                "poincare": r.via_strata,
                "routes": {
                    "strata": r.via_strata,
                    "closed_formula": r.via_closed_formula,
                    "simple_form": r.via_simple_form,
                },
            });
            if check {
                v["checks"] = comparisons
                    .iter()
                    .map(|(a, b, res)| {
                        json!({
                            "left": a,
                            "right": b,
                            "passed": res.is_ok(),
                            "detail": res.as_ref().err().map(ToString::to_string),
                        })
                    })
                    .collect();
            }
            write_json(out, &v)?;
        }
        Format::Csv => write_coefficient_csv(out, &r.via_strata, 2 * d as usize)?,
        Format::Table => {
            writeln!(out, "{}", r.via_strata)?;
            for (a, b, res) in &comparisons {
                match res {
                    Ok(()) => writeln!(out, "check {a} = {b}: pass")?,
                    Err(e) => writeln!(out, "check {a} = {b}: FAIL ({e})")?,
                }
            }
        }
    }
    match comparisons.into_iter().find_map(|(_, _, res)| res.err()) {
        Some(e) => Err(e.into()),
        None => Ok(()),
    }
}

fn bracelets(d: u32, format: Format, out: &mut impl Write) -> Result<(), CliError> {
    let d = u64::from(d);
    let counts: Vec<_> = (0..=d)
        .map(|i| bracelet_count(BraceletQuery::new(d, i).expect("0 ≤ i ≤ d")))
        .collect();
    let total = bracelet_total(d).expect("d ≥ 1");
    match format {
        Format::Json => write_json(
            out,
            &json!({
                "d": d,
                "counts": counts.iter().map(ToString::to_string).collect::<Vec<_>>(),
                "total": total.to_string(),
            }),
        )?,
        Format::Csv => {
            writeln!(out, "black,count")?;
            for (i, c) in counts.iter().enumerate() {
                writeln!(out, "{i},{c}")?;
            }
        }
        Format::Table => {
            for (i, c) in counts.iter().enumerate() {
                writeln!(out, "N({d},{i}) = {c}")?;
            }
            writeln!(out, "total = {total}")?;
        }
    }
    Ok(())
}

fn divisors(n: u32, d: u32, format: Format, out: &mut impl Write) -> Result<(), CliError> {
    let report = divisor_report(n, d);
    match format {
        Format::Json => write_json(out, &serde_json::to_value(&report).expect("report serializes"))?,
        Format::Csv => {
            writeln!(out, "divisor,gamma_j,gamma_t")?;
            let t = &report.intersection_table;
            for (name, row) in [("D_j", &t.d_j), ("D_b", &t.d_b), ("D_fd", &t.d_fd)] {
                writeln!(out, "{name},{},{}", row[0], row[1])?;
            }
        }
        Format::Table => {
            writeln!(out, "K = ({}) D_j + ({}) D_b", report.k.cj, report.k.cb)?;
            writeln!(
                out,
                "-K = ({}) D_j + ({}) D_fd",
                report.anti_k_nef_basis[0], report.anti_k_nef_basis[1]
            )?;
            writeln!(out, "fano = {}", report.fano)?;
            match report.picard_rank {
                Some(r) => writeln!(out, "picard rank = {r}")?,
                None => writeln!(out, "picard rank = unresolved at (1, 1)")?,
            }
            let t = &report.intersection_table;
            writeln!(out, "        gamma_j  gamma_t")?;
            for (name, row) in [("D_j", &t.d_j), ("D_b", &t.d_b), ("D_fd", &t.d_fd)] {
                writeln!(out, "{name:<6}  {:>7}  {:>7}", row[0], row[1])?;
            }
        }
    }
    Ok(())
}

fn fano(format: Format, out: &mut impl Write) -> Result<(), CliError> {
    let rows: Vec<(u32, u32, BigInt)> = fano_scan()
        .into_iter()
        .map(|(n, d)| {
            debug_assert!(is_fano(n, d));
            (n, d, BigInt::from(n) * (d + 2) * (d - 1))
        })
        .collect();
    match format {
        Format::Json => write_json(
            out,
            &rows
                .iter()
                .map(|(n, d, idx)| json!({ "n": n, "d": d, "index": idx.to_string() }))
                .collect(),
        )?,
        Format::Csv => {
            writeln!(out, "n,d,index")?;
            for (n, d, idx) in &rows {
                writeln!(out, "{n},{d},{idx}")?;
            }
        }
        Format::Table => {
            for (n, d, idx) in &rows {
                writeln!(out, "n={n} d={d} n(d+2)(d-1)={idx}")?;
            }
        }
    }
    Ok(())
}
