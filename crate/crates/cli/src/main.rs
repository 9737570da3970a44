//! `qrr`: verify the identity catalog, expand DSL expressions, replay the
//! constant-term proofs and query the brute-force oracles.
//!
//! Exit status is 0 on success, 1 when a verification fails and 2 for usage,
//! parse or evaluation errors.

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{anyhow, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};
use qrr_core::catalog::{self, Identity, Sample, VerifyReport, DEFAULT_ORDER};
use qrr_core::oracles::{count_partitions, Parity, PartitionClass};
use qrr_core::qdsl;
use qrr_core::{prooftrace, Monomial, QError, QLaurent};
use serde::Serialize;

#[derive(Parser)]
#[command(name = "qrr", version, about = "Exact q-series identity checker")]
struct Cli {
    #[command(flatten)]
    common: Common,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args, Clone)]
struct Common {
    /// Truncation order N: coefficients of q^0..q^N are compared.
    #[arg(short = 'n', long, global = true, env = "QRR_DEFAULT_ORDER", default_value_t = DEFAULT_ORDER)]
    order: i64,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Also write the JSON report to this file.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Cmd {
    /// List catalog identities with citations and default samples.
    List,
    /// Check identities coefficient by coefficient.
    Verify(VerifyArgs),
    /// Expand a DSL expression (or both sides of an identity file).
    Expand(ExpandArgs),
    /// Replay the constant-term proof of Theorem K (1..=5) step by step.
    Proof { theorem: u32 },
    /// Brute-force oracles.
    #[command(subcommand)]
    Oracle(OracleCmd),
}

#[derive(Args)]
struct VerifyArgs {
    /// Identity id, e.g. RR1 or E13.
    #[arg(required_unless_present = "all", conflicts_with = "all")]
    id: Option<String>,
    #[arg(long)]
    all: bool,
    /// Worker threads for --all.
    #[arg(long, default_value_t = 1)]
    jobs: usize,
    /// Parameter value for a parametric identity, NAME=MONOMIAL (repeatable).
    #[arg(long, value_parser = parse_sample)]
    sample: Vec<(String, Monomial)>,
    /// Replace RR1's product by a wrong one (exercises the failure path).
    #[arg(long, hide = true)]
    mutate: bool,
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct ExpandArgs {
    #[arg(short = 'e', long = "expr")]
    expr: Option<String>,
    #[arg(short = 'f', long = "file")]
    file: Option<PathBuf>,
}

#[derive(Subcommand)]
enum OracleCmd {
    /// Count partitions with parts restricted by residue class.
    Partitions {
        #[arg(long, default_value_t = 1)]
        modulus: u32,
        /// Allowed residues, comma separated (default: all).
        #[arg(long, value_delimiter = ',')]
        residues: Vec<u32>,
        #[arg(long)]
        distinct: bool,
        #[arg(long, value_enum)]
        parity: Option<ParityArg>,
    },
    /// Compare catalog sides with the brute-force oracles.
    Check {
        /// Only checks whose name or identity id matches.
        filter: Option<String>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum ParityArg {
    Odd,
    Even,
}

fn parse_sample(s: &str) -> Result<(String, Monomial), String> {
    let (k, v) = s.split_once('=').ok_or("expected NAME=MONOMIAL")?;
    let m = v.trim().parse::<Monomial>().map_err(|e| e.to_string())?;
    Ok((k.trim().to_string(), m))
}

/// Error that maps to exit status 2.
struct Usage(anyhow::Error);

impl<E: Into<anyhow::Error>> From<E> for Usage {
    fn from(e: E) -> Self {
        Usage(e.into())
    }
}

type Outcome = Result<bool, Usage>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(Usage(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> Outcome {
    let c = cli.common;
    if c.order < 0 {
        return Err(anyhow!("order must be >= 0, got {}", c.order).into());
    }
    match cli.cmd {
        Cmd::List => list(&c),
        Cmd::Verify(a) => verify(&c, a),
        Cmd::Expand(a) => expand(&c, a),
        Cmd::Proof { theorem } => proof(&c, theorem),
        Cmd::Oracle(o) => oracle(&c, o),
    }
}

fn emit<T: Serialize>(c: &Common, value: &T, text: impl FnOnce() -> String) -> Result<(), Usage> {
    let json = serde_json::to_string_pretty(value)?;
    if let Some(path) = &c.out {
        std::fs::write(path, &json).with_context(|| format!("writing {}", path.display()))?;
    }
    let mut body = match c.format {
        Format::Json => json,
        Format::Text => text(),
    };
    if !body.ends_with('\n') {
        body.push('\n');
    }
    match std::io::stdout().lock().write_all(body.as_bytes()) {
        Err(e) if e.kind() != std::io::ErrorKind::BrokenPipe => Err(e.into()),
        _ => Ok(()),
    }
}

fn list(c: &Common) -> Outcome {
    let infos: Vec<_> = catalog::identities().iter().map(Identity::metadata).collect();
    emit(c, &infos, || {
        let mut s = String::new();
        for i in &infos {
            let params = if i.params.is_empty() { String::new() } else { format!(" [{}]", i.params.join(", ")) };
            s += &format!("{:<5} {}{}\n      {}\n", i.id, i.citation, params, i.notes);
            if !i.default_samples.is_empty() {
                s += &format!("      samples: {}\n", i.default_samples.join("; "));
            }
        }
        s
    })?;
    Ok(true)
}

fn verify(c: &Common, a: VerifyArgs) -> Outcome {
    let mut idents = catalog::identities();
    if a.mutate {
        for i in idents.iter_mut().filter(|i| i.id == "RR1") {
            *i = catalog::rr1_with_residues(1, 3);
        }
    }
    let reports: Vec<VerifyReport> = if a.all {
        if !a.sample.is_empty() {
            return Err(anyhow!("--sample applies to a single identity").into());
        }
        let pool = rayon::ThreadPoolBuilder::new().num_threads(a.jobs.max(1)).build()?;
        pool.install(|| {
            use rayon::prelude::*;
            idents.par_iter().map(|i| catalog::verify_identity(i, c.order, None)).collect()
        })
    } else {
        let id = a.id.expect("clap requires an id without --all");
        let ident = idents.iter().find(|i| i.id.eq_ignore_ascii_case(&id)).ok_or(QError::UnknownIdentity(id))?;
        let samples: Option<Vec<Sample>> = (!a.sample.is_empty()).then(|| vec![a.sample.into_iter().collect()]);
        if let Some(s) = &samples {
            if !ident.is_parametric() {
                return Err(anyhow!("{} has no parameters", ident.id).into());
            }
            if let Some(bad) = s[0].keys().find(|k| !ident.params.contains(k)) {
                return Err(anyhow!("{} has no parameter `{bad}`", ident.id).into());
            }
            if let Some(missing) = ident.params.iter().find(|p| !s[0].contains_key(*p)) {
                return Err(anyhow!("{} needs --sample {missing}=...", ident.id).into());
            }
        }
        vec![catalog::verify_identity(ident, c.order, samples.as_deref())]
    };
    let ok = reports.iter().all(VerifyReport::passed);
    if a.all {
        emit(c, &reports, || {
            let mut s: String = reports.iter().map(|r| format!("{r}\n")).collect();
            let passed = reports.iter().filter(|r| r.passed()).count();
            s += &format!("{passed}/{} identities pass through q^{}\n", reports.len(), c.order);
            s
        })?;
    } else {
        emit(c, &reports[0], || format!("{}\n", reports[0]))?;
    }
    Ok(ok)
}

#[derive(Serialize)]
struct SideJson {
    coefficients: Vec<(i64, String, String)>,
}

#[derive(Serialize)]
struct IdentityJson {
    order: i64,
    lhs: SideJson,
    rhs: SideJson,
    equal: bool,
    first_mismatch: Option<qrr_core::Mismatch>,
}

/// Coefficients from `min(0, lowest exponent)` through the order.
fn coefficient_line(s: &QLaurent) -> String {
    let lo = s.min_exp().unwrap_or(0).min(0);
    let body: Vec<String> = (lo..=s.order()).map(|e| s.coeff(e).to_string()).collect();
    let body = body.join(", ");
    if lo < 0 {
        format!("(from q^{lo}) {body}")
    } else {
        body
    }
}

fn expand(c: &Common, a: ExpandArgs) -> Outcome {
    let (text, origin) = match (a.expr, a.file) {
        (Some(e), _) => (e, "<expr>".to_string()),
        (None, Some(p)) => {
            let t = std::fs::read_to_string(&p).with_context(|| format!("reading {}", p.display()))?;
            (t, p.display().to_string())
        }
        (None, None) => unreachable!("clap requires one of --expr/--file"),
    };
    let file = qdsl::parse_file(&text).map_err(|e| anyhow!("{origin}: {e}"))?;
    let lhs = qdsl::eval(&file.lhs, c.order).map_err(|e| anyhow!("{origin}: {e}"))?;
    let Some(rhs) = &file.rhs else {
        emit(c, &lhs.to_triples(), || format!("{}\n", coefficient_line(&lhs)))?;
        return Ok(true);
    };
    let rhs = qdsl::eval(rhs, c.order).map_err(|e| anyhow!("{origin}: {e}"))?;
    let mismatch = lhs.first_mismatch(&rhs);
    let report = IdentityJson {
        order: c.order,
        lhs: SideJson { coefficients: lhs.to_triples() },
        rhs: SideJson { coefficients: rhs.to_triples() },
        equal: mismatch.is_none(),
        first_mismatch: mismatch.clone(),
    };
    emit(c, &report, || {
        let verdict = match &mismatch {
            None => format!("equal through q^{}", c.order),
            Some(m) => format!("differ at q^{}: lhs {} vs rhs {}", m.q_exp, m.lhs, m.rhs),
        };
        format!("lhs: {}\nrhs: {}\n{verdict}\n", coefficient_line(&lhs), coefficient_line(&rhs))
    })?;
    Ok(mismatch.is_none())
}

fn proof(c: &Common, k: u32) -> Outcome {
    let trace = prooftrace::run_trace(k, c.order)?;
    emit(c, &trace, || trace.to_string())?;
    Ok(trace.passed())
}

fn oracle(c: &Common, o: OracleCmd) -> Outcome {
    match o {
        OracleCmd::Partitions { modulus, residues, distinct, parity } => {
            let residues = if residues.is_empty() { (0..modulus).collect() } else { residues };
            let pc = PartitionClass {
                modulus,
                allowed_residues: residues,
                distinct,
                parity_filter: parity.map(|p| match p {
                    ParityArg::Odd => Parity::Odd,
                    ParityArg::Even => Parity::Even,
                }),
            };
            let s = count_partitions(&pc, c.order)?;
            emit(c, &s.to_triples(), || format!("{}\n", coefficient_line(&s)))?;
            Ok(true)
        }
        OracleCmd::Check { filter } => {
            let checks: Vec<_> = catalog::oracle_checks()
                .into_iter()
                .filter(|k| {
                    filter.as_ref().is_none_or(|f| k.name.eq_ignore_ascii_case(f) || k.id.eq_ignore_ascii_case(f))
                })
                .collect();
            if checks.is_empty() {
                return Err(anyhow!("no oracle check matches `{}`", filter.unwrap_or_default()).into());
            }
            let reports: Vec<_> = checks.iter().map(|k| k.run(c.order)).collect();
            emit(c, &reports, || reports.iter().map(|r| format!("{r}\n")).collect())?;
            Ok(reports.iter().all(|r| r.passed()))
        }
    }
}
