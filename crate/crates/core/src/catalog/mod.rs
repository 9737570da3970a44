//! Named series–product identities with independently built sides and a
//! uniform verification API.

mod crosscheck;
mod entries;

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{QError, Result};
use crate::qcore::{Mismatch, Monomial, QLaurent};

pub use crosscheck::{oracle_checks, OracleCheck, OracleReport};
pub use entries::rr1_with_residues;

/// Parameter assignment for a parametric identity.
pub type Sample = BTreeMap<String, Monomial>;

pub type Builder = Arc<dyn Fn(&Sample, i64) -> Result<QLaurent> + Send + Sync>;

pub const DEFAULT_ORDER: i64 = 60;

#[derive(Clone)]
pub struct Identity {
    pub id: String,
    pub citation: String,
    pub notes: String,
    pub params: Vec<String>,
    pub samples: Vec<Sample>,
    pub lhs: Builder,
    pub rhs: Builder,
    /// Sides may carry negative powers of q (bilateral samples).
    pub laurent: bool,
}

impl fmt::Debug for Identity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Identity").field("id", &self.id).field("params", &self.params).finish()
    }
}

impl Identity {
    pub fn fixed(
        id: &str,
        citation: &str,
        notes: &str,
        lhs: impl Fn(i64) -> Result<QLaurent> + Send + Sync + 'static,
        rhs: impl Fn(i64) -> Result<QLaurent> + Send + Sync + 'static,
    ) -> Self {
        Identity {
            id: id.into(),
            citation: citation.into(),
            notes: notes.into(),
            params: vec![],
            samples: vec![],
            lhs: Arc::new(move |_, n| lhs(n)),
            rhs: Arc::new(move |_, n| rhs(n)),
            laurent: false,
        }
    }

    pub fn parametric(
        id: &str,
        citation: &str,
        notes: &str,
        params: &[&str],
        samples: Vec<Sample>,
        lhs: impl Fn(&Sample, i64) -> Result<QLaurent> + Send + Sync + 'static,
        rhs: impl Fn(&Sample, i64) -> Result<QLaurent> + Send + Sync + 'static,
    ) -> Self {
        Identity {
            id: id.into(),
            citation: citation.into(),
            notes: notes.into(),
            params: params.iter().map(|s| s.to_string()).collect(),
            samples,
            lhs: Arc::new(lhs),
            rhs: Arc::new(rhs),
            laurent: id == "E4",
        }
    }

    pub fn is_parametric(&self) -> bool {
        !self.params.is_empty()
    }

    pub fn metadata(&self) -> IdentityInfo {
        IdentityInfo {
            id: self.id.clone(),
            citation: self.citation.clone(),
            notes: self.notes.clone(),
            default_order: DEFAULT_ORDER,
            params: self.params.clone(),
            default_samples: self.samples.iter().map(format_sample).collect(),
        }
    }
}

pub fn format_sample(s: &Sample) -> String {
    s.iter().map(|(k, v)| format!("{k}={v}")).collect::<Vec<_>>().join(",")
}

/// JSON-friendly description of a catalog entry.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdentityInfo {
    pub id: String,
    pub citation: String,
    pub notes: String,
    pub default_order: i64,
    pub params: Vec<String>,
    pub default_samples: Vec<String>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub id: String,
    pub order: i64,
    pub status: Status,
    /// The sample that failed, or the only sample checked.
    pub sample: Option<String>,
    pub samples_checked: usize,
    pub first_mismatch: Option<Mismatch>,
    pub elapsed_ms: f64,
    pub integrality: bool,
    pub error: Option<String>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }
}

impl fmt::Display for VerifyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = match self.status {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
        };
        write!(
            f,
            "{:<5} {:<4} N={:<4} samples={:<3} {:>9.1} ms",
            self.id, status, self.order, self.samples_checked, self.elapsed_ms
        )?;
        if let Some(s) = &self.sample {
            if self.status == Status::Fail {
                write!(f, "  sample {s}")?;
            }
        }
        if let Some(m) = &self.first_mismatch {
            write!(f, "  first mismatch at q^{}: lhs {} vs rhs {}", m.q_exp, m.lhs, m.rhs)?;
        }
        if !self.integrality {
            write!(f, "  non-integral coefficients")?;
        }
        if let Some(e) = &self.error {
            write!(f, "  error: {e}")?;
        }
        Ok(())
    }
}

/// Wall-clock timer; reads zero where the platform has no clock.
pub(crate) struct Stopwatch(#[cfg(not(target_arch = "wasm32"))] std::time::Instant);

impl Stopwatch {
    pub(crate) fn start() -> Self {
        Stopwatch(
            #[cfg(not(target_arch = "wasm32"))]
            std::time::Instant::now(),
        )
    }

    pub(crate) fn elapsed_ms(&self) -> f64 {
        #[cfg(not(target_arch = "wasm32"))]
        return self.0.elapsed().as_secs_f64() * 1e3;
        #[cfg(target_arch = "wasm32")]
        0.0
    }
}

/// Every catalog entry, in listing order.
pub fn identities() -> Vec<Identity> {
    entries::all()
}

pub fn get(id: &str) -> Result<Identity> {
    identities()
        .into_iter()
        .find(|i| i.id.eq_ignore_ascii_case(id))
        .ok_or_else(|| QError::UnknownIdentity(id.to_string()))
}

/// Compare both sides once. `Ok(None)` means equal and well formed.
fn check_once(ident: &Identity, sample: &Sample, order: i64) -> Result<(Option<Mismatch>, bool)> {
    let lhs = (ident.lhs)(sample, order)?;
    let rhs = (ident.rhs)(sample, order)?;
    let integral = lhs.is_integral() && rhs.is_integral();
    if !ident.laurent {
        for (side, v) in [("lhs", &lhs), ("rhs", &rhs)] {
            if let Some(e) = v.min_exp().filter(|&e| e < 0) {
                return Err(QError::InvalidArgument(format!("{side} has a negative power q^{e}")));
            }
        }
    }
    Ok((lhs.first_mismatch(&rhs), integral))
}

/// Verify one identity through `q^order` on the given samples (the default
/// grid when `samples` is `None`).
pub fn verify_identity(ident: &Identity, order: i64, samples: Option<&[Sample]>) -> VerifyReport {
    let clock = Stopwatch::start();
    let fixed = [Sample::new()];
    let list: &[Sample] = match samples {
        Some(s) => s,
        None if ident.is_parametric() => &ident.samples,
        None => &fixed,
    };
    let mut report = VerifyReport {
        id: ident.id.clone(),
        order,
        status: Status::Pass,
        sample: None,
        samples_checked: 0,
        first_mismatch: None,
        elapsed_ms: 0.0,
        integrality: true,
        error: None,
    };
    let precondition = if order < 0 {
        Some("order must be >= 0")
    } else if ident.is_parametric() && list.is_empty() {
        Some("parametric identity needs at least one sample")
    } else {
        None
    };
    if let Some(msg) = precondition {
        report.status = Status::Fail;
        report.error = Some(msg.into());
        return report;
    }
    for s in list {
        if let Some(missing) = ident.params.iter().find(|p| !s.contains_key(*p)) {
            report.status = Status::Fail;
            report.error = Some(format!("sample lacks `{missing}`"));
            break;
        }
        report.samples_checked += 1;
        let label = (!s.is_empty()).then(|| format_sample(s));
        match check_once(ident, s, order) {
            Ok((mismatch, integral)) => {
                report.integrality &= integral;
                if mismatch.is_some() || !integral {
                    report.status = Status::Fail;
                    report.first_mismatch = mismatch;
                    report.sample = label;
                    break;
                }
                if list.len() == 1 {
                    report.sample = label;
                }
            }
            Err(e) => {
                report.status = Status::Fail;
                report.error = Some(e.to_string());
                report.sample = label;
                break;
            }
        }
    }
    report.elapsed_ms = clock.elapsed_ms();
    report
}

/// Verify a catalog entry by id. Parametric ids use `samples` when given.
pub fn verify(id: &str, order: i64, samples: Option<&[Sample]>) -> Result<VerifyReport> {
    let ident = get(id)?;
    Ok(verify_identity(&ident, order, samples))
}

/// One report per catalog entry, parametric entries over their grids.
pub fn verify_all(order: i64) -> Vec<VerifyReport> {
    identities().iter().map(|i| verify_identity(i, order, None)).collect()
}

/// Apply `q -> -q` to both sides of the mod-6 identity and compare.
pub fn slater_negation_check(order: i64) -> VerifyReport {
    let negated = Identity::fixed(
        "E13-",
        "E13 under q -> -q",
        "both sides of E13 with q replaced by -q",
        |n| Ok(entries::e13_lhs(n)?.substitute_negate()),
        |n| Ok(entries::e13_rhs(n)?.substitute_negate()),
    );
    verify_identity(&negated, order, None)
}

/// Both sides of an identity (first default sample for parametric ones).
pub fn sides(id: &str, order: i64, sample: Option<&Sample>) -> Result<(QLaurent, QLaurent)> {
    let ident = get(id)?;
    let empty = Sample::new();
    let s = match sample {
        Some(s) => s,
        None => ident.samples.first().unwrap_or(&empty),
    };
    Ok(((ident.lhs)(s, order)?, (ident.rhs)(s, order)?))
}

/// Build a product `prod (a; q^step)_inf^power` through `q^order`.
pub fn infinite_product(factors: &[(Monomial, i64, i32)], order: i64) -> Result<QLaurent> {
    entries::product(factors, order)
}

/// Ids of the non-parametric entries.
pub fn fixed_ids() -> Vec<String> {
    identities().into_iter().filter(|i| !i.is_parametric()).map(|i| i.id).collect()
}
