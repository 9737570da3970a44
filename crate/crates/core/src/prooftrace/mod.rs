//! Step-by-step numerical replay of the five constant-term proofs.
//!
//! A proof is a chain of lines, each either a q-series or a constant term
//! `CT[prefactor * prod factors]`. Every step checks one line against the
//! previous one: as series in `z` on a fixed window when both lines are
//! constant-term expressions, otherwise through the constant term. Lines
//! with known misprints carry several readings; the last reading is the one
//! the chain continues with and every reading's outcome is reported.

mod theorems;

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::catalog::Status;
use crate::error::{QError, Result};
use crate::laurentz::{ct_recipe, CtRecipe, HyperZSum, ZProduct, ZSeries};
use crate::qcore::{Mismatch, QLaurent, Term};

pub(crate) type SeriesFn = Box<dyn Fn(i64) -> Result<QLaurent>>;

pub(crate) enum Expr {
    Series(SeriesFn),
    /// `CT[prefactor * prod factors]`; `recipe` marks a first factor that is
    /// a bilateral sum and cofactors one-sided in `z`.
    Ct {
        product: ZProduct,
        recipe: bool,
    },
}

pub(crate) struct Reading {
    pub label: String,
    pub expr: Expr,
}

pub(crate) struct Line {
    pub text: String,
    pub why: String,
    pub readings: Vec<Reading>,
}

impl Line {
    pub fn new(text: &str, why: &str, expr: Expr) -> Line {
        Line { text: text.into(), why: why.into(), readings: vec![Reading { label: String::new(), expr }] }
    }

    pub fn series(text: &str, why: &str, f: impl Fn(i64) -> Result<QLaurent> + 'static) -> Line {
        Line::new(text, why, series_expr(f))
    }

    pub fn ct(text: &str, why: &str, prefactor: Term, factors: Vec<HyperZSum>) -> Line {
        Line::new(text, why, ct_expr(prefactor, factors))
    }

    pub fn with_recipe(mut self) -> Line {
        for r in &mut self.readings {
            if let Expr::Ct { recipe, .. } = &mut r.expr {
                *recipe = true;
            }
        }
        self
    }

    /// Replace the single reading by a printed one and a corrected one.
    pub fn readings(mut self, printed: (&str, Expr), corrected: (&str, Expr)) -> Line {
        self.readings = vec![
            Reading { label: format!("as printed: {}", printed.0), expr: printed.1 },
            Reading { label: format!("corrected: {}", corrected.0), expr: corrected.1 },
        ];
        self
    }

    fn used(&self) -> &Reading {
        self.readings.last().expect("a line has at least one reading")
    }
}

pub(crate) fn ct_expr(prefactor: Term, factors: Vec<HyperZSum>) -> Expr {
    Expr::Ct { product: ZProduct::new(prefactor, factors), recipe: false }
}

pub(crate) fn series_expr(f: impl Fn(i64) -> Result<QLaurent> + 'static) -> Expr {
    Expr::Series(Box::new(f))
}

pub(crate) struct Proof {
    pub title: String,
    pub lines: Vec<Line>,
    /// Extra checks attached to a step index (1-based).
    pub side_checks: Vec<(usize, SideCheck)>,
}

pub(crate) struct SideCheck {
    pub label: String,
    pub run: Box<dyn Fn(i64) -> Result<Option<Mismatch>>>,
}

enum Value {
    Series(QLaurent),
    Z(ZSeries),
}

impl Value {
    fn ct(&self) -> Result<QLaurent> {
        match self {
            Value::Series(s) => Ok(s.clone()),
            Value::Z(z) => z.ct(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct StepMismatch {
    /// Power of `z` for a comparison of `z`-series, absent for q-series.
    pub z_exp: Option<i64>,
    pub q_exp: i64,
    pub lhs: String,
    pub rhs: String,
}

impl StepMismatch {
    fn from(z_exp: Option<i64>, m: Mismatch) -> Self {
        StepMismatch { z_exp, q_exp: m.q_exp, lhs: m.lhs, rhs: m.rhs }
    }
}

impl fmt::Display for StepMismatch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.z_exp {
            Some(k) => write!(f, "z^{k} q^{}: {} vs {}", self.q_exp, self.lhs, self.rhs),
            None => write!(f, "q^{}: {} vs {}", self.q_exp, self.lhs, self.rhs),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ReadingReport {
    pub label: String,
    pub status: Status,
    pub first_mismatch: Option<StepMismatch>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SideReport {
    pub label: String,
    pub status: Status,
    pub first_mismatch: Option<StepMismatch>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ProofStep {
    pub index: usize,
    pub description: String,
    pub justification: String,
    /// `"series"`, `"constant term"` or `"z-series"`.
    pub compared_as: String,
    pub z_window: Option<(i64, i64)>,
    pub status: Status,
    pub first_mismatch: Option<StepMismatch>,
    /// Present when the step was rechecked on a wider window.
    pub window_stable: Option<bool>,
    pub readings: Vec<ReadingReport>,
    pub side_checks: Vec<SideReport>,
    /// Leading terms of the line's value (its constant term for CT lines).
    pub preview: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ProofTrace {
    pub theorem_id: u32,
    pub title: String,
    pub order: i64,
    pub start: String,
    pub steps: Vec<ProofStep>,
    pub status: Status,
}

impl ProofTrace {
    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("trace serializes")
    }
}

fn mark(s: Status) -> &'static str {
    match s {
        Status::Pass => "ok",
        Status::Fail => "FAIL",
    }
}

impl fmt::Display for ProofTrace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Theorem {}: {}  (through q^{})", self.theorem_id, self.title, self.order)?;
        writeln!(f, "      {}", self.start)?;
        for s in &self.steps {
            writeln!(f, "  [{:>2}] = {}", s.index, s.description)?;
            write!(f, "         {} ({}", mark(s.status), s.compared_as)?;
            if let Some((lo, hi)) = s.z_window {
                write!(f, " on z^{lo}..z^{hi}")?;
            }
            if let Some(st) = s.window_stable {
                write!(f, ", window+2 {}", if st { "stable" } else { "UNSTABLE" })?;
            }
            writeln!(f, ")  by {}", s.justification)?;
            if let Some(m) = &s.first_mismatch {
                writeln!(f, "         first mismatch at {m}")?;
            }
            for r in &s.readings {
                write!(f, "         reading {}: {}", r.label, mark(r.status))?;
                match &r.first_mismatch {
                    Some(m) => writeln!(f, " (differs at {m})")?,
                    None => writeln!(f)?,
                }
            }
            for c in &s.side_checks {
                write!(f, "         check {}: {}", c.label, mark(c.status))?;
                match &c.first_mismatch {
                    Some(m) => writeln!(f, " (differs at {m})")?,
                    None => writeln!(f)?,
                }
            }
            writeln!(f, "         {}", s.preview)?;
        }
        write!(f, "result: {}", if self.passed() { "PASS" } else { "FAIL" })
    }
}

fn status(ok: bool) -> Status {
    if ok {
        Status::Pass
    } else {
        Status::Fail
    }
}

struct Evaluator {
    order: i64,
    window: (i64, i64),
}

impl Evaluator {
    fn value(&self, e: &Expr, window: (i64, i64), slack: i64) -> Result<Value> {
        match e {
            Expr::Series(f) => Ok(Value::Series(f(self.order)?)),
            Expr::Ct { product, .. } => Ok(Value::Z(product.materialize(self.order, Some(window), slack)?)),
        }
    }

    fn compare(&self, a: &Value, b: &Value) -> Result<(Option<StepMismatch>, &'static str)> {
        Ok(match (a, b) {
            (Value::Z(x), Value::Z(y)) => {
                let (lo, hi) = self.window;
                let m = x.first_mismatch_on(y, lo, hi)?.map(|(k, m)| StepMismatch::from(Some(k), m));
                (m, "z-series")
            }
            (Value::Series(_), Value::Series(_)) => {
                (a.ct()?.first_mismatch(&b.ct()?).map(|m| StepMismatch::from(None, m)), "series")
            }
            _ => (a.ct()?.first_mismatch(&b.ct()?).map(|m| StepMismatch::from(None, m)), "constant term"),
        })
    }

    /// Both lines rebuilt two steps wider and with extra slack agree with
    /// the narrow build on the narrow window.
    fn stable(&self, e: &Expr, narrow: &Value) -> Result<bool> {
        let (lo, hi) = self.window;
        let wide = self.value(e, (lo - 2, hi + 2), 2)?;
        match (narrow, &wide) {
            (Value::Z(x), Value::Z(y)) => Ok(x.first_mismatch_on(y, lo, hi)?.is_none()),
            _ => Ok(true),
        }
    }

    fn recipe_check(&self, e: &Expr) -> Result<Option<Option<StepMismatch>>> {
        let Expr::Ct { product, recipe: true } = e else {
            return Ok(None);
        };
        let (first, rest) = product.factors.split_first().expect("recipe has factors");
        let r = CtRecipe {
            anchored: first.clone(),
            cofactors: rest.to_vec(),
            prefactor: product.prefactor.build(self.order),
        };
        let via_recipe = ct_recipe(&r, self.order)?;
        let via_product = product.ct(self.order, 0)?;
        Ok(Some(via_recipe.first_mismatch(&via_product).map(|m| StepMismatch::from(None, m))))
    }
}

fn preview(v: &Value) -> Result<String> {
    let s = v.ct()?;
    Ok(s.truncate(s.order().min(8))?.to_string())
}

/// The valid theorem ids.
pub fn theorems() -> std::ops::RangeInclusive<u32> {
    1..=5
}

/// Replay the proof of Theorem `k` (1..=5) through `q^order`.
pub fn run_trace(k: u32, order: i64) -> Result<ProofTrace> {
    if order < 0 {
        return Err(QError::InvalidArgument("order must be >= 0".into()));
    }
    let proof = theorems::proof(k)?;
    let window = theorems::window(k, order)?;
    let ev = Evaluator { order, window };
    let mut steps = Vec::new();
    let mut prev = ev.value(&proof.lines[0].used().expr, window, 0)?;
    for (i, line) in proof.lines.iter().enumerate().skip(1) {
        let mut readings = Vec::new();
        let mut used = None;
        let mut kind = "series";
        for (j, r) in line.readings.iter().enumerate() {
            let v = ev.value(&r.expr, window, 0)?;
            let (m, how) = ev.compare(&prev, &v)?;
            kind = how;
            if line.readings.len() > 1 {
                readings.push(ReadingReport {
                    label: r.label.clone(),
                    status: status(m.is_none()),
                    first_mismatch: m.clone(),
                });
            }
            if j + 1 == line.readings.len() {
                used = Some((v, m));
            }
        }
        let (value, mismatch) = used.expect("a line has at least one reading");
        let mut ok = mismatch.is_none();
        let mut window_stable = None;
        if kind == "z-series" {
            let st = ev.stable(&proof.lines[i - 1].used().expr, &prev)? && ev.stable(&line.used().expr, &value)?;
            ok &= st;
            window_stable = Some(st);
        }
        let mut side_checks = Vec::new();
        for e in [&proof.lines[i - 1].used().expr, &line.used().expr] {
            if kind == "constant term" {
                if let Some(m) = ev.recipe_check(e)? {
                    ok &= m.is_none();
                    side_checks.push(SideReport {
                        label: "direct pairing of coefficients agrees with the product".into(),
                        status: status(m.is_none()),
                        first_mismatch: m,
                    });
                }
            }
        }
        for (at, c) in &proof.side_checks {
            if *at == i {
                let m = (c.run)(order)?.map(|m| StepMismatch::from(None, m));
                ok &= m.is_none();
                side_checks.push(SideReport { label: c.label.clone(), status: status(m.is_none()), first_mismatch: m });
            }
        }
        steps.push(ProofStep {
            index: i,
            description: line.text.clone(),
            justification: line.why.clone(),
            compared_as: kind.into(),
            z_window: (kind == "z-series").then_some(window),
            status: status(ok),
            first_mismatch: mismatch,
            window_stable,
            readings,
            side_checks,
            preview: preview(&value)?,
        });
        prev = value;
    }
    let all = steps.iter().all(|s| s.status == Status::Pass);
    Ok(ProofTrace {
        theorem_id: k,
        title: proof.title,
        order,
        start: proof.lines[0].text.clone(),
        steps,
        status: status(all),
    })
}
