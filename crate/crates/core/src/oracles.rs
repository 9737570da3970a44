//! Brute-force enumerators over plain integer arrays. Nothing here calls
//! into the series algebra of [`crate::qcore`]; results are only wrapped as
//! [`QLaurent`] at the end so they can be compared with it.

use serde::{Deserialize, Serialize};

use crate::error::{QError, Result};
use crate::qcore::QLaurent;

/// Truncated power series `a[0] + a[1] q + ... + a[N] q^N`.
pub type IntSeries = Vec<i128>;

fn overflow() -> QError {
    QError::InvalidArgument("oracle coefficient overflow (i128)".into())
}

fn wrap(a: &[i128], order: i64) -> QLaurent {
    let v: Vec<num_bigint::BigInt> = a.iter().map(|&x| x.into()).collect();
    QLaurent::from_bigints(0, &v, order)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Parity {
    Odd,
    Even,
}

/// Parts `k >= 1` with `k mod modulus` in `allowed_residues` (and of the
/// given parity, if any); optionally all parts distinct.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PartitionClass {
    pub modulus: u32,
    pub allowed_residues: Vec<u32>,
    pub distinct: bool,
    pub parity_filter: Option<Parity>,
}

impl PartitionClass {
    pub fn residues(modulus: u32, allowed: &[u32]) -> Self {
        PartitionClass { modulus, allowed_residues: allowed.to_vec(), distinct: false, parity_filter: None }
    }

    pub fn all_parts() -> Self {
        Self::residues(1, &[0])
    }

    pub fn distinct_parts() -> Self {
        PartitionClass { distinct: true, ..Self::all_parts() }
    }

    pub fn allows(&self, k: u64) -> bool {
        let r = (k % self.modulus as u64) as u32;
        let parity_ok = match self.parity_filter {
            None => true,
            Some(Parity::Odd) => k % 2 == 1,
            Some(Parity::Even) => k.is_multiple_of(2),
        };
        k >= 1 && parity_ok && self.allowed_residues.contains(&r)
    }

    fn validate(&self) -> Result<()> {
        if self.modulus == 0 {
            return Err(QError::InvalidArgument("partition modulus must be positive".into()));
        }
        if let Some(r) = self.allowed_residues.iter().find(|&&r| r >= self.modulus) {
            return Err(QError::InvalidArgument(format!("residue {r} is not below modulus {}", self.modulus)));
        }
        Ok(())
    }
}

/// Number of partitions of each `k <= n` into parts from the class.
pub fn count_partitions_raw(pc: &PartitionClass, n: usize) -> Result<IntSeries> {
    pc.validate()?;
    let mut a = vec![0i128; n + 1];
    a[0] = 1;
    for k in 1..=n {
        if !pc.allows(k as u64) {
            continue;
        }
        if pc.distinct {
            for i in (k..=n).rev() {
                a[i] = a[i].checked_add(a[i - k]).ok_or_else(overflow)?;
            }
        } else {
            for i in k..=n {
                a[i] = a[i].checked_add(a[i - k]).ok_or_else(overflow)?;
            }
        }
    }
    Ok(a)
}

pub fn count_partitions(pc: &PartitionClass, order: i64) -> Result<QLaurent> {
    if order < 0 {
        return Err(QError::InvalidArgument("order must be >= 0".into()));
    }
    Ok(wrap(&count_partitions_raw(pc, order as usize)?, order))
}

/// `prod_k (1 + sign q^(start + diff k))^power` over `k = 0..count`
/// (all `k >= 0` when `count` is `None`).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProgFactor {
    pub sign: i8,
    pub start: u64,
    pub diff: u64,
    pub count: Option<u64>,
    pub power: i32,
}

impl ProgFactor {
    /// `prod_{k>=0} (1 + sign q^(start + diff k))^power`.
    pub fn infinite(sign: i8, start: u64, diff: u64, power: i32) -> Self {
        ProgFactor { sign, start, diff, count: None, power }
    }

    pub fn single(sign: i8, exp: u64) -> Self {
        ProgFactor { sign, start: exp, diff: 1, count: Some(1), power: 1 }
    }
}

fn mul_binomial(a: &mut [i128], sign: i128, e: usize) -> Result<()> {
    for i in (e..a.len()).rev() {
        a[i] = a[i].checked_add(sign * a[i - e]).ok_or_else(overflow)?;
    }
    Ok(())
}

fn div_binomial(a: &mut [i128], sign: i128, e: usize) -> Result<()> {
    for i in e..a.len() {
        a[i] = a[i].checked_sub(sign * a[i - e]).ok_or_else(overflow)?;
    }
    Ok(())
}

/// Literal multiplication of `(1 +- q^e)` factors with integer arrays.
pub fn expand_product_bruteforce_raw(factors: &[ProgFactor], n: usize) -> Result<IntSeries> {
    let mut a = vec![0i128; n + 1];
    a[0] = 1;
    for f in factors {
        if f.sign != 1 && f.sign != -1 {
            return Err(QError::InvalidArgument("factor sign must be +1 or -1".into()));
        }
        if f.start == 0 {
            return Err(QError::InvalidArgument("factor exponents must be positive".into()));
        }
        if f.diff == 0 && f.count.is_none() {
            return Err(QError::InvalidArgument("infinite progression needs a positive difference".into()));
        }
        let mut k = 0u64;
        loop {
            if f.count.is_some_and(|c| k >= c) {
                break;
            }
            let e = f.start + f.diff * k;
            if e as usize > n {
                break;
            }
            for _ in 0..f.power.unsigned_abs() {
                if f.power > 0 {
                    mul_binomial(&mut a, f.sign as i128, e as usize)?;
                } else {
                    div_binomial(&mut a, f.sign as i128, e as usize)?;
                }
            }
            k += 1;
        }
    }
    Ok(a)
}

pub fn expand_product_bruteforce(factors: &[ProgFactor], order: i64) -> Result<QLaurent> {
    if order < 0 {
        return Err(QError::InvalidArgument("order must be >= 0".into()));
    }
    Ok(wrap(&expand_product_bruteforce_raw(factors, order as usize)?, order))
}

/// Which summation index a Pochhammer symbol runs over.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Index {
    M,
    R,
}

/// `(a q^shift; q^base)_index` with integer `a`; as a denominator only
/// `(q^base; q^base)_index` is used, i.e. `a = 1`, `shift = base`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IntPoch {
    pub a: i64,
    pub shift: i64,
    pub base: i64,
    pub index: Index,
}

impl IntPoch {
    /// `(q^base; q^base)_index`.
    pub fn qq(base: i64, index: Index) -> Self {
        IntPoch { a: 1, shift: base, base, index }
    }
}

/// Exponent `mm m^2 + mr m r + rr r^2 + m m + r r`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuadForm {
    pub mm: i64,
    pub mr: i64,
    pub rr: i64,
    pub m: i64,
    pub r: i64,
}

impl QuadForm {
    pub fn eval(&self, m: i64, r: i64) -> i64 {
        self.mm * m * m + self.mr * m * r + self.rr * r * r + self.m * m + self.r * r
    }
}

/// `(coeff q^q_exp)^(alpha m + beta r)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Weight {
    pub coeff: i64,
    pub q_exp: i64,
    pub alpha: i64,
    pub beta: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DoubleSum {
    pub quad: QuadForm,
    pub denoms: Vec<IntPoch>,
    pub numer: Option<IntPoch>,
    pub weight: Option<Weight>,
}

/// Coefficients of `1/(q^b; q^b)_k` for `k = 0..`, built incrementally.
struct InvPochTable {
    base: usize,
    rows: Vec<IntSeries>,
}

impl InvPochTable {
    fn new(base: usize, n: usize) -> Self {
        let mut one = vec![0i128; n + 1];
        one[0] = 1;
        InvPochTable { base, rows: vec![one] }
    }

    fn get(&mut self, k: usize) -> Result<&IntSeries> {
        while self.rows.len() <= k {
            let j = self.rows.len();
            let mut next = self.rows[j - 1].clone();
            let e = self.base * j;
            if e < next.len() {
                div_binomial(&mut next, -1, e)?;
            }
            self.rows.push(next);
        }
        Ok(&self.rows[k])
    }
}

fn convolve(a: &[i128], b: &[i128]) -> Result<IntSeries> {
    let n = a.len();
    let mut out = vec![0i128; n];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().take(n - i).enumerate() {
            if y != 0 {
                let p = x.checked_mul(y).ok_or_else(overflow)?;
                out[i + j] = out[i + j].checked_add(p).ok_or_else(overflow)?;
            }
        }
    }
    Ok(out)
}

fn ipow(c: i64, k: i64) -> Result<i128> {
    if k < 0 {
        return Err(QError::InvalidArgument("negative weight power".into()));
    }
    (c as i128).checked_pow(k as u32).ok_or_else(overflow)
}

impl DoubleSum {
    fn lower_exp(&self, m: i64, r: i64) -> i64 {
        let mut e = self.quad.eval(m, r);
        if let Some(w) = self.weight {
            e += w.q_exp * (w.alpha * m + w.beta * r);
        }
        e
    }
}

/// `sum_{m,r >= 0} weight * q^Q(m,r) * numer / prod denoms` through `q^order`.
///
/// Rows in `r` are scanned until the exponent bound exceeds the order and is
/// increasing and convex; rows in `m` stop once three consecutive row minima
/// do the same.
pub fn double_sum_eval(ds: &DoubleSum, order: i64) -> Result<QLaurent> {
    if order < 0 {
        return Err(QError::InvalidArgument("order must be >= 0".into()));
    }
    Ok(wrap(&double_sum_eval_raw(ds, order as usize)?, order))
}

pub fn double_sum_eval_raw(ds: &DoubleSum, n: usize) -> Result<IntSeries> {
    if ds.numer.is_some_and(|p| p.shift < 0) {
        return Err(QError::InvalidArgument("numerator Pochhammer must be a power series".into()));
    }
    let ni = n as i64;
    let mut tables: Vec<(Index, InvPochTable)> = Vec::new();
    for d in &ds.denoms {
        if d.a != 1 || d.shift != d.base || d.base < 1 {
            return Err(QError::InvalidArgument("denominators must be (q^b; q^b)_k with b >= 1".into()));
        }
        tables.push((d.index, InvPochTable::new(d.base as usize, n)));
    }
    let cap = 8 * (ni + 4) + 32;
    let settled = |v: &[i64]| -> bool {
        let k = v.len();
        k >= 3 && v[k - 3] > ni && v[k - 2] > v[k - 3] && v[k - 1] - v[k - 2] >= v[k - 2] - v[k - 3]
    };
    let mut total = vec![0i128; n + 1];
    let mut row_mins: Vec<i64> = Vec::new();
    for m in 0..=cap {
        let mut row_bounds: Vec<i64> = Vec::new();
        let mut r = 0i64;
        loop {
            let e = ds.lower_exp(m, r);
            row_bounds.push(e);
            if e <= ni {
                let mut term = vec![0i128; n + 1];
                if e < 0 {
                    return Err(QError::InvalidArgument(format!("term (m={m}, r={r}) has negative q-degree {e}")));
                }
                let coeff = match ds.weight {
                    Some(w) => ipow(w.coeff, w.alpha * m + w.beta * r)?,
                    None => 1,
                };
                term[e as usize] = coeff;
                if let Some(p) = ds.numer {
                    let k = if p.index == Index::M { m } else { r };
                    for j in 0..k {
                        let x = p.shift + p.base * j;
                        if x as usize <= n {
                            mul_binomial(&mut term, -(p.a as i128), x as usize)?;
                        }
                    }
                }
                for (idx, t) in tables.iter_mut() {
                    let k = if *idx == Index::M { m } else { r };
                    term = convolve(&term, t.get(k as usize)?)?;
                }
                for (x, y) in total.iter_mut().zip(&term) {
                    *x = x.checked_add(*y).ok_or_else(overflow)?;
                }
            }
            if settled(&row_bounds) {
                break;
            }
            r += 1;
            if r > cap {
                return Err(QError::DivergentSum(format!("row m = {m} never leaves q^{n}")));
            }
        }
        row_mins.push(*row_bounds.iter().min().expect("nonempty row"));
        if settled(&row_mins) {
            return Ok(total);
        }
    }
    Err(QError::DivergentSum(format!("rows still reach q^{n} at m = {cap}")))
}
