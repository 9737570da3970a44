use std::collections::HashMap;

use num_rational::BigRational;
use num_traits::Zero;

use super::{zmul, ZSeries};
use crate::error::{QError, Result};
use crate::qcore::sums::tail_certified;
use crate::qcore::{Monomial, QLaurent, Term};

/// `(a; q^step)_n` appearing in a term.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Poch {
    pub a: Monomial,
    pub step: i64,
}

impl Poch {
    pub fn new(a: Monomial, step: i64) -> Self {
        Poch { a, step }
    }
}

/// `sum_n ratio^n q^(quad*binom(n,2) + lin*n) prod num_n / prod den_n * z^(z_step*n)`
/// over `n >= 0`, or over all integers when `bilateral`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HyperZSum {
    pub z_step: i64,
    pub ratio: BigRational,
    pub quad: i64,
    pub lin: i64,
    pub num: Vec<Poch>,
    pub den: Vec<Poch>,
    pub bilateral: bool,
}

/// How far to build each direction of a [`HyperZSum`], in summation-index
/// units. `None` on a self-terminating side means "as far as needed".
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Reach {
    pub neg: Option<i64>,
    pub pos: Option<i64>,
    pub slack: i64,
}

impl Reach {
    pub fn auto() -> Self {
        Reach::default()
    }

    pub fn slack(slack: i64) -> Self {
        Reach { slack, ..Reach::default() }
    }
}

fn floor_div(a: i64, b: i64) -> i64 {
    a.div_euclid(b)
}

impl HyperZSum {
    /// `(a z^z_exp; q^base)_inf`, or its reciprocal when `!numerator`.
    pub fn poch_factor(a: &Monomial, z_exp: i64, base: i64, numerator: bool) -> HyperZSum {
        let qq = Poch::new(Monomial::q_pow(base), base);
        if numerator {
            HyperZSum {
                z_step: z_exp,
                ratio: -a.coeff.clone(),
                quad: base,
                lin: a.q_exp,
                num: vec![],
                den: vec![qq],
                bilateral: false,
            }
        } else {
            HyperZSum {
                z_step: z_exp,
                ratio: a.coeff.clone(),
                quad: 0,
                lin: a.q_exp,
                num: vec![],
                den: vec![qq],
                bilateral: false,
            }
        }
    }

    /// The bilateral sum `sum_n (-1)^n Q^binom(n,2) t^n / (b; Q)_n` with
    /// `Q = q^base` and `t = t_mono z^t_zexp`.
    pub fn theta(t_zexp: i64, t_mono: &Monomial, b: &Monomial, base: i64) -> HyperZSum {
        HyperZSum {
            z_step: t_zexp,
            ratio: -t_mono.coeff.clone(),
            quad: base,
            lin: t_mono.q_exp,
            num: vec![],
            den: vec![Poch::new(b.clone(), base)],
            bilateral: true,
        }
    }

    fn check(&self) -> Result<()> {
        if self.z_step == 0 {
            return Err(QError::InvalidArgument("z must appear: z_step is 0".into()));
        }
        if self.bilateral && self.ratio.is_zero() {
            return Err(QError::InvalidArgument("bilateral sum with zero ratio".into()));
        }
        if self.num.iter().chain(&self.den).any(|p| p.step < 1) {
            return Err(QError::InvalidArgument("Pochhammer step must be >= 1".into()));
        }
        Ok(())
    }

    /// The term with summation index `n` (without its power of `z`).
    pub fn term(&self, n: i64) -> Result<Term> {
        let mut t = Term::one();
        if self.ratio.is_zero() {
            if n != 0 {
                t.times_scalar(&BigRational::zero());
            }
        } else {
            let c = Monomial::new(self.ratio.clone(), 0).pow(n)?;
            t.times_monomial(&c);
        }
        t.times_monomial(&Monomial::q_pow(self.quad * (n * (n - 1) / 2) + self.lin * n));
        for p in &self.num {
            t.times_poch(&p.a, p.step, n)?;
        }
        for p in &self.den {
            t.divide_poch(&p.a, p.step, n)?;
        }
        Ok(t)
    }

    /// First index (in absolute value) past which every Pochhammer factor
    /// contributes a fixed pattern, so valuations are exactly quadratic.
    fn asymptotic_start(&self, dir: i64) -> i64 {
        let s = self
            .num
            .iter()
            .chain(&self.den)
            .filter(|p| !p.a.is_zero())
            .map(|p| {
                let e = p.a.q_exp;
                if dir > 0 {
                    if e <= 0 {
                        floor_div(-e, p.step) + 1
                    } else {
                        0
                    }
                } else {
                    floor_div(e.max(0), p.step) + 1
                }
            })
            .max()
            .unwrap_or(0);
        s + 1
    }

    /// Whether the terms in direction `dir` (`+1` or `-1`) eventually have
    /// unbounded valuation, so the sum closes on its own in that direction.
    pub fn closes(&self, dir: i64) -> Result<bool> {
        self.check()?;
        if dir < 0 && !self.bilateral {
            return Ok(true);
        }
        let n0 = self.asymptotic_start(dir) * dir;
        let v: Vec<Option<i64>> =
            (0..3).map(|i| self.term(n0 + i * dir).map(|t| t.valuation())).collect::<Result<_>>()?;
        match (v[0], v[1], v[2]) {
            (Some(a), Some(b), Some(c)) => {
                let d1 = b - a;
                let d2 = c - 2 * b + a;
                Ok(d2 > 0 || (d2 == 0 && d1 > 0))
            }
            _ => Ok(true),
        }
    }

    /// Coefficients for indices `start, start+dir, ...` in one direction.
    fn build_direction(
        &self,
        order: i64,
        dir: i64,
        requested: Option<i64>,
        slack: i64,
    ) -> Result<(Vec<QLaurent>, bool)> {
        let start = if dir > 0 { 0 } else { -1 };
        let closed = self.closes(dir)?;
        let mut out = Vec::new();
        if closed {
            let n0 = self.asymptotic_start(dir);
            let cap = 16 * (order.max(0) + 4) + 64 + n0;
            let mut vals = Vec::new();
            let mut n = start;
            loop {
                let t = self.term(n)?;
                vals.push(t.valuation());
                out.push(t.build(order));
                if n.abs() >= n0 + 2 && tail_certified(&vals, order) {
                    break;
                }
                if n.abs() > cap {
                    return Err(QError::Monotonicity(format!("terms of the z-sum never leave q^{order}")));
                }
                n += dir;
            }
            while out.len() > 1 && out.last().is_some_and(|c| c.is_zero()) {
                out.pop();
            }
            if dir < 0 && out.len() == 1 && out[0].is_zero() {
                out.clear();
            }
            let have = out.len() as i64 - if dir > 0 { 1 } else { 0 };
            let want = have.max(requested.unwrap_or(0)) + slack;
            let mut n = start + dir * out.len() as i64;
            for _ in have..want {
                out.push(self.term(n)?.build(order));
                n += dir;
            }
        } else {
            let extent = requested.ok_or_else(|| {
                QError::WindowUnderspecified(format!(
                    "the z-sum does not terminate towards {}; an explicit extent is required",
                    if dir > 0 { "+inf" } else { "-inf" }
                ))
            })? + slack;
            let count = if dir > 0 { extent + 1 } else { extent };
            for i in 0..count.max(0) {
                out.push(self.term(start + dir * i)?.build(order));
            }
        }
        Ok((out, closed))
    }

    /// Expand through `q^order` on the index range given by `reach`.
    pub fn build(&self, order: i64, reach: Reach) -> Result<ZSeries> {
        self.check()?;
        let (pos, pos_closed) = self.build_direction(order, 1, reach.pos, reach.slack)?;
        let (neg, neg_closed) =
            if self.bilateral { self.build_direction(order, -1, reach.neg, reach.slack)? } else { (Vec::new(), true) };
        let s = self.z_step;
        let n_lo = -(neg.len() as i64);
        let n_hi = pos.len() as i64 - 1;
        let (z_lo, z_hi) = if s > 0 { (s * n_lo, s * n_hi) } else { (s * n_hi, s * n_lo) };
        let mut coeffs = vec![QLaurent::zero(order); (z_hi - z_lo + 1) as usize];
        for (i, c) in pos.into_iter().enumerate() {
            coeffs[(s * i as i64 - z_lo) as usize] = c;
        }
        for (i, c) in neg.into_iter().enumerate() {
            coeffs[(-s * (i as i64 + 1) - z_lo) as usize] = c;
        }
        let (closed_below, closed_above) = if s > 0 { (neg_closed, pos_closed) } else { (pos_closed, neg_closed) };
        ZSeries::from_parts(z_lo, coeffs, order, closed_below, closed_above)
    }

    /// The same sum with `z` replaced by `z^-1`.
    pub fn reflected(&self) -> HyperZSum {
        HyperZSum { z_step: -self.z_step, ..self.clone() }
    }

    /// Whether the sum closes below / above in `z`.
    fn z_closed(&self) -> Result<(bool, bool)> {
        let (p, n) = (self.closes(1)?, self.closes(-1)?);
        Ok(if self.z_step > 0 { (n, p) } else { (p, n) })
    }
}

fn reflect_series(s: &ZSeries) -> Result<ZSeries> {
    let (lo, hi) = s.window();
    let coeffs = (lo..=hi).rev().map(|k| s.coeff(k)).collect::<Result<Vec<_>>>()?;
    ZSeries::from_parts(-hi, coeffs, s.order(), s.closed_above(), s.closed_below())
}

/// A z-free prefactor times a product of z-sums.
#[derive(Clone, Debug)]
pub struct ZProduct {
    pub prefactor: Term,
    pub factors: Vec<HyperZSum>,
}

impl ZProduct {
    pub fn new(prefactor: Term, factors: Vec<HyperZSum>) -> Self {
        ZProduct { prefactor, factors }
    }

    /// Expand the product on a z-window. Self-terminating factors are
    /// multiplied first; factors open towards one side are then built far
    /// enough that every coefficient in the window is determined. Without a
    /// window the self-terminating part's window is used.
    pub fn materialize(&self, order: i64, window: Option<(i64, i64)>, slack: i64) -> Result<ZSeries> {
        let mut closed = Vec::new();
        let mut open_below = Vec::new();
        let mut open_above = Vec::new();
        for f in &self.factors {
            match f.z_closed()? {
                (true, true) => closed.push(f.clone()),
                (false, true) => open_below.push(f.clone()),
                (true, false) => open_above.push(f.clone()),
                (false, false) => {
                    return Err(QError::WindowUnderspecified("a factor is open in both z-directions".into()))
                }
            }
        }
        if !open_below.is_empty() && !open_above.is_empty() {
            return Err(QError::WindowUnderspecified(
                "factors open towards both z-directions cannot be combined".into(),
            ));
        }
        let mut p = ZSeries::z_free(self.prefactor.build(order))?;
        for f in &closed {
            p = zmul(&p, &f.build(order, Reach::slack(slack))?, None)?;
        }
        let window = window.unwrap_or(p.window());
        if open_below.is_empty() && open_above.is_empty() {
            return p.with_window(window.0, window.1);
        }
        if !open_above.is_empty() {
            let p = reflect_series(&p)?;
            let opens: Vec<_> = open_above.iter().map(|f| f.reflected()).collect();
            let r = Self::attach_open_below(&p, &opens, (-window.1, -window.0), order, slack)?;
            return reflect_series(&r);
        }
        Self::attach_open_below(&p, &open_below, window, order, slack)
    }

    fn attach_open_below(
        p: &ZSeries,
        opens: &[HyperZSum],
        window: (i64, i64),
        order: i64,
        slack: i64,
    ) -> Result<ZSeries> {
        // closed upper edges of the open factors
        let tops: Vec<i64> = opens
            .iter()
            .map(|f| Ok(f.build(order, Reach { neg: Some(0), pos: Some(0), slack })?.hi()))
            .collect::<Result<_>>()?;
        let top_sum: i64 = tops.iter().sum();
        let mut u: Option<ZSeries> = None;
        for (f, top) in opens.iter().zip(&tops) {
            let need_lo = window.0 - p.hi() - (top_sum - top);
            let extent = (-need_lo).max(0);
            let steps = (extent + f.z_step.abs() - 1) / f.z_step.abs();
            let reach = if f.z_step > 0 {
                Reach { neg: Some(steps), pos: Some(0), slack }
            } else {
                Reach { neg: Some(0), pos: Some(steps), slack }
            };
            let s = f.build(order, reach)?;
            u = Some(match u {
                None => s,
                Some(acc) => {
                    let lo = (acc.window().0 + s.hi()).max(s.window().0 + acc.hi());
                    zmul(&acc, &s, Some((lo, acc.hi() + s.hi())))?
                }
            });
        }
        let u = u.expect("at least one open factor");
        zmul(p, &u, Some(window))
    }

    /// The constant term of the product.
    pub fn ct(&self, order: i64, slack: i64) -> Result<QLaurent> {
        self.materialize(order, Some((0, 0)), slack)?.ct()
    }
}

/// `prefactor * CT[anchored * prod cofactors]` where every cofactor lives on
/// one side of `z^0`.
#[derive(Clone, Debug)]
pub struct CtRecipe {
    pub anchored: HyperZSum,
    pub cofactors: Vec<HyperZSum>,
    pub prefactor: QLaurent,
}

/// Evaluate a recipe by pairing each coefficient of the anchored factor
/// with the matching cofactor convolutions, without forming z-products.
pub fn ct_recipe(r: &CtRecipe, order: i64) -> Result<QLaurent> {
    if r.prefactor.order() != order {
        return Err(QError::OrderMismatch { left: order, right: r.prefactor.order() });
    }
    let sides: Vec<bool> = r.cofactors.iter().map(|c| c.z_step < 0 && !c.bilateral).collect();
    let nonneg: Vec<bool> = r.cofactors.iter().map(|c| c.z_step > 0 && !c.bilateral).collect();
    let (anchored, cofactors) = if sides.iter().all(|&s| s) {
        (r.anchored.clone(), r.cofactors.clone())
    } else if nonneg.iter().all(|&s| s) {
        (r.anchored.reflected(), r.cofactors.iter().map(|c| c.reflected()).collect())
    } else {
        return Err(QError::InvalidArgument("cofactors must all be one-sided towards the same z-direction".into()));
    };
    // cofactors now carry z^-m, m >= 0; only anchored exponents n >= 0 pair up
    let (_, above) = anchored.z_closed()?;
    let reach = if anchored.z_step > 0 {
        Reach { neg: Some(0), pos: None, slack: 0 }
    } else {
        Reach { neg: None, pos: Some(0), slack: 0 }
    };
    if !above {
        return Err(QError::WindowUnderspecified(
            "the anchored factor must terminate on the side facing the cofactors".into(),
        ));
    }
    let a = anchored.build(order, reach)?;
    let top = a.hi();
    if top < 0 {
        return Ok(QLaurent::zero(order));
    }
    // coefficient lists of each cofactor at z^-m for m = 0..=top
    let mut tables: Vec<Vec<(i64, QLaurent)>> = Vec::new();
    for c in &cofactors {
        let steps = (top + c.z_step.abs() - 1) / c.z_step.abs();
        let s = c.build(order, Reach { neg: Some(0), pos: Some(steps), slack: 0 })?;
        let mut list = Vec::new();
        for m in 0..=top {
            let k = s.coeff(-m)?;
            if !k.is_zero() {
                list.push((m, k));
            }
        }
        tables.push(list);
    }
    let mut memo: Vec<HashMap<i64, QLaurent>> = vec![HashMap::new(); tables.len()];
    let mut acc = QLaurent::zero(order);
    for n in a.window().0.max(0)..=top {
        let an = a.coeff(n)?;
        if an.is_zero() {
            continue;
        }
        let conv = convolve(&tables, 0, n, order, &mut memo)?;
        if !conv.is_zero() {
            acc = acc.checked_add(&an.checked_mul(&conv)?)?;
        }
    }
    acc.checked_mul(&r.prefactor)
}

/// Sum over ways to split `target` as `m_idx + m_(idx+1) + ...` of the
/// product of the corresponding cofactor coefficients.
fn convolve(
    tables: &[Vec<(i64, QLaurent)>],
    idx: usize,
    target: i64,
    order: i64,
    memo: &mut Vec<HashMap<i64, QLaurent>>,
) -> Result<QLaurent> {
    if idx == tables.len() {
        return Ok(if target == 0 { QLaurent::one(order) } else { QLaurent::zero(order) });
    }
    if let Some(v) = memo[idx].get(&target) {
        return Ok(v.clone());
    }
    let mut acc = QLaurent::zero(order);
    for (m, c) in &tables[idx] {
        if *m > target {
            break;
        }
        let rest = convolve(tables, idx + 1, target - m, order, memo)?;
        if !rest.is_zero() {
            acc = acc.checked_add(&c.checked_mul(&rest)?)?;
        }
    }
    memo[idx].insert(target, acc.clone());
    Ok(acc)
}
