use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::field::{Fe, Field};
use crate::{Error, Result, TriState};

/// Sentinel used for the valuation of an exact zero.
pub const INF: i64 = i64::MAX;

/// Valuation of a windowed series: either certified, or only bounded below.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Valuation {
    Finite(i64),
    /// The value is at least the given bound; `AtLeast(INF)` is an exact zero.
    AtLeast(i64),
}

impl Valuation {
    pub const INFINITE: Valuation = Valuation::AtLeast(INF);

    pub fn value(self) -> i64 {
        match self {
            Valuation::Finite(v) | Valuation::AtLeast(v) => v,
        }
    }

    pub fn is_finite(self) -> bool {
        matches!(self, Valuation::Finite(_))
    }

    pub fn is_infinite(self) -> bool {
        self == Valuation::INFINITE
    }

    pub fn finite(self) -> Option<i64> {
        match self {
            Valuation::Finite(v) => Some(v),
            Valuation::AtLeast(_) => None,
        }
    }

    /// Valuation addition: finite only if both summands are.
    pub fn plus(self, other: Valuation) -> Valuation {
        let s = sat_add(self.value(), other.value());
        match (self, other) {
            (Valuation::Finite(_), Valuation::Finite(_)) => Valuation::Finite(s),
            _ => Valuation::AtLeast(s),
        }
    }
}

fn sat_add(a: i64, b: i64) -> i64 {
    if a == INF || b == INF {
        INF
    } else {
        a.saturating_add(b)
    }
}

impl Ord for Valuation {
    fn cmp(&self, other: &Self) -> Ordering {
        let rank = |v: &Valuation| matches!(v, Valuation::AtLeast(_)) as u8;
        self.value().cmp(&other.value()).then(rank(self).cmp(&rank(other)))
    }
}

impl PartialOrd for Valuation {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Valuation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Valuation::Finite(v) => write!(f, "{v}"),
            Valuation::AtLeast(INF) => write!(f, "inf"),
            Valuation::AtLeast(v) => write!(f, ">={v}"),
        }
    }
}

/// Arithmetic operation selector for [`LaurentElem::arith`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Op {
    Add,
    Mul,
    Div,
}

/// An element of `F_{q^m}((t))` known on the exponent window `[v_lo, prec)`.
///
/// When `exact` is set the element is the Laurent polynomial given by the
/// window and everything outside it is zero; otherwise it stands for the
/// window plus an unknown `O(t^prec)` tail.
#[derive(Clone)]
pub struct LaurentElem {
    field: Arc<Field>,
    v_lo: i64,
    prec: i64,
    coeffs: Vec<Fe>,
    exact: bool,
}

impl fmt::Debug for LaurentElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

fn same_field(a: &Arc<Field>, b: &Arc<Field>) -> Result<()> {
    if Arc::ptr_eq(a, b) || **a == **b {
        Ok(())
    } else {
        Err(Error::FieldMismatch(a.to_string(), b.to_string()))
    }
}

impl LaurentElem {
    /// Builds an element from raw window data, checking the shape.
    pub fn new(field: &Arc<Field>, v_lo: i64, coeffs: Vec<Fe>, prec: i64, exact: bool) -> Result<Self> {
        if v_lo > prec || coeffs.len() as i64 != prec - v_lo {
            return Err(Error::Invalid(format!(
                "window [{v_lo}, {prec}) does not match {} coefficients",
                coeffs.len()
            )));
        }
        if let Some(c) = coeffs.iter().find(|c| c.code() >= field.size()) {
            return Err(Error::Invalid(format!("coefficient code {} out of range", c.code())));
        }
        Ok(LaurentElem { field: field.clone(), v_lo, prec, coeffs, exact })
    }

    /// Exact Laurent polynomial with coefficients for `v_lo, v_lo + 1, ...`.
    pub fn exact(field: &Arc<Field>, v_lo: i64, coeffs: Vec<Fe>) -> Self {
        let prec = v_lo + coeffs.len() as i64;
        LaurentElem { field: field.clone(), v_lo, prec, coeffs, exact: true }
    }

    /// Truncated series: the given coefficients plus `O(t^(v_lo + len))`.
    pub fn series(field: &Arc<Field>, v_lo: i64, coeffs: Vec<Fe>) -> Self {
        let prec = v_lo + coeffs.len() as i64;
        LaurentElem { field: field.clone(), v_lo, prec, coeffs, exact: false }
    }

    pub fn zero(field: &Arc<Field>) -> Self {
        LaurentElem::exact(field, 0, Vec::new())
    }

    pub fn one(field: &Arc<Field>) -> Self {
        LaurentElem::monomial(field, Fe::ONE, 0)
    }

    /// Exact `c * t^e`.
    pub fn monomial(field: &Arc<Field>, c: Fe, e: i64) -> Self {
        if c.is_zero() {
            return LaurentElem::zero(field);
        }
        LaurentElem::exact(field, e, vec![c])
    }

    pub fn t_pow(field: &Arc<Field>, e: i64) -> Self {
        LaurentElem::monomial(field, Fe::ONE, e)
    }

    pub fn constant(field: &Arc<Field>, c: Fe) -> Self {
        LaurentElem::monomial(field, c, 0)
    }

    /// Exact sum of `c * t^e` over the given terms.
    pub fn from_terms(field: &Arc<Field>, terms: &[(Fe, i64)]) -> Self {
        terms
            .iter()
            .map(|&(c, e)| LaurentElem::monomial(field, c, e))
            .fold(LaurentElem::zero(field), |acc, m| acc.add(&m).expect("same field"))
    }

    /// Unknown element `O(t^prec)`.
    pub fn big_o(field: &Arc<Field>, prec: i64) -> Self {
        LaurentElem { field: field.clone(), v_lo: prec, prec, coeffs: Vec::new(), exact: false }
    }

    // Trims zero coefficients at the bottom (and at the top if exact).
    fn build(field: &Arc<Field>, mut v_lo: i64, mut coeffs: Vec<Fe>, mut prec: i64, exact: bool) -> Self {
        let lead = coeffs.iter().position(|c| !c.is_zero()).unwrap_or(coeffs.len());
        if lead > 0 {
            coeffs.drain(..lead);
            v_lo += lead as i64;
        }
        if exact {
            while coeffs.last().is_some_and(|c| c.is_zero()) {
                coeffs.pop();
            }
            if coeffs.is_empty() {
                v_lo = 0;
            }
            prec = v_lo + coeffs.len() as i64;
        }
        LaurentElem { field: field.clone(), v_lo, prec, coeffs, exact }
    }

    pub fn field(&self) -> &Arc<Field> {
        &self.field
    }

    pub fn v_lo(&self) -> i64 {
        self.v_lo
    }

    /// End of the stored window (for exact elements this is bookkeeping only).
    pub fn prec(&self) -> i64 {
        self.prec
    }

    pub fn coeffs(&self) -> &[Fe] {
        &self.coeffs
    }

    pub fn is_exact(&self) -> bool {
        self.exact
    }

    /// Absolute precision; `None` for exact elements.
    pub fn abs_prec(&self) -> Option<i64> {
        (!self.exact).then_some(self.prec)
    }

    fn prec_or_inf(&self) -> i64 {
        if self.exact {
            INF
        } else {
            self.prec
        }
    }

    /// Coefficient of `t^e`, or `None` if it lies beyond the known precision.
    pub fn coeff(&self, e: i64) -> Option<Fe> {
        if !self.exact && e >= self.prec {
            return None;
        }
        Some(self.c(e))
    }

    #[inline]
    fn c(&self, e: i64) -> Fe {
        if e < self.v_lo || e >= self.v_lo + self.coeffs.len() as i64 {
            Fe::ZERO
        } else {
            self.coeffs[(e - self.v_lo) as usize]
        }
    }

    /// Nonzero terms `(coefficient, exponent)` in increasing exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (Fe, i64)> + '_ {
        self.coeffs.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(i, &c)| (c, self.v_lo + i as i64))
    }

    pub fn ord(&self) -> Valuation {
        match self.coeffs.iter().position(|c| !c.is_zero()) {
            Some(i) => Valuation::Finite(self.v_lo + i as i64),
            None if self.exact => Valuation::INFINITE,
            None => Valuation::AtLeast(self.prec),
        }
    }

    /// Largest exponent with a nonzero coefficient.
    pub fn top(&self) -> Option<i64> {
        self.coeffs.iter().rposition(|c| !c.is_zero()).map(|i| self.v_lo + i as i64)
    }

    // Lower bound on the valuation, INF for exact zero.
    fn ord_lb(&self) -> i64 {
        self.ord().value()
    }

    pub fn is_unit(&self) -> TriState {
        match self.ord() {
            Valuation::Finite(_) => TriState::Yes,
            _ if self.exact => TriState::No,
            _ => TriState::Unknown,
        }
    }

    pub fn is_zero(&self) -> TriState {
        match self.is_unit() {
            TriState::Yes => TriState::No,
            TriState::No => TriState::Yes,
            TriState::Unknown => TriState::Unknown,
        }
    }

    /// True only for an exact zero.
    pub fn is_exact_zero(&self) -> bool {
        self.exact && self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn is_exact_one(&self) -> bool {
        self.exact && self.terms().eq(std::iter::once((Fe::ONE, 0)))
    }

    /// Equality up to the common precision.
    pub fn eq_to_precision(&self, other: &LaurentElem) -> TriState {
        let p = self.prec_or_inf().min(other.prec_or_inf());
        let lo = self.v_lo.min(other.v_lo);
        let hi = if p == INF { (self.v_lo + self.coeffs.len() as i64).max(other.v_lo + other.coeffs.len() as i64) } else { p };
        if (lo..hi).any(|e| self.c(e) != other.c(e)) {
            return TriState::No;
        }
        if p == INF {
            TriState::Yes
        } else {
            TriState::Unknown
        }
    }

    pub fn arith(&self, other: &LaurentElem, op: Op) -> Result<LaurentElem> {
        match op {
            Op::Add => self.add(other),
            Op::Mul => self.mul(other),
            Op::Div => self.div(other),
        }
    }

    pub fn add(&self, other: &LaurentElem) -> Result<LaurentElem> {
        same_field(&self.field, &other.field)?;
        let f = &self.field;
        let exact = self.exact && other.exact;
        let p = self.prec_or_inf().min(other.prec_or_inf());
        let lo = self.v_lo.min(other.v_lo);
        let hi = if exact {
            (self.v_lo + self.coeffs.len() as i64).max(other.v_lo + other.coeffs.len() as i64)
        } else {
            p
        };
        let lo = lo.min(hi);
        let coeffs = (lo..hi).map(|e| f.add(self.c(e), other.c(e))).collect();
        Ok(LaurentElem::build(f, lo, coeffs, hi, exact))
    }

    pub fn neg(&self) -> LaurentElem {
        let f = &self.field;
        LaurentElem { coeffs: self.coeffs.iter().map(|&c| f.neg(c)).collect(), ..self.clone() }
    }

    pub fn sub(&self, other: &LaurentElem) -> Result<LaurentElem> {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &LaurentElem) -> Result<LaurentElem> {
        same_field(&self.field, &other.field)?;
        let f = &self.field;
        if self.is_exact_zero() || other.is_exact_zero() {
            return Ok(LaurentElem::zero(f));
        }
        let exact = self.exact && other.exact;
        let lo = self.v_lo + other.v_lo;
        let full_hi = lo + (self.coeffs.len() + other.coeffs.len()) as i64;
        let hi = if exact {
            full_hi
        } else {
            let pa = sat_add(self.prec_or_inf(), other.ord_lb());
            let pb = sat_add(other.prec_or_inf(), self.ord_lb());
            pa.min(pb)
        };
        let lo = lo.min(hi);
        let len = (hi - lo).max(0) as usize;
        let mut coeffs = vec![Fe::ZERO; len];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                let e = self.v_lo + other.v_lo + (i + j) as i64;
                if e >= hi {
                    break;
                }
                if b.is_zero() {
                    continue;
                }
                let k = (e - lo) as usize;
                coeffs[k] = f.add(coeffs[k], f.mul(a, b));
            }
        }
        Ok(LaurentElem::build(f, lo, coeffs, hi, exact))
    }

    /// Quotient. For two exact operands whose quotient is not a Laurent
    /// polynomial the result is a series up to the larger of the two stored
    /// window ends; use [`LaurentElem::div_to`] to choose the precision.
    pub fn div(&self, other: &LaurentElem) -> Result<LaurentElem> {
        let target = self.prec.max(other.prec);
        self.div_impl(other, target)
    }

    /// Quotient with an explicit target precision for exact operands.
    pub fn div_to(&self, other: &LaurentElem, prec: i64) -> Result<LaurentElem> {
        self.div_impl(other, prec)
    }

    fn div_impl(&self, other: &LaurentElem, target: i64) -> Result<LaurentElem> {
        same_field(&self.field, &other.field)?;
        let f = &self.field;
        let vb = other.ord().finite().ok_or_else(|| Error::DivByUnknown(other.to_string()))?;
        if self.is_exact_zero() {
            return Ok(LaurentElem::zero(f));
        }
        let b0_inv = f.inv(other.c(vb)).expect("leading coefficient is nonzero");
        let rb = sat_add(other.prec_or_inf(), -vb);
        let oa = self.ord_lb();
        let qlo = oa - vb;
        // long division producing quotient coefficients for exponents qlo..hi
        let quotient = |hi: i64| -> Vec<Fe> {
            let mut q: Vec<Fe> = Vec::with_capacity((hi - qlo).max(0) as usize);
            for e in qlo..hi {
                let mut acc = self.c(e + vb);
                for (j, &qj) in q.iter().enumerate().rev() {
                    let shift = e - (qlo + j as i64);
                    if qj.is_zero() {
                        continue;
                    }
                    let bc = other.c(vb + shift);
                    if !bc.is_zero() {
                        acc = f.sub(acc, f.mul(qj, bc));
                    }
                }
                q.push(f.mul(acc, b0_inv));
            }
            q
        };
        if self.exact && other.exact {
            let da = self.top().unwrap() - oa;
            let db = other.top().unwrap() - vb;
            if da >= db {
                let q = quotient(qlo + da - db + 1);
                let cand = LaurentElem::build(f, qlo, q, qlo + da - db + 1, true);
                if cand.mul(other)?.eq_to_precision(self) == TriState::Yes {
                    return Ok(cand);
                }
            }
            let hi = target.max(qlo.min(target));
            let q = quotient(hi);
            return Ok(LaurentElem::build(f, qlo.min(hi), q, hi, false));
        }
        let pa = sat_add(self.prec_or_inf(), -vb);
        let pq = sat_add(oa - vb, rb);
        let hi = pa.min(pq);
        if oa == INF || qlo >= hi {
            return Ok(LaurentElem::big_o(f, hi));
        }
        let q = quotient(hi);
        Ok(LaurentElem::build(f, qlo, q, hi, false))
    }

    /// Coefficientwise `x -> x^q`.
    pub fn frobenius(&self) -> LaurentElem {
        let f = &self.field;
        LaurentElem { coeffs: self.coeffs.iter().map(|&c| f.frob(c)).collect(), ..self.clone() }
    }

    /// `k`-fold Frobenius.
    pub fn frobenius_pow(&self, k: u32) -> LaurentElem {
        let f = &self.field;
        LaurentElem { coeffs: self.coeffs.iter().map(|&c| f.frob_pow(c, k)).collect(), ..self.clone() }
    }

    /// True when every stored coefficient lies in `F_{q^k}`.
    pub fn fixed_by_frobenius_pow(&self, k: u32) -> bool {
        self.coeffs.iter().all(|&c| self.field.frob_pow(c, k) == c)
    }

    pub fn scale(&self, c: Fe) -> LaurentElem {
        let f = &self.field;
        if c.is_zero() && self.exact {
            return LaurentElem::zero(f);
        }
        let coeffs = self.coeffs.iter().map(|&x| f.mul(c, x)).collect();
        LaurentElem::build(f, self.v_lo, coeffs, self.prec, self.exact)
    }

    /// Multiplication by `t^k`.
    pub fn shift(&self, k: i64) -> LaurentElem {
        LaurentElem { v_lo: self.v_lo + k, prec: self.prec + k, ..self.clone() }
    }

    /// Forgets everything from `t^prec` on.
    pub fn truncate(&self, prec: i64) -> LaurentElem {
        let p = prec.min(self.prec_or_inf());
        let lo = self.v_lo.min(p);
        let coeffs = (lo..p).map(|e| self.c(e)).collect();
        LaurentElem::build(&self.field, lo, coeffs, p, false)
    }

    pub fn pow(&self, e: u32) -> Result<LaurentElem> {
        let mut r = LaurentElem::one(&self.field);
        for _ in 0..e {
            r = r.mul(self)?;
        }
        Ok(r)
    }
}

impl PartialEq for LaurentElem {
    /// Semantic equality: same value, exactness and (if inexact) precision.
    fn eq(&self, other: &Self) -> bool {
        *self.field == *other.field
            && self.exact == other.exact
            && (self.exact || self.prec == other.prec)
            && self.eq_to_precision(other) != TriState::No
    }
}

impl Eq for LaurentElem {}

impl fmt::Display for LaurentElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&super::text::format_laurent(self))
    }
}
