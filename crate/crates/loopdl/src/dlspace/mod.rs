//! Points of `X_w(b)` and `Ẋ_ẇ(b)` for `GL_n` over `F_{q^m}((t))`.
//!
//! A point of `L(G/B)` is a flag, represented by an invertible matrix `g`
//! whose first `k` columns span the `k`-th subspace. It lies in `X_w(b)`
//! when `g` and `b σ(g)` are in relative position `w`.
//!
//! ```
//! use loopdl::coeffring::{Field, LaurentElem};
//! use loopdl::dlspace::{xwb_member, FlagPoint};
//! use loopdl::latmat::{GLMat, Perm};
//! use loopdl::TriState;
//!
//! let f = Field::prime(2).unwrap();
//! let b = GLMat::diag_t(&f, &[1, 0]);
//! let w0 = Perm::longest(2);
//! let one = LaurentElem::one(&f);
//! let pt = FlagPoint::gl2(&one, &one).unwrap();
//! assert_eq!(xwb_member(&pt, &w0, &b).unwrap(), TriState::Yes);
//! let pt = FlagPoint::gl2(&one, &LaurentElem::zero(&f)).unwrap();
//! assert_eq!(xwb_member(&pt, &w0, &b).unwrap(), TriState::No);
//! ```

mod enumerate;
mod poly;
mod special;
pub mod table1;

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::coeffring::LaurentElem;
use crate::isocrystal::{meets_levi, LeviShape, SlopeClass};
use crate::latmat::{bruhat_cell, cell_minors, minor_sign, GLMat, Perm};
use crate::{Error, Result, TriState};

pub use enumerate::{count_points, window_points, CountOptions, CountReport, DEFAULT_BUDGET};
pub use special::{coxeter_g, coxeter_wdot, coxeter_xo_member, gl2_closed_form, gl2_dot_cover_check, gl2_dot_point, lang_image_test, Gl2Kind};

/// Whether a point lives in `L(G/B)` or in `L(G/U)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Level {
    BorelQuot,
    UnipQuot,
}

/// Coefficient window: exponents in `[-neg, r)`, coefficients in `F_{q^m}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Window {
    #[serde(rename = "N")]
    pub neg: u32,
    pub r: u32,
    pub m: u32,
}

impl Window {
    pub fn new(neg: u32, r: u32, m: u32) -> Result<Self> {
        if r == 0 || m == 0 {
            return Err(Error::Invalid(format!("window needs r >= 1 and m >= 1, got r = {r}, m = {m}")));
        }
        Ok(Window { neg, r, m })
    }
}

impl fmt::Display for Window {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "N={} r={} m={}", self.neg, self.r, self.m)
    }
}

/// A point given by a matrix representative `g`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FlagPoint {
    pub g: GLMat,
    pub level: Level,
    /// Pivot pattern of the canonical form, when the point came from an enumeration.
    pub cell: Option<Perm>,
}

impl FlagPoint {
    pub fn new(g: GLMat, level: Level) -> Result<Self> {
        if !g.is_invertible()? {
            return Err(Error::Invalid(format!("{g} is not invertible")));
        }
        Ok(FlagPoint { g, level, cell: None })
    }

    /// `[x : y]` in `P^1`, completed by `e_2` or `e_1`, whichever gives
    /// the determinant of smaller valuation (`e_2` on ties).
    pub fn gl2(x: &LaurentElem, y: &LaurentElem) -> Result<Self> {
        let f = x.field().clone();
        let (z, one) = (LaurentElem::zero(&f), LaurentElem::one(&f));
        let rows = if x.ord() <= y.ord() {
            vec![vec![x.clone(), z.clone()], vec![y.clone(), one]]
        } else {
            vec![vec![x.clone(), one], vec![y.clone(), z]]
        };
        FlagPoint::new(GLMat::from_rows(&f, rows)?, Level::BorelQuot)
    }

    pub fn n(&self) -> usize {
        self.g.n()
    }

    /// `x / y` style text: the first column for `n = 2`, the matrix otherwise.
    pub fn label(&self) -> String {
        if self.n() == 2 && self.level == Level::BorelQuot {
            format!("[{}:{}]", self.g.get(0, 0), self.g.get(1, 0))
        } else {
            self.g.to_string()
        }
    }
}

// adj(g) b σ(g) = det(g) g^{-1} b σ(g)
fn twisted_quotient(pt: &FlagPoint, b: &GLMat) -> Result<GLMat> {
    pt.g.adjugate()?.mul(b)?.mul(&pt.g.frobenius())
}

/// Relative position of `g` and `b σ(g)`.
pub fn relpos(pt: &FlagPoint, b: &GLMat) -> Result<Perm> {
    if pt.n() != b.n() {
        return Err(Error::LengthMismatch(pt.n(), b.n()));
    }
    bruhat_cell(&twisted_quotient(pt, b)?)
}

fn tri(r: Result<bool>) -> Result<TriState> {
    match r {
        Ok(v) => Ok(TriState::from_bool(v)),
        Err(Error::PrecisionExhausted { .. }) | Err(Error::DivByUnknown(_)) => Ok(TriState::Unknown),
        Err(e) => Err(e),
    }
}

/// Whether the point lies in `X_w(b)`; `Unknown` when truncated input
/// cannot certify the answer.
pub fn xwb_member(pt: &FlagPoint, w: &Perm, b: &GLMat) -> Result<TriState> {
    tri(relpos(pt, b).map(|p| &p == w))
}

/// Exact check that the monomial part of `g^{-1} b σ(g)` equals `wdot`.
pub fn xwb_dot_member(pt: &FlagPoint, wdot: &GLMat, b: &GLMat) -> Result<TriState> {
    let w = wdot.monomial_perm().ok_or_else(|| Error::Invalid(format!("{wdot} is not monomial")))?;
    tri(dot_member_exact(pt, &w, wdot, b))
}

fn dot_member_exact(pt: &FlagPoint, w: &Perm, wdot: &GLMat, b: &GLMat) -> Result<bool> {
    let m = twisted_quotient(pt, b)?;
    if &bruhat_cell(&m)? != w {
        return Ok(false);
    }
    let minors = cell_minors(&m, w)?;
    let det = pt.g.det()?;
    for k in 1..=m.n() {
        let j = k - 1;
        let c = wdot.get(w.apply(j), j);
        let mut want = det.mul(c)?.mul(&minors[k - 1])?;
        if minor_sign(w, k) != minor_sign(w, k - 1) {
            want = want.neg();
        }
        match minors[k].sub(&want)?.is_zero() {
            TriState::Yes => {}
            TriState::No => return Ok(false),
            TriState::Unknown => return Err(Error::precision(format!("minor {k} agrees only to precision"), 1)),
        }
    }
    Ok(true)
}

/// Valuations of the monomial part of `g^{-1} b σ(g)`, summed over each
/// cycle of `w` (cycles ordered by their smallest element).
pub fn alpha_invariant(pt: &FlagPoint, w: &Perm, b: &GLMat) -> Result<Vec<i64>> {
    let m = twisted_quotient(pt, b)?;
    let cell = bruhat_cell(&m)?;
    if &cell != w {
        return Err(Error::Invalid(format!("point {} is in relative position {cell}, not {w}", pt.label())));
    }
    let minors = cell_minors(&m, w)?;
    let vdet = pt.g.det_val()?.finite().ok_or_else(|| Error::Invalid("point is not invertible".into()))?;
    let vals: Vec<i64> = (0..m.n())
        .map(|j| {
            let hi = minors[j + 1].ord().finite();
            let lo = minors[j].ord().finite();
            match (hi, lo) {
                (Some(h), Some(l)) => Ok(h - l - vdet),
                _ => Err(Error::precision(format!("minor {} is not certified nonzero", j + 1), m.max_width().max(1) as u32)),
            }
        })
        .collect::<Result<_>>()?;
    Ok(w.cycles().iter().map(|c| c.iter().map(|&j| vals[j]).sum()).collect())
}

/// `(c, d)` style label of an `α` value.
pub fn format_alpha(a: &[i64]) -> String {
    let parts: Vec<String> = a.iter().map(|x| x.to_string()).collect();
    format!("({})", parts.join(","))
}

/// Prediction that `X_w(b)` is empty: the class of `b` misses the Levi of
/// the parabolic generated by `suppbar(w)`.
pub fn emptiness_predict(suppbar: &BTreeSet<usize>, class: &SlopeClass) -> bool {
    let simple: Vec<usize> = suppbar.iter().map(|s| s + 1).collect();
    !meets_levi(class, &LeviShape::from_simple_set(class.n(), &simple))
}

/// Simple reflections (0-based) in a reduced word of `w`; for type A with
/// trivial `σ` this is `suppbar(w)`.
pub fn perm_support(w: &Perm) -> BTreeSet<usize> {
    w.reduced_word().into_iter().map(|s| s - 1).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeffring::Field;
    use crate::isocrystal::superbasic_gl2;

    #[test]
    fn member_examples() {
        let f = Field::prime(2).unwrap();
        let b = GLMat::diag_t(&f, &[1, 0]);
        let w0 = Perm::longest(2);
        let p = |x: &str, y: &str| FlagPoint::gl2(&LaurentElem::parse(&f, x).unwrap(), &LaurentElem::parse(&f, y).unwrap()).unwrap();
        assert_eq!(xwb_member(&p("1", "1"), &w0, &b).unwrap(), TriState::Yes);
        assert_eq!(xwb_member(&p("1", "0"), &w0, &b).unwrap(), TriState::No);
        let id = Perm::identity(2);
        assert_eq!(xwb_member(&p("1", "0"), &id, &b).unwrap(), TriState::Yes);
        assert_eq!(xwb_member(&p("0", "1"), &id, &b).unwrap(), TriState::Yes);
        assert_eq!(alpha_invariant(&p("1", "0"), &id, &b).unwrap(), vec![1, 0]);
        assert_eq!(alpha_invariant(&p("0", "1"), &id, &b).unwrap(), vec![0, 1]);
        assert_eq!(alpha_invariant(&p("1", "1"), &w0, &b).unwrap(), vec![1]);
        let sb = superbasic_gl2(&f, 0);
        assert_eq!(alpha_invariant(&p("1", "t"), &w0, &sb).unwrap(), vec![1]);
    }

    #[test]
    fn truncated_b_gives_unknown() {
        let f = Field::prime(2).unwrap();
        let b = GLMat::parse(&f, "1 + O(t^2), O(t^2); O(t^2), 1 + O(t^2)").unwrap();
        let pt = FlagPoint::gl2(&LaurentElem::one(&f), &LaurentElem::zero(&f)).unwrap();
        assert_eq!(xwb_member(&pt, &Perm::identity(2), &b).unwrap(), TriState::Unknown);
    }

    #[test]
    fn dot_member_examples() {
        let f4 = Field::new(2, 2, 1).unwrap();
        let z = LaurentElem::constant(&f4, f4.gen());
        let one = LaurentElem::one(&f4);
        let zero = LaurentElem::zero(&f4);
        let g = GLMat::from_rows(&f4, vec![vec![one.clone(), one.clone()], vec![z.clone(), z.frobenius()]]).unwrap();
        let pt = FlagPoint::new(g, Level::UnipQuot).unwrap();
        let b = GLMat::identity(&f4, 2);
        let anti = GLMat::parse(&f4, "0, 1; 1, 0").unwrap();
        assert_eq!(xwb_dot_member(&pt, &anti, &b).unwrap(), TriState::Yes);
        let other = GLMat::parse(&f4, "0, t; 1, 0").unwrap();
        assert_eq!(xwb_dot_member(&pt, &other, &b).unwrap(), TriState::No);
        // torus: member iff the exponents agree
        let gl1 = |e: i64| GLMat::diag_t(&f4, &[e]);
        let pt1 = FlagPoint::new(GLMat::identity(&f4, 1), Level::UnipQuot).unwrap();
        assert_eq!(xwb_dot_member(&pt1, &gl1(2), &gl1(2)).unwrap(), TriState::Yes);
        assert_eq!(xwb_dot_member(&pt1, &gl1(1), &gl1(2)).unwrap(), TriState::No);
        let _ = zero;
    }

    #[test]
    fn emptiness_examples() {
        let half = SlopeClass::parse("1/2^2").unwrap();
        assert!(emptiness_predict(&BTreeSet::new(), &half));
        assert!(!emptiness_predict(&BTreeSet::from([0]), &half));
        let third = SlopeClass::parse("1/3^3").unwrap();
        assert!(emptiness_predict(&BTreeSet::from([0]), &third));
        assert!(!emptiness_predict(&BTreeSet::new(), &SlopeClass::from_ints(&[1, 0]).unwrap()));
    }
}
