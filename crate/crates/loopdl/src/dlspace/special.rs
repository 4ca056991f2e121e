use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::enumerate::coefficient_degree;
use super::{FlagPoint, Level};
use crate::coeffring::{Field, LaurentElem, Valuation};
use crate::isocrystal::{newton_slopes, superbasic_gl2};
use crate::latmat::{GLMat, Perm};
use crate::{Error, Result, TriState};

/// The two shapes of `b` with closed-form membership for `GL_2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Gl2Kind {
    /// `diag(t^c, t^d)`
    Diag { c: i64, d: i64 },
    /// `[[0, t^c], [t^(c+1), 0]]`
    Superbasic { c: i64 },
}

impl Gl2Kind {
    pub fn matrix(&self, field: &Arc<Field>) -> GLMat {
        match *self {
            Gl2Kind::Diag { c, d } => GLMat::diag_t(field, &[c, d]),
            Gl2Kind::Superbasic { c } => superbasic_gl2(field, c),
        }
    }
}

/// Closed-form membership of `[x : y]` in `X_w(b)` for `GL_2`:
/// for `w = s` the relevant expression must be a unit, for `w = 1` it must vanish.
///
/// * diagonal: `t^c φ(x) y - t^d x φ(y)`
/// * superbasic: `t^(c+1) x φ(x) - t^c y φ(y)`
pub fn gl2_closed_form(pt: &FlagPoint, w: &Perm, kind: Gl2Kind) -> Result<TriState> {
    if pt.n() != 2 || w.n() != 2 {
        return Err(Error::Invalid("closed forms are for GL_2".into()));
    }
    let f = pt.g.field();
    let (x, y) = (pt.g.get(0, 0), pt.g.get(1, 0));
    let e = match kind {
        Gl2Kind::Diag { c, d } => LaurentElem::t_pow(f, c)
            .mul(&x.frobenius())?
            .mul(y)?
            .sub(&LaurentElem::t_pow(f, d).mul(x)?.mul(&y.frobenius())?)?,
        Gl2Kind::Superbasic { c } => LaurentElem::t_pow(f, c + 1)
            .mul(x)?
            .mul(&x.frobenius())?
            .sub(&LaurentElem::t_pow(f, c).mul(y)?.mul(&y.frobenius())?)?,
    };
    Ok(if w.is_identity() { e.is_zero() } else { e.is_unit() })
}

fn cover_e(a: &LaurentElem, c: i64, d: i64, beta: i64) -> Result<LaurentElem> {
    let f = a.field();
    LaurentElem::t_pow(f, d - beta).mul(&a.frobenius())?.sub(&LaurentElem::t_pow(f, c - beta).mul(a)?)
}

/// Closed form of the cover of `X_s(diag(t^c, t^d))` over the point `[1 : a]`
/// for `ẇ = [[0, -t^α], [t^β, 0]]`: `τ^{-1} σ²(τ) = E^{-1} σ(E)` with
/// `E = t^(d-β) σ(a) - t^(c-β) a`. Both sides are compared after clearing
/// denominators; true iff they agree to the available precision.
pub fn gl2_dot_cover_check(a: &LaurentElem, tau: &LaurentElem, c: i64, d: i64, alpha: i64, beta: i64) -> Result<bool> {
    if a.is_zero() != TriState::No || tau.is_zero() != TriState::No {
        return Err(Error::Invalid("a and tau must be nonzero".into()));
    }
    if alpha + beta != c + d {
        return Ok(false);
    }
    let e = cover_e(a, c, d, beta)?;
    if e.is_zero() != TriState::No {
        return Ok(false);
    }
    let lhs = tau.frobenius_pow(2).mul(&e)?;
    let rhs = tau.mul(&e.frobenius())?;
    Ok(lhs.eq_to_precision(&rhs) != TriState::No)
}

/// The point `[[s, 0], [s a, σ(s) E]]` of `L(G/U)` over `[1 : a]`; it lies
/// in the cover exactly when `τ = s^{-1}` solves [`gl2_dot_cover_check`].
pub fn gl2_dot_point(a: &LaurentElem, s: &LaurentElem, c: i64, d: i64, beta: i64) -> Result<FlagPoint> {
    let f = a.field();
    let e = cover_e(a, c, d, beta)?;
    let g = GLMat::from_rows(f, vec![vec![s.clone(), LaurentElem::zero(f)], vec![s.mul(a)?, s.frobenius().mul(&e)?]])?;
    FlagPoint::new(g, Level::UnipQuot)
}

/// `g_n(x)`: the matrix with columns `x, σ(x), ..., σ^{n-1}(x)`.
pub fn coxeter_g(x: &[LaurentElem]) -> Result<GLMat> {
    let f = x.first().ok_or_else(|| Error::Invalid("empty vector".into()))?.field().clone();
    let mut cols = vec![x.to_vec()];
    for _ in 1..x.len() {
        let next: Vec<LaurentElem> = cols.last().unwrap().iter().map(LaurentElem::frobenius).collect();
        cols.push(next);
    }
    GLMat::from_columns(&f, &cols)
}

/// Coxeter element lift: `e_j -> e_{j+1}` and `e_{n-1} -> e_0`, all entries 1.
pub fn coxeter_wdot(field: &Arc<Field>, n: usize) -> GLMat {
    let w = Perm::from_images((0..n).map(|j| (j + 1) % n).collect()).unwrap();
    GLMat::permutation(field, &w)
}

/// Membership of `x` in `X_O` for the Coxeter element and `b = 1`:
/// `det g_n(x)` is a unit with `σ(det) = (-1)^{n-1} det`.
pub fn coxeter_xo_member(x: &[LaurentElem]) -> Result<bool> {
    let g = coxeter_g(x)?;
    let det = g.det()?;
    if det.ord() != Valuation::Finite(0) {
        return match det.ord() {
            Valuation::Finite(_) => Ok(false),
            _ if det.is_exact() => Ok(false),
            _ => Err(Error::precision("determinant is not certified nonzero", 1)),
        };
    }
    let want = if x.len() % 2 == 1 { det.clone() } else { det.neg() };
    match det.frobenius().sub(&want)?.is_zero() {
        TriState::Yes => Ok(true),
        TriState::No => Ok(false),
        TriState::Unknown => Err(Error::precision("sigma(det) agrees only to precision", 1)),
    }
}

/// Whether `ẇ u(a, b, c)` lies in the image of the Lang map of `GL_3`,
/// where `ẇ` is the antidiagonal of ones and `u` is upper unitriangular
/// with entries `a, b` above the diagonal and `c` in the corner.
pub fn lang_image_test(a: &LaurentElem, b: &LaurentElem, c: &LaurentElem) -> Result<bool> {
    let f = a.field().clone();
    let (z, one) = (LaurentElem::zero(&f), LaurentElem::one(&f));
    let u = GLMat::from_rows(
        &f,
        vec![vec![one.clone(), a.clone(), c.clone()], vec![z.clone(), one.clone(), b.clone()], vec![z.clone(), z.clone(), one.clone()]],
    )?;
    let wdot = GLMat::permutation(&f, &Perm::longest(3));
    let m = wdot.mul(&u)?;
    let cls = newton_slopes(&m, coefficient_degree(&m))?;
    Ok(cls.kappa() == 0 && cls.slopes().iter().all(|s| *s.numer() == 0))
}
