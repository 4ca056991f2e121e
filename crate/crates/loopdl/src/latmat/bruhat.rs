use serde::Serialize;

use super::{GLMat, Perm};
use crate::coeffring::LaurentElem;
use crate::{Error, Result, TriState};

/// `g = u1 · mono · u2` with `u1`, `u2` upper unipotent and `mono` monomial
/// of pattern `w`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BruhatData {
    pub w: Perm,
    pub u1: GLMat,
    pub mono: GLMat,
    pub u2: GLMat,
}

// Lowest row of column `j` (among rows not yet used) with a certified
// nonzero entry; every lower candidate must be certified zero.
fn find_pivot(rows: &[Vec<LaurentElem>], used: &[bool], j: usize, width: i64) -> Result<usize> {
    for i in (0..rows.len()).rev() {
        if used[i] {
            continue;
        }
        match rows[i][j].is_zero() {
            TriState::No => return Ok(i),
            TriState::Yes => {}
            TriState::Unknown => {
                return Err(Error::precision(
                    format!("cannot decide whether entry ({i}, {j}) = {} vanishes", rows[i][j]),
                    width.max(1) as u32,
                ))
            }
        }
    }
    Err(Error::precision(format!("column {j} has no certified nonzero pivot"), width.max(1) as u32))
}

fn zero_like(x: &LaurentElem) -> LaurentElem {
    LaurentElem::zero(x.field())
}

impl GLMat {
    /// Bruhat decomposition by Gaussian elimination, columns left to right,
    /// pivoting on the lowest certified nonzero entry.
    ///
    /// The pattern comes from [`bruhat_cell`] and the pivots from
    /// [`cell_minors`], so exact inputs give exact pivots.
    pub fn bruhat_decompose(&self) -> Result<BruhatData> {
        let n = self.n;
        let f = self.field.clone();
        let w = bruhat_cell(self)?;
        let minors = cell_minors(self, &w)?;
        let mut a = self.rows();
        let mut u1 = GLMat::identity(&f, n).rows();
        let mut u2 = GLMat::identity(&f, n).rows();
        let img = w.images().to_vec();
        for j in 0..n {
            let p = img[j];
            let d = minors[j + 1].div(&minors[j]).map_err(|_| {
                Error::precision(format!("pivot minor {} is not certified nonzero", minors[j + 1]), self.max_width().max(1) as u32)
            })?;
            let piv = if minor_sign(&w, j + 1) != minor_sign(&w, j) { d.neg() } else { d };
            a[p][j] = piv.clone();
            for i in 0..p {
                if a[i][j].is_exact_zero() {
                    continue;
                }
                let c = a[i][j].div(&piv)?;
                for k in j + 1..n {
                    if !a[p][k].is_exact_zero() {
                        a[i][k] = a[i][k].sub(&c.mul(&a[p][k])?)?;
                    }
                }
                a[i][j] = zero_like(&piv);
                for row in u1.iter_mut() {
                    if !row[i].is_exact_zero() {
                        row[p] = row[p].add(&c.mul(&row[i])?)?;
                    }
                }
            }
            for k in j + 1..n {
                if a[p][k].is_exact_zero() {
                    continue;
                }
                let c = a[p][k].div(&piv)?;
                a[p][k] = zero_like(&piv);
                for l in 0..n {
                    if !u2[k][l].is_exact_zero() {
                        let d = c.mul(&u2[k][l])?;
                        u2[j][l] = u2[j][l].add(&d)?;
                    }
                }
            }
        }
        for (i, row) in a.iter_mut().enumerate() {
            for (j, e) in row.iter_mut().enumerate() {
                if img[j] != i {
                    *e = LaurentElem::zero(&f);
                }
            }
        }
        Ok(BruhatData {
            w,
            u1: GLMat::from_rows(&f, u1)?,
            mono: GLMat::from_rows(&f, a)?,
            u2: GLMat::from_rows(&f, u2)?,
        })
    }

    /// Monomial part `t_1 ẇ t_2` of the Bruhat decomposition.
    pub fn fw_project(&self) -> Result<GLMat> {
        Ok(self.bruhat_decompose()?.mono)
    }

    /// The `w` with `g1^{-1} g2 ∈ BwB`.
    pub fn relative_position(&self, other: &GLMat) -> Result<Perm> {
        for g in [self, other] {
            if !g.is_invertible()? {
                return Err(Error::Invalid(format!("{g} is not invertible")));
            }
        }
        bruhat_cell(&self.adjugate()?.mul(other)?)
    }
}

/// Bruhat cell of an invertible matrix, computed without division.
///
/// Rows and columns are only rescaled by nonzero pivots, which keeps the
/// double coset `BwB` and the entries exact.
pub fn bruhat_cell(m: &GLMat) -> Result<Perm> {
    let n = m.n();
    let width = m.max_width();
    let mut a = m.rows();
    let mut used = vec![false; n];
    let mut img = vec![0; n];
    for j in 0..n {
        let p = find_pivot(&a, &used, j, width)?;
        used[p] = true;
        img[j] = p;
        let piv = a[p][j].clone();
        for i in 0..p {
            if used[i] || a[i][j].is_exact_zero() {
                continue;
            }
            let c = a[i][j].clone();
            for k in j + 1..n {
                let scaled = piv.mul(&a[i][k])?;
                a[i][k] = if a[p][k].is_exact_zero() { scaled } else { scaled.sub(&c.mul(&a[p][k])?)? };
            }
            a[i][j] = zero_like(&piv);
        }
    }
    Perm::from_images(img)
}

/// Minors `Δ_k = det M[{w(0), .., w(k-1)}, {0, .., k-1}]` for `k = 0..=n`,
/// rows taken in increasing order.
///
/// If `M = u1 · mono · u2` with `mono` of pattern `w` and diagonal part
/// `d`, then `Δ_k = minor_sign(w, k) · d_0 ⋯ d_{k-1}`.
pub fn cell_minors(m: &GLMat, w: &Perm) -> Result<Vec<LaurentElem>> {
    let f = m.field().clone();
    let mut out = vec![LaurentElem::one(&f)];
    for k in 1..=m.n() {
        let mut rows: Vec<usize> = (0..k).map(|j| w.apply(j)).collect();
        rows.sort_unstable();
        let sub: Vec<Vec<LaurentElem>> = rows.iter().map(|&r| (0..k).map(|c| m.get(r, c).clone()).collect()).collect();
        out.push(GLMat::from_rows(&f, sub)?.det()?);
    }
    Ok(out)
}

/// `true` when `Δ_k` carries a minus sign relative to `d_0 ⋯ d_{k-1}`.
pub fn minor_sign(w: &Perm, k: usize) -> bool {
    let v: Vec<usize> = (0..k).map(|j| w.apply(j)).collect();
    let inv: usize = (0..k).map(|i| (i + 1..k).filter(|&j| v[i] > v[j]).count()).sum();
    inv % 2 == 1
}
