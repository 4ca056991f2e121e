//! Matrices over `L = F_{q^m}((t))`.
//!
//! Determinants and characteristic polynomials are computed division-free
//! (Berkowitz), so exact inputs give exact answers and truncated inputs
//! give answers with correctly propagated precision.
//!
//! ```
//! use loopdl::coeffring::{Field, Valuation};
//! use loopdl::latmat::GLMat;
//!
//! let f = Field::prime(2).unwrap();
//! let g = GLMat::parse(&f, "1, 0; t, 1").unwrap();
//! let bd = g.bruhat_decompose().unwrap();
//! assert_eq!(bd.mono.to_string(), "0, t^-1; t, 0");
//! assert_eq!(g.det_val().unwrap(), Valuation::Finite(0));
//! ```

mod bruhat;
mod perm;

use std::fmt;
use std::sync::{Arc, OnceLock};

use serde::{Deserialize, Serialize};

use crate::coeffring::{Fe, Field, LaurentElem, LaurentJson, Valuation};
use crate::{Error, Result};

pub use bruhat::{bruhat_cell, cell_minors, minor_sign, BruhatData};
pub use perm::Perm;

/// Square matrix over `F_{q^m}((t))` with a lazily cached determinant valuation.
#[derive(Clone)]
pub struct GLMat {
    field: Arc<Field>,
    n: usize,
    entries: Vec<LaurentElem>,
    det_val: OnceLock<Result<Valuation>>,
}

impl PartialEq for GLMat {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.entries == other.entries
    }
}

impl Eq for GLMat {}

impl fmt::Debug for GLMat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GLMat[{}]", self)
    }
}

impl fmt::Display for GLMat {
    /// Rows separated by `;`, entries by `,`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = (0..self.n)
            .map(|i| (0..self.n).map(|j| self.get(i, j).to_string()).collect::<Vec<_>>().join(", "))
            .collect();
        f.write_str(&rows.join("; "))
    }
}

impl GLMat {
    pub fn new(field: &Arc<Field>, n: usize, entries: Vec<LaurentElem>) -> Result<Self> {
        if entries.len() != n * n {
            return Err(Error::Invalid(format!("{} entries for a {n}x{n} matrix", entries.len())));
        }
        for e in &entries {
            if **e.field() != **field {
                return Err(Error::FieldMismatch(field.to_string(), e.field().to_string()));
            }
        }
        Ok(GLMat { field: field.clone(), n, entries, det_val: OnceLock::new() })
    }

    pub fn from_rows(field: &Arc<Field>, rows: Vec<Vec<LaurentElem>>) -> Result<Self> {
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return Err(Error::Invalid("matrix is not square".into()));
        }
        GLMat::new(field, n, rows.into_iter().flatten().collect())
    }

    fn from_fn(field: &Arc<Field>, n: usize, mut f: impl FnMut(usize, usize) -> LaurentElem) -> Self {
        let entries = (0..n * n).map(|k| f(k / n, k % n)).collect();
        GLMat { field: field.clone(), n, entries, det_val: OnceLock::new() }
    }

    pub fn zero(field: &Arc<Field>, n: usize) -> Self {
        GLMat::from_fn(field, n, |_, _| LaurentElem::zero(field))
    }

    pub fn identity(field: &Arc<Field>, n: usize) -> Self {
        GLMat::from_fn(field, n, |i, j| if i == j { LaurentElem::one(field) } else { LaurentElem::zero(field) })
    }

    pub fn diag(field: &Arc<Field>, d: &[LaurentElem]) -> Self {
        GLMat::from_fn(field, d.len(), |i, j| if i == j { d[i].clone() } else { LaurentElem::zero(field) })
    }

    /// `diag(t^e_1, ..., t^e_n)`.
    pub fn diag_t(field: &Arc<Field>, exps: &[i64]) -> Self {
        let d: Vec<_> = exps.iter().map(|&e| LaurentElem::t_pow(field, e)).collect();
        GLMat::diag(field, &d)
    }

    /// Monomial matrix with entry `d[j]` at `(w(j), j)`.
    pub fn monomial(field: &Arc<Field>, w: &Perm, d: &[LaurentElem]) -> Self {
        GLMat::from_fn(field, w.n(), |i, j| if w.apply(j) == i { d[j].clone() } else { LaurentElem::zero(field) })
    }

    pub fn permutation(field: &Arc<Field>, w: &Perm) -> Self {
        let ones = vec![LaurentElem::one(field); w.n()];
        GLMat::monomial(field, w, &ones)
    }

    pub fn field(&self) -> &Arc<Field> {
        &self.field
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &LaurentElem {
        &self.entries[i * self.n + j]
    }

    pub fn entries(&self) -> &[LaurentElem] {
        &self.entries
    }

    pub fn rows(&self) -> Vec<Vec<LaurentElem>> {
        self.entries.chunks(self.n).map(|r| r.to_vec()).collect()
    }

    pub fn with_entry(&self, i: usize, j: usize, x: LaurentElem) -> GLMat {
        let mut entries = self.entries.clone();
        entries[i * self.n + j] = x;
        GLMat { field: self.field.clone(), n: self.n, entries, det_val: OnceLock::new() }
    }

    /// Column `j` as a vector.
    pub fn column(&self, j: usize) -> Vec<LaurentElem> {
        (0..self.n).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn from_columns(field: &Arc<Field>, cols: &[Vec<LaurentElem>]) -> Result<Self> {
        let n = cols.len();
        if cols.iter().any(|c| c.len() != n) {
            return Err(Error::Invalid("matrix is not square".into()));
        }
        Ok(GLMat::from_fn(field, n, |i, j| cols[j][i].clone()))
    }

    pub fn is_exact(&self) -> bool {
        self.entries.iter().all(|e| e.is_exact())
    }

    fn check_same(&self, other: &GLMat) -> Result<()> {
        if self.n != other.n {
            return Err(Error::Invalid(format!("size mismatch {} vs {}", self.n, other.n)));
        }
        if *self.field != *other.field {
            return Err(Error::FieldMismatch(self.field.to_string(), other.field.to_string()));
        }
        Ok(())
    }

    pub fn mul(&self, other: &GLMat) -> Result<GLMat> {
        self.check_same(other)?;
        let n = self.n;
        let mut entries = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                let mut acc = LaurentElem::zero(&self.field);
                for k in 0..n {
                    let a = self.get(i, k);
                    let b = other.get(k, j);
                    if a.is_exact_zero() || b.is_exact_zero() {
                        continue;
                    }
                    acc = acc.add(&a.mul(b)?)?;
                }
                entries.push(acc);
            }
        }
        Ok(GLMat { field: self.field.clone(), n, entries, det_val: OnceLock::new() })
    }

    pub fn add(&self, other: &GLMat) -> Result<GLMat> {
        self.check_same(other)?;
        let entries = self.entries.iter().zip(&other.entries).map(|(a, b)| a.add(b)).collect::<Result<_>>()?;
        Ok(GLMat { field: self.field.clone(), n: self.n, entries, det_val: OnceLock::new() })
    }

    pub fn scale(&self, c: &LaurentElem) -> Result<GLMat> {
        let entries = self.entries.iter().map(|a| a.mul(c)).collect::<Result<_>>()?;
        Ok(GLMat { field: self.field.clone(), n: self.n, entries, det_val: OnceLock::new() })
    }

    pub fn transpose(&self) -> GLMat {
        GLMat::from_fn(&self.field, self.n, |i, j| self.get(j, i).clone())
    }

    /// Entrywise Frobenius `σ`.
    pub fn frobenius(&self) -> GLMat {
        GLMat::from_fn(&self.field, self.n, |i, j| self.get(i, j).frobenius())
    }

    pub fn frobenius_pow(&self, k: u32) -> GLMat {
        GLMat::from_fn(&self.field, self.n, |i, j| self.get(i, j).frobenius_pow(k))
    }

    /// Whether every entry is fixed by `σ^k`.
    pub fn fixed_by_frobenius_pow(&self, k: u32) -> bool {
        self.entries.iter().all(|e| e.fixed_by_frobenius_pow(k))
    }

    /// Coefficients `[1, c_1, .., c_n]` of `det(X - A) = Σ c_k X^(n-k)`.
    pub fn charpoly(&self) -> Result<Vec<LaurentElem>> {
        let f = &self.field;
        let n = self.n;
        if n == 0 {
            return Ok(vec![LaurentElem::one(f)]);
        }
        let mut vect = vec![LaurentElem::one(f), self.get(0, 0).neg()];
        for r in 1..n {
            let mut t = vec![LaurentElem::one(f), self.get(r, r).neg()];
            let mut v: Vec<LaurentElem> = (0..r).map(|i| self.get(i, r).clone()).collect();
            for k in 0..r {
                let mut dot = LaurentElem::zero(f);
                for (j, vj) in v.iter().enumerate() {
                    dot = dot.add(&self.get(r, j).mul(vj)?)?;
                }
                t.push(dot.neg());
                if k + 1 < r {
                    let mut nv = Vec::with_capacity(r);
                    for i in 0..r {
                        let mut acc = LaurentElem::zero(f);
                        for (j, vj) in v.iter().enumerate() {
                            acc = acc.add(&self.get(i, j).mul(vj)?)?;
                        }
                        nv.push(acc);
                    }
                    v = nv;
                }
            }
            let mut next = Vec::with_capacity(r + 2);
            for k in 0..r + 2 {
                let mut acc = LaurentElem::zero(f);
                for (i, vi) in vect.iter().enumerate() {
                    if i <= k && k - i < t.len() {
                        acc = acc.add(&t[k - i].mul(vi)?)?;
                    }
                }
                next.push(acc);
            }
            vect = next;
        }
        Ok(vect)
    }

    pub fn det(&self) -> Result<LaurentElem> {
        let cp = self.charpoly()?;
        let d = cp[self.n].clone();
        Ok(if self.n % 2 == 1 { d.neg() } else { d })
    }

    /// Valuation of the determinant; exact zero gives `AtLeast(INF)`.
    pub fn det_val(&self) -> Result<Valuation> {
        self.det_val
            .get_or_init(|| {
                let d = self.det()?;
                match d.ord() {
                    v @ Valuation::Finite(_) => Ok(v),
                    v if v.is_infinite() => Ok(v),
                    Valuation::AtLeast(v) => Err(Error::precision(
                        format!("determinant is O(t^{v})"),
                        (self.max_width() as u32).max(1),
                    )),
                }
            })
            .clone()
    }

    /// Whether the determinant is certified nonzero.
    pub fn is_invertible(&self) -> Result<bool> {
        Ok(self.det_val()?.is_finite())
    }

    pub(crate) fn max_width(&self) -> i64 {
        self.entries.iter().map(|e| e.prec() - e.v_lo()).max().unwrap_or(1)
    }

    /// `adj(A)` with `A adj(A) = det(A) I`, computed from the characteristic
    /// polynomial without division.
    pub fn adjugate(&self) -> Result<GLMat> {
        let n = self.n;
        let cp = self.charpoly()?;
        let mut b = GLMat::identity(&self.field, n);
        for c in cp.iter().take(n).skip(1) {
            b = b.mul(self)?;
            for i in 0..n {
                let d = b.get(i, i).add(c)?;
                b.entries[i * n + i] = d;
            }
        }
        if n % 2 == 0 {
            let entries = b.entries.iter().map(|e| e.neg()).collect();
            b = GLMat { field: self.field.clone(), n, entries, det_val: OnceLock::new() };
        }
        Ok(b)
    }

    /// Inverse as `adj(A) / det(A)`; exact when the division terminates.
    pub fn inverse(&self) -> Result<GLMat> {
        let d = self.det()?;
        if !d.ord().is_finite() {
            return Err(Error::DivByUnknown(format!("det = {d}")));
        }
        let adj = self.adjugate()?;
        let entries = adj.entries.iter().map(|e| e.div(&d)).collect::<Result<_>>()?;
        Ok(GLMat { field: self.field.clone(), n: self.n, entries, det_val: OnceLock::new() })
    }

    /// Whether exactly one entry in each row and column is nonzero (certified).
    pub fn is_monomial(&self) -> bool {
        self.monomial_perm().is_some()
    }

    /// Permutation pattern of a monomial matrix.
    pub fn monomial_perm(&self) -> Option<Perm> {
        let n = self.n;
        let mut img = vec![usize::MAX; n];
        for j in 0..n {
            for i in 0..n {
                let e = self.get(i, j);
                if e.ord().is_finite() {
                    if img[j] != usize::MAX {
                        return None;
                    }
                    img[j] = i;
                } else if !e.is_exact_zero() {
                    return None;
                }
            }
        }
        if img.contains(&usize::MAX) {
            return None;
        }
        Perm::from_images(img).ok()
    }

    /// Whether the matrix is upper triangular with ones on the diagonal.
    pub fn is_upper_unipotent(&self) -> bool {
        (0..self.n).all(|i| {
            (0..self.n).all(|j| {
                let e = self.get(i, j);
                match i.cmp(&j) {
                    std::cmp::Ordering::Greater => e.is_zero() != crate::TriState::No,
                    std::cmp::Ordering::Equal => e.sub(&LaurentElem::one(&self.field)).map(|d| d.is_zero() != crate::TriState::No).unwrap_or(false),
                    std::cmp::Ordering::Less => true,
                }
            })
        })
    }

    /// Entrywise comparison up to the common precision.
    pub fn eq_to_precision(&self, other: &GLMat) -> crate::TriState {
        self.entries.iter().zip(&other.entries).fold(crate::TriState::Yes, |acc, (a, b)| acc.and(a.eq_to_precision(b)))
    }

    /// Parses `a, b; c, d` (rows separated by `;`, entries by `,`).
    pub fn parse(field: &Arc<Field>, s: &str) -> Result<GLMat> {
        let rows = s
            .split(';')
            .map(|r| r.split(',').map(|e| LaurentElem::parse(field, e)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        GLMat::from_rows(field, rows)
    }

    pub fn to_json(&self) -> MatJson {
        MatJson(self.rows().iter().map(|r| r.iter().map(|e| e.to_json()).collect()).collect())
    }

    pub fn from_json(field: &Arc<Field>, j: &MatJson) -> Result<GLMat> {
        let rows = j.0.iter().map(|r| r.iter().map(|e| LaurentElem::from_json_in(field, e)).collect::<Result<Vec<_>>>()).collect::<Result<Vec<_>>>()?;
        GLMat::from_rows(field, rows)
    }

    /// Scalar `c * t^e` times the identity.
    pub fn scalar(field: &Arc<Field>, n: usize, c: Fe, e: i64) -> GLMat {
        let d = vec![LaurentElem::monomial(field, c, e); n];
        GLMat::diag(field, &d)
    }
}

/// JSON mirror of a matrix: array of rows of [`LaurentJson`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatJson(pub Vec<Vec<LaurentJson>>);

impl Serialize for GLMat {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_json().serialize(s)
    }
}
