//! Newton slopes and Kottwitz points of `σ`-conjugacy classes in `GL_n`.
//!
//! ```
//! use loopdl::coeffring::Field;
//! use loopdl::isocrystal::{newton_slopes, SlopeClass};
//! use loopdl::latmat::GLMat;
//!
//! let f = Field::prime(2).unwrap();
//! let b = GLMat::parse(&f, "0, 1; t, 0").unwrap();
//! let c = newton_slopes(&b, 1).unwrap();
//! assert_eq!(c.to_string(), "[1/2^2; kappa=1]");
//! assert_eq!(c, SlopeClass::parse("1/2^2").unwrap());
//! ```

use std::fmt;
use std::sync::Arc;

use num_rational::Rational64;
use serde::{Deserialize, Serialize};

use crate::coeffring::{Field, LaurentElem, Valuation, INF};
use crate::latmat::GLMat;
use crate::{Error, Result};

/// Multiset of Newton slopes, sorted descending, with its Kottwitz point.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SlopeClass {
    n: usize,
    slopes: Vec<Rational64>,
    kappa: i64,
}

impl SlopeClass {
    /// Checks integrality: a slope `a/b` in lowest terms occurs a multiple of `b` times.
    pub fn new(mut slopes: Vec<Rational64>) -> Result<Self> {
        if slopes.is_empty() {
            return Err(Error::InvalidClass("no slopes".into()));
        }
        slopes.sort_by(|a, b| b.cmp(a));
        for (s, mult) in group(&slopes) {
            if mult as i64 % s.denom() != 0 {
                return Err(Error::InvalidClass(format!("slope {s} occurs {mult} times, not a multiple of {}", s.denom())));
            }
        }
        let total: Rational64 = slopes.iter().sum();
        Ok(SlopeClass { n: slopes.len(), slopes, kappa: total.to_integer() })
    }

    pub fn from_ints(slopes: &[i64]) -> Result<Self> {
        SlopeClass::new(slopes.iter().map(|&s| Rational64::from_integer(s)).collect())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn slopes(&self) -> &[Rational64] {
        &self.slopes
    }

    pub fn kappa(&self) -> i64 {
        self.kappa
    }

    /// Distinct slopes with multiplicities, descending.
    pub fn grouped(&self) -> Vec<(Rational64, usize)> {
        group(&self.slopes)
    }

    pub fn is_basic(&self) -> bool {
        self.slopes.iter().all(|s| *s == self.slopes[0])
    }

    /// Single slope with denominator `n`.
    pub fn is_superbasic(&self) -> bool {
        self.is_basic() && *self.slopes[0].denom() == self.n as i64
    }

    /// Disjoint union of slope multisets.
    pub fn join(&self, other: &SlopeClass) -> SlopeClass {
        let mut s = self.slopes.clone();
        s.extend_from_slice(&other.slopes);
        SlopeClass::new(s).expect("union of valid classes is valid")
    }

    /// Parses `5, 1/2^2` or the display form `[5/1, 1/2^2; kappa=6]`.
    pub fn parse(s: &str) -> Result<Self> {
        let s = s.trim();
        let body = s.strip_prefix('[').and_then(|r| r.strip_suffix(']')).unwrap_or(s);
        let (list, kappa) = match body.split_once(';') {
            Some((l, k)) => {
                let k = k.trim().strip_prefix("kappa=").ok_or_else(|| Error::Parse(format!("expected kappa=, got `{k}`")))?;
                (l, Some(k.trim().parse::<i64>().map_err(|_| Error::Parse(format!("bad kappa `{k}`")))?))
            }
            None => (body, None),
        };
        let mut slopes = Vec::new();
        for item in list.split(',').map(str::trim).filter(|x| !x.is_empty()) {
            let (r, mult) = match item.split_once('^') {
                Some((r, m)) => (r, m.trim().parse::<usize>().map_err(|_| Error::Parse(format!("bad multiplicity in `{item}`")))?),
                None => (item, 1),
            };
            let r: Rational64 = r.trim().parse().map_err(|_| Error::Parse(format!("bad slope `{r}`")))?;
            slopes.extend(std::iter::repeat(r).take(mult));
        }
        let c = SlopeClass::new(slopes)?;
        if kappa.is_some_and(|k| k != c.kappa) {
            return Err(Error::InvalidClass(format!("kappa {} does not match the slopes of {c}", kappa.unwrap())));
        }
        Ok(c)
    }
}

fn group(sorted: &[Rational64]) -> Vec<(Rational64, usize)> {
    let mut out: Vec<(Rational64, usize)> = Vec::new();
    for &s in sorted {
        match out.last_mut() {
            Some((t, m)) if *t == s => *m += 1,
            _ => out.push((s, 1)),
        }
    }
    out
}

impl fmt::Display for SlopeClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .grouped()
            .into_iter()
            .map(|(s, m)| {
                let r = format!("{}/{}", s.numer(), s.denom());
                if m > 1 {
                    format!("{r}^{m}")
                } else {
                    r
                }
            })
            .collect();
        write!(f, "[{}; kappa={}]", parts.join(", "), self.kappa)
    }
}

#[derive(Serialize, Deserialize)]
struct SlopeClassJson {
    n: usize,
    slopes: Vec<[i64; 3]>,
    kappa: i64,
}

impl Serialize for SlopeClass {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        SlopeClassJson {
            n: self.n,
            slopes: self.grouped().into_iter().map(|(r, m)| [*r.numer(), *r.denom(), m as i64]).collect(),
            kappa: self.kappa,
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for SlopeClass {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let j = SlopeClassJson::deserialize(d)?;
        let mut slopes = Vec::new();
        for [a, b, m] in j.slopes {
            if b <= 0 || m < 0 {
                return Err(D::Error::custom(format!("bad slope entry [{a}, {b}, {m}]")));
            }
            slopes.extend(std::iter::repeat(Rational64::new(a, b)).take(m as usize));
        }
        let c = SlopeClass::new(slopes).map_err(D::Error::custom)?;
        if c.n != j.n || c.kappa != j.kappa {
            return Err(D::Error::custom("n or kappa inconsistent with slopes"));
        }
        Ok(c)
    }
}

/// Block sizes of a standard Levi subgroup, top-left to bottom-right.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct LeviShape {
    pub blocks: Vec<usize>,
}

impl LeviShape {
    pub fn new(blocks: Vec<usize>) -> Result<Self> {
        if blocks.is_empty() || blocks.contains(&0) {
            return Err(Error::Invalid(format!("bad block sizes {blocks:?}")));
        }
        Ok(LeviShape { blocks })
    }

    pub fn n(&self) -> usize {
        self.blocks.iter().sum()
    }

    /// Levi of the parabolic generated by the simple reflections `s_i`
    /// (1-based) in `simple`.
    pub fn from_simple_set(n: usize, simple: &[usize]) -> LeviShape {
        let mut blocks = vec![1];
        for i in 1..n {
            if simple.contains(&i) {
                *blocks.last_mut().unwrap() += 1;
            } else {
                blocks.push(1);
            }
        }
        LeviShape { blocks }
    }

    /// The simple reflections (1-based) inside the blocks.
    pub fn simple_set(&self) -> Vec<usize> {
        let mut out = Vec::new();
        let mut start = 0;
        for &b in &self.blocks {
            out.extend(start + 1..start + b);
            start += b;
        }
        out
    }
}

/// Newton slopes of `b`, whose entries must lie in `F_{q^{m0}}((t))`.
pub fn newton_slopes(b: &GLMat, m0: u32) -> Result<SlopeClass> {
    if m0 == 0 {
        return Err(Error::Invalid("m0 must be positive".into()));
    }
    if !b.fixed_by_frobenius_pow(m0) {
        return Err(Error::Invalid(format!("entries of b are not fixed by sigma^{m0}")));
    }
    let kappa = b.det_val()?.finite().ok_or_else(|| Error::Invalid(format!("{b} is not invertible")))?;
    let mut big_n = b.clone();
    let mut twist = b.clone();
    for _ in 1..m0 {
        twist = twist.frobenius();
        big_n = big_n.mul(&twist)?;
    }
    let cp = big_n.charpoly()?;
    let pts: Vec<Valuation> = cp.iter().map(LaurentElem::ord).collect();
    let slopes = lower_hull_slopes(&pts, big_n.max_width())?;
    let m0 = Rational64::from_integer(m0 as i64);
    let c = SlopeClass::new(slopes.into_iter().map(|s| s / m0).collect())?;
    debug_assert_eq!(c.kappa, kappa);
    Ok(c)
}

// Slopes (with multiplicity, increasing) of the lower convex hull of the
// points (k, v_k). Exact zeros are skipped; bounds must lie on or above it.
fn lower_hull_slopes(pts: &[Valuation], width: i64) -> Result<Vec<Rational64>> {
    let finite: Vec<(i64, i64)> = pts.iter().enumerate().filter_map(|(k, v)| v.finite().map(|v| (k as i64, v))).collect();
    let last = pts.len() as i64 - 1;
    if finite.first().map(|p| p.0) != Some(0) || finite.last().map(|p| p.0) != Some(last) {
        return Err(Error::precision("end points of the Newton polygon are not certified", width.max(1) as u32));
    }
    let mut hull: Vec<(i64, i64)> = Vec::new();
    for &p in &finite {
        while hull.len() >= 2 {
            let (a, b) = (hull[hull.len() - 2], hull[hull.len() - 1]);
            // drop b if it lies on or above the segment a-p
            if (b.1 - a.1) * (p.0 - a.0) >= (p.1 - a.1) * (b.0 - a.0) {
                hull.pop();
            } else {
                break;
            }
        }
        hull.push(p);
    }
    let mut slopes = Vec::new();
    for seg in hull.windows(2) {
        let (a, b) = (seg[0], seg[1]);
        let s = Rational64::new(b.1 - a.1, b.0 - a.0);
        for k in a.0 + 1..b.0 {
            if let Valuation::AtLeast(v) = pts[k as usize] {
                let on_hull = Rational64::from_integer(a.1) + s * Rational64::from_integer(k - a.0);
                if v != INF && Rational64::from_integer(v) < on_hull {
                    let need = (on_hull - Rational64::from_integer(v)).ceil().to_integer();
                    return Err(Error::precision(format!("coefficient {k} of the characteristic polynomial is O(t^{v})"), need.max(1) as u32));
                }
            }
        }
        slopes.extend(std::iter::repeat(s).take((b.0 - a.0) as usize));
    }
    Ok(slopes)
}

/// Block-diagonal representative: one companion block of `X^b - t^a` per
/// slope `a/b`, blocks in descending slope order.
pub fn standard_rep(field: &Arc<Field>, c: &SlopeClass) -> GLMat {
    let n = c.n;
    let mut m = GLMat::zero(field, n);
    let mut start = 0;
    for (s, mult) in c.grouped() {
        let (a, b) = (*s.numer(), *s.denom() as usize);
        for _ in 0..mult / b {
            for i in 0..b - 1 {
                m = m.with_entry(start + i, start + i + 1, LaurentElem::one(field));
            }
            m = m.with_entry(start + b - 1, start, LaurentElem::t_pow(field, a));
            start += b;
        }
    }
    m
}

/// `[[0, t^c], [t^(c+1), 0]]`, basic of slope `c + 1/2`.
pub fn superbasic_gl2(field: &Arc<Field>, c: i64) -> GLMat {
    let z = LaurentElem::zero(field);
    GLMat::from_rows(field, vec![vec![z.clone(), LaurentElem::t_pow(field, c)], vec![LaurentElem::t_pow(field, c + 1), z]]).unwrap()
}

/// Whether the class meets the Levi of the given shape: the slopes must
/// split into sub-multisets of the block sizes, each satisfying integrality.
pub fn meets_levi(c: &SlopeClass, shape: &LeviShape) -> bool {
    if shape.n() != c.n {
        return false;
    }
    let mut atoms: Vec<usize> = Vec::new();
    for (s, mult) in c.grouped() {
        let b = *s.denom() as usize;
        atoms.extend(std::iter::repeat(b).take(mult / b));
    }
    atoms.sort_unstable_by(|a, b| b.cmp(a));
    let mut room = shape.blocks.clone();
    fill(&atoms, &mut room)
}

fn fill(atoms: &[usize], room: &mut [usize]) -> bool {
    let Some((&a, rest)) = atoms.split_first() else {
        return room.iter().all(|&r| r == 0);
    };
    for i in 0..room.len() {
        if room[i] >= a && !room[..i].contains(&room[i]) {
            room[i] -= a;
            let ok = fill(rest, room);
            room[i] += a;
            if ok {
                return true;
            }
        }
    }
    false
}
