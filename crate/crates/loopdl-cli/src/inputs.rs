use std::collections::BTreeSet;
use std::sync::Arc;

use loopdl::coeffring::{Field, LaurentElem};
use loopdl::dlspace::{FlagPoint, Level};
use loopdl::isocrystal::{standard_rep, superbasic_gl2, LeviShape, SlopeClass};
use loopdl::latmat::{GLMat, Perm};
use loopdl::weyl::{parse_word, CoxeterSys};
use loopdl::{Error, Result};

use crate::config::Effective;

pub fn field(cfg: &Effective) -> Result<Arc<Field>> {
    Field::new(cfg.p, cfg.e0 * cfg.m, cfg.e0)
}

pub fn coxeter(cfg: &Effective) -> Result<CoxeterSys> {
    match &cfg.sigma {
        None => CoxeterSys::from_label(&cfg.kind),
        Some(s) => CoxeterSys::with_sigma(&cfg.kind, one_based_list(s)?),
    }
}

fn one_based_list(s: &str) -> Result<Vec<usize>> {
    s.split(|c: char| c == ',' || c.is_whitespace())
        .filter(|x| !x.is_empty())
        .map(|x| match x.parse::<usize>() {
            Ok(k) if k >= 1 => Ok(k - 1),
            _ => Err(Error::Parse(format!("expected a positive integer, got `{x}`"))),
        })
        .collect()
}

/// "all" or a list of 1-based simple reflections.
pub fn simple_set(sys: &CoxeterSys, s: &str) -> Result<BTreeSet<usize>> {
    if s.trim() == "all" {
        return Ok(sys.all_simple());
    }
    let set: BTreeSet<usize> = parse_word(s)?.into_iter().collect();
    if let Some(&bad) = set.iter().find(|&&i| i >= sys.rank()) {
        return Err(Error::Invalid(format!("s{} is not a simple reflection of {}", bad + 1, sys.label())));
    }
    Ok(set)
}

pub fn levi(n: usize, s: &str) -> Result<LeviShape> {
    let blocks: Vec<usize> = one_based_list(s)?.into_iter().map(|k| k + 1).collect();
    let shape = LeviShape::new(blocks)?;
    if shape.n() != n {
        return Err(Error::Invalid(format!("Levi blocks {s} do not add up to n = {n}")));
    }
    Ok(shape)
}

/// A word in S_n, letters 1..n-1.
pub fn perm(n: usize, s: &str) -> Result<Perm> {
    let word: Vec<usize> = parse_word(s)?.into_iter().map(|k| k + 1).collect();
    Perm::from_word(n, &word)
}

pub fn b_matrix(field: &Arc<Field>, n: usize, spec: &str) -> Result<GLMat> {
    let (kind, arg) = spec.split_once(':').unwrap_or((spec, ""));
    let b = match kind.trim() {
        "identity" => GLMat::identity(field, n),
        "superbasic" => {
            let c: i64 = arg.trim().parse().map_err(|_| Error::Parse(format!("bad superbasic offset `{arg}`")))?;
            if n == 2 {
                superbasic_gl2(field, c)
            } else {
                let s = format!("{}/{}^{}", c * n as i64 + 1, n, n);
                standard_rep(field, &SlopeClass::parse(&s)?)
            }
        }
        "diag" => {
            let e: Vec<i64> = arg
                .split(',')
                .map(|x| x.trim().parse().map_err(|_| Error::Parse(format!("bad exponent `{x}`"))))
                .collect::<Result<_>>()?;
            GLMat::diag_t(field, &e)
        }
        "slopes" => standard_rep(field, &SlopeClass::parse(arg)?),
        "matrix" => GLMat::parse(field, arg)?,
        other => return Err(Error::Parse(format!("unknown b-spec `{other}`"))),
    };
    if b.n() != n {
        return Err(Error::Invalid(format!("b has size {}, expected n = {n}", b.n())));
    }
    if !b.is_invertible()? {
        return Err(Error::Invalid(format!("b = {b} is not invertible")));
    }
    Ok(b)
}

pub fn slope_class(n: usize, spec: &str) -> Result<Option<SlopeClass>> {
    match spec.split_once(':') {
        Some(("slopes", arg)) => {
            let c = SlopeClass::parse(arg)?;
            if c.n() != n {
                return Err(Error::Invalid(format!("class {c} has size {}, expected {n}", c.n())));
            }
            Ok(Some(c))
        }
        _ => Ok(None),
    }
}

pub fn point(field: &Arc<Field>, n: usize, s: &str, level: Level) -> Result<FlagPoint> {
    let t = s.trim();
    if let Some(inner) = t.strip_prefix('[').and_then(|x| x.strip_suffix(']')) {
        let (x, y) = inner.split_once(':').ok_or_else(|| Error::Parse(format!("expected [x:y], got `{s}`")))?;
        if n != 2 {
            return Err(Error::Invalid("[x:y] points need n = 2".into()));
        }
        let mut pt = FlagPoint::gl2(&LaurentElem::parse(field, x)?, &LaurentElem::parse(field, y)?)?;
        pt.level = level;
        return Ok(pt);
    }
    let g = GLMat::parse(field, t)?;
    if g.n() != n {
        return Err(Error::Invalid(format!("point has size {}, expected n = {n}", g.n())));
    }
    FlagPoint::new(g, level)
}
