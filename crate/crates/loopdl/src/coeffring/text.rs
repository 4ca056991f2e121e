use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::field::{Fe, Field};
use super::laurent::LaurentElem;
use crate::{Error, Result};

pub(crate) fn format_laurent(x: &LaurentElem) -> String {
    let f = x.field();
    let mut parts: Vec<String> = x
        .terms()
        .map(|(c, e)| {
            let mono = match e {
                0 => String::new(),
                1 => "t".to_string(),
                _ => format!("t^{e}"),
            };
            match (c == Fe::ONE, e) {
                (_, 0) => f.format(c),
                (true, _) => mono,
                (false, _) => format!("{}*{}", f.format(c), mono),
            }
        })
        .collect();
    if let Some(p) = x.abs_prec() {
        parts.push(if p == 1 { "O(t)".to_string() } else { format!("O(t^{p})") });
    }
    if parts.is_empty() {
        return "0".to_string();
    }
    parts.join(" + ")
}

// Splits at top-level '+' / '-' (outside parentheses), keeping signs.
fn split_terms(s: &str) -> Vec<(bool, String)> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut cur = String::new();
    let mut neg = false;
    let mut prev_caret = false;
    for ch in s.chars() {
        match ch {
            '(' | '{' => depth += 1,
            ')' | '}' => depth -= 1,
            _ => {}
        }
        if depth == 0 && (ch == '+' || (ch == '-' && !prev_caret)) {
            if !cur.trim().is_empty() {
                out.push((neg, cur.trim().to_string()));
            }
            cur.clear();
            neg = ch == '-';
            prev_caret = false;
            continue;
        }
        if !ch.is_whitespace() {
            prev_caret = ch == '^';
        }
        cur.push(ch);
    }
    if !cur.trim().is_empty() {
        out.push((neg, cur.trim().to_string()));
    }
    out
}

fn parse_exp(s: &str) -> Result<i64> {
    let s = s.trim();
    let s = s.strip_prefix('{').and_then(|r| r.strip_suffix('}')).unwrap_or(s);
    s.trim().parse().map_err(|_| Error::Parse(format!("bad exponent `{s}`")))
}

// Parses `t`, `t^k`, `t^{k}`.
fn parse_t_power(s: &str) -> Result<i64> {
    let s = s.trim();
    if s == "t" {
        return Ok(1);
    }
    match s.strip_prefix("t^") {
        Some(e) => parse_exp(e),
        None => Err(Error::Parse(format!("expected a power of t, got `{s}`"))),
    }
}

fn split_top_star(term: &str) -> Option<(&str, &str)> {
    let mut depth = 0i32;
    let mut pos = None;
    for (i, ch) in term.char_indices() {
        match ch {
            '(' => depth += 1,
            ')' => depth -= 1,
            '*' if depth == 0 => pos = Some(i),
            _ => {}
        }
    }
    pos.map(|i| (&term[..i], &term[i + 1..]))
}

/// Parses the text form produced by `Display`.
pub fn parse_laurent(field: &Arc<Field>, s: &str) -> Result<LaurentElem> {
    let mut acc = LaurentElem::zero(field);
    let mut big_o: Option<i64> = None;
    for (neg, term) in split_terms(s) {
        if let Some(inner) = term.strip_prefix("O(").and_then(|r| r.strip_suffix(')')) {
            if neg || big_o.is_some() {
                return Err(Error::Parse(format!("misplaced O-term in `{s}`")));
            }
            big_o = Some(parse_t_power(inner)?);
            continue;
        }
        let (c, e) = if let Some((c, t)) = split_top_star(&term) {
            (field.parse(c)?, parse_t_power(t)?)
        } else if term.starts_with('t') {
            (Fe::ONE, parse_t_power(&term)?)
        } else {
            (field.parse(&term)?, 0)
        };
        let c = if neg { field.neg(c) } else { c };
        acc = acc.add(&LaurentElem::monomial(field, c, e))?;
    }
    match big_o {
        None => Ok(acc),
        Some(p) => {
            if acc.top().is_some_and(|e| e >= p) {
                return Err(Error::Parse(format!("term beyond the precision O(t^{p}) in `{s}`")));
            }
            let lo = acc.ord().finite().unwrap_or(p).min(p);
            let coeffs = (lo..p).map(|e| acc.coeff(e).unwrap()).collect();
            LaurentElem::new(field, lo, coeffs, p, false)
        }
    }
}

/// Compact description of a field for JSON.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldDesc {
    pub p: u32,
    pub m_exp: u32,
    pub e0: u32,
    pub modulus: Vec<u32>,
}

impl FieldDesc {
    pub fn of(f: &Field) -> Self {
        FieldDesc { p: f.p(), m_exp: f.m_exp(), e0: f.e0(), modulus: f.modulus().to_vec() }
    }

    /// Rebuilds the field, checking the recorded modulus.
    pub fn build(&self) -> Result<Arc<Field>> {
        let f = Field::new(self.p, self.m_exp, self.e0)?;
        if f.modulus() != self.modulus.as_slice() {
            return Err(Error::Parse(format!("modulus {:?} is not the canonical one {:?}", self.modulus, f.modulus())));
        }
        Ok(f)
    }
}

/// JSON mirror of a [`LaurentElem`]; coefficients are element codes.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LaurentJson {
    pub field: FieldDesc,
    pub v_lo: i64,
    pub prec: i64,
    pub coeffs: Vec<u32>,
    pub exact: bool,
}

impl LaurentElem {
    pub fn to_json(&self) -> LaurentJson {
        LaurentJson {
            field: FieldDesc::of(self.field()),
            v_lo: self.v_lo(),
            prec: self.prec(),
            coeffs: self.coeffs().iter().map(|c| c.code()).collect(),
            exact: self.is_exact(),
        }
    }

    /// Rebuilds an element from JSON inside an existing field.
    pub fn from_json_in(field: &Arc<Field>, j: &LaurentJson) -> Result<LaurentElem> {
        if FieldDesc::of(field) != j.field {
            return Err(Error::FieldMismatch(field.to_string(), format!("{:?}", j.field)));
        }
        let coeffs = j.coeffs.iter().map(|&c| field.elem(c).ok_or_else(|| Error::Parse(format!("code {c} out of range")))).collect::<Result<Vec<_>>>()?;
        LaurentElem::new(field, j.v_lo, coeffs, j.prec, j.exact)
    }

    pub fn from_json(j: &LaurentJson) -> Result<LaurentElem> {
        LaurentElem::from_json_in(&j.field.build()?, j)
    }

    pub fn parse(field: &Arc<Field>, s: &str) -> Result<LaurentElem> {
        parse_laurent(field, s)
    }
}

impl Serialize for LaurentElem {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_json().serialize(s)
    }
}
