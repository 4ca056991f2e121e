// Polynomials over F_{q^m}, low degree first, no trailing zeros.

use crate::coeffring::{Fe, Field, LaurentElem};

pub(crate) type Poly = Vec<Fe>;

fn trim(mut a: Poly) -> Poly {
    while a.last().is_some_and(|c| c.is_zero()) {
        a.pop();
    }
    a
}

fn divmod(f: &Field, a: &[Fe], b: &[Fe]) -> (Poly, Poly) {
    let mut r = a.to_vec();
    let db = b.len() - 1;
    let lead = f.inv(b[db]).expect("nonzero leading coefficient");
    let mut quo = vec![Fe::ZERO; a.len().saturating_sub(db)];
    while r.len() > db && !r.is_empty() {
        let k = r.len() - 1 - db;
        let c = f.mul(r[r.len() - 1], lead);
        quo[k] = c;
        for (i, &x) in b.iter().enumerate() {
            r[k + i] = f.sub(r[k + i], f.mul(c, x));
        }
        r = trim(r);
    }
    (trim(quo), r)
}

fn gcd(f: &Field, a: Poly, b: Poly) -> Poly {
    let (mut a, mut b) = (a, b);
    while !b.is_empty() {
        let (_, r) = divmod(f, &a, &b);
        a = b;
        b = r;
    }
    a
}

/// Primitive generator over `F[t]` of the `F((t))`-line through `v`, with
/// the first nonzero entry monic. Entries must be exact.
pub(crate) fn primitive_line(f: &Field, v: &[LaurentElem]) -> Vec<Poly> {
    let lo = v.iter().filter_map(|e| e.ord().finite()).min().unwrap_or(0);
    let polys: Vec<Poly> = v
        .iter()
        .map(|e| {
            let Some(top) = e.top() else { return Vec::new() };
            trim((lo..=top).map(|k| e.coeff(k).unwrap_or(Fe::ZERO)).collect())
        })
        .collect();
    let g = polys.iter().cloned().fold(Vec::new(), |acc, p| gcd(f, p, acc));
    if g.is_empty() {
        return polys;
    }
    let mut out: Vec<Poly> = polys.iter().map(|p| if p.is_empty() { Vec::new() } else { divmod(f, p, &g).0 }).collect();
    if let Some(first) = out.iter().find(|p| !p.is_empty()) {
        let s = f.inv(*first.last().unwrap()).unwrap();
        for p in out.iter_mut() {
            for c in p.iter_mut() {
                *c = f.mul(*c, s);
            }
        }
    }
    out
}
