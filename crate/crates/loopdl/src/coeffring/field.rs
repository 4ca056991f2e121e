use std::fmt;
use std::sync::Arc;

use crate::{Error, Result};

/// Largest supported field size.
pub const MAX_FIELD_SIZE: u32 = 1 << 16;

/// An element of a finite field, stored by its code: the coefficient
/// vector of its polynomial representative read as a base-`p` integer.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Fe(pub(crate) u32);

impl Fe {
    pub const ZERO: Fe = Fe(0);
    pub const ONE: Fe = Fe(1);

    pub fn code(self) -> u32 {
        self.0
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

/// The field `F_{p^m_exp}` together with the Frobenius exponent `q = p^e0`.
///
/// Elements are polynomials in `z` modulo `modulus`, the smallest monic
/// irreducible polynomial of degree `m_exp` (coefficients compared from the
/// top degree down).
pub struct Field {
    p: u32,
    m_exp: u32,
    e0: u32,
    q: u32,
    modulus: Vec<u32>,
    size: u32,
    // exp[k] = code of g^k for k in 0..2(size-1); log[code] for code != 0.
    exp: Vec<u32>,
    log: Vec<u32>,
    add_table: Option<Vec<u16>>,
    neg_table: Vec<u32>,
}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F_{}^{} (q = {})", self.p, self.m_exp, self.q)
    }
}

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.m_exp == other.m_exp && self.e0 == other.e0
    }
}

impl Eq for Field {}

fn is_prime(p: u32) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| p % d != 0)
}

fn prime_factors(mut n: u32) -> Vec<u32> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

// Dense polynomials over F_p, lowest degree first, no trailing zeros.
fn poly_trim(a: &mut Vec<u32>) {
    while a.last() == Some(&0) {
        a.pop();
    }
}

fn poly_rem(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
    let mut r = a.to_vec();
    poly_trim(&mut r);
    let db = b.len() - 1;
    let inv_lead = mod_inv(b[db], p);
    while r.len() > db {
        let k = r.len() - 1 - db;
        let c = r[r.len() - 1] * inv_lead % p;
        for (i, &bi) in b.iter().enumerate() {
            r[k + i] = (r[k + i] + (p - c) * bi) % p;
        }
        poly_trim(&mut r);
    }
    r
}

fn mod_inv(a: u32, p: u32) -> u32 {
    let mut r = 1u64;
    let mut base = a as u64 % p as u64;
    let mut e = p - 2;
    while e > 0 {
        if e & 1 == 1 {
            r = r * base % p as u64;
        }
        base = base * base % p as u64;
        e >>= 1;
    }
    r as u32
}

fn digits(mut code: u32, p: u32, len: u32) -> Vec<u32> {
    (0..len)
        .map(|_| {
            let d = code % p;
            code /= p;
            d
        })
        .collect()
}

fn undigits(d: &[u32], p: u32) -> u32 {
    d.iter().rev().fold(0, |acc, &x| acc * p + x)
}

fn monic_from_code(code: u32, p: u32, deg: u32) -> Vec<u32> {
    let mut v = digits(code, p, deg);
    v.push(1);
    v
}

fn is_irreducible(f: &[u32], p: u32) -> bool {
    let deg = (f.len() - 1) as u32;
    for d in 1..=deg / 2 {
        for code in 0..p.pow(d) {
            let g = monic_from_code(code, p, d);
            if poly_rem(f, &g, p).is_empty() {
                return false;
            }
        }
    }
    true
}

impl Field {
    /// Builds `F_{p^m_exp}` with Frobenius exponent `q = p^e0`.
    pub fn new(p: u32, m_exp: u32, e0: u32) -> Result<Arc<Field>> {
        if !is_prime(p) {
            return Err(Error::Invalid(format!("{p} is not prime")));
        }
        if m_exp == 0 || e0 == 0 || m_exp % e0 != 0 {
            return Err(Error::Invalid(format!("e0 = {e0} must divide m_exp = {m_exp}")));
        }
        let size = (p as u64).checked_pow(m_exp).filter(|&s| s <= MAX_FIELD_SIZE as u64);
        let size = size.ok_or_else(|| Error::Invalid(format!("field {p}^{m_exp} is too large")))? as u32;
        let modulus = (0..p.pow(m_exp))
            .map(|c| monic_from_code(c, p, m_exp))
            .find(|f| is_irreducible(f, p))
            .expect("irreducible polynomials exist in every degree");
        let mulmod = |a: u32, b: u32| -> u32 {
            let da = digits(a, p, m_exp);
            let db = digits(b, p, m_exp);
            let mut prod = vec![0u32; 2 * m_exp as usize];
            for (i, &x) in da.iter().enumerate() {
                for (j, &y) in db.iter().enumerate() {
                    prod[i + j] = (prod[i + j] + x * y) % p;
                }
            }
            let r = poly_rem(&prod, &modulus, p);
            undigits(&r, p)
        };
        let order = size - 1;
        let factors = prime_factors(order);
        let pow = |g: u32, mut e: u32| -> u32 {
            let mut r = 1;
            let mut b = g;
            while e > 0 {
                if e & 1 == 1 {
                    r = mulmod(r, b);
                }
                b = mulmod(b, b);
                e >>= 1;
            }
            r
        };
        let gen = (1..size)
            .find(|&g| order == 1 || factors.iter().all(|&l| pow(g, order / l) != 1))
            .expect("multiplicative group is cyclic");
        let mut exp = vec![0u32; 2 * order as usize];
        let mut log = vec![0u32; size as usize];
        let mut x = 1;
        for k in 0..order {
            exp[k as usize] = x;
            exp[(k + order) as usize] = x;
            log[x as usize] = k;
            x = mulmod(x, gen);
        }
        let add_table = if p != 2 && size <= 1024 {
            let mut t = vec![0u16; (size * size) as usize];
            for a in 0..size {
                let da = digits(a, p, m_exp);
                for b in 0..size {
                    let db = digits(b, p, m_exp);
                    let s: Vec<u32> = da.iter().zip(&db).map(|(x, y)| (x + y) % p).collect();
                    t[(a * size + b) as usize] = undigits(&s, p) as u16;
                }
            }
            Some(t)
        } else {
            None
        };
        let neg_table = (0..size)
            .map(|a| undigits(&digits(a, p, m_exp).iter().map(|&x| (p - x) % p).collect::<Vec<_>>(), p))
            .collect();
        Ok(Arc::new(Field { p, m_exp, e0, q: p.pow(e0), modulus, size, exp, log, add_table, neg_table }))
    }

    /// `F_{q^m}` with Frobenius `x -> x^q`; `q` must be a prime power.
    pub fn over(q: u32, m: u32) -> Result<Arc<Field>> {
        let p = (2..=q).find(|d| q % d == 0).ok_or_else(|| Error::Invalid(format!("q = {q} is not a prime power")))?;
        let mut e0 = 0;
        let mut r = q;
        while r % p == 0 {
            r /= p;
            e0 += 1;
        }
        if r != 1 {
            return Err(Error::Invalid(format!("q = {q} is not a prime power")));
        }
        Field::new(p, e0 * m, e0)
    }

    /// The prime field `F_p` with `q = p`.
    pub fn prime(p: u32) -> Result<Arc<Field>> {
        Field::new(p, 1, 1)
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn m_exp(&self) -> u32 {
        self.m_exp
    }

    pub fn e0(&self) -> u32 {
        self.e0
    }

    /// The Frobenius exponent `q`.
    pub fn q(&self) -> u32 {
        self.q
    }

    /// Degree of the field over `F_q`, which is the order of Frobenius.
    pub fn frob_order(&self) -> u32 {
        self.m_exp / self.e0
    }

    pub fn size(&self) -> u32 {
        self.size
    }

    /// Coefficients of the modulus, constant term first, monic.
    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    pub fn zero(&self) -> Fe {
        Fe::ZERO
    }

    pub fn one(&self) -> Fe {
        Fe::ONE
    }

    /// The class of `z`, a root of the modulus (zero for a prime field).
    pub fn gen(&self) -> Fe {
        Fe(self.p % self.size)
    }

    /// Element with the given code, if in range.
    pub fn elem(&self, code: u32) -> Option<Fe> {
        (code < self.size).then_some(Fe(code))
    }

    /// Image of an integer in the prime field.
    pub fn from_int(&self, n: i64) -> Fe {
        Fe(n.rem_euclid(self.p as i64) as u32)
    }

    /// Coefficients of the polynomial representative, constant term first.
    pub fn digits(&self, x: Fe) -> Vec<u32> {
        digits(x.0, self.p, self.m_exp)
    }

    pub fn from_digits(&self, d: &[u32]) -> Result<Fe> {
        if d.len() > self.m_exp as usize {
            // reduce modulo the modulus
            let r = poly_rem(&d.iter().map(|x| x % self.p).collect::<Vec<_>>(), &self.modulus, self.p);
            return Ok(Fe(undigits(&r, self.p)));
        }
        Ok(Fe(undigits(&d.iter().map(|x| x % self.p).collect::<Vec<_>>(), self.p)))
    }

    pub fn is_prime_field_elem(&self, x: Fe) -> bool {
        x.0 < self.p
    }

    #[inline]
    pub fn add(&self, a: Fe, b: Fe) -> Fe {
        if self.p == 2 {
            return Fe(a.0 ^ b.0);
        }
        if let Some(t) = &self.add_table {
            return Fe(t[(a.0 * self.size + b.0) as usize] as u32);
        }
        let (mut x, mut y, mut r, mut place) = (a.0, b.0, 0, 1);
        while x > 0 || y > 0 {
            r += ((x % self.p + y % self.p) % self.p) * place;
            x /= self.p;
            y /= self.p;
            place *= self.p;
        }
        Fe(r)
    }

    #[inline]
    pub fn neg(&self, a: Fe) -> Fe {
        Fe(self.neg_table[a.0 as usize])
    }

    #[inline]
    pub fn sub(&self, a: Fe, b: Fe) -> Fe {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: Fe, b: Fe) -> Fe {
        if a.0 == 0 || b.0 == 0 {
            return Fe::ZERO;
        }
        Fe(self.exp[(self.log[a.0 as usize] + self.log[b.0 as usize]) as usize])
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(&self, a: Fe) -> Option<Fe> {
        if a.0 == 0 {
            return None;
        }
        let order = self.size - 1;
        Some(Fe(self.exp[((order - self.log[a.0 as usize]) % order) as usize]))
    }

    pub fn pow(&self, a: Fe, e: u64) -> Fe {
        if e == 0 {
            return Fe::ONE;
        }
        if a.0 == 0 {
            return Fe::ZERO;
        }
        let order = (self.size - 1) as u64;
        let k = (self.log[a.0 as usize] as u64 * (e % order)) % order;
        Fe(self.exp[k as usize])
    }

    /// The Frobenius `x -> x^q`.
    #[inline]
    pub fn frob(&self, a: Fe) -> Fe {
        self.pow(a, self.q as u64)
    }

    /// `x -> x^(q^k)`.
    pub fn frob_pow(&self, a: Fe, k: u32) -> Fe {
        let k = k % self.frob_order();
        (0..k).fold(a, |x, _| self.frob(x))
    }

    /// Elements of the subfield `F_{q^d}`, in code order.
    pub fn subfield(&self, d: u32) -> Result<Vec<Fe>> {
        if d == 0 || self.frob_order() % d != 0 {
            return Err(Error::Invalid(format!(
                "F_(q^{d}) is not a subfield of {self}"
            )));
        }
        Ok((0..self.size).map(Fe).filter(|&x| self.frob_pow(x, d) == x).collect())
    }

    /// Smallest `d` with `x` in `F_{q^d}`.
    pub fn degree_over_fq(&self, x: Fe) -> u32 {
        let mut y = self.frob(x);
        let mut d = 1;
        while y != x {
            y = self.frob(y);
            d += 1;
        }
        d
    }

    /// Text form: decimal for prime field elements, `(poly in z)` otherwise.
    pub fn format(&self, x: Fe) -> String {
        if self.is_prime_field_elem(x) {
            return x.0.to_string();
        }
        let d = self.digits(x);
        let mut terms = Vec::new();
        for (i, &c) in d.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            let mono = match i {
                0 => String::new(),
                1 => "z".to_string(),
                _ => format!("z^{i}"),
            };
            terms.push(match (c, i) {
                (_, 0) => c.to_string(),
                (1, _) => mono,
                _ => format!("{c}*{mono}"),
            });
        }
        format!("({})", terms.join("+"))
    }

    /// Parses the output of [`Field::format`]; also accepts bare `z`, `z^k`.
    pub fn parse(&self, s: &str) -> Result<Fe> {
        let s = s.trim();
        let inner = s.strip_prefix('(').and_then(|r| r.strip_suffix(')')).unwrap_or(s);
        if let Ok(n) = inner.parse::<i64>() {
            return Ok(self.from_int(n));
        }
        let mut d = vec![0u32; self.m_exp.max(1) as usize];
        for term in inner.split('+') {
            let term = term.trim();
            if term.is_empty() {
                return Err(Error::Parse(format!("bad field element `{s}`")));
            }
            let (c, mono) = match term.split_once('*') {
                Some((c, m)) => (c.trim().parse::<u32>().map_err(|_| Error::Parse(format!("bad coefficient in `{s}`")))?, m.trim()),
                None if term.starts_with('z') => (1, term),
                None => (term.parse::<u32>().map_err(|_| Error::Parse(format!("bad term `{term}`")))?, ""),
            };
            let e: usize = if mono.is_empty() {
                0
            } else if mono == "z" {
                1
            } else if let Some(k) = mono.strip_prefix("z^") {
                k.parse().map_err(|_| Error::Parse(format!("bad exponent in `{s}`")))?
            } else {
                return Err(Error::Parse(format!("bad monomial `{mono}`")));
            };
            if e >= d.len() {
                d.resize(e + 1, 0);
            }
            d[e] = (d[e] + c) % self.p;
        }
        self.from_digits(&d)
    }
}
