//! The positive braid monoid `B^+` of a Coxeter system.
//!
//! Elements are kept in left-greedy normal form: a sequence of simple
//! elements (elements of `W`) in which every adjacent pair is
//! left-weighted.
//!
//! ```
//! use loopdl::braid::Braid;
//! use loopdl::weyl::CoxeterSys;
//!
//! let w = CoxeterSys::from_label("A2").unwrap();
//! let x = Braid::parse(&w, "s1 s2 s1 s2 s1 s2").unwrap();
//! assert_eq!(x.format(&w), "[s1 s2 s1 | s1 s2 s1]");
//! ```

use std::collections::BTreeSet;

use crate::weyl::{format_word, parse_word, CoxeterSys, WeylElt};
use crate::{Error, Result};

/// Element of `B^+` in left-greedy normal form.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Braid {
    factors: Vec<WeylElt>,
}

impl Braid {
    pub fn identity() -> Self {
        Braid::default()
    }

    /// Image of `w` under `W -> B^+`.
    pub fn from_elt(w: WeylElt) -> Self {
        if w == WeylElt::IDENTITY {
            Braid::identity()
        } else {
            Braid { factors: vec![w] }
        }
    }

    /// Product of generators (0-based letters).
    pub fn from_word(sys: &CoxeterSys, word: &[usize]) -> Result<Self> {
        let mut f = Vec::with_capacity(word.len());
        for &s in word {
            if s >= sys.rank() {
                return Err(Error::Invalid(format!("s{} is not a generator of {}", s + 1, sys.label())));
            }
            f.push(sys.simple(s));
        }
        Ok(normalize(sys, f))
    }

    /// Whitespace-separated generators such as `s1 s2 s1`.
    pub fn parse(sys: &CoxeterSys, s: &str) -> Result<Self> {
        Braid::from_word(sys, &parse_word(s)?)
    }

    pub fn factors(&self) -> &[WeylElt] {
        &self.factors
    }

    /// Number of normal form factors.
    pub fn canonical_length(&self) -> usize {
        self.factors.len()
    }

    /// Total number of generators.
    pub fn length(&self, sys: &CoxeterSys) -> usize {
        self.factors.iter().map(|&a| sys.length(a)).sum()
    }

    pub fn is_identity(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn mul(&self, sys: &CoxeterSys, other: &Braid) -> Braid {
        let mut f = self.factors.clone();
        f.extend_from_slice(&other.factors);
        normalize(sys, f)
    }

    pub fn pow(&self, sys: &CoxeterSys, k: usize) -> Braid {
        (0..k).fold(Braid::identity(), |acc, _| acc.mul(sys, self))
    }

    /// `σ` applied factorwise; it maps normal forms to normal forms.
    pub fn sigma(&self, sys: &CoxeterSys) -> Braid {
        Braid { factors: self.factors.iter().map(|&a| sys.apply_sigma(a)).collect() }
    }

    /// Concatenated ShortLex words of the factors.
    pub fn letters(&self, sys: &CoxeterSys) -> Vec<usize> {
        self.factors.iter().flat_map(|&a| sys.word(a).iter().copied()).collect()
    }

    /// `[s1 s2 | s1]`.
    pub fn format(&self, sys: &CoxeterSys) -> String {
        let parts: Vec<String> = self.factors.iter().map(|&a| format_word(sys.word(a))).collect();
        format!("[{}]", parts.join(" | "))
    }
}

/// Left-greedy normal form of a product of simple elements, by local
/// sliding until every adjacent pair is left-weighted.
pub fn normalize(sys: &CoxeterSys, mut f: Vec<WeylElt>) -> Braid {
    f.retain(|&a| a != WeylElt::IDENTITY);
    loop {
        let mut changed = false;
        for i in 0..f.len().saturating_sub(1) {
            let (mut a, mut b) = (f[i], f[i + 1]);
            while let Some(s) = (0..sys.rank()).find(|&s| sys.is_left_descent(b, s) && !sys.is_right_descent(a, s)) {
                a = sys.rmul_simple(a, s);
                b = sys.lmul_simple(s, b);
                changed = true;
            }
            f[i] = a;
            f[i + 1] = b;
        }
        f.retain(|&a| a != WeylElt::IDENTITY);
        if !changed {
            return Braid { factors: f };
        }
    }
}

/// `l(x) + l(x^{-1} y) = l(y)`.
pub fn is_prefix(sys: &CoxeterSys, x: WeylElt, y: WeylElt) -> bool {
    sys.length(x) + sys.length(sys.mul(sys.inverse(x), y)) == sys.length(y)
}

/// The quotient `a` with `x = d a`, if `d` left-divides `x`.
pub fn left_divides(sys: &CoxeterSys, d: &Braid, x: &Braid) -> Option<Braid> {
    let mut rest = x.clone();
    for &f in &d.factors {
        let head = rest.factors.first().copied().unwrap_or(WeylElt::IDENTITY);
        if !is_prefix(sys, f, head) {
            return None;
        }
        let mut nf = rest.factors.clone();
        if nf.is_empty() {
            continue;
        }
        nf[0] = sys.mul(sys.inverse(f), head);
        rest = normalize(sys, nf);
    }
    Some(rest)
}

/// `w σ(w) ⋯ σ^{d-1}(w)` in `B^+`.
pub fn twisted_power(sys: &CoxeterSys, w: WeylElt, d: usize) -> Braid {
    let mut acc = Braid::identity();
    let mut cur = w;
    for _ in 0..d {
        acc = acc.mul(sys, &Braid::from_elt(cur));
        cur = sys.apply_sigma(cur);
    }
    acc
}

/// Smallest `k > 0` with `w σ(w) ⋯ σ^{k-1}(w) = 1` in `W` and `σ^k = 1`.
pub fn twisted_order(sys: &CoxeterSys, w: WeylElt) -> usize {
    let so = sys.sigma_order();
    let mut prod = WeylElt::IDENTITY;
    let mut cur = w;
    for k in 1.. {
        prod = sys.mul(prod, cur);
        cur = sys.apply_sigma(cur);
        if prod == WeylElt::IDENTITY && k % so == 0 {
            return k;
        }
    }
    unreachable!()
}

/// Default search cap `2 · ord(σ) · |W|`.
pub fn default_dmax(sys: &CoxeterSys) -> usize {
    2 * sys.sigma_order() * sys.order()
}

/// Smallest `d <= d_max` such that `w_I` left-divides `w σ(w) ⋯ σ^{d-1}(w)`.
pub fn thm91_hypothesis(sys: &CoxeterSys, w: WeylElt, set: &BTreeSet<usize>, d_max: usize) -> Result<Option<usize>> {
    if !sys.supp(w).is_subset(set) {
        return Err(Error::NotInParabolic(sys.format(w), format_set(set)));
    }
    if !sys.is_sigma_stable(set) {
        return Err(Error::Invalid(format!("{} is not sigma-stable", format_set(set))));
    }
    let wi = Braid::from_elt(sys.longest_in(set));
    let mut acc = Braid::identity();
    let mut cur = w;
    for d in 1..=d_max {
        acc = acc.mul(sys, &Braid::from_elt(cur));
        cur = sys.apply_sigma(cur);
        if left_divides(sys, &wi, &acc).is_some() {
            return Ok(Some(d));
        }
    }
    Ok(None)
}

/// First chain `I_1 ⊇ I_2 ⊇ ⋯ ⊇ I_r` (by decreasing `|I_1|`, then
/// lexicographic) with `w σ(w) ⋯ σ^{d-1}(w) = w_{I_1}^2 ⋯ w_{I_r}^2`.
pub fn good_certificate(sys: &CoxeterSys, w: WeylElt, d: usize) -> Option<Vec<BTreeSet<usize>>> {
    let target = twisted_power(sys, w, d);
    let total = target.length(sys);
    let mut chain = Vec::new();
    search_chain(sys, &target, &sys.all_simple(), &Braid::identity(), 0, total, &mut chain).then_some(chain)
}

fn ordered_subsets(set: &BTreeSet<usize>) -> Vec<BTreeSet<usize>> {
    let items: Vec<usize> = set.iter().copied().collect();
    let mut subs: Vec<BTreeSet<usize>> = (1..1u32 << items.len())
        .map(|mask| items.iter().enumerate().filter(|(i, _)| mask & (1 << i) != 0).map(|(_, &s)| s).collect())
        .collect();
    subs.sort_by(|a, b| b.len().cmp(&a.len()).then_with(|| a.iter().cmp(b.iter())));
    subs
}

fn search_chain(
    sys: &CoxeterSys,
    target: &Braid,
    parent: &BTreeSet<usize>,
    acc: &Braid,
    used: usize,
    total: usize,
    chain: &mut Vec<BTreeSet<usize>>,
) -> bool {
    if used == total {
        return acc == target;
    }
    for sub in ordered_subsets(parent) {
        let wi = sys.longest_in(&sub);
        let step = 2 * sys.length(wi);
        if used + step > total {
            continue;
        }
        let sq = Braid::from_elt(wi).pow(sys, 2);
        let next = acc.mul(sys, &sq);
        if left_divides(sys, &next, target).is_none() {
            continue;
        }
        chain.push(sub.clone());
        if search_chain(sys, target, &sub, &next, used + step, total, chain) {
            return true;
        }
        chain.pop();
    }
    false
}

/// `{s1, s3}`.
pub fn format_set(set: &BTreeSet<usize>) -> String {
    let parts: Vec<String> = set.iter().map(|s| format!("s{}", s + 1)).collect();
    format!("{{{}}}", parts.join(", "))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn a2() -> CoxeterSys {
        CoxeterSys::from_label("A2").unwrap()
    }

    #[test]
    fn mul_examples() {
        let w = a2();
        let s1 = Braid::parse(&w, "s1").unwrap();
        let sq = s1.mul(&w, &s1);
        assert_eq!(sq.format(&w), "[s1 | s1]");
        assert_eq!(sq.length(&w), 2);
        let x = Braid::parse(&w, "s1 s2 s1").unwrap();
        assert_eq!(x.factors(), &[w.longest()]);
        assert_eq!(Braid::identity().mul(&w, &x), x);
        assert_eq!(Braid::parse(&w, "s2 s1 s2").unwrap(), x);
    }

    #[test]
    fn divisibility_examples() {
        let w = a2();
        let s1 = Braid::parse(&w, "s1").unwrap();
        let s2 = Braid::parse(&w, "s2").unwrap();
        let s12 = Braid::parse(&w, "s1 s2").unwrap();
        assert_eq!(left_divides(&w, &s1, &s12), Some(s2.clone()));
        assert_eq!(left_divides(&w, &s2, &s12), None);
        let delta = Braid::from_elt(w.longest());
        let a = Braid::parse(&w, "s2 s2 s1").unwrap();
        assert_eq!(left_divides(&w, &delta, &delta.mul(&w, &a)), Some(a));
    }

    #[test]
    fn coxeter_cube_is_delta_squared() {
        let w = a2();
        let c = Braid::parse(&w, "s1 s2").unwrap();
        let delta = Braid::from_elt(w.longest());
        assert_eq!(c.pow(&w, 3), delta.pow(&w, 2));
    }

    #[test]
    fn thm91_examples() {
        let w = a2();
        let all = w.all_simple();
        assert_eq!(thm91_hypothesis(&w, w.longest(), &all, 6).unwrap(), Some(1));
        // (s1 s2)^2 = (s1 s2 s1) s2 already has the half twist as a prefix
        assert_eq!(thm91_hypothesis(&w, w.parse("s1 s2").unwrap(), &all, 6).unwrap(), Some(2));
        assert_eq!(thm91_hypothesis(&w, w.simple(0), &all, 40).unwrap(), None);
        assert!(matches!(thm91_hypothesis(&w, w.simple(1), &BTreeSet::from([0]), 3), Err(Error::NotInParabolic(..))));
    }

    #[test]
    fn good_examples() {
        let w = a2();
        let all = w.all_simple();
        assert_eq!(good_certificate(&w, w.longest(), 2), Some(vec![all.clone()]));
        let c = w.parse("s1 s2").unwrap();
        assert_eq!(twisted_order(&w, c), 3);
        assert_eq!(good_certificate(&w, c, 3), Some(vec![all]));
        let s1 = w.simple(0);
        assert_eq!(good_certificate(&w, s1, twisted_order(&w, s1)), Some(vec![BTreeSet::from([0])]));
        assert_eq!(good_certificate(&w, WeylElt::IDENTITY, 1), Some(vec![]));
    }
}
