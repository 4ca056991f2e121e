use std::sync::Arc;

use loopdl::coeffring::{Field, LaurentElem};
use loopdl::isocrystal::{meets_levi, newton_slopes, standard_rep, LeviShape, SlopeClass};
use loopdl::latmat::GLMat;
use num_rational::Rational64;
use proptest::prelude::*;

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

// Atoms (a, b): a slope a/b in lowest terms filling b coordinates.
fn atoms(max_den: i64, max_abs: i64) -> Vec<(i64, i64)> {
    let mut out = Vec::new();
    for b in 1..=max_den {
        for a in -max_abs * b..=max_abs * b {
            if gcd(a, b) == 1 {
                out.push((a, b));
            }
        }
    }
    out
}

// Every slope class of rank n built from atoms, as multisets.
fn all_classes(n: i64) -> Vec<SlopeClass> {
    fn rec(at: &[(i64, i64)], start: usize, left: i64, cur: &mut Vec<Rational64>, out: &mut Vec<SlopeClass>) {
        if left == 0 {
            out.push(SlopeClass::new(cur.clone()).unwrap());
            return;
        }
        for (i, &(a, b)) in at.iter().enumerate().skip(start) {
            if b <= left {
                let before = cur.len();
                cur.extend(std::iter::repeat(Rational64::new(a, b)).take(b as usize));
                rec(at, i, left - b, cur, out);
                cur.truncate(before);
            }
        }
    }
    let at = atoms(4, 4);
    let mut out = Vec::new();
    rec(&at, 0, n, &mut Vec::new(), &mut out);
    out
}

#[test]
fn standard_rep_roundtrips_exhaustively() {
    let f = Field::prime(2).unwrap();
    let mut checked = 0;
    for n in 1..=4 {
        for c in all_classes(n) {
            if c.kappa().abs() > 4 {
                continue;
            }
            let b = standard_rep(&f, &c);
            assert_eq!(b.det_val().unwrap().finite(), Some(c.kappa()));
            assert_eq!(newton_slopes(&b, 1).unwrap(), c, "{b}");
            checked += 1;
        }
    }
    assert!(checked > 500, "{checked}");
}

#[test]
fn whole_group_is_always_met_and_coarsening_is_monotone() {
    for n in 1..=4usize {
        let shapes = compositions(n);
        for c in all_classes(n as i64).into_iter().filter(|c| c.kappa().abs() <= 2) {
            assert!(meets_levi(&c, &LeviShape::new(vec![n]).unwrap()));
            for s in &shapes {
                if !meets_levi(&c, s) {
                    continue;
                }
                // merging two adjacent blocks keeps the answer true
                for i in 0..s.blocks.len().saturating_sub(1) {
                    let mut b = s.blocks.clone();
                    let x = b.remove(i + 1);
                    b[i] += x;
                    assert!(meets_levi(&c, &LeviShape::new(b).unwrap()));
                }
            }
        }
    }
}

fn compositions(n: usize) -> Vec<LeviShape> {
    (0..1u32 << (n - 1))
        .map(|mask| {
            let simple: Vec<usize> = (1..n).filter(|i| mask & (1 << (i - 1)) != 0).collect();
            LeviShape::from_simple_set(n, &simple)
        })
        .collect()
}

fn class_strategy(n: i64) -> impl Strategy<Value = SlopeClass> {
    let classes: Vec<SlopeClass> = all_classes(n).into_iter().filter(|c| c.kappa().abs() <= 3 && c.slopes().iter().all(|s| *s <= Rational64::from_integer(2) && *s >= Rational64::from_integer(-2))).collect();
    prop::sample::select(classes)
}

// Product of elementary matrices with entries in F_4[t, t^-1]: exact inverse.
fn elementary_product(f: Arc<Field>, n: usize) -> impl Strategy<Value = GLMat> {
    let size = f.size();
    prop::collection::vec((0..n, 0..n, 0..size, -1i64..2), 0..6).prop_map(move |ops| {
        let mut g = GLMat::identity(&f, n);
        for (i, j, c, e) in ops {
            if i == j {
                continue;
            }
            let x = LaurentElem::monomial(&f, f.elem(c).unwrap(), e);
            let el = GLMat::identity(&f, n).with_entry(i, j, x);
            g = g.mul(&el).unwrap();
        }
        g
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn slopes_are_sigma_conjugation_invariant(
        (c, g) in (2i64..4).prop_flat_map(|n| (class_strategy(n), elementary_product(Field::new(2, 2, 1).unwrap(), n as usize)))
    ) {
        let f = g.field().clone();
        let b = standard_rep(&f, &c);
        let gi = g.inverse().unwrap();
        prop_assert!(gi.is_exact());
        let conj = gi.mul(&b).unwrap().mul(&g.frobenius()).unwrap();
        prop_assert_eq!(newton_slopes(&conj, 2).unwrap(), c.clone());
        prop_assert_eq!(newton_slopes(&conj, 2).unwrap().kappa(), conj.det_val().unwrap().finite().unwrap());
    }

    #[test]
    fn kappa_is_additive_under_block_join(a in class_strategy(2), b in class_strategy(2)) {
        let f = Field::prime(3).unwrap();
        let (ma, mb) = (standard_rep(&f, &a), standard_rep(&f, &b));
        let n = 4;
        let mut m = GLMat::zero(&f, n);
        for i in 0..2 {
            for j in 0..2 {
                m = m.with_entry(i, j, ma.get(i, j).clone()).with_entry(i + 2, j + 2, mb.get(i, j).clone());
            }
        }
        let joined = newton_slopes(&m, 1).unwrap();
        prop_assert_eq!(joined.kappa(), a.kappa() + b.kappa());
        prop_assert_eq!(joined, a.join(&b));
    }
}
