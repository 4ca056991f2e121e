use std::collections::BTreeSet;

use loopdl::braid::{good_certificate, left_divides, twisted_order, Braid};
use loopdl::coeffring::{Field, LaurentElem};
use loopdl::dlspace::coxeter_xo_member;
use loopdl::dlspace::table1::{run_gl3, run_table1};
use loopdl::dlspace::CountOptions;
use loopdl::isocrystal::{meets_levi, newton_slopes, standard_rep, LeviShape, SlopeClass};
use loopdl::weyl::CoxeterSys;
use num_rational::Rational64;
use serde::Serialize;
use serde_json::{json, Value};

#[derive(Serialize)]
struct Check {
    name: String,
    pass: bool,
}

fn check(name: &str, pass: bool) -> Check {
    Check { name: name.into(), pass }
}

fn weyl() -> Vec<Check> {
    let mut out = Vec::new();
    let mut systems: Vec<CoxeterSys> = ["A1", "A2", "B2", "G2"].iter().map(|l| CoxeterSys::from_label(l).unwrap()).collect();
    systems.push(CoxeterSys::type_a_flip(2).unwrap());
    for sys in &systems {
        let classes = sys.sigma_classes();
        let total: usize = classes.iter().map(|c| c.elements.len()).sum();
        let closed = classes.iter().all(|c| {
            let set: BTreeSet<_> = c.elements.iter().copied().collect();
            c.elements.iter().all(|&w| sys.elements().all(|x| set.contains(&sys.sigma_conj(x, w))))
        });
        out.push(check(&format!("{sys}: classes partition W and are closed"), total == sys.order() && closed));
        let shifts = classes.iter().filter(|c| c.cuspidal).all(|c| {
            c.cmin.iter().all(|&a| c.cmin.iter().all(|&b| sys.cyclic_shift_path(a, b).map(|p| p.is_some()).unwrap_or(false)))
        });
        out.push(check(&format!("{sys}: cuspidal C_min connected by cyclic shifts"), shifts));
    }
    out
}

fn braid() -> Vec<Check> {
    let a2 = CoxeterSys::from_label("A2").unwrap();
    let x = Braid::parse(&a2, "s1 s2").unwrap();
    let delta = Braid::from_elt(a2.longest());
    let mut out = vec![check("A2: (s1 s2)^3 = w0^2", x.pow(&a2, 3) == delta.pow(&a2, 2))];
    out.push(check("A2: w0 divides (s1 s2)^2", left_divides(&a2, &delta, &x.pow(&a2, 2)).is_some()));
    for l in ["A1", "A2"] {
        let sys = CoxeterSys::from_label(l).unwrap();
        let ok = sys
            .sigma_classes()
            .iter()
            .all(|c| c.cmin.iter().any(|&w| good_certificate(&sys, w, twisted_order(&sys, w)).is_some()));
        out.push(check(&format!("{l}: every C_min has a good element"), ok));
    }
    out
}

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn classes(n: usize, max_den: i64, max_kappa: i64) -> Vec<SlopeClass> {
    fn rec(left: usize, max_den: i64, acc: &mut Vec<Rational64>, out: &mut Vec<SlopeClass>) {
        if left == 0 {
            out.push(SlopeClass::new(acc.clone()).unwrap());
            return;
        }
        for d in 1..=max_den.min(left as i64) {
            for a in -2 * d..=2 * d {
                if gcd(a.abs(), d) != 1 {
                    continue;
                }
                let s = Rational64::new(a, d);
                if acc.last().is_some_and(|&l| s > l) {
                    continue;
                }
                let before = acc.len();
                acc.extend(std::iter::repeat(s).take(d as usize));
                rec(left - d as usize, max_den, acc, out);
                acc.truncate(before);
            }
        }
    }
    let mut out = Vec::new();
    rec(n, max_den, &mut Vec::new(), &mut out);
    out.sort_by(|a, b| a.to_string().cmp(&b.to_string()));
    out.dedup();
    out.retain(|c| c.kappa().abs() <= max_kappa);
    out
}

fn bg() -> Vec<Check> {
    let f = Field::prime(2).unwrap();
    let mut out = Vec::new();
    for n in 1..=3 {
        let cs = classes(n, 3, 2);
        let ok = cs.iter().all(|c| newton_slopes(&standard_rep(&f, c), 1).as_ref() == Ok(c));
        out.push(check(&format!("n={n}: slopes of the standard representative ({} classes)", cs.len()), ok));
    }
    let half = SlopeClass::parse("1/2^2").unwrap();
    out.push(check("1/2^2 misses the torus", !meets_levi(&half, &LeviShape::new(vec![1, 1]).unwrap())));
    out.push(check("1/2^2 meets GL_2", meets_levi(&half, &LeviShape::new(vec![2]).unwrap())));
    out
}

fn dl() -> Vec<Check> {
    let mut out = Vec::new();
    for r in 1..=2 {
        let rows = run_table1(2, 1, r, &CountOptions::default());
        out.push(check(&format!("GL_2 table, q=2 m=1 r={r}"), rows.map(|rs| rs.iter().all(|x| x.pass)).unwrap_or(false)));
    }
    let gl3 = run_gl3(2, 1, -1, 1).map(|r| r.violations.is_empty()).unwrap_or(false);
    out.push(check("GL_3 Lang image bound, F_2, exponents in [-1, 1]", gl3));
    let f4 = Field::over(2, 2).unwrap();
    let consts: Vec<LaurentElem> = (0..4).map(|k| LaurentElem::constant(&f4, f4.elem(k).unwrap())).collect();
    let mut count = 0;
    for a in &consts {
        for b in &consts {
            if coxeter_xo_member(&[a.clone(), b.clone()]).unwrap_or(false) {
                count += 1;
            }
        }
    }
    out.push(check("Coxeter X_O over F_4 has 6 points", count == 6));
    out
}

pub fn run(group: &str) -> Value {
    let checks = match group {
        "weyl" => weyl(),
        "braid" => braid(),
        "bg" => bg(),
        _ => dl(),
    };
    let pass = checks.iter().all(|c| c.pass);
    json!({ "selftest": group, "checks": checks, "pass": pass })
}
