//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! nonzero if any criterion fails.
//!
//! `LOOPDL_BLESS=1 cargo test --test acceptance` rewrites the golden file
//! from the brute-force oracle.

use std::collections::{BTreeMap, BTreeSet};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::PathBuf;
use std::sync::Arc;
use std::time::Instant;

use loopdl::braid::{good_certificate, thm91_hypothesis, twisted_order, Braid};
use loopdl::coeffring::{Fe, Field, LaurentElem};
use loopdl::dlspace::{
    alpha_invariant, count_points, coxeter_g, coxeter_wdot, coxeter_xo_member, emptiness_predict, format_alpha, gl2_closed_form, gl2_dot_cover_check,
    gl2_dot_point, lang_image_test, perm_support, window_points, xwb_dot_member, xwb_member, CountOptions, FlagPoint, Gl2Kind, Level, Window,
};
use loopdl::isocrystal::{newton_slopes, standard_rep, SlopeClass};
use loopdl::latmat::{GLMat, Perm};
use loopdl::weyl::CoxeterSys;
use loopdl::TriState;
use num_rational::Rational64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

struct Verdict {
    pass: bool,
    detail: String,
}

impl Verdict {
    fn new(fails: Vec<String>, summary: String) -> Self {
        if fails.is_empty() {
            Verdict { pass: true, detail: summary }
        } else {
            let shown: Vec<&str> = fails.iter().take(4).map(String::as_str).collect();
            Verdict { pass: false, detail: format!("{summary}; {} failure(s): {}", fails.len(), shown.join(" | ")) }
        }
    }
}

fn one_core() -> CountOptions {
    CountOptions { workers: 1, ..CountOptions::default() }
}

fn mono(f: &Arc<Field>, e: i64) -> LaurentElem {
    LaurentElem::t_pow(f, e)
}

// All Laurent polynomials with exponents in [lo, lo + len) over F_{q^m}.
fn polys(f: &Arc<Field>, m: u32, lo: i64, len: u32) -> Vec<LaurentElem> {
    let sub = f.subfield(m).unwrap();
    let mut out: Vec<Vec<Fe>> = vec![vec![]];
    for _ in 0..len {
        out = out.into_iter().flat_map(|v| sub.iter().map(move |&c| [v.clone(), vec![c]].concat())).collect();
    }
    out.into_iter().map(|c| LaurentElem::exact(f, lo, c)).collect()
}

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

// Slope classes of size n with denominators <= max_den, |slope| <= max_slope
// and |kappa| <= max_kappa.
fn classes(n: usize, max_den: i64, max_slope: i64, max_kappa: i64) -> Vec<SlopeClass> {
    fn go(left: usize, max_den: i64, max_slope: i64, last: Option<Rational64>, acc: &mut Vec<Rational64>, out: &mut Vec<Vec<Rational64>>) {
        if left == 0 {
            out.push(acc.clone());
            return;
        }
        for d in 1..=max_den.min(left as i64) {
            for a in -max_slope * d..=max_slope * d {
                let s = Rational64::new(a, d);
                if gcd(a, d) != 1 || last.is_some_and(|l| s > l) {
                    continue;
                }
                let k = acc.len();
                acc.extend(std::iter::repeat(s).take(d as usize));
                go(left - d as usize, max_den, max_slope, Some(s), acc, out);
                acc.truncate(k);
            }
        }
    }
    let mut raw = Vec::new();
    go(n, max_den, max_slope, None, &mut Vec::new(), &mut raw);
    let set: BTreeSet<Vec<Rational64>> = raw.into_iter().collect();
    set.into_iter()
        .map(|s| SlopeClass::new(s).unwrap())
        .filter(|c| c.kappa().abs() <= max_kappa)
        .collect()
}

// ---------------------------------------------------------------- GL_2 grid

const Q: u32 = 2;
const R: u32 = 2;

#[derive(Debug, Clone, Copy, PartialEq)]
enum Shape {
    Super(i64),
    Diag(i64, i64),
}

impl Shape {
    fn kind(self) -> Gl2Kind {
        match self {
            Shape::Super(c) => Gl2Kind::Superbasic { c },
            Shape::Diag(c, d) => Gl2Kind::Diag { c, d },
        }
    }

    fn label(self) -> String {
        match self {
            Shape::Super(c) => format!("superbasic:{c}"),
            Shape::Diag(c, d) => format!("diag:{c},{d}"),
        }
    }
}

const SHAPES: [Shape; 6] = [Shape::Super(0), Shape::Super(1), Shape::Diag(1, 0), Shape::Diag(2, -1), Shape::Diag(0, 0), Shape::Diag(1, 1)];

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
struct GoldenRow {
    m: u32,
    r: u32,
    b: String,
    w: String,
    yes: u64,
    /// members of the form [1:y], then [x:1] with ord x >= 1
    split: [u64; 2],
    alpha: BTreeMap<String, u64>,
}

// Membership by det(v, b σ(v)) on P^1 representatives.
fn gl2_oracle(b: &GLMat, long: bool, m: u32, r: u32) -> (u64, [u64; 2], BTreeMap<String, u64>) {
    let f = b.field();
    let one = LaurentElem::one(f);
    let mut pts: Vec<(usize, LaurentElem, LaurentElem)> = polys(f, m, 0, r).into_iter().map(|y| (0, one.clone(), y)).collect();
    pts.extend(polys(f, m, 1, r - 1).into_iter().map(|x| (1, x, one.clone())));
    let kappa = b.det_val().unwrap().value();
    let (mut yes, mut split, mut alpha) = (0, [0, 0], BTreeMap::new());
    for (side, x, y) in pts {
        let (fx, fy) = (x.frobenius(), y.frobenius());
        let u = b.get(0, 0).mul(&fx).unwrap().add(&b.get(0, 1).mul(&fy).unwrap()).unwrap();
        let v = b.get(1, 0).mul(&fx).unwrap().add(&b.get(1, 1).mul(&fy).unwrap()).unwrap();
        let det = x.mul(&v).unwrap().sub(&y.mul(&u).unwrap()).unwrap();
        if det.is_exact_zero() == long {
            continue;
        }
        yes += 1;
        split[side] += 1;
        // b σ(v) = λ v for w = 1
        if !long {
            let lam = if !x.is_exact_zero() { u.div(&x).unwrap() } else { v.div(&y).unwrap() };
            let l = lam.ord().value();
            *alpha.entry(format_alpha(&[l, kappa - l])).or_insert(0) += 1;
        }
    }
    (yes, split, alpha)
}

fn grid_field(m: u32) -> Arc<Field> {
    Field::over(Q, m).unwrap()
}

fn oracle_rows() -> Vec<GoldenRow> {
    let mut rows = Vec::new();
    for m in [1, 2] {
        let f = grid_field(m);
        for shape in SHAPES {
            for long in [false, true] {
                let (yes, split, alpha) = gl2_oracle(&shape.kind().matrix(&f), long, m, R);
                rows.push(GoldenRow { m, r: R, b: shape.label(), w: if long { "s1" } else { "e" }.into(), yes, split, alpha });
            }
        }
    }
    let f = grid_field(2);
    let (yes, split, alpha) = gl2_oracle(&GLMat::identity(&f, 2), true, 2, 1);
    rows.push(GoldenRow { m: 2, r: 1, b: "diag:0,0".into(), w: "s1".into(), yes, split, alpha });
    rows
}

fn golden_path() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden/table1.json")
}

fn load_golden() -> Vec<GoldenRow> {
    let text = std::fs::read_to_string(golden_path()).expect("golden file missing; run with LOOPDL_BLESS=1");
    serde_json::from_str(&text).unwrap()
}

// Counts predicted by the table, independent of any enumeration.
fn table_formula(shape: Shape, long: bool, m: u32, r: u32) -> u64 {
    let (q, qm) = (Q as u64, (Q as u64).pow(m));
    let full = qm.pow(r - 1) * (qm + 1);
    let rational = q.pow(r - 1) * (q + 1);
    match (shape, long) {
        (Shape::Super(_), false) => 0,
        (Shape::Diag(c, d), false) if c != d => 2,
        (Shape::Diag(..), false) => rational,
        (Shape::Super(_), true) => full,
        (Shape::Diag(c, d), true) if c != d => full - 2,
        (Shape::Diag(..), true) => full - rational,
    }
}

fn shape_of(label: &str) -> Shape {
    *SHAPES.iter().find(|s| s.label() == label).unwrap()
}

fn criterion1() -> Verdict {
    let oracle = oracle_rows();
    let golden = load_golden();
    let mut fails = Vec::new();
    if oracle != golden {
        fails.push("oracle disagrees with golden file".into());
    }
    for row in &golden {
        let shape = shape_of(&row.b);
        let long = row.w == "s1";
        let f = grid_field(row.m);
        let b = shape.kind().matrix(&f);
        let w = if long { Perm::longest(2) } else { Perm::identity(2) };
        let tag = format!("m={} r={} {} w={}", row.m, row.r, row.b, row.w);
        let rep = count_points(&w, &b, &Window::new(0, row.r, row.m).unwrap(), &one_core()).unwrap();
        let expected = table_formula(shape, long, row.m, row.r);
        if row.yes != expected || rep.yes != expected || rep.unknown != 0 {
            fails.push(format!("{tag}: table {expected}, oracle {}, count {}", row.yes, rep.yes));
        }
        match (shape, long) {
            (Shape::Super(_), false) => {
                let cls = newton_slopes(&b, 1).unwrap();
                if !emptiness_predict(&perm_support(&w), &cls) {
                    fails.push(format!("{tag}: not predicted empty"));
                }
            }
            (Shape::Diag(c, d), false) if c != d => {
                let want = BTreeMap::from([(format_alpha(&[c, d]), 1), (format_alpha(&[d, c]), 1)]);
                if rep.by_alpha != want || row.alpha != want {
                    fails.push(format!("{tag}: alpha {:?}", rep.by_alpha));
                }
            }
            (Shape::Super(_), true) => {
                let qm = (Q as u64).pow(row.m);
                let want = [qm.pow(row.r), qm.pow(row.r - 1)];
                let got = [rep.by_component.get("[1 2]").copied().unwrap_or(0), rep.by_component.get("[2 1]").copied().unwrap_or(0)];
                if row.split != want || got != want {
                    fails.push(format!("{tag}: components {:?}", rep.by_component));
                }
            }
            _ => {}
        }
    }
    Verdict::new(fails, format!("{} GL_2 rows, q=2, m in {{1,2}}", golden.len()))
}

// ---------------------------------------------------------------- emptiness

fn criterion2() -> Verdict {
    let f = Field::prime(2).unwrap();
    let windows = [(0, 1), (0, 2), (1, 1), (1, 2)];
    let (mut checked, mut predicted, mut fails) = (0, 0, Vec::new());
    for n in 1..=3 {
        let perms: Vec<Perm> = all_perms(n);
        for c in classes(n, 3, 2, 2) {
            let b = standard_rep(&f, &c);
            for w in &perms {
                checked += 1;
                if !emptiness_predict(&perm_support(w), &c) {
                    continue;
                }
                predicted += 1;
                for (neg, r) in windows {
                    let rep = count_points(w, &b, &Window::new(neg, r, 1).unwrap(), &one_core()).unwrap();
                    if rep.yes != 0 || rep.unknown != 0 {
                        fails.push(format!("{c} w={w} N={neg} r={r}: yes {} unknown {}", rep.yes, rep.unknown));
                    }
                }
            }
        }
    }
    Verdict::new(fails, format!("{checked} (class, w) pairs, {predicted} predicted empty, 4 windows each"))
}

fn all_perms(n: usize) -> Vec<Perm> {
    fn go(left: &mut Vec<usize>, acc: &mut Vec<usize>, out: &mut Vec<Perm>) {
        if left.is_empty() {
            out.push(Perm::from_images(acc.clone()).unwrap());
            return;
        }
        for i in 0..left.len() {
            let x = left.remove(i);
            acc.push(x);
            go(left, acc, out);
            acc.pop();
            left.insert(i, x);
        }
    }
    let mut out = Vec::new();
    go(&mut (0..n).collect(), &mut Vec::new(), &mut out);
    out
}

// ---------------------------------------------------------------- cyclic shifts

fn gl3_bs(f: &Arc<Field>) -> Vec<(String, GLMat)> {
    let mut out = vec![
        ("identity".to_string(), GLMat::identity(f, 3)),
        ("t".to_string(), GLMat::diag_t(f, &[1, 1, 1])),
        ("diag(t,1,1)".to_string(), GLMat::diag_t(f, &[1, 0, 0])),
        ("diag(t^2,t,1)".to_string(), GLMat::diag_t(f, &[2, 1, 0])),
    ];
    for s in ["1/3^3", "1/2^2, 0"] {
        out.push((s.to_string(), standard_rep(f, &SlopeClass::parse(s).unwrap())));
    }
    out
}

// The flag between g and h = b σ(g): relative positions x then y.
fn shift_image(g: &GLMat, h: &GLMat, x: &Perm, y: &Perm) -> Option<GLMat> {
    let f = g.field();
    let n = g.n();
    let unit = |k: usize| (0..n).map(|i| if i == k { LaurentElem::one(f) } else { LaurentElem::zero(f) }).collect::<Vec<_>>();
    let lines = [g.column(0), h.column(0)];
    let seconds = [g.column(0), g.column(1), h.column(0), h.column(1)];
    for l in &lines {
        for u in &seconds {
            for k in 0..n {
                let t = GLMat::from_columns(f, &[l.clone(), u.clone(), unit(k)]).ok()?;
                if !t.is_invertible().ok()? {
                    continue;
                }
                if &g.relative_position(&t).ok()? == x && &t.relative_position(h).ok()? == y {
                    return Some(t);
                }
            }
        }
    }
    None
}

fn criterion3() -> Verdict {
    let sys = CoxeterSys::from_label("A2").unwrap();
    let mut pairs = Vec::new();
    for w in sys.elements() {
        for x in sys.prefixes(w) {
            let y = sys.mul(sys.inverse(x), w);
            let v = sys.mul(y, sys.apply_sigma(x));
            if v != w && sys.length(v) == sys.length(w) {
                pairs.push((w, x, y, v));
            }
        }
    }
    let f = Field::prime(2).unwrap();
    let bs = gl3_bs(&f);
    let windows = [(0, 1), (0, 2), (1, 1)];
    let (mut fails, mut mapped) = (Vec::new(), 0);
    let perm = |e| sys.to_perm(e).unwrap();
    for &(w, x, y, v) in &pairs {
        let (pw, pv) = (perm(w), perm(v));
        for (name, b) in &bs {
            for (neg, r) in windows {
                let win = Window::new(neg, r, 1).unwrap();
                let (a, c) = (count_points(&pw, b, &win, &one_core()).unwrap().yes, count_points(&pv, b, &win, &one_core()).unwrap().yes);
                if a != c {
                    fails.push(format!("{} vs {} b={name} N={neg} r={r}: {a} vs {c}", sys.format(w), sys.format(v)));
                }
                // the isomorphism itself, point by point
                for pt in window_points(3, &f, &win, u64::MAX).unwrap() {
                    if xwb_member(&pt, &pw, b).unwrap() != TriState::Yes {
                        continue;
                    }
                    let h = b.mul(&pt.g.frobenius()).unwrap();
                    let image = shift_image(&pt.g, &h, &perm(x), &perm(y)).map(|t| FlagPoint::new(t, Level::BorelQuot).unwrap());
                    match image.map(|t| xwb_member(&t, &pv, b).unwrap()) {
                        Some(TriState::Yes) => mapped += 1,
                        other => fails.push(format!("{} b={name}: shift of {} gave {other:?}", sys.format(w), pt.label())),
                    }
                }
            }
        }
    }
    Verdict::new(
        fails,
        format!("{} shift pairs x {} b's x {} windows, {mapped} members carried into the shifted space", pairs.len(), bs.len(), windows.len()),
    )
}

// ---------------------------------------------------------------- alpha

fn criterion4() -> Verdict {
    let (mut members, mut fails) = (0, Vec::new());
    for m in [1, 2] {
        let f = grid_field(m);
        let win = Window::new(1, 2, m).unwrap();
        let pts = window_points(2, &f, &win, u64::MAX).unwrap();
        let w = Perm::longest(2);
        for shape in SHAPES {
            let b = shape.kind().matrix(&f);
            let kappa = b.det_val().unwrap().value();
            for pt in &pts {
                if xwb_member(pt, &w, &b).unwrap() != TriState::Yes {
                    continue;
                }
                members += 1;
                let a = alpha_invariant(pt, &w, &b).unwrap();
                if a != vec![kappa] {
                    fails.push(format!("m={m} {} {}: alpha {a:?}", shape.label(), pt.label()));
                }
            }
        }
    }
    Verdict::new(fails, format!("{members} members of X_s(b) in window N=1 r=2"))
}

// ---------------------------------------------------------------- braids

fn criterion5() -> Verdict {
    let mut fails = Vec::new();
    let a2 = CoxeterSys::from_label("A2").unwrap();
    let x = Braid::parse(&a2, "s1 s2").unwrap();
    let delta = Braid::from_elt(a2.longest());
    if x.pow(&a2, 3) != delta.pow(&a2, 2) {
        fails.push(format!("(s1 s2)^3 = {}", x.pow(&a2, 3).format(&a2)));
    }
    let d = thm91_hypothesis(&a2, a2.parse("s1 s2").unwrap(), &a2.all_simple(), 12).unwrap();
    if d != Some(3) {
        fails.push(format!("thm91(s1 s2, S) = {d:?}, expected Some(3)"));
    }
    let mut systems: Vec<CoxeterSys> = ["A1", "A2", "A3"].iter().map(|l| CoxeterSys::from_label(l).unwrap()).collect();
    systems.push(CoxeterSys::type_a_flip(3).unwrap());
    let mut nclasses = 0;
    for sys in &systems {
        for c in sys.sigma_classes() {
            nclasses += 1;
            if !c.cmin.iter().any(|&w| good_certificate(sys, w, twisted_order(sys, w)).is_some()) {
                fails.push(format!("{sys}: no good element in class of {}", sys.format(c.cmin[0])));
            }
        }
    }
    Verdict::new(fails, format!("normal forms, thm91, good elements in {nclasses} classes"))
}

// ---------------------------------------------------------------- Newton

fn random_conjugator(f: &Arc<Field>, n: usize, rng: &mut ChaCha8Rng) -> (GLMat, GLMat) {
    let units: Vec<Fe> = f.subfield(2).unwrap().into_iter().filter(|c| !c.is_zero()).collect();
    let mut g = GLMat::identity(f, n);
    let mut ginv = GLMat::identity(f, n);
    for _ in 0..rng.gen_range(1..=4) {
        let (h, hinv) = if rng.gen_bool(0.7) {
            let i = rng.gen_range(0..n);
            let j = (i + rng.gen_range(1..n.max(2))) % n;
            let x = LaurentElem::monomial(f, units[rng.gen_range(0..units.len())], rng.gen_range(-1..=1));
            if i == j {
                continue;
            }
            let id = GLMat::identity(f, n);
            (id.with_entry(i, j, x.clone()), id.with_entry(i, j, x.neg()))
        } else {
            let mut d = Vec::new();
            let mut dinv = Vec::new();
            for _ in 0..n {
                let c = units[rng.gen_range(0..units.len())];
                let e = rng.gen_range(-1..=1);
                d.push(LaurentElem::monomial(f, c, e));
                dinv.push(LaurentElem::monomial(f, f.inv(c).unwrap(), -e));
            }
            (GLMat::diag(f, &d), GLMat::diag(f, &dinv))
        };
        g = g.mul(&h).unwrap();
        ginv = hinv.mul(&ginv).unwrap();
    }
    (g, ginv)
}

fn criterion6() -> Verdict {
    let f = Field::over(2, 2).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(0x10_0f);
    let (mut nclasses, mut fails) = (0, Vec::new());
    for n in 1..=4 {
        for c in classes(n, 4, 2, 4) {
            nclasses += 1;
            let b = standard_rep(&f, &c);
            match newton_slopes(&b, 2) {
                Ok(got) if got == c => {}
                other => fails.push(format!("{c}: round trip gave {other:?}")),
            }
            for k in 0..100 {
                let (g, ginv) = random_conjugator(&f, n, &mut rng);
                let conj = ginv.mul(&b).unwrap().mul(&g.frobenius()).unwrap();
                match newton_slopes(&conj, 2) {
                    Ok(got) if got == c => {}
                    other => fails.push(format!("{c}: conjugator {k} = {g} gave {other:?}")),
                }
            }
        }
    }
    Verdict::new(fails, format!("{nclasses} classes, 100 conjugators each over F_4"))
}

// ---------------------------------------------------------------- GL_3 Lang image

fn criterion7() -> Verdict {
    let (mut checked, mut in_image, mut fails) = (0u64, 0u64, Vec::new());
    for m in [1, 2] {
        let f = Field::over(2, m).unwrap();
        let mut monos = vec![LaurentElem::zero(&f)];
        for c in f.subfield(m).unwrap().into_iter().filter(|c| !c.is_zero()) {
            for e in -2..=2 {
                monos.push(LaurentElem::monomial(&f, c, e));
            }
        }
        let ord = |x: &LaurentElem| x.ord().finite().unwrap_or(i64::MAX / 4);
        for a in &monos {
            for b in &monos {
                for c in &monos {
                    checked += 1;
                    if !lang_image_test(a, b, c).unwrap() {
                        continue;
                    }
                    in_image += 1;
                    if ord(a) + ord(b) < 0 || ord(c) < 0 {
                        fails.push(format!("F_{} a={a} b={b} c={c}", 2u32.pow(m)));
                    }
                }
            }
        }
    }
    Verdict::new(fails, format!("{checked} triples, {in_image} in the image"))
}

// ---------------------------------------------------------------- Drinfeld curve

// Points of F_{q^m}^2 with d = x σ(y) - y σ(x) nonzero and σ(d) = -d, in
// plain field arithmetic.
fn drinfeld_oracle(f: &Field, m: u32) -> Vec<(Fe, Fe, bool)> {
    let elems = f.subfield(m).unwrap();
    let mut out = Vec::new();
    for &x in &elems {
        for &y in &elems {
            let d = f.sub(f.mul(x, f.frob(y)), f.mul(y, f.frob(x)));
            out.push((x, y, !d.is_zero() && f.frob(d) == f.neg(d)));
        }
    }
    out
}

fn criterion8() -> Verdict {
    let mut fails = Vec::new();
    let mut counts = Vec::new();
    for (q, m, want) in [(2, 1, 0), (2, 2, 6), (3, 1, 0), (3, 2, 48)] {
        let f = Field::over(q, m).unwrap();
        let mut yes = 0;
        for (x, y, member) in drinfeld_oracle(&f, m) {
            let got = coxeter_xo_member(&[LaurentElem::constant(&f, x), LaurentElem::constant(&f, y)]).unwrap();
            if got != member {
                fails.push(format!("q={q} m={m} ({}, {}): {got} vs oracle {member}", f.format(x), f.format(y)));
            }
            yes += member as u64;
        }
        if yes != want {
            fails.push(format!("q={q} m={m}: {yes} points, expected {want}"));
        }
        counts.push(format!("q={q} m={m}: {yes}"));
    }
    Verdict::new(fails, counts.join(", "))
}

// ---------------------------------------------------------------- coherence

fn criterion9() -> Verdict {
    let mut fails = Vec::new();
    let mut checked = 0u64;
    for row in load_golden() {
        let f = grid_field(row.m);
        let shape = shape_of(&row.b);
        let b = shape.kind().matrix(&f);
        let w = if row.w == "s1" { Perm::longest(2) } else { Perm::identity(2) };
        for pt in window_points(2, &f, &Window::new(0, row.r, row.m).unwrap(), u64::MAX).unwrap() {
            checked += 1;
            let (closed, generic) = (gl2_closed_form(&pt, &w, shape.kind()).unwrap(), xwb_member(&pt, &w, &b).unwrap());
            if closed != generic || generic == TriState::Unknown {
                fails.push(format!("m={} {} w={} {}: closed {closed:?} generic {generic:?}", row.m, row.b, row.w, pt.label()));
            }
        }
    }
    for (q, m) in [(2, 1), (2, 2), (3, 1), (3, 2)] {
        let f = Field::over(q, m).unwrap();
        let one = GLMat::identity(&f, 2);
        let wdot = coxeter_wdot(&f, 2);
        for (x, y, _) in drinfeld_oracle(&f, m) {
            let v = [LaurentElem::constant(&f, x), LaurentElem::constant(&f, y)];
            let closed = coxeter_xo_member(&v).unwrap();
            let g = coxeter_g(&v).unwrap();
            if !g.is_invertible().unwrap() {
                if closed {
                    fails.push(format!("q={q} m={m}: singular point accepted"));
                }
                continue;
            }
            checked += 1;
            let generic = xwb_dot_member(&FlagPoint::new(g, Level::UnipQuot).unwrap(), &wdot, &one).unwrap();
            if TriState::from_bool(closed) != generic {
                fails.push(format!("q={q} m={m} ({}, {}): closed {closed} generic {generic:?}", f.format(x), f.format(y)));
            }
        }
    }
    for q in [2, 3] {
        let f = Field::over(q, 2).unwrap();
        let small = polys(&f, 2, 0, 2);
        let units: Vec<&LaurentElem> = small.iter().filter(|s| !s.is_exact_zero()).collect();
        for (c, d, alpha, beta) in [(1, 0, 1, 0), (1, 0, 0, 1), (2, 0, 1, 1)] {
            let b = GLMat::diag_t(&f, &[c, d]);
            let wdot = GLMat::from_rows(&f, vec![vec![LaurentElem::zero(&f), mono(&f, alpha).neg()], vec![mono(&f, beta), LaurentElem::zero(&f)]]).unwrap();
            for a in small.iter().filter(|a| !a.is_exact_zero()) {
                for &s in &units {
                    let pt = gl2_dot_point(a, s, c, d, beta).unwrap();
                    if !pt.g.is_invertible().unwrap() {
                        continue;
                    }
                    checked += 1;
                    let generic = xwb_dot_member(&pt, &wdot, &b).unwrap();
                    let tau = LaurentElem::one(&f).div_to(s, 24).unwrap();
                    let closed = gl2_dot_cover_check(a, &tau, c, d, alpha, beta).unwrap();
                    if TriState::from_bool(closed) != generic {
                        fails.push(format!("q={q} (c,d,α,β)=({c},{d},{alpha},{beta}) a={a} s={s}: closed {closed} generic {generic:?}"));
                    }
                }
            }
        }
    }
    Verdict::new(fails, format!("{checked} points compared"))
}

// ---------------------------------------------------------------- driver

fn main() {
    if std::env::var_os("LOOPDL_BLESS").is_some() {
        let text = serde_json::to_string_pretty(&oracle_rows()).unwrap() + "\n";
        std::fs::create_dir_all(golden_path().parent().unwrap()).unwrap();
        std::fs::write(golden_path(), text).unwrap();
        println!("wrote {}", golden_path().display());
    }
    let criteria: [(&str, f64, fn() -> Verdict); 9] = [
        ("GL_2 table", 10.0, criterion1),
        ("emptiness criterion", 60.0, criterion2),
        ("cyclic shift invariance", 30.0, criterion3),
        ("alpha constancy", 10.0, criterion4),
        ("braid identities", 10.0, criterion5),
        ("Newton round trips", 30.0, criterion6),
        ("GL_3 Lang image bound", 60.0, criterion7),
        ("Drinfeld curve", 10.0, criterion8),
        ("closed form vs generic", 10.0, criterion9),
    ];
    let mut failed = 0;
    for (k, (name, limit, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let v = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|e| {
            let msg = e.downcast_ref::<String>().cloned().or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string())).unwrap_or_default();
            Verdict { pass: false, detail: format!("panicked: {msg}") }
        });
        let secs = start.elapsed().as_secs_f64();
        let pass = v.pass && secs < *limit;
        failed += !pass as u32;
        println!("criterion {}: {} ({secs:.2}s, limit {limit}s) {name}: {}", k + 1, if pass { "PASS" } else { "FAIL" }, v.detail);
    }
    println!("{} of 9 criteria passed", 9 - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
