use std::collections::{BTreeMap, HashSet};
use std::sync::Arc;
use std::time::Instant;

use rayon::prelude::*;
use serde::Serialize;

use super::poly::{primitive_line, Poly};
use super::{alpha_invariant, format_alpha, xwb_member, FlagPoint, Level, Window};
use crate::coeffring::{Fe, Field, LaurentElem};
use crate::isocrystal::{newton_slopes, SlopeClass};
use crate::latmat::{GLMat, Perm};
use crate::{Error, Result, TriState};

pub const DEFAULT_BUDGET: u64 = 10_000_000;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CountOptions {
    /// Largest number of window points allowed.
    pub budget: u64,
    /// Worker threads; 0 uses all cores.
    pub workers: usize,
    /// Record wall time in the report.
    pub timing: bool,
}

impl Default for CountOptions {
    fn default() -> Self {
        CountOptions { budget: DEFAULT_BUDGET, workers: 0, timing: false }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BInfo {
    pub slopes: Option<SlopeClass>,
    pub matrix: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CountReport {
    pub w: String,
    pub b: BInfo,
    pub window: Window,
    pub q: u32,
    /// Distinct points in the window.
    pub points: u64,
    pub yes: u64,
    pub no: u64,
    pub unknown: u64,
    pub by_alpha: BTreeMap<String, u64>,
    pub by_component: BTreeMap<String, u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub elapsed_ms: Option<u64>,
}

#[derive(Debug, Clone)]
struct Coord {
    row: usize,
    col: usize,
    lo: i64,
    len: u32,
}

#[derive(Debug, Clone)]
struct Cell {
    w: Perm,
    coords: Vec<Coord>,
    size: u64,
}

// Canonical column echelon forms in the window: column j has a 1 in row
// w(j) and 0 in the rows w(0..j); other entries below the 1 have exponents
// in [-N, r), entries above it in [1, r).
struct Layout {
    field: Arc<Field>,
    n: usize,
    sub: Vec<Fe>,
    cells: Vec<Cell>,
    offsets: Vec<u64>,
    total: u64,
}

fn all_perms(n: usize) -> Vec<Perm> {
    fn rec(cur: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Perm>) {
        if cur.len() == used.len() {
            out.push(Perm::from_images(cur.clone()).unwrap());
            return;
        }
        for i in 0..used.len() {
            if !used[i] {
                used[i] = true;
                cur.push(i);
                rec(cur, used, out);
                cur.pop();
                used[i] = false;
            }
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::new(), &mut vec![false; n], &mut out);
    out.sort_by_key(|p| (p.length(), p.reduced_word()));
    out
}

impl Layout {
    fn new(field: &Arc<Field>, n: usize, win: &Window) -> Result<Layout> {
        let sub = field.subfield(win.m)?;
        let qm = sub.len() as u64;
        let mut cells = Vec::new();
        for w in all_perms(n) {
            let mut coords = Vec::new();
            let mut size: u64 = 1;
            for j in 0..n {
                let piv = w.apply(j);
                for i in 0..n {
                    if i == piv || (0..j).any(|k| w.apply(k) == i) {
                        continue;
                    }
                    let (lo, len) = if i > piv { (-(win.neg as i64), win.neg + win.r) } else { (1, win.r - 1) };
                    if len == 0 {
                        continue;
                    }
                    size = qm.checked_pow(len).and_then(|s| s.checked_mul(size)).unwrap_or(u64::MAX);
                    coords.push(Coord { row: i, col: j, lo, len });
                }
            }
            cells.push(Cell { w, coords, size });
        }
        let mut offsets = Vec::new();
        let mut total: u64 = 0;
        for c in &cells {
            offsets.push(total);
            total = total.saturating_add(c.size);
        }
        Ok(Layout { field: field.clone(), n, sub, cells, offsets, total })
    }

    fn point(&self, idx: u64) -> FlagPoint {
        let ci = self.offsets.partition_point(|&o| o <= idx) - 1;
        let cell = &self.cells[ci];
        let mut rest = idx - self.offsets[ci];
        let f = &self.field;
        let qm = self.sub.len() as u64;
        let mut g = GLMat::zero(f, self.n);
        for j in 0..self.n {
            g = g.with_entry(cell.w.apply(j), j, LaurentElem::one(f));
        }
        for c in &cell.coords {
            let coeffs: Vec<Fe> = (0..c.len)
                .map(|_| {
                    let d = rest % qm;
                    rest /= qm;
                    self.sub[d as usize]
                })
                .collect();
            g = g.with_entry(c.row, c.col, LaurentElem::exact(f, c.lo, coeffs));
        }
        FlagPoint { g, level: Level::BorelQuot, cell: Some(cell.w.clone()) }
    }
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, n, k, &mut Vec::new(), &mut out);
    out
}

// Plücker coordinates of the span of the first k columns.
fn plucker(g: &GLMat, k: usize) -> Result<Vec<LaurentElem>> {
    let f = g.field();
    subsets(g.n(), k)
        .iter()
        .map(|rows| GLMat::from_rows(f, rows.iter().map(|&r| (0..k).map(|c| g.get(r, c).clone()).collect()).collect())?.det())
        .collect()
}

fn flag_key(pt: &FlagPoint) -> Result<Vec<Vec<Poly>>> {
    let f = pt.g.field();
    (1..pt.n()).map(|k| Ok(primitive_line(f, &plucker(&pt.g, k)?))).collect()
}

/// Reduction type of the flag: for each `k`, the `k`-subset of rows where
/// the Plücker coordinate has least valuation (first in lex order). A
/// nested chain is shown as the permutation it spells.
pub(crate) fn component(pt: &FlagPoint) -> Result<String> {
    let n = pt.n();
    let mut chain: Vec<Vec<usize>> = Vec::new();
    for k in 1..n {
        let pl = plucker(&pt.g, k)?;
        let subs = subsets(n, k);
        let best = (0..pl.len()).min_by_key(|&i| (pl[i].ord(), i)).unwrap();
        chain.push(subs[best].clone());
    }
    let mut img = Vec::new();
    let mut prev: Vec<usize> = Vec::new();
    for s in &chain {
        let new: Vec<usize> = s.iter().copied().filter(|x| !prev.contains(x)).collect();
        if new.len() != 1 || !prev.iter().all(|x| s.contains(x)) {
            let parts: Vec<String> = chain.iter().map(|s| format!("{{{}}}", s.iter().map(|x| (x + 1).to_string()).collect::<Vec<_>>().join(","))).collect();
            return Ok(parts.join("<"));
        }
        img.push(new[0]);
        prev = s.clone();
    }
    img.extend((0..n).filter(|x| !prev.contains(x)));
    Ok(Perm::from_images(img)?.to_string())
}

fn build_pool(workers: usize) -> Result<rayon::ThreadPool> {
    rayon::ThreadPoolBuilder::new().num_threads(workers).build().map_err(|e| Error::Invalid(format!("thread pool: {e}")))
}

// Indices of the first representative of each distinct flag.
fn distinct(layout: &Layout, neg: u32) -> Result<Vec<u64>> {
    if neg == 0 {
        return Ok((0..layout.total).collect());
    }
    let keys: Vec<Vec<Vec<Poly>>> = (0..layout.total).into_par_iter().map(|i| flag_key(&layout.point(i))).collect::<Result<_>>()?;
    let mut seen = HashSet::new();
    Ok((0..layout.total).filter(|&i| seen.insert(keys[i as usize].clone())).collect())
}

/// Distinct canonical points of the window, in cell order. Flags with
/// several representatives keep the first one.
pub fn window_points(n: usize, field: &Arc<Field>, win: &Window, budget: u64) -> Result<Vec<FlagPoint>> {
    let layout = Layout::new(field, n, win)?;
    if layout.total > budget {
        return Err(Error::BudgetExceeded { size: layout.total, budget });
    }
    Ok(distinct(&layout, win.neg)?.into_iter().map(|i| layout.point(i)).collect())
}

#[derive(Default)]
struct Tally {
    yes: u64,
    no: u64,
    unknown: u64,
    by_alpha: BTreeMap<String, u64>,
    by_component: BTreeMap<String, u64>,
}

impl Tally {
    fn merge(mut self, o: Tally) -> Tally {
        self.yes += o.yes;
        self.no += o.no;
        self.unknown += o.unknown;
        for (k, v) in o.by_alpha {
            *self.by_alpha.entry(k).or_default() += v;
        }
        for (k, v) in o.by_component {
            *self.by_component.entry(k).or_default() += v;
        }
        self
    }
}

fn evaluate(pt: &FlagPoint, w: &Perm, b: &GLMat) -> Result<Tally> {
    let mut t = Tally::default();
    match xwb_member(pt, w, b)? {
        TriState::Yes => {
            t.yes = 1;
            let a = match alpha_invariant(pt, w, b) {
                Ok(a) => format_alpha(&a),
                Err(Error::PrecisionExhausted { .. }) => "unknown".into(),
                Err(e) => return Err(e),
            };
            t.by_alpha.insert(a, 1);
            t.by_component.insert(component(pt)?, 1);
        }
        TriState::No => t.no = 1,
        TriState::Unknown => t.unknown = 1,
    }
    Ok(t)
}

fn word_text(w: &Perm) -> String {
    let word = w.reduced_word();
    if word.is_empty() {
        "e".into()
    } else {
        word.iter().map(|s| format!("s{s}")).collect::<Vec<_>>().join(" ")
    }
}

// Smallest d dividing the degree of the field with b fixed by σ^d.
pub(crate) fn coefficient_degree(b: &GLMat) -> u32 {
    let top = b.field().frob_order();
    (1..=top).find(|&d| top % d == 0 && b.fixed_by_frobenius_pow(d)).unwrap_or(top)
}

/// Counts points of `X_w(b)` among the canonical window points.
///
/// ```
/// use loopdl::coeffring::Field;
/// use loopdl::dlspace::{count_points, CountOptions, Window};
/// use loopdl::isocrystal::superbasic_gl2;
/// use loopdl::latmat::Perm;
///
/// let f = Field::prime(2).unwrap();
/// let b = superbasic_gl2(&f, 0);
/// let win = Window::new(0, 2, 1).unwrap();
/// let rep = count_points(&Perm::longest(2), &b, &win, &CountOptions::default()).unwrap();
/// assert_eq!(rep.yes, 6);
/// assert_eq!(rep.by_component.values().copied().collect::<Vec<_>>(), vec![4, 2]);
/// ```
pub fn count_points(w: &Perm, b: &GLMat, win: &Window, opts: &CountOptions) -> Result<CountReport> {
    let start = Instant::now();
    if w.n() != b.n() {
        return Err(Error::LengthMismatch(w.n(), b.n()));
    }
    let layout = Layout::new(b.field(), b.n(), win)?;
    if layout.total > opts.budget {
        return Err(Error::BudgetExceeded { size: layout.total, budget: opts.budget });
    }
    let pool = build_pool(opts.workers)?;
    let (points, tally) = pool.install(|| -> Result<(u64, Tally)> {
        let idx = distinct(&layout, win.neg)?;
        let tally = idx
            .par_iter()
            .map(|&i| evaluate(&layout.point(i), w, b))
            .try_reduce(Tally::default, |a, c| Ok(a.merge(c)))?;
        Ok((idx.len() as u64, tally))
    })?;
    let slopes = newton_slopes(b, coefficient_degree(b)).ok();
    Ok(CountReport {
        w: word_text(w),
        b: BInfo { slopes, matrix: b.to_string() },
        window: *win,
        q: b.field().q(),
        points,
        yes: tally.yes,
        no: tally.no,
        unknown: tally.unknown,
        by_alpha: tally.by_alpha,
        by_component: tally.by_component,
        elapsed_ms: opts.timing.then(|| start.elapsed().as_millis() as u64),
    })
}
