//! Finite Coxeter groups with a diagram automorphism `σ`.
//!
//! Elements are numbered in ShortLex order of their canonical reduced
//! words, so the identity is element `0` and the generators `s_1, .., s_r`
//! come next.
//!
//! ```
//! use loopdl::weyl::CoxeterSys;
//!
//! let w = CoxeterSys::from_label("A2").unwrap();
//! assert_eq!(w.order(), 6);
//! let classes = w.sigma_classes();
//! assert_eq!(classes.len(), 3);
//! assert_eq!(classes.iter().filter(|c| c.cuspidal).count(), 1);
//! ```

use std::collections::{BTreeSet, HashMap, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::latmat::Perm;
use crate::{Error, Result};

pub const MAX_RANK: usize = 6;
pub const MAX_ORDER: usize = 5040;
const MAX_ROOTS: usize = 4096;

/// Element of a [`CoxeterSys`], by its ShortLex index.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct WeylElt(pub usize);

impl WeylElt {
    pub const IDENTITY: WeylElt = WeylElt(0);

    pub fn id(self) -> usize {
        self.0
    }
}

/// Coxeter matrix with a diagram automorphism and precomputed group tables.
#[derive(Debug, Clone)]
pub struct CoxeterSys {
    label: String,
    m: Vec<Vec<u32>>,
    sigma: Vec<usize>,
    type_a: bool,
    words: Vec<Vec<usize>>,
    rmul: Vec<Vec<usize>>,
    lmul: Vec<Vec<usize>>,
    inv: Vec<usize>,
    sig: Vec<usize>,
}

impl PartialEq for CoxeterSys {
    fn eq(&self, other: &Self) -> bool {
        self.m == other.m && self.sigma == other.sigma
    }
}

fn chain(rank: usize, last: u32) -> Vec<Vec<u32>> {
    let mut m = vec![vec![2; rank]; rank];
    for i in 0..rank {
        m[i][i] = 1;
        if i + 1 < rank {
            m[i][i + 1] = 3;
            m[i + 1][i] = 3;
        }
    }
    if rank >= 2 {
        m[rank - 2][rank - 1] = last;
        m[rank - 1][rank - 2] = last;
    }
    m
}

impl CoxeterSys {
    /// Builds the group from a Coxeter matrix and `σ` given as 0-based
    /// images of the simple reflections.
    pub fn new(label: &str, m: Vec<Vec<u32>>, sigma: Vec<usize>) -> Result<Self> {
        let rank = m.len();
        if rank == 0 || rank > MAX_RANK {
            return Err(Error::Invalid(format!("rank {rank} outside 1..={MAX_RANK}")));
        }
        for i in 0..rank {
            if m[i].len() != rank || m[i][i] != 1 {
                return Err(Error::Invalid("Coxeter matrix must be square with ones on the diagonal".into()));
            }
            for j in 0..rank {
                if m[i][j] != m[j][i] || (i != j && m[i][j] < 2) {
                    return Err(Error::Invalid(format!("bad Coxeter matrix entry m({}, {}) = {}", i + 1, j + 1, m[i][j])));
                }
            }
        }
        if sigma.len() != rank || Perm::from_images(sigma.clone()).is_err() {
            return Err(Error::Invalid(format!("sigma {sigma:?} is not a permutation of {rank} reflections")));
        }
        for i in 0..rank {
            for j in 0..rank {
                if m[sigma[i]][sigma[j]] != m[i][j] {
                    return Err(Error::Invalid("sigma is not a diagram automorphism".into()));
                }
            }
        }
        let type_a = (0..rank).all(|i| (0..rank).all(|j| m[i][j] == if i == j { 1 } else if i.abs_diff(j) == 1 { 3 } else { 2 }));
        let mut sys = CoxeterSys { label: label.to_string(), m, sigma, type_a, words: vec![], rmul: vec![], lmul: vec![], inv: vec![], sig: vec![] };
        sys.build_tables()?;
        Ok(sys)
    }

    /// `A_n`, `B_n`, `C_n`, `D_n`, `F4`, `G2`, `H3`, `I2(m)`; `σ` is the identity.
    pub fn from_label(label: &str) -> Result<Self> {
        let m = Self::matrix_for_label(label)?;
        let rank = m.len();
        CoxeterSys::new(label, m, (0..rank).collect())
    }

    /// Same as [`from_label`](Self::from_label) with an explicit `σ`
    /// (0-based images).
    pub fn with_sigma(label: &str, sigma: Vec<usize>) -> Result<Self> {
        CoxeterSys::new(label, Self::matrix_for_label(label)?, sigma)
    }

    /// `σ` reversing the Dynkin diagram of `A_n`.
    pub fn type_a_flip(rank: usize) -> Result<Self> {
        CoxeterSys::new(&format!("A{rank}"), chain(rank, 3), (0..rank).rev().collect())
    }

    fn matrix_for_label(label: &str) -> Result<Vec<Vec<u32>>> {
        let bad = || Error::Invalid(format!("unknown Coxeter type `{label}`"));
        let l = label.trim();
        if let Some(inner) = l.strip_prefix("I2(").and_then(|r| r.strip_suffix(')')) {
            let k: u32 = inner.parse().map_err(|_| bad())?;
            if k < 2 {
                return Err(bad());
            }
            return Ok(vec![vec![1, k], vec![k, 1]]);
        }
        let (kind, n) = l.split_at(1);
        let n: usize = n.parse().map_err(|_| bad())?;
        if n == 0 || n > MAX_RANK {
            return Err(Error::Invalid(format!("rank {n} outside 1..={MAX_RANK}")));
        }
        Ok(match (kind, n) {
            ("A", _) => chain(n, 3),
            ("B" | "C", n) if n >= 2 => chain(n, 4),
            ("D", n) if n >= 4 => {
                let mut m = chain(n, 3);
                m[n - 2][n - 1] = 2;
                m[n - 1][n - 2] = 2;
                m[n - 3][n - 1] = 3;
                m[n - 1][n - 3] = 3;
                m
            }
            ("F", 4) => {
                let mut m = chain(4, 3);
                m[1][2] = 4;
                m[2][1] = 4;
                m
            }
            ("G", 2) => chain(2, 6),
            ("H", 3) => {
                let mut m = chain(3, 3);
                m[0][1] = 5;
                m[1][0] = 5;
                m
            }
            _ => return Err(bad()),
        })
    }

    fn build_tables(&mut self) -> Result<()> {
        let r = self.rank();
        // geometric representation: B(a_i, a_j) = -cos(pi / m_ij)
        let bil: Vec<Vec<f64>> = (0..r).map(|i| (0..r).map(|j| -(std::f64::consts::PI / self.m[i][j] as f64).cos()).collect()).collect();
        let reflect = |s: usize, v: &[f64]| -> Vec<f64> {
            let c: f64 = (0..r).map(|k| bil[s][k] * v[k]).sum();
            let mut out = v.to_vec();
            out[s] -= 2.0 * c;
            out
        };
        let key = |v: &[f64]| -> Vec<i64> { v.iter().map(|x| (x * 1e6).round() as i64).collect() };
        let mut roots: Vec<Vec<f64>> = Vec::new();
        let mut index: HashMap<Vec<i64>, usize> = HashMap::new();
        let mut queue = VecDeque::new();
        for i in 0..r {
            let mut e = vec![0.0; r];
            e[i] = 1.0;
            index.insert(key(&e), roots.len());
            roots.push(e);
            queue.push_back(i);
        }
        while let Some(k) = queue.pop_front() {
            for s in 0..r {
                let v = reflect(s, &roots[k]);
                let kv = key(&v);
                if !index.contains_key(&kv) {
                    if roots.len() >= MAX_ROOTS {
                        return Err(Error::Invalid(format!("{} is not a small finite Coxeter group", self.label)));
                    }
                    index.insert(kv, roots.len());
                    roots.push(v);
                    queue.push_back(roots.len() - 1);
                }
            }
        }
        let nroots = roots.len();
        let positive: Vec<bool> = roots.iter().map(|v| v.iter().find(|x| x.abs() > 1e-9).is_some_and(|x| *x > 0.0)).collect();
        let gens: Vec<Vec<u16>> = (0..r).map(|s| roots.iter().map(|v| index[&key(&reflect(s, v))] as u16).collect()).collect();
        let length = |p: &[u16]| (0..nroots).filter(|&k| positive[k] && !positive[p[k] as usize]).count();

        // breadth-first closure under right multiplication
        let mut elems: Vec<Vec<u16>> = vec![(0..nroots as u16).collect()];
        let mut lookup: HashMap<Vec<u16>, usize> = HashMap::from([(elems[0].clone(), 0)]);
        let mut k = 0;
        while k < elems.len() {
            for g in &gens {
                let p: Vec<u16> = g.iter().map(|&x| elems[k][x as usize]).collect();
                if !lookup.contains_key(&p) {
                    if elems.len() >= MAX_ORDER {
                        return Err(Error::Invalid(format!("{} has more than {MAX_ORDER} elements", self.label)));
                    }
                    lookup.insert(p.clone(), elems.len());
                    elems.push(p);
                }
            }
            k += 1;
        }
        let nel = elems.len();
        let lens: Vec<usize> = elems.iter().map(|p| length(p)).collect();
        let rmul: Vec<Vec<usize>> = elems.iter().map(|p| gens.iter().map(|g| lookup[&g.iter().map(|&x| p[x as usize]).collect::<Vec<_>>()]).collect()).collect();
        let lmul: Vec<Vec<usize>> = elems.iter().map(|p| gens.iter().map(|g| lookup[&p.iter().map(|&x| g[x as usize]).collect::<Vec<_>>()]).collect()).collect();

        // ShortLex words: smallest left descent first
        let mut by_len: Vec<usize> = (0..nel).collect();
        by_len.sort_by_key(|&i| lens[i]);
        let mut words: Vec<Vec<usize>> = vec![Vec::new(); nel];
        for &i in &by_len {
            if lens[i] == 0 {
                continue;
            }
            let s = (0..r).find(|&s| lens[lmul[i][s]] < lens[i]).expect("nontrivial element has a left descent");
            let mut w = vec![s];
            w.extend_from_slice(&words[lmul[i][s]]);
            words[i] = w;
        }
        let mut order: Vec<usize> = (0..nel).collect();
        order.sort_by(|&a, &b| lens[a].cmp(&lens[b]).then_with(|| words[a].cmp(&words[b])));
        let mut new_id = vec![0; nel];
        for (n, &old) in order.iter().enumerate() {
            new_id[old] = n;
        }
        self.words = order.iter().map(|&o| words[o].clone()).collect();
        self.rmul = order.iter().map(|&o| rmul[o].iter().map(|&x| new_id[x]).collect()).collect();
        self.lmul = order.iter().map(|&o| lmul[o].iter().map(|&x| new_id[x]).collect()).collect();
        self.inv = (0..nel).map(|i| self.words[i].iter().rev().fold(0, |acc, &s| self.rmul[acc][s])).collect();
        self.sig = (0..nel).map(|i| self.words[i].iter().fold(0, |acc, &s| self.rmul[acc][self.sigma[s]])).collect();
        Ok(())
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn rank(&self) -> usize {
        self.m.len()
    }

    pub fn coxeter_matrix(&self) -> &[Vec<u32>] {
        &self.m
    }

    /// `σ` as 0-based images of the simple reflections.
    pub fn sigma(&self) -> &[usize] {
        &self.sigma
    }

    pub fn order(&self) -> usize {
        self.words.len()
    }

    pub fn is_type_a(&self) -> bool {
        self.type_a
    }

    pub fn elements(&self) -> impl Iterator<Item = WeylElt> {
        (0..self.order()).map(WeylElt)
    }

    pub fn identity(&self) -> WeylElt {
        WeylElt::IDENTITY
    }

    /// Simple reflection `s_{i+1}` for 0-based `i`.
    pub fn simple(&self, i: usize) -> WeylElt {
        WeylElt(self.rmul[0][i])
    }

    /// ShortLex reduced word, 0-based letters.
    pub fn word(&self, w: WeylElt) -> &[usize] {
        &self.words[w.0]
    }

    pub fn length(&self, w: WeylElt) -> usize {
        self.words[w.0].len()
    }

    pub fn rmul_simple(&self, w: WeylElt, s: usize) -> WeylElt {
        WeylElt(self.rmul[w.0][s])
    }

    pub fn lmul_simple(&self, s: usize, w: WeylElt) -> WeylElt {
        WeylElt(self.lmul[w.0][s])
    }

    /// Product of a (not necessarily reduced) word of 0-based letters.
    pub fn from_word(&self, word: &[usize]) -> Result<WeylElt> {
        let mut w = 0;
        for &s in word {
            if s >= self.rank() {
                return Err(Error::Invalid(format!("s{} is not a generator of {}", s + 1, self.label)));
            }
            w = self.rmul[w][s];
        }
        Ok(WeylElt(w))
    }

    pub fn mul(&self, a: WeylElt, b: WeylElt) -> WeylElt {
        WeylElt(self.words[b.0].iter().fold(a.0, |acc, &s| self.rmul[acc][s]))
    }

    pub fn inverse(&self, w: WeylElt) -> WeylElt {
        WeylElt(self.inv[w.0])
    }

    pub fn apply_sigma(&self, w: WeylElt) -> WeylElt {
        WeylElt(self.sig[w.0])
    }

    /// Order of `σ` as a permutation of the simple reflections.
    pub fn sigma_order(&self) -> usize {
        let mut k = 1;
        let mut p = self.sigma.clone();
        while p.iter().enumerate().any(|(i, &j)| i != j) {
            p = p.iter().map(|&j| self.sigma[j]).collect();
            k += 1;
        }
        k
    }

    pub fn is_left_descent(&self, w: WeylElt, s: usize) -> bool {
        self.length(self.lmul_simple(s, w)) < self.length(w)
    }

    pub fn is_right_descent(&self, w: WeylElt, s: usize) -> bool {
        self.length(self.rmul_simple(w, s)) < self.length(w)
    }

    /// Simple reflections occurring in a reduced word (0-based).
    pub fn supp(&self, w: WeylElt) -> BTreeSet<usize> {
        self.words[w.0].iter().copied().collect()
    }

    /// Smallest `σ`-stable set of simple reflections containing `supp(w)`.
    pub fn suppbar(&self, w: WeylElt) -> BTreeSet<usize> {
        self.sigma_closure(&self.supp(w))
    }

    pub fn sigma_closure(&self, set: &BTreeSet<usize>) -> BTreeSet<usize> {
        let mut out = set.clone();
        let mut frontier: Vec<usize> = out.iter().copied().collect();
        while let Some(s) = frontier.pop() {
            if out.insert(self.sigma[s]) {
                frontier.push(self.sigma[s]);
            }
        }
        out
    }

    pub fn is_sigma_stable(&self, set: &BTreeSet<usize>) -> bool {
        set.iter().all(|&s| set.contains(&self.sigma[s]))
    }

    /// Longest element of the parabolic subgroup `W_I`.
    pub fn longest_in(&self, set: &BTreeSet<usize>) -> WeylElt {
        let mut w = WeylElt::IDENTITY;
        while let Some(&s) = set.iter().find(|&&s| !self.is_right_descent(w, s)) {
            w = self.rmul_simple(w, s);
        }
        w
    }

    pub fn longest(&self) -> WeylElt {
        self.longest_in(&(0..self.rank()).collect())
    }

    pub fn all_simple(&self) -> BTreeSet<usize> {
        (0..self.rank()).collect()
    }

    /// `s w σ(s)`.
    pub fn sigma_conj_simple(&self, s: usize, w: WeylElt) -> WeylElt {
        WeylElt(self.rmul[self.lmul[w.0][s]][self.sigma[s]])
    }

    /// `x^{-1} w σ(x)`.
    pub fn sigma_conj(&self, x: WeylElt, w: WeylElt) -> WeylElt {
        self.mul(self.mul(self.inverse(x), w), self.apply_sigma(x))
    }

    /// Partition of `W` into `σ`-conjugacy classes, ordered by smallest element.
    pub fn sigma_classes(&self) -> Vec<SigmaClass> {
        let mut class_of = vec![usize::MAX; self.order()];
        let mut out = Vec::new();
        for start in 0..self.order() {
            if class_of[start] != usize::MAX {
                continue;
            }
            let id = out.len();
            let mut members = vec![WeylElt(start)];
            class_of[start] = id;
            let mut k = 0;
            while k < members.len() {
                for s in 0..self.rank() {
                    let v = self.sigma_conj_simple(s, members[k]);
                    if class_of[v.0] == usize::MAX {
                        class_of[v.0] = id;
                        members.push(v);
                    }
                }
                k += 1;
            }
            members.sort();
            let min_length = members.iter().map(|&w| self.length(w)).min().unwrap();
            let cmin = members.iter().copied().filter(|&w| self.length(w) == min_length).collect();
            let full = self.rank();
            let cuspidal = members.iter().all(|&w| self.suppbar(w).len() == full);
            out.push(SigmaClass { elements: members, min_length, cmin, cuspidal });
        }
        out
    }

    /// Elements `x` with `l(x) + l(x^{-1} w) = l(w)`, in ShortLex order.
    pub fn prefixes(&self, w: WeylElt) -> Vec<WeylElt> {
        let lw = self.length(w);
        let mut seen = BTreeSet::from([WeylElt::IDENTITY]);
        let mut frontier = vec![WeylElt::IDENTITY];
        while let Some(x) = frontier.pop() {
            for s in 0..self.rank() {
                let xs = self.rmul_simple(x, s);
                if self.length(xs) == self.length(x) + 1 && self.length(self.mul(self.inverse(xs), w)) + self.length(xs) == lw && seen.insert(xs) {
                    frontier.push(xs);
                }
            }
        }
        seen.into_iter().collect()
    }

    /// Breadth-first search for a chain of cyclic shifts `xy -> yσ(x)` with
    /// additive lengths from `w` to `w2`.
    pub fn cyclic_shift_path(&self, w: WeylElt, w2: WeylElt) -> Result<Option<Vec<ShiftStep>>> {
        if self.length(w) != self.length(w2) {
            return Err(Error::LengthMismatch(self.length(w), self.length(w2)));
        }
        let mut parent: HashMap<WeylElt, ShiftStep> = HashMap::new();
        let mut queue = VecDeque::from([w]);
        let mut seen = BTreeSet::from([w]);
        while let Some(u) = queue.pop_front() {
            if u == w2 {
                let mut path = Vec::new();
                let mut cur = u;
                while cur != w {
                    let step = parent[&cur].clone();
                    cur = step.from;
                    path.push(step);
                }
                path.reverse();
                return Ok(Some(path));
            }
            for x in self.prefixes(u) {
                let y = self.mul(self.inverse(x), u);
                let v = self.mul(y, self.apply_sigma(x));
                if self.length(v) == self.length(u) && seen.insert(v) {
                    parent.insert(v, ShiftStep { from: u, x, y, to: v });
                    queue.push_back(v);
                }
            }
        }
        Ok(None)
    }

    /// Chain `w_{i+1} = s_i w_i σ(s_i)` with non-increasing length ending in
    /// the minimal-length part of the class of `w`.
    pub fn descent_to_min(&self, w: WeylElt) -> Vec<DescentStep> {
        let mut steps = Vec::new();
        let mut cur = w;
        loop {
            if let Some(s) = (0..self.rank()).find(|&s| self.length(self.sigma_conj_simple(s, cur)) < self.length(cur)) {
                let next = self.sigma_conj_simple(s, cur);
                steps.push(DescentStep { from: cur, s, to: next });
                cur = next;
                continue;
            }
            // same-length moves until a strict descent appears
            let l = self.length(cur);
            let mut parent: HashMap<WeylElt, (WeylElt, usize)> = HashMap::new();
            let mut queue = VecDeque::from([cur]);
            let mut found = None;
            'bfs: while let Some(u) = queue.pop_front() {
                for s in 0..self.rank() {
                    let v = self.sigma_conj_simple(s, u);
                    if self.length(v) < l {
                        found = Some((u, s, v));
                        break 'bfs;
                    }
                    if self.length(v) == l && v != cur && !parent.contains_key(&v) {
                        parent.insert(v, (u, s));
                        queue.push_back(v);
                    }
                }
            }
            let Some((u, s, v)) = found else {
                return steps;
            };
            let mut side = Vec::new();
            let mut x = u;
            while x != cur {
                let (p, t) = parent[&x];
                side.push(DescentStep { from: p, s: t, to: x });
                x = p;
            }
            side.reverse();
            steps.extend(side);
            steps.push(DescentStep { from: u, s, to: v });
            cur = v;
        }
    }

    /// `s1 s2 ...` (1-based), `e` for the identity.
    pub fn format(&self, w: WeylElt) -> String {
        format_word(self.word(w))
    }

    /// Parses `s1 s2`, `1 2`, `s1s2` or `e`.
    pub fn parse(&self, s: &str) -> Result<WeylElt> {
        self.from_word(&parse_word(s)?)
    }

    /// Permutation of `{0, .., n}` for type `A_n`.
    pub fn to_perm(&self, w: WeylElt) -> Option<Perm> {
        if !self.type_a {
            return None;
        }
        let word: Vec<usize> = self.word(w).iter().map(|s| s + 1).collect();
        Perm::from_word(self.rank() + 1, &word).ok()
    }

    pub fn from_perm(&self, p: &Perm) -> Result<WeylElt> {
        if !self.type_a || p.n() != self.rank() + 1 {
            return Err(Error::Invalid(format!("{p} is not an element of {}", self.label)));
        }
        let word: Vec<usize> = p.reduced_word().iter().map(|s| s - 1).collect();
        self.from_word(&word)
    }
}

pub fn format_word(word: &[usize]) -> String {
    if word.is_empty() {
        return "e".to_string();
    }
    word.iter().map(|s| format!("s{}", s + 1)).collect::<Vec<_>>().join(" ")
}

/// 0-based letters from `s1 s2`, `1 2`, `s1s2` or `e`.
pub fn parse_word(s: &str) -> Result<Vec<usize>> {
    let t = s.trim();
    if t.is_empty() || t == "e" {
        return Ok(Vec::new());
    }
    let mut out = Vec::new();
    for tok in t.split(|c: char| c.is_whitespace() || c == ',').filter(|x| !x.is_empty()) {
        let pieces: Vec<&str> = if tok.starts_with('s') { tok.split('s').filter(|x| !x.is_empty()).collect() } else { vec![tok] };
        for p in pieces {
            if p == "e" {
                continue;
            }
            let k: usize = p.parse().map_err(|_| Error::Parse(format!("bad generator `{tok}`")))?;
            if k == 0 {
                return Err(Error::Parse(format!("generators are numbered from 1, got `{tok}`")));
            }
            out.push(k - 1);
        }
    }
    Ok(out)
}

/// One `σ`-conjugacy class.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SigmaClass {
    pub elements: Vec<WeylElt>,
    pub min_length: usize,
    pub cmin: Vec<WeylElt>,
    pub cuspidal: bool,
}

/// `from = x y`, `to = y σ(x)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ShiftStep {
    pub from: WeylElt,
    pub x: WeylElt,
    pub y: WeylElt,
    pub to: WeylElt,
}

/// `to = s from σ(s)` for the 0-based simple reflection `s`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DescentStep {
    pub from: WeylElt,
    pub s: usize,
    pub to: WeylElt,
}

impl fmt::Display for CoxeterSys {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.sigma.iter().enumerate().all(|(i, &j)| i == j) {
            write!(f, "{}", self.label)
        } else {
            let s: Vec<String> = self.sigma.iter().map(|j| (j + 1).to_string()).collect();
            write!(f, "{} sigma=[{}]", self.label, s.join(" "))
        }
    }
}
