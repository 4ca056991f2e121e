use std::fmt;

use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// A permutation of `{0, .., n-1}` stored by images: `w(j) = images[j]`.
///
/// The permutation matrix sends `e_j` to `e_{w(j)}`; the simple reflection
/// `s_i` (1-based, `1 <= i < n`) swaps positions `i - 1` and `i`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Perm(Vec<usize>);

impl Perm {
    pub fn identity(n: usize) -> Self {
        Perm((0..n).collect())
    }

    pub fn from_images(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &i in &images {
            if i >= n || std::mem::replace(&mut seen[i], true) {
                return Err(Error::Invalid(format!("{images:?} is not a permutation")));
            }
        }
        Ok(Perm(images))
    }

    /// Product `s_{w[0]} s_{w[1]} ...` of 1-based simple transpositions.
    pub fn from_word(n: usize, word: &[usize]) -> Result<Self> {
        let mut p = Perm::identity(n);
        for &s in word {
            if s == 0 || s >= n {
                return Err(Error::Invalid(format!("s{s} is not a generator of S_{n}")));
            }
            p = p.compose(&Perm::simple(n, s));
        }
        Ok(p)
    }

    pub fn simple(n: usize, s: usize) -> Self {
        let mut v: Vec<usize> = (0..n).collect();
        v.swap(s - 1, s);
        Perm(v)
    }

    /// Longest element `j -> n - 1 - j`.
    pub fn longest(n: usize) -> Self {
        Perm((0..n).rev().collect())
    }

    pub fn n(&self) -> usize {
        self.0.len()
    }

    pub fn images(&self) -> &[usize] {
        &self.0
    }

    pub fn apply(&self, j: usize) -> usize {
        self.0[j]
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &Perm) -> Perm {
        Perm(other.0.iter().map(|&j| self.0[j]).collect())
    }

    pub fn inverse(&self) -> Perm {
        let mut v = vec![0; self.n()];
        for (j, &i) in self.0.iter().enumerate() {
            v[i] = j;
        }
        Perm(v)
    }

    /// Number of inversions.
    pub fn length(&self) -> usize {
        let v = &self.0;
        (0..v.len()).map(|i| (i + 1..v.len()).filter(|&j| v[i] > v[j]).count()).sum()
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &j)| i == j)
    }

    /// `true` for an even permutation.
    pub fn is_even(&self) -> bool {
        self.length() % 2 == 0
    }

    /// Cycles, each listed from its smallest element, ordered by that element.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.n()];
        let mut out = Vec::new();
        for start in 0..self.n() {
            if seen[start] {
                continue;
            }
            let mut c = vec![start];
            seen[start] = true;
            let mut j = self.0[start];
            while j != start {
                seen[j] = true;
                c.push(j);
                j = self.0[j];
            }
            out.push(c);
        }
        out
    }

    /// Lexicographically smallest reduced word (1-based letters).
    pub fn reduced_word(&self) -> Vec<usize> {
        let mut w = self.clone();
        let mut word = Vec::new();
        while let Some(s) = (1..w.n()).find(|&s| w.is_left_descent(s)) {
            word.push(s);
            w = Perm::simple(w.n(), s).compose(&w);
        }
        word
    }

    /// Whether `l(s w) < l(w)`.
    pub fn is_left_descent(&self, s: usize) -> bool {
        let inv = self.inverse();
        inv.0[s - 1] > inv.0[s]
    }

    /// Whether `l(w s) < l(w)`.
    pub fn is_right_descent(&self, s: usize) -> bool {
        self.0[s - 1] > self.0[s]
    }
}

impl fmt::Display for Perm {
    /// One-line notation, 1-based.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|i| (i + 1).to_string()).collect();
        write!(f, "[{}]", parts.join(" "))
    }
}
