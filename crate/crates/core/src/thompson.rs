//! Thompson's group F as the structure group of the countable solution
//! `σ_n`, `γ_n`: normal forms, the word problem and window checks.
//!
//! F has the presentation `⟨x₀, x₁, … | x_n x_k = x_k x_{n+1}, k < n⟩`, and
//! every element is uniquely
//! `x₀^{a₀}…x_n^{a_n} x_n^{−b_n}…x₀^{−b₀}` where exactly one of `a_n`, `b_n`
//! is nonzero and `a_i, b_i > 0` forces `a_{i+1} + b_{i+1} > 0`.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::{Serialize, Serializer};

use crate::cycle::is_invariant;
use crate::error::{Error, Result};
use crate::solution::PartialSolution;

/// A group word; adjacent powers of the same generator are merged.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct FWord {
    powers: Vec<(u64, i64)>,
}

impl FWord {
    pub fn new<I: IntoIterator<Item = (u64, i64)>>(powers: I) -> Self {
        let mut out: Vec<(u64, i64)> = Vec::new();
        for (i, e) in powers {
            if e == 0 {
                continue;
            }
            match out.last_mut() {
                Some((j, f)) if *j == i => {
                    *f += e;
                    if *f == 0 {
                        out.pop();
                    }
                }
                _ => out.push((i, e)),
            }
        }
        FWord { powers: out }
    }

    pub fn powers(&self) -> &[(u64, i64)] {
        &self.powers
    }

    /// Letters `(index, ±1)` one by one.
    pub fn letters(&self) -> impl Iterator<Item = (u64, i64)> + '_ {
        self.powers
            .iter()
            .flat_map(|&(i, e)| std::iter::repeat_n((i, e.signum()), e.unsigned_abs() as usize))
    }

    pub fn len(&self) -> usize {
        self.powers
            .iter()
            .map(|p| p.1.unsigned_abs() as usize)
            .sum()
    }

    pub fn is_empty(&self) -> bool {
        self.powers.is_empty()
    }

    pub fn inverse(&self) -> FWord {
        FWord::new(self.powers.iter().rev().map(|&(i, e)| (i, -e)))
    }

    pub fn concat(&self, other: &FWord) -> FWord {
        FWord::new(self.powers.iter().chain(&other.powers).copied())
    }
}

impl fmt::Display for FWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.powers.is_empty() {
            return write!(f, "ε");
        }
        for (n, &(i, e)) in self.powers.iter().enumerate() {
            if n > 0 {
                write!(f, " ")?;
            }
            if e == 1 {
                write!(f, "{i}")?;
            } else {
                write!(f, "{i}^{e}")?;
            }
        }
        Ok(())
    }
}

impl FromStr for FWord {
    type Err = Error;

    /// Tokens `n` or `n^e`, e.g. `"0 1 0^-1"`.
    fn from_str(text: &str) -> Result<Self> {
        let parse = |token: &str| -> Result<(u64, i64)> {
            let bad = |message: String| Error::Parse {
                token: token.to_string(),
                message,
            };
            let (i, e) = match token.split_once('^') {
                Some((i, e)) => (i, e.parse::<i64>().map_err(|e| bad(e.to_string()))?),
                None => (token, 1),
            };
            if e == 0 {
                return Err(bad("exponent must be nonzero".into()));
            }
            Ok((i.parse::<u64>().map_err(|e| bad(e.to_string()))?, e))
        };
        text.split_whitespace()
            .filter(|t| *t != "ε")
            .map(parse)
            .collect::<Result<Vec<_>>>()
            .map(FWord::new)
    }
}

impl Serialize for FWord {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

/// `P · N⁻¹` with `P`, `N` nondecreasing lists of generator indices.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct FNormalForm {
    positive: Vec<u64>,
    negative: Vec<u64>,
}

impl FNormalForm {
    fn exponents(part: &[u64], top: usize) -> Vec<u64> {
        let mut out = vec![0; top];
        for &i in part {
            out[i as usize] += 1;
        }
        out
    }

    fn top(&self) -> usize {
        let m = self.positive.iter().chain(&self.negative).max();
        m.map_or(0, |&m| m as usize + 1)
    }

    /// `a₀, …, a_n`.
    pub fn positive_exponents(&self) -> Vec<u64> {
        FNormalForm::exponents(&self.positive, self.top())
    }

    /// `b₀, …, b_n`.
    pub fn negative_exponents(&self) -> Vec<u64> {
        FNormalForm::exponents(&self.negative, self.top())
    }

    pub fn is_identity(&self) -> bool {
        self.positive.is_empty() && self.negative.is_empty()
    }

    pub fn to_word(&self) -> FWord {
        let pos = self.positive.iter().map(|&i| (i, 1));
        let neg = self.negative.iter().rev().map(|&i| (i, -1));
        FWord::new(pos.chain(neg))
    }

    /// Both normal-form conditions.
    pub fn is_reduced(&self) -> bool {
        let (a, b) = (self.positive_exponents(), self.negative_exponents());
        let n = a.len();
        if n == 0 {
            return true;
        }
        let top_ok = (a[n - 1] > 0) != (b[n - 1] > 0);
        top_ok && (0..n - 1).all(|i| !(a[i] > 0 && b[i] > 0) || a[i + 1] > 0 || b[i + 1] > 0)
    }

    /// Right multiplication by `x_m`.
    fn push_positive(&mut self, mut m: u64) {
        // x_j⁻¹ x_m: j < m gives x_{m+1} x_j⁻¹, j > m gives x_m x_{j+1}⁻¹
        for idx in 0..self.negative.len() {
            let j = self.negative[idx];
            if j < m {
                m += 1;
            } else if j == m {
                self.negative.remove(idx);
                return;
            } else {
                for k in &mut self.negative[idx..] {
                    *k += 1;
                }
                break;
            }
        }
        insert_sorted(&mut self.positive, m);
    }

    /// Cancels `x_i … x_i⁻¹` when `x_{i+1}` occurs on neither side.
    fn reduce(&mut self) {
        loop {
            let (a, b) = (self.positive_exponents(), self.negative_exponents());
            let n = a.len();
            let Some(i) = (0..n).rev().find(|&i| {
                a[i] > 0 && b[i] > 0 && (i + 1 >= n || (a[i + 1] == 0 && b[i + 1] == 0))
            }) else {
                return;
            };
            let i = i as u64;
            for part in [&mut self.positive, &mut self.negative] {
                let at = part.iter().position(|&k| k == i).expect("occurs");
                part.remove(at);
                for k in part.iter_mut().filter(|k| **k > i) {
                    *k -= 1;
                }
            }
        }
    }
}

/// `p · x_m` for a sorted positive word `p`: letters above `m` move right
/// past `x_m` and go up by one.
fn insert_sorted(part: &mut Vec<u64>, m: u64) {
    let at = part.partition_point(|&k| k <= m);
    for k in &mut part[at..] {
        *k += 1;
    }
    part.insert(at, m);
}

impl fmt::Display for FNormalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_word())
    }
}

impl Serialize for FNormalForm {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

pub fn f_normal_form(w: &FWord) -> FNormalForm {
    let mut nf = FNormalForm::default();
    for (i, e) in w.letters() {
        if e > 0 {
            nf.push_positive(i);
        } else {
            // (P N⁻¹) x_i⁻¹ = P (x_i N)⁻¹; move x_i right through N
            let mut m = i;
            for &j in &nf.negative {
                if j < m {
                    m += 1;
                } else {
                    break;
                }
            }
            nf.push_negative_at(m);
        }
    }
    nf.reduce();
    nf
}

impl FNormalForm {
    fn push_negative_at(&mut self, m: u64) {
        // m already exceeds every smaller negative index it passed
        let at = self.negative.partition_point(|&k| k < m);
        self.negative.insert(at, m);
    }
}

pub fn f_words_equal(w1: &FWord, w2: &FWord) -> bool {
    f_normal_form(w1) == f_normal_form(w2)
}

/// Checks of the Thompson solution on indices below a window.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WindowReport {
    pub window: u64,
    /// Pairs `(n, k)` of the relations `x_n x_k = x_k x_{n+1}` read off `r`.
    pub relations: Vec<(u64, u64)>,
    pub relation_count: usize,
    /// The relation set is `{(n, k) : 0 ≤ k < n < window}`.
    pub relations_match: bool,
    /// Every nontrivial `xy = σ_x(y)γ_y(x)` has the shape of a defining
    /// relation.
    pub presentation_shaped: bool,
    /// The maps `σ_n` are pairwise distinct.
    pub irretractable: bool,
    /// `{x₀}` is invariant.
    pub x0_invariant: bool,
    /// `{x₁, x₂, …}` is invariant.
    pub tail_invariant: bool,
}

impl WindowReport {
    pub fn all_hold(&self) -> bool {
        self.relations_match
            && self.presentation_shaped
            && self.irretractable
            && self.x0_invariant
            && self.tail_invariant
    }
}

pub fn window_checks(window: u64) -> WindowReport {
    let s = PartialSolution::thompson();
    let mut relations = BTreeSet::new();
    let mut shaped = true;
    for (x, y) in s.domain_pairs(window) {
        let (a, b) = s.r_apply(x, y).expect("pair of D");
        if (a, b) == (x, y) {
            continue;
        }
        // x_n x_k = x_k x_{n+1} read from either side
        match (x, y, a, b) {
            (n, k, k2, n1) if k < n && k2 == k && n1 == n + 1 => {
                relations.insert((n, k));
            }
            (k, n1, n, k2) if k2 == k && n1 == n + 1 && k < n => {
                relations.insert((n, k));
            }
            _ => shaped = false,
        }
    }
    let expected: BTreeSet<(u64, u64)> = (0..window)
        .flat_map(|n| (0..n).map(move |k| (n, k)))
        .collect();
    let sigmas: Vec<_> = (0..window).map(|n| s.sigma(n)).collect();
    let irretractable =
        (0..sigmas.len()).all(|i| (i + 1..sigmas.len()).all(|j| sigmas[i] != sigmas[j]));
    WindowReport {
        window,
        relation_count: relations.len(),
        relations_match: relations == expected,
        relations: relations.into_iter().collect(),
        presentation_shaped: shaped,
        irretractable,
        x0_invariant: is_invariant(&s, |k| k == 0, window),
        tail_invariant: is_invariant(&s, |k| k >= 1, window),
    }
}
