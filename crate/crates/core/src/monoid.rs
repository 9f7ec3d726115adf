//! Words in the structure inverse monoid and its embedding
//! `ψ(g) = (π(g), σ_g)` into `A ⋈ I_X`.
//!
//! `σ` extends to words by `σ_{gh} = σ_g σ_h` and `σ_{x*} = σ_x⁻¹`. The
//! cocycle `π` is computed letter by letter from `π(x) = δ_x`,
//! `π(x*) = −δ_x∘σ_x` and `π(gh) = π(g) + σ_g • π(h)`, where `δ_x` is the
//! indicator of `x` on `ran σ_x`.
//!
//! For square-free solutions `ψ` is injective, so comparing images decides
//! equality in the monoid. For other solutions [`StructureMonoid::new`]
//! refuses.

use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Serialize, Serializer};

use crate::algebra::{restricted_mul, EmbeddedElement, IndexSet, PartialBijection, PartialIntFun};
use crate::error::{Error, Result};
use crate::solution::{verify, Axiom, PartialSolution, VerifyOptions, DEFAULT_WINDOW};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Plus,
    Star,
}

/// A generator `x` or its formal inverse `x*`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter {
    pub index: u64,
    pub sign: Sign,
}

impl Letter {
    pub fn plus(index: u64) -> Self {
        Letter {
            index,
            sign: Sign::Plus,
        }
    }

    pub fn star(index: u64) -> Self {
        Letter {
            index,
            sign: Sign::Star,
        }
    }

    pub fn inverse(self) -> Self {
        let sign = match self.sign {
            Sign::Plus => Sign::Star,
            Sign::Star => Sign::Plus,
        };
        Letter { sign, ..self }
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.sign {
            Sign::Plus => write!(f, "{}", self.index),
            Sign::Star => write!(f, "{}'", self.index),
        }
    }
}

impl FromStr for Letter {
    type Err = Error;

    fn from_str(token: &str) -> Result<Self> {
        let (digits, sign) = match token.strip_suffix('\'') {
            Some(d) => (d, Sign::Star),
            None => (token, Sign::Plus),
        };
        let index = digits.parse::<u64>().map_err(|e| Error::Parse {
            token: token.to_string(),
            message: e.to_string(),
        })?;
        Ok(Letter { index, sign })
    }
}

/// A word over `X ∪ X*`; text form `"0 2' 1"`, the empty word is `""` or
/// `"ε"`.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MonoidWord {
    letters: Vec<Letter>,
}

impl MonoidWord {
    pub fn unit() -> Self {
        MonoidWord::default()
    }

    pub fn new(letters: Vec<Letter>) -> Self {
        MonoidWord { letters }
    }

    /// The positive word `x_{i1} x_{i2} ...`.
    pub fn positive<I: IntoIterator<Item = u64>>(indices: I) -> Self {
        MonoidWord::new(indices.into_iter().map(Letter::plus).collect())
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn concat(&self, other: &MonoidWord) -> MonoidWord {
        MonoidWord::new(self.letters.iter().chain(&other.letters).copied().collect())
    }

    /// `w*`: letters reversed, signs flipped.
    pub fn star(&self) -> MonoidWord {
        MonoidWord::new(self.letters.iter().rev().map(|l| l.inverse()).collect())
    }

    pub fn push(&mut self, letter: Letter) {
        self.letters.push(letter);
    }
}

impl From<Vec<Letter>> for MonoidWord {
    fn from(letters: Vec<Letter>) -> Self {
        MonoidWord::new(letters)
    }
}

impl fmt::Display for MonoidWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return write!(f, "ε");
        }
        for (n, l) in self.letters.iter().enumerate() {
            if n > 0 {
                write!(f, " ")?;
            }
            write!(f, "{l}")?;
        }
        Ok(())
    }
}

impl FromStr for MonoidWord {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        text.split_whitespace()
            .filter(|t| *t != "ε")
            .map(str::parse)
            .collect::<Result<Vec<_>>>()
            .map(MonoidWord::new)
    }
}

impl Serialize for Letter {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl Serialize for MonoidWord {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

fn check_letter(s: &PartialSolution, l: Letter) -> Result<()> {
    match s.size() {
        Some(n) if l.index >= n => Err(Error::OutOfCarrier {
            index: l.index,
            size: n,
        }),
        _ => Ok(()),
    }
}

/// `σ_x` or `σ_x⁻¹`.
pub fn letter_sigma(s: &PartialSolution, l: Letter) -> PartialBijection {
    match l.sign {
        Sign::Plus => s.sigma(l.index),
        Sign::Star => s.sigma(l.index).invert(),
    }
}

/// `σ_w`, with the empty word going to `Id_X`.
pub fn sigma_of_word(s: &PartialSolution, w: &MonoidWord) -> PartialBijection {
    w.letters.iter().fold(
        PartialBijection::identity(&s.carrier().full_set()),
        |acc, &l| acc.compose(&letter_sigma(s, l)),
    )
}

/// `δ_x`: value 1 at `x` on `ran σ_x`.
pub fn delta(s: &PartialSolution, x: u64) -> Result<PartialIntFun> {
    let range = s.sigma(x).range();
    if !range.contains(x) {
        return Err(Error::XNotInRange { x });
    }
    Ok(PartialIntFun::indicator(range, x))
}

/// `π(x) = δ_x`, `π(x*) = −δ_x∘σ_x`.
pub fn letter_pi(s: &PartialSolution, l: Letter) -> Result<PartialIntFun> {
    check_letter(s, l)?;
    let d = delta(s, l.index)?;
    Ok(match l.sign {
        Sign::Plus => d,
        Sign::Star => d.precompose(&s.sigma(l.index)).neg(),
    })
}

/// One letter of a [`PiTrace`]: the letter, its contribution
/// `σ_prefix • π(letter)`, and `σ_prefix`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PiStep {
    pub letter: Letter,
    pub increment: PartialIntFun,
    pub prefix_sigma: PartialBijection,
}

/// The data of a left-to-right evaluation of `π`. Summing the increments
/// onto `0_X` gives `π(w)`; `sigma` is `σ_w`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PiTrace {
    pub carrier: IndexSet,
    pub steps: Vec<PiStep>,
    pub sigma: PartialBijection,
}

impl PiTrace {
    pub fn pi(&self) -> PartialIntFun {
        self.steps
            .iter()
            .fold(PartialIntFun::zero(self.carrier.clone()), |acc, st| {
                acc.add(&st.increment)
            })
    }
}

pub fn pi_trace(s: &PartialSolution, w: &MonoidWord) -> Result<PiTrace> {
    let carrier = s.carrier().full_set();
    let mut prefix = PartialBijection::identity(&carrier);
    let mut steps = Vec::with_capacity(w.len());
    for &l in &w.letters {
        let increment = PartialIntFun::act(&prefix, &letter_pi(s, l)?);
        let next = prefix.compose(&letter_sigma(s, l));
        steps.push(PiStep {
            letter: l,
            increment,
            prefix_sigma: prefix,
        });
        prefix = next;
    }
    Ok(PiTrace {
        carrier,
        steps,
        sigma: prefix,
    })
}

pub fn pi(s: &PartialSolution, w: &MonoidWord) -> Result<PartialIntFun> {
    pi_trace(s, w).map(|t| t.pi())
}

pub fn psi(s: &PartialSolution, w: &MonoidWord) -> Result<EmbeddedElement> {
    let trace = pi_trace(s, w)?;
    Ok(EmbeddedElement {
        fun: trace.pi(),
        bij: trace.sigma,
    })
}

/// `π(w)` has empty support and `σ_w` is a partial identity.
pub fn is_idempotent(s: &PartialSolution, w: &MonoidWord) -> Result<bool> {
    let e = psi(s, w)?;
    Ok(e.fun.is_zero() && e.bij.is_partial_identity())
}

/// Rebuilds a word from a trace, reading only the increments and prefix
/// maps (never the recorded letters).
///
/// At each step the increment is pulled back along the prefix map. A support
/// `{i: 1}` points at `x_i`, `{i: −1}` at `x_i*`; when the support was lost
/// (it fell outside the prefix domain) the letter is searched for among the
/// generators. A candidate is accepted only if it reproduces both the
/// increment and the next prefix map, so the result has the same `ψ` image.
pub fn reconstruct(s: &PartialSolution, t: &PiTrace) -> Result<MonoidWord> {
    let carrier = s.carrier().full_set();
    let malformed = |step: usize, message: &str| Error::MalformedTrace {
        step,
        message: message.to_string(),
    };
    if t.carrier != carrier {
        return Err(malformed(0, "trace carrier differs from the solution's"));
    }
    let mut word = MonoidWord::unit();
    let mut expected_prefix = PartialBijection::identity(&carrier);
    for (i, st) in t.steps.iter().enumerate() {
        if st.prefix_sigma != expected_prefix {
            return Err(malformed(
                i,
                "prefix map does not follow from earlier steps",
            ));
        }
        let next = t.steps.get(i + 1).map_or(&t.sigma, |n| &n.prefix_sigma);
        let fits = |l: Letter| -> bool {
            check_letter(s, l).is_ok()
                && letter_pi(s, l)
                    .map(|p| PartialIntFun::act(&st.prefix_sigma, &p) == st.increment)
                    .unwrap_or(false)
                && st.prefix_sigma.compose(&letter_sigma(s, l)) == *next
        };
        let pulled = st.increment.precompose(&st.prefix_sigma);
        let direct = match pulled.support().iter().collect::<Vec<_>>()[..] {
            [(&k, &1)] => Some(Letter::plus(k)),
            [(&k, &-1)] => Some(Letter::star(k)),
            _ => None,
        };
        let letter = match direct.filter(|&l| fits(l)) {
            Some(l) => l,
            None => {
                let bound = s.size().unwrap_or_else(|| {
                    [
                        st.prefix_sigma.max_boundary(),
                        next.max_boundary(),
                        st.increment.domain().max_boundary(),
                        st.increment.support().keys().max().copied().unwrap_or(0),
                    ]
                    .into_iter()
                    .max()
                    .unwrap_or(0)
                        + 3
                });
                (0..bound)
                    .flat_map(|k| [Letter::plus(k), Letter::star(k)])
                    .find(|&l| fits(l))
                    .ok_or_else(|| malformed(i, "no generator matches this step"))?
            }
        };
        word.push(letter);
        expected_prefix = next.clone();
    }
    if t.sigma != expected_prefix {
        return Err(malformed(
            t.steps.len(),
            "final map does not follow from the steps",
        ));
    }
    Ok(word)
}

/// The structure inverse monoid of a solution that has been checked to be
/// square-free, non-degenerate, involutive and braided (countable carriers
/// are checked on the default window). Equality of words is decided by
/// comparing `ψ` images.
pub struct StructureMonoid<'a> {
    solution: &'a PartialSolution,
}

impl<'a> StructureMonoid<'a> {
    pub fn new(solution: &'a PartialSolution) -> Result<Self> {
        let opts = VerifyOptions {
            window: solution.size().is_none().then_some(DEFAULT_WINDOW),
            parallel: false,
        };
        StructureMonoid::with_options(solution, &opts)
    }

    /// Like [`Self::new`] with the hypotheses checked under `opts`.
    pub fn with_options(solution: &'a PartialSolution, opts: &VerifyOptions) -> Result<Self> {
        for axiom in Axiom::ALL {
            let report = verify(solution, axiom, opts)?;
            if !report.holds {
                return Err(Error::NotSquareFree(format!("{axiom} fails")));
            }
        }
        Ok(StructureMonoid { solution })
    }

    pub fn solution(&self) -> &'a PartialSolution {
        self.solution
    }

    pub fn psi(&self, w: &MonoidWord) -> Result<EmbeddedElement> {
        psi(self.solution, w)
    }

    pub fn words_equal(&self, w1: &MonoidWord, w2: &MonoidWord) -> Result<bool> {
        Ok(self.psi(w1)? == self.psi(w2)?)
    }

    /// A shortest word equal to `w`, first in breadth-first order over
    /// letters sorted by index then sign. Letters range over the carrier, or
    /// over indices up to the largest one in `w` for countable carriers.
    pub fn shortest_form(&self, w: &MonoidWord) -> Result<MonoidWord> {
        let target = self.psi(w)?;
        let top = match self.solution.size() {
            Some(n) => n,
            None => w.letters().iter().map(|l| l.index + 1).max().unwrap_or(0),
        };
        let alphabet: Vec<(Letter, EmbeddedElement)> = (0..top)
            .flat_map(|i| [Letter::plus(i), Letter::star(i)])
            .map(|l| Ok((l, self.psi(&MonoidWord::new(vec![l]))?)))
            .collect::<Result<_>>()?;
        let unit = self.psi(&MonoidWord::unit())?;
        let mut seen = HashSet::from([unit.clone()]);
        let mut layer = vec![(MonoidWord::unit(), unit)];
        for _ in 0..=w.len() {
            if let Some((word, _)) = layer.iter().find(|(_, e)| *e == target) {
                return Ok(word.clone());
            }
            let mut next = Vec::new();
            for (word, e) in &layer {
                for (l, le) in &alphabet {
                    let product = restricted_mul(e, le);
                    if seen.insert(product.clone()) {
                        let mut longer = word.clone();
                        longer.push(*l);
                        next.push((longer, product));
                    }
                }
            }
            layer = next;
        }
        Ok(w.clone())
    }

    /// [`Self::words_equal`] over many pairs, evaluated in parallel.
    pub fn words_equal_batch(&self, pairs: &[(MonoidWord, MonoidWord)]) -> Result<Vec<bool>> {
        pairs
            .par_iter()
            .map(|(a, b)| self.words_equal(a, b))
            .collect()
    }
}

/// Checks the hypotheses, then compares `ψ(w1)` and `ψ(w2)`.
pub fn words_equal(s: &PartialSolution, w1: &MonoidWord, w2: &MonoidWord) -> Result<bool> {
    StructureMonoid::new(s)?.words_equal(w1, w2)
}
