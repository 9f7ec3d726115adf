//! Cycle sets, retraction, multipermutation level, decomposition and
//! isomorphism of partial solutions.

use std::collections::BTreeMap;
use std::fmt;

use rayon::prelude::*;
use serde::Serialize;

use crate::algebra::PartialBijection;
use crate::error::{Error, Result};
use crate::solution::{scan, verify, Axiom, AxiomReport, PartialSolution, VerifyOptions, Witness};

/// The partial operation `x ⋆ y = σ_x⁻¹(y)`.
#[derive(Debug, Clone)]
pub struct CycleSet {
    solution: PartialSolution,
}

pub fn derive_cycle_set(s: &PartialSolution) -> CycleSet {
    CycleSet {
        solution: s.clone(),
    }
}

impl CycleSet {
    pub fn star(&self, x: u64, y: u64) -> Option<u64> {
        self.solution.sigma_inv_at(x, y)
    }

    pub fn solution(&self) -> &PartialSolution {
        &self.solution
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum CycleAxiom {
    /// `(x⋆y)⋆(x⋆z) = (y⋆x)⋆(y⋆z)` wherever both sides are defined.
    CycleIdentity,
    /// `x⋆x = x`.
    SquareFree,
    /// `x ↦ x⋆x` is a bijection.
    NonDegenerate,
}

impl CycleAxiom {
    pub const ALL: [CycleAxiom; 3] = [
        CycleAxiom::CycleIdentity,
        CycleAxiom::SquareFree,
        CycleAxiom::NonDegenerate,
    ];
}

impl fmt::Display for CycleAxiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

pub fn verify_cycle_set(
    c: &CycleSet,
    opts: &VerifyOptions,
) -> Result<Vec<AxiomReport<CycleAxiom>>> {
    let w = opts.bound(&c.solution)?;
    let op = |a: Option<u64>, b: Option<u64>| c.star(a?, b?);
    let identity = scan(w, opts.parallel, |x, sc| {
        for y in 0..w {
            for z in 0..w {
                let (x_, y_, z_) = (Some(x), Some(y), Some(z));
                sc.compare(
                    &[x, y, z],
                    "(x*y)*(x*z) = (y*x)*(y*z)",
                    op(op(x_, y_), op(x_, z_)),
                    op(op(y_, x_), op(y_, z_)),
                );
            }
        }
    });
    let square_free = scan(w, opts.parallel, |x, sc| {
        if c.star(x, x) != Some(x) {
            sc.fail(&[x], "x*x = x");
        }
    });
    let mut seen = BTreeMap::new();
    let mut non_degenerate = (None, 0);
    for x in 0..w {
        let fail = |tuple: Vec<u64>, e: &str| {
            Some(Witness {
                tuple,
                equation: e.into(),
            })
        };
        match c.star(x, x) {
            None => non_degenerate.0 = fail(vec![x], "x*x is defined"),
            Some(v) => {
                if let Some(prev) = seen.insert(v, x) {
                    non_degenerate.0 = fail(vec![prev, x], "x -> x*x is injective");
                }
            }
        }
        if non_degenerate.0.is_some() {
            break;
        }
    }
    if non_degenerate.0.is_none() {
        if let Some(n) = c.solution.size().filter(|&n| n == w) {
            if let Some(missed) = (0..n).find(|v| !seen.contains_key(v)) {
                non_degenerate.0 = Some(Witness {
                    tuple: vec![missed],
                    equation: "x -> x*x is surjective".into(),
                });
            }
        }
    }
    Ok(vec![
        AxiomReport::from_scan(CycleAxiom::CycleIdentity, identity),
        AxiomReport::from_scan(CycleAxiom::SquareFree, square_free),
        AxiomReport::from_scan(CycleAxiom::NonDegenerate, non_degenerate),
    ])
}

/// True when `r` maps every pair of `D` inside `part × part` (indices below
/// `bound`) back into `part × part`.
pub fn is_invariant(s: &PartialSolution, part: impl Fn(u64) -> bool, bound: u64) -> bool {
    s.domain_pairs(bound)
        .into_iter()
        .filter(|&(a, b)| part(a) && part(b))
        .all(|(a, b)| {
            let (c, d) = s.r_apply(a, b).expect("pair of D");
            part(c) && part(d)
        })
}

/// The retraction together with the quotient map `x ↦ [x]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Retraction {
    pub solution: PartialSolution,
    pub class_of: Vec<u64>,
}

/// Identifies generators with equal `σ` (equal domains and values) and
/// induces `σ'_[x]([y]) = [σ_x(y)]`, `γ'_[y]([x]) = [γ_y(x)]`.
pub fn retract(s: &PartialSolution) -> Result<Retraction> {
    let n = s.size().ok_or(Error::NotFinite)?;
    let sigma = s.sigma_maps()?;
    let gamma = s.gamma_maps()?;
    let mut class_of = Vec::with_capacity(n as usize);
    let mut reps: Vec<&PartialBijection> = Vec::new();
    for m in sigma {
        let c = match reps.iter().position(|r| *r == m) {
            Some(c) => c,
            None => {
                reps.push(m);
                reps.len() - 1
            }
        };
        class_of.push(c as u64);
    }
    let k = reps.len() as u64;
    let induce = |maps: &[PartialBijection], name: &str| -> Result<Vec<PartialBijection>> {
        let mut table: Vec<BTreeMap<u64, u64>> = vec![BTreeMap::new(); k as usize];
        for (x, m) in maps.iter().enumerate() {
            let cx = class_of[x] as usize;
            for (a, b) in m.pairs() {
                let (ca, cb) = (class_of[a as usize], class_of[b as usize]);
                if let Some(prev) = table[cx].insert(ca, cb) {
                    if prev != cb {
                        return Err(Error::QuotientNotWellDefined(format!(
                            "{name}_[{x}] sends class {ca} to both {prev} and {cb}"
                        )));
                    }
                }
            }
        }
        table
            .into_iter()
            .enumerate()
            .map(|(c, t)| {
                PartialBijection::from_pairs(t).map_err(|_| {
                    Error::QuotientNotWellDefined(format!("{name} of class {c} is not injective"))
                })
            })
            .collect()
    };
    let quotient = PartialSolution::from_maps(k, induce(sigma, "sigma")?, induce(gamma, "gamma")?)?;
    for axiom in [Axiom::NonDegenerate, Axiom::Involutive, Axiom::Braided] {
        let report = verify(&quotient, axiom, &VerifyOptions::default())?;
        if !report.holds {
            return Err(Error::QuotientNotSolution(format!(
                "{axiom} fails: {:?}",
                report.witness
            )));
        }
    }
    Ok(Retraction {
        solution: quotient,
        class_of,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "result")]
pub enum Multipermutation {
    /// `|Ret^m| = 1` for this smallest `m`.
    Level { level: u32 },
    /// Retraction stopped shrinking at this size.
    Irretractable { size: u64 },
    /// No answer within the iteration budget.
    Exhausted { iterations: u32, size: u64 },
}

impl Multipermutation {
    pub fn level(&self) -> Option<u32> {
        match *self {
            Multipermutation::Level { level } => Some(level),
            _ => None,
        }
    }
}

pub fn multipermutation_level(s: &PartialSolution, max_iter: u32) -> Result<Multipermutation> {
    let mut current = s.clone();
    let mut size = current.size().ok_or(Error::NotFinite)?;
    for m in 0..=max_iter {
        if size <= 1 {
            return Ok(Multipermutation::Level { level: m });
        }
        if m == max_iter {
            break;
        }
        let next = retract(&current)?.solution;
        let next_size = next.size().expect("finite quotient");
        if next_size == size {
            return Ok(Multipermutation::Irretractable { size });
        }
        current = next;
        size = next_size;
    }
    Ok(Multipermutation::Exhausted {
        iterations: max_iter,
        size,
    })
}

/// Two disjoint nonempty parts covering the carrier; the smaller part comes
/// first (on a tie, the one holding the smallest index).
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Partition2 {
    pub first: Vec<u64>,
    pub second: Vec<u64>,
}

pub const DEFAULT_DECOMPOSE_LIMIT: usize = 12;
pub const DEFAULT_ISO_LIMIT: usize = 8;

/// Searches for a split into two invariant subsets whose restrictions are
/// non-degenerate and involutive.
pub fn decompose(s: &PartialSolution, limit: usize) -> Result<Option<Partition2>> {
    let n = s.size().ok_or(Error::NotFinite)? as usize;
    if n > limit {
        return Err(Error::TooLarge { size: n, limit });
    }
    if n < 2 {
        return Ok(None);
    }
    let pairs = s.domain_pairs(n as u64);
    let opts = VerifyOptions::default();
    let sound = |part: &[u64]| -> Result<bool> {
        let sub = s.induced(part)?;
        Ok(verify(&sub, Axiom::NonDegenerate, &opts)?.holds
            && verify(&sub, Axiom::Involutive, &opts)?.holds)
    };
    // index 0 always lies in the first candidate part
    for mask in 0u64..(1 << (n - 1)) - 1 {
        let in_y = |k: u64| k == 0 || mask >> (k - 1) & 1 == 1;
        let invariant = pairs.iter().all(|&(a, b)| {
            if in_y(a) != in_y(b) {
                return true;
            }
            let (c, d) = s.r_apply(a, b).expect("pair of D");
            in_y(c) == in_y(a) && in_y(d) == in_y(a)
        });
        if !invariant {
            continue;
        }
        let (y, z): (Vec<u64>, Vec<u64>) = (0..n as u64).partition(|&k| in_y(k));
        if sound(&y)? && sound(&z)? {
            let (first, second) = if z.len() < y.len() { (z, y) } else { (y, z) };
            return Ok(Some(Partition2 { first, second }));
        }
    }
    Ok(None)
}

/// True when `k ↦ alpha[k]` carries `D1` onto `D2` and intertwines `r1`
/// with `r2`.
pub fn is_isomorphism(s1: &PartialSolution, s2: &PartialSolution, alpha: &[u64]) -> bool {
    let (Some(n1), Some(n2)) = (s1.size(), s2.size()) else {
        return false;
    };
    if n1 != n2 || alpha.len() as u64 != n1 {
        return false;
    }
    let a = |k: u64| alpha[k as usize];
    (0..n1).all(|x| {
        (0..n1).all(|y| match (s1.r_apply(x, y), s2.r_apply(a(x), a(y))) {
            (Some((p, q)), Some(img)) => img == (a(p), a(q)),
            (None, None) => true,
            _ => false,
        })
    })
}

/// Exhaustive search for a relabelling `S1 → S2`; the first one in
/// lexicographic order is returned.
pub fn are_isomorphic(
    s1: &PartialSolution,
    s2: &PartialSolution,
    limit: usize,
) -> Result<Option<Vec<u64>>> {
    let n = s1.size().ok_or(Error::NotFinite)? as usize;
    let n2 = s2.size().ok_or(Error::NotFinite)? as usize;
    if n.max(n2) > limit {
        return Err(Error::TooLarge {
            size: n.max(n2),
            limit,
        });
    }
    if n != n2 || s1.domain_pairs(n as u64).len() != s2.domain_pairs(n as u64).len() {
        return Ok(None);
    }
    // split on the image of 0 so branches can run in parallel
    let found: Vec<Option<Vec<u64>>> = (0..n as u64)
        .into_par_iter()
        .map(|first| {
            let mut alpha = vec![first];
            let mut used = vec![false; n];
            used[first as usize] = true;
            extend(s1, s2, n, &mut alpha, &mut used).then_some(alpha)
        })
        .collect();
    Ok(found.into_iter().flatten().next())
}

fn extend(
    s1: &PartialSolution,
    s2: &PartialSolution,
    n: usize,
    alpha: &mut Vec<u64>,
    used: &mut [bool],
) -> bool {
    if !consistent(s1, s2, alpha) {
        return false;
    }
    if alpha.len() == n {
        return true;
    }
    for v in 0..n {
        if used[v] {
            continue;
        }
        used[v] = true;
        alpha.push(v as u64);
        if extend(s1, s2, n, alpha, used) {
            return true;
        }
        alpha.pop();
        used[v] = false;
    }
    false
}

/// Checks every pair with both entries assigned; images are compared where
/// they are assigned too.
fn consistent(s1: &PartialSolution, s2: &PartialSolution, alpha: &[u64]) -> bool {
    let k = alpha.len() as u64;
    let a = |i: u64| alpha.get(i as usize).copied();
    (0..k).all(|x| {
        (0..k).all(|y| {
            match (
                s1.r_apply(x, y),
                s2.r_apply(alpha[x as usize], alpha[y as usize]),
            ) {
                (None, None) => true,
                (Some((p, q)), Some((p2, q2))) => {
                    a(p).is_none_or(|v| v == p2) && a(q).is_none_or(|v| v == q2)
                }
                _ => false,
            }
        })
    })
}
