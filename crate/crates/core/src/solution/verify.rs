use std::fmt;

use rayon::prelude::*;
use serde::Serialize;

use super::PartialSolution;
use crate::error::{Error, Result};

/// Default index bound for checks on countable carriers.
pub const DEFAULT_WINDOW: u64 = 20;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Axiom {
    NonDegenerate,
    Involutive,
    Braided,
    SquareFree,
}

impl Axiom {
    pub const ALL: [Axiom; 4] = [
        Axiom::NonDegenerate,
        Axiom::Involutive,
        Axiom::Braided,
        Axiom::SquareFree,
    ];
}

impl fmt::Display for Axiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

/// A counterexample: the offending indices and the equation that fails.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub tuple: Vec<u64>,
    pub equation: String,
}

/// Outcome of checking one property. `witness` is set exactly when `holds`
/// is false. `skipped` counts instances where only one side of an equation
/// was defined.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AxiomReport<A = Axiom> {
    pub axiom: A,
    pub holds: bool,
    pub witness: Option<Witness>,
    pub skipped: u64,
}

impl<A> AxiomReport<A> {
    pub(crate) fn from_scan(axiom: A, (witness, skipped): (Option<Witness>, u64)) -> Self {
        AxiomReport {
            axiom,
            holds: witness.is_none(),
            witness,
            skipped,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct VerifyOptions {
    /// Checks range over indices below the window. Required for countable
    /// carriers; clips finite ones.
    pub window: Option<u64>,
    pub parallel: bool,
}

impl VerifyOptions {
    pub fn window(window: u64) -> Self {
        VerifyOptions {
            window: Some(window),
            parallel: false,
        }
    }

    pub(crate) fn bound(&self, s: &PartialSolution) -> Result<u64> {
        match (s.size(), self.window) {
            (Some(n), w) => Ok(w.map_or(n, |w| w.min(n))),
            (None, Some(w)) => Ok(w),
            (None, None) => Err(Error::MissingWindow),
        }
    }
}

/// Running state of a scan: the first failure (in scan order) and the
/// number of skipped instances.
#[derive(Default)]
pub(crate) struct Scan {
    witness: Option<Witness>,
    skipped: u64,
}

impl Scan {
    pub(crate) fn fail(&mut self, tuple: &[u64], equation: &str) {
        if self.witness.is_none() {
            self.witness = Some(Witness {
                tuple: tuple.to_vec(),
                equation: equation.to_string(),
            });
        }
    }

    pub(crate) fn skip(&mut self) {
        self.skipped += 1;
    }

    /// Compares two sides of an equation: both defined and different is a
    /// failure; exactly one defined is skipped.
    pub(crate) fn compare(
        &mut self,
        tuple: &[u64],
        equation: &str,
        lhs: Option<u64>,
        rhs: Option<u64>,
    ) {
        match (lhs, rhs) {
            (Some(a), Some(b)) if a != b => self.fail(tuple, equation),
            (Some(_), None) | (None, Some(_)) => self.skip(),
            _ => {}
        }
    }
}

/// Runs `body` for each outer index and merges the results in index order,
/// so the witness is the first one in lexicographic order whether or not the
/// work runs in parallel.
pub(crate) fn scan<F>(bound: u64, parallel: bool, body: F) -> (Option<Witness>, u64)
where
    F: Fn(u64, &mut Scan) + Sync,
{
    let run = |x: u64| {
        let mut scan = Scan::default();
        body(x, &mut scan);
        (scan.witness, scan.skipped)
    };
    let parts: Vec<(Option<Witness>, u64)> = if parallel {
        (0..bound).into_par_iter().map(run).collect()
    } else {
        (0..bound).map(run).collect()
    };
    let skipped = parts.iter().map(|p| p.1).sum();
    (parts.into_iter().find_map(|p| p.0), skipped)
}

pub fn verify(s: &PartialSolution, axiom: Axiom, opts: &VerifyOptions) -> Result<AxiomReport> {
    let w = opts.bound(s)?;
    let result = match axiom {
        Axiom::NonDegenerate => scan(w, opts.parallel, |x, sc| non_degenerate(s, w, x, sc)),
        Axiom::Involutive => scan(w, opts.parallel, |x, sc| involutive(s, w, x, sc)),
        Axiom::Braided => scan(w, opts.parallel, |x, sc| braided(s, w, x, sc)),
        Axiom::SquareFree => scan(w, opts.parallel, |x, sc| {
            if s.r_apply(x, x) != Some((x, x)) {
                sc.fail(&[x], "r(x,x) = (x,x)");
            }
        }),
    };
    Ok(AxiomReport::from_scan(axiom, result))
}

/// All four axioms, in declaration order.
pub fn verify_all(s: &PartialSolution, opts: &VerifyOptions) -> Result<Vec<AxiomReport>> {
    Axiom::ALL.iter().map(|&a| verify(s, a, opts)).collect()
}

fn non_degenerate(s: &PartialSolution, w: u64, x: u64, sc: &mut Scan) {
    let size = s.size();
    for (name, map) in [("sigma", s.sigma(x)), ("gamma", s.gamma(x))] {
        let mut seen = std::collections::BTreeMap::new();
        for k in map.domain().points_below(w) {
            let v = map.apply(k).expect("point of the domain");
            if size.is_some_and(|n| v >= n) {
                sc.fail(&[x, k], &format!("{name}_x maps into the carrier"));
            }
            if let Some(prev) = seen.insert(v, k) {
                sc.fail(&[x, prev, k], &format!("{name}_x is injective"));
            }
        }
    }
}

fn involutive(s: &PartialSolution, w: u64, x: u64, sc: &mut Scan) {
    for y in 0..w {
        let in_sigma = s.sigma_at(x, y).is_some();
        let in_gamma = s.gamma_at(y, x).is_some();
        if in_sigma != in_gamma {
            sc.fail(&[x, y], "x in dom gamma_y iff y in dom sigma_x");
            continue;
        }
        let Some((a, b)) = s.r_apply(x, y) else {
            continue;
        };
        match s.r_apply(a, b) {
            None => sc.fail(&[x, y], "r(r(x,y)) is defined"),
            Some((c, _)) if c != x => sc.fail(&[x, y], "sigma_{sigma_x(y)}(gamma_y(x)) = x"),
            Some((_, d)) if d != y => sc.fail(&[x, y], "gamma_{gamma_y(x)}(sigma_x(y)) = y"),
            Some(_) => {}
        }
    }
}

fn braided(s: &PartialSolution, w: u64, x: u64, sc: &mut Scan) {
    let sg = |a: Option<u64>, k: Option<u64>| s.sigma_at(a?, k?);
    let gm = |a: Option<u64>, k: Option<u64>| s.gamma_at(a?, k?);
    for y in 0..w {
        for z in 0..w {
            let t = [x, y, z];
            let (x_, y_, z_) = (Some(x), Some(y), Some(z));
            let sx_y = sg(x_, y_);
            let gy_x = gm(y_, x_);
            let sy_z = sg(y_, z_);
            let gz_y = gm(z_, y_);
            sc.compare(
                &t,
                "sigma_x sigma_y = sigma_{sigma_x(y)} sigma_{gamma_y(x)}",
                sg(x_, sy_z),
                sg(sx_y, sg(gy_x, z_)),
            );
            sc.compare(
                &t,
                "gamma_z gamma_y = gamma_{gamma_z(y)} gamma_{sigma_y(z)}",
                gm(z_, gy_x),
                gm(gz_y, gm(sy_z, x_)),
            );
            sc.compare(
                &t,
                "gamma_{sigma_{gamma_y(x)}(z)}(sigma_x(y)) = sigma_{gamma_{sigma_y(z)}(x)}(gamma_z(y))",
                gm(sg(gy_x, z_), sx_y),
                sg(gm(sy_z, x_), gz_y),
            );
        }
    }
}
