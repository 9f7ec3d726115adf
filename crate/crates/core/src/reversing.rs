//! Right reversing over the defining relations `xy = σ_x(y)γ_y(x)` and the
//! partial sum `g ⊕ h = gu = hv` it produces.
//!
//! The pair `(w1, w2)` is laid out with `w1` along the top of a grid and `w2`
//! down its left side. A corner with top letter `h` and left letter `v` is
//! closed by a right edge `u` and a bottom edge `w` with `h·u = v·w`. When
//! every corner is closed, the right boundary `u` and bottom boundary `v`
//! satisfy `w1·u = w2·v`.
//!
//! Internally the boundary is the token word `w1⁻¹ w2`; closing the leftmost
//! `h⁻¹ v` rewrites it to `u w⁻¹`. Each closure has at most one letter per
//! edge and each (row, column) cell is closed at most once, so the process
//! always stops after at most `|w1|·|w2|` squares.

use std::fmt::{self, Write as _};

use serde::Serialize;

use crate::error::Result;
use crate::monoid::{Letter, MonoidWord, Sign, StructureMonoid};
use crate::solution::PartialSolution;

/// Closing edges of one corner: `h·u = v·w` with `u`, `w` empty or a single
/// letter.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Closure {
    pub u: Option<Letter>,
    pub w: Option<Letter>,
}

/// The defining relations of a solution, read as corner closures.
///
/// For generators `a ≠ b` there is at most one relation `a·u = b·v`; it
/// exists iff `u = σ_a⁻¹(b)` is defined with `(a, u) ∈ D`, and then
/// `v = γ_u(a)`. Starred and mixed corners use the derived forms
/// `xt = yz ⟹ t*x* = z*y*, t z* = x* y, x* y = t z*`.
#[derive(Debug, Clone, Copy)]
pub struct RelationTable<'a> {
    solution: &'a PartialSolution,
}

impl<'a> RelationTable<'a> {
    pub fn new(solution: &'a PartialSolution) -> Self {
        RelationTable { solution }
    }

    /// `(u, v)` with `a·u = b·v`, for generators `a ≠ b`.
    pub fn entry(&self, a: u64, b: u64) -> Option<(u64, u64)> {
        if a == b {
            return None;
        }
        let s = self.solution;
        let u = s.sigma_inv_at(a, b)?;
        let v = s.gamma_at(u, a)?;
        Some((u, v))
    }

    /// Closure of the corner with top letter `h` and left letter `v`.
    pub fn close(&self, h: Letter, v: Letter) -> Option<Closure> {
        let s = self.solution;
        if h == v {
            return Some(Closure { u: None, w: None });
        }
        let (u, w) = match (h.sign, v.sign) {
            (Sign::Plus, Sign::Plus) => {
                let (u, w) = self.entry(h.index, v.index)?;
                (Letter::plus(u), Letter::plus(w))
            }
            (Sign::Star, Sign::Star) => {
                // x·a = y·b, read backwards: a*·x* = b*·y*
                let x = s.gamma_inv_at(h.index, v.index)?;
                let (y, _) = s.r_apply(x, h.index)?;
                (Letter::star(x), Letter::star(y))
            }
            (Sign::Plus, Sign::Star) => {
                // b·a = y·z gives a·z* = b*·y
                let (y, z) = s.r_apply(v.index, h.index)?;
                (Letter::star(z), Letter::plus(y))
            }
            (Sign::Star, Sign::Plus) => {
                // a·b = y·z gives a*·y = b·z*
                let (y, z) = s.r_apply(h.index, v.index)?;
                (Letter::plus(y), Letter::star(z))
            }
        };
        Some(Closure {
            u: Some(u),
            w: Some(w),
        })
    }
}

/// A closed cell of the grid.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Square {
    pub row: usize,
    pub col: usize,
    pub vertical: Letter,
    pub horizontal: Letter,
    /// Right edge.
    pub u: MonoidWord,
    /// Bottom edge.
    pub v: MonoidWord,
}

impl fmt::Display for Square {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "({},{}) v={} h={} -> u={} v={}",
            self.row, self.col, self.vertical, self.horizontal, self.u, self.v
        )
    }
}

/// The log of a completed reversing, in the order the squares were closed.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ReversingDiagram {
    pub w1: MonoidWord,
    pub w2: MonoidWord,
    pub squares: Vec<Square>,
    pub u: MonoidWord,
    pub v: MonoidWord,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "outcome")]
pub enum ReversingOutcome {
    Closed {
        u: MonoidWord,
        v: MonoidWord,
        diagram: ReversingDiagram,
    },
    NoRelation {
        row: usize,
        col: usize,
        vertical: Letter,
        horizontal: Letter,
    },
    StepLimit {
        steps: usize,
    },
}

impl ReversingOutcome {
    pub fn is_closed(&self) -> bool {
        matches!(self, ReversingOutcome::Closed { .. })
    }
}

impl fmt::Display for ReversingOutcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ReversingOutcome::Closed { u, v, .. } => write!(f, "Closed u={u} v={v}"),
            ReversingOutcome::NoRelation {
                row,
                col,
                vertical,
                horizontal,
            } => write!(
                f,
                "NoRelation at ({row},{col}): no relation {horizontal}... = {vertical}..."
            ),
            ReversingOutcome::StepLimit { steps } => write!(f, "StepLimit after {steps} steps"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Token {
    /// Inverse of a top letter, tagged with its column.
    Back(Letter, usize),
    /// A left letter, tagged with its row.
    Fwd(Letter, usize),
}

fn initial_tokens(w1: &MonoidWord, w2: &MonoidWord) -> Vec<Token> {
    let back = w1
        .letters()
        .iter()
        .enumerate()
        .rev()
        .map(|(c, &l)| Token::Back(l, c));
    let fwd = w2
        .letters()
        .iter()
        .enumerate()
        .map(|(r, &l)| Token::Fwd(l, r));
    back.chain(fwd).collect()
}

fn leftmost_corner(tokens: &[Token]) -> Option<usize> {
    tokens
        .windows(2)
        .position(|p| matches!(p, [Token::Back(..), Token::Fwd(..)]))
}

fn replace_corner(tokens: &mut Vec<Token>, at: usize, row: usize, col: usize, c: Closure) {
    let mut with = Vec::with_capacity(2);
    with.extend(c.u.map(|l| Token::Fwd(l, row)));
    with.extend(c.w.map(|l| Token::Back(l, col)));
    tokens.splice(at..at + 2, with);
}

/// `(u, v)` read off a corner-free token word `u w⁻¹`.
fn boundary(tokens: &[Token]) -> (MonoidWord, MonoidWord) {
    let mut u = MonoidWord::unit();
    let mut back = Vec::new();
    for t in tokens {
        match *t {
            Token::Fwd(l, _) => u.push(l),
            Token::Back(l, _) => back.push(l),
        }
    }
    back.reverse();
    (u, MonoidWord::new(back))
}

/// `10·(|w1|+1)·(|w2|+1)`.
pub fn default_max_steps(w1: &MonoidWord, w2: &MonoidWord) -> usize {
    10 * (w1.len() + 1) * (w2.len() + 1)
}

/// Reverses `w1⁻¹ w2`, closing the leftmost corner first.
pub fn reverse(
    s: &PartialSolution,
    w1: &MonoidWord,
    w2: &MonoidWord,
    max_steps: usize,
) -> ReversingOutcome {
    let table = RelationTable::new(s);
    let mut tokens = initial_tokens(w1, w2);
    let mut squares = Vec::new();
    while let Some(at) = leftmost_corner(&tokens) {
        if squares.len() >= max_steps {
            return ReversingOutcome::StepLimit {
                steps: squares.len(),
            };
        }
        let (Token::Back(h, col), Token::Fwd(v, row)) = (tokens[at], tokens[at + 1]) else {
            unreachable!("corner is a Back/Fwd pair")
        };
        let Some(closure) = table.close(h, v) else {
            return ReversingOutcome::NoRelation {
                row,
                col,
                vertical: v,
                horizontal: h,
            };
        };
        squares.push(Square {
            row,
            col,
            vertical: v,
            horizontal: h,
            u: MonoidWord::new(closure.u.into_iter().collect()),
            v: MonoidWord::new(closure.w.into_iter().collect()),
        });
        replace_corner(&mut tokens, at, row, col, closure);
    }
    let (u, v) = boundary(&tokens);
    let diagram = ReversingDiagram {
        w1: w1.clone(),
        w2: w2.clone(),
        squares,
        u: u.clone(),
        v: v.clone(),
    };
    ReversingOutcome::Closed { u, v, diagram }
}

impl ReversingDiagram {
    /// Text dump, one closed square per line.
    pub fn dump(&self) -> String {
        let mut out = String::new();
        for sq in &self.squares {
            writeln!(out, "{sq}").unwrap();
        }
        out
    }

    /// Replays the logged squares from the initial words. True when every
    /// logged square is the next corner in processing order and the final
    /// boundary is `(u, v)`.
    pub fn replay(&self) -> bool {
        let mut tokens = initial_tokens(&self.w1, &self.w2);
        for sq in &self.squares {
            let Some(at) = leftmost_corner(&tokens) else {
                return false;
            };
            if tokens[at] != Token::Back(sq.horizontal, sq.col)
                || tokens[at + 1] != Token::Fwd(sq.vertical, sq.row)
                || sq.u.len() > 1
                || sq.v.len() > 1
            {
                return false;
            }
            let closure = Closure {
                u: sq.u.letters().first().copied(),
                w: sq.v.letters().first().copied(),
            };
            replace_corner(&mut tokens, at, sq.row, sq.col, closure);
        }
        leftmost_corner(&tokens).is_none() && boundary(&tokens) == (self.u.clone(), self.v.clone())
    }

    /// Graphviz rendering. Vertices are grid points `r,c`; empty edges are
    /// dotted and labelled `ε`.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("digraph reversing {\n  node [shape=point];\n");
        let mut edge = |from: (usize, usize), to: (usize, usize), w: &MonoidWord| {
            let style = if w.is_empty() { ", style=dotted" } else { "" };
            writeln!(
                out,
                "  \"{},{}\" -> \"{},{}\" [label=\"{}\"{}];",
                from.0, from.1, to.0, to.1, w, style
            )
            .unwrap();
        };
        for (c, &l) in self.w1.letters().iter().enumerate() {
            edge((0, c), (0, c + 1), &MonoidWord::new(vec![l]));
        }
        for (r, &l) in self.w2.letters().iter().enumerate() {
            edge((r, 0), (r + 1, 0), &MonoidWord::new(vec![l]));
        }
        for sq in &self.squares {
            edge((sq.row, sq.col + 1), (sq.row + 1, sq.col + 1), &sq.u);
            edge((sq.row + 1, sq.col), (sq.row + 1, sq.col + 1), &sq.v);
        }
        out.push_str("}\n");
        out
    }
}

/// `g ⊕ h = g·u` when reversing `(g, h)` closes.
///
/// Both arguments are first replaced by shortest equal words, and so is the
/// result, so that `⊕` depends only on the monoid elements and not on the
/// words chosen for them: reversing `gg*g` literally can close differently
/// from reversing `g`.
pub fn oplus(
    m: &StructureMonoid<'_>,
    g: &MonoidWord,
    h: &MonoidWord,
    max_steps: usize,
) -> Result<Option<MonoidWord>> {
    let (g, h) = (m.shortest_form(g)?, m.shortest_form(h)?);
    match reverse(m.solution(), &g, &h, max_steps) {
        ReversingOutcome::Closed { u, .. } => Ok(Some(m.shortest_form(&g.concat(&u))?)),
        _ => Ok(None),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Distributivity {
    Holds,
    Fails,
    /// `g ⊕ h` or `ag ⊕ ah` is undefined.
    Skipped,
}

/// Compares `a·(g ⊕ h)` with `ag ⊕ ah` in the structure monoid.
pub fn check_left_distributivity(
    m: &StructureMonoid<'_>,
    a: &MonoidWord,
    g: &MonoidWord,
    h: &MonoidWord,
    max_steps: usize,
) -> Result<Distributivity> {
    let (Some(gh), Some(agh)) = (
        oplus(m, g, h, max_steps)?,
        oplus(m, &a.concat(g), &a.concat(h), max_steps)?,
    ) else {
        return Ok(Distributivity::Skipped);
    };
    Ok(if m.words_equal(&a.concat(&gh), &agh)? {
        Distributivity::Holds
    } else {
        Distributivity::Fails
    })
}
