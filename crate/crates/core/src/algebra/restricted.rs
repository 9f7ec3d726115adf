//! The restricted product `A ⋈ I_X`.

use std::fmt;

use serde::Serialize;

use super::bijection::PartialBijection;
use super::index_set::IndexSet;
use super::int_fun::PartialIntFun;

/// A pair `(f, τ)` with `dom f = ran τ`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct EmbeddedElement {
    pub fun: PartialIntFun,
    pub bij: PartialBijection,
}

impl EmbeddedElement {
    /// Pairs `fun` and `bij`, returning `None` when `dom fun ≠ ran bij`.
    pub fn new(fun: PartialIntFun, bij: PartialBijection) -> Option<Self> {
        (fun.domain() == &bij.range()).then_some(EmbeddedElement { fun, bij })
    }

    /// `(0_X, Id_X)` for the given carrier set.
    pub fn unit(carrier: &IndexSet) -> Self {
        EmbeddedElement {
            fun: PartialIntFun::zero(carrier.clone()),
            bij: PartialBijection::identity(carrier),
        }
    }

    pub fn satisfies_membership_law(&self) -> bool {
        self.fun.domain() == &self.bij.range()
    }
}

/// `(f, τ)(f', ν) = (f + τ•f', τν)`.
pub fn restricted_mul(a: &EmbeddedElement, b: &EmbeddedElement) -> EmbeddedElement {
    EmbeddedElement {
        fun: a.fun.add(&PartialIntFun::act(&a.bij, &b.fun)),
        bij: a.bij.compose(&b.bij),
    }
}

/// `(f, τ)* = (−f∘τ, τ⁻¹)`.
pub fn restricted_inv(a: &EmbeddedElement) -> EmbeddedElement {
    EmbeddedElement {
        fun: a.fun.precompose(&a.bij).neg(),
        bij: a.bij.invert(),
    }
}

impl fmt::Display for EmbeddedElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.fun, self.bij)
    }
}
