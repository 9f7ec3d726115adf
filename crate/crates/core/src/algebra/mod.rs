//! Index sets, partial bijections (`I_X`), partial integer functions (`A`)
//! and the restricted product `A ⋈ I_X`.

mod bijection;
mod index_set;
mod int_fun;
mod restricted;

pub(crate) use bijection::shift;
pub use bijection::{PartialBijection, Segment};
pub use index_set::{IndexSet, Interval};
pub use int_fun::PartialIntFun;
pub use restricted::{restricted_inv, restricted_mul, EmbeddedElement};

/// Index range of a solution: `{0, ..., n-1}` or all naturals.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize)]
pub enum Carrier {
    Finite(u64),
    Countable,
}

impl Carrier {
    pub fn full_set(&self) -> IndexSet {
        match *self {
            Carrier::Finite(n) => IndexSet::range(0, n),
            Carrier::Countable => IndexSet::naturals(),
        }
    }

    pub fn size(&self) -> Option<u64> {
        match *self {
            Carrier::Finite(n) => Some(n),
            Carrier::Countable => None,
        }
    }

    pub fn contains(&self, k: u64) -> bool {
        match *self {
            Carrier::Finite(n) => k < n,
            Carrier::Countable => true,
        }
    }
}
