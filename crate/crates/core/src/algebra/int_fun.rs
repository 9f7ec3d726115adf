//! Partial integer-valued functions with finite support: the commutative
//! inverse monoid `A`.

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

use super::bijection::PartialBijection;
use super::index_set::IndexSet;

/// A partial function `X -> Z`: defined on `domain`, zero there except on the
/// keys of `support`.
///
/// Zero values are never stored, so derived equality is equality of partial
/// functions.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct PartialIntFun {
    domain: IndexSet,
    support: BTreeMap<u64, i64>,
}

impl PartialIntFun {
    /// `0_D`.
    pub fn zero(domain: IndexSet) -> Self {
        PartialIntFun {
            domain,
            support: BTreeMap::new(),
        }
    }

    /// Builds a function; values outside `domain` are dropped, zeros ignored.
    pub fn new<I: IntoIterator<Item = (u64, i64)>>(domain: IndexSet, values: I) -> Self {
        let mut support = BTreeMap::new();
        for (k, v) in values {
            if domain.contains(k) {
                let slot: &mut i64 = support.entry(k).or_default();
                *slot = checked_add(*slot, v);
            }
        }
        support.retain(|_, v| *v != 0);
        PartialIntFun { domain, support }
    }

    /// Indicator of `x` on `domain`.
    pub fn indicator(domain: IndexSet, x: u64) -> Self {
        PartialIntFun::new(domain, [(x, 1)])
    }

    pub fn domain(&self) -> &IndexSet {
        &self.domain
    }

    pub fn support(&self) -> &BTreeMap<u64, i64> {
        &self.support
    }

    pub fn get(&self, k: u64) -> Option<i64> {
        self.domain
            .contains(k)
            .then(|| self.support.get(&k).copied().unwrap_or(0))
    }

    /// True when every defined value is 0.
    pub fn is_zero(&self) -> bool {
        self.support.is_empty()
    }

    /// Pointwise sum on the intersection of domains.
    pub fn add(&self, other: &PartialIntFun) -> PartialIntFun {
        let domain = self.domain.intersection(&other.domain);
        let values = self
            .support
            .iter()
            .chain(&other.support)
            .map(|(&k, &v)| (k, v));
        PartialIntFun::new(domain, values)
    }

    pub fn neg(&self) -> PartialIntFun {
        PartialIntFun {
            domain: self.domain.clone(),
            support: self
                .support
                .iter()
                .map(|(&k, &v)| {
                    let n = v
                        .checked_neg()
                        .unwrap_or_else(|| panic!("integer overflow negating {v}"));
                    (k, n)
                })
                .collect(),
        }
    }

    /// `τ • f = f ∘ τ⁻¹`: domain `τ(dom τ ∩ dom f)`, value at `τ(k)` is `f(k)`.
    pub fn act(tau: &PartialBijection, f: &PartialIntFun) -> PartialIntFun {
        let domain = tau.image(&f.domain);
        let values = f
            .support
            .iter()
            .filter_map(|(&k, &v)| tau.apply(k).map(|t| (t, v)));
        PartialIntFun::new(domain, values)
    }

    /// `f ∘ τ`, defined on `τ⁻¹(dom f)`.
    pub fn precompose(&self, tau: &PartialBijection) -> PartialIntFun {
        PartialIntFun::act(&tau.invert(), self)
    }
}

fn checked_add(a: i64, b: i64) -> i64 {
    a.checked_add(b)
        .unwrap_or_else(|| panic!("integer overflow adding {a} and {b}"))
}

impl fmt::Display for PartialIntFun {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "on {} [", self.domain)?;
        for (n, (k, v)) in self.support.iter().enumerate() {
            if n > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{k}:{v}")?;
        }
        write!(f, "]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn sigma2() -> PartialBijection {
        PartialBijection::from_pairs([(0, 1), (1, 0), (2, 2)]).unwrap()
    }

    fn on02() -> IndexSet {
        IndexSet::from_points([0, 2])
    }

    #[test]
    fn act_moves_support() {
        let d0 = PartialIntFun::indicator(on02(), 0);
        let moved = PartialIntFun::act(&sigma2(), &d0);
        assert_eq!(moved.domain(), &IndexSet::from_points([1, 2]));
        assert_eq!(moved.support().iter().collect::<Vec<_>>(), vec![(&1, &1)]);
    }

    #[test]
    fn add_intersects_domains() {
        let d0 = PartialIntFun::indicator(on02(), 0);
        let d2 = PartialIntFun::indicator(IndexSet::range(0, 3), 2);
        let s = d0.add(&d2);
        assert_eq!(s.domain(), &on02());
        assert_eq!(s.get(0), Some(1));
        assert_eq!(s.get(2), Some(1));
        assert_eq!(s.get(1), None);
    }

    #[test]
    fn zero_is_normalized() {
        let f = PartialIntFun::new(on02(), [(0, 2), (0, -2), (7, 5)]);
        assert_eq!(f, PartialIntFun::zero(on02()));
        assert!(f.is_zero());
        let zx = PartialIntFun::zero(IndexSet::naturals());
        let acted = PartialIntFun::act(&sigma2(), &zx);
        assert!(acted.is_zero());
        assert_eq!(acted.domain(), &IndexSet::range(0, 3));
    }

    fn arb_bij() -> impl Strategy<Value = PartialBijection> {
        (
            Just((0u64..6).collect::<Vec<_>>()).prop_shuffle(),
            proptest::collection::vec(any::<bool>(), 6),
        )
            .prop_map(|(perm, keep)| {
                PartialBijection::from_pairs(
                    perm.into_iter()
                        .enumerate()
                        .filter(|(k, _)| keep[*k])
                        .map(|(k, v)| (k as u64, v)),
                )
                .unwrap()
            })
    }

    fn arb_fun() -> impl Strategy<Value = PartialIntFun> {
        (
            proptest::collection::btree_set(0u64..6, 0..6),
            proptest::collection::vec((0u64..6, -3i64..4), 0..5),
        )
            .prop_map(|(dom, vals)| PartialIntFun::new(IndexSet::from_points(dom), vals))
    }

    proptest! {
        #[test]
        fn action_is_a_monoid_action(t in arb_bij(), n in arb_bij(), f in arb_fun(), g in arb_fun()) {
            prop_assert_eq!(
                PartialIntFun::act(&t.compose(&n), &f),
                PartialIntFun::act(&t, &PartialIntFun::act(&n, &f))
            );
            prop_assert_eq!(
                PartialIntFun::act(&t, &f.add(&g)),
                PartialIntFun::act(&t, &f).add(&PartialIntFun::act(&t, &g))
            );
            let id = PartialBijection::identity(&IndexSet::naturals());
            prop_assert_eq!(PartialIntFun::act(&id, &f), f.clone());
        }

        #[test]
        fn addition_is_commutative_with_unit(f in arb_fun(), g in arb_fun()) {
            prop_assert_eq!(f.add(&g), g.add(&f));
            prop_assert_eq!(f.add(&PartialIntFun::zero(IndexSet::naturals())), f.clone());
            // f - f is the zero on dom f; A is an inverse monoid with f* = -f
            prop_assert_eq!(f.add(&f.neg()), PartialIntFun::zero(f.domain().clone()));
        }

        #[test]
        fn act_pointwise(t in arb_bij(), f in arb_fun()) {
            let acted = PartialIntFun::act(&t, &f);
            for y in 0..6 {
                let expect = t.invert().apply(y).and_then(|k| f.get(k));
                prop_assert_eq!(acted.get(y), expect);
            }
        }
    }
}
