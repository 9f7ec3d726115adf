//! Partial bijections of the naturals (elements of the symmetric inverse
//! monoid), stored as piecewise shifts.
//!
//! A map is a sorted list of [`Segment`]s, each sending `k ↦ k + shift` on a
//! half-open interval. Finite exceptional points ("overrides") are simply
//! unit-length segments. Adjacent segments with equal shift are merged, so the
//! representation is canonical and derived equality is equality of partial
//! maps (same domain, same values).
//!
//! The class is closed under composition and inversion, which is what makes
//! countable families such as the Thompson maps exactly representable.

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

use super::index_set::{cmp_end, IndexSet, Interval};
use crate::error::{Error, Result};

/// `k ↦ k + shift` for `k` in `[lo, hi)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct Segment {
    pub lo: u64,
    pub hi: Option<u64>,
    pub shift: i64,
}

impl Segment {
    fn interval(&self) -> Interval {
        Interval::new(self.lo, self.hi)
    }

    fn image(&self) -> Interval {
        Interval::new(
            shift(self.lo, self.shift),
            self.hi.map(|h| shift(h, self.shift)),
        )
    }
}

pub(crate) fn shift(k: u64, by: i64) -> u64 {
    k.checked_add_signed(by)
        .unwrap_or_else(|| panic!("index overflow: {k} + {by} leaves the naturals"))
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, Serialize)]
#[serde(transparent)]
pub struct PartialBijection {
    segments: Vec<Segment>,
}

impl PartialBijection {
    /// The vacuous map (zero of the monoid).
    pub fn empty() -> Self {
        PartialBijection::default()
    }

    /// Partial identity `Id_D`.
    pub fn identity(domain: &IndexSet) -> Self {
        PartialBijection {
            segments: domain
                .intervals()
                .iter()
                .map(|iv| Segment {
                    lo: iv.lo,
                    hi: iv.hi,
                    shift: 0,
                })
                .collect(),
        }
    }

    /// Builds a map from explicit pairs `(k, image)`.
    ///
    /// Fails on a repeated key with different images (not a function) or a
    /// repeated image (not injective).
    pub fn from_pairs<I: IntoIterator<Item = (u64, u64)>>(pairs: I) -> Result<Self> {
        let mut map = BTreeMap::new();
        for (k, v) in pairs {
            if let Some(prev) = map.insert(k, v) {
                if prev != v {
                    return Err(Error::Parse {
                        token: k.to_string(),
                        message: format!("point mapped to both {prev} and {v}"),
                    });
                }
            }
        }
        let segments = map.into_iter().map(|(k, v)| Segment {
            lo: k,
            hi: Some(k + 1),
            shift: v as i64 - k as i64,
        });
        PartialBijection::from_segments(segments)
    }

    /// Builds a map from arbitrary disjoint segments, checking injectivity.
    pub fn from_segments<I: IntoIterator<Item = Segment>>(segments: I) -> Result<Self> {
        let mut segs: Vec<Segment> = segments
            .into_iter()
            .filter(|s| !s.interval().is_empty())
            .collect();
        segs.sort_by_key(|s| s.lo);
        for w in segs.windows(2) {
            if w[0].hi.is_none_or(|hi| hi > w[1].lo) {
                return Err(Error::Parse {
                    token: w[1].lo.to_string(),
                    message: "overlapping segments".into(),
                });
            }
        }
        for s in &segs {
            if (s.lo as i128) + (s.shift as i128) < 0 {
                return Err(Error::Parse {
                    token: s.lo.to_string(),
                    message: format!("shift {} leaves the naturals", s.shift),
                });
            }
        }
        let mut images: Vec<Interval> = segs.iter().map(Segment::image).collect();
        images.sort_by_key(|i| i.lo);
        for w in images.windows(2) {
            if w[0].hi.is_none_or(|hi| hi > w[1].lo) {
                return Err(Error::NonInjective(w[1].lo));
            }
        }
        Ok(PartialBijection::normalized(segs))
    }

    /// Merges adjacent equal-shift segments; input must be sorted, disjoint
    /// and injective.
    fn normalized(mut segs: Vec<Segment>) -> Self {
        segs.sort_by_key(|s| s.lo);
        let mut out: Vec<Segment> = Vec::with_capacity(segs.len());
        for s in segs {
            if let Some(last) = out.last_mut() {
                if last.shift == s.shift && last.hi == Some(s.lo) {
                    last.hi = s.hi;
                    continue;
                }
            }
            out.push(s);
        }
        PartialBijection { segments: out }
    }

    pub fn segments(&self) -> &[Segment] {
        &self.segments
    }

    pub fn is_empty(&self) -> bool {
        self.segments.is_empty()
    }

    pub fn apply(&self, k: u64) -> Option<u64> {
        let idx = self.segments.partition_point(|s| s.lo <= k);
        if idx == 0 {
            return None;
        }
        let s = &self.segments[idx - 1];
        s.interval().contains(k).then(|| shift(k, s.shift))
    }

    pub fn domain(&self) -> IndexSet {
        IndexSet::from_intervals(self.segments.iter().map(Segment::interval))
    }

    pub fn range(&self) -> IndexSet {
        IndexSet::from_intervals(self.segments.iter().map(Segment::image))
    }

    pub fn invert(&self) -> PartialBijection {
        PartialBijection::normalized(
            self.segments
                .iter()
                .map(|s| {
                    let img = s.image();
                    Segment {
                        lo: img.lo,
                        hi: img.hi,
                        shift: -s.shift,
                    }
                })
                .collect(),
        )
    }

    /// `self ∘ inner`: apply `inner` first, on the largest domain where the
    /// composite makes sense, `inner⁻¹(dom(self) ∩ ran(inner))`.
    pub fn compose(&self, inner: &PartialBijection) -> PartialBijection {
        let mut out = Vec::new();
        for s in &inner.segments {
            let img = s.image();
            let start = self
                .segments
                .partition_point(|o| cmp_end(o.hi, Some(img.lo)) != std::cmp::Ordering::Greater);
            for o in &self.segments[start..] {
                if img.hi.is_some_and(|hi| o.lo >= hi) {
                    break;
                }
                let meet = img.intersect(&o.interval());
                if meet.is_empty() {
                    continue;
                }
                out.push(Segment {
                    lo: shift(meet.lo, -s.shift),
                    hi: meet.hi.map(|h| shift(h, -s.shift)),
                    shift: s.shift + o.shift,
                });
            }
        }
        PartialBijection::normalized(out)
    }

    /// Restriction to `dom(self) ∩ set`.
    pub fn restrict(&self, set: &IndexSet) -> PartialBijection {
        self.compose(&PartialBijection::identity(set))
    }

    /// `self(set ∩ dom(self))`.
    pub fn image(&self, set: &IndexSet) -> IndexSet {
        self.restrict(set).range()
    }

    /// `self⁻¹(set ∩ ran(self))`.
    pub fn preimage(&self, set: &IndexSet) -> IndexSet {
        self.invert().image(set)
    }

    /// True when the map is `Id_D` for some `D` (the idempotents of I_X).
    pub fn is_partial_identity(&self) -> bool {
        self.segments.iter().all(|s| s.shift == 0)
    }

    /// Largest finite segment boundary of domain or range.
    pub fn max_boundary(&self) -> u64 {
        self.segments
            .iter()
            .flat_map(|s| {
                let img = s.image();
                [s.hi.unwrap_or(s.lo), img.hi.unwrap_or(img.lo)]
            })
            .max()
            .unwrap_or(0)
    }

    /// Explicit pairs; panics when the domain is infinite.
    pub fn pairs(&self) -> Vec<(u64, u64)> {
        self.domain()
            .points()
            .map(|k| (k, self.apply(k).expect("point of the domain")))
            .collect()
    }

    /// The last segment reaches infinity.
    pub fn is_finite(&self) -> bool {
        self.segments.last().is_none_or(|s| s.hi.is_some())
    }
}

impl fmt::Display for PartialBijection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_finite() {
            write!(f, "{{")?;
            for (n, (k, v)) in self.pairs().into_iter().enumerate() {
                if n > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{k}->{v}")?;
            }
            return write!(f, "}}");
        }
        for (n, s) in self.segments.iter().enumerate() {
            if n > 0 {
                write!(f, " ")?;
            }
            match s.hi {
                None => write!(f, "[{}..)", s.lo)?,
                Some(hi) => write!(f, "[{}..{})", s.lo, hi)?,
            }
            write!(f, "{:+}", s.shift)?;
        }
        if self.segments.is_empty() {
            write!(f, "{{}}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn sigma0() -> PartialBijection {
        PartialBijection::from_pairs([(0, 0), (2, 2)]).unwrap()
    }

    fn sigma2() -> PartialBijection {
        PartialBijection::from_pairs([(0, 1), (1, 0), (2, 2)]).unwrap()
    }

    #[test]
    fn compose_applies_inner_first() {
        // σ₂∘σ₀: domain {0,2}, 0 ↦ 1, 2 ↦ 2
        let c = sigma2().compose(&sigma0());
        assert_eq!(c.domain(), IndexSet::from_points([0, 2]));
        assert_eq!(c.pairs(), vec![(0, 1), (2, 2)]);
        // σ₀∘σ₂: domain σ₂⁻¹({0,2}) = {1,2}
        let c = sigma0().compose(&sigma2());
        assert_eq!(c.pairs(), vec![(1, 0), (2, 2)]);
    }

    #[test]
    fn identity_and_zero() {
        let d = IndexSet::from_points([1, 4]).union(&IndexSet::from_start(9));
        let id = PartialBijection::identity(&d);
        assert_eq!(id.compose(&id), id);
        assert_eq!(id.invert(), id);
        assert!(sigma2().compose(&PartialBijection::empty()).is_empty());
        assert!(PartialBijection::empty().compose(&sigma2()).is_empty());
    }

    #[test]
    fn transposition_is_self_inverse() {
        assert_eq!(sigma2().invert(), sigma2());
    }

    #[test]
    fn rejects_non_injective() {
        assert_eq!(
            PartialBijection::from_pairs([(0, 0), (2, 0)]),
            Err(Error::NonInjective(0))
        );
        let clash = PartialBijection::from_segments([
            Segment {
                lo: 0,
                hi: Some(3),
                shift: 5,
            },
            Segment {
                lo: 10,
                hi: None,
                shift: -4,
            },
        ]);
        assert!(clash.is_err());
    }

    #[test]
    fn merges_runs_of_pairs() {
        let p = PartialBijection::from_pairs([(0, 1), (1, 2), (2, 3), (5, 5)]).unwrap();
        assert_eq!(p.segments().len(), 2);
        assert_eq!(p.to_string(), "{0->1, 1->2, 2->3, 5->5}");
    }

    #[test]
    fn infinite_shift_maps_compose() {
        // k ↦ k for k ≤ 3, k ↦ k-1 for k ≥ 5 (the Thompson σ₃)
        let s3 = PartialBijection::from_segments([
            Segment {
                lo: 0,
                hi: Some(4),
                shift: 0,
            },
            Segment {
                lo: 5,
                hi: None,
                shift: -1,
            },
        ])
        .unwrap();
        assert_eq!(s3.range(), IndexSet::naturals());
        let inv = s3.invert();
        assert_eq!(inv.apply(3), Some(3));
        assert_eq!(inv.apply(4), Some(5));
        assert_eq!(inv.compose(&s3), PartialBijection::identity(&s3.domain()));
        assert_eq!(
            s3.compose(&inv),
            PartialBijection::identity(&IndexSet::naturals())
        );
        assert_eq!(s3.to_string(), "[0..4)+0 [5..)-1");
    }

    pub(crate) fn arb_finite() -> impl Strategy<Value = PartialBijection> {
        (
            Just((0u64..8).collect::<Vec<_>>()).prop_shuffle(),
            proptest::collection::vec(any::<bool>(), 8),
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

    proptest! {
        #[test]
        fn compose_matches_pointwise(a in arb_finite(), b in arb_finite()) {
            let c = a.compose(&b);
            for k in 0..8 {
                prop_assert_eq!(c.apply(k), b.apply(k).and_then(|v| a.apply(v)));
            }
        }

        #[test]
        fn inverse_of_composite(a in arb_finite(), b in arb_finite()) {
            prop_assert_eq!(a.compose(&b).invert(), b.invert().compose(&a.invert()));
            prop_assert_eq!(a.invert().invert(), a.clone());
            prop_assert_eq!(a.invert().compose(&a), PartialBijection::identity(&a.domain()));
        }

        #[test]
        fn idempotents_commute(a in arb_finite(), b in arb_finite()) {
            let (ea, eb) = (PartialBijection::identity(&a.domain()), PartialBijection::identity(&b.domain()));
            prop_assert_eq!(ea.compose(&eb), eb.compose(&ea));
            let e = ea.compose(&eb);
            prop_assert!(e.is_partial_identity());
            prop_assert_eq!(e.compose(&e), e);
        }

        #[test]
        fn composition_is_associative(a in arb_finite(), b in arb_finite(), c in arb_finite()) {
            prop_assert_eq!(a.compose(&b).compose(&c), a.compose(&b.compose(&c)));
        }
    }
}
