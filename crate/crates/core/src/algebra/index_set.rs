//! Finite unions of integer intervals over the naturals.

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

/// A half-open interval `[lo, hi)` of naturals; `hi == None` means unbounded.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Interval {
    pub lo: u64,
    pub hi: Option<u64>,
}

impl Interval {
    pub fn new(lo: u64, hi: Option<u64>) -> Self {
        Interval { lo, hi }
    }

    pub fn is_empty(&self) -> bool {
        matches!(self.hi, Some(hi) if hi <= self.lo)
    }

    pub fn contains(&self, k: u64) -> bool {
        k >= self.lo && self.hi.is_none_or(|hi| k < hi)
    }

    pub fn len(&self) -> Option<u64> {
        self.hi.map(|hi| hi.saturating_sub(self.lo))
    }

    pub fn intersect(&self, other: &Interval) -> Interval {
        Interval {
            lo: self.lo.max(other.lo),
            hi: min_end(self.hi, other.hi),
        }
    }
}

/// Compares interval ends, `None` being `+inf`.
pub(crate) fn cmp_end(a: Option<u64>, b: Option<u64>) -> Ordering {
    match (a, b) {
        (None, None) => Ordering::Equal,
        (None, Some(_)) => Ordering::Greater,
        (Some(_), None) => Ordering::Less,
        (Some(x), Some(y)) => x.cmp(&y),
    }
}

pub(crate) fn min_end(a: Option<u64>, b: Option<u64>) -> Option<u64> {
    if cmp_end(a, b) == Ordering::Greater {
        b
    } else {
        a
    }
}

pub(crate) fn max_end(a: Option<u64>, b: Option<u64>) -> Option<u64> {
    if cmp_end(a, b) == Ordering::Less {
        b
    } else {
        a
    }
}

/// A set of naturals stored as sorted, disjoint, non-adjacent intervals.
///
/// The normalized form is unique, so derived equality is set equality.
/// Only the last interval may be unbounded.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct IndexSet {
    intervals: Vec<Interval>,
}

impl IndexSet {
    pub fn empty() -> Self {
        IndexSet::default()
    }

    /// All naturals.
    pub fn naturals() -> Self {
        IndexSet::from_start(0)
    }

    /// `{lo, lo+1, ...}`.
    pub fn from_start(lo: u64) -> Self {
        IndexSet {
            intervals: vec![Interval::new(lo, None)],
        }
    }

    /// `{lo, ..., hi-1}`.
    pub fn range(lo: u64, hi: u64) -> Self {
        IndexSet::from_intervals([Interval::new(lo, Some(hi))])
    }

    pub fn singleton(k: u64) -> Self {
        IndexSet::range(k, k + 1)
    }

    pub fn from_points<I: IntoIterator<Item = u64>>(points: I) -> Self {
        IndexSet::from_intervals(points.into_iter().map(|k| Interval::new(k, Some(k + 1))))
    }

    pub fn from_intervals<I: IntoIterator<Item = Interval>>(intervals: I) -> Self {
        let mut raw: Vec<Interval> = intervals.into_iter().filter(|i| !i.is_empty()).collect();
        raw.sort_by_key(|i| i.lo);
        let mut out: Vec<Interval> = Vec::with_capacity(raw.len());
        for iv in raw {
            if let Some(last) = out.last_mut() {
                // merge overlapping or adjacent
                if last.hi.is_none_or(|hi| iv.lo <= hi) {
                    last.hi = max_end(last.hi, iv.hi);
                    continue;
                }
            }
            out.push(iv);
        }
        IndexSet { intervals: out }
    }

    pub fn intervals(&self) -> &[Interval] {
        &self.intervals
    }

    pub fn is_empty(&self) -> bool {
        self.intervals.is_empty()
    }

    pub fn is_finite(&self) -> bool {
        self.intervals.last().is_none_or(|i| i.hi.is_some())
    }

    /// Number of points, or `None` when infinite.
    pub fn len(&self) -> Option<u64> {
        self.intervals.iter().map(Interval::len).sum()
    }

    pub fn contains(&self, k: u64) -> bool {
        let idx = self.intervals.partition_point(|i| i.lo <= k);
        idx > 0 && self.intervals[idx - 1].contains(k)
    }

    pub fn min(&self) -> Option<u64> {
        self.intervals.first().map(|i| i.lo)
    }

    /// Largest finite interval boundary (an upper bound on where the set
    /// stops being "eventually constant").
    pub fn max_boundary(&self) -> u64 {
        self.intervals
            .iter()
            .map(|i| i.hi.unwrap_or(i.lo))
            .max()
            .unwrap_or(0)
    }

    /// Points of the set below `bound`, in increasing order.
    pub fn points_below(&self, bound: u64) -> impl Iterator<Item = u64> + '_ {
        self.intervals
            .iter()
            .take_while(move |i| i.lo < bound)
            .flat_map(move |i| i.lo..min_end(i.hi, Some(bound)).unwrap())
    }

    /// All points. Panics for infinite sets.
    pub fn points(&self) -> impl Iterator<Item = u64> + '_ {
        assert!(self.is_finite(), "cannot enumerate an infinite IndexSet");
        self.points_below(u64::MAX)
    }

    pub fn union(&self, other: &IndexSet) -> IndexSet {
        IndexSet::from_intervals(self.intervals.iter().chain(&other.intervals).copied())
    }

    pub fn intersection(&self, other: &IndexSet) -> IndexSet {
        let (a, b) = (&self.intervals, &other.intervals);
        let (mut i, mut j) = (0, 0);
        let mut out = Vec::new();
        while i < a.len() && j < b.len() {
            let meet = a[i].intersect(&b[j]);
            if !meet.is_empty() {
                out.push(meet);
            }
            if cmp_end(a[i].hi, b[j].hi) == Ordering::Less {
                i += 1;
            } else {
                j += 1;
            }
        }
        IndexSet::from_intervals(out)
    }

    /// Complement in the naturals.
    pub fn complement(&self) -> IndexSet {
        let mut out = Vec::new();
        let mut cursor = Some(0u64);
        for iv in &self.intervals {
            let Some(start) = cursor else { break };
            if iv.lo > start {
                out.push(Interval::new(start, Some(iv.lo)));
            }
            cursor = iv.hi;
        }
        if let Some(start) = cursor {
            out.push(Interval::new(start, None));
        }
        IndexSet::from_intervals(out)
    }

    pub fn difference(&self, other: &IndexSet) -> IndexSet {
        self.intersection(&other.complement())
    }

    /// Complement relative to `carrier`.
    pub fn complement_within(&self, carrier: &IndexSet) -> IndexSet {
        carrier.difference(self)
    }

    pub fn is_subset(&self, other: &IndexSet) -> bool {
        self.difference(other).is_empty()
    }
}

impl fmt::Display for IndexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (n, iv) in self.intervals.iter().enumerate() {
            if n > 0 {
                write!(f, ", ")?;
            }
            match iv.hi {
                None => write!(f, "{}..", iv.lo)?,
                Some(hi) if hi == iv.lo + 1 => write!(f, "{}", iv.lo)?,
                Some(hi) if hi == iv.lo + 2 => write!(f, "{}, {}", iv.lo, iv.lo + 1)?,
                Some(hi) => write!(f, "{}..={}", iv.lo, hi - 1)?,
            }
        }
        write!(f, "}}")
    }
}
