//! Partial set-theoretic solutions: `r(x, y) = (σ_x(y), γ_y(x))` on the set
//! `D` of pairs with `y ∈ dom σ_x` and `x ∈ dom γ_y`.

mod codec;
mod registry;
mod verify;

pub use codec::{load, load_str, save, save_string};
pub use registry::{example, EXAMPLE_NAMES};
pub(crate) use verify::scan;
pub use verify::{verify, verify_all, Axiom, AxiomReport, VerifyOptions, Witness, DEFAULT_WINDOW};

use serde::Serialize;

use crate::algebra::{shift, Carrier, IndexSet, PartialBijection, Segment};
use crate::error::{Error, Result};

/// Closed-form map families for countable carriers.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Rule {
    /// `σ_n(k) = k (k ≤ n), k−1 (k ≥ n+2)`, undefined at `n+1`;
    /// `γ_n(k) = k (k ≤ n−2 or k = n), k+1 (k ≥ n+1)`, undefined at `n−1`.
    Thompson,
}

impl Rule {
    pub fn name(&self) -> &'static str {
        match self {
            Rule::Thompson => "thompson",
        }
    }

    fn sigma(&self, n: u64) -> PartialBijection {
        match self {
            Rule::Thompson => segments([(0, Some(n + 1), 0), (n + 2, None, -1)]),
        }
    }

    fn gamma(&self, n: u64) -> PartialBijection {
        match self {
            Rule::Thompson => segments([
                (0, Some(n.saturating_sub(1)), 0),
                (n, Some(n + 1), 0),
                (n + 1, None, 1),
            ]),
        }
    }

    fn sigma_at(&self, n: u64, k: u64) -> Option<u64> {
        match self {
            Rule::Thompson => match k {
                k if k <= n => Some(k),
                k if k == n + 1 => None,
                k => Some(k - 1),
            },
        }
    }

    fn gamma_at(&self, n: u64, k: u64) -> Option<u64> {
        match self {
            Rule::Thompson => match k {
                k if k + 1 == n => None,
                k if k <= n => Some(k),
                k => Some(shift(k, 1)),
            },
        }
    }

    fn sigma_inv_at(&self, n: u64, k: u64) -> Option<u64> {
        match self {
            Rule::Thompson => Some(if k <= n { k } else { shift(k, 1) }),
        }
    }

    fn gamma_inv_at(&self, n: u64, k: u64) -> Option<u64> {
        match self {
            Rule::Thompson => match k {
                k if k + 1 == n || k == n + 1 => None,
                k if k <= n => Some(k),
                k => Some(k - 1),
            },
        }
    }
}

fn segments<const N: usize>(parts: [(u64, Option<u64>, i64); N]) -> PartialBijection {
    PartialBijection::from_segments(parts.map(|(lo, hi, shift)| Segment { lo, hi, shift }))
        .expect("closed-form family is injective")
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
enum Family {
    Explicit {
        sigma: Vec<PartialBijection>,
        gamma: Vec<PartialBijection>,
        sigma_inv: Vec<PartialBijection>,
        gamma_inv: Vec<PartialBijection>,
    },
    Rule(Rule),
}

/// A carrier with the families `σ` and `γ`.
///
/// `D` is never stored; it is read off the domains of the maps.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PartialSolution {
    carrier: Carrier,
    family: Family,
}

impl PartialSolution {
    /// A finite solution from explicit maps; `sigma[x]` is `σ_x`, missing
    /// entries are empty maps.
    pub fn from_maps(
        size: u64,
        mut sigma: Vec<PartialBijection>,
        mut gamma: Vec<PartialBijection>,
    ) -> Result<Self> {
        for maps in [&sigma, &gamma] {
            if maps.len() as u64 > size {
                return Err(Error::OutOfCarrier {
                    index: maps.len() as u64 - 1,
                    size,
                });
            }
            for m in maps.iter() {
                let points = m.domain().union(&m.range());
                if let Some(bad) = points.difference(&IndexSet::range(0, size)).min() {
                    return Err(Error::OutOfCarrier { index: bad, size });
                }
            }
        }
        sigma.resize(size as usize, PartialBijection::empty());
        gamma.resize(size as usize, PartialBijection::empty());
        let sigma_inv = sigma.iter().map(PartialBijection::invert).collect();
        let gamma_inv = gamma.iter().map(PartialBijection::invert).collect();
        Ok(PartialSolution {
            carrier: Carrier::Finite(size),
            family: Family::Explicit {
                sigma,
                gamma,
                sigma_inv,
                gamma_inv,
            },
        })
    }

    /// The countable solution given by a closed-form rule.
    pub fn from_rule(rule: Rule) -> Self {
        PartialSolution {
            carrier: Carrier::Countable,
            family: Family::Rule(rule),
        }
    }

    pub fn thompson() -> Self {
        PartialSolution::from_rule(Rule::Thompson)
    }

    /// The total solution `r(x, y) = (y, x)` on `n` points.
    pub fn trivial_total(n: u64) -> Self {
        let id = PartialBijection::identity(&IndexSet::range(0, n));
        PartialSolution::from_maps(n, vec![id.clone(); n as usize], vec![id; n as usize])
            .expect("identity maps stay in the carrier")
    }

    pub fn carrier(&self) -> Carrier {
        self.carrier
    }

    /// Carrier size, or `None` for countable carriers.
    pub fn size(&self) -> Option<u64> {
        self.carrier.size()
    }

    pub fn rule(&self) -> Option<Rule> {
        match self.family {
            Family::Rule(rule) => Some(rule),
            Family::Explicit { .. } => None,
        }
    }

    pub fn sigma(&self, x: u64) -> PartialBijection {
        match &self.family {
            Family::Explicit { sigma, .. } => sigma.get(x as usize).cloned().unwrap_or_default(),
            Family::Rule(rule) => rule.sigma(x),
        }
    }

    pub fn gamma(&self, y: u64) -> PartialBijection {
        match &self.family {
            Family::Explicit { gamma, .. } => gamma.get(y as usize).cloned().unwrap_or_default(),
            Family::Rule(rule) => rule.gamma(y),
        }
    }

    pub fn sigma_at(&self, x: u64, k: u64) -> Option<u64> {
        match &self.family {
            Family::Explicit { sigma, .. } => sigma.get(x as usize)?.apply(k),
            Family::Rule(rule) => rule.sigma_at(x, k),
        }
    }

    pub fn gamma_at(&self, y: u64, k: u64) -> Option<u64> {
        match &self.family {
            Family::Explicit { gamma, .. } => gamma.get(y as usize)?.apply(k),
            Family::Rule(rule) => rule.gamma_at(y, k),
        }
    }

    pub fn sigma_inv_at(&self, x: u64, k: u64) -> Option<u64> {
        match &self.family {
            Family::Explicit { sigma_inv, .. } => sigma_inv.get(x as usize)?.apply(k),
            Family::Rule(rule) => rule.sigma_inv_at(x, k),
        }
    }

    pub fn gamma_inv_at(&self, y: u64, k: u64) -> Option<u64> {
        match &self.family {
            Family::Explicit { gamma_inv, .. } => gamma_inv.get(y as usize)?.apply(k),
            Family::Rule(rule) => rule.gamma_inv_at(y, k),
        }
    }

    /// `(x, y) ∈ D`.
    pub fn in_domain(&self, x: u64, y: u64) -> bool {
        self.sigma_at(x, y).is_some() && self.gamma_at(y, x).is_some()
    }

    /// `r(x, y)`, or `None` outside `D`.
    pub fn r_apply(&self, x: u64, y: u64) -> Option<(u64, u64)> {
        Some((self.sigma_at(x, y)?, self.gamma_at(y, x)?))
    }

    /// Indices `0..bound`, clipped to the carrier.
    pub fn indices_below(&self, bound: u64) -> std::ops::Range<u64> {
        0..self.size().map_or(bound, |n| n.min(bound))
    }

    /// Pairs of `D` with both entries below `bound`, in lexicographic order.
    pub fn domain_pairs(&self, bound: u64) -> Vec<(u64, u64)> {
        let idx = self.indices_below(bound);
        idx.clone()
            .flat_map(|x| idx.clone().map(move |y| (x, y)))
            .filter(|&(x, y)| self.in_domain(x, y))
            .collect()
    }

    /// Explicit `σ` maps of a finite solution.
    pub fn sigma_maps(&self) -> Result<&[PartialBijection]> {
        match &self.family {
            Family::Explicit { sigma, .. } => Ok(sigma),
            Family::Rule(_) => Err(Error::NotFinite),
        }
    }

    /// Explicit `γ` maps of a finite solution.
    pub fn gamma_maps(&self) -> Result<&[PartialBijection]> {
        match &self.family {
            Family::Explicit { gamma, .. } => Ok(gamma),
            Family::Rule(_) => Err(Error::NotFinite),
        }
    }

    /// The solution induced on `subset` (listed in increasing order),
    /// relabelled to `0..subset.len()`: maps are restricted to the points
    /// whose argument and image both lie in the subset.
    pub fn induced(&self, subset: &[u64]) -> Result<PartialSolution> {
        let size = self.size().ok_or(Error::NotFinite)?;
        let mut label = vec![None; size as usize];
        for (i, &k) in subset.iter().enumerate() {
            if k >= size {
                return Err(Error::OutOfCarrier { index: k, size });
            }
            label[k as usize] = Some(i as u64);
        }
        let restrict = |m: &PartialBijection| {
            PartialBijection::from_pairs(
                m.pairs()
                    .into_iter()
                    .filter_map(|(a, b)| Some((label[a as usize]?, label[b as usize]?))),
            )
            .expect("restriction of an injective map")
        };
        let (sigma, gamma) = (self.sigma_maps()?, self.gamma_maps()?);
        PartialSolution::from_maps(
            subset.len() as u64,
            subset
                .iter()
                .map(|&k| restrict(&sigma[k as usize]))
                .collect(),
            subset
                .iter()
                .map(|&k| restrict(&gamma[k as usize]))
                .collect(),
        )
    }

    /// Transports the solution along the permutation `k ↦ perm[k]`.
    pub fn relabel(&self, perm: &[u64]) -> Result<PartialSolution> {
        let size = self.size().ok_or(Error::NotFinite)?;
        if perm.len() as u64 != size {
            return Err(Error::Parse {
                token: format!("{perm:?}"),
                message: format!("expected a permutation of 0..{size}"),
            });
        }
        let alpha =
            PartialBijection::from_pairs(perm.iter().enumerate().map(|(k, &v)| (k as u64, v)))?;
        let alpha_inv = alpha.invert();
        let transport = |maps: &[PartialBijection]| {
            let mut out = vec![PartialBijection::empty(); size as usize];
            for (k, m) in maps.iter().enumerate() {
                out[perm[k] as usize] = alpha.compose(m).compose(&alpha_inv);
            }
            out
        };
        PartialSolution::from_maps(
            size,
            transport(self.sigma_maps()?),
            transport(self.gamma_maps()?),
        )
    }
}
