//! Built-in example solutions.

use super::{load_str, PartialSolution};
use crate::algebra::{IndexSet, PartialBijection};
use crate::error::{Error, Result};

pub const EXAMPLE_NAMES: [&str; 4] = ["etingof4", "squarefree3", "trivial3", "thompson"];

const SQUAREFREE3: &str = include_str!("../../data/squarefree3.json");
const THOMPSON: &str = include_str!("../../data/thompson.json");

/// Looks up a built-in solution by name.
///
/// * `etingof4`: a total, indecomposable and irretractable solution on four
///   points (generators `x1..x4` stored as `0..3`).
/// * `squarefree3`: square-free partial solution on `{0, 1, 2}` with
///   `σ₂ = γ₂` the transposition of 0 and 1.
/// * `trivial3`: same domains as `squarefree3`, all maps identities.
/// * `thompson`: the countable solution whose structure group is Thompson's
///   group F.
pub fn example(name: &str) -> Result<PartialSolution> {
    match name {
        "etingof4" => Ok(etingof4()),
        "squarefree3" => load_str(SQUAREFREE3),
        "trivial3" => Ok(trivial3()),
        "thompson" => load_str(THOMPSON),
        other => Err(Error::UnknownExample(other.to_string())),
    }
}

/// A permutation of `0..n` from 1-based cycle notation.
fn cycles(n: u64, cs: &[&[u64]]) -> PartialBijection {
    let mut image: Vec<u64> = (0..n).collect();
    for c in cs {
        for (i, &a) in c.iter().enumerate() {
            image[(a - 1) as usize] = c[(i + 1) % c.len()] - 1;
        }
    }
    PartialBijection::from_pairs(image.into_iter().enumerate().map(|(k, v)| (k as u64, v)))
        .expect("cycles define a permutation")
}

fn etingof4() -> PartialSolution {
    // r(x_i, x_j) = (x_{g_i(j)}, x_{f_j(i)})
    let g = [
        cycles(4, &[&[2, 3]]),
        cycles(4, &[&[1, 4]]),
        cycles(4, &[&[1, 2, 4, 3]]),
        cycles(4, &[&[1, 3, 4, 2]]),
    ];
    let f = [
        cycles(4, &[&[2, 4]]),
        cycles(4, &[&[1, 3]]),
        cycles(4, &[&[1, 4, 3, 2]]),
        cycles(4, &[&[1, 2, 3, 4]]),
    ];
    PartialSolution::from_maps(4, g.to_vec(), f.to_vec()).expect("maps on four points")
}

fn trivial3() -> PartialSolution {
    let ids = [
        IndexSet::from_points([0, 2]),
        IndexSet::from_points([1, 2]),
        IndexSet::range(0, 3),
    ]
    .map(|d| PartialBijection::identity(&d));
    PartialSolution::from_maps(3, ids.to_vec(), ids.to_vec()).expect("maps on three points")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn squarefree3_relations() {
        let s = example("squarefree3").unwrap();
        assert_eq!(s.r_apply(0, 2), Some((2, 1)));
        assert_eq!(s.r_apply(2, 1), Some((0, 2)));
        assert_eq!(s.r_apply(1, 2), Some((2, 0)));
        assert_eq!(s.r_apply(2, 0), Some((1, 2)));
        assert_eq!(s.r_apply(0, 1), None);
        assert_eq!(
            s.domain_pairs(3),
            vec![(0, 0), (0, 2), (1, 1), (1, 2), (2, 0), (2, 1), (2, 2)]
        );
        assert_eq!(s.sigma(2).pairs(), vec![(0, 1), (1, 0), (2, 2)]);
    }

    #[test]
    fn trivial3_swaps() {
        let s = example("trivial3").unwrap();
        assert_eq!(s.r_apply(0, 2), Some((2, 0)));
        assert_eq!(s.r_apply(2, 1), Some((1, 2)));
        assert_eq!(
            s.domain_pairs(3),
            example("squarefree3").unwrap().domain_pairs(3)
        );
    }

    #[test]
    fn etingof4_is_total() {
        let s = example("etingof4").unwrap();
        assert_eq!(s.domain_pairs(4).len(), 16);
        // x1x2 = x3x3 and x2x1 = x4x4, 0-based
        assert_eq!(s.r_apply(0, 1), Some((2, 2)));
        assert_eq!(s.r_apply(1, 0), Some((3, 3)));
    }

    #[test]
    fn unknown_name() {
        assert_eq!(example("nope"), Err(Error::UnknownExample("nope".into())));
    }
}
