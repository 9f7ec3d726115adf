use std::collections::BTreeSet;

use partial_ybe::algebra::{
    restricted_inv, restricted_mul, IndexSet, PartialBijection, PartialIntFun,
};
use partial_ybe::cycle::{
    are_isomorphic, decompose, derive_cycle_set, is_isomorphism, retract, Partition2,
};
use partial_ybe::monoid::{
    letter_pi, pi, pi_trace, psi, sigma_of_word, Letter, MonoidWord, StructureMonoid,
};
use partial_ybe::reversing::{default_max_steps, reverse, ReversingOutcome};
use partial_ybe::solution::{
    example, load_str, save_string, verify, Axiom, PartialSolution, VerifyOptions,
};
use partial_ybe::thompson::{f_normal_form, f_words_equal, FWord};
use proptest::prelude::*;

fn partial_perm(n: u64) -> impl Strategy<Value = PartialBijection> {
    (
        Just((0..n).collect::<Vec<u64>>()).prop_shuffle(),
        prop::collection::vec(any::<bool>(), n as usize),
    )
        .prop_map(|(perm, keep)| {
            PartialBijection::from_pairs(
                (0..perm.len())
                    .filter(|&k| keep[k])
                    .map(|k| (k as u64, perm[k])),
            )
            .unwrap()
        })
}

fn random_solution(max: u64) -> impl Strategy<Value = PartialSolution> {
    (1..=max).prop_flat_map(|n| {
        (
            prop::collection::vec(partial_perm(n), n as usize),
            prop::collection::vec(partial_perm(n), n as usize),
        )
            .prop_map(move |(s, g)| PartialSolution::from_maps(n, s, g).unwrap())
    })
}

fn permutation(n: u64) -> impl Strategy<Value = Vec<u64>> {
    Just((0..n).collect::<Vec<u64>>()).prop_shuffle()
}

fn word(size: u64, max_len: usize) -> impl Strategy<Value = MonoidWord> {
    prop::collection::vec((0..size, any::<bool>()), 0..=max_len).prop_map(|ls| {
        MonoidWord::new(
            ls.into_iter()
                .map(|(i, p)| if p { Letter::plus(i) } else { Letter::star(i) })
                .collect(),
        )
    })
}

fn positive_word(size: u64, max_len: usize) -> impl Strategy<Value = MonoidWord> {
    prop::collection::vec(0..size, 0..=max_len).prop_map(MonoidWord::positive)
}

fn f_word(top: u64, max_len: usize) -> impl Strategy<Value = FWord> {
    prop::collection::vec((0..top, prop_oneof![Just(1i64), Just(-1i64)]), 0..=max_len)
        .prop_map(FWord::new)
}

/// Side-by-side copy of two finite solutions, the second shifted up.
fn disjoint_union(a: &PartialSolution, b: &PartialSolution) -> PartialSolution {
    let (na, nb) = (a.size().unwrap(), b.size().unwrap());
    let shifted = |m: &PartialBijection| {
        PartialBijection::from_pairs(m.pairs().into_iter().map(|(x, y)| (x + na, y + na))).unwrap()
    };
    let sigma = (0..na)
        .map(|x| a.sigma(x))
        .chain((0..nb).map(|x| shifted(&b.sigma(x))))
        .collect();
    let gamma = (0..na)
        .map(|y| a.gamma(y))
        .chain((0..nb).map(|y| shifted(&b.gamma(y))))
        .collect();
    PartialSolution::from_maps(na + nb, sigma, gamma).unwrap()
}

fn invariant(s: &PartialSolution, part: &[u64]) -> bool {
    let set: BTreeSet<u64> = part.iter().copied().collect();
    s.domain_pairs(s.size().unwrap())
        .into_iter()
        .filter(|(a, b)| set.contains(a) && set.contains(b))
        .all(|(a, b)| {
            let (c, d) = s.r_apply(a, b).unwrap();
            set.contains(&c) && set.contains(&d)
        })
}

fn total_solution(max: u64) -> impl Strategy<Value = PartialSolution> {
    (1..=max).prop_flat_map(|n| {
        let perm = move || {
            permutation(n).prop_map(|p| {
                PartialBijection::from_pairs(p.into_iter().enumerate().map(|(k, v)| (k as u64, v)))
                    .unwrap()
            })
        };
        (
            prop::collection::vec(perm(), n as usize),
            prop::collection::vec(perm(), n as usize),
        )
            .prop_map(move |(s, g)| PartialSolution::from_maps(n, s, g).unwrap())
    })
}

/// `r₁₂ r₂₃ r₁₂ = r₂₃ r₁₂ r₂₃` on every triple of a total solution.
fn braid_relation_holds(s: &PartialSolution) -> bool {
    let n = s.size().unwrap();
    let r = |x, y| s.r_apply(x, y).unwrap();
    let r12 = |(x, y, z): (u64, u64, u64)| {
        let (a, b) = r(x, y);
        (a, b, z)
    };
    let r23 = |(x, y, z): (u64, u64, u64)| {
        let (b, c) = r(y, z);
        (x, b, c)
    };
    (0..n).all(|x| {
        (0..n).all(|y| (0..n).all(|z| r12(r23(r12((x, y, z)))) == r23(r12(r23((x, y, z))))))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn involutive_solutions_square_to_the_identity(s in random_solution(4), perm_seed in any::<usize>()) {
        let mut cases = vec![s];
        for name in ["squarefree3", "trivial3", "etingof4"] {
            let e = example(name).unwrap();
            let n = e.size().unwrap();
            let mut perm: Vec<u64> = (0..n).collect();
            perm.rotate_left(perm_seed % n as usize);
            cases.push(e.relabel(&perm).unwrap());
        }
        for s in cases {
            if !verify(&s, Axiom::Involutive, &VerifyOptions::default()).unwrap().holds {
                continue;
            }
            for (x, y) in s.domain_pairs(s.size().unwrap()) {
                let (a, b) = s.r_apply(x, y).unwrap();
                prop_assert_eq!(s.r_apply(a, b), Some((x, y)));
                prop_assert_eq!(Some(b), s.sigma_inv_at(a, x));
            }
        }
    }

    #[test]
    fn verify_is_window_monotone(s in random_solution(5)) {
        let n = s.size().unwrap();
        for axiom in Axiom::ALL {
            let mut failed = false;
            for w in 1..=n {
                let holds = verify(&s, axiom, &VerifyOptions::window(w)).unwrap().holds;
                prop_assert!(!(failed && holds), "{axiom} fails below window {w} but holds at it");
                failed |= !holds;
            }
        }
    }

    #[test]
    fn total_solutions_match_the_classical_axioms(s in total_solution(4)) {
        let n = s.size().unwrap();
        let braided = verify(&s, Axiom::Braided, &VerifyOptions::default()).unwrap();
        prop_assert_eq!(braided.holds, braid_relation_holds(&s));
        prop_assert_eq!(braided.skipped, 0);
        let involutive = (0..n).all(|x| (0..n).all(|y| {
            let (a, b) = s.r_apply(x, y).unwrap();
            s.r_apply(a, b) == Some((x, y))
        }));
        prop_assert_eq!(verify(&s, Axiom::Involutive, &VerifyOptions::default()).unwrap().holds, involutive);
        prop_assert!(verify(&s, Axiom::NonDegenerate, &VerifyOptions::default()).unwrap().holds);
        let square_free = (0..n).all(|x| s.r_apply(x, x) == Some((x, x)));
        prop_assert_eq!(verify(&s, Axiom::SquareFree, &VerifyOptions::default()).unwrap().holds, square_free);
    }

    #[test]
    fn index_set_image_is_range_of_restriction(m in partial_perm(8), keep in prop::collection::vec(0u64..8, 0..8)) {
        let set = IndexSet::from_points(keep);
        prop_assert_eq!(m.image(&set), m.restrict(&set).range());
        prop_assert!(m.image(&set).is_subset(&m.range()));
    }

    #[test]
    fn witness_present_iff_axiom_fails(s in random_solution(4)) {
        for axiom in Axiom::ALL {
            let r = verify(&s, axiom, &VerifyOptions::default()).unwrap();
            prop_assert_eq!(r.holds, r.witness.is_none());
        }
    }

    #[test]
    fn documents_round_trip(s in random_solution(5)) {
        prop_assert_eq!(load_str(&save_string(&s)).unwrap(), s);
    }

    #[test]
    fn d_is_derived_from_the_maps(s in random_solution(4)) {
        let n = s.size().unwrap();
        for x in 0..n {
            for y in 0..n {
                let expect = s.sigma(x).apply(y).is_some() && s.gamma(y).apply(x).is_some();
                prop_assert_eq!(s.in_domain(x, y), expect);
            }
        }
    }

    #[test]
    fn pi_trace_increments_sum_to_pi(w in word(3, 7)) {
        let s = example("squarefree3").unwrap();
        let t = pi_trace(&s, &w).unwrap();
        let mut acc = PartialIntFun::zero(IndexSet::range(0, 3));
        for step in &t.steps {
            let raw = letter_pi(&s, step.letter).unwrap();
            prop_assert_eq!(&step.increment, &PartialIntFun::act(&step.prefix_sigma, &raw));
            acc = acc.add(&step.increment);
        }
        prop_assert_eq!(acc, pi(&s, &w).unwrap());
        prop_assert_eq!(&t.sigma, &sigma_of_word(&s, &w));
    }

    #[test]
    fn psi_is_a_homomorphism_on_thompson(u in word(8, 5), v in word(8, 5)) {
        let s = PartialSolution::thompson();
        let (pu, pv) = (psi(&s, &u).unwrap(), psi(&s, &v).unwrap());
        prop_assert_eq!(psi(&s, &u.concat(&v)).unwrap(), restricted_mul(&pu, &pv));
        prop_assert_eq!(psi(&s, &u.star()).unwrap(), restricted_inv(&pu));
        prop_assert!(pu.satisfies_membership_law());
    }

    #[test]
    fn closed_reversing_is_sound_on_squarefree3(w1 in word(3, 4), w2 in word(3, 4)) {
        let s = example("squarefree3").unwrap();
        let m = StructureMonoid::new(&s).unwrap();
        if let ReversingOutcome::Closed { u, v, diagram } = reverse(&s, &w1, &w2, default_max_steps(&w1, &w2)) {
            prop_assert!(diagram.replay());
            prop_assert!(m.words_equal(&w1.concat(&u), &w2.concat(&v)).unwrap());
        }
    }

    #[test]
    fn closed_reversing_is_sound_on_etingof4_positive(w1 in positive_word(4, 4), w2 in positive_word(4, 4)) {
        let s = example("etingof4").unwrap();
        if let ReversingOutcome::Closed { u, v, diagram } = reverse(&s, &w1, &w2, default_max_steps(&w1, &w2)) {
            prop_assert!(diagram.replay());
            // ψ is not injective here, but it is well defined
            prop_assert_eq!(psi(&s, &w1.concat(&u)).unwrap(), psi(&s, &w2.concat(&v)).unwrap());
        }
    }

    #[test]
    fn cycle_set_rows_are_partial_bijections(s in random_solution(4)) {
        let c = derive_cycle_set(&s);
        let n = s.size().unwrap();
        for x in 0..n {
            let pairs: Vec<(u64, u64)> = (0..n).filter_map(|y| c.star(x, y).map(|z| (y, z))).collect();
            prop_assert!(PartialBijection::from_pairs(pairs).is_ok());
        }
    }

    #[test]
    fn retraction_stabilises(s in random_solution(4)) {
        let mut current = s;
        // each strict step shrinks the carrier, so four steps suffice
        for _ in 0..5 {
            let Ok(next) = retract(&current) else { break };
            if next.solution.size() == current.size() {
                let again = retract(&next.solution).unwrap();
                prop_assert_eq!(again.solution.size(), current.size());
                break;
            }
            current = next.solution;
        }
    }

    #[test]
    fn relabelled_solutions_are_isomorphic(s in random_solution(5), seed in any::<u64>()) {
        let n = s.size().unwrap() as usize;
        let mut perm: Vec<u64> = (0..n as u64).collect();
        perm.rotate_left(seed as usize % n);
        let t = s.relabel(&perm).unwrap();
        prop_assert!(is_isomorphism(&s, &t, &perm));
        let found = are_isomorphic(&s, &t, 8).unwrap();
        prop_assert!(found.is_some());
        prop_assert!(is_isomorphism(&s, &t, &found.unwrap()));
    }

    #[test]
    fn decomposition_parts_are_invariant(perm in permutation(5)) {
        let u = disjoint_union(&example("squarefree3").unwrap(), &PartialSolution::trivial_total(2));
        let s = u.relabel(&perm).unwrap();
        let Partition2 { first, second } = decompose(&s, 12).unwrap().expect("a disjoint union splits");
        prop_assert_eq!(first.len() + second.len(), 5);
        prop_assert!(invariant(&s, &first) && invariant(&s, &second));
    }

    #[test]
    fn thompson_sigma_inverse_closed_form(n in 0u64..40, k in 0u64..60) {
        let s = PartialSolution::thompson();
        let inv = s.sigma(n).invert();
        prop_assert_eq!(inv.apply(k), Some(if k <= n { k } else { k + 1 }));
        prop_assert_eq!(s.sigma_inv_at(n, k), inv.apply(k));
    }

    #[test]
    fn normal_forms_are_reduced_and_stable(w in f_word(6, 10)) {
        let nf = f_normal_form(&w);
        prop_assert!(nf.is_reduced());
        prop_assert_eq!(f_normal_form(&nf.to_word()), nf.clone());
        prop_assert!(f_normal_form(&w.concat(&w.inverse())).is_identity());
    }

    #[test]
    fn normal_form_is_multiplicative(u in f_word(6, 8), v in f_word(6, 8)) {
        let joined = f_normal_form(&u).to_word().concat(&f_normal_form(&v).to_word());
        prop_assert_eq!(f_normal_form(&u.concat(&v)), f_normal_form(&joined));
    }

    /// Applying one defining relation `x_n x_k = x_k x_{n+1}` (or a
    /// consequence for inverse letters) anywhere leaves the normal form alone.
    #[test]
    fn normal_form_ignores_one_relation(
        prefix in f_word(6, 5),
        suffix in f_word(6, 5),
        k in 0u64..6,
        gap in 1u64..4,
        shape in 0usize..4,
    ) {
        let n = k + gap;
        type Pair = [(u64, i64); 2];
        let (lhs, rhs): (Pair, Pair) = match shape {
            0 => ([(n, 1), (k, 1)], [(k, 1), (n + 1, 1)]),
            1 => ([(k, -1), (n, 1)], [(n + 1, 1), (k, -1)]),
            2 => ([(n, -1), (k, 1)], [(k, 1), (n + 1, -1)]),
            _ => ([(k, -1), (n, -1)], [(n + 1, -1), (k, -1)]),
        };
        let a = prefix.concat(&FWord::new(lhs)).concat(&suffix);
        let b = prefix.concat(&FWord::new(rhs)).concat(&suffix);
        prop_assert!(f_words_equal(&a, &b));
    }
}

/// Group equality in F is compared with ψ-equality on the Thompson
/// solution. Both directions can disagree, so the mismatches are counted.
#[test]
fn psi_equality_against_group_equality() {
    use rand::{Rng, SeedableRng};
    let s = PartialSolution::thompson();
    let m = StructureMonoid::new(&s).unwrap();
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
    let to_f = |w: &MonoidWord| FWord::new(w.letters().iter().map(|l| (l.index, 1)));
    let (mut both, mut group_only, mut psi_only) = (0, 0, 0);
    for _ in 0..400 {
        let len = rng.gen_range(1..=4);
        let u = MonoidWord::positive((0..len).map(|_| rng.gen_range(0..6)));
        // half the time compare against the F normal form of u
        let v = if rng.gen_bool(0.5) {
            let (i, j) = (rng.gen_range(0..len), rng.gen_range(0..len));
            let mut letters: Vec<u64> = u.letters().iter().map(|l| l.index).collect();
            letters.swap(i, j);
            MonoidWord::positive(letters)
        } else {
            let nf = f_normal_form(&to_f(&u)).to_word();
            MonoidWord::positive(nf.letters().map(|(i, _)| i))
        };
        match (
            m.words_equal(&u, &v).unwrap(),
            f_words_equal(&to_f(&u), &to_f(&v)),
        ) {
            (true, true) => both += 1,
            (false, true) => group_only += 1,
            (true, false) => psi_only += 1,
            (false, false) => {}
        }
    }
    println!("equal in both: {both}, only in F: {group_only}, only under ψ: {psi_only}");
    assert!(both > 0);
}

/// ψ does not separate these two words although they differ in F
/// (x0x1x5x0 = x0x0x2x6 and x0x0x5x1 = x0x0x1x6).
#[test]
fn psi_identifies_distinct_group_elements_on_thompson() {
    let s = PartialSolution::thompson();
    let (u, v): (MonoidWord, MonoidWord) = ("0 1 5 0".parse().unwrap(), "0 0 5 1".parse().unwrap());
    assert_eq!(psi(&s, &u).unwrap(), psi(&s, &v).unwrap());
    let f = |t: &str| t.parse::<FWord>().unwrap();
    assert!(!f_words_equal(&f("0 1 5 0"), &f("0 0 5 1")));
}

#[test]
fn etingof4_satisfies_the_braid_relation() {
    let e = example("etingof4").unwrap();
    assert!(braid_relation_holds(&e));
    assert!(
        verify(&e, Axiom::Braided, &VerifyOptions::default())
            .unwrap()
            .holds
    );
}
