use std::collections::HashSet;

use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use proptest::prelude::*;
use rayon::prelude::*;

use hstrata::enumeration::{diagram_for_restricted, enum_cauchon, poly_bernoulli, tally_dimensions};
use hstrata::genfunc::{asymptotic_proportion, h_closed, CountingFormula};
use hstrata::linalg::{build_md, kernel_basis_from_cycles, phi_map, psi_map, ExactVector};
use hstrata::pipes::{is_restricted, toric_endpoints, toric_perm_traced};
use hstrata::verify::{check_gluing, shapes_up_to};
use hstrata::{omega, toric_perm, trace_sigma, Diagram, Method, Permutation};

fn from_cycles(size: usize, cycles: &[&[usize]]) -> Permutation {
    let mut images: Vec<usize> = (1..=size).collect();
    for c in cycles {
        for (i, &x) in c.iter().enumerate() {
            images[x - 1] = c[(i + 1) % c.len()];
        }
    }
    Permutation::from_one_based(&images).unwrap()
}

fn diagram_strategy(max_side: usize) -> impl Strategy<Value = Diagram> {
    (1..=max_side, 1..=max_side).prop_flat_map(|(m, n)| {
        (0..1u64 << (m * n)).prop_map(move |mask| Diagram::from_mask(m, n, mask).unwrap())
    })
}

proptest! {
    #[test]
    fn transpose_preserves_cauchon_and_dimension(d in diagram_strategy(5)) {
        let t = d.transpose();
        prop_assert_eq!(t.transpose(), d.clone());
        prop_assert_eq!(d.is_cauchon(), t.is_cauchon());
        prop_assert_eq!(Method::Kernel.dimension(&d), Method::Kernel.dimension(&t));
        prop_assert_eq!(Method::Cycles.dimension(&d), Method::Cycles.dimension(&t));
    }

    #[test]
    fn toric_trace_is_sigma_after_omega_inverse(d in diagram_strategy(6)) {
        let sigma = trace_sigma(&d);
        prop_assert!(is_restricted(&sigma, d.rows(), d.cols()).unwrap());
        let composed = sigma.compose(&omega(d.rows(), d.cols()).inverse()).unwrap();
        prop_assert_eq!(toric_perm_traced(&d), composed);
    }

    #[test]
    fn odd_cycle_parity_matches_white_count(d in diagram_strategy(6)) {
        let odd = toric_perm(&d).cycles().odd_cycle_count();
        prop_assert_eq!(odd % 2, d.white_count() % 2);
        prop_assert!(build_md(&d.white_labeling()).is_skew_symmetric());
    }

    #[test]
    fn text_round_trip(d in diagram_strategy(6)) {
        prop_assert_eq!(Diagram::parse(&d.to_text()).unwrap(), d.clone());
        let json = serde_json::to_string(&d).unwrap();
        prop_assert_eq!(serde_json::from_str::<Diagram>(&json).unwrap(), d);
    }
}

/// Restricted permutations of `[m+n]`, counted by backtracking.
fn count_restricted(m: usize, n: usize) -> u64 {
    fn go(i: usize, k: usize, m: usize, n: usize, used: &mut [bool]) -> u64 {
        if i == k {
            return 1;
        }
        let lo = i.saturating_sub(n);
        let hi = (i + m).min(k - 1);
        let mut total = 0;
        for j in lo..=hi {
            if !used[j] {
                used[j] = true;
                total += go(i + 1, k, m, n, used);
                used[j] = false;
            }
        }
        total
    }
    go(0, m + n, m, n, &mut vec![false; m + n])
}

#[test]
fn cauchon_diagrams_biject_onto_restricted_permutations() {
    for (m, n) in shapes_up_to(8) {
        let sigmas: HashSet<Permutation> = enum_cauchon(m, n).unwrap().map(|d| trace_sigma(&d)).collect();
        let b = poly_bernoulli(m, n);
        assert_eq!(BigUint::from(sigmas.len()), b, "{m}x{n}: pipe dreams not injective");
        assert_eq!(BigUint::from(count_restricted(m, n)), b, "{m}x{n}: restricted census");
        assert!(sigmas.iter().all(|s| is_restricted(s, m, n).unwrap()));
    }
}

#[test]
fn gluing_holds_for_every_diagram_up_to_sixteen_cells() {
    for (m, n) in shapes_up_to(16) {
        let bad = (0..1u64 << (m * n))
            .into_par_iter()
            .find_map_any(|mask| check_gluing(&Diagram::from_mask(m, n, mask).unwrap()).err());
        assert_eq!(bad, None);
    }
}

#[test]
fn tallies_are_symmetric_in_the_shape() {
    for (m, n) in shapes_up_to(12) {
        if m < n {
            assert_eq!(
                tally_dimensions(m, n, Method::Cycles).unwrap().counts(),
                tally_dimensions(n, m, Method::Kernel).unwrap().counts()
            );
        }
    }
}

#[test]
fn closed_form_symmetry_and_totals() {
    for m in 1..=6 {
        for n in 1..=6 {
            for d in 0..=7 {
                assert_eq!(h_closed(m, n, d).unwrap(), h_closed(n, m, d).unwrap(), "h({m},{n},{d})");
            }
        }
    }
    for m in 1..=8 {
        let f = CountingFormula::new(m).unwrap();
        for n in 1..=8 {
            let total: BigUint = f.h_all(n).unwrap().iter().sum();
            assert_eq!(total, poly_bernoulli(m, n), "sum over d of h({m},{n},d)");
            assert!(f.h(n, m.min(n) + 1).unwrap().is_zero());
        }
    }
}

#[test]
fn lookup_inverts_pipe_dreams() {
    for (m, n) in [(1, 4), (2, 3), (3, 2), (3, 3)] {
        for d in enum_cauchon(m, n).unwrap() {
            let found = diagram_for_restricted(&trace_sigma(&d), m, n).unwrap();
            assert_eq!(found.as_ref(), Some(&d));
        }
    }
}

#[test]
fn asymptotic_gap_shrinks() {
    for m in 1..=3 {
        let f = CountingFormula::new(m).unwrap();
        for d in 0..=m {
            let limit = asymptotic_proportion(m, d).unwrap();
            let gaps: Vec<BigRational> = (1..=40)
                .map(|n| {
                    let ratio = BigRational::new(f.h(n, d).unwrap().into(), poly_bernoulli(m, n).into());
                    (ratio - &limit).abs()
                })
                .collect();
            for w in gaps[9..].windows(2) {
                assert!(w[1] <= w[0], "m={m} d={d}: gap grew");
            }
            assert!(gaps[39] < BigRational::new(1.into(), 1000.into()));
        }
    }
}

fn v(xs: &[i64]) -> ExactVector {
    ExactVector::from_integers(xs)
}

/// The 7-label example: σ = (1 2)(3 4 7 5) with τ = (1 3 5)(2 6 4)(7).
#[test]
fn seven_label_example_is_consistent() {
    let sigma = from_cycles(7, &[&[1, 2], &[3, 4, 7, 5]]);
    let tau = from_cycles(7, &[&[1, 3, 5], &[2, 6, 4]]);
    let mut found = Vec::new();
    for m in 1..7 {
        let n = 7 - m;
        if let Some(d) = diagram_for_restricted(&sigma, m, n).unwrap() {
            found.push((m, n, d.to_text(), toric_perm(&d)));
        }
    }
    let hit: Vec<_> = found.iter().filter(|(_, _, _, t)| *t == tau).collect();
    assert_eq!(hit.len(), 1, "{found:?}");
    assert_eq!((hit[0].0, hit[0].1, hit[0].2.as_str()), (3, 4, "#.##\n...#\n#..#"));
}

/// The 8-label, 10-square example with τ = (1 4 8 7 2 6)(3 5). The diagram
/// is pinned down by search over every coloring; it is not Cauchon, which the
/// kernel isomorphism does not need.
#[test]
fn eight_label_example_maps() {
    let tau = from_cycles(8, &[&[1, 4, 8, 7, 2, 6], &[3, 5]]);
    let matches: Vec<Diagram> = (1..8usize)
        .flat_map(|m| (0..1u64 << (m * (8 - m))).map(move |mask| Diagram::from_mask(m, 8 - m, mask).unwrap()))
        .filter(|d| d.white_count() == 10 && toric_perm(d) == tau)
        .filter(|d| {
            let lab = d.white_labeling();
            let ends = |s: usize| toric_endpoints(d, &lab, s - 1).map(|(l, u)| (l + 1, u + 1)).unwrap();
            let r = lab.regions(4).unwrap();
            let one = |xs: &[usize]| xs.iter().map(|x| x + 1).collect::<Vec<_>>();
            ends(7) == (4, 7)
                && ends(8) == (7, 6)
                && one(r.above) == [2]
                && one(r.right).is_empty()
                && one(r.below) == [6, 9]
                && one(r.left) == [4]
        })
        .collect();
    assert_eq!(matches.len(), 1, "{matches:?}");
    let d = &matches[0];
    assert_eq!(d.to_text(), "..#.\n..##\n#...\n#..#");
    assert!(!d.is_cauchon());
    let lab = d.white_labeling();

    let basis = kernel_basis_from_cycles(&tau.cycles());
    assert_eq!(basis, vec![v(&[1, 1, 0, -1, 0, -1, -1, 1]), v(&[0, 0, 1, 0, -1, 0, 0, 0])]);

    let w = phi_map(d, &lab, &basis[0]).unwrap();
    assert_eq!(w, v(&[-1, 1, -2, 1, -1, 2, 0, 0, 0, 2]));
    let u = psi_map(d, &lab, &w).unwrap();
    assert_eq!(u, v(&[-2, -2, 0, 2, 0, 2, 2, -2]));
    assert_eq!(build_md(&lab).kernel_dim().unwrap(), 2);
}
