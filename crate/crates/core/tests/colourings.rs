mod common;

use std::collections::HashSet;

use common::*;
use proptest::prelude::*;
use racolour::colouring::{
    canonical_form, equivalent, extend_colouring_generic, from_k_colouring, image_dimension, induced_colouring,
    is_orientable, is_proper, non_orientability_witness, Colouring,
};
use racolour::f2::{gf2_rank, parity, span, F2Vector};
use racolour::polytope::{make_120cell, make_dodecahedron, make_polygon, symmetry_group};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

#[test]
fn rank_matches_span_closure() {
    let mut rng = StdRng::seed_from_u64(1);
    for _ in 0..200 {
        let vs: Vec<F2Vector> = (0..20).map(|_| rng.gen_range(0..32)).collect();
        // closure by repeated sums, independent of any elimination
        let mut closure: HashSet<F2Vector> = HashSet::from([0]);
        for &v in &vs {
            let shifted: Vec<F2Vector> = closure.iter().map(|&x| x ^ v).collect();
            closure.extend(shifted);
        }
        let r = gf2_rank(&vs);
        assert_eq!(1usize << r, closure.len());
        assert_eq!(span(&vs).len(), closure.len());
        assert_eq!(r, naive_rank(&vs));
    }
}

#[test]
fn four_colouring_of_the_dodecahedron() {
    let d = make_dodecahedron();
    let four = from_k_colouring(&d, 4, &FOUR_COLOURING).unwrap();
    assert!(is_proper(&d, &four));
    assert_eq!(image_dimension(&four), 4);
    assert!(is_orientable(&d, &four).unwrap().is_some());
    let reduced = four.map_linear(&[1, 2, 4, 7], 3).unwrap();
    assert!(is_proper(&d, &reduced));
    assert_eq!(image_dimension(&reduced), 3);
    assert_eq!(is_orientable(&d, &reduced).unwrap().unwrap().0, 0b111);
    assert!(naive_proper(&d, reduced.colours()));
}

#[test]
fn five_colouring_of_the_120cell() {
    let z = make_120cell();
    let group = symmetry_group(&z);
    let count = racolour::search::enumerate_chromatic_colourings(&z, &group, 5, &Default::default()).unwrap();
    let lambda = from_k_colouring(&z, 5, &count.representatives[0]).unwrap();
    assert!(is_proper(&z, &lambda));
    assert_eq!(image_dimension(&lambda), 5);
    assert!(is_orientable(&z, &lambda).unwrap().is_some());
}

#[test]
fn generic_extension_ranks() {
    let z = make_120cell();
    let d = make_dodecahedron();
    let (sub, _) = z.facet_subpolytope(0).unwrap();
    let mut rng = StdRng::seed_from_u64(2);
    let mu = random_proper(&sub, 3, &mut rng);
    let ext = extend_colouring_generic(&z, 0, &mu).unwrap();
    assert_eq!(ext.rank(), 1 + 3 + 107);
    assert!(is_proper(&z, &ext));
    assert!(ext.colours().iter().all(|&c| parity(c) == 1));

    let (pent, _) = d.facet_subpolytope(0).unwrap();
    let nu = random_proper(&pent, 2, &mut rng);
    assert_eq!(extend_colouring_generic(&d, 0, &nu).unwrap().rank(), 1 + 2 + 6);
}

/// Orientability as defined by the basis criterion: some invertible map
/// makes every colour odd.
fn orientable_by_brute_force(lambda: &Colouring) -> bool {
    invertible_maps(lambda.rank())
        .iter()
        .any(|g| lambda.colours().iter().all(|&c| parity(apply(g, c)) == 1))
}

#[test]
fn orientability_lemma_against_brute_force() {
    let mut rng = StdRng::seed_from_u64(3);
    let d = make_dodecahedron();
    let pent = make_polygon(5);
    let hex = make_polygon(6);
    let mut seen = [0usize; 2];
    for i in 0..300 {
        let (p, s) = match i % 4 {
            0 => (&pent, 2),
            1 => (&hex, 3),
            2 => (&pent, 3),
            _ => (&d, 3),
        };
        let lambda = random_proper(p, s, &mut rng);
        let fast = is_orientable(p, &lambda).unwrap().is_some();
        assert_eq!(fast, orientable_by_brute_force(&lambda), "{:?}", lambda.colours());
        if non_orientability_witness(p, &lambda).is_some() {
            assert!(!fast);
        }
        seen[fast as usize] += 1;
    }
    assert!(seen[0] > 0 && seen[1] > 0);
}

#[test]
fn extend_then_induce_is_the_identity_class() {
    let mut rng = StdRng::seed_from_u64(4);
    let d = make_dodecahedron();
    let z = make_120cell();
    let (sub, _) = z.facet_subpolytope(7).unwrap();
    let sub_group = symmetry_group(&sub);
    for i in 0..100 {
        let (p, f) = if i % 2 == 0 { (&d, i % 12) } else { (&z, 7) };
        let (face, _) = p.facet_subpolytope(f).unwrap();
        let group = if i % 2 == 0 {
            symmetry_group(&face)
        } else {
            sub_group.clone()
        };
        let s = 3 + (i % 3) / 2;
        let lambda = random_proper(&face, s, &mut rng);
        let ext = extend_colouring_generic(p, f, &lambda).unwrap();
        assert!(is_proper(p, &ext));
        assert!(is_orientable(p, &ext).unwrap().is_some());
        let (_, back) = induced_colouring(p, f, &ext).unwrap();
        assert!(is_proper(&face, &back));
        assert!(equivalent(&face, &group, &back, &lambda));
    }
}

#[test]
fn image_dimension_is_at_least_the_dimension() {
    let mut rng = StdRng::seed_from_u64(5);
    let d = make_dodecahedron();
    for s in 3..7 {
        let lambda = random_proper(&d, s, &mut rng);
        assert!(image_dimension(&lambda) >= 3);
    }
}

#[test]
fn induced_colourings_stay_proper() {
    let mut rng = StdRng::seed_from_u64(6);
    let d = make_dodecahedron();
    for _ in 0..50 {
        let lambda = random_proper(&d, 4, &mut rng);
        for f in 0..12 {
            let (face, mu) = induced_colouring(&d, f, &lambda).unwrap();
            assert!(naive_proper(&face, mu.colours()));
        }
    }
}

#[test]
fn every_chromatic_colouring_is_orientable() {
    let d = make_dodecahedron();
    let group = symmetry_group(&d);
    for sigma in group.perms().iter().step_by(7) {
        let assignment: Vec<usize> = sigma.iter().map(|&f| FOUR_COLOURING[f]).collect();
        let lambda = from_k_colouring(&d, 4, &assignment).unwrap();
        assert!(is_orientable(&d, &lambda).unwrap().is_some());
    }
}

#[test]
fn orientable_and_non_orientable_are_never_equivalent() {
    let d = make_dodecahedron();
    let group = symmetry_group(&d);
    let orientable = from_k_colouring(&d, 4, &FOUR_COLOURING)
        .unwrap()
        .map_linear(&[1, 2, 4, 7], 3)
        .unwrap();
    let mut rng = StdRng::seed_from_u64(7);
    let mut compared = 0;
    while compared < 20 {
        let lambda = random_proper(&d, 3, &mut rng);
        if image_dimension(&lambda) == 3 && is_orientable(&d, &lambda).unwrap().is_none() {
            assert!(!equivalent(&d, &group, &orientable, &lambda));
            compared += 1;
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn canonical_form_ignores_symmetry_and_basis(seed in any::<u64>(), k in 0usize..120) {
        let mut rng = StdRng::seed_from_u64(seed);
        let d = make_dodecahedron();
        let group = symmetry_group(&d);
        let lambda = random_proper(&d, 4, &mut rng);
        let g = random_invertible(4, &mut rng);
        let moved = lambda.map_linear(&g, 4).unwrap().permute(&group.perms()[k]);
        prop_assert_eq!(canonical_form(&d, &group, &lambda), canonical_form(&d, &group, &moved));
        prop_assert!(equivalent(&d, &group, &moved, &lambda));
        prop_assert_eq!(
            is_orientable(&d, &moved).unwrap().is_some(),
            is_orientable(&d, &lambda).unwrap().is_some()
        );
    }

    #[test]
    fn equivalence_is_transitive(seed in any::<u64>()) {
        let mut rng = StdRng::seed_from_u64(seed);
        let d = make_dodecahedron();
        let group = symmetry_group(&d);
        let a = random_proper(&d, 3, &mut rng);
        let b = random_proper(&d, 3, &mut rng);
        let c = random_proper(&d, 3, &mut rng);
        prop_assert!(equivalent(&d, &group, &a, &a));
        prop_assert_eq!(equivalent(&d, &group, &a, &b), equivalent(&d, &group, &b, &a));
        if equivalent(&d, &group, &a, &b) && equivalent(&d, &group, &b, &c) {
            prop_assert!(equivalent(&d, &group, &a, &c));
        }
    }

    #[test]
    fn different_image_dimensions_differ(seed in any::<u64>()) {
        let mut rng = StdRng::seed_from_u64(seed);
        let d = make_dodecahedron();
        let group = symmetry_group(&d);
        let a = random_proper(&d, 5, &mut rng);
        let b = random_proper(&d, 3, &mut rng);
        if image_dimension(&a) != image_dimension(&b) {
            prop_assert_ne!(canonical_form(&d, &group, &a), canonical_form(&d, &group, &b));
        }
    }
}
