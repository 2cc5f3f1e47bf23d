mod common;

use std::collections::HashSet;

use common::*;
use racolour::colouring::{equivalent, from_k_colouring, is_orientable, is_proper, spans, Colouring};
use racolour::f2::{parity, F2Vector};
use racolour::polytope::{make_dodecahedron, make_polygon, symmetry_group, Polytope};
use racolour::search::{
    enumerate_chromatic_colourings, enumerate_small_covers, search_orientable_extension, seed_from_facet,
    seed_from_facet_with_rank, ExtensionStatus, SearchBudget,
};
use rand::rngs::StdRng;
use rand::SeedableRng;

/// Dihedral action on the edges of a k-gon, built independently of the
/// library's symmetry search.
fn dihedral(k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    for r in 0..k {
        out.push((0..k).map(|i| (i + r) % k).collect());
        out.push((0..k).map(|i| (r + k - i) % k).collect());
    }
    out
}

/// Every assignment of values `1..=q` to the edges of a k-gon with adjacent
/// edges different.
fn cyclic_assignments(k: usize, q: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let total = q.pow(k as u32);
    for mut code in 0..total {
        let mut a = Vec::with_capacity(k);
        for _ in 0..k {
            a.push(code % q + 1);
            code /= q;
        }
        if (0..k).all(|i| a[i] != a[(i + 1) % k]) {
            out.push(a);
        }
    }
    out
}

/// Orbits of small covers of a polygon: values are the three nonzero vectors
/// of F₂², which GL(2, 2) permutes arbitrarily.
fn polygon_small_cover_orbits(k: usize) -> (usize, usize) {
    let perms3 = [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];
    let mut orbits: HashSet<Vec<usize>> = HashSet::new();
    let mut orientable = 0;
    for a in cyclic_assignments(k, 3) {
        let mut best: Option<Vec<usize>> = None;
        for sigma in dihedral(k) {
            for g in &perms3 {
                let image: Vec<usize> = (0..k).map(|i| g[a[sigma[i]] - 1]).collect();
                if best.as_ref().is_none_or(|b| image < *b) {
                    best = Some(image);
                }
            }
        }
        if orbits.insert(best.unwrap()) {
            // orientable iff some basis makes all colours odd: needs no e₁+e₂
            // in that basis, i.e. at most two distinct values
            let distinct: HashSet<usize> = a.iter().copied().collect();
            orientable += (distinct.len() == 2) as usize;
        }
    }
    (orbits.len(), orientable)
}

#[test]
fn polygon_small_covers_match_exhaustive_count() {
    for k in [4, 5, 6, 7] {
        let p = make_polygon(k);
        let result = enumerate_small_covers(&p, &symmetry_group(&p), &SearchBudget::default()).unwrap();
        let (orbits, orientable) = polygon_small_cover_orbits(k);
        assert_eq!(result.classes.len(), orbits, "{k}-gon");
        assert_eq!(result.orientable_count(), orientable, "{k}-gon");
        assert!(result.stats.complete);
    }
}

fn chromatic_orbits(k: usize, q: usize) -> usize {
    let mut orbits: HashSet<Vec<usize>> = HashSet::new();
    for a in cyclic_assignments(k, q) {
        let mut best: Option<Vec<usize>> = None;
        for sigma in dihedral(k) {
            let moved: Vec<usize> = (0..k).map(|i| a[sigma[i]]).collect();
            // first-appearance relabelling quotients by colour permutations
            let mut names = vec![0; q + 1];
            let mut next = 0;
            let relabelled: Vec<usize> = moved
                .iter()
                .map(|&c| {
                    if names[c] == 0 {
                        next += 1;
                        names[c] = next;
                    }
                    names[c]
                })
                .collect();
            if best.as_ref().is_none_or(|b| relabelled < *b) {
                best = Some(relabelled);
            }
        }
        orbits.insert(best.unwrap());
    }
    orbits.len()
}

#[test]
fn polygon_chromatic_counts_match_exhaustive_count() {
    for (k, q) in [(5, 3), (6, 3), (7, 3), (6, 4), (8, 3)] {
        let p = make_polygon(k);
        let count = enumerate_chromatic_colourings(&p, &symmetry_group(&p), q, &SearchBudget::default()).unwrap();
        assert_eq!(count.classes, chromatic_orbits(k, q), "{k}-gon, {q} colours");
    }
}

#[test]
fn dodecahedron_census() {
    let d = make_dodecahedron();
    let group = symmetry_group(&d);
    let result = enumerate_small_covers(&d, &group, &SearchBudget::default()).unwrap();
    assert_eq!(result.classes.len(), 25);
    assert_eq!(result.orientable_count(), 1);
    for class in &result.classes {
        assert!(is_proper(&d, &class.colouring));
        assert_eq!(class.orientable, is_orientable(&d, &class.colouring).unwrap().is_some());
    }
    let four = from_k_colouring(&d, 4, &FOUR_COLOURING)
        .unwrap()
        .map_linear(&[1, 2, 4, 7], 3)
        .unwrap();
    let orientable = result.classes.iter().find(|c| c.orientable).unwrap();
    assert!(equivalent(&d, &group, &orientable.colouring, &four));
    for (i, a) in result.classes.iter().enumerate() {
        for b in &result.classes[i + 1..] {
            assert!(!equivalent(&d, &group, &a.colouring, &b.colouring));
        }
    }
}

#[test]
fn parallel_width_does_not_change_results() {
    let d = make_dodecahedron();
    let group = symmetry_group(&d);
    let serial = enumerate_small_covers(&d, &group, &SearchBudget::new(1 << 40, 600.0, 1).unwrap()).unwrap();
    let wide = enumerate_small_covers(&d, &group, &SearchBudget::new(1 << 40, 600.0, 4).unwrap()).unwrap();
    let key =
        |r: &racolour::search::EnumerationResult| r.classes.iter().map(|c| c.canonical.clone()).collect::<Vec<_>>();
    assert_eq!(key(&serial), key(&wide));

    let c1 = enumerate_chromatic_colourings(&d, &group, 4, &SearchBudget::new(1 << 40, 600.0, 1).unwrap()).unwrap();
    let c4 = enumerate_chromatic_colourings(&d, &group, 4, &SearchBudget::new(1 << 40, 600.0, 4).unwrap()).unwrap();
    assert_eq!(
        (c1.classes, c1.representatives, c1.up_to_colour_permutation),
        (c4.classes, c4.representatives, c4.up_to_colour_permutation)
    );
}

#[test]
fn budget_exhaustion_is_flagged() {
    let d = make_dodecahedron();
    let group = symmetry_group(&d);
    let result = enumerate_small_covers(&d, &group, &SearchBudget::new(5, 600.0, 1).unwrap()).unwrap();
    assert!(!result.stats.complete);
    assert!(SearchBudget::new(0, 1.0, 1).is_err());
    assert!(SearchBudget::new(1, 1.0, 0).is_err());
}

#[test]
fn seed_shapes() {
    let z = racolour::polytope::make_120cell();
    let (sub, incidence) = z.facet_subpolytope(0).unwrap();
    let mut rng = StdRng::seed_from_u64(11);
    let mu = random_proper(&sub, 3, &mut rng);
    let seed = seed_from_facet(&z, 0, &mu).unwrap();
    assert_eq!(seed.assigned(), 13);
    assert_eq!(seed.get(0), Some(0b10000));
    assert!(seed
        .colours()
        .iter()
        .flatten()
        .all(|&c| parity(c) == 1 && c >> 3 & 1 == 0));
    assert!(seed.is_consistent(&z));
    for (a, &g) in incidence.iter().enumerate() {
        let v = mu.colour(a);
        let expected = match v {
            0b001 => 0b00001,
            0b011 => 0b10011,
            _ => v | ((parity(v) ^ 1) as F2Vector) << 4,
        };
        assert_eq!(seed.get(g), Some(expected));
    }
}

/// Whether `seed` has a spanning proper completion from the odd palette,
/// by plain backtracking in facet order with no other pruning.
fn completion_exists(p: &Polytope, seed: &racolour::colouring::PartialColouring) -> bool {
    fn rec(p: &Polytope, f: usize, rank: usize, palette: &[F2Vector], colours: &mut [Option<F2Vector>]) -> bool {
        if f == p.num_facets() {
            let all: Vec<F2Vector> = colours.iter().map(|c| c.unwrap()).collect();
            return naive_rank(&all) == rank && naive_proper(p, &all);
        }
        if colours[f].is_some() {
            return rec(p, f + 1, rank, palette, colours);
        }
        for &c in palette {
            colours[f] = Some(c);
            // colours already placed around each vertex of f must be independent
            let ok = p.facet_vertices(f).iter().all(|&vi| {
                let cs: Vec<F2Vector> = p.vertices()[vi].iter().filter_map(|&g| colours[g]).collect();
                naive_rank(&cs) == cs.len()
            });
            if ok && rec(p, f + 1, rank, palette, colours) {
                colours[f] = None;
                return true;
            }
        }
        colours[f] = None;
        false
    }
    let rank = seed.rank();
    let palette: Vec<F2Vector> = (1..(1u128 << rank)).filter(|&v| parity(v) == 1).collect();
    let mut colours = seed.colours().to_vec();
    rec(p, 0, rank, &palette, &mut colours)
}

#[test]
fn extension_search_agrees_with_plain_enumeration() {
    let d = make_dodecahedron();
    let mut statuses = HashSet::new();
    for f0 in [0, 5] {
        let (pent, _) = d.facet_subpolytope(f0).unwrap();
        // every proper F₂²-colouring of the pentagon, seeded at ranks 3 and 4
        for a in cyclic_assignments(5, 3) {
            let mu = Colouring::new(2, a.iter().map(|&x| x as F2Vector).collect()).unwrap();
            if !is_proper(&pent, &mu) {
                continue;
            }
            for rank in [3, 4] {
                let seed = seed_from_facet_with_rank(&d, f0, &mu, rank).unwrap();
                let outcome = search_orientable_extension(&d, &seed, &SearchBudget::default()).unwrap();
                let expected = completion_exists(&d, &seed);
                assert_eq!(
                    outcome.status == ExtensionStatus::Found,
                    expected,
                    "{:?} rank {rank}",
                    a
                );
                assert_ne!(outcome.status, ExtensionStatus::BudgetOut);
                if let Some(lambda) = outcome.colouring {
                    assert!(naive_proper(&d, lambda.colours()) && spans(&lambda));
                    assert!(lambda.colours().iter().all(|&c| parity(c) == 1));
                    for f in 0..12 {
                        if let Some(c) = seed.get(f) {
                            assert_eq!(lambda.colour(f), c);
                        }
                    }
                }
                statuses.insert(outcome.status);
            }
        }
    }
    assert!(statuses.contains(&ExtensionStatus::Found));
}

#[test]
fn extension_search_agrees_on_rank_three_facet_colourings() {
    let d = make_dodecahedron();
    let (pent, _) = d.facet_subpolytope(3).unwrap();
    let mut rng = StdRng::seed_from_u64(12);
    let mut statuses = Vec::new();
    for _ in 0..40 {
        let mu = random_proper(&pent, 3, &mut rng);
        let seed = seed_from_facet_with_rank(&d, 3, &mu, 4).unwrap();
        let outcome = search_orientable_extension(&d, &seed, &SearchBudget::default()).unwrap();
        assert_eq!(outcome.status == ExtensionStatus::Found, completion_exists(&d, &seed));
        statuses.push(outcome.status);
    }
    assert!(statuses.contains(&ExtensionStatus::Found));
}

#[test]
fn extension_search_agrees_on_random_partial_seeds() {
    use rand::seq::SliceRandom;
    use rand::Rng;
    let d = make_dodecahedron();
    let mut rng = StdRng::seed_from_u64(14);
    let mut statuses = HashSet::new();
    let mut tried = 0;
    while tried < 150 {
        let rank = if tried % 3 == 0 { 4 } else { 3 };
        let palette: Vec<F2Vector> = (1..(1u128 << rank)).filter(|&v| parity(v) == 1).collect();
        let mut facets: Vec<usize> = (0..12).collect();
        facets.shuffle(&mut rng);
        let k = rng.gen_range(1..=6);
        let mut colours = vec![None; 12];
        for &f in &facets[..k] {
            colours[f] = Some(*palette.choose(&mut rng).unwrap());
        }
        let seed = racolour::colouring::PartialColouring::new(rank, colours).unwrap();
        if !seed.is_consistent(&d) {
            continue;
        }
        tried += 1;
        let outcome = search_orientable_extension(&d, &seed, &SearchBudget::default()).unwrap();
        assert_eq!(
            outcome.status == ExtensionStatus::Found,
            completion_exists(&d, &seed),
            "{:?}",
            seed.colours()
        );
        statuses.insert(outcome.status);
    }
    assert_eq!(statuses.len(), 2, "both outcomes occur");
}

#[test]
fn extension_budget_is_reported() {
    let z = racolour::polytope::make_120cell();
    let (sub, _) = z.facet_subpolytope(0).unwrap();
    let mu = random_proper(&sub, 3, &mut StdRng::seed_from_u64(13));
    let seed = seed_from_facet(&z, 0, &mu).unwrap();
    let outcome = search_orientable_extension(&z, &seed, &SearchBudget::new(3, 60.0, 1).unwrap()).unwrap();
    assert_eq!(outcome.status, ExtensionStatus::BudgetOut);
    assert!(outcome.colouring.is_none());
}
