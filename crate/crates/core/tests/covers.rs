mod common;

use std::collections::HashSet;

use common::*;
use num_rational::Rational64;
use racolour::colouring::{extend_colouring_generic, from_k_colouring, Colouring};
use racolour::cover::{build_cover, CoverComplex};
use racolour::error::Error;
use racolour::polytope::{make_120cell, make_dodecahedron, make_polygon, symmetry_group, Polytope};
use racolour::search::{enumerate_chromatic_colourings, SearchBudget};
use racolour::volume::CellKind;
use rand::rngs::StdRng;
use rand::SeedableRng;

fn assert_consistent(cover: &CoverComplex) {
    assert!(cover.gluing_is_involution());
    assert!(cover.connected());
    assert_eq!(
        cover.euler_characteristic().unwrap(),
        cover.euler_characteristic_from_faces()
    );
    assert_eq!(cover.orientable(), cover.orientable_from_gluing());
    for f in 0..cover.base().num_facets() {
        let comps = cover.facet_preimage(f).unwrap();
        assert_eq!(comps.iter().map(|s| s.pieces.len()).sum::<usize>(), cover.copies() / 2);
    }
}

#[test]
fn euler_characteristic_two_ways_on_random_covers() {
    let mut rng = StdRng::seed_from_u64(21);
    let d = make_dodecahedron();
    let hex = make_polygon(6);
    let pent = make_polygon(5);
    for i in 0..60 {
        let (p, s): (&Polytope, usize) = match i % 3 {
            0 => (&d, 3 + i % 5),
            1 => (&hex, 2 + i % 4),
            _ => (&pent, 2 + i % 3),
        };
        let lambda = random_proper(p, s, &mut rng);
        let cover = build_cover(p, &lambda).unwrap();
        assert_consistent(&cover);
        let expected = p.orbifold_euler_characteristic() * Rational64::from_integer(cover.copies() as i64);
        assert_eq!(
            Rational64::from_integer(cover.euler_characteristic().unwrap()),
            expected
        );
        if p.dimension() == 3 {
            assert_eq!(cover.euler_characteristic().unwrap(), 0);
        }
    }
}

#[test]
fn orientable_dodecahedral_cover() {
    let d = make_dodecahedron();
    let lambda = from_k_colouring(&d, 4, &FOUR_COLOURING)
        .unwrap()
        .map_linear(&[1, 2, 4, 7], 3)
        .unwrap();
    let cover = build_cover(&d, &lambda).unwrap();
    assert_eq!(cover.copies(), 8);
    assert!(cover.orientable());
    assert_consistent(&cover);
    for f in 0..12 {
        for s in cover.facet_preimage(f).unwrap() {
            assert!(cover.component_matches_induced_cover(&s).unwrap());
        }
    }
}

#[test]
fn cover_of_the_five_coloured_120cell() {
    let z = make_120cell();
    let count = enumerate_chromatic_colourings(&z, &symmetry_group(&z), 5, &SearchBudget::default()).unwrap();
    let lambda = from_k_colouring(&z, 5, &count.representatives[0]).unwrap();
    let cover = build_cover(&z, &lambda).unwrap();
    assert_eq!(cover.copies(), 32);
    assert_eq!(cover.euler_characteristic().unwrap(), 272);
    assert_eq!(cover.euler_characteristic_from_faces(), 272);
    assert!(cover.orientable() && cover.orientable_from_gluing());
    let summary = cover.summary().unwrap();
    assert_eq!(summary.volume.unwrap().kind, CellKind::Cell120);
    // every facet is two-sided: its colour is a basis vector missing from its neighbours
    let comps = cover.facet_preimage(0).unwrap();
    let cut = cover.cut_along(&comps[0]).unwrap();
    assert!(!cut.one_sided && !cut.predicted_one_sided);
    assert_eq!(cut.boundary.len(), 2);
}

/// Rank of an image big enough to refuse.
#[test]
fn oversized_cover_is_refused() {
    let z = make_120cell();
    let (sub, _) = z.facet_subpolytope(0).unwrap();
    let mu = random_proper(&sub, 3, &mut StdRng::seed_from_u64(22));
    let ext = extend_colouring_generic(&z, 0, &mu).unwrap();
    assert!(matches!(build_cover(&z, &ext), Err(Error::CoverTooLarge(111))));
}

/// Cells of each boundary component, sent to the pieces they came from.
fn boundary_to_pieces(cover: &CoverComplex, facet: usize, copies: &[u32]) -> Vec<u32> {
    let c = cover.coordinate(facet);
    let mut pieces: Vec<u32> = copies.iter().map(|&h| h.min(h ^ c)).collect();
    pieces.sort_unstable();
    pieces
}

#[test]
fn cutting_along_a_two_sided_component() {
    let d = make_dodecahedron();
    let lambda = from_k_colouring(&d, 4, &FOUR_COLOURING).unwrap();
    let cover = build_cover(&d, &lambda).unwrap();
    assert_eq!(cover.copies(), 16);
    for f in 0..12 {
        let comps = cover.facet_preimage(f).unwrap();
        for s in &comps {
            let cut = cover.cut_along(s).unwrap();
            assert!(!cut.one_sided && !cut.predicted_one_sided);
            assert_eq!(cut.boundary.len(), 2);
            assert_eq!(cut.boundary_cells(), 2 * s.pieces.len());
            for b in &cut.boundary {
                assert!(b.orientable);
                // each side projects bijectively onto the component, ridge for ridge
                assert_eq!(boundary_to_pieces(&cover, f, &b.copies), s.pieces);
                let side: HashSet<u32> = b.copies.iter().copied().collect();
                for &h in &b.copies {
                    assert!(
                        !side.contains(&(h ^ cover.coordinate(f))),
                        "a side never holds both cells of a piece"
                    );
                    for &g in d.neighbours(f) {
                        assert!(side.contains(&(h ^ cover.coordinate(g))));
                    }
                }
            }
        }
    }
}

#[test]
fn cutting_along_a_one_sided_component() {
    let d = make_dodecahedron();
    let lambda = from_k_colouring(&d, 4, &FOUR_COLOURING)
        .unwrap()
        .map_linear(&[1, 2, 4, 7], 3)
        .unwrap();
    let cover = build_cover(&d, &lambda).unwrap();
    let mut one_sided = 0;
    for f in 0..12 {
        for s in cover.facet_preimage(f).unwrap() {
            let cut = cover.cut_along(&s).unwrap();
            assert_eq!(cut.one_sided, cut.predicted_one_sided);
            assert_eq!(cut.boundary_cells(), 2 * s.pieces.len());
            if cut.one_sided {
                one_sided += 1;
                assert_eq!(cut.boundary.len(), 1);
                assert_eq!(cut.boundary[0].cells, 2 * s.pieces.len());
                // the cover is orientable, so the double cover of a one-sided surface is too
                assert!(cut.boundary[0].orientable);
            } else {
                assert_eq!(cut.boundary.len(), 2);
            }
        }
    }
    assert!(one_sided > 0);
}

#[test]
fn sidedness_prediction_on_random_covers() {
    let mut rng = StdRng::seed_from_u64(23);
    let d = make_dodecahedron();
    for i in 0..40 {
        let lambda = random_proper(&d, 3 + i % 3, &mut rng);
        let cover = build_cover(&d, &lambda).unwrap();
        let f = i % 12;
        for s in cover.facet_preimage(f).unwrap() {
            let cut = cover.cut_along(&s).unwrap();
            assert_eq!(cut.one_sided, cut.predicted_one_sided);
            assert_eq!(cut.boundary.len(), if cut.one_sided { 1 } else { 2 });
            assert!(cover.component_matches_induced_cover(&s).unwrap());
        }
    }
}

#[test]
fn pentagon_cover_is_a_surface_of_euler_characteristic_minus_one() {
    let p = make_polygon(5);
    let lambda = Colouring::new(2, vec![1, 2, 1, 2, 3]).unwrap();
    let cover = build_cover(&p, &lambda).unwrap();
    assert_eq!(cover.euler_characteristic().unwrap(), -1);
    assert_eq!(cover.euler_characteristic_from_faces(), -1);
    assert!(!cover.orientable());
}

#[test]
fn a_component_from_another_facet_is_rejected() {
    let d = make_dodecahedron();
    let lambda = from_k_colouring(&d, 4, &FOUR_COLOURING).unwrap();
    let cover = build_cover(&d, &lambda).unwrap();
    let mut s = cover.facet_preimage(0).unwrap().remove(0);
    s.facet = 1;
    assert!(matches!(cover.cut_along(&s), Err(Error::InvalidComponent(_))));
}
