//! Extends every non-orientable dodecahedral class to an orientable
//! F₂⁵-colouring of the 120-cell and checks the restriction.

use racolour::colouring::{equivalent, induced_colouring, Colouring};
use racolour::polytope::{find_isomorphism, make_120cell, make_dodecahedron, symmetry_group};
use racolour::search::{enumerate_small_covers, search_orientable_extension, seed_from_facet, SearchBudget};

fn main() {
    let d = make_dodecahedron();
    let z = make_120cell();
    let budget = SearchBudget::default();
    let classes = enumerate_small_covers(&d, &symmetry_group(&d), &budget).unwrap();

    let (sub, _) = z.facet_subpolytope(0).unwrap();
    let sub_group = symmetry_group(&sub);
    let iso = find_isomorphism(&d, &sub).unwrap();
    for (i, class) in classes.non_orientable().enumerate() {
        let mut moved = vec![0; 12];
        for (f, &a) in iso.iter().enumerate() {
            moved[a] = class.colouring.colour(f);
        }
        let mu = Colouring::new(3, moved).unwrap();
        let seed = seed_from_facet(&z, 0, &mu).unwrap();
        let outcome = search_orientable_extension(&z, &seed, &budget).unwrap();
        let lambda = outcome.colouring.expect("extension exists");
        let (_, induced) = induced_colouring(&z, 0, &lambda).unwrap();
        println!(
            "class {i:2}: {:?} after {} nodes, restriction equivalent: {}",
            outcome.status,
            outcome.stats.nodes,
            equivalent(&sub, &sub_group, &induced, &mu)
        );
    }
}
