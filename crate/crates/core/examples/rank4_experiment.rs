//! Looks for orientable F₂⁴-colourings of the 120-cell extending each
//! non-orientable dodecahedral class, with a fixed node budget per class.

use racolour::colouring::{equivalent, induced_colouring, is_orientable, is_proper, spans, Colouring};
use racolour::polytope::{find_isomorphism, make_120cell, make_dodecahedron, symmetry_group};
use racolour::search::{enumerate_small_covers, search_orientable_extension, seed_from_facet_with_rank, SearchBudget};

fn main() {
    let nodes = std::env::args()
        .nth(1)
        .and_then(|a| a.parse().ok())
        .unwrap_or(10_000_000);
    let d = make_dodecahedron();
    let z = make_120cell();
    let classes = enumerate_small_covers(&d, &symmetry_group(&d), &SearchBudget::default()).unwrap();
    let (sub, _) = z.facet_subpolytope(0).unwrap();
    let sub_group = symmetry_group(&sub);
    let iso = find_isomorphism(&d, &sub).unwrap();
    let budget = SearchBudget::new(nodes, 1800.0, 4).unwrap();
    for (i, class) in classes.non_orientable().enumerate() {
        let mut moved = vec![0; 12];
        for (f, &a) in iso.iter().enumerate() {
            moved[a] = class.colouring.colour(f);
        }
        let mu = Colouring::new(3, moved).unwrap();
        let seed = seed_from_facet_with_rank(&z, 0, &mu, 4).unwrap();
        let outcome = search_orientable_extension(&z, &seed, &budget).unwrap();
        let verified = outcome.colouring.as_ref().map(|l| {
            let (_, induced) = induced_colouring(&z, 0, l).unwrap();
            is_proper(&z, l)
                && spans(l)
                && matches!(is_orientable(&z, l), Ok(Some(_)))
                && equivalent(&sub, &sub_group, &induced, &mu)
        });
        println!(
            "class {i:2}: {:?} after {} nodes, verified {:?}",
            outcome.status, outcome.stats.nodes, verified
        );
    }
}
