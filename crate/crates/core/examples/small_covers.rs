//! Enumerates the small covers of the right-angled dodecahedron.

use racolour::colouring::non_orientability_witness;
use racolour::polytope::{make_dodecahedron, symmetry_group};
use racolour::search::{enumerate_small_covers, SearchBudget};

fn main() {
    let d = make_dodecahedron();
    let group = symmetry_group(&d);
    let result = enumerate_small_covers(&d, &group, &SearchBudget::default()).unwrap();
    println!(
        "{} classes ({} orientable) in {} nodes",
        result.classes.len(),
        result.orientable_count(),
        result.stats.nodes
    );
    for (i, class) in result.classes.iter().enumerate() {
        println!(
            "{i:2} {:?} orientable={} automorphisms={} witness={:?}",
            class.colouring.colours(),
            class.orientable,
            class.automorphisms,
            non_orientability_witness(&d, &class.colouring)
        );
    }
}
