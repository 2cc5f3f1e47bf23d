//! Counts four-colourings of the dodecahedron and five-colourings of the
//! 120-cell up to symmetry and renaming of colours.

use racolour::polytope::{make_120cell, make_dodecahedron, symmetry_group};
use racolour::search::{enumerate_chromatic_colourings, SearchBudget};

fn main() {
    let budget = SearchBudget::new(100_000_000, 7200.0, 4).unwrap();
    for (name, p, k) in [
        ("dodecahedron", make_dodecahedron(), 4),
        ("120-cell", make_120cell(), 5),
    ] {
        let group = symmetry_group(&p);
        let count = enumerate_chromatic_colourings(&p, &group, k, &budget).unwrap();
        println!(
            "{name}, k = {k}: {} up to symmetry and renaming, {} up to renaming only ({} nodes, complete: {})",
            count.classes, count.up_to_colour_permutation, count.stats.nodes, count.stats.complete
        );
    }
}
