//! Builds the dodecahedron and the 120-cell and prints their basic invariants.

use racolour::polytope::{find_isomorphism, make_120cell, make_dodecahedron, symmetry_group};

fn main() {
    let d = make_dodecahedron();
    let z = make_120cell();
    for (name, p) in [("dodecahedron", &d), ("120-cell", &z)] {
        let group = symmetry_group(p);
        println!(
            "{name}: f-vector {:?}, orbifold χ = {}, {} symmetries",
            p.f_vector().0,
            p.orbifold_euler_characteristic(),
            group.order()
        );
    }
    let (facet, _) = z.facet_subpolytope(0).unwrap();
    println!(
        "facet 0 of the 120-cell is a dodecahedron: {}",
        find_isomorphism(&d, &facet).is_some()
    );
}
