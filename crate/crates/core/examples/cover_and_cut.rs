//! Glues the eight-copy cover of the dodecahedron from its orientable
//! colouring, then cuts it along a preimage component of a face.

use racolour::colouring::from_k_colouring;
use racolour::cover::build_cover;
use racolour::polytope::make_dodecahedron;

fn main() {
    let d = make_dodecahedron();
    let four = from_k_colouring(&d, 4, &[1, 2, 3, 2, 3, 4, 4, 1, 4, 1, 3, 2]).unwrap();
    // e₁, e₂, e₃, e₁+e₂+e₃
    let lambda = four.map_linear(&[1, 2, 4, 7], 3).unwrap();
    let cover = build_cover(&d, &lambda).unwrap();
    println!(
        "{} copies, χ = {} (from faces {}), orientable {}",
        cover.copies(),
        cover.euler_characteristic().unwrap(),
        cover.euler_characteristic_from_faces(),
        cover.orientable()
    );
    let components = cover.facet_preimage(0).unwrap();
    for s in &components {
        println!(
            "component of face 0 with pieces {:?}: matches induced cover {}",
            s.pieces,
            cover.component_matches_induced_cover(s).unwrap()
        );
    }
    let cut = cover.cut_along(&components[0]).unwrap();
    println!("{}", serde_json::to_string_pretty(&cut).unwrap());
}
