//! Triangulations induced by a generic quadratic form on the cube tiling and
//! on prisms over a lower-dimensional triangulation.

use ptri::exact::QuadForm;
use ptri::predicates::{cube_tile, freudenthal_seed, generic_form, prism_extend, refine, Refinement};
use ptri::symmetry::isomorphic;

fn main() {
    let a = generic_form(3);
    let t = refine(3, &[cube_tile(3)], &a).unwrap().triangulation().cloned().expect("generic form");
    println!("cube refined by {:?}: {} classes, valid {}", a, t.len(), t.validate().is_valid());
    println!("equivalent to Freudenthal: {}", isomorphic(&t, &freudenthal_seed(3)).is_some());

    // the identity form leaves the square undivided
    match refine(2, &[cube_tile(2)], &QuadForm::identity(2)).unwrap() {
        Refinement::NonGeneric { cells } => println!("identity on the square: non-generic cell {:?}", cells[0]),
        Refinement::Triangulation(_) => unreachable!(),
    }

    let up = prism_extend(&freudenthal_seed(2), 3, &generic_form(3)).unwrap();
    let up = up.triangulation().expect("generic form");
    println!("prisms over dim 2 refined in dim 3: {} classes, valid {}", up.len(), up.validate().is_valid());
}
