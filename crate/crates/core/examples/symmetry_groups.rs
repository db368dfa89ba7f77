//! Canonical forms, equivalence testing and point groups.

use ptri::exact::SmallMatrix;
use ptri::predicates::freudenthal_seed;
use ptri::symmetry::{canonical_triangulation, isomorphic, stabilizer, verify_split};

fn main() {
    for n in 2..=4 {
        let st = stabilizer(&freudenthal_seed(n));
        println!(
            "Freudenthal dim {n}: point group of order {}, contains -I {}, split {}",
            st.point_group.order(),
            st.point_group.contains_neg_identity(),
            verify_split(&freudenthal_seed(n))
        );
    }

    let t = freudenthal_seed(3);
    let g = SmallMatrix::from_rows(&[vec![1, 2, 0], vec![0, 1, 0], vec![3, 5, 1]]);
    let u = t.transform(&g);
    println!("image under {:?} is still Freudenthal? {}", g, u == t);
    let f = isomorphic(&u, &t).expect("equivalent");
    println!("recovered map: x -> {:?} x + {:?}", f.a, f.b);
    assert_eq!(canonical_triangulation(&u), canonical_triangulation(&t));
}
