//! Simplex classes, pairwise compatibility and full validation.

use ptri::exact::Point;
use ptri::predicates::freudenthal_seed;
use ptri::tri::{pairwise_compatible, PeriodicTriangulation, Simplex};

fn main() {
    let s = Simplex::from_coords(&[vec![2, 1, 0], vec![3, 1, 0], vec![3, 2, 0], vec![3, 2, 1]]).unwrap();
    println!("simplex {:?} has volume {} and class {:?}", s, s.volume(), s.class());
    assert_eq!(s.translate(Point::new(&[-5, 7, 1])).class(), s.class());

    let a = Simplex::standard(3).class();
    let b = Simplex::from_coords(&[vec![0, 0, 0], vec![1, 0, 0], vec![0, 1, 0], vec![1, 1, 1]]).unwrap().class();
    match pairwise_compatible(&a, &b) {
        None => println!("{a:?} and {b:?} are compatible"),
        Some(v) => println!("{a:?} and {b:?} + {v:?} overlap improperly"),
    }

    let t = freudenthal_seed(3);
    println!("Freudenthal dim 3: {} classes, volume {}, valid {}", t.len(), t.total_volume(), t.validate().is_valid());

    // a plausible-looking but wrong class set: volume is right, tiling is not
    let mut classes = t.classes().to_vec();
    classes[0] = b;
    let bad = PeriodicTriangulation::new(3, classes).unwrap();
    println!("modified: {}", bad.validate().failure.map(|f| f.to_string()).unwrap_or("valid".into()));
}
