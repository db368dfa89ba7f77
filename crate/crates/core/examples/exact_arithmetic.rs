//! Exact integer and rational primitives: Hermite normal form, affine
//! dependences (circuits), quadratic forms.

use ptri::exact::{affine_dependence, IntMatrix, Point, QuadForm};

fn main() {
    let m = IntMatrix::from_rows(&[vec![2, 3, 1], vec![4, 1, -3], vec![1, 1, 1]]);
    let (h, u) = m.hnf();
    println!("M = {:?}", m);
    println!("H = U M = {:?}\nU = {:?}, det U = {}", h, u, u.det().unwrap());
    assert_eq!(u.mul(&m), h);

    // the square's circuit: 0 + (1,1) = (1,0) + (0,1)
    let pts = [Point::new(&[0, 0]), Point::new(&[1, 0]), Point::new(&[0, 1]), Point::new(&[1, 1])];
    let dep = affine_dependence(&pts, 2).unwrap();
    println!("circuit coefficients {:?}: positive {:?}, negative {:?}", dep.coeffs, dep.positive(), dep.negative());
    assert!(dep.verify());

    let a = QuadForm::from_i64(2, &[2, -1, -1, 2]).unwrap();
    println!("A = {:?}, positive definite {}, A[(1,1)] = {}", a, a.is_positive_definite(), a.eval(&pts[3]));
    let b = QuadForm::from_i64(2, &[1, 2, 2, 1]).unwrap();
    println!("B = {:?}, positive definite {}", b, b.is_positive_definite());
}
