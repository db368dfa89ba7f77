//! Certifying that a triangulation is not regular: a finite piece of it
//! admits no height function, proved by an exact Farkas certificate.
//!
//! `cargo run --release --example regularity_certificate -- FILE.ptri LO HI`

use ptri::io::read_ptri;
use ptri::predicates::{regularity_on, RegularitySystem};

fn main() {
    let mut args = std::env::args().skip(1);
    let path = args.next().expect("usage: FILE LO HI");
    let lo: i64 = args.next().and_then(|s| s.parse().ok()).unwrap_or(0);
    let hi: i64 = args.next().and_then(|s| s.parse().ok()).unwrap_or(2);
    let t = read_ptri(path.as_ref()).unwrap();
    let sys = RegularitySystem::build_box(&t, lo, hi);
    println!(
        "box [{lo},{hi}]^{}: {} points, {} simplices, {} adjacent pairs, {} constraints",
        t.dim(),
        sys.points.len(),
        sys.simplices.len(),
        sys.adjacent.len(),
        sys.constraint_count()
    );
    if std::env::var_os("SIZE_ONLY").is_some() {
        return;
    }
    let r = regularity_on(sys).unwrap();
    if r.regular_possible {
        println!("heights exist on this piece: no obstruction");
    } else {
        let f = r.certificate.as_ref().unwrap();
        println!(
            "not regular: Farkas certificate on {} constraints, {} simplices; verifies {}",
            f.len(),
            r.certificate_simplices(),
            r.verify()
        );
    }
}
