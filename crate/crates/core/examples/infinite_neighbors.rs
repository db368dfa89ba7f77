//! A unimodular 5-simplex with infinitely many compatible neighbours across
//! one facet, plus a perturbed family that fails.
//!
//! `cargo run --release --example infinite_neighbors -- 50`

use ptri::enumerate::{infinite_family, infinite_family_control};

fn main() {
    let kmax: i64 = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(10);
    let rows = infinite_family(kmax);
    let ok = rows.iter().filter(|r| r.holds()).count();
    println!("apex (1,1,1,1,k+1): {ok} of {} values of k compatible", rows.len());
    for r in infinite_family_control(4) {
        println!("apex (1,1,1,2,{}): holds {}, witness {:?}", r.k + 1, r.holds(), r.witness);
    }
}
