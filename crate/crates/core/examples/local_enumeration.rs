//! Exhaustive enumeration of periodic triangulations in dimensions 3 and 4.
//!
//! `cargo run --release --example local_enumeration -- 4`

use std::time::Instant;

use ptri::enumerate::{audit_hardcoded, local_enumerate, search_apexes};
use ptri::predicates::delaunay_test;
use ptri::tri::CompatCache;

fn main() {
    let n: usize = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(3);
    let start = Instant::now();

    let audit = audit_hardcoded(n).expect("dimension 3 or 4");
    let found = search_apexes(n, 4, &mut CompatCache::default());
    println!(
        "neighbour apexes: {} listed, {} pass pair checks, {} found by search",
        audit.raw,
        audit.surviving,
        found.len()
    );
    for a in &found {
        println!("  {:?}", a);
    }

    let r = local_enumerate(n).unwrap();
    println!(
        "dim {n}: {} triangulations from {} partial states, {} dead ends ({:.1}s)",
        r.triangulations.len(),
        r.audit.states,
        r.audit.dead_ends,
        start.elapsed().as_secs_f64()
    );
    println!("states per level: {:?}", r.audit.states_per_level);
    for (i, t) in r.triangulations.iter().enumerate() {
        let d = delaunay_test(t).unwrap();
        println!(
            "  #{i}: {} classes, volumes {:?}, Delaunay {}, centrally symmetric {}",
            t.len(),
            t.volume_vector(),
            d.is_delaunay,
            t.is_centrally_symmetric()
        );
    }
}
