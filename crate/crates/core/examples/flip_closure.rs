//! Flip closure from the Freudenthal triangulation.
//!
//! `cargo run --release --example flip_closure -- 5`

use std::time::Instant;

use ptri::enumerate::{flip_closure_from, Budget, ClosureState};
use ptri::predicates::freudenthal_seed;

fn main() {
    let n: usize = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(4);
    let max_nodes = std::env::args().nth(2).and_then(|s| s.parse().ok());
    let start = Instant::now();
    let report = flip_closure_from(ClosureState::new(&freudenthal_seed(n)), &Budget { max_nodes }, |s| {
        if s.processed % 25 == 0 {
            eprintln!(
                "[{:>7.1}s] processed {:>4}  archive {:>4}  queue {:>4}",
                start.elapsed().as_secs_f64(),
                s.processed,
                s.archive.len(),
                s.queue.len()
            );
        }
    });
    println!(
        "dim {n}: {:?} with {} classes after {} flips ({:.1}s)",
        report.status,
        report.state.archive.len(),
        report.flips_applied,
        start.elapsed().as_secs_f64()
    );
}
