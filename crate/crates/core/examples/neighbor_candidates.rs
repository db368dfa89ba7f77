//! Neighbour lists of a unimodular simplex across a facet: the known lists
//! in dimensions 3 and 4 against exhaustive search.

use ptri::enumerate::{audit_hardcoded, encode_apex, neighbor_candidates, search_apexes, NeighborMode};
use ptri::tri::{CompatCache, Simplex};

fn main() {
    for n in [3, 4] {
        let audit = audit_hardcoded(n).unwrap();
        let mut cache = CompatCache::default();
        let found = search_apexes(n, 4, &mut cache);
        println!(
            "dim {n}: {} listed apexes ({} pass), search at radius 4 finds {}",
            audit.raw,
            audit.surviving,
            found.len()
        );
    }

    let s = Simplex::from_coords(&[
        vec![0, 0, 0, 0],
        vec![1, 0, 0, 0],
        vec![1, 1, 0, 0],
        vec![1, 1, 1, 0],
        vec![1, 1, 1, 1],
    ])
    .unwrap();
    for c in neighbor_candidates(&s, 0, NeighborMode::Hardcoded).unwrap() {
        println!("apex {:?}  b = {:?}", c.apex, c.b);
        assert_eq!(encode_apex(&s, 0, &c.apex).unwrap(), c.b);
    }
}
