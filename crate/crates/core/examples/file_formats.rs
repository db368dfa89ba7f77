//! The `ptri 1` text format and closure checkpoints.

use ptri::enumerate::{flip_closure_from, Budget, ClosureState};
use ptri::io::{parse_checkpoint, parse_ptri, to_checkpoint, to_ptri};
use ptri::predicates::freudenthal_seed;

fn main() {
    let t = freudenthal_seed(2);
    let text = to_ptri(&t);
    print!("{text}");
    assert_eq!(parse_ptri(&text).unwrap(), t);

    match parse_ptri("ptri 1\ndim 2\nclasses 1\nsimplex\n0 0\n1 1\n2 2\n") {
        Err(e) => println!("rejected: {e}"),
        Ok(_) => unreachable!(),
    }

    // stop a dimension-4 closure early, save, reload and finish
    let r = flip_closure_from(ClosureState::new(&freudenthal_seed(4)), &Budget { max_nodes: Some(1) }, |_| {});
    let saved = to_checkpoint(&r.state);
    println!("checkpoint after {:?}: {} bytes, {} known", r.status, saved.len(), r.state.archive.len());
    let resumed = flip_closure_from(parse_checkpoint(&saved).unwrap(), &Budget::default(), |_| {});
    println!("resumed to {:?} with {} classes", resumed.status, resumed.state.archive.len());
}
