//! Search engines: flip closure, local enumeration, neighbour candidates.

pub mod classify;
pub mod closure;
pub mod flip;
pub mod local;
pub mod neighbors;

pub use classify::{
    adjacency_classification, expected_dim5_codes, infinite_family, infinite_family_control, AdjacencyCode, FamilyRow,
};
pub use closure::{flip_closure, flip_closure_from, Budget, ClosureReport, ClosureState, ClosureStatus};
pub use flip::{apply_flip, find_flips, find_flips_with_stats, Circuit, FlipError, FlipSearchStats, FlipSpec};
pub use local::{local_enumerate, LocalAudit, LocalEnumeration};
pub use neighbors::{
    audit_hardcoded, encode_apex, hardcoded_apexes, neighbor_candidates, neighbor_candidates_with, search_apexes,
    CandidateAudit, NeighborCandidate, NeighborError, NeighborMode,
};
