//! Breadth-first closure of a triangulation under coherent flips, up to
//! affine unimodular equivalence.

use std::collections::{HashMap, VecDeque};

use super::flip::{apply_flip, find_flips};
use crate::symmetry::canonical_triangulation;
use crate::tri::PeriodicTriangulation;

#[derive(Clone, Debug, Default)]
pub struct Budget {
    /// Stop after processing this many triangulations.
    pub max_nodes: Option<usize>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ClosureStatus {
    /// The queue ran empty.
    Complete,
    /// The node budget was reached with work left in the queue.
    BudgetExhausted,
}

/// Archive of pairwise non-equivalent triangulations in discovery order,
/// plus the indices still waiting to be expanded.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClosureState {
    pub dim: usize,
    pub archive: Vec<PeriodicTriangulation>,
    pub queue: VecDeque<usize>,
    pub processed: usize,
}

impl ClosureState {
    /// Starts from the canonical form of `seed`.
    pub fn new(seed: &PeriodicTriangulation) -> ClosureState {
        ClosureState {
            dim: seed.dim(),
            archive: vec![canonical_triangulation(seed)],
            queue: VecDeque::from([0]),
            processed: 0,
        }
    }

    pub fn is_complete(&self) -> bool {
        self.queue.is_empty()
    }
}

#[derive(Clone, Debug)]
pub struct ClosureReport {
    pub status: ClosureStatus,
    pub state: ClosureState,
    /// Total flips applied over the run.
    pub flips_applied: usize,
}

/// Runs the closure, calling `on_progress` after each processed node (for
/// checkpointing). The archive only ever grows.
pub fn flip_closure_from(
    mut state: ClosureState,
    budget: &Budget,
    mut on_progress: impl FnMut(&ClosureState),
) -> ClosureReport {
    let mut known: HashMap<PeriodicTriangulation, usize> =
        state.archive.iter().enumerate().map(|(i, t)| (t.clone(), i)).collect();
    let mut flips_applied = 0;
    let mut done_this_run = 0;
    while let Some(&idx) = state.queue.front() {
        if budget.max_nodes.is_some_and(|m| done_this_run >= m) {
            return ClosureReport { status: ClosureStatus::BudgetExhausted, state, flips_applied };
        }
        let t = state.archive[idx].clone();
        for spec in find_flips(&t) {
            let next = apply_flip(&t, &spec).expect("emitted flips apply cleanly");
            flips_applied += 1;
            let canon = canonical_triangulation(&next);
            if !known.contains_key(&canon) {
                let id = state.archive.len();
                known.insert(canon.clone(), id);
                state.archive.push(canon);
                state.queue.push_back(id);
            }
        }
        state.queue.pop_front();
        state.processed += 1;
        done_this_run += 1;
        on_progress(&state);
    }
    ClosureReport { status: ClosureStatus::Complete, state, flips_applied }
}

pub fn flip_closure(seed: &PeriodicTriangulation, budget: &Budget) -> ClosureReport {
    flip_closure_from(ClosureState::new(seed), budget, |_| {})
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::predicates::freudenthal_seed;

    #[test]
    fn small_closures() {
        assert_eq!(flip_closure(&freudenthal_seed(2), &Budget::default()).state.archive.len(), 1);
        assert_eq!(flip_closure(&freudenthal_seed(3), &Budget::default()).state.archive.len(), 1);
    }

    #[test]
    fn budget_is_reported() {
        let r = flip_closure(&freudenthal_seed(3), &Budget { max_nodes: Some(0) });
        assert_eq!(r.status, ClosureStatus::BudgetExhausted);
    }
}
