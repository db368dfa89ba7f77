//! Exhaustive local enumeration in dimensions 3 and 4: grow partial
//! triangulations simplex by simplex across the first open facet.

use std::collections::HashSet;

use super::neighbors::{neighbor_candidates_with, NeighborError, NeighborMode};
use crate::symmetry::canonical_form;
use crate::tri::{CompatCache, PartialTriangulation, PeriodicTriangulation, Simplex, SimplexClass};

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct LocalAudit {
    /// Pairwise non-equivalent partial states expanded.
    pub states: usize,
    /// Non-complete states with no admissible extension.
    pub dead_ends: usize,
    /// Candidates rejected by the facet count or volume bound.
    pub rejected_structural: usize,
    /// Candidates rejected by pairwise compatibility.
    pub rejected_compat: usize,
    /// Partial states per number of classes.
    pub states_per_level: Vec<usize>,
}

#[derive(Clone, Debug)]
pub struct LocalEnumeration {
    /// Canonical forms of all complete triangulations found.
    pub triangulations: Vec<PeriodicTriangulation>,
    pub audit: LocalAudit,
}

/// Extensions of `p` across its canonically first open facet.
fn extend(
    p: &PartialTriangulation,
    cache: &mut CompatCache,
    audit: &mut LocalAudit,
) -> Result<Vec<PartialTriangulation>, NeighborError> {
    let frontier = p.frontier();
    let Some((_, inc)) = frontier.first() else {
        return Ok(Vec::new());
    };
    let base: Simplex = p.classes()[inc.class].positioned(inc.shift);
    let mut out = Vec::new();
    for cand in neighbor_candidates_with(&base, inc.omitted, NeighborMode::Hardcoded, cache)? {
        let t: SimplexClass = cand.simplex().class();
        if p.classes().contains(&t) {
            audit.rejected_structural += 1;
            continue;
        }
        let next = p.with(t.clone());
        if !next.invariants_hold() {
            audit.rejected_structural += 1;
            continue;
        }
        let ok = cache.check(&t, &t).is_none() && p.classes().iter().all(|c| cache.check(c, &t).is_none());
        if !ok {
            audit.rejected_compat += 1;
            continue;
        }
        out.push(next);
    }
    Ok(out)
}

/// Breadth-first search from one unimodular simplex, deduplicating partial
/// states up to affine unimodular equivalence.
pub fn local_enumerate(n: usize) -> Result<LocalEnumeration, NeighborError> {
    if !(3..=4).contains(&n) {
        return Err(NeighborError::Dimension(n));
    }
    let mut cache = CompatCache::default();
    let mut audit = LocalAudit::default();
    let start = PartialTriangulation::new(n, vec![Simplex::standard(n).class()]);
    let mut level = vec![PartialTriangulation::new(n, canonical_form(n, start.classes()))];
    let mut complete: Vec<PeriodicTriangulation> = Vec::new();
    let mut complete_seen: HashSet<Vec<SimplexClass>> = HashSet::new();
    while !level.is_empty() {
        audit.states_per_level.push(level.len());
        let mut next_level = Vec::new();
        let mut seen: HashSet<Vec<SimplexClass>> = HashSet::new();
        for p in &level {
            audit.states += 1;
            if p.is_complete() {
                let key = p.classes().to_vec();
                if complete_seen.insert(key) {
                    complete.push(p.clone().into_triangulation());
                }
                continue;
            }
            let ext = extend(p, &mut cache, &mut audit)?;
            if ext.is_empty() {
                audit.dead_ends += 1;
            }
            for q in ext {
                let canon = canonical_form(n, q.classes());
                if seen.insert(canon.clone()) {
                    next_level.push(PartialTriangulation::new(n, canon));
                }
            }
        }
        level = next_level;
    }
    complete.sort();
    Ok(LocalEnumeration { triangulations: complete, audit })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symmetry::isomorphic;

    #[test]
    fn dim3_unique() {
        let r = local_enumerate(3).unwrap();
        assert_eq!(r.triangulations.len(), 1);
        assert_eq!(r.audit.dead_ends, 0);
        let t = &r.triangulations[0];
        assert_eq!(t.len(), 6);
        assert!(t.validate().is_valid());
        assert!(isomorphic(t, &crate::predicates::freudenthal_seed(3)).is_some());
    }

    #[test]
    fn rejects_other_dims() {
        assert!(local_enumerate(5).is_err());
    }
}
