//! Summary statistics of a triangulation, and of archives of them.

use serde::Serialize;

use crate::predicates::{delaunay_test, PredicateError};
use crate::symmetry::stabilizer;
use crate::tri::PeriodicTriangulation;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Stats {
    pub dim: usize,
    pub classes: usize,
    /// Sorted simplex volumes.
    pub volumes: Vec<u64>,
    pub total_volume: u64,
    pub facet_classes: usize,
    pub point_group_order: usize,
    pub centrally_symmetric: bool,
    pub delaunay: bool,
}

pub fn stats(t: &PeriodicTriangulation) -> Result<Stats, PredicateError> {
    Ok(Stats {
        dim: t.dim(),
        classes: t.len(),
        volumes: t.volume_vector(),
        total_volume: t.total_volume(),
        facet_classes: t.facet_classes().len(),
        point_group_order: stabilizer(t).point_group.order(),
        centrally_symmetric: t.is_centrally_symmetric(),
        delaunay: delaunay_test(t)?.is_delaunay,
    })
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct ArchiveSummary {
    pub total: usize,
    pub delaunay: usize,
    pub centrally_symmetric: usize,
    pub centrally_symmetric_non_delaunay: usize,
    pub max_point_group_order: usize,
    /// Distinct simplex volumes over the archive.
    pub volumes: Vec<u64>,
}

impl ArchiveSummary {
    pub fn add(&mut self, s: &Stats) {
        self.total += 1;
        self.delaunay += s.delaunay as usize;
        self.centrally_symmetric += s.centrally_symmetric as usize;
        self.centrally_symmetric_non_delaunay += (s.centrally_symmetric && !s.delaunay) as usize;
        self.max_point_group_order = self.max_point_group_order.max(s.point_group_order);
        for &v in &s.volumes {
            if let Err(pos) = self.volumes.binary_search(&v) {
                self.volumes.insert(pos, v);
            }
        }
    }
}

pub fn summarize<'a>(archive: impl IntoIterator<Item = &'a Stats>) -> ArchiveSummary {
    let mut s = ArchiveSummary::default();
    for x in archive {
        s.add(x);
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::predicates::freudenthal_seed;

    #[test]
    fn freudenthal_dim3() {
        let s = stats(&freudenthal_seed(3)).unwrap();
        assert_eq!(s.classes, 6);
        assert_eq!(s.total_volume, 6);
        assert_eq!(s.point_group_order, 48);
        assert!(s.centrally_symmetric && s.delaunay);
        let json = serde_json::to_string(&s).unwrap();
        assert!(json.contains("\"point_group_order\":48"));
        let sum = summarize([&s, &s]);
        assert_eq!((sum.total, sum.delaunay, sum.centrally_symmetric_non_delaunay), (2, 2, 0));
    }
}
