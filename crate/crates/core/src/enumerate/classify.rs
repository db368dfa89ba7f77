//! Adjacency encodings across an archive, and the infinite neighbour family
//! in dimension 5.

use std::collections::BTreeSet;
use std::fmt;

use super::neighbors::encode_apex;
use crate::exact::Point;
use crate::tri::{pairwise_compatible, PeriodicTriangulation, Simplex};

/// A neighbour of a volume-1 simplex encoded as `b` coefficients, up to
/// permuting vertices: the coefficient at the omitted vertex, and the
/// remaining coefficients sorted in decreasing order.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct AdjacencyCode {
    pub omitted_coeff: i64,
    pub others: Vec<i64>,
}

impl AdjacencyCode {
    pub fn from_b(b: &[i64], omitted: usize) -> AdjacencyCode {
        let mut others: Vec<i64> = b.iter().enumerate().filter(|&(j, _)| j != omitted).map(|(_, &x)| x).collect();
        others.sort_unstable_by(|a, b| b.cmp(a));
        AdjacencyCode { omitted_coeff: b[omitted], others }
    }

    /// Volume of the neighbour `S'` (the simplex `S` has volume 1).
    pub fn neighbour_volume(&self) -> u64 {
        self.omitted_coeff.unsigned_abs()
    }

    /// The pair `{(b_0, .., b_n), 0}` with the omitted vertex listed first.
    pub fn b(&self) -> Vec<i64> {
        let mut v = vec![self.omitted_coeff];
        v.extend_from_slice(&self.others);
        v
    }
}

impl fmt::Display for AdjacencyCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let b: Vec<String> = self.b().iter().map(|x| x.to_string()).collect();
        write!(f, "{{({}), 0}}", b.join(","))
    }
}

/// The five encodings expected across the dimension-5 flip closure.
pub fn expected_dim5_codes() -> BTreeSet<AdjacencyCode> {
    [
        vec![-1, 1, 1, 0, 0, 0],
        vec![-1, 1, 1, 1, -1, 0],
        vec![-1, 2, 1, 1, -1, -1],
        vec![-1, 1, 1, 1, 1, -2],
        vec![-1, 3, 2, -1, -1, -1],
    ]
    .iter()
    .map(|b| AdjacencyCode::from_b(b, 0))
    .collect()
}

/// Encodings of all adjacent pairs `(S, S')` with `S` of volume 1, over all
/// triangulations given.
pub fn adjacency_classification<'a>(
    archive: impl IntoIterator<Item = &'a PeriodicTriangulation>,
) -> BTreeSet<AdjacencyCode> {
    let mut out = BTreeSet::new();
    for t in archive {
        for rec in t.facet_classes() {
            if rec.incidences.len() != 2 {
                continue;
            }
            for (a, b) in [(0, 1), (1, 0)] {
                let ia = rec.incidences[a];
                let ib = rec.incidences[b];
                let s: Simplex = t.classes()[ia.class].positioned(ia.shift);
                if s.volume() != 1 {
                    continue;
                }
                let code = encode_apex(&s, ia.omitted, &ib.apex).expect("volume 1");
                out.insert(AdjacencyCode::from_b(&code, ia.omitted));
            }
        }
    }
    out
}

fn infinite_family_pair(k: i64, negative_control: bool) -> (Simplex, Simplex) {
    let o = Point::zero();
    let units: Vec<Point> = (1..5).map(Point::unit).collect();
    let x = Point::new(&[-1, 0, 0, 0, 0]);
    let xp = if negative_control { Point::new(&[1, 1, 1, 2, k + 1]) } else { Point::new(&[1, 1, 1, 1, k + 1]) };
    let mut s = vec![o];
    s.extend_from_slice(&units);
    let mut t = s.clone();
    s.push(x);
    t.push(xp);
    (Simplex { dim: 5, vertices: s }, Simplex { dim: 5, vertices: t })
}

/// Outcome for one `k`: compatibility of every translate pair, and whether
/// the two simplices share exactly the facet `x_1 = 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FamilyRow {
    pub k: i64,
    pub volumes: (u64, u64),
    pub shared_facet: bool,
    /// A translation exhibiting an improper overlap, if any.
    pub witness: Option<Point>,
}

impl FamilyRow {
    pub fn holds(&self) -> bool {
        self.volumes == (1, 1) && self.shared_facet && self.witness.is_none()
    }
}

fn infinite_family_row(k: i64, negative_control: bool) -> FamilyRow {
    let (s, t) = infinite_family_pair(k, negative_control);
    let (cs, ct) = (s.class(), t.class());
    let shared = s.vertices.iter().filter(|v| t.vertices.contains(v)).count() == 5;
    let witness = pairwise_compatible(&cs, &ct)
        .or_else(|| pairwise_compatible(&ct, &ct))
        .or_else(|| pairwise_compatible(&cs, &cs));
    FamilyRow { k, volumes: (s.volume(), t.volume()), shared_facet: shared, witness }
}

/// Checks the neighbours `T_k` for `k = 0..=k_max`.
pub fn infinite_family(k_max: i64) -> Vec<FamilyRow> {
    (0..=k_max).map(|k| infinite_family_row(k, false)).collect()
}

/// The same family with apex `(1, 1, 1, 2, k + 1)`; expected to fail.
pub fn infinite_family_control(k_max: i64) -> Vec<FamilyRow> {
    (0..=k_max).map(|k| infinite_family_row(k, true)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn code_normalization() {
        let a = AdjacencyCode::from_b(&[0, 1, -1, 0, 1, 0], 2);
        assert_eq!(a.b(), vec![-1, 1, 1, 0, 0, 0]);
        assert_eq!(a.to_string(), "{(-1,1,1,0,0,0), 0}");
        assert_eq!(expected_dim5_codes().len(), 5);
    }

    #[test]
    fn harness_small_k() {
        for row in infinite_family(3) {
            assert!(row.holds(), "{row:?}");
        }
        assert!(infinite_family_control(3).iter().any(|r| !r.holds()));
    }

    #[test]
    fn dim4_freudenthal_codes() {
        let t = crate::predicates::freudenthal_seed(4);
        let codes = adjacency_classification([&t]);
        assert!(!codes.is_empty());
        for c in codes {
            assert_eq!(c.omitted_coeff, -1);
            assert_eq!(c.b().iter().sum::<i64>(), 1);
        }
    }
}
