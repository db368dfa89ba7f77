//! Candidate neighbours of a unimodular simplex across one of its facets.
//!
//! A volume-1 simplex with facet opposite vertex `v_i` is moved to standard
//! position: `v_i -> 0` and the facet vertices to `e_1 .. e_n`, so the facet
//! lies on `sum x = 1`. A volume-1 neighbour then has its apex on `sum x = 2`.

use thiserror::Error;

use crate::exact::{Point, SmallMatrix};
use crate::tri::{CompatCache, Simplex, SimplexClass};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum NeighborError {
    #[error("hardcoded neighbour lists exist only in dimensions 3 and 4, not {0}")]
    Dimension(usize),
    #[error("simplex has volume {0}; neighbour lists assume volume 1")]
    NotUnimodular(u64),
    #[error("facet index {index} out of range for dimension {dim}")]
    Facet { index: usize, dim: usize },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NeighborMode {
    /// The known lists for dimensions 3 and 4.
    Hardcoded,
    /// Exhaustive search of apexes with standard coordinates in `[-r, r]`.
    Search { radius: i64 },
}

/// A possible neighbour `conv(facet + apex)`, with `apex = sum b_j v_j`
/// (`sum b_j = 1`) in terms of the base simplex vertices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NeighborCandidate {
    pub facet: Vec<Point>,
    pub apex: Point,
    pub b: Vec<i64>,
    /// Index of the base vertex not on the facet.
    pub omitted: usize,
}

impl NeighborCandidate {
    pub fn simplex(&self) -> Simplex {
        let mut v = self.facet.clone();
        v.push(self.apex);
        Simplex { dim: self.facet.len(), vertices: v }
    }
}

/// The unimodular map `x -> v_i + M x` sending the standard simplex onto `s`
/// with `0 -> v_i`.
struct StandardPosition {
    origin: Point,
    m: SmallMatrix,
    m_inv: SmallMatrix,
    facet_idx: Vec<usize>,
}

fn standard_position(s: &Simplex, omitted: usize) -> Result<StandardPosition, NeighborError> {
    let n = s.dim;
    if omitted > n {
        return Err(NeighborError::Facet { index: omitted, dim: n });
    }
    if s.volume() != 1 {
        return Err(NeighborError::NotUnimodular(s.volume()));
    }
    let origin = s.vertices[omitted];
    let facet_idx: Vec<usize> = (0..=n).filter(|&j| j != omitted).collect();
    let rows: Vec<Vec<i64>> =
        (0..n).map(|k| facet_idx.iter().map(|&j| (s.vertices[j] - origin)[k]).collect()).collect();
    let m = SmallMatrix::from_rows(&rows);
    let m_inv = m.inverse_unimodular().expect("volume 1");
    Ok(StandardPosition { origin, m, m_inv, facet_idx })
}

impl StandardPosition {
    fn candidate(&self, s: &Simplex, omitted: usize, c: &Point) -> NeighborCandidate {
        let n = s.dim;
        let apex = self.origin + self.m.apply(c);
        let mut b = vec![0; n + 1];
        for (k, &j) in self.facet_idx.iter().enumerate() {
            b[j] = c[k];
        }
        b[omitted] = 1 - (0..n).map(|k| c[k]).sum::<i64>();
        let facet = self.facet_idx.iter().map(|&j| s.vertices[j]).collect();
        NeighborCandidate { facet, apex, b, omitted }
    }

    fn standard_coords(&self, w: &Point) -> Point {
        self.m_inv.apply(&(*w - self.origin))
    }
}

fn permutations_of(base: &[i64]) -> Vec<Point> {
    let mut v = base.to_vec();
    v.sort_unstable();
    let mut out = vec![Point::new(&v)];
    // next lexicographic permutation
    loop {
        let Some(i) = (0..v.len().saturating_sub(1)).rev().find(|&i| v[i] < v[i + 1]) else {
            break;
        };
        let j = (i + 1..v.len()).rev().find(|&j| v[j] > v[i]).unwrap();
        v.swap(i, j);
        v[i + 1..].reverse();
        out.push(Point::new(&v));
    }
    out
}

/// Standard-position apexes of the known lists.
pub fn hardcoded_apexes(n: usize) -> Result<Vec<Point>, NeighborError> {
    match n {
        3 => Ok(permutations_of(&[1, 1, 0])),
        4 => {
            let mut v = permutations_of(&[1, 1, 0, 0]);
            v.extend(permutations_of(&[1, 1, 1, -1]));
            Ok(v)
        }
        _ => Err(NeighborError::Dimension(n)),
    }
}

/// Standard-position apexes `c` with `sum c = 2`, `|c_k| <= radius`, such that
/// the neighbour is compatible with the standard simplex and with itself.
pub fn search_apexes(n: usize, radius: i64, cache: &mut CompatCache) -> Vec<Point> {
    let base = Simplex::standard(n).class();
    let facet: Vec<Point> = (0..n).map(Point::unit).collect();
    let mut out = Vec::new();
    let mut c = vec![-radius; n];
    loop {
        if c.iter().sum::<i64>() == 2 {
            let apex = Point::new(&c);
            let mut v = facet.clone();
            v.push(apex);
            let t = SimplexClass::of_vertices(n, &v);
            if cache.check(&t, &t).is_none() && cache.check(&base, &t).is_none() {
                out.push(apex);
            }
        }
        let mut k = n;
        loop {
            if k == 0 {
                out.sort_unstable();
                return out;
            }
            k -= 1;
            if c[k] < radius {
                c[k] += 1;
                for x in c.iter_mut().skip(k + 1) {
                    *x = -radius;
                }
                break;
            }
        }
    }
}

/// Neighbour candidates of `s` across the facet opposite vertex `omitted`.
pub fn neighbor_candidates(
    s: &Simplex,
    omitted: usize,
    mode: NeighborMode,
) -> Result<Vec<NeighborCandidate>, NeighborError> {
    neighbor_candidates_with(s, omitted, mode, &mut CompatCache::default())
}

pub fn neighbor_candidates_with(
    s: &Simplex,
    omitted: usize,
    mode: NeighborMode,
    cache: &mut CompatCache,
) -> Result<Vec<NeighborCandidate>, NeighborError> {
    let apexes = match mode {
        NeighborMode::Hardcoded => hardcoded_apexes(s.dim)?,
        NeighborMode::Search { radius } => search_apexes(s.dim, radius, cache),
    };
    let sp = standard_position(s, omitted)?;
    Ok(apexes.iter().map(|c| sp.candidate(s, omitted, c)).collect())
}

/// Encoding of a neighbour apex `w` of the volume-1 simplex `s` across the
/// facet opposite `omitted`: the `b` coefficients with `w = sum b_j v_j`.
pub fn encode_apex(s: &Simplex, omitted: usize, w: &Point) -> Result<Vec<i64>, NeighborError> {
    let sp = standard_position(s, omitted)?;
    let c = sp.standard_coords(w);
    Ok(sp.candidate(s, omitted, &c).b)
}

/// Raw and surviving candidate counts for a facet of the standard simplex:
/// the raw list, and those also passing a self-compatibility check of the
/// pair `(standard, candidate)` in both directions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CandidateAudit {
    pub raw: usize,
    pub surviving: usize,
}

pub fn audit_hardcoded(n: usize) -> Result<CandidateAudit, NeighborError> {
    let mut cache = CompatCache::default();
    let s = Simplex::standard(n);
    let cands = neighbor_candidates(&s, 0, NeighborMode::Hardcoded)?;
    let base = s.class();
    let surviving = cands
        .iter()
        .filter(|c| {
            let t = c.simplex().class();
            cache.check(&t, &t).is_none() && cache.check(&base, &t).is_none()
        })
        .count();
    Ok(CandidateAudit { raw: cands.len(), surviving })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hardcoded_counts() {
        assert_eq!(hardcoded_apexes(3).unwrap().len(), 3);
        assert_eq!(hardcoded_apexes(4).unwrap().len(), 10);
        assert_eq!(hardcoded_apexes(5), Err(NeighborError::Dimension(5)));
    }

    #[test]
    fn search_matches_hardcoded_dim3() {
        let mut cache = CompatCache::default();
        let mut h = hardcoded_apexes(3).unwrap();
        h.sort_unstable();
        assert_eq!(search_apexes(3, 4, &mut cache), h);
    }

    #[test]
    fn candidates_map_back_and_encode() {
        let s = Simplex::from_coords(&[vec![0, 0, 0], vec![1, 0, 0], vec![1, 1, 0], vec![1, 1, 1]]).unwrap();
        for omitted in 0..4 {
            for c in neighbor_candidates(&s, omitted, NeighborMode::Hardcoded).unwrap() {
                assert_eq!(c.simplex().volume(), 1);
                assert_eq!(c.b[omitted], -1);
                assert_eq!(c.b.iter().sum::<i64>(), 1);
                assert_eq!(encode_apex(&s, omitted, &c.apex).unwrap(), c.b);
                // apex on the far side of the facet
                let shared: Vec<Point> = c.facet.clone();
                assert!(!shared.contains(&c.apex));
            }
        }
    }

    #[test]
    fn rejects_non_unimodular() {
        let s = Simplex::from_coords(&[vec![0, 0, 0], vec![2, 0, 0], vec![0, 1, 0], vec![0, 0, 1]]).unwrap();
        assert_eq!(neighbor_candidates(&s, 0, NeighborMode::Hardcoded), Err(NeighborError::NotUnimodular(2)));
    }
}
