//! Coherent bistellar flips of periodic triangulations.

use std::collections::{BTreeMap, BTreeSet};

use thiserror::Error;

use crate::exact::{affine_dependence, AffineDependence, Point};
use crate::tri::{PeriodicTriangulation, SimplexClass, ValidationFailure};

/// `n + 2` positioned points with their (unique) affine dependence.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Circuit {
    pub dependence: AffineDependence,
}

impl Circuit {
    pub fn points(&self) -> &[Point] {
        &self.dependence.points
    }

    /// Points with positive / negative / zero coefficient.
    pub fn z_plus(&self) -> Vec<Point> {
        self.dependence.positive().into_iter().map(|i| self.dependence.points[i]).collect()
    }

    pub fn z_minus(&self) -> Vec<Point> {
        self.dependence.negative().into_iter().map(|i| self.dependence.points[i]).collect()
    }

    pub fn z_zero(&self) -> Vec<Point> {
        self.dependence.zero().into_iter().map(|i| self.dependence.points[i]).collect()
    }
}

/// A coherent flip: the star of the circuit's support, factored as the
/// support triangulation joined with the link family.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FlipSpec {
    pub circuit: Circuit,
    /// Positioned vertex sets `L` with every `sigma_i + L` a simplex.
    pub link: Vec<Vec<Point>>,
    pub removed: Vec<SimplexClass>,
    pub inserted: Vec<SimplexClass>,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FlipError {
    #[error("removed class {0:?} is not present")]
    MissingClass(SimplexClass),
    #[error("inserted class {0:?} is already present")]
    PresentClass(SimplexClass),
    #[error("flipped triangulation fails validation: {0}")]
    Invalid(String),
}

/// Positioned simplices (as sorted vertex lists) containing all of `face`.
fn star(t: &PeriodicTriangulation, face: &[Point]) -> Vec<Vec<Point>> {
    let x0 = face[0];
    let mut out = BTreeSet::new();
    for c in t.classes() {
        for w in c.vertices() {
            let shift = x0 - *w;
            let pos: Vec<Point> = c.vertices().iter().map(|&p| p + shift).collect();
            if face.iter().all(|f| pos.contains(f)) {
                let mut s = pos;
                s.sort_unstable();
                out.insert(s);
            }
        }
    }
    out.into_iter().collect()
}

fn link_of(t: &PeriodicTriangulation, face: &[Point]) -> BTreeSet<Vec<Point>> {
    star(t, face).into_iter().map(|s| s.into_iter().filter(|p| !face.contains(p)).collect::<Vec<_>>()).collect()
}

fn class_of(dim: usize, pts: &[Point]) -> SimplexClass {
    crate::tri::Simplex { dim, vertices: pts.to_vec() }.class()
}

/// Tries to build the coherent flip of the circuit formed by the simplex
/// `s1` and the extra point `apex_other` (the apex of its neighbour).
fn flip_for(t: &PeriodicTriangulation, s1: &[Point], apex_other: Point) -> Option<FlipSpec> {
    let n = t.dim();
    let mut pts = s1.to_vec();
    pts.push(apex_other);
    let dep = affine_dependence(&pts, n).ok()?;
    let sign_q = dep.coeffs[n + 1].signum();
    let support: Vec<usize> = dep.support();
    let same: Vec<usize> = support.iter().copied().filter(|&i| dep.coeffs[i].signum() == sign_q).collect();
    let other: Vec<usize> = support.iter().copied().filter(|&i| dep.coeffs[i].signum() == -sign_q).collect();
    if other.len() < 2 {
        // the flip would delete a lattice point from the vertex set
        return None;
    }
    let sigma = |skip: usize| -> Vec<Point> { support.iter().filter(|&&i| i != skip).map(|&i| pts[i]).collect() };
    let mut link: Option<BTreeSet<Vec<Point>>> = None;
    for &i in &same {
        let l = link_of(t, &sigma(i));
        match &link {
            None => link = Some(l),
            Some(prev) if *prev == l => {}
            _ => return None,
        }
    }
    let link = link?;
    if link.is_empty() {
        return None;
    }
    let mut removed = BTreeSet::new();
    let mut inserted = BTreeSet::new();
    let mut count_removed = 0;
    let mut count_inserted = 0;
    for l in &link {
        for &i in &same {
            let mut s = sigma(i);
            s.extend_from_slice(l);
            removed.insert(class_of(n, &s));
            count_removed += 1;
        }
        for &j in &other {
            let mut s = sigma(j);
            s.extend_from_slice(l);
            inserted.insert(class_of(n, &s));
            count_inserted += 1;
        }
    }
    // translates of the flipped region must not overlap each other
    if removed.len() != count_removed || inserted.len() != count_inserted {
        return None;
    }
    if inserted.iter().any(|c| t.contains(c)) || removed.iter().any(|c| !t.contains(c)) {
        return None;
    }
    Some(FlipSpec {
        circuit: Circuit { dependence: dep },
        link: link.into_iter().collect(),
        removed: removed.into_iter().collect(),
        inserted: inserted.into_iter().collect(),
    })
}

/// Counters from a [`find_flips_with_stats`] run.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct FlipSearchStats {
    pub interior_facets: usize,
    pub candidates: usize,
    /// Candidates whose application broke the facet pairing.
    pub rejected: usize,
}

/// All coherent flips of `t`, one per distinct (removed, inserted) pair, in
/// canonical order.
pub fn find_flips(t: &PeriodicTriangulation) -> Vec<FlipSpec> {
    find_flips_with_stats(t).0
}

pub fn find_flips_with_stats(t: &PeriodicTriangulation) -> (Vec<FlipSpec>, FlipSearchStats) {
    let mut stats = FlipSearchStats::default();
    let mut specs: BTreeMap<(Vec<SimplexClass>, Vec<SimplexClass>), FlipSpec> = BTreeMap::new();
    for rec in t.facet_classes() {
        if rec.incidences.len() != 2 {
            continue;
        }
        stats.interior_facets += 1;
        let a = rec.incidences[0];
        let b = rec.incidences[1];
        let s1 = t.classes()[a.class].positioned(a.shift);
        if let Some(spec) = flip_for(t, &s1.vertices, b.apex) {
            let key = (spec.removed.clone(), spec.inserted.clone());
            if specs.contains_key(&key) {
                continue;
            }
            stats.candidates += 1;
            if apply_unchecked(t, &spec).structural_check().is_err() {
                stats.rejected += 1;
                continue;
            }
            specs.insert(key, spec);
        }
    }
    (specs.into_values().collect(), stats)
}

fn apply_unchecked(t: &PeriodicTriangulation, spec: &FlipSpec) -> PeriodicTriangulation {
    let mut classes: Vec<SimplexClass> =
        t.classes().iter().filter(|c| spec.removed.binary_search(c).is_err()).cloned().collect();
    classes.extend(spec.inserted.iter().cloned());
    PeriodicTriangulation::new(t.dim(), classes).expect("same dimension")
}

/// Applies a flip; the result is re-checked for the volume identity and
/// facet pairing.
pub fn apply_flip(t: &PeriodicTriangulation, spec: &FlipSpec) -> Result<PeriodicTriangulation, FlipError> {
    for c in &spec.removed {
        if !t.contains(c) {
            return Err(FlipError::MissingClass(c.clone()));
        }
    }
    for c in &spec.inserted {
        if t.contains(c) {
            return Err(FlipError::PresentClass(c.clone()));
        }
    }
    let out = apply_unchecked(t, spec);
    out.structural_check().map_err(|f: ValidationFailure| FlipError::Invalid(f.to_string()))?;
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::predicates::freudenthal_seed;

    #[test]
    fn dim2_single_flip_and_involution() {
        let t = freudenthal_seed(2);
        // one flip per edge class, all equivalent under the point group
        let flips = find_flips(&t);
        assert_eq!(flips.len(), 3);
        for f in &flips {
            let mut c = f.circuit.dependence.coeffs.clone();
            c.sort();
            assert_eq!(c, vec![-1, -1, 1, 1]);
        }
        let results: std::collections::BTreeSet<_> =
            flips.iter().map(|f| crate::symmetry::canonical_triangulation(&apply_flip(&t, f).unwrap())).collect();
        assert_eq!(results.len(), 1);
        let t2 = apply_flip(&t, &flips[0]).unwrap();
        assert_ne!(t2, t);
        assert!(t2.validate().is_valid());
        let back: Vec<_> = find_flips(&t2).into_iter().filter(|f| f.inserted == flips[0].removed).collect();
        assert_eq!(back.len(), 1);
        assert_eq!(apply_flip(&t2, &back[0]).unwrap(), t);
    }

    #[test]
    fn dim3_flips_stay_valid() {
        let t = freudenthal_seed(3);
        for f in find_flips(&t) {
            let t2 = apply_flip(&t, &f).unwrap();
            assert!(t2.validate().is_valid());
        }
    }
}
