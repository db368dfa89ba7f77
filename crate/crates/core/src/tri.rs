//! Periodic triangulations as finite sets of simplex translation classes.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_traits::{Signed, Zero};
use thiserror::Error;

use crate::exact::{det_small, q, Point, MAX_DIM, Q};
use crate::polyhedra::simplex::{solve_standard, Pricing, StandardForm, StdOutcome};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TriError {
    #[error("dimension {0} is outside 1..={MAX_DIM}")]
    BadDimension(usize),
    #[error("a simplex in dimension {dim} needs {expected} vertices, got {got}")]
    VertexCount { dim: usize, expected: usize, got: usize },
    #[error("degenerate simplex {0:?}")]
    Degenerate(Vec<Point>),
    #[error("mixed dimensions: {0} and {1}")]
    DimensionMismatch(usize, usize),
}

fn factorial(n: usize) -> u64 {
    (1..=n as u64).product()
}

/// Integer affine functional `x -> c . x + k`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct IntAffine {
    pub c: Point,
    pub k: i64,
}

impl IntAffine {
    #[inline]
    pub fn eval(&self, x: &Point) -> i64 {
        self.c.dot(x) + self.k
    }
}

/// A simplex with integer vertices in positioned (not translation-reduced) form.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Simplex {
    pub dim: usize,
    pub vertices: Vec<Point>,
}

impl fmt::Debug for Simplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Simplex{:?}", self.vertices)
    }
}

pub(crate) fn signed_volume(dim: usize, vertices: &[Point]) -> i128 {
    let mut m = Vec::with_capacity(dim * dim);
    for v in &vertices[1..] {
        for k in 0..dim {
            m.push(v[k] - vertices[0][k]);
        }
    }
    det_small(dim, &m)
}

impl Simplex {
    pub fn new(dim: usize, vertices: Vec<Point>) -> Result<Simplex, TriError> {
        if dim == 0 || dim > MAX_DIM {
            return Err(TriError::BadDimension(dim));
        }
        if vertices.len() != dim + 1 {
            return Err(TriError::VertexCount { dim, expected: dim + 1, got: vertices.len() });
        }
        if signed_volume(dim, &vertices) == 0 {
            return Err(TriError::Degenerate(vertices));
        }
        Ok(Simplex { dim, vertices })
    }

    pub fn from_coords(rows: &[Vec<i64>]) -> Result<Simplex, TriError> {
        let dim = rows.first().map_or(0, |r| r.len());
        Simplex::new(dim, rows.iter().map(|r| Point::new(r)).collect())
    }

    /// The standard simplex `conv{0, e_1, ..., e_n}`.
    pub fn standard(dim: usize) -> Simplex {
        let mut v = vec![Point::zero()];
        v.extend((0..dim).map(Point::unit));
        Simplex { dim, vertices: v }
    }

    pub fn signed_volume(&self) -> i128 {
        signed_volume(self.dim, &self.vertices)
    }

    /// `|det(v_1 - v_0, ..., v_n - v_0)|`, i.e. `n!` times the Euclidean volume.
    pub fn volume(&self) -> u64 {
        self.signed_volume().unsigned_abs() as u64
    }

    pub fn translate(&self, t: Point) -> Simplex {
        Simplex { dim: self.dim, vertices: self.vertices.iter().map(|&v| v + t).collect() }
    }

    pub fn class(&self) -> SimplexClass {
        SimplexClass::of_vertices(self.dim, &self.vertices)
    }

    pub fn contains_vertex(&self, p: &Point) -> bool {
        self.vertices.contains(p)
    }

    /// Facet inequalities: `g_i >= 0` on the simplex, `g_i(v_j) = 0` for `j != i`,
    /// and `g_i(v_i) = |det|`. Thus `g_i / |det|` is the `i`-th barycentric
    /// coordinate.
    pub fn facet_functionals(&self) -> Vec<IntAffine> {
        facet_functionals(self.dim, &self.vertices)
    }
}

pub(crate) fn facet_functionals(n: usize, verts: &[Point]) -> Vec<IntAffine> {
    // adjugate of H with columns (1, v_j): row i of adj(H) gives det(H) * lambda_i
    let m = n + 1;
    let mut h = vec![0i64; m * m];
    for (j, v) in verts.iter().enumerate() {
        h[j] = 1;
        for r in 0..n {
            h[(r + 1) * m + j] = v[r];
        }
    }
    let det = det_small(m, &h);
    let sign: i128 = if det < 0 { -1 } else { 1 };
    let mut buf = Vec::with_capacity(n * n);
    let mut out = Vec::with_capacity(m);
    for i in 0..m {
        // adj(H)[i][r] = (-1)^{i+r} * minor(r, i)
        let mut coeffs = [0i128; MAX_DIM + 1];
        for (r, coeff) in coeffs.iter_mut().enumerate().take(m) {
            buf.clear();
            for rr in (0..m).filter(|&rr| rr != r) {
                for cc in (0..m).filter(|&cc| cc != i) {
                    buf.push(h[rr * m + cc]);
                }
            }
            let minor = det_small(n, &buf);
            *coeff = if (i + r) % 2 == 0 { minor } else { -minor } * sign;
        }
        let mut c = Point::zero();
        for r in 0..n {
            c[r] = coeffs[r + 1] as i64;
        }
        out.push(IntAffine { c, k: coeffs[0] as i64 });
    }
    out
}

/// Canonical representative of a simplex modulo integer translations: the
/// lexicographically smallest vertex is moved to the origin and the vertices
/// are sorted.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SimplexClass {
    dim: usize,
    verts: Vec<Point>,
}

impl fmt::Debug for SimplexClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, v) in self.verts.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{:?}", v)?;
        }
        write!(f, "]")
    }
}

/// Sorts and moves the smallest point to the origin. Returns the translation used.
pub(crate) fn normalize_points(pts: &mut [Point]) -> Point {
    pts.sort_unstable();
    let shift = -pts[0];
    for p in pts.iter_mut() {
        *p = *p + shift;
    }
    shift
}

impl SimplexClass {
    pub(crate) fn of_vertices(dim: usize, vertices: &[Point]) -> SimplexClass {
        let mut verts = vertices.to_vec();
        normalize_points(&mut verts);
        SimplexClass { dim, verts }
    }

    pub fn canonicalize(s: &Simplex) -> SimplexClass {
        s.class()
    }

    /// Validating constructor from arbitrary vertices.
    pub fn from_vertices(dim: usize, vertices: Vec<Point>) -> Result<SimplexClass, TriError> {
        Ok(Simplex::new(dim, vertices)?.class())
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Sorted vertices of the canonical representative; the first is the origin.
    pub fn vertices(&self) -> &[Point] {
        &self.verts
    }

    pub fn rep(&self) -> Simplex {
        Simplex { dim: self.dim, vertices: self.verts.clone() }
    }

    pub fn positioned(&self, t: Point) -> Simplex {
        self.rep().translate(t)
    }

    pub fn volume(&self) -> u64 {
        signed_volume(self.dim, &self.verts).unsigned_abs() as u64
    }

    /// Class of the point reflection `x -> -x`.
    pub fn negated(&self) -> SimplexClass {
        let v: Vec<Point> = self.verts.iter().map(|&p| -p).collect();
        SimplexClass::of_vertices(self.dim, &v)
    }

    /// Canonical facet opposite vertex `i` together with the translation that
    /// carries the representative's facet onto it.
    pub fn facet(&self, i: usize) -> (FacetClass, Point) {
        let mut f: Vec<Point> = self.verts.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, &p)| p).collect();
        let shift = normalize_points(&mut f);
        (FacetClass { verts: f }, shift)
    }
}

/// Canonical `(n-1)`-face modulo translation, normalized like [`SimplexClass`].
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FacetClass {
    pub verts: Vec<Point>,
}

/// One simplex containing a facet: class `class` translated by `shift`
/// contains the canonical facet, with `apex` the remaining vertex.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Incidence {
    pub class: usize,
    pub omitted: usize,
    pub shift: Point,
    pub apex: Point,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FacetRecord {
    pub facet: FacetClass,
    pub incidences: Vec<Incidence>,
}

/// All facet classes of a list of simplex classes, keyed canonically.
pub(crate) fn facet_map(classes: &[SimplexClass]) -> BTreeMap<FacetClass, Vec<Incidence>> {
    let mut map: BTreeMap<FacetClass, Vec<Incidence>> = BTreeMap::new();
    for (ci, c) in classes.iter().enumerate() {
        for i in 0..=c.dim {
            let (f, shift) = c.facet(i);
            let apex = c.verts[i] + shift;
            map.entry(f).or_default().push(Incidence { class: ci, omitted: i, shift, apex });
        }
    }
    map
}

/// A `Z^n`-periodic triangulation given by its simplex translation classes,
/// stored sorted and without duplicates.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PeriodicTriangulation {
    dim: usize,
    classes: Vec<SimplexClass>,
}

impl fmt::Debug for PeriodicTriangulation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PeriodicTriangulation(dim {}, {} classes)", self.dim, self.classes.len())
    }
}

impl PeriodicTriangulation {
    pub fn new(dim: usize, mut classes: Vec<SimplexClass>) -> Result<PeriodicTriangulation, TriError> {
        if dim == 0 || dim > MAX_DIM {
            return Err(TriError::BadDimension(dim));
        }
        if let Some(c) = classes.iter().find(|c| c.dim != dim) {
            return Err(TriError::DimensionMismatch(dim, c.dim));
        }
        classes.sort_unstable();
        classes.dedup();
        Ok(PeriodicTriangulation { dim, classes })
    }

    pub fn from_simplices(dim: usize, simplices: &[Simplex]) -> Result<PeriodicTriangulation, TriError> {
        let classes = simplices
            .iter()
            .map(|s| SimplexClass::from_vertices(dim, s.vertices.clone()))
            .collect::<Result<Vec<_>, _>>()?;
        PeriodicTriangulation::new(dim, classes)
    }

    pub(crate) fn from_sorted_unchecked(dim: usize, classes: Vec<SimplexClass>) -> PeriodicTriangulation {
        debug_assert!(classes.windows(2).all(|w| w[0] < w[1]));
        PeriodicTriangulation { dim, classes }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn classes(&self) -> &[SimplexClass] {
        &self.classes
    }

    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    pub fn contains(&self, c: &SimplexClass) -> bool {
        self.classes.binary_search(c).is_ok()
    }

    pub fn index_of(&self, c: &SimplexClass) -> Option<usize> {
        self.classes.binary_search(c).ok()
    }

    pub fn total_volume(&self) -> u64 {
        self.classes.iter().map(|c| c.volume()).sum()
    }

    /// Sorted list of class volumes.
    pub fn volume_vector(&self) -> Vec<u64> {
        let mut v: Vec<u64> = self.classes.iter().map(|c| c.volume()).collect();
        v.sort_unstable();
        v
    }

    pub fn facet_classes(&self) -> Vec<FacetRecord> {
        facet_map(&self.classes).into_iter().map(|(facet, incidences)| FacetRecord { facet, incidences }).collect()
    }

    /// Volume identity and facet double covering only (no overlap search).
    pub fn structural_check(&self) -> Result<(), ValidationFailure> {
        let total = self.total_volume();
        if total != factorial(self.dim) {
            return Err(ValidationFailure::Volume { expected: factorial(self.dim), got: total });
        }
        for (facet, inc) in facet_map(&self.classes) {
            if inc.len() != 2 {
                return Err(ValidationFailure::FacetCover { facet, incidences: inc.len() });
            }
            // the two apexes must lie on opposite sides of the facet
            if !opposite_sides(self.dim, &facet.verts, &inc[0].apex, &inc[1].apex) {
                return Err(ValidationFailure::SameSide { facet });
            }
        }
        Ok(())
    }

    /// Full face-to-face validation: volume identity, facet pairing, and
    /// pairwise compatibility of every pair of classes (including each class
    /// with itself). The first failure in canonical order is reported.
    pub fn validate(&self) -> ValidationReport {
        self.validate_with(&mut CompatCache::default())
    }

    pub fn validate_with(&self, cache: &mut CompatCache) -> ValidationReport {
        if let Err(f) = self.structural_check() {
            return ValidationReport { failure: Some(f) };
        }
        for i in 0..self.classes.len() {
            for j in i..self.classes.len() {
                if let Some(v) = cache.check(&self.classes[i], &self.classes[j]) {
                    return ValidationReport {
                        failure: Some(ValidationFailure::Overlap {
                            first: self.classes[i].clone(),
                            second: self.classes[j].clone(),
                            translation: v,
                        }),
                    };
                }
            }
        }
        ValidationReport { failure: None }
    }

    /// Invariance under `x -> -x` composed with integer translations.
    pub fn is_centrally_symmetric(&self) -> bool {
        self.classes.iter().all(|c| self.contains(&c.negated()))
    }

    pub fn max_volume(&self) -> u64 {
        self.classes.iter().map(|c| c.volume()).max().unwrap_or(0)
    }

    /// Checks `max vol <= n!` and, for centrally symmetric triangulations,
    /// `max vol <= 2^n n! / C(2n, n)`.
    pub fn volume_bounds_hold(&self) -> bool {
        let n = self.dim as u64;
        let m = self.max_volume();
        if m > factorial(self.dim) {
            return false;
        }
        if self.is_centrally_symmetric() {
            // compare m * C(2n, n) <= 2^n n!
            let binom: u128 = (1..=n as u128).fold(1u128, |acc, k| acc * (n as u128 + k) / k);
            return m as u128 * binom <= (1u128 << n) * factorial(self.dim) as u128;
        }
        true
    }

    /// Image under `x -> a x` for a unimodular integer matrix.
    pub fn transform(&self, a: &crate::exact::SmallMatrix) -> PeriodicTriangulation {
        let classes = self
            .classes
            .iter()
            .map(|c| {
                let v: Vec<Point> = c.verts.iter().map(|p| a.apply(p)).collect();
                SimplexClass::of_vertices(self.dim, &v)
            })
            .collect();
        PeriodicTriangulation::new(self.dim, classes).expect("same dimension")
    }
}

fn opposite_sides(n: usize, facet: &[Point], a: &Point, b: &Point) -> bool {
    let mut va = facet.to_vec();
    va.push(*a);
    let mut vb = facet.to_vec();
    vb.push(*b);
    let sa = signed_volume(n, &va);
    let sb = signed_volume(n, &vb);
    (sa > 0 && sb < 0) || (sa < 0 && sb > 0)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ValidationFailure {
    Volume {
        expected: u64,
        got: u64,
    },
    FacetCover {
        facet: FacetClass,
        incidences: usize,
    },
    SameSide {
        facet: FacetClass,
    },
    /// `first` and `second + translation` do not meet in a common face.
    Overlap {
        first: SimplexClass,
        second: SimplexClass,
        translation: Point,
    },
}

impl fmt::Display for ValidationFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ValidationFailure::Volume { expected, got } => {
                write!(f, "volume sum {got} differs from {expected}")
            }
            ValidationFailure::FacetCover { facet, incidences } => {
                write!(f, "facet {:?} has {incidences} incidences instead of 2", facet.verts)
            }
            ValidationFailure::SameSide { facet } => {
                write!(f, "both simplices on facet {:?} lie on the same side", facet.verts)
            }
            ValidationFailure::Overlap { first, second, translation } => {
                write!(f, "{first:?} and {second:?} + {translation:?} overlap")
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ValidationReport {
    pub failure: Option<ValidationFailure>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.failure.is_none()
    }
}

/// A packing by simplex classes whose facets are covered at most twice.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PartialTriangulation {
    dim: usize,
    classes: Vec<SimplexClass>,
}

impl PartialTriangulation {
    pub fn new(dim: usize, mut classes: Vec<SimplexClass>) -> PartialTriangulation {
        classes.sort_unstable();
        classes.dedup();
        PartialTriangulation { dim, classes }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn classes(&self) -> &[SimplexClass] {
        &self.classes
    }

    pub fn total_volume(&self) -> u64 {
        self.classes.iter().map(|c| c.volume()).sum()
    }

    pub fn with(&self, c: SimplexClass) -> PartialTriangulation {
        let mut classes = self.classes.clone();
        if let Err(pos) = classes.binary_search(&c) {
            classes.insert(pos, c);
        }
        PartialTriangulation { dim: self.dim, classes }
    }

    /// Facets covered once, in canonical order, with the single incidence.
    pub fn frontier(&self) -> Vec<(FacetClass, Incidence)> {
        facet_map(&self.classes).into_iter().filter(|(_, inc)| inc.len() == 1).map(|(f, inc)| (f, inc[0])).collect()
    }

    /// Volume at most `n!` and no facet covered more than twice.
    pub fn invariants_hold(&self) -> bool {
        self.total_volume() <= factorial(self.dim) && facet_map(&self.classes).values().all(|inc| inc.len() <= 2)
    }

    pub fn is_complete(&self) -> bool {
        self.total_volume() == factorial(self.dim) && self.frontier().is_empty()
    }

    pub fn into_triangulation(self) -> PeriodicTriangulation {
        PeriodicTriangulation::from_sorted_unchecked(self.dim, self.classes)
    }
}

/// Whether every translate of `b` meets `a` in a common face.
///
/// Returns a translation `v` with `a` and `b + v` overlapping improperly, or
/// `None` when the classes are compatible.
pub fn pairwise_compatible(a: &SimplexClass, b: &SimplexClass) -> Option<Point> {
    let n = a.dim;
    assert_eq!(n, b.dim, "dimension mismatch");
    let pa = &a.verts;
    let pb = &b.verts;
    let fa = facet_functionals(n, pa);
    let fb = facet_functionals(n, pb);
    // for v to matter, a and b + v must meet, so v lies in a - b
    let mut bbox = Vec::with_capacity(n);
    for k in 0..n {
        let amin = pa.iter().map(|p| p[k]).min().unwrap();
        let amax = pa.iter().map(|p| p[k]).max().unwrap();
        let bmin = pb.iter().map(|p| p[k]).min().unwrap();
        let bmax = pb.iter().map(|p| p[k]).max().unwrap();
        bbox.push((amin - bmax, amax - bmin));
    }
    // max over b + v of g(x) = g.c . v + max_u g(u)
    let fa_max: Vec<i64> = fa.iter().map(|g| pb.iter().map(|u| g.eval(u)).max().unwrap()).collect();
    // g' on b, translated: g'(x - v) maximized over a
    let fb_max: Vec<i64> = fb.iter().map(|g| pa.iter().map(|u| g.eval(u)).max().unwrap()).collect();

    let mut v = Point::zero();
    for k in 0..n {
        v[k] = bbox[k].0;
    }
    loop {
        let in_body = fa.iter().zip(&fa_max).all(|(g, m)| g.c.dot(&v) + m >= 0)
            && fb.iter().zip(&fb_max).all(|(g, m)| m - g.c.dot(&v) >= 0);
        if in_body && !translate_ok(n, pa, pb, &fa, &fb, v) {
            return Some(v);
        }
        let mut k = n;
        loop {
            if k == 0 {
                return None;
            }
            k -= 1;
            if v[k] < bbox[k].1 {
                v[k] += 1;
                for j in k + 1..n {
                    v[j] = bbox[j].0;
                }
                break;
            }
        }
    }
}

/// Decides whether `a` and `b + v` intersect in `conv` of their common vertices.
fn translate_ok(n: usize, pa: &[Point], pb: &[Point], fa: &[IntAffine], fb: &[IntAffine], v: Point) -> bool {
    let qb: Vec<Point> = pb.iter().map(|&p| p + v).collect();
    let in_a: Vec<bool> = pa.iter().map(|p| qb.contains(p)).collect();
    let in_b: Vec<bool> = qb.iter().map(|p| pa.contains(p)).collect();
    if in_a.iter().all(|&x| x) {
        return true;
    }
    // a facet hyperplane of one simplex weakly separating the other, touching
    // it only in common vertices, proves the intersection is conv(common)
    for g in fa {
        let vals: Vec<i64> = qb.iter().map(|p| g.eval(p)).collect();
        if vals.iter().all(|&x| x <= 0) && vals.iter().zip(&in_b).all(|(&x, &c)| x < 0 || c) {
            return true;
        }
    }
    for g in fb {
        // g(x - v) on a
        let vals: Vec<i64> = pa.iter().map(|p| g.eval(&(*p - v))).collect();
        if vals.iter().all(|&x| x <= 0) && vals.iter().zip(&in_a).all(|(&x, &c)| x < 0 || c) {
            return true;
        }
    }
    // maximize the barycentric weight outside the common vertices over the
    // intersection; a positive optimum means an improper overlap
    let m = n + 1;
    let mut cols = Vec::with_capacity(2 * m);
    let mut c = Vec::with_capacity(2 * m);
    for (i, p) in pa.iter().enumerate() {
        let mut col: Vec<(usize, Q)> = (0..n).filter(|&k| p[k] != 0).map(|k| (k, q(p[k]))).collect();
        col.push((n, q(1)));
        cols.push(col);
        c.push(if in_a[i] { Q::zero() } else { q(-1) });
    }
    for (j, p) in qb.iter().enumerate() {
        let mut col: Vec<(usize, Q)> = (0..n).filter(|&k| p[k] != 0).map(|k| (k, q(-p[k]))).collect();
        col.push((n + 1, q(1)));
        cols.push(col);
        c.push(if in_b[j] { Q::zero() } else { q(-1) });
    }
    let mut b = vec![Q::zero(); n];
    b.push(q(1));
    b.push(q(1));
    let lp = StandardForm { rows: n + 2, cols, b, c };
    match solve_standard(&lp, Pricing::Bland) {
        StdOutcome::Infeasible { .. } => true,
        StdOutcome::Optimal { y, .. } => {
            let val: Q = y.iter().zip(&lp.c).map(|(a, b)| a * b).sum();
            !val.is_negative()
        }
        StdOutcome::Unbounded { .. } => unreachable!("bounded by the simplex constraints"),
    }
}

/// Memo table for [`pairwise_compatible`], keyed by ordered class pairs.
#[derive(Default, Debug)]
pub struct CompatCache {
    table: HashMap<(SimplexClass, SimplexClass), Option<Point>>,
    pub hits: u64,
    pub misses: u64,
}

impl CompatCache {
    pub fn check(&mut self, a: &SimplexClass, b: &SimplexClass) -> Option<Point> {
        let key = (a.clone(), b.clone());
        if let Some(r) = self.table.get(&key) {
            self.hits += 1;
            return *r;
        }
        let rev = (b.clone(), a.clone());
        if let Some(r) = self.table.get(&rev) {
            self.hits += 1;
            return r.map(|v| -v);
        }
        self.misses += 1;
        let r = pairwise_compatible(a, b);
        self.table.insert(key, r);
        r
    }

    pub fn len(&self) -> usize {
        self.table.len()
    }

    pub fn is_empty(&self) -> bool {
        self.table.is_empty()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pts(rows: &[&[i64]]) -> Vec<Point> {
        rows.iter().map(|r| Point::new(r)).collect()
    }

    pub(crate) fn freudenthal(n: usize) -> PeriodicTriangulation {
        let mut perms: Vec<Vec<usize>> = vec![vec![]];
        for k in 0..n {
            let mut next = Vec::new();
            for p in &perms {
                for pos in 0..=p.len() {
                    let mut q = p.clone();
                    q.insert(pos, k);
                    next.push(q);
                }
            }
            perms = next;
        }
        let classes = perms
            .iter()
            .map(|p| {
                let mut v = vec![Point::zero()];
                let mut cur = Point::zero();
                for &i in p {
                    cur[i] += 1;
                    v.push(cur);
                }
                SimplexClass::of_vertices(n, &v)
            })
            .collect();
        PeriodicTriangulation::new(n, classes).unwrap()
    }

    #[test]
    fn canonical_examples() {
        let s = Simplex::standard(3);
        let mut sorted = s.vertices.clone();
        sorted.sort();
        assert_eq!(s.class().vertices(), &sorted[..]);
        let t = s.translate(Point::new(&[5, -2, 7]));
        assert_eq!(t.class(), s.class());
        let u = Simplex::new(3, pts(&[&[1, 0, 0], &[1, 1, 0], &[2, 0, 0], &[1, 0, 1]])).unwrap();
        assert_eq!(u.class().vertices(), &pts(&[&[0, 0, 0], &[0, 0, 1], &[0, 1, 0], &[1, 0, 0]])[..]);
    }

    #[test]
    fn degenerate_rejected() {
        let e = Simplex::new(2, pts(&[&[0, 0], &[1, 1], &[2, 2]]));
        assert!(matches!(e, Err(TriError::Degenerate(_))));
        assert!(matches!(Simplex::new(2, pts(&[&[0, 0], &[1, 1]])), Err(TriError::VertexCount { .. })));
    }

    #[test]
    fn facet_functionals_are_barycentric() {
        let s = Simplex::new(3, pts(&[&[0, 0, 0], &[1, 0, 0], &[0, 1, 0], &[0, 1, 2]])).unwrap();
        let f = s.facet_functionals();
        let vol = s.volume() as i64;
        for (i, g) in f.iter().enumerate() {
            for (j, v) in s.vertices.iter().enumerate() {
                assert_eq!(g.eval(v), if i == j { vol } else { 0 });
            }
        }
    }

    #[test]
    fn standard_simplex_self_compatible() {
        for n in 1..=5 {
            let c = Simplex::standard(n).class();
            assert_eq!(pairwise_compatible(&c, &c), None);
        }
    }

    #[test]
    fn incompatible_pair_has_witness() {
        let a = Simplex::standard(3).class();
        let b = Simplex::new(3, pts(&[&[0, 0, 0], &[1, 0, 0], &[0, 1, 0], &[1, 1, 1]])).unwrap().class();
        let v = pairwise_compatible(&a, &b).expect("overlap expected");
        assert!(pairwise_compatible(&b, &a).is_some());
        let _ = v;
    }

    #[test]
    fn freudenthal_valid() {
        for n in 1..=4 {
            let t = freudenthal(n);
            assert_eq!(t.total_volume(), factorial(n));
            assert!(t.validate().is_valid(), "n = {n}");
            assert!(t.is_centrally_symmetric());
        }
        assert_eq!(freudenthal(3).facet_classes().len(), 12);
    }

    #[test]
    fn damaged_triangulations_rejected() {
        let t = freudenthal(3);
        let mut cl = t.classes().to_vec();
        let removed = cl.pop().unwrap();
        let five = PeriodicTriangulation::new(3, cl.clone()).unwrap();
        assert!(matches!(five.validate().failure, Some(ValidationFailure::Volume { got: 5, .. })));
        cl.push(removed.negated());
        if let Ok(bad) = PeriodicTriangulation::new(3, cl) {
            if bad.len() == 6 {
                assert!(!bad.validate().is_valid());
            }
        }
    }

    #[test]
    fn partial_frontier() {
        let p = PartialTriangulation::new(3, vec![Simplex::standard(3).class()]);
        assert_eq!(p.frontier().len(), 4);
        assert!(p.invariants_hold());
    }
}
