//! Certification tools: Voronoi regulators and the Delaunay test, finite
//! regularity systems, refinement of polytopal tilings by a quadratic form,
//! and seed constructions.

use std::collections::BTreeSet;

use num_traits::{Signed, Zero};
use thiserror::Error;

use crate::exact::{dependence_cofactors, q, Point, QuadForm, Q};
use crate::polyhedra::simplex::{solve_standard, Pricing, StandardForm, StdOutcome};
use crate::polyhedra::{cone_interior_point, dual_description, AffineForm, HPolyhedron, PolyError};
mod regularity;
pub use regularity::{nonregularity_test, regularity_on, HeightConstraint, RegularityResult, RegularitySystem};

use crate::tri::{normalize_points, PeriodicTriangulation, Simplex, SimplexClass, TriError};

#[derive(Debug, Error)]
pub enum PredicateError {
    #[error("quadratic form is not positive definite")]
    NotPositiveDefinite,
    #[error("form has dimension {form}, expected {expected}")]
    FormDimension { form: usize, expected: usize },
    #[error("refined tiling is not a triangulation: {0}")]
    BadRefinement(String),
    #[error("tile is not full-dimensional")]
    FlatTile,
    #[error("float LP guide failed: {0}")]
    FloatGuide(String),
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Tri(#[from] TriError),
}

/// Linear functional `N_{S,v}` on quadratic forms, nonnegative iff `v` lies on
/// or outside the `A`-circumsphere of `S`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Regulator {
    pub simplex: Simplex,
    pub point: Point,
    /// Coefficients on the coordinates of [`QuadForm::to_coords`].
    pub coeffs: Vec<i64>,
}

impl Regulator {
    pub fn eval(&self, a: &QuadForm) -> Q {
        self.coeffs.iter().zip(a.to_coords()).map(|(&c, x)| q(c) * x).sum()
    }

    pub fn as_form(&self) -> AffineForm {
        AffineForm::new(self.coeffs.iter().map(|&c| q(c)).collect(), Q::zero())
    }
}

/// `sigma_S * det` of the lifted matrix with rows `(1, x, A[x])` over the
/// vertices of `s` followed by `v`, as a linear form in `A`.
pub fn voronoi_regulator(s: &Simplex, v: Point) -> Regulator {
    let n = s.dim;
    let mut pts = s.vertices.clone();
    pts.push(v);
    let cof = dependence_cofactors(&pts, n);
    // det M = (-1)^(n+1) sum c_k A[p_k] and sigma_S = sign((-1)^(n+1) c_last)
    let sign: i128 = if cof[n + 1] < 0 { -1 } else { 1 };
    let mut coeffs = vec![0i128; QuadForm::coord_len(n)];
    for (p, c) in pts.iter().zip(&cof) {
        if *c == 0 {
            continue;
        }
        for (acc, m) in coeffs.iter_mut().zip(QuadForm::monomials(p, n)) {
            *acc += sign * c * m as i128;
        }
    }
    Regulator {
        simplex: s.clone(),
        point: v,
        coeffs: coeffs.into_iter().map(|c| i64::try_from(c).expect("regulator coefficient overflow")).collect(),
    }
}

/// One regulator per facet class, oriented from the first incident simplex.
pub fn regulators(t: &PeriodicTriangulation) -> Vec<Regulator> {
    let mut out = Vec::new();
    for rec in t.facet_classes() {
        if rec.incidences.len() != 2 {
            continue;
        }
        let a = rec.incidences[0];
        let b = rec.incidences[1];
        let s1 = t.classes()[a.class].positioned(a.shift);
        out.push(voronoi_regulator(&s1, b.apex));
    }
    out
}

#[derive(Clone, Debug)]
pub struct DelaunayResult {
    pub is_delaunay: bool,
    /// The regulator cone has nonempty interior.
    pub full_dimensional: bool,
    pub positive_definite: bool,
    /// Interior form (when the cone is full-dimensional).
    pub witness: Option<QuadForm>,
    /// Nonnegative weights, summing to one, whose regulator combination
    /// vanishes identically (when the cone is flat).
    pub flat_certificate: Option<Vec<Q>>,
    pub regulators: Vec<Regulator>,
}

impl DelaunayResult {
    /// Re-checks whichever certificate is present.
    pub fn verify(&self) -> bool {
        match (&self.witness, &self.flat_certificate) {
            (Some(a), None) if self.is_delaunay => {
                a.is_positive_definite() && self.regulators.iter().all(|r| r.eval(a).is_positive())
            }
            (_, Some(y)) if !self.full_dimensional => {
                if y.len() != self.regulators.len() || y.iter().any(|v| v.is_negative()) {
                    return false;
                }
                if y.iter().cloned().sum::<Q>() != q(1) {
                    return false;
                }
                let m = self.regulators.first().map_or(0, |r| r.coeffs.len());
                (0..m).all(|k| y.iter().zip(&self.regulators).map(|(w, r)| w * q(r.coeffs[k])).sum::<Q>().is_zero())
            }
            _ => !self.is_delaunay,
        }
    }
}

/// Gordan alternative: weights `y >= 0`, `sum y = 1`, `sum y_i N_i = 0`.
fn flat_cone_certificate(regs: &[Regulator], m: usize) -> Option<Vec<Q>> {
    let cols: Vec<Vec<(usize, Q)>> = regs
        .iter()
        .map(|r| {
            let mut col: Vec<(usize, Q)> =
                r.coeffs.iter().enumerate().filter(|(_, &c)| c != 0).map(|(k, &c)| (k, q(c))).collect();
            col.push((m, q(1)));
            col
        })
        .collect();
    let mut b = vec![Q::zero(); m];
    b.push(q(1));
    let c = vec![Q::zero(); regs.len()];
    match solve_standard(&StandardForm { rows: m + 1, cols, b, c }, Pricing::DantzigThenBland) {
        StdOutcome::Optimal { y, .. } => Some(y),
        _ => None,
    }
}

/// Decides whether `t` is the Delaunay triangulation of some positive
/// definite form, with a witness either way.
pub fn delaunay_test(t: &PeriodicTriangulation) -> Result<DelaunayResult, PredicateError> {
    let n = t.dim();
    let m = QuadForm::coord_len(n);
    let regs = regulators(t);
    let unique: Vec<Regulator> = {
        let mut seen = BTreeSet::new();
        regs.iter().filter(|r| seen.insert(r.coeffs.clone())).cloned().collect()
    };
    if let Some(y) = flat_cone_certificate(&unique, m) {
        // expand back to the full regulator list
        let mut full = vec![Q::zero(); regs.len()];
        for (w, r) in y.iter().zip(&unique) {
            let idx = regs.iter().position(|s| s.coeffs == r.coeffs).expect("present");
            full[idx] = w.clone();
        }
        return Ok(DelaunayResult {
            is_delaunay: false,
            full_dimensional: false,
            positive_definite: false,
            witness: None,
            flat_certificate: Some(full),
            regulators: regs,
        });
    }
    let cone = HPolyhedron::with_inequalities(m, unique.iter().map(|r| r.as_form()).collect());
    let ci = cone_interior_point(&cone, n)?;
    Ok(DelaunayResult {
        is_delaunay: ci.full_dimensional() && ci.positive_definite,
        full_dimensional: ci.full_dimensional(),
        positive_definite: ci.positive_definite,
        witness: ci.form,
        flat_certificate: None,
        regulators: regs,
    })
}

/// A polytope tile given by its vertices (modulo translation).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Tile {
    pub vertices: Vec<Point>,
}

/// The unit cube `[0, 1]^n` as a single tile.
pub fn cube_tile(n: usize) -> Tile {
    let mut v = Vec::with_capacity(1 << n);
    for mask in 0u32..(1 << n) {
        let mut p = Point::zero();
        for k in 0..n {
            if mask & (1 << k) != 0 {
                p[k] = 1;
            }
        }
        v.push(p);
    }
    Tile { vertices: v }
}

/// `simplex x [0, 1]^(n - k)` embedded in dimension `n`.
pub fn prism_tile(c: &SimplexClass, n: usize) -> Tile {
    let k = c.dim();
    let extra = n - k;
    let mut v = Vec::new();
    for p in c.vertices() {
        for mask in 0u32..(1 << extra) {
            let mut x = *p;
            for e in 0..extra {
                if mask & (1 << e) != 0 {
                    x[k + e] = 1;
                }
            }
            v.push(x);
        }
    }
    Tile { vertices: v }
}

#[derive(Clone, Debug)]
pub enum Refinement {
    Triangulation(PeriodicTriangulation),
    /// Some lower face is not a simplex; the cells are returned as vertex sets.
    NonGeneric {
        cells: Vec<Vec<Point>>,
    },
}

impl Refinement {
    pub fn triangulation(&self) -> Option<&PeriodicTriangulation> {
        match self {
            Refinement::Triangulation(t) => Some(t),
            Refinement::NonGeneric { .. } => None,
        }
    }
}

/// Lower facets of the lift `x -> (x, A[x])` of one tile, as vertex subsets.
pub fn lower_cells(tile: &Tile, a: &QuadForm) -> Result<Vec<Vec<Point>>, PredicateError> {
    let n = a.dim();
    // (c, d) with c.x + d <= A[x] on all vertices
    let mut p = HPolyhedron::new(n + 1);
    let heights: Vec<Q> = tile.vertices.iter().map(|x| a.eval(x)).collect();
    for (x, h) in tile.vertices.iter().zip(&heights) {
        let mut coeffs: Vec<Q> = (0..n).map(|k| q(-x[k])).collect();
        coeffs.push(q(-1));
        p.add_inequality(AffineForm::new(coeffs, h.clone()));
    }
    let vrep = match dual_description(&p) {
        Ok(v) => v,
        Err(PolyError::NotPointed) => return Err(PredicateError::FlatTile),
        Err(e) => return Err(e.into()),
    };
    let mut cells = Vec::new();
    for v in &vrep.vertices {
        let cell: Vec<Point> = tile
            .vertices
            .iter()
            .zip(&heights)
            .filter(|(x, h)| {
                let val: Q = (0..n).map(|k| &v[k] * q(x[k])).sum::<Q>() + &v[n];
                val == **h
            })
            .map(|(x, _)| *x)
            .collect();
        cells.push(cell);
    }
    cells.sort();
    Ok(cells)
}

/// Refines a periodic tiling by the regular subdivision induced by `a`.
pub fn refine(dim: usize, tiles: &[Tile], a: &QuadForm) -> Result<Refinement, PredicateError> {
    if a.dim() != dim {
        return Err(PredicateError::FormDimension { form: a.dim(), expected: dim });
    }
    if !a.is_positive_definite() {
        return Err(PredicateError::NotPositiveDefinite);
    }
    let mut simplices = Vec::new();
    let mut odd = Vec::new();
    for tile in tiles {
        for cell in lower_cells(tile, a)? {
            if cell.len() == dim + 1 {
                simplices.push(SimplexClass::from_vertices(dim, cell)?);
            } else {
                let mut c = cell;
                normalize_points(&mut c);
                odd.push(c);
            }
        }
    }
    if !odd.is_empty() {
        odd.sort();
        odd.dedup();
        return Ok(Refinement::NonGeneric { cells: odd });
    }
    let t = PeriodicTriangulation::new(dim, simplices)?;
    t.structural_check().map_err(|f| PredicateError::BadRefinement(f.to_string()))?;
    Ok(Refinement::Triangulation(t))
}

/// The `n!` order simplices `conv{0, e_s1, e_s1 + e_s2, ...}` of the unit cube.
pub fn freudenthal_seed(n: usize) -> PeriodicTriangulation {
    let mut perms: Vec<Vec<usize>> = vec![vec![]];
    for k in 0..n {
        let mut next = Vec::with_capacity(perms.len() * (k + 1));
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
            let mut v = Vec::with_capacity(n + 1);
            let mut cur = Point::zero();
            v.push(cur);
            for &i in p {
                cur[i] += 1;
                v.push(cur);
            }
            Simplex { dim: n, vertices: v }.class()
        })
        .collect();
    PeriodicTriangulation::new(n, classes).expect("valid dimension")
}

/// Extends a triangulation of `Z^k` to `Z^n` by prisms `S x [0,1]^(n-k)` and
/// refines them with `a`.
pub fn prism_extend(t: &PeriodicTriangulation, n: usize, a: &QuadForm) -> Result<Refinement, PredicateError> {
    assert!(n > t.dim(), "target dimension must exceed {}", t.dim());
    let tiles: Vec<Tile> = t.classes().iter().map(|c| prism_tile(c, n)).collect();
    refine(n, &tiles, a)
}

/// A positive definite form with pairwise distinct, "random looking"
/// off-diagonal entries, generic for the small configurations used here.
pub fn generic_form(n: usize) -> QuadForm {
    const PRIMES: [i64; 28] =
        [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89, 97, 101, 103, 107];
    let mut coords = Vec::with_capacity(QuadForm::coord_len(n));
    let mut k = 0;
    for i in 0..n {
        for j in i..n {
            if i == j {
                coords.push(q(1) + Q::new(PRIMES[k % 28].into(), 1009.into()));
            } else {
                coords.push(Q::new((PRIMES[k % 28] * 3 + 1).into(), (1000 + 7 * k as i64).into()) / q(n as i64 * 4));
            }
            k += 1;
        }
    }
    let a = QuadForm::from_coords(n, &coords);
    debug_assert!(a.is_positive_definite());
    a
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pts(rows: &[&[i64]]) -> Vec<Point> {
        rows.iter().map(|r| Point::new(r)).collect()
    }

    #[test]
    fn regulator_examples() {
        let s = Simplex::new(2, pts(&[&[0, 0], &[1, 0], &[0, 1]])).unwrap();
        let id = QuadForm::identity(2);
        assert_eq!(voronoi_regulator(&s, Point::new(&[1, 1])).eval(&id), q(0));
        assert!(voronoi_regulator(&s, Point::new(&[2, 2])).eval(&id).is_positive());
        let s1 = Simplex::new(1, pts(&[&[0], &[1]])).unwrap();
        let r = voronoi_regulator(&s1, Point::new(&[2]));
        assert_eq!(r.coeffs, vec![2]);
        // orientation does not matter
        let s2 = Simplex::new(1, pts(&[&[1], &[0]])).unwrap();
        assert_eq!(voronoi_regulator(&s2, Point::new(&[2])).coeffs, vec![2]);
    }

    #[test]
    fn freudenthal_is_delaunay() {
        for n in 1..=4 {
            let t = freudenthal_seed(n);
            let d = delaunay_test(&t).unwrap();
            assert!(d.is_delaunay, "n = {n}");
            assert!(d.verify());
        }
    }

    #[test]
    fn square_cut_is_not_generic_for_identity() {
        let r = refine(2, &[cube_tile(2)], &QuadForm::identity(2)).unwrap();
        assert!(matches!(r, Refinement::NonGeneric { .. }));
        let a = QuadForm::from_i64(2, &[2, 1, 1, 2]).unwrap();
        let t = refine(2, &[cube_tile(2)], &a).unwrap();
        let t = t.triangulation().unwrap();
        assert_eq!(t.len(), 2);
        assert!(t.validate().is_valid());
    }

    #[test]
    fn cube_refinement_dim3() {
        let a = generic_form(3);
        let r = refine(3, &[cube_tile(3)], &a).unwrap();
        let t = r.triangulation().expect("generic");
        assert_eq!(t.len(), 6);
        assert!(t.validate().is_valid());
    }

    #[test]
    fn non_pd_rejected() {
        let a = QuadForm::from_i64(2, &[1, 0, 0, -1]).unwrap();
        assert!(matches!(refine(2, &[cube_tile(2)], &a), Err(PredicateError::NotPositiveDefinite)));
    }

    #[test]
    fn prism_of_dim2() {
        let t = freudenthal_seed(2);
        let r = prism_extend(&t, 3, &generic_form(3)).unwrap();
        let t3 = r.triangulation().unwrap();
        assert_eq!(t3.total_volume(), 6);
        assert!(t3.validate().is_valid());
    }
}
