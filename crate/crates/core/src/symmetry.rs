//! Equivalence of periodic triangulations under affine unimodular maps:
//! invariants, canonical forms, isomorphism search and point groups.

use std::collections::hash_map::DefaultHasher;
use std::collections::{BTreeMap, BTreeSet};
use std::hash::{Hash, Hasher};

use num_integer::Integer;

use crate::exact::{dependence_cofactors, IntMatrix, Point, SmallMatrix};
use crate::tri::{facet_map, PeriodicTriangulation, SimplexClass};

/// `x -> a x + b` with `a` integral.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AffineMap {
    pub a: SmallMatrix,
    pub b: Point,
}

impl AffineMap {
    pub fn identity(n: usize) -> AffineMap {
        AffineMap { a: SmallMatrix::identity(n), b: Point::zero() }
    }

    pub fn linear(a: SmallMatrix) -> AffineMap {
        AffineMap { a, b: Point::zero() }
    }

    pub fn dim(&self) -> usize {
        self.a.n
    }

    pub fn apply(&self, p: &Point) -> Point {
        self.a.apply(p) + self.b
    }

    /// `self . other`
    pub fn compose(&self, other: &AffineMap) -> AffineMap {
        AffineMap { a: self.a.compose(&other.a), b: self.a.apply(&other.b) + self.b }
    }

    pub fn inverse(&self) -> Option<AffineMap> {
        let ai = self.a.inverse_unimodular()?;
        let b = -ai.apply(&self.b);
        Some(AffineMap { a: ai, b })
    }

    pub fn is_unimodular(&self) -> bool {
        let d = self.a.det();
        d == 1 || d == -1
    }

    pub fn apply_class(&self, c: &SimplexClass) -> SimplexClass {
        apply_linear(&self.a, c)
    }

    pub fn apply_triangulation(&self, t: &PeriodicTriangulation) -> PeriodicTriangulation {
        t.transform(&self.a)
    }

    /// Whether the map carries the class set of `t1` exactly onto that of `t2`.
    pub fn maps_onto(&self, t1: &PeriodicTriangulation, t2: &PeriodicTriangulation) -> bool {
        t1.len() == t2.len() && t1.classes().iter().all(|c| t2.contains(&self.apply_class(c)))
    }
}

fn apply_linear(a: &SmallMatrix, c: &SimplexClass) -> SimplexClass {
    let v: Vec<Point> = c.vertices().iter().map(|p| a.apply(p)).collect();
    SimplexClass::of_vertices(c.dim(), &v)
}

/// Unimodular linear parts of the symmetries.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PointGroup {
    pub dim: usize,
    pub matrices: BTreeSet<SmallMatrix>,
}

impl PointGroup {
    pub fn order(&self) -> usize {
        self.matrices.len()
    }

    pub fn contains(&self, a: &SmallMatrix) -> bool {
        self.matrices.contains(a)
    }

    pub fn contains_neg_identity(&self) -> bool {
        self.contains(&SmallMatrix::neg_identity(self.dim))
    }

    /// Identity, closure under products and inverses, checked exhaustively.
    pub fn is_group(&self) -> bool {
        if !self.contains(&SmallMatrix::identity(self.dim)) {
            return false;
        }
        for a in &self.matrices {
            match a.inverse_unimodular() {
                Some(ai) if self.contains(&ai) => {}
                _ => return false,
            }
            for b in &self.matrices {
                if !self.contains(&a.compose(b)) {
                    return false;
                }
            }
        }
        true
    }

    /// A small generating set, chosen greedily in matrix order.
    pub fn generators(&self) -> Vec<SmallMatrix> {
        let mut gens = Vec::new();
        let mut span: BTreeSet<SmallMatrix> = BTreeSet::new();
        span.insert(SmallMatrix::identity(self.dim));
        for g in &self.matrices {
            if span.contains(g) {
                continue;
            }
            gens.push(g.clone());
            let mut frontier: Vec<SmallMatrix> = span.iter().cloned().collect();
            while let Some(x) = frontier.pop() {
                for h in &gens {
                    let y = x.compose(h);
                    if span.insert(y.clone()) {
                        frontier.push(y);
                    }
                }
            }
        }
        gens
    }
}

fn hash_of<T: Hash>(x: &T) -> u64 {
    let mut h = DefaultHasher::new();
    x.hash(&mut h);
    h.finish()
}

/// Affine-invariant labels of classes and of their vertices.
#[derive(Clone, Debug)]
pub struct Invariants {
    pub class_keys: Vec<u64>,
    /// `vertex_keys[c][i]` for vertex `i` of class `c` (canonical vertex order).
    pub vertex_keys: Vec<Vec<u64>>,
}

/// Coefficients of the circuit formed by a simplex and one more point, scaled
/// to coprime integers with the extra point's coefficient positive.
fn oriented_circuit(verts: &[Point], apex: Point, n: usize) -> Vec<i128> {
    let mut pts = verts.to_vec();
    pts.push(apex);
    let mut c = dependence_cofactors(&pts, n);
    let g = c.iter().fold(0i128, |g, x| g.gcd(x));
    let s = if c[n + 1] < 0 { -1 } else { 1 };
    for x in c.iter_mut() {
        *x = s * *x / g;
    }
    c
}

pub fn invariants(dim: usize, classes: &[SimplexClass]) -> Invariants {
    let n = dim;
    let fm = facet_map(classes);
    // neighbour across facet (class, omitted) -> (class, omitted, apex in our frame)
    let mut across: BTreeMap<(usize, usize), (usize, usize, Point)> = BTreeMap::new();
    for inc in fm.values() {
        if inc.len() == 2 {
            let (a, b) = (inc[0], inc[1]);
            // b's apex in a's frame: shift facet back by -a.shift
            across.insert((a.class, a.omitted), (b.class, b.omitted, b.apex - a.shift));
            across.insert((b.class, b.omitted), (a.class, a.omitted, a.apex - b.shift));
        }
    }
    let mut vkeys: Vec<Vec<u64>> = Vec::with_capacity(classes.len());
    let mut ckeys: Vec<u64> = Vec::with_capacity(classes.len());
    let mut circuits: Vec<Vec<Option<Vec<i128>>>> = Vec::with_capacity(classes.len());
    for (ci, c) in classes.iter().enumerate() {
        let verts = c.vertices();
        let circ: Vec<Option<Vec<i128>>> =
            (0..=n).map(|j| across.get(&(ci, j)).map(|&(_, _, apex)| oriented_circuit(verts, apex, n))).collect();
        let sig: Vec<u64> = circ
            .iter()
            .enumerate()
            .map(|(j, co)| match co {
                None => 0,
                Some(co) => {
                    let mut rest: Vec<i128> =
                        co[..=n].iter().enumerate().filter(|&(k, _)| k != j).map(|(_, &x)| x).collect();
                    rest.sort_unstable();
                    hash_of(&(co[j], co[n + 1], rest))
                }
            })
            .collect();
        let keys: Vec<u64> = (0..=n)
            .map(|i| {
                let mut others: Vec<(i128, u64)> = (0..=n)
                    .filter(|&j| j != i)
                    .map(|j| (circ[j].as_ref().map_or(i128::MIN, |co| co[i]), sig[j]))
                    .collect();
                others.sort_unstable();
                hash_of(&(sig[i], others))
            })
            .collect();
        let mut sorted = keys.clone();
        sorted.sort_unstable();
        ckeys.push(hash_of(&(c.volume(), sorted)));
        vkeys.push(keys);
        circuits.push(circ);
    }
    // one refinement round through neighbouring classes
    let mut vkeys2 = Vec::with_capacity(classes.len());
    let mut ckeys2 = Vec::with_capacity(classes.len());
    for ci in 0..classes.len() {
        let nb = |j: usize| across.get(&(ci, j)).map_or(0, |&(cj, oj, _)| hash_of(&(ckeys[cj], vkeys[cj][oj])));
        let keys: Vec<u64> = (0..=n)
            .map(|i| {
                let mut others: Vec<(u64, u64)> = (0..=n).filter(|&j| j != i).map(|j| (vkeys[ci][j], nb(j))).collect();
                others.sort_unstable();
                hash_of(&(vkeys[ci][i], nb(i), others))
            })
            .collect();
        let mut sorted = keys.clone();
        sorted.sort_unstable();
        ckeys2.push(hash_of(&(ckeys[ci], sorted)));
        vkeys2.push(keys);
    }
    Invariants { class_keys: ckeys2, vertex_keys: vkeys2 }
}

/// Cheap isomorphism screen: equal results are necessary for isomorphism.
pub fn invariant_signature(t: &PeriodicTriangulation) -> (usize, Vec<u64>, Vec<u64>) {
    let inv = invariants(t.dim(), t.classes());
    let mut keys = inv.class_keys;
    keys.sort_unstable();
    (t.len(), t.volume_vector(), keys)
}

/// Classes carrying the least frequent key (ties broken by key value).
fn base_classes(keys: &[u64]) -> (u64, Vec<usize>) {
    let mut count: BTreeMap<u64, usize> = BTreeMap::new();
    for &k in keys {
        *count.entry(k).or_default() += 1;
    }
    let (&key, _) = count.iter().min_by_key(|(&k, &c)| (c, k)).expect("nonempty");
    (key, (0..keys.len()).filter(|&i| keys[i] == key).collect())
}

/// All vertex orders that sort the vertex keys, ties permuted in every way.
fn orderings(keys: &[u64]) -> Vec<Vec<usize>> {
    let mut idx: Vec<usize> = (0..keys.len()).collect();
    idx.sort_by_key(|&i| (keys[i], i));
    let mut groups: Vec<Vec<usize>> = Vec::new();
    for &i in &idx {
        match groups.last_mut() {
            Some(g) if keys[g[0]] == keys[i] => g.push(i),
            _ => groups.push(vec![i]),
        }
    }
    let mut out: Vec<Vec<usize>> = vec![Vec::new()];
    for g in &groups {
        let perms = permutations(g);
        let mut next = Vec::with_capacity(out.len() * perms.len());
        for prefix in &out {
            for p in &perms {
                let mut v = prefix.clone();
                v.extend_from_slice(p);
                next.push(v);
            }
        }
        out = next;
    }
    out
}

fn permutations(items: &[usize]) -> Vec<Vec<usize>> {
    if items.len() <= 1 {
        return vec![items.to_vec()];
    }
    let mut out = Vec::new();
    for (i, &x) in items.iter().enumerate() {
        let mut rest = items.to_vec();
        rest.remove(i);
        for mut p in permutations(&rest) {
            p.insert(0, x);
            out.push(p);
        }
    }
    out
}

/// Edge matrix (columns `w_i - w_0`) of an ordered simplex.
fn edge_matrix(n: usize, verts: &[Point], order: &[usize]) -> SmallMatrix {
    let mut m = SmallMatrix::identity(n);
    let w0 = verts[order[0]];
    for (col, &i) in order[1..].iter().enumerate() {
        let d = verts[i] - w0;
        for r in 0..n {
            m.m[r][col] = d[r];
        }
    }
    m
}

/// Unimodular `U` with `U D` in Hermite normal form.
fn hnf_transform(d: &SmallMatrix) -> SmallMatrix {
    let (_, u) = d.to_int_matrix().hnf();
    SmallMatrix::from_int_matrix(&u).expect("small entries")
}

/// Canonical representative of the affine-unimodular orbit of a class set.
///
/// Each ordered base simplex picked out by the invariants determines a unique
/// unimodular normalization; the lexicographically least normalized class
/// list over all of them is returned.
pub fn canonical_form(dim: usize, classes: &[SimplexClass]) -> Vec<SimplexClass> {
    canonical_form_with_map(dim, classes).0
}

pub(crate) fn canonical_form_with_map(dim: usize, classes: &[SimplexClass]) -> (Vec<SimplexClass>, SmallMatrix) {
    if classes.is_empty() {
        return (Vec::new(), SmallMatrix::identity(dim));
    }
    let inv = invariants(dim, classes);
    let (_, bases) = base_classes(&inv.class_keys);
    let mut best: Option<(Vec<SimplexClass>, SmallMatrix)> = None;
    let mut seen_u: BTreeSet<SmallMatrix> = BTreeSet::new();
    for &ci in &bases {
        let verts = classes[ci].vertices();
        for order in orderings(&inv.vertex_keys[ci]) {
            let u = hnf_transform(&edge_matrix(dim, verts, &order));
            if !seen_u.insert(u.clone()) {
                continue;
            }
            let mut img: Vec<SimplexClass> = classes.iter().map(|c| apply_linear(&u, c)).collect();
            img.sort_unstable();
            match &best {
                Some((b, _)) if *b <= img => {}
                _ => best = Some((img, u)),
            }
        }
    }
    best.expect("at least one candidate")
}

/// Canonical form of a whole triangulation.
pub fn canonical_triangulation(t: &PeriodicTriangulation) -> PeriodicTriangulation {
    PeriodicTriangulation::new(t.dim(), canonical_form(t.dim(), t.classes())).expect("same dimension")
}

/// Candidate affine maps sending the base simplex of `t1` onto a
/// same-key simplex of `t2`, in deterministic order.
fn candidate_maps(t1: &PeriodicTriangulation, t2: &PeriodicTriangulation) -> Vec<AffineMap> {
    let n = t1.dim();
    let inv1 = invariants(n, t1.classes());
    let inv2 = invariants(n, t2.classes());
    let (key, bases) = base_classes(&inv1.class_keys);
    let base = bases[0];
    let src = t1.classes()[base].vertices();
    let mut src_order: Vec<usize> = (0..=n).collect();
    src_order.sort_by_key(|&i| (inv1.vertex_keys[base][i], i));
    let ds = edge_matrix(n, src, &src_order).to_int_matrix();
    let mut out = Vec::new();
    for (cj, c) in t2.classes().iter().enumerate() {
        if inv2.class_keys[cj] != key {
            continue;
        }
        let dst = c.vertices();
        for order in orderings(&inv2.vertex_keys[cj]) {
            // vertex keys must agree position by position
            if (0..=n).any(|k| inv1.vertex_keys[base][src_order[k]] != inv2.vertex_keys[cj][order[k]]) {
                continue;
            }
            let dt = edge_matrix(n, dst, &order).to_int_matrix();
            if let Some(a) = solve_unimodular(&ds, &dt) {
                let b = dst[order[0]] - a.apply(&src[src_order[0]]);
                out.push(AffineMap { a, b });
            }
        }
    }
    out
}

/// `A` with `A ds = dt`, if integral and unimodular.
fn solve_unimodular(ds: &IntMatrix, dt: &IntMatrix) -> Option<SmallMatrix> {
    let det_s = ds.det().ok()?;
    let det_t = dt.det().ok()?;
    if det_s != det_t && det_s != -det_t.clone() {
        return None;
    }
    // A = dt adj(ds) / det(ds)
    let n = ds.rows();
    let s = SmallMatrix::from_int_matrix(ds).ok()?;
    let t = SmallMatrix::from_int_matrix(dt).ok()?;
    let adj = adjugate(&s);
    let d: i128 = s.det();
    let mut a = SmallMatrix::identity(n);
    for i in 0..n {
        for j in 0..n {
            let v: i128 = (0..n).map(|k| t.m[i][k] as i128 * adj[k][j]).sum();
            if v % d != 0 {
                return None;
            }
            a.m[i][j] = (v / d) as i64;
        }
    }
    let da = a.det();
    if da == 1 || da == -1 {
        Some(a)
    } else {
        None
    }
}

fn adjugate(s: &SmallMatrix) -> Vec<Vec<i128>> {
    let n = s.n;
    let mut out = vec![vec![0i128; n]; n];
    let mut buf = Vec::with_capacity(n * n);
    for i in 0..n {
        for j in 0..n {
            buf.clear();
            for r in (0..n).filter(|&r| r != j) {
                for c in (0..n).filter(|&c| c != i) {
                    buf.push(s.m[r][c]);
                }
            }
            let minor = crate::exact::det_small(n - 1, &buf);
            out[i][j] = if (i + j) % 2 == 0 { minor } else { -minor };
        }
    }
    out
}

/// An affine unimodular map carrying `t1` onto `t2`, if one exists.
pub fn isomorphic(t1: &PeriodicTriangulation, t2: &PeriodicTriangulation) -> Option<AffineMap> {
    if t1.dim() != t2.dim() || invariant_signature(t1) != invariant_signature(t2) {
        return None;
    }
    candidate_maps(t1, t2).into_iter().find(|g| g.maps_onto(t1, t2))
}

/// Symmetries modulo translations.
#[derive(Clone, Debug)]
pub struct Stabilizer {
    /// One map per point-group element, with translation part reduced to zero.
    pub maps: Vec<AffineMap>,
    pub point_group: PointGroup,
}

pub fn stabilizer(t: &PeriodicTriangulation) -> Stabilizer {
    let mut mats = BTreeSet::new();
    for g in candidate_maps(t, t) {
        if g.maps_onto(t, t) {
            mats.insert(g.a);
        }
    }
    let maps = mats.iter().cloned().map(AffineMap::linear).collect();
    Stabilizer { maps, point_group: PointGroup { dim: t.dim(), matrices: mats } }
}

/// Checks that the symmetry group is a semidirect product of the point
/// group with `Z^n`: every point-group matrix is itself a symmetry (zero
/// translation part) and the matrices form a group.
pub fn verify_split(t: &PeriodicTriangulation) -> bool {
    let st = stabilizer(t);
    st.point_group.is_group() && st.maps.iter().all(|g| g.b.is_zero() && g.maps_onto(t, t))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::predicates::freudenthal_seed;

    fn random_unimodular(n: usize, seed: u64) -> SmallMatrix {
        // product of elementary matrices driven by a simple LCG
        let mut s = seed.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
        let mut a = SmallMatrix::identity(n);
        for _ in 0..3 * n {
            s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            let i = (s >> 33) as usize % n;
            let j = (s >> 40) as usize % n;
            if i == j {
                continue;
            }
            let k = ((s >> 50) % 3) as i64 - 1;
            let mut e = SmallMatrix::identity(n);
            e.m[i][j] = k;
            a = e.compose(&a);
        }
        a
    }

    #[test]
    fn canonical_form_is_invariant() {
        for n in 2..=4 {
            let t = freudenthal_seed(n);
            let c = canonical_form(n, t.classes());
            for seed in 0..5 {
                let g = random_unimodular(n, seed);
                let t2 = t.transform(&g);
                assert_eq!(canonical_form(n, t2.classes()), c);
            }
        }
    }

    #[test]
    fn isomorphism_found_for_transformed() {
        let t = freudenthal_seed(3);
        let g = random_unimodular(3, 7);
        let t2 = t.transform(&g);
        let m = isomorphic(&t, &t2).expect("isomorphic");
        assert!(m.maps_onto(&t, &t2));
        let back = m.inverse().unwrap();
        assert!(back.maps_onto(&t2, &t));
    }

    #[test]
    fn freudenthal_point_groups() {
        // S_{n+1} x C_2
        assert_eq!(stabilizer(&freudenthal_seed(2)).point_group.order(), 12);
        assert_eq!(stabilizer(&freudenthal_seed(3)).point_group.order(), 48);
        let st = stabilizer(&freudenthal_seed(3));
        assert!(st.point_group.is_group());
        assert!(st.point_group.contains_neg_identity());
        assert!(verify_split(&freudenthal_seed(3)));
    }
}
