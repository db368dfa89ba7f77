//! Finite regularity systems for heights on `Z^n`.
//!
//! Every pair of adjacent simplices `S1, S2` with `q` the apex of `S2` gives
//! the folding inequality `D f(q) - sum_i g_i(q) f(v_i) >= D`, where `g_i` are
//! the integer facet functionals of `S1` and `D = vol(S1)`. The margin `D`
//! replaces strictness (the system is a cone shifted by a constant, so any
//! strict solution scales into one with margin).
//!
//! Systems are stored as sparse integer rows. Solving goes through a float LP
//! to locate a candidate, then everything is redone exactly: heights are
//! rounded and checked in integers, infeasibility is proved by an exact solve
//! restricted to the support of the float Farkas vector.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use microlp::{ComparisonOp, OptimizationDirection, Problem};
use num_traits::{Signed, Zero};

use super::PredicateError;
use crate::exact::{q, Point, Q};
use crate::polyhedra::simplex::{solve_standard, Pricing, StandardForm, StdOutcome};
use crate::polyhedra::{AffineForm, HPolyhedron};
use crate::tri::{PeriodicTriangulation, Simplex};

/// `sum terms + constant >= 0` over the free height variables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HeightConstraint {
    pub terms: Vec<(usize, i64)>,
    pub constant: i64,
}

impl HeightConstraint {
    fn eval_int(&self, f: &[i128]) -> i128 {
        self.terms.iter().map(|&(j, c)| c as i128 * f[j]).sum::<i128>() + self.constant as i128
    }

    pub fn eval(&self, f: &[Q]) -> Q {
        self.terms.iter().map(|&(j, c)| q(c) * &f[j]).sum::<Q>() + q(self.constant)
    }
}

/// Finite truncation of the regularity problem.
#[derive(Clone, Debug)]
pub struct RegularitySystem {
    /// Side length of the box the simplices were taken from.
    pub radius: i64,
    pub points: Vec<Point>,
    pub simplices: Vec<Simplex>,
    /// `(S1, S2)` index pairs sharing a facet; pair `k` yields constraints
    /// `2k` and `2k + 1`.
    pub adjacent: Vec<(usize, usize)>,
    /// Heights of these points are pinned to zero (affine gauge).
    pub gauge: Vec<Point>,
    /// Variable index of each point, `None` for gauge points.
    pub var_of: Vec<Option<usize>>,
    pub vars: usize,
    pub constraints: Vec<HeightConstraint>,
}

impl RegularitySystem {
    /// All translates of the classes with every vertex in `[lo, hi]^n`.
    pub fn build_box(t: &PeriodicTriangulation, lo: i64, hi: i64) -> RegularitySystem {
        let n = t.dim();
        let mut simplices = Vec::new();
        for c in t.classes() {
            let vs = c.vertices();
            let mut tlo = Point::zero();
            let mut thi = Point::zero();
            for k in 0..n {
                tlo[k] = lo - vs.iter().map(|p| p[k]).min().unwrap();
                thi[k] = hi - vs.iter().map(|p| p[k]).max().unwrap();
            }
            if (0..n).any(|k| tlo[k] > thi[k]) {
                continue;
            }
            let mut v = tlo;
            'outer: loop {
                simplices.push(c.positioned(v));
                let mut k = n;
                loop {
                    if k == 0 {
                        break 'outer;
                    }
                    k -= 1;
                    if v[k] < thi[k] {
                        v[k] += 1;
                        for j in k + 1..n {
                            v[j] = tlo[j];
                        }
                        break;
                    }
                }
            }
        }
        simplices.sort();
        Self::from_simplices(n, hi - lo, simplices)
    }

    pub fn build(t: &PeriodicTriangulation, r: i64) -> RegularitySystem {
        Self::build_box(t, -r, r)
    }

    pub fn from_simplices(n: usize, radius: i64, simplices: Vec<Simplex>) -> RegularitySystem {
        let mut points: BTreeSet<Point> = BTreeSet::new();
        for s in &simplices {
            points.extend(s.vertices.iter().copied());
        }
        let points: Vec<Point> = points.into_iter().collect();
        let index: HashMap<Point, usize> = points.iter().enumerate().map(|(i, p)| (*p, i)).collect();

        let mut facets: HashMap<Vec<Point>, Vec<usize>> = HashMap::new();
        for (si, s) in simplices.iter().enumerate() {
            for i in 0..=n {
                let mut f: Vec<Point> =
                    s.vertices.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, p)| *p).collect();
                f.sort_unstable();
                facets.entry(f).or_default().push(si);
            }
        }
        let mut adjacent: Vec<(usize, usize)> =
            facets.values().filter(|v| v.len() == 2).map(|v| (v[0].min(v[1]), v[0].max(v[1]))).collect();
        adjacent.sort_unstable();

        // gauge: zero heights on the first simplex (invariance under affine maps)
        let gauge: Vec<Point> = simplices.first().map(|s| s.vertices.clone()).unwrap_or_default();
        let mut vars = 0;
        let var_of: Vec<Option<usize>> = points
            .iter()
            .map(|p| {
                (!gauge.contains(p)).then(|| {
                    vars += 1;
                    vars - 1
                })
            })
            .collect();

        let row = |s1: &Simplex, apex: Point| {
            let d = s1.volume() as i64;
            let mut terms: Vec<(usize, i64)> = Vec::with_capacity(n + 2);
            let mut add = |p: &Point, c: i64| {
                if let (Some(k), true) = (var_of[index[p]], c != 0) {
                    match terms.iter_mut().find(|(j, _)| *j == k) {
                        Some(t) => t.1 += c,
                        None => terms.push((k, c)),
                    }
                }
            };
            add(&apex, d);
            for (gi, v) in s1.facet_functionals().iter().zip(&s1.vertices) {
                add(v, -gi.eval(&apex));
            }
            terms.retain(|t| t.1 != 0);
            terms.sort_unstable();
            HeightConstraint { terms, constant: -d }
        };
        let mut constraints = Vec::with_capacity(2 * adjacent.len());
        for &(a, b) in &adjacent {
            let (sa, sb) = (&simplices[a], &simplices[b]);
            let apex_b = *sb.vertices.iter().find(|p| !sa.contains_vertex(p)).unwrap();
            let apex_a = *sa.vertices.iter().find(|p| !sb.contains_vertex(p)).unwrap();
            constraints.push(row(sa, apex_b));
            constraints.push(row(sb, apex_a));
        }
        RegularitySystem { radius, points, simplices, adjacent, gauge, var_of, vars, constraints }
    }

    pub fn constraint_count(&self) -> usize {
        self.constraints.len()
    }

    /// Dense form of the system, for interoperating with the generic LP tools.
    pub fn to_polyhedron(&self) -> HPolyhedron {
        let mut p = HPolyhedron::new(self.vars);
        for c in &self.constraints {
            let mut coeffs = vec![Q::zero(); self.vars];
            for &(j, v) in &c.terms {
                coeffs[j] = q(v);
            }
            p.add_inequality(AffineForm::new(coeffs, q(c.constant)));
        }
        p
    }

    /// Exact check that `f` (one value per variable) satisfies every constraint.
    pub fn satisfied_by(&self, f: &[Q]) -> bool {
        f.len() == self.vars && self.constraints.iter().all(|c| !c.eval(f).is_negative())
    }

    /// Exact check of a Farkas certificate: nonnegative multipliers whose
    /// combination has zero linear part and negative constant.
    pub fn refuted_by(&self, multipliers: &[(usize, Q)]) -> bool {
        if multipliers.iter().any(|(k, y)| *k >= self.constraints.len() || y.is_negative()) {
            return false;
        }
        let mut lin: HashMap<usize, Q> = HashMap::new();
        let mut constant = Q::zero();
        for (k, y) in multipliers {
            let c = &self.constraints[*k];
            for &(j, v) in &c.terms {
                *lin.entry(j).or_insert_with(Q::zero) += y * q(v);
            }
            constant += y * q(c.constant);
        }
        lin.values().all(Zero::is_zero) && constant.is_negative()
    }

    fn heights_at_points(&self, f: &[Q]) -> Vec<(Point, Q)> {
        self.points.iter().zip(&self.var_of).map(|(p, v)| (*p, v.map_or_else(Q::zero, |j| f[j].clone()))).collect()
    }

    /// Float feasibility solve; `None` when the float solver reports infeasible.
    fn float_heights(&self) -> Result<Option<Vec<f64>>, PredicateError> {
        let mut p = Problem::new(OptimizationDirection::Minimize);
        let vs: Vec<_> = (0..self.vars).map(|_| p.add_var(0.0, (f64::NEG_INFINITY, f64::INFINITY))).collect();
        for c in &self.constraints {
            p.add_constraint(
                c.terms.iter().map(|&(j, v)| (vs[j], v as f64)).collect::<Vec<_>>(),
                ComparisonOp::Ge,
                -c.constant as f64,
            );
        }
        match p.solve() {
            Ok(out) => {
                let sol = out.solution().ok_or_else(|| float_error("interrupted"))?;
                Ok(Some(vs.iter().map(|&v| sol[v]).collect()))
            }
            Err(microlp::Error::Infeasible) => Ok(None),
            Err(e) => Err(float_error(&e.to_string())),
        }
    }

    /// Float solve of `y >= 0, sum y_k row_k = 0, sum y_k D_k = 1`, minimizing
    /// `sum y` to keep the support small. Returns the support, or `None` if
    /// the float solver finds no certificate.
    fn float_farkas_support(&self) -> Result<Option<Vec<usize>>, PredicateError> {
        let mut p = Problem::new(OptimizationDirection::Minimize);
        let ys: Vec<_> = (0..self.constraints.len()).map(|_| p.add_var(1.0, (0.0, f64::INFINITY))).collect();
        let mut by_var: Vec<Vec<(microlp::Variable, f64)>> = vec![Vec::new(); self.vars];
        for (k, c) in self.constraints.iter().enumerate() {
            for &(j, v) in &c.terms {
                by_var[j].push((ys[k], v as f64));
            }
        }
        for terms in by_var.into_iter().filter(|t| !t.is_empty()) {
            p.add_constraint(terms, ComparisonOp::Eq, 0.0);
        }
        let norm: Vec<_> = self.constraints.iter().enumerate().map(|(k, c)| (ys[k], -c.constant as f64)).collect();
        p.add_constraint(norm, ComparisonOp::Eq, 1.0);
        let out = match p.solve() {
            Ok(out) => out,
            Err(microlp::Error::Infeasible) => return Ok(None),
            Err(e) => return Err(float_error(&e.to_string())),
        };
        let sol = out.solution().ok_or_else(|| float_error("interrupted"))?;
        Ok(Some((0..ys.len()).filter(|&k| sol[ys[k]] > 1e-12).collect()))
    }

    /// Basic solution of `sum y_k row_k = 0, sum y_k D_k = 1` on the columns
    /// `cols` (free columns at zero); `Some` when it is a valid certificate.
    fn basic_certificate(&self, cols: &[usize]) -> Option<Vec<(usize, Q)>> {
        let mut eq_of: HashMap<usize, usize> = HashMap::new();
        let mut rows: Vec<BTreeMap<usize, Q>> = vec![BTreeMap::new()];
        for (i, &k) in cols.iter().enumerate() {
            let c = &self.constraints[k];
            rows[0].insert(i, q(-c.constant));
            for &(j, v) in &c.terms {
                let r = *eq_of.entry(j).or_insert_with(|| {
                    rows.push(BTreeMap::new());
                    rows.len() - 1
                });
                rows[r].insert(i, q(v));
            }
        }
        let mut rhs = vec![Q::zero(); rows.len()];
        rhs[0] = q(1);
        let y = sparse_basic_solution(rows, rhs, cols.len())?;
        let cert: Vec<(usize, Q)> = cols.iter().zip(y).filter(|(_, y)| !y.is_zero()).map(|(&k, y)| (k, y)).collect();
        self.refuted_by(&cert).then_some(cert)
    }

    /// Exact solve of the Farkas system restricted to the columns `cols`.
    /// Either a certificate over `cols`, or heights satisfying those
    /// constraints (from the dual).
    fn exact_on(&self, cols: &[usize]) -> ExactOutcome {
        let mut rows: HashMap<usize, usize> = HashMap::new();
        for &k in cols {
            for &(j, _) in &self.constraints[k].terms {
                let next = rows.len();
                rows.entry(j).or_insert(next);
            }
        }
        let norm = rows.len();
        let lp = StandardForm {
            rows: norm + 1,
            cols: cols
                .iter()
                .map(|&k| {
                    let c = &self.constraints[k];
                    let mut col: Vec<(usize, Q)> = c.terms.iter().map(|&(j, v)| (rows[&j], q(v))).collect();
                    col.push((norm, q(-c.constant)));
                    col
                })
                .collect(),
            b: (0..=norm).map(|i| q((i == norm) as i64)).collect(),
            c: vec![Q::zero(); cols.len()],
        };
        match solve_standard(&lp, Pricing::DantzigThenBland) {
            StdOutcome::Optimal { y, .. } => {
                ExactOutcome::Refuted(cols.iter().zip(y).filter(|(_, y)| !y.is_zero()).map(|(&k, y)| (k, y)).collect())
            }
            // u^T col_k <= 0 with u_norm > 0: f = -u / u_norm has margin D_k
            StdOutcome::Infeasible { farkas } => {
                let scale = farkas[norm].clone();
                let mut f = vec![Q::zero(); self.vars];
                for (&j, &r) in &rows {
                    f[j] = -farkas[r].clone() / &scale;
                }
                ExactOutcome::Heights(f)
            }
            StdOutcome::Unbounded { .. } => unreachable!("zero objective"),
        }
    }
}

/// Sparse rational elimination (sparsest row first, shortest column within
/// it) and back substitution. Returns the basic solution with non-pivot
/// columns at zero, or `None` if the system is inconsistent.
fn sparse_basic_solution(mut rows: Vec<BTreeMap<usize, Q>>, mut rhs: Vec<Q>, ncols: usize) -> Option<Vec<Q>> {
    let mut col_rows: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); ncols];
    for (r, row) in rows.iter().enumerate() {
        for &c in row.keys() {
            col_rows[c].insert(r);
        }
    }
    let mut done = vec![false; rows.len()];
    let mut pivots = Vec::new();
    while let Some(r) = (0..rows.len()).filter(|&r| !done[r] && !rows[r].is_empty()).min_by_key(|&r| rows[r].len()) {
        let c = *rows[r].keys().min_by_key(|&&c| col_rows[c].len()).unwrap();
        done[r] = true;
        pivots.push((r, c));
        let prow = rows[r].clone();
        let prhs = rhs[r].clone();
        let others: Vec<usize> = col_rows[c].iter().copied().filter(|&o| !done[o]).collect();
        for o in others {
            let factor = &rows[o][&c] / &prow[&c];
            for (&cc, v) in &prow {
                let x = rows[o].get(&cc).cloned().unwrap_or_else(Q::zero) - &factor * v;
                if x.is_zero() {
                    rows[o].remove(&cc);
                    col_rows[cc].remove(&o);
                } else {
                    rows[o].insert(cc, x);
                    col_rows[cc].insert(o);
                }
            }
            rhs[o] = &rhs[o] - &factor * &prhs;
        }
    }
    if (0..rows.len()).any(|r| rows[r].is_empty() && !rhs[r].is_zero()) {
        return None;
    }
    let mut y = vec![Q::zero(); ncols];
    for &(r, c) in pivots.iter().rev() {
        let rest: Q = rows[r].iter().filter(|&(&cc, _)| cc != c).map(|(&cc, v)| v * &y[cc]).sum();
        y[c] = (&rhs[r] - rest) / &rows[r][&c];
    }
    Some(y)
}

enum ExactOutcome {
    Refuted(Vec<(usize, Q)>),
    Heights(Vec<Q>),
}

fn float_error(msg: &str) -> PredicateError {
    PredicateError::FloatGuide(msg.to_string())
}

/// Scales and rounds float heights to integers until they pass exactly.
fn round_heights(sys: &RegularitySystem, h: &[f64]) -> Option<Vec<Q>> {
    let mut scale = 1.0;
    for _ in 0..24 {
        let f: Vec<i128> = h.iter().map(|x| (x * scale).round() as i128).collect();
        if sys.constraints.iter().all(|c| c.eval_int(&f) >= 0) {
            return Some(f.into_iter().map(|x| Q::from_integer(x.into())).collect());
        }
        scale *= 2.0;
    }
    None
}

#[derive(Clone, Debug)]
pub struct RegularityResult {
    /// The finite system is feasible (inconclusive for the infinite problem).
    pub regular_possible: bool,
    /// Heights on `points` when feasible.
    pub heights: Option<Vec<(Point, Q)>>,
    /// Infeasibility certificate: `(constraint index, multiplier)` pairs.
    pub certificate: Option<Vec<(usize, Q)>>,
    pub system: RegularitySystem,
}

impl RegularityResult {
    pub fn verify(&self) -> bool {
        match (&self.certificate, &self.heights) {
            (Some(y), None) => !self.regular_possible && self.system.refuted_by(y),
            (None, Some(h)) => {
                let mut f = vec![Q::zero(); self.system.vars];
                for ((_, x), v) in h.iter().zip(&self.system.var_of) {
                    match v {
                        Some(j) => f[*j] = x.clone(),
                        None if !x.is_zero() => return false,
                        None => {}
                    }
                }
                self.regular_possible && self.system.satisfied_by(&f)
            }
            _ => false,
        }
    }

    /// Distinct simplices appearing in a constraint with nonzero multiplier.
    pub fn certificate_simplices(&self) -> usize {
        let Some(y) = &self.certificate else { return 0 };
        let mut used = BTreeSet::new();
        for (k, _) in y {
            let (a, b) = self.system.adjacent[k / 2];
            used.insert(a);
            used.insert(b);
        }
        used.len()
    }

    /// Distinct lattice points appearing in the certificate.
    pub fn certificate_points(&self) -> usize {
        let Some(y) = &self.certificate else { return 0 };
        let mut used = BTreeSet::new();
        for (k, _) in y {
            let (a, b) = self.system.adjacent[k / 2];
            used.extend(self.system.simplices[a].vertices.iter().copied());
            used.extend(self.system.simplices[b].vertices.iter().copied());
        }
        used.len()
    }
}

/// Searches for heights on the box `[-r, r]^n` inducing `t` locally.
/// Infeasibility proves `t` is not regular.
pub fn nonregularity_test(t: &PeriodicTriangulation, r: i64) -> Result<RegularityResult, PredicateError> {
    regularity_on(RegularitySystem::build(t, r))
}

/// Decides a finite system. The float solver only proposes; every returned
/// answer carries an exactly checked witness.
pub fn regularity_on(system: RegularitySystem) -> Result<RegularityResult, PredicateError> {
    let all: Vec<usize> = (0..system.constraints.len()).collect();
    let outcome = match system.float_farkas_support()? {
        Some(support) => match system.basic_certificate(&support) {
            Some(y) => ExactOutcome::Refuted(y),
            None => match system.exact_on(&support) {
                r @ ExactOutcome::Refuted(_) => r,
                ExactOutcome::Heights(_) => system.exact_on(&all),
            },
        },
        None => match system.float_heights()?.and_then(|h| round_heights(&system, &h)) {
            Some(f) => ExactOutcome::Heights(f),
            None => system.exact_on(&all),
        },
    };
    Ok(match outcome {
        ExactOutcome::Refuted(y) => {
            RegularityResult { regular_possible: false, heights: None, certificate: Some(y), system }
        }
        ExactOutcome::Heights(f) => {
            // heights from a partial solve only count if they pass everywhere
            if !system.satisfied_by(&f) {
                return Err(float_error("exact heights fail the full system"));
            }
            let heights = system.heights_at_points(&f);
            RegularityResult { regular_possible: true, heights: Some(heights), certificate: None, system }
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::predicates::freudenthal_seed;

    #[test]
    fn freudenthal_is_locally_regular() {
        for n in 2..=4 {
            let r = nonregularity_test(&freudenthal_seed(n), 1).unwrap();
            assert!(r.regular_possible);
            assert!(r.verify());
        }
    }

    #[test]
    fn sparse_rows_match_dense_polyhedron() {
        let sys = RegularitySystem::build(&freudenthal_seed(3), 1);
        let p = sys.to_polyhedron();
        assert_eq!(p.inequalities.len(), sys.constraint_count());
        assert_eq!(sys.vars + sys.gauge.len(), sys.points.len());
        assert!(sys.constraints.iter().all(|c| c.constant < 0 && !c.terms.is_empty()));
        // zero heights violate every row
        assert!(!sys.satisfied_by(&vec![Q::zero(); sys.vars]));
    }

    #[test]
    fn bogus_certificates_rejected() {
        let sys = RegularitySystem::build(&freudenthal_seed(2), 1);
        assert!(!sys.refuted_by(&[]));
        assert!(!sys.refuted_by(&[(0, q(-1))]));
        assert!(!sys.refuted_by(&[(0, q(1))]));
    }
}
