//! Exact polyhedral toolkit: linear programming with certificates, double
//! description, lattice point enumeration and interior points of cones of
//! quadratic forms.

mod dd;
pub(crate) mod simplex;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

use crate::exact::{q, Point, QuadForm, Q};

pub use dd::{dual_description, VRep};
pub(crate) use simplex::Pricing;
use simplex::{solve_standard, StandardForm, StdOutcome};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PolyError {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("polyhedron is unbounded along {direction:?}")]
    Unbounded { direction: Vec<Q> },
    #[error("polyhedron contains a line; only pointed polyhedra are supported")]
    NotPointed,
    #[error("certificate failed exact re-verification: {0}")]
    CertificateRejected(&'static str),
    #[error("bounding box has {0} points, refusing to scan")]
    TooManyPoints(u128),
}

/// Affine functional `x -> coeffs . x + constant`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AffineForm {
    pub coeffs: Vec<Q>,
    pub constant: Q,
}

impl AffineForm {
    pub fn new(coeffs: Vec<Q>, constant: Q) -> AffineForm {
        AffineForm { coeffs, constant }
    }

    pub fn from_i64(coeffs: &[i64], constant: i64) -> AffineForm {
        AffineForm { coeffs: coeffs.iter().map(|&c| q(c)).collect(), constant: q(constant) }
    }

    /// The coordinate function `x_i` in dimension `dim`.
    pub fn coordinate(dim: usize, i: usize) -> AffineForm {
        let mut coeffs = vec![Q::zero(); dim];
        coeffs[i] = Q::one();
        AffineForm { coeffs, constant: Q::zero() }
    }

    pub fn zero(dim: usize) -> AffineForm {
        AffineForm { coeffs: vec![Q::zero(); dim], constant: Q::zero() }
    }

    pub fn dim(&self) -> usize {
        self.coeffs.len()
    }

    pub fn eval(&self, x: &[Q]) -> Q {
        let mut acc = self.constant.clone();
        for (c, v) in self.coeffs.iter().zip(x) {
            if !c.is_zero() && !v.is_zero() {
                acc += c * v;
            }
        }
        acc
    }

    pub fn eval_point(&self, x: &Point) -> Q {
        let mut acc = self.constant.clone();
        for (i, c) in self.coeffs.iter().enumerate() {
            if x[i] != 0 && !c.is_zero() {
                acc += c * q(x[i]);
            }
        }
        acc
    }

    /// Linear part evaluated on a direction.
    pub fn eval_linear(&self, d: &[Q]) -> Q {
        let mut acc = Q::zero();
        for (c, v) in self.coeffs.iter().zip(d) {
            if !c.is_zero() && !v.is_zero() {
                acc += c * v;
            }
        }
        acc
    }

    pub fn negate(&self) -> AffineForm {
        AffineForm { coeffs: self.coeffs.iter().map(|c| -c).collect(), constant: -&self.constant }
    }

    /// Integer multiple with coprime integer coefficients.
    pub(crate) fn to_integer_row(&self) -> (Vec<BigInt>, BigInt) {
        let mut l = BigInt::one();
        for c in self.coeffs.iter().chain(std::iter::once(&self.constant)) {
            l = l.lcm(c.denom());
        }
        let scale = Q::from_integer(l);
        let coeffs = self.coeffs.iter().map(|c| (c * &scale).to_integer()).collect();
        (coeffs, (&self.constant * &scale).to_integer())
    }
}

/// `{x : f(x) >= 0 for f in inequalities, g(x) = 0 for g in equalities}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HPolyhedron {
    pub dim: usize,
    pub inequalities: Vec<AffineForm>,
    pub equalities: Vec<AffineForm>,
}

impl HPolyhedron {
    pub fn new(dim: usize) -> HPolyhedron {
        HPolyhedron { dim, inequalities: Vec::new(), equalities: Vec::new() }
    }

    pub fn with_inequalities(dim: usize, inequalities: Vec<AffineForm>) -> HPolyhedron {
        HPolyhedron { dim, inequalities, equalities: Vec::new() }
    }

    pub fn add_inequality(&mut self, f: AffineForm) {
        debug_assert_eq!(f.dim(), self.dim);
        self.inequalities.push(f);
    }

    pub fn add_equality(&mut self, f: AffineForm) {
        debug_assert_eq!(f.dim(), self.dim);
        self.equalities.push(f);
    }

    pub fn contains(&self, x: &[Q]) -> bool {
        self.inequalities.iter().all(|f| !f.eval(x).is_negative())
            && self.equalities.iter().all(|f| f.eval(x).is_zero())
    }

    pub fn contains_point(&self, x: &Point) -> bool {
        self.inequalities.iter().all(|f| !f.eval_point(x).is_negative())
            && self.equalities.iter().all(|f| f.eval_point(x).is_zero())
    }

    fn check_dims(&self) -> Result<(), PolyError> {
        for f in self.inequalities.iter().chain(&self.equalities) {
            if f.dim() != self.dim {
                return Err(PolyError::DimensionMismatch { expected: self.dim, got: f.dim() });
            }
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Sense {
    Maximize,
    Minimize,
}

/// Nonnegative multipliers on inequalities and free multipliers on equalities
/// whose combination has zero linear part and a negative constant, i.e. the
/// derived inequality reads `0 >= eps` for some `eps > 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Farkas {
    pub inequality_multipliers: Vec<Q>,
    pub equality_multipliers: Vec<Q>,
}

impl Farkas {
    /// Constant of the combined inequality `sum y_i f_i(x) >= 0`, which must
    /// come out negative.
    pub fn combined_constant(&self, p: &HPolyhedron) -> Q {
        let mut c = Q::zero();
        for (y, f) in self.inequality_multipliers.iter().zip(&p.inequalities) {
            c += y * &f.constant;
        }
        for (z, f) in self.equality_multipliers.iter().zip(&p.equalities) {
            c += z * &f.constant;
        }
        c
    }

    pub fn verify(&self, p: &HPolyhedron) -> bool {
        if self.inequality_multipliers.len() != p.inequalities.len()
            || self.equality_multipliers.len() != p.equalities.len()
        {
            return false;
        }
        if self.inequality_multipliers.iter().any(|y| y.is_negative()) {
            return false;
        }
        let mut lin = vec![Q::zero(); p.dim];
        let terms = self
            .inequality_multipliers
            .iter()
            .zip(&p.inequalities)
            .chain(self.equality_multipliers.iter().zip(&p.equalities));
        for (y, f) in terms {
            if y.is_zero() {
                continue;
            }
            for (l, c) in lin.iter_mut().zip(&f.coeffs) {
                *l += y * c;
            }
        }
        lin.iter().all(|l| l.is_zero()) && self.combined_constant(p).is_negative()
    }

    /// Number of nonzero multipliers.
    pub fn support_size(&self) -> usize {
        self.inequality_multipliers.iter().chain(&self.equality_multipliers).filter(|y| !y.is_zero()).count()
    }
}

/// Outcome of [`lp_solve`], carrying what is needed to check it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LpCertificate {
    /// Optimal point plus dual multipliers proving the matching bound.
    Optimal {
        point: Vec<Q>,
        value: Q,
        inequality_duals: Vec<Q>,
        equality_duals: Vec<Q>,
    },
    /// Feasible point and an improving recession direction.
    Unbounded {
        point: Vec<Q>,
        ray: Vec<Q>,
    },
    Infeasible(Farkas),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LpStatus {
    Optimal,
    Unbounded,
    Infeasible,
}

impl LpCertificate {
    pub fn status(&self) -> LpStatus {
        match self {
            LpCertificate::Optimal { .. } => LpStatus::Optimal,
            LpCertificate::Unbounded { .. } => LpStatus::Unbounded,
            LpCertificate::Infeasible(_) => LpStatus::Infeasible,
        }
    }

    pub fn optimum(&self) -> Option<&Q> {
        match self {
            LpCertificate::Optimal { value, .. } => Some(value),
            _ => None,
        }
    }

    pub fn point(&self) -> Option<&[Q]> {
        match self {
            LpCertificate::Optimal { point, .. } | LpCertificate::Unbounded { point, .. } => Some(point),
            LpCertificate::Infeasible(_) => None,
        }
    }

    /// Exact re-verification against the problem it claims to solve.
    pub fn verify(&self, p: &HPolyhedron, objective: &AffineForm, sense: Sense) -> bool {
        let obj = match sense {
            Sense::Maximize => objective.clone(),
            Sense::Minimize => objective.negate(),
        };
        match self {
            LpCertificate::Infeasible(f) => f.verify(p),
            LpCertificate::Unbounded { point, ray } => {
                p.contains(point)
                    && p.inequalities.iter().all(|f| !f.eval_linear(ray).is_negative())
                    && p.equalities.iter().all(|f| f.eval_linear(ray).is_zero())
                    && obj.eval_linear(ray).is_positive()
            }
            LpCertificate::Optimal { point, value, inequality_duals, equality_duals } => {
                if !p.contains(point) || objective.eval(point) != *value {
                    return false;
                }
                if inequality_duals.len() != p.inequalities.len()
                    || equality_duals.len() != p.equalities.len()
                    || inequality_duals.iter().any(|y| y.is_negative())
                {
                    return false;
                }
                // obj + sum y_i f_i + sum z_j g_j must be the constant function
                // whose value is the optimum.
                let mut lin = obj.coeffs.clone();
                let mut bound = obj.constant.clone();
                let terms =
                    inequality_duals.iter().zip(&p.inequalities).chain(equality_duals.iter().zip(&p.equalities));
                for (y, f) in terms {
                    if y.is_zero() {
                        continue;
                    }
                    for (l, c) in lin.iter_mut().zip(&f.coeffs) {
                        *l += y * c;
                    }
                    bound += y * &f.constant;
                }
                let signed_value = match sense {
                    Sense::Maximize => value.clone(),
                    Sense::Minimize => -value.clone(),
                };
                lin.iter().all(|l| l.is_zero()) && bound == signed_value
            }
        }
    }
}

/// Builds the dual standard-form problem
/// `min h.y + e.z  s.t.  G^T y + E^T z = -w, y >= 0` (with `z` split in two).
fn dual_problem(p: &HPolyhedron, w: &[Q]) -> StandardForm {
    let d = p.dim;
    let mut cols = Vec::with_capacity(p.inequalities.len() + 2 * p.equalities.len());
    let mut c = Vec::with_capacity(cols.capacity());
    let sparse = |f: &AffineForm, sign: bool| -> Vec<(usize, Q)> {
        f.coeffs
            .iter()
            .enumerate()
            .filter(|(_, v)| !v.is_zero())
            .map(|(i, v)| (i, if sign { v.clone() } else { -v.clone() }))
            .collect()
    };
    for f in &p.inequalities {
        cols.push(sparse(f, true));
        c.push(f.constant.clone());
    }
    for f in &p.equalities {
        cols.push(sparse(f, true));
        c.push(f.constant.clone());
        cols.push(sparse(f, false));
        c.push(-f.constant.clone());
    }
    StandardForm { rows: d, cols, b: w.iter().map(|x| -x.clone()).collect(), c }
}

fn split_multipliers(p: &HPolyhedron, y: &[Q]) -> (Vec<Q>, Vec<Q>) {
    let k = p.inequalities.len();
    let ineq = y[..k].to_vec();
    let eq = (0..p.equalities.len()).map(|j| &y[k + 2 * j] - &y[k + 2 * j + 1]).collect();
    (ineq, eq)
}

/// Solves `max/min objective(x)` over `p` exactly, returning a certificate
/// that has been re-verified by substitution.
pub fn lp_solve(p: &HPolyhedron, objective: &AffineForm, sense: Sense) -> Result<LpCertificate, PolyError> {
    lp_solve_with(p, objective, sense, Pricing::Bland)
}

pub(crate) fn lp_solve_with(
    p: &HPolyhedron,
    objective: &AffineForm,
    sense: Sense,
    pricing: Pricing,
) -> Result<LpCertificate, PolyError> {
    p.check_dims()?;
    if objective.dim() != p.dim {
        return Err(PolyError::DimensionMismatch { expected: p.dim, got: objective.dim() });
    }
    let w: Vec<Q> = match sense {
        Sense::Maximize => objective.coeffs.clone(),
        Sense::Minimize => objective.coeffs.iter().map(|c| -c).collect(),
    };
    let cert = match solve_standard(&dual_problem(p, &w), pricing) {
        StdOutcome::Optimal { y, dual } => {
            let point: Vec<Q> = dual.iter().map(|u| -u.clone()).collect();
            let value = objective.eval(&point);
            let (inequality_duals, equality_duals) = split_multipliers(p, &y);
            LpCertificate::Optimal { point, value, inequality_duals, equality_duals }
        }
        StdOutcome::Unbounded { ray, .. } => {
            let (inequality_multipliers, equality_multipliers) = split_multipliers(p, &ray);
            LpCertificate::Infeasible(Farkas { inequality_multipliers, equality_multipliers })
        }
        StdOutcome::Infeasible { farkas } => {
            let ray: Vec<Q> = farkas.iter().map(|u| -u.clone()).collect();
            let zero = vec![Q::zero(); p.dim];
            match solve_standard(&dual_problem(p, &zero), pricing) {
                StdOutcome::Optimal { dual, .. } => {
                    let point = dual.iter().map(|u| -u.clone()).collect();
                    LpCertificate::Unbounded { point, ray }
                }
                StdOutcome::Unbounded { ray, .. } => {
                    let (inequality_multipliers, equality_multipliers) = split_multipliers(p, &ray);
                    LpCertificate::Infeasible(Farkas { inequality_multipliers, equality_multipliers })
                }
                StdOutcome::Infeasible { .. } => unreachable!("zero is feasible for the homogeneous dual"),
            }
        }
    };
    if !cert.verify(p, objective, sense) {
        return Err(PolyError::CertificateRejected(match cert.status() {
            LpStatus::Optimal => "optimality",
            LpStatus::Unbounded => "unboundedness",
            LpStatus::Infeasible => "infeasibility",
        }));
    }
    Ok(cert)
}

/// Feasibility only; returns a point or a Farkas certificate.
pub fn feasible_point(p: &HPolyhedron) -> Result<Result<Vec<Q>, Farkas>, PolyError> {
    match lp_solve(p, &AffineForm::zero(p.dim), Sense::Maximize)? {
        LpCertificate::Optimal { point, .. } | LpCertificate::Unbounded { point, .. } => Ok(Ok(point)),
        LpCertificate::Infeasible(f) => Ok(Err(f)),
    }
}

/// Integer bounding box `[lo_i, hi_i]` from per-coordinate LPs, or `None`
/// when the polyhedron is empty.
pub fn bounding_box(p: &HPolyhedron) -> Result<Option<Vec<(i64, i64)>>, PolyError> {
    let mut out = Vec::with_capacity(p.dim);
    for i in 0..p.dim {
        let f = AffineForm::coordinate(p.dim, i);
        let lo = match lp_solve(p, &f, Sense::Minimize)? {
            LpCertificate::Optimal { value, .. } => value.ceil().to_integer(),
            LpCertificate::Unbounded { ray, .. } => return Err(PolyError::Unbounded { direction: ray }),
            LpCertificate::Infeasible(_) => return Ok(None),
        };
        let hi = match lp_solve(p, &f, Sense::Maximize)? {
            LpCertificate::Optimal { value, .. } => value.floor().to_integer(),
            LpCertificate::Unbounded { ray, .. } => return Err(PolyError::Unbounded { direction: ray }),
            LpCertificate::Infeasible(_) => return Ok(None),
        };
        let lo = lo.to_i64().ok_or(PolyError::TooManyPoints(u128::MAX))?;
        let hi = hi.to_i64().ok_or(PolyError::TooManyPoints(u128::MAX))?;
        out.push((lo, hi));
    }
    Ok(Some(out))
}

/// Lattice points of a bounded polyhedron, in lexicographic order.
pub fn integer_points(p: &HPolyhedron) -> Result<Vec<Point>, PolyError> {
    let Some(bbox) = bounding_box(p)? else { return Ok(Vec::new()) };
    scan_box(p, &bbox)
}

const SCAN_LIMIT: u128 = 50_000_000;

/// Exact membership scan over an integer box.
pub(crate) fn scan_box(p: &HPolyhedron, bbox: &[(i64, i64)]) -> Result<Vec<Point>, PolyError> {
    let mut total: u128 = 1;
    for &(lo, hi) in bbox {
        if hi < lo {
            return Ok(Vec::new());
        }
        total = total.saturating_mul((hi - lo + 1) as u128);
    }
    if total > SCAN_LIMIT {
        return Err(PolyError::TooManyPoints(total));
    }
    let rows: Vec<(Vec<i128>, i128, bool)> = p
        .inequalities
        .iter()
        .map(|f| (f, false))
        .chain(p.equalities.iter().map(|f| (f, true)))
        .map(|(f, eq)| {
            let (c, k) = f.to_integer_row();
            (
                c.iter().map(|x| x.to_i128().expect("coefficient too large")).collect(),
                k.to_i128().expect("constant too large"),
                eq,
            )
        })
        .collect();
    let n = p.dim;
    let mut out = Vec::new();
    if n == 0 {
        return Ok(out);
    }
    let mut cur: Vec<i64> = bbox.iter().map(|b| b.0).collect();
    loop {
        let ok = rows.iter().all(|(c, k, eq)| {
            let v: i128 = c.iter().zip(&cur).map(|(a, &x)| a * x as i128).sum::<i128>() + k;
            if *eq {
                v == 0
            } else {
                v >= 0
            }
        });
        if ok {
            out.push(Point::new(&cur));
        }
        let mut i = n;
        loop {
            if i == 0 {
                return Ok(out);
            }
            i -= 1;
            if cur[i] < bbox[i].1 {
                cur[i] += 1;
                for (j, c) in cur.iter_mut().enumerate().skip(i + 1) {
                    *c = bbox[j].0;
                }
                break;
            }
        }
    }
}

/// Result of searching the interior of a cone of quadratic forms.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConeInterior {
    /// The maximizing form when the slack is positive.
    pub form: Option<QuadForm>,
    pub slack: Q,
    pub positive_definite: bool,
}

impl ConeInterior {
    pub fn full_dimensional(&self) -> bool {
        self.slack.is_positive()
    }
}

/// Maximizes `t` subject to every cone inequality being at least `t`, with
/// `trace(A) = 1`, entries in `[-1, 1]` and `t <= 1`. The cone lives in the
/// `n(n+1)/2` coordinates of [`QuadForm::to_coords`].
pub fn cone_interior_point(cone: &HPolyhedron, n: usize) -> Result<ConeInterior, PolyError> {
    let nc = QuadForm::coord_len(n);
    if cone.dim != nc {
        return Err(PolyError::DimensionMismatch { expected: nc, got: cone.dim });
    }
    let dim = nc + 1;
    let t_idx = nc;
    let mut p = HPolyhedron::new(dim);
    let lift = |f: &AffineForm, t_coeff: i64| {
        let mut c = f.coeffs.clone();
        c.push(q(t_coeff));
        AffineForm::new(c, f.constant.clone())
    };
    for f in &cone.inequalities {
        p.add_inequality(lift(f, -1));
    }
    for f in &cone.equalities {
        p.add_equality(lift(f, 0));
    }
    add_normalization(&mut p, n);
    let mut cap = AffineForm::coordinate(dim, t_idx).negate();
    cap.constant = Q::one();
    p.add_inequality(cap);

    let objective = AffineForm::coordinate(dim, t_idx);
    let (point, slack) = match lp_solve(&p, &objective, Sense::Maximize)? {
        LpCertificate::Optimal { point, value, .. } => (point, value),
        // trace = 1 inside the box is always feasible and t is capped
        other => unreachable!("normalized cone LP must have an optimum, got {:?}", other.status()),
    };
    if !slack.is_positive() {
        return Ok(ConeInterior { form: None, slack, positive_definite: false });
    }
    let form = QuadForm::from_coords(n, &point[..nc]);
    if form.is_positive_definite() {
        return Ok(ConeInterior { form: Some(form), slack, positive_definite: true });
    }
    // Look for a diagonally dominant form deeper than half the optimal slack.
    if let Some(pd) = diagonally_dominant_interior(cone, n, &slack)? {
        return Ok(ConeInterior { form: Some(pd), slack, positive_definite: true });
    }
    Ok(ConeInterior { form: Some(form), slack, positive_definite: false })
}

fn add_normalization(p: &mut HPolyhedron, n: usize) {
    let dim = p.dim;
    let mut trace = AffineForm::zero(dim);
    let mut k = 0;
    for i in 0..n {
        for j in i..n {
            if i == j {
                trace.coeffs[k] = Q::one();
            }
            let mut up = AffineForm::coordinate(dim, k).negate();
            up.constant = Q::one();
            let mut down = AffineForm::coordinate(dim, k);
            down.constant = Q::one();
            p.add_inequality(up);
            p.add_inequality(down);
            k += 1;
        }
    }
    trace.constant = -Q::one();
    p.add_equality(trace);
}

fn diagonally_dominant_interior(cone: &HPolyhedron, n: usize, slack: &Q) -> Result<Option<QuadForm>, PolyError> {
    let nc = QuadForm::coord_len(n);
    let off: Vec<(usize, usize, usize)> = {
        let mut v = Vec::new();
        let mut k = 0;
        for i in 0..n {
            for j in i..n {
                if i != j {
                    v.push((i, j, k));
                }
                k += 1;
            }
        }
        v
    };
    // variables: coords, one bound u_k per off-diagonal entry, margin s
    let dim = nc + off.len() + 1;
    let s_idx = dim - 1;
    let mut p = HPolyhedron::new(dim);
    let half = slack / q(2);
    for f in &cone.inequalities {
        let mut c = f.coeffs.clone();
        c.resize(dim, Q::zero());
        p.add_inequality(AffineForm::new(c, &f.constant - &half));
    }
    for f in &cone.equalities {
        let mut c = f.coeffs.clone();
        c.resize(dim, Q::zero());
        p.add_equality(AffineForm::new(c, f.constant.clone()));
    }
    add_normalization(&mut p, n);
    for (idx, &(_, _, k)) in off.iter().enumerate() {
        let u = nc + idx;
        let mut a = AffineForm::zero(dim);
        a.coeffs[u] = Q::one();
        a.coeffs[k] = -Q::one();
        p.add_inequality(a);
        let mut b = AffineForm::zero(dim);
        b.coeffs[u] = Q::one();
        b.coeffs[k] = Q::one();
        p.add_inequality(b);
    }
    let mut diag_idx = Vec::with_capacity(n);
    {
        let mut k = 0;
        for i in 0..n {
            diag_idx.push(k);
            k += n - i;
        }
    }
    for i in 0..n {
        let mut f = AffineForm::zero(dim);
        f.coeffs[diag_idx[i]] = Q::one();
        f.coeffs[s_idx] = -Q::one();
        for (idx, &(a, b, _)) in off.iter().enumerate() {
            if a == i || b == i {
                f.coeffs[nc + idx] = -Q::one();
            }
        }
        p.add_inequality(f);
    }
    let mut cap = AffineForm::coordinate(dim, s_idx).negate();
    cap.constant = Q::one();
    p.add_inequality(cap);
    match lp_solve(&p, &AffineForm::coordinate(dim, s_idx), Sense::Maximize)? {
        LpCertificate::Optimal { point, value, .. } if value.is_positive() => {
            let form = QuadForm::from_coords(n, &point[..nc]);
            debug_assert!(form.is_positive_definite());
            Ok(Some(form))
        }
        _ => Ok(None),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::q_frac;

    fn interval(lo: i64, hi: i64) -> HPolyhedron {
        HPolyhedron::with_inequalities(1, vec![AffineForm::from_i64(&[1], -lo), AffineForm::from_i64(&[-1], hi)])
    }

    #[test]
    fn lp_interval_max() {
        let p = interval(0, 1);
        let obj = AffineForm::coordinate(1, 0);
        let cert = lp_solve(&p, &obj, Sense::Maximize).unwrap();
        assert_eq!(cert.optimum(), Some(&q(1)));
        assert_eq!(cert.point().unwrap(), &[q(1)]);
        let cert = lp_solve(&p, &obj, Sense::Minimize).unwrap();
        assert_eq!(cert.optimum(), Some(&q(0)));
    }

    #[test]
    fn lp_infeasible_farkas() {
        // x >= 1 and -x >= 0
        let p = HPolyhedron::with_inequalities(1, vec![AffineForm::from_i64(&[1], -1), AffineForm::from_i64(&[-1], 0)]);
        let cert = lp_solve(&p, &AffineForm::coordinate(1, 0), Sense::Maximize).unwrap();
        match cert {
            LpCertificate::Infeasible(f) => {
                assert_eq!(f.inequality_multipliers[0], f.inequality_multipliers[1]);
                assert!(f.inequality_multipliers[0].is_positive());
                assert!(f.verify(&p));
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn lp_unbounded_with_ray() {
        let p =
            HPolyhedron::with_inequalities(2, vec![AffineForm::from_i64(&[1, 0], 0), AffineForm::from_i64(&[0, 1], 0)]);
        let cert = lp_solve(&p, &AffineForm::from_i64(&[1, 1], 0), Sense::Maximize).unwrap();
        assert_eq!(cert.status(), LpStatus::Unbounded);
    }

    #[test]
    fn lp_with_equalities_and_fractions() {
        // max x + y on x + 2y = 3, x >= 0, y >= 0
        let mut p = HPolyhedron::new(2);
        p.add_inequality(AffineForm::from_i64(&[1, 0], 0));
        p.add_inequality(AffineForm::from_i64(&[0, 1], 0));
        p.add_equality(AffineForm::from_i64(&[1, 2], -3));
        let cert = lp_solve(&p, &AffineForm::from_i64(&[1, 1], 0), Sense::Maximize).unwrap();
        assert_eq!(cert.optimum(), Some(&q(3)));
        let cert = lp_solve(&p, &AffineForm::from_i64(&[1, 1], 0), Sense::Minimize).unwrap();
        assert_eq!(cert.optimum(), Some(&q_frac(3, 2)));
    }

    #[test]
    fn lp_tampered_certificate_fails() {
        let p = interval(0, 1);
        let obj = AffineForm::coordinate(1, 0);
        let mut cert = lp_solve(&p, &obj, Sense::Maximize).unwrap();
        if let LpCertificate::Optimal { value, .. } = &mut cert {
            *value = q(2);
        }
        assert!(!cert.verify(&p, &obj, Sense::Maximize));
    }

    fn cube(n: usize, side: i64) -> HPolyhedron {
        let mut p = HPolyhedron::new(n);
        for i in 0..n {
            let mut lo = AffineForm::coordinate(n, i);
            lo.constant = Q::zero();
            let mut hi = AffineForm::coordinate(n, i).negate();
            hi.constant = q(side);
            p.add_inequality(lo);
            p.add_inequality(hi);
        }
        p
    }

    #[test]
    fn integer_points_cube_and_triangle() {
        assert_eq!(integer_points(&cube(3, 1)).unwrap().len(), 8);
        let tri = HPolyhedron::with_inequalities(
            2,
            vec![
                AffineForm::from_i64(&[1, 0], 0),
                AffineForm::from_i64(&[0, 1], 0),
                AffineForm::from_i64(&[-1, -1], 3),
            ],
        );
        assert_eq!(integer_points(&tri).unwrap().len(), 10);
    }

    #[test]
    fn integer_points_rejects_unbounded() {
        let p = HPolyhedron::with_inequalities(2, vec![AffineForm::from_i64(&[1, 0], 0)]);
        assert!(matches!(integer_points(&p), Err(PolyError::Unbounded { .. })));
    }

    #[test]
    fn integer_points_empty() {
        let p = interval(3, 2);
        assert!(integer_points(&p).unwrap().is_empty());
    }

    #[test]
    fn cone_interior_without_constraints() {
        let cone = HPolyhedron::new(3);
        let r = cone_interior_point(&cone, 2).unwrap();
        assert!(r.full_dimensional());
        assert!(r.positive_definite);
        assert!(r.form.unwrap().is_positive_definite());
    }

    #[test]
    fn cone_interior_flat_cone() {
        // a11 >= t and -a11 >= t on binary forms
        let cone = HPolyhedron::with_inequalities(
            3,
            vec![AffineForm::from_i64(&[1, 0, 0], 0), AffineForm::from_i64(&[-1, 0, 0], 0)],
        );
        let r = cone_interior_point(&cone, 2).unwrap();
        assert_eq!(r.slack, q(0));
        assert!(!r.full_dimensional());
        assert!(r.form.is_none());
    }
}
