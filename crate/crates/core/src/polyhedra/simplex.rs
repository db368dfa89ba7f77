//! Exact two-phase revised simplex on standard-form problems
//! `min c^T y  s.t.  A y = b, y >= 0`.
//!
//! The basis inverse is kept dense; columns of `A` are sparse. The callers in
//! this crate always hand over problems with few rows (the dimension of the
//! primal) and many columns, which is the shape this layout is good at.

use num_traits::{Signed, Zero};

use crate::exact::Q;

#[derive(Clone, Debug)]
pub(crate) struct StandardForm {
    pub rows: usize,
    /// Sparse columns: `(row, value)` pairs with nonzero values.
    pub cols: Vec<Vec<(usize, Q)>>,
    pub b: Vec<Q>,
    pub c: Vec<Q>,
}

#[derive(Clone, Debug)]
pub(crate) enum StdOutcome {
    /// `y` optimal; `dual` satisfies `dual^T A_j <= c_j` with equality on the
    /// support of `y`.
    Optimal { y: Vec<Q>, dual: Vec<Q> },
    /// `u^T A <= 0` and `u^T b > 0`.
    Infeasible { farkas: Vec<Q> },
    /// `A ray = 0`, `ray >= 0`, `c^T ray < 0`.
    Unbounded { ray: Vec<Q> },
}

/// Entering-variable rule.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum Pricing {
    /// Smallest index with negative reduced cost.
    Bland,
    /// Most negative reduced cost, switching to Bland after a run of
    /// degenerate pivots.
    DantzigThenBland,
}

struct Solver<'a> {
    lp: &'a StandardForm,
    m: usize,
    n: usize,
    flip: Vec<bool>,
    basis: Vec<usize>,
    is_basic: Vec<bool>,
    binv: Vec<Vec<Q>>,
    beta: Vec<Q>,
    pricing: Pricing,
}

enum Step {
    Optimal,
    Pivoted { degenerate: bool },
    Unbounded { entering: usize, alpha: Vec<Q> },
}

impl<'a> Solver<'a> {
    fn new(lp: &'a StandardForm, pricing: Pricing) -> Self {
        let m = lp.rows;
        let n = lp.cols.len();
        let flip: Vec<bool> = lp.b.iter().map(|v| v.is_negative()).collect();
        let beta: Vec<Q> = lp.b.iter().map(|v| v.abs()).collect();
        let mut binv = vec![vec![Q::zero(); m]; m];
        for (i, row) in binv.iter_mut().enumerate() {
            row[i] = Q::from_integer(1.into());
        }
        let mut is_basic = vec![false; n + m];
        for i in 0..m {
            is_basic[n + i] = true;
        }
        Solver { lp, m, n, flip, basis: (n..n + m).collect(), is_basic, binv, beta, pricing }
    }

    fn is_artificial(&self, j: usize) -> bool {
        j >= self.n
    }

    /// Column `j` of the row-sign-adjusted constraint matrix.
    fn column(&self, j: usize) -> Vec<(usize, Q)> {
        if j >= self.n {
            return vec![(j - self.n, Q::from_integer(1.into()))];
        }
        self.lp.cols[j].iter().map(|(r, v)| (*r, if self.flip[*r] { -v.clone() } else { v.clone() })).collect()
    }

    fn cost(&self, phase1: bool, j: usize) -> Q {
        if phase1 {
            if self.is_artificial(j) {
                Q::from_integer(1.into())
            } else {
                Q::zero()
            }
        } else if self.is_artificial(j) {
            Q::zero()
        } else {
            self.lp.c[j].clone()
        }
    }

    fn duals(&self, phase1: bool) -> Vec<Q> {
        let mut pi = vec![Q::zero(); self.m];
        for i in 0..self.m {
            let cb = self.cost(phase1, self.basis[i]);
            if cb.is_zero() {
                continue;
            }
            for (k, x) in self.binv[i].iter().enumerate() {
                if !x.is_zero() {
                    pi[k] += &cb * x;
                }
            }
        }
        pi
    }

    fn reduced_cost(&self, phase1: bool, pi: &[Q], j: usize) -> Q {
        let mut d = self.cost(phase1, j);
        for (r, v) in &self.lp.cols[j] {
            if pi[*r].is_zero() {
                continue;
            }
            if self.flip[*r] {
                d += &pi[*r] * v;
            } else {
                d -= &pi[*r] * v;
            }
        }
        d
    }

    fn step(&mut self, phase1: bool, use_bland: bool) -> Step {
        let pi = self.duals(phase1);
        let mut entering = None;
        let mut best = Q::zero();
        for j in 0..self.n {
            if self.is_basic[j] {
                continue;
            }
            let d = self.reduced_cost(phase1, &pi, j);
            if d.is_negative() {
                if use_bland {
                    entering = Some(j);
                    break;
                }
                if entering.is_none() || d < best {
                    best = d;
                    entering = Some(j);
                }
            }
        }
        let Some(q) = entering else { return Step::Optimal };

        let col = self.column(q);
        let alpha: Vec<Q> = (0..self.m)
            .map(|i| {
                let mut acc = Q::zero();
                for (r, v) in &col {
                    let b = &self.binv[i][*r];
                    if !b.is_zero() {
                        acc += b * v;
                    }
                }
                acc
            })
            .collect();

        let mut leave: Option<(usize, Q)> = None;
        for i in 0..self.m {
            let ratio = if !phase1 && self.is_artificial(self.basis[i]) {
                // artificial variables are pinned at zero during phase two
                if alpha[i].is_zero() {
                    continue;
                }
                Q::zero()
            } else if alpha[i].is_positive() {
                &self.beta[i] / &alpha[i]
            } else {
                continue;
            };
            let better = match &leave {
                None => true,
                Some((r, best)) => ratio < *best || (ratio == *best && self.basis[i] < self.basis[*r]),
            };
            if better {
                leave = Some((i, ratio));
            }
        }
        let Some((r, ratio)) = leave else {
            return Step::Unbounded { entering: q, alpha };
        };
        self.pivot(r, q, &alpha);
        Step::Pivoted { degenerate: ratio.is_zero() }
    }

    fn pivot(&mut self, r: usize, q: usize, alpha: &[Q]) {
        let piv = alpha[r].clone();
        for x in self.binv[r].iter_mut() {
            if !x.is_zero() {
                *x /= &piv;
            }
        }
        self.beta[r] /= &piv;
        let pivot_row = self.binv[r].clone();
        let nz: Vec<usize> = (0..self.m).filter(|&k| !pivot_row[k].is_zero()).collect();
        let beta_r = self.beta[r].clone();
        for i in 0..self.m {
            if i == r || alpha[i].is_zero() {
                continue;
            }
            let f = &alpha[i];
            for &k in &nz {
                let v = f * &pivot_row[k];
                self.binv[i][k] -= v;
            }
            self.beta[i] -= f * &beta_r;
        }
        self.is_basic[self.basis[r]] = false;
        self.is_basic[q] = true;
        self.basis[r] = q;
    }

    fn run_phase(&mut self, phase1: bool) -> Step {
        let mut degenerate_run = 0usize;
        loop {
            let bland = match self.pricing {
                Pricing::Bland => true,
                Pricing::DantzigThenBland => degenerate_run > 50,
            };
            match self.step(phase1, bland) {
                Step::Pivoted { degenerate } => {
                    if degenerate {
                        degenerate_run += 1;
                    } else {
                        degenerate_run = 0;
                    }
                }
                other => return other,
            }
        }
    }

    fn primal(&self) -> Vec<Q> {
        let mut y = vec![Q::zero(); self.n];
        for (i, &j) in self.basis.iter().enumerate() {
            if j < self.n {
                y[j] = self.beta[i].clone();
            }
        }
        y
    }

    fn unflip(&self, mut u: Vec<Q>) -> Vec<Q> {
        for (i, x) in u.iter_mut().enumerate() {
            if self.flip[i] {
                *x = -x.clone();
            }
        }
        u
    }
}

pub(crate) fn solve_standard(lp: &StandardForm, pricing: Pricing) -> StdOutcome {
    let mut s = Solver::new(lp, pricing);
    match s.run_phase(true) {
        Step::Optimal => {}
        Step::Unbounded { .. } => unreachable!("phase one is bounded below by zero"),
        Step::Pivoted { .. } => unreachable!(),
    }
    let infeasibility: Q =
        (0..s.m).filter(|&i| s.is_artificial(s.basis[i])).map(|i| s.beta[i].clone()).fold(Q::zero(), |a, b| a + b);
    if infeasibility.is_positive() {
        let pi = s.duals(true);
        return StdOutcome::Infeasible { farkas: s.unflip(pi) };
    }
    match s.run_phase(false) {
        Step::Optimal => {
            let dual = s.unflip(s.duals(false));
            StdOutcome::Optimal { y: s.primal(), dual }
        }
        Step::Unbounded { entering, alpha } => {
            let mut ray = vec![Q::zero(); s.n];
            ray[entering] = Q::from_integer(1.into());
            for (i, &j) in s.basis.iter().enumerate() {
                if j < s.n {
                    ray[j] = -alpha[i].clone();
                }
            }
            StdOutcome::Unbounded { ray }
        }
        Step::Pivoted { .. } => unreachable!(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::q;

    fn lp(rows: usize, dense_cols: &[&[i64]], b: &[i64], c: &[i64]) -> StandardForm {
        StandardForm {
            rows,
            cols: dense_cols
                .iter()
                .map(|col| col.iter().enumerate().filter(|(_, &v)| v != 0).map(|(r, &v)| (r, q(v))).collect())
                .collect(),
            b: b.iter().map(|&v| q(v)).collect(),
            c: c.iter().map(|&v| q(v)).collect(),
        }
    }

    #[test]
    fn optimal_small() {
        // min -y0 - y1 s.t. y0 + y2 = 2, y1 + y3 = 3
        let p = lp(2, &[&[1, 0], &[0, 1], &[1, 0], &[0, 1]], &[2, 3], &[-1, -1, 0, 0]);
        match solve_standard(&p, Pricing::Bland) {
            StdOutcome::Optimal { y, dual } => {
                assert_eq!(y, vec![q(2), q(3), q(0), q(0)]);
                assert_eq!(dual, vec![q(-1), q(-1)]);
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn infeasible_negative_rhs() {
        // y0 = -1 has no nonnegative solution
        let p = lp(1, &[&[1]], &[-1], &[0]);
        match solve_standard(&p, Pricing::Bland) {
            StdOutcome::Infeasible { farkas } => {
                assert!(farkas[0].is_negative());
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn unbounded_ray() {
        // min -y0 s.t. y0 - y1 = 1
        let p = lp(1, &[&[1], &[-1]], &[1], &[-1, 0]);
        match solve_standard(&p, Pricing::DantzigThenBland) {
            StdOutcome::Unbounded { ray, .. } => {
                assert_eq!(ray, vec![q(1), q(1)]);
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn redundant_rows_keep_artificial_pinned() {
        // duplicated equality row: y0 + y1 = 1 twice, min y0
        let p = lp(2, &[&[1, 1], &[1, 1]], &[1, 1], &[1, 0]);
        match solve_standard(&p, Pricing::Bland) {
            StdOutcome::Optimal { y, .. } => assert_eq!(y, vec![q(0), q(1)]),
            other => panic!("{other:?}"),
        }
    }
}
