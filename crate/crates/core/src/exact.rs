//! Exact integer and rational arithmetic.
//!
//! Lattice points are stored as fixed-width `i64` arrays ([`Point`]); every
//! computation that can grow (determinants, Hermite normal forms, quadratic
//! form evaluation) goes through `i128` with overflow checks or through
//! arbitrary precision integers. Nothing in the crate uses floating point.

use std::fmt;
use std::ops::{Add, Index, IndexMut, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

/// Exact rational scalar.
pub type Q = BigRational;

/// Largest ambient dimension supported by [`Point`].
pub const MAX_DIM: usize = 8;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ArithError {
    #[error("matrix is {rows}x{cols}, expected a square matrix")]
    NotSquare { rows: usize, cols: usize },
    #[error("expected {expected} points, got {got}")]
    PointCount { expected: usize, got: usize },
    #[error("points span an affine space of dimension less than {dim}")]
    Degenerate { dim: usize },
    #[error("matrix is not symmetric at ({0}, {1})")]
    NotSymmetric(usize, usize),
    #[error("dimension {0} exceeds the supported maximum")]
    DimensionTooLarge(usize),
    #[error("integer overflow in exact arithmetic")]
    Overflow,
}

/// An integer point of `Z^n` for `n <= MAX_DIM`. Unused trailing coordinates
/// are kept at zero so that equality, ordering and hashing only depend on the
/// meaningful prefix.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Point(pub(crate) [i64; MAX_DIM]);

impl Point {
    pub fn new(coords: &[i64]) -> Point {
        assert!(coords.len() <= MAX_DIM, "dimension {} too large", coords.len());
        let mut c = [0i64; MAX_DIM];
        c[..coords.len()].copy_from_slice(coords);
        Point(c)
    }

    pub fn zero() -> Point {
        Point([0; MAX_DIM])
    }

    /// The `i`-th standard basis vector.
    pub fn unit(i: usize) -> Point {
        let mut p = Point::zero();
        p.0[i] = 1;
        p
    }

    pub fn coords(&self, n: usize) -> &[i64] {
        &self.0[..n]
    }

    pub fn to_vec(&self, n: usize) -> Vec<i64> {
        self.0[..n].to_vec()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }

    pub fn dot(&self, other: &Point) -> i64 {
        self.0.iter().zip(other.0.iter()).map(|(a, b)| a * b).sum()
    }

    pub fn scale(&self, k: i64) -> Point {
        let mut p = *self;
        for c in p.0.iter_mut() {
            *c *= k;
        }
        p
    }

    /// Componentwise maximum of absolute values.
    pub fn max_abs(&self) -> i64 {
        self.0.iter().map(|c| c.abs()).max().unwrap_or(0)
    }
}

impl fmt::Debug for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let last = self.0.iter().rposition(|&c| c != 0).map_or(1, |i| i + 1);
        write!(f, "(")?;
        for (i, c) in self.0[..last].iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

impl Index<usize> for Point {
    type Output = i64;
    fn index(&self, i: usize) -> &i64 {
        &self.0[i]
    }
}

impl IndexMut<usize> for Point {
    fn index_mut(&mut self, i: usize) -> &mut i64 {
        &mut self.0[i]
    }
}

impl Add for Point {
    type Output = Point;
    fn add(mut self, rhs: Point) -> Point {
        for i in 0..MAX_DIM {
            self.0[i] += rhs.0[i];
        }
        self
    }
}

impl Sub for Point {
    type Output = Point;
    fn sub(mut self, rhs: Point) -> Point {
        for i in 0..MAX_DIM {
            self.0[i] -= rhs.0[i];
        }
        self
    }
}

impl Neg for Point {
    type Output = Point;
    fn neg(mut self) -> Point {
        for c in self.0.iter_mut() {
            *c = -*c;
        }
        self
    }
}

pub fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub fn q_frac(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

/// Determinant of a small square `i64` matrix given row-major, computed by
/// Bareiss elimination in `i128`. Falls back to [`IntMatrix::det`] on overflow.
pub fn det_small(n: usize, entries: &[i64]) -> i128 {
    debug_assert_eq!(entries.len(), n * n);
    if n == 0 {
        return 1;
    }
    let mut m: Vec<i128> = entries.iter().map(|&x| x as i128).collect();
    match bareiss_i128(n, &mut m) {
        Some(d) => d,
        None => {
            let big = IntMatrix::from_i64(n, n, entries).det().expect("square by construction");
            big.to_i128().expect("determinant does not fit in i128")
        }
    }
}

fn bareiss_i128(n: usize, m: &mut [i128]) -> Option<i128> {
    let mut sign = 1i128;
    let mut prev = 1i128;
    for k in 0..n {
        if m[k * n + k] == 0 {
            let swap = (k + 1..n).find(|&i| m[i * n + k] != 0)?;
            for j in 0..n {
                m.swap(k * n + j, swap * n + j);
            }
            sign = -sign;
        }
        let pivot = m[k * n + k];
        for i in k + 1..n {
            for j in k + 1..n {
                let a = m[i * n + j].checked_mul(pivot)?;
                let b = m[i * n + k].checked_mul(m[k * n + j])?;
                m[i * n + j] = a.checked_sub(b)? / prev;
            }
            m[i * n + k] = 0;
        }
        prev = pivot;
    }
    Some(sign * m[n * n - 1])
}

/// Dense matrix of arbitrary precision integers.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "IntMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|j| self.get(i, j).to_string()).collect();
            writeln!(f, "  {}", row.join(" "))?;
        }
        write!(f, "]")
    }
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> IntMatrix {
        IntMatrix { rows, cols, data: vec![BigInt::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> IntMatrix {
        let mut m = IntMatrix::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = BigInt::one();
        }
        m
    }

    /// Builds a matrix from row-major `i64` entries.
    pub fn from_i64(rows: usize, cols: usize, entries: &[i64]) -> IntMatrix {
        assert_eq!(entries.len(), rows * cols);
        IntMatrix { rows, cols, data: entries.iter().map(|&x| BigInt::from(x)).collect() }
    }

    pub fn from_rows(rows: &[Vec<i64>]) -> IntMatrix {
        let cols = rows.first().map_or(0, |r| r.len());
        let flat: Vec<i64> = rows.iter().flat_map(|r| r.iter().copied()).collect();
        IntMatrix::from_i64(rows.len(), cols, &flat)
    }

    /// Builds a matrix whose columns are the given vectors.
    pub fn from_columns(columns: &[Vec<i64>]) -> IntMatrix {
        let rows = columns.first().map_or(0, |c| c.len());
        let mut m = IntMatrix::zeros(rows, columns.len());
        for (j, col) in columns.iter().enumerate() {
            for (i, &x) in col.iter().enumerate() {
                m.set(i, j, BigInt::from(x));
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: BigInt) {
        self.data[i * self.cols + j] = v;
    }

    /// Converts to row-major `i64` entries, failing if any entry is too large.
    pub fn to_i64(&self) -> Result<Vec<i64>, ArithError> {
        self.data.iter().map(|x| x.to_i64().ok_or(ArithError::Overflow)).collect()
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.rows);
        let mut out = IntMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let v = &out.data[i * other.cols + j] + a * other.get(k, j);
                    out.data[i * other.cols + j] = v;
                }
            }
        }
        out
    }

    pub fn transpose(&self) -> IntMatrix {
        let mut out = IntMatrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(j, i, self.get(i, j).clone());
            }
        }
        out
    }

    /// Exact determinant by fraction-free (Bareiss) elimination.
    pub fn det(&self) -> Result<BigInt, ArithError> {
        if self.rows != self.cols {
            return Err(ArithError::NotSquare { rows: self.rows, cols: self.cols });
        }
        let n = self.rows;
        if n == 0 {
            return Ok(BigInt::one());
        }
        let mut m = self.data.clone();
        let mut negate = false;
        let mut prev = BigInt::one();
        for k in 0..n {
            if m[k * n + k].is_zero() {
                match (k + 1..n).find(|&i| !m[i * n + k].is_zero()) {
                    Some(s) => {
                        for j in 0..n {
                            m.swap(k * n + j, s * n + j);
                        }
                        negate = !negate;
                    }
                    None => return Ok(BigInt::zero()),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = (&m[i * n + j] * &m[k * n + k] - &m[i * n + k] * &m[k * n + j]) / &prev;
                    m[i * n + j] = v;
                }
                m[i * n + k] = BigInt::zero();
            }
            prev = m[k * n + k].clone();
        }
        let d = m[n * n - 1].clone();
        Ok(if negate { -d } else { d })
    }

    fn combine_rows(&mut self, r: usize, i: usize, x: &BigInt, y: &BigInt, z: &BigInt, w: &BigInt) {
        // (row_r, row_i) <- (x row_r + y row_i, z row_r + w row_i)
        for j in 0..self.cols {
            let a = self.data[r * self.cols + j].clone();
            let b = self.data[i * self.cols + j].clone();
            self.data[r * self.cols + j] = x * &a + y * &b;
            self.data[i * self.cols + j] = z * &a + w * &b;
        }
    }

    fn row_axpy(&mut self, target: usize, src: usize, k: &BigInt) {
        // row_target -= k * row_src
        for j in 0..self.cols {
            let v = &self.data[target * self.cols + j] - k * &self.data[src * self.cols + j];
            self.data[target * self.cols + j] = v;
        }
    }

    fn negate_row(&mut self, r: usize) {
        for j in 0..self.cols {
            let v = -&self.data[r * self.cols + j];
            self.data[r * self.cols + j] = v;
        }
    }

    /// Hermite normal form under unimodular row operations.
    ///
    /// Returns `(H, U)` with `H = U * self`, `U` unimodular and `H` in upper
    /// echelon form: pivots positive and entries above each pivot reduced into
    /// `[0, pivot)`.
    pub fn hnf(&self) -> (IntMatrix, IntMatrix) {
        let mut h = self.clone();
        let mut u = IntMatrix::identity(self.rows);
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            for i in r + 1..self.rows {
                if h.get(i, c).is_zero() {
                    continue;
                }
                let a = h.get(r, c).clone();
                let b = h.get(i, c).clone();
                let e = a.extended_gcd(&b);
                let (g, x, y) = (e.gcd, e.x, e.y);
                let z = -(&b / &g);
                let w = &a / &g;
                h.combine_rows(r, i, &x, &y, &z, &w);
                u.combine_rows(r, i, &x, &y, &z, &w);
            }
            if h.get(r, c).is_zero() {
                continue;
            }
            if h.get(r, c).is_negative() {
                h.negate_row(r);
                u.negate_row(r);
            }
            let pivot = h.get(r, c).clone();
            for i in 0..r {
                let k = h.get(i, c).div_floor(&pivot);
                if !k.is_zero() {
                    h.row_axpy(i, r, &k);
                    u.row_axpy(i, r, &k);
                }
            }
            r += 1;
        }
        (h, u)
    }
}

/// The affine dependence of `n + 2` points in `Z^n`:
/// `sum a_i = 0` and `sum a_i v_i = 0`, with coprime integer coefficients and
/// the first nonzero coefficient positive.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AffineDependence {
    pub dim: usize,
    pub points: Vec<Point>,
    pub coeffs: Vec<i64>,
}

impl AffineDependence {
    pub fn positive(&self) -> Vec<usize> {
        (0..self.coeffs.len()).filter(|&i| self.coeffs[i] > 0).collect()
    }

    pub fn negative(&self) -> Vec<usize> {
        (0..self.coeffs.len()).filter(|&i| self.coeffs[i] < 0).collect()
    }

    pub fn zero(&self) -> Vec<usize> {
        (0..self.coeffs.len()).filter(|&i| self.coeffs[i] == 0).collect()
    }

    /// Indices with nonzero coefficient.
    pub fn support(&self) -> Vec<usize> {
        (0..self.coeffs.len()).filter(|&i| self.coeffs[i] != 0).collect()
    }

    /// Checks both halves of the relation exactly.
    pub fn verify(&self) -> bool {
        if self.coeffs.iter().all(|&a| a == 0) {
            return false;
        }
        let sum: i128 = self.coeffs.iter().map(|&a| a as i128).sum();
        if sum != 0 {
            return false;
        }
        (0..self.dim)
            .all(|k| self.points.iter().zip(&self.coeffs).map(|(p, &a)| a as i128 * p[k] as i128).sum::<i128>() == 0)
    }
}

/// Raw cofactor vector of the `(n+1) x (n+2)` matrix with columns `(1, p_k)`.
/// Spans the kernel whenever the points affinely span `R^n`.
pub(crate) fn dependence_cofactors(points: &[Point], n: usize) -> Vec<i128> {
    let m = points.len();
    debug_assert_eq!(m, n + 2);
    let mut out = Vec::with_capacity(m);
    let mut buf = vec![0i64; (n + 1) * (n + 1)];
    for k in 0..m {
        // rows: coordinate index (0 = homogenizing 1), columns: points except k
        let mut col = 0;
        for (j, p) in points.iter().enumerate() {
            if j == k {
                continue;
            }
            buf[col] = 1;
            for r in 0..n {
                buf[(r + 1) * (n + 1) + col] = p[r];
            }
            col += 1;
        }
        let d = det_small(n + 1, &buf);
        out.push(if k % 2 == 0 { d } else { -d });
    }
    out
}

/// Affine dependence of `n + 2` points affinely spanning `R^n`.
pub fn affine_dependence(points: &[Point], n: usize) -> Result<AffineDependence, ArithError> {
    if points.len() != n + 2 {
        return Err(ArithError::PointCount { expected: n + 2, got: points.len() });
    }
    let raw = dependence_cofactors(points, n);
    let g = raw.iter().fold(0i128, |acc, &x| acc.gcd(&x));
    if g == 0 {
        return Err(ArithError::Degenerate { dim: n });
    }
    let first = raw.iter().find(|&&x| x != 0).copied().unwrap_or(1);
    let sign = if first < 0 { -1 } else { 1 };
    let coeffs = raw
        .iter()
        .map(|&x| i64::try_from(sign * x / g).map_err(|_| ArithError::Overflow))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(AffineDependence { dim: n, points: points.to_vec(), coeffs })
}

/// Symmetric rational `n x n` matrix, used as a quadratic form `A[x] = x^T A x`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct QuadForm {
    n: usize,
    a: Vec<Q>,
}

impl fmt::Debug for QuadForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "QuadForm[")?;
        for i in 0..self.n {
            if i > 0 {
                write!(f, "; ")?;
            }
            let row: Vec<String> = (0..self.n).map(|j| self.get(i, j).to_string()).collect();
            write!(f, "{}", row.join(" "))?;
        }
        write!(f, "]")
    }
}

impl QuadForm {
    /// Builds a form from row-major entries, rejecting asymmetric input.
    pub fn new(n: usize, entries: Vec<Q>) -> Result<QuadForm, ArithError> {
        if entries.len() != n * n {
            return Err(ArithError::NotSquare { rows: n, cols: entries.len() / n.max(1) });
        }
        for i in 0..n {
            for j in i + 1..n {
                if entries[i * n + j] != entries[j * n + i] {
                    return Err(ArithError::NotSymmetric(i, j));
                }
            }
        }
        Ok(QuadForm { n, a: entries })
    }

    pub fn from_i64(n: usize, entries: &[i64]) -> Result<QuadForm, ArithError> {
        QuadForm::new(n, entries.iter().map(|&x| q(x)).collect())
    }

    pub fn identity(n: usize) -> QuadForm {
        let mut a = vec![Q::zero(); n * n];
        for i in 0..n {
            a[i * n + i] = Q::one();
        }
        QuadForm { n, a }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &Q {
        &self.a[i * self.n + j]
    }

    /// Number of independent coordinates, `n(n+1)/2`.
    pub fn coord_len(n: usize) -> usize {
        n * (n + 1) / 2
    }

    /// Coordinates `a_ij` for `i <= j`, row-major over the upper triangle.
    pub fn to_coords(&self) -> Vec<Q> {
        let mut out = Vec::with_capacity(Self::coord_len(self.n));
        for i in 0..self.n {
            for j in i..self.n {
                out.push(self.get(i, j).clone());
            }
        }
        out
    }

    pub fn from_coords(n: usize, coords: &[Q]) -> QuadForm {
        assert_eq!(coords.len(), Self::coord_len(n));
        let mut a = vec![Q::zero(); n * n];
        let mut k = 0;
        for i in 0..n {
            for j in i..n {
                a[i * n + j] = coords[k].clone();
                a[j * n + i] = coords[k].clone();
                k += 1;
            }
        }
        QuadForm { n, a }
    }

    /// Integer coefficients `c` with `A[x] = sum_k c_k * coords_k` for the
    /// given point, matching the [`QuadForm::to_coords`] ordering.
    pub fn monomials(x: &Point, n: usize) -> Vec<i64> {
        let mut out = Vec::with_capacity(Self::coord_len(n));
        for i in 0..n {
            for j in i..n {
                let m = x[i] * x[j];
                out.push(if i == j { m } else { 2 * m });
            }
        }
        out
    }

    /// `A[x] = x^T A x`.
    pub fn eval(&self, x: &Point) -> Q {
        let n = self.n;
        let mut acc = Q::zero();
        for i in 0..n {
            if x[i] == 0 {
                continue;
            }
            for j in 0..n {
                if x[j] == 0 {
                    continue;
                }
                acc += self.get(i, j) * q(x[i] * x[j]);
            }
        }
        acc
    }

    /// Exact positive definiteness through the pivots of symmetric
    /// elimination without row exchanges; each pivot is a ratio of
    /// consecutive leading principal minors.
    pub fn is_positive_definite(&self) -> bool {
        let n = self.n;
        let mut m = self.a.clone();
        for k in 0..n {
            let pivot = m[k * n + k].clone();
            if !pivot.is_positive() {
                return false;
            }
            for i in k + 1..n {
                let f = &m[i * n + k] / &pivot;
                if f.is_zero() {
                    continue;
                }
                for j in k..n {
                    let v = &m[i * n + j] - &f * &m[k * n + j];
                    m[i * n + j] = v;
                }
            }
        }
        true
    }

    pub fn scale(&self, k: &Q) -> QuadForm {
        QuadForm { n: self.n, a: self.a.iter().map(|x| x * k).collect() }
    }

    pub fn add(&self, other: &QuadForm) -> QuadForm {
        assert_eq!(self.n, other.n);
        QuadForm { n: self.n, a: self.a.iter().zip(&other.a).map(|(x, y)| x + y).collect() }
    }

    pub fn trace(&self) -> Q {
        (0..self.n).map(|i| self.get(i, i).clone()).fold(Q::zero(), |a, b| a + b)
    }
}

impl Mul<&Point> for &IntMatrix {
    type Output = Point;
    fn mul(self, p: &Point) -> Point {
        let mut out = Point::zero();
        for i in 0..self.rows {
            let mut acc = BigInt::zero();
            for j in 0..self.cols {
                acc += self.get(i, j) * p[j];
            }
            out[i] = acc.to_i64().expect("coordinate overflow");
        }
        out
    }
}

/// Square integer matrix with machine-size entries, the workhorse for
/// applying lattice automorphisms to points.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SmallMatrix {
    pub n: usize,
    pub m: [[i64; MAX_DIM]; MAX_DIM],
}

impl fmt::Debug for SmallMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.n {
            if i > 0 {
                write!(f, "; ")?;
            }
            let row: Vec<String> = (0..self.n).map(|j| self.m[i][j].to_string()).collect();
            write!(f, "{}", row.join(" "))?;
        }
        write!(f, "]")
    }
}

impl SmallMatrix {
    pub fn identity(n: usize) -> SmallMatrix {
        let mut m = [[0; MAX_DIM]; MAX_DIM];
        for (i, row) in m.iter_mut().enumerate().take(n) {
            row[i] = 1;
        }
        SmallMatrix { n, m }
    }

    pub fn neg_identity(n: usize) -> SmallMatrix {
        let mut s = SmallMatrix::identity(n);
        for i in 0..n {
            s.m[i][i] = -1;
        }
        s
    }

    pub fn from_rows(rows: &[Vec<i64>]) -> SmallMatrix {
        let n = rows.len();
        let mut m = [[0; MAX_DIM]; MAX_DIM];
        for (i, r) in rows.iter().enumerate() {
            assert_eq!(r.len(), n);
            m[i][..n].copy_from_slice(r);
        }
        SmallMatrix { n, m }
    }

    pub fn from_int_matrix(a: &IntMatrix) -> Result<SmallMatrix, ArithError> {
        if a.rows() != a.cols() {
            return Err(ArithError::NotSquare { rows: a.rows(), cols: a.cols() });
        }
        let n = a.rows();
        let vals = a.to_i64()?;
        let mut m = [[0; MAX_DIM]; MAX_DIM];
        for i in 0..n {
            m[i][..n].copy_from_slice(&vals[i * n..(i + 1) * n]);
        }
        Ok(SmallMatrix { n, m })
    }

    pub fn to_int_matrix(&self) -> IntMatrix {
        let flat: Vec<i64> = (0..self.n).flat_map(|i| self.m[i][..self.n].to_vec()).collect();
        IntMatrix::from_i64(self.n, self.n, &flat)
    }

    pub fn apply(&self, p: &Point) -> Point {
        let mut out = Point::zero();
        for i in 0..self.n {
            let mut acc = 0i64;
            for j in 0..self.n {
                acc += self.m[i][j] * p[j];
            }
            out[i] = acc;
        }
        out
    }

    pub fn compose(&self, other: &SmallMatrix) -> SmallMatrix {
        let n = self.n;
        let mut m = [[0; MAX_DIM]; MAX_DIM];
        for i in 0..n {
            for j in 0..n {
                m[i][j] = (0..n).map(|k| self.m[i][k] * other.m[k][j]).sum();
            }
        }
        SmallMatrix { n, m }
    }

    pub fn det(&self) -> i128 {
        let flat: Vec<i64> = (0..self.n).flat_map(|i| self.m[i][..self.n].to_vec()).collect();
        det_small(self.n, &flat)
    }

    /// Inverse of a unimodular matrix (adjugate divided by `+-1`).
    pub fn inverse_unimodular(&self) -> Option<SmallMatrix> {
        let n = self.n;
        let d = self.det();
        if d != 1 && d != -1 {
            return None;
        }
        let mut out = [[0; MAX_DIM]; MAX_DIM];
        let mut buf = Vec::with_capacity((n - 1) * (n - 1));
        for i in 0..n {
            for j in 0..n {
                buf.clear();
                for r in (0..n).filter(|&r| r != j) {
                    for c in (0..n).filter(|&c| c != i) {
                        buf.push(self.m[r][c]);
                    }
                }
                let minor = det_small(n - 1, &buf);
                let cof = if (i + j) % 2 == 0 { minor } else { -minor };
                out[i][j] = (cof * d) as i64;
            }
        }
        Some(SmallMatrix { n, m: out })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cols3(a: [i64; 3], b: [i64; 3], c: [i64; 3]) -> IntMatrix {
        IntMatrix::from_columns(&[a.to_vec(), b.to_vec(), c.to_vec()])
    }

    #[test]
    fn det_examples() {
        assert_eq!(IntMatrix::identity(3).det().unwrap(), BigInt::from(1));
        for (a, b, c) in [(0, 0, 1), (3, -2, 5), (7, 1, -4)] {
            let m = cols3([1, 0, 0], [0, 1, 0], [a, b, c]);
            assert_eq!(m.det().unwrap(), BigInt::from(c));
        }
        let m = IntMatrix::from_rows(&[vec![2, 1], vec![1, 2]]);
        assert_eq!(m.det().unwrap(), BigInt::from(3));
        assert_eq!(det_small(2, &[2, 1, 1, 2]), 3);
    }

    #[test]
    fn det_rejects_non_square() {
        let m = IntMatrix::zeros(2, 3);
        assert_eq!(m.det(), Err(ArithError::NotSquare { rows: 2, cols: 3 }));
    }

    #[test]
    fn det_needs_row_swap() {
        let m = IntMatrix::from_rows(&[vec![0, 1], vec![1, 0]]);
        assert_eq!(m.det().unwrap(), BigInt::from(-1));
        assert_eq!(det_small(2, &[0, 1, 1, 0]), -1);
        assert_eq!(det_small(3, &[1, 2, 3, 2, 4, 6, 0, 1, 1]), 0);
    }

    #[test]
    fn hnf_identity_and_standard_edges() {
        let (h, u) = IntMatrix::identity(3).hnf();
        assert_eq!(h, IntMatrix::identity(3));
        assert_eq!(u, IntMatrix::identity(3));
        let m = cols3([1, 0, 0], [0, 1, 0], [0, 0, 1]);
        assert_eq!(m.hnf().0, IntMatrix::identity(3));
    }

    #[test]
    fn hnf_of_volume_two_simplex() {
        // edges e1, e2, (0,1,2) by hand: already upper triangular with
        // diagonal (1,1,2) and the 1 above the last pivot reduced mod 2
        let m = cols3([1, 0, 0], [0, 1, 0], [0, 1, 2]);
        let (h, u) = m.hnf();
        assert_eq!(h, IntMatrix::from_rows(&[vec![1, 0, 0], vec![0, 1, 1], vec![0, 0, 2]]));
        assert_eq!(u.mul(&m), h);
        // a scrambled basis of the same lattice lands on the same form
        let g = IntMatrix::from_rows(&[vec![2, 1, 0], vec![1, 1, 0], vec![3, -1, 1]]);
        let (h2, u2) = g.mul(&m).hnf();
        assert_eq!(h2, h);
        assert_eq!(u2.det().unwrap().abs(), BigInt::from(1));
    }

    #[test]
    fn affine_dependence_square() {
        let pts = [Point::new(&[0, 0]), Point::new(&[1, 0]), Point::new(&[0, 1]), Point::new(&[1, 1])];
        let d = affine_dependence(&pts, 2).unwrap();
        assert_eq!(d.coeffs, vec![1, -1, -1, 1]);
        assert!(d.verify());
    }

    #[test]
    fn affine_dependence_with_zero_coefficient() {
        let pts = [
            Point::new(&[0, 0, 0]),
            Point::new(&[1, 0, 0]),
            Point::new(&[0, 1, 0]),
            Point::new(&[0, 0, 1]),
            Point::new(&[1, 1, 0]),
        ];
        let d = affine_dependence(&pts, 3).unwrap();
        assert_eq!(d.coeffs, vec![1, -1, -1, 0, 1]);
        assert_eq!(d.zero(), vec![3]);
        assert_eq!(d.positive(), vec![0, 4]);
        assert_eq!(d.negative(), vec![1, 2]);
    }

    #[test]
    fn affine_dependence_rejects_flat_configurations() {
        let pts = [
            Point::new(&[0, 0, 0]),
            Point::new(&[1, 0, 0]),
            Point::new(&[0, 1, 0]),
            Point::new(&[1, 1, 0]),
            Point::new(&[2, 1, 0]),
        ];
        assert_eq!(affine_dependence(&pts, 3), Err(ArithError::Degenerate { dim: 3 }));
        assert!(matches!(affine_dependence(&pts[..3], 3), Err(ArithError::PointCount { .. })));
    }

    #[test]
    fn positive_definite_examples() {
        assert!(QuadForm::identity(3).is_positive_definite());
        assert!(!QuadForm::from_i64(2, &[1, 0, 0, -1]).unwrap().is_positive_definite());
        assert!(QuadForm::from_i64(2, &[2, 1, 1, 1]).unwrap().is_positive_definite());
        assert!(!QuadForm::from_i64(2, &[1, 1, 1, 1]).unwrap().is_positive_definite());
        assert!(QuadForm::from_i64(2, &[1, 2, 3, 1]).is_err());
    }

    #[test]
    fn quad_form_monomials_match_eval() {
        let a = QuadForm::from_i64(3, &[2, 1, 0, 1, 3, -1, 0, -1, 5]).unwrap();
        let x = Point::new(&[1, -2, 3]);
        let mono = QuadForm::monomials(&x, 3);
        let via: Q = a.to_coords().iter().zip(&mono).map(|(c, &m)| c * q(m)).sum();
        assert_eq!(via, a.eval(&x));
        assert_eq!(QuadForm::from_coords(3, &a.to_coords()), a);
    }

    #[test]
    fn small_matrix_inverse() {
        let g = SmallMatrix::from_rows(&[vec![2, 1, 0], vec![1, 1, 0], vec![3, -1, 1]]);
        let inv = g.inverse_unimodular().unwrap();
        assert_eq!(g.compose(&inv), SmallMatrix::identity(3));
        let p = Point::new(&[4, -7, 2]);
        assert_eq!(inv.apply(&g.apply(&p)), p);
    }
}
