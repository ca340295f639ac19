//! Full-rank integer lattices with a tracked scalar, LLL reduction, and
//! shortest-vector search in the sup norm.
//!
//! The represented basis is `scale * columns`. All algorithms work on the
//! integral columns and only apply `scale` when reporting norms.

use std::sync::atomic::{AtomicUsize, Ordering};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::matrix::Matrix;
use super::rational::{rat, to_f64, Rational};
use super::AlgError;

pub const MAX_SVP_DIM: usize = 8;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntegerLatticeBasis {
    columns: Vec<Vec<BigInt>>,
    scale: Rational,
}

/// A nonzero lattice vector of minimal sup norm.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ShortestVector {
    pub norm: Rational,
    /// Coefficients with respect to the basis the search was started from.
    pub coefficients: Vec<BigInt>,
    pub vector: Vec<Rational>,
}

/// Counters for the double-precision search path.
#[derive(Debug, Default)]
pub struct SvpStats {
    fast: AtomicUsize,
    exact_fallbacks: AtomicUsize,
}

impl SvpStats {
    pub fn fast_calls(&self) -> usize {
        self.fast.load(Ordering::Relaxed)
    }

    pub fn exact_fallbacks(&self) -> usize {
        self.exact_fallbacks.load(Ordering::Relaxed)
    }
}

impl IntegerLatticeBasis {
    pub fn new(columns: Vec<Vec<BigInt>>, scale: Rational) -> Result<Self, AlgError> {
        let dim = columns.len();
        if dim == 0 || columns.iter().any(|c| c.len() != dim) {
            return Err(AlgError::ShapeMismatch(format!(
                "lattice basis needs {dim} columns of length {dim}"
            )));
        }
        if scale.is_zero() {
            return Err(AlgError::DependentColumns);
        }
        let basis = IntegerLatticeBasis { columns, scale: scale.abs() };
        if basis.integer_det().is_zero() {
            return Err(AlgError::DependentColumns);
        }
        Ok(basis)
    }

    pub fn from_i64_columns(columns: &[&[i64]], scale: Rational) -> Result<Self, AlgError> {
        let cols = columns
            .iter()
            .map(|c| c.iter().map(|&x| BigInt::from(x)).collect())
            .collect();
        IntegerLatticeBasis::new(cols, scale)
    }

    /// Splits a rational basis matrix (basis vectors are its columns) into
    /// integral columns and a common scale `1/L`.
    pub fn from_rational_matrix(m: &Matrix<Rational>) -> Result<Self, AlgError> {
        if !m.is_square() {
            return Err(AlgError::NonSquare { rows: m.rows(), cols: m.cols() });
        }
        let l = super::rational::lcm_denominators(m.entries());
        let cols = (0..m.cols())
            .map(|j| {
                (0..m.rows())
                    .map(|i| (m.get(i, j) * Rational::from_integer(l.clone())).to_integer())
                    .collect()
            })
            .collect();
        IntegerLatticeBasis::new(cols, Rational::new(BigInt::one(), l))
    }

    pub fn dim(&self) -> usize {
        self.columns.len()
    }

    pub fn columns(&self) -> &[Vec<BigInt>] {
        &self.columns
    }

    pub fn scale(&self) -> &Rational {
        &self.scale
    }

    /// The true basis as a rational matrix with basis vectors in its columns.
    pub fn to_matrix(&self) -> Matrix<Rational> {
        let d = self.dim();
        Matrix::from_fn(d, d, |i, j| Rational::from_integer(self.columns[j][i].clone()) * &self.scale)
    }

    fn integer_det(&self) -> BigInt {
        let d = self.dim();
        let m = Matrix::from_fn(d, d, |i, j| Rational::from_integer(self.columns[j][i].clone()));
        m.det().expect("square").to_integer()
    }

    /// Signed determinant of the true basis.
    pub fn det(&self) -> Rational {
        Rational::from_integer(self.integer_det()) * num_traits::pow(self.scale.clone(), self.dim())
    }

    /// Determinant of the Gram matrix of the true basis.
    pub fn gram_det(&self) -> Rational {
        let d = self.det();
        &d * &d
    }

    /// Integer combination `sum c_j * column_j` (before scaling).
    pub fn combine(&self, coeffs: &[BigInt]) -> Vec<BigInt> {
        let d = self.dim();
        let mut out = vec![BigInt::zero(); d];
        for (c, col) in coeffs.iter().zip(&self.columns) {
            if c.is_zero() {
                continue;
            }
            for i in 0..d {
                out[i] += c * &col[i];
            }
        }
        out
    }

    /// True lattice vector for the given coefficients.
    pub fn vector(&self, coeffs: &[BigInt]) -> Vec<Rational> {
        self.combine(coeffs)
            .into_iter()
            .map(|x| Rational::from_integer(x) * &self.scale)
            .collect()
    }

    pub fn sup_norm(&self, coeffs: &[BigInt]) -> Rational {
        Rational::from_integer(sup_int(&self.combine(coeffs))) * &self.scale
    }

    /// LLL-reduced basis of the same lattice.
    pub fn lll_reduce(&self, delta: &Rational) -> Result<IntegerLatticeBasis, AlgError> {
        Ok(self.lll_reduce_with_transform(delta)?.0)
    }

    /// LLL reduction returning also the unimodular `U` with
    /// `reduced.column_j = sum_i U[i][j] * self.column_i`.
    pub fn lll_reduce_with_transform(
        &self,
        delta: &Rational,
    ) -> Result<(IntegerLatticeBasis, Vec<Vec<BigInt>>), AlgError> {
        if *delta <= rat(1, 4) || *delta >= Rational::one() {
            return Err(AlgError::InvalidDelta(super::rational::format_rational(delta)));
        }
        let (cols, h) = integral_lll(self.columns.clone(), delta)?;
        let d = self.dim();
        // h[j] holds the coefficients of reduced column j
        let u = (0..d).map(|i| (0..d).map(|j| h[j][i].clone()).collect()).collect();
        Ok((IntegerLatticeBasis { columns: cols, scale: self.scale.clone() }, u))
    }

    /// Nonzero vector of minimal sup norm, exact.
    pub fn shortest_vector_sup(&self) -> Result<ShortestVector, AlgError> {
        self.check_svp_dim()?;
        let (reduced, h) = self.reduce_for_search()?;
        let enumerator = ExactEnumerator::new(&reduced.columns);
        let (mut best_int, mut best_x) = shortest_column(&reduced.columns);
        let d = self.dim();
        let mut radius = Rational::from_integer(&best_int * &best_int * BigInt::from(d));
        enumerator.run(&mut radius, |x, v| {
            let s = sup_int(v);
            if s < best_int {
                best_int = s;
                best_x = x.to_vec();
                Some(Rational::from_integer(&best_int * &best_int * BigInt::from(d)))
            } else {
                None
            }
        });
        Ok(self.finish(&h, &best_x))
    }

    /// Shortest vector using a double-precision enumeration. When the found
    /// norm lies within a factor 2 of `threshold` the search is redone exactly.
    pub fn shortest_vector_sup_fast(
        &self,
        threshold: &Rational,
        stats: &SvpStats,
    ) -> Result<ShortestVector, AlgError> {
        self.check_svp_dim()?;
        stats.fast.fetch_add(1, Ordering::Relaxed);
        let (reduced, h) = self.reduce_for_search()?;
        let cols_f: Vec<Vec<f64>> = reduced
            .columns
            .iter()
            .map(|c| c.iter().map(|x| to_f64(&(Rational::from_integer(x.clone()) * &reduced.scale))).collect())
            .collect();
        let Some(x) = float_svp(&cols_f) else {
            stats.exact_fallbacks.fetch_add(1, Ordering::Relaxed);
            return self.shortest_vector_sup();
        };
        let found = self.finish(&h, &x);
        let lo = threshold / Rational::from_integer(2.into());
        let hi = threshold * Rational::from_integer(2.into());
        if found.norm >= lo && found.norm <= hi {
            stats.exact_fallbacks.fetch_add(1, Ordering::Relaxed);
            return self.shortest_vector_sup();
        }
        Ok(found)
    }

    /// Every nonzero lattice vector with sup norm at most `radius`, as
    /// coefficient vectors relative to this basis, in a deterministic order.
    pub fn vectors_within_sup(&self, radius: &Rational) -> Result<Vec<ShortestVector>, AlgError> {
        self.check_svp_dim()?;
        let (reduced, h) = self.reduce_for_search()?;
        let enumerator = ExactEnumerator::new(&reduced.columns);
        let r_int = radius / &self.scale;
        let mut euclid = &r_int * &r_int * Rational::from_integer(self.dim().into());
        let mut hits = Vec::new();
        enumerator.run(&mut euclid, |x, v| {
            if Rational::from_integer(sup_int(v)) <= r_int {
                hits.push(x.to_vec());
            }
            None
        });
        let mut out: Vec<ShortestVector> = hits.iter().map(|x| self.finish(&h, x)).collect();
        out.sort_by(|a, b| a.coefficients.cmp(&b.coefficients));
        Ok(out)
    }

    fn check_svp_dim(&self) -> Result<(), AlgError> {
        if self.dim() > MAX_SVP_DIM {
            Err(AlgError::DimensionTooLarge(self.dim()))
        } else {
            Ok(())
        }
    }

    fn reduce_for_search(&self) -> Result<(IntegerLatticeBasis, Vec<Vec<BigInt>>), AlgError> {
        let (cols, h) = integral_lll(self.columns.clone(), &rat(3, 4))?;
        Ok((IntegerLatticeBasis { columns: cols, scale: self.scale.clone() }, h))
    }

    fn finish(&self, h: &[Vec<BigInt>], x: &[i64]) -> ShortestVector {
        let d = self.dim();
        let mut coeffs = vec![BigInt::zero(); d];
        for (xj, hj) in x.iter().zip(h) {
            if *xj == 0 {
                continue;
            }
            for i in 0..d {
                coeffs[i] += BigInt::from(*xj) * &hj[i];
            }
        }
        let vector = self.vector(&coeffs);
        let norm = vector.iter().map(Signed::abs).max().unwrap_or_else(Rational::zero);
        ShortestVector { norm, coefficients: coeffs, vector }
    }
}

fn sup_int(v: &[BigInt]) -> BigInt {
    v.iter().map(Signed::abs).max().unwrap_or_else(BigInt::zero)
}

fn shortest_column(cols: &[Vec<BigInt>]) -> (BigInt, Vec<i64>) {
    let d = cols.len();
    let (j, norm) = cols
        .iter()
        .enumerate()
        .map(|(j, c)| (j, sup_int(c)))
        .min_by(|a, b| a.1.cmp(&b.1))
        .expect("nonempty basis");
    let mut x = vec![0i64; d];
    x[j] = 1;
    (norm, x)
}

fn dot(a: &[BigInt], b: &[BigInt]) -> BigInt {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn round_div(num: &BigInt, den: &BigInt) -> BigInt {
    // nearest integer to num/den, den > 0, ties toward +infinity
    let two = BigInt::from(2);
    (num * &two + den).div_floor(&(den * &two))
}

/// Integral LLL (all arithmetic in integers). Returns the reduced columns and,
/// for each reduced column, its coefficients in terms of the input columns.
fn integral_lll(
    mut b: Vec<Vec<BigInt>>,
    delta: &Rational,
) -> Result<(Vec<Vec<BigInt>>, Vec<Vec<BigInt>>), AlgError> {
    let n = b.len();
    let p = delta.numer().clone();
    let q = delta.denom().clone();
    let mut h: Vec<Vec<BigInt>> = (0..n)
        .map(|i| (0..n).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }).collect())
        .collect();
    // d[i] for i = 0..=n, with d[0] = 1; lambda[k][j] for j < k (0-based vectors)
    let mut d = vec![BigInt::zero(); n + 1];
    let mut lambda = vec![vec![BigInt::zero(); n]; n];
    d[0] = BigInt::one();
    d[1] = dot(&b[0], &b[0]);
    if d[1].is_zero() {
        return Err(AlgError::DependentColumns);
    }
    if n == 1 {
        return Ok((b, h));
    }
    let mut k = 1usize;
    let mut k_max = 0usize;

    let redi = |k: usize, l: usize, b: &mut Vec<Vec<BigInt>>, h: &mut Vec<Vec<BigInt>>, lambda: &mut Vec<Vec<BigInt>>, d: &[BigInt]| {
        let two_l = &lambda[k][l] * BigInt::from(2);
        if two_l.abs() > d[l + 1] {
            let r = round_div(&lambda[k][l], &d[l + 1]);
            for i in 0..b[k].len() {
                let t = &r * &b[l][i];
                b[k][i] -= t;
            }
            for i in 0..h[k].len() {
                let t = &r * &h[l][i];
                h[k][i] -= t;
            }
            let t = &r * &d[l + 1];
            lambda[k][l] -= t;
            for i in 0..l {
                let t = &r * &lambda[l][i];
                lambda[k][i] -= t;
            }
        }
    };

    while k < n {
        if k > k_max {
            k_max = k;
            for j in 0..=k {
                let mut u = dot(&b[k], &b[j]);
                for i in 0..j {
                    u = (&d[i + 1] * &u - &lambda[k][i] * &lambda[j][i]) / &d[i];
                }
                if j < k {
                    lambda[k][j] = u;
                } else {
                    if u.is_zero() {
                        return Err(AlgError::DependentColumns);
                    }
                    d[k + 1] = u;
                }
            }
        }
        loop {
            redi(k, k - 1, &mut b, &mut h, &mut lambda, &d);
            let lam = &lambda[k][k - 1];
            let lhs = &q * &d[k + 1] * &d[k - 1];
            let rhs = &p * &d[k] * &d[k] - &q * lam * lam;
            if lhs < rhs {
                // swap k-1 and k
                b.swap(k, k - 1);
                h.swap(k, k - 1);
                for j in 0..k - 1 {
                    let t = lambda[k][j].clone();
                    lambda[k][j] = lambda[k - 1][j].clone();
                    lambda[k - 1][j] = t;
                }
                let lam = lambda[k][k - 1].clone();
                let bb = (&d[k - 1] * &d[k + 1] + &lam * &lam) / &d[k];
                for i in k + 1..=k_max {
                    let t = lambda[i][k].clone();
                    lambda[i][k] = (&d[k + 1] * &lambda[i][k - 1] - &lam * &t) / &d[k];
                    lambda[i][k - 1] = (&bb * &t + &lam * &lambda[i][k]) / &d[k + 1];
                }
                d[k] = bb;
                if k > 1 {
                    k -= 1;
                }
            } else {
                for l in (0..k - 1).rev() {
                    redi(k, l, &mut b, &mut h, &mut lambda, &d);
                }
                k += 1;
                break;
            }
        }
    }
    Ok((b, h))
}

/// Exact Gram–Schmidt data for Fincke–Pohst enumeration.
struct ExactEnumerator<'a> {
    cols: &'a [Vec<BigInt>],
    /// mu[j][i] = <b_j, b*_i> / |b*_i|^2 for i < j
    mu: Vec<Vec<Rational>>,
    /// |b*_i|^2
    bstar: Vec<Rational>,
}

impl<'a> ExactEnumerator<'a> {
    fn new(cols: &'a [Vec<BigInt>]) -> Self {
        let n = cols.len();
        let qcols: Vec<Vec<Rational>> = cols
            .iter()
            .map(|c| c.iter().map(|x| Rational::from_integer(x.clone())).collect())
            .collect();
        let mut star: Vec<Vec<Rational>> = Vec::with_capacity(n);
        let mut mu = vec![vec![Rational::zero(); n]; n];
        let mut bstar = Vec::with_capacity(n);
        for j in 0..n {
            let mut v = qcols[j].clone();
            for i in 0..j {
                let m = qdot(&qcols[j], &star[i]) / &bstar[i];
                for (vk, sk) in v.iter_mut().zip(&star[i]) {
                    *vk -= &m * sk;
                }
                mu[j][i] = m;
            }
            bstar.push(qdot(&v, &v));
            star.push(v);
        }
        ExactEnumerator { cols, mu, bstar }
    }

    /// Visits every nonzero `x` with `|sum x_j b_j|^2 <= radius`. The visitor
    /// may return a smaller radius, which then applies to the rest of the search.
    fn run(&self, radius: &mut Rational, mut visit: impl FnMut(&[i64], &[BigInt]) -> Option<Rational>) {
        let n = self.cols.len();
        let mut x = vec![0i64; n];
        self.descend(n - 1, Rational::zero(), &mut x, radius, &mut visit);
    }

    fn descend(
        &self,
        level: usize,
        partial: Rational,
        x: &mut [i64],
        radius: &mut Rational,
        visit: &mut impl FnMut(&[i64], &[BigInt]) -> Option<Rational>,
    ) {
        let n = x.len();
        let mut center = Rational::zero();
        for j in level + 1..n {
            if x[j] != 0 {
                center -= &self.mu[j][level] * Rational::from_integer(x[j].into());
            }
        }
        let slack = &*radius - &partial;
        if slack.is_negative() {
            return;
        }
        let t = slack / &self.bstar[level];
        let Some((lo, hi)) = integer_window(&center, &t) else { return };
        for xi in lo..=hi {
            x[level] = xi;
            let diff = Rational::from_integer(xi.into()) - &center;
            let here = &partial + &diff * &diff * &self.bstar[level];
            if here > *radius {
                continue;
            }
            if level == 0 {
                if x.iter().all(|&c| c == 0) {
                    continue;
                }
                let v = combine_i64(self.cols, x);
                if let Some(r) = visit(x, &v) {
                    *radius = r;
                }
            } else {
                self.descend(level - 1, here, x, radius, visit);
            }
        }
        x[level] = 0;
    }
}

fn qdot(a: &[Rational], b: &[Rational]) -> Rational {
    a.iter().zip(b).fold(Rational::zero(), |acc, (x, y)| acc + x * y)
}

fn combine_i64(cols: &[Vec<BigInt>], x: &[i64]) -> Vec<BigInt> {
    let d = cols[0].len();
    let mut out = vec![BigInt::zero(); d];
    for (xj, c) in x.iter().zip(cols) {
        if *xj == 0 {
            continue;
        }
        let xb = BigInt::from(*xj);
        for i in 0..d {
            out[i] += &xb * &c[i];
        }
    }
    out
}

/// Integers `x` with `(x - c)^2 <= t`, as an inclusive range.
fn integer_window(c: &Rational, t: &Rational) -> Option<(i64, i64)> {
    let fits = |x: i64| {
        let d = Rational::from_integer(x.into()) - c;
        &d * &d <= *t
    };
    let cf = to_f64(c);
    let r = to_f64(t).max(0.0).sqrt();
    let mut lo = (cf - r).ceil() as i64;
    let mut hi = (cf + r).floor() as i64;
    while fits(lo - 1) {
        lo -= 1;
    }
    while lo <= hi && !fits(lo) {
        lo += 1;
    }
    while fits(hi + 1) {
        hi += 1;
    }
    while hi >= lo && !fits(hi) {
        hi -= 1;
    }
    if lo > hi {
        // the float estimate may have missed a narrow window
        let near = c.round().to_integer().to_i64()?;
        return fits(near).then_some((near, near));
    }
    Some((lo, hi))
}

/// Double-precision Fincke–Pohst search for the minimal sup norm, returning
/// coefficients relative to `cols`.
fn float_svp(cols: &[Vec<f64>]) -> Option<Vec<i64>> {
    let n = cols.len();
    let mut star: Vec<Vec<f64>> = Vec::with_capacity(n);
    let mut mu = vec![vec![0.0; n]; n];
    let mut bstar = Vec::with_capacity(n);
    for j in 0..n {
        let mut v = cols[j].clone();
        for i in 0..j {
            let m = fdot(&cols[j], &star[i]) / bstar[i];
            for (vk, sk) in v.iter_mut().zip(&star[i]) {
                *vk -= m * sk;
            }
            mu[j][i] = m;
        }
        let b = fdot(&v, &v);
        if !(b > 0.0) || !b.is_finite() {
            return None;
        }
        bstar.push(b);
        star.push(v);
    }
    let sup = |x: &[i64]| -> f64 {
        (0..n)
            .map(|i| x.iter().zip(cols).map(|(&xj, c)| xj as f64 * c[i]).sum::<f64>().abs())
            .fold(0.0, f64::max)
    };
    let mut best_x = vec![0i64; n];
    let mut best = f64::INFINITY;
    for j in 0..n {
        let mut x = vec![0i64; n];
        x[j] = 1;
        let s = sup(&x);
        if s < best {
            best = s;
            best_x = x;
        }
    }
    let slack = 1.0 + 1e-9;
    let mut radius = n as f64 * best * best * slack;
    let mut x = vec![0i64; n];
    let mut nodes = 0usize;
    #[allow(clippy::too_many_arguments)]
    fn go(
        level: usize,
        partial: f64,
        x: &mut [i64],
        mu: &[Vec<f64>],
        bstar: &[f64],
        radius: &mut f64,
        best: &mut f64,
        best_x: &mut Vec<i64>,
        sup: &dyn Fn(&[i64]) -> f64,
        nodes: &mut usize,
    ) -> bool {
        *nodes += 1;
        if *nodes > 5_000_000 {
            return false;
        }
        let n = x.len();
        let center: f64 = -(level + 1..n).map(|j| mu[j][level] * x[j] as f64).sum::<f64>();
        let rem = *radius - partial;
        if rem < 0.0 {
            return true;
        }
        let w = (rem / bstar[level]).sqrt();
        let lo = (center - w).ceil() as i64;
        let hi = (center + w).floor() as i64;
        for xi in lo..=hi {
            x[level] = xi;
            let diff = xi as f64 - center;
            let here = partial + diff * diff * bstar[level];
            if here > *radius {
                continue;
            }
            if level == 0 {
                if x.iter().all(|&c| c == 0) {
                    continue;
                }
                let s = sup(x);
                if s < *best {
                    *best = s;
                    *best_x = x.to_vec();
                    *radius = n as f64 * s * s * (1.0 + 1e-9);
                }
            } else if !go(level - 1, here, x, mu, bstar, radius, best, best_x, sup, nodes) {
                return false;
            }
        }
        x[level] = 0;
        true
    }
    let ok = go(n - 1, 0.0, &mut x, &mu, &bstar, &mut radius, &mut best, &mut best_x, &sup, &mut nodes);
    ok.then_some(best_x)
}

fn fdot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::rational::int;

    #[test]
    fn lll_examples() {
        let id = IntegerLatticeBasis::from_i64_columns(&[&[1, 0], &[0, 1]], int(1)).unwrap();
        assert_eq!(id.lll_reduce(&rat(3, 4)).unwrap(), id);
        let skew = IntegerLatticeBasis::from_i64_columns(&[&[1, 0], &[100, 1]], int(1)).unwrap();
        let red = skew.lll_reduce(&rat(3, 4)).unwrap();
        let mut cols: Vec<Vec<BigInt>> = red.columns().iter().map(|c| c.iter().map(|x| x.abs()).collect()).collect();
        cols.sort();
        assert_eq!(cols, vec![vec![BigInt::from(0), BigInt::from(1)], vec![BigInt::from(1), BigInt::from(0)]]);
        // the Lovász condition reorders the columns, the vectors themselves are kept
        let orth = IntegerLatticeBasis::from_i64_columns(&[&[4, 0], &[0, 1]], int(1)).unwrap();
        let out = orth.lll_reduce(&rat(3, 4)).unwrap();
        let mut got = out.columns().to_vec();
        got.sort();
        let mut want = orth.columns().to_vec();
        want.sort();
        assert_eq!(got, want);
        assert!(matches!(id.lll_reduce(&rat(1, 4)), Err(AlgError::InvalidDelta(_))));
    }

    #[test]
    fn dependent_columns_rejected() {
        let err = IntegerLatticeBasis::from_i64_columns(&[&[1, 2], &[2, 4]], int(1)).unwrap_err();
        assert_eq!(err, AlgError::DependentColumns);
    }

    #[test]
    fn svp_examples() {
        let z2 = IntegerLatticeBasis::from_i64_columns(&[&[1, 0], &[0, 1]], int(1)).unwrap();
        assert_eq!(z2.shortest_vector_sup().unwrap().norm, int(1));
        // diag(4, 1/4) as columns (16, 0), (0, 1) with scale 1/4
        let diag = IntegerLatticeBasis::from_i64_columns(&[&[16, 0], &[0, 1]], rat(1, 4)).unwrap();
        let sv = diag.shortest_vector_sup().unwrap();
        assert_eq!(sv.norm, rat(1, 4));
        assert_eq!(sv.coefficients[0], BigInt::zero());
        assert_eq!(sv.coefficients[1].abs(), BigInt::one());
        let b = IntegerLatticeBasis::from_i64_columns(&[&[5, 3], &[3, 2]], int(1)).unwrap();
        let sv = b.shortest_vector_sup().unwrap();
        assert_eq!(sv.norm, int(1));
    }

    #[test]
    fn too_large_dimension() {
        let cols: Vec<Vec<BigInt>> = (0..9)
            .map(|j| (0..9).map(|i| BigInt::from(i64::from(i == j))).collect())
            .collect();
        let b = IntegerLatticeBasis::new(cols, int(1)).unwrap();
        assert_eq!(b.shortest_vector_sup().unwrap_err(), AlgError::DimensionTooLarge(9));
    }

    #[test]
    fn ball_enumeration_counts_cube() {
        let z3 = IntegerLatticeBasis::from_i64_columns(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]], int(1)).unwrap();
        assert_eq!(z3.vectors_within_sup(&rat(3, 2)).unwrap().len(), 26);
    }
}
