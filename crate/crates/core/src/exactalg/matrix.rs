//! Dense matrices over an exact field (rationals or rational functions).

use std::fmt;
use std::ops::{Add, Mul, Sub};

use num_traits::{One, Zero};

use super::poly::Poly;
use super::ratfunc::RatFunc;
use super::rational::{format_rational, Rational};
use super::AlgError;

/// Exact field arithmetic needed by elimination.
pub trait Scalar: Clone + PartialEq + fmt::Debug + Send + Sync + Zero + One {
    fn plus(&self, o: &Self) -> Self;
    fn minus(&self, o: &Self) -> Self;
    fn times(&self, o: &Self) -> Self;
    /// Field division; `o` must be nonzero.
    fn over(&self, o: &Self) -> Self;
    fn negated(&self) -> Self;
    /// Heuristic size used to pick pivots that keep expressions small.
    fn complexity(&self) -> usize;
    fn render(&self) -> String;
}

impl Scalar for Rational {
    fn plus(&self, o: &Self) -> Self {
        self + o
    }
    fn minus(&self, o: &Self) -> Self {
        self - o
    }
    fn times(&self, o: &Self) -> Self {
        self * o
    }
    fn over(&self, o: &Self) -> Self {
        self / o
    }
    fn negated(&self) -> Self {
        -self
    }
    fn complexity(&self) -> usize {
        (self.numer().bits() + self.denom().bits()) as usize
    }
    fn render(&self) -> String {
        format_rational(self)
    }
}

impl Scalar for RatFunc {
    fn plus(&self, o: &Self) -> Self {
        self + o
    }
    fn minus(&self, o: &Self) -> Self {
        self - o
    }
    fn times(&self, o: &Self) -> Self {
        self * o
    }
    fn over(&self, o: &Self) -> Self {
        self / o
    }
    fn negated(&self) -> Self {
        -self.clone()
    }
    fn complexity(&self) -> usize {
        let deg = |p: &Poly| p.degree().unwrap_or(0);
        16 * (deg(self.num()) + deg(self.den()))
            + self.num().coeffs().iter().chain(self.den().coeffs()).map(|c| c.complexity()).sum::<usize>()
    }
    fn render(&self) -> String {
        self.to_string()
    }
}

/// Row-major dense matrix.
#[derive(Clone, PartialEq, Debug)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

/// Reduced row echelon form together with its pivot columns.
#[derive(Clone, Debug)]
pub struct Echelon<T> {
    pub reduced: Matrix<T>,
    pub pivots: Vec<usize>,
}

impl<T: Scalar> Matrix<T> {
    pub fn new(rows: usize, cols: usize, data: Vec<T>) -> Result<Self, AlgError> {
        if data.len() != rows * cols {
            return Err(AlgError::ShapeMismatch(format!(
                "{} entries for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        Ok(Matrix { rows, cols, data })
    }

    pub fn from_rows(rows: Vec<Vec<T>>) -> Result<Self, AlgError> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(AlgError::ShapeMismatch("ragged rows".into()));
        }
        Matrix::new(r, c, rows.into_iter().flatten().collect())
    }

    pub fn from_fn(rows: usize, cols: usize, f: impl Fn(usize, usize) -> T) -> Self {
        let data = (0..rows * cols).map(|k| f(k / cols, k % cols)).collect();
        Matrix { rows, cols, data }
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix::from_fn(rows, cols, |_, _| T::zero())
    }

    pub fn identity(n: usize) -> Self {
        Matrix::from_fn(n, n, |i, j| if i == j { T::one() } else { T::zero() })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &T {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: T) {
        self.data[i * self.cols + j] = v;
    }

    pub fn entries(&self) -> &[T] {
        &self.data
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<T> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn is_identity(&self) -> bool {
        self.is_square() && *self == Matrix::identity(self.rows)
    }

    pub fn map<U: Scalar>(&self, f: impl Fn(&T) -> U) -> Matrix<U> {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(f).collect() }
    }

    pub fn try_map<U: Scalar, E>(&self, f: impl Fn(&T) -> Result<U, E>) -> Result<Matrix<U>, E> {
        let data = self.data.iter().map(f).collect::<Result<Vec<_>, E>>()?;
        Ok(Matrix { rows: self.rows, cols: self.cols, data })
    }

    pub fn transpose(&self) -> Self {
        Matrix::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn scale(&self, c: &T) -> Self {
        self.map(|x| x.times(c))
    }

    pub fn neg(&self) -> Self {
        self.map(Scalar::negated)
    }

    pub fn try_add(&self, o: &Self) -> Result<Self, AlgError> {
        self.same_shape(o)?;
        Ok(Matrix::from_fn(self.rows, self.cols, |i, j| self.get(i, j).plus(o.get(i, j))))
    }

    pub fn try_sub(&self, o: &Self) -> Result<Self, AlgError> {
        self.same_shape(o)?;
        Ok(Matrix::from_fn(self.rows, self.cols, |i, j| self.get(i, j).minus(o.get(i, j))))
    }

    pub fn try_mul(&self, o: &Self) -> Result<Self, AlgError> {
        if self.cols != o.rows {
            return Err(AlgError::ShapeMismatch(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, o.rows, o.cols
            )));
        }
        let mut out = Matrix::<T>::zeros(self.rows, o.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..o.cols {
                    let b = o.get(k, j);
                    if !b.is_zero() {
                        let v = out.get(i, j).plus(&a.times(b));
                        out.set(i, j, v);
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[T]) -> Result<Vec<T>, AlgError> {
        if v.len() != self.cols {
            return Err(AlgError::ShapeMismatch(format!(
                "vector of length {} for {} columns",
                v.len(),
                self.cols
            )));
        }
        Ok((0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                    .fold(T::zero(), |acc, (a, b)| acc.plus(&a.times(b)))
            })
            .collect())
    }

    fn same_shape(&self, o: &Self) -> Result<(), AlgError> {
        if self.rows != o.rows || self.cols != o.cols {
            return Err(AlgError::ShapeMismatch(format!(
                "{}x{} vs {}x{}",
                self.rows, self.cols, o.rows, o.cols
            )));
        }
        Ok(())
    }

    /// Rows `r0..r1`, columns `c0..c1`.
    pub fn block(&self, r0: usize, r1: usize, c0: usize, c1: usize) -> Self {
        Matrix::from_fn(r1 - r0, c1 - c0, |i, j| self.get(r0 + i, c0 + j).clone())
    }

    pub fn set_block(&mut self, r0: usize, c0: usize, b: &Self) {
        for i in 0..b.rows {
            for j in 0..b.cols {
                self.set(r0 + i, c0 + j, b.get(i, j).clone());
            }
        }
    }

    pub fn hstack(&self, o: &Self) -> Result<Self, AlgError> {
        if self.rows != o.rows {
            return Err(AlgError::ShapeMismatch("hstack row counts differ".into()));
        }
        Ok(Matrix::from_fn(self.rows, self.cols + o.cols, |i, j| {
            if j < self.cols {
                self.get(i, j).clone()
            } else {
                o.get(i, j - self.cols).clone()
            }
        }))
    }

    pub fn vstack(&self, o: &Self) -> Result<Self, AlgError> {
        if self.cols != o.cols {
            return Err(AlgError::ShapeMismatch("vstack column counts differ".into()));
        }
        Ok(Matrix::from_fn(self.rows + o.rows, self.cols, |i, j| {
            if i < self.rows {
                self.get(i, j).clone()
            } else {
                o.get(i - self.rows, j).clone()
            }
        }))
    }

    pub fn block_diag(a: &Self, b: &Self) -> Self {
        let mut out = Matrix::zeros(a.rows + b.rows, a.cols + b.cols);
        out.set_block(0, 0, a);
        out.set_block(a.rows, a.cols, b);
        out
    }

    fn pick_pivot(&self, col: usize, from_row: usize) -> Option<usize> {
        (from_row..self.rows)
            .filter(|&i| !self.get(i, col).is_zero())
            .min_by_key(|&i| self.get(i, col).complexity())
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.data.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }

    /// Determinant by Gaussian elimination.
    pub fn det(&self) -> Result<T, AlgError> {
        if !self.is_square() {
            return Err(AlgError::NonSquare { rows: self.rows, cols: self.cols });
        }
        let n = self.rows;
        let mut a = self.clone();
        let mut det = T::one();
        for col in 0..n {
            let Some(p) = a.pick_pivot(col, col) else {
                return Ok(T::zero());
            };
            if p != col {
                a.swap_rows(p, col);
                det = det.negated();
            }
            let pivot = a.get(col, col).clone();
            det = det.times(&pivot);
            for i in col + 1..n {
                let x = a.get(i, col);
                if x.is_zero() {
                    continue;
                }
                let f = x.over(&pivot);
                for j in col..n {
                    let v = a.get(i, j).minus(&f.times(a.get(col, j)));
                    a.set(i, j, v);
                }
            }
        }
        Ok(det)
    }

    pub fn rref(&self) -> Echelon<T> {
        let mut a = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for col in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(p) = a.pick_pivot(col, r) else { continue };
            a.swap_rows(p, r);
            let inv = T::one().over(a.get(r, col));
            for j in 0..self.cols {
                let v = a.get(r, j).times(&inv);
                a.set(r, j, v);
            }
            for i in 0..self.rows {
                if i == r || a.get(i, col).is_zero() {
                    continue;
                }
                let f = a.get(i, col).clone();
                for j in 0..self.cols {
                    let v = a.get(i, j).minus(&f.times(a.get(r, j)));
                    a.set(i, j, v);
                }
            }
            pivots.push(col);
            r += 1;
        }
        Echelon { reduced: a, pivots }
    }

    pub fn rank(&self) -> usize {
        self.rref().pivots.len()
    }

    /// Basis of the right null space, one vector per free column.
    pub fn kernel(&self) -> Vec<Vec<T>> {
        let Echelon { reduced, pivots } = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![T::zero(); self.cols];
                v[f] = T::one();
                for (r, &p) in pivots.iter().enumerate() {
                    v[p] = reduced.get(r, f).negated();
                }
                v
            })
            .collect()
    }

    pub fn inverse(&self) -> Result<Self, AlgError> {
        if !self.is_square() {
            return Err(AlgError::NonSquare { rows: self.rows, cols: self.cols });
        }
        let n = self.rows;
        let aug = self.hstack(&Matrix::identity(n))?;
        let Echelon { reduced, pivots } = aug.rref();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return Err(AlgError::Singular);
        }
        Ok(reduced.block(0, n, n, 2 * n))
    }
}

impl Matrix<Rational> {
    pub fn from_i64(rows: usize, cols: usize, data: &[i64]) -> Self {
        Matrix::new(rows, cols, data.iter().map(|&x| Rational::from_integer(x.into())).collect())
            .expect("entry count matches shape")
    }

    pub fn to_ratfunc(&self) -> Matrix<RatFunc> {
        self.map(|x| RatFunc::constant(x.clone()))
    }
}

impl Matrix<RatFunc> {
    /// Entrywise evaluation; `None` if `s` is a pole of some entry.
    pub fn eval(&self, s: &Rational) -> Option<Matrix<Rational>> {
        let data = self.data.iter().map(|e| e.eval(s)).collect::<Option<Vec<_>>>()?;
        Some(Matrix { rows: self.rows, cols: self.cols, data })
    }

    pub fn derivative(&self) -> Self {
        self.map(RatFunc::derivative)
    }

    pub fn is_constant(&self) -> bool {
        self.data.iter().all(RatFunc::is_constant)
    }

    /// Product of all denominators' distinct factors: every pole of the matrix is a root.
    pub fn pole_polynomial(&self) -> Poly {
        let mut acc = Poly::one();
        for e in &self.data {
            let g = Poly::gcd(&acc, e.den());
            acc = &acc * &e.den().div_rem(&g).0;
        }
        acc.monic()
    }
}

impl<T: Scalar> fmt::Display for Matrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, ", ")?;
            }
            let row: Vec<String> = self.row(i).iter().map(Scalar::render).collect();
            write!(f, "[{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

impl<T: Scalar> Mul for &Matrix<T> {
    type Output = Matrix<T>;
    fn mul(self, o: &Matrix<T>) -> Matrix<T> {
        self.try_mul(o).expect("matrix product shape mismatch")
    }
}

impl<T: Scalar> Add for &Matrix<T> {
    type Output = Matrix<T>;
    fn add(self, o: &Matrix<T>) -> Matrix<T> {
        self.try_add(o).expect("matrix sum shape mismatch")
    }
}

impl<T: Scalar> Sub for &Matrix<T> {
    type Output = Matrix<T>;
    fn sub(self, o: &Matrix<T>) -> Matrix<T> {
        self.try_sub(o).expect("matrix difference shape mismatch")
    }
}
