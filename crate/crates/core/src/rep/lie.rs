//! `sl(d)` over the rationals, diagonal tori and embedded `sl(2)` triples.

use num_traits::{One, Zero};
use serde::Serialize;

use super::RepError;
use crate::exactalg::{Matrix, Rational};
use crate::group::GroupElement;

/// Basis of `sl(d)`: off-diagonal `E_ij` row-major, then `H_i = E_ii - E_{i+1,i+1}`.
#[derive(Clone, Debug, PartialEq)]
pub struct SlBasis {
    d: usize,
    /// `(i, j)` for the off-diagonal elements.
    roots: Vec<(usize, usize)>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BasisElement {
    Root(usize, usize),
    Cartan(usize),
}

impl SlBasis {
    pub fn new(d: usize) -> Self {
        let roots = (0..d).flat_map(|i| (0..d).filter(move |&j| j != i).map(move |j| (i, j))).collect();
        SlBasis { d, roots }
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn len(&self) -> usize {
        self.d * self.d - 1
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn element(&self, idx: usize) -> BasisElement {
        if idx < self.roots.len() {
            let (i, j) = self.roots[idx];
            BasisElement::Root(i, j)
        } else {
            BasisElement::Cartan(idx - self.roots.len())
        }
    }

    pub fn index_of_root(&self, i: usize, j: usize) -> usize {
        debug_assert!(i != j);
        i * (self.d - 1) + if j < i { j } else { j - 1 }
    }

    pub fn matrix(&self, idx: usize) -> Matrix<Rational> {
        let mut out = Matrix::zeros(self.d, self.d);
        match self.element(idx) {
            BasisElement::Root(i, j) => out.set(i, j, Rational::one()),
            BasisElement::Cartan(i) => {
                out.set(i, i, Rational::one());
                out.set(i + 1, i + 1, -Rational::one());
            }
        }
        out
    }

    /// Coordinates of a traceless matrix; the Cartan part uses partial sums of the diagonal.
    pub fn coordinates(&self, x: &Matrix<Rational>) -> Vec<(usize, Rational)> {
        let mut out = Vec::new();
        for (idx, &(i, j)) in self.roots.iter().enumerate() {
            let v = x.get(i, j);
            if !v.is_zero() {
                out.push((idx, v.clone()));
            }
        }
        let mut acc = Rational::zero();
        for i in 0..self.d - 1 {
            acc += x.get(i, i);
            if !acc.is_zero() {
                out.push((self.roots.len() + i, acc.clone()));
            }
        }
        out
    }

    /// Weight of a basis element under the torus `diag(exponents)`.
    pub fn weight(&self, idx: usize, torus: &Torus) -> i64 {
        match self.element(idx) {
            BasisElement::Root(i, j) => torus.exponents[i] - torus.exponents[j],
            BasisElement::Cartan(_) => 0,
        }
    }
}

/// One-parameter diagonal subgroup `N -> diag(N^{e_0}, ..., N^{e_{d-1}})` with `sum e_i = 0`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Torus {
    pub name: String,
    pub exponents: Vec<i64>,
}

impl Torus {
    pub fn new(name: impl Into<String>, exponents: Vec<i64>) -> Self {
        debug_assert_eq!(exponents.iter().sum::<i64>(), 0);
        Torus { name: name.into(), exponents }
    }

    /// `a(t) = diag(e^{nt} I_m, e^{-mt} I_n)`.
    pub fn flow(m: usize, n: usize) -> Self {
        let e = (0..m + n).map(|i| if i < m { n as i64 } else { -(m as i64) }).collect();
        Torus::new("A", e)
    }

    /// `A_i` for `n = k m`: `e^t` on block 0, `e^-t` on block `i`, identity elsewhere.
    pub fn block(m: usize, k: usize, i: usize) -> Self {
        let e = (0..m * (k + 1))
            .map(|c| match c / m {
                0 => 1,
                b if b == i => -1,
                _ => 0,
            })
            .collect();
        Torus::new(format!("A_{i}"), e)
    }

    /// Diagonal torus of the triple embedded on the first two `m x m` blocks.
    pub fn sl2(m: usize, d: usize) -> Self {
        let e = (0..d)
            .map(|c| if c < m { 1 } else if c < 2 * m { -1 } else { 0 })
            .collect();
        Torus::new("sl2", e)
    }

    /// The group element at `e^t = N` (`N` a positive rational).
    pub fn at(&self, big_n: &Rational) -> Matrix<Rational> {
        let d = self.exponents.len();
        Matrix::from_fn(d, d, |i, j| {
            if i != j {
                Rational::zero()
            } else {
                let e = self.exponents[i];
                if e >= 0 {
                    num_traits::pow(big_n.clone(), e as usize)
                } else {
                    num_traits::pow(big_n.recip(), (-e) as usize)
                }
            }
        })
    }
}

/// A traceless rational matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct LieElement(Matrix<Rational>);

impl LieElement {
    pub fn new(matrix: Matrix<Rational>) -> Result<Self, RepError> {
        if !matrix.is_square() {
            return Err(RepError::ShapeMismatch("Lie algebra elements are square".into()));
        }
        let trace: Rational = (0..matrix.rows()).map(|i| matrix.get(i, i).clone()).sum();
        if !trace.is_zero() {
            return Err(RepError::ShapeMismatch("element of sl(d) must be traceless".into()));
        }
        Ok(LieElement(matrix))
    }

    pub fn matrix(&self) -> &Matrix<Rational> {
        &self.0
    }

    pub fn bracket(&self, other: &LieElement) -> LieElement {
        LieElement(&(&self.0 * &other.0) - &(&other.0 * &self.0))
    }

    pub fn scale(&self, c: &Rational) -> LieElement {
        LieElement(self.0.scale(c))
    }
}

/// `n^+(X)`, `n^-(X^-1)` and `a = diag(I_m, -I_m, 0)` inside `sl(m+n)`.
#[derive(Clone, Debug, PartialEq)]
pub struct Sl2Triple {
    pub x: Matrix<Rational>,
    pub m: usize,
    pub n: usize,
    pub nplus: LieElement,
    pub nminus: LieElement,
    pub a: LieElement,
}

pub fn sl2_triple(x: &Matrix<Rational>, m: usize, n: usize) -> Result<Sl2Triple, RepError> {
    if x.rows() != m || x.cols() != m || 2 * m > m + n {
        return Err(RepError::ShapeMismatch(format!("X must be m x m with 2m <= m+n (m={m}, n={n})")));
    }
    let xinv = x.inverse().map_err(|_| RepError::SingularX)?;
    let d = m + n;
    let mut np = Matrix::zeros(d, d);
    np.set_block(0, m, x);
    let mut nm = Matrix::zeros(d, d);
    nm.set_block(m, 0, &xinv);
    let a = Matrix::from_fn(d, d, |i, j| {
        if i != j || i >= 2 * m {
            Rational::zero()
        } else if i < m {
            Rational::one()
        } else {
            -Rational::one()
        }
    });
    let triple = Sl2Triple {
        x: x.clone(),
        m,
        n,
        nplus: LieElement::new(np)?,
        nminus: LieElement::new(nm)?,
        a: LieElement::new(a)?,
    };
    if !triple.relations_hold() {
        return Err(RepError::ShapeMismatch("bracket relations failed".into()));
    }
    Ok(triple)
}

impl Sl2Triple {
    /// `[a, n+] = 2 n+`, `[a, n-] = -2 n-`, `[n+, n-] = a`.
    pub fn relations_hold(&self) -> bool {
        let two = Rational::from_integer(2.into());
        self.a.bracket(&self.nplus) == self.nplus.scale(&two)
            && self.a.bracket(&self.nminus) == self.nminus.scale(&-two)
            && self.nplus.bracket(&self.nminus) == self.a
    }

    pub fn sigma(&self) -> GroupElement {
        GroupElement::sigma(&self.x, self.n).expect("X is invertible")
    }

    /// Image of `[[a, b], [c, d]]` in `SL(m+n)`.
    pub fn embed(&self, abcd: [&Rational; 4]) -> Result<GroupElement, RepError> {
        GroupElement::embedded_sl2(&self.x, self.n, abcd).map_err(|e| RepError::ShapeMismatch(e.to_string()))
    }

    pub fn torus(&self) -> Torus {
        Torus::sl2(self.m, self.m + self.n)
    }
}
