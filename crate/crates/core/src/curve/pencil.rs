//! Pencils: subspaces `W` of `R^{m+n}` on which `M(s) = [I_m | phi(s)]` has
//! rank `r` below the balanced value `m dim W / (m + n)` for every `s`.

use std::collections::BTreeSet;

use num_traits::Zero;
use serde::Serialize;

use super::MatrixCurve;
use crate::exactalg::rational::serde_str_vec;
use crate::exactalg::{Matrix, RatFunc, Rational};

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PencilCandidate {
    /// Basis of `W`, one vector of length `m + n` each.
    pub w_basis: Vec<RationalVector>,
    pub r: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct RationalVector(#[serde(with = "serde_str_vec")] pub Vec<Rational>);

impl PencilCandidate {
    pub fn new(w_basis: Vec<Vec<Rational>>) -> Self {
        PencilCandidate { w_basis: w_basis.into_iter().map(RationalVector).collect(), r: 0 }
    }

    pub fn dim(&self) -> usize {
        self.w_basis.len()
    }

    /// Basis vectors as the columns of a `(m+n) x dim W` matrix.
    fn basis_matrix(&self, size: usize) -> Option<Matrix<Rational>> {
        if self.w_basis.is_empty() || self.w_basis.iter().any(|v| v.0.len() != size) {
            return None;
        }
        Matrix::from_fn(size, self.w_basis.len(), |i, j| self.w_basis[j].0[i].clone()).into()
    }
}

fn m_of_s(curve: &MatrixCurve) -> Matrix<RatFunc> {
    let m = curve.m();
    Matrix::<RatFunc>::identity(m).hstack(curve.entries()).expect("same row count")
}

/// `Some(r)` when `rank M(s) W = r` generically and `0 < r < m dim W / (m + n)`.
pub fn pencil_membership(curve: &MatrixCurve, w: &PencilCandidate) -> Option<usize> {
    let (m, n) = (curve.m(), curve.n());
    let basis = w.basis_matrix(m + n)?;
    if basis.rank() != w.dim() {
        return None;
    }
    let product = m_of_s(curve).try_mul(&basis.to_ratfunc()).ok()?;
    let r = product.rank();
    (r > 0 && r * (m + n) < m * w.dim()).then_some(r)
}

/// Searches kernels of `M(s_i)`, their sums and intersections, and coordinate
/// subspaces for a pencil of dimension at most `max_dim`. A returned candidate
/// has passed `pencil_membership`; `None` proves nothing.
pub fn pencil_search(curve: &MatrixCurve, max_dim: usize) -> Option<PencilCandidate> {
    let (m, n) = (curve.m(), curve.n());
    let size = m + n;
    let max_dim = max_dim.min(size);
    let mut pool: Vec<Matrix<Rational>> = Vec::new();

    let mm = m_of_s(curve);
    let kernels: Vec<Matrix<Rational>> = curve
        .grid(6)
        .iter()
        .filter_map(|s| mm.eval(s))
        .filter_map(|x| columns(x.cols(), &x.kernel()))
        .collect();
    for (i, a) in kernels.iter().enumerate() {
        pool.push(a.clone());
        for b in &kernels[i + 1..] {
            if let Ok(sum) = a.hstack(b) {
                pool.push(sum);
            }
            if let Some(meet) = intersect(a, b) {
                pool.push(meet);
            }
        }
    }
    for d in 1..=max_dim {
        for subset in combinations(size, d) {
            pool.push(Matrix::from_fn(size, d, |i, j| {
                if subset[j] == i {
                    Rational::from_integer(1.into())
                } else {
                    Rational::zero()
                }
            }));
        }
    }

    let mut seen = BTreeSet::new();
    let mut candidates: Vec<(usize, PencilCandidate)> = Vec::new();
    for span in pool {
        let Some(basis) = canonical_basis(&span) else { continue };
        if basis.is_empty() || basis.len() > max_dim || !seen.insert(basis.clone()) {
            continue;
        }
        candidates.push((basis.len(), PencilCandidate::new(basis)));
    }
    candidates.sort_by_key(|(d, _)| *d);
    candidates.into_iter().find_map(|(_, mut cand)| {
        let r = pencil_membership(curve, &cand)?;
        cand.r = r;
        Some(cand)
    })
}

/// Nonzero rows of the RREF of the transposed spanning set: a canonical basis.
fn canonical_basis(span: &Matrix<Rational>) -> Option<Vec<Vec<Rational>>> {
    if span.cols() == 0 {
        return None;
    }
    let e = span.transpose().rref();
    Some((0..e.pivots.len()).map(|i| e.reduced.row(i).to_vec()).collect())
}

/// Column span of `a` intersected with that of `b`, from the kernel of `[a | -b]`.
fn intersect(a: &Matrix<Rational>, b: &Matrix<Rational>) -> Option<Matrix<Rational>> {
    let joint = a.hstack(&b.neg()).ok()?;
    let k = columns(joint.cols(), &joint.kernel())?;
    let coeffs = k.block(0, a.cols(), 0, k.cols());
    Some(a * &coeffs)
}

/// Vectors of length `size` as matrix columns; `None` for an empty list.
fn columns(size: usize, vectors: &[Vec<Rational>]) -> Option<Matrix<Rational>> {
    if vectors.is_empty() {
        return None;
    }
    Some(Matrix::from_fn(size, vectors.len(), |i, j| vectors[j][i].clone()))
}

fn combinations(size: usize, d: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut idx: Vec<usize> = (0..d).collect();
    loop {
        out.push(idx.clone());
        let Some(pos) = (0..d).rev().find(|&i| idx[i] != i + size - d) else {
            return out;
        };
        idx[pos] += 1;
        for j in pos + 1..d {
            idx[j] = idx[j - 1] + 1;
        }
    }
}
