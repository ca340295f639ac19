//! Sound sufficient tests for supergenericity. A `Supergeneric` verdict is
//! only returned when one of them passes.

use num_integer::Integer;
use num_traits::{One, Zero};
use serde::Serialize;

use super::generic::{difference_at, is_generic};
use super::MatrixCurve;
use crate::exactalg::rational::serde_str_opt;
use crate::exactalg::{Matrix, Rational};

pub const DEFAULT_GRID: usize = 12;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum SupergenericStatus {
    Supergeneric,
    GenericUndetermined,
    NotGeneric,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum SupergenericMethod {
    CoprimeShortcut,
    LieClosure,
    AffineSpan,
}

#[derive(Clone, Debug, PartialEq, Serialize, Default)]
pub struct SupergenericEvidence {
    /// Size `k` of the square core curve the tests ran on.
    pub core_size: Option<usize>,
    #[serde(with = "serde_str_opt")]
    pub base_point: Option<Rational>,
    /// Number of sampled inverse differences `(phi(s) - phi(s0))^-1`.
    pub samples: usize,
    /// Dimension of the Lie algebra generated by the sampled `n^-` differences and `E`.
    pub lie_closure_dim: Option<usize>,
    /// `dim sl(2k) = 4k^2 - 1`.
    pub lie_target_dim: Option<usize>,
    /// Dimension of the affine span of the sampled inverses.
    pub affine_span_dim: Option<usize>,
    /// `k^2`.
    pub affine_target_dim: Option<usize>,
    pub derivative_invertible: Option<bool>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SupergenericityCertificate {
    pub status: SupergenericStatus,
    pub method: Option<SupergenericMethod>,
    pub evidence: SupergenericEvidence,
}

pub fn supergeneric_status(curve: &MatrixCurve) -> SupergenericityCertificate {
    supergeneric_status_with_grid(curve, DEFAULT_GRID)
}

pub fn supergeneric_status_with_grid(curve: &MatrixCurve, grid: usize) -> SupergenericityCertificate {
    let report = is_generic(curve);
    if !report.is_generic() {
        return SupergenericityCertificate {
            status: SupergenericStatus::NotGeneric,
            method: None,
            evidence: SupergenericEvidence::default(),
        };
    }
    if curve.m().gcd(&curve.n()) == 1 {
        return SupergenericityCertificate {
            status: SupergenericStatus::Supergeneric,
            method: Some(SupergenericMethod::CoprimeShortcut),
            evidence: SupergenericEvidence::default(),
        };
    }
    let Some((core, s0)) = report.core(curve) else {
        return undetermined(SupergenericEvidence::default());
    };
    let k = core.m();
    let mut evidence = SupergenericEvidence {
        core_size: Some(k),
        base_point: Some(s0.clone()),
        lie_target_dim: Some(4 * k * k - 1),
        affine_target_dim: Some(k * k),
        ..Default::default()
    };
    let inverses: Vec<Matrix<Rational>> = core
        .sample_points()
        .filter(|s| *s != s0)
        .filter_map(|s| difference_at(&core, &s, &s0)?.inverse().ok())
        .take(grid)
        .collect();
    evidence.samples = inverses.len();
    if inverses.len() < 2 {
        return undetermined(evidence);
    }
    let diffs: Vec<Matrix<Rational>> = inverses[1..].iter().map(|x| x - &inverses[0]).collect();

    let closure = lie_closure_dim(&diffs, k);
    evidence.lie_closure_dim = Some(closure);
    if closure == 4 * k * k - 1 {
        return SupergenericityCertificate {
            status: SupergenericStatus::Supergeneric,
            method: Some(SupergenericMethod::LieClosure),
            evidence,
        };
    }

    let span = span_dim(diffs.iter().map(|d| d.entries().to_vec()));
    evidence.affine_span_dim = Some(span);
    let deriv_ok = core
        .derivative()
        .eval(&s0)
        .and_then(|d| d.det().ok())
        .is_some_and(|d| !d.is_zero());
    evidence.derivative_invertible = Some(deriv_ok);
    if deriv_ok && span == k * k {
        return SupergenericityCertificate {
            status: SupergenericStatus::Supergeneric,
            method: Some(SupergenericMethod::AffineSpan),
            evidence,
        };
    }
    undetermined(evidence)
}

fn undetermined(evidence: SupergenericEvidence) -> SupergenericityCertificate {
    SupergenericityCertificate { status: SupergenericStatus::GenericUndetermined, method: None, evidence }
}

/// Rank of a set of vectors.
fn span_dim(vectors: impl Iterator<Item = Vec<Rational>>) -> usize {
    let rows: Vec<Vec<Rational>> = vectors.collect();
    if rows.is_empty() {
        return 0;
    }
    Matrix::from_rows(rows).map(|m| m.rank()).unwrap_or(0)
}

fn n_minus(x: &Matrix<Rational>, k: usize) -> Matrix<Rational> {
    let mut out = Matrix::zeros(2 * k, 2 * k);
    out.set_block(k, 0, x);
    out
}

fn bracket(a: &Matrix<Rational>, b: &Matrix<Rational>) -> Matrix<Rational> {
    &(a * b) - &(b * a)
}

/// Incrementally maintained row-reduced basis for membership tests.
struct SpanTracker {
    basis: Vec<(usize, Vec<Rational>)>,
}

impl SpanTracker {
    fn new() -> Self {
        SpanTracker { basis: Vec::new() }
    }

    /// Adds `v` if independent; returns whether it was added.
    fn insert(&mut self, mut v: Vec<Rational>) -> bool {
        for (pivot, b) in &self.basis {
            if !v[*pivot].is_zero() {
                let f = v[*pivot].clone();
                for (x, y) in v.iter_mut().zip(b) {
                    *x -= &f * y;
                }
            }
        }
        let Some(p) = v.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = v[p].recip();
        for x in v.iter_mut() {
            *x *= &inv;
        }
        for (_, b) in self.basis.iter_mut() {
            if !b[p].is_zero() {
                let f = b[p].clone();
                for (x, y) in b.iter_mut().zip(&v) {
                    *x -= &f * y;
                }
            }
        }
        self.basis.push((p, v));
        true
    }

    fn len(&self) -> usize {
        self.basis.len()
    }
}

/// Dimension of the Lie algebra generated by `n^-(d)` for the given `d` and `E = diag(I_k, -I_k)`.
pub(crate) fn lie_closure_dim(diffs: &[Matrix<Rational>], k: usize) -> usize {
    let e = Matrix::from_fn(2 * k, 2 * k, |i, j| {
        if i != j {
            Rational::zero()
        } else if i < k {
            Rational::one()
        } else {
            -Rational::one()
        }
    });
    let mut tracker = SpanTracker::new();
    let mut elems: Vec<Matrix<Rational>> = Vec::new();
    for g in std::iter::once(e).chain(diffs.iter().map(|d| n_minus(d, k))) {
        if tracker.insert(g.entries().to_vec()) {
            elems.push(g);
        }
    }
    let mut frontier = 0;
    while frontier < elems.len() {
        let end = elems.len();
        let mut fresh = Vec::new();
        for i in frontier..end {
            for j in 0..end {
                let c = bracket(&elems[i], &elems[j]);
                if tracker.insert(c.entries().to_vec()) {
                    fresh.push(c);
                }
            }
        }
        frontier = end;
        elems.extend(fresh);
    }
    tracker.len()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::int;

    #[test]
    fn coprime_shortcut() {
        let c = MatrixCurve::from_polys(&[&["s", "s^2"]], int(0), int(1)).unwrap();
        let cert = supergeneric_status(&c);
        assert_eq!(cert.status, SupergenericStatus::Supergeneric);
        assert_eq!(cert.method, Some(SupergenericMethod::CoprimeShortcut));
    }

    #[test]
    fn scalar_curve_is_undetermined() {
        let c = MatrixCurve::from_polys(&[&["s", "0"], &["0", "s"]], int(0), int(1)).unwrap();
        let cert = supergeneric_status(&c);
        assert_eq!(cert.status, SupergenericStatus::GenericUndetermined);
        // span{n^-(I), E}
        assert_eq!(cert.evidence.lie_closure_dim, Some(2));
        assert_eq!(cert.evidence.affine_span_dim, Some(1));
    }

    #[test]
    fn constant_curve_not_generic() {
        let c = MatrixCurve::from_polys(&[&["1", "2"], &["3", "4"]], int(0), int(1)).unwrap();
        assert_eq!(supergeneric_status(&c).status, SupergenericStatus::NotGeneric);
    }

    #[test]
    fn affine_span_certifies_a_rich_square_curve() {
        // adjugate entries and determinant are linearly independent polynomials
        let c = MatrixCurve::from_polys(&[&["s + s^3", "s^2"], &["s^4", "s"]], int(0), int(1)).unwrap();
        let cert = supergeneric_status(&c);
        assert_eq!(cert.status, SupergenericStatus::Supergeneric, "{cert:?}");
        assert_eq!(cert.method, Some(SupergenericMethod::AffineSpan));
    }

    #[test]
    fn lie_closure_of_full_generators() {
        // brackets of n^-(X) with n^+ style elements are absent, so the closure stays in
        // n^- + R E no matter how rich the samples are
        let diffs: Vec<Matrix<Rational>> = (0..4)
            .map(|t| Matrix::from_fn(2, 2, |i, j| int(((i * 2 + j) == t) as i64)))
            .collect();
        assert_eq!(lie_closure_dim(&diffs, 2), 5);
    }
}
