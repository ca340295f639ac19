//! Lattices `a(log N) u(Phi) Z^{m+n}` along expanding curves, the `K_mu`
//! test, Dirichlet solvers and the scans built from them.

mod diophantine;
mod scan;

pub use diophantine::{cgood_alpha_estimate, sample_function, vwa_scan, CGoodEstimate, VwaHit, DEFAULT_EPSILONS};
pub use scan::{
    dirichlet_scan, escape_diagnostic, least_squares_slope, siegel_average, siegel_count, EscapeReport, HitSummary,
    ScanResult, SiegelEstimate, SiegelSpec, TrajectoryRecord,
};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::curve::{CurveError, MatrixCurve};
use crate::exactalg::rational::{abs, floor_int, round_half_up, serde_str};
use crate::exactalg::{format_rational, AlgError, IntegerLatticeBasis, Matrix, Rational, ShortestVector, SvpStats};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FlowError {
    #[error("flow: N must be a positive rational (and at least 1 for Dirichlet queries), got {0}")]
    InvalidN(String),
    #[error("flow: mu must satisfy {0}")]
    InvalidMu(String),
    #[error("flow: point {0} lies outside the interval or on a pole")]
    OutOfInterval(String),
    #[error("flow: empty grid: {0}")]
    EmptyGrid(String),
    #[error("flow: annulus needs 0 < R1 < R2, got [{0}, {1}]")]
    InvalidAnnulus(String, String),
    #[error("flow: sampled function vanishes identically")]
    ConstantZeroFunction,
    #[error("flow: invalid grid: {0}")]
    InvalidGrid(String),
    #[error(transparent)]
    Alg(#[from] AlgError),
    #[error(transparent)]
    Curve(#[from] CurveError),
}

/// A point `a(log N) u(Phi) Z^{m+n}` of the trajectory.
#[derive(Clone, Debug, PartialEq)]
pub struct FlowPoint {
    pub s: Option<Rational>,
    pub big_n: Rational,
    pub phi: Matrix<Rational>,
    pub basis: IntegerLatticeBasis,
}

impl FlowPoint {
    pub fn m(&self) -> usize {
        self.phi.rows()
    }

    pub fn n(&self) -> usize {
        self.phi.cols()
    }
}

fn pow_i(x: &Rational, e: i64) -> Rational {
    if e >= 0 {
        num_traits::pow(x.clone(), e as usize)
    } else {
        num_traits::pow(x.recip(), (-e) as usize)
    }
}

/// Basis `diag(N^n I_m, N^-m I_n) [[I_m, Phi], [0, I_n]]` (basis vectors are columns).
pub fn lattice_for_matrix(phi: &Matrix<Rational>, big_n: &Rational) -> Result<FlowPoint, FlowError> {
    if !big_n.is_positive() {
        return Err(FlowError::InvalidN(format_rational(big_n)));
    }
    let (m, n) = (phi.rows(), phi.cols());
    let top = pow_i(big_n, n as i64);
    let bottom = pow_i(big_n, -(m as i64));
    let d = m + n;
    let g = Matrix::from_fn(d, d, |i, j| match (i < m, j < m) {
        (true, true) if i == j => top.clone(),
        (true, false) => &top * phi.get(i, j - m),
        (false, false) if i == j => bottom.clone(),
        _ => Rational::zero(),
    });
    Ok(FlowPoint { s: None, big_n: big_n.clone(), phi: phi.clone(), basis: IntegerLatticeBasis::from_rational_matrix(&g)? })
}

pub fn lattice_at(curve: &MatrixCurve, s: &Rational, big_n: &Rational) -> Result<FlowPoint, FlowError> {
    let phi = curve.eval(s).ok_or_else(|| FlowError::OutOfInterval(format_rational(s)))?;
    let mut point = lattice_for_matrix(&phi, big_n)?;
    point.s = Some(s.clone());
    Ok(point)
}

fn check_mu_open(mu: &Rational) -> Result<(), FlowError> {
    if !mu.is_positive() || *mu >= Rational::one() {
        return Err(FlowError::InvalidMu(format!("0 < mu < 1, got {}", format_rational(mu))));
    }
    Ok(())
}

/// `Lambda` is in `K_mu` when the closed sup-norm ball of radius `mu` meets it only in 0,
/// that is when its shortest vector is strictly longer than `mu`.
pub fn in_k_mu(point: &FlowPoint, mu: &Rational) -> Result<(bool, Rational), FlowError> {
    check_mu_open(mu)?;
    let svp = point.basis.shortest_vector_sup()?;
    Ok((svp.norm > *mu, svp.norm))
}

/// `p != 0`, `q` with `|p| <= mu N^m` and `|Phi p - q| <= mu N^-n` (sup norms).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DirichletSolution {
    #[serde(serialize_with = "crate::exactalg::rational::serde_int_vec::serialize")]
    pub p: Vec<BigInt>,
    #[serde(serialize_with = "crate::exactalg::rational::serde_int_vec::serialize")]
    pub q: Vec<BigInt>,
    #[serde(with = "serde_str")]
    pub residual: Rational,
}

impl DirichletSolution {
    /// Checks both inequalities directly.
    pub fn satisfies(&self, phi: &Matrix<Rational>, big_n: &Rational, mu: &Rational) -> bool {
        let (m, n) = (phi.rows(), phi.cols());
        if self.p.iter().all(Zero::is_zero) {
            return false;
        }
        let p_norm = self.p.iter().map(|x| x.abs()).max().unwrap_or_default();
        let (residual, _) = residual_of(phi, &self.p, Some(&self.q));
        Rational::from_integer(p_norm) <= mu * pow_i(big_n, m as i64)
            && residual <= mu * pow_i(big_n, -(n as i64))
            && residual == self.residual
    }

    /// Sup norm of the lattice vector `a(log N) u(Phi) (-q, p)`.
    pub fn lattice_norm(&self, big_n: &Rational, m: usize, n: usize) -> Rational {
        let p_norm = Rational::from_integer(self.p.iter().map(|x| x.abs()).max().unwrap_or_default());
        let top = &self.residual * pow_i(big_n, n as i64);
        let bottom = p_norm * pow_i(big_n, -(m as i64));
        top.max(bottom)
    }
}

/// `|Phi p - q|_inf`, with `q` the rounding of `Phi p` when not given.
fn residual_of(phi: &Matrix<Rational>, p: &[BigInt], q: Option<&[BigInt]>) -> (Rational, Vec<BigInt>) {
    let pr: Vec<Rational> = p.iter().map(|x| Rational::from_integer(x.clone())).collect();
    let phi_p = phi.mul_vec(&pr).expect("p has n entries");
    let q: Vec<BigInt> = match q {
        Some(q) => q.to_vec(),
        None => phi_p.iter().map(round_half_up).collect(),
    };
    let residual = phi_p
        .iter()
        .zip(&q)
        .map(|(a, b)| abs(&(a - Rational::from_integer(b.clone()))))
        .max()
        .unwrap_or_else(Rational::zero);
    (residual, q)
}

/// Box enumeration is used when it has at most this many candidates.
pub const BOX_LIMIT: u64 = 100_000;

/// Which search a Dirichlet query used.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum SearchPath {
    Box,
    ShortestVector,
}

/// Solves the Dirichlet system at level `mu`; `None` certifies there is no solution.
pub fn dirichlet_check(
    phi: &Matrix<Rational>,
    big_n: &Rational,
    mu: &Rational,
) -> Result<Option<DirichletSolution>, FlowError> {
    let path = dirichlet_path(phi, big_n, mu)?;
    dirichlet_check_via(phi, big_n, mu, path)
}

fn validate_dirichlet(big_n: &Rational, mu: &Rational) -> Result<(), FlowError> {
    if !mu.is_positive() || *mu > Rational::one() {
        return Err(FlowError::InvalidMu(format!("0 < mu <= 1, got {}", format_rational(mu))));
    }
    if *big_n < Rational::one() {
        return Err(FlowError::InvalidN(format_rational(big_n)));
    }
    Ok(())
}

/// Box enumeration when `(2 floor(mu N^m) + 1)^n <= BOX_LIMIT`, else shortest vector.
pub fn dirichlet_path(phi: &Matrix<Rational>, big_n: &Rational, mu: &Rational) -> Result<SearchPath, FlowError> {
    validate_dirichlet(big_n, mu)?;
    let bound = floor_int(&(mu * pow_i(big_n, phi.rows() as i64)));
    let side = BigInt::from(2) * bound + 1;
    let count = num_traits::pow(side, phi.cols());
    Ok(if count <= BigInt::from(BOX_LIMIT) { SearchPath::Box } else { SearchPath::ShortestVector })
}

pub fn dirichlet_check_via(
    phi: &Matrix<Rational>,
    big_n: &Rational,
    mu: &Rational,
    path: SearchPath,
) -> Result<Option<DirichletSolution>, FlowError> {
    validate_dirichlet(big_n, mu)?;
    match path {
        SearchPath::Box => Ok(dirichlet_box(phi, big_n, mu)),
        SearchPath::ShortestVector => {
            let point = lattice_for_matrix(phi, big_n)?;
            let svp = point.basis.shortest_vector_sup()?;
            if svp.norm > *mu {
                return Ok(None);
            }
            match solution_from_vector(phi, &svp) {
                Some(sol) => Ok(Some(sol)),
                // only possible when N = 1: fall back to the (tiny) box
                None => Ok(dirichlet_box(phi, big_n, mu)),
            }
        }
    }
}

/// `(p, q)` from coefficients `(-q, p)`, with the first nonzero entry of `p` positive.
pub(crate) fn solution_from_vector(phi: &Matrix<Rational>, v: &ShortestVector) -> Option<DirichletSolution> {
    let m = phi.rows();
    let mut p: Vec<BigInt> = v.coefficients[m..].to_vec();
    let mut q: Vec<BigInt> = v.coefficients[..m].iter().map(|x| -x).collect();
    let lead = p.iter().find(|x| !x.is_zero())?;
    if lead.is_negative() {
        p.iter_mut().for_each(|x| *x = -&*x);
        q.iter_mut().for_each(|x| *x = -&*x);
    }
    let (residual, _) = residual_of(phi, &p, Some(&q));
    Some(DirichletSolution { p, q, residual })
}

/// Exhaustive search over `0 < |p| <= mu N^m`, keeping the solution with
/// the shortest lattice vector (ties broken by residual, `|p|_1`, then `p`).
fn dirichlet_box(phi: &Matrix<Rational>, big_n: &Rational, mu: &Rational) -> Option<DirichletSolution> {
    let (m, n) = (phi.rows(), phi.cols());
    let bound = floor_int(&(mu * pow_i(big_n, m as i64)));
    let limit = mu * pow_i(big_n, -(n as i64));
    let mut best: Option<(Rational, DirichletSolution)> = None;
    let mut p = vec![-bound.clone(); n];
    loop {
        if p.iter().any(|x| !x.is_zero()) && p.iter().find(|x| !x.is_zero()).is_some_and(|x| x.is_positive()) {
            let (residual, q) = residual_of(phi, &p, None);
            if residual <= limit {
                let sol = DirichletSolution { p: p.clone(), q, residual };
                let norm = sol.lattice_norm(big_n, m, n);
                let better = match &best {
                    None => true,
                    Some((bn, b)) => (&norm, &sol.residual, l1(&sol.p), &sol.p) < (bn, &b.residual, l1(&b.p), &b.p),
                };
                if better {
                    best = Some((norm, sol));
                }
            }
        }
        // odometer over the box
        let Some(i) = (0..n).rev().find(|&i| p[i] < bound) else { break };
        p[i] += 1;
        for x in p.iter_mut().skip(i + 1) {
            *x = -bound.clone();
        }
    }
    best.map(|(_, s)| s)
}

fn l1(p: &[BigInt]) -> BigInt {
    p.iter().map(|x| x.abs()).sum()
}

/// Shortest vector via the double-precision path with exact recheck near `threshold`.
pub fn svp_fast(point: &FlowPoint, threshold: &Rational, stats: &SvpStats) -> Result<ShortestVector, FlowError> {
    Ok(point.basis.shortest_vector_sup_fast(threshold, stats)?)
}

/// `base^j` for `j` in `lo..=hi`.
pub fn power_grid(base: &Rational, lo: i64, hi: i64) -> Vec<Rational> {
    (lo..=hi).map(|j| pow_i(base, j)).collect()
}

/// `count` equally spaced rationals from `a` to `b` inclusive.
pub fn uniform_grid(a: &Rational, b: &Rational, count: usize) -> Vec<Rational> {
    match count {
        0 => Vec::new(),
        1 => vec![a.clone()],
        _ => (0..count)
            .map(|i| a + (b - a) * Rational::new(BigInt::from(i), BigInt::from(count - 1)))
            .collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::{int, rat};

    fn parabola() -> MatrixCurve {
        MatrixCurve::from_polys(&[&["s", "s^2"]], int(0), int(2)).unwrap()
    }

    #[test]
    fn lattice_examples() {
        let zero = Matrix::<Rational>::zeros(1, 2);
        let p = lattice_for_matrix(&zero, &int(1)).unwrap();
        assert_eq!(p.basis.to_matrix(), Matrix::identity(3));
        let p = lattice_at(&parabola(), &int(1), &int(2)).unwrap();
        let expected = Matrix::new(
            3,
            3,
            vec![int(4), int(4), int(4), int(0), rat(1, 2), int(0), int(0), int(0), rat(1, 2)],
        )
        .unwrap();
        assert_eq!(p.basis.to_matrix(), expected);
        assert_eq!(p.basis.det(), int(1));
        assert!(matches!(lattice_at(&parabola(), &int(1), &int(0)), Err(FlowError::InvalidN(_))));
    }

    #[test]
    fn k_mu_examples() {
        let zero = Matrix::<Rational>::zeros(1, 2);
        let p = lattice_for_matrix(&zero, &int(1)).unwrap();
        assert_eq!(in_k_mu(&p, &rat(1, 2)).unwrap(), (true, int(1)));
        let p = lattice_at(&parabola(), &int(1), &int(2)).unwrap();
        assert_eq!(in_k_mu(&p, &rat(2, 5)).unwrap(), (true, rat(1, 2)));
        assert!(!in_k_mu(&p, &rat(3, 5)).unwrap().0);
        assert!(matches!(in_k_mu(&p, &int(0)), Err(FlowError::InvalidMu(_))));
    }

    #[test]
    fn dirichlet_examples() {
        let zero = Matrix::<Rational>::zeros(1, 2);
        let sol = dirichlet_check(&zero, &int(4), &int(1)).unwrap().unwrap();
        assert!(sol.satisfies(&zero, &int(4), &int(1)));
        assert_eq!(sol.residual, int(0));
        let half = Matrix::new(1, 1, vec![rat(1, 2)]).unwrap();
        let sol = dirichlet_check(&half, &int(2), &int(1)).unwrap().unwrap();
        assert_eq!((sol.p.clone(), sol.q.clone()), (vec![BigInt::from(2)], vec![BigInt::from(1)]));
        assert_eq!(sol.residual, int(0));
        assert!(matches!(dirichlet_check(&half, &int(2), &int(0)), Err(FlowError::InvalidMu(_))));
    }

    #[test]
    fn both_search_paths_agree() {
        let phi = Matrix::new(1, 2, vec![rat(2, 7), rat(5, 11)]).unwrap();
        for j in 0..5 {
            let n = int(1 << j);
            for mu in [rat(1, 4), rat(1, 2), int(1)] {
                let a = dirichlet_check_via(&phi, &n, &mu, SearchPath::Box).unwrap();
                let b = dirichlet_check_via(&phi, &n, &mu, SearchPath::ShortestVector).unwrap();
                assert_eq!(a.is_some(), b.is_some());
                if let (Some(a), Some(b)) = (a, b) {
                    assert!(a.satisfies(&phi, &n, &mu) && b.satisfies(&phi, &n, &mu));
                    assert_eq!(a.lattice_norm(&n, 1, 2), b.lattice_norm(&n, 1, 2));
                }
            }
        }
    }
}
