//! Very-well-approximable scans and the `(C, alpha)`-good exponent estimator.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use super::{residual_of, FlowError};
use crate::exactalg::rational::serde_str;
use crate::exactalg::{Matrix, Poly, Rational};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VwaHit {
    #[serde(serialize_with = "crate::exactalg::rational::serde_int_vec::serialize")]
    pub p: Vec<BigInt>,
    #[serde(serialize_with = "crate::exactalg::rational::serde_int_vec::serialize")]
    pub q: Vec<BigInt>,
    #[serde(with = "serde_str")]
    pub residual: Rational,
}

/// All `p` with `0 < |p| <= p_bound` such that `|Phi p - q| <= |p|^{-n/m - delta}`
/// for `q` the rounding of `Phi p`. With `n/m + delta = a/b` the test is
/// `residual^b |p|^a <= 1`, done exactly.
pub fn vwa_scan(phi: &Matrix<Rational>, delta: &Rational, p_bound: u64) -> Vec<VwaHit> {
    let (m, n) = (phi.rows(), phi.cols());
    let exponent = Rational::new(BigInt::from(n), BigInt::from(m)) + delta;
    let a = exponent.numer().clone();
    let b = exponent.denom().clone();
    let bound = p_bound as i64;
    let mut hits = Vec::new();
    let mut p = vec![-bound; n];
    if bound < 1 || n == 0 {
        return hits;
    }
    loop {
        if p.iter().any(|&x| x != 0) {
            let pb: Vec<BigInt> = p.iter().map(|&x| BigInt::from(x)).collect();
            let (residual, q) = residual_of(phi, &pb, None);
            let norm = pb.iter().map(|x| x.abs()).max().unwrap_or_default();
            if qualifies(&residual, &norm, &a, &b) {
                hits.push(VwaHit { p: pb, q, residual });
            }
        }
        let Some(i) = (0..n).rev().find(|&i| p[i] < bound) else { break };
        p[i] += 1;
        for x in p.iter_mut().skip(i + 1) {
            *x = -bound;
        }
    }
    hits
}

fn qualifies(residual: &Rational, norm: &BigInt, a: &BigInt, b: &BigInt) -> bool {
    if residual.is_zero() {
        return true;
    }
    let pow = |x: Rational, e: &BigInt| -> Rational {
        let e = e.to_biguint().expect("exponent is positive");
        num_traits::pow(x, usize::try_from(&e).expect("exponent fits in usize"))
    };
    if a.is_negative() {
        // exponent below zero: |p|^|a| residual^b <= 1 turns into residual^b <= |p|^|a|
        return pow(residual.clone(), b) <= pow(Rational::from_integer(norm.clone()), &-a);
    }
    pow(residual.clone(), b) * pow(Rational::from_integer(norm.clone()), a) <= Rational::one()
}

/// Relative thresholds `eps / sup|f|` used when none are given.
pub const DEFAULT_EPSILONS: [f64; 7] = [1e-4, 3e-4, 1e-3, 3e-3, 1e-2, 3e-2, 1e-1];

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CGoodEstimate {
    pub alpha: f64,
    pub c: f64,
    /// `(eps / sup|f|, sublevel fraction)` pairs that entered the fit.
    pub points: Vec<(f64, f64)>,
}

/// `|f|` on `count` equally spaced points of `[a, b]`, endpoints included.
pub fn sample_function(f: &Poly, a: &Rational, b: &Rational, count: usize) -> Vec<f64> {
    (0..count)
        .map(|i| {
            let t = Rational::new(BigInt::from(i), BigInt::from(count.max(2) - 1));
            crate::exactalg::rational::to_f64(&f.eval(&(a + (b - a) * t))).abs()
        })
        .collect()
}

/// Fits `|{|f| < eps}| / |J| ~ C (eps / sup|f|)^alpha` by least squares in log-log
/// coordinates. `epsilons` are relative to `sup|f|`.
pub fn cgood_alpha_estimate(samples: &[f64], epsilons: &[f64]) -> Result<CGoodEstimate, FlowError> {
    if samples.len() < 100 {
        return Err(FlowError::InvalidGrid(format!("need at least 100 samples, got {}", samples.len())));
    }
    let sup = samples.iter().fold(0.0f64, |acc, x| acc.max(x.abs()));
    if sup == 0.0 {
        return Err(FlowError::ConstantZeroFunction);
    }
    let total = samples.len() as f64;
    let points: Vec<(f64, f64)> = epsilons
        .iter()
        .filter(|e| **e > 0.0)
        .map(|&e| (e, samples.iter().filter(|x| x.abs() < e * sup).count() as f64 / total))
        .filter(|(_, frac)| *frac > 0.0)
        .collect();
    if points.len() < 2 {
        return Err(FlowError::InvalidGrid("fewer than two thresholds have a nonempty sublevel set".into()));
    }
    let xs: Vec<f64> = points.iter().map(|(e, _)| e.ln()).collect();
    let ys: Vec<f64> = points.iter().map(|(_, f)| f.ln()).collect();
    let alpha = super::least_squares_slope(&xs, &ys);
    let mx = xs.iter().sum::<f64>() / xs.len() as f64;
    let my = ys.iter().sum::<f64>() / ys.len() as f64;
    Ok(CGoodEstimate { alpha, c: (my - alpha * mx).exp(), points })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::{int, rat};

    fn one_by_one(x: Rational) -> Matrix<Rational> {
        Matrix::new(1, 1, vec![x]).unwrap()
    }

    #[test]
    fn vwa_examples() {
        let zero = Matrix::<Rational>::zeros(1, 2);
        assert_eq!(vwa_scan(&zero, &int(1), 2).len(), 24);
        let third = vwa_scan(&one_by_one(rat(1, 3)), &int(1), 100);
        let ps: Vec<i64> = third.iter().map(|h| i64::try_from(&h.p[0]).unwrap()).collect();
        // p = +-1 also qualifies: residual 1/3 <= 1
        let expected: Vec<i64> = (-100..=100).filter(|p| *p != 0 && (p % 3 == 0 || p.abs() == 1)).collect();
        assert_eq!(ps, expected);
        // odd p leave residual 1/2, which is within |p|^-2 only for |p| = 1
        let half = vwa_scan(&one_by_one(rat(1, 2)), &int(1), 10);
        let ps: Vec<i64> = half.iter().map(|h| i64::try_from(&h.p[0]).unwrap()).collect();
        let expected: Vec<i64> = (-10..=10).filter(|p| *p != 0 && (p % 2 == 0 || p.abs() == 1)).collect();
        assert_eq!(ps, expected);
    }

    #[test]
    fn cgood_examples() {
        let linear = sample_function(&Poly::s(), &int(0), &int(1), 10_000);
        let est = cgood_alpha_estimate(&linear, &DEFAULT_EPSILONS).unwrap();
        assert!((est.alpha - 1.0).abs() < 0.02, "{est:?}");
        let zero = vec![0.0; 200];
        assert_eq!(cgood_alpha_estimate(&zero, &DEFAULT_EPSILONS), Err(FlowError::ConstantZeroFunction));
        assert!(matches!(cgood_alpha_estimate(&linear[..50], &DEFAULT_EPSILONS), Err(FlowError::InvalidGrid(_))));
    }
}
