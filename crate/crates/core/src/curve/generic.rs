//! The genericity recursion: square curves need `det(phi(s) - phi(s0))` not
//! identically zero, wide curves reduce through `psi`, tall curves transpose.

use num_traits::Zero;
use serde::Serialize;

use super::{CurveError, MatrixCurve};
use crate::exactalg::rational::serde_str_opt;
use crate::exactalg::{format_rational, AlgError, Matrix, RatFunc, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Verdict {
    Generic,
    NotGeneric,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum StageKind {
    /// Square curve: `phi(s) - phi(s0)` invertible for generic `s`.
    Invertible,
    /// Wide curve: first block nondegenerate at `s0`, recurse on `psi`.
    FirstBlock,
    /// Tall curve: recurse on the transpose.
    Transpose,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct WitnessStage {
    pub kind: StageKind,
    pub m: usize,
    pub n: usize,
    #[serde(with = "serde_str_opt")]
    pub s: Option<Rational>,
    /// The curve handed to the next stage.
    pub reduced: String,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GenericityReport {
    pub verdict: Verdict,
    pub witness_chain: Vec<WitnessStage>,
    pub failing_stage: Option<String>,
}

/// Upper limit on base points tried at one stage.
const MAX_CANDIDATES: usize = 64;

/// `psi(s) = (phi_1(s) - phi_1(s0))^-1 (phi_2(s) - phi_2(s0))`.
pub fn psi_reduce(curve: &MatrixCurve, s0: &Rational) -> Result<MatrixCurve, CurveError> {
    let (m, n) = (curve.m(), curve.n());
    if m >= n {
        return Err(CurveError::ShapeMismatch(format!(
            "psi reduction needs m < n, got {m}x{n}"
        )));
    }
    let at = curve
        .eval(s0)
        .ok_or_else(|| CurveError::OutOfInterval(format_rational(s0)))?
        .to_ratfunc();
    let diff = curve.entries().try_sub(&at)?;
    let first = diff.block(0, m, 0, m);
    let rest = diff.block(0, m, m, n);
    let inv = first.inverse().map_err(|e| match e {
        AlgError::Singular => CurveError::DegenerateFirstBlock,
        other => other.into(),
    })?;
    curve.with_entries(inv.try_mul(&rest)?)
}

fn difference_det(curve: &MatrixCurve, s0: &Rational) -> Option<RatFunc> {
    let at = curve.eval(s0)?.to_ratfunc();
    let diff = curve.entries().try_sub(&at).ok()?;
    diff.det().ok()
}

fn first_block_nondegenerate(curve: &MatrixCurve, s0: &Rational) -> bool {
    let m = curve.m();
    difference_det(&curve.column_block(0, m), s0).is_some_and(|d| !d.is_zero())
}

/// Base points worth trying: enough that an identically vanishing
/// determinant is certified by the degree bound.
fn candidates(curve: &MatrixCurve) -> Vec<Rational> {
    let count = (curve.degree_bound() + 2).min(MAX_CANDIDATES);
    curve.grid(count)
}

fn search(curve: &MatrixCurve) -> Result<Vec<WitnessStage>, String> {
    let (m, n) = (curve.m(), curve.n());
    if m > n {
        let t = curve.transpose();
        let mut chain = search(&t)?;
        chain.insert(
            0,
            WitnessStage { kind: StageKind::Transpose, m, n, s: None, reduced: t.describe() },
        );
        return Ok(chain);
    }
    if m == n {
        for s0 in candidates(curve) {
            if difference_det(curve, &s0).is_some_and(|d| !d.is_zero()) {
                return Ok(vec![WitnessStage {
                    kind: StageKind::Invertible,
                    m,
                    n,
                    s: Some(s0),
                    reduced: curve.describe(),
                }]);
            }
        }
        return Err(format!(
            "{m}x{n} stage: det(phi(s) - phi(s0)) vanishes identically for every base point (curve {})",
            curve.describe()
        ));
    }
    let mut first_block_ok = false;
    let mut last_err = String::new();
    for s0 in candidates(curve) {
        if !first_block_nondegenerate(curve, &s0) {
            continue;
        }
        first_block_ok = true;
        let psi = match psi_reduce(curve, &s0) {
            Ok(p) => p,
            Err(e) => {
                last_err = e.to_string();
                continue;
            }
        };
        match search(&psi) {
            Ok(mut chain) => {
                chain.insert(
                    0,
                    WitnessStage { kind: StageKind::FirstBlock, m, n, s: Some(s0), reduced: psi.describe() },
                );
                return Ok(chain);
            }
            Err(e) => last_err = e,
        }
    }
    if first_block_ok {
        Err(last_err)
    } else {
        Err(format!(
            "{m}x{n} stage: first {m}x{m} block difference is singular for every base point (curve {})",
            curve.describe()
        ))
    }
}

/// Decides genericity; the witness chain records every base point chosen.
pub fn is_generic(curve: &MatrixCurve) -> GenericityReport {
    match search(curve) {
        Ok(chain) => GenericityReport { verdict: Verdict::Generic, witness_chain: chain, failing_stage: None },
        Err(reason) => GenericityReport {
            verdict: Verdict::NotGeneric,
            witness_chain: Vec::new(),
            failing_stage: Some(reason),
        },
    }
}

/// Genericity at a prescribed base point.
pub fn is_generic_at(curve: &MatrixCurve, s0: &Rational) -> bool {
    let (m, n) = (curve.m(), curve.n());
    if curve.eval(s0).is_none() {
        return false;
    }
    if m > n {
        return is_generic_at(&curve.transpose(), s0);
    }
    if m == n {
        return difference_det(curve, s0).is_some_and(|d| !d.is_zero());
    }
    if !first_block_nondegenerate(curve, s0) {
        return false;
    }
    psi_reduce(curve, s0).is_ok_and(|psi| search(&psi).is_ok())
}

impl GenericityReport {
    pub fn is_generic(&self) -> bool {
        self.verdict == Verdict::Generic
    }

    /// Re-runs every stage of the witness chain on `curve`.
    pub fn replay(&self, curve: &MatrixCurve) -> bool {
        if !self.is_generic() || self.witness_chain.is_empty() {
            return false;
        }
        let mut current = curve.clone();
        for (idx, stage) in self.witness_chain.iter().enumerate() {
            if (current.m(), current.n()) != (stage.m, stage.n) {
                return false;
            }
            let last = idx + 1 == self.witness_chain.len();
            match (stage.kind, &stage.s) {
                (StageKind::Transpose, None) if current.m() > current.n() => {
                    current = current.transpose();
                }
                (StageKind::FirstBlock, Some(s)) if current.m() < current.n() => {
                    if !first_block_nondegenerate(&current, s) {
                        return false;
                    }
                    match psi_reduce(&current, s) {
                        Ok(psi) => current = psi,
                        Err(_) => return false,
                    }
                }
                (StageKind::Invertible, Some(s)) if current.m() == current.n() && last => {
                    return difference_det(&current, s).is_some_and(|d| !d.is_zero());
                }
                _ => return false,
            }
        }
        false
    }

    /// The square curve at the end of the chain and its base point.
    pub fn core(&self, curve: &MatrixCurve) -> Option<(MatrixCurve, Rational)> {
        let mut current = curve.clone();
        for stage in &self.witness_chain {
            match (stage.kind, &stage.s) {
                (StageKind::Transpose, _) => current = current.transpose(),
                (StageKind::FirstBlock, Some(s)) => current = psi_reduce(&current, s).ok()?,
                (StageKind::Invertible, Some(s)) => return Some((current, s.clone())),
                _ => return None,
            }
        }
        None
    }
}

/// `phi(s) - phi(s0)` evaluated exactly; helper for callers that verify by substitution.
pub(crate) fn difference_at(curve: &MatrixCurve, s: &Rational, s0: &Rational) -> Option<Matrix<Rational>> {
    let a = curve.eval(s)?;
    let b = curve.eval(s0)?;
    a.try_sub(&b).ok()
}
