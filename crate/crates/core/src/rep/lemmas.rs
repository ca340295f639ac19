//! Curve-level checks in `V`: witnesses against `V^-(A)`, admissible weights
//! and the `E_i` chain of the block grading, and invariance of the zero-weight part.

use serde::Serialize;

use super::sl2::{IdentityCheck, LemmaVerdict};
use super::wedge::{GradedModule, RepVector, WeightGradedRep};
use super::RepError;
use crate::curve::MatrixCurve;
use crate::exactalg::{format_rational, Matrix, Rational};
use crate::group::GroupElement;

/// Index of the flow torus `A` in every `WeightGradedRep`.
pub const FLOW_TORUS: usize = 0;

/// First `s` in `grid` with `u(phi(s)) v` outside `V^-(A)`.
pub fn find_witness(
    curve: &MatrixCurve,
    rep: &WeightGradedRep,
    v: &RepVector,
    grid: &[Rational],
) -> Result<Option<Rational>, RepError> {
    if v.is_zero() {
        return Err(RepError::ZeroVector);
    }
    check_shape(curve, rep)?;
    for s in grid {
        let Some(phi) = curve.eval(s) else { continue };
        let moved = rep.act(&GroupElement::u(&phi), v)?;
        if rep.lambda_max(&moved, FLOW_TORUS)? >= 0 {
            return Ok(Some(s.clone()));
        }
    }
    Ok(None)
}

fn check_shape(curve: &MatrixCurve, rep: &WeightGradedRep) -> Result<(), RepError> {
    if (curve.m(), curve.n()) != (rep.m(), rep.n()) {
        return Err(RepError::ShapeMismatch(format!(
            "curve is {}x{} but the representation is for ({}, {})",
            curve.m(),
            curve.n(),
            rep.m(),
            rep.n()
        )));
    }
    Ok(())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AdmissibleQuery {
    pub k: usize,
    pub delta: Vec<i64>,
}

/// `e_i = (-1, ..., -2, ..., -1)` with `-2` in slot `i`.
pub fn e_vector(k: usize, i: usize) -> Vec<i64> {
    (0..k).map(|j| if j == i { -2 } else { -1 }).collect()
}

/// The unique `c` with `delta = sum c_j e_j`, if it is a nonnegative integer vector.
pub fn admissible(q: &AdmissibleQuery) -> Option<Vec<i64>> {
    if q.delta.len() != q.k || q.k == 0 {
        return None;
    }
    let sigma: i64 = q.delta.iter().sum();
    let k1 = q.k as i64 + 1;
    if sigma % k1 != 0 {
        return None;
    }
    let c: Vec<i64> = q.delta.iter().map(|d| -d + sigma / k1).collect();
    c.iter().all(|&x| x >= 0).then_some(c)
}

/// `[v_0, ..., v_k]` with `v_i` the sum of the components of `v` at weights in
/// `E_i = {c_1 e_1 + ... + c_i e_i : c >= 0}`.
pub fn project_chain(v: &RepVector, rep: &WeightGradedRep) -> Result<Vec<RepVector>, RepError> {
    let k = rep.block_count().ok_or(RepError::GradingMissing)?;
    let mut chain = vec![RepVector::zero(); k + 1];
    for (key, c) in v.terms() {
        let delta = rep.block_weights(*key)?;
        let Some(coeffs) = admissible(&AdmissibleQuery { k, delta }) else { continue };
        // smallest i with delta in E_i
        let first = coeffs.iter().rposition(|&x| x != 0).map_or(0, |p| p + 1);
        for slot in chain.iter_mut().skip(first) {
            slot.add_term(*key, c.clone());
        }
    }
    Ok(chain)
}

/// Checks that `u(h phi'(s))` fixes `(u(phi(s)) v)^0(A)` for `h` in `{1, -1, 2, -2}`,
/// after confirming `u(phi(t)) v` lies in `V^{-0}(A)` at `s` and every grid point.
pub fn check_zero_weight_invariance(
    curve: &MatrixCurve,
    rep: &WeightGradedRep,
    v: &RepVector,
    s: &Rational,
    grid: &[Rational],
) -> Result<LemmaVerdict, RepError> {
    check_shape(curve, rep)?;
    let verdict = |checks: Vec<IdentityCheck>| LemmaVerdict {
        lemma: "zero-weight invariance".into(),
        lhs: format_rational(s),
        rhs: String::new(),
        holds: true,
        equality: false,
        identity_checks: checks,
    };
    if v.is_zero() {
        return Ok(verdict(Vec::new()));
    }
    let at_s = curve.eval(s).ok_or_else(|| RepError::PreconditionViolated(format!("s = {} is not on the curve", format_rational(s))))?;
    for t in grid.iter().chain(std::iter::once(s)) {
        let Some(phi) = curve.eval(t) else { continue };
        let moved = rep.act(&GroupElement::u(&phi), v)?;
        let top = rep.lambda_max(&moved, FLOW_TORUS)?;
        if top > 0 {
            return Err(RepError::PreconditionViolated(format!(
                "u(phi({})) v has a component of weight {top} > 0",
                format_rational(t)
            )));
        }
    }
    let moved = rep.act(&GroupElement::u(&at_s), v)?;
    let w0 = rep.weight_component(&moved, FLOW_TORUS, 0);
    let deriv = curve
        .derivative()
        .eval(s)
        .ok_or_else(|| RepError::PreconditionViolated("derivative undefined at s".into()))?;
    let checks = [1i64, -1, 2, -2]
        .into_iter()
        .map(|h| {
            let g = GroupElement::u(&scale(&deriv, h));
            let fixed = rep.act(&g, &w0).map(|x| x == w0).unwrap_or(false);
            IdentityCheck { name: format!("u({h} phi'(s)) fixes the zero-weight part"), holds: fixed }
        })
        .collect();
    Ok(verdict(checks))
}

fn scale(m: &Matrix<Rational>, h: i64) -> Matrix<Rational> {
    m.scale(&Rational::from_integer(h.into()))
}
