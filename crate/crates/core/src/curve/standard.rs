//! Derivative normalizer and the standard-form reduction for `n = k m`.

use num_traits::{One, Zero};

use super::generic::{difference_at, is_generic_at, psi_reduce};
use super::{CurveError, MatrixCurve};
use crate::exactalg::rational::exact_root;
use crate::exactalg::{format_rational, Matrix, Rational};
use crate::group::{e_b, GroupElement};

/// `z = (B, C)` with `det B det C = 1` and `B phi'(s) C^-1 = [E_b(m); 0]`.
pub fn derivative_normalizer(curve: &MatrixCurve, s: &Rational) -> Result<GroupElement, CurveError> {
    let (m, n) = (curve.m(), curve.n());
    let d = curve
        .derivative()
        .eval(s)
        .ok_or_else(|| CurveError::OutOfInterval(format_rational(s)))?;
    let echelon = d.hstack(&Matrix::identity(m))?.rref();
    let b_rank = echelon.pivots.iter().filter(|&&p| p < n).count();
    if b_rank == 0 {
        return Err(CurveError::ZeroDerivative(format_rational(s)));
    }
    // P d = R with R in reduced row echelon form
    let mut big_b = echelon.reduced.block(0, m, n, n + m);
    let r = echelon.reduced.block(0, m, 0, n);
    let pivots: Vec<usize> = echelon.pivots.iter().copied().filter(|&p| p < n).collect();
    // C: the nonzero rows of R, completed by unit rows at the free columns
    let mut c = Matrix::<Rational>::zeros(n, n);
    for (i, _) in pivots.iter().enumerate() {
        for j in 0..n {
            c.set(i, j, r.get(i, j).clone());
        }
    }
    let free: Vec<usize> = (0..n).filter(|j| !pivots.contains(j)).collect();
    for (off, &j) in free.iter().enumerate() {
        c.set(b_rank + off, j, Rational::one());
    }
    let det_prod = big_b.det()? * c.det()?;
    let fix = det_prod.recip();
    if b_rank < m {
        // the last row of B meets only zero rows of E
        for j in 0..m {
            let v = big_b.get(m - 1, j) * &fix;
            big_b.set(m - 1, j, v);
        }
    } else if b_rank < n {
        // rows of C past b are invisible to E
        for j in 0..n {
            let v = c.get(n - 1, j) * &fix;
            c.set(n - 1, j, v);
        }
    } else {
        // m = n = b: B = C d^-1 forces det(C)^2 = det(d)
        let det_d = d.det()?;
        let root = exact_root(&det_d, 2).ok_or_else(|| {
            CurveError::NoRationalNormalizer(format!(
                "det phi'(s) = {} is not the square of a rational",
                format_rational(&det_d)
            ))
        })?;
        c = Matrix::identity(n);
        c.set(0, 0, root);
        big_b = c.try_mul(&d.inverse()?)?;
    }
    let z = GroupElement::centralizer(&big_b, &c)?;
    let target = {
        let mut t = Matrix::<Rational>::zeros(m, n);
        t.set_block(0, 0, &e_b(b_rank, m));
        t
    };
    debug_assert_eq!(z.act_on_rational(&d)?, target);
    Ok(z)
}

#[derive(Clone, Debug, PartialEq)]
pub struct StandardFormResult {
    pub zprime: GroupElement,
    pub base_point: Rational,
    pub witnesses: Vec<Rational>,
    pub conjugated_curve: MatrixCurve,
}

impl StandardFormResult {
    /// Checks by substitution that each `(z' phi)(s_i) - (z' phi)(s_0)` has
    /// exactly one nonzero `m x m` block, the `i`-th, and that it is invertible.
    pub fn verify(&self) -> bool {
        let curve = &self.conjugated_curve;
        let m = curve.m();
        if curve.n() != m * self.witnesses.len() {
            return false;
        }
        self.witnesses.iter().enumerate().all(|(i, s)| {
            let Some(diff) = difference_at(curve, s, &self.base_point) else {
                return false;
            };
            (0..self.witnesses.len()).all(|j| {
                let blk = diff.block(0, m, j * m, (j + 1) * m);
                if i == j {
                    blk.det().is_ok_and(|d| !d.is_zero())
                } else {
                    blk.is_zero()
                }
            })
        })
    }

    /// The conjugated curve recomputed from `z'` agrees with the stored one.
    pub fn verify_against(&self, original: &MatrixCurve) -> bool {
        self.zprime
            .act_on_curve(original.entries())
            .is_ok_and(|e| &e == self.conjugated_curve.entries())
            && self.verify()
    }
}

/// Finds `z' = (I_m, C)` in the centralizer and `s_1, ..., s_k` making `z' phi` standard at `s0`.
pub fn standard_form(curve: &MatrixCurve, s0: &Rational) -> Result<StandardFormResult, CurveError> {
    let (m, n) = (curve.m(), curve.n());
    if n % m != 0 {
        return Err(CurveError::ShapeMismatch(format!("n = {n} is not a multiple of m = {m}")));
    }
    if !is_generic_at(curve, s0) {
        return Err(CurveError::NotGenericAtPoint(format!(
            "curve {} is not generic at s0 = {}",
            curve.describe(),
            format_rational(s0)
        )));
    }
    let translated = curve.translate(s0)?;
    let accept = |_: &Rational| true;
    let (c, witnesses) = reduce(&translated, s0, &accept).ok_or_else(|| {
        CurveError::NotGenericAtPoint(format!(
            "no admissible witness points found for {} at s0 = {}",
            curve.describe(),
            format_rational(s0)
        ))
    })?;
    let zprime = GroupElement::centralizer(&Matrix::identity(m), &c)?;
    let conjugated = curve.with_entries(zprime.act_on_curve(curve.entries())?)?;
    let result = StandardFormResult {
        zprime,
        base_point: s0.clone(),
        witnesses,
        conjugated_curve: conjugated,
    };
    if !result.verify() {
        return Err(CurveError::NotGenericAtPoint(
            "standard-form invariant failed on re-verification".into(),
        ));
    }
    Ok(result)
}

/// Induction on `k`. `curve` vanishes at `s0`; returns `C` (so `z' = (I, C)`) and the witnesses.
fn reduce(
    curve: &MatrixCurve,
    s0: &Rational,
    accept: &dyn Fn(&Rational) -> bool,
) -> Option<(Matrix<Rational>, Vec<Rational>)> {
    let (m, n) = (curve.m(), curve.n());
    let k = n / m;
    let usable = |s: &Rational| *s != *s0 && accept(s);
    if k == 1 {
        let s1 = curve
            .sample_points()
            .take(64)
            .filter(|s| usable(s))
            .find(|s| curve.eval(s).and_then(|x| x.det().ok()).is_some_and(|d| !d.is_zero()))?;
        return Some((Matrix::identity(n), vec![s1]));
    }
    let psi = psi_reduce(curve, s0).ok()?;
    let first = curve.column_block(0, m);
    let first_ok = |s: &Rational| first.eval(s).and_then(|x| x.det().ok()).is_some_and(|d| !d.is_zero());
    for s1 in curve.sample_points().take(64) {
        if !usable(&s1) || !first_ok(&s1) {
            continue;
        }
        let Some(psi_s1) = psi.eval(&s1) else { continue };
        let Ok(psi_shifted) = psi.translate(&s1) else { continue };
        let inner_accept = |s: &Rational| usable(s) && first_ok(s) && psi.eval(s).is_some();
        let Some((c_inner, rest)) = reduce(&psi_shifted, &s1, &inner_accept) else { continue };

        // u'(psi(s1)) clears psi at s1
        let mut c_u = Matrix::<Rational>::identity(n);
        c_u.set_block(0, m, &psi_s1);
        // z'' acts on the trailing n - m columns
        let c_mid = Matrix::block_diag(&Matrix::identity(m), &c_inner);
        let c_partial = &c_mid * &c_u;

        // after z'' u', block i of phi(s_i) is phi_1(s_i) psi_{i-1}(s_i)
        let partial = GroupElement::centralizer(&Matrix::identity(m), &c_partial).ok()?;
        let moved = curve.with_entries(partial.act_on_curve(curve.entries()).ok()?).ok()?;
        let mut c1 = Matrix::<Rational>::identity(n);
        for (idx, s_i) in rest.iter().enumerate() {
            let at = moved.eval(s_i)?;
            let phi1 = at.block(0, m, 0, m);
            let blk = at.block(0, m, (idx + 1) * m, (idx + 2) * m);
            // psi_{i-1}(s_i) = phi_1(s_i)^-1 * block
            let psi_i = phi1.inverse().ok()?.try_mul(&blk).ok()?;
            c1.set_block((idx + 1) * m, 0, &psi_i.inverse().ok()?);
        }
        let c_total = &c1 * &c_partial;
        let mut witnesses = vec![s1];
        witnesses.extend(rest);
        return Some((c_total, witnesses));
    }
    None
}

/// Checks `u(phi(s)) = u'(-psi(s)) u([phi_1(s); 0]) u'(psi(s))` at `s` for a
/// curve with `phi(s0) = 0` and `m < n`.
pub fn factorization_identity_holds(curve: &MatrixCurve, s0: &Rational, s: &Rational) -> Result<bool, CurveError> {
    let (m, n) = (curve.m(), curve.n());
    let translated = curve.translate(s0)?;
    let psi = psi_reduce(&translated, s0)?;
    let phi = translated.eval(s).ok_or_else(|| CurveError::OutOfInterval(format_rational(s)))?;
    let psi_s = psi.eval(s).ok_or_else(|| CurveError::OutOfInterval(format_rational(s)))?;
    let mut head = Matrix::<Rational>::zeros(m, n);
    head.set_block(0, 0, &phi.block(0, m, 0, m));
    let lhs = GroupElement::u(&phi);
    let rhs = GroupElement::u_prime(&psi_s.neg())
        .compose(&GroupElement::u(&head))
        .compose(&GroupElement::u_prime(&psi_s));
    Ok(lhs.matrix() == rhs.matrix())
}
