//! The maximal-weight inequality for `SL(2)`-modules, its equality case and the
//! corollary for vectors staying in `V^{0-}`.

use num_traits::{One, Zero};
use serde::Serialize;

use super::lie::{Sl2Triple, Torus};
use super::wedge::{GradedModule, RepVector, Sl2Irrep, WeightGradedRep};
use super::RepError;
use crate::exactalg::Rational;

/// A module for `SL(2)` with the weight grading of its diagonal torus.
pub trait Sl2Module {
    fn sl2_weight(&self, key: u64) -> i64;
    /// Action of `[[a, b], [c, d]]`.
    fn act_sl2(&self, abcd: [&Rational; 4], v: &RepVector) -> Result<RepVector, RepError>;

    fn u(&self, r: &Rational, v: &RepVector) -> Result<RepVector, RepError> {
        self.act_sl2([&Rational::one(), r, &Rational::zero(), &Rational::one()], v)
    }

    fn u_minus(&self, x: &Rational, v: &RepVector) -> Result<RepVector, RepError> {
        self.act_sl2([&Rational::one(), &Rational::zero(), x, &Rational::one()], v)
    }

    /// `sigma(r) = [[0, r], [-1/r, 0]]`.
    fn sigma(&self, r: &Rational, v: &RepVector) -> Result<RepVector, RepError> {
        self.act_sl2([&Rational::zero(), r, &-r.recip(), &Rational::zero()], v)
    }

    fn lambda_max(&self, v: &RepVector) -> Result<i64, RepError> {
        v.support().map(|k| self.sl2_weight(k)).max().ok_or(RepError::ZeroVector)
    }

    fn component(&self, v: &RepVector, lambda: i64) -> RepVector {
        v.filter(|k| self.sl2_weight(k) == lambda)
    }

    fn max_component(&self, v: &RepVector) -> Result<RepVector, RepError> {
        Ok(self.component(v, self.lambda_max(v)?))
    }
}

impl Sl2Module for Sl2Irrep {
    fn sl2_weight(&self, key: u64) -> i64 {
        self.weight(key, 0)
    }

    fn act_sl2(&self, abcd: [&Rational; 4], v: &RepVector) -> Result<RepVector, RepError> {
        if v.support().any(|k| k as usize > self.r) {
            return Err(RepError::ShapeMismatch(format!("basis index beyond dimension {}", self.dim())));
        }
        Ok(self.act(abcd, v))
    }
}

/// A wedge representation restricted to the embedded `SL(2, X)`.
pub struct Restricted<'a> {
    rep: &'a WeightGradedRep,
    triple: Sl2Triple,
    torus: Torus,
}

impl<'a> Restricted<'a> {
    pub fn new(rep: &'a WeightGradedRep, triple: Sl2Triple) -> Result<Self, RepError> {
        if (triple.m, triple.n) != (rep.m(), rep.n()) {
            return Err(RepError::ShapeMismatch("triple and representation disagree on (m, n)".into()));
        }
        let torus = triple.torus();
        Ok(Restricted { rep, triple, torus })
    }
}

impl Sl2Module for Restricted<'_> {
    fn sl2_weight(&self, key: u64) -> i64 {
        self.rep.weight_under(key, &self.torus)
    }

    fn act_sl2(&self, abcd: [&Rational; 4], v: &RepVector) -> Result<RepVector, RepError> {
        self.rep.act(&self.triple.embed(abcd)?, v)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IdentityCheck {
    pub name: String,
    pub holds: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LemmaVerdict {
    pub lemma: String,
    pub lhs: String,
    pub rhs: String,
    /// The asserted relation between `lhs` and `rhs`.
    pub holds: bool,
    pub equality: bool,
    pub identity_checks: Vec<IdentityCheck>,
}

impl LemmaVerdict {
    /// Relation holds and every identity check passed.
    pub fn passed(&self) -> bool {
        self.holds && self.identity_checks.iter().all(|c| c.holds)
    }
}

fn check(name: &str, holds: bool) -> IdentityCheck {
    IdentityCheck { name: name.into(), holds }
}

/// `lambda_max(u(r) v) >= -lambda_max(v)`; on equality also
/// `v = u^-(-1/r) v^max` and `(u(r) v)^max = sigma(r) v^max`.
pub fn verify_max_inequality<M: Sl2Module + ?Sized>(
    module: &M,
    v: &RepVector,
    r: &Rational,
) -> Result<LemmaVerdict, RepError> {
    if v.is_zero() {
        return Err(RepError::ZeroVector);
    }
    if r.is_zero() {
        return Err(RepError::ZeroR);
    }
    let moved = module.u(r, v)?;
    let lhs = module.lambda_max(&moved)?;
    let rhs = -module.lambda_max(v)?;
    let equality = lhs == rhs;
    let mut identity_checks = Vec::new();
    if equality {
        let vmax = module.max_component(v)?;
        let rebuilt = module.u_minus(&-r.recip(), &vmax)?;
        identity_checks.push(check("v = u^-(-1/r) v^max", rebuilt == *v));
        let top = module.max_component(&moved)?;
        identity_checks.push(check("(u(r) v)^max = sigma(r) v^max", top == module.sigma(r, &vmax)?));
    }
    Ok(LemmaVerdict {
        lemma: "max-weight inequality".into(),
        lhs: lhs.to_string(),
        rhs: rhs.to_string(),
        holds: lhs >= rhs,
        equality,
        identity_checks,
    })
}

/// For `v, u(r) v` in `V^{0-}`: `lambda_max(v) = 0`, `v^0 != 0` and `v = u^-(-1/r) v^0`.
pub fn check_corollary<M: Sl2Module + ?Sized>(
    module: &M,
    v: &RepVector,
    r: &Rational,
) -> Result<LemmaVerdict, RepError> {
    if v.is_zero() {
        return Err(RepError::ZeroVector);
    }
    if r.is_zero() {
        return Err(RepError::ZeroR);
    }
    let moved = module.u(r, v)?;
    let top_v = module.lambda_max(v)?;
    let top_moved = module.lambda_max(&moved)?;
    if top_v > 0 || top_moved > 0 {
        return Err(RepError::PreconditionViolated(format!(
            "need v and u(r)v in V^(0-); maximal weights are {top_v} and {top_moved}"
        )));
    }
    let v0 = module.component(v, 0);
    let rebuilt = module.u_minus(&-r.recip(), &v0)?;
    Ok(LemmaVerdict {
        lemma: "zero-weight corollary".into(),
        lhs: top_v.to_string(),
        rhs: "0".into(),
        holds: top_v == 0,
        equality: top_v == 0,
        identity_checks: vec![check("v^0 != 0", !v0.is_zero()), check("v = u^-(-1/r) v^0", rebuilt == *v)],
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::{int, Matrix};
    use crate::rep::{build_rep, sl2_triple};

    const E: u64 = 1;
    const F: u64 = 2;
    const H: u64 = 4;

    fn adjoint() -> WeightGradedRep {
        build_rep(1, 1, &[1]).unwrap()
    }

    #[test]
    fn inequality_examples() {
        let rep = adjoint();
        let module = Restricted::new(&rep, sl2_triple(&Matrix::identity(1), 1, 1).unwrap()).unwrap();
        let f = verify_max_inequality(&module, &RepVector::basis(F), &int(1)).unwrap();
        assert_eq!((f.lhs.as_str(), f.rhs.as_str(), f.equality), ("2", "2", true));
        assert!(f.passed());
        let e = verify_max_inequality(&module, &RepVector::basis(E), &int(5)).unwrap();
        assert!(e.holds && !e.equality);
        let h = verify_max_inequality(&module, &RepVector::basis(H), &int(1)).unwrap();
        assert_eq!(h.lhs, "2");
        assert_eq!(verify_max_inequality(&module, &RepVector::zero(), &int(1)), Err(RepError::ZeroVector));
        assert_eq!(verify_max_inequality(&module, &RepVector::basis(F), &int(0)), Err(RepError::ZeroR));
    }

    #[test]
    fn corollary_examples() {
        let rep = adjoint();
        let module = Restricted::new(&rep, sl2_triple(&Matrix::identity(1), 1, 1).unwrap()).unwrap();
        let v = RepVector::from_terms([(F, int(1)), (H, int(-1))]);
        let verdict = check_corollary(&module, &v, &int(2)).unwrap();
        assert!(verdict.passed(), "{verdict:?}");
        for bad in [F, H] {
            assert!(matches!(
                check_corollary(&module, &RepVector::basis(bad), &int(1)),
                Err(RepError::PreconditionViolated(_))
            ));
        }
    }

    #[test]
    fn irreducible_lowest_vector_is_extremal() {
        let module = Sl2Irrep::with_dim(5);
        let low = RepVector::basis(4);
        let verdict = verify_max_inequality(&module, &low, &int(3)).unwrap();
        assert!(verdict.equality && verdict.passed());
    }
}
