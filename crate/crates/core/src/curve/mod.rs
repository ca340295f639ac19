//! Matrix curves `phi: [a, b] -> M(m x n)` with rational-function entries,
//! and the curve-level algorithms built on them.

mod generic;
mod pencil;
mod standard;
mod supergeneric;

pub use generic::{is_generic, is_generic_at, psi_reduce, GenericityReport, StageKind, Verdict, WitnessStage};
pub use pencil::{pencil_membership, pencil_search, PencilCandidate};
pub use standard::{derivative_normalizer, factorization_identity_holds, standard_form, StandardFormResult};
pub use supergeneric::{
    supergeneric_status, supergeneric_status_with_grid, SupergenericEvidence, SupergenericMethod,
    SupergenericStatus, SupergenericityCertificate, DEFAULT_GRID,
};

use num_integer::Integer;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::exactalg::{format_rational, parse_rational, AlgError, Matrix, Poly, RatFunc, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CurveError {
    #[error("curve: first m x m block difference is singular for every s (phi_1(s) - phi_1(s0) has identically zero determinant)")]
    DegenerateFirstBlock,
    #[error("curve: shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("curve: not generic at the requested point: {0}")]
    NotGenericAtPoint(String),
    #[error("curve: derivative has rank 0 at s = {0}")]
    ZeroDerivative(String),
    #[error("curve: no normalizer with det B * det C = 1 exists over the rationals: {0}")]
    NoRationalNormalizer(String),
    #[error("curve: entry has a pole inside the interval: {0}")]
    PoleInInterval(String),
    #[error("curve: interval must satisfy a < b, got [{0}, {1}]")]
    InvalidInterval(String, String),
    #[error("curve: point {0} lies outside the interval or on a pole")]
    OutOfInterval(String),
    #[error("curve: parse error: {0}")]
    Parse(String),
    #[error(transparent)]
    Alg(#[from] AlgError),
}

/// `phi: [a, b] -> M(m x n)`, entries rational functions of `s`.
#[derive(Clone, Debug, PartialEq)]
pub struct MatrixCurve {
    entries: Matrix<RatFunc>,
    interval: (Rational, Rational),
    /// Isolating intervals of poles inside `[a, b]`; empty for input curves.
    pole_intervals: Vec<(Rational, Rational)>,
}

impl MatrixCurve {
    /// A curve whose entries have no pole on `[a, b]`.
    pub fn new(entries: Matrix<RatFunc>, a: Rational, b: Rational) -> Result<Self, CurveError> {
        let curve = MatrixCurve::with_poles(entries, a, b)?;
        if let Some((lo, hi)) = curve.pole_intervals.first() {
            return Err(CurveError::PoleInInterval(format!(
                "a denominator vanishes in [{}, {}]",
                format_rational(lo),
                format_rational(hi)
            )));
        }
        Ok(curve)
    }

    /// A derived curve (such as a psi-reduction) that may have finitely many
    /// poles inside the interval; they are isolated and recorded.
    pub fn with_poles(entries: Matrix<RatFunc>, a: Rational, b: Rational) -> Result<Self, CurveError> {
        if a >= b {
            return Err(CurveError::InvalidInterval(format_rational(&a), format_rational(&b)));
        }
        if entries.rows() == 0 || entries.cols() == 0 {
            return Err(CurveError::ShapeMismatch("curve needs m, n >= 1".into()));
        }
        let poles = entries.pole_polynomial();
        let pole_intervals = poles.isolate_roots(&a, &b);
        Ok(MatrixCurve { entries, interval: (a, b), pole_intervals })
    }

    pub fn from_polys(rows: &[&[&str]], a: Rational, b: Rational) -> Result<Self, CurveError> {
        let parsed = rows
            .iter()
            .map(|r| r.iter().map(|t| RatFunc::parse(t)).collect::<Result<Vec<_>, _>>())
            .collect::<Result<Vec<_>, _>>()?;
        MatrixCurve::new(Matrix::from_rows(parsed)?, a, b)
    }

    pub fn m(&self) -> usize {
        self.entries.rows()
    }

    pub fn n(&self) -> usize {
        self.entries.cols()
    }

    pub fn entries(&self) -> &Matrix<RatFunc> {
        &self.entries
    }

    pub fn interval(&self) -> (&Rational, &Rational) {
        (&self.interval.0, &self.interval.1)
    }

    pub fn pole_intervals(&self) -> &[(Rational, Rational)] {
        &self.pole_intervals
    }

    pub fn contains(&self, s: &Rational) -> bool {
        *s >= self.interval.0 && *s <= self.interval.1
    }

    /// `phi(s)`, or `None` outside the interval or at a pole.
    pub fn eval(&self, s: &Rational) -> Option<Matrix<Rational>> {
        if !self.contains(s) {
            return None;
        }
        self.entries.eval(s)
    }

    pub fn is_constant(&self) -> bool {
        self.entries.is_constant()
    }

    /// Same interval, new entries; poles re-isolated.
    pub fn with_entries(&self, entries: Matrix<RatFunc>) -> Result<MatrixCurve, CurveError> {
        MatrixCurve::with_poles(entries, self.interval.0.clone(), self.interval.1.clone())
    }

    pub fn with_interval(&self, a: Rational, b: Rational) -> Result<MatrixCurve, CurveError> {
        MatrixCurve::new(self.entries.clone(), a, b)
    }

    pub fn transpose(&self) -> MatrixCurve {
        MatrixCurve {
            entries: self.entries.transpose(),
            interval: self.interval.clone(),
            pole_intervals: self.pole_intervals.clone(),
        }
    }

    /// `phi - phi(s0)`.
    pub fn translate(&self, s0: &Rational) -> Result<MatrixCurve, CurveError> {
        let at = self
            .eval(s0)
            .ok_or_else(|| CurveError::OutOfInterval(format_rational(s0)))?;
        self.with_entries(self.entries.try_sub(&at.to_ratfunc())?)
    }

    pub fn derivative(&self) -> MatrixCurve {
        MatrixCurve {
            entries: self.entries.derivative(),
            interval: self.interval.clone(),
            pole_intervals: self.pole_intervals.clone(),
        }
    }

    /// Columns `c0..c1` as a curve.
    pub fn column_block(&self, c0: usize, c1: usize) -> MatrixCurve {
        MatrixCurve {
            entries: self.entries.block(0, self.m(), c0, c1),
            interval: self.interval.clone(),
            pole_intervals: self.pole_intervals.clone(),
        }
    }

    /// Upper bound on the degree in `t` of the numerator of `det(phi(s) - phi(t))`.
    pub fn degree_bound(&self) -> usize {
        let mut common = Poly::one();
        for e in self.entries.entries() {
            let g = Poly::gcd(&common, e.den());
            common = &common * &e.den().div_rem(&g).0;
        }
        let dq = common.degree().unwrap_or(0);
        let dp = self
            .entries
            .entries()
            .iter()
            .map(|e| {
                let scaled = &RatFunc::from(common.clone()) * e;
                scaled.num().degree().unwrap_or(0)
            })
            .max()
            .unwrap_or(0);
        self.m().min(self.n()) * dq.max(dp)
    }

    /// Deterministic rational sample points `a + (b - a) t` with
    /// `t = 0, 1, 1/2, 1/3, 2/3, 1/4, 3/4, ...`, skipping poles.
    pub fn sample_points(&self) -> impl Iterator<Item = Rational> + '_ {
        unit_fractions().filter_map(move |t| {
            let s = &self.interval.0 + (&self.interval.1 - &self.interval.0) * t;
            self.entries.eval(&s).map(|_| s)
        })
    }

    pub fn grid(&self, count: usize) -> Vec<Rational> {
        self.sample_points().take(count).collect()
    }

    pub fn describe(&self) -> String {
        format!("{}x{} {}", self.m(), self.n(), self.entries)
    }

    pub fn to_document(&self) -> CurveDocument {
        CurveDocument {
            m: self.m(),
            n: self.n(),
            interval: vec![
                serde_json::Value::String(format_rational(&self.interval.0)),
                serde_json::Value::String(format_rational(&self.interval.1)),
            ],
            entries: (0..self.m())
                .map(|i| self.entries.row(i).iter().map(RatFunc::to_string).collect())
                .collect(),
        }
    }

    pub fn from_json(text: &str) -> Result<MatrixCurve, CurveError> {
        let doc: CurveDocument =
            serde_json::from_str(text).map_err(|e| CurveError::Parse(e.to_string()))?;
        doc.to_curve()
    }
}

/// `t = 0, 1, 1/2, 1/3, 2/3, 1/4, 3/4, 1/5, ...` (reduced fractions by denominator).
pub fn unit_fractions() -> impl Iterator<Item = Rational> {
    let ends = [Rational::zero(), Rational::one()].into_iter();
    let inner = (2i64..).flat_map(|q| {
        (1..q)
            .filter(move |p| p.gcd(&q) == 1)
            .map(move |p| Rational::new(p.into(), q.into()))
    });
    ends.chain(inner)
}

/// JSON form: `{"m":1,"n":2,"interval":[0,1],"entries":[["s","s^2"]]}`.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct CurveDocument {
    pub m: usize,
    pub n: usize,
    /// Endpoints as `"p/q"` strings or JSON numbers.
    pub interval: Vec<serde_json::Value>,
    pub entries: Vec<Vec<String>>,
}

pub fn rational_from_json(v: &serde_json::Value) -> Result<Rational, AlgError> {
    match v {
        serde_json::Value::String(s) => parse_rational(s),
        serde_json::Value::Number(n) => parse_rational(&n.to_string()),
        other => Err(AlgError::Parse(format!("expected a rational, got {other}"))),
    }
}

impl CurveDocument {
    pub fn to_curve(&self) -> Result<MatrixCurve, CurveError> {
        if self.interval.len() != 2 {
            return Err(CurveError::Parse("interval must have two endpoints".into()));
        }
        let a = rational_from_json(&self.interval[0])?;
        let b = rational_from_json(&self.interval[1])?;
        if self.entries.len() != self.m || self.entries.iter().any(|r| r.len() != self.n) {
            return Err(CurveError::ShapeMismatch(format!(
                "entries do not form a {}x{} array",
                self.m, self.n
            )));
        }
        let rows = self
            .entries
            .iter()
            .map(|r| r.iter().map(|t| RatFunc::parse(t)).collect::<Result<Vec<_>, _>>())
            .collect::<Result<Vec<_>, _>>()?;
        MatrixCurve::new(Matrix::from_rows(rows)?, a, b)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::{int, rat};

    #[test]
    fn sample_points_are_deterministic() {
        let c = MatrixCurve::from_polys(&[&["s", "s^2"]], int(0), int(1)).unwrap();
        assert_eq!(c.grid(6), vec![int(0), int(1), rat(1, 2), rat(1, 3), rat(2, 3), rat(1, 4)]);
        let shifted = c.with_interval(int(1), int(3)).unwrap();
        assert_eq!(shifted.grid(3), vec![int(1), int(3), int(2)]);
    }

    #[test]
    fn poles_are_rejected_or_recorded() {
        let bad = MatrixCurve::from_polys(&[&["(1)/(s - 1/2)"]], int(0), int(1));
        assert!(matches!(bad, Err(CurveError::PoleInInterval(_))));
        let entries = Matrix::from_rows(vec![vec![RatFunc::parse("(1)/(s - 1/2)").unwrap()]]).unwrap();
        let derived = MatrixCurve::with_poles(entries, int(0), int(1)).unwrap();
        assert_eq!(derived.pole_intervals().len(), 1);
        assert!(!derived.grid(4).contains(&rat(1, 2)));
    }

    #[test]
    fn json_round_trip() {
        let text = r#"{"m":1,"n":2,"interval":[0,"1/2"],"entries":[["s","1/3*s^2 - 1"]]}"#;
        let c = MatrixCurve::from_json(text).unwrap();
        assert_eq!(c.interval().1, &rat(1, 2));
        let back = serde_json::to_string(&c.to_document()).unwrap();
        assert_eq!(MatrixCurve::from_json(&back).unwrap(), c);
        assert!(matches!(
            MatrixCurve::from_json(r#"{"m":1,"n":1,"interval":[1,1],"entries":[["s"]]}"#),
            Err(CurveError::InvalidInterval(_, _))
        ));
    }
}
