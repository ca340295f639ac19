//! Named example curves, all on `[0, 1]` unless re-intervalled by the caller.

use crate::curve::{CurveError, MatrixCurve};
use crate::exactalg::{Matrix, Poly, RatFunc, Rational};
use num_traits::{One, Zero};

/// Names accepted by [`curve`]; `moment<n>` and `scalar<m>` take a size suffix.
pub const NAMES: [&str; 5] = ["parabola", "moment<n>", "scalar<m>", "pencil", "escape"];

fn unit_interval(entries: Matrix<RatFunc>) -> MatrixCurve {
    MatrixCurve::new(entries, Rational::zero(), Rational::one()).expect("catalog curves are polynomial")
}

fn monomial(k: usize) -> RatFunc {
    RatFunc::from(Poly::monomial(Rational::one(), k))
}

/// `(s, s^2)`.
pub fn parabola() -> MatrixCurve {
    moment(2)
}

/// `(s, s^2, ..., s^n)` as a `1 x n` curve.
pub fn moment(n: usize) -> MatrixCurve {
    unit_interval(Matrix::from_fn(1, n, |_, j| monomial(j + 1)))
}

/// `s I_m`.
pub fn scalar(m: usize) -> MatrixCurve {
    unit_interval(Matrix::from_fn(m, m, |i, j| if i == j { RatFunc::s() } else { RatFunc::zero() }))
}

/// `[[0, 0], [s, s^2]]`, contained in a pencil.
pub fn pencil() -> MatrixCurve {
    unit_interval(Matrix::from_fn(2, 2, |i, j| if i == 0 { RatFunc::zero() } else { monomial(j + 1) }))
}

/// `(s, 0)`, whose trajectory escapes to infinity.
pub fn escape() -> MatrixCurve {
    unit_interval(Matrix::from_fn(1, 2, |_, j| if j == 0 { RatFunc::s() } else { RatFunc::zero() }))
}

pub fn curve(name: &str) -> Result<MatrixCurve, CurveError> {
    let sized = |prefix: &str| -> Option<Result<usize, CurveError>> {
        let rest = name.strip_prefix(prefix)?;
        Some(match rest.parse::<usize>() {
            Ok(k) if (1..=8).contains(&k) => Ok(k),
            _ => Err(CurveError::Parse(format!("catalog curve {name}: size must be 1..=8"))),
        })
    };
    match name {
        "parabola" => Ok(parabola()),
        "pencil" => Ok(pencil()),
        "escape" => Ok(escape()),
        _ => {
            if let Some(k) = sized("moment") {
                return Ok(moment(k?));
            }
            if let Some(k) = sized("scalar") {
                return Ok(scalar(k?));
            }
            Err(CurveError::Parse(format!("unknown catalog curve {name}; known: {}", NAMES.join(", "))))
        }
    }
}

/// Every fixed-size catalog entry used in sweeps.
pub fn all() -> Vec<(String, MatrixCurve)> {
    let mut out = vec![
        ("parabola".to_string(), parabola()),
        ("pencil".to_string(), pencil()),
        ("escape".to_string(), escape()),
    ];
    out.extend((1..=4).map(|n| (format!("moment{n}"), moment(n))));
    out.extend((1..=3).map(|m| (format!("scalar{m}"), scalar(m))));
    out
}
