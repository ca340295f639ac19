//! Scans over `(s, N)` grids: Dirichlet hit frequencies, Siegel averages and
//! the decay of the shortest vector.

use num_bigint::BigInt;
use num_traits::{One, Signed};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use super::{lattice_at, solution_from_vector, svp_fast, DirichletSolution, FlowError};
use crate::curve::MatrixCurve;
use crate::exactalg::rational::{serde_str, to_f64};
use crate::exactalg::{format_rational, Rational, SvpStats};

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TrajectoryRecord {
    #[serde(with = "serde_str")]
    pub s: Rational,
    #[serde(rename = "N", with = "serde_str")]
    pub big_n: Rational,
    #[serde(with = "serde_str")]
    pub svp_norm: Rational,
    pub in_k_mu: bool,
    pub solution: Option<DirichletSolution>,
}

impl TrajectoryRecord {
    pub const CSV_HEADER: [&'static str; 7] = ["s", "N", "svp_norm", "in_K_mu", "p", "q", "residual"];

    /// Rationals as `p/q`, integer vectors space-separated, empty when absent.
    pub fn csv_fields(&self) -> [String; 7] {
        let join = |v: &[BigInt]| v.iter().map(ToString::to_string).collect::<Vec<_>>().join(" ");
        let (p, q, r) = match &self.solution {
            Some(sol) => (join(&sol.p), join(&sol.q), format_rational(&sol.residual)),
            None => (String::new(), String::new(), String::new()),
        };
        [
            format_rational(&self.s),
            format_rational(&self.big_n),
            format_rational(&self.svp_norm),
            self.in_k_mu.to_string(),
            p,
            q,
            r,
        ]
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct HitSummary {
    #[serde(with = "serde_str")]
    pub s: Rational,
    /// Fraction of grid values `N` at which the lattice lies in `K_mu`.
    pub hit_frequency: f64,
    /// Some hit occurs in the top quartile of the `N` grid.
    pub persistent: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ScanResult {
    pub records: Vec<TrajectoryRecord>,
    pub summary: Vec<HitSummary>,
    pub exact_fallbacks: usize,
}

/// Exact `K_mu` membership over the grid. Cells run in parallel; output order
/// is `s`-major, then `N`, independent of scheduling.
pub fn dirichlet_scan(
    curve: &MatrixCurve,
    mu: &Rational,
    s_grid: &[Rational],
    n_grid: &[Rational],
) -> Result<ScanResult, FlowError> {
    if s_grid.is_empty() || n_grid.is_empty() {
        return Err(FlowError::EmptyGrid("dirichlet scan needs nonempty s and N grids".into()));
    }
    if !mu.is_positive() || *mu >= Rational::one() {
        return Err(FlowError::InvalidMu(format!("0 < mu < 1, got {}", format_rational(mu))));
    }
    let stats = SvpStats::default();
    let cells: Vec<(&Rational, &Rational)> = s_grid.iter().flat_map(|s| n_grid.iter().map(move |n| (s, n))).collect();
    let records = cells
        .par_iter()
        .map(|(s, n)| {
            let point = lattice_at(curve, s, n)?;
            let svp = svp_fast(&point, mu, &stats)?;
            let in_k = svp.norm > *mu;
            let solution = if in_k || **n < Rational::one() { None } else { solution_from_vector(&point.phi, &svp) };
            Ok(TrajectoryRecord { s: (*s).clone(), big_n: (*n).clone(), svp_norm: svp.norm, in_k_mu: in_k, solution })
        })
        .collect::<Result<Vec<_>, FlowError>>()?;
    let per_s = n_grid.len();
    let quartile_start = per_s - per_s.div_ceil(4);
    let summary = records
        .chunks(per_s)
        .map(|row| HitSummary {
            s: row[0].s.clone(),
            hit_frequency: row.iter().filter(|r| r.in_k_mu).count() as f64 / per_s as f64,
            persistent: row[quartile_start..].iter().any(|r| r.in_k_mu),
        })
        .collect();
    Ok(ScanResult { records, summary, exact_fallbacks: stats.exact_fallbacks() })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SiegelSpec {
    #[serde(with = "serde_str")]
    pub r1: Rational,
    #[serde(with = "serde_str")]
    pub r2: Rational,
    #[serde(rename = "N", with = "serde_str")]
    pub big_n: Rational,
    pub samples: usize,
    pub seed: u64,
}

impl SiegelSpec {
    /// `(2 R_2)^d - (2 R_1)^d`.
    pub fn target_volume(&self, d: usize) -> Rational {
        let two = Rational::from_integer(2.into());
        num_traits::pow(&two * &self.r2, d) - num_traits::pow(&two * &self.r1, d)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SiegelEstimate {
    pub mean: f64,
    pub target_volume: f64,
    pub relative_deviation: f64,
    pub counts: Vec<usize>,
    #[serde(serialize_with = "serialize_rationals")]
    pub sample_points: Vec<Rational>,
}

fn serialize_rationals<S: serde::Serializer>(v: &[Rational], s: S) -> Result<S::Ok, S::Error> {
    crate::exactalg::rational::serde_str_vec::serialize(v, s)
}

/// Nonzero lattice vectors with `R1 <= |v|_inf <= R2`.
pub fn siegel_count(curve: &MatrixCurve, s: &Rational, big_n: &Rational, r1: &Rational, r2: &Rational) -> Result<usize, FlowError> {
    let point = lattice_at(curve, s, big_n)?;
    let hits = point.basis.vectors_within_sup(r2)?;
    Ok(hits.iter().filter(|v| v.norm >= *r1).count())
}

/// Average annulus count over `s = a + (b - a) u`, `u = x / y` with `y` uniform
/// in `[2^31, 2^32)` and `x` uniform in `[0, y]`, drawn from a seeded ChaCha stream.
pub fn siegel_average(curve: &MatrixCurve, spec: &SiegelSpec) -> Result<SiegelEstimate, FlowError> {
    if !spec.r1.is_positive() || spec.r1 >= spec.r2 {
        return Err(FlowError::InvalidAnnulus(format_rational(&spec.r1), format_rational(&spec.r2)));
    }
    if spec.samples == 0 {
        return Err(FlowError::EmptyGrid("siegel average needs at least one sample".into()));
    }
    let (a, b) = curve.interval();
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let points: Vec<Rational> = (0..spec.samples)
        .map(|_| {
            let den: u64 = rng.gen_range(1u64 << 31..1u64 << 32);
            let num: u64 = rng.gen_range(0..=den);
            a + (b - a) * Rational::new(num.into(), den.into())
        })
        .collect();
    let counts = points
        .par_iter()
        .map(|s| siegel_count(curve, s, &spec.big_n, &spec.r1, &spec.r2))
        .collect::<Result<Vec<_>, _>>()?;
    let mean = counts.iter().sum::<usize>() as f64 / counts.len() as f64;
    let target = to_f64(&spec.target_volume(curve.m() + curve.n()));
    Ok(SiegelEstimate {
        mean,
        target_volume: target,
        relative_deviation: (mean - target).abs() / target,
        counts,
        sample_points: points,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct EscapeReport {
    #[serde(with = "serde_str")]
    pub s: Rational,
    #[serde(serialize_with = "serialize_rationals")]
    pub n_grid: Vec<Rational>,
    #[serde(serialize_with = "serialize_rationals")]
    pub svp_norms: Vec<Rational>,
    /// Least-squares slope of `log svp` against `log N`.
    pub slope: f64,
}

/// Exact shortest vectors along the grid and the fitted decay slope.
pub fn escape_diagnostic(curve: &MatrixCurve, s: &Rational, n_grid: &[Rational]) -> Result<EscapeReport, FlowError> {
    if n_grid.len() < 3 {
        return Err(FlowError::EmptyGrid("escape diagnostic needs at least 3 values of N".into()));
    }
    let svp_norms = n_grid
        .par_iter()
        .map(|n| Ok(lattice_at(curve, s, n)?.basis.shortest_vector_sup()?.norm))
        .collect::<Result<Vec<_>, FlowError>>()?;
    let xs: Vec<f64> = n_grid.iter().map(|n| ln(n)).collect();
    let ys: Vec<f64> = svp_norms.iter().map(ln).collect();
    Ok(EscapeReport { s: s.clone(), n_grid: n_grid.to_vec(), svp_norms, slope: least_squares_slope(&xs, &ys) })
}

/// Natural log of a positive rational, safe for huge numerators and denominators.
pub(crate) fn ln(r: &Rational) -> f64 {
    let bits = |x: &BigInt| x.bits() as i64;
    let shift = bits(r.numer()) - bits(r.denom());
    let scaled = if shift >= 0 {
        r / Rational::from_integer(BigInt::from(1) << shift as usize)
    } else {
        r * Rational::from_integer(BigInt::from(1) << (-shift) as usize)
    };
    to_f64(&scaled).ln() + shift as f64 * std::f64::consts::LN_2
}

pub fn least_squares_slope(xs: &[f64], ys: &[f64]) -> f64 {
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let sxy: f64 = xs.iter().zip(ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = xs.iter().map(|x| (x - mx) * (x - mx)).sum();
    sxy / sxx
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::{int, rat};
    use crate::flow::power_grid;

    #[test]
    fn flat_curve_escapes_at_rate_one() {
        let c = MatrixCurve::from_polys(&[&["s", "0"]], int(0), int(1)).unwrap();
        let grid = power_grid(&int(2), 4, 10);
        let rep = escape_diagnostic(&c, &rat(1, 3), &grid).unwrap();
        for (n, v) in grid.iter().zip(&rep.svp_norms) {
            assert_eq!(*v, n.recip());
        }
        assert!((rep.slope + 1.0).abs() < 1e-9);
    }

    #[test]
    fn escape_needs_three_points() {
        let c = MatrixCurve::from_polys(&[&["s", "0"]], int(0), int(1)).unwrap();
        assert!(matches!(escape_diagnostic(&c, &int(0), &[int(1), int(2)]), Err(FlowError::EmptyGrid(_))));
    }

    #[test]
    fn zero_curve_counts_the_unit_cube_shell() {
        let c = MatrixCurve::from_polys(&[&["0", "0"]], int(0), int(1)).unwrap();
        assert_eq!(siegel_count(&c, &rat(1, 2), &int(1), &rat(1, 2), &rat(3, 2)).unwrap(), 26);
        let spec = SiegelSpec { r1: rat(1, 2), r2: rat(3, 2), big_n: int(1), samples: 4, seed: 7 };
        assert_eq!(spec.target_volume(3), int(26));
        let est = siegel_average(&c, &spec).unwrap();
        assert_eq!(est.mean, 26.0);
        let bad = SiegelSpec { r1: int(2), ..spec };
        assert!(matches!(siegel_average(&c, &bad), Err(FlowError::InvalidAnnulus(_, _))));
    }

    #[test]
    fn scan_layout_and_flat_curve_decay() {
        let c = MatrixCurve::from_polys(&[&["s", "0"]], int(0), int(1)).unwrap();
        let grid = power_grid(&int(2), 1, 8);
        let res = dirichlet_scan(&c, &rat(1, 2), &[rat(1, 3), rat(1, 5)], &grid).unwrap();
        assert_eq!(res.records.len(), 16);
        assert_eq!(res.records[8].s, rat(1, 5));
        // svp = 1/N <= 1/2 on the whole grid
        assert!(res.summary.iter().all(|h| !h.persistent));
        assert!(matches!(dirichlet_scan(&c, &rat(1, 2), &[int(0)], &[]), Err(FlowError::EmptyGrid(_))));
    }

    #[test]
    fn log_of_huge_rationals() {
        let big = Rational::from_integer(BigInt::from(1) << 3000usize);
        assert!((ln(&big) - 3000.0 * std::f64::consts::LN_2).abs() < 1e-6);
        assert!((ln(&rat(1, 3)) + 3f64.ln()).abs() < 1e-12);
    }
}
